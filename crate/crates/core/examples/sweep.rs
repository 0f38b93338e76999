//! Tallies theorem statuses over seeded random complexes.
//!
//! Usage: cargo run --example sweep -- [seeds] [small|medium|closed_regular|genus_zero]

use std::collections::BTreeMap;

use flowcx::random::{random_complex, SizeParams};
use flowcx::theorems::{verify_theorems, TheoremStatus};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let seeds: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(1000);
    let size = match args.get(2).map(String::as_str).unwrap_or("medium") {
        "small" => SizeParams::small(),
        "closed_regular" => SizeParams::closed_regular(),
        "genus_zero" => SizeParams::genus_zero(),
        _ => SizeParams::medium(),
    };
    let mut tally: BTreeMap<String, [u32; 3]> = BTreeMap::new();
    for seed in 0..seeds {
        let fc = random_complex(seed, size);
        for r in verify_theorems(&fc, None)? {
            let slot = match r.status {
                TheoremStatus::Holds => 0,
                TheoremStatus::Inapplicable => 1,
                TheoremStatus::Violation => {
                    println!("seed {seed}: {} VIOLATION: {}", r.name, r.detail);
                    2
                }
            };
            tally.entry(r.name).or_default()[slot] += 1;
        }
    }
    println!("{:<45} {:>7} {:>12} {:>9}", "theorem", "holds", "inapplicable", "VIOLATION");
    for (name, [h, i, v]) in tally {
        println!("{name:<45} {h:>7} {i:>12} {v:>9}");
    }
    Ok(())
}
