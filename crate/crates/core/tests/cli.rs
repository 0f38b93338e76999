//! Command-line contract: outputs, determinism and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn flowcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowcx")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flowcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_fixture(name: &str, extra: &[&str]) -> PathBuf {
    let path = scratch(&format!("{name}.fc"));
    let p = path.to_str().unwrap();
    let mut args = vec!["gallery", "--name", name, "--out", p];
    args.extend_from_slice(extra);
    let out = flowcx(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_is_byte_identical_across_runs() {
    for name in ["genus2_mixed", "double_center_sphere", "halfdisk_sphere"] {
        let f = write_fixture(name, &[]);
        let runs: Vec<Vec<u8>> = (0..3).map(|_| flowcx(&["classify", "--json", s(&f)]).stdout).collect();
        assert!(!runs[0].is_empty());
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{name}");
        let v: serde_json::Value = serde_json::from_slice(&runs[0]).unwrap();
        assert!(v.get("extended_R_closed").is_some());
    }
}

#[test]
fn exit_codes() {
    let ok = write_fixture("sphere_meridian", &[]);
    assert_eq!(flowcx(&["validate", s(&ok)]).status.code(), Some(0));
    assert_eq!(flowcx(&["verify", s(&ok)]).status.code(), Some(0));

    let bad = scratch("lone_center.fc");
    std::fs::write(
        &bad,
        "surface genus=0 orientable=true boundary=0\nsing c shape=point kind=center\n\
         orbit p kind=periodic\nfamily d kind=annulus b0={c} b1={p} shrink0=true\n",
    )
    .unwrap();
    let out = flowcx(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("poincare-hopf"));
    assert_eq!(flowcx(&["classify", s(&bad)]).status.code(), Some(1));

    let garbled = scratch("garbled.fc");
    std::fs::write(&garbled, "surface genus=0 orientable=true boundary=0\nsing a shape=blob\nsing a shape=point\n").unwrap();
    let out = flowcx(&["validate", s(&garbled)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:") && err.contains(":3:"), "{err}");

    assert_eq!(flowcx(&["classify", "--frobnicate", s(&ok)]).status.code(), Some(2));
    assert_eq!(flowcx(&["gallery", "--name", "nope", "--out", "-"]).status.code(), Some(2));
    assert_eq!(flowcx(&["verify", s(&ok), "--theorems", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_filters_theorems_and_emits_json() {
    let f = write_fixture("sphere_limit_cycle", &[]);
    let out = flowcx(&["verify", s(&f), "--theorems", "limit-cycle-forces-wandering", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["status"], "Holds");
}

#[test]
fn orbit_and_dot_commands() {
    let f = write_fixture("genus2_mixed", &[]);
    let out = flowcx(&["orbit", s(&f), "--start", "c1", "--direction", "both"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("members: a,c1,c2,s1,s2,u1,w1"), "{text}");

    let hd = write_fixture("halfdisk_sphere", &[]);
    let out = flowcx(&["orbit", s(&hd), "--start", "hp", "--generalized"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("self_readded: true"));

    let out = flowcx(&["export-dot", s(&f), "--overlay", "c1"]);
    let dot = String::from_utf8_lossy(&out.stdout);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("fillcolor=gold").count(), 7);
}

#[test]
fn gallery_params_are_forwarded() {
    let f = write_fixture("comb_torus", &["--param", "n=3"]);
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.contains("sing q_3 ") && !text.contains("sing q_4 "));
    let out = flowcx(&["gallery", "--name", "comb_torus", "--param", "n=1", "--out", "-"]);
    assert_eq!(out.status.code(), Some(2));
}
