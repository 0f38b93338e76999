use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use flowcx::classify::{Classifier, Verdict};
use flowcx::extended::{Direction, ExtendedOrbitSet, Provenance};
use flowcx::theorems::{verify_theorems, TheoremStatus};
use flowcx::{dot, format, gallery, saddle_set, validate, FlowComplex};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_THEOREM: u8 = 3;

#[derive(Parser)]
#[command(name = "flowcx", version, about = "Extended orbits and recurrence of symbolic surface flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a flow-complex file for structural violations.
    Validate { file: PathBuf },
    /// Decide the recurrence hierarchy.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute an extended (or generalized extended) orbit.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long, value_enum, default_value_t = Dir::Both)]
        direction: Dir,
        /// Use the declared isolated saddle sets as well as singleton saddles.
        #[arg(long)]
        generalized: bool,
    },
    /// Write a gallery fixture in the text format.
    Gallery {
        #[arg(long)]
        name: String,
        /// Integer parameter, e.g. `n=4`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        /// Output path; `-` writes to stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the structural theorems on a complex.
    Verify {
        file: PathBuf,
        /// `all` or a comma-separated list of theorem names.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long)]
        json: bool,
    },
    /// Export the orbit graph as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Highlight the extended orbit of this id.
        #[arg(long)]
        overlay: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Fwd,
    Bwd,
    Both,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Fwd => Direction::Forward,
            Dir::Bwd => Direction::Backward,
            Dir::Both => Direction::Both,
        }
    }
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v.parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.to_owned(), v))
}

/// Failure carrying the exit code it maps to.
struct Fail(u8, String);

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Self {
        Fail(EXIT_INPUT, format!("{e:#}"))
    }
}

type Outcome = Result<u8, Fail>;

fn load(path: &Path) -> Result<FlowComplex, Fail> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).map_err(|e| {
        let lines: Vec<String> = e.0.iter().map(|x| format!("{}:{x}", path.display())).collect();
        Fail(EXIT_INPUT, lines.join("\n"))
    })
}

/// Loads and validates; analysis commands refuse invalid complexes.
fn load_valid(path: &Path) -> Result<FlowComplex, Fail> {
    let fc = load(path)?;
    let report = validate(&fc);
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Fail(EXIT_VIOLATIONS, lines.join("\n")));
    }
    Ok(fc)
}

fn verdict_line(name: &str, v: &Verdict) -> String {
    match &v.witness {
        None => format!("{name:<22} {}", v.verdict),
        Some(w) => format!("{name:<22} {}  [{}: {}]", v.verdict, w.rule, w.ids.join(",")),
    }
}

fn cmd_validate(file: &Path) -> Outcome {
    let fc = load(file)?;
    let report = validate(&fc);
    if report.is_ok() {
        println!("ok");
        return Ok(0);
    }
    for v in &report.violations {
        println!("{v}");
    }
    Ok(EXIT_VIOLATIONS)
}

fn cmd_classify(file: &Path, json: bool) -> Outcome {
    let fc = load_valid(file)?;
    let r = Classifier::new(&fc).report().map_err(|e| Fail(EXIT_INPUT, e.to_string()))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r).map_err(anyhow::Error::from)?);
    } else {
        for (name, v) in [
            ("non_wandering", &r.non_wandering),
            ("recurrent", &r.recurrent),
            ("extended_recurrent", &r.extended_recurrent),
            ("extended_pap", &r.extended_pap),
            ("extended_R_closed", &r.extended_r_closed),
            ("regular", &r.regular),
            ("generalized_recurrent", &r.generalized_recurrent),
        ] {
            println!("{}", verdict_line(name, v));
        }
    }
    Ok(0)
}

fn print_orbit(e: &ExtendedOrbitSet) {
    println!("start: {}", e.start);
    println!("direction: {:?}", e.direction);
    println!("members: {}", e.members.iter().cloned().collect::<Vec<_>>().join(","));
    println!("depth: {}", e.depth);
    println!("self_readded: {}", e.self_readded);
    for (id, p) in &e.provenance {
        match p {
            Provenance::Seed => println!("  {id}: seed"),
            Provenance::SaddleAdded(round) => println!("  {id}: round {round}"),
        }
    }
}

fn cmd_orbit(file: &Path, start: &str, dir: Dir, generalized: bool) -> Outcome {
    let fc = load_valid(file)?;
    let e = if generalized {
        let sets = saddle_set::admitted_saddle_sets(&fc);
        sets.and_then(|s| flowcx::extended::FlowIndex::new(&fc).generalized_orbit(start, dir.into(), &s))
    } else {
        flowcx::extended_orbit(&fc, start, dir.into())
    };
    print_orbit(&e.map_err(|e| Fail(EXIT_INPUT, e.to_string()))?);
    Ok(0)
}

fn cmd_gallery(name: &str, params: &[(String, i64)], out: &Path) -> Outcome {
    let params: gallery::Params = params.iter().cloned().collect();
    let entry = gallery::entry(name, &params).map_err(|e| Fail(EXIT_INPUT, e.to_string()))?;
    let fc = gallery::build(name, &params).map_err(|e| Fail(EXIT_INPUT, e.to_string()))?;
    let mut text = format!("# {}\n", entry.name);
    for line in textwrap(&entry.provenance_note, 76) {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&format::emit(&fc));
    if out == Path::new("-") {
        print!("{text}");
    } else {
        std::fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(0)
}

fn textwrap(s: &str, width: usize) -> Vec<String> {
    let mut lines = vec![String::new()];
    for word in s.split_whitespace() {
        let cur = lines.last_mut().expect("non-empty");
        if !cur.is_empty() && cur.len() + 1 + word.len() > width {
            lines.push(word.to_owned());
        } else {
            if !cur.is_empty() {
                cur.push(' ');
            }
            cur.push_str(word);
        }
    }
    lines
}

fn cmd_verify(file: &Path, theorems: &str, json: bool) -> Outcome {
    let fc = load_valid(file)?;
    let names: Option<Vec<String>> = (theorems != "all")
        .then(|| theorems.split(',').map(|s| s.trim().to_owned()).collect());
    let results = verify_theorems(&fc, names.as_deref()).map_err(|e| Fail(EXIT_INPUT, e.to_string()))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&results).map_err(anyhow::Error::from)?);
    } else {
        for r in &results {
            println!("{:<42} {:<12} {}", r.name, r.status.to_string(), r.detail);
        }
    }
    let violated = results.iter().any(|r| r.status == TheoremStatus::Violation);
    Ok(if violated { EXIT_THEOREM } else { 0 })
}

fn cmd_export_dot(file: &Path, overlay: Option<&str>) -> Outcome {
    let fc = load_valid(file)?;
    let members = match overlay {
        Some(id) => Some(
            flowcx::extended_orbit(&fc, id, Direction::Both)
                .map_err(|e| Fail(EXIT_INPUT, e.to_string()))?
                .members,
        ),
        None => None,
    };
    print!("{}", dot::export_dot(&fc, members.as_ref()));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Classify { file, json } => cmd_classify(file, *json),
        Command::Orbit { file, start, direction, generalized } => {
            cmd_orbit(file, start, *direction, *generalized)
        }
        Command::Gallery { name, params, out } => cmd_gallery(name, params, out),
        Command::Verify { file, theorems, json } => cmd_verify(file, theorems, *json),
        Command::ExportDot { file, overlay } => cmd_export_dot(file, overlay.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
