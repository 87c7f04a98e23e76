use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use roundsleek::number::parse_rational;
use roundsleek::{Rational, ToleranceConfig};
use roundsleek_cli::{render_svg, replay, run_check, CheckName, Overlay, ReportDocument, SpaceDefinition};

const USAGE_ERROR: u8 = 64;

/// Check whether a metric is round or sleek, and related properties.
#[derive(Parser, Debug)]
#[command(name = "roundsleek", version)]
struct Cli {
    /// Space definition file, or `gallery:<name>`.
    #[arg(long, required_unless_present = "replay")]
    space: Option<String>,
    /// round | sleek | convexity:<metric|external|lambda=p/q|strong-external=p/q> |
    /// strict-convexity | axioms | union-sleek
    #[arg(long, required_unless_present = "replay")]
    check: Option<String>,
    #[arg(long)]
    budget: Option<usize>,
    /// Sampling resolution as p/q.
    #[arg(long, value_parser = rational)]
    resolution: Option<Rational>,
    /// Minimum certified separation as p/q.
    #[arg(long, value_parser = rational)]
    sep: Option<Rational>,
    #[arg(long)]
    seed: Option<u64>,
    /// Where to write the report; `-` or absent means standard output.
    #[arg(long)]
    json: Option<String>,
    /// Also draw the space and any witness.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Re-run a report and re-certify its witness.
    #[arg(long, conflicts_with_all = ["space", "check"])]
    replay: Option<PathBuf>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("roundsleek: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    match &cli.replay {
        Some(path) => replay_report(path),
        None => check(&cli),
    }
}

fn load_space(arg: &str) -> Result<SpaceDefinition, String> {
    if let Some(name) = arg.strip_prefix("gallery:") {
        return Ok(SpaceDefinition::gallery(name));
    }
    let text = fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?;
    SpaceDefinition::parse(&text).map_err(|e| format!("{arg}: {e}"))
}

fn check(cli: &Cli) -> ExitCode {
    let (Some(space), Some(check)) = (&cli.space, &cli.check) else {
        return usage("--space and --check are required");
    };
    let def = match load_space(space) {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    let check: CheckName = match check.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let mut cfg = ToleranceConfig::default();
    if let Some(b) = cli.budget {
        cfg.budget = b;
    }
    if let Some(r) = &cli.resolution {
        cfg.grid_delta = r.clone();
    }
    if let Some(s) = &cli.sep {
        cfg.sep_eps = s.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let doc = match run_check(&def, &check, &cfg) {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    let text = doc.to_json();
    match cli.json.as_deref() {
        None | Some("-") => print!("{text}"),
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return usage(format!("cannot write {path}: {e}"));
            }
        }
    }
    if let Some(path) = &cli.svg {
        let space = match def.build() {
            Ok(s) => s,
            Err(e) => return usage(e),
        };
        let overlays = doc.check_witness().map(Overlay::for_witness).unwrap_or_default();
        let drawn = render_svg(&*space, &overlays).map_err(|e| e.to_string()).and_then(|svg| {
            fs::write(path, svg).map_err(|e| format!("cannot write {}: {e}", path.display()))
        });
        if let Err(e) = drawn {
            return usage(e);
        }
    }
    ExitCode::from(doc.exit_code() as u8)
}

fn replay_report(path: &PathBuf) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    let doc = match ReportDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    match replay(&doc) {
        Ok(outcome) => {
            println!(
                "replay {}: report {}, witness {}",
                if outcome.passed() { "ok" } else { "FAILED" },
                if outcome.identical { "identical" } else { "differs" },
                if outcome.witness_certified { "certified" } else { "not certified" },
            );
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage(e),
    }
}
