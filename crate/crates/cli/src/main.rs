use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hypersurf_cli::commands::{self, CmdResult};
use hypersurf_cli::report::to_value;
use hypersurf_cli::suites::{corpus_digest, verify_examples};
use hypersurf_cli::{parse_config, CommandError, Options, Property, Report};
use hypersurf_core::Verdict;

/// Exact homological invariants over graded hypersurface rings.
#[derive(Parser, Debug)]
#[command(name = "hypersurf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Session file with a [ring] block and [module NAME] blocks.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Module name from the session file; repeat for a second or third module.
    #[arg(long = "module", global = true)]
    modules: Vec<String>,

    /// A single homological index.
    #[arg(long = "i", global = true, allow_hyphen_values = true)]
    i: Option<i64>,

    /// Inclusive index range `A..B`; negative values are allowed for stable tables.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_range)]
    range: Option<(i64, i64)>,

    /// Resolution and Tor scan bound.
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Seed for randomized constructions.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Suppress the human-readable output.
    #[arg(long, global = true)]
    quiet: bool,

    /// For `check jothilingam` over a hypersurface: take the Grothendieck group hypothesis as given.
    #[arg(long, global = true)]
    assume_hypothesis: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Minimal free resolution with maps.
    Resolve,
    /// Betti table.
    Betti,
    /// Lengths of Tor_i(M, N).
    Tor,
    /// Lengths of Ext^i(M, N).
    Ext,
    /// Hochster's theta with its stability pairs.
    Theta,
    /// Whether a vanishing Tor forces all higher ones to vanish.
    Rigidity,
    /// The sequence 0 -> M -> R^lambda -> M1 -> 0.
    Pushforward,
    /// Dual module and reflexivity.
    Dual,
    Depth,
    Dim,
    /// Matrix factorization read off the periodic resolution.
    Mf,
    /// Stable Tor and Ext tables from the complete resolution.
    Stable,
    /// Verify a named property.
    Check {
        #[arg(value_enum)]
        property: PropertyArg,
    },
    /// Run the built-in example suites.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PropertyArg {
    DepthFormula,
    DimInequality,
    StableIdentities,
    Buchweitz,
    ThetaVanishing,
    VectorBundle,
    Jothilingam,
    Mcm,
    Biadditivity,
}

impl PropertyArg {
    fn property(self) -> Property {
        match self {
            PropertyArg::DepthFormula => Property::DepthFormula,
            PropertyArg::DimInequality => Property::DimInequality,
            PropertyArg::StableIdentities => Property::StableIdentities,
            PropertyArg::Buchweitz => Property::Buchweitz,
            PropertyArg::ThetaVanishing => Property::ThetaVanishing,
            PropertyArg::VectorBundle => Property::VectorBundle,
            PropertyArg::Jothilingam => Property::Jothilingam,
            PropertyArg::Mcm => Property::Mcm,
            PropertyArg::Biadditivity => Property::Biadditivity,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VerifyTarget {
    Examples,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

impl Command {
    fn name(self) -> String {
        match self {
            Command::Resolve => "resolve".into(),
            Command::Betti => "betti".into(),
            Command::Tor => "tor".into(),
            Command::Ext => "ext".into(),
            Command::Theta => "theta".into(),
            Command::Rigidity => "rigidity".into(),
            Command::Pushforward => "pushforward".into(),
            Command::Dual => "dual".into(),
            Command::Depth => "depth".into(),
            Command::Dim => "dim".into(),
            Command::Mf => "mf".into(),
            Command::Stable => "stable".into(),
            Command::Check { property } => format!("check {}", property.property().name()),
            Command::Verify { .. } => "verify examples".into(),
        }
    }
}

/// The command echo leaves out output flags so that reports do not depend on them.
fn echo(cli: &Cli) -> String {
    let mut parts = vec![cli.command.name()];
    for m in &cli.modules {
        parts.push(format!("--module {m}"));
    }
    if let Some(i) = cli.i {
        parts.push(format!("--i {i}"));
    }
    if let Some((a, b)) = cli.range {
        parts.push(format!("--range {a}..{b}"));
    }
    if let Some(b) = cli.bound {
        parts.push(format!("--bound {b}"));
    }
    if cli.assume_hypothesis {
        parts.push("--assume-hypothesis".into());
    }
    parts.join(" ")
}

fn dispatch(cli: &Cli) -> Result<(Report, String), CommandError> {
    if let Command::Verify { .. } = cli.command {
        let seed = cli.seed.unwrap_or(0);
        let suites = verify_examples(seed)?;
        let mut text = String::new();
        for s in &suites {
            text.push_str(&format!("{}: {}\n", s.suite, s.verdict));
            for c in &s.checks {
                text.push_str(&format!("  {:<30} {} {}\n", c.name, c.verdict, c.detail));
            }
        }
        let verdict = Verdict::combine(suites.iter().map(|s| s.verdict));
        let results = suites.iter().map(to_value).collect();
        return Ok((Report::new(echo(cli), corpus_digest(), seed, results, verdict), text));
    }
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CommandError::Usage("--config is required".into()))?;
    let cfg = parse_config(path)?;
    if let Some(w) = cfg.ring.exponent_warning() {
        eprintln!("warning: {w}");
    }
    let opts = Options {
        modules: cli.modules.clone(),
        i: cli.i,
        range: cli.range,
        bound: cli.bound,
        seed: cli.seed.unwrap_or(cfg.seed),
        assume_hypothesis: cli.assume_hypothesis,
    };
    let out: CmdResult = match cli.command {
        Command::Resolve => commands::resolve(&cfg, &opts, false),
        Command::Betti => commands::resolve(&cfg, &opts, true),
        Command::Tor => commands::tor(&cfg, &opts),
        Command::Ext => commands::ext(&cfg, &opts),
        Command::Theta => commands::theta_cmd(&cfg, &opts),
        Command::Rigidity => commands::rigidity(&cfg, &opts),
        Command::Pushforward => commands::pushforward_cmd(&cfg, &opts),
        Command::Dual => commands::dual(&cfg, &opts),
        Command::Depth => commands::depth_cmd(&cfg, &opts),
        Command::Dim => commands::dim_cmd(&cfg, &opts),
        Command::Mf => commands::mf(&cfg, &opts),
        Command::Stable => commands::stable(&cfg, &opts),
        Command::Check { property } => commands::check(&cfg, &opts, property.property()),
        Command::Verify { .. } => unreachable!(),
    };
    let out = out?;
    let report = Report::new(echo(cli), cfg.digest.clone(), opts.seed, out.results, out.verdict);
    Ok((report, out.text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, text) = match dispatch(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !cli.quiet {
        print!("{text}");
        println!("verdict: {}", report.verdict);
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match report.verdict {
        Verdict::Violated => ExitCode::from(1),
        Verdict::Holds | Verdict::NotApplicable => ExitCode::SUCCESS,
    }
}
