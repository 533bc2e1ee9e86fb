use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use c2cert::poly::CORPUS_NAMES;
use c2cert::verify::{
    exit_code, render_csv, render_json, render_text, run_suite, CheckId, Format, KPolicy, ModePref, RunConfig,
    RunMeta, WeightCap, CATALOG,
};
use c2cert::{Corpus, Mutation, RatFuncK, Rational, ScalarMode};

#[derive(Parser)]
#[command(name = "c2cert", version, about = "Exact checks for C2-algebras of sl2 parafermion VOAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and write a report.
    Verify(VerifyArgs),
    /// List the check catalog.
    List,
    /// Print a corpus entry.
    Corpus {
        /// Entry name, e.g. g2, f0, Wbar3, D, a_rs.
        name: String,
        /// Level, or `symbolic`.
        #[arg(long, default_value = "symbolic")]
        k: String,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Levels: `5`, `5..30` (inclusive) or `5,7,9`.
    #[arg(long, default_value = "5..10")]
    k: String,
    /// `all` or a comma-separated list such as `C1,C4`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// `auto` (2k+6) or a fixed weight.
    #[arg(long, default_value = "auto")]
    weight_cap: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 3 when a check is skipped for resource reasons.
    #[arg(long)]
    strict: bool,
    /// Report zero elapsed time, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
    /// Corrupt one corpus coefficient: `NAME:INDEX:DELTA`.
    #[arg(long)]
    mutate: Option<String>,
    /// Largest level at which the straightening engine runs.
    #[arg(long, default_value_t = 6)]
    weyl_k_cap: u32,
    /// Largest weight compared by the kernel check.
    #[arg(long, default_value_t = 24)]
    kernel_cap: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Symbolic,
    Concrete,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

fn parse_levels(s: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().with_context(|| format!("bad level range {s:?}"))?;
        let b: u32 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad level range {s:?}"))?;
        if a > b {
            bail!("empty level range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().with_context(|| format!("bad level {x:?}"))).collect()
}

fn parse_checks(s: &str) -> Result<Vec<CheckId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckId::all());
    }
    Ok(s.split(',').map(str::parse).collect::<Result<_, _>>()?)
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || anyhow!("bad rational {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            Ok(Rational::new(n.parse::<i64>().map_err(|_| bad())?, d.parse::<i64>().map_err(|_| bad())?)?)
        }
        None => Ok(Rational::from(s.parse::<i64>().map_err(|_| bad())?)),
    }
}

fn parse_mutation(s: &str) -> Result<Mutation> {
    let mut parts = s.splitn(3, ':');
    let (Some(name), Some(index), Some(delta)) = (parts.next(), parts.next(), parts.next()) else {
        bail!("mutation must look like NAME:INDEX:DELTA, got {s:?}");
    };
    Ok(Mutation {
        name: name.to_string(),
        index: index.parse().with_context(|| format!("bad mutation index {index:?}"))?,
        delta: parse_rational(delta)?,
    })
}

fn config(a: &VerifyArgs) -> Result<RunConfig> {
    let weight_cap = match a.weight_cap.as_str() {
        "auto" => WeightCap::Auto,
        n => WeightCap::Fixed(n.parse().with_context(|| format!("bad weight cap {n:?}"))?),
    };
    let cfg = RunConfig {
        k_values: parse_levels(&a.k)?,
        checks: parse_checks(&a.checks)?,
        weight_cap,
        mode: match a.mode {
            ModeArg::Auto => ModePref::Auto,
            ModeArg::Symbolic => ModePref::Symbolic,
            ModeArg::Concrete => ModePref::Concrete,
        },
        jobs: a.jobs,
        weyl_k_cap: a.weyl_k_cap,
        kernel_cap: a.kernel_cap,
        mutation: a.mutate.as_deref().map(parse_mutation).transpose()?,
        timing: !a.no_timing,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let cfg = match config(a) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(ExitCode::from(2));
        }
    };
    let results = run_suite(&cfg)?;
    let format = match a.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let doc = match format {
        Format::Text => render_text(&results),
        Format::Json => {
            let meta = RunMeta {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                k_values: cfg.k_values.clone(),
                checks: cfg.checks.clone(),
                weight_cap: cfg.weight_cap,
                mode: cfg.mode,
            };
            render_json(&meta, &results) + "\n"
        }
        Format::Csv => render_csv(&results),
    };
    match &a.out {
        Some(p) => fs::write(p, doc).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(doc.as_bytes())?,
    }
    Ok(ExitCode::from(exit_code(&results, a.strict) as u8))
}

fn list() {
    let mut out = String::new();
    for c in &CATALOG {
        let levels = match c.policy {
            KPolicy::Symbolic { min_k } => format!("symbolic, or k >= {min_k}"),
            KPolicy::KFree => "independent of k".into(),
            KPolicy::PerK { min_k } => format!("k >= {min_k}"),
            KPolicy::Fixed(ks) => format!("k in {ks:?}"),
        };
        out += &format!("C{:<3} {:<24} {}\n", c.id, levels, c.title);
    }
    let _ = io::stdout().write_all(out.as_bytes());
}

fn show<S: c2cert::Field>(name: &str, mode: ScalarMode) -> Result<()> {
    let c: Corpus<S> = Corpus::new(mode)?;
    println!("{}", c.get(name)?);
    Ok(())
}

fn corpus(name: &str, k: &str) -> Result<()> {
    if !CORPUS_NAMES.contains(&name) && !name.strip_prefix('f').is_some_and(|r| r.parse::<u32>().is_ok()) {
        bail!("unknown corpus name {name:?}; known: {}", CORPUS_NAMES.join(", "));
    }
    if k == "symbolic" {
        show::<RatFuncK>(name, ScalarMode::Symbolic)
    } else {
        let k: u32 = k.parse().with_context(|| format!("bad level {k:?}"))?;
        show::<Rational>(name, ScalarMode::Concrete(k))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::List => {
            list();
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { name, k } => corpus(name, k).map(|()| ExitCode::SUCCESS),
    };
    r.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
