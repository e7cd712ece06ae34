//! `hetcong`: solve routing games, evaluate price-of-anarchy bounds and
//! reproduce the lower-bound constructions.
//!
//! Exit codes: 0 success, 1 input error, 2 no equilibrium, 3 bound
//! violation or failed reproduction check.

mod input;
mod reproduce;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hetcong::atomic::{poa_atomic, AtomicGame, ProfileView};
use hetcong::bounds::{BoundReport, Mode};
use hetcong::nonatomic::{poa_nonatomic, FlowSummary, NeConfig, PoaConfig, SoConfig};
use hetcong::tolerance::DEFAULT_PROFILE_CAP;
use hetcong::{Classification, Poa};
use serde::Serialize;

use input::Input;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NO_EQUILIBRIUM: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hetcong",
    version,
    about = "Selfish routing with heterogeneous polynomial delays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute equilibria, the optimum and the price of anarchy.
    Solve(SolveArgs),
    /// Report the analytic bounds that apply to an instance.
    Bounds(BoundsArgs),
    /// Rebuild a lower-bound construction and compare with its closed form.
    Reproduce(reproduce::ReproduceArgs),
}

#[derive(Args)]
struct Source {
    /// Instance file or `gen:<name>?key=value&...` spec.
    #[arg(value_name = "INPUT", conflicts_with_all = ["instance", "gen"], required_unless_present_any = ["instance", "gen"])]
    input: Option<String>,
    /// Instance JSON file.
    #[arg(long, conflicts_with = "gen")]
    instance: Option<String>,
    /// Generator spec such as `gen:fig2?k=3&theta=2&a=2`.
    #[arg(long)]
    gen: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Input> {
        match (&self.input, &self.instance, &self.gen) {
            (Some(s), None, None) if s.starts_with("gen:") => input::load(None, Some(s)),
            (Some(p), None, None) => input::load(Some(p), None),
            (None, path, spec) => input::load(path.as_deref(), spec.as_deref()),
            _ => bail!("give exactly one input"),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Nonatomic,
    Atomic,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl Output {
    fn emit(&self, json: &impl Serialize, csv: impl FnOnce() -> String) -> Result<()> {
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(json)? + "\n",
            Format::Csv => csv(),
        };
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "nonatomic")]
    mode: ModeArg,
    /// Seed for the random starts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative equilibrium tolerance.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "nonatomic")]
    mode: ModeArg,
    /// Also measure the price of anarchy and check it against the bounds.
    #[arg(long)]
    measure: bool,
    /// Include the alternative statements of the heterogeneous bounds.
    #[arg(long)]
    variants: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(&args),
        Command::Bounds(args) => bounds(&args),
        Command::Reproduce(args) => reproduce::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn poa_config(seed: u64, eps: f64) -> Result<PoaConfig> {
    if eps.is_nan() || eps <= 0.0 {
        bail!("--eps must be positive, got {eps}");
    }
    Ok(PoaConfig {
        ne: NeConfig {
            eps,
            ..NeConfig::default()
        },
        so: SoConfig {
            seed,
            ..SoConfig::default()
        },
        ..PoaConfig::default()
    })
}

#[derive(Serialize)]
struct NonatomicReport<'a> {
    mode: &'static str,
    classification: &'a Classification,
    poa: Poa,
    ne: Option<FlowSummary>,
    so: FlowSummary,
    seeds_tried: usize,
    equilibria_found: usize,
    best_vi_gap: f64,
}

#[derive(Serialize)]
struct AtomicReport<'a> {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<&'a Classification>,
    poa: Poa,
    worst_ne: Option<ProfileView>,
    so: ProfileView,
    equilibria: usize,
}

fn poa_text(poa: Poa) -> String {
    match poa {
        Poa::Finite(x) => x.to_string(),
        Poa::Unbounded => "inf".into(),
        Poa::NoEquilibrium => String::new(),
    }
}

fn solve(args: &SolveArgs) -> Result<u8> {
    let input = args.source.load()?;
    let poa = match (args.mode, &input) {
        (ModeArg::Nonatomic, Input::Network(routing)) => {
            let result = poa_nonatomic(routing, &poa_config(args.seed, args.eps)?)?;
            let so = FlowSummary::new(routing, &result.so.flow, result.so.cost, None, None, None);
            let report = NonatomicReport {
                mode: "nonatomic",
                classification: routing.instance().classification(),
                poa: result.poa,
                ne: result.worst_ne.as_ref().map(|ne| ne.summary(routing)),
                so,
                seeds_tried: result.seeds_tried,
                equilibria_found: result.equilibria_found,
                best_vi_gap: result.best_vi_gap,
            };
            args.output.emit(&report, || {
                let mut csv = String::from("section,key,value\n");
                csv += &format!("result,poa,{}\n", poa_text(report.poa));
                if let Some(ne) = &report.ne {
                    csv += &format!("ne,cost,{}\n", ne.cost);
                    for (path, f) in &ne.flow {
                        csv += &format!("ne,\"{path}\",{f}\n");
                    }
                }
                csv += &format!("so,cost,{}\n", report.so.cost);
                for (path, f) in &report.so.flow {
                    csv += &format!("so,\"{path}\",{f}\n");
                }
                csv
            })?;
            result.poa
        }
        (ModeArg::Nonatomic, Input::Matrix(_)) => {
            bail!("a matrix game has no splittable flows; use --mode atomic")
        }
        (ModeArg::Atomic, Input::Network(routing)) => emit_atomic(
            routing.as_ref(),
            Some(routing.instance().classification()),
            &args.output,
        )?,
        (ModeArg::Atomic, Input::Matrix(game)) => emit_atomic(game, None, &args.output)?,
    };
    Ok(if poa == Poa::NoEquilibrium {
        EXIT_NO_EQUILIBRIUM
    } else {
        0
    })
}

fn emit_atomic<G: AtomicGame>(
    game: &G,
    classification: Option<&Classification>,
    output: &Output,
) -> Result<Poa> {
    let result = poa_atomic(game, DEFAULT_PROFILE_CAP)?;
    let report = AtomicReport {
        mode: "atomic",
        classification,
        poa: result.poa,
        worst_ne: result.worst_ne.as_ref().map(|p| p.view(game)),
        so: result.so.view(game),
        equilibria: result.equilibria,
    };
    output.emit(&report, || {
        let mut csv = String::from("section,key,value\n");
        csv += &format!("result,poa,{}\n", poa_text(report.poa));
        csv += &format!("result,equilibria,{}\n", report.equilibria);
        if let Some(ne) = &report.worst_ne {
            csv += &format!(
                "ne,cost,{}\nne,choices,\"{}\"\n",
                ne.cost,
                ne.choices.join(" ")
            );
        }
        csv += &format!(
            "so,cost,{}\nso,choices,\"{}\"\n",
            report.so.cost,
            report.so.choices.join(" ")
        );
        csv
    })?;
    Ok(result.poa)
}

fn bounds(args: &BoundsArgs) -> Result<u8> {
    let Input::Network(routing) = args.source.load()? else {
        bail!("bounds need a network instance with delay polynomials");
    };
    let class = routing.instance().classification();
    let (mode, measured) = match args.mode {
        ModeArg::Nonatomic => {
            let measured = if args.measure {
                poa_nonatomic(&routing, &poa_config(args.seed, args.eps)?)?
                    .poa
                    .value()
            } else {
                None
            };
            (Mode::Nonatomic, measured)
        }
        ModeArg::Atomic => {
            let measured = if args.measure {
                poa_atomic(routing.as_ref(), DEFAULT_PROFILE_CAP)?
                    .poa
                    .value()
            } else {
                None
            };
            (Mode::Atomic, measured)
        }
    };
    let report = BoundReport::new(class, mode, measured, args.variants);
    args.output.emit(&report, || report.to_csv())?;
    Ok(if report.violations.is_empty() {
        0
    } else {
        EXIT_VIOLATION
    })
}
