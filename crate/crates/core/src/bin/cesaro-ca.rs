use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use cesaro_ca::experiment::{run, Experiment, ExperimentConfig, Params, Report};
use cesaro_ca::{Caps, Result};

#[derive(Parser)]
#[command(name = "cesaro-ca", version, about = "Blocking words and Cesàro limits of cellular automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified blocking words up to `max_len`.
    BlockingSearch(Common),
    /// E1 / E2 classification by blocking words.
    Classify(Common),
    /// Exact surjectivity on the full shift.
    Surjectivity(Common),
    /// F-periodic points through every short word.
    PeriodicPoints(Common),
    /// Exact μ(F^{-n}[u]).
    Pushforward(Common),
    /// Exact Cesàro means μ_n([u]).
    Cesaro(Common),
    /// Blocking-word formula W_m(u) against the Cesàro series.
    Formula(Common),
    /// Positive witnesses for every word in the support.
    Support(Common),
    /// Presentations of the first forward images.
    LimitSet(Common),
    /// Blocking-word tools.
    Blocking {
        #[command(subcommand)]
        command: BlockingCommand,
    },
}

#[derive(Subcommand)]
enum BlockingCommand {
    /// Same as `blocking-search`, with dedicated flags.
    Search(BlockingSearch),
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["csv", "json"])]
    format: String,
    /// Cap overrides applied after `CESARO_CA_CAPS`, e.g. `rkm_length=11`.
    #[arg(long)]
    caps: Option<String>,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    rule: PathBuf,
    #[arg(long)]
    measure: Option<PathBuf>,
    #[arg(long)]
    space: Option<PathBuf>,
    /// `key=value` pairs, e.g. `--param u=2012 N=64`.
    #[arg(long, num_args = 1..)]
    param: Vec<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BlockingSearch {
    #[arg(long)]
    rule: PathBuf,
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    #[arg(long)]
    strip: Option<usize>,
    #[arg(long, default_value_t = 6)]
    horizon: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn config(experiment: Experiment, c: Common) -> Result<ExperimentConfig> {
    Ok(ExperimentConfig {
        experiment,
        rule: c.rule,
        measure: c.measure,
        space: c.space,
        params: Params::parse(&c.param)?,
        caps: caps(&c.output)?,
        out: c.output.out,
        format: c.output.format.parse()?,
    })
}

fn caps(output: &Output) -> Result<Caps> {
    let caps = Caps::from_env()?;
    match &output.caps {
        Some(spec) => caps.with_overrides(spec),
        None => Ok(caps),
    }
}

fn build(command: Command) -> Result<ExperimentConfig> {
    let (experiment, common) = match command {
        Command::BlockingSearch(c) => (Experiment::BlockingSearch, c),
        Command::Classify(c) => (Experiment::Classify, c),
        Command::Surjectivity(c) => (Experiment::Surjectivity, c),
        Command::PeriodicPoints(c) => (Experiment::PeriodicPoints, c),
        Command::Pushforward(c) => (Experiment::Pushforward, c),
        Command::Cesaro(c) => (Experiment::Cesaro, c),
        Command::Formula(c) => (Experiment::Formula, c),
        Command::Support(c) => (Experiment::Support, c),
        Command::LimitSet(c) => (Experiment::LimitSet, c),
        Command::Blocking {
            command: BlockingCommand::Search(b),
        } => {
            let mut params = Params::default()
                .set("max_len", b.max_len)?
                .set("horizon", b.horizon)?
                .set("seed", b.seed)?;
            if let Some(w) = b.strip {
                params = params.set("strip", w)?;
            }
            return Ok(ExperimentConfig {
                experiment: Experiment::BlockingSearch,
                rule: b.rule,
                measure: None,
                space: b.space,
                params,
                caps: caps(&b.output)?,
                out: b.output.out,
                format: b.output.format.parse()?,
            });
        }
    };
    config(experiment, common)
}

fn emit(config: &ExperimentConfig, report: &Report) -> Result<()> {
    let text = report.render(config.format)?;
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = build(cli.command).and_then(|config| {
        let report = run(&config)?;
        emit(&config, &report)?;
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            for (key, value) in &report.summary {
                eprintln!("{key}: {value}");
            }
            if let Some(message) = &report.message {
                eprintln!("hypothesis not met: {message}");
            }
            eprintln!("wall time: {:.3}s", started.elapsed().as_secs_f64());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
