//! Driving the experiment runner from code instead of the command line.

use std::path::PathBuf;

use cesaro_ca::experiment::{run, Experiment, ExperimentConfig, OutputFormat, Params};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let config = ExperimentConfig {
        experiment: Experiment::Cesaro,
        rule: data.join("walls_and_parity.rule"),
        measure: Some(data.join("half_quarter_quarter.measure")),
        space: None,
        params: Params::parse(&["u=2012,2112", "N=16"])?,
        caps: Caps::from_env()?,
        out: None,
        format: OutputFormat::Csv,
    };
    let report = run(&config)?;
    print!("{}", report.render(OutputFormat::Csv)?);
    eprintln!("digest {}", report.inputs_digest);
    Ok(())
}
