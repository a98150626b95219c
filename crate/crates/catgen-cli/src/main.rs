//! `catgen` — runs the category-generalization experiments from the
//! command line and writes plot-ready CSV output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use catgen::bayes::{bayes_curve, HypothesisSpace};
use catgen::experiment::{
    run_condition, run_effect_report, write_bayes_csv, write_condition_csv, write_raw_csv,
    write_report_json, ConditionSpec, ProbeGrid, PRESET_NAMES, SEED_BASE_ENV,
};
use catgen::Stimulus;

#[derive(Parser)]
#[command(name = "catgen", version, about = "SOM category generalization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for output files (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run one condition (a preset name or a JSON spec file) over a seed
    /// ensemble and write its mean curve as CSV.
    Run {
        /// Preset name (base, numerosity, variability, set1, set2) or a
        /// path to a JSON condition file.
        condition: String,
        /// Override the number of seeds in the ensemble.
        #[arg(long)]
        seeds: Option<u32>,
        /// Also write per-seed raw curves.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run all built-in conditions and report the comparative effects.
    Report {
        /// Seeds per condition.
        #[arg(long, default_value_t = 100)]
        seeds: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the Bayesian reference model for a preset's stimuli.
    Bayes {
        /// Preset name.
        preset: String,
        /// Hypothesis grid as LO HI STEP.
        #[arg(long, num_args = 3, value_names = ["LO", "HI", "STEP"])]
        grid: Option<Vec<f64>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an ad-hoc condition from stimuli given on the command line.
    Curve {
        /// Stimuli as semicolon-separated points, e.g. "50,0;60,0".
        #[arg(long)]
        stimuli: String,
        /// Name used for the output file.
        #[arg(long, default_value = "custom")]
        name: String,
        /// Seeds in the ensemble.
        #[arg(long, default_value_t = 100)]
        seeds: u32,
        /// Probe grid as LO HI STEP.
        #[arg(long, num_args = 3, value_names = ["LO", "HI", "STEP"])]
        probe_grid: Option<Vec<f64>>,
        /// Also write per-seed raw curves.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let base_seed = seed_base()?;
    match cli.command {
        Command::Run {
            condition,
            seeds,
            raw,
            output,
        } => {
            let mut spec = load_condition(&condition)?;
            if let Some(n) = seeds {
                spec.n_seeds = n;
            }
            run_and_write(&spec, base_seed, raw, &output.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { seeds, output } => {
            let report = run_effect_report(seeds, base_seed)?;
            std::fs::create_dir_all(&output.out)?;
            let path = output.out.join("report.json");
            write_report_json(&report, &path)?;
            if let Some(warning) = &report.warning {
                println!("WARNING {warning}");
            }
            for v in &report.verdicts {
                println!(
                    "{} {}: statistic={:.4} threshold={}",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.property,
                    v.statistic,
                    v.threshold
                );
            }
            println!("wrote {}", path.display());
            if report.warning.is_some() || report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Bayes {
            preset,
            grid,
            output,
        } => {
            let spec = ConditionSpec::preset(&preset)?;
            let space = match grid.as_deref() {
                Some([lo, hi, step]) => HypothesisSpace::new(*lo, *hi, *step)?,
                Some(_) => unreachable!("clap enforces three values"),
                None => HypothesisSpace::default_grid(),
            };
            let examples: Vec<f64> = spec.stimuli.iter().map(|s| s.values()[0]).collect();
            let probes = space.grid_points().to_vec();
            let curve = bayes_curve(&space, &examples, &probes)?;
            std::fs::create_dir_all(&output.out)?;
            let path = output.out.join(format!("{preset}_bayes.csv"));
            write_bayes_csv(&curve, &path)?;
            println!("wrote {} ({} probes)", path.display(), curve.probes.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve {
            stimuli,
            name,
            seeds,
            probe_grid,
            raw,
            output,
        } => {
            let spec = ConditionSpec {
                name,
                stimuli: parse_stimuli(&stimuli)?,
                probe_grid: match probe_grid.as_deref() {
                    Some([lo, hi, step]) => ProbeGrid::new(*lo, *hi, *step)?,
                    Some(_) => unreachable!("clap enforces three values"),
                    None => ProbeGrid::default(),
                },
                som_config: Default::default(),
                n_seeds: seeds,
            };
            run_and_write(&spec, base_seed, raw, &output.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn seed_base() -> Result<u64> {
    match std::env::var(SEED_BASE_ENV) {
        Ok(text) => text
            .parse()
            .with_context(|| format!("{SEED_BASE_ENV} must be an unsigned integer, got '{text}'")),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(e).context(SEED_BASE_ENV),
    }
}

fn load_condition(arg: &str) -> Result<ConditionSpec> {
    if PRESET_NAMES.contains(&arg) {
        return Ok(ConditionSpec::preset(arg)?);
    }
    let path = Path::new(arg);
    if path.exists() {
        return ConditionSpec::from_json_file(path)
            .with_context(|| format!("reading condition file {arg}"));
    }
    bail!("'{arg}' is neither a preset ({}) nor an existing file", PRESET_NAMES.join(", "));
}

fn parse_stimuli(text: &str) -> Result<Vec<Stimulus>> {
    let mut stimuli = Vec::new();
    for point in text.split(';').filter(|p| !p.trim().is_empty()) {
        let values = point
            .split(',')
            .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad coordinate '{v}'")))
            .collect::<Result<Vec<f64>>>()?;
        stimuli.push(Stimulus::new(values)?);
    }
    if stimuli.is_empty() {
        bail!("no stimuli given; expected e.g. \"50,0;60,0\"");
    }
    Ok(stimuli)
}

fn run_and_write(spec: &ConditionSpec, base_seed: u64, raw: bool, out: &Path) -> Result<()> {
    let result = run_condition(spec, base_seed, raw)?;
    std::fs::create_dir_all(out)?;
    let path = out.join(format!("{}.csv", spec.name));
    write_condition_csv(&result, &path)?;
    println!(
        "condition {}: seeds={} mean max QE = {:.4} +/- {:.4}",
        spec.name, spec.n_seeds, result.mean_max_qe, result.stderr_max_qe
    );
    println!("wrote {}", path.display());
    if raw {
        let raw_path = out.join(format!("{}_raw.csv", spec.name));
        write_raw_csv(&result, &raw_path)?;
        println!("wrote {}", raw_path.display());
    }
    Ok(())
}
