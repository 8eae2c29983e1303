//! Command-line driver: validate or estimate a collision-free sphere, dump
//! shell samples, or inspect a single pose.
//!
//! Exit codes: 0 on success (and a `validated` verdict for `validate`),
//! 2 when `validate` finds the sphere violated, 1 for usage, configuration,
//! or I/O errors.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use cfsphere_core::{
    estimate_cfs, pose_min_clearance, shell_samples, validate_cfs, Pose, Vec3, Verdict,
};

use config::RunConfig;

#[derive(Parser, Debug)]
#[command(
    name = "cfsphere",
    version,
    about = "Collision-free sphere validation for 6-6 semi-regular Stewart-Gough platforms"
)]
struct Cli {
    /// Worker threads for the sweeps (0 = all available). Outputs do not
    /// depend on this setting.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the configured sphere radius by sampling the shell around
    /// its boundary; writes a summary JSON plus per-sample and unsafe-point
    /// CSVs.
    Validate {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Overrides the output directory from the config file.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Estimate the collision-free sphere radius from scratch by searching
    /// outward along a regular placement of directions; writes a summary
    /// JSON.
    Estimate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write the shell sample positions of the configured scenario as CSV.
    DumpSamples {
        #[arg(long)]
        config: PathBuf,
        /// Output file; defaults to the samples CSV path from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the pairwise leg clearances for one pose. Defaults to the home
    /// pose: platform centre at the neutral height, zero orientation.
    CheckPose {
        #[arg(long)]
        config: PathBuf,
        /// Platform-centre position as `x,y,z` in mm.
        #[arg(long)]
        p: Option<String>,
        /// Rodrigues parameters as `c1,c2,c3`.
        #[arg(long)]
        c: Option<String>,
    },
}

/// Runs the CLI against an argument vector and returns the process exit
/// code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return 0;
        }
        Err(err) => {
            eprint!("{err}");
            return 1;
        }
    };
    configure_threads(cli.threads);
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) {
    if threads > 0 {
        // ignore the error from configuring twice within one process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) {}

fn load_config(path: &Path) -> Result<RunConfig> {
    let bytes =
        fs::read(path).with_context(|| format!("reading config {}", path.display()))?;
    config::parse_config(&bytes).with_context(|| format!("parsing config {}", path.display()))
}

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn parse_triple(kind: &str, text: &str) -> Result<Vec3> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        anyhow::bail!("{kind} must be three comma-separated numbers, got `{text}`");
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .with_context(|| format!("{kind}: `{part}` is not a number"))?;
    }
    Ok(Vec3::new(values[0], values[1], values[2]))
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Validate { config, out_dir } => {
            let run = load_config(&config)?;
            let dir = out_dir.unwrap_or_else(|| run.file.output.dir.clone());
            let report = validate_cfs(&run.validation)?;

            write_artifact(
                &dir,
                &run.file.output.summary_json,
                &report::validate_summary(&run.file, &report),
            )?;
            write_artifact(&dir, &run.file.output.samples_csv, &report::samples_csv(&report))?;
            write_artifact(&dir, &run.file.output.unsafe_csv, &report::unsafe_csv(&report))?;

            println!(
                "verdict: {} — {} samples, {} unsafe, {} unsafe inside r3 = {} mm",
                report.verdict,
                report.total_samples,
                report.unsafe_samples.len(),
                report.unsafe_inside_cfs.len(),
                report::fmt(run.validation.cfs_radius),
            );
            eprintln!(
                "swept {} samples in {:.3} s",
                report.total_samples, report.elapsed_seconds
            );
            Ok(match report.verdict {
                Verdict::Validated => 0,
                Verdict::Violated => 2,
            })
        }
        Command::Estimate { config, out_dir } => {
            let run = load_config(&config)?;
            let dir = out_dir.unwrap_or_else(|| run.file.output.dir.clone());
            let estimate_config = run.estimate.clone().context(
                "config has no `estimate` block; add estimate.n_directions, r_max_mm, tol_mm",
            )?;
            let estimate = estimate_cfs(&estimate_config)?;
            write_artifact(
                &dir,
                &run.file.output.estimate_json,
                &report::estimate_summary(&run.file, &estimate),
            )?;
            if estimate.censored {
                println!(
                    "estimate: censored — no collision within r_max = {} mm over {} directions",
                    report::fmt(estimate_config.r_max),
                    estimate.directions_used
                );
            } else {
                println!(
                    "estimate: r3 = {} mm over {} directions",
                    report::fmt(estimate.radius),
                    estimate.directions_used
                );
            }
            Ok(0)
        }
        Command::DumpSamples { config, out } => {
            let run = load_config(&config)?;
            let shell = run.validation.shell()?;
            let set = shell_samples(&shell, run.validation.samples_per_sphere)?;
            let csv = report::sample_positions_csv(&set);
            let path = match out {
                Some(path) => {
                    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                        fs::create_dir_all(parent).with_context(|| {
                            format!("creating output directory {}", parent.display())
                        })?;
                    }
                    fs::write(&path, &csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    path
                }
                None => write_artifact(
                    &run.file.output.dir,
                    &run.file.output.samples_csv,
                    &csv,
                )?,
            };
            println!("wrote {} samples to {}", set.len(), path.display());
            Ok(0)
        }
        Command::CheckPose { config, p, c } => {
            let run = load_config(&config)?;
            let arch = run.validation.arch;
            let position = match p {
                Some(text) => parse_triple("--p", &text)?,
                None => arch.home_position(),
            };
            let orientation = match c {
                Some(text) => parse_triple("--c", &text)?,
                None => Vec3::ZERO,
            };
            let pose = Pose::new(position, orientation);
            let clearance = pose_min_clearance(&arch, &pose, &run.validation.pairs)?;

            println!(
                "pose: p = ({}, {}, {}) mm, c = ({}, {}, {})",
                report::fmt(position.x),
                report::fmt(position.y),
                report::fmt(position.z),
                report::fmt(orientation.x),
                report::fmt(orientation.y),
                report::fmt(orientation.z),
            );
            println!("pair,clearance_mm,colliding");
            for record in &clearance.records {
                println!(
                    "{}-{},{},{}",
                    record.pair.first(),
                    record.pair.second(),
                    report::fmt(record.clearance),
                    record.colliding
                );
            }
            println!(
                "min clearance {} mm at pair {}; pose is {}",
                report::fmt(clearance.min_clearance),
                clearance.worst_pair,
                if clearance.is_safe() { "safe" } else { "unsafe" }
            );
            Ok(0)
        }
    }
}
