//! Serialization of run results: summary JSON and CSV dumps.
//!
//! Numeric formatting is locale-free with six decimal places, so reruns of
//! the same configuration produce byte-identical files. Wall-clock timings
//! never enter these artifacts.

use serde::Serialize;

use cfsphere_core::{shell_radii, CfsEstimate, SampleResult, SampleSet, ValidationReport};

use crate::config::RunConfigFile;

/// Fixed-point millimetre/parameter formatting used by every CSV column.
pub fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

#[derive(Serialize)]
struct ValidateSummary<'a> {
    command: &'static str,
    config: &'a RunConfigFile,
    shell_radii_mm: Vec<f64>,
    pairs_evaluated: Vec<[u8; 2]>,
    samples_per_sphere: usize,
    total_samples: usize,
    unsafe_count: usize,
    unsafe_inside_cfs_count: usize,
    min_clearance_mm: f64,
    min_clearance_pair: [u8; 2],
    verdict: String,
}

/// Summary JSON for a validation run.
pub fn validate_summary(file: &RunConfigFile, report: &ValidationReport) -> String {
    let shell = report.config.shell().expect("validated config has a shell");
    let radii = shell_radii(&shell);
    let worst = report
        .samples
        .iter()
        .min_by(|a, b| a.min_clearance.total_cmp(&b.min_clearance))
        .expect("a report always carries samples");
    let summary = ValidateSummary {
        command: "validate",
        config: file,
        shell_radii_mm: radii.clone(),
        pairs_evaluated: report
            .config
            .pairs
            .iter()
            .map(|p| [p.first(), p.second()])
            .collect(),
        samples_per_sphere: report.total_samples / radii.len(),
        total_samples: report.total_samples,
        unsafe_count: report.unsafe_samples.len(),
        unsafe_inside_cfs_count: report.unsafe_inside_cfs.len(),
        min_clearance_mm: worst.min_clearance,
        min_clearance_pair: [worst.worst_pair.first(), worst.worst_pair.second()],
        verdict: report.verdict.to_string(),
    };
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct EstimateSummary<'a> {
    command: &'static str,
    config: &'a RunConfigFile,
    directions_used: usize,
    r3_est_mm: f64,
    limiting_direction: Option<[f64; 3]>,
    censored: bool,
}

/// Summary JSON for an estimation run.
pub fn estimate_summary(file: &RunConfigFile, estimate: &CfsEstimate) -> String {
    let summary = EstimateSummary {
        command: "estimate",
        config: file,
        directions_used: estimate.directions_used,
        r3_est_mm: estimate.radius,
        limiting_direction: estimate.limiting_direction.map(|u| [u.x, u.y, u.z]),
        censored: estimate.censored,
    };
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    text
}

const SAMPLE_HEADER: &str = "index,x,y,z,radius,min_clearance,worst_i,worst_j,safe\n";

fn sample_row(index: usize, s: &SampleResult) -> String {
    format!(
        "{index},{},{},{},{},{},{},{},{}\n",
        fmt(s.position.x),
        fmt(s.position.y),
        fmt(s.position.z),
        fmt(s.radius),
        fmt(s.min_clearance),
        s.worst_pair.first(),
        s.worst_pair.second(),
        s.safe
    )
}

/// Per-sample CSV: one row per shell sample, in sample order.
pub fn samples_csv(report: &ValidationReport) -> String {
    let mut out = String::with_capacity(64 * (report.samples.len() + 1));
    out.push_str(SAMPLE_HEADER);
    for (index, s) in report.samples.iter().enumerate() {
        out.push_str(&sample_row(index, s));
    }
    out
}

/// Unsafe-points CSV: the rows of [`samples_csv`] whose sample collided,
/// keeping the original sample indices. Ready for 3D scatter plotting.
pub fn unsafe_csv(report: &ValidationReport) -> String {
    let mut out = String::from(SAMPLE_HEADER);
    for (index, s) in report.samples.iter().enumerate() {
        if !s.safe {
            out.push_str(&sample_row(index, s));
        }
    }
    out
}

/// Position-only CSV for a raw sample dump.
pub fn sample_positions_csv(set: &SampleSet) -> String {
    let mut out = String::with_capacity(40 * (set.len() + 1));
    out.push_str("x,y,z,radius\n");
    for i in 0..set.len() {
        let p = set.points[i];
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt(p.x),
            fmt(p.y),
            fmt(p.z),
            fmt(set.radius_of(i))
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cfsphere_core::{shell_samples, ShellSpec, Vec3};

    #[test]
    fn csv_formatting_is_fixed_point() {
        assert_eq!(fmt(1.0), "1.000000");
        assert_eq!(fmt(-76.130754444105619), "-76.130754");
        assert_eq!(fmt(0.0), "0.000000");
    }

    #[test]
    fn position_dump_has_one_row_per_sample() {
        let spec = ShellSpec::new(Vec3::new(0.0, 0.0, 300.0), 12.2, 14.9, 1.0).unwrap();
        let set = shell_samples(&spec, 50).unwrap();
        let csv = sample_positions_csv(&set);
        assert_eq!(csv.lines().count(), set.len() + 1);
        assert!(csv.starts_with("x,y,z,radius\n"));
    }
}
