//! Acceptance, CLI part: the thread-count clause of criterion 6. The worker
//! thread setting must not change a single output byte, and reruns must be
//! byte-identical.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn repo_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run_validate(config: &Path, out_dir: &Path, threads: &str) {
    let output = Command::new(env!("CARGO_BIN_EXE_cfsphere"))
        .args([
            "validate",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out_dir.to_str().unwrap(),
            "--threads",
            threads,
        ])
        .output()
        .expect("binary runs");
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn criterion_6_thread_count_does_not_change_any_output_byte() {
    let dir = tempfile::tempdir().unwrap();
    let config = repo_config("scenario2.json");

    let runs = [
        (dir.path().join("threads1"), "1"),
        (dir.path().join("threads3"), "3"),
        (dir.path().join("auto"), "0"),
        (dir.path().join("threads1_again"), "1"),
    ];
    for (out_dir, threads) in &runs {
        run_validate(&config, out_dir, threads);
    }

    let reference: Vec<(String, Vec<u8>)> = ["summary.json", "samples.csv", "unsafe.csv"]
        .iter()
        .map(|name| {
            (
                name.to_string(),
                fs::read(runs[0].0.join(name)).expect("artifact exists"),
            )
        })
        .collect();
    for (out_dir, threads) in &runs[1..] {
        for (name, expected) in &reference {
            let got = fs::read(out_dir.join(name)).expect("artifact exists");
            assert_eq!(
                &got, expected,
                "{name} differs between --threads 1 and --threads {threads}"
            );
        }
    }
    println!(
        "criterion 6 (CLI): PASS — validate outputs byte-identical across --threads 1/3/0 and \
         across reruns"
    );
}
