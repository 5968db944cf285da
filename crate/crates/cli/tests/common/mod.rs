#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Anchor invocations and the files holding their expected output.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "pmf_b1_m0_mu0.5.csv",
        &["pmf", "--B", "1", "--m", "0", "--mu", "0.5"],
    ),
    (
        "pmf_b1_m1_mu0.25.csv",
        &["pmf", "--B", "1", "--m", "1", "--mu", "0.25"],
    ),
    (
        "pmf_b1_m1_radius1.csv",
        &["pmf", "--B", "1", "--m", "1", "--radius", "1"],
    ),
    (
        "pmf_b1_m1_mu0.25.json",
        &[
            "pmf", "--B", "1", "--m", "1", "--mu", "0.25", "--format", "json",
        ],
    ),
    (
        "stats_b1_m1_mu0.5.csv",
        &["stats", "--B", "1", "--m", "1", "--mu", "0.5"],
    ),
    (
        "stats_b3_m0_mu0.4.csv",
        &["stats", "--B", "3", "--m", "0", "--mu", "0.4"],
    ),
    (
        "stats_b0_m0_mu0.3.json",
        &[
            "stats", "--B", "0", "--m", "0", "--mu", "0.3", "--format", "json",
        ],
    ),
    ("regions_b1_m1.csv", &["regions", "--B", "1", "--m", "1"]),
    (
        "charfn_b1_m1_mu0.5.csv",
        &["charfn", "--B", "1", "--m", "1", "--mu", "0.5"],
    ),
    (
        "sample_b1_m1_mu0.5_seed42.csv",
        &[
            "sample", "--B", "1", "--m", "1", "--mu", "0.5", "--count", "1000", "--seed", "42",
        ],
    ),
    (
        "sample_b2_m1_mu0.3_seed7.json",
        &[
            "sample", "--B", "2", "--m", "1", "--mu", "0.3", "--count", "500", "--seed", "7",
            "--format", "json",
        ],
    ),
];

pub fn gbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbd"))
        .args(args)
        .output()
        .expect("gbd binary runs")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Names of anchors whose output differs from the stored file.
pub fn golden_mismatches() -> Vec<String> {
    GOLDEN
        .iter()
        .filter_map(|(name, args)| {
            let out = gbd(args);
            let expected = std::fs::read(golden_path(name)).ok()?;
            (!out.status.success() || out.stdout != expected).then(|| name.to_string())
        })
        .chain(
            GOLDEN
                .iter()
                .filter(|(name, _)| !golden_path(name).exists())
                .map(|(name, _)| format!("{name} (missing)")),
        )
        .collect()
}

/// Data rows of a CSV record: comment lines and the header dropped.
pub fn csv_rows(stdout: &[u8]) -> Vec<Vec<String>> {
    String::from_utf8_lossy(stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}
