mod common;

use common::{csv_rows, gbd};
use gbd_core::gbd::{sample, GbdParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn pmf_anchors() {
    let rows = csv_rows(&gbd(&["pmf", "--B", "1", "--m", "1", "--mu", "0.25"]).stdout);
    let expected = [0.421875, 0.0, 0.28125, 0.25, 0.046875];
    for (p, e) in column(&rows, 1).iter().zip(expected) {
        assert!((p - e).abs() < 1e-14);
    }
    let by_mu = gbd(&["pmf", "--B", "1", "--m", "1", "--mu", "0.5"]);
    let by_radius = gbd(&["pmf", "--B", "1", "--m", "1", "--radius", "1"]);
    assert_eq!(csv_rows(&by_mu.stdout), csv_rows(&by_radius.stdout));
}

#[test]
fn stats_rows() {
    let rows = csv_rows(&gbd(&["stats", "--B", "1", "--m", "1", "--mu", "0.5"]).stdout);
    assert_eq!(rows[0][3], "SUPER_POISSONIAN");
    assert!((rows[0][2].parse::<f64>().unwrap() - 0.25).abs() < 1e-14);
    let rows = csv_rows(&gbd(&["stats", "--B", "0", "--m", "0", "--mu", "0.3"]).stdout);
    assert_eq!(rows[0][2..], ["undefined", "DEGENERATE"]);
}

#[test]
fn regions_rows() {
    let rows = csv_rows(&gbd(&["regions", "--B", "1", "--m", "1"]).stdout);
    let find = |r: f64| {
        rows.iter()
            .find(|row| row[0].parse::<f64>().unwrap() == r)
            .unwrap()[2]
            .clone()
    };
    assert_eq!(find(1.0), "SUPER_POISSONIAN");
    assert_eq!(find(2.0), "SUB_POISSONIAN");
    assert_eq!(rows.len(), 301);
}

#[test]
fn charfn_identity_holds_on_every_row() {
    let rows = csv_rows(
        &gbd(&[
            "charfn",
            "--B",
            "4",
            "--m",
            "3",
            "--mu",
            "0.37",
            "--n_points",
            "257",
        ])
        .stdout,
    );
    assert_eq!(rows.len(), 257);
    assert!(column(&rows, 5).iter().all(|d| *d <= 1e-10));
}

#[test]
fn single_sample_is_the_first_uniform() {
    for seed in [0u64, 1, 12345] {
        let s = seed.to_string();
        let out = gbd(&[
            "sample", "--B", "2", "--m", "1", "--mu", "0.4", "--count", "1", "--seed", &s,
        ]);
        let rows = csv_rows(&out.stdout);
        let hit = rows.iter().position(|r| r[1] == "1").unwrap();
        let u: f64 = ChaCha8Rng::seed_from_u64(seed).gen();
        assert_eq!(hit as u32, sample(&GbdParams::new(2, 1, 0.4).unwrap(), u));
    }
}

#[test]
fn sample_mean_within_clt_band() {
    let out = gbd(&[
        "sample", "--B", "1", "--m", "1", "--mu", "0.5", "--count", "100000", "--seed", "3",
        "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let mean = v["summary"]["empirical_mean"].as_f64().unwrap();
    assert!((mean - 2.0).abs() <= 3.0 * (2.5f64 / 100000.0).sqrt());
}

#[test]
fn json_records_carry_schema_version() {
    for cmd in [
        vec!["pmf", "--B", "2", "--m", "1", "--mu", "0.3"],
        vec!["regions", "--B", "2", "--m", "1", "--n_grid", "5"],
        vec!["verify", "--suite", "specfun"],
    ] {
        let mut args = cmd.clone();
        args.extend(["--format", "json"]);
        let v: Value = serde_json::from_slice(&gbd(&args).stdout).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert!(v["rows"].as_array().is_some_and(|r| !r.is_empty()));
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| gbd(args).status.code().unwrap();
    assert_eq!(
        code(&["pmf", "--B", "1", "--m", "1", "--mu", "0.5", "--radius", "1"]),
        2
    );
    assert_eq!(code(&["pmf", "--B", "1", "--m", "1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["pmf", "--B", "1", "--m", "1", "--mu", "1.5"]), 3);
    assert_eq!(code(&["pmf", "--B", "1", "--m", "1", "--radius", "-2"]), 3);
    assert_eq!(
        code(&[
            "charfn",
            "--B",
            "1",
            "--m",
            "1",
            "--mu",
            "0.5",
            "--n_points",
            "1"
        ]),
        3
    );
    assert_eq!(
        code(&["sample", "--B", "1", "--m", "1", "--mu", "0.5", "--count", "0"]),
        3
    );
    assert_eq!(code(&["verify", "--tol", "-1"]), 3);
    assert_eq!(
        code(&["verify", "--suite", "gbd", "--B_max", "10", "--m_max", "5", "--tol", "1e-10"]),
        0
    );
    assert_eq!(code(&["verify", "--suite", "all", "--tol", "1e-30"]), 4);
}

#[test]
fn domain_errors_name_the_bound() {
    let out = gbd(&["stats", "--B", "1", "--m", "1", "--mu", "-0.1"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("[0, 1]"), "{msg}");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("gbd-out-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = gbd(&["pmf", "--B", "1", "--m", "0", "--mu", "0.5", "--out", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(
        written,
        gbd(&["pmf", "--B", "1", "--m", "0", "--mu", "0.5"]).stdout
    );
}
