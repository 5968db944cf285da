mod common;

use common::{gbd, golden_mismatches};

#[test]
fn anchors_are_byte_identical() {
    let bad = golden_mismatches();
    assert!(bad.is_empty(), "golden mismatches: {bad:?}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "sample", "--B", "3", "--m", "2", "--mu", "0.6", "--count", "2000", "--seed", "99",
    ];
    assert_eq!(gbd(&args).stdout, gbd(&args).stdout);
}
