//! Integration tests for the command layer: determinism, exit codes and
//! input validation.

use quiver_moduli_cli::commands::{self, RunOpts};
use quiver_moduli_cli::formats::QuiverFile;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(name: &str) -> QuiverFile {
    quiver_moduli_cli::corpus::load(&corpus_dir(), name).unwrap()
}

#[test]
fn reports_are_byte_identical_for_fixed_inputs() {
    let qf = load("b1");
    let o = RunOpts::default();
    let (r1, c1) = commands::run_analyze(&qf, "alpha", "sigma_ac", &o).unwrap();
    let (r2, c2) = commands::run_analyze(&qf, "alpha", "sigma_ac", &o).unwrap();
    assert_eq!(r1.render(), r2.render());
    assert_eq!(c1, c2);
    assert_eq!(c1, 0);

    let (r3, _) = commands::run_cone(&qf, "alpha", &o).unwrap();
    let (r4, _) = commands::run_cone(&qf, "alpha", &o).unwrap();
    assert_eq!(r3.render(), r4.render());
}

#[test]
fn seed_is_recorded_in_the_report() {
    let qf = load("theta3");
    let o = RunOpts { seed: 7, ..RunOpts::default() };
    let (r, _) = commands::run_analyze(&qf, "alpha", "sigma", &o).unwrap();
    assert_eq!(r.inputs["seed"], 7);
    assert_eq!(r.inputs["prime"], quiver_moduli::DEFAULT_PRIME);
}

#[test]
fn named_and_literal_vectors_agree() {
    let qf = load("b1");
    let o = RunOpts::default();
    let (r1, _) = commands::run_analyze(&qf, "alpha", "sigma_ac", &o).unwrap();
    let (r2, _) = commands::run_analyze(&qf, "1,1,1", "2,1,-3", &o).unwrap();
    assert_eq!(r1.outputs, r2.outputs);
}

#[test]
fn bad_vector_size_is_an_input_error() {
    let qf = load("b1");
    let o = RunOpts::default();
    assert!(commands::run_analyze(&qf, "1,1", "2,1,-3", &o).is_err());
    assert!(commands::run_analyze(&qf, "alpha", "nonsense", &o).is_err());
}

#[test]
fn missing_quiver_file_is_an_input_error() {
    assert!(commands::load_quiver_file("/nonexistent/q.json").is_err());
}

#[test]
fn divisor_with_nonpositive_pairing_is_rejected() {
    // <eps, eps> = 1 > 0 is fine; beta inside eps-perp has pairing 0 and
    // must be rejected as input, not reported.
    let qf = load("b1");
    let o = RunOpts::default();
    let r = commands::run_divisor(&qf, "alpha", "eps", "0,1,0", &o);
    assert!(r.is_err());
}

#[test]
fn divisor_reports_pairing_coefficients() {
    let qf = load("b1");
    let o = RunOpts::default();
    let (r, code) = commands::run_divisor(&qf, "alpha", "eps", "beta_ac", &o).unwrap();
    assert_eq!(code, 0);
    assert_eq!(r.outputs["pullback_coefficient"], 1);
    assert_eq!(r.outputs["exceptional_coefficient"], r.outputs["pairing_crosscheck"]);
}

#[test]
fn verify_corpus_passes_on_shipped_corpus() {
    let o = RunOpts::default();
    let (r, code) = commands::run_verify_corpus(&corpus_dir(), &o).unwrap();
    assert_eq!(code, 0);
    assert_eq!(r.outputs["passed"], r.outputs["total"]);
    // The one known two-reading item is surfaced as a discrepancy.
    assert_eq!(r.discrepancies.len(), 1);
}

#[test]
fn corpus_files_round_trip_and_match_the_generators() {
    let entries = quiver_moduli_cli::corpus::pinned_entries();
    for e in entries {
        let on_disk = load(&e.name);
        assert_eq!(e, on_disk, "corpus file {} drifted from its generator", e.name);
    }
}

#[test]
fn si_dim_stabilization_curve_is_reported() {
    let qf = load("theta3");
    let o = RunOpts::default();
    let (r, _) = commands::run_si_dim(&qf, "alpha", "sigma", 1, &o).unwrap();
    assert_eq!(r.outputs["dimension"], 3);
    assert!(r.outputs["stabilization"].as_array().unwrap().len() >= 2);
}
