//! Acceptance gate: one test per numbered criterion.  Each test runs the
//! corresponding verification suite with the mandated presets and bounds,
//! requires every case to pass with a conclusive certificate, and prints a
//! single summary line.

use weylkit::root_datum::datum_from_preset;
use weylkit::suites::{run_suite, SuiteConfig};
use weylkit::VerificationReport;

const ALL_PRESETS: &[&str] = &["SL2", "A2", "B2", "G2", "GL2", "GL3"];

fn run_on(
    suite: &str,
    presets: &[&str],
    cfg: &SuiteConfig,
    min_cases_per_preset: usize,
) -> Vec<(String, VerificationReport)> {
    let mut out = Vec::new();
    for preset in presets {
        let d = datum_from_preset(preset).unwrap();
        let rep = run_suite(suite, &d, cfg).unwrap();
        assert!(
            rep.cases.len() >= min_cases_per_preset,
            "{suite} on {preset}: only {} cases, need {min_cases_per_preset}",
            rep.cases.len()
        );
        for case in rep.failures() {
            panic!(
                "{suite} on {preset} failed: {} (lhs = {}, rhs = {})",
                case.label, case.lhs, case.rhs
            );
        }
        assert!(!rep.inconclusive, "{suite} on {preset}: inconclusive");
        out.push((preset.to_string(), rep));
    }
    out
}

fn summarize(criterion: usize, what: &str, reports: &[(String, VerificationReport)]) {
    let total: usize = reports.iter().map(|(_, r)| r.cases.len()).sum();
    println!("criterion {criterion}: PASS — {what} ({total} cases)");
}

#[test]
fn criterion_01_induction_axioms() {
    let cfg = SuiteConfig {
        sample_count: 20,
        ..SuiteConfig::default()
    };
    let reports = run_on("axioms", &["A2", "B2"], &cfg, 20);
    summarize(1, "transitivity and projection on T < Levi < G chains", &reports);
}

#[test]
fn criterion_02_reciprocity() {
    let cfg = SuiteConfig::default();
    let reports = run_on("reciprocity", ALL_PRESETS, &cfg, 30);
    summarize(2, "induction/restriction adjunction on every preset", &reports);
}

#[test]
fn criterion_03_weyl_integration() {
    let cfg = SuiteConfig::default();
    let reports = run_on("integration", ALL_PRESETS, &cfg, 25);
    summarize(3, "invariant dimension vs greedy decomposition", &reports);
}

#[test]
fn criterion_04_fixed_point_localization() {
    let cfg = SuiteConfig::default();
    let reports = run_on("localization", &["SL2", "A2", "B2"], &cfg, 1);
    // the suite includes the structure-sheaf pushforward over each G/B
    for (preset, rep) in &reports {
        assert!(
            rep.cases
                .iter()
                .any(|c| c.label.contains("structure sheaf") && c.pass),
            "{preset}: missing flag-variety Euler characteristic check"
        );
    }
    summarize(4, "localized pushforward agrees with orbit sums", &reports);
}

#[test]
fn criterion_05_twisting() {
    let cfg = SuiteConfig::default();
    let reports = run_on("twisting", ALL_PRESETS, &cfg, 12);
    summarize(5, "twist automorphism/composition/evaluation bridge", &reports);
}

#[test]
fn criterion_06_central_invertibility() {
    let cfg = SuiteConfig::default();
    let reports = run_on("central", ALL_PRESETS, &cfg, 1);
    summarize(6, "central classes invertible after completion", &reports);
}

#[test]
fn criterion_07_crt_of_completions() {
    let cfg = SuiteConfig::default();
    let reports = run_on("crt", &["SL2", "GL2", "A2"], &cfg, 2);
    summarize(7, "jet map surjectivity across the orbit (k = 2, 3)", &reports);
}

#[test]
fn criterion_08_indres_completions() {
    let cfg = SuiteConfig::default();
    let reports = run_on("indres", &["SL2", "GL2", "A2"], &cfg, 2);
    let gl2 = &reports.iter().find(|(p, _)| p == "GL2").unwrap().1;
    assert!(
        gl2.cases
            .iter()
            .any(|c| c.label.contains("residue fiber") && c.pass && c.lhs == "2"),
        "GL2 residue fiber dimension 2 = 2! not certified"
    );
    summarize(8, "completed induction/restriction via coset jets", &reports);
}

#[test]
fn criterion_09_graded_riemann_roch() {
    let cfg = SuiteConfig::default();
    let reports = run_on("graded", &["SL2", "GL2", "A2"], &cfg, 5);
    for (preset, rep) in &reports {
        assert!(
            rep.cases
                .iter()
                .any(|c| c.label.contains("Molien vs brute force") && c.pass),
            "{preset}: missing brute-force invariant cross-check"
        );
    }
    summarize(9, "graded character map bijective in degrees <= 4", &reports);
}

#[test]
fn criterion_10_infrastructure() {
    let cfg = SuiteConfig::default();
    let reports = run_on("infrastructure", ALL_PRESETS, &cfg, 4);
    summarize(10, "Weyl orders, orbit counting, stabilizers, pi_1 flags", &reports);
}
