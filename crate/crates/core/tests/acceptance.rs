//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Sweeps are exhaustive over the stated multiplicity bounds; tolerances
//! and runtime budgets are pinned here.

use std::time::Instant;

use whitney::dihedral::{DihedralParam, IrreducibleLabel, Representation};
use whitney::products::{product_spinorial, ProductRep};
use whitney::sweeps::{self, SweepReport};

fn finish(criterion: &str, start: Instant, reports: &[SweepReport], budget: Option<f64>) {
    let elapsed = start.elapsed().as_secs_f64();
    let pass = reports.iter().all(SweepReport::passed);
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    println!(
        "criterion {criterion}: {} ({checked} checks, {elapsed:.2}s)",
        if pass { "PASS" } else { "FAIL" },
    );
    for report in reports {
        assert!(report.passed(), "{report}");
    }
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "criterion {criterion} took {elapsed:.2}s, budget {limit}s"
        );
    }
}

#[test]
fn criterion_01_regular_representation_identity() {
    let start = Instant::now();
    let report = sweeps::regular_identity(&[4, 8, 12, 16]).unwrap();
    finish("1 regular-representation identity", start, &[report], Some(1.0));
}

#[test]
fn criterion_02_formula_oracle_equivalence() {
    let start = Instant::now();
    let reports: Vec<SweepReport> = [4u64, 8, 12, 16, 3, 5, 2, 6, 10]
        .iter()
        .map(|&m| sweeps::formula_oracle(m, 3).unwrap())
        .collect();
    finish("2 formula/oracle equivalence", start, &reports, Some(60.0));
}

#[test]
fn criterion_03_lifting_criterion_equivalence() {
    let start = Instant::now();
    let reports: Vec<SweepReport> = [4u64, 8, 12, 16, 3, 5, 2, 6, 10]
        .iter()
        .map(|&m| sweeps::lifting_equivalence(m, 3).unwrap())
        .collect();
    finish("3 lifting-criterion equivalence", start, &reports, None);
}

#[test]
fn criterion_04_lifting_example_table() {
    let start = Instant::now();
    let report = sweeps::lifting_examples(&[4, 8, 12]).unwrap();
    finish("4 worked lifting table", start, &[report], None);
}

#[test]
fn criterion_05_detection_and_independence() {
    let start = Instant::now();
    let reports = [sweeps::detection(20), sweeps::independence(20)];
    finish("5 detection and independence", start, &reports, Some(5.0));
}

#[test]
fn criterion_06_top_swc_criterion() {
    let start = Instant::now();
    let reports: Vec<SweepReport> = [4u64, 8, 12, 16, 3, 5, 2, 6, 10]
        .iter()
        .map(|&m| sweeps::topswc_equivalence(m, 3).unwrap())
        .collect();
    finish("6 top-class criterion", start, &reports, None);
}

#[test]
fn criterion_07_swc_triviality() {
    let start = Instant::now();
    let reports: Vec<SweepReport> = [3u64, 4, 6, 8]
        .iter()
        .map(|&m| sweeps::swc_triviality(m, 3).unwrap())
        .collect();
    finish("7 class triviality", start, &reports, None);
}

#[test]
fn criterion_08_w_group_freeness() {
    let start = Instant::now();
    let report = sweeps::factor_roundtrip(3, 14).unwrap();
    assert_eq!(report.checked, 343);
    finish("8 unit-group freeness", start, &[report], None);
}

#[test]
fn criterion_09_products() {
    let start = Instant::now();
    let mut reports = vec![
        sweeps::aspin(4, 4).unwrap(),
        sweeps::aspin(4, 8).unwrap(),
        sweeps::aspin(8, 8).unwrap(),
    ];

    // The worked product example: (sigma_k + sigma_k) boxtimes itself with
    // k even is spinorial.
    let g = DihedralParam::new(8).unwrap();
    let two_sigma2 =
        Representation::from_multiplicities(g, [(IrreducibleLabel::Sigma(2), 2)]).unwrap();
    let example = ProductRep::new(two_sigma2.clone(), two_sigma2).unwrap();
    let spinorial = product_spinorial(&example).unwrap();
    reports.push(SweepReport {
        suite: "product example k even".into(),
        checked: 1,
        failures: u64::from(!spinorial),
        first_counterexample: (!spinorial).then(|| "example not spinorial".into()),
    });

    reports.push(sweeps::product_equivalence(&[3, 4, 6, 8], 2).unwrap());
    finish("9 product spinoriality", start, &reports, Some(30.0));
}

#[test]
fn criterion_10_decomposition_oracle() {
    let start = Instant::now();
    let report = sweeps::decompose_roundtrip(16, 5).unwrap();
    finish("10 decomposition-oracle hygiene", start, &[report], None);
}
