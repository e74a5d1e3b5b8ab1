//! Acceptance suite: one test per criterion, each exact (zero tolerance)
//! and printing a single pass/fail line. Run with `--nocapture` to see the
//! lines; every check is also asserted.

use logchow_cli::suites::{run_suite, SuiteCtx, SuiteReport};

const SEED: u64 = 20260811;

fn ctx(depth: usize) -> SuiteCtx {
    SuiteCtx { seed: SEED, depth, fan: None }
}

fn report_line(criterion: &str, rep: &SuiteReport, min_cases: usize) {
    let status = if rep.passed && rep.cases.len() >= min_cases { "PASS" } else { "FAIL" };
    println!("{criterion}: {status} ({} cases)", rep.cases.len());
    if !rep.passed {
        for c in rep.cases.iter().filter(|c| !c.pass) {
            println!("    failed: {} {:?}", c.name, c.details);
        }
    }
    assert!(rep.passed, "{criterion} failed");
    assert!(rep.cases.len() >= min_cases, "{criterion}: too few cases");
}

#[test]
fn criterion_01_niziol_equivalence() {
    // Smoothness <=> free characteristic stalk <=> multiplicity 1, on at
    // least 50 random rank-2/3 cones; exact.
    let rep = run_suite("niziol", &ctx(2)).unwrap();
    report_line("criterion 1 (Niziol lemma equivalence)", &rep, 50);
}

#[test]
fn criterion_02_point_class_multiplicity() {
    // Gysin pullback of the point class along the blow-up of the plane
    // cone has coefficient exactly 1 on the exceptional stratum.
    let rep = run_suite("point-multiplicity", &ctx(2)).unwrap();
    report_line("criterion 2 (point class multiplicity 1)", &rep, 2);
}

#[test]
fn criterion_03_compatible_fundamental_class() {
    // On at least 20 smooth towers of depth <= 3 over the projective plane
    // and the product of lines: pullback of [X] is [X~], pushforward
    // returns [X]; exact equality of representatives.
    let rep = run_suite("fundamental-class", &ctx(3)).unwrap();
    report_line("criterion 3 (compatible fundamental class)", &rep, 20);
}

#[test]
fn criterion_04_gysin_functoriality() {
    // (pi' . pi)^! = pi'^! . pi^! exactly on at least 20 random towers.
    let rep = run_suite("gysin-functoriality", &ctx(3)).unwrap();
    report_line("criterion 4 (Gysin functoriality)", &rep, 20);
}

#[test]
fn criterion_05_displacement_soundness() {
    // Cup products agree across 3 independent generic vectors; associative
    // and commutative on more than 50 random triples; the projective plane
    // ring has graded ranks 1,1,1 with H.H the point cocycle.
    let rep = run_suite("displacement", &ctx(2)).unwrap();
    let triples = rep
        .cases
        .iter()
        .filter(|c| c.name.contains("three displacements"))
        .count();
    assert!(triples >= 50, "only {triples} displacement triples");
    report_line("criterion 5 (fan displacement soundness)", &rep, 150);
}

#[test]
fn criterion_06_projection_formula() {
    // <pi^* c, a> = <c, pi_* a> exactly on at least 50 random instances.
    let rep = run_suite("projection-formula", &ctx(2)).unwrap();
    report_line("criterion 6 (projection formula)", &rep, 50);
}

#[test]
fn criterion_07_excision_exactness() {
    // Presentation-level exactness at every k for the three fixture pairs.
    let rep = run_suite("excision", &ctx(2)).unwrap();
    report_line("criterion 7 (excision exactness)", &rep, 9);
}

#[test]
fn criterion_08_duality_pairing_unimodular() {
    // The Kronecker pairing matrix between the weight basis and the orbit
    // class basis is unimodular at every level tested, and the pairing is
    // invariant under transport.
    let rep = run_suite("duality-pairing", &ctx(2)).unwrap();
    report_line("criterion 8 (duality pairing unimodular)", &rep, 18);
}

#[test]
fn criterion_09_mcmullen_degree_law() {
    // deg(D_P^2) = 2 area(P) for at least 10 lattice polygons, including
    // the unit simplex (1) and the unit square (2).
    let rep = run_suite("mcmullen", &ctx(2)).unwrap();
    let simplex = rep.cases.iter().find(|c| c.name == "unit simplex").unwrap();
    assert!(simplex.details.as_deref().unwrap_or("").contains("deg = 1"));
    let square = rep.cases.iter().find(|c| c.name == "unit square").unwrap();
    assert!(square.details.as_deref().unwrap_or("").contains("deg = 2"));
    report_line("criterion 9 (McMullen degree law)", &rep, 10);
}

#[test]
fn criterion_10_noncommuting_square() {
    // pi_*[P1] = 0 hence pi^! pi_* [P1] = 0, while the identity composite
    // keeps the class.
    let rep = run_suite("noncommuting-square", &ctx(2)).unwrap();
    report_line("criterion 10 (non-commuting square)", &rep, 4);
}

#[test]
fn criterion_11_normal_cone_fixture() {
    // Excess c1 degree equals the Gysin multiplicity (both 1).
    let rep = run_suite("normal-cone", &ctx(2)).unwrap();
    report_line("criterion 11 (normal cone fixture)", &rep, 3);
}

#[test]
fn criterion_12_determinism() {
    // `verify all --seed S` twice produces byte-identical reports. Checked
    // both in-process and through the binary.
    let rep = run_suite("determinism", &ctx(2)).unwrap();
    report_line("criterion 12 (determinism, in-process)", &rep, 1);

    let out = |n: u32| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_logchow"))
            .args(["verify", "all", "--seed", "5"])
            .output()
            .unwrap_or_else(|e| panic!("run {n}: {e}"));
        assert!(out.status.success(), "verify all failed: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = out(1);
    let second = out(2);
    let identical = first == second;
    println!(
        "criterion 12 (determinism, binary): {}",
        if identical { "PASS" } else { "FAIL" }
    );
    assert!(identical, "binary reports differ between runs");
    let parsed: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(parsed["passed"], serde_json::Value::Bool(true));
}
