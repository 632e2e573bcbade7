//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its case count, wall time, and budget. All equalities are exact
//! rational identities; there are no tolerances anywhere.

use std::time::{Duration, Instant};

use genkac_core::checks::{self, CheckOutcome};
use genkac_core::coeff;
use genkac_core::delta::Window;
use genkac_core::funm::Mono;
use genkac_core::vir;
use genkac_core::FunM;

const SEED: u64 = 20240817;

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    started: Instant,
    cases: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u32, name: &'static str, budget_secs: u64) -> Self {
        Criterion {
            number,
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, outcome: CheckOutcome) {
        self.cases += outcome.cases;
        for f in outcome.failures {
            self.failures.push(format!(
                "inputs: {} | expected: {} | got: {}",
                f.inputs, f.expected, f.got
            ));
        }
    }

    fn assert_that(&mut self, what: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "acceptance {:02} {}: {} ({} cases, {} failed, {:.2?} of {:.0?} budget)",
            self.number,
            self.name,
            status,
            self.cases,
            self.failures.len(),
            elapsed,
            self.budget,
        );
        for f in self.failures.iter().take(10) {
            println!("    {}", f);
        }
        assert!(
            self.failures.is_empty(),
            "criterion {} ({}) failed {} of {} cases",
            self.number,
            self.name,
            self.failures.len(),
            self.cases
        );
        assert!(
            elapsed < self.budget,
            "criterion {} ({}) overran its budget: {:.2?} >= {:.0?}",
            self.number,
            self.name,
            elapsed,
            self.budget
        );
    }
}

#[test]
fn criterion_01_sl3_operator_relations() {
    let mut c = Criterion::new(1, "sl3 operator relations", 10);
    c.absorb(checks::sl3_action_relations(SEED, 50));
    c.finish();
}

#[test]
fn criterion_02_verma_structure() {
    let mut c = Criterion::new(2, "Verma structure", 1);
    c.absorb(checks::verma_structure(SEED, 0));
    c.finish();
}

#[test]
fn criterion_03_trace_and_form() {
    let mut c = Criterion::new(3, "trace and form", 30);
    c.absorb(checks::trace_and_form(SEED, 200));
    c.finish();
}

#[test]
fn criterion_04_grading() {
    let mut c = Criterion::new(4, "grading operators", 10);
    c.absorb(checks::grading(SEED, 100));
    c.finish();
}

#[test]
fn criterion_05_gv_lie_axioms() {
    let mut c = Criterion::new(5, "loop algebra Lie axioms and cocycles", 60);
    c.absorb(checks::gv_jacobi(SEED, 300));
    c.absorb(checks::gv_cocycles(SEED.wrapping_add(1), 300));
    c.finish();
}

#[test]
fn criterion_06_cocycle_restriction() {
    let mut c = Criterion::new(6, "cocycle restriction to c-powers", 10);
    c.absorb(checks::cocycle_restriction(SEED, 0));
    c.finish();
}

#[test]
fn criterion_07_generalized_virasoro() {
    let mut c = Criterion::new(7, "generalized Virasoro", 60);
    c.absorb(checks::contact_jacobi(SEED, 300));
    c.absorb(checks::contact_field_identity(SEED.wrapping_add(1), 100));
    c.absorb(checks::vir_grading_operators(SEED, 0));
    c.finish();
}

#[test]
fn criterion_08_sl3_embedding() {
    let mut c = Criterion::new(8, "embedded sl3 of contact Hamiltonians", 5);
    match vir::sl3_embedding() {
        Ok(emb) => {
            c.cases += emb.structure.len();
            println!("    correspondence:");
            for (label, image) in &emb.correspondence {
                println!("      L_{:<3} -> {}", label, image);
            }
            c.assert_that("eight Hamiltonians", emb.hamiltonians.len() == 8);
            c.assert_that("eight images", emb.correspondence.len() == 8);
        }
        Err(e) => c.assert_that(&format!("embedding failed: {}", e), false),
    }
    c.finish();
}

#[test]
fn criterion_09_mode_field_consistency() {
    let mut c = Criterion::new(9, "mode/field consistency and semidirect action", 30);
    c.absorb(checks::vir_mode_field(SEED, 200));
    c.absorb(checks::vir_semidirect(SEED.wrapping_add(1), 200));
    c.finish();
}

#[test]
fn criterion_10_dual_basis_and_delta() {
    let mut c = Criterion::new(10, "dual basis and delta reproduction", 120);
    c.absorb(checks::dual_biorthogonality(&Window::new(
        3, 3, -5, 3, -5, 3,
    )));
    c.absorb(checks::delta_duals(SEED, 0));
    c.absorb(checks::delta_reproduce(SEED, 100));
    c.finish();
}

#[test]
fn criterion_11_sl2_baseline() {
    let mut c = Criterion::new(11, "classical sl2 baseline", 30);
    c.absorb(checks::sl2_delta(SEED, 300));
    c.absorb(checks::sl2_affine_jacobi(SEED.wrapping_add(1), 300));
    c.absorb(checks::conformal_axioms(SEED, 0));
    c.absorb(checks::sl2_witt(SEED, 0));
    c.finish();
}

#[test]
fn criterion_12_diagnostics() {
    let mut c = Criterion::new(12, "diagnostics (reported, never gated)", 30);

    let borcherds = checks::diag_borcherds_positivity();
    c.assert_that(
        "positivity sweep reports the -1 value at e1*(a)",
        borcherds
            .lines
            .iter()
            .any(|l| l.contains("e1*(a)") && l.contains("-1")),
    );

    let omega = checks::diag_omega_order();
    let expected_sq = FunM::term(Mono::new(1, 0, -1, 1), coeff::int(-1));
    c.assert_that(
        "omega report includes w0*^2(a) = -a c^-1 q",
        omega
            .lines
            .iter()
            .any(|l| l.contains(&format!("w0*^2(a) = {}", expected_sq))),
    );

    let f_report = checks::diag_f_expansion();
    c.assert_that(
        "F expansion reports the order-zero discrepancy",
        f_report
            .lines
            .iter()
            .any(|l| l.contains("z2^-1 qz^-1") && l.contains("z3^-1 qz^-1")),
    );

    // Deterministic output.
    let again = checks::diag_borcherds_positivity();
    c.assert_that(
        "borcherds sweep deterministic",
        borcherds.lines == again.lines,
    );
    let omega_again = checks::diag_omega_order();
    c.assert_that(
        "omega report deterministic",
        omega.lines == omega_again.lines,
    );
    let f_again = checks::diag_f_expansion();
    c.assert_that("F report deterministic", f_report.lines == f_again.lines);

    for line in borcherds.lines.iter().take(2) {
        println!("    {}", line);
    }
    for line in omega.lines.iter().take(2) {
        println!("    {}", line);
    }
    c.finish();
}
