//! Named verification suites: each id maps to one invariant block of the
//! engine, plus the diagnostic class that reports on the unresolved claims
//! without ever failing the run.

use std::time::Instant;

use genkac_core::checks::{self, CaseFailure, CheckOutcome, DiagnosticReport, Rng};
use genkac_core::delta::Window;
use genkac_core::gv::GvElem;
use genkac_core::sl3::TAGS;

use crate::parser::{parse, Value};

/// How the suite runs.
pub enum SuiteKind {
    /// A seeded pass/fail check with a default case count.
    Check(fn(u64, usize) -> CheckOutcome, usize),
    /// A deterministic report that never fails.
    Diagnostic(fn() -> DiagnosticReport),
}

pub struct Suite {
    pub id: &'static str,
    pub about: &'static str,
    pub kind: SuiteKind,
}

fn dual_biorthogonality(_seed: u64, _cases: usize) -> CheckOutcome {
    checks::dual_biorthogonality(&Window::new(3, 3, -5, 3, -5, 3))
}

/// `parse(print(v)) = v` on random canonical forms of every value family.
fn parser_round_trip(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = Rng::new(seed);
    let mut out = CheckOutcome::default();
    let mut check =
        |printed: String, reparsed: Result<Value, crate::parser::ParseError>, same: bool| {
            out.cases += 1;
            if !same {
                out.failures.push(CaseFailure {
                    inputs: printed,
                    expected: "identical value after reparse".into(),
                    got: format!("{:?}", reparsed.map(|v| format!("{}", v))),
                });
            }
        };
    for _ in 0..cases {
        // Constants print as bare rationals, which reparse as scalars; the
        // round trip is through the scalar coercion, which is lossless.
        let f = rng.funm(4, 3, -4, 4);
        let printed = format!("{}", f);
        let reparsed = parse(&printed);
        let same = matches!(reparsed.clone().and_then(Value::into_fun), Ok(g) if g == f);
        check(printed, reparsed, same);

        let mut g = GvElem::tensor(TAGS[rng.range(0, 7) as usize], rng.funm(2, 2, -3, 3));
        g.k1 = rng.coeff();
        let printed = format!("{}", g);
        let reparsed = parse(&printed);
        let same = matches!(&reparsed, Ok(Value::Gv(h)) if *h == g);
        check(printed, reparsed, same);

        let l = rng.laurent(3, -5, 5);
        let printed = format!("{}", l);
        let reparsed = parse(&printed);
        let same = matches!(reparsed.clone().and_then(Value::into_lau), Ok(m) if m == l);
        check(printed, reparsed, same);
    }
    out
}

/// The full registry; `verify --all` runs it in this order.
pub fn registry() -> Vec<Suite> {
    use SuiteKind::*;
    vec![
        Suite {
            id: "funm-ring-axioms",
            about: "commutative ring axioms of the function space",
            kind: Check(checks::funm_ring_axioms, 50),
        },
        Suite {
            id: "sl3-action-relations",
            about: "[xi_x, xi_y] = xi_[x,y] on random functions",
            kind: Check(checks::sl3_action_relations, 50),
        },
        Suite {
            id: "funm-verma-structure",
            about: "highest/lowest weight data of 1, cq and phi",
            kind: Check(checks::verma_structure, 1),
        },
        Suite {
            id: "funm-trace-invariance",
            about: "residue and form invariance, plus-space isotropy",
            kind: Check(checks::trace_and_form, 200),
        },
        Suite {
            id: "funm-grading",
            about: "grading fields diagonal with bidegree eigenvalues",
            kind: Check(checks::grading, 100),
        },
        Suite {
            id: "funm-isotropy",
            about: "plus-space isotropy and weak maximality",
            kind: Check(checks::isotropy, 200),
        },
        Suite {
            id: "funm-bidegree-selection",
            about: "pairing selects complementary bidegrees",
            kind: Check(checks::bidegree_selection, 200),
        },
        Suite {
            id: "funm-numeric-oracle",
            about: "symbolic identities replayed under exact evaluation",
            kind: Check(checks::numeric_oracle, 20),
        },
        Suite {
            id: "sl3fd-jacobi",
            about: "Jacobi on all sl3 basis triples",
            kind: Check(checks::sl3fd_jacobi, 1),
        },
        Suite {
            id: "sl3fd-form-invariance",
            about: "trace form invariance and normalization",
            kind: Check(checks::sl3fd_form, 1),
        },
        Suite {
            id: "sl3fd-cartan-involution",
            about: "involutive automorphism with compact sign",
            kind: Check(checks::sl3fd_involution, 100),
        },
        Suite {
            id: "gv-jacobi",
            about: "loop-algebra antisymmetry and Jacobi with central terms",
            kind: Check(checks::gv_jacobi, 300),
        },
        Suite {
            id: "gv-cocycle-identities",
            about: "cocycle antisymmetry and the 2-cocycle identity",
            kind: Check(checks::gv_cocycles, 300),
        },
        Suite {
            id: "cocycle-restriction",
            about: "restriction to c-powers gives the affine cocycle",
            kind: Check(checks::cocycle_restriction, 1),
        },
        Suite {
            id: "gv-conformal-dimension",
            about: "mode-level grading action on loop elements",
            kind: Check(checks::gv_conformal_dimension, 100),
        },
        Suite {
            id: "gv-involution-grading",
            about: "the involution negates the grading",
            kind: Check(checks::gv_involution_grading, 100),
        },
        Suite {
            id: "gv-borcherds",
            about: "Borcherds conditions 1-3*: form, involution, grading",
            kind: Check(checks::gv_borcherds, 100),
        },
        Suite {
            id: "contact-jacobi",
            about: "contact bracket antisymmetry and Jacobi",
            kind: Check(checks::contact_jacobi, 300),
        },
        Suite {
            id: "contact-field-identity",
            about: "[X_f, X_g] = X_{f,g} on probe functions",
            kind: Check(checks::contact_field_identity, 100),
        },
        Suite {
            id: "vir-grading-operators",
            about: "X_c and X_q equal the displayed grading fields",
            kind: Check(checks::vir_grading_operators, 1),
        },
        Suite {
            id: "vir-confn-products",
            about: "the four nonzero conformal products against sl3",
            kind: Check(checks::vir_products, 1),
        },
        Suite {
            id: "vir-mode-field",
            about: "mode bracket of the field relation equals the contact bracket",
            kind: Check(checks::vir_mode_field, 200),
        },
        Suite {
            id: "vir-semidirect",
            about: "semidirect action representation property",
            kind: Check(checks::vir_semidirect, 200),
        },
        Suite {
            id: "vir-sl3-embedding",
            about: "the eight Hamiltonians close and match sl3",
            kind: Check(checks::vir_embedding, 1),
        },
        Suite {
            id: "dual-biorthogonality",
            about: "exact dual basis over the standard window",
            kind: Check(dual_biorthogonality, 1),
        },
        Suite {
            id: "delta-duals",
            about: "hand-computed duals and the bidegree rule",
            kind: Check(checks::delta_duals, 1),
        },
        Suite {
            id: "delta-reproduce",
            about: "reproduction of random polynomials",
            kind: Check(checks::delta_reproduce, 100),
        },
        Suite {
            id: "delta-split",
            about: "quadrant split is a disjoint projection quadruple",
            kind: Check(checks::delta_split, 200),
        },
        Suite {
            id: "sl2-delta-reproduce",
            about: "one-variable delta reproduction",
            kind: Check(checks::sl2_delta, 300),
        },
        Suite {
            id: "sl2-affine-jacobi",
            about: "affine sl2 Jacobi with central term",
            kind: Check(checks::sl2_affine_jacobi, 300),
        },
        Suite {
            id: "conformal-axioms-sl2",
            about: "(C1)-(C4) for Cur sl2, Vir, semidirect; corruption caught",
            kind: Check(checks::conformal_axioms, 1),
        },
        Suite {
            id: "sl2-witt-modes",
            about: "Witt mode bracket (m - n) L_{m+n}",
            kind: Check(checks::sl2_witt, 1),
        },
        Suite {
            id: "sl2-action-form",
            about: "modified sl2 action relations and form invariance",
            kind: Check(checks::sl2_action_form, 100),
        },
        Suite {
            id: "sl2-restriction",
            about: "3d cocycles restrict to the 1d affine cocycle",
            kind: Check(checks::sl2_restriction, 1),
        },
        Suite {
            id: "parser-round-trip",
            about: "parse of the canonical print form is the identity",
            kind: Check(parser_round_trip, 200),
        },
        Suite {
            id: "borcherds-positivity-diagnostic",
            about: "sign sweep of (g, omega(g)); reports only",
            kind: Diagnostic(checks::diag_borcherds_positivity),
        },
        Suite {
            id: "omega-order-diagnostic",
            about: "order behavior of the Cartan involution; reports only",
            kind: Diagnostic(checks::diag_omega_order),
        },
        Suite {
            id: "f-expansion-diagnostic",
            about: "F(z,w) expansion vs the truncated delta; reports only",
            kind: Diagnostic(checks::diag_f_expansion),
        },
    ]
}

pub fn find(id: &str) -> Option<Suite> {
    registry().into_iter().find(|s| s.id == id)
}

/// One finished suite run with its report payload.
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<(String, String, String)>,
    pub millis: u128,
    pub diagnostic: bool,
    pub lines: Vec<String>,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.diagnostic || self.failed == 0 {
            0
        } else {
            1
        }
    }
}


/// Runs a suite; `cases` of zero means the suite default.
pub fn run_suite(suite: &Suite, seed: u64, cases: usize) -> SuiteReport {
    let start = Instant::now();
    match &suite.kind {
        SuiteKind::Check(f, default_cases) => {
            let n = if cases == 0 { *default_cases } else { cases };
            let outcome = f(seed, n);
            let failed = outcome.failures.len();
            SuiteReport {
                suite: suite.id.to_string(),
                seed,
                cases: outcome.cases,
                passed: outcome.cases - failed,
                failed,
                failures: outcome
                    .failures
                    .into_iter()
                    .map(|f| (f.inputs, f.expected, f.got))
                    .collect(),
                millis: start.elapsed().as_millis(),
                diagnostic: false,
                lines: Vec::new(),
            }
        }
        SuiteKind::Diagnostic(f) => {
            let report = f();
            SuiteReport {
                suite: suite.id.to_string(),
                seed,
                cases: report.lines.len(),
                passed: report.lines.len(),
                failed: 0,
                failures: Vec::new(),
                millis: start.elapsed().as_millis(),
                diagnostic: true,
                lines: report.lines,
            }
        }
    }
}
