//! The generalized Virasoro algebra on the function ring.
//!
//! The contact bracket `{f, g} = g d3(f) - f d3(g) + d1(f) d2(g) - d1(g) d2(f)`
//! (with the xi-derivations d1, d2, d3) makes the ring a Lie algebra; the
//! contact vector fields `X_f = -f d3 + d1(f) d2 - d2(f) d1` realize it as
//! operators, and the eight Hamiltonians `1, a, b, c, q, ac, -bq, cq` span an
//! embedded copy of sl3 with Cartan `{c, q}`. The mode machinery converts a
//! local field relation into the bracket it induces on indices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coeff::{self, Coeff};
use crate::diffop::{self, DiffOp1};
use crate::error::{Error, Result};
use crate::funm::{Axis, FunM, Mono};
use crate::gv::GvElem;
use crate::linalg::{solve, SolveOutcome};
use crate::sl3::{bracket_sl3, form_sl3, Sl3Elem, Sl3Tag};

/// A generalized-Virasoro element: the mode `L_f` indexed by its contact
/// Hamiltonian.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VirElem {
    pub hamiltonian: FunM,
}

impl VirElem {
    pub fn new(hamiltonian: FunM) -> Self {
        VirElem { hamiltonian }
    }

    pub fn add(&self, rhs: &VirElem) -> VirElem {
        VirElem::new(self.hamiltonian.add(&rhs.hamiltonian))
    }

    pub fn scale(&self, s: &Coeff) -> VirElem {
        VirElem::new(self.hamiltonian.scale(s))
    }

    pub fn bracket(&self, rhs: &VirElem) -> VirElem {
        VirElem::new(contact_bracket(&self.hamiltonian, &rhs.hamiltonian))
    }
}

impl fmt::Display for VirElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({})", self.hamiltonian)
    }
}

/// `d1(f) = d_a f`.
pub fn dd1(f: &FunM) -> FunM {
    f.partial(Axis::A)
}

/// `d2(f) = d_b f + a d_c f`.
pub fn dd2(f: &FunM) -> FunM {
    diffop::apply_d2(f)
}

/// `d3(f) = d_c f`.
pub fn dd3(f: &FunM) -> FunM {
    f.partial(Axis::C)
}

/// The contact bracket.
pub fn contact_bracket(f: &FunM, g: &FunM) -> FunM {
    g.mul(&dd3(f))
        .sub(&f.mul(&dd3(g)))
        .add(&dd1(f).mul(&dd2(g)))
        .sub(&dd1(g).mul(&dd2(f)))
}

/// The contact vector field `X_f` expressed in raw partials.
pub fn contact_field(f: &FunM) -> DiffOp1 {
    let d1f = dd1(f);
    let d2f = dd2(f);
    DiffOp1::new(
        d2f.neg(),
        d1f.clone(),
        f.neg().add(&FunM::var_a().mul(&d1f)),
        FunM::zero(),
    )
}

/// Semidirect action of the generalized Virasoro algebra on the loop
/// algebra: `L_f . (A (x) g) = A (x) X_f(g)`, central coordinates killed.
/// This is the mode form of the field-level action, whose order-3 delta term
/// exactly cancels the order-zero parts (see `semidirect_relation`).
pub fn vir_on_loop(f: &FunM, x: &GvElem) -> GvElem {
    let field = contact_field(f);
    let mut out = GvElem::zero();
    for (tag, g) in x.terms() {
        out.add_tensor(*tag, field.apply(g));
    }
    out
}

// ---------------------------------------------------------------------------
// Mode/field correspondence
// ---------------------------------------------------------------------------

/// One term of a local field relation: `scale * (d^coeff_word F)(w) *
/// d^delta_word delta(z - w)`, where `F` is the structure field named by
/// `label` and the words are ordered monomials `d1^k1 d2^k2 d3^k3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelTerm {
    pub label: String,
    pub scale: Coeff,
    pub coeff_word: [u32; 3],
    pub delta_word: [u32; 3],
}

/// A finite local relation `[F(z), G(w)] = sum of RelTerms`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldRelation {
    pub terms: Vec<RelTerm>,
}

/// Applies the ordered word `d1^k1 d2^k2 d3^k3` to a function (rightmost
/// derivation acts first).
pub fn apply_word(word: [u32; 3], f: &FunM) -> FunM {
    let mut out = f.clone();
    for _ in 0..word[2] {
        out = dd3(&out);
    }
    for _ in 0..word[1] {
        out = dd2(&out);
    }
    for _ in 0..word[0] {
        out = dd1(&out);
    }
    out
}

/// Applies the transposed word `d3^k3 d2^k2 d1^k1` (rightmost first).
fn apply_word_transposed(word: [u32; 3], f: &FunM) -> FunM {
    let mut out = f.clone();
    for _ in 0..word[0] {
        out = dd1(&out);
    }
    for _ in 0..word[1] {
        out = dd2(&out);
    }
    for _ in 0..word[2] {
        out = dd3(&out);
    }
    out
}

/// Pairs a relation against mode indices `f`, `g`: the mode bracket
/// `[F_f, G_g]` expressed as a map from structure-field label to the index it
/// carries. Uses the reproducing rule `Res_z f P^w delta = (P f)(w)` and the
/// module rule `(d_i a)_h = -a_(d_i h)` (transposed word, one sign per
/// derivative).
pub fn mode_bracket_from_relation(
    rel: &FieldRelation,
    f: &FunM,
    g: &FunM,
) -> BTreeMap<String, FunM> {
    let mut out: BTreeMap<String, FunM> = BTreeMap::new();
    for term in &rel.terms {
        let paired = apply_word(term.delta_word, f);
        let h = g.mul(&paired);
        let order: u32 = term.coeff_word.iter().sum();
        let mut value = apply_word_transposed(term.coeff_word, &h).scale(&term.scale);
        if order % 2 == 1 {
            value = value.neg();
        }
        let entry = out.entry(term.label.clone()).or_insert_with(FunM::zero);
        *entry = entry.add(&value);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The local relation of the generalized Virasoro field:
/// `[L(z), L(w)] = d3L delta - d2L d1 delta + d1L d2 delta + 3L d3 delta`.
pub fn vcr_relation() -> FieldRelation {
    FieldRelation {
        terms: vec![
            RelTerm {
                label: "L".into(),
                scale: coeff::int(1),
                coeff_word: [0, 0, 1],
                delta_word: [0, 0, 0],
            },
            RelTerm {
                label: "L".into(),
                scale: coeff::int(-1),
                coeff_word: [0, 1, 0],
                delta_word: [1, 0, 0],
            },
            RelTerm {
                label: "L".into(),
                scale: coeff::int(1),
                coeff_word: [1, 0, 0],
                delta_word: [0, 1, 0],
            },
            RelTerm {
                label: "L".into(),
                scale: coeff::int(3),
                coeff_word: [0, 0, 0],
                delta_word: [0, 0, 1],
            },
        ],
    }
}

/// The current-algebra analogue: a single zero-derivative term carrying the
/// product of the indices.
pub fn current_relation() -> FieldRelation {
    FieldRelation {
        terms: vec![RelTerm {
            label: "[g1,g2]".into(),
            scale: coeff::int(1),
            coeff_word: [0, 0, 0],
            delta_word: [0, 0, 0],
        }],
    }
}

/// The semidirect action relation
/// `[L(z), a(w)] = d3 a delta - d2 a d1 delta + d1 a d2 delta + 2 a d3 delta`;
/// its mode form reduces to `a_(X_f(g))`.
pub fn semidirect_relation() -> FieldRelation {
    FieldRelation {
        terms: vec![
            RelTerm {
                label: "a".into(),
                scale: coeff::int(1),
                coeff_word: [0, 0, 1],
                delta_word: [0, 0, 0],
            },
            RelTerm {
                label: "a".into(),
                scale: coeff::int(-1),
                coeff_word: [0, 1, 0],
                delta_word: [1, 0, 0],
            },
            RelTerm {
                label: "a".into(),
                scale: coeff::int(1),
                coeff_word: [1, 0, 0],
                delta_word: [0, 1, 0],
            },
            RelTerm {
                label: "a".into(),
                scale: coeff::int(2),
                coeff_word: [0, 0, 0],
                delta_word: [0, 0, 1],
            },
        ],
    }
}

// ---------------------------------------------------------------------------
// Embedded sl3
// ---------------------------------------------------------------------------

/// The embedded sl3 of contact Hamiltonians with its explicit isomorphism.
#[derive(Debug, Clone)]
pub struct Sl3Embedding {
    /// Labeled Hamiltonians: `1, a, b, c, q, ac, -bq, cq`.
    pub hamiltonians: Vec<(String, FunM)>,
    /// Ad-eigenvalues `({c, x}, {q, x})` of the six non-Cartan Hamiltonians.
    pub eigen_table: Vec<(String, Coeff, Coeff)>,
    /// The isomorphism onto sl3, one image per Hamiltonian.
    pub correspondence: Vec<(String, Sl3Elem)>,
    /// Structure constants: for each ordered pair, `{h_i, h_j}` decomposed
    /// over the Hamiltonian span.
    pub structure: Vec<((String, String), Vec<Coeff>)>,
}

/// The eight contact Hamiltonians.
pub fn embedding_hamiltonians() -> Vec<(String, FunM)> {
    let a = FunM::var_a();
    let b = FunM::var_b();
    let c = FunM::var_c();
    let q = FunM::var_q();
    vec![
        ("1".into(), FunM::one()),
        ("a".into(), a.clone()),
        ("b".into(), b.clone()),
        ("c".into(), c.clone()),
        ("q".into(), q.clone()),
        ("ac".into(), a.mul(&c)),
        ("-bq".into(), b.mul(&q).neg()),
        ("cq".into(), c.mul(&q)),
    ]
}

fn decompose_in_span(target: &FunM, span: &[(String, FunM)]) -> Result<Vec<Coeff>> {
    let mut monos: Vec<Mono> = Vec::new();
    for (_, f) in span {
        for (m, _) in f.terms() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    for (m, _) in target.terms() {
        if !monos.contains(m) {
            return Err(Error::ClosureFailure(format!(
                "bracket value {} leaves the Hamiltonian span",
                target
            )));
        }
    }
    monos.sort();
    let matrix: Vec<Vec<Coeff>> = monos
        .iter()
        .map(|m| span.iter().map(|(_, f)| f.coeff(m)).collect())
        .collect();
    let rhs: Vec<Coeff> = monos.iter().map(|m| target.coeff(m)).collect();
    match solve(&matrix, &rhs) {
        SolveOutcome::Unique(x) => Ok(x),
        _ => Err(Error::ClosureFailure(format!(
            "no unique decomposition of {} in the Hamiltonian span",
            target
        ))),
    }
}

fn cartan_from_eigenvalues(alpha1_val: &Coeff, alpha2_val: &Coeff) -> Sl3Elem {
    // alpha1(x h1 + y h2) = 2x - y, alpha2(x h1 + y h2) = -x + 2y.
    let matrix = vec![
        vec![coeff::int(2), coeff::int(-1)],
        vec![coeff::int(-1), coeff::int(2)],
    ];
    let sol = match solve(&matrix, &[alpha1_val.clone(), alpha2_val.clone()]) {
        SolveOutcome::Unique(x) => x,
        _ => unreachable!("Cartan matrix of sl3 is invertible"),
    };
    Sl3Elem::basis(Sl3Tag::H1)
        .scale(&sol[0])
        .add(&Sl3Elem::basis(Sl3Tag::H2).scale(&sol[1]))
}

/// Verifies that the eight Hamiltonians close under the contact bracket and
/// builds the explicit isomorphism onto sl3 by ad-eigenvalue matching on the
/// Cartan pair `{c, q}`.
pub fn sl3_embedding() -> Result<Sl3Embedding> {
    let hams = embedding_hamiltonians();
    let c_fun = hams[3].1.clone();
    let q_fun = hams[4].1.clone();

    // Closure: every pairwise bracket decomposes in the span.
    let mut structure = Vec::new();
    for (la, fa) in &hams {
        for (lb, fb) in &hams {
            let br = contact_bracket(fa, fb);
            let coords = decompose_in_span(&br, &hams)?;
            structure.push(((la.clone(), lb.clone()), coords));
        }
    }

    // Ad-eigenvalues of the non-Cartan Hamiltonians under {c, -} and {q, -}.
    let mut eigen_table = Vec::new();
    for (label, f) in &hams {
        if label == "c" || label == "q" {
            continue;
        }
        let ad_c = contact_bracket(&c_fun, f);
        let ad_q = contact_bracket(&q_fun, f);
        let eig = |v: &FunM| -> Result<Coeff> {
            if v.is_zero() {
                return Ok(Coeff::zero());
            }
            let (m0, c0) = f.terms().next().expect("nonzero Hamiltonian");
            let lambda = v.coeff(m0) / c0;
            if *v == f.scale(&lambda) {
                Ok(lambda)
            } else {
                Err(Error::ClosureFailure(format!(
                    "{} is not an ad-eigenvector of the Cartan pair",
                    label
                )))
            }
        };
        eigen_table.push((label.clone(), eig(&ad_c)?, eig(&ad_q)?));
    }

    // Match eigenpairs to the sl3 root pattern on fundamental-coweight axes.
    let find = |pair: (i64, i64)| -> Result<String> {
        eigen_table
            .iter()
            .find(|(_, ec, eq)| *ec == coeff::int(pair.0) && *eq == coeff::int(pair.1))
            .map(|(l, _, _)| l.clone())
            .ok_or_else(|| {
                Error::ClosureFailure(format!("no Hamiltonian with eigenpair {:?}", pair))
            })
    };
    let slot_a1 = find((1, 0))?; // simple root alpha1
    let slot_a2 = find((0, 1))?; // simple root alpha2
    let slot_a3 = find((1, 1))?; // highest root
    let slot_m1 = find((-1, 0))?;
    let slot_m2 = find((0, -1))?;
    let slot_m3 = find((-1, -1))?;

    let ham = |label: &str| -> FunM { hams.iter().find(|(l, _)| l == label).unwrap().1.clone() };
    let eig_of = |label: &str| -> (Coeff, Coeff) {
        let row = eigen_table.iter().find(|(l, _, _)| l == label).unwrap();
        (row.1.clone(), row.2.clone())
    };

    // Cartan images from the eigenvalues of the two simple-root slots.
    let (a1_c, a1_q) = eig_of(&slot_a1);
    let (a2_c, a2_q) = eig_of(&slot_a2);
    let h_c = cartan_from_eigenvalues(&a1_c, &a2_c);
    let h_q = cartan_from_eigenvalues(&a1_q, &a2_q);
    let psi_cartan = |f: &FunM| -> Result<Sl3Elem> {
        // f must be a combination of c and q.
        let span = [
            ("c".to_string(), c_fun.clone()),
            ("q".to_string(), q_fun.clone()),
        ];
        let coords = decompose_in_span(f, &span)?;
        Ok(h_c.scale(&coords[0]).add(&h_q.scale(&coords[1])))
    };

    // Simple-root vectors get scale one; everything else is derived from the
    // actual brackets.
    let e1 = Sl3Elem::basis(Sl3Tag::E1);
    let e2 = Sl3Elem::basis(Sl3Tag::E2);
    let f1 = Sl3Elem::basis(Sl3Tag::F1);
    let f2 = Sl3Elem::basis(Sl3Tag::F2);

    // psi(slot_a3): {slot_a1, slot_a2} = lambda * slot_a3.
    let br12 = contact_bracket(&ham(&slot_a1), &ham(&slot_a2));
    let lambda3 = proportionality(&br12, &ham(&slot_a3))?;
    let psi_a3 = bracket_sl3(&e1, &e2).scale(&lambda3.recip());

    // psi(slot_m1) = t1 f1 with [e1, t1 f1] = psi_cartan({slot_a1, slot_m1}).
    let t1 = {
        let w = contact_bracket(&ham(&slot_a1), &ham(&slot_m1));
        let target = psi_cartan(&w)?;
        let h1 = bracket_sl3(&e1, &f1);
        scalar_match(&target, &h1)?
    };
    let psi_m1 = f1.scale(&t1);
    let t2 = {
        let w = contact_bracket(&ham(&slot_a2), &ham(&slot_m2));
        let target = psi_cartan(&w)?;
        let h2 = bracket_sl3(&e2, &f2);
        scalar_match(&target, &h2)?
    };
    let psi_m2 = f2.scale(&t2);

    // psi(slot_m3): {slot_m1, slot_m2} = mu * slot_m3.
    let brm = contact_bracket(&ham(&slot_m1), &ham(&slot_m2));
    let mu = proportionality(&brm, &ham(&slot_m3))?;
    let psi_m3 = bracket_sl3(&psi_m1, &psi_m2).scale(&mu.recip());

    let mut correspondence: Vec<(String, Sl3Elem)> = Vec::new();
    for (label, _) in &hams {
        let image = if *label == slot_a1 {
            e1.clone()
        } else if *label == slot_a2 {
            e2.clone()
        } else if *label == slot_a3 {
            psi_a3.clone()
        } else if *label == slot_m1 {
            psi_m1.clone()
        } else if *label == slot_m2 {
            psi_m2.clone()
        } else if *label == slot_m3 {
            psi_m3.clone()
        } else if label == "c" {
            h_c.clone()
        } else {
            h_q.clone()
        };
        correspondence.push((label.clone(), image));
    }

    // Full verification: psi({x, y}) = [psi(x), psi(y)] for all ordered pairs.
    let image = |label: &str| -> Sl3Elem {
        correspondence
            .iter()
            .find(|(l, _)| l == label)
            .unwrap()
            .1
            .clone()
    };
    for ((la, lb), coords) in &structure {
        let mut lhs = Sl3Elem::zero();
        for (idx, (label, _)) in hams.iter().enumerate() {
            if !coords[idx].is_zero() {
                lhs = lhs.add(&image(label).scale(&coords[idx]));
            }
        }
        let rhs = bracket_sl3(&image(la), &image(lb));
        if lhs != rhs {
            return Err(Error::ClosureFailure(format!(
                "structure constants disagree at ({{{}, {}}}): {} vs {}",
                la, lb, lhs, rhs
            )));
        }
    }

    Ok(Sl3Embedding {
        hamiltonians: hams,
        eigen_table,
        correspondence,
        structure,
    })
}

fn proportionality(value: &FunM, reference: &FunM) -> Result<Coeff> {
    let (m0, c0) = reference
        .terms()
        .next()
        .ok_or_else(|| Error::ClosureFailure("zero reference Hamiltonian".into()))?;
    let lambda = value.coeff(m0) / c0;
    if lambda.is_zero() || *value != reference.scale(&lambda) {
        return Err(Error::ClosureFailure(format!(
            "{} is not a nonzero multiple of {}",
            value, reference
        )));
    }
    Ok(lambda)
}

fn scalar_match(target: &Sl3Elem, reference: &Sl3Elem) -> Result<Coeff> {
    let idx = reference
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::ClosureFailure("zero reference element".into()))?;
    let t = &target.coords()[idx] / &reference.coords()[idx];
    if *target != reference.scale(&t) {
        return Err(Error::ClosureFailure(format!(
            "{} is not a multiple of {}",
            target, reference
        )));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Conformal product table
// ---------------------------------------------------------------------------

/// One slot of the rank-one conformal product table: the dual-basis label,
/// the sl3 elements realizing it, and the product value as
/// `value_scale * (value_word applied to L)`.
#[derive(Debug, Clone)]
pub struct ProductEntry {
    pub label: String,
    pub chain_word: [u32; 3],
    pub dual_elem: Sl3Elem,
    pub bracket_elem: Sl3Elem,
    pub value_scale: Coeff,
    pub value_word: [u32; 3],
}

fn word_label(word: [u32; 3]) -> String {
    if word == [0, 0, 0] {
        return "f3*".into();
    }
    let mut parts = Vec::new();
    for (i, &k) in word.iter().enumerate() {
        if k == 1 {
            parts.push(format!("d{}", i + 1));
        } else if k > 1 {
            parts.push(format!("d{}^{}", i + 1, k));
        }
    }
    format!("({} f3)*", parts.join(" "))
}

/// Applies the ad-word `ad(e1)^k1 ad(e2)^k2 ad(e3)^k3` to an sl3 element
/// (rightmost first); this realizes the derivations on the rank-one module
/// generated by the lowest vector `f3`.
pub fn apply_ad_word(word: [u32; 3], x: &Sl3Elem) -> Sl3Elem {
    let mut out = x.clone();
    for _ in 0..word[2] {
        out = bracket_sl3(&Sl3Elem::basis(Sl3Tag::E3), &out);
    }
    for _ in 0..word[1] {
        out = bracket_sl3(&Sl3Elem::basis(Sl3Tag::E2), &out);
    }
    for _ in 0..word[0] {
        out = bracket_sl3(&Sl3Elem::basis(Sl3Tag::E1), &out);
    }
    out
}

/// The eight chain words in display order.
pub const CHAIN_WORDS: [[u32; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [1, 1, 0],
    [0, 0, 1],
    [2, 1, 0],
    [0, 1, 1],
    [1, 1, 1],
];

/// The conformal product table of the generalized Virasoro algebra: exactly
/// four nonzero products (`d3 L`, `-d2 L`, `d1 L`, `3 L`), everything else
/// zero since the lowering operators commute with the lowest vector.
pub fn product_table() -> Vec<ProductEntry> {
    let h1 = Sl3Elem::basis(Sl3Tag::H1);
    let h2 = Sl3Elem::basis(Sl3Tag::H2);
    let third = coeff::rat(1, 3);
    let duals: [Sl3Elem; 8] = [
        Sl3Elem::basis(Sl3Tag::E3),
        Sl3Elem::basis(Sl3Tag::E2).neg(),
        Sl3Elem::basis(Sl3Tag::E1),
        h1.sub(&h2).scale(&third),
        h1.add(&h2.scale(&coeff::int(2))).scale(&third),
        Sl3Elem::basis(Sl3Tag::F1).scale(&coeff::rat(-1, 2)),
        Sl3Elem::basis(Sl3Tag::F2).neg(),
        Sl3Elem::basis(Sl3Tag::F3).neg(),
    ];
    let mut entries = Vec::new();
    for (slot, word) in CHAIN_WORDS.iter().enumerate() {
        let dual_elem = duals[slot].clone();
        let (bracket_elem, value_scale, value_word): (Sl3Elem, Coeff, [u32; 3]) = match slot {
            0 => (Sl3Elem::basis(Sl3Tag::E3), coeff::int(1), [0, 0, 1]),
            1 => (Sl3Elem::basis(Sl3Tag::E2).neg(), coeff::int(-1), [0, 1, 0]),
            2 => (Sl3Elem::basis(Sl3Tag::E1), coeff::int(1), [1, 0, 0]),
            4 => (h1.scale(&coeff::int(-2)).sub(&h2), coeff::int(3), [0, 0, 0]),
            _ => (dual_elem.clone(), Coeff::zero(), [0, 0, 0]),
        };
        entries.push(ProductEntry {
            label: word_label(*word),
            chain_word: *word,
            dual_elem,
            bracket_elem,
            value_scale,
            value_word,
        });
    }
    entries
}

/// Verifies the product table against the sl3 oracle and the field relation:
/// the chain/dual bases are trace-dual, every product equals the bracket of
/// its element with the lowest vector, and the nonzero slots are exactly the
/// terms of the local relation.
pub fn verify_product_table() -> Result<()> {
    let table = product_table();
    let l = Sl3Elem::basis(Sl3Tag::F3);
    let chain: Vec<Sl3Elem> = CHAIN_WORDS.iter().map(|w| apply_ad_word(*w, &l)).collect();

    for (i, ci) in chain.iter().enumerate() {
        for (j, entry) in table.iter().enumerate() {
            let expected = if i == j { coeff::int(1) } else { Coeff::zero() };
            if form_sl3(ci, &entry.dual_elem) != expected {
                return Err(Error::ClosureFailure(format!(
                    "chain/dual pairing fails at ({}, {})",
                    i, j
                )));
            }
        }
    }

    for entry in &table {
        let via_bracket = bracket_sl3(&entry.bracket_elem, &l);
        let via_value = apply_ad_word(entry.value_word, &l).scale(&entry.value_scale);
        if entry.value_scale.is_zero() {
            if !via_bracket.is_zero() {
                return Err(Error::ClosureFailure(format!(
                    "slot {} should be a zero product",
                    entry.label
                )));
            }
        } else if via_bracket != via_value {
            return Err(Error::ClosureFailure(format!(
                "product value mismatch at {}",
                entry.label
            )));
        }
    }

    // Nonzero slots are exactly the relation terms, matched by delta word.
    let rel = vcr_relation();
    for entry in &table {
        let found = rel.terms.iter().find(|t| t.delta_word == entry.chain_word);
        match (found, entry.value_scale.is_zero()) {
            (Some(t), false) => {
                if t.scale != entry.value_scale || t.coeff_word != entry.value_word {
                    return Err(Error::ClosureFailure(format!(
                        "relation term disagrees with product at {}",
                        entry.label
                    )));
                }
            }
            (None, true) => {}
            _ => {
                return Err(Error::ClosureFailure(format!(
                    "relation/product slot mismatch at {}",
                    entry.label
                )))
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    #[test]
    fn basic_brackets() {
        let a = FunM::var_a();
        let b = FunM::var_b();
        let c = FunM::var_c();
        let q = FunM::var_q();
        assert_eq!(contact_bracket(&a, &b), FunM::one());
        assert!(contact_bracket(&c, &q).is_zero());
        let f = a.mul(&c).add(&q.scale(&int(3)));
        assert!(contact_bracket(&f, &f).is_zero());
        // {c, a} = 0: a sits at the alpha2 slot, invisible to ad(c).
        assert!(contact_bracket(&c, &a).is_zero());
        assert_eq!(contact_bracket(&c, &FunM::one()), FunM::one());
        assert_eq!(contact_bracket(&c, &b), b);
        assert_eq!(contact_bracket(&q, &a), a);
    }

    #[test]
    fn contact_fields_match_displayed_operators() {
        let expect_one = DiffOp1::new(FunM::zero(), FunM::zero(), FunM::one().neg(), FunM::zero());
        assert_eq!(contact_field(&FunM::one()), expect_one);
        assert_eq!(contact_field(&FunM::var_c()), diffop::l_c());
        assert_eq!(contact_field(&FunM::var_q()), diffop::l_q());
    }

    #[test]
    fn field_commutator_realizes_bracket() {
        let f = FunM::var_a().mul(&FunM::var_c());
        let g = FunM::var_b().add(&FunM::phi());
        let probe = FunM::from_terms([
            (Mono::new(0, 1, -1, 1), int(2)),
            (Mono::new(1, 0, 0, -1), int(-3)),
        ]);
        let xf = contact_field(&f);
        let xg = contact_field(&g);
        let lhs = xf
            .apply(&xg.apply(&probe))
            .sub(&xg.apply(&xf.apply(&probe)));
        let rhs = contact_field(&contact_bracket(&f, &g)).apply(&probe);
        assert_eq!(lhs, rhs);
        // The identity also holds symbolically as first-order operators, not
        // just on probes.
        assert_eq!(xf.commutator(&xg), contact_field(&contact_bracket(&f, &g)));
    }

    #[test]
    fn embedding_closes_and_matches_sl3() {
        let emb = sl3_embedding().unwrap();
        assert_eq!(emb.hamiltonians.len(), 8);
        assert_eq!(emb.eigen_table.len(), 6);
        // The Cartan images are the fundamental coweights.
        let image = |label: &str| -> Sl3Elem {
            emb.correspondence
                .iter()
                .find(|(l, _)| l == label)
                .unwrap()
                .1
                .clone()
        };
        let h1 = Sl3Elem::basis(Sl3Tag::H1);
        let h2 = Sl3Elem::basis(Sl3Tag::H2);
        assert_eq!(
            image("c"),
            h1.scale(&coeff::rat(2, 3))
                .add(&h2.scale(&coeff::rat(1, 3)))
        );
        assert_eq!(
            image("q"),
            h1.scale(&coeff::rat(1, 3))
                .add(&h2.scale(&coeff::rat(2, 3)))
        );
        assert_eq!(image("b"), Sl3Elem::basis(Sl3Tag::E1));
        assert_eq!(image("a"), Sl3Elem::basis(Sl3Tag::E2));
        assert_eq!(image("1"), Sl3Elem::basis(Sl3Tag::E3).neg());
        assert_eq!(image("ac"), Sl3Elem::basis(Sl3Tag::F1).neg());
        assert_eq!(image("-bq"), Sl3Elem::basis(Sl3Tag::F2).neg());
        assert_eq!(image("cq"), Sl3Elem::basis(Sl3Tag::F3));
    }

    #[test]
    fn mode_bracket_reduces_to_contact_bracket() {
        let rel = vcr_relation();
        let f = FunM::var_c();
        let g = FunM::var_a();
        let out = mode_bracket_from_relation(&rel, &f, &g);
        // {c, a} = 0, so no surviving index.
        assert!(out.is_empty());
        let f2 = FunM::var_a().mul(&FunM::var_q());
        let g2 = FunM::var_b().mul(&FunM::var_c());
        let out2 = mode_bracket_from_relation(&rel, &f2, &g2);
        assert_eq!(out2.get("L"), Some(&contact_bracket(&f2, &g2)));
        let same = mode_bracket_from_relation(&rel, &f2, &f2);
        assert!(same.is_empty());
    }

    #[test]
    fn current_relation_carries_the_product() {
        let rel = current_relation();
        let f = FunM::var_a();
        let g = FunM::phi();
        let out = mode_bracket_from_relation(&rel, &f, &g);
        assert_eq!(out.get("[g1,g2]"), Some(&f.mul(&g)));
    }

    #[test]
    fn mode_words_respect_the_noncommutative_order() {
        // The derivations do not commute ([d1, d2] = d3), so the word
        // conventions matter. A delta word d1 d2 acts rightmost-first:
        // d2(c) = a, then d1(a) = 1.
        let delta_rel = FieldRelation {
            terms: vec![RelTerm {
                label: "X".into(),
                scale: coeff::int(1),
                coeff_word: [0, 0, 0],
                delta_word: [1, 1, 0],
            }],
        };
        let g = FunM::var_b();
        let out = mode_bracket_from_relation(&delta_rel, &FunM::var_c(), &g);
        assert_eq!(out.get("X"), Some(&g));

        // A coefficient word d1 d2 transposes to d2 d1 on the index (apply
        // d1 first): d1(c) = 0 kills it, where the untransposed order would
        // give d1(d2(c)) = 1.
        let coeff_rel = FieldRelation {
            terms: vec![RelTerm {
                label: "X".into(),
                scale: coeff::int(1),
                coeff_word: [1, 1, 0],
                delta_word: [0, 0, 0],
            }],
        };
        let out = mode_bracket_from_relation(&coeff_rel, &FunM::var_c(), &FunM::one());
        assert!(out.is_empty());
        // Same relation against an index where the transposed word survives:
        // h = a c gives d1(ac) = c, then d2(c) = a, with sign (+1)^2.
        let out = mode_bracket_from_relation(
            &coeff_rel,
            &FunM::var_a().mul(&FunM::var_c()),
            &FunM::one(),
        );
        assert_eq!(out.get("X"), Some(&FunM::var_a()));
    }

    #[test]
    fn semidirect_relation_reduces_to_contact_field() {
        let f = FunM::var_c().mul(&FunM::var_q());
        let g = FunM::from_terms([
            (Mono::new(2, 0, -1, 0), int(1)),
            (Mono::new(0, 0, 1, -1), int(4)),
        ]);
        let out = mode_bracket_from_relation(&semidirect_relation(), &f, &g);
        let expected = contact_field(&f).apply(&g);
        assert_eq!(out.get("a"), Some(&expected));
    }

    #[test]
    fn vir_on_loop_examples() {
        let x = GvElem::tensor(Sl3Tag::E1, FunM::var_c());
        let out = vir_on_loop(&FunM::var_c(), &x);
        assert_eq!(out, x.scale(&int(-1)));
        let y = GvElem::tensor(Sl3Tag::H2, FunM::var_q());
        let out2 = vir_on_loop(&FunM::one(), &y);
        assert_eq!(
            out2,
            GvElem::tensor(Sl3Tag::H2, FunM::one()).scale(&int(-1))
        );
    }

    #[test]
    fn semidirect_representation_property() {
        let f = FunM::var_a();
        let g = FunM::var_c().mul(&FunM::var_q());
        let x = GvElem::tensor(
            Sl3Tag::F2,
            FunM::from_terms([(Mono::new(0, 1, -1, 1), int(2))]),
        );
        let lhs = vir_on_loop(&f, &vir_on_loop(&g, &x)).sub(&vir_on_loop(&g, &vir_on_loop(&f, &x)));
        let rhs = vir_on_loop(&contact_bracket(&f, &g), &x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_table_is_consistent() {
        verify_product_table().unwrap();
        let table = product_table();
        let nonzero: Vec<&ProductEntry> =
            table.iter().filter(|e| !e.value_scale.is_zero()).collect();
        assert_eq!(nonzero.len(), 4);
        assert_eq!(nonzero[0].label, "f3*");
        assert_eq!(nonzero[0].value_word, [0, 0, 1]);
        let slot5 = table.iter().find(|e| e.label == "(d3 f3)*").unwrap();
        assert_eq!(slot5.value_scale, int(3));
        assert_eq!(slot5.value_word, [0, 0, 0]);
        let zero_slot = table.iter().find(|e| e.label == "(d1 d2 f3)*").unwrap();
        assert!(zero_slot.value_scale.is_zero());
    }
}
