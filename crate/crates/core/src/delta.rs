//! Truncated dual bases and generalized delta functions.
//!
//! The plus space is spanned by normal-form monomials with `l >= 0`, the
//! minus space by those with `l <= -1`. Duals of plus monomials are computed
//! per bigraded block by an exact linear solve with the window as ansatz
//! support, then verified against every monomial that could pair with the
//! ansatz, inside the window or not: exactness is decided, never sampled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::funm::{pair_monos, plus_partners, BiDegree, FunM, Mono};
use crate::linalg::{solve, SolveOutcome};

/// Finite truncation box for the monomial exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub n_max: i64,
    pub m_max: i64,
    pub k_min: i64,
    pub k_max: i64,
    pub l_min: i64,
    pub l_max: i64,
}

impl Window {
    pub fn new(n_max: i64, m_max: i64, k_min: i64, k_max: i64, l_min: i64, l_max: i64) -> Self {
        assert!(n_max >= 0 && m_max >= 0 && k_min <= k_max && l_min <= l_max);
        Window {
            n_max,
            m_max,
            k_min,
            k_max,
            l_min,
            l_max,
        }
    }

    pub fn contains(&self, mono: &Mono) -> bool {
        mono.n <= self.n_max
            && mono.m <= self.m_max
            && (self.k_min..=self.k_max).contains(&mono.k)
            && (self.l_min..=self.l_max).contains(&mono.l)
    }

    fn patterns(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(0, 0)];
        for n in 1..=self.n_max {
            out.push((n, 0));
        }
        for m in 1..=self.m_max {
            out.push((0, m));
        }
        out
    }

    /// Window monomials of the plus space (`l >= 0`), canonical order.
    pub fn plus_monos(&self) -> Vec<Mono> {
        let mut out = Vec::new();
        for (n, m) in self.patterns() {
            for k in self.k_min..=self.k_max {
                for l in self.l_min.max(0)..=self.l_max {
                    out.push(Mono::new(n, m, k, l));
                }
            }
        }
        out.sort();
        out
    }

    /// Window monomials of the minus space (`l <= -1`), canonical order.
    pub fn minus_monos(&self) -> Vec<Mono> {
        let mut out = Vec::new();
        for (n, m) in self.patterns() {
            for k in self.k_min..=self.k_max {
                for l in self.l_min..=self.l_max.min(-1) {
                    out.push(Mono::new(n, m, k, l));
                }
            }
        }
        out.sort();
        out
    }
}

/// Which tensor order of the truncated delta this object represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `sum e_gamma^* (x) e_gamma`: dual functions on the first leg.
    Plus,
    /// `sum e_gamma (x) e_gamma^*`: basis monomials on the first leg.
    Minus,
}

/// Truncated generalized delta function: biorthogonal pairs of a plus-space
/// monomial and its dual in the minus space, exact within the window.
///
/// `uncovered` lists the window monomials whose true duals provably need
/// support outside the window; the truncation covers the closed subfamily.
#[derive(Debug, Clone)]
pub struct DeltaTrunc {
    pub pairs: Vec<(Mono, FunM)>,
    pub uncovered: Vec<Mono>,
    pub orientation: Orientation,
}

impl DeltaTrunc {
    pub fn dual_of(&self, mono: &Mono) -> Option<&FunM> {
        self.pairs.iter().find(|(m, _)| m == mono).map(|(_, d)| d)
    }
}

/// Splits by the quadrant of `(sign l, sign k)`: `(++, +-, -+, --)` with
/// `++ : l >= 0, k >= 0`, `+- : l >= 0, k < 0`, `-+ : l < 0, k >= 0`,
/// `-- : l < 0, k < 0`. The four parts sum to the input and the plus part
/// collects everything with `l >= 0`.
pub fn split(f: &FunM) -> [FunM; 4] {
    let mut out = [FunM::zero(), FunM::zero(), FunM::zero(), FunM::zero()];
    for (mono, c) in f.terms() {
        let idx = match (mono.l >= 0, mono.k >= 0) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        out[idx].add_term(*mono, c.clone());
    }
    out
}

/// Computes the dual basis of the window's plus monomials.
///
/// For each plus monomial the ansatz support is the window's minus monomials
/// of complementary bidegree; the defining equations run over every plus
/// monomial (inside the window or not) that pairs nontrivially with the
/// ansatz, so a unique solution is exact biorthogonality against the whole
/// plus space, not just the window. Monomials whose true dual provably needs
/// support outside the window are reported in `uncovered` rather than paired;
/// this is the documented closure check. An ambiguous solve is an error.
pub fn dual_basis(window: &Window, orientation: Orientation) -> Result<DeltaTrunc> {
    let plus = window.plus_monos();
    let minus = window.minus_monos();

    // Group the ansatz by bidegree once.
    let mut minus_by_degree: BTreeMap<BiDegree, Vec<Mono>> = BTreeMap::new();
    for y in &minus {
        minus_by_degree.entry(y.bidegree()).or_default().push(*y);
    }

    let mut pairs = Vec::with_capacity(plus.len());
    let mut uncovered = Vec::new();
    for x in &plus {
        let want = BiDegree::new(-2 - x.bidegree().d1, -2 - x.bidegree().d2);
        let ansatz = minus_by_degree.get(&want).cloned().unwrap_or_default();
        if ansatz.is_empty() {
            uncovered.push(*x);
            continue;
        }
        // Equation rows: x itself plus every plus-space partner of the ansatz.
        let mut rows: Vec<Mono> = vec![*x];
        for y in &ansatz {
            for (p, _) in plus_partners(y) {
                if !rows.contains(&p) {
                    rows.push(p);
                }
            }
        }
        rows.sort();
        let matrix: Vec<Vec<Coeff>> = rows
            .iter()
            .map(|r| ansatz.iter().map(|y| pair_monos(r, y)).collect())
            .collect();
        let rhs: Vec<Coeff> = rows
            .iter()
            .map(|r| if r == x { coeff::int(1) } else { Coeff::zero() })
            .collect();
        match solve(&matrix, &rhs) {
            SolveOutcome::Unique(coords) => {
                let dual = FunM::from_terms(ansatz.iter().zip(coords).map(|(y, c)| (*y, c)));
                pairs.push((*x, dual));
            }
            SolveOutcome::Inconsistent => {
                uncovered.push(*x);
            }
            SolveOutcome::Underdetermined => {
                return Err(Error::SingularBlock(format!(
                    "ambiguous dual for {} at bidegree {}",
                    FunM::monomial(*x),
                    want
                )));
            }
        }
    }
    Ok(DeltaTrunc {
        pairs,
        uncovered,
        orientation,
    })
}

/// Like [`dual_basis`] but demands full coverage: any window monomial whose
/// dual escapes the window is an error.
pub fn dual_basis_strict(window: &Window, orientation: Orientation) -> Result<DeltaTrunc> {
    let trunc = dual_basis(window, orientation)?;
    if let Some(x) = trunc.uncovered.first() {
        return Err(Error::ClosureViolation(format!(
            "the dual of {} needs support outside the window ({} uncovered in total)",
            FunM::monomial(*x),
            trunc.uncovered.len()
        )));
    }
    Ok(trunc)
}

/// Reproduces a function from the truncated delta: the plus part of the
/// input is recovered through `sum pair(f, e_gamma^*) e_gamma` and the minus
/// part through the mirrored half `sum pair(f, e_gamma) e_gamma^*`.
pub fn reproduce(f: &FunM, d: &DeltaTrunc) -> Result<FunM> {
    let parts = split(f);
    let f_plus = parts[0].add(&parts[1]);
    let f_minus = parts[2].add(&parts[3]);

    // Plus side: every monomial must be one of the covered e_gamma.
    for (mono, _) in f_plus.terms() {
        if d.dual_of(mono).is_none() {
            return Err(Error::SupportEscape(format!(
                "monomial {} is not covered by the truncation",
                FunM::monomial(*mono)
            )));
        }
    }
    let mut out = FunM::zero();
    for (mono, dual) in &d.pairs {
        let coeff = f_plus.pair(dual);
        if !coeff.is_zero() {
            out.add_term(*mono, coeff);
        }
    }

    // Minus side: the coordinates along the duals are read off against the
    // basis monomials; the reconstruction must be exact.
    if !f_minus.is_zero() {
        let mut rec = FunM::zero();
        for (mono, dual) in &d.pairs {
            let coeff = f_minus.pair(&FunM::monomial(*mono));
            if !coeff.is_zero() {
                rec = rec.add(&dual.scale(&coeff));
            }
        }
        if rec != f_minus {
            return Err(Error::SupportEscape(format!(
                "minus part {} is not in the span of the truncated duals",
                f_minus
            )));
        }
        out = out.add(&rec);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Two-variable expansion diagnostic
// ---------------------------------------------------------------------------

/// Raw two-variable expansion term `coeff * z1^e1 z2^e2 z3^e3 qz^eq (x)
/// w1^f1 w2^f2 w3^f3`. The z-side quadruple is not reduced to the normal
/// form: raw factor-wise expansions legitimately produce exponents a
/// normal-form monomial cannot carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZwTerm {
    pub coeff: Coeff,
    pub z: [i64; 4],
    pub w: [i64; 3],
}

/// Expansion region of the proposition: D1 has `|z3| > |w3|`, D2 the
/// opposite, with the remaining inequalities shared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    D1,
    D2,
}

/// Numerator split of `F`: the paper's displayed two-term split, or the
/// exact split `z1 z2 - w1 w2 = z2 (z1 - w1) + w1 (z2 - w2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitScheme {
    Paper,
    Exact,
}

/// One line of the comparison between the F expansion and the truncated
/// delta: all z-side terms attached to a fixed w-monomial on each side.
#[derive(Debug, Clone)]
pub struct DiffEntry {
    pub w: [i64; 3],
    pub lhs: Vec<(Coeff, [i64; 4])>,
    pub rhs: Vec<(Coeff, [i64; 4])>,
    pub equal: bool,
}

/// Diagnostic output of the F expansion. Reports, never asserts.
#[derive(Debug, Clone)]
pub struct ExpandReport {
    pub region: Region,
    pub scheme: SplitScheme,
    pub order: i64,
    /// Whether the chosen numerator split is an exact polynomial identity
    /// against `z1 z2 - w1 w2` over the common denominator.
    pub split_identity_holds: bool,
    pub terms: Vec<ZwTerm>,
    pub delta_terms: Vec<ZwTerm>,
    pub diffs: Vec<DiffEntry>,
}

// Sparse polynomial in the six variables (z1, z2, z3, w1, w2, w3), used only
// to check the numerator splits exactly.
type Poly6 = BTreeMap<[i64; 6], Coeff>;

fn p6_add_term(p: &mut Poly6, exps: [i64; 6], c: Coeff) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(exps).or_insert_with(Coeff::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&exps);
    }
}

fn p6_mul(a: &Poly6, b: &Poly6) -> Poly6 {
    let mut out = Poly6::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let exps = std::array::from_fn(|i| ea[i] + eb[i]);
            p6_add_term(&mut out, exps, ca * cb);
        }
    }
    out
}

fn p6_sub(a: &Poly6, b: &Poly6) -> Poly6 {
    let mut out = a.clone();
    for (e, c) in b {
        p6_add_term(&mut out, *e, -c.clone());
    }
    out
}

fn p6_var(i: usize) -> Poly6 {
    let mut e = [0i64; 6];
    e[i] = 1;
    BTreeMap::from([(e, coeff::int(1))])
}

fn p6_of(terms: &[(i64, [i64; 6])]) -> Poly6 {
    let mut out = Poly6::new();
    for (c, e) in terms {
        p6_add_term(&mut out, *e, coeff::int(*c));
    }
    out
}

// z1 z2 - w1 w2
fn numerator_f() -> Poly6 {
    p6_of(&[(1, [1, 1, 0, 0, 0, 0]), (-1, [0, 0, 0, 1, 1, 0])])
}

// The four denominator factors of F.
fn factor(i: usize) -> Poly6 {
    let (z, w) = (p6_var(i), p6_var(i + 3));
    p6_sub(&z, &w)
}

fn factor_q() -> Poly6 {
    // (z3 - z1 z2) - (w3 - w1 w2)
    let z = p6_sub(&p6_var(2), &p6_mul(&p6_var(0), &p6_var(1)));
    let w = p6_sub(&p6_var(5), &p6_mul(&p6_var(3), &p6_var(4)));
    p6_sub(&z, &w)
}

/// Each split piece: a numerator polynomial and the subset of the four
/// denominator factors it keeps (z1-w1, z2-w2, z3-w3, qz-qw).
struct Piece {
    numerator: Poly6,
    factors: [bool; 4],
}

fn pieces(scheme: SplitScheme) -> Vec<Piece> {
    match scheme {
        SplitScheme::Paper => vec![
            // z1 / ((z1-w1)(z2-w2)(qz-qw))
            Piece {
                numerator: p6_var(0),
                factors: [true, true, false, true],
            },
            // w2 / ((z2-w2)(z3-w3)(qz-qw))
            Piece {
                numerator: p6_var(4),
                factors: [false, true, true, true],
            },
        ],
        SplitScheme::Exact => vec![
            // z2 / ((z2-w2)(z3-w3)(qz-qw))
            Piece {
                numerator: p6_var(1),
                factors: [false, true, true, true],
            },
            // w1 / ((z1-w1)(z3-w3)(qz-qw))
            Piece {
                numerator: p6_var(3),
                factors: [true, false, true, true],
            },
        ],
    }
}

fn split_identity_holds(scheme: SplitScheme) -> bool {
    // Recombine the pieces over the full denominator and compare numerators.
    let mut total = Poly6::new();
    for piece in pieces(scheme) {
        let mut num = piece.numerator.clone();
        for (i, kept) in piece.factors.iter().enumerate() {
            if !kept {
                let f = if i == 3 { factor_q() } else { factor(i) };
                num = p6_mul(&num, &f);
            }
        }
        for (e, c) in num {
            p6_add_term(&mut total, e, c);
        }
    }
    total == numerator_f()
}

// Expansion of a w-side polynomial power (w3 - w1 w2)^r into w-monomials.
fn qw_power(r: i64) -> Vec<(Coeff, [i64; 3])> {
    let mut out = Vec::new();
    for i in 0..=r {
        let mut c = coeff::binomial(r as u64, i as u64);
        if i % 2 == 1 {
            c = -c;
        }
        out.push((c, [i, i, r - i]));
    }
    out
}

/// Expands F factor-wise in the given region and compares against the
/// matching quadrant of the truncated delta function, per w-monomial up to
/// total degree `order`.
///
/// In D1 the delta side (the ++ quadrant) is complete for every w-monomial
/// of total degree at most `order`. In D2 the +- quadrant is genuinely
/// partial at every finite order: arbitrarily deep `q` powers keep
/// contributing at low w-degree, so both sides are truncations and the diff
/// is a report on the truncations, nothing more.
pub fn expand_f(order: i64, region: Region, scheme: SplitScheme) -> Result<ExpandReport> {
    assert!(order >= 0);
    let mut terms: Vec<ZwTerm> = Vec::new();
    let mut lhs_map: BTreeMap<[i64; 3], BTreeMap<[i64; 4], Coeff>> = BTreeMap::new();

    let mut push = |coeff: Coeff, z: [i64; 4], w: [i64; 3]| {
        if coeff.is_zero() {
            return;
        }
        let entry = lhs_map
            .entry(w)
            .or_default()
            .entry(z)
            .or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            lhs_map.get_mut(&w).unwrap().remove(&z);
        }
    };

    for piece in pieces(scheme) {
        // Factor-wise series:
        //   1/(zi - wi)  ->  sum_p wi^p zi^(-p-1)               (|zi| > |wi|)
        //   1/(z3 - w3)  -> -sum_p z3^p w3^(-p-1)               (|z3| < |w3|)
        //   1/(qz - qw)  ->  sum_r qw^r qz^(-r-1)
        // Indices are enumerated up to `order`; every index contributes at
        // least its value to the w-degree, so the truncation is complete for
        // all w-monomials of total degree <= order in D1. In D2 the third
        // factor lowers the w-degree by p+1 and the same index bound is the
        // documented truncation rule.
        let index_bound = order;
        let ranges: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                if piece.factors[i] {
                    (0..=index_bound).collect()
                } else {
                    vec![-1]
                }
            })
            .collect();
        for &p1 in &ranges[0] {
            for &p2 in &ranges[1] {
                for &p3 in &ranges[2] {
                    for &r in &ranges[3] {
                        let mut z = [0i64; 4];
                        let mut w = [0i64; 3];
                        let mut sign = coeff::int(1);
                        if p1 >= 0 {
                            w[0] += p1;
                            z[0] += -p1 - 1;
                        }
                        if p2 >= 0 {
                            w[1] += p2;
                            z[1] += -p2 - 1;
                        }
                        if p3 >= 0 {
                            match region {
                                Region::D1 => {
                                    w[2] += p3;
                                    z[2] += -p3 - 1;
                                }
                                Region::D2 => {
                                    sign = -sign;
                                    z[2] += p3;
                                    w[2] += -p3 - 1;
                                }
                            }
                        }
                        let qr = if r >= 0 { r } else { 0 };
                        let q_terms = if r >= 0 {
                            qw_power(qr)
                        } else {
                            vec![(coeff::int(1), [0, 0, 0])]
                        };
                        let zq = if r >= 0 { -qr - 1 } else { 0 };
                        for (qc, qw) in q_terms {
                            // Multiply in the numerator monomial of the piece.
                            for (ne, nc) in &piece.numerator {
                                let zt = [z[0] + ne[0], z[1] + ne[1], z[2] + ne[2], zq];
                                let wt = [
                                    w[0] + qw[0] + ne[3],
                                    w[1] + qw[1] + ne[4],
                                    w[2] + qw[2] + ne[5],
                                ];
                                if wt[0] + wt[1] + wt[2] > order {
                                    continue;
                                }
                                push(&sign * &qc * nc, zt, wt);
                            }
                        }
                    }
                }
            }
        }
    }

    for (w, zmap) in &lhs_map {
        for (z, c) in zmap {
            terms.push(ZwTerm {
                coeff: c.clone(),
                z: *z,
                w: *w,
            });
        }
    }

    // Delta side: the matching quadrant of the truncated dual basis, with
    // the w-side monomials expanded into raw w-letters.
    let window = Window::new(
        order.max(1),
        order.max(1),
        -(2 * order + 2),
        order,
        -(2 * order + 2),
        order,
    );
    let trunc = dual_basis(&window, Orientation::Plus)?;
    let mut rhs_map: BTreeMap<[i64; 3], BTreeMap<[i64; 4], Coeff>> = BTreeMap::new();
    for (mono, dual) in &trunc.pairs {
        let quadrant_ok = match region {
            Region::D1 => mono.k >= 0, // ++ : regular on the affine cell
            Region::D2 => mono.k < 0,  // +- : poles on c = 0
        };
        if !quadrant_ok {
            continue;
        }
        // e_gamma(w) = w1^n w2^m w3^k qw^l with qw expanded. The ++ quadrant
        // is polynomial in w; the +- quadrant runs to negative w3 exponents,
        // truncated at the same depth as the F-side series, -(order + 1).
        for (qc, qw) in qw_power(mono.l) {
            let wt = [mono.n + qw[0], mono.m + qw[1], mono.k + qw[2]];
            if wt[0] + wt[1] + wt[2] > order || wt[2] < -(order + 1) {
                continue;
            }
            for (dm, dc) in dual.terms() {
                let zt = [dm.n, dm.m, dm.k, dm.l];
                let entry = rhs_map
                    .entry(wt)
                    .or_default()
                    .entry(zt)
                    .or_insert_with(Coeff::zero);
                *entry += &qc * dc;
                if entry.is_zero() {
                    rhs_map.get_mut(&wt).unwrap().remove(&zt);
                }
            }
        }
    }

    let mut delta_terms = Vec::new();
    for (w, zmap) in &rhs_map {
        for (z, c) in zmap {
            delta_terms.push(ZwTerm {
                coeff: c.clone(),
                z: *z,
                w: *w,
            });
        }
    }

    // Per-w-monomial diff.
    let mut keys: Vec<[i64; 3]> = lhs_map.keys().chain(rhs_map.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let mut diffs = Vec::new();
    for w in keys {
        let lhs: Vec<(Coeff, [i64; 4])> = lhs_map
            .get(&w)
            .map(|m| m.iter().map(|(z, c)| (c.clone(), *z)).collect())
            .unwrap_or_default();
        let rhs: Vec<(Coeff, [i64; 4])> = rhs_map
            .get(&w)
            .map(|m| m.iter().map(|(z, c)| (c.clone(), *z)).collect())
            .unwrap_or_default();
        let equal = lhs == rhs;
        diffs.push(DiffEntry { w, lhs, rhs, equal });
    }

    Ok(ExpandReport {
        region,
        scheme,
        order,
        split_identity_holds: split_identity_holds(scheme),
        terms,
        delta_terms,
        diffs,
    })
}

/// Renders a z-quadruple as text, e.g. `z2^-1 qz^-1`.
pub fn z_label(z: &[i64; 4]) -> String {
    let mut out = String::new();
    for (sym, e) in [("z1", z[0]), ("z2", z[1]), ("z3", z[2]), ("qz", z[3])] {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        if e == 1 {
            let _ = write!(out, "{}", sym);
        } else {
            let _ = write!(out, "{}^{}", sym, e);
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Renders a w-triple as text.
pub fn w_label(w: &[i64; 3]) -> String {
    let mut out = String::new();
    for (sym, e) in [("w1", w[0]), ("w2", w[1]), ("w3", w[2])] {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        if e == 1 {
            let _ = write!(out, "{}", sym);
        } else {
            let _ = write!(out, "{}^{}", sym, e);
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}
