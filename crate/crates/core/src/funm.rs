//! Exact arithmetic on the function ring of the big-cell intersection.
//!
//! The ring is the space of regular functions on C^3 in coordinates (a, b, c)
//! minus the divisors c = 0 and c = ab. Its monomial basis is
//! `a^n b^m c^k q^l` with `q := c - ab` kept as an atomic generator, subject
//! to the normal form `min(n, m) = 0`: a product that creates mixed `ab`
//! powers is rewritten with `(ab)^j = sum_i C(j,i) (-1)^i c^(j-i) q^i`.
//! Negative powers are allowed on `c` and `q` only.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};

/// Basis monomial `a^n b^m c^k q^l` in normal form.
///
/// Invariants: `n, m >= 0`, `min(n, m) = 0`; `k` and `l` are arbitrary
/// integers. The derived ordering is lexicographic on `(n, m, k, l)`, which is
/// the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub l: i64,
}

impl Mono {
    pub fn new(n: i64, m: i64, k: i64, l: i64) -> Self {
        assert!(n >= 0 && m >= 0, "a- and b-exponents must be nonnegative");
        assert!(n.min(m) == 0, "normal form carries at most one of a, b");
        Mono { n, m, k, l }
    }

    pub const ONE: Mono = Mono {
        n: 0,
        m: 0,
        k: 0,
        l: 0,
    };

    /// The residue monomial `phi = c^-1 q^-1`.
    pub const PHI: Mono = Mono {
        n: 0,
        m: 0,
        k: -1,
        l: -1,
    };

    /// Bidegree `(n+k+l, m+k+l)`: the eigenvalue pair of the grading
    /// operators `(-L_c, -L_q)`.
    pub fn bidegree(&self) -> BiDegree {
        BiDegree {
            d1: self.n + self.k + self.l,
            d2: self.m + self.k + self.l,
        }
    }
}

/// A `Z x Z` bidegree; additive under multiplication of homogeneous elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiDegree {
    pub d1: i64,
    pub d2: i64,
}

impl BiDegree {
    pub fn new(d1: i64, d2: i64) -> Self {
        BiDegree { d1, d2 }
    }
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl std::ops::Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.d1, -self.d2)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// Axis selector for the raw partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
    C,
}

/// Finite linear combination of normal-form monomials with rational
/// coefficients; the canonical element of the function ring.
///
/// The map never stores zero coefficients and the zero element is the empty
/// map, so structural equality is exact ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FunM(BTreeMap<Mono, Coeff>);

impl FunM {
    pub fn zero() -> Self {
        FunM(BTreeMap::new())
    }

    pub fn one() -> Self {
        FunM::monomial(Mono::ONE)
    }

    pub fn monomial(mono: Mono) -> Self {
        FunM::term(mono, coeff::int(1))
    }

    pub fn term(mono: Mono, c: Coeff) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(mono, c);
        }
        FunM(map)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Coeff)>>(terms: I) -> Self {
        let mut f = FunM::zero();
        for (mono, c) in terms {
            f.add_term(mono, c);
        }
        f
    }

    /// Generator `a`.
    pub fn var_a() -> Self {
        FunM::monomial(Mono::new(1, 0, 0, 0))
    }

    /// Generator `b`.
    pub fn var_b() -> Self {
        FunM::monomial(Mono::new(0, 1, 0, 0))
    }

    /// Generator `c`.
    pub fn var_c() -> Self {
        FunM::monomial(Mono::new(0, 0, 1, 0))
    }

    /// Generator `q = c - ab`.
    pub fn var_q() -> Self {
        FunM::monomial(Mono::new(0, 0, 0, 1))
    }

    /// The residue kernel `phi = 1/(c q)`.
    pub fn phi() -> Self {
        FunM::monomial(Mono::PHI)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.0.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> Coeff {
        self.0.get(mono).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, mono: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(mono).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&mono);
        }
    }

    /// Adds `coeff * a^n b^m c^k q^l` where `n, m >= 0` but the pair may be
    /// mixed; mixed powers are rewritten into the normal form via
    /// `(ab)^j = sum_i C(j,i) (-1)^i c^(j-i) q^i`.
    pub fn add_raw_term(&mut self, n: i64, m: i64, k: i64, l: i64, c: Coeff) {
        debug_assert!(n >= 0 && m >= 0);
        if c.is_zero() {
            return;
        }
        let j = n.min(m);
        if j == 0 {
            self.add_term(Mono::new(n, m, k, l), c);
            return;
        }
        for i in 0..=j {
            let mut ci = coeff::binomial(j as u64, i as u64) * &c;
            if i % 2 == 1 {
                ci = -ci;
            }
            self.add_term(Mono::new(n - j, m - j, k + j - i, l + i), ci);
        }
    }

    pub fn neg(&self) -> FunM {
        FunM(self.0.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }

    pub fn add(&self, rhs: &FunM) -> FunM {
        let mut out = self.clone();
        for (mono, c) in rhs.terms() {
            out.add_term(*mono, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &FunM) -> FunM {
        let mut out = self.clone();
        for (mono, c) in rhs.terms() {
            out.add_term(*mono, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Coeff) -> FunM {
        if s.is_zero() {
            return FunM::zero();
        }
        FunM(self.0.iter().map(|(m, c)| (*m, c * s)).collect())
    }

    /// Exact product in normal form; commutative, associative, unit `1`.
    pub fn mul(&self, rhs: &FunM) -> FunM {
        let mut out = FunM::zero();
        for (x, cx) in self.terms() {
            for (y, cy) in rhs.terms() {
                out.add_raw_term(x.n + y.n, x.m + y.m, x.k + y.k, x.l + y.l, cx * cy);
            }
        }
        out
    }

    /// Integer power; negative exponents require an invertible element,
    /// i.e. a single monomial `r c^k q^l`.
    pub fn pow(&self, exp: i64) -> Result<FunM> {
        if exp >= 0 {
            let mut acc = FunM::one();
            for _ in 0..exp {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        if self.0.len() == 1 {
            let (mono, c) = self.0.iter().next().unwrap();
            if mono.n == 0 && mono.m == 0 {
                let inv_c = coeff::pow(c, exp)
                    .ok_or_else(|| Error::NegativeExponent("zero coefficient".into()))?;
                return Ok(FunM::term(
                    Mono::new(0, 0, mono.k * exp, mono.l * exp),
                    inv_c,
                ));
            }
        }
        Err(Error::NegativeExponent(format!("{}", self)))
    }

    /// Raw partial derivative along one coordinate; the power rule holds for
    /// negative exponents of `c` and `q`, and `q` itself differentiates as
    /// `d_a q = -b`, `d_b q = -a`, `d_c q = 1`.
    pub fn partial(&self, axis: Axis) -> FunM {
        let mut out = FunM::zero();
        for (x, c) in self.terms() {
            match axis {
                Axis::A => {
                    if x.n != 0 {
                        out.add_raw_term(x.n - 1, x.m, x.k, x.l, coeff::int(x.n) * c);
                    }
                    if x.l != 0 {
                        out.add_raw_term(x.n, x.m + 1, x.k, x.l - 1, coeff::int(-x.l) * c);
                    }
                }
                Axis::B => {
                    if x.m != 0 {
                        out.add_raw_term(x.n, x.m - 1, x.k, x.l, coeff::int(x.m) * c);
                    }
                    if x.l != 0 {
                        out.add_raw_term(x.n + 1, x.m, x.k, x.l - 1, coeff::int(-x.l) * c);
                    }
                }
                Axis::C => {
                    if x.k != 0 {
                        out.add_raw_term(x.n, x.m, x.k - 1, x.l, coeff::int(x.k) * c);
                    }
                    if x.l != 0 {
                        out.add_raw_term(x.n, x.m, x.k, x.l - 1, coeff::int(x.l) * c);
                    }
                }
            }
        }
        out
    }

    /// Coefficient of `phi = c^-1 q^-1`; the invariant trace.
    pub fn residue(&self) -> Coeff {
        self.coeff(&Mono::PHI)
    }

    /// The invariant bilinear form `<f, g> = Res(f g)`.
    pub fn pair(&self, rhs: &FunM) -> Coeff {
        // No need for the full product: only opposite-bidegree monomial pairs
        // can hit phi, but the plain product is cheap and obviously correct.
        self.mul(rhs).residue()
    }

    /// Single bidegree of a homogeneous element; zero input is (0,0).
    pub fn bidegree(&self) -> Result<BiDegree> {
        let mut it = self.0.keys();
        let first = match it.next() {
            None => return Ok(BiDegree::new(0, 0)),
            Some(m) => m.bidegree(),
        };
        for mono in it {
            if mono.bidegree() != first {
                return Err(Error::NonHomogeneous(format!("{}", self)));
            }
        }
        Ok(first)
    }

    /// Per-monomial bidegrees in canonical order.
    pub fn bidegrees(&self) -> Vec<(Mono, BiDegree)> {
        self.0.keys().map(|m| (*m, m.bidegree())).collect()
    }

    /// The coordinate change from the big cell to its Weyl-opposite cell:
    /// `a -> -b/q`, `b -> a/c`, `c -> 1/c` (hence `q -> 1/q`). An algebra
    /// homomorphism that negates bidegree and preserves the normal form.
    pub fn weyl_substitute(&self) -> FunM {
        let mut out = FunM::zero();
        for (x, c) in self.terms() {
            let mut ci = c.clone();
            if x.n % 2 != 0 {
                ci = -ci;
            }
            out.add_term(Mono::new(x.m, x.n, -x.m - x.k, -x.n - x.l), ci);
        }
        out
    }

    /// Exact value at a rational point off the divisors `c = 0`, `c = ab`.
    pub fn evaluate(&self, point: &(Coeff, Coeff, Coeff)) -> Result<Coeff> {
        let (a, b, c) = point;
        if c.is_zero() {
            return Err(Error::PoleAtPoint("c=0"));
        }
        let q = c - &(a * b);
        if q.is_zero() {
            return Err(Error::PoleAtPoint("c=ab"));
        }
        let mut acc = Coeff::zero();
        for (x, coef) in self.terms() {
            let va = coeff::pow(a, x.n).ok_or(Error::PoleAtPoint("c=0"))?;
            let vb = coeff::pow(b, x.m).ok_or(Error::PoleAtPoint("c=0"))?;
            let vc = coeff::pow(c, x.k).expect("c nonzero");
            let vq = coeff::pow(&q, x.l).expect("q nonzero");
            acc += coef * va * vb * vc * vq;
        }
        Ok(acc)
    }
}

fn write_mono(f: &mut fmt::Formatter<'_>, mono: &Mono) -> fmt::Result {
    let mut wrote = false;
    for (sym, e) in [("a", mono.n), ("b", mono.m), ("c", mono.k), ("q", mono.l)] {
        if e == 0 {
            continue;
        }
        if wrote {
            write!(f, " ")?;
        }
        if e == 1 {
            write!(f, "{}", sym)?;
        } else {
            write!(f, "{}^{}", sym, e)?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for FunM {
    /// Canonical text form: terms `<rat> a^n b^m c^k q^l` in lexicographic
    /// monomial order, unit exponents and unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (mono, c)) in self.0.iter().enumerate() {
            let neg = coeff::signum(c) < 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag == coeff::int(1);
            if !unit_coeff || *mono == Mono::ONE {
                write!(f, "{}", coeff::display(&mag))?;
                if *mono != Mono::ONE {
                    write!(f, " ")?;
                }
            }
            if *mono != Mono::ONE {
                write_mono(f, mono)?;
            }
        }
        Ok(())
    }
}

/// Canonical list form: sorted rows `[n, m, k, l, numerator, denominator]`.
pub fn to_list_form(f: &FunM) -> Vec<[String; 6]> {
    f.terms()
        .map(|(m, c)| {
            [
                m.n.to_string(),
                m.m.to_string(),
                m.k.to_string(),
                m.l.to_string(),
                c.numer().to_string(),
                c.denom().to_string(),
            ]
        })
        .collect()
}

/// Closed-form pairing of two normal-form monomials, used as an independent
/// oracle against `multiply + residue`: with `j = n1+n2`, the pair is
/// `(-1)^i C(j,i)` when `j = m1+m2`, `i = -1-(l1+l2)` lies in `[0, j]` and
/// `k1+k2+j-i = -1`, and zero otherwise.
pub fn pair_monos(x: &Mono, y: &Mono) -> Coeff {
    let j = x.n + y.n;
    if j != x.m + y.m {
        return Coeff::zero();
    }
    let i = -1 - (x.l + y.l);
    if i < 0 || i > j {
        return Coeff::zero();
    }
    if x.k + y.k + j - i != -1 {
        return Coeff::zero();
    }
    let mut v = coeff::binomial(j as u64, i as u64);
    if i % 2 == 1 {
        v = -v;
    }
    v
}

/// All normal-form monomials `x` with `l >= 0` pairing nontrivially against a
/// given `y` with `l <= -1`; finite by the closed form above.
pub fn plus_partners(y: &Mono) -> Vec<(Mono, Coeff)> {
    debug_assert!(y.l <= -1);
    // The a/b imbalance of the partner is forced.
    let delta = y.m - y.n;
    let (n, m) = if delta >= 0 { (delta, 0) } else { (0, -delta) };
    let j = n + y.n;
    let mut out = Vec::new();
    for i in 0..=j {
        let l = -1 - y.l - i;
        if l < 0 {
            continue;
        }
        let k = -1 - y.k - j + i;
        let x = Mono::new(n, m, k, l);
        let v = pair_monos(&x, y);
        debug_assert!(!v.is_zero());
        out.push((x, v));
    }
    out
}

/// All normal-form monomials `y` with `l <= -1` pairing nontrivially against
/// a given `x` with `l >= 0`.
pub fn minus_partners(x: &Mono) -> Vec<(Mono, Coeff)> {
    debug_assert!(x.l >= 0);
    let delta = x.m - x.n;
    let (n, m) = if delta >= 0 { (delta, 0) } else { (0, -delta) };
    let j = x.n + n;
    let mut out = Vec::new();
    for i in 0..=j {
        let l = -1 - x.l - i;
        let k = -1 - x.k - j + i;
        let y = Mono::new(n, m, k, l);
        let v = pair_monos(x, &y);
        debug_assert!(!v.is_zero());
        out.push((y, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn mono(n: i64, m: i64, k: i64, l: i64) -> Mono {
        Mono::new(n, m, k, l)
    }

    #[test]
    fn ab_reduces_to_c_minus_q() {
        let prod = FunM::var_a().mul(&FunM::var_b());
        let expected = FunM::var_c().sub(&FunM::var_q());
        assert_eq!(prod, expected);
    }

    #[test]
    fn unit_is_neutral() {
        let phi = FunM::phi();
        assert_eq!(FunM::one().mul(&phi), phi);
    }

    #[test]
    fn a_times_dual_of_a() {
        // a * (b c^-2 q^-1) = c^-1 q^-1 - c^-2
        let g = FunM::monomial(mono(0, 1, -2, -1));
        let prod = FunM::var_a().mul(&g);
        let expected = FunM::from_terms([(Mono::PHI, int(1)), (mono(0, 0, -2, 0), int(-1))]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn partial_a_of_phi() {
        // d_a(phi) = b c^-1 q^-2
        let d = FunM::phi().partial(Axis::A);
        assert_eq!(d, FunM::monomial(mono(0, 1, -1, -2)));
    }

    #[test]
    fn power_rule_on_c() {
        for k in [-3i64, -1, 0, 2, 5] {
            let f = FunM::monomial(Mono::new(0, 0, k, 0));
            let d = f.partial(Axis::C);
            let expected = if k == 0 {
                FunM::zero()
            } else {
                FunM::term(Mono::new(0, 0, k - 1, 0), int(k))
            };
            assert_eq!(d, expected);
        }
    }

    #[test]
    fn xi2_annihilates_q() {
        // (d_b + a d_c)(q) = -a + a = 0
        let q = FunM::var_q();
        let d = q
            .partial(Axis::B)
            .add(&FunM::var_a().mul(&q.partial(Axis::C)));
        assert!(d.is_zero());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(FunM::phi().residue(), int(1));
        assert_eq!(FunM::one().residue(), int(0));
        // a b c^-2 q^-1 reduces to c^-1 q^-1 - c^-2, residue 1.
        let f = FunM::var_a()
            .mul(&FunM::var_b())
            .mul(&FunM::monomial(mono(0, 0, -2, -1)));
        assert_eq!(f.residue(), int(1));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(FunM::one().pair(&FunM::phi()), int(1));
        let dual_a = FunM::monomial(mono(0, 1, -2, -1));
        assert_eq!(FunM::var_a().pair(&dual_a), int(1));
        // Both arguments with l >= 0 pair to zero.
        let f = FunM::var_a().mul(&FunM::var_q());
        let g = FunM::var_c().mul(&FunM::var_q());
        assert_eq!(f.pair(&g), int(0));
    }

    #[test]
    fn bidegree_examples() {
        let f = FunM::monomial(mono(1, 0, 2, -1));
        assert_eq!(f.bidegree().unwrap(), BiDegree::new(2, 1));
        assert_eq!(FunM::one().bidegree().unwrap(), BiDegree::new(0, 0));
        assert_eq!(FunM::phi().bidegree().unwrap(), BiDegree::new(-2, -2));
        let mixed = FunM::var_a().add(&FunM::var_c());
        assert!(matches!(mixed.bidegree(), Err(Error::NonHomogeneous(_))));
    }

    #[test]
    fn weyl_substitution_rules() {
        assert_eq!(
            FunM::var_c().weyl_substitute(),
            FunM::monomial(mono(0, 0, -1, 0))
        );
        assert_eq!(
            FunM::var_a().weyl_substitute(),
            FunM::term(mono(0, 1, 0, -1), int(-1))
        );
        // phi -> c q, the lowest vector of the opposite side.
        assert_eq!(
            FunM::phi().weyl_substitute(),
            FunM::monomial(mono(0, 0, 1, 1))
        );
    }

    #[test]
    fn weyl_is_homomorphism_and_negates_bidegree() {
        let f = FunM::from_terms([(mono(2, 0, -1, 1), rat(3, 2))]);
        let g = FunM::from_terms([(mono(0, 1, 0, -2), int(-5))]);
        assert_eq!(
            f.mul(&g).weyl_substitute(),
            f.weyl_substitute().mul(&g.weyl_substitute())
        );
        assert_eq!(
            f.bidegree().unwrap(),
            -f.weyl_substitute().bidegree().unwrap()
        );
    }

    #[test]
    fn evaluate_examples() {
        let p = (int(0), int(0), int(1));
        assert_eq!(FunM::phi().evaluate(&p).unwrap(), int(1));
        let f = FunM::var_c().sub(&FunM::var_q());
        let p2 = (int(2), int(3), int(1));
        assert_eq!(f.evaluate(&p2).unwrap(), int(6));
        let qinv = FunM::monomial(mono(0, 0, 0, -1));
        assert_eq!(
            qinv.evaluate(&(int(1), int(1), int(1))),
            Err(Error::PoleAtPoint("c=ab"))
        );
        assert_eq!(
            FunM::one().evaluate(&(int(1), int(1), int(0))),
            Err(Error::PoleAtPoint("c=0"))
        );
    }

    #[test]
    fn pow_rules() {
        let c = FunM::var_c();
        assert_eq!(c.pow(-2).unwrap(), FunM::monomial(mono(0, 0, -2, 0)));
        let half_q = FunM::term(mono(0, 0, 0, 1), int(2));
        assert_eq!(
            half_q.pow(-1).unwrap(),
            FunM::term(mono(0, 0, 0, -1), rat(1, 2))
        );
        assert!(FunM::var_a().pow(-1).is_err());
        assert!(FunM::var_a().add(&FunM::var_c()).pow(-1).is_err());
    }

    #[test]
    fn mono_pairing_closed_form_matches_product_route() {
        let monos = [
            mono(0, 0, 0, 0),
            mono(1, 0, -1, 2),
            mono(0, 2, 1, -3),
            mono(3, 0, -2, -1),
            mono(0, 1, -2, -1),
            mono(0, 0, -1, -1),
            mono(2, 0, 0, 1),
        ];
        for x in &monos {
            for y in &monos {
                let via_product = FunM::monomial(*x).pair(&FunM::monomial(*y));
                assert_eq!(pair_monos(x, y), via_product, "{:?} {:?}", x, y);
            }
        }
    }

    #[test]
    fn partner_enumeration_is_complete_for_small_box() {
        // Every box monomial pairing nonzero with y must appear among the
        // enumerated partners.
        let y = mono(0, 1, -1, -2);
        let partners = plus_partners(&y);
        for n in 0..=4i64 {
            for m in 0..=4 {
                if n.min(m) != 0 {
                    continue;
                }
                for k in -4..=4 {
                    for l in 0..=4 {
                        let x = mono(n, m, k, l);
                        let v = pair_monos(&x, &y);
                        let listed = partners.iter().any(|(p, _)| *p == x);
                        assert_eq!(!v.is_zero(), listed, "{:?}", x);
                    }
                }
            }
        }
    }

    #[test]
    fn display_round_shape() {
        let f = FunM::from_terms([
            (mono(0, 0, 0, 0), int(1)),
            (mono(1, 0, 2, 0), int(3)),
            (mono(0, 0, -1, -1), rat(-1, 2)),
        ]);
        assert_eq!(format!("{}", f), "-1/2 c^-1 q^-1 + 1 + 3 a c^2");
    }
}
