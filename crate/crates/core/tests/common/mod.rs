//! Test-only oracle: an independent dense representation of ring elements as
//! honest rational functions `P(a, b, c) / (c^K (c - a b)^L)` with polynomial
//! arithmetic. It shares no code with the normal-form path it checks.

use std::collections::BTreeMap;

use genkac_core::coeff::Coeff;
use genkac_core::funm::FunM;
use num_traits::Zero;

/// Dense-sparse trivariate polynomial over (a, b, c).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3(pub BTreeMap<[i64; 3], Coeff>);

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = Poly3::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0i64; 3];
        e[i] = 1;
        let mut p = Poly3::zero();
        p.add_term(e, Coeff::from_integer(1.into()));
        p
    }

    pub fn add_term(&mut self, exps: [i64; 3], c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(exps).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&exps);
        }
    }

    pub fn add(&self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.0 {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: i64) -> Poly3 {
        let mut acc = Poly3::constant(Coeff::from_integer(1.into()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative along axis 0, 1, or 2.
    pub fn derive(&self, axis: usize) -> Poly3 {
        let mut out = Poly3::zero();
        for (e, c) in &self.0 {
            if e[axis] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[axis] -= 1;
            out.add_term(ne, Coeff::from_integer(e[axis].into()) * c);
        }
        out
    }
}

/// `q = c - a b` as a polynomial.
pub fn q_poly() -> Poly3 {
    let mut p = Poly3::var(2);
    p.add_term([1, 1, 0], Coeff::from_integer((-1).into()));
    p
}

/// A ring element as `numerator / (c^k_den (c - a b)^l_den)`.
#[derive(Debug, Clone)]
pub struct RatFun {
    pub numerator: Poly3,
    pub k_den: i64,
    pub l_den: i64,
}

impl RatFun {
    /// Cross-multiplied equality of two rational functions.
    pub fn equivalent(&self, rhs: &RatFun) -> bool {
        let c = Poly3::var(2);
        let q = q_poly();
        let lhs_cleared = self.numerator.mul(&c.pow(rhs.k_den)).mul(&q.pow(rhs.l_den));
        let rhs_cleared = rhs
            .numerator
            .mul(&c.pow(self.k_den))
            .mul(&q.pow(self.l_den));
        lhs_cleared == rhs_cleared
    }

    /// Quotient-rule partial derivative, denominators kept polynomial.
    pub fn derive(&self, axis: usize) -> RatFun {
        // d(P / (c^K q^L)) = (P' c q - P (K q c' + L c q')) / (c^(K+1) q^(L+1))
        let c = Poly3::var(2);
        let q = q_poly();
        let p_prime = self.numerator.derive(axis);
        let c_prime = c.derive(axis);
        let q_prime = q.derive(axis);
        let mut top = p_prime.mul(&c).mul(&q);
        let mut correction = Poly3::zero();
        let k = Poly3::constant(Coeff::from_integer(self.k_den.into()));
        let l = Poly3::constant(Coeff::from_integer(self.l_den.into()));
        correction = correction.add(&k.mul(&q).mul(&c_prime));
        correction = correction.add(&l.mul(&c).mul(&q_prime));
        let neg_one = Poly3::constant(Coeff::from_integer((-1).into()));
        top = top.add(&neg_one.mul(&self.numerator).mul(&correction));
        RatFun {
            numerator: top,
            k_den: self.k_den + 1,
            l_den: self.l_den + 1,
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        RatFun {
            numerator: self.numerator.mul(&rhs.numerator),
            k_den: self.k_den + rhs.k_den,
            l_den: self.l_den + rhs.l_den,
        }
    }
}

/// Converts a normal-form element into the dense rational representation by
/// clearing denominators and expanding `q` as an honest polynomial.
pub fn to_ratfun(f: &FunM) -> RatFun {
    let k_den = f.terms().map(|(m, _)| -m.k).max().unwrap_or(0).max(0);
    let l_den = f.terms().map(|(m, _)| -m.l).max().unwrap_or(0).max(0);
    let q = q_poly();
    let mut numerator = Poly3::zero();
    for (m, coeff) in f.terms() {
        let mut term = Poly3::constant(coeff.clone());
        term = term.mul(&Poly3::var(0).pow(m.n));
        term = term.mul(&Poly3::var(1).pow(m.m));
        term = term.mul(&Poly3::var(2).pow(m.k + k_den));
        term = term.mul(&q.pow(m.l + l_den));
        numerator = numerator.add(&term);
    }
    RatFun {
        numerator,
        k_den,
        l_den,
    }
}
