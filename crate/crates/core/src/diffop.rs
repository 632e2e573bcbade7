//! First-order differential operators on the function ring.
//!
//! A `DiffOp1` is `f_a d_a + f_b d_b + f_c d_c + f_0` with ring coefficients.
//! The module houses the modified sl3 action (the xi operators with the
//! rho-shift constants), the derivations `d1, d2, d3` attached to the
//! positive roots, and the two grading fields `L_c`, `L_q`.

use crate::coeff::{self, Coeff};
use crate::funm::{Axis, FunM};
use crate::sl3::Sl3Tag;

/// First-order operator `da*d/da + db*d/db + dc*d/dc + scalar`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOp1 {
    pub da: FunM,
    pub db: FunM,
    pub dc: FunM,
    pub scalar: FunM,
}

impl DiffOp1 {
    pub fn zero() -> Self {
        DiffOp1::default()
    }

    pub fn new(da: FunM, db: FunM, dc: FunM, scalar: FunM) -> Self {
        DiffOp1 { da, db, dc, scalar }
    }

    pub fn apply(&self, f: &FunM) -> FunM {
        self.da
            .mul(&f.partial(Axis::A))
            .add(&self.db.mul(&f.partial(Axis::B)))
            .add(&self.dc.mul(&f.partial(Axis::C)))
            .add(&self.scalar.mul(f))
    }

    pub fn add(&self, rhs: &DiffOp1) -> DiffOp1 {
        DiffOp1 {
            da: self.da.add(&rhs.da),
            db: self.db.add(&rhs.db),
            dc: self.dc.add(&rhs.dc),
            scalar: self.scalar.add(&rhs.scalar),
        }
    }

    pub fn scale(&self, s: &Coeff) -> DiffOp1 {
        DiffOp1 {
            da: self.da.scale(s),
            db: self.db.scale(s),
            dc: self.dc.scale(s),
            scalar: self.scalar.scale(s),
        }
    }

    /// Derivation part applied to `f` (drops the order-zero term).
    pub fn derive(&self, f: &FunM) -> FunM {
        self.da
            .mul(&f.partial(Axis::A))
            .add(&self.db.mul(&f.partial(Axis::B)))
            .add(&self.dc.mul(&f.partial(Axis::C)))
    }

    /// Operator commutator; first order again since the second-order parts
    /// cancel, with the scalar part `X(s_Y) - Y(s_X)`.
    pub fn commutator(&self, rhs: &DiffOp1) -> DiffOp1 {
        DiffOp1 {
            da: self.derive(&rhs.da).sub(&rhs.derive(&self.da)),
            db: self.derive(&rhs.db).sub(&rhs.derive(&self.db)),
            dc: self.derive(&rhs.dc).sub(&rhs.derive(&self.dc)),
            scalar: self.derive(&rhs.scalar).sub(&rhs.derive(&self.scalar)),
        }
    }
}

/// The derivation `d1 = d_a` attached to the first simple root.
pub fn d1() -> DiffOp1 {
    DiffOp1::new(FunM::one(), FunM::zero(), FunM::zero(), FunM::zero())
}

/// The derivation `d2 = d_b + a d_c`.
pub fn d2() -> DiffOp1 {
    DiffOp1::new(FunM::zero(), FunM::one(), FunM::var_a(), FunM::zero())
}

/// The derivation `d3 = d_c` attached to the highest root.
pub fn d3() -> DiffOp1 {
    DiffOp1::new(FunM::zero(), FunM::zero(), FunM::one(), FunM::zero())
}

/// `d2` applied directly to a function.
pub fn apply_d2(f: &FunM) -> FunM {
    f.partial(Axis::B)
        .add(&FunM::var_a().mul(&f.partial(Axis::C)))
}

/// The modified sl3 action with highest weight `-rho`. The Cartan operators
/// carry the literal `-1` shift and the lowering operators their order-zero
/// parts.
pub fn xi(tag: Sl3Tag) -> DiffOp1 {
    let a = FunM::var_a();
    let b = FunM::var_b();
    let c = FunM::var_c();
    let q = FunM::var_q();
    let one = FunM::one();
    let m1 = coeff::int(-1);
    match tag {
        Sl3Tag::E1 => d1(),
        Sl3Tag::E2 => d2(),
        Sl3Tag::E3 => d3(),
        Sl3Tag::H1 => DiffOp1::new(
            a.scale(&coeff::int(-2)),
            b.clone(),
            c.scale(&m1),
            one.scale(&m1),
        ),
        Sl3Tag::H2 => DiffOp1::new(
            a.clone(),
            b.scale(&coeff::int(-2)),
            c.scale(&m1),
            one.scale(&m1),
        ),
        Sl3Tag::F1 => DiffOp1::new(
            a.mul(&a).scale(&m1),
            q.scale(&m1),
            a.mul(&c).scale(&m1),
            a.scale(&m1),
        ),
        Sl3Tag::F2 => DiffOp1::new(c.clone(), b.mul(&b).scale(&m1), FunM::zero(), b.scale(&m1)),
        Sl3Tag::F3 => DiffOp1::new(
            a.mul(&c).scale(&m1),
            b.mul(&q).scale(&m1),
            c.mul(&c).scale(&m1),
            // -(2c - ab) = -(c + q)
            c.add(&q).scale(&m1),
        ),
    }
}

/// Action of a basis element on a function.
pub fn sl3_act(tag: Sl3Tag, f: &FunM) -> FunM {
    xi(tag).apply(f)
}

/// Grading field `L_c = -c d3 - a d1 = -a d_a - c d_c`, diagonal on
/// monomials with eigenvalue `-(n+k+l)`.
pub fn l_c() -> DiffOp1 {
    DiffOp1::new(
        FunM::var_a().neg(),
        FunM::zero(),
        FunM::var_c().neg(),
        FunM::zero(),
    )
}

/// Grading field `L_q = -q d3 - b d2 = -b d_b - c d_c`, diagonal on
/// monomials with eigenvalue `-(m+k+l)`.
pub fn l_q() -> DiffOp1 {
    DiffOp1::new(
        FunM::zero(),
        FunM::var_b().neg(),
        FunM::var_c().neg(),
        FunM::zero(),
    )
}
