//! The finite-dimensional Lie algebra sl3.
//!
//! Basis order is `(e1, e2, e3, h1, h2, f1, f2, f3)` identified with the
//! matrix units `E12, E23, E13, E11-E22, E22-E33, E21, E32, E31`. The bracket
//! and the normalized invariant form are realized through the defining 3x3
//! representation, which doubles as the oracle for both.

use std::fmt;

use num_traits::Zero;

use crate::coeff::{self, Coeff};

/// Basis tags in the fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl3Tag {
    E1,
    E2,
    E3,
    H1,
    H2,
    F1,
    F2,
    F3,
}

pub const TAGS: [Sl3Tag; 8] = [
    Sl3Tag::E1,
    Sl3Tag::E2,
    Sl3Tag::E3,
    Sl3Tag::H1,
    Sl3Tag::H2,
    Sl3Tag::F1,
    Sl3Tag::F2,
    Sl3Tag::F3,
];

impl Sl3Tag {
    pub fn index(self) -> usize {
        TAGS.iter().position(|t| *t == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Sl3Tag::E1 => "e1",
            Sl3Tag::E2 => "e2",
            Sl3Tag::E3 => "e3",
            Sl3Tag::H1 => "h1",
            Sl3Tag::H2 => "h2",
            Sl3Tag::F1 => "f1",
            Sl3Tag::F2 => "f2",
            Sl3Tag::F3 => "f3",
        }
    }

    pub fn from_name(s: &str) -> Option<Sl3Tag> {
        TAGS.iter().copied().find(|t| t.name() == s)
    }
}

/// Element of sl3 as eight rational coordinates over the ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sl3Elem(pub [Coeff; 8]);

/// Traceless 3x3 rational matrix.
pub type Mat3 = [[Coeff; 3]; 3];

impl Sl3Elem {
    pub fn zero() -> Self {
        Sl3Elem(std::array::from_fn(|_| Coeff::zero()))
    }

    pub fn basis(tag: Sl3Tag) -> Self {
        let mut e = Sl3Elem::zero();
        e.0[tag.index()] = coeff::int(1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Sl3Elem) -> Sl3Elem {
        Sl3Elem(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }

    pub fn sub(&self, rhs: &Sl3Elem) -> Sl3Elem {
        Sl3Elem(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }

    pub fn scale(&self, s: &Coeff) -> Sl3Elem {
        Sl3Elem(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn neg(&self) -> Sl3Elem {
        Sl3Elem(std::array::from_fn(|i| -self.0[i].clone()))
    }

    pub fn coords(&self) -> &[Coeff; 8] {
        &self.0
    }
}

fn zero_mat() -> Mat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Coeff::zero()))
}

fn basis_matrix(tag: Sl3Tag) -> Mat3 {
    let mut m = zero_mat();
    let one = coeff::int(1);
    match tag {
        Sl3Tag::E1 => m[0][1] = one,
        Sl3Tag::E2 => m[1][2] = one,
        Sl3Tag::E3 => m[0][2] = one,
        Sl3Tag::H1 => {
            m[0][0] = one;
            m[1][1] = coeff::int(-1);
        }
        Sl3Tag::H2 => {
            m[1][1] = one;
            m[2][2] = coeff::int(-1);
        }
        Sl3Tag::F1 => m[1][0] = one,
        Sl3Tag::F2 => m[2][1] = one,
        Sl3Tag::F3 => m[2][0] = one,
    }
    m
}

/// The defining 3x3 representation.
pub fn matrix_rep(x: &Sl3Elem) -> Mat3 {
    let mut out = zero_mat();
    for (idx, c) in x.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let bm = basis_matrix(TAGS[idx]);
        for (i, row) in bm.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out[i][j] += c * v;
                }
            }
        }
    }
    out
}

pub fn mat_mul(x: &Mat3, y: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).map(|k| &x[i][k] * &y[k][j]).sum::<Coeff>())
    })
}

pub fn mat_sub(x: &Mat3, y: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &x[i][j] - &y[i][j]))
}

pub fn mat_trace(x: &Mat3) -> Coeff {
    (0..3).map(|i| x[i][i].clone()).sum()
}

/// Inverse of `matrix_rep` on traceless matrices.
pub fn from_matrix(m: &Mat3) -> Sl3Elem {
    let mut e = Sl3Elem::zero();
    e.0[Sl3Tag::E1.index()] = m[0][1].clone();
    e.0[Sl3Tag::E2.index()] = m[1][2].clone();
    e.0[Sl3Tag::E3.index()] = m[0][2].clone();
    e.0[Sl3Tag::F1.index()] = m[1][0].clone();
    e.0[Sl3Tag::F2.index()] = m[2][1].clone();
    e.0[Sl3Tag::F3.index()] = m[2][0].clone();
    // diag(x, -x+y, -y) for x h1 + y h2
    e.0[Sl3Tag::H1.index()] = m[0][0].clone();
    e.0[Sl3Tag::H2.index()] = -m[2][2].clone();
    e
}

/// Lie bracket via the matrix commutator.
pub fn bracket_sl3(x: &Sl3Elem, y: &Sl3Elem) -> Sl3Elem {
    let mx = matrix_rep(x);
    let my = matrix_rep(y);
    from_matrix(&mat_sub(&mat_mul(&mx, &my), &mat_mul(&my, &mx)))
}

/// Normalized invariant form: the trace form of the defining representation,
/// which gives the highest root square length 2.
pub fn form_sl3(x: &Sl3Elem, y: &Sl3Elem) -> Coeff {
    mat_trace(&mat_mul(&matrix_rep(x), &matrix_rep(y)))
}

/// The split-form Cartan involution: `e_i -> -f_i`, `f_i -> -e_i`,
/// `h -> -h`; equivalently minus transpose in the defining representation.
pub fn cartan_involution_sl3(x: &Sl3Elem) -> Sl3Elem {
    let mut out = Sl3Elem::zero();
    let swap = [
        (Sl3Tag::E1, Sl3Tag::F1),
        (Sl3Tag::E2, Sl3Tag::F2),
        (Sl3Tag::E3, Sl3Tag::F3),
        (Sl3Tag::F1, Sl3Tag::E1),
        (Sl3Tag::F2, Sl3Tag::E2),
        (Sl3Tag::F3, Sl3Tag::E3),
        (Sl3Tag::H1, Sl3Tag::H1),
        (Sl3Tag::H2, Sl3Tag::H2),
    ];
    for (from, to) in swap {
        out.0[to.index()] = -x.0[from.index()].clone();
    }
    out
}

impl fmt::Display for Sl3Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = coeff::signum(c) < 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag != coeff::int(1) {
                write!(f, "{}*", coeff::display(&mag))?;
            }
            write!(f, "{}", TAGS[idx].name())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn b(tag: Sl3Tag) -> Sl3Elem {
        Sl3Elem::basis(tag)
    }

    #[test]
    fn chevalley_relations() {
        assert_eq!(bracket_sl3(&b(Sl3Tag::E1), &b(Sl3Tag::F1)), b(Sl3Tag::H1));
        assert_eq!(
            bracket_sl3(&b(Sl3Tag::H1), &b(Sl3Tag::E1)),
            b(Sl3Tag::E1).scale(&int(2))
        );
        assert_eq!(bracket_sl3(&b(Sl3Tag::E1), &b(Sl3Tag::E2)), b(Sl3Tag::E3));
    }

    #[test]
    fn jacobi_exhaustive() {
        for x in TAGS {
            for y in TAGS {
                for z in TAGS {
                    let xyz = bracket_sl3(&b(x), &bracket_sl3(&b(y), &b(z)));
                    let yzx = bracket_sl3(&b(y), &bracket_sl3(&b(z), &b(x)));
                    let zxy = bracket_sl3(&b(z), &bracket_sl3(&b(x), &b(y)));
                    assert!(xyz.add(&yzx).add(&zxy).is_zero(), "{:?} {:?} {:?}", x, y, z);
                }
            }
        }
    }

    #[test]
    fn form_values() {
        assert_eq!(form_sl3(&b(Sl3Tag::H1), &b(Sl3Tag::H1)), int(2));
        assert_eq!(form_sl3(&b(Sl3Tag::H1), &b(Sl3Tag::H2)), int(-1));
        assert_eq!(form_sl3(&b(Sl3Tag::E1), &b(Sl3Tag::E2)), int(0));
        for (e, f) in [
            (Sl3Tag::E1, Sl3Tag::F1),
            (Sl3Tag::E2, Sl3Tag::F2),
            (Sl3Tag::E3, Sl3Tag::F3),
        ] {
            assert_eq!(form_sl3(&b(e), &b(f)), int(1));
        }
    }

    #[test]
    fn form_invariance_exhaustive() {
        for x in TAGS {
            for y in TAGS {
                for z in TAGS {
                    let lhs = form_sl3(&bracket_sl3(&b(x), &b(y)), &b(z));
                    let rhs = form_sl3(&b(x), &bracket_sl3(&b(y), &b(z)));
                    assert_eq!(lhs, rhs, "{:?} {:?} {:?}", x, y, z);
                }
            }
        }
    }

    #[test]
    fn involution_is_automorphism() {
        assert_eq!(cartan_involution_sl3(&b(Sl3Tag::E1)), b(Sl3Tag::F1).neg());
        assert_eq!(cartan_involution_sl3(&b(Sl3Tag::H1)), b(Sl3Tag::H1).neg());
        assert_eq!(
            cartan_involution_sl3(&cartan_involution_sl3(&b(Sl3Tag::F3))),
            b(Sl3Tag::F3)
        );
        for x in TAGS {
            for y in TAGS {
                let lhs = cartan_involution_sl3(&bracket_sl3(&b(x), &b(y)));
                let rhs = bracket_sl3(&cartan_involution_sl3(&b(x)), &cartan_involution_sl3(&b(y)));
                assert_eq!(lhs, rhs, "{:?} {:?}", x, y);
            }
        }
    }

    #[test]
    fn matrix_rep_is_traceless_homomorphism() {
        let x = Sl3Elem([
            int(1),
            int(-2),
            int(3),
            int(4),
            int(0),
            int(5),
            int(-1),
            int(2),
        ]);
        let y = Sl3Elem([
            int(0),
            int(1),
            int(-1),
            int(2),
            int(3),
            int(0),
            int(4),
            int(-2),
        ]);
        assert_eq!(mat_trace(&matrix_rep(&x)), int(0));
        let lhs = matrix_rep(&bracket_sl3(&x, &y));
        let mx = matrix_rep(&x);
        let my = matrix_rep(&y);
        let rhs = mat_sub(&mat_mul(&mx, &my), &mat_mul(&my, &mx));
        assert_eq!(lhs, rhs);
        assert_eq!(from_matrix(&matrix_rep(&x)), x);
    }

    #[test]
    fn h1_matrix() {
        let m = matrix_rep(&b(Sl3Tag::H1));
        assert_eq!(m[0][0], int(1));
        assert_eq!(m[1][1], int(-1));
        assert_eq!(m[2][2], int(0));
    }
}
