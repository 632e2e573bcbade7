//! Property tests: the spec invariants as random laws, with the dense
//! rational-function oracle standing independently against the normal-form
//! arithmetic.

mod common;

use common::to_ratfun;
use genkac_core::coeff;
use genkac_core::delta::split;
use genkac_core::funm::{Axis, FunM, Mono};
use proptest::prelude::*;

fn arb_coeff() -> impl Strategy<Value = coeff::Coeff> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| coeff::rat(if n == 0 { 1 } else { n }, d))
}

fn arb_mono() -> impl Strategy<Value = Mono> {
    (0i64..=2, 0i64..=2, -3i64..=3, -3i64..=3).prop_map(|(n, m, k, l)| {
        // Normal form: only one of (n, m) survives.
        if n >= m {
            Mono::new(n, 0, k, l)
        } else {
            Mono::new(0, m, k, l)
        }
    })
}

fn arb_funm() -> impl Strategy<Value = FunM> {
    proptest::collection::vec((arb_mono(), arb_coeff()), 1..4).prop_map(FunM::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matches_rational_oracle(f in arb_funm(), g in arb_funm()) {
        let normal = to_ratfun(&f.mul(&g));
        let dense = to_ratfun(&f).mul(&to_ratfun(&g));
        prop_assert!(normal.equivalent(&dense));
    }

    #[test]
    fn partials_match_quotient_rule(f in arb_funm()) {
        for (axis, idx) in [(Axis::A, 0), (Axis::B, 1), (Axis::C, 2)] {
            let normal = to_ratfun(&f.partial(axis));
            let dense = to_ratfun(&f).derive(idx);
            prop_assert!(normal.equivalent(&dense));
        }
    }

    #[test]
    fn ring_is_commutative_and_associative(f in arb_funm(), g in arb_funm(), h in arb_funm()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn weyl_substitution_negates_bidegree_termwise(f in arb_funm()) {
        // The substitution stays in normal form and flips every monomial's
        // bidegree; its square is not the identity, but it preserves the
        // support size.
        let w = f.weyl_substitute();
        for (m, _) in w.terms() {
            prop_assert!(m.n.min(m.m) == 0);
        }
        let mut flipped: Vec<_> = f.terms().map(|(m, _)| -m.bidegree()).collect();
        let mut images: Vec<_> = w.terms().map(|(m, _)| m.bidegree()).collect();
        flipped.sort();
        images.sort();
        prop_assert_eq!(flipped, images);
        prop_assert_eq!(w.weyl_substitute().len(), f.len());
    }

    #[test]
    fn weyl_is_multiplicative(f in arb_funm(), g in arb_funm()) {
        prop_assert_eq!(
            f.mul(&g).weyl_substitute(),
            f.weyl_substitute().mul(&g.weyl_substitute())
        );
    }

    #[test]
    fn split_parts_partition_support(f in arb_funm()) {
        let parts = split(&f);
        let total = parts.iter().fold(FunM::zero(), |acc, p| acc.add(p));
        prop_assert_eq!(&total, &f);
        for (i, p) in parts.iter().enumerate() {
            prop_assert_eq!(&split(p)[i], p);
        }
    }

    #[test]
    fn residue_kills_raising_operators(f in arb_funm()) {
        use genkac_core::diffop::sl3_act;
        use genkac_core::sl3::Sl3Tag;
        for e in [Sl3Tag::E1, Sl3Tag::E2, Sl3Tag::E3] {
            prop_assert_eq!(sl3_act(e, &f).residue(), coeff::int(0));
        }
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(f in arb_funm(), g in arb_funm(), h in arb_funm()) {
        prop_assert_eq!(f.pair(&g), g.pair(&f));
        prop_assert_eq!(
            f.add(&g).pair(&h),
            f.pair(&h) + g.pair(&h)
        );
    }
}
