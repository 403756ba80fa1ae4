use std::sync::Arc;

use proptest::prelude::*;

use grpscheme::catalog;
use grpscheme::hopf::builtin::{self, GroupTable};
use grpscheme::norm::SElem;
use grpscheme::repmod::{hom_space, invariants, GModule};
use grpscheme::scalars::{kernel_basis, rank, rref, CommRing, Elem, Field, Matrix, Mono, Poly, PolyRing};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((5, 1)), Just((2, 2)), Just((2, 3)), Just((3, 2)), Just((5, 2)),]
        .prop_map(|(p, m)| Field::new(p, m, None).unwrap())
}

fn matrix_over(f: &Field, rows: usize, cols: usize, seed: Vec<u32>) -> Matrix {
    let q = f.order();
    Matrix::from_vec(rows, cols, seed.into_iter().take(rows * cols).map(|x| x % q).collect())
}

proptest! {
    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn rref_is_idempotent(f in field_strategy(), r in 1usize..7, c in 1usize..7, seed in prop::collection::vec(any::<u32>(), 36)) {
        let m = matrix_over(&f, r, c, seed);
        let (once, pivots) = rref(&m, &f);
        let (twice, again) = rref(&once, &f);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(pivots, again);
    }

    #[test]
    fn rank_nullity(f in field_strategy(), r in 1usize..7, c in 1usize..7, seed in prop::collection::vec(any::<u32>(), 36)) {
        let m = matrix_over(&f, r, c, seed);
        let ker = kernel_basis(&m, &f);
        prop_assert_eq!(rank(&m, &f) + ker.len(), c);
        for v in &ker {
            prop_assert!(m.mul_vec(v, &f).iter().all(|&x| x == 0));
        }
        if !ker.is_empty() {
            prop_assert_eq!(rank(&Matrix::from_cols(c, &ker), &f), ker.len());
        }
    }

    #[test]
    fn truncation_kills_powers(t in 1u32..5, e in 0u32..8, p in prop_oneof![Just(2u32), Just(3)]) {
        let f = Field::prime(p).unwrap();
        let r = PolyRing::new(f, vec!["x".into(), "y".into()], Some(vec![t, t + 1])).unwrap();
        let xe = r.pow(&r.var(0), e as u64);
        prop_assert_eq!(xe.is_empty(), e >= t);
        let mut expected = Poly::new();
        if e < t {
            expected.insert(Mono(vec![e, 0]), 1);
        }
        prop_assert_eq!(xe, expected);
    }
}

fn random_module(g: &Arc<grpscheme::hopf::GroupScheme>, choice: u8) -> GModule {
    let k = GModule::trivial(g);
    match choice % 4 {
        0 => k,
        1 => GModule::regular(g),
        2 => GModule::left_translation(g),
        _ => k.direct_sum(&GModule::regular(g)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_dimension_matches_invariants(a in any::<u8>(), b in any::<u8>(), which in 0usize..3) {
        let f = Field::prime(if which == 1 { 3 } else { 2 }).unwrap();
        let g = Arc::new(match which {
            0 => builtin::constant(&f, &GroupTable::cyclic(2)).unwrap(),
            1 => builtin::alpha_p(&f).unwrap(),
            _ => builtin::constant(&f, &GroupTable::s3()).unwrap(),
        });
        let (ma, mb) = (random_module(&g, a), random_module(&g, b));
        let hom = hom_space(&ma, &mb).unwrap();
        let inv = invariants(&ma.hom_module(&mb).unwrap());
        prop_assert_eq!(hom.len(), inv.len());
    }

    #[test]
    fn coaction_is_algebra_map(coeffs in prop::collection::vec(0u32..3, 8)) {
        let f = Field::prime(3).unwrap();
        let alg = catalog::translation_algebra(&f).unwrap();
        let Some(r) = (match &alg.carrier { grpscheme::norm::Carrier::Poly(r) => Some(r.clone()), _ => None }) else {
            return Err(TestCaseError::fail("polynomial carrier expected"));
        };
        let poly = |cs: &[Elem]| -> SElem {
            let mut p = Poly::new();
            for (i, &c) in cs.iter().enumerate() {
                if c != 0 {
                    p.insert(Mono(vec![i as u32]), c);
                }
            }
            SElem::Poly(p)
        };
        let (x, y) = (poly(&coeffs[..4]), poly(&coeffs[4..]));
        let t = alg.tensor_ring();
        let xy = SElem::Poly(r.mul(x.as_poly(), y.as_poly()));
        prop_assert_eq!(alg.coact(&xy), t.mul(&alg.coact(&x), &alg.coact(&y)));
    }
}
