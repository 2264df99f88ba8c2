use std::sync::Arc;

use modsat::brauer::{normalized_brauer, SatakeSetup};
use modsat::charring::{weyl_character, CharacterElement, Ring};
use modsat::linalg::smith::smith_of;
use modsat::linalg::Matrix;
use modsat::rootdata::{pinned_automorphism, RootDatum};
use proptest::prelude::*;

fn a2() -> Arc<RootDatum> {
    Arc::new(RootDatum::from_label("A2").unwrap())
}

fn laurent(d: &Arc<RootDatum>, ring: Ring, terms: Vec<((i64, i64), i64)>) -> CharacterElement {
    CharacterElement::from_terms(d.clone(), ring, terms.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -4i64..=4), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_a_commutative_ring(a in terms(), b in terms(), c in terms()) {
        let d = a2();
        let (f, g, h) = (laurent(&d, Ring::Z, a), laurent(&d, Ring::Z, b), laurent(&d, Ring::Z, c));
        prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
        prop_assert_eq!(f.multiply(&g).unwrap().multiply(&h).unwrap(), f.multiply(&g.multiply(&h).unwrap()).unwrap());
        let lhs = f.multiply(&g.add(&h).unwrap()).unwrap();
        let rhs = f.multiply(&g).unwrap().add(&f.multiply(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompose_round_trips(a in 0i64..4, b in 0i64..4, c in 0i64..3, e in 0i64..3) {
        let d = a2();
        let f = weyl_character(&d, &[a, b], Ring::Z).unwrap().multiply(&weyl_character(&d, &[c, e], Ring::Z).unwrap()).unwrap();
        let parts = f.decompose().unwrap();
        let mut back = CharacterElement::zero(d.clone(), Ring::Z);
        for (w, m) in &parts {
            back = back.add(&weyl_character(&d, w, Ring::Z).unwrap().scale(*m)).unwrap();
        }
        prop_assert_eq!(back.terms(), f.terms());
        prop_assert_eq!(f.dim(), parts.iter().map(|(w, m)| m * weyl_character(&d, w, Ring::Z).unwrap().dim()).sum::<i64>());
    }

    #[test]
    fn restriction_is_a_ring_map(a in terms(), b in terms()) {
        let d = a2();
        let t = Arc::new(RootDatum::from_label("T1").unwrap());
        let m = Matrix::from_rows(&[vec![1, 1]]).unwrap();
        let (f, g) = (laurent(&d, Ring::Z, a), laurent(&d, Ring::Z, b));
        let r = |x: &CharacterElement| x.restrict_along(&m, t.clone()).unwrap();
        prop_assert_eq!(r(&f.multiply(&g).unwrap()), r(&f).multiply(&r(&g)).unwrap());
        prop_assert_eq!(r(&f.add(&g).unwrap()), r(&f).add(&r(&g)).unwrap());
    }

    #[test]
    fn normalized_brauer_is_a_ring_map(i in 0usize..100, j in 0usize..100) {
        let s = SatakeSetup::new(&pinned_automorphism(&RootDatum::from_label("A2").unwrap(), &[1, 0], 2).unwrap()).unwrap();
        let g = Arc::new(s.g_datum.clone());
        let pool = g.dominant_weights(8, 1).unwrap();
        let f = weyl_character(&g, &pool[i % pool.len()], s.ring()).unwrap();
        let h = weyl_character(&g, &pool[j % pool.len()], s.ring()).unwrap();
        let br = |x: &CharacterElement| normalized_brauer(x, &s).unwrap();
        prop_assert_eq!(br(&f.multiply(&h).unwrap()), br(&f).multiply(&br(&h)).unwrap());
        prop_assert_eq!(br(&f.add(&h).unwrap()), br(&f).add(&br(&h)).unwrap());
    }

    #[test]
    fn smith_form_divisibility_and_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 3)) {
        let a = Matrix::from_rows(&rows).unwrap();
        let s = smith_of(&a).unwrap();
        let diag = s.diag.clone();
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // |det| is the product of the invariant factors
        let r = &rows;
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        let prod: i128 = if diag.len() == 3 { diag.iter().product() } else { 0 };
        prop_assert_eq!(prod.abs(), det.abs() as i128);
    }
}
