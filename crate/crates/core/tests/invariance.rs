//! Coordinate changes leave every invariant alone.

use genus2::algebra::{field, Field};
use genus2::aut::reduced_aut_group;
use genus2::curve::{Genus2Curve, MobiusMap};
use genus2::eo::eo_type_of;
use genus2::igusa::{igusa_invariants, wp_equal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    [(5, 1), (7, 1), (11, 1), (3, 2), (5, 2)].iter().map(|&(p, k)| field(p, k).unwrap()).collect()
}

fn setup(which: usize, seed: u64) -> (Genus2Curve, MobiusMap) {
    let f = &fields()[which];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (Genus2Curve::random(f, &mut rng), MobiusMap::random(f, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn igusa_point_is_invariant(which in 0usize..5, seed in any::<u64>()) {
        let (c, m) = setup(which, seed);
        let d = c.apply_mobius(&m).unwrap();
        prop_assert!(wp_equal(&igusa_invariants(&c).unwrap(), &igusa_invariants(&d).unwrap()).unwrap());
    }

    #[test]
    fn eo_type_is_invariant(which in 0usize..5, seed in any::<u64>()) {
        let (c, m) = setup(which, seed);
        prop_assert_eq!(eo_type_of(&c), eo_type_of(&c.apply_mobius(&m).unwrap()));
    }

    /// The group of the moved curve is the conjugate `m G m^-1`, element by element.
    #[test]
    fn automorphisms_are_conjugated(which in 0usize..5, seed in any::<u64>()) {
        let (c, m) = setup(which, seed);
        let d = c.apply_mobius(&m).unwrap();
        let g = reduced_aut_group(&c).unwrap();
        let h = reduced_aut_group(&d).unwrap();
        prop_assert_eq!(g.order(), h.order());
        // apply_mobius substitutes x -> m(x), so Weierstrass points move by m^-1.
        let mi = m.inverse().embed(&h.field).unwrap();
        let mm = m.embed(&h.field).unwrap();
        for a in &g.elements {
            let a = a.embed(&h.field).unwrap();
            prop_assert!(h.contains(&mi.compose(&a).compose(&mm)).unwrap());
        }
    }

    #[test]
    fn scaling_stays_in_the_class(which in 0usize..5, seed in any::<u64>(), lambda_seed in any::<u64>()) {
        let (c, _) = setup(which, seed);
        let pt = igusa_invariants(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(lambda_seed);
        let lambda = pt.field().random_nonzero(&mut rng);
        let scaled = pt.scale(&lambda).unwrap();
        prop_assert!(wp_equal(&pt, &scaled).unwrap());
        prop_assert!(wp_equal(&scaled, &pt).unwrap());
        prop_assert_eq!(pt.key(), scaled.key());
    }
}
