//! Stratum models, their inverse maps and the gluing construction.

use std::collections::HashMap;

use genus2::algebra::{field, Field, FieldElement};
use genus2::aut::{aut_classify, AutLabel};
use genus2::curve::{Genus2Curve, P1Point};
use genus2::error::Error;
use genus2::igusa::{igusa_invariants, wp_equal, IgusaKey, IgusaPoint};
use genus2::strata::gluing::{glue, level2_action, prank_additivity_check, GluingDatum, S3};
use genus2::strata::models::{d4_inverse, d4_model, d6_inverse, d6_model};
use genus2::strata::{stratum_ideal, Stratum};
use proptest::prelude::*;

fn d4_point(f: &Field, t: &FieldElement) -> Option<IgusaPoint> {
    let c = Genus2Curve::from_f(genus2::algebra::Poly::new(f, vec![f.zero(), *t, f.zero(), f.one(), f.zero(), f.one()])).ok()?;
    Some(igusa_invariants(&c).unwrap())
}

fn d6_point(f: &Field, c: &FieldElement) -> Option<IgusaPoint> {
    let g = genus2::algebra::Poly::from_i64s(f, &[1, 0, 0, 1]);
    let rhs = genus2::algebra::Poly::new(f, vec![*c, f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
    Some(igusa_invariants(&Genus2Curve::new(g, rhs).ok()?).unwrap())
}

type Model = fn(&IgusaPoint) -> genus2::Result<Genus2Curve>;
type Inverse = fn(&IgusaPoint) -> genus2::Result<P1Point>;

/// Model, invariants of the model, inverse map: every smooth family member over `F_{p^2}`.
fn round_trips(label: AutLabel, family: fn(&Field, &FieldElement) -> Option<IgusaPoint>, model: Model, inverse: Inverse) {
    for p in [7u64, 11, 13] {
        let f = field(p, 2).unwrap();
        let ideal = stratum_ideal(Stratum::Group(label), p).unwrap();
        let mut by_key: HashMap<IgusaKey, P1Point> = HashMap::new();
        let mut checked = 0;
        for t in f.elements() {
            let Some(pt) = family(&f, &t) else { continue };
            assert!(ideal.contains(&pt), "{label} p={p}");
            let m = match model(&pt) {
                Ok(m) => m,
                Err(Error::SingularStratumPoint(_)) => continue,
                Err(e) => panic!("{label} p={p}: {e}"),
            };
            let back = igusa_invariants(&m).unwrap();
            assert!(wp_equal(&back, &pt).unwrap(), "{label} p={p} t={}", f.display(&t));
            assert!(ideal.contains(&back));
            let s = inverse(&pt).unwrap();
            assert_eq!(inverse(&back).unwrap(), s);
            if let Some(prev) = by_key.insert(pt.key(), s) {
                assert_eq!(prev, s);
            }
            checked += 1;
        }
        // Distinct points have distinct parameters.
        let mut params: Vec<_> = by_key.values().collect();
        params.sort();
        params.dedup();
        assert_eq!(params.len(), by_key.len(), "{label} p={p}");
        assert!(checked > p as usize, "{label} p={p}");
    }
}

#[test]
fn d4_round_trip() {
    round_trips(AutLabel::D4, d4_point, d4_model, d4_inverse);
}

#[test]
fn d6_round_trip() {
    round_trips(AutLabel::D6, d6_point, d6_model, d6_inverse);
}

#[test]
fn generic_d4_members_have_d4_automorphisms() {
    let f = field(11, 1).unwrap();
    let mut checked = 0;
    for t in 2..11 {
        let Some(pt) = d4_point(&f, &f.from_i64(t)) else { continue };
        let Ok(m) = d4_model(&pt) else { continue };
        let (n, _) = aut_classify(&m).unwrap();
        assert_eq!(n % 4, 0, "t={t}");
        checked += 1;
    }
    assert!(checked >= 5);
}

fn lambda_pair(p_idx: usize, a: u64, b: u64) -> Option<(Field, FieldElement, FieldElement)> {
    let p = [7u64, 11, 13][p_idx];
    let f = field(p, 1).unwrap();
    let (l1, l2) = (f.element(a as u128 % p as u128), f.element(b as u128 % p as u128));
    let bad = |l: &FieldElement| l.is_zero() || *l == f.one();
    (!bad(&l1) && !bad(&l2) && l1 != l2).then_some((f, l1, l2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn relabelling_both_factors_keeps_the_point(p_idx in 0usize..3, a in any::<u64>(), b in any::<u64>(), t in 0usize..6) {
        let Some((f, l1, l2)) = lambda_pair(p_idx, a, b) else { return Ok(()) };
        let tau = S3::ALL[t];
        let base = igusa_invariants(&glue(&f, &l1, &l2).unwrap()).unwrap();
        let (m1, m2) = (level2_action(tau, &f, &l1).unwrap(), level2_action(tau, &f, &l2).unwrap());
        let moved = igusa_invariants(&glue(&f, &m1, &m2).unwrap()).unwrap();
        prop_assert!(wp_equal(&base, &moved).unwrap());
    }

    #[test]
    fn p_rank_is_additive(p_idx in 0usize..3, a in any::<u64>(), b in any::<u64>()) {
        let Some((f, l1, l2)) = lambda_pair(p_idx, a, b) else { return Ok(()) };
        prop_assert!(prank_additivity_check(&f, &l1, &l2).unwrap());
    }

    #[test]
    fn gluing_to_a_relabelled_copy(p_idx in 0usize..3, a in any::<u64>(), t in 1usize..6) {
        let Some((f, l, _)) = lambda_pair(p_idx, a, a + 1) else { return Ok(()) };
        let tau = S3::ALL[t];
        let m = level2_action(tau, &f, &l).unwrap();
        if m == l {
            return Ok(());
        }
        let pt = igusa_invariants(&glue(&f, &l, &m).unwrap()).unwrap();
        let target = if tau.order() == 2 { Stratum::Group(AutLabel::D4) } else { Stratum::Z };
        prop_assert!(stratum_ideal(target, f.p()).unwrap().contains(&pt), "{} {}", tau, pt.display());
    }

    #[test]
    fn gluing_maps_are_morphisms(p_idx in 0usize..3, a in any::<u64>(), b in any::<u64>()) {
        let Some((f, l1, l2)) = lambda_pair(p_idx, a, b) else { return Ok(()) };
        prop_assert!(GluingDatum::new(&f, &l1, &l2).unwrap().verify_maps().unwrap());
    }
}
