//! The Hasse–Witt route to the EO type against point counts.

use genus2::algebra::{field, prime_field, Field, FieldElement, Poly};
use genus2::census::NormalForm;
use genus2::curve::Genus2Curve;
use genus2::eo::{
    cartier_manin, eo_type, hasse_witt, hasse_witt_from_cartier_manin, lpoly_prank, supersingular_count,
    supersingular_j_invariants, EoType, Matrix2,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The four coefficients read off a full expansion of `F^((p-1)/2)`.
fn hasse_witt_by_expansion(c: &Genus2Curve) -> Matrix2 {
    let f = c.field();
    let p = f.p() as usize;
    let pw = c.rhs().pow((p as u64 - 1) / 2);
    Matrix2::new(f, [[pw.coeff(p - 1), pw.coeff(2 * p - 1)], [pw.coeff(p - 2), pw.coeff(2 * p - 2)]])
}

fn agree_on(c: &Genus2Curve) -> EoType {
    let m = hasse_witt(c);
    assert_eq!(m.m, hasse_witt_by_expansion(c).m, "{c:?}");
    let t = eo_type(&m);
    assert_eq!(lpoly_prank(c).unwrap(), t.f_rank, "{c:?}");
    // a = g - rank of the Cartier operator.
    assert_eq!(t.a_rank, 2 - m.rank(), "{c:?}");
    t
}

#[test]
fn characteristic_three_matrices() {
    let f3 = prime_field(3).unwrap();
    let c = Genus2Curve::from_i64s(&f3, &[], &[0, -1, 0, 0, 0, 1]).unwrap();
    assert_eq!(hasse_witt(&c), Matrix2::from_i64s(&f3, [[0, 1], [-1, 0]]));
    assert_eq!(lpoly_prank(&c).unwrap(), 2);
    let c = Genus2Curve::from_i64s(&f3, &[], &[1, 0, 0, 0, 0, 1]).unwrap();
    assert_eq!(hasse_witt(&c), Matrix2::from_i64s(&f3, [[0, 1], [0, 0]]));
    assert_eq!(eo_type(&hasse_witt(&c)), EoType::SUPERSINGULAR_NON_SUPERSPECIAL);
    assert_eq!(lpoly_prank(&c).unwrap(), 0);
}

#[test]
fn every_normal_form_curve_over_small_fields() {
    for (p, k) in [(3u64, 1usize), (5, 1), (3, 2)] {
        let f = field(p, k).unwrap();
        let q = f.order() as u64;
        let mut seen = std::collections::BTreeSet::new();
        for n in 0..q * q * q {
            let nf = NormalForm::from_index(&f, n);
            if !nf.is_smooth(&f) {
                continue;
            }
            seen.insert(agree_on(&nf.curve(&f).unwrap()));
        }
        assert!(seen.contains(&EoType::ORDINARY), "p={p} k={k}");
    }
}

#[test]
fn random_curves_over_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, k, n) in [(5u64, 2usize, 200), (7, 2, 100), (3, 3, 100)] {
        let f = field(p, k).unwrap();
        for _ in 0..n {
            agree_on(&Genus2Curve::random(&f, &mut rng));
        }
    }
}

#[test]
fn cartier_manin_round_trip() {
    let f = field(7, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let m = Matrix2::new(&f, [[f.random(&mut rng), f.random(&mut rng)], [f.random(&mut rng), f.random(&mut rng)]]);
        assert_eq!(hasse_witt_from_cartier_manin(&cartier_manin(&m)), m);
        assert_eq!(cartier_manin(&hasse_witt_from_cartier_manin(&m)), m);
    }
}

/// `#E_λ(F_{p^2})`, with the point at infinity.
fn legendre_count(f: &Field, l: &FieldElement) -> u128 {
    let cubic = Poly::new(f, vec![f.zero(), *l, f.neg(&f.add(&f.one(), l)), f.one()]);
    1 + f
        .elements()
        .map(|x| {
            let v = cubic.eval(&x);
            if v.is_zero() {
                1
            } else if f.is_square(&v) {
                2
            } else {
                0
            }
        })
        .sum::<u128>()
}

/// Supersingular means `#E(F_{p^2}) ≡ 1 (mod p)`; the j-invariants found that way match both
/// the Hasse-invariant enumeration and the class-number formula.
#[test]
fn supersingular_j_invariants_by_point_counts() {
    for p in [7u64, 11, 13, 17] {
        let f = field(p, 2).unwrap();
        let mut js = std::collections::BTreeSet::new();
        for l in f.elements() {
            if l.is_zero() || l == f.one() {
                continue;
            }
            if legendre_count(&f, &l) % p as u128 == 1 {
                js.insert(genus2::eo::legendre_j_invariant(&f, &l).unwrap());
            }
        }
        let by_hasse = supersingular_j_invariants(p).unwrap();
        assert_eq!(js.into_iter().collect::<Vec<_>>(), by_hasse, "p={p}");
        assert_eq!(by_hasse.len() as u64, supersingular_count(p).unwrap());
    }
}
