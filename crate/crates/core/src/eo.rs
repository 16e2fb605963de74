//! Hasse–Witt and Cartier–Manin matrices, Ekedahl–Oort types, and the point-counting p-rank
//! oracle.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{field, legendre_symbol, Field, FieldElement, Poly};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};

/// Largest field for which [`lpoly_prank`] will enumerate points.
pub const LPOLY_FIELD_LIMIT: u128 = 10_000;

/// A 2x2 matrix over a finite field, acted on entrywise by Frobenius.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix2 {
    field: Field,
    pub m: [[FieldElement; 2]; 2],
}

impl Matrix2 {
    pub fn new(field: &Field, m: [[FieldElement; 2]; 2]) -> Self {
        Matrix2 { field: field.clone(), m }
    }

    pub fn from_i64s(field: &Field, m: [[i64; 2]; 2]) -> Self {
        Self::new(field, m.map(|row| row.map(|x| field.from_i64(x))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    pub fn det(&self) -> FieldElement {
        let f = &self.field;
        f.sub(&f.mul(&self.m[0][0], &self.m[1][1]), &f.mul(&self.m[0][1], &self.m[1][0]))
    }

    pub fn rank(&self) -> u8 {
        if self.is_zero() {
            0
        } else if self.det().is_zero() {
            1
        } else {
            2
        }
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let f = &self.field;
        let e = |i: usize, j: usize| f.add(&f.mul(&self.m[i][0], &other.m[0][j]), &f.mul(&self.m[i][1], &other.m[1][j]));
        Matrix2 { field: f.clone(), m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn transpose(&self) -> Matrix2 {
        let m = &self.m;
        Matrix2 { field: self.field.clone(), m: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]] }
    }

    /// Entrywise `x ↦ x^p` (written `M^σ`).
    pub fn frobenius(&self) -> Matrix2 {
        Matrix2 { field: self.field.clone(), m: self.m.map(|row| row.map(|x| self.field.frobenius(&x))) }
    }

    /// Entrywise `x ↦ x^(1/p)` (written `M^τ`).
    pub fn inverse_frobenius(&self) -> Matrix2 {
        Matrix2 { field: self.field.clone(), m: self.m.map(|row| row.map(|x| self.field.inverse_frobenius(&x))) }
    }

    pub fn display(&self) -> String {
        let f = &self.field;
        let row = |r: &[FieldElement; 2]| format!("[{}, {}]", f.display(&r[0]), f.display(&r[1]));
        format!("[{}, {}]", row(&self.m[0]), row(&self.m[1]))
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// `[[c_{p-1}, c_{2p-1}], [c_{p-2}, c_{2p-2}]]` where `Σ c_i x^i = F(x)^((p-1)/2)`.
pub fn hasse_witt(c: &Genus2Curve) -> Matrix2 {
    let rhs = c.rhs();
    hasse_witt_of(c.field(), rhs.coeffs())
}

/// Hasse–Witt matrix of `y^2 = F(x)` given the coefficients of `F`.
pub fn hasse_witt_of(f: &Field, rhs: &[FieldElement]) -> Matrix2 {
    let p = f.p() as usize;
    let c = truncated_power(f, rhs, (p - 1) / 2, 2 * p);
    Matrix2::new(f, [[c[p - 1], c[2 * p - 1]], [c[p - 2], c[2 * p - 2]]])
}

/// Coefficients `0..len` of `g^e`.
fn truncated_power(f: &Field, g: &[FieldElement], mut e: usize, len: usize) -> Vec<FieldElement> {
    let trim = |mut v: Vec<FieldElement>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut base = trim(g.iter().copied().take(len).collect());
    let mut acc = vec![f.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = trim(f.poly_mul_truncated(&acc, &base, len));
        }
        e >>= 1;
        if e > 0 {
            base = trim(f.poly_mul_truncated(&base, &base, len));
        }
    }
    acc.resize(len, FieldElement::ZERO);
    acc
}

/// Cartier–Manin matrix `M_CM = (M_HW^τ)^T`.
pub fn cartier_manin(hw: &Matrix2) -> Matrix2 {
    hw.inverse_frobenius().transpose()
}

/// `M_HW = (M_CM^σ)^T`.
pub fn hasse_witt_from_cartier_manin(cm: &Matrix2) -> Matrix2 {
    cm.frobenius().transpose()
}

/// Ekedahl–Oort type of an abelian surface as `(p-rank, a-number)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EoType {
    #[serde(rename = "f")]
    pub f_rank: u8,
    #[serde(rename = "a")]
    pub a_rank: u8,
}

impl EoType {
    pub const ORDINARY: EoType = EoType { f_rank: 2, a_rank: 0 };
    pub const P_RANK_ONE: EoType = EoType { f_rank: 1, a_rank: 1 };
    pub const SUPERSINGULAR_NON_SUPERSPECIAL: EoType = EoType { f_rank: 0, a_rank: 1 };
    pub const SUPERSPECIAL: EoType = EoType { f_rank: 0, a_rank: 2 };

    /// The four types in the order `(2,0), (1,1), (0,1), (0,2)`.
    pub const ALL: [EoType; 4] =
        [Self::ORDINARY, Self::P_RANK_ONE, Self::SUPERSINGULAR_NON_SUPERSPECIAL, Self::SUPERSPECIAL];

    pub fn new(f_rank: u8, a_rank: u8) -> Result<Self> {
        let t = EoType { f_rank, a_rank };
        if Self::ALL.contains(&t) {
            Ok(t)
        } else {
            Err(Error::Domain { op: "EoType::new", detail: format!("({f_rank},{a_rank}) is not an EO type of a surface") })
        }
    }
}

impl fmt::Display for EoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.f_rank, self.a_rank)
    }
}

/// EO type from the Hasse–Witt matrix: rank 2 is ordinary, `M = 0` superspecial, and a rank-one
/// `M` has p-rank 1 unless `M·M^σ = 0`.
pub fn eo_type(m: &Matrix2) -> EoType {
    match m.rank() {
        2 => EoType::ORDINARY,
        0 => EoType::SUPERSPECIAL,
        _ => {
            if m.mul(&m.frobenius()).is_zero() {
                EoType::SUPERSINGULAR_NON_SUPERSPECIAL
            } else {
                EoType::P_RANK_ONE
            }
        }
    }
}

pub fn eo_type_of(c: &Genus2Curve) -> EoType {
    eo_type(&hasse_witt(c))
}

/// `(a1, a2)` of `L(t) = 1 + a1 t + a2 t^2 + q a1 t^3 + q^2 t^4`, from point counts over `F_q`
/// and `F_{q^2}`.
pub fn lpoly_coefficients(c: &Genus2Curve) -> Result<(i128, i128)> {
    let base = c.field();
    let q = base.order();
    if q > LPOLY_FIELD_LIMIT {
        return Err(Error::FieldTooLarge { op: "lpoly_prank", order: q, limit: LPOLY_FIELD_LIMIT });
    }
    let rhs = c.rhs();
    let n1 = count_points(base, &rhs)? as i128;
    let ext = field(base.p(), base.degree() * 2)?;
    let n2 = count_points(&ext, &rhs.embed(&ext)?)? as i128;
    let q = q as i128;
    let a1 = n1 - q - 1;
    let twice_a2 = n2 - q * q - 1 + a1 * a1;
    if twice_a2 % 2 != 0 {
        return Err(Error::Internal("point counts are inconsistent with a genus-2 L-polynomial".into()));
    }
    Ok((a1, twice_a2 / 2))
}

/// Points of the smooth model of `y^2 = F(x)` over the field of `F`.
fn count_points(f: &Field, rhs: &Poly) -> Result<u128> {
    let q = f.order();
    let mut square = vec![false; q as usize];
    for x in f.elements() {
        square[f.index(&f.sqr(&x)) as usize] = true;
    }
    let mut n: u128 = 0;
    for x in f.elements() {
        let v = rhs.eval(&x);
        n += if v.is_zero() {
            1
        } else if square[f.index(&v) as usize] {
            2
        } else {
            0
        };
    }
    n += match rhs.degree() {
        Some(5) => 1,
        Some(6) => {
            if square[f.index(&rhs.leading()) as usize] {
                2
            } else {
                0
            }
        }
        _ => return Err(Error::SingularCurve("not a quintic or sextic model".into())),
    };
    Ok(n)
}

/// p-rank from the L-polynomial: the number of p-adic unit roots.
pub fn lpoly_prank(c: &Genus2Curve) -> Result<u8> {
    let (a1, a2) = lpoly_coefficients(c)?;
    let p = c.field().p() as i128;
    Ok(if a2 % p != 0 {
        2
    } else if a1 % p != 0 {
        1
    } else {
        0
    })
}

/// Coefficient of `x^(p-1)` in `(x(x-1)(x-λ))^((p-1)/2)`; zero iff `y^2 = x(x-1)(x-λ)` is
/// supersingular.
pub fn elliptic_hasse(f: &Field, lambda: &FieldElement) -> Result<FieldElement> {
    if lambda.is_zero() || *lambda == f.one() {
        return Err(Error::Domain { op: "elliptic_hasse", detail: "λ must not be 0 or 1".into() });
    }
    let cubic = [f.zero(), *lambda, f.neg(&f.add(&f.one(), lambda)), f.one()];
    let p = f.p() as usize;
    let c = truncated_power(f, &cubic, (p - 1) / 2, p);
    Ok(c[p - 1])
}

/// `j(E_λ) = 256 (λ^2 - λ + 1)^3 / (λ^2 (λ - 1)^2)`.
pub fn legendre_j_invariant(f: &Field, lambda: &FieldElement) -> Result<FieldElement> {
    let one = f.one();
    let l1 = f.sub(lambda, &one);
    let num = f.scale(&f.pow(&f.add(&f.sub(&f.sqr(lambda), lambda), &one), 3), 256);
    f.div(&num, &f.mul(&f.sqr(lambda), &f.sqr(&l1)))
}

/// `(p-1)/12 + (1 - (-1/p))/4 + (1 - (-3/p))/3`, the number of supersingular `j`-invariants.
pub fn supersingular_count(p: u64) -> Result<u64> {
    if p < 5 {
        return Err(Error::Domain { op: "supersingular_count", detail: format!("p = {p} is below 5") });
    }
    let l1 = legendre_symbol(-1, p)? as i64;
    let l3 = legendre_symbol(-3, p)? as i64;
    let v = Ratio::new(p as i64 - 1, 12) + Ratio::new(1 - l1, 4) + Ratio::new(1 - l3, 3);
    if !v.is_integer() || v < Ratio::from_integer(0) {
        return Err(Error::NonIntegral { name: "supersingular_count".into(), p, value: v.to_string() });
    }
    Ok(v.to_integer() as u64)
}

/// Distinct `j(E_λ)` with `elliptic_hasse(λ) = 0`, over `λ ∈ F_{p^2} \ {0, 1}`.
pub fn supersingular_j_invariants(p: u64) -> Result<Vec<FieldElement>> {
    let f = field(p, 2)?;
    let mut js = HashSet::new();
    for lambda in f.elements().skip(2) {
        if lambda == f.one() {
            continue;
        }
        if elliptic_hasse(&f, &lambda)?.is_zero() {
            js.insert(legendre_j_invariant(&f, &lambda)?);
        }
    }
    let mut out: Vec<_> = js.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime_field;

    #[test]
    fn hasse_witt_examples_in_characteristic_three() {
        let f3 = prime_field(3).unwrap();
        let c = Genus2Curve::from_i64s(&f3, &[], &[0, -1, 0, 0, 0, 1]).unwrap();
        assert_eq!(hasse_witt(&c), Matrix2::from_i64s(&f3, [[0, 1], [-1, 0]]));
        let c = Genus2Curve::from_i64s(&f3, &[], &[1, 0, 0, 0, 0, 1]).unwrap();
        let m = hasse_witt(&c);
        assert_eq!(m, Matrix2::from_i64s(&f3, [[0, 1], [0, 0]]));
        assert_eq!(eo_type(&m), EoType::SUPERSINGULAR_NON_SUPERSPECIAL);
    }

    #[test]
    fn lpoly_examples() {
        let f3 = prime_field(3).unwrap();
        let c = Genus2Curve::from_i64s(&f3, &[], &[0, -1, 0, 0, 0, 1]).unwrap();
        assert_eq!(lpoly_prank(&c).unwrap(), 2);
        let c = Genus2Curve::from_i64s(&f3, &[], &[1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(lpoly_prank(&c).unwrap(), 0);
    }

    #[test]
    fn cartier_manin_round_trip() {
        let f = field(5, 3).unwrap();
        let m = Matrix2::new(&f, [[f.generator(), f.one()], [f.from_i64(3), f.sqr(&f.generator())]]);
        assert_eq!(hasse_witt_from_cartier_manin(&cartier_manin(&m)), m);
        assert_eq!(cartier_manin(&hasse_witt_from_cartier_manin(&m)), m);
    }

    #[test]
    fn elliptic_examples() {
        let f3 = prime_field(3).unwrap();
        assert!(elliptic_hasse(&f3, &f3.from_i64(-1)).unwrap().is_zero());
        let f5 = prime_field(5).unwrap();
        // (x(x-1)(x-2))^2 = x^6 - 6x^5 + 13x^4 - ..., so the x^4 coefficient is 13 = 3 mod 5.
        assert_eq!(elliptic_hasse(&f5, &f5.from_i64(2)).unwrap(), f5.from_i64(3));
        assert!(elliptic_hasse(&f5, &f5.one()).is_err());
    }

    #[test]
    fn supersingular_count_examples() {
        assert_eq!(supersingular_count(7).unwrap(), 1);
        assert_eq!(supersingular_count(11).unwrap(), 2);
        assert_eq!(supersingular_count(13).unwrap(), 1);
        assert_eq!(supersingular_j_invariants(13).unwrap().len(), 1);
    }
}
