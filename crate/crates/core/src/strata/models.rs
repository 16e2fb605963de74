//! Curves realizing points of `W_{>=D4}` and `W_{>=D6}`, and the rational maps back to `P^1`.

use crate::algebra::{field, Field, FieldElement, Poly};
use crate::aut::AutLabel;
use crate::curve::{Genus2Curve, P1Point};
use crate::error::{Error, Result};
use crate::igusa::IgusaPoint;

use super::{stratum_ideal, Stratum};

fn require_on(pt: &IgusaPoint, label: AutLabel) -> Result<()> {
    let ideal = stratum_ideal(Stratum::Group(label), pt.field().p())?;
    if !pt.check_relation() {
        return Err(Error::RelationViolated);
    }
    if !ideal.contains(pt) {
        return Err(Error::Domain { op: "stratum model", detail: format!("{} is not on W_{{>={label}}}", pt.display()) });
    }
    Ok(())
}

/// `3 J2^3 - 160 J2 J4 - 3600 J6`, the denominator shared by the D4 and D6 models.
fn common_denominator(pt: &IgusaPoint) -> FieldElement {
    lin3(pt, 3, -160, -3600)
}

/// `a J2^3 + b J2 J4 + c J6`.
fn lin3(pt: &IgusaPoint, a: i64, b: i64, c: i64) -> FieldElement {
    let f = pt.field();
    let (j2, j4, j6) = (pt.j2(), pt.j4(), pt.j6());
    let t1 = f.mul(&f.from_i64(a), &f.pow(&j2, 3));
    let t2 = f.mul(&f.from_i64(b), &f.mul(&j2, &j4));
    let t3 = f.mul(&f.from_i64(c), &j6);
    f.add(&f.add(&t1, &t2), &t3)
}

fn to_p1(f: &Field, num: FieldElement, den: FieldElement, what: &'static str) -> Result<P1Point> {
    if num.is_zero() && den.is_zero() {
        return Err(Error::SingularStratumPoint(what));
    }
    Ok(match f.inv(&den) {
        Some(inv) => P1Point::Finite(f.mul(&num, &inv)),
        None => P1Point::Infinity,
    })
}

/// `y^2 = x^5 + x^3 + f1 x` with
/// `f1 = (7 J2^3 - 288 J2 J4 + 2160 J6) / (4 (3 J2^3 - 160 J2 J4 - 3600 J6))`.
pub fn d4_model(pt: &IgusaPoint) -> Result<Genus2Curve> {
    require_on(pt, AutLabel::D4)?;
    let f = pt.field();
    let den = f.scale(&common_denominator(pt), 4);
    if den.is_zero() {
        return Err(Error::SingularStratumPoint("D4"));
    }
    let f1 = f.div(&lin3(pt, 7, -288, 2160), &den)?;
    let rhs = Poly::new(f, vec![f.zero(), f1, f.zero(), f.one(), f.zero(), f.one()]);
    Genus2Curve::from_f(rhs)
}

/// `[J2 (11 J2^2 - 480 J4) : 5 J2^3 - 224 J2 J4 - 720 J6]`.
pub fn d4_inverse(pt: &IgusaPoint) -> Result<P1Point> {
    require_on(pt, AutLabel::D4)?;
    let f = pt.field();
    let num = f.mul(&pt.j2(), &f.sub(&f.scale(&f.sqr(&pt.j2()), 11), &f.scale(&pt.j4(), 480)));
    to_p1(f, num, lin3(pt, 5, -224, -720), "D4")
}

/// `y^2 + (x^3 + 1) y = -x^6 - (3 J2^3 - 133 J2 J4 - 2790 J6) / (3 (3 J2^3 - 160 J2 J4 - 3600 J6))`,
/// or in characteristic 3, `y^2 + (-x^2 + x) y = (J6^{1/3} / J2) (x + 1)^6`.
pub fn d6_model(pt: &IgusaPoint) -> Result<Genus2Curve> {
    require_on(pt, AutLabel::D6)?;
    let f = pt.field();
    if f.p() == 3 {
        let c = f.div(&f.inverse_frobenius(&pt.j6()), &pt.j2()).map_err(|_| Error::SingularStratumPoint("D6"))?;
        let g = Poly::from_i64s(f, &[0, 1, -1]);
        let rhs = Poly::from_i64s(f, &[1, 1]).pow(6).scale(&c);
        return Genus2Curve::new(g, rhs);
    }
    let den = f.scale(&common_denominator(pt), 3);
    if den.is_zero() {
        return Err(Error::SingularStratumPoint("D6"));
    }
    let c = f.neg(&f.div(&lin3(pt, 3, -133, -2790), &den)?);
    let g = Poly::from_i64s(f, &[1, 0, 0, 1]);
    let rhs = Poly::new(f, vec![c, f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
    Genus2Curve::new(g, rhs)
}

/// `[J2^3 : J6]` in characteristic 3, else `[J2 (3 J2^2 - 40 J4) : -J2 J4 - 30 J6]`.
pub fn d6_inverse(pt: &IgusaPoint) -> Result<P1Point> {
    require_on(pt, AutLabel::D6)?;
    let f = pt.field();
    if f.p() == 3 {
        return to_p1(f, f.pow(&pt.j2(), 3), pt.j6(), "D6");
    }
    let num = f.mul(&pt.j2(), &f.sub(&f.scale(&f.sqr(&pt.j2()), 3), &f.scale(&pt.j4(), 40)));
    to_p1(f, num, lin3(pt, 0, -1, -30), "D6")
}

/// A primitive cube root of unity, in `f` or its quadratic extension.
fn cube_root_of_unity(f: &Field) -> Result<(Field, FieldElement)> {
    let big = if (f.order() - 1) % 3 == 0 { f.clone() } else { field(f.p(), f.degree() * 2)? };
    let roots = Poly::from_i64s(&big, &[1, 1, 1]).roots()?;
    let w = *roots.first().ok_or_else(|| Error::Internal("x^2 + x + 1 has no root".into()))?;
    Ok((big, w))
}

/// The model `y^2 + g(x) y = f(x)` with `g = -x^2 + x` and
/// `f = f0 x^6 - (f1 + 6f0) x^5 + (f2 + 5f1 + 15f0) x^4 - (2f2 + 5f1 + 10f0) x^3 + f2 x^2 + f1 x + f0`,
/// on which `x ↦ 1/(1 - x)` acts; defined over the field with a primitive cube root of unity.
///
/// The coefficients are those of [`d6_model`] moved along `x ↦ (x + ω)/(x + ω^2)` with
/// `y` rescaled by `3(ω - ω^2)`: `f0 = (1 - c)/27`, `f1 = 2ω(ω - c)/9`, `f2 = 5ω(1 - cω)/9`.
pub fn d6_omega_model(pt: &IgusaPoint) -> Result<Genus2Curve> {
    require_on(pt, AutLabel::D6)?;
    if pt.field().p() == 3 {
        return Err(Error::Domain { op: "d6_omega_model", detail: "not defined in characteristic 3".into() });
    }
    let (big, w) = cube_root_of_unity(pt.field())?;
    let pt = pt.embed(&big)?;
    let f = &big;
    let den = common_denominator(&pt);
    if den.is_zero() {
        return Err(Error::SingularStratumPoint("D6"));
    }
    let (j2c, j2j4, j6) = (f.pow(&pt.j2(), 3), f.mul(&pt.j2(), &pt.j4()), pt.j6());
    // a + b ω as a field element.
    let lin = |a: i64, b: i64| f.add(&f.from_i64(a), &f.mul(&f.from_i64(b), &w));
    let f0 = f.div(&lin3(&pt, 12, -613, -13590), &f.scale(&den, 81))?;
    let n1 = f.sub(&f.sub(&f.mul(&lin(3, 9), &j2c), &f.mul(&lin(133, 480), &j2j4)), &f.mul(&lin(2790, 10800), &j6));
    let f1 = f.div(&f.mul(&f.scale(&w, 2), &n1), &f.scale(&den, 27))?;
    let n2 = f.sub(&f.sub(&f.mul(&lin(9, 3), &j2c), &f.mul(&lin(480, 133), &j2j4)), &f.mul(&lin(10800, 2790), &j6));
    let f2 = f.div(&f.mul(&f.scale(&w, 5), &n2), &f.scale(&den, 27))?;
    let (g0, g1) = (f.zero(), f.one());
    let s = |terms: &[(i64, &FieldElement)]| {
        terms.iter().fold(f.zero(), |acc, (c, x)| f.add(&acc, &f.mul(&f.from_i64(*c), x)))
    };
    let g = Poly::new(f, vec![g0, g1, s(&[(-1, &g1), (-3, &g0)]), g0]);
    let rhs = Poly::new(
        f,
        vec![
            f0,
            f1,
            f2,
            s(&[(-2, &f2), (-5, &f1), (-10, &f0)]),
            s(&[(1, &f2), (5, &f1), (15, &f0)]),
            s(&[(-1, &f1), (-6, &f0)]),
            f0,
        ],
    );
    Genus2Curve::new(g, rhs)
}
