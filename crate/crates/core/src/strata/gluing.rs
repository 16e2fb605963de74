//! `W_{>=C2xC2}`: the elliptic quotients of a curve with a non-hyperelliptic involution, and
//! the converse construction gluing two Legendre curves along their 2-torsion.

use std::fmt;

use crate::algebra::{field, Field, FieldElement, Poly};
use crate::curve::Genus2Curve;
use crate::eo::{eo_type_of, elliptic_hasse};
use crate::error::{Error, Result};

/// Permutations of the three nonzero 2-torsion points of a level-2 structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum S3 {
    Id,
    T12,
    T13,
    T23,
    C123,
    C132,
}

impl S3 {
    pub const ALL: [S3; 6] = [S3::Id, S3::T12, S3::T13, S3::T23, S3::C123, S3::C132];

    /// Images of `1, 2, 3`.
    fn images(&self) -> [u8; 3] {
        match self {
            S3::Id => [1, 2, 3],
            S3::T12 => [2, 1, 3],
            S3::T13 => [3, 2, 1],
            S3::T23 => [1, 3, 2],
            S3::C123 => [2, 3, 1],
            S3::C132 => [3, 1, 2],
        }
    }

    fn from_images(im: [u8; 3]) -> S3 {
        *S3::ALL.iter().find(|s| s.images() == im).expect("a permutation of 1, 2, 3")
    }

    /// `self` then `other`; with this convention `f_a ∘ f_b = f_{a.then(b)}`.
    pub fn then(&self, other: &S3) -> S3 {
        let a = self.images();
        let b = other.images();
        S3::from_images(a.map(|i| b[i as usize - 1]))
    }

    pub fn order(&self) -> u8 {
        match self {
            S3::Id => 1,
            S3::T12 | S3::T13 | S3::T23 => 2,
            S3::C123 | S3::C132 => 3,
        }
    }
}

impl fmt::Display for S3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            S3::Id => "id",
            S3::T12 => "(12)",
            S3::T13 => "(13)",
            S3::T23 => "(23)",
            S3::C123 => "(123)",
            S3::C132 => "(132)",
        })
    }
}

fn check_legendre(f: &Field, l: &FieldElement, op: &'static str) -> Result<()> {
    if l.is_zero() || *l == f.one() {
        return Err(Error::Domain { op, detail: "λ must not be 0 or 1".into() });
    }
    Ok(())
}

/// The change of Legendre parameter `f_τ(λ)` induced by relabelling the 2-torsion.
pub fn level2_action(tau: S3, f: &Field, l: &FieldElement) -> Result<FieldElement> {
    check_legendre(f, l, "level2_action")?;
    let one = f.one();
    let one_minus = f.sub(&one, l);
    Ok(match tau {
        S3::Id => *l,
        S3::T12 => one_minus,
        S3::T13 => f.inv(l).expect("λ ≠ 0"),
        S3::T23 => f.div(l, &f.sub(l, &one))?,
        S3::C123 => f.div(&f.sub(l, &one), l)?,
        S3::C132 => f.inv(&one_minus).expect("λ ≠ 1"),
    })
}

/// The curve `y^2 = (x^2 - 1)(x^2 - λ1/λ2)(x^2 - λ1(λ2 - 1)/(λ2(λ1 - 1)))`.
pub fn glue(f: &Field, l1: &FieldElement, l2: &FieldElement) -> Result<Genus2Curve> {
    check_legendre(f, l1, "glue")?;
    check_legendre(f, l2, "glue")?;
    if l1 == l2 {
        return Err(Error::Domain { op: "glue", detail: "λ1 and λ2 must differ".into() });
    }
    let one = f.one();
    let r1 = f.div(l1, l2)?;
    let r2 = f.div(&f.mul(l1, &f.sub(l2, &one)), &f.mul(l2, &f.sub(l1, &one)))?;
    let q = |r: FieldElement| Poly::new(f, vec![f.neg(&r), f.zero(), one]);
    let sextic = q(one).mul(&q(r1)).mul(&q(r2));
    Genus2Curve::from_f(sextic).map_err(|e| Error::Internal(format!("glued curve is singular: {e}")))
}

/// A square root of `x`, moving to a quadratic extension of `f` if needed.
fn sqrt_somewhere(f: &Field, x: &FieldElement) -> Result<(Field, FieldElement)> {
    if let Some(r) = f.sqrt(x) {
        return Ok((f.clone(), r));
    }
    let big = field(f.p(), f.degree() * 2)?;
    let xe = crate::algebra::embedding(f, &big)?.apply(x);
    let r = big.sqrt(&xe).ok_or_else(|| Error::Internal("no square root in the quadratic extension".into()))?;
    Ok((big, r))
}

/// `λ1, λ2` together with `ν1 = (λ2(λ1 - 1)/(λ1 - λ2))^{1/2}`, `ν2 = (λ1(λ2 - 1)/(λ1 - λ2))^{1/2}`
/// and `s = λ2 (λ1 - 1)^{1/2} / (λ1 (λ2 - 1)^{1/2})`, all over `field`.
#[derive(Clone, Debug)]
pub struct GluingDatum {
    pub field: Field,
    pub l1: FieldElement,
    pub l2: FieldElement,
    pub nu1: FieldElement,
    pub nu2: FieldElement,
    pub s: FieldElement,
}

impl GluingDatum {
    pub fn new(f: &Field, l1: &FieldElement, l2: &FieldElement) -> Result<Self> {
        glue(f, l1, l2)?;
        let one = f.one();
        let d = f.sub(l1, l2);
        let targets = [
            f.div(&f.mul(l2, &f.sub(l1, &one)), &d)?,
            f.div(&f.mul(l1, &f.sub(l2, &one)), &d)?,
            f.div(&f.sub(l1, &one), &f.sub(l2, &one))?,
        ];
        let mut fld = f.clone();
        let mut roots: Vec<FieldElement> = Vec::new();
        for t in targets {
            let e = crate::algebra::embedding(f, &fld)?;
            let (g, r) = sqrt_somewhere(&fld, &e.apply(&t))?;
            if !g.same_field(&fld) {
                let up = crate::algebra::embedding(&fld, &g)?;
                roots = roots.iter().map(|x| up.apply(x)).collect();
                fld = g;
            }
            roots.push(r);
        }
        let e = crate::algebra::embedding(f, &fld)?;
        let (l1, l2) = (e.apply(l1), e.apply(l2));
        let s = fld.div(&fld.mul(&l2, &roots[2]), &l1)?;
        Ok(GluingDatum { field: fld, l1, l2, nu1: roots[0], nu2: roots[1], s })
    }

    /// Checks, as identities in the function field of the glued curve, that
    /// `ρ1(x, y) = (ν1^2 (x^2 - c), ν1^3 y)` lands on `E_{λ1}`,
    /// `ρ2(x, y) = (-ν2^2 (1/x^2 - 1/c), ν2^3 s y / x^3)` lands on `E_{λ2}`, and
    /// `ψ1 ∘ ρ1 = ψ2 ∘ ρ2` for `ψi(x) = (1 - λi) x / (x - λi)`, where
    /// `c = λ1(λ2 - 1)/(λ2(λ1 - 1))`.
    pub fn verify_maps(&self) -> Result<bool> {
        let f = &self.field;
        let curve = glue(f, &self.l1, &self.l2)?;
        let one = f.one();
        let c = f.div(&f.mul(&self.l1, &f.sub(&self.l2, &one)), &f.mul(&self.l2, &f.sub(&self.l1, &one)))?;
        let c_inv = f.inv(&c).ok_or(Error::DivisionByZero)?;
        let e1 = EllipticModel::legendre(f, &self.l1);
        let e2 = EllipticModel::legendre(f, &self.l2);
        let nu1_sq = f.sqr(&self.nu1);
        let nu2_sq = f.sqr(&self.nu2);
        let ff = FunctionField::new(&curve);
        // ρ1: X = ν1^2 (x^2 - c), Y = ν1^3 y, no denominator.
        let x1 = Poly::new(f, vec![f.neg(&f.mul(&nu1_sq, &c)), f.zero(), nu1_sq]);
        let rho1 = ff.on_model(&e1, &ff.poly(x1.clone()), &ff.y_times(&Poly::constant(f, f.mul(&nu1_sq, &self.nu1))), &Poly::one(f));
        // ρ2: X = -ν2^2 (1 - x^2/c) / x^2, Y = ν2^3 s y / x^3.
        let x2 = Poly::new(f, vec![f.neg(&nu2_sq), f.zero(), f.mul(&nu2_sq, &c_inv)]);
        let y2 = f.mul(&f.mul(&nu2_sq, &self.nu2), &self.s);
        let rho2 = ff.on_model(&e2, &ff.poly(x2.clone()), &ff.y_times(&Poly::constant(f, y2)), &Poly::x(f));
        // ψ1(ρ1) = (1 - λ1) X1 / (X1 - λ1) and ψ2(ρ2) = (1 - λ2) N2 / (N2 - λ2 x^2), with N2 = x^2 X2.
        let lhs_n = x1.scale(&f.sub(&one, &self.l1));
        let lhs_d = x1.sub(&Poly::constant(f, self.l1));
        let x_sq = Poly::monomial(f, one, 2);
        let rhs_n = x2.scale(&f.sub(&one, &self.l2));
        let rhs_d = x2.sub(&x_sq.scale(&self.l2));
        let psi = lhs_n.mul(&rhs_d) == rhs_n.mul(&lhs_d);
        Ok(rho1 && rho2 && psi)
    }
}

/// The p-rank of the glued curve is the number of ordinary factors `E_{λ1}`, `E_{λ2}`.
pub fn prank_additivity_check(f: &Field, l1: &FieldElement, l2: &FieldElement) -> Result<bool> {
    let c = glue(f, l1, l2)?;
    let expected = [l1, l2].iter().map(|l| elliptic_hasse(f, l).map(|h| u8::from(!h.is_zero()))).sum::<Result<u8>>()?;
    Ok(eo_type_of(&c).f_rank == expected)
}

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticModel {
    pub field: Field,
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub a3: FieldElement,
    pub a4: FieldElement,
    pub a6: FieldElement,
}

impl EllipticModel {
    /// `y^2 = x (x - 1)(x - λ)`.
    pub fn legendre(f: &Field, l: &FieldElement) -> Self {
        let z = f.zero();
        EllipticModel { field: f.clone(), a1: z, a2: f.neg(&f.add(&f.one(), l)), a3: z, a4: *l, a6: z }
    }

    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = f.add(&f.sqr(a1), &f.scale(a2, 4));
        let b4 = f.add(&f.scale(a4, 2), &f.mul(a1, a3));
        let b6 = f.add(&f.sqr(a3), &f.scale(a6, 4));
        let b8 = f.sub(
            &f.add(&f.add(&f.mul(&f.sqr(a1), a6), &f.scale(&f.mul(a2, a6), 4)), &f.mul(a2, &f.sqr(a3))),
            &f.add(&f.mul(&f.mul(a1, a3), a4), &f.sqr(a4)),
        );
        let t1 = f.neg(&f.mul(&f.sqr(&b2), &b8));
        let t2 = f.scale(&f.pow(&b4, 3), 8);
        let t3 = f.scale(&f.sqr(&b6), 27);
        let t4 = f.scale(&f.mul(&f.mul(&b2, &b4), &b6), 9);
        f.add(&f.sub(&f.sub(&t1, &t2), &t3), &t4)
    }

    pub fn j_invariant(&self) -> Result<FieldElement> {
        let f = &self.field;
        let b2 = f.add(&f.sqr(&self.a1), &f.scale(&self.a2, 4));
        let b4 = f.add(&f.scale(&self.a4, 2), &f.mul(&self.a1, &self.a3));
        let c4 = f.sub(&f.sqr(&b2), &f.scale(&b4, 24));
        f.div(&f.pow(&c4, 3), &self.discriminant())
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        let f = &self.field;
        let lhs = f.mul(y, &f.add(&f.add(y, &f.mul(&self.a1, x)), &self.a3));
        let rhs = f.add(&f.mul(&f.add(&f.mul(&f.add(x, &self.a2), x), &self.a4), x), &self.a6);
        lhs == rhs
    }

    pub fn display(&self) -> String {
        let f = &self.field;
        let rhs = Poly::new(f, vec![self.a6, self.a4, self.a2, f.one()]).display();
        // a1 x y + a3 y, written as (a1 x + a3) y.
        let lin = Poly::new(f, vec![self.a3, self.a1]);
        if lin.is_zero() {
            format!("y^2 = {rhs}")
        } else {
            format!("y^2 + ({})*y = {rhs}", lin.display())
        }
    }
}

/// `y^2 + (g1 x(x+1) + g0) y = f3 x^3 (x+1)^3 + (f2 - f1) x^2 (x+1)^2 + f1 x(x+1) + f0`, the shape of
/// a curve with the involution `x ↦ -x - 1`.
#[derive(Clone, Debug)]
pub struct SigmaForm {
    pub field: Field,
    pub g0: FieldElement,
    pub g1: FieldElement,
    pub f0: FieldElement,
    pub f1: FieldElement,
    pub f2: FieldElement,
    pub f3: FieldElement,
}

impl SigmaForm {
    pub fn from_i64s(f: &Field, [g0, g1, f0, f1, f2, f3]: [i64; 6]) -> Self {
        let e = |v| f.from_i64(v);
        SigmaForm { field: f.clone(), g0: e(g0), g1: e(g1), f0: e(f0), f1: e(f1), f2: e(f2), f3: e(f3) }
    }

    fn polys(&self) -> (Poly, Poly) {
        let f = &self.field;
        let u = Poly::from_i64s(f, &[0, 1, 1]);
        let g = u.scale(&self.g1).add(&Poly::constant(f, self.g0));
        let rhs = u
            .pow(3)
            .scale(&self.f3)
            .add(&u.sqr().scale(&f.sub(&self.f2, &self.f1)))
            .add(&u.scale(&self.f1))
            .add(&Poly::constant(f, self.f0));
        (g, rhs)
    }

    pub fn curve(&self) -> Result<Genus2Curve> {
        let (g, rhs) = self.polys();
        Genus2Curve::new(g, rhs)
    }

    /// `64 f0 - 20 f1 + 4 f2 - f3 + 16 g0^2 - 8 g0 g1 + g1^2`.
    pub fn lambda(&self) -> FieldElement {
        let f = &self.field;
        let terms = [
            f.scale(&self.f0, 64),
            f.neg(&f.scale(&self.f1, 20)),
            f.scale(&self.f2, 4),
            f.neg(&self.f3),
            f.scale(&f.sqr(&self.g0), 16),
            f.neg(&f.scale(&f.mul(&self.g0, &self.g1), 8)),
            f.sqr(&self.g1),
        ];
        terms.iter().fold(f.zero(), |a, t| f.add(&a, t))
    }
}

/// `E1 = C/<σ>`, `E2 = C/<ισ>` and the constant `λ` entering `E2`.
#[derive(Clone, Debug)]
pub struct QuotientCurves {
    pub e1: EllipticModel,
    pub e2: EllipticModel,
    pub lambda: FieldElement,
}

/// The two elliptic quotients of a curve in σ-form.
pub fn quotient_curves(c: &SigmaForm) -> Result<QuotientCurves> {
    c.curve()?;
    let f = &c.field;
    let lambda = c.lambda();
    let e1 = EllipticModel {
        field: f.clone(),
        a1: c.g1,
        a3: f.mul(&c.f3, &c.g0),
        a2: f.sub(&c.f2, &c.f1),
        a4: f.mul(&c.f1, &c.f3),
        a6: f.mul(&c.f0, &f.sqr(&c.f3)),
    };
    let sum = |terms: &[FieldElement]| terms.iter().fold(f.zero(), |a, t| f.add(&a, t));
    let g0sq = f.sqr(&c.g0);
    let e2 = EllipticModel {
        field: f.clone(),
        a1: f.sub(&c.g1, &f.scale(&c.g0, 4)),
        a3: f.neg(&f.mul(&lambda, &c.g0)),
        a2: sum(&[
            f.scale(&c.f0, 48),
            f.neg(&f.scale(&c.f1, 9)),
            c.f2,
            f.scale(&g0sq, 8),
            f.neg(&f.scale(&f.mul(&c.g0, &c.g1), 2)),
        ]),
        a4: f.mul(&lambda, &sum(&[f.scale(&c.f0, 12), f.neg(&c.f1), g0sq])),
        a6: f.mul(&f.sqr(&lambda), &c.f0),
    };
    for e in [&e1, &e2] {
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve(format!("degenerate quotient {}", e.display())));
        }
    }
    Ok(QuotientCurves { e1, e2, lambda })
}

/// Checks, as identities in the function field of `c`, that
/// `π1(x, y) = (f3 x(x+1), f3 y)` maps onto `E1` and
/// `π2(x, y) = (-λ x(x+1)/(2x+1)^2, λ(y + (x+1)(g1 x(x+1) + g0))/(2x+1)^3)` maps onto `E2`.
pub fn verify_quotient_maps(c: &SigmaForm) -> Result<(bool, bool)> {
    let q = quotient_curves(c)?;
    let curve = c.curve()?;
    let f = &c.field;
    let ff = FunctionField::new(&curve);
    let u = Poly::from_i64s(f, &[0, 1, 1]);
    let pi1 = ff.on_model(&q.e1, &ff.poly(u.scale(&c.f3)), &ff.y_times(&Poly::constant(f, c.f3)), &Poly::one(f));
    let (g, _) = c.polys();
    let nx = u.scale(&f.neg(&q.lambda));
    let ny_const = Poly::from_i64s(f, &[1, 1]).mul(&g).scale(&q.lambda);
    let ny = ff.add(&ff.y_times(&Poly::constant(f, q.lambda)), &ff.poly(ny_const));
    let pi2 = ff.on_model(&q.e2, &ff.poly(nx), &ny, &Poly::from_i64s(f, &[1, 2]));
    Ok((pi1, pi2))
}

/// `F(x)[y] / (y^2 + g y - f)`, elements `a + b y` with polynomial `a, b`.
struct FunctionField {
    g: Poly,
    f: Poly,
}

#[derive(Clone)]
struct FfElem {
    a: Poly,
    b: Poly,
}

impl FunctionField {
    fn new(c: &Genus2Curve) -> Self {
        FunctionField { g: c.g().clone(), f: c.f().clone() }
    }

    fn poly(&self, a: Poly) -> FfElem {
        let z = Poly::zero(a.field());
        FfElem { a, b: z }
    }

    fn y_times(&self, b: &Poly) -> FfElem {
        FfElem { a: Poly::zero(b.field()), b: b.clone() }
    }

    fn add(&self, x: &FfElem, y: &FfElem) -> FfElem {
        FfElem { a: x.a.add(&y.a), b: x.b.add(&y.b) }
    }

    fn scale_poly(&self, x: &FfElem, p: &Poly) -> FfElem {
        FfElem { a: x.a.mul(p), b: x.b.mul(p) }
    }

    fn mul(&self, x: &FfElem, y: &FfElem) -> FfElem {
        // y^2 = f - g y
        let bb = x.b.mul(&y.b);
        FfElem { a: x.a.mul(&y.a).add(&bb.mul(&self.f)), b: x.a.mul(&y.b).add(&y.a.mul(&x.b)).sub(&bb.mul(&self.g)) }
    }

    /// Whether `(X, Y) = (nx / d^2, ny / d^3)` satisfies the Weierstrass equation of `e`.
    fn on_model(&self, e: &EllipticModel, nx: &FfElem, ny: &FfElem, d: &Poly) -> bool {
        let fl = &e.field;
        let c = |x: &FieldElement| Poly::constant(fl, *x);
        let d2 = d.sqr();
        let d4 = d2.sqr();
        let d6 = d4.mul(&d2);
        // ny^2 + (a1 nx + a3 d^2) d ny - nx^3 - a2 nx^2 d^2 - a4 nx d^4 - a6 d^6
        let lin = self.add(&self.scale_poly(nx, &c(&e.a1)), &self.poly(d2.mul(&c(&e.a3))));
        let lhs = self.add(&self.mul(ny, ny), &self.scale_poly(&self.mul(&lin, ny), d));
        let nx2 = self.mul(nx, nx);
        let nx3 = self.mul(&nx2, nx);
        let rhs = self.add(
            &self.add(&nx3, &self.scale_poly(&nx2, &d2.mul(&c(&e.a2)))),
            &self.add(&self.scale_poly(nx, &d4.mul(&c(&e.a4))), &self.poly(d6.mul(&c(&e.a6)))),
        );
        lhs.a == rhs.a && lhs.b == rhs.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime_field;

    #[test]
    fn level2_examples() {
        let f = prime_field(11).unwrap();
        assert_eq!(level2_action(S3::Id, &f, &f.from_i64(5)).unwrap(), f.from_i64(5));
        assert_eq!(level2_action(S3::T13, &f, &f.from_i64(2)).unwrap(), f.inv(&f.from_i64(2)).unwrap());
        assert!(level2_action(S3::T12, &f, &f.one()).is_err());
    }

    #[test]
    fn level2_action_is_a_group_action() {
        let f = prime_field(11).unwrap();
        for l in (2..11).map(|v| f.from_i64(v)) {
            for a in S3::ALL {
                for b in S3::ALL {
                    let lhs = level2_action(a, &f, &level2_action(b, &f, &l).unwrap()).unwrap();
                    assert_eq!(lhs, level2_action(a.then(&b), &f, &l).unwrap(), "{a} {b}");
                }
            }
        }
        assert_eq!(S3::T12.then(&S3::T13), S3::C123);
    }

    #[test]
    fn glue_example() {
        let f = prime_field(11).unwrap();
        let c = glue(&f, &f.from_i64(2), &f.from_i64(3)).unwrap();
        let r1 = f.div(&f.from_i64(2), &f.from_i64(3)).unwrap();
        let r2 = f.div(&f.from_i64(4), &f.from_i64(3)).unwrap();
        let q = |r: FieldElement| Poly::new(&f, vec![f.neg(&r), f.zero(), f.one()]);
        assert_eq!(c.f(), &q(f.one()).mul(&q(r1)).mul(&q(r2)));
    }

    #[test]
    fn quotient_example() {
        let f = prime_field(11).unwrap();
        let s = SigmaForm::from_i64s(&f, [0, 1, 1, 0, 0, 1]);
        assert_eq!(s.lambda(), f.from_i64(9));
        let q = quotient_curves(&s).unwrap();
        assert_eq!(q.e1.a1, f.one());
        assert_eq!(verify_quotient_maps(&s).unwrap(), (true, true));
    }

    #[test]
    fn gluing_maps() {
        let f = prime_field(13).unwrap();
        let d = GluingDatum::new(&f, &f.from_i64(3), &f.from_i64(5)).unwrap();
        assert_eq!(f.p(), d.field.p());
        assert!(d.verify_maps().unwrap());
    }
}
