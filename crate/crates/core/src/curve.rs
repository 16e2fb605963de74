//! Genus-2 curve models `y^2 + g(x) y = f(x)`, Möbius changes of variable and Weierstrass
//! points.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{embedding, field, field_from_json, Field, FieldCtx, FieldElement, FieldJson, Poly};
use crate::error::{Error, Result};

/// A point of `P^1` over some field; `Infinity` sorts after every finite point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Finite(FieldElement),
    Infinity,
}

/// `x ↦ (a x + b) / (c x + d)` with `ad - bc ≠ 0`.
#[derive(Clone)]
pub struct MobiusMap {
    field: Field,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl MobiusMap {
    pub fn new(field: &Field, a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let m = MobiusMap { field: field.clone(), a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateMobius);
        }
        Ok(m)
    }

    pub fn from_i64s(field: &Field, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(field, field.from_i64(a), field.from_i64(b), field.from_i64(c), field.from_i64(d))
    }

    pub fn identity(field: &Field) -> Self {
        MobiusMap { field: field.clone(), a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Self {
        loop {
            let [a, b, c, d] = [(); 4].map(|_| field.random(rng));
            if let Ok(m) = Self::new(field, a, b, c, d) {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn det(&self) -> FieldElement {
        let f = &self.field;
        f.sub(&f.mul(&self.a, &self.d), &f.mul(&self.b, &self.c))
    }

    pub fn apply(&self, pt: &P1Point) -> P1Point {
        let f = &self.field;
        match pt {
            P1Point::Finite(x) => {
                let den = f.add(&f.mul(&self.c, x), &self.d);
                match f.inv(&den) {
                    None => P1Point::Infinity,
                    Some(inv) => P1Point::Finite(f.mul(&f.add(&f.mul(&self.a, x), &self.b), &inv)),
                }
            }
            P1Point::Infinity => match f.inv(&self.c) {
                None => P1Point::Infinity,
                Some(inv) => P1Point::Finite(f.mul(&self.a, &inv)),
            },
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let f = &self.field;
        let dot = |x: &FieldElement, y: &FieldElement, z: &FieldElement, w: &FieldElement| {
            f.add(&f.mul(x, y), &f.mul(z, w))
        };
        MobiusMap {
            field: f.clone(),
            a: dot(&self.a, &other.a, &self.b, &other.c),
            b: dot(&self.a, &other.b, &self.b, &other.d),
            c: dot(&self.c, &other.a, &self.d, &other.c),
            d: dot(&self.c, &other.b, &self.d, &other.d),
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        let f = &self.field;
        MobiusMap { field: f.clone(), a: self.d, b: f.neg(&self.b), c: f.neg(&self.c), d: self.a }
    }

    /// Scale so that the first nonzero entry of `(a, b, c, d)` is one; equal as elements of
    /// `PGL_2` iff the normalized forms are identical.
    pub fn normalized(&self) -> [FieldElement; 4] {
        let f = &self.field;
        let entries = [self.a, self.b, self.c, self.d];
        let lead = entries.iter().find(|e| !e.is_zero()).expect("nondegenerate map");
        let inv = f.inv(lead).expect("nonzero");
        entries.map(|e| f.mul(&e, &inv))
    }

    pub fn projectively_equal(&self, other: &MobiusMap) -> bool {
        self.field.same_field(&other.field) && self.normalized() == other.normalized()
    }

    pub fn embed(&self, target: &Field) -> Result<MobiusMap> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, target)?;
        Ok(MobiusMap {
            field: target.clone(),
            a: e.apply(&self.a),
            b: e.apply(&self.b),
            c: e.apply(&self.c),
            d: e.apply(&self.d),
        })
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        write!(
            fm,
            "x -> ({}*x + {}) / ({}*x + {})",
            f.display(&self.a),
            f.display(&self.b),
            f.display(&self.c),
            f.display(&self.d)
        )
    }
}

/// A smooth genus-2 curve `y^2 + g(x) y = f(x)` in odd characteristic.
#[derive(Clone, PartialEq, Eq)]
pub struct Genus2Curve {
    field: Field,
    g: Poly,
    f: Poly,
}

/// The Weierstrass points of a curve, over the splitting field of its sextic.
#[derive(Clone, Debug)]
pub struct WeierstrassPoints {
    pub field: Field,
    /// Sorted; `Infinity` (present for quintic models) comes last.
    pub points: Vec<P1Point>,
}

impl Genus2Curve {
    pub fn new(g: Poly, f: Poly) -> Result<Self> {
        if !g.field().same_field(f.field()) {
            return Err(Error::FieldMismatch("g and f have different coefficient fields".into()));
        }
        if g.degree().is_some_and(|d| d > 3) {
            return Err(Error::SingularCurve("deg g must be at most 3".into()));
        }
        if f.degree().is_some_and(|d| d > 6) {
            return Err(Error::SingularCurve("deg f must be at most 6".into()));
        }
        let curve = Genus2Curve { field: f.field().clone(), g, f };
        let big_f = curve.rhs();
        match big_f.degree() {
            Some(5) | Some(6) => {}
            d => {
                return Err(Error::SingularCurve(format!(
                    "f + g^2/4 has degree {}, expected 5 or 6",
                    d.map_or("-inf".to_string(), |d| d.to_string())
                )))
            }
        }
        if !big_f.is_squarefree() {
            return Err(Error::SingularCurve("f + g^2/4 has a repeated root".into()));
        }
        Ok(curve)
    }

    /// `y^2 = f(x)`.
    pub fn from_f(f: Poly) -> Result<Self> {
        let g = Poly::zero(f.field());
        Self::new(g, f)
    }

    pub fn from_i64s(field: &Field, g: &[i64], f: &[i64]) -> Result<Self> {
        Self::new(Poly::from_i64s(field, g), Poly::from_i64s(field, f))
    }

    /// A uniformly random smooth curve `y^2 = F(x)` with `deg F ∈ {5, 6}`.
    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<FieldElement> = (0..7).map(|_| field.random(rng)).collect();
            if let Ok(c) = Self::from_f(Poly::new(field, coeffs)) {
                return c;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `F = f + g^2/4`, the right-hand side after completing the square.
    pub fn rhs(&self) -> Poly {
        if self.g.is_zero() {
            return self.f.clone();
        }
        let quarter = self.field.inv(&self.field.from_i64(4)).expect("odd characteristic");
        self.f.add(&self.g.sqr().scale(&quarter))
    }

    pub fn is_completed(&self) -> bool {
        self.g.is_zero()
    }

    /// The model `y^2 = f + g^2/4`.
    pub fn complete_square(&self) -> Genus2Curve {
        Genus2Curve { field: self.field.clone(), g: Poly::zero(&self.field), f: self.rhs() }
    }

    /// `y^2 = (cx + d)^6 F((ax + b)/(cx + d))`; Weierstrass points move to their preimages.
    pub fn apply_mobius(&self, m: &MobiusMap) -> Result<Genus2Curve> {
        if !m.field().same_field(&self.field) {
            return Err(Error::FieldMismatch("Möbius map and curve live over different fields".into()));
        }
        let new_f = self.rhs().compose_mobius(6, &m.a, &m.b, &m.c, &m.d);
        Genus2Curve::from_f(new_f)
    }

    /// A degree-6 model via `x ↦ r + 1/x` for the least `r` that is not a root of `F`.
    ///
    /// If every element of the field is a root (only possible over `F_3` and `F_5`), the curve is
    /// first moved to the quadratic extension.
    pub fn sextic_normalize(&self) -> Result<(Genus2Curve, MobiusMap)> {
        let c = self.complete_square();
        if c.f.degree() == Some(6) {
            let id = MobiusMap::identity(&self.field);
            return Ok((c, id));
        }
        let fld = &self.field;
        if let Some(r) = fld.elements().find(|r| !c.f.eval(r).is_zero()) {
            let m = MobiusMap::new(fld, r, fld.one(), fld.one(), fld.zero())?;
            let out = c.apply_mobius(&m)?;
            return Ok((out, m));
        }
        let bigger = field(fld.p(), fld.degree() * 2)?;
        c.embed(&bigger)?.sextic_normalize()
    }

    pub fn embed(&self, target: &Field) -> Result<Genus2Curve> {
        Ok(Genus2Curve { field: target.clone(), g: self.g.embed(target)?, f: self.f.embed(target)? })
    }

    pub fn weierstrass_points(&self) -> Result<WeierstrassPoints> {
        let big_f = self.rhs();
        let split = big_f.splitting_data()?;
        let mut points: Vec<P1Point> = split.roots.into_iter().map(P1Point::Finite).collect();
        if big_f.degree() == Some(5) {
            points.push(P1Point::Infinity);
        }
        Ok(WeierstrassPoints { field: split.field, points })
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            field: self.field.to_json(),
            g: coeffs_to_json(&self.field, &self.g),
            f: coeffs_to_json(&self.field, &self.f),
        }
    }

    pub fn from_json(json: &CurveJson) -> Result<Self> {
        let fld = field_from_json(&json.field)?;
        let g = coeffs_from_json(&fld, &json.g)?;
        let f = coeffs_from_json(&fld, &json.f)?;
        Self::new(g, f)
    }

    /// `y^2 + (...)y = ...` in human-readable form.
    pub fn display(&self) -> String {
        if self.g.is_zero() {
            format!("y^2 = {}", self.f.display())
        } else {
            format!("y^2 + ({})*y = {}", self.g.display(), self.f.display())
        }
    }
}

impl fmt::Debug for Genus2Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.display(), self.field)
    }
}

/// A coefficient in JSON: a plain integer in prime fields, a coefficient vector otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Vector(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub field: FieldJson,
    pub g: Vec<CoeffJson>,
    pub f: Vec<CoeffJson>,
}

pub fn element_to_coeff_json(fld: &FieldCtx, c: &FieldElement) -> CoeffJson {
    if fld.degree() == 1 {
        CoeffJson::Int(c.coeffs(1)[0] as i64)
    } else {
        CoeffJson::Vector(c.coeffs(fld.degree()).to_vec())
    }
}

pub fn element_from_coeff_json(fld: &FieldCtx, c: &CoeffJson) -> Result<FieldElement> {
    match c {
        CoeffJson::Int(v) => Ok(fld.from_i64(*v)),
        CoeffJson::Vector(v) => fld.from_coeffs(v),
    }
}

fn coeffs_to_json(fld: &FieldCtx, p: &Poly) -> Vec<CoeffJson> {
    p.coeffs().iter().map(|c| element_to_coeff_json(fld, c)).collect()
}

fn coeffs_from_json(fld: &Field, cs: &[CoeffJson]) -> Result<Poly> {
    let coeffs = cs.iter().map(|c| element_from_coeff_json(fld, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(fld, coeffs))
}

/// Parse a comma-separated coefficient list, constant term first.
pub fn parse_coefficients(fld: &Field, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Poly::zero(fld));
    }
    let coeffs = s.split(',').map(|t| fld.parse_element(t)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(fld, coeffs))
}
