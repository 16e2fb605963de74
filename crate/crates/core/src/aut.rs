//! Reduced automorphism groups as stabilizers of the Weierstrass set in `PGL_2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldElement};
use crate::curve::{Genus2Curve, MobiusMap, P1Point};
use crate::error::{Error, Result};

/// Automorphism group of a genus-2 curve, named by its isomorphism type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AutLabel {
    C2,
    C2xC2,
    D4,
    D6,
    C10,
    C3sD4,
    GL2F3,
    SL2F5,
    /// A reduced group of this order that has no legal label in the characteristic.
    Unknown(usize),
}

impl AutLabel {
    /// Every named label, in the column order of the stratum tables.
    pub const NAMED: [AutLabel; 8] = [
        AutLabel::C2,
        AutLabel::C2xC2,
        AutLabel::D4,
        AutLabel::D6,
        AutLabel::C3sD4,
        AutLabel::GL2F3,
        AutLabel::C10,
        AutLabel::SL2F5,
    ];

    /// `|Aut(C)|`, twice the reduced order.
    pub fn group_order(&self) -> usize {
        2 * self.reduced_order()
    }

    pub fn reduced_order(&self) -> usize {
        match self {
            AutLabel::C2 => 1,
            AutLabel::C2xC2 => 2,
            AutLabel::D4 => 4,
            AutLabel::D6 => 6,
            AutLabel::C10 => 5,
            AutLabel::C3sD4 => 12,
            AutLabel::GL2F3 => 24,
            AutLabel::SL2F5 => 60,
            AutLabel::Unknown(n) => *n,
        }
    }

    /// Whether a curve with this group exists in characteristic `p` (odd).
    pub fn is_legal(&self, p: u64) -> bool {
        match self {
            AutLabel::C2 | AutLabel::C2xC2 | AutLabel::D4 | AutLabel::D6 => p != 2,
            AutLabel::C10 | AutLabel::GL2F3 => p != 2 && p != 5,
            AutLabel::C3sD4 => p != 2 && p != 3 && p != 5,
            AutLabel::SL2F5 => p == 5,
            AutLabel::Unknown(_) => false,
        }
    }

    /// Labels that occur in characteristic `p`, in table column order.
    pub fn legal_labels(p: u64) -> Vec<AutLabel> {
        Self::NAMED.into_iter().filter(|l| l.is_legal(p)).collect()
    }

    pub fn as_str(&self) -> String {
        match self {
            AutLabel::C2 => "C2".into(),
            AutLabel::C2xC2 => "C2xC2".into(),
            AutLabel::D4 => "D4".into(),
            AutLabel::D6 => "D6".into(),
            AutLabel::C10 => "C10".into(),
            AutLabel::C3sD4 => "C3sD4".into(),
            AutLabel::GL2F3 => "GL2F3".into(),
            AutLabel::SL2F5 => "SL2F5".into(),
            AutLabel::Unknown(n) => format!("UNKNOWN({n})"),
        }
    }
}

impl fmt::Display for AutLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl FromStr for AutLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for l in Self::NAMED {
            if l.as_str().eq_ignore_ascii_case(s) {
                return Ok(l);
            }
        }
        if let Some(n) = s.strip_prefix("UNKNOWN(").and_then(|r| r.strip_suffix(')')) {
            return n.parse().map(AutLabel::Unknown).map_err(|_| Error::Parse(format!("bad label {s:?}")));
        }
        Err(Error::Parse(format!("unknown automorphism label {s:?}")))
    }
}

impl Serialize for AutLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_str())
    }
}

impl<'de> Deserialize<'de> for AutLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Label for a reduced group of order `order` in characteristic `p`; orders without a legal
/// label give `Unknown`.
pub fn aut_label(order: usize, p: u64) -> AutLabel {
    let l = match order {
        1 => AutLabel::C2,
        2 => AutLabel::C2xC2,
        4 => AutLabel::D4,
        6 => AutLabel::D6,
        5 => AutLabel::C10,
        12 => AutLabel::C3sD4,
        24 => AutLabel::GL2F3,
        60 => AutLabel::SL2F5,
        n => return AutLabel::Unknown(n),
    };
    if l.is_legal(p) {
        l
    } else {
        AutLabel::Unknown(order)
    }
}

/// The stabilizer of the Weierstrass set, over the splitting field of the sextic.
#[derive(Clone, Debug)]
pub struct ReducedAutGroup {
    pub field: Field,
    pub points: Vec<P1Point>,
    pub elements: Vec<MobiusMap>,
}

impl ReducedAutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MobiusMap) -> Result<bool> {
        let m = m.embed(&self.field)?;
        Ok(self.elements.iter().any(|e| e.projectively_equal(&m)))
    }

    /// Normalized entries of every element, sorted.
    pub fn normalized_elements(&self) -> Vec<[FieldElement; 4]> {
        let mut v: Vec<_> = self.elements.iter().map(|m| m.normalized()).collect();
        v.sort();
        v
    }
}

/// Homogeneous coordinates `(x : z)`.
fn homogeneous(f: &Field, pt: &P1Point) -> (FieldElement, FieldElement) {
    match pt {
        P1Point::Finite(x) => (*x, f.one()),
        P1Point::Infinity => (f.one(), f.zero()),
    }
}

/// The map sending `u, v, w` to `0, ∞, 1`.
fn to_standard_triple(f: &Field, u: &P1Point, v: &P1Point, w: &P1Point) -> MobiusMap {
    let (u0, u1) = homogeneous(f, u);
    let (v0, v1) = homogeneous(f, v);
    let (w0, w1) = homogeneous(f, w);
    // L_t(x : z) = t1 x - t0 z vanishes at t.
    let lu_w = f.sub(&f.mul(&u1, &w0), &f.mul(&u0, &w1));
    let lv_w = f.sub(&f.mul(&v1, &w0), &f.mul(&v0, &w1));
    MobiusMap::new(
        f,
        f.mul(&lv_w, &u1),
        f.neg(&f.mul(&lv_w, &u0)),
        f.mul(&lu_w, &v1),
        f.neg(&f.mul(&lu_w, &v0)),
    )
    .expect("three distinct points determine an invertible map")
}

/// Stabilizer of the Weierstrass set of `c` in `PGL_2` of its splitting field.
///
/// Every element is determined by where it sends the first three Weierstrass points, so the
/// at most 120 maps onto ordered triples are tested.
pub fn reduced_aut_group(c: &Genus2Curve) -> Result<ReducedAutGroup> {
    let w = c.weierstrass_points()?;
    stabilizer(&w.field, &w.points)
}

/// Stabilizer of a set of six distinct points of `P^1`.
pub fn stabilizer(f: &Field, points: &[P1Point]) -> Result<ReducedAutGroup> {
    if points.len() != 6 {
        return Err(Error::Domain { op: "stabilizer", detail: format!("expected 6 points, got {}", points.len()) });
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != 6 {
        return Err(Error::RepeatedRoot);
    }
    let base = to_standard_triple(f, &sorted[0], &sorted[1], &sorted[2]);
    // d[a][b] = x_a z_b - x_b z_a. Cross ratios built from it are PGL2-invariant, so a map sending
    // points 0, 1, 2 to i, j, k can only preserve the set if the cross ratio of point 3 recurs.
    let hom: Vec<_> = sorted.iter().map(|pt| homogeneous(f, pt)).collect();
    let d: Vec<Vec<FieldElement>> = hom
        .iter()
        .map(|(xa, za)| hom.iter().map(|(xb, zb)| f.sub(&f.mul(xa, zb), &f.mul(xb, za))).collect())
        .collect();
    let cross = |a: usize, b: usize, c: usize, e: usize| (f.mul(&d[e][a], &d[b][c]), f.mul(&d[e][c], &d[b][a]));
    let (n0, e0) = cross(0, 1, 2, 3);
    let mut elements = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            if j == i {
                continue;
            }
            for k in 0..6 {
                if k == i || k == j {
                    continue;
                }
                let recurs = (0..6).filter(|&t| t != i && t != j && t != k).any(|t| {
                    let (n, e) = cross(i, j, k, t);
                    f.mul(&n, &e0) == f.mul(&n0, &e)
                });
                if !recurs {
                    continue;
                }
                let target = to_standard_triple(f, &sorted[i], &sorted[j], &sorted[k]);
                let m = target.inverse().compose(&base);
                if maps_into(f, &m, &sorted[3..], &sorted) {
                    elements.push(m);
                }
            }
        }
    }
    let group = ReducedAutGroup { field: f.clone(), points: sorted, elements };
    check_group(&group)?;
    Ok(group)
}

/// Whether `m` sends every point of `src` into `pts`, compared in homogeneous coordinates so
/// that no inversions are needed.
fn maps_into(f: &Field, m: &MobiusMap, src: &[P1Point], pts: &[P1Point]) -> bool {
    src.iter().all(|pt| {
        let (x, z) = homogeneous(f, pt);
        let big_x = f.add(&f.mul(&m.a, &x), &f.mul(&m.b, &z));
        let big_z = f.add(&f.mul(&m.c, &x), &f.mul(&m.d, &z));
        pts.iter().any(|q| match q {
            P1Point::Finite(y) => !big_z.is_zero() && big_x == f.mul(y, &big_z),
            P1Point::Infinity => big_z.is_zero(),
        })
    })
}

fn check_group(g: &ReducedAutGroup) -> Result<()> {
    let keys = g.normalized_elements();
    let has = |m: &MobiusMap| keys.binary_search(&m.normalized()).is_ok();
    if !has(&MobiusMap::identity(&g.field)) {
        return Err(Error::Internal("stabilizer is missing the identity".into()));
    }
    for a in &g.elements {
        if !has(&a.inverse()) {
            return Err(Error::Internal("stabilizer is not closed under inverses".into()));
        }
        for b in &g.elements {
            if !has(&a.compose(b)) {
                return Err(Error::Internal("stabilizer is not closed under composition".into()));
            }
        }
    }
    Ok(())
}

/// Reduced order and label of `Aut(c)`.
pub fn aut_classify(c: &Genus2Curve) -> Result<(usize, AutLabel)> {
    let g = reduced_aut_group(c)?;
    let n = g.order();
    Ok((n, aut_label(n, c.field().p())))
}
