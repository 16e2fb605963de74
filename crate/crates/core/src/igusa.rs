//! Igusa invariants `[J2:J4:J6:J8:J10]` and the weighted projective space `P(1,2,3,4,5)`.
//!
//! The invariants are symmetric functions of the six Weierstrass points. With
//! `d_ij = (λ_i - λ_j)^2` (and `d_i∞ = 1` for a point at infinity) write
//!
//! * `A`  = sum over the 15 perfect matchings of the product of the three `d`s,
//! * `B`  = sum over the 10 splits into two triples of the product of the six in-triple `d`s,
//! * `C'` = sum over the 60 labelled triangular prisms of the product of their nine `d`s,
//! * `D`  = product of all 15 `d`s.
//!
//! The permutation sums `s1, s2, s3, s5` are `48A, 72B, 12C', D`, and
//!
//! ```text
//! J2  = 2A
//! J4  = (A^2 - 16B) / 6
//! J6  = (A^3 + 80AB - 384C') / 54
//! J8  = (A^4 + 416A^2 B - 1536AC' - 768B^2) / 432
//! J10 = 256D
//! ```
//!
//! In characteristic 3 the divisions by 3 and 27 are done in a Galois ring lift, where the
//! numerators are divisible as integer polynomials in the roots.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{embedding, field, field_from_json, Field, FieldElement, FieldJson, GaloisRing, Poly, RingOps};
use crate::curve::{element_from_coeff_json, element_to_coeff_json, CoeffJson, Genus2Curve, P1Point};
use crate::error::{Error, Result};

pub const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 5];

/// Precision of the Galois-ring lift used in characteristic 3 (numerators are divisible by at
/// most `3^3`).
const LIFT_PRECISION: u32 = 6;

/// The 15 perfect matchings of `{0..5}`.
pub(crate) const MATCHINGS: [[(usize, usize); 3]; 15] = {
    let mut out = [[(0, 0); 3]; 15];
    let mut n = 0;
    let mut a = 1;
    while a < 6 {
        // pair 0 with a; match the remaining four
        let mut rest = [0usize; 4];
        let mut r = 0;
        let mut v = 1;
        while v < 6 {
            if v != a {
                rest[r] = v;
                r += 1;
            }
            v += 1;
        }
        let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
        let mut k = 0;
        while k < 3 {
            let [(i, j), (s, t)] = pairings[k];
            out[n] = [(0, a), (rest[i], rest[j]), (rest[s], rest[t])];
            n += 1;
            k += 1;
        }
        a += 1;
    }
    out
};

/// The 10 splits of `{0..5}` into two triples, the first containing 0.
pub(crate) const SPLITS: [([usize; 3], [usize; 3]); 10] = {
    let mut out = [([0; 3], [0; 3]); 10];
    let mut n = 0;
    let mut a = 1;
    while a < 6 {
        let mut b = a + 1;
        while b < 6 {
            let mut other = [0usize; 3];
            let mut r = 0;
            let mut v = 1;
            while v < 6 {
                if v != a && v != b {
                    other[r] = v;
                    r += 1;
                }
                v += 1;
            }
            out[n] = ([0, a, b], other);
            n += 1;
            b += 1;
        }
        a += 1;
    }
    out
};

/// The orbit sums `A, B, C', D` described in the module documentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitSums<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

/// Orbit sums from the symmetric matrix of pairwise `d_ij` values.
pub fn orbit_sums<R: RingOps>(ring: &R, d: &[[R::Elem; 6]; 6]) -> OrbitSums<R::Elem> {
    let a = ring.sum(MATCHINGS.iter().map(|m| ring.product(m.iter().map(|&(i, j)| d[i][j]))));
    let tri = |t: &[usize; 3]| ring.mul(&ring.mul(&d[t[0]][t[1]], &d[t[0]][t[2]]), &d[t[1]][t[2]]);
    let mut b = ring.zero();
    let mut c = ring.zero();
    for (s, t) in SPLITS.iter() {
        let tt = ring.mul(&tri(s), &tri(t));
        b = ring.add(&b, &tt);
        // permanent of the 3x3 cross matrix
        let m = |i: usize, j: usize| d[s[i]][t[j]];
        let mut perm = ring.zero();
        for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            perm = ring.add(&perm, &ring.mul(&ring.mul(&m(0, x), &m(1, y)), &m(2, z)));
        }
        c = ring.add(&c, &ring.mul(&tt, &perm));
    }
    let mut dd = ring.one();
    for i in 0..6 {
        for j in i + 1..6 {
            dd = ring.mul(&dd, &d[i][j]);
        }
    }
    OrbitSums { a, b, c, d: dd }
}

/// Integer numerators of `J2..J10` in terms of the orbit sums, with their denominators.
fn j_numerators<R: RingOps>(ring: &R, s: &OrbitSums<R::Elem>) -> [(R::Elem, i64); 5] {
    let (a, b, c, d) = (&s.a, &s.b, &s.c, &s.d);
    let a2 = ring.mul(a, a);
    let ab = ring.mul(a, b);
    let ac = ring.mul(a, c);
    let j2 = ring.scale_i64(a, 2);
    let j4 = ring.sub(&a2, &ring.scale_i64(b, 16));
    let j6 = ring.sub(&ring.add(&ring.mul(&a2, a), &ring.scale_i64(&ab, 80)), &ring.scale_i64(c, 384));
    let j8 = {
        let t1 = ring.mul(&a2, &a2);
        let t2 = ring.scale_i64(&ring.mul(&a2, b), 416);
        let t3 = ring.scale_i64(&ac, 1536);
        let t4 = ring.scale_i64(&ring.mul(b, b), 768);
        ring.sub(&ring.sub(&ring.add(&t1, &t2), &t3), &t4)
    };
    let j10 = ring.scale_i64(d, 256);
    [(j2, 1), (j4, 6), (j6, 54), (j8, 432), (j10, 1)]
}

/// `J2..J10` from orbit sums in a field of characteristic at least 5.
pub fn j_from_orbit_sums(f: &Field, s: &OrbitSums<FieldElement>) -> Result<[FieldElement; 5]> {
    if f.p() < 5 {
        return Err(Error::Domain { op: "j_from_orbit_sums", detail: "needs characteristic >= 5".into() });
    }
    let nums = j_numerators(f.as_ref(), s);
    let mut out = [FieldElement::ZERO; 5];
    for (o, (n, den)) in out.iter_mut().zip(nums.iter()) {
        *o = f.div(n, &f.from_i64(*den))?;
    }
    Ok(out)
}

/// `J2..J10` computed in the Galois ring `GR(p^6, k)` from lifts of the six points: numerators
/// are divided by their `p`-power denominators exactly, the rest by units. Works in every odd
/// characteristic. Divisibility holds because the numerators are divisible as integer
/// polynomials in the roots, so it is checked rather than assumed.
pub fn j_from_lifted_points(f: &Field, pts: &[P1Point]) -> Result<[FieldElement; 5]> {
    if pts.len() != 6 {
        return Err(Error::Domain { op: "j_from_lifted_points", detail: format!("{} points, expected 6", pts.len()) });
    }
    let ring = GaloisRing::new(f, LIFT_PRECISION);
    let p = f.p();
    let lifted: [[_; 6]; 6] = std::array::from_fn(|i| {
        std::array::from_fn(|j| match (&pts[i], &pts[j]) {
            _ if i == j => ring.zero(),
            (P1Point::Finite(x), P1Point::Finite(y)) => {
                let t = ring.sub(&ring.lift(x), &ring.lift(y));
                ring.mul(&t, &t)
            }
            (P1Point::Infinity, P1Point::Infinity) => ring.zero(),
            _ => ring.one(),
        })
    });
    let sums = orbit_sums(&ring, &lifted);
    let nums = j_numerators(&ring, &sums);
    let names = ["J2", "J4", "J6", "J8", "J10"];
    let mut out = [FieldElement::ZERO; 5];
    for (idx, (n, den)) in nums.iter().enumerate() {
        let mut den = *den;
        let mut b = 0;
        while den % p as i64 == 0 {
            den /= p as i64;
            b += 1;
        }
        let q = ring.divide_by_p_power(n, b).ok_or_else(|| Error::NonIntegral {
            name: names[idx].into(),
            p,
            value: format!("{n:?}"),
        })?;
        out[idx] = ring.reduce(&ring.mul(&q, &ring.inverse_of_integer(den)));
    }
    Ok(out)
}

/// Matrix of `d_ij = (λ_i - λ_j)^2`, with `d = 1` against a point at infinity.
pub fn distance_matrix(f: &Field, pts: &[P1Point]) -> Result<[[FieldElement; 6]; 6]> {
    if pts.len() != 6 {
        return Err(Error::Domain { op: "distance_matrix", detail: format!("{} points, expected 6", pts.len()) });
    }
    let mut d = [[FieldElement::ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            if i == j {
                continue;
            }
            d[i][j] = match (&pts[i], &pts[j]) {
                (P1Point::Finite(x), P1Point::Finite(y)) => f.sqr(&f.sub(x, y)),
                (P1Point::Infinity, P1Point::Infinity) => f.zero(),
                _ => f.one(),
            };
        }
    }
    Ok(d)
}

/// Igusa invariants of the monic binary sextic with the given six roots in `P^1(f)`.
pub fn igusa_from_points(f: &Field, pts: &[P1Point]) -> Result<[FieldElement; 5]> {
    let j = if f.p() == 3 {
        j_from_lifted_points(f, pts)?
    } else {
        j_from_orbit_sums(f, &orbit_sums(f.as_ref(), &distance_matrix(f, pts)?))?
    };
    if j[4].is_zero() {
        return Err(Error::SingularCurve("repeated Weierstrass point".into()));
    }
    Ok(j)
}

/// The Igusa point of a smooth curve, with coordinates in the curve's field.
pub fn igusa_invariants(c: &Genus2Curve) -> Result<IgusaPoint> {
    let rhs = c.rhs();
    let w = c.weierstrass_points()?;
    let big = &w.field;
    let base = c.field();
    let emb = embedding(base, big)?;
    let lead = emb.apply(&rhs.leading());
    let j = igusa_from_points(big, &w.points)?;
    let mut coords = [FieldElement::ZERO; 5];
    for i in 0..5 {
        let scaled = big.mul(&j[i], &big.pow(&lead, 2 * WEIGHTS[i] as u128));
        coords[i] = emb
            .restrict(&scaled)
            .map_err(|_| Error::Internal("Igusa invariant is not Galois-stable".into()))?;
    }
    IgusaPoint::new(base, coords)
}

/// The permutation sums `s1, s2, s3, s5` of six finite roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricSums {
    pub s1: FieldElement,
    pub s2: FieldElement,
    pub s3: FieldElement,
    pub s5: FieldElement,
}

/// `s1, s2, s3, s5` via the orbit sums (each orbit is counted with the order of its stabilizer).
pub fn symmetric_sums(f: &Field, roots: &[FieldElement; 6]) -> Result<SymmetricSums> {
    let pts: Vec<P1Point> = roots.iter().map(|&r| P1Point::Finite(r)).collect();
    let o = orbit_sums(f.as_ref(), &distance_matrix(f, &pts)?);
    if o.d.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    Ok(SymmetricSums { s1: f.scale(&o.a, 48), s2: f.scale(&o.b, 72), s3: f.scale(&o.c, 12), s5: o.d })
}

/// Reference evaluation of `s1, s2, s3` as literal sums over all 720 permutations.
pub fn symmetric_sums_naive(f: &Field, roots: &[FieldElement; 6]) -> SymmetricSums {
    const S1: [(usize, usize); 3] = [(0, 1), (2, 3), (4, 5)];
    const S2: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
    const S3: [(usize, usize); 9] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)];
    let mut sums = [f.zero(); 3];
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    let term = |perm: &[usize; 6], edges: &[(usize, usize)]| {
        edges.iter().fold(f.one(), |acc, &(i, j)| f.mul(&acc, &f.sqr(&f.sub(&roots[perm[i]], &roots[perm[j]]))))
    };
    for_each_permutation(&mut perm, 0, &mut |perm| {
        sums[0] = f.add(&sums[0], &term(perm, &S1));
        sums[1] = f.add(&sums[1], &term(perm, &S2));
        sums[2] = f.add(&sums[2], &term(perm, &S3));
    });
    let mut s5 = f.one();
    for i in 0..6 {
        for j in i + 1..6 {
            s5 = f.mul(&s5, &f.sqr(&f.sub(&roots[i], &roots[j])));
        }
    }
    SymmetricSums { s1: sums[0], s2: sums[1], s3: sums[2], s5 }
}

fn for_each_permutation(perm: &mut [usize; 6], k: usize, visit: &mut impl FnMut(&[usize; 6])) {
    if k == 6 {
        visit(perm);
        return;
    }
    for i in k..6 {
        perm.swap(k, i);
        for_each_permutation(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// `J2..J10` from the permutation sums with the rational constants `1/(2^3 3)`, `1/(2^9 3^3)`,
/// ... evaluated in the field (characteristic at least 5).
pub fn j_from_symmetric_sums(f: &Field, s: &SymmetricSums) -> Result<[FieldElement; 5]> {
    if f.p() < 5 {
        return Err(Error::Domain { op: "j_from_symmetric_sums", detail: "needs characteristic >= 5".into() });
    }
    let q = |num: i64, den: i64| -> Result<FieldElement> { f.div(&f.from_i64(num), &f.from_i64(den)) };
    let p2 = |e: u32| 2i64.pow(e);
    let p3 = |e: u32| 3i64.pow(e);
    let (s1, s2, s3) = (&s.s1, &s.s2, &s.s3);
    let s1_2 = f.sqr(s1);
    let s1_3 = f.mul(&s1_2, s1);
    let s1_4 = f.sqr(&s1_2);
    let j2 = f.mul(&q(1, p2(3) * 3)?, s1);
    let j4 = f.sub(&f.mul(&q(1, p2(9) * p3(3))?, &s1_2), &f.mul(&q(1, p3(3))?, s2));
    let j6 = f.add(&f.mul(&q(1, p2(13) * p3(6))?, &s1_3), &f.mul(&q(5, p2(4) * p3(6))?, &f.mul(s1, s2)));
    let j6 = f.sub(&j6, &f.mul(&q(p2(4), p3(3))?, s3));
    let j8 = f.add(&f.mul(&q(1, p2(20) * p3(7))?, &s1_4), &f.mul(&q(13, p2(10) * p3(7))?, &f.mul(&s1_2, s2)));
    let j8 = f.sub(&j8, &f.mul(&q(1, 2 * p3(4))?, &f.mul(s1, s3)));
    let j8 = f.sub(&j8, &f.mul(&q(1, p2(2) * p3(6))?, &f.sqr(s2)));
    let j10 = f.scale(&s.s5, 256);
    Ok([j2, j4, j6, j8, j10])
}

/// A point `[J2:J4:J6:J8:J10]` of `P(1,2,3,4,5)` over a finite field.
#[derive(Clone)]
pub struct IgusaPoint {
    field: Field,
    coords: [FieldElement; 5],
}

impl IgusaPoint {
    pub fn new(field: &Field, coords: [FieldElement; 5]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPoint);
        }
        Ok(IgusaPoint { field: field.clone(), coords })
    }

    pub fn from_i64s(field: &Field, coords: [i64; 5]) -> Result<Self> {
        Self::new(field, coords.map(|c| field.from_i64(c)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[FieldElement; 5] {
        &self.coords
    }

    pub fn j2(&self) -> FieldElement {
        self.coords[0]
    }
    pub fn j4(&self) -> FieldElement {
        self.coords[1]
    }
    pub fn j6(&self) -> FieldElement {
        self.coords[2]
    }
    pub fn j8(&self) -> FieldElement {
        self.coords[3]
    }
    pub fn j10(&self) -> FieldElement {
        self.coords[4]
    }

    /// `J4^2 - J2 J6 + 4 J8 = 0`.
    pub fn check_relation(&self) -> bool {
        let f = &self.field;
        let [j2, j4, j6, j8, _] = &self.coords;
        let r = f.add(&f.sub(&f.sqr(j4), &f.mul(j2, j6)), &f.scale(j8, 4));
        r.is_zero()
    }

    /// `[λ J2 : λ^2 J4 : ... : λ^5 J10]`.
    pub fn scale(&self, lambda: &FieldElement) -> Result<IgusaPoint> {
        if lambda.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let f = &self.field;
        let mut coords = self.coords;
        for (c, w) in coords.iter_mut().zip(WEIGHTS) {
            *c = f.mul(c, &f.pow(lambda, w as u128));
        }
        IgusaPoint::new(f, coords)
    }

    pub fn embed(&self, target: &Field) -> Result<IgusaPoint> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, target)?;
        IgusaPoint::new(target, self.coords.map(|c| e.apply(&c)))
    }

    /// Bitmask of nonzero coordinates (bit `i` for `J_{2(i+1)}`).
    pub fn support(&self) -> u8 {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// A complete invariant of the weighted-projective class (see [`IgusaKey`]).
    pub fn key(&self) -> IgusaKey {
        let f = &self.field;
        let support = self.support();
        let basis = &kernel_bases()[support as usize];
        let mut inv = [FieldElement::ZERO; 4];
        for (slot, b) in inv.iter_mut().zip(basis.iter()) {
            let mut acc = f.one();
            for i in 0..5 {
                if b[i] != 0 {
                    let t = f.pow_signed(&self.coords[i], b[i]).expect("support coordinates are nonzero");
                    acc = f.mul(&acc, &t);
                }
            }
            *slot = acc;
        }
        IgusaKey { support, len: basis.len() as u8, inv }
    }

    /// The representative with `J2 = 1`, when `J2 ≠ 0`.
    pub fn normalized(&self) -> Option<IgusaPoint> {
        let inv = self.field.inv(&self.j2())?;
        self.scale(&inv).ok()
    }

    pub fn to_json(&self) -> IgusaPointJson {
        IgusaPointJson {
            field: self.field.to_json(),
            coords: self.coords.iter().map(|c| element_to_coeff_json(&self.field, c)).collect(),
            weights: WEIGHTS.to_vec(),
            key: self.key().render(&self.field),
        }
    }

    pub fn from_json(json: &IgusaPointJson) -> Result<Self> {
        let f = field_from_json(&json.field)?;
        if json.weights != WEIGHTS {
            return Err(Error::Parse(format!("unexpected weights {:?}", json.weights)));
        }
        if json.coords.len() != 5 {
            return Err(Error::Parse(format!("{} coordinates, expected 5", json.coords.len())));
        }
        let mut coords = [FieldElement::ZERO; 5];
        for (c, j) in coords.iter_mut().zip(&json.coords) {
            *c = element_from_coeff_json(&f, j)?;
        }
        IgusaPoint::new(&f, coords)
    }

    /// Parse `J2,J4,J6,J8,J10` (comma separated, optionally in brackets or colon separated).
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = body.split([',', ':']).collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!("expected five coordinates, got {:?}", s)));
        }
        let mut coords = [FieldElement::ZERO; 5];
        for (c, t) in coords.iter_mut().zip(parts) {
            *c = field.parse_element(t)?;
        }
        IgusaPoint::new(field, coords)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| self.field.display(c)).collect();
        format!("[{}]", parts.join(" : "))
    }
}

impl fmt::Debug for IgusaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.display(), self.field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IgusaPointJson {
    pub field: FieldJson,
    pub coords: Vec<CoeffJson>,
    pub weights: Vec<u32>,
    pub key: String,
}

/// Complete invariant of a point of `P(1,2,3,4,5)` over a fixed field: its support together
/// with the values `∏ J_i^{b_i}` for a basis `b` of the lattice `{b : Σ b_i w_i = 0}` supported
/// on the nonzero coordinates. Two points over the same field are equal in weighted projective
/// space exactly when their keys agree. When `J2 ≠ 0` the invariants are the coordinates of the
/// `J2 = 1` representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IgusaKey {
    pub support: u8,
    len: u8,
    inv: [FieldElement; 4],
}

impl IgusaKey {
    pub fn invariants(&self) -> &[FieldElement] {
        &self.inv[..self.len as usize]
    }

    /// Stable text form: support bits (`J2` first) and the invariants' coefficients.
    pub fn render(&self, f: &Field) -> String {
        let bits: String = (0..5).map(|i| if self.support >> i & 1 == 1 { '1' } else { '0' }).collect();
        let vals: Vec<String> = self
            .invariants()
            .iter()
            .map(|c| c.coeffs(f.degree()).iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
            .collect();
        format!("{bits}|{}", vals.join(";"))
    }
}

/// For each support mask, a basis of `{b ∈ Z^5 : Σ b_i w_i = 0, b_i = 0 off the support}`.
fn kernel_bases() -> &'static [Vec<[i64; 5]>; 32] {
    static BASES: OnceLock<[Vec<[i64; 5]>; 32]> = OnceLock::new();
    BASES.get_or_init(|| std::array::from_fn(|mask| weight_kernel_basis(mask as u8)))
}

pub(crate) fn weight_kernel_basis(mask: u8) -> Vec<[i64; 5]> {
    let idx: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
    if idx.len() <= 1 {
        return vec![];
    }
    if mask & 1 == 1 {
        // J2 has weight 1: use b = e_j - w_j e_0.
        return idx
            .iter()
            .skip(1)
            .map(|&j| {
                let mut b = [0i64; 5];
                b[j] = 1;
                b[0] = -(WEIGHTS[j] as i64);
                b
            })
            .collect();
    }
    // Unimodular column reduction of the weight row vector.
    let n = idx.len();
    let mut v: Vec<i64> = idx.iter().map(|&i| WEIGHTS[i] as i64).collect();
    let mut cols: Vec<Vec<i64>> = (0..n).map(|c| (0..n).map(|r| i64::from(r == c)).collect()).collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let piv = *nonzero.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &j in &nonzero {
            if j != piv {
                let q = v[j].div_euclid(v[piv]);
                v[j] -= q * v[piv];
                let cp = cols[piv].clone();
                for (x, y) in cols[j].iter_mut().zip(cp) {
                    *x -= q * y;
                }
            }
        }
    }
    let keep = (0..n).find(|&i| v[i] != 0).unwrap();
    (0..n)
        .filter(|&c| c != keep)
        .map(|c| {
            let mut b = [0i64; 5];
            for (r, &i) in idx.iter().enumerate() {
                b[i] = cols[c][r];
            }
            b
        })
        .collect()
}

fn common_field(p: &IgusaPoint, q: &IgusaPoint) -> Result<(IgusaPoint, IgusaPoint)> {
    let (fp, fq) = (p.field(), q.field());
    if fp.p() != fq.p() {
        return Err(Error::FieldMismatch(format!("characteristics {} and {}", fp.p(), fq.p())));
    }
    let (a, b) = (fp.degree(), fq.degree());
    let l = a / gcd(a, b) * b;
    let target = field(fp.p(), l)?;
    Ok((p.embed(&target)?, q.embed(&target)?))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Equality in `P(1,2,3,4,5)` over the algebraic closure.
pub fn wp_equal(p: &IgusaPoint, q: &IgusaPoint) -> Result<bool> {
    let (p, q) = common_field(p, q)?;
    Ok(p.key() == q.key())
}

/// The pairwise cross-weight test `P_i^{w_j} Q_j^{w_i} = P_j^{w_i} Q_i^{w_j}` for all `i, j`.
///
/// This agrees with [`wp_equal`] whenever `J2 ≠ 0`, but it cannot see roots of unity when the
/// weights on the support share a factor: `[0:1:0:1:0]` and `[0:1:0:-1:0]` pass it although no
/// `λ` relates them.
pub fn wp_equal_pairwise(p: &IgusaPoint, q: &IgusaPoint) -> Result<bool> {
    let (p, q) = common_field(p, q)?;
    let f = p.field().clone();
    for i in 0..5 {
        for j in 0..5 {
            let (wi, wj) = (WEIGHTS[i] as u128, WEIGHTS[j] as u128);
            let lhs = f.mul(&f.pow(&p.coords[i], wj), &f.pow(&q.coords[j], wi));
            let rhs = f.mul(&f.pow(&p.coords[j], wi), &f.pow(&q.coords[i], wj));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Igusa invariants of `y^2 = x(x-1)(x^3 + a2 x^2 + a1 x + a0)` by root extraction; the reference
/// route for the census normal form.
pub fn normal_form_invariants_by_roots(f: &Field, a0: FieldElement, a1: FieldElement, a2: FieldElement) -> Result<IgusaPoint> {
    let cubic = Poly::new(f, vec![a0, a1, a2, f.one()]);
    let quintic = Poly::new(f, vec![f.zero(), f.from_i64(-1), f.one()]).mul(&cubic);
    igusa_invariants(&Genus2Curve::from_f(quintic)?)
}
