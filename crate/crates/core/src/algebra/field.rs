//! Prime fields and their extensions `F_{p^k} = F_p[x]/(m(x))`.
//!
//! A [`FieldCtx`] owns the modulus and the precomputed Frobenius images; elements are plain
//! coefficient vectors ([`FieldElement`]) and every operation goes through the context, so the
//! hot loops never touch reference counts. Contexts are interned per `(p, k)`, which makes the
//! modulus (and therefore every serialized element) reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::RingOps;
use crate::error::{Error, Result};

/// Largest extension degree a [`FieldElement`] can hold.
pub const MAX_DEGREE: usize = 16;

/// Above this size `sqrt` switches from a table scan to Tonelli–Shanks.
const SQRT_SCAN_LIMIT: u128 = 10_000;

/// Delayed reduction is safe while `32 * p^2 < 2^64`.
const LAZY_PRIME_BOUND: u64 = 1 << 28;

/// Coefficients of an element in the polynomial basis, constant term first.
///
/// The derived ordering is lexicographic in that coefficient order; it is the tie-break used
/// wherever a deterministic choice between field elements is needed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub(crate) [u64; MAX_DEGREE]);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The `k` meaningful coefficients.
    pub fn coeffs(&self, k: usize) -> &[u64] {
        &self.0[..k]
    }

    fn scalar(c: u64) -> Self {
        let mut e = Self::ZERO;
        e.0[0] = c;
        e
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        f.debug_list().entries(&self.0[..=last]).finish()
    }
}

pub type Field = Arc<FieldCtx>;

/// The finite field `F_{p^k}` with a fixed monic irreducible modulus of degree `k`.
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    order: u128,
    lazy: bool,
    /// `(x^i)^p` for `i < k`; Frobenius is linear over `F_p`.
    frobenius: Vec<FieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElementJson {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
    pub coeffs: Vec<u64>,
}

type Registry = Mutex<HashMap<(u64, usize), Field>>;
type EmbeddingRegistry = Mutex<HashMap<(u64, usize, usize), Arc<Embedding>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embedding_registry() -> &'static EmbeddingRegistry {
    static REGISTRY: OnceLock<EmbeddingRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The interned field `F_{p^k}`.
pub fn field(p: u64, k: usize) -> Result<Field> {
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if p >= 1 << 63 {
        return Err(Error::InvalidField(format!("{p} exceeds the supported prime range (< 2^63)")));
    }
    if k == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    if k > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { requested: k, max: MAX_DEGREE });
    }
    if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let ctx = Arc::new(FieldCtx::build(p, k)?);
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, k)).or_insert(ctx).clone())
}

/// Shorthand for the prime field `F_p`.
pub fn prime_field(p: u64) -> Result<Field> {
    field(p, 1)
}

impl FieldCtx {
    fn build(p: u64, k: usize) -> Result<Self> {
        let mut order: u128 = 1;
        for _ in 0..k {
            order = order.checked_mul(p as u128).ok_or(Error::FieldTooLarge {
                op: "field construction",
                order: u128::MAX,
                limit: u128::MAX,
            })?;
        }
        let modulus = if k == 1 { vec![0, 1] } else { least_irreducible(p, k) };
        let mut ctx = FieldCtx {
            p,
            k,
            modulus,
            order,
            lazy: p < LAZY_PRIME_BOUND,
            frobenius: Vec::new(),
        };
        if k == 1 {
            ctx.frobenius = vec![ctx.one()];
        } else {
            let xp = ctx.pow(&ctx.generator(), p as u128);
            let mut images = Vec::with_capacity(k);
            let mut cur = ctx.one();
            for _ in 0..k {
                images.push(cur);
                cur = ctx.mul(&cur, &xp);
            }
            ctx.frobenius = images;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Monic modulus, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.k == other.k
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::scalar(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        FieldElement::scalar(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        FieldElement::scalar(v % self.p)
    }

    /// Element with the given coefficients (constant term first); each must lie in `[0, p)`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.k {
            return Err(Error::InvalidField(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        let mut e = FieldElement::ZERO;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::InvalidField(format!("coefficient {c} is not reduced mod {}", self.p)));
            }
            e.0[i] = c;
        }
        Ok(e)
    }

    /// The generator `x` of the polynomial basis (equal to `0` in a prime field).
    pub fn generator(&self) -> FieldElement {
        let mut e = FieldElement::ZERO;
        if self.k > 1 {
            e.0[1] = 1;
        }
        e
    }

    pub fn is_in_prime_field(&self, a: &FieldElement) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    #[inline]
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        if self.lazy {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            r.0[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.k {
            r.0[i] = if a.0[i] >= b.0[i] { a.0[i] - b.0[i] } else { a.0[i] + self.p - b.0[i] };
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.k {
            r.0[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        r
    }

    /// Multiplication by an element of the prime field.
    #[inline]
    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let c = c % self.p;
        let mut r = FieldElement::ZERO;
        for i in 0..self.k {
            r.0[i] = self.mulmod(a.0[i], c);
        }
        r
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.k;
        let p = self.p;
        if k == 1 {
            return FieldElement::scalar(self.mulmod(a.0[0], b.0[0]));
        }
        if self.lazy {
            let mut acc = [0u64; 2 * MAX_DEGREE - 1];
            for i in 0..k {
                let ai = a.0[i];
                if ai == 0 {
                    continue;
                }
                for j in 0..k {
                    acc[i + j] += ai * b.0[j];
                }
            }
            for i in (k..2 * k - 1).rev() {
                let c = acc[i] % p;
                if c != 0 {
                    let neg = p - c;
                    for j in 0..k {
                        acc[i - k + j] += neg * self.modulus[j];
                    }
                }
            }
            let mut r = FieldElement::ZERO;
            for j in 0..k {
                r.0[j] = acc[j] % p;
            }
            r
        } else {
            let mut acc = [0u64; 2 * MAX_DEGREE - 1];
            for i in 0..k {
                for j in 0..k {
                    let t = self.mulmod(a.0[i], b.0[j]);
                    acc[i + j] = ((acc[i + j] as u128 + t as u128) % p as u128) as u64;
                }
            }
            for i in (k..2 * k - 1).rev() {
                let c = acc[i];
                if c != 0 {
                    let neg = p - c;
                    for j in 0..k {
                        let t = self.mulmod(neg, self.modulus[j]);
                        acc[i - k + j] = ((acc[i - k + j] as u128 + t as u128) % p as u128) as u64;
                    }
                }
            }
            let mut r = FieldElement::ZERO;
            r.0[..k].copy_from_slice(&acc[..k]);
            r
        }
    }

    /// Coefficients `0..len` of the product of two polynomials, with one reduction per output
    /// coefficient when the unreduced sums fit in a `u64`.
    pub fn poly_mul_truncated(&self, a: &[FieldElement], b: &[FieldElement], len: usize) -> Vec<FieldElement> {
        let (k, p) = (self.k, self.p as u128);
        let terms = (a.len().min(b.len()) * k + k) as u128;
        if !self.lazy || terms * p * p >= 1 << 63 {
            let mut out = vec![FieldElement::ZERO; len];
            for (i, x) in a.iter().enumerate().take(len) {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate().take(len - i) {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
            return out;
        }
        let w = 2 * k - 1;
        let mut acc = vec![0u64; len * w];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                let cell = &mut acc[(i + j) * w..(i + j + 1) * w];
                for (u, &xu) in x.0[..k].iter().enumerate() {
                    if xu == 0 {
                        continue;
                    }
                    for (v, &yv) in y.0[..k].iter().enumerate() {
                        cell[u + v] += xu * yv;
                    }
                }
            }
        }
        acc.chunks_exact_mut(w).map(|cell| self.reduce_wide(cell)).collect()
    }

    /// Reduces an unreduced product `Σ c_i t^i`, `i < 2k - 1`, modulo `p` and the modulus.
    fn reduce_wide(&self, cell: &mut [u64]) -> FieldElement {
        let (k, p) = (self.k, self.p);
        for i in (k..2 * k - 1).rev() {
            let c = cell[i] % p;
            if c != 0 {
                let neg = p - c;
                for j in 0..k {
                    cell[i - k + j] += neg * self.modulus[j];
                }
            }
        }
        let mut r = FieldElement::ZERO;
        for j in 0..k {
            r.0[j] = cell[j] % p;
        }
        r
    }

    #[inline]
    pub fn sqr(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.sqr(&base);
            }
        }
        acc
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(a, e as u128))
        } else {
            let inv = self.inv(a).ok_or(Error::DivisionByZero)?;
            Ok(self.pow(&inv, e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.k == 1 {
            return Some(FieldElement::scalar(inv_mod(a.0[0], self.p)));
        }
        // Extended Euclid in F_p[x] against the modulus.
        let p = self.p;
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.0[..self.k].to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let qs = fp_mul(&q, &s1, p);
            let s2 = fp_sub(&s0, &qs, p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c = inv_mod(r0[0], p);
        let mut out = FieldElement::ZERO;
        for (i, &s) in s0.iter().enumerate() {
            out.0[i] = self.mulmod(s, c);
        }
        Some(out)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// The absolute Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        if self.k == 1 {
            return *a;
        }
        let mut r = FieldElement::ZERO;
        for i in 0..self.k {
            if a.0[i] != 0 {
                let t = self.scale(&self.frobenius[i], a.0[i]);
                r = self.add(&r, &t);
            }
        }
        r
    }

    /// `a ↦ a^(p^j)`.
    pub fn frobenius_pow(&self, a: &FieldElement, j: usize) -> FieldElement {
        let mut r = *a;
        for _ in 0..(j % self.k) {
            r = self.frobenius(&r);
        }
        r
    }

    /// The inverse Frobenius `a ↦ a^(1/p)`.
    pub fn inverse_frobenius(&self, a: &FieldElement) -> FieldElement {
        self.frobenius_pow(a, self.k - 1)
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        a.is_zero() || self.pow(a, (self.order - 1) / 2) == self.one()
    }

    /// Quadratic character: `0`, `1` or `-1`.
    pub fn quadratic_character(&self, a: &FieldElement) -> i32 {
        if a.is_zero() {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// A square root of `a`, if one exists; the smaller of `±r` in coefficient order.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(FieldElement::ZERO);
        }
        let r = if self.order <= SQRT_SCAN_LIMIT {
            (0..self.order).map(|i| self.element(i)).find(|r| self.sqr(r) == *a)?
        } else {
            self.tonelli_shanks(a)?
        };
        let neg = self.neg(&r);
        Some(r.min(neg))
    }

    fn tonelli_shanks(&self, a: &FieldElement) -> Option<FieldElement> {
        if !self.is_square(a) {
            return None;
        }
        let q1 = self.order - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let z = (1..self.order).map(|i| self.element(i)).find(|z| !self.is_square(z))?;
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut x = self.pow(a, (t + 1) / 2);
        let mut b = self.pow(a, t);
        let one = self.one();
        while b != one {
            let mut i = 0;
            let mut b2 = b;
            while b2 != one {
                b2 = self.sqr(&b2);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.sqr(&g);
            }
            x = self.mul(&x, &g);
            c = self.sqr(&g);
            b = self.mul(&b, &c);
            m = i;
        }
        Some(x)
    }

    /// The `n`-th element in base-`p` digit order (coefficient of `x^i` is digit `i`).
    pub fn element(&self, mut n: u128) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.k {
            e.0[i] = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        e
    }

    /// Inverse of [`FieldCtx::element`].
    pub fn index(&self, a: &FieldElement) -> u128 {
        let mut n: u128 = 0;
        for i in (0..self.k).rev() {
            n = n * self.p as u128 + a.0[i] as u128;
        }
        n
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.k {
            e.0[i] = rng.gen_range(0..self.p);
        }
        e
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    pub fn element_to_json(&self, a: &FieldElement) -> FieldElementJson {
        FieldElementJson {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
            coeffs: a.0[..self.k].to_vec(),
        }
    }

    /// Human-readable rendering: an integer in `(-p/2, p/2]` for prime-field elements,
    /// otherwise a polynomial in `t`.
    pub fn display(&self, a: &FieldElement) -> String {
        let p = self.p as i64;
        let signed = |c: u64| -> i64 {
            let c = c as i64;
            if c > p / 2 {
                c - p
            } else {
                c
            }
        };
        if self.is_in_prime_field(a) {
            return signed(a.0[0]).to_string();
        }
        let mut out = String::new();
        for i in (0..self.k).rev() {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            let c = signed(c);
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let m = c.unsigned_abs();
            match (i, m) {
                (0, _) => out.push_str(&m.to_string()),
                (1, 1) => out.push('t'),
                (1, _) => out.push_str(&format!("{m}*t")),
                (_, 1) => out.push_str(&format!("t^{i}")),
                _ => out.push_str(&format!("{m}*t^{i}")),
            }
        }
        out
    }
}

impl FieldCtx {
    /// Parse an element written as an integer or a polynomial in `t`, e.g. `3`, `-1`,
    /// `2*t + 5`, `t^2 - t`. This is the inverse of [`FieldCtx::display`].
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = src.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&src[start..i]);
                start = i;
            }
        }
        terms.push(&src[start..]);
        let mut acc = self.zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (coef, power) = match body.find('t') {
                None => (body, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?
                    };
                    (if c.is_empty() { "1" } else { c }, power)
                }
            };
            let c: i128 = coef.parse().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?;
            let c = ((sign as i128 * c).rem_euclid(self.p as i128)) as u64;
            if power > 0 && self.k == 1 {
                return Err(Error::Parse(format!("{term:?} uses t in a prime field")));
            }
            let t = self.pow(&self.generator(), power as u128);
            acc = self.add(&acc, &self.scale(&t, c));
        }
        Ok(acc)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} (modulus {:?})", self.p, self.k, self.modulus)
        }
    }
}

impl RingOps for FieldCtx {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldCtx::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::add(self, a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::sub(self, a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::mul(self, a, b)
    }
    fn from_i64(&self, v: i64) -> FieldElement {
        FieldCtx::from_i64(self, v)
    }
}

/// Parse a serialized element, returning its (interned) field.
pub fn element_from_json(json: &FieldElementJson) -> Result<(Field, FieldElement)> {
    let f = field(json.p, json.k)?;
    if f.modulus() != json.modulus.as_slice() {
        return Err(Error::FieldMismatch(format!(
            "modulus {:?} differs from the canonical modulus {:?}",
            json.modulus,
            f.modulus()
        )));
    }
    let e = f.from_coeffs(&json.coeffs)?;
    Ok((f, e))
}

pub fn field_from_json(json: &FieldJson) -> Result<Field> {
    let f = field(json.p, json.k)?;
    if f.modulus() != json.modulus.as_slice() {
        return Err(Error::FieldMismatch(format!(
            "modulus {:?} differs from the canonical modulus {:?}",
            json.modulus,
            f.modulus()
        )));
    }
    Ok(f)
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i32> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not an odd prime")));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    let r = pow_mod(a, (p - 1) / 2, p);
    Ok(if r == 1 { 1 } else { -1 })
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % m as u128) as u64;
        }
        a = ((a as u128 * a as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

// ---- dense F_p[x] helpers (used for the modulus search and for inversion) ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = ((r[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(&mut r);
    r
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = ((*r.last().unwrap() as u128 * inv as u128) % p as u128) as u64;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = ((c as u128 * bj as u128) % p as u128) as u64;
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    fp_divrem(a, b, p).1
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = fp_rem(&fp_mul(&b, &b, p), m, p);
        }
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `k` over `F_p`.
pub(crate) fn is_irreducible_fp(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // x^(p^j) mod f for j = 0..=k
    let mut powers = vec![fp_rem(&x, f, p)];
    for j in 1..=k {
        let prev = powers[j - 1].clone();
        powers.push(fp_powmod(&prev, p, f, p));
    }
    if fp_sub(&powers[k], &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_divisors(k).into_iter().all(|r| {
        let h = fp_sub(&powers[k / r], &x, p);
        let g = fp_gcd(f, &h, p);
        g.len() == 1
    })
}

/// First monic irreducible of degree `k` when the lower coefficients are read as base-`p`
/// digits of `0, 1, 2, ...` (constant term least significant).
fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut n: u128 = 0;
    loop {
        let mut f = vec![0u64; k + 1];
        let mut m = n;
        for c in f.iter_mut().take(k) {
            *c = (m % p as u128) as u64;
            m /= p as u128;
        }
        f[k] = 1;
        if is_irreducible_fp(&f, p) {
            return f;
        }
        n += 1;
    }
}

/// Field embedding `F_{p^a} → F_{p^b}` for `a | b`, with a linear-algebra section for descent.
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `x^i`, `i < a`.
    images: Vec<FieldElement>,
    /// Target coordinates that determine a preimage, and the inverse of that minor.
    pivots: Vec<usize>,
    section: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        let t = &self.target;
        let mut r = FieldElement::ZERO;
        for (i, img) in self.images.iter().enumerate() {
            if a.0[i] != 0 {
                r = t.add(&r, &t.scale(img, a.0[i]));
            }
        }
        r
    }

    /// Preimage of `b`, or [`Error::NotInSubfield`].
    pub fn restrict(&self, b: &FieldElement) -> Result<FieldElement> {
        let p = self.source.p();
        let mut out = FieldElement::ZERO;
        for (i, row) in self.section.iter().enumerate() {
            let mut acc: u128 = 0;
            for (j, &piv) in self.pivots.iter().enumerate() {
                acc = (acc + row[j] as u128 * b.0[piv] as u128) % p as u128;
            }
            out.0[i] = acc as u64;
        }
        if self.apply(&out) == *b {
            Ok(out)
        } else {
            Err(Error::NotInSubfield)
        }
    }
}

/// The canonical embedding of `source` into `target` (requires `deg source | deg target`).
///
/// The generator is sent to the least root (in element order) of the source modulus.
pub fn embedding(source: &Field, target: &Field) -> Result<Arc<Embedding>> {
    if source.p() != target.p() {
        return Err(Error::FieldMismatch(format!("characteristics {} and {}", source.p(), target.p())));
    }
    let (a, b) = (source.degree(), target.degree());
    if b % a != 0 {
        return Err(Error::FieldMismatch(format!("degree {a} does not divide degree {b}")));
    }
    let key = (source.p(), a, b);
    if let Some(e) = embedding_registry().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let gen_image = if a == 1 {
        target.zero()
    } else if a == b {
        target.generator()
    } else {
        let coeffs: Vec<FieldElement> = source.modulus().iter().map(|&c| target.from_u64(c)).collect();
        let m = Poly::new(target, coeffs);
        *m.roots()?
            .first()
            .ok_or_else(|| Error::Internal("source modulus has no root in the target field".into()))?
    };
    let mut images = Vec::with_capacity(a);
    let mut cur = target.one();
    for _ in 0..a {
        images.push(cur);
        cur = target.mul(&cur, &gen_image);
    }
    let (pivots, section) = section_of(&images, a, b, source.p())?;
    let emb = Arc::new(Embedding { source: source.clone(), target: target.clone(), images, pivots, section });
    let mut reg = embedding_registry().lock().unwrap();
    Ok(reg.entry(key).or_insert(emb).clone())
}

/// Choose `a` target coordinates on which the embedding matrix is invertible and invert it.
fn section_of(images: &[FieldElement], a: usize, b: usize, p: u64) -> Result<(Vec<usize>, Vec<Vec<u64>>)> {
    // Matrix M (b x a): M[r][c] = images[c].0[r]. Row-reduce M^T to pick pivot rows of M.
    let mut rows: Vec<Vec<u64>> = (0..b).map(|r| (0..a).map(|c| images[c].0[r]).collect()).collect();
    let mut pivots = Vec::new();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new(); // reduced row, lead column
    for (r, row) in rows.iter_mut().enumerate() {
        let mut v = row.clone();
        for (lead, brow) in &basis {
            let c = v[*lead];
            if c != 0 {
                for j in 0..a {
                    v[j] = (v[j] + p - ((c as u128 * brow[j] as u128) % p as u128) as u64) % p;
                }
            }
        }
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[lead], p);
            for x in v.iter_mut() {
                *x = ((*x as u128 * inv as u128) % p as u128) as u64;
            }
            basis.push((lead, v));
            pivots.push(r);
            if pivots.len() == a {
                break;
            }
        }
    }
    if pivots.len() != a {
        return Err(Error::Internal("embedding matrix is not injective".into()));
    }
    // Invert the a x a minor N[i][c] = images[c].0[pivots[i]].
    let mut aug: Vec<Vec<u64>> = pivots
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut row: Vec<u64> = (0..a).map(|c| images[c].0[r]).collect();
            row.extend((0..a).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..a {
        let piv = (col..a)
            .find(|&r| aug[r][col] != 0)
            .ok_or_else(|| Error::Internal("singular embedding minor".into()))?;
        aug.swap(col, piv);
        let inv = inv_mod(aug[col][col], p);
        for x in aug[col].iter_mut() {
            *x = ((*x as u128 * inv as u128) % p as u128) as u64;
        }
        for r in 0..a {
            if r != col && aug[r][col] != 0 {
                let c = aug[r][col];
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row.iter()) {
                    *x = (*x + p - ((c as u128 * *y as u128) % p as u128) as u64) % p;
                }
            }
        }
    }
    // The inverse maps minor-coordinates (indexed by pivots) to source coefficients.
    let section = (0..a).map(|i| aug[i][a..].to_vec()).collect();
    Ok((pivots, section))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(matches!(field(2, 1), Err(Error::CharacteristicTwo)));
        assert!(matches!(field(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(field(7, 0), Err(Error::InvalidField(_))));
        assert!(matches!(field(7, MAX_DEGREE + 1), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn least_modulus_is_deterministic() {
        // -1 is a non-square mod 7, so x^2 + 1 is the first irreducible quadratic.
        assert_eq!(field(7, 2).unwrap().modulus(), &[1, 0, 1]);
        // mod 13, x^2 + 1 splits and x^2 + 2 is irreducible.
        assert_eq!(field(13, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn rabin_rejects_products_of_coprime_degrees() {
        // (x^2 + 1)(x^3 + x + 1) over F_3 has no roots in F_3 but is reducible.
        let f = fp_mul(&[1, 0, 1], &[1, 1, 0, 1], 3);
        assert!(!is_irreducible_fp(&f, 3));
        assert!(is_irreducible_fp(&[1, 0, 1], 3));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(0, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 11).unwrap(), -1);
        assert_eq!(legendre_symbol(-3, 13).unwrap(), 1);
        assert!(legendre_symbol(3, 15).is_err());
        assert!(legendre_symbol(3, 2).is_err());
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre_symbol(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn sqrt_tie_break_and_non_squares() {
        let f7 = prime_field(7).unwrap();
        assert_eq!(f7.sqrt(&f7.zero()), Some(f7.zero()));
        assert_eq!(f7.sqrt(&f7.from_i64(4)), Some(f7.from_i64(2)));
        assert_eq!(f7.sqrt(&f7.from_i64(3)), None);
    }

    #[test]
    fn tonelli_shanks_agrees_with_scan() {
        let f = field(101, 3).unwrap();
        let mut count = 0;
        for i in (0..f.order()).step_by(997) {
            let a = f.element(i);
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.sqr(&r), a);
                count += 1;
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn frobenius_has_order_k() {
        let f = field(5, 4).unwrap();
        for i in (0..f.order()).step_by(37) {
            let a = f.element(i);
            assert_eq!(f.frobenius(&a), f.pow(&a, 5));
            assert_eq!(f.frobenius_pow(&a, 4), a);
            assert_eq!(f.frobenius(&f.inverse_frobenius(&a)), a);
        }
    }

    #[test]
    fn large_prime_path_matches_lazy_path_semantics() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let f = field(p, 2).unwrap();
        let a = f.from_coeffs(&[p - 1, 12345]).unwrap();
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), f.one());
        assert_eq!(f.pow(&a, f.order() - 1), f.one());
    }

    #[test]
    fn embedding_round_trip() {
        let f2 = field(7, 2).unwrap();
        let f6 = field(7, 6).unwrap();
        let e = embedding(&f2, &f6).unwrap();
        for a in f2.elements() {
            let b = e.apply(&a);
            assert_eq!(e.restrict(&b).unwrap(), a);
        }
        // Multiplicative: the image of x squares to the image of x^2.
        let x = f2.generator();
        assert_eq!(f6.sqr(&e.apply(&x)), e.apply(&f2.sqr(&x)));
        // An element of F_{7^6} outside F_{49} does not descend.
        assert!(matches!(e.restrict(&f6.generator()), Err(Error::NotInSubfield)));
    }

    #[test]
    fn parse_inverts_display() {
        let f = field(7, 3).unwrap();
        for i in (0..f.order()).step_by(13) {
            let a = f.element(i);
            assert_eq!(f.parse_element(&f.display(&a)).unwrap(), a, "{}", f.display(&a));
        }
        let f7 = prime_field(7).unwrap();
        assert_eq!(f7.parse_element("-1").unwrap(), f7.from_i64(6));
        assert!(f7.parse_element("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = field(7, 2).unwrap();
        let a = f.from_coeffs(&[3, 5]).unwrap();
        let js = serde_json::to_string(&f.element_to_json(&a)).unwrap();
        let back: FieldElementJson = serde_json::from_str(&js).unwrap();
        let (g, b) = element_from_json(&back).unwrap();
        assert!(Arc::ptr_eq(&f, &g));
        assert_eq!(a, b);
    }
}
