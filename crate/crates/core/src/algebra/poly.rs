//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;

use super::field::{embedding, field, Field, FieldElement};
use crate::error::{Error, Result};

/// Dense polynomial, constant term first, with no trailing zero coefficients.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

/// Roots of a squarefree polynomial in its splitting field.
#[derive(Clone, Debug)]
pub struct SplittingData {
    /// Degree of the splitting field over the coefficient field.
    pub degree: usize,
    pub field: Field,
    /// Pairwise distinct roots, sorted by element order.
    pub roots: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^n`.
    pub fn monomial(field: &Field, c: FieldElement, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Self {
        roots.iter().fold(Self::one(field), |acc, r| {
            acc.mul(&Self::new(field, vec![field.neg(r), field.one()]))
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Self::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        Self::new(f, f.poly_mul_truncated(&self.coeffs, &other.coeffs, len))
    }

    pub fn sqr(&self) -> Poly {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading();
        let inv = if lead == f.one() { lead } else { f.inv(&lead).ok_or(Error::DivisionByZero)? };
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for shift in (0..r.len() - db).rev() {
            let c = f.mul(&r[shift + db], &inv);
            if c.is_zero() {
                continue;
            }
            q[shift] = c;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, b));
            }
        }
        r.truncate(db);
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.field.inv(&self.leading()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = &m.monic();
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr().rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.scale(c, i as u64)).collect())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Coefficientwise image under the canonical embedding into `target`.
    pub fn embed(&self, target: &Field) -> Result<Poly> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, target)?;
        Ok(Self::new(target, self.coeffs.iter().map(|c| e.apply(c)).collect()))
    }

    /// Coefficientwise preimage in `target`, a subfield of this polynomial's field.
    pub fn restrict(&self, target: &Field) -> Result<Poly> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(target, &self.field)?;
        let coeffs = self.coeffs.iter().map(|c| e.restrict(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, coeffs))
    }

    /// Coefficientwise Frobenius.
    pub fn frobenius(&self) -> Poly {
        Self::new(&self.field, self.coeffs.iter().map(|c| self.field.frobenius(c)).collect())
    }

    /// `∑ F_i (a x + b)^i (c x + d)^(n - i)`: the degree-`n` homogenized substitution
    /// `x ↦ (a x + b)/(c x + d)` with denominators cleared.
    pub fn compose_mobius(
        &self,
        n: usize,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Poly {
        let f = &self.field;
        let num = Self::new(f, vec![*b, *a]);
        let den = Self::new(f, vec![*d, *c]);
        let mut num_pows = vec![Self::one(f)];
        let mut den_pows = vec![Self::one(f)];
        for i in 1..=n {
            num_pows.push(num_pows[i - 1].mul(&num));
            den_pows.push(den_pows[i - 1].mul(&den));
        }
        let mut out = Self::zero(f);
        for i in 0..=n {
            let ci = self.coeff(i);
            if ci.is_zero() {
                continue;
            }
            out = out.add(&num_pows[i].mul(&den_pows[n - i]).scale(&ci));
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).is_constant()
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs `(g_d, d)` where `g_d`
    /// is the product of the monic irreducible factors of degree `d`.
    pub fn distinct_degree_factorization(&self) -> Result<Vec<(Poly, usize)>> {
        let f = &self.field;
        let q = f.order();
        let mut rest = self.monic();
        let mut out = Vec::new();
        let x = Self::x(f);
        let mut h = x.clone();
        let mut d = 0;
        while let Some(deg) = rest.degree() {
            if deg == 0 {
                break;
            }
            d += 1;
            if 2 * d > deg {
                out.push((rest.clone(), deg));
                break;
            }
            h = h.powmod(q, &rest)?;
            let g = rest.gcd(&h.sub(&x));
            if !g.is_constant() {
                rest = rest.div_exact(&g)?;
                h = h.rem(&rest)?;
                out.push((g, d));
            }
        }
        Ok(out)
    }

    /// Distinct roots lying in the coefficient field, sorted by element order.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        if self.is_zero() {
            return Err(Error::Domain { op: "roots", detail: "zero polynomial".into() });
        }
        if self.is_constant() {
            return Ok(vec![]);
        }
        let x = Self::x(f);
        let xq = x.powmod(f.order(), self)?;
        let g = self.gcd(&xq.sub(&x));
        let mut roots = Vec::new();
        split_linear(&g, &mut roots)?;
        roots.sort();
        Ok(roots)
    }

    /// Splitting field and roots of a squarefree polynomial.
    pub fn splitting_data(&self) -> Result<SplittingData> {
        if !self.is_squarefree() {
            return Err(Error::RepeatedRoot);
        }
        let n = self.degree().ok_or(Error::Domain { op: "splitting_data", detail: "zero polynomial".into() })?;
        let factors = if n > 0 { self.distinct_degree_factorization()? } else { Vec::new() };
        let m = factors.iter().fold(1, |m, (_, d)| lcm(m, *d));
        let base = &self.field;
        let target = field(base.p(), base.degree() * m)?;
        let q = base.order();
        let mut roots = Vec::with_capacity(n);
        // Each factor splits over the target; one root per irreducible factor suffices, the rest
        // of its orbit comes from the q-power Frobenius.
        for (g, d) in factors {
            if d == 1 {
                // Rational roots are split off in the (cheaper) base field.
                let mut rest = g;
                while rest.degree().is_some_and(|deg| deg > 0) {
                    let r = one_root(&rest)?;
                    rest = rest.div_exact(&Poly::new(base, vec![base.neg(&r), base.one()]))?;
                    roots.push(embedding(base, &target)?.apply(&r));
                }
                continue;
            }
            let mut rest = g.embed(&target)?;
            while rest.degree().is_some_and(|deg| deg > 0) {
                let r = one_root(&rest)?;
                let mut orbit = Poly::one(&target);
                let mut cur = r;
                for _ in 0..d {
                    orbit = orbit.mul(&Poly::new(&target, vec![target.neg(&cur), target.one()]));
                    roots.push(cur);
                    cur = target.pow(&cur, q);
                }
                rest = rest.div_exact(&orbit)?;
            }
        }
        roots.sort();
        if roots.len() != n {
            return Err(Error::Internal(format!("found {} roots of a degree-{n} polynomial", roots.len())));
        }
        Ok(SplittingData { degree: m, field: target, roots })
    }

    /// Resultant `Res(self, other) = a^deg(other) ∏ other(λ_i)` over the roots `λ_i` of `self`.
    pub fn resultant(&self, other: &Poly) -> FieldElement {
        let f = &self.field;
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let (Some(n), Some(m)) = (a.degree(), b.degree()) else {
                return f.zero();
            };
            if m == 0 {
                return f.mul(&acc, &f.pow(&b.leading(), n as u128));
            }
            if n == 0 {
                return f.mul(&acc, &f.pow(&a.leading(), m as u128));
            }
            let r = a.rem(&b).expect("nonzero divisor");
            let Some(l) = r.degree() else {
                return f.zero();
            };
            // Res(a, b) = (-1)^(nm) lc(b)^(n - l) Res(b, r)
            if (n * m) % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(&b.leading(), (n - l) as u128));
            a = b;
            b = r;
        }
    }

    /// Discriminant normalized as `a_n^(2n-2) ∏_{i<j} (λ_i - λ_j)^2`; for monic input this is
    /// exactly the product of squared root differences.
    pub fn discriminant(&self) -> Result<FieldElement> {
        let f = &self.field;
        let n = self.degree().filter(|&n| n >= 2).ok_or(Error::Domain {
            op: "discriminant",
            detail: "degree must be at least 2".into(),
        })?;
        let d = self.derivative();
        let Some(dd) = d.degree() else {
            return Ok(f.zero());
        };
        let res = self.resultant(&d);
        let mut disc = f.mul(&res, &f.pow_signed(&self.leading(), n as i64 - 2 - dd as i64)?);
        if (n * (n - 1) / 2) % 2 == 1 {
            disc = f.neg(&disc);
        }
        Ok(disc)
    }

    /// E.g. `x^5 - x + 3` over a prime field, `(t + 1)*x^2 + t` over an extension.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.field.display(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ => (false, if cs.contains(' ') { format!("({cs})") } else { cs }),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let term = match (i, mag.as_str()) {
                (0, _) => mag,
                (1, "1") => "x".into(),
                (1, _) => format!("{mag}*x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{mag}*x^{i}"),
            };
            out.push_str(&term);
        }
        out
    }
}

/// Equal-degree splitting of a monic product of distinct linear factors.
fn split_linear(g: &Poly, out: &mut Vec<FieldElement>) -> Result<()> {
    let f = g.field();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let g = g.monic();
            out.push(f.neg(&g.coeff(0)));
            return Ok(());
        }
        _ => {}
    }
    let half = (f.order() - 1) / 2;
    // Every pair of distinct roots is separated by some shift δ (take δ = -root).
    for idx in 0..f.order() {
        let delta = f.element(idx);
        let t = Poly::new(f, vec![delta, f.one()]);
        let h = t.powmod(half, g)?.sub(&Poly::one(f));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let rest = g.div_exact(&d)?;
            split_linear(&d, out)?;
            split_linear(&rest, out)?;
            return Ok(());
        }
    }
    Err(Error::Internal("equal-degree splitting failed".into()))
}

/// One root of a polynomial that splits into distinct linear factors.
fn one_root(g: &Poly) -> Result<FieldElement> {
    let f = g.field();
    let mut g = g.monic();
    let half = (f.order() - 1) / 2;
    let mut idx = 0;
    while g.degree().is_some_and(|d| d > 1) {
        if idx >= f.order() {
            return Err(Error::Internal("equal-degree splitting failed".into()));
        }
        let t = Poly::new(f, vec![f.element(idx), f.one()]);
        idx += 1;
        let d = g.gcd(&t.powmod(half, &g)?.sub(&Poly::one(f)));
        let dd = d.degree().unwrap_or(0);
        let gd = g.degree().unwrap();
        if dd > 0 && dd < gd {
            let other = g.div_exact(&d)?;
            g = if 2 * dd <= gd { d } else { other.monic() };
            idx = 0;
        }
    }
    match g.degree() {
        Some(1) => Ok(f.neg(&g.coeff(0))),
        _ => Err(Error::Internal("no root found".into())),
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.display(), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::prime_field;

    #[test]
    fn pow_examples() {
        let f5 = prime_field(5).unwrap();
        let g = Poly::from_i64s(&f5, &[1, 0, 1]);
        assert_eq!(g.pow(0), Poly::one(&f5));
        assert_eq!(g.pow(2), Poly::from_i64s(&f5, &[1, 0, 2, 0, 1]));
        let f3 = prime_field(3).unwrap();
        let h = Poly::from_i64s(&f3, &[0, -1, 0, 0, 0, 1]);
        assert_eq!(h.pow(1), h);
    }

    #[test]
    fn splitting_examples() {
        let f7 = prime_field(7).unwrap();
        let s = Poly::from_i64s(&f7, &[-1, 0, 1]).splitting_data().unwrap();
        assert_eq!(s.degree, 1);
        assert_eq!(s.roots, vec![f7.from_i64(1), f7.from_i64(6)]);

        let s = Poly::from_i64s(&f7, &[1, 0, 1]).splitting_data().unwrap();
        assert_eq!(s.degree, 2);
        let k = &s.field;
        for r in &s.roots {
            assert_eq!(k.sqr(r), k.from_i64(-1));
        }

        let s = Poly::from_i64s(&f7, &[0, -1, 0, 0, 0, 1]).splitting_data().unwrap();
        assert_eq!(s.degree, 2);
        assert_eq!(s.roots.len(), 5);

        let sq = Poly::from_i64s(&f7, &[1, 2, 1]);
        assert!(matches!(sq.splitting_data(), Err(Error::RepeatedRoot)));
    }

    #[test]
    fn discriminant_examples() {
        let f7 = prime_field(7).unwrap();
        assert_eq!(Poly::from_i64s(&f7, &[-1, 0, 1]).discriminant().unwrap(), f7.from_i64(4));
        let cubic = Poly::from_roots(&f7, &[f7.from_i64(0), f7.from_i64(1), f7.from_i64(-1)]);
        assert_eq!(cubic.discriminant().unwrap(), f7.from_i64(4));
        assert!(Poly::from_i64s(&f7, &[1, 2, 1]).discriminant().unwrap().is_zero());
    }

    #[test]
    fn discriminant_matches_root_product_for_non_monic() {
        let f11 = prime_field(11).unwrap();
        let roots: Vec<_> = [2, 3, 5, 7, 10].iter().map(|&r| f11.from_i64(r)).collect();
        let lead = f11.from_i64(6);
        let g = Poly::from_roots(&f11, &roots).scale(&lead);
        let mut prod = f11.pow(&lead, 8);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                prod = f11.mul(&prod, &f11.sqr(&f11.sub(&roots[i], &roots[j])));
            }
        }
        assert_eq!(g.discriminant().unwrap(), prod);
    }

    #[test]
    fn ddf_degrees() {
        let f3 = prime_field(3).unwrap();
        // x(x^2 + 1)(x^3 - x + 1): degrees 1, 2, 3
        let g = Poly::from_i64s(&f3, &[0, 1])
            .mul(&Poly::from_i64s(&f3, &[1, 0, 1]))
            .mul(&Poly::from_i64s(&f3, &[1, -1, 0, 1]));
        let mut degs: Vec<usize> = g.distinct_degree_factorization().unwrap().iter().map(|(_, d)| *d).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 3]);
        assert_eq!(g.splitting_data().unwrap().degree, 6);
    }

    #[test]
    fn mobius_composition_of_sextic() {
        let f13 = prime_field(13).unwrap();
        let g = Poly::from_i64s(&f13, &[1, 0, 0, 0, 0, 0, 1]);
        let (z, o) = (f13.zero(), f13.one());
        assert_eq!(g.compose_mobius(6, &z, &o, &o, &z), g);
    }
}
