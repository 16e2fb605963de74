//! Table-driven arithmetic for fields small enough to tabulate: elements are discrete logarithms
//! to a fixed primitive element, multiplication adds logarithms and addition uses Zech
//! logarithms. Used by the census inner loop.

use super::field::{Field, FieldElement};
use super::RingOps;
use crate::error::{Error, Result};

/// Largest field order that is tabulated.
pub const SMALL_FIELD_LIMIT: u128 = 1 << 22;

/// Logarithm-encoded element; [`SmallField::ZERO`] encodes zero.
pub type Log = u32;

#[derive(Debug)]
pub struct SmallField {
    field: Field,
    /// `q - 1`.
    n: u32,
    /// Element index (see [`crate::algebra::FieldCtx::index`]) of `g^i`.
    exp: Vec<u32>,
    /// Logarithm of the element with each index; `ZERO` for index 0.
    log: Vec<Log>,
    /// `zech[i] = log(1 + g^i)`.
    zech: Vec<Log>,
    /// Logarithm of `-1`.
    minus_one: Log,
}

impl SmallField {
    pub const ZERO: Log = u32::MAX;

    pub fn new(field: &Field) -> Result<Self> {
        let q = field.order();
        if q > SMALL_FIELD_LIMIT {
            return Err(Error::FieldTooLarge { op: "SmallField::new", order: q, limit: SMALL_FIELD_LIMIT });
        }
        let n = (q - 1) as u32;
        let g = primitive_element(field);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![Self::ZERO; q as usize];
        let mut x = field.one();
        for i in 0..n {
            let idx = field.index(&x) as u32;
            exp.push(idx);
            log[idx as usize] = i;
            x = field.mul(&x, &g);
        }
        let one = field.one();
        let zech = (0..n)
            .map(|i| {
                let s = field.add(&one, &field.element(exp[i as usize] as u128));
                log[field.index(&s) as usize]
            })
            .collect();
        let minus_one = n / 2;
        Ok(SmallField { field: field.clone(), n, exp, log, zech, minus_one })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.n + 1
    }

    #[inline]
    pub fn from_index(&self, idx: u32) -> Log {
        self.log[idx as usize]
    }

    #[inline]
    pub fn index(&self, a: Log) -> u32 {
        if a == Self::ZERO {
            0
        } else {
            self.exp[a as usize]
        }
    }

    pub fn from_element(&self, a: &FieldElement) -> Log {
        self.log[self.field.index(a) as usize]
    }

    pub fn to_element(&self, a: Log) -> FieldElement {
        self.field.element(self.index(a) as u128)
    }

    #[inline]
    fn add_logs(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: Log) -> Log {
        if a == Self::ZERO {
            a
        } else {
            self.add_logs(a, self.minus_one)
        }
    }

    #[inline]
    pub fn inv(&self, a: Log) -> Option<Log> {
        match a {
            Self::ZERO => None,
            0 => Some(0),
            _ => Some(self.n - a),
        }
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Log) -> Log {
        if a == Self::ZERO {
            a
        } else {
            (a as u64 * self.field.p() % self.n as u64) as u32
        }
    }
}

impl RingOps for SmallField {
    type Elem = Log;

    #[inline]
    fn zero(&self) -> Log {
        Self::ZERO
    }

    #[inline]
    fn one(&self) -> Log {
        0
    }

    #[inline]
    fn add(&self, a: &Log, b: &Log) -> Log {
        let (a, b) = (*a, *b);
        if a == Self::ZERO {
            return b;
        }
        if b == Self::ZERO {
            return a;
        }
        // a + b = a (1 + b/a)
        let d = if b >= a { b - a } else { b + self.n - a };
        let z = self.zech[d as usize];
        if z == Self::ZERO {
            Self::ZERO
        } else {
            self.add_logs(a, z)
        }
    }

    #[inline]
    fn sub(&self, a: &Log, b: &Log) -> Log {
        self.add(a, &self.neg(*b))
    }

    #[inline]
    fn mul(&self, a: &Log, b: &Log) -> Log {
        if *a == Self::ZERO || *b == Self::ZERO {
            Self::ZERO
        } else {
            self.add_logs(*a, *b)
        }
    }

    fn from_i64(&self, v: i64) -> Log {
        self.from_element(&self.field.from_i64(v))
    }
}

fn prime_factors(mut n: u128) -> Vec<u128> {
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

/// The first element, in index order, that generates `F_q^*`.
fn primitive_element(f: &Field) -> FieldElement {
    let n = f.order() - 1;
    let factors = prime_factors(n);
    (1..f.order())
        .map(|i| f.element(i))
        .find(|g| factors.iter().all(|&r| f.pow(g, n / r) != f.one()))
        .expect("the multiplicative group is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field;

    #[test]
    fn matches_generic_arithmetic() {
        for (p, k) in [(3u64, 1usize), (3, 2), (5, 2), (7, 1), (13, 2), (3, 3)] {
            let f = field(p, k).unwrap();
            let s = SmallField::new(&f).unwrap();
            let q = f.order() as u32;
            for i in 0..q {
                let a = f.element(i as u128);
                let la = s.from_index(i);
                assert_eq!(s.to_element(la), a);
                assert_eq!(s.to_element(s.neg(la)), f.neg(&a));
                assert_eq!(s.to_element(s.frobenius(la)), f.frobenius(&a));
                if let Some(ia) = s.inv(la) {
                    assert_eq!(s.to_element(ia), f.inv(&a).unwrap());
                }
                for j in (0..q).step_by(((q / 40) as usize).max(1)) {
                    let b = f.element(j as u128);
                    let lb = s.from_index(j);
                    assert_eq!(s.to_element(s.add(&la, &lb)), f.add(&a, &b));
                    assert_eq!(s.to_element(s.sub(&la, &lb)), f.sub(&a, &b));
                    assert_eq!(s.to_element(s.mul(&la, &lb)), f.mul(&a, &b));
                }
            }
        }
    }
}
