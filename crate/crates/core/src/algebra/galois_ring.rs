//! Galois rings `GR(p^e, k) = (Z/p^e)[x]/(M(x))`, where `M` is the canonical modulus of
//! `F_{p^k}` read with integer coefficients.
//!
//! These are used to evaluate integer formulas whose coefficients have powers of `p` in their
//! denominators: the numerator is computed on lifted inputs, divided by the power of `p`, and
//! reduced back to the residue field.

use super::field::{Field, FieldElement, MAX_DEGREE};
use super::RingOps;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct RingElement(pub(crate) [u64; MAX_DEGREE]);

pub struct GaloisRing {
    base: Field,
    p: u64,
    precision: u32,
    n: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl GaloisRing {
    /// The ring lifting `base` to precision `p^precision`.
    pub fn new(base: &Field, precision: u32) -> Self {
        let p = base.p();
        let n = p.checked_pow(precision).filter(|&n| n < (1 << 28)).expect("Galois ring modulus too large");
        GaloisRing {
            base: base.clone(),
            p,
            precision,
            n,
            k: base.degree(),
            modulus: base.modulus().to_vec(),
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn lift(&self, a: &FieldElement) -> RingElement {
        RingElement(a.0)
    }

    pub fn reduce(&self, a: &RingElement) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.k {
            e.0[i] = a.0[i] % self.p;
        }
        e
    }

    /// `a / p^b` when every coefficient is divisible by `p^b` (the result is determined
    /// modulo `p^(precision - b)`).
    pub fn divide_by_p_power(&self, a: &RingElement, b: u32) -> Option<RingElement> {
        let d = self.p.pow(b);
        let mut r = RingElement::default();
        for i in 0..self.k {
            if a.0[i] % d != 0 {
                return None;
            }
            r.0[i] = a.0[i] / d;
        }
        Some(r)
    }

    /// Inverse of an integer prime to `p`, as a scalar of the ring.
    pub fn inverse_of_integer(&self, v: i64) -> RingElement {
        let v = v.rem_euclid(self.n as i64) as u64;
        assert!(v % self.p != 0, "{v} is not a unit");
        let inv = super::field::inv_mod(v, self.n);
        self.scalar(inv)
    }

    fn scalar(&self, c: u64) -> RingElement {
        let mut e = RingElement::default();
        e.0[0] = c % self.n;
        e
    }
}

impl RingOps for GaloisRing {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        RingElement::default()
    }

    fn one(&self) -> RingElement {
        self.scalar(1)
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut r = RingElement::default();
        for i in 0..self.k {
            r.0[i] = (a.0[i] + b.0[i]) % self.n;
        }
        r
    }

    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut r = RingElement::default();
        for i in 0..self.k {
            r.0[i] = (a.0[i] + self.n - b.0[i]) % self.n;
        }
        r
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let k = self.k;
        let n = self.n;
        let mut acc = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                acc[i + j] = (acc[i + j] + a.0[i] * b.0[j]) % n;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = acc[i];
            if c != 0 {
                for j in 0..k {
                    acc[i - k + j] = (acc[i - k + j] + (n - c) * self.modulus[j]) % n;
                }
            }
        }
        let mut r = RingElement::default();
        r.0[..k].copy_from_slice(&acc[..k]);
        r
    }

    fn from_i64(&self, v: i64) -> RingElement {
        self.scalar(v.rem_euclid(self.n as i64) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::field;

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let f = field(3, 4).unwrap();
        let r = GaloisRing::new(&f, 5);
        for i in (0..f.order()).step_by(7) {
            for j in (0..f.order()).step_by(11) {
                let (a, b) = (f.element(i), f.element(j));
                let (la, lb) = (r.lift(&a), r.lift(&b));
                assert_eq!(r.reduce(&r.mul(&la, &lb)), f.mul(&a, &b));
                assert_eq!(r.reduce(&r.sub(&la, &lb)), f.sub(&a, &b));
            }
        }
    }

    #[test]
    fn division_by_p_powers() {
        let f = field(3, 2).unwrap();
        let r = GaloisRing::new(&f, 6);
        let x = r.lift(&f.generator());
        let nine_x = r.mul(&r.from_i64(9), &x);
        assert_eq!(r.divide_by_p_power(&nine_x, 2), Some(x));
        assert_eq!(r.divide_by_p_power(&nine_x, 3), None);
        let half = r.inverse_of_integer(2);
        assert_eq!(r.mul(&half, &r.from_i64(2)), r.one());
    }
}
