//! Finite fields, polynomials over them, and the Galois rings used for characteristic-3 lifts.

pub mod field;
pub mod galois_ring;
pub mod poly;
pub mod small;

pub use field::{
    element_from_json, embedding, field, field_from_json, is_prime, legendre_symbol, prime_field, Embedding, Field,
    FieldCtx, FieldElement, FieldElementJson, FieldJson, MAX_DEGREE,
};
pub use galois_ring::{GaloisRing, RingElement};
pub use poly::{Poly, SplittingData};
pub use small::SmallField;

/// The commutative-ring operations shared by fields and Galois rings, so that invariant
/// formulas can be written once and evaluated in either.
pub trait RingOps {
    type Elem: Copy;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, &x))
    }

    fn product<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, &x))
    }

    fn scale_i64(&self, a: &Self::Elem, c: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(c))
    }
}
