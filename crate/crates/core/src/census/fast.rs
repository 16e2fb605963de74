//! The per-curve stage of the census in table arithmetic: smoothness, Hasse–Witt matrix, the
//! integral `J` polynomials and a dedup key.

use super::normal_form_data::NORMAL_FORM_J;
use super::NormalForm;
use crate::algebra::small::Log;
use crate::algebra::{Field, RingOps, SmallField};
use crate::eo::Matrix2;
use crate::error::Result;
use crate::igusa::IgusaPoint;

const Z: Log = SmallField::ZERO;

/// Complete invariant of an Igusa point over the census field. With `J2 ≠ 0` it holds the
/// logarithms of `J_{2i}/J2^i`; otherwise it is the [`crate::igusa::IgusaKey`] in element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct CompactKey {
    tag: u8,
    vals: [u32; 4],
}

pub(crate) struct Evaluator {
    pub sf: SmallField,
    q: u64,
    p: usize,
    j_terms: [Vec<(Log, [u8; 3])>; 5],
    max_exp: usize,
    c: [Log; 5],
}

impl Evaluator {
    pub fn new(f: &Field) -> Result<Self> {
        let sf = SmallField::new(f)?;
        let j_terms = std::array::from_fn(|i| {
            NORMAL_FORM_J[i].iter().map(|&(c, e)| (sf.from_i64(c), e)).filter(|(c, _)| *c != Z).collect()
        });
        let max_exp = NORMAL_FORM_J.iter().flat_map(|t| t.iter().flat_map(|(_, e)| e.iter().copied())).max().unwrap_or(0);
        let c = [4, 27, 18, 1, -1].map(|v| sf.from_i64(v));
        Ok(Evaluator { q: f.order() as u64, p: f.p() as usize, sf, j_terms, max_exp: max_exp as usize, c })
    }

    pub fn field(&self) -> &Field {
        self.sf.field()
    }

    /// `(a0, a1, a2)` of grid point `n`.
    pub fn form(&self, n: u64) -> [Log; 3] {
        let q = self.q;
        [n / (q * q), n / q % q, n % q].map(|i| self.sf.from_index(i as u32))
    }

    pub fn to_form(&self, a: &[Log; 3]) -> NormalForm {
        let [a0, a1, a2] = a.map(|x| self.sf.to_element(x));
        NormalForm::new(a0, a1, a2)
    }

    pub fn is_smooth(&self, a: &[Log; 3]) -> bool {
        let s = &self.sf;
        let [d, c, b] = *a;
        let [four, c27, c18, one, _] = self.c;
        if d == Z || s.add(&s.add(&one, &b), &s.add(&c, &d)) == Z {
            return false;
        }
        let bc = s.mul(&b, &c);
        let c3 = s.mul(&s.mul(&c, &c), &c);
        let b3d = s.mul(&s.mul(&s.mul(&b, &b), &b), &d);
        let disc = s.sum([
            s.mul(&bc, &bc),
            s.neg(s.mul(&four, &c3)),
            s.neg(s.mul(&four, &b3d)),
            s.neg(s.mul(&c27, &s.mul(&d, &d))),
            s.mul(&c18, &s.mul(&bc, &d)),
        ]);
        disc != Z
    }

    pub fn quintic(&self, a: &[Log; 3]) -> [Log; 6] {
        let s = &self.sf;
        let [a0, a1, a2] = *a;
        let one = self.c[3];
        [Z, s.neg(a0), s.sub(&a0, &a1), s.sub(&a1, &a2), s.sub(&a2, &one), one]
    }

    /// Hasse–Witt matrix of `y^2 = F(x)`, laid out as [`crate::eo::hasse_witt_of`]. Since
    /// `F(0) = 0`, the coefficient of `x^i` in `F^e` is that of `x^(i-e)` in `G^e`, `G = F/x`, and
    /// only degrees up to `3e + 1` of `G^e` are needed.
    pub fn hasse_witt(&self, rhs: &[Log; 6]) -> [[Log; 2]; 2] {
        let s = &self.sf;
        debug_assert_eq!(rhs[0], Z);
        let g = &rhs[1..];
        let e = (self.p - 1) / 2;
        let len = 3 * e + 2;
        let mut acc = vec![Z; len];
        acc[0] = 0;
        for step in 0..e {
            let top = (4 * (step + 1)).min(len - 1);
            for m in (0..=top).rev() {
                let mut v = Z;
                for (t, gt) in g.iter().enumerate().take(m + 1) {
                    v = s.add(&v, &s.mul(gt, &acc[m - t]));
                }
                acc[m] = v;
            }
        }
        [[acc[e], acc[3 * e + 1]], [acc[e - 1], acc[3 * e]]]
    }

    /// `det` of a Hasse–Witt matrix, to skip the conversion in the common invertible case.
    pub fn det(&self, m: &[[Log; 2]; 2]) -> Log {
        let s = &self.sf;
        s.sub(&s.mul(&m[0][0], &m[1][1]), &s.mul(&m[0][1], &m[1][0]))
    }

    pub fn matrix(&self, m: &[[Log; 2]; 2]) -> Matrix2 {
        Matrix2::new(self.field(), m.map(|r| r.map(|x| self.sf.to_element(x))))
    }

    pub fn coords(&self, a: &[Log; 3]) -> [Log; 5] {
        let s = &self.sf;
        let powers: [Vec<Log>; 3] = std::array::from_fn(|v| {
            let mut pw = Vec::with_capacity(self.max_exp + 1);
            pw.push(0);
            for i in 0..self.max_exp {
                pw.push(s.mul(&pw[i], &a[v]));
            }
            pw
        });
        std::array::from_fn(|i| {
            let mut acc = Z;
            for (c, e) in &self.j_terms[i] {
                let m = s.mul(&s.mul(&powers[0][e[0] as usize], &powers[1][e[1] as usize]), &powers[2][e[2] as usize]);
                acc = s.add(&acc, &s.mul(c, &m));
            }
            acc
        })
    }

    /// `J4^2 - J2 J6 + 4 J8 = 0`.
    pub fn relation_holds(&self, j: &[Log; 5]) -> bool {
        let s = &self.sf;
        let v = s.add(&s.sub(&s.mul(&j[1], &j[1]), &s.mul(&j[0], &j[2])), &s.mul(&self.c[0], &j[3]));
        v == Z
    }

    pub fn point(&self, j: &[Log; 5]) -> Result<IgusaPoint> {
        IgusaPoint::new(self.field(), j.map(|x| self.sf.to_element(x)))
    }

    pub fn key(&self, j: &[Log; 5]) -> Result<CompactKey> {
        let s = &self.sf;
        if j[0] != Z {
            let inv = s.inv(j[0]).expect("nonzero");
            let mut scale = inv;
            let mut vals = [0u32; 4];
            for (i, v) in vals.iter_mut().enumerate() {
                scale = s.mul(&scale, &inv);
                *v = s.mul(&j[i + 1], &scale);
            }
            return Ok(CompactKey { tag: 0, vals });
        }
        let key = self.point(j)?.key();
        let mut vals = [u32::MAX; 4];
        for (v, x) in vals.iter_mut().zip(key.invariants()) {
            *v = self.field().index(x) as u32;
        }
        Ok(CompactKey { tag: 1 + key.support, vals })
    }
}
