//! Integer polynomials in `J2, J4, J6, J8, J10`, parsed from the text form of the stratum equations.

use std::fmt;

use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::igusa::WEIGHTS;

/// `Σ c · J2^e0 J4^e1 J6^e2 J8^e3 J10^e4`.
#[derive(Clone, PartialEq, Eq)]
pub struct WPoly {
    pub terms: Vec<(i64, [u8; 5])>,
}

impl WPoly {
    /// Parse text such as `"J2^5 - 64J2^3J4 + 1216J2J4^2 - 128000J10"`.
    pub fn parse(s: &str) -> Result<WPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("{why} in polynomial {s:?}"));
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !terms.is_empty() {
                return Err(bad("missing operator"));
            }
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let coeff: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| bad("bad coefficient"))? };
            rest = &rest[digits..];
            rest = rest.strip_prefix('*').unwrap_or(rest);
            let mut exps = [0u8; 5];
            while let Some(r) = rest.strip_prefix('J') {
                let d = r.bytes().take_while(u8::is_ascii_digit).count();
                let idx = match &r[..d] {
                    "2" => 0,
                    "4" => 1,
                    "6" => 2,
                    "8" => 3,
                    "10" => 4,
                    _ => return Err(bad("unknown variable")),
                };
                rest = &r[d..];
                let mut e = 1u8;
                if let Some(r) = rest.strip_prefix('^') {
                    let d = r.bytes().take_while(u8::is_ascii_digit).count();
                    e = r[..d].parse().map_err(|_| bad("bad exponent"))?;
                    rest = &r[d..];
                }
                exps[idx] += e;
                rest = rest.strip_prefix('*').unwrap_or(rest);
            }
            if digits == 0 && exps == [0; 5] {
                return Err(bad("empty term"));
            }
            terms.push((sign * coeff, exps));
        }
        if terms.is_empty() {
            return Err(bad("no terms"));
        }
        Ok(WPoly { terms })
    }

    /// Weighted degree of a monomial, with `J_{2i}` of weight `i`.
    pub fn monomial_degree(e: &[u8; 5]) -> u32 {
        e.iter().zip(WEIGHTS).map(|(&e, w)| e as u32 * w).sum()
    }

    /// The common weighted degree, or `None` if the terms disagree.
    pub fn weighted_degree(&self) -> Option<u32> {
        let d = Self::monomial_degree(&self.terms[0].1);
        self.terms.iter().all(|(_, e)| Self::monomial_degree(e) == d).then_some(d)
    }

    pub fn eval(&self, f: &Field, j: &[FieldElement; 5]) -> FieldElement {
        let mut acc = f.zero();
        for (c, e) in &self.terms {
            let mut t = f.from_i64(*c);
            if t.is_zero() {
                continue;
            }
            for (x, &k) in j.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u128));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let mono: String = e
                .iter()
                .zip(["J2", "J4", "J6", "J8", "J10"])
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let mag = c.unsigned_abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            match (i, *c < 0) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime_field;

    #[test]
    fn parse_and_display() {
        let s = "J2^5 - 64J2^3J4 + 1216J2J4^2 - 5760J4J6 + 768J2J8 - 128000J10";
        let p = WPoly::parse(s).unwrap();
        assert_eq!(p.display(), s);
        assert_eq!(p.weighted_degree(), Some(5));
        assert_eq!(WPoly::parse("-175J4^3 + 9J2^3J6").unwrap().terms[0], (-175, [0, 3, 0, 0, 0]));
        assert!(WPoly::parse("J2 + J3").is_err());
        assert_eq!(WPoly::parse("J2^2 + J6").unwrap().weighted_degree(), None);
    }

    #[test]
    fn evaluation() {
        let f = prime_field(11).unwrap();
        let p = WPoly::parse("J4^2 - J2J6 + 4J8").unwrap();
        let j = [20, 30, -20, -325, 64].map(|x| f.from_i64(x));
        assert!(p.eval(&f, &j).is_zero());
    }
}
