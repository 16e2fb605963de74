//! Dimensions and component counts of `V_{=(f,a)} ∩ W_{=G}`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, legendre_symbol};
use crate::aut::AutLabel;
use crate::eo::EoType;
use crate::error::{Error, Result};

type Q = Ratio<i64>;

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidField(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

fn row(t: EoType) -> usize {
    EoType::ALL.iter().position(|x| *x == t).expect("one of the four types")
}

/// Dimension of `V_{=(f,a)} ∩ W_{=G}`, or `None` when the stratum is empty.
pub fn dimension_table(t: EoType, g: AutLabel, p: u64) -> Result<Option<u8>> {
    check_prime(p)?;
    if !g.is_legal(p) {
        return Err(Error::UnsupportedStratum { label: g.to_string(), p });
    }
    const E: Option<u8> = None;
    let r = row(t);
    // Rows (2,0), (1,1), (0,1), (0,2); the first four columns are C2, C2xC2, D4, D6.
    const GENERIC: [[Option<u8>; 4]; 4] =
        [[Some(3), Some(2), Some(1), Some(1)], [Some(2), Some(1), E, E], [Some(1), E, E, E], [E, E, E, E]];
    let col = match g {
        AutLabel::C2 => Some(0),
        AutLabel::C2xC2 => Some(1),
        AutLabel::D4 => Some(2),
        AutLabel::D6 => Some(3),
        _ => None,
    };
    let zero_if = |c: bool| if c { Some(0) } else { None };
    if let Some(c) = col {
        if r == 3 && p >= 7 {
            let threshold = [29, 17, 13, 11][c];
            return Ok(zero_if(p >= threshold));
        }
        return Ok(GENERIC[r][c]);
    }
    Ok(match (g, p) {
        (AutLabel::GL2F3, 3) => zero_if(r == 0),
        (AutLabel::C10, 3) => zero_if(r == 2),
        (AutLabel::SL2F5, 5) => zero_if(r == 3),
        (AutLabel::C3sD4, _) => match r {
            0 => zero_if(p % 6 == 1),
            3 => zero_if(p % 6 == 5),
            _ => E,
        },
        (AutLabel::GL2F3, _) => match r {
            0 => zero_if(matches!(p % 8, 1 | 3)),
            3 => zero_if(matches!(p % 8, 5 | 7)),
            _ => E,
        },
        (AutLabel::C10, _) => match r {
            0 => zero_if(p % 5 == 1),
            2 => zero_if(matches!(p % 5, 2 | 3)),
            3 => zero_if(p % 5 == 4),
            _ => E,
        },
        _ => return Err(Error::UnsupportedStratum { label: g.to_string(), p }),
    })
}

fn leg(n: i64, p: u64) -> Q {
    Q::from_integer(legendre_symbol(n, p).expect("odd prime") as i64)
}

fn indicator(c: bool, v: Q) -> Q {
    if c {
        v
    } else {
        Q::from_integer(0)
    }
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// The closed formulas `n_{(f,a),G}(p)` for `p >= 7`, as exact rationals.
pub fn count_formula(t: EoType, g: AutLabel, p: u64) -> Option<Q> {
    let pi = p as i64;
    let one = Q::from_integer(1);
    let (l1, l2, l3) = (leg(-1, p), leg(-2, p), leg(-3, p));
    let pp = Q::from_integer(pi);
    Some(match (row(t), g) {
        (1, AutLabel::C2xC2) => q(pi - 1, 12) + (one - l1) / 4 + (one - l3) / 3,
        (2, AutLabel::C2) => {
            q(pi * pi - 1, 2880)
                + (pp + 1) * (one - l1) / 64
                + (pp - 1) * (one + l1) * 5 / 192
                + (pp + 1) * (one - l3) / 72
                + (pp - 1) * (one + l3) / 36
                + indicator(matches!(p % 5, 2 | 3), q(2, 5))
                + indicator(matches!(p % 8, 3 | 5), q(1, 4))
                + indicator(p % 12 == 5, q(1, 6))
        }
        (3, AutLabel::C2) => {
            q((pi - 1) * (pi * pi - 35 * pi + 346), 2880)
                - (one - l1) / 32
                - (one - l2) / 8
                - (one - l3) / 9
                - indicator(p % 5 == 4, q(1, 5))
        }
        (3, AutLabel::C2xC2) => q((pi - 1) * (pi - 17), 48) + (one - l1) / 8 + (one - l2) / 2 + (one - l3) / 2,
        (3, AutLabel::D4) => q(pi - 1, 8) - (one - l1) / 8 - (one - l2) / 4 - (one - l3) / 2,
        (3, AutLabel::D6) => q(pi - 1, 6) - (one - l2) / 2 - (one - l3) / 3,
        _ => return None,
    })
}

/// Number of irreducible components of the closure of `V_{=(f,a)} ∩ W_{=G}`; zero for empty
/// strata.
pub fn component_count(t: EoType, g: AutLabel, p: u64) -> Result<u64> {
    let dim = dimension_table(t, g, p)?;
    if p < 7 {
        return Ok(u64::from(dim.is_some()));
    }
    let v = match count_formula(t, g, p) {
        Some(v) => v,
        None => return Ok(u64::from(dim.is_some())),
    };
    if !v.is_integer() || v < Q::from_integer(0) {
        return Err(Error::NonIntegral { name: format!("n_{t},{g}"), p, value: v.to_string() });
    }
    Ok(v.to_integer() as u64)
}

/// Dimensions and component counts for every legal cell at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub p: u64,
    pub labels: Vec<AutLabel>,
    pub rows: Vec<CountRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub eo: EoType,
    /// `None` for empty cells.
    pub dimensions: Vec<Option<u8>>,
    pub components: Vec<u64>,
}

impl CountTable {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        let labels = AutLabel::legal_labels(p);
        let mut rows = Vec::new();
        for t in EoType::ALL {
            let dimensions = labels.iter().map(|g| dimension_table(t, *g, p)).collect::<Result<Vec<_>>>()?;
            let components = labels.iter().map(|g| component_count(t, *g, p)).collect::<Result<Vec<_>>>()?;
            rows.push(CountRow { eo: t, dimensions, components });
        }
        Ok(CountTable { p, labels, rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,f,a,aut,dimension,components\n");
        for r in &self.rows {
            for (i, g) in self.labels.iter().enumerate() {
                let d = r.dimensions[i].map_or("EMPTY".to_string(), |d| d.to_string());
                out.push_str(&format!("{},{},{},{},{},{}\n", self.p, r.eo.f_rank, r.eo.a_rank, g, d, r.components[i]));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p = {}\n{:8}", self.p, "(f,a)");
        for g in &self.labels {
            out.push_str(&format!("{:>10}", g.to_string()));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{:8}", r.eo.to_string()));
            for (i, _) in self.labels.iter().enumerate() {
                let cell = match r.dimensions[i] {
                    None => "-".to_string(),
                    Some(d) => format!("{d}[{}]", r.components[i]),
                };
                out.push_str(&format!("{cell:>10}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AutLabel::*;

    #[test]
    fn dimension_spot_values() {
        for p in [3, 5, 7, 11, 101] {
            assert_eq!(dimension_table(EoType::ORDINARY, C2, p).unwrap(), Some(3));
        }
        assert_eq!(dimension_table(EoType::P_RANK_ONE, D4, 7).unwrap(), None);
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, C10, 19).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, C10, 11).unwrap(), None);
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, C2, 23).unwrap(), None);
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, C2, 29).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, D6, 11).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::SUPERSINGULAR_NON_SUPERSPECIAL, C10, 3).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::ORDINARY, GL2F3, 3).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, SL2F5, 5).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::P_RANK_ONE, C2xC2, 3).unwrap(), Some(1));
        assert_eq!(dimension_table(EoType::ORDINARY, C3sD4, 13).unwrap(), Some(0));
        assert_eq!(dimension_table(EoType::SUPERSPECIAL, C3sD4, 11).unwrap(), Some(0));
        assert!(dimension_table(EoType::ORDINARY, C3sD4, 5).is_err());
        assert!(dimension_table(EoType::ORDINARY, C2, 2).is_err());
    }

    #[test]
    fn count_spot_values() {
        assert_eq!(component_count(EoType::P_RANK_ONE, C2xC2, 13).unwrap(), 1);
        assert_eq!(component_count(EoType::SUPERSPECIAL, D6, 11).unwrap(), 1);
        assert_eq!(component_count(EoType::SUPERSPECIAL, D4, 13).unwrap(), 1);
        assert_eq!(component_count(EoType::SUPERSPECIAL, C2, 7).unwrap(), 0);
        assert!(component_count(EoType::SUPERSPECIAL, C2, 29).unwrap() >= 1);
        assert_eq!(component_count(EoType::SUPERSINGULAR_NON_SUPERSPECIAL, C2, 7).unwrap(), 1);
        assert_eq!(component_count(EoType::SUPERSPECIAL, SL2F5, 5).unwrap(), 1);
        assert_eq!(component_count(EoType::SUPERSPECIAL, C2, 5).unwrap(), 0);
    }

    #[test]
    fn table_renders() {
        let t = CountTable::new(13).unwrap();
        assert_eq!(t.labels.len(), 7);
        assert!(t.to_csv().contains("13,1,1,C2xC2,1,1\n"));
    }
}
