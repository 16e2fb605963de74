//! Automorphism strata of the moduli space: defining equations, parametrizations, the gluing
//! construction for `W_{>=C2xC2}`, and the dimension and component-count tables.

pub mod gluing;
pub mod models;
pub mod tables;
mod wpoly;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::FieldElement;
use crate::aut::AutLabel;
use crate::error::{Error, Result};
use crate::igusa::IgusaPoint;

pub use gluing::{glue, level2_action, prank_additivity_check, quotient_curves, EllipticModel, GluingDatum, QuotientCurves, SigmaForm, S3};
pub use models::{d4_inverse, d4_model, d6_inverse, d6_model, d6_omega_model};
pub use tables::{component_count, dimension_table, CountTable};
pub use wpoly::WPoly;

/// A closed stratum that can be tested on an Igusa point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    /// `W_{>=G}` for an automorphism group `G`.
    Group(AutLabel),
    /// The curve in `W_{>=C2xC2}` where the two elliptic quotients have equal `j`-invariant,
    /// other than `W_{>=D4}`.
    Z,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Group(g) => write!(f, "{g}"),
            Stratum::Z => f.write_str("Z"),
        }
    }
}

impl std::str::FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("z") {
            Ok(Stratum::Z)
        } else {
            s.parse().map(Stratum::Group)
        }
    }
}

impl Serialize for Stratum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Stratum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Generators of a stratum's ideal in the characteristic it was computed for.
#[derive(Clone, Debug)]
pub struct StratumIdeal {
    pub stratum: Stratum,
    pub p: u64,
    /// `(name, polynomial)`, e.g. `("h5", J2^5 - ...)`.
    pub generators: Vec<(&'static str, WPoly)>,
}

impl StratumIdeal {
    pub fn contains(&self, pt: &IgusaPoint) -> bool {
        self.generators.iter().all(|(_, h)| h.eval(pt.field(), pt.coords()).is_zero())
    }

    /// Values of each generator at `pt`.
    pub fn evaluate(&self, pt: &IgusaPoint) -> Vec<FieldElement> {
        self.generators.iter().map(|(_, h)| h.eval(pt.field(), pt.coords())).collect()
    }
}

type RawIdeal = &'static [(&'static str, &'static str)];

const D4_GENERIC: RawIdeal = &[
    ("h5", "J2^5 - 64J2^3J4 + 1216J2J4^2 - 5760J4J6 + 768J2J8 - 128000J10"),
    ("h6", "J2^4J4 - 74J2^2J4^2 + 1456J4^3 - 4320J6^2 - 40J2^2J8 + 1728J4J8 - 3200J2J10"),
];
const D4_CHAR5: RawIdeal = &[
    ("h4", "J2^4 + J2^2J4 + J4^2 + 3J8"),
    ("h8", "2J2^2J4^3 + 2J4^4 + 3J4J6^2 + 3J2^2J4J8 + J4^2J8 + 2J8^2 + J2^3J10"),
    ("h9", "J6^3 + 2J2J4^2J8 + 3J2J8^2 + J2^2J4J10"),
];
const D6_CHAR3: RawIdeal = &[("h2", "J4"), ("h5", "J2J8 - J10")];
const D6_CHAR5: RawIdeal = &[
    ("h4", "J2J6 + 4J8"),
    ("h8", "3J4J6^2 + 4J2^2J4J8 + J8^2 + J2^3J10"),
    ("h9", "J6^3 + J4J6J8 + 3J2J8^2 + J2^2J4J10"),
];
const D6_GENERIC: RawIdeal = &[
    ("h5", "2J2^2J6 - 45J4J6 - 2J2J8 - 375J10"),
    ("h6", "-175J4^3 + 9J2^3J6 - 675J6^2 - 9J2^2J8 - 540J4J8"),
];
const Z_GENERIC: RawIdeal = &[
    ("h5", "J2^5 - 56J2^3J4 + 912J2J4^2 - 3456J4J6 + 576J2J8 + 17408J10"),
    ("h6", "3J2^4J4 - 150J2^2J4^2 + 1871J4^3 + 27J6^2 + 73J2^2J8 - 1764J4J8 + 1904J2J10"),
];
const Z_CHAR17: RawIdeal = &[
    ("h3", "J2^3 + 2J2J4 + 8J6"),
    (
        "h10",
        "5J4^5 + 10J4^2J6^2 + J2^4J4J8 + 3J4^3J8 + 16J6^2J8 + 16J4J8^2 + 5J2J4^2J10 + 9J4J6J10 + 2J2J8J10 + 11J10^2",
    ),
];

const RAW_IDEALS: [RawIdeal; 7] = [D4_GENERIC, D4_CHAR5, D6_CHAR3, D6_CHAR5, D6_GENERIC, Z_GENERIC, Z_CHAR17];

fn parsed_ideals() -> &'static Vec<Vec<(&'static str, WPoly)>> {
    static CELL: OnceLock<Vec<Vec<(&'static str, WPoly)>>> = OnceLock::new();
    CELL.get_or_init(|| {
        RAW_IDEALS
            .iter()
            .map(|raw| {
                raw.iter()
                    .map(|(name, text)| {
                        let h = WPoly::parse(text).expect("stored generator parses");
                        (*name, h)
                    })
                    .collect()
            })
            .collect()
    })
}

/// The defining equations of `W_{>=D4}`, `W_{>=D6}` or `Z` in characteristic `p`.
pub fn stratum_ideal(stratum: Stratum, p: u64) -> Result<StratumIdeal> {
    let unsupported = || Error::UnsupportedStratum { label: stratum.to_string(), p };
    if p < 3 || p % 2 == 0 {
        return Err(unsupported());
    }
    let idx = match (stratum, p) {
        (Stratum::Group(AutLabel::D4), 5) => 1,
        (Stratum::Group(AutLabel::D4), _) => 0,
        (Stratum::Group(AutLabel::D6), 3) => 2,
        (Stratum::Group(AutLabel::D6), 5) => 3,
        (Stratum::Group(AutLabel::D6), _) => 4,
        (Stratum::Z, 17) => 6,
        (Stratum::Z, _) => 5,
        _ => return Err(unsupported()),
    };
    Ok(StratumIdeal { stratum, p, generators: parsed_ideals()[idx].clone() })
}

/// The isolated point of each zero-dimensional stratum in characteristic `p`.
pub fn special_points(p: u64) -> Vec<(AutLabel, [i64; 5])> {
    let mut out = Vec::new();
    if p == 5 {
        out.push((AutLabel::SL2F5, [0, 0, 0, 0, 1]));
        return out;
    }
    out.push((AutLabel::C10, [0, 0, 0, 0, 1]));
    out.push((AutLabel::GL2F3, [20, 30, -20, -325, 64]));
    if p != 3 {
        out.push((AutLabel::C3sD4, [120, 330, -320, -36825, 11664]));
    }
    out
}

/// The strata through `pt` that are decided by equations: `D4`, `D6`, `Z` and the isolated
/// points. Membership in `W_{>=C2xC2}` needs the automorphism oracle and is not included.
pub fn stratum_membership(pt: &IgusaPoint) -> Result<BTreeSet<Stratum>> {
    if !pt.check_relation() {
        return Err(Error::RelationViolated);
    }
    if pt.j10().is_zero() {
        return Err(Error::Domain { op: "stratum_membership", detail: "J10 = 0 is not a smooth curve".into() });
    }
    let p = pt.field().p();
    let mut out = BTreeSet::new();
    for s in [Stratum::Group(AutLabel::D4), Stratum::Group(AutLabel::D6), Stratum::Z] {
        if stratum_ideal(s, p)?.contains(pt) {
            out.insert(s);
        }
    }
    let key = pt.key();
    for (label, coords) in special_points(p) {
        if let Ok(q) = IgusaPoint::from_i64s(pt.field(), coords) {
            if q.key() == key {
                out.insert(Stratum::Group(label));
            }
        }
    }
    Ok(out)
}

/// `;`-joined names, for CSV output.
pub fn render_strata(s: &BTreeSet<Stratum>) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime_field;

    #[test]
    fn generators_are_weighted_homogeneous() {
        let degrees: [&[u32]; 7] = [&[5, 6], &[4, 8, 9], &[2, 5], &[4, 8, 9], &[5, 6], &[5, 6], &[3, 10]];
        for (ideal, want) in parsed_ideals().iter().zip(degrees) {
            let got: Vec<u32> = ideal.iter().map(|(_, h)| h.weighted_degree().unwrap()).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn ideal_selection() {
        let d4 = stratum_ideal(Stratum::Group(AutLabel::D4), 7).unwrap();
        assert_eq!(d4.generators[0].1.terms[0], (1, [5, 0, 0, 0, 0]));
        assert_eq!(d4.generators[0].1.terms.last().unwrap().0, -128000);
        let d6 = stratum_ideal(Stratum::Group(AutLabel::D6), 3).unwrap();
        assert_eq!(d6.generators[0].1.display(), "J4");
        assert_eq!(d6.generators[1].1.display(), "J2J8 - J10");
        let z = stratum_ideal(Stratum::Z, 17).unwrap();
        assert_eq!(z.generators[0].0, "h3");
        assert!(stratum_ideal(Stratum::Group(AutLabel::C10), 7).is_err());
        assert!(stratum_ideal(Stratum::Group(AutLabel::D4), 2).is_err());
    }

    #[test]
    fn special_point_membership() {
        let f = prime_field(11).unwrap();
        let pt = IgusaPoint::from_i64s(&f, [20, 30, -20, -325, 64]).unwrap();
        let m = stratum_membership(&pt).unwrap();
        assert!(m.contains(&Stratum::Group(AutLabel::D6)));
        assert!(m.contains(&Stratum::Group(AutLabel::GL2F3)));
        assert!(!m.contains(&Stratum::Group(AutLabel::C10)));
        let bad = IgusaPoint::from_i64s(&f, [0, 1, 0, 0, 1]).unwrap();
        assert!(stratum_membership(&bad).is_err());
    }

    #[test]
    fn stratum_names_round_trip() {
        for s in [Stratum::Z, Stratum::Group(AutLabel::D4), Stratum::Group(AutLabel::SL2F5)] {
            assert_eq!(s.to_string().parse::<Stratum>().unwrap(), s);
        }
    }
}
