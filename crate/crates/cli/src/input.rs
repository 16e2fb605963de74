//! Curves, points and fields from flags or from JSON written by an earlier run.

use std::path::Path;

use genus2::algebra::{field, Field};
use genus2::curve::{parse_coefficients, CurveJson, Genus2Curve};
use genus2::igusa::{IgusaPoint, IgusaPointJson};
use genus2::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::{CurveInput, Global};

pub fn base_field(g: &Global) -> Result<Field> {
    let p = g.p.ok_or_else(|| Error::Parse("--p is required".into()))?;
    field(p, g.ext)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// The object under the first of `keys` present in `v`, else `v` itself.
fn unwrap_envelope<'a>(v: &'a Value, keys: &[&str]) -> &'a Value {
    keys.iter().find_map(|k| v.get(*k)).unwrap_or(v)
}

pub fn curve(input: &CurveInput, g: &Global) -> Result<Genus2Curve> {
    let sources = [input.curve.is_some(), input.input.is_some(), input.random].iter().filter(|b| **b).count();
    if sources != 1 {
        return Err(Error::Parse("give exactly one of --curve, --in, --random".into()));
    }
    if let Some(path) = &input.input {
        let v = read_json(path)?;
        let json: CurveJson = serde_json::from_value(unwrap_envelope(&v, &["curve"]).clone())?;
        return Genus2Curve::from_json(&json);
    }
    let f = base_field(g)?;
    if input.random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        return Ok(Genus2Curve::random(&f, &mut rng));
    }
    let rhs = parse_coefficients(&f, input.curve.as_deref().unwrap_or_default())?;
    let lhs = parse_coefficients(&f, input.g.as_deref().unwrap_or_default())?;
    Genus2Curve::new(lhs, rhs)
}

pub fn point(text: Option<&str>, path: Option<&Path>, g: &Global) -> Result<IgusaPoint> {
    match (text, path) {
        (Some(s), None) => IgusaPoint::parse(&base_field(g)?, s),
        (None, Some(path)) => {
            let v = read_json(path)?;
            let json: IgusaPointJson = serde_json::from_value(unwrap_envelope(&v, &["point", "invariants"]).clone())?;
            IgusaPoint::from_json(&json)
        }
        _ => Err(Error::Parse("give exactly one of --point, --in".into())),
    }
}
