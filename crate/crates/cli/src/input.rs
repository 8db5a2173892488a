//! Input file formats for the `sopq` commands.

use std::fs;
use std::path::Path;

use serde_json::Value;
use sopq_core::curve::{parse_curve_json, CurveModel};
use sopq_core::exact::{parse_rational, Rational};
use sopq_core::invariants::Z2Class;
use sopq_core::model::OrthogonalSplitBundle;
use sopq_core::{Error, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Curve file `{"genus": g, "f": [c0, …, c_{2g+2}]}`; the genus must agree
/// with `--genus`.
pub fn curve(path: &Path, genus: usize) -> Result<CurveModel> {
    let c = parse_curve_json(&read(path)?)?;
    if c.genus() != genus {
        return Err(Error::Invalid(format!(
            "--genus {genus} but {} describes a genus {} curve",
            path.display(),
            c.genus()
        )));
    }
    Ok(c)
}

fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(Error::Schema(format!(
            "expected a rational string, got {other}"
        ))),
    }
}

/// A JSON array of coordinate vectors, e.g. `[["1/2", "0/1"], ["3/1"]]`.
pub fn coordinate_vectors(path: &Path) -> Result<Vec<Vec<Rational>>> {
    let v = json(path)?;
    let outer = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("{}: expected an array of arrays", path.display())))?;
    outer
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| {
                    Error::Schema(format!("{}: expected an array of arrays", path.display()))
                })?
                .iter()
                .map(rational)
                .collect()
        })
        .collect()
}

/// `{"hyperbolic_twists": [e…], "trivial_count": n, "torsion_label": "0000"}`;
/// the torsion label defaults to zero.
pub fn w0(path: &Path, genus: usize) -> Result<OrthogonalSplitBundle> {
    let v = json(path)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema(format!("{}: expected an object", path.display())))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "hyperbolic_twists" | "trivial_count" | "torsion_label"
        ) {
            return Err(Error::Schema(format!(
                "{}: unknown field `{key}`",
                path.display()
            )));
        }
    }
    let twists = obj
        .get("hyperbolic_twists")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing field `hyperbolic_twists`".into()))?
        .iter()
        .map(|e| {
            e.as_i64()
                .ok_or_else(|| Error::Schema("hyperbolic twists must be integers".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let trivial =
        obj.get("trivial_count")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("missing field `trivial_count`".into()))? as usize;
    let label = match obj.get("torsion_label") {
        None => Z2Class::zero(genus),
        Some(Value::String(s)) => s.parse::<Z2Class>()?,
        Some(_) => return Err(Error::Schema("torsion_label must be a bit string".into())),
    };
    if label.genus() != genus {
        return Err(Error::Invalid(format!(
            "torsion_label needs {} bits",
            2 * genus
        )));
    }
    OrthogonalSplitBundle::new(twists, trivial, label)
}
