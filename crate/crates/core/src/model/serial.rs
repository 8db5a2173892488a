//! Canonical JSON for [`HiggsModel`]: sorted keys, rationals as `"num/den"`.

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use super::{HiggsModel, OrthogonalSplitBundle};
use crate::curve::{CurveFile, PluriSection};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Poly};
use crate::hitchin::EtaBlock;
use crate::invariants::{SectorLabel, Z2Class};

pub const MODEL_FORMAT_VERSION: &str = "1";

// Field order is alphabetical so the derived output is already canonical.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    curve: CurveFile,
    eta: EtaFile,
    p: usize,
    q: usize,
    sector: SectorLabel,
    version: String,
    w0: W0File,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EtaFile {
    cols: Vec<i64>,
    entries: Vec<Vec<SectionFile>>,
    rows: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionFile {
    a: Vec<String>,
    b: Vec<String>,
    twist: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct W0File {
    hyperbolic_twists: Vec<i64>,
    torsion_label: Z2Class,
    trivial_count: usize,
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn parse_poly(v: &[String]) -> Result<Poly> {
    Ok(Poly::new(
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

pub fn serialize_model(m: &HiggsModel) -> String {
    let eta = m.eta();
    let file = ModelFile {
        curve: CurveFile::from_curve(m.curve()),
        eta: EtaFile {
            cols: eta.cols().to_vec(),
            entries: eta
                .entries()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| SectionFile {
                            a: poly_strings(s.a()),
                            b: poly_strings(s.b()),
                            twist: s.twist(),
                        })
                        .collect()
                })
                .collect(),
            rows: eta.rows().to_vec(),
        },
        p: m.p(),
        q: m.q(),
        sector: m.sector().clone(),
        version: MODEL_FORMAT_VERSION.to_string(),
        w0: W0File {
            hyperbolic_twists: m.w0().hyperbolic_twists().to_vec(),
            torsion_label: m.w0().torsion_label().clone(),
            trivial_count: m.w0().trivial_count(),
        },
    };
    // Going through Value sorts nested keys regardless of struct layout.
    let value = serde_json::to_value(&file).expect("model file is plain data");
    let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
    out.push('\n');
    out
}

/// Parses a model file. Entries are not checked against their degree
/// bounds here; that is [`super::verify_model`]'s job.
pub fn deserialize_model(text: &str) -> Result<HiggsModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| match e.classify() {
        Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse(e.to_string()),
    })?;
    if file.version != MODEL_FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported version {:?} (expected {MODEL_FORMAT_VERSION:?})",
            file.version
        )));
    }
    let curve = file.curve.to_curve()?;
    if file.p < 2 || file.p > file.q {
        return Err(Error::Schema(format!(
            "need 2 <= p <= q, got p={} q={}",
            file.p, file.q
        )));
    }
    let w0 = OrthogonalSplitBundle::new(
        file.w0.hyperbolic_twists,
        file.w0.trivial_count,
        file.w0.torsion_label,
    )?;
    if w0.rank() != file.q - file.p + 1 {
        return Err(Error::W0Rank {
            expected: file.q - file.p + 1,
            got: w0.rank(),
        });
    }
    if w0.torsion_label().genus() != curve.genus() {
        return Err(Error::Schema("w0.torsion_label must have 2g bits".into()));
    }
    if file.sector.a.genus() != curve.genus() || file.sector.b > 1 || file.sector.c > 1 {
        return Err(Error::Schema("sector must be (2g bits, bit, bit)".into()));
    }
    let entries = file
        .eta
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    Ok(PluriSection::raw(
                        &curve,
                        s.twist,
                        parse_poly(&s.a)?,
                        parse_poly(&s.b)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = EtaBlock::from_entries(&curve, &file.eta.rows, &file.eta.cols, entries)
        .map_err(|e| Error::Schema(format!("eta: {e}")))?;
    HiggsModel::from_parts(curve, file.p, file.q, w0, eta, file.sector)
        .map_err(|e| Error::Schema(e.to_string()))
}
