use std::fmt;

use serde::Serialize;

use super::HiggsModel;
use crate::hitchin::{
    assemble_so_field, hitchin_fibration, hitchin_section, is_orthogonal_field, CanonicalChain,
    HitchinInput,
};
use crate::invariants::exotic_sector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotChecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<ModelCheck>,
}

impl VerificationReport {
    /// No check failed (`not_checked` entries do not count against it).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name)
            .collect()
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.status)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotChecked => "SKIP",
            };
            writeln!(f, "{tag:<4} {:<16} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, result: Result<String, String>) -> ModelCheck {
    match result {
        Ok(detail) => ModelCheck {
            name,
            status: CheckStatus::Pass,
            detail,
        },
        Err(detail) => ModelCheck {
            name,
            status: CheckStatus::Fail,
            detail,
        },
    }
}

/// Runs every structural check on `m`; failures are report entries, never errors.
pub fn verify_model(m: &HiggsModel) -> VerificationReport {
    let checks = vec![
        check("entry_twists", entry_twists(m)),
        check("orthogonality", orthogonality(m)),
        check("non_vanishing", non_vanishing(m)),
        check("sector", sector(m)),
        check("det_labels", det_labels(m)),
        check("mu_column", mu_column(m)),
        check("section_block", section_block(m)),
        ModelCheck {
            name: "polystability",
            status: CheckStatus::NotChecked,
            detail: "not checked: out of scope".into(),
        },
    ];
    VerificationReport { checks }
}

fn entry_twists(m: &HiggsModel) -> Result<String, String> {
    let eta = m.eta();
    let mut count = 0;
    for i in 0..eta.rows().len() {
        for j in 0..eta.cols().len() {
            let e = eta.get(i, j);
            let want = eta.required_twist(i, j);
            if e.twist() != want {
                return Err(format!(
                    "entry ({i},{j}) has twist {} instead of {want}",
                    e.twist()
                ));
            }
            if !e.is_holomorphic() {
                return Err(format!(
                    "entry ({i},{j}) violates the degree bounds of K^{want}"
                ));
            }
            if want == 0 && !e.is_constant() {
                return Err(format!("entry ({i},{j}) of twist 0 is not constant"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} entries within bounds"))
}

fn orthogonality(m: &HiggsModel) -> Result<String, String> {
    let phi = m.field().map_err(|e| e.to_string())?;
    match is_orthogonal_field(&phi, &m.form()) {
        Ok(true) => Ok(format!(
            "Phi^T Q + Q Phi = 0 ({}x{})",
            phi.rows(),
            phi.cols()
        )),
        Ok(false) => Err("Phi^T Q + Q Phi != 0".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn non_vanishing(m: &HiggsModel) -> Result<String, String> {
    let eta = m.eta();
    for i in 0..eta.rows().len() {
        for j in 0..eta.cols().len() {
            let e = eta.get(i, j);
            if e.is_constant() && !e.is_zero() {
                return Ok(format!("constant entry at ({i},{j})"));
            }
        }
    }
    Err("no nonzero constant entry in eta".into())
}

fn sector(m: &HiggsModel) -> Result<String, String> {
    let computed = m.computed_sector().map_err(|e| e.to_string())?;
    let predicted =
        exotic_sector(m.p(), m.w0().torsion_label(), computed.c).map_err(|e| e.to_string())?;
    if computed != predicted {
        return Err(format!("computed {computed} but expected {predicted}"));
    }
    if m.sector() != &computed {
        return Err(format!("stored {} but computed {computed}", m.sector()));
    }
    Ok(format!("sector {computed}"))
}

fn det_labels(m: &HiggsModel) -> Result<String, String> {
    let (v, w) = m.det_labels().map_err(|e| e.to_string())?;
    if v == w {
        Ok(format!("sw1(det V) = sw1(det W) = {v}"))
    } else {
        Err(format!("sw1(det V) = {v} but sw1(det W) = {w}"))
    }
}

fn mu_column(m: &HiggsModel) -> Result<String, String> {
    let mu = m.mu_block();
    for (i, row) in mu.entries().iter().enumerate().skip(1) {
        if let Some(j) = row.iter().position(|e| !e.is_zero()) {
            return Err(format!(
                "mu has a nonzero entry below the top row at ({i},{j})"
            ));
        }
    }
    Ok("mu = (eta_p, 0, ..., 0)".into())
}

/// The `σ` columns must be the Hitchin section of their own invariants.
fn section_block(m: &HiggsModel) -> Result<String, String> {
    let block = m.section_block();
    let p = m.p();
    let phi = assemble_so_field(
        &block,
        &CanonicalChain::new(p).form(),
        &CanonicalChain::new(p - 1).form(),
    )
    .map_err(|e| e.to_string())?;
    let coords = hitchin_fibration(&phi, m.curve()).map_err(|e| e.to_string())?;
    let input = HitchinInput::from_coords(m.curve(), p, &coords).map_err(|e| e.to_string())?;
    let rebuilt = hitchin_section(&input).map_err(|e| e.to_string())?;
    if rebuilt == block {
        Ok("sigma block lies on the Hitchin section".into())
    } else {
        Err("sigma block is not the Hitchin section of its invariants".into())
    }
}
