//! Explicit exotic SO(p,q)-Higgs bundles `(V, W, η)` built from a
//! `K^p`-twisted SO(1, q−p+1) pair `(I, W₀, η_p)` and differentials
//! `q₂, …, q_{2p−2}`:
//!
//! ```text
//!     V = I ⊗ K_p,   W = W₀ ⊕ I ⊗ K_{p−1},   η = [ μ | σ(q⃗) ],   μ = (η_p, 0, …, 0)ᵀ
//! ```
//!
//! Matrix-level models take `I = O`; a nonzero torsion label is only
//! handled by the atlas.

mod serial;
mod verify;

pub use serial::{deserialize_model, serialize_model, MODEL_FORMAT_VERSION};
pub use verify::{verify_model, CheckStatus, ModelCheck, VerificationReport};

use num_traits::Zero;

use crate::curve::{decompose, CurveModel, PluriSection};
use crate::error::{Error, Result};
use crate::exact::{mat_pfaffian, FFMatrix, RatMatrix, Rational};
use crate::hitchin::{
    assemble_so_field, hitchin_section, invariant_sections, split_form, CanonicalChain, EtaBlock,
    HitchinInput, OrthogonalForm,
};
use crate::invariants::{
    exotic_sector, sw1_of_v, sw2_of_split_orthogonal, z2_add, SectorLabel, Z2Class,
};

/// `W₀ = ⊕ (K^{e} ⊕ K^{−e}) ⊕ Oᵏ`, summands listed pair by pair, trivial ones last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSplitBundle {
    hyperbolic_twists: Vec<i64>,
    trivial_count: usize,
    torsion_label: Z2Class,
}

impl OrthogonalSplitBundle {
    pub fn new(
        hyperbolic_twists: Vec<i64>,
        trivial_count: usize,
        torsion_label: Z2Class,
    ) -> Result<Self> {
        if let Some(e) = hyperbolic_twists.iter().find(|&&e| e < 1) {
            return Err(Error::Invalid(format!(
                "hyperbolic twists must be >= 1, got {e}"
            )));
        }
        Ok(OrthogonalSplitBundle {
            hyperbolic_twists,
            trivial_count,
            torsion_label,
        })
    }

    /// `trivial_count` copies of `O` with trivial torsion label.
    pub fn trivial(count: usize, g: usize) -> Self {
        OrthogonalSplitBundle {
            hyperbolic_twists: Vec::new(),
            trivial_count: count,
            torsion_label: Z2Class::zero(g),
        }
    }

    pub fn hyperbolic_twists(&self) -> &[i64] {
        &self.hyperbolic_twists
    }

    pub fn trivial_count(&self) -> usize {
        self.trivial_count
    }

    pub fn torsion_label(&self) -> &Z2Class {
        &self.torsion_label
    }

    pub fn rank(&self) -> usize {
        2 * self.hyperbolic_twists.len() + self.trivial_count
    }

    pub fn summand_twists(&self) -> Vec<i64> {
        self.hyperbolic_twists
            .iter()
            .flat_map(|&e| [e, -e])
            .chain(std::iter::repeat_n(0, self.trivial_count))
            .collect()
    }

    pub fn form(&self) -> OrthogonalForm {
        let mut blocks: Vec<OrthogonalForm> = self
            .hyperbolic_twists
            .iter()
            .map(|_| OrthogonalForm::anti_diagonal(2))
            .collect();
        if self.trivial_count > 0 {
            blocks.push(OrthogonalForm::identity(self.trivial_count));
        }
        OrthogonalForm::block_diag(&blocks)
    }

    /// Degrees `e(2g−2)` of the positive halves of the hyperbolic pairs.
    pub fn positive_degrees(&self, g: usize) -> Vec<i64> {
        self.hyperbolic_twists
            .iter()
            .map(|e| e * (2 * g as i64 - 2))
            .collect()
    }
}

/// `(I, W₀, η_p)` with `η_p: W₀ → I ⊗ K^p`, one component per summand of `W₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPair {
    curve: CurveModel,
    p: usize,
    w0: OrthogonalSplitBundle,
    eta_p: Vec<PluriSection>,
}

impl TwistedPair {
    pub fn new(
        curve: &CurveModel,
        p: usize,
        w0: OrthogonalSplitBundle,
        eta_p: Vec<PluriSection>,
    ) -> Result<Self> {
        let twists = w0.summand_twists();
        if eta_p.len() != twists.len() {
            return Err(Error::LengthMismatch(eta_p.len(), twists.len()));
        }
        if w0.torsion_label.genus() != curve.genus() {
            return Err(Error::Invalid("torsion label length must be 2g".into()));
        }
        for (k, (s, d)) in eta_p.iter().zip(&twists).enumerate() {
            let want = p as i64 - d;
            if s.twist() != want {
                return Err(Error::TwistMismatch(format!(
                    "eta_p component {k} has twist {}, expected {want}",
                    s.twist()
                )));
            }
            if s.curve() != curve {
                return Err(Error::CurveMismatch);
            }
            if !s.is_holomorphic() {
                return Err(Error::NotHolomorphic(format!("eta_p component {k}")));
            }
        }
        Ok(TwistedPair {
            curve: curve.clone(),
            p,
            w0,
            eta_p,
        })
    }

    /// Twists required for each `η_p` component.
    pub fn component_twists(p: usize, w0: &OrthogonalSplitBundle) -> Vec<i64> {
        w0.summand_twists().iter().map(|d| p as i64 - d).collect()
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn w0(&self) -> &OrthogonalSplitBundle {
        &self.w0
    }

    pub fn eta_p(&self) -> &[PluriSection] {
        &self.eta_p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsModel {
    curve: CurveModel,
    p: usize,
    q: usize,
    w0: OrthogonalSplitBundle,
    v_twists: CanonicalChain,
    w_twists: Vec<i64>,
    eta: EtaBlock,
    qv: OrthogonalForm,
    qw: OrthogonalForm,
    sector: SectorLabel,
}

impl HiggsModel {
    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn w0(&self) -> &OrthogonalSplitBundle {
        &self.w0
    }

    pub fn v_twists(&self) -> &[i64] {
        self.v_twists.twists()
    }

    pub fn w_twists(&self) -> &[i64] {
        &self.w_twists
    }

    pub fn eta(&self) -> &EtaBlock {
        &self.eta
    }

    pub fn qv(&self) -> &OrthogonalForm {
        &self.qv
    }

    pub fn qw(&self) -> &OrthogonalForm {
        &self.qw
    }

    pub fn sector(&self) -> &SectorLabel {
        &self.sector
    }

    /// Mutable access to `η`, for building corrupted fixtures in tests.
    pub fn eta_mut(&mut self) -> &mut EtaBlock {
        &mut self.eta
    }

    pub fn set_sector(&mut self, sector: SectorLabel) {
        self.sector = sector;
    }

    /// `Q = diag(q_V, −q_W)`.
    pub fn form(&self) -> RatMatrix {
        split_form(&self.qv, &self.qw)
    }

    /// The complexified field `Φ` on `V ⊕ W`.
    pub fn field(&self) -> Result<FFMatrix> {
        assemble_so_field(&self.eta, &self.qv, &self.qw)
    }

    /// The `σ(q⃗)` columns of `η`.
    pub fn section_block(&self) -> EtaBlock {
        let r = self.w0.rank();
        self.eta.column_block(r..self.q)
    }

    /// The `μ` columns of `η`.
    pub fn mu_block(&self) -> EtaBlock {
        self.eta.column_block(0..self.w0.rank())
    }

    /// `(sw₁(V), sw₂(V), sw₂(W))` from the summand degrees.
    pub fn computed_sector(&self) -> Result<SectorLabel> {
        computed_sector(&self.curve, self.p, &self.w0)
    }

    /// Formal `sw₁` labels of `det V = I^p` and `det W = det W₀ ⊗ I^{p−1}`.
    pub fn det_labels(&self) -> Result<(Z2Class, Z2Class)> {
        let a = &self.w0.torsion_label;
        let det_v = sw1_of_v(self.p, a);
        let det_w = z2_add(a, &a.times(self.p - 1))?;
        Ok((det_v, det_w))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        curve: CurveModel,
        p: usize,
        q: usize,
        w0: OrthogonalSplitBundle,
        eta: EtaBlock,
        sector: SectorLabel,
    ) -> Result<Self> {
        let v = CanonicalChain::new(p);
        let w_twists = w_twists(&w0, p);
        if eta.rows() != v.twists() || eta.cols() != w_twists.as_slice() {
            return Err(Error::IncompatibleTwists(
                "eta grid does not match V = K_p and W = W0 + K_(p-1)".into(),
            ));
        }
        let qv = v.form();
        let qw = OrthogonalForm::block_diag(&[w0.form(), OrthogonalForm::anti_diagonal(p - 1)]);
        Ok(HiggsModel {
            curve,
            p,
            q,
            w0,
            v_twists: v,
            w_twists,
            eta,
            qv,
            qw,
            sector,
        })
    }
}

fn w_twists(w0: &OrthogonalSplitBundle, p: usize) -> Vec<i64> {
    let mut t = w0.summand_twists();
    t.extend_from_slice(CanonicalChain::new(p - 1).twists());
    t
}

fn chain_positive_degrees(p: usize, g: usize) -> Vec<i64> {
    CanonicalChain::new(p)
        .twists()
        .iter()
        .filter(|&&t| t > 0)
        .map(|t| t * (2 * g as i64 - 2))
        .collect()
}

fn computed_sector(
    curve: &CurveModel,
    p: usize,
    w0: &OrthogonalSplitBundle,
) -> Result<SectorLabel> {
    let g = curve.genus();
    let b = sw2_of_split_orthogonal(&chain_positive_degrees(p, g));
    let mut w_degrees = w0.positive_degrees(g);
    w_degrees.extend(chain_positive_degrees(p - 1, g));
    let c = sw2_of_split_orthogonal(&w_degrees);
    SectorLabel::new(sw1_of_v(p, &w0.torsion_label), b, c)
}

/// The map `((I, W₀, η_p); q⃗) ↦ (V, W, η)`.
pub fn build_exotic_model(
    pair: &TwistedPair,
    diffs: &HitchinInput,
    q: usize,
) -> Result<HiggsModel> {
    let p = pair.p;
    if p < 2 || p > q {
        return Err(Error::Unsupported {
            p,
            q,
            reason: "exotic models need 2 <= p <= q".into(),
        });
    }
    let expected = q - p + 1;
    if pair.w0.rank() != expected {
        return Err(Error::W0Rank {
            expected,
            got: pair.w0.rank(),
        });
    }
    if diffs.p() != p {
        return Err(Error::TwistMismatch(format!(
            "differentials are for p = {}, pair has p = {p}",
            diffs.p()
        )));
    }
    if diffs.curve() != &pair.curve {
        return Err(Error::CurveMismatch);
    }
    if !pair.w0.torsion_label.is_zero() {
        return Err(Error::LabelLevelOnly);
    }
    let curve = &pair.curve;
    let v = CanonicalChain::new(p);
    let mut mu = EtaBlock::zero(curve, v.twists(), &pair.w0.summand_twists());
    for (j, s) in pair.eta_p.iter().enumerate() {
        mu.set(0, j, s.clone())?;
    }
    let eta = mu.hconcat(&hitchin_section(diffs)?)?;

    let computed = computed_sector(curve, p, &pair.w0)?;
    let predicted = exotic_sector(p, &pair.w0.torsion_label, computed.c)?;
    if computed != predicted {
        return Err(Error::Internal(format!(
            "sector {computed} differs from predicted {predicted}"
        )));
    }
    HiggsModel::from_parts(curve.clone(), p, q, pair.w0.clone(), eta, predicted)
}

/// Invariant polynomials of a model's field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInvariants {
    /// Coordinates of the coefficient of `λ^{N−2k}` in `H⁰(K^{2k})`, `k = 1 ..= N/2`.
    pub coefficients: Vec<Vec<Rational>>,
    /// Coordinates of `pf(QΦ)` in `H⁰(K^{N/2})` when `N = p+q` is even.
    pub pfaffian: Option<Vec<Rational>>,
}

impl ModelInvariants {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().flatten().all(Zero::is_zero)
            && self.pfaffian.iter().flatten().all(Zero::is_zero)
    }
}

pub fn model_charpoly(m: &HiggsModel) -> Result<ModelInvariants> {
    let phi = m.field()?;
    let sections =
        invariant_sections(&phi, &m.curve).map_err(|e| Error::Internal(e.to_string()))?;
    let coefficients = sections
        .iter()
        .map(decompose)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let n = m.p + m.q;
    let pfaffian = if n.is_multiple_of(2) {
        let qphi = phi.left_mul_rational(&m.form())?;
        let pf = mat_pfaffian(&qphi)?;
        let s = PluriSection::from_ff(&m.curve, n as i64 / 2, &pf)
            .map_err(|e| Error::Internal(format!("pfaffian: {e}")))?;
        Some(decompose(&s)?)
    } else {
        None
    };
    Ok(ModelInvariants {
        coefficients,
        pfaffian,
    })
}
