//! The Hitchin section for SO(p,p−1) in explicit coordinates.
//!
//! `V = K_p = K^{p−1} ⊕ K^{p−3} ⊕ … ⊕ K^{1−p}` and `W = K_{p−1}`, both listed
//! in decreasing twist. A block `η: W → V ⊗ K` has entry `(i, j)` in
//! `H⁰(K^{t_i − s_j + 1})`. The complexified field on `V ⊕ W` is
//!
//! ```text
//!     Φ = [[0, η], [η*, 0]],   η* = q_W⁻¹ ηᵀ q_V,
//! ```
//!
//! which is exactly the condition `Φᵀ Q + Q Φ = 0` for `Q = diag(q_V, −q_W)`.
//!
//! Interleaving the summands of `V` and `W` by twist gives a chain of
//! `2p − 1` line bundles on which the unit entries of `η` and `η*` form the
//! principal nilpotent. The differential `q_{2k}` is placed on the unique
//! η-entry of twist `2k` whose cycle in that chain passes through the middle
//! (twist 0) summand; its mirror in `η*` does the same. Any two such cycles
//! share the middle vertex, so no products of disjoint cycles occur and the
//! coefficient of `λ^{N−2k}` is linear in `q_{2k}` alone. The rational
//! placement constants are solved for once per `p` and memoized.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{decompose, from_coords, pluri_dim, CurveModel, PluriSection};
use crate::error::{Error, Result};
use crate::exact::{mat_charpoly, FFElem, FFMatrix, RatMatrix, Rational};

/// Twists `[p−1, p−3, …, 1−p]` of `K_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalChain {
    p: usize,
    twists: Vec<i64>,
}

impl CanonicalChain {
    pub fn new(p: usize) -> Self {
        let twists = (0..p as i64).map(|i| p as i64 - 1 - 2 * i).collect();
        CanonicalChain { p, twists }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn form(&self) -> OrthogonalForm {
        OrthogonalForm::anti_diagonal(self.p)
    }
}

/// A constant, symmetric, invertible bilinear form on a split bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalForm {
    matrix: RatMatrix,
}

impl OrthogonalForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::Invalid("orthogonal form must be symmetric".into()));
        }
        if matrix.inverse().is_none() {
            return Err(Error::Invalid(
                "orthogonal form must be nondegenerate".into(),
            ));
        }
        Ok(OrthogonalForm { matrix })
    }

    pub fn anti_diagonal(n: usize) -> Self {
        OrthogonalForm {
            matrix: RatMatrix::anti_diagonal(n),
        }
    }

    pub fn identity(n: usize) -> Self {
        OrthogonalForm {
            matrix: RatMatrix::identity(n),
        }
    }

    pub fn block_diag(forms: &[OrthogonalForm]) -> Self {
        let blocks: Vec<RatMatrix> = forms.iter().map(|f| f.matrix.clone()).collect();
        OrthogonalForm {
            matrix: RatMatrix::block_diag(&blocks),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> RatMatrix {
        self.matrix.inverse().expect("validated nondegenerate")
    }

    /// The form only pairs `K^t` with `K^{−t}`.
    pub fn check_pairs_twists(&self, twists: &[i64]) -> Result<()> {
        if twists.len() != self.dim() {
            return Err(Error::IncompatibleTwists(format!(
                "form of size {} on {} summands",
                self.dim(),
                twists.len()
            )));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.matrix.get(i, j).is_zero() && twists[i] + twists[j] != 0 {
                    return Err(Error::IncompatibleTwists(format!(
                        "form pairs K^{} with K^{}",
                        twists[i], twists[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `Q = diag(q_V, −q_W)`.
pub fn split_form(qv: &OrthogonalForm, qw: &OrthogonalForm) -> RatMatrix {
    RatMatrix::block_diag(&[qv.matrix.clone(), qw.matrix.scale(&-Rational::one())])
}

/// The differentials `(q₂, q₄, …, q_{2p−2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinInput {
    curve: CurveModel,
    p: usize,
    diffs: Vec<PluriSection>,
}

impl HitchinInput {
    pub fn new(curve: &CurveModel, p: usize, diffs: Vec<PluriSection>) -> Result<Self> {
        if p < 2 {
            return Err(Error::Invalid(format!(
                "Hitchin input needs p >= 2, got {p}"
            )));
        }
        if diffs.len() != p - 1 {
            return Err(Error::TwistMismatch(format!(
                "expected {} differentials, got {}",
                p - 1,
                diffs.len()
            )));
        }
        for (j, q) in diffs.iter().enumerate() {
            let want = 2 * (j as i64 + 1);
            if q.twist() != want {
                return Err(Error::TwistMismatch(format!(
                    "differential {} has twist {}, expected {}",
                    j + 1,
                    q.twist(),
                    want
                )));
            }
            if q.curve() != curve {
                return Err(Error::CurveMismatch);
            }
            if !q.is_holomorphic() {
                return Err(Error::NotHolomorphic(format!("differential q_{want}")));
            }
        }
        Ok(HitchinInput {
            curve: curve.clone(),
            p,
            diffs,
        })
    }

    pub fn zero(curve: &CurveModel, p: usize) -> Result<Self> {
        let diffs = (1..p as i64)
            .map(|j| PluriSection::zero(curve, 2 * j))
            .collect();
        HitchinInput::new(curve, p, diffs)
    }

    /// Builds the input from basis coordinates of each `q_{2j}`.
    pub fn from_coords(curve: &CurveModel, p: usize, coords: &[Vec<Rational>]) -> Result<Self> {
        if coords.len() + 1 != p {
            return Err(Error::TwistMismatch(format!(
                "expected {} coordinate vectors, got {}",
                p.saturating_sub(1),
                coords.len()
            )));
        }
        let diffs = coords
            .iter()
            .enumerate()
            .map(|(j, c)| from_coords(curve, 2 * (j as i64 + 1), c))
            .collect::<Result<Vec<_>>>()?;
        HitchinInput::new(curve, p, diffs)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn diffs(&self) -> &[PluriSection] {
        &self.diffs
    }

    pub fn coords(&self) -> Vec<Vec<Rational>> {
        self.diffs
            .iter()
            .map(|q| decompose(q).expect("validated holomorphic"))
            .collect()
    }
}

/// A bundle map between split bundles, one section per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaBlock {
    curve: CurveModel,
    rows: Vec<i64>,
    cols: Vec<i64>,
    entries: Vec<Vec<PluriSection>>,
}

impl EtaBlock {
    pub fn zero(curve: &CurveModel, rows: &[i64], cols: &[i64]) -> Self {
        let entries = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| PluriSection::zero(curve, r - c + 1))
                    .collect()
            })
            .collect();
        EtaBlock {
            curve: curve.clone(),
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        }
    }

    /// Assembles a block from raw entries, checking only the twist grid.
    pub fn from_entries(
        curve: &CurveModel,
        rows: &[i64],
        cols: &[i64],
        entries: Vec<Vec<PluriSection>>,
    ) -> Result<Self> {
        let mut block = EtaBlock::zero(curve, rows, cols);
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::IncompatibleTwists(format!(
                "entry grid does not match {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        for (i, row) in entries.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                block.set(i, j, e)?;
            }
        }
        Ok(block)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    pub fn cols(&self) -> &[i64] {
        &self.cols
    }

    pub fn required_twist(&self, i: usize, j: usize) -> i64 {
        self.rows[i] - self.cols[j] + 1
    }

    pub fn get(&self, i: usize, j: usize) -> &PluriSection {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<PluriSection>] {
        &self.entries
    }

    /// Replaces an entry; its twist must match the grid.
    pub fn set(&mut self, i: usize, j: usize, s: PluriSection) -> Result<()> {
        let want = self.required_twist(i, j);
        if s.twist() != want {
            return Err(Error::IncompatibleTwists(format!(
                "entry ({i},{j}) has twist {}, grid requires {want}",
                s.twist()
            )));
        }
        if s.curve() != &self.curve {
            return Err(Error::CurveMismatch);
        }
        self.entries[i][j] = s;
        Ok(())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &EtaBlock) -> Result<EtaBlock> {
        if self.rows != other.rows {
            return Err(Error::IncompatibleTwists("row twists differ".into()));
        }
        if self.curve != other.curve {
            return Err(Error::CurveMismatch);
        }
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(EtaBlock {
            curve: self.curve.clone(),
            rows: self.rows.clone(),
            cols,
            entries,
        })
    }

    /// Columns `range` as a block of their own.
    pub fn column_block(&self, range: std::ops::Range<usize>) -> EtaBlock {
        EtaBlock {
            curve: self.curve.clone(),
            rows: self.rows.clone(),
            cols: self.cols[range.clone()].to_vec(),
            entries: self
                .entries
                .iter()
                .map(|r| r[range.clone()].to_vec())
                .collect(),
        }
    }

    /// Dehomogenized entries in the `(dx/y)ᵐ` frames.
    pub fn to_ff_matrix(&self) -> Result<FFMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(PluriSection::to_ff).collect())
            .collect();
        FFMatrix::from_rows(rows, self.curve.f().clone())
    }
}

/// `(row, col)` of the η entry carrying `q_{2k}` for the chain of rank `p`.
pub fn section_position(p: usize, k: usize) -> (usize, usize) {
    let row = (p - k) / 2;
    (row, row + k - 1)
}

fn section_with_constants(input: &HitchinInput, constants: &[Rational]) -> Result<EtaBlock> {
    let p = input.p;
    let curve = &input.curve;
    let v = CanonicalChain::new(p);
    let w = CanonicalChain::new(p - 1);
    let mut block = EtaBlock::zero(curve, v.twists(), w.twists());
    // principal raising operator: K^{s} → K^{s−1} ⊗ K
    for j in 0..p - 1 {
        block.set(j + 1, j, PluriSection::constant(curve, Rational::one()))?;
    }
    for (k0, q) in input.diffs.iter().enumerate() {
        let (i, j) = section_position(p, k0 + 1);
        block.set(i, j, q.scale(&constants[k0]))?;
    }
    Ok(block)
}

type PlacementMemo = RwLock<HashMap<usize, Arc<Vec<Rational>>>>;

fn placement_memo() -> &'static PlacementMemo {
    static MEMO: OnceLock<PlacementMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Rational constants `κ_k` such that `q_{2k}` placed as `κ_k·q_{2k}` makes
/// the coefficient of `λ^{N−2k}` equal to `q_{2k}`.
pub fn placement_constants(p: usize) -> Result<Arc<Vec<Rational>>> {
    if let Some(v) = placement_memo().read().expect("memo poisoned").get(&p) {
        return Ok(v.clone());
    }
    let solved = Arc::new(solve_placement(p)?);
    let mut w = placement_memo().write().expect("memo poisoned");
    Ok(w.entry(p).or_insert(solved).clone())
}

fn unit_diff(curve: &CurveModel, k: usize) -> PluriSection {
    PluriSection::constant(curve, Rational::one()).with_twist(2 * k as i64)
}

fn solve_placement(p: usize) -> Result<Vec<Rational>> {
    if p < 2 {
        return Err(Error::Invalid(format!(
            "Hitchin section needs p >= 2, got {p}"
        )));
    }
    // Constant probes never touch y, so any curve will do.
    let curve = CurveModel::standard(2)?;
    let ones = vec![Rational::one(); p - 1];
    let mut constants = Vec::with_capacity(p - 1);
    for k in 1..p {
        let diffs = (1..p)
            .map(|l| {
                if l == k {
                    unit_diff(&curve, l)
                } else {
                    PluriSection::zero(&curve, 2 * l as i64)
                }
            })
            .collect();
        let input = HitchinInput::new(&curve, p, diffs)?;
        let cp = charpoly_of_block(&section_with_constants(&input, &ones)?)?;
        for l in 1..p {
            let c = &cp[2 * l - 1];
            if l != k && !c.is_zero() {
                return Err(Error::Internal(format!(
                    "q_{} leaks into the degree-{} invariant",
                    2 * k,
                    2 * l
                )));
            }
        }
        let lead = cp[2 * k - 1]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal(format!("q_{} does not reach its invariant", 2 * k)))?;
        constants.push(Rational::one() / lead);
    }
    // All probes at once: any product of disjoint cycles would show up here.
    let all = HitchinInput::new(&curve, p, (1..p).map(|l| unit_diff(&curve, l)).collect())?;
    let cp = charpoly_of_block(&section_with_constants(&all, &constants)?)?;
    for k in 1..p {
        if cp[2 * k - 1].as_constant() != Some(Rational::one()) {
            return Err(Error::Internal(format!(
                "invariant of degree {} is not linear in the differentials",
                2 * k
            )));
        }
    }
    Ok(constants)
}

fn charpoly_of_block(eta: &EtaBlock) -> Result<Vec<FFElem>> {
    let p = eta.rows().len();
    let phi = assemble_so_field(
        eta,
        &OrthogonalForm::anti_diagonal(p),
        &OrthogonalForm::anti_diagonal(p - 1),
    )?;
    mat_charpoly(&phi)
}

impl PluriSection {
    fn with_twist(&self, m: i64) -> PluriSection {
        PluriSection::raw(self.curve(), m, self.a().clone(), self.b().clone())
    }
}

/// `σ(q₂, …, q_{2p−2})`: the `p × (p−1)` block `K_{p−1} → K_p ⊗ K`.
pub fn hitchin_section(input: &HitchinInput) -> Result<EtaBlock> {
    let constants = placement_constants(input.p)?;
    section_with_constants(input, &constants)
}

/// `Φ = [[0, η], [q_W⁻¹ ηᵀ q_V, 0]]` on `V ⊕ W`.
pub fn assemble_so_field(
    eta: &EtaBlock,
    qv: &OrthogonalForm,
    qw: &OrthogonalForm,
) -> Result<FFMatrix> {
    qv.check_pairs_twists(eta.rows())?;
    qw.check_pairs_twists(eta.cols())?;
    let (p, q) = (eta.rows().len(), eta.cols().len());
    let f = eta.curve().f().clone();
    let e = eta.to_ff_matrix()?;
    let e_star = e
        .transpose()
        .left_mul_rational(&qw.inverse())?
        .right_mul_rational(qv.matrix())?;
    let n = p + q;
    let mut phi = FFMatrix::zeros(n, n, f);
    for i in 0..p {
        for j in 0..q {
            phi.set(i, p + j, e.get(i, j).clone())?;
            phi.set(p + j, i, e_star.get(j, i).clone())?;
        }
    }
    Ok(phi)
}

/// `Φᵀ Q + Q Φ == 0`.
pub fn is_orthogonal_field(phi: &FFMatrix, q: &RatMatrix) -> Result<bool> {
    let lhs = phi.transpose().right_mul_rational(q)?;
    let rhs = phi.left_mul_rational(q)?;
    Ok(lhs.try_add(&rhs)?.is_zero())
}

/// Even characteristic-polynomial coefficients of `Φ` as sections of `K^{2k}`,
/// `k = 1 ..= N/2`. Odd coefficients must vanish identically.
pub fn invariant_sections(phi: &FFMatrix, curve: &CurveModel) -> Result<Vec<PluriSection>> {
    let cp = mat_charpoly(phi)?;
    let mut out = Vec::with_capacity(cp.len() / 2);
    for (idx, c) in cp.iter().enumerate() {
        let degree = idx as i64 + 1;
        if degree % 2 == 1 {
            if !c.is_zero() {
                return Err(Error::NotInHitchinBase(format!(
                    "odd coefficient of degree {degree} does not vanish"
                )));
            }
            continue;
        }
        let s = PluriSection::from_ff(curve, degree, c)
            .map_err(|e| Error::NotInHitchinBase(format!("coefficient of degree {degree}: {e}")))?;
        out.push(s);
    }
    Ok(out)
}

/// Basis coordinates of the Hitchin fibration image of `Φ`.
pub fn hitchin_fibration(phi: &FFMatrix, curve: &CurveModel) -> Result<Vec<Vec<Rational>>> {
    invariant_sections(phi, curve)?
        .iter()
        .map(decompose)
        .collect()
}

/// The SO(p,p−1) field `Φ(σ(q⃗))` with the standard anti-diagonal forms.
pub fn hitchin_field(input: &HitchinInput) -> Result<FFMatrix> {
    let eta = hitchin_section(input)?;
    assemble_so_field(
        &eta,
        &CanonicalChain::new(input.p).form(),
        &CanonicalChain::new(input.p - 1).form(),
    )
}

/// Deterministic random differentials for `seed`.
///
/// A `ChaCha8Rng` seeded with `seed_from_u64(seed)` fills the coordinates of
/// `q₂, q₄, …, q_{2p−2}` in basis order; each coordinate is `n/d` with `n`
/// uniform in `[−9, 9]` and `d` uniform in `[1, 5]`, drawn in that order.
pub fn seeded_input(curve: &CurveModel, p: usize, seed: u64) -> Result<HitchinInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<Vec<Rational>> = (1..p as i64)
        .map(|j| {
            (0..pluri_dim(curve.genus(), 2 * j))
                .map(|_| {
                    let n: i64 = rng.gen_range(-9..=9);
                    let d: i64 = rng.gen_range(1..=5);
                    Rational::new(n.into(), d.into())
                })
                .collect()
        })
        .collect();
    HitchinInput::from_coords(curve, p, &coords)
}

/// `fibration ∘ section` applied to `input`.
pub fn hitchin_roundtrip(input: &HitchinInput) -> Result<Vec<Vec<Rational>>> {
    let phi = hitchin_field(input)?;
    let out = hitchin_fibration(&phi, &input.curve)?;
    debug_assert!(out
        .iter()
        .enumerate()
        .all(|(j, v)| v.len() == pluri_dim(input.curve.genus(), 2 * (j as i64 + 1))));
    Ok(out)
}
