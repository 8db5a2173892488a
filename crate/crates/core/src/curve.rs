//! Hyperelliptic curves `y² = f(x)` with `deg f = 2g+2` and their
//! pluricanonical section spaces `H⁰(Kᵐ)`.
//!
//! With the even model, `div(dx/y) = (g−1)(∞₊ + ∞₋)`, so a section of `Kᵐ`
//! written in the frame `(dx/y)ᵐ` is `(A + B·y)(dx/y)ᵐ` with
//! `deg A ≤ m(g−1)` and `deg B ≤ m(g−1) − (g+1)`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, FFElem, Poly, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct CurveModel {
    genus: usize,
    f: Arc<Poly>,
}

impl CurveModel {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn f(&self) -> &Arc<Poly> {
        &self.f
    }

    /// The reference curve `y² = x^{2g+2} − 1`.
    pub fn standard(genus: usize) -> Result<CurveModel> {
        let mut c = vec![Rational::zero(); 2 * genus + 3];
        c[0] = crate::exact::int(-1);
        c[2 * genus + 2] = crate::exact::int(1);
        new_curve(genus, &c)
    }

    fn same(&self, other: &CurveModel) -> bool {
        self.genus == other.genus && (Arc::ptr_eq(&self.f, &other.f) || self.f == other.f)
    }
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveModel(g={}, y^2 = {})", self.genus, self.f)
    }
}

/// Validates and builds `y² = f(x)` from coefficients `c₀ … c_{2g+2}`.
pub fn new_curve(genus: usize, f_coeffs: &[Rational]) -> Result<CurveModel> {
    if genus < 2 {
        return Err(Error::Genus(genus));
    }
    let f = Poly::new(f_coeffs.to_vec());
    if f_coeffs.len() != 2 * genus + 3 || f.degree() != Some(2 * genus + 2) {
        return Err(Error::CurveDegree {
            genus,
            degree: f.degree_i64(),
        });
    }
    if !f.is_squarefree() {
        return Err(Error::SingularModel);
    }
    Ok(CurveModel {
        genus,
        f: Arc::new(f),
    })
}

/// Largest allowed `x`-degree of the `A` part of a section of `Kᵐ`.
pub fn a_bound(g: usize, m: i64) -> i64 {
    m * (g as i64 - 1)
}

/// Largest allowed `x`-degree of the `B` part (negative means `B = 0`).
pub fn b_bound(g: usize, m: i64) -> i64 {
    m * (g as i64 - 1) - (g as i64 + 1)
}

/// `dim H⁰(Kᵐ)`; zero for negative twists.
pub fn pluri_dim(g: usize, m: i64) -> usize {
    match m {
        m if m < 0 => 0,
        0 => 1,
        1 => g,
        m => (2 * m as usize - 1) * (g - 1),
    }
}

/// A section `(a + b·y)(dx/y)ᵐ` of `Kᵐ`.
#[derive(Clone, PartialEq, Eq)]
pub struct PluriSection {
    m: i64,
    a: Poly,
    b: Poly,
    curve: CurveModel,
}

impl PluriSection {
    /// Checked constructor; rejects anything outside the degree bounds.
    pub fn new(curve: &CurveModel, m: i64, a: Poly, b: Poly) -> Result<Self> {
        let s = PluriSection::raw(curve, m, a, b);
        s.check_holomorphic()?;
        Ok(s)
    }

    /// Unchecked constructor for data read back from files; pair with
    /// [`PluriSection::is_holomorphic`].
    pub fn raw(curve: &CurveModel, m: i64, a: Poly, b: Poly) -> Self {
        PluriSection {
            m,
            a,
            b,
            curve: curve.clone(),
        }
    }

    pub fn zero(curve: &CurveModel, m: i64) -> Self {
        PluriSection::raw(curve, m, Poly::zero(), Poly::zero())
    }

    pub fn constant(curve: &CurveModel, c: Rational) -> Self {
        PluriSection::raw(curve, 0, Poly::constant(c), Poly::zero())
    }

    pub fn twist(&self) -> i64 {
        self.m
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.check_holomorphic().is_ok()
    }

    fn check_holomorphic(&self) -> Result<()> {
        let g = self.curve.genus;
        if self.m < 0 {
            return if self.is_zero() {
                Ok(())
            } else {
                Err(Error::NotHolomorphic(format!(
                    "nonzero section of negative twist {}",
                    self.m
                )))
            };
        }
        if self.a.degree_i64() > a_bound(g, self.m) {
            return Err(Error::NotHolomorphic(format!(
                "deg A = {} exceeds {} for twist {}",
                self.a.degree_i64(),
                a_bound(g, self.m),
                self.m
            )));
        }
        if !self.b.is_zero() && self.b.degree_i64() > b_bound(g, self.m) {
            return Err(Error::NotHolomorphic(format!(
                "deg B = {} exceeds {} for twist {}",
                self.b.degree_i64(),
                b_bound(g, self.m),
                self.m
            )));
        }
        Ok(())
    }

    /// Dehomogenizes through the frame `(dx/y)ᵐ`.
    pub fn to_ff(&self) -> FFElem {
        FFElem::new(self.a.clone(), self.b.clone(), self.curve.f.clone())
    }

    /// Re-homogenizes a function-field element as a section of `Kᵐ`,
    /// failing if it is not holomorphic there.
    pub fn from_ff(curve: &CurveModel, m: i64, e: &FFElem) -> Result<Self> {
        if !crate::exact::ff::same_field(e.field(), &curve.f) {
            return Err(Error::CurveMismatch);
        }
        PluriSection::new(curve, m, e.a().clone(), e.b().clone())
    }

    pub fn try_add(&self, other: &PluriSection) -> Result<PluriSection> {
        self.check_compatible(other)?;
        if self.m != other.m {
            return Err(Error::TwistMismatch(format!(
                "cannot add twists {} and {}",
                self.m, other.m
            )));
        }
        Ok(PluriSection::raw(
            &self.curve,
            self.m,
            &self.a + &other.a,
            &self.b + &other.b,
        ))
    }

    pub fn scale(&self, c: &Rational) -> PluriSection {
        PluriSection::raw(&self.curve, self.m, self.a.scale(c), self.b.scale(c))
    }

    fn check_compatible(&self, other: &PluriSection) -> Result<()> {
        if self.curve.same(&other.curve) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }
}

impl fmt::Debug for PluriSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PluriSection[K^{}]({})", self.m, self.to_ff())
    }
}

impl fmt::Display for PluriSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·(dx/y)^{}", self.to_ff(), self.m)
    }
}

/// Monomial basis of `H⁰(Kᵐ)`: all `xⁱ(dx/y)ᵐ` first, then all `xⁱy(dx/y)ᵐ`.
pub fn pluri_basis(curve: &CurveModel, m: i64) -> Vec<PluriSection> {
    let g = curve.genus;
    if m < 0 {
        return Vec::new();
    }
    let one = Rational::from_integer(1.into());
    let a_part = (0..=a_bound(g, m)).map(|i| {
        PluriSection::raw(
            curve,
            m,
            Poly::monomial(one.clone(), i as usize),
            Poly::zero(),
        )
    });
    let b_part = (0..=b_bound(g, m)).map(|i| {
        PluriSection::raw(
            curve,
            m,
            Poly::zero(),
            Poly::monomial(one.clone(), i as usize),
        )
    });
    a_part.chain(b_part).collect()
}

/// Product of sections; twists add and holomorphy is re-asserted.
pub fn pluri_mul(s: &PluriSection, t: &PluriSection) -> Result<PluriSection> {
    s.check_compatible(t)?;
    let e = s.to_ff().try_mul(&t.to_ff())?;
    PluriSection::from_ff(&s.curve, s.m + t.m, &e)
        .map_err(|e| Error::Internal(format!("product left the holomorphic range: {e}")))
}

/// Coordinates of `s` in the [`pluri_basis`] ordering.
pub fn decompose(s: &PluriSection) -> Result<Vec<Rational>> {
    s.check_holomorphic()?;
    if s.m < 0 {
        return Ok(Vec::new());
    }
    let g = s.curve.genus;
    let na = (a_bound(g, s.m) + 1) as usize;
    let nb = (b_bound(g, s.m) + 1).max(0) as usize;
    let mut out: Vec<Rational> = (0..na).map(|i| s.a.coeff(i)).collect();
    out.extend((0..nb).map(|i| s.b.coeff(i)));
    Ok(out)
}

/// Inverse of [`decompose`].
pub fn from_coords(curve: &CurveModel, m: i64, coords: &[Rational]) -> Result<PluriSection> {
    let dim = pluri_dim(curve.genus, m);
    if coords.len() != dim {
        return Err(Error::LengthMismatch(coords.len(), dim));
    }
    if m < 0 {
        return Ok(PluriSection::zero(curve, m));
    }
    let na = (a_bound(curve.genus, m) + 1) as usize;
    let a = Poly::new(coords[..na].to_vec());
    let b = Poly::new(coords[na..].to_vec());
    PluriSection::new(curve, m, a, b)
}

/// On-disk curve description: `{"genus": g, "f": ["c0", …, "c_{2g+2}"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub genus: usize,
    pub f: Vec<String>,
}

impl CurveFile {
    pub fn from_curve(c: &CurveModel) -> Self {
        let n = 2 * c.genus + 3;
        CurveFile {
            genus: c.genus,
            f: (0..n).map(|i| format_rational(&c.f.coeff(i))).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<CurveModel> {
        let coeffs = self
            .f
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        new_curve(self.genus, &coeffs)
    }
}

pub fn parse_curve_json(text: &str) -> Result<CurveModel> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_curve()
}
