//! Dense matrices over the function field and over the rationals.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ff::{same_field, FFElem};
use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Rectangular matrix of [`FFElem`] entries sharing one defining polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FFElem>,
    f: Arc<Poly>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize, f: Arc<Poly>) -> Self {
        let entries = vec![FFElem::zero(f.clone()); rows * cols];
        FFMatrix {
            rows,
            cols,
            entries,
            f,
        }
    }

    pub fn identity(n: usize, f: Arc<Poly>) -> Self {
        let mut m = FFMatrix::zeros(n, n, f.clone());
        for i in 0..n {
            m.entries[i * n + i] = FFElem::one(f.clone());
        }
        m
    }

    /// Builds a matrix from rows; every entry must live over `f`.
    pub fn from_rows(rows: Vec<Vec<FFElem>>, f: Arc<Poly>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Dimension("matrix must have positive size".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for e in row {
                if !same_field(e.field(), &f) {
                    return Err(Error::CurveMismatch);
                }
                entries.push(e);
            }
        }
        Ok(FFMatrix {
            rows: nrows,
            cols: ncols,
            entries,
            f,
        })
    }

    /// Constant matrix from integers.
    pub fn from_ints(rows: &[&[i64]], f: Arc<Poly>) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| FFElem::constant(int(v), f.clone()))
                    .collect()
            })
            .collect();
        FFMatrix::from_rows(rows, f)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Poly> {
        &self.f
    }

    pub fn get(&self, i: usize, j: usize) -> &FFElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FFElem) -> Result<()> {
        if !same_field(v.field(), &self.f) {
            return Err(Error::CurveMismatch);
        }
        self.entries[i * self.cols + j] = v;
        Ok(())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FFElem::is_zero)
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(self.cols, self.rows, self.f.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn try_add(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add_unchecked(b))
            .collect();
        Ok(FFMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn try_mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if !same_field(&self.f, &other.f) {
            return Err(Error::CurveMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FFMatrix::zeros(self.rows, other.cols, self.f.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add_unchecked(&a.mul_unchecked(b));
                }
            }
        }
        Ok(out)
    }

    /// Left-multiplication by a constant rational matrix.
    pub fn left_mul_rational(&self, q: &RatMatrix) -> Result<FFMatrix> {
        if q.cols() != self.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                q.rows(),
                q.cols(),
                self.rows,
                self.cols
            )));
        }
        let mut out = FFMatrix::zeros(q.rows(), self.cols, self.f.clone());
        for i in 0..q.rows() {
            for k in 0..q.cols() {
                let c = q.get(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let idx = i * self.cols + j;
                    out.entries[idx] = out.entries[idx].add_unchecked(&self.get(k, j).scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Right-multiplication by a constant rational matrix.
    pub fn right_mul_rational(&self, q: &RatMatrix) -> Result<FFMatrix> {
        Ok(self
            .transpose()
            .left_mul_rational(&q.transpose())?
            .transpose())
    }

    pub fn trace(&self) -> Result<FFElem> {
        self.require_square()?;
        Ok((0..self.rows).fold(FFElem::zero(self.f.clone()), |acc, i| {
            acc.add_unchecked(self.get(i, i))
        }))
    }

    pub fn is_skew(&self) -> bool {
        self.first_non_skew().is_none()
    }

    fn first_non_skew(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self.get(i, j).add_unchecked(self.get(j, i)).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_same_shape(&self, other: &FFMatrix) -> Result<()> {
        if !same_field(&self.f, &other.f) {
            return Err(Error::CurveMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Coefficients `(c₁, …, c_N)` of `det(λ·Id − m) = λᴺ + c₁λᴺ⁻¹ + … + c_N`.
///
/// Faddeev–LeVerrier recursion. The only divisions are by the integers
/// `1..=N`, so the computation stays inside the function field ring.
pub fn mat_charpoly(m: &FFMatrix) -> Result<Vec<FFElem>> {
    m.require_square()?;
    let n = m.rows;
    let f = m.f.clone();
    let mut coeffs = Vec::with_capacity(n);
    let mut acc = FFMatrix::identity(n, f.clone());
    for k in 1..=n {
        let am = m.try_mul(&acc)?;
        let c = am.trace()?.scale(&(-Rational::one() / int(k as i64)));
        if k < n {
            acc = am;
            for i in 0..n {
                let idx = i * n + i;
                acc.entries[idx] = acc.entries[idx].add_unchecked(&c);
            }
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// `det(m)`, read off the constant term of the characteristic polynomial.
pub fn mat_det(m: &FFMatrix) -> Result<FFElem> {
    let cp = mat_charpoly(m)?;
    let last = cp
        .last()
        .cloned()
        .unwrap_or_else(|| FFElem::one(m.f.clone()));
    Ok(if m.rows.is_multiple_of(2) {
        last
    } else {
        last.neg()
    })
}

/// Pfaffian of an even-size skew-symmetric matrix.
///
/// Expansion along the first row with `pf([[0,1],[-1,0]]) = 1`:
/// `pf(A) = Σ_{j≥2} (−1)^j a_{1j} pf(A with rows/cols 1, j removed)` (1-based),
/// memoized on the set of remaining indices.
pub fn mat_pfaffian(m: &FFMatrix) -> Result<FFElem> {
    m.require_square()?;
    if m.rows % 2 == 1 {
        return Err(Error::PfaffianUndefined(m.rows));
    }
    if let Some((i, j)) = m.first_non_skew() {
        return Err(Error::NotSkew(i, j));
    }
    if m.rows > 64 {
        return Err(Error::Dimension("pfaffian supports at most 64 rows".into()));
    }
    let full: u64 = if m.rows == 64 {
        u64::MAX
    } else {
        (1u64 << m.rows) - 1
    };
    let mut memo = HashMap::new();
    Ok(pfaffian_rec(m, full, &mut memo))
}

fn pfaffian_rec(m: &FFMatrix, set: u64, memo: &mut HashMap<u64, FFElem>) -> FFElem {
    if set == 0 {
        return FFElem::one(m.f.clone());
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut acc = FFElem::zero(m.f.clone());
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j);
        if !a.is_zero() {
            let minor = pfaffian_rec(m, rest & !(1u64 << j), memo);
            let term = a.mul_unchecked(&minor);
            acc = if sign_positive {
                acc.add_unchecked(&term)
            } else {
                acc.sub_unchecked(&term)
            };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(set, acc.clone());
    acc
}

/// Dense constant matrix over the rationals (orthogonal forms, change of frame).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Ones on the anti-diagonal.
    pub fn anti_diagonal(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, Rational::one());
        }
        m
    }

    pub fn block_diag(blocks: &[RatMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = RatMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            entries: self.entries.iter().map(|e| e * c).collect(),
            ..self.clone()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Gauss–Jordan inverse; `None` if singular or non-square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j) / &p;
                a.set(col, j, v);
                let v = inv.get(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}
