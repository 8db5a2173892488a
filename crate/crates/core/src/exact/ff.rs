//! Elements `a(x) + b(x)·y` of the hyperelliptic function field `Q(x)[y]/(y² − f)`.

use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An element `a + b·y` with `y² = f(x)`.
///
/// Every element carries the defining polynomial `f`; binary operations
/// reject operands built over different curves.
#[derive(Clone, PartialEq, Eq)]
pub struct FFElem {
    a: Poly,
    b: Poly,
    f: Arc<Poly>,
}

pub(crate) fn same_field(f: &Arc<Poly>, g: &Arc<Poly>) -> bool {
    Arc::ptr_eq(f, g) || f == g
}

impl FFElem {
    pub fn new(a: Poly, b: Poly, f: Arc<Poly>) -> Self {
        FFElem { a, b, f }
    }

    pub fn zero(f: Arc<Poly>) -> Self {
        FFElem::new(Poly::zero(), Poly::zero(), f)
    }

    pub fn one(f: Arc<Poly>) -> Self {
        FFElem::new(Poly::one(), Poly::zero(), f)
    }

    pub fn constant(c: Rational, f: Arc<Poly>) -> Self {
        FFElem::new(Poly::constant(c), Poly::zero(), f)
    }

    /// The generator `y`.
    pub fn y(f: Arc<Poly>) -> Self {
        FFElem::new(Poly::zero(), Poly::one(), f)
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn field(&self) -> &Arc<Poly> {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant()
    }

    /// The rational value if the element is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.a.coeff(0))
    }

    fn check(&self, other: &FFElem) -> Result<()> {
        if same_field(&self.f, &other.f) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn try_add(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    /// `(a₁ + b₁y)(a₂ + b₂y) = (a₁a₂ + b₁b₂f) + (a₁b₂ + a₂b₁)y`.
    pub fn try_mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &FFElem) -> FFElem {
        FFElem::new(&self.a + &other.a, &self.b + &other.b, self.f.clone())
    }

    pub(crate) fn sub_unchecked(&self, other: &FFElem) -> FFElem {
        FFElem::new(&self.a - &other.a, &self.b - &other.b, self.f.clone())
    }

    pub(crate) fn mul_unchecked(&self, other: &FFElem) -> FFElem {
        if self.is_zero() || other.is_zero() {
            return FFElem::zero(self.f.clone());
        }
        let mut a = &self.a * &other.a;
        if !self.b.is_zero() && !other.b.is_zero() {
            a = &a + &(&(&self.b * &other.b) * &self.f);
        }
        let b = &(&self.a * &other.b) + &(&other.a * &self.b);
        FFElem::new(a, b, self.f.clone())
    }

    pub fn neg(&self) -> FFElem {
        FFElem::new(-&self.a, -&self.b, self.f.clone())
    }

    pub fn scale(&self, c: &Rational) -> FFElem {
        FFElem::new(self.a.scale(c), self.b.scale(c), self.f.clone())
    }
}

/// Free-function form of [`FFElem::try_mul`].
pub fn ff_mul(u: &FFElem, v: &FFElem) -> Result<FFElem> {
    u.try_mul(v)
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElem({self})")
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*y", self.b),
            (false, false) => write!(f, "{} + ({})*y", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn quintic() -> Arc<Poly> {
        Arc::new(Poly::from_ints(&[1, 0, 0, 0, 0, 1]))
    }

    fn x(f: &Arc<Poly>) -> FFElem {
        FFElem::new(Poly::from_ints(&[0, 1]), Poly::zero(), f.clone())
    }

    #[test]
    fn y_squared_is_f() {
        let f = quintic();
        let y = FFElem::y(f.clone());
        let y2 = ff_mul(&y, &y).unwrap();
        assert_eq!(y2.a(), f.as_ref());
        assert!(y2.b().is_zero());
    }

    #[test]
    fn one_is_identity() {
        let f = quintic();
        let v = FFElem::new(
            Poly::from_ints(&[3, 0, 2]),
            Poly::from_ints(&[-1, 5]),
            f.clone(),
        );
        assert_eq!(ff_mul(&FFElem::one(f), &v).unwrap(), v);
    }

    #[test]
    fn conjugate_product_over_quintic() {
        let f = quintic();
        let xp = x(&f).try_add(&FFElem::y(f.clone())).unwrap();
        let xm = x(&f).try_sub(&FFElem::y(f.clone())).unwrap();
        let prod = ff_mul(&xp, &xm).unwrap();
        // x² − x⁵ − 1
        assert_eq!(prod.a(), &Poly::from_ints(&[-1, 0, 1, 0, 0, -1]));
        assert!(prod.b().is_zero());
    }

    #[test]
    fn mismatched_curves_rejected() {
        let u = FFElem::y(quintic());
        let v = FFElem::y(Arc::new(Poly::from_ints(&[-1, 0, 0, 0, 0, 0, 1])));
        assert_eq!(ff_mul(&u, &v), Err(Error::CurveMismatch));
        assert_eq!(ff_mul(&u, &v).unwrap_err().to_string(), "curve mismatch");
    }

    #[test]
    fn constants() {
        let f = quintic();
        let c = FFElem::constant(int(4), f.clone());
        assert_eq!(c.as_constant(), Some(int(4)));
        assert_eq!(FFElem::y(f).as_constant(), None);
    }
}
