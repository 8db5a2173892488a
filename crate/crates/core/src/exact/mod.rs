//! Exact arithmetic: rationals, polynomials, the hyperelliptic function field
//! and matrices over it.

pub mod ff;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use ff::{ff_mul, FFElem};
pub use matrix::{mat_charpoly, mat_det, mat_pfaffian, FFMatrix, RatMatrix};
pub use poly::Poly;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
