//! Exact models of exotic SO(p,q)-Higgs bundles over hyperelliptic curves,
//! the SO(p,p−1) Hitchin section in explicit coordinates, and a component
//! atlas for the moduli spaces M(SO(p,q)).
//!
//! Everything is computed over the rationals; there is no floating point on
//! any code path.

pub mod atlas;
pub mod curve;
pub mod error;
pub mod exact;
pub mod hitchin;
pub mod invariants;
pub mod model;

pub use error::{Error, Result};
