//! Z₂-valued topological invariants: first Stiefel–Whitney classes in
//! `Z₂^{2g}`, second Stiefel–Whitney bits of split orthogonal bundles, and
//! the sector labels `(a, b, c)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A class in `H¹(Σ, Z₂) ≅ Z₂^{2g}`, printed most-significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Class {
    bits: Vec<bool>,
}

impl Z2Class {
    pub fn zero(g: usize) -> Self {
        Z2Class {
            bits: vec![false; 2 * g],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() || !bits.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "Z2 class needs 2g bits, got {}",
                bits.len()
            )));
        }
        Ok(Z2Class { bits })
    }

    /// The class whose bit string is the binary expansion of `index`.
    pub fn from_index(g: usize, index: u64) -> Self {
        let n = 2 * g;
        Z2Class {
            bits: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// `k·a` in the 2-torsion group.
    pub fn times(&self, k: usize) -> Z2Class {
        if k % 2 == 1 {
            self.clone()
        } else {
            Z2Class::zero(self.genus())
        }
    }

    /// Every class of genus `g`, in increasing bit-string order.
    pub fn all(g: usize) -> impl Iterator<Item = Z2Class> {
        (0..1u64 << (2 * g)).map(move |i| Z2Class::from_index(g, i))
    }
}

impl fmt::Display for Z2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2Class({self})")
    }
}

impl FromStr for Z2Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad bit {other:?} in Z2 class {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Z2Class::from_bits(bits)
    }
}

impl Serialize for Z2Class {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Z2Class {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The topological triple `(a, b, c) = (sw₁(V), sw₂(V), sw₂(W))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorLabel {
    pub a: Z2Class,
    pub b: u8,
    pub c: u8,
}

impl SectorLabel {
    pub fn new(a: Z2Class, b: u8, c: u8) -> Result<Self> {
        if b > 1 || c > 1 {
            return Err(Error::Invalid(format!(
                "sector bits must be 0 or 1, got ({b}, {c})"
            )));
        }
        Ok(SectorLabel { a, b, c })
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn z2_add(u: &Z2Class, v: &Z2Class) -> Result<Z2Class> {
    if u.bits.len() != v.bits.len() {
        return Err(Error::LengthMismatch(u.bits.len(), v.bits.len()));
    }
    Ok(Z2Class {
        bits: u.bits.iter().zip(&v.bits).map(|(x, y)| x ^ y).collect(),
    })
}

/// `sw₁(I ⊗ K_p) = p·a`.
pub fn sw1_of_v(p: usize, a: &Z2Class) -> Z2Class {
    a.times(p)
}

/// `sw₂` of `⊕ (Lᵢ ⊕ Lᵢ⁻¹)` (plus trivial summands) given the degrees of the `Lᵢ`.
pub fn sw2_of_split_orthogonal(positive_degrees: &[i64]) -> u8 {
    positive_degrees
        .iter()
        .map(|d| d.rem_euclid(2))
        .sum::<i64>()
        .rem_euclid(2) as u8
}

/// Sector containing the exotic component labelled `(a, c)`.
pub fn exotic_sector(p: usize, a: &Z2Class, c: u8) -> Result<SectorLabel> {
    if p < 2 {
        return Err(Error::Unsupported {
            p,
            q: 0,
            reason: "exotic sectors need p >= 2".into(),
        });
    }
    // V = I ⊗ K_p is a sum of pairs I·K^j ⊕ I·K^{-j} of even degree j(2g−2).
    SectorLabel::new(sw1_of_v(p, a), 0, c)
}
