//! Connected components of `M(SO(p,q))`: labels, exact counts, and the
//! expected dimension of the exotic pieces.
//!
//! Counts are big integers since `2^{2g}` grows quickly; labels indexed by
//! `a ∈ Z₂^{2g}` are only listed for `g ≤ 3`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::curve::pluri_dim;
use crate::error::{Error, Result};
use crate::invariants::{exotic_sector, SectorLabel, Z2Class};

/// Largest genus for which `Z₂^{2g}`-indexed labels are listed one by one.
pub const EXPLICIT_LABEL_GENUS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasQuery {
    pub p: usize,
    pub q: usize,
    #[serde(rename = "genus")]
    pub g: usize,
}

impl AtlasQuery {
    pub fn new(p: usize, q: usize, g: usize) -> Result<Self> {
        if g < 2 {
            return Err(Error::Genus(g));
        }
        if p < 2 {
            return Err(Error::Unsupported {
                p,
                q,
                reason: "p <= 1 is not covered".into(),
            });
        }
        if p > q {
            return Err(Error::Invalid(format!("need p <= q, got p={p} q={q}")));
        }
        Ok(AtlasQuery { p, q, g })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentLabel {
    Topological { sector: SectorLabel },
    ExoticAc { a: Z2Class, c: u8 },
    ExoticD { d: i64 },
    Toledo { d: i64, c: u8 },
    Cayley { a: Z2Class, c: u8 },
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Topological { sector } => write!(f, "topological{sector}"),
            ComponentLabel::ExoticAc { a, c } => write!(f, "exotic(a={a}, c={c})"),
            ComponentLabel::ExoticD { d } => write!(f, "exotic(d={d})"),
            ComponentLabel::Toledo { d, c } => write!(f, "toledo(d={d}, c={c})"),
            ComponentLabel::Cayley { a, c } => write!(f, "cayley(a={a}, c={c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectedness {
    Asserted,
    NotAsserted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Topological,
    ExoticAc,
    ExoticD,
    Toledo,
    Cayley,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Topological => "topological",
            FamilyKind::ExoticAc => "exotic_ac",
            FamilyKind::ExoticD => "exotic_d",
            FamilyKind::Toledo => "toledo",
            FamilyKind::Cayley => "cayley",
        }
    }

    fn is_exotic(self) -> bool {
        matches!(
            self,
            FamilyKind::ExoticAc | FamilyKind::ExoticD | FamilyKind::Cayley
        )
    }
}

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

fn as_optional_decimal<S: Serializer>(
    n: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_str(&n.to_str_radix(10)),
        None => s.serialize_str("not asserted"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentFamily {
    pub family: FamilyKind,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigUint,
    pub connectedness: Connectedness,
    /// `None` when the labels are too many to list.
    pub labels: Option<Vec<ComponentLabel>>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Totals {
    #[serde(serialize_with = "as_decimal")]
    pub topological: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub exotic: BigUint,
    /// Present only when every family is asserted.
    #[serde(serialize_with = "as_optional_decimal")]
    pub total: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub label: String,
    pub dimension: u64,
    pub identity_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub query: AtlasQuery,
    pub case: String,
    pub families: Vec<ComponentFamily>,
    pub totals: Totals,
    pub dimension_checks: Vec<DimensionCheck>,
    pub notes: Vec<String>,
}

impl ComponentReport {
    pub fn family(&self, kind: FamilyKind) -> Option<&ComponentFamily> {
        self.families.iter().find(|f| f.family == kind)
    }

    /// Canonical JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is plain data");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }
}

impl fmt::Display for ComponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.query;
        writeln!(f, "M(SO({},{})) genus {}: {}", q.p, q.q, q.g, self.case)?;
        for fam in &self.families {
            let flag = match fam.connectedness {
                Connectedness::Asserted => "asserted",
                Connectedness::NotAsserted => "not asserted",
            };
            writeln!(f, "  {:<12} {:>8}  [{flag}]", fam.family.name(), fam.count)?;
            for n in &fam.notes {
                writeln!(f, "    note: {n}")?;
            }
        }
        writeln!(f, "  topological: {}", self.totals.topological)?;
        writeln!(f, "  exotic: {}", self.totals.exotic)?;
        match &self.totals.total {
            Some(t) => writeln!(f, "  total: {t}")?,
            None => writeln!(f, "  total: not asserted")?,
        }
        for d in &self.dimension_checks {
            let ok = if d.identity_ok { "ok" } else { "MISMATCH" };
            writeln!(f, "  dim {}: {} ({ok})", d.label, d.dimension)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Number of `d ∈ [0, p(2g−2)]` with `d ≡ c (mod 2)`.
pub fn so12_component_count(p: usize, c: u8, g: usize) -> u64 {
    let base = (p * (g - 1)) as u64;
    if c.is_multiple_of(2) {
        base + 1
    } else {
        base
    }
}

/// Normalized Toledo range `0 ≤ d ≤ 2g−2`.
pub fn toledo_range(g: usize) -> (i64, i64) {
    (0, 2 * g as i64 - 2)
}

/// Full Toledo range `2−2g ≤ d ≤ 2g−2` before identifying `d` with `−d`.
pub fn toledo_full_range(g: usize) -> (i64, i64) {
    (2 - 2 * g as i64, 2 * g as i64 - 2)
}

/// Expected dimension of the exotic pieces with the identity flag
/// `dim = (g−1)·dim SO(p+q)`.
///
/// With `n = q−p+1` the `K^p`-twisted factor contributes
/// `(g−1)(n(n−1)/2 + n(2p−1))` and the differentials `q₂ … q_{2p−2}` contribute
/// `Σ (4j−1)(g−1)`.
pub fn exotic_dimension(query: &AtlasQuery) -> (u64, bool) {
    let (p, q, g) = (query.p as u64, query.q as u64, query.g as u64);
    let n = q - p + 1;
    let twisted = (g - 1) * (n * (n - 1) / 2 + n * (2 * p - 1));
    let diffs: u64 = (1..p).map(|j| (4 * j - 1) * (g - 1)).sum();
    let dim = twisted + diffs;
    (dim, dim == (g - 1) * (p + q) * (p + q - 1) / 2)
}

fn listed<I: IntoIterator<Item = ComponentLabel>>(g: usize, it: I) -> Option<Vec<ComponentLabel>> {
    (g <= EXPLICIT_LABEL_GENUS).then(|| it.into_iter().collect())
}

fn all_sectors(g: usize) -> impl Iterator<Item = SectorLabel> {
    Z2Class::all(g).flat_map(|a| {
        (0..2u8).flat_map(move |b| {
            let a = a.clone();
            (0..2u8).map(move |c| SectorLabel { a: a.clone(), b, c })
        })
    })
}

fn topological_family(g: usize, connectedness: Connectedness) -> ComponentFamily {
    ComponentFamily {
        family: FamilyKind::Topological,
        count: pow2(2 * g + 2),
        connectedness,
        labels: listed(
            g,
            all_sectors(g).map(|sector| ComponentLabel::Topological { sector }),
        ),
        notes: vec![
            "one component per sector (a, b, c), each containing zero-Higgs-field points".into(),
        ],
    }
}

fn exotic_ac_family(
    p: usize,
    g: usize,
    skip_zero: bool,
    c_values: &[u8],
    connectedness: Connectedness,
) -> Result<ComponentFamily> {
    let per_c = if skip_zero {
        pow2(2 * g) - BigUint::one()
    } else {
        pow2(2 * g)
    };
    let count = per_c * BigUint::from(c_values.len());
    let labels = if g <= EXPLICIT_LABEL_GENUS {
        let mut v = Vec::new();
        for a in Z2Class::all(g).filter(|a| !(skip_zero && a.is_zero())) {
            for &c in c_values {
                // Validates the label against its sector.
                exotic_sector(p, &a, c)?;
                v.push(ComponentLabel::ExoticAc { a: a.clone(), c });
            }
        }
        Some(v)
    } else {
        None
    };
    Ok(ComponentFamily {
        family: FamilyKind::ExoticAc,
        count,
        connectedness,
        labels,
        notes: vec![format!(
            "label (a, c) lies in sector ({}, 0, c)",
            if p % 2 == 1 { "a" } else { "0" }
        )],
    })
}

fn totals(families: &[ComponentFamily]) -> Totals {
    let mut topological = BigUint::zero();
    let mut exotic = BigUint::zero();
    for f in families {
        if f.family.is_exotic() {
            exotic += &f.count;
        } else {
            topological += &f.count;
        }
    }
    let total = families
        .iter()
        .all(|f| f.connectedness == Connectedness::Asserted)
        .then(|| &topological + &exotic);
    Totals {
        topological,
        exotic,
        total,
    }
}

fn dimension_check(query: &AtlasQuery, label: &str) -> DimensionCheck {
    let (dimension, identity_ok) = exotic_dimension(query);
    DimensionCheck {
        label: label.into(),
        dimension,
        identity_ok,
    }
}

/// Case analysis of the components of `M(SO(p,q))`.
pub fn component_report(query: &AtlasQuery) -> Result<ComponentReport> {
    let AtlasQuery { p, q, g } = *query;
    if p < 2 || (p == 2 && q == 2) {
        return Err(Error::Unsupported {
            p,
            q,
            reason: "no component description for SO(2,2) or p <= 1".into(),
        });
    }
    if p > q {
        return Err(Error::Invalid(format!("need p <= q, got p={p} q={q}")));
    }
    let asserted = Connectedness::Asserted;
    let mut notes = Vec::new();
    let (case, families, dims) = if p == 2 {
        let (families, n) = p2_families(g);
        notes.extend(n);
        (
            "p = 2 < q",
            families,
            vec![dimension_check(query, "cayley")],
        )
    } else if p + 1 < q {
        (
            "2 < p < q-1",
            vec![
                topological_family(g, asserted),
                exotic_ac_family(p, g, false, &[0, 1], asserted)?,
            ],
            vec![dimension_check(query, "exotic_ac")],
        )
    } else if q == p + 1 {
        let d_max = (p * (2 * g - 2)) as i64;
        let size = so12_component_count(p, 0, g) + so12_component_count(p, 1, g);
        if size != d_max as u64 + 1 {
            return Err(Error::Internal("exotic_d family size".into()));
        }
        let exotic_d = ComponentFamily {
            family: FamilyKind::ExoticD,
            count: BigUint::from(size),
            connectedness: asserted,
            labels: Some((0..=d_max).map(|d| ComponentLabel::ExoticD { d }).collect()),
            notes: vec![
                "a = 0; c = d mod 2".into(),
                "exotic(d) is diffeomorphic to a vector bundle of rank d+g-1 over a symmetric product; no dimension is computed from this".into(),
            ],
        };
        (
            "q = p+1, p > 2",
            vec![
                topological_family(g, asserted),
                exotic_d,
                exotic_ac_family(p, g, true, &[0, 1], asserted)?,
            ],
            vec![dimension_check(query, "exotic_ac")],
        )
    } else {
        let mut fam = exotic_ac_family(p, g, false, &[0], asserted)?;
        fam.notes
            .push("a = 0 recovers the Hitchin component".into());
        notes.push("total number of components of M(SO(p,p)) is not asserted".into());
        (
            "q = p > 2",
            vec![topological_family(g, asserted), fam],
            vec![dimension_check(query, "exotic_ac")],
        )
    };
    let mut totals = totals(&families);
    if q == p {
        totals.total = None;
    }
    Ok(ComponentReport {
        query: *query,
        case: case.into(),
        families,
        totals,
        dimension_checks: dims,
        notes,
    })
}

/// Toledo decomposition of the sectors `(0, b, c)` for `SO(2,q)`.
fn p2_families(g: usize) -> (Vec<ComponentFamily>, Vec<String>) {
    let open = Connectedness::NotAsserted;
    let (lo, hi) = toledo_range(g);
    let (flo, fhi) = toledo_full_range(g);
    let toledo_labels: Vec<ComponentLabel> = (lo..hi)
        .flat_map(|d| (0..2u8).map(move |c| ComponentLabel::Toledo { d, c }))
        .collect();
    let toledo = ComponentFamily {
        family: FamilyKind::Toledo,
        count: BigUint::from(toledo_labels.len()),
        connectedness: open,
        labels: Some(toledo_labels),
        notes: vec![
            "toledo(d, c) lies in sector (0, d mod 2, c)".into(),
            "d = 0 contains the zero-Higgs-field points of its sector".into(),
        ],
    };
    let cayley = ComponentFamily {
        family: FamilyKind::Cayley,
        count: pow2(2 * g + 1),
        connectedness: open,
        labels: listed(
            g,
            Z2Class::all(g).flat_map(|a| (0..2u8).map(move |c| ComponentLabel::Cayley { a: a.clone(), c })),
        ),
        notes: vec![format!(
            "maximal Toledo invariant d = {hi}; cayley(a, c) lies in sector (0, 0, c) with W = I + W0 and a = sw1(I)"
        )],
    };
    let nonzero_a = ComponentFamily {
        family: FamilyKind::Topological,
        count: (pow2(2 * g) - BigUint::one()) * BigUint::from(4u8),
        connectedness: open,
        labels: listed(
            g,
            all_sectors(g)
                .filter(|s| !s.a.is_zero())
                .map(|sector| ComponentLabel::Topological { sector }),
        ),
        notes: vec!["sectors with a != 0: structure not determined".into()],
    };
    let notes = vec![
        format!("Toledo invariant normalized to {lo} <= d <= {hi}; full range {flo} <= d <= {fhi}"),
        "maximal sectors (0, 1, c) are empty".into(),
        "total number of components of M(SO(2,q)) is not asserted".into(),
    ];
    (vec![toledo, cayley, nonzero_a], notes)
}

/// `dim H⁰(K^p) + Σ_{j<p} dim H⁰(K^{2j})`, the vector-space model of the
/// exotic pieces when `q = p`.
pub fn hitchin_base_dim(p: usize, g: usize) -> usize {
    pluri_dim(g, p as i64) + (1..p).map(|j| pluri_dim(g, 2 * j as i64)).sum::<usize>()
}
