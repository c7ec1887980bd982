//! Exact region bookkeeping for the comparison ranges.
//!
//! Everything here is integer or rational arithmetic; floors use Euclidean
//! division so negative numerators round toward −∞.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::steenrod::Side;

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// ⌊(p·n − (4p − 2)) / (p − 1)⌋.
pub fn odd_p_bound(p: u32, n: i64) -> i64 {
    let p = i64::from(p);
    (p * n - (4 * p - 2)).div_euclid(p - 1)
}

/// The slope p/(p − 1).
pub fn slope(p: u32) -> Q {
    Q::new(i64::from(p), i64::from(p) - 1)
}

/// Upper bound for k over a θ-free monomial of bidegree k + ℓα: (p/(p−1))ℓ + 1.
pub fn coarse_bound(p: u32, l: i64) -> Q {
    slope(p) * q(l) + q(1)
}

/// Upper bound for k over a cokernel word at (f, k + ℓα):
/// (p/(p−1))ℓ + f − (4p − 2)/(p − 1).
pub fn cokernel_bound(p: u32, f: u32, l: i64) -> Q {
    let p64 = i64::from(p);
    slope(p) * q(l) + q(i64::from(f)) - Q::new(4 * p64 - 2, p64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RangePredicate {
    /// a·m + b·n ≥ c
    HalfPlane { a: Q, b: Q, c: Q },
    /// m ≥ odd_p_bound(p, n) + delta
    FloorBound { p: u32, delta: i64 },
    Intersection(Vec<RangePredicate>),
}

impl RangePredicate {
    pub fn contains(&self, m: i64, n: i64) -> bool {
        match self {
            RangePredicate::HalfPlane { a, b, c } => *a * q(m) + *b * q(n) >= *c,
            RangePredicate::FloorBound { p, delta } => m >= odd_p_bound(*p, n) + delta,
            RangePredicate::Intersection(parts) => parts.iter().all(|r| r.contains(m, n)),
        }
    }
}

/// {m ≥ 2n − 5}
pub fn di_region() -> RangePredicate {
    RangePredicate::HalfPlane { a: q(1), b: q(-2), c: q(-5) }
}

/// {m ≥ 2n − 5, n ≥ 0}
pub fn betti_region() -> RangePredicate {
    RangePredicate::Intersection(vec![di_region(), RangePredicate::HalfPlane { a: q(0), b: q(1), c: q(0) }])
}

/// Injection boundary next to the 2-primary region.
pub fn on_di_injection_line(m: i64, n: i64) -> bool {
    m == 2 * n - 6
}

/// {m ≥ odd_p_bound(p, n) + 1}
pub fn odd_p_iso_region(p: u32) -> RangePredicate {
    RangePredicate::FloorBound { p, delta: 1 }
}

pub fn on_odd_p_injection_line(p: u32, m: i64, n: i64) -> bool {
    m == odd_p_bound(p, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationException {
    pub n: i64,
    /// Cells in the 2-primary region but outside the odd-primary one.
    pub cells: Vec<(i64, i64)>,
    pub negative_stem: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub p: u32,
    pub n_min: i64,
    pub n_max: i64,
    pub exceptions: Vec<DominationException>,
}

impl DominationReport {
    /// Every exception consists of cells of negative total stem.
    pub fn covered_by_vanishing(&self) -> bool {
        self.exceptions.iter().all(|e| e.negative_stem)
    }
}

pub fn check_domination(p: u32, n_min: i64, n_max: i64) -> DominationReport {
    let exceptions = (n_min..=n_max)
        .filter_map(|n| {
            let lo = 2 * n - 5;
            let hi = odd_p_bound(p, n);
            (lo <= hi).then(|| {
                let cells: Vec<(i64, i64)> = (lo..=hi).map(|m| (m, n)).collect();
                let negative_stem = cells.iter().all(|&(m, n)| m + n < 0);
                DominationException { n, cells, negative_stem }
            })
        })
        .collect();
    DominationReport { p, n_min, n_max, exceptions }
}

/// Rational dimension of the + part of the sphere in degree i + jσ (C₂) or i + jα (ℝ).
pub fn rational_plus_cell(side: Side, i: i64, j: i64) -> u32 {
    match side {
        Side::C2 => u32::from(j.rem_euclid(2) == 0 && i + j == 0),
        Side::Real | Side::Classical => u32::from(i == 0 && j == 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRangeReport {
    pub i_bound: i64,
    pub j_max: i64,
    pub nonzero_cells: usize,
    /// Nonzero off-origin C₂ cells inside {i ≥ 2j − 5}.
    pub violations: Vec<(i64, i64)>,
    pub origin_agrees: bool,
}

impl RationalRangeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.origin_agrees
    }
}

/// Grid |i| ≤ i_bound, 0 ≤ j ≤ j_max.
pub fn verify_rational_range(i_bound: i64, j_max: i64) -> RationalRangeReport {
    let region = di_region();
    let mut nonzero_cells = 0;
    let mut violations = Vec::new();
    for j in 0..=j_max {
        for i in -i_bound..=i_bound {
            if rational_plus_cell(Side::C2, i, j) == 0 || (i, j) == (0, 0) {
                continue;
            }
            nonzero_cells += 1;
            if region.contains(i, j) {
                violations.push((i, j));
            }
        }
    }
    let origin_agrees = rational_plus_cell(Side::C2, 0, 0) == rational_plus_cell(Side::Real, 0, 0);
    RationalRangeReport { i_bound, j_max, nonzero_cells, violations, origin_agrees }
}
