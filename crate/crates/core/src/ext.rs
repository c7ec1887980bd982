//! Ext cells, windowed charts, the realization comparison on Ext, and the
//! universal-coefficient cross-check.
//!
//! A cell is computed as the homology of the cobar complex at one tridegree.
//! Work is organized by bidegree: one pass builds C^0, …, C^{F+1} in a fixed
//! bidegree with their differentials and reads off every filtration at once.
//! Bidegrees are independent and run in parallel on the current rayon pool;
//! results are collected into ordered maps so the output never depends on
//! scheduling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigraded::{Bidegree, Tridegree};
use crate::cobar::{CobarEngine, CobarWord, WordKey};
use crate::error::{Error, Result};
use crate::fplinalg::{homology, induced_map, rank, FpMatrix, SparseVec, Subquotient};
use crate::steenrod::{AlgebraParams, Side, THETA_DEGREE};
use crate::store::{CacheKey, CacheKind, Store};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtCell {
    pub tridegree: Tridegree,
    pub dimension: usize,
    /// Cocycle representatives, each a combination of basis words.
    pub basis: Vec<Vec<(CobarWord, u32)>>,
}

/// Bounds of a chart: 0 ≤ f ≤ max_f, 0 ≤ m + n ≤ max_total, min_weight ≤ n ≤ max_weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub max_f: u32,
    pub max_total: i64,
    pub min_weight: i64,
    pub max_weight: i64,
}

impl Window {
    pub fn new(max_f: u32, max_total: i64, min_weight: i64, max_weight: i64) -> Self {
        Window { max_f, max_total, min_weight, max_weight }
    }

    pub fn is_empty(&self) -> bool {
        self.max_total < 0 || self.min_weight > self.max_weight
    }

    /// Bidegrees in the window, ordered by (total degree, weight).
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        if self.is_empty() {
            return Vec::new();
        }
        (0..=self.max_total)
            .flat_map(|t| (self.min_weight..=self.max_weight).map(move |n| Bidegree::new(t - n, n)))
            .collect()
    }

    pub fn tridegrees(&self) -> Vec<Tridegree> {
        self.bidegrees()
            .into_iter()
            .flat_map(|deg| (0..=self.max_f).map(move |f| Tridegree { f, deg }))
            .collect()
    }

    pub fn contains(&self, t: Tridegree) -> bool {
        let total = t.deg.total_degree();
        t.f <= self.max_f
            && (0..=self.max_total).contains(&total)
            && (self.min_weight..=self.max_weight).contains(&t.deg.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtChart {
    pub params: AlgebraParams,
    pub window: Window,
    pub cells: BTreeMap<Tridegree, ExtCell>,
    /// Realization comparison cells, present when the chart was computed with
    /// comparisons (Real side only).
    pub comparisons: BTreeMap<Tridegree, ComparisonCell>,
}

impl ExtChart {
    pub fn nonzero_cells(&self) -> impl Iterator<Item = &ExtCell> {
        self.cells.values().filter(|c| c.dimension > 0)
    }

    pub fn dimension(&self, t: Tridegree) -> Option<usize> {
        self.cells.get(&t).map(|c| c.dimension)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Iso,
    InjectionNotSurjection,
    NotInjective,
    /// Both groups vanish.
    Zero,
}

impl Verdict {
    pub fn from_dims(source_dim: usize, target_dim: usize, map_rank: usize) -> Verdict {
        if source_dim == 0 && target_dim == 0 {
            Verdict::Zero
        } else if map_rank == source_dim && map_rank == target_dim {
            Verdict::Iso
        } else if map_rank == source_dim {
            Verdict::InjectionNotSurjection
        } else {
            Verdict::NotInjective
        }
    }

    pub fn is_iso(self) -> bool {
        matches!(self, Verdict::Iso | Verdict::Zero)
    }

    pub fn is_injective(self) -> bool {
        !matches!(self, Verdict::NotInjective)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Iso => "iso",
            Verdict::InjectionNotSurjection => "injection-not-surjection",
            Verdict::NotInjective => "not-injective",
            Verdict::Zero => "zero",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonCell {
    pub tridegree: Tridegree,
    pub source_dim: usize,
    pub target_dim: usize,
    pub map_rank: usize,
    pub verdict: Verdict,
}

impl ComparisonCell {
    pub fn new(tridegree: Tridegree, source_dim: usize, target_dim: usize, map_rank: usize) -> Self {
        ComparisonCell {
            tridegree,
            source_dim,
            target_dim,
            map_rank,
            verdict: Verdict::from_dims(source_dim, target_dim, map_rank),
        }
    }
}

/// The cobar complex in one bidegree, filtrations 0..=top.
struct Column {
    keys: Vec<Vec<WordKey>>,
    /// `diffs[f]`: C^f → C^{f+1}
    diffs: Vec<FpMatrix>,
}

impl Column {
    fn build(engine: &CobarEngine, side: Side, deg: Bidegree, top: u32) -> Column {
        let keys: Vec<Vec<WordKey>> = (0..=top + 1).map(|f| engine.keys(side, f, deg)).collect();
        let diffs = (0..=top as usize).map(|f| engine.differential_between(&keys[f], &keys[f + 1])).collect();
        Column { keys, diffs }
    }

    fn incoming(&self, p: u32, f: u32) -> FpMatrix {
        if f == 0 {
            FpMatrix::zero(p, self.keys[0].len(), 0)
        } else {
            self.diffs[f as usize - 1].clone()
        }
    }

    fn subquotient(&self, p: u32, f: u32, at: Tridegree) -> Result<Subquotient> {
        homology(&self.diffs[f as usize], &self.incoming(p, f))
            .map_err(|e| Error::Cell { at, source: Box::new(e) })
    }

    fn cell(&self, engine: &CobarEngine, f: u32, deg: Bidegree) -> Result<ExtCell> {
        let at = Tridegree { f, deg };
        let sq = self.subquotient(engine.p(), f, at)?;
        Ok(cell_from_reps(engine, at, &self.keys[f as usize], &sq.homology_basis))
    }
}

fn cell_from_reps(engine: &CobarEngine, at: Tridegree, keys: &[WordKey], reps: &[SparseVec]) -> ExtCell {
    let basis = reps
        .iter()
        .map(|v| v.0.iter().map(|&(i, c)| (engine.table().word(&keys[i as usize]), c)).collect())
        .collect();
    ExtCell { tridegree: at, dimension: reps.len(), basis }
}

/// Batch calculator for one prime: a shared monomial table and an optional
/// on-disk cache.
pub struct Calculator {
    engine: CobarEngine,
    store: Option<Store>,
}

impl Calculator {
    pub fn new(p: u32, max_total: i64) -> Result<Self> {
        AlgebraParams::new(p, Side::Real)?;
        Ok(Calculator { engine: CobarEngine::new(p, max_total.max(0))?, store: None })
    }

    pub fn with_store(mut self, store: Store) -> Self {
        self.store = Some(store);
        self
    }

    pub fn engine(&self) -> &CobarEngine {
        &self.engine
    }

    pub fn p(&self) -> u32 {
        self.engine.p()
    }

    fn check(&self, deg: Bidegree) -> Result<()> {
        if deg.total_degree() > self.engine.max_total() {
            return Err(Error::InvalidGenerator(format!(
                "total degree {} exceeds the calculator bound {}",
                deg.total_degree(),
                self.engine.max_total()
            )));
        }
        Ok(())
    }

    pub fn ext_cell(&self, side: Side, t: Tridegree) -> Result<ExtCell> {
        self.check(t.deg)?;
        if let Some(cell) = self.cached_cell(side, t) {
            return Ok(cell);
        }
        let column = Column::build(&self.engine, side, t.deg, t.f);
        let cell = column.cell(&self.engine, t.f, t.deg)?;
        self.put_cell(side, &column.keys[t.f as usize], &cell);
        Ok(cell)
    }

    /// All cells of one bidegree for f ≤ top.
    pub fn ext_column(&self, side: Side, deg: Bidegree, top: u32) -> Result<Vec<ExtCell>> {
        self.check(deg)?;
        let cached: Option<Vec<ExtCell>> =
            (0..=top).map(|f| self.cached_cell(side, Tridegree { f, deg })).collect();
        if let Some(cells) = cached {
            return Ok(cells);
        }
        let column = Column::build(&self.engine, side, deg, top);
        if let Some(store) = &self.store {
            for (f, d) in column.diffs.iter().enumerate() {
                let key = CacheKey::new(side, self.p(), CacheKind::Differential, Tridegree { f: f as u32, deg });
                store.put_matrix(&key, d);
            }
        }
        (0..=top)
            .map(|f| {
                let cell = column.cell(&self.engine, f, deg)?;
                self.put_cell(side, &column.keys[f as usize], &cell);
                Ok(cell)
            })
            .collect()
    }

    fn cached_cell(&self, side: Side, t: Tridegree) -> Option<ExtCell> {
        let store = self.store.as_ref()?;
        let key = CacheKey::new(side, self.p(), CacheKind::ExtCell, t);
        let reps = store.get_matrix(&key)?;
        let keys = self.engine.keys(side, t.f, t.deg);
        if reps.cols() != keys.len() {
            log::warn!("cached cell {key} does not match its basis; recomputing");
            return None;
        }
        Some(cell_from_reps(&self.engine, t, &keys, &reps.row_vectors()))
    }

    fn put_cell(&self, side: Side, keys: &[WordKey], cell: &ExtCell) {
        let Some(store) = &self.store else { return };
        let key = CacheKey::new(side, self.p(), CacheKind::ExtCell, cell.tridegree);
        store.put_matrix(&key, &cell_matrix(self.p(), keys, cell, &self.engine));
    }

    /// Realization Ext_ℝ → Ext_{C₂} at one tridegree.
    pub fn ext_comparison(&self, t: Tridegree) -> Result<ComparisonCell> {
        self.check(t.deg)?;
        let real = Column::build(&self.engine, Side::Real, t.deg, t.f);
        let c2 = Column::build(&self.engine, Side::C2, t.deg, t.f);
        self.compare_columns(&real, &c2, t.f, t.deg)
    }

    fn compare_columns(&self, real: &Column, c2: &Column, f: u32, deg: Bidegree) -> Result<ComparisonCell> {
        let p = self.p();
        let at = Tridegree { f, deg };
        let src = real.subquotient(p, f, at)?;
        let dst = c2.subquotient(p, f, at)?;
        let fi = f as usize;
        let ambient = self.engine.comparison_between(&real.keys[fi], &c2.keys[fi]);
        if let Some(store) = &self.store {
            store.put_matrix(&CacheKey::new(Side::Real, p, CacheKind::Comparison, at), &ambient);
        }
        let map = induced_map(&src, &dst, &ambient).map_err(|e| Error::Cell { at, source: Box::new(e) })?;
        Ok(ComparisonCell::new(at, src.dimension(), dst.dimension(), rank(&map)))
    }

    /// Comparison cells of one bidegree for f ≤ top.
    pub fn comparison_column(&self, deg: Bidegree, top: u32) -> Result<Vec<ComparisonCell>> {
        self.check(deg)?;
        let real = Column::build(&self.engine, Side::Real, deg, top);
        let c2 = Column::build(&self.engine, Side::C2, deg, top);
        (0..=top).map(|f| self.compare_columns(&real, &c2, f, deg)).collect()
    }

    pub fn chart(&self, side: Side, window: &Window) -> Result<ExtChart> {
        self.chart_impl(side, window, false)
    }

    /// Real-side chart together with the comparison to the C₂ side.
    pub fn comparison_chart(&self, window: &Window) -> Result<ExtChart> {
        self.chart_impl(Side::Real, window, true)
    }

    fn chart_impl(&self, side: Side, window: &Window, compare: bool) -> Result<ExtChart> {
        let params = AlgebraParams::new(self.p(), side)?;
        if window.is_empty() {
            return Ok(ExtChart { params, window: *window, cells: BTreeMap::new(), comparisons: BTreeMap::new() });
        }
        self.check(Bidegree::new(window.max_total, 0))?;
        let columns: Vec<(Vec<ExtCell>, Vec<ComparisonCell>)> = window
            .bidegrees()
            .into_par_iter()
            .map(|deg| {
                let cells = self.ext_column(side, deg, window.max_f)?;
                let comparisons =
                    if compare { self.comparison_column(deg, window.max_f)? } else { Vec::new() };
                Ok((cells, comparisons))
            })
            .collect::<Result<_>>()?;
        let mut cells = BTreeMap::new();
        let mut comparisons = BTreeMap::new();
        for (cs, cmps) in columns {
            cells.extend(cs.into_iter().map(|c| (c.tridegree, c)));
            comparisons.extend(cmps.into_iter().map(|c| (c.tridegree, c)));
        }
        Ok(ExtChart { params, window: *window, cells, comparisons })
    }
}

fn cell_matrix(p: u32, keys: &[WordKey], cell: &ExtCell, engine: &CobarEngine) -> FpMatrix {
    let index: HashMap<&WordKey, u32> = keys.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
    let triplets = cell.basis.iter().enumerate().flat_map(|(r, rep)| {
        let index = &index;
        rep.iter().map(move |(w, c)| {
            let key = engine.table().key(w).expect("representative words come from the table");
            (r as u32, index[&key], i64::from(*c))
        })
    });
    FpMatrix::from_triplets(p, cell.dimension, keys.len(), triplets).expect("indices in range")
}

/// Dimension of Ext over the classical algebra, with the motivic bigrading
/// carried by θ-free words. Memoized per classical tridegree.
pub struct UctOracle {
    engine: CobarEngine,
    memo: Mutex<HashMap<Tridegree, usize>>,
}

impl UctOracle {
    pub fn new(p: u32, max_total: i64) -> Result<Self> {
        Ok(UctOracle { engine: CobarEngine::new(p, max_total.max(0))?, memo: Mutex::new(HashMap::new()) })
    }

    pub fn classical_dim(&self, t: Tridegree) -> Result<usize> {
        if let Some(&d) = self.memo.lock().expect("memo lock").get(&t) {
            return Ok(d);
        }
        let e = &self.engine;
        let here = e.keys(Side::Classical, t.f, t.deg);
        let dim = if here.is_empty() {
            0
        } else {
            let up = e.keys(Side::Classical, t.f + 1, t.deg);
            let out_rank = rank(&e.differential_between(&here, &up));
            let in_rank = if t.f == 0 {
                0
            } else {
                let down = e.keys(Side::Classical, t.f - 1, t.deg);
                rank(&e.differential_between(&down, &here))
            };
            here.len() - out_rank - in_rank
        };
        self.memo.lock().expect("memo lock").insert(t, dim);
        Ok(dim)
    }

    /// Σ_j dim Ext_classical^{f, (k − 2j) + (ℓ + 2j)α} over j ≥ 0 (Real) or
    /// all j (C₂); the classical side takes j = 0 only.
    pub fn dimension(&self, side: Side, t: Tridegree) -> Result<usize> {
        let total = t.deg.total_degree();
        if total < 0 {
            return Ok(0);
        }
        if total > self.engine.max_total() {
            return Err(Error::InvalidGenerator(format!("total degree {total} exceeds the oracle bound")));
        }
        // classical weights lie in [0, total/2]
        let mut sum = 0;
        for j in (-t.deg.n - 1) / 2 - 1..=(total / 2 - t.deg.n) / 2 + 1 {
            if !side.allows_theta(j) {
                continue;
            }
            let shifted = t.deg - THETA_DEGREE.scale(j);
            if shifted.n < 0 || shifted.m < shifted.n {
                continue;
            }
            sum += self.classical_dim(Tridegree { f: t.f, deg: shifted })?;
        }
        Ok(sum)
    }
}

pub fn ext_cell(params: &AlgebraParams, t: Tridegree) -> Result<ExtCell> {
    Calculator::new(params.p(), t.deg.total_degree())?.ext_cell(params.side(), t)
}

pub fn ext_comparison(p: u32, t: Tridegree) -> Result<ComparisonCell> {
    Calculator::new(p, t.deg.total_degree())?.ext_comparison(t)
}

pub fn uct_oracle(p: u32, side: Side, t: Tridegree) -> Result<usize> {
    AlgebraParams::new(p, side)?;
    UctOracle::new(p, t.deg.total_degree())?.dimension(side, t)
}

pub fn chart(params: &AlgebraParams, window: &Window) -> Result<ExtChart> {
    Calculator::new(params.p(), window.max_total)?.chart(params.side(), window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::Monomial;

    fn real3() -> AlgebraParams {
        AlgebraParams::new(3, Side::Real).unwrap()
    }

    #[test]
    fn ext0_examples() {
        for j in 0..4 {
            let cell = ext_cell(&real3(), Tridegree::new(0, 2 * j, -2 * j)).unwrap();
            assert_eq!(cell.dimension, 1);
            assert_eq!(cell.basis[0][0].0.theta_exp(), j);
        }
    }

    #[test]
    fn ext1_examples() {
        let cell = ext_cell(&real3(), Tridegree::new(1, 1, 0)).unwrap();
        assert_eq!(cell.dimension, 1);
        assert_eq!(cell.basis[0], vec![(CobarWord::new(vec![Monomial::tau(0)]).unwrap(), 1)]);
        let cell = ext_cell(&real3(), Tridegree::new(1, 2, 2)).unwrap();
        assert_eq!(cell.dimension, 1);
        assert_eq!(cell.basis[0], vec![(CobarWord::new(vec![Monomial::xi(1)]).unwrap(), 1)]);
    }

    #[test]
    fn comparison_examples() {
        let c = ext_comparison(3, Tridegree::new(1, 1, 0)).unwrap();
        assert_eq!((c.source_dim, c.target_dim, c.map_rank, c.verdict), (1, 1, 1, Verdict::Iso));
        let c = ext_comparison(3, Tridegree::new(1, -1, 2)).unwrap();
        assert_eq!((c.source_dim, c.target_dim, c.map_rank), (0, 1, 0));
        assert_eq!(c.verdict, Verdict::InjectionNotSurjection);
        let c = ext_comparison(3, Tridegree::new(0, 0, 0)).unwrap();
        assert_eq!(c.verdict, Verdict::Iso);
    }

    #[test]
    fn verdicts() {
        assert_eq!(Verdict::from_dims(0, 0, 0), Verdict::Zero);
        assert_eq!(Verdict::from_dims(2, 2, 2), Verdict::Iso);
        assert_eq!(Verdict::from_dims(1, 3, 1), Verdict::InjectionNotSurjection);
        assert_eq!(Verdict::from_dims(2, 2, 1), Verdict::NotInjective);
        assert!(Verdict::Zero.is_iso());
        assert!(!Verdict::InjectionNotSurjection.is_iso());
    }

    #[test]
    fn uct_examples() {
        assert_eq!(uct_oracle(3, Side::Real, Tridegree::new(0, 2, -2)).unwrap(), 1);
        assert_eq!(uct_oracle(3, Side::Real, Tridegree::new(1, 1, 0)).unwrap(), 1);
        assert_eq!(uct_oracle(3, Side::Real, Tridegree::new(1, 3, 0)).unwrap(), 0);
        assert_eq!(uct_oracle(3, Side::Real, Tridegree::new(1, 3, -2)).unwrap(), 1);
    }

    #[test]
    fn chart_examples() {
        let empty = chart(&real3(), &Window::new(1, -1, 0, 0)).unwrap();
        assert!(empty.cells.is_empty());
        let w = Window::new(1, 2, -2, 2);
        let c = chart(&real3(), &w).unwrap();
        let nonzero: Vec<Tridegree> = c.nonzero_cells().map(|c| c.tridegree).collect();
        assert_eq!(
            nonzero,
            vec![
                Tridegree::new(0, 0, 0),
                Tridegree::new(0, 2, -2),
                Tridegree::new(1, 1, 0),
                Tridegree::new(1, 3, -2),
            ]
        );
        assert_eq!(c.cells.len(), w.tridegrees().len());
        for (t, cell) in &c.cells {
            assert_eq!(ext_cell(&real3(), *t).unwrap(), *cell);
        }
    }

    #[test]
    fn uct_agrees_with_direct_computation_small() {
        let calc = Calculator::new(3, 12).unwrap();
        let oracle = UctOracle::new(3, 12).unwrap();
        for side in [Side::Classical, Side::Real, Side::C2] {
            let chart = calc.chart(side, &Window::new(3, 12, -8, 8)).unwrap();
            for (t, cell) in &chart.cells {
                assert_eq!(cell.dimension, oracle.dimension(side, *t).unwrap(), "{side} {t}");
            }
        }
    }
}
