//! The normalized cobar complex of the dual Steenrod algebra with trivial
//! coefficients, one tridegree at a time.
//!
//! Because θ is central with trivial coaction, C^f over ℝ (resp. C₂) is the
//! free F_p[θ]-module (resp. F_p[θ^±1]-module) on the classical words
//! [a₁|…|a_f] of non-unit θ-free monomials, and the differential is θ-linear.
//! A basis word is therefore θ^j·[a₁|…|a_f], with the θ-power recorded once on
//! the word (equivalently on its first factor).
//!
//! Sign convention, for the reduced coproduct ψ̄(a_i) = Σ a'_i ⊗ a''_i:
//!
//! d[a₁|…|a_f] = Σ_i (−1)^{(i−1) + |a₁|+…+|a_{i−1}| + |a'_i|} [a₁|…|a'_i|a''_i|…|a_f]
//!
//! with |·| the total degree. This is the usual sign for bars of shifted degree
//! |a| + 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bigraded::{Bidegree, Tridegree};
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, SparseVec};
use crate::steenrod::{
    classical_monomials_of_total, monomial_bidegree, reduced_coproduct, AlgebraParams, Monomial, Side,
    THETA_DEGREE,
};

/// A basis element θ^j [a₁|…|a_f] of C^f. Factors are θ-free and non-unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CobarWord {
    theta: i64,
    factors: Vec<Monomial>,
}

impl CobarWord {
    /// Normalizes θ-powers out of the factors onto the word.
    pub fn new(factors: Vec<Monomial>) -> Result<Self> {
        let theta = factors.iter().map(Monomial::theta_exp).sum();
        let factors: Vec<Monomial> = factors.iter().map(Monomial::without_theta).collect();
        if let Some(u) = factors.iter().find(|m| m.is_unit()) {
            return Err(Error::InvalidMonomial { mono: u.to_string(), side: "normalized cobar".into() });
        }
        Ok(CobarWord { theta, factors })
    }

    pub fn from_parts(theta: i64, factors: Vec<Monomial>) -> Result<Self> {
        if factors.iter().any(|m| !m.is_theta_free()) {
            return Err(Error::InvalidMonomial {
                mono: "θ inside a factor".into(),
                side: "normalized cobar".into(),
            });
        }
        let mut w = CobarWord::new(factors)?;
        w.theta = theta;
        Ok(w)
    }

    pub fn filtration(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn theta_exp(&self) -> i64 {
        self.theta
    }

    /// θ-free factors.
    pub fn factors(&self) -> &[Monomial] {
        &self.factors
    }

    /// Factors with the θ-power placed on the first one. For f = 0 this is
    /// the single coefficient θ^j.
    pub fn normalized_factors(&self) -> Vec<Monomial> {
        if self.factors.is_empty() {
            return vec![Monomial::theta(self.theta)];
        }
        let mut out = self.factors.clone();
        out[0] = out[0].with_theta(self.theta);
        out
    }

    pub fn bidegree(&self, params: &AlgebraParams) -> Bidegree {
        THETA_DEGREE.scale(self.theta) + self.factors.iter().map(|m| monomial_bidegree(params, m)).sum()
    }
}

impl fmt::Display for CobarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normalized_factors().iter().map(Monomial::to_string).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// The ordered basis of C^f in one tridegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridegreeSlice {
    pub tridegree: Tridegree,
    pub basis: Vec<CobarWord>,
}

impl TridegreeSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Compact word: θ exponent plus monomial ids from a [`MonomialTable`].
/// Ids follow the canonical monomial order, so the derived order on keys is
/// the canonical word order.
pub(crate) type WordKey = (i64, Vec<u32>);

/// θ-free non-unit monomials up to a total degree, with their reduced coproducts.
#[derive(Debug)]
pub struct MonomialTable {
    p: u32,
    max_total: i64,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    bidegree: Vec<Bidegree>,
    odd: Vec<bool>,
    reduced: Vec<Vec<(u32, u32, u32)>>,
}

impl MonomialTable {
    pub fn new(p: u32, max_total: i64) -> Result<Self> {
        let params = AlgebraParams::new(p, Side::Classical)?;
        let mut monos: Vec<Monomial> =
            (1..=max_total.max(0)).flat_map(|t| classical_monomials_of_total(p, t)).collect();
        monos.sort();
        let index: HashMap<Monomial, u32> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let bidegree = monos.iter().map(|m| monomial_bidegree(&params, m)).collect();
        let odd = monos.iter().map(Monomial::is_odd).collect();
        let reduced = monos
            .iter()
            .map(|m| {
                reduced_coproduct(p, m)
                    .into_iter()
                    .map(|(a, b, c)| (index[&a], index[&b], c))
                    .collect()
            })
            .collect();
        Ok(MonomialTable { p, max_total: max_total.max(0), monos, index, bidegree, odd, reduced })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_total(&self) -> i64 {
        self.max_total
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, id: u32) -> &Monomial {
        &self.monos[id as usize]
    }

    pub fn id(&self, mono: &Monomial) -> Option<u32> {
        self.index.get(mono).copied()
    }

    /// Classical f-words of bidegree `deg`, lexicographically ordered.
    fn classical_words(&self, f: u32, deg: Bidegree) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(f as usize);
        self.words_rec(f, deg, &mut current, &mut out);
        out
    }

    fn words_rec(&self, f: u32, deg: Bidegree, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if f == 0 {
            if deg == Bidegree::ZERO {
                out.push(current.clone());
            }
            return;
        }
        if !classical_feasible(f, deg) || deg.total_degree() > self.max_total {
            return;
        }
        for id in 0..self.monos.len() as u32 {
            let rest = deg - self.bidegree[id as usize];
            if classical_feasible(f - 1, rest) {
                current.push(id);
                self.words_rec(f - 1, rest, current, out);
                current.pop();
            }
        }
    }

    pub(crate) fn word(&self, key: &WordKey) -> CobarWord {
        CobarWord { theta: key.0, factors: key.1.iter().map(|&i| self.monos[i as usize].clone()).collect() }
    }

    pub(crate) fn key(&self, word: &CobarWord) -> Option<WordKey> {
        let ids: Option<Vec<u32>> = word.factors.iter().map(|m| self.id(m)).collect();
        ids.map(|ids| (word.theta, ids))
    }
}

/// Necessary conditions for a classical f-word to exist in bidegree `deg`:
/// each factor has m ≥ n ≥ 0 and total degree ≥ 1.
fn classical_feasible(f: u32, deg: Bidegree) -> bool {
    if f == 0 {
        return deg == Bidegree::ZERO;
    }
    deg.n >= 0 && deg.m >= deg.n && deg.total_degree() >= i64::from(f)
}

/// Builds cobar bases and matrices for one prime over a shared monomial table.
#[derive(Clone, Debug)]
pub struct CobarEngine {
    table: Arc<MonomialTable>,
}

impl CobarEngine {
    pub fn new(p: u32, max_total: i64) -> Result<Self> {
        Ok(CobarEngine { table: Arc::new(MonomialTable::new(p, max_total)?) })
    }

    pub fn p(&self) -> u32 {
        self.table.p
    }

    pub fn max_total(&self) -> i64 {
        self.table.max_total
    }

    pub fn table(&self) -> &MonomialTable {
        &self.table
    }

    fn check_range(&self, deg: Bidegree) -> Result<()> {
        if deg.total_degree() > self.table.max_total {
            return Err(Error::InvalidGenerator(format!(
                "total degree {} exceeds the table bound {}",
                deg.total_degree(),
                self.table.max_total
            )));
        }
        Ok(())
    }

    /// Basis keys of C^f in bidegree `deg` for `side`, in canonical order.
    pub(crate) fn keys(&self, side: Side, f: u32, deg: Bidegree) -> Vec<WordKey> {
        let total = deg.total_degree();
        if total < 0 || total > self.table.max_total {
            return Vec::new();
        }
        // θ^j Z with Z classical of bidegree deg − j(2, −2); classical weights
        // lie in [0, total/2], which bounds j.
        let mut out = Vec::new();
        let lo = (-deg.n).div_euclid(2) - 1;
        let hi = (total / 2 - deg.n).div_euclid(2) + 1;
        for j in lo..=hi {
            if !side.allows_theta(j) {
                continue;
            }
            let classical = deg - THETA_DEGREE.scale(j);
            if !classical_feasible(f, classical) {
                continue;
            }
            out.extend(self.table.classical_words(f, classical).into_iter().map(|w| (j, w)));
        }
        out
    }

    pub fn basis(&self, side: Side, t: Tridegree) -> Result<TridegreeSlice> {
        self.check_range(t.deg)?;
        let basis = self.keys(side, t.f, t.deg).iter().map(|k| self.table.word(k)).collect();
        Ok(TridegreeSlice { tridegree: t, basis })
    }

    /// d: C^f → C^{f+1} between the given bases.
    pub(crate) fn differential_between(&self, source: &[WordKey], target: &[WordKey]) -> FpMatrix {
        let p = self.table.p;
        let index: HashMap<&WordKey, u32> = target.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let mut columns = Vec::with_capacity(source.len());
        let mut scratch: WordKey = (0, Vec::new());
        for (theta, word) in source {
            let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
            let mut parity = 0usize;
            for (q, &a) in word.iter().enumerate() {
                for &(left, right, c) in &self.table.reduced[a as usize] {
                    let odd = (q + parity + usize::from(self.table.odd[left as usize])) % 2 == 1;
                    scratch.0 = *theta;
                    scratch.1.clear();
                    scratch.1.extend_from_slice(&word[..q]);
                    scratch.1.push(left);
                    scratch.1.push(right);
                    scratch.1.extend_from_slice(&word[q + 1..]);
                    let row = index.get(&scratch).copied().unwrap_or_else(|| {
                        panic!("target basis is missing a word of the differential of {:?}", word)
                    });
                    let c = if odd { (p - c) % p } else { c };
                    let e = acc.entry(row).or_insert(0);
                    *e = (*e + c) % p;
                }
                parity += usize::from(self.table.odd[a as usize]);
            }
            columns.push(SparseVec(acc.into_iter().filter(|e| e.1 != 0).collect()));
        }
        FpMatrix::from_columns(p, target.len(), &columns)
    }

    pub fn differential(&self, side: Side, t: Tridegree) -> Result<FpMatrix> {
        self.check_range(t.deg)?;
        let source = self.keys(side, t.f, t.deg);
        let target = self.keys(side, t.f + 1, t.deg);
        Ok(self.differential_between(&source, &target))
    }

    /// Realization C^f_ℝ → C^f_{C₂} between the canonical bases.
    pub(crate) fn comparison_between(&self, real: &[WordKey], c2: &[WordKey]) -> FpMatrix {
        let index: HashMap<&WordKey, u32> = c2.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let columns: Vec<SparseVec> = real.iter().map(|k| SparseVec::unit(index[k])).collect();
        FpMatrix::from_columns(self.table.p, c2.len(), &columns)
    }

    pub fn comparison(&self, t: Tridegree) -> Result<FpMatrix> {
        self.check_range(t.deg)?;
        let real = self.keys(Side::Real, t.f, t.deg);
        let c2 = self.keys(Side::C2, t.f, t.deg);
        Ok(self.comparison_between(&real, &c2))
    }

    pub fn cokernel(&self, t: Tridegree) -> Result<Vec<CobarWord>> {
        self.check_range(t.deg)?;
        Ok(self
            .keys(Side::C2, t.f, t.deg)
            .iter()
            .filter(|k| k.0 < 0)
            .map(|k| self.table.word(k))
            .collect())
    }
}

fn engine_for(p: u32, deg: Bidegree) -> Result<CobarEngine> {
    CobarEngine::new(p, deg.total_degree().max(0))
}

pub fn cobar_basis(params: &AlgebraParams, t: Tridegree) -> Result<TridegreeSlice> {
    engine_for(params.p(), t.deg)?.basis(params.side(), t)
}

pub fn differential_matrix(params: &AlgebraParams, t: Tridegree) -> Result<FpMatrix> {
    engine_for(params.p(), t.deg)?.differential(params.side(), t)
}

pub fn comparison_matrix(p: u32, t: Tridegree) -> Result<FpMatrix> {
    engine_for(p, t.deg)?.comparison(t)
}

pub fn cokernel_basis(p: u32, t: Tridegree) -> Result<Vec<CobarWord>> {
    engine_for(p, t.deg)?.cokernel(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::rank;

    fn params(side: Side) -> AlgebraParams {
        AlgebraParams::new(3, side).unwrap()
    }

    fn word(theta: i64, factors: &[Monomial]) -> CobarWord {
        CobarWord::from_parts(theta, factors.to_vec()).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = cobar_basis(&params(Side::Real), Tridegree::new(1, 1, 0)).unwrap();
        assert_eq!(b.basis, vec![word(0, &[Monomial::tau(0)])]);
        assert!(cobar_basis(&params(Side::Real), Tridegree::new(1, -1, 2)).unwrap().basis.is_empty());
        let b = cobar_basis(&params(Side::C2), Tridegree::new(1, -1, 2)).unwrap();
        assert_eq!(b.basis, vec![word(-1, &[Monomial::tau(0)])]);
        assert_eq!(b.basis[0].to_string(), "[θ⁻¹τ0]");
    }

    #[test]
    fn f0_basis_is_theta_powers() {
        let b = cobar_basis(&params(Side::Real), Tridegree::new(0, 4, -4)).unwrap();
        assert_eq!(b.basis, vec![word(2, &[])]);
        assert!(cobar_basis(&params(Side::Real), Tridegree::new(0, -4, 4)).unwrap().basis.is_empty());
        assert!(cobar_basis(&params(Side::Classical), Tridegree::new(0, 4, -4)).unwrap().basis.is_empty());
        assert_eq!(cobar_basis(&params(Side::C2), Tridegree::new(0, -4, 4)).unwrap().dim(), 1);
    }

    #[test]
    fn words_normalize_theta() {
        let w = CobarWord::new(vec![Monomial::new(1, &[0], &[]), Monomial::new(-3, &[], &[1])]).unwrap();
        assert_eq!(w.theta_exp(), -2);
        assert!(w.factors().iter().all(Monomial::is_theta_free));
        assert!(CobarWord::new(vec![Monomial::theta(1)]).is_err());
        let params = params(Side::C2);
        assert_eq!(w.bidegree(&params), Bidegree::new(-4 + 1 + 2, 4 + 2));
    }

    #[test]
    fn differential_examples() {
        let real = params(Side::Real);
        let d0 = differential_matrix(&real, Tridegree::new(0, 0, 0)).unwrap();
        assert!(d0.is_zero());
        let d = differential_matrix(&real, Tridegree::new(1, 1, 0)).unwrap();
        assert!(d.is_zero());
        // d[τ₁] = [ξ₁|τ₀]
        let t = Tridegree::new(1, 3, 2);
        let src = cobar_basis(&real, t).unwrap();
        let tgt = cobar_basis(&real, Tridegree::new(2, 3, 2)).unwrap();
        let d = differential_matrix(&real, t).unwrap();
        let col = src.basis.iter().position(|w| *w == word(0, &[Monomial::tau(1)])).unwrap();
        let row = tgt.basis.iter().position(|w| *w == word(0, &[Monomial::xi(1), Monomial::tau(0)])).unwrap();
        let column: Vec<_> = d.entries().iter().filter(|e| e.1 as usize == col).collect();
        assert_eq!(column, vec![&(row as u32, col as u32, 1)]);
    }

    #[test]
    fn d_squared_small_window() {
        let engine = CobarEngine::new(3, 18).unwrap();
        for side in [Side::Classical, Side::Real, Side::C2] {
            for total in 0..=18 {
                for n in -6..=10 {
                    let deg = Bidegree::new(total - n, n);
                    for f in 0..3 {
                        let a = engine.differential(side, Tridegree { f, deg }).unwrap();
                        let b = engine.differential(side, Tridegree { f: f + 1, deg }).unwrap();
                        assert!(b.mul(&a).unwrap().is_zero(), "{side} f={f} {deg}");
                    }
                }
            }
        }
    }

    #[test]
    fn differential_preserves_theta() {
        let engine = CobarEngine::new(3, 14).unwrap();
        let deg = Bidegree::new(10, 4);
        let src = engine.keys(Side::C2, 1, deg);
        let tgt = engine.keys(Side::C2, 2, deg);
        let d = engine.differential_between(&src, &tgt);
        for &(r, c, _) in d.entries() {
            assert_eq!(src[c as usize].0, tgt[r as usize].0);
        }
    }

    #[test]
    fn comparison_examples() {
        let m = comparison_matrix(3, Tridegree::new(1, 1, 0)).unwrap();
        assert_eq!(m, FpMatrix::identity(3, 1));
        let m = comparison_matrix(3, Tridegree::new(1, -1, 2)).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        let m = comparison_matrix(3, Tridegree::new(0, 2, -2)).unwrap();
        assert_eq!(m, FpMatrix::identity(3, 1));
    }

    #[test]
    fn comparison_is_injective_in_a_window() {
        let engine = CobarEngine::new(3, 12).unwrap();
        for total in 0..=12 {
            for n in -8..=8 {
                for f in 0..3 {
                    let t = Tridegree { f, deg: Bidegree::new(total - n, n) };
                    let m = engine.comparison(t).unwrap();
                    assert_eq!(rank(&m), m.cols());
                }
            }
        }
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_basis(3, Tridegree::new(1, -1, 2)).unwrap(), vec![word(-1, &[Monomial::tau(0)])]);
        assert!(cokernel_basis(3, Tridegree::new(1, 1, 0)).unwrap().is_empty());
        assert!(cokernel_basis(3, Tridegree::new(0, 0, 0)).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_is_an_error() {
        let engine = CobarEngine::new(3, 5).unwrap();
        assert!(engine.basis(Side::Real, Tridegree::new(1, 6, 0)).is_err());
    }
}
