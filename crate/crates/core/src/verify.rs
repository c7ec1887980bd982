//! Verification suites and their machine-readable reports.
//!
//! Each suite turns a family of exact checks into named claims. A report is
//! a pure function of its configuration: no timings, no host data, ordered
//! claims, so equal inputs give byte-identical JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bigraded::Tridegree;
use crate::cobar::CobarEngine;
use crate::error::{Error, Result};
use crate::ext::{Calculator, UctOracle, Window};
use crate::fplinalg::{rank, FpMatrix};
use crate::idempotents::{split_module, verify_split_identities};
use crate::ranges::{
    check_domination, coarse_bound, cokernel_bound, odd_p_bound, verify_rational_range,
};
use crate::steenrod::{
    classical_monomials_of_total, coproduct, is_prime, monomial_bidegree, AlgebraParams, Monomial,
    Side, TensorTerm,
};
use crate::store::Store;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    /// First counterexample, when the claim fails.
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Claim {
    pub fn pass(id: impl Into<String>) -> Self {
        Claim { id: id.into(), status: Status::Pass, witness: None, note: None }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        Claim { id: id.into(), status: Status::Fail, witness: Some(witness.into()), note: None }
    }

    /// Pass when `witness` is `None`.
    pub fn check(id: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Claim::pass(id),
            Some(w) => Claim::fail(id, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: Suite, params: BTreeMap<String, Value>, claims: Vec<Claim>) -> Self {
        let passed = claims.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: claims.len(), passed, failed: claims.len() - passed };
        VerificationReport { suite: suite.name().to_string(), params, claims, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One line per claim, then the counts.
    pub fn human_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}", c.id));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("  ({n})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} claims, {} passed, {} failed\n",
            self.suite, self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaCoarse,
    CobarD2,
    CobarMap,
    ExtMap,
    Uct,
    Ranges,
    Split,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::LemmaCoarse, Suite::CobarD2, Suite::CobarMap, Suite::ExtMap, Suite::Uct, Suite::Ranges, Suite::Split];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaCoarse => "lemma-coarse",
            Suite::CobarD2 => "cobar-d2",
            Suite::CobarMap => "cobar-map",
            Suite::ExtMap => "ext-map",
            Suite::Uct => "uct",
            Suite::Ranges => "ranges",
            Suite::Split => "split",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidGenerator(format!("unknown suite {s:?}")))
    }
}

/// Overrides for a suite's default window. Unset fields take the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub primes: Option<Vec<u32>>,
    pub max_f: Option<u32>,
    pub max_total: Option<i64>,
    pub min_weight: Option<i64>,
    pub max_weight: Option<i64>,
    pub store: Option<Store>,
}

impl SuiteConfig {
    fn primes(&self, default: &[u32]) -> Result<Vec<u32>> {
        let primes = self.primes.clone().unwrap_or_else(|| default.to_vec());
        for &p in &primes {
            AlgebraParams::new(p, Side::Real)?;
        }
        Ok(primes)
    }

    fn prime(&self) -> Result<u32> {
        match self.primes(&[3])?.as_slice() {
            [p] => Ok(*p),
            _ => Err(Error::InvalidGenerator("this suite takes a single prime".into())),
        }
    }

    fn window(&self, max_f: u32, max_total: i64, weight: i64) -> Window {
        Window::new(
            self.max_f.unwrap_or(max_f),
            self.max_total.unwrap_or(max_total),
            self.min_weight.unwrap_or(-weight),
            self.max_weight.unwrap_or(weight),
        )
    }

    fn calculator(&self, p: u32, window: &Window) -> Result<Calculator> {
        let calc = Calculator::new(p, window.max_total)?;
        Ok(match &self.store {
            Some(s) => calc.with_store(s.clone()),
            None => calc,
        })
    }
}

fn window_params(p: u32, w: &Window) -> BTreeMap<String, Value> {
    BTreeMap::from([
        ("prime".to_string(), json!(p)),
        ("max_f".to_string(), json!(w.max_f)),
        ("max_total".to_string(), json!(w.max_total)),
        ("min_weight".to_string(), json!(w.min_weight)),
        ("max_weight".to_string(), json!(w.max_weight)),
    ])
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    match suite {
        Suite::LemmaCoarse => lemma_coarse(config),
        Suite::CobarD2 => cobar_d2(config),
        Suite::CobarMap => cobar_map(config),
        Suite::ExtMap => ext_map(config),
        Suite::Uct => uct(config),
        Suite::Ranges => ranges(config),
        Suite::Split => Ok(split()),
    }
}

fn list_preview<T: fmt::Display>(items: &[T], limit: usize) -> String {
    let shown: Vec<String> = items.iter().take(limit).map(|x| x.to_string()).collect();
    if items.len() > limit {
        format!("{}, … ({} total)", shown.join(", "), items.len())
    } else {
        shown.join(", ")
    }
}

fn lemma_coarse(config: &SuiteConfig) -> Result<VerificationReport> {
    let primes = config.primes(&[3, 5, 7])?;
    let max_total = config.max_total.unwrap_or(200);
    let mut claims = Vec::new();
    for &p in &primes {
        let params = AlgebraParams::new(p, Side::Classical)?;
        let results: Vec<(usize, Vec<Monomial>, Vec<Monomial>)> = (0..=max_total)
            .into_par_iter()
            .map(|t| {
                let monos = classical_monomials_of_total(p, t);
                let mut violations = Vec::new();
                let mut equal = Vec::new();
                for m in &monos {
                    let d = monomial_bidegree(&params, m);
                    let k = Ratio::from_integer(d.m);
                    let bound = coarse_bound(p, d.n);
                    if k > bound {
                        violations.push(m.clone());
                    } else if k == bound {
                        equal.push(m.clone());
                    }
                }
                (monos.len(), violations, equal)
            })
            .collect();
        let checked: usize = results.iter().map(|r| r.0).sum();
        let violations: Vec<Monomial> = results.iter().flat_map(|r| r.1.clone()).collect();
        let equal: Vec<Monomial> = results.iter().flat_map(|r| r.2.clone()).collect();
        claims.push(
            Claim::check(format!("coarse-bound/p={p}"), violations.first().map(|m| m.to_string()))
                .with_note(format!("{checked} monomials, total degree ≤ {max_total}")),
        );
        let tau0 = Monomial::tau(0);
        claims.push(
            Claim::check(
                format!("coarse-equality/p={p}"),
                (!equal.contains(&tau0)).then(|| "τ0 does not attain the bound".to_string()),
            )
            .with_note(format!("equality: {}", list_preview(&equal, 8))),
        );
    }
    let params = BTreeMap::from([
        ("primes".to_string(), json!(primes)),
        ("max_total".to_string(), json!(max_total)),
    ]);
    Ok(VerificationReport::new(Suite::LemmaCoarse, params, claims))
}

type TripleTerm = (Monomial, Monomial, Monomial);

fn add_term(acc: &mut BTreeMap<TripleTerm, u32>, key: TripleTerm, c: u32, p: u32) {
    let e = acc.entry(key).or_insert(0);
    *e = (*e + c) % p;
}

fn coassociativity_defect(params: &AlgebraParams, m: &Monomial) -> bool {
    let p = params.p();
    let psi = coproduct(params, m);
    let mut left: BTreeMap<TripleTerm, u32> = BTreeMap::new();
    let mut right: BTreeMap<TripleTerm, u32> = BTreeMap::new();
    for (a, b, c) in &psi {
        for (a1, a2, c2) in coproduct(params, a) {
            add_term(&mut left, (a1, a2, b.clone()), c * c2 % p, p);
        }
        for (b1, b2, c2) in coproduct(params, b) {
            add_term(&mut right, (a.clone(), b1, b2), c * c2 % p, p);
        }
    }
    left.retain(|_, c| *c != 0);
    right.retain(|_, c| *c != 0);
    left != right
}

fn counit_defect(psi: &[TensorTerm], m: &Monomial) -> bool {
    let left: Vec<&TensorTerm> = psi.iter().filter(|t| t.1.is_unit()).collect();
    let right: Vec<&TensorTerm> =
        psi.iter().filter(|t| t.0.without_theta().is_unit() && t.0.theta_exp() == m.theta_exp()).collect();
    let ok = |ts: &[&TensorTerm], pick: fn(&TensorTerm) -> Monomial| {
        ts.len() == 1 && ts[0].2 == 1 && pick(ts[0]) == *m
    };
    !ok(&left, |t| t.0.clone()) || !ok(&right, |t| t.1.with_theta(t.0.theta_exp()))
}

fn cobar_d2(config: &SuiteConfig) -> Result<VerificationReport> {
    let p = config.prime()?;
    let window = config.window(5, 30, 30);
    let engine = CobarEngine::new(p, window.max_total.max(0))?;
    let mut claims = Vec::new();
    let bidegrees = window.bidegrees();
    for side in [Side::Real, Side::C2] {
        // first failure per source filtration
        let failures: Vec<Vec<Option<Tridegree>>> = bidegrees
            .par_iter()
            .map(|&deg| {
                let keys: Vec<_> = (0..=window.max_f + 2).map(|f| engine.keys(side, f, deg)).collect();
                let diffs: Vec<FpMatrix> =
                    (0..=window.max_f as usize + 1).map(|f| engine.differential_between(&keys[f], &keys[f + 1])).collect();
                (0..=window.max_f as usize)
                    .map(|f| {
                        let zero = diffs[f + 1].mul(&diffs[f]).map(|m| m.is_zero()).unwrap_or(false);
                        (!zero).then_some(Tridegree { f: f as u32, deg })
                    })
                    .collect()
            })
            .collect();
        for f in 0..=window.max_f as usize {
            let witness = failures.iter().find_map(|col| col[f]).map(|t| format!("d∘d ≠ 0 from {t}"));
            claims.push(
                Claim::check(format!("d2/{side}/f={f}"), witness)
                    .with_note(format!("{} bidegrees", bidegrees.len())),
            );
        }
    }
    let params = AlgebraParams::new(p, Side::Real)?;
    let monos: Vec<Monomial> = (1..=window.max_total)
        .flat_map(|t| classical_monomials_of_total(p, t))
        .flat_map(|m| [m.clone(), m.with_theta(1)])
        .collect();
    let coassoc: Vec<&Monomial> = monos.par_iter().filter(|m| coassociativity_defect(&params, m)).collect();
    claims.push(
        Claim::check(format!("coassociativity/p={p}"), coassoc.first().map(|m| m.to_string()))
            .with_note(format!("{} monomials", monos.len())),
    );
    let counit: Vec<&Monomial> =
        monos.par_iter().filter(|m| counit_defect(&coproduct(&params, m), m)).collect();
    claims.push(
        Claim::check(format!("counit/p={p}"), counit.first().map(|m| m.to_string()))
            .with_note(format!("{} monomials", monos.len())),
    );
    Ok(VerificationReport::new(Suite::CobarD2, window_params(p, &window), claims))
}

/// Per tridegree: injectivity failure, cokernel-bound failure, chain-map
/// failure, number of cokernel words.
type MapCheck = (Option<Tridegree>, Option<String>, Option<Tridegree>, usize);

fn cobar_map(config: &SuiteConfig) -> Result<VerificationReport> {
    let p = config.prime()?;
    let window = config.window(4, 24, 24);
    let engine = CobarEngine::new(p, window.max_total.max(0))?;
    let tridegrees = window.tridegrees();
    let results: Vec<MapCheck> = tridegrees
        .par_iter()
        .map(|&t| {
            let real = engine.keys(Side::Real, t.f, t.deg);
            let c2 = engine.keys(Side::C2, t.f, t.deg);
            let map = engine.comparison_between(&real, &c2);
            let injective = (rank(&map) != real.len()).then_some(t);
            let words = engine.cokernel(t).unwrap_or_default();
            let bound = cokernel_bound(p, t.f, t.deg.n);
            let bad_word = (!words.is_empty() && Ratio::from_integer(t.deg.m) > bound)
                .then(|| format!("{} at {t}", words[0]));
            let real_up = engine.keys(Side::Real, t.f + 1, t.deg);
            let c2_up = engine.keys(Side::C2, t.f + 1, t.deg);
            let lhs = engine.differential_between(&c2, &c2_up).mul(&map);
            let rhs = engine.comparison_between(&real_up, &c2_up).mul(&engine.differential_between(&real, &real_up));
            let chain = match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => None,
                _ => Some(t),
            };
            (injective, bad_word, chain, words.len())
        })
        .collect();
    let cokernel_words: usize = results.iter().map(|r| r.3).sum();
    let claims = vec![
        Claim::check(
            "comparison-injective",
            results.iter().find_map(|r| r.0).map(|t| format!("rank deficit at {t}")),
        )
        .with_note(format!("{} tridegrees", tridegrees.len())),
        Claim::check("cokernel-bound", results.iter().find_map(|r| r.1.clone()))
            .with_note(format!("{cokernel_words} cokernel words")),
        Claim::check(
            "comparison-chain-map",
            results.iter().find_map(|r| r.2).map(|t| format!("d∘c ≠ c∘d at {t}")),
        ),
    ];
    Ok(VerificationReport::new(Suite::CobarMap, window_params(p, &window), claims))
}

fn ext_map(config: &SuiteConfig) -> Result<VerificationReport> {
    let p = config.prime()?;
    let window = config.window(4, 24, 24);
    let calc = config.calculator(p, &window)?;
    let params = window_params(p, &window);
    let chart = match calc.comparison_chart(&window) {
        Ok(c) => c,
        Err(e) => {
            let claims = vec![Claim::fail("comparison-chain-map", e.to_string())];
            return Ok(VerificationReport::new(Suite::ExtMap, params, claims));
        }
    };
    let mut iso_fail = None;
    let mut inj_fail = None;
    let (mut above, mut boundary) = (0usize, 0usize);
    let mut verdicts: BTreeMap<String, usize> = BTreeMap::new();
    for (t, c) in &chart.comparisons {
        *verdicts.entry(c.verdict.to_string()).or_default() += 1;
        let bound = odd_p_bound(p, t.deg.n);
        let stem = t.deg.m - i64::from(t.f);
        if stem > bound {
            above += 1;
            if !c.verdict.is_iso() && iso_fail.is_none() {
                iso_fail = Some(format!("{} at {t}", c.verdict));
            }
        } else if stem == bound {
            boundary += 1;
            if !c.verdict.is_injective() && inj_fail.is_none() {
                inj_fail = Some(format!("{} at {t}", c.verdict));
            }
        }
    }
    let counts: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    let claims = vec![
        Claim::pass("comparison-chain-map").with_note(counts.join(", ")),
        Claim::check("iso-above-bound", iso_fail).with_note(format!("{above} cells")),
        Claim::check("injective-on-bound", inj_fail).with_note(format!("{boundary} cells")),
    ];
    Ok(VerificationReport::new(Suite::ExtMap, params, claims))
}

fn uct(config: &SuiteConfig) -> Result<VerificationReport> {
    let p = config.prime()?;
    let window = config.window(4, 24, 24);
    let calc = config.calculator(p, &window)?;
    let oracle = UctOracle::new(p, window.max_total)?;
    let mut claims = Vec::new();
    for side in [Side::Real, Side::C2] {
        let chart = calc.chart(side, &window)?;
        let mismatches: Vec<String> = chart
            .cells
            .par_iter()
            .filter_map(|(t, cell)| {
                let expected = oracle.dimension(side, *t);
                match expected {
                    Ok(d) if d == cell.dimension => None,
                    Ok(d) => Some(format!("{t}: direct {} vs sum {d}", cell.dimension)),
                    Err(e) => Some(format!("{t}: {e}")),
                }
            })
            .collect();
        claims.push(
            Claim::check(format!("uct/{side}"), mismatches.first().cloned())
                .with_note(format!("{} cells, {} nonzero", chart.cells.len(), chart.nonzero_cells().count())),
        );
        // f = 0 line: θ^j at 2j − 2jα, j ≥ 0 on the Real side, any j on the C₂ side
        let line_weight = 20;
        let mut bad = None;
        let mut nonzero = BTreeSet::new();
        for (t, cell) in chart.cells.iter().filter(|(t, _)| t.f == 0 && t.deg.n.abs() <= line_weight) {
            let n = t.deg.n;
            let expected = usize::from(
                t.deg.total_degree() == 0 && n % 2 == 0 && (side == Side::C2 || n <= 0),
            );
            if cell.dimension > 0 {
                nonzero.insert(-n / 2);
            }
            if cell.dimension != expected && bad.is_none() {
                bad = Some(format!("{t}: dimension {} expected {expected}", cell.dimension));
            }
        }
        let js: Vec<i64> = nonzero.into_iter().collect();
        claims.push(
            Claim::check(format!("ext0-line/{side}"), bad)
                .with_note(format!("θ^j for j in {}", list_preview(&js, 25))),
        );
    }
    Ok(VerificationReport::new(Suite::Uct, window_params(p, &window), claims))
}

fn ranges(config: &SuiteConfig) -> Result<VerificationReport> {
    let primes = config.primes(&(3..=97).filter(|&p| is_prime(p)).collect::<Vec<u32>>())?;
    let n_max = 10_000;
    let grid = 100;
    let mut claims = Vec::new();
    for &p in &primes {
        let report = check_domination(p, 1, n_max);
        claims.push(Claim::check(
            format!("domination/p={p}"),
            report.exceptions.first().map(|e| format!("n = {}: cells {:?}", e.n, e.cells)),
        ));
        let zero = check_domination(p, 0, 0);
        let only_cell = zero.exceptions.len() == 1 && zero.exceptions[0].cells == vec![(-5, 0)];
        claims.push(Claim::check(
            format!("domination-n0/p={p}"),
            (!(only_cell && zero.covered_by_vanishing())).then(|| format!("{:?}", zero.exceptions)),
        ));
        let periodic = (-n_max..=n_max)
            .find(|&n| odd_p_bound(p, n + i64::from(p) - 1) != odd_p_bound(p, n) + i64::from(p));
        claims.push(Claim::check(
            format!("odd-p-bound-periodic/p={p}"),
            periodic.map(|n| format!("n = {n}")),
        ));
    }
    let rational = verify_rational_range(grid, grid);
    claims.push(
        Claim::check(
            "rational-plus-outside-region",
            rational.violations.first().map(|(i, j)| format!("({i}, {j}) lies in i ≥ 2j − 5")),
        )
        .with_note(format!("{} nonzero off-origin cells", rational.nonzero_cells)),
    );
    claims.push(Claim::check(
        "rational-plus-origin",
        (!rational.origin_agrees).then(|| "sides differ at (0, 0)".to_string()),
    ));
    let params = BTreeMap::from([
        ("primes".to_string(), json!(primes)),
        ("n_max".to_string(), json!(n_max)),
        ("grid".to_string(), json!(grid)),
    ]);
    Ok(VerificationReport::new(Suite::Ranges, params, claims))
}

fn split() -> VerificationReport {
    let mut claims: Vec<Claim> = verify_split_identities()
        .into_iter()
        .map(|c| {
            let claim = Claim::check(c.id, (!c.holds).then_some(c.difference));
            match c.note {
                Some(n) => claim.with_note(n),
                None => claim,
            }
        })
        .collect();
    type Case = (&'static str, Vec<Vec<i64>>, (usize, usize));
    let cases: [Case; 3] = [
        ("split-module/identity", vec![vec![1]], (0, 1)),
        ("split-module/negation", vec![vec![-1]], (1, 0)),
        ("split-module/swap", vec![vec![0, 1], vec![1, 0]], (1, 1)),
    ];
    for (id, eps, expected) in cases {
        let witness = match split_module(&eps) {
            Ok(s) if (s.plus_rank(), s.minus_rank()) == expected => None,
            Ok(s) => Some(format!("ranks ({}, {})", s.plus_rank(), s.minus_rank())),
            Err(e) => Some(e.to_string()),
        };
        claims.push(Claim::check(id, witness));
    }
    VerificationReport::new(Suite::Split, BTreeMap::new(), claims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { max_f: Some(2), max_total: Some(10), min_weight: Some(-6), max_weight: Some(6), ..Default::default() }
    }

    #[test]
    fn suites_pass_on_small_windows() {
        for suite in [Suite::CobarD2, Suite::CobarMap, Suite::ExtMap, Suite::Uct] {
            let r = run_suite(suite, &small()).unwrap();
            assert!(r.passed(), "{}", r.human_summary());
        }
        let r = run_suite(Suite::LemmaCoarse, &SuiteConfig { max_total: Some(60), ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.human_summary());
    }

    #[test]
    fn split_suite_flags_sign() {
        let r = run_suite(Suite::Split, &SuiteConfig::default()).unwrap();
        assert!(r.passed());
        assert!(r.claims.iter().any(|c| c.id == "e-plus-squared" && c.note.is_some()));
    }

    #[test]
    fn report_roundtrip() {
        let r = run_suite(Suite::Split, &SuiteConfig::default()).unwrap();
        assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_claims_carry_witnesses() {
        let c = Claim::check("x", Some("here".into()));
        assert_eq!(c.status, Status::Fail);
        let r = VerificationReport::new(Suite::Split, BTreeMap::new(), vec![c, Claim::pass("y")]);
        assert!(!r.passed());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
    }
}
