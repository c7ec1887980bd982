//! Brute-force reference computations for cross-checking the main crate.
//!
//! Nothing here is shared with `motivic-ext`. Monomials are plain generator
//! lists, coproducts are expanded factor by factor and re-sorted with explicit
//! transposition signs, differentials are dense, and the cobar sign comes from
//! passing a degree-one derivation across the desuspended tensor factors.
//! Everything is slow on purpose; use small windows only.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OracleSide {
    Classical,
    Real,
    C2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    InvalidPrime(u32),
    /// The request reaches past a configured cutoff.
    Cutoff(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::InvalidPrime(p) => write!(f, "{p} is not an odd prime"),
            OracleError::Cutoff(s) => write!(f, "cutoff too small: {s}"),
        }
    }
}

impl std::error::Error for OracleError {}

pub type OracleResult<T> = Result<T, OracleError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub p: u32,
    pub side: OracleSide,
    /// Largest total degree m + n the oracle will touch.
    pub max_total: i64,
    /// Largest |θ exponent| considered.
    pub max_theta: i64,
}

impl OracleConfig {
    pub fn new(p: u32, side: OracleSide, max_total: i64, max_theta: i64) -> OracleResult<Self> {
        if p < 3 || (2..p).any(|d| p.is_multiple_of(d)) {
            return Err(OracleError::InvalidPrime(p));
        }
        Ok(OracleConfig { p, side, max_total, max_theta })
    }
}

/// A polynomial generator other than θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Tau(u32),
    Xi(u32),
}

fn pow(p: u32, i: u32) -> i64 {
    (0..i).fold(1i64, |acc, _| acc * i64::from(p))
}

/// (m, n) of a generator.
pub fn gen_degree(p: u32, g: Gen) -> (i64, i64) {
    match g {
        Gen::Tau(i) => (pow(p, i), pow(p, i) - 1),
        Gen::Xi(i) => (pow(p, i) - 1, pow(p, i) - 1),
    }
}

fn gen_total(p: u32, g: Gen) -> i64 {
    let (m, n) = gen_degree(p, g);
    m + n
}

/// Plain-data monomial θ^theta · τ_{taus} · Π ξ_i^{xis[i−1]}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OMono {
    pub theta: i64,
    /// Strictly increasing.
    pub taus: Vec<u32>,
    /// Exponent of ξ_{i+1} at position i, no trailing zeros.
    pub xis: Vec<u32>,
}

impl OMono {
    fn unit() -> Self {
        OMono { theta: 0, taus: Vec::new(), xis: Vec::new() }
    }

    pub fn is_unit(&self) -> bool {
        self.theta == 0 && self.taus.is_empty() && self.xis.is_empty()
    }

    fn theta_free(&self) -> OMono {
        OMono { theta: 0, ..self.clone() }
    }

    pub fn degree(&self, p: u32) -> (i64, i64) {
        let mut d = (2 * self.theta, -2 * self.theta);
        for &i in &self.taus {
            let g = gen_degree(p, Gen::Tau(i));
            d = (d.0 + g.0, d.1 + g.1);
        }
        for (k, &e) in self.xis.iter().enumerate() {
            let g = gen_degree(p, Gen::Xi(k as u32 + 1));
            d = (d.0 + g.0 * i64::from(e), d.1 + g.1 * i64::from(e));
        }
        d
    }

    /// Factors in the order τ's ascending, then ξ's with multiplicity.
    fn factors(&self) -> Vec<Gen> {
        let mut out: Vec<Gen> = self.taus.iter().map(|&i| Gen::Tau(i)).collect();
        for (k, &e) in self.xis.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::Xi(k as u32 + 1), e as usize));
        }
        out
    }
}

/// Generators of total degree ≤ `total`, found by increasing the index until
/// the degree passes the bound.
fn generators_up_to(p: u32, total: i64) -> Vec<Gen> {
    let mut out = Vec::new();
    for i in 0.. {
        // |ξ_i| < |τ_i|, so ξ_i is the one that decides when to stop
        if i > 0 {
            if gen_total(p, Gen::Xi(i)) > total {
                break;
            }
            out.push(Gen::Xi(i));
        }
        if gen_total(p, Gen::Tau(i)) <= total {
            out.push(Gen::Tau(i));
        }
    }
    out
}

/// θ-free monomials of exactly the given total degree, by exhaustive search
/// over exponent vectors.
fn theta_free_of_total(p: u32, total: i64) -> Vec<OMono> {
    let gens = generators_up_to(p, total.max(0));
    let mut out = Vec::new();
    let mut exps = vec![0u32; gens.len()];
    fn search(p: u32, gens: &[Gen], k: usize, left: i64, exps: &mut Vec<u32>, out: &mut Vec<OMono>) {
        if k == gens.len() {
            if left == 0 {
                let mut m = OMono::unit();
                for (g, &e) in gens.iter().zip(exps.iter()) {
                    match *g {
                        Gen::Tau(i) if e == 1 => m.taus.push(i),
                        Gen::Xi(i) if e > 0 => {
                            let idx = i as usize - 1;
                            if m.xis.len() <= idx {
                                m.xis.resize(idx + 1, 0);
                            }
                            m.xis[idx] = e;
                        }
                        _ => {}
                    }
                }
                m.taus.sort_unstable();
                out.push(m);
            }
            return;
        }
        let d = gen_total(p, gens[k]);
        let cap = match gens[k] {
            Gen::Tau(_) => 1,
            Gen::Xi(_) => left / d,
        };
        for e in 0..=cap.min(left / d) {
            exps[k] = e as u32;
            search(p, gens, k + 1, left - e * d, exps, out);
        }
        exps[k] = 0;
    }
    if total >= 0 {
        search(p, &gens, 0, total, &mut exps, &mut out);
    }
    out
}

fn theta_allowed(side: OracleSide, j: i64) -> bool {
    match side {
        OracleSide::Classical => j == 0,
        OracleSide::Real => j >= 0,
        OracleSide::C2 => true,
    }
}

fn check_total(cfg: &OracleConfig, total: i64) -> OracleResult<()> {
    if total > cfg.max_total {
        return Err(OracleError::Cutoff(format!("total degree {total} > {}", cfg.max_total)));
    }
    Ok(())
}

/// θ exponent taking a θ-free piece of bidegree `have` to `want`, if any.
fn theta_shift(cfg: &OracleConfig, have: (i64, i64), want: (i64, i64)) -> OracleResult<Option<i64>> {
    let dm = want.0 - have.0;
    if dm % 2 != 0 || want.1 - have.1 != -dm {
        return Ok(None);
    }
    let j = dm / 2;
    if !theta_allowed(cfg.side, j) {
        return Ok(None);
    }
    if j.abs() > cfg.max_theta {
        return Err(OracleError::Cutoff(format!("θ exponent {j} exceeds {}", cfg.max_theta)));
    }
    Ok(Some(j))
}

/// All monomials of bidegree (m, n), sorted by the oracle's own order.
pub fn oracle_enumerate(cfg: &OracleConfig, deg: (i64, i64)) -> OracleResult<Vec<OMono>> {
    let total = deg.0 + deg.1;
    check_total(cfg, total)?;
    let mut out = Vec::new();
    for m in theta_free_of_total(cfg.p, total) {
        if let Some(j) = theta_shift(cfg, m.degree(cfg.p), deg)? {
            out.push(OMono { theta: j, ..m });
        }
    }
    out.sort();
    Ok(out)
}

/// A tensor term as unsorted factor lists; coefficient is an integer.
type RawTensor = (Vec<Gen>, Vec<Gen>, i64);

fn odd_count(gens: &[Gen]) -> usize {
    gens.iter().filter(|g| matches!(g, Gen::Tau(_))).count()
}

fn gen_coproduct(p: u32, g: Gen) -> Vec<RawTensor> {
    let xi_power = |i: u32, e: i64| -> Vec<Gen> {
        if i == 0 {
            Vec::new()
        } else {
            vec![Gen::Xi(i); e as usize]
        }
    };
    match g {
        Gen::Xi(n) => (0..=n)
            .map(|i| {
                let right = if i == 0 { Vec::new() } else { vec![Gen::Xi(i)] };
                (xi_power(n - i, pow(p, i)), right, 1)
            })
            .collect(),
        Gen::Tau(n) => {
            let mut out = vec![(vec![Gen::Tau(n)], Vec::new(), 1)];
            out.extend((0..=n).map(|i| (xi_power(n - i, pow(p, i)), vec![Gen::Tau(i)], 1)));
            out
        }
    }
}

/// Sorts a factor list into monomial order; `None` if a τ repeats.
fn normalize(gens: &[Gen]) -> Option<(i64, OMono)> {
    let mut v = gens.to_vec();
    let mut sign = 1i64;
    // bubble sort: only swapping two τ's changes the sign
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            let key = |g: &Gen| match *g {
                Gen::Tau(k) => (0, k),
                Gen::Xi(k) => (1, k),
            };
            if key(&v[j]) > key(&v[j + 1]) {
                if matches!(v[j], Gen::Tau(_)) && matches!(v[j + 1], Gen::Tau(_)) {
                    sign = -sign;
                }
                v.swap(j, j + 1);
            }
        }
    }
    let mut m = OMono::unit();
    for g in v {
        match g {
            Gen::Tau(i) => {
                if m.taus.last() == Some(&i) {
                    return None;
                }
                m.taus.push(i);
            }
            Gen::Xi(i) => {
                let idx = i as usize - 1;
                if m.xis.len() <= idx {
                    m.xis.resize(idx + 1, 0);
                }
                m.xis[idx] += 1;
            }
        }
    }
    Some((sign, m))
}

/// Full coproduct of a θ-free monomial, coefficients reduced mod p.
pub fn oracle_coproduct(p: u32, mono: &OMono) -> Vec<(OMono, OMono, u32)> {
    let mut terms: Vec<RawTensor> = vec![(Vec::new(), Vec::new(), 1)];
    for g in mono.theta_free().factors() {
        let mut next = Vec::new();
        for (a, b, c) in &terms {
            for (x, y, d) in gen_coproduct(p, g) {
                // (a ⊗ b)(x ⊗ y) = (−1)^{|b||x|} ax ⊗ by
                let s = if odd_count(b) % 2 == 1 && odd_count(&x) % 2 == 1 { -1 } else { 1 };
                let mut left = a.clone();
                left.extend(x);
                let mut right = b.clone();
                right.extend(y);
                next.push((left, right, s * c * d));
            }
        }
        terms = next;
    }
    let mut acc: BTreeMap<(OMono, OMono), i64> = BTreeMap::new();
    for (a, b, c) in terms {
        let (Some((sa, ma)), Some((sb, mb))) = (normalize(&a), normalize(&b)) else { continue };
        *acc.entry((ma, mb)).or_insert(0) += sa * sb * c;
    }
    acc.into_iter()
        .filter_map(|(k, c)| {
            let c = c.rem_euclid(i64::from(p)) as u32;
            (c != 0).then_some((k.0, k.1, c))
        })
        .collect()
}

/// A cobar word θ^theta [a_1 | … | a_f] with θ-free non-unit factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OWord {
    pub theta: i64,
    pub factors: Vec<OMono>,
}

/// Basis of C^f in bidegree (m, n), sorted by the oracle's own order.
pub fn oracle_basis(cfg: &OracleConfig, f: u32, deg: (i64, i64)) -> OracleResult<Vec<OWord>> {
    let total = deg.0 + deg.1;
    check_total(cfg, total)?;
    if total < 0 {
        return Ok(Vec::new());
    }
    let pieces: Vec<Vec<OMono>> = (0..=total).map(|t| theta_free_of_total(cfg.p, t)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<OMono> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn fill(
        cfg: &OracleConfig,
        pieces: &[Vec<OMono>],
        f: u32,
        left: i64,
        want: (i64, i64),
        stack: &mut Vec<OMono>,
        out: &mut Vec<OWord>,
    ) -> OracleResult<()> {
        if stack.len() == f as usize {
            if left != 0 {
                return Ok(());
            }
            let have = stack.iter().fold((0, 0), |d, m| {
                let e = m.degree(cfg.p);
                (d.0 + e.0, d.1 + e.1)
            });
            if let Some(j) = theta_shift(cfg, have, want)? {
                out.push(OWord { theta: j, factors: stack.clone() });
            }
            return Ok(());
        }
        for t in 1..=left {
            for m in &pieces[t as usize] {
                stack.push(m.clone());
                fill(cfg, pieces, f, left - t, want, stack, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
    fill(cfg, &pieces, f, total, deg, &mut stack, &mut out)?;
    out.sort();
    Ok(out)
}

/// Dense d: C^f → C^{f+1} at (m, n). `matrix[row][col]`, rows indexed by
/// the target basis.
pub struct DenseDifferential {
    pub source: Vec<OWord>,
    pub target: Vec<OWord>,
    pub matrix: Vec<Vec<u32>>,
}

/// For d of degree one on desuspended factors: crossing a factor a costs
/// (−1)^{|a| − 1}, and splitting a into a' ⊗ a'' costs (−1)^{|a'|}.
pub fn oracle_differential(cfg: &OracleConfig, f: u32, deg: (i64, i64)) -> OracleResult<DenseDifferential> {
    let source = oracle_basis(cfg, f, deg)?;
    let target = oracle_basis(cfg, f + 1, deg)?;
    let p = i64::from(cfg.p);
    let row_of: BTreeMap<&OWord, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = vec![vec![0i64; source.len()]; target.len()];
    for (col, word) in source.iter().enumerate() {
        let mut crossed = 0i64;
        for (i, a) in word.factors.iter().enumerate() {
            for (x, y, c) in oracle_coproduct(cfg.p, a) {
                if x.is_unit() || y.is_unit() {
                    continue;
                }
                let (xm, xn) = x.degree(cfg.p);
                let sign = if (crossed + xm + xn).rem_euclid(2) == 1 { -1 } else { 1 };
                let mut factors = word.factors[..i].to_vec();
                factors.push(x);
                factors.push(y);
                factors.extend_from_slice(&word.factors[i + 1..]);
                let key = OWord { theta: word.theta, factors };
                let row = row_of[&key];
                matrix[row][col] = (matrix[row][col] + sign * i64::from(c)).rem_euclid(p);
            }
            let (am, an) = a.degree(cfg.p);
            crossed += am + an - 1;
        }
    }
    let matrix = matrix.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect();
    Ok(DenseDifferential { source, target, matrix })
}

fn inverse(a: i64, p: i64) -> i64 {
    (1..p).find(|x| (a * x).rem_euclid(p) == 1).expect("nonzero residue")
}

/// Rank over F_p by dense row reduction.
pub fn dense_rank(p: u32, matrix: &[Vec<u32>]) -> usize {
    let p = i64::from(p);
    let mut m: Vec<Vec<i64>> = matrix.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inverse(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x - k * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn oracle_homology_dim(cfg: &OracleConfig, f: u32, deg: (i64, i64)) -> OracleResult<usize> {
    let out = oracle_differential(cfg, f, deg)?;
    let dim = out.source.len();
    let rank_out = dense_rank(cfg.p, &out.matrix);
    let rank_in = if f == 0 { 0 } else { dense_rank(cfg.p, &oracle_differential(cfg, f - 1, deg)?.matrix) };
    Ok(dim - rank_out - rank_in)
}
