//! Monomial model of the odd-primary dual Steenrod algebras.
//!
//! A_{F_p} is free graded commutative on τ_0, τ_1, … (exterior) and ξ_1, ξ_2, …
//! (polynomial). The motivic algebra over ℝ and the C₂-equivariant algebra are
//! its base changes along F_p[θ] and F_p[θ, θ⁻¹]; θ is central with trivial
//! coaction, so all coalgebra structure lives on the θ-free part.
//!
//! Bidegrees: |τ_i| = p^i + (p^i − 1)α, |ξ_i| = (p^i − 1) + (p^i − 1)α and
//! |θ| = 2 − 2α. The classical algebra keeps the same pairs as (degree, weight)
//! bookkeeping.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigraded::Bidegree;
use crate::error::{Error, Result};

/// Bidegree of θ.
pub const THETA_DEGREE: Bidegree = Bidegree::new(2, -2);

/// Highest τ index a [`Monomial`] can carry.
pub const MAX_TAU_INDEX: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Classical,
    Real,
    C2,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Classical => "classical",
            Side::Real => "real",
            Side::C2 => "c2",
        }
    }

    /// Whether θ^k is an element of the coefficient ring on this side.
    pub fn allows_theta(self, k: i64) -> bool {
        match self {
            Side::Classical => k == 0,
            Side::Real => k >= 0,
            Side::C2 => true,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classical" => Ok(Side::Classical),
            "real" => Ok(Side::Real),
            "c2" => Ok(Side::C2),
            other => Err(format!("unknown side `{other}` (expected classical, real or c2)")),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraParams {
    p: u32,
    side: Side,
}

impl AlgebraParams {
    pub fn new(p: u32, side: Side) -> Result<Self> {
        if !(3..1 << 16).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(AlgebraParams { p, side })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn with_side(&self, side: Side) -> Self {
        AlgebraParams { p: self.p, side }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Theta,
    Tau(u32),
    Xi(u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Theta => f.write_str("θ"),
            Generator::Tau(i) => write!(f, "τ{i}"),
            Generator::Xi(i) => write!(f, "ξ{i}"),
        }
    }
}

fn checked_pow(p: u32, i: u32) -> Option<i64> {
    i64::from(p).checked_pow(i).filter(|v| *v <= i64::MAX / 4)
}

pub fn generator_bidegree(params: &AlgebraParams, gen: Generator) -> Result<Bidegree> {
    let p = params.p;
    match gen {
        Generator::Theta if params.side == Side::Classical => {
            Err(Error::InvalidGenerator("θ does not exist in the classical algebra".into()))
        }
        Generator::Theta => Ok(THETA_DEGREE),
        Generator::Tau(i) => {
            let q = checked_pow(p, i)
                .filter(|_| i <= MAX_TAU_INDEX)
                .ok_or_else(|| Error::InvalidGenerator(format!("{gen} is out of range")))?;
            Ok(Bidegree::new(q, q - 1))
        }
        Generator::Xi(0) => Err(Error::InvalidGenerator("ξ indices start at 1".into())),
        Generator::Xi(i) => {
            let q = checked_pow(p, i)
                .ok_or_else(|| Error::InvalidGenerator(format!("{gen} is out of range")))?;
            Ok(Bidegree::new(q - 1, q - 1))
        }
    }
}

/// Total degree of τ_i: 2p^i − 1.
fn tau_total(p: u32, i: u32) -> i64 {
    2 * i64::from(p).pow(i) - 1
}

/// Total degree of ξ_i: 2p^i − 2.
fn xi_total(p: u32, i: u32) -> i64 {
    2 * i64::from(p).pow(i) - 2
}

/// A basis monomial θ^k τ^ε ξ^n.
///
/// `tau` is the set of τ indices as a bitmask; `xi[i - 1]` is the exponent of
/// ξ_i with trailing zeros trimmed. The written order of factors is θ, then the
/// τ's by increasing index, then the ξ's; signs of products are taken relative
/// to that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    theta: i64,
    tau: u64,
    xi: Vec<u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn theta(k: i64) -> Self {
        Monomial { theta: k, ..Monomial::default() }
    }

    pub fn tau(i: u32) -> Self {
        assert!(i <= MAX_TAU_INDEX, "τ index {i} out of range");
        Monomial { tau: 1 << i, ..Monomial::default() }
    }

    pub fn xi(i: u32) -> Self {
        Monomial::xi_pow(i, 1)
    }

    pub fn xi_pow(i: u32, e: u32) -> Self {
        assert!(i >= 1, "ξ indices start at 1");
        let mut xi = vec![0; i as usize];
        xi[i as usize - 1] = e;
        Monomial::new(0, &[], &xi)
    }

    /// Builds a monomial from its exponents. Repeated τ indices are collapsed
    /// into the set; use [`mul_monomials`] when τ² = 0 should apply.
    pub fn new(theta: i64, tau: &[u32], xi: &[u32]) -> Self {
        let mut mask = 0u64;
        for &i in tau {
            assert!(i <= MAX_TAU_INDEX, "τ index {i} out of range");
            mask |= 1 << i;
        }
        let mut xi = xi.to_vec();
        while xi.last() == Some(&0) {
            xi.pop();
        }
        Monomial { theta, tau: mask, xi }
    }

    pub fn theta_exp(&self) -> i64 {
        self.theta
    }

    pub fn tau_mask(&self) -> u64 {
        self.tau
    }

    /// τ indices in decreasing order.
    pub fn tau_flags(&self) -> Vec<u32> {
        (0..64).rev().filter(|i| self.tau & (1 << i) != 0).collect()
    }

    pub fn xi_exps(&self) -> &[u32] {
        &self.xi
    }

    pub fn is_unit(&self) -> bool {
        self.theta == 0 && self.tau == 0 && self.xi.is_empty()
    }

    pub fn is_theta_free(&self) -> bool {
        self.theta == 0
    }

    pub fn with_theta(&self, theta: i64) -> Monomial {
        Monomial { theta, ..self.clone() }
    }

    pub fn without_theta(&self) -> Monomial {
        self.with_theta(0)
    }

    /// Parity of the total degree: the number of τ factors mod 2.
    pub fn is_odd(&self) -> bool {
        self.tau.count_ones() % 2 == 1
    }

    pub fn total_degree(&self, p: u32) -> i64 {
        let taus: i64 = (0..64).filter(|i| self.tau & (1 << i) != 0).map(|i| tau_total(p, i)).sum();
        let xis: i64 =
            self.xi.iter().enumerate().map(|(i, &e)| i64::from(e) * xi_total(p, i as u32 + 1)).sum();
        taus + xis
    }

    pub fn is_valid_for(&self, side: Side) -> bool {
        side.allows_theta(self.theta)
    }
}

fn cmp_tau_desc(a: u64, b: u64) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {
                let ha = 63 - a.leading_zeros();
                let hb = 63 - b.leading_zeros();
                if ha != hb {
                    return ha.cmp(&hb);
                }
                a &= !(1 << ha);
                b &= !(1 << hb);
            }
        }
    }
}

/// Canonical order: lexicographic on (θ exponent, τ indices listed in
/// decreasing order, ξ exponents).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.theta
            .cmp(&other.theta)
            .then_with(|| cmp_tau_desc(self.tau, other.tau))
            .then_with(|| self.xi.cmp(&other.xi))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut out = String::new();
        if self.theta == 1 {
            out.push('θ');
        } else if self.theta != 0 {
            out.push('θ');
            out.push_str(&superscript(self.theta));
        }
        for i in (0..64).filter(|i| self.tau & (1 << i) != 0) {
            out.push_str(&format!("τ{i}"));
        }
        for (i, &e) in self.xi.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push_str(&format!("ξ{}", i + 1)),
                _ => out.push_str(&format!("ξ{}{}", i + 1, superscript(i64::from(e)))),
            }
        }
        f.write_str(&out)
    }
}

pub fn monomial_bidegree(params: &AlgebraParams, mono: &Monomial) -> Bidegree {
    let p = params.p;
    let mut deg = THETA_DEGREE.scale(mono.theta);
    for i in (0..64).filter(|i| mono.tau & (1 << i) != 0) {
        let q = i64::from(p).pow(i);
        deg = deg + Bidegree::new(q, q - 1);
    }
    for (i, &e) in mono.xi.iter().enumerate() {
        let q = i64::from(p).pow(i as u32 + 1);
        deg = deg + Bidegree::new(q - 1, q - 1).scale(i64::from(e));
    }
    deg
}

/// Product of two monomials in the graded-commutative algebra with τ_i² = 0.
/// Returns `None` when a τ repeats, otherwise the sign (±1) and the product.
pub fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    if a.tau & b.tau != 0 {
        return None;
    }
    // Moving each τ_j of b left past the τ_i of a with i > j.
    let mut inversions = 0u32;
    let mut rest = b.tau;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a.tau >> j).count_ones();
    }
    let len = a.xi.len().max(b.xi.len());
    let mut xi = vec![0u32; len];
    for (i, e) in a.xi.iter().enumerate() {
        xi[i] += e;
    }
    for (i, e) in b.xi.iter().enumerate() {
        xi[i] += e;
    }
    let mono = Monomial { theta: a.theta + b.theta, tau: a.tau | b.tau, xi };
    Some((inversions % 2 == 1, mono))
}

/// Reduction into [0, p).
pub(crate) fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(i64::from(p)) as u32
}

/// A homogeneous F_p-linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    p: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl AlgebraElement {
    pub fn zero(p: u32) -> Self {
        AlgebraElement { p, terms: BTreeMap::new() }
    }

    pub fn from_monomial(p: u32, mono: Monomial) -> Self {
        Self::from_terms(p, [(mono, 1)]).expect("a single monomial is homogeneous")
    }

    /// Fails if the support is not concentrated in one bidegree.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        let params = AlgebraParams::new(p, Side::C2)?;
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (mono, c) in terms {
            let entry = acc.entry(mono).or_insert(0);
            *entry = (*entry + residue(c, p)) % p;
        }
        acc.retain(|_, c| *c != 0);
        let mut degrees = acc.keys().map(|m| monomial_bidegree(&params, m));
        if let Some(first) = degrees.next() {
            if degrees.any(|d| d != first) {
                return Err(Error::InvalidMonomial {
                    mono: "inhomogeneous element".into(),
                    side: "any".into(),
                });
            }
        }
        Ok(AlgebraElement { p, terms: acc })
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> u32 {
        self.terms.get(mono).copied().unwrap_or(0)
    }
}

pub fn multiply(params: &AlgebraParams, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let p = params.p;
    let mut out: BTreeMap<Monomial, u32> = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((neg, mono)) = mul_monomials(ma, mb) {
                let mut c = (u64::from(*ca) * u64::from(*cb) % u64::from(p)) as u32;
                if neg {
                    c = (p - c) % p;
                }
                let entry = out.entry(mono).or_insert(0);
                *entry = (*entry + c) % p;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    AlgebraElement { p, terms: out }
}

/// A tensor a ⊗ b with coefficient.
pub type TensorTerm = (Monomial, Monomial, u32);

type TensorPoly = HashMap<(Monomial, Monomial), u32>;

fn tensor_mul(p: u32, x: &TensorPoly, y: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::new();
    for ((a, b), cx) in x {
        for ((c, d), cy) in y {
            let Some((s1, ac)) = mul_monomials(a, c) else { continue };
            let Some((s2, bd)) = mul_monomials(b, d) else { continue };
            // (a ⊗ b)(c ⊗ d) = (−1)^{|b||c|} ac ⊗ bd
            let koszul = b.is_odd() && c.is_odd();
            let neg = s1 ^ s2 ^ koszul;
            let mut coeff = (u64::from(*cx) * u64::from(*cy) % u64::from(p)) as u32;
            if neg {
                coeff = (p - coeff) % p;
            }
            let entry = out.entry((ac, bd)).or_insert(0);
            *entry = (*entry + coeff) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn generator_coproduct(p: u32, gen: Generator) -> TensorPoly {
    let mut out = TensorPoly::new();
    match gen {
        Generator::Theta => unreachable!("θ is handled as a scalar"),
        Generator::Xi(n) => {
            // ψ(ξ_n) = Σ_{i=0}^{n} ξ_{n−i}^{p^i} ⊗ ξ_i, with ξ_0 = 1
            for i in 0..=n {
                let left = if i == n { Monomial::unit() } else { Monomial::xi_pow(n - i, p.pow(i)) };
                let right = if i == 0 { Monomial::unit() } else { Monomial::xi(i) };
                out.insert((left, right), 1);
            }
        }
        Generator::Tau(n) => {
            // ψ(τ_n) = τ_n ⊗ 1 + Σ_{i=0}^{n} ξ_{n−i}^{p^i} ⊗ τ_i
            out.insert((Monomial::tau(n), Monomial::unit()), 1);
            for i in 0..=n {
                let left = if i == n { Monomial::unit() } else { Monomial::xi_pow(n - i, p.pow(i)) };
                out.insert((left, Monomial::tau(i)), 1);
            }
        }
    }
    out
}

fn classical_coproduct(p: u32, mono: &Monomial) -> TensorPoly {
    let mut acc = TensorPoly::new();
    acc.insert((Monomial::unit(), Monomial::unit()), 1);
    for i in (0..64).filter(|i| mono.tau & (1 << i) != 0) {
        acc = tensor_mul(p, &acc, &generator_coproduct(p, Generator::Tau(i)));
    }
    for (i, &e) in mono.xi.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let gen = generator_coproduct(p, Generator::Xi(i as u32 + 1));
        for _ in 0..e {
            acc = tensor_mul(p, &acc, &gen);
        }
    }
    acc
}

fn sorted_terms(poly: TensorPoly) -> Vec<TensorTerm> {
    let mut terms: Vec<TensorTerm> = poly.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    terms.sort();
    terms
}

/// The Milnor coproduct extended multiplicatively, θ-linearly, with the
/// θ-power carried by the left factor. Terms are sorted by (left, right).
pub fn coproduct(params: &AlgebraParams, mono: &Monomial) -> Vec<TensorTerm> {
    let theta = mono.theta;
    let mut terms = sorted_terms(classical_coproduct(params.p, &mono.without_theta()));
    if theta != 0 {
        for (left, _, _) in terms.iter_mut() {
            left.theta = theta;
        }
    }
    terms
}

/// ψ(m) − m ⊗ 1 − 1 ⊗ m for a θ-free non-unit monomial.
pub fn reduced_coproduct(p: u32, mono: &Monomial) -> Vec<TensorTerm> {
    debug_assert!(mono.is_theta_free() && !mono.is_unit());
    let mut poly = classical_coproduct(p, mono);
    poly.retain(|(a, b), _| !a.is_unit() && !b.is_unit());
    sorted_terms(poly)
}

/// Betti realization on a motivic monomial: θ, τ_i and ξ_i are fixed.
pub fn realize(mono: &Monomial) -> Result<Monomial> {
    if !mono.is_valid_for(Side::Real) {
        return Err(Error::InvalidMonomial { mono: mono.to_string(), side: Side::Real.to_string() });
    }
    Ok(mono.clone())
}

/// All θ-free non-unit-or-unit monomials of the given total degree, unsorted.
fn classical_of_total(p: u32, total: i64) -> Vec<Monomial> {
    if total < 0 {
        return Vec::new();
    }
    // generators in increasing total degree: τ_0, ξ_1, τ_1, ξ_2, τ_2, …
    let mut gens: Vec<(Generator, i64)> = vec![(Generator::Tau(0), 1)];
    let mut i = 1u32;
    while let Some(q) = checked_pow(p, i) {
        let xi = 2 * q - 2;
        if xi > total {
            break;
        }
        gens.push((Generator::Xi(i), xi));
        if 2 * q - 1 <= total {
            gens.push((Generator::Tau(i), 2 * q - 1));
        }
        i += 1;
    }
    let mut out = Vec::new();
    let mut current = Monomial::unit();
    fn rec(gens: &[(Generator, i64)], remaining: i64, current: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((&(gen, deg), rest)) = gens.split_last() else {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        };
        match gen {
            Generator::Tau(i) => {
                rec(rest, remaining, current, out);
                if deg <= remaining {
                    current.tau |= 1 << i;
                    rec(rest, remaining - deg, current, out);
                    current.tau &= !(1 << i);
                }
            }
            Generator::Xi(i) => {
                let idx = i as usize - 1;
                if current.xi.len() <= idx {
                    current.xi.resize(idx + 1, 0);
                }
                let max = remaining / deg;
                for e in 0..=max {
                    current.xi[idx] = e as u32;
                    rec(rest, remaining - e * deg, current, out);
                }
                current.xi[idx] = 0;
            }
            Generator::Theta => unreachable!(),
        }
    }
    rec(&gens, total, &mut current, &mut out);
    for m in out.iter_mut() {
        while m.xi.last() == Some(&0) {
            m.xi.pop();
        }
    }
    out
}

/// θ-free monomials of total degree exactly `total`, in canonical order.
pub fn classical_monomials_of_total(p: u32, total: i64) -> Vec<Monomial> {
    let mut out = classical_of_total(p, total);
    out.sort();
    out
}

/// Every monomial of the given bidegree, in canonical order.
pub fn enumerate_monomials(params: &AlgebraParams, deg: Bidegree) -> Vec<Monomial> {
    let total = deg.total_degree();
    let classical = AlgebraParams { p: params.p, side: Side::Classical };
    let mut out: Vec<Monomial> = classical_of_total(params.p, total)
        .into_iter()
        .filter_map(|m| {
            let d = monomial_bidegree(&classical, &m);
            // θ^j m has bidegree d + j(2, −2)
            let diff = deg.m - d.m;
            if diff % 2 != 0 {
                return None;
            }
            let j = diff / 2;
            params.side.allows_theta(j).then(|| m.with_theta(j))
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real3() -> AlgebraParams {
        AlgebraParams::new(3, Side::Real).unwrap()
    }

    fn c2_3() -> AlgebraParams {
        AlgebraParams::new(3, Side::C2).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        for p in [0, 1, 2, 4, 9, 65537, 1 << 16] {
            assert!(AlgebraParams::new(p, Side::Real).is_err(), "{p}");
        }
        assert!(AlgebraParams::new(65521, Side::Real).is_ok());
    }

    #[test]
    fn generator_bidegrees() {
        assert_eq!(generator_bidegree(&real3(), Generator::Tau(1)).unwrap(), Bidegree::new(3, 2));
        let p5 = AlgebraParams::new(5, Side::Real).unwrap();
        assert_eq!(generator_bidegree(&p5, Generator::Xi(1)).unwrap(), Bidegree::new(4, 4));
        assert_eq!(generator_bidegree(&real3(), Generator::Theta).unwrap(), Bidegree::new(2, -2));
        assert_eq!(generator_bidegree(&real3(), Generator::Tau(0)).unwrap(), Bidegree::new(1, 0));
    }

    #[test]
    fn generator_errors() {
        let classical = AlgebraParams::new(3, Side::Classical).unwrap();
        assert!(generator_bidegree(&classical, Generator::Theta).is_err());
        assert!(generator_bidegree(&real3(), Generator::Xi(0)).is_err());
        assert!(generator_bidegree(&real3(), Generator::Tau(200)).is_err());
    }

    #[test]
    fn monomial_bidegrees() {
        let t0x1 = Monomial::new(0, &[0], &[1]);
        assert_eq!(monomial_bidegree(&real3(), &t0x1), Bidegree::new(3, 2));
        let m = Monomial::new(-1, &[0], &[]);
        assert_eq!(monomial_bidegree(&c2_3(), &m), Bidegree::new(-1, 2));
        assert_eq!(monomial_bidegree(&real3(), &Monomial::unit()), Bidegree::ZERO);
    }

    #[test]
    fn total_degree_matches_bidegree() {
        for m in classical_monomials_of_total(3, 40) {
            assert_eq!(m.total_degree(3), 40);
            assert_eq!(monomial_bidegree(&real3(), &m).total_degree(), 40);
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_monomials(&real3(), Bidegree::ZERO), vec![Monomial::unit()]);
        let got = enumerate_monomials(&real3(), Bidegree::new(3, 2));
        // canonical order puts τ₀ξ₁ (τ list [0]) before τ₁ (τ list [1])
        assert_eq!(got, vec![Monomial::new(0, &[0], &[1]), Monomial::tau(1)]);
        assert_eq!(enumerate_monomials(&c2_3(), Bidegree::new(-2, 2)), vec![Monomial::theta(-1)]);
        assert!(enumerate_monomials(&real3(), Bidegree::new(-2, 2)).is_empty());
    }

    #[test]
    fn canonical_order() {
        let a = Monomial::new(0, &[1, 0], &[]);
        let b = Monomial::new(0, &[1], &[3]);
        let c = Monomial::new(0, &[2], &[]);
        let d = Monomial::new(-1, &[5], &[9]);
        let mut v = vec![c.clone(), a.clone(), b.clone(), d.clone()];
        v.sort();
        assert_eq!(a.tau_flags(), vec![1, 0]);
        assert_eq!(v, vec![d, b, a, c]);
    }

    #[test]
    fn products() {
        let p = 3;
        let params = real3();
        let t0 = AlgebraElement::from_monomial(p, Monomial::tau(0));
        let x1 = AlgebraElement::from_monomial(p, Monomial::xi(1));
        assert!(multiply(&params, &t0, &t0).is_zero());
        let t0x1 = Monomial::new(0, &[0], &[1]);
        assert_eq!(multiply(&params, &t0, &x1).coefficient(&t0x1), 1);
        assert_eq!(multiply(&params, &x1, &t0).coefficient(&t0x1), 1);
        let th = AlgebraElement::from_monomial(p, Monomial::theta(1));
        let thi = AlgebraElement::from_monomial(p, Monomial::theta(-1));
        assert_eq!(multiply(&c2_3(), &th, &thi), AlgebraElement::from_monomial(p, Monomial::unit()));
        // τ₁τ₀ = −τ₀τ₁
        let t1 = AlgebraElement::from_monomial(p, Monomial::tau(1));
        let prod = multiply(&params, &t1, &t0);
        assert_eq!(prod.coefficient(&Monomial::new(0, &[0, 1], &[])), 2);
    }

    #[test]
    fn inhomogeneous_elements_rejected() {
        let r = AlgebraElement::from_terms(3, [(Monomial::tau(0), 1), (Monomial::xi(1), 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn coproduct_examples() {
        let params = real3();
        let u = Monomial::unit;
        assert_eq!(
            coproduct(&params, &Monomial::tau(0)),
            vec![(u(), Monomial::tau(0), 1), (Monomial::tau(0), u(), 1)]
        );
        assert_eq!(
            coproduct(&params, &Monomial::xi(1)),
            vec![(u(), Monomial::xi(1), 1), (Monomial::xi(1), u(), 1)]
        );
        let mut expected = vec![
            (Monomial::tau(1), u(), 1),
            (Monomial::xi(1), Monomial::tau(0), 1),
            (u(), Monomial::tau(1), 1),
        ];
        expected.sort();
        assert_eq!(coproduct(&params, &Monomial::tau(1)), expected);
        assert_eq!(reduced_coproduct(3, &Monomial::tau(1)), vec![(Monomial::xi(1), Monomial::tau(0), 1)]);
    }

    #[test]
    fn coproduct_preserves_bidegree_and_carries_theta_left() {
        let params = c2_3();
        let m = Monomial::new(-2, &[0, 1], &[2]);
        let deg = monomial_bidegree(&params, &m);
        for (l, r, c) in coproduct(&params, &m) {
            assert!(c != 0);
            assert_eq!(r.theta_exp(), 0);
            assert_eq!(l.theta_exp(), -2);
            assert_eq!(monomial_bidegree(&params, &l) + monomial_bidegree(&params, &r), deg);
        }
    }

    #[test]
    fn xi_power_coproduct_has_binomial_coefficients() {
        // ψ(ξ₁²) = ξ₁²⊗1 + 2ξ₁⊗ξ₁ + 1⊗ξ₁² at p = 3
        let terms = coproduct(&real3(), &Monomial::xi_pow(1, 2));
        assert!(terms.contains(&(Monomial::xi(1), Monomial::xi(1), 2)));
        // ψ(ξ₁³) = ξ₁³⊗1 + 1⊗ξ₁³ (Frobenius)
        assert_eq!(reduced_coproduct(3, &Monomial::xi_pow(1, 3)), vec![]);
    }

    #[test]
    fn realization() {
        assert_eq!(realize(&Monomial::tau(0)).unwrap(), Monomial::tau(0));
        let m = Monomial::new(2, &[], &[1]);
        assert_eq!(realize(&m).unwrap(), m);
        assert_eq!(realize(&Monomial::unit()).unwrap(), Monomial::unit());
        assert!(realize(&Monomial::theta(-1)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(-1, &[0, 2], &[0, 3]).to_string(), "θ⁻¹τ0τ2ξ2³");
        assert_eq!(Monomial::unit().to_string(), "1");
    }
}
