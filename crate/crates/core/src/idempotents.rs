//! The commutative ring ℤ[1/2][ρ, η]/(ρη² + 2η) and the ε-splitting.
//!
//! Elements are kept in normal form: no monomial ρ^a η^b with a ≥ 1 and
//! b ≥ 2 survives, since ρη² rewrites to −2η. Coefficients are dyadic
//! rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Dyadic = Ratio<i64>;

pub fn is_dyadic(x: &Dyadic) -> bool {
    x.denom().count_ones() == 1
}

/// ρ^a η^b
pub type MWMonomial = (u32, u32);

/// Normal form of a single monomial: (sign·2^k multiplier, monomial).
fn reduce_monomial((a, b): MWMonomial) -> (i64, MWMonomial) {
    let k = if b >= 2 { a.min(b - 1) } else { 0 };
    ((-2i64).pow(k), (a - k, b - k))
}

pub fn is_normal((a, b): MWMonomial) -> bool {
    a == 0 || b <= 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MWElement {
    terms: BTreeMap<MWMonomial, Dyadic>,
}

impl MWElement {
    pub fn zero() -> Self {
        MWElement::default()
    }

    pub fn constant(c: Dyadic) -> Self {
        MWElement::from_terms([((0, 0), c)])
    }

    pub fn integer(c: i64) -> Self {
        MWElement::constant(Dyadic::from_integer(c))
    }

    pub fn one() -> Self {
        MWElement::integer(1)
    }

    pub fn rho() -> Self {
        MWElement::from_terms([((1, 0), Dyadic::from_integer(1))])
    }

    pub fn eta() -> Self {
        MWElement::from_terms([((0, 1), Dyadic::from_integer(1))])
    }

    /// Sums the terms and reduces to normal form.
    ///
    /// Panics on a non-dyadic coefficient.
    pub fn from_terms(terms: impl IntoIterator<Item = (MWMonomial, Dyadic)>) -> Self {
        let mut out: BTreeMap<MWMonomial, Dyadic> = BTreeMap::new();
        for (mono, c) in terms {
            assert!(is_dyadic(&c), "coefficient {c} is not dyadic");
            let (k, nf) = reduce_monomial(mono);
            *out.entry(nf).or_default() += c * k;
        }
        out.retain(|_, c| *c != Dyadic::from_integer(0));
        MWElement { terms: out }
    }

    pub fn terms(&self) -> &BTreeMap<MWMonomial, Dyadic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|&m| is_normal(m)) && self.terms.values().all(is_dyadic)
    }

    pub fn scale(&self, c: Dyadic) -> Self {
        MWElement::from_terms(self.terms.iter().map(|(&m, &x)| (m, x * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MWElement::one(), |acc, _| mw_multiply(&acc, self))
    }
}

pub fn mw_multiply(a: &MWElement, b: &MWElement) -> MWElement {
    MWElement::from_terms(
        a.terms
            .iter()
            .flat_map(|(&(a1, b1), &x)| b.terms.iter().map(move |(&(a2, b2), &y)| ((a1 + a2, b1 + b2), x * y))),
    )
}

impl Add for &MWElement {
    type Output = MWElement;
    fn add(self, rhs: &MWElement) -> MWElement {
        MWElement::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(&m, &c)| (m, c)))
    }
}

impl Neg for &MWElement {
    type Output = MWElement;
    fn neg(self) -> MWElement {
        self.scale(Dyadic::from_integer(-1))
    }
}

impl Sub for &MWElement {
    type Output = MWElement;
    fn sub(self, rhs: &MWElement) -> MWElement {
        self + &(-rhs)
    }
}

impl Mul for &MWElement {
    type Output = MWElement;
    fn mul(self, rhs: &MWElement) -> MWElement {
        mw_multiply(self, rhs)
    }
}

impl fmt::Display for MWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            if a > 0 {
                write!(f, "·ρ^{a}")?;
            }
            if b > 0 {
                write!(f, "·η^{b}")?;
            }
        }
        Ok(())
    }
}

/// ε = −1 − ρη
pub fn epsilon() -> MWElement {
    &MWElement::integer(-1) - &(&MWElement::rho() * &MWElement::eta())
}

fn half() -> Dyadic {
    Dyadic::new(1, 2)
}

/// e₊ = (ε − 1)/2
pub fn e_plus() -> MWElement {
    (&epsilon() - &MWElement::one()).scale(half())
}

/// e₋ = (ε + 1)/2
pub fn e_minus() -> MWElement {
    (&epsilon() + &MWElement::one()).scale(half())
}

/// (1 − ε)/2
pub fn plus_idempotent() -> MWElement {
    (&MWElement::one() - &epsilon()).scale(half())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub id: String,
    /// Normal form of lhs − rhs.
    pub difference: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn check(id: &str, lhs: MWElement, rhs: MWElement, note: Option<&str>) -> IdentityCheck {
    let diff = &lhs - &rhs;
    IdentityCheck { id: id.to_string(), difference: diff.to_string(), holds: diff.is_zero(), note: note.map(String::from) }
}

/// The identities behind the ± splitting. Each entry is expected to hold;
/// the sign of e₊ is recorded by the `e-plus-squared` entry and its note.
pub fn verify_split_identities() -> Vec<IdentityCheck> {
    let (eps, ep, em) = (epsilon(), e_plus(), e_minus());
    let (rho, eta, one) = (MWElement::rho(), MWElement::eta(), MWElement::one());
    let rho_eta = &rho * &eta;
    let true_plus = plus_idempotent();
    vec![
        check("epsilon-squared", &eps * &eps, one.clone(), None),
        check("e-minus-idempotent", &em * &em, em.clone(), None),
        check("e-plus-e-minus-orthogonal", &ep * &em, MWElement::zero(), None),
        check("e-minus-formula", em.clone(), rho_eta.scale(Dyadic::new(-1, 2)), None),
        check("e-plus-eta", &ep * &eta, MWElement::zero(), None),
        check("epsilon-eta", &eps * &eta, eta.clone(), None),
        check("two-plus-rho-eta-eta", &(&MWElement::integer(2) + &rho_eta) * &eta, MWElement::zero(), None),
        check(
            "e-plus-squared",
            &ep * &ep,
            -&ep,
            Some("sign flag: (ε−1)/2 squares to its negative, so it is not idempotent; (1−ε)/2 is"),
        ),
        check("one-minus-epsilon-idempotent", &true_plus * &true_plus, true_plus.clone(), None),
        check("idempotents-sum-to-one", &true_plus + &em, one, None),
        check("one-minus-epsilon-eta", &true_plus * &eta, MWElement::zero(), None),
    ]
}

/// a + bε in ℤ[1/2][ε]/(ε² − 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsElement {
    pub a: Dyadic,
    pub b: Dyadic,
}

impl EpsElement {
    pub fn new(a: Dyadic, b: Dyadic) -> Self {
        EpsElement { a, b }
    }

    pub fn plus_idempotent() -> Self {
        EpsElement::new(half(), -half())
    }

    pub fn minus_idempotent() -> Self {
        EpsElement::new(half(), half())
    }
}

impl Mul for EpsElement {
    type Output = EpsElement;
    fn mul(self, r: EpsElement) -> EpsElement {
        EpsElement::new(self.a * r.a + self.b * r.b, self.a * r.b + self.b * r.a)
    }
}

impl Add for EpsElement {
    type Output = EpsElement;
    fn add(self, r: EpsElement) -> EpsElement {
        EpsElement::new(self.a + r.a, self.b + r.b)
    }
}

/// Eigen-decomposition of a free ℤ[1/2]-module with an ε action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitModule {
    pub rank: usize,
    /// Image of (1 − ε)/2, the ε = −1 part.
    pub plus_basis: Vec<Vec<Dyadic>>,
    /// Image of (1 + ε)/2, the ε = +1 part.
    pub minus_basis: Vec<Vec<Dyadic>>,
}

impl SplitModule {
    pub fn plus_rank(&self) -> usize {
        self.plus_basis.len()
    }

    pub fn minus_rank(&self) -> usize {
        self.minus_basis.len()
    }
}

/// Independent columns among `cols`, by exact elimination over ℚ.
fn independent_columns(cols: &[Vec<Dyadic>]) -> Vec<Vec<Dyadic>> {
    let mut echelon: Vec<(usize, Vec<Dyadic>)> = Vec::new();
    let mut chosen = Vec::new();
    for col in cols {
        let mut v = col.clone();
        for (pivot, row) in &echelon {
            let c = v[*pivot];
            if c != Dyadic::from_integer(0) {
                v.iter_mut().zip(row).for_each(|(x, y)| *x -= c * *y);
            }
        }
        if let Some(pivot) = v.iter().position(|x| *x != Dyadic::from_integer(0)) {
            let inv = v[pivot].recip();
            v.iter_mut().for_each(|x| *x *= inv);
            echelon.push((pivot, v));
            chosen.push(col.clone());
        }
    }
    chosen
}

/// `epsilon[i][j]` is the coefficient of generator i in ε·(generator j).
pub fn split_module(epsilon: &[Vec<i64>]) -> Result<SplitModule> {
    let n = epsilon.len();
    if epsilon.iter().any(|row| row.len() != n) {
        return Err(Error::Presentation("ε must act by a square matrix".into()));
    }
    let e = |i: usize, j: usize| Dyadic::from_integer(epsilon[i][j]);
    for i in 0..n {
        for j in 0..n {
            let sq: Dyadic = (0..n).map(|k| e(i, k) * e(k, j)).sum();
            if sq != Dyadic::from_integer(i64::from(i == j)) {
                return Err(Error::Presentation("ε² ≠ 1 on the presented module".into()));
            }
        }
    }
    let image = |sign: i64| -> Vec<Vec<Dyadic>> {
        let cols: Vec<Vec<Dyadic>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (Dyadic::from_integer(i64::from(i == j)) + e(i, j) * sign) * half())
                    .collect()
            })
            .collect();
        independent_columns(&cols)
    };
    let split = SplitModule { rank: n, plus_basis: image(-1), minus_basis: image(1) };
    debug_assert_eq!(split.plus_rank() + split.minus_rank(), n);
    Ok(split)
}
