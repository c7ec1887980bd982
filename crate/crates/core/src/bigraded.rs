//! The grading lattice m + nα (equivalently m + nσ) and Adams tridegrees.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A bidegree m + nα. On the equivariant side the same pair is read as m + nσ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub m: i64,
    pub n: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        Bidegree { m, n }
    }

    /// The classical (topological) degree m + n. Koszul signs use its parity.
    pub const fn total_degree(self) -> i64 {
        self.m + self.n
    }

    pub const fn weight(self) -> i64 {
        self.n
    }

    /// `self` scaled by an integer, e.g. the bidegree of θ^k.
    pub const fn scale(self, k: i64) -> Self {
        Bidegree { m: self.m * k, n: self.n * k }
    }
}

pub fn add(a: Bidegree, b: Bidegree) -> Bidegree {
    a + b
}

pub fn total_degree(a: Bidegree) -> i64 {
    a.total_degree()
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree { m: self.m + rhs.m, n: self.n + rhs.n }
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;

    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree { m: self.m - rhs.m, n: self.n - rhs.n }
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;

    fn neg(self) -> Bidegree {
        Bidegree { m: -self.m, n: -self.n }
    }
}

impl std::iter::Sum for Bidegree {
    fn sum<I: Iterator<Item = Bidegree>>(iter: I) -> Bidegree {
        iter.fold(Bidegree::ZERO, Add::add)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n < 0 {
            write!(f, "{}-{}α", self.m, -self.n)
        } else {
            write!(f, "{}+{}α", self.m, self.n)
        }
    }
}

/// Adams filtration `f` together with an internal bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tridegree {
    pub f: u32,
    pub deg: Bidegree,
}

impl Tridegree {
    pub const fn new(f: u32, m: i64, n: i64) -> Self {
        Tridegree { f, deg: Bidegree { m, n } }
    }

    /// The chart x-coordinate (m + n) − f.
    pub fn stem(self) -> i64 {
        self.deg.total_degree() - i64::from(self.f)
    }
}

impl fmt::Display for Tridegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.deg)
    }
}
