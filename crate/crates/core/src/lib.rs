//! Exact computations on the odd-primary Adams E₂-pages of the motivic sphere
//! over ℝ and of the C₂-equivariant sphere.
//!
//! The dual Steenrod algebras involved are base changes of the classical
//! mod-p dual Steenrod algebra along the coefficient rings F_p[θ] (motivic over
//! ℝ) and F_p[θ, θ⁻¹] (C₂-equivariant). Everything here is exact: monomial
//! enumeration, the normalized cobar complex, sparse linear algebra over F_p,
//! and rational bookkeeping of isomorphism ranges.
//!
//! Module map:
//!
//! - [`bigraded`]: the grading lattice m + nα and tridegrees (f, m, n).
//! - [`steenrod`]: monomials, products, the Milnor coproduct and realization.
//! - [`cobar`]: cobar bases, differentials, and the realization comparison.
//! - [`fplinalg`]: rank, kernels, homology and induced maps over F_p.
//! - [`ext`]: Ext cells, charts, the comparison verdicts and the UCT oracle.
//! - [`ranges`]: exact region arithmetic for the isomorphism ranges.
//! - [`idempotents`]: the ρ, η, ε identities behind the ± splitting.
//! - [`store`]: the on-disk cache and chart/report serialization.
//! - [`verify`]: verification suites producing [`verify::VerificationReport`]s.

pub mod bigraded;
pub mod cobar;
pub mod error;
pub mod ext;
pub mod fplinalg;
pub mod idempotents;
pub mod ranges;
pub mod steenrod;
pub mod store;
pub mod verify;

pub use bigraded::{Bidegree, Tridegree};
pub use error::{Error, Result};
pub use steenrod::{AlgebraParams, Monomial, Side};
