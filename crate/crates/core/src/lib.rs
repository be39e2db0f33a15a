//! Exact engine for depth functions of monomial ideals.
//!
//! The crate is `no_std` (with `alloc`) and purely algorithmic: monomial
//! arithmetic, multigraded Betti numbers through upper-Koszul homology (with a
//! Taylor-complex oracle), analytic spread, and the combinatorial classifiers
//! for edge ideals, matroidal ideals, facet ideals of simplicial forests and
//! the recursive family of prime-product sums. Parsing, reports and the CLI
//! live in the `depthfn` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assess;
pub mod betti;
pub mod complex;
pub mod context;
pub mod error;
pub mod families;
pub mod forest;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod monomial;
pub mod spread;
pub mod verdict;

pub use betti::{BettiTable, DepthReport, Guards};
pub use complex::AbstractComplex;
pub use context::{FieldSpec, PolyContext};
pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::Monomial;
pub use spread::{Certificate, CertificateVerdict, ReesCmStatus, SpreadMethod, SpreadResult};
pub use verdict::Verdict;
