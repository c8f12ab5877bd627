//! Numerical toolkit for information orders on probability distributions
//! and density operators: order relations, measurements, domain-theoretic
//! probes and entailment measures built on top of them.

pub mod density;
pub mod density_orders;
pub mod domain;
pub mod entail;
pub mod error;
pub mod measure;
pub mod orders;
pub mod sampling;
pub mod simplex;
pub mod suite;

pub use error::{Error, Result};
pub use orders::{ComparisonResult, OrderKind, OrderSpec, RioParams, RioPreset};
pub use simplex::{Distribution, MonotoneDistribution, Permutation};
