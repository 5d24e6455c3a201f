//! Exact and asymptotic statistics of the partition norm.
//!
//! The norm of an integer partition is the product of its parts.  This crate
//! computes, for the uniform measure on partitions of `n`:
//!
//! * exact norm power sums `S_ℓ(n) = Σ_{λ⊢n} N(λ)^ℓ` and moments
//!   `S_ℓ(n)/p(n)`, via Euler-product series expansion over arbitrary
//!   -precision integers ([`series`], cached on disk by [`cache`]);
//! * the closed-form maximum norm `M_n` with an explicit witness partition
//!   ([`extremes`]);
//! * the constants governing the growth `S_ℓ(n) ~ c·3^{ℓn/3}` by residue
//!   class of `n` mod 3, evaluated to requested decimal accuracy from a
//!   root-of-unity filtered infinite product ([`constants`]);
//! * convergence and dispersion diagnostics comparing the exact and
//!   asymptotic routes ([`convergence`]);
//! * a brute-force enumeration oracle that grounds all of the above at small
//!   `n` ([`oracle`]).
//!
//! Exact values use [`num_bigint::BigInt`] / [`num_rational::BigRational`];
//! approximate values use the arbitrary-precision binary floats in [`hp`].

pub mod cache;
pub mod constants;
pub mod convergence;
pub mod error;
pub mod extremes;
pub mod hp;
pub mod oracle;
pub mod partition;
pub mod series;

pub use constants::{asymptotic_constant, ConstantEvaluator, ConstantRequest, ConstantValue};
pub use convergence::{DispersionStats, MomentRecord, PartitionCountSource};
pub use error::Error;
pub use extremes::MaxNormResult;
pub use partition::Partition;
pub use series::{CoefficientSeries, WeightSpec, WeightTag};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
