//! Core numerical library for relative-entropy ratio bounds of collinear
//! distributions on the probability simplex, and their application to
//! binary-input channels with noisy causal state information at the encoder.
//!
//! The crate is organized as follows:
//!
//! - [`simplex`]: probability vectors, KL divergence, and the collinear
//!   parameterization `z(t) = t·α + (1−t)·β` of three distributions on a
//!   segment.
//! - [`scalarfn`]: the scalar special functions `ζ_t(s)`, `ξ_s(t)`,
//!   `ρ(a,b,c)`, their monotone-branch inverses, and the universal threshold
//!   constants `T ≈ 0.325176` and `T(a)`.
//! - [`bounds`]: the tight sandwich `1/ρ(1−a,1−c,1−b) < r < ρ(a,b,c)` on the
//!   ratio of divergences, the equivalent interval characterizations in each
//!   of `a`, `b`, `c`, extremal families approaching the supremum, and the
//!   `F_g` functional with its root `q(g)`.
//! - [`channel`]: finite channels, the noise measure `γ`, the useless-channel
//!   decomposition, the `γ` product bound, Shannon-strategy induced channels,
//!   and the `D(κ)` functional.
//! - [`capacity`]: certified Blahut–Arimoto solvers for `C̲ = max I(X;Y|S)`
//!   and the Shannon-strategy capacity `C = max I(U;Y|S)`, with KKT
//!   certificates.
//! - [`sampling`]: seeded random distributions, channels, and systems for
//!   property testing.
//! - [`numeric`]: bracketed bisection and adaptive Simpson quadrature.
//!
//! All operations are pure functions on immutable values and are safe to call
//! concurrently. Sampling-based operations take an explicit RNG so that runs
//! are reproducible given a seed.

pub mod bounds;
pub mod capacity;
pub mod channel;
mod error;
pub mod numeric;
pub mod sampling;
pub mod scalarfn;
pub mod simplex;

pub use error::{Error, Result};
