//! Negations of finite discrete probability distributions.
//!
//! A negation maps a distribution `P = (p_1, ..., p_n)` to another distribution
//! `Q` on the same simplex such that larger probabilities become smaller ones.
//! Most negations are generated point-by-point by a *negator*, a scalar function
//! applied to each `p_i`.
//!
//! The crate ships five negator families:
//!
//! | Family | `N(p_i)` | depends on P? |
//! |--------|----------|---------------|
//! | Yager | `(1 - p) / (n - 1)` | no |
//! | Uniform | `1 / n` | no |
//! | Linear(α) | `α/n + (1 - α)(1 - p)/(n - 1)` | no |
//! | Tsallis(k) | `(1 - p_i^k) / (n - Σ p_j^k)` | yes |
//! | Involutive | `(MP - p_i) / (n·MP - 1)`, `MP = max(P) + min(P)` | yes |
//!
//! On top of single-step negation the crate provides iterated negation
//! ([`dynamics`]), closed forms for powers of linear negators, convergence and
//! oscillation detection, and the contracting / expanding / involutive
//! classification of negators ([`analysis`]).
//!
//! ```
//! use pdneg::{make_dist, negate, NegatorSpec, Tolerance};
//!
//! let p = make_dist(&[0.1, 0.2, 0.15, 0.3, 0.25], &Tolerance::default()).unwrap();
//! let q = negate(&NegatorSpec::Involutive, &p).unwrap();
//! let back = negate(&NegatorSpec::Involutive, &q).unwrap();
//! assert!(back.approx_eq(&p, 1e-12));
//! ```

pub mod analysis;
pub mod batch;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod negators;
pub mod simplex;

pub use analysis::{
    check_involution, classify, classify_point, fixed_point, negation_axioms_check, random_dist,
    ClassificationReport, PointVerdict, Verdict,
};
pub use batch::Exec;
pub use dynamics::{
    contraction_factor, converge, iterate, linear_power_point, yager_power_point,
    ContractionFactor, ConvergenceOutcome, OrbitTrace,
};
pub use error::{Error, Result};
pub use negators::{
    involutive_point, linear_params, linear_point, negate, yager_point, LinearParams, NegatorSpec,
};
pub use simplex::{
    entropy, linf_to_uniform, make_dist, point_dist, stats, uniform_dist, Dist, DistStats,
    Tolerance,
};
