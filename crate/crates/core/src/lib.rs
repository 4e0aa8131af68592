//! Secrecy capacity of the scalar Gaussian wiretap channel under a peak
//! amplitude constraint, together with the capacity-achieving input
//! distribution.
//!
//! The optimal input is discrete, symmetric and always has a mass point at
//! the amplitude `A`. The solver alternates Blahut–Arimoto-style updates of
//! the probabilities with gradient ascent on the point locations, merges
//! points that drift too close together, and certifies each candidate with
//! ε-relaxed KKT conditions before accepting it.
//!
//! ```
//! use wiretap_core::{ChannelPair, SymmetricInput, secrecy_information};
//!
//! let ch = ChannelPair::from_variances(1.0, 10.0)?;
//! let input = SymmetricInput::antipodal(2.0)?;
//! let s = secrecy_information(&input, &ch)?;
//! assert!(s > 0.0 && s < 2f64.ln());
//! # Ok::<(), wiretap_core::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kkt;
pub mod model;
pub mod numerics;
pub mod optimizer;
pub mod solver;
pub mod support_update;

pub use error::{Error, Phase, Result};
pub use kkt::{validate, violating_set, xi_profile, KktReport};
pub use model::{
    gaussian_input_mi, input_variance, log_output_pdf, mutual_information, output_mixture,
    secrecy_information, xi, ChannelPair, OutputMixture, SecrecyEvaluator, SymmetricInput,
};
pub use numerics::{
    build_rule, integrate, log_gaussian_pdf, log_sum_exp, QuadratureRule, QuadratureSpec,
};
pub use optimizer::{ascend, ba_step, run_ba, secrecy_gradient, AscentParams};
pub use solver::{
    card_lower_bound, initial_input, solve, support_cap, sweep, SolveReport, SolverConfig,
};
pub use support_update::{cluster, update, UpdatePolicy};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/inputs.md")]
    mod inputs {}
    #[doc = include_str!("../../../book/src/information.md")]
    mod information {}
    #[doc = include_str!("../../../book/src/kkt.md")]
    mod kkt {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
