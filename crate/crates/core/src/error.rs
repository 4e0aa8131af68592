use std::fmt;

use thiserror::Error;

/// Which stage of the solver was running when a failure surfaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    BlahutArimoto,
    GradientAscent,
    GradientCheck,
    Cluster,
    Validation,
    Update,
    Report,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Phase::BlahutArimoto => "blahut-arimoto",
            Phase::GradientAscent => "gradient-ascent",
            Phase::GradientCheck => "gradient-check",
            Phase::Cluster => "cluster",
            Phase::Validation => "kkt-validation",
            Phase::Update => "support-update",
            Phase::Report => "report",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite integrand value {value} at node y = {node}")]
    NonFiniteIntegrand { node: f64, value: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid input distribution: {0}")]
    InvalidInput(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("analytic gradient disagrees with finite differences at half-point {index} (analytic {analytic:e}, numeric {numeric:e})")]
    GradientMismatch {
        index: usize,
        analytic: f64,
        numeric: f64,
    },

    #[error("outer pass {outer}, inner iteration {inner}, {phase}: {source}")]
    Solve {
        outer: usize,
        inner: usize,
        phase: Phase,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn in_phase(self, outer: usize, inner: usize, phase: Phase) -> Self {
        Error::Solve {
            outer,
            inner,
            phase,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
