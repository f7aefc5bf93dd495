use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({requirement})")]
    Domain { function: &'static str, value: f64, requirement: &'static str },

    #[error("hypergeometric series has no terminating upper parameter")]
    UnsupportedSeries,

    #[error("hypergeometric lower parameter {parameter} hits a pole at term {term} before termination")]
    Pole { parameter: f64, term: usize },

    #[error("no uncertainty relation for beta = {beta} > conjugate(alpha) = {conjugate}")]
    NoUncertaintyRelation { beta: f64, conjugate: f64 },

    #[error("moment constraint of order {order} diverges for lambda = {lambda} <= {threshold}")]
    MomentDivergence { order: f64, lambda: f64, threshold: f64 },

    #[error("momentum moment of order {order} diverges (requires order < 2L+5 = {limit})")]
    DivergentMoment { order: f64, limit: f64 },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("quadrature did not converge: estimated error {error:e} after {subdivisions} subdivisions")]
    Quadrature { error: f64, subdivisions: usize },

    #[error("optimizer failed to bracket a maximum after {evaluations} evaluations")]
    Optimizer { evaluations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T: num_traits::ToPrimitive>(function: &'static str, value: T, requirement: &'static str) -> Error {
    Error::Domain { function, value: value.to_f64().unwrap_or(f64::NAN), requirement }
}

pub(crate) fn f64_of<T: num_traits::ToPrimitive>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
