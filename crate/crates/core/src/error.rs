use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation (Gamma pole,
    /// non-integrable exponent, negative base, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The annihilation test of a Caputo derivative is numerically
    /// undecidable for a term.
    #[error("ambiguous Caputo branch: {0}")]
    AmbiguousBranch(String),

    /// The zeroth-order guess has monomials outside every basis category.
    #[error("cannot group monomial {0} into a basis function")]
    Grouping(String),

    /// No coefficient assignment satisfies the initial conditions.
    #[error("initial conditions are inconsistent with the ansatz: {0}")]
    InconsistentIc(String),

    /// The basis failed its Wronskian certificate at the tested point.
    #[error("basis for {unknown} is not certified independent: |W| = {value:e} at (x, t) = ({x}, {t})")]
    Dependent {
        unknown: String,
        value: f64,
        x: f64,
        t: f64,
    },

    /// Malformed problem file.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The problem declaration violates its invariants.
    #[error("invalid problem: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
