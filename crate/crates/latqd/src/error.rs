//! Error type shared by every module in the crate.

use std::fmt;

/// Everything that can go wrong when building rules or running engines.
///
/// Validation failures (`ModulusTooSmall`, `EmptyGenerator`, …) mean the
/// caller handed us bad input. `BudgetExceeded` means the request was valid
/// but too large for the chosen engine. `ResidualTooLarge` means a float
/// engine produced coefficients too far from integers to round safely, and
/// `InvariantViolation` means rounding *succeeded* but the result is
/// structurally impossible — that one always indicates a bug, never noise.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The modulus must be at least 2.
    ModulusTooSmall { n: i64 },
    /// The generating vector must have at least one component.
    EmptyGenerator,
    /// A generator component lies outside `{1, …, N-1}`.
    GeneratorOutOfRange {
        index: usize,
        value: i64,
        modulus: u64,
    },
    /// The box radius must be at least 1.
    BoxRadiusZero,
    /// The scalar is not invertible modulo `N`.
    NotAUnit { unit: u64, modulus: u64 },
    /// The requested computation is larger than the engine's operation budget.
    BudgetExceeded { required: u128, budget: u128 },
    /// A float coefficient sits farther from the nearest integer than the
    /// tolerance allows.
    ResidualTooLarge { residual: f64, tol: f64 },
    /// Rounded coefficients violate a structural property that holds for
    /// every weight enumerator (unit constant term, even counts, …).
    InvariantViolation { detail: String },
    /// Random search needs at least one trial.
    TrialsZero,
    /// The search space contains no admissible generating vector.
    NoValidCandidate,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModulusTooSmall { n } => {
                write!(f, "modulus must be at least 2, got {n}")
            }
            Error::EmptyGenerator => {
                write!(f, "generating vector must have at least one component")
            }
            Error::GeneratorOutOfRange {
                index,
                value,
                modulus,
            } => write!(
                f,
                "generator component {index} is {value}, expected a value in 1..={}",
                modulus - 1
            ),
            Error::BoxRadiusZero => write!(f, "box radius must be at least 1"),
            Error::NotAUnit { unit, modulus } => {
                write!(f, "{unit} is not a unit modulo {modulus}")
            }
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "computation needs {required} operations, budget is {budget}"
            ),
            Error::ResidualTooLarge { residual, tol } => write!(
                f,
                "rounding residual {residual:e} exceeds tolerance {tol:e}"
            ),
            Error::InvariantViolation { detail } => {
                write!(f, "rounded coefficients violate an invariant: {detail}")
            }
            Error::TrialsZero => write!(f, "random search needs at least one trial"),
            Error::NoValidCandidate => {
                write!(f, "search space contains no admissible generating vector")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
