use core::fmt;

/// Validation and computation failures surfaced by this crate.
///
/// Indices carried by variants are zero-based internally; `Display` prints
/// them one-based to match the `T_k` / `sigma_k` labelling used in reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An input contained NaN or infinite entries.
    NonFinite,
    /// A matrix required to be Hermitian was not; carries max |a_ij - conj(a_ji)|.
    NotHermitian { defect: f64 },
    /// A matrix required to be unitary was not; carries max |(U^dag U - 1)_ij|.
    NotUnitary { defect: f64 },
    /// The Jacobi eigensolver failed to reach its off-diagonal target.
    EighNoConvergence { off_diagonal: f64 },
    /// A wave function was not normalized to 1.
    NotNormalized { norm: f64 },
    /// State coordinates exceed the purity bound sum rho_k^2 <= 3.
    PurityBound { purity: f64 },
    /// A density matrix eigenvalue fell outside [0, 1] beyond tolerance.
    NotPositive { eigenvalue: f64 },
    /// A density matrix trace differed from 1.
    TraceNotOne { trace: f64 },
    /// A state coordinate left [-1, 1], which would give a negative
    /// classical probability factor.
    CoordOutOfRange { index: usize, value: f64 },
    /// Mixing or environment weights that are negative or do not sum to 1.
    BadWeights { sum: f64 },
    NegativeWeight { value: f64 },
    /// An observable whose square is not the identity was used where a
    /// two-level (spin-like) observable is required.
    NotTwoLevel { defect: f64 },
    /// A Hamiltonian that does not commute with the exchange permutation.
    NotExchangeSymmetric { defect: f64 },
    /// A perturbation magnitude that is negative or not finite.
    BadMagnitude { value: f64 },
    /// A probability table or perturbation of the wrong length.
    LengthMismatch { expected: usize, actual: usize },
    /// A perturbed probability went negative beyond rounding slack.
    NegativeProbability { value: f64 },
    /// A perturbation does not satisfy the admissibility constraints
    /// (zero total, zero overlap with every sigma_k).
    ConstraintViolated { residual: f64 },
    /// An operation that needs at least one element got none.
    EmptyInput,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::NonFinite => write!(f, "input contains NaN or infinite entries"),
            Error::NotHermitian { defect } => {
                write!(f, "matrix is not Hermitian (defect {defect:.3e})")
            }
            Error::NotUnitary { defect } => {
                write!(f, "matrix is not unitary (defect {defect:.3e})")
            }
            Error::EighNoConvergence { off_diagonal } => write!(
                f,
                "eigensolver did not converge (off-diagonal norm {off_diagonal:.3e})"
            ),
            Error::NotNormalized { norm } => {
                write!(f, "wave function is not normalized (norm {norm:.17})")
            }
            Error::PurityBound { purity } => {
                write!(f, "coordinates violate the purity bound: sum of squares {purity:.17} > 3")
            }
            Error::NotPositive { eigenvalue } => {
                write!(f, "density matrix eigenvalue {eigenvalue:.3e} outside [0, 1]")
            }
            Error::TraceNotOne { trace } => {
                write!(f, "density matrix trace {trace:.17} differs from 1")
            }
            Error::CoordOutOfRange { index, value } => write!(
                f,
                "coordinate rho_{} = {value:.17} outside [-1, 1]",
                index + 1
            ),
            Error::BadWeights { sum } => {
                write!(f, "weights must be nonnegative and sum to 1 (sum {sum:.17})")
            }
            Error::NegativeWeight { value } => write!(f, "negative weight {value:.3e}"),
            Error::NotTwoLevel { defect } => write!(
                f,
                "observable is not two-level: max |(A^2 - 1)_ij| = {defect:.3e}"
            ),
            Error::NotExchangeSymmetric { defect } => write!(
                f,
                "Hamiltonian does not commute with the exchange permutation (defect {defect:.3e})"
            ),
            Error::BadMagnitude { value } => {
                write!(f, "perturbation magnitude {value:.3e} must be finite and nonnegative")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(f, "length mismatch: expected {expected}, got {actual}")
            }
            Error::NegativeProbability { value } => {
                write!(f, "perturbed probability {value:.3e} is negative")
            }
            Error::ConstraintViolated { residual } => write!(
                f,
                "perturbation violates an admissibility constraint (residual {residual:.3e})"
            ),
            Error::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
