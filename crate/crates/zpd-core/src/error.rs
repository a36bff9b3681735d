use thiserror::Error;

use crate::field::FieldDescriptor;

/// One axiom violation found by structure-table validation.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum ValidationError {
    #[error("associativity fails at basis triple ({i}, {j}, {k}): (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit law fails: unit * e{index} != e{index}")]
    LeftUnit { index: usize },
    #[error("unit law fails: e{index} * unit != e{index}")]
    RightUnit { index: usize },
    #[error("structure table shape is wrong at entry ({i}, {j}): expected {expected} coordinates, got {got}")]
    Shape { i: usize, j: usize, expected: usize, got: usize },
    #[error("unit vector has {got} coordinates, expected {expected}")]
    UnitShape { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Validation(#[from] ValidationError),

    #[error("invalid field modulus {modulus}: need a prime with 2 <= p < 2^31")]
    InvalidField { modulus: u64 },

    #[error("cannot parse scalar {text:?}")]
    InvalidScalar { text: String },

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix shapes incompatible: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("exhaustive enumeration needs {required} field points but the cap is {cap}; raise the cap to at least {required}")]
    CapExceeded { required: u64, cap: u64 },

    #[error("exhaustive enumeration is unavailable over {field}")]
    ExhaustiveUnsupported { field: FieldDescriptor },

    #[error("{op} does not support the monte-carlo strategy")]
    ModeUnsupported { op: &'static str },

    #[error("module basis is not closed under the {side} action of basis element {by} (module vector {index})")]
    ModuleNotClosed { index: usize, by: usize, side: &'static str },

    #[error("operation requires characteristic != 2")]
    CharacteristicTwo,

    #[error("invalid builder: {reason}")]
    InvalidBuilder { reason: String },

    #[error("dimension {dim} is not a product of an algebra of dimension {a0_dim} and a length-{k} truncation")]
    EulerShape { dim: usize, a0_dim: usize, k: usize },

    #[error("the given matrix violates the Leibniz rule at basis pair ({i}, {j})")]
    NotADerivation { i: usize, j: usize },

    #[error("reconstructed decomposition fails to reproduce the functional at basis pair ({i}, {j}); the input did not vanish on the zero-pair span")]
    ReconstructionFailed { i: usize, j: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
