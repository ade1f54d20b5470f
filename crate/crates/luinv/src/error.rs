//! Error type shared across the crate.

use crate::invariants::GenericityReport;

/// Which input of a binary operation an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateSide {
    /// The single input of a unary operation.
    Only,
    /// The first of two inputs.
    First,
    /// The second of two inputs.
    Second,
}

impl std::fmt::Display for StateSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateSide::Only => write!(f, "the state"),
            StateSide::First => write!(f, "the first state"),
            StateSide::Second => write!(f, "the second state"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A density matrix whose trace deviates from 1, or that fails a
    /// requested hermiticity check.
    #[error("not a state: {reason} (deviation {deviation:.3e}, tolerance {tol:.3e})")]
    NotAState {
        reason: &'static str,
        deviation: f64,
        tol: f64,
    },

    /// A 2×2 matrix that is not special unitary within tolerance.
    #[error("not a special unitary 2×2 matrix (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// A 3×3 matrix that is not special orthogonal within tolerance.
    #[error("not a special orthogonal 3×3 matrix (deviation {deviation:.3e})")]
    NotRotation { deviation: f64 },

    /// A state whose one-point vectors differ or whose two-point matrix is
    /// not symmetric, where a symmetric state was required.
    #[error("not a symmetric state (asymmetry {deviation:.3e}, tolerance {tol:.3e})")]
    NotSymmetric { deviation: f64, tol: f64 },

    /// A state outside general position: one of the four guard quantities
    /// |u₁·u₁|, |u₂·u₂|, |v₁·v₁|, |v₂·v₂| is numerically zero.
    #[error("{side} is not generic: {report}")]
    NonGeneric {
        side: StateSide,
        report: GenericityReport,
    },

    /// An invariant vector from which no canonical state can be rebuilt
    /// because a magnitude that must be inverted is numerically zero.
    #[error("degenerate invariants: |{name}| = {magnitude:.3e} is below {tol:.3e}")]
    DegenerateInvariants {
        name: &'static str,
        magnitude: f64,
        tol: f64,
    },

    /// Unparseable or structurally invalid input.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
