//! Default numeric tolerances.
//!
//! Every threshold used by the crate is named here so that the relative
//! ordering is visible in one place. Structural checks on exact inputs sit
//! near machine precision; thresholds applied to derived quantities leave
//! room for the roundoff the derivation accumulates.

/// Structural checks on user-supplied matrices: unit trace, hermiticity,
/// special unitarity. These quantities are read straight off the input, so
/// only a few rounding errors separate a valid input from its check.
pub const STRUCTURAL: f64 = 1e-10;

/// Membership test for special orthogonal 3×3 matrices. Rotations produced
/// by composing frames of nearly degenerate states can drift further from
/// orthogonality than raw inputs, hence looser than [`STRUCTURAL`].
pub const ROTATION: f64 = 1e-8;

/// Genericity guard: a squared length |x·x| below this threshold (scaled by
/// `max(1, ‖B‖²_max)`) counts as zero, and the state is rejected for
/// canonical reduction. The derived vectors are cubic in the state entries,
/// so this sits well above roundoff but far below generic magnitudes.
pub const GENERICITY: f64 = 1e-8;

/// Largest magnitude the forced-zero entries of a canonical state may have.
pub const SECTION: f64 = 1e-8;

/// Acceptance threshold for the residual of an equivalence witness:
/// two states are in the same orbit when the witness maps one onto the
/// other entrywise within this bound.
pub const EQUIVALENCE: f64 = 1e-8;

/// Symmetry check u₁ == u₂ and C == Cᵀ for the six-invariant theory.
pub const SYMMETRY: f64 = 1e-8;

/// Step for central finite differences when estimating Jacobian rank.
/// Truncation error scales with the square of the step, roundoff with its
/// inverse; 1e-5 balances the two for unit-scale states.
pub const FD_STEP: f64 = 1e-5;

/// Relative singular-value cutoff for numerical rank: singular values below
/// this fraction of the largest one count as zero.
pub const SV_CUTOFF: f64 = 1e-6;
