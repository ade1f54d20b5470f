//! Local-unitary invariants, canonical forms, and orbit equivalence for
//! two-qubit states.
//!
//! A two-qubit state is handled through its Bloch matrix B = (u₁, u₂, C):
//! the two local polarization vectors and the 3×3 correlation block of the
//! Pauli expansion ρ = ¼ Σ cᵢⱼ σᵢ⊗σⱼ. Local unitaries act on B through a
//! pair of rotations, (g₁, g₂)·(u₁, u₂, C) = (g₁u₁, g₂u₂, g₁Cg₂ᵀ), so
//! every question about local equivalence lives in the rotation picture.
//!
//! The crate computes, for generic states:
//!
//! * the nine polynomial invariants f₁..f₉ that generate all rational
//!   invariants of the two-sided action ([`invariants9`]), and the six
//!   generators f₁..f₆ of the diagonal action on symmetric states
//!   ([`invariants6_symmetric`]);
//! * a canonical representative of the orbit, with the witness rotation
//!   pair that reaches it ([`canonical_form_general`],
//!   [`canonical_form_symmetric`]), plus the closed-form reconstruction of
//!   that representative from the invariants alone
//!   ([`canonical_from_invariants9`], [`canonical_from_invariants6`]);
//! * an orbit-equivalence decision with a constructive, verified witness
//!   ([`equivalent`], [`equivalent_symmetric`]);
//! * a numerical certificate that the invariants are independent
//!   functions ([`jacobian_rank`]).
//!
//! Genericity means the four quadratic guards u₁·u₁, u₂·u₂, v₁·v₁, v₂·v₂
//! stay away from zero ([`genericity`]); all dot products are bilinear,
//! never Hermitian, so the theory extends verbatim to complex Bloch
//! matrices.

pub mod canonical;
pub mod cli;
pub mod error;
pub mod formats;
pub mod invariants;
pub mod linalg;
pub mod orbit;
pub mod quantum;
pub mod tol;
pub mod verify;

pub use canonical::{
    canonical_form_general, canonical_form_symmetric, canonical_from_invariants6,
    canonical_from_invariants9, frame_rotation, weyl_group_general, weyl_group_symmetric,
    CanonicalForm, WeylElement,
};
pub use error::{Error, Result, StateSide};
pub use formats::{
    load_state_file, parse_state_bytes, payload_from_bloch, payload_from_density, sha256_tag,
    ComplexScalar, FingerprintReport, LoadedState, Metadata, StateFile, StatePayload,
    WitnessReport,
};
pub use invariants::{
    derived_frame, genericity, invariants6_symmetric, invariants9, DerivedFrame, GenericityReport,
    InvariantVector6, InvariantVector9,
};
pub use linalg::{CMat3, CVec3};
pub use orbit::{
    equivalent, equivalent_symmetric, jacobian_matrix, jacobian_rank, EquivalenceVerdict,
    Jacobian, JacobianMap, JacobianRank,
};
pub use quantum::{
    act, adjoint_rotation, bloch_to_density, density_to_bloch, haar_rotation_pair, haar_su2,
    is_symmetric_state, pauli_basis, random_density, random_generic_state, random_state,
    BlochMatrix, DensityMatrix, LocalUnitary, Mat2, Mat4, RotationPair, StateKind,
};
