//! Generating rational invariants of a state under local rotations.
//!
//! From the Bloch form (u₁, u₂, C) four derived vectors are built,
//!
//!   v₁ = u₁ × Cu₂,   w₁ = u₁ × v₁,   v₂ = u₂ × Cᵀu₁,   w₂ = u₂ × v₂,
//!
//! each triple (uᵢ, vᵢ, wᵢ) transforming equivariantly: rotating the state
//! by (g₁, g₂) rotates the first triple by g₁ and the second by g₂. The
//! nine polynomials
//!
//!   f₁ = u₁·u₁   f₂ = u₂·u₂   f₃ = v₁·v₁    f₄ = v₂·v₂   f₅ = u₁·Cu₂
//!   f₆ = v₁·Cv₂  f₇ = w₁·Cw₂  f₈ = v₁·Cw₂   f₉ = w₁·Cv₂
//!
//! are therefore invariant, and on generic states they separate orbits:
//! two generic states are related by a local rotation pair exactly when
//! their nine values agree. For symmetric states (u₁ = u₂ = u, C = Cᵀ,
//! preserved by the diagonal action g₁ = g₂) six invariants suffice:
//!
//!   f₁ = u·u   f₂ = v·v   f₃ = u·Cu   f₄ = v·Cv   f₅ = w·Cw   f₆ = w·Cv
//!
//! with v = u × Cu and w = u × v.
//!
//! A state is *generic* when the four squared lengths u₁·u₁, u₂·u₂, v₁·v₁,
//! v₂·v₂ are numerically nonzero; only then do the triples form frames and
//! the canonical reduction applies. Those magnitudes are |f₁|..|f₄|, so
//! genericity is itself constant along orbits. Invariants are still
//! reported for non-generic states; orbit comparison refuses them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CVec3;
use crate::quantum::BlochMatrix;
use crate::tol;

/// The derived vectors of both tensor factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedFrame {
    pub v1: CVec3,
    pub w1: CVec3,
    pub v2: CVec3,
    pub w2: CVec3,
}

/// v₁ = u₁ × Cu₂, w₁ = u₁ × v₁, v₂ = u₂ × Cᵀu₁, w₂ = u₂ × v₂.
pub fn derived_frame(b: &BlochMatrix) -> DerivedFrame {
    let v1 = b.u1.cross(&b.c.matvec(&b.u2));
    let w1 = b.u1.cross(&v1);
    let v2 = b.u2.cross(&b.c.transpose().matvec(&b.u1));
    let w2 = b.u2.cross(&v2);
    DerivedFrame { v1, w1, v2, w2 }
}

/// The nine generating invariants of a general state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantVector9 {
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    pub f4: Complex64,
    pub f5: Complex64,
    pub f6: Complex64,
    pub f7: Complex64,
    pub f8: Complex64,
    pub f9: Complex64,
}

impl InvariantVector9 {
    pub fn as_array(&self) -> [Complex64; 9] {
        [
            self.f1, self.f2, self.f3, self.f4, self.f5, self.f6, self.f7, self.f8, self.f9,
        ]
    }

    pub fn from_array(f: [Complex64; 9]) -> Self {
        Self {
            f1: f[0],
            f2: f[1],
            f3: f[2],
            f4: f[3],
            f5: f[4],
            f6: f[5],
            f7: f[6],
            f8: f[7],
            f9: f[8],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().map(|f| f.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.as_array().iter().map(|f| f.im.abs()).fold(0.0, f64::max)
    }
}

/// The six generating invariants of a symmetric state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantVector6 {
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    pub f4: Complex64,
    pub f5: Complex64,
    pub f6: Complex64,
}

impl InvariantVector6 {
    pub fn as_array(&self) -> [Complex64; 6] {
        [self.f1, self.f2, self.f3, self.f4, self.f5, self.f6]
    }

    pub fn from_array(f: [Complex64; 6]) -> Self {
        Self {
            f1: f[0],
            f2: f[1],
            f3: f[2],
            f4: f[3],
            f5: f[4],
            f6: f[5],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().map(|f| f.norm()).fold(0.0, f64::max)
    }
}

/// Outcome of the genericity guard: one flag and one magnitude per squared
/// length |u₁·u₁|, |u₂·u₂|, |v₁·v₁|, |v₂·v₂| (in that order), plus the
/// threshold they were compared against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub u1_ok: bool,
    pub u2_ok: bool,
    pub v1_ok: bool,
    pub v2_ok: bool,
    pub magnitudes: [f64; 4],
    pub threshold: f64,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.u1_ok && self.u2_ok && self.v1_ok && self.v2_ok
    }
}

impl std::fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = ["u1·u1", "u2·u2", "v1·v1", "v2·v2"];
        let flags = [self.u1_ok, self.u2_ok, self.v1_ok, self.v2_ok];
        let failing: Vec<String> = names
            .iter()
            .zip(flags)
            .zip(self.magnitudes)
            .filter(|((_, ok), _)| !ok)
            .map(|((name, _), mag)| format!("|{name}| = {mag:.3e}"))
            .collect();
        if failing.is_empty() {
            write!(f, "all guards above threshold {:.3e}", self.threshold)
        } else {
            write!(
                f,
                "below threshold {:.3e}: {}",
                self.threshold,
                failing.join(", ")
            )
        }
    }
}

/// Tests the four genericity guards at threshold `tol`, scaled by
/// max(1, ‖B‖²_max) so the verdict does not change under rescaling of
/// well-conditioned data.
pub fn genericity(b: &BlochMatrix, tol: f64) -> GenericityReport {
    let fr = derived_frame(b);
    let magnitudes = [
        b.u1.dot(&b.u1).norm(),
        b.u2.dot(&b.u2).norm(),
        fr.v1.dot(&fr.v1).norm(),
        fr.v2.dot(&fr.v2).norm(),
    ];
    let threshold = tol * b.max_abs().powi(2).max(1.0);
    GenericityReport {
        u1_ok: magnitudes[0] > threshold,
        u2_ok: magnitudes[1] > threshold,
        v1_ok: magnitudes[2] > threshold,
        v2_ok: magnitudes[3] > threshold,
        magnitudes,
        threshold,
    }
}

/// The nine general invariants. Defined for every state, generic or not.
pub fn invariants9(b: &BlochMatrix) -> InvariantVector9 {
    let fr = derived_frame(b);
    let c = &b.c;
    InvariantVector9 {
        f1: b.u1.dot(&b.u1),
        f2: b.u2.dot(&b.u2),
        f3: fr.v1.dot(&fr.v1),
        f4: fr.v2.dot(&fr.v2),
        f5: b.u1.dot(&c.matvec(&b.u2)),
        f6: fr.v1.dot(&c.matvec(&fr.v2)),
        f7: fr.w1.dot(&c.matvec(&fr.w2)),
        f8: fr.v1.dot(&c.matvec(&fr.w2)),
        f9: fr.w1.dot(&c.matvec(&fr.v2)),
    }
}

/// The six invariants of a symmetric state, computed from u = u₁ and C as
/// given. Errors when the symmetry deviation exceeds [`tol::SYMMETRY`].
pub fn invariants6_symmetric(b: &BlochMatrix) -> Result<InvariantVector6> {
    let dev = b.symmetry_deviation();
    if dev > tol::SYMMETRY {
        return Err(Error::NotSymmetric {
            deviation: dev,
            tol: tol::SYMMETRY,
        });
    }
    let u = &b.u1;
    let c = &b.c;
    let v = u.cross(&c.matvec(u));
    let w = u.cross(&v);
    Ok(InvariantVector6 {
        f1: u.dot(u),
        f2: v.dot(&v),
        f3: u.dot(&c.matvec(u)),
        f4: v.dot(&c.matvec(&v)),
        f5: w.dot(&c.matvec(&w)),
        f6: w.dot(&c.matvec(&v)),
    })
}
