//! Canonical representatives of generic orbits.
//!
//! For a generic state the derived triples (uᵢ, vᵢ, wᵢ) are mutually
//! orthogonal with nonzero squared lengths. Normalizing each triple gives
//! the rows of a special orthogonal matrix, and the pair of frame matrices
//! rotates the state into the *section*: both one-point vectors along the
//! first axis, C zero in the (1,2) and (2,1) entries. The residual freedom
//! inside the section is the finite Weyl group of diagonal ±1 pairs
//! with determinant +1 (16 elements; the 4 diagonal-acting ones
//! for the symmetric theory), so two generic states are equivalent exactly
//! when their canonical forms agree up to one Weyl element.
//!
//! The canonical state is determined by the invariants alone:
//! [`canonical_from_invariants9`] and [`canonical_from_invariants6`]
//! rebuild it from the nine (six) values without seeing the state, which
//! cross-validates the frame route. Square roots are principal; each
//! entry uses products of the individual roots √f₁..√f₄ so the
//! reconstruction inverts [`crate::invariants::invariants9`] exactly even
//! for complex invariant values.

use num_complex::Complex64;

use crate::error::{Error, Result, StateSide};
use crate::invariants::{
    derived_frame, genericity, GenericityReport, InvariantVector6, InvariantVector9,
};
use crate::linalg::{CMat3, CVec3};
use crate::quantum::{act, BlochMatrix, RotationPair};
use crate::tol;

/// A state rotated into the section together with the rotation pair that
/// put it there: act(witness, original) == b_canon.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalForm {
    pub b_canon: BlochMatrix,
    pub witness: RotationPair,
}

/// The special orthogonal matrix with rows u/‖u‖, v/‖v‖, w/‖w‖.
///
/// Preconditions: v·u == 0 and w == u × v (as produced by the derived
/// frame). The squared lengths |u·u| and |v·v| must exceed `tol`; the
/// product identity w·w == (u·u)(v·v) then puts |w·w| above tol², which is
/// the guard used for w. On failure the error's report carries the factor's
/// two guards in both slot pairs.
pub fn frame_rotation(u: &CVec3, v: &CVec3, w: &CVec3, tol: f64) -> Result<CMat3> {
    let uu = u.dot(u).norm();
    let vv = v.dot(v).norm();
    let ww = w.dot(w).norm();
    if uu <= tol || vv <= tol || ww <= 0.5 * tol * tol {
        let report = GenericityReport {
            u1_ok: uu > tol,
            u2_ok: uu > tol,
            v1_ok: vv > tol,
            v2_ok: vv > tol,
            magnitudes: [uu, uu, vv, vv],
            threshold: tol,
        };
        return Err(Error::NonGeneric {
            side: StateSide::Only,
            report,
        });
    }
    let scale = |x: &CVec3| x.scale(Complex64::from(1.0) / x.norm());
    Ok(CMat3::from_rows(scale(u), scale(v), scale(w)))
}

/// Rotates a generic state into the section. The witness satisfies
/// act(witness, b) == b_canon by construction.
pub fn canonical_form_general(b: &BlochMatrix, tol: f64) -> Result<CanonicalForm> {
    let report = genericity(b, tol);
    if !report.is_generic() {
        return Err(Error::NonGeneric {
            side: StateSide::Only,
            report,
        });
    }
    let fr = derived_frame(b);
    let g1 = frame_rotation(&b.u1, &fr.v1, &fr.w1, report.threshold)?;
    let g2 = frame_rotation(&b.u2, &fr.v2, &fr.w2, report.threshold)?;
    let witness = RotationPair::new(g1, g2)?;
    Ok(CanonicalForm {
        b_canon: act(&witness, b),
        witness,
    })
}

/// Symmetric counterpart of [`canonical_form_general`]: one frame, applied
/// diagonally, so the canonical form stays symmetric.
pub fn canonical_form_symmetric(b: &BlochMatrix, tol: f64) -> Result<CanonicalForm> {
    let dev = b.symmetry_deviation();
    if dev > tol::SYMMETRY {
        return Err(Error::NotSymmetric {
            deviation: dev,
            tol: tol::SYMMETRY,
        });
    }
    let report = genericity(b, tol);
    if !report.is_generic() {
        return Err(Error::NonGeneric {
            side: StateSide::Only,
            report,
        });
    }
    let u = b.u1;
    let v = u.cross(&b.c.matvec(&u));
    let w = u.cross(&v);
    let g = frame_rotation(&u, &v, &w, report.threshold)?;
    let witness = RotationPair::new(g, g)?;
    Ok(CanonicalForm {
        b_canon: act(&witness, b),
        witness,
    })
}

fn guard_invariant(name: &'static str, value: Complex64) -> Result<Complex64> {
    let magnitude = value.norm();
    if magnitude < tol::GENERICITY {
        return Err(Error::DegenerateInvariants {
            name,
            magnitude,
            tol: tol::GENERICITY,
        });
    }
    Ok(value)
}

/// The canonical state with invariants f, built without seeing a state:
///
/// ```text
/// u₁ = (√f₁, 0, 0),  u₂ = (√f₂, 0, 0),
///
///     ⎡ f₅/(√f₁√f₂)      0              −√f₄/(√f₁√f₂)    ⎤
/// C = ⎢ 0                f₆/(√f₃√f₄)    f₈/(√f₂√f₃√f₄)   ⎥
///     ⎣ −√f₃/(√f₁√f₂)    f₉/(√f₁√f₃√f₄) f₇/(√f₁√f₂√f₃√f₄)⎦
/// ```
///
/// Agrees with the frame route up to one Weyl element; the sign ambiguity
/// of each principal root is exactly the Weyl freedom of the section.
pub fn canonical_from_invariants9(f: &InvariantVector9) -> Result<BlochMatrix> {
    let s1 = guard_invariant("f1", f.f1)?.sqrt();
    let s2 = guard_invariant("f2", f.f2)?.sqrt();
    let s3 = guard_invariant("f3", f.f3)?.sqrt();
    let s4 = guard_invariant("f4", f.f4)?.sqrt();
    let z = Complex64::from(0.0);
    let c = CMat3::new([
        [f.f5 / (s1 * s2), z, -s4 / (s1 * s2)],
        [z, f.f6 / (s3 * s4), f.f8 / (s2 * s3 * s4)],
        [-s3 / (s1 * s2), f.f9 / (s1 * s3 * s4), f.f7 / (s1 * s2 * s3 * s4)],
    ]);
    Ok(BlochMatrix::new(
        CVec3::new(s1, z, z),
        CVec3::new(s2, z, z),
        c,
    ))
}

/// Symmetric counterpart of [`canonical_from_invariants9`]:
///
/// ```text
/// u = (√f₁, 0, 0),
///
///     ⎡ f₃/f₁         0            −√f₂/f₁    ⎤
/// C = ⎢ 0             f₄/f₂        f₆/(f₂√f₁) ⎥
///     ⎣ −√f₂/f₁       f₆/(f₂√f₁)   f₅/(f₁f₂)  ⎦
/// ```
pub fn canonical_from_invariants6(f: &InvariantVector6) -> Result<BlochMatrix> {
    let f1 = guard_invariant("f1", f.f1)?;
    let f2 = guard_invariant("f2", f.f2)?;
    let s1 = f1.sqrt();
    let s2 = f2.sqrt();
    let z = Complex64::from(0.0);
    let off = f.f6 / (f2 * s1);
    let c = CMat3::new([
        [f.f3 / f1, z, -s2 / f1],
        [z, f.f4 / f2, off],
        [-s2 / f1, off, f.f5 / (f1 * f2)],
    ]);
    let u = CVec3::new(s1, z, z);
    Ok(BlochMatrix::new(u, u, c))
}

/// A pair of diagonal ±1 matrices, each of determinant +1: an element of
/// the residual symmetry group of the section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylElement {
    d1: [i8; 3],
    d2: [i8; 3],
}

/// The four diagonal ±1 matrices of determinant +1, identity first.
const SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

impl WeylElement {
    fn diag(d: [i8; 3]) -> CMat3 {
        CMat3::from_diag(d.map(|s| Complex64::from(s as f64)))
    }

    pub fn g1(&self) -> CMat3 {
        Self::diag(self.d1)
    }

    pub fn g2(&self) -> CMat3 {
        Self::diag(self.d2)
    }

    pub fn rotation_pair(&self) -> RotationPair {
        RotationPair::new_unchecked(self.g1(), self.g2())
    }

    pub fn apply(&self, b: &BlochMatrix) -> BlochMatrix {
        act(&self.rotation_pair(), b)
    }
}

/// The 16 Weyl elements of the general section, ordered so that element
/// 4i + j is the pair `(SIGNS[i], SIGNS[j])`; element 0 is the identity.
pub fn weyl_group_general() -> [WeylElement; 16] {
    let mut out = [WeylElement {
        d1: SIGNS[0],
        d2: SIGNS[0],
    }; 16];
    for i in 0..4 {
        for j in 0..4 {
            out[4 * i + j] = WeylElement {
                d1: SIGNS[i],
                d2: SIGNS[j],
            };
        }
    }
    out
}

/// The 4 diagonal-acting Weyl elements (d, d) of the symmetric section,
/// identity first.
pub fn weyl_group_symmetric() -> [WeylElement; 4] {
    SIGNS.map(|d| WeylElement { d1: d, d2: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{invariants6_symmetric, invariants9};
    use crate::quantum::{random_generic_state, StateKind};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn worked_example() -> BlochMatrix {
        BlochMatrix::new(
            CVec3::from_real(1.0, 0.0, 0.0),
            CVec3::from_real(2.0, 0.0, 0.0),
            CMat3::from_real([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 3.0]]),
        )
    }

    fn worked_canon_c() -> CMat3 {
        CMat3::from_real([[1.0, 0.0, -1.0], [0.0, 2.0, 0.0], [-1.0, 0.0, 3.0]])
    }

    /// Largest magnitude of the six entries the section forces to zero.
    fn section_residual(b: &BlochMatrix) -> f64 {
        [b.u1.y, b.u1.z, b.u2.y, b.u2.z, b.c.m[0][1], b.c.m[1][0]]
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn frame_rotation_permutes_axes() {
        let g = frame_rotation(
            &CVec3::from_real(0.0, 3.0, 0.0),
            &CVec3::from_real(0.0, 0.0, 5.0),
            &CVec3::from_real(15.0, 0.0, 0.0),
            1e-8,
        )
        .unwrap();
        let expect = CMat3::from_real([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
        assert_eq!(g, expect);
    }

    #[test]
    fn frame_rotation_of_standard_and_sign_flipped_frames() {
        let e1 = CVec3::from_real(1.0, 0.0, 0.0);
        let e2 = CVec3::from_real(0.0, 1.0, 0.0);
        let e3 = CVec3::from_real(0.0, 0.0, 1.0);
        assert_eq!(frame_rotation(&e1, &e2, &e3, 1e-8).unwrap(), CMat3::identity());
        let g = frame_rotation(&e1, &-e2, &-e3, 1e-8).unwrap();
        assert_eq!(
            g,
            CMat3::from_real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]])
        );
    }

    #[test]
    fn frame_rotation_rejects_isotropic_vectors() {
        let iso = CVec3::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        let v = iso.cross(&CVec3::from_real(0.0, 0.0, 1.0));
        let w = iso.cross(&v);
        assert!(matches!(
            frame_rotation(&iso, &v, &w, 1e-8),
            Err(Error::NonGeneric { .. })
        ));
    }

    #[test]
    fn frame_rotation_is_special_orthogonal_on_random_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let draw = |rng: &mut ChaCha8Rng| {
            CVec3::from_real(
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
            )
        };
        for _ in 0..200 {
            let u = draw(&mut rng);
            let v = u.cross(&draw(&mut rng));
            let w = u.cross(&v);
            if u.dot(&u).norm() < 1e-3 || v.dot(&v).norm() < 1e-3 {
                continue;
            }
            let g = frame_rotation(&u, &v, &w, 1e-8).unwrap();
            assert!(g.orthogonality_deviation() <= 1e-12);
            // g maps u to the first axis.
            let gu = g.matvec(&u);
            assert!(gu.y.norm().max(gu.z.norm()) <= 1e-13);
        }
    }

    #[test]
    fn canonical_form_of_worked_example() {
        let cf = canonical_form_general(&worked_example(), tol::GENERICITY).unwrap();
        let flip = CMat3::from_real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert_eq!(*cf.witness.g1(), flip);
        assert_eq!(*cf.witness.g2(), flip);
        assert_eq!(cf.b_canon.u1, CVec3::from_real(1.0, 0.0, 0.0));
        assert_eq!(cf.b_canon.u2, CVec3::from_real(2.0, 0.0, 0.0));
        assert_eq!(cf.b_canon.c, worked_canon_c());
    }

    #[test]
    fn canonical_form_symmetric_of_worked_example() {
        let b = worked_example();
        let sym = BlochMatrix::new(b.u1, b.u1, b.c);
        let cf = canonical_form_symmetric(&sym, tol::GENERICITY).unwrap();
        assert_eq!(cf.witness.g1(), cf.witness.g2());
        assert_eq!(cf.b_canon.u1, CVec3::from_real(1.0, 0.0, 0.0));
        assert_eq!(cf.b_canon.c, worked_canon_c());
    }

    #[test]
    fn canonical_form_lands_in_the_section() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for kind in [StateKind::GenericBloch, StateKind::HermitianDensity] {
            for _ in 0..150 {
                let b = random_generic_state(&mut rng, kind, tol::GENERICITY);
                let cf = canonical_form_general(&b, tol::GENERICITY).unwrap();
                assert!(section_residual(&cf.b_canon) <= 1e-9);
                // First components carry the full lengths.
                assert!((cf.b_canon.u1.x - b.u1.norm()).norm() <= 1e-10);
                assert!((cf.b_canon.u2.x - b.u2.norm()).norm() <= 1e-10);
                assert!(cf.witness.g1().orthogonality_deviation() <= 1e-9);
                assert!(cf.witness.g2().orthogonality_deviation() <= 1e-9);
            }
        }
    }

    #[test]
    fn canonical_form_rejects_non_generic_states() {
        let bell = BlochMatrix::new(
            CVec3::zero(),
            CVec3::zero(),
            CMat3::from_real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]),
        );
        match canonical_form_general(&bell, tol::GENERICITY) {
            Err(Error::NonGeneric { report, .. }) => assert!(!report.is_generic()),
            other => panic!("expected NonGeneric, got {other:?}"),
        }
    }

    #[test]
    fn reconstruction_matches_worked_canonical_form() {
        let f = invariants9(&worked_example());
        let b = canonical_from_invariants9(&f).unwrap();
        assert_eq!(b.u1, CVec3::from_real(1.0, 0.0, 0.0));
        assert_eq!(b.u2, CVec3::from_real(2.0, 0.0, 0.0));
        assert_eq!(b.c, worked_canon_c());

        let sym = BlochMatrix::new(
            CVec3::from_real(1.0, 0.0, 0.0),
            CVec3::from_real(1.0, 0.0, 0.0),
            worked_example().c,
        );
        let f6 = invariants6_symmetric(&sym).unwrap();
        let b6 = canonical_from_invariants6(&f6).unwrap();
        assert_eq!(b6.u1, CVec3::from_real(1.0, 0.0, 0.0));
        assert_eq!(b6.c, worked_canon_c());
    }

    #[test]
    fn reconstruction_inverts_the_invariants() {
        // Exact even for complex invariant vectors: every entry is built
        // from products of the individual roots √f₁..√f₄.
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let draw = |rng: &mut ChaCha8Rng, floor: f64| loop {
            let v = c(
                rng.random_range(-1.5..=1.5),
                rng.random_range(-1.5..=1.5),
            );
            if v.norm() >= floor {
                return v;
            }
        };
        for _ in 0..300 {
            let f = InvariantVector9::from_array([
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
            ]);
            let back = invariants9(&canonical_from_invariants9(&f).unwrap());
            assert!(back.max_abs_diff(&f) <= 1e-12);
        }
        for _ in 0..300 {
            let f = InvariantVector6::from_array([
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.1),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
                draw(&mut rng, 0.0),
            ]);
            let back = invariants6_symmetric(&canonical_from_invariants6(&f).unwrap()).unwrap();
            assert!(back.max_abs_diff(&f) <= 1e-12);
        }
    }

    #[test]
    fn reconstruction_rejects_degenerate_invariants() {
        let mut f = invariants9(&worked_example());
        f.f3 = c(0.0, 0.0);
        assert!(matches!(
            canonical_from_invariants9(&f),
            Err(Error::DegenerateInvariants { name: "f3", .. })
        ));
    }

    #[test]
    fn weyl_groups_have_the_right_size_and_structure() {
        let general = weyl_group_general();
        assert_eq!(general.len(), 16);
        let symmetric = weyl_group_symmetric();
        assert_eq!(symmetric.len(), 4);
        assert_eq!(general[0].g1(), CMat3::identity());
        assert_eq!(general[0].g2(), CMat3::identity());
        for w in &general {
            assert_eq!(w.g1().det(), c(1.0, 0.0));
            assert_eq!(w.g2().det(), c(1.0, 0.0));
            // Involution: each element squares to the identity.
            assert_eq!(w.g1().matmul(&w.g1()), CMat3::identity());
            assert_eq!(w.g2().matmul(&w.g2()), CMat3::identity());
        }
        for w in &symmetric {
            assert_eq!(w.g1(), w.g2());
        }
        // Closure: products of sign pairs stay in the group.
        for a in &general {
            for b in &general {
                let p1 = a.g1().matmul(&b.g1());
                let p2 = a.g2().matmul(&b.g2());
                assert!(general
                    .iter()
                    .any(|w| w.g1() == p1 && w.g2() == p2));
            }
        }
    }

    #[test]
    fn weyl_elements_preserve_the_section() {
        let cf = canonical_form_general(&worked_example(), tol::GENERICITY).unwrap();
        for w in &weyl_group_general() {
            assert_eq!(section_residual(&w.apply(&cf.b_canon)), 0.0);
        }
    }

    #[test]
    fn frame_and_invariant_routes_agree_up_to_one_weyl_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..300 {
            let b = random_generic_state(&mut rng, StateKind::HermitianDensity, tol::GENERICITY);
            let cf = canonical_form_general(&b, tol::GENERICITY).unwrap();
            let rebuilt = canonical_from_invariants9(&invariants9(&b)).unwrap();
            let matches = weyl_group_general()
                .iter()
                .filter(|w| w.apply(&cf.b_canon).max_abs_diff(&rebuilt) <= 1e-7)
                .count();
            assert_eq!(matches, 1);
        }
    }

    #[test]
    fn symmetric_routes_agree_up_to_one_weyl_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..300 {
            let b = random_generic_state(&mut rng, StateKind::Symmetric, tol::GENERICITY);
            let cf = canonical_form_symmetric(&b, tol::GENERICITY).unwrap();
            let rebuilt =
                canonical_from_invariants6(&invariants6_symmetric(&b).unwrap()).unwrap();
            let matches = weyl_group_symmetric()
                .iter()
                .filter(|w| w.apply(&cf.b_canon).max_abs_diff(&rebuilt) <= 1e-7)
                .count();
            assert_eq!(matches, 1);
        }
    }
}
