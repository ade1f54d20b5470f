//! Randomized self-checks over the whole pipeline.
//!
//! Each check replays a named property over freshly drawn inputs and
//! reports the worst residual it saw. Trial t of check c runs on its own
//! RNG stream, `(c << 32) | t` of the user seed, so reports are
//! reproducible bit for bit and any single failing trial can be replayed
//! in isolation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{
    canonical_form_general, canonical_form_symmetric, canonical_from_invariants9,
};
use crate::invariants::{derived_frame, invariants6_symmetric, invariants9};
use crate::linalg::CVec3;
use crate::orbit::{equivalent, jacobian_rank, JacobianMap};
use crate::quantum::{
    act, adjoint_rotation, haar_rotation_pair, haar_su2, kron, pauli_basis, random_density,
    random_generic_state, random_state, BlochMatrix, Mat4, RotationPair, StateKind,
};
use crate::tol;

pub const VERIFY_SCHEMA: &str = "verify/1";

/// Which family of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Algebraic identities of the cross product, the adjoint map, and
    /// the derived frame.
    Identities,
    /// Invariance of the generators under the rotation actions.
    Invariance,
    /// Canonical forms: section membership, reconstruction, and the orbit
    /// decision built on them.
    Canonical,
    /// Numerical rank of the invariant Jacobians.
    Independence,
    All,
}

impl Suite {
    fn includes(self, section: Suite) -> bool {
        self == Suite::All || self == section
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Invariance => "invariance",
            Suite::Canonical => "canonical",
            Suite::Independence => "independence",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identities" => Ok(Suite::Identities),
            "invariance" => Ok(Suite::Invariance),
            "canonical" => Ok(Suite::Canonical),
            "independence" => Ok(Suite::Independence),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?}; expected identities, invariance, canonical, independence, or all"
            )),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of a verify run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: &'static str,
    pub seed: u64,
    pub requested_trials: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verify suite={} seed={} trials={}\n",
            self.suite, self.seed, self.requested_trials
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {:<42} trials={:<4} max_residual={:.3e} tol={:.1e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.trials,
                c.max_residual,
                c.tolerance
            ));
        }
        let good = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "result: {} ({}/{} checks)\n",
            if self.passed { "PASS" } else { "FAIL" },
            good,
            self.checks.len()
        ));
        out
    }
}

fn run_check(
    seed: u64,
    check_id: u64,
    name: &'static str,
    trials: usize,
    tolerance: f64,
    mut body: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> CheckResult {
    let mut failures = 0;
    let mut max_residual: f64 = 0.0;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((check_id << 32) | t as u64);
        let r = body(&mut rng);
        max_residual = max_residual.max(r);
        if r > tolerance {
            failures += 1;
        }
    }
    CheckResult {
        name,
        trials,
        failures,
        max_residual,
        tolerance,
        passed: failures == 0,
    }
}

fn complex_unit<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

fn complex_vec<R: Rng + ?Sized>(rng: &mut R) -> CVec3 {
    CVec3::new(complex_unit(rng), complex_unit(rng), complex_unit(rng))
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(1.0)
}

/// Bloch matrix of a density matrix by plain Pauli traces, kept complex.
/// Duplicates none of the library's rounding, so it can certify that the
/// entries and the invariants of Hermitian states are real before any
/// real-part projection happens.
fn bloch_by_traces(rho: &Mat4) -> BlochMatrix {
    let sigma = pauli_basis();
    let mut u1 = [Complex64::from(0.0); 3];
    let mut u2 = [Complex64::from(0.0); 3];
    let mut b = BlochMatrix::zero();
    for i in 0..3 {
        u1[i] = Mat4::trace_product(&kron(&sigma[i + 1], &sigma[0]), rho);
        u2[i] = Mat4::trace_product(&kron(&sigma[0], &sigma[i + 1]), rho);
        for j in 0..3 {
            b.c.m[i][j] = Mat4::trace_product(&kron(&sigma[i + 1], &sigma[j + 1]), rho);
        }
    }
    b.u1 = CVec3::from_array(u1);
    b.u2 = CVec3::from_array(u2);
    b
}

fn section_deviation(b: &BlochMatrix) -> f64 {
    [
        b.u1.y.norm(),
        b.u1.z.norm(),
        b.u2.y.norm(),
        b.u2.z.norm(),
        b.c.m[0][1].norm(),
        b.c.m[1][0].norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Runs the requested suite: `trials` drawn inputs per check (rank checks
/// cap at 50), all derived from `seed`.
pub fn run(suite: Suite, seed: u64, trials: usize) -> SuiteReport {
    let mut checks = Vec::new();

    if suite.includes(Suite::Identities) {
        checks.push(run_check(seed, 0, "grassmann-identity", trials, 1e-12, |rng| {
            let (a, b, c) = (complex_vec(rng), complex_vec(rng), complex_vec(rng));
            let lhs = a.cross(&b.cross(&c));
            let rhs = b.scale(a.dot(&c)) - c.scale(a.dot(&b));
            rel(lhs.max_abs_diff(&rhs), lhs.max_abs())
        }));
        checks.push(run_check(seed, 1, "binet-cauchy-identity", trials, 1e-12, |rng| {
            let (a, b) = (complex_vec(rng), complex_vec(rng));
            let (c, d) = (complex_vec(rng), complex_vec(rng));
            let lhs = a.cross(&b).dot(&c.cross(&d));
            let rhs = a.dot(&c) * b.dot(&d) - a.dot(&d) * b.dot(&c);
            rel((lhs - rhs).norm(), lhs.norm())
        }));
        checks.push(run_check(seed, 2, "adjoint-homomorphism", trials, 1e-12, |rng| {
            let u = haar_su2(rng);
            let v = haar_su2(rng);
            let lhs = adjoint_rotation(&u.matmul(&v)).expect("unitary");
            let rhs = adjoint_rotation(&u)
                .expect("unitary")
                .matmul(&adjoint_rotation(&v).expect("unitary"));
            lhs.max_abs_diff(&rhs)
        }));
        checks.push(run_check(seed, 3, "frame-norm-identities", trials, 1e-10, |rng| {
            let b = random_state(rng, StateKind::GenericBloch);
            let fr = derived_frame(&b);
            let f = invariants9(&b);
            let r1 = (fr.w1.dot(&fr.w1) - f.f1 * f.f3).norm();
            let r2 = (fr.w2.dot(&fr.w2) - f.f2 * f.f4).norm();
            rel(r1.max(r2), (f.f1 * f.f3).norm())
        }));
        checks.push(run_check(seed, 4, "hidden-section-entries", trials, 1e-10, |rng| {
            let b = random_state(rng, StateKind::GenericBloch);
            let fr = derived_frame(&b);
            let f = invariants9(&b);
            let r1 = (fr.w1.dot(&b.c.matvec(&b.u2)) + f.f3).norm();
            let r2 = (b.u1.dot(&b.c.matvec(&fr.w2)) + f.f4).norm();
            rel(r1.max(r2), f.f3.norm().max(f.f4.norm()))
        }));
    }

    if suite.includes(Suite::Invariance) {
        checks.push(run_check(seed, 5, "nine-invariants-rotation-invariant", trials, 1e-9, |rng| {
            let b = random_state(rng, StateKind::GenericBloch);
            let g = haar_rotation_pair(rng);
            let f0 = invariants9(&b);
            let f1 = invariants9(&act(&g, &b));
            rel(f0.max_abs_diff(&f1), f0.max_abs())
        }));
        checks.push(run_check(seed, 6, "six-invariants-diagonal-invariant", trials, 1e-9, |rng| {
            let b = random_state(rng, StateKind::Symmetric);
            let g = haar_rotation_pair(rng);
            let diag = RotationPair::new(*g.g1(), *g.g1()).expect("rotation");
            let f0 = invariants6_symmetric(&b).expect("symmetric");
            let f1 = invariants6_symmetric(&act(&diag, &b)).expect("stays symmetric");
            rel(f0.max_abs_diff(&f1), f0.max_abs())
        }));
        checks.push(run_check(seed, 7, "hermitian-states-have-real-invariants", trials, 1e-10, |rng| {
            let rho = random_density(rng);
            let b = bloch_by_traces(rho.matrix());
            b.max_imag().max(invariants9(&b).max_imag())
        }));
    }

    if suite.includes(Suite::Canonical) {
        checks.push(run_check(seed, 8, "canonical-section-membership", trials, 1e-9, |rng| {
            let b = random_generic_state(rng, StateKind::GenericBloch, tol::GENERICITY);
            let cf = canonical_form_general(&b, tol::GENERICITY).expect("generic by construction");
            let witness_dev = cf
                .witness
                .g1()
                .orthogonality_deviation()
                .max(cf.witness.g2().orthogonality_deviation());
            section_deviation(&cf.b_canon).max(witness_dev)
        }));
        checks.push(run_check(seed, 9, "canonical-reconstruction-matches-invariants", trials, 1e-9, |rng| {
            let b = random_generic_state(rng, StateKind::GenericBloch, tol::GENERICITY);
            let f = invariants9(&b);
            let r = canonical_from_invariants9(&f).expect("guards passed");
            rel(invariants9(&r).max_abs_diff(&f), f.max_abs())
        }));
        checks.push(run_check(seed, 10, "symmetric-section-membership", trials, 1e-9, |rng| {
            let b = random_generic_state(rng, StateKind::Symmetric, tol::GENERICITY);
            let cf = canonical_form_symmetric(&b, tol::GENERICITY).expect("generic by construction");
            section_deviation(&cf.b_canon)
        }));
        checks.push(run_check(seed, 11, "orbit-roundtrip-equivalence", trials, tol::EQUIVALENCE, |rng| {
            let b = random_generic_state(rng, StateKind::HermitianDensity, tol::GENERICITY);
            let g = haar_rotation_pair(rng);
            let verdict = equivalent(&b, &act(&g, &b), tol::EQUIVALENCE).expect("generic");
            verdict.residual
        }));
        checks.push(run_check(seed, 12, "orbit-distinct-pairs", trials, 0.5, |rng| {
            let b1 = random_generic_state(rng, StateKind::GenericBloch, tol::GENERICITY);
            let b2 = random_generic_state(rng, StateKind::GenericBloch, tol::GENERICITY);
            let verdict = equivalent(&b1, &b2, tol::EQUIVALENCE).expect("generic");
            if verdict.equivalent {
                1.0
            } else {
                0.0
            }
        }));
    }

    if suite.includes(Suite::Independence) {
        let rank_trials = trials.min(50);
        checks.push(run_check(seed, 13, "jacobian-rank-general", rank_trials, 0.5, |rng| {
            let b = random_generic_state(rng, StateKind::HermitianDensity, tol::GENERICITY);
            let r = jacobian_rank(JacobianMap::General9, &b, tol::FD_STEP, tol::SV_CUTOFF)
                .expect("general map");
            if r.rank == 9 && r.gap >= 1e3 {
                0.0
            } else {
                1.0
            }
        }));
        checks.push(run_check(seed, 14, "jacobian-rank-symmetric", rank_trials, 0.5, |rng| {
            let b = random_generic_state(rng, StateKind::Symmetric, tol::GENERICITY);
            let r = jacobian_rank(JacobianMap::Symmetric6, &b, tol::FD_STEP, tol::SV_CUTOFF)
                .expect("symmetric state");
            if r.rank == 6 && r.gap >= 1e3 {
                0.0
            } else {
                1.0
            }
        }));
    }

    let passed = checks.iter().all(|c| c.passed);
    SuiteReport {
        schema: VERIFY_SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        suite: suite.name(),
        seed,
        requested_trials: trials,
        checks,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_on_a_default_run() {
        let report = run(Suite::All, 7, 40);
        assert!(report.passed, "{}", report.to_text());
        assert_eq!(report.checks.len(), 15);
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let a = serde_json::to_string(&run(Suite::Identities, 11, 25)).unwrap();
        let b = serde_json::to_string(&run(Suite::Identities, 11, 25)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suites_select_their_own_checks() {
        assert_eq!(run(Suite::Identities, 1, 5).checks.len(), 5);
        assert_eq!(run(Suite::Invariance, 1, 5).checks.len(), 3);
        assert_eq!(run(Suite::Canonical, 1, 5).checks.len(), 5);
        assert_eq!(run(Suite::Independence, 1, 5).checks.len(), 2);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Identities,
            Suite::Invariance,
            Suite::Canonical,
            Suite::Independence,
            Suite::All,
        ] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("orbit".parse::<Suite>().is_err());
    }

    #[test]
    fn text_rendering_lists_every_check() {
        let report = run(Suite::Independence, 3, 5);
        let text = report.to_text();
        assert!(text.contains("jacobian-rank-general"));
        assert!(text.contains("result: PASS (2/2 checks)"));
    }
}
