//! The symmetric theory: states with u₁ = u₂ and C = Cᵀ under the
//! diagonal action g·(u, C) = (gu, gCgᵀ).
//!
//! Such states need only six invariants. This example fingerprints a
//! symmetric state, reduces it to its canonical form, and confirms that a
//! diagonally rotated copy is judged equivalent while a perturbed state
//! is not.

use luinv::canonical::canonical_form_symmetric;
use luinv::linalg::{CMat3, CVec3};
use luinv::quantum::{act, haar_rotation_pair, BlochMatrix, RotationPair};
use luinv::{equivalent_symmetric, invariants6_symmetric, tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let u = CVec3::from_real(0.3, -0.4, 0.2);
    let c = CMat3::from_real([
        [0.5, 0.1, -0.2],
        [0.1, -0.3, 0.25],
        [-0.2, 0.25, 0.4],
    ]);
    let b = BlochMatrix::new(u, u, c);

    let f = invariants6_symmetric(&b).expect("state is symmetric");
    println!("six symmetric invariants:");
    for (k, value) in f.as_array().iter().enumerate() {
        println!("  f{} = {:.6}", k + 1, value.re);
    }

    let cf = canonical_form_symmetric(&b, tol::GENERICITY).expect("state is generic");
    println!(
        "\ncanonical u = {:?}",
        cf.b_canon.u1.as_array().map(|z| format!("{:.4}", z.re))
    );
    println!("canonical C rows:");
    for row in &cf.b_canon.c.m {
        println!("  {:?}", row.map(|z| format!("{:.4}", z.re)));
    }

    // A diagonal rotation (same g on both factors) keeps the state
    // symmetric and stays on its orbit.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = haar_rotation_pair(&mut rng);
    let diag = RotationPair::new(*g.g1(), *g.g1()).unwrap();
    let rotated = act(&diag, &b);
    let verdict = equivalent_symmetric(&b, &rotated, tol::EQUIVALENCE).unwrap();
    println!(
        "\ndiagonally rotated copy: {} (residual {:.3e})",
        if verdict.equivalent { "EQUIVALENT" } else { "DISTINCT" },
        verdict.residual
    );

    let mut perturbed = b.clone();
    perturbed.c.m[0][0] += num_complex::Complex64::from(0.05);
    let verdict = equivalent_symmetric(&b, &perturbed, tol::EQUIVALENCE).unwrap();
    println!(
        "perturbed state:         {} (best mismatch {:.3e})",
        if verdict.equivalent { "EQUIVALENT" } else { "DISTINCT" },
        verdict.residual
    );
}
