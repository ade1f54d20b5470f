//! Sample the three state families and inspect their genericity.
//!
//! Density-kind states come from the Ginibre ensemble (A A† normalized to
//! unit trace), Bloch-kind states have uniform entries in [-1, 1], and
//! symmetric states mirror their correlation block. Almost every draw is
//! generic; `random_generic_state` additionally rejects the rare
//! borderline cases.

use luinv::quantum::{random_density, random_generic_state, random_state, StateKind};
use luinv::{density_to_bloch, genericity, invariants9, tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let rho = random_density(&mut rng);
    println!("Ginibre density matrix, first row:");
    for z in &rho.matrix().0[0] {
        print!("  {:.4}{:+.4}i", z.re, z.im);
    }
    println!();
    let b = density_to_bloch(&rho);
    println!("its Bloch u1 = {:?}", b.u1.as_array().map(|z| format!("{:.4}", z.re)));
    println!("genericity: {}", genericity(&b, tol::GENERICITY));

    for kind in [StateKind::GenericBloch, StateKind::Symmetric] {
        let b = random_state(&mut rng, kind);
        let report = genericity(&b, tol::GENERICITY);
        println!(
            "\n{kind:?} draw: generic = {}, |f| up to {:.3}",
            report.is_generic(),
            invariants9(&b).max_abs()
        );
    }

    // Rejection sampling guarantees the guards, which downstream
    // canonicalization relies on.
    let b = random_generic_state(&mut rng, StateKind::HermitianDensity, tol::GENERICITY);
    println!(
        "\nguaranteed-generic draw: {}",
        genericity(&b, tol::GENERICITY)
    );
}
