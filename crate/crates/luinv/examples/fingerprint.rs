//! Compute the invariant fingerprint of a two-qubit state.
//!
//! The nine numbers printed here determine the state up to local
//! unitaries (for generic states): two states are locally equivalent
//! exactly when their fingerprints agree.
//!
//! Run with `cargo run --example fingerprint [-- path/to/state.json]`;
//! without an argument it uses the bundled worked example.

use luinv::{genericity, invariants9, load_state_file, tol};

fn main() -> Result<(), luinv::Error> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/testdata/worked_example.json").into()
    });
    let loaded = load_state_file(path.as_ref())?;
    let b = &loaded.bloch;

    println!("state: {path}");
    println!("  u1 = {:?}", b.u1.as_array().map(|z| z.re));
    println!("  u2 = {:?}", b.u2.as_array().map(|z| z.re));
    for row in &b.c.m {
        println!("  C row {:?}", row.map(|z| z.re));
    }

    let report = genericity(b, tol::GENERICITY);
    println!("genericity: {report}");

    let f = invariants9(b);
    println!("invariants:");
    for (k, value) in f.as_array().iter().enumerate() {
        // +0.0 folds the sign of a negative zero away for display.
        if value.im.abs() < 1e-12 {
            println!("  f{} = {}", k + 1, value.re + 0.0);
        } else {
            println!("  f{} = {} + {}i", k + 1, value.re, value.im);
        }
    }
    Ok(())
}
