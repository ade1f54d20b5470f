//! What the library does outside the generic locus.
//!
//! Invariants are polynomials, so they evaluate everywhere. But canonical
//! forms and orbit decisions need the four genericity guards, and the
//! famous two-qubit states all fail them: the maximally mixed and Bell
//! states have no polarization at all, and product states kill the
//! derived frame. Each refusal carries the failing guards.

use luinv::{equivalent, genericity, invariants9, load_state_file, tol, Error};

fn main() -> Result<(), Error> {
    let testdata = concat!(env!("CARGO_MANIFEST_DIR"), "/testdata");
    let mut blochs = Vec::new();
    for name in ["maximally_mixed.json", "bell.json", "product.json"] {
        let path = format!("{testdata}/{name}");
        let b = load_state_file(path.as_ref())?.bloch;
        let report = genericity(&b, tol::GENERICITY);
        println!("{name}");
        println!("  genericity: {report}");
        println!(
            "  invariants: {:?}",
            invariants9(&b).as_array().map(|z| z.re)
        );
        blochs.push(b);
    }

    let worked = load_state_file(format!("{testdata}/worked_example.json").as_ref())?.bloch;
    match equivalent(&blochs[1], &worked, tol::EQUIVALENCE) {
        Err(Error::NonGeneric { side, report }) => {
            println!("\nequivalence refused: {side} is not generic ({report})");
        }
        other => println!("\nunexpected outcome: {other:?}"),
    }
    Ok(())
}
