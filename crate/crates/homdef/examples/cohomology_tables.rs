//! Deformation cohomology tables for the shipped structures.
//!
//! Prints cochain, cocycle, coboundary, and class dimensions in degrees 0–3
//! for every valid fixture, and spells out a few facts the numbers witness:
//! the semisimple structure has no cohomology at all, while its twisted
//! variant keeps a one-dimensional first cohomology.
//!
//! Run with `cargo run --example cohomology_tables`.

use homdef::complex::cohomology;
use homdef::io::load_structure_file;
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() {
    let files = [
        "sl2.json",
        "twisted-sl2.json",
        "heisenberg.json",
        "abelian-2.json",
        "abelian-3.json",
        "nonabelian-2.json",
        "der-phi-x3.json",
        "free-rank-1.json",
        "free-rank-2.json",
    ];
    for file in files {
        let (doc, s, _) = load_structure_file(&fixture(file)).expect("fixture parses");
        println!("{}", doc.name);
        println!("  degree  cochains  cocycles  coboundaries  classes");
        for n in 0..=3 {
            let c = cohomology(&s, n);
            println!(
                "  {:>6}  {:>8}  {:>8}  {:>12}  {:>7}",
                n, c.cochain_dim, c.cocycle_dim, c.coboundary_dim, c.dim
            );
        }
    }

    let (_, sl2, _) = load_structure_file(&fixture("sl2.json")).unwrap();
    assert!((1..=3).all(|n| cohomology(&sl2, n).dim == 0));

    let (_, tw, _) = load_structure_file(&fixture("twisted-sl2.json")).unwrap();
    assert_eq!(cohomology(&tw, 1).dim, 1);
    assert_eq!(cohomology(&tw, 2).dim, 0);

    println!("\nsemisimple: no classes in degrees 1-3; twisted variant: one class in degree 1");
}
