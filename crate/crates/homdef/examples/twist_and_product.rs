//! Building new structures from old: composition twists and fibered products.
//!
//! Twisting the untwisted semisimple structure by one of its automorphisms
//! reproduces the shipped twisted fixture exactly. The fibered product over
//! the twisted derivations of the base glues two structures along their
//! anchors; with injective anchors it carves out the diagonal.
//!
//! Run with `cargo run --example twist_and_product`.

use homdef::hlr::{fibered_product, twist_by_morphism, validate_hlr, MorphismPair};
use homdef::io::load_structure_file;
use homdef::linalg::MatrixQ;
use homdef::rat::{rat, ratq};
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() {
    let (_, sl2, _) = load_structure_file(&fixture("sl2.json")).expect("fixture parses");
    let (_, twisted, _) = load_structure_file(&fixture("twisted-sl2.json")).expect("fixture parses");

    // diag(2, 1/2, 1) is a bracket automorphism of the semisimple structure
    let endo = MorphismPair {
        phi: MatrixQ::identity(1),
        alpha: MatrixQ::from_fn(3, 3, |r, c| match (r, c) {
            (0, 0) => rat(2),
            (1, 1) => ratq(1, 2),
            (2, 2) => rat(1),
            _ => rat(0),
        }),
    };
    let built = twist_by_morphism(&sl2, &endo).expect("automorphism twists");
    assert_eq!(built, twisted, "the twist reproduces the shipped fixture");
    println!("twisting the untwisted structure reproduces the twisted fixture");

    // fibered product with zero anchors: everything pairs with everything
    let (_, ab2, _) = load_structure_file(&fixture("abelian-2.json")).unwrap();
    let (_, nab2, _) = load_structure_file(&fixture("nonabelian-2.json")).unwrap();
    let p = fibered_product(&nab2, &ab2).expect("kernel is stable");
    assert!(validate_hlr(&p).passed());
    println!(
        "product of the dim-2 structures over zero anchors: carrier dim {} (everything glues)",
        p.carrier.dim
    );
    assert_eq!(p.carrier.dim, 4);

    // with an injective anchor the product against itself is the diagonal
    let (_, dp, _) = load_structure_file(&fixture("der-phi-x3.json")).unwrap();
    let diag = fibered_product(&dp, &dp).expect("kernel is stable");
    assert!(validate_hlr(&diag).passed());
    println!(
        "product of the twisted-derivation structure with itself: carrier dim {} (the diagonal)",
        diag.carrier.dim
    );
    assert_eq!(diag.carrier.dim, 2);
}
