//! Order-by-order extension of deformation jets.
//!
//! A first-order term extends to the next order exactly when its obstruction
//! class vanishes. The shipped jet over the semisimple structure extends as
//! far as asked (all classes vanish there); the jet over the 3-dimensional
//! abelian structure is stopped at order 2 by a nonzero class, and the
//! report pins down its coordinates.
//!
//! Run with `cargo run --example deform_extend`.

use homdef::deform::{check_jet, extend};
use homdef::io::{load_jet_file, load_structure_file};
use homdef::rat::fmt_rat;
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() {
    // a jet that extends indefinitely
    let (sdoc, s, _) = load_structure_file(&fixture("sl2.json")).expect("fixture parses");
    let (_, jet) = load_jet_file(&fixture("sl2-jet.json"), &sdoc.name, &s).expect("jet parses");
    assert!(check_jet(&jet).passed);
    let mut current = jet;
    for _ in 0..3 {
        let (ob, next) = extend(&current);
        println!(
            "{}: order {} obstruction: cocycle {}, class vanishes {}",
            sdoc.name, ob.target_order, ob.is_cocycle, ob.class_vanishes
        );
        current = next.expect("class vanishes, so a next term exists");
        assert!(check_jet(&current).passed);
    }
    println!("  extended to order {}\n", current.order());

    // a jet stopped by its obstruction class
    let (sdoc, s, _) = load_structure_file(&fixture("abelian-3.json")).expect("fixture parses");
    let (_, jet) =
        load_jet_file(&fixture("obstructed-jet.json"), &sdoc.name, &s).expect("jet parses");
    assert!(check_jet(&jet).passed, "order 1 is unconstrained over an abelian base");
    let (ob, next) = extend(&jet);
    assert!(ob.is_cocycle && !ob.class_vanishes && next.is_none());
    let coords: Vec<String> =
        ob.class_coordinates.as_ref().unwrap().iter().map(fmt_rat).collect();
    println!(
        "{}: order {} obstruction class is nonzero: [{}] over {} classes",
        sdoc.name,
        ob.target_order,
        coords.join(", "),
        ob.h3.dim
    );
    println!("  no second-order term exists for this jet");
}
