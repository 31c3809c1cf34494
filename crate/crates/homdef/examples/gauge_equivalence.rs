//! Gauge transforms of jets and what they preserve.
//!
//! Transforming a jet by a formal family `Φ_t = id + φ₁t + φ₂t² + …` of
//! module automorphisms keeps the deformation equations intact, shifts the
//! first-order term by a coboundary (so its class is unchanged), and a
//! coboundary first-order term can be removed entirely by the transform
//! built from its primitive.
//!
//! Run with `cargo run --example gauge_equivalence`.

use homdef::complex::{cochain_basis, delta, delta_matrix};
use homdef::deform::{
    apply_equivalence, check_jet, equivalence_transform_space, DeformationJet,
};
use homdef::io::load_structure_file;
use homdef::linalg::solve;
use homdef::rat::rat;
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() {
    let (doc, s, _) = load_structure_file(&fixture("twisted-sl2.json")).expect("fixture parses");
    let m = &s.carrier;

    let dirs = equivalence_transform_space(m);
    println!(
        "{}: {} admissible transform directions (must commute with the twist)",
        doc.name,
        dirs.len()
    );

    // start from a cocycle first-order term and transform it
    let m1 = cochain_basis(&s, 2)
        .into_iter()
        .find(|b| delta(&s, b).is_zero())
        .expect("a cocycle basis pair exists");
    let jet = DeformationJet::new(s.clone(), vec![m1.clone()]);
    assert!(check_jet(&jet).passed);

    let phi1 = dirs[0].add(&dirs[1].scale(&rat(3)));
    let moved = apply_equivalence(&jet, &[phi1]).expect("admissible transform");
    assert!(check_jet(&moved).passed, "the equations survive the transform");

    // the shift is a coboundary: m̃₁ − m₁ lies in the image of the differential
    let basis1 = cochain_basis(&s, 1);
    let dmat1 = delta_matrix(&s, 1, &basis1);
    let shift = moved.terms[0].add(&m1.scale(&rat(-1)));
    let in_image = solve(&dmat1, &shift.flat()).is_some();
    println!("first-order term shifted by a coboundary: {in_image}");
    assert!(in_image);

    // a purely coboundary term is gauged away by its primitive
    let e = cochain_basis(&s, 1)
        .into_iter()
        .find(|b| !delta(&s, b).is_zero())
        .expect("a non-cocycle degree-0 pair exists");
    let m1 = delta(&s, &e);
    let jet = DeformationJet::new(s.clone(), vec![m1]);
    let killer = e.as_linear_map();
    let killed = apply_equivalence(&jet, &[killer]).expect("admissible transform");
    assert!(killed.terms[0].is_zero());
    println!("coboundary first-order term removed by its primitive transform");
}
