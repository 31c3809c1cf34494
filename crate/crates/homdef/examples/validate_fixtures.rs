//! Validates every shipped structure file and prints the verdicts.
//!
//! Run with `cargo run --example validate_fixtures`.

use homdef::hlr::validate_hlr;
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
        "broken-jacobi.json",
    ];
    let mut failures = Vec::new();
    for file in files {
        let (doc, s, _) = load_structure_file(&fixture(file)).expect("fixture parses");
        let rep = validate_hlr(&s);
        println!(
            "{:<14} algebra dim {}, carrier dim {}: {}",
            doc.name,
            s.algebra().dim,
            s.carrier.dim,
            if rep.passed() { "valid" } else { "INVALID" }
        );
        for v in &rep.violations {
            println!("    {} at {}", v.rule, v.witness);
        }
        if !rep.passed() {
            failures.push(doc.name.clone());
        }
    }
    // the corpus ships exactly one deliberately broken structure
    assert_eq!(failures, vec!["broken-jacobi".to_string()]);
    println!("\nall fixtures behave as documented");
}
