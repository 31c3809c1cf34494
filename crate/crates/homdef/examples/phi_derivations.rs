//! Twisted derivations of truncated polynomial algebras.
//!
//! Builds `ℚ[x]/(xᵏ)` with the endomorphism `φ(x) = c·x` and prints a basis
//! of the `φ`-derivations — maps with `d(ab) = d(a)φ(b) + φ(a)d(b)` — for a
//! few choices of `k` and `c`, along with the `φⁿ`-derivation spaces that
//! serve as symbol coefficients in higher degrees.
//!
//! Run with `cargo run --example phi_derivations`.

use homdef::algebra::{phi_derivations_basis, AlgebraSpec};
use homdef::linalg::MatrixQ;
use homdef::rat::{rat, ratq, Rat};
use num::Zero;

/// `ℚ[x]/(xᵏ)` with basis `1, x, …, x^{k−1}` and `φ(x) = c·x`.
fn truncated(k: usize, c: Rat) -> AlgebraSpec {
    let mult = (0..k)
        .map(|i| {
            MatrixQ::from_fn(k, k, |r, s| if r == i + s { rat(1) } else { rat(0) })
        })
        .collect();
    let mut unit = vec![Rat::zero(); k];
    unit[0] = rat(1);
    let phi = MatrixQ::from_fn(k, k, |r, s| {
        if r == s {
            num::pow::pow(c.clone(), r)
        } else {
            rat(0)
        }
    });
    AlgebraSpec::new(mult, unit, phi)
}

fn main() {
    for (k, c) in [(2, rat(1)), (3, rat(2)), (4, rat(3)), (3, ratq(1, 2))] {
        let a = truncated(k, c.clone());
        println!("Q[x]/(x^{k}) with phi(x) = {c}x");
        for n in 0..3 {
            let (ders, basis) = phi_derivations_basis(&a, n);
            println!("  phi^{n}-derivations: dimension {}", basis.dim());
            for d in &ders {
                // a derivation is determined by its value on x
                let dx = d.matrix.col(1);
                let pretty: Vec<String> = dx.iter().map(homdef::rat::fmt_rat).collect();
                println!("    d(x) = [{}]", pretty.join(", "));
            }
        }
    }

    // the untwisted case recovers the classical count for Q[x]/(x^2)
    let a = truncated(2, rat(1));
    let (_, basis) = phi_derivations_basis(&a, 1);
    assert_eq!(basis.dim(), 1);
    println!("\nclassical check: Der(Q[x]/(x^2)) is one-dimensional");
}
