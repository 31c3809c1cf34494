//! Commutative algebras with an endomorphism, their modules, and twisted
//! derivations, all given by structure constants over `ℚ`.

use crate::linalg::{nullspace_basis, MatrixQ, SubspaceBasis};
use crate::rat::Rat;
use crate::report::ValidationReport;
use crate::tensor::AltValue;
use num::Zero;
use std::sync::Arc;

/// Finite-dimensional commutative unital `ℚ`-algebra `A` with an algebra
/// endomorphism `φ`.
///
/// `mult[i]` is the matrix of multiplication by the `i`-th basis element, so
/// the product of coordinate vectors `u·v` is `mult_op(u)·v`. `unit` holds
/// the coordinates of `1` and `phi` the matrix of `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub mult: Vec<MatrixQ>,
    pub unit: Vec<Rat>,
    pub phi: MatrixQ,
}

impl AlgebraSpec {
    pub fn new(mult: Vec<MatrixQ>, unit: Vec<Rat>, phi: MatrixQ) -> Self {
        let dim = unit.len();
        assert_eq!(mult.len(), dim);
        for m in &mult {
            assert_eq!((m.rows(), m.cols()), (dim, dim));
        }
        assert_eq!((phi.rows(), phi.cols()), (dim, dim));
        AlgebraSpec { dim, mult, unit, phi }
    }

    /// Multiplication-by-`u` operator for an arbitrary element `u`.
    pub fn mult_op(&self, u: &[Rat]) -> MatrixQ {
        assert_eq!(u.len(), self.dim);
        let mut acc = MatrixQ::zero(self.dim, self.dim);
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.mult[i].scale(c));
            }
        }
        acc
    }

    /// Product of two elements in coordinates.
    pub fn mul(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.mult_op(u).mul_vec(v)
    }

    /// `φ` applied to an element.
    pub fn phi_apply(&self, u: &[Rat]) -> Vec<Rat> {
        self.phi.mul_vec(u)
    }

    /// Coordinates of the `i`-th basis element.
    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = crate::rat::rat(1);
        v
    }
}

/// Checks commutativity, associativity, the unit law, and that `φ` is a
/// unital algebra endomorphism. Witnesses name basis indices.
pub fn validate_algebra(a: &AlgebraSpec) -> ValidationReport {
    let mut rep = ValidationReport::new("algebra");
    let n = a.dim;
    for i in 0..n {
        for j in i + 1..n {
            let ij = a.mult[i].col(j);
            let ji = a.mult[j].col(i);
            if ij != ji {
                rep.fail("commutativity", format!("i={i},j={j}"));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let aij = a.mult[i].col(j);
            for k in 0..n {
                let lhs = a.mul(&aij, &a.basis_vec(k));
                let rhs = a.mult[i].mul_vec(&a.mult[j].col(k));
                if lhs != rhs {
                    rep.fail("associativity", format!("i={i},j={j},k={k}"));
                }
            }
        }
    }
    if a.mult_op(&a.unit) != MatrixQ::identity(n) {
        rep.fail("unit", "1·a ≠ a".to_string());
    }
    if a.phi_apply(&a.unit) != a.unit {
        rep.fail("phi-unital", "φ(1) ≠ 1".to_string());
    }
    for i in 0..n {
        for j in i..n {
            let lhs = a.phi_apply(&a.mult[i].col(j));
            let rhs = a.mul(&a.phi.col(i), &a.phi.col(j));
            if lhs != rhs {
                rep.fail("phi-multiplicative", format!("i={i},j={j}"));
            }
        }
    }
    rep
}

/// Finite-dimensional `A`-module `M` with a `φ`-compatible twist `β`.
///
/// `action[i]` is the matrix of the `i`-th algebra basis element acting on
/// `M`; `beta` must satisfy `β(a·x) = φ(a)·β(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub algebra: Arc<AlgebraSpec>,
    pub dim: usize,
    pub action: Vec<MatrixQ>,
    pub beta: MatrixQ,
}

impl ModuleSpec {
    pub fn new(algebra: Arc<AlgebraSpec>, action: Vec<MatrixQ>, beta: MatrixQ) -> Self {
        let dim = beta.rows();
        assert_eq!(action.len(), algebra.dim);
        for m in &action {
            assert_eq!((m.rows(), m.cols()), (dim, dim));
        }
        assert_eq!((beta.rows(), beta.cols()), (dim, dim));
        ModuleSpec { algebra, dim, action, beta }
    }

    /// Action operator of an arbitrary algebra element.
    pub fn action_op(&self, u: &[Rat]) -> MatrixQ {
        assert_eq!(u.len(), self.algebra.dim);
        let mut acc = MatrixQ::zero(self.dim, self.dim);
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }

    /// `a·x` for an algebra element `a` and module element `x`.
    pub fn act(&self, a: &[Rat], x: &[Rat]) -> Vec<Rat> {
        self.action_op(a).mul_vec(x)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = crate::rat::rat(1);
        v
    }
}

/// Checks the module axioms `(ab)·x = a·(b·x)`, `1·x = x`, and the twist
/// compatibility `β(a·x) = φ(a)·β(x)`. Assumes the algebra itself validates.
pub fn validate_module(m: &ModuleSpec) -> ValidationReport {
    let mut rep = ValidationReport::new("module");
    let a = &m.algebra;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let prod = a.mult[i].col(j);
            let lhs = m.action_op(&prod);
            let rhs = m.action[i].mul_mat(&m.action[j]);
            if lhs != rhs {
                rep.fail("action-associativity", format!("i={i},j={j}"));
            }
        }
    }
    if m.action_op(&a.unit) != MatrixQ::identity(m.dim) {
        rep.fail("action-unital", "1·x ≠ x".to_string());
    }
    for i in 0..a.dim {
        let lhs = m.beta.mul_mat(&m.action[i]);
        let rhs = m.action_op(&a.phi.col(i)).mul_mat(&m.beta);
        if lhs != rhs {
            rep.fail("beta-function-linearity", format!("a-basis i={i}"));
        }
    }
    rep
}

/// A linear operator `δ` on `A` satisfying the twisted Leibniz rule
/// `δ(ab) = φⁿ(a)·δ(b) + φⁿ(b)·δ(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDerivation {
    pub degree_power: usize,
    pub matrix: MatrixQ,
}

/// Residual of the `φⁿ`-derivation law for an operator candidate, listed over
/// basis pairs `i ≤ j`; all-zero exactly when `d` is a `φⁿ`-derivation.
pub(crate) fn phi_derivation_residual(a: &AlgebraSpec, n: usize, d: &MatrixQ) -> Vec<Rat> {
    let phin = a.phi.pow(n);
    let mut out = Vec::new();
    for i in 0..a.dim {
        for j in i..a.dim {
            let prod = a.mult[i].col(j);
            let lhs = d.mul_vec(&prod);
            let mut rhs = a.mul(&phin.col(i), &d.col(j));
            let other = a.mul(&phin.col(j), &d.col(i));
            for (r, o) in rhs.iter_mut().zip(&other) {
                *r += o;
            }
            for (l, r) in lhs.into_iter().zip(rhs) {
                out.push(l - r);
            }
        }
    }
    out
}

/// Whether `d` satisfies the `φⁿ`-derivation law.
pub fn is_phi_derivation(a: &AlgebraSpec, n: usize, d: &MatrixQ) -> bool {
    phi_derivation_residual(a, n, d).iter().all(|x| x.is_zero())
}

/// Basis of the space of `φⁿ`-derivations of `A`, assembled as the exact
/// nullspace of the Leibniz constraints on operator entries.
///
/// Every basis element annihilates the unit; this is asserted rather than
/// imposed, since it follows from the Leibniz law.
pub fn phi_derivations_basis(a: &AlgebraSpec, n: usize) -> (Vec<PhiDerivation>, SubspaceBasis) {
    let unknowns = a.dim * a.dim;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut d = MatrixQ::zero(a.dim, a.dim);
        *d.at_mut(u / a.dim, u % a.dim) = crate::rat::rat(1);
        cols.push(phi_derivation_residual(a, n, &d));
    }
    let rows = cols.first().map_or(0, |c| c.len());
    let m = MatrixQ::from_fn(rows, unknowns, |r, c| cols[c][r].clone());
    let basis = nullspace_basis(&m);
    let ders = basis
        .vectors
        .iter()
        .map(|v| {
            let mat = MatrixQ::from_fn(a.dim, a.dim, |r, c| v[r * a.dim + c].clone());
            let unit_image = mat.mul_vec(&a.unit);
            assert!(
                unit_image.iter().all(|x| x.is_zero()),
                "a twisted derivation must annihilate the unit"
            );
            PhiDerivation { degree_power: n, matrix: mat }
        })
        .collect();
    (ders, basis)
}

/// Pointwise product `u·δ` of an algebra element and an operator,
/// `(u·δ)(b) = u·δ(b)`.
pub fn elem_times_op(a: &AlgebraSpec, u: &[Rat], op: &MatrixQ) -> MatrixQ {
    a.mult_op(u).mul_mat(op)
}

/// `AltValue` shim so algebra elements flow through the tensor machinery.
pub fn zero_elem(dim: usize) -> Vec<Rat> {
    vec![Rat::zero(); dim]
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Flattened coordinates of an operator-valued or vector-valued quantity.
pub fn flat<T: AltValue>(v: &T) -> Vec<Rat> {
    v.flat()
}
