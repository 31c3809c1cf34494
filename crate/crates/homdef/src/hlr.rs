//! Hom-Lie-Rinehart algebras and their modules.
//!
//! A structure is a module `L` over `(A, φ)` with twist `α_L = β`, an
//! alternating bracket given on increasing basis pairs, and an anchor
//! sending each basis element to a `φ`-twisted derivation of `A`. The
//! validator checks, in a fixed order:
//!
//! 1. the carrier module axioms,
//! 2. each anchor value is a `φ`-derivation,
//! 3. `α_L` preserves the bracket,
//! 4. the hom-Jacobi identity on increasing triples,
//! 5. `ρ(α_L x)∘φ = φ∘ρ(x)`,
//! 6. `ρ([x,y])∘φ = ρ(α_L x)ρ(y) − ρ(α_L y)ρ(x)`,
//! 7. `ρ(a·x) = φ(a)·ρ(x)`,
//! 8. the hom-Leibniz rule `[x, a·y] = φ(a)[x,y] + ρ(x)(a)·α_L(y)`.
//!
//! Skewness of the bracket is structural: only `i < j` values are stored.

use crate::algebra::{elem_times_op, is_phi_derivation, validate_module, AlgebraSpec, ModuleSpec};
use crate::linalg::{solve, MatrixQ, SubspaceBasis};
use crate::rat::Rat;
use crate::report::ValidationReport;
use crate::tensor::{increasing_tuples, AltTensor};
use num::Zero;
use std::sync::Arc;
use thiserror::Error;

/// Hom-Lie-Rinehart algebra over the carrier's `(A, φ)`.
///
/// `carrier.beta` plays the role of `α_L`; `bracket` is the alternating
/// structure tensor `[e_i, e_j]` on increasing pairs; `anchor[i]` is the
/// operator `ρ(e_i)` on `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct HlrStructure {
    pub carrier: ModuleSpec,
    pub bracket: AltTensor<Vec<Rat>>,
    pub anchor: Vec<MatrixQ>,
}

impl HlrStructure {
    pub fn new(carrier: ModuleSpec, bracket: AltTensor<Vec<Rat>>, anchor: Vec<MatrixQ>) -> Self {
        assert_eq!(bracket.dim, carrier.dim);
        assert_eq!(bracket.arity, 2);
        assert_eq!(anchor.len(), carrier.dim);
        let adim = carrier.algebra.dim;
        for m in &anchor {
            assert_eq!((m.rows(), m.cols()), (adim, adim));
        }
        HlrStructure { carrier, bracket, anchor }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.carrier.algebra
    }

    /// `α_L` as a matrix.
    pub fn alpha(&self) -> &MatrixQ {
        &self.carrier.beta
    }

    /// Bracket of two arbitrary elements.
    pub fn bracket_of(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.bracket.eval(&[x, y])
    }

    /// Anchor operator of an arbitrary element.
    pub fn anchor_op(&self, x: &[Rat]) -> MatrixQ {
        let adim = self.carrier.algebra.dim;
        let mut acc = MatrixQ::zero(adim, adim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.anchor[i].scale(c));
            }
        }
        acc
    }
}

pub fn validate_hlr(s: &HlrStructure) -> ValidationReport {
    let mut rep = ValidationReport::new("hom-lie-rinehart");
    let module_rep = validate_module(&s.carrier);
    rep.absorb("carrier", module_rep);
    let a = s.algebra().clone();
    let l = s.carrier.dim;
    let alpha = s.alpha().clone();

    for i in 0..l {
        if !is_phi_derivation(&a, 1, &s.anchor[i]) {
            rep.fail("anchor-phi-derivation", format!("i={i}"));
        }
    }
    for pair in increasing_tuples(l, 2) {
        let (i, j) = (pair[0], pair[1]);
        let lhs = alpha.mul_vec(s.bracket.get(&pair));
        let rhs = s.bracket_of(&alpha.col(i), &alpha.col(j));
        if lhs != rhs {
            rep.fail("alpha-bracket-multiplicative", format!("i={i},j={j}"));
        }
    }
    for triple in increasing_tuples(l, 3) {
        let (i, j, k) = (triple[0], triple[1], triple[2]);
        let (ei, ej, ek) = (s.carrier.basis_vec(i), s.carrier.basis_vec(j), s.carrier.basis_vec(k));
        let mut acc = s.bracket_of(&alpha.mul_vec(&ei), &s.bracket_of(&ej, &ek));
        let t2 = s.bracket_of(&alpha.mul_vec(&ej), &s.bracket_of(&ek, &ei));
        let t3 = s.bracket_of(&alpha.mul_vec(&ek), &s.bracket_of(&ei, &ej));
        for idx in 0..l {
            acc[idx] = &acc[idx] + &t2[idx] + &t3[idx];
        }
        if acc.iter().any(|x| !x.is_zero()) {
            rep.fail("hom-jacobi", format!("i={i},j={j},k={k}"));
        }
    }
    for i in 0..l {
        let lhs = s.anchor_op(&alpha.col(i)).mul_mat(&a.phi);
        let rhs = a.phi.mul_mat(&s.anchor[i]);
        if lhs != rhs {
            rep.fail("anchor-phi-intertwine", format!("i={i}"));
        }
    }
    for pair in increasing_tuples(l, 2) {
        let (i, j) = (pair[0], pair[1]);
        let lhs = s.anchor_op(s.bracket.get(&pair)).mul_mat(&a.phi);
        let rhs = s
            .anchor_op(&alpha.col(i))
            .mul_mat(&s.anchor[j])
            .sub(&s.anchor_op(&alpha.col(j)).mul_mat(&s.anchor[i]));
        if lhs != rhs {
            rep.fail("anchor-representation", format!("i={i},j={j}"));
        }
    }
    for k in 0..a.dim {
        let phik = a.phi.col(k);
        for i in 0..l {
            let ax = s.carrier.act(&a.basis_vec(k), &s.carrier.basis_vec(i));
            let lhs = s.anchor_op(&ax);
            let rhs = elem_times_op(&a, &phik, &s.anchor[i]);
            if lhs != rhs {
                rep.fail("anchor-function-linear", format!("a={k},x={i}"));
            }
        }
    }
    for i in 0..l {
        for j in 0..l {
            for k in 0..a.dim {
                let ej = s.carrier.basis_vec(j);
                let ay = s.carrier.act(&a.basis_vec(k), &ej);
                let lhs = s.bracket_of(&s.carrier.basis_vec(i), &ay);
                let bij = s.bracket_of(&s.carrier.basis_vec(i), &ej);
                let mut rhs = s.carrier.act(&a.phi.col(k), &bij);
                let rho_a = s.anchor[i].col(k);
                let corr = s.carrier.act(&rho_a, &alpha.col(j));
                for (r, c) in rhs.iter_mut().zip(&corr) {
                    *r += c;
                }
                if lhs != rhs {
                    rep.fail("hom-leibniz", format!("x={i},a={k},y={j}"));
                }
            }
        }
    }
    rep
}

#[derive(Debug, Error)]
pub enum HlrError {
    #[error("structures live over different base algebras")]
    BaseMismatch,
    #[error("input fails validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("morphism condition fails: {0} at {1}")]
    BadMorphism(String, String),
    #[error("fibered-product kernel is not {0}-stable (witness {1})")]
    KernelNotStable(String, String),
    #[error("{0}")]
    Unsupported(String),
}

/// Endomorphism data `(φ', α')` of a Lie-Rinehart algebra, used for twisting.
pub struct MorphismPair {
    pub phi: MatrixQ,
    pub alpha: MatrixQ,
}

/// Composition twist: turns an untwisted Lie-Rinehart algebra (`φ = id`,
/// `α_L = id`) and a compatible endomorphism pair into a hom-Lie-Rinehart
/// algebra with bracket `α'∘[−,−]`, anchor `φ'∘ρ`, and twists `(φ', α')`.
pub fn twist_by_morphism(s: &HlrStructure, endo: &MorphismPair) -> Result<HlrStructure, HlrError> {
    let a = s.algebra();
    if s.alpha() != &MatrixQ::identity(s.carrier.dim) || a.phi != MatrixQ::identity(a.dim) {
        return Err(HlrError::Unsupported(
            "twisting starts from an untwisted structure (φ = id, α_L = id)".into(),
        ));
    }
    let base = validate_hlr(s);
    if !base.passed() {
        return Err(HlrError::Invalid(base));
    }
    // φ' must itself be a unital algebra endomorphism.
    let twisted_algebra = AlgebraSpec::new(a.mult.clone(), a.unit.clone(), endo.phi.clone());
    let arep = crate::algebra::validate_algebra(&twisted_algebra);
    if !arep.passed() {
        return Err(HlrError::Invalid(arep));
    }
    let l = s.carrier.dim;
    for pair in increasing_tuples(l, 2) {
        let (i, j) = (pair[0], pair[1]);
        let lhs = endo.alpha.mul_vec(s.bracket.get(&pair));
        let rhs = s.bracket_of(&endo.alpha.col(i), &endo.alpha.col(j));
        if lhs != rhs {
            return Err(HlrError::BadMorphism(
                "α'[x,y] = [α'x, α'y]".into(),
                format!("i={i},j={j}"),
            ));
        }
    }
    for k in 0..a.dim {
        for i in 0..l {
            let ax = s.carrier.act(&a.basis_vec(k), &s.carrier.basis_vec(i));
            let lhs = endo.alpha.mul_vec(&ax);
            let rhs = s.carrier.act(&endo.phi.col(k), &endo.alpha.col(i));
            if lhs != rhs {
                return Err(HlrError::BadMorphism(
                    "α'(a·x) = φ'(a)·α'(x)".into(),
                    format!("a={k},x={i}"),
                ));
            }
        }
    }
    for i in 0..l {
        let mut rho_alpha = MatrixQ::zero(a.dim, a.dim);
        for (t, c) in endo.alpha.col(i).iter().enumerate() {
            if !c.is_zero() {
                rho_alpha = rho_alpha.add(&s.anchor[t].scale(c));
            }
        }
        let lhs = rho_alpha.mul_mat(&endo.phi);
        let rhs = endo.phi.mul_mat(&s.anchor[i]);
        if lhs != rhs {
            return Err(HlrError::BadMorphism(
                "ρ(α'x)∘φ' = φ'∘ρ(x)".into(),
                format!("x={i}"),
            ));
        }
    }
    let algebra = Arc::new(twisted_algebra);
    let carrier = ModuleSpec::new(algebra, s.carrier.action.clone(), endo.alpha.clone());
    let mut bracket = AltTensor::zero(l, 2, vec![Rat::zero(); l]);
    for pair in increasing_tuples(l, 2) {
        bracket.set(&pair, endo.alpha.mul_vec(s.bracket.get(&pair)));
    }
    let anchor = (0..l).map(|i| endo.phi.mul_mat(&s.anchor[i])).collect();
    let out = HlrStructure::new(carrier, bracket, anchor);
    let rep = validate_hlr(&out);
    if !rep.passed() {
        return Err(HlrError::Invalid(rep));
    }
    Ok(out)
}

/// Fibered product `L ×_{Der_φ A} M`: the kernel of `(x, y) ↦ ρ_L(x) − ρ_M(y)`
/// with componentwise structure, provided that kernel is stable under the
/// algebra action, the twists, and the bracket; instability is reported
/// rather than silently restricted away.
pub fn fibered_product(s1: &HlrStructure, s2: &HlrStructure) -> Result<HlrStructure, HlrError> {
    if s1.algebra() != s2.algebra() {
        return Err(HlrError::BaseMismatch);
    }
    for (name, s) in [("first", s1), ("second", s2)] {
        let rep = validate_hlr(s);
        if !rep.passed() {
            let mut r = ValidationReport::new(format!("{name} factor"));
            r.absorb(name, rep);
            return Err(HlrError::Invalid(r));
        }
    }
    let a = s1.algebra().clone();
    let (l1, l2) = (s1.carrier.dim, s2.carrier.dim);
    let total = l1 + l2;
    // columns: flattened ρ_L(e_i) for L-basis, −ρ_M(f_j) for M-basis
    let rows = a.dim * a.dim;
    let diff = MatrixQ::from_fn(rows, total, |r, c| {
        let (ri, ci) = (r / a.dim, r % a.dim);
        if c < l1 {
            s1.anchor[c].at(ri, ci).clone()
        } else {
            -s2.anchor[c - l1].at(ri, ci).clone()
        }
    });
    let kernel = crate::linalg::nullspace_basis(&diff);
    let kmat = kernel.as_columns();
    let in_kernel = |v: &[Rat]| -> Option<Vec<Rat>> { solve(&kmat, v) };

    let split = |v: &[Rat]| (v[..l1].to_vec(), v[l1..].to_vec());
    let joint_act = |k: usize, v: &[Rat]| -> Vec<Rat> {
        let (x, y) = split(v);
        let mut out = s1.carrier.act(&a.basis_vec(k), &x);
        out.extend(s2.carrier.act(&a.basis_vec(k), &y));
        out
    };
    let joint_alpha = |v: &[Rat]| -> Vec<Rat> {
        let (x, y) = split(v);
        let mut out = s1.alpha().mul_vec(&x);
        out.extend(s2.alpha().mul_vec(&y));
        out
    };
    let joint_bracket = |v: &[Rat], w: &[Rat]| -> Vec<Rat> {
        let (x1, y1) = split(v);
        let (x2, y2) = split(w);
        let mut out = s1.bracket_of(&x1, &x2);
        out.extend(s2.bracket_of(&y1, &y2));
        out
    };

    let dim = kernel.dim();
    let mut action_cols: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); a.dim];
    let mut beta_cols: Vec<Vec<Rat>> = Vec::new();
    for (vi, v) in kernel.vectors.iter().enumerate() {
        for k in 0..a.dim {
            let av = joint_act(k, v);
            match in_kernel(&av) {
                Some(coords) => action_cols[k].push(coords),
                None => {
                    return Err(HlrError::KernelNotStable(
                        "A".into(),
                        format!("a={k},v={vi}"),
                    ))
                }
            }
        }
        match in_kernel(&joint_alpha(v)) {
            Some(coords) => beta_cols.push(coords),
            None => return Err(HlrError::KernelNotStable("α".into(), format!("v={vi}"))),
        }
    }
    let mut bracket = AltTensor::zero(dim, 2, vec![Rat::zero(); dim]);
    for pair in increasing_tuples(dim, 2) {
        let bv = joint_bracket(&kernel.vectors[pair[0]], &kernel.vectors[pair[1]]);
        match in_kernel(&bv) {
            Some(coords) => bracket.set(&pair, coords),
            None => {
                return Err(HlrError::KernelNotStable(
                    "bracket".into(),
                    format!("i={},j={}", pair[0], pair[1]),
                ))
            }
        }
    }
    let action: Vec<MatrixQ> = (0..a.dim)
        .map(|k| MatrixQ::from_fn(dim, dim, |r, c| action_cols[k][c][r].clone()))
        .collect();
    let beta = MatrixQ::from_fn(dim, dim, |r, c| beta_cols[c][r].clone());
    let anchor: Vec<MatrixQ> = kernel
        .vectors
        .iter()
        .map(|v| {
            let (x, _) = split(v);
            s1.anchor_op(&x)
        })
        .collect();
    let carrier = ModuleSpec::new(a, action, beta);
    let out = HlrStructure::new(carrier, bracket, anchor);
    let rep = validate_hlr(&out);
    if !rep.passed() {
        return Err(HlrError::Invalid(rep));
    }
    Ok(out)
}

/// Left module over a hom-Lie-Rinehart algebra: a carrier `(M, β)` together
/// with an action tensor `{e_i, f_j}` stored as one operator per `L`-basis
/// element.
#[derive(Clone, Debug, PartialEq)]
pub struct HlrModule {
    pub carrier: ModuleSpec,
    pub action: Vec<MatrixQ>,
}

impl HlrModule {
    /// Action operator of an arbitrary Lie element.
    pub fn action_of(&self, x: &[Rat]) -> MatrixQ {
        let mut acc = MatrixQ::zero(self.carrier.dim, self.carrier.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }
}

/// Checks the left-module conditions over `base`:
/// the pair `(action, β)` represents the hom-Lie algebra, the carrier is a
/// valid `(A, φ)`-module, `{a·X, m} = φ(a)·{X, m}`, and
/// `{X, a·m} = φ(a)·{X, m} + ρ(X)(a)·β(m)`.
pub fn validate_hlr_module(base: &HlrStructure, m: &HlrModule) -> ValidationReport {
    let mut rep = ValidationReport::new("hlr-module");
    rep.absorb("carrier", validate_module(&m.carrier));
    let a = base.algebra().clone();
    let l = base.carrier.dim;
    let alpha = base.alpha();
    let beta = &m.carrier.beta;
    for i in 0..l {
        let lhs = m.action_of(&alpha.col(i)).mul_mat(beta);
        let rhs = beta.mul_mat(&m.action[i]);
        if lhs != rhs {
            rep.fail("representation-intertwine", format!("x={i}"));
        }
    }
    for pair in increasing_tuples(l, 2) {
        let (i, j) = (pair[0], pair[1]);
        let lhs = m.action_of(base.bracket.get(&pair)).mul_mat(beta);
        let rhs = m
            .action_of(&alpha.col(i))
            .mul_mat(&m.action[j])
            .sub(&m.action_of(&alpha.col(j)).mul_mat(&m.action[i]));
        if lhs != rhs {
            rep.fail("representation-bracket", format!("i={i},j={j}"));
        }
    }
    for k in 0..a.dim {
        for i in 0..l {
            let ax = base.carrier.act(&a.basis_vec(k), &base.carrier.basis_vec(i));
            let lhs = m.action_of(&ax);
            let rhs = m.carrier.action_op(&a.phi.col(k)).mul_mat(&m.action[i]);
            if lhs != rhs {
                rep.fail("action-function-linear-left", format!("a={k},x={i}"));
            }
        }
    }
    for i in 0..l {
        for k in 0..a.dim {
            let lhs = m.action[i].mul_mat(&m.carrier.action[k]);
            let first = m.carrier.action_op(&a.phi.col(k)).mul_mat(&m.action[i]);
            let rho_a = base.anchor[i].col(k);
            let second = m.carrier.action_op(&rho_a).mul_mat(beta);
            if lhs != first.add(&second) {
                rep.fail("action-leibniz", format!("x={i},a={k}"));
            }
        }
    }
    rep
}

/// The base algebra `(A, φ)` as a left module over the structure, with the
/// anchor as action and `β = φ`.
pub fn canonical_module(s: &HlrStructure) -> (HlrModule, ValidationReport) {
    let a = s.algebra().clone();
    let carrier = ModuleSpec::new(a.clone(), a.mult.clone(), a.phi.clone());
    let module = HlrModule { carrier, action: s.anchor.clone() };
    let rep = validate_hlr_module(s, &module);
    (module, rep)
}

/// The `α^s`-adjoint module of a hom-Lie algebra (base over `ℚ`):
/// `{x, y} = [α^s(x), y]` on the carrier itself.
pub fn adjoint_representation(s: &HlrStructure, power: i64) -> Result<(HlrModule, ValidationReport), HlrError> {
    if s.algebra().dim != 1 {
        return Err(HlrError::Unsupported(
            "adjoint twisting is defined for structures over the scalars".into(),
        ));
    }
    let l = s.carrier.dim;
    let alpha_s = if power >= 0 {
        s.alpha().pow(power as usize)
    } else {
        let inv = s
            .alpha()
            .inverse()
            .ok_or_else(|| HlrError::Unsupported("negative twist power needs invertible α".into()))?;
        inv.pow((-power) as usize)
    };
    let action: Vec<MatrixQ> = (0..l)
        .map(|i| {
            let src = alpha_s.col(i);
            MatrixQ::from_fn(l, l, |r, c| {
                let v = s.bracket_of(&src, &s.carrier.basis_vec(c));
                v[r].clone()
            })
        })
        .collect();
    let module = HlrModule { carrier: s.carrier.clone(), action };
    let rep = validate_hlr_module(s, &module);
    Ok((module, rep))
}

/// Builds the twisted-derivation structure of `(A, φ)` for invertible `φ`:
/// carrier `L = Der_φ(A)` with its pointwise `A`-action, twist and anchor
/// both `D ↦ φ∘D∘φ^{-1}`, and bracket
/// `[D₁, D₂] = φ∘(D₁∘φ^{-1}∘D₂ − D₂∘φ^{-1}∘D₁)∘φ^{-1}`.
///
/// Also returns the chosen basis of `Der_φ(A)` so callers can interpret
/// carrier coordinates as operators.
pub fn der_phi_structure(a: &Arc<AlgebraSpec>) -> Result<(HlrStructure, Vec<MatrixQ>), HlrError> {
    let phi_inv = a
        .phi
        .inverse()
        .ok_or_else(|| HlrError::Unsupported("the twisted-derivation structure needs invertible φ".into()))?;
    let (ders, basis) = crate::algebra::phi_derivations_basis(a, 1);
    let der_mats: Vec<MatrixQ> = ders.into_iter().map(|d| d.matrix).collect();
    let ldim = der_mats.len();
    let flat_basis = SubspaceBasis {
        ambient_dim: a.dim * a.dim,
        vectors: basis.vectors.clone(),
    };
    let coords_of = |op: &MatrixQ| -> Option<Vec<Rat>> { flat_basis.coordinates(&op.flatten()) };

    let ad = |op: &MatrixQ| a.phi.mul_mat(op).mul_mat(&phi_inv);
    let mut action = Vec::new();
    for k in 0..a.dim {
        let mut cols = Vec::new();
        for d in &der_mats {
            let prod = a.mult[k].mul_mat(d);
            cols.push(coords_of(&prod).expect("A-action preserves the twisted-derivation space"));
        }
        action.push(MatrixQ::from_fn(ldim, ldim, |r, c| cols[c][r].clone()));
    }
    let mut beta_cols = Vec::new();
    for d in &der_mats {
        beta_cols.push(coords_of(&ad(d)).expect("conjugation preserves the twisted-derivation space"));
    }
    let beta = MatrixQ::from_fn(ldim, ldim, |r, c| beta_cols[c][r].clone());
    let carrier = ModuleSpec::new(a.clone(), action, beta);
    let mut bracket = AltTensor::zero(ldim, 2, vec![Rat::zero(); ldim]);
    for pair in increasing_tuples(ldim, 2) {
        let (d1, d2) = (&der_mats[pair[0]], &der_mats[pair[1]]);
        let c = d1.mul_mat(&phi_inv).mul_mat(d2).sub(&d2.mul_mat(&phi_inv).mul_mat(d1));
        let val = ad(&c);
        bracket.set(&pair, coords_of(&val).expect("bracket preserves the twisted-derivation space"));
    }
    let anchor: Vec<MatrixQ> = der_mats.iter().map(&ad).collect();
    let out = HlrStructure::new(carrier, bracket, anchor);
    let rep = validate_hlr(&out);
    if !rep.passed() {
        return Err(HlrError::Invalid(rep));
    }
    Ok((out, der_mats))
}

#[cfg(test)]
pub mod fixtures {
    use super::*;
    use crate::algebra::fixtures::rationals;
    use crate::rat::rat;

    /// A Lie algebra over `ℚ` (untwisted, anchor zero) from bracket data.
    pub fn lie_algebra(dim: usize, brackets: &[((usize, usize), Vec<i64>)]) -> HlrStructure {
        let a = rationals();
        let carrier = ModuleSpec::new(a.clone(), vec![MatrixQ::identity(dim)], MatrixQ::identity(dim));
        let mut bracket = AltTensor::zero(dim, 2, vec![Rat::zero(); dim]);
        for ((i, j), v) in brackets {
            bracket.set(&[*i, *j], v.iter().map(|&x| rat(x)).collect());
        }
        let anchor = vec![MatrixQ::zero(1, 1); dim];
        HlrStructure::new(carrier, bracket, anchor)
    }

    /// `sl₂` in the basis `(e, f, h)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2() -> HlrStructure {
        lie_algebra(
            3,
            &[
                ((0, 1), vec![0, 0, 1]),
                ((0, 2), vec![-2, 0, 0]),
                ((1, 2), vec![0, 2, 0]),
            ],
        )
    }

    /// Heisenberg: `[e₁,e₂] = e₃`.
    pub fn heisenberg() -> HlrStructure {
        lie_algebra(3, &[((0, 1), vec![0, 0, 1])])
    }

    /// `sl₂` with the bracket broken: `[e,f] = e` instead of `h`.
    pub fn broken_sl2() -> HlrStructure {
        lie_algebra(
            3,
            &[
                ((0, 1), vec![1, 0, 0]),
                ((0, 2), vec![-2, 0, 0]),
                ((1, 2), vec![0, 2, 0]),
            ],
        )
    }

    /// The `sl₂` automorphism `α(e) = 2e, α(f) = f/2, α(h) = h`.
    pub fn sl2_automorphism() -> MatrixQ {
        let mut m = MatrixQ::zero(3, 3);
        *m.at_mut(0, 0) = rat(2);
        *m.at_mut(1, 1) = crate::rat::ratq(1, 2);
        *m.at_mut(2, 2) = rat(1);
        m
    }

    /// Twisted `sl₂` by composition with `α`.
    pub fn twisted_sl2() -> HlrStructure {
        twist_by_morphism(
            &sl2(),
            &MorphismPair { phi: MatrixQ::identity(1), alpha: sl2_automorphism() },
        )
        .expect("twisting sl₂ by an automorphism succeeds")
    }
}
