//! Multiderivations of a twisted module and their graded bracket.
//!
//! A degree-`n` multiderivation of an `(A, φ)`-module `(M, β)` is a pair
//! `(D, σ)`: an alternating `(n+1)`-linear map `D : Λ^{n+1}M → M` together
//! with its symbol, an alternating `n`-linear map `σ : ΛⁿM → End(A)` whose
//! values are `φⁿ`-twisted derivations. The defining conditions, in the
//! fixed order used everywhere (validation, space assembly, closure checks):
//!
//! 1. `D(βx_0, …, βx_n) = β(D(x_0, …, x_n))`
//! 2. `σ(βx_1, …, βx_n)∘φ = φ∘σ(x_1, …, x_n)`
//! 3. `σ(x_1, …, a·x_n) = φⁿ(a)·σ(x_1, …, x_n)`
//! 4. `D(x_0, …, a·x_n) = φⁿ(a)·D(x_0, …, x_n) + σ(x_0, …, x_{n−1})(a)·βⁿ(x_n)`
//! 5. each `σ(x_1, …, x_n)` obeys the `φⁿ`-Leibniz rule on `A`
//!
//! Conditions 3 and 4 are enumerated with a strictly increasing prefix, the
//! last slot running over *all* basis indices (the rescaled slot holds a
//! general vector, so repeats are meaningful constraints), and the algebra
//! element running over the `A`-basis.
//!
//! The bracket of degrees `p` and `q` lands in degree `p+q`:
//! `[D₁,D₂] = (−1)^{pq} D₁∘D₂ − D₂∘D₁` on values, with the circle product
//! summing over `(q+1, p)`-shuffles, and the symbol combining the two
//! mixed products `σ_{Dᵢ}⊙D_j` with the operator-level pairing `{σ₁,σ₂}`.

use crate::algebra::{elem_times_op, phi_derivation_residual, ModuleSpec};
use crate::hlr::HlrStructure;
use crate::linalg::{nullspace_basis, MatrixQ};
use crate::rat::{rat, Rat};
use crate::report::ValidationReport;
use crate::tensor::{binomial, increasing_tuples, shuffles, AltTensor, AltValue};
use num::Zero;

/// A degree-`n` multiderivation pair `(D, σ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mder {
    pub degree: usize,
    pub value: AltTensor<Vec<Rat>>,
    pub symbol: AltTensor<MatrixQ>,
}

impl Mder {
    pub fn zero(m: &ModuleSpec, degree: usize) -> Self {
        let adim = m.algebra.dim;
        Mder {
            degree,
            value: AltTensor::zero(m.dim, degree + 1, vec![Rat::zero(); m.dim]),
            symbol: AltTensor::zero(m.dim, degree, MatrixQ::zero(adim, adim)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Mder {
            degree: self.degree,
            value: self.value.add(&other.value),
            symbol: self.symbol.add(&other.symbol),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Mder { degree: self.degree, value: self.value.scale(c), symbol: self.symbol.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.symbol.is_zero()
    }

    /// The matrix of a degree-0 pair's value part.
    pub fn as_linear_map(&self) -> MatrixQ {
        assert_eq!(self.degree, 0);
        let dim = self.value.dim;
        MatrixQ::from_fn(dim, dim, |r, c| self.value.get(&[c])[r].clone())
    }

    /// Pair coordinates: all value coordinates (tuple-major), then all symbol
    /// operator entries (tuple-major, row-major within an operator).
    pub fn flat(&self) -> Vec<Rat> {
        let mut out = self.value.flatten();
        out.extend(self.symbol.flatten());
        out
    }
}

/// Length of the pair coordinate vector of a degree-`n` multiderivation.
pub fn mder_flat_len(m: &ModuleSpec, degree: usize) -> usize {
    let adim = m.algebra.dim;
    binomial(m.dim, degree + 1) * m.dim + binomial(m.dim, degree) * adim * adim
}

/// Rebuilds a pair from its coordinates (inverse of [`Mder::flat`]).
pub fn mder_from_flat(m: &ModuleSpec, degree: usize, flat: &[Rat]) -> Mder {
    let (dim, adim) = (m.dim, m.algebra.dim);
    let vcount = binomial(dim, degree + 1);
    let scount = binomial(dim, degree);
    assert_eq!(flat.len(), vcount * dim + scount * adim * adim);
    let values: Vec<Vec<Rat>> = (0..vcount).map(|i| flat[i * dim..(i + 1) * dim].to_vec()).collect();
    let off = vcount * dim;
    let ops: Vec<MatrixQ> = (0..scount)
        .map(|i| {
            let chunk = &flat[off + i * adim * adim..off + (i + 1) * adim * adim];
            MatrixQ::from_fn(adim, adim, |r, c| chunk[r * adim + c].clone())
        })
        .collect();
    Mder {
        degree,
        value: AltTensor::from_values(dim, degree + 1, values, vec![Rat::zero(); dim]),
        symbol: AltTensor::from_values(dim, degree, ops, MatrixQ::zero(adim, adim)),
    }
}

/// Residuals of the five defining conditions for a candidate pair, as
/// `(rule, witness, residual)` blocks in the fixed order. The pair is a
/// multiderivation exactly when every residual is zero; the concatenated
/// residuals are also the constraint rows used to assemble the space.
fn condition_blocks(
    m: &ModuleSpec,
    degree: usize,
    value: &AltTensor<Vec<Rat>>,
    symbol: &AltTensor<MatrixQ>,
) -> Vec<(&'static str, String, Vec<Rat>)> {
    let a = &m.algebra;
    let (dim, n) = (m.dim, degree);
    let phin = a.phi.pow(n);
    let beta_n = m.beta.pow(n);
    let mut out = Vec::new();

    for t in increasing_tuples(dim, n + 1) {
        let cols: Vec<Vec<Rat>> = t.iter().map(|&i| m.beta.col(i)).collect();
        let refs: Vec<&[Rat]> = cols.iter().map(|v| v.as_slice()).collect();
        let lhs = value.eval(&refs);
        let rhs = m.beta.mul_vec(value.get(&t));
        let res: Vec<Rat> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
        out.push(("value-twist-equivariance", fmt_tuple(&t), res));
    }
    for t in increasing_tuples(dim, n) {
        let cols: Vec<Vec<Rat>> = t.iter().map(|&i| m.beta.col(i)).collect();
        let refs: Vec<&[Rat]> = cols.iter().map(|v| v.as_slice()).collect();
        let lhs = symbol.eval(&refs).mul_mat(&a.phi);
        let rhs = a.phi.mul_mat(symbol.get(&t));
        out.push(("symbol-twist-equivariance", fmt_tuple(&t), lhs.sub(&rhs).flatten()));
    }
    if n >= 1 {
        for prefix in increasing_tuples(dim, n - 1) {
            let pcols: Vec<Vec<Rat>> = prefix.iter().map(|&i| m.basis_vec(i)).collect();
            for j in 0..dim {
                for k in 0..a.dim {
                    let scaled = m.action[k].col(j);
                    let mut refs: Vec<&[Rat]> = pcols.iter().map(|v| v.as_slice()).collect();
                    refs.push(&scaled);
                    let lhs = symbol.eval(&refs);
                    let mut full = prefix.clone();
                    full.push(j);
                    let base = symbol.eval_basis(&full);
                    let rhs = elem_times_op(a, &phin.col(k), &base);
                    out.push((
                        "symbol-function-linearity",
                        format!("{},last={j},a={k}", fmt_tuple(&prefix)),
                        lhs.sub(&rhs).flatten(),
                    ));
                }
            }
        }
    }
    for prefix in increasing_tuples(dim, n) {
        let pcols: Vec<Vec<Rat>> = prefix.iter().map(|&i| m.basis_vec(i)).collect();
        let sig = symbol.get(&prefix);
        for j in 0..dim {
            for k in 0..a.dim {
                let scaled = m.action[k].col(j);
                let mut refs: Vec<&[Rat]> = pcols.iter().map(|v| v.as_slice()).collect();
                refs.push(&scaled);
                let lhs = value.eval(&refs);
                let mut full = prefix.clone();
                full.push(j);
                let base = value.eval_basis(&full);
                let mut rhs = m.act(&phin.col(k), &base);
                let corr = m.act(&sig.col(k), &beta_n.col(j));
                for (r, c) in rhs.iter_mut().zip(&corr) {
                    *r += c;
                }
                let res: Vec<Rat> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                out.push((
                    "value-function-linearity",
                    format!("{},last={j},a={k}", fmt_tuple(&prefix)),
                    res,
                ));
            }
        }
    }
    for t in increasing_tuples(dim, n) {
        let res = phi_derivation_residual(a, n, symbol.get(&t));
        out.push(("symbol-derivation", fmt_tuple(&t), res));
    }
    out
}

fn fmt_tuple(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|i| i.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Concatenated residual of all five conditions; linear in the pair.
pub(crate) fn pair_residual_concat(
    m: &ModuleSpec,
    degree: usize,
    value: &AltTensor<Vec<Rat>>,
    symbol: &AltTensor<MatrixQ>,
) -> Vec<Rat> {
    let mut out = Vec::new();
    for (_, _, res) in condition_blocks(m, degree, value, symbol) {
        out.extend(res);
    }
    out
}

/// Checks that the pair satisfies all five conditions, with witnesses.
pub fn validate_mder(m: &ModuleSpec, d: &Mder) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("multiderivation-degree-{}", d.degree));
    assert_eq!(d.value.dim, m.dim);
    assert_eq!(d.value.arity, d.degree + 1);
    assert_eq!(d.symbol.arity, d.degree);
    for (rule, witness, res) in condition_blocks(m, d.degree, &d.value, &d.symbol) {
        if res.iter().any(|x| !x.is_zero()) {
            rep.fail(rule, witness);
        }
    }
    rep
}

/// Basis of the space of degree-`n` multiderivations, computed as the exact
/// nullspace of the condition residuals over pair coordinates. The basis
/// order is the nullspace order of the underlying elimination, which is
/// deterministic.
pub fn mder_space(m: &ModuleSpec, degree: usize) -> Vec<Mder> {
    let total = mder_flat_len(m, degree);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(total);
    for u in 0..total {
        let mut flat = vec![Rat::zero(); total];
        flat[u] = rat(1);
        let d = mder_from_flat(m, degree, &flat);
        let mut col = Vec::new();
        for (_, _, res) in condition_blocks(m, degree, &d.value, &d.symbol) {
            col.extend(res);
        }
        cols.push(col);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    let mat = MatrixQ::from_fn(rows, total, |r, c| cols[c][r].clone());
    nullspace_basis(&mat)
        .vectors
        .iter()
        .map(|v| mder_from_flat(m, degree, v))
        .collect()
}

/// Circle product on values: for degrees `p`, `q`, an alternating
/// `(p+q+1)`-linear map summing `D₁(D₂(first q+1 args), β^q(rest))` over
/// `(q+1, p)`-shuffles with signs.
pub fn circ(d1: &Mder, d2: &Mder, m: &ModuleSpec) -> AltTensor<Vec<Rat>> {
    let (p, q) = (d1.degree, d2.degree);
    let dim = m.dim;
    let beta_q = m.beta.pow(q);
    let mut out = AltTensor::zero(dim, p + q + 1, vec![Rat::zero(); dim]);
    let shs = shuffles(q + 1, p);
    for t in increasing_tuples(dim, p + q + 1) {
        let mut acc = vec![Rat::zero(); dim];
        for (seq, sign) in &shs {
            let first: Vec<usize> = seq[..q + 1].iter().map(|&s| t[s]).collect();
            let inner = d2.value.eval_basis(&first);
            if inner.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut args: Vec<Vec<Rat>> = Vec::with_capacity(p + 1);
            args.push(inner);
            for &s in &seq[q + 1..] {
                args.push(beta_q.col(t[s]));
            }
            let refs: Vec<&[Rat]> = args.iter().map(|v| v.as_slice()).collect();
            let mut term = d1.value.eval(&refs);
            if *sign < 0 {
                term.scale_in(&rat(-1));
            }
            acc.add_in(&term);
        }
        out.set(&t, acc);
    }
    out
}

/// Mixed product `σ_{D₁}⊙D₂`: feeds a `D₂`-value into the first symbol slot
/// of `D₁` over `(q+1, p−1)`-shuffles, twisting the remaining slots by `β^q`
/// and precomposing the operator with `φ^q`. Zero when `D₁` has degree 0
/// (its symbol has no slot to feed).
pub fn symbol_odot(d1: &Mder, d2: &Mder, m: &ModuleSpec) -> AltTensor<MatrixQ> {
    let (p, q) = (d1.degree, d2.degree);
    let (dim, adim) = (m.dim, m.algebra.dim);
    let mut out = AltTensor::zero(dim, p + q, MatrixQ::zero(adim, adim));
    if p == 0 {
        return out;
    }
    let beta_q = m.beta.pow(q);
    let phi_q = m.algebra.phi.pow(q);
    let shs = shuffles(q + 1, p - 1);
    for t in increasing_tuples(dim, p + q) {
        let mut acc = MatrixQ::zero(adim, adim);
        for (seq, sign) in &shs {
            let first: Vec<usize> = seq[..q + 1].iter().map(|&s| t[s]).collect();
            let inner = d2.value.eval_basis(&first);
            if inner.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut args: Vec<Vec<Rat>> = Vec::with_capacity(p);
            args.push(inner);
            for &s in &seq[q + 1..] {
                args.push(beta_q.col(t[s]));
            }
            let refs: Vec<&[Rat]> = args.iter().map(|v| v.as_slice()).collect();
            let mut term = d1.symbol.eval(&refs).mul_mat(&phi_q);
            if *sign < 0 {
                term = term.scale(&rat(-1));
            }
            acc = acc.add(&term);
        }
        out.set(&t, acc);
    }
    out
}

/// Operator pairing `{σ₁, σ₂}` of the two symbols: over `(p, q)`-shuffles,
/// the commutator-style combination
/// `σ₁(β^q·first block)∘σ₂(last block) − σ₂(β^p·last block)∘σ₁(first block)`.
pub fn symbol_curly(d1: &Mder, d2: &Mder, m: &ModuleSpec) -> AltTensor<MatrixQ> {
    let (p, q) = (d1.degree, d2.degree);
    let (dim, adim) = (m.dim, m.algebra.dim);
    let beta_p = m.beta.pow(p);
    let beta_q = m.beta.pow(q);
    let mut out = AltTensor::zero(dim, p + q, MatrixQ::zero(adim, adim));
    let shs = shuffles(p, q);
    for t in increasing_tuples(dim, p + q) {
        let mut acc = MatrixQ::zero(adim, adim);
        for (seq, sign) in &shs {
            let fb: Vec<usize> = seq[..p].iter().map(|&s| t[s]).collect();
            let lb: Vec<usize> = seq[p..].iter().map(|&s| t[s]).collect();
            let fb_tw: Vec<Vec<Rat>> = fb.iter().map(|&i| beta_q.col(i)).collect();
            let fb_refs: Vec<&[Rat]> = fb_tw.iter().map(|v| v.as_slice()).collect();
            let lb_tw: Vec<Vec<Rat>> = lb.iter().map(|&i| beta_p.col(i)).collect();
            let lb_refs: Vec<&[Rat]> = lb_tw.iter().map(|v| v.as_slice()).collect();
            let s1_tw = d1.symbol.eval(&fb_refs);
            let s2 = d2.symbol.eval_basis(&lb);
            let s2_tw = d2.symbol.eval(&lb_refs);
            let s1 = d1.symbol.eval_basis(&fb);
            let mut term = s1_tw.mul_mat(&s2).sub(&s2_tw.mul_mat(&s1));
            if *sign < 0 {
                term = term.scale(&rat(-1));
            }
            acc = acc.add(&term);
        }
        out.set(&t, acc);
    }
    out
}

/// Graded bracket `[D₁, D₂]` of degrees `p` and `q`, a degree-`p+q` pair:
/// values `(−1)^{pq} D₁∘D₂ − D₂∘D₁`, symbol
/// `(−1)^{pq} σ_{D₁}⊙D₂ − σ_{D₂}⊙D₁ + {σ₁, σ₂}`.
pub fn bracket(d1: &Mder, d2: &Mder, m: &ModuleSpec) -> Mder {
    let (p, q) = (d1.degree, d2.degree);
    let sgn = if (p * q) % 2 == 1 { rat(-1) } else { rat(1) };
    let value = circ(d1, d2, m).scale(&sgn).add(&circ(d2, d1, m).scale(&rat(-1)));
    let symbol = symbol_odot(d1, d2, m)
        .scale(&sgn)
        .add(&symbol_odot(d2, d1, m).scale(&rat(-1)))
        .add(&symbol_curly(d1, d2, m));
    Mder { degree: p + q, value, symbol }
}

/// The degree-1 pair (bracket tensor, anchor) of a structure.
pub fn from_structure(s: &HlrStructure) -> Mder {
    let m = &s.carrier;
    let adim = m.algebra.dim;
    let mut symbol = AltTensor::zero(m.dim, 1, MatrixQ::zero(adim, adim));
    for i in 0..m.dim {
        symbol.set(&[i], s.anchor[i].clone());
    }
    Mder { degree: 1, value: s.bracket.clone(), symbol }
}

/// Reassembles a structure from a degree-1 pair over the given carrier.
pub fn to_structure(m: &ModuleSpec, d: &Mder) -> HlrStructure {
    assert_eq!(d.degree, 1, "a structure pair has degree 1");
    let anchor = (0..m.dim).map(|i| d.symbol.get(&[i]).clone()).collect();
    HlrStructure::new(m.clone(), d.value.clone(), anchor)
}
