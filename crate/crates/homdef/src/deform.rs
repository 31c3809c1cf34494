//! Formal deformations: jets of structures, gauge equivalence, the
//! obstruction to extending a jet one order, and rigidity certificates.
//!
//! A jet of order `N` deforms a structure pair `m₀` by degree-1 pairs
//! `m₁, …, m_N`. The order-`k` deformation equation is checked valuewise
//! through the cyclic sums
//!
//! ```text
//! cyc_{ij}(x,y,z) = m_i(α(x), m_j(y,z)) + m_i(α(y), m_j(z,x)) + m_i(α(z), m_j(x,y))
//! ```
//!
//! (`Σ_{i+j=k} cyc_{ij} = 0`), which is the pass/fail contract. The same sums
//! are recomputed through the graded bracket (`Σ_{i+j=k} [m_i, m_j]` must be
//! `2·Σ cyc` on values), and the bracket's symbol residual is reported as
//! extra information.

use crate::algebra::ModuleSpec;
use crate::complex::{cochain_basis, cohomology, delta, delta_matrix, Cohomology};
use crate::hlr::HlrStructure;
use crate::linalg::{nullspace_basis, rank, solve, MatrixQ};
use crate::mder::{
    bracket, from_structure, mder_flat_len, mder_from_flat, pair_residual_concat, validate_mder,
    Mder,
};
use crate::rat::{rat, ratq, Rat};
use crate::report::ValidationReport;
use crate::tensor::{increasing_tuples, AltTensor, AltValue};
use num::Zero;
use thiserror::Error;

/// A finite-order deformation of a structure: terms `m₁, …, m_N`, all
/// degree-1 pairs over the structure's carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationJet {
    pub base: HlrStructure,
    pub terms: Vec<Mder>,
}

impl DeformationJet {
    pub fn new(base: HlrStructure, terms: Vec<Mder>) -> Self {
        for t in &terms {
            assert_eq!(t.degree, 1, "jet terms are degree-1 pairs");
            assert_eq!(t.value.dim, base.carrier.dim);
        }
        DeformationJet { base, terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `m_i`, with `m₀` the structure pair itself.
    pub fn term(&self, i: usize) -> Mder {
        if i == 0 {
            from_structure(&self.base)
        } else {
            self.terms[i - 1].clone()
        }
    }
}

/// Outcome of checking one order's deformation equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: usize,
    /// The valuewise cyclic-sum equation — the pass/fail contract.
    pub value_equation_holds: bool,
    /// Whether the bracket route reproduces the cyclic sums exactly.
    pub bracket_route_agrees: bool,
    /// Whether the bracket sums also vanish on symbols (informational).
    pub symbol_residual_zero: bool,
}

#[derive(Clone, Debug)]
pub struct JetReport {
    pub term_validation: ValidationReport,
    pub orders: Vec<OrderCheck>,
    pub passed: bool,
}

/// Valuewise cyclic sum `Σ_{i+j=k} cyc_{ij}` as an alternating 3-tensor.
fn cyclic_sum(jet: &DeformationJet, k: usize) -> AltTensor<Vec<Rat>> {
    let m = &jet.base.carrier;
    let dim = m.dim;
    let alpha = jet.base.alpha();
    let mut out = AltTensor::zero(dim, 3, vec![Rat::zero(); dim]);
    let terms: Vec<Mder> = (0..=k).map(|i| jet.term(i)).collect();
    for t in increasing_tuples(dim, 3) {
        let mut acc = vec![Rat::zero(); dim];
        for i in 0..=k {
            let j = k - i;
            let mi = &terms[i];
            let mj = &terms[j];
            // cyclic rotations of (t0, t1, t2)
            for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let inner = mj.value.eval_basis(&[t[y], t[z]]);
                if inner.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let ax = alpha.col(t[x]);
                let term = mi.value.eval(&[&ax, &inner]);
                acc.add_in(&term);
            }
        }
        out.set(&t, acc);
    }
    out
}

/// Bracket-route order sum `Σ_{i+j=k} [m_i, m_j]` (ordered index pairs).
fn bracket_sum(jet: &DeformationJet, k: usize) -> Mder {
    let m = &jet.base.carrier;
    let mut acc = Mder::zero(m, 2);
    for i in 0..=k {
        let j = k - i;
        acc = acc.add(&bracket(&jet.term(i), &jet.term(j), m));
    }
    acc
}

/// Validates every term as a degree-1 pair and checks the deformation
/// equation at each order `1..=N`.
pub fn check_jet(jet: &DeformationJet) -> JetReport {
    let m = &jet.base.carrier;
    let mut term_validation = ValidationReport::new("jet-terms");
    for (i, t) in jet.terms.iter().enumerate() {
        term_validation.absorb(&format!("m{}", i + 1), validate_mder(m, t));
    }
    let mut orders = Vec::new();
    for k in 1..=jet.order() {
        let cyc = cyclic_sum(jet, k);
        let bs = bracket_sum(jet, k);
        let value_equation_holds = cyc.is_zero();
        // each ordered pair (i,j) contributes cyc_{ij} + cyc_{ji} to the bracket sum
        let bracket_route_agrees = bs.value == cyc.scale(&rat(2));
        let symbol_residual_zero = bs.symbol.is_zero();
        orders.push(OrderCheck { order: k, value_equation_holds, bracket_route_agrees, symbol_residual_zero });
    }
    let passed = term_validation.passed() && orders.iter().all(|o| o.value_equation_holds);
    JetReport { term_validation, orders, passed }
}

/// The first-order term, when present.
pub fn infinitesimal(jet: &DeformationJet) -> Option<&Mder> {
    jet.terms.first()
}

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("transform term {index} does not commute with the carrier twist")]
    TransformNotTwistCompatible { index: usize },
    #[error("transform term {index} is not a module map (algebra basis {witness})")]
    TransformNotLinear { index: usize, witness: usize },
    #[error("no symbol completes the transformed value at order {order}")]
    SymbolSolveFailed { order: usize },
}

/// Basis of the admissible gauge directions: matrices commuting with the
/// carrier twist and with the algebra action.
pub fn equivalence_transform_space(m: &ModuleSpec) -> Vec<MatrixQ> {
    let dim = m.dim;
    let unknowns = dim * dim;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let x = MatrixQ::from_fn(dim, dim, |r, c| if r * dim + c == u { rat(1) } else { rat(0) });
        let mut res = x.mul_mat(&m.beta).sub(&m.beta.mul_mat(&x)).flatten();
        for act in &m.action {
            res.extend(x.mul_mat(act).sub(&act.mul_mat(&x)).flatten());
        }
        cols.push(res);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    let mat = MatrixQ::from_fn(rows, unknowns, |r, c| cols[c][r].clone());
    nullspace_basis(&mat)
        .vectors
        .iter()
        .map(|v| MatrixQ::from_fn(dim, dim, |r, c| v[r * dim + c].clone()))
        .collect()
}

/// Completes a degree-1 value tensor to a pair by solving the five
/// conditions for the symbol, seeded with `seed` when that already works.
fn complete_symbol(
    m: &ModuleSpec,
    value: &AltTensor<Vec<Rat>>,
    seed: &AltTensor<MatrixQ>,
) -> Option<AltTensor<MatrixQ>> {
    if pair_residual_concat(m, 1, value, seed).iter().all(|x| x.is_zero()) {
        return Some(seed.clone());
    }
    let adim = m.algebra.dim;
    let scount = m.dim; // arity-1 tuples
    let total = scount * adim * adim;
    let zero_value = AltTensor::zero(m.dim, 2, vec![Rat::zero(); m.dim]);
    let unflat = |flat: &[Rat]| -> AltTensor<MatrixQ> {
        let ops: Vec<MatrixQ> = (0..scount)
            .map(|i| {
                let chunk = &flat[i * adim * adim..(i + 1) * adim * adim];
                MatrixQ::from_fn(adim, adim, |r, c| chunk[r * adim + c].clone())
            })
            .collect();
        AltTensor::from_values(m.dim, 1, ops, MatrixQ::zero(adim, adim))
    };
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(total);
    for u in 0..total {
        let mut flat = vec![Rat::zero(); total];
        flat[u] = rat(1);
        cols.push(pair_residual_concat(m, 1, &zero_value, &unflat(&flat)));
    }
    let r0 = pair_residual_concat(m, 1, value, &AltTensor::zero(m.dim, 1, MatrixQ::zero(adim, adim)));
    let rows = r0.len();
    let mat = MatrixQ::from_fn(rows, total, |r, c| cols[c][r].clone());
    let b: Vec<Rat> = r0.iter().map(|x| -x.clone()).collect();
    solve(&mat, &b).map(|x| unflat(&x))
}

/// Gauge-transforms a jet by `Φ_t = id + Σ φ_i tⁱ`: the value tensors become
/// `Σ_{a+i+b+c=k} φ_a(m_i(ψ_b x, ψ_c y))` with `ψ` the series inverse of `φ`,
/// and each order's symbol is completed by an exact solve (seeded with the
/// transported symbols `Σ σ_{m_i}∘ψ_b`).
///
/// Transform terms must commute with the carrier twist and the algebra
/// action, so that each `id + φ_i tⁱ` is a module automorphism family.
pub fn apply_equivalence(
    jet: &DeformationJet,
    phis: &[MatrixQ],
) -> Result<DeformationJet, DeformError> {
    let m = &jet.base.carrier;
    let dim = m.dim;
    for (idx, p) in phis.iter().enumerate() {
        if p.mul_mat(&m.beta) != m.beta.mul_mat(p) {
            return Err(DeformError::TransformNotTwistCompatible { index: idx + 1 });
        }
        for (k, act) in m.action.iter().enumerate() {
            if p.mul_mat(act) != act.mul_mat(p) {
                return Err(DeformError::TransformNotLinear { index: idx + 1, witness: k });
            }
        }
    }
    let n = jet.order();
    let phi = |i: usize| -> MatrixQ {
        if i == 0 {
            MatrixQ::identity(dim)
        } else if i <= phis.len() {
            phis[i - 1].clone()
        } else {
            MatrixQ::zero(dim, dim)
        }
    };
    // series inverse: ψ₀ = id, ψ_k = −Σ_{i=1..k} φ_i ψ_{k−i}
    let mut psi: Vec<MatrixQ> = vec![MatrixQ::identity(dim)];
    for k in 1..=n {
        let mut acc = MatrixQ::zero(dim, dim);
        for i in 1..=k {
            acc = acc.add(&phi(i).mul_mat(&psi[k - i]));
        }
        psi.push(acc.scale(&rat(-1)));
    }
    let terms_in: Vec<Mder> = (0..=n).map(|i| jet.term(i)).collect();
    let mut new_terms = Vec::with_capacity(n);
    for k in 1..=n {
        let mut value = AltTensor::zero(dim, 2, vec![Rat::zero(); dim]);
        for t in increasing_tuples(dim, 2) {
            let mut acc = vec![Rat::zero(); dim];
            for a in 0..=k {
                for i in 0..=k - a {
                    for b in 0..=k - a - i {
                        let c = k - a - i - b;
                        let xb = psi[b].col(t[0]);
                        let yc = psi[c].col(t[1]);
                        let inner = terms_in[i].value.eval(&[&xb, &yc]);
                        if inner.iter().all(|v| v.is_zero()) {
                            continue;
                        }
                        let term = phi(a).mul_vec(&inner);
                        acc.add_in(&term);
                    }
                }
            }
            value.set(&t, acc);
        }
        let adim = m.algebra.dim;
        let mut seed = AltTensor::zero(dim, 1, MatrixQ::zero(adim, adim));
        for j in 0..dim {
            let mut acc = MatrixQ::zero(adim, adim);
            for i in 0..=k {
                let b = k - i;
                let col = psi[b].col(j);
                acc = acc.add(&terms_in[i].symbol.eval(&[&col]));
            }
            seed.set(&[j], acc);
        }
        let symbol =
            complete_symbol(m, &value, &seed).ok_or(DeformError::SymbolSolveFailed { order: k })?;
        new_terms.push(Mder { degree: 1, value, symbol });
    }
    Ok(DeformationJet::new(jet.base.clone(), new_terms))
}

/// The obstruction pair at the next order, its cocycle status, and whether
/// its class vanishes (with a primitive next term when it does, and class
/// coordinates in the third-degree representative basis when it does not).
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub target_order: usize,
    pub theta: Mder,
    /// The valuewise cyclic route reproduces `−Θ` exactly.
    pub display_route_agrees: bool,
    pub is_cocycle: bool,
    pub class_vanishes: bool,
    pub primitive: Option<Mder>,
    pub class_coordinates: Option<Vec<Rat>>,
    pub h3: Cohomology,
}

/// `Θ = −½ Σ_{i+j=N+1, i,j≥1} [m_i, m_j]`, the pair that the next term's
/// differential must hit: the jet extends to order `N+1` by `m` exactly when
/// `δ(m) = Θ`.
pub fn obstruction(jet: &DeformationJet) -> Obstruction {
    let s = &jet.base;
    let m = &s.carrier;
    let target = jet.order() + 1;
    let mut theta = Mder::zero(m, 2);
    for i in 1..target {
        let j = target - i;
        theta = theta.add(&bracket(&jet.term(i), &jet.term(j), m));
    }
    let theta = theta.scale(&ratq(-1, 2));

    // cross-check against the cyclic-sum route, which computes −Θ on values
    let alpha = s.alpha();
    let mut display_route_agrees = true;
    for t in increasing_tuples(m.dim, 3) {
        let mut cyc = vec![Rat::zero(); m.dim];
        for i in 1..target {
            let j = target - i;
            for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let inner = jet.term(j).value.eval_basis(&[t[y], t[z]]);
                let ax = alpha.col(t[x]);
                let term = jet.term(i).value.eval(&[&ax, &inner]);
                cyc.add_in(&term);
            }
        }
        let mut neg_theta = theta.value.get(&t).clone();
        neg_theta.scale_in(&rat(-1));
        if cyc != neg_theta {
            display_route_agrees = false;
        }
    }

    let is_cocycle = delta(s, &theta).is_zero();
    let basis2 = cochain_basis(s, 2);
    let dmat2 = delta_matrix(s, 2, &basis2);
    let primitive_coords = solve(&dmat2, &theta.flat());
    let class_vanishes = primitive_coords.is_some();
    let primitive = primitive_coords.map(|coords| {
        let mut acc = Mder::zero(m, 1);
        for (c, b) in coords.iter().zip(&basis2) {
            acc = acc.add(&b.scale(c));
        }
        acc
    });
    let h3 = cohomology(s, 3);
    let class_coordinates = if class_vanishes {
        None
    } else {
        let basis3 = cochain_basis(s, 3);
        let basis_cols: Vec<Vec<Rat>> = basis3.iter().map(|b| b.flat()).collect();
        let basis_mat = MatrixQ::from_fn(mder_flat_len(m, 2), basis3.len(), |r, c| {
            basis_cols[c][r].clone()
        });
        let in_basis = |d: &Mder| solve(&basis_mat, &d.flat()).expect("a pair lies in the cochain space");
        let theta_coords = in_basis(&theta);
        let mut cols: Vec<Vec<Rat>> = basis2.iter().map(|b| in_basis(&delta(s, b))).collect();
        let boundary_count = cols.len();
        for r in &h3.representatives {
            cols.push(in_basis(r));
        }
        let mat = MatrixQ::from_fn(basis3.len(), cols.len(), |r, c| cols[c][r].clone());
        let sol = solve(&mat, &theta_coords)
            .expect("cocycles decompose over coboundaries and representatives");
        Some(sol[boundary_count..].to_vec())
    };
    Obstruction {
        target_order: target,
        theta,
        display_route_agrees,
        is_cocycle,
        class_vanishes,
        primitive,
        class_coordinates,
        h3,
    }
}

/// Tries to extend the jet one order: on a vanishing obstruction class the
/// primitive becomes the next term.
pub fn extend(jet: &DeformationJet) -> (Obstruction, Option<DeformationJet>) {
    let ob = obstruction(jet);
    let extended = ob.primitive.as_ref().map(|p| {
        let mut terms = jet.terms.clone();
        terms.push(p.clone());
        DeformationJet::new(jet.base.clone(), terms)
    });
    (ob, extended)
}

/// Per-cocycle outcome of the anchor-inverse primitive construction.
#[derive(Clone, Debug)]
pub struct PrimitiveOutcome {
    pub index: usize,
    pub constructed: bool,
    pub exact: bool,
    pub failure: Option<String>,
}

/// Second-degree rigidity evidence: the cohomology itself, plus an attempt
/// to exhibit every 2-cocycle as a coboundary through the anchor-inverse
/// construction `E = ρ^{-1}∘σ_D`, valid when the anchor is injective and the
/// symbol values lie in its image.
#[derive(Clone, Debug)]
pub struct RigidityCertificate {
    pub h2: Cohomology,
    pub anchor_injective: bool,
    pub primitives: Vec<PrimitiveOutcome>,
    pub rigid: bool,
    pub primitives_complete: bool,
}

pub fn rigidity_certificate(s: &HlrStructure) -> RigidityCertificate {
    let m = &s.carrier;
    let adim = m.algebra.dim;
    let l = m.dim;
    let h2 = cohomology(s, 2);
    let rho_mat = MatrixQ::from_fn(adim * adim, l, |r, c| {
        let (ri, ci) = (r / adim, r % adim);
        s.anchor[c].at(ri, ci).clone()
    });
    let anchor_injective = rank(&rho_mat) == l;

    let basis2 = cochain_basis(s, 2);
    let dmat = delta_matrix(s, 2, &basis2);
    let cocycles = nullspace_basis(&dmat);
    let basis_cols: Vec<Vec<Rat>> = basis2.iter().map(|b| b.flat()).collect();
    let basis_mat = MatrixQ::from_fn(mder_flat_len(m, 1), basis2.len(), |r, c| {
        basis_cols[c][r].clone()
    });

    let mut primitives = Vec::new();
    for (zi, zv) in cocycles.vectors.iter().enumerate() {
        let pair = mder_from_flat(m, 1, &basis_mat.mul_vec(zv));
        let outcome = if !anchor_injective {
            PrimitiveOutcome {
                index: zi,
                constructed: false,
                exact: false,
                failure: Some("the anchor is not injective".into()),
            }
        } else {
            let mut e_cols: Vec<Vec<Rat>> = Vec::with_capacity(l);
            let mut fail: Option<String> = None;
            for i in 0..l {
                match solve(&rho_mat, &pair.symbol.get(&[i]).flatten()) {
                    Some(c) => e_cols.push(c),
                    None => {
                        fail = Some(format!("symbol value at basis {i} lies outside the anchor image"));
                        break;
                    }
                }
            }
            if let Some(f) = fail {
                PrimitiveOutcome { index: zi, constructed: false, exact: false, failure: Some(f) }
            } else {
                let e = MatrixQ::from_fn(l, l, |r, c| e_cols[c][r].clone());
                let mut value = AltTensor::zero(l, 1, vec![Rat::zero(); l]);
                for j in 0..l {
                    value.set(&[j], e.col(j));
                }
                let e_pair = Mder {
                    degree: 0,
                    value,
                    symbol: AltTensor::zero(l, 0, MatrixQ::zero(adim, adim)),
                };
                let vrep = validate_mder(m, &e_pair);
                if !vrep.passed() {
                    PrimitiveOutcome {
                        index: zi,
                        constructed: false,
                        exact: false,
                        failure: Some(format!("the correction map is not a degree-0 pair: {vrep}")),
                    }
                } else {
                    let exact = delta(s, &e_pair) == pair;
                    PrimitiveOutcome {
                        index: zi,
                        constructed: true,
                        exact,
                        failure: if exact { None } else { Some("differential misses the cocycle".into()) },
                    }
                }
            }
        };
        primitives.push(outcome);
    }
    let rigid = h2.dim == 0;
    let primitives_complete = !primitives.is_empty() && primitives.iter().all(|p| p.exact)
        || primitives.is_empty();
    RigidityCertificate { h2, anchor_injective, primitives, rigid, primitives_complete }
}
