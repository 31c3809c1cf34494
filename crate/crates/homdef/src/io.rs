//! JSON document model for structures and jets.
//!
//! All rational entries are strings (`"3"`, `"-1/2"`); numeric JSON literals
//! are rejected by the schema, so no float can slip in. Brackets and jet
//! value tensors are sparse maps keyed `"i,j"` with `i < j`; jet symbols are
//! sparse maps keyed by a single basis index. Omitted keys mean zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraSpec, ModuleSpec};
use crate::deform::DeformationJet;
use crate::hlr::HlrStructure;
use crate::linalg::MatrixQ;
use crate::mder::Mder;
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::tensor::AltTensor;
use num::Zero;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Malformed(String),
    #[error("unknown reference: {0}")]
    UnknownRef(String),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Malformed(msg.into())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub unit: Vec<String>,
    /// `mult[i]` is the row-major matrix of multiplication by basis element `i`.
    pub mult: Vec<Vec<Vec<String>>>,
    pub phi: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleDoc {
    pub dim: usize,
    /// `action[i]` is the matrix of basis element `i` acting on the module.
    pub action: Vec<Vec<Vec<String>>>,
    pub beta: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StructureDoc {
    pub name: String,
    pub algebra: AlgebraDoc,
    pub module: ModuleDoc,
    /// Sparse alternating table: `"i,j"` with `i < j` maps to coordinates.
    pub bracket: BTreeMap<String, Vec<String>>,
    /// `anchor[i]` is the algebra operator attached to module basis element `i`.
    pub anchor: Vec<Vec<Vec<String>>>,
    /// Module elements generating the carrier freely over the algebra;
    /// presence requests the splitting audit during validation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_generators: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct JetTermDoc {
    /// Sparse alternating value tensor, keyed `"i,j"` with `i < j`.
    #[serde(default)]
    pub d: BTreeMap<String, Vec<String>>,
    /// Sparse symbol: basis index to row-major algebra operator.
    #[serde(default)]
    pub sigma: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct JetDoc {
    /// Name of the structure the jet deforms; must match the loaded one.
    pub structure: String,
    pub order: usize,
    pub terms: Vec<JetTermDoc>,
}

fn parse_vec(ctx: &str, v: &[String], want: usize) -> Result<Vec<Rat>, IoError> {
    if v.len() != want {
        return Err(bad(format!("{ctx}: expected {want} coordinates, found {}", v.len())));
    }
    v.iter()
        .map(|s| parse_rat(s).map_err(|e| bad(format!("{ctx}: {e}"))))
        .collect()
}

fn parse_mat(ctx: &str, rows: &[Vec<String>], r: usize, c: usize) -> Result<MatrixQ, IoError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(bad(format!("{ctx}: expected a {r}x{c} matrix")));
    }
    let mut out = Vec::with_capacity(r);
    for row in rows {
        out.push(
            row.iter()
                .map(|s| parse_rat(s).map_err(|e| bad(format!("{ctx}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(MatrixQ::from_rows(out))
}

fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn fmt_mat(m: &MatrixQ) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(fmt_rat).collect()).collect()
}

fn parse_pair_key(ctx: &str, key: &str, dim: usize) -> Result<(usize, usize), IoError> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| bad(format!("{ctx}: key {key:?} is not of the form \"i,j\"")))?;
    let i: usize = a.trim().parse().map_err(|_| bad(format!("{ctx}: bad index in {key:?}")))?;
    let j: usize = b.trim().parse().map_err(|_| bad(format!("{ctx}: bad index in {key:?}")))?;
    if i >= j {
        return Err(bad(format!("{ctx}: key {key:?} must have i < j")));
    }
    if j >= dim {
        return Err(bad(format!("{ctx}: index {j} out of range for dimension {dim}")));
    }
    Ok((i, j))
}

fn parse_alternating2(
    ctx: &str,
    map: &BTreeMap<String, Vec<String>>,
    dim: usize,
) -> Result<AltTensor<Vec<Rat>>, IoError> {
    let mut out = AltTensor::zero(dim, 2, vec![Rat::zero(); dim]);
    for (key, coords) in map {
        let (i, j) = parse_pair_key(ctx, key, dim)?;
        out.set(&[i, j], parse_vec(&format!("{ctx}[{key}]"), coords, dim)?);
    }
    Ok(out)
}

fn alternating2_to_map(t: &AltTensor<Vec<Rat>>) -> BTreeMap<String, Vec<String>> {
    let mut out = BTreeMap::new();
    for i in 0..t.dim {
        for j in i + 1..t.dim {
            let v = t.get(&[i, j]);
            if !v.iter().all(|c| c.is_zero()) {
                out.insert(format!("{i},{j}"), fmt_vec(v));
            }
        }
    }
    out
}

/// Builds the structure (and any declared free generators) from a document,
/// checking every shape before touching the constructors.
#[allow(clippy::type_complexity)]
pub fn resolve_structure(
    doc: &StructureDoc,
) -> Result<(HlrStructure, Option<Vec<Vec<Rat>>>), IoError> {
    let adim = doc.algebra.dim;
    if adim == 0 {
        return Err(bad("algebra: dimension must be positive"));
    }
    let unit = parse_vec("algebra.unit", &doc.algebra.unit, adim)?;
    if doc.algebra.mult.len() != adim {
        return Err(bad(format!(
            "algebra.mult: expected {adim} operators, found {}",
            doc.algebra.mult.len()
        )));
    }
    let mut mult = Vec::with_capacity(adim);
    for (i, rows) in doc.algebra.mult.iter().enumerate() {
        mult.push(parse_mat(&format!("algebra.mult[{i}]"), rows, adim, adim)?);
    }
    let phi = parse_mat("algebra.phi", &doc.algebra.phi, adim, adim)?;
    let algebra = Arc::new(AlgebraSpec::new(mult, unit, phi));

    let dim = doc.module.dim;
    if dim == 0 {
        return Err(bad("module: dimension must be positive"));
    }
    if doc.module.action.len() != adim {
        return Err(bad(format!(
            "module.action: expected {adim} operators, found {}",
            doc.module.action.len()
        )));
    }
    let mut action = Vec::with_capacity(adim);
    for (i, rows) in doc.module.action.iter().enumerate() {
        action.push(parse_mat(&format!("module.action[{i}]"), rows, dim, dim)?);
    }
    let beta = parse_mat("module.beta", &doc.module.beta, dim, dim)?;
    let carrier = ModuleSpec::new(algebra, action, beta);

    let bracket = parse_alternating2("bracket", &doc.bracket, dim)?;
    if doc.anchor.len() != dim {
        return Err(bad(format!("anchor: expected {dim} operators, found {}", doc.anchor.len())));
    }
    let mut anchor = Vec::with_capacity(dim);
    for (i, rows) in doc.anchor.iter().enumerate() {
        anchor.push(parse_mat(&format!("anchor[{i}]"), rows, adim, adim)?);
    }
    let generators = match &doc.free_generators {
        None => None,
        Some(gens) => {
            let mut out = Vec::with_capacity(gens.len());
            for (i, g) in gens.iter().enumerate() {
                out.push(parse_vec(&format!("free_generators[{i}]"), g, dim)?);
            }
            Some(out)
        }
    };
    Ok((HlrStructure::new(carrier, bracket, anchor), generators))
}

/// Serializes a structure back into its document form.
pub fn structure_to_doc(
    name: &str,
    s: &HlrStructure,
    free_generators: Option<&[Vec<Rat>]>,
) -> StructureDoc {
    let a = s.algebra();
    StructureDoc {
        name: name.to_string(),
        algebra: AlgebraDoc {
            dim: a.dim,
            unit: fmt_vec(&a.unit),
            mult: a.mult.iter().map(fmt_mat).collect(),
            phi: fmt_mat(&a.phi),
        },
        module: ModuleDoc {
            dim: s.carrier.dim,
            action: s.carrier.action.iter().map(fmt_mat).collect(),
            beta: fmt_mat(&s.carrier.beta),
        },
        bracket: alternating2_to_map(&s.bracket),
        anchor: s.anchor.iter().map(fmt_mat).collect(),
        free_generators: free_generators.map(|gens| gens.iter().map(|g| fmt_vec(g)).collect()),
    }
}

/// Builds a jet over an already-resolved structure, checking the name
/// reference and every term shape.
pub fn resolve_jet(
    doc: &JetDoc,
    structure_name: &str,
    s: &HlrStructure,
) -> Result<DeformationJet, IoError> {
    if doc.structure != structure_name {
        return Err(IoError::UnknownRef(format!(
            "jet deforms {:?} but the loaded structure is {structure_name:?}",
            doc.structure
        )));
    }
    if doc.terms.len() != doc.order {
        return Err(bad(format!(
            "jet: order {} disagrees with {} terms",
            doc.order,
            doc.terms.len()
        )));
    }
    let m = &s.carrier;
    let adim = m.algebra.dim;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (ti, term) in doc.terms.iter().enumerate() {
        let ctx = format!("terms[{ti}].d");
        let value = parse_alternating2(&ctx, &term.d, m.dim)?;
        let mut symbol = AltTensor::zero(m.dim, 1, MatrixQ::zero(adim, adim));
        for (key, rows) in &term.sigma {
            let ctx = format!("terms[{ti}].sigma[{key}]");
            let i: usize = key.trim().parse().map_err(|_| bad(format!("{ctx}: bad index")))?;
            if i >= m.dim {
                return Err(bad(format!("{ctx}: index out of range for dimension {}", m.dim)));
            }
            symbol.set(&[i], parse_mat(&ctx, rows, adim, adim)?);
        }
        terms.push(Mder { degree: 1, value, symbol });
    }
    Ok(DeformationJet::new(s.clone(), terms))
}

/// Serializes one degree-1 pair as a jet term.
pub fn term_to_doc(t: &Mder) -> JetTermDoc {
    assert_eq!(t.degree, 1);
    let mut sigma = BTreeMap::new();
    for i in 0..t.symbol.dim {
        let op = t.symbol.get(&[i]);
        if !op.is_zero() {
            sigma.insert(i.to_string(), fmt_mat(op));
        }
    }
    JetTermDoc { d: alternating2_to_map(&t.value), sigma }
}

/// Serializes a jet back into its document form.
pub fn jet_to_doc(structure_name: &str, jet: &DeformationJet) -> JetDoc {
    JetDoc {
        structure: structure_name.to_string(),
        order: jet.order(),
        terms: jet.terms.iter().map(term_to_doc).collect(),
    }
}

pub fn structure_from_str(text: &str) -> Result<StructureDoc, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn jet_from_str(text: &str) -> Result<JetDoc, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn read_file(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// Reads and resolves a structure file.
#[allow(clippy::type_complexity)]
pub fn load_structure_file(
    path: &std::path::Path,
) -> Result<(StructureDoc, HlrStructure, Option<Vec<Vec<Rat>>>), IoError> {
    let doc = structure_from_str(&read_file(path)?)?;
    let (s, gens) = resolve_structure(&doc)?;
    Ok((doc, s, gens))
}

/// Reads a jet file and resolves it over an already-loaded structure.
pub fn load_jet_file(
    path: &std::path::Path,
    structure_name: &str,
    s: &HlrStructure,
) -> Result<(JetDoc, DeformationJet), IoError> {
    let doc = jet_from_str(&read_file(path)?)?;
    let jet = resolve_jet(&doc, structure_name, s)?;
    Ok((doc, jet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlr::fixtures::{sl2, twisted_sl2};
    use crate::hlr::validate_hlr;

    #[test]
    fn structure_documents_round_trip() {
        let s = twisted_sl2();
        let doc = structure_to_doc("twisted", &s, None);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let doc2 = structure_from_str(&text).unwrap();
        assert_eq!(doc, doc2);
        let (s2, gens) = resolve_structure(&doc2).unwrap();
        assert!(gens.is_none());
        assert_eq!(s2, s);
        assert!(validate_hlr(&s2).passed());
    }

    #[test]
    fn jet_documents_round_trip() {
        let s = sl2();
        let mut value = AltTensor::zero(3, 2, vec![Rat::zero(); 3]);
        value.set(&[0, 2], vec![parse_rat("1/2").unwrap(), Rat::zero(), Rat::zero()]);
        let term = Mder { degree: 1, value, symbol: AltTensor::zero(3, 1, MatrixQ::zero(1, 1)) };
        let jet = DeformationJet::new(s.clone(), vec![term]);
        let doc = jet_to_doc("sl2", &jet);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let doc2 = jet_from_str(&text).unwrap();
        assert_eq!(doc, doc2);
        let jet2 = resolve_jet(&doc2, "sl2", &s).unwrap();
        assert_eq!(jet2, jet);
    }

    #[test]
    fn jet_with_wrong_structure_name_is_an_unknown_reference() {
        let s = sl2();
        let doc = JetDoc { structure: "other".into(), order: 0, terms: vec![] };
        match resolve_jet(&doc, "sl2", &s) {
            Err(IoError::UnknownRef(_)) => {}
            other => panic!("expected an unknown-reference error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let s = sl2();
        let mut doc = structure_to_doc("sl2", &s, None);
        doc.bracket.insert("2,1".into(), vec!["1".into(), "0".into(), "0".into()]);
        assert!(matches!(resolve_structure(&doc), Err(IoError::Malformed(_))));

        let mut doc = structure_to_doc("sl2", &s, None);
        doc.bracket.insert("0,9".into(), vec!["1".into(), "0".into(), "0".into()]);
        assert!(matches!(resolve_structure(&doc), Err(IoError::Malformed(_))));

        let mut doc = structure_to_doc("sl2", &s, None);
        doc.algebra.unit = vec!["0.5".into()];
        assert!(matches!(resolve_structure(&doc), Err(IoError::Malformed(_))));

        let mut doc = structure_to_doc("sl2", &s, None);
        doc.anchor.pop();
        assert!(matches!(resolve_structure(&doc), Err(IoError::Malformed(_))));

        // numeric literals in place of strings fail at the serde layer
        let text = r#"{"structure": "sl2", "order": 1, "terms": [{"d": {"0,1": [0.5, 0, 0]}}]}"#;
        assert!(matches!(jet_from_str(text), Err(IoError::Json(_))));
    }
}
