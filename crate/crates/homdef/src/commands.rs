//! Command implementations behind the `homdef` binary.
//!
//! Each command loads documents, runs the library, and returns a report that
//! renders either as human-readable text or as canonical JSON. The machine
//! rendering is fully deterministic — fixed field order, sorted maps, no
//! timing — so equal inputs produce byte-identical output.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{cohomology, splitting_audit, Cohomology};
use crate::deform::{check_jet, extend, rigidity_certificate};
use crate::hlr::validate_hlr;
use crate::io::{jet_to_doc, load_jet_file, load_structure_file, IoError, JetDoc};
use crate::rat::fmt_rat;

/// Environment variable bounding the cohomology degrees a single CLI call
/// may request; library callers are never capped.
pub const DEGREE_CAP_VAR: &str = "HOMDEF_DEGREE_CAP";
const DEGREE_CAP_DEFAULT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Error)]
pub enum CmdError {
    /// Unreadable, unparsable, or malformed input — exits with code 2.
    #[error("{0}")]
    Parse(String),
    /// A document names something the invocation did not load — exit code 4.
    #[error("unknown reference: {0}")]
    UnknownRef(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) => 2,
            CmdError::UnknownRef(_) => 4,
        }
    }
}

impl From<IoError> for CmdError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::UnknownRef(m) => CmdError::UnknownRef(m),
            other => CmdError::Parse(other.to_string()),
        }
    }
}

fn degree_cap() -> Result<usize, CmdError> {
    match std::env::var(DEGREE_CAP_VAR) {
        Err(_) => Ok(DEGREE_CAP_DEFAULT),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CmdError::Parse(format!("{DEGREE_CAP_VAR}: not a degree: {v:?}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationDoc {
    pub rule: String,
    pub witness: String,
}

fn violations_of(rep: &crate::report::ValidationReport) -> Vec<ViolationDoc> {
    rep.violations
        .iter()
        .map(|v| ViolationDoc { rule: v.rule.clone(), witness: v.witness.clone() })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingDegreeDoc {
    pub degree: usize,
    pub pair_space_dim: usize,
    pub value_component_dim: usize,
    pub symbol_component_dim: usize,
    pub components_in_spaces: bool,
    pub decomposition_injective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub command: String,
    pub structure: String,
    pub seed: Option<u64>,
    pub structure_valid: bool,
    pub violations: Vec<ViolationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<SplittingDegreeDoc>>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRowDoc {
    pub degree: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub dim: usize,
}

fn row_of(c: &Cohomology) -> CohomologyRowDoc {
    CohomologyRowDoc {
        degree: c.degree,
        cochain_dim: c.cochain_dim,
        cocycle_dim: c.cocycle_dim,
        coboundary_dim: c.coboundary_dim,
        dim: c.dim,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub command: String,
    pub structure: String,
    pub seed: Option<u64>,
    pub structure_valid: bool,
    pub max_degree: usize,
    pub table: Vec<CohomologyRowDoc>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderCheckDoc {
    pub order: usize,
    pub value_equation_holds: bool,
    pub bracket_route_agrees: bool,
    pub symbol_residual_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionDoc {
    pub target_order: usize,
    pub is_cocycle: bool,
    pub routes_agree: bool,
    pub class_vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_coordinates: Option<Vec<String>>,
    pub class_space_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionDoc {
    pub requested_order: usize,
    pub reached_order: usize,
    pub steps: Vec<ObstructionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jet: Option<JetDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformReport {
    pub command: String,
    pub structure: String,
    pub seed: Option<u64>,
    pub structure_valid: bool,
    pub jet_order: usize,
    pub term_violations: Vec<ViolationDoc>,
    pub orders: Vec<OrderCheckDoc>,
    pub jet_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionDoc>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitiveDoc {
    pub index: usize,
    pub constructed: bool,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub command: String,
    pub structure: String,
    pub seed: Option<u64>,
    pub structure_valid: bool,
    pub h2: CohomologyRowDoc,
    pub anchor_injective: bool,
    pub primitives: Vec<PrimitiveDoc>,
    pub rigid: bool,
    pub primitives_complete: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportDocument {
    Validate(ValidateReport),
    Cohomology(CohomologyReport),
    Deform(DeformReport),
    Rigidity(RigidityReport),
}

impl ReportDocument {
    pub fn passed(&self) -> bool {
        match self {
            ReportDocument::Validate(r) => r.passed,
            ReportDocument::Cohomology(r) => r.passed,
            ReportDocument::Deform(r) => r.passed,
            ReportDocument::Rigidity(r) => r.passed,
        }
    }

    /// Canonical JSON rendering: fixed field order, sorted maps, no timing.
    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        match self {
            ReportDocument::Validate(r) => human_validate(r),
            ReportDocument::Cohomology(r) => human_cohomology(r),
            ReportDocument::Deform(r) => human_deform(r),
            ReportDocument::Rigidity(r) => human_rigidity(r),
        }
    }
}

fn pass_str(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn push_violations(out: &mut String, vs: &[ViolationDoc]) {
    for v in vs {
        out.push_str(&format!("  violation: {} at {}\n", v.rule, v.witness));
    }
}

fn human_validate(r: &ValidateReport) -> String {
    let mut out = format!("validate {}\n", r.structure);
    out.push_str(&format!("structure axioms: {}\n", pass_str(r.structure_valid)));
    push_violations(&mut out, &r.violations);
    if let Some(rows) = &r.splitting {
        out.push_str("splitting audit (free generators declared):\n");
        for s in rows {
            match &s.error {
                Some(e) => out.push_str(&format!("  degree {}: FAIL ({e})\n", s.degree)),
                None => out.push_str(&format!(
                    "  degree {}: {} (pair space {} = {} + {})\n",
                    s.degree,
                    pass_str(s.passed),
                    s.pair_space_dim,
                    s.value_component_dim,
                    s.symbol_component_dim
                )),
            }
        }
    }
    out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
    out
}

fn human_cohomology(r: &CohomologyReport) -> String {
    let mut out = format!("cohomology {} (degrees 0..={})\n", r.structure, r.max_degree);
    if !r.structure_valid {
        out.push_str("structure axioms: FAIL (no table computed)\n");
    } else {
        out.push_str("degree  cochains  cocycles  coboundaries  classes\n");
        for row in &r.table {
            out.push_str(&format!(
                "{:>6}  {:>8}  {:>8}  {:>12}  {:>7}\n",
                row.degree, row.cochain_dim, row.cocycle_dim, row.coboundary_dim, row.dim
            ));
        }
    }
    out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
    out
}

fn human_deform(r: &DeformReport) -> String {
    let mut out = format!("deform {} with a jet of order {}\n", r.structure, r.jet_order);
    if !r.structure_valid {
        out.push_str("structure axioms: FAIL (jet not checked)\n");
        out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
        return out;
    }
    push_violations(&mut out, &r.term_violations);
    for o in &r.orders {
        out.push_str(&format!(
            "order {}: value equation {}, bracket route {}, symbol residual {}\n",
            o.order,
            pass_str(o.value_equation_holds),
            if o.bracket_route_agrees { "agrees" } else { "DISAGREES" },
            if o.symbol_residual_zero { "zero" } else { "nonzero" }
        ));
    }
    out.push_str(&format!("jet: {}\n", pass_str(r.jet_passed)));
    if let Some(ext) = &r.extension {
        out.push_str(&format!("extension toward order {}:\n", ext.requested_order));
        for step in &ext.steps {
            if step.class_vanishes {
                out.push_str(&format!("  order {}: class vanishes, term found\n", step.target_order));
            } else {
                let coords = step
                    .class_coordinates
                    .as_ref()
                    .map(|c| c.join(", "))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "  order {}: class is nonzero — coordinates [{}] over {} classes\n",
                    step.target_order, coords, step.class_space_dim
                ));
            }
        }
        out.push_str(&format!("reached order {}\n", ext.reached_order));
    }
    out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
    out
}

fn human_rigidity(r: &RigidityReport) -> String {
    let mut out = format!("rigidity {}\n", r.structure);
    if !r.structure_valid {
        out.push_str("structure axioms: FAIL (nothing computed)\n");
        out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
        return out;
    }
    out.push_str(&format!(
        "second-degree classes: {} (cochains {}, cocycles {}, coboundaries {})\n",
        r.h2.dim, r.h2.cochain_dim, r.h2.cocycle_dim, r.h2.coboundary_dim
    ));
    out.push_str(&format!("anchor injective: {}\n", if r.anchor_injective { "yes" } else { "no" }));
    for p in &r.primitives {
        match &p.failure {
            None => out.push_str(&format!("cocycle {}: primitive constructed, exact\n", p.index)),
            Some(f) => out.push_str(&format!("cocycle {}: {}\n", p.index, f)),
        }
    }
    out.push_str(&format!(
        "rigid: {}; primitives complete: {}\n",
        if r.rigid { "yes" } else { "no" },
        if r.primitives_complete { "yes" } else { "no" }
    ));
    out.push_str(&format!("overall: {}\n", pass_str(r.passed)));
    out
}

/// Validates a structure file; a `free_generators` declaration additionally
/// runs the splitting audit in degrees 0 and 1.
pub fn cmd_validate(structure_path: &Path, seed: Option<u64>) -> Result<ReportDocument, CmdError> {
    let (doc, s, gens) = load_structure_file(structure_path)?;
    let rep = validate_hlr(&s);
    let structure_valid = rep.passed();
    let splitting = match gens {
        None => None,
        Some(g) => {
            let mut rows = Vec::new();
            for n in 0..=1 {
                let row = match splitting_audit(&s.carrier, &g, n) {
                    Ok(audit) => SplittingDegreeDoc {
                        degree: n,
                        pair_space_dim: audit.mder_dim,
                        value_component_dim: audit.hom_value_dim,
                        symbol_component_dim: audit.hom_symbol_dim,
                        components_in_spaces: audit.components_in_spaces,
                        decomposition_injective: audit.decomposition_injective,
                        error: None,
                        passed: audit.passed(),
                    },
                    Err(e) => SplittingDegreeDoc {
                        degree: n,
                        pair_space_dim: 0,
                        value_component_dim: 0,
                        symbol_component_dim: 0,
                        components_in_spaces: false,
                        decomposition_injective: false,
                        error: Some(e.to_string()),
                        passed: false,
                    },
                };
                rows.push(row);
            }
            Some(rows)
        }
    };
    let splitting_ok = splitting.as_ref().is_none_or(|rows| rows.iter().all(|r| r.passed));
    let passed = structure_valid && splitting_ok;
    Ok(ReportDocument::Validate(ValidateReport {
        command: "validate".into(),
        structure: doc.name,
        seed,
        structure_valid,
        violations: violations_of(&rep),
        splitting,
        passed,
    }))
}

/// Cohomology table for degrees `0..=max_degree` (capped by the
/// `HOMDEF_DEGREE_CAP` environment variable, default 4).
pub fn cmd_cohomology(
    structure_path: &Path,
    max_degree: usize,
    seed: Option<u64>,
) -> Result<ReportDocument, CmdError> {
    let cap = degree_cap()?;
    if max_degree > cap {
        return Err(CmdError::Parse(format!(
            "max degree {max_degree} exceeds the cap {cap} (set {DEGREE_CAP_VAR} to raise it)"
        )));
    }
    let (doc, s, _) = load_structure_file(structure_path)?;
    let structure_valid = validate_hlr(&s).passed();
    let table = if structure_valid {
        (0..=max_degree).map(|n| row_of(&cohomology(&s, n))).collect()
    } else {
        Vec::new()
    };
    Ok(ReportDocument::Cohomology(CohomologyReport {
        command: "cohomology".into(),
        structure: doc.name,
        seed,
        structure_valid,
        max_degree,
        table,
        passed: structure_valid,
    }))
}

/// Checks a jet's order-by-order equations; with `extend_to` beyond the
/// jet's order, extends it term by term while the obstruction classes
/// vanish, reporting the first nonzero class otherwise.
pub fn cmd_deform(
    structure_path: &Path,
    jet_path: &Path,
    extend_to: Option<usize>,
    seed: Option<u64>,
) -> Result<ReportDocument, CmdError> {
    let (sdoc, s, _) = load_structure_file(structure_path)?;
    let (_, jet) = load_jet_file(jet_path, &sdoc.name, &s)?;
    let structure_valid = validate_hlr(&s).passed();
    if !structure_valid {
        return Ok(ReportDocument::Deform(DeformReport {
            command: "deform".into(),
            structure: sdoc.name,
            seed,
            structure_valid,
            jet_order: jet.order(),
            term_violations: Vec::new(),
            orders: Vec::new(),
            jet_passed: false,
            extension: None,
            passed: false,
        }));
    }
    let rep = check_jet(&jet);
    let orders: Vec<OrderCheckDoc> = rep
        .orders
        .iter()
        .map(|o| OrderCheckDoc {
            order: o.order,
            value_equation_holds: o.value_equation_holds,
            bracket_route_agrees: o.bracket_route_agrees,
            symbol_residual_zero: o.symbol_residual_zero,
        })
        .collect();
    let mut extension = None;
    let mut extension_ok = true;
    if let Some(target) = extend_to {
        if rep.passed && target > jet.order() {
            let mut current = jet.clone();
            let mut steps = Vec::new();
            while current.order() < target {
                let (ob, next) = extend(&current);
                steps.push(ObstructionDoc {
                    target_order: ob.target_order,
                    is_cocycle: ob.is_cocycle,
                    routes_agree: ob.display_route_agrees,
                    class_vanishes: ob.class_vanishes,
                    class_coordinates: ob
                        .class_coordinates
                        .as_ref()
                        .map(|c| c.iter().map(fmt_rat).collect()),
                    class_space_dim: ob.h3.dim,
                });
                match next {
                    Some(j) => current = j,
                    None => break,
                }
            }
            let reached = current.order();
            extension_ok = reached == target;
            extension = Some(ExtensionDoc {
                requested_order: target,
                reached_order: reached,
                steps,
                jet: if reached > jet.order() { Some(jet_to_doc(&sdoc.name, &current)) } else { None },
            });
        } else if rep.passed {
            extension = Some(ExtensionDoc {
                requested_order: target,
                reached_order: jet.order(),
                steps: Vec::new(),
                jet: None,
            });
        } else {
            extension_ok = false;
        }
    }
    let passed = rep.passed && extension_ok;
    Ok(ReportDocument::Deform(DeformReport {
        command: "deform".into(),
        structure: sdoc.name,
        seed,
        structure_valid,
        jet_order: jet.order(),
        term_violations: violations_of(&rep.term_validation),
        orders,
        jet_passed: rep.passed,
        extension,
        passed,
    }))
}

/// Second-degree rigidity evidence: class count, anchor injectivity, and
/// per-cocycle primitive construction.
pub fn cmd_rigidity(structure_path: &Path, seed: Option<u64>) -> Result<ReportDocument, CmdError> {
    let (doc, s, _) = load_structure_file(structure_path)?;
    let structure_valid = validate_hlr(&s).passed();
    if !structure_valid {
        return Ok(ReportDocument::Rigidity(RigidityReport {
            command: "rigidity".into(),
            structure: doc.name,
            seed,
            structure_valid,
            h2: CohomologyRowDoc {
                degree: 2,
                cochain_dim: 0,
                cocycle_dim: 0,
                coboundary_dim: 0,
                dim: 0,
            },
            anchor_injective: false,
            primitives: Vec::new(),
            rigid: false,
            primitives_complete: false,
            passed: false,
        }));
    }
    let cert = rigidity_certificate(&s);
    Ok(ReportDocument::Rigidity(RigidityReport {
        command: "rigidity".into(),
        structure: doc.name,
        seed,
        structure_valid,
        h2: row_of(&cert.h2),
        anchor_injective: cert.anchor_injective,
        primitives: cert
            .primitives
            .iter()
            .map(|p| PrimitiveDoc {
                index: p.index,
                constructed: p.constructed,
                exact: p.exact,
                failure: p.failure.clone(),
            })
            .collect(),
        rigid: cert.rigid,
        primitives_complete: cert.primitives_complete,
        passed: cert.rigid,
    }))
}
