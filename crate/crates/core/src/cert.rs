//! Machine-checkable JSON certificates for traces and cells.
//!
//! Paths and terms are embedded as s-expression strings; cell trees are
//! nested objects keyed by constructor name. Verification always recomputes
//! boundaries from the payloads, so a tampered certificate fails to check.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::derivation::{verify, Derivation, DerivationError};
use crate::path::{Path, PathPos};
use crate::sexpr::{parse_path, SyntaxError};
use crate::tower::{
    verify3, verify_n, AnyCell, Cell3, CellN, CellNode, MetaStep3, MetaStepN, TowerError,
};
use crate::trs::{Rewriter, RuleId, StepWitness, Trace};

#[derive(Debug, Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("declared boundary does not match the certificate body")]
    BoundaryMismatch,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

fn bad(msg: impl Into<String>) -> CertError {
    CertError::Malformed(msg.into())
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

pub fn trace_to_json(tr: &Trace) -> Value {
    json!({
        "start": tr.start.to_string(),
        "steps": tr.steps.iter().map(step_to_json).collect::<Vec<_>>(),
    })
}

fn step_to_json(s: &StepWitness) -> Value {
    json!({
        "source": s.source.to_string(),
        "pos": s.pos.0,
        "rule": s.rule.name(),
        "target": s.target.to_string(),
    })
}

fn field<'v>(obj: &'v Value, key: &str) -> Result<&'v Value, CertError> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn string_field(obj: &Value, key: &str) -> Result<String, CertError> {
    field(obj, key)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| bad(format!("field {key:?} must be a string")))
}

fn path_field(obj: &Value, key: &str) -> Result<Path, CertError> {
    Ok(parse_path(&string_field(obj, key)?)?)
}

fn pos_field(obj: &Value, key: &str) -> Result<PathPos, CertError> {
    let arr = field(obj, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field {key:?} must be an array")))?;
    let mut out = Vec::with_capacity(arr.len());
    for v in arr {
        let i = v
            .as_u64()
            .ok_or_else(|| bad("positions are non-negative integers"))?;
        out.push(i as usize);
    }
    Ok(PathPos(out))
}

fn step_from_json(v: &Value) -> Result<StepWitness, CertError> {
    let rule_name = string_field(v, "rule")?;
    let rule = RuleId::from_name(&rule_name)
        .ok_or_else(|| bad(format!("unknown rule {rule_name:?}")))?;
    Ok(StepWitness {
        source: path_field(v, "source")?,
        target: path_field(v, "target")?,
        pos: pos_field(v, "pos")?,
        rule,
    })
}

pub fn trace_from_json(v: &Value) -> Result<Trace, CertError> {
    let start = path_field(v, "start")?;
    let steps = field(v, "steps")?
        .as_array()
        .ok_or_else(|| bad("steps must be an array"))?
        .iter()
        .map(step_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Trace { start, steps })
}

// ---------------------------------------------------------------------------
// Derivation trees
// ---------------------------------------------------------------------------

fn der_to_json(d: &Derivation) -> Value {
    match d {
        Derivation::Refl(p) => json!({ "refl": p.to_string() }),
        Derivation::Step(s) => json!({ "step": step_to_json(s) }),
        Derivation::Inv(inner) => json!({ "inv": der_to_json(inner) }),
        Derivation::Comp(a, b) => json!({ "comp": [der_to_json(a), der_to_json(b)] }),
    }
}

fn one_key<'v>(v: &'v Value) -> Result<(&'v String, &'v Value), CertError> {
    let obj: &Map<String, Value> = v
        .as_object()
        .ok_or_else(|| bad("expected a single-key object"))?;
    if obj.len() != 1 {
        return Err(bad("expected exactly one constructor key"));
    }
    Ok(obj.iter().next().expect("len checked"))
}

fn pair(v: &Value) -> Result<(&Value, &Value), CertError> {
    let arr = v.as_array().ok_or_else(|| bad("expected a pair"))?;
    if arr.len() != 2 {
        return Err(bad("expected exactly two elements"));
    }
    Ok((&arr[0], &arr[1]))
}

fn der_from_json(v: &Value) -> Result<Derivation, CertError> {
    let (key, val) = one_key(v)?;
    match key.as_str() {
        "refl" => {
            let s = val.as_str().ok_or_else(|| bad("refl wants a path string"))?;
            Ok(Derivation::Refl(parse_path(s)?))
        }
        "step" => Ok(Derivation::Step(step_from_json(val)?)),
        "inv" => Ok(Derivation::inv(der_from_json(val)?)),
        "comp" => {
            let (a, b) = pair(val)?;
            Ok(Derivation::comp(der_from_json(a)?, der_from_json(b)?))
        }
        other => Err(bad(format!("unknown derivation constructor {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// 3-cells
// ---------------------------------------------------------------------------

fn ms3_to_json(m: &MetaStep3) -> Value {
    match m {
        MetaStep3::VCompReflRight(d) => json!({ "meta": "vcomp_refl_right", "cell": der_to_json(d) }),
        MetaStep3::VCompReflLeft(d) => json!({ "meta": "vcomp_refl_left", "cell": der_to_json(d) }),
        MetaStep3::VCompAssoc(a, b, c) => json!({
            "meta": "vcomp_assoc",
            "cells": [der_to_json(a), der_to_json(b), der_to_json(c)],
        }),
        MetaStep3::InvInv(d) => json!({ "meta": "inv_inv", "cell": der_to_json(d) }),
        MetaStep3::VCompInvRight(d) => json!({ "meta": "vcomp_inv_right", "cell": der_to_json(d) }),
        MetaStep3::VCompInvLeft(d) => json!({ "meta": "vcomp_inv_left", "cell": der_to_json(d) }),
        MetaStep3::StepEq(a, b) => json!({ "meta": "step_eq", "steps": [step_to_json(a), step_to_json(b)] }),
        MetaStep3::Can(d) => json!({ "meta": "can", "cell": der_to_json(d) }),
        MetaStep3::Pentagon(f, g, h, k) => json!({
            "meta": "pentagon",
            "paths": [f.to_string(), g.to_string(), h.to_string(), k.to_string()],
        }),
        MetaStep3::Triangle(f, g) => json!({
            "meta": "triangle",
            "paths": [f.to_string(), g.to_string()],
        }),
        MetaStep3::Interchange(a, b) => json!({
            "meta": "interchange",
            "cells": [der_to_json(a), der_to_json(b)],
        }),
        MetaStep3::WhiskerL(h, d) => json!({
            "meta": "whisker_left",
            "path": h.to_string(),
            "cell": der_to_json(d),
        }),
        MetaStep3::WhiskerR(d, g) => json!({
            "meta": "whisker_right",
            "cell": der_to_json(d),
            "path": g.to_string(),
        }),
    }
}

fn cells_field(v: &Value, want: usize) -> Result<Vec<&Value>, CertError> {
    let arr = field(v, "cells")?
        .as_array()
        .ok_or_else(|| bad("cells must be an array"))?;
    if arr.len() != want {
        return Err(bad(format!("expected {want} cells, got {}", arr.len())));
    }
    Ok(arr.iter().collect())
}

fn paths_field(v: &Value, want: usize) -> Result<Vec<Path>, CertError> {
    let arr = field(v, "paths")?
        .as_array()
        .ok_or_else(|| bad("paths must be an array"))?;
    if arr.len() != want {
        return Err(bad(format!("expected {want} paths, got {}", arr.len())));
    }
    arr.iter()
        .map(|p| {
            let s = p.as_str().ok_or_else(|| bad("paths are strings"))?;
            Ok(parse_path(s)?)
        })
        .collect()
}

fn ms3_from_json(v: &Value) -> Result<MetaStep3, CertError> {
    let meta = string_field(v, "meta")?;
    match meta.as_str() {
        "vcomp_refl_right" => Ok(MetaStep3::VCompReflRight(der_from_json(field(v, "cell")?)?)),
        "vcomp_refl_left" => Ok(MetaStep3::VCompReflLeft(der_from_json(field(v, "cell")?)?)),
        "vcomp_assoc" => {
            let c = cells_field(v, 3)?;
            Ok(MetaStep3::VCompAssoc(
                der_from_json(c[0])?,
                der_from_json(c[1])?,
                der_from_json(c[2])?,
            ))
        }
        "inv_inv" => Ok(MetaStep3::InvInv(der_from_json(field(v, "cell")?)?)),
        "vcomp_inv_right" => Ok(MetaStep3::VCompInvRight(der_from_json(field(v, "cell")?)?)),
        "vcomp_inv_left" => Ok(MetaStep3::VCompInvLeft(der_from_json(field(v, "cell")?)?)),
        "step_eq" => {
            let arr = field(v, "steps")?
                .as_array()
                .ok_or_else(|| bad("steps must be an array"))?;
            if arr.len() != 2 {
                return Err(bad("step_eq wants two steps"));
            }
            Ok(MetaStep3::StepEq(
                step_from_json(&arr[0])?,
                step_from_json(&arr[1])?,
            ))
        }
        "can" => Ok(MetaStep3::Can(der_from_json(field(v, "cell")?)?)),
        "pentagon" => {
            let p = paths_field(v, 4)?;
            Ok(MetaStep3::Pentagon(
                p[0].clone(),
                p[1].clone(),
                p[2].clone(),
                p[3].clone(),
            ))
        }
        "triangle" => {
            let p = paths_field(v, 2)?;
            Ok(MetaStep3::Triangle(p[0].clone(), p[1].clone()))
        }
        "interchange" => {
            let c = cells_field(v, 2)?;
            Ok(MetaStep3::Interchange(
                der_from_json(c[0])?,
                der_from_json(c[1])?,
            ))
        }
        "whisker_left" => Ok(MetaStep3::WhiskerL(
            path_field(v, "path")?,
            der_from_json(field(v, "cell")?)?,
        )),
        "whisker_right" => Ok(MetaStep3::WhiskerR(
            der_from_json(field(v, "cell")?)?,
            path_field(v, "path")?,
        )),
        other => Err(bad(format!("unknown meta-step {other:?}"))),
    }
}

fn cell3_to_json(c: &Cell3) -> Value {
    match c {
        Cell3::Refl(d) => json!({ "refl": der_to_json(d) }),
        Cell3::Step(m) => json!({ "step": ms3_to_json(m) }),
        Cell3::Inv(inner) => json!({ "inv": cell3_to_json(inner) }),
        Cell3::Comp(a, b) => json!({ "comp": [cell3_to_json(a), cell3_to_json(b)] }),
    }
}

fn cell3_from_json(v: &Value) -> Result<Cell3, CertError> {
    let (key, val) = one_key(v)?;
    match key.as_str() {
        "refl" => Ok(Cell3::Refl(der_from_json(val)?)),
        "step" => Ok(Cell3::Step(ms3_from_json(val)?)),
        "inv" => Ok(Cell3::inv(cell3_from_json(val)?)),
        "comp" => {
            let (a, b) = pair(val)?;
            Ok(Cell3::comp(cell3_from_json(a)?, cell3_from_json(b)?))
        }
        other => Err(bad(format!("unknown 3-cell constructor {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Higher cells
// ---------------------------------------------------------------------------

fn anycell_to_json(c: &AnyCell) -> Value {
    match c {
        AnyCell::Two(d) => json!({ "dim": 2, "tree": der_to_json(d) }),
        AnyCell::Three(c3) => json!({ "dim": 3, "tree": cell3_to_json(c3) }),
        AnyCell::Higher(cn) => json!({ "dim": cn.dim, "tree": celln_to_json(cn) }),
    }
}

fn anycell_from_json(v: &Value) -> Result<AnyCell, CertError> {
    let dim = field(v, "dim")?
        .as_u64()
        .ok_or_else(|| bad("dim must be an integer"))?;
    let tree = field(v, "tree")?;
    match dim {
        2 => Ok(AnyCell::Two(der_from_json(tree)?)),
        3 => Ok(AnyCell::Three(cell3_from_json(tree)?)),
        n if n >= 4 => Ok(AnyCell::Higher(celln_from_json(tree, n as u32)?)),
        other => Err(bad(format!("unsupported cell dimension {other}"))),
    }
}

fn msn_to_json(m: &MetaStepN) -> Value {
    match m {
        MetaStepN::VCompReflRight(c) => json!({ "meta": "vcomp_refl_right", "cell": anycell_to_json(c) }),
        MetaStepN::VCompReflLeft(c) => json!({ "meta": "vcomp_refl_left", "cell": anycell_to_json(c) }),
        MetaStepN::VCompAssoc(a, b, c) => json!({
            "meta": "vcomp_assoc",
            "cells": [anycell_to_json(a), anycell_to_json(b), anycell_to_json(c)],
        }),
        MetaStepN::InvInv(c) => json!({ "meta": "inv_inv", "cell": anycell_to_json(c) }),
        MetaStepN::VCompInvRight(c) => json!({ "meta": "vcomp_inv_right", "cell": anycell_to_json(c) }),
        MetaStepN::VCompInvLeft(c) => json!({ "meta": "vcomp_inv_left", "cell": anycell_to_json(c) }),
        MetaStepN::StepEq(a, b) => json!({
            "meta": "step_eq",
            "cells": [anycell_to_json(a), anycell_to_json(b)],
        }),
        MetaStepN::Can(c) => json!({ "meta": "can", "cell": anycell_to_json(c) }),
    }
}

fn msn_from_json(v: &Value) -> Result<MetaStepN, CertError> {
    let meta = string_field(v, "meta")?;
    let cell = |v: &Value| -> Result<AnyCell, CertError> { anycell_from_json(field(v, "cell")?) };
    match meta.as_str() {
        "vcomp_refl_right" => Ok(MetaStepN::VCompReflRight(cell(v)?)),
        "vcomp_refl_left" => Ok(MetaStepN::VCompReflLeft(cell(v)?)),
        "vcomp_assoc" => {
            let c = cells_field(v, 3)?;
            Ok(MetaStepN::VCompAssoc(
                anycell_from_json(c[0])?,
                anycell_from_json(c[1])?,
                anycell_from_json(c[2])?,
            ))
        }
        "inv_inv" => Ok(MetaStepN::InvInv(cell(v)?)),
        "vcomp_inv_right" => Ok(MetaStepN::VCompInvRight(cell(v)?)),
        "vcomp_inv_left" => Ok(MetaStepN::VCompInvLeft(cell(v)?)),
        "step_eq" => {
            let c = cells_field(v, 2)?;
            Ok(MetaStepN::StepEq(
                anycell_from_json(c[0])?,
                anycell_from_json(c[1])?,
            ))
        }
        "can" => Ok(MetaStepN::Can(cell(v)?)),
        other => Err(bad(format!("unknown meta-step {other:?}"))),
    }
}

fn celln_to_json(c: &CellN) -> Value {
    match &*c.node {
        CellNode::Refl(lower) => json!({ "refl": anycell_to_json(lower) }),
        CellNode::Step(m) => json!({ "step": msn_to_json(m) }),
        CellNode::Inv(inner) => json!({ "inv": celln_to_json(inner) }),
        CellNode::Comp(a, b) => json!({ "comp": [celln_to_json(a), celln_to_json(b)] }),
    }
}

fn celln_from_json(v: &Value, dim: u32) -> Result<CellN, CertError> {
    let (key, val) = one_key(v)?;
    let node = match key.as_str() {
        "refl" => CellNode::Refl(anycell_from_json(val)?),
        "step" => CellNode::Step(msn_from_json(val)?),
        "inv" => CellNode::Inv(celln_from_json(val, dim)?),
        "comp" => {
            let (a, b) = pair(val)?;
            CellNode::Comp(celln_from_json(a, dim)?, celln_from_json(b, dim)?)
        }
        other => return Err(bad(format!("unknown cell constructor {other:?}"))),
    };
    Ok(CellN::new(dim, node))
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// A verifiable certificate for a cell of the tower.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Cell2 {
        src: Path,
        tgt: Path,
        body: Derivation,
    },
    Cell3 {
        body: Cell3,
    },
    CellN {
        body: CellN,
    },
}

impl Certificate {
    pub fn for_derivation(d: Derivation) -> Certificate {
        Certificate::Cell2 {
            src: d.src().clone(),
            tgt: d.tgt().clone(),
            body: d,
        }
    }

    pub fn for_cell3(c: Cell3) -> Certificate {
        Certificate::Cell3 { body: c }
    }

    pub fn for_celln(c: CellN) -> Certificate {
        Certificate::CellN { body: c }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Cell2 { .. } => "cell2",
            Certificate::Cell3 { .. } => "cell3",
            Certificate::CellN { .. } => "cellN",
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            Certificate::Cell2 { .. } => 2,
            Certificate::Cell3 { .. } => 3,
            Certificate::CellN { body } => body.dim,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Cell2 { src, tgt, body } => json!({
                "kind": "cell2",
                "src": src.to_string(),
                "tgt": tgt.to_string(),
                "tree": der_to_json(body),
            }),
            Certificate::Cell3 { body } => json!({
                "kind": "cell3",
                "dim": 3,
                "tree": cell3_to_json(body),
            }),
            Certificate::CellN { body } => json!({
                "kind": "cellN",
                "dim": body.dim,
                "tree": celln_to_json(body),
            }),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<Certificate, CertError> {
        match string_field(v, "kind")?.as_str() {
            "cell2" => Ok(Certificate::Cell2 {
                src: path_field(v, "src")?,
                tgt: path_field(v, "tgt")?,
                body: der_from_json(field(v, "tree")?)?,
            }),
            "cell3" => Ok(Certificate::Cell3 {
                body: cell3_from_json(field(v, "tree")?)?,
            }),
            "cellN" => {
                let dim = field(v, "dim")?
                    .as_u64()
                    .ok_or_else(|| bad("dim must be an integer"))?;
                if dim < 4 {
                    return Err(bad("cellN certificates have dimension >= 4"));
                }
                Ok(Certificate::CellN {
                    body: celln_from_json(field(v, "tree")?, dim as u32)?,
                })
            }
            other => Err(bad(format!("unknown certificate kind {other:?}"))),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Certificate, CertError> {
        Certificate::from_json(&serde_json::from_str(s)?)
    }

    /// Full verification: structural checks plus declared-boundary
    /// consistency for 2-cells.
    pub fn verify(&self, rw: &Rewriter) -> Result<(), CertError> {
        match self {
            Certificate::Cell2 { src, tgt, body } => {
                verify(body)?;
                if !body.src().alpha_eq(src) || !body.tgt().alpha_eq(tgt) {
                    return Err(CertError::BoundaryMismatch);
                }
                Ok(())
            }
            Certificate::Cell3 { body } => Ok(verify3(rw, body)?),
            Certificate::CellN { body } => Ok(verify_n(rw, body)?),
        }
    }

    /// The globular identities at this certificate's dimension.
    pub fn check_globular(&self, rw: &Rewriter) -> bool {
        let cell = match self {
            Certificate::Cell2 { body, .. } => AnyCell::Two(body.clone()),
            Certificate::Cell3 { body } => AnyCell::Three(body.clone()),
            Certificate::CellN { body } => AnyCell::Higher(body.clone()),
        };
        crate::tower::globular_check(rw, &cell)
    }
}
