//! Input files and JSON encodings of library values.

use std::path::Path;
use std::sync::Arc;

use hurwitz_core::braid::{self, Multidiscriminant};
use hurwitz_core::lifting::{LiftingInvariant, SchurCover};
use hurwitz_core::{Caps, ClassSet, Component, GTuple, Permutation, PermutationGroup};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// `{"degree": 3, "generators": ["(1, 2)", "(1, 2, 3)"]}`
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// A component: the permutation degree and a product-one tuple. The other
/// fields are written by the tool and checked when present.
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub perm_degree: usize,
    pub tuple: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy_order: Option<u128>,
}

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse_group(bytes: &[u8], label: &str) -> Result<PermutationGroup, CliError> {
    let f: GroupFile = serde_json::from_slice(bytes)
        .map_err(|e| CliError::Input(format!("{label}: malformed group file: {e}")))?;
    let gens = f
        .generators
        .iter()
        .map(|s| Permutation::parse_cycles(s, f.degree))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(format!("{label}: {e}")))?;
    Ok(PermutationGroup::new(f.degree, gens)?)
}

pub fn parse_component(bytes: &[u8], label: &str, caps: &Caps) -> Result<Component, CliError> {
    let f: ComponentFile = serde_json::from_slice(bytes)
        .map_err(|e| CliError::Input(format!("{label}: malformed component file: {e}")))?;
    if let Some(d) = f.degree {
        if d != f.tuple.len() {
            return Err(CliError::Input(format!(
                "{label}: degree {d} but the tuple has {} entries",
                f.tuple.len()
            )));
        }
    }
    let t = GTuple::parse(f.perm_degree, &f.tuple)
        .map_err(|e| CliError::Input(format!("{label}: {e}")))?;
    Ok(braid::component_of(&t, caps.max_orbit)?)
}

/// `transpositions`, `nonidentity`, `all`, or cycle strings separated by
/// `;` (closed under conjugation).
pub fn parse_classes(spec: &str, g: &PermutationGroup, caps: &Caps) -> Result<ClassSet, CliError> {
    let table = Arc::new(g.conjugacy_classes(caps.max_elements)?);
    Ok(match spec.trim() {
        "transpositions" => ClassSet::filtered(table, Permutation::is_transposition),
        "nonidentity" => ClassSet::nonidentity(table),
        "all" => ClassSet::all(table),
        list => {
            let reps = list
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| Permutation::parse_cycles(s, g.degree()))
                .collect::<Result<Vec<_>, _>>()?;
            ClassSet::closure_of(table, &reps)?
        }
    })
}

pub fn component_json(x: &Component) -> Value {
    json!({
        "degree": x.degree(),
        "perm_degree": x.perm_degree(),
        "tuple": x.canonical().to_strings(),
        "orbit_size": x.orbit_size(),
        "monodromy_order": x.monodromy().order(),
    })
}

pub fn components_json(xs: &[Component]) -> Value {
    Value::Array(xs.iter().map(component_json).collect())
}

pub fn classes_json(c: &ClassSet) -> Value {
    Value::Array(
        c.class_ids()
            .iter()
            .map(|&id| {
                let class = c.table().class(id);
                json!({
                    "representative": class.representative.to_string(),
                    "size": class.elements.len(),
                    "order": class.representative.order(),
                })
            })
            .collect(),
    )
}

pub fn multidiscriminant_json(mu: &Multidiscriminant, c: &ClassSet) -> Value {
    Value::Array(
        mu.counts()
            .iter()
            .map(|(&id, &n)| {
                json!({
                    "class": c.table().class(id).representative.to_string(),
                    "count": n,
                })
            })
            .collect(),
    )
}

pub fn invariant_json(v: &LiftingInvariant, cover: &SchurCover) -> Value {
    json!({
        "s_part": v.s_part.0,
        "s_projection": cover.project(v.s_part).to_string(),
        "psi": multidiscriminant_json(&v.psi, cover.classes()),
    })
}

pub fn group_json(g: &PermutationGroup) -> Value {
    json!({
        "degree": g.degree(),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "order": g.order(),
    })
}
