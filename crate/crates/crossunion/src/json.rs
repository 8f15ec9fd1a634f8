//! JSON formats for families, pairs, compression traces and search results.
//!
//! A family is `{"n": 4, "sets": [[1,2],[3],[]]}`: ascending 1-based element
//! arrays, the empty array standing for `∅`. A pair is a two-element array
//! of families.

use crossunion_core::search::{SearchResult, Witness};
use crossunion_core::transforms::{CompressionStep, CompressionTrace, Side, StepKind};
use crossunion_core::{ElementSet, FamilyPair, GroundSet, SetFamily};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("ground size {0} outside [1, 20]")]
    Ground(u64),
    #[error("element {element} outside [1, {n}]")]
    Element { element: u64, n: u32 },
    #[error("element {0} repeated within one set")]
    RepeatedElement(u64),
    #[error("elements of {0:?} are not ascending")]
    Unsorted(Vec<u64>),
    #[error("set {0:?} listed twice")]
    DuplicateSet(Vec<u64>),
    #[error("pair components use ground sizes {0} and {1}")]
    GroundMismatch(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub n: u64,
    pub sets: Vec<Vec<u64>>,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: u64::from(f.n()),
            sets: f.iter().map(|s| s.elements().map(u64::from).collect()).collect(),
        }
    }
}

impl TryFrom<&FamilyJson> for SetFamily {
    type Error = FormatError;

    fn try_from(j: &FamilyJson) -> Result<Self, FormatError> {
        if !(1..=20).contains(&j.n) {
            return Err(FormatError::Ground(j.n));
        }
        let n = j.n as u32;
        let ground = GroundSet::new(n).map_err(|_| FormatError::Ground(j.n))?;
        let mut members = Vec::with_capacity(j.sets.len());
        let mut seen = std::collections::HashSet::new();
        for set in &j.sets {
            let mut x = ElementSet::EMPTY;
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(FormatError::RepeatedElement(w[0]));
                }
                if w[0] > w[1] {
                    return Err(FormatError::Unsorted(set.clone()));
                }
            }
            for &e in set {
                if e == 0 || e > j.n {
                    return Err(FormatError::Element { element: e, n });
                }
                x = x.with(e as u32);
            }
            if !seen.insert(x) {
                return Err(FormatError::DuplicateSet(set.clone()));
            }
            members.push(x);
        }
        Ok(SetFamily::new(ground, members).expect("members checked against the ground set"))
    }
}

pub fn family_to_value(f: &SetFamily) -> serde_json::Value {
    serde_json::to_value(FamilyJson::from(f)).expect("families serialize")
}

pub fn parse_family(text: &str) -> Result<SetFamily, FormatError> {
    let j: FamilyJson = serde_json::from_str(text)?;
    SetFamily::try_from(&j)
}

pub fn family_to_string(f: &SetFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("families serialize")
}

pub fn parse_pair(text: &str) -> Result<FamilyPair, FormatError> {
    let [a, b]: [FamilyJson; 2] = serde_json::from_str(text)?;
    let (a, b) = (SetFamily::try_from(&a)?, SetFamily::try_from(&b)?);
    if a.n() != b.n() {
        return Err(FormatError::GroundMismatch(a.n(), b.n()));
    }
    Ok(FamilyPair { first: a, second: b })
}

pub fn pair_to_value(p: &FamilyPair) -> serde_json::Value {
    serde_json::json!([family_to_value(&p.first), family_to_value(&p.second)])
}

pub fn pair_to_string(p: &FamilyPair) -> String {
    pair_to_value(p).to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower_other: Option<bool>,
    pub sizes_before: [usize; 2],
    pub sizes_after: [usize; 2],
    pub tops_after: [u32; 2],
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::A => "A",
        Side::B => "B",
    }
}

impl From<&CompressionStep> for StepJson {
    fn from(st: &CompressionStep) -> Self {
        let (kind, side, lower_other) = match st.kind {
            StepKind::LowerA => ("lower_A", None, None),
            StepKind::LowerB => ("lower_B", None, None),
            StepKind::UpperA => ("upper_A", None, None),
            StepKind::UpperB => ("upper_B", None, None),
            StepKind::FillToFullLevel { side, lower_other } => {
                ("fill_to_full_level", Some(side_name(side).to_string()), Some(lower_other))
            }
        };
        StepJson {
            kind: kind.to_string(),
            side,
            lower_other,
            sizes_before: [st.sizes_before.0, st.sizes_before.1],
            sizes_after: [st.sizes_after.0, st.sizes_after.1],
            tops_after: [st.tops_after.0, st.tops_after.1],
        }
    }
}

pub fn trace_to_value(t: &CompressionTrace) -> serde_json::Value {
    serde_json::to_value(t.steps.iter().map(StepJson::from).collect::<Vec<_>>())
        .expect("traces serialize")
}

fn witness_to_value(w: &Witness) -> serde_json::Value {
    serde_json::Value::Array(w.families().into_iter().map(family_to_value).collect())
}

/// `{"max", "witnesses", "nodes", "ms"}`.
pub fn search_to_value(r: &SearchResult, ms: u128) -> serde_json::Value {
    serde_json::json!({
        "max": r.max_value,
        "witnesses": r.witnesses.iter().map(witness_to_value).collect::<Vec<_>>(),
        "nodes": r.nodes_explored,
        "ms": ms as u64,
    })
}

/// Parses the witnesses of a search document back into families.
pub fn parse_witnesses(v: &serde_json::Value) -> Result<Vec<Vec<SetFamily>>, FormatError> {
    let raw: Vec<Vec<FamilyJson>> = serde_json::from_value(v["witnesses"].clone())?;
    raw.iter().map(|w| w.iter().map(SetFamily::try_from).collect()).collect()
}
