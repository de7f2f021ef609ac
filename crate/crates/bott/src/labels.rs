//! Paper labels (I3, A1..A7; I4, A2..A32, Aa1..Aa32) for the n = 3 and
//! n = 4 Bott matrices, loaded from the fixture tables shipped in-repo.
//!
//! The labels are the naming scheme of the classification theorems; the
//! bijection with strict-upper bit patterns is data, not something the code
//! derives.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::bott::BottMatrix;

const LABELS_N3: &str = include_str!("../../../fixtures/labels_n3.json");
const LABELS_N4: &str = include_str!("../../../fixtures/labels_n4.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("no label table for dimension {0}")]
    UnsupportedDimension(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("label fixture is malformed: {0}")]
    BadFixture(String),
}

/// Bijective mapping between paper labels and Bott matrices of one dimension.
#[derive(Debug, Clone)]
pub struct LabelTable {
    n: usize,
    by_label: BTreeMap<String, BottMatrix>,
    by_id: BTreeMap<u64, String>,
}

#[derive(Deserialize)]
struct Fixture {
    n: usize,
    labels: BTreeMap<String, String>,
}

impl LabelTable {
    /// The shipped table for n = 3 or n = 4.
    pub fn for_dim(n: usize) -> Result<LabelTable, LabelError> {
        let raw = match n {
            3 => LABELS_N3,
            4 => LABELS_N4,
            _ => return Err(LabelError::UnsupportedDimension(n)),
        };
        Self::from_json(raw)
    }

    pub fn from_json(raw: &str) -> Result<LabelTable, LabelError> {
        let fx: Fixture =
            serde_json::from_str(raw).map_err(|e| LabelError::BadFixture(e.to_string()))?;
        let mut by_label = BTreeMap::new();
        let mut by_id = BTreeMap::new();
        for (label, bits) in fx.labels {
            let m = BottMatrix::from_bit_string(fx.n, &bits)
                .map_err(|e| LabelError::BadFixture(format!("{label}: {e}")))?;
            by_id.insert(m.id(), label.clone());
            by_label.insert(label, m);
        }
        let expected = 1usize << BottMatrix::bit_len(fx.n);
        if by_label.len() != expected || by_id.len() != expected {
            return Err(LabelError::BadFixture(format!(
                "expected a bijection on {expected} matrices, got {} labels / {} ids",
                by_label.len(),
                by_id.len()
            )));
        }
        Ok(LabelTable {
            n: fx.n,
            by_label,
            by_id,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, label: &str) -> Result<BottMatrix, LabelError> {
        self.by_label
            .get(label)
            .cloned()
            .ok_or_else(|| LabelError::UnknownLabel(label.to_string()))
    }

    pub fn label_of(&self, m: &BottMatrix) -> Option<&str> {
        self.by_id.get(&m.id()).map(String::as_str)
    }

    pub fn label_of_id(&self, id: u64) -> Option<&str> {
        self.by_id.get(&id).map(String::as_str)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.by_label.keys().map(String::as_str)
    }
}

/// Resolve a matrix given by paper label, compact bit form, or JSON rows,
/// in that priority order.
pub fn resolve_matrix(input: &str) -> Result<BottMatrix, String> {
    for n in [3usize, 4] {
        if let Ok(t) = LabelTable::for_dim(n) {
            if let Ok(m) = t.matrix(input) {
                return Ok(m);
            }
        }
    }
    if let Ok(m) = BottMatrix::from_compact(input) {
        return Ok(m);
    }
    if let Ok(m) = serde_json::from_str::<BottMatrix>(input) {
        return Ok(m);
    }
    Err(format!(
        "cannot resolve {input:?}: not a known label, compact form, or JSON matrix"
    ))
}
