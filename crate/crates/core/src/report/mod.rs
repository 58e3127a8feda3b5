//! Verification reports: input documents, the check pipeline, windowed
//! runs on infinite groupoids and the JSON report format.

mod encode;
mod input;
mod pipeline;
pub mod registry;
mod windows;

pub use encode::{matrix_doc, op_doc, parse_matrix, parse_op, Entry, MatrixDoc, MultiplierDoc};
pub use input::{
    export_algebra, export_groupoid, load_input, AlgebraDoc, CoproductDoc, EDoc, GroupoidSpec, InputDocument,
    InputError, Presentation, Subject,
};
pub use pipeline::{run_finite, verify, Computed, FiniteRun, Options, PathChoice};
pub use windows::{local_unit, sample_infinite};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coalg::Violation;
use crate::exactla::Scalar;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub law: String,
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
}

impl Counterexample {
    pub fn from_violation(v: &Violation, labels: &[String]) -> Self {
        Counterexample {
            law: v.law.clone(),
            basis: v.basis.clone(),
            labels: v
                .basis
                .iter()
                .map(|&b| labels.get(b).cloned().unwrap_or_else(|| format!("#{b}")))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prerequisite: Option<String>,
    pub detail: String,
    pub witness_refs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Basis of `ε_s(A)` or `ε_t(A)`; vectors are given over the labels of `A`
/// when the image lies in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<(String, Scalar)>>>,
}

/// The antipode as a matrix when it maps `A` into `A`, otherwise as the
/// multipliers `S(e_a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<MultiplierDoc>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<MultiplierDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Scalar>>,
    #[serde(rename = "G1", default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<MatrixDoc>,
    #[serde(rename = "G2", default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<MatrixDoc>,
    #[serde(rename = "R1", default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<MatrixDoc>,
    #[serde(rename = "R2", default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<MatrixDoc>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<AntipodeDoc>,
    #[serde(rename = "F1", default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<MultiplierDoc>,
    #[serde(rename = "F2", default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<MultiplierDoc>,
    #[serde(rename = "F3", default, skip_serializing_if = "Option::is_none")]
    pub f3: Option<MultiplierDoc>,
    #[serde(rename = "F4", default, skip_serializing_if = "Option::is_none")]
    pub f4: Option<MultiplierDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_image: Option<ImageDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_image: Option<ImageDoc>,
}

/// Classification flags; `None` when the flag could not be decided.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub wmha: bool,
    pub unital: Option<bool>,
    pub regular: Option<bool>,
    pub star: Option<bool>,
    pub weak_hopf: Option<bool>,
    pub hopf: Option<bool>,
    pub factorizable: Option<bool>,
    pub reasons: Vec<String>,
}

impl Classification {
    /// `wmha ✓  regular ✓  star ✓  weak_hopf ✓  hopf ✗`, with `-` for undecided flags.
    pub fn one_line(&self) -> String {
        let mark = |b: Option<bool>| match b {
            Some(true) => "✓",
            Some(false) => "✗",
            None => "-",
        };
        format!(
            "wmha {}  regular {}  star {}  weak_hopf {}  hopf {}",
            mark(Some(self.wmha)),
            mark(self.regular),
            mark(self.star),
            mark(self.weak_hopf),
            mark(self.hopf)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub k: usize,
    pub morphisms: usize,
    pub verdict: Status,
    pub classification: Classification,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub input_digest: String,
    pub seed: u64,
    pub verdict: Status,
    pub paths: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub witnesses: Witnesses,
    pub classification: Classification,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub windows: Vec<WindowRecord>,
    /// Free-form facts about the run, keyed by name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `pass` iff no check failed.
pub fn verdict_of(checks: &[CheckRecord]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

/// `sha256:<hex>` of the given bytes.
pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Digest for a preset given on the command line.
pub fn preset_digest(name: &str, model: &str) -> String {
    digest_bytes(format!("preset={name}\nmodel={model}\n").as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            digest_bytes(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_ne!(
            preset_digest("pair:2", "function"),
            preset_digest("pair:2", "convolution")
        );
    }

    #[test]
    fn one_line_marks() {
        let c = Classification {
            wmha: true,
            regular: Some(true),
            hopf: Some(false),
            ..Default::default()
        };
        assert_eq!(c.one_line(), "wmha ✓  regular ✓  star -  weak_hopf -  hopf ✗");
    }
}
