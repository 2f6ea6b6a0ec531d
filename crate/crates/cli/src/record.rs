//! Persisted result shapes. Every record carries the schema version as its
//! first field, and field order is fixed by the struct definitions so a rerun
//! with the same configuration emits byte-identical JSON.

use gelfand_core::dn_model::DnReport;
use gelfand_core::hypothesis::{ConfigReport, NodeAnalysis, SubgroupKind, VerdictRow};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 2;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RootsRecord {
    pub schema: u32,
    pub command: String,
    pub type_label: String,
    pub rank: u8,
    pub coefficients: Vec<i64>,
    pub reference: Vec<i64>,
    pub matches: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerifyRecord {
    pub schema: u32,
    pub command: String,
    pub type_label: String,
    pub k: usize,
    pub h: u32,
    pub subgroup: SubgroupKind,
    pub row: VerdictRow,
    /// Structural report for the marked node inside the finite group.
    pub analysis: Option<NodeAnalysis>,
    /// Full per-modulus report when the subgroup lives in the quotient.
    pub config: Option<ConfigReport>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClassifyRecord {
    pub schema: u32,
    pub command: String,
    pub type_label: String,
    pub row: VerdictRow,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SelfCheckRecord {
    pub schema: u32,
    pub command: String,
    pub type_label: String,
    pub k: usize,
    pub h: u32,
    pub quotient_order: u64,
    /// Folded and directly enumerated actions agree on degree, rank,
    /// suborbit sizes and both verdicts, for both affine subgroups.
    pub consistent: bool,
    /// Norm of the induced trivial character equals the double coset count.
    pub norm_matches_double_cosets: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HypothesisRecord {
    pub schema: u32,
    pub command: String,
    pub type_label: String,
    pub analysis: NodeAnalysis,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DnRecord {
    pub schema: u32,
    pub command: String,
    pub report: DnReport,
}

/// A skipped configuration still yields a record; these two outcomes drive
/// the process exit code.
#[derive(Clone, Copy, Debug, Default)]
pub struct Outcome {
    pub disagreement: bool,
    pub skipped: bool,
}

impl Outcome {
    pub fn absorb_row(&mut self, row: &VerdictRow) {
        if row.skipped.is_some() {
            self.skipped = true;
        }
        if row.agreement == Some(false) {
            self.disagreement = true;
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.disagreement {
            1
        } else if self.skipped {
            2
        } else {
            0
        }
    }
}
