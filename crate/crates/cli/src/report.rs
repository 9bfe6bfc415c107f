//! Machine-readable report records. Field order is the JSON key order.
//! See `docs/report-schema.md`.

use serde::{Deserialize, Serialize};

use crate::config::CampaignConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub config_hash: String,
    pub config: CampaignConfig,
    pub cases: Vec<CaseRecord>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseRecord {
    pub m: u64,
    pub n: u64,
    pub nu: u32,
    pub delta: u64,
    pub dim: u64,
    pub seed: u64,
    pub config_hash: String,
    pub formula: FormulaCheck,
    pub clifford: CliffordCheck,
    pub signs: SignTable,
    pub independence: IndependenceStats,
    pub cohomology: CohomologyCheck,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaCheck {
    pub claim: String,
    pub pspan_wall: u64,
    pub upper_bound_fibration: u64,
    pub sspan_cpn: u64,
    pub bounds_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityTally {
    pub identity: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CliffordCheck {
    pub claim: String,
    pub matrix_count: usize,
    pub expected_count: usize,
    pub identities: Vec<IdentityTally>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignCounts {
    pub plus: u64,
    pub minus: u64,
    pub fail: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignRow {
    /// 1-based field index
    pub field: usize,
    /// `sigma` or `tau`
    pub involution: String,
    pub predicted: i64,
    pub observed: SignCounts,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignTable {
    pub claim: String,
    pub samples: u64,
    pub rows: Vec<SignRow>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinMax {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndependenceStats {
    pub claim: String,
    pub samples: u64,
    pub min_rank: usize,
    pub rank_always_delta: bool,
    /// range over samples of `σ_min / σ_max`
    pub min_relative_singular_value: MinMax,
    /// max over samples and fields of `|⟨z,w⟩|`, `|⟨v,u⟩|`, `|Re(λμ̄)|`
    pub tangency_max: [f64; 3],
    pub tangency_ok: bool,
    pub well_defined_ok: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CohomologyCheck {
    pub claim: String,
    /// `(degree, rendering)` of each nonzero component of `w(Q(m,n))`
    pub total_sw: Vec<(u32, String)>,
    pub sw_upper_bound: u64,
    /// smallest ruled-out `k`, if any
    pub ruled_out_at: Option<u32>,
    /// a multiset of classes surviving at `k = swUpperBound`
    pub surviving_at_bound: Option<String>,
    pub at_least_pspan: bool,
}
