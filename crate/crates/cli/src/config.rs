use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wallspan_core::fields::Tolerances;
use wallspan_core::WallParams;

use crate::error::CliError;

/// Version of the JSON report layout; bump on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Inclusive integer range, written `A` or `A..B` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn new(lo: u64, hi: u64) -> Self {
        Self { lo, hi }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once("..") {
            None => {
                let v = parse(s)?;
                Ok(Span::new(v, v))
            }
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(Span::new(parse(a)?, parse(b)?))
            }
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignConfig {
    pub m_range: Span,
    pub n_range: Span,
    pub samples_per_case: u64,
    pub seed: u64,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub output_format: OutputFormat,
}

impl Default for CampaignConfig {
    /// `m ∈ {1..4}`, `n ∈ {0..8}`, 100 samples per case: covers `ν ∈ {0..3}`
    /// and both parities of `m` and `n`.
    fn default() -> Self {
        Self {
            m_range: Span::new(1, 4),
            n_range: Span::new(0, 8),
            samples_per_case: 100,
            seed: DEFAULT_SEED,
            tolerances: Tolerances::default(),
            output_format: OutputFormat::Text,
        }
    }
}

// per-sample RNG streams pack (m, n, sample) into 64 bits
const MAX_PARAM: u64 = u16::MAX as u64;

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.samples_per_case == 0 {
            return usage("--samples must be at least 1".into());
        }
        if self.samples_per_case > u64::from(u32::MAX) {
            return usage("--samples is too large".into());
        }
        if self.m_range.lo == 0 {
            return usage("m must be at least 1".into());
        }
        for (name, r) in [("m", self.m_range), ("n", self.n_range)] {
            if r.lo > r.hi {
                return usage(format!("empty range for {name}: {r}"));
            }
            if r.hi > MAX_PARAM {
                return usage(format!("{name} must be at most {MAX_PARAM}"));
            }
        }
        let t = &self.tolerances;
        for (name, v) in [("algebraic", t.algebraic), ("invariance", t.invariance), ("rank", t.rank)] {
            if !(v.is_finite() && v > 0.0) {
                return usage(format!("--tol-{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }

    pub fn cases(&self) -> Vec<WallParams> {
        self.m_range
            .iter()
            .flat_map(|m| self.n_range.iter().map(move |n| (m, n)))
            .map(|(m, n)| WallParams::new(m, n).expect("validated range"))
            .collect()
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    /// The output format does not enter the hash.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        hex::encode(&Sha256::digest(&canonical)[..8])
    }

    /// RNG stream of one sample of one case.
    pub fn stream(p: WallParams, sample: u64) -> u64 {
        (p.m() << 48) | (p.n() << 32) | sample
    }
}
