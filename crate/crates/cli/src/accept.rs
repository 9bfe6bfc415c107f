//! The acceptance criteria, each reduced to a pass/fail line.

use std::time::{Duration, Instant};

use serde::Serialize;
use wallspan_core::clifford::{build_family, verify_family};
use wallspan_core::f2cohomology::virtual_sw_rules_out;
use wallspan_core::invariants::{nu, pspan_wall, sspan_cpn, upper_bound_fibration};
use wallspan_core::WallParams;

use crate::campaign::run_campaign;
use crate::config::CampaignConfig;
use crate::error::CliError;
use crate::report::VerificationReport;

/// `(n + 1, ν(n + 1))` pairs of the 2-adic valuation table.
pub const NU_TABLE: [(u64, u32); 14] = [
    (2, 1),
    (4, 2),
    (6, 1),
    (8, 3),
    (10, 1),
    (12, 2),
    (14, 1),
    (28, 2),
    (30, 1),
    (32, 5),
    (34, 1),
    (36, 2),
    (38, 1),
    (1024, 10),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({}; {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AcceptanceReport {
    pub seed: u64,
    pub config_hash: String,
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

impl AcceptanceReport {
    pub fn text(&self) -> String {
        let mut s: String = self.criteria.iter().map(|c| c.line() + "\n").collect();
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        s += &format!("{passed}/{} criteria passed\n", self.criteria.len());
        s
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn result(id: u32, name: &str, passed: bool, detail: String, elapsed: Duration) -> CriterionResult {
    CriterionResult {
        id,
        name: name.into(),
        passed,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
    }
}

pub fn clifford_exactness() -> Result<CriterionResult, CliError> {
    let (outcome, elapsed) = timed(|| -> Result<(usize, Vec<u64>), CliError> {
        let mut checks = 0;
        let mut bad = Vec::new();
        for n in 0..=16u64 {
            let family = build_family(n)?;
            let report = verify_family(&family);
            checks += report.checks.len();
            if family.len() as u32 != 2 * nu(n + 1)? + 1 || !report.all_passed() {
                bad.push(n);
            }
        }
        Ok((checks, bad))
    });
    let (checks, bad) = outcome?;
    let passed = bad.is_empty() && elapsed < Duration::from_secs(1);
    let detail = format!("n 0..16, {checks} exact identities, failing n {bad:?}, limit 1 s");
    Ok(result(1, "Clifford exactness", passed, detail, elapsed))
}

pub fn sign_tables(report: &VerificationReport, elapsed: Duration) -> CriterionResult {
    let rows: usize = report.cases.iter().map(|c| c.signs.rows.len()).sum();
    let fails: u64 = report
        .cases
        .iter()
        .flat_map(|c| &c.signs.rows)
        .map(|r| r.observed.fail)
        .sum();
    let mismatched = report.cases.iter().flat_map(|c| &c.signs.rows).filter(|r| !r.matches).count();
    let passed = mismatched == 0 && fails == 0;
    let detail = format!(
        "{rows} (field, involution) rows, {mismatched} mismatched, {fails} FAIL signs, tol {:e}",
        report.config.tolerances.invariance
    );
    result(2, "quasi-invariance sign tables", passed, detail, elapsed)
}

pub fn independence(report: &VerificationReport, elapsed: Duration) -> CriterionResult {
    let bad: Vec<(u64, u64)> = report
        .cases
        .iter()
        .filter(|c| !c.independence.rank_always_delta)
        .map(|c| (c.m, c.n))
        .collect();
    let worst = report
        .cases
        .iter()
        .map(|c| c.independence.min_relative_singular_value.min)
        .fold(f64::INFINITY, f64::min);
    let passed = bad.is_empty() && elapsed < Duration::from_secs(10);
    let detail = format!(
        "rank delta at every sample, failing cases {bad:?}, smallest s_min/s_max {worst:.3e}, threshold {:e}, limit 10 s",
        report.config.tolerances.rank
    );
    result(3, "pointwise independence", passed, detail, elapsed)
}

pub fn tangency(report: &VerificationReport, elapsed: Duration) -> CriterionResult {
    let mut max = [0.0f64; 3];
    for c in &report.cases {
        for (acc, t) in max.iter_mut().zip(c.independence.tangency_max) {
            *acc = acc.max(t);
        }
    }
    let tol = report.config.tolerances.algebraic;
    let tangent = max.iter().all(|&t| t <= tol);
    let well_defined = report.cases.iter().all(|c| c.independence.well_defined_ok);
    let detail = format!(
        "max residuals {:.1e}/{:.1e}/{:.1e} vs {tol:e}, 8 roots of unity well defined: {well_defined}",
        max[0], max[1], max[2]
    );
    result(4, "tangency and well-definedness", tangent && well_defined, detail, elapsed)
}

pub fn upper_bound_n_even() -> Result<CriterionResult, CliError> {
    let (outcome, elapsed) = timed(|| -> Result<Vec<(u64, u64)>, CliError> {
        let mut bad = Vec::new();
        for m in 1..=4u64 {
            for n in [2u64, 4] {
                let p = WallParams::new(m, n)?;
                if !virtual_sw_rules_out(p, m + 2)?.ruled_out {
                    bad.push((m, n));
                }
            }
        }
        Ok(bad)
    });
    let bad = outcome?;
    let passed = bad.is_empty() && elapsed < Duration::from_secs(30);
    let detail = format!("k = m+2 ruled out on m 1..4, n in {{2, 4}}, failing {bad:?}, limit 30 s");
    Ok(result(5, "obstruction upper bound, n even", passed, detail, elapsed))
}

pub fn nu_table() -> Result<CriterionResult, CliError> {
    let (outcome, elapsed) = timed(|| -> Result<Vec<u64>, CliError> {
        let mut bad = Vec::new();
        for (n1, v) in NU_TABLE {
            if nu(n1)? != v || sspan_cpn(n1 - 1)? != 2 * u64::from(v) {
                bad.push(n1);
            }
        }
        Ok(bad)
    });
    let bad = outcome?;
    let detail = format!("{} pairs (n+1, sspan), failing n+1 {bad:?}", NU_TABLE.len());
    Ok(result(6, "valuation table regression", bad.is_empty(), detail, elapsed))
}

pub fn consistency(report: &VerificationReport) -> Result<CriterionResult, CliError> {
    let (outcome, elapsed) = timed(|| -> Result<Vec<(u64, u64)>, CliError> {
        let mut bad = Vec::new();
        for m in 1..=10u64 {
            for n in 0..=32u64 {
                let p = WallParams::new(m, n)?;
                if pspan_wall(p) != upper_bound_fibration(p) {
                    bad.push((m, n));
                }
            }
        }
        Ok(bad)
    });
    let formula_bad = outcome?;
    let sw_bad: Vec<(u64, u64)> = report
        .cases
        .iter()
        .filter(|c| !c.cohomology.at_least_pspan)
        .map(|c| (c.m, c.n))
        .collect();
    let detail = format!(
        "pspan = fibration bound on m 1..10, n 0..32 (failing {formula_bad:?}); sw bound >= pspan on grid (failing {sw_bad:?})"
    );
    let passed = formula_bad.is_empty() && sw_bad.is_empty();
    Ok(result(7, "formula consistency", passed, detail, elapsed))
}

/// Runs every criterion. Criteria 2, 3, 4 and the second half of 7 use the
/// campaign grid of `config`; the others use fixed parameter sets.
pub fn run_acceptance(config: &CampaignConfig) -> Result<AcceptanceReport, CliError> {
    let (campaign, elapsed) = timed(|| run_campaign(config));
    let campaign = campaign?;
    let criteria = vec![
        clifford_exactness()?,
        sign_tables(&campaign, elapsed),
        independence(&campaign, elapsed),
        tangency(&campaign, elapsed),
        upper_bound_n_even()?,
        nu_table()?,
        consistency(&campaign)?,
    ];
    let all_passed = criteria.iter().all(|c| c.passed);
    Ok(AcceptanceReport {
        seed: config.seed,
        config_hash: campaign.config_hash,
        criteria,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_exact() {
        assert!(nu_table().unwrap().passed);
        assert_eq!(sspan_cpn(7).unwrap(), 6);
        assert_eq!(sspan_cpn(31).unwrap(), 10);
        assert_eq!(sspan_cpn(1023).unwrap(), 20);
    }

    #[test]
    fn line_format() {
        let r = result(3, "x", false, "d".into(), Duration::from_millis(5));
        assert_eq!(r.line(), "[FAIL] criterion 3: x (d; 5 ms)");
    }
}
