//! Single-manifold subcommands. Each builds a serializable record and renders
//! it as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use wallspan_core::clifford::{build_family, verify_family, Gauss};
use wallspan_core::f2cohomology::ObstructionSearch;
use wallspan_core::invariants::{pspan_wall, sspan_cpn, upper_bound_fibration};
use wallspan_core::WallParams;

use crate::config::OutputFormat;
use crate::error::CliError;
use crate::report::VerificationReport;

pub fn render<T: Serialize>(
    value: &T,
    format: OutputFormat,
    text: impl FnOnce(&T) -> String,
) -> Result<String, CliError> {
    match format {
        OutputFormat::Text => Ok(text(value)),
        OutputFormat::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsRecord {
    pub m: u64,
    pub n: u64,
    pub nu: u32,
    pub delta: u64,
    pub dim: u64,
    pub pspan: u64,
    pub upper_bound_fibration: u64,
    pub sspan_cpn: u64,
    pub consistent: bool,
    /// quoted background fact, not computed here
    pub note: Option<String>,
}

pub fn invariants(p: WallParams) -> Result<InvariantsRecord, CliError> {
    let pspan = pspan_wall(p);
    let fibration = upper_bound_fibration(p);
    let sspan = sspan_cpn(p.n())?;
    let note = (p.m().is_multiple_of(2) && p.n().is_multiple_of(2)).then(|| {
        format!("span=1 < pspan={pspan} (known value of span for m, n even; quoted, not computed)")
    });
    Ok(InvariantsRecord {
        m: p.m(),
        n: p.n(),
        nu: p.nu(),
        delta: p.delta(),
        dim: p.dim(),
        pspan,
        upper_bound_fibration: fibration,
        sspan_cpn: sspan,
        consistent: pspan == fibration && pspan == sspan + p.m() + 1,
        note,
    })
}

pub fn invariants_text(r: &InvariantsRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Q({}, {})", r.m, r.n);
    let _ = writeln!(s, "  dim                 {}", r.dim);
    let _ = writeln!(s, "  nu(n+1)             {}", r.nu);
    let _ = writeln!(s, "  delta = 2nu+m+1     {}", r.delta);
    let _ = writeln!(s, "  pspan               {}", r.pspan);
    let _ = writeln!(s, "  fibration bound     {}", r.upper_bound_fibration);
    let _ = writeln!(s, "  {:<20}{}", format!("sspan(CP^{})", r.n), r.sspan_cpn);
    let _ = writeln!(s, "  consistent          {}", r.consistent);
    if let Some(note) = &r.note {
        let _ = writeln!(s, "  note: {note}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KOutcome {
    pub k: u32,
    pub ruled_out: bool,
    pub multisets: usize,
    pub surviving: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CohomologyRecord {
    pub m: u64,
    pub n: u64,
    pub dim: u64,
    pub total_sw: Vec<(u32, String)>,
    pub outcomes: Vec<KOutcome>,
    pub sw_upper_bound: u64,
    pub ruled_out_at: Option<u32>,
    pub pspan: u64,
}

/// Obstruction outcomes for `k = 1..=k_max` (default `dim`).
pub fn cohomology(p: WallParams, k_max: Option<u64>) -> Result<CohomologyRecord, CliError> {
    let k_max = k_max.unwrap_or(p.dim());
    if k_max == 0 || k_max > p.dim() {
        return Err(CliError::Usage(format!("--k-max must be in 1..={}, got {k_max}", p.dim())));
    }
    let mut search = ObstructionSearch::new(p);
    let outcomes = (1..=k_max as u32)
        .map(|k| {
            let r = search.rules_out(k)?;
            Ok(KOutcome {
                k,
                ruled_out: r.ruled_out,
                multisets: r.witnesses.len(),
                surviving: r.surviving().map(|m| m.to_string()),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let bound = search.upper_bound();
    Ok(CohomologyRecord {
        m: p.m(),
        n: p.n(),
        dim: p.dim(),
        total_sw: search.total_sw().render_by_degree(),
        outcomes,
        sw_upper_bound: bound,
        ruled_out_at: (bound < p.dim()).then(|| bound as u32 + 1),
        pspan: pspan_wall(p),
    })
}

pub fn cohomology_text(r: &CohomologyRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Q({}, {}), dim {}", r.m, r.n, r.dim);
    let _ = writeln!(s, "total Stiefel-Whitney class by degree:");
    for (q, w) in &r.total_sw {
        let _ = writeln!(s, "  w_{q} = {w}");
    }
    for o in &r.outcomes {
        match &o.surviving {
            Some(m) => {
                let _ = writeln!(s, "  k = {:>3}  not ruled out  (survivor {m})", o.k);
            }
            None => {
                let _ = writeln!(s, "  k = {:>3}  ruled out      ({} multisets fail)", o.k, o.multisets);
            }
        }
    }
    let _ = writeln!(s, "obstruction upper bound: {}", r.sw_upper_bound);
    match r.ruled_out_at {
        Some(k) => {
            let _ = writeln!(s, "ruled out at k = {k}");
        }
        None => {
            let _ = writeln!(s, "no k <= dim is ruled out");
        }
    }
    let _ = writeln!(s, "pspan: {}", r.pspan);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixRecord {
    pub index: usize,
    pub sign: i64,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub identity: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CliffordRecord {
    pub n: u64,
    pub nu: u32,
    pub size: usize,
    pub matrices: Vec<MatrixRecord>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

fn gauss(z: Gauss) -> String {
    match (z.re, z.im) {
        (re, 0) => re.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (0, im) => format!("{im}i"),
        (re, im) if im < 0 => format!("{re}-{}i", -im),
        (re, im) => format!("{re}+{im}i"),
    }
}

/// Matrices are listed only when `n + 1 <= max_listed`.
pub fn clifford(n: u64, max_listed: usize) -> Result<CliffordRecord, CliError> {
    let family = build_family(n)?;
    let report = verify_family(&family);
    let size = family.size();
    let matrices = if size <= max_listed {
        (1..)
            .zip(&family.matrices)
            .zip(&family.predicted_signs)
            .map(|((index, a), sign)| MatrixRecord {
                index,
                sign: sign.value(),
                rows: (0..size).map(|r| (0..size).map(|c| gauss(a.get(r, c))).collect()).collect(),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(CliffordRecord {
        n,
        nu: family.nu,
        size,
        matrices,
        checks: report
            .checks
            .iter()
            .map(|c| CheckRecord { identity: c.identity.to_string(), passed: c.passed })
            .collect(),
        passed: report.all_passed(),
    })
}

pub fn clifford_text(r: &CliffordRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, nu(n+1) = {}, {} matrices of size {}",
        r.n,
        r.nu,
        2 * r.nu + 1,
        r.size
    );
    for m in &r.matrices {
        let _ = writeln!(s, "A{} (eps = {:+}):", m.index, m.sign);
        for row in &m.rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>4}")).collect();
            let _ = writeln!(s, "  [{}]", cells.join(" "));
        }
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(s, "{} identities checked, {failed} failed", r.checks.len());
    for c in r.checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(s, "  FAIL {}", c.identity);
    }
    s
}

pub fn campaign_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let c = &r.config;
    let _ = writeln!(
        s,
        "seed {}  config {}  m {}  n {}  samples {}",
        r.seed, r.config_hash, c.m_range, c.n_range, c.samples_per_case
    );
    let _ = writeln!(
        s,
        "{:>3} {:>3} {:>3} {:>4} {:>8} {:>6} {:>6} {:>10} {:>10} {:>4}  status",
        "m", "n", "nu", "dim", "clifford", "signs", "rank", "min s/s", "tangency", "sw"
    );
    for case in &r.cases {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        let tangency = case.independence.tangency_max.iter().copied().fold(0.0, f64::max);
        let _ = writeln!(
            s,
            "{:>3} {:>3} {:>3} {:>4} {:>8} {:>6} {:>6} {:>10.3e} {:>10.1e} {:>4}  {}",
            case.m,
            case.n,
            case.nu,
            case.dim,
            ok(case.clifford.passed),
            ok(case.signs.passed),
            format!("{}/{}", case.independence.min_rank, case.delta),
            case.independence.min_relative_singular_value.min,
            tangency,
            case.cohomology.sw_upper_bound,
            if case.passed { "pass" } else { "FAIL" }
        );
    }
    let passed = r.cases.iter().filter(|c| c.passed).count();
    let _ = writeln!(s, "{passed}/{} cases passed", r.cases.len());
    s
}
