//! The check catalog, run configuration, suite orchestration and reports.

mod checks;
pub mod formulas;
mod report;

pub use report::{render_csv, render_json, render_text, Format, RunMeta, SCHEMA_VERSION};

use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Mutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("{check} does not accept k={k}: {reason}")]
    Inadmissible { check: CheckId, k: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

/// Identifier `C1`..`C22`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CheckId(u8);

impl CheckId {
    pub const COUNT: u8 = 22;

    pub fn new(n: u8) -> Option<Self> {
        (1..=Self::COUNT).contains(&n).then_some(CheckId(n))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> Vec<CheckId> {
        (1..=Self::COUNT).map(CheckId).collect()
    }

    pub fn info(self) -> &'static CheckInfo {
        &CATALOG[self.0 as usize - 1]
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        t.strip_prefix(['C', 'c'])
            .and_then(|d| d.parse::<u8>().ok())
            .and_then(CheckId::new)
            .ok_or_else(|| VerifyError::UnknownCheck(t.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which levels a check runs at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KPolicy {
    /// An identity in `k`: run once with `k` symbolic, or per level in
    /// concrete mode.
    Symbolic { min_k: u32 },
    /// Independent of `k`; run once.
    KFree,
    /// Run at every requested level `k >= min_k`.
    PerK { min_k: u32 },
    /// Run once at each of the listed levels, whatever was requested.
    Fixed(&'static [u32]),
}

#[derive(Debug)]
pub struct CheckInfo {
    pub id: u8,
    pub title: &'static str,
    pub policy: KPolicy,
    /// Corpus entries the check reads.
    pub uses: &'static [&'static str],
}

const G: &[&str] = &["g2", "g3", "g4", "g5"];

pub static CATALOG: [CheckInfo; 22] = [
    CheckInfo {
        id: 1,
        title: "the three relations among g2..g5 vanish",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &["rel1", "rel2", "rel3", "g2", "g3", "g4", "g5"],
    },
    CheckInfo { id: 2, title: "slice dimensions and explicit basis of A", policy: KPolicy::PerK { min_k: 5 }, uses: G },
    CheckInfo {
        id: 3,
        title: "W3_1 on Wbar carried through the dictionary equals its action on g",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &[
            "W31", "W31_on_g", "W31_transported", "Wbar2", "Wbar3", "Wbar4", "Wbar5", "Wbar2_in_g", "Wbar3_in_g", "Wbar4_in_g",
            "Wbar5_in_g", "g2_in_Wbar", "g3_in_Wbar", "g4_in_Wbar", "g5_in_Wbar", "g2", "g3", "g4", "g5",
        ],
    },
    CheckInfo {
        id: 4,
        title: "-6k D agrees with W3_1 on g2..g5 and on random products",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &["D", "W31_on_g", "g2", "g3", "g4", "g5"],
    },
    CheckInfo { id: 5, title: "Q(s,j) by enumeration equals its closed form", policy: KPolicy::KFree, uses: &[] },
    CheckInfo {
        id: 6,
        title: "f(0)^s e(-1)^n 1 mod C2: closed form, operator iteration, straightening",
        policy: KPolicy::PerK { min_k: 1 },
        uses: &["f0_action"],
    },
    CheckInfo {
        id: 7,
        title: "f0: corpus, closed form and reduced singular vector agree",
        policy: KPolicy::PerK { min_k: 1 },
        uses: &["f0"],
    },
    CheckInfo { id: 8, title: "Jacobian of (f0, f1) is nonzero", policy: KPolicy::PerK { min_k: 5 }, uses: &["f0", "f1"] },
    CheckInfo {
        id: 9,
        title: "f2 = p f0 + q f1",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["f0", "f1", "f2", "p", "q"],
    },
    CheckInfo {
        id: 10,
        title: "det of the D/E matrix; f0 on z = -y^2/4 and on z = 0",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["D", "E", "det_DE", "f0"],
    },
    CheckInfo {
        id: 11,
        title: "relations between f0 and f1 are multiples of (f1, -f0)",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["f0", "f1"],
    },
    CheckInfo {
        id: 12,
        title: "dimension tables of J, J∩A, I2, I3, I4",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["g2", "g3", "g4", "g5", "f0", "f1", "f2", "f3"],
    },
    CheckInfo {
        id: 13,
        title: "f_r = D f_(r-1); f4..f8 lie in I4; I4 = J∩A",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["D", "g2", "g3", "g4", "g5", "f0", "f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"],
    },
    CheckInfo {
        id: 14,
        title: "dim A/I4 = k(k+1)/2 with stabilization",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["g2", "g3", "g4", "g5", "f0", "f1", "f2", "f3"],
    },
    CheckInfo {
        id: 15,
        title: "basis count of the simple quotient's C2-algebra and its charge-zero slices",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["f0", "f1"],
    },
    CheckInfo {
        id: 16,
        title: "characteristic polynomial of (a_rs)",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &["a_rs"],
    },
    CheckInfo {
        id: 17,
        title: "no module label 0 <= j < i <= k has o(W2) = 1 and o(W3) an eigenvalue of (a_rs)",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["eig_W2", "eig_W3"],
    },
    CheckInfo {
        id: 18,
        title: "coincident o(W2), o(W3) eigenvalues at k=16 and k=100",
        policy: KPolicy::Fixed(&[16, 100]),
        uses: &["eig_W2", "eig_W3"],
    },
    CheckInfo {
        id: 19,
        title: "mode identities: W3_1 e(-2)1, W2_1 W3 = 3 W3, W3_1 h(-1)1 = 0",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &["Wbar2", "Wbar3"],
    },
    CheckInfo {
        id: 20,
        title: "W3_1 u0 mod C2 is -6k(-1)^(k+1)(k+1)! f1",
        policy: KPolicy::PerK { min_k: 1 },
        uses: &["f1"],
    },
    CheckInfo {
        id: 21,
        title: "z^2, yz^2, z^3, yz^3 as polynomials in g",
        policy: KPolicy::Symbolic { min_k: 1 },
        uses: &["z2_in_g", "yz2_in_g", "z3_in_g", "yz3_in_g", "g2", "g3", "g4", "g5"],
    },
    CheckInfo {
        id: 22,
        title: "kernel of t_s -> g_s is generated by the three relations",
        policy: KPolicy::PerK { min_k: 5 },
        uses: &["rel1", "rel2", "rel3", "g2", "g3", "g4", "g5"],
    },
];

/// Checks that read the named corpus entry.
pub fn checks_using(name: &str) -> Vec<CheckId> {
    CATALOG.iter().filter(|c| c.uses.contains(&name)).map(|c| CheckId(c.id)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightCap {
    /// `2k + 6`.
    Auto,
    Fixed(u32),
}

impl WeightCap {
    pub fn at(self, k: u32) -> u32 {
        match self {
            WeightCap::Auto => 2 * k + 6,
            WeightCap::Fixed(n) => n,
        }
    }
}

/// How to treat checks that are identities in `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModePref {
    /// Symbolic where possible, concrete elsewhere.
    Auto,
    /// Only checks that can run with `k` symbolic.
    Symbolic,
    /// Everything per concrete level.
    Concrete,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub k_values: Vec<u32>,
    pub checks: Vec<CheckId>,
    pub weight_cap: WeightCap,
    pub mode: ModePref,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Largest level at which the straightening engine is run.
    pub weyl_k_cap: u32,
    /// Largest weight for the kernel comparison.
    pub kernel_cap: u32,
    pub mutation: Option<Mutation>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k_values: (5..=10).collect(),
            checks: CheckId::all(),
            weight_cap: WeightCap::Auto,
            mode: ModePref::Auto,
            jobs: None,
            weyl_k_cap: 6,
            kernel_cap: 24,
            mutation: None,
            timing: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.checks.is_empty() {
            return Err(VerifyError::Config("no checks selected".into()));
        }
        if let Some(k) = self.k_values.iter().find(|&&k| k == 0) {
            return Err(VerifyError::Config(format!("k must be positive, got {k}")));
        }
        if self.jobs == Some(0) {
            return Err(VerifyError::Config("jobs must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkipKind {
    /// The level is outside the check's range.
    Policy,
    /// A configured resource limit was reached.
    Resource,
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub k: u32,
    pub n: u32,
    pub space: String,
    pub dim_computed: usize,
    pub dim_formula: usize,
}

impl DimRow {
    pub fn matches(&self) -> bool {
        self.dim_computed == self.dim_formula
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: CheckId,
    /// `None` for checks run with `k` symbolic or independent of `k`.
    pub k: Option<u32>,
    pub status: Status,
    pub witness: String,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skip: Option<SkipKind>,
    #[serde(skip)]
    pub rows: Vec<DimRow>,
}

/// Outcome of a check body before timing is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Verdict {
    pub status: Status,
    pub witness: String,
    pub skip: Option<SkipKind>,
    pub rows: Vec<DimRow>,
}

impl Verdict {
    pub fn pass(w: impl Into<String>) -> Self {
        Verdict { status: Status::Pass, witness: w.into(), skip: None, rows: Vec::new() }
    }

    pub fn fail(w: impl Into<String>) -> Self {
        Verdict { status: Status::Fail, witness: w.into(), skip: None, rows: Vec::new() }
    }

    pub fn skipped(kind: SkipKind, w: impl Into<String>) -> Self {
        Verdict { status: Status::Skipped, witness: w.into(), skip: Some(kind), rows: Vec::new() }
    }

    pub fn with_rows(mut self, rows: Vec<DimRow>) -> Self {
        self.rows = rows;
        self
    }

    /// Passes when `failures` is empty, otherwise fails with the first one.
    pub fn from_failures(failures: Vec<String>, ok: impl Into<String>) -> Self {
        match failures.into_iter().next() {
            None => Verdict::pass(ok),
            Some(f) => Verdict::fail(f),
        }
    }
}

/// Reason `k` is outside the check's range, if it is.
fn inadmissible(id: CheckId, k: Option<u32>) -> Option<String> {
    match (id.info().policy, k) {
        (KPolicy::KFree, _) => None,
        (KPolicy::Symbolic { .. }, None) => None,
        (KPolicy::Symbolic { min_k } | KPolicy::PerK { min_k }, Some(k)) => {
            (k < min_k).then(|| format!("requires k >= {min_k}"))
        }
        (KPolicy::PerK { .. }, None) => Some("requires a concrete level".into()),
        (KPolicy::Fixed(ks), Some(k)) => (!ks.contains(&k)).then(|| format!("runs only at k in {ks:?}")),
        (KPolicy::Fixed(_), None) => Some("requires a concrete level".into()),
    }
}

/// Runs one check. `k = None` means symbolic (or k-free).
pub fn run_check(id: CheckId, k: Option<u32>, cfg: &RunConfig) -> Result<CheckResult, VerifyError> {
    if let Some(reason) = inadmissible(id, k) {
        let k = k.map_or("symbolic".to_string(), |k| k.to_string());
        return Err(VerifyError::Inadmissible { check: id, k, reason });
    }
    let start = Instant::now();
    let v = match panic::catch_unwind(AssertUnwindSafe(|| checks::run(id, k, cfg))) {
        Ok(Ok(v)) => v,
        Ok(Err(VerifyError::Resource(msg))) => Verdict::skipped(SkipKind::Resource, msg),
        Ok(Err(e)) => Verdict::fail(format!("error: {e}")),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Verdict::fail(format!("internal error: {}", msg.unwrap_or_default()))
        }
    };
    let elapsed_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(CheckResult {
        check_id: id,
        k,
        status: v.status,
        witness: v.witness,
        elapsed_ms,
        skip: v.skip,
        rows: v.rows,
    })
}

/// A planned unit of work, or a skip decided up front.
enum Task {
    Run(CheckId, Option<u32>),
    Skip(CheckId, Option<u32>, SkipKind, String),
}

fn plan(cfg: &RunConfig) -> Vec<Task> {
    let mut ks = cfg.k_values.clone();
    ks.sort_unstable();
    ks.dedup();
    let mut tasks = Vec::new();
    for &id in &cfg.checks {
        let policy = id.info().policy;
        match (policy, cfg.mode) {
            (KPolicy::Symbolic { .. }, ModePref::Auto | ModePref::Symbolic) | (KPolicy::KFree, _) => {
                tasks.push(Task::Run(id, None))
            }
            (KPolicy::Fixed(_), ModePref::Symbolic) | (KPolicy::PerK { .. }, ModePref::Symbolic) => tasks.push(
                Task::Skip(id, None, SkipKind::Policy, "needs a concrete level; not run in symbolic mode".into()),
            ),
            (KPolicy::Fixed(fixed), _) => tasks.extend(fixed.iter().map(|&k| Task::Run(id, Some(k)))),
            (KPolicy::Symbolic { .. } | KPolicy::PerK { .. }, _) => {
                for &k in &ks {
                    match inadmissible(id, Some(k)) {
                        None => tasks.push(Task::Run(id, Some(k))),
                        Some(r) => tasks.push(Task::Skip(id, Some(k), SkipKind::Policy, r)),
                    }
                }
            }
        }
    }
    tasks
}

/// Runs every requested (check, level) pair. Results are ordered by check
/// id, then level, with symbolic runs first.
pub fn run_suite(cfg: &RunConfig) -> Result<Vec<CheckResult>, VerifyError> {
    cfg.validate()?;
    let tasks = plan(cfg);
    let exec = || -> Result<Vec<CheckResult>, VerifyError> {
        tasks
            .par_iter()
            .map(|t| match t {
                Task::Run(id, k) => run_check(*id, *k, cfg),
                Task::Skip(id, k, kind, why) => Ok(CheckResult {
                    check_id: *id,
                    k: *k,
                    status: Status::Skipped,
                    witness: why.clone(),
                    elapsed_ms: 0,
                    skip: Some(*kind),
                    rows: Vec::new(),
                }),
            })
            .collect()
    };
    let mut results = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| VerifyError::Config(e.to_string()))?
            .install(exec)?,
        None => exec()?,
    };
    results.sort_by_key(|r| (r.check_id, r.k));
    Ok(results)
}

/// Process exit status for a finished run: 0 when nothing failed, 1 on any
/// failure, 3 when `strict` and a check was skipped for resource reasons.
pub fn exit_code(results: &[CheckResult], strict: bool) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else if strict && results.iter().any(|r| r.skip == Some(SkipKind::Resource)) {
        3
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_print() {
        assert_eq!("C14".parse::<CheckId>().unwrap().to_string(), "C14");
        assert!("C23".parse::<CheckId>().is_err());
        assert!("X1".parse::<CheckId>().is_err());
        for (i, c) in CATALOG.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
        }
    }

    #[test]
    fn low_level_is_skipped_not_failed() {
        let cfg = RunConfig { k_values: vec![3], checks: vec![CheckId(14), CheckId(5)], ..Default::default() };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].check_id, CheckId(5));
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(r[1].status, Status::Skipped);
        assert_eq!(r[1].skip, Some(SkipKind::Policy));
        assert!(run_check(CheckId(14), Some(3), &cfg).is_err());
    }

    #[test]
    fn usage_map_covers_corpus() {
        assert!(checks_using("a_rs").contains(&CheckId(16)));
        assert!(checks_using("f0_action").contains(&CheckId(6)));
    }
}
