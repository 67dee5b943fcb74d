use serde::Serialize;

/// Version of the serialized report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    VerifiedExact,
    VerifiedProbabilistic {
        /// Probability that every trial misjudged the claim.
        failure_bound: f64,
        per_trial_bound: f64,
        degree_bound: u64,
        field_log2: f64,
    },
    Refuted {
        witness: Witness,
    },
    Skipped {
        reason: String,
    },
}

impl Status {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Status::Refuted { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Status::VerifiedExact | Status::VerifiedProbabilistic { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Status::Skipped { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::VerifiedExact => "verified-exact",
            Status::VerifiedProbabilistic { .. } => "verified-probabilistic",
            Status::Refuted { .. } => "refuted",
            Status::Skipped { .. } => "skipped",
        }
    }
}

/// Enough to replay a failure: the seed (absent for exact runs), what was
/// checked, and the offending vector rendered by the backend.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub seed: Option<u64>,
    pub detail: String,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub seed: Option<u64>,
    pub label: String,
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub expected: usize,
}

impl RankRecord {
    pub fn passed(&self) -> bool {
        self.rank == self.expected
    }
}

/// One named sub-check. `applies` is false when the input lies outside the
/// hypothesis of the statement; `holds` is still computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub applies: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedVector {
    pub name: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub claim: String,
    pub polytope: String,
    pub degrees: Vec<u32>,
    pub backend: String,
    pub seeds: Vec<u64>,
    pub trials: usize,
    #[serde(flatten)]
    pub status: Status,
    pub ranks: Vec<RankRecord>,
    pub checks: Vec<CheckRecord>,
    pub vectors: Vec<NamedVector>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim: &str, polytope: &str, backend: impl Into<String>) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            claim: claim.to_string(),
            polytope: polytope.to_string(),
            degrees: Vec::new(),
            backend: backend.into(),
            seeds: Vec::new(),
            trials: 0,
            status: Status::Skipped {
                reason: "not run".into(),
            },
            ranks: Vec::new(),
            checks: Vec::new(),
            vectors: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped {
            reason: reason.into(),
        };
        self
    }

    pub fn vector(&self, name: &str) -> Option<&[i64]> {
        self.vectors
            .iter()
            .find(|v| v.name == name)
            .map(|v| v.values.as_slice())
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub(crate) fn push_vector(&mut self, name: &str, values: Vec<i64>) {
        self.vectors.push(NamedVector {
            name: name.to_string(),
            values,
        });
    }

    pub(crate) fn push_check(&mut self, name: &str, applies: bool, holds: bool, detail: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            applies,
            holds,
            detail: detail.into(),
        });
    }

    pub fn failed_ranks(&self) -> impl Iterator<Item = &RankRecord> {
        self.ranks.iter().filter(|r| !r.passed())
    }
}
