//! Report types shared by the verification suites and the CLI.  Every field
//! renders in canonical text so serialized reports are byte-stable.

use serde::Serialize;

/// One checked identity: both sides in canonical text, plus a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CaseResult {
    pub fn compare<L: ToString, R: ToString>(label: impl Into<String>, lhs: L, rhs: R) -> Self {
        let lhs = lhs.to_string();
        let rhs = rhs.to_string();
        let pass = lhs == rhs;
        CaseResult {
            label: label.into(),
            lhs,
            rhs,
            pass,
            note: String::new(),
        }
    }

    pub fn flag(label: impl Into<String>, pass: bool, note: impl Into<String>) -> Self {
        CaseResult {
            label: label.into(),
            lhs: String::new(),
            rhs: String::new(),
            pass,
            note: note.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// set when a certificate could not be established either way
    pub inconclusive: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            cases: Vec::new(),
            notes: Vec::new(),
            inconclusive: false,
        }
    }

    pub fn push(&mut self, case: CaseResult) {
        self.cases.push(case);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.cases.extend(other.cases);
        self.notes.extend(other.notes);
        self.inconclusive |= other.inconclusive;
    }
}

/// Per-degree record for the graded Chern-character comparison.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub source_rank: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
    pub inconclusive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedReport {
    pub datum: String,
    pub point: String,
    pub order: usize,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl GradedReport {
    pub fn certified(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.injective && d.surjective && !d.inconclusive)
    }

    pub fn inconclusive(&self) -> bool {
        self.degrees.iter().any(|d| d.inconclusive)
    }
}
