//! Machine-readable verification reports. Reports are plain data with
//! deterministic field order: same seed and version means byte-identical
//! output.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone, Debug)]
pub struct CaseRecord {
    pub group: String,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_index: Option<usize>,
    pub check: String,
    pub computed: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// True for question-suite hits that are reported, never failed.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub candidate: bool,
}

impl CaseRecord {
    pub fn new(group: &str, prime: u64, check: &str) -> CaseRecord {
        CaseRecord {
            group: group.to_string(),
            prime,
            m: None,
            class_index: None,
            check: check.to_string(),
            computed: serde_json::Value::Null,
            pass: true,
            witness: None,
            note: None,
            candidate: false,
        }
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_class(mut self, idx: usize) -> Self {
        self.class_index = Some(idx);
        self
    }

    pub fn computed(mut self, v: serde_json::Value) -> Self {
        self.computed = v;
        self
    }

    pub fn passed(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    pub fn note(mut self, n: &str) -> Self {
        self.note = Some(n.to_string());
        self
    }

    pub fn candidate(mut self) -> Self {
        self.candidate = true;
        self
    }
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub candidates: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub seed: u64,
    pub options: serde_json::Value,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, options: serde_json::Value) -> VerificationReport {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            tool: "bca".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            suite: suite.to_string(),
            seed,
            options,
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, case: CaseRecord) {
        self.summary.total += 1;
        if case.candidate {
            self.summary.candidates += 1;
        }
        if case.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.cases.push(case);
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One tab-separated line per case plus a trailing summary line.
    pub fn tsv_summary(&self) -> String {
        let mut out = String::from("group\tprime\tm\tclass\tcheck\tpass\twitness\tnote\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                c.group,
                c.prime,
                c.m.map_or(String::from("-"), |m| m.to_string()),
                c.class_index.map_or(String::from("-"), |i| i.to_string()),
                c.check,
                if c.pass { "pass" } else { "FAIL" },
                c.witness.clone().unwrap_or_else(|| "-".into()),
                c.note.clone().unwrap_or_else(|| "-".into()),
            ));
        }
        out.push_str(&format!(
            "# total={} passed={} failed={} candidates={}\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.candidates
        ));
        out
    }
}
