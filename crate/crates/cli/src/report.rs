//! Machine-readable run reports: per-check theorem reports wrapped with
//! expectations, plus summary counts and timing. Serialization is
//! deterministic for a fixed seed except for the timing block, which
//! comparisons are expected to strip.

use omega2_core::verifier::{Status, TheoremReport};
use serde::Serialize;

pub const SCHEMA: &str = "omega2-report/1";

#[derive(Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub expected: String,
    pub matched: bool,
    pub report: TheoremReport,
}

#[derive(Serialize)]
pub struct CaseReport {
    pub case: String,
    pub checks: Vec<CheckRecord>,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub hypothesis_not_met: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub expectation_mismatches: usize,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    pub seed: u64,
    pub trials: u32,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(seed: u64, trials: u32, cases: Vec<CaseReport>, total_ms: u128) -> RunReport {
        let mut summary = Summary {
            total: 0,
            verified: 0,
            hypothesis_not_met: 0,
            refuted: 0,
            inconclusive: 0,
            expectation_mismatches: 0,
        };
        for case in &cases {
            for check in &case.checks {
                summary.total += 1;
                match check.report.status {
                    Status::Verified => summary.verified += 1,
                    Status::HypothesisNotMet => summary.hypothesis_not_met += 1,
                    Status::Refuted => summary.refuted += 1,
                    Status::Inconclusive => summary.inconclusive += 1,
                }
                if !check.matched {
                    summary.expectation_mismatches += 1;
                }
            }
        }
        RunReport {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            trials,
            cases,
            summary,
            timing: Timing { total_ms },
        }
    }

    /// Exit code contract: refuted dominates, then inconclusive, then
    /// expectation mismatches, then success.
    pub fn exit_code(&self) -> i32 {
        if self.summary.refuted > 0 {
            3
        } else if self.summary.inconclusive > 0 {
            2
        } else if self.summary.expectation_mismatches > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn status_str(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::HypothesisNotMet => "hypothesis_not_met",
        Status::Refuted => "refuted",
        Status::Inconclusive => "inconclusive",
    }
}
