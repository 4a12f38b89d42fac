//! Check execution: one job per declared check, runnable in parallel, with
//! per-job seeds derived from the run seed and the job coordinates so the
//! assembled report does not depend on scheduling.

use anyhow::{anyhow, Context, Result};
use omega2_core::verifier::{derive_seed, run_check, CheckInput, CheckerId, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::casefile::{Case, CheckDecl, Expectation};
use crate::report::{CaseReport, CheckRecord};

pub struct RunConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_degree: i64,
}

pub fn run_one(case: &Case, check: &CheckDecl, cfg: &RunConfig) -> Result<CheckRecord> {
    let id = CheckerId::parse(&check.checker)
        .ok_or_else(|| anyhow!("unknown checker '{}'", check.checker))?;
    let left_name = check
        .module
        .as_deref()
        .or(check.left.as_deref())
        .ok_or_else(|| anyhow!("check '{}' names no module", check.name))?;
    let left = case
        .modules
        .get(left_name)
        .ok_or_else(|| anyhow!("undefined module '{left_name}'"))?;
    let right_name = check.right.as_deref();
    let right = match right_name {
        Some(n) => Some(
            case.modules
                .get(n)
                .ok_or_else(|| anyhow!("undefined module '{n}'"))?,
        ),
        None => None,
    };
    // a module declared q-periodic carries that as the default window
    let declared_q = case
        .decl
        .modules
        .iter()
        .find(|m| m.name == left_name)
        .and_then(|m| m.q_periodic);
    let q = check.q.or(declared_q).unwrap_or(2);
    let trials = check.trials.unwrap_or(cfg.trials);
    let max_degree = check.max_degree.unwrap_or(cfg.max_degree);
    let mut names: Vec<&str> = vec![check.name.as_str(), left_name];
    if let Some(n) = right_name {
        names.push(n);
    }
    let mut rng =
        ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &case.decl.id, id.name(), &names));
    let input = CheckInput {
        case_id: &case.decl.id,
        left_name,
        left,
        right_name,
        right,
        q,
        trials,
        max_degree,
    };
    let report = run_check(id, &input, &mut rng)
        .with_context(|| format!("case '{}', check '{}'", case.decl.id, check.name))?;
    let matched = match check.expect {
        Expectation::Verified => report.status == Status::Verified,
        Expectation::HypothesisNotMet => report.status == Status::HypothesisNotMet,
    };
    Ok(CheckRecord {
        check: check.name.clone(),
        expected: check.expect.as_str().to_string(),
        matched,
        report,
    })
}

/// Run the selected checks of every case in parallel; results are
/// reassembled in declaration order regardless of scheduling.
pub fn run_cases(
    cases: &[Case],
    select: impl Fn(&CheckDecl) -> bool + Sync,
    cfg: &RunConfig,
) -> Result<Vec<CaseReport>> {
    let jobs: Vec<(usize, usize)> = cases
        .iter()
        .enumerate()
        .flat_map(|(ci, case)| {
            case.decl
                .checks
                .iter()
                .enumerate()
                .filter(|(_, c)| select(c))
                .map(move |(ki, _)| (ci, ki))
        })
        .collect();
    let mut results: Vec<((usize, usize), CheckRecord)> = jobs
        .par_iter()
        .map(|&(ci, ki)| {
            run_one(&cases[ci], &cases[ci].decl.checks[ki], cfg).map(|r| ((ci, ki), r))
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|(k, _)| *k);
    let mut out: Vec<CaseReport> = cases
        .iter()
        .map(|c| CaseReport {
            case: c.decl.id.clone(),
            checks: Vec::new(),
        })
        .collect();
    for ((ci, _), rec) in results {
        out[ci].checks.push(rec);
    }
    out.retain(|c| !c.checks.is_empty());
    Ok(out)
}
