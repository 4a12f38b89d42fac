//! omega2: resolve graded modules over quotient rings, compute homology
//! and invariants, and machine-check the theorem suite on case files.
//!
//! Exit codes: 0 all checks match expectations, 1 only
//! hypothesis_not_met-level mismatches, 2 inconclusive results present,
//! 3 refuted results present, 4 usage or parse errors.

mod casefile;
mod report;
mod runner;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use omega2_core::error::Error as CoreError;
use omega2_core::homology::{ext, tor};
use omega2_core::invariants::{
    classify_torsionless_reflexive, is_totally_reflexive, is_two_periodic, rank_report, theta,
    torsion_submodule, Assurance,
};
use omega2_core::iso::IsoResult;
use omega2_core::module::FPModule;
use omega2_core::oracle::{ext_length_profile, profile_matches_series, tor_length_profile};
use omega2_core::resolution::{depth, Resolution};
use omega2_core::verifier::CheckerId;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use casefile::{load, Case, CheckDecl, Expectation};
use report::{status_str, RunReport};
use runner::{run_cases, run_one, RunConfig};

#[derive(Parser)]
#[command(
    name = "omega2",
    version,
    about = "Exact graded-module calculator and theorem checker over quotient rings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal free resolution: Betti numbers, stage twists, differentials
    Resolve {
        #[arg(long)]
        case: PathBuf,
        #[arg(long)]
        module: String,
        /// Resolution truncation length
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
    /// Torsion, classification, rank, periodicity, reflexivity, and depth
    Invariants {
        #[arg(long)]
        case: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 32)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tor modules of a pair, with the degreewise oracle cross-check
    Tor {
        #[arg(long)]
        case: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Degree cutoff for series output and the oracle
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
    },
    /// Ext modules of a pair, with the degreewise oracle cross-check
    Ext {
        #[arg(long)]
        case: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
    },
    /// Theta pairing of a two-periodic module with another module
    Theta {
        #[arg(long)]
        case: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 32)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the checks declared in one case file
    Verify {
        #[arg(long)]
        case: PathBuf,
        /// Restrict to one checker id (T1, T2, T4, T5, L21, L22, P23, L24, L32, P33, AB, ARC)
        #[arg(long)]
        checker: Option<String>,
        /// Ad-hoc single-module check (with --checker)
        #[arg(long)]
        module: Option<String>,
        /// Ad-hoc pair check (with --checker)
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long, default_value_t = 32)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
        /// Write the JSON run report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every .case file in a directory and merge the reports
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 32)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // An explicit help or version request is not a usage error.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(4);
        }
    }
}

fn get_module<'a>(case: &'a Case, name: &str) -> Result<&'a FPModule> {
    case.modules
        .get(name)
        .ok_or_else(|| anyhow!("case '{}' defines no module '{name}'", case.decl.id))
}

fn series_str(m: &FPModule, up_to: i64) -> String {
    let coeffs = m.hilbert().coefficients(up_to);
    let parts: Vec<String> = coeffs
        .iter()
        .filter(|(_, c)| **c != 0)
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    if parts.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", parts.join(", "))
    }
}

fn length_str(m: &FPModule) -> String {
    match m.hilbert().length() {
        Some(l) => l.to_string(),
        None => "infinite".to_string(),
    }
}

fn iso_str(r: &IsoResult) -> String {
    match r {
        IsoResult::Yes { shift, .. } => format!("yes (twist shift {shift})"),
        IsoResult::No { reason } => format!("no ({reason})"),
        IsoResult::ProbablyNo { trials } => format!("not found in {trials} trials"),
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Resolve {
            case,
            module,
            length,
        } => {
            let case = load(&case)?;
            let m = get_module(&case, &module)?;
            let res = Resolution::of(m, length).map_err(|e| anyhow!("{e}"))?;
            println!("module {module} over {}", case.ring.display());
            let betti: Vec<String> = (0..=length).map(|i| res.betti(i).to_string()).collect();
            println!("betti: {}", betti.join(" "));
            for i in 0..=length {
                println!("stage {i}: twists {:?}", res.stage_twists(i));
            }
            let vars = case.ring.vars();
            for i in 1..=length {
                let d = res.differential(i);
                if d.cols == 0 {
                    break;
                }
                println!("d{i} ({} x {}):", d.rows, d.cols);
                for r in 0..d.rows {
                    let row: Vec<String> = (0..d.cols).map(|c| d.get(r, c).display(vars)).collect();
                    println!("  [{}]", row.join(", "));
                }
            }
            Ok(0)
        }
        Cmd::Invariants {
            case,
            module,
            trials,
            seed,
        } => {
            let case = load(&case)?;
            let m = get_module(&case, &module)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            println!("module {module} over {}", case.ring.display());
            println!("hilbert series (to degree 8): {}", series_str(m, 8));
            match torsion_submodule(m) {
                Ok(t) => println!(
                    "torsion: length {} (witness {}, power {})",
                    length_str(&t.module),
                    t.witness.display(case.ring.vars()),
                    t.power
                ),
                Err(CoreError::NoNzd(d)) => println!("torsion: refused ({d})"),
                Err(e) => return Err(anyhow!("{e}")),
            }
            let cls = classify_torsionless_reflexive(m).map_err(|e| anyhow!("{e}"))?;
            println!(
                "torsionless: {}, reflexive: {}",
                cls.torsionless, cls.reflexive
            );
            match rank_report(m) {
                Ok(r) => println!(
                    "rank: local ranks {:?}, constant rank {}, generically free {}",
                    r.local_ranks,
                    r.rank
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "none".into()),
                    r.generically_free
                ),
                Err(CoreError::Hypothesis { name, detail }) => {
                    println!("rank: refused ({name}: {detail})")
                }
                Err(e) => return Err(anyhow!("{e}")),
            }
            let per = is_two_periodic(m, trials, &mut rng).map_err(|e| anyhow!("{e}"))?;
            println!("two-periodic: {}", iso_str(&per));
            let tr = is_totally_reflexive(m, 2, trials, &mut rng).map_err(|e| anyhow!("{e}"))?;
            let assurance = match tr.assurance {
                Assurance::Exact => "exact".to_string(),
                Assurance::UpToBound(b) => format!("up to homological degree {b}"),
            };
            println!("totally reflexive: {} ({assurance})", tr.holds);
            println!("depth: {}", depth(m).map_err(|e| anyhow!("{e}"))?);
            Ok(0)
        }
        Cmd::Tor {
            case,
            left,
            right,
            max_degree,
        } => {
            let case = load(&case)?;
            let m = get_module(&case, &left)?;
            let n = get_module(&case, &right)?;
            let mut all_agree = true;
            for i in 1..=4usize {
                let t = tor(m, n, i).map_err(|e| anyhow!("{e}"))?;
                let profile =
                    tor_length_profile(m, n, i, max_degree).map_err(|e| anyhow!("{e}"))?;
                let agree = profile_matches_series(&profile, &t, max_degree);
                all_agree &= agree;
                println!(
                    "Tor_{i}({left}, {right}): length {}, series {}, oracle {}",
                    length_str(&t),
                    series_str(&t, max_degree),
                    if agree { "agrees" } else { "DISAGREES" }
                );
            }
            if !all_agree {
                bail!("the degreewise oracle disagrees with the Groebner route");
            }
            Ok(0)
        }
        Cmd::Ext {
            case,
            left,
            right,
            max_degree,
        } => {
            let case = load(&case)?;
            let m = get_module(&case, &left)?;
            let n = get_module(&case, &right)?;
            let mut all_agree = true;
            for i in 1..=4usize {
                let e = ext(m, n, i).map_err(|e| anyhow!("{e}"))?;
                let profile =
                    ext_length_profile(m, n, i, max_degree).map_err(|e| anyhow!("{e}"))?;
                let agree = profile_matches_series(&profile, &e, max_degree);
                all_agree &= agree;
                println!(
                    "Ext^{i}({left}, {right}): length {}, series {}, oracle {}",
                    length_str(&e),
                    series_str(&e, max_degree),
                    if agree { "agrees" } else { "DISAGREES" }
                );
            }
            if !all_agree {
                bail!("the degreewise oracle disagrees with the Groebner route");
            }
            Ok(0)
        }
        Cmd::Theta {
            case,
            left,
            right,
            trials,
            seed,
        } => {
            let case = load(&case)?;
            let m = get_module(&case, &left)?;
            let n = get_module(&case, &right)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match theta(m, n, trials, &mut rng) {
                Ok(t) => {
                    println!("theta({left}, {right}) = {:+}", t.value);
                    println!("tor lengths (1..4): {:?}", t.tor_lengths);
                    Ok(0)
                }
                Err(CoreError::Hypothesis { name, detail }) => {
                    println!("hypothesis not met: {name}: {detail}");
                    Ok(1)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        Cmd::Verify {
            case,
            checker,
            module,
            left,
            right,
            trials,
            seed,
            max_degree,
            report,
        } => {
            let start = Instant::now();
            let case = load(&case)?;
            let cfg = RunConfig {
                seed,
                trials,
                max_degree,
            };
            let ad_hoc = module.is_some() || left.is_some();
            let cases = vec![case];
            let case_reports = if ad_hoc {
                let checker = checker
                    .as_deref()
                    .ok_or_else(|| anyhow!("--module/--left need --checker"))?;
                let id = CheckerId::parse(checker)
                    .ok_or_else(|| anyhow!("unknown checker '{checker}'"))?;
                let decl = CheckDecl {
                    name: format!("cli-{}", id.name()),
                    checker: checker.to_string(),
                    module,
                    left,
                    right,
                    q: None,
                    trials: None,
                    max_degree: None,
                    expect: Expectation::Verified,
                };
                let rec = run_one(&cases[0], &decl, &cfg)?;
                vec![report::CaseReport {
                    case: cases[0].decl.id.clone(),
                    checks: vec![rec],
                }]
            } else {
                let want = match &checker {
                    Some(c) => {
                        Some(CheckerId::parse(c).ok_or_else(|| anyhow!("unknown checker '{c}'"))?)
                    }
                    None => None,
                };
                run_cases(
                    &cases,
                    |c| want.is_none() || CheckerId::parse(&c.checker) == want,
                    &cfg,
                )?
            };
            finish_run(case_reports, seed, trials, start, report.as_deref())
        }
        Cmd::Corpus {
            dir,
            report,
            trials,
            seed,
            max_degree,
        } => {
            let start = Instant::now();
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
                .with_context(|| format!("cannot read {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "case"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                bail!("no .case files in {}", dir.display());
            }
            let cases: Vec<Case> = paths.iter().map(|p| load(p)).collect::<Result<_>>()?;
            let cfg = RunConfig {
                seed,
                trials,
                max_degree,
            };
            let case_reports = run_cases(&cases, |_| true, &cfg)?;
            finish_run(case_reports, seed, trials, start, report.as_deref())
        }
    }
}

fn finish_run(
    case_reports: Vec<report::CaseReport>,
    seed: u64,
    trials: u32,
    start: Instant,
    report_path: Option<&Path>,
) -> Result<i32> {
    let run = RunReport::new(seed, trials, case_reports, start.elapsed().as_millis());
    for case in &run.cases {
        for check in &case.checks {
            println!(
                "{}/{} {} [{}]: {} (expected {}){}",
                case.case,
                check.check,
                check.report.checker,
                check.report.modules.join(", "),
                status_str(check.report.status),
                check.expected,
                if check.matched { "" } else { "  <-- mismatch" }
            );
        }
    }
    let s = &run.summary;
    println!(
        "summary: {} checks, {} verified, {} hypothesis_not_met, {} refuted, {} inconclusive, {} mismatches ({} ms)",
        s.total,
        s.verified,
        s.hypothesis_not_met,
        s.refuted,
        s.inconclusive,
        s.expectation_mismatches,
        run.timing.total_ms
    );
    if let Some(path) = report_path {
        std::fs::write(path, run.to_json())
            .with_context(|| format!("cannot write {}", path.display()))?;
        println!("report written to {}", path.display());
    }
    Ok(run.exit_code())
}
