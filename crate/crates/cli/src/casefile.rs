//! Line-oriented sectioned case files: `[ring]` declares the quotient ring,
//! `[module.NAME]` sections declare finitely presented modules (directly by
//! presentation rows or through a matrix factorization), `[check.NAME]`
//! sections declare theorem checks with expected outcomes.
//!
//! Parsing is two-staged: the text parses into a plain declaration
//! (`CaseDecl`, comparable and re-serializable, so parse/serialize
//! round-trips exactly), and the declaration realizes into ring and module
//! values with every structural invariant checked.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use omega2_core::field::PrimeField;
use omega2_core::matrix::PolyMatrix;
use omega2_core::module::FPModule;
use omega2_core::parse::parse_polynomial;
use omega2_core::poly::Polynomial;
use omega2_core::ring::RingSpec;
use omega2_core::vector::FreeVector;
use omega2_core::verifier::CheckerId;
use omega2_core::Vars;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub p: u32,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub ideal: Vec<String>,
    pub dim: i64,
    pub minimal_primes: Vec<Vec<String>>,
    pub nzd_candidates: Vec<String>,
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfDecl {
    pub f: String,
    pub a_rows: Vec<Vec<String>>,
    /// Second factor; empty means "use the adjugate" (2 x 2 only).
    pub b_rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub twists: Vec<i64>,
    /// Presentation rows: row per generator, one polynomial per relation.
    pub rows: Vec<Vec<String>>,
    pub mf: Option<MfDecl>,
    pub q_periodic: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Verified,
    HypothesisNotMet,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::Verified => "verified",
            Expectation::HypothesisNotMet => "hypothesis_not_met",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckDecl {
    pub name: String,
    pub checker: String,
    pub module: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub q: Option<usize>,
    pub trials: Option<u32>,
    pub max_degree: Option<i64>,
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseDecl {
    pub id: String,
    pub ring: RingDecl,
    pub modules: Vec<ModuleDecl>,
    pub checks: Vec<CheckDecl>,
}

/// A realized case: declaration plus constructed ring and modules.
#[derive(Debug)]
pub struct Case {
    pub decl: CaseDecl,
    pub ring: RingSpec,
    pub modules: BTreeMap<String, FPModule>,
}

fn split_list(value: &str) -> Vec<String> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    value.split(',').map(|s| s.trim().to_string()).collect()
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

/// Parse the declaration layer from text. `id` names the case in reports.
pub fn parse_decl(id: &str, text: &str) -> Result<CaseDecl> {
    enum Section {
        None,
        Ring,
        Module(usize),
        Check(usize),
    }
    let mut ring: Option<RingDecl> = None;
    let mut ring_seen = false;
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut checks: Vec<CheckDecl> = Vec::new();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let header = rest
                .strip_suffix(']')
                .ok_or_else(|| anyhow!("line {no}: unterminated section header"))?
                .trim();
            section = if header == "ring" {
                if ring_seen {
                    bail!("line {no}: duplicate [ring] section");
                }
                ring_seen = true;
                ring = Some(RingDecl {
                    p: 32003,
                    vars: Vec::new(),
                    weights: Vec::new(),
                    ideal: Vec::new(),
                    dim: 0,
                    minimal_primes: Vec::new(),
                    nzd_candidates: Vec::new(),
                    reduced: true,
                });
                Section::Ring
            } else if let Some(name) = header.strip_prefix("module.") {
                let name = name.trim();
                if name.is_empty() {
                    bail!("line {no}: module section needs a name");
                }
                if modules.iter().any(|m| m.name == name) {
                    bail!("line {no}: duplicate module section '{name}'");
                }
                modules.push(ModuleDecl {
                    name: name.to_string(),
                    twists: vec![0],
                    rows: Vec::new(),
                    mf: None,
                    q_periodic: None,
                });
                Section::Module(modules.len() - 1)
            } else if let Some(name) = header.strip_prefix("check.") {
                let name = name.trim();
                if name.is_empty() {
                    bail!("line {no}: check section needs a name");
                }
                if checks.iter().any(|c| c.name == name) {
                    bail!("line {no}: duplicate check section '{name}'");
                }
                checks.push(CheckDecl {
                    name: name.to_string(),
                    checker: String::new(),
                    module: None,
                    left: None,
                    right: None,
                    q: None,
                    trials: None,
                    max_degree: None,
                    expect: Expectation::Verified,
                });
                Section::Check(checks.len() - 1)
            } else {
                bail!("line {no}: unknown section [{header}]");
            };
            continue;
        }
        let eq = trimmed
            .find('=')
            .ok_or_else(|| anyhow!("line {no}: expected 'key = value'"))?;
        let key = trimmed[..eq].trim();
        let value = trimmed[eq + 1..].trim();
        let value_col = line.find('=').map(|c| c + 2).unwrap_or(1);
        let l = Line {
            no,
            key,
            value,
            value_col,
        };
        match section {
            Section::None => bail!("line {no}: '{key}' appears before any section header"),
            Section::Ring => ring_key(ring.as_mut().unwrap(), &l)?,
            Section::Module(i) => module_key(&mut modules[i], &l)?,
            Section::Check(i) => check_key(&mut checks[i], &l)?,
        }
    }

    let ring = ring.ok_or_else(|| anyhow!("missing [ring] section"))?;
    if ring.vars.is_empty() {
        bail!("[ring] section declares no variables");
    }
    Ok(CaseDecl {
        id: id.to_string(),
        ring,
        modules,
        checks,
    })
}

fn ring_key(r: &mut RingDecl, l: &Line) -> Result<()> {
    let at = |what: &str| format!("line {}, column {}: {what}", l.no, l.value_col);
    match l.key {
        "p" => {
            r.p = l
                .value
                .parse()
                .with_context(|| at("modulus must be an integer"))?
        }
        "vars" => r.vars = split_list(l.value),
        "weights" => {
            r.weights = split_list(l.value)
                .iter()
                .map(|w| w.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| at("weights must be positive integers"))?
        }
        "ideal" => r.ideal.extend(split_list(l.value)),
        "dim" => {
            r.dim = l
                .value
                .parse()
                .with_context(|| at("dim must be an integer"))?
        }
        "minimal_primes" => {
            r.minimal_primes = l
                .value
                .split('|')
                .map(split_list)
                .filter(|p| !p.is_empty())
                .collect()
        }
        "nzd_candidates" => r.nzd_candidates.extend(split_list(l.value)),
        "reduced" => {
            r.reduced = match l.value {
                "true" => true,
                "false" => false,
                _ => bail!("{}", at("reduced must be true or false")),
            }
        }
        other => bail!("line {}: unknown ring key '{other}'", l.no),
    }
    Ok(())
}

fn module_key(m: &mut ModuleDecl, l: &Line) -> Result<()> {
    let at = |what: &str| format!("line {}, column {}: {what}", l.no, l.value_col);
    match l.key {
        "twists" => {
            m.twists = split_list(l.value)
                .iter()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| at("twists must be integers"))?
        }
        "row" => m.rows.push(split_list(l.value)),
        "mf_f" => {
            m.mf.get_or_insert_with(|| MfDecl {
                f: String::new(),
                a_rows: Vec::new(),
                b_rows: Vec::new(),
            })
            .f = l.value.to_string()
        }
        "mf_row" => {
            m.mf.get_or_insert_with(|| MfDecl {
                f: String::new(),
                a_rows: Vec::new(),
                b_rows: Vec::new(),
            })
            .a_rows
            .push(split_list(l.value))
        }
        "mf_b_row" => {
            m.mf.get_or_insert_with(|| MfDecl {
                f: String::new(),
                a_rows: Vec::new(),
                b_rows: Vec::new(),
            })
            .b_rows
            .push(split_list(l.value))
        }
        "q_periodic" => {
            m.q_periodic = Some(
                l.value
                    .parse()
                    .with_context(|| at("q_periodic must be a positive integer"))?,
            )
        }
        other => bail!("line {}: unknown module key '{other}'", l.no),
    }
    Ok(())
}

fn check_key(c: &mut CheckDecl, l: &Line) -> Result<()> {
    let at = |what: &str| format!("line {}, column {}: {what}", l.no, l.value_col);
    match l.key {
        "checker" => {
            if CheckerId::parse(l.value).is_none() {
                bail!("{}", at("unknown checker id"));
            }
            c.checker = l.value.to_string();
        }
        "module" => c.module = Some(l.value.to_string()),
        "left" => c.left = Some(l.value.to_string()),
        "right" => c.right = Some(l.value.to_string()),
        "q" => {
            c.q = Some(
                l.value
                    .parse()
                    .with_context(|| at("q must be a positive integer"))?,
            )
        }
        "trials" => {
            c.trials = Some(
                l.value
                    .parse()
                    .with_context(|| at("trials must be an integer"))?,
            )
        }
        "max_degree" => {
            c.max_degree = Some(
                l.value
                    .parse()
                    .with_context(|| at("max_degree must be an integer"))?,
            )
        }
        "expect" => {
            c.expect = match l.value {
                "verified" => Expectation::Verified,
                "hypothesis_not_met" => Expectation::HypothesisNotMet,
                _ => bail!("{}", at("expect must be verified or hypothesis_not_met")),
            }
        }
        other => bail!("line {}: unknown check key '{other}'", l.no),
    }
    Ok(())
}

/// Serialize a declaration back to the canonical text form; the parser and
/// this writer round-trip exactly, which the tests pin down.
#[cfg_attr(not(test), allow(dead_code))]
pub fn serialize_decl(d: &CaseDecl) -> String {
    let mut out = String::new();
    let r = &d.ring;
    out.push_str("[ring]\n");
    let _ = writeln!(out, "p = {}", r.p);
    let _ = writeln!(out, "vars = {}", r.vars.join(", "));
    if !r.weights.is_empty() {
        let list: Vec<String> = r.weights.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(out, "weights = {}", list.join(", "));
    }
    for g in &r.ideal {
        let _ = writeln!(out, "ideal = {g}");
    }
    let _ = writeln!(out, "dim = {}", r.dim);
    if !r.minimal_primes.is_empty() {
        let primes: Vec<String> = r.minimal_primes.iter().map(|p| p.join(", ")).collect();
        let _ = writeln!(out, "minimal_primes = {}", primes.join(" | "));
    }
    for u in &r.nzd_candidates {
        let _ = writeln!(out, "nzd_candidates = {u}");
    }
    let _ = writeln!(out, "reduced = {}", r.reduced);
    for m in &d.modules {
        let _ = writeln!(out, "\n[module.{}]", m.name);
        let twists: Vec<String> = m.twists.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "twists = {}", twists.join(", "));
        for row in &m.rows {
            let _ = writeln!(out, "row = {}", row.join(", "));
        }
        if let Some(mf) = &m.mf {
            let _ = writeln!(out, "mf_f = {}", mf.f);
            for row in &mf.a_rows {
                let _ = writeln!(out, "mf_row = {}", row.join(", "));
            }
            for row in &mf.b_rows {
                let _ = writeln!(out, "mf_b_row = {}", row.join(", "));
            }
        }
        if let Some(q) = m.q_periodic {
            let _ = writeln!(out, "q_periodic = {q}");
        }
    }
    for c in &d.checks {
        let _ = writeln!(out, "\n[check.{}]", c.name);
        let _ = writeln!(out, "checker = {}", c.checker);
        if let Some(m) = &c.module {
            let _ = writeln!(out, "module = {m}");
        }
        if let Some(m) = &c.left {
            let _ = writeln!(out, "left = {m}");
        }
        if let Some(m) = &c.right {
            let _ = writeln!(out, "right = {m}");
        }
        if let Some(q) = c.q {
            let _ = writeln!(out, "q = {q}");
        }
        if let Some(t) = c.trials {
            let _ = writeln!(out, "trials = {t}");
        }
        if let Some(md) = c.max_degree {
            let _ = writeln!(out, "max_degree = {md}");
        }
        let _ = writeln!(out, "expect = {}", c.expect.as_str());
    }
    out
}

fn parse_poly_list(
    items: &[String],
    field: &PrimeField,
    vars: &Vars,
    what: &str,
) -> Result<Vec<Polynomial>> {
    items
        .iter()
        .map(|s| {
            parse_polynomial(s, field, vars).map_err(|e| anyhow!("{what}: cannot parse '{s}': {e}"))
        })
        .collect()
}

fn realize_ring(decl: &RingDecl) -> Result<RingSpec> {
    let field = PrimeField::new(decl.p).map_err(|e| anyhow!("ring: {e}"))?;
    let names = decl.vars.clone();
    let weights = if decl.weights.is_empty() {
        vec![1; names.len()]
    } else {
        decl.weights.clone()
    };
    let vars = Vars::new(names, weights).map_err(|e| anyhow!("ring: {e}"))?;
    let ideal = parse_poly_list(&decl.ideal, &field, &vars, "ring ideal")?;
    let primes = decl
        .minimal_primes
        .iter()
        .map(|p| parse_poly_list(p, &field, &vars, "minimal prime"))
        .collect::<Result<Vec<_>>>()?;
    let nzds = parse_poly_list(&decl.nzd_candidates, &field, &vars, "nzd candidate")?;
    RingSpec::new(field, vars, ideal, decl.dim, primes, nzds, decl.reduced)
        .map_err(|e| anyhow!("ring: {e}"))
}

fn realize_module(decl: &ModuleDecl, ring: &RingSpec) -> Result<FPModule> {
    let name = &decl.name;
    let field = ring.field();
    let vars = ring.vars();
    let rows: Vec<Vec<Polynomial>> = if let Some(mf) = &decl.mf {
        if !decl.rows.is_empty() {
            bail!("module '{name}': give either rows or a matrix factorization, not both");
        }
        let f = parse_polynomial(&mf.f, field, vars)
            .map_err(|e| anyhow!("module '{name}': cannot parse mf_f '{}': {e}", mf.f))?;
        let a_rows = mf
            .a_rows
            .iter()
            .map(|r| parse_poly_list(r, field, vars, &format!("module '{name}' mf_row")))
            .collect::<Result<Vec<_>>>()?;
        let n = a_rows.len();
        if n == 0 || a_rows.iter().any(|r| r.len() != n) {
            bail!("module '{name}': matrix factorization must be square");
        }
        let a = PolyMatrix::from_rows(a_rows.clone());
        let b = if mf.b_rows.is_empty() {
            if n != 2 {
                bail!("module '{name}': mf_b_row rows are required beyond size 2");
            }
            // adjugate of a 2 x 2 matrix
            PolyMatrix::from_rows(vec![
                vec![a.get(1, 1).clone(), a.get(0, 1).neg(field)],
                vec![a.get(1, 0).neg(field), a.get(0, 0).clone()],
            ])
        } else {
            let b_rows = mf
                .b_rows
                .iter()
                .map(|r| parse_poly_list(r, field, vars, &format!("module '{name}' mf_b_row")))
                .collect::<Result<Vec<_>>>()?;
            if b_rows.len() != n || b_rows.iter().any(|r| r.len() != n) {
                bail!("module '{name}': second factor must match the first in size");
            }
            PolyMatrix::from_rows(b_rows)
        };
        let fi = PolyMatrix::identity(n, vars.len()).map(|p| p.mul(&f, field, vars));
        if a.mul(&b, field, vars) != fi || b.mul(&a, field, vars) != fi {
            bail!("module '{name}': matrix factorization identity fails: products must equal the equation times the identity");
        }
        (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
            .collect()
    } else {
        decl.rows
            .iter()
            .map(|r| parse_poly_list(r, field, vars, &format!("module '{name}' row")))
            .collect::<Result<Vec<_>>>()?
    };
    if rows.len() != decl.twists.len() && !rows.is_empty() {
        bail!(
            "module '{name}': {} presentation rows for {} generators",
            rows.len(),
            decl.twists.len()
        );
    }
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        bail!("module '{name}': presentation rows have unequal lengths");
    }
    // reject raw inhomogeneous entries before any normalization can hide them
    for row in &rows {
        for p in row {
            if p.homogeneous_degree(vars).is_err() {
                bail!(
                    "module '{name}': inhomogeneous relation entry {}",
                    p.display(vars)
                );
            }
        }
    }
    let columns: Vec<FreeVector> = (0..ncols)
        .map(|j| {
            FreeVector::from_components(
                rows.iter()
                    .enumerate()
                    .map(|(i, r)| (i, r[j].clone()))
                    .filter(|(_, p)| !p.is_zero()),
            )
        })
        .collect();
    FPModule::new(ring, decl.twists.clone(), columns).map_err(|e| anyhow!("module '{name}': {e}"))
}

/// Realize a declaration: construct the ring, every module, and validate
/// the checks against declared names and arities.
pub fn realize(decl: CaseDecl) -> Result<Case> {
    let ring = realize_ring(&decl.ring)?;
    let mut modules = BTreeMap::new();
    for m in &decl.modules {
        let module = realize_module(m, &ring)?;
        modules.insert(m.name.clone(), module);
    }
    for c in &decl.checks {
        let id = CheckerId::parse(&c.checker)
            .ok_or_else(|| anyhow!("check '{}': unknown checker '{}'", c.name, c.checker))?;
        let named = |n: &Option<String>, what: &str| -> Result<()> {
            if let Some(n) = n {
                if !modules.contains_key(n) {
                    bail!(
                        "check '{}': {what} references undefined module '{n}'",
                        c.name
                    );
                }
            }
            Ok(())
        };
        named(&c.module, "module")?;
        named(&c.left, "left")?;
        named(&c.right, "right")?;
        let has_left = c.left.is_some() || c.module.is_some();
        if !has_left {
            bail!("check '{}': no module named", c.name);
        }
        if id.arity() == 2 && c.right.is_none() {
            bail!(
                "check '{}': checker {} takes two modules",
                c.name,
                id.name()
            );
        }
    }
    Ok(Case {
        decl,
        ring,
        modules,
    })
}

/// Parse and realize a case file from disk; the case id is the file stem.
pub fn load(path: &Path) -> Result<Case> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("case")
        .to_string();
    let decl = parse_decl(&id, &text).with_context(|| format!("{}", path.display()))?;
    realize(decl).with_context(|| format!("{}", path.display()))
}
