//! Command line front end: `construct`, `grade`, `verify` and `suite`.
//!
//! Exit status is 0 when everything passes, 1 when a verification fails and
//! 2 for configuration errors. `THINLOOP_DEPTH` overrides the default depth.

use crate::cartan::{
    self, build_albert_frank, build_h2_phi1, build_h2_phi_tau_derived, build_h2_second_derived, build_w1n,
};
use crate::ffield::{Field, FieldElement};
use crate::grading::{params_from_mu3, ToralParams};
use crate::liealg::{check_structure_map, validate_grading, validate_table, StructureTable};
use crate::reproduce::{self, Reproduction};
use crate::thinloop::ThinError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const DEPTH_ENV: &str = "THINLOOP_DEPTH";

#[derive(Parser, Debug)]
#[command(name = "thinloop", about = "Cartan type Lie algebras and their thin loop algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the structure table of an algebra as JSON.
    Construct(ConstructArgs),
    /// Print a graded table and its degree map as JSON.
    Grade(GradeArgs),
    /// Build the loop algebra of a grading and check it against the predicted pattern.
    Verify(VerifyArgs),
    /// Run the built-in verification matrix.
    Suite {
        /// Run only the rows whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// Zassenhaus algebra W(1;n), basis E_i
    W,
    /// Zassenhaus algebra in the basis e_alpha, over F_{p^n}
    Wgroup,
    /// H(2;n)^(2)
    H2,
    /// H(2;n;Phi(tau))^(1)
    Htau,
    /// H(2;n;Phi(1)) with parameter eps
    Hphi1,
    /// Albert-Zassenhaus algebra on F_{p^k} with theta(a) = a^p - a
    Af,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub algebra: AlgebraKind,
    #[arg(long)]
    pub p: u32,
    /// Height for W(1;n).
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub n1: u32,
    #[arg(long, default_value_t = 1)]
    pub n2: u32,
    /// Field element literal `a0,a1,..` for eps.
    #[arg(long, default_value = "1")]
    pub eps: String,
    /// Degree of the coefficient field over F_p.
    #[arg(long, default_value_t = 1)]
    pub field_degree: u32,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingKind {
    Mixed,
    Finite,
    SigmaZero,
    EpsZero,
}

#[derive(Args, Debug)]
pub struct GradeArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub grading: GradingKind,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub n1: u32,
    #[arg(long)]
    pub n2: Option<u32>,
    /// q = p^n2, an alternative to --n2.
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree of the coefficient field for the finite grading.
    #[arg(long, default_value_t = 2)]
    pub field_degree: u32,
    /// Third diamond type, a literal `a0,a1,..` outside the prime field.
    #[arg(long)]
    pub mu3: Option<String>,
    /// Alternatively give sigma and rho directly.
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
    /// sigma/rho for the eps = 0 degeneration.
    #[arg(long)]
    pub ratio: Option<i64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grade: GradeArgs,
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Failed(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Config(e.to_string())
    }
}

fn parse_el(f: &Field, s: &str) -> Result<FieldElement, CliError> {
    Ok(f.parse(s)?)
}

pub fn construct(a: &ConstructArgs) -> Result<StructureTable, CliError> {
    let f = Field::new(a.p, a.field_degree, None)?;
    let eps = parse_el(&f, &a.eps)?;
    Ok(match a.algebra {
        AlgebraKind::W => build_w1n(&f, a.n)?,
        AlgebraKind::Wgroup => {
            let fq = Field::new(a.p, a.n, None)?;
            cartan::build_zassenhaus_group(&fq)?
        }
        AlgebraKind::H2 => build_h2_second_derived(&f, a.n1, a.n2)?.table,
        AlgebraKind::Htau => build_h2_phi_tau_derived(&f, a.n1, a.n2)?.table,
        AlgebraKind::Hphi1 => build_h2_phi1(&f, a.n1, a.n2, eps)?.table,
        AlgebraKind::Af => {
            let group: Vec<FieldElement> = f.elements().collect();
            let theta: Vec<FieldElement> = group.iter().map(|&x| f.sub(f.frobenius(x), x)).collect();
            build_albert_frank(&f, &group, &theta)?
        }
    })
}

fn n2_of(a: &GradeArgs) -> Result<u32, CliError> {
    match (a.n2, a.q) {
        (Some(n), _) => Ok(n),
        (None, Some(q)) => {
            let mut n = 0;
            let mut v = 1u64;
            while v < q {
                v *= a.p as u64;
                n += 1;
            }
            if v != q || n == 0 {
                return Err(CliError::Config(format!("q = {q} is not a positive power of p = {}", a.p)));
            }
            Ok(n)
        }
        (None, None) => Err(CliError::Config("one of --n2 or --q is required".into())),
    }
}

pub fn reproduction(a: &GradeArgs) -> Result<Reproduction, CliError> {
    let n2 = n2_of(a)?;
    Ok(match a.grading {
        GradingKind::Mixed => reproduce::mixed(a.p, a.n1, n2)?,
        GradingKind::SigmaZero => reproduce::sigma_zero(a.p, n2)?,
        GradingKind::EpsZero => {
            let ratio = a.ratio.ok_or_else(|| CliError::Config("--ratio is required".into()))?;
            reproduce::eps_zero(a.p, n2, ratio)?.reproduction
        }
        GradingKind::Finite => {
            if a.n1 != 1 {
                return Err(CliError::Config("the finite grading needs n1 = 1".into()));
            }
            let f: Arc<Field> = Field::new(a.p, a.field_degree, None)?;
            let params = match (&a.mu3, &a.sigma, &a.rho) {
                (Some(m), None, None) => params_from_mu3(&f, parse_el(&f, m)?)?,
                (None, Some(s), Some(r)) => ToralParams::new(&f, parse_el(&f, s)?, parse_el(&f, r)?, f.one())?,
                _ => return Err(CliError::Config("give either --mu3 or both --sigma and --rho".into())),
            };
            reproduce::finite(&f, n2, &params)?
        }
    })
}

/// Depth from the command line, else the environment, else three periods.
pub fn resolve_depth(flag: Option<usize>, default: usize) -> Result<usize, CliError> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEPTH_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Config(format!("{DEPTH_ENV}={s:?} is not a number"))),
        Err(_) => Ok(default),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<(Value, Vec<String>), CliError> {
    let r = reproduction(&a.grade)?;
    let depth = resolve_depth(a.depth, r.default_depth())?;
    let report = r.run(depth).map_err(|e| match e {
        ThinError::InsufficientDepth(_) => CliError::Config(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    })?;
    let mismatches = r.compare(&report);
    let mut json = report.to_json(r.field());
    json["title"] = json!(r.title);
    json["depth"] = json!(depth);
    json["mismatches"] = json!(mismatches);
    json["verdict"] = json!(if mismatches.is_empty() { "PASS" } else { "FAIL" });
    Ok((json, mismatches))
}

pub struct SuiteRow {
    pub name: String,
    pub run: Box<dyn Fn() -> Result<String, String>>,
}

fn row(name: impl Into<String>, run: impl Fn() -> Result<String, String> + 'static) -> SuiteRow {
    SuiteRow { name: name.into(), run: Box::new(run) }
}

fn repro_row(name: String, build: impl Fn() -> Result<Reproduction, reproduce::ReproError> + 'static) -> SuiteRow {
    row(name, move || {
        let r = build().map_err(|e| e.to_string())?;
        let rep = r.run(r.default_depth()).map_err(|e| e.to_string())?;
        let m = r.compare(&rep);
        if !m.is_empty() {
            return Err(m.join("; "));
        }
        let k = rep.k.as_ref().map(|k| k.k.to_string()).unwrap_or_else(|e| e.to_string());
        Ok(format!("{} diamonds checked, k = {k}", rep.scan.records.len()))
    })
}

/// The verification matrix run by `thinloop suite`.
pub fn suite_rows() -> Vec<SuiteRow> {
    let mut rows = Vec::new();
    for (p, n) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        rows.push(row(format!("transition-w-{p}-{n}"), move || {
            let f = Field::new(p, n, None).map_err(|e| e.to_string())?;
            let w = build_w1n(&f, n).map_err(|e| e.to_string())?;
            let g = cartan::build_zassenhaus_group(&f).map_err(|e| e.to_string())?;
            let rows = cartan::zassenhaus_group_basis(&f, n).map_err(|e| e.to_string())?;
            if check_structure_map(&g, &w, &rows) && validate_table(&w).passed() {
                Ok(format!("dim {}", w.dim()))
            } else {
                Err("transition does not conjugate the bracket".into())
            }
        }));
    }
    for (p, n1, n2) in [(3, 1, 1), (5, 1, 1), (3, 1, 2), (2, 1, 2)] {
        let tag = if p == 2 { "-char2" } else { "" };
        rows.push(repro_row(format!("mixed-{p}-{n1}-{n2}{tag}"), move || reproduce::mixed(p, n1, n2)));
    }
    for (p, k, n2) in [(3u32, 2u32, 1u32), (5, 2, 1), (3, 2, 2), (7, 2, 1), (2, 2, 2)] {
        let tag = if p == 2 { "-char2" } else { "" };
        let q = p.pow(n2);
        rows.push(repro_row(format!("finite-{p}-{q}{tag}"), move || {
            let f = Field::new(p, k, None)?;
            let mu3 = f.elements().find(|&a| !f.in_prime_field(a)).unwrap();
            reproduce::finite(&f, n2, &params_from_mu3(&f, mu3)?)
        }));
    }
    for p in [3, 5] {
        rows.push(repro_row(format!("sigma0-{p}"), move || reproduce::sigma_zero(p, 1)));
        for ratio in 1..p as i64 - 1 {
            rows.push(repro_row(format!("eps0-{p}-ratio{ratio}"), move || {
                Ok(reproduce::eps_zero(p, 1, ratio)?.reproduction)
            }));
        }
    }
    for n in [1, 2] {
        rows.push(row(format!("isomorphism-char2-{n}"), move || {
            let (src, dst, map) = cartan::char_two_isomorphism(n).map_err(|e| e.to_string())?;
            if check_structure_map(&src.table, &dst, &map) {
                Ok(format!("dim {}", dst.dim()))
            } else {
                Err("map is not a homomorphism".into())
            }
        }));
    }
    rows
}

/// Write through a temporary file so readers never see half a document.
fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: String) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, &text),
        None => {
            let _ = writeln!(out, "{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Construct(a) => {
            let t = construct(a)?;
            let report = validate_table(&t);
            emit(out, a.output.as_deref(), serde_json::to_string(&t.to_json()).unwrap())?;
            // keep standard output pure JSON when the table goes there
            let summary: &mut dyn Write = if a.output.is_some() { out } else { err };
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(summary, "dim {}\nJacobi: {verdict}", t.dim());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed(format!("Jacobi identity fails: {:?}", report.violations)))
            }
        }
        Command::Grade(a) => {
            let r = reproduction(a)?;
            if !validate_grading(&r.table, &r.degmap) {
                return Err(CliError::Failed("degree map is not a grading".into()));
            }
            emit(out, a.output.as_deref(), json!({ "table": r.table.to_json(), "grading": r.degmap }).to_string())
        }
        Command::Verify(a) => {
            let (json, mismatches) = verify(a)?;
            emit(out, a.grade.output.as_deref(), serde_json::to_string_pretty(&json).unwrap())?;
            if mismatches.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{} mismatches", mismatches.len())))
            }
        }
        Command::Suite { only } => {
            let rows = suite_rows();
            let selected: Vec<&SuiteRow> =
                rows.iter().filter(|r| only.as_ref().is_none_or(|o| r.name.contains(o.as_str()))).collect();
            if selected.is_empty() {
                let names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
                return Err(CliError::Config(format!("no suite row matches; valid rows: {}", names.join(", "))));
            }
            let mut failed = 0;
            for r in selected {
                match (r.run)() {
                    Ok(detail) => {
                        let _ = writeln!(out, "PASS {}: {detail}", r.name);
                    }
                    Err(why) => {
                        failed += 1;
                        let _ = writeln!(out, "FAIL {}: {why}", r.name);
                    }
                }
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{failed} rows failed")))
            }
        }
    }
}

/// Parse arguments, run, and return the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Failed(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            1
        }
        Err(CliError::Config(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}
