//! Command-line front end: list, tabulate, verify and export.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::families::{
    catalog, closed_form, default_free, eigen_system, generate, has_free_parameter, recurrence_table, FamilyId,
    Params,
};
use crate::families::ccbi::{first_nonreal_tau, positivity_conditions, RawParams};
use crate::fixtures::fixtures_for;
use crate::numerics::{format_cnum, PrecisionContext, DEFAULT_DIGITS, MIN_DIGITS};
use crate::operators::{matrix_diagonality, operator_matrix, verify_eigen, EIGEN_SHIFT};
use crate::orthogonality::{default_tol, favard_scan, gram};
use crate::report::{CheckResult, Report, Status};
use crate::scheme::{
    edge_catalog, export_graph, find_edge, resolve_open_questions, verify_commuting_square, verify_edge, EdgeKind,
    GraphFormat, Square,
};

pub const DIGITS_ENV: &str = "MINUS_ONE_DIGITS";
pub const EXIT_USAGE: i32 = 3;

/// Closed form against recurrence, n ≤ 12.
pub const CLOSED_FORM_N: u32 = 12;
pub const GRAM_N: u32 = 8;
pub const EIGEN_N: u32 = 10;
pub const FAVARD_N: u32 = 200;
pub const TAU_N: u32 = 5;

#[derive(Parser, Debug)]
#[command(name = "minus-one", version, about = "Continuous -1 orthogonal polynomials: tabulate, verify, export")]
pub struct Cli {
    /// Working precision in decimal digits (overrides MINUS_ONE_DIGITS).
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Human,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Catalog entries with parameter schemas and admissible regions.
    List {
        #[arg(long)]
        scheme_only: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
    },
    /// b_n, u_n and the coefficients of P_n for n ≤ N.
    Tabulate {
        #[arg(long)]
        family: String,
        /// name=value pairs, comma separated.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
    },
    /// Runs the verification suite on a family, an edge, or everything.
    Verify {
        #[arg(long, group = "scope")]
        family: Option<String>,
        /// source:target, by id or alias.
        #[arg(long, group = "scope")]
        edge: Option<String>,
        #[arg(long, group = "scope")]
        all: bool,
        /// Subset of closed-form, orthogonality, eigen, favard, exact, limit, ct-gt, square, open-questions.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// The scheme graph.
    Export {
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        /// Run the edge suite and attach statuses.
        #[arg(long)]
        verified: bool,
    },
}

const FAMILY_CHECKS: &[&str] = &["closed-form", "orthogonality", "eigen", "favard"];
const EDGE_CHECKS: &[&str] = &["exact", "limit", "ct-gt", "square", "open-questions"];

/// Flag, then environment, then the default.
pub fn resolve_digits(flag: Option<u32>, env: Option<String>) -> Result<u32> {
    let d = match (flag, env) {
        (Some(d), _) => d,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| Error::Precision(format!("{DIGITS_ENV}=`{s}` is not an integer")))?,
        (None, None) => DEFAULT_DIGITS,
    };
    if d < MIN_DIGITS {
        return Err(Error::Precision(format!("digits must be at least {MIN_DIGITS}, got {d}")));
    }
    Ok(d)
}

fn failed(id: &str, check: &str, anchor: &str, e: &Error) -> CheckResult {
    let st = match e {
        Error::NonConvergence { .. } | Error::ReductionAmbiguity { .. } => Status::Inconclusive,
        _ => Status::Fail,
    };
    CheckResult::new(id, check, anchor).status(st).note(e.to_string())
}

fn closed_form_check(p: &Params, k: usize, ctx: &PrecisionContext) -> CheckResult {
    let id = p.family().id();
    let anchor = p.family().anchor();
    let check = format!("closed-form#{k}");
    let run = || -> Result<f64> {
        let ps = generate(p, CLOSED_FORM_N, ctx)?;
        let mut worst = 0.0f64;
        for n in 0..=CLOSED_FORM_N {
            let q = closed_form(p, n, ctx)?;
            worst = worst.max(q.rel_diff(&ps[n as usize]).to_f64());
        }
        Ok(worst)
    };
    match run() {
        Ok(r) => CheckResult::new(id, check, anchor)
            .measured(r, ctx.tol_f64(10))
            .note(format!("{p} n<={CLOSED_FORM_N}")),
        Err(e) => failed(id, &check, &anchor, &e).note(p.to_string()),
    }
}

fn gram_check(p: &Params, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let id = p.family().id();
    let anchor = p.family().anchor();
    let half = ctx.digits() as i32 / 2;
    let off_tol = 10f64.powi(-half);
    let diag_tol = 10f64.powi(-half + 8);
    match gram(p, GRAM_N, &default_tol(ctx), ctx) {
        Ok(g) => {
            let note = format!("{p} N={GRAM_N} nodes={} converged={}", g.node_count, g.converged);
            let mut off = CheckResult::new(id, "gram-off-diagonal", &anchor).measured(g.off_diagonal_max, off_tol).note(note.clone());
            let mut diag = CheckResult::new(id, "gram-diagonal", &anchor).measured(g.diagonal_max(), diag_tol).note(note);
            if !g.converged {
                off = off.status(Status::Inconclusive).note("quadrature did not converge");
                diag = diag.status(Status::Inconclusive).note("quadrature did not converge");
            }
            vec![off, diag]
        }
        Err(e) => vec![failed(id, "gram", &anchor, &e).note(p.to_string())],
    }
}

fn eigen_checks(p: &Params, k: usize, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let id = p.family().id();
    let anchor = p.family().anchor();
    let frees = if has_free_parameter(p.family()) { vec![default_free(ctx), ctx.int(2)] } else { vec![default_free(ctx)] };
    let mut out = Vec::new();
    for (j, free) in frees.iter().enumerate() {
        let f = if has_free_parameter(p.family()) { Some(free) } else { None };
        let mut worst = 0.0f64;
        let mut st = Status::Pass;
        let mut notes = Vec::new();
        for n in 0..=EIGEN_N {
            match verify_eigen(p, n, f, ctx) {
                Ok(r) => {
                    worst = worst.max(r.residual);
                    st = st.and(r.status);
                    if !r.detail.is_empty() {
                        notes.push(format!("n={n}: {}", r.detail));
                    }
                }
                Err(e) => {
                    out.push(failed(id, &format!("eigen#{k}.{j}"), &anchor, &e));
                    return out;
                }
            }
        }
        let mut r = CheckResult::new(id, format!("eigen#{k}.{j}"), &anchor)
            .measured(worst, ctx.tol_f64(EIGEN_SHIFT))
            .note(format!("{p} free={} n<={EIGEN_N}", format_cnum(free, 6)));
        if st != Status::Pass {
            let s = st.and(r.status);
            r = r.status(s);
        }
        for n in notes {
            r = r.note(n);
        }
        out.push(r);
        // operator matrix in the P_n basis
        let run = || -> Result<(f64, f64)> {
            let m = operator_matrix(p, GRAM_N, f, ctx)?;
            let sys = eigen_system(p, f, ctx)?;
            let l: Vec<_> = (0..=GRAM_N).map(|n| sys.eigenvalue(n, ctx)).collect();
            Ok(matrix_diagonality(&m, &l, ctx))
        };
        out.push(match run() {
            Ok((off, diag)) => CheckResult::new(id, format!("operator-matrix#{k}.{j}"), &anchor)
                .measured(off.max(diag), ctx.tol_f64(EIGEN_SHIFT))
                .note(format!("{p} N={GRAM_N} off={off:.2e} diag={diag:.2e}")),
            Err(e) => failed(id, &format!("operator-matrix#{k}.{j}"), &anchor, &e),
        });
    }
    out
}

fn favard_check(p: &Params, k: usize, ctx: &PrecisionContext) -> CheckResult {
    let id = p.family().id();
    let anchor = p.family().anchor();
    match favard_scan(p, FAVARD_N, ctx) {
        Ok(f) => CheckResult::new(id, format!("favard#{k}"), anchor).status(Status::from_bool(f.pass)).note(format!(
            "{p} n<={FAVARD_N} min u={:.3e} at n={}",
            f.min_u, f.argmin_u
        )),
        Err(e) => failed(id, &format!("favard#{k}"), &anchor, &e),
    }
}

/// CCBI is not positive definite unless b₂ = 0.
fn ccbi_checks(ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let f = FamilyId::ContinuousComplementaryBannaiIto;
    let id = f.id();
    let anchor = f.anchor();
    let mut out = Vec::new();
    for (k, p) in fixtures_for(f, ctx)?.iter().enumerate() {
        let b2_zero = p[3].is_zero();
        let tau = first_nonreal_tau(p, TAU_N, ctx)?;
        let pos = positivity_conditions(&RawParams::from_ccbi(p), TAU_N, ctx);
        let ok = if b2_zero { tau.is_none() } else { tau.is_some() };
        out.push(
            CheckResult::new(id, format!("tau-classification#{k}"), &anchor)
                .status(Status::from_bool(ok))
                .note(format!("{p} first non-real tau: {tau:?}; reality conditions hold: {}", pos.all_hold)),
        );
    }
    Ok(out)
}

/// The family suite over its fixture points.
pub fn family_checks(family: FamilyId, checks: &[String], ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let want = |c: &str| checks.is_empty() || checks.iter().any(|x| x == c);
    let pts = fixtures_for(family, ctx)?;
    let mut out = Vec::new();
    if want("closed-form") {
        out.extend(pts.par_iter().enumerate().map(|(k, p)| closed_form_check(p, k, ctx)).collect::<Vec<_>>());
    }
    if family == FamilyId::ContinuousComplementaryBannaiIto {
        if want("favard") {
            out.extend(ccbi_checks(ctx)?);
        }
        return Ok(out);
    }
    if !family.is_orthogonal() {
        return Ok(out);
    }
    if want("orthogonality") {
        out.extend(gram_check(&pts[0], ctx));
    }
    if want("eigen") {
        out.extend(pts.par_iter().enumerate().flat_map(|(k, p)| eigen_checks(p, k, ctx)).collect::<Vec<_>>());
    }
    if want("favard") {
        out.extend(pts.iter().enumerate().map(|(k, p)| favard_check(p, k, ctx)));
    }
    Ok(out)
}

fn kind_check(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Specialization => "exact",
        EdgeKind::Limit | EdgeKind::QLimit => "limit",
        EdgeKind::Christoffel | EdgeKind::Geronimus => "ct-gt",
    }
}

/// Edge suite: every edge, the squares and the open questions.
pub fn scheme_checks(checks: &[String], ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let want = |c: &str| checks.is_empty() || checks.iter().any(|x| x == c);
    let edges: Vec<_> = edge_catalog().into_iter().filter(|e| want(kind_check(e.kind))).collect();
    let mut out: Vec<CheckResult> = edges
        .par_iter()
        .map(|e| verify_edge(e, ctx))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if want("square") {
        let (a, b) = (ctx.int(1), ctx.int(2));
        for sq in [Square::Jacobi, Square::Chihara] {
            out.extend(verify_commuting_square(sq, &a, &b, ctx)?);
        }
    }
    if want("open-questions") {
        out.extend(resolve_open_questions(ctx)?.iter().map(|r| r.to_check()));
    }
    Ok(out)
}

fn timestamp() -> String {
    let s = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("unix:{s}")
}

fn human_report(r: &Report) -> String {
    let mut s = String::new();
    for c in &r.results {
        let res = match (c.residual, c.tolerance) {
            (Some(a), Some(b)) => format!("{a:.2e} <= {b:.1e}"),
            (Some(a), None) => format!("{a:.2e}"),
            _ => String::from("-"),
        };
        s.push_str(&format!("{:<12} {} {} [{}] {}\n", format!("{:?}", c.status).to_uppercase(), c.id, c.check, res, c.notes));
    }
    let (p, f, i) = r.counts();
    let edges: std::collections::BTreeSet<&str> =
        r.results.iter().filter(|c| c.anchor.starts_with("edge:") && c.id.contains(':') && !c.id.starts_with("square") && !c.id.starts_with("oq")).map(|c| c.id.as_str()).collect();
    s.push_str(&format!("summary: {p} pass, {f} fail, {i} inconclusive; {} edges\n", edges.len()));
    s
}

fn emit(text: &str, output: Option<&std::path::Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::BadParameter(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn list(scheme_only: bool, format: OutFormat) -> String {
    let entries: Vec<_> = catalog()
        .into_iter()
        .filter(|e| !scheme_only || FamilyId::scheme().contains(&e.id))
        .collect();
    match format {
        OutFormat::Json => serde_json::to_string_pretty(&entries).expect("catalog serializes") + "\n",
        OutFormat::Human => {
            let mut s = String::new();
            for e in &entries {
                s.push_str(&format!(
                    "{:<36} {:<6} ({}) [{}] {}\n",
                    e.id.id(),
                    e.alias,
                    e.params.join(", "),
                    e.admissible,
                    e.anchor
                ));
            }
            s
        }
    }
}

fn tabulate(family: &str, params: &str, n: u32, format: OutFormat, ctx: &PrecisionContext) -> Result<String> {
    let f: FamilyId = family.parse()?;
    let p = Params::parse(f, params, ctx)?;
    let digits = ctx.digits() as usize;
    let rec = recurrence_table(&p, n, ctx)?;
    let polys = generate(&p, n, ctx)?;
    let rows: Vec<_> = (0..=n as usize)
        .map(|k| {
            let coeffs: Vec<String> = polys[k].coeffs().iter().map(|c| format_cnum(c, digits)).collect();
            (k, format_cnum(&rec[k].b, digits), if k == 0 { None } else { Some(format_cnum(&rec[k].u, digits)) }, coeffs)
        })
        .collect();
    Ok(match format {
        OutFormat::Json => {
            let rs: Vec<_> = rows.iter().map(|(k, b, u, c)| json!({"n": k, "b": b, "u": u, "coefficients": c})).collect();
            serde_json::to_string_pretty(&json!({"family": f.id(), "params": p.to_pairs(digits), "rows": rs}))
                .expect("table serializes")
                + "\n"
        }
        OutFormat::Human => {
            let mut s = format!("{p}\n");
            for (k, b, u, c) in rows {
                s.push_str(&format!("n={k}\n  b = {b}\n  u = {}\n  P = [{}]\n", u.unwrap_or_else(|| "_".into()), c.join(", ")));
            }
            s
        }
    })
}

fn verify(
    family: Option<String>,
    edge: Option<String>,
    all: bool,
    checks: Vec<String>,
    ctx: &PrecisionContext,
) -> Result<Report> {
    for c in &checks {
        if !FAMILY_CHECKS.contains(&c.as_str()) && !EDGE_CHECKS.contains(&c.as_str()) {
            return Err(Error::BadParameter(format!("unknown check `{c}`")));
        }
    }
    let config = json!({
        "family": family,
        "edge": edge,
        "all": all,
        "checks": checks,
        "digits": ctx.digits(),
    });
    let mut report = Report::new("verify", config);
    if let Some(f) = family {
        let f: FamilyId = f.parse()?;
        report.results = family_checks(f, &checks, ctx)?;
    } else if let Some(e) = edge {
        let e = find_edge(&e)?;
        report.results = verify_edge(&e, ctx)?;
    } else if all {
        let fams: Vec<Vec<CheckResult>> = FamilyId::scheme()
            .par_iter()
            .map(|f| family_checks(*f, &checks, ctx))
            .collect::<Result<_>>()?;
        report.results = fams.into_iter().flatten().collect();
        report.results.extend(scheme_checks(&checks, ctx)?);
    } else {
        return Err(Error::BadParameter("verify needs --family, --edge or --all".into()));
    }
    report.sort();
    Ok(report)
}

fn edge_statuses(ctx: &PrecisionContext) -> Result<BTreeMap<String, Status>> {
    let mut m = BTreeMap::new();
    for r in scheme_checks(&[], ctx)? {
        let e = m.entry(r.id.clone()).or_insert(Status::Pass);
        *e = e.and(r.status);
    }
    Ok(m)
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let digits = match resolve_digits(cli.digits, std::env::var(DIGITS_ENV).ok()) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let ctx = match PrecisionContext::new(digits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let usage = |e: Error| {
        let anchor = match &e {
            Error::Inadmissible { family, .. } | Error::ParameterSingularity { family, .. } => {
                format!(" (anchor: {family}:compendium)")
            }
            _ => String::new(),
        };
        eprintln!("error: {e}{anchor}");
        EXIT_USAGE
    };
    match cli.command {
        Command::List { scheme_only, format } => {
            print!("{}", list(scheme_only, format));
            0
        }
        Command::Tabulate { family, params, n, format } => match tabulate(&family, &params, n, format, &ctx) {
            Ok(s) => {
                print!("{s}");
                0
            }
            Err(e) => usage(e),
        },
        Command::Verify { family, edge, all, checks, format, output, no_timestamp } => {
            let mut report = match verify(family, edge, all, checks, &ctx) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if !no_timestamp {
                report.timestamp = Some(timestamp());
            }
            let text = match format {
                OutFormat::Json => report.to_json() + "\n",
                OutFormat::Human => human_report(&report),
            };
            if let Err(e) = emit(&text, output.as_deref()) {
                return usage(e);
            }
            report.status().exit_code()
        }
        Command::Export { format, output, verified } => {
            let st = if verified {
                match edge_statuses(&ctx) {
                    Ok(m) => Some(m),
                    Err(e) => return usage(e),
                }
            } else {
                None
            };
            let fmt = match format {
                ExportFormat::Dot => GraphFormat::Dot,
                ExportFormat::Json => GraphFormat::Json,
            };
            let mut text = export_graph(fmt, st.as_ref());
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match emit(&text, output.as_deref()) {
                Ok(()) => 0,
                Err(e) => usage(e),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_precedence() {
        assert_eq!(resolve_digits(Some(30), Some("60".into())).unwrap(), 30);
        assert_eq!(resolve_digits(None, Some("60".into())).unwrap(), 60);
        assert_eq!(resolve_digits(None, None).unwrap(), DEFAULT_DIGITS);
        assert!(resolve_digits(Some(10), None).is_err());
        assert!(resolve_digits(None, Some("x".into())).is_err());
    }

    #[test]
    fn list_counts() {
        assert_eq!(list(false, OutFormat::Human).lines().count(), 21);
        assert_eq!(list(true, OutFormat::Human).lines().count(), 15);
        let v: serde_json::Value = serde_json::from_str(&list(false, OutFormat::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 21);
    }

    #[test]
    fn usage_errors_exit_three() {
        assert_eq!(run(["minus-one", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["minus-one", "verify", "--family", "nope"]), EXIT_USAGE);
        assert_eq!(run(["minus-one", "--digits", "5", "list"]), EXIT_USAGE);
    }

    #[test]
    fn hermite_table() {
        let c = PrecisionContext::default();
        let t = tabulate("hermite", "", 3, OutFormat::Json, &c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t).unwrap();
        let u: Vec<String> = v["rows"].as_array().unwrap()[1..].iter().map(|r| r["u"].as_str().unwrap().to_string()).collect();
        assert_eq!(u, ["0.5", "1", "1.5"]);
    }
}
