//! Command-line front end. Every subcommand is deterministic; JSON output is
//! one record per line and CSV output carries a header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::certify::{full_suite, proposition_mrl_check, BoundLedgerEntry};
use crate::error::{Error, Result};
use crate::evalnum::{arc_grid, arc_table, write_csv, ArcFunction};
use crate::formid::FormId;
use crate::miller::{faber_polynomial, miller_basis, miller_form};
use crate::qseries::{delta, eisenstein, jfunction, QSeries};
use crate::zeros::{
    distribution_stats, faber_roots, theorem_m1_table, zero_report_with, ZeroOptions, DEFAULT_PRECISION_BITS,
};

/// Extra coefficients beyond what a consumer needs, when `--trunc` is omitted.
pub const TRUNC_MARGIN: i64 = 8;
pub const DEFAULT_GRID_STEP: f64 = 1e-3;

#[derive(Parser, Debug)]
#[command(name = "modzeros", version, about = "Miller bases, Faber polynomials and zeros of level-one modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a q-expansion, or tabulate an arc function with --arc.
    Expand(ExpandArgs),
    /// Print the Miller basis of weight k.
    Miller(MillerArgs),
    /// Print the Faber polynomial of g_{k,m}.
    Faber(FormArgs),
    /// Isolate the roots of the Faber polynomial of g_{k,m} in [0, 1728].
    Roots(RootsArgs),
    /// Locate the zeros of g_{k,m} on the arc and reconcile them with its Faber roots.
    ArcZeros(RootsArgs),
    /// Run the bound ledger; exits 1 if any entry fails.
    VerifyBounds(LedgerArgs),
    /// Check that every g_{k,1} with 1 <= ell <= 14 has all its zeros on the arc.
    VerifyThm2(TableArgs),
    /// Grid check of the cosine approximation of g_{k,m} on the arc.
    MrlCheck(MrlArgs),
    /// Histogram and discrepancy of zero angles for g_{k,1}.
    Dist(DistArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// E2, E4, E6, ..., Delta, eta24, j, or g (with --k and --m).
    #[arg(long)]
    form: String,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    /// Highest exponent kept.
    #[arg(long)]
    trunc: Option<i64>,
    /// Tabulate `theta,value,err` on the arc instead (E2, E4, E6, Delta).
    #[arg(long)]
    arc: bool,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    grid_step: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MillerArgs {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    trunc: Option<i64>,
    /// Include the gap form g_{k,0}.
    #[arg(long)]
    gap: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct FormArgs {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    m: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    m: i64,
    /// Isolating intervals are refined to width 1728 / 2^bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct LedgerArgs {
    /// Only entries of this group.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MrlArgs {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    m: i64,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    grid_step: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Comma-separated weights; each form is g_{k,1}.
    #[arg(long, value_delimiter = ',', required = true)]
    k_list: Vec<i64>,
    #[arg(long, default_value_t = 10)]
    bins: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

/// Parse `argv` (program name first), run, and return the exit status:
/// 0 on success, 1 when a requested check fails, 2 on a usage error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit streams; `--out` still writes to its file.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = Vec::new();
    let (status, path) = match dispatch(cli.command, &mut buf) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match path {
        Some(p) => File::create(&p).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(&buf)?;
            w.flush()
        }),
        None => out.write_all(&buf).and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if let Status::Failed(msg) = status {
        let _ = writeln!(err, "{msg}");
        return 1;
    }
    0
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedWeight(_) | Error::BadIndex { .. } | Error::InvalidForm(_) | Error::OutsideRegion(_) => 2,
        _ => 1,
    }
}

enum Status {
    Ok,
    Failed(String),
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::DomainError(format!("output: {e}"))
}

fn json_line<T: Serialize>(w: &mut Vec<u8>, v: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, v).map_err(io_err)?;
    w.push(b'\n');
    Ok(())
}

fn unsupported(cmd: &str, f: Format) -> Error {
    Error::InvalidForm(format!("{cmd} has no {f:?} output").to_lowercase())
}

fn dispatch(cmd: Command, w: &mut Vec<u8>) -> Result<(Status, Option<PathBuf>)> {
    match cmd {
        Command::Expand(a) => expand(&a, w).map(|s| (s, a.output.out)),
        Command::Miller(a) => miller(&a, w).map(|s| (s, a.output.out)),
        Command::Faber(a) => faber(&a, w).map(|s| (s, a.output.out)),
        Command::Roots(a) => roots(&a, w).map(|s| (s, a.output.out)),
        Command::ArcZeros(a) => arc_zeros(&a, w).map(|s| (s, a.output.out)),
        Command::VerifyBounds(a) => verify_bounds(&a, w).map(|s| (s, a.output.out)),
        Command::VerifyThm2(a) => verify_thm2(&a, w).map(|s| (s, a.output.out)),
        Command::MrlCheck(a) => mrl_check(&a, w).map(|s| (s, a.output.out)),
        Command::Dist(a) => dist(&a, w).map(|s| (s, a.output.out)),
    }
}

fn form_id(k: Option<i64>, m: Option<i64>) -> Result<FormId> {
    match (k, m) {
        (Some(k), Some(m)) => FormId::new(k, m),
        _ => Err(Error::InvalidForm("g needs --k and --m".into())),
    }
}

fn named_series(a: &ExpandArgs) -> Result<QSeries> {
    let name = a.form.as_str();
    let trunc = |need: i64| a.trunc.unwrap_or(need + TRUNC_MARGIN);
    if let Some(k) = name.strip_prefix('E').and_then(|s| s.parse::<i64>().ok()) {
        return eisenstein(k, trunc(0));
    }
    match name {
        "Delta" | "delta" => Ok(delta(trunc(1))),
        "eta24" => Ok(crate::qseries::eta_product(24, trunc(1))),
        "j" => Ok(jfunction(trunc(0))),
        "g" => {
            let id = form_id(a.k, a.m)?;
            Ok(miller_form(id, trunc(id.ell))?.series)
        }
        _ => Err(Error::InvalidForm(format!("unknown form {name:?}"))),
    }
}

fn expand(a: &ExpandArgs, w: &mut Vec<u8>) -> Result<Status> {
    if a.arc {
        let f = match a.form.as_str() {
            "E2" => ArcFunction::E2,
            "E4" => ArcFunction::E4,
            "E6" => ArcFunction::E6,
            "Delta" | "delta" => ArcFunction::Delta,
            other => return Err(Error::InvalidForm(format!("no arc table for {other:?}"))),
        };
        if !(a.grid_step > 0.0) {
            return Err(Error::InvalidForm("--grid-step must be positive".into()));
        }
        let rows = arc_table(f, &arc_grid(a.grid_step))?;
        match a.format {
            Format::Csv | Format::Text => write_csv(&mut *w, &rows)?,
            Format::Json => rows.iter().try_for_each(|r| json_line(w, r))?,
        }
        return Ok(Status::Ok);
    }
    let s = named_series(a)?;
    match a.format {
        Format::Text => writeln!(w, "{s}").map_err(io_err)?,
        Format::Json => json_line(w, &s)?,
        Format::Csv => {
            writeln!(w, "n,coeff").map_err(io_err)?;
            for (i, c) in s.coeffs().iter().enumerate() {
                writeln!(w, "{},{}", s.lead() + i as i64, c).map_err(io_err)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn miller(a: &MillerArgs, w: &mut Vec<u8>) -> Result<Status> {
    let (ell, _) = crate::formid::split_weight(a.k)?;
    let basis = miller_basis(a.k, a.trunc.unwrap_or(ell + TRUNC_MARGIN), a.gap)?;
    for f in &basis {
        match a.format {
            Format::Json => json_line(
                w,
                &json!({ "k": f.id.k, "m": f.id.m, "series": f.series, "faber": f.faber }),
            )?,
            Format::Text => writeln!(w, "g_{{{},{}}} = {}", f.id.k, f.id.m, f.series).map_err(io_err)?,
            Format::Csv => return Err(unsupported("miller", a.format)),
        }
    }
    Ok(Status::Ok)
}

fn faber(a: &FormArgs, w: &mut Vec<u8>) -> Result<Status> {
    let id = FormId::new(a.k, a.m)?;
    let f = faber_polynomial(id)?;
    match a.format {
        Format::Json => json_line(w, &json!({ "k": id.k, "m": id.m, "coeffs": f, "pretty": f.to_pretty("t") }))?,
        Format::Text => writeln!(w, "{}", f.to_pretty("t")).map_err(io_err)?,
        Format::Csv => {
            writeln!(w, "power,coeff").map_err(io_err)?;
            for (i, c) in f.coeffs().iter().enumerate() {
                writeln!(w, "{i},{c}").map_err(io_err)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn roots(a: &RootsArgs, w: &mut Vec<u8>) -> Result<Status> {
    let id = FormId::new(a.k, a.m)?;
    let f = faber_polynomial(id)?;
    let r = faber_roots(&f, a.precision_bits, None);
    match a.format {
        Format::Json => json_line(w, &json!({ "k": id.k, "m": id.m, "degree": f.degree(), "roots": r }))?,
        Format::Text => {
            for iv in &r.inside {
                writeln!(w, "{:.6}", iv.midpoint()).map_err(io_err)?;
            }
        }
        Format::Csv => {
            writeln!(w, "lo,hi,approx").map_err(io_err)?;
            for iv in &r.inside {
                writeln!(w, "{},{},{:.9}", iv.lo, iv.hi, iv.midpoint()).map_err(io_err)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn arc_zeros(a: &RootsArgs, w: &mut Vec<u8>) -> Result<Status> {
    let id = FormId::new(a.k, a.m)?;
    let opts = ZeroOptions { precision_bits: a.precision_bits, ..ZeroOptions::default() };
    let r = zero_report_with(id, &opts)?;
    match a.format {
        Format::Json => json_line(w, &r)?,
        Format::Text => {
            writeln!(w, "{id}: {} nontrivial zeros, valence {}", r.nontrivial, if r.valence_ok { "ok" } else { "MISMATCH" })
                .map_err(io_err)?;
            for iv in &r.arc_angles {
                writeln!(w, "theta in [{:.9}, {:.9}]", iv.lo, iv.hi).map_err(io_err)?;
            }
        }
        Format::Csv => {
            writeln!(w, "theta_lo,theta_hi").map_err(io_err)?;
            for iv in &r.arc_angles {
                writeln!(w, "{},{}", iv.lo, iv.hi).map_err(io_err)?;
            }
        }
    }
    Ok(if r.valence_ok { Status::Ok } else { Status::Failed(format!("{id}: valence formula does not reconcile")) })
}

#[derive(Serialize)]
struct LedgerLine<'a> {
    #[serde(flatten)]
    entry: &'a BoundLedgerEntry,
    binding: bool,
}

fn verify_bounds(a: &LedgerArgs, w: &mut Vec<u8>) -> Result<Status> {
    let suite = full_suite();
    let keep = |e: &&BoundLedgerEntry| a.group.as_deref().map_or(true, |g| e.group == g);
    let entries: Vec<&BoundLedgerEntry> = suite.entries.iter().filter(keep).collect();
    if entries.is_empty() {
        return Err(Error::InvalidForm(format!("no ledger entries in group {:?}", a.group.as_deref().unwrap_or(""))));
    }
    let diagnostics: Vec<&BoundLedgerEntry> = suite.diagnostics.iter().filter(keep).collect();
    let lines = entries.iter().map(|e| (e, true)).chain(diagnostics.iter().map(|e| (e, false)));
    match a.format {
        Format::Json => {
            for (e, binding) in lines {
                json_line(w, &LedgerLine { entry: e, binding })?;
            }
        }
        Format::Text | Format::Csv => {
            if a.format == Format::Csv {
                writeln!(w, "group,name,claimed,computed,err,satisfied,binding").map_err(io_err)?;
            }
            for (e, binding) in lines {
                if a.format == Format::Csv {
                    writeln!(w, "{},\"{}\",{},{},{},{},{}", e.group, e.name, e.claimed, e.computed, e.err, e.satisfied, binding)
                        .map_err(io_err)?;
                } else {
                    let tag = match (binding, e.satisfied) {
                        (true, true) => "ok  ",
                        (true, false) => "FAIL",
                        (false, _) => "note",
                    };
                    writeln!(w, "{tag} [{}] {}: {} +/- {:.1e}", e.group, e.name, e.computed, e.err).map_err(io_err)?;
                }
            }
        }
    }
    let failed: Vec<String> = entries.iter().filter(|e| !e.satisfied).map(|e| format!("failed: {}", e.name)).collect();
    Ok(if failed.is_empty() { Status::Ok } else { Status::Failed(failed.join("\n")) })
}

fn verify_thm2(a: &TableArgs, w: &mut Vec<u8>) -> Result<Status> {
    let table = theorem_m1_table()?;
    match a.format {
        Format::Json => table.iter().try_for_each(|e| json_line(w, e))?,
        Format::Csv | Format::Text => {
            let csv = a.format == Format::Csv;
            if csv {
                writeln!(w, "k,ell,kprime,m,degree,roots_in,real_outside,complex_pairs,squarefree_defect,pass").map_err(io_err)?;
            } else {
                writeln!(w, "{:>5} {:>4} {:>3} {:>6} {:>8} {:>8} {:>7} {:>6}  result", "k", "ell", "k'", "degree", "in", "outside", "complex", "defect")
                    .map_err(io_err)?;
            }
            for e in &table {
                let id = e.id;
                if csv {
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{},{},{}",
                        id.k, id.ell, id.kprime, id.m, e.degree, e.roots_in, e.real_outside, e.complex_pairs, e.squarefree_defect, e.pass
                    )
                    .map_err(io_err)?;
                } else {
                    writeln!(
                        w,
                        "{:>5} {:>4} {:>3} {:>6} {:>8} {:>8} {:>7} {:>6}  {}",
                        id.k,
                        id.ell,
                        id.kprime,
                        e.degree,
                        e.roots_in,
                        e.real_outside,
                        e.complex_pairs,
                        e.squarefree_defect,
                        if e.pass { "pass" } else { "FAIL" }
                    )
                    .map_err(io_err)?;
                }
            }
        }
    }
    let bad: Vec<String> = table.iter().filter(|e| !e.pass).map(|e| format!("failed: {}", e.id)).collect();
    Ok(if bad.is_empty() { Status::Ok } else { Status::Failed(bad.join("\n")) })
}

fn mrl_check(a: &MrlArgs, w: &mut Vec<u8>) -> Result<Status> {
    let id = FormId::new(a.k, a.m)?;
    if !(a.grid_step > 0.0) {
        return Err(Error::InvalidForm("--grid-step must be positive".into()));
    }
    let r = proposition_mrl_check(id, a.grid_step)?;
    match a.format {
        Format::Json => json_line(w, &r)?,
        Format::Text => writeln!(
            w,
            "{id}: max {:.6} + err {:.1e} at theta = {:.6} over {} points; hypothesis {}; {}",
            r.max,
            r.err,
            r.argmax,
            r.points,
            r.hypothesis,
            if r.satisfied { "below 2" } else { "NOT below 2" }
        )
        .map_err(io_err)?,
        Format::Csv => {
            writeln!(w, "k,m,hypothesis,grid_step,points,max,err,argmax,satisfied").map_err(io_err)?;
            writeln!(w, "{},{},{},{},{},{},{},{},{}", id.k, id.m, r.hypothesis, r.grid_step, r.points, r.max, r.err, r.argmax, r.satisfied)
                .map_err(io_err)?;
        }
    }
    Ok(if r.satisfied { Status::Ok } else { Status::Failed(format!("{id}: grid maximum plus error is not below 2")) })
}

fn dist(a: &DistArgs, w: &mut Vec<u8>) -> Result<Status> {
    if a.bins == 0 {
        return Err(Error::InvalidForm("--bins must be positive".into()));
    }
    let ids = a.k_list.iter().map(|&k| FormId::new(k, 1)).collect::<Result<Vec<_>>>()?;
    let r = distribution_stats(&ids, a.bins)?;
    match a.format {
        Format::Json => json_line(w, &r)?,
        Format::Csv | Format::Text => {
            writeln!(w, "k,bin,count,discrepancy,max_bin_deviation").map_err(io_err)?;
            for f in &r.forms {
                for (b, c) in f.histogram.iter().enumerate() {
                    writeln!(w, "{},{},{},{},{}", f.id.k, b, c, f.discrepancy, f.max_bin_deviation).map_err(io_err)?;
                }
            }
        }
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut argv = vec!["modzeros"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn expand_e4() {
        let (c, out, _) = call(&["expand", "--form", "E4", "--trunc", "2"]);
        assert_eq!(c, 0);
        assert_eq!(out, "1 + 240*q + 2160*q^2 + O(q^3)\n");
        let (_, out, _) = call(&["expand", "--form", "E4", "--trunc", "2", "--format", "csv"]);
        assert_eq!(out, "n,coeff\n0,1\n1,240\n2,2160\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["expand"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["faber", "--k", "13", "--m", "1"]).0, 2);
        assert_eq!(call(&["faber", "--k", "48", "--m", "9"]).0, 2);
        assert_eq!(call(&["expand", "--form", "F7"]).0, 2);
        let (c, out, _) = call(&["faber", "--help"]);
        assert_eq!(c, 0);
        assert!(out.contains("--k"));
    }

    #[test]
    fn faber_json() {
        let (c, out, _) = call(&["faber", "--k", "48", "--m", "1"]);
        assert_eq!(c, 0);
        assert_eq!(
            out,
            "{\"coeffs\":[\"-24903328\",\"931860\",\"-2136\",\"1\"],\"k\":48,\"m\":1,\"pretty\":\"t^3 - 2136t^2 + 931860t - 24903328\"}\n"
        );
    }
}
