use serde::Serialize;

use ternary_theta::arith::{hurwitz_normalized, hurwitz_rep_of_square, HurwitzForm};
use ternary_theta::classify::{
    excluded, genus_mate_compare, scan_excluded, CatalogId, ClauseReport, GenusRelation, LemmaContext,
};
use ternary_theta::lattice::{RestrictedPreset, TernaryForm};
use ternary_theta::registry::{self, Report};
use ternary_theta::Error;

use crate::output::{csv, json, render};
use crate::{Failure, Format, GlobalOpts};

/// Rendered output plus the verdict that decides the exit code.
pub type Outcome = (String, Result<(), Failure>);

fn verdict(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse::<T>().map_err(Failure::from)
}

/// A catalogued id or a form literal.
fn parse_form(s: &str) -> Result<TernaryForm, Failure> {
    match s.parse::<CatalogId>() {
        Ok(id) => Ok(id.form()),
        Err(_) => {
            let form = parse::<TernaryForm>(s)?;
            if form.is_positive_definite() {
                Ok(form)
            } else {
                Err(Error::NotPositiveDefinite(form.to_string()).into())
            }
        }
    }
}

fn to_usize(n: u64) -> Result<usize, Failure> {
    usize::try_from(n).map_err(|_| Failure::Usage(format!("{n} is too large")))
}

#[derive(Serialize)]
struct CoefficientRow {
    n: usize,
    coefficient: i64,
}

#[derive(Serialize)]
struct SeriesOutput<'a> {
    source: String,
    trunc: usize,
    coefficients: &'a [i64],
}

fn series_output(
    opts: &GlobalOpts,
    source: String,
    coeffs: &[i64],
    keep: impl Fn(i64) -> bool,
) -> Result<String, Failure> {
    let rows: Vec<CoefficientRow> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| keep(c))
        .map(|(n, &coefficient)| CoefficientRow { n, coefficient })
        .collect();
    match opts.format {
        Format::Json => json(&SeriesOutput { source, trunc: coeffs.len() - 1, coefficients: coeffs }),
        Format::Csv if rows.is_empty() => Ok("n,coefficient\n".to_string()),
        format => render(format, &rows, |r| format!("{} {}", r.n, r.coefficient)),
    }
}

pub fn theta(opts: &GlobalOpts, form: &str, n: u64) -> Result<Outcome, Failure> {
    let form = parse_form(form)?;
    let series = form.theta_series(to_usize(n)?)?;
    let text = series_output(opts, form.to_string(), series.coeffs(), |_| true)?;
    Ok((text, Ok(())))
}

pub fn restricted(opts: &GlobalOpts, preset: &str, n: u64, nonzero: bool) -> Result<Outcome, Failure> {
    let preset = parse::<RestrictedPreset>(preset)?;
    let series = preset.theta(to_usize(n)?)?;
    let text = series_output(opts, format!("{preset:?}"), series.coeffs(), |c| !nonzero || c != 0)?;
    Ok((text, Ok(())))
}

#[derive(Serialize)]
struct MismatchJson {
    degree: usize,
    lhs: i64,
    rhs: i64,
}

#[derive(Serialize)]
struct VerifyJson {
    identity: String,
    trunc: usize,
    status: String,
    first_mismatch: Option<MismatchJson>,
    ms: u128,
}

#[derive(Serialize)]
struct VerifyCsv<'a> {
    identity: &'a str,
    trunc: usize,
    status: &'a str,
    mismatch_degree: Option<usize>,
    mismatch_lhs: Option<i64>,
    mismatch_rhs: Option<i64>,
    ms: u128,
}

impl<'a> From<&'a VerifyJson> for VerifyCsv<'a> {
    fn from(r: &'a VerifyJson) -> Self {
        VerifyCsv {
            identity: &r.identity,
            trunc: r.trunc,
            status: &r.status,
            mismatch_degree: r.first_mismatch.as_ref().map(|m| m.degree),
            mismatch_lhs: r.first_mismatch.as_ref().map(|m| m.lhs),
            mismatch_rhs: r.first_mismatch.as_ref().map(|m| m.rhs),
            ms: r.ms,
        }
    }
}

fn verify_row(r: &Report, timing: bool) -> VerifyJson {
    VerifyJson {
        identity: r.identity.clone(),
        trunc: r.trunc,
        status: r.status.to_string(),
        first_mismatch: r.first_mismatch.map(|m| MismatchJson { degree: m.degree, lhs: m.lhs, rhs: m.rhs }),
        ms: if timing { r.elapsed.as_millis() } else { 0 },
    }
}

pub fn verify(opts: &GlobalOpts, all: bool, ids: &[String], n: Option<u64>) -> Result<Outcome, Failure> {
    let cases: Vec<_> = if all {
        registry::catalog().iter().collect()
    } else {
        ids.iter().map(|id| registry::lookup(id)).collect::<Result<_, _>>()?
    };
    let n = n.map(to_usize).transpose()?;
    let reports: Vec<Report> = {
        use rayon::prelude::*;
        cases.par_iter().map(|c| c.verify(n.unwrap_or(c.default_trunc))).collect::<Result<_, _>>()?
    };
    let rows: Vec<VerifyJson> = reports.iter().map(|r| verify_row(r, !opts.no_timing)).collect();
    let text = match opts.format {
        Format::Csv => csv(&rows.iter().map(VerifyCsv::from).collect::<Vec<_>>())?,
        format => render(format, &rows, |r| {
            let detail = match &r.first_mismatch {
                None => String::new(),
                Some(m) => format!(" first mismatch at degree {}: lhs {} rhs {}", m.degree, m.lhs, m.rhs),
            };
            format!("{} {} N={} {}ms{}", r.status, r.identity, r.trunc, r.ms, detail)
        })?,
    };
    let ok = reports.iter().all(Report::passed);
    Ok((text, verdict(ok)))
}

#[derive(Serialize)]
struct ListRow {
    identity: &'static str,
    default_trunc: usize,
    formula: &'static str,
}

pub fn list(opts: &GlobalOpts) -> Result<Outcome, Failure> {
    let rows: Vec<ListRow> = registry::catalog()
        .iter()
        .map(|c| ListRow { identity: c.name, default_trunc: c.default_trunc, formula: c.formula })
        .collect();
    let text =
        render(opts.format, &rows, |r| format!("{:<18} {:>5}  {}", r.identity, r.default_trunc, r.formula))?;
    Ok((text, Ok(())))
}

#[derive(Serialize)]
struct HurwitzRow {
    form: String,
    n: u64,
    predicted: u64,
    normalized: u64,
    lattice: Option<u64>,
}

pub fn hurwitz(opts: &GlobalOpts, form: &str, n: u64, check: bool) -> Result<Outcome, Failure> {
    let id = parse::<HurwitzForm>(form)?;
    let predicted = hurwitz_rep_of_square(id, n)?;
    let normalized = hurwitz_normalized(id, n)?;
    let square = n
        .checked_mul(n)
        .and_then(|s| i64::try_from(s).ok())
        .ok_or_else(|| Failure::Usage(format!("{n}^2 is out of range")))?;
    let lattice = if check {
        let mut total = 0;
        for f in id.forms() {
            total += f.rep_count(square)?;
        }
        Some(total)
    } else {
        None
    };
    let row = HurwitzRow { form: id.to_string(), n, predicted, normalized, lattice };
    let text = match opts.format {
        Format::Json => json(&row)?,
        format => render(format, std::slice::from_ref(&row), |r| match r.lattice {
            Some(l) => format!("{} (lattice {l})", r.predicted),
            None => r.predicted.to_string(),
        })?,
    };
    let ok = lattice.is_none_or(|l| l == predicted);
    Ok((text, verdict(ok)))
}

#[derive(Serialize)]
struct ClassifyRow {
    form: String,
    n: u64,
    excluded: bool,
    reason: Option<String>,
}

pub fn classify(opts: &GlobalOpts, form: &str, n: u64) -> Result<Outcome, Failure> {
    let id = parse::<CatalogId>(form)?;
    let v = excluded(id, n)?;
    let text = match opts.format {
        Format::Json => json(&v)?,
        format => {
            let row = ClassifyRow {
                form: id.to_string(),
                n,
                excluded: v.excluded(),
                reason: v.reason.as_ref().map(ToString::to_string),
            };
            render(format, std::slice::from_ref(&row), |r| match &r.reason {
                Some(reason) => format!("{} {}: excluded, reason {reason}", r.form, r.n),
                None => format!("{} {}: represented", r.form, r.n),
            })?
        }
    };
    Ok((text, Ok(())))
}

#[derive(Serialize)]
struct ScanRow {
    form: String,
    n_max: u64,
    mismatches: Vec<u64>,
}

#[derive(Serialize)]
struct ScanCsv<'a> {
    form: &'a str,
    n_max: u64,
    mismatch_count: usize,
    mismatches: String,
}

pub fn scan(opts: &GlobalOpts, form: &str, n_max: u64) -> Result<Outcome, Failure> {
    let id = parse::<CatalogId>(form)?;
    let row = ScanRow { form: id.to_string(), n_max, mismatches: scan_excluded(id, n_max)? };
    let ok = row.mismatches.is_empty();
    let text = match opts.format {
        Format::Json => json(&row)?,
        Format::Csv => csv(&[ScanCsv {
            form: &row.form,
            n_max: row.n_max,
            mismatch_count: row.mismatches.len(),
            mismatches: row.mismatches.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
        }])?,
        format => render(format, std::slice::from_ref(&row), |r| {
            if r.mismatches.is_empty() {
                format!("{} 1..={}: no mismatches", r.form, r.n_max)
            } else {
                let list: Vec<String> = r.mismatches.iter().map(u64::to_string).collect();
                format!("{} 1..={}: {} mismatches: {}", r.form, r.n_max, list.len(), list.join(" "))
            }
        })?,
    };
    Ok((text, verdict(ok)))
}

#[derive(Serialize)]
struct GenusRow {
    n: u64,
    r_1_3_36: u64,
    r_3_4_9: u64,
    relation: String,
    predicted_difference: i64,
    holds: bool,
}

pub fn genus(opts: &GlobalOpts, n: u64) -> Result<Outcome, Failure> {
    let c = genus_mate_compare(n)?;
    let relation = match c.relation {
        GenusRelation::NonSquare => "non-square".to_string(),
        GenusRelation::Square { root } => format!("square of {root}"),
        GenusRelation::NineTimesSquare { root } => format!("nine times the square of {root}"),
    };
    let row = GenusRow {
        n,
        r_1_3_36: c.r_1_3_36,
        r_3_4_9: c.r_3_4_9,
        relation,
        predicted_difference: c.predicted_difference,
        holds: c.holds(),
    };
    let text = match opts.format {
        Format::Json => json(&row)?,
        format => render(format, std::slice::from_ref(&row), |r| {
            format!(
                "n={} ({}): r(1,3,36)={} r(3,4,9)={} predicted difference {} -> {}",
                r.n,
                r.relation,
                r.r_1_3_36,
                r.r_3_4_9,
                r.predicted_difference,
                if r.holds { "holds" } else { "FAILS" }
            )
        })?,
    };
    Ok((text, verdict(c.holds())))
}

#[derive(Serialize)]
struct ClauseRow {
    clause: String,
    checked: usize,
    status: &'static str,
    first_failure: Option<u64>,
}

pub fn lemma(opts: &GlobalOpts, n_max: u64) -> Result<Outcome, Failure> {
    let ctx = LemmaContext::new(to_usize(n_max)?)?;
    let reports = ctx.check_all()?;
    let rows: Vec<ClauseRow> = reports
        .iter()
        .map(|r: &ClauseReport| ClauseRow {
            clause: r.clause.to_string(),
            checked: r.checked,
            status: if r.passed() { "PASS" } else { "FAIL" },
            first_failure: r.first_failure,
        })
        .collect();
    let text = render(opts.format, &rows, |r| match r.first_failure {
        Some(at) => format!("{} {} ({} arguments) first failure at {at}", r.status, r.clause, r.checked),
        None => format!("{} {} ({} arguments)", r.status, r.clause, r.checked),
    })?;
    Ok((text, verdict(reports.iter().all(ClauseReport::passed))))
}
