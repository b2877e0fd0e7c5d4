//! Command dispatch.

use serde_json::{json, Map, Value};

use semicurve_core::curve::{CurveModel, CurveSpec};
use semicurve_core::lattice::{ExponentVec, LatticeBox};
use semicurve_core::motivic::{self, Normalization, MOTIVIC_CHECKS};
use semicurve_core::provider::CProvider;
use semicurve_core::report::{Check, Status};
use semicurve_core::semigroup::ValueSemigroup;
use semicurve_core::series::{self, comparison_box, Pivot, SERIES_CHECKS};
use semicurve_core::xi;

use crate::output::{self, poly};
use crate::CliError;

pub const XI_CHECK: &str = "xi-recovery";

pub const SERIES_NAMES: &[&str] = &[
    "H", "Hg", "L", "Lg", "P", "Pg", "PgBar", "Pprime", "Ptilde", "hatLg", "hatPg",
];

pub enum Loaded {
    Model(CurveModel),
    Semigroup(ValueSemigroup),
}

impl Loaded {
    pub fn build(spec: &CurveSpec, truncation: Option<usize>) -> Result<Self, CliError> {
        match spec {
            CurveSpec::ExplicitSemigroup {
                r,
                conductor,
                points,
            } => {
                let pts: Vec<ExponentVec> = points
                    .iter()
                    .map(|p| ExponentVec::from(p.as_slice()))
                    .collect();
                Ok(Loaded::Semigroup(ValueSemigroup::validate(
                    *r,
                    ExponentVec::from(conductor.as_slice()),
                    &pts,
                )?))
            }
            CurveSpec::Parametrization { .. } => {
                Ok(Loaded::Model(CurveModel::build(spec, truncation)?))
            }
        }
    }

    pub fn provider(&self) -> &dyn CProvider {
        match self {
            Loaded::Model(m) => m,
            Loaded::Semigroup(s) => s,
        }
    }
}

/// A command's result in both output formats.
#[derive(Default)]
pub struct Report {
    pub json: Map<String, Value>,
    pub lines: Vec<String>,
    pub failed: bool,
}

impl Report {
    fn put(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }

    fn line(&mut self, key: &str, text: impl std::fmt::Display) {
        self.lines.push(format!("{key} = {text}"));
    }
}

/// Parses `hi` or `lo:hi`, each a comma-separated vector.
pub fn parse_box(text: &str, r: usize, default_lo: &ExponentVec) -> Result<LatticeBox, CliError> {
    let vec = |s: &str| -> Result<ExponentVec, CliError> {
        let coords: Result<Vec<i64>, _> = s.split(',').map(|c| c.trim().parse::<i64>()).collect();
        let coords =
            coords.map_err(|_| CliError::Usage(format!("cannot parse box corner \"{s}\"")))?;
        if coords.len() != r {
            return Err(CliError::Usage(format!(
                "box corner \"{s}\" needs {r} coordinates"
            )));
        }
        Ok(ExponentVec::new(coords))
    };
    match text.split_once(':') {
        Some((lo, hi)) => Ok(LatticeBox::new(vec(lo)?, vec(hi)?)),
        None => Ok(LatticeBox::new(default_lo.clone(), vec(text)?)),
    }
}

pub fn parse_keep(text: &str, r: usize) -> Result<Vec<usize>, CliError> {
    let mut keep = Vec::new();
    for part in text.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse branch index \"{part}\"")))?;
        if k == 0 || k > r {
            return Err(CliError::Usage(format!("branch {k} outside 1..={r}")));
        }
        if keep.contains(&(k - 1)) {
            return Err(CliError::Usage(format!("branch {k} listed twice")));
        }
        keep.push(k - 1);
    }
    keep.sort_unstable();
    Ok(keep)
}

fn describe(p: &dyn CProvider, loaded: &Loaded, report: &mut Report) {
    report.put("provider", Value::from(p.label()));
    report.put("branches", Value::from(p.branches()));
    if let Loaded::Model(m) = loaded {
        report.put("truncation", Value::from(m.order()));
    }
}

pub fn analyze(loaded: &Loaded) -> Result<Report, CliError> {
    let p = loaded.provider();
    let s = p.semigroup();
    let mut report = Report::default();
    describe(p, loaded, &mut report);
    report.put("semigroup", output::semigroup(s));
    report.line("conductor", s.conductor());
    report.line("semigroup", output::points_text(s));

    let inner = LatticeBox::from_origin(s.conductor().clone());
    let mut maximals = Vec::new();
    for v in inner.points() {
        let prof = s.classify(&v);
        if prof.is_maximal {
            maximals.push(json!({"v": output::exps(&v), "absolute": prof.is_absolute, "relative": prof.is_relative}));
            report.line(
                "maximal",
                format!(
                    "{v} absolute={} relative={}",
                    prof.is_absolute, prof.is_relative
                ),
            );
        }
    }
    report.put("maximals", Value::Array(maximals));

    match s.xi_oracle() {
        Ok(m) => {
            report.line("xi", output::xi_text(&m));
            report.put("xi", output::xi(&m));
        }
        Err(_) => report.put("xi", Value::Null),
    }

    let pp = series::p_prime(p)?;
    let pl = series::poincare_p(p, Pivot::All)?;
    report.line("Pprime", &pp);
    report.line("P", &pl);
    report.put("Pprime", poly(&pp));
    report.put("P", poly(&pl));

    let sym = s.symmetry_check()?;
    report.line("gorenstein", sym.gorenstein);
    report.put("gorenstein", Value::from(sym.gorenstein));
    if let Some(w) = &sym.witness {
        report.line("symmetry_witness", w);
    }
    report.put(
        "symmetry_witness",
        sym.witness
            .as_ref()
            .map(output::exps)
            .unwrap_or(Value::Null),
    );
    Ok(report)
}

pub fn series_cmd(
    loaded: &Loaded,
    which: &str,
    bx: Option<&str>,
    norm: Normalization,
) -> Result<Report, CliError> {
    let p = loaded.provider();
    let r = p.branches();
    let mut report = Report::default();
    describe(p, loaded, &mut report);
    report.put("which", Value::from(which));
    let minus = ExponentVec::splat(r, -1);
    let zero = ExponentVec::zeros(r);
    let default_hi = comparison_box(p).hi;
    let boxed = |lo: &ExponentVec| -> Result<LatticeBox, CliError> {
        match bx {
            Some(text) => parse_box(text, r, lo),
            None => Ok(LatticeBox::new(lo.clone(), default_hi.clone())),
        }
    };
    let reach = || -> Result<ExponentVec, CliError> {
        let b = boxed(&zero)?;
        if b.lo != zero {
            return Err(CliError::Usage(format!(
                "{which} is computed on boxes starting at 0"
            )));
        }
        Ok(b.hi)
    };
    let uses_norm = matches!(which, "Lg" | "Pg" | "Hg" | "PgBar");
    if uses_norm {
        report.put("normalization", Value::from(norm.name()));
    }
    let (json, text) = match which {
        "P" => {
            let x = series::poincare_p(p, Pivot::All)?;
            (poly(&x), x.to_string())
        }
        "Pprime" => {
            let x = series::p_prime(p)?;
            (poly(&x), x.to_string())
        }
        "Ptilde" => {
            let x = series::p_tilde(p)?;
            (poly(&x), x.to_string())
        }
        "H" => {
            let x = series::series_h(p, &boxed(&zero)?)?;
            (poly(&x), x.to_string())
        }
        "L" => {
            let x = series::series_l(p, &boxed(&minus)?)?;
            (poly(&x), x.to_string())
        }
        "Lg" => {
            let x = motivic::series_lg(p, &boxed(&minus)?, norm)?.poly;
            (poly(&x), x.to_string())
        }
        "hatLg" => {
            let x = motivic::series_hat_lg(p, &boxed(&minus)?)?;
            (poly(&x), x.to_string())
        }
        "Pg" => {
            let x = motivic::pg_of(p, &reach()?, norm)?.poly;
            (poly(&x), x.to_string())
        }
        "hatPg" => {
            let x = motivic::series_hat(p, &reach()?)?.1;
            (poly(&x), x.to_string())
        }
        "Hg" => {
            let x = motivic::series_hg(p, &boxed(&zero)?, norm)?.poly;
            (poly(&x), x.to_string())
        }
        "PgBar" => {
            let pg = motivic::pg_of(p, &reach()?, norm)?;
            let bar = motivic::pg_bar(&pg, p.conductor())?;
            report.put("terminates", Value::from(bar.terminates));
            report.line("terminates", bar.terminates);
            if let Some(t) = &bar.tail {
                report.put("tail", output::exps(t));
            }
            (poly(&bar.series.poly), bar.series.poly.to_string())
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown series \"{other}\"; expected one of {}",
                SERIES_NAMES.join(", ")
            )))
        }
    };
    report.put("series", json);
    report.line(which, text);
    Ok(report)
}

pub fn project(loaded: &Loaded, keep: &str) -> Result<Report, CliError> {
    let p = loaded.provider();
    let keep = parse_keep(keep, p.branches())?;
    let sub = p.semigroup().project(&keep)?;
    let mut report = Report::default();
    describe(p, loaded, &mut report);
    let one_based: Vec<usize> = keep.iter().map(|k| k + 1).collect();
    report.put("keep", Value::from(one_based.clone()));
    report.put("semigroup", output::semigroup(&sub));
    report.line("keep", format!("{one_based:?}"));
    report.line("conductor", sub.conductor());
    report.line("semigroup", output::points_text(&sub));
    let pp = series::p_prime(&sub)?;
    let pl = series::poincare_p(&sub, Pivot::All)?;
    report.line("Pprime", &pp);
    report.line("P", &pl);
    report.put("Pprime", poly(&pp));
    report.put("P", poly(&pl));
    Ok(report)
}

pub fn all_checks() -> Vec<&'static str> {
    let mut names: Vec<&str> = SERIES_CHECKS
        .iter()
        .chain(MOTIVIC_CHECKS)
        .copied()
        .collect();
    names.push(XI_CHECK);
    names.sort_unstable();
    names
}

fn run_check(p: &dyn CProvider, name: &str) -> Result<Check, CliError> {
    if name == XI_CHECK {
        return Ok(xi::check_xi(p));
    }
    if SERIES_CHECKS.contains(&name) {
        return Ok(series::check_identity(p, name)?);
    }
    if MOTIVIC_CHECKS.contains(&name) {
        return Ok(motivic::check_motivic(p, name)?);
    }
    Err(CliError::Usage(format!(
        "unknown check \"{name}\"; expected one of {}",
        all_checks().join(", ")
    )))
}

pub fn verify(loaded: &Loaded, checks: Option<&str>) -> Result<Report, CliError> {
    let p = loaded.provider();
    let mut names: Vec<String> = match checks {
        None => all_checks().into_iter().map(String::from).collect(),
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
    };
    names.sort();
    names.dedup();
    let mut report = Report::default();
    describe(p, loaded, &mut report);
    let mut out = Vec::new();
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    for name in &names {
        let c = run_check(p, name)?;
        *counts.entry(c.status.to_string()).or_default() += 1;
        report.failed |= c.status == Status::Fail;
        report.lines.push(c.to_string());
        out.push(output::check(&c));
    }
    report.put("checks", Value::Array(out));
    report.put("summary", json!(counts));
    Ok(report)
}

pub fn recover_xi(loaded: &Loaded) -> Result<Report, CliError> {
    let p = loaded.provider();
    let rec = xi::recover_xi(p)?;
    let mut report = Report::default();
    describe(p, loaded, &mut report);
    let sets: Vec<Value> = rec
        .multisets
        .iter()
        .zip(&rec.bases)
        .map(|(m, b)| {
            json!({
                "branch": m.branch + 1,
                "factors": m.factors,
                "base": match b {
                    xi::BaseCheck::ProductAgrees => "product-formula-agrees",
                    xi::BaseCheck::DirectOnly => "direct",
                },
            })
        })
        .collect();
    for m in &rec.multisets {
        report.line(
            &format!("factors[{}]", m.branch + 1),
            format!("{:?}", m.factors),
        );
    }
    report.put("multisets", Value::Array(sets));
    report.put(
        "root_multiplicities",
        Value::from(rec.root_multiplicities.clone()),
    );
    report.put(
        "solutions",
        Value::Array(rec.matched.solutions.iter().map(output::xi).collect()),
    );
    report.put("ambiguous", Value::from(rec.matched.is_ambiguous()));
    report.put("oracle", output::xi(&rec.oracle));
    report.put("oracle_match", Value::from(rec.matches_oracle()));
    for m in &rec.matched.solutions {
        report.line("xi", output::xi_text(m));
    }
    report.line("oracle", output::xi_text(&rec.oracle));
    report.line("oracle_match", rec.matches_oracle());
    report.failed = !rec.matches_oracle();
    Ok(report)
}
