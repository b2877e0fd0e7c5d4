//! Generalized Poincaré series with coefficients in `Z[Q, Q⁻¹]`, `Q = 𝕃⁻¹`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{BranchSet, ExponentVec, LatticeBox};
use crate::poly::{Coefficient, MultiPoly, QLaurent, Unit, Window};
use crate::provider::CProvider;
use crate::report::{combine, Check, Witness};
use crate::series::{self, comparison_box, sub_semigroups};

pub type QPoly = MultiPoly<QLaurent>;

/// Which of the two closed forms of the `L_g` coefficient is used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `Q^{ℓ(v)} (1 + Q + … + Q^{c(v)-1})`.
    #[default]
    ChiG,
    /// `Q^{ℓ(v)+1} (1 - Q^{c(v)}) / (1 - Q)`, i.e. `Q` times the above.
    ClosedForm,
}

impl Normalization {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "chi-g" => Some(Normalization::ChiG),
            "closed-form" | "paper-literal" => Some(Normalization::ClosedForm),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Normalization::ChiG => "chi-g",
            Normalization::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MotivicSeries {
    pub poly: QPoly,
    pub normalization: Normalization,
}

fn one_minus_q() -> QLaurent {
    QLaurent::from_terms([(0, BigInt::from(1)), (1, BigInt::from(-1))])
}

/// Coefficient of `L_g` at a point with `ℓ(v) = a` and `c(v) = c`.
pub fn lg_coefficient(a: u64, c: u64, norm: Normalization) -> QLaurent {
    match norm {
        Normalization::ChiG => QLaurent::geometric(a as i64, c),
        Normalization::ClosedForm => {
            let num = QLaurent::q_pow(a as i64 + 1)
                .mul_ref(&QLaurent::constant(1).sub_ref(&QLaurent::q_pow(c as i64)));
            num.exact_div(&one_minus_q())
                .expect("1 - Q divides 1 - Q^c")
        }
    }
}

/// `L_g = Σ Q^{ℓ(v)}(1 + … + Q^{c(v)-1}) t^v` on `bx`.
pub fn series_lg(p: &dyn CProvider, bx: &LatticeBox, norm: Normalization) -> Result<MotivicSeries> {
    bx.check_size()?;
    let r = p.branches();
    let mut out = MultiPoly::zero(r);
    for v in bx.points() {
        let c = p.c(&v)?;
        out.add_term(v.clone(), &lg_coefficient(p.ell(&v)?, c, norm));
    }
    Ok(MotivicSeries {
        poly: out.truncated(Window::from_box(bx, false)),
        normalization: norm,
    })
}

/// `L̂_g = Σ [ℙ^{c(v)-1}] t^v` with `[ℙ^{c-1}] = Q^{1-c}(1 + … + Q^{c-1})`.
pub fn series_hat_lg(p: &dyn CProvider, bx: &LatticeBox) -> Result<QPoly> {
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        let c = p.c(&v)?;
        out.add_term(v, &QLaurent::geometric(1 - c as i64, c));
    }
    Ok(out.truncated(Window::from_box(bx, false)))
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Solves `(t_1⋯t_r - 1)·P = ∏(t_i - 1)·L` for `P` supported in `N^r`.
///
/// `l` must be known on `[-1, B]`; the result is certified on `[0, B]`.
pub fn telescope(l: &QPoly) -> Result<QPoly> {
    let r = l.nvars();
    let w = l
        .window()
        .ok_or_else(|| Error::DegenerateInput("telescoping needs a truncated series".into()))?;
    let minus = ExponentVec::splat(r, -1);
    if !w.lo.le(&minus) {
        return Err(Error::WindowTooSmall(format!(
            "series window starts at {}, need -1",
            w.lo
        )));
    }
    let bx = LatticeBox::from_origin(w.hi.clone());
    let ones = ExponentVec::ones(r);
    let mut out: QPoly = MultiPoly::zero(r);
    // Box order is lexicographic, so v - 1 is always visited before v.
    for v in bx.points() {
        let mut pp = QLaurent::default();
        for j in BranchSet::all(r) {
            let term = l.coeff(&(&v - &ExponentVec::indicator(r, j)));
            pp = pp.add_ref(&term.scale(&BigInt::from(sign(r - j.len()))));
        }
        let prev = &v - &ones;
        let below = if prev.is_nonnegative() {
            out.coeff(&prev)
        } else {
            QLaurent::default()
        };
        out.add_term(v, &below.sub_ref(&pp));
    }
    Ok(out.truncated(Window::from_box(&bx, true)))
}

/// `P_g` from `L_g`.
pub fn series_pg(lg: &MotivicSeries) -> Result<MotivicSeries> {
    Ok(MotivicSeries {
        poly: telescope(&lg.poly)?,
        normalization: lg.normalization,
    })
}

/// `(L̂_g, P̂_g)` with `L̂_g` on `[-1, B]` and `P̂_g` on `[0, B]`.
pub fn series_hat(p: &dyn CProvider, reach: &ExponentVec) -> Result<(QPoly, QPoly)> {
    let r = p.branches();
    let bx = LatticeBox::new(ExponentVec::splat(r, -1), reach.clone());
    let hat_l = series_hat_lg(p, &bx)?;
    let hat_p = telescope(&hat_l)?;
    Ok((hat_l, hat_p))
}

/// `H_g = Σ [O/J(v)] t^v` on `bx ⊆ N^r`.
///
/// Under `ChiG` the coefficient is `1 + Q + … + Q^{ℓ(v)-1}`; under
/// `ClosedForm` it is `Q^{-ℓ(v)}`.
pub fn series_hg(p: &dyn CProvider, bx: &LatticeBox, norm: Normalization) -> Result<MotivicSeries> {
    if !bx.lo.is_nonnegative() {
        return Err(Error::DegenerateInput(format!(
            "box [{}, {}] leaves N^r",
            bx.lo, bx.hi
        )));
    }
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        let l = p.ell(&v)?;
        let c = match norm {
            Normalization::ChiG => QLaurent::geometric(0, l),
            Normalization::ClosedForm => QLaurent::q_pow(-(l as i64)),
        };
        out.add_term(v, &c);
    }
    Ok(MotivicSeries {
        poly: out.truncated(Window::from_box(bx, true)),
        normalization: norm,
    })
}

/// `P_g` of a provider, certified on `[0, reach]`.
pub fn pg_of(p: &dyn CProvider, reach: &ExponentVec, norm: Normalization) -> Result<MotivicSeries> {
    let r = p.branches();
    let bx = LatticeBox::new(ExponentVec::splat(r, -1), reach.clone());
    series_pg(&series_lg(p, &bx, norm)?)
}

/// `P̄_g = ∏(1 - Q t_i)·P_g` with its termination certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct PgBar {
    /// Exact when `terminates`, otherwise the truncated product.
    pub series: MotivicSeries,
    pub terminates: bool,
    /// A nonzero coefficient beyond `δ + 1` when termination fails.
    pub tail: Option<ExponentVec>,
}

pub fn pg_bar(pg: &MotivicSeries, conductor: &ExponentVec) -> Result<PgBar> {
    let r = pg.poly.nvars();
    let need = conductor + &ExponentVec::splat(r, 2);
    let w = pg
        .poly
        .window()
        .ok_or_else(|| Error::DegenerateInput("P_g must be a truncated series".into()))?;
    if !need.le(&w.hi) {
        return Err(Error::WindowTooSmall(format!(
            "P_g known up to {}, termination check needs {}",
            w.hi, need
        )));
    }
    let mut factor: QPoly = MultiPoly::one(r);
    for i in 0..r {
        let lin = MultiPoly::from_terms(
            r,
            [
                (ExponentVec::zeros(r), QLaurent::constant(1)),
                (
                    ExponentVec::unit(r, i),
                    QLaurent::monomial(1, BigInt::from(-1)),
                ),
            ],
        );
        factor = factor.mul(&lin)?;
    }
    let prod = factor.mul(&pg.poly)?;
    let limit = conductor + &ExponentVec::ones(r);
    let tail = prod.terms().map(|(e, _)| e.clone()).find(|e| !e.le(&limit));
    let terminates = tail.is_none();
    let poly = if terminates { prod.into_exact() } else { prod };
    Ok(PgBar {
        series: MotivicSeries {
            poly,
            normalization: pg.normalization,
        },
        terminates,
        tail,
    })
}

/// `P̄_g` of a provider computed on `[0, δ + 2]`.
pub fn pg_bar_of(p: &dyn CProvider, norm: Normalization) -> Result<PgBar> {
    let reach = comparison_box(p).hi;
    pg_bar(&pg_of(p, &reach, norm)?, p.conductor())
}

/// Sum of all coefficients, i.e. the value at `t = 1`.
fn value_at_ones(p: &QPoly) -> QLaurent {
    p.terms()
        .fold(QLaurent::default(), |acc, (_, c)| acc.add_ref(c))
}

pub const MOTIVIC_CHECKS: &[&str] = &[
    "degeneration",
    "gorsky",
    "normalization-gap",
    "prop-hg",
    "r1-coincidence",
    "telescoping",
];

pub fn check_motivic(p: &dyn CProvider, which: &str) -> Result<Check> {
    let run = match which {
        "gorsky" => check_gorsky(p, Normalization::ChiG).map(|c| c.0),
        "prop-hg" => check_prop_hg(p, Normalization::ChiG),
        "r1-coincidence" => check_r1(p),
        "normalization-gap" => check_normalization_gap(p),
        "degeneration" => check_degeneration(p),
        "telescoping" => check_telescoping(p),
        other => return Err(Error::DegenerateInput(format!("unknown check {other}"))),
    };
    Ok(run.unwrap_or_else(|e| Check::fail(which, e.to_string(), None)))
}

/// Gorsky's identities; also returns the value `P̄_g(1)` for one branch.
fn check_gorsky(p: &dyn CProvider, norm: Normalization) -> Result<(Check, Option<QLaurent>)> {
    const NAME: &str = "gorsky";
    let r = p.branches();
    let bar = pg_bar_of(p, norm)?;
    if !bar.terminates {
        let at = bar.tail.expect("tail");
        return Ok((
            Check::inconclusive(NAME, format!("P̄_g has a nonzero coefficient at {at}")),
            None,
        ));
    }
    let poly = &bar.series.poly;
    if r == 1 {
        let value = value_at_ones(poly);
        let check = if value == QLaurent::constant(1) {
            Check::pass(NAME, format!("P̄_g = {poly}, P̄_g(1) = 1"))
        } else {
            Check::fail(
                NAME,
                format!("P̄_g(1) ≠ 1 for P̄_g = {poly}"),
                Some(Witness {
                    at: None,
                    expected: QLaurent::constant(1).into(),
                    actual: value.clone().into(),
                }),
            )
        };
        return Ok((check, Some(value)));
    }
    let mut parts = Vec::new();
    for i in 0..r {
        let keep: Vec<usize> = (0..r).filter(|&k| k != i).collect();
        let sub = p.semigroup().project(&keep)?;
        let sub_bar = pg_bar_of(&sub, norm)?;
        if !sub_bar.terminates {
            parts.push(Check::inconclusive(
                NAME,
                format!("P̄_g without branch {} does not terminate", i + 1),
            ));
            continue;
        }
        let lhs = poly.specialize(i, Unit::One)?;
        let rhs = sub_bar
            .series
            .poly
            .map_coeffs(|c| c.mul_ref(&one_minus_q()));
        let m = lhs.first_difference(&rhs)?;
        parts.push(Check::from_mismatch(NAME, "", m));
    }
    let mut out = combine(NAME, parts);
    if out.passed() {
        out.detail =
            format!("P̄_g|_(t_i = 1) = (1 - Q)·P̄_g of the other branches, for each i; P̄_g = {poly}");
    }
    Ok((out, None))
}

fn check_prop_hg(p: &dyn CProvider, norm: Normalization) -> Result<Check> {
    const NAME: &str = "prop-hg";
    let r = p.branches();
    let bx = comparison_box(p);
    let hg = series_hg(p, &bx, norm)?;
    let mut factor: QPoly = MultiPoly::from_integer(&MultiPoly::product_t_minus_one(r));
    if r % 2 == 1 {
        factor = factor.neg();
    }
    let lhs = factor.mul(&hg.poly)?;
    let subs = sub_semigroups(p.semigroup())?;
    let mut rhs: QPoly = MultiPoly::zero(r);
    for (a, sa) in &subs {
        let idx = a.indices();
        let reach = bx.hi.select(&idx);
        let pa = if a.len() == r {
            pg_of(p, &reach, norm)?.poly
        } else {
            pg_of(sa, &reach, norm)?.poly.embed(&idx, r)
        };
        let mono = MultiPoly::monomial(
            ExponentVec::indicator(r, *a),
            QLaurent::constant(sign(a.len() - 1)),
        );
        rhs = rhs.add(&mono.mul(&pa)?)?;
    }
    let m = lhs.first_difference_on(&rhs, &bx)?;
    Ok(Check::from_mismatch(
        NAME,
        format!(
            "∏(1 - t_i)·H_g = Σ (-1)^{{#A-1}} t_A P_g(S_A) on [0, {}]",
            bx.hi
        ),
        m,
    ))
}

fn check_r1(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "r1-coincidence";
    if p.branches() != 1 {
        return Ok(Check::not_applicable(NAME, "several branches"));
    }
    let hi = (p.conductor()[0] + 2).max(12);
    let reach = ExponentVec::new(vec![hi]);
    let bx = LatticeBox::from_origin(reach.clone());
    let (_, hat_p) = series_hat(p, &reach)?;
    let classical = MultiPoly::from_integer(&series::p_one_branch(p, hi)?);
    if let Some(m) = hat_p.first_difference_on(&classical, &bx)? {
        return Ok(Check::fail(NAME, "P̂_g ≠ P", Some(m.into())));
    }
    let lbx = LatticeBox::new(ExponentVec::new(vec![-1]), reach.clone());
    let lg = series_lg(p, &lbx, Normalization::ChiG)?;
    let pg = series_pg(&lg)?;
    let m = pg.poly.first_difference_on(&lg.poly, &bx)?;
    Ok(Check::from_mismatch(
        NAME,
        format!("P̂_g = P and P_g = L_g on [0, {hi}]"),
        m,
    ))
}

fn check_normalization_gap(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "normalization-gap";
    let r = p.branches();
    let reach = comparison_box(p).hi;
    let bx = LatticeBox::new(ExponentVec::splat(r, -1), reach.clone());
    let chi = series_lg(p, &bx, Normalization::ChiG)?;
    let lit = series_lg(p, &bx, Normalization::ClosedForm)?;
    let q = QLaurent::q_pow(1);
    let scaled = chi.poly.map_coeffs(|c| c.mul_ref(&q));
    if let Some(m) = lit.poly.first_difference_on(&scaled, &bx)? {
        return Ok(Check::fail(
            NAME,
            "closed-form L_g ≠ Q·(chi-g L_g)",
            Some(m.into()),
        ));
    }
    let bar_chi = pg_bar(&series_pg(&chi)?, p.conductor())?;
    let bar_lit = pg_bar(&series_pg(&lit)?, p.conductor())?;
    let scaled = bar_chi.series.poly.map_coeffs(|c| c.mul_ref(&q));
    let pbx = LatticeBox::from_origin(reach);
    if let Some(m) = bar_lit.series.poly.first_difference_on(&scaled, &pbx)? {
        return Ok(Check::fail(
            NAME,
            "closed-form P̄_g ≠ Q·(chi-g P̄_g)",
            Some(m.into()),
        ));
    }
    let (g_chi, _) = check_gorsky(p, Normalization::ChiG)?;
    let (g_lit, v_lit) = check_gorsky(p, Normalization::ClosedForm)?;
    let h_lit = check_prop_hg(p, Normalization::ClosedForm)?;
    let mut detail = format!(
        "closed-form = Q·chi-g for L_g, P_g and P̄_g; gorsky: chi-g {}, closed-form {}",
        g_chi.status, g_lit.status
    );
    if let Some(v) = v_lit {
        detail.push_str(&format!(" (P̄_g(1) = {v})"));
    }
    detail.push_str(&format!("; prop-hg with H_g = Q^(-ℓ): {}", h_lit.status));
    if !g_chi.passed() {
        return Ok(Check::fail(NAME, detail, g_chi.witness));
    }
    Ok(Check::pass(NAME, detail))
}

fn check_degeneration(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "degeneration";
    let r = p.branches();
    let bx = LatticeBox::new(ExponentVec::splat(r, -1), comparison_box(p).hi);
    let l = series::series_l(p, &bx)?;
    let lg = series_lg(p, &bx, Normalization::ChiG)?.poly.eval_q_at_one();
    if let Some(m) = lg.first_difference_on(&l, &bx)? {
        return Ok(Check::fail(NAME, "L_g(Q = 1) ≠ L", Some(m.into())));
    }
    let hat = series_hat_lg(p, &bx)?.eval_q_at_one();
    let m = hat.first_difference_on(&l, &bx)?;
    Ok(Check::from_mismatch(
        NAME,
        format!("L_g and L̂_g at Q = 1 give c(v) on [{}, {}]", bx.lo, bx.hi),
        m,
    ))
}

fn check_telescoping(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "telescoping";
    let r = p.branches();
    let reach = comparison_box(p).hi;
    let bx = LatticeBox::new(ExponentVec::splat(r, -1), reach.clone());
    let lg = series_lg(p, &bx, Normalization::ChiG)?;
    let pg = series_pg(&lg)?;
    let diag = MultiPoly::from_integer(&MultiPoly::diagonal_minus_one(r));
    let lhs = diag.mul(&pg.poly)?;
    let prod = MultiPoly::from_integer(&MultiPoly::product_t_minus_one(r));
    let mut pprime: QPoly = MultiPoly::zero(r);
    let inner = LatticeBox::from_origin(reach.clone());
    for v in inner.points() {
        let mut acc = QLaurent::default();
        for (e, c) in prod.terms() {
            acc = acc.add_ref(&c.mul_ref(&lg.poly.coeff(&(&v - e))));
        }
        pprime.add_term(v, &acc);
    }
    let pprime = pprime.truncated(Window::from_box(&inner, true));
    let m = lhs.first_difference_on(&pprime, &inner)?;
    Ok(Check::from_mismatch(
        NAME,
        format!("(t1⋯tr - 1)·P_g = ∏(t_i - 1)·L_g on [0, {}]", reach),
        m,
    ))
}
