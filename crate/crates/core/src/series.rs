//! Classical Poincaré series of a provider and the identities relating them.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{BranchSet, ExponentVec, LatticeBox};
use crate::poly::{IntPoly, MultiPoly, Window};
use crate::provider::CProvider;
use crate::report::{combine, Check, Witness};
use crate::semigroup::{numerical_semigroup, ValueSemigroup};

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `[0, δ + 2]`, the box on which truncated comparisons are made.
pub fn comparison_box(p: &dyn CProvider) -> LatticeBox {
    let r = p.branches();
    LatticeBox::from_origin(p.conductor() + &ExponentVec::splat(r, 2))
}

/// `[-1, δ + 1]`, where supports of the polynomials are checked.
fn shell_box(p: &dyn CProvider) -> LatticeBox {
    let r = p.branches();
    LatticeBox::new(
        ExponentVec::splat(r, -1),
        p.conductor() + &ExponentVec::ones(r),
    )
}

fn check_support(p: &dyn CProvider, poly: &IntPoly, what: &str) -> Result<()> {
    let inner = LatticeBox::from_origin(p.conductor().clone());
    if let Some((e, c)) = poly.terms().find(|(e, _)| !inner.contains(e)) {
        return Err(Error::Inconsistent(format!(
            "{what} has coefficient {c} at {e} outside [0, {}]",
            p.conductor()
        )));
    }
    Ok(())
}

/// `L = Σ c(v) t^v` on `bx`.
pub fn series_l(p: &dyn CProvider, bx: &LatticeBox) -> Result<IntPoly> {
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        out.add_term(v.clone(), &BigInt::from(p.c(&v)?));
    }
    Ok(out.truncated(Window::from_box(bx, false)))
}

/// `p'(v) = (-1)^r Σ_J (-1)^{#J} c(v - 1_J)`.
pub fn p_prime_coeff(p: &dyn CProvider, v: &ExponentVec) -> Result<BigInt> {
    let r = p.branches();
    let mut acc = 0i64;
    for j in BranchSet::all(r) {
        let w = v - &ExponentVec::indicator(r, j);
        acc += sign(j.len()) * p.c(&w)? as i64;
    }
    Ok(BigInt::from(sign(r) * acc))
}

/// `P' = ∏(t_i - 1) · L`, an exact polynomial supported in `[0, δ]`.
pub fn p_prime(p: &dyn CProvider) -> Result<IntPoly> {
    let bx = shell_box(p);
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        let c = p_prime_coeff(p, &v)?;
        out.add_term(v, &c);
    }
    check_support(p, &out, "P'")?;
    Ok(out)
}

/// `p_i(v) = (-1)^r Σ_{i ∈ J} (-1)^{#J} c(v + 1 - 1_J, i)`.
pub fn p_pivot_coeff(p: &dyn CProvider, v: &ExponentVec, i: usize) -> Result<BigInt> {
    let r = p.branches();
    let up = v + &ExponentVec::ones(r);
    let mut acc = 0i64;
    for j in BranchSet::all(r).filter(|j| j.contains(i)) {
        let w = &up - &ExponentVec::indicator(r, j);
        acc += sign(j.len()) * p.c_axis(&w, i)? as i64;
    }
    Ok(BigInt::from(sign(r) * acc))
}

/// The polynomial `P_i` built with pivot `i`, for `r ≥ 2`.
pub fn p_pivot(p: &dyn CProvider, i: usize) -> Result<IntPoly> {
    let r = p.branches();
    if i >= r {
        return Err(Error::IndexOutOfRange {
            index: i,
            branches: r,
        });
    }
    if r < 2 {
        return Err(Error::Truncated(
            "P is a power series for one branch".into(),
        ));
    }
    let bx = shell_box(p);
    let mut out = MultiPoly::zero(r);
    for v in bx.points() {
        let c = p_pivot_coeff(p, &v, i)?;
        out.add_term(v, &c);
    }
    check_support(p, &out, "P")?;
    Ok(out)
}

/// For one branch, `P = Σ_{n ∈ S} t^n` known on `[0, reach]`.
pub fn p_one_branch(p: &dyn CProvider, reach: i64) -> Result<IntPoly> {
    if p.branches() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            found: p.branches(),
        });
    }
    let bx = LatticeBox::from_origin(ExponentVec::new(vec![reach]));
    let mut out = MultiPoly::zero(1);
    for v in bx.points() {
        let c = p_pivot_coeff(p, &v, 0)?;
        out.add_term(v, &c);
    }
    Ok(out.truncated(Window::from_box(&bx, true)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    Branch(usize),
    All,
}

/// `P = P' / (t_1⋯t_r - 1)`, built from the pivot formula.
///
/// With `Pivot::All` every pivot is computed and required to agree, and the
/// product `(t_1⋯t_r - 1)·P = P'` is asserted. For `r = 1` the result is the
/// series on `[0, δ + 2]`.
pub fn poincare_p(p: &dyn CProvider, pivot: Pivot) -> Result<IntPoly> {
    let r = p.branches();
    if r == 1 {
        return p_one_branch(p, p.conductor()[0] + 2);
    }
    let first = match pivot {
        Pivot::Branch(i) => p_pivot(p, i)?,
        Pivot::All => p_pivot(p, 0)?,
    };
    if pivot == Pivot::All {
        for i in 1..r {
            if let Some(m) = p_pivot(p, i)?.first_difference(&first)? {
                return Err(Error::Inconsistent(format!(
                    "P_{} and P_1 differ at {}: {} vs {}",
                    i + 1,
                    m.at,
                    m.expected,
                    m.actual
                )));
            }
        }
        let prod = MultiPoly::diagonal_minus_one(r).mul(&first)?;
        if let Some(m) = prod.first_difference(&p_prime(p)?)? {
            return Err(Error::Inconsistent(format!(
                "(t1⋯tr - 1)·P differs from P' at {}",
                m.at
            )));
        }
    }
    Ok(first)
}

/// `p̃(v)`: the `P'` formula keeping only the terms with `v - 1_J ≥ 0`.
pub fn p_tilde_coeff(p: &dyn CProvider, v: &ExponentVec) -> Result<BigInt> {
    let r = p.branches();
    if !v.is_nonnegative() {
        return Ok(BigInt::from(0));
    }
    let mut acc = 0i64;
    for j in BranchSet::all(r) {
        let w = v - &ExponentVec::indicator(r, j);
        if w.is_nonnegative() {
            acc += sign(j.len()) * p.c(&w)? as i64;
        }
    }
    Ok(BigInt::from(sign(r) * acc))
}

/// `P̃ = ∏(t_i - 1) · L̃` with `L̃ = Σ_{v ≥ 0} c(v) t^v`; exact, supported in `[0, δ]`.
pub fn p_tilde(p: &dyn CProvider) -> Result<IntPoly> {
    let r = p.branches();
    let bx = LatticeBox::from_origin(p.conductor() + &ExponentVec::ones(r));
    bx.check_size()?;
    let mut out = MultiPoly::zero(r);
    for v in bx.points() {
        let c = p_tilde_coeff(p, &v)?;
        out.add_term(v, &c);
    }
    check_support(p, &out, "P~")?;
    Ok(out)
}

fn require_nonnegative(bx: &LatticeBox) -> Result<()> {
    if !bx.lo.is_nonnegative() {
        return Err(Error::DegenerateInput(format!(
            "box [{}, {}] leaves N^r",
            bx.lo, bx.hi
        )));
    }
    Ok(())
}

/// `L̃ = Σ_{v ≥ 0} c(v) t^v` on `bx ⊆ N^r`.
pub fn series_l_tilde(p: &dyn CProvider, bx: &LatticeBox) -> Result<IntPoly> {
    require_nonnegative(bx)?;
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        out.add_term(v.clone(), &BigInt::from(p.c(&v)?));
    }
    Ok(out.truncated(Window::from_box(bx, true)))
}

/// `H = Σ_{v ≥ 0} ℓ(v) t^v` on `bx ⊆ N^r`.
pub fn series_h(p: &dyn CProvider, bx: &LatticeBox) -> Result<IntPoly> {
    require_nonnegative(bx)?;
    bx.check_size()?;
    let mut out = MultiPoly::zero(p.branches());
    for v in bx.points() {
        out.add_term(v.clone(), &BigInt::from(p.ell(&v)?));
    }
    Ok(out.truncated(Window::from_box(bx, true)))
}

/// Splits `P̃` by support pattern `J = {i : v_i > 0}`.
pub fn lambda_decomposition(ptilde: &IntPoly) -> Result<BTreeMap<BranchSet, IntPoly>> {
    let r = ptilde.nvars();
    let mut parts: BTreeMap<BranchSet, IntPoly> =
        BranchSet::all(r).map(|j| (j, MultiPoly::zero(r))).collect();
    for (e, c) in ptilde.terms() {
        if !e.is_nonnegative() {
            return Err(Error::DegenerateInput(format!(
                "P~ has a term at {e} outside N^r"
            )));
        }
        parts
            .get_mut(&e.positive_support())
            .expect("all patterns")
            .add_term(e.clone(), c);
    }
    Ok(parts)
}

/// `P'` of a plane branch from its minimal generators:
/// `(t - 1)/(1 - t^{ρ_0}) · ∏_k (1 - t^{N_k ρ_k})/(1 - t^{ρ_k})`.
pub fn one_branch_product(generators: &[u64]) -> Result<IntPoly> {
    if generators.is_empty() {
        return Err(Error::DegenerateInput("empty generator list".into()));
    }
    let s = numerical_semigroup(generators)?;
    let minimal = s.minimal_generators()?;
    let mut sorted = generators.to_vec();
    sorted.sort_unstable();
    if sorted != minimal {
        return Err(Error::DegenerateInput(format!(
            "{generators:?} is not the minimal generating set {minimal:?}"
        )));
    }
    let t = |e: u64| ExponentVec::new(vec![e as i64]);
    let mut num = MultiPoly::var(1, 0).sub(&MultiPoly::one(1))?;
    let mut den = MultiPoly::one_minus_monomial(t(generators[0]));
    let mut theta = generators[0];
    for &rho in &generators[1..] {
        let next = num_integer::gcd(theta, rho);
        let n_k = theta / next;
        num = num.mul(&MultiPoly::one_minus_monomial(t(n_k * rho)))?;
        den = den.mul(&MultiPoly::one_minus_monomial(t(rho)))?;
        theta = next;
    }
    let product = num.div_exact_univariate(&den).map_err(|_| {
        Error::NotPlaneBranch(format!(
            "product formula for {generators:?} is not a polynomial"
        ))
    })?;
    let direct = p_prime(&s)?;
    if let Some(m) = product.first_difference(&direct)? {
        return Err(Error::NotPlaneBranch(format!(
            "product formula for {generators:?} differs from (t-1)·Σ t^s at {}: {} vs {}",
            m.at, m.expected, m.actual
        )));
    }
    if product.eval_at_ones() == BigInt::from(0) {
        return Err(Error::NotPlaneBranch(format!(
            "{product} is divisible by t - 1"
        )));
    }
    Ok(product)
}

/// `S_A` for every nonempty `A`, indexed by branch set; `S_I` is `S` itself.
pub fn sub_semigroups(s: &ValueSemigroup) -> Result<BTreeMap<BranchSet, ValueSemigroup>> {
    let r = s.branches();
    let mut out = BTreeMap::new();
    for a in BranchSet::all(r).filter(|a| !a.is_empty()) {
        let sa = if a == BranchSet::full(r) {
            s.clone()
        } else {
            s.project(&a.indices())?
        };
        out.insert(a, sa);
    }
    Ok(out)
}

pub const SERIES_CHECKS: &[&str] = &[
    "dual-oracle",
    "functional-equation",
    "hilbert-identity",
    "lambda-decomposition",
    "maximal-coeff",
    "pi-independence",
    "projection",
    "ptilde-decomposition",
    "ptilde-restriction",
];

/// Runs one named identity check.
pub fn check_identity(p: &dyn CProvider, which: &str) -> Result<Check> {
    let run = match which {
        "pi-independence" => check_pi_independence(p),
        "functional-equation" => check_functional_equation(p),
        "maximal-coeff" => check_maximal_coeff(p),
        "ptilde-decomposition" => check_ptilde_decomposition(p),
        "lambda-decomposition" => check_lambda(p),
        "ptilde-restriction" => check_ptilde_restriction(p),
        "hilbert-identity" => check_hilbert_identity(p),
        "projection" => check_projection(p),
        "dual-oracle" => check_dual_oracle(p),
        other => return Err(Error::DegenerateInput(format!("unknown check {other}"))),
    };
    Ok(run.unwrap_or_else(|e| Check::fail(which, e.to_string(), None)))
}

fn check_pi_independence(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "pi-independence";
    let r = p.branches();
    if r < 2 {
        return Ok(Check::not_applicable(NAME, "one branch"));
    }
    let base = p_pivot(p, 0)?;
    for i in 1..r {
        if let Some(m) = p_pivot(p, i)?.first_difference(&base)? {
            return Ok(Check::fail(
                NAME,
                format!("P_{} differs from P_1", i + 1),
                Some(m.into()),
            ));
        }
    }
    let prod = MultiPoly::diagonal_minus_one(r).mul(&base)?;
    let m = p_prime(p)?.first_difference(&prod)?;
    Ok(Check::from_mismatch(
        NAME,
        format!("{r} pivots agree; (t1⋯tr - 1)·P = P'"),
        m,
    ))
}

fn check_functional_equation(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "functional-equation";
    let s = p.semigroup();
    if !s.symmetry_check()?.gorenstein {
        return Ok(Check::not_applicable(NAME, "not Gorenstein"));
    }
    let r = p.branches();
    let pp = p_prime(p)?;
    let sum = pp.add(&pp.reciprocal_transform(p.conductor())?)?;
    if let Some(m) = sum.first_difference(&MultiPoly::zero(r))? {
        return Ok(Check::fail(
            NAME,
            "P' + (-1)^r t^δ P'(1/t) ≠ 0",
            Some(m.into()),
        ));
    }
    if r < 2 {
        return Ok(Check::pass(NAME, "P' + (-1)^r t^δ P'(1/t) = 0"));
    }
    let pol = p_pivot(p, 0)?;
    let tau = p.conductor() - &ExponentVec::ones(r);
    for v in LatticeBox::from_origin(tau.clone()).points() {
        let lhs = pol.coeff(&v);
        let rhs = pol.coeff(&(&tau - &v)) * sign(r);
        if lhs != rhs {
            return Ok(Check::fail(
                NAME,
                "p(v) ≠ (-1)^r p(τ - v)",
                Some(Witness {
                    at: Some(v),
                    expected: rhs.into(),
                    actual: lhs.into(),
                }),
            ));
        }
    }
    Ok(Check::pass(
        NAME,
        "P' + (-1)^r t^δ P'(1/t) = 0; p(v) = (-1)^r p(τ - v)",
    ))
}

fn check_maximal_coeff(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "maximal-coeff";
    let r = p.branches();
    if r < 2 {
        return Ok(Check::not_applicable(NAME, "one branch"));
    }
    let s = p.semigroup();
    let pol = p_pivot(p, 0)?;
    let mut unclassified = 0;
    for v in LatticeBox::from_origin(p.conductor().clone()).points() {
        let prof = s.classify(&v);
        let expected = if !prof.is_maximal {
            0
        } else if prof.is_absolute {
            1
        } else if prof.is_relative {
            sign(r)
        } else {
            if r <= 3 {
                return Ok(Check::fail(
                    NAME,
                    format!("maximal {v} is neither absolute nor relative for r = {r}"),
                    None,
                ));
            }
            unclassified += 1;
            continue;
        };
        let actual = pol.coeff(&v);
        if actual != BigInt::from(expected) {
            return Ok(Check::fail(
                NAME,
                "coefficient disagrees with the maximal classification",
                Some(Witness {
                    at: Some(v),
                    expected: BigInt::from(expected).into(),
                    actual: actual.into(),
                }),
            ));
        }
    }
    let mut detail = "p(v) matches the maximal classification on [0, δ]".to_string();
    if unclassified > 0 {
        detail.push_str(&format!(
            "; {unclassified} maximals neither absolute nor relative"
        ));
    }
    Ok(Check::pass(NAME, detail))
}

/// `Σ_{A ≠ ∅} sign(A) · f(S_A)` embedded into `r` variables.
fn subset_sum(
    p: &dyn CProvider,
    subs: &BTreeMap<BranchSet, ValueSemigroup>,
    f: impl Fn(&dyn CProvider) -> Result<IntPoly>,
    signed: bool,
) -> Result<IntPoly> {
    let r = p.branches();
    let mut acc = MultiPoly::zero(r);
    for (a, sa) in subs {
        let part = if a.len() == r {
            f(p)?
        } else {
            f(sa)?.embed(&a.indices(), r)
        };
        let part = if signed && (r - a.len()) % 2 == 1 {
            part.neg()
        } else {
            part
        };
        acc = acc.add(&part)?;
    }
    Ok(acc)
}

fn check_ptilde_decomposition(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "ptilde-decomposition";
    let pt = p_tilde(p)?;
    let pp = p_prime(p)?;
    if p.branches() == 1 {
        let m = pt.first_difference(&pp)?;
        return Ok(Check::from_mismatch(NAME, "P~ = P' for one branch", m));
    }
    let subs = sub_semigroups(p.semigroup())?;
    let forward = subset_sum(p, &subs, p_prime, true)?;
    if let Some(m) = pt.first_difference(&forward)? {
        return Ok(Check::fail(
            NAME,
            "P~ ≠ Σ (-1)^{#(I∖A)} P'_{S_A}",
            Some(m.into()),
        ));
    }
    let converse = subset_sum(p, &subs, p_tilde, false)?;
    let m = pp.first_difference(&converse)?;
    Ok(Check::from_mismatch(
        NAME,
        "P~ = Σ (-1)^{#(I∖A)} P'_{S_A} and P' = Σ P~_{S_A}",
        m,
    ))
}

fn check_lambda(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "lambda-decomposition";
    let r = p.branches();
    let pt = p_tilde(p)?;
    let parts = lambda_decomposition(&pt)?;
    let mut total = MultiPoly::zero(r);
    for part in parts.values() {
        total = total.add(part)?;
    }
    if let Some(m) = pt.first_difference(&total)? {
        return Ok(Check::fail(NAME, "Σ_J Λ_J ≠ P~", Some(m.into())));
    }
    let empty = MultiPoly::constant(r, BigInt::from(sign(r)));
    if let Some(m) = parts[&BranchSet::empty()].first_difference(&empty)? {
        return Ok(Check::fail(NAME, "Λ_∅ ≠ (-1)^r", Some(m.into())));
    }
    let subs = sub_semigroups(p.semigroup())?;
    for (j, sj) in &subs {
        let pj = if j.len() == r {
            p_prime(p)?
        } else {
            p_prime(sj)?.embed(&j.indices(), r)
        };
        let mut expected = pj.add(&MultiPoly::one(r))?;
        if (r - j.len()) % 2 == 1 {
            expected = expected.neg();
        }
        if let Some(m) = expected.first_difference(&parts[j])? {
            return Ok(Check::fail(
                NAME,
                format!("Λ_{j:?} ≠ (-1)^{{#(I∖J)}} (P'_{{S_J}} + 1)"),
                Some(m.into()),
            ));
        }
    }
    Ok(Check::pass(
        NAME,
        "Λ_J = (-1)^{#(I∖J)} (P'_{S_J} + 1), Λ_∅ = (-1)^r",
    ))
}

fn check_ptilde_restriction(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "ptilde-restriction";
    let r = p.branches();
    if r < 2 {
        return Ok(Check::not_applicable(NAME, "one branch"));
    }
    let pt = p_tilde(p)?;
    let subs = sub_semigroups(p.semigroup())?;
    for (a, sa) in subs.iter().filter(|(a, _)| a.len() < r) {
        let mut restricted = pt.clone();
        for i in (0..r).rev().filter(|&i| !a.contains(i)) {
            restricted = restricted.specialize(i, crate::poly::Unit::Zero)?;
        }
        if (r - a.len()) % 2 == 1 {
            restricted = restricted.neg();
        }
        if let Some(m) = p_tilde(sa)?.first_difference(&restricted)? {
            return Ok(Check::fail(
                NAME,
                format!("P~_{{S_A}} for A = {a:?}"),
                Some(m.into()),
            ));
        }
    }
    Ok(Check::pass(
        NAME,
        "P~_{S_A} = (-1)^{r-#A} P~|_{t_i = 0, i ∉ A}",
    ))
}

/// `P_{S_A}` in `#A` variables, as a series on `[0, reach]` when `#A = 1`.
fn p_of(sa: &dyn CProvider, reach: i64) -> Result<IntPoly> {
    if sa.branches() == 1 {
        p_one_branch(sa, reach)
    } else {
        p_pivot(sa, 0)
    }
}

fn check_hilbert_identity(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "hilbert-identity";
    let r = p.branches();
    let bx = comparison_box(p);
    let h = series_h(p, &bx)?;
    let mut factor = MultiPoly::product_t_minus_one(r);
    if r % 2 == 1 {
        factor = factor.neg();
    }
    let lhs = factor.mul(&h)?;
    let subs = sub_semigroups(p.semigroup())?;
    let mut rhs = MultiPoly::zero(r);
    for (a, sa) in &subs {
        let idx = a.indices();
        let reach = idx.iter().map(|&i| bx.hi[i]).max().unwrap_or(0);
        let pa = if a.len() == r {
            p_of(p, reach)?
        } else {
            p_of(sa, reach)?.embed(&idx, r)
        };
        let shifted = MultiPoly::monomial(
            ExponentVec::indicator(r, *a),
            BigInt::from(sign(a.len() - 1)),
        )
        .mul(&pa)?;
        rhs = rhs.add(&shifted)?;
    }
    let m = lhs.first_difference_on(&rhs, &bx)?;
    Ok(Check::from_mismatch(
        NAME,
        format!(
            "∏(1 - t_i)·H = Σ (-1)^{{#A-1}} t_A P_{{S_A}} on [0, {}]",
            bx.hi
        ),
        m,
    ))
}

/// `∏_{j ∉ A} (1 - ∏_{i ∈ A} t_i^{ξ_ij})` in the variables of `A`.
fn projection_factor(xi: &crate::semigroup::XiMatrix, keep: &[usize]) -> Result<IntPoly> {
    let r = xi.branches();
    let mut f = MultiPoly::one(keep.len());
    for j in (0..r).filter(|j| !keep.contains(j)) {
        let e: Vec<i64> = keep.iter().map(|&i| xi.get(i, j) as i64).collect();
        f = f.mul(&MultiPoly::one_minus_monomial(ExponentVec::new(e)))?;
    }
    Ok(f)
}

fn check_projection(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "projection";
    let r = p.branches();
    if r < 2 {
        return Ok(Check::not_applicable(NAME, "one branch"));
    }
    let xi = match p.semigroup().xi_oracle() {
        Ok(x) => x,
        Err(e) => return Ok(Check::not_applicable(NAME, e.to_string())),
    };
    let full_p = p_pivot(p, 0)?;
    let full_pp = p_prime(p)?;
    let subs = sub_semigroups(p.semigroup())?;
    let mut parts = Vec::new();
    for (a, sa) in subs.iter().filter(|(a, _)| a.len() < r) {
        let keep = a.indices();
        let factor = projection_factor(&xi, &keep)?;
        let lhs = full_pp.specialize_except(&keep)?;
        let rhs = factor.mul(&p_prime(sa)?)?;
        if let Some(m) = lhs.first_difference(&rhs)? {
            parts.push(Check::fail(
                NAME,
                format!("P' projection onto {a:?}"),
                Some(m.into()),
            ));
            continue;
        }
        let lhs = full_p.specialize_except(&keep)?;
        let bx = LatticeBox::from_origin(
            &p.conductor().select(&keep) + &ExponentVec::splat(keep.len(), 2),
        );
        let reach = bx.hi.as_slice().iter().copied().max().unwrap_or(0);
        let rhs = factor.mul(&p_of(sa, reach)?)?;
        let m = lhs.first_difference_on(&rhs, &bx)?;
        parts.push(Check::from_mismatch(
            NAME,
            "",
            m.map(|mut m| {
                m.at = m.at.embed(&keep, r);
                m
            }),
        ));
    }
    let mut out = combine(NAME, parts);
    if out.passed() {
        out.detail = format!(
            "P and P' projection formulas hold for all {} proper subsets",
            (1usize << r) - 2
        );
    }
    Ok(out)
}

fn check_dual_oracle(p: &dyn CProvider) -> Result<Check> {
    const NAME: &str = "dual-oracle";
    if p.label() == "semigroup" {
        return Ok(Check::not_applicable(NAME, "no ring model"));
    }
    let s = p.semigroup();
    let bx = shell_box(p);
    for v in bx.points() {
        let pairs = [
            ("c", p.c(&v)?, s.c_chain(&v)),
            ("ℓ", p.ell(&v)?, s.ell_comb(&v)),
        ];
        for (what, model, comb) in pairs {
            if model != comb {
                return Ok(Check::fail(
                    NAME,
                    format!("{what} from the ring model vs the semigroup formula"),
                    Some(Witness {
                        at: Some(v),
                        expected: model.into(),
                        actual: comb.into(),
                    }),
                ));
            }
        }
        for i in 0..p.branches() {
            let (model, comb) = (p.c_axis(&v, i)?, s.c_axis(&v, i));
            if model != comb {
                return Ok(Check::fail(
                    NAME,
                    format!(
                        "c(v, {}) from the ring model vs the semigroup formula",
                        i + 1
                    ),
                    Some(Witness {
                        at: Some(v),
                        expected: model.into(),
                        actual: comb.into(),
                    }),
                ));
            }
        }
    }
    Ok(Check::pass(
        NAME,
        format!("c, c(·,i), ℓ agree on [{}, {}]", bx.lo, bx.hi),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;
    use crate::semigroup::semigroup_from;

    fn node() -> ValueSemigroup {
        semigroup_from(&[1, 1], &[&[0, 0], &[1, 1]]).unwrap()
    }

    fn tacnode() -> ValueSemigroup {
        semigroup_from(&[2, 2], &[&[0, 0], &[1, 1], &[2, 2]]).unwrap()
    }

    fn cusp() -> ValueSemigroup {
        numerical_semigroup(&[2, 3]).unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVec {
        ExponentVec::from(v)
    }

    #[test]
    fn l_examples() {
        let l = series_l(&cusp(), &LatticeBox::new(ev(&[-1]), ev(&[6]))).unwrap();
        let expected: Vec<i64> = vec![0, 1, 0, 1, 1, 1, 1, 1];
        for (k, c) in (-1..=6).zip(expected) {
            assert_eq!(l.coeff(&ev(&[k])), BigInt::from(c));
        }
        let n = series_l(&node(), &LatticeBox::new(ev(&[-1, -1]), ev(&[2, 2]))).unwrap();
        assert_eq!(n.coeff(&ev(&[0, 0])), BigInt::from(1));
        assert_eq!(n.coeff(&ev(&[0, 1])), BigInt::from(1));
        assert_eq!(n.coeff(&ev(&[-1, -1])), BigInt::from(0));
    }

    #[test]
    fn p_prime_examples() {
        assert_eq!(
            p_prime(&cusp()).unwrap(),
            int_poly(1, &[(-1, &[0]), (1, &[1]), (-1, &[2])])
        );
        assert_eq!(
            p_prime(&node()).unwrap(),
            int_poly(2, &[(1, &[1, 1]), (-1, &[0, 0])])
        );
        assert_eq!(
            p_prime(&tacnode()).unwrap(),
            int_poly(2, &[(1, &[2, 2]), (-1, &[0, 0])])
        );
    }

    #[test]
    fn p_examples() {
        assert_eq!(poincare_p(&node(), Pivot::All).unwrap(), MultiPoly::one(2));
        assert_eq!(
            poincare_p(&tacnode(), Pivot::All).unwrap(),
            int_poly(2, &[(1, &[0, 0]), (1, &[1, 1])])
        );
        let c = poincare_p(&cusp(), Pivot::All).unwrap();
        assert!(!c.is_exact());
        let terms: Vec<i64> = c.terms().map(|(e, _)| e[0]).collect();
        assert_eq!(terms, vec![0, 2, 3, 4]);
    }

    #[test]
    fn p_tilde_examples() {
        assert_eq!(p_tilde(&cusp()).unwrap(), p_prime(&cusp()).unwrap());
        assert_eq!(
            p_tilde(&node()).unwrap(),
            int_poly(2, &[(1, &[0, 0]), (1, &[1, 1])])
        );
        for s in [cusp(), node(), tacnode()] {
            let r = s.branches();
            assert_eq!(
                p_tilde_coeff(&s, &ExponentVec::zeros(r)).unwrap(),
                BigInt::from(sign(r))
            );
        }
    }

    #[test]
    fn h_examples() {
        let h = series_h(&node(), &LatticeBox::from_origin(ev(&[2, 2]))).unwrap();
        assert_eq!(h.coeff(&ev(&[1, 1])), BigInt::from(1));
        assert_eq!(h.coeff(&ev(&[0, 0])), BigInt::from(0));
        let h = series_h(&cusp(), &LatticeBox::from_origin(ev(&[5]))).unwrap();
        assert_eq!(h.coeff(&ev(&[4])), BigInt::from(3));
        assert!(series_h(&cusp(), &LatticeBox::new(ev(&[-1]), ev(&[3]))).is_err());
    }

    #[test]
    fn lambda_examples() {
        let parts = lambda_decomposition(&p_tilde(&node()).unwrap()).unwrap();
        assert_eq!(parts[&BranchSet::empty()], MultiPoly::one(2));
        assert_eq!(parts[&BranchSet::full(2)], int_poly(2, &[(1, &[1, 1])]));
        assert!(parts[&BranchSet::singleton(0)].is_zero());
        assert!(parts[&BranchSet::singleton(1)].is_zero());
    }

    #[test]
    fn one_branch_examples() {
        assert_eq!(
            one_branch_product(&[2, 3]).unwrap(),
            int_poly(1, &[(-1, &[0]), (1, &[1]), (-1, &[2])])
        );
        assert_eq!(
            one_branch_product(&[1]).unwrap(),
            int_poly(1, &[(-1, &[0])])
        );
        let p = one_branch_product(&[4, 6, 13]).unwrap();
        assert_eq!(
            p,
            p_prime(&numerical_semigroup(&[4, 6, 13]).unwrap()).unwrap()
        );
        assert!(matches!(
            one_branch_product(&[3, 4, 5]),
            Err(Error::NotPlaneBranch(_))
        ));
        assert!(matches!(
            one_branch_product(&[2, 3, 4]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn literal_converse_fails_on_node() {
        // P' = Σ (-1)^{#(I∖A)} P~_{S_A} read literally gives 3 + t1 t2 for the node.
        let s = node();
        let subs = sub_semigroups(&s).unwrap();
        let literal = subset_sum(&s, &subs, p_tilde, true).unwrap();
        assert_eq!(literal, int_poly(2, &[(3, &[0, 0]), (1, &[1, 1])]));
        assert_ne!(literal, p_prime(&s).unwrap());
    }

    #[test]
    fn all_checks_pass_on_small_semigroups() {
        for s in [cusp(), node(), tacnode()] {
            for name in SERIES_CHECKS {
                let c = check_identity(&s, name).unwrap();
                assert!(c.status != crate::report::Status::Fail, "{c}");
            }
        }
    }

    #[test]
    fn projection_detects_wrong_xi() {
        let s = node();
        let xi = crate::semigroup::XiMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]);
        let f = projection_factor(&xi, &[0]).unwrap();
        let lhs = poincare_p(&s, Pivot::All)
            .unwrap()
            .specialize_except(&[0])
            .unwrap();
        let rhs = f.mul(&p_of(&s.project(&[0]).unwrap(), 4).unwrap()).unwrap();
        let bx = LatticeBox::from_origin(ev(&[4]));
        assert!(lhs.first_difference_on(&rhs, &bx).unwrap().is_some());
    }
}
