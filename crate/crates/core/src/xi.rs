//! Recovering pairwise intersection multiplicities from `P'` alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::ExponentVec;
use crate::poly::{IntPoly, MultiPoly};
use crate::provider::CProvider;
use crate::report::{Check, Value, Witness};
use crate::semigroup::XiMatrix;
use crate::series::{one_branch_product, p_prime};

/// Exponents `z` of the factors `1 - t^z` peeled from branch `branch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMultiset {
    pub branch: usize,
    /// Sorted ascending.
    pub factors: Vec<u64>,
}

/// `P'` with every variable except `t_i` set to one.
pub fn specialize_branch(pprime: &IntPoly, i: usize) -> Result<IntPoly> {
    pprime.specialize_except(&[i])
}

fn binomial(z: u64) -> IntPoly {
    MultiPoly::one_minus_monomial(ExponentVec::new(vec![z as i64]))
}

/// Divides `q` by `base` and reads off the binomial factors of the quotient.
pub fn peel_binomial_factors(branch: usize, q: &IntPoly, base: &IntPoly) -> Result<FactorMultiset> {
    let mut rest = q
        .div_exact_univariate(base)
        .map_err(|e| Error::Factorization(format!("branch {}: {e}", branch + 1)))?;
    let one: IntPoly = MultiPoly::one(1);
    let mut factors = Vec::new();
    while rest != one {
        let lowest = rest
            .terms()
            .find(|(e, _)| e[0] > 0)
            .map(|(e, c)| (e[0] as u64, c.clone()));
        let Some((z, c)) = lowest else {
            return Err(Error::Factorization(format!(
                "branch {}: quotient {rest} is a constant other than 1",
                branch + 1
            )));
        };
        if !c.is_negative() {
            return Err(Error::Factorization(format!(
                "branch {}: coefficient {c} of t^{z} in {rest} is not negative",
                branch + 1
            )));
        }
        let m = (-c).to_usize().expect("small multiplicity");
        for _ in 0..m {
            rest = rest
                .div_exact_univariate(&binomial(z))
                .map_err(|e| Error::Factorization(format!("branch {}: {e}", branch + 1)))?;
            factors.push(z);
        }
    }
    Ok(FactorMultiset { branch, factors })
}

/// Multiplicity of `t = 1` as a root of a univariate polynomial.
pub fn root_multiplicity_at_one(q: &IntPoly) -> Result<usize> {
    let t_minus_one = MultiPoly::var(1, 0).sub(&MultiPoly::one(1))?;
    let mut q = q.clone();
    let mut k = 0;
    while !q.is_zero() && q.eval_at_ones().is_zero() {
        q = q.div_exact_univariate(&t_minus_one)?;
        k += 1;
    }
    Ok(k)
}

/// Every symmetric matrix whose row multisets are the given ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiMatch {
    pub solutions: Vec<XiMatrix>,
}

impl XiMatch {
    pub fn is_ambiguous(&self) -> bool {
        self.solutions.len() > 1
    }

    pub fn unique(&self) -> Option<&XiMatrix> {
        match self.solutions.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

pub fn match_xi(multisets: &[FactorMultiset]) -> Result<XiMatch> {
    let r = multisets.len();
    let mut remaining: Vec<BTreeMap<u64, usize>> = Vec::with_capacity(r);
    for (i, m) in multisets.iter().enumerate() {
        if m.factors.len() + 1 != r {
            return Err(Error::Factorization(format!(
                "branch {} has {} factors, expected {}",
                i + 1,
                m.factors.len(),
                r.saturating_sub(1)
            )));
        }
        if m.factors.contains(&0) {
            return Err(Error::Factorization(format!(
                "branch {} has a zero factor",
                i + 1
            )));
        }
        let mut counts = BTreeMap::new();
        for &z in &m.factors {
            *counts.entry(z).or_insert(0) += 1;
        }
        remaining.push(counts);
    }
    let pairs: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .collect();
    let mut entries = vec![vec![0u64; r]; r];
    let mut solutions = Vec::new();
    search(&pairs, 0, &mut remaining, &mut entries, &mut solutions);
    if solutions.is_empty() {
        return Err(Error::XiInconsistent);
    }
    solutions.sort();
    solutions.dedup();
    Ok(XiMatch { solutions })
}

fn search(
    pairs: &[(usize, usize)],
    k: usize,
    remaining: &mut [BTreeMap<u64, usize>],
    entries: &mut [Vec<u64>],
    out: &mut Vec<XiMatrix>,
) {
    let Some(&(i, j)) = pairs.get(k) else {
        out.push(XiMatrix::from_rows(entries.to_vec()));
        return;
    };
    let candidates: Vec<u64> = remaining[i]
        .iter()
        .filter(|(z, &n)| n > 0 && remaining[j].get(z).is_some_and(|&m| m > 0))
        .map(|(&z, _)| z)
        .collect();
    for z in candidates {
        *remaining[i].get_mut(&z).unwrap() -= 1;
        *remaining[j].get_mut(&z).unwrap() -= 1;
        entries[i][j] = z;
        entries[j][i] = z;
        search(pairs, k + 1, remaining, entries, out);
        *remaining[i].get_mut(&z).unwrap() += 1;
        *remaining[j].get_mut(&z).unwrap() += 1;
    }
    entries[i][j] = 0;
    entries[j][i] = 0;
}

/// How the one-branch base polynomial was confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseCheck {
    /// The plane-branch product formula gives the same polynomial.
    ProductAgrees,
    /// The projected branch is not of plane type; only the direct `P'` is used.
    DirectOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiRecovery {
    pub multisets: Vec<FactorMultiset>,
    pub bases: Vec<BaseCheck>,
    pub root_multiplicities: Vec<usize>,
    pub matched: XiMatch,
    pub oracle: XiMatrix,
}

impl XiRecovery {
    pub fn matches_oracle(&self) -> bool {
        self.matched.unique() == Some(&self.oracle)
    }
}

pub fn recover_xi(p: &dyn CProvider) -> Result<XiRecovery> {
    let r = p.branches();
    if r < 2 {
        return Err(Error::DegenerateInput(
            "intersection multiplicities need at least two branches".into(),
        ));
    }
    let pprime = p_prime(p)?;
    let s = p.semigroup();
    let mut multisets = Vec::with_capacity(r);
    let mut bases = Vec::with_capacity(r);
    let mut roots = Vec::with_capacity(r);
    for i in 0..r {
        let q = specialize_branch(&pprime, i)?;
        let branch = s.project(&[i])?;
        let base = p_prime(&branch)?;
        let check = match one_branch_product(&branch.minimal_generators()?) {
            Ok(product) if product == base => BaseCheck::ProductAgrees,
            Ok(product) => {
                return Err(Error::Inconsistent(format!(
                    "branch {}: product formula {product} differs from P' = {base}",
                    i + 1
                )))
            }
            Err(Error::NotPlaneBranch(_)) => BaseCheck::DirectOnly,
            Err(e) => return Err(e),
        };
        roots.push(root_multiplicity_at_one(&q)?);
        multisets.push(peel_binomial_factors(i, &q, &base)?);
        bases.push(check);
    }
    let matched = match_xi(&multisets)?;
    Ok(XiRecovery {
        multisets,
        bases,
        root_multiplicities: roots,
        matched,
        oracle: s.xi_oracle()?,
    })
}

fn matrix_text(m: &XiMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `xi-recovery` as a verification check.
pub fn check_xi(p: &dyn CProvider) -> Check {
    const NAME: &str = "xi-recovery";
    if p.branches() < 2 {
        return Check::not_applicable(NAME, "one branch");
    }
    let rec = match recover_xi(p) {
        Ok(rec) => rec,
        Err(e) => return Check::fail(NAME, e.to_string(), None),
    };
    let expected = Value::Text(matrix_text(&rec.oracle));
    if rec.matched.is_ambiguous() {
        let found: Vec<String> = rec.matched.solutions.iter().map(matrix_text).collect();
        return Check::inconclusive(NAME, format!("ambiguous: {}", found.join(" or ")));
    }
    let got = rec.matched.unique().expect("one solution");
    let r = p.branches();
    if let Some(i) = rec.root_multiplicities.iter().position(|&k| k + 1 != r) {
        return Check::fail(
            NAME,
            format!(
                "root of P'(t_{}) at t = 1 has the wrong multiplicity",
                i + 1
            ),
            Some(Witness {
                at: None,
                expected: Value::Int(BigInt::from(r - 1)),
                actual: Value::Int(BigInt::from(rec.root_multiplicities[i])),
            }),
        );
    }
    if rec.matches_oracle() {
        Check::pass(
            NAME,
            format!(
                "ξ = {} from P', equal to the conductor oracle",
                matrix_text(got)
            ),
        )
    } else {
        Check::fail(
            NAME,
            "ξ from P' differs from the conductor oracle",
            Some(Witness {
                at: None,
                expected,
                actual: Value::Text(matrix_text(got)),
            }),
        )
    }
}

/// `∏ (1 - t^z)` over a factor list, for tests and diagnostics.
pub fn binomial_product(factors: &[u64]) -> IntPoly {
    factors
        .iter()
        .fold(MultiPoly::constant(1, BigInt::one()), |acc, &z| {
            acc.mul(&binomial(z)).expect("exact")
        })
}
