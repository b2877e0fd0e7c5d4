//! Exact finite model of the local ring of a curve given by branch
//! parametrizations.
//!
//! The image of the ring in `∏ k[t_i]/(t_i^N)` is kept as an echelon basis of
//! row vectors indexed by positions `n·r + i` (order first, branch second).
//! Every dimension question reduces to a rank computation on that basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::lattice::{ExponentVec, LatticeBox};
use crate::provider::CProvider;
use crate::semigroup::ValueSemigroup;

/// Univariate series as `(coefficient, exponent)` terms.
pub type Series = Vec<(BigRational, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// One series per branch.
    pub branches: Vec<Series>,
}

impl Generator {
    pub fn new(name: &str, branches: Vec<Series>) -> Self {
        Generator {
            name: name.to_string(),
            branches,
        }
    }

    /// Generator with integer coefficients, `branches[i] = [(coef, exp), ...]`.
    pub fn from_ints(name: &str, branches: &[&[(i64, u32)]]) -> Self {
        let branches = branches
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&(c, e)| (BigRational::from_integer(c.into()), e))
                    .collect()
            })
            .collect();
        Generator::new(name, branches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    Parametrization {
        field: FieldSpec,
        generators: Vec<Generator>,
    },
    ExplicitSemigroup {
        r: usize,
        conductor: Vec<i64>,
        points: Vec<Vec<i64>>,
    },
}

impl CurveSpec {
    pub fn parametrization(field: FieldSpec, generators: Vec<Generator>) -> Self {
        CurveSpec::Parametrization { field, generators }
    }

    pub fn branches(&self) -> usize {
        match self {
            CurveSpec::Parametrization { generators, .. } => {
                generators.first().map(|g| g.branches.len()).unwrap_or(0)
            }
            CurveSpec::ExplicitSemigroup { r, .. } => *r,
        }
    }

    pub fn check(&self) -> Result<()> {
        match self {
            CurveSpec::Parametrization { field, generators } => {
                let r = self.branches();
                if generators.is_empty() {
                    return Err(Error::DegenerateInput("no generators".into()));
                }
                if r == 0 {
                    return Err(Error::DegenerateInput("generators have no branches".into()));
                }
                for g in generators {
                    if g.branches.len() != r {
                        return Err(Error::Dimension {
                            expected: r,
                            found: g.branches.len(),
                        });
                    }
                }
                field.check(r)
            }
            CurveSpec::ExplicitSemigroup {
                r,
                conductor,
                points,
            } => {
                if conductor.len() != *r {
                    return Err(Error::Dimension {
                        expected: *r,
                        found: conductor.len(),
                    });
                }
                if let Some(p) = points.iter().find(|p| p.len() != *r) {
                    return Err(Error::Dimension {
                        expected: *r,
                        found: p.len(),
                    });
                }
                Ok(())
            }
        }
    }

    /// Default truncation order: `4 · (largest generator order) + 8`.
    pub fn default_order(&self) -> usize {
        match self {
            CurveSpec::Parametrization { generators, .. } => {
                let m = generators.iter().map(|g| g.order()).max().unwrap_or(1);
                4 * m as usize + 8
            }
            CurveSpec::ExplicitSemigroup { .. } => 0,
        }
    }
}

impl Generator {
    /// Largest over branches of the order of the nonconstant part (0 if none).
    fn order(&self) -> u32 {
        self.branches
            .iter()
            .filter_map(|b| {
                b.iter()
                    .filter(|(c, e)| *e > 0 && !c.is_zero())
                    .map(|(_, e)| *e)
                    .min()
            })
            .max()
            .unwrap_or(0)
    }
}

/// Element of `∏ k[t_i]/(t_i^N)`, coefficient of `t_i^n` at position `n·r + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedElement<E> {
    r: usize,
    n: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> TruncatedElement<E> {
    pub fn branches(&self) -> usize {
        self.r
    }

    pub fn order_bound(&self) -> usize {
        self.n
    }

    pub fn get(&self, n: usize, i: usize) -> &E {
        &self.data[n * self.r + i]
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }
}

impl<E: Clone + PartialEq> TruncatedElement<E> {
    fn zero_with<F: Field<Elem = E>>(f: &F, r: usize, n: usize) -> Self {
        TruncatedElement {
            r,
            n,
            data: vec![f.zero(); r * n],
        }
    }

    /// Order per branch, `None` when the component vanishes up to `N`.
    pub fn orders<F: Field<Elem = E>>(&self, f: &F) -> Vec<Option<usize>> {
        (0..self.r)
            .map(|i| (0..self.n).find(|&k| !f.is_zero(self.get(k, i))))
            .collect()
    }

    fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut out = Self::zero_with(f, self.r, self.n);
        for i in 0..self.r {
            for a in 0..self.n {
                let x = self.get(a, i);
                if f.is_zero(x) {
                    continue;
                }
                for b in 0..self.n - a {
                    let y = other.get(b, i);
                    if f.is_zero(y) {
                        continue;
                    }
                    let k = (a + b) * self.r + i;
                    out.data[k] = f.add(&out.data[k], &f.mul(x, y));
                }
            }
        }
        out
    }
}

/// Echelon basis of the truncated image of the local ring.
#[derive(Debug)]
pub struct AlgebraModel<F: Field> {
    field: F,
    r: usize,
    n: usize,
    // pivot position -> row normalized to 1 at the pivot.
    basis: BTreeMap<usize, Vec<F::Elem>>,
    ell_cache: Mutex<HashMap<Vec<i64>, u64>>,
}

impl<F: Field> AlgebraModel<F> {
    /// Saturates `{1}` under multiplication by the generators.
    pub fn build(field: F, generators: &[Generator], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateInput(format!(
                "truncation order {n} is below 2"
            )));
        }
        let r = generators.first().map(|g| g.branches.len()).unwrap_or(0);
        if r == 0 {
            return Err(Error::DegenerateInput("no generators".into()));
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.branches.len() != r {
                return Err(Error::Dimension {
                    expected: r,
                    found: g.branches.len(),
                });
            }
            if let Some(e) = Self::convert(&field, g, r, n)? {
                gens.push(e);
            }
        }
        if gens.is_empty() {
            return Err(Error::DegenerateInput("all generators are constant".into()));
        }
        let mut model = AlgebraModel {
            field,
            r,
            n,
            basis: BTreeMap::new(),
            ell_cache: Mutex::new(HashMap::new()),
        };
        let mut one = TruncatedElement::zero_with(&model.field, r, n);
        for i in 0..r {
            one.data[i] = model.field.one();
        }
        let mut queue = vec![one.data.clone()];
        model.insert(one.data);
        while let Some(b) = queue.pop() {
            let elem = TruncatedElement { r, n, data: b };
            for g in &gens {
                let prod = elem.mul(g, &model.field).data;
                if let Some(row) = model.insert(prod) {
                    queue.push(row);
                }
            }
        }
        Ok(model)
    }

    /// Field image of a generator with its (common) constant term removed.
    fn convert(
        f: &F,
        g: &Generator,
        r: usize,
        n: usize,
    ) -> Result<Option<TruncatedElement<F::Elem>>> {
        let mut full: Vec<BTreeMap<u32, F::Elem>> = vec![BTreeMap::new(); r];
        for (i, series) in g.branches.iter().enumerate() {
            for (c, e) in series {
                let x = f.from_rational(c)?;
                let slot = full[i].entry(*e).or_insert_with(|| f.zero());
                *slot = f.add(slot, &x);
            }
        }
        if full.iter().all(|b| b.values().all(|x| f.is_zero(x))) {
            return Err(Error::DegenerateInput(format!(
                "generator {} is zero",
                g.name
            )));
        }
        let constants: Vec<F::Elem> = full
            .iter()
            .map(|b| b.get(&0).cloned().unwrap_or_else(|| f.zero()))
            .collect();
        if constants.iter().any(|c| c != &constants[0]) {
            return Err(Error::DegenerateInput(format!(
                "generator {} has different constant terms on different branches",
                g.name
            )));
        }
        let mut elem = TruncatedElement::zero_with(f, r, n);
        for (i, b) in full.iter().enumerate() {
            for (&e, x) in b {
                if e > 0 && (e as usize) < n {
                    elem.data[e as usize * r + i] = x.clone();
                }
            }
        }
        let nonconstant = full
            .iter()
            .any(|b| b.iter().any(|(e, x)| *e > 0 && !f.is_zero(x)));
        Ok(nonconstant.then_some(elem))
    }

    fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        for (&p, row) in &self.basis {
            if self.field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for k in p..v.len() {
                if !self.field.is_zero(&row[k]) {
                    v[k] = self.field.sub(&v[k], &self.field.mul(&c, &row[k]));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns the new normalized row if it was independent.
    fn insert(&mut self, v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        let mut v = self.reduce(v);
        let p = v.iter().position(|x| !self.field.is_zero(x))?;
        let inv = self.field.inv(&v[p]);
        for x in v.iter_mut().skip(p) {
            *x = self.field.mul(x, &inv);
        }
        self.basis.insert(p, v.clone());
        Some(v)
    }

    pub fn branches(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Basis rows as truncated elements, in pivot order.
    pub fn basis(&self) -> Vec<TruncatedElement<F::Elem>> {
        self.basis
            .values()
            .map(|row| TruncatedElement {
                r: self.r,
                n: self.n,
                data: row.clone(),
            })
            .collect()
    }

    /// `true` when `v` lies in the span.
    pub fn contains(&self, v: &TruncatedElement<F::Elem>) -> bool {
        self.reduce(v.data.clone())
            .iter()
            .all(|x| self.field.is_zero(x))
    }

    /// Products of basis pairs reduce to zero.
    pub fn is_multiplicatively_closed(&self) -> bool {
        let rows = self.basis();
        rows.iter().enumerate().all(|(k, a)| {
            rows[k..].iter().all(|b| {
                let red = self.reduce(a.mul(b, &self.field).data);
                red.iter().all(|x| self.field.is_zero(x))
            })
        })
    }

    fn check_range(&self, v: &ExponentVec) -> Result<()> {
        if v.len() != self.r {
            return Err(Error::Dimension {
                expected: self.r,
                found: v.len(),
            });
        }
        let limit = self.n as i64 - 2;
        if v.as_slice().iter().any(|&x| x > limit) {
            return Err(Error::TruncationInsufficient {
                order: self.n,
                suggested: 2 * self.n,
            });
        }
        Ok(())
    }

    /// `ℓ(v) = dim O/J(v)`, the rank of the basis on the columns `{(n, i) : n < v_i}`.
    pub fn ell(&self, v: &ExponentVec) -> Result<u64> {
        self.check_range(v)?;
        let key = v.positive_part().into_vec();
        if let Some(&x) = self.ell_cache.lock().expect("cache").get(&key) {
            return Ok(x);
        }
        let cols: Vec<usize> = (0..self.n * self.r)
            .filter(|&p| (p / self.r) < key[p % self.r] as usize)
            .collect();
        let mut rows: Vec<Vec<F::Elem>> = self
            .basis
            .values()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let rank = rank(&self.field, &mut rows, cols.len()) as u64;
        self.ell_cache.lock().expect("cache").insert(key, rank);
        Ok(rank)
    }

    pub fn c_axis(&self, v: &ExponentVec, i: usize) -> Result<u64> {
        if i >= self.r {
            return Err(Error::IndexOutOfRange {
                index: i,
                branches: self.r,
            });
        }
        let up = v.shifted(i, 1);
        let d = self.ell(&up)? - self.ell(v)?;
        debug_assert!(d <= 1);
        Ok(d)
    }

    pub fn c(&self, v: &ExponentVec) -> Result<u64> {
        let up = v + &ExponentVec::ones(self.r);
        Ok(self.ell(&up)? - self.ell(v)?)
    }

    /// `v ∈ S` iff every axis dimension `c(v, i)` is one (needs `|k| > r`).
    pub fn member_value(&self, v: &ExponentVec) -> Result<bool> {
        self.check_range(v)?;
        if !v.is_nonnegative() {
            return Ok(false);
        }
        for i in 0..self.r {
            if self.c_axis(v, i)? == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `d_i` with every `t_i^n` (on branch `i` alone) in the span for `d_i ≤ n < N`.
    fn conductor_candidate(&self) -> ExponentVec {
        let mut d = vec![0i64; self.r];
        for (i, di) in d.iter_mut().enumerate() {
            let mut k = self.n;
            while k > 0 {
                let mut e = vec![self.field.zero(); self.r * self.n];
                e[(k - 1) * self.r + i] = self.field.one();
                if !self.reduce(e).iter().all(|x| self.field.is_zero(x)) {
                    break;
                }
                k -= 1;
            }
            *di = k as i64;
        }
        ExponentVec::new(d)
    }

    /// Conductor and `S ∩ [0, δ]`, certified by `c(v) = r` on the shell `δ ≤ v ≤ δ + 1`.
    pub fn extract_semigroup(&self) -> Result<ValueSemigroup> {
        if let Some(size) = self.field.size() {
            if size <= self.r as u64 {
                return Err(Error::Field(format!(
                    "field of {size} elements is too small for {} branches",
                    self.r
                )));
            }
        }
        let delta = self.conductor_candidate();
        let insufficient = Error::TruncationInsufficient {
            order: self.n,
            suggested: 2 * self.n,
        };
        if delta.as_slice().iter().any(|&d| d + 3 > self.n as i64 - 2) {
            return Err(insufficient);
        }
        let r = self.r as u64;
        let shell = LatticeBox::new(delta.clone(), &delta + &ExponentVec::ones(self.r));
        for v in shell.points() {
            if self.c(&v)? != r {
                return Err(insufficient);
            }
        }
        let bx = LatticeBox::from_origin(delta.clone());
        bx.check_size()?;
        let mut points = Vec::new();
        for v in bx.points() {
            if self.member_value(&v)? {
                points.push(v);
            }
        }
        ValueSemigroup::validate(self.r, delta, &points)
    }
}

/// Rank by Gaussian elimination (destroys `rows`).
fn rank<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&k| !f.is_zero(&rows[k][col])) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = f.inv(&rows[rank][col]);
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if f.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for k in col..ncols {
                if !f.is_zero(&pivot[k]) {
                    row[k] = f.sub(&row[k], &f.mul(&c, &pivot[k]));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Ring model over either supported field.
#[derive(Debug)]
pub enum AnyModel {
    Rational(AlgebraModel<Rationals>),
    Prime(AlgebraModel<PrimeField>),
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $e:expr) => {
        match $self {
            AnyModel::Rational($m) => $e,
            AnyModel::Prime($m) => $e,
        }
    };
}

impl AnyModel {
    pub fn build(field: FieldSpec, generators: &[Generator], n: usize) -> Result<Self> {
        match field {
            FieldSpec::Rational => Ok(AnyModel::Rational(AlgebraModel::build(
                Rationals, generators, n,
            )?)),
            FieldSpec::Prime(p) => Ok(AnyModel::Prime(AlgebraModel::build(
                PrimeField::new(p)?,
                generators,
                n,
            )?)),
        }
    }

    pub fn branches(&self) -> usize {
        dispatch!(self, m => m.branches())
    }

    pub fn order(&self) -> usize {
        dispatch!(self, m => m.order())
    }

    pub fn dimension(&self) -> usize {
        dispatch!(self, m => m.dimension())
    }

    pub fn ell(&self, v: &ExponentVec) -> Result<u64> {
        dispatch!(self, m => m.ell(v))
    }

    pub fn c(&self, v: &ExponentVec) -> Result<u64> {
        dispatch!(self, m => m.c(v))
    }

    pub fn c_axis(&self, v: &ExponentVec, i: usize) -> Result<u64> {
        dispatch!(self, m => m.c_axis(v, i))
    }

    pub fn member_value(&self, v: &ExponentVec) -> Result<bool> {
        dispatch!(self, m => m.member_value(v))
    }

    pub fn extract_semigroup(&self) -> Result<ValueSemigroup> {
        dispatch!(self, m => m.extract_semigroup())
    }

    pub fn is_multiplicatively_closed(&self) -> bool {
        dispatch!(self, m => m.is_multiplicatively_closed())
    }
}

/// Ring model together with its extracted semigroup.
#[derive(Debug)]
pub struct CurveModel {
    model: AnyModel,
    semigroup: ValueSemigroup,
}

/// Truncation orders above this are not attempted.
pub const MAX_ORDER: usize = 512;

impl CurveModel {
    /// Builds the model, doubling `N` until the conductor is certified.
    pub fn build(spec: &CurveSpec, hint: Option<usize>) -> Result<Self> {
        spec.check()?;
        let CurveSpec::Parametrization { field, generators } = spec else {
            return Err(Error::DegenerateInput(
                "ring model needs a parametrization".into(),
            ));
        };
        let mut n = hint.unwrap_or_else(|| spec.default_order()).max(2);
        loop {
            let model = AnyModel::build(*field, generators, n)?;
            match model.extract_semigroup() {
                Ok(semigroup) => return Ok(CurveModel { model, semigroup }),
                Err(Error::TruncationInsufficient { .. }) if 2 * n <= MAX_ORDER => n *= 2,
                Err(Error::TruncationInsufficient { .. }) => {
                    return Err(Error::TruncationInsufficient {
                        order: n,
                        suggested: 2 * n,
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }

    pub fn model(&self) -> &AnyModel {
        &self.model
    }

    pub fn semigroup(&self) -> &ValueSemigroup {
        &self.semigroup
    }

    pub fn order(&self) -> usize {
        self.model.order()
    }
}

impl CProvider for CurveModel {
    fn branches(&self) -> usize {
        self.model.branches()
    }

    fn conductor(&self) -> &ExponentVec {
        self.semigroup.conductor()
    }

    fn ell(&self, v: &ExponentVec) -> Result<u64> {
        self.model.ell(v)
    }

    fn c_axis(&self, v: &ExponentVec, i: usize) -> Result<u64> {
        self.model.c_axis(v, i)
    }

    fn semigroup(&self) -> &ValueSemigroup {
        &self.semigroup
    }

    fn label(&self) -> &'static str {
        "ring-model"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ev(v: &[i64]) -> ExponentVec {
        ExponentVec::from(v)
    }

    fn prime_model(spec: &CurveSpec, n: usize) -> AnyModel {
        let CurveSpec::Parametrization { generators, .. } = spec else {
            unreachable!()
        };
        AnyModel::build(FieldSpec::default(), generators, n).unwrap()
    }

    #[test]
    fn build_examples() {
        let m = prime_model(&corpus::cusp(), 10);
        assert_eq!(m.dimension(), 9);
        let m = prime_model(&corpus::node(), 5);
        assert_eq!(m.dimension(), 9);
        assert!(m.is_multiplicatively_closed());
        let zero = Generator::from_ints("x", &[&[(0, 1)]]);
        let err = AnyModel::build(FieldSpec::Rational, &[zero], 8).unwrap_err();
        assert!(matches!(err, Error::DegenerateInput(_)));
    }

    #[test]
    fn dimension_examples() {
        let node = prime_model(&corpus::node(), 10);
        assert_eq!(node.ell(&ev(&[1, 1])).unwrap(), 1);
        assert_eq!(node.ell(&ev(&[0, 0])).unwrap(), 0);
        assert_eq!(node.c(&ev(&[0, 0])).unwrap(), 1);
        assert_eq!(node.c(&ev(&[1, 1])).unwrap(), 2);
        assert_eq!(node.c_axis(&ev(&[1, 1]), 1).unwrap(), 1);
        assert_eq!(node.c_axis(&ev(&[1, 0]), 1).unwrap(), 0);
        assert!(node.member_value(&ev(&[1, 1])).unwrap());
        assert!(!node.member_value(&ev(&[1, 0])).unwrap());
        assert!(node.member_value(&ev(&[0, 0])).unwrap());
        let cusp = prime_model(&corpus::cusp(), 12);
        assert_eq!(cusp.ell(&ev(&[4])).unwrap(), 3);
        assert_eq!(cusp.c(&ev(&[1])).unwrap(), 0);
        let tac = prime_model(&corpus::tacnode(), 12);
        assert!(tac.member_value(&ev(&[1, 1])).unwrap());
        assert!(!tac.member_value(&ev(&[2, 1])).unwrap());
        let smooth = prime_model(&corpus::smooth(), 12);
        for k in 0..6 {
            assert_eq!(smooth.c_axis(&ev(&[k]), 0).unwrap(), 1);
        }
    }

    #[test]
    fn guard_margin() {
        let m = prime_model(&corpus::cusp(), 10);
        assert!(m.ell(&ev(&[8])).is_ok());
        assert_eq!(
            m.ell(&ev(&[9])).unwrap_err(),
            Error::TruncationInsufficient {
                order: 10,
                suggested: 20
            }
        );
    }

    #[test]
    fn extraction_examples() {
        let s = CurveModel::build(&corpus::cusp(), None).unwrap();
        assert_eq!(s.semigroup().raw(), (1, vec![2], vec![vec![0], vec![2]]));
        let s = CurveModel::build(&corpus::node(), None).unwrap();
        assert_eq!(
            s.semigroup().raw(),
            (2, vec![1, 1], vec![vec![0, 0], vec![1, 1]])
        );
        let s = CurveModel::build(&corpus::smooth(), None).unwrap();
        assert_eq!(s.semigroup().raw(), (1, vec![0], vec![vec![0]]));
        let s = CurveModel::build(&corpus::e4613(), None).unwrap();
        assert_eq!(s.semigroup().conductor(), &ev(&[16]));
    }

    #[test]
    fn retry_from_small_hint() {
        let s = CurveModel::build(&corpus::e4613(), Some(6)).unwrap();
        assert_eq!(s.semigroup().conductor(), &ev(&[16]));
        assert!(s.order() >= 21);
    }

    #[test]
    fn rational_and_prime_agree() {
        for spec in corpus::all() {
            let CurveSpec::Parametrization { generators, .. } = &spec.1 else {
                continue;
            };
            let q = AnyModel::build(FieldSpec::Rational, generators, 24).unwrap();
            let p = AnyModel::build(FieldSpec::default(), generators, 24).unwrap();
            assert_eq!(q.dimension(), p.dimension(), "{}", spec.0);
            let r = q.branches();
            for v in LatticeBox::new(ExponentVec::splat(r, -1), ExponentVec::splat(r, 6)).points() {
                assert_eq!(q.ell(&v).unwrap(), p.ell(&v).unwrap(), "{} {v}", spec.0);
            }
        }
    }

    #[test]
    fn constant_terms() {
        let x = Generator::from_ints("x", &[&[(1, 0), (1, 2)]]);
        let y = Generator::from_ints("y", &[&[(3, 3)]]);
        let spec = CurveSpec::parametrization(FieldSpec::Rational, vec![x, y]);
        let m = CurveModel::build(&spec, None).unwrap();
        assert_eq!(m.semigroup().conductor(), &ev(&[2]));
        let x = Generator::from_ints("x", &[&[(1, 0), (1, 1)], &[(1, 1)]]);
        let y = Generator::from_ints("y", &[&[], &[(1, 1)]]);
        let spec = CurveSpec::parametrization(FieldSpec::Rational, vec![x, y]);
        assert!(matches!(
            CurveModel::build(&spec, None),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn non_reduced_input_fails_to_certify() {
        let x = Generator::from_ints("x", &[&[(1, 2)]]);
        let y = Generator::from_ints("y", &[&[(1, 4)]]);
        let spec = CurveSpec::parametrization(FieldSpec::default(), vec![x, y]);
        assert!(matches!(
            CurveModel::build(&spec, None),
            Err(Error::TruncationInsufficient { .. })
        ));
    }
}
