//! Exact coefficient rings and sparse multivariate (Laurent) polynomials.
//!
//! A [`MultiPoly`] is either an exact polynomial or a truncated series. A
//! truncated series carries a [`Window`]: its coefficients are exact on the
//! window box and unknown outside it. Products of truncated objects shrink the
//! window to the region that is still determined by the factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{ExponentVec, LatticeBox};

/// Stand-in for `+∞` in window upper corners.
pub const UNBOUNDED: i64 = 1 << 40;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= UNBOUNDED || b >= UNBOUNDED {
        UNBOUNDED
    } else {
        (a + b).min(UNBOUNDED)
    }
}

/// Exact coefficient ring used by [`MultiPoly`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Integer Laurent polynomial in the single symbol `Q` (the inverse Lefschetz class).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = QLaurent::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// `Q^e`.
    pub fn q_pow(e: i64) -> Self {
        QLaurent::monomial(e, BigInt::from(1))
    }

    pub fn monomial(e: i64, c: BigInt) -> Self {
        QLaurent::from_terms([(e, c)])
    }

    pub fn constant(c: i64) -> Self {
        QLaurent::monomial(0, BigInt::from(c))
    }

    /// `Q^start + Q^{start+1} + … + Q^{start+count-1}`; zero when `count == 0`.
    pub fn geometric(start: i64, count: u64) -> Self {
        QLaurent::from_terms((0..count as i64).map(|k| (start + k, BigInt::from(1))))
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(e)
            .or_insert_with(<BigInt as Coefficient>::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `Q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Image under `Q ↦ 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QLaurent::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Exact quotient in `Z[Q, Q⁻¹]`.
    pub fn exact_div(&self, divisor: &QLaurent) -> Result<QLaurent> {
        let (dmin, dmax) = match (divisor.min_exponent(), divisor.max_exponent()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Divisibility("division by zero".into())),
        };
        if self.terms.is_empty() {
            return Ok(QLaurent::default());
        }
        let lead = divisor.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = QLaurent::default();
        // Long division on the top degree; the remainder can only stay exact
        // while its span is at least the divisor's span.
        while let (Some(rmin), Some(rmax)) = (rem.min_exponent(), rem.max_exponent()) {
            if rmax - rmin < dmax - dmin {
                return Err(Error::Divisibility(format!(
                    "{self} is not divisible by {divisor}"
                )));
            }
            let top = rem.coeff(rmax);
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::Divisibility(format!(
                    "{self} is not divisible by {divisor}"
                )));
            }
            let e = rmax - dmax;
            let step = QLaurent::monomial(e, q);
            rem = rem.sub_ref(&step.mul_ref(divisor));
            quot = quot.add_ref(&step);
        }
        Ok(quot)
    }
}

impl Coefficient for QLaurent {
    fn zero() -> Self {
        QLaurent::default()
    }
    fn one() -> Self {
        QLaurent::constant(1)
    }
    fn from_i64(n: i64) -> Self {
        QLaurent::constant(n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = QLaurent::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, sym: &str, e: i64) -> fmt::Result {
    match e {
        1 => write!(f, "{sym}"),
        _ => write!(f, "{sym}^{e}"),
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != BigInt::from(1) {
                    write!(f, "{mag}*")?;
                }
                fmt_power(f, "Q", *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

/// Certified region of a truncated series.
///
/// Coefficients are exact on `[lo, hi]`. When `bounded_below` holds, the
/// series additionally has no terms outside the orthant `v ≥ lo`, which is
/// what makes products of truncated series certifiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: ExponentVec,
    pub hi: ExponentVec,
    pub bounded_below: bool,
}

impl Window {
    pub fn new(lo: ExponentVec, hi: ExponentVec, bounded_below: bool) -> Self {
        Window {
            lo,
            hi,
            bounded_below,
        }
    }

    pub fn from_box(bx: &LatticeBox, bounded_below: bool) -> Self {
        Window::new(bx.lo.clone(), bx.hi.clone(), bounded_below)
    }

    pub fn as_box(&self) -> LatticeBox {
        LatticeBox::new(self.lo.clone(), self.hi.clone())
    }

    /// Whether every coefficient in `bx` is known. Below `lo` a series that is
    /// bounded below is known to vanish.
    pub fn covers(&self, bx: &LatticeBox) -> bool {
        bx.is_empty() || ((self.bounded_below || self.lo.le(&bx.lo)) && bx.hi.le(&self.hi))
    }
}

/// Which value a variable is specialized to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Zero,
    One,
}

/// Sparse polynomial (or truncated series) in `nvars` variables with Laurent exponents.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<ExponentVec, C>,
    window: Option<Window>,
}

/// Polynomial with integer coefficients.
pub type IntPoly = MultiPoly<BigInt>;

/// First coefficient at which two series disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub at: ExponentVec,
    pub expected: C,
    pub actual: C,
}

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
            window: None,
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        MultiPoly::monomial(ExponentVec::zeros(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, C::one())
    }

    pub fn monomial(exp: ExponentVec, c: C) -> Self {
        let mut p = MultiPoly::zero(exp.len());
        p.add_term(exp, &c);
        p
    }

    /// The variable `t_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        MultiPoly::monomial(ExponentVec::unit(nvars, i), C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (ExponentVec, C)>>(nvars: usize, terms: I) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent of wrong length");
            p.add_term(e, &c);
        }
        p
    }

    /// Adds `c·t^exp` in place, pruning zeros.
    pub fn add_term(&mut self, exp: ExponentVec, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot = slot.add_ref(c);
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &ExponentVec) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn window(&self) -> Option<&Window> {
        self.window.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.window.is_none()
    }

    /// Declares `self` a truncated series known exactly on `window`; terms outside are clipped.
    pub fn truncated(mut self, window: Window) -> Self {
        let bx = window.as_box();
        self.terms.retain(|e, _| bx.contains(e));
        self.window = Some(window);
        self
    }

    /// Drops the window, asserting the caller has certified the object is a polynomial.
    pub fn into_exact(mut self) -> Self {
        self.window = None;
        self
    }

    /// Componentwise minimum and maximum exponent of the stored terms.
    pub fn support_bounds(&self) -> Option<(ExponentVec, ExponentVec)> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for e in it {
            lo = lo.meet(e);
            hi = hi.join(e);
        }
        Some((lo, hi))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn join_windows(a: Option<&Window>, b: Option<&Window>) -> Option<Window> {
        match (a, b) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w.clone()),
            (Some(x), Some(y)) => Some(Window::new(
                x.lo.meet(&y.lo),
                x.hi.meet(&y.hi),
                x.bounded_below && y.bounded_below,
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out.window = None;
        Ok(match Self::join_windows(self.window(), other.window()) {
            Some(w) => out.truncated(w),
            None => out,
        })
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
            window: self.window.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &x.mul_ref(c));
        }
        out.window = self.window.clone();
        out
    }

    /// Lower support bound and certified upper corner used for products.
    fn product_extent(&self) -> Result<Option<(ExponentVec, ExponentVec)>> {
        match &self.window {
            Some(w) if !w.bounded_below => Err(Error::Truncated(
                "product of a series that is not bounded below".into(),
            )),
            Some(w) => Ok(Some((w.lo.clone(), w.hi.clone()))),
            None => Ok(self
                .support_bounds()
                .map(|(lo, _)| (lo, ExponentVec::splat(self.nvars, UNBOUNDED)))),
        }
    }

    /// Ring product; with truncated factors the result is certified on the
    /// region determined by both factors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if (self.is_exact() && self.is_zero()) || (other.is_exact() && other.is_zero()) {
            return Ok(MultiPoly::zero(self.nvars));
        }
        let window = if self.is_exact() && other.is_exact() {
            None
        } else {
            match (self.product_extent()?, other.product_extent()?) {
                (Some((alo, ahi)), Some((blo, bhi))) => {
                    let hi: Vec<i64> = (0..self.nvars)
                        .map(|k| sat_add(ahi[k], blo[k]).min(sat_add(bhi[k], alo[k])))
                        .collect();
                    Some(Window::new(&alo + &blo, hi.into(), true))
                }
                // An empty truncated factor: the product is known to vanish on its window.
                _ => {
                    let w = self
                        .window()
                        .or(other.window())
                        .cloned()
                        .expect("one window");
                    return Ok(MultiPoly::zero(self.nvars).truncated(w));
                }
            }
        };
        let mut out = MultiPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &x.mul_ref(y));
            }
        }
        Ok(match window {
            Some(w) => out.truncated(w),
            None => out,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `t_i := 0` or `t_i := 1`, eliminating the variable.
    pub fn specialize(&self, i: usize, value: Unit) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                branches: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars - 1);
        match value {
            Unit::One => {
                if !self.is_exact() {
                    return Err(Error::Truncated(format!(
                        "cannot set t{} = 1 in a truncated series",
                        i + 1
                    )));
                }
                for (e, c) in &self.terms {
                    out.add_term(e.remove(i), c);
                }
            }
            Unit::Zero => {
                for (e, c) in &self.terms {
                    match e[i] {
                        0 => out.add_term(e.remove(i), c),
                        n if n < 0 => {
                            return Err(Error::DegenerateInput(format!(
                                "negative exponent of t{} cannot be evaluated at 0",
                                i + 1
                            )))
                        }
                        _ => {}
                    }
                }
                if let Some(w) = &self.window {
                    let shrunk = Window::new(w.lo.remove(i), w.hi.remove(i), w.bounded_below);
                    out = out.truncated(shrunk);
                }
            }
        }
        Ok(out)
    }

    /// Specializes every variable outside `keep` to one, keeping the order of `keep`.
    pub fn specialize_except(&self, keep: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for i in (0..self.nvars).rev() {
            if !keep.contains(&i) {
                out = out.specialize(i, Unit::One)?;
            }
        }
        Ok(out)
    }

    /// Re-indexes variable `k` as variable `positions[k]` of an `r`-variable ring.
    pub fn embed(&self, positions: &[usize], r: usize) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut out = MultiPoly::zero(r);
        for (e, c) in &self.terms {
            out.add_term(e.embed(positions, r), c);
        }
        if let Some(w) = &self.window {
            let lo = w.lo.embed(positions, r);
            let mut hi = ExponentVec::splat(r, UNBOUNDED);
            for (k, &p) in positions.iter().enumerate() {
                hi = hi.with(p, w.hi[k]);
            }
            out = out.truncated(Window::new(lo, hi, w.bounded_below));
        }
        out
    }

    /// Replaces every exponent `v` by `delta - v` and multiplies by `(-1)^r`.
    pub fn reciprocal_transform(&self, delta: &ExponentVec) -> Result<Self> {
        if delta.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: delta.len(),
            });
        }
        if !self.is_exact() {
            return Err(Error::Truncated("reciprocal transform".into()));
        }
        let sign = if self.nvars.is_multiple_of(2) {
            C::one()
        } else {
            C::one().neg_ref()
        };
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(delta - e, &c.mul_ref(&sign));
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out.window = self.window.clone();
        out
    }

    /// Keeps only the terms satisfying `pred`; the window is unchanged.
    pub fn filter_terms(&self, pred: impl Fn(&ExponentVec) -> bool) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| pred(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            window: self.window.clone(),
        }
    }

    fn known_on(&self, bx: &LatticeBox) -> bool {
        match &self.window {
            None => true,
            Some(w) => w.covers(bx),
        }
    }

    /// Compares coefficients on `bx`; both operands must be certified there.
    pub fn first_difference_on(
        &self,
        other: &Self,
        bx: &LatticeBox,
    ) -> Result<Option<Mismatch<C>>> {
        self.check_same(other)?;
        for (name, p) in [("left", self), ("right", other)] {
            if !p.known_on(bx) {
                return Err(Error::WindowTooSmall(format!(
                    "{name} operand window {:?} does not cover [{}, {}]",
                    p.window.as_ref().map(|w| (&w.lo, &w.hi)),
                    bx.lo,
                    bx.hi
                )));
            }
        }
        let mut keys: Vec<&ExponentVec> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|e| bx.contains(e))
            .collect();
        keys.sort();
        keys.dedup();
        for e in keys {
            let (a, b) = (self.coeff(e), other.coeff(e));
            if a != b {
                return Ok(Some(Mismatch {
                    at: e.clone(),
                    expected: a,
                    actual: b,
                }));
            }
        }
        Ok(None)
    }

    /// Exact comparison of two polynomials; the first mismatch if any.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Mismatch<C>>> {
        self.check_same(other)?;
        if !self.is_exact() || !other.is_exact() {
            return Err(Error::Truncated(
                "exact comparison of a truncated series".into(),
            ));
        }
        let mut keys: Vec<&ExponentVec> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for e in keys {
            let (a, b) = (self.coeff(e), other.coeff(e));
            if a != b {
                return Ok(Some(Mismatch {
                    at: e.clone(),
                    expected: a,
                    actual: b,
                }));
            }
        }
        Ok(None)
    }
}

impl MultiPoly<BigInt> {
    /// `∏_{i} (t_i - 1)`.
    pub fn product_t_minus_one(nvars: usize) -> Self {
        let mut acc = MultiPoly::one(nvars);
        for i in 0..nvars {
            let f = MultiPoly::var(nvars, i)
                .sub(&MultiPoly::one(nvars))
                .expect("same r");
            acc = acc.mul(&f).expect("exact");
        }
        acc
    }

    /// `t_1⋯t_r - 1`.
    pub fn diagonal_minus_one(nvars: usize) -> Self {
        MultiPoly::from_terms(
            nvars,
            [
                (ExponentVec::ones(nvars), BigInt::from(1)),
                (ExponentVec::zeros(nvars), BigInt::from(-1)),
            ],
        )
    }

    /// `1 - t^exp`.
    pub fn one_minus_monomial(exp: ExponentVec) -> Self {
        let n = exp.len();
        MultiPoly::one(n)
            .sub(&MultiPoly::monomial(exp, BigInt::from(1)))
            .expect("same r")
    }

    /// Exact quotient of univariate polynomials with non-negative exponents.
    pub fn div_exact_univariate(&self, divisor: &Self) -> Result<Self> {
        if self.nvars != 1 || divisor.nvars != 1 {
            return Err(Error::Dimension {
                expected: 1,
                found: self.nvars.max(divisor.nvars),
            });
        }
        if !self.is_exact() || !divisor.is_exact() {
            return Err(Error::Truncated("univariate division".into()));
        }
        let dense = |p: &Self| -> Result<Vec<BigInt>> {
            let Some((lo, hi)) = p.support_bounds() else {
                return Ok(vec![]);
            };
            if lo[0] < 0 {
                return Err(Error::Divisibility(
                    "negative exponents in univariate division".into(),
                ));
            }
            let mut v = vec![<BigInt as Coefficient>::zero(); hi[0] as usize + 1];
            for (e, c) in p.terms() {
                v[e[0] as usize] = c.clone();
            }
            Ok(v)
        };
        let mut rem = dense(self)?;
        let div = dense(divisor)?;
        if div.is_empty() {
            return Err(Error::Divisibility("division by zero".into()));
        }
        let dlen = div.len();
        let lead = div[dlen - 1].clone();
        if rem.len() < dlen {
            return if rem.iter().all(|c| c.is_zero()) {
                Ok(MultiPoly::zero(1))
            } else {
                Err(Error::Divisibility(format!(
                    "{self} is not divisible by {divisor}"
                )))
            };
        }
        let mut quot = vec![<BigInt as Coefficient>::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::Divisibility(format!(
                    "{self} is not divisible by {divisor}"
                )));
            }
            for (j, d) in div.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Divisibility(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        Ok(MultiPoly::from_terms(
            1,
            quot.into_iter()
                .enumerate()
                .map(|(k, c)| (ExponentVec::new(vec![k as i64]), c)),
        ))
    }

    /// Value at `t = (1, …, 1)`.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl MultiPoly<QLaurent> {
    /// Image under `Q ↦ 1`.
    pub fn eval_q_at_one(&self) -> MultiPoly<BigInt> {
        self.map_coeffs(QLaurent::eval_at_one)
    }

    /// Lifts an integer polynomial to constant `Q`-coefficients.
    pub fn from_integer(p: &MultiPoly<BigInt>) -> Self {
        p.map_coeffs(|c| QLaurent::monomial(0, c.clone()))
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", i + 1)
    }
}

/// Monomial in the `t` variables, e.g. `t1^2*t2`; empty for the constant monomial.
pub fn monomial_string(e: &ExponentVec) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.as_slice().iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(var_name(e.len(), i)),
            _ => parts.push(format!("{}^{a}", var_name(e.len(), i))),
        }
    }
    parts.join("*")
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono = monomial_string(e);
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if mono.is_empty() {
                if mag.contains(' ') {
                    format!("({mag})")
                } else {
                    mag
                }
            } else if mag == "1" {
                mono
            } else if mag.contains(' ') {
                format!("({mag})*{mono}")
            } else {
                format!("{mag}*{mono}")
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        if let Some(w) = &self.window {
            write!(f, " + O(window {}..{})", w.lo, w.hi)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.nvars)
    }
}

/// Builds an integer polynomial from `(coefficient, exponents)` pairs.
pub fn int_poly(nvars: usize, terms: &[(i64, &[i64])]) -> MultiPoly<BigInt> {
    MultiPoly::from_terms(
        nvars,
        terms
            .iter()
            .map(|(c, e)| (ExponentVec::from(*e), BigInt::from(*c))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1(terms: &[(i64, i64)]) -> MultiPoly<BigInt> {
        MultiPoly::from_terms(
            1,
            terms
                .iter()
                .map(|(c, e)| (ExponentVec::new(vec![*e]), BigInt::from(*c))),
        )
    }

    #[test]
    fn difference_of_squares() {
        let a = p1(&[(1, 0), (1, 1)]);
        let b = p1(&[(1, 0), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), p1(&[(1, 0), (-1, 2)]));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let p = int_poly(2, &[(3, &[1, 0]), (-2, &[0, 4])]);
        let s = p.add(&p.neg()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn tacnode_product() {
        let a = int_poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let b = int_poly(2, &[(1, &[0, 0]), (1, &[1, 1])]);
        assert_eq!(
            a.mul(&b).unwrap(),
            int_poly(2, &[(1, &[2, 2]), (-1, &[0, 0])])
        );
    }

    #[test]
    fn dimension_mismatch() {
        let a = MultiPoly::<BigInt>::one(1);
        let b = MultiPoly::<BigInt>::one(2);
        assert!(matches!(a.add(&b), Err(Error::Dimension { .. })));
        assert!(matches!(a.mul(&b), Err(Error::Dimension { .. })));
    }

    #[test]
    fn specialization_examples() {
        let node = int_poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]);
        assert_eq!(
            node.specialize(1, Unit::One).unwrap(),
            p1(&[(1, 1), (-1, 0)])
        );
        let five = MultiPoly::constant(3, BigInt::from(5));
        assert_eq!(
            five.specialize(2, Unit::One).unwrap(),
            MultiPoly::constant(2, BigInt::from(5))
        );
        let q = int_poly(2, &[(1, &[0, 0]), (1, &[1, 1])]);
        assert_eq!(q.specialize(1, Unit::Zero).unwrap(), p1(&[(1, 0)]));
        assert!(matches!(
            q.specialize(2, Unit::One),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn reciprocal_examples() {
        let node = int_poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let rt = node.reciprocal_transform(&ExponentVec::ones(2)).unwrap();
        assert!(node.add(&rt).unwrap().is_zero());
        let cusp = p1(&[(-1, 0), (1, 1), (-1, 2)]);
        let rt = cusp
            .reciprocal_transform(&ExponentVec::new(vec![2]))
            .unwrap();
        assert_eq!(rt, cusp.neg());
        let c = MultiPoly::constant(2, BigInt::from(7));
        assert_eq!(c.reciprocal_transform(&ExponentVec::zeros(2)).unwrap(), c);
    }

    #[test]
    fn qlaurent_examples() {
        let c = 5;
        let num = QLaurent::one().sub_ref(&QLaurent::q_pow(c));
        let den = QLaurent::one().sub_ref(&QLaurent::q_pow(1));
        assert_eq!(
            num.exact_div(&den).unwrap(),
            QLaurent::geometric(0, c as u64)
        );
        assert_eq!(
            QLaurent::q_pow(1).mul_ref(&QLaurent::q_pow(-1)),
            QLaurent::one()
        );
        let bad = QLaurent::one().add_ref(&QLaurent::q_pow(2));
        assert!(matches!(bad.exact_div(&den), Err(Error::Divisibility(_))));
        // Laurent shift on both sides.
        let a = QLaurent::q_pow(-3).mul_ref(&num);
        assert_eq!(
            a.exact_div(&den.shift(-1)).unwrap(),
            QLaurent::geometric(-2, 5)
        );
    }

    #[test]
    fn truncated_product_window() {
        // (1 - t) · Σ_{n ≤ 5} t^n is certified up to 5 and equals 1 there.
        let geo = p1(&[(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5)]).truncated(Window::new(
            ExponentVec::new(vec![0]),
            ExponentVec::new(vec![5]),
            true,
        ));
        let f = p1(&[(1, 0), (-1, 1)]);
        let prod = f.mul(&geo).unwrap();
        assert_eq!(prod.window().unwrap().hi, ExponentVec::new(vec![5]));
        let bx = LatticeBox::from_origin(ExponentVec::new(vec![5]));
        assert_eq!(
            prod.first_difference_on(&MultiPoly::one(1), &bx).unwrap(),
            None
        );
        // Multiplying by t shifts the certified window.
        let t = p1(&[(1, 1)]);
        assert_eq!(
            t.mul(&geo).unwrap().window().unwrap().hi,
            ExponentVec::new(vec![6])
        );
        assert!(matches!(
            geo.specialize(0, Unit::One),
            Err(Error::Truncated(_))
        ));
    }

    #[test]
    fn univariate_division() {
        let q = p1(&[(1, 0), (-2, 1), (1, 2)]);
        let d = p1(&[(1, 0), (-1, 1)]);
        assert_eq!(q.div_exact_univariate(&d).unwrap(), d);
        assert!(p1(&[(1, 0), (1, 2)]).div_exact_univariate(&d).is_err());
    }

    #[test]
    fn display_is_graded_lex() {
        let p = int_poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]);
        assert_eq!(p.to_string(), "-1 + t1*t2");
        let q = p1(&[(-1, 0), (1, 1), (-1, 2)]);
        assert_eq!(q.to_string(), "-1 + t - t^2");
        let m = MultiPoly::from_terms(
            1,
            [
                (ExponentVec::new(vec![0]), QLaurent::one()),
                (ExponentVec::new(vec![1]), QLaurent::q_pow(1).neg_ref()),
                (
                    ExponentVec::new(vec![2]),
                    QLaurent::q_pow(1).add_ref(&QLaurent::q_pow(2)),
                ),
            ],
        );
        assert_eq!(m.to_string(), "1 - Q*t + (Q + Q^2)*t^2");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly<BigInt>> {
        prop::collection::vec((-3i64..=3, prop::collection::vec(-1i64..=3, nvars)), 0..5).prop_map(
            move |ts| {
                MultiPoly::from_terms(
                    nvars,
                    ts.into_iter()
                        .map(|(c, e)| (ExponentVec::new(e), BigInt::from(c))),
                )
            },
        )
    }

    fn arb_q() -> impl Strategy<Value = QLaurent> {
        prop::collection::vec((-3i64..=3, -4i64..=4), 0..4)
            .prop_map(|ts| QLaurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&MultiPoly::one(2)).unwrap(), a.clone());
        }

        #[test]
        fn q_ring_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&QLaurent::one()), a.clone());
            if !b.is_zero() {
                prop_assert_eq!(a.mul_ref(&b).exact_div(&b).unwrap(), a.clone());
            }
        }

        #[test]
        fn reciprocal_is_involution(a in arb_poly(3), d in prop::collection::vec(0i64..4, 3)) {
            let d = ExponentVec::new(d);
            prop_assert_eq!(a.reciprocal_transform(&d).unwrap().reciprocal_transform(&d).unwrap(), a);
        }

        #[test]
        fn specialization_is_homomorphism(a in arb_poly(3), b in arb_poly(3), i in 0usize..3) {
            let s = |p: &MultiPoly<BigInt>| p.specialize(i, Unit::One).unwrap();
            prop_assert_eq!(s(&a.mul(&b).unwrap()), s(&a).mul(&s(&b)).unwrap());
            prop_assert_eq!(s(&a.add(&b).unwrap()), s(&a).add(&s(&b)).unwrap());
        }
    }
}
