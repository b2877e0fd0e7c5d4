//! Integer lattice points, branch subsets and lattice boxes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};

/// Default cap on the number of points of any lattice box we sweep.
pub const DEFAULT_MAX_BOX: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_BOX`].
pub const MAX_BOX_ENV: &str = "SEMICURVE_MAX_BOX";

/// Effective box-size cap, honouring `SEMICURVE_MAX_BOX`.
pub fn max_box_points() -> u128 {
    std::env::var(MAX_BOX_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BOX)
}

/// A point of `Z^r`, used both as a value vector and as an exponent vector.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVec(Vec<i64>);

impl ExponentVec {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVec(coords)
    }

    pub fn zeros(r: usize) -> Self {
        ExponentVec(vec![0; r])
    }

    pub fn ones(r: usize) -> Self {
        ExponentVec(vec![1; r])
    }

    pub fn splat(r: usize, value: i64) -> Self {
        ExponentVec(vec![value; r])
    }

    /// The `i`-th canonical basis vector.
    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        ExponentVec(v)
    }

    /// Sum of the basis vectors indexed by `set`.
    pub fn indicator(r: usize, set: BranchSet) -> Self {
        ExponentVec((0..r).map(|i| set.contains(i) as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self < other` in every coordinate.
    pub fn lt_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    pub fn join(&self, other: &Self) -> Self {
        ExponentVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn meet(&self, other: &Self) -> Self {
        ExponentVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Componentwise `max(v, 0)`.
    pub fn positive_part(&self) -> Self {
        ExponentVec(self.0.iter().map(|a| (*a).max(0)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| *a >= 0)
    }

    pub fn with(&self, i: usize, value: i64) -> Self {
        let mut v = self.0.clone();
        v[i] = value;
        ExponentVec(v)
    }

    pub fn shifted(&self, i: usize, by: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += by;
        ExponentVec(v)
    }

    /// Coordinates listed in `keep`, in that order.
    pub fn select(&self, keep: &[usize]) -> Self {
        ExponentVec(keep.iter().map(|&i| self.0[i]).collect())
    }

    /// Places the coordinates of `self` at positions `positions` of a zero vector of length `r`.
    pub fn embed(&self, positions: &[usize], r: usize) -> Self {
        let mut v = vec![0; r];
        for (k, &p) in positions.iter().enumerate() {
            v[p] = self.0[k];
        }
        ExponentVec(v)
    }

    pub fn remove(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        ExponentVec(v)
    }

    pub fn neg(&self) -> Self {
        ExponentVec(self.0.iter().map(|a| -a).collect())
    }

    /// Support pattern `{i : v_i > 0}`.
    pub fn positive_support(&self) -> BranchSet {
        let mut s = BranchSet::empty();
        for (i, a) in self.0.iter().enumerate() {
            if *a > 0 {
                s = s.with(i);
            }
        }
        s
    }
}

impl Ord for ExponentVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Index<usize> for ExponentVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &ExponentVec {
    type Output = ExponentVec;
    fn add(self, rhs: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVec {
    type Output = ExponentVec;
    fn sub(self, rhs: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for ExponentVec {
    fn from(v: Vec<i64>) -> Self {
        ExponentVec(v)
    }
}

impl From<&[i64]> for ExponentVec {
    fn from(v: &[i64]) -> Self {
        ExponentVec(v.to_vec())
    }
}

impl fmt::Debug for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A subset of the branch index set `{0, …, r-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BranchSet(u32);

/// Largest branch count supported by [`BranchSet`].
pub const MAX_BRANCHES: usize = 16;

impl BranchSet {
    pub fn empty() -> Self {
        BranchSet(0)
    }

    pub fn full(r: usize) -> Self {
        BranchSet(((1u64 << r) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        BranchSet(1 << i)
    }

    pub fn from_bits(bits: u32) -> Self {
        BranchSet(bits)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        indices.iter().fold(BranchSet::empty(), |s, &i| s.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        BranchSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        BranchSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, r: usize) -> Self {
        BranchSet(!self.0 & BranchSet::full(r).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.contains(*i))
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0, …, r-1}`, ordered by bitmask.
    pub fn all(r: usize) -> impl Iterator<Item = BranchSet> {
        (0..(1u32 << r)).map(BranchSet)
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = BranchSet> {
        let full = self.0;
        (0..=full).filter(move |b| b & !full == 0).map(BranchSet)
    }
}

impl fmt::Debug for BranchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

/// Closed lattice box `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub lo: ExponentVec,
    pub hi: ExponentVec,
}

impl LatticeBox {
    pub fn new(lo: ExponentVec, hi: ExponentVec) -> Self {
        assert_eq!(lo.len(), hi.len(), "box corners of different length");
        LatticeBox { lo, hi }
    }

    /// `[0, hi]`.
    pub fn from_origin(hi: ExponentVec) -> Self {
        let lo = ExponentVec::zeros(hi.len());
        LatticeBox { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.0.iter().zip(&self.hi.0).any(|(a, b)| a > b)
    }

    pub fn contains(&self, v: &ExponentVec) -> bool {
        self.lo.le(v) && v.le(&self.hi)
    }

    pub fn size(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.lo
            .0
            .iter()
            .zip(&self.hi.0)
            .map(|(a, b)| (b - a + 1) as u128)
            .product()
    }

    /// Fails with [`Error::BoxTooLarge`] when the box exceeds the configured cap.
    pub fn check_size(&self) -> Result<()> {
        let points = self.size();
        let limit = max_box_points();
        if points > limit {
            return Err(Error::BoxTooLarge { points, limit });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        LatticeBox {
            lo: self.lo.join(&other.lo),
            hi: self.hi.meet(&other.hi),
        }
    }

    /// Every point of the box, lexicographic in the coordinates.
    pub fn points(&self) -> BoxPoints {
        BoxPoints {
            lo: self.lo.0.clone(),
            hi: self.hi.0.clone(),
            next: if self.is_empty() {
                None
            } else {
                Some(self.lo.0.clone())
            },
        }
    }

    /// Mixed-radix offset of `v` inside the box.
    pub fn offset(&self, v: &ExponentVec) -> usize {
        let mut idx = 0usize;
        for k in 0..self.dim() {
            let width = (self.hi[k] - self.lo[k] + 1) as usize;
            idx = idx * width + (v[k] - self.lo[k]) as usize;
        }
        idx
    }
}

/// Iterator over the points of a [`LatticeBox`].
pub struct BoxPoints {
    lo: Vec<i64>,
    hi: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxPoints {
    type Item = ExponentVec;

    fn next(&mut self) -> Option<ExponentVec> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            if succ[k] < self.hi[k] {
                succ[k] += 1;
                advanced = true;
                break;
            }
            succ[k] = self.lo[k];
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(ExponentVec(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVec::new(vec![2, 0]);
        let b = ExponentVec::new(vec![0, 3]);
        let c = ExponentVec::new(vec![1, 1]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn box_points_cover_box() {
        let bx = LatticeBox::new(vec![-1, 0].into(), vec![1, 2].into());
        let pts: Vec<_> = bx.points().collect();
        assert_eq!(pts.len() as u128, bx.size());
        assert_eq!(pts[0], ExponentVec::new(vec![-1, 0]));
        assert_eq!(pts.last().unwrap(), &ExponentVec::new(vec![1, 2]));
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(bx.offset(p), k);
        }
    }

    #[test]
    fn empty_box_has_no_points() {
        let bx = LatticeBox::new(vec![1].into(), vec![0].into());
        assert_eq!(bx.points().count(), 0);
        assert_eq!(bx.size(), 0);
    }

    #[test]
    fn branch_set_subsets() {
        let s = BranchSet::from_indices(&[0, 2]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 4);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(s.complement(3), BranchSet::singleton(1));
    }
}
