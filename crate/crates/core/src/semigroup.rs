//! Finite encoding of a value semigroup `S ⊂ N^r` and the purely
//! combinatorial formulas built on it: Δ-sets, maximal points, the chain
//! formula for `c(v)`, the path formula for `ℓ(v)`, projections, conductor
//! drops and the Gorenstein symmetry test.
//!
//! Membership outside the box `[0, δ]` is decided by clipping: `v ∈ S` iff
//! `v ≥ 0` and `min(v, δ) ∈ S`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{BranchSet, ExponentVec, LatticeBox, MAX_BRANCHES};
use crate::provider::CProvider;

#[derive(Clone, Debug)]
pub struct ValueSemigroup {
    r: usize,
    conductor: ExponentVec,
    bx: LatticeBox,
    members: Vec<bool>,
    // axis_witness[i][u]: some w ∈ S has w_i = u_i and w ≥ u (u in the box).
    axis_witness: Vec<Vec<bool>>,
    ell_table: Vec<u64>,
}

impl PartialEq for ValueSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.conductor == other.conductor && self.members == other.members
    }
}

impl Eq for ValueSemigroup {}

/// Which Δ-set [`ValueSemigroup::delta_set`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSelector {
    /// `Δ^J(v)`: strictly larger on `J`, equal off `J`.
    Super(BranchSet),
    /// `Δ_J(v) = Δ^{I∖J}(v)`.
    Sub(BranchSet),
    /// `Δ(v) = ∪_i Δ_{{i}}(v)`: equal on one coordinate, strictly larger on the rest.
    Union,
}

/// Overlapping maximality flags of a lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MaximalProfile {
    pub in_semigroup: bool,
    pub is_maximal: bool,
    pub is_absolute: bool,
    pub is_relative: bool,
}

/// Symmetric table of pairwise intersection multiplicities, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiMatrix {
    entries: Vec<Vec<u64>>,
}

impl XiMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        XiMatrix { entries }
    }

    pub fn branches(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Off-diagonal entries of row `i`, sorted.
    pub fn row_multiset(&self, i: usize) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.branches())
            .filter(|&j| j != i)
            .map(|j| self.entries[i][j])
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.branches();
        (0..n).all(|i| {
            self.entries[i][i] == 0 && (0..n).all(|j| self.entries[i][j] == self.entries[j][i])
        })
    }
}

/// Outcome of the Gorenstein symmetry test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub gorenstein: bool,
    /// First `v` (graded-lex) with `c(v) + c(δ - v - 1) < r`.
    pub witness: Option<ExponentVec>,
}

impl ValueSemigroup {
    /// Validates raw data `(r, δ, S ∩ [0, δ])`.
    pub fn validate(r: usize, conductor: ExponentVec, points: &[ExponentVec]) -> Result<Self> {
        if r == 0 || r > MAX_BRANCHES {
            return Err(Error::InvalidSemigroup(format!(
                "branch count {r} outside 1..={MAX_BRANCHES}"
            )));
        }
        if conductor.len() != r {
            return Err(Error::Dimension {
                expected: r,
                found: conductor.len(),
            });
        }
        if !conductor.is_nonnegative() {
            return Err(Error::InvalidSemigroup(format!(
                "conductor {conductor} has a negative coordinate"
            )));
        }
        let bx = LatticeBox::from_origin(conductor.clone());
        bx.check_size()?;
        let mut members = vec![false; bx.size() as usize];
        for p in points {
            if p.len() != r {
                return Err(Error::Dimension {
                    expected: r,
                    found: p.len(),
                });
            }
            if !bx.contains(p) {
                return Err(Error::InvalidSemigroup(format!(
                    "point {p} lies outside [0, {conductor}]"
                )));
            }
            members[bx.offset(p)] = true;
        }
        let mut s = ValueSemigroup {
            r,
            conductor,
            bx,
            members,
            axis_witness: Vec::new(),
            ell_table: Vec::new(),
        };
        s.check_axioms()?;
        s.build_axis_tables();
        s.build_ell_table()?;
        Ok(s)
    }

    fn check_axioms(&self) -> Result<()> {
        let zero = ExponentVec::zeros(self.r);
        if !self.contains(&zero) {
            return Err(Error::InvalidSemigroup("0 ∉ S".into()));
        }
        if !self.contains(&self.conductor) {
            return Err(Error::InvalidSemigroup("δ ∉ S".into()));
        }
        let pts: Vec<ExponentVec> = self.points().collect();
        for (k, u) in pts.iter().enumerate() {
            for w in &pts[k..] {
                let sum = (u + w).meet(&self.conductor);
                if !self.contains(&sum) {
                    return Err(Error::InvalidSemigroup(format!(
                        "closure fails: {u} + {w} clipped to {sum} is not in S"
                    )));
                }
            }
        }
        for i in 0..self.r {
            if self.conductor[i] > 0 && self.contains(&self.conductor.shifted(i, -1)) {
                return Err(Error::InvalidSemigroup(format!(
                    "conductor not minimal: {} already has the conductor property",
                    self.conductor.shifted(i, -1)
                )));
            }
        }
        Ok(())
    }

    fn build_axis_tables(&mut self) {
        let pts: Vec<ExponentVec> = self.bx.points().collect();
        let mut tables = vec![vec![false; pts.len()]; self.r];
        for (i, table) in tables.iter_mut().enumerate() {
            for u in pts.iter().rev() {
                let mut ok = self.members[self.bx.offset(u)];
                for j in 0..self.r {
                    if ok {
                        break;
                    }
                    if j != i && u[j] < self.conductor[j] {
                        ok = table[self.bx.offset(&u.shifted(j, 1))];
                    }
                }
                table[self.bx.offset(u)] = ok;
            }
        }
        self.axis_witness = tables;
    }

    fn build_ell_table(&mut self) -> Result<()> {
        let pts: Vec<ExponentVec> = self.bx.points().collect();
        let mut table = vec![0u64; pts.len()];
        for v in &pts {
            let mut value: Option<u64> = None;
            for j in 0..self.r {
                if v[j] == 0 {
                    continue;
                }
                let prev = v.shifted(j, -1);
                let cand = table[self.bx.offset(&prev)] + self.c_axis(&prev, j);
                match value {
                    None => value = Some(cand),
                    Some(x) if x != cand => {
                        return Err(Error::InvalidSemigroup(format!(
                            "path formula for ℓ{v} depends on the path ({x} vs {cand})"
                        )))
                    }
                    _ => {}
                }
            }
            table[self.bx.offset(v)] = value.unwrap_or(0);
        }
        self.ell_table = table;
        Ok(())
    }

    pub fn branches(&self) -> usize {
        self.r
    }

    pub fn conductor(&self) -> &ExponentVec {
        &self.conductor
    }

    /// `S ∩ [0, δ]` in box order.
    pub fn points(&self) -> impl Iterator<Item = ExponentVec> + '_ {
        self.bx
            .points()
            .filter(move |p| self.members[self.bx.offset(p)])
    }

    pub fn contains(&self, v: &ExponentVec) -> bool {
        if !v.is_nonnegative() {
            return false;
        }
        let c = v.meet(&self.conductor);
        self.members[self.bx.offset(&c)]
    }

    /// A witness of `Δ^J(v)` if the set is nonempty.
    ///
    /// Coordinates beyond the conductor are interchangeable, so the search
    /// box `[v_J + 1, max(v_J + 1, δ_J)]` is exhaustive.
    pub fn delta_witness(&self, v: &ExponentVec, set: BranchSet) -> Option<ExponentVec> {
        let mut lo = Vec::with_capacity(self.r);
        let mut hi = Vec::with_capacity(self.r);
        for i in 0..self.r {
            if set.contains(i) {
                let a = (v[i] + 1).max(0);
                lo.push(a);
                hi.push(a.max(self.conductor[i]));
            } else {
                if v[i] < 0 {
                    return None;
                }
                lo.push(v[i]);
                hi.push(v[i]);
            }
        }
        LatticeBox::new(lo.into(), hi.into())
            .points()
            .find(|w| self.contains(w))
    }

    pub fn delta_nonempty(&self, v: &ExponentVec, set: BranchSet) -> bool {
        self.delta_witness(v, set).is_some()
    }

    /// Points of the selected Δ-set inside `report`.
    pub fn delta_set(
        &self,
        v: &ExponentVec,
        selector: DeltaSelector,
        report: &LatticeBox,
    ) -> Vec<ExponentVec> {
        let in_super = |w: &ExponentVec, set: BranchSet| {
            (0..self.r).all(|i| {
                if set.contains(i) {
                    w[i] > v[i]
                } else {
                    w[i] == v[i]
                }
            })
        };
        report
            .points()
            .filter(|w| self.contains(w))
            .filter(|w| match selector {
                DeltaSelector::Super(j) => in_super(w, j),
                DeltaSelector::Sub(j) => in_super(w, j.complement(self.r)),
                DeltaSelector::Union => {
                    (0..self.r).any(|i| in_super(w, BranchSet::singleton(i).complement(self.r)))
                }
            })
            .collect()
    }

    pub fn classify(&self, v: &ExponentVec) -> MaximalProfile {
        let in_semigroup = self.contains(v);
        let is_maximal = in_semigroup
            && (0..self.r)
                .all(|i| !self.delta_nonempty(v, BranchSet::singleton(i).complement(self.r)));
        let full = BranchSet::full(self.r);
        let sub_empty = |j: BranchSet| !self.delta_nonempty(v, j.complement(self.r));
        let is_absolute = is_maximal
            && BranchSet::all(self.r)
                .filter(|j| !j.is_empty() && *j != full)
                .all(sub_empty);
        let is_relative = is_maximal
            && BranchSet::all(self.r)
                .filter(|j| j.len() >= 2)
                .all(|j| !sub_empty(j));
        MaximalProfile {
            in_semigroup,
            is_maximal,
            is_absolute,
            is_relative,
        }
    }

    /// Longest chain `K_1 ⊊ … ⊊ K_h` of proper subsets with `Δ^{K_m}(v) ≠ ∅`.
    pub(crate) fn chain_length(&self, v: &ExponentVec) -> u64 {
        let full = BranchSet::full(self.r);
        let mut qualifying: Vec<BranchSet> = BranchSet::all(self.r)
            .filter(|k| *k != full && self.delta_nonempty(v, *k))
            .collect();
        qualifying.sort_by_key(|k| k.len());
        let mut best: Vec<(BranchSet, u64)> = Vec::with_capacity(qualifying.len());
        for k in qualifying {
            let below = best
                .iter()
                .filter(|(l, _)| l.is_strict_subset(k))
                .map(|(_, h)| *h)
                .max()
                .unwrap_or(0);
            best.push((k, below + 1));
        }
        best.into_iter().map(|(_, h)| h).max().unwrap_or(0)
    }

    /// `c(v)` from the chain formula; points with a negative coordinate use
    /// the path formula since `J(v) = J(v⁺)`.
    pub fn c_chain(&self, v: &ExponentVec) -> u64 {
        if v.is_nonnegative() {
            self.chain_length(v)
        } else {
            let up = v + &ExponentVec::ones(self.r);
            self.ell_comb(&up) - self.ell_comb(v)
        }
    }

    /// `c(v, i)`: 1 iff some `w ∈ S` has `w_i = v_i` and `w ≥ v`.
    pub fn c_axis(&self, v: &ExponentVec, i: usize) -> u64 {
        if v[i] < 0 {
            return 0;
        }
        let u = v.positive_part().meet(&self.conductor);
        self.axis_witness[i][self.bx.offset(&u)] as u64
    }

    /// `ℓ(v)` by integrating `c(·, i)` along a monotone path from `0`.
    pub fn ell_comb(&self, v: &ExponentVec) -> u64 {
        let w = v.positive_part();
        let m = w.meet(&self.conductor);
        let beyond: i64 = (0..self.r).map(|i| (w[i] - self.conductor[i]).max(0)).sum();
        self.ell_table[self.bx.offset(&m)] + beyond as u64
    }

    /// Semigroup of the sub-curve on the branches `keep` (in that order).
    pub fn project(&self, keep: &[usize]) -> Result<ValueSemigroup> {
        if keep.is_empty() {
            return Err(Error::DegenerateInput(
                "projection onto the empty set".into(),
            ));
        }
        for (k, &i) in keep.iter().enumerate() {
            if i >= self.r {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    branches: self.r,
                });
            }
            if keep[..k].contains(&i) {
                return Err(Error::DegenerateInput(format!("branch {} repeated", i + 1)));
            }
        }
        let top = self.conductor.select(keep);
        let pbox = LatticeBox::from_origin(top.clone());
        let mut proj = vec![false; pbox.size() as usize];
        for w in self.points() {
            proj[pbox.offset(&w.select(keep))] = true;
        }
        // Up-closed region of points all of whose upper box lies in S_A.
        let n = keep.len();
        let pts: Vec<ExponentVec> = pbox.points().collect();
        let mut upper = vec![false; pts.len()];
        for p in pts.iter().rev() {
            let ok = proj[pbox.offset(p)]
                && (0..n).all(|k| p[k] == top[k] || upper[pbox.offset(&p.shifted(k, 1))]);
            upper[pbox.offset(p)] = ok;
        }
        let delta = pts
            .iter()
            .filter(|p| upper[pbox.offset(p)])
            .fold(top.clone(), |acc, p| acc.meet(p));
        if !upper[pbox.offset(&delta)] {
            return Err(Error::InvalidSemigroup(format!(
                "projection onto {keep:?} has no least conductor"
            )));
        }
        let points: Vec<ExponentVec> = LatticeBox::from_origin(delta.clone())
            .points()
            .filter(|p| proj[pbox.offset(p)])
            .collect();
        ValueSemigroup::validate(n, delta, &points)
    }

    /// Pairwise intersection multiplicities from conductor drops.
    pub fn xi_oracle(&self) -> Result<XiMatrix> {
        let r = self.r;
        if r < 2 {
            return Err(Error::DegenerateInput(
                "intersection multiplicities need r ≥ 2".into(),
            ));
        }
        let single: Vec<i64> = (0..r)
            .map(|i| self.project(&[i]).map(|s| s.conductor[0]))
            .collect::<Result<_>>()?;
        let mut entries = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let pair = self.project(&[i, j])?;
                let drop = pair.conductor[0] - single[i];
                if drop <= 0 {
                    return Err(Error::InvalidSemigroup(format!(
                        "not a plane-curve-type semigroup: conductor drop ξ({},{}) = {drop}",
                        i + 1,
                        j + 1
                    )));
                }
                entries[i][j] = drop as u64;
            }
        }
        let xi = XiMatrix::from_rows(entries);
        if !xi.is_symmetric() {
            return Err(Error::InvalidSemigroup(format!(
                "not a plane-curve-type semigroup: asymmetric conductor drops {:?}",
                xi.rows()
            )));
        }
        for i in 0..r {
            let row: u64 = xi.rows()[i].iter().sum();
            if self.conductor[i] != single[i] + row as i64 {
                return Err(Error::InvalidSemigroup(format!(
                    "not a plane-curve-type semigroup: δ_{} = {} but δ(S_{{{}}}) + Σ ξ = {}",
                    i + 1,
                    self.conductor[i],
                    i + 1,
                    single[i] + row as i64
                )));
            }
        }
        Ok(xi)
    }

    /// Checks `c(v) + c(δ - v - 1) ≤ r` on `[-1, δ]`; equality everywhere means Gorenstein.
    pub fn symmetry_check(&self) -> Result<SymmetryReport> {
        let r = self.r as u64;
        let ones = ExponentVec::ones(self.r);
        let tau = &self.conductor - &ones;
        let bx = LatticeBox::new(ones.neg(), self.conductor.clone());
        let mut witness = None;
        let mut pts: Vec<ExponentVec> = bx.points().collect();
        pts.sort();
        for v in pts {
            let sum = self.c_chain(&v) + self.c_chain(&(&tau - &v));
            if sum > r {
                return Err(Error::InvalidSemigroup(format!(
                    "symmetry inequality violated at {v}: c(v) + c(δ-v-1) = {sum} > {r}"
                )));
            }
            if sum < r && witness.is_none() {
                witness = Some(v);
            }
        }
        Ok(SymmetryReport {
            gorenstein: witness.is_none(),
            witness,
        })
    }

    /// Minimal generators of a one-branch semigroup.
    pub fn minimal_generators(&self) -> Result<Vec<u64>> {
        if self.r != 1 {
            return Err(Error::Dimension {
                expected: 1,
                found: self.r,
            });
        }
        let d = self.conductor[0];
        let mem = |n: i64| self.contains(&ExponentVec::new(vec![n]));
        let m = (1..=d.max(1)).find(|&n| mem(n)).unwrap_or(1);
        let mut gens: BTreeSet<u64> = BTreeSet::new();
        for s in 1..(d + m).max(2) {
            if !mem(s) {
                continue;
            }
            let decomposable = (1..s).any(|a| mem(a) && mem(s - a));
            if !decomposable {
                gens.insert(s as u64);
            }
        }
        Ok(gens.into_iter().collect())
    }

    /// Raw `(r, δ, points)` triple, e.g. for serialization.
    pub fn raw(&self) -> (usize, Vec<i64>, Vec<Vec<i64>>) {
        (
            self.r,
            self.conductor.as_slice().to_vec(),
            self.points().map(|p| p.into_vec()).collect(),
        )
    }
}

impl CProvider for ValueSemigroup {
    fn branches(&self) -> usize {
        self.r
    }

    fn conductor(&self) -> &ExponentVec {
        &self.conductor
    }

    fn ell(&self, v: &ExponentVec) -> Result<u64> {
        Ok(self.ell_comb(v))
    }

    fn c_axis(&self, v: &ExponentVec, i: usize) -> Result<u64> {
        if i >= self.r {
            return Err(Error::IndexOutOfRange {
                index: i,
                branches: self.r,
            });
        }
        Ok(ValueSemigroup::c_axis(self, v, i))
    }

    fn c(&self, v: &ExponentVec) -> Result<u64> {
        Ok(self.c_chain(v))
    }

    fn semigroup(&self) -> &ValueSemigroup {
        self
    }

    fn label(&self) -> &'static str {
        "semigroup"
    }
}

/// Builds a semigroup from `(δ, points)` written as plain integer slices.
pub fn semigroup_from(conductor: &[i64], points: &[&[i64]]) -> Result<ValueSemigroup> {
    let pts: Vec<ExponentVec> = points.iter().map(|p| ExponentVec::from(*p)).collect();
    ValueSemigroup::validate(conductor.len(), ExponentVec::from(conductor), &pts)
}

/// Numerical semigroup generated by `gens`, truncated at its conductor.
pub fn numerical_semigroup(gens: &[u64]) -> Result<ValueSemigroup> {
    let g = gens.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
    if g != 1 {
        return Err(Error::DegenerateInput(format!(
            "generators {gens:?} have gcd {g}"
        )));
    }
    let m = *gens.iter().min().expect("nonempty") as usize;
    let mut mem = vec![true];
    let mut run = 1usize;
    let mut n = 0usize;
    // A run of m consecutive members means every larger integer is a member.
    while run < m {
        n += 1;
        let is = gens
            .iter()
            .any(|&a| (a as usize) <= n && mem[n - a as usize]);
        mem.push(is);
        run = if is { run + 1 } else { 0 };
    }
    let conductor = (n + 1 - m) as i64;
    let pts: Vec<ExponentVec> = (0..=conductor)
        .filter(|&k| mem[k as usize])
        .map(|k| ExponentVec::new(vec![k]))
        .collect();
    ValueSemigroup::validate(1, ExponentVec::new(vec![conductor]), &pts)
}
