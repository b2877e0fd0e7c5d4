use crate::error::Result;
use crate::lattice::ExponentVec;
use crate::semigroup::ValueSemigroup;

/// Source of the filtration dimensions `ℓ(v)`, `c(v)` and `c(v, i)`.
///
/// Implemented by the ring model (exact linear algebra) and by the value
/// semigroup (chain and path formulas). Every series in the crate is computed
/// against this trait so both routes can be compared.
pub trait CProvider: Send + Sync {
    fn branches(&self) -> usize;

    fn conductor(&self) -> &ExponentVec;

    /// `dim O / J(v)`.
    fn ell(&self, v: &ExponentVec) -> Result<u64>;

    /// `dim J(v) / J(v + 1_i)`, either 0 or 1.
    fn c_axis(&self, v: &ExponentVec, i: usize) -> Result<u64>;

    /// `dim J(v) / J(v + 1)`.
    fn c(&self, v: &ExponentVec) -> Result<u64> {
        let up = v + &ExponentVec::ones(v.len());
        Ok(self.ell(&up)? - self.ell(v)?)
    }

    /// The value semigroup behind the provider.
    fn semigroup(&self) -> &ValueSemigroup;

    /// Short label used in reports.
    fn label(&self) -> &'static str;
}
