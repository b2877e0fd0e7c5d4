//! Outcome records for identity checks.

use std::fmt;

use num_bigint::BigInt;

use crate::lattice::ExponentVec;
use crate::poly::{Mismatch, QLaurent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::NotApplicable => "N/A",
        })
    }
}

/// A coefficient as it appears in a witness.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigInt),
    Laurent(QLaurent),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Laurent(q) => write!(f, "{q}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Int(n)
    }
}

impl From<QLaurent> for Value {
    fn from(q: QLaurent) -> Self {
        Value::Laurent(q)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(BigInt::from(n))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub at: Option<ExponentVec>,
    pub expected: Value,
    pub actual: Value,
}

impl<C: Into<Value>> From<Mismatch<C>> for Witness {
    fn from(m: Mismatch<C>) -> Self {
        Witness {
            at: Some(m.at),
            expected: m.expected.into(),
            actual: m.actual.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check::new(name, Status::Pass, detail)
    }

    pub fn not_applicable(name: &str, detail: impl Into<String>) -> Self {
        Check::new(name, Status::NotApplicable, detail)
    }

    pub fn inconclusive(name: &str, detail: impl Into<String>) -> Self {
        Check::new(name, Status::Inconclusive, detail)
    }

    pub fn fail(name: &str, detail: impl Into<String>, witness: Option<Witness>) -> Self {
        Check {
            witness,
            ..Check::new(name, Status::Fail, detail)
        }
    }

    /// PASS when there is no mismatch, FAIL with the mismatch as witness otherwise.
    pub fn from_mismatch<C: Into<Value>>(
        name: &str,
        detail: impl Into<String>,
        mismatch: Option<Mismatch<C>>,
    ) -> Self {
        match mismatch {
            None => Check::pass(name, detail),
            Some(m) => Check::fail(name, detail, Some(m.into())),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.status)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        if let Some(w) = &self.witness {
            if let Some(v) = &w.at {
                write!(f, " at {v}")?;
            }
            write!(f, ": expected {}, got {}", w.expected, w.actual)?;
        }
        Ok(())
    }
}

/// Folds several sub-results into one check: the first failure wins.
pub fn combine(name: &str, parts: Vec<Check>) -> Check {
    if let Some(bad) = parts.iter().find(|c| c.status == Status::Fail) {
        return Check {
            name: name.to_string(),
            ..bad.clone()
        };
    }
    if parts.iter().all(|c| c.status == Status::NotApplicable) && !parts.is_empty() {
        return Check {
            name: name.to_string(),
            ..parts[0].clone()
        };
    }
    if let Some(inc) = parts.iter().find(|c| c.status == Status::Inconclusive) {
        return Check {
            name: name.to_string(),
            ..inc.clone()
        };
    }
    let detail: Vec<&str> = parts
        .iter()
        .filter(|c| c.status == Status::Pass && !c.detail.is_empty())
        .map(|c| c.detail.as_str())
        .collect();
    Check::pass(name, detail.join("; "))
}
