use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use serde::{Deserialize, Serialize};

/// Relative tolerance for comparisons involving floating-point bounds.
pub const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

/// A named intermediate value attached to a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Extra {
    Int(i64),
    Num(f64),
    Flag(bool),
    Text(String),
}

impl From<usize> for Extra {
    fn from(v: usize) -> Self {
        Extra::Int(v as i64)
    }
}
impl From<u64> for Extra {
    fn from(v: u64) -> Self {
        Extra::Int(v as i64)
    }
}
impl From<i64> for Extra {
    fn from(v: i64) -> Self {
        Extra::Int(v)
    }
}
impl From<u32> for Extra {
    fn from(v: u32) -> Self {
        Extra::Int(v as i64)
    }
}
impl From<f64> for Extra {
    fn from(v: f64) -> Self {
        Extra::Num(v)
    }
}
impl From<bool> for Extra {
    fn from(v: bool) -> Self {
        Extra::Flag(v)
    }
}
impl From<&str> for Extra {
    fn from(v: &str) -> Self {
        Extra::Text(v.to_string())
    }
}
impl From<String> for Extra {
    fn from(v: String) -> Self {
        Extra::Text(v)
    }
}

/// One checked instance of one inequality or equality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheckRecord {
    pub lemma: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
    pub mode: Mode,
    pub relation: Relation,
    pub extras: BTreeMap<String, Extra>,
}

impl LemmaCheckRecord {
    /// An exact integer inequality `lhs ≤ rhs`.
    pub fn le_int(lemma: &str, instance: &str, lhs: u128, rhs: u128) -> Self {
        Self::build(lemma, instance, lhs as f64, rhs as f64, lhs <= rhs, Relation::Le)
    }

    /// An exact integer equality.
    pub fn eq_int(lemma: &str, instance: &str, lhs: u128, rhs: u128) -> Self {
        Self::build(lemma, instance, lhs as f64, rhs as f64, lhs == rhs, Relation::Eq)
    }

    /// `lhs ≤ rhs` with the relative tolerance [`REL_TOL`].
    pub fn le_float(lemma: &str, instance: &str, lhs: f64, rhs: f64) -> Self {
        let tol = REL_TOL * lhs.abs().max(rhs.abs());
        Self::build(lemma, instance, lhs, rhs, lhs <= rhs + tol, Relation::Le)
    }

    fn build(lemma: &str, instance: &str, lhs: f64, rhs: f64, holds: bool, relation: Relation) -> Self {
        Self {
            lemma: lemma.to_string(),
            instance: instance.to_string(),
            lhs,
            rhs,
            holds,
            slack: rhs - lhs,
            mode: Mode::Exact,
            relation,
            extras: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Extra>) -> Self {
        self.extras.insert(key.to_string(), value.into());
        self
    }

    pub fn sampled(mut self, sampled: bool) -> Self {
        if sampled {
            self.mode = Mode::Sampled;
        }
        self
    }

    /// Forces `holds` to the conjunction of the main relation and `extra`.
    pub fn and_also(mut self, key: &str, extra: bool) -> Self {
        self.holds &= extra;
        self.extras.insert(key.to_string(), Extra::Flag(extra));
        self
    }

    /// A failed sampled check cannot refute the statement.
    pub fn is_inconclusive(&self) -> bool {
        !self.holds && self.mode == Mode::Sampled
    }

    pub fn is_failure(&self) -> bool {
        !self.holds && self.mode == Mode::Exact
    }

    pub fn extra_int(&self, key: &str) -> Option<i64> {
        match self.extras.get(key)? {
            Extra::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn extra_num(&self, key: &str) -> Option<f64> {
        match self.extras.get(key)? {
            Extra::Int(v) => Some(*v as f64),
            Extra::Num(v) => Some(*v),
            _ => None,
        }
    }
}
