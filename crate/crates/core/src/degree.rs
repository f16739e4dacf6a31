//! Degree sequences over the integers extended by infinity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An internal degree, or infinity. `Finite(_) < Infinite` under the derived
/// order, which is the order used for termwise comparison of sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(i64),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    /// Shifts a finite degree; infinity absorbs.
    pub fn plus(self, k: i64) -> Degree {
        match self {
            Degree::Finite(v) => Degree::Finite(v + k),
            Degree::Infinite => Degree::Infinite,
        }
    }
}

impl From<i64> for Degree {
    fn from(v: i64) -> Self {
        Degree::Finite(v)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(v) => write!(f, "{v}"),
            Degree::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Degree::Infinite),
            t => t
                .parse::<i64>()
                .map(Degree::Finite)
                .map_err(|_| Error::Parse(format!("not a degree: {t:?}"))),
        }
    }
}

/// A sequence `(d_0, ..., d_n)` with `d_i + 1 <= d_{i+1}` on finite entries
/// and only infinities after the first infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(Vec<Degree>);

impl DegreeSequence {
    pub fn new(entries: Vec<Degree>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation(
                "degree sequence must have at least one entry",
            ));
        }
        for (k, w) in entries.windows(2).enumerate() {
            match (w[0], w[1]) {
                (Degree::Finite(a), Degree::Finite(b)) if a + 1 > b => {
                    return Err(Error::validation(format!(
                        "degree sequence not increasing at positions {k},{}: {a} then {b}",
                        k + 1
                    )))
                }
                (Degree::Infinite, Degree::Finite(b)) => {
                    return Err(Error::validation(format!(
                        "finite entry {b} follows infinity at position {}",
                        k + 1
                    )))
                }
                _ => {}
            }
        }
        Ok(DegreeSequence(entries))
    }

    /// All-finite sequence.
    pub fn from_finite(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().copied().map(Degree::Finite).collect())
    }

    /// `finite` followed by infinities up to total length `n + 1`.
    pub fn padded(finite: &[i64], n: usize) -> Result<Self> {
        if finite.len() > n + 1 {
            return Err(Error::validation(format!(
                "{} finite entries do not fit in a sequence of length {}",
                finite.len(),
                n + 1
            )));
        }
        let mut v: Vec<Degree> = finite.iter().copied().map(Degree::Finite).collect();
        v.resize(n + 1, Degree::Infinite);
        Self::new(v)
    }

    pub fn entries(&self) -> &[Degree] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Degree {
        self.0.get(i).copied().unwrap_or(Degree::Infinite)
    }

    /// Number of variables `n`; the sequence has `n + 1` entries.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// `max{i : d_i < inf}`, or `None` for the all-infinite sequence.
    pub fn length(&self) -> Option<usize> {
        self.0.iter().rposition(|d| d.is_finite())
    }

    pub fn finite_entries(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.finite().map(|v| (i, v)))
    }

    /// Termwise `self <= other`.
    pub fn le_termwise(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Termwise `self <= other` and `self != other`.
    pub fn lt_termwise(&self, other: &Self) -> bool {
        self.le_termwise(other) && self != other
    }

    /// `(c - d_n, ..., c - d_0)` for an all-finite sequence.
    pub fn dual(&self, c: i64) -> Option<Self> {
        let v: Option<Vec<Degree>> = self
            .0
            .iter()
            .rev()
            .map(|d| d.finite().map(|x| Degree::Finite(c - x)))
            .collect();
        v.map(DegreeSequence)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// Accepts `"(0,1,2,inf)"`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty degree sequence {s:?}")));
        }
        let entries = inner
            .split(',')
            .map(str::parse::<Degree>)
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(entries)
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
