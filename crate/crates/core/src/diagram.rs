//! Sparse Betti diagrams and their text/JSON serializations.
//!
//! Text layout: line `r`, token `i` holds `beta_{i,i+r}`. Zero is written
//! `-`, other entries as integers or `a/b`. The first line is row 0, so the
//! upper-left token is `beta_{0,0}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiDiagram {
    n: usize,
    entries: BTreeMap<(usize, i64), Rational>,
}

impl BettiDiagram {
    /// The zero diagram with columns `0..=n`.
    pub fn zero(n: usize) -> Self {
        BettiDiagram {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, i64), Rational)>,
    ) -> Result<Self> {
        let mut d = BettiDiagram::zero(n);
        for ((i, j), v) in entries {
            if i > n {
                return Err(Error::validation(format!("column {i} exceeds n = {n}")));
            }
            let cur = d.get(i, j);
            d.set(i, j, cur + v);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: i64) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stores `v` at `(i, j)`; zero removes the entry.
    ///
    /// Panics if `i > n`.
    pub fn set(&mut self, i: usize, j: i64, v: Rational) {
        assert!(i <= self.n, "column {i} exceeds n = {}", self.n);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    pub fn column(&self, i: usize) -> impl Iterator<Item = (i64, &Rational)> {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, j), v)| (j, v))
    }

    pub fn min_degree(&self, i: usize) -> Option<i64> {
        self.column(i).next().map(|(j, _)| j)
    }

    pub fn max_degree(&self, i: usize) -> Option<i64> {
        self.column(i).last().map(|(j, _)| j)
    }

    /// Entrywise `c * self`.
    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BettiDiagram::zero(self.n);
        }
        BettiDiagram {
            n: self.n,
            entries: self.entries.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            let cur = out.get(i, j);
            out.set(i, j, cur + v);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// `self - other`, failing if any entry of the result is negative.
    pub fn subtract_nonneg(&self, other: &Self) -> Result<Self> {
        let out = self.checked_sub(other)?;
        if let Some((&(i, j), _)) = out.entries.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::NonNegativityViolation { i, j });
        }
        Ok(out)
    }

    /// Keeps only the entries in `cols`.
    pub fn restrict_columns(&self, cols: std::ops::RangeInclusive<usize>) -> Self {
        BettiDiagram {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|((i, _), _)| cols.contains(i))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::validation(format!(
                "diagrams have different n: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    // ---- text format ----

    /// Canonical text rendering: single spaces between tokens, `\n` after
    /// every line, rows `0..=max_row`. Entries in negative rows have no place
    /// in this layout and are rejected.
    pub fn to_text(&self) -> Result<String> {
        let rows = self.row_range()?;
        let mut out = String::new();
        for r in 0..=rows {
            let line: Vec<String> = (0..=self.n)
                .map(|i| {
                    let v = self.get(i, i as i64 + r);
                    if v.is_zero() {
                        "-".to_string()
                    } else {
                        format_rational(&v)
                    }
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    fn row_range(&self) -> Result<i64> {
        let mut max_row = 0;
        for &(i, j) in self.entries.keys() {
            let r = j - i as i64;
            if r < 0 {
                return Err(Error::Format(format!(
                    "entry beta_{{{i},{j}}} lies in negative row {r}"
                )));
            }
            max_row = max_row.max(r);
        }
        Ok(max_row)
    }

    /// Parses the text layout. Blank lines and lines starting with `#` are
    /// skipped. Without `n`, the column count of the lines fixes it.
    pub fn parse_text(text: &str, n: Option<usize>) -> Result<Self> {
        let lines: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect())
            .collect();
        let width = match lines.first() {
            Some(first) => first.len(),
            None => return Err(Error::Parse("empty diagram".into())),
        };
        if let Some(bad) = lines.iter().position(|l| l.len() != width) {
            return Err(Error::Parse(format!(
                "line {} has {} tokens, expected {width}",
                bad + 1,
                lines[bad].len()
            )));
        }
        let n = match n {
            Some(n) if n + 1 < width => {
                return Err(Error::Parse(format!(
                    "diagram has {width} columns but n = {n}"
                )))
            }
            Some(n) => n,
            None => width - 1,
        };
        let mut d = BettiDiagram::zero(n);
        for (r, line) in lines.iter().enumerate() {
            for (i, tok) in line.iter().enumerate() {
                if *tok == "-" {
                    continue;
                }
                d.set(i, i as i64 + r as i64, parse_rational(tok)?);
            }
        }
        Ok(d)
    }

    // ---- JSON format ----

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization is infallible")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// JSON if the input starts with `{`, text layout otherwise.
    pub fn parse_any(text: &str, n: Option<usize>) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let d = Self::parse_json(text)?;
            match n {
                Some(n) if n != d.n => Err(Error::Parse(format!(
                    "JSON diagram has n = {} but n = {n} was requested",
                    d.n
                ))),
                _ => Ok(d),
            }
        } else {
            Self::parse_text(text, n)
        }
    }
}

impl fmt::Display for BettiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Ok(t) => f.write_str(&t),
            Err(_) => f.write_str(&self.to_json()),
        }
    }
}

impl Neg for &BettiDiagram {
    type Output = BettiDiagram;

    fn neg(self) -> BettiDiagram {
        BettiDiagram {
            n: self.n,
            entries: self.entries.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

/// Panics on mismatched `n`; use [`BettiDiagram::checked_add`] otherwise.
impl Add for &BettiDiagram {
    type Output = BettiDiagram;

    fn add(self, rhs: &BettiDiagram) -> BettiDiagram {
        self.checked_add(rhs).expect("diagram n mismatch")
    }
}

/// Panics on mismatched `n`; use [`BettiDiagram::checked_sub`] otherwise.
impl Sub for &BettiDiagram {
    type Output = BettiDiagram;

    fn sub(self, rhs: &BettiDiagram) -> BettiDiagram {
        self.checked_sub(rhs).expect("diagram n mismatch")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    i: usize,
    j: i64,
    #[serde(with = "crate::rational::serde_str")]
    v: Rational,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    n: usize,
    entries: Vec<JsonEntry>,
}

impl Serialize for BettiDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonDiagram {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| JsonEntry { i, j, v: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonDiagram::deserialize(d)?;
        BettiDiagram::from_entries(raw.n, raw.entries.into_iter().map(|e| ((e.i, e.j), e.v)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    const EX15: &str = "2 3 2 -\n- 3 3 -\n- 2 3 2\n";

    #[test]
    fn text_layout_places_rows_on_diagonals() {
        let d = BettiDiagram::parse_text(EX15, None).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.get(0, 0), int(2));
        assert_eq!(d.get(1, 2), int(3));
        assert_eq!(d.get(3, 5), int(2));
        assert_eq!(d.get(3, 3), int(0));
        assert_eq!(d.to_text().unwrap(), EX15);
    }

    #[test]
    fn explicit_n_adds_zero_columns() {
        let d = BettiDiagram::parse_text("1\n", Some(3)).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.to_text().unwrap(), "1 - - -\n");
        assert!(BettiDiagram::parse_text("1 2 3\n", Some(1)).is_err());
    }

    #[test]
    fn ragged_and_garbage_input_rejected() {
        assert!(BettiDiagram::parse_text("1 2\n3\n", None).is_err());
        assert!(BettiDiagram::parse_text("1 x\n", None).is_err());
        assert!(BettiDiagram::parse_text("\n\n", None).is_err());
    }

    #[test]
    fn zero_diagram_renders_one_row() {
        assert_eq!(BettiDiagram::zero(2).to_text().unwrap(), "- - -\n");
    }

    #[test]
    fn negative_rows_are_not_renderable() {
        let mut d = BettiDiagram::zero(1);
        d.set(1, 0, int(1));
        assert!(d.to_text().is_err());
        assert!(d.to_string().starts_with('{'));
    }

    #[test]
    fn json_schema() {
        let mut d = BettiDiagram::zero(3);
        d.set(0, 0, frac(6, 5));
        d.set(3, 5, frac(1, 5));
        let js = d.to_json();
        assert_eq!(
            js,
            r#"{"n":3,"entries":[{"i":0,"j":0,"v":"6/5"},{"i":3,"j":5,"v":"1/5"}]}"#
        );
        assert_eq!(BettiDiagram::parse_any(&js, None).unwrap(), d);
        assert!(BettiDiagram::parse_any(&js, Some(2)).is_err());
    }

    #[test]
    fn arithmetic() {
        let d = BettiDiagram::parse_text("6 15 10 -\n- - - -\n- - - 1\n", None).unwrap();
        let s = d.scaled(&frac(1, 5));
        assert_eq!(s.to_text().unwrap(), "6/5 3 2 -\n- - - -\n- - - 1/5\n");
        assert!((&d - &d).is_zero());
        let err = s.subtract_nonneg(&d).unwrap_err();
        assert!(matches!(err, Error::NonNegativityViolation { .. }));
        assert!(d.checked_add(&BettiDiagram::zero(2)).is_err());
    }
}
