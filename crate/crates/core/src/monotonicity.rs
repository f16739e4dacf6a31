//! Strand ratios of pure diagrams and the monotonicity principle: with
//! `d_i = e_i`, `d_{i+1} = e_{i+1}` and `d < e`,
//!
//! ```text
//! beta_{i,d_i}(pi_d) / beta_{i+1,d_{i+1}}(pi_d) < beta_{i,e_i}(pi_e) / beta_{i+1,e_{i+1}}(pi_e)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::degree::{Degree, DegreeSequence};
use crate::error::{Error, Result};
use crate::pure::pure_entry;
use crate::rational::{format_rational, Rational};

/// A ratio that is infinite when the denominator position is absent from
/// the pure diagram. `Finite(_) < Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrandRatio {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for StrandRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandRatio::Finite(q) => f.write_str(&format_rational(q)),
            StrandRatio::Infinite => f.write_str("inf"),
        }
    }
}

/// `beta_{i,d_i}(pi_d) / beta_{i+1,d_{i+1}}(pi_d)`.
pub fn strand_ratio(d: &DegreeSequence, i: usize) -> Result<StrandRatio> {
    if i >= d.n() {
        return Err(Error::validation(format!(
            "strand index {i} out of range for {d}"
        )));
    }
    let num =
        pure_entry(d, i).ok_or_else(|| Error::validation(format!("d_{i} is infinite in {d}")))?;
    Ok(match pure_entry(d, i + 1) {
        Some(den) => StrandRatio::Finite(num / den),
        None => StrandRatio::Infinite,
    })
}

fn check_pair(d: &DegreeSequence, e: &DegreeSequence, i: usize) -> Result<()> {
    if d.n() != e.n() {
        return Err(Error::validation(format!("{d} and {e} differ in length")));
    }
    if i >= d.n() {
        return Err(Error::validation(format!("strand index {i} out of range")));
    }
    if !d.get(i + 1).is_finite() {
        return Err(Error::validation(format!(
            "d_{} must be finite, got {d}",
            i + 1
        )));
    }
    if d.get(i) != e.get(i) || d.get(i + 1) != e.get(i + 1) {
        return Err(Error::validation(format!(
            "{d} and {e} must agree in positions {i} and {}",
            i + 1
        )));
    }
    if !d.lt_termwise(e) {
        return Err(Error::validation(format!("{d} is not termwise below {e}")));
    }
    Ok(())
}

/// Whether the strand ratio strictly increases from `d` to `e`. Errors when
/// the pair does not satisfy the hypotheses; `Ok(false)` would be a
/// counterexample.
pub fn check_monotonicity(d: &DegreeSequence, e: &DegreeSequence, i: usize) -> Result<bool> {
    check_pair(d, e, i)?;
    Ok(strand_ratio(d, i)? < strand_ratio(e, i)?)
}

/// A saturated chain from `d` to `e` that keeps positions `i` and `i + 1`
/// fixed and moves one entry by one step (or to infinity) at a time.
pub fn interpolating_chain(
    d: &DegreeSequence,
    e: &DegreeSequence,
    i: usize,
) -> Result<Vec<DegreeSequence>> {
    check_pair(d, e, i)?;
    let n = d.n();
    let mut cur: Vec<Degree> = d.entries().to_vec();
    let mut chain = vec![d.clone()];
    let push = |cur: &[Degree], chain: &mut Vec<DegreeSequence>| -> Result<()> {
        chain.push(DegreeSequence::new(cur.to_vec())?);
        Ok(())
    };
    // positions where e is infinite form a suffix; send them off from the top
    for k in (i + 2..=n).rev() {
        if e.get(k) == Degree::Infinite && cur[k] != Degree::Infinite {
            cur[k] = Degree::Infinite;
            push(&cur, &mut chain)?;
        }
    }
    for k in (i + 2..=n).rev().chain((0..i).rev()) {
        while let (Degree::Finite(c), Degree::Finite(t)) = (cur[k], e.get(k)) {
            if c >= t {
                break;
            }
            cur[k] = Degree::Finite(c + 1);
            push(&cur, &mut chain)?;
        }
    }
    debug_assert_eq!(chain.last(), Some(e));
    Ok(chain)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub d: DegreeSequence,
    pub e: DegreeSequence,
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_degree: i64,
    pub n: usize,
    pub pairs_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "monotonicity sweep: degrees 0..={} with inf, n = {}",
            self.max_degree, self.n
        )?;
        writeln!(f, "pairs checked: {}", self.pairs_checked)?;
        writeln!(f, "counterexamples: {}", self.counterexamples.len())?;
        for c in &self.counterexamples {
            writeln!(f, "  i={} d={} e={}", c.i, c.d, c.e)?;
        }
        Ok(())
    }
}

/// All degree sequences of length `n + 1` with finite entries in
/// `[0, max_degree]`, a finite `d_0`, and infinities after the finite part.
pub fn enumerate_sequences(max_degree: i64, n: usize) -> Vec<DegreeSequence> {
    fn extend(prefix: &mut Vec<i64>, max_degree: i64, n: usize, out: &mut Vec<DegreeSequence>) {
        if !prefix.is_empty() {
            out.push(DegreeSequence::padded(prefix, n).expect("increasing prefix"));
        }
        if prefix.len() == n + 1 {
            return;
        }
        let start = prefix.last().map_or(0, |&v| v + 1);
        for v in start..=max_degree {
            prefix.push(v);
            extend(prefix, max_degree, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_degree >= 0 {
        extend(&mut Vec::new(), max_degree, n, &mut out);
    }
    out.sort();
    out
}

/// Checks the strict inequality for every hypothesis-satisfying pair in the
/// window, for strand index `i` or all `0 <= i < n`. Deterministic: the
/// report does not depend on thread scheduling.
pub fn sweep_verify(max_degree: i64, n: usize, i: Option<usize>) -> SweepReport {
    let seqs = enumerate_sequences(max_degree, n);
    let indices: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (0..n).collect(),
    };
    let mut pairs_checked = 0;
    let mut counterexamples = Vec::new();
    for &i in &indices {
        if i >= n {
            continue;
        }
        let mut buckets: BTreeMap<(i64, i64), Vec<(&DegreeSequence, StrandRatio)>> =
            BTreeMap::new();
        for d in &seqs {
            if let (Degree::Finite(a), Degree::Finite(b)) = (d.get(i), d.get(i + 1)) {
                let r = strand_ratio(d, i).expect("finite position");
                buckets.entry((a, b)).or_default().push((d, r));
            }
        }
        let results: Vec<(u64, Vec<Counterexample>)> = buckets
            .into_par_iter()
            .map(|(_, bucket)| {
                let mut checked = 0u64;
                let mut bad = Vec::new();
                for (d, rd) in &bucket {
                    for (e, re) in &bucket {
                        if d.lt_termwise(e) {
                            checked += 1;
                            if rd >= re {
                                bad.push(Counterexample {
                                    d: (*d).clone(),
                                    e: (*e).clone(),
                                    i,
                                });
                            }
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        for (c, bad) in results {
            pairs_checked += c;
            counterexamples.extend(bad);
        }
    }
    SweepReport {
        max_degree,
        n,
        pairs_checked,
        counterexamples,
    }
}
