//! Clean-filtration and splitting certificates read off the Boij-Söderberg
//! decomposition, the integrality obstructions they imply, and the numerics
//! of the North fork subcomplex.
//!
//! For a finite-length module over `n >= 2` variables with decomposition
//! `sum c_t pi_{d^t}`:
//!
//! * if `d^0 << d^1` (termwise smaller and `d^0_2 <= d^1_1`), the first step
//!   `c_0 pi_{d^0}` is the Betti diagram of a cleanly embedded submodule and
//!   so must be integral;
//! * if moreover `d^0_n - n < d^1_1`, that submodule is a direct summand.
//!
//! Iterating along the chain gives a clean filtration (or a direct sum
//! decomposition). A non-integral step reached while the separation
//! hypotheses hold is an obstruction: no module has the diagram.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::decompose::{bs_decompose, DecompositionChain};
use crate::degree::{Degree, DegreeSequence};
use crate::diagram::BettiDiagram;
use crate::error::{Error, Result};
use crate::hilbert::{codimension, is_finite_length_consistent};
use crate::rational::Rational;

/// Controls how strictly the module-theoretic hypotheses are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Require `n >= 2` and finite-length consistency of the input.
    pub enforce_hypotheses: bool,
    /// Allow quotient prediction when a prefix of steps sharing the minimal
    /// first-syzygy degree is jointly separated from the rest of the chain.
    pub extended_hypotheses: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            enforce_hypotheses: true,
            extended_hypotheses: false,
        }
    }
}

impl AnalysisOptions {
    pub fn extended() -> Self {
        AnalysisOptions {
            extended_hypotheses: true,
            ..Self::default()
        }
    }

    pub fn unchecked() -> Self {
        AnalysisOptions {
            enforce_hypotheses: false,
            ..Self::default()
        }
    }
}

fn check_hypotheses(diagram: &BettiDiagram, opts: AnalysisOptions) -> Result<()> {
    if !opts.enforce_hypotheses {
        return Ok(());
    }
    let n = diagram.n();
    if n < 2 {
        return Err(Error::validation(format!(
            "the splitting criteria need at least two variables, got n = {n}"
        )));
    }
    if !is_finite_length_consistent(diagram, n) {
        return Err(Error::validation(format!(
            "diagram is not numerically of finite length over {n} variables \
             (its Hilbert numerator is not divisible by (1-t)^{n})"
        )));
    }
    Ok(())
}

/// `d << e`: `d < e` termwise and `d_2 <= e_1`.
pub fn is_strictly_separated(d: &DegreeSequence, e: &DegreeSequence) -> Result<bool> {
    if d.n() != e.n() {
        return Err(Error::validation(format!(
            "sequences have different lengths: {d} vs {e}"
        )));
    }
    if d.n() < 2 {
        return Err(Error::validation(format!(
            "separation needs n >= 2, got {d}"
        )));
    }
    Ok(d.lt_termwise(e) && d.get(2) <= e.get(1))
}

/// `d_n - n < e_1`, the degree condition that forces a direct summand.
pub fn splits_strongly(d: &DegreeSequence, e: &DegreeSequence) -> Result<bool> {
    if d.n() != e.n() {
        return Err(Error::validation(format!(
            "sequences have different lengths: {d} vs {e}"
        )));
    }
    let n = d.n();
    let last = d
        .get(n)
        .finite()
        .ok_or_else(|| Error::validation(format!("d_n must be finite, got {d}")))?;
    Ok(Degree::Finite(last - n as i64) < e.get(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairFlags {
    pub separated: bool,
    pub strong_split: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every consecutive pair is separated and strongly split, every step
    /// integral: the numerics are consistent with a direct sum of pure pieces.
    DirectSumCertified,
    /// Every consecutive pair is separated and every step integral.
    CleanFiltrationCertified,
    /// Step `step` is non-integral although all separation hypotheses up to
    /// it hold; `witness` is that step's diagram.
    ObstructionFound {
        step: usize,
        witness: BettiDiagram,
    },
    Inconclusive,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(
            self,
            Verdict::DirectSumCertified | Verdict::CleanFiltrationCertified
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub chain: DecompositionChain,
    pub pairs: Vec<PairFlags>,
    pub step_integral: Vec<bool>,
    pub first_step_integral: bool,
    pub verdict: Verdict,
}

impl FiltrationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for FiltrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chain:")?;
        for line in self.chain.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "pairs:")?;
        for (k, p) in self.pairs.iter().enumerate() {
            writeln!(
                f,
                "  {} -> {}: separated={} strong_split={}",
                self.chain.steps[k].sequence,
                self.chain.steps[k + 1].sequence,
                yes_no(p.separated),
                yes_no(p.strong_split)
            )?;
        }
        let ints: Vec<&str> = self.step_integral.iter().map(|&b| yes_no(b)).collect();
        writeln!(f, "steps integral: {}", ints.join(" "))?;
        match &self.verdict {
            Verdict::DirectSumCertified => writeln!(f, "verdict: direct sum certified"),
            Verdict::CleanFiltrationCertified => {
                writeln!(f, "verdict: clean filtration certified")
            }
            Verdict::Inconclusive => writeln!(f, "verdict: inconclusive"),
            Verdict::ObstructionFound { step, witness } => {
                writeln!(f, "verdict: obstruction at step {step}")?;
                writeln!(f, "witness:")?;
                write!(f, "{witness}")
            }
        }
    }
}

fn pair_flags(chain: &DecompositionChain) -> Result<Vec<PairFlags>> {
    chain
        .steps
        .windows(2)
        .map(|w| {
            let (d, e) = (&w[0].sequence, &w[1].sequence);
            Ok(PairFlags {
                separated: is_strictly_separated(d, e)?,
                strong_split: d.get(d.n()).is_finite() && splits_strongly(d, e)?,
            })
        })
        .collect()
}

/// Number of leading steps whose integrality the separation hypotheses
/// force: step `k` is checked when every pair up to and including
/// `(k, k+1)` is separated, and the last step when every pair is.
fn checked_steps(pairs: &[PairFlags], len: usize) -> usize {
    pairs.iter().position(|p| !p.separated).unwrap_or(len)
}

/// Decomposes `diagram` and evaluates the separation, splitting and
/// integrality conditions along the chain.
pub fn analyze(diagram: &BettiDiagram, opts: AnalysisOptions) -> Result<FiltrationReport> {
    check_hypotheses(diagram, opts)?;
    let chain = bs_decompose(diagram)?;
    let pairs = pair_flags(&chain)?;
    let step_integral: Vec<bool> = chain.coefficients().map(|c| c.is_integer()).collect();

    let verdict = step_integral[..checked_steps(&pairs, chain.len())]
        .iter()
        .position(|&ok| !ok)
        .map(|k| Verdict::ObstructionFound {
            step: k,
            witness: chain.step_diagram(k),
        });
    let all_integral = step_integral.iter().all(|&b| b);
    let verdict = verdict.unwrap_or_else(|| {
        if all_integral && pairs.iter().all(|p| p.separated && p.strong_split) {
            Verdict::DirectSumCertified
        } else if all_integral && pairs.iter().all(|p| p.separated) {
            Verdict::CleanFiltrationCertified
        } else {
            Verdict::Inconclusive
        }
    });
    Ok(FiltrationReport {
        first_step_integral: step_integral[0],
        chain,
        pairs,
        step_integral,
        verdict,
    })
}

/// The least positive integer `c` such that every hypothesis-checked step of
/// `c * diagram` is integral.
///
/// Fails with `Inconclusive` if, at that `c`, a step beyond the separated
/// prefix is still non-integral: the criteria say nothing there.
pub fn minimal_integral_multiple(diagram: &BettiDiagram, opts: AnalysisOptions) -> Result<BigInt> {
    check_hypotheses(diagram, opts)?;
    let chain = bs_decompose(diagram)?;
    let pairs = pair_flags(&chain)?;
    let checked = checked_steps(&pairs, chain.len());
    let c = chain.steps[..checked]
        .iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.coefficient.denom()));
    let scale = Rational::from_integer(c.clone());
    if let Some((k, _)) = chain.steps[checked..]
        .iter()
        .enumerate()
        .find(|(_, s)| !(&s.coefficient * &scale).is_integer())
    {
        return Err(Error::Inconclusive(format!(
            "step {} is non-integral but not covered by the separation hypotheses",
            checked + k
        )));
    }
    Ok(c)
}

/// Cutoffs of the North fork: `f_0 = 1 + max deg of column 0`,
/// `f_1 = 1 + min deg of column 1`, and for `i > 1`,
/// `f_i = min{ j > f_{i-1} : beta_{i,j} != 0 }` (infinity if none).
pub fn north_fork_degrees(diagram: &BettiDiagram) -> Result<Vec<Degree>> {
    if diagram.n() < 1 {
        return Err(Error::validation("north fork needs columns 0 and 1"));
    }
    let f0 = diagram
        .max_degree(0)
        .ok_or_else(|| Error::validation("column 0 is empty"))?;
    let f1 = diagram
        .min_degree(1)
        .ok_or_else(|| Error::validation("column 1 is empty"))?;
    let mut f = vec![Degree::Finite(f0 + 1), Degree::Finite(f1 + 1)];
    for i in 2..=diagram.n() {
        let next = match f[i - 1] {
            Degree::Infinite => Degree::Infinite,
            Degree::Finite(prev) => diagram
                .column(i)
                .map(|(j, _)| j)
                .find(|&j| j > prev)
                .map(Degree::Finite)
                .unwrap_or(Degree::Infinite),
        };
        f.push(next);
    }
    Ok(f)
}

/// Keeps the entries with `j < f_i` in column `i`. Columns without a cutoff
/// are kept whole.
pub fn truncate(diagram: &BettiDiagram, cutoffs: &[Degree]) -> BettiDiagram {
    let kept = diagram
        .entries()
        .filter(|&((i, j), _)| match cutoffs.get(i) {
            None | Some(Degree::Infinite) => true,
            Some(Degree::Finite(f)) => j < *f,
        });
    BettiDiagram::from_entries(diagram.n(), kept.map(|(k, v)| (k, v.clone()))).expect("same shape")
}

/// Predicted Betti diagram of the cokernel of the North fork's first map:
/// the separated first step(s) plus a free part in column 0 that makes up the
/// generators of `diagram`.
///
/// By default this needs `d^0 << d^1`. With `extended_hypotheses`, the
/// prefix of steps sharing the minimal `d_1` is used instead, provided its
/// last sequence is separated from the next one.
pub fn predict_quotient_betti(
    diagram: &BettiDiagram,
    opts: AnalysisOptions,
) -> Result<BettiDiagram> {
    check_hypotheses(diagram, opts)?;
    let chain = bs_decompose(diagram)?;
    let d0_1 = chain.steps[0].sequence.get(1);
    let prefix = if opts.extended_hypotheses {
        chain
            .steps
            .iter()
            .take_while(|s| s.sequence.get(1) == d0_1)
            .count()
    } else {
        1
    };
    if prefix < chain.len()
        && !is_strictly_separated(
            &chain.steps[prefix - 1].sequence,
            &chain.steps[prefix].sequence,
        )?
    {
        return Err(Error::Inconclusive(format!(
            "{} and {} are not separated",
            chain.steps[prefix - 1].sequence,
            chain.steps[prefix].sequence
        )));
    }
    let core = (0..prefix).fold(BettiDiagram::zero(diagram.n()), |acc, k| {
        &acc + &chain.step_diagram(k)
    });
    let free = diagram.restrict_columns(0..=0);
    let free = free.subtract_nonneg(&core.restrict_columns(0..=0))?;
    Ok(&core + &free)
}

/// Whether `core + free` is forced to split as a direct sum: `core` has
/// codimension at least 2 and no generator of `free` sits below a generator
/// of `core`.
pub fn check_free_split(core: &BettiDiagram, free: &BettiDiagram) -> Result<bool> {
    if free.entries().any(|((i, _), _)| i != 0) {
        return Err(Error::validation("the free part must live in column 0"));
    }
    let codim_ok = match codimension(core) {
        None => true,
        Some(c) => c >= 2,
    };
    let degrees_ok = match (free.min_degree(0), core.max_degree(0)) {
        (Some(lo), Some(hi)) => lo >= hi,
        _ => true,
    };
    Ok(codim_ok && degrees_ok)
}
