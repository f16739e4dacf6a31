//! Greedy Boij-Söderberg decomposition along the top strand.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::degree::DegreeSequence;
use crate::diagram::BettiDiagram;
use crate::error::{Error, Result};
use crate::pure::{integral_scale, pure_diagram, pure_entry, smallest_integral_point, top_strand};
use crate::rational::{format_rational, Rational};

/// Which generator of the ray the chain coefficients refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Coefficients of `pi_d`.
    Pi,
    /// Coefficients of `pi~_d`, the primitive integral point.
    PiTilde,
}

impl std::str::FromStr for Units {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Units::Pi),
            "pitilde" | "pi~" => Ok(Units::PiTilde),
            other => Err(Error::Parse(format!("unknown units {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    #[serde(rename = "c", with = "crate::rational::serde_str")]
    pub coefficient: Rational,
    #[serde(rename = "d")]
    pub sequence: DegreeSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionChain {
    pub units: Units,
    pub steps: Vec<ChainStep>,
}

impl DecompositionChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn sequences(&self) -> impl DoubleEndedIterator<Item = &DegreeSequence> {
        self.steps.iter().map(|s| &s.sequence)
    }

    pub fn coefficients(&self) -> impl DoubleEndedIterator<Item = &Rational> {
        self.steps.iter().map(|s| &s.coefficient)
    }

    /// Re-expresses the coefficients in `units`.
    pub fn to_units(&self, units: Units) -> DecompositionChain {
        if units == self.units {
            return self.clone();
        }
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let m = Rational::from_integer(integral_scale(&s.sequence).expect("valid chain"));
                let coefficient = match units {
                    Units::Pi => &s.coefficient * &m,
                    Units::PiTilde => &s.coefficient / &m,
                };
                ChainStep {
                    coefficient,
                    sequence: s.sequence.clone(),
                }
            })
            .collect();
        DecompositionChain { units, steps }
    }

    /// The diagram of step `k`, i.e. `c_k pi_{d^k}`.
    pub fn step_diagram(&self, k: usize) -> BettiDiagram {
        let s = &self.steps[k];
        let base = match self.units {
            Units::Pi => pure_diagram(&s.sequence),
            Units::PiTilde => smallest_integral_point(&s.sequence),
        }
        .expect("valid chain");
        base.scaled(&s.coefficient)
    }

    /// `sum_k c_k pi_{d^k}`.
    pub fn reconstruct(&self, n: usize) -> BettiDiagram {
        (0..self.steps.len()).fold(BettiDiagram::zero(n), |acc, k| &acc + &self.step_diagram(k))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chain serialization is infallible")
    }
}

impl fmt::Display for DecompositionChain {
    /// One line per step: `c * pi~(d_0,...,d_n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.units {
            Units::Pi => "pi",
            Units::PiTilde => "pi~",
        };
        for s in &self.steps {
            writeln!(
                f,
                "{} * {name}{}",
                format_rational(&s.coefficient),
                s.sequence
            )?;
        }
        Ok(())
    }
}

/// Decomposes `diagram` as a positive combination of pure diagrams along a
/// strictly increasing chain. Coefficients are reported in `pi~` units.
pub fn bs_decompose(diagram: &BettiDiagram) -> Result<DecompositionChain> {
    bs_decompose_in(diagram, Units::PiTilde)
}

pub fn bs_decompose_in(diagram: &BettiDiagram, units: Units) -> Result<DecompositionChain> {
    if !diagram.is_nonnegative() {
        return Err(Error::not_in_cone(
            "diagram has a negative entry",
            diagram.clone(),
        ));
    }
    let bound = diagram.support_len();
    let mut remainder = diagram.clone();
    let mut steps: Vec<ChainStep> = Vec::new();

    while !remainder.is_zero() {
        if steps.len() >= bound {
            return Err(Error::not_in_cone(
                format!("no termination within {bound} steps"),
                remainder,
            ));
        }
        let d = top_strand(&remainder)?;
        if let Some(prev) = steps.last() {
            if !prev.sequence.lt_termwise(&d) {
                return Err(Error::not_in_cone(
                    format!("chain is not increasing: {} then {d}", prev.sequence),
                    remainder,
                ));
            }
        }
        let c = d
            .finite_entries()
            .map(|(i, di)| remainder.get(i, di) / pure_entry(&d, i).expect("finite"))
            .min()
            .expect("top strand has a finite entry");
        let step = pure_diagram(&d)?.scaled(&c);
        let next = &remainder - &step;
        let zeroed = d.finite_entries().any(|(i, di)| next.get(i, di).is_zero());
        if next.entries().any(|(_, v)| v.is_negative()) || !zeroed {
            return Err(Error::not_in_cone(
                format!("greedy step along {d} failed"),
                remainder,
            ));
        }
        remainder = next;
        steps.push(ChainStep {
            coefficient: c,
            sequence: d,
        });
    }

    Ok(DecompositionChain {
        units: Units::Pi,
        steps,
    }
    .to_units(units))
}

pub fn is_in_cone(diagram: &BettiDiagram) -> bool {
    bs_decompose_in(diagram, Units::Pi).is_ok()
}
