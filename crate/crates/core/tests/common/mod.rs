#![allow(dead_code)]

use puresplit::rational::frac;
use puresplit::{
    pure_diagram, BettiDiagram, ChainStep, DecompositionChain, Degree, DegreeSequence, Units,
};
use rand::Rng;

fn bump(rng: &mut impl Rng, cur: &mut [Degree], max_deg: i64) -> bool {
    let last = cur.iter().rposition(|d| d.is_finite()).expect("finite d_0");
    for _ in 0..20 {
        let k = rng.gen_range(0..=last);
        if k == last && k > 0 && rng.gen_bool(0.15) {
            cur[k] = Degree::Infinite;
            return true;
        }
        let Degree::Finite(v) = cur[k] else { continue };
        let room = match cur.get(k + 1) {
            Some(Degree::Finite(next)) => v + 1 < *next,
            _ => true,
        };
        if room && v < max_deg {
            cur[k] = Degree::Finite(v + 1);
            return true;
        }
    }
    false
}

/// A random strictly increasing chain with positive rational coefficients in
/// `pi` units, over `n <= max_n` variables.
pub fn random_chain(
    rng: &mut impl Rng,
    max_len: usize,
    max_deg: i64,
    max_n: usize,
) -> (usize, DecompositionChain) {
    let n = rng.gen_range(1..=max_n);
    let mut start: Vec<i64> = rand::seq::index::sample(rng, (max_deg + 1) as usize, n + 1)
        .into_iter()
        .map(|v| v as i64)
        .collect();
    start.sort();
    let mut cur: Vec<Degree> = start.into_iter().map(Degree::Finite).collect();
    let len = rng.gen_range(1..=max_len);
    let mut steps = Vec::new();
    for k in 0..len {
        if k > 0 {
            let bumps = rng.gen_range(1..=3);
            let mut moved = false;
            for _ in 0..bumps {
                moved |= bump(rng, &mut cur, max_deg);
            }
            if !moved {
                break;
            }
        }
        steps.push(ChainStep {
            coefficient: frac(rng.gen_range(1..=30), rng.gen_range(1..=7)),
            sequence: DegreeSequence::new(cur.clone()).expect("valid by construction"),
        });
    }
    (
        n,
        DecompositionChain {
            units: Units::Pi,
            steps,
        },
    )
}

pub fn diagram_of(n: usize, chain: &DecompositionChain) -> BettiDiagram {
    chain.steps.iter().fold(BettiDiagram::zero(n), |acc, s| {
        &acc + &pure_diagram(&s.sequence).unwrap().scaled(&s.coefficient)
    })
}
