//! Sparse rays: for a prime `p`, an integral diagram `D` such that `cD` has
//! an integrality obstruction for every `c` not divisible by `p`.
//!
//! For `p >= 5` the diagram is
//! `(1/p) pi~_(0,1,2,p) + (alpha/p) pi~_(0,p/2 down,p/2 up,p) + (1/p) pi~_(0,p-2,p-1,p)`
//! with `alpha` chosen to make `beta_{0,0}` integral. Small primes use two-step
//! constructions; the one for `p = 3` comes from [`find_obstructed_ray`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::degree::DegreeSequence;
use crate::diagram::BettiDiagram;
use crate::error::{Error, Result};
use crate::filtration::{
    analyze, is_strictly_separated, minimal_integral_multiple, AnalysisOptions, Verdict,
};
use crate::pure::smallest_integral_point;
use crate::rational::{format_rational, frac, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedSequence {
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
    pub sequence: DegreeSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseRayCertificate {
    pub p: u64,
    pub alpha: Option<u64>,
    /// `D = sum weight * pi~_sequence`.
    pub steps: Vec<WeightedSequence>,
    pub diagram: BettiDiagram,
    pub obstruction_multiple: u64,
    /// Set when the textbook construction for this prime fails its own
    /// checks and a searched substitute is returned instead.
    pub literal_failure: Option<String>,
}

impl SparseRayCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization is infallible")
    }
}

impl fmt::Display for SparseRayCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p: {}", self.p)?;
        if let Some(a) = self.alpha {
            writeln!(f, "alpha: {a}")?;
        }
        for s in &self.steps {
            writeln!(f, "{} * pi~{}", format_rational(&s.weight), s.sequence)?;
        }
        writeln!(f, "obstruction multiple: {}", self.obstruction_multiple)?;
        if let Some(note) = &self.literal_failure {
            writeln!(f, "note: {note}")?;
        }
        writeln!(f, "diagram:")?;
        write!(f, "{}", self.diagram)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn seq(d: &[i64]) -> DegreeSequence {
    DegreeSequence::from_finite(d).expect("increasing")
}

fn combine(steps: &[WeightedSequence]) -> BettiDiagram {
    steps.iter().fold(BettiDiagram::zero(3), |acc, s| {
        &acc + &smallest_integral_point(&s.sequence)
            .expect("finite sequence")
            .scaled(&s.weight)
    })
}

fn weighted(p: u64, pairs: &[(i64, &[i64])]) -> Vec<WeightedSequence> {
    pairs
        .iter()
        .map(|&(a, d)| WeightedSequence {
            weight: frac(a, p as i64),
            sequence: seq(d),
        })
        .collect()
}

/// The smallest positive `alpha` with `alpha + 1 + C(p-1, 2) = 0 mod p`.
pub fn alpha_for(p: u64) -> u64 {
    let r = (1 + binomial(p - 1, 2)) % p;
    if r == 0 {
        p
    } else {
        p - r
    }
}

fn construction_error(p: u64, what: impl fmt::Display) -> Error {
    Error::Construction(format!("p = {p}: {what}"))
}

/// Checks shared by every construction: integrality, separation of
/// consecutive sequences, and an obstruction multiple of exactly `p`.
fn certify(p: u64, steps: &[WeightedSequence], diagram: &BettiDiagram) -> Result<u64> {
    if let Some(((i, j), v)) = diagram.entries().find(|(_, v)| !v.is_integer()) {
        return Err(construction_error(
            p,
            format!(
                "beta_{{{i},{j}}} = {} is not an integer",
                format_rational(v)
            ),
        ));
    }
    for w in steps.windows(2) {
        if !is_strictly_separated(&w[0].sequence, &w[1].sequence)? {
            return Err(construction_error(
                p,
                format!("{} is not separated from {}", w[0].sequence, w[1].sequence),
            ));
        }
    }
    let m = minimal_integral_multiple(diagram, AnalysisOptions::default())?;
    if m != BigInt::from(p) {
        return Err(construction_error(
            p,
            format!("obstruction multiple is {m}"),
        ));
    }
    Ok(p)
}

fn main_construction(p: u64) -> Result<SparseRayCertificate> {
    let pi = p as i64;
    let alpha = alpha_for(p);
    let steps = weighted(
        p,
        &[
            (1, &[0, 1, 2, pi]),
            (alpha as i64, &[0, pi / 2, pi - pi / 2, pi]),
            (1, &[0, pi - 2, pi - 1, pi]),
        ],
    );
    let diagram = combine(&steps);

    let expected_b00 = frac(1 + alpha as i64 + binomial(p - 1, 2) as i64, pi);
    if diagram.get(0, 0) != expected_b00 {
        return Err(construction_error(
            p,
            format!(
                "beta_{{0,0}} = {}, expected {}",
                format_rational(&diagram.get(0, 0)),
                format_rational(&expected_b00)
            ),
        ));
    }
    let middle = smallest_integral_point(&steps[1].sequence)?;
    let middle_entries: Vec<&Rational> = middle.entries().map(|(_, v)| v).collect();
    if middle_entries != [&int(1), &int(pi), &int(pi), &int(1)] {
        return Err(construction_error(
            p,
            format!("pi~{} is not (1,p,p,1)", steps[1].sequence),
        ));
    }
    let obstruction_multiple = certify(p, &steps, &diagram)?;
    Ok(SparseRayCertificate {
        p,
        alpha: Some(alpha),
        steps,
        diagram,
        obstruction_multiple,
        literal_failure: None,
    })
}

/// The two-step diagram `(1/3) pi~_(0,1,2,5) + (2/3) pi~_(0,3,4,5)`: its
/// `beta_{0,0}` is `8/3`, so it is not a lattice point.
pub fn literal_p3_diagram() -> BettiDiagram {
    combine(&weighted(3, &[(1, &[0, 1, 2, 5]), (2, &[0, 3, 4, 5])]))
}

/// A certified sparse ray for the prime `p`.
pub fn sparse_ray(p: u64) -> Result<SparseRayCertificate> {
    if !is_prime(p) {
        return Err(Error::validation(format!("{p} is not prime")));
    }
    match p {
        2 => {
            let steps = weighted(2, &[(1, &[0, 1, 2, 4]), (1, &[0, 2, 3, 4])]);
            let diagram = combine(&steps);
            let obstruction_multiple = certify(p, &steps, &diagram)?;
            Ok(SparseRayCertificate {
                p,
                alpha: None,
                steps,
                diagram,
                obstruction_multiple,
                literal_failure: None,
            })
        }
        3 => {
            let literal = literal_p3_diagram();
            let note = format!(
                "(1/3) pi~(0,1,2,5) + (2/3) pi~(0,3,4,5) has beta_{{0,0}} = {}; replaced by a searched ray",
                format_rational(&literal.get(0, 0))
            );
            let mut cert = find_obstructed_ray(3, 8)?
                .ok_or_else(|| construction_error(3, "no ray found in the search window"))?;
            cert.literal_failure = Some(note);
            Ok(cert)
        }
        _ => main_construction(p),
    }
}

/// Searches two-step diagrams `(a/p) pi~_d + (b/p) pi~_e` with
/// `d = (0,x,y,m)`, `e = (0,x',y',m)`, `1 <= a, b < p` and `m <= max_degree`
/// for one that is integral with `d` separated from `e` and obstruction
/// multiple `p`.
///
/// Order: `m` ascending, then `d` lexicographically ascending, then `e`
/// descending, then `a`, then `b`. Returns the first hit.
pub fn find_obstructed_ray(p: u64, max_degree: i64) -> Result<Option<SparseRayCertificate>> {
    if !is_prime(p) {
        return Err(Error::validation(format!("{p} is not prime")));
    }
    for m in 3..=max_degree {
        let mut middles: Vec<(i64, i64)> = Vec::new();
        for x in 1..m {
            for y in x + 1..m {
                middles.push((x, y));
            }
        }
        for &(x, y) in &middles {
            let d = seq(&[0, x, y, m]);
            let td = smallest_integral_point(&d)?;
            for &(x2, y2) in middles.iter().rev() {
                let e = seq(&[0, x2, y2, m]);
                if !d.lt_termwise(&e) || !is_strictly_separated(&d, &e)? {
                    continue;
                }
                let te = smallest_integral_point(&e)?;
                for a in 1..p as i64 {
                    for b in 1..p as i64 {
                        let diagram =
                            &td.scaled(&frac(a, p as i64)) + &te.scaled(&frac(b, p as i64));
                        if !diagram.is_integral() {
                            continue;
                        }
                        let steps = weighted(p, &[(a, &[0, x, y, m]), (b, &[0, x2, y2, m])]);
                        if let Ok(obstruction_multiple) = certify(p, &steps, &diagram) {
                            return Ok(Some(SparseRayCertificate {
                                p,
                                alpha: None,
                                steps,
                                diagram,
                                obstruction_multiple,
                                literal_failure: None,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// For `c = 1..=upto`, whether `analyze(c D)` finds an obstruction.
pub fn obstruction_profile(diagram: &BettiDiagram, upto: u64) -> Result<Vec<bool>> {
    (1..=upto)
        .map(|c| {
            let scaled = diagram.scaled(&Rational::from_integer(BigInt::from(c)));
            let report = analyze(&scaled, AnalysisOptions::default())?;
            Ok(matches!(report.verdict, Verdict::ObstructionFound { .. }))
        })
        .collect()
}

/// `beta_{0,0}(pi~_(0,1,2,p))` and `beta_{3,p}(pi~_(0,p-2,p-1,p))`.
pub fn corner_entries(p: u64) -> (u64, u64) {
    let pi = p as i64;
    let as_u64 = |q: Rational| q.to_integer().to_u64().expect("positive integer");
    let a = smallest_integral_point(&seq(&[0, 1, 2, pi])).expect("finite");
    let b = smallest_integral_point(&seq(&[0, pi - 2, pi - 1, pi])).expect("finite");
    (as_u64(a.get(0, 0)), as_u64(b.get(3, pi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..32).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert!(sparse_ray(9).is_err());
        assert!(sparse_ray(1).is_err());
    }

    #[test]
    fn alphas() {
        assert_eq!(alpha_for(5), 3);
        assert_eq!(alpha_for(7), 5);
        for p in [5, 7, 11, 13] {
            assert_eq!((alpha_for(p) + 1 + binomial(p - 1, 2)) % p, 0);
        }
    }

    #[test]
    fn p5_is_the_three_step_example() {
        let c = sparse_ray(5).unwrap();
        assert_eq!(c.alpha, Some(3));
        assert_eq!(c.obstruction_multiple, 5);
        assert_eq!(c.diagram.to_text().unwrap(), "2 3 2 -\n- 3 3 -\n- 2 3 2\n");
    }

    #[test]
    fn p2_and_p7() {
        let c = sparse_ray(2).unwrap();
        assert_eq!(c.diagram.to_text().unwrap(), "2 4 3 -\n- 3 4 2\n");
        assert_eq!(c.obstruction_multiple, 2);
        let c = sparse_ray(7).unwrap();
        assert_eq!(c.alpha, Some(5));
        assert_eq!(c.obstruction_multiple, 7);
    }

    #[test]
    fn p3_repair() {
        assert_eq!(literal_p3_diagram().get(0, 0), frac(8, 3));
        let c = sparse_ray(3).unwrap();
        assert!(c.literal_failure.as_deref().unwrap().contains("8/3"));
        assert_eq!(
            c.diagram.to_text().unwrap(),
            "4 8 5 -\n- - - -\n- - - -\n- 10 16 7\n"
        );
        assert_eq!(c.steps[0].sequence, seq(&[0, 1, 2, 6]));
        assert_eq!(c.steps[1].sequence, seq(&[0, 4, 5, 6]));
        assert_eq!(c.obstruction_multiple, 3);
    }

    #[test]
    fn search_finds_p2_ray() {
        let c = find_obstructed_ray(2, 6).unwrap().unwrap();
        assert_eq!(c.diagram, sparse_ray(2).unwrap().diagram);
    }
}
