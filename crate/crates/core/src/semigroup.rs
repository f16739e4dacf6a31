//! Betti diagrams of modules `M = M_0 + M_1` over `k[x,y,z]` (equivalently
//! representations of the three-arrow Kronecker quiver) on the simplex
//! spanned by `(0,1,2,4) < (0,1,3,4) < (0,2,3,4)`.
//!
//! Lattice points are written `4r pi_(0,1,2,4) + 2s pi_(0,1,3,4) + 4t pi_(0,2,3,4)`
//! for non-negative integer triplets `(r, s, t)`. Ten triplets generate the
//! semigroup of diagrams that actually come from modules; membership is
//! decided twice, once by a case analysis on `s` and once by searching for a
//! sum of generators.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::degree::DegreeSequence;
use crate::diagram::BettiDiagram;
use crate::error::{Error, Result};
use crate::pure::pure_diagram;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triplet {
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl Triplet {
    pub const fn new(r: u32, s: u32, t: u32) -> Self {
        Triplet { r, s, t }
    }

    pub fn sum(&self) -> u32 {
        self.r + self.s + self.t
    }

    /// Componentwise difference, `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &Triplet) -> Option<Triplet> {
        Some(Triplet {
            r: self.r.checked_sub(other.r)?,
            s: self.s.checked_sub(other.s)?,
            t: self.t.checked_sub(other.t)?,
        })
    }

    /// `(t, s, r)`, the triplet of the graded dual.
    pub fn dual(&self) -> Triplet {
        Triplet::new(self.t, self.s, self.r)
    }
}

impl Add for Triplet {
    type Output = Triplet;

    fn add(self, o: Triplet) -> Triplet {
        Triplet::new(self.r + o.r, self.s + o.s, self.t + o.t)
    }
}

impl fmt::Display for Triplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

fn simplex() -> [DegreeSequence; 3] {
    [[0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4]]
        .map(|d| DegreeSequence::from_finite(&d).expect("valid sequence"))
}

/// The six positions a diagram on the simplex can occupy.
const POSITIONS: [(usize, i64); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (2, 3), (3, 4)];

pub fn triplet_to_diagram(t: Triplet) -> BettiDiagram {
    let [a, b, c] = simplex();
    let weights = [4 * t.r as i64, 2 * t.s as i64, 4 * t.t as i64];
    [a, b, c]
        .iter()
        .zip(weights)
        .fold(BettiDiagram::zero(3), |acc, (d, w)| {
            &acc + &pure_diagram(d).expect("finite").scaled(&int(w))
        })
}

/// Reads `(r, s, t)` back from a diagram: `r = beta_{2,2}`, `t = beta_{1,2}`,
/// `s = 3 beta_{1,1} - 4 beta_{2,2}`.
pub fn diagram_to_triplet(d: &BettiDiagram) -> Result<Triplet> {
    if d.n() != 3 {
        return Err(Error::NotInSimplex(format!(
            "expected n = 3, got {}",
            d.n()
        )));
    }
    if let Some(((i, j), _)) = d.entries().find(|(pos, _)| !POSITIONS.contains(pos)) {
        return Err(Error::NotInSimplex(format!(
            "entry at (i={i}, j={j}) is off the simplex"
        )));
    }
    let coord = |q: Rational, name: &str| -> Result<u32> {
        if !q.is_integer() || q.is_negative() {
            return Err(Error::NotInSimplex(format!(
                "{name} = {q} is not a non-negative integer"
            )));
        }
        q.to_integer()
            .to_u32()
            .ok_or_else(|| Error::NotInSimplex(format!("{name} = {q} is too large")))
    };
    let r = coord(d.get(2, 2), "r")?;
    let t = coord(d.get(1, 2), "t")?;
    let s = coord(int(3) * d.get(1, 1) - int(4) * d.get(2, 2), "s")?;
    let trip = Triplet::new(r, s, t);
    if triplet_to_diagram(trip) != *d {
        return Err(Error::NotInSimplex(format!(
            "diagram is not the image of {trip}"
        )));
    }
    Ok(trip)
}

/// Whether the triplet's diagram is entrywise integral.
pub fn is_admissible(t: Triplet) -> bool {
    triplet_to_diagram(t).is_integral()
}

/// Closed form of [`is_admissible`]: the entries are
/// `(3r+s+t)/6, (4r+s)/3, r, t, (s+4t)/3, (r+s+3t)/6`, which are all
/// integers iff `r+s = 0 mod 3`, `s+t = 0 mod 3` and `r+s+t = 0 mod 2`.
pub fn is_admissible_closed_form(t: Triplet) -> bool {
    (t.r + t.s).is_multiple_of(3) && (t.s + t.t).is_multiple_of(3) && t.sum().is_multiple_of(2)
}

pub const GENERATORS: [Triplet; 10] = [
    Triplet::new(6, 0, 0),
    Triplet::new(0, 0, 6),
    Triplet::new(1, 2, 1),
    Triplet::new(3, 3, 0),
    Triplet::new(0, 3, 3),
    Triplet::new(1, 8, 1),
    Triplet::new(3, 9, 0),
    Triplet::new(0, 9, 3),
    Triplet::new(0, 12, 0),
    Triplet::new(0, 18, 0),
];

pub fn generators() -> Vec<(Triplet, BettiDiagram)> {
    GENERATORS
        .iter()
        .map(|&g| (g, triplet_to_diagram(g)))
        .collect()
}

/// How firmly an exclusion is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Divisibility forced by the splitting of pure summands.
    Divisibility,
    /// Argued in full via the North fork and monotonicity.
    CaseAnalysis,
    /// Dual (under `M -> M^v`) of a family argued in full.
    Duality,
    /// Stated to follow from an analogous, unreproduced analysis.
    AssertedByAnalogy,
    /// Relies on an earlier published result.
    Cited,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MembershipResult {
    Member {
        decomposition: Vec<Triplet>,
    },
    Excluded {
        family: String,
        provenance: Provenance,
    },
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member { .. })
    }
}

impl fmt::Display for MembershipResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipResult::Member { decomposition } => {
                let parts: Vec<String> = decomposition.iter().map(|t| t.to_string()).collect();
                write!(
                    f,
                    "member: {}",
                    if parts.is_empty() {
                        "(empty sum)".to_string()
                    } else {
                        parts.join(" + ")
                    }
                )
            }
            MembershipResult::Excluded { family, .. } => write!(f, "excluded: {family}"),
        }
    }
}

/// `None` for members, the excluded family otherwise. Assumes admissibility.
fn exclusion(t: Triplet) -> Option<(String, Provenance)> {
    let (r6, t6) = (t.r % 6, t.t % 6);
    match t.s {
        0 if !(r6 == 0 && t6 == 0) => Some((
            format!("s=0, family ({}+6γ,0,{}+6α)", r6, t6),
            Provenance::Divisibility,
        )),
        1 => {
            let prov = if r6 == 2 {
                Provenance::CaseAnalysis
            } else {
                Provenance::Duality
            };
            Some((format!("s=1, family ({}+6γ,1,{}+6α)", r6, t6), prov))
        }
        2 if r6 == 4 && t6 == 4 => Some((
            "s=2, family (4+6γ,2,4+6α)".to_string(),
            Provenance::AssertedByAnalogy,
        )),
        4 if r6 == 5 && t6 == 5 => Some((
            "s=4, family (5+6γ,4,5+6α)".to_string(),
            Provenance::AssertedByAnalogy,
        )),
        6 if t.r == 0 && t.t == 0 => Some(("s=6 exception".to_string(), Provenance::Cited)),
        _ => None,
    }
}

/// Case-analysis verdict on membership, without producing a decomposition.
pub fn classify(t: Triplet) -> Result<bool> {
    require_admissible(t)?;
    Ok(exclusion(t).is_none())
}

fn require_admissible(t: Triplet) -> Result<()> {
    if !is_admissible(t) {
        return Err(Error::validation(format!(
            "{t} does not give an integral diagram"
        )));
    }
    Ok(())
}

/// Writes `t` as a sum of generators, trying generators in list order with
/// non-decreasing index. Complete: every generator has coordinate sum at
/// least 4, so the depth is bounded by `sum / 4`.
pub fn decompose_into_generators(t: Triplet) -> Option<Vec<Triplet>> {
    fn go(
        rest: Triplet,
        from: usize,
        acc: &mut Vec<Triplet>,
        dead: &mut HashSet<(Triplet, usize)>,
    ) -> bool {
        if rest.sum() == 0 {
            return true;
        }
        if dead.contains(&(rest, from)) {
            return false;
        }
        for (k, g) in GENERATORS.iter().enumerate().skip(from) {
            if let Some(next) = rest.checked_sub(g) {
                acc.push(*g);
                if go(next, k, acc, dead) {
                    return true;
                }
                acc.pop();
            }
        }
        dead.insert((rest, from));
        false
    }
    let mut acc = Vec::new();
    go(t, 0, &mut acc, &mut HashSet::new()).then_some(acc)
}

/// Membership in the semigroup of module diagrams, with a generator
/// decomposition for members and the excluded family otherwise.
pub fn is_in_bmod(t: Triplet) -> Result<MembershipResult> {
    require_admissible(t)?;
    match exclusion(t) {
        Some((family, provenance)) => Ok(MembershipResult::Excluded { family, provenance }),
        None => decompose_into_generators(t)
            .map(|decomposition| MembershipResult::Member { decomposition })
            .ok_or_else(|| {
                Error::Construction(format!(
                    "{t} is classified as a member but is no sum of generators"
                ))
            }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedTriplet {
    pub triplet: Triplet,
    pub classified_member: bool,
    pub decomposition: Option<Vec<Triplet>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub bound: u32,
    pub triplets: Vec<EnumeratedTriplet>,
    pub disagreements: Vec<Triplet>,
    pub bad_decompositions: Vec<Triplet>,
}

impl EnumerationReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty() && self.bad_decompositions.is_empty()
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members = self.triplets.iter().filter(|e| e.classified_member).count();
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "admissible triplets: {}", self.triplets.len())?;
        writeln!(f, "members: {members}")?;
        writeln!(f, "excluded: {}", self.triplets.len() - members)?;
        writeln!(f, "disagreements: {}", self.disagreements.len())?;
        for t in &self.disagreements {
            writeln!(f, "  {t}")?;
        }
        writeln!(f, "bad decompositions: {}", self.bad_decompositions.len())
    }
}

/// Every admissible triplet with `r + s + t <= bound`, classified by the case
/// analysis and, independently, by reachability from the generators over the
/// whole box. Reports any triplet on which the two disagree.
pub fn enumerate_members(bound: u32) -> EnumerationReport {
    let b = bound as usize;
    let idx = |t: Triplet| (t.r as usize * (b + 1) + t.s as usize) * (b + 1) + t.t as usize;
    // last generator used to reach each point, by increasing coordinate sum
    let mut via: Vec<Option<Option<usize>>> = vec![None; (b + 1).pow(3)];
    via[0] = Some(None);
    let mut by_sum: Vec<Vec<Triplet>> = vec![Vec::new(); b + 1];
    for r in 0..=bound {
        for s in 0..=bound - r {
            for t in 0..=bound - r - s {
                by_sum[(r + s + t) as usize].push(Triplet::new(r, s, t));
            }
        }
    }
    for layer in &by_sum {
        for &p in layer {
            if via[idx(p)].is_none() {
                continue;
            }
            for (k, g) in GENERATORS.iter().enumerate() {
                let q = p + *g;
                if q.sum() <= bound && via[idx(q)].is_none() {
                    via[idx(q)] = Some(Some(k));
                }
            }
        }
    }
    let unwind = |mut p: Triplet| -> Vec<Triplet> {
        let mut out = Vec::new();
        while let Some(Some(k)) = via[idx(p)] {
            out.push(GENERATORS[k]);
            p = p.checked_sub(&GENERATORS[k]).expect("reached by adding");
        }
        out.reverse();
        out
    };

    let mut triplets = Vec::new();
    let mut disagreements = Vec::new();
    let mut bad_decompositions = Vec::new();
    for layer in &by_sum {
        for &p in layer {
            if !is_admissible(p) {
                continue;
            }
            let classified_member = exclusion(p).is_none();
            let decomposition = via[idx(p)].map(|_| unwind(p));
            if classified_member != decomposition.is_some() {
                disagreements.push(p);
            }
            if let Some(dec) = &decomposition {
                let total = dec.iter().fold(Triplet::new(0, 0, 0), |a, g| a + *g);
                if total != p {
                    bad_decompositions.push(p);
                }
            }
            triplets.push(EnumeratedTriplet {
                triplet: p,
                classified_member,
                decomposition,
            });
        }
    }
    triplets.sort_by_key(|e| e.triplet);
    EnumerationReport {
        bound,
        triplets,
        disagreements,
        bad_decompositions,
    }
}

/// Whether `t` is a non-negative integer combination of the generators other
/// than `skip`.
pub fn is_combination_excluding(t: Triplet, skip: usize) -> bool {
    fn go(rest: Triplet, from: usize, skip: usize) -> bool {
        if rest.sum() == 0 {
            return true;
        }
        GENERATORS
            .iter()
            .enumerate()
            .skip(from)
            .any(|(k, g)| k != skip && rest.checked_sub(g).is_some_and(|next| go(next, k, skip)))
    }
    t.sum() > 0 && go(t, 0, skip)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(t: Triplet) -> String {
        triplet_to_diagram(t).to_text().unwrap()
    }

    #[test]
    fn triplet_diagrams() {
        assert_eq!(text(Triplet::new(6, 0, 0)), "3 8 6 -\n- - - 1\n");
        assert_eq!(text(Triplet::new(1, 2, 1)), "1 2 1 -\n- 1 2 1\n");
        assert!(triplet_to_diagram(Triplet::new(0, 0, 0)).is_zero());
    }

    #[test]
    fn inverse_map() {
        let d = BettiDiagram::parse_text("1 2 1 -\n- 1 2 1\n", None).unwrap();
        assert_eq!(diagram_to_triplet(&d).unwrap(), Triplet::new(1, 2, 1));
        let d = BettiDiagram::parse_text("2 4 1 -\n- 1 4 2\n", None).unwrap();
        assert_eq!(diagram_to_triplet(&d).unwrap(), Triplet::new(1, 8, 1));
        assert_eq!(
            diagram_to_triplet(&BettiDiagram::zero(3)).unwrap(),
            Triplet::new(0, 0, 0)
        );
        let off = BettiDiagram::parse_text("1 - - 1\n", None).unwrap();
        assert!(matches!(
            diagram_to_triplet(&off),
            Err(Error::NotInSimplex(_))
        ));
        let not_image = BettiDiagram::parse_text("1 2 1 -\n- 1 2 5\n", None).unwrap();
        assert!(matches!(
            diagram_to_triplet(&not_image),
            Err(Error::NotInSimplex(_))
        ));
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(Triplet::new(1, 2, 1)));
        assert!(!is_admissible(Triplet::new(1, 1, 1)));
        assert_eq!(
            triplet_to_diagram(Triplet::new(1, 1, 1)).get(1, 1),
            crate::rational::frac(5, 3)
        );
        assert!(is_admissible(Triplet::new(0, 0, 0)));
        // r + t = 2 is not divisible by 3, yet (1,2,1) is integral
        assert!(is_admissible_closed_form(Triplet::new(1, 2, 1)));
    }

    #[test]
    fn membership_examples() {
        let excl = |r, s, t| match is_in_bmod(Triplet::new(r, s, t)).unwrap() {
            MembershipResult::Excluded { family, .. } => family,
            other => panic!("({r},{s},{t}) unexpectedly {other}"),
        };
        assert_eq!(excl(0, 6, 0), "s=6 exception");
        assert_eq!(excl(5, 1, 2), "s=1, family (5+6γ,1,2+6α)");
        assert_eq!(excl(4, 2, 4), "s=2, family (4+6γ,2,4+6α)");
        assert_eq!(excl(5, 4, 5), "s=4, family (5+6γ,4,5+6α)");
        assert_eq!(
            is_in_bmod(Triplet::new(2, 4, 2)).unwrap(),
            MembershipResult::Member {
                decomposition: vec![Triplet::new(1, 2, 1), Triplet::new(1, 2, 1)]
            }
        );
        assert_eq!(
            is_in_bmod(Triplet::new(6, 0, 0)).unwrap(),
            MembershipResult::Member {
                decomposition: vec![Triplet::new(6, 0, 0)]
            }
        );
        assert!(is_in_bmod(Triplet::new(1, 1, 1)).is_err());
    }

    #[test]
    fn enumeration_small_bounds() {
        let r = enumerate_members(0);
        assert_eq!(r.triplets.len(), 1);
        assert_eq!(r.triplets[0].triplet, Triplet::new(0, 0, 0));
        assert!(r.agrees());
        assert!(enumerate_members(12).agrees());
    }

    #[test]
    fn generator_diagrams_are_integral() {
        for (g, d) in generators() {
            assert!(d.is_integral(), "{g}");
            assert_eq!(diagram_to_triplet(&d).unwrap(), g);
        }
    }
}
