//! Pure diagrams `pi_d` from the Herzog-Kühl product formula, their
//! primitive integral multiples, and the top strand of a diagram.

use num_bigint::BigInt;
use num_traits::One;

use crate::degree::{Degree, DegreeSequence};
use crate::diagram::BettiDiagram;
use crate::error::{Error, Result};
use crate::rational::{lcm_of_denominators, Rational};

/// Entry `i` of `pi_d`: `prod_{k != i, d_k finite} 1 / |d_i - d_k|`, or
/// `None` when `d_i` is infinite.
pub fn pure_entry(d: &DegreeSequence, i: usize) -> Option<Rational> {
    let di = d.get(i).finite()?;
    let denom: BigInt = d
        .finite_entries()
        .filter(|&(k, _)| k != i)
        .map(|(_, dk)| BigInt::from((di - dk).abs()))
        .product();
    Some(Rational::new(BigInt::one(), denom))
}

fn require_finite_start(d: &DegreeSequence) -> Result<()> {
    if !d.get(0).is_finite() {
        return Err(Error::validation(format!(
            "pure diagram needs a finite d_0, got {d}"
        )));
    }
    Ok(())
}

/// `pi_d`: one entry per finite position `(i, d_i)`.
pub fn pure_diagram(d: &DegreeSequence) -> Result<BettiDiagram> {
    require_finite_start(d)?;
    let mut out = BettiDiagram::zero(d.n());
    for (i, di) in d.finite_entries() {
        out.set(i, di, pure_entry(d, i).expect("finite position"));
    }
    Ok(out)
}

/// The factor `m` with `pi~_d = m * pi_d`. Every entry of `pi_d` has
/// numerator 1, so the lcm of denominators is the least such scale.
pub fn integral_scale(d: &DegreeSequence) -> Result<BigInt> {
    let p = pure_diagram(d)?;
    Ok(lcm_of_denominators(p.entries().map(|(_, v)| v)))
}

/// `pi~_d`, the smallest integral point on the ray of `pi_d`.
pub fn smallest_integral_point(d: &DegreeSequence) -> Result<BettiDiagram> {
    let p = pure_diagram(d)?;
    let m = lcm_of_denominators(p.entries().map(|(_, v)| v));
    Ok(p.scaled(&Rational::from_integer(m)))
}

/// The sequence of minimal degrees per column, infinity for zero columns.
///
/// Fails with `NotInCone` when the diagram has negative entries, a zero
/// column before a nonzero one, or minimal degrees that do not increase
/// by at least one.
pub fn top_strand(diagram: &BettiDiagram) -> Result<DegreeSequence> {
    if diagram.is_zero() {
        return Err(Error::validation("the zero diagram has no top strand"));
    }
    if !diagram.is_nonnegative() {
        return Err(Error::not_in_cone("negative entry", diagram.clone()));
    }
    let mins: Vec<Degree> = (0..=diagram.n())
        .map(|i| {
            diagram
                .min_degree(i)
                .map(Degree::Finite)
                .unwrap_or(Degree::Infinite)
        })
        .collect();
    if !mins[0].is_finite() {
        return Err(Error::not_in_cone("column 0 is empty", diagram.clone()));
    }
    DegreeSequence::new(mins).map_err(|e| {
        let reason = match e {
            Error::Validation(msg) => format!("top strand is not a degree sequence: {msg}"),
            other => other.to_string(),
        };
        Error::not_in_cone(reason, diagram.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn seq(s: &str) -> DegreeSequence {
        s.parse().unwrap()
    }

    fn entries(d: &BettiDiagram) -> Vec<Rational> {
        d.entries().map(|(_, v)| v.clone()).collect()
    }

    #[test]
    fn pure_entries() {
        let p = pure_diagram(&seq("(0,1,2,4)")).unwrap();
        assert_eq!(
            entries(&p),
            vec![frac(1, 8), frac(1, 3), frac(1, 4), frac(1, 24)]
        );
        let p = pure_diagram(&seq("(0,1,2,5)")).unwrap();
        assert_eq!(
            entries(&p),
            vec![frac(1, 10), frac(1, 4), frac(1, 6), frac(1, 60)]
        );
        assert_eq!(p.get(3, 5), frac(1, 60));
    }

    #[test]
    fn empty_product_is_one() {
        let p = pure_diagram(&seq("(0,inf,inf,inf)")).unwrap();
        assert_eq!(p.support_len(), 1);
        assert_eq!(p.get(0, 0), int(1));
    }

    #[test]
    fn infinite_start_rejected() {
        assert!(pure_diagram(&seq("(inf,inf)")).is_err());
    }

    #[test]
    fn integral_points() {
        let cases = [
            ("(0,1,2,5)", [6, 15, 10, 1]),
            ("(0,2,3,5)", [1, 5, 5, 1]),
            ("(0,3,4,5)", [1, 10, 15, 6]),
            ("(0,1,2,4)", [3, 8, 6, 1]),
        ];
        for (d, want) in cases {
            let t = smallest_integral_point(&seq(d)).unwrap();
            let want: Vec<Rational> = want.iter().map(|&v| int(v)).collect();
            assert_eq!(entries(&t), want, "{d}");
        }
    }

    #[test]
    fn top_strand_of_example_diagram() {
        let d = BettiDiagram::parse_text("2 3 2 -\n- 3 3 -\n- 2 3 2\n", None).unwrap();
        assert_eq!(top_strand(&d).unwrap(), seq("(0,1,2,5)"));
    }

    #[test]
    fn top_strand_failures() {
        assert!(matches!(
            top_strand(&BettiDiagram::zero(3)),
            Err(Error::Validation(_))
        ));
        let mut d = BettiDiagram::zero(3);
        d.set(0, 0, int(1));
        d.set(1, 3, int(1));
        d.set(2, 2, int(1));
        assert!(matches!(top_strand(&d), Err(Error::NotInCone { .. })));
        let mut gap = BettiDiagram::zero(3);
        gap.set(0, 0, int(1));
        gap.set(2, 2, int(1));
        assert!(matches!(top_strand(&gap), Err(Error::NotInCone { .. })));
    }
}
