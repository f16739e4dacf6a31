//! The numerator `K(t) = sum_{i,j} (-1)^i beta_{i,j} t^j` of the Hilbert
//! series, as a Laurent polynomial with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::diagram::BettiDiagram;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertNumerator {
    coefficients: BTreeMap<i64, Rational>,
}

impl HilbertNumerator {
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = BTreeMap::new();
        for (j, c) in coeffs {
            *out.entry(j).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        HilbertNumerator { coefficients: out }
    }

    pub fn coefficient(&self, j: i64) -> Rational {
        self.coefficients
            .get(&j)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coefficients.iter().map(|(&j, c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `K / (1 - t)` when `K(1) = 0`. The quotient's coefficient at `t^k` is
    /// the prefix sum of `K`'s coefficients up to `k`.
    pub fn divide_one_minus_t(&self) -> Option<HilbertNumerator> {
        let (&lo, _) = self.coefficients.first_key_value()?;
        let (&hi, _) = self.coefficients.last_key_value()?;
        let mut acc = Rational::zero();
        let mut q = Vec::new();
        for k in lo..=hi {
            acc += self.coefficient(k);
            if k < hi {
                q.push((k, acc.clone()));
            }
        }
        acc.is_zero()
            .then(|| HilbertNumerator::from_coefficients(q))
    }

    /// Largest `c` with `(1 - t)^c | K`; `None` for `K = 0`.
    pub fn one_minus_t_order(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut k = self.clone();
        let mut order = 0;
        while let Some(q) = k.divide_one_minus_t() {
            k = q;
            order += 1;
        }
        Some(order)
    }

    pub fn is_divisible_by_one_minus_t_pow(&self, n: usize) -> bool {
        match self.one_minus_t_order() {
            None => true,
            Some(c) => c >= n,
        }
    }

    pub fn linear_combination(a: &Rational, k: &Self, b: &Rational, l: &Self) -> Self {
        Self::from_coefficients(
            k.coefficients()
                .map(|(j, c)| (j, c * a))
                .chain(l.coefficients().map(|(j, c)| (j, c * b))),
        )
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (j, c)) in self.coefficients().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let show_coeff = !mag.is_one() || j == 0;
            if show_coeff {
                f.write_str(&format_rational(&mag))?;
            }
            match j {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{j}")?,
            }
        }
        Ok(())
    }
}

pub fn hilbert_numerator(diagram: &BettiDiagram) -> HilbertNumerator {
    HilbertNumerator::from_coefficients(diagram.entries().map(|((i, j), v)| {
        let v = if i % 2 == 0 { v.clone() } else { -v };
        (j, v)
    }))
}

/// Whether the numerical data is compatible with a finite-length module over
/// `n` variables: `K` divisible by `(1 - t)^n`.
pub fn is_finite_length_consistent(diagram: &BettiDiagram, n: usize) -> bool {
    hilbert_numerator(diagram).is_divisible_by_one_minus_t_pow(n)
}

/// Codimension read off the numerator, i.e. the order of `(1 - t)` in `K`.
pub fn codimension(diagram: &BettiDiagram) -> Option<usize> {
    hilbert_numerator(diagram).one_minus_t_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly(c: &[(i64, i64)]) -> HilbertNumerator {
        HilbertNumerator::from_coefficients(c.iter().map(|&(j, v)| (j, int(v))))
    }

    #[test]
    fn twisted_cubic_like_pure_diagram() {
        let d = BettiDiagram::parse_text("1 3 3 1\n", None).unwrap();
        let k = hilbert_numerator(&d);
        assert_eq!(k, poly(&[(0, 1), (1, -3), (2, 3), (3, -1)]));
        assert_eq!(k.one_minus_t_order(), Some(3));
        assert!(is_finite_length_consistent(&d, 3));
    }

    #[test]
    fn intro_diagram_numerator() {
        let d = BettiDiagram::parse_text("4 8 6 -\n- 6 8 4\n", None).unwrap();
        let k = hilbert_numerator(&d);
        assert_eq!(k, poly(&[(0, 4), (1, -8), (3, 8), (4, -4)]));
        assert_eq!(k.to_string(), "4 - 8t + 8t^3 - 4t^4");
        // K / (1-t)^3 = 4(1+t)
        let q = k
            .divide_one_minus_t()
            .and_then(|q| q.divide_one_minus_t())
            .and_then(|q| q.divide_one_minus_t())
            .unwrap();
        assert_eq!(q, poly(&[(0, 4), (1, 4)]));
        assert!(is_finite_length_consistent(&d, 3));
    }

    #[test]
    fn single_generator_is_not_finite_length() {
        let d = BettiDiagram::parse_text("1 - - -\n", None).unwrap();
        assert_eq!(hilbert_numerator(&d).to_string(), "1");
        assert!(!is_finite_length_consistent(&d, 1));
        assert!(is_finite_length_consistent(&d, 0));
    }

    #[test]
    fn negative_exponents_divide() {
        // t^-2 (1 - t)^2 = t^-2 - 2t^-1 + 1
        let k = poly(&[(-2, 1), (-1, -2), (0, 1)]);
        assert_eq!(k.one_minus_t_order(), Some(2));
    }
}
