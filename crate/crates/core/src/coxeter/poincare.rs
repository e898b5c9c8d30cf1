//! Poincare series of free graded modules as exact rational functions in `t`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer polynomial in `t`, coefficients lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn monomial(c: i64, d: u32) -> Self {
        let mut v = vec![BigInt::zero(); d as usize + 1];
        v[d as usize] = BigInt::from(c);
        IntPoly(v).trimmed()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
            .collect();
        IntPoly(v).trimmed()
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly(v).trimmed()
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == BigInt::from(-1) {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl RationalSeries {
    /// Equality of rational functions by cross multiplication.
    pub fn same_function(&self, other: &RationalSeries) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }

    /// Power series coefficients up to and including `t^order`.
    /// Requires a denominator with constant term one.
    pub fn expand(&self, order: usize) -> Vec<BigInt> {
        let den = &self.denominator.0;
        assert!(den.first().is_some_and(One::is_one), "denominator must start with 1");
        let mut out = vec![BigInt::zero(); order + 1];
        for n in 0..=order {
            let mut c = self.numerator.0.get(n).cloned().unwrap_or_default();
            for k in 1..den.len().min(n + 1) {
                c -= &den[k] * &out[n - k];
            }
            out[n] = c;
        }
        out
    }

    pub fn render(&self) -> String {
        format!("({})/({})", self.numerator.render(), self.denominator.render())
    }
}

/// `(sum_j t^{g_j}) / prod_i (1 - t^{d_i})`.
pub fn poincare_closed_form(generator_degrees: &[u32], ring_degrees: &[u32]) -> RationalSeries {
    let mut num = IntPoly::zero();
    for &g in generator_degrees {
        num = num.add(&IntPoly::monomial(1, g));
    }
    let mut den = IntPoly::one();
    for &d in ring_degrees {
        den = den.mul(&IntPoly::one().add(&IntPoly::monomial(-1, d)));
    }
    RationalSeries { numerator: num, denominator: den }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        let s = poincare_closed_form(&[1], &[2]);
        assert_eq!(s.render(), "(t)/(1 - t^2)");
        let e = s.expand(6);
        let want: Vec<BigInt> = [0, 1, 0, 1, 0, 1, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(e, want);
    }

    #[test]
    fn empty_generators() {
        let s = poincare_closed_form(&[], &[2, 4]);
        assert!(s.numerator.coeffs().is_empty());
        assert!(s.same_function(&poincare_closed_form(&[], &[3])));
    }

    #[test]
    fn b2_p2_chain() {
        // h = 4, m = (1, 3), p = 2
        let (h, m, p) = (4u32, [1u32, 3], 2u32);
        let gens: Vec<u32> = m.iter().map(|mj| (p - 1) * h + mj).collect();
        let lhs = poincare_closed_form(&gens, &[m[0] + 1, h]);
        let rhs = poincare_closed_form(&gens, &[m[0] + 1, m[1] + 1]);
        assert!(lhs.same_function(&rhs));
        assert!(!lhs.same_function(&poincare_closed_form(&gens, &[m[0] + 1, h + 1])));
    }
}
