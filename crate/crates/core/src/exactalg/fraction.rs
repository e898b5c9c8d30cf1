//! Rational functions with an explicitly factored denominator.
//!
//! There is no multivariate gcd. Denominators are products of known factors
//! (linear forms of the arrangement, determinants) and reduction is done by
//! trial exact division of the numerator by each factor.

use std::fmt;

use super::field::{Field, Scalar};
use super::poly::{Homogeneity, MultiPoly};
use super::AlgebraError;

#[derive(Clone)]
pub struct FactoredFraction {
    numerator: MultiPoly,
    /// Monic factors with positive exponents, pairwise distinct.
    denominator_factors: Vec<(MultiPoly, u32)>,
    denominator_scalar: Scalar,
}

impl FactoredFraction {
    pub fn from_poly(p: MultiPoly) -> Self {
        let s = Scalar::one(p.field());
        FactoredFraction { numerator: p, denominator_factors: Vec::new(), denominator_scalar: s }
    }

    pub fn zero(field: &Field, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(field, nvars))
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(field, nvars))
    }

    pub fn constant(c: &Scalar, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::constant(c, nvars))
    }

    /// `numerator / (scalar * prod factor^exp)`, simplified.
    pub fn new(
        numerator: MultiPoly,
        factors: Vec<(MultiPoly, u32)>,
        scalar: Scalar,
    ) -> Result<Self, AlgebraError> {
        if scalar.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut f =
            FactoredFraction { numerator, denominator_factors: Vec::new(), denominator_scalar: scalar };
        for (p, e) in factors {
            if p.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            f.push_factor(p, e);
        }
        f.simplify();
        Ok(f)
    }

    /// `p / q` with `q` factored against `pool` first.
    pub fn ratio(p: MultiPoly, q: &MultiPoly, pool: &[MultiPoly]) -> Result<Self, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (scalar, factors) = factor_over_pool(q, pool);
        Self::new(p, factors, scalar)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.denominator_factors
    }

    pub fn denominator_scalar(&self) -> &Scalar {
        &self.denominator_scalar
    }

    pub fn field(&self) -> &Field {
        self.numerator.field()
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Multiplies the denominator by `p^e`, moving the leading coefficient of
    /// `p` into the scalar part.
    fn push_factor(&mut self, p: MultiPoly, e: u32) {
        if e == 0 {
            return;
        }
        let (m, lc) = p.monic();
        if let Some(c) = m.as_constant() {
            debug_assert!(c.is_one());
            self.denominator_scalar = &self.denominator_scalar * &lc.pow(e);
            return;
        }
        self.denominator_scalar = &self.denominator_scalar * &lc.pow(e);
        match self.denominator_factors.iter_mut().find(|(f, _)| *f == m) {
            Some((_, k)) => *k += e,
            None => self.denominator_factors.push((m, e)),
        }
    }

    /// Cancels every factor that divides the numerator and folds the scalar
    /// denominator into the numerator.
    pub fn simplify(&mut self) {
        self.simplify_factors(|_| true);
    }

    fn simplify_factors(&mut self, mut candidate: impl FnMut(usize) -> bool) {
        if self.numerator.is_zero() {
            self.denominator_factors.clear();
        } else {
            for idx in 0..self.denominator_factors.len() {
                if !candidate(idx) {
                    continue;
                }
                let (f, e) = &mut self.denominator_factors[idx];
                while *e > 0 {
                    match self.numerator.exact_divide(f) {
                        Ok(q) => {
                            self.numerator = q;
                            *e -= 1;
                        }
                        Err(_) => break,
                    }
                }
            }
            self.denominator_factors.retain(|(_, e)| *e > 0);
        }
        if !self.denominator_scalar.is_one() {
            let inv = self.denominator_scalar.inv().expect("denominator scalar is nonzero");
            self.numerator = self.numerator.scale(&inv);
            self.denominator_scalar = Scalar::one(self.numerator.field());
        }
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        if self.denominator_factors.is_empty() {
            let inv = self.denominator_scalar.inv().ok()?;
            Some(self.numerator.scale(&inv))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    /// Product of the denominator factors with multiplicity (without the scalar).
    pub fn denominator_poly(&self) -> MultiPoly {
        let mut d = MultiPoly::one(self.field(), self.nvars());
        for (f, e) in &self.denominator_factors {
            d = &d * &f.pow(*e);
        }
        d
    }

    fn lift(&self, target: &[(MultiPoly, u32)]) -> MultiPoly {
        let mut num = self.numerator.clone();
        for (f, e) in target {
            let have = self.denominator_factors.iter().find(|(g, _)| g == f).map_or(0, |(_, k)| *k);
            if *e > have {
                num = &num * &f.pow(e - have);
            }
        }
        num
    }

    fn combine(&self, other: &FactoredFraction, subtract: bool) -> FactoredFraction {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg() } else { other.clone() };
        }
        let mut target: Vec<(MultiPoly, u32)> = self.denominator_factors.clone();
        let mut shared = Vec::new();
        for (f, e) in &other.denominator_factors {
            match target.iter_mut().position(|(g, _)| g == f) {
                Some(i) => {
                    if target[i].1 == *e {
                        shared.push(i);
                    }
                    target[i].1 = target[i].1.max(*e);
                }
                None => target.push((f.clone(), *e)),
            }
        }
        let a = self.lift(&target).scale(&other.denominator_scalar);
        let b = other.lift(&target).scale(&self.denominator_scalar);
        let num = if subtract { &a - &b } else { &a + &b };
        let mut out = FactoredFraction {
            numerator: num,
            denominator_factors: target,
            denominator_scalar: &self.denominator_scalar * &other.denominator_scalar,
        };
        // only factors at equal exponent on both sides can cancel
        out.simplify_factors(|i| shared.contains(&i));
        out
    }

    pub fn add(&self, other: &FactoredFraction) -> FactoredFraction {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &FactoredFraction) -> FactoredFraction {
        self.combine(other, true)
    }

    pub fn neg(&self) -> FactoredFraction {
        FactoredFraction {
            numerator: -&self.numerator,
            denominator_factors: self.denominator_factors.clone(),
            denominator_scalar: self.denominator_scalar.clone(),
        }
    }

    pub fn mul(&self, other: &FactoredFraction) -> FactoredFraction {
        if self.is_zero() || other.is_zero() {
            return FactoredFraction::zero(self.field(), self.nvars());
        }
        // cross-cancel before multiplying
        let mut a = self.numerator.clone();
        let mut b = other.numerator.clone();
        let mut fa = self.denominator_factors.clone();
        let mut fb = other.denominator_factors.clone();
        for (f, e) in fb.iter_mut() {
            while *e > 0 {
                match a.exact_divide(f) {
                    Ok(q) => {
                        a = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        for (f, e) in fa.iter_mut() {
            while *e > 0 {
                match b.exact_divide(f) {
                    Ok(q) => {
                        b = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        let mut out = FactoredFraction {
            numerator: &a * &b,
            denominator_factors: Vec::new(),
            denominator_scalar: &self.denominator_scalar * &other.denominator_scalar,
        };
        for (f, e) in fa.into_iter().chain(fb) {
            if e > 0 {
                match out.denominator_factors.iter_mut().find(|(g, _)| *g == f) {
                    Some((_, k)) => *k += e,
                    None => out.denominator_factors.push((f, e)),
                }
            }
        }
        out.simplify_factors(|_| false);
        out
    }

    pub fn scale(&self, c: &Scalar) -> FactoredFraction {
        let mut out = self.clone();
        out.numerator = out.numerator.scale(c);
        if out.numerator.is_zero() {
            out.denominator_factors.clear();
        }
        out
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> FactoredFraction {
        self.mul(&FactoredFraction::from_poly(p.clone()))
    }

    /// Reciprocal; the numerator is factored against `pool` and any
    /// remaining cofactor becomes a single new denominator factor.
    pub fn recip(&self, pool: &[MultiPoly]) -> Result<FactoredFraction, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (scalar, factors) = factor_over_pool(&self.numerator, pool);
        let num = self.denominator_poly().scale(&self.denominator_scalar);
        FactoredFraction::new(num, factors, scalar)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> FactoredFraction {
        // d(N / (s prod f^e)) = (N' L - N sum e f' L/f) / (s prod f^(e+1))
        // with L the product of the factors that actually depend on x_i.
        let moving: Vec<usize> = self
            .denominator_factors
            .iter()
            .enumerate()
            .filter(|(_, (f, _))| !f.partial(i).is_zero())
            .map(|(k, _)| k)
            .collect();
        if moving.is_empty() {
            let mut out = FactoredFraction {
                numerator: self.numerator.partial(i),
                denominator_factors: self.denominator_factors.clone(),
                denominator_scalar: self.denominator_scalar.clone(),
            };
            out.simplify_factors(|_| true);
            return out;
        }
        let facs: Vec<&MultiPoly> = moving.iter().map(|&k| &self.denominator_factors[k].0).collect();
        // prefix/suffix products for L/f
        let n = facs.len();
        let one = MultiPoly::one(self.field(), self.nvars());
        let mut prefix = vec![one.clone(); n + 1];
        for k in 0..n {
            prefix[k + 1] = &prefix[k] * facs[k];
        }
        let mut suffix = vec![one; n + 1];
        for k in (0..n).rev() {
            suffix[k] = facs[k] * &suffix[k + 1];
        }
        let mut num = &self.numerator.partial(i) * &prefix[n];
        let mut sum = MultiPoly::zero(self.field(), self.nvars());
        for (k, &idx) in moving.iter().enumerate() {
            let e = self.denominator_factors[idx].1;
            let others = &prefix[k] * &suffix[k + 1];
            let term = &facs[k].partial(i) * &others;
            sum = &sum + &term.scale(&Scalar::from_int(self.field(), i64::from(e)));
        }
        num = &num - &(&self.numerator * &sum);
        let mut factors = self.denominator_factors.clone();
        for &idx in &moving {
            factors[idx].1 += 1;
        }
        let mut out = FactoredFraction {
            numerator: num,
            denominator_factors: factors,
            denominator_scalar: self.denominator_scalar.clone(),
        };
        out.simplify();
        out
    }

    /// Degree of the numerator minus degree of the denominator when both are
    /// homogeneous; `None` for zero or inhomogeneous values.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let Homogeneity::Degree(n) = self.numerator.homogeneity() else {
            return None;
        };
        let mut d: i64 = 0;
        for (f, e) in &self.denominator_factors {
            match f.homogeneity() {
                Homogeneity::Degree(k) => d += i64::from(k) * i64::from(*e),
                _ => return None,
            }
        }
        Some(i64::from(n) - d)
    }

    /// Exact equality by cross multiplication.
    pub fn equals(&self, other: &FactoredFraction) -> bool {
        self.sub(other).is_zero()
    }

    /// Applies a linear substitution to numerator and factors.
    pub fn compose(
        &self,
        images: &[MultiPoly],
        pool: &[MultiPoly],
    ) -> Result<FactoredFraction, AlgebraError> {
        let num = self.numerator.compose(images)?;
        let mut factors = Vec::new();
        let mut scalar = self.denominator_scalar.clone();
        for (f, e) in &self.denominator_factors {
            let g = f.compose(images)?;
            let (s, fs) = factor_over_pool(&g, pool);
            scalar = &scalar * &s.pow(*e);
            factors.extend(fs.into_iter().map(|(p, k)| (p, k * e)));
        }
        FactoredFraction::new(num, factors, scalar)
    }

    pub fn render(&self) -> String {
        if self.denominator_factors.is_empty() && self.denominator_scalar.is_one() {
            return self.numerator.render();
        }
        let mut den = Vec::new();
        if !self.denominator_scalar.is_one() {
            den.push(self.denominator_scalar.render(true));
        }
        for (f, e) in &self.denominator_factors {
            let base = if f.num_terms() > 1 { format!("({})", f.render()) } else { f.render() };
            den.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        let num = self.numerator.render();
        let num = if self.numerator.num_terms() > 1 || num.contains('/') { format!("({num})") } else { num };
        if den.len() > 1 {
            format!("{num}/({})", den.join("*"))
        } else {
            format!("{num}/{}", den[0])
        }
    }
}

/// Splits `q` into `scalar * prod pool_i^e_i * rest`, where `rest` is
/// returned as an extra factor when it is not constant.
pub fn factor_over_pool(q: &MultiPoly, pool: &[MultiPoly]) -> (Scalar, Vec<(MultiPoly, u32)>) {
    let mut rest = q.clone();
    let mut factors = Vec::new();
    for f in pool {
        if rest.is_constant() {
            break;
        }
        let (m, _) = f.monic();
        let mut e = 0;
        while let Ok(r) = rest.exact_divide(&m) {
            rest = r;
            e += 1;
        }
        if e > 0 {
            factors.push((m, e));
        }
    }
    match rest.as_constant() {
        Some(c) => (c, factors),
        None => {
            let (m, lc) = rest.monic();
            factors.push((m, 1));
            (lc, factors)
        }
    }
}

impl fmt::Debug for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::FieldContext;

    fn x() -> MultiPoly {
        MultiPoly::var(&FieldContext::rationals(), 2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(&FieldContext::rationals(), 2, 1)
    }
    fn k(n: i64) -> Scalar {
        Scalar::from_int(&FieldContext::rationals(), n)
    }

    #[test]
    fn cancels_power_of_x() {
        let f = FactoredFraction::new(x().pow(2).scale(&k(2)), vec![(x(), 1)], k(1)).unwrap();
        assert!(f.denominator_factors().is_empty());
        assert_eq!(f.as_poly().unwrap(), x().scale(&k(2)));
    }

    #[test]
    fn keeps_irreducible_denominator() {
        let num = &x().pow(2) + &y().pow(2);
        let f = FactoredFraction::new(num.clone(), vec![(&x() - &y(), 1)], k(1)).unwrap();
        assert_eq!(f.numerator(), &num);
        assert_eq!(f.denominator_factors().len(), 1);
    }

    #[test]
    fn rank_one_second_derivative() {
        // D = (1/(2x)) d/dx on Q[x]; D^2[x] = D[1/(2x)] = -1/(4x^3)
        let dx = FactoredFraction::new(MultiPoly::one(x().field(), 2), vec![(x(), 1)], k(2)).unwrap();
        let d2 = dx.mul(&dx.partial(0));
        let want = FactoredFraction::new(MultiPoly::constant(&k(-1), 2), vec![(x(), 3)], k(4)).unwrap();
        assert!(d2.equals(&want));
        assert_eq!(d2.homogeneous_degree(), Some(-3));
    }

    #[test]
    fn sum_with_common_factor_cancels() {
        // x/(x-y) - y/(x-y) = 1
        let d = &x() - &y();
        let a = FactoredFraction::new(x(), vec![(d.clone(), 1)], k(1)).unwrap();
        let b = FactoredFraction::new(y(), vec![(d, 1)], k(1)).unwrap();
        assert_eq!(a.sub(&b).as_poly().unwrap(), MultiPoly::one(x().field(), 2));
    }

    #[test]
    fn reciprocal_uses_pool() {
        let pool = vec![x(), &x() - &y()];
        let f = FactoredFraction::from_poly((&x() * &(&x() - &y())).scale(&k(3)));
        let r = f.recip(&pool).unwrap();
        assert_eq!(r.denominator_factors().len(), 2);
        assert!(r.mul(&f).equals(&FactoredFraction::one(x().field(), 2)));
    }

    #[test]
    fn quotient_rule_matches_cross_check() {
        // d/dx [ y / (x (x+y)^2) ]
        let f = FactoredFraction::new(y(), vec![(x(), 1), (&x() + &y(), 2)], k(1)).unwrap();
        let got = f.partial(0);
        // -(y (x+y)^2 + 2 x y (x+y)) / (x^2 (x+y)^4) = -y(3x+y) / (x^2 (x+y)^3)
        let num = -&(&y() * &(&x().scale(&k(3)) + &y()));
        let want = FactoredFraction::new(num, vec![(x(), 2), (&x() + &y(), 3)], k(1)).unwrap();
        assert!(got.equals(&want));
        assert_eq!(got.denominator_factors(), want.denominator_factors());
    }
}
