//! Sparse multivariate polynomials over a number field.
//!
//! Terms are kept sorted by decreasing graded-lexicographic order with
//! `x1 > x2 > ... > xn`, and zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Elem, Field, FieldContext, Scalar};
use super::matrix::Matrix;
use super::AlgebraError;

/// Largest supported number of variables (the rank of E8).
pub const MAX_VARS: usize = 8;

/// An exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (slot, &e) in m.0.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.0[i])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0) {
            *a += b;
        }
        m
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(m)
    }

    fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Homogeneity class of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
    Inhomogeneous,
}

#[derive(Clone)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Elem)>,
}

pub fn default_var_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        MultiPoly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(c: &Scalar, nvars: usize) -> Self {
        Self::monomial(c, Monomial::one(), nvars)
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(&Scalar::one(field), nvars)
    }

    pub fn monomial(c: &Scalar, m: Monomial, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.push((m, c.elem().clone()));
        }
        p
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(&Scalar::one(field), Monomial::var(i), nvars)
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let field = coeffs[0].field().clone();
        let n = coeffs.len();
        Self::from_terms(&field, n, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())))
    }

    /// Collects terms, combining duplicates.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => FieldContext::add_assign(e, c.elem()),
                None => {
                    acc.insert(m, c.into_elem());
                }
            }
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: &Field, nvars: usize, acc: HashMap<Monomial, Elem>) -> Self {
        let mut terms: Vec<(Monomial, Elem)> =
            acc.into_iter().filter(|(_, c)| !FieldContext::elem_is_zero(c)).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        MultiPoly { field: field.clone(), nvars, terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, Scalar::from_elem(&self.field, c.clone())))
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => Scalar::from_elem(&self.field, self.terms[i].1.clone()),
            Err(_) => Scalar::zero(&self.field),
        }
    }

    pub fn leading_term(&self) -> Option<(Monomial, Scalar)> {
        self.terms.first().map(|(m, c)| (*m, Scalar::from_elem(&self.field, c.clone())))
    }

    /// The constant value, if the polynomial has degree 0 (or is zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero(&self.field)),
            [(m, c)] if *m == Monomial::one() => Some(Scalar::from_elem(&self.field, c.clone())),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(d) = self.total_degree() else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(m, _)| m.total_degree() == d) {
            Homogeneity::Degree(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Inhomogeneous
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        if !self.field.same_as(&other.field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &MultiPoly, subtract: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => y.0.cmp(&x.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if subtract { FieldContext::neg_elem(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if subtract {
                        FieldContext::sub_assign(&mut c, &b[j].1);
                    } else {
                        FieldContext::add_assign(&mut c, &b[j].1);
                    }
                    if !FieldContext::elem_is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms = large.terms.iter().map(|(n, d)| (m.mul(n), self.field.mul_elem(c, d))).collect();
            return MultiPoly { field: self.field.clone(), nvars: self.nvars, terms };
        }
        let mut acc: HashMap<Monomial, Elem> =
            HashMap::with_capacity(small.terms.len() * large.terms.len() / 2 + 1);
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                let k = m.mul(n);
                match acc.get_mut(&k) {
                    Some(e) => self.field.mul_add_assign(e, c, d),
                    None => {
                        acc.insert(k, self.field.mul_elem(c, d));
                    }
                }
            }
        }
        Self::from_map(&self.field, self.nvars, acc)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, e)| (*m, self.field.mul_elem(e, c.elem()))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn scale_rational(&self, q: &BigRational) -> MultiPoly {
        if q.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, e)| (*m, FieldContext::scale_elem(e, q))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            let q = BigRational::from_integer(e.into());
            terms.push((n, FieldContext::scale_elem(c, &q)));
        }
        // differentiation in one variable preserves the relative grlex order
        terms.sort_unstable_by_key(|t: &(Monomial, Elem)| std::cmp::Reverse(t.0));
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn subst_linear(&self, m: &Matrix<Scalar>) -> Result<MultiPoly, AlgebraError> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "substitution matrix {}x{} for {} variables",
                m.rows(),
                m.cols(),
                self.nvars
            )));
        }
        let images: Vec<MultiPoly> = (0..self.nvars).map(|i| MultiPoly::linear(m.row(i))).collect();
        self.compose(&images)
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let Some(target) = images.first() else {
            return Ok(self.clone());
        };
        let nv = target.nvars;
        // cache of powers per variable
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![MultiPoly::one(&self.field, nv), p.clone()]).collect();
        let mut out = MultiPoly::zero(&self.field, nv);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&Scalar::from_elem(&self.field, c.clone()), nv);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.0[i] as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` by leading-term elimination in
    /// graded-lex order. Reports [`AlgebraError::NotDivisible`] when the
    /// division leaves a remainder.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(divisor)?;
        let Some((dlm, dlc)) = divisor.terms.first() else {
            return Err(AlgebraError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dlc_inv = self.field.inv_elem(dlc)?;
        if divisor.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.div(dlm).ok_or(AlgebraError::NotDivisible)?;
                terms.push((q, self.field.mul_elem(c, &dlc_inv)));
            }
            return Ok(MultiPoly { field: self.field.clone(), nvars: self.nvars, terms });
        }
        if self.total_degree() < divisor.total_degree() {
            return Err(AlgebraError::NotDivisible);
        }
        let mut rem: BTreeMap<Monomial, Elem> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.pop_last() {
            let qm = lm.div(dlm).ok_or(AlgebraError::NotDivisible)?;
            let qc = self.field.mul_elem(&lc, &dlc_inv);
            for (m, c) in &divisor.terms[1..] {
                let k = qm.mul(m);
                let prod = self.field.mul_elem(&qc, c);
                match rem.get_mut(&k) {
                    Some(e) => {
                        FieldContext::sub_assign(e, &prod);
                        if FieldContext::elem_is_zero(e) {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, FieldContext::neg_elem(&prod));
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(MultiPoly { field: self.field.clone(), nvars: self.nvars, terms: quot })
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &MultiPoly) -> bool {
        self.exact_divide(divisor).is_ok()
    }

    /// Scales so the leading coefficient is one; returns the scaled
    /// polynomial and the removed factor.
    pub fn monic(&self) -> (MultiPoly, Scalar) {
        match self.terms.first() {
            None => (self.clone(), Scalar::one(&self.field)),
            Some((_, c)) => {
                let lc = Scalar::from_elem(&self.field, c.clone());
                let inv = lc.inv().expect("nonzero leading coefficient");
                (self.scale(&inv), lc)
            }
        }
    }

    /// Largest `m` such that `alpha^m` divides `self`, found by changing
    /// coordinates so that `alpha` becomes the first coordinate.
    pub fn lowest_power_in_form(&self, alpha: &[Scalar]) -> Result<ContactOrder, AlgebraError> {
        if alpha.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "linear form with {} coefficients for {} variables",
                alpha.len(),
                self.nvars
            )));
        }
        let Some(pivot) = alpha.iter().position(|a| !a.is_zero()) else {
            return Err(AlgebraError::ZeroForm);
        };
        if self.is_zero() {
            return Ok(ContactOrder::Infinite);
        }
        // New coordinates: y_0 = alpha, and the remaining x_i (i != pivot)
        // in order. Inverse: x_pivot = (y_0 - sum_{i != pivot} a_i x_i) / a_pivot.
        let n = self.nvars;
        let field = &self.field;
        let inv = alpha[pivot].inv()?;
        let mut others = (0..n).filter(|&i| i != pivot);
        let mut slot_of = vec![0usize; n];
        slot_of[pivot] = 0;
        for (k, i) in others.by_ref().enumerate() {
            slot_of[i] = k + 1;
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                if i == pivot {
                    let mut coeffs = vec![Scalar::zero(field); n];
                    coeffs[0] = inv.clone();
                    for j in (0..n).filter(|&j| j != pivot) {
                        coeffs[slot_of[j]] = -(&alpha[j] * &inv);
                    }
                    MultiPoly::linear(&coeffs)
                } else {
                    MultiPoly::var(field, n, slot_of[i])
                }
            })
            .collect();
        let g = self.compose(&images)?;
        let order = g.terms.iter().map(|(m, _)| m.exponent(0)).min().expect("nonzero polynomial");
        Ok(ContactOrder::Finite(order))
    }

    pub fn render(&self) -> String {
        self.render_with(&default_var_names(self.nvars))
    }

    pub fn render_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sc = Scalar::from_elem(&self.field, c.clone());
            let mono = m.render(names);
            let (neg, body) = match sc.as_rational() {
                Some(q) => {
                    let neg = q < &BigRational::zero();
                    let a = if neg { -q.clone() } else { q.clone() };
                    let coeff = super::field::render_rational(&a);
                    let body = if mono.is_empty() {
                        coeff
                    } else if a.is_one() {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    };
                    (neg, body)
                }
                None => {
                    let coeff = sc.render(true);
                    let body = if mono.is_empty() { coeff } else { format!("{coeff}*{mono}") };
                    (false, body)
                }
            };
            match (k == 0, neg) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            s.push_str(&body);
        }
        s
    }
}

/// Result of [`MultiPoly::lowest_power_in_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ContactOrder {
    Finite(u32),
    /// Returned for the zero polynomial, which every power divides.
    Infinite,
}

impl ContactOrder {
    pub fn at_least(&self, m: u32) -> bool {
        match self {
            ContactOrder::Infinite => true,
            ContactOrder::Finite(k) => *k >= m,
        }
    }
}

impl fmt::Display for ContactOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactOrder::Finite(k) => write!(f, "{k}"),
            ContactOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field.same_as(&other.field) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs).expect("incompatible polynomials");
        self.merge(rhs, true)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, FieldContext::neg_elem(c))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        FieldContext::rationals()
    }

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(&q(), 2, i)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(&Scalar::from_int(&q(), n), 2)
    }

    #[test]
    fn partial_of_x2y() {
        let f = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(f.partial(0), &(&c(2) * &x(0)) * &x(1));
    }

    #[test]
    fn swap_substitution() {
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let fq = q();
        let z = Scalar::zero(&fq);
        let o = Scalar::one(&fq);
        let swap = Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]);
        assert_eq!(f.subst_linear(&swap).unwrap(), -&f);
    }

    #[test]
    fn gradient_of_quadric() {
        let p1 = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
        assert_eq!(p1.gradient(), vec![&c(2) * &x(0), &c(2) * &x(1)]);
    }

    #[test]
    fn exact_division_cases() {
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let g = &x(0) - &x(1);
        assert_eq!(f.exact_divide(&g).unwrap(), &x(0) + &x(1));
        let h = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
        assert_eq!(h.exact_divide(&x(0)), Err(AlgebraError::NotDivisible));
        assert_eq!(h.exact_divide(&MultiPoly::zero(&q(), 2)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn b2_jacobian_determinant_over_q() {
        // det((2x, 4x^3), (2y, 4y^3)) = 8xy^3 - 8x^3y
        let (a, b) = (x(0), x(1));
        let det = &(&c(8) * &(&a * &b.pow(3))) - &(&c(8) * &(&a.pow(3) * &b));
        let qq = &(&(&a * &b) * &(&a - &b)) * &(&a + &b);
        assert_eq!(det.exact_divide(&qq).unwrap(), c(-8));
    }

    #[test]
    fn lowest_power_examples() {
        let fq = q();
        let one = Scalar::one(&fq);
        let zero = Scalar::zero(&fq);
        let f = &c(-4) * &x(0).pow(3);
        assert_eq!(f.lowest_power_in_form(&[one.clone(), zero.clone()]).unwrap(), ContactOrder::Finite(3));
        let g = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(g.lowest_power_in_form(&[one.clone(), -&one]).unwrap(), ContactOrder::Finite(1));
        assert_eq!(
            MultiPoly::zero(&fq, 2).lowest_power_in_form(&[one, zero.clone()]).unwrap(),
            ContactOrder::Infinite
        );
        assert_eq!(g.lowest_power_in_form(&[zero.clone(), zero]), Err(AlgebraError::ZeroForm));
    }

    #[test]
    fn lowest_power_pivot_not_first() {
        // alpha = y, f = x y^2 + y^3
        let fq = q();
        let f = &(&x(0) * &x(1).pow(2)) + &x(1).pow(3);
        let alpha = [Scalar::zero(&fq), Scalar::from_int(&fq, 3)];
        assert_eq!(f.lowest_power_in_form(&alpha).unwrap(), ContactOrder::Finite(2));
    }

    #[test]
    fn homogeneity_classes() {
        assert_eq!(MultiPoly::zero(&q(), 2).homogeneity(), Homogeneity::Zero);
        assert_eq!((&x(0) * &x(1)).homogeneity(), Homogeneity::Degree(2));
        assert_eq!((&x(0) + &c(1)).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(MultiPoly::zero(&q(), 2).total_degree(), None);
    }

    #[test]
    fn render_grlex() {
        let f = &(&(&c(3) * &x(1).pow(2)) - &x(0).pow(2)) + &c(-1);
        assert_eq!(f.render(), "-x1^2 + 3*x2^2 - 1");
    }

    #[test]
    fn dimension_mismatch() {
        let a = MultiPoly::var(&q(), 2, 0);
        let b = MultiPoly::var(&q(), 3, 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::DimensionMismatch(_))));
    }
}
