//! Simple algebraic number fields `Q[t]/(p(t))` and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::AlgebraError;

/// Coefficient vector of a field element in the power basis `1, t, ..., t^(d-1)`.
pub(crate) type Elem = SmallVec<[BigRational; 1]>;

/// Shared handle to a field.
pub type Field = Arc<FieldContext>;

/// A simple extension of the rationals by a root of a monic polynomial.
///
/// The minimal polynomial is trusted to be irreducible. If it is not, some
/// nonzero element has no inverse and division reports
/// [`AlgebraError::NonInvertible`].
#[derive(Debug)]
pub struct FieldContext {
    /// Monic minimal polynomial, coefficients from the constant term upwards.
    minimal_polynomial: Vec<BigRational>,
    generator_description: String,
    /// `t^(d+i)` reduced to the power basis, for `i = 0..d-1`, as integer
    /// numerators over the common denominator `reduction_den`.
    reductions: Vec<Vec<BigInt>>,
    reduction_den: BigInt,
}

impl FieldContext {
    /// The field of rational numbers, presented as `Q[t]/(t)`.
    pub fn rationals() -> Field {
        Self::new(vec![BigRational::zero(), BigRational::one()], "rationals".to_string())
            .expect("t is a valid minimal polynomial")
    }

    /// Builds `Q[t]/(p)` from the coefficients of `p`, lowest degree first.
    /// `p` is scaled to be monic.
    pub fn new(
        minimal_polynomial: Vec<BigRational>,
        generator_description: String,
    ) -> Result<Field, AlgebraError> {
        let mut p = minimal_polynomial;
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.len() < 2 {
            return Err(AlgebraError::InvalidField("minimal polynomial must have degree at least 1".into()));
        }
        let lead = p.last().unwrap().clone();
        for c in &mut p {
            *c = &*c / &lead;
        }
        let d = p.len() - 1;
        // t^d = -(p_0 + p_1 t + ... + p_{d-1} t^{d-1})
        let mut cur: Vec<BigRational> = p[..d].iter().map(|c| -c).collect();
        let mut reductions = Vec::with_capacity(d.saturating_sub(1));
        for _ in 0..d.saturating_sub(1) {
            reductions.push(cur.clone());
            // multiply by t and reduce
            let top = cur[d - 1].clone();
            let mut next = vec![BigRational::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..d {
                    next[i] -= &top * &p[i];
                }
            }
            cur = next;
        }
        let reduction_den =
            reductions.iter().flatten().fold(BigInt::one(), |l, c: &BigRational| l.lcm(c.denom()));
        let reductions = reductions
            .iter()
            .map(|r| r.iter().map(|c| c.numer() * (&reduction_den / c.denom())).collect())
            .collect();
        Ok(Arc::new(FieldContext { minimal_polynomial: p, generator_description, reductions, reduction_den }))
    }

    /// Convenience constructor from integer coefficients, lowest degree first.
    pub fn from_integer_coeffs(coeffs: &[i64], description: &str) -> Result<Field, AlgebraError> {
        Self::new(
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
            description.to_string(),
        )
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minimal_polynomial
    }

    pub fn generator_description(&self) -> &str {
        &self.generator_description
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Two contexts describe the same field when their minimal polynomials agree.
    pub fn same_as(&self, other: &FieldContext) -> bool {
        std::ptr::eq(self, other) || self.minimal_polynomial == other.minimal_polynomial
    }

    /// Renders the minimal polynomial in the generator symbol `t`.
    pub fn render_minimal_polynomial(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.minimal_polynomial.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(render_signed_term(c, &mono, parts.is_empty()));
        }
        parts.concat()
    }

    pub(crate) fn zero_elem(&self) -> Elem {
        smallvec::smallvec![BigRational::zero(); self.degree()]
    }

    pub(crate) fn rational_elem(&self, q: BigRational) -> Elem {
        let mut e = self.zero_elem();
        e[0] = q;
        e
    }

    pub(crate) fn elem_is_zero(e: &Elem) -> bool {
        e.iter().all(Zero::is_zero)
    }

    pub(crate) fn elem_is_one(e: &Elem) -> bool {
        e[0].is_one() && e[1..].iter().all(Zero::is_zero)
    }

    pub(crate) fn add_assign(a: &mut Elem, b: &Elem) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }

    pub(crate) fn sub_assign(a: &mut Elem, b: &Elem) {
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
    }

    pub(crate) fn neg_elem(a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    pub(crate) fn mul_elem(&self, a: &Elem, b: &Elem) -> Elem {
        let d = self.degree();
        if d == 1 {
            return smallvec::smallvec![&a[0] * &b[0]];
        }
        // integer convolution over common denominators, one normalization per slot
        let (an, ad) = split_denominator(a);
        let (bn, bd) = split_denominator(b);
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = wide[..d].iter().map(|w| w * &self.reduction_den).collect();
        for (k, c) in wide[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reductions[k]) {
                *o += c * r;
            }
        }
        let den = ad * bd * &self.reduction_den;
        out.into_iter()
            .map(|n| if n.is_zero() { BigRational::zero() } else { BigRational::new(n, den.clone()) })
            .collect()
    }

    /// `a += b * c`
    pub(crate) fn mul_add_assign(&self, a: &mut Elem, b: &Elem, c: &Elem) {
        if self.degree() == 1 {
            a[0] += &b[0] * &c[0];
        } else {
            let p = self.mul_elem(b, c);
            Self::add_assign(a, &p);
        }
    }

    pub(crate) fn scale_elem(a: &Elem, q: &BigRational) -> Elem {
        a.iter().map(|x| x * q).collect()
    }

    pub(crate) fn inv_elem(&self, a: &Elem) -> Result<Elem, AlgebraError> {
        if Self::elem_is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(smallvec::smallvec![a[0].recip()]);
        }
        // Extended Euclid in Q[t]: find s with s*a = g mod p, g constant.
        let a_poly = trim(a.to_vec());
        let p_poly = self.minimal_polynomial.clone();
        let (g, s) = ext_gcd(a_poly, p_poly);
        if g.len() != 1 {
            return Err(AlgebraError::NonInvertible);
        }
        let g0 = g[0].clone();
        let mut out = self.zero_elem();
        // reduce s modulo p (deg s < d already from Euclid, but be safe)
        let s = poly_rem(s, &self.minimal_polynomial);
        for (i, c) in s.into_iter().enumerate() {
            out[i] = c / &g0;
        }
        Ok(out)
    }
}

/// Integer numerators over the least common denominator.
fn split_denominator(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_rem(mut a: Vec<BigRational>, b: &[BigRational]) -> Vec<BigRational> {
    a = trim(a);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let q = &a[da] / &lb;
        for i in 0..=db {
            let t = &q * &b[i];
            a[da - db + i] -= t;
        }
        a = trim(a);
    }
    a
}

fn poly_divrem(mut a: Vec<BigRational>, b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    a = trim(a);
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while a.len() > db {
        let da = a.len() - 1;
        let c = &a[da] / &lb;
        for i in 0..=db {
            let t = &c * &b[i];
            a[da - db + i] -= t;
        }
        q[da - db] = c;
        a = trim(a);
    }
    (trim(q), a)
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = a.to_vec();
    let n = if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 };
    if out.len() < n {
        out.resize(n, BigRational::zero());
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// Returns `(g, s)` with `s*a = g (mod b)`, `g = gcd(a, b)`.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly_divrem(r0.clone(), &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `c*mono` with a leading sign. `first` suppresses `+` on the first term.
fn render_signed_term(c: &BigRational, mono: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    if mono.is_empty() {
        format!("{sign}{}", render_rational(&a))
    } else if a.is_one() {
        format!("{sign}{mono}")
    } else {
        format!("{sign}{}*{mono}", render_rational(&a))
    }
}

/// An element of a [`FieldContext`].
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    coeffs: Elem,
}

impl Scalar {
    pub fn zero(field: &Field) -> Self {
        Scalar { coeffs: field.zero_elem(), field: field.clone() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Field, q: BigRational) -> Self {
        Scalar { coeffs: field.rational_elem(q), field: field.clone() }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(field: &Field, n: i64, d: i64) -> Self {
        Self::from_rational(field, BigRational::new(n.into(), d.into()))
    }

    /// The class of `t`.
    pub fn generator(field: &Field) -> Self {
        if field.degree() == 1 {
            // t = -p_0 in Q[t]/(t + p_0)
            return Self::from_rational(field, -field.minimal_polynomial()[0].clone());
        }
        let mut c = field.zero_elem();
        c[1] = BigRational::one();
        Scalar { field: field.clone(), coeffs: c }
    }

    /// Builds an element from power-basis coefficients; the vector is reduced
    /// modulo the minimal polynomial if it is longer than the field degree.
    pub fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> Self {
        let d = field.degree();
        let reduced = if coeffs.len() > d {
            let mut r = poly_rem(coeffs, field.minimal_polynomial());
            r.resize(d, BigRational::zero());
            r
        } else {
            let mut c = coeffs;
            c.resize(d, BigRational::zero());
            c
        };
        Scalar { field: field.clone(), coeffs: reduced.into_iter().collect() }
    }

    pub(crate) fn from_elem(field: &Field, coeffs: Elem) -> Self {
        Scalar { field: field.clone(), coeffs }
    }

    pub(crate) fn elem(&self) -> &Elem {
        &self.coeffs
    }

    pub(crate) fn into_elem(self) -> Elem {
        self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        FieldContext::elem_is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        FieldContext::elem_is_one(&self.coeffs)
    }

    /// The rational value, if the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), AlgebraError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        Ok(Scalar { coeffs: self.field.inv_elem(&self.coeffs)?, field: self.field.clone() })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with generator symbol `t`; compound values are parenthesized
    /// when `wrap` is set.
    pub fn render(&self, wrap: bool) -> String {
        let nonzero: Vec<(usize, &BigRational)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in nonzero.iter().enumerate() {
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            s.push_str(&render_signed_term(c, &mono, k == 0));
        }
        if wrap && nonzero.len() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.render(false))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        debug_assert!(self.field.same_as(&rhs.field));
        let mut c = self.coeffs.clone();
        FieldContext::add_assign(&mut c, &rhs.coeffs);
        Scalar::from_elem(&self.field, c)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        debug_assert!(self.field.same_as(&rhs.field));
        let mut c = self.coeffs.clone();
        FieldContext::sub_assign(&mut c, &rhs.coeffs);
        Scalar::from_elem(&self.field, c)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        debug_assert!(self.field.same_as(&rhs.field));
        Scalar::from_elem(&self.field, self.field.mul_elem(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_elem(&self.field, FieldContext::neg_elem(&self.coeffs))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> Field {
        FieldContext::from_integer_coeffs(&[-5, 0, 1], "sqrt(5)").unwrap()
    }

    #[test]
    fn rational_addition() {
        let q = FieldContext::rationals();
        let a = Scalar::from_ratio(&q, 2, 3);
        let b = Scalar::from_ratio(&q, 1, 6);
        assert_eq!(&a + &b, Scalar::from_ratio(&q, 5, 6));
    }

    #[test]
    fn golden_ratio_inverse() {
        let f = q5();
        let t = Scalar::generator(&f);
        let half = Scalar::from_ratio(&f, 1, 2);
        let phi = &(&Scalar::one(&f) + &t) * &half;
        let got = Scalar::one(&f).checked_div(&phi).unwrap();
        let want = &(&t - &Scalar::one(&f)) * &half;
        assert_eq!(got, want);
    }

    #[test]
    fn defining_relation() {
        let f = q5();
        let t = Scalar::generator(&f);
        assert_eq!(&t * &t, Scalar::from_int(&f, 5));
    }

    #[test]
    fn division_by_zero() {
        let f = q5();
        assert_eq!(Scalar::one(&f).checked_div(&Scalar::zero(&f)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn reducible_modulus_is_detected() {
        // t^2 - 1 = (t-1)(t+1): t - 1 is a zero divisor
        let f = FieldContext::from_integer_coeffs(&[-1, 0, 1], "bad").unwrap();
        let x = &Scalar::generator(&f) - &Scalar::one(&f);
        assert_eq!(x.inv(), Err(AlgebraError::NonInvertible));
    }

    #[test]
    fn cubic_field_inverse() {
        // 2cos(2pi/7): t^3 + t^2 - 2t - 1
        let f = FieldContext::from_integer_coeffs(&[-1, -2, 1, 1], "2cos(2pi/7)").unwrap();
        let t = Scalar::generator(&f);
        let x = &(&t * &t) + &Scalar::from_int(&f, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn monic_normalization() {
        let f = FieldContext::from_integer_coeffs(&[-10, 0, 2], "sqrt(5)").unwrap();
        let t = Scalar::generator(&f);
        assert_eq!(&t * &t, Scalar::from_int(&f, 5));
        assert_eq!(f.render_minimal_polynomial(), "t^2 - 5");
    }
}
