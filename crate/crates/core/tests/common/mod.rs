#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use coxsaito::exactalg::{Field, FieldContext, Matrix, Monomial, MultiPoly, Scalar};

pub const CASES: u32 = 1000;

pub fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

/// Q, Q(sqrt 2), Q(2cos(pi/10)), Q(cbrt 2).
pub fn fields() -> Vec<Field> {
    vec![
        FieldContext::rationals(),
        FieldContext::from_integer_coeffs(&[-2, 0, 1], "sqrt2").unwrap(),
        FieldContext::from_integer_coeffs(&[5, 0, -5, 0, 1], "c").unwrap(),
        FieldContext::from_integer_coeffs(&[-2, 0, 0, 1], "r").unwrap(),
    ]
}

fn rational(height: i64, den: i64) -> impl Strategy<Value = BigRational> {
    (-height..=height, 1..=den).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    scalar_of_height(field, 12, 5)
}

pub fn scalar_of_height(field: Field, height: i64, den: i64) -> impl Strategy<Value = Scalar> {
    let d = field.degree();
    prop::collection::vec(rational(height, den), d).prop_map(move |c| Scalar::from_coeffs(&field, c))
}

pub fn field_index() -> impl Strategy<Value = usize> {
    0..fields().len()
}

pub fn poly(field: Field, nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    let f2 = field.clone();
    prop::collection::vec((prop::collection::vec(0u32..=max_exp, nvars), scalar(field)), 0..=max_terms)
        .prop_map(move |terms| {
            MultiPoly::from_terms(
                &f2,
                nvars,
                terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)),
            )
        })
}

pub fn scalar_matrix(field: Field, n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    small_matrix(field, n, 12, 5)
}

pub fn small_matrix(field: Field, n: usize, height: i64, den: i64) -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec(scalar_of_height(field, height, den), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn ensure(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn field_axioms(seed: u64) -> Result<(), String> {
    let strategy = field_index().prop_flat_map(|i| {
        let f = fields()[i].clone();
        (scalar(f.clone()), scalar(f.clone()), scalar(f))
    });
    runner(seed)
        .run(&strategy, |(a, b, c)| {
            let zero = Scalar::zero(a.field());
            let one = Scalar::one(a.field());
            ensure(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity")?;
            ensure(&a + &b == &b + &a, "additive commutativity")?;
            ensure(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity")?;
            ensure(&a * &b == &b * &a, "multiplicative commutativity")?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
            ensure(&a + &zero == a && &a * &one == a, "identities")?;
            ensure(&(&a - &b) + &b == a, "subtraction")?;
            ensure((&a + &(-&a)).is_zero(), "additive inverse")?;
            if !a.is_zero() {
                let inv = a.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
                ensure((&a * &inv).is_one(), "multiplicative inverse")?;
            } else {
                ensure(a.inv().is_err(), "zero has no inverse")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn exact_divide_round_trip(seed: u64) -> Result<(), String> {
    let strategy = (field_index(), 1usize..=3).prop_flat_map(|(i, n)| {
        let f = fields()[i].clone();
        (poly(f.clone(), n, 4, 3), poly(f, n, 3, 3))
    });
    runner(seed)
        .run(&strategy, |(p, q)| {
            if q.is_zero() {
                ensure(p.exact_divide(&q).is_err(), "division by zero is rejected")?;
                return Ok(());
            }
            let prod = &p * &q;
            let back = prod.exact_divide(&q).map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure(back == p, "(p q) / q = p")?;
            // p q + 1 is not a multiple of a non-constant q
            if q.total_degree().is_some_and(|d| d > 0) {
                let shifted = &prod + &MultiPoly::one(q.field(), q.nvars());
                ensure(shifted.exact_divide(&q).is_err(), "non-multiple is rejected")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn adjugate_inverse(seed: u64) -> Result<(), String> {
    let strategy = (field_index(), 1usize..=3).prop_flat_map(|(i, n)| scalar_matrix(fields()[i].clone(), n));
    runner(seed)
        .run(&strategy, |m| {
            let n = m.rows();
            let det = m.det().map_err(|e| TestCaseError::fail(e.to_string()))?;
            let adj = m.adjugate().map_err(|e| TestCaseError::fail(e.to_string()))?;
            let id = Matrix::identity_like(n, &det);
            let scaled = id.scale_by(&det);
            ensure(m.mul(&adj) == scaled, "M adj(M) = det(M) I")?;
            ensure(adj.mul(&m) == scaled, "adj(M) M = det(M) I")?;
            if det.is_zero() {
                ensure(m.inverse().is_err(), "singular matrix has no inverse")?;
            } else {
                let inv = m.inverse().map_err(|e| TestCaseError::fail(e.to_string()))?;
                ensure(inv.mul(&m) == id, "M^-1 M = I")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `L U` with `L` lower and `U` upper unitriangular: determinant one, and
/// an inverse of comparable size.
pub fn unimodular_matrix(field: Field, n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    (small_matrix(field.clone(), n, 3, 2), small_matrix(field, n, 3, 2)).prop_map(move |(a, b)| {
        let f = a.get(0, 0).field().clone();
        let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => a.get(i, j).clone(),
            std::cmp::Ordering::Equal => Scalar::one(&f),
            std::cmp::Ordering::Less => Scalar::zero(&f),
        });
        let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => b.get(i, j).clone(),
            std::cmp::Ordering::Equal => Scalar::one(&f),
            std::cmp::Ordering::Greater => Scalar::zero(&f),
        });
        lower.mul(&upper)
    })
}

pub fn substitution_round_trip(seed: u64) -> Result<(), String> {
    let strategy = (field_index(), 1usize..=3).prop_flat_map(|(i, n)| {
        let f = fields()[i].clone();
        (
            poly(f.clone(), n, 3, 2),
            small_matrix(f.clone(), n, 3, 2),
            small_matrix(f.clone(), n, 3, 2),
            unimodular_matrix(f, n),
        )
    });
    runner(seed)
        .run(&strategy, |(p, m, n, u)| {
            let fail = |e: coxsaito::exactalg::AlgebraError| TestCaseError::fail(e.to_string());
            let images: Vec<MultiPoly> = (0..m.rows()).map(|i| MultiPoly::linear(m.row(i))).collect();
            let moved = p.subst_linear(&m).map_err(fail)?;
            ensure(
                moved == p.compose(&images).map_err(fail)?,
                "linear substitution agrees with composition",
            )?;
            let twice = moved.subst_linear(&n).map_err(fail)?;
            ensure(twice == p.subst_linear(&m.mul(&n)).map_err(fail)?, "p(M(N x)) = p((M N) x)")?;
            let inv = u.inverse().map_err(fail)?;
            let back = p.subst_linear(&u).map_err(fail)?.subst_linear(&inv).map_err(fail)?;
            ensure(back == p, "p(U U^-1 x) = p(x)")?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}
