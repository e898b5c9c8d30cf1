use crate::exactalg::{Homogeneity, Matrix, MultiPoly, Scalar};

use super::datum::{CoxeterDatum, GroupType};
use super::CoxeterError;

/// Basic invariants `P_1, ..., P_l` with ascending degrees.
#[derive(Clone, Debug)]
pub struct BasicInvariants {
    polys: Vec<MultiPoly>,
    /// `c` in `det J(P) = c * Q`.
    jacobian_constant: Scalar,
    validated: bool,
}

impl BasicInvariants {
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn jacobian_constant(&self) -> &Scalar {
        &self.jacobian_constant
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// The Jacobian matrix `J(g)` with entry `(i, j) = d g_j / d x_i`.
pub fn jacobian(polys: &[MultiPoly]) -> Matrix<MultiPoly> {
    let n = polys[0].nvars();
    Matrix::from_fn(n, polys.len(), |i, j| polys[j].partial(i))
}

/// Checks degrees, invariance under every generator, and that `det J(P)`
/// is a nonzero constant multiple of `Q`.
pub fn validate_invariants(
    datum: &CoxeterDatum,
    candidates: Vec<MultiPoly>,
) -> Result<BasicInvariants, CoxeterError> {
    let l = datum.rank();
    if candidates.len() != l {
        return Err(CoxeterError::WrongDegrees(format!("expected {l} invariants, got {}", candidates.len())));
    }
    for (j, p) in candidates.iter().enumerate() {
        if p.nvars() != l || !p.field().same_as(datum.field()) {
            return Err(CoxeterError::WrongDegrees(format!(
                "P{} is not a polynomial in the coordinates of the datum",
                j + 1
            )));
        }
        let expected = datum.exponents()[j] + 1;
        match p.homogeneity() {
            Homogeneity::Degree(d) if d == expected => {}
            Homogeneity::Degree(d) => {
                return Err(CoxeterError::WrongDegrees(format!(
                    "P{} has degree {d}, expected {expected}",
                    j + 1
                )))
            }
            Homogeneity::Zero => return Err(CoxeterError::WrongDegrees(format!("P{} is zero", j + 1))),
            Homogeneity::Inhomogeneous => {
                // An inhomogeneous candidate is reported as non-invariant when
                // some generator moves it; otherwise as a degree failure.
                for (g, s) in datum.generators().iter().enumerate() {
                    if p.subst_linear(s)? != *p {
                        return Err(CoxeterError::NotInvariant { invariant: j + 1, generator: g });
                    }
                }
                return Err(CoxeterError::WrongDegrees(format!("P{} is not homogeneous", j + 1)));
            }
        }
    }
    for (j, p) in candidates.iter().enumerate() {
        for (g, s) in datum.generators().iter().enumerate() {
            if p.subst_linear(s)? != *p {
                return Err(CoxeterError::NotInvariant { invariant: j + 1, generator: g });
            }
        }
    }
    let det = jacobian(&candidates).det()?;
    let mut rest = det.clone();
    for alpha in datum.hyperplane_polys() {
        rest = rest.exact_divide(&alpha).map_err(|_| {
            CoxeterError::JacobianCriterionFailed(format!(
                "det J(P) = {} is not divisible by {}",
                det.render(),
                alpha.render()
            ))
        })?;
    }
    let c = match rest.as_constant() {
        Some(c) if !c.is_zero() => c,
        _ => {
            return Err(CoxeterError::JacobianCriterionFailed(format!(
                "det J(P) = {} is not a nonzero multiple of Q",
                det.render()
            )))
        }
    };
    Ok(BasicInvariants { polys: candidates, jacobian_constant: c, validated: true })
}

fn power_sum(vars: &[MultiPoly], k: u32) -> MultiPoly {
    let mut acc = MultiPoly::zero(vars[0].field(), vars[0].nvars());
    for v in vars {
        acc = &acc + &v.pow(k);
    }
    acc
}

/// `Re((x + i y)^m)`.
pub fn dihedral_invariant(datum: &CoxeterDatum, m: u32) -> MultiPoly {
    let (x, y) = (datum.var(0), datum.var(1));
    let f = datum.field();
    let mut acc = MultiPoly::zero(f, 2);
    let mut binom: i64 = 1;
    for k in 0..=m {
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            let term = (&x.pow(m - k) * &y.pow(k)).scale(&Scalar::from_int(f, sign * binom));
            acc = &acc + &term;
        }
        binom = binom * i64::from(m - k) / i64::from(k + 1);
    }
    acc
}

/// Catalogue invariants for the built-in families, validated.
pub fn builtin_invariants(datum: &CoxeterDatum) -> Result<BasicInvariants, CoxeterError> {
    let l = datum.rank();
    let vars: Vec<MultiPoly> = (0..l).map(|i| datum.var(i)).collect();
    let polys = match datum.group_type() {
        GroupType::A if l == 1 => vec![vars[0].pow(2)],
        GroupType::A => {
            let mut ambient = vars.clone();
            let mut last = MultiPoly::zero(datum.field(), l);
            for v in &vars {
                last = &last - v;
            }
            ambient.push(last);
            (2..=l as u32 + 1).map(|k| power_sum(&ambient, k)).collect()
        }
        GroupType::B => (1..=l as u32).map(|j| power_sum(&vars, 2 * j)).collect(),
        GroupType::D => {
            let mut ps: Vec<MultiPoly> = (1..l as u32).map(|j| power_sum(&vars, 2 * j)).collect();
            let mut e = MultiPoly::one(datum.field(), l);
            for v in &vars {
                e = &e * v;
            }
            ps.push(e);
            // stable sort keeps p_{2j} before e_l at equal degree
            ps.sort_by_key(|p| p.total_degree());
            ps
        }
        GroupType::I2(m) => {
            let p1 = &vars[0].pow(2) + &vars[1].pow(2);
            vec![p1, dihedral_invariant(datum, *m)]
        }
        GroupType::Custom(name) => {
            return Err(CoxeterError::UnsupportedType(format!(
                "{name}: no catalogue invariants; supply an invariants file"
            )))
        }
    };
    validate_invariants(datum, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_datum;

    #[test]
    fn b2_catalogue() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let inv = builtin_invariants(&d).unwrap();
        assert_eq!(inv.polys()[0].render(), "x1^2 + x2^2");
        assert_eq!(inv.polys()[1].render(), "x1^4 + x2^4");
        assert_eq!(inv.jacobian_constant(), &Scalar::from_int(d.field(), -8));
        assert!(inv.is_validated());
    }

    #[test]
    fn a1_catalogue() {
        let d = build_datum(&GroupType::A, 1).unwrap();
        let inv = builtin_invariants(&d).unwrap();
        assert_eq!(inv.polys()[0].render(), "x1^2");
        assert_eq!(inv.jacobian_constant(), &Scalar::from_int(d.field(), 2));
    }

    #[test]
    fn i2_4_second_invariant() {
        let d = build_datum(&GroupType::I2(4), 4).unwrap();
        let inv = builtin_invariants(&d).unwrap();
        assert_eq!(inv.polys()[1].render(), "x1^4 - 6*x1^2*x2^2 + x2^4");
    }

    #[test]
    fn b2_dependent_invariants_fail_jacobian() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let p1 = &d.var(0).pow(2) + &d.var(1).pow(2);
        let err = validate_invariants(&d, vec![p1.clone(), p1.pow(2)]).unwrap_err();
        assert!(matches!(err, CoxeterError::JacobianCriterionFailed(_)));
    }

    #[test]
    fn b2_non_invariant_candidate() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let p1 = &d.var(0).pow(2) + &d.var(1).pow(2);
        let bad = &d.var(0).pow(4) + &d.var(1).pow(3);
        let err = validate_invariants(&d, vec![p1, bad]).unwrap_err();
        assert!(matches!(err, CoxeterError::NotInvariant { invariant: 2, .. }));
    }

    #[test]
    fn b2_wrong_degree() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let p1 = &d.var(0).pow(2) + &d.var(1).pow(2);
        let err = validate_invariants(&d, vec![p1.clone(), p1.pow(3)]).unwrap_err();
        assert!(matches!(err, CoxeterError::WrongDegrees(_)));
    }

    #[test]
    fn small_builtins_validate() {
        for l in 1..=3 {
            for t in [GroupType::A, GroupType::B] {
                let d = build_datum(&t, l).unwrap();
                builtin_invariants(&d).unwrap();
            }
        }
        for l in 3..=4 {
            let d = build_datum(&GroupType::D, l).unwrap();
            builtin_invariants(&d).unwrap();
        }
        for m in 3..=8 {
            let d = build_datum(&GroupType::I2(m), m).unwrap();
            builtin_invariants(&d).unwrap();
        }
    }
}
