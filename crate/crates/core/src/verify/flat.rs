use crate::exactalg::{FactoredFraction, Matrix, Scalar};
use crate::saito::SaitoContext;

use super::report::Outcome;
use super::{check, compare, simplified, CheckResult, Witness};

fn d_matrix(ctx: &SaitoContext, m: &Matrix<FactoredFraction>) -> Matrix<FactoredFraction> {
    simplified(m.map(|f| ctx.primitive_derivation_apply(f)))
}

/// `(c_j delta_{i+j,l+1})` with one-based indices.
fn antidiagonal(ctx: &SaitoContext, c: impl Fn(usize) -> Scalar) -> Matrix<FactoredFraction> {
    let l = ctx.rank();
    Matrix::from_fn(l, l, |i, j| {
        if i + j + 1 == l {
            FactoredFraction::constant(&c(j), l)
        } else {
            FactoredFraction::zero(ctx.datum().field(), l)
        }
    })
}

pub fn check_flat(ctx: &SaitoContext, k_max: usize) -> Vec<CheckResult> {
    let field = ctx.datum().field().clone();
    let dg = d_matrix(ctx, &ctx.metric().to_fractions());
    let normalized = dg.first_difference(&antidiagonal(ctx, |_| Scalar::one(&field))).is_none();
    let skip = || Outcome::Skip("invariants not flat-normalized".into());
    let h = i64::from(ctx.datum().coxeter_number());
    let ex = ctx.datum().exponents().to_vec();

    let mut out = Vec::new();
    out.push(check("flat/det-dg-constant", "det D[G] is a nonzero constant", || {
        let det = dg.det()?;
        Ok(match det.as_constant() {
            Some(c) if !c.is_zero() => Outcome::Pass,
            _ => Outcome::Fail(Witness::note(format!("det D[G] = {}", det.render()))),
        })
    }));
    out.push(check("flat/d2g-zero", "D^2[G] = 0", || {
        let zero = Matrix::from_fn(dg.rows(), dg.cols(), |_, _| FactoredFraction::zero(&field, ctx.rank()));
        Ok(compare(&d_matrix(ctx, &dg), &zero))
    }));
    out.push(check("flat/normalized", "D[g^{ij}] = delta_{i+j,l+1}", || {
        Ok(if normalized { Outcome::Pass } else { skip() })
    }));
    for k in 1..=k_max {
        out.push(check(
            format!("flat/bk-closed-form/k={k}"),
            "B^(k)_{ij} = ((k-1) + m_j/h) delta_{i+j,l+1}",
            || {
                if !normalized {
                    return Ok(skip());
                }
                let want = antidiagonal(ctx, |j| {
                    let num = (k as i64 - 1) * h + i64::from(ex[j]);
                    Scalar::from_ratio(&field, num, h)
                });
                Ok(compare(&ctx.bk_matrix(k)?.to_fractions(), &want))
            },
        ));
    }
    out
}
