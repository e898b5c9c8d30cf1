use crate::coxeter::{poincare_closed_form, RationalSeries};
use crate::exactalg::{FactoredFraction, Matrix};
use crate::saito::{DerivationDegree, Frame, PolyDerivation, SaitoContext, SaitoError};

use super::report::Outcome;
use super::{check, compare, contact_order_check, simplified, CheckResult, Witness};

/// Entry `(i, j)` is the coefficient of `d/dP_i` in `derivs[j]`.
fn p_frame_matrix(ctx: &SaitoContext, derivs: &[PolyDerivation]) -> Matrix<FactoredFraction> {
    let converted: Vec<PolyDerivation> = derivs.iter().map(|d| d.to_frame(Frame::P, ctx)).collect();
    let l = ctx.rank();
    Matrix::from_fn(l, derivs.len(), |i, j| converted[j].coeffs()[i].clone())
}

fn contact_outcome(ctx: &SaitoContext, m: u32, order: u32) -> Result<Outcome, SaitoError> {
    let xi = ctx.xi_basis(m)?;
    for (j, theta) in xi.derivations().iter().enumerate() {
        let report = match contact_order_check(theta, order, ctx.datum()) {
            Ok(r) => r,
            Err(e) => return Ok(Outcome::Fail(Witness::note(format!("xi^({m})_{}: {e}", j + 1)))),
        };
        if let Some(h) = report.first_failure() {
            let form = &ctx.datum().hyperplane_polys()[h];
            return Ok(Outcome::Fail(Witness::note(format!(
                "xi^({m})_{} has order {:?} < {order} along {}",
                j + 1,
                report.orders[h],
                form.render()
            ))));
        }
    }
    Ok(Outcome::Pass)
}

fn expected_degree(ctx: &SaitoContext, m: u32, j: usize) -> i64 {
    let h = i64::from(ctx.datum().coxeter_number());
    let k = i64::from(m / 2);
    if m.is_multiple_of(2) {
        k * h
    } else {
        k * h + i64::from(ctx.datum().exponents()[j])
    }
}

pub fn check_basis(ctx: &SaitoContext, k_max: usize, m_max: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        out.push(check(format!("xi/polynomial/m={m}"), "xi^(m)_j has coefficients in S", || {
            ctx.xi_basis(m)?;
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("xi/contact-order/m={m}"), "xi^(m)_j(alpha_H) in S alpha_H^m", || {
            contact_outcome(ctx, m, m)
        }));
        out.push(check(format!("xi/saito-determinant/m={m}"), "det(xi^(m)_j(X_i)) = c Q^m, c != 0", || {
            let det = ctx.xi_basis(m)?.coefficients().det()?;
            let mut rest = det.clone();
            for _ in 0..m {
                for alpha in ctx.pool() {
                    rest = match rest.exact_divide(alpha) {
                        Ok(q) => q,
                        Err(_) => {
                            return Ok(Outcome::Fail(Witness::note(format!(
                                "det = {} is not divisible by Q^{m}",
                                det.render()
                            ))))
                        }
                    };
                }
            }
            Ok(match rest.as_constant() {
                Some(c) if !c.is_zero() => Outcome::Pass,
                _ => Outcome::Fail(Witness::note(format!("det / Q^{m} = {}", rest.render()))),
            })
        }));
        out.push(check(
            format!("xi/degree/m={m}"),
            "deg xi^(m)_j = kh (m = 2k), kh + m_j (m = 2k+1)",
            || {
                for (j, theta) in ctx.xi_basis(m)?.derivations().iter().enumerate() {
                    let want = expected_degree(ctx, m, j);
                    let got = theta.degree();
                    if got != DerivationDegree::Degree(want) {
                        return Ok(Outcome::Fail(Witness::note(format!(
                            "xi^({m})_{}: degree {got:?}, expected {want}",
                            j + 1
                        ))));
                    }
                }
                Ok(Outcome::Pass)
            },
        ));
    }
    for k in 1..=k_max {
        let k32 = k as u32;
        out.push(check(format!("xi/recursion/k={k}"), "xi^(2k+1) = -xi^(2k-1) (B^(k))^-1 G", || {
            let lhs = ctx.xi_basis(2 * k32 + 1)?.coefficients().to_fractions();
            let prev = ctx.xi_basis(2 * k32 - 1)?.coefficients().to_fractions();
            let b_inv = ctx.bk_matrix(k)?.inverse(ctx.pool())?;
            let rhs = simplified(prev.mul(&b_inv).mul(&ctx.metric().to_fractions()).neg());
            Ok(compare(&lhs, &rhs))
        }));
        out.push(check(format!("xi/hk-product/k={k}"), "xi^(2k+1) = xi^(1) H_k", || {
            let lhs = ctx.xi_basis(2 * k32 + 1)?.coefficients().to_fractions();
            let first = ctx.xi_basis(1)?.coefficients().to_fractions();
            let rhs = simplified(first.mul(&ctx.hk_product(k)?));
            Ok(compare(&lhs, &rhs))
        }));
        out.push(check(
            format!("nabla/step/k={k}"),
            "nabla_D xi^(2k+1) = -xi^(2k-1) (B^(k))^-1 B^(k+1)",
            || {
                let next: Vec<PolyDerivation> = ctx
                    .xi_basis(2 * k32 + 1)?
                    .derivations()
                    .iter()
                    .map(|t| ctx.nabla_d(t))
                    .collect::<Result<_, _>>()?;
                let lhs = p_frame_matrix(ctx, &next);
                let prev = ctx.xi_basis(2 * k32 - 1)?.coefficients().to_fractions();
                let b_inv = ctx.bk_matrix(k)?.inverse(ctx.pool())?;
                let x_frame = prev.mul(&b_inv).mul(&ctx.bk_matrix(k + 1)?.to_fractions()).neg();
                let rhs = simplified(ctx.jac_p().transpose().to_fractions().mul(&x_frame));
                Ok(compare(&lhs, &rhs))
            },
        ));
        out.push(check(
            format!("nabla/power/k={k}"),
            "nabla_D^k xi^(2k-1) = (-1)^(k-1) (d/dP) B^(k)",
            || {
                let lhs = p_frame_matrix(ctx, &ctx.nabla_power(k)?);
                let mut rhs = ctx.bk_matrix(k)?.to_fractions();
                if k % 2 == 0 {
                    rhs = rhs.neg();
                }
                Ok(compare(&lhs, &rhs))
            },
        ));
    }
    out
}

/// `(sum_j t^{d_j}) * (1 + t^h + ... + t^{qh}) / prod_{j<l} (1 - t^{m_j+1})`.
fn truncated_filtration_series(gens: &[u32], h: u32, ring: &[u32], q: u32) -> RationalSeries {
    let shifted: Vec<u32> = (0..=q).flat_map(|s| gens.iter().map(move |d| d + s * h)).collect();
    poincare_closed_form(&shifted, ring)
}

pub fn check_hodge(ctx: &SaitoContext, p_max: usize) -> Vec<CheckResult> {
    let l = ctx.rank();
    let datum = ctx.datum();
    let mut out = Vec::new();
    for p in 1..=p_max {
        let m = 2 * p as u32 - 1;
        out.push(check(format!("hodge/invariant/p={p}"), "w xi^(2p-1)_j = xi^(2p-1)_j", || {
            let c = ctx.xi_basis(m)?.coefficients().clone();
            for (g, s) in datum.generators().iter().enumerate() {
                let moved = c.try_map(|_, _, a| a.subst_linear(s))?;
                let expected = s.to_polys(l).mul(&c);
                if let Some((i, j)) = moved.to_fractions().first_difference(&expected.to_fractions()) {
                    return Ok(Outcome::Fail(Witness::at(
                        i,
                        j,
                        format!(
                            "generator {}: {} != {}",
                            g + 1,
                            moved.get(i, j).render(),
                            expected.get(i, j).render()
                        ),
                    )));
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("hodge/commutes-with-d/p={p}"), "[D, nabla_D^p xi^(2p-1)_j] = 0", || {
            let d = ctx.primitive_derivation();
            for (j, theta) in ctx.nabla_power(p)?.iter().enumerate() {
                let br = d.bracket(theta, ctx);
                if let Some(i) = br.coeffs().iter().position(|c| !c.is_zero()) {
                    return Ok(Outcome::Fail(Witness::at(i, j, br.coeffs()[i].render())));
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("hodge/discriminant/p={p}"), "xi^(2p-1)_j(Q^2) in Q^2 S", || {
            let q2 = datum.anti_invariant_q().pow(2);
            for (j, theta) in ctx.xi_basis(m)?.derivations().iter().enumerate() {
                let image =
                    theta.apply_poly(&q2, ctx).as_poly().expect("polynomial derivation of a polynomial");
                if image.exact_divide(&q2).is_err() {
                    return Ok(Outcome::Fail(Witness::note(format!(
                        "xi^({m})_{}(Q^2) = {} is not divisible by Q^2",
                        j + 1,
                        image.render()
                    ))));
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(check(
            format!("hodge/poincare/p={p}"),
            "Poin(sum_{k>=p} T_k) = Poin(sum_j R xi^(2p-1)_j)",
            || {
                let h = datum.coxeter_number();
                let ex = datum.exponents();
                let mut gens = Vec::with_capacity(l);
                for (j, theta) in ctx.xi_basis(m)?.derivations().iter().enumerate() {
                    match theta.degree() {
                        DerivationDegree::Degree(d) if d >= 0 => gens.push(d as u32),
                        other => {
                            return Ok(Outcome::Fail(Witness::note(format!(
                                "xi^({m})_{} has degree {other:?}",
                                j + 1
                            ))))
                        }
                    }
                }
                let t_ring: Vec<u32> = ex[..l - 1].iter().map(|e| e + 1).collect();
                let r_ring: Vec<u32> = ex.iter().map(|e| e + 1).collect();
                let mut lhs_ring = t_ring.clone();
                lhs_ring.push(h);
                let lhs = poincare_closed_form(&gens, &lhs_ring);
                let rhs = poincare_closed_form(&gens, &r_ring);
                if !lhs.same_function(&rhs) {
                    return Ok(Outcome::Fail(Witness::note(format!("{} != {}", lhs.render(), rhs.render()))));
                }
                let q = 3;
                let partial = truncated_filtration_series(&gens, h, &t_ring, q);
                let order = ((q + 1) * h + gens.iter().min().copied().unwrap_or(0) - 1) as usize;
                let (a, b) = (partial.expand(order), rhs.expand(order));
                if let Some(n) = (0..=order).find(|&n| a[n] != b[n]) {
                    return Ok(Outcome::Fail(Witness::note(format!(
                        "coefficient of t^{n}: {} != {}",
                        a[n], b[n]
                    ))));
                }
                Ok(Outcome::Pass)
            },
        ));
        out.push(check(format!("hodge/contact-order/p={p}"), "xi^(2p-1)_j in D^(2p-1)", || {
            contact_outcome(ctx, m, m)
        }));
    }
    out
}
