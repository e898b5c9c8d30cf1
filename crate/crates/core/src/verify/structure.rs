use crate::exactalg::{FactoredFraction, Homogeneity, Matrix, MultiPoly, Scalar};
use crate::saito::{Frame, SaitoContext, SaitoError};

use super::report::Outcome;
use super::{check, compare, simplified, CheckResult, Witness};

fn frac(p: &MultiPoly) -> FactoredFraction {
    FactoredFraction::from_poly(p.clone())
}

pub fn check_context(ctx: &SaitoContext) -> Vec<CheckResult> {
    let l = ctx.rank();
    let mut out = Vec::new();
    out.push(check("metric/recompute", "G = J(P)^T A J(P)", || {
        Ok(compare(&ctx.metric().to_fractions(), &ctx.metric_recomputed().to_fractions()))
    }));
    out.push(check("metric/symmetric", "G = G^T", || {
        Ok(compare(&ctx.metric().to_fractions(), &ctx.metric().transpose().to_fractions()))
    }));
    out.push(check("primitive/dual-basis", "D[P_i] = delta_{i,l}", || {
        for (i, p) in ctx.invariants().polys().iter().enumerate() {
            let d = ctx.primitive_derivation_apply(&frac(p));
            let want = if i + 1 == l { 1 } else { 0 };
            let ok = d.as_constant().is_some_and(|c| c == Scalar::from_int(ctx.datum().field(), want));
            if !ok {
                return Ok(Outcome::Fail(Witness::note(format!("D[P{}] = {}", i + 1, d.render()))));
            }
        }
        Ok(Outcome::Pass)
    }));
    out.push(check("frame/round-trip", "(d/dX) = (d/dP) J(P)^T", || {
        for (j, theta) in ctx.xi_basis(1)?.derivations().iter().enumerate() {
            let in_p = theta.to_frame(Frame::P, ctx);
            let back = in_p.to_frame(Frame::X, ctx);
            if !back.same_as(theta, ctx) {
                return Ok(Outcome::Fail(Witness::note(format!(
                    "xi^(1)_{} changes under X -> P -> X",
                    j + 1
                ))));
            }
            for (i, p) in ctx.invariants().polys().iter().enumerate() {
                let direct = theta.apply_poly(p, ctx);
                let via_p = &in_p.coeffs()[i];
                if !direct.equals(via_p) {
                    return Ok(Outcome::Fail(Witness::at(
                        i,
                        j,
                        format!("xi(P) = {} but P-frame coefficient {}", direct.render(), via_p.render()),
                    )));
                }
            }
        }
        Ok(Outcome::Pass)
    }));
    out
}

fn invariant_under_generators(ctx: &SaitoContext, m: &Matrix<MultiPoly>) -> Result<Outcome, SaitoError> {
    for (g, s) in ctx.datum().generators().iter().enumerate() {
        for (i, j, p) in m.entries() {
            if p.subst_linear(s)? != *p {
                return Ok(Outcome::Fail(Witness::at(
                    i,
                    j,
                    format!("{} moved by generator {}", p.render(), g + 1),
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

pub fn check_bk(ctx: &SaitoContext, k_max: usize) -> Vec<CheckResult> {
    let ex = ctx.datum().exponents().to_vec();
    let h = i64::from(ctx.datum().coxeter_number());
    let mut out = Vec::new();
    for k in 1..=k_max {
        out.push(check(format!("bk/polynomial/k={k}"), "B^(k) has entries in R", || {
            ctx.bk_matrix(k)?;
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("bk/invariant/k={k}"), "B^(k)_{ij} is W-invariant", || {
            invariant_under_generators(ctx, &ctx.bk_matrix(k)?)
        }));
        out.push(check(format!("bk/d-annihilated/k={k}"), "D[B^(k)_{ij}] = 0", || {
            for (i, j, p) in ctx.bk_matrix(k)?.entries() {
                let d = ctx.primitive_derivation_apply(&frac(p));
                if !d.is_zero() {
                    return Ok(Outcome::Fail(Witness::at(
                        i,
                        j,
                        format!("D[{}] = {}", p.render(), d.render()),
                    )));
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("bk/det-constant/k={k}"), "det B^(k) is a nonzero constant", || {
            let det = ctx.bk_matrix(k)?.det()?;
            Ok(match det.as_constant() {
                Some(c) if !c.is_zero() => Outcome::Pass,
                _ => Outcome::Fail(Witness::note(format!("det = {}", det.render()))),
            })
        }));
        out.push(check(format!("bk/degree/k={k}"), "deg B^(k)_{ij} = m_i + m_j - h", || {
            for (i, j, p) in ctx.bk_matrix(k)?.entries() {
                let want = i64::from(ex[i]) + i64::from(ex[j]) - h;
                let ok = match p.homogeneity() {
                    Homogeneity::Zero => true,
                    Homogeneity::Degree(d) => want >= 0 && i64::from(d) == want,
                    Homogeneity::Inhomogeneous => false,
                };
                if !ok {
                    return Ok(Outcome::Fail(Witness::at(
                        i,
                        j,
                        format!("{} is not homogeneous of degree {want}", p.render()),
                    )));
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(check(format!("bk/difference/k={k}"), "B^(k+1) - B^(k) = B^(1) + B^(1)^T", || {
            let b1 = ctx.bk_matrix(1)?;
            let lhs = ctx.bk_matrix(k + 1)?.sub(&ctx.bk_matrix(k)?);
            let rhs = b1.add(&b1.transpose());
            Ok(compare(&lhs.to_fractions(), &rhs.to_fractions()))
        }));
    }
    out
}

/// The Levi-Civita connection of the covariant metric `G^-1` in the flat
/// chart `P`: element `k - 1` is the matrix `Gamma_k` with entry
/// `(i, j) = Gamma^j_{ik}`.
pub fn levi_civita_connection(ctx: &SaitoContext) -> Result<Vec<Matrix<FactoredFraction>>, SaitoError> {
    let l = ctx.rank();
    let g_cov = ctx.metric_inv()?;
    let dg: Vec<Matrix<FactoredFraction>> = (0..l).map(|t| ctx.partial_p_matrix(t, g_cov)).collect();
    let half = Scalar::from_ratio(ctx.datum().field(), 1, 2);
    let g = ctx.metric();
    let mut out = Vec::with_capacity(l);
    for k in 0..l {
        let m = Matrix::from_fn(l, l, |i, j| {
            let mut acc = FactoredFraction::zero(ctx.datum().field(), l);
            for t in 0..l {
                if g.get(j, t).is_zero() {
                    continue;
                }
                let bracket = dg[i].get(k, t).add(dg[k].get(i, t)).sub(dg[t].get(i, k));
                acc = acc.add(&bracket.mul_poly(g.get(j, t)));
            }
            let mut acc = acc.scale(&half);
            acc.simplify();
            acc
        });
        out.push(m);
    }
    Ok(out)
}

pub fn check_christoffel(ctx: &SaitoContext) -> Vec<CheckResult> {
    let l = ctx.rank();
    let mut out = Vec::new();
    for k in 1..=l {
        out.push(check(
            format!("christoffel/polynomial/k={k}"),
            "Gamma*_k = J(P)^T A (d/dP_k)[J(P)] has entries in R",
            || {
                ctx.christoffel_star(k)?;
                Ok(Outcome::Pass)
            },
        ));
    }
    out.push(check("christoffel/last-equals-b1", "Gamma*_l = B^(1)", || {
        Ok(compare(&ctx.christoffel_star(l)?.to_fractions(), &ctx.bk_matrix(1)?.to_fractions()))
    }));
    for k in 1..=l {
        out.push(check(
            format!("christoffel/metric-derivative/k={k}"),
            "(d/dP_k)[G] = Gamma*_k + (Gamma*_k)^T",
            || {
                let lhs = ctx.partial_p_matrix(k - 1, &ctx.metric().to_fractions());
                let s = ctx.christoffel_star(k)?;
                Ok(compare(&lhs, &s.add(&s.transpose()).to_fractions()))
            },
        ));
    }
    out.push(check("christoffel/torsion-free", "sum_t g^{kt} S_t^{ij} = sum_t g^{it} S_t^{kj}", || {
        let s: Vec<_> = (1..=l).map(|t| ctx.christoffel_star(t)).collect::<Result<_, _>>()?;
        let g = ctx.metric();
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    let mut lhs = MultiPoly::zero(ctx.datum().field(), l);
                    let mut rhs = lhs.clone();
                    for (t, st) in s.iter().enumerate() {
                        lhs = &lhs + &(g.get(k, t) * st.get(i, j));
                        rhs = &rhs + &(g.get(i, t) * st.get(k, j));
                    }
                    if lhs != rhs {
                        return Ok(Outcome::Fail(Witness::at(
                            i,
                            j,
                            format!("k = {}: {} != {}", k + 1, lhs.render(), rhs.render()),
                        )));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    }));
    let lc = std::sync::OnceLock::new();
    for k in 1..=l {
        out.push(check(format!("christoffel/levi-civita/k={k}"), "Gamma*_k = -G Gamma_k", || {
            if lc.get().is_none() {
                let _ = lc.set(levi_civita_connection(ctx)?);
            }
            let gamma = &lc.get().expect("set above")[k - 1];
            let rhs = simplified(ctx.metric().to_fractions().mul(gamma).neg());
            Ok(compare(&ctx.christoffel_star(k)?.to_fractions(), &rhs))
        }));
    }
    out.push(check("connection/t-linear", "nabla_D(P_1 theta) = P_1 nabla_D(theta)", || {
        if l < 2 {
            return Ok(Outcome::Skip("rank one has no P_1 with D[P_1] = 0".into()));
        }
        let p1 = frac(&ctx.invariants().polys()[0]);
        let theta = ctx.xi_basis(1)?.derivation(l - 1);
        let lhs = ctx.nabla_d(&theta.scale_by(&p1))?;
        let rhs = ctx.nabla_d(&theta)?.scale_by(&p1);
        for (i, (a, b)) in lhs.coeffs().iter().zip(rhs.coeffs()).enumerate() {
            if !a.equals(b) {
                return Ok(Outcome::Fail(Witness::at(i, 0, format!("{} != {}", a.render(), b.render()))));
            }
        }
        Ok(Outcome::Pass)
    }));
    out
}
