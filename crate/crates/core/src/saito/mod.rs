//! The primitive derivation `D = d/dP_l` and the objects built from it:
//! iterated derivatives `D^k X`, the matrices `B^(k)`, the Christoffel
//! matrices of the flat structure, the connection `nabla_D` and the
//! recursive bases `xi^(m)` of the modules `D^(m)`.
//!
//! Everything is exact. Denominators are products of the hyperplane forms,
//! which are kept as an explicit pool for factoring.

mod cache;
mod derivation;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coxeter::{jacobian, BasicInvariants, CoxeterDatum, CoxeterError};
use crate::exactalg::{AlgebraError, FactoredFraction, Matrix, MultiPoly, RingElement, Scalar};

use cache::Cache;
pub use derivation::{DerivationDegree, Frame, PolyDerivation};

#[derive(Debug, Error)]
pub enum SaitoError {
    #[error("invariants have not been validated")]
    NotValidated,
    #[error("{object} entry ({i}, {j}) is not a polynomial: {entry}")]
    NonPolynomialEntry { object: String, i: usize, j: usize, entry: String },
    #[error("derivations are in different frames or ranks")]
    FrameMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A deliberate single-entry corruption, used to check that the
/// verification suites notice and locate damage.
#[derive(Clone, Debug)]
pub enum Perturbation {
    /// Adds `delta` to entry `(i, j)` of `B^(k)`.
    BkEntry { k: usize, i: usize, j: usize, delta: Scalar },
    /// Adds `delta` to entry `(i, j)` of `G`.
    MetricEntry { i: usize, j: usize, delta: Scalar },
    /// Adds `delta` to the coefficient of `d/dX_i` in `xi_j^(m)`.
    XiCoefficient { m: u32, i: usize, j: usize, delta: Scalar },
}

/// `xi^(m)_1, ..., xi^(m)_l` as the columns of an X-frame coefficient matrix.
#[derive(Clone, Debug)]
pub struct XiBasis {
    m: u32,
    coefficients: Matrix<MultiPoly>,
}

impl XiBasis {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Entry `(i, j)` is `xi_j(X_i)`.
    pub fn coefficients(&self) -> &Matrix<MultiPoly> {
        &self.coefficients
    }

    pub fn derivation(&self, j: usize) -> PolyDerivation {
        PolyDerivation::from_polys(Frame::X, &self.coefficients.column(j))
    }

    pub fn derivations(&self) -> Vec<PolyDerivation> {
        (0..self.coefficients.cols()).map(|j| self.derivation(j)).collect()
    }
}

pub struct SaitoContext {
    datum: CoxeterDatum,
    invariants: BasicInvariants,
    pool: Vec<MultiPoly>,
    gram: Matrix<MultiPoly>,
    jac_p: Matrix<MultiPoly>,
    jac_p_inv: Matrix<FactoredFraction>,
    metric: Matrix<MultiPoly>,
    metric_inv: OnceLock<Matrix<FactoredFraction>>,
    perturbations: Vec<Perturbation>,
    dkx: Cache<usize, Vec<FactoredFraction>>,
    jac_dkx: Cache<usize, Matrix<FactoredFraction>>,
    jac_dkx_inv: Cache<usize, Matrix<FactoredFraction>>,
    bk_raw: Cache<usize, Matrix<FactoredFraction>>,
    christoffel: Cache<usize, Matrix<MultiPoly>>,
    xi: Cache<u32, XiBasis>,
    nabla_power: Cache<usize, Vec<PolyDerivation>>,
}

pub fn build_context(datum: &CoxeterDatum, invariants: &BasicInvariants) -> Result<SaitoContext, SaitoError> {
    SaitoContext::new(datum.clone(), invariants.clone(), Vec::new())
}

impl SaitoContext {
    pub fn new(
        datum: CoxeterDatum,
        invariants: BasicInvariants,
        perturbations: Vec<Perturbation>,
    ) -> Result<Self, SaitoError> {
        if !invariants.is_validated() {
            return Err(SaitoError::NotValidated);
        }
        let l = datum.rank();
        let pool: Vec<MultiPoly> = datum.hyperplane_polys().into_iter().map(|p| p.monic().0).collect();
        let gram = datum.gram().to_polys(l);
        let jac_p = jacobian(invariants.polys());
        let jac_p_inv = jac_p.inverse(&pool)?;
        let mut metric = jac_p.transpose().mul(&gram).mul(&jac_p);
        for p in &perturbations {
            if let Perturbation::MetricEntry { i, j, delta } = p {
                let v = metric.get(*i, *j).add(&MultiPoly::constant(delta, l));
                metric.set(*i, *j, v);
            }
        }
        Ok(SaitoContext {
            datum,
            invariants,
            pool,
            gram,
            jac_p,
            jac_p_inv,
            metric,
            metric_inv: OnceLock::new(),
            perturbations,
            dkx: Cache::default(),
            jac_dkx: Cache::default(),
            jac_dkx_inv: Cache::default(),
            bk_raw: Cache::default(),
            christoffel: Cache::default(),
            xi: Cache::default(),
            nabla_power: Cache::default(),
        })
    }

    pub fn with_perturbation(&self, p: Perturbation) -> Result<SaitoContext, SaitoError> {
        let mut ps = self.perturbations.clone();
        ps.push(p);
        SaitoContext::new(self.datum.clone(), self.invariants.clone(), ps)
    }

    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn invariants(&self) -> &BasicInvariants {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// The hyperplane forms, monic; every denominator is a product of these.
    pub fn pool(&self) -> &[MultiPoly] {
        &self.pool
    }

    pub fn is_perturbed(&self) -> bool {
        !self.perturbations.is_empty()
    }

    pub fn gram(&self) -> &Matrix<MultiPoly> {
        &self.gram
    }

    /// `J(P)`, entry `(i, j) = dP_j/dX_i`.
    pub fn jac_p(&self) -> &Matrix<MultiPoly> {
        &self.jac_p
    }

    /// `J(P)^-1`, entry `(k, i) = dX_i/dP_k`.
    pub fn jac_p_inv(&self) -> &Matrix<FactoredFraction> {
        &self.jac_p_inv
    }

    /// `G = J(P)^T A J(P)`, entry `(i, j) = I*(dP_i, dP_j)`.
    pub fn metric(&self) -> &Matrix<MultiPoly> {
        &self.metric
    }

    /// `G` recomputed from scratch, ignoring perturbations.
    pub fn metric_recomputed(&self) -> Matrix<MultiPoly> {
        self.jac_p.transpose().mul(&self.gram).mul(&self.jac_p)
    }

    pub fn metric_inv(&self) -> Result<&Matrix<FactoredFraction>, SaitoError> {
        if let Some(m) = self.metric_inv.get() {
            return Ok(m);
        }
        let inv = self.metric.inverse(&self.pool)?;
        Ok(self.metric_inv.get_or_init(|| inv))
    }

    pub(crate) fn zero_fraction(&self) -> FactoredFraction {
        FactoredFraction::zero(self.datum.field(), self.rank())
    }

    /// `D[f] = sum_i D[X_i] df/dX_i` with `D[X_i] = (J^-1)_{l i}`.
    pub fn primitive_derivation_apply(&self, f: &FactoredFraction) -> FactoredFraction {
        self.partial_p(self.rank() - 1, f)
    }

    /// `d f / d P_k` (zero-based `k`).
    pub fn partial_p(&self, k: usize, f: &FactoredFraction) -> FactoredFraction {
        let mut acc = self.zero_fraction();
        for i in 0..self.rank() {
            let c = self.jac_p_inv.get(k, i);
            if c.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = acc.add(&c.mul(&d));
            }
        }
        acc.simplify();
        acc
    }

    pub fn partial_p_matrix(&self, k: usize, m: &Matrix<FactoredFraction>) -> Matrix<FactoredFraction> {
        m.map(|f| self.partial_p(k, f))
    }

    /// `D^k[X_1], ..., D^k[X_l]`.
    pub fn dkx(&self, k: usize) -> Result<Arc<Vec<FactoredFraction>>, SaitoError> {
        self.dkx.get_or_try(k, || {
            if k == 0 {
                return Ok((0..self.rank())
                    .map(|i| FactoredFraction::from_poly(self.datum.var(i)))
                    .collect());
            }
            let prev = self.dkx(k - 1)?;
            Ok(prev.iter().map(|f| self.primitive_derivation_apply(f)).collect())
        })
    }

    /// Preloads `D^k[X]`, e.g. from a persisted table. An already computed
    /// value is kept.
    pub fn seed_dkx(&self, k: usize, values: Vec<FactoredFraction>) -> Result<(), SaitoError> {
        if values.len() != self.rank() || values.iter().any(|f| f.nvars() != self.rank()) {
            return Err(SaitoError::IndexOutOfRange(format!("D^{k}[X] table of the wrong shape")));
        }
        self.dkx.insert(k, values);
        Ok(())
    }

    /// The `D^k[X]` tables computed so far, by increasing `k`.
    pub fn computed_dkx(&self) -> Vec<(usize, Arc<Vec<FactoredFraction>>)> {
        let mut v = self.dkx.snapshot();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// `J(D^k X)`, entry `(i, j) = d D^k[X_j] / dX_i`.
    pub fn jac_dkx(&self, k: usize) -> Result<Arc<Matrix<FactoredFraction>>, SaitoError> {
        self.jac_dkx.get_or_try(k, || {
            let v = self.dkx(k)?;
            let l = self.rank();
            Ok(Matrix::from_fn(l, l, |i, j| {
                let mut d = v[j].partial(i);
                d.simplify();
                d
            }))
        })
    }

    /// `J(D^k X)^-1`. For `k >= 1` this uses
    /// `J(D^k X)^-1 = -J(D^(k-1) X)^-1 J(P) (B^(k))^-1 J(P)^T A`.
    pub fn jac_dkx_inv(&self, k: usize) -> Result<Arc<Matrix<FactoredFraction>>, SaitoError> {
        self.jac_dkx_inv.get_or_try(k, || {
            let l = self.rank();
            if k == 0 {
                return Ok(Matrix::identity_like(l, &self.zero_fraction()));
            }
            let b = self.bk_raw(k)?;
            let b_inv = match b.to_polys() {
                Ok(p) => p.inverse(&self.pool)?,
                Err(_) => b.inverse(&self.pool)?,
            };
            let prev = self.jac_dkx_inv(k - 1)?;
            let jt_a = self.jac_p.transpose().mul(&self.gram).to_fractions();
            let m = prev.mul(&self.jac_p.to_fractions()).mul(&b_inv).mul(&jt_a).neg();
            Ok(m.map(|f| {
                let mut f = f.clone();
                f.simplify();
                f
            }))
        })
    }

    /// `-J^T A J(D^k X) J(D^(k-1) X)^-1 J` before any polynomiality check.
    fn bk_raw(&self, k: usize) -> Result<Arc<Matrix<FactoredFraction>>, SaitoError> {
        self.bk_raw.get_or_try(k, || {
            let l = self.rank();
            if k == 0 {
                return Ok(Matrix::identity_like(l, &self.zero_fraction()));
            }
            let jt_a = self.jac_p.transpose().mul(&self.gram).to_fractions();
            let jk = self.jac_dkx(k)?;
            let prev_inv = self.jac_dkx_inv(k - 1)?;
            let m = jt_a.mul(&*jk).mul(&*prev_inv).mul(&self.jac_p.to_fractions()).neg();
            Ok(m.map(|f| {
                let mut f = f.clone();
                f.simplify();
                f
            }))
        })
    }

    /// `B^(k)`, certified polynomial. `B^(0)` is the identity.
    pub fn bk_matrix(&self, k: usize) -> Result<Matrix<MultiPoly>, SaitoError> {
        let raw = self.bk_raw(k)?;
        let mut b = certify("B", &raw)?;
        for p in &self.perturbations {
            if let Perturbation::BkEntry { k: pk, i, j, delta } = p {
                if *pk == k {
                    let v = b.get(*i, *j).add(&MultiPoly::constant(delta, self.rank()));
                    b.set(*i, *j, v);
                }
            }
        }
        Ok(b)
    }

    /// `Gamma*_k = J^T A (d/dP_k)[J]` (one-based `k`), entry `(i, j)` equal
    /// to `Gamma^{ij}_k`.
    pub fn christoffel_star(&self, k: usize) -> Result<Arc<Matrix<MultiPoly>>, SaitoError> {
        if k == 0 || k > self.rank() {
            return Err(SaitoError::IndexOutOfRange(format!("Gamma*_{k}")));
        }
        self.christoffel.get_or_try(k, || {
            let dj = self.partial_p_matrix(k - 1, &self.jac_p.to_fractions());
            let jt_a = self.jac_p.transpose().mul(&self.gram).to_fractions();
            let m = jt_a.mul(&dj).map(|f| {
                let mut f = f.clone();
                f.simplify();
                f
            });
            certify("Gamma*", &m)
        })
    }

    /// `Gamma_k = -G^-1 Gamma*_k` (one-based `k`).
    pub fn connection_matrix(&self, k: usize) -> Result<Matrix<FactoredFraction>, SaitoError> {
        let star = self.christoffel_star(k)?;
        let m = self.metric_inv()?.mul(&star.to_fractions()).neg();
        Ok(m.map(|f| {
            let mut f = f.clone();
            f.simplify();
            f
        }))
    }

    /// `nabla_D theta` for `theta` in the P frame: `D[c] + Gamma_l^T c`.
    pub fn nabla_d(&self, theta: &PolyDerivation) -> Result<PolyDerivation, SaitoError> {
        let theta = theta.to_frame(Frame::P, self);
        let l = self.rank();
        let gamma = self.connection_matrix(l)?;
        let c = theta.coeffs();
        let out = (0..l)
            .map(|j| {
                let mut acc = self.primitive_derivation_apply(&c[j]);
                for (i, ci) in c.iter().enumerate() {
                    acc = acc.add(&gamma.get(i, j).mul(ci));
                }
                acc.simplify();
                acc
            })
            .collect();
        Ok(PolyDerivation::new(Frame::P, out))
    }

    /// The basis `xi^(m)`: coefficients `A J(D^k X)^-1` for `m = 2k` and
    /// `A J(D^k X)^-1 J(P)` for `m = 2k + 1`.
    pub fn xi_basis(&self, m: u32) -> Result<Arc<XiBasis>, SaitoError> {
        let basis = self.xi.get_or_try(m, || {
            let k = (m / 2) as usize;
            let a = self.gram.to_fractions();
            let mut c = a.mul(&*self.jac_dkx_inv(k)?);
            if m % 2 == 1 {
                c = c.mul(&self.jac_p.to_fractions());
            }
            let c = c.map(|f| {
                let mut f = f.clone();
                f.simplify();
                f
            });
            Ok::<_, SaitoError>(XiBasis { m, coefficients: certify(&format!("xi^({m})"), &c)? })
        })?;
        let hits: Vec<_> = self
            .perturbations
            .iter()
            .filter_map(|p| match p {
                Perturbation::XiCoefficient { m: pm, i, j, delta } if *pm == m => Some((*i, *j, delta)),
                _ => None,
            })
            .collect();
        if hits.is_empty() {
            return Ok(basis);
        }
        let mut coefficients = basis.coefficients.clone();
        for (i, j, delta) in hits {
            let v = coefficients.get(i, j).add(&MultiPoly::constant(delta, self.rank()));
            coefficients.set(i, j, v);
        }
        Ok(Arc::new(XiBasis { m, coefficients }))
    }

    /// `nabla_D^k xi^(2k-1)_j` for every `j`, in the P frame.
    pub fn nabla_power(&self, k: usize) -> Result<Arc<Vec<PolyDerivation>>, SaitoError> {
        if k == 0 {
            return Err(SaitoError::IndexOutOfRange("nabla_D^0 xi^(-1)".into()));
        }
        self.nabla_power.get_or_try(k, || {
            let mut out = Vec::with_capacity(self.rank());
            for theta in self.xi_basis(2 * k as u32 - 1)?.derivations() {
                let mut t = theta.to_frame(Frame::P, self);
                for _ in 0..k {
                    t = self.nabla_d(&t)?;
                }
                out.push(t);
            }
            Ok(out)
        })
    }

    /// `H_k = (-1)^k (B^(1))^-1 G (B^(2))^-1 G ... (B^(k))^-1 G`.
    pub fn hk_product(&self, k: usize) -> Result<Matrix<FactoredFraction>, SaitoError> {
        let l = self.rank();
        let g = self.metric.to_fractions();
        let mut h = Matrix::identity_like(l, &self.zero_fraction());
        for i in 1..=k {
            let b_inv = self.bk_matrix(i)?.inverse(&self.pool)?;
            h = h.mul(&b_inv).mul(&g);
        }
        if k % 2 == 1 {
            h = h.neg();
        }
        Ok(h.map(|f| {
            let mut f = f.clone();
            f.simplify();
            f
        }))
    }

    /// `D^k[X]` as the X-frame derivation `sum_i D^k[X_i] d/dX_i`.
    pub fn dkx_derivation(&self, k: usize) -> Result<PolyDerivation, SaitoError> {
        Ok(PolyDerivation::new(Frame::X, self.dkx(k)?.to_vec()))
    }

    /// `D` itself as an X-frame derivation.
    pub fn primitive_derivation(&self) -> PolyDerivation {
        PolyDerivation::new(Frame::X, self.jac_p_inv.row(self.rank() - 1).to_vec())
    }
}

/// Lie bracket of two derivations.
pub fn derivation_bracket(ctx: &SaitoContext, a: &PolyDerivation, b: &PolyDerivation) -> PolyDerivation {
    a.bracket(b, ctx)
}

pub fn frame_convert(ctx: &SaitoContext, theta: &PolyDerivation, target: Frame) -> PolyDerivation {
    theta.to_frame(target, ctx)
}

fn certify(object: &str, m: &Matrix<FactoredFraction>) -> Result<Matrix<MultiPoly>, SaitoError> {
    m.to_polys().map_err(|(i, j)| SaitoError::NonPolynomialEntry {
        object: object.to_string(),
        i,
        j,
        entry: m.get(i, j).render(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_datum, builtin_invariants, validate_invariants, GroupType};
    use num_rational::BigRational;

    fn a1() -> SaitoContext {
        let d = build_datum(&GroupType::A, 1).unwrap();
        let inv = builtin_invariants(&d).unwrap();
        build_context(&d, &inv).unwrap()
    }

    #[test]
    fn a1_iterated_derivatives() {
        let ctx = a1();
        let r: Vec<String> = (1..=3).map(|k| ctx.dkx(k).unwrap()[0].render()).collect();
        assert_eq!(r, ["(1/2)/x1", "(-1/4)/x1^3", "(3/8)/x1^5"]);
    }

    #[test]
    fn a1_bk_values() {
        let ctx = a1();
        let b: Vec<String> = (1..=3).map(|k| ctx.bk_matrix(k).unwrap().get(0, 0).render()).collect();
        assert_eq!(b, ["2", "6", "10"]);
    }

    #[test]
    fn a1_xi_basis() {
        let ctx = a1();
        let xi: Vec<String> =
            (0..=3).map(|m| ctx.xi_basis(m).unwrap().coefficients().get(0, 0).render()).collect();
        assert_eq!(xi, ["1", "2*x1", "-2*x1^2", "-4*x1^3"]);
    }

    #[test]
    fn a1_rescaled_invariant() {
        let d = build_datum(&GroupType::A, 1).unwrap();
        let quarter = Scalar::from_rational(d.field(), BigRational::new(1.into(), 4.into()));
        let inv = validate_invariants(&d, vec![d.var(0).pow(2).scale(&quarter)]).unwrap();
        let ctx = build_context(&d, &inv).unwrap();
        let b: Vec<String> = (1..=3).map(|k| ctx.bk_matrix(k).unwrap().get(0, 0).render()).collect();
        assert_eq!(b, ["1/2", "3/2", "5/2"]);
    }

    #[test]
    fn a1_christoffel_and_h1() {
        let ctx = a1();
        assert_eq!(ctx.christoffel_star(1).unwrap().get(0, 0).render(), "2");
        assert_eq!(ctx.hk_product(1).unwrap().get(0, 0).render(), "-2*x1^2");
    }

    #[test]
    fn frame_round_trip() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let ctx = build_context(&d, &builtin_invariants(&d).unwrap()).unwrap();
        let theta = ctx.xi_basis(1).unwrap().derivation(1);
        let back = theta.to_frame(Frame::P, &ctx).to_frame(Frame::X, &ctx);
        assert!(back.same_as(&theta, &ctx));
        // D[P_j] = delta_{jl}
        let dp = ctx.primitive_derivation().to_frame(Frame::P, &ctx);
        assert_eq!(dp.coeffs()[0].render(), "0");
        assert_eq!(dp.coeffs()[1].render(), "1");
    }

    #[test]
    fn perturbed_bk_differs_at_entry() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let ctx = build_context(&d, &builtin_invariants(&d).unwrap()).unwrap();
        let bad = ctx
            .with_perturbation(Perturbation::BkEntry { k: 2, i: 0, j: 1, delta: Scalar::one(d.field()) })
            .unwrap();
        let a = ctx.bk_matrix(2).unwrap();
        let b = bad.bk_matrix(2).unwrap();
        assert_eq!(a.to_fractions().first_difference(&b.to_fractions()), Some((0, 1)));
        assert_eq!(ctx.bk_matrix(1).unwrap(), bad.bk_matrix(1).unwrap());
    }
}
