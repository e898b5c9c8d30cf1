use std::fmt;

use crate::exactalg::{FactoredFraction, Homogeneity, MultiPoly};

use super::{SaitoContext, SaitoError};

/// Coordinate system in which a derivation's coefficients are expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `theta = sum c_i d/dX_i`, `c_i = theta(X_i)`.
    X,
    /// `theta = sum c_i d/dP_i`, `c_i = theta(P_i)`.
    P,
}

/// Degree of a derivation in the grading where `theta(S_1) ⊆ S_q` means degree `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationDegree {
    Zero,
    Degree(i64),
    Inhomogeneous,
}

#[derive(Clone)]
pub struct PolyDerivation {
    frame: Frame,
    coeffs: Vec<FactoredFraction>,
}

impl PolyDerivation {
    pub fn new(frame: Frame, coeffs: Vec<FactoredFraction>) -> Self {
        PolyDerivation { frame, coeffs }
    }

    pub fn from_polys(frame: Frame, coeffs: &[MultiPoly]) -> Self {
        PolyDerivation {
            frame,
            coeffs: coeffs.iter().map(|p| FactoredFraction::from_poly(p.clone())).collect(),
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn coeffs(&self) -> &[FactoredFraction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FactoredFraction::is_zero)
    }

    /// Polynomial coefficients, if every denominator cancels.
    pub fn poly_coeffs(&self) -> Option<Vec<MultiPoly>> {
        self.coeffs.iter().map(FactoredFraction::as_poly).collect()
    }

    /// Degree of an X-frame derivation: every nonzero coefficient must be
    /// homogeneous of the same degree `q`.
    pub fn degree(&self) -> DerivationDegree {
        assert_eq!(self.frame, Frame::X, "degree is read in the X frame");
        let mut deg = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let d = match c.as_poly() {
                Some(p) => match p.homogeneity() {
                    Homogeneity::Degree(d) => Some(i64::from(d)),
                    _ => None,
                },
                None => c.homogeneous_degree(),
            };
            match (d, deg) {
                (None, _) => return DerivationDegree::Inhomogeneous,
                (Some(d), None) => deg = Some(d),
                (Some(d), Some(e)) if d != e => return DerivationDegree::Inhomogeneous,
                _ => {}
            }
        }
        deg.map_or(DerivationDegree::Zero, DerivationDegree::Degree)
    }

    pub fn to_frame(&self, target: Frame, ctx: &SaitoContext) -> PolyDerivation {
        if self.frame == target {
            return self.clone();
        }
        let l = self.coeffs.len();
        let coeffs = match target {
            // theta(P_j) = sum_i dP_j/dX_i theta(X_i)
            Frame::P => {
                let jac = ctx.jac_p();
                (0..l)
                    .map(|j| {
                        let mut acc = ctx.zero_fraction();
                        for i in 0..l {
                            acc = acc.add(&self.coeffs[i].mul_poly(jac.get(i, j)));
                        }
                        acc
                    })
                    .collect()
            }
            // theta(X_i) = sum_k dX_i/dP_k theta(P_k), dX_i/dP_k = (J^-1)_{k i}
            Frame::X => {
                let inv = ctx.jac_p_inv();
                (0..l)
                    .map(|i| {
                        let mut acc = ctx.zero_fraction();
                        for k in 0..l {
                            acc = acc.add(&self.coeffs[k].mul(inv.get(k, i)));
                        }
                        acc
                    })
                    .collect()
            }
        };
        PolyDerivation { frame: target, coeffs }
    }

    /// `theta(f)`.
    pub fn apply(&self, f: &FactoredFraction, ctx: &SaitoContext) -> FactoredFraction {
        let x = self.to_frame(Frame::X, ctx);
        let mut acc = ctx.zero_fraction();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = acc.add(&c.mul(&d));
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &MultiPoly, ctx: &SaitoContext) -> FactoredFraction {
        self.apply(&FactoredFraction::from_poly(f.clone()), ctx)
    }

    /// Lie bracket `[theta, eta]`, computed in the X frame.
    pub fn bracket(&self, other: &PolyDerivation, ctx: &SaitoContext) -> PolyDerivation {
        let a = self.to_frame(Frame::X, ctx);
        let b = other.to_frame(Frame::X, ctx);
        let coeffs =
            a.coeffs.iter().zip(&b.coeffs).map(|(ai, bi)| a.apply(bi, ctx).sub(&b.apply(ai, ctx))).collect();
        PolyDerivation { frame: Frame::X, coeffs }
    }

    pub fn scale_by(&self, g: &FactoredFraction) -> PolyDerivation {
        PolyDerivation { frame: self.frame, coeffs: self.coeffs.iter().map(|c| c.mul(g)).collect() }
    }

    pub fn sub(&self, other: &PolyDerivation) -> Result<PolyDerivation, SaitoError> {
        if self.frame != other.frame || self.coeffs.len() != other.coeffs.len() {
            return Err(SaitoError::FrameMismatch);
        }
        Ok(PolyDerivation {
            frame: self.frame,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    /// Exact equality of the underlying derivations (frames may differ).
    pub fn same_as(&self, other: &PolyDerivation, ctx: &SaitoContext) -> bool {
        let b = other.to_frame(self.frame, ctx);
        self.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x.equals(y))
    }

    pub fn render(&self) -> String {
        let sym = match self.frame {
            Frame::X => "d/dx",
            Frame::P => "d/dP",
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let r = c.render();
                let r = if r.contains(' ') { format!("({r})") } else { r };
                format!("{r}*{sym}{}", i + 1)
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for PolyDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
