use crate::coxeter::CoxeterDatum;
use crate::exactalg::{ContactOrder, MultiPoly, Scalar};
use crate::saito::{Frame, PolyDerivation};

use super::VerifyError;

#[derive(Clone, Debug)]
pub struct ContactReport {
    pub m: u32,
    /// Order of `theta(alpha_H)` along `alpha_H`, one per hyperplane.
    pub orders: Vec<ContactOrder>,
}

impl ContactReport {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(|o| o.at_least(self.m))
    }

    /// Index of the first hyperplane where the order is too low.
    pub fn first_failure(&self) -> Option<usize> {
        self.orders.iter().position(|o| !o.at_least(self.m))
    }
}

/// `theta(alpha_H) = sum_i c_i a_i` for `alpha_H = sum_i a_i x_i`.
fn apply_to_form(coeffs: &[MultiPoly], form: &[Scalar]) -> MultiPoly {
    let mut acc = MultiPoly::zero(coeffs[0].field(), coeffs[0].nvars());
    for (c, a) in coeffs.iter().zip(form) {
        if !a.is_zero() {
            acc = &acc + &c.scale(a);
        }
    }
    acc
}

/// Checks `theta(alpha_H) ∈ S alpha_H^m` for every hyperplane `H`.
pub fn contact_order_check(
    theta: &PolyDerivation,
    m: u32,
    datum: &CoxeterDatum,
) -> Result<ContactReport, VerifyError> {
    if theta.frame() != Frame::X {
        return Err(VerifyError::NonPolynomialCoefficients);
    }
    let coeffs = theta.poly_coeffs().ok_or(VerifyError::NonPolynomialCoefficients)?;
    let mut orders = Vec::with_capacity(datum.hyperplane_forms().len());
    for form in datum.hyperplane_forms() {
        let image = apply_to_form(&coeffs, form);
        orders.push(image.lowest_power_in_form(form)?);
    }
    Ok(ContactReport { m, orders })
}
