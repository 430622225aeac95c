use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::CPoint3;
use crate::error::{Error, Result};

/// The analytic disc `lambda -> (b1 + conj(b2) lambda, b2 + conj(b1) lambda, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicDisc {
    pub beta1: C,
    pub beta2: C,
}

impl GeodesicDisc {
    pub fn new(beta1: C, beta2: C) -> Result<Self> {
        if beta1.norm() + beta2.norm() >= 1.0 {
            return Err(Error::BadBeta);
        }
        Ok(GeodesicDisc { beta1, beta2 })
    }

    /// The unique disc through `x`.
    pub fn through(x: &CPoint3) -> Result<Self> {
        let (b1, b2) = beta_params(x)?;
        GeodesicDisc::new(b1, b2)
    }

    pub fn eval(&self, lambda: C) -> CPoint3 {
        CPoint3::new(
            self.beta1 + self.beta2.conj() * lambda,
            self.beta2 + self.beta1.conj() * lambda,
            lambda,
        )
    }
}

pub fn beta_params(x: &CPoint3) -> Result<(C, C)> {
    let s = 1.0 - x.x3.norm_sqr();
    if s <= 0.0 {
        return Err(Error::OnTorus);
    }
    let b1 = (x.x1 - x.x2.conj() * x.x3) / s;
    let b2 = (x.x2 - x.x1.conj() * x.x3) / s;
    Ok((b1, b2))
}

pub fn geodesic_eval(disc: &GeodesicDisc, lambda: C) -> Result<CPoint3> {
    if disc.beta1.norm() + disc.beta2.norm() >= 1.0 {
        return Err(Error::BadBeta);
    }
    if lambda.norm() >= 1.0 {
        return Err(Error::OutsideDisc);
    }
    Ok(disc.eval(lambda))
}
