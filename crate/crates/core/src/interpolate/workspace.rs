use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, op_norm, sqrt_psd, CMat2, CVec2};
use crate::tetrablock::{schwarz_quotient, CPoint3, ExtReal};

/// Relative band around `|lambda0|` treated as the extremal case.
pub const EXTREMAL_REL_TOL: f64 = 1e-10;

pub(crate) fn check_lambda(lambda0: C) -> Result<()> {
    let r = lambda0.norm();
    if r == 0.0 || !(r < 1.0) {
        return Err(Error::BadLambda);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// `|lambda0| - max(quotients)`; `-inf` when a quotient is infinite.
    pub margin: f64,
}

/// Is there an analytic `phi: D -> E` with `phi(0) = 0` and `phi(lambda0) = x`?
pub fn schwarz_feasible(lambda0: C, x: &CPoint3) -> Result<Feasibility> {
    check_lambda(lambda0)?;
    let r = lambda0.norm();
    let margin = match schwarz_quotient(x) {
        ExtReal::Finite(q) => r - q,
        ExtReal::Infinite => f64::NEG_INFINITY,
    };
    Ok(Feasibility { feasible: margin >= -EXTREMAL_REL_TOL * r, margin })
}

pub(crate) fn is_extremal(lambda0: C, x: &CPoint3) -> bool {
    let r = lambda0.norm();
    schwarz_quotient(x).finite().is_some_and(|q| (q - r).abs() <= EXTREMAL_REL_TOL * r)
}

/// `Z(sigma) = [[a/lambda0, sigma w], [w/sigma, b]]` with `w^2 = (ab - p)/lambda0`.
pub fn z_matrix(lambda0: C, x: &CPoint3, sigma: f64) -> CMat2 {
    let w = (x.defect() / lambda0).sqrt();
    CMat2::new(x.x1 / lambda0, w * sigma, w / sigma, x.x2)
}

/// The Hermitian matrix whose quadratic form is `|v(alpha)|^2 - rho^2 |u(alpha)|^2`.
pub fn big_m(z: &CMat2, rho: f64) -> Result<CMat2> {
    let n = op_norm(z);
    if !(n < 1.0) {
        return Err(Error::NormTooLarge(n));
    }
    let i = CMat2::identity();
    let zs = z.adjoint();
    let p = (i - zs * *z).inverse()?;
    let r = (i - *z * zs).inverse()?;
    let rho2 = C::new(rho * rho, 0.0);
    let s = C::new(1.0 - rho * rho, 0.0);
    let m11 = ((i - (zs * *z).scale(rho2)) * p).a11;
    let m12 = (zs * r).scale(s).a12;
    let m21 = (r * *z).scale(s).a21;
    let m22 = ((*z * zs - i.scale(rho2)) * r).a22;
    Ok(CMat2::new(m11, m12, m21, m22))
}

pub fn uv_vectors(z: &CMat2, alpha: &CVec2) -> Result<(CVec2, CVec2)> {
    let n = op_norm(z);
    if !(n < 1.0) {
        return Err(Error::NormTooLarge(n));
    }
    if alpha.norm_sqr() == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    let i = CMat2::identity();
    let zs = z.adjoint();
    let left = sqrt_psd(&(i - *z * zs))?.inverse()?;
    let right = sqrt_psd(&(i - zs * *z))?.inverse()?;
    let u = left * (z.col(0).scale(alpha.c1) + CVec2::e2().scale(alpha.c2));
    let v = right * (CVec2::e1().scale(alpha.c1) + zs.col(1).scale(alpha.c2));
    Ok((u, v.scale(C::new(-1.0, 0.0))))
}

/// Unit eigenvector for the smallest eigenvalue, first nonzero entry made
/// real positive.
pub fn choose_alpha(m: &CMat2, tol: f64) -> Result<CVec2> {
    let (vals, vecs) = hermitian_eigen(m);
    if vals[0] > tol {
        return Err(Error::PositiveDefinite(vals[0]));
    }
    let a = vecs[0];
    let lead = if a.c1.norm() > 1e-14 { a.c1 } else { a.c2 };
    Ok(a.scale(lead.conj() / lead.norm()))
}

/// The data `Z, M, alpha, u, v` of the constructive solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzWorkspace {
    pub lambda0: C,
    pub x: CPoint3,
    pub sigma: f64,
    pub w: C,
    pub z: CMat2,
    pub m: CMat2,
    pub alpha: CVec2,
    pub u: CVec2,
    pub v: CVec2,
}

impl SchwarzWorkspace {
    /// Builds the workspace for `x` as given (no coordinate flip).
    pub fn new(lambda0: C, x: &CPoint3, sigma: f64) -> Result<Self> {
        check_lambda(lambda0)?;
        let z = z_matrix(lambda0, x, sigma);
        let m = big_m(&z, lambda0.norm())?;
        let alpha = choose_alpha(&m, 1e-12)?;
        let (u, v) = uv_vectors(&z, &alpha)?;
        Ok(SchwarzWorkspace {
            lambda0,
            x: *x,
            sigma,
            w: (x.defect() / lambda0).sqrt(),
            z,
            m,
            alpha,
            u,
            v,
        })
    }

    /// The constant contraction `Q` with `lambda0^* Q^* u = v`, namely `u v^* / (lambda0 |u|^2)`.
    pub fn q_matrix(&self) -> Result<CMat2> {
        let nu = self.u.norm_sqr();
        if nu.sqrt() < 1e-13 {
            return Err(Error::NumericalDegenerate("u(alpha) vanishes"));
        }
        Ok(self.u.outer(&self.v).scale((self.lambda0 * nu).inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn sample_z() -> CMat2 {
        CMat2::new(c(0.3, -0.1), c(0.2, 0.25), c(-0.15, 0.1), c(0.1, 0.35))
    }

    #[test]
    fn m_at_zero() {
        let m = big_m(&CMat2::zero(), 0.6).unwrap();
        assert!(m.dist(&CMat2::real(1.0, 0.0, 0.0, -0.36)) < 1e-15);
        let a = choose_alpha(&m, 1e-12).unwrap();
        assert!((a.c2 - 1.0).norm() < 1e-15 && a.c1.norm() < 1e-15);
    }

    #[test]
    fn uv_at_zero() {
        let (u, v) = uv_vectors(&CMat2::zero(), &CVec2::e2()).unwrap();
        assert!((u - CVec2::e2()).norm() < 1e-15 && v.norm() < 1e-15);
        let (u, v) = uv_vectors(&CMat2::zero(), &CVec2::e1()).unwrap();
        assert!(u.norm() < 1e-15 && (v + CVec2::e1()).norm() < 1e-15);
        assert!(matches!(uv_vectors(&CMat2::zero(), &CVec2::new(c(0.0, 0.0), c(0.0, 0.0))), Err(Error::ZeroAlpha)));
    }

    #[test]
    fn quadratic_form_identity() {
        let z = sample_z();
        let rho = 0.7;
        let m = big_m(&z, rho).unwrap();
        for alpha in [CVec2::new(c(0.3, 0.4), c(-0.2, 0.9)), CVec2::new(c(1.0, 0.0), c(0.0, -0.5))] {
            let (u, v) = uv_vectors(&z, &alpha).unwrap();
            let lhs = v.norm_sqr() - rho * rho * u.norm_sqr();
            let rhs = (m * alpha).inner(&alpha);
            assert!((lhs - rhs.re).abs() < 1e-12 && rhs.im.abs() < 1e-12);
        }
    }

    #[test]
    fn transposed_layout_breaks_the_identity() {
        let z = sample_z();
        let rho = 0.7;
        let m = big_m(&z, rho).unwrap();
        let t = m.transpose();
        let alpha = CVec2::new(c(0.3, 0.4), c(-0.2, 0.9));
        let (u, v) = uv_vectors(&z, &alpha).unwrap();
        let lhs = v.norm_sqr() - rho * rho * u.norm_sqr();
        assert!((lhs - (t * alpha).inner(&alpha).re).abs() > 1e-6);
    }

    #[test]
    fn feasibility_examples() {
        let x = CPoint3::real(0.5, 0.25, 0.5);
        let f = schwarz_feasible(c(-0.8, 0.0), &x).unwrap();
        assert!(f.feasible && f.margin.abs() < 1e-12);
        assert!(!schwarz_feasible(c(0.7, 0.0), &x).unwrap().feasible);
        let f = schwarz_feasible(c(0.0, 0.3), &CPoint3::zero()).unwrap();
        assert!(f.feasible && (f.margin - 0.3).abs() < 1e-15);
        assert!(matches!(schwarz_feasible(c(0.0, 0.0), &x), Err(Error::BadLambda)));
        assert!(matches!(schwarz_feasible(c(1.0, 0.0), &x), Err(Error::BadLambda)));
    }
}
