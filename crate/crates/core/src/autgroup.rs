//! Disc automorphisms acting on the tetrablock through the diamond product.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMat2;
use crate::metrics::pseudohyperbolic;
use crate::tetrablock::{in_open, schwarz_quotient, CPoint3};

/// `z -> omega (z - alpha) / (conj(alpha) z - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscAut {
    pub omega: C,
    pub alpha: C,
}

impl DiscAut {
    pub fn new(omega: C, alpha: C) -> Result<Self> {
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("|omega| = {} is not 1", omega.norm())));
        }
        if !(alpha.norm() < 1.0) {
            return Err(Error::InvalidInput(format!("|alpha| = {} is not below 1", alpha.norm())));
        }
        Ok(DiscAut { omega, alpha })
    }

    pub fn identity() -> Self {
        DiscAut { omega: C::new(-1.0, 0.0), alpha: C::new(0.0, 0.0) }
    }

    pub fn eval(&self, z: C) -> C {
        self.omega * (z - self.alpha) / (self.alpha.conj() * z - 1.0)
    }

    /// The Mobius matrix, which equals `rep_matrix(tau(self))`.
    pub fn to_matrix(&self) -> CMat2 {
        CMat2::new(self.omega, -self.omega * self.alpha, self.alpha.conj(), C::new(-1.0, 0.0))
    }

    /// Reads back the normal form from any nonzero multiple of a Mobius matrix.
    pub fn from_matrix(m: &CMat2) -> Result<Self> {
        if m.a22.norm() <= 1e-300 {
            return Err(Error::NumericalDegenerate("Mobius matrix with vanishing (2,2) entry"));
        }
        let m = m.scale(-m.a22.inv());
        let omega = m.a11 / m.a11.norm();
        DiscAut::new(omega, m.a21.conj())
    }

    /// `self o other`.
    pub fn compose(&self, other: &DiscAut) -> DiscAut {
        DiscAut::from_matrix(&(self.to_matrix() * other.to_matrix()))
            .expect("composition of disc automorphisms")
    }

    pub fn inverse(&self) -> DiscAut {
        DiscAut { omega: self.omega.conj(), alpha: self.omega * self.alpha }
    }

    /// The automorphism with `flip(tau(v)) = tau(v*)`.
    pub fn star(&self) -> DiscAut {
        upsilon_star(self)
    }
}

/// `M_x = [[x3, -x1], [x2, -1]]`.
pub fn rep_matrix(x: &CPoint3) -> CMat2 {
    CMat2::new(x.x3, -x.x1, x.x2, C::new(-1.0, 0.0))
}

pub fn diamond(x: &CPoint3, y: &CPoint3) -> Result<CPoint3> {
    let den = 1.0 - x.x2 * y.x1;
    if den.norm() <= 1e-300 {
        return Err(Error::Pole);
    }
    Ok(CPoint3::new(
        (x.x1 - x.x3 * y.x1) / den,
        (y.x2 - x.x2 * y.x3) / den,
        (x.x1 * y.x2 - x.x3 * y.x3) / den,
    ))
}

pub fn tau(v: &DiscAut) -> CPoint3 {
    CPoint3::new(v.omega * v.alpha, v.alpha.conj(), v.omega)
}

/// `v . x = tau(v) <> x`.
pub fn act_left(v: &DiscAut, x: &CPoint3) -> Result<CPoint3> {
    let den = 1.0 - v.alpha.conj() * x.x1;
    if den.norm() <= 1e-300 {
        return Err(Error::Pole);
    }
    Ok(CPoint3::new(
        v.omega * (v.alpha - x.x1) / den,
        (x.x2 - v.alpha.conj() * x.x3) / den,
        v.omega * (v.alpha * x.x2 - x.x3) / den,
    ))
}

/// `x . v = x <> tau(v)`.
pub fn act_right(x: &CPoint3, v: &DiscAut) -> Result<CPoint3> {
    diamond(x, &tau(v))
}

pub fn flip(x: &CPoint3) -> CPoint3 {
    x.swap()
}

/// `z -> omega (z - conj(omega alpha)) / (omega alpha z - 1)`.
pub fn upsilon_star(v: &DiscAut) -> DiscAut {
    DiscAut { omega: v.omega, alpha: (v.omega * v.alpha).conj() }
}

/// The pair `(v, c)` with `v . x . c = (0, 0, 0)` for a triangular `x` in E.
pub fn normalize_triangular(x: &CPoint3) -> Result<(DiscAut, DiscAut)> {
    if !x.is_triangular() {
        return Err(Error::NotTriangular);
    }
    if !in_open(x) {
        return Err(Error::Outside("open tetrablock"));
    }
    // v(z) = (z - x1) / (conj(x1) z - 1), c(z) = (z + conj(x2)) / (x2 z + 1)
    let v = DiscAut::new(C::new(1.0, 0.0), x.x1)?;
    let c = DiscAut::new(C::new(-1.0, 0.0), -x.x2.conj())?;
    Ok((v, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzPickReport {
    /// The closed-form two-term maximum.
    pub lhs: f64,
    /// The same quantity via normalisation of `x` to the origin.
    pub oracle: f64,
    /// `d(lambda1, lambda2)`.
    pub rhs: f64,
    /// An analytic map into the closure with the two prescribed values exists.
    pub feasible: bool,
    /// `lhs = rhs` within tolerance: existence into the closure only.
    pub boundary: bool,
}

fn pick_term(xi: C, y1: C, y2: C, y3: C, mix: f64) -> f64 {
    // shared shape of both terms; `mix` carries the signed norm combination
    let num = (1.0 - xi.norm_sqr()) * (y3 - y1 * y2).norm()
        + (y1 - y2.conj() * y3 - xi * mix + xi * xi * (y1.conj() - y2 * y3.conj())).norm();
    let den = (1.0 - xi.conj() * y1).norm_sqr() - (y2 - xi.conj() * y3).norm_sqr();
    num / den
}

/// The closed-form two-point criterion when the first value is triangular.
pub fn schwarz_pick_formula(x: &CPoint3, y: &CPoint3) -> f64 {
    let (n1, n2, n3) = (y.x1.norm_sqr(), y.x2.norm_sqr(), y.x3.norm_sqr());
    let t1 = pick_term(x.x1, y.x1, y.x2, y.x3, 1.0 + n1 - n2 - n3);
    let t2 = pick_term(x.x2, y.x2, y.x1, y.x3, 1.0 - n1 + n2 - n3);
    t1.max(t2)
}

pub fn schwarz_pick_triangular(
    lambda1: C,
    lambda2: C,
    x: &CPoint3,
    y: &CPoint3,
    tol: f64,
) -> Result<SchwarzPickReport> {
    let (v, c) = normalize_triangular(x)?;
    let moved = act_right(&act_left(&v, y)?, &c)?;
    let oracle = schwarz_quotient(&moved)
        .finite()
        .ok_or(Error::Outside("open tetrablock"))?;
    let lhs = schwarz_pick_formula(x, y);
    let rhs = pseudohyperbolic(lambda1, lambda2)?;
    Ok(SchwarzPickReport {
        lhs,
        oracle,
        rhs,
        feasible: lhs <= rhs + tol,
        boundary: (lhs - rhs).abs() <= tol,
    })
}
