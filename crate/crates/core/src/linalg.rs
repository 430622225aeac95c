//! Closed-form 2x2 complex linear algebra.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tetrablock::CPoint3;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[C; 2]; 2]", into = "[[C; 2]; 2]")]
pub struct CMat2 {
    pub a11: C,
    pub a12: C,
    pub a21: C,
    pub a22: C,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[C; 2]", into = "[C; 2]")]
pub struct CVec2 {
    pub c1: C,
    pub c2: C,
}

impl From<[[C; 2]; 2]> for CMat2 {
    fn from(r: [[C; 2]; 2]) -> Self {
        CMat2::new(r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

impl From<CMat2> for [[C; 2]; 2] {
    fn from(m: CMat2) -> Self {
        [[m.a11, m.a12], [m.a21, m.a22]]
    }
}

impl From<[C; 2]> for CVec2 {
    fn from(r: [C; 2]) -> Self {
        CVec2::new(r[0], r[1])
    }
}

impl From<CVec2> for [C; 2] {
    fn from(v: CVec2) -> Self {
        [v.c1, v.c2]
    }
}

impl CMat2 {
    pub const fn new(a11: C, a12: C, a21: C, a22: C) -> Self {
        CMat2 { a11, a12, a21, a22 }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        CMat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub const fn zero() -> Self {
        CMat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        CMat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn diag(d1: C, d2: C) -> Self {
        CMat2::new(d1, ZERO, ZERO, d2)
    }

    pub fn from_columns(c1: CVec2, c2: CVec2) -> Self {
        CMat2::new(c1.c1, c2.c1, c1.c2, c2.c2)
    }

    pub fn col(&self, j: usize) -> CVec2 {
        match j {
            0 => CVec2::new(self.a11, self.a21),
            _ => CVec2::new(self.a12, self.a22),
        }
    }

    pub fn adjoint(&self) -> Self {
        CMat2::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn transpose(&self) -> Self {
        CMat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn det(&self) -> C {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> C {
        self.a11 + self.a22
    }

    pub fn scale(&self, s: C) -> Self {
        CMat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let size = self.max_abs().max(1e-300);
        if d.norm() <= 1e-15 * size * size {
            return Err(Error::Singular);
        }
        let inv = d.inv();
        Ok(CMat2::new(self.a22 * inv, -self.a12 * inv, -self.a21 * inv, self.a11 * inv))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn entries(&self) -> [C; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Max-entry distance.
    pub fn dist(&self, other: &CMat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(C::new(0.5, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: CVec2) -> CVec2 {
        CVec2::new(self.a11 * v.c1 + self.a12 * v.c2, self.a21 * v.c1 + self.a22 * v.c2)
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, o: CMat2) -> CMat2 {
        CMat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, o: CMat2) -> CMat2 {
        CMat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for CMat2 {
    type Output = CMat2;
    fn neg(self) -> CMat2 {
        self.scale(C::new(-1.0, 0.0))
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, o: CMat2) -> CMat2 {
        CMat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<CVec2> for CMat2 {
    type Output = CVec2;
    fn mul(self, v: CVec2) -> CVec2 {
        self.mul_vec(v)
    }
}

impl CVec2 {
    pub const fn new(c1: C, c2: C) -> Self {
        CVec2 { c1, c2 }
    }

    pub const fn e1() -> Self {
        CVec2::new(ONE, ZERO)
    }

    pub const fn e2() -> Self {
        CVec2::new(ZERO, ONE)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other>`, linear in `self`.
    pub fn inner(&self, other: &CVec2) -> C {
        self.c1 * other.c1.conj() + self.c2 * other.c2.conj()
    }

    pub fn scale(&self, s: C) -> CVec2 {
        CVec2::new(self.c1 * s, self.c2 * s)
    }

    /// The rank-one matrix `self * other^*`.
    pub fn outer(&self, other: &CVec2) -> CMat2 {
        CMat2::new(
            self.c1 * other.c1.conj(),
            self.c1 * other.c2.conj(),
            self.c2 * other.c1.conj(),
            self.c2 * other.c2.conj(),
        )
    }

    pub fn conj(&self) -> CVec2 {
        CVec2::new(self.c1.conj(), self.c2.conj())
    }

    /// A unit vector orthogonal to `self` (which must be a unit vector).
    pub fn orthogonal(&self) -> CVec2 {
        CVec2::new(-self.c2.conj(), self.c1.conj())
    }
}

impl Add for CVec2 {
    type Output = CVec2;
    fn add(self, o: CVec2) -> CVec2 {
        CVec2::new(self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl Sub for CVec2 {
    type Output = CVec2;
    fn sub(self, o: CVec2) -> CVec2 {
        CVec2::new(self.c1 - o.c1, self.c2 - o.c2)
    }
}

/// Both singular values `(s_max, s_min)` from the trace and determinant of `A*A`.
pub fn singular_values(a: &CMat2) -> (f64, f64) {
    let t = a.entries().iter().map(|z| z.norm_sqr()).sum::<f64>();
    let d = a.det().norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0).sqrt();
    let smax2 = 0.5 * (t + disc);
    let smax = smax2.sqrt();
    let smin = if smax > 0.0 { d.sqrt() / smax } else { 0.0 };
    (smax, smin)
}

pub fn op_norm(a: &CMat2) -> f64 {
    singular_values(a).0
}

/// Eigen-decomposition of the Hermitian part of `p`: eigenvalues ascending,
/// with orthonormal eigenvectors in the same order.
pub fn hermitian_eigen(p: &CMat2) -> ([f64; 2], [CVec2; 2]) {
    let h = p.hermitian_part();
    let (pr, rr, q) = (h.a11.re, h.a22.re, h.a12);
    let mean = 0.5 * (pr + rr);
    let half = 0.5 * (pr - rr);
    let rad = (half * half + q.norm_sqr()).sqrt();
    let lo = mean - rad;
    let hi = mean + rad;
    if rad <= 1e-300 || q.norm() <= 1e-17 * rad {
        // already diagonal
        return if pr <= rr {
            ([pr, rr], [CVec2::e1(), CVec2::e2()])
        } else {
            ([rr, pr], [CVec2::e2(), CVec2::e1()])
        };
    }
    let a = CVec2::new(q, C::new(lo - pr, 0.0));
    let b = CVec2::new(C::new(lo - rr, 0.0), q.conj());
    let v = if a.norm_sqr() >= b.norm_sqr() { a } else { b };
    let v = v.scale(C::new(1.0 / v.norm(), 0.0));
    ([lo, hi], [v, v.orthogonal()])
}

/// Eigenvalues of a general 2x2 matrix.
pub fn eigenvalues(a: &CMat2) -> [C; 2] {
    let half_tr = a.trace() * 0.5;
    let disc = (half_tr * half_tr - a.det()).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    // recover the smaller one from the determinant when it cancels
    if l1.norm() >= l2.norm() && l1.norm() > 0.0 {
        [l1, a.det() / l1]
    } else if l2.norm() > 0.0 {
        [a.det() / l2, l2]
    } else {
        [l1, l2]
    }
}

/// Hermitian square root of a positive semidefinite matrix.
pub fn sqrt_psd(p: &CMat2) -> Result<CMat2> {
    let h = p.hermitian_part();
    let (vals, vecs) = hermitian_eigen(&h);
    if vals[0] < -1e-10 {
        return Err(Error::NotPsd(vals[0]));
    }
    let det = h.a11.re * h.a22.re - h.a12.norm_sqr();
    let s = det.max(0.0).sqrt();
    let den = (h.a11.re + h.a22.re + 2.0 * s).max(0.0).sqrt();
    if den < 1e-14 {
        let mut out = CMat2::zero();
        for (l, v) in vals.iter().zip(vecs.iter()) {
            out = out + v.outer(v).scale(C::new(l.max(0.0).sqrt(), 0.0));
        }
        return Ok(out);
    }
    let num = h + CMat2::identity().scale(C::new(s, 0.0));
    Ok(num.scale(C::new(1.0 / den, 0.0)).hermitian_part())
}

/// Singular value decomposition `A = W diag(s1, s2) V*` with `s1 >= s2 >= 0`.
#[derive(Debug, Clone, Copy)]
pub struct Svd2 {
    pub w: CMat2,
    pub s: [f64; 2],
    pub v: CMat2,
}

pub fn svd2(a: &CMat2) -> Svd2 {
    let (smax, smin) = singular_values(a);
    let (_, vecs) = hermitian_eigen(&(a.adjoint() * *a));
    let (v1, v2) = (vecs[1], vecs[0]);
    let w1 = if smax > 0.0 {
        let t = a.mul_vec(v1);
        t.scale(C::new(1.0 / t.norm(), 0.0))
    } else {
        CVec2::e1()
    };
    let c = w1.orthogonal();
    let av2 = a.mul_vec(v2);
    let proj = av2.inner(&c);
    let phase = if proj.norm() > 0.0 { proj / proj.norm() } else { ONE };
    let w2 = c.scale(phase);
    Svd2 {
        w: CMat2::from_columns(w1, w2),
        s: [smax, smin],
        v: CMat2::from_columns(v1, v2),
    }
}

/// The matricial Mobius map `X -> M_Z(X)` with its two square-root factors cached.
#[derive(Debug, Clone, Copy)]
pub struct MobiusMap {
    z: CMat2,
    left: CMat2,
    right: CMat2,
}

impl MobiusMap {
    pub fn new(z: &CMat2) -> Result<Self> {
        let n = op_norm(z);
        if !(n < 1.0) {
            return Err(Error::NormTooLarge(n));
        }
        let i = CMat2::identity();
        let left = sqrt_psd(&(i - *z * z.adjoint()))?.inverse()?;
        let right = sqrt_psd(&(i - z.adjoint() * *z))?;
        Ok(MobiusMap { z: *z, left, right })
    }

    pub fn apply(&self, x: &CMat2) -> Result<CMat2> {
        let mid = (CMat2::identity() - self.z.adjoint() * *x).inverse()?;
        Ok(self.left * (*x - self.z) * mid * self.right)
    }
}

pub fn mobius_matricial(z: &CMat2, x: &CMat2) -> Result<CMat2> {
    MobiusMap::new(z)?.apply(x)
}

/// `A -> (a11, a22, det A)`.
pub fn pi_map(a: &CMat2) -> CPoint3 {
    CPoint3::new(a.a11, a.a22, a.det())
}
