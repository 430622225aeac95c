use std::f64::consts::TAU;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::{in_closure, psi, CPoint3};
use crate::autgroup::{act_left, DiscAut};
use crate::error::{Error, Result};

pub fn in_distinguished_boundary(x: &CPoint3, tol: f64) -> bool {
    (x.x1 - x.x2.conj() * x.x3).norm() <= tol
        && (x.x3.norm() - 1.0).abs() <= tol
        && x.x2.norm() <= 1.0 + tol
}

/// A function analytic near the closed tetrablock that attains modulus one
/// only at its peak point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeakFunction {
    /// `(conj(x1) y1 + conj(x2) y2 + conj(x3) y3 + 1) / 4`.
    Triangular { x0: CPoint3 },
    /// `g0(u . y)` with `g0(y) = (y3 - y1 y2 - 1) / 2`, which peaks at `(0, 0, -1)`,
    /// and `u` the automorphism sending the peak point to `(0, 0, -1)`.
    Translated { x0: CPoint3, aut: DiscAut },
}

impl PeakFunction {
    pub fn peak(&self) -> CPoint3 {
        match self {
            PeakFunction::Triangular { x0 } | PeakFunction::Translated { x0, .. } => *x0,
        }
    }

    pub fn eval(&self, y: &CPoint3) -> Result<C> {
        match self {
            PeakFunction::Triangular { x0 } => {
                Ok((x0.x1.conj() * y.x1 + x0.x2.conj() * y.x2 + x0.x3.conj() * y.x3 + 1.0) / 4.0)
            }
            PeakFunction::Translated { aut, .. } => {
                let t = act_left(aut, y)?;
                Ok((t.x3 - t.x1 * t.x2 - 1.0) / 2.0)
            }
        }
    }
}

pub fn peak_function(x0: &CPoint3) -> Result<PeakFunction> {
    if !in_distinguished_boundary(x0, 1e-9) {
        return Err(Error::NotPeak);
    }
    if x0.is_triangular() {
        return Ok(PeakFunction::Triangular { x0: *x0 });
    }
    // x0 = tau(v) for v(z) = x3 (z - conj(x2)) / (x2 z - 1)
    let omega = x0.x3 / x0.x3.norm();
    let v = DiscAut::new(omega, x0.x2.conj())?;
    Ok(PeakFunction::Translated { x0: *x0, aut: v.inverse() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeparationBranch {
    /// `y -> y_index` (1-based).
    Coordinate { index: usize },
    /// `(y1 - y3 z) (1 + y2 z + ... + (y2 z)^n) / (1 + eps)`.
    Truncated { z: C, eps: f64, n: usize },
}

/// A polynomial bounded by one on the closed tetrablock and exceeding one at
/// a given exterior point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparatingPolynomial {
    pub branch: SeparationBranch,
    pub point: CPoint3,
    pub value_at_point: f64,
}

impl SeparatingPolynomial {
    pub fn eval(&self, y: &CPoint3) -> C {
        match self.branch {
            SeparationBranch::Coordinate { index } => y.coords()[index - 1],
            SeparationBranch::Truncated { z, eps, n } => {
                let q = y.x2 * z;
                let mut acc = C::new(1.0, 0.0);
                for _ in 0..n {
                    acc = acc * q + 1.0;
                }
                (y.x1 - y.x3 * z) * acc / (1.0 + eps)
            }
        }
    }
}

const MAX_DEGREE: usize = 5_000_000;

/// Degree needed so the geometric tail `2 |z|^(n+1) / (1 - |z|)` drops below `eps`.
fn degree_for(r: f64, eps: f64) -> Option<usize> {
    if r == 0.0 {
        return Some(0);
    }
    let bound = eps * (1.0 - r) / 2.0;
    let n = ((bound.ln() / r.ln()) - 1.0).ceil().max(0.0);
    let mut n = n as usize;
    while 2.0 * r.powi(n as i32 + 1) / (1.0 - r) >= eps {
        n += 1;
    }
    (n <= MAX_DEGREE).then_some(n)
}

fn candidate(x: &CPoint3, z: C) -> Option<(usize, f64)> {
    let v = psi(z, x).ok()?.norm();
    if !(v > 1.0) || !v.is_finite() {
        return None;
    }
    let eps = (v - 1.0) / 4.0;
    degree_for(z.norm(), eps).map(|n| (n, v))
}

pub fn separating_polynomial(x: &CPoint3) -> Result<SeparatingPolynomial> {
    if in_closure(x) {
        return Err(Error::InsideClosure);
    }
    let coords = x.coords();
    let (j, big) = coords
        .iter()
        .enumerate()
        .map(|(j, v)| (j, v.norm()))
        .fold((0, 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
    if big > 1.0 || x.is_triangular() {
        // a triangular exterior point has |x1| > 1 or |x2| > 1
        let j = if big > 1.0 { j } else if x.x1.norm() >= x.x2.norm() { 0 } else { 1 };
        return Ok(SeparatingPolynomial {
            branch: SeparationBranch::Coordinate { index: j + 1 },
            point: *x,
            value_at_point: coords[j].norm(),
        });
    }
    let mut best: Option<(usize, f64, C)> = None;
    let consider = |z: C, best: &mut Option<(usize, f64, C)>| {
        if let Some((n, v)) = candidate(x, z) {
            let better = match best {
                None => true,
                Some((bn, bv, _)) => n < *bn || (n == *bn && v > *bv),
            };
            if better {
                *best = Some((n, v, z));
            }
        }
    };
    let radii: Vec<f64> = (1..100)
        .map(|k| k as f64 / 100.0)
        .chain([0.995, 0.999, 0.9999, 0.99999, 0.999999])
        .collect();
    for &r in &radii {
        for k in 0..256 {
            consider(C::from_polar(r, TAU * k as f64 / 256.0), &mut best);
        }
    }
    if best.is_none() {
        // the exterior region of |psi| > 1 can be a thin crescent: sweep its direction
        let peak = (0..4096)
            .map(|k| C::from_polar(0.999999, TAU * k as f64 / 4096.0))
            .max_by(|a, b| {
                let fa = psi(*a, x).map(|v| v.norm()).unwrap_or(f64::INFINITY);
                let fb = psi(*b, x).map(|v| v.norm()).unwrap_or(f64::INFINITY);
                fa.total_cmp(&fb)
            })
            .unwrap();
        for k in 0..2000 {
            let r = 1.0 - 10f64.powf(-2.0 - 6.0 * k as f64 / 2000.0);
            consider(C::from_polar(r, peak.arg()), &mut best);
        }
    }
    let (n, v, z) = best.ok_or(Error::NumericalDegenerate("no witness with |psi| > 1 found"))?;
    let eps = (v - 1.0) / 4.0;
    let mut out = SeparatingPolynomial {
        branch: SeparationBranch::Truncated { z, eps, n },
        point: *x,
        value_at_point: 0.0,
    };
    out.value_at_point = out.eval(x).norm();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetrablock::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn boundary_examples() {
        assert!(in_distinguished_boundary(&CPoint3::real(0.5, 0.5, 1.0), 1e-12));
        assert!(in_distinguished_boundary(&CPoint3::real(0.0, 0.0, -1.0), 1e-12));
        assert!(!in_distinguished_boundary(&CPoint3::real(0.5, 0.25, 0.5), 1e-12));
    }

    #[test]
    fn peak_examples() {
        let g = peak_function(&CPoint3::real(0.0, 0.0, -1.0)).unwrap();
        assert!((g.eval(&CPoint3::real(0.0, 0.0, -1.0)).unwrap() + 1.0).norm() < 1e-15);
        let one = CPoint3::real(1.0, 1.0, 1.0);
        let g = peak_function(&one).unwrap();
        assert!((g.eval(&one).unwrap() - 1.0).norm() < 1e-15);
        let x0 = CPoint3::new(c(0.3, -0.4) * c(0.6, 0.8), c(0.3, 0.4), c(0.6, 0.8));
        let g = peak_function(&x0).unwrap();
        assert!((g.eval(&x0).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!(g.eval(&CPoint3::zero()).unwrap().norm() < 1.0);
        assert!(matches!(peak_function(&CPoint3::real(0.5, 0.25, 0.5)), Err(Error::NotPeak)));
    }

    #[test]
    fn separation_examples() {
        let f = separating_polynomial(&CPoint3::real(2.0, 0.0, 0.0)).unwrap();
        assert_eq!(f.branch, SeparationBranch::Coordinate { index: 1 });
        assert!((f.value_at_point - 2.0).abs() < 1e-15);
        let f = separating_polynomial(&CPoint3::real(1.5, 0.5, 0.75)).unwrap();
        assert_eq!(f.branch, SeparationBranch::Coordinate { index: 1 });
        let x = CPoint3::real(0.9, 0.9, -0.9);
        assert!(!crate::tetrablock::membership(&x, true, DEFAULT_TOL).in_set);
        let f = separating_polynomial(&x).unwrap();
        assert!(matches!(f.branch, SeparationBranch::Truncated { .. }));
        assert!(f.value_at_point > 1.0);
        assert!(matches!(separating_polynomial(&CPoint3::zero()), Err(Error::InsideClosure)));
    }
}
