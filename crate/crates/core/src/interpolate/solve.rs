use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::workspace::{check_lambda, is_extremal, z_matrix};
use super::{scalar_np2, schwarz_feasible, Interpolant, Lift, SchwarzWorkspace, Variant};
use crate::error::{Error, Result};
use crate::linalg::svd2;
use crate::tetrablock::{schwarz_quotient, CPoint3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Free parameter of the scalar reduction in the extremal case.
    pub scalar_param: C,
    /// Replace the extremal reduction by the strict problem at `lambda0 (1 + eps)^2`.
    pub epsilon_fallback: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { scalar_param: C::new(0.0, 0.0), epsilon_fallback: None }
    }
}

fn canonical(x: &CPoint3) -> (CPoint3, bool) {
    if x.x1.norm() < x.x2.norm() {
        (x.swap(), true)
    } else {
        (*x, false)
    }
}

fn base(variant: Variant, lambda0: C, x: &CPoint3, flipped: bool, lift: Lift) -> Interpolant {
    Interpolant {
        variant,
        lambda0,
        x: *x,
        z: None,
        u: None,
        v: None,
        sigma: None,
        scalar_g: None,
        flipped,
        epsilon: None,
        lift,
    }
}

pub fn solve_schwarz(lambda0: C, x: &CPoint3) -> Result<Interpolant> {
    solve_schwarz_with(lambda0, x, SolveOptions::default())
}

pub fn solve_schwarz_with(lambda0: C, x: &CPoint3, opts: SolveOptions) -> Result<Interpolant> {
    let feas = schwarz_feasible(lambda0, x)?;
    if !feas.feasible {
        return Err(Error::Infeasible(feas.margin));
    }
    let (xc, flipped) = canonical(x);
    if xc.is_triangular() {
        let lift = Lift::Diagonal { c1: xc.x1 / lambda0, c2: xc.x2 / lambda0 };
        return Ok(base(Variant::Diagonal, lambda0, x, flipped, lift));
    }
    if xc.x2.norm() <= 1e-15 {
        let k = z_matrix(lambda0, &xc, 1.0);
        let mut out = base(Variant::ScaledLine, lambda0, x, flipped, Lift::Shifted { k });
        out.z = Some(k);
        return Ok(out);
    }
    if is_extremal(lambda0, &xc) {
        return match opts.epsilon_fallback {
            Some(eps) => perturbed(lambda0, x, &xc, flipped, eps),
            None => reduced(lambda0, x, &xc, flipped, opts.scalar_param),
        };
    }
    let ws = SchwarzWorkspace::new(lambda0, &xc, 1.0)?;
    mobius_from(Variant::MobiusBlaschke, &ws, x, flipped)
}

fn mobius_from(variant: Variant, ws: &SchwarzWorkspace, x: &CPoint3, flipped: bool) -> Result<Interpolant> {
    let q = ws.q_matrix()?;
    let lift = Lift::Mobius { z: ws.z, q, node: ws.lambda0 };
    let mut out = base(variant, ws.lambda0, x, flipped, lift);
    out.z = Some(ws.z);
    out.u = Some(ws.u);
    out.v = Some(ws.v);
    Ok(out)
}

/// Extremal case: `Z` has norm one, so every solution is `W diag(1, g) V^*`
/// in the singular bases of `Z`, and the requirement `[G(0)]_22 = 0` becomes
/// a scalar two-point problem for `g`.
fn reduced(lambda0: C, x: &CPoint3, xc: &CPoint3, flipped: bool, t: C) -> Result<Interpolant> {
    let z = z_matrix(lambda0, xc, 1.0);
    let d = svd2(&z);
    let den = d.w.a22 * d.v.a22.conj();
    if den.norm() <= 1e-14 {
        return Err(Error::NumericalDegenerate("singular bases decouple the (2,2) entry"));
    }
    let g0 = -d.w.a21 * d.v.a21.conj() / den;
    let g = scalar_np2(C::new(0.0, 0.0), g0, lambda0, C::new(d.s[1], 0.0), t)?;
    let mut out = base(Variant::SvdReduced, lambda0, x, flipped, Lift::Reduced { w: d.w, v: d.v, g });
    out.z = Some(z);
    out.scalar_g = Some(g);
    Ok(out)
}

fn perturbed(lambda0: C, x: &CPoint3, xc: &CPoint3, flipped: bool, eps: f64) -> Result<Interpolant> {
    let node = lambda0 * (1.0 + eps) * (1.0 + eps);
    check_lambda(node)?;
    let ws = SchwarzWorkspace::new(node, xc, 1.0)?;
    let mut out = mobius_from(Variant::MobiusBlaschke, &ws, x, flipped)?;
    out.lambda0 = lambda0;
    out.epsilon = Some(eps);
    Ok(out)
}

/// The scalars parametrising the one-parameter family `Z(sigma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllSolutionsParams {
    pub y1: f64,
    pub y2: f64,
    pub k: f64,
    pub xi1: f64,
    pub xi2: f64,
    /// The parameters refer to `(b, a, p)`.
    pub flipped: bool,
}

pub fn all_solutions_params(lambda0: C, x: &CPoint3) -> Result<AllSolutionsParams> {
    check_lambda(lambda0)?;
    let (xc, flipped) = canonical(x);
    if xc.is_triangular() {
        return Err(Error::Triangular);
    }
    if is_extremal(lambda0, &xc) {
        return Err(Error::Extremal);
    }
    let r = lambda0.norm();
    let q = schwarz_quotient(&xc).finite().unwrap_or(f64::INFINITY);
    if q > r {
        return Err(Error::Infeasible(r - q));
    }
    let (a2, b2, p2) = (xc.x1.norm_sqr(), xc.x2.norm_sqr(), xc.x3.norm_sqr());
    let r2 = r * r;
    let s = r / xc.defect().norm();
    let y1 = s * (1.0 - a2 - b2 / r2 + p2 / r2);
    let y2 = s * (1.0 - a2 / r2 - b2 + p2 / r2);
    let k = s * (1.0 - b2);
    let xi2 = 0.5 * (y2 + (y2 * y2 - 4.0).max(0.0).sqrt());
    Ok(AllSolutionsParams { y1, y2, k, xi1: 1.0 / xi2, xi2, flipped })
}

/// `-(y - y1)(y - y2)` with `y = |ab - p| (sigma^2 + sigma^-2)`, which equals
/// `det M(|lambda0|) * det(1 - Z(sigma)^* Z(sigma))^2`.
pub fn det_m_closed_form(lambda0: C, x: &CPoint3, sigma: f64) -> f64 {
    let q = x.defect().norm();
    let r = lambda0.norm();
    let r2 = r * r;
    let (a2, b2, p2) = (x.x1.norm_sqr(), x.x2.norm_sqr(), x.x3.norm_sqr());
    let y1 = r * (1.0 - a2 - b2 / r2 + p2 / r2);
    let y2 = r * (1.0 - a2 / r2 - b2 + p2 / r2);
    let y = q * (sigma * sigma + 1.0 / (sigma * sigma));
    -(y - y1) * (y - y2)
}

pub fn solve_with_sigma(lambda0: C, x: &CPoint3, sigma: f64) -> Result<Interpolant> {
    let params = all_solutions_params(lambda0, x)?;
    let s2 = sigma * sigma;
    if !(sigma > 0.0 && params.xi1 < s2 && s2 < params.xi2) {
        return Err(Error::SigmaOutOfRange(s2, params.xi1, params.xi2));
    }
    let (xc, flipped) = canonical(x);
    if xc.x2.norm() <= 1e-15 {
        let k = z_matrix(lambda0, &xc, sigma);
        let mut out = base(Variant::SigmaFamily, lambda0, x, flipped, Lift::Shifted { k });
        out.z = Some(k);
        out.sigma = Some(sigma);
        return Ok(out);
    }
    let ws = SchwarzWorkspace::new(lambda0, &xc, sigma)?;
    let mut out = mobius_from(Variant::SigmaFamily, &ws, x, flipped)?;
    out.sigma = Some(sigma);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, op_norm, CMat2};
    use crate::tetrablock::in_open;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn zero_target() {
        let f = solve_schwarz(c(0.4, 0.1), &CPoint3::zero()).unwrap();
        for l in [c(0.0, 0.0), c(0.5, 0.5), c(-0.9, 0.0)] {
            assert_eq!(f.evaluate(l).unwrap(), CPoint3::zero());
        }
    }

    #[test]
    fn b_zero_is_a_scaled_line() {
        let l0 = c(0.0, 0.9);
        let x = CPoint3::new(c(0.3, 0.1), c(0.0, 0.0), c(0.2, -0.1));
        let f = solve_schwarz(l0, &x).unwrap();
        assert_eq!(f.variant, Variant::ScaledLine);
        let l = c(0.3, -0.4);
        let expect = x.scale(l / l0);
        assert!(f.evaluate(l).unwrap().dist(&expect) < 1e-15);
        assert!(in_open(&f.evaluate(l).unwrap()));
    }

    #[test]
    fn nonuniqueness_example() {
        let l0 = c(-0.8, 0.0);
        let x = CPoint3::real(0.5, 0.25, 0.5);
        let f = solve_schwarz(l0, &x).unwrap();
        assert_eq!(f.variant, Variant::SvdReduced);
        let z = f.z.unwrap();
        assert!((op_norm(&z) - 1.0).abs() < 1e-12);
        let mut ev = eigenvalues(&z).map(|e| e.re);
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 0.625).abs() < 1e-12);
        let g = f.scalar_g.unwrap();
        assert!((g.v1 - 0.3).norm() < 1e-12);
        assert!((g.eval(l0) - 0.625).norm() < 1e-12);
        assert!(f.evaluate(l0).unwrap().dist(&x) < 1e-12);
        let l = c(0.3, 0.2);
        assert!((f.evaluate(l).unwrap().x3 + l * g.eval(l)).norm() < 1e-12);
    }

    #[test]
    fn family_parameters() {
        let p = all_solutions_params(c(0.9, 0.0), &CPoint3::real(0.5, 0.25, 0.5)).unwrap();
        assert!((p.k - 2.25).abs() < 1e-12);
        assert!((p.y2 - 2.25).abs() < 1e-12);
        assert!((p.xi1 * p.xi2 - 1.0).abs() < 1e-15);
        assert!(matches!(
            all_solutions_params(c(-0.8, 0.0), &CPoint3::real(0.5, 0.25, 0.5)),
            Err(Error::Extremal)
        ));
    }

    #[test]
    fn det_m_at_extremal_data_vanishes() {
        let l0 = c(-0.8, 0.0);
        let x = CPoint3::real(0.5, 0.25, 0.5);
        assert!(det_m_closed_form(l0, &x, 1.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_family() {
        let l0 = c(0.9, 0.0);
        let x = CPoint3::real(0.5, 0.25, 0.5);
        let p = all_solutions_params(l0, &x).unwrap();
        let one = solve_with_sigma(l0, &x, 1.0).unwrap();
        let plain = solve_schwarz(l0, &x).unwrap();
        assert_eq!(one.z, plain.z);
        let probe = l0 / 2.0;
        let s = (0.5 * (1.0 + p.xi2)).sqrt();
        let other = solve_with_sigma(l0, &x, s).unwrap();
        assert!(other.evaluate(probe).unwrap().dist(&one.evaluate(probe).unwrap()) > 1e-6);
        let w = (x.defect() / l0).sqrt();
        let f0 = other.lift_evaluate(l0).unwrap();
        assert!(f0.dist(&CMat2::new(x.x1, w * s, l0 * w / s, x.x2)) < 1e-12);
        let out = (p.xi2 + 0.01).sqrt();
        assert!(matches!(solve_with_sigma(l0, &x, out), Err(Error::SigmaOutOfRange(..))));
        assert!(op_norm(&z_matrix(l0, &x, out)) >= 1.0);
    }
}
