//! Structured singular value for the diagonal structure and two-point
//! mu-synthesis through the tetrablock.

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::autgroup::schwarz_pick_formula;
pub use crate::interpolate::lift_to_sigma;
use crate::error::{Error, Result};
use crate::interpolate::{schwarz_feasible, solve_schwarz, Interpolant};
use crate::linalg::{op_norm, pi_map, CMat2};
use crate::metrics::pseudohyperbolic;
use crate::tetrablock::{margins, membership, CPoint3, DEFAULT_TOL};

const R_MIN: f64 = 1e-9;
const R_MAX: f64 = 1e9;

/// Closure test used by the bisection: the canonical criterion with its
/// triangular side condition, evaluated without slack.
fn in_closure_sharp(x: &CPoint3) -> bool {
    let m = margins(x);
    m.m3 >= 0.0 && (!x.is_triangular() || x.x1.norm() <= 1.0)
}

fn dilated(a: &CMat2, r: f64) -> CPoint3 {
    CPoint3::new(a.a11 * r, a.a22 * r, a.det() * (r * r))
}

/// `mu(A)` for diagonal perturbations: the reciprocal of the largest `r`
/// with `(r a11, r a22, r^2 det A)` in the closed tetrablock.
pub fn mu_diag(a: &CMat2, tol: f64) -> f64 {
    let inside = |r: f64| in_closure_sharp(&dilated(a, r));
    let mut lo = R_MIN;
    while !inside(lo) {
        lo *= 1e-3;
        if lo < 1e-300 {
            return f64::INFINITY;
        }
    }
    let mut hi = 1.0f64.max(2.0 * lo);
    while inside(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > R_MAX {
            return 0.0;
        }
    }
    let tol = tol.max(1e-15);
    for _ in 0..200 {
        if hi - lo <= tol * lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    2.0 / (lo + hi)
}

/// `det(1 - A diag(z, w)) - (1 - a11 z - a22 w + det(A) z w)`.
pub fn det_audit(a: &CMat2, z: C, w: C) -> C {
    let one = C::new(1.0, 0.0);
    let direct = (CMat2::identity() - *a * CMat2::diag(z, w)).det();
    direct - (one - a.a11 * z - a.a22 * w + a.det() * z * w)
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn scaled(a: &CMat2, d: C) -> CMat2 {
    CMat2::new(a.a11, a.a12 * d, a.a21 / d, a.a22)
}

/// `inf_d ||diag(d, 1) A diag(1/d, 1)||` over `log d` in `[-12, 12]`.
pub fn mu_scaling_oracle(a: &CMat2, tol: f64) -> f64 {
    let f = |t: f64| op_norm(&scaled(a, C::new(t.exp(), 0.0)));
    let n = 97;
    let (mut best_t, mut best) = (0.0, f(0.0));
    let step = 24.0 / (n - 1) as f64;
    for k in 0..n {
        let t = -12.0 + step * k as f64;
        let v = f(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let lo = (best_t - step).max(-12.0);
    let hi = (best_t + step).min(12.0);
    let (_, v) = golden(f, lo, hi, tol.max(1e-12));
    v.min(best)
}

/// Two-point data `F(0) = A1`, `F(lambda0) = A2` with `A1` a single
/// off-diagonal corner `zeta` (or zero).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisInstance {
    pub lambda0: C,
    pub a1: CMat2,
    pub a2: CMat2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    Upper,
    Lower,
}

impl SynthesisInstance {
    pub fn new(lambda0: C, a1: CMat2, a2: CMat2) -> Result<Self> {
        let inst = SynthesisInstance { lambda0, a1, a2 };
        inst.shape()?;
        Ok(inst)
    }

    /// `(zeta, corner)`; the corner is `Upper` when `A1 = 0`.
    pub fn shape(&self) -> Result<(C, Corner)> {
        let r = self.lambda0.norm();
        if r == 0.0 || !(r < 1.0) {
            return Err(Error::BadLambda);
        }
        let a1 = &self.a1;
        if a1.a11 != C::new(0.0, 0.0) || a1.a22 != C::new(0.0, 0.0) {
            return Err(Error::BadShape("A1 must have zero diagonal"));
        }
        let corner = match (a1.a12 == C::new(0.0, 0.0), a1.a21 == C::new(0.0, 0.0)) {
            (_, true) => Corner::Upper,
            (true, false) => Corner::Lower,
            (false, false) => return Err(Error::BadShape("A1 has two nonzero corners")),
        };
        if self.a2.a12 == C::new(0.0, 0.0) && self.a2.a21 == C::new(0.0, 0.0) {
            return Err(Error::BadShape(
                "A2 is diagonal; diagonal targets need derivative conditions that are not supported",
            ));
        }
        if !membership(&pi_map(&self.a2), false, DEFAULT_TOL).in_set {
            return Err(Error::BadShape("pi(A2) must lie in the open tetrablock"));
        }
        let zeta = match corner {
            Corner::Upper => a1.a12,
            Corner::Lower => a1.a21,
        };
        Ok((zeta, corner))
    }

    pub fn zeta(&self) -> C {
        self.shape().map(|s| s.0).unwrap_or_default()
    }
}

/// A closed-form analytic matrix function on the disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixLift {
    /// `lambda A / lambda0`.
    Linear { a: CMat2, lambda0: C },
    /// `e(lambda) = exp(l0 + (l1 - l0) lambda / lambda0)` conjugates
    /// the tetrablock lift: `F = diag(e, 1) F_phi diag(1/e, 1)`, transposed
    /// for lower-corner data.
    Conjugated { phi: Interpolant, l0: C, l1: C, transposed: bool },
    /// `[[a lambda / lambda0, zeta + (c - zeta) lambda / lambda0], [0, b lambda / lambda0]]`, transposed for lower data.
    Triangular { a: C, b: C, c: C, zeta: C, lambda0: C, transposed: bool },
}

impl MatrixLift {
    pub fn eval(&self, lambda: C) -> Result<CMat2> {
        match self {
            MatrixLift::Linear { a, lambda0 } => Ok(a.scale(lambda / lambda0)),
            MatrixLift::Conjugated { phi, l0, l1, transposed } => {
                let f = phi.lift_evaluate(lambda)?;
                let e = (l0 + (l1 - l0) * lambda / phi.lambda0).exp();
                let g = CMat2::new(f.a11, f.a12 * e, f.a21 / e, f.a22);
                Ok(if *transposed { g.transpose() } else { g })
            }
            MatrixLift::Triangular { a, b, c, zeta, lambda0, transposed } => {
                let s = lambda / lambda0;
                let g = CMat2::new(a * s, zeta + (c - zeta) * s, C::new(0.0, 0.0), b * s);
                Ok(if *transposed { g.transpose() } else { g })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResult {
    pub feasible: bool,
    /// Positive inside the feasible region; for `zeta != 0` this is the
    /// Schwarz margin, for `zeta = 0` the closure margin of the rescaled point.
    pub margin: f64,
    pub zeta: C,
    pub lift: Option<MatrixLift>,
    /// Why no lift was produced for feasible data.
    pub note: Option<String>,
}

pub fn synth_two_point(inst: &SynthesisInstance) -> Result<SynthesisResult> {
    let (zeta, corner) = inst.shape()?;
    let l0 = inst.lambda0;
    let x = pi_map(&inst.a2);
    if zeta == C::new(0.0, 0.0) {
        let y = CPoint3::new(x.x1 / l0, x.x2 / l0, x.x3 / (l0 * l0));
        let rep = membership(&y, true, DEFAULT_TOL);
        let margin = rep.margins.m3;
        let lift = rep.in_set.then_some(MatrixLift::Linear { a: inst.a2, lambda0: l0 });
        return Ok(SynthesisResult { feasible: rep.in_set, margin, zeta, lift, note: None });
    }
    let feas = schwarz_feasible(l0, &x)?;
    let mut out = SynthesisResult { feasible: feas.feasible, margin: feas.margin, zeta, lift: None, note: None };
    if !feas.feasible {
        return Ok(out);
    }
    let transposed = corner == Corner::Lower;
    let a2 = if transposed { inst.a2.transpose() } else { inst.a2 };
    if x.is_triangular() {
        if a2.a21 == C::new(0.0, 0.0) {
            out.lift = Some(MatrixLift::Triangular {
                a: a2.a11,
                b: a2.a22,
                c: a2.a12,
                zeta,
                lambda0: l0,
                transposed,
            });
        } else {
            out.note = Some("triangular A2 with its nonzero corner opposite to zeta".into());
        }
        return Ok(out);
    }
    let phi = match solve_schwarz(l0, &x) {
        Ok(phi) => phi,
        Err(e) => {
            out.note = Some(format!("no tetrablock interpolant: {e}"));
            return Ok(out);
        }
    };
    let f0 = phi.lift_evaluate(C::new(0.0, 0.0))?;
    let f1 = phi.lift_evaluate(phi.node())?;
    if f0.a12.norm() < 1e-12 || f1.a12.norm() < 1e-12 || phi.epsilon.is_some() {
        out.note = Some("tetrablock lift has a vanishing corner".into());
        return Ok(out);
    }
    out.lift = Some(MatrixLift::Conjugated {
        phi,
        l0: (zeta / f0.a12).ln(),
        l1: (a2.a12 / f1.a12).ln(),
        transposed,
    });
    Ok(out)
}

/// Largest sampled `mu(F(lambda))`.
pub fn mu_audit(lift: &MatrixLift, lambdas: &[C], tol: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &l in lambdas {
        worst = worst.max(mu_diag(&lift.eval(l)?, tol));
    }
    Ok(worst)
}

/// `lambda -> [[phi1, phi1 phi2 - phi3], [1, phi2]]` along an interpolant.
pub fn sigma_lift_eval(phi: &Interpolant, lambda: C) -> Result<CMat2> {
    Ok(lift_to_sigma(&phi.evaluate(lambda)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralPickReport {
    pub lhs: f64,
    pub rhs: f64,
    pub feasible: bool,
    /// Equality within tolerance: a solution exists with values in the closure only.
    pub boundary: bool,
}

fn is_triangular_matrix(a: &CMat2) -> bool {
    a.a12 == C::new(0.0, 0.0) || a.a21 == C::new(0.0, 0.0)
}

/// `F(lambda1) = A`, `F(lambda2) = B` with `A` triangular and non-diagonal.
pub fn synth_two_point_general(lambda1: C, lambda2: C, a: &CMat2, b: &CMat2, tol: f64) -> Result<GeneralPickReport> {
    if a.a12 == C::new(0.0, 0.0) && a.a21 == C::new(0.0, 0.0) {
        return Err(Error::BadShape("A is diagonal"));
    }
    if !is_triangular_matrix(a) {
        return Err(Error::BadShape("A must be triangular"));
    }
    if b.a12 == C::new(0.0, 0.0) && b.a21 == C::new(0.0, 0.0) {
        return Err(Error::BadShape("B is diagonal"));
    }
    let x = pi_map(a);
    let y = pi_map(b);
    if !membership(&x, false, DEFAULT_TOL).in_set {
        return Err(Error::BadShape("pi(A) must lie in the open tetrablock"));
    }
    if !membership(&y, true, DEFAULT_TOL).in_set {
        return Err(Error::BadShape("mu(B) must not exceed 1"));
    }
    let rhs = pseudohyperbolic(lambda1, lambda2)?;
    if rhs == 0.0 {
        return Err(Error::InvalidInput("interpolation nodes coincide".into()));
    }
    let lhs = schwarz_pick_formula(&x, &y);
    Ok(GeneralPickReport { lhs, rhs, feasible: lhs <= rhs + tol, boundary: (lhs - rhs).abs() <= tol })
}

struct SzegoFrame {
    /// `L^*` and `L^{-*}` for the Gram factorisation `G = L L^*`.
    lstar: DMatrix<C>,
    lstar_inv: DMatrix<C>,
}

impl SzegoFrame {
    fn new(points: &[C]) -> Result<Self> {
        let dim = 2 * points.len();
        let g = DMatrix::from_fn(dim, dim, |i, j| {
            if i % 2 != j % 2 {
                return C::new(0.0, 0.0);
            }
            let (li, lj) = (points[i / 2], points[j / 2]);
            (C::new(1.0, 0.0) - lj.conj() * li).inv()
        });
        let l = g
            .cholesky()
            .ok_or(Error::NumericalDegenerate("Szego Gram matrix is not positive definite"))?
            .l();
        let linv = l.clone().try_inverse().ok_or(Error::Singular)?;
        Ok(SzegoFrame { lstar: l.adjoint(), lstar_inv: linv.adjoint() })
    }

    fn norm(&self, targets: &[CMat2]) -> f64 {
        let dim = 2 * targets.len();
        let mut phi = DMatrix::from_element(dim, dim, C::new(0.0, 0.0));
        for (j, t) in targets.iter().enumerate() {
            let s = t.adjoint();
            phi[(2 * j, 2 * j)] = s.a11;
            phi[(2 * j, 2 * j + 1)] = s.a12;
            phi[(2 * j + 1, 2 * j)] = s.a21;
            phi[(2 * j + 1, 2 * j + 1)] = s.a22;
        }
        let m = &self.lstar * phi * &self.lstar_inv;
        m.singular_values().max()
    }
}

/// Norm of the operator `A(F_1, .., F_n)` on the span of `k_{lambda_j} (x) C^2`.
pub fn bft_operator_norm(points: &[C], targets: &[CMat2]) -> Result<f64> {
    if points.len() != targets.len() {
        return Err(Error::InvalidInput("points and targets differ in length".into()));
    }
    Ok(SzegoFrame::new(points)?.norm(targets))
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, start: &[f64], step: f64, budget: usize) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let s0 = start.to_vec();
    let f0 = f(&s0);
    simplex.push((s0, f0));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        let v = f(&p);
        simplex.push((p, v));
    }
    let mut evals = n + 1;
    let comb = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[n].1 - simplex[0].1).abs() <= 1e-14 * simplex[0].1.abs().max(1e-300) {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (p, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let refl = comb(&centroid, &worst.0, -1.0);
        let fr = f(&refl);
        evals += 1;
        if fr < simplex[0].1 {
            let exp = comb(&centroid, &worst.0, -2.0);
            let fe = f(&exp);
            evals += 1;
            simplex[n] = if fe < fr { (exp, fe) } else { (refl, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (refl, fr);
        } else {
            let con = comb(&centroid, &worst.0, 0.5);
            let fc = f(&con);
            evals += 1;
            if fc < worst.1 {
                simplex[n] = (con, fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let p = comb(&best, &item.0, 0.5);
                    let v = f(&p);
                    *item = (p, v);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BftReport {
    /// Best operator norm found: a numerical infimum, not a certified one.
    pub value: f64,
    /// Scalings `D_j = diag(d_j, 1)` attaining `value`.
    pub scalings: Vec<C>,
    pub evaluations: usize,
}

/// Numerical infimum of the diagonally scaled commutant-lifting norm.
///
/// One point: a positive scaling `d`. Two points: positive `d1, d2` and a
/// relative phase on the second point.
pub fn bft_lower_bound(points: &[C], targets: &[CMat2], budget: usize) -> Result<BftReport> {
    let n = points.len();
    if n != targets.len() {
        return Err(Error::InvalidInput("points and targets differ in length".into()));
    }
    if n > 2 {
        return Err(Error::TooManyPoints);
    }
    if n == 0 {
        return Err(Error::InvalidInput("no interpolation points".into()));
    }
    if points.iter().any(|p| !(p.norm() < 1.0)) {
        return Err(Error::OutsideDisc);
    }
    if n == 2 && points[0] == points[1] {
        return Err(Error::InvalidInput("interpolation nodes coincide".into()));
    }
    let frame = SzegoFrame::new(points)?;
    let grid: Vec<f64> = (0..41).map(|k| -6.0 + 0.3 * k as f64).collect();
    let mut evals = 0usize;
    if n == 1 {
        let f = |t: f64| frame.norm(&[scaled(&targets[0], C::new(t.exp(), 0.0))]);
        let (mut bt, mut bv) = (0.0, f64::INFINITY);
        for &t in &grid {
            let v = f(t);
            evals += 1;
            if v < bv {
                bv = v;
                bt = t;
            }
        }
        let (t, v) = golden(f, bt - 0.3, bt + 0.3, 1e-10);
        evals += 60;
        let (t, v) = if v < bv { (t, v) } else { (bt, bv) };
        return Ok(BftReport { value: v, scalings: vec![C::new(t.exp(), 0.0)], evaluations: evals });
    }
    let eval = |p: &[f64]| -> f64 {
        let d1 = C::new(p[0].exp(), 0.0);
        let d2 = C::from_polar(p[1].exp(), p[2]);
        frame.norm(&[scaled(&targets[0], d1), scaled(&targets[1], d2)])
    };
    let phases: Vec<f64> = (0..16).map(|k| std::f64::consts::TAU * k as f64 / 16.0).collect();
    let mut ranked: Vec<(f64, [f64; 3])> = Vec::with_capacity(grid.len() * grid.len() * phases.len());
    for &t1 in &grid {
        for &t2 in &grid {
            for &th in &phases {
                let p = [t1, t2, th];
                ranked.push((eval(&p), p));
            }
        }
    }
    evals += ranked.len();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    let starts = 6;
    let per_start = (budget.saturating_sub(evals) / starts).max(200);
    let mut best = (ranked[0].1.to_vec(), ranked[0].0);
    for (_, start) in ranked.iter().take(starts) {
        let mut counted = 0usize;
        let (p, v) = nelder_mead(
            |q| {
                counted += 1;
                eval(q)
            },
            start,
            0.3,
            per_start,
        );
        evals += counted;
        if v < best.1 {
            best = (p, v);
        }
    }
    let (p, v) = best;
    Ok(BftReport {
        value: v,
        scalings: vec![C::new(p[0].exp(), 0.0), C::from_polar(p[1].exp(), p[2])],
        evaluations: evals,
    })
}
