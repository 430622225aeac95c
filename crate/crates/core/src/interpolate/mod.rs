//! Two-point Schwarz lemma for the tetrablock: analytic `phi: D -> E` with
//! `phi(0) = 0` and `phi(lambda0) = x`, together with a Schur-class lift `F`
//! satisfying `phi = pi o F`.

mod scalar;
mod solve;
mod verify;
mod workspace;

pub use scalar::{scalar_np2, ScalarSchur};
pub use solve::{
    all_solutions_params, det_m_closed_form, solve_schwarz, solve_schwarz_with, solve_with_sigma,
    AllSolutionsParams, SolveOptions,
};
pub use verify::{verify_interpolant, VerificationReport};
pub use workspace::{
    big_m, choose_alpha, schwarz_feasible, uv_vectors, z_matrix, Feasibility, SchwarzWorkspace,
    EXTREMAL_REL_TOL,
};

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pi_map, CMat2, CVec2, MobiusMap};
use crate::tetrablock::CPoint3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `F = Z diag(lambda, 1)` with constant `Z`, so `phi(lambda) = lambda x / lambda0` (case `b = 0`).
    ScaledLine,
    /// `F = diag(a, b) lambda / lambda0` (case `ab = p`).
    Diagonal,
    MobiusBlaschke,
    SvdReduced,
    SigmaFamily,
}

/// Closed-form Schur-class matrix function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lift {
    /// `diag(c1 lambda, c2 lambda)`.
    Diagonal { c1: C, c2: C },
    /// `K diag(lambda, 1)`.
    Shifted { k: CMat2 },
    /// `M_{-Z}(B(lambda) Q) diag(lambda, 1)` with `B` the Blaschke factor vanishing at `node`.
    Mobius { z: CMat2, q: CMat2, node: C },
    /// `W diag(1, g(lambda)) V^* diag(lambda, 1)`.
    Reduced { w: CMat2, v: CMat2, g: ScalarSchur },
}

impl Lift {
    pub fn eval(&self, lambda: C) -> Result<CMat2> {
        let shift = CMat2::diag(lambda, C::new(1.0, 0.0));
        match self {
            Lift::Diagonal { c1, c2 } => Ok(CMat2::diag(c1 * lambda, c2 * lambda)),
            Lift::Shifted { k } => Ok(*k * shift),
            Lift::Mobius { z, q, node } => {
                let b = (node - lambda) / (1.0 - node.conj() * lambda);
                let g = MobiusMap::new(&-*z)?.apply(&q.scale(b))?;
                Ok(g * shift)
            }
            Lift::Reduced { w, v, g } => {
                let mid = CMat2::diag(C::new(1.0, 0.0), g.eval(lambda));
                Ok(*w * mid * v.adjoint() * shift)
            }
        }
    }
}

/// An analytic map `phi: D -> closure(E)` with `phi(0) = 0`, `phi(lambda0) = x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interpolant {
    pub variant: Variant,
    pub lambda0: C,
    pub x: CPoint3,
    /// `Z` (or `Z(sigma)`) of the possibly flipped problem.
    pub z: Option<CMat2>,
    pub u: Option<CVec2>,
    pub v: Option<CVec2>,
    pub sigma: Option<f64>,
    pub scalar_g: Option<ScalarSchur>,
    /// Solved for `(b, a, p)`; the lift is conjugated back by the coordinate swap.
    pub flipped: bool,
    /// Set when the extremal data were perturbed: the node is `lambda0 (1 + eps)^2`.
    pub epsilon: Option<f64>,
    pub lift: Lift,
}

impl Interpolant {
    pub fn lift_evaluate(&self, lambda: C) -> Result<CMat2> {
        if lambda.norm() > 1.0 {
            return Err(Error::OutsideDisc);
        }
        let f = self.lift.eval(lambda)?;
        if self.flipped {
            Ok(CMat2::new(f.a22, f.a12, f.a21, f.a11))
        } else {
            Ok(f)
        }
    }

    pub fn evaluate(&self, lambda: C) -> Result<CPoint3> {
        Ok(pi_map(&self.lift_evaluate(lambda)?))
    }

    /// The node at which `x` is attained exactly.
    pub fn node(&self) -> C {
        match (self.epsilon, self.lift) {
            (Some(_), Lift::Mobius { node, .. }) => node,
            _ => self.lambda0,
        }
    }
}

/// `F = [[phi1, phi1 phi2 - phi3], [1, phi2]]`, a matrix with `pi(F) = phi`.
pub fn lift_to_sigma(phi: &CPoint3) -> CMat2 {
    CMat2::new(phi.x1, phi.defect(), C::new(1.0, 0.0), phi.x2)
}
