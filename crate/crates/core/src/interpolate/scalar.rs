use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::pseudohyperbolic;

/// `z -> (z - v) / (1 - conj(v) z)`.
fn mobius(v: C, z: C) -> C {
    (z - v) / (1.0 - v.conj() * z)
}

fn mobius_inv(v: C, z: C) -> C {
    (z + v) / (1.0 + v.conj() * z)
}

/// A scalar Schur function through two prescribed values, obtained from one
/// Schur step at `lambda1` and a constant parameter `t` at `lambda2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarSchur {
    pub lambda1: C,
    pub v1: C,
    pub lambda2: C,
    pub v2: C,
    /// Value at `lambda2` of the once-reduced function.
    pub eta: C,
    pub t: C,
}

impl ScalarSchur {
    pub fn eval(&self, z: C) -> C {
        let b1 = mobius(self.lambda1, z);
        let h = if self.eta.norm() >= 1.0 {
            self.eta
        } else {
            mobius_inv(self.eta, mobius(self.lambda2, z) * self.t)
        };
        mobius_inv(self.v1, b1 * h)
    }
}

/// Two-point Nevanlinna-Pick: `g(lambda1) = v1`, `g(lambda2) = v2`.
pub fn scalar_np2(lambda1: C, v1: C, lambda2: C, v2: C, t: C) -> Result<ScalarSchur> {
    if !(v1.norm() < 1.0 && v2.norm() < 1.0 && t.norm() <= 1.0) {
        return Err(Error::OutsideDisc);
    }
    let dl = pseudohyperbolic(lambda1, lambda2)?;
    if dl == 0.0 {
        return Err(Error::InvalidInput("interpolation nodes coincide".into()));
    }
    let dv = pseudohyperbolic(v1, v2)?;
    if dv > dl * (1.0 + 1e-12) {
        return Err(Error::InfeasiblePick);
    }
    let mut eta = mobius(v1, v2) / mobius(lambda1, lambda2);
    if eta.norm() > 1.0 {
        eta /= eta.norm();
    }
    Ok(ScalarSchur { lambda1, v1, lambda2, v2, eta, t })
}
