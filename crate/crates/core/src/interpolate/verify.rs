use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Interpolant;
use crate::linalg::{op_norm, pi_map};
use crate::tetrablock::closed_margin;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// `|phi(0)|`.
    pub endpoint_origin: f64,
    /// `|phi(node) - x|`.
    pub endpoint_lambda0: f64,
    /// Smallest closure margin of `phi(lambda)` over the samples.
    pub min_margin: f64,
    /// Largest `||F(lambda)|| - 1` over the samples.
    pub max_lift_norm_excess: f64,
    /// Largest `|pi(F(lambda)) - phi(lambda)|`.
    pub max_lift_residual: f64,
    /// Size of the first column of `F(0)`.
    pub zero_column: f64,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Half the samples uniform in the disc, half crowded towards the circle.
pub(crate) fn sample_lambdas(samples: usize, seed: u64) -> Vec<C> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let r = if i % 2 == 0 {
                rng.random::<f64>().sqrt()
            } else {
                1.0 - 10f64.powf(-rng.random_range(1.0..6.0))
            };
            C::from_polar(r.min(1.0 - 1e-12), theta)
        })
        .collect()
}

pub fn verify_interpolant(phi: &Interpolant, samples: usize, seed: u64, tol: f64) -> VerificationReport {
    let mut failures = Vec::new();
    let mut endpoint_origin = f64::INFINITY;
    let mut endpoint_lambda0 = f64::INFINITY;
    let mut zero_column = f64::INFINITY;
    match phi.lift_evaluate(C::new(0.0, 0.0)) {
        Ok(f) => {
            endpoint_origin = pi_map(&f).max_abs();
            zero_column = f.a11.norm().max(f.a21.norm());
        }
        Err(e) => failures.push(format!("lift at 0: {e}")),
    }
    match phi.evaluate(phi.node()) {
        Ok(y) => endpoint_lambda0 = y.dist(&phi.x),
        Err(e) => failures.push(format!("evaluation at the node: {e}")),
    }
    if !(endpoint_origin <= tol) {
        failures.push(format!("phi(0) is {endpoint_origin:e} away from the origin"));
    }
    if !(endpoint_lambda0 <= tol) {
        failures.push(format!("phi(lambda0) is {endpoint_lambda0:e} away from x"));
    }
    if !(zero_column <= tol) {
        failures.push(format!("first column of F(0) has size {zero_column:e}"));
    }

    let mut min_margin = f64::INFINITY;
    let mut max_excess = f64::NEG_INFINITY;
    let mut max_resid: f64 = 0.0;
    for lambda in sample_lambdas(samples, seed) {
        match phi.lift_evaluate(lambda) {
            Ok(f) => {
                let y = pi_map(&f);
                min_margin = min_margin.min(closed_margin(&y));
                max_excess = max_excess.max(op_norm(&f) - 1.0);
                if let Ok(e) = phi.evaluate(lambda) {
                    max_resid = max_resid.max(e.dist(&y));
                }
                if !y.is_finite() {
                    min_margin = f64::NEG_INFINITY;
                }
            }
            Err(e) => {
                failures.push(format!("lift at {lambda}: {e}"));
                min_margin = f64::NEG_INFINITY;
            }
        }
    }
    if samples > 0 {
        if !(min_margin >= -tol) {
            failures.push(format!("membership margin {min_margin:e} below -tol"));
        }
        if !(max_excess <= tol) {
            failures.push(format!("lift norm exceeds one by {max_excess:e}"));
        }
    }
    failures.dedup();
    VerificationReport {
        samples,
        seed,
        tol,
        endpoint_origin,
        endpoint_lambda0,
        min_margin,
        max_lift_norm_excess: max_excess,
        max_lift_residual: max_resid,
        zero_column,
        passed: failures.is_empty(),
        failures,
    }
}
