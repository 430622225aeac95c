//! Brute-force membership oracle straight from the defining polynomial.
//!
//! For fixed `z` the polynomial `1 - x1 z - x2 w + x3 z w` is affine in `w`,
//! so its only root is `w(z) = (1 - x1 z) / (x2 - x3 z)`. The oracle samples
//! `z` on a polar grid, refines the worst sample locally, and checks that the
//! root stays outside the relevant disc. It is a test oracle, not the
//! production path.

use std::f64::consts::TAU;

use num_complex::Complex64 as C;

use super::CPoint3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub angular: usize,
    pub radial: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { angular: 200, radial: 50 }
    }
}

fn root_gap(x: &CPoint3, z: C) -> f64 {
    let num = 1.0 - x.x1 * z;
    let den = x.x2 - x.x3 * z;
    if den.norm() <= 1e-14 {
        return if num.norm() <= 1e-14 { -1.0 } else { f64::INFINITY };
    }
    (num / den).norm() - 1.0
}

/// `min |w(z)| - 1` over sampled `z`. For the open-set test `z` ranges over
/// the closed disc; for the closure test over the open disc.
pub fn grid_oracle_margin(x: &CPoint3, closed: bool, grid: GridSpec) -> f64 {
    let rmax = if closed { 1.0 - 1e-12 } else { 1.0 };
    let nr = grid.radial.max(2);
    let na = grid.angular.max(2);
    let dr = rmax / (nr - 1) as f64;
    let da = TAU / na as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..nr {
        let r = dr * i as f64;
        for k in 0..na {
            let t = da * k as f64;
            let g = root_gap(x, C::from_polar(r, t));
            if g < best.0 {
                best = (g, r, t);
            }
        }
    }
    let (mut g, mut r, mut t) = best;
    let (mut sr, mut st) = (dr, da);
    for _ in 0..60 {
        let mut moved = false;
        for (ddr, ddt) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let nr_ = (r + ddr * sr).clamp(0.0, rmax);
            let nt = t + ddt * st;
            let ng = root_gap(x, C::from_polar(nr_, nt));
            if ng < g {
                g = ng;
                r = nr_;
                t = nt;
                moved = true;
            }
        }
        if !moved {
            sr *= 0.5;
            st *= 0.5;
        }
    }
    g
}

pub fn membership_grid_oracle(x: &CPoint3, closed: bool, grid: GridSpec) -> bool {
    let g = grid_oracle_margin(x, closed, grid);
    if closed {
        g >= -1e-9
    } else {
        g > 0.0
    }
}
