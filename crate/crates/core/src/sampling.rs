//! Seeded random instances for audits, tests and benchmarks.

use num_complex::Complex64 as C;
use rand::Rng;

use crate::autgroup::DiscAut;
use crate::linalg::{op_norm, pi_map, CMat2};
use crate::tetrablock::CPoint3;

pub use rand_chacha::ChaCha8Rng as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Standard complex Gaussian.
pub fn gaussian<R: Rng>(rng: &mut R) -> C {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    let r = (-u1.ln()).sqrt();
    C::from_polar(r, std::f64::consts::TAU * u2)
}

pub fn unimodular<R: Rng>(rng: &mut R) -> C {
    C::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Uniform in the disc of radius `r`.
pub fn in_disc<R: Rng>(rng: &mut R, r: f64) -> C {
    C::from_polar(r * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

/// Entries with real and imaginary parts uniform in `[-s, s]`.
pub fn box_complex<R: Rng>(rng: &mut R, s: f64) -> C {
    C::new(rng.random_range(-s..=s), rng.random_range(-s..=s))
}

pub fn box_point<R: Rng>(rng: &mut R, s: f64) -> CPoint3 {
    CPoint3::new(box_complex(rng, s), box_complex(rng, s), box_complex(rng, s))
}

pub fn box_matrix<R: Rng>(rng: &mut R, s: f64) -> CMat2 {
    CMat2::new(box_complex(rng, s), box_complex(rng, s), box_complex(rng, s), box_complex(rng, s))
}

pub fn gaussian_matrix<R: Rng>(rng: &mut R) -> CMat2 {
    CMat2::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng))
}

/// Haar-distributed 2x2 unitary.
pub fn unitary<R: Rng>(rng: &mut R) -> CMat2 {
    let a = gaussian(rng);
    let b = gaussian(rng);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = unimodular(rng);
    CMat2::new(a, -b.conj() * phase, b, a.conj() * phase)
}

/// A matrix of operator norm `< 1`, spread through the ball.
pub fn contraction<R: Rng>(rng: &mut R) -> CMat2 {
    let g = gaussian_matrix(rng);
    let n = op_norm(&g);
    if n == 0.0 {
        return CMat2::zero();
    }
    let target = rng.random::<f64>().powf(0.5) * (1.0 - 1e-9);
    g.scale(C::new(target / n, 0.0))
}

/// A point of E, as the image of a random contraction.
pub fn point_in_e<R: Rng>(rng: &mut R) -> CPoint3 {
    pi_map(&contraction(rng))
}

pub fn triangular_in_e<R: Rng>(rng: &mut R) -> CPoint3 {
    let a = in_disc(rng, 1.0 - 1e-9);
    let b = in_disc(rng, 1.0 - 1e-9);
    CPoint3::new(a, b, a * b)
}

pub fn disc_aut<R: Rng>(rng: &mut R) -> DiscAut {
    DiscAut { omega: unimodular(rng), alpha: in_disc(rng, 0.95) }
}

/// A point of the open set `E# = {x in closure(E): |x1| < 1, |x2| < 1}` closed under the diamond product.
pub fn point_in_e_sharp<R: Rng>(rng: &mut R) -> CPoint3 {
    if rng.random::<f64>() < 0.5 {
        point_in_e(rng)
    } else {
        crate::autgroup::tau(&disc_aut(rng))
    }
}
