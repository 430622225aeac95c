//! Invariant distances on the disc and on the tetrablock.

use num_complex::Complex64 as C;

use crate::autgroup::{act_left, act_right, normalize_triangular};
use crate::error::{Error, Result};
use crate::tetrablock::{in_open, schwarz_quotient, CPoint3};

pub fn pseudohyperbolic(l1: C, l2: C) -> Result<f64> {
    if !(l1.norm() < 1.0 && l2.norm() < 1.0) {
        return Err(Error::OutsideDisc);
    }
    Ok((l1 - l2).norm() / (1.0 - l1.conj() * l2).norm())
}

/// The two-point Schwarz quotient of `x`, i.e. the distance from the origin
/// on the pseudohyperbolic scale.
pub fn origin_quotient(x: &CPoint3) -> Result<f64> {
    if !in_open(x) {
        return Err(Error::Outside("open tetrablock"));
    }
    schwarz_quotient(x).finite().ok_or(Error::Outside("open tetrablock"))
}

/// Caratheodory (= Kobayashi = Lempert) distance from the origin.
pub fn dist_from_origin(x: &CPoint3) -> Result<f64> {
    Ok(origin_quotient(x)?.atanh())
}

/// The invariant distance between two points of E when at least one is
/// triangular. No general formula is known, so other pairs are refused.
pub fn dist_triangular_pair(x: &CPoint3, y: &CPoint3) -> Result<f64> {
    let (t, other) = if x.is_triangular() {
        (x, y)
    } else if y.is_triangular() {
        (y, x)
    } else {
        return Err(Error::Unsupported("neither point is triangular"));
    };
    if !in_open(other) {
        return Err(Error::Outside("open tetrablock"));
    }
    let (v, c) = normalize_triangular(t)?;
    let moved = act_right(&act_left(&v, other)?, &c)?;
    dist_from_origin(&moved)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn disc_distance() {
        assert!((pseudohyperbolic(c(0.3, 0.0), c(0.625, 0.0)).unwrap() - 0.4).abs() < 1e-15);
        let z = c(0.2, -0.7);
        assert_eq!(pseudohyperbolic(z, z).unwrap(), 0.0);
        assert!((pseudohyperbolic(c(0.0, 0.0), z).unwrap() - z.norm()).abs() < 1e-15);
        assert!(pseudohyperbolic(c(1.0, 0.0), z).is_err());
    }

    #[test]
    fn origin_distance() {
        assert_eq!(dist_from_origin(&CPoint3::zero()).unwrap(), 0.0);
        let d = dist_from_origin(&CPoint3::real(0.5, 0.25, 0.5)).unwrap();
        assert!((d - 0.8f64.atanh()).abs() < 1e-14);
        let d = dist_from_origin(&CPoint3::real(0.35, 0.0, 0.0)).unwrap();
        assert!((d - 0.35f64.atanh()).abs() < 1e-15);
        assert!(dist_from_origin(&CPoint3::real(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn triangular_pairs() {
        let y = CPoint3::new(c(0.2, 0.1), c(-0.3, 0.2), c(0.1, -0.1));
        let d = dist_triangular_pair(&CPoint3::zero(), &y).unwrap();
        assert!((d - dist_from_origin(&y).unwrap()).abs() < 1e-15);
        let x = CPoint3::real(0.5, 1.0 / 3.0, 1.0 / 6.0);
        let a = dist_triangular_pair(&x, &CPoint3::zero()).unwrap();
        let b = dist_triangular_pair(&CPoint3::zero(), &x).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!((a - 0.5f64.atanh()).abs() < 1e-12);
        let z = CPoint3::real(0.5, 0.25, 0.5);
        assert!(matches!(dist_triangular_pair(&z, &y), Err(Error::Unsupported(_))));
    }
}
