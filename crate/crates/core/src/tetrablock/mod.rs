//! The tetrablock E, its closure, and the classical membership tests.

mod boundary;
mod geodesic;
mod oracle;

pub use boundary::{
    in_distinguished_boundary, peak_function, separating_polynomial, PeakFunction,
    SeparatingPolynomial, SeparationBranch,
};
pub use geodesic::{beta_params, geodesic_eval, GeodesicDisc};
pub use oracle::{grid_oracle_margin, membership_grid_oracle, GridSpec};

use num_complex::Complex64 as C;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{op_norm, CMat2};

pub const DEFAULT_TOL: f64 = 1e-9;

/// A point `(x1, x2, x3)` of C^3. In interpolation contexts the coordinates
/// are also called `(a, b, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[C; 3]", into = "[C; 3]")]
pub struct CPoint3 {
    pub x1: C,
    pub x2: C,
    pub x3: C,
}

impl From<[C; 3]> for CPoint3 {
    fn from(r: [C; 3]) -> Self {
        CPoint3::new(r[0], r[1], r[2])
    }
}

impl From<CPoint3> for [C; 3] {
    fn from(x: CPoint3) -> Self {
        [x.x1, x.x2, x.x3]
    }
}

impl CPoint3 {
    pub const fn new(x1: C, x2: C, x3: C) -> Self {
        CPoint3 { x1, x2, x3 }
    }

    pub fn real(x1: f64, x2: f64, x3: f64) -> Self {
        CPoint3::new(x1.into(), x2.into(), x3.into())
    }

    pub fn zero() -> Self {
        CPoint3::real(0.0, 0.0, 0.0)
    }

    /// `(x2, x1, x3)`.
    pub fn swap(&self) -> Self {
        CPoint3::new(self.x2, self.x1, self.x3)
    }

    pub fn scale(&self, s: C) -> Self {
        CPoint3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }

    /// `(r x1, r x2, r^2 x3)`.
    pub fn dilate(&self, r: f64) -> Self {
        CPoint3::new(self.x1 * r, self.x2 * r, self.x3 * (r * r))
    }

    pub fn coords(&self) -> [C; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// Max-coordinate distance.
    pub fn dist(&self, other: &CPoint3) -> f64 {
        (self.x1 - other.x1)
            .norm()
            .max((self.x2 - other.x2).norm())
            .max((self.x3 - other.x3).norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.dist(&CPoint3::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `x1 x2 - x3`.
    pub fn defect(&self) -> C {
        self.x1 * self.x2 - self.x3
    }

    pub fn is_triangular(&self) -> bool {
        is_triangular(self, triangular_tol(self))
    }
}

/// A nonnegative real or `+inf`, kept as a tag rather than a float sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::Infinite => None,
        }
    }

    pub fn lt(&self, bound: f64) -> bool {
        matches!(self, ExtReal::Finite(v) if *v < bound)
    }

    pub fn le(&self, bound: f64) -> bool {
        matches!(self, ExtReal::Finite(v) if *v <= bound)
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtReal::Finite(v)),
            Raw::Tag(t) if t == "inf" => Ok(ExtReal::Infinite),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("bad extended real {t:?}"))),
        }
    }
}

/// Default scale-aware tolerance for `x1 x2 = x3`.
pub fn triangular_tol(x: &CPoint3) -> f64 {
    1e-10 * (1.0 + (x.x1 * x.x2).norm() + x.x3.norm())
}

pub fn is_triangular(x: &CPoint3, tol: f64) -> bool {
    x.defect().norm() <= tol
}

/// `(x3 z - x1) / (x2 z - 1)`, the constant `x1` on triangular points.
pub fn psi(z: C, x: &CPoint3) -> Result<C> {
    if x.is_triangular() {
        return Ok(x.x1);
    }
    let den = x.x2 * z - 1.0;
    if den.norm() <= 1e-300 {
        return Err(Error::PoleAtZ);
    }
    Ok((x.x3 * z - x.x1) / den)
}

/// `psi` with the first two coordinates exchanged.
pub fn upsilon_fn(z: C, x: &CPoint3) -> Result<C> {
    psi(z, &x.swap())
}

/// The supremum of `|psi(., x)|` over the disc.
pub fn d_of(x: &CPoint3) -> ExtReal {
    let m2 = x.x2.norm_sqr();
    if m2 < 1.0 {
        let num = (x.x1 - x.x2.conj() * x.x3).norm() + x.defect().norm();
        ExtReal::Finite(num / (1.0 - m2))
    } else if x.is_triangular() {
        ExtReal::Finite(x.x1.norm())
    } else {
        ExtReal::Infinite
    }
}

/// `max(D(x), D(x2, x1, x3))`, the quantity compared against `|lambda0|`
/// in the two-point Schwarz lemma.
pub fn schwarz_quotient(x: &CPoint3) -> ExtReal {
    match (d_of(x), d_of(&x.swap())) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.max(b)),
        _ => ExtReal::Infinite,
    }
}

/// Signed margins of the inequality criteria, positive inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    pub m3: f64,
    pub m3p: f64,
    pub m4: f64,
    pub m4p: f64,
    pub m5: f64,
    pub m6: f64,
}

pub fn margins(x: &CPoint3) -> Margins {
    let (a1, a2, a3) = (x.x1.norm_sqr(), x.x2.norm_sqr(), x.x3.norm_sqr());
    let r1 = (x.x1 - x.x2.conj() * x.x3).norm();
    let r2 = (x.x2 - x.x1.conj() * x.x3).norm();
    let q = x.defect().norm();
    Margins {
        m3: 1.0 - a2 - r1 - q,
        m3p: 1.0 - a1 - r2 - q,
        m4: 1.0 - (a1 - a2 + a3 + 2.0 * r2),
        m4p: 1.0 - (-a1 + a2 + a3 + 2.0 * r1),
        m5: 1.0 - (a1 + a2 - a3 + 2.0 * q),
        m6: 1.0 - a3 - r1 - r2,
    }
}

/// A continuous certificate for the closure: `x` lies in the closed
/// tetrablock iff this is `>= 0`.
pub fn closed_margin(x: &CPoint3) -> f64 {
    let m = margins(x);
    m.m3.min(m.m3p)
}

/// Per-criterion verdicts. Criterion (1) mirrors the canonical criterion (3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub in_set: bool,
    pub closed: bool,
    pub c1: bool,
    pub c2: bool,
    pub c2p: bool,
    pub c3: bool,
    pub c3p: bool,
    pub c4: bool,
    pub c4p: bool,
    pub c5: bool,
    pub c6: bool,
    pub c7: bool,
    pub c8: bool,
    pub c9: bool,
    pub margins: Margins,
    pub triangular: bool,
    pub d_value: ExtReal,
    pub tol: f64,
}

impl MembershipReport {
    pub fn verdicts(&self) -> [bool; 12] {
        [
            self.c1, self.c2, self.c2p, self.c3, self.c3p, self.c4, self.c4p, self.c5, self.c6,
            self.c7, self.c8, self.c9,
        ]
    }

    pub fn all_agree(&self) -> bool {
        self.verdicts().iter().all(|v| *v == self.in_set)
    }
}

struct Judge {
    closed: bool,
    tol: f64,
}

impl Judge {
    fn pos(&self, m: f64) -> bool {
        if self.closed {
            m >= -self.tol
        } else {
            m > self.tol
        }
    }

    fn below(&self, v: f64, bound: f64) -> bool {
        self.pos(bound - v)
    }
}

pub fn membership(x: &CPoint3, closed: bool, tol: f64) -> MembershipReport {
    let j = Judge { closed, tol };
    let tri = x.is_triangular();
    let m = margins(x);
    let (n1, n2, n3) = (x.x1.norm(), x.x2.norm(), x.x3.norm());

    let d = d_of(x);
    let d_swap = d_of(&x.swap());
    let c2 = d.finite().is_some_and(|v| j.below(v, 1.0)) && (!tri || j.below(n2, 1.0));
    let c2p = d_swap.finite().is_some_and(|v| j.below(v, 1.0)) && (!tri || j.below(n1, 1.0));

    let c3 = j.pos(m.m3) && (!closed || !tri || n1 <= 1.0 + tol);
    let c3p = j.pos(m.m3p) && (!closed || !tri || n2 <= 1.0 + tol);

    // (4), (4') and (5) only characterise the set once the modulus that the
    // underlying Mobius argument divides by is known to be below 1.
    let c4 = j.pos(m.m4) && j.below(n2, 1.0);
    let c4p = j.pos(m.m4p) && j.below(n1, 1.0);
    let c5 = j.pos(m.m5) && j.below(n3, 1.0) && (!tri || j.below(n1 + n2, 2.0));

    let c6 = j.pos(m.m6) && (!closed || (n3 - 1.0).abs() > tol || n1 <= 1.0 + tol);

    let c7 = j.below(op_norm(&matrix_rep_unchecked(x, false)), 1.0);
    let c8 = j.below(op_norm(&matrix_rep_unchecked(x, true)), 1.0);

    let c9 = if n3 < 1.0 - tol {
        match beta_params(x) {
            Ok((b1, b2)) => j.pos(1.0 - b1.norm() - b2.norm()),
            Err(_) => false,
        }
    } else if closed && (n3 - 1.0).abs() <= tol {
        (x.x1 - x.x2.conj() * x.x3).norm() <= tol && n1 <= 1.0 + tol
    } else {
        false
    };

    MembershipReport {
        in_set: c3,
        closed,
        c1: c3,
        c2,
        c2p,
        c3,
        c3p,
        c4,
        c4p,
        c5,
        c6,
        c7,
        c8,
        c9,
        margins: m,
        triangular: tri,
        d_value: d,
        tol,
    }
}

pub fn in_open(x: &CPoint3) -> bool {
    membership(x, false, DEFAULT_TOL).in_set
}

pub fn in_closure(x: &CPoint3) -> bool {
    membership(x, true, DEFAULT_TOL).in_set
}

fn matrix_rep_unchecked(x: &CPoint3, symmetric: bool) -> CMat2 {
    let p = if x.is_triangular() { C::new(0.0, 0.0) } else { x.defect() };
    if symmetric {
        let w = p.sqrt();
        CMat2::new(x.x1, w, w, x.x2)
    } else {
        let r = p.norm();
        let (b, c) = if r > 0.0 {
            let s = r.sqrt();
            (p * (s / r), C::new(s, 0.0))
        } else {
            (C::new(0.0, 0.0), C::new(0.0, 0.0))
        };
        CMat2::new(x.x1, b, c, x.x2)
    }
}

/// A matrix `A` with `pi(A) = x` and minimal operator norm: the symmetric
/// representative, or the balanced one with a positive (2,1) entry.
pub fn construct_matrix_rep(x: &CPoint3, symmetric: bool) -> Result<CMat2> {
    if !in_closure(x) {
        return Err(Error::Outside("closed tetrablock"));
    }
    Ok(matrix_rep_unchecked(x, symmetric))
}

/// Membership of a real triple in the open tetrahedron cut out by the four faces.
pub fn real_slice_member(x: &CPoint3, tol: f64) -> Result<bool> {
    if x.coords().iter().any(|z| z.im.abs() > tol) {
        return Err(Error::NotReal);
    }
    let (a, b, c) = (x.x1.re, x.x2.re, x.x3.re);
    Ok(-a + b - c + 1.0 > 0.0
        && -a - b + c + 1.0 > 0.0
        && a + b + c + 1.0 > 0.0
        && a - b - c + 1.0 > 0.0)
}
