//! The tetrablock `E = {x in C^3 : 1 - x1 z - x2 w + x3 z w != 0 for |z|, |w| <= 1}`:
//! membership, invariant distances, automorphisms, boundary structure, and
//! the constructive two-point Schwarz lemma with its 2x2 mu-synthesis reading.

pub mod autgroup;
pub mod error;
pub mod interpolate;
pub mod linalg;
pub mod metrics;
pub mod musyn;
pub mod sampling;
pub mod tetrablock;

pub use autgroup::DiscAut;
pub use error::{Error, Result};
pub use interpolate::{Interpolant, SchwarzWorkspace, Variant, VerificationReport};
pub use linalg::{CMat2, CVec2};
pub use musyn::SynthesisInstance;
pub use num_complex::Complex64;
pub use tetrablock::{CPoint3, ExtReal, MembershipReport, DEFAULT_TOL};
