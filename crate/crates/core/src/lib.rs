//! Exact-arithmetic toolkit for the ring-theoretic side of zeta functions:
//! the big Witt ring with its ghost coordinates, endomorphism classes and
//! their rational L-images, linear recursive sequences with their Hankel
//! coring, discrete linear dynamical systems and transfer functions,
//! torus-counting zeta morphisms, and zeta polynomials with their
//! critical-line root property.
//!
//! All algebra is exact over ℤ or ℚ (arbitrary precision); floating point
//! appears only in the numeric root-location layer.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod series;
pub mod ratfunc;
pub mod matrix;
pub mod witt;
pub mod recseq;
pub mod almkvist;
pub mod linsys;
pub mod torified;
pub mod zetapoly;
pub mod json;

pub use almkvist::{EndoClass, SigmaKind, SigmaSpec, VirtualEndo};
pub use error::{Error, Result};
pub use linsys::{LinSys, TransferFunction};
pub use torified::{GrothClass, Measure};
pub use zetapoly::{ComplexApprox, ZetaPolyInput, ZetaPolyResult};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use recseq::{RecSeq, TensorDecomp};
pub use scalar::{Ring, Scalar};
pub use series::TruncSeries;
pub use witt::{GhostVector, RationalityReport, WittElement};

/// Default truncation order for Witt-ring computations.
pub const DEFAULT_ORDER: usize = 32;
