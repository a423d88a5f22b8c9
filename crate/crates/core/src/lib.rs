//! Exact-arithmetic engine for Segre classes of tautological bundles on
//! Hilbert schemes of points of a polarized K3 surface.
//!
//! The crate is organized around a small tower:
//!
//! * [`poly`] — multivariate polynomials over arbitrary-precision rationals,
//!   the coefficient ring for everything else;
//! * [`surface`] — the cohomology model of a polarized K3 surface together
//!   with bundle invariants, Mukai vectors and the diagonal push-forward;
//! * [`fock`] — the Heisenberg/Fock-space engine: Nakajima creation and
//!   annihilation operators, Virasoro operators, the boundary operator and
//!   integration over the Hilbert scheme;
//! * [`tautsegre`] — the Segre-class recursion for tautological bundles plus
//!   independent closed-form oracles for k = 2, 3;
//! * [`families`] — constructors and validity checks for the bundle families
//!   (twisted tangent bundles, Mukai–Lazarsfeld bundles, Ulrich bundles,
//!   powers of the polarization);
//! * [`positivity`] — exact positivity certificates built on Sturm chains,
//!   conic classification and rational root brackets;
//! * [`errata`] — engine-detected discrepancies in published formulas.
//!
//! All arithmetic is exact: there is no floating point anywhere in the math
//! core, and root bounds are reported as rational brackets.

pub mod errata;
pub mod error;
pub mod families;
pub mod fock;
pub mod poly;
pub mod positivity;
pub mod sturm;
pub mod surface;
pub mod tautsegre;

pub use error::Error;
pub use poly::{Poly, Rat, Sym};
pub use surface::{BundleInvariants, DiagonalTensor, MukaiVector, SurfaceClass, SurfaceModel};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
