//! Quiver schemes over truncated polynomial rings `R_d = C[ε]/ε^d`.
//!
//! Everything is generic over a base [`scalars::Field`]; the aliases below fix
//! it to Gaussian rationals `Q(i)`, which is what the command-line tool and
//! the property suites use.

pub mod error;
pub mod io;
pub mod linalg;
pub mod orbit;
pub mod quiver;
pub mod reflect;
pub mod regularize;
pub mod repn;
pub mod rng;
pub mod rmatrix;
pub mod scalars;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
pub use quiver::QuiverMult;
pub use scalars::{Field, GaussQ, TruncScalar};

/// An element of `R_d` over `Q(i)`.
pub type Trunc = TruncScalar<GaussQ>;
/// A matrix over `Q(i)`.
pub type Mat = linalg::Matrix<GaussQ>;
/// An `R`-linear map over `Q(i)`.
pub type Map = rmatrix::RMap<GaussQ>;
/// A representation of the doubled quiver over `Q(i)`.
pub type Rep = repn::Representation<GaussQ>;
/// A parameter vector `λ ∈ ⊕ R_{d_i}` over `Q(i)`.
pub type Params = weyl::ParamVector<GaussQ>;
/// An orbit datum over `Q(i)`.
pub type Orbit = orbit::OrbitSpec<GaussQ>;
/// Leg maps over `Q(i)`.
pub type Leg = orbit::LegPoint<GaussQ>;
