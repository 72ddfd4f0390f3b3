//! Exact lattice-point counting and Ehrhart polynomials for integral
//! convex polytopes.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point and no tolerance anywhere. The crate provides:
//!
//! - dense univariate polynomial arithmetic and exact interpolation
//!   ([`poly`]),
//! - exact real-root counting via Sturm sequences ([`roots`]),
//! - a polytope model with exact membership tests and a JSON spec format
//!   ([`polytope`]),
//! - a brute-force (optionally parallel) lattice-point counting engine and
//!   δ-vector extraction ([`counting`]),
//! - the Reeve tetrahedra `Q_m` and the derived prism families whose
//!   Ehrhart polynomials have negative middle coefficients for large `m`
//!   ([`family`]).

pub mod counting;
pub mod error;
pub mod family;
pub mod poly;
pub mod polytope;
pub mod rat;
pub mod roots;

pub use counting::{
    count_lattice_points, count_lattice_points_flat, count_lattice_points_with, delta_vector,
    ehrhart_polynomial, ehrhart_polynomial_with, CountOptions, DeltaVector,
};
pub use error::Error;
pub use family::{
    closed_form_ehrhart, coefficient_report, min_m_with_positive_root, min_negative_m,
    prism_coeff, reeve, reeve_family, reeve_polynomial, slope_factor, CoefficientReport,
};
pub use poly::Polynomial;
pub use polytope::{parse_spec, serialize_spec, LatticePolytope};
pub use rat::{binomial, rat, Rat, Sign};
pub use roots::{count_positive_real_roots, isolate_positive_roots, RootInterval};
