//! Hilbert and Thompson metric geometry on symmetric cones.
//!
//! The crate implements the interiors of cones in finite-dimensional
//! Euclidean Jordan algebras (`Vector(n)`, `Sym(n)`, `Spin(d)`, and direct
//! sums) together with:
//!
//! * the gauge `M(a/b)`, Thompson's metric, and Hilbert's projective metric,
//!   each with a spectral formula and an independent definitional oracle;
//! * spectral decomposition and the five-function scalar calculus;
//! * geodesics `U_{a^{1/2}}(U_{a^{-1/2}}b)^t`, geometric means, point
//!   symmetries, geodesic-uniqueness classification, and explicit
//!   alternative-midpoint witnesses;
//! * the projection lattice: order predicates, orthogonal simplices, chains
//!   for the orthogonality relation, and extreme points of the variation
//!   ball;
//! * construction and black-box factorization of the isometries of both
//!   metrics into their canonical forms `U_b (pJa + p^perp J a^{-1})` and
//!   `U_b J(a^epsilon)`.
//!
//! All numerical code is generic over the scalar through [`scalar::Real`];
//! the `*64` aliases below fix `f64`, which the CLI and the verification
//! suite use.

pub mod algebra;
pub mod diagnostics;
pub mod error;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod metrics;
pub mod morphisms;
pub mod projections;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use metrics::MetricKind;
pub use scalar::Real;

pub type Element64 = algebra::Element<f64>;
pub type Matrix64 = linalg::Matrix<f64>;
pub type SpectralFrame64 = spectral::SpectralFrame<f64>;
pub type Ray64 = metrics::Ray<f64>;
pub type QuotientClass64 = metrics::QuotientClass<f64>;
pub type GeodesicClassification64 = geometry::GeodesicClassification<f64>;
pub type JordanIsoRep64 = morphisms::JordanIsoRep<f64>;
pub type IsometryDescriptor64 = morphisms::IsometryDescriptor<f64>;
pub type LinearizedMap64 = morphisms::LinearizedMap<f64>;
pub type ProjectionChain64 = projections::ProjectionChain<f64>;
pub type OrthogonalSimplex64 = projections::OrthogonalSimplex<f64>;
