//! Geodesics, geometric means, point symmetries, and geodesic-uniqueness
//! classification for both metrics.

use crate::algebra::{quadratic_rep, Element};
use crate::error::{Error, Result};
use crate::metrics::{linearly_dependent, relative_element, MetricKind};
use crate::scalar::{real, Real};
use crate::spectral::{self, require_interior, spectral_decomposition};

/// Outcome of the uniqueness classification for a pair of interior points.
///
/// `unique` is decided on the clustered spectrum of `U_{a^{-1/2}} b`; when
/// the geodesic is not unique, `witness` holds an alternative Thompson
/// midpoint.
#[derive(Clone, Debug)]
pub struct GeodesicClassification<T> {
    pub unique: bool,
    pub spectrum_points: Vec<T>,
    pub witness: Option<Element<T>>,
}

/// The point `gamma_a^b(t) = U_{a^{1/2}} (U_{a^{-1/2}} b)^t` of the standard
/// geodesic from `a` to `b`.
pub fn geodesic_point<T: Real>(a: &Element<T>, b: &Element<T>, t: T) -> Result<Element<T>> {
    require_interior(a)?;
    require_interior(b)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument("geodesic parameter must be finite".into()));
    }
    let rel = relative_element(b, a)?;
    let powed = spectral::power(&rel, t)?;
    let a_sqrt = spectral::sqrt(a)?;
    quadratic_rep(&a_sqrt, &powed)
}

/// The geometric mean `a # b = U_{a^{1/2}} (U_{a^{-1/2}} b)^{1/2}`: the
/// unique interior solution of `U_c a^{-1} = b` and the Thompson midpoint of
/// `a` and `b`.
pub fn geometric_mean<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    geodesic_point(a, b, real(0.5))
}

/// The symmetry around `c`: `S_c(a) = U_c a^{-1}`. Involutive, fixes exactly
/// `c`, and is an isometry for both metrics.
pub fn point_symmetry<T: Real>(c: &Element<T>, a: &Element<T>) -> Result<Element<T>> {
    require_interior(c)?;
    require_interior(a)?;
    quadratic_rep(c, &spectral::inv(a)?)
}

/// Classifies whether the geodesic between `a` and `b` is unique.
///
/// Thompson: unique iff the clustered spectrum of `U_{a^{-1/2}} b` is a
/// reciprocal pair `{1/beta, beta}`. Hilbert: unique iff it has exactly two
/// points. Inputs must be linearly independent; for non-unique pairs a
/// midpoint witness is attached.
pub fn classify_geodesic<T: Real>(
    a: &Element<T>,
    b: &Element<T>,
    metric: MetricKind,
) -> Result<GeodesicClassification<T>> {
    require_interior(a)?;
    require_interior(b)?;
    if linearly_dependent(a, b) {
        return Err(Error::LinearlyDependent);
    }
    let rel = relative_element(b, a)?;
    let frame = spectral_decomposition(&rel)?;
    let points = frame.eigenvalues().to_vec();
    let unique = match metric {
        MetricKind::Thompson => {
            points.len() == 2 && (points[0] * points[1] - T::one()).abs() <= real(1e-7)
        }
        MetricKind::Hilbert => points.len() == 2,
    } || points.len() == 1;
    let witness = if unique {
        None
    } else {
        Some(nonunique_midpoint_witness(a, b)?)
    };
    Ok(GeodesicClassification {
        unique,
        spectrum_points: points,
        witness,
    })
}

/// Builds an alternative Thompson midpoint for a pair whose geodesic is not
/// unique.
///
/// After reducing to `c = U_{a^{-1/2}} b`, the log spectrum `f_i` is clamped
/// at half its maximum modulus, `min(|f_i|, max|f|/2) sgn f_i`, inside the
/// associative subalgebra of `c`, and the result is carried back through
/// `U_{a^{1/2}}`. A spectral point with `|log lambda|` strictly below the
/// maximum must exist; otherwise the geodesic is unique and
/// [`Error::UniqueGeodesic`] is returned. Ties at the maximum produce no
/// witness in that coordinate.
pub fn nonunique_midpoint_witness<T: Real>(
    a: &Element<T>,
    b: &Element<T>,
) -> Result<Element<T>> {
    require_interior(a)?;
    require_interior(b)?;
    let rel = relative_element(b, a)?;
    let frame = spectral_decomposition(&rel)?;
    if frame.min_eigenvalue() <= T::zero() {
        return Err(Error::NotInterior {
            min_eig: frame.min_eigenvalue().to_f64().unwrap_or(f64::NAN),
        });
    }
    let logs: Vec<T> = frame.eigenvalues().iter().map(|&l| l.ln()).collect();
    let m = logs.iter().fold(T::zero(), |acc, &f| acc.max(f.abs()));
    let strict = logs
        .iter()
        .any(|&f| m - f.abs() > real::<T>(1e-12) * T::one().max(m));
    if !strict {
        return Err(Error::UniqueGeodesic);
    }
    let half_m = m * real(0.5);
    let clamped = frame.map_eigenvalues(|l| {
        let f = l.ln();
        (f.abs().min(half_m) * f.signum()).exp()
    });
    let a_sqrt = spectral::sqrt(a)?;
    quadratic_rep(&a_sqrt, &clamped)
}
