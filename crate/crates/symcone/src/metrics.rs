//! The gauge, Thompson's and Hilbert's distances, ray and quotient-class
//! normalization, the rescaled distance sequences, and the Gromov product.

use crate::algebra::{trace, Element};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use crate::spectral::{
    self, norm, positivity_classify, require_interior, spectral_decomposition, ConePosition,
    NormKind, INTERIOR_MARGIN,
};

/// Which of the two metrics an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    Thompson,
    Hilbert,
}

/// A projective class in the cone interior, held as the representative with
/// `<a, e>` equal to the rank of the algebra.
#[derive(Clone, Debug)]
pub struct Ray<T> {
    representative: Element<T>,
}

impl<T: Real> Ray<T> {
    /// Normalizes an interior element to its canonical ray representative.
    pub fn new(a: &Element<T>) -> Result<Self> {
        require_interior(a)?;
        let r = trace(a);
        let rank = real::<T>(a.algebra().rank() as f64);
        Ok(Ray {
            representative: a.scale(rank / r),
        })
    }

    pub fn representative(&self) -> &Element<T> {
        &self.representative
    }

    /// Ray equality is plain coordinate comparison of representatives.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.representative.approx_eq(&other.representative, tol)
    }
}

/// An element of the quotient by the span of the unit, canonicalized so the
/// representative has zero trace.
#[derive(Clone, Debug)]
pub struct QuotientClass<T> {
    representative: Element<T>,
}

impl<T: Real> QuotientClass<T> {
    pub fn new(a: &Element<T>) -> Self {
        let rank = real::<T>(a.algebra().rank() as f64);
        QuotientClass {
            representative: a.add_scalar(-trace(a) / rank),
        }
    }

    pub fn representative(&self) -> &Element<T> {
        &self.representative
    }

    pub fn variation_norm(&self) -> T {
        norm(&self.representative, NormKind::Variation)
    }
}

/// Normalizes an interior element so its trace equals the rank.
pub fn normalize_ray<T: Real>(a: &Element<T>) -> Result<Ray<T>> {
    Ray::new(a)
}

/// `U_{b^{-1/2}} a`, the standard reduction of a pair to a pair with the
/// unit.
pub fn relative_element<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    if a.algebra() != b.algebra() {
        return Err(Error::DescriptorMismatch(
            a.algebra().to_string(),
            b.algebra().to_string(),
        ));
    }
    let b_inv_sqrt = spectral::power(b, real(-0.5))?;
    crate::algebra::quadratic_rep(&b_inv_sqrt, a)
}

/// The gauge `M(a/b) = inf { beta > 0 : a <= beta b }`, computed as the top
/// of the spectrum of `U_{b^{-1/2}} a`. Requires `b` interior and `a` in
/// the closed cone.
pub fn gauge<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    require_interior(b)?;
    if positivity_classify(a, real(INTERIOR_MARGIN)) == ConePosition::Outside {
        let frame = spectral_decomposition(a)?;
        return Err(Error::OutsideCone {
            min_eig: frame.min_eigenvalue().to_f64().unwrap_or(f64::NAN),
        });
    }
    let rel = relative_element(a, b)?;
    Ok(spectral_decomposition(&rel)?.max_eigenvalue())
}

/// Thompson's metric `d_T(a,b) = log max{M(a/b), M(b/a)}`, evaluated through
/// the spectral formula `|| log U_{b^{-1/2}} a ||`.
pub fn thompson_distance<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    require_interior(a)?;
    require_interior(b)?;
    let rel = relative_element(a, b)?;
    let frame = spectral_decomposition(&rel)?;
    let mn = frame.min_eigenvalue();
    let mx = frame.max_eigenvalue();
    if mn <= T::zero() {
        return Err(Error::NotInterior {
            min_eig: mn.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(mx.ln().abs().max(mn.ln().abs()))
}

/// Hilbert's metric `d_H(a,b) = log M(a/b) M(b/a)` on rays, evaluated as the
/// variation seminorm of `log U_{b^{-1/2}} a`.
pub fn hilbert_distance<T: Real>(a: &Ray<T>, b: &Ray<T>) -> Result<T> {
    let rel = relative_element(a.representative(), b.representative())?;
    let frame = spectral_decomposition(&rel)?;
    let mn = frame.min_eigenvalue();
    let mx = frame.max_eigenvalue();
    if mn <= T::zero() {
        return Err(Error::NotInterior {
            min_eig: mn.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(mx.ln() - mn.ln())
}

/// Convenience: Hilbert's distance between the rays of two interior
/// elements.
pub fn hilbert_distance_elements<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    hilbert_distance(&Ray::new(a)?, &Ray::new(b)?)
}

/// The rescaled distance `d_n(a,b) = n d(exp(a/n), exp(b/n))`, which
/// converges to `||a-b||` (Thompson) or `||[a]-[b]||_v` (Hilbert) as `n`
/// grows. For the Hilbert kind the inputs are reduced to their canonical
/// quotient representatives first.
pub fn scaled_distance<T: Real>(
    a: &Element<T>,
    b: &Element<T>,
    n: u32,
    kind: MetricKind,
) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument("scaled distance needs n >= 1".into()));
    }
    if a.algebra() != b.algebra() {
        return Err(Error::DescriptorMismatch(
            a.algebra().to_string(),
            b.algebra().to_string(),
        ));
    }
    let nt = real::<T>(n as f64);
    let guard = real::<T>(50.0);
    match kind {
        MetricKind::Thompson => {
            for x in [a, b] {
                if norm(x, NormKind::OrderUnit) / nt > guard {
                    return Err(Error::InvalidArgument(
                        "exp overflow guard: ||a||/n must stay at most 50".into(),
                    ));
                }
            }
            let ea = spectral::exp(&a.scale(nt.recip()));
            let eb = spectral::exp(&b.scale(nt.recip()));
            Ok(nt * thompson_distance(&ea, &eb)?)
        }
        MetricKind::Hilbert => {
            let qa = QuotientClass::new(a);
            let qb = QuotientClass::new(b);
            for x in [qa.representative(), qb.representative()] {
                if norm(x, NormKind::OrderUnit) / nt > guard {
                    return Err(Error::InvalidArgument(
                        "exp overflow guard: ||a||/n must stay at most 50".into(),
                    ));
                }
            }
            let ea = spectral::exp(&qa.representative().scale(nt.recip()));
            let eb = spectral::exp(&qb.representative().scale(nt.recip()));
            Ok(nt * hilbert_distance_elements(&ea, &eb)?)
        }
    }
}

/// The Gromov product `(a|b)_base = (d(a,base) + d(b,base) - d(a,b)) / 2`
/// with respect to Hilbert's metric.
pub fn gromov_product<T: Real>(a: &Ray<T>, b: &Ray<T>, base: &Ray<T>) -> Result<T> {
    let da = hilbert_distance(a, base)?;
    let db = hilbert_distance(b, base)?;
    let dab = hilbert_distance(a, b)?;
    Ok((da + db - dab) * real(0.5))
}

/// Linear-dependence test used by the geodesic classifiers: trace-normalized
/// representatives closer than `1e-10`.
pub fn linearly_dependent<T: Real>(a: &Element<T>, b: &Element<T>) -> bool {
    let (ta, tb) = (trace(a), trace(b));
    if ta.abs() < real(1e-300) || tb.abs() < real(1e-300) {
        return false;
    }
    a.scale(ta.recip())
        .sub(&b.scale(tb.recip()))
        .trace_norm()
        <= real(1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn diag2(a: f64, b: f64) -> Element<f64> {
        Element::new(Sym(2), vec![a, 0.0, 0.0, b]).unwrap()
    }

    #[test]
    fn gauge_examples() {
        let e = Element::unit(&Sym(2));
        let d = diag2(4.0, 2.0);
        assert!((gauge(&d, &e).unwrap() - 4.0).abs() < 1e-12);
        assert!((gauge(&e, &d).unwrap() - 0.5).abs() < 1e-12);
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let a: Element<f64> = sampling::random_interior(&Sym(3), &mut rng, 1.0);
        assert!((gauge(&a, &a).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gauge_rejects_bad_inputs() {
        let e = Element::unit(&Sym(2));
        let outside = diag2(1.0, -1.0);
        assert!(matches!(
            gauge(&e, &outside),
            Err(Error::NotInterior { .. })
        ));
        assert!(matches!(
            gauge(&outside, &e),
            Err(Error::OutsideCone { .. })
        ));
    }

    #[test]
    fn thompson_examples() {
        let e = Element::unit(&Sym(2));
        let d = diag2(4.0, 2.0);
        assert!((thompson_distance(&d, &e).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!(thompson_distance(&d, &d).unwrap().abs() < 1e-12);
    }

    #[test]
    fn thompson_on_direct_sum_is_max_of_components() {
        let alg = DirectSum(vec![Sym(2), Vector(3)]);
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        for _ in 0..10 {
            let a = sampling::random_interior(&alg, &mut rng, 1.0);
            let b = sampling::random_interior(&alg, &mut rng, 1.0);
            let whole = thompson_distance(&a, &b).unwrap();
            let parts = (0..2)
                .map(|i| thompson_distance(&a.part(i), &b.part(i)).unwrap())
                .fold(0.0f64, f64::max);
            assert!((whole - parts).abs() < 1e-11);
        }
    }

    #[test]
    fn hilbert_examples() {
        let e = Element::unit(&Sym(2));
        let d = diag2(4.0, 2.0);
        let dh = hilbert_distance_elements(&d, &e).unwrap();
        assert!((dh - 2f64.ln()).abs() < 1e-12);
        // projective invariance
        let dh2 = hilbert_distance_elements(&d.scale(7.5), &e.scale(0.3)).unwrap();
        assert!((dh - dh2).abs() < 1e-12);
    }

    #[test]
    fn hilbert_segment_toward_projection() {
        // d_H(t p + (1-t) e, e) = -log(1-t) for a nontrivial projection p
        let p = Element::new(Sym(3), vec![1., 0., 0., 0., 0., 0., 0., 0., 0.]).unwrap();
        let e = Element::unit(&Sym(3));
        for t in [0.25f64, 0.5, 0.9] {
            let x = p.scale(t).add(&e.scale(1.0 - t));
            let dh = hilbert_distance_elements(&x, &e).unwrap();
            assert!((dh + (1.0 - t).ln()).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn ray_normalization_examples() {
        let r = normalize_ray(&diag2(2.0, 2.0)).unwrap();
        assert!(r.representative().approx_eq(&Element::unit(&Sym(2)), 1e-14));
        let r = normalize_ray(&diag2(3.0, 1.0)).unwrap();
        assert!(r.representative().approx_eq(&diag2(1.5, 0.5), 1e-14));
        let s: Element<f64> = Element::new(Spin(1), vec![0.0, 5.0]).unwrap();
        let r = normalize_ray(&s).unwrap();
        assert!((r.representative().coords()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scaled_distance_examples() {
        // commuting inputs: d_n equals the norm for every n
        let a: Element<f64> = Element::new(Vector(3), vec![0.3, -0.2, 0.9]).unwrap();
        let b = Element::new(Vector(3), vec![-0.5, 0.4, 0.1]).unwrap();
        let target = norm(&a.sub(&b), NormKind::OrderUnit);
        for n in [1, 2, 16, 1024] {
            let dn = scaled_distance(&a, &b, n, MetricKind::Thompson).unwrap();
            assert!((dn - target).abs() < 1e-12, "n={n}");
        }
        // n = 1 is the plain distance of exponentials
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let a: Element<f64> = sampling::random_element(&Sym(2), &mut rng, 1.0);
        let b = sampling::random_element(&Sym(2), &mut rng, 1.0);
        let d1 = scaled_distance(&a, &b, 1, MetricKind::Thompson).unwrap();
        let direct = thompson_distance(&spectral::exp(&a), &spectral::exp(&b)).unwrap();
        assert!((d1 - direct).abs() < 1e-12);
        // convergence improves with n
        let target = norm(&a.sub(&b), NormKind::OrderUnit);
        let err4 = (scaled_distance(&a, &b, 4, MetricKind::Thompson).unwrap() - target).abs();
        let err1024 = (scaled_distance(&a, &b, 1024, MetricKind::Thompson).unwrap() - target).abs();
        assert!(err1024 < err4);
        assert!(scaled_distance(&a, &b, 0, MetricKind::Thompson).is_err());
        // the exp overflow guard rejects ||a||/n > 50
        let huge = Element::new(Vector(2), vec![200.0, 0.0]).unwrap();
        let small = Element::zero(&Vector(2));
        assert!(scaled_distance(&huge, &small, 1, MetricKind::Thompson).is_err());
        assert!(scaled_distance(&huge, &small, 8, MetricKind::Thompson).is_ok());
    }

    #[test]
    fn gromov_product_examples() {
        let mut rng = ChaCha12Rng::seed_from_u64(24);
        let base: Ray<f64> = Ray::new(&Element::unit(&Sym(3))).unwrap();
        let a = Ray::new(&sampling::random_interior(&Sym(3), &mut rng, 1.0)).unwrap();
        let b = Ray::new(&sampling::random_interior(&Sym(3), &mut rng, 1.0)).unwrap();
        // (a|a)_e = d_H(a, e)
        let gaa = gromov_product(&a, &a, &base).unwrap();
        assert!((gaa - hilbert_distance(&a, &base).unwrap()).abs() < 1e-12);
        // symmetry
        let gab = gromov_product(&a, &b, &base).unwrap();
        let gba = gromov_product(&b, &a, &base).unwrap();
        assert!((gab - gba).abs() < 1e-12);
        // agreement with the three distances
        let expect = 0.5
            * (hilbert_distance(&a, &base).unwrap() + hilbert_distance(&b, &base).unwrap()
                - hilbert_distance(&a, &b).unwrap());
        assert!((gab - expect).abs() < 1e-14);
        assert!(gab >= -1e-12);
    }

    #[test]
    fn quotient_class_is_trace_free() {
        let mut rng = ChaCha12Rng::seed_from_u64(25);
        let a: Element<f64> = sampling::random_element(&Sym(3), &mut rng, 1.0);
        let q = QuotientClass::new(&a);
        assert!(trace(q.representative()).abs() < 1e-12);
        // shifting by multiples of e lands in the same class
        let q2 = QuotientClass::new(&a.add_scalar(3.7));
        assert!(q.representative().approx_eq(q2.representative(), 1e-12));
    }

    #[test]
    fn dependence_test() {
        let a = diag2(1.0, 2.0);
        assert!(linearly_dependent(&a, &a.scale(4.0)));
        assert!(!linearly_dependent(&a, &diag2(2.0, 1.0)));
    }
}
