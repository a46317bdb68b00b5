//! Spectral decomposition, functional calculus, norms, and projection
//! machinery.

use crate::algebra::{
    quadratic_rep, AlgebraDescriptor, Element,
};
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, Matrix};
use crate::scalar::{real, Real};

/// Relative tolerance under which two eigenvalues count as one spectral
/// point. Geodesic-uniqueness classification is a set-cardinality question
/// and needs stable counting.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Default relative margin separating the cone interior from the boundary.
pub const INTERIOR_MARGIN: f64 = 1e-12;

/// Eigenvalues (clustered, descending) with a complete orthogonal system of
/// idempotents and the cluster multiplicities.
#[derive(Clone, Debug)]
pub struct SpectralFrame<T> {
    eigenvalues: Vec<T>,
    idempotents: Vec<Element<T>>,
    multiplicities: Vec<usize>,
}

impl<T: Real> SpectralFrame<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn idempotents(&self) -> &[Element<T>] {
        &self.idempotents
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> T {
        *self.eigenvalues.last().unwrap()
    }

    /// `sum_i f(lambda_i) q_i`.
    pub fn map_eigenvalues(&self, mut f: impl FnMut(T) -> T) -> Element<T> {
        let mut out = Element::zero(self.idempotents[0].algebra());
        for (&l, q) in self.eigenvalues.iter().zip(&self.idempotents) {
            out = out.add(&q.scale(f(l)));
        }
        out
    }

    pub fn reconstruct(&self) -> Element<T> {
        self.map_eigenvalues(|l| l)
    }
}

/// Raw (eigenvalue, idempotent) pairs before clustering, eigenvalues with
/// multiplicity one idempotent each.
fn raw_spectrum<T: Real>(a: &Element<T>) -> Result<Vec<(T, Element<T>)>> {
    let alg = a.algebra();
    match alg {
        AlgebraDescriptor::Vector(n) => Ok((0..*n)
            .map(|i| {
                let mut c = vec![T::zero(); *n];
                c[i] = T::one();
                (a.coords()[i], Element::new(alg.clone(), c).unwrap())
            })
            .collect()),
        AlgebraDescriptor::Sym(n) => {
            let n = *n;
            let m = Matrix::from_fn(n, n, |i, j| a.coords()[i * n + j]);
            let (evals, vecs) = jacobi_eigen(&m)?;
            Ok((0..n)
                .map(|k| {
                    let mut c = vec![T::zero(); n * n];
                    for i in 0..n {
                        for j in 0..n {
                            c[i * n + j] = vecs[(i, k)] * vecs[(j, k)];
                        }
                    }
                    (evals[k], Element::new(alg.clone(), c).unwrap())
                })
                .collect())
        }
        AlgebraDescriptor::Spin(d) => {
            let d = *d;
            let t = a.coords()[d];
            let norm_x = crate::linalg::norm2(&a.coords()[..d]);
            if !norm_x.is_finite() || !t.is_finite() {
                return Err(Error::EigenFailure("non-finite spin element".into()));
            }
            let scale = T::one().max(t.abs() + norm_x);
            if norm_x <= T::epsilon() * scale {
                // x = 0: single eigenvalue t with idempotent e; report it on
                // both frame slots so the frame stays complete.
                let half = real::<T>(0.5);
                let mut c_plus = vec![T::zero(); d + 1];
                c_plus[0] = half;
                c_plus[d] = half;
                let mut c_minus = vec![T::zero(); d + 1];
                c_minus[0] = -half;
                c_minus[d] = half;
                return Ok(vec![
                    (t, Element::new(alg.clone(), c_plus).unwrap()),
                    (t, Element::new(alg.clone(), c_minus).unwrap()),
                ]);
            }
            let half = real::<T>(0.5);
            let build = |sgn: T| {
                let mut c: Vec<T> = a
                    .coords()[..d]
                    .iter()
                    .map(|&x| sgn * x / (norm_x + norm_x))
                    .collect();
                c.push(half);
                Element::new(alg.clone(), c).unwrap()
            };
            Ok(vec![
                (t + norm_x, build(T::one())),
                (t - norm_x, build(-T::one())),
            ])
        }
        AlgebraDescriptor::DirectSum(parts) => {
            let mut out = Vec::new();
            for i in 0..parts.len() {
                for (l, q) in raw_spectrum(&a.part(i))? {
                    out.push((l, Element::embed_part(alg, i, &q)?));
                }
            }
            Ok(out)
        }
    }
}

/// Spectral decomposition with eigenvalue clustering. Two eigenvalues
/// belong to one spectral point iff their gap is at most
/// `CLUSTER_TOL * max(1, spectral radius)`.
pub fn spectral_decomposition<T: Real>(a: &Element<T>) -> Result<SpectralFrame<T>> {
    let mut raw = raw_spectrum(a)?;
    raw.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let radius = raw
        .iter()
        .fold(T::zero(), |acc, (l, _)| acc.max(l.abs()));
    let tol = real::<T>(CLUSTER_TOL) * T::one().max(radius);

    let mut eigenvalues = Vec::new();
    let mut idempotents: Vec<Element<T>> = Vec::new();
    let mut multiplicities = Vec::new();
    for (l, q) in raw {
        match eigenvalues.last() {
            Some(&prev) if prev - l <= tol => {
                let last = idempotents.last_mut().unwrap();
                *last = last.add(&q);
                *multiplicities.last_mut().unwrap() += 1;
            }
            _ => {
                eigenvalues.push(l);
                idempotents.push(q);
                multiplicities.push(1);
            }
        }
    }
    Ok(SpectralFrame {
        eigenvalues,
        idempotents,
        multiplicities,
    })
}

/// Scalar functions admitted by the functional calculus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarFunction<T> {
    Pow(T),
    Exp,
    Log,
    Sqrt,
    Inv,
}

impl<T: Real> ScalarFunction<T> {
    fn name(&self) -> &'static str {
        match self {
            ScalarFunction::Pow(_) => "pow",
            ScalarFunction::Exp => "exp",
            ScalarFunction::Log => "log",
            ScalarFunction::Sqrt => "sqrt",
            ScalarFunction::Inv => "inv",
        }
    }

    /// Whether the function needs a strictly positive spectrum.
    fn needs_positive(&self) -> bool {
        match self {
            ScalarFunction::Exp => false,
            ScalarFunction::Pow(alpha) => {
                let is_integer = (*alpha - alpha.round()).abs() < real(1e-12);
                !(is_integer && *alpha >= -real::<T>(1e-12))
            }
            _ => true,
        }
    }

    fn eval(&self, l: T) -> T {
        match self {
            ScalarFunction::Pow(alpha) => {
                let rounded = alpha.round();
                if (*alpha - rounded).abs() < real(1e-12) {
                    match rounded.to_i32() {
                        Some(k) => l.powi(k),
                        None => l.powf(*alpha),
                    }
                } else {
                    l.powf(*alpha)
                }
            }
            ScalarFunction::Exp => l.exp(),
            ScalarFunction::Log => l.ln(),
            ScalarFunction::Sqrt => l.sqrt(),
            ScalarFunction::Inv => l.recip(),
        }
    }
}

/// `sum_i f(lambda_i) q_i` over the spectral frame of `a`.
pub fn apply_scalar_function<T: Real>(
    a: &Element<T>,
    f: ScalarFunction<T>,
) -> Result<Element<T>> {
    let frame = spectral_decomposition(a)?;
    if f.needs_positive() && frame.min_eigenvalue() <= T::zero() {
        return Err(Error::DomainViolation {
            func: f.name(),
            min_eig: frame.min_eigenvalue().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(frame.map_eigenvalues(|l| f.eval(l)))
}

pub fn exp<T: Real>(a: &Element<T>) -> Element<T> {
    apply_scalar_function(a, ScalarFunction::Exp).expect("exp is total")
}

pub fn log<T: Real>(a: &Element<T>) -> Result<Element<T>> {
    apply_scalar_function(a, ScalarFunction::Log)
}

pub fn sqrt<T: Real>(a: &Element<T>) -> Result<Element<T>> {
    apply_scalar_function(a, ScalarFunction::Sqrt)
}

pub fn inv<T: Real>(a: &Element<T>) -> Result<Element<T>> {
    apply_scalar_function(a, ScalarFunction::Inv)
}

pub fn power<T: Real>(a: &Element<T>, alpha: T) -> Result<Element<T>> {
    apply_scalar_function(a, ScalarFunction::Pow(alpha))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// `max |sigma(a)|`: the order-unit norm of the algebra.
    OrderUnit,
    /// `max sigma(a) - min sigma(a)`: the variation seminorm (spectral
    /// diameter); vanishes exactly on multiples of the unit.
    Variation,
}

pub fn norm<T: Real>(a: &Element<T>, kind: NormKind) -> T {
    let frame = spectral_decomposition(a).expect("finite element decomposes");
    match kind {
        NormKind::OrderUnit => frame
            .eigenvalues()
            .iter()
            .fold(T::zero(), |acc, &l| acc.max(l.abs())),
        NormKind::Variation => frame.max_eigenvalue() - frame.min_eigenvalue(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

/// Classifies cone membership with a relative safety margin.
pub fn positivity_classify<T: Real>(a: &Element<T>, margin: T) -> ConePosition {
    let frame = spectral_decomposition(a).expect("finite element decomposes");
    let mn = frame.min_eigenvalue();
    let mx = frame.max_eigenvalue();
    let radius = mn.abs().max(mx.abs());
    if mn > margin * T::one().max(mx) {
        ConePosition::Interior
    } else if mn < -margin * T::one().max(radius) {
        ConePosition::Outside
    } else {
        ConePosition::Boundary
    }
}

/// Interior check with the default margin, as an error.
pub fn require_interior<T: Real>(a: &Element<T>) -> Result<()> {
    match positivity_classify(a, real(INTERIOR_MARGIN)) {
        ConePosition::Interior => Ok(()),
        _ => {
            let frame = spectral_decomposition(a)?;
            Err(Error::NotInterior {
                min_eig: frame.min_eigenvalue().to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

/// Whether every eigenvalue lies within `tol` of `{0, 1}`.
pub fn is_projection<T: Real>(a: &Element<T>, tol: T) -> bool {
    match spectral_decomposition(a) {
        Ok(frame) => frame
            .eigenvalues()
            .iter()
            .all(|&l| l.abs() <= tol || (l - T::one()).abs() <= tol),
        Err(_) => false,
    }
}

/// Rank of a projection: the number of eigenvalues within `1e-7` of one.
pub fn projection_rank<T: Real>(p: &Element<T>) -> Result<usize> {
    if !is_projection(p, real(1e-7)) {
        return Err(Error::NotProjection(format!("{:?}", p.algebra())));
    }
    let frame = spectral_decomposition(p)?;
    Ok(frame
        .eigenvalues()
        .iter()
        .zip(frame.multiplicities())
        .filter(|(&l, _)| (l - T::one()).abs() <= real(1e-7))
        .map(|(_, &m)| m)
        .sum())
}

/// The complement `e - p`.
pub fn complement<T: Real>(p: &Element<T>) -> Element<T> {
    Element::unit(p.algebra()).sub(p)
}

/// The Peirce projections of a projection `p`: `P1 = U_p`, `P0 = U_{p^perp}`
/// and `P_half = id - P1 - P0`. They are idempotent, pairwise annihilating,
/// and sum to the identity map.
#[derive(Clone, Debug)]
pub struct PeirceProjections<T> {
    p: Element<T>,
    p_perp: Element<T>,
}

pub fn peirce_projections<T: Real>(p: &Element<T>) -> Result<PeirceProjections<T>> {
    if !is_projection(p, real(1e-8)) {
        return Err(Error::NotProjection(
            "peirce decomposition needs a projection".into(),
        ));
    }
    Ok(PeirceProjections {
        p: p.clone(),
        p_perp: complement(p),
    })
}

impl<T: Real> PeirceProjections<T> {
    pub fn p1(&self, a: &Element<T>) -> Result<Element<T>> {
        quadratic_rep(&self.p, a)
    }

    pub fn p0(&self, a: &Element<T>) -> Result<Element<T>> {
        quadratic_rep(&self.p_perp, a)
    }

    pub fn p_half(&self, a: &Element<T>) -> Result<Element<T>> {
        Ok(a.sub(&self.p1(a)?).sub(&self.p0(a)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jordan_product;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use AlgebraDescriptor::*;

    fn frame_is_valid(a: &Element<f64>) {
        let frame = spectral_decomposition(a).unwrap();
        let e = Element::unit(a.algebra());
        let mut sum = Element::zero(a.algebra());
        for (i, q) in frame.idempotents().iter().enumerate() {
            assert!(
                jordan_product(q, q).unwrap().approx_eq(q, 1e-8),
                "idempotent law"
            );
            for r in frame.idempotents().iter().skip(i + 1) {
                assert!(
                    jordan_product(q, r).unwrap().max_abs_coord() < 1e-8,
                    "orthogonality"
                );
            }
            sum = sum.add(q);
        }
        assert!(sum.approx_eq(&e, 1e-8), "completeness");
        assert!(
            frame.reconstruct().sub(a).max_abs_coord() <= 1e-8 * scale_err(a),
            "reconstruction"
        );
    }

    fn scale_err(a: &Element<f64>) -> f64 {
        a.max_abs_coord().max(1.0)
    }

    #[test]
    fn vector_spectrum_sorted() {
        let a = Element::new(Vector(3), vec![3.0, 1.0, 2.0]).unwrap();
        let frame = spectral_decomposition(&a).unwrap();
        assert_eq!(frame.eigenvalues(), &[3.0, 2.0, 1.0]);
        assert_eq!(frame.idempotents()[0].coords(), &[1.0, 0.0, 0.0]);
        assert_eq!(frame.idempotents()[1].coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn spin_spectrum_examples() {
        // ((3,4),10) has eigenvalues {15, 5}
        let a: Element<f64> = Element::new(Spin(2), vec![3.0, 4.0, 10.0]).unwrap();
        let frame = spectral_decomposition(&a).unwrap();
        assert!((frame.eigenvalues()[0] - 15.0).abs() < 1e-14);
        assert!((frame.eigenvalues()[1] - 5.0).abs() < 1e-14);
        for q in frame.idempotents() {
            assert!(jordan_product(q, q).unwrap().approx_eq(q, 1e-14));
            assert!(is_projection(q, 1e-10));
        }
        assert!(frame.reconstruct().approx_eq(&a, 1e-14));
    }

    #[test]
    fn scalar_matrix_has_single_eigenvalue() {
        let a = Element::new(Sym(2), vec![2.0, 0.0, 0.0, 2.0]).unwrap();
        let frame = spectral_decomposition(&a).unwrap();
        assert_eq!(frame.eigenvalues().len(), 1);
        assert_eq!(frame.multiplicities(), &[2]);
        assert!(frame.idempotents()[0].approx_eq(&Element::unit(&Sym(2)), 1e-12));
    }

    #[test]
    fn random_frames_are_valid() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for alg in [
            Vector(4),
            Sym(3),
            Sym(5),
            Spin(4),
            DirectSum(vec![Sym(2), Spin(3), Vector(2)]),
        ] {
            for _ in 0..20 {
                let a = sampling::random_element(&alg, &mut rng, 2.0);
                frame_is_valid(&a);
            }
        }
    }

    #[test]
    fn log_exp_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        for _ in 0..10 {
            let a = sampling::random_element(&Sym(3), &mut rng, 0.7);
            let back = log(&exp(&a)).unwrap();
            assert!(back.approx_eq(&a, 1e-10));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..10 {
            let a: Element<f64> = sampling::random_interior(&Sym(3), &mut rng, 1.0);
            let s = sqrt(&a).unwrap();
            assert!(jordan_product(&s, &s).unwrap().approx_eq(&a, 1e-10));
        }
    }

    #[test]
    fn u_power_identity() {
        // U_{a^lambda} a^mu = a^{2 lambda + mu}
        let mut rng = ChaCha12Rng::seed_from_u64(14);
        let (lambda, mu) = (0.3, -0.7);
        for _ in 0..10 {
            let a: Element<f64> = sampling::random_interior(&Sym(3), &mut rng, 0.8);
            let lhs = quadratic_rep(&power(&a, lambda).unwrap(), &power(&a, mu).unwrap()).unwrap();
            let rhs = power(&a, 2.0 * lambda + mu).unwrap();
            assert!(lhs.sub(&rhs).max_abs_coord() < 1e-9 * scale_err(&rhs));
        }
    }

    #[test]
    fn domain_violations_error() {
        let a: Element<f64> = Element::new(Vector(2), vec![1.0, -0.5]).unwrap();
        assert!(matches!(
            log(&a),
            Err(Error::DomainViolation { func: "log", .. })
        ));
        assert!(inv(&a).is_err());
        assert!(power(&a, 0.5).is_err());
        assert!(power(&a, -1.0).is_err());
        // nonnegative integer powers stay total
        assert!(power(&a, 2.0).is_ok());
        assert!(exp(&a).coords().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn norm_examples() {
        let a: Element<f64> = Element::new(Sym(2), vec![3.0, 0.0, 0.0, -1.0]).unwrap();
        assert!((norm(&a, NormKind::OrderUnit) - 3.0).abs() < 1e-14);
        assert!((norm(&a, NormKind::Variation) - 4.0).abs() < 1e-14);
        let e = Element::<f64>::unit(&Sym(3));
        assert!(norm(&e, NormKind::Variation).abs() < 1e-14);
    }

    #[test]
    fn variation_equals_twice_best_scalar_shift() {
        // ||[a]||_v = 2 inf_mu ||a - mu e||, infimum scanned over a mu grid
        let mut rng = ChaCha12Rng::seed_from_u64(15);
        let a = sampling::random_element(&Sym(3), &mut rng, 1.0);
        let v = norm(&a, NormKind::Variation);
        let eval = |mu: f64| norm(&a.add_scalar(-mu), NormKind::OrderUnit);
        let mut best = (f64::INFINITY, 0.0);
        for k in -4000..=4000 {
            let mu = k as f64 * 1e-3;
            let n = eval(mu);
            if n < best.0 {
                best = (n, mu);
            }
        }
        // refine around the coarse grid minimum
        for k in -2000..=2000 {
            let mu = best.1 + k as f64 * 1e-6;
            best.0 = best.0.min(eval(mu));
        }
        assert!((2.0 * best.0 - v).abs() < 1e-5, "grid inf {} vs {v}", best.0);
    }

    #[test]
    fn positivity_examples() {
        let e = Element::<f64>::unit(&Sym(3));
        assert_eq!(positivity_classify(&e, 1e-12), ConePosition::Interior);
        let p = Element::new(Sym(2), vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(positivity_classify(&p, 1e-12), ConePosition::Boundary);
        let m = Element::new(Sym(2), vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(positivity_classify(&m, 1e-12), ConePosition::Outside);
    }

    #[test]
    fn projection_tests() {
        let d = Element::new(Vector(3), vec![1.0, 0.0, 1.0]).unwrap();
        assert!(is_projection(&d, 1e-10));
        let spin_idem = Element::new(Spin(2), vec![0.3, 0.4, 0.5]).unwrap();
        assert!(is_projection(&spin_idem, 1e-10));
        let not = Element::new(Vector(2), vec![0.5, 0.0]).unwrap();
        assert!(!is_projection(&not, 1e-10));
        assert_eq!(projection_rank(&d).unwrap(), 2);
    }

    #[test]
    fn peirce_projection_ranges() {
        let alg = Sym(2);
        let p = Element::new(alg.clone(), vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let peirce = peirce_projections(&p).unwrap();

        let e11 = Element::new(alg.clone(), vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let e22 = Element::new(alg.clone(), vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let off = Element::new(alg.clone(), vec![0.0, 1.0, 1.0, 0.0]).unwrap();

        assert!(peirce.p1(&e11).unwrap().approx_eq(&e11, 1e-14));
        assert!(peirce.p1(&e22).unwrap().max_abs_coord() < 1e-14);
        assert!(peirce.p1(&off).unwrap().max_abs_coord() < 1e-14);

        assert!(peirce.p0(&e22).unwrap().approx_eq(&e22, 1e-14));
        assert!(peirce.p0(&e11).unwrap().max_abs_coord() < 1e-14);

        assert!(peirce.p_half(&off).unwrap().approx_eq(&off, 1e-14));
        assert!(peirce.p_half(&e11).unwrap().max_abs_coord() < 1e-14);

        // p = e and p = 0 are the identity and zero splittings
        let e = Element::unit(&alg);
        let pe = peirce_projections(&e).unwrap();
        assert!(pe.p1(&off).unwrap().approx_eq(&off, 1e-14));
        assert!(pe.p0(&off).unwrap().max_abs_coord() < 1e-14);
        let pz = peirce_projections(&Element::zero(&alg)).unwrap();
        assert!(pz.p0(&off).unwrap().approx_eq(&off, 1e-14));
    }

    #[test]
    fn peirce_maps_sum_to_identity() {
        let mut rng = ChaCha12Rng::seed_from_u64(16);
        let p = sampling::random_nontrivial_projection::<f64, _>(&Sym(3), &mut rng);
        let peirce = peirce_projections(&p).unwrap();
        for c in crate::algebra::canonical_basis::<f64>(&Sym(3)) {
            let total = peirce
                .p1(&c)
                .unwrap()
                .add(&peirce.p_half(&c).unwrap())
                .add(&peirce.p0(&c).unwrap());
            assert!(total.approx_eq(&c, 1e-9));
        }
    }
}
