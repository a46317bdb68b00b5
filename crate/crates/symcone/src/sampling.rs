//! Seeded random generators for elements, projections, isomorphisms, and
//! isometry descriptors. Used by the verification suite, the CLI, and tests.

use rand::Rng;

use crate::algebra::{jordan_product, AlgebraDescriptor, Element};
use crate::linalg::Matrix;
use crate::morphisms::{IsometryDescriptor, JordanIsoRep};
use crate::scalar::{real, Real};
use crate::spectral::{self, spectral_decomposition};
use crate::MetricKind;

/// Uniform coordinates in `[-scale, scale]` (symmetrized for `Sym` blocks).
pub fn random_element<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
    scale: f64,
) -> Element<T> {
    let coords = (0..alg.storage_dim())
        .map(|_| real::<T>(rng.gen_range(-scale..scale)))
        .collect();
    Element::new(alg.clone(), coords).expect("finite random coordinates")
}

/// Cone-interior element `exp(x)` with `x` random of the given spread.
pub fn random_interior<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
    spread: f64,
) -> Element<T> {
    let x = random_element(alg, rng, spread);
    spectral::exp(&x)
}

/// Random projection: a random subset of the spectral idempotents of a
/// random element. May be trivial for small algebras; see
/// [`random_nontrivial_projection`].
pub fn random_projection<T: Real, R: Rng>(alg: &AlgebraDescriptor, rng: &mut R) -> Element<T> {
    let frame = spectral_decomposition(&random_element::<T, _>(alg, rng, 1.0))
        .expect("random element decomposes");
    let mut out = Element::zero(alg);
    for q in frame.idempotents() {
        if rng.gen_bool(0.5) {
            out = out.add(q);
        }
    }
    out
}

pub fn random_nontrivial_projection<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> Element<T> {
    let e = Element::<T>::unit(alg);
    loop {
        let p = random_projection(alg, rng);
        let t = crate::algebra::trace(&p);
        if t > real(0.5) && t < crate::algebra::trace(&e) - real(0.5) {
            return p;
        }
    }
}

/// Random rank-one projection taken from the frame of a random element.
pub fn random_rank_one_projection<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> Element<T> {
    loop {
        let frame = spectral_decomposition(&random_element::<T, _>(alg, rng, 1.0))
            .expect("random element decomposes");
        let picks: Vec<_> = frame
            .idempotents()
            .iter()
            .filter(|q| (crate::algebra::trace(q) - T::one()).abs() < real(0.1))
            .collect();
        if let Some(q) = picks.first() {
            return (*q).clone();
        }
    }
}

/// Random orthogonal matrix (polar factor of a random square matrix).
pub fn random_orthogonal<T: Real, R: Rng>(n: usize, rng: &mut R) -> Matrix<T> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| real::<T>(rng.gen_range(-1.0..1.0)));
        if let Ok(q) = m.polar_orthogonalize() {
            return q;
        }
    }
}

fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Random member of the representable Jordan-isomorphism family.
pub fn random_jordan_iso<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> JordanIsoRep<T> {
    match alg {
        AlgebraDescriptor::Vector(n) => JordanIsoRep::Permutation(random_permutation(*n, rng)),
        AlgebraDescriptor::Sym(n) => {
            if *n == 1 {
                JordanIsoRep::Identity
            } else {
                JordanIsoRep::OrthogonalConjugation(random_orthogonal(*n, rng))
            }
        }
        AlgebraDescriptor::Spin(d) => JordanIsoRep::SpinOrthogonal(random_orthogonal(*d, rng)),
        AlgebraDescriptor::DirectSum(parts) => {
            // permute only within groups of identical descriptors
            let n = parts.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut seen: Vec<usize> = Vec::new();
            for i in 0..n {
                if seen.contains(&i) {
                    continue;
                }
                let group: Vec<usize> = (i..n).filter(|&j| parts[j] == parts[i]).collect();
                let shuffled = {
                    let p = random_permutation(group.len(), rng);
                    p.iter().map(|&k| group[k]).collect::<Vec<_>>()
                };
                for (slot, src) in group.iter().zip(&shuffled) {
                    perm[*slot] = *src;
                }
                seen.extend_from_slice(&group);
            }
            let reps = (0..n)
                .map(|i| random_jordan_iso(&parts[i], rng))
                .collect();
            JordanIsoRep::SumIso { perm, parts: reps }
        }
    }
}

/// Random central projection (0/1 per associative direction, 0 or `e` per
/// factor component).
pub fn random_central_projection<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> Element<T> {
    match alg {
        AlgebraDescriptor::Vector(n) => {
            let coords = (0..*n)
                .map(|_| if rng.gen_bool(0.5) { T::one() } else { T::zero() })
                .collect();
            Element::new(alg.clone(), coords).unwrap()
        }
        AlgebraDescriptor::Sym(_) | AlgebraDescriptor::Spin(_) => {
            if rng.gen_bool(0.5) {
                Element::unit(alg)
            } else {
                Element::zero(alg)
            }
        }
        AlgebraDescriptor::DirectSum(parts) => {
            let comps: Vec<Element<T>> = parts
                .iter()
                .map(|p| random_central_projection(p, rng))
                .collect();
            Element::from_parts(alg, &comps).unwrap()
        }
    }
}

/// Random isometry descriptor for either metric.
pub fn random_descriptor<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    metric: MetricKind,
    rng: &mut R,
) -> IsometryDescriptor<T> {
    let b = random_interior(alg, rng, 0.8);
    let iso = random_jordan_iso(alg, rng);
    match metric {
        MetricKind::Thompson => IsometryDescriptor {
            metric,
            b,
            p: Some(random_central_projection(alg, rng)),
            epsilon: None,
            iso,
        },
        MetricKind::Hilbert => IsometryDescriptor {
            metric,
            b,
            p: None,
            epsilon: Some(if rng.gen_bool(0.5) { 1 } else { -1 }),
            iso,
        },
    }
}

/// Random commuting pair (both functions of one random element).
pub fn random_commuting_pair<T: Real, R: Rng>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> (Element<T>, Element<T>) {
    let x = random_element(alg, rng, 1.0);
    let frame = spectral_decomposition(&x).expect("random element decomposes");
    let mut a = Element::zero(alg);
    let mut b = Element::zero(alg);
    for q in frame.idempotents() {
        a = a.add(&q.scale(real(rng.gen_range(-1.0..1.0))));
        b = b.add(&q.scale(real(rng.gen_range(-1.0..1.0))));
    }
    let _ = jordan_product(&a, &b);
    (a, b)
}
