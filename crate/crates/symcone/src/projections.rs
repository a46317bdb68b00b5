//! Projection-lattice utilities: order and orthogonality predicates, the
//! induced projection map of a Hilbert isometry, extreme-point testing,
//! orthogonal simplices, and chains for the orthogonality relation.

use crate::algebra::{
    jordan_product, operator_commute, trace, trace_inner_product,
    AlgebraDescriptor, Element,
};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, orthonormal_complement};
use crate::metrics::{QuotientClass, Ray};
use crate::scalar::{real, Real};
use crate::spectral::{
    complement, is_projection, positivity_classify, projection_rank, spectral_decomposition,
    ConePosition,
};

const PROJ_TOL: f64 = 1e-7;

type ClassSource<'a, T> = Box<dyn FnMut(&Element<T>) -> Result<Element<T>> + 'a>;

fn require_projection<T: Real>(p: &Element<T>) -> Result<()> {
    if !is_projection(p, real(PROJ_TOL)) {
        return Err(Error::NotProjection("lattice operand".into()));
    }
    Ok(())
}

fn is_orthogonal_pair<T: Real>(p: &Element<T>, q: &Element<T>) -> Result<bool> {
    Ok(jordan_product(p, q)?.max_abs_coord() <= real(1e-9))
}

/// Order and structure predicates for a pair of projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePredicates {
    /// `p ∘ q = 0`.
    pub orthogonal: bool,
    /// `p <= q`, tested as `p ∘ q = p`.
    pub below: bool,
    /// `p` has rank one below the algebra rank.
    pub maximal_p: bool,
    /// `p` operator commutes with the whole algebra.
    pub central_p: bool,
}

pub fn lattice_predicates<T: Real>(
    p: &Element<T>,
    q: &Element<T>,
) -> Result<LatticePredicates> {
    require_projection(p)?;
    require_projection(q)?;
    let pq = jordan_product(p, q)?;
    Ok(LatticePredicates {
        orthogonal: pq.max_abs_coord() <= real(1e-9),
        below: pq.sub(p).max_abs_coord() <= real(1e-9),
        maximal_p: projection_rank(p)? == p.algebra().rank() - 1,
        central_p: crate::morphisms::is_central(p)?,
    })
}

/// A memoized map on projections, backed by a source that produces a
/// representative of the image class; images are canonicalized by shifting
/// the spectrum to zero and rescaling, then verified to be projections.
pub struct ProjectionMap<'a, T> {
    algebra: AlgebraDescriptor,
    tol: T,
    entries: Vec<(Element<T>, Element<T>)>,
    source: ClassSource<'a, T>,
}

impl<'a, T: Real> ProjectionMap<'a, T> {
    pub fn new(
        algebra: AlgebraDescriptor,
        tol: T,
        source: impl FnMut(&Element<T>) -> Result<Element<T>> + 'a,
    ) -> Self {
        ProjectionMap {
            algebra,
            tol,
            entries: Vec::new(),
            source: Box::new(source),
        }
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    /// The image of `p`: `theta(0) = 0`, `theta(e) = e`, and otherwise the
    /// unique projection representative of the image class.
    pub fn get(&mut self, p: &Element<T>) -> Result<Element<T>> {
        require_projection(p)?;
        let e = Element::unit(&self.algebra);
        if p.max_abs_coord() <= real(1e-9) {
            return Ok(Element::zero(&self.algebra));
        }
        if p.sub(&e).max_abs_coord() <= real(1e-9) {
            return Ok(e);
        }
        if let Some((_, q)) = self
            .entries
            .iter()
            .find(|(key, _)| key.sub(p).max_abs_coord() <= real(1e-8))
        {
            return Ok(q.clone());
        }
        let v = (self.source)(p)?;
        let frame = spectral_decomposition(&v)?;
        let (mn, mx) = (frame.min_eigenvalue(), frame.max_eigenvalue());
        if mx - mn <= real(1e-12) {
            return Err(Error::NotOrthoisomorphism(
                "image class of a nontrivial projection is scalar".into(),
            ));
        }
        let q = v.add_scalar(-mn).scale((mx - mn).recip());
        if !is_projection(&q, self.tol) {
            return Err(Error::NotOrthoisomorphism(
                "shifted and rescaled class is not a projection".into(),
            ));
        }
        self.entries.push((p.clone(), q.clone()));
        Ok(q)
    }
}

/// The projection map induced by a Hilbert isometry fixing the unit ray:
/// `theta(p)` is the projection representative of `log f(exp(ray p))`.
pub fn induced_projection_map<'a, T: Real>(
    alg: &AlgebraDescriptor,
    f: impl Fn(&Ray<T>) -> Result<Ray<T>> + 'a,
) -> Result<ProjectionMap<'a, T>> {
    let e = Element::unit(alg);
    let ebar = Ray::new(&e)?;
    if !f(&ebar)?.approx_eq(&ebar, real(1e-6)) {
        return Err(Error::NotAnIsometry(
            "induced projection map needs a map fixing the unit ray".into(),
        ));
    }
    Ok(ProjectionMap::new(alg.clone(), real(1e-6), move |p| {
        let img = f(&Ray::new(&crate::spectral::exp(p))?)?;
        crate::spectral::log(img.representative())
    }))
}

/// Whether a quotient class is an extreme point of the variation-norm unit
/// ball: after normalizing to variation one and shifting the minimum of the
/// spectrum to zero, the spectrum must be `{0, 1}`.
pub fn extreme_point_test<T: Real>(c: &QuotientClass<T>) -> Result<bool> {
    let v = c.variation_norm();
    if v <= real(1e-12) {
        return Err(Error::InvalidArgument(
            "zero quotient class has no direction".into(),
        ));
    }
    let scaled = c.representative().scale(v.recip());
    let frame = spectral_decomposition(&scaled)?;
    let mn = frame.min_eigenvalue();
    Ok(frame
        .eigenvalues()
        .iter()
        .map(|&l| l - mn)
        .all(|l| l.abs() <= real(1e-7) || (l - T::one()).abs() <= real(1e-7)))
}

/// Three pairwise orthogonal nontrivial projections summing to the unit.
#[derive(Clone, Debug)]
pub struct OrthogonalSimplex<T> {
    vertices: [Element<T>; 3],
}

impl<T: Real> OrthogonalSimplex<T> {
    pub fn new(p1: Element<T>, p2: Element<T>, p3: Element<T>) -> Result<Self> {
        let vertices = [p1, p2, p3];
        let e = Element::unit(vertices[0].algebra());
        let mut sum = Element::zero(vertices[0].algebra());
        for (i, p) in vertices.iter().enumerate() {
            require_projection(p)?;
            let t = trace(p);
            if t < real(0.5) || t > trace(&e) - real(0.5) {
                return Err(Error::InvalidProjection("trivial simplex vertex".into()));
            }
            for q in vertices.iter().skip(i + 1) {
                if !is_orthogonal_pair(p, q)? {
                    return Err(Error::InvalidProjection(
                        "simplex vertices must be orthogonal".into(),
                    ));
                }
            }
            sum = sum.add(p);
        }
        if sum.sub(&e).max_abs_coord() > real(1e-9) {
            return Err(Error::InvalidProjection(
                "simplex vertices must sum to the unit".into(),
            ));
        }
        Ok(OrthogonalSimplex { vertices })
    }

    pub fn vertices(&self) -> &[Element<T>; 3] {
        &self.vertices
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexPosition {
    Interior,
    BoundaryFace,
    /// In the affine hull but outside the simplex, hence outside the cone.
    Outside,
}

#[derive(Clone, Debug)]
pub struct SimplexMembership<T> {
    pub position: SimplexPosition,
    pub barycentric: [T; 3],
}

/// Locates `a` relative to the simplex through barycentric coordinates in
/// the trace form. Points off the affine hull beyond `tol` are an error.
pub fn simplex_membership<T: Real>(
    s: &OrthogonalSimplex<T>,
    a: &Element<T>,
    tol: T,
) -> Result<SimplexMembership<T>> {
    let mut coords = [T::zero(); 3];
    let mut recon = Element::zero(a.algebra());
    for (i, p) in s.vertices().iter().enumerate() {
        coords[i] = trace_inner_product(a, p) / trace_inner_product(p, p);
        recon = recon.add(&p.scale(coords[i]));
    }
    let scale = T::one().max(a.trace_norm());
    let residual = recon.sub(a).trace_norm() / scale;
    let affine_defect = (coords[0] + coords[1] + coords[2] - T::one()).abs();
    if residual > tol || affine_defect > tol {
        return Err(Error::OutsideAffineHull {
            residual: residual.max(affine_defect).to_f64().unwrap_or(f64::NAN),
        });
    }
    let any_negative = coords.iter().any(|&x| x < -tol);
    let any_zero = coords.iter().any(|&x| x.abs() <= tol);
    let position = if any_negative {
        SimplexPosition::Outside
    } else if any_zero {
        SimplexPosition::BoundaryFace
    } else {
        SimplexPosition::Interior
    };
    Ok(SimplexMembership {
        position,
        barycentric: coords,
    })
}

/// A finite sequence of projections witnessing the orthogonality relation:
/// consecutive entries are orthogonal with `p_i + p_{i+1} < e`, and every
/// entry is nontrivial and nonmaximal.
#[derive(Clone, Debug)]
pub struct ProjectionChain<T> {
    entries: Vec<Element<T>>,
}

impl<T: Real> ProjectionChain<T> {
    pub fn entries(&self) -> &[Element<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks all chain invariants at tolerance `1e-9`.
    pub fn validate(&self) -> Result<()> {
        let rank = self.entries[0].algebra().rank();
        for p in &self.entries {
            require_projection(p)?;
            let r = projection_rank(p)?;
            if r == 0 || r + 1 >= rank {
                return Err(Error::InvalidProjection(
                    "chain entries must be nontrivial and nonmaximal".into(),
                ));
            }
        }
        for w in self.entries.windows(2) {
            let (p, q) = (&w[0], &w[1]);
            if trace_inner_product(p, q).abs() > real(1e-9)
                || jordan_product(p, q)?.max_abs_coord() > real(1e-9)
            {
                return Err(Error::InvalidProjection(
                    "consecutive chain entries must be orthogonal".into(),
                ));
            }
            let rest = complement(p).sub(q);
            if !is_projection(&rest, real(1e-9)) || trace(&rest) < real(0.5) {
                return Err(Error::InvalidProjection(
                    "chain needs e - p_i - p_{i+1} to be a nonzero projection".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Range basis of a projection: orthonormal vectors for `Sym`, support
/// indicators for `Vector`. Used to manufacture chain intermediates.
fn rank_one_candidates<T: Real>(
    alg: &AlgebraDescriptor,
    p: &Element<T>,
    q: &Element<T>,
) -> Vec<Element<T>> {
    let mut out = Vec::new();
    match alg {
        AlgebraDescriptor::Vector(n) => {
            for i in 0..*n {
                let mut c = vec![T::zero(); *n];
                c[i] = T::one();
                out.push(Element::new(alg.clone(), c).unwrap());
            }
        }
        AlgebraDescriptor::Sym(n) => {
            let n = *n;
            let range_vectors = |x: &Element<T>| -> Vec<Vec<T>> {
                let frame = spectral_decomposition(x).expect("projection decomposes");
                let mut vs = Vec::new();
                for (&l, idem) in frame.eigenvalues().iter().zip(frame.idempotents()) {
                    if (l - T::one()).abs() > real(0.5) {
                        continue;
                    }
                    // orthonormal columns spanning the idempotent's range
                    let m = crate::linalg::Matrix::from_fn(n, n, |i, j| idem.coords()[i * n + j]);
                    if let Ok((evals, vecs)) = crate::linalg::jacobi_eigen(&m) {
                        for (k, &ev) in evals.iter().enumerate() {
                            if ev > real(0.5) {
                                vs.push(vecs.col(k));
                            }
                        }
                    }
                }
                vs
            };
            let vec_to_proj = |v: &[T]| {
                let mut c = vec![T::zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        c[i * n + j] = v[i] * v[j];
                    }
                }
                Element::new(alg.clone(), c).unwrap()
            };
            let p_range = range_vectors(p);
            let q_range = range_vectors(q);
            // top range vectors of the endpoints themselves
            for v in p_range.iter().chain(q_range.iter()).take(6) {
                out.push(vec_to_proj(v));
            }
            // directions orthogonal to both ranges, to one range, and to the
            // other
            let joint: Vec<Vec<T>> = {
                let mut fixed: Vec<Vec<T>> = Vec::new();
                for v in p_range.iter().chain(q_range.iter()) {
                    let mut w = v.clone();
                    for u in &fixed {
                        let proj = dot(u, &w);
                        for (wi, &ui) in w.iter_mut().zip(u) {
                            *wi -= proj * ui;
                        }
                    }
                    let nn = norm2(&w);
                    if nn > real(1e-8) {
                        for wi in &mut w {
                            *wi /= nn;
                        }
                        fixed.push(w);
                    }
                }
                fixed
            };
            for v in orthonormal_complement(&joint, n) {
                out.push(vec_to_proj(&v));
            }
            let p_orthonormal: Vec<Vec<T>> = p_range.clone();
            for v in orthonormal_complement(&p_orthonormal, n) {
                out.push(vec_to_proj(&v));
            }
            for v in orthonormal_complement(&q_range, n) {
                out.push(vec_to_proj(&v));
            }
        }
        AlgebraDescriptor::Spin(_) => {
            // all nontrivial projections are maximal; no usable candidates
        }
        AlgebraDescriptor::DirectSum(parts) => {
            for (i, sub) in parts.iter().enumerate() {
                let (pi, qi) = (p.part(i), q.part(i));
                for cand in rank_one_candidates(sub, &pi, &qi) {
                    out.push(Element::embed_part(alg, i, &cand).unwrap());
                }
                // spin components contribute their frame complements
                if let AlgebraDescriptor::Spin(_) = sub {
                    for x in [&pi, &qi] {
                        if is_projection(x, real(PROJ_TOL))
                            && trace(x) > real(0.5)
                            && trace(x) < real(1.5)
                        {
                            out.push(Element::embed_part(alg, i, &complement(x)).unwrap());
                        }
                    }
                }
                // whole component units and block complements
                let unit = Element::unit(sub);
                out.push(Element::embed_part(alg, i, &unit).unwrap());
                for x in [&pi, &qi] {
                    let comp = complement(x);
                    if comp.max_abs_coord() > real(0.5) {
                        out.push(Element::embed_part(alg, i, &comp).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Produces a chain witnessing `p ≈ q` of length at most 5.
///
/// The search assembles structured intermediates (central component units,
/// block complements, rank-one projections orthogonal to the ranges of the
/// endpoints) and runs a breadth-first search over valid orthogonal steps.
/// Spin factors and other rank-2 algebras have only maximal nontrivial
/// projections and are rejected.
pub fn orthogonality_chain<T: Real>(
    p: &Element<T>,
    q: &Element<T>,
) -> Result<ProjectionChain<T>> {
    const CAP: usize = 5;
    let alg = p.algebra().clone();
    if alg != *q.algebra() {
        return Err(Error::DescriptorMismatch(
            alg.to_string(),
            q.algebra().to_string(),
        ));
    }
    if alg.rank() <= 2 {
        return Err(Error::Rank2Algebra);
    }
    for x in [p, q] {
        require_projection(x)?;
        let r = projection_rank(x)?;
        if r == 0 || r >= alg.rank() - 1 {
            return Err(Error::InvalidProjection(
                "chain endpoints must be nontrivial and nonmaximal".into(),
            ));
        }
    }

    let nontrivial_nonmaximal = |x: &Element<T>| -> bool {
        is_projection(x, real(PROJ_TOL))
            && projection_rank(x).is_ok_and(|r| r >= 1 && r + 1 < alg.rank())
    };
    let valid_step = |x: &Element<T>, y: &Element<T>| -> bool {
        if let Ok(prod) = jordan_product(x, y) {
            if prod.max_abs_coord() > real(1e-9) {
                return false;
            }
        } else {
            return false;
        }
        let rest = complement(x).sub(y);
        is_projection(&rest, real(1e-9)) && trace(&rest) > real(0.5)
    };

    // candidate pool: endpoints plus structured intermediates
    let mut pool: Vec<Element<T>> = vec![p.clone(), q.clone()];
    for cand in rank_one_candidates(&alg, p, q) {
        if nontrivial_nonmaximal(&cand)
            && !pool.iter().any(|x| x.sub(&cand).max_abs_coord() < real(1e-8))
        {
            pool.push(cand);
        }
    }

    // breadth-first search from p to q over valid orthogonal steps
    let n = pool.len();
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 1;
    let mut frontier = vec![0usize];
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            if depth[i] >= CAP {
                continue;
            }
            for j in 0..n {
                if depth[j] != usize::MAX || !valid_step(&pool[i], &pool[j]) {
                    continue;
                }
                depth[j] = depth[i] + 1;
                prev[j] = Some(i);
                if j == 1 {
                    break 'bfs;
                }
                next.push(j);
            }
        }
        frontier = next;
    }
    if depth[1] == usize::MAX {
        return Err(Error::ChainNotFound { cap: CAP });
    }
    let mut order = vec![1usize];
    while let Some(i) = prev[*order.last().unwrap()] {
        order.push(i);
    }
    order.reverse();
    let chain = ProjectionChain {
        entries: order.into_iter().map(|i| pool[i].clone()).collect(),
    };
    chain.validate()?;
    Ok(chain)
}

/// Per-pair verification record for a sampled projection map.
#[derive(Clone, Debug)]
pub struct OrthoPairReport {
    /// `p ⊥ q` implies `theta(p) ⊥ theta(q)`.
    pub orthogonality_forward: bool,
    /// `theta(p) ⊥ theta(q)` implies `p ⊥ q`.
    pub orthogonality_backward: bool,
    /// `theta(p^perp) = theta(p)^perp`.
    pub complement_preserved: bool,
    /// operator commutation of the pair is preserved.
    pub commutation_preserved: bool,
}

impl OrthoPairReport {
    pub fn pass(&self) -> bool {
        self.orthogonality_forward
            && self.orthogonality_backward
            && self.complement_preserved
            && self.commutation_preserved
    }
}

#[derive(Clone, Debug, Default)]
pub struct OrthoReport {
    pub pairs: Vec<OrthoPairReport>,
}

impl OrthoReport {
    pub fn pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass())
    }
}

/// Checks orthogonality preservation in both directions, complement
/// preservation, and operator-commutation preservation on sampled pairs.
pub fn verify_orthoisomorphism<T: Real>(
    theta: &mut ProjectionMap<'_, T>,
    pairs: &[(Element<T>, Element<T>)],
) -> Result<OrthoReport> {
    let mut report = OrthoReport::default();
    for (p, q) in pairs {
        let tp = theta.get(p)?;
        let tq = theta.get(q)?;
        let before = is_orthogonal_pair(p, q)?;
        let after = is_orthogonal_pair(&tp, &tq)?;
        let tcomp = theta.get(&complement(p))?;
        let complement_preserved = tcomp.sub(&complement(&tp)).max_abs_coord() <= real(1e-6);
        let commutation_preserved = if operator_commute(p, q, real(1e-8))? {
            operator_commute(&tp, &tq, real(1e-6))?
        } else {
            true
        };
        report.pairs.push(OrthoPairReport {
            orthogonality_forward: !before || after,
            orthogonality_backward: !after || before,
            complement_preserved,
            commutation_preserved,
        });
    }
    Ok(report)
}

/// Positions of boundary points of a simplex agree with the cone boundary.
pub fn boundary_consistent<T: Real>(a: &Element<T>) -> bool {
    positivity_classify(a, real(1e-9)) == ConePosition::Boundary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor::*;
    use crate::metrics::MetricKind;
    use crate::morphisms::{build_isometry, JordanIsoRep};
    use crate::sampling;
    use crate::spectral;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn diag(entries: &[f64]) -> Element<f64> {
        let n = entries.len();
        let mut c = vec![0.0; n * n];
        for (i, &x) in entries.iter().enumerate() {
            c[i * n + i] = x;
        }
        Element::new(Sym(n), c).unwrap()
    }

    #[test]
    fn lattice_predicate_examples() {
        let p = diag(&[1.0, 0.0, 0.0]);
        let q = diag(&[0.0, 1.0, 0.0]);
        let r = lattice_predicates(&p, &q).unwrap();
        assert!(r.orthogonal && !r.below);

        let big = diag(&[1.0, 1.0, 0.0]);
        let r = lattice_predicates(&p, &big).unwrap();
        assert!(r.below && !r.orthogonal);

        assert!(lattice_predicates(&big, &p).unwrap().maximal_p);
        assert!(!lattice_predicates(&p, &big).unwrap().maximal_p);

        // central projections of a direct sum are the component units
        let alg = DirectSum(vec![Sym(2), Sym(2)]);
        let z = Element::embed_part(&alg, 0, &Element::unit(&Sym(2))).unwrap();
        let w = Element::embed_part(&alg, 1, &Element::unit(&Sym(2))).unwrap();
        assert!(lattice_predicates(&z, &w).unwrap().central_p);
        let off = Element::embed_part(&alg, 0, &diag(&[1.0, 0.0])).unwrap();
        assert!(!lattice_predicates(&off, &w).unwrap().central_p);

        assert!(lattice_predicates(&diag(&[0.5, 0.0]), &diag(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn induced_map_examples() {
        let alg = Sym(3);
        let mut rng = ChaCha12Rng::seed_from_u64(51);

        // identity isometry induces the identity map
        let mut theta = induced_projection_map(&alg, |a: &Ray<f64>| Ok(a.clone())).unwrap();
        let p = sampling::random_nontrivial_projection::<f64, _>(&alg, &mut rng);
        assert!(theta.get(&p).unwrap().approx_eq(&p, 1e-8));
        assert!(theta
            .get(&Element::zero(&alg))
            .unwrap()
            .max_abs_coord()
            .abs()
            < 1e-12);
        assert!(theta
            .get(&Element::unit(&alg))
            .unwrap()
            .approx_eq(&Element::unit(&alg), 1e-12));

        // inversion induces complementation
        let mut theta = induced_projection_map(&alg, |a: &Ray<f64>| {
            Ray::new(&spectral::inv(a.representative())?)
        })
        .unwrap();
        assert!(theta.get(&p).unwrap().approx_eq(&complement(&p), 1e-8));

        // an orthogonal conjugation induces conjugation of projections
        let u = sampling::random_orthogonal::<f64, _>(3, &mut rng);
        let rep = JordanIsoRep::OrthogonalConjugation(u);
        let rep2 = rep.clone();
        let mut theta = induced_projection_map(&alg, move |a: &Ray<f64>| {
            Ray::new(&rep2.apply(a.representative())?)
        })
        .unwrap();
        assert!(theta.get(&p).unwrap().approx_eq(&rep.apply(&p).unwrap(), 1e-8));
    }

    #[test]
    fn extreme_point_examples() {
        let p = QuotientClass::new(&diag(&[1.0, 0.0, 0.0]));
        assert!(extreme_point_test(&p).unwrap());
        let x = QuotientClass::new(&diag(&[1.0, 0.5, 0.0]));
        assert!(!extreme_point_test(&x).unwrap());
        let e = QuotientClass::new(&Element::<f64>::unit(&Sym(3)));
        assert!(extreme_point_test(&e).is_err());
    }

    #[test]
    fn simplex_membership_examples() {
        let p1 = diag(&[1.0, 0.0, 0.0]);
        let p2 = diag(&[0.0, 1.0, 0.0]);
        let p3 = diag(&[0.0, 0.0, 1.0]);
        let s = OrthogonalSimplex::new(p1.clone(), p2.clone(), p3.clone()).unwrap();

        let center = Element::unit(&Sym(3)).scale(1.0 / 3.0);
        let m = simplex_membership(&s, &center, 1e-9).unwrap();
        assert_eq!(m.position, SimplexPosition::Interior);

        let face = p1.add(&p2).scale(0.5);
        let m = simplex_membership(&s, &face, 1e-9).unwrap();
        assert_eq!(m.position, SimplexPosition::BoundaryFace);
        assert!(boundary_consistent(&face));

        let outside = p1.sub(&p2).add(&p3);
        let m = simplex_membership(&s, &outside, 1e-9).unwrap();
        assert_eq!(m.position, SimplexPosition::Outside);
        assert_eq!(
            positivity_classify(&outside, 1e-9),
            ConePosition::Outside
        );

        let off_hull = Element::new(
            Sym(3),
            vec![0.3, 0.2, 0.0, 0.2, 0.3, 0.0, 0.0, 0.0, 0.4],
        )
        .unwrap();
        assert!(matches!(
            simplex_membership(&s, &off_hull, 1e-9),
            Err(Error::OutsideAffineHull { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        // orthogonal, non-complementary pair: direct step
        let p = diag(&[1.0, 0.0, 0.0]);
        let q = diag(&[0.0, 1.0, 0.0]);
        let chain = orthogonality_chain(&p, &q).unwrap();
        assert_eq!(chain.len(), 2);
        chain.validate().unwrap();

        // random non-orthogonal rank-one pair: a middle projection appears
        let mut rng = ChaCha12Rng::seed_from_u64(52);
        let a = sampling::random_rank_one_projection::<f64, _>(&Sym(3), &mut rng);
        let b = sampling::random_rank_one_projection::<f64, _>(&Sym(3), &mut rng);
        let chain = orthogonality_chain(&a, &b).unwrap();
        assert!(chain.len() <= 3, "length {}", chain.len());
        chain.validate().unwrap();

        // spin factors have only maximal nontrivial projections
        let frame = crate::algebra::jordan_frame::<f64>(&Spin(3));
        assert!(matches!(
            orthogonality_chain(&frame[0], &frame[1]),
            Err(Error::Rank2Algebra)
        ));

        // complementary rank >= 2 pair in Sym(4) routes in at most 4 steps
        let p = diag(&[1.0, 1.0, 0.0, 0.0]);
        let chain = orthogonality_chain(&p, &complement(&p)).unwrap();
        assert!(chain.len() <= 4);
        chain.validate().unwrap();
    }

    #[test]
    fn chain_on_direct_sum() {
        let alg = DirectSum(vec![Sym(2), Sym(2)]);
        let mut rng = ChaCha12Rng::seed_from_u64(53);
        for _ in 0..10 {
            let p = sampling::random_nontrivial_projection::<f64, _>(&alg, &mut rng);
            let q = sampling::random_nontrivial_projection::<f64, _>(&alg, &mut rng);
            let rank = |x: &Element<f64>| projection_rank(x).unwrap();
            if rank(&p) >= 3 || rank(&q) >= 3 {
                continue;
            }
            let chain = orthogonality_chain(&p, &q).unwrap();
            chain.validate().unwrap();
            assert!(chain.len() <= 5);
        }
    }

    #[test]
    fn verify_orthoisomorphism_examples() {
        let alg = Sym(3);
        let mut rng = ChaCha12Rng::seed_from_u64(54);
        let pairs: Vec<_> = (0..10)
            .map(|_| {
                (
                    sampling::random_nontrivial_projection::<f64, _>(&alg, &mut rng),
                    sampling::random_nontrivial_projection::<f64, _>(&alg, &mut rng),
                )
            })
            .collect();

        // a Jordan isomorphism passes
        let u = sampling::random_orthogonal::<f64, _>(3, &mut rng);
        let rep = JordanIsoRep::OrthogonalConjugation(u);
        let mut theta = ProjectionMap::new(alg.clone(), 1e-6, move |p| rep.apply(p));
        assert!(verify_orthoisomorphism(&mut theta, &pairs).unwrap().pass());

        // complementation fails orthogonality preservation on some pair
        let mut theta =
            ProjectionMap::new(alg.clone(), 1e-6, |p: &Element<f64>| Ok(complement(p)));
        let p = diag(&[1.0, 0.0, 0.0]);
        let q = diag(&[0.0, 1.0, 0.0]);
        let report = verify_orthoisomorphism(&mut theta, &[(p, q)]).unwrap();
        assert!(!report.pass());
        assert!(!report.pairs[0].orthogonality_forward);

        // theta of a built Hilbert isometry passes after normalization
        let desc = sampling::random_descriptor::<f64, _>(&alg, MetricKind::Hilbert, &mut rng);
        let built = build_isometry(&desc).unwrap();
        let b_inv = spectral::inv(&spectral::sqrt(built.apply_ray(&Ray::new(&Element::unit(&alg)).unwrap()).unwrap().representative()).unwrap()).unwrap();
        let eps = desc.epsilon.unwrap();
        let g = move |a: &Ray<f64>| -> crate::error::Result<Ray<f64>> {
            let img = built.apply_ray(a)?;
            let normalized = crate::algebra::quadratic_rep(&b_inv, img.representative())?;
            let normalized = if eps == -1 {
                spectral::inv(&normalized)?
            } else {
                normalized
            };
            Ray::new(&normalized)
        };
        let mut theta = induced_projection_map(&alg, g).unwrap();
        assert!(verify_orthoisomorphism(&mut theta, &pairs).unwrap().pass());
    }
}
