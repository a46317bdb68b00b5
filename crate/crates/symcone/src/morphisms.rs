//! Jordan-isomorphism representations, order-isomorphism factorization, and
//! construction and black-box factorization of Thompson and Hilbert
//! isometries.
//!
//! Linear maps on an algebra are stored as matrices acting on the
//! trace-orthonormal coordinates of [`Element::to_vec_coords`].

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::algebra::{
    canonical_basis, default_kernel_tol, jordan_product, operator_commute, quadratic_rep,
    AlgebraDescriptor, Element,
};
use crate::error::{Error, Result};
use crate::linalg::{orthonormal_complement, Matrix};
use crate::metrics::{MetricKind, Ray};
use crate::projections::ProjectionMap;
use crate::sampling;
use crate::scalar::{real, Real};
use crate::spectral::{self, is_projection, require_interior, spectral_decomposition};

/// Seeds, probe counts, and residual thresholds shared by linearization and
/// factorization. Deterministic by default.
#[derive(Clone, Copy, Debug)]
pub struct FactorConfig {
    pub seed: u64,
    pub probes: usize,
    /// Accepted linearity / round-trip residual.
    pub threshold: f64,
    /// Accepted defect when matching a linear map to the representable
    /// family.
    pub rep_match_tol: f64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            seed: 0x53c0_4e5d,
            probes: 20,
            threshold: 1e-6,
            rep_match_tol: 1e-7,
        }
    }
}

/// Matrix (in trace-orthonormal coordinates) of a linear map given as a
/// closure.
pub fn map_matrix<T: Real>(
    alg: &AlgebraDescriptor,
    mut f: impl FnMut(&Element<T>) -> Result<Element<T>>,
) -> Result<Matrix<T>> {
    let dim = alg.dim();
    let mut m = Matrix::zeros(dim, dim);
    for (k, c) in canonical_basis::<T>(alg).iter().enumerate() {
        let img = f(c)?;
        m.set_col(k, &img.to_vec_coords());
    }
    Ok(m)
}

/// Applies a coordinate matrix to an element.
pub fn apply_matrix<T: Real>(
    alg: &AlgebraDescriptor,
    m: &Matrix<T>,
    a: &Element<T>,
) -> Result<Element<T>> {
    Element::from_vec_coords(alg, &m.matvec(&a.to_vec_coords()))
}

/// Matrix of the quadratic representation `U_a`.
pub fn quadratic_rep_matrix<T: Real>(a: &Element<T>) -> Result<Matrix<T>> {
    map_matrix(a.algebra(), |x| quadratic_rep(a, x))
}

/// Matrix of Jordan multiplication by `s`.
pub fn mult_operator_matrix<T: Real>(s: &Element<T>) -> Result<Matrix<T>> {
    map_matrix(s.algebra(), |x| jordan_product(s, x))
}

/// Orthonormal basis of the trace-zero complement of the unit, as columns.
pub fn quotient_basis<T: Real>(alg: &AlgebraDescriptor) -> Matrix<T> {
    let dim = alg.dim();
    let e = Element::<T>::unit(alg);
    let ve = e.to_vec_coords();
    let n = crate::linalg::norm2(&ve);
    let unit_dir: Vec<T> = ve.iter().map(|&x| x / n).collect();
    let rest = orthonormal_complement(&[unit_dir], dim);
    let mut b = Matrix::zeros(dim, rest.len());
    for (j, col) in rest.iter().enumerate() {
        b.set_col(j, col);
    }
    b
}

/// The closed family of representable Jordan isomorphisms.
///
/// For the supported algebras these exhaust the Jordan isomorphisms:
/// orthogonal conjugations on `Sym(n)`, orthogonal maps of the vector part
/// on `Spin(d)`, coordinate permutations on `Vector(n)`, and component
/// permutations with per-component representations on direct sums.
#[derive(Clone, Debug, PartialEq)]
pub enum JordanIsoRep<T> {
    Identity,
    /// `a -> u a u^T` on `Sym(n)` for an orthogonal `u`.
    OrthogonalConjugation(Matrix<T>),
    /// `(x, t) -> (Ox, t)` on `Spin(d)` for an orthogonal `O`.
    SpinOrthogonal(Matrix<T>),
    /// `x_i -> x_{perm[i]}` on `Vector(n)`.
    Permutation(Vec<usize>),
    /// Component `i` of the output is `parts[i]` applied to component
    /// `perm[i]` of the input.
    SumIso {
        perm: Vec<usize>,
        parts: Vec<JordanIsoRep<T>>,
    },
}

fn perm_is_bijection(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    perm.iter().all(|&i| {
        if i < n && !seen[i] {
            seen[i] = true;
            true
        } else {
            false
        }
    })
}

impl<T: Real> JordanIsoRep<T> {
    /// Applies the isomorphism to an element of a compatible algebra.
    pub fn apply(&self, a: &Element<T>) -> Result<Element<T>> {
        let alg = a.algebra();
        match (self, alg) {
            (JordanIsoRep::Identity, _) => Ok(a.clone()),
            (JordanIsoRep::OrthogonalConjugation(u), AlgebraDescriptor::Sym(n)) => {
                let n = *n;
                if u.rows() != n || u.cols() != n {
                    return Err(Error::InvalidArgument("conjugation shape mismatch".into()));
                }
                let m = Matrix::from_fn(n, n, |i, j| a.coords()[i * n + j]);
                let out = u.matmul(&m).matmul(&u.transpose());
                Element::new(alg.clone(), out.data().to_vec())
            }
            (JordanIsoRep::SpinOrthogonal(o), AlgebraDescriptor::Spin(d)) => {
                let d = *d;
                if o.rows() != d || o.cols() != d {
                    return Err(Error::InvalidArgument("spin map shape mismatch".into()));
                }
                let mut coords = o.matvec(&a.coords()[..d]);
                coords.push(a.coords()[d]);
                Element::new(alg.clone(), coords)
            }
            (JordanIsoRep::Permutation(perm), AlgebraDescriptor::Vector(n)) => {
                if perm.len() != *n || !perm_is_bijection(perm) {
                    return Err(Error::InvalidArgument("invalid coordinate permutation".into()));
                }
                let coords = perm.iter().map(|&i| a.coords()[i]).collect();
                Element::new(alg.clone(), coords)
            }
            (JordanIsoRep::SumIso { perm, parts }, AlgebraDescriptor::DirectSum(sub)) => {
                if perm.len() != sub.len() || parts.len() != sub.len() || !perm_is_bijection(perm)
                {
                    return Err(Error::InvalidArgument("invalid component permutation".into()));
                }
                let comps = (0..sub.len())
                    .map(|i| {
                        if sub[perm[i]] != sub[i] {
                            return Err(Error::DescriptorMismatch(
                                sub[perm[i]].to_string(),
                                sub[i].to_string(),
                            ));
                        }
                        parts[i].apply(&a.part(perm[i]))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Element::from_parts(alg, &comps)
            }
            _ => Err(Error::InvalidArgument(format!(
                "representation does not act on {alg}"
            ))),
        }
    }

    /// Coordinate matrix on the given algebra.
    pub fn matrix(&self, alg: &AlgebraDescriptor) -> Result<Matrix<T>> {
        map_matrix(alg, |x| self.apply(x))
    }

    pub fn inverse(&self) -> JordanIsoRep<T> {
        match self {
            JordanIsoRep::Identity => JordanIsoRep::Identity,
            JordanIsoRep::OrthogonalConjugation(u) => {
                JordanIsoRep::OrthogonalConjugation(u.transpose())
            }
            JordanIsoRep::SpinOrthogonal(o) => JordanIsoRep::SpinOrthogonal(o.transpose()),
            JordanIsoRep::Permutation(perm) => {
                let mut inv = vec![0; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j] = i;
                }
                JordanIsoRep::Permutation(inv)
            }
            JordanIsoRep::SumIso { perm, parts } => {
                let n = perm.len();
                let mut inv_perm = vec![0; n];
                let mut inv_parts = vec![JordanIsoRep::Identity; n];
                for i in 0..n {
                    inv_perm[perm[i]] = i;
                    inv_parts[perm[i]] = parts[i].inverse();
                }
                JordanIsoRep::SumIso {
                    perm: inv_perm,
                    parts: inv_parts,
                }
            }
        }
    }

    /// Checks the invariants: orthogonal blocks, unit preservation, and
    /// multiplicativity on the canonical basis.
    pub fn validate(&self, alg: &AlgebraDescriptor) -> Result<()> {
        self.validate_orthogonality()?;
        let e = Element::unit(alg);
        if !self.apply(&e)?.approx_eq(&e, real(1e-9)) {
            return Err(Error::InvalidArgument("representation is not unital".into()));
        }
        let basis = canonical_basis::<T>(alg);
        for (i, ci) in basis.iter().enumerate() {
            for cj in basis.iter().skip(i) {
                let lhs = self.apply(&jordan_product(ci, cj)?)?;
                let rhs = jordan_product(&self.apply(ci)?, &self.apply(cj)?)?;
                if lhs.sub(&rhs).max_abs_coord() > real(1e-9) {
                    return Err(Error::InvalidArgument(
                        "representation is not multiplicative".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn validate_orthogonality(&self) -> Result<()> {
        let check = |u: &Matrix<T>| -> Result<()> {
            let g = u.transpose().matmul(u);
            if g.sub(&Matrix::identity(u.rows())).max_abs() > real(1e-10) {
                return Err(Error::InvalidArgument("block is not orthogonal".into()));
            }
            Ok(())
        };
        match self {
            JordanIsoRep::OrthogonalConjugation(u) | JordanIsoRep::SpinOrthogonal(u) => check(u),
            JordanIsoRep::SumIso { parts, .. } => {
                parts.iter().try_for_each(|p| p.validate_orthogonality())
            }
            _ => Ok(()),
        }
    }
}

/// Whether a coordinate matrix is a Jordan isomorphism: unital and
/// multiplicative on all canonical basis pairs within `tol`.
pub fn check_jordan_isomorphism<T: Real>(
    alg: &AlgebraDescriptor,
    m: &Matrix<T>,
    tol: T,
) -> Result<bool> {
    let dim = alg.dim();
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::InvalidArgument(format!(
            "matrix is {}x{}, algebra coordinate space has dim {dim}",
            m.rows(),
            m.cols()
        )));
    }
    let e = Element::<T>::unit(alg);
    if !apply_matrix(alg, m, &e)?.approx_eq(&e, tol) {
        return Ok(false);
    }
    let basis = canonical_basis::<T>(alg);
    let images: Vec<Element<T>> = basis
        .iter()
        .map(|c| apply_matrix(alg, m, c))
        .collect::<Result<_>>()?;
    for (i, ci) in basis.iter().enumerate() {
        for (j, cj) in basis.iter().enumerate().skip(i) {
            let lhs = apply_matrix(alg, m, &jordan_product(ci, cj)?)?;
            let rhs = jordan_product(&images[i], &images[j])?;
            if lhs.sub(&rhs).max_abs_coord() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Factors a linear order isomorphism as `T = U_b J` with `b = (Te)^{1/2}`.
pub fn factor_order_isomorphism<T: Real>(
    alg: &AlgebraDescriptor,
    m: &Matrix<T>,
) -> Result<(Element<T>, JordanIsoRep<T>)> {
    let te = apply_matrix(alg, m, &Element::unit(alg))?;
    require_interior(&te)
        .map_err(|_| Error::NotAnIsometry("Te is not interior: not an order isomorphism".into()))?;
    let b = spectral::sqrt(&te)?;
    let u_inv = quadratic_rep_matrix(&spectral::inv(&b)?)?;
    let j = u_inv.matmul(m);
    if !check_jordan_isomorphism(alg, &j, real(1e-7))? {
        return Err(Error::NotAnIsometry(
            "U_{(Te)^{-1/2}} T is not a Jordan isomorphism".into(),
        ));
    }
    let rep = match_jordan_rep(alg, &j, real(1e-7))?;
    Ok((b, rep))
}

/// Matches a Jordan-isomorphism matrix to the representable family by
/// least-squares recovery of the orthogonal data followed by
/// re-orthogonalization; accepted when the rebuilt matrix agrees within
/// `tol`.
pub fn match_jordan_rep<T: Real>(
    alg: &AlgebraDescriptor,
    m: &Matrix<T>,
    tol: T,
) -> Result<JordanIsoRep<T>> {
    let dim = alg.dim();
    if m.sub(&Matrix::identity(dim)).max_abs() <= tol {
        return Ok(JordanIsoRep::Identity);
    }
    let rep = match alg {
        AlgebraDescriptor::Sym(n) => {
            let u = recover_conjugation(alg, m, *n)?;
            JordanIsoRep::OrthogonalConjugation(u)
        }
        AlgebraDescriptor::Spin(d) => {
            let block = Matrix::from_fn(*d, *d, |i, j| m[(i, j)]);
            let o = block.polar_orthogonalize().map_err(|_| {
                Error::UnrepresentableIso("spin block is singular".into())
            })?;
            JordanIsoRep::SpinOrthogonal(o)
        }
        AlgebraDescriptor::Vector(n) => {
            let mut perm = vec![usize::MAX; *n];
            for j in 0..*n {
                let col = m.col(j);
                let (best, _) = col
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                    .unwrap();
                // column j is the image of coordinate j
                perm[best] = j;
            }
            if !perm_is_bijection(&perm) {
                return Err(Error::UnrepresentableIso(
                    "vector map is not a coordinate permutation".into(),
                ));
            }
            JordanIsoRep::Permutation(perm)
        }
        AlgebraDescriptor::DirectSum(parts) => {
            let offsets = part_vec_offsets(alg);
            let n = parts.len();
            let mut perm = vec![usize::MAX; n];
            let mut reps = vec![JordanIsoRep::Identity; n];
            for (j, &(coff, clen)) in offsets.iter().enumerate() {
                // where does component j land?
                let mut best = (T::zero(), usize::MAX);
                for (i, &(roff, rlen)) in offsets.iter().enumerate() {
                    let block = Matrix::from_fn(rlen, clen, |r, c| m[(roff + r, coff + c)]);
                    let norm = block.frobenius_norm();
                    if norm > best.0 {
                        best = (norm, i);
                    }
                }
                let i = best.1;
                if i == usize::MAX || parts[i] != parts[j] {
                    return Err(Error::UnrepresentableIso(
                        "direct-sum map does not permute isomorphic components".into(),
                    ));
                }
                let (roff, rlen) = offsets[i];
                let block = Matrix::from_fn(rlen, clen, |r, c| m[(roff + r, coff + c)]);
                perm[i] = j;
                reps[i] = match_jordan_rep(&parts[i], &block, tol)?;
            }
            if !perm_is_bijection(&perm) {
                return Err(Error::UnrepresentableIso(
                    "component assignment is not a permutation".into(),
                ));
            }
            JordanIsoRep::SumIso { perm, parts: reps }
        }
    };
    let rebuilt = rep.matrix(alg)?;
    let defect = rebuilt.sub(m).max_abs();
    if defect > tol {
        return Err(Error::UnrepresentableIso(format!(
            "family fit residual {:e} exceeds {:e}",
            defect.to_f64().unwrap_or(f64::NAN),
            tol.to_f64().unwrap_or(f64::NAN),
        )));
    }
    Ok(rep)
}

/// Recovers `u` with `J a = u a u^T` from the images of the rank-one frame
/// matrices: column `i` of `u` is the top eigenvector of `J(E_ii)`, with
/// relative signs fixed through the images of the off-diagonal basis.
fn recover_conjugation<T: Real>(
    alg: &AlgebraDescriptor,
    m: &Matrix<T>,
    n: usize,
) -> Result<Matrix<T>> {
    let mut u = Matrix::zeros(n, n);
    let diag_unit = |i: usize| {
        let mut c = vec![T::zero(); n * n];
        c[i * n + i] = T::one();
        Element::new(alg.clone(), c).unwrap()
    };
    for i in 0..n {
        let img = apply_matrix(alg, m, &diag_unit(i))?;
        let frame = spectral_decomposition(&img)?;
        if (frame.max_eigenvalue() - T::one()).abs() > real(0.2) {
            return Err(Error::UnrepresentableIso(
                "diagonal image is not a rank-one projection".into(),
            ));
        }
        // top eigenvector of the rank-one image
        let q = &frame.idempotents()[0];
        let col = top_eigvec_of_rank_one(q, n)?;
        u.set_col(i, &col);
    }
    // fix relative signs against the images of (E_0i + E_i0)/sqrt(2)
    for i in 1..n {
        let mut c = vec![T::zero(); n * n];
        c[i] = T::one() / real::<T>(2.0).sqrt();
        c[i * n] = c[i];
        let img = apply_matrix(alg, m, &Element::new(alg.clone(), c)?)?;
        let v0 = u.col(0);
        let vi = u.col(i);
        let mut corr = T::zero();
        for r in 0..n {
            for s in 0..n {
                corr += img.coords()[r * n + s] * (v0[r] * vi[s] + vi[r] * v0[s]);
            }
        }
        if corr < T::zero() {
            let flipped: Vec<T> = vi.iter().map(|&x| -x).collect();
            u.set_col(i, &flipped);
        }
    }
    u.polar_orthogonalize()
        .map_err(|_| Error::UnrepresentableIso("recovered frame is degenerate".into()))
}

fn top_eigvec_of_rank_one<T: Real>(q: &Element<T>, n: usize) -> Result<Vec<T>> {
    // q = v v^T: any column with a significant diagonal entry is parallel
    // to v.
    let mut best = 0;
    for i in 1..n {
        if q.coords()[i * n + i] > q.coords()[best * n + best] {
            best = i;
        }
    }
    let d = q.coords()[best * n + best];
    if d <= real(1e-6) {
        return Err(Error::UnrepresentableIso("degenerate rank-one image".into()));
    }
    let scale = d.sqrt();
    Ok((0..n).map(|i| q.coords()[i * n + best] / scale).collect())
}

/// Vec-coordinate offsets of direct-sum components.
fn part_vec_offsets(alg: &AlgebraDescriptor) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in alg.parts() {
        out.push((off, p.dim()));
        off += p.dim();
    }
    out
}

/// Canonical parameters of a metric isometry.
///
/// Thompson: `f(a) = U_b (p J a + p^perp J a^{-1})` with a central
/// projection `p`. Hilbert: `f(ray a) = ray U_b J(a^epsilon)`.
#[derive(Clone, Debug)]
pub struct IsometryDescriptor<T> {
    pub metric: MetricKind,
    pub b: Element<T>,
    pub p: Option<Element<T>>,
    pub epsilon: Option<i8>,
    pub iso: JordanIsoRep<T>,
}

/// A validated, directly applicable isometry.
#[derive(Clone, Debug)]
pub struct BuiltIsometry<T> {
    descriptor: IsometryDescriptor<T>,
    p_perp: Option<Element<T>>,
}

/// Whether `p` operator commutes with the whole algebra.
pub fn is_central<T: Real>(p: &Element<T>) -> Result<bool> {
    for c in canonical_basis::<T>(p.algebra()) {
        if !operator_commute(p, &c, default_kernel_tol(p, &c).max(real(1e-8)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validates a descriptor and returns the callable isometry.
pub fn build_isometry<T: Real>(desc: &IsometryDescriptor<T>) -> Result<BuiltIsometry<T>> {
    require_interior(&desc.b)?;
    let alg = desc.b.algebra();
    desc.iso.validate(alg)?;
    match desc.metric {
        MetricKind::Thompson => {
            let p = desc
                .p
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("Thompson descriptor needs p".into()))?;
            if p.algebra() != alg {
                return Err(Error::DescriptorMismatch(
                    alg.to_string(),
                    p.algebra().to_string(),
                ));
            }
            if !is_projection(p, real(1e-8)) {
                return Err(Error::NotProjection("descriptor field p".into()));
            }
            if !is_central(p)? {
                return Err(Error::InvalidArgument(
                    "descriptor field p is not central".into(),
                ));
            }
            Ok(BuiltIsometry {
                descriptor: desc.clone(),
                p_perp: Some(spectral::complement(p)),
            })
        }
        MetricKind::Hilbert => {
            match desc.epsilon {
                Some(1) | Some(-1) => {}
                _ => {
                    return Err(Error::InvalidArgument(
                        "Hilbert descriptor needs epsilon in {1, -1}".into(),
                    ))
                }
            }
            Ok(BuiltIsometry {
                descriptor: desc.clone(),
                p_perp: None,
            })
        }
    }
}

impl<T: Real> BuiltIsometry<T> {
    pub fn descriptor(&self) -> &IsometryDescriptor<T> {
        &self.descriptor
    }

    pub fn metric(&self) -> MetricKind {
        self.descriptor.metric
    }

    /// Thompson action on interior elements.
    pub fn apply_point(&self, a: &Element<T>) -> Result<Element<T>> {
        if self.descriptor.metric != MetricKind::Thompson {
            return Err(Error::InvalidArgument(
                "point action is defined by Thompson descriptors".into(),
            ));
        }
        require_interior(a)?;
        let d = &self.descriptor;
        let p = d.p.as_ref().unwrap();
        let p_perp = self.p_perp.as_ref().unwrap();
        let ja = d.iso.apply(a)?;
        let ja_inv = d.iso.apply(&spectral::inv(a)?)?;
        let mix = jordan_product(p, &ja)?.add(&jordan_product(p_perp, &ja_inv)?);
        quadratic_rep(&d.b, &mix)
    }

    /// Hilbert action on rays.
    pub fn apply_ray(&self, a: &Ray<T>) -> Result<Ray<T>> {
        if self.descriptor.metric != MetricKind::Hilbert {
            return Err(Error::InvalidArgument(
                "ray action is defined by Hilbert descriptors".into(),
            ));
        }
        let d = &self.descriptor;
        let rep = a.representative();
        let powered = if d.epsilon == Some(1) {
            rep.clone()
        } else {
            spectral::inv(rep)?
        };
        let out = quadratic_rep(&d.b, &d.iso.apply(&powered)?)?;
        Ray::new(&out)
    }
}

/// The matrix of `S a = log f(exp a)` (full space) or of its quotient
/// version (trace-zero complement), plus the measured linearity defect.
#[derive(Clone, Debug)]
pub struct LinearizedMap<T> {
    pub metric: MetricKind,
    pub matrix: Matrix<T>,
    pub residual: T,
    /// Columns: the orthonormal quotient basis (Hilbert only).
    pub quotient_basis: Option<Matrix<T>>,
    algebra: AlgebraDescriptor,
}

impl<T: Real> LinearizedMap<T> {
    /// Applies `S`. For the Hilbert kind the input is reduced to its
    /// trace-zero representative first and the output is trace-zero.
    pub fn apply(&self, a: &Element<T>) -> Result<Element<T>> {
        match self.metric {
            MetricKind::Thompson => apply_matrix(&self.algebra, &self.matrix, a),
            MetricKind::Hilbert => {
                let b = self.quotient_basis.as_ref().unwrap();
                let v = a.to_vec_coords();
                let coords = b.transpose().matvec(&v);
                let out = b.matvec(&self.matrix.matvec(&coords));
                Element::from_vec_coords(&self.algebra, &out)
            }
        }
    }
}

/// Linearizes a Thompson isometry fixing the unit through `Sa = log f(exp
/// a)`. The matrix is assembled from basis probes; the residual is the
/// worst linearity defect over `config.probes` random combinations.
pub fn linearize_thompson_isometry<T: Real>(
    alg: &AlgebraDescriptor,
    f: impl Fn(&Element<T>) -> Result<Element<T>>,
    config: &FactorConfig,
) -> Result<LinearizedMap<T>> {
    let e = Element::unit(alg);
    let fe = f(&e)?;
    if fe.sub(&e).max_abs_coord() > real(1e-6) {
        return Err(Error::NotAnIsometry(
            "linearization needs a map fixing the unit".into(),
        ));
    }
    let s = |a: &Element<T>| -> Result<Element<T>> { spectral::log(&f(&spectral::exp(a))?) };
    let matrix = map_matrix(alg, s)?;

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut residual = T::zero();
    for _ in 0..config.probes {
        let a = sampling::random_element(alg, &mut rng, 0.8);
        let via_matrix = apply_matrix(alg, &matrix, &a)?;
        let direct = spectral::log(&f(&spectral::exp(&a))?)?;
        residual = residual.max(via_matrix.sub(&direct).max_abs_coord());
    }
    if residual > real(config.threshold) {
        return Err(Error::ResidualExceeded {
            stage: "thompson linearization",
            residual: residual.to_f64().unwrap_or(f64::NAN),
            threshold: config.threshold,
        });
    }
    Ok(LinearizedMap {
        metric: MetricKind::Thompson,
        matrix,
        residual,
        quotient_basis: None,
        algebra: alg.clone(),
    })
}

/// Linearizes a Hilbert isometry fixing the unit ray through
/// `S[a] = log f(exp [a])` on the trace-zero complement of the unit.
pub fn linearize_hilbert_isometry<T: Real>(
    alg: &AlgebraDescriptor,
    f: impl Fn(&Ray<T>) -> Result<Ray<T>>,
    config: &FactorConfig,
) -> Result<LinearizedMap<T>> {
    let e = Element::unit(alg);
    let ebar = Ray::new(&e)?;
    if !f(&ebar)?.approx_eq(&ebar, real(1e-6)) {
        return Err(Error::NotAnIsometry(
            "linearization needs a map fixing the unit ray".into(),
        ));
    }
    let basis = quotient_basis::<T>(alg);
    let q = basis.cols();
    let rank = real::<T>(alg.rank() as f64);

    let s_image = |a: &Element<T>| -> Result<Vec<T>> {
        let img = f(&Ray::new(&spectral::exp(a))?)?;
        let l = spectral::log(img.representative())?;
        let l0 = l.add_scalar(-crate::algebra::trace(&l) / rank);
        Ok(basis.transpose().matvec(&l0.to_vec_coords()))
    };

    let mut matrix = Matrix::zeros(q, q);
    for j in 0..q {
        let w = Element::from_vec_coords(alg, &basis.col(j))?;
        matrix.set_col(j, &s_image(&w)?);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut residual = T::zero();
    for _ in 0..config.probes {
        let coords: Vec<T> = (0..q)
            .map(|_| real::<T>(rand::Rng::gen_range(&mut rng, -0.8..0.8)))
            .collect();
        let a = Element::from_vec_coords(alg, &basis.matvec(&coords))?;
        let direct = s_image(&a)?;
        let via = matrix.matvec(&coords);
        let defect = direct
            .iter()
            .zip(&via)
            .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()));
        residual = residual.max(defect);
    }
    if residual > real(config.threshold) {
        return Err(Error::ResidualExceeded {
            stage: "hilbert linearization",
            residual: residual.to_f64().unwrap_or(f64::NAN),
            threshold: config.threshold,
        });
    }
    Ok(LinearizedMap {
        metric: MetricKind::Hilbert,
        matrix,
        residual,
        quotient_basis: Some(basis),
        algebra: alg.clone(),
    })
}

/// Factors a bijective Thompson isometry into `(b, p, J)`.
///
/// `b = f(e)^{1/2}`; the normalized map is linearized, the central symmetry
/// `s = Se` splits off `p = (s + e)/2`, and `J = s ∘ S` is matched to the
/// representable family. The rebuilt map must agree with the black box on
/// random probes within `config.threshold`.
pub fn factor_thompson_isometry<T: Real>(
    alg: &AlgebraDescriptor,
    f: impl Fn(&Element<T>) -> Result<Element<T>>,
    config: &FactorConfig,
) -> Result<IsometryDescriptor<T>> {
    let e = Element::unit(alg);
    let fe = f(&e)?;
    require_interior(&fe)?;
    let b = spectral::sqrt(&fe)?;
    let b_inv = spectral::inv(&b)?;
    let g = |a: &Element<T>| -> Result<Element<T>> { quadratic_rep(&b_inv, &f(a)?) };

    let lin = linearize_thompson_isometry(alg, g, config)?;
    let s = lin.apply(&e)?;
    let p = s.add(&e).scale(real(0.5));
    if !is_projection(&p, real(config.threshold)) {
        return Err(Error::NotProjection(
            "recovered (Se + e)/2 is not a projection".into(),
        ));
    }
    if !is_central(&p)? {
        return Err(Error::NotAnIsometry(
            "recovered projection is not central".into(),
        ));
    }
    let j_mat = mult_operator_matrix(&s)?.matmul(&lin.matrix);
    if !check_jordan_isomorphism(alg, &j_mat, real(1e-6))? {
        return Err(Error::NotAnIsometry(
            "s ∘ S is not a Jordan isomorphism".into(),
        ));
    }
    let iso = match_jordan_rep(alg, &j_mat, real(config.rep_match_tol))?;

    let desc = IsometryDescriptor {
        metric: MetricKind::Thompson,
        b,
        p: Some(p),
        epsilon: None,
        iso,
    };
    let built = build_isometry(&desc)?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed ^ 0x9e37_79b9);
    let mut worst = T::zero();
    for _ in 0..config.probes {
        let a = sampling::random_interior(alg, &mut rng, 0.8);
        let want = f(&a)?;
        let got = built.apply_point(&a)?;
        let scale = T::one().max(want.max_abs_coord());
        worst = worst.max(got.sub(&want).max_abs_coord() / scale);
    }
    if worst > real(config.threshold) {
        return Err(Error::ResidualExceeded {
            stage: "thompson factorization round-trip",
            residual: worst.to_f64().unwrap_or(f64::NAN),
            threshold: config.threshold,
        });
    }
    Ok(desc)
}

/// Extends a sampled projection map to a Jordan isomorphism through the
/// spectral formula `J(a) = sum_i lambda_i theta(p_i)` applied to the
/// canonical basis, then matches the result to the representable family.
pub fn extend_orthoisomorphism<T: Real>(
    alg: &AlgebraDescriptor,
    theta: &mut ProjectionMap<'_, T>,
) -> Result<JordanIsoRep<T>> {
    let dim = alg.dim();
    let mut matrix = Matrix::zeros(dim, dim);
    for (k, c) in canonical_basis::<T>(alg).iter().enumerate() {
        let frame = spectral_decomposition(c)?;
        let mut img = Element::zero(alg);
        for (&l, q) in frame.eigenvalues().iter().zip(frame.idempotents()) {
            if l.abs() <= real(1e-14) {
                continue;
            }
            img = img.add(&theta.get(q)?.scale(l));
        }
        matrix.set_col(k, &img.to_vec_coords());
    }
    if !check_jordan_isomorphism(alg, &matrix, real(1e-6))? {
        return Err(Error::NotOrthoisomorphism(
            "spectral extension fails multiplicativity".into(),
        ));
    }
    match_jordan_rep(alg, &matrix, real(1e-7))
}

/// Orthogonal triples `(p1, p2, p3)` with `p1 + p2 + p3 = e` used to orient
/// epsilon; two distinct simplices where the algebra admits them.
fn epsilon_simplices<T: Real>(alg: &AlgebraDescriptor) -> Vec<[Element<T>; 3]> {
    let group3 = |frame: &[Element<T>]| -> Option<[Element<T>; 3]> {
        if frame.len() < 3 {
            return None;
        }
        let rest = frame[2..]
            .iter()
            .fold(Element::zero(alg), |acc, q| acc.add(q));
        Some([frame[0].clone(), frame[1].clone(), rest])
    };
    let primary = crate::algebra::jordan_frame::<T>(alg);
    let mut out = Vec::new();
    if let Some(s) = group3(&primary) {
        out.push(s);
    }
    if let Some(alt) = alternative_frame::<T>(alg) {
        if let Some(s) = group3(&alt) {
            out.push(s);
        }
    } else if primary.len() >= 4 {
        // different grouping of the same frame
        let rest = primary[..primary.len() - 2]
            .iter()
            .skip(1)
            .fold(primary[0].clone(), |acc, q| acc.add(q));
        out.push([
            rest,
            primary[primary.len() - 2].clone(),
            primary[primary.len() - 1].clone(),
        ]);
    }
    out
}

/// A Jordan frame in general position (rotated away from the canonical
/// one) where the algebra has a continuum of frames.
fn alternative_frame<T: Real>(alg: &AlgebraDescriptor) -> Option<Vec<Element<T>>> {
    match alg {
        AlgebraDescriptor::Sym(n) if *n >= 2 => {
            let n = *n;
            // deterministic rotation mixing all coordinates
            let mut u = Matrix::<T>::identity(n);
            for i in 0..n - 1 {
                let angle = real::<T>(0.3 + 0.17 * i as f64);
                let (c, s) = (angle.cos(), angle.sin());
                let mut g = Matrix::<T>::identity(n);
                g[(i, i)] = c;
                g[(i + 1, i + 1)] = c;
                g[(i, i + 1)] = -s;
                g[(i + 1, i)] = s;
                u = u.matmul(&g);
            }
            let rep = JordanIsoRep::OrthogonalConjugation(u);
            Some(
                crate::algebra::jordan_frame::<T>(alg)
                    .iter()
                    .map(|p| rep.apply(p).unwrap())
                    .collect(),
            )
        }
        AlgebraDescriptor::Spin(d) if *d >= 2 => {
            let half = real::<T>(0.5);
            let (c, s) = (real::<T>(0.6).cos(), real::<T>(0.6).sin());
            let build = |sgn: T| {
                let mut coords = vec![T::zero(); d + 1];
                coords[0] = sgn * c * half;
                coords[1] = sgn * s * half;
                coords[*d] = half;
                Element::new(alg.clone(), coords).unwrap()
            };
            Some(vec![build(T::one()), build(-T::one())])
        }
        AlgebraDescriptor::DirectSum(parts) => {
            // only worthwhile when some part genuinely moves
            let mut moved = false;
            let mut out = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let frame = match alternative_frame::<T>(p) {
                    Some(f) => {
                        moved = true;
                        f
                    }
                    None => crate::algebra::jordan_frame::<T>(p),
                };
                for q in frame {
                    out.push(Element::embed_part(alg, i, &q).unwrap());
                }
            }
            moved.then_some(out)
        }
        _ => None,
    }
}

/// Factors a bijective Hilbert isometry into `(b, epsilon, J)`.
///
/// `b` is the trace-normalized square root of a representative of the image
/// of the unit ray. The normalized map is linearized on the quotient, the
/// induced projection map is evaluated on orthogonal simplices to orient
/// `epsilon` (on rank-2 algebras both orientations are tried, preferring
/// `+1`), and the corrected map extends to the Jordan isomorphism.
pub fn factor_hilbert_isometry<T: Real>(
    alg: &AlgebraDescriptor,
    f: impl Fn(&Ray<T>) -> Result<Ray<T>>,
    config: &FactorConfig,
) -> Result<IsometryDescriptor<T>> {
    let e = Element::unit(alg);
    let fe = f(&Ray::new(&e)?)?;
    let b_raw = spectral::sqrt(fe.representative())?;
    let b = Ray::new(&b_raw)?.representative().clone();
    let b_inv = spectral::inv(&b)?;
    let g = |a: &Ray<T>| -> Result<Ray<T>> {
        Ray::new(&quadratic_rep(&b_inv, f(a)?.representative())?)
    };

    let lin = linearize_hilbert_isometry(alg, g, config)?;
    let proj_tol = real::<T>(config.threshold);

    let try_epsilon = |eps: i8| -> Result<IsometryDescriptor<T>> {
        let sign = real::<T>(eps as f64);
        let mut theta = ProjectionMap::new(alg.clone(), proj_tol, |p| {
            lin.apply(p).map(|img| img.scale(sign))
        });
        let iso = extend_orthoisomorphism(alg, &mut theta)?;
        let desc = IsometryDescriptor {
            metric: MetricKind::Hilbert,
            b: b.clone(),
            p: None,
            epsilon: Some(eps),
            iso,
        };
        let built = build_isometry(&desc)?;
        let mut rng = ChaCha12Rng::seed_from_u64(config.seed ^ 0x5179_a3f1);
        let mut worst = T::zero();
        for _ in 0..config.probes {
            let a = Ray::new(&sampling::random_interior(alg, &mut rng, 0.8))?;
            let want = f(&a)?;
            let got = built.apply_ray(&a)?;
            let scale = T::one().max(want.representative().max_abs_coord());
            worst = worst.max(
                got.representative()
                    .sub(want.representative())
                    .max_abs_coord()
                    / scale,
            );
        }
        if worst > real(config.threshold) {
            return Err(Error::ResidualExceeded {
                stage: "hilbert factorization round-trip",
                residual: worst.to_f64().unwrap_or(f64::NAN),
                threshold: config.threshold,
            });
        }
        Ok(desc)
    };

    if alg.rank() >= 3 {
        let mut theta_plus = ProjectionMap::new(alg.clone(), proj_tol, |p| lin.apply(p));
        let mut epsilon = None;
        for simplex in epsilon_simplices::<T>(alg) {
            let mut sum = Element::zero(alg);
            for p in &simplex {
                sum = sum.add(&theta_plus.get(p)?);
            }
            let eps_here = if sum.sub(&e).max_abs_coord() <= proj_tol {
                1
            } else if sum.sub(&e.scale(real(2.0))).max_abs_coord() <= proj_tol {
                -1
            } else {
                return Err(Error::NotAnIsometry(
                    "neither simplex orientation holds".into(),
                ));
            };
            match epsilon {
                None => epsilon = Some(eps_here),
                Some(prev) if prev != eps_here => {
                    return Err(Error::NotAnIsometry(
                        "simplices disagree on the orientation".into(),
                    ))
                }
                _ => {}
            }
        }
        try_epsilon(epsilon.expect("rank >= 3 has a simplex"))
    } else {
        // rank <= 2: both orientations can be valid; prefer +1
        try_epsilon(1).or_else(|_| try_epsilon(-1))
    }
}
