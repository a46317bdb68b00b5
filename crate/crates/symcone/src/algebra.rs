//! Finite-dimensional Euclidean Jordan algebras and their bilinear and
//! quadratic structure.
//!
//! Supported factors: `Vector(n)` (coordinatewise product), `Sym(n)` (real
//! symmetric matrices under `(ab+ba)/2`), `Spin(d)` (pairs `(x,t)` with
//! product `(x,s)∘(y,t) = (sy+tx, <x,y>+st)`), and arbitrary finite direct
//! sums of these.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Describes one of the supported algebras.
///
/// Direct sums are ordered lists: component order is part of the identity of
/// the algebra. Permutations of isomorphic components are Jordan
/// isomorphisms, handled in `morphisms`, never silent equalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraDescriptor {
    /// `R^n` with coordinatewise multiplication; rank `n`.
    Vector(usize),
    /// Real symmetric `n x n` matrices with `a∘b = (ab+ba)/2`; rank `n`.
    Sym(usize),
    /// Spin factor on `R^d + R`; rank 2.
    Spin(usize),
    /// Componentwise structure; rank is the sum of component ranks.
    DirectSum(Vec<AlgebraDescriptor>),
}

use AlgebraDescriptor::*;

impl AlgebraDescriptor {
    /// Checks that all dimensions are positive and sums are nonempty.
    pub fn validate(&self) -> Result<()> {
        match self {
            Vector(n) | Sym(n) | Spin(n) if *n == 0 => {
                Err(Error::InvalidArgument("zero-dimensional algebra".into()))
            }
            DirectSum(parts) if parts.is_empty() => {
                Err(Error::InvalidArgument("empty direct sum".into()))
            }
            DirectSum(parts) => parts.iter().try_for_each(|p| p.validate()),
            _ => Ok(()),
        }
    }

    /// Length of the raw coordinate storage.
    pub fn storage_dim(&self) -> usize {
        match self {
            Vector(n) => *n,
            Sym(n) => n * n,
            Spin(d) => d + 1,
            DirectSum(parts) => parts.iter().map(|p| p.storage_dim()).sum(),
        }
    }

    /// Dimension of the algebra as a real vector space.
    pub fn dim(&self) -> usize {
        match self {
            Vector(n) => *n,
            Sym(n) => n * (n + 1) / 2,
            Spin(d) => d + 1,
            DirectSum(parts) => parts.iter().map(|p| p.dim()).sum(),
        }
    }

    /// Rank: the number of eigenvalues counted with multiplicity.
    pub fn rank(&self) -> usize {
        match self {
            Vector(n) => *n,
            Sym(n) => *n,
            Spin(_) => 2,
            DirectSum(parts) => parts.iter().map(|p| p.rank()).sum(),
        }
    }

    /// Storage offsets of the direct-sum components (empty for factors).
    pub fn part_offsets(&self) -> Vec<(usize, usize)> {
        match self {
            DirectSum(parts) => {
                let mut out = Vec::with_capacity(parts.len());
                let mut off = 0;
                for p in parts {
                    let len = p.storage_dim();
                    out.push((off, len));
                    off += len;
                }
                out
            }
            _ => Vec::new(),
        }
    }

    pub fn parts(&self) -> &[AlgebraDescriptor] {
        match self {
            DirectSum(parts) => parts,
            _ => std::slice::from_ref(self),
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vector(n) => write!(f, "vector({n})"),
            Sym(n) => write!(f, "sym({n})"),
            Spin(d) => write!(f, "spin({d})"),
            DirectSum(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "sum({})", names.join(", "))
            }
        }
    }
}

/// A point of a Euclidean Jordan algebra, tagged by its algebra.
///
/// Storage is a flat coordinate vector whose layout is fixed by the
/// descriptor: `Vector(n)` holds `n` entries, `Sym(n)` a row-major `n x n`
/// block (symmetrized on construction), `Spin(d)` the `d` entries of the
/// vector part followed by the scalar part, and direct sums concatenate.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    algebra: AlgebraDescriptor,
    coords: Vec<T>,
}

impl<T: Real> Element<T> {
    /// Builds an element from raw storage, symmetrizing `Sym` blocks.
    pub fn new(algebra: AlgebraDescriptor, mut coords: Vec<T>) -> Result<Self> {
        algebra.validate()?;
        if coords.len() != algebra.storage_dim() {
            return Err(Error::InvalidArgument(format!(
                "storage length {} does not match {} (expects {})",
                coords.len(),
                algebra,
                algebra.storage_dim()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        symmetrize(&algebra, &mut coords, 0);
        Ok(Element { algebra, coords })
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        Element {
            algebra: algebra.clone(),
            coords: vec![T::zero(); algebra.storage_dim()],
        }
    }

    /// The algebra unit `e`.
    pub fn unit(algebra: &AlgebraDescriptor) -> Self {
        let mut e = Self::zero(algebra);
        write_unit(algebra, &mut e.coords, 0);
        e
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Direct-sum component `i` as an element of the component algebra.
    pub fn part(&self, i: usize) -> Element<T> {
        match &self.algebra {
            DirectSum(parts) => {
                let (off, len) = self.algebra.part_offsets()[i];
                Element {
                    algebra: parts[i].clone(),
                    coords: self.coords[off..off + len].to_vec(),
                }
            }
            _ => {
                assert_eq!(i, 0, "factor algebras have a single part");
                self.clone()
            }
        }
    }

    /// Assembles a direct-sum element from components.
    pub fn from_parts(algebra: &AlgebraDescriptor, parts: &[Element<T>]) -> Result<Self> {
        let sub = algebra.parts();
        if sub.len() != parts.len() {
            return Err(Error::InvalidArgument("component count mismatch".into()));
        }
        let mut coords = Vec::with_capacity(algebra.storage_dim());
        for (d, p) in sub.iter().zip(parts) {
            if p.algebra() != d {
                return Err(Error::DescriptorMismatch(
                    d.to_string(),
                    p.algebra().to_string(),
                ));
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(Element {
            algebra: algebra.clone(),
            coords,
        })
    }

    /// Embeds `x` into component `i` of a direct sum, zero elsewhere.
    pub fn embed_part(algebra: &AlgebraDescriptor, i: usize, x: &Element<T>) -> Result<Self> {
        let mut out = Self::zero(algebra);
        let (off, len) = match algebra {
            DirectSum(_) => algebra.part_offsets()[i],
            _ => (0, algebra.storage_dim()),
        };
        if x.coords().len() != len {
            return Err(Error::DescriptorMismatch(
                algebra.parts()[i].to_string(),
                x.algebra().to_string(),
            ));
        }
        out.coords[off..off + len].copy_from_slice(x.coords());
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&x, &y)| x + y)
            .collect();
        Element {
            algebra: self.algebra.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&x, &y)| x - y)
            .collect();
        Element {
            algebra: self.algebra.clone(),
            coords,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|&x| x * s).collect(),
        }
    }

    /// `self + s e`.
    pub fn add_scalar(&self, s: T) -> Self {
        self.add(&Element::unit(&self.algebra).scale(s))
    }

    /// Norm induced by the trace inner product.
    pub fn trace_norm(&self) -> T {
        trace_inner_product(self, self).sqrt()
    }

    pub fn max_abs_coord(&self) -> T {
        self.coords
            .iter()
            .fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    /// Componentwise closeness in storage coordinates.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.algebra == other.algebra
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(&x, &y)| (x - y).abs() <= tol)
    }

    /// Trace-orthonormal coordinates: the Euclidean dot product of two
    /// vectorized elements equals their trace inner product.
    pub fn to_vec_coords(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.algebra.dim());
        vectorize(&self.algebra, &self.coords, 0, &mut out);
        out
    }

    pub fn from_vec_coords(algebra: &AlgebraDescriptor, v: &[T]) -> Result<Self> {
        if v.len() != algebra.dim() {
            return Err(Error::InvalidArgument(format!(
                "coordinate length {} does not match dim {} of {}",
                v.len(),
                algebra.dim(),
                algebra
            )));
        }
        let mut coords = vec![T::zero(); algebra.storage_dim()];
        let mut pos = 0;
        devectorize(algebra, v, &mut pos, &mut coords, 0);
        Element::new(algebra.clone(), coords)
    }
}

fn symmetrize<T: Real>(alg: &AlgebraDescriptor, coords: &mut [T], off: usize) {
    match alg {
        Sym(n) => {
            let half = real::<T>(0.5);
            for i in 0..*n {
                for j in (i + 1)..*n {
                    let a = coords[off + i * n + j];
                    let b = coords[off + j * n + i];
                    let m = (a + b) * half;
                    coords[off + i * n + j] = m;
                    coords[off + j * n + i] = m;
                }
            }
        }
        DirectSum(parts) => {
            let mut o = off;
            for p in parts {
                symmetrize(p, coords, o);
                o += p.storage_dim();
            }
        }
        _ => {}
    }
}

fn write_unit<T: Real>(alg: &AlgebraDescriptor, coords: &mut [T], off: usize) {
    match alg {
        Vector(n) => coords[off..off + n].fill(T::one()),
        Sym(n) => {
            for i in 0..*n {
                coords[off + i * n + i] = T::one();
            }
        }
        Spin(d) => coords[off + d] = T::one(),
        DirectSum(parts) => {
            let mut o = off;
            for p in parts {
                write_unit(p, coords, o);
                o += p.storage_dim();
            }
        }
    }
}

fn vectorize<T: Real>(alg: &AlgebraDescriptor, coords: &[T], off: usize, out: &mut Vec<T>) {
    match alg {
        Vector(n) => out.extend_from_slice(&coords[off..off + n]),
        Sym(n) => {
            let s2 = real::<T>(2.0).sqrt();
            for i in 0..*n {
                out.push(coords[off + i * n + i]);
            }
            for i in 0..*n {
                for j in (i + 1)..*n {
                    out.push(coords[off + i * n + j] * s2);
                }
            }
        }
        Spin(d) => {
            let s2 = real::<T>(2.0).sqrt();
            for k in 0..=*d {
                out.push(coords[off + k] * s2);
            }
        }
        DirectSum(parts) => {
            let mut o = off;
            for p in parts {
                vectorize(p, coords, o, out);
                o += p.storage_dim();
            }
        }
    }
}

fn devectorize<T: Real>(
    alg: &AlgebraDescriptor,
    v: &[T],
    pos: &mut usize,
    coords: &mut [T],
    off: usize,
) {
    match alg {
        Vector(n) => {
            coords[off..off + n].copy_from_slice(&v[*pos..*pos + n]);
            *pos += n;
        }
        Sym(n) => {
            let inv_s2 = T::one() / real::<T>(2.0).sqrt();
            for i in 0..*n {
                coords[off + i * n + i] = v[*pos];
                *pos += 1;
            }
            for i in 0..*n {
                for j in (i + 1)..*n {
                    let x = v[*pos] * inv_s2;
                    coords[off + i * n + j] = x;
                    coords[off + j * n + i] = x;
                    *pos += 1;
                }
            }
        }
        Spin(d) => {
            let inv_s2 = T::one() / real::<T>(2.0).sqrt();
            for k in 0..=*d {
                coords[off + k] = v[*pos] * inv_s2;
                *pos += 1;
            }
        }
        DirectSum(parts) => {
            let mut o = off;
            for p in parts {
                devectorize(p, v, pos, coords, o);
                o += p.storage_dim();
            }
        }
    }
}

fn check_same_algebra<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<()> {
    if a.algebra() != b.algebra() {
        return Err(Error::DescriptorMismatch(
            a.algebra().to_string(),
            b.algebra().to_string(),
        ));
    }
    Ok(())
}

fn product_into<T: Real>(alg: &AlgebraDescriptor, a: &[T], b: &[T], out: &mut [T], off: usize) {
    match alg {
        Vector(n) => {
            for k in 0..*n {
                out[off + k] = a[off + k] * b[off + k];
            }
        }
        Sym(n) => {
            let n = *n;
            let half = real::<T>(0.5);
            for i in 0..n {
                for j in i..n {
                    let mut s = T::zero();
                    for k in 0..n {
                        s += a[off + i * n + k] * b[off + k * n + j]
                            + b[off + i * n + k] * a[off + k * n + j];
                    }
                    let v = s * half;
                    out[off + i * n + j] = v;
                    out[off + j * n + i] = v;
                }
            }
        }
        Spin(d) => {
            let d = *d;
            let s = a[off + d];
            let t = b[off + d];
            let mut dot = T::zero();
            for k in 0..d {
                dot += a[off + k] * b[off + k];
                out[off + k] = s * b[off + k] + t * a[off + k];
            }
            out[off + d] = dot + s * t;
        }
        DirectSum(parts) => {
            let mut o = off;
            for p in parts {
                product_into(p, a, b, out, o);
                o += p.storage_dim();
            }
        }
    }
}

/// The Jordan product `a ∘ b`. Commutative and bilinear.
pub fn jordan_product<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    check_same_algebra(a, b)?;
    let mut out = Element::zero(a.algebra());
    product_into(a.algebra(), a.coords(), b.coords(), &mut out.coords, 0);
    Ok(out)
}

/// The Jordan triple product `{a,b,c} = (a∘b)∘c + (c∘b)∘a - (a∘c)∘b`.
pub fn triple_product<T: Real>(
    a: &Element<T>,
    b: &Element<T>,
    c: &Element<T>,
) -> Result<Element<T>> {
    check_same_algebra(a, b)?;
    check_same_algebra(a, c)?;
    let ab_c = jordan_product(&jordan_product(a, b)?, c)?;
    let cb_a = jordan_product(&jordan_product(c, b)?, a)?;
    let ac_b = jordan_product(&jordan_product(a, c)?, b)?;
    Ok(ab_c.add(&cb_a).sub(&ac_b))
}

/// The quadratic representation `U_a b = {a,b,a}`. Linear in `b` and maps
/// the cone into itself for positive `b`.
pub fn quadratic_rep<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    triple_product(a, b, a)
}

fn trace_inner_into<T: Real>(alg: &AlgebraDescriptor, a: &[T], b: &[T], off: usize) -> T {
    match alg {
        Vector(n) => (0..*n).map(|k| a[off + k] * b[off + k]).sum(),
        Sym(n) => {
            let n = *n;
            let mut s = T::zero();
            for i in 0..n {
                for j in 0..n {
                    s += a[off + i * n + j] * b[off + i * n + j];
                }
            }
            s
        }
        Spin(d) => {
            let mut s = T::zero();
            for k in 0..=*d {
                s += a[off + k] * b[off + k];
            }
            s + s
        }
        DirectSum(parts) => {
            let mut o = off;
            let mut s = T::zero();
            for p in parts {
                s += trace_inner_into(p, a, b, o);
                o += p.storage_dim();
            }
            s
        }
    }
}

/// Canonical trace form: symmetric, positive definite, associative. For
/// `Sym(n)` it is `tr(ab)`, for `Vector(n)` the dot product, for `Spin(d)`
/// `2(<x,y> + st)`; direct sums add up. `<e,e>` equals the rank.
pub fn trace_inner_product<T: Real>(a: &Element<T>, b: &Element<T>) -> T {
    debug_assert_eq!(a.algebra(), b.algebra());
    trace_inner_into(a.algebra(), a.coords(), b.coords(), 0)
}

/// Trace of an element, `<a, e>`.
pub fn trace<T: Real>(a: &Element<T>) -> T {
    trace_inner_product(a, &Element::unit(a.algebra()))
}

/// Trace-orthonormal canonical basis: `unvec` of the coordinate units.
pub fn canonical_basis<T: Real>(alg: &AlgebraDescriptor) -> Vec<Element<T>> {
    let d = alg.dim();
    (0..d)
        .map(|k| {
            let mut v = vec![T::zero(); d];
            v[k] = T::one();
            Element::from_vec_coords(alg, &v).expect("unit coordinate vector")
        })
        .collect()
}

/// Default tolerance for kernel predicates: `1e-9` relative to the product
/// of trace norms.
pub fn default_kernel_tol<T: Real>(a: &Element<T>, b: &Element<T>) -> T {
    real::<T>(1e-9) * T::one().max(a.trace_norm() * b.trace_norm())
}

/// Whether `a ∘ (b ∘ c) = b ∘ (a ∘ c)` holds on every canonical basis
/// vector `c` up to `tol` in trace norm.
pub fn operator_commute<T: Real>(a: &Element<T>, b: &Element<T>, tol: T) -> Result<bool> {
    check_same_algebra(a, b)?;
    let mut worst = T::zero();
    for c in canonical_basis(a.algebra()) {
        let lhs = jordan_product(a, &jordan_product(b, &c)?)?;
        let rhs = jordan_product(b, &jordan_product(a, &c)?)?;
        worst = worst.max(lhs.sub(&rhs).trace_norm());
        if worst > tol {
            return Ok(false);
        }
    }
    Ok(worst <= tol)
}

/// A complete system of primitive orthogonal idempotents (a Jordan frame).
pub fn jordan_frame<T: Real>(alg: &AlgebraDescriptor) -> Vec<Element<T>> {
    match alg {
        Vector(n) => (0..*n)
            .map(|i| {
                let mut c = vec![T::zero(); *n];
                c[i] = T::one();
                Element::new(alg.clone(), c).unwrap()
            })
            .collect(),
        Sym(n) => (0..*n)
            .map(|i| {
                let mut c = vec![T::zero(); n * n];
                c[i * n + i] = T::one();
                Element::new(alg.clone(), c).unwrap()
            })
            .collect(),
        Spin(d) => {
            let half = real::<T>(0.5);
            [T::one(), -T::one()]
                .iter()
                .map(|&sgn| {
                    let mut c = vec![T::zero(); d + 1];
                    c[0] = sgn * half;
                    c[*d] = half;
                    Element::new(alg.clone(), c).unwrap()
                })
                .collect()
        }
        DirectSum(parts) => {
            let mut out = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                for q in jordan_frame::<T>(p) {
                    out.push(Element::embed_part(alg, i, &q).unwrap());
                }
            }
            out
        }
    }
}
