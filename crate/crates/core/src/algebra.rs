//! Finite-dimensional `*`-closed matrix algebras: generation by span
//! closure, centers, and central primitive idempotents.
//!
//! An algebra is stored as an orthonormal basis under the trace inner
//! product `⟨A, B⟩ = tr(A† B)`, maintained by modified Gram–Schmidt with a
//! second reorthogonalization pass. Central primitive idempotents are read
//! off the spectral projectors of random Hermitian elements of the center.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cmatrix::{CMatrix, ONE, ZERO};
use crate::relation::Color;

/// Numerical thresholds shared by the algebra routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative residual below which a candidate is in the current span.
    pub span_pivot: f64,
    /// Residual bound for idempotency, centrality and membership.
    pub certify: f64,
    /// Eigenvalues closer than this are grouped into one projector.
    pub eigen_gap: f64,
    /// Singular values below this count as zero in rank computations.
    pub singular_cutoff: f64,
    /// Frobenius distance under which two idempotents are the same.
    pub matching: f64,
    /// Loss of orthogonality that triggers a full reorthonormalization.
    pub orthogonality: f64,
    pub max_rounds: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            span_pivot: 1e-10,
            certify: 1e-8,
            eigen_gap: 1e-6,
            singular_cutoff: 1e-8,
            matching: 1e-7,
            orthogonality: 1e-10,
            max_rounds: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}×{expected}, found {found}×{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("idempotent extraction needs a unital algebra")]
    NotUnital,
    #[error(
        "idempotent extraction unstable: {found} projectors after {rounds} rounds, \
         center has dimension {expected}"
    )]
    ExtractionUnstable {
        rounds: usize,
        found: usize,
        expected: usize,
    },
}

/// Orthonormal basis of a subspace of `Mat_n(ℂ)`.
#[derive(Debug, Clone)]
pub struct OrthonormalSpan {
    n: usize,
    basis: Vec<CMatrix>,
    pivot: f64,
}

impl OrthonormalSpan {
    pub fn new(n: usize, pivot: f64) -> Self {
        Self {
            n,
            basis: Vec::new(),
            pivot,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    fn project_out(&self, v: &mut CMatrix) {
        for b in &self.basis {
            let c = b.inner(v);
            v.axpy(-c, b);
        }
    }

    /// Adds `m` if it is independent of the span; returns whether it was.
    ///
    /// The pivot is relative for `‖m‖ ≥ 1` and absolute below, so that
    /// rounding noise left over from exact cancellation is never inserted.
    pub fn try_insert(&mut self, m: &CMatrix) -> bool {
        assert_eq!(m.dim(), self.n, "dimension mismatch");
        let norm = m.frobenius_norm();
        if norm <= self.pivot {
            return false;
        }
        let mut v = m.scale_real(1.0 / norm);
        self.project_out(&mut v);
        self.project_out(&mut v);
        let r = v.frobenius_norm();
        if r * norm.min(1.0) <= self.pivot {
            return false;
        }
        self.basis.push(v.scale_real(1.0 / r));
        true
    }

    pub fn coordinates(&self, m: &CMatrix) -> Vec<Complex64> {
        self.basis.iter().map(|b| b.inner(m)).collect()
    }

    /// `‖m − proj(m)‖_F`
    pub fn residual(&self, m: &CMatrix) -> f64 {
        let mut v = m.clone();
        self.project_out(&mut v);
        self.project_out(&mut v);
        v.frobenius_norm()
    }

    /// `max |⟨b_i, b_j⟩ − δ_ij|`
    pub fn orthogonality_loss(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i) {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((a.inner(b) - target).norm());
            }
        }
        worst
    }

    pub fn reorthonormalize(&mut self) {
        let old = std::mem::take(&mut self.basis);
        for b in &old {
            self.try_insert(b);
        }
    }
}

/// A `*`-closed subalgebra of `Mat_n(ℂ)`.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    n: usize,
    span: OrthonormalSpan,
    generators: Vec<CMatrix>,
    unital: bool,
    tolerances: Tolerances,
}

/// Smallest unital algebra containing `generators` and their adjoints.
pub fn generate_algebra(generators: &[CMatrix]) -> Result<MatrixAlgebra, AlgebraError> {
    generate_algebra_with(generators, true, Tolerances::default())
}

/// Like [`generate_algebra`]; with `unital = false` the identity is only
/// included if the generators produce it.
pub fn generate_algebra_with(
    generators: &[CMatrix],
    unital: bool,
    tolerances: Tolerances,
) -> Result<MatrixAlgebra, AlgebraError> {
    let n = match generators.first() {
        Some(g) => g.dim(),
        None => return Err(AlgebraError::NoGenerators),
    };
    if let Some(g) = generators.iter().find(|g| g.dim() != n) {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: g.dim(),
        });
    }
    let mut gens: Vec<CMatrix> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        gens.push(g.clone());
        if !g.is_hermitian(tolerances.span_pivot * g.frobenius_norm().max(1.0)) {
            gens.push(g.adjoint());
        }
    }
    let mut span = OrthonormalSpan::new(n, tolerances.span_pivot);
    if unital {
        span.try_insert(&CMatrix::identity(n));
    }
    for g in &gens {
        span.try_insert(g);
    }
    // Left multiplication by generators reaches every word.
    let mut i = 0;
    while i < span.dim() {
        let b = span.basis()[i].clone();
        for g in &gens {
            span.try_insert(&(g * &b));
        }
        i += 1;
    }
    if span.orthogonality_loss() > tolerances.orthogonality {
        span.reorthonormalize();
    }
    Ok(MatrixAlgebra {
        n,
        span,
        generators: gens,
        unital,
        tolerances,
    })
}

/// Where an idempotent came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    Trivial,
    Tilde,
    Hat { t: Color },
    Eta1,
    Eta2,
    /// `|X|⁻¹ J_X ⊗ (ε_{y0t} − J_{y0t}/3)`, present when `|T| = 2`.
    Complement,
    Numeric,
}

/// An element with measured idempotency, centrality and primitivity.
#[derive(Debug, Clone)]
pub struct IdempotentCertificate {
    pub element: CMatrix,
    pub provenance: Provenance,
    /// `‖E² − E‖_F`
    pub idempotency_residual: f64,
    /// `max_G ‖EG − GE‖_F` over the generators
    pub centrality_residual: f64,
    /// distance from `E` to the algebra
    pub membership_residual: f64,
    /// `dim E·Z(A)`
    pub central_component_dim: usize,
}

impl IdempotentCertificate {
    pub fn rank(&self) -> f64 {
        self.element.trace().re
    }

    pub fn is_central_primitive(&self, tol: f64) -> bool {
        self.idempotency_residual < tol
            && self.centrality_residual < tol
            && self.membership_residual < tol
            && self.central_component_dim == 1
    }
}

impl MatrixAlgebra {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> &[CMatrix] {
        self.span.basis()
    }

    /// Generators, including the adjoints added during generation.
    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn residual(&self, m: &CMatrix) -> f64 {
        self.span.residual(m)
    }

    pub fn contains(&self, m: &CMatrix, tol: f64) -> bool {
        self.residual(m) < tol
    }

    pub fn coordinates(&self, m: &CMatrix) -> Vec<Complex64> {
        self.span.coordinates(m)
    }

    /// `max_{i,j} dist(B_i B_j, span)`; zero up to rounding for an algebra.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in self.basis() {
            for b in self.basis() {
                worst = worst.max(self.residual(&(a * b)));
            }
        }
        worst
    }

    /// Orthonormal basis of the center, from the null space of
    /// `c ↦ [Σ c_k B_k, G]` in basis coordinates.
    pub fn center(&self) -> Vec<CMatrix> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let rows = (self.generators.len() * d).max(d);
        let mut system = DMatrix::<Complex64>::zeros(rows, d);
        for (k, b) in self.basis().iter().enumerate() {
            for (gi, g) in self.generators.iter().enumerate() {
                let comm = &(b * g) - &(g * b);
                for (m, c) in self.coordinates(&comm).into_iter().enumerate() {
                    system[(gi * d + m, k)] = c;
                }
            }
        }
        let svd = system.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let cutoff = self.tolerances.singular_cutoff * top.max(1.0);
        let mut span = OrthonormalSpan::new(self.n, self.tolerances.span_pivot);
        for (i, &sv) in svd.singular_values.iter().enumerate() {
            if sv > cutoff {
                continue;
            }
            let mut z = CMatrix::zeros(self.n);
            for (k, b) in self.basis().iter().enumerate() {
                z.axpy(v_t[(i, k)].conj(), b);
            }
            span.try_insert(&z);
        }
        span.basis().to_vec()
    }

    /// Measures how close `element` is to a central primitive idempotent,
    /// given an orthonormal basis of the center.
    pub fn certify(
        &self,
        center: &[CMatrix],
        element: CMatrix,
        provenance: Provenance,
    ) -> IdempotentCertificate {
        let idempotency_residual = (&element * &element).distance(&element);
        let centrality_residual = self
            .generators
            .iter()
            .map(|g| element.commutator_norm(g))
            .fold(0.0, f64::max);
        let membership_residual = self.residual(&element);
        let products: Vec<CMatrix> = center.iter().map(|z| &element * z).collect();
        let central_component_dim = numerical_rank(&products, self.tolerances.singular_cutoff);
        IdempotentCertificate {
            element,
            provenance,
            idempotency_residual,
            centrality_residual,
            membership_residual,
            central_component_dim,
        }
    }

    /// All central primitive idempotents, certified, in a canonical order.
    pub fn central_primitive_idempotents(
        &self,
        seed: u64,
    ) -> Result<Vec<IdempotentCertificate>, AlgebraError> {
        if !self.unital {
            return Err(AlgebraError::NotUnital);
        }
        let center = self.center();
        let expected = center.len();
        let mut hermitian = Vec::new();
        for z in &center {
            let adj = z.adjoint();
            let re = (z + &adj).scale_real(0.5);
            let im = (z - &adj).scale(Complex64::new(0.0, -0.5));
            for h in [re, im] {
                if h.frobenius_norm() > self.tolerances.span_pivot {
                    hermitian.push(h);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut parts = vec![CMatrix::identity(self.n)];
        let mut rounds = 0;
        while parts.len() < expected {
            if rounds == self.tolerances.max_rounds {
                return Err(AlgebraError::ExtractionUnstable {
                    rounds,
                    found: parts.len(),
                    expected,
                });
            }
            rounds += 1;
            let mut h = CMatrix::zeros(self.n);
            for b in &hermitian {
                h.axpy(Complex64::new(rng.random_range(-1.0..1.0), 0.0), b);
            }
            let projectors = spectral_projectors(&h, self.tolerances.eigen_gap);
            parts = parts
                .iter()
                .flat_map(|p| projectors.iter().map(move |q| p * q))
                .filter(|r| r.trace().re > 0.5)
                .collect();
            if parts.len() > expected {
                return Err(AlgebraError::ExtractionUnstable {
                    rounds,
                    found: parts.len(),
                    expected,
                });
            }
        }
        parts.sort_by_cached_key(|m| std::cmp::Reverse(canonical_key(m)));
        Ok(parts
            .into_iter()
            .map(|e| self.certify(&center, e, Provenance::Numeric))
            .collect())
    }

    /// The corner algebra `P A P` for a projector `P`.
    pub fn corner(&self, p: &CMatrix) -> Result<MatrixAlgebra, AlgebraError> {
        if p.dim() != self.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                found: p.dim(),
            });
        }
        let compressed: Vec<CMatrix> = self
            .basis()
            .iter()
            .map(|b| b.compress(p))
            .filter(|m| m.frobenius_norm() > self.tolerances.span_pivot)
            .collect();
        if compressed.is_empty() {
            return Ok(MatrixAlgebra {
                n: self.n,
                span: OrthonormalSpan::new(self.n, self.tolerances.span_pivot),
                generators: Vec::new(),
                unital: false,
                tolerances: self.tolerances,
            });
        }
        generate_algebra_with(&compressed, false, self.tolerances)
    }
}

/// Spectral projectors of a Hermitian matrix, eigenvalues grouped by gap.
fn spectral_projectors(h: &CMatrix, gap: f64) -> Vec<CMatrix> {
    let n = h.dim();
    let eig = SymmetricEigen::new(h.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &i in &order {
        let lambda = eig.eigenvalues[i];
        match groups.last_mut() {
            Some(g) if lambda - last <= gap => g.push(i),
            _ => groups.push(vec![i]),
        }
        last = lambda;
    }
    groups
        .into_iter()
        .map(|g| {
            CMatrix::from_fn(n, |r, c| {
                g.iter()
                    .map(|&k| eig.eigenvectors[(r, k)] * eig.eigenvectors[(c, k)].conj())
                    .sum()
            })
        })
        .collect()
}

/// Numerical rank of a family of matrices viewed as vectors.
pub fn numerical_rank(family: &[CMatrix], cutoff: f64) -> usize {
    if family.is_empty() {
        return 0;
    }
    let len = family[0].as_slice().len();
    let cols = family.len();
    let rows = len.max(cols);
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    for (j, f) in family.iter().enumerate() {
        for (i, &v) in f.as_slice().iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m.singular_values().iter().filter(|&&s| s > cutoff).count()
}

/// Ordering key: trace first, then entries rounded to 1e-6.
fn canonical_key(m: &CMatrix) -> Vec<i64> {
    let round = |v: f64| (v * 1e6).round() as i64;
    std::iter::once(round(m.trace().re))
        .chain(m.as_slice().iter().flat_map(|z| [round(z.re), round(z.im)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn adjacency_generators(s: &crate::relation::Scheme) -> Vec<CMatrix> {
        (0..s.rank()).map(|c| CMatrix::from_int(&s.adjacency(c))).collect()
    }

    #[test]
    fn identity_generates_one_dimension() {
        let a = generate_algebra(&[CMatrix::identity(3)]).unwrap();
        assert_eq!(a.dim(), 1);
        let e = a.central_primitive_idempotents(1).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].element.distance(&CMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn mismatched_generators_rejected() {
        let err = generate_algebra(&[CMatrix::identity(2), CMatrix::identity(3)]).unwrap_err();
        assert_eq!(err, AlgebraError::DimensionMismatch { expected: 2, found: 3 });
        assert_eq!(generate_algebra(&[]).unwrap_err(), AlgebraError::NoGenerators);
    }

    #[test]
    fn full_matrix_algebra_center_is_scalar() {
        // matrix units e_01 and e_10 generate Mat_2
        let mut e01 = CMatrix::zeros(2);
        e01[(0, 1)] = ONE;
        let a = generate_algebra(&[e01]).unwrap();
        assert_eq!(a.dim(), 4);
        let z = a.center();
        assert_eq!(z.len(), 1);
        let scaled = CMatrix::identity(2).scale_real(1.0 / 2f64.sqrt());
        let phase = z[0].inner(&scaled) / z[0].inner(&z[0]);
        assert!(z[0].scale(phase).distance(&scaled) < 1e-12);
    }

    #[test]
    fn z7_adjacency_algebra_is_commutative_rank_three() {
        let z7 = catalog::cayley_abelian(7, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        let a = generate_algebra(&adjacency_generators(&z7)).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.center().len(), 3);
        let es = a.central_primitive_idempotents(1).unwrap();
        assert_eq!(es.len(), 3);
        let j7 = CMatrix::all_ones(7).scale_real(1.0 / 7.0);
        assert_eq!(es.iter().filter(|e| e.element.distance(&j7) < 1e-9).count(), 1);
        for e in &es {
            assert!(e.is_central_primitive(1e-8), "{e:?}");
        }
    }

    #[test]
    fn closure_residual_is_small() {
        let z4 = catalog::cyclic_group(4).unwrap();
        let a = generate_algebra(&adjacency_generators(&z4)).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.closure_residual() < 1e-9 * 4.0);
    }

    #[test]
    fn numerical_rank_of_dependent_family() {
        let i = CMatrix::identity(2);
        assert_eq!(numerical_rank(&[i.clone(), i.scale_real(2.0)], 1e-8), 1);
        assert_eq!(numerical_rank(&[], 1e-8), 0);
    }
}
