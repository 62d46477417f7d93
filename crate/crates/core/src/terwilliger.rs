//! Terwilliger algebras `T(X, S, x0)`, their trivial idempotent, and the
//! comparison with the adjacency algebra of the one-point extension.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::{generate_algebra, generate_algebra_with, MatrixAlgebra, OrthonormalSpan, Tolerances};
use crate::closure::{one_point_extension, PointExtension};
use crate::cmatrix::CMatrix;
use crate::relation::{Point, RelationError, Scheme};
use crate::wreath::WreathScheme;

/// `T(X, S, x0)` together with the extension `(X, S_{x0})` it lives in.
#[derive(Debug, Clone)]
pub struct TerwilligerContext {
    pub scheme: Scheme,
    pub base_point: Point,
    pub algebra: MatrixAlgebra,
    pub extension: PointExtension,
    /// Largest distance from a basis element of `T` to `A(S_{x0})`.
    pub containment_residual: f64,
}

/// `ε_{x0 s}` for every color `s`, in color order.
pub fn neighborhood_projectors(scheme: &Scheme, x0: Point) -> Vec<CMatrix> {
    (0..scheme.rank())
        .map(|s| CMatrix::projector(scheme.n(), &scheme.neighbors(x0, s)))
        .collect()
}

pub fn adjacency_matrices(scheme: &Scheme) -> Vec<CMatrix> {
    (0..scheme.rank())
        .map(|s| CMatrix::from_int(&scheme.adjacency(s)))
        .collect()
}

pub fn terwilliger_algebra(scheme: &Scheme, x0: Point) -> Result<TerwilligerContext, RelationError> {
    terwilliger_algebra_with(scheme, x0, Tolerances::default())
}

pub fn terwilliger_algebra_with(
    scheme: &Scheme,
    x0: Point,
    tolerances: Tolerances,
) -> Result<TerwilligerContext, RelationError> {
    scheme.check_point(x0)?;
    let mut generators = adjacency_matrices(scheme);
    generators.extend(neighborhood_projectors(scheme, x0));
    let algebra = generate_algebra_with(&generators, true, tolerances).expect("generators share one dimension");
    let extension = one_point_extension(scheme, x0)?;
    let mut ext_span = OrthonormalSpan::new(scheme.n(), algebra.tolerances().span_pivot);
    for c in 0..extension.config.rank() {
        ext_span.try_insert(&CMatrix::from_int(&extension.config.adjacency(c)));
    }
    let containment_residual = algebra
        .basis()
        .iter()
        .map(|b| ext_span.residual(b))
        .fold(0.0, f64::max);
    Ok(TerwilligerContext {
        scheme: scheme.clone(),
        base_point: x0,
        algebra,
        extension,
        containment_residual,
    })
}

/// `Σ_s n_s⁻¹ ε_{x0s} J ε_{x0s}` with exact rational entries.
pub fn trivial_idempotent_exact(scheme: &Scheme, x0: Point) -> Vec<Vec<Rational64>> {
    let n = scheme.n();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let s = scheme.color(x0, x);
                    if s == scheme.color(x0, y) {
                        Rational64::new(1, scheme.valencies()[s] as i64)
                    } else {
                        Rational64::from_integer(0)
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact test of `E² = E`.
pub fn is_idempotent_exact(m: &[Vec<Rational64>]) -> bool {
    let n = m.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let v: Rational64 = (0..n).map(|k| m[i][k] * m[k][j]).sum();
            v == m[i][j]
        })
    })
}

pub fn rational_to_cmatrix(m: &[Vec<Rational64>]) -> CMatrix {
    CMatrix::from_fn(m.len(), |i, j| {
        let r = m[i][j];
        (*r.numer() as f64 / *r.denom() as f64).into()
    })
}

pub fn trivial_idempotent(ctx: &TerwilligerContext) -> CMatrix {
    rational_to_cmatrix(&trivial_idempotent_exact(&ctx.scheme, ctx.base_point))
}

/// Dimensions compared in the equality `T(X, S, x0) = A(S_{x0})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionEquality {
    pub terwilliger_dim: usize,
    pub extension_rank: usize,
    pub containment_residual: f64,
    pub equal: bool,
}

pub fn verify_extension_equality(ctx: &TerwilligerContext) -> ExtensionEquality {
    let terwilliger_dim = ctx.algebra.dim();
    let extension_rank = ctx.extension.config.rank();
    ExtensionEquality {
        terwilliger_dim,
        extension_rank,
        containment_residual: ctx.containment_residual,
        equal: terwilliger_dim == extension_rank,
    }
}

/// Dimensions around the subalgebra `U ≅ T(Y, T, y0)` inside `T(S ≀ T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct USubalgebraReport {
    /// dimension of the algebra generated by `|X|⁻¹ J_X ⊗ ε_{y0t} σ_u ε_{y0t'}`
    pub dim_u: usize,
    pub dim_terwilliger_t: usize,
    pub extension_rank: usize,
    /// largest relative distance from `J_X ⊗ σ_c` to `U` over extension colors `c`
    pub pattern_residual: f64,
    /// dimension of the unital algebra generated by `J_X ⊗ σ_t` and `I_X ⊗ ε_{y0t}`
    pub literal_generator_dim: usize,
}

#[derive(Debug, Clone)]
pub struct USubalgebra {
    pub algebra: MatrixAlgebra,
    pub report: USubalgebraReport,
}

pub fn u_subalgebra(w: &WreathScheme, y0: Point) -> Result<USubalgebra, RelationError> {
    let t = w.right();
    t.check_point(y0)?;
    let nx = w.x_size();
    let jx = CMatrix::all_ones(nx).scale_real(1.0 / nx as f64);
    let sigma = adjacency_matrices(t);
    let eps = neighborhood_projectors(t, y0);
    let mut gens = Vec::new();
    for e1 in &eps {
        for s in &sigma {
            let left = e1 * s;
            for e2 in &eps {
                let m = &left * e2;
                if m.frobenius_norm() > 0.0 {
                    gens.push(jx.kron(&m));
                }
            }
        }
    }
    let algebra = generate_algebra_with(&gens, false, Tolerances::default())
        .expect("generators share one dimension");
    let ctx = terwilliger_algebra(t, y0)?;
    let ext = &ctx.extension.config;
    let ones = CMatrix::all_ones(nx);
    let pattern_residual = (0..ext.rank())
        .map(|c| {
            let m = ones.kron(&CMatrix::from_int(&ext.adjacency(c)));
            algebra.residual(&m) / m.frobenius_norm()
        })
        .fold(0.0, f64::max);
    let ix = CMatrix::identity(nx);
    let mut literal: Vec<CMatrix> = sigma.iter().map(|s| ones.kron(s)).collect();
    literal.extend(eps.iter().map(|e| ix.kron(e)));
    let literal_generator_dim = generate_algebra(&literal).expect("same dimension").dim();
    Ok(USubalgebra {
        report: USubalgebraReport {
            dim_u: algebra.dim(),
            dim_terwilliger_t: ctx.algebra.dim(),
            extension_rank: ext.rank(),
            pattern_residual,
            literal_generator_dim,
        },
        algebra,
    })
}

/// Dimensions of the corner of `T(S ≀ T)` by `P = I_X ⊗ ε_{Y∖{y0}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerReport {
    /// `dim P·T(S≀T)·P`
    pub corner_dim: usize,
    /// algebra generated by `J_X ⊗ σ_c` (`c` an extension color on
    /// `Y∖{y0}`) and `σ_s ⊗ ε_{Y∖{y0}}`
    pub generated_dim: usize,
    /// the same set together with `I_X ⊗ ε_{y0t}` for `t ≠ 1_Y`
    pub augmented_dim: usize,
    /// rank of the extension restricted to `Y∖{y0}`
    pub restricted_extension_rank: usize,
}

/// `wreath_ctx` must be the Terwilliger algebra of `w` at `(x0, y0)`.
pub fn corner_report(
    w: &WreathScheme,
    wreath_ctx: &TerwilligerContext,
    y0: Point,
) -> Result<CornerReport, RelationError> {
    let t = w.right();
    t.check_point(y0)?;
    let (nx, ny) = (w.x_size(), w.y_size());
    let rest_points: Vec<Point> = (0..ny).filter(|&y| y != y0).collect();
    let p = CMatrix::identity(nx).kron(&CMatrix::projector(ny, &rest_points));
    let corner_dim = wreath_ctx
        .algebra
        .corner(&p)
        .expect("projector has the ambient dimension")
        .dim();

    let ext = one_point_extension(t, y0)?;
    let rest = ext.restriction_off_base()?;
    let ones = CMatrix::all_ones(nx);
    let mut gens: Vec<CMatrix> = rest
        .color_map
        .iter()
        .map(|&c| ones.kron(&CMatrix::from_int(&ext.config.adjacency(c))))
        .collect();
    let eps_rest = CMatrix::projector(ny, &rest_points);
    let s = w.left();
    gens.extend((0..s.rank()).map(|c| CMatrix::from_int(&s.adjacency(c)).kron(&eps_rest)));
    let tol = Tolerances::default();
    let generated_dim = generate_algebra_with(&gens, false, tol).expect("same dimension").dim();
    let ix = CMatrix::identity(nx);
    gens.extend(
        t.nontrivial_colors()
            .map(|c| ix.kron(&CMatrix::projector(ny, &t.neighbors(y0, c)))),
    );
    let augmented_dim = generate_algebra_with(&gens, false, tol).expect("same dimension").dim();
    Ok(CornerReport {
        corner_dim,
        generated_dim,
        augmented_dim,
        restricted_extension_rank: rest.config.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::wreath::wreath_product;

    fn z7() -> Scheme {
        catalog::cayley_abelian(7, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap()
    }

    #[test]
    fn one_point_algebra_is_scalars() {
        let ctx = terwilliger_algebra(&catalog::trivial(), 0).unwrap();
        assert_eq!(ctx.algebra.dim(), 1);
        assert_eq!(trivial_idempotent(&ctx), CMatrix::identity(1));
    }

    #[test]
    fn z2_gives_full_matrix_algebra() {
        let ctx = terwilliger_algebra(&catalog::cyclic_group(2).unwrap(), 0).unwrap();
        assert_eq!(ctx.algebra.dim(), 4);
        assert_eq!(ctx.algebra.center().len(), 1);
    }

    #[test]
    fn k4_trivial_idempotent_blocks() {
        let k4 = catalog::one_class(4).unwrap();
        let e = trivial_idempotent_exact(&k4, 0);
        let third = Rational64::new(1, 3);
        let zero = Rational64::from_integer(0);
        assert_eq!(e[0][0], Rational64::from_integer(1));
        assert!((1..4).all(|i| e[0][i] == zero && e[i][0] == zero));
        assert!((1..4).all(|i| (1..4).all(|j| e[i][j] == third)));
        assert!(is_idempotent_exact(&e));
        let ctx = terwilliger_algebra(&k4, 0).unwrap();
        let center = ctx.algebra.center();
        let cert = ctx.algebra.certify(
            &center,
            trivial_idempotent(&ctx),
            crate::algebra::Provenance::Trivial,
        );
        assert!(cert.is_central_primitive(1e-8), "{cert:?}");
    }

    #[test]
    fn z7_equality_and_containment() {
        for y0 in 0..7 {
            let ctx = terwilliger_algebra(&z7(), y0).unwrap();
            let eq = verify_extension_equality(&ctx);
            assert!(eq.equal, "{eq:?}");
            assert_eq!(eq.terwilliger_dim, 17);
            assert!(eq.containment_residual < 1e-9);
        }
    }

    #[test]
    fn z4_is_a_strict_control() {
        let ctx = terwilliger_algebra(&catalog::cyclic_group(4).unwrap(), 0).unwrap();
        let eq = verify_extension_equality(&ctx);
        assert_eq!(eq.terwilliger_dim, 16);
        assert!(eq.containment_residual < 1e-9);
    }

    #[test]
    fn z7_trivial_idempotent_is_extracted() {
        let ctx = terwilliger_algebra(&z7(), 0).unwrap();
        let e = trivial_idempotent(&ctx);
        let found = ctx.algebra.central_primitive_idempotents(1).unwrap();
        assert_eq!(found.len(), ctx.algebra.center().len());
        assert_eq!(found.iter().filter(|c| c.element.distance(&e) < 1e-7).count(), 1);
    }

    #[test]
    fn u_matches_terwilliger_of_right_factor() {
        let w = wreath_product(&catalog::cyclic_group(2).unwrap(), &z7());
        let u = u_subalgebra(&w, 0).unwrap();
        assert_eq!(u.report.dim_u, u.report.dim_terwilliger_t);
        assert_eq!(u.report.dim_u, 17);
        assert!(u.report.pattern_residual < 1e-9);
        assert_eq!(u.report.literal_generator_dim, 20);
    }

    #[test]
    fn corner_dimensions_z2_z7() {
        let w = wreath_product(&catalog::cyclic_group(2).unwrap(), &z7());
        let ctx = terwilliger_algebra(w.scheme(), w.point(0, 0)).unwrap();
        let r = corner_report(&w, &ctx, 0).unwrap();
        assert_eq!(r.corner_dim, 14);
        assert_eq!(r.generated_dim, 13);
        assert_eq!(r.augmented_dim, 14);
    }
}
