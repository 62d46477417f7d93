//! Explicit central primitive idempotents of `T(S ≀ T)` for a 3-equivalenced
//! `(Y, T)`, and their comparison with a purely numerical decomposition.
//!
//! The families are:
//!
//! * the trivial idempotent of the product;
//! * `ẽ_χ = e_χ ⊗ ε_{y0}` for the nontrivial `e_χ` of `T(X, S, x0)`;
//! * `ê_ψ = e_ψ ⊗ ε_{y0t}` for the nontrivial `e_ψ` of `A(S)` and each `t ≠ 1`;
//! * for `|T| > 2`, `e_η1 = Σ_t G_{t,t}` and `e_η2 = Σ_t G′_{t,t}` built from
//!   the well-ordered labels of the fibers `y0t`;
//! * for `|T| = 2`, the complement `|X|⁻¹ J_X ⊗ (ε_{y0t} − J_{y0t}/3)`, which
//!   the other families do not cover.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{generate_algebra_with, numerical_rank, AlgebraError, MatrixAlgebra, OrthonormalSpan, Provenance, Tolerances};
use crate::cmatrix::{CMatrix, ZERO};
use crate::equivalenced::{is_k_equivalenced, well_order, EquivError, WellOrderedExtension};
use crate::intmat::IntMatrix;
use crate::relation::{Color, Point, RelationError, Scheme};
use crate::terwilliger::{
    adjacency_matrices, neighborhood_projectors, rational_to_cmatrix, terwilliger_algebra_with, trivial_idempotent,
    trivial_idempotent_exact, TerwilligerContext,
};
use crate::wreath::{wreath_product, WreathScheme};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdempotentError {
    #[error("right factor is not 3-equivalenced")]
    NotThreeEquivalenced,
    #[error("{constructed} idempotents constructed but numeric extraction found {numeric}")]
    CountMismatch { constructed: usize, numeric: usize },
    #[error("numeric idempotent {numeric_index} has no partner (nearest at distance {distance:e})")]
    MatchFailure { numeric_index: usize, distance: f64 },
    #[error("constructed idempotents sum to I only up to {residual:e} (tolerance {tolerance:e})")]
    SumResidualExceeded { residual: f64, tolerance: f64 },
    #[error("ideal check failed: {what} (residual {residual:e})")]
    IdealViolation { what: String, residual: f64 },
    #[error(transparent)]
    Equiv(#[from] EquivError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// The labeled generating families of `T(S ≀ T)` at `(x0, y0)`:
/// `J_X⊗σ_t`, `I_X⊗ε_{y0t}` (`t ≠ 1`), `σ_s⊗I_Y`, `ε_{x0s}⊗ε_{y0}`.
pub fn wreath_generators(w: &WreathScheme, x0: Point, y0: Point) -> Vec<(String, CMatrix)> {
    let (s, t) = (w.left(), w.right());
    let jx = CMatrix::all_ones(w.x_size());
    let ix = CMatrix::identity(w.x_size());
    let iy = CMatrix::identity(w.y_size());
    let e_y0 = CMatrix::projector(w.y_size(), &[y0]);
    let sig_t = adjacency_matrices(t);
    let eps_t = neighborhood_projectors(t, y0);
    let mut out = Vec::new();
    for c in t.nontrivial_colors() {
        out.push((format!("J_X⊗σ_{c}"), jx.kron(&sig_t[c])));
        out.push((format!("I_X⊗ε_y0·{c}"), ix.kron(&eps_t[c])));
    }
    for (c, (sig, eps)) in adjacency_matrices(s).iter().zip(neighborhood_projectors(s, x0)).enumerate() {
        out.push((format!("σ_{c}⊗I_Y"), sig.kron(&iy)));
        out.push((format!("ε_x0·{c}⊗ε_y0"), eps.kron(&e_y0)));
    }
    out
}

fn numeric_nontrivial(alg: &MatrixAlgebra, trivial: &CMatrix, seed: u64) -> Result<Vec<CMatrix>, AlgebraError> {
    let tol = alg.tolerances().matching;
    Ok(alg
        .central_primitive_idempotents(seed)?
        .into_iter()
        .map(|c| c.element)
        .filter(|e| e.distance(trivial) >= tol)
        .collect())
}

/// `e_χ ⊗ ε_{y0}` for the nontrivial central primitive idempotents of
/// `T(X, S, x0)`.
pub fn tilde_idempotents(
    w: &WreathScheme,
    x0: Point,
    y0: Point,
    seed: u64,
    tolerances: Tolerances,
) -> Result<Vec<CMatrix>, IdempotentError> {
    let ctx = terwilliger_algebra_with(w.left(), x0, tolerances)?;
    w.right().check_point(y0)?;
    let e_y0 = CMatrix::projector(w.y_size(), &[y0]);
    Ok(numeric_nontrivial(&ctx.algebra, &trivial_idempotent(&ctx), seed)?
        .iter()
        .map(|e| e.kron(&e_y0))
        .collect())
}

/// `(t, e_ψ ⊗ ε_{y0t})` for the nontrivial central primitive idempotents of
/// `A(S)` and every nontrivial `t`.
pub fn hat_idempotents(
    w: &WreathScheme,
    y0: Point,
    seed: u64,
    tolerances: Tolerances,
) -> Result<Vec<(Color, CMatrix)>, IdempotentError> {
    let s = w.left();
    let t = w.right();
    t.check_point(y0)?;
    let alg = generate_algebra_with(&adjacency_matrices(s), true, tolerances)?;
    let j = CMatrix::all_ones(s.n()).scale_real(1.0 / s.n() as f64);
    let psi = numeric_nontrivial(&alg, &j, seed)?;
    let eps = neighborhood_projectors(t, y0);
    let mut out = Vec::new();
    for c in t.nontrivial_colors() {
        out.extend(psi.iter().map(|e| (c, e.kron(&eps[c]))));
    }
    Ok(out)
}

/// The three pairing patterns between `y0t` and `y0t′` as 0/1 matrices on `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTriple {
    /// `y_{t(k)} ↦ y_{t′(k)}`
    pub identity: IntMatrix,
    /// `y_{t(k)} ↦ y_{t′(k+1)}`
    pub over: IntMatrix,
    /// `y_{t(k)} ↦ y_{t′(k+2)}`
    pub under: IntMatrix,
}

pub fn epsilon_triple(order: &WellOrderedExtension, t: Color, t_prime: Color) -> EpsilonTriple {
    let n = order.scheme.n();
    let a = order.triple(t).expect("nontrivial color");
    let b = order.triple(t_prime).expect("nontrivial color");
    let pattern = |shift: usize| {
        let mut m = IntMatrix::zeros(n);
        for k in 0..3 {
            m.set(a[k], b[(k + shift) % 3], 1);
        }
        m
    };
    EpsilonTriple {
        identity: pattern(0),
        over: pattern(1),
        under: pattern(2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GVariant {
    /// `ε + ω·ε̄ + ω²·ε̲`
    Omega,
    /// `ε + ω²·ε̄ + ω·ε̲`
    Omega2,
}

/// `ω = exp(2πi/3)`
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

pub fn g_matrix(w: &WreathScheme, order: &WellOrderedExtension, t: Color, t_prime: Color, variant: GVariant) -> CMatrix {
    let eps = epsilon_triple(order, t, t_prime);
    let (w1, w2) = match variant {
        GVariant::Omega => (omega(), omega() * omega()),
        GVariant::Omega2 => (omega() * omega(), omega()),
    };
    let ny = w.y_size();
    let inner = CMatrix::from_fn(ny, |i, j| {
        Complex64::from(eps.identity.get(i, j) as f64)
            + w1 * eps.over.get(i, j) as f64
            + w2 * eps.under.get(i, j) as f64
    });
    let scale = 1.0 / (3.0 * w.x_size() as f64);
    CMatrix::all_ones(w.x_size()).scale_real(scale).kron(&inner)
}

/// `(e_η1, e_η2) = (Σ_t G_{t,t}, Σ_t G′_{t,t})`
pub fn eta_idempotents(w: &WreathScheme, order: &WellOrderedExtension) -> (CMatrix, CMatrix) {
    let n = w.scheme().n();
    let colors: Vec<Color> = w.right().nontrivial_colors().collect();
    let sum = |v| {
        let gs: Vec<CMatrix> = colors.iter().map(|&t| g_matrix(w, order, t, t, v)).collect();
        CMatrix::sum_of(n, &gs)
    };
    (sum(GVariant::Omega), sum(GVariant::Omega2))
}

/// `|X|⁻¹ J_X ⊗ (ε_{y0t} − J_{y0t}/3)` for each nontrivial `t`.
pub fn complement_idempotents(w: &WreathScheme, y0: Point) -> Vec<(Color, CMatrix)> {
    let t = w.right();
    let ny = w.y_size();
    let jx = CMatrix::all_ones(w.x_size()).scale_real(1.0 / w.x_size() as f64);
    t.nontrivial_colors()
        .map(|c| {
            let fiber = t.neighbors(y0, c);
            let k = fiber.len() as f64;
            let inner = CMatrix::from_fn(ny, |i, j| {
                if fiber.contains(&i) && fiber.contains(&j) {
                    Complex64::from(f64::from(u8::from(i == j)) - 1.0 / k)
                } else {
                    ZERO
                }
            });
            (c, jx.kron(&inner))
        })
        .collect()
}

/// Residuals of the matrix-unit and ideal checks on the `G` and `G′` families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealReport {
    pub family_size: usize,
    /// `max ‖G_{ab} G_{cd} − δ_{bc} G_{ad}‖`, both families
    pub matrix_unit_residual: f64,
    pub span_rank_g: usize,
    pub span_rank_g_prime: usize,
    /// `max dist(gG, span)` and `dist(Gg, span)` over the generating families
    pub generator_closure_residual: f64,
    /// `max ‖G G′‖`, `‖G′ G‖`
    pub cross_residual: f64,
    /// `max ‖ε_{(x0,y0)u} G_{t,t′} − [u = t̄] G_{t,t′}‖`
    pub epsilon_action_residual: f64,
    /// `max dist(G, T(S ≀ T))`
    pub membership_residual: f64,
}

/// Checks both `G` families against the matrix-unit rule and the ideal
/// property; fails with the worst offender when a residual exceeds `tol`.
pub fn verify_ideal_structure(
    w: &WreathScheme,
    order: &WellOrderedExtension,
    wreath_ctx: &TerwilligerContext,
    x0: Point,
    tol: f64,
) -> Result<IdealReport, IdempotentError> {
    let colors: Vec<Color> = w.right().nontrivial_colors().collect();
    let l = colors.len();
    let family = |v| -> Vec<Vec<CMatrix>> {
        colors
            .iter()
            .map(|&a| colors.iter().map(|&b| g_matrix(w, order, a, b, v)).collect())
            .collect()
    };
    let g = family(GVariant::Omega);
    let gp = family(GVariant::Omega2);
    let y0 = order.base_point;
    let violation = |what: String, residual: f64| IdempotentError::IdealViolation { what, residual };

    let mut matrix_unit_residual: f64 = 0.0;
    for fam in [&g, &gp] {
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    for d in 0..l {
                        let prod = &fam[a][b] * &fam[c][d];
                        let r = if b == c {
                            prod.distance(&fam[a][d])
                        } else {
                            prod.frobenius_norm()
                        };
                        if r > tol {
                            return Err(violation(format!("G[{a}][{b}]·G[{c}][{d}]"), r));
                        }
                        matrix_unit_residual = matrix_unit_residual.max(r);
                    }
                }
            }
        }
    }

    let flat = |fam: &Vec<Vec<CMatrix>>| fam.iter().flatten().cloned().collect::<Vec<_>>();
    let (g_flat, gp_flat) = (flat(&g), flat(&gp));
    let cutoff = wreath_ctx.algebra.tolerances().singular_cutoff;
    let span_rank_g = numerical_rank(&g_flat, cutoff);
    let span_rank_g_prime = numerical_rank(&gp_flat, cutoff);
    for (rank, name) in [(span_rank_g, "G"), (span_rank_g_prime, "G′")] {
        if rank != l * l {
            return Err(violation(format!("{name} family spans dimension {rank}, expected {}", l * l), 1.0));
        }
    }

    let n = w.scheme().n();
    let span_of = |fam: &[CMatrix]| {
        let mut sp = OrthonormalSpan::new(n, wreath_ctx.algebra.tolerances().span_pivot);
        fam.iter().for_each(|m| {
            sp.try_insert(m);
        });
        sp
    };
    let mut generator_closure_residual: f64 = 0.0;
    for (fam, span) in [(&g_flat, span_of(&g_flat)), (&gp_flat, span_of(&gp_flat))] {
        for (name, gen) in wreath_generators(w, x0, y0) {
            for (i, m) in fam.iter().enumerate() {
                for prod in [&gen * m, m * &gen] {
                    let r = span.residual(&prod);
                    if r > tol {
                        return Err(violation(format!("{name} times family element {i}"), r));
                    }
                    generator_closure_residual = generator_closure_residual.max(r);
                }
            }
        }
    }

    let mut cross_residual: f64 = 0.0;
    for a in &g_flat {
        for b in &gp_flat {
            cross_residual = cross_residual.max((a * b).frobenius_norm()).max((b * a).frobenius_norm());
        }
    }
    if cross_residual > tol {
        return Err(violation("G·G′ does not vanish".into(), cross_residual));
    }

    let stars = w.point_star_sets(x0, y0);
    let mut epsilon_action_residual: f64 = 0.0;
    for star in &stars {
        let eps = CMatrix::projector(n, &star.points);
        for (ai, &a) in colors.iter().enumerate() {
            let hit = w.bar(a) == Some(star.color);
            for m in [&g[ai], &gp[ai]].into_iter().flatten() {
                let prod = &eps * m;
                let r = if hit { prod.distance(m) } else { prod.frobenius_norm() };
                epsilon_action_residual = epsilon_action_residual.max(r);
            }
        }
    }
    if epsilon_action_residual > tol {
        return Err(violation("ε action rule".into(), epsilon_action_residual));
    }

    let membership_residual = g_flat
        .iter()
        .chain(&gp_flat)
        .map(|m| wreath_ctx.algebra.residual(m))
        .fold(0.0, f64::max);
    if membership_residual > tol {
        return Err(violation("family element outside T(S≀T)".into(), membership_residual));
    }

    Ok(IdealReport {
        family_size: l * l,
        matrix_unit_residual,
        span_rank_g,
        span_rank_g_prime,
        generator_closure_residual,
        cross_residual,
        epsilon_action_residual,
        membership_residual,
    })
}

/// Certificate data for one constructed idempotent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdempotentSummary {
    pub provenance: Provenance,
    pub trace: f64,
    pub idempotency_residual: f64,
    pub centrality_residual: f64,
    pub membership_residual: f64,
    /// `max ‖EG − GE‖` over the four generating families
    pub family_commutation_residual: f64,
    pub central_component_dim: usize,
    /// `dim E·T(S≀T)`, the dimension of the Wedderburn component
    pub component_dim: usize,
    pub matched_numeric: usize,
    pub match_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCounts {
    pub trivial: usize,
    pub tilde: usize,
    pub hat: usize,
    pub eta: usize,
    pub complement: usize,
    pub constructed: usize,
    pub numeric: usize,
    pub center_dim: usize,
    /// `1 + |Irr(T(U))^×| + |T_3|·|Irr(A(S))^×| + (2 if |T| > 2)`
    pub formula: usize,
    /// `formula`, plus one complement idempotent when `|T| = 2`
    pub corrected_formula: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub x_size: usize,
    pub y_size: usize,
    pub t_rank: usize,
    pub x0: Point,
    pub y0: Point,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub algebra_dim: usize,
    pub counts: FamilyCounts,
    pub formula_matches: bool,
    pub sum_residual: f64,
    pub orthogonality_residual: f64,
    /// `‖e_1 − (e_1(T(X,S,x0)) ⊗ ε_{y0} + Σ_t (3|X|)⁻¹ ε_F J ε_F)‖`
    pub trivial_split_residual: f64,
    pub max_match_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealReport>,
    pub idempotents: Vec<IdempotentSummary>,
    pub pass: bool,
}

/// Everything produced by [`theorem_decomposition`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub report: DecompositionReport,
    pub elements: Vec<CMatrix>,
    pub numeric: Vec<CMatrix>,
}

/// The trivial, tilde, hat and η (or, when `|T| = 2`, complement)
/// idempotents of `T(S ≀ T)` at base point `(x0, y0)`, in that order.
/// Needs no numeric algebra of `S ≀ T` itself.
pub fn constructed_idempotents(
    w: &WreathScheme,
    x0: Point,
    y0: Point,
    seed: u64,
    tolerances: Tolerances,
) -> Result<Vec<(Provenance, CMatrix)>, IdempotentError> {
    let t = w.right();
    if !is_k_equivalenced(t, 3)? {
        return Err(IdempotentError::NotThreeEquivalenced);
    }
    let trivial = rational_to_cmatrix(&trivial_idempotent_exact(w.scheme(), w.point(x0, y0)));
    let mut out = vec![(Provenance::Trivial, trivial)];
    out.extend(tilde_idempotents(w, x0, y0, seed, tolerances)?.into_iter().map(|e| (Provenance::Tilde, e)));
    out.extend(hat_idempotents(w, y0, seed, tolerances)?.into_iter().map(|(c, e)| (Provenance::Hat { t: c }, e)));
    if t.rank() > 2 {
        let order = well_order(t, y0)?;
        let (e1, e2) = eta_idempotents(w, &order);
        out.push((Provenance::Eta1, e1));
        out.push((Provenance::Eta2, e2));
    } else {
        out.extend(complement_idempotents(w, y0).into_iter().map(|(_, e)| (Provenance::Complement, e)));
    }
    Ok(out)
}

/// Builds every family, certifies it in `T(S ≀ T)`, and matches it one to one
/// against the numerically extracted central primitive idempotents.
pub fn theorem_decomposition(
    s: &Scheme,
    t: &Scheme,
    x0: Point,
    y0: Point,
    seed: u64,
) -> Result<Decomposition, IdempotentError> {
    theorem_decomposition_with(s, t, x0, y0, seed, Tolerances::default())
}

pub fn theorem_decomposition_with(
    s: &Scheme,
    t: &Scheme,
    x0: Point,
    y0: Point,
    seed: u64,
    tolerances: Tolerances,
) -> Result<Decomposition, IdempotentError> {
    if !is_k_equivalenced(t, 3)? {
        return Err(IdempotentError::NotThreeEquivalenced);
    }
    s.check_point(x0)?;
    t.check_point(y0)?;
    let w = wreath_product(s, t);
    let ctx = terwilliger_algebra_with(w.scheme(), w.point(x0, y0), tolerances)?;
    let center = ctx.algebra.center();
    let n = w.scheme().n();
    let nx = w.x_size() as f64;

    let constructed = constructed_idempotents(&w, x0, y0, seed, tolerances)?;
    let count = |f: fn(&Provenance) -> bool| constructed.iter().filter(|(p, _)| f(p)).count();
    let tilde_count = count(|p| matches!(p, Provenance::Tilde));
    let hat_count = count(|p| matches!(p, Provenance::Hat { .. }));
    let eta = count(|p| matches!(p, Provenance::Eta1 | Provenance::Eta2));
    let complement = count(|p| matches!(p, Provenance::Complement));
    let t_rank = t.rank();
    let ideal = if t_rank > 2 {
        let order = well_order(t, y0)?;
        Some(verify_ideal_structure(&w, &order, &ctx, x0, tolerances.certify)?)
    } else {
        None
    };

    let identity = CMatrix::identity(n);
    let sum = CMatrix::sum_of(n, constructed.iter().map(|(_, e)| e));
    let sum_residual = sum.distance(&identity);
    let mut orthogonality_residual: f64 = 0.0;
    for (i, (_, a)) in constructed.iter().enumerate() {
        for (j, (_, b)) in constructed.iter().enumerate() {
            if i != j {
                orthogonality_residual = orthogonality_residual.max((a * b).frobenius_norm());
            }
        }
    }

    let trivial_split_residual = {
        let ctx_s = terwilliger_algebra_with(s, x0, tolerances)?;
        let mut split = trivial_idempotent(&ctx_s).kron(&CMatrix::projector(w.y_size(), &[y0]));
        for c in t.nontrivial_colors() {
            let pts: Vec<Point> = (0..w.x_size())
                .flat_map(|x| t.neighbors(y0, c).into_iter().map(move |y| (x, y)))
                .map(|(x, y)| w.point(x, y))
                .collect();
            let f = CMatrix::projector(n, &pts);
            let block = CMatrix::all_ones(n).compress(&f).scale_real(1.0 / (3.0 * nx));
            split += &block;
        }
        split.distance(&constructed[0].1)
    };

    let numeric: Vec<CMatrix> = ctx
        .algebra
        .central_primitive_idempotents(seed)?
        .into_iter()
        .map(|c| c.element)
        .collect();
    if numeric.len() != constructed.len() {
        return Err(IdempotentError::CountMismatch {
            constructed: constructed.len(),
            numeric: numeric.len(),
        });
    }
    if sum_residual > tolerances.certify {
        return Err(IdempotentError::SumResidualExceeded {
            residual: sum_residual,
            tolerance: tolerances.certify,
        });
    }
    let mut partner = vec![None; constructed.len()];
    for (ni, e) in numeric.iter().enumerate() {
        let (best, distance) = constructed
            .iter()
            .enumerate()
            .map(|(ci, (_, c))| (ci, c.distance(e)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if distance >= tolerances.matching || partner[best].is_some() {
            return Err(IdempotentError::MatchFailure {
                numeric_index: ni,
                distance,
            });
        }
        partner[best] = Some((ni, distance));
    }

    let generators = wreath_generators(&w, x0, y0);
    let idempotents: Vec<IdempotentSummary> = constructed
        .iter()
        .zip(&partner)
        .map(|((prov, e), p)| {
            let (matched_numeric, match_distance) = p.expect("every constructed idempotent matched");
            let cert = ctx.algebra.certify(&center, e.clone(), *prov);
            let products: Vec<CMatrix> = ctx.algebra.basis().iter().map(|b| e * b).collect();
            IdempotentSummary {
                provenance: *prov,
                trace: cert.rank(),
                idempotency_residual: cert.idempotency_residual,
                centrality_residual: cert.centrality_residual,
                membership_residual: cert.membership_residual,
                family_commutation_residual: generators
                    .iter()
                    .map(|(_, g)| e.commutator_norm(g))
                    .fold(0.0, f64::max),
                central_component_dim: cert.central_component_dim,
                component_dim: numerical_rank(&products, tolerances.singular_cutoff),
                matched_numeric,
                match_distance,
            }
        })
        .collect();

    let psi_count = if t_rank > 1 { hat_count / (t_rank - 1) } else { 0 };
    let formula = 1 + tilde_count + (t_rank - 1) * psi_count + if t_rank > 2 { 2 } else { 0 };
    let corrected_formula = formula + usize::from(t_rank == 2);
    let counts = FamilyCounts {
        trivial: 1,
        tilde: tilde_count,
        hat: hat_count,
        eta,
        complement,
        constructed: constructed.len(),
        numeric: numeric.len(),
        center_dim: center.len(),
        formula,
        corrected_formula,
    };
    let max_match_distance = idempotents.iter().map(|i| i.match_distance).fold(0.0, f64::max);
    let tol = tolerances.certify;
    let pass = idempotents.iter().all(|i| {
        i.idempotency_residual < tol
            && i.centrality_residual < tol
            && i.membership_residual < tol
            && i.family_commutation_residual < tol
            && i.central_component_dim == 1
    }) && orthogonality_residual < tol
        && counts.constructed == counts.center_dim
        && counts.constructed == counts.corrected_formula;
    let report = DecompositionReport {
        x_size: w.x_size(),
        y_size: w.y_size(),
        t_rank,
        x0,
        y0,
        seed,
        tolerances,
        algebra_dim: ctx.algebra.dim(),
        formula_matches: counts.constructed == counts.formula,
        counts,
        sum_residual,
        orthogonality_residual,
        trivial_split_residual,
        max_match_distance,
        ideal,
        idempotents,
        pass,
    };
    Ok(Decomposition {
        report,
        elements: constructed.into_iter().map(|(_, e)| e).collect(),
        numeric,
    })
}
