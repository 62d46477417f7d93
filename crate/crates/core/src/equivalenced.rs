//! 3-equivalenced schemes: valency checks, the classification of products
//! `σ_u σ_v`, and the well-ordering of the one-point extension.
//!
//! A labeling of the extension's point set is *well-ordered* when every
//! extension color meets each block `y0r × y0r'` between 3-point fibers in
//! `I`, `P` or `P²`, where `P` is the cyclic shift with `P[k][k+1] = 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::{one_point_extension, PointExtension};
use crate::relation::{Color, Point, RelationError, Scheme};

pub type Block = [[u8; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("equivalenced checks need more than one point, got {0}")]
    TooFewPoints(usize),
    #[error("not 3-equivalenced: color {color} has valency {valency}")]
    NotThreeEquivalenced { color: Color, valency: usize },
    #[error("well-ordering needs at least two nontrivial colors")]
    RankTooSmall,
    #[error("product σ_{u}·σ_{v} = {coefficients:?} matches no admissible pattern")]
    PatternViolation {
        u: Color,
        v: Color,
        coefficients: Vec<u32>,
    },
    #[error("no color meets y0·{u} × y0·{v} in a full 3×3 permutation block")]
    NoneFound { u: Color, v: Color },
    #[error(
        "well-ordering check failed: extension color {extension_color} meets \
         y0·{r} × y0·{r_prime} in {block:?}"
    )]
    WellOrderingFailed {
        r: Color,
        r_prime: Color,
        extension_color: Color,
        block: Block,
    },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// Whether every nontrivial color has valency `k`.
pub fn is_k_equivalenced(scheme: &Scheme, k: usize) -> Result<bool, EquivError> {
    if scheme.n() <= 1 {
        return Err(EquivError::TooFewPoints(scheme.n()));
    }
    Ok(scheme.nontrivial_colors().all(|c| scheme.valencies()[c] == k))
}

fn require_three_equivalenced(scheme: &Scheme) -> Result<(), EquivError> {
    if scheme.n() <= 1 {
        return Err(EquivError::TooFewPoints(scheme.n()));
    }
    match scheme.nontrivial_colors().find(|&c| scheme.valencies()[c] != 3) {
        Some(color) => Err(EquivError::NotThreeEquivalenced {
            color,
            valency: scheme.valencies()[color],
        }),
        None => Ok(()),
    }
}

/// The shape of `σ_u σ_v` in a 3-equivalenced scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum ProductCase {
    /// `u ≠ v*`: `σ_{w1} + σ_{w2} + σ_{w3}`, distinct nontrivial `w_i`
    ThreeDistinct { w: [Color; 3] },
    /// `u ≠ v*`: `σ_{w1} + 2σ_{w2}`, distinct nontrivial `w_i`
    OnePlusDouble { w1: Color, w2: Color },
    /// `v = u*`: `3σ_1 + σ_w + σ_{w*}` with `w ≠ w*`
    InverseSplit { w: Color, w_star: Color },
    /// `v = u* = u`: `3σ_1 + 2σ_u`
    InverseDouble,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPattern {
    pub u: Color,
    pub v: Color,
    pub case: ProductCase,
    /// `p_{uv}^w` for every `w`
    pub coefficients: Vec<u32>,
}

fn classify(scheme: &Scheme, u: Color, v: Color) -> Result<ProductPattern, EquivError> {
    let coefficients: Vec<u32> = (0..scheme.rank())
        .map(|w| scheme.tensor().get(u, v, w))
        .collect();
    let violation = || EquivError::PatternViolation {
        u,
        v,
        coefficients: coefficients.clone(),
    };
    let support: Vec<(Color, u32)> = coefficients
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| (w, c))
        .collect();
    let case = if v == scheme.transpose_of(u) {
        if coefficients[0] != 3 {
            return Err(violation());
        }
        match support.as_slice() {
            [(w, 1), (w2, 1)] if scheme.transpose_of(*w) == *w2 && w != w2 => {
                ProductCase::InverseSplit { w: *w, w_star: *w2 }
            }
            [(w, 2)] if *w == u && scheme.transpose_of(u) == u => ProductCase::InverseDouble,
            _ => return Err(violation()),
        }
    } else {
        if coefficients[0] != 0 {
            return Err(violation());
        }
        match support.as_slice() {
            [(a, 1), (b, 1), (c, 1)] => ProductCase::ThreeDistinct { w: [*a, *b, *c] },
            [(a, 1), (b, 2)] => ProductCase::OnePlusDouble { w1: *a, w2: *b },
            [(a, 2), (b, 1)] => ProductCase::OnePlusDouble { w1: *b, w2: *a },
            _ => return Err(violation()),
        }
    };
    Ok(ProductPattern {
        u,
        v,
        case,
        coefficients,
    })
}

/// Classifies `σ_u σ_v` for every ordered pair of nontrivial colors.
pub fn verify_product_patterns(scheme: &Scheme) -> Result<Vec<ProductPattern>, EquivError> {
    require_three_equivalenced(scheme)?;
    let mut out = Vec::new();
    for u in scheme.nontrivial_colors() {
        for v in scheme.nontrivial_colors() {
            out.push(classify(scheme, u, v)?);
        }
    }
    Ok(out)
}

/// `|u* v|`, the number of colors `w` with `p_{u*v}^w > 0`.
pub fn product_support_size(scheme: &Scheme, u: Color, v: Color) -> usize {
    let us = scheme.transpose_of(u);
    (0..scheme.rank())
        .filter(|&w| scheme.tensor().get(us, v, w) > 0)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullBlock {
    pub color: Color,
    /// rows indexed by `y0u`, columns by `y0v`, both ascending
    pub block: Block,
}

fn block_of(scheme: &Scheme, rows: &[Point], cols: &[Point], color: Color) -> Block {
    let mut b = [[0u8; 3]; 3];
    for (i, &x) in rows.iter().enumerate() {
        for (j, &y) in cols.iter().enumerate() {
            b[i][j] = u8::from(scheme.color(x, y) == color);
        }
    }
    b
}

fn is_permutation_block(b: &Block) -> bool {
    (0..3).all(|i| b[i].iter().sum::<u8>() == 1 && (0..3).map(|k| b[k][i]).sum::<u8>() == 1)
}

fn fiber3(scheme: &Scheme, y0: Point, u: Color) -> Result<Vec<Point>, EquivError> {
    scheme.check_color(u)?;
    let f = scheme.neighbors(y0, u);
    if f.len() != 3 {
        return Err(EquivError::NotThreeEquivalenced {
            color: u,
            valency: f.len(),
        });
    }
    Ok(f)
}

/// Lowest-indexed color meeting `y0u × y0v` in a 3×3 permutation block.
pub fn exists_full_block(scheme: &Scheme, y0: Point, u: Color, v: Color) -> Result<FullBlock, EquivError> {
    scheme.check_point(y0)?;
    let rows = fiber3(scheme, y0, u)?;
    let cols = fiber3(scheme, y0, v)?;
    (0..scheme.rank())
        .map(|c| FullBlock {
            color: c,
            block: block_of(scheme, &rows, &cols, c),
        })
        .find(|fb| is_permutation_block(&fb.block))
        .ok_or(EquivError::NoneFound { u, v })
}

/// `I`, `P`, `P²` with `P[k][k+1] = 1`.
pub fn cyclic_power(k: usize) -> Block {
    let mut b = [[0u8; 3]; 3];
    for (i, row) in b.iter_mut().enumerate() {
        row[(i + k) % 3] = 1;
    }
    b
}

/// One 3-point fiber `y0t` with its chosen labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedFiber {
    pub color: Color,
    /// `(y_{t(1)}, y_{t(2)}, y_{t(3)})` in the input scheme's point labels
    pub triple: [Point; 3],
}

#[derive(Debug, Clone)]
pub struct WellOrderedExtension {
    pub scheme: Scheme,
    pub base_point: Point,
    /// `permutation[y]` is the new label of `y`
    pub permutation: Vec<Point>,
    pub relabeled: Scheme,
    /// one-point extension of `relabeled` at `base_point`
    pub extension: PointExtension,
    pub fibers: Vec<OrderedFiber>,
    /// `chain_colors[i]` meets `y0t_i × y0t_{i+1}` in the identity block
    pub chain_colors: Vec<Color>,
}

impl WellOrderedExtension {
    pub fn triple(&self, t: Color) -> Option<[Point; 3]> {
        self.fibers.iter().find(|f| f.color == t).map(|f| f.triple)
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Relabels the fibers `y0t` so that the extension is well-ordered.
///
/// Fibers are chained in color order; `y0t_1` keeps ascending order and each
/// next fiber is ordered through the lowest-indexed color whose block with
/// the previous fiber is a permutation. The result is checked on every pair
/// of fibers.
pub fn well_order(scheme: &Scheme, y0: Point) -> Result<WellOrderedExtension, EquivError> {
    require_three_equivalenced(scheme)?;
    scheme.check_point(y0)?;
    if scheme.rank() <= 2 {
        return Err(EquivError::RankTooSmall);
    }
    let colors: Vec<Color> = scheme.nontrivial_colors().collect();
    let mut labels: Vec<[Point; 3]> = Vec::with_capacity(colors.len());
    let first = fiber3(scheme, y0, colors[0])?;
    labels.push([first[0], first[1], first[2]]);
    let mut chain_colors = Vec::new();
    for pair in colors.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let full = exists_full_block(scheme, y0, u, v)?;
        let prev = *labels.last().expect("first fiber pushed");
        let next_fiber = fiber3(scheme, y0, v)?;
        let mut next = [0; 3];
        for (k, &x) in prev.iter().enumerate() {
            next[k] = *next_fiber
                .iter()
                .find(|&&y| scheme.color(x, y) == full.color)
                .expect("permutation block has a one in every row");
        }
        labels.push(next);
        chain_colors.push(full.color);
    }

    let mut permutation: Vec<Point> = (0..scheme.n()).collect();
    for (&t, triple) in colors.iter().zip(&labels) {
        let sorted = scheme.neighbors(y0, t);
        for (k, &y) in triple.iter().enumerate() {
            permutation[y] = sorted[k];
        }
    }
    let relabeled = scheme.apply_point_permutation(&permutation)?;
    let extension = one_point_extension(&relabeled, y0)?;
    check_well_ordered(&relabeled, &extension, y0)?;
    let fibers = colors
        .iter()
        .zip(labels)
        .map(|(&color, triple)| OrderedFiber { color, triple })
        .collect();
    Ok(WellOrderedExtension {
        scheme: scheme.clone(),
        base_point: y0,
        permutation,
        relabeled,
        extension,
        fibers,
        chain_colors,
    })
}

/// Exhaustive check that every extension color meets every block between
/// 3-point fibers `y0r × y0r'` (both ascending) in `I`, `P` or `P²`.
pub fn check_well_ordered(scheme: &Scheme, extension: &PointExtension, y0: Point) -> Result<(), EquivError> {
    let ext = &extension.config;
    let allowed = [cyclic_power(0), cyclic_power(1), cyclic_power(2)];
    for r in scheme.nontrivial_colors() {
        let rows = scheme.neighbors(y0, r);
        for r_prime in scheme.nontrivial_colors() {
            let cols = scheme.neighbors(y0, r_prime);
            let mut met: Vec<Color> = rows
                .iter()
                .flat_map(|&x| cols.iter().map(move |&y| ext.color(x, y)))
                .collect();
            met.sort_unstable();
            met.dedup();
            for c in met {
                let mut block = [[0u8; 3]; 3];
                for (i, &x) in rows.iter().enumerate() {
                    for (j, &y) in cols.iter().enumerate() {
                        block[i][j] = u8::from(ext.color(x, y) == c);
                    }
                }
                if !allowed.contains(&block) {
                    return Err(EquivError::WellOrderingFailed {
                        r,
                        r_prime,
                        extension_color: c,
                        block,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Everything the `equiv` and `wellorder` commands print.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub k: usize,
    pub equivalenced: bool,
    pub valencies: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_patterns: Option<Vec<ProductPattern>>,
}

pub fn equiv_report(scheme: &Scheme, k: usize) -> Result<EquivReport, EquivError> {
    let equivalenced = is_k_equivalenced(scheme, k)?;
    let product_patterns = if equivalenced && k == 3 {
        Some(verify_product_patterns(scheme)?)
    } else {
        None
    };
    Ok(EquivReport {
        k,
        equivalenced,
        valencies: scheme.valencies().to_vec(),
        product_patterns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellOrderReport {
    pub base_point: Point,
    pub permutation: Vec<Point>,
    pub fibers: Vec<OrderedFiber>,
    pub chain_colors: Vec<Color>,
    pub relabeled_fibers: Vec<[Point; 3]>,
}

impl From<&WellOrderedExtension> for WellOrderReport {
    fn from(w: &WellOrderedExtension) -> Self {
        Self {
            base_point: w.base_point,
            permutation: w.permutation.clone(),
            fibers: w.fibers.clone(),
            chain_colors: w.chain_colors.clone(),
            relabeled_fibers: w
                .fibers
                .iter()
                .map(|f| f.triple.map(|y| w.permutation[y]))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn z7() -> Scheme {
        catalog::cayley_abelian(7, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap()
    }

    fn z13() -> Scheme {
        "z13".parse::<catalog::CatalogSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn valency_checks() {
        assert!(is_k_equivalenced(&catalog::one_class(4).unwrap(), 3).unwrap());
        assert!(is_k_equivalenced(&z7(), 3).unwrap());
        let z5 = catalog::cayley_abelian(5, &[vec![1, 4], vec![2, 3]]).unwrap();
        assert!(!is_k_equivalenced(&z5, 3).unwrap());
        assert_eq!(
            is_k_equivalenced(&catalog::trivial(), 3),
            Err(EquivError::TooFewPoints(1))
        );
    }

    #[test]
    fn z7_products_match_hand_counts() {
        let p = verify_product_patterns(&z7()).unwrap();
        let find = |u, v| p.iter().find(|q| q.u == u && q.v == v).unwrap();
        // a + b for a, b in {1,2,4}: 2,3,5,3,4,6,5,6,8≡1 → r1 once, r2 twice
        assert_eq!(find(1, 1).case, ProductCase::OnePlusDouble { w1: 1, w2: 2 });
        assert_eq!(find(1, 1).coefficients, vec![0, 1, 2]);
        assert_eq!(find(1, 2).case, ProductCase::InverseSplit { w: 1, w_star: 2 });
        assert_eq!(find(1, 2).coefficients, vec![3, 1, 1]);
    }

    #[test]
    fn k4_product_is_inverse_double() {
        let p = verify_product_patterns(&catalog::one_class(4).unwrap()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].case, ProductCase::InverseDouble);
    }

    #[test]
    fn z13_products_and_supports() {
        let s = z13();
        assert_eq!(verify_product_patterns(&s).unwrap().len(), 16);
        for u in s.nontrivial_colors() {
            for v in s.nontrivial_colors() {
                if u != v {
                    assert!((2..=3).contains(&product_support_size(&s, u, v)));
                }
                exists_full_block(&s, 0, u, v).unwrap();
            }
        }
    }

    #[test]
    fn non_equivalenced_rejected() {
        let z5 = catalog::cayley_abelian(5, &[vec![1, 4], vec![2, 3]]).unwrap();
        assert!(matches!(
            verify_product_patterns(&z5),
            Err(EquivError::NotThreeEquivalenced { valency: 2, .. })
        ));
    }

    #[test]
    fn well_order_z7_and_z13_every_point() {
        for s in [z7(), z13()] {
            for y0 in 0..s.n() {
                let w = well_order(&s, y0).unwrap();
                assert_eq!(w.relabeled.tensor(), s.tensor());
                assert_eq!(w.permutation[y0], y0);
                let again = well_order(&w.relabeled, y0).unwrap();
                assert!(again.is_identity(), "y0 = {y0}");
            }
        }
    }

    #[test]
    fn well_order_rejects_rank_two() {
        assert_eq!(
            well_order(&catalog::one_class(4).unwrap(), 0).unwrap_err(),
            EquivError::RankTooSmall
        );
    }

    #[test]
    fn chain_blocks_are_identity() {
        let w = well_order(&z13(), 0).unwrap();
        for (i, &c) in w.chain_colors.iter().enumerate() {
            let a = w.fibers[i].triple;
            let b = w.fibers[i + 1].triple;
            for k in 0..3 {
                assert_eq!(w.scheme.color(a[k], b[k]), c);
            }
        }
    }

    #[test]
    fn unordered_labels_fail_the_check() {
        // swapping two points of one fiber breaks the cyclic pattern
        let s = z7();
        let w = well_order(&s, 0).unwrap();
        let mut perm: Vec<Point> = (0..7).collect();
        let f = s.neighbors(0, 1);
        perm.swap(f[0], f[1]);
        let bad = w.relabeled.apply_point_permutation(&perm).unwrap();
        let ext = one_point_extension(&bad, 0).unwrap();
        assert!(matches!(
            check_well_ordered(&bad, &ext, 0),
            Err(EquivError::WellOrderingFailed { .. })
        ));
    }
}
