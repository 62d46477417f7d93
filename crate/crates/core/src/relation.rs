//! Coherent configurations and schemes stored as color matrices.
//!
//! A configuration on `n` points is an `n × n` matrix of colors `0..rank`.
//! Construction validates the three defining axioms (the diagonal is a union
//! of colors, the partition is closed under transpose, intersection numbers
//! are constant on each color) and computes the full intersection tensor by
//! exhaustive counting. Diagonal colors are renumbered to the lowest indices;
//! all other colors keep their relative order.

use std::collections::BTreeMap;
use std::ops::Deref;

use thiserror::Error;

use crate::intmat::IntMatrix;

pub type Point = usize;
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("not a partition of X×X: {0}")]
    NotAPartition(String),
    #[error(
        "color {color} is not closed under transpose: cell ({x},{y}) has color {color}, \
         cell ({y},{x}) has color {found} but color {expected} was expected"
    )]
    NotTransposeClosed {
        color: Color,
        x: Point,
        y: Point,
        found: Color,
        expected: Color,
    },
    #[error(
        "diagonal is not a union of colors: color {color} occurs on the diagonal at \
         ({diagonal_point},{diagonal_point}) and off the diagonal at ({x},{y})"
    )]
    DiagonalNotUnionOfColors {
        color: Color,
        diagonal_point: Point,
        x: Point,
        y: Point,
    },
    #[error(
        "intersection number p[{s}][{t}]^{u} is not constant: {count_a} at {witness_a:?}, \
         {count_b} at {witness_b:?}"
    )]
    IntersectionNumbersNotConstant {
        s: Color,
        t: Color,
        u: Color,
        witness_a: (Point, Point),
        count_a: usize,
        witness_b: (Point, Point),
        count_b: usize,
    },
    #[error("color {color} out of range for rank {rank}")]
    InvalidColor { color: Color, rank: usize },
    #[error("point {point} out of range for degree {n}")]
    InvalidPoint { point: Point, n: usize },
    #[error("configuration is not homogeneous ({0} diagonal colors)")]
    NotHomogeneous(usize),
    #[error("point set is not a union of fibers: {point} is included but {excluded} from the same fiber is not")]
    NotFiberUnion { point: Point, excluded: Point },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("expected {expected} relation names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// Dense `rank³` table of intersection numbers `p[s][t][u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    data: Vec<u32>,
}

impl IntersectionTensor {
    fn zeros(rank: usize) -> Self {
        Self {
            rank,
            data: vec![0; rank * rank * rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `p[s][t][u]`: for any `(x, y)` in `u`, the number of `z` with
    /// `(x, z) ∈ s` and `(z, y) ∈ t`.
    pub fn get(&self, s: Color, t: Color, u: Color) -> u32 {
        self.data[(s * self.rank + t) * self.rank + u]
    }

    fn set(&mut self, s: Color, t: Color, u: Color, v: u32) {
        let r = self.rank;
        self.data[(s * r + t) * r + u] = v;
    }

    fn relabeled(&self, relabel: &[Color]) -> Self {
        let mut out = Self::zeros(self.rank);
        for s in 0..self.rank {
            for t in 0..self.rank {
                for u in 0..self.rank {
                    out.set(relabel[s], relabel[t], relabel[u], self.get(s, t, u));
                }
            }
        }
        out
    }
}

/// A validated coherent configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentConfiguration {
    n: usize,
    rank: usize,
    colors: Vec<Color>,
    transpose: Vec<Color>,
    diagonal: Vec<Color>,
    names: Option<Vec<String>>,
    tensor: IntersectionTensor,
}

/// A restriction `(Y, S_Y)` together with the maps back to the parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub config: CoherentConfiguration,
    /// `points[i]` is the parent point behind restricted point `i`.
    pub points: Vec<Point>,
    /// `color_map[c]` is the parent color behind restricted color `c`.
    pub color_map: Vec<Color>,
}

impl CoherentConfiguration {
    /// Validates a row-major `n × n` color matrix.
    pub fn from_color_matrix(n: usize, colors: Vec<Color>) -> Result<Self, RelationError> {
        Self::build(n, colors).map(|(cc, _)| cc)
    }

    pub fn from_rows(rows: &[Vec<Color>]) -> Result<Self, RelationError> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(RelationError::NotAPartition(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        Self::from_color_matrix(n, rows.concat())
    }

    /// Like [`Self::from_color_matrix`], also returning the map from input
    /// colors to canonical colors.
    pub(crate) fn build(
        n: usize,
        colors: Vec<Color>,
    ) -> Result<(Self, Vec<Color>), RelationError> {
        if n == 0 {
            return Err(RelationError::NotAPartition("empty point set".into()));
        }
        if colors.len() != n * n {
            return Err(RelationError::NotAPartition(format!(
                "{} cells given for {n} points",
                colors.len()
            )));
        }
        let rank = colors.iter().max().map_or(0, |m| m + 1);
        let mut used = vec![false; rank];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(RelationError::NotAPartition(format!(
                "color {c} is unused; colors must be contiguous from 0"
            )));
        }

        // Axiom (i): the diagonal is a union of colors.
        let mut diagonal_at: Vec<Option<Point>> = vec![None; rank];
        for x in 0..n {
            diagonal_at[colors[x * n + x]].get_or_insert(x);
        }
        for x in 0..n {
            for y in 0..n {
                let c = colors[x * n + y];
                if x != y {
                    if let Some(d) = diagonal_at[c] {
                        return Err(RelationError::DiagonalNotUnionOfColors {
                            color: c,
                            diagonal_point: d,
                            x,
                            y,
                        });
                    }
                }
            }
        }

        // Axiom (ii): transpose closure.
        let mut transpose: Vec<Option<Color>> = vec![None; rank];
        for x in 0..n {
            for y in 0..n {
                let c = colors[x * n + y];
                let back = colors[y * n + x];
                match transpose[c] {
                    None => transpose[c] = Some(back),
                    Some(expected) if expected != back => {
                        return Err(RelationError::NotTransposeClosed {
                            color: c,
                            x,
                            y,
                            found: back,
                            expected,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let transpose: Vec<Color> = transpose.into_iter().map(Option::unwrap).collect();

        let tensor = count_intersections(n, rank, &colors)?;

        // Canonical numbering: diagonal colors first, relative order kept.
        let (mut diag, mut rest): (Vec<Color>, Vec<Color>) =
            (0..rank).partition(|&c| diagonal_at[c].is_some());
        let ndiag = diag.len();
        diag.append(&mut rest);
        let mut relabel = vec![0; rank];
        for (new, &old) in diag.iter().enumerate() {
            relabel[old] = new;
        }
        let mut new_transpose = vec![0; rank];
        for old in 0..rank {
            new_transpose[relabel[old]] = relabel[transpose[old]];
        }
        let cc = Self {
            n,
            rank,
            colors: colors.iter().map(|&c| relabel[c]).collect(),
            transpose: new_transpose,
            diagonal: (0..ndiag).collect(),
            names: None,
            tensor: tensor.relabeled(&relabel),
        };
        Ok((cc, relabel))
    }

    /// Attaches relation labels, indexed by canonical color.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, RelationError> {
        if names.len() != self.rank {
            return Err(RelationError::NameCount {
                expected: self.rank,
                got: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn color(&self, x: Point, y: Point) -> Color {
        self.colors[x * self.n + y]
    }

    /// Row-major color matrix.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_rows(&self) -> Vec<Vec<Color>> {
        self.colors.chunks(self.n).map(<[Color]>::to_vec).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn transpose_of(&self, s: Color) -> Color {
        self.transpose[s]
    }

    pub fn transpose_map(&self) -> &[Color] {
        &self.transpose
    }

    /// Colors whose union is the diagonal; always `0..k` for `k` fibers.
    pub fn diagonal_colors(&self) -> &[Color] {
        &self.diagonal
    }

    pub fn is_diagonal_color(&self, s: Color) -> bool {
        s < self.diagonal.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal.len() == 1
    }

    pub fn tensor(&self) -> &IntersectionTensor {
        &self.tensor
    }

    pub fn check_color(&self, s: Color) -> Result<(), RelationError> {
        if s < self.rank {
            Ok(())
        } else {
            Err(RelationError::InvalidColor {
                color: s,
                rank: self.rank,
            })
        }
    }

    pub fn check_point(&self, x: Point) -> Result<(), RelationError> {
        if x < self.n {
            Ok(())
        } else {
            Err(RelationError::InvalidPoint { point: x, n: self.n })
        }
    }

    pub fn intersection_number(&self, s: Color, t: Color, u: Color) -> Result<u32, RelationError> {
        self.check_color(s)?;
        self.check_color(t)?;
        self.check_color(u)?;
        Ok(self.tensor.get(s, t, u))
    }

    /// Number of cells of color `s`.
    pub fn cell_count(&self, s: Color) -> usize {
        self.colors.iter().filter(|&&c| c == s).count()
    }

    /// `xs = { y : (x, y) ∈ s }`.
    pub fn neighbors(&self, x: Point, s: Color) -> Vec<Point> {
        (0..self.n).filter(|&y| self.color(x, y) == s).collect()
    }

    /// 0/1 adjacency matrix of color `s`.
    pub fn adjacency(&self, s: Color) -> IntMatrix {
        IntMatrix::from_fn(self.n, |x, y| i64::from(self.color(x, y) == s))
    }

    /// Fibers, one per diagonal color, each sorted ascending.
    pub fn fibers(&self) -> Vec<Vec<Point>> {
        let mut fibers = vec![Vec::new(); self.diagonal.len()];
        for x in 0..self.n {
            fibers[self.color(x, x)].push(x);
        }
        fibers
    }

    /// Restriction to a union of fibers; colors are renumbered contiguously.
    pub fn restriction(&self, points: &[Point]) -> Result<Restriction, RelationError> {
        let mut points = points.to_vec();
        points.sort_unstable();
        points.dedup();
        for &p in &points {
            self.check_point(p)?;
        }
        if points.is_empty() {
            return Err(RelationError::NotAPartition("empty restriction".into()));
        }
        let mut included = vec![false; self.n];
        for &p in &points {
            included[p] = true;
        }
        for &p in &points {
            let d = self.color(p, p);
            if let Some(excluded) = (0..self.n).find(|&q| !included[q] && self.color(q, q) == d) {
                return Err(RelationError::NotFiberUnion { point: p, excluded });
            }
        }
        let m = points.len();
        let mut used = vec![None; self.rank];
        let mut order = Vec::new();
        for &x in &points {
            for &y in &points {
                let c = self.color(x, y);
                if used[c].is_none() {
                    used[c] = Some(());
                    order.push(c);
                }
            }
        }
        order.sort_unstable();
        let mut dense = vec![usize::MAX; self.rank];
        for (i, &c) in order.iter().enumerate() {
            dense[c] = i;
        }
        let sub: Vec<Color> = points
            .iter()
            .flat_map(|&x| points.iter().map(move |&y| (x, y)))
            .map(|(x, y)| dense[self.color(x, y)])
            .collect();
        let (config, relabel) = Self::build(m, sub)?;
        let mut color_map = vec![0; config.rank];
        for (i, &parent) in order.iter().enumerate() {
            color_map[relabel[i]] = parent;
        }
        let config = match &self.names {
            Some(names) => {
                let sub_names = color_map.iter().map(|&c| names[c].clone()).collect();
                config.with_names(sub_names)?
            }
            None => config,
        };
        Ok(Restriction {
            config,
            points,
            color_map,
        })
    }

    /// First `(x, s)` with `|xs| ≥ 2`, if any.
    pub fn semiregularity_witness(&self) -> Option<(Point, Color)> {
        let mut count = vec![0usize; self.rank];
        for x in 0..self.n {
            count.iter_mut().for_each(|c| *c = 0);
            for y in 0..self.n {
                count[self.color(x, y)] += 1;
            }
            if let Some(s) = count.iter().position(|&c| c >= 2) {
                return Some((x, s));
            }
        }
        None
    }

    pub fn is_semiregular(&self) -> bool {
        self.semiregularity_witness().is_none()
    }

    /// Relabels points: the result has `color'(τx, τy) = color(x, y)` where
    /// `perm[x] = τx`. Colors and the intersection tensor are unchanged.
    pub fn apply_point_permutation(&self, perm: &[Point]) -> Result<Self, RelationError> {
        let n = self.n;
        if perm.len() != n {
            return Err(RelationError::NotAPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(RelationError::NotAPermutation(n));
            }
        }
        let mut colors = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                colors[perm[x] * n + perm[y]] = self.color(x, y);
            }
        }
        Ok(Self {
            colors,
            ..self.clone()
        })
    }
}

/// Exhaustive count of `p[s][t][u]`, aborting at the first cell whose
/// profile disagrees with its color's representative cell.
fn count_intersections(
    n: usize,
    rank: usize,
    colors: &[Color],
) -> Result<IntersectionTensor, RelationError> {
    let profile = |x: Point, y: Point| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n)
            .map(|z| colors[x * n + z] * rank + colors[z * n + y])
            .collect();
        v.sort_unstable();
        v
    };
    // first cell of each color with its sorted (c(x,z), c(z,y)) profile
    type Witness = ((Point, Point), Vec<usize>);
    let mut representative: Vec<Option<Witness>> = vec![None; rank];
    for x in 0..n {
        for y in 0..n {
            let u = colors[x * n + y];
            let p = profile(x, y);
            match &representative[u] {
                None => representative[u] = Some(((x, y), p)),
                Some((rep, rep_profile)) if *rep_profile != p => {
                    let a = tally(rep_profile);
                    let b = tally(&p);
                    let key = a
                        .keys()
                        .chain(b.keys())
                        .copied()
                        .find(|k| a.get(k) != b.get(k))
                        .expect("profiles differ");
                    return Err(RelationError::IntersectionNumbersNotConstant {
                        s: key / rank,
                        t: key % rank,
                        u,
                        witness_a: *rep,
                        count_a: a.get(&key).copied().unwrap_or(0),
                        witness_b: (x, y),
                        count_b: b.get(&key).copied().unwrap_or(0),
                    });
                }
                Some(_) => {}
            }
        }
    }
    let mut tensor = IntersectionTensor::zeros(rank);
    for (u, rep) in representative.into_iter().enumerate() {
        let (_, p) = rep.expect("every color is used");
        for (key, count) in tally(&p) {
            tensor.set(key / rank, key % rank, u, count as u32);
        }
    }
    Ok(tensor)
}

fn tally(sorted: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &k in sorted {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

/// A homogeneous configuration: the diagonal is the single color `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    config: CoherentConfiguration,
    valencies: Vec<usize>,
}

impl Scheme {
    pub const IDENTITY: Color = 0;

    pub fn new(config: CoherentConfiguration) -> Result<Self, RelationError> {
        if !config.is_homogeneous() {
            return Err(RelationError::NotHomogeneous(config.diagonal.len()));
        }
        let valencies = (0..config.rank)
            .map(|s| config.tensor.get(s, config.transpose[s], Self::IDENTITY) as usize)
            .collect();
        Ok(Self { config, valencies })
    }

    pub fn from_rows(rows: &[Vec<Color>]) -> Result<Self, RelationError> {
        Self::new(CoherentConfiguration::from_rows(rows)?)
    }

    pub fn config(&self) -> &CoherentConfiguration {
        &self.config
    }

    pub fn into_config(self) -> CoherentConfiguration {
        self.config
    }

    /// `n_s = p[s][s*]^{1_X}`.
    pub fn valency(&self, s: Color) -> Result<usize, RelationError> {
        self.config.check_color(s)?;
        Ok(self.valencies[s])
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    /// All colors other than the identity.
    pub fn nontrivial_colors(&self) -> std::ops::Range<Color> {
        1..self.config.rank
    }

    pub fn apply_point_permutation(&self, perm: &[Point]) -> Result<Self, RelationError> {
        Ok(Self {
            config: self.config.apply_point_permutation(perm)?,
            valencies: self.valencies.clone(),
        })
    }

    /// First violation of `p_{uw}^v n_v = p_{u*v}^w n_w = p_{vw*}^u n_u` or
    /// of `n_u n_v = Σ_s p_{uv}^s n_s`, as a description.
    pub fn tensor_identity_violation(&self) -> Option<String> {
        let r = self.config.rank;
        let p = |s, t, u| u64::from(self.config.tensor.get(s, t, u));
        let nv = |s: Color| self.valencies[s] as u64;
        let star = |s: Color| self.config.transpose[s];
        for u in 0..r {
            for v in 0..r {
                for w in 0..r {
                    let a = p(u, w, v) * nv(v);
                    let b = p(star(u), v, w) * nv(w);
                    let c = p(v, star(w), u) * nv(u);
                    if a != b || b != c {
                        return Some(format!(
                            "(u,v,w)=({u},{v},{w}): p_uw^v n_v={a}, p_u*v^w n_w={b}, p_vw*^u n_u={c}"
                        ));
                    }
                }
                let lhs = nv(u) * nv(v);
                let rhs: u64 = (0..r).map(|s| p(u, v, s) * nv(s)).sum();
                if lhs != rhs {
                    return Some(format!("(u,v)=({u},{v}): n_u n_v={lhs}, Σ p_uv^s n_s={rhs}"));
                }
            }
        }
        None
    }
}

impl Deref for Scheme {
    type Target = CoherentConfiguration;

    fn deref(&self) -> &CoherentConfiguration {
        &self.config
    }
}

impl TryFrom<CoherentConfiguration> for Scheme {
    type Error = RelationError;

    fn try_from(config: CoherentConfiguration) -> Result<Self, RelationError> {
        Self::new(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Vec<Vec<Color>> {
        (0..n)
            .map(|x| (0..n).map(|y| usize::from(x != y)).collect())
            .collect()
    }

    fn z7() -> Vec<Vec<Color>> {
        let class = |d: usize| match d {
            0 => 0,
            1 | 2 | 4 => 1,
            _ => 2,
        };
        (0..7)
            .map(|x| (0..7).map(|y| class((y + 7 - x) % 7)).collect())
            .collect()
    }

    #[test]
    fn one_point_configuration() {
        let cc = CoherentConfiguration::from_rows(&[vec![0]]).unwrap();
        assert_eq!(cc.rank(), 1);
        assert_eq!(cc.intersection_number(0, 0, 0).unwrap(), 1);
        assert!(cc.is_semiregular());
        assert_eq!(cc.fibers(), vec![vec![0]]);
    }

    #[test]
    fn k4_numbers_match_brute_force() {
        let rows = k(4);
        let s = Scheme::from_rows(&rows).unwrap();
        // common neighbours of a point with itself under the off-diagonal relation
        let brute = (0..4).filter(|&z| rows[0][z] == 1 && rows[z][0] == 1).count();
        assert_eq!(s.intersection_number(1, 1, 0).unwrap() as usize, brute);
        assert_eq!(brute, 3);
        assert_eq!(s.valency(1).unwrap(), 3);
        assert_eq!(s.valency(0).unwrap(), 1);
        assert_eq!(s.semiregularity_witness(), Some((0, 1)));
    }

    #[test]
    fn transpose_violation_names_color() {
        let rows = vec![vec![0, 1, 3], vec![2, 0, 1], vec![3, 1, 0]];
        let err = CoherentConfiguration::from_rows(&rows).unwrap_err();
        assert!(
            matches!(err, RelationError::NotTransposeClosed { color: 1, .. }),
            "{err}"
        );
    }

    #[test]
    fn diagonal_violation() {
        let rows = vec![vec![0, 0], vec![1, 1]];
        let err = CoherentConfiguration::from_rows(&rows).unwrap_err();
        assert!(matches!(err, RelationError::DiagonalNotUnionOfColors { color: 0, .. }));
    }

    #[test]
    fn gaps_are_not_a_partition() {
        let rows = vec![vec![0, 2], vec![2, 0]];
        assert!(matches!(
            CoherentConfiguration::from_rows(&rows),
            Err(RelationError::NotAPartition(_))
        ));
        assert!(matches!(
            CoherentConfiguration::from_rows(&[vec![0, 1], vec![1]]),
            Err(RelationError::NotAPartition(_))
        ));
    }

    #[test]
    fn non_constant_intersection_reports_witnesses() {
        // path 0-1-2 coloured as an undirected graph: not coherent
        let rows = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let err = CoherentConfiguration::from_rows(&rows).unwrap_err();
        match err {
            RelationError::IntersectionNumbersNotConstant {
                count_a, count_b, ..
            } => assert_ne!(count_a, count_b),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn diagonal_colors_move_to_front() {
        // color 1 is the diagonal, color 0 the off-diagonal
        let rows = vec![vec![1, 0], vec![0, 1]];
        let cc = CoherentConfiguration::from_rows(&rows).unwrap();
        assert_eq!(cc.color(0, 0), 0);
        assert_eq!(cc.color(0, 1), 1);
    }

    #[test]
    fn z7_cyclotomic_numbers() {
        let s = Scheme::from_rows(&z7()).unwrap();
        // a + b ≡ 1 (mod 7) with a, b ∈ {1, 2, 4}
        let brute = [1, 2, 4]
            .iter()
            .flat_map(|a| [1, 2, 4].iter().map(move |b| (a + b) % 7))
            .filter(|&c| c == 1)
            .count();
        assert_eq!(s.intersection_number(1, 1, 1).unwrap() as usize, brute);
        assert_eq!(brute, 1);
        assert_eq!(s.transpose_of(1), 2);
        assert!(s.tensor_identity_violation().is_none());
    }

    #[test]
    fn identity_composition() {
        let s = Scheme::from_rows(&z7()).unwrap();
        for c in 0..s.rank() {
            assert_eq!(s.intersection_number(c, 0, c).unwrap(), 1);
        }
    }

    #[test]
    fn invalid_color_rejected() {
        let s = Scheme::from_rows(&k(3)).unwrap();
        assert!(matches!(
            s.intersection_number(0, 5, 0),
            Err(RelationError::InvalidColor { color: 5, .. })
        ));
        assert!(s.valency(2).is_err());
    }

    #[test]
    fn translation_is_automorphism_of_z7() {
        let s = Scheme::from_rows(&z7()).unwrap();
        let shift: Vec<Point> = (0..7).map(|x| (x + 1) % 7).collect();
        let moved = s.apply_point_permutation(&shift).unwrap();
        assert_eq!(moved.colors(), s.colors());
        let id: Vec<Point> = (0..7).collect();
        assert_eq!(s.apply_point_permutation(&id).unwrap(), s);
        assert!(s.apply_point_permutation(&[0, 0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn restriction_requires_fiber_union() {
        let s = Scheme::from_rows(&k(4)).unwrap();
        assert!(matches!(
            s.restriction(&[0, 1]),
            Err(RelationError::NotFiberUnion { .. })
        ));
        let all = s.restriction(&[0, 1, 2, 3]).unwrap();
        assert_eq!(&all.config, s.config());
        assert_eq!(all.color_map, vec![0, 1]);
    }

    #[test]
    fn non_homogeneous_rejected_as_scheme() {
        // two fibers {0}, {1}
        let rows = vec![vec![0, 2], vec![3, 1]];
        let cc = CoherentConfiguration::from_rows(&rows).unwrap();
        assert_eq!(cc.fibers(), vec![vec![0], vec![1]]);
        assert!(matches!(Scheme::new(cc.clone()), Err(RelationError::NotHomogeneous(2))));
        let single = cc.restriction(&[0]).unwrap();
        assert_eq!(single.config.rank(), 1);
        assert_eq!(single.points, vec![0]);
    }
}
