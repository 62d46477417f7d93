//! Coherent closure (two-dimensional Weisfeiler–Leman stabilization) and
//! one-point extensions.

use std::collections::HashMap;

use crate::relation::{CoherentConfiguration, Color, Point, RelationError, Scheme};

/// A provisional coloring of `X × X`, not necessarily coherent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPartition {
    n: usize,
    colors: Vec<Color>,
}

impl ColorPartition {
    pub fn new(n: usize, colors: Vec<Color>) -> Result<Self, RelationError> {
        if n == 0 || colors.len() != n * n {
            return Err(RelationError::NotAPartition(format!(
                "{} cells given for {n} points",
                colors.len()
            )));
        }
        let rank = colors.iter().max().map_or(0, |m| m + 1);
        let mut used = vec![false; rank];
        colors.iter().for_each(|&c| used[c] = true);
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(RelationError::NotAPartition(format!("color {c} is unused")));
        }
        Ok(Self { n, colors })
    }

    pub fn from_config(cc: &CoherentConfiguration) -> Self {
        Self {
            n: cc.n(),
            colors: cc.colors().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, x: Point, y: Point) -> Color {
        self.colors[x * self.n + y]
    }

    /// Gives cell `(x, x)` a color of its own.
    pub fn individualize(&self, x: Point) -> Self {
        let fresh = self.colors.iter().max().map_or(0, |m| m + 1);
        let mut colors = self.colors.clone();
        colors[x * self.n + x] = fresh;
        // the old color of (x, x) may have vanished
        Self::new(self.n, compact(&colors)).expect("compacted coloring is a partition")
    }
}

fn compact(colors: &[Color]) -> Vec<Color> {
    let mut map = HashMap::new();
    colors
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Renumbers by first occurrence in row-major order, which is the order of
/// the lexicographically smallest cell of each class.
fn renumber<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> (Vec<u32>, usize) {
    let mut map: HashMap<K, u32> = HashMap::new();
    let colors = keys
        .map(|k| {
            let next = map.len() as u32;
            *map.entry(k).or_insert(next)
        })
        .collect();
    (colors, map.len())
}

fn refine(n: usize, current: &[u32], count: usize) -> (Vec<u32>, usize) {
    let k = count as u64;
    let signatures = (0..n * n).map(|cell| {
        let (x, y) = (cell / n, cell % n);
        let mut profile: Vec<u64> = (0..n)
            .map(|z| u64::from(current[x * n + z]) * k + u64::from(current[z * n + y]))
            .collect();
        profile.sort_unstable();
        (current[cell], profile)
    });
    renumber(signatures)
}

/// The coarsest coherent configuration refining `init`, with the map from
/// each output color to the input color containing it.
pub fn coherent_closure_with_parent(init: &ColorPartition) -> (CoherentConfiguration, Vec<Color>) {
    let n = init.n;
    let seed = (0..n * n).map(|cell| {
        let (x, y) = (cell / n, cell % n);
        (init.colors[cell], init.colors[y * n + x], x == y)
    });
    let (mut current, mut count) = renumber(seed);
    loop {
        let (next, next_count) = refine(n, &current, count);
        current = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let colors: Vec<Color> = current.iter().map(|&c| c as Color).collect();
    let (cc, relabel) = CoherentConfiguration::build(n, colors.clone())
        .expect("stable 2-dimensional refinement is coherent");
    let mut parent = vec![0; cc.rank()];
    for (cell, &c) in colors.iter().enumerate() {
        parent[relabel[c]] = init.colors[cell];
    }
    (cc, parent)
}

pub fn coherent_closure(init: &ColorPartition) -> CoherentConfiguration {
    coherent_closure_with_parent(init).0
}

/// One-point extension `(X, S_x)` of a scheme.
#[derive(Debug, Clone)]
pub struct PointExtension {
    pub config: CoherentConfiguration,
    pub base_point: Point,
    /// `parent_color[c]` is the scheme color containing extension color `c`.
    pub parent_color: Vec<Color>,
}

impl PointExtension {
    /// Restriction to `X ∖ {x}`.
    pub fn restriction_off_base(&self) -> Result<crate::relation::Restriction, RelationError> {
        let rest: Vec<Point> = (0..self.config.n()).filter(|&p| p != self.base_point).collect();
        self.config.restriction(&rest)
    }

    /// Extension colors `c` with `c ⊆ A × B` for fibers `A ∋ a`, `B ∋ b`.
    pub fn colors_between(&self, a: Point, b: Point) -> Vec<Color> {
        let fibers = self.config.fibers();
        let fa = &fibers[self.config.color(a, a)];
        let fb = &fibers[self.config.color(b, b)];
        let mut cs: Vec<Color> = fa
            .iter()
            .flat_map(|&x| fb.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.config.color(x, y))
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }
}

pub fn one_point_extension(scheme: &Scheme, x: Point) -> Result<PointExtension, RelationError> {
    scheme.check_point(x)?;
    let init = ColorPartition::from_config(scheme.config()).individualize(x);
    let (config, _) = coherent_closure_with_parent(&init);
    let parent_color = (0..config.rank())
        .map(|c| {
            let cell = config.colors().iter().position(|&k| k == c).expect("color used");
            scheme.colors()[cell]
        })
        .collect();
    Ok(PointExtension {
        config,
        base_point: x,
        parent_color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn coherent_input_is_fixed_point() {
        let k4 = catalog::one_class(4).unwrap();
        let out = coherent_closure(&ColorPartition::from_config(k4.config()));
        assert_eq!(out.colors(), k4.colors());
    }

    #[test]
    fn one_point_scheme_extends_to_itself() {
        let p = catalog::trivial();
        let ext = one_point_extension(&p, 0).unwrap();
        assert_eq!(ext.config.colors(), p.colors());
        assert_eq!(ext.parent_color, vec![0]);
    }

    #[test]
    fn k4_extension_has_five_relations() {
        let k4 = catalog::one_class(4).unwrap();
        let ext = one_point_extension(&k4, 0).unwrap();
        assert_eq!(ext.config.rank(), 5);
        assert_eq!(ext.config.fibers(), vec![vec![0], vec![1, 2, 3]]);
        // the 3-point fiber carries a rank-2 (diagonal + off-diagonal) structure
        let rest = ext.restriction_off_base().unwrap();
        assert_eq!(rest.config.rank(), 2);
        assert!(!rest.config.is_semiregular());
    }

    #[test]
    fn z7_extension_fibers() {
        let z7 = catalog::cayley_abelian(7, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        let ext = one_point_extension(&z7, 0).unwrap();
        let mut sizes: Vec<usize> = ext.config.fibers().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3]);
        assert!(ext.restriction_off_base().unwrap().config.is_semiregular());
        assert_eq!(ext.config.rank(), 17);
    }

    #[test]
    fn individualize_compacts_vanished_color() {
        let p = ColorPartition::new(1, vec![0]).unwrap();
        assert_eq!(p.individualize(0).colors(), &[0]);
    }
}
