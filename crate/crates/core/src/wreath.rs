//! Wreath product `(X × Y, S ≀ T)` of two schemes.
//!
//! Point `(x, y)` has index `x·|Y| + y`, so Kronecker products written with
//! the `X` factor first (`σ_s ⊗ I_Y`, `J_X ⊗ σ_t`) use the usual layout in
//! which the second factor varies fastest.

use serde::{Deserialize, Serialize};

use crate::intmat::IntMatrix;
use crate::relation::{Color, Point, Scheme};

/// Where a product color comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WreathColor {
    /// `s̃ = {((x,y),(x',y)) : (x,x') ∈ s}`
    Tilde(Color),
    /// `t̄ = {((x,y),(x',y')) : (y,y') ∈ t}`, `t ≠ 1_Y`
    Bar(Color),
}

#[derive(Debug, Clone)]
pub struct WreathScheme {
    scheme: Scheme,
    left: Scheme,
    right: Scheme,
    tilde: Vec<Color>,
    bar: Vec<Option<Color>>,
}

/// Neighborhood `(x0, y0)u` of one product color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSet {
    pub color: Color,
    pub origin: WreathColor,
    pub points: Vec<Point>,
}

/// Sidecar describing the product's color and point maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathMap {
    pub x_size: usize,
    pub y_size: usize,
    pub point_index: String,
    pub tilde: Vec<Color>,
    pub bar: Vec<Option<Color>>,
}

pub fn wreath_product(left: &Scheme, right: &Scheme) -> WreathScheme {
    let (nx, ny) = (left.n(), right.n());
    let rs = left.rank();
    let n = nx * ny;
    let mut colors = vec![0; n * n];
    for p in 0..n {
        for q in 0..n {
            let (x, y) = (p / ny, p % ny);
            let (x2, y2) = (q / ny, q % ny);
            colors[p * n + q] = if y == y2 {
                left.color(x, x2)
            } else {
                rs + right.color(y, y2) - 1
            };
        }
    }
    let config = crate::relation::CoherentConfiguration::from_color_matrix(n, colors)
        .expect("wreath product of schemes is coherent");
    let scheme = Scheme::new(config).expect("wreath product is homogeneous");
    let tilde = (0..rs).collect();
    let bar = (0..right.rank())
        .map(|t| (t != Scheme::IDENTITY).then(|| rs + t - 1))
        .collect();
    WreathScheme {
        scheme,
        left: left.clone(),
        right: right.clone(),
        tilde,
        bar,
    }
}

impl WreathScheme {
    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    /// The factor `(X, S)`.
    pub fn left(&self) -> &Scheme {
        &self.left
    }

    /// The factor `(Y, T)`.
    pub fn right(&self) -> &Scheme {
        &self.right
    }

    pub fn x_size(&self) -> usize {
        self.left.n()
    }

    pub fn y_size(&self) -> usize {
        self.right.n()
    }

    pub fn point(&self, x: Point, y: Point) -> Point {
        x * self.y_size() + y
    }

    pub fn coords(&self, p: Point) -> (Point, Point) {
        (p / self.y_size(), p % self.y_size())
    }

    pub fn tilde(&self, s: Color) -> Color {
        self.tilde[s]
    }

    pub fn bar(&self, t: Color) -> Option<Color> {
        self.bar[t]
    }

    pub fn origin(&self, c: Color) -> WreathColor {
        let rs = self.left.rank();
        if c < rs {
            WreathColor::Tilde(c)
        } else {
            WreathColor::Bar(c - rs + 1)
        }
    }

    pub fn map(&self) -> WreathMap {
        WreathMap {
            x_size: self.x_size(),
            y_size: self.y_size(),
            point_index: "x*|Y| + y".into(),
            tilde: self.tilde.clone(),
            bar: self.bar.clone(),
        }
    }

    /// `(x0, y0)u` for every product color `u`, from the factor structure:
    /// `(x0 s, y0)` for `s̃` and `X × y0 t` for `t̄`.
    pub fn point_star_sets(&self, x0: Point, y0: Point) -> Vec<StarSet> {
        (0..self.scheme.rank())
            .map(|c| {
                let origin = self.origin(c);
                let mut points: Vec<Point> = match origin {
                    WreathColor::Tilde(s) => self
                        .left
                        .neighbors(x0, s)
                        .into_iter()
                        .map(|x| self.point(x, y0))
                        .collect(),
                    WreathColor::Bar(t) => {
                        let ys = self.right.neighbors(y0, t);
                        (0..self.x_size())
                            .flat_map(|x| ys.iter().map(move |&y| (x, y)))
                            .map(|(x, y)| self.point(x, y))
                            .collect()
                    }
                };
                points.sort_unstable();
                StarSet {
                    color: c,
                    origin,
                    points,
                }
            })
            .collect()
    }

    /// `σ_s ⊗ I_Y` or `J_X ⊗ σ_t`, assembled from the factors.
    pub fn factor_adjacency(&self, c: Color) -> IntMatrix {
        match self.origin(c) {
            WreathColor::Tilde(s) => self.left.adjacency(s).kron(&IntMatrix::identity(self.y_size())),
            WreathColor::Bar(t) => IntMatrix::all_ones(self.x_size()).kron(&self.right.adjacency(t)),
        }
    }
}
