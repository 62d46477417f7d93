//! Built-in scheme families used as a test corpus.
//!
//! Catalog strings follow a small grammar:
//!
//! * `cayley:<n>:<class>|<class>|...` with each class a comma-separated list
//!   of residues mod `n`, e.g. `cayley:7:1,2,4|3,5,6`;
//! * `one_class:<n>` for the rank-2 scheme on `n` points;
//! * `group:<n>` for the thin scheme of the cyclic group `Z_n`;
//! * `trivial` (alias `point`) for the one-point scheme;
//! * `catalog:<name>` or a bare name from [`NAMED`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::relation::{RelationError, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid class partition: {0}")]
    PartitionNotValid(String),
    #[error("one_class requires n >= 2, got {0}")]
    TooFewPoints(usize),
    #[error("generated colors are not coherent: {0}")]
    NotCoherent(#[from] RelationError),
    #[error("cannot parse catalog spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
}

/// Named entries accepted by [`CatalogSpec::from_str`].
pub const NAMED: &[(&str, &str)] = &[
    ("point", "trivial"),
    ("z2", "group:2"),
    ("z4", "group:4"),
    ("k4", "one_class:4"),
    ("z5", "cayley:5:1,4|2,3"),
    ("z7", "cayley:7:1,2,4|3,5,6"),
    ("z13", "cayley:13:1,3,9|2,6,5|4,12,10|7,8,11"),
];

/// Scheme on `Z_n` whose color of `(x, y)` is the class of `y − x`.
pub fn cayley_abelian(n: usize, classes: &[Vec<usize>]) -> Result<Scheme, CatalogError> {
    if n == 0 {
        return Err(CatalogError::PartitionNotValid("modulus must be positive".into()));
    }
    let mut class_of = vec![None; n];
    class_of[0] = Some(0);
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(CatalogError::PartitionNotValid(format!("class {i} is empty")));
        }
        for &d in class {
            if d == 0 || d >= n {
                return Err(CatalogError::PartitionNotValid(format!(
                    "residue {d} is not a nonzero residue mod {n}"
                )));
            }
            if class_of[d].replace(i + 1).is_some() {
                return Err(CatalogError::PartitionNotValid(format!(
                    "residue {d} appears twice"
                )));
            }
        }
    }
    if let Some(d) = class_of.iter().position(Option::is_none) {
        return Err(CatalogError::PartitionNotValid(format!(
            "residue {d} is not covered"
        )));
    }
    let class_of: Vec<usize> = class_of.into_iter().map(Option::unwrap).collect();
    // each class must negate onto exactly one class
    for (i, class) in classes.iter().enumerate() {
        let target = class_of[n - class[0]];
        let image_ok = class.iter().all(|&d| class_of[n - d] == target)
            && classes[target - 1].len() == class.len();
        if !image_ok {
            return Err(CatalogError::PartitionNotValid(format!(
                "negation of class {i} is not a single class"
            )));
        }
    }
    let colors = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| class_of[(y + n - x) % n])
        .collect();
    let config = crate::relation::CoherentConfiguration::from_color_matrix(n, colors)?;
    Ok(Scheme::new(config)?)
}

/// The complete graph scheme `K_n`.
pub fn one_class(n: usize) -> Result<Scheme, CatalogError> {
    if n < 2 {
        return Err(CatalogError::TooFewPoints(n));
    }
    let all: Vec<usize> = (1..n).collect();
    cayley_abelian(n, &[all])
}

/// Thin scheme of the cyclic group `Z_n`; every residue is its own class.
pub fn cyclic_group(n: usize) -> Result<Scheme, CatalogError> {
    let classes: Vec<Vec<usize>> = (1..n).map(|d| vec![d]).collect();
    cayley_abelian(n, &classes)
}

pub fn trivial() -> Scheme {
    cayley_abelian(1, &[]).expect("one-point scheme is valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSpec {
    Cayley { n: usize, classes: Vec<Vec<usize>> },
    OneClass(usize),
    Group(usize),
    Trivial,
}

impl CatalogSpec {
    pub fn build(&self) -> Result<Scheme, CatalogError> {
        match self {
            Self::Cayley { n, classes } => cayley_abelian(*n, classes),
            Self::OneClass(n) => one_class(*n),
            Self::Group(n) => cyclic_group(*n),
            Self::Trivial => Ok(trivial()),
        }
    }
}

impl FromStr for CatalogSpec {
    type Err = CatalogError;

    fn from_str(spec: &str) -> Result<Self, CatalogError> {
        let fail = |reason: &str| CatalogError::Parse {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let number = |s: &str| -> Result<usize, CatalogError> {
            s.trim().parse().map_err(|_| fail(&format!("{s:?} is not a number")))
        };
        let body = spec.trim();
        let body = body.strip_prefix("catalog:").unwrap_or(body);
        if let Some((_, expansion)) = NAMED.iter().find(|(name, _)| name.eq_ignore_ascii_case(body)) {
            return expansion.parse();
        }
        let parts: Vec<&str> = body.splitn(3, ':').collect();
        match parts.as_slice() {
            ["trivial"] => Ok(Self::Trivial),
            ["one_class", n] => Ok(Self::OneClass(number(n)?)),
            ["group", n] => Ok(Self::Group(number(n)?)),
            ["cayley", n, classes] => {
                let classes = classes
                    .split('|')
                    .map(|c| c.split(',').map(number).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self::Cayley {
                    n: number(n)?,
                    classes,
                })
            }
            _ => Err(fail("expected cayley:<n>:<classes>, one_class:<n>, group:<n>, trivial or a catalog name")),
        }
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cayley { n, classes } => {
                let classes: Vec<String> = classes
                    .iter()
                    .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "cayley:{n}:{}", classes.join("|"))
            }
            Self::OneClass(n) => write!(f, "one_class:{n}"),
            Self::Group(n) => write!(f, "group:{n}"),
            Self::Trivial => write!(f, "trivial"),
        }
    }
}
