//! JSON scheme files: `{"n": int, "colors": [[int, ...], ...], "names": [str, ...]?}`.
//!
//! Closure results carry an extra `"parent_color"` array.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::ColorPartition;
use crate::relation::{CoherentConfiguration, Color, RelationError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("file not found: {0}")]
    Missing(PathBuf),
    #[error("cannot access {path}: {source}")]
    Access {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed scheme JSON{}: {message}", location(.path))]
    Malformed {
        path: Option<PathBuf>,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(#[from] RelationError),
}

fn location(path: &Option<PathBuf>) -> String {
    path.as_ref()
        .map(|p| format!(" in {}", p.display()))
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub n: usize,
    pub colors: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_color: Option<Vec<Color>>,
}

impl SchemeFile {
    pub fn from_config(cc: &CoherentConfiguration) -> Self {
        Self {
            n: cc.n(),
            colors: cc.color_rows(),
            names: cc.names().map(<[String]>::to_vec),
            parent_color: None,
        }
    }

    pub fn with_parent_color(mut self, parent: Vec<Color>) -> Self {
        self.parent_color = Some(parent);
        self
    }

    fn check_shape(&self) -> Result<(), IoError> {
        let bad = self.colors.len() != self.n || self.colors.iter().any(|r| r.len() != self.n);
        if bad {
            return Err(IoError::Malformed {
                path: None,
                message: format!("colors must be an {0}×{0} matrix", self.n),
            });
        }
        Ok(())
    }

    pub fn to_config(&self) -> Result<CoherentConfiguration, IoError> {
        self.check_shape()?;
        let cc = CoherentConfiguration::from_rows(&self.colors)?;
        Ok(match &self.names {
            Some(names) => cc.with_names(names.clone())?,
            None => cc,
        })
    }

    /// Reads the colors as closure input without checking coherence.
    pub fn to_partition(&self) -> Result<ColorPartition, IoError> {
        self.check_shape()?;
        ColorPartition::new(self.n, self.colors.concat()).map_err(IoError::Invalid)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("scheme file serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Malformed {
            path: None,
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        let text = fs::read_to_string(path).map_err(|source| {
            if source.kind() == std::io::ErrorKind::NotFound {
                IoError::Missing(path.to_path_buf())
            } else {
                IoError::Access {
                    path: path.to_path_buf(),
                    source,
                }
            }
        })?;
        Self::from_json_str(&text).map_err(|e| match e {
            IoError::Malformed { message, .. } => IoError::Malformed {
                path: Some(path.to_path_buf()),
                message,
            },
            other => other,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        fs::write(path, self.to_json_string()).map_err(|source| IoError::Access {
            path: path.to_path_buf(),
            source,
        })
    }
}
