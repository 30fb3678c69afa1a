//! Plain-text campaign configuration.
//!
//! ```text
//! # polynomials n^2 + 2bn + c, one `b,c` pair per line
//! 0,1
//! 5,27
//! grid: 100, 1000, 10000
//! ```
//!
//! Blank lines and `#` comments are ignored. At most one `grid:` line is
//! allowed; when absent the command's default grid is used.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("config lists no polynomials")]
    NoPolynomials,
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// `(b, c)` pairs.
    pub polys: Vec<(i64, i64)>,
    /// `None` when the file has no `grid:` line.
    pub grid: Option<Vec<u64>>,
}

/// The example polynomials `n^2+1`, `n^2+10n+27`, `n^2+4n+10`, `n^2+10n-10`,
/// `n^2+20n+9`.
pub const EXAMPLE_POLYS: [(i64, i64); 5] = [(0, 1), (5, 27), (2, 10), (5, -10), (10, 9)];

pub const DEFAULT_BOUND_GRID: [u64; 5] = [100, 1_000, 10_000, 100_000, 1_000_000];
pub const DEFAULT_RATIO_GRID: [u64; 4] = [1_000, 10_000, 100_000, 1_000_000];

impl Config {
    pub fn examples() -> Self {
        Self {
            polys: EXAMPLE_POLYS.to_vec(),
            grid: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut polys = Vec::new();
        let mut grid = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError::Syntax {
                line: i + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("grid:") {
                if grid.is_some() {
                    return Err(err("duplicate grid line".into()));
                }
                let values = rest
                    .split(',')
                    .map(|t| t.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(format!("bad grid value: {e}")))?;
                if values.is_empty() || values.contains(&0) {
                    return Err(err("grid values must be positive integers".into()));
                }
                grid = Some(values);
                continue;
            }
            let (b, c) = line
                .split_once(',')
                .ok_or_else(|| err(format!("expected `b,c`, found `{line}`")))?;
            let b = b.trim().parse().map_err(|e| err(format!("bad b: {e}")))?;
            let c = c.trim().parse().map_err(|e| err(format!("bad c: {e}")))?;
            polys.push((b, c));
        }
        if polys.is_empty() {
            return Err(ConfigError::NoPolynomials);
        }
        Ok(Self { polys, grid })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The grid, sorted and deduplicated, or `default` when none was given.
    pub fn grid_or(&self, default: &[u64]) -> Vec<u64> {
        let mut g = self.grid.clone().unwrap_or_else(|| default.to_vec());
        g.sort_unstable();
        g.dedup();
        g
    }
}
