//! Homotopies between paths as finite stacks of rows.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::path::{Path, PathError};
use crate::action::GlobalAction;
use crate::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomotopyMode {
    Plain,
    /// Every row is a loop, at any base point.
    LoopRows,
    /// Every row is a loop at the first row's base point.
    EndPointStable,
    /// All rows share the first row's end points.
    FixedEndPoint,
}

impl HomotopyMode {
    pub fn name(self) -> &'static str {
        match self {
            HomotopyMode::Plain => "plain",
            HomotopyMode::LoopRows => "loop-rows",
            HomotopyMode::EndPointStable => "end-point-stable",
            HomotopyMode::FixedEndPoint => "fixed-end-point",
        }
    }
}

impl fmt::Display for HomotopyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HomotopyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [HomotopyMode::Plain, HomotopyMode::LoopRows, HomotopyMode::EndPointStable, HomotopyMode::FixedEndPoint]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown homotopy mode '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridViolation {
    #[error("row {row}: {error}")]
    Row { row: usize, error: PathError },
    #[error("square between rows {row} and {} at position {position} covers {points:?}, not a frame", row + 1)]
    Square { row: usize, position: i64, points: Vec<usize> },
    #[error("row {row} is not a loop")]
    NotLoop { row: usize },
    #[error("row {row} is not based at the first row's base point")]
    BaseMoved { row: usize },
    #[error("row {row} does not share the first row's end points")]
    EndpointsMoved { row: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("a homotopy needs at least one row")]
    Empty,
    #[error("terminal row of the first homotopy is not the initial row of the second")]
    Mismatch,
}

/// Rows are the slices at successive homotopy parameters; the first and
/// last rows repeat forever. Repeated rows at either end are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridHomotopy {
    pub mode: HomotopyMode,
    rows: Vec<Path>,
}

impl GridHomotopy {
    pub fn new(mode: HomotopyMode, rows: Vec<Path>) -> Result<Self, GridError> {
        if rows.is_empty() {
            return Err(GridError::Empty);
        }
        let mut start = 0;
        while start + 1 < rows.len() && rows[start] == rows[start + 1] {
            start += 1;
        }
        let mut end = rows.len();
        while end > start + 1 && rows[end - 1] == rows[end - 2] {
            end -= 1;
        }
        Ok(Self { mode, rows: rows[start..end].to_vec() })
    }

    pub fn rows(&self) -> &[Path] {
        &self.rows
    }

    pub fn init(&self) -> &Path {
        &self.rows[0]
    }

    pub fn term(&self) -> &Path {
        self.rows.last().expect("nonempty")
    }

    /// Checks rows, unit squares and the mode clause, naming the first
    /// failure.
    pub fn validate(&self, a: &GlobalAction) -> Verdict<GridViolation> {
        for (row, p) in self.rows.iter().enumerate() {
            if let Err(error) = p.validate(a) {
                return Verdict::Fails(GridViolation::Row { row, error });
            }
        }
        for (row, pair) in self.rows.windows(2).enumerate() {
            let (r, s) = (&pair[0], &pair[1]);
            let lo = r.gls().min(s.gls()) - 1;
            let hi = r.lus().max(s.lus());
            for n in lo..=hi {
                let mut points = vec![r.at(n), r.at(n + 1), s.at(n), s.at(n + 1)];
                points.sort_unstable();
                points.dedup();
                if !a.is_frame_set(&points) {
                    return Verdict::Fails(GridViolation::Square { row, position: n, points });
                }
            }
        }
        let first = &self.rows[0];
        for (row, p) in self.rows.iter().enumerate() {
            let bad = match self.mode {
                HomotopyMode::Plain => None,
                HomotopyMode::LoopRows => (!p.is_loop()).then_some(GridViolation::NotLoop { row }),
                HomotopyMode::EndPointStable => {
                    if !p.is_loop() {
                        Some(GridViolation::NotLoop { row })
                    } else if p.init() != first.init() {
                        Some(GridViolation::BaseMoved { row })
                    } else {
                        None
                    }
                }
                HomotopyMode::FixedEndPoint => (p.init() != first.init() || p.term() != first.term())
                    .then_some(GridViolation::EndpointsMoved { row }),
            };
            if let Some(v) = bad {
                return Verdict::Fails(v);
            }
        }
        Verdict::Holds
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GridHomotopy) -> Result<GridHomotopy, GridError> {
        if self.term() != next.init() {
            return Err(GridError::Mismatch);
        }
        let rows = self.rows.iter().chain(&next.rows[1..]).cloned().collect();
        GridHomotopy::new(self.mode, rows)
    }

    pub fn inverse(&self) -> GridHomotopy {
        let mut rows = self.rows.clone();
        rows.reverse();
        GridHomotopy { mode: self.mode, rows }
    }
}

pub fn validate_homotopy(h: &GridHomotopy, a: &GlobalAction) -> Verdict<GridViolation> {
    h.validate(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    fn row(points: &[usize]) -> Path {
        Path::from_points(points.to_vec()).unwrap()
    }

    fn ft_grid() -> GridHomotopy {
        GridHomotopy::new(
            HomotopyMode::EndPointStable,
            vec![row(&[0, 1, 2, 0]), row(&[0, 2, 2, 0]), row(&[0, 0, 0, 0])],
        )
        .unwrap()
    }

    #[test]
    fn ft_contraction() {
        let t = ft();
        let h = ft_grid();
        assert_eq!(h.rows().len(), 3);
        assert!(h.validate(&t).holds());
        let both = h.then(&h.inverse()).unwrap();
        assert_eq!(both.rows().len(), 5);
        assert!(both.validate(&t).holds());
    }

    #[test]
    fn c4_square_fails() {
        let c4 = cyclic(4);
        let h = GridHomotopy::new(HomotopyMode::Plain, vec![row(&[0, 1, 2]), row(&[0, 3, 2])]).unwrap();
        match h.validate(&c4) {
            Verdict::Fails(GridViolation::Square { points, .. }) => assert_eq!(points, vec![0, 1, 3]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn repeated_rows_are_trimmed() {
        let r = row(&[0, 1, 2, 0]);
        let h = GridHomotopy::new(HomotopyMode::LoopRows, vec![r.clone(), r.clone(), r.clone()]).unwrap();
        assert_eq!(h.rows().len(), 1);
        assert_eq!(h.inverse(), h);
        assert!(h.validate(&ft()).holds());
        assert!(HomotopyMode::from_str("loop-rows").is_ok());
        assert!(HomotopyMode::from_str("nope").is_err());
    }

    #[test]
    fn mode_clauses() {
        let t = ft();
        let h = GridHomotopy::new(HomotopyMode::EndPointStable, vec![row(&[0, 1]), row(&[0, 2])]).unwrap();
        assert!(matches!(h.validate(&t), Verdict::Fails(GridViolation::NotLoop { row: 0 })));
        let h = GridHomotopy { mode: HomotopyMode::FixedEndPoint, ..h };
        assert!(matches!(h.validate(&t), Verdict::Fails(GridViolation::EndpointsMoved { row: 1 })));
    }
}
