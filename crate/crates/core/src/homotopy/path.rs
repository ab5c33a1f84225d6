//! Paths: maps from the integer line that are constant outside a finite
//! window, stored as the values on that window.

use std::fmt;

use thiserror::Error;

use crate::action::GlobalAction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one point")]
    Empty,
    #[error("point {0} is not in the action")]
    UnknownPoint(usize),
    #[error("point {0} lies in no local set")]
    Uncovered(usize),
    #[error("points {first} and {second} at position {position} do not form a frame")]
    NotFrame { position: i64, first: usize, second: usize },
    #[error("terminal point {term} does not match initial point {init}")]
    EndpointMismatch { term: usize, init: usize },
    #[error("not a loop at {0}")]
    NotLoop(usize),
}

/// A path, trimmed so that the first and last stored values are the
/// stabilized ones. `offset` is the greatest lower stabilization; a
/// constant path is a single point at offset 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    offset: i64,
    points: Vec<usize>,
}

impl Path {
    /// Normalizes without checking frames; see [`Path::validate`].
    pub fn new(offset: i64, points: Vec<usize>) -> Result<Self, PathError> {
        if points.is_empty() {
            return Err(PathError::Empty);
        }
        let mut start = 0;
        while start + 1 < points.len() && points[start] == points[start + 1] {
            start += 1;
        }
        let mut end = points.len();
        while end > start + 1 && points[end - 1] == points[end - 2] {
            end -= 1;
        }
        if end - start == 1 {
            return Ok(Self::constant(points[start]));
        }
        Ok(Self { offset: offset + start as i64, points: points[start..end].to_vec() })
    }

    pub fn constant(x: usize) -> Self {
        Self { offset: 0, points: vec![x] }
    }

    /// Points starting at position 0.
    pub fn from_points(points: Vec<usize>) -> Result<Self, PathError> {
        Self::new(0, points)
    }

    /// Builds and validates against `a`.
    pub fn in_action(a: &GlobalAction, offset: i64, points: Vec<usize>) -> Result<Self, PathError> {
        let p = Self::new(offset, points)?;
        p.validate(a)?;
        Ok(p)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn is_constant(&self) -> bool {
        self.points.len() == 1
    }

    pub fn gls(&self) -> i64 {
        self.offset
    }

    pub fn lus(&self) -> i64 {
        self.offset + self.points.len() as i64 - 1
    }

    pub fn init(&self) -> usize {
        self.points[0]
    }

    pub fn term(&self) -> usize {
        *self.points.last().expect("nonempty")
    }

    pub fn is_loop(&self) -> bool {
        self.init() == self.term()
    }

    /// Value at position `n`, constant beyond the window.
    pub fn at(&self, n: i64) -> usize {
        let i = (n - self.offset).clamp(0, self.points.len() as i64 - 1);
        self.points[i as usize]
    }

    /// Each point lies in a local set and each step is a frame.
    pub fn validate(&self, a: &GlobalAction) -> Result<(), PathError> {
        for &x in &self.points {
            if x >= a.point_count() {
                return Err(PathError::UnknownPoint(x));
            }
            if a.containing(x).is_empty() {
                return Err(PathError::Uncovered(x));
            }
        }
        for (i, w) in self.points.windows(2).enumerate() {
            let mut pair = [w[0], w[1]];
            pair.sort_unstable();
            if !a.is_frame_set(&pair) {
                return Err(PathError::NotFrame { position: self.offset + i as i64, first: w[0], second: w[1] });
            }
        }
        Ok(())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Result<Path, PathError> {
        if self.term() != next.init() {
            return Err(PathError::EndpointMismatch { term: self.term(), init: next.init() });
        }
        if self.is_constant() {
            return Ok(next.clone());
        }
        let lus = self.lus();
        let gls_next = next.gls();
        let end = lus.max(lus + next.lus() - gls_next);
        let points = (self.gls()..=end)
            .map(|n| if n <= lus { self.at(n) } else { next.at(n - lus + gls_next) })
            .collect();
        Path::new(self.gls(), points)
    }

    /// The same window traversed backwards.
    pub fn inverse(&self) -> Path {
        let mut points = self.points.clone();
        points.reverse();
        Path { offset: self.offset, points }
    }

    /// Shifted copy starting at `offset`.
    pub fn at_offset(&self, offset: i64) -> Path {
        if self.is_constant() {
            return self.clone();
        }
        Path { offset, points: self.points.clone() }
    }

    /// Values on `[start, start + width)`.
    pub fn window(&self, start: i64, width: usize) -> Vec<usize> {
        (0..width as i64).map(|i| self.at(start + i)).collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "@{} [{}]", self.offset, parts.join(","))
    }
}

/// `second` after `first` in the usual notation for composition.
pub fn compose_paths(first: &Path, second: &Path) -> Result<Path, PathError> {
    first.then(second)
}

pub fn inverse_path(p: &Path) -> Path {
    p.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn normalization() {
        let p = Path::new(3, vec![1, 1, 2, 3, 3]).unwrap();
        assert_eq!((p.gls(), p.lus()), (4, 6));
        assert_eq!(p.points(), &[1, 2, 3]);
        let c = Path::new(7, vec![5, 5, 5]).unwrap();
        assert_eq!(c, Path::constant(5));
        assert_eq!((c.gls(), c.lus()), (0, 0));
        assert_eq!(Path::new(0, vec![]), Err(PathError::Empty));
    }

    #[test]
    fn validation() {
        let c4 = cyclic(4);
        let p = Path::in_action(&c4, 0, vec![0, 1, 2]).unwrap();
        assert_eq!((p.init(), p.term(), p.lus()), (0, 2, 2));
        assert!(matches!(Path::in_action(&c4, 0, vec![0, 2]), Err(PathError::NotFrame { .. })));
    }

    #[test]
    fn composition_and_inverse() {
        let a = Path::from_points(vec![0, 1]).unwrap();
        let b = Path::from_points(vec![1, 2]).unwrap();
        assert_eq!(a.then(&b).unwrap().points(), &[0, 1, 2]);
        assert_eq!(a.then(&Path::constant(1)).unwrap(), a);
        assert_eq!(Path::constant(0).then(&a).unwrap(), a);
        assert!(b.then(&a).is_err());
        // offsets follow the reindexing rule
        let late = Path::new(5, vec![1, 2]).unwrap();
        let joined = a.then(&late).unwrap();
        assert_eq!((joined.gls(), joined.points()), (0, &[0usize, 1, 2][..]));
        let p = Path::new(2, vec![0, 1, 2]).unwrap();
        assert_eq!(p.inverse().points(), &[2, 1, 0]);
        assert_eq!(p.inverse().gls(), 2);
        assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn evaluation_is_clamped() {
        let p = Path::new(-1, vec![4, 5, 6]).unwrap();
        assert_eq!(p.at(-10), 4);
        assert_eq!(p.at(0), 5);
        assert_eq!(p.at(10), 6);
        assert_eq!(p.window(-2, 5), vec![4, 4, 5, 6, 6]);
    }
}
