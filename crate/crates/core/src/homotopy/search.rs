//! Bounded search for homotopies between paths with fixed end points.
//!
//! Rows live on a fixed window of positions and keep their end values. A
//! move changes one interior position `k` from `r[k]` to `v` where both
//! `{r[k-1], r[k], v}` and `{r[k], r[k+1], v}` are frames; these are the
//! grid steps that change one value. Any grid step between rows on the
//! window factors into such moves by changing positions left to right,
//! since every intermediate square lies inside a square of the original
//! step.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use super::grid::{GridHomotopy, GridViolation, HomotopyMode};
use super::path::{Path, PathError};
use crate::action::GlobalAction;
use crate::{BudgetExceeded, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("mode {0} is not supported by the search; use end-point-stable or fixed-end-point")]
    UnsupportedMode(HomotopyMode),
    #[error("the paths do not share end points")]
    EndpointMismatch,
    #[error("the paths are not loops at one base point")]
    NotLoops,
    #[error("width {width} is below the {needed} positions the paths occupy")]
    WidthTooSmall { needed: usize, width: usize },
    #[error("certificate failed validation: {0}")]
    InvalidCertificate(GridViolation),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyAnswer {
    Yes(GridHomotopy),
    Unknown,
}

impl HomotopyAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, HomotopyAnswer::Yes(_))
    }
}

/// Window start and the two paths as rows of length `width`.
pub fn window_rows(
    first: &Path,
    second: &Path,
    width: usize,
) -> Result<(i64, Vec<usize>, Vec<usize>), SearchError> {
    let moving: Vec<&Path> = [first, second].into_iter().filter(|p| !p.is_constant()).collect();
    let start = moving.iter().map(|p| p.gls()).min().unwrap_or(0);
    let end = moving.iter().map(|p| p.lus()).max().unwrap_or(0);
    let needed = (end - start + 1) as usize;
    if width < needed {
        return Err(SearchError::WidthTooSmall { needed, width });
    }
    Ok((start, first.window(start, width), second.window(start, width)))
}

fn check_endpoints(first: &Path, second: &Path, mode: HomotopyMode) -> Result<(), SearchError> {
    match mode {
        HomotopyMode::EndPointStable => {
            if !first.is_loop() || !second.is_loop() || first.init() != second.init() {
                return Err(SearchError::NotLoops);
            }
        }
        HomotopyMode::FixedEndPoint => {
            if first.init() != second.init() || first.term() != second.term() {
                return Err(SearchError::EndpointMismatch);
            }
        }
        other => return Err(SearchError::UnsupportedMode(other)),
    }
    Ok(())
}

fn frame3(a: &GlobalAction, x: usize, y: usize, z: usize) -> bool {
    let mut s = [x, y, z];
    s.sort_unstable();
    let mut v = s.to_vec();
    v.dedup();
    a.is_frame_set(&v)
}

/// Values that may replace position `k`, in increasing order.
fn moves<'r>(a: &'r GlobalAction, row: &'r [usize], k: usize) -> impl Iterator<Item = usize> + 'r {
    let (l, c, r) = (row[k - 1], row[k], row[k + 1]);
    (0..a.point_count()).filter(move |&v| v != c && frame3(a, l, c, v) && frame3(a, c, r, v))
}

/// Breadth-first search from the first path's row to the second's. Returns
/// a validated certificate or `Unknown`; never a negative answer.
pub fn homotopic_bounded(
    a: &GlobalAction,
    first: &Path,
    second: &Path,
    width: usize,
    mode: HomotopyMode,
    max_states: usize,
) -> Result<HomotopyAnswer, SearchError> {
    first.validate(a)?;
    second.validate(a)?;
    check_endpoints(first, second, mode)?;
    let (start, source, target) = window_rows(first, second, width)?;

    let mut rows: Vec<Vec<usize>> = vec![source.clone()];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(source, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut found = seen.get(&target).copied();
    while found.is_none() {
        let Some(id) = queue.pop_front() else { break };
        let row = rows[id].clone();
        for k in 1..width.saturating_sub(1) {
            for v in moves(a, &row, k).collect::<Vec<_>>() {
                let mut next = row.clone();
                next[k] = v;
                if seen.contains_key(&next) {
                    continue;
                }
                if rows.len() >= max_states {
                    return Err(BudgetExceeded {
                        what: "homotopy search states",
                        needed: rows.len() as u64 + 1,
                        limit: max_states as u64,
                    }
                    .into());
                }
                let nid = rows.len();
                seen.insert(next.clone(), nid);
                rows.push(next.clone());
                parent.push(id);
                queue.push_back(nid);
                if next == target {
                    found = Some(nid);
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
    }
    let Some(mut at) = found else { return Ok(HomotopyAnswer::Unknown) };
    let mut chain = vec![at];
    while parent[at] != usize::MAX {
        at = parent[at];
        chain.push(at);
    }
    chain.reverse();
    let paths = chain
        .into_iter()
        .map(|i| Path::new(start, rows[i].clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let h = GridHomotopy::new(mode, paths).expect("nonempty");
    match h.validate(a) {
        Verdict::Holds => Ok(HomotopyAnswer::Yes(h)),
        Verdict::Fails(v) => Err(SearchError::InvalidCertificate(v)),
    }
}

/// All rows of a fixed width with given end values, partitioned into
/// classes connected by single-position moves.
#[derive(Debug)]
pub struct RowComponents {
    width: usize,
    base: u64,
    ids: HashMap<u64, usize>,
    classes: UnionFind<usize>,
}

impl RowComponents {
    pub fn build(
        a: &GlobalAction,
        width: usize,
        init: usize,
        term: usize,
        max_rows: usize,
    ) -> Result<Self, BudgetExceeded> {
        let n = a.point_count();
        let base = n.max(2) as u64;
        if base.checked_pow(width as u32).is_none() {
            return Err(BudgetExceeded { what: "row encoding", needed: width as u64, limit: 0 });
        }
        let graph = a.frame_graph();
        let adj = graph.adjacency();
        // distance to `term`, to prune rows that cannot end there
        let mut dist = vec![usize::MAX; n];
        dist[term] = 0;
        let mut queue = VecDeque::from([term]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut row = vec![init; width];
        fn extend(
            k: usize,
            row: &mut Vec<usize>,
            adj: &[Vec<usize>],
            dist: &[usize],
            term: usize,
            rows: &mut Vec<Vec<usize>>,
            max_rows: usize,
        ) -> bool {
            let w = row.len();
            if k == w {
                if row[w - 1] == term {
                    if rows.len() >= max_rows {
                        return false;
                    }
                    rows.push(row.clone());
                }
                return true;
            }
            let prev = row[k - 1];
            let choices = std::iter::once(prev).chain(adj[prev].iter().copied());
            let mut sorted: Vec<usize> = choices.collect();
            sorted.sort_unstable();
            for v in sorted {
                if dist[v] > w - 1 - k {
                    continue;
                }
                row[k] = v;
                if !extend(k + 1, row, adj, dist, term, rows, max_rows) {
                    return false;
                }
            }
            true
        }
        if width == 0 || (width == 1 && init != term) || dist[init] == usize::MAX {
            return Ok(Self { width, base, ids: HashMap::new(), classes: UnionFind::new(0) });
        }
        if width == 1 {
            rows.push(vec![init]);
        } else if !extend(1, &mut row, &adj, &dist, term, &mut rows, max_rows) {
            return Err(BudgetExceeded { what: "rows", needed: max_rows as u64 + 1, limit: max_rows as u64 });
        }
        let encode = |r: &[usize]| r.iter().fold(0u64, |acc, &x| acc * base + x as u64);
        let ids: HashMap<u64, usize> = rows.iter().enumerate().map(|(i, r)| (encode(r), i)).collect();
        let mut classes = UnionFind::new(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let mut next = r.clone();
            for k in 1..width.saturating_sub(1) {
                for v in moves(a, r, k) {
                    if v < r[k] {
                        continue;
                    }
                    next[k] = v;
                    if let Some(&j) = ids.get(&encode(&next)) {
                        classes.union(i, j);
                    }
                }
                next[k] = r[k];
            }
        }
        Ok(Self { width, base, ids, classes })
    }

    pub fn row_count(&self) -> usize {
        self.ids.len()
    }

    fn id(&self, row: &[usize]) -> Option<usize> {
        if row.len() != self.width {
            return None;
        }
        self.ids.get(&row.iter().fold(0u64, |acc, &x| acc * self.base + x as u64)).copied()
    }

    /// Whether the two rows are connected by moves; `None` if either is not
    /// a row of this width and these end points.
    pub fn connected(&self, first: &[usize], second: &[usize]) -> Option<bool> {
        let (i, j) = (self.id(first)?, self.id(second)?);
        Some(self.classes.equiv(i, j))
    }

    pub fn class_count(&self) -> usize {
        let mut labels = self.classes.clone().into_labeling();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn triangle_contracts() {
        let t = ft();
        let l = Path::from_points(vec![0, 1, 2, 0]).unwrap();
        let ans = homotopic_bounded(&t, &l, &Path::constant(0), 4, HomotopyMode::EndPointStable, 10_000).unwrap();
        let HomotopyAnswer::Yes(h) = ans else { panic!("expected a certificate") };
        assert!(h.validate(&t).holds());
        assert_eq!(h.init(), &l);
        assert_eq!(h.term(), &Path::constant(0));
    }

    #[test]
    fn reflexive_certificate_has_one_row() {
        let c4 = cyclic(4);
        let l = Path::from_points(vec![0, 1, 2, 3, 0]).unwrap();
        let HomotopyAnswer::Yes(h) =
            homotopic_bounded(&c4, &l, &l, 5, HomotopyMode::EndPointStable, 100).unwrap()
        else {
            panic!()
        };
        assert_eq!(h.rows().len(), 1);
    }

    #[test]
    fn cycle_does_not_contract() {
        let c4 = cyclic(4);
        let l = Path::from_points(vec![0, 1, 2, 3, 0]).unwrap();
        let ans = homotopic_bounded(&c4, &l, &Path::constant(0), 8, HomotopyMode::EndPointStable, 1_000_000).unwrap();
        assert_eq!(ans, HomotopyAnswer::Unknown);
        let rc = RowComponents::build(&c4, 8, 0, 0, 1_000_000).unwrap();
        assert_eq!(rc.connected(&l.window(0, 8), &[0; 8]), Some(false));
        // winding numbers -1..=1 fit in 8 positions
        assert_eq!(rc.class_count(), 3);
    }

    #[test]
    fn backtracking_contracts() {
        let c4 = cyclic(4);
        let l = Path::from_points(vec![0, 1, 0, 3, 0]).unwrap();
        assert!(homotopic_bounded(&c4, &l, &Path::constant(0), 5, HomotopyMode::FixedEndPoint, 1000)
            .unwrap()
            .is_yes());
        assert!(matches!(
            homotopic_bounded(&c4, &l, &Path::constant(0), 5, HomotopyMode::Plain, 1000),
            Err(SearchError::UnsupportedMode(_))
        ));
        assert!(matches!(
            homotopic_bounded(&c4, &l, &Path::constant(0), 3, HomotopyMode::FixedEndPoint, 1000),
            Err(SearchError::WidthTooSmall { .. })
        ));
    }
}
