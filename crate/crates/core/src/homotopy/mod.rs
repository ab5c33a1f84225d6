//! Paths, homotopies, path components and fundamental groups.

mod grid;
mod path;
mod pi1;
mod search;
mod snf;
mod word;

pub use grid::{validate_homotopy, GridError, GridHomotopy, GridViolation, HomotopyMode};
pub use path::{compose_paths, inverse_path, Path, PathError};
pub use pi1::{
    abelianization, loop_to_word, pi1_inv, pi1_mul, pi1_presentation, Pi1Error, Pi1Presentation,
};
pub use search::{homotopic_bounded, window_rows, HomotopyAnswer, RowComponents, SearchError};
pub use snf::{abelian_invariants, AbelianInvariants};
pub use word::{Letter, Word, WordError};

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::action::GlobalAction;
use crate::morphism::{is_morphism, MorphismError, OrbitCounterexample};
use crate::Verdict;

/// Path components of the points lying in some local set, each sorted,
/// ordered by least element.
pub fn pi0(a: &GlobalAction) -> Vec<Vec<usize>> {
    let n = a.point_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in a.frame_graph().edges {
        uf.union(u, v);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in (0..n).filter(|&x| !a.containing(x).is_empty()) {
        classes.entry(uf.find(x)).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

pub fn is_connected(a: &GlobalAction) -> bool {
    pi0(a).len() == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismHomotopyFailure {
    NotMorphism { row: usize, orbit: OrbitCounterexample },
    /// `h(O)` together with `h'(O)` is not a frame.
    Step { row: usize, index: usize, orbit: Vec<usize>, image: Vec<usize> },
}

/// Checks a stack of morphisms `X -> Y` as a homotopy: each row is a
/// morphism and consecutive rows jointly send each orbit to a frame.
pub fn validate_morphism_homotopy(
    x: &GlobalAction,
    y: &GlobalAction,
    rows: &[Vec<usize>],
) -> Result<Verdict<MorphismHomotopyFailure>, MorphismError> {
    for (row, h) in rows.iter().enumerate() {
        if let Verdict::Fails(orbit) = is_morphism(h, x, y)? {
            return Ok(Verdict::Fails(MorphismHomotopyFailure::NotMorphism { row, orbit }));
        }
    }
    for (row, pair) in rows.windows(2).enumerate() {
        for (index, orbit) in x.all_orbits() {
            let mut image: Vec<usize> = orbit.iter().flat_map(|&p| [pair[0][p], pair[1][p]]).collect();
            image.sort_unstable();
            image.dedup();
            if !y.is_frame_set(&image) {
                return Ok(Verdict::Fails(MorphismHomotopyFailure::Step {
                    row,
                    index,
                    orbit: orbit.clone(),
                    image,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn components() {
        assert_eq!(pi0(&cyclic(4)).len(), 1);
        assert_eq!(pi0(&ft()).len(), 1);
        let two = cyclic(3).disjoint_union(&cyclic(3));
        assert_eq!(pi0(&two), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(is_connected(&sd2()));
    }

    #[test]
    fn morphism_homotopies() {
        let c4 = cyclic(4);
        let t = ft();
        // any two maps into the triangle are one step apart
        assert!(validate_morphism_homotopy(&c4, &t, &[vec![0, 1, 2, 0], vec![1, 1, 1, 1]]).unwrap().holds());
        // a rotation of C4 is not one step from the identity
        let v = validate_morphism_homotopy(&c4, &c4, &[vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        assert!(matches!(v, Verdict::Fails(MorphismHomotopyFailure::Step { .. })));
        assert!(validate_morphism_homotopy(&c4, &c4, &[vec![0, 1, 2, 3], vec![1, 2, 3, 0]]).unwrap().counterexample().is_some());
    }
}
