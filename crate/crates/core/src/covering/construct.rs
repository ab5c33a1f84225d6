//! The covering attached to a subgroup of the fundamental group.
//!
//! Points are pairs `(x, c)` of a point and a coset, where `c` records the
//! class of a path from the base point to `x`, closed up along the
//! spanning tree, modulo the subgroup. A group element moving `x` to `y`
//! moves `(x, c)` to `(y, c . letter(x -> y))`.

use std::collections::BTreeMap;

use super::coset::CosetTable;
use super::{CoveringError, CoveringMap};
use crate::action::{GlobalAction, LocalAction};
use crate::algebra::GroupAction;
use crate::homotopy::{pi0, pi1_presentation, Pi1Presentation, Word};
use crate::Verdict;

/// A subgroup of the fundamental group at `base`, by generating words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub base: usize,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct SubgroupCover {
    pub action: GlobalAction,
    /// `(base, coset 0)`.
    pub base: usize,
    pub projection: Vec<usize>,
    pub covering: CoveringMap,
    pub cosets: CosetTable,
    pub presentation: Pi1Presentation,
}

impl SubgroupCover {
    /// Point id of `(x, coset)`.
    pub fn point(&self, x: usize, coset: usize) -> usize {
        x * self.cosets.len() + coset
    }
}

pub fn construct_covering(
    a: &GlobalAction,
    spec: &SubgroupSpec,
    max_cosets: usize,
) -> Result<SubgroupCover, CoveringError> {
    let components = pi0(a);
    if components.len() != 1 || components[0].len() != a.point_count() {
        return Err(CoveringError::Disconnected);
    }
    let presentation = pi1_presentation(a, spec.base)?;
    let cosets = presentation.cosets(&spec.words, max_cosets)?;
    let n = cosets.len();
    let id = |x: usize, c: usize| x * n + c;

    let mut labels = Vec::with_capacity(a.point_count() * n);
    for x in 0..a.point_count() {
        for c in 0..n {
            labels.push(format!("{}#{c}", a.label(x)));
        }
    }
    let mut indices = Vec::with_capacity(a.index_count());
    for ix in a.indices() {
        let carrier: Vec<usize> = ix.carrier().iter().flat_map(|&x| (0..n).map(move |c| id(x, c))).collect();
        let action = GroupAction::from_fn(ix.group().clone(), carrier, |g, p| {
            let (x, c) = (p / n, p % n);
            let y = ix.action.act(g, x).expect("carrier point");
            let c2 = match presentation.step(x, y) {
                Some(l) => cosets.act(c, l),
                None => c,
            };
            id(y, c2)
        })
        .expect("lifted action table");
        indices.push(LocalAction::new(ix.name.clone(), action));
    }
    let homs: BTreeMap<(usize, usize), Vec<usize>> = a.homs().clone();
    let action = GlobalAction::new(labels, indices, a.relation().clone(), homs)
        .expect("copied structure is well formed");
    if let Verdict::Fails(v) = action.validate() {
        return Err(CoveringError::InvalidCover(v));
    }
    let projection: Vec<usize> = (0..action.point_count()).map(|p| p / n).collect();
    let covering = CoveringMap::new(&action, a, &projection)?;
    Ok(SubgroupCover { base: id(spec.base, 0), action, projection, covering, cosets, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn double_cover_of_the_triangle_cycle() {
        let c3 = cyclic(3);
        let p = pi1_presentation(&c3, 0).unwrap();
        let spec = SubgroupSpec { base: 0, words: vec![p.parse_word("g^2").unwrap()] };
        let cover = construct_covering(&c3, &spec, 100).unwrap();
        assert_eq!(cover.action.point_count(), 6);
        let g = cover.action.frame_graph();
        assert_eq!(g.edges.len(), 6);
        assert!(g.adjacency().iter().all(|n| n.len() == 2));
        assert_eq!(pi0(&cover.action).len(), 1);
    }

    #[test]
    fn full_and_trivial_subgroups() {
        let c4 = cyclic(4);
        let spec = SubgroupSpec { base: 0, words: vec![Word::letter(0)] };
        let cover = construct_covering(&c4, &spec, 100).unwrap();
        assert_eq!(cover.cosets.len(), 1);
        assert_eq!(cover.action.point_count(), 4);
        let trivial = SubgroupSpec { base: 0, words: vec![] };
        assert!(matches!(construct_covering(&c4, &trivial, 50), Err(CoveringError::Coset(_))));
        let t = ft();
        let cover = construct_covering(&t, &SubgroupSpec { base: 0, words: vec![] }, 100).unwrap();
        assert_eq!(cover.action.point_count(), 3);
    }

    #[test]
    fn disconnected_input() {
        let two = cyclic(3).disjoint_union(&cyclic(3));
        assert!(matches!(
            construct_covering(&two, &SubgroupSpec { base: 0, words: vec![] }, 10),
            Err(CoveringError::Disconnected)
        ));
    }
}
