//! Presentation of the fundamental group as the edge-path group of the
//! frame complex: vertices are points, edges are two-point frames and each
//! three-point frame fills a triangle.
//!
//! A unit square of a grid homotopy lands in one orbit, and any four points
//! of an orbit split into two triangles of that orbit; conversely each
//! triangle move is a two-row grid. So grid homotopy classes of loops and
//! edge-path classes agree.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use super::path::{Path, PathError};
use super::snf::{abelian_invariants, AbelianInvariants};
use super::word::{Letter, Word, WordError};
use crate::action::GlobalAction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("base point {0} is not in the action")]
    UnknownBase(usize),
    #[error("base point {0} lies in no local set")]
    UncoveredBase(usize),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("point {0} is outside the base point's component")]
    OutsideComponent(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Presentation {
    pub base: usize,
    /// Points of the base point's component, in point order.
    pub component: Vec<usize>,
    /// Tree parent of each component point other than the base.
    pub parent: Vec<Option<usize>>,
    /// Non-tree edges `(u, v)` with `u < v`; generator `i` crosses
    /// `generators[i]` from `u` to `v`.
    pub generators: Vec<(usize, usize)>,
    pub names: Vec<String>,
    /// One relator per triangle `a < b < c`, reading `a -> b -> c -> a`.
    pub relations: Vec<Word>,
    pub triangles: Vec<[usize; 3]>,
    edge_generator: HashMap<(usize, usize), usize>,
}

pub fn pi1_presentation(a: &GlobalAction, base: usize) -> Result<Pi1Presentation, Pi1Error> {
    if base >= a.point_count() {
        return Err(Pi1Error::UnknownBase(base));
    }
    if a.containing(base).is_empty() {
        return Err(Pi1Error::UncoveredBase(base));
    }
    let graph = a.frame_graph();
    let adj = graph.adjacency();
    let n = a.point_count();
    let mut seen = vec![false; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::from([base]);
    seen[base] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    let component: Vec<usize> = (0..n).filter(|&x| seen[x]).collect();
    let is_tree = |u: usize, v: usize| parent[v] == Some(u) || parent[u] == Some(v);
    let generators: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| seen[u] && !is_tree(u, v))
        .collect();
    let names = if generators.len() == 1 {
        vec!["g".to_string()]
    } else {
        (1..=generators.len()).map(|i| format!("g{i}")).collect()
    };
    let edge_generator = generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let triangles: Vec<[usize; 3]> = graph.triangles.iter().copied().filter(|t| seen[t[0]]).collect();
    let mut p = Pi1Presentation {
        base,
        component,
        parent,
        generators,
        names,
        relations: Vec::new(),
        triangles,
        edge_generator,
    };
    p.relations = p
        .triangles
        .iter()
        .map(|&[x, y, z]| {
            Word(p.step(x, y).into_iter().chain(p.step(y, z)).chain(p.step(z, x)).collect()).reduced()
        })
        .collect();
    Ok(p)
}

impl Pi1Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.component.binary_search(&x).is_ok()
    }

    /// The letter for crossing the edge from `u` to `v`; none for tree
    /// edges and for staying put.
    pub fn step(&self, u: usize, v: usize) -> Option<Letter> {
        if u == v {
            return None;
        }
        let key = (u.min(v), u.max(v));
        self.edge_generator.get(&key).map(|&g| Letter::new(g, u > v))
    }

    /// Tree path from the base to `x`.
    pub fn tree_path(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// The word of a loop at the base point, freely reduced.
    pub fn loop_to_word(&self, a: &GlobalAction, l: &Path) -> Result<Word, Pi1Error> {
        l.validate(a)?;
        if l.init() != self.base || l.term() != self.base {
            return Err(PathError::NotLoop(self.base).into());
        }
        Ok(self.path_word(l.points()))
    }

    /// Word of any edge path inside the component, not closed up.
    pub fn path_word(&self, points: &[usize]) -> Word {
        Word(points.windows(2).filter_map(|w| self.step(w[0], w[1])).collect()).reduced()
    }

    /// A loop at the base realizing `w`: out along the tree, across the
    /// edge, back along the tree.
    pub fn word_to_loop(&self, w: &Word) -> Result<Path, Pi1Error> {
        w.check_alphabet(self.generator_count())?;
        let mut points = vec![self.base];
        for l in w.letters() {
            let (u, v) = self.generators[l.generator];
            let (from, to) = if l.inverse { (v, u) } else { (u, v) };
            points.extend(self.tree_path(from).into_iter().skip(1));
            points.extend(self.tree_path(to).into_iter().rev());
        }
        Ok(Path::from_points(points)?)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, Pi1Error> {
        Ok(Word::parse(s, &self.names)?)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.names)
    }

    /// `[a]` then `[b]`: the class of the loop that runs `a` first.
    pub fn mul(&self, a: &Word, b: &Word) -> Result<Word, Pi1Error> {
        a.check_alphabet(self.generator_count())?;
        b.check_alphabet(self.generator_count())?;
        Ok(a.concat(b))
    }

    pub fn inv(&self, a: &Word) -> Result<Word, Pi1Error> {
        a.check_alphabet(self.generator_count())?;
        Ok(a.inverse())
    }

    /// Relators with empty ones dropped.
    pub fn nontrivial_relations(&self) -> Vec<Word> {
        self.relations.iter().filter(|r| !r.is_empty()).cloned().collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        abelian_invariants(self.generator_count(), &self.relations)
    }
}

pub fn loop_to_word(p: &Pi1Presentation, a: &GlobalAction, l: &Path) -> Result<Word, Pi1Error> {
    p.loop_to_word(a, l)
}

pub fn pi1_mul(p: &Pi1Presentation, a: &Word, b: &Word) -> Result<Word, Pi1Error> {
    p.mul(a, b)
}

pub fn pi1_inv(p: &Pi1Presentation, a: &Word) -> Result<Word, Pi1Error> {
    p.inv(a)
}

pub fn abelianization(p: &Pi1Presentation) -> AbelianInvariants {
    p.abelianization()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn cycles_are_free_of_rank_one() {
        for n in 3..=6 {
            let c = cyclic(n);
            for base in 0..n {
                let p = pi1_presentation(&c, base).unwrap();
                assert_eq!(p.generator_count(), 1);
                assert!(p.relations.is_empty());
                assert_eq!(p.names, vec!["g"]);
            }
        }
        let c4 = cyclic(4);
        let p = pi1_presentation(&c4, 0).unwrap();
        let around = Path::from_points(vec![0, 1, 2, 3, 0]).unwrap();
        let w = p.loop_to_word(&c4, &around).unwrap();
        assert_eq!(w.len(), 1);
        let back = p.word_to_loop(&w).unwrap();
        assert_eq!(p.loop_to_word(&c4, &back).unwrap(), w);
        assert_eq!(p.mul(&w, &w).unwrap().len(), 2);
        assert!(p.mul(&w, &p.inv(&w).unwrap()).unwrap().is_empty());
        let inv = p.abelianization();
        assert_eq!((inv.free_rank(), inv.torsion()), (1, vec![]));
    }

    #[test]
    fn triangle_is_filled() {
        let t = ft();
        let p = pi1_presentation(&t, 0).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relations.len(), 1);
        let l = Path::from_points(vec![0, 1, 2, 0]).unwrap();
        let w = p.loop_to_word(&t, &l).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(p.relations[0].len(), 1);
        assert!(p.abelianization().is_trivial());
    }

    #[test]
    fn tree_only() {
        let p = pi1_presentation(&sd2(), 0).unwrap();
        assert_eq!(p.generator_count(), 0);
        assert!(p.loop_to_word(&sd2(), &Path::constant(0)).unwrap().is_empty());
        assert!(matches!(pi1_presentation(&sd2(), 9), Err(Pi1Error::UnknownBase(9))));
    }

    #[test]
    fn composition_is_path_order() {
        let c4 = cyclic(4);
        let p = pi1_presentation(&c4, 0).unwrap();
        let a = Path::from_points(vec![0, 1, 2, 3, 0]).unwrap();
        let b = a.inverse().then(&a.inverse()).unwrap();
        let ab = a.then(&b).unwrap();
        let wa = p.loop_to_word(&c4, &a).unwrap();
        let wb = p.loop_to_word(&c4, &b).unwrap();
        assert_eq!(p.loop_to_word(&c4, &ab).unwrap(), p.mul(&wa, &wb).unwrap());
    }
}
