//! Morphisms of global actions and regular morphisms.
//!
//! A function is a morphism iff it sends frames to frames. Every frame is a
//! subset of an orbit and every orbit is a frame, so it is enough to look at
//! the image of each whole orbit: if `f(O)` is a `b`-frame, so is the image
//! of every subset of `O`.

mod exponential;
mod infimum;
mod normality;
mod space;

pub use exponential::{exponential_law, ExponentialLaw, ExponentialReport};
pub use infimum::{
    check_infimum_sufficiency, is_infimum, is_strong_infimum, InfimumCounterexample,
    SufficiencyReport,
};
pub use normality::{
    extend_postcomposition, is_z_conormal, is_z_normal, is_z_normal_isomorphism,
    postcomposition_table, precompose, precomposition_table, sampled_infinity_normal,
    ExtensionReport, NormalityCounterexample,
};
pub use space::{
    check_joint_frames, mor_act, mor_frame, mor_membership, JointFrameFailure, MorFrameWitness,
    MorSpace,
};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::action::GlobalAction;
use crate::algebra::{check_homomorphism, AlgebraError, HomomorphismViolation};
use crate::{saturating_pow, BudgetExceeded, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map has {len} entries for {points} source points")]
    Partial { len: usize, points: usize },
    #[error("map sends point {point} to {value}, which is not a target point")]
    OutOfRange { point: usize, value: usize },
    #[error("the target of the first map is not the source of the second")]
    Mismatch,
    #[error("not a morphism: image of orbit {orbit:?} at index {index} is {image:?}")]
    NotMorphism { index: usize, orbit: Vec<usize>, image: Vec<usize> },
    #[error("index table has {len} entries for {expected} points")]
    BadIndexTable { len: usize, expected: usize },
    #[error("index value {value} is out of range")]
    IndexOutOfRange { value: usize },
    #[error("group data for index {index}: {error}")]
    GroupData { index: usize, error: AlgebraError },
    #[error("the morphism is not in the requested local set")]
    NotInLocalSet,
    #[error("the regular morphism is invalid: {0}")]
    InvalidRegular(RegularViolation),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// An orbit whose image is not a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounterexample {
    pub index: usize,
    pub orbit: Vec<usize>,
    pub image: Vec<usize>,
}

pub(crate) fn check_map(f: &[usize], x: &GlobalAction, y: &GlobalAction) -> Result<(), MorphismError> {
    if f.len() != x.point_count() {
        return Err(MorphismError::Partial { len: f.len(), points: x.point_count() });
    }
    match f.iter().enumerate().find(|(_, &v)| v >= y.point_count()) {
        Some((point, &value)) => Err(MorphismError::OutOfRange { point, value }),
        None => Ok(()),
    }
}

pub(crate) fn image(f: &[usize], s: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = s.iter().map(|&x| f[x]).collect();
    set.into_iter().collect()
}

/// Decides whether `f` preserves frames by checking the image of every
/// orbit of every local action of `x`.
pub fn is_morphism(
    f: &[usize],
    x: &GlobalAction,
    y: &GlobalAction,
) -> Result<Verdict<OrbitCounterexample>, MorphismError> {
    check_map(f, x, y)?;
    Ok(orbit_check(f, x, y))
}

pub(crate) fn orbit_check(f: &[usize], x: &GlobalAction, y: &GlobalAction) -> Verdict<OrbitCounterexample> {
    for (index, orbit) in x.all_orbits() {
        let img = image(f, orbit);
        if !y.is_frame_set(&img) {
            return Verdict::Fails(OrbitCounterexample { index, orbit: orbit.clone(), image: img });
        }
    }
    Verdict::Holds
}

/// A frame-preserving function between two global actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionMorphism<'a> {
    pub source: &'a GlobalAction,
    pub target: &'a GlobalAction,
    pub map: Vec<usize>,
}

impl<'a> ActionMorphism<'a> {
    pub fn new(
        source: &'a GlobalAction,
        target: &'a GlobalAction,
        map: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        match is_morphism(&map, source, target)? {
            Verdict::Holds => Ok(Self { source, target, map }),
            Verdict::Fails(c) => {
                Err(MorphismError::NotMorphism { index: c.index, orbit: c.orbit, image: c.image })
            }
        }
    }

    pub fn identity(a: &'a GlobalAction) -> Self {
        Self { source: a, target: a, map: (0..a.point_count()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// `second` after `first`.
pub fn compose<'a>(
    first: &ActionMorphism<'a>,
    second: &ActionMorphism<'a>,
) -> Result<ActionMorphism<'a>, MorphismError> {
    if !std::ptr::eq(first.target, second.source) && first.target != second.source {
        return Err(MorphismError::Mismatch);
    }
    let map = first.map.iter().map(|&y| second.map[y]).collect();
    ActionMorphism::new(first.source, second.target, map)
}

/// All morphisms `x -> y` in lexicographic order of their tables.
///
/// Points are assigned in order; an assignment is abandoned as soon as the
/// image of the assigned part of some orbit is not a frame, since subsets of
/// frames are frames.
pub fn enumerate_morphisms(
    x: &GlobalAction,
    y: &GlobalAction,
    limit: u64,
) -> Result<Vec<Vec<usize>>, BudgetExceeded> {
    let needed = saturating_pow(y.point_count(), x.point_count());
    if needed > limit {
        return Err(BudgetExceeded { what: "function enumeration", needed, limit });
    }
    let n = x.point_count();
    let orbits: Vec<&Vec<usize>> = {
        let set: BTreeSet<&Vec<usize>> = x.all_orbits().map(|(_, o)| o).filter(|o| o.len() > 1).collect();
        set.into_iter().collect()
    };
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, o) in orbits.iter().enumerate() {
        for &p in o.iter() {
            through[p].push(k);
        }
    }
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    let mut scratch = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        f: &mut Vec<usize>,
        x_in_x: &[bool],
        y: &GlobalAction,
        orbits: &[&Vec<usize>],
        through: &[Vec<usize>],
        scratch: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == f.len() {
            out.push(f.clone());
            return;
        }
        'value: for v in 0..y.point_count() {
            if x_in_x[k] && !y.is_frame_set(&[v]) {
                continue;
            }
            f[k] = v;
            for &o in &through[k] {
                scratch.clear();
                scratch.extend(orbits[o].iter().filter(|&&p| p <= k).map(|&p| f[p]));
                scratch.sort_unstable();
                scratch.dedup();
                if !y.is_frame_set(scratch) {
                    continue 'value;
                }
            }
            go(k + 1, f, x_in_x, y, orbits, through, scratch, out);
        }
    }
    // a point in some local set must land in some local set
    let x_in_x: Vec<bool> = (0..n).map(|p| !x.containing(p).is_empty()).collect();
    go(0, &mut f, &x_in_x, y, &orbits, &through, &mut scratch, &mut out);
    Ok(out)
}

/// Index map, per-index group homomorphisms and point map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularMorphism {
    pub iota: Vec<usize>,
    pub kappa: Vec<Vec<usize>>,
    pub lambda: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularViolation {
    #[error("(a) index map breaks the relation at ({0}, {1})")]
    RelationNotPreserved(usize, usize),
    #[error("(b) group map at index {index} is not a homomorphism: {violation}")]
    NotHomomorphism { index: usize, violation: HomomorphismViolation },
    #[error("(b) square for ({source_index}, {target}) does not commute at element {element}")]
    SquareDoesNotCommute { source_index: usize, target: usize, element: usize },
    #[error("(c) point {point} of local set {index} is not sent into the image local set")]
    LocalSetNotMapped { index: usize, point: usize },
    #[error("(d) index {index}: element {element} and point {point} break equivariance")]
    NotEquivariant { index: usize, element: usize, point: usize },
}

impl RegularViolation {
    pub fn clause(&self) -> char {
        match self {
            RegularViolation::RelationNotPreserved(..) => 'a',
            RegularViolation::NotHomomorphism { .. } | RegularViolation::SquareDoesNotCommute { .. } => 'b',
            RegularViolation::LocalSetNotMapped { .. } => 'c',
            RegularViolation::NotEquivariant { .. } => 'd',
        }
    }
}

/// Checks clauses (a)-(d) in order and names the first failure.
pub fn validate_regular(
    r: &RegularMorphism,
    x: &GlobalAction,
    y: &GlobalAction,
) -> Result<Verdict<RegularViolation>, MorphismError> {
    check_map(&r.lambda, x, y)?;
    if r.iota.len() != x.index_count() {
        return Err(MorphismError::BadIndexTable { len: r.iota.len(), expected: x.index_count() });
    }
    if let Some(&value) = r.iota.iter().find(|&&b| b >= y.index_count()) {
        return Err(MorphismError::IndexOutOfRange { value });
    }
    if r.kappa.len() != x.index_count() {
        return Err(MorphismError::BadIndexTable { len: r.kappa.len(), expected: x.index_count() });
    }
    for (a, k) in r.kappa.iter().enumerate() {
        crate::algebra::check_map_shape(x.index(a).group(), y.index(r.iota[a]).group(), k)
            .map_err(|error| MorphismError::GroupData { index: a, error })?;
    }
    Ok(regular_violation(r, x, y).map_or(Verdict::Holds, Verdict::Fails))
}

fn regular_violation(r: &RegularMorphism, x: &GlobalAction, y: &GlobalAction) -> Option<RegularViolation> {
    for &(a, b) in x.relation() {
        if !y.leq(r.iota[a], r.iota[b]) {
            return Some(RegularViolation::RelationNotPreserved(a, b));
        }
    }
    for a in 0..x.index_count() {
        if let Err(violation) = check_homomorphism(x.index(a).group(), y.index(r.iota[a]).group(), &r.kappa[a]) {
            return Some(RegularViolation::NotHomomorphism { index: a, violation });
        }
    }
    for (&(a, b), g_map) in x.homs() {
        let h_map = y.hom(r.iota[a], r.iota[b]).expect("related in target");
        for g in x.index(a).group().elements() {
            if h_map[r.kappa[a][g]] != r.kappa[b][g_map[g]] {
                return Some(RegularViolation::SquareDoesNotCommute { source_index: a, target: b, element: g });
            }
        }
    }
    for a in 0..x.index_count() {
        let target = &y.index(r.iota[a]).action;
        for &p in x.index(a).carrier() {
            if !target.contains(r.lambda[p]) {
                return Some(RegularViolation::LocalSetNotMapped { index: a, point: p });
            }
        }
    }
    for a in 0..x.index_count() {
        let source = &x.index(a).action;
        let target = &y.index(r.iota[a]).action;
        for g in source.group().elements() {
            for &p in source.carrier() {
                let lhs = r.lambda[source.act(g, p).unwrap()];
                if target.act(r.kappa[a][g], r.lambda[p]) != Some(lhs) {
                    return Some(RegularViolation::NotEquivariant { index: a, element: g, point: p });
                }
            }
        }
    }
    None
}

/// The identity regular morphism.
pub fn identity_regular(a: &GlobalAction) -> RegularMorphism {
    RegularMorphism {
        iota: (0..a.index_count()).collect(),
        kappa: a.indices().iter().map(|ix| ix.group().elements().collect()).collect(),
        lambda: (0..a.point_count()).collect(),
    }
}
