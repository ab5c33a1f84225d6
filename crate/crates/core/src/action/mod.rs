//! The global action value, its axioms, frames, stars and products.

pub mod fixtures;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::algebra::{
    check_homomorphism, check_map_shape, decode_mixed, encode_mixed, validate_group, AlgebraError,
    FiniteGroup, GroupAction, GroupActionViolation, GroupViolation, HomomorphismViolation,
};
use crate::{BudgetExceeded, Verdict};

/// One local action `G_a` on `X_a`, with the index name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalAction {
    pub name: String,
    pub action: GroupAction,
}

impl LocalAction {
    pub fn new(name: impl Into<String>, action: GroupAction) -> Self {
        Self { name: name.into(), action }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn carrier(&self) -> &[usize] {
        self.action.carrier()
    }
}

/// Structural problems that prevent a value from being built or queried.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("index `{index}` refers to point {point}, which does not exist")]
    DanglingPoint { index: String, point: usize },
    #[error("relation pair ({source_index}, {target}) refers to a missing index")]
    DanglingRelation { source_index: usize, target: usize },
    #[error("no structure homomorphism for related pair ({source_index}, {target})")]
    MissingHom { source_index: String, target: String },
    #[error("structure homomorphism given for unrelated pair ({source_index}, {target})")]
    UnrelatedHom { source_index: String, target: String },
    #[error("structure homomorphism ({source_index}, {target}): {error}")]
    HomShape { source_index: String, target: String, error: AlgebraError },
    #[error("point label `{0}` occurs twice")]
    DuplicatePoint(String),
    #[error("index name `{0}` occurs twice")]
    DuplicateIndex(String),
    #[error("point {0} does not exist")]
    UnknownPoint(usize),
    #[error("index {0} does not exist")]
    UnknownIndex(usize),
    #[error("the point set must be nonempty")]
    EmptySet,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A violated axiom, named by clause, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionViolation {
    #[error("the index set is empty")]
    EmptyIndexSet,
    #[error("local group at `{index}` is not a group: {violation}")]
    Group { index: String, violation: GroupViolation },
    #[error("local action at `{index}` is not an action: {violation}")]
    LocalAction { index: String, violation: GroupActionViolation },
    #[error("relation is not reflexive at `{index}`")]
    NotReflexive { index: String },
    #[error("structure map `{source_index}` <= `{target}` is not a homomorphism: {violation}")]
    NotHomomorphism { source_index: String, target: String, violation: HomomorphismViolation },
    #[error("self structure map at `{index}` is not the identity map (moves element {element})")]
    SelfHomNotIdentity { index: String, element: usize },
    #[error("for `{source_index}` <= `{target}`, element {element} moves point {point} out of the intersection of local sets")]
    UnstableIntersection { source_index: String, target: String, element: usize, point: usize },
    #[error("for `{source_index}` <= `{target}`, element {element} and point {point} break the morphism of group actions")]
    NotEquivariant { source_index: String, target: String, element: usize, point: usize },
    #[error("point {point} lies in no local set")]
    UncoveredPoint { point: usize },
}

impl ActionViolation {
    /// Short name of the violated clause.
    pub fn clause(&self) -> &'static str {
        match self {
            ActionViolation::EmptyIndexSet => "nonempty index set",
            ActionViolation::Group { .. } => "group axioms",
            ActionViolation::LocalAction { .. } => "group action",
            ActionViolation::NotReflexive { .. } => "reflexive relation",
            ActionViolation::NotHomomorphism { .. } => "structure homomorphism",
            ActionViolation::SelfHomNotIdentity { .. } => "identity map",
            ActionViolation::UnstableIntersection { .. } => "stable under the action",
            ActionViolation::NotEquivariant { .. } => "morphism of group actions",
            ActionViolation::UncoveredPoint { .. } => "union of local sets",
        }
    }
}

/// A finite global action.
///
/// Points and indices are numbered from zero in input order; labels and
/// names are kept for display. The relation is stored as given (it is not
/// closed under transitivity) and every related pair carries a structure
/// map as an element table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalAction {
    points: Vec<String>,
    indices: Vec<LocalAction>,
    relation: BTreeSet<(usize, usize)>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    orbits: Vec<Vec<Vec<usize>>>,
    orbit_ids: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
}

impl GlobalAction {
    pub fn new(
        points: Vec<String>,
        indices: Vec<LocalAction>,
        relation: BTreeSet<(usize, usize)>,
        homs: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self, ActionError> {
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(ActionError::DuplicatePoint(p.clone()));
            }
        }
        let mut seen = HashSet::new();
        for ix in &indices {
            if !seen.insert(ix.name.as_str()) {
                return Err(ActionError::DuplicateIndex(ix.name.clone()));
            }
            if let Some(&point) = ix.carrier().iter().find(|&&x| x >= points.len()) {
                return Err(ActionError::DanglingPoint { index: ix.name.clone(), point });
            }
        }
        let n = indices.len();
        for &(a, b) in &relation {
            if a >= n || b >= n {
                return Err(ActionError::DanglingRelation { source_index: a, target: b });
            }
            let Some(map) = homs.get(&(a, b)) else {
                return Err(ActionError::MissingHom {
                    source_index: indices[a].name.clone(),
                    target: indices[b].name.clone(),
                });
            };
            check_map_shape(indices[a].group(), indices[b].group(), map).map_err(|error| {
                ActionError::HomShape {
                    source_index: indices[a].name.clone(),
                    target: indices[b].name.clone(),
                    error,
                }
            })?;
        }
        if let Some(&(a, b)) = homs.keys().find(|k| !relation.contains(k)) {
            if a >= n || b >= n {
                return Err(ActionError::DanglingRelation { source_index: a, target: b });
            }
            return Err(ActionError::UnrelatedHom {
                source_index: indices[a].name.clone(),
                target: indices[b].name.clone(),
            });
        }

        let mut orbits = Vec::with_capacity(n);
        let mut orbit_ids = Vec::with_capacity(n);
        let mut containing = vec![Vec::new(); points.len()];
        for (alpha, ix) in indices.iter().enumerate() {
            let blocks = ix.action.orbits();
            let mut ids = vec![0; ix.carrier().len()];
            for (k, block) in blocks.iter().enumerate() {
                for &x in block {
                    ids[ix.action.position(x).expect("orbit inside carrier")] = k;
                }
            }
            for &x in ix.carrier() {
                containing[x].push(alpha);
            }
            orbits.push(blocks);
            orbit_ids.push(ids);
        }
        Ok(Self { points, indices, relation, homs, orbits, orbit_ids, containing })
    }

    pub fn builder(points: Vec<String>) -> GlobalActionBuilder {
        GlobalActionBuilder { points, indices: Vec::new(), relation: BTreeMap::new() }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn point_id(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    pub fn indices(&self) -> &[LocalAction] {
        &self.indices
    }

    #[allow(clippy::should_implement_trait)]
    pub fn index(&self, alpha: usize) -> &LocalAction {
        &self.indices[alpha]
    }

    pub fn index_count(&self) -> usize {
        self.indices.len()
    }

    pub fn index_id(&self, name: &str) -> Option<usize> {
        self.indices.iter().position(|ix| ix.name == name)
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    /// `a <= b` in the stored relation.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation.contains(&(a, b))
    }

    pub fn homs(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.homs
    }

    pub fn hom(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.homs.get(&(a, b)).map(Vec::as_slice)
    }

    /// Orbits of the local action at `alpha`, ordered by least point.
    pub fn orbits(&self, alpha: usize) -> &[Vec<usize>] {
        &self.orbits[alpha]
    }

    /// Every orbit of every local action, tagged with its index.
    pub fn all_orbits(&self) -> impl Iterator<Item = (usize, &Vec<usize>)> {
        self.orbits.iter().enumerate().flat_map(|(a, os)| os.iter().map(move |o| (a, o)))
    }

    /// Number of the orbit through `x` at `alpha`, if `x` is in `X_alpha`.
    pub fn orbit_id(&self, alpha: usize, x: usize) -> Option<usize> {
        self.indices[alpha].action.position(x).map(|i| self.orbit_ids[alpha][i])
    }

    /// `G_alpha x`, if `x` is in `X_alpha`.
    pub fn orbit_through(&self, alpha: usize, x: usize) -> Option<&[usize]> {
        self.orbit_id(alpha, x).map(|k| self.orbits[alpha][k].as_slice())
    }

    /// Indices whose local set contains `x`, in index order.
    pub fn containing(&self, x: usize) -> &[usize] {
        &self.containing[x]
    }

    pub fn set_label(&self, s: &[usize]) -> String {
        let parts: Vec<&str> = s.iter().map(|&x| self.label(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn check_points(&self, s: &[usize]) -> Result<(), ActionError> {
        if s.is_empty() {
            return Err(ActionError::EmptySet);
        }
        match s.iter().find(|&&x| x >= self.points.len()) {
            Some(&x) => Err(ActionError::UnknownPoint(x)),
            None => Ok(()),
        }
    }

    /// True iff `s` lies in a single orbit at `alpha`. Points must exist and
    /// `s` must be nonempty.
    pub fn is_frame_at(&self, alpha: usize, s: &[usize]) -> bool {
        let mut ids = s.iter().map(|&x| self.orbit_id(alpha, x));
        match ids.next() {
            Some(Some(first)) => ids.all(|id| id == Some(first)),
            _ => false,
        }
    }

    /// Indices at which `s` is a frame, in index order. Unchecked variant
    /// for hot loops.
    pub fn frame_indices_of(&self, s: &[usize]) -> Vec<usize> {
        match s.first() {
            None => Vec::new(),
            Some(&x) => {
                self.containing[x].iter().copied().filter(|&a| self.is_frame_at(a, s)).collect()
            }
        }
    }

    /// True iff `s` is a frame somewhere. Unchecked variant for hot loops.
    pub fn is_frame_set(&self, s: &[usize]) -> bool {
        match s.first() {
            None => false,
            Some(&x) => self.containing[x].iter().any(|&a| self.is_frame_at(a, s)),
        }
    }

    /// Exactly the indices `alpha` such that `s` is contained in one orbit
    /// of `G_alpha`.
    pub fn frame_indices(&self, s: &[usize]) -> Result<Vec<usize>, ActionError> {
        self.check_points(s)?;
        Ok(self.frame_indices_of(s))
    }

    /// The smallest witness index if `s` is a frame.
    pub fn is_frame(&self, s: &[usize]) -> Result<Option<usize>, ActionError> {
        Ok(self.frame_indices(s)?.first().copied())
    }

    /// Edges are the 2-element frames, triangles the 3-element frames.
    pub fn frame_graph(&self) -> FrameGraph {
        let mut edges = BTreeSet::new();
        let mut triangles = BTreeSet::new();
        let mut seen_orbits: HashSet<&[usize]> = HashSet::new();
        for (_, orbit) in self.all_orbits() {
            if !seen_orbits.insert(orbit.as_slice()) {
                continue;
            }
            for (i, &a) in orbit.iter().enumerate() {
                for (j, &b) in orbit.iter().enumerate().skip(i + 1) {
                    edges.insert((a, b));
                    for &c in &orbit[j + 1..] {
                        triangles.insert([a, b, c]);
                    }
                }
            }
        }
        FrameGraph { vertices: self.points.len(), edges, triangles }
    }

    /// Every frame, as a sorted point list, each listed once. Frames are
    /// the nonempty subsets of orbits.
    pub fn all_frames(&self, limit: u64) -> Result<Vec<Vec<usize>>, BudgetExceeded> {
        let mut seen_orbits: BTreeSet<&[usize]> = BTreeSet::new();
        let mut total: u64 = 0;
        for (_, orbit) in self.all_orbits() {
            if seen_orbits.insert(orbit.as_slice()) {
                let count = if orbit.len() >= 63 { u64::MAX } else { (1u64 << orbit.len()) - 1 };
                total = total.saturating_add(count);
            }
        }
        if total > limit {
            return Err(BudgetExceeded { what: "frame enumeration", needed: total, limit });
        }
        let mut frames: BTreeSet<Vec<usize>> = BTreeSet::new();
        for orbit in seen_orbits {
            for mask in 1u64..(1u64 << orbit.len()) {
                let subset: Vec<usize> = orbit
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                frames.insert(subset);
            }
        }
        let mut frames: Vec<Vec<usize>> = frames.into_iter().collect();
        frames.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(frames)
    }

    /// Checks every axiom and reports the first violated clause.
    pub fn validate(&self) -> Verdict<ActionViolation> {
        match self.first_violation() {
            None => Verdict::Holds,
            Some(v) => Verdict::Fails(v),
        }
    }

    fn first_violation(&self) -> Option<ActionViolation> {
        if self.indices.is_empty() {
            return Some(ActionViolation::EmptyIndexSet);
        }
        let name = |a: usize| self.indices[a].name.clone();
        for (a, ix) in self.indices.iter().enumerate() {
            if let Err(violation) = validate_group(ix.group()) {
                return Some(ActionViolation::Group { index: name(a), violation });
            }
            if let Err(violation) = ix.action.validate() {
                return Some(ActionViolation::LocalAction { index: name(a), violation });
            }
        }
        for a in 0..self.indices.len() {
            if !self.leq(a, a) {
                return Some(ActionViolation::NotReflexive { index: name(a) });
            }
        }
        for a in 0..self.indices.len() {
            let map = &self.homs[&(a, a)];
            if let Some((element, _)) = map.iter().enumerate().find(|(g, &h)| *g != h) {
                return Some(ActionViolation::SelfHomNotIdentity { index: name(a), element });
            }
        }
        for (&(a, b), map) in &self.homs {
            if let Err(violation) =
                check_homomorphism(self.indices[a].group(), self.indices[b].group(), map)
            {
                return Some(ActionViolation::NotHomomorphism {
                    source_index: name(a),
                    target: name(b),
                    violation,
                });
            }
        }
        for &(a, b) in &self.relation {
            let (xa, xb) = (&self.indices[a].action, &self.indices[b].action);
            for &x in xa.carrier().iter().filter(|&&x| xb.contains(x)) {
                for g in xa.group().elements() {
                    let gx = xa.act(g, x).expect("x in carrier");
                    if !xb.contains(gx) {
                        return Some(ActionViolation::UnstableIntersection {
                            source_index: name(a),
                            target: name(b),
                            element: g,
                            point: x,
                        });
                    }
                }
            }
        }
        for (&(a, b), map) in &self.homs {
            let (xa, xb) = (&self.indices[a].action, &self.indices[b].action);
            for &x in xa.carrier().iter().filter(|&&x| xb.contains(x)) {
                for g in xa.group().elements() {
                    if xb.act(map[g], x) != xa.act(g, x) {
                        return Some(ActionViolation::NotEquivariant {
                            source_index: name(a),
                            target: name(b),
                            element: g,
                            point: x,
                        });
                    }
                }
            }
        }
        if let Some(point) = (0..self.points.len()).find(|&x| self.containing[x].is_empty()) {
            return Some(ActionViolation::UncoveredPoint { point });
        }
        None
    }

    /// A copy with one structure map replaced.
    pub fn with_hom(&self, a: usize, b: usize, map: Vec<usize>) -> Result<Self, ActionError> {
        let mut homs = self.homs.clone();
        let mut relation = self.relation.clone();
        relation.insert((a, b));
        homs.insert((a, b), map);
        Self::new(self.points.clone(), self.indices.clone(), relation, homs)
    }

    /// A copy with one local action replaced.
    pub fn with_local_action(&self, alpha: usize, action: GroupAction) -> Result<Self, ActionError> {
        if alpha >= self.indices.len() {
            return Err(ActionError::UnknownIndex(alpha));
        }
        let mut indices = self.indices.clone();
        indices[alpha].action = action;
        Self::new(self.points.clone(), indices, self.relation.clone(), self.homs.clone())
    }

    /// A copy with new point labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, ActionError> {
        assert_eq!(labels.len(), self.points.len(), "one label per point");
        Self::new(labels, self.indices.clone(), self.relation.clone(), self.homs.clone())
    }

    /// The sub-action of orbits through `x`.
    pub fn star(&self, x: usize) -> Result<Star, ActionError> {
        if x >= self.points.len() {
            return Err(ActionError::UnknownPoint(x));
        }
        let kept: Vec<usize> = self.containing[x].clone();
        let members: BTreeSet<usize> =
            kept.iter().flat_map(|&a| self.orbit_through(a, x).unwrap().iter().copied()).collect();
        let embedding: Vec<usize> = members.into_iter().collect();
        let local = |y: usize| embedding.binary_search(&y).expect("member of star");
        let mut indices = Vec::with_capacity(kept.len());
        for &a in &kept {
            let action = &self.indices[a].action;
            let orbit = self.orbit_through(a, x).unwrap();
            let restricted = GroupAction::from_fn(
                action.group().clone(),
                orbit.iter().map(|&y| local(y)).collect(),
                |g, y| local(action.act(g, embedding[y]).expect("orbit is stable")),
            )
            .expect("orbit is stable");
            indices.push(LocalAction::new(self.indices[a].name.clone(), restricted));
        }
        let new_id = |a: usize| kept.binary_search(&a).ok();
        let mut relation = BTreeSet::new();
        let mut homs = BTreeMap::new();
        for (&(a, b), map) in &self.homs {
            if let (Some(na), Some(nb)) = (new_id(a), new_id(b)) {
                relation.insert((na, nb));
                homs.insert((na, nb), map.clone());
            }
        }
        let points = embedding.iter().map(|&y| self.points[y].clone()).collect();
        let centre = local(x);
        let action = GlobalAction::new(points, indices, relation, homs)?;
        Ok(Star { action, embedding, centre, kept_indices: kept })
    }

    /// Componentwise product. The point `(x, y)` gets id `x * |Y| + y`
    /// and the index `(a, b)` gets id `a * |Psi| + b`.
    pub fn product(&self, other: &GlobalAction) -> GlobalAction {
        let ny = other.point_count();
        let nb = other.index_count();
        let points = self
            .points
            .iter()
            .flat_map(|x| other.points.iter().map(move |y| format!("({x},{y})")))
            .collect();
        let mut indices = Vec::with_capacity(self.index_count() * nb);
        for ia in &self.indices {
            for ib in &other.indices {
                let (ga, gb) = (ia.group(), ib.group());
                let group = FiniteGroup::direct_product(&[ga, gb]);
                let carrier: Vec<usize> = ia
                    .carrier()
                    .iter()
                    .flat_map(|&x| ib.carrier().iter().map(move |&y| x * ny + y))
                    .collect();
                let radices = [ga.order(), gb.order()];
                let action = GroupAction::from_fn(group, carrier, |g, p| {
                    let d = decode_mixed(g, &radices);
                    let (x, y) = (p / ny, p % ny);
                    ia.action.act(d[0], x).unwrap() * ny + ib.action.act(d[1], y).unwrap()
                })
                .expect("product action is closed");
                indices.push(LocalAction::new(format!("({},{})", ia.name, ib.name), action));
            }
        }
        let mut relation = BTreeSet::new();
        let mut homs = BTreeMap::new();
        for (&(a, a2), ma) in &self.homs {
            for (&(b, b2), mb) in &other.homs {
                let src = [self.indices[a].group().order(), other.indices[b].group().order()];
                let dst = [self.indices[a2].group().order(), other.indices[b2].group().order()];
                let order = src[0] * src[1];
                let map = (0..order)
                    .map(|g| {
                        let d = decode_mixed(g, &src);
                        encode_mixed(&[ma[d[0]], mb[d[1]]], &dst)
                    })
                    .collect();
                relation.insert((a * nb + b, a2 * nb + b2));
                homs.insert((a * nb + b, a2 * nb + b2), map);
            }
        }
        GlobalAction::new(points, indices, relation, homs).expect("product is well formed")
    }

    /// Both actions side by side; points and indices of `other` come after
    /// those of `self` and get a `'` suffix when labels clash.
    pub fn disjoint_union(&self, other: &GlobalAction) -> GlobalAction {
        let shift = self.point_count();
        let ishift = self.index_count();
        let taken: HashSet<&str> = self.points.iter().map(String::as_str).collect();
        let mut points = self.points.clone();
        for p in &other.points {
            let mut label = p.clone();
            while taken.contains(label.as_str()) || points.contains(&label) {
                label.push('\'');
            }
            points.push(label);
        }
        let names: HashSet<&str> = self.indices.iter().map(|ix| ix.name.as_str()).collect();
        let mut indices = self.indices.clone();
        for ix in &other.indices {
            let mut name = ix.name.clone();
            while names.contains(name.as_str()) || indices.iter().any(|i| i.name == name) {
                name.push('\'');
            }
            let action = GroupAction::new(
                ix.group().clone(),
                ix.carrier().iter().map(|&x| x + shift).collect(),
                ix.action.table().to_vec(),
            )
            .expect("shifted carrier");
            indices.push(LocalAction::new(name, action));
        }
        let mut relation = self.relation.clone();
        let mut homs = self.homs.clone();
        for (&(a, b), map) in &other.homs {
            relation.insert((a + ishift, b + ishift));
            homs.insert((a + ishift, b + ishift), map.clone());
        }
        GlobalAction::new(points, indices, relation, homs).expect("disjoint union is well formed")
    }

    /// The standard single domain action of `group` on itself, one index per
    /// listed subgroup, related by inclusion.
    pub fn single_domain(
        group: &FiniteGroup,
        subgroups: &[BTreeSet<usize>],
        side: Side,
    ) -> Result<GlobalAction, SingleDomainError> {
        for (i, h) in subgroups.iter().enumerate() {
            if !group.is_subgroup(h) {
                return Err(SingleDomainError::NotSubgroup(i));
            }
            if let Some(j) = subgroups[..i].iter().position(|k| k == h) {
                return Err(SingleDomainError::Duplicate(j, i));
            }
        }
        for (i, a) in subgroups.iter().enumerate() {
            for (j, b) in subgroups.iter().enumerate().skip(i + 1) {
                let meet: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !subgroups.contains(&meet) {
                    return Err(SingleDomainError::NotIntersectionClosed(i, j));
                }
            }
        }
        let points: Vec<String> = group.labels().to_vec();
        let all: Vec<usize> = group.elements().collect();
        let mut indices = Vec::new();
        let mut inclusions = Vec::new();
        for h in subgroups {
            let labels: Vec<&str> = h.iter().map(|&e| group.label(e)).collect();
            let name = format!("{{{}}}", labels.join(","));
            let (sub, inclusion) = group.subgroup(name.clone(), h).expect("checked subgroup");
            let action = GroupAction::from_fn(sub, all.clone(), |s, x| match side {
                Side::Left => group.mul(inclusion[s], x),
                Side::Right => group.mul(x, group.inverse(inclusion[s]).expect("group element")),
            })
            .expect("multiplication is closed");
            indices.push(LocalAction::new(name, action));
            inclusions.push(inclusion);
        }
        let mut relation = BTreeSet::new();
        let mut homs = BTreeMap::new();
        for (i, a) in subgroups.iter().enumerate() {
            for (j, b) in subgroups.iter().enumerate() {
                if a.is_subset(b) {
                    relation.insert((i, j));
                    let map = inclusions[i]
                        .iter()
                        .map(|e| inclusions[j].binary_search(e).expect("subset"))
                        .collect();
                    homs.insert((i, j), map);
                }
            }
        }
        Ok(GlobalAction::new(points, indices, relation, homs).expect("well formed"))
    }
}

/// Shorthand for [`GlobalAction::validate`].
pub fn validate_action(a: &GlobalAction) -> Verdict<ActionViolation> {
    a.validate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingleDomainError {
    #[error("listed subset {0} is not a subgroup")]
    NotSubgroup(usize),
    #[error("listed subgroups {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("the intersection of listed subgroups {0} and {1} is not listed")]
    NotIntersectionClosed(usize, usize),
}

/// `star(x)` together with its inclusion into the ambient action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub action: GlobalAction,
    /// Ambient id of each star point.
    pub embedding: Vec<usize>,
    /// Star id of the centre.
    pub centre: usize,
    /// Ambient id of each star index.
    pub kept_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub triangles: BTreeSet<[usize; 3]>,
}

impl FrameGraph {
    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Incremental construction; reflexive pairs get identity structure maps
/// unless given explicitly.
#[derive(Debug, Clone)]
pub struct GlobalActionBuilder {
    points: Vec<String>,
    indices: Vec<LocalAction>,
    relation: BTreeMap<(usize, usize), Vec<usize>>,
}

impl GlobalActionBuilder {
    pub fn index(&mut self, name: impl Into<String>, action: GroupAction) -> usize {
        self.indices.push(LocalAction::new(name, action));
        self.indices.len() - 1
    }

    pub fn relate(&mut self, a: usize, b: usize, map: Vec<usize>) -> &mut Self {
        self.relation.insert((a, b), map);
        self
    }

    pub fn build(mut self) -> Result<GlobalAction, ActionError> {
        for (a, ix) in self.indices.iter().enumerate() {
            self.relation.entry((a, a)).or_insert_with(|| ix.group().elements().collect());
        }
        let relation = self.relation.keys().copied().collect();
        GlobalAction::new(self.points, self.indices, relation, self.relation)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fixtures_validate() {
        for (name, a) in all_fixtures() {
            assert_eq!(a.validate(), Verdict::Holds, "{name}");
        }
    }

    #[test]
    fn non_identity_self_hom_is_rejected() {
        let c4 = cyclic(4);
        let bad = c4.with_hom(0, 0, vec![1, 0]).unwrap();
        let v = bad.validate();
        assert_eq!(v.counterexample().map(|v| v.clause()), Some("identity map"));
    }

    #[test]
    fn empty_index_set_is_rejected() {
        let a = GlobalAction::new(vec![], vec![], BTreeSet::new(), BTreeMap::new()).unwrap();
        assert_eq!(a.validate(), Verdict::Fails(ActionViolation::EmptyIndexSet));
    }

    #[test]
    fn frame_indices_on_c4() {
        let c4 = cyclic(4);
        assert_eq!(c4.frame_indices(&[0, 1]).unwrap(), vec![0]);
        assert_eq!(c4.frame_indices(&[0, 2]).unwrap(), Vec::<usize>::new());
        assert_eq!(c4.frame_indices(&[0]).unwrap(), vec![0, 3]);
        assert_eq!(c4.is_frame(&[0, 1]).unwrap(), Some(0));
        assert_eq!(c4.is_frame(&[0, 2]).unwrap(), None);
        assert_eq!(c4.frame_indices(&[]), Err(ActionError::EmptySet));
    }

    #[test]
    fn frame_graphs() {
        let g = cyclic(4).frame_graph();
        assert_eq!(g.edges, BTreeSet::from([(0, 1), (1, 2), (2, 3), (0, 3)]));
        assert!(g.triangles.is_empty());
        let g = ft().frame_graph();
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.triangles.len(), 1);
        let g = sd2().frame_graph();
        assert_eq!(g.edges, BTreeSet::from([(0, 1)]));
        assert!(g.triangles.is_empty());
    }

    #[test]
    fn stars() {
        let c4 = cyclic(4);
        let s = c4.star(0).unwrap();
        assert_eq!(s.embedding, vec![0, 1, 3]);
        let locals: Vec<Vec<usize>> = s
            .action
            .indices()
            .iter()
            .map(|ix| ix.carrier().iter().map(|&y| s.embedding[y]).collect())
            .collect();
        assert_eq!(locals, vec![vec![0, 1], vec![0, 3]]);
        assert!(s.action.validate().holds());

        let t = ft();
        assert_eq!(t.star(0).unwrap().action, t);
        let p = pt();
        assert_eq!(p.star(0).unwrap().action, p);
    }

    #[test]
    fn products() {
        let s = sd2().product(&sd2());
        assert_eq!(s.index_count(), 4);
        assert_eq!(s.point_count(), 4);
        assert!(s.validate().holds());

        let c = cyclic(4).product(&cyclic(4));
        // (0,0) and (1,1)
        assert_eq!(c.is_frame(&[0, 5]).unwrap(), Some(0));

        let a = cyclic(4);
        let b = a.product(&pt());
        assert_eq!(b.point_count(), 4);
        assert_eq!(a.frame_graph(), b.frame_graph());
    }

    #[test]
    fn single_domain_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let a = GlobalAction::single_domain(&z2, &[BTreeSet::from([0]), BTreeSet::from([0, 1])], Side::Left)
            .unwrap();
        assert!(a.validate().holds());
        assert_eq!(a, sd2());

        let s3 = s3_all_subgroups();
        assert_eq!(s3.index_count(), 6);
        assert!(s3.validate().holds());

        let z4 = FiniteGroup::cyclic(4);
        let a = GlobalAction::single_domain(&z4, &[BTreeSet::from([0]), BTreeSet::from([0, 2])], Side::Left)
            .unwrap();
        assert!(a.validate().holds());

        let right = GlobalAction::single_domain(
            &FiniteGroup::symmetric(3),
            &FiniteGroup::symmetric(3).all_subgroups(),
            Side::Right,
        )
        .unwrap();
        assert!(right.validate().holds());

        assert_eq!(
            GlobalAction::single_domain(&z4, &[BTreeSet::from([0, 1])], Side::Left),
            Err(SingleDomainError::NotSubgroup(0))
        );
    }

    #[test]
    fn all_frames_are_orbit_subsets() {
        let frames = cyclic(4).all_frames(1000).unwrap();
        // 4 singletons and 4 edges
        assert_eq!(frames.len(), 8);
        assert!(ft().all_frames(1000).unwrap().len() == 7);
    }
}
