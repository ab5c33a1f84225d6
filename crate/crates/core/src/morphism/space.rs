//! Morphism spaces as global actions.
//!
//! The index set of `Mor(X, Y)` is the set of functions `beta` from points
//! of `X` to indices of `Y`; the local set at `beta` holds the morphisms `f`
//! with `f(x)` in `Y_{beta(x)}` for every point and, for each orbit `O` of
//! `X`, some index `b` above every `beta(x)` (`x` in `O`) at which `f(O)` is
//! a frame. The group at `beta` is the product of the groups at `beta(x)`,
//! acting pointwise.
//!
//! Only indices with nonempty local set are materialized.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{check_map, enumerate_morphisms, image, orbit_check, MorphismError};
use crate::action::{GlobalAction, LocalAction};
use crate::algebra::{decode_mixed, encode_mixed, FiniteGroup, GroupAction};
use crate::{BudgetExceeded, Verdict};

/// Largest local group order a materialized space may carry.
pub const MAX_LOCAL_GROUP_ORDER: usize = 1024;

fn check_beta(beta: &[usize], x: &GlobalAction, y: &GlobalAction) -> Result<(), MorphismError> {
    if beta.len() != x.point_count() {
        return Err(MorphismError::BadIndexTable { len: beta.len(), expected: x.point_count() });
    }
    match beta.iter().find(|&&b| b >= y.index_count()) {
        Some(&value) => Err(MorphismError::IndexOutOfRange { value }),
        None => Ok(()),
    }
}

/// Clause (b) for a single orbit.
fn orbit_clause(f: &[usize], beta: &[usize], orbit: &[usize], y: &GlobalAction) -> bool {
    let img = image(f, orbit);
    y.frame_indices_of(&img)
        .into_iter()
        .any(|b| orbit.iter().all(|&p| y.leq(beta[p], b)))
}

pub(crate) fn member_unchecked(f: &[usize], beta: &[usize], x: &GlobalAction, y: &GlobalAction) -> bool {
    (0..f.len()).all(|p| y.index(beta[p]).action.contains(f[p]))
        && x.all_orbits().all(|(_, o)| orbit_clause(f, beta, o, y))
}

/// Whether the morphism `f` lies in the local set at `beta`.
pub fn mor_membership(
    x: &GlobalAction,
    y: &GlobalAction,
    f: &[usize],
    beta: &[usize],
) -> Result<bool, MorphismError> {
    check_map(f, x, y)?;
    check_beta(beta, x, y)?;
    Ok(member_unchecked(f, beta, x, y))
}

/// Applies `sigma` (one group element per point) to `f` in the local set at
/// `beta`.
pub fn mor_act(
    x: &GlobalAction,
    y: &GlobalAction,
    sigma: &[usize],
    f: &[usize],
    beta: &[usize],
) -> Result<Vec<usize>, MorphismError> {
    if !mor_membership(x, y, f, beta)? {
        return Err(MorphismError::NotInLocalSet);
    }
    if sigma.len() != f.len() {
        return Err(MorphismError::BadIndexTable { len: sigma.len(), expected: f.len() });
    }
    (0..f.len())
        .map(|p| {
            let action = &y.index(beta[p]).action;
            if sigma[p] >= action.group().order() {
                return Err(MorphismError::IndexOutOfRange { value: sigma[p] });
            }
            Ok(action.act(sigma[p], f[p]).expect("member of the local set"))
        })
        .collect()
}

/// A common index for a family of morphisms, with group elements carrying
/// the first morphism to each of the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorFrameWitness {
    pub beta: Vec<usize>,
    /// `sigmas[i][x]` moves `f_0(x)` to `f_i(x)`; the identity when possible.
    pub sigmas: Vec<Vec<usize>>,
}

/// Decides whether a nonempty family of morphisms is a frame of
/// `Mor(X, Y)`, returning the lexicographically least index.
pub fn mor_frame(
    x: &GlobalAction,
    y: &GlobalAction,
    fs: &[Vec<usize>],
) -> Result<Option<MorFrameWitness>, MorphismError> {
    let Some(f0) = fs.first() else { return Ok(None) };
    for f in fs {
        check_map(f, x, y)?;
        if let Verdict::Fails(c) = orbit_check(f, x, y) {
            return Err(MorphismError::NotMorphism { index: c.index, orbit: c.orbit, image: c.image });
        }
    }
    let n = x.point_count();
    let mut candidates = Vec::with_capacity(n);
    for p in 0..n {
        let values: BTreeSet<usize> = fs.iter().map(|f| f[p]).collect();
        let values: Vec<usize> = values.into_iter().collect();
        let c = y.frame_indices_of(&values);
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }
    // orbits grouped by their largest point, checked once fully assigned
    let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
    for (_, o) in x.all_orbits() {
        if let Some(&last) = o.last() {
            closing[last].push(o);
        }
    }
    let mut beta = vec![0; n];
    fn go(
        k: usize,
        beta: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        closing: &[Vec<&Vec<usize>>],
        fs: &[Vec<usize>],
        x: &GlobalAction,
        y: &GlobalAction,
    ) -> bool {
        if k == beta.len() {
            return fs.iter().all(|f| member_unchecked(f, beta, x, y));
        }
        for &b in &candidates[k] {
            beta[k] = b;
            if closing[k].iter().all(|o| orbit_clause(&fs[0], beta, o, y))
                && go(k + 1, beta, candidates, closing, fs, x, y)
            {
                return true;
            }
        }
        false
    }
    if !go(0, &mut beta, &candidates, &closing, fs, x, y) {
        return Ok(None);
    }
    let sigmas = fs
        .iter()
        .map(|f| {
            (0..n)
                .map(|p| {
                    let action = &y.index(beta[p]).action;
                    let group = action.group();
                    std::iter::once(group.identity())
                        .chain(group.elements())
                        .find(|&g| action.act(g, f0[p]) == Some(f[p]))
                        .expect("same orbit")
                })
                .collect()
        })
        .collect();
    Ok(Some(MorFrameWitness { beta, sigmas }))
}

/// A materialized morphism space `Mor(X, Y)`.
#[derive(Debug, Clone)]
pub struct MorSpace {
    pub action: GlobalAction,
    /// Morphism tables in lexicographic order; point `i` of `action` is
    /// `morphisms[i]`.
    pub morphisms: Vec<Vec<usize>>,
    /// Realized indices in lexicographic order; index `k` of `action` is
    /// `betas[k]`.
    pub betas: Vec<Vec<usize>>,
    pub lookup: HashMap<Vec<usize>, usize>,
    beta_lookup: HashMap<Vec<usize>, usize>,
}

impl MorSpace {
    pub fn build(x: &GlobalAction, y: &GlobalAction, limit: u64) -> Result<Self, MorphismError> {
        let morphisms = enumerate_morphisms(x, y, limit)?;
        let n = x.point_count();

        let mut members: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut work: u64 = 0;
        for (id, f) in morphisms.iter().enumerate() {
            let choices: Vec<&[usize]> = f.iter().map(|&v| y.containing(v)).collect();
            let count = choices.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
            work = work.saturating_add(count);
            if work > limit {
                return Err(BudgetExceeded { what: "index enumeration", needed: work, limit }.into());
            }
            let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
            for (_, o) in x.all_orbits() {
                closing[*o.last().expect("orbits are nonempty")].push(o);
            }
            let mut beta = vec![0; n];
            collect_betas(0, f, &mut beta, &choices, &closing, y, &mut |b| {
                members.entry(b.to_vec()).or_default().push(id);
            });
        }

        let labels: Vec<String> = morphisms
            .iter()
            .map(|f| format!("[{}]", f.iter().map(|&v| y.label(v)).collect::<Vec<_>>().join(",")))
            .collect();
        let lookup: HashMap<Vec<usize>, usize> =
            morphisms.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let betas: Vec<Vec<usize>> = members.keys().cloned().collect();
        let beta_lookup: HashMap<Vec<usize>, usize> =
            betas.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();

        let mut indices = Vec::with_capacity(betas.len());
        for (beta, carrier) in &members {
            let factors: Vec<&FiniteGroup> = beta.iter().map(|&b| y.index(b).group()).collect();
            let order = factors.iter().fold(1u64, |acc, g| acc.saturating_mul(g.order() as u64));
            if order > MAX_LOCAL_GROUP_ORDER as u64 {
                return Err(BudgetExceeded {
                    what: "local group order",
                    needed: order,
                    limit: MAX_LOCAL_GROUP_ORDER as u64,
                }
                .into());
            }
            let group = FiniteGroup::direct_product(&factors).with_name("J");
            let radices: Vec<usize> = factors.iter().map(|g| g.order()).collect();
            let action = GroupAction::from_fn(group, carrier.clone(), |s, id| {
                let sigma = decode_mixed(s, &radices);
                let moved: Vec<usize> = (0..n)
                    .map(|p| y.index(beta[p]).action.act(sigma[p], morphisms[id][p]).expect("member"))
                    .collect();
                lookup[&moved]
            })
            .expect("closed under the pointwise action");
            let name = format!(
                "<{}>",
                beta.iter().map(|&b| y.index(b).name.as_str()).collect::<Vec<_>>().join(",")
            );
            indices.push(LocalAction::new(name, action));
        }

        let mut relation = BTreeSet::new();
        let mut homs = BTreeMap::new();
        for (i, a) in betas.iter().enumerate() {
            for (j, b) in betas.iter().enumerate() {
                if !(0..n).all(|p| y.leq(a[p], b[p])) {
                    continue;
                }
                let src: Vec<usize> = a.iter().map(|&v| y.index(v).group().order()).collect();
                let dst: Vec<usize> = b.iter().map(|&v| y.index(v).group().order()).collect();
                let order: usize = src.iter().product();
                let map = (0..order)
                    .map(|s| {
                        let sigma = decode_mixed(s, &src);
                        let image: Vec<usize> =
                            (0..n).map(|p| y.hom(a[p], b[p]).expect("related")[sigma[p]]).collect();
                        encode_mixed(&image, &dst)
                    })
                    .collect();
                relation.insert((i, j));
                homs.insert((i, j), map);
            }
        }
        let action = GlobalAction::new(labels, indices, relation, homs)
            .expect("materialized space is well formed");
        Ok(Self { action, morphisms, betas, lookup, beta_lookup })
    }

    pub fn id_of(&self, f: &[usize]) -> Option<usize> {
        self.lookup.get(f).copied()
    }

    pub fn beta_id(&self, beta: &[usize]) -> Option<usize> {
        self.beta_lookup.get(beta).copied()
    }

    /// Radices of the group at index `k`, one per source point.
    pub(crate) fn radices(&self, k: usize, y: &GlobalAction) -> Vec<usize> {
        self.betas[k].iter().map(|&b| y.index(b).group().order()).collect()
    }
}

fn collect_betas(
    k: usize,
    f: &[usize],
    beta: &mut Vec<usize>,
    choices: &[&[usize]],
    closing: &[Vec<&Vec<usize>>],
    y: &GlobalAction,
    emit: &mut dyn FnMut(&[usize]),
) {
    if k == beta.len() {
        emit(beta);
        return;
    }
    for &b in choices[k] {
        beta[k] = b;
        if closing[k].iter().all(|o| orbit_clause(f, beta, o, y)) {
            collect_betas(k + 1, f, beta, choices, closing, y, emit);
        }
    }
}

/// A family of morphisms in one orbit of a local set of `Mor(X, Y)` whose
/// joint image of an orbit of `X` is not a frame at any index above the
/// values of `beta` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointFrameFailure {
    pub beta: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub orbit: Vec<usize>,
}

/// For every index `beta`, every orbit `F` of the group at `beta` and every
/// orbit `O` of `X`, checks that `{f(x) : f in F, x in O}` is a frame at
/// some index above `beta(x)` for all `x` in `O`.
pub fn check_joint_frames(
    space: &MorSpace,
    x: &GlobalAction,
    y: &GlobalAction,
) -> Verdict<JointFrameFailure> {
    for (k, beta) in space.betas.iter().enumerate() {
        for family in space.action.orbits(k) {
            for (_, o) in x.all_orbits() {
                let joint: BTreeSet<usize> =
                    family.iter().flat_map(|&f| o.iter().map(move |&p| space.morphisms[f][p])).collect();
                let joint: Vec<usize> = joint.into_iter().collect();
                let ok = y
                    .frame_indices_of(&joint)
                    .into_iter()
                    .any(|b| o.iter().all(|&p| y.leq(beta[p], b)));
                if !ok {
                    return Verdict::Fails(JointFrameFailure {
                        beta: beta.clone(),
                        morphisms: family.clone(),
                        orbit: o.clone(),
                    });
                }
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn points_of_mor_from_pt() {
        let c3 = cyclic(3);
        let m = MorSpace::build(&pt(), &c3, 1000).unwrap();
        assert_eq!(m.morphisms, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(m.betas, vec![vec![0], vec![1], vec![2]]);
        assert!(m.action.validate().holds());
        // the space from a point is the target again, up to relabeling
        assert_eq!(m.action.frame_graph().edges, c3.frame_graph().edges);
    }

    #[test]
    fn membership_and_action() {
        let c3 = cyclic(3);
        assert!(mor_membership(&c3, &c3, &[0, 0, 0], &[0, 0, 0]).unwrap());
        assert!(!mor_membership(&c3, &c3, &[0, 1, 2], &[0, 0, 0]).unwrap());
        let moved = mor_act(&c3, &c3, &[1, 0, 1], &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(moved, vec![1, 0, 1]);
        assert_eq!(
            mor_act(&c3, &c3, &[0, 0, 0], &[0, 1, 2], &[0, 0, 0]),
            Err(MorphismError::NotInLocalSet)
        );
    }

    #[test]
    fn identity_of_c3_is_isolated() {
        let c3 = cyclic(3);
        let m = MorSpace::build(&c3, &c3, 1000).unwrap();
        let id = m.id_of(&[0, 1, 2]).unwrap();
        assert!(m.action.containing(id).is_empty());
        assert!(m.action.validate().counterexample().is_some());
    }

    #[test]
    fn frame_witness() {
        let t = ft();
        let s = sd2();
        let fs = vec![vec![0, 0], vec![1, 2]];
        let w = mor_frame(&s, &t, &fs).unwrap().unwrap();
        assert_eq!(w.beta, vec![0, 0]);
        assert_eq!(w.sigmas[0], vec![0, 0]);
        assert_eq!(w.sigmas[1], vec![1, 2]);
        let c3 = cyclic(3);
        assert_eq!(mor_frame(&pt(), &c3, &[vec![0], vec![1], vec![2]]).unwrap(), None);
        assert_eq!(mor_frame(&pt(), &c3, &[vec![0], vec![1]]).unwrap().unwrap().beta, vec![0]);
    }

    #[test]
    fn joint_frames_hold_for_small_spaces() {
        for (x, y) in [(sd2(), ft()), (cyclic(3), c3_star()), (pt(), sd2())] {
            let m = MorSpace::build(&x, &y, 100_000).unwrap();
            assert!(check_joint_frames(&m, &x, &y).holds());
        }
    }
}
