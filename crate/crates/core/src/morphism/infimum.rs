//! Infimum conditions: for a frame `U` and a set of indices `delta`, the
//! indices above all of `delta` at which `U` is a frame must be empty or
//! have a least element.

use std::collections::BTreeSet;

use crate::action::GlobalAction;
use crate::{BudgetExceeded, Verdict};

/// Frame enumeration limit used by the infimum checks.
const FRAME_LIMIT: u64 = 1 << 20;
/// Largest index set for which all subsets are tried.
const MAX_STRONG_INDICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfimumCounterexample {
    pub delta: Vec<usize>,
    pub subset: Vec<usize>,
    /// The witness indices, none of which is below all the others.
    pub witnesses: Vec<usize>,
}

fn least(a: &GlobalAction, w: &[usize]) -> bool {
    w.is_empty() || w.iter().any(|&m| w.iter().all(|&o| a.leq(m, o)))
}

fn check_frame(a: &GlobalAction, u: &[usize], delta: &[usize]) -> Option<InfimumCounterexample> {
    if !delta.iter().all(|&d| u.iter().any(|&p| a.index(d).action.contains(p))) {
        return None;
    }
    let w: Vec<usize> = a
        .frame_indices_of(u)
        .into_iter()
        .filter(|&al| delta.iter().all(|&d| a.leq(d, al)))
        .collect();
    (!least(a, &w)).then(|| InfimumCounterexample { delta: delta.to_vec(), subset: u.to_vec(), witnesses: w })
}

/// The infimum condition for one `delta` (empty for the plain condition).
pub fn is_infimum(
    a: &GlobalAction,
    delta: &[usize],
) -> Result<Verdict<InfimumCounterexample>, BudgetExceeded> {
    for u in a.all_frames(FRAME_LIMIT)? {
        if let Some(c) = check_frame(a, &u, delta) {
            return Ok(Verdict::Fails(c));
        }
    }
    Ok(Verdict::Holds)
}

/// The infimum condition for every subset of the index set.
pub fn is_strong_infimum(a: &GlobalAction) -> Result<Verdict<InfimumCounterexample>, BudgetExceeded> {
    let n = a.index_count();
    if n > MAX_STRONG_INDICES {
        return Err(BudgetExceeded {
            what: "index subsets",
            needed: crate::saturating_pow(2, n),
            limit: 1 << MAX_STRONG_INDICES,
        });
    }
    let frames = a.all_frames(FRAME_LIMIT)?;
    for mask in 0u32..(1 << n) {
        let delta: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        for u in &frames {
            if let Some(c) = check_frame(a, u, &delta) {
                return Ok(Verdict::Fails(c));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Two orbits through `point` whose intersection is not an orbit through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionFailure {
    pub point: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub intersection: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficiencyReport {
    /// A pair where relatedness and orbit containment disagree.
    pub order_clause: Verdict<(usize, usize)>,
    pub intersection_clause: Verdict<IntersectionFailure>,
    pub strong: Verdict<InfimumCounterexample>,
    /// False only if both clauses hold and the strong condition fails.
    pub implication_holds: bool,
}

/// Tests the two sufficient conditions for the strong infimum condition
/// and checks the implication against the exhaustive decision.
///
/// The order clause: `a <= b` iff some point of both local sets has its
/// `a`-orbit inside its `b`-orbit. The intersection clause: for each point,
/// the orbits through it are closed under intersection. Intersections over
/// nonempty families only.
pub fn check_infimum_sufficiency(a: &GlobalAction) -> Result<SufficiencyReport, BudgetExceeded> {
    let mut order_clause = Verdict::Holds;
    'outer: for al in 0..a.index_count() {
        for be in 0..a.index_count() {
            let contained = a.index(al).carrier().iter().any(|&x| {
                match (a.orbit_through(al, x), a.orbit_through(be, x)) {
                    (Some(o1), Some(o2)) => o1.iter().all(|p| o2.contains(p)),
                    _ => false,
                }
            });
            if contained != a.leq(al, be) {
                order_clause = Verdict::Fails((al, be));
                break 'outer;
            }
        }
    }

    let mut intersection_clause = Verdict::Holds;
    'points: for x in 0..a.point_count() {
        let family: BTreeSet<Vec<usize>> = a
            .containing(x)
            .iter()
            .map(|&al| a.orbit_through(al, x).expect("x in X_al").to_vec())
            .collect();
        for o1 in &family {
            for o2 in &family {
                let meet: Vec<usize> = o1.iter().copied().filter(|p| o2.contains(p)).collect();
                if !family.contains(&meet) {
                    intersection_clause = Verdict::Fails(IntersectionFailure {
                        point: x,
                        first: o1.clone(),
                        second: o2.clone(),
                        intersection: meet,
                    });
                    break 'points;
                }
            }
        }
    }

    let strong = is_strong_infimum(a)?;
    let implication_holds = !(order_clause.holds() && intersection_clause.holds()) || strong.holds();
    Ok(SufficiencyReport { order_clause, intersection_clause, strong, implication_holds })
}
