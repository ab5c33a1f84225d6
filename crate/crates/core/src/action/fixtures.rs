//! Small named actions used throughout the tests and the CLI examples.

use std::collections::BTreeSet;

use super::{GlobalAction, Side};
use crate::algebra::{FiniteGroup, GroupAction};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// One point, one index, trivial group.
pub fn pt() -> GlobalAction {
    let mut b = GlobalAction::builder(vec!["p".into()]);
    b.index("*", GroupAction::trivial(vec![0]));
    b.build().expect("well formed")
}

/// `Z/2` acting on itself, indexed by its two subgroups.
pub fn sd2() -> GlobalAction {
    let z2 = FiniteGroup::cyclic(2);
    GlobalAction::single_domain(&z2, &z2.all_subgroups(), Side::Left).expect("well formed")
}

fn swap(carrier: Vec<usize>) -> GroupAction {
    GroupAction::new(FiniteGroup::cyclic(2), carrier, vec![vec![0, 1], vec![1, 0]])
        .expect("swap table")
}

/// The cycle on `n` points: index `a{i}` swaps `i` and `i+1 mod n`, and the
/// relation is only reflexive.
pub fn cyclic(n: usize) -> GlobalAction {
    assert!(n >= 3, "a frame cycle needs at least three points");
    let mut b = GlobalAction::builder(labels(n));
    for i in 0..n {
        b.index(format!("a{i}"), swap(vec![i, (i + 1) % n]));
    }
    b.build().expect("well formed")
}

/// [`cyclic`] plus a bottom index `*` with trivial group on all points,
/// below every other index.
pub fn cyclic_with_bottom(n: usize) -> GlobalAction {
    let mut b = GlobalAction::builder(labels(n));
    for i in 0..n {
        b.index(format!("a{i}"), swap(vec![i, (i + 1) % n]));
    }
    let bottom = b.index("*", GroupAction::trivial((0..n).collect()));
    for i in 0..n {
        b.relate(bottom, i, vec![0]);
    }
    b.build().expect("well formed")
}

pub fn c3_star() -> GlobalAction {
    cyclic_with_bottom(3)
}

/// Three points `a, b, c` rotated by `Z/3` at a single index.
pub fn ft() -> GlobalAction {
    let mut b = GlobalAction::builder(vec!["a".into(), "b".into(), "c".into()]);
    let rot = GroupAction::from_fn(FiniteGroup::cyclic(3), vec![0, 1, 2], |g, x| (g + x) % 3)
        .expect("rotation");
    b.index("t", rot);
    b.build().expect("well formed")
}

pub fn s3_all_subgroups() -> GlobalAction {
    let s3 = FiniteGroup::symmetric(3);
    GlobalAction::single_domain(&s3, &s3.all_subgroups(), Side::Left).expect("well formed")
}

pub fn klein_all_subgroups() -> GlobalAction {
    let z2 = FiniteGroup::cyclic(2);
    let k = FiniteGroup::direct_product(&[&z2, &z2]).with_name("V4");
    GlobalAction::single_domain(&k, &k.all_subgroups(), Side::Left).expect("well formed")
}

pub fn single_domain_of(group: &FiniteGroup, subgroups: &[BTreeSet<usize>]) -> GlobalAction {
    GlobalAction::single_domain(group, subgroups, Side::Left).expect("well formed")
}

/// Every named fixture, products included.
pub fn all_fixtures() -> Vec<(&'static str, GlobalAction)> {
    vec![
        ("PT", pt()),
        ("SD2", sd2()),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("C3*", c3_star()),
        ("FT", ft()),
        ("S3", s3_all_subgroups()),
        ("V4", klein_all_subgroups()),
        ("SD2xSD2", sd2().product(&sd2())),
        ("C3xPT", cyclic(3).product(&pt())),
        ("SD2xC3", sd2().product(&cyclic(3))),
        ("FTxSD2", ft().product(&sd2())),
    ]
}

/// Fixture by name, as listed in [`all_fixtures`]; `Cn` works for any `n >= 3`.
pub fn by_name(name: &str) -> Option<GlobalAction> {
    if let Some(n) = name.strip_prefix('C').and_then(|r| r.parse::<usize>().ok()) {
        return (n >= 3).then(|| cyclic(n));
    }
    all_fixtures().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
