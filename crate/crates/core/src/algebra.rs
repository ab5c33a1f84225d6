//! Explicit finite groups, homomorphisms between them, and finite group
//! actions.
//!
//! Groups are stored as full Cayley tables over element indices `0..order`.
//! Labels are opaque and only used for display and serialization.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("group `{group}`: multiplication table has {rows} rows for {order} elements")]
    TableRows { group: String, rows: usize, order: usize },
    #[error("group `{group}`: row {row} has {len} entries for {order} elements")]
    TableRow { group: String, row: usize, len: usize, order: usize },
    #[error("group `{group}`: entry {value} at ({row}, {col}) is not an element")]
    TableEntry { group: String, row: usize, col: usize, value: usize },
    #[error("group `{group}`: identity {identity} is not an element")]
    IdentityOutOfRange { group: String, identity: usize },
    #[error("group `{group}` has no elements")]
    EmptyGroup { group: String },
    #[error("homomorphism table has {len} entries for a source of order {order}")]
    PartialMap { len: usize, order: usize },
    #[error("homomorphism maps {element} to {value}, which is not a target element")]
    MapOutOfRange { element: usize, value: usize },
    #[error("action table has {rows} rows for a group of order {order}")]
    ActionRows { rows: usize, order: usize },
    #[error("action row {row} has {len} entries for a carrier of size {size}")]
    ActionRow { row: usize, len: usize, size: usize },
    #[error("action entry {value} at ({row}, {col}) is outside the carrier")]
    ActionEntry { row: usize, col: usize, value: usize },
    #[error("carrier contains point {point} twice")]
    DuplicateCarrierPoint { point: usize },
    #[error("point {point} is not in the carrier")]
    NotInCarrier { point: usize },
    #[error("subset {subset:?} is not a subgroup of `{group}`")]
    NotSubgroup { group: String, subset: Vec<usize> },
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Builds a group from a table where `table[a][b]` is the product `ab`.
    ///
    /// Only the shape is checked here; the group axioms are checked by
    /// [`validate_group`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        let order = labels.len();
        if order == 0 {
            return Err(AlgebraError::EmptyGroup { group: name });
        }
        if table.len() != order {
            return Err(AlgebraError::TableRows { group: name, rows: table.len(), order });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(AlgebraError::TableRow { group: name, row, len: entries.len(), order });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(AlgebraError::TableEntry { group: name, row, col, value });
            }
        }
        if identity >= order {
            return Err(AlgebraError::IdentityOutOfRange { group: name, identity });
        }
        Ok(Self { name, labels, table, identity })
    }

    /// The cyclic group `Z/n` with elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let labels = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { name: format!("Z{n}"), labels, table, identity: 0 }
    }

    pub fn trivial() -> Self {
        Self { name: "1".into(), labels: vec!["e".into()], table: vec![vec![0]], identity: 0 }
    }

    /// The symmetric group on `n` letters, elements in lexicographic order of
    /// their one-line notation (so the identity is element 0).
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        permutations(&mut current, 0, &mut perms);
        perms.sort();
        let index_of = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (ab)(i) = a(b(i))
                        let ab: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index_of(&ab)
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self { name: format!("S{n}"), labels, table, identity: 0 }
    }

    /// Direct product of a list of groups. Elements are encoded in mixed
    /// radix with the first factor most significant.
    pub fn direct_product(factors: &[&FiniteGroup]) -> Self {
        if factors.is_empty() {
            return Self::trivial();
        }
        let order: usize = factors.iter().map(|g| g.order()).product();
        let radices: Vec<usize> = factors.iter().map(|g| g.order()).collect();
        let digits: Vec<Vec<usize>> = (0..order).map(|e| decode_mixed(e, &radices)).collect();
        let table = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let prod: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, g)| g.mul(digits[a][i], digits[b][i]))
                            .collect();
                        encode_mixed(&prod, &radices)
                    })
                    .collect()
            })
            .collect();
        let labels = digits
            .iter()
            .map(|ds| {
                let parts: Vec<&str> =
                    ds.iter().zip(factors).map(|(&d, g)| g.label(d)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let identity = encode_mixed(&factors.iter().map(|g| g.identity).collect::<Vec<_>>(), &radices);
        let name = factors.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join("x");
        Self { name, labels, table, identity }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Two-sided inverse, if one exists.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// True iff `subset` is closed under products and inverses and holds the
    /// identity.
    pub fn is_subgroup(&self, subset: &BTreeSet<usize>) -> bool {
        subset.contains(&self.identity)
            && subset.iter().all(|&a| a < self.order())
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| subset.contains(&self.mul(a, b))))
            && subset.iter().all(|&a| self.inverse(a).is_some_and(|i| subset.contains(&i)))
    }

    /// The subgroup on `subset`, relabelled `0..k` in increasing order of
    /// the original element index, together with the inclusion table.
    pub fn subgroup(
        &self,
        name: impl Into<String>,
        subset: &BTreeSet<usize>,
    ) -> Result<(FiniteGroup, Vec<usize>), AlgebraError> {
        if !self.is_subgroup(subset) {
            return Err(AlgebraError::NotSubgroup {
                group: self.name.clone(),
                subset: subset.iter().copied().collect(),
            });
        }
        let inclusion: Vec<usize> = subset.iter().copied().collect();
        let local = |a: usize| inclusion.binary_search(&a).expect("closed");
        let table = inclusion
            .iter()
            .map(|&a| inclusion.iter().map(|&b| local(self.mul(a, b))).collect())
            .collect();
        let labels = inclusion.iter().map(|&a| self.labels[a].clone()).collect();
        let group = FiniteGroup { name: name.into(), labels, table, identity: local(self.identity) };
        Ok((group, inclusion))
    }

    /// All subgroups, each as a sorted element set, sorted by (size, elements).
    pub fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        // Every subgroup of a finite group is generated by at most log2(n)
        // elements; closing every subset of generators of size <= 2 is enough
        // for the small groups handled here, and the result is re-checked.
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = vec![self.closure(&[])];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        while let Some(h) = frontier.pop() {
            let key: Vec<usize> = h.iter().copied().collect();
            if !seen.insert(key.clone()) {
                continue;
            }
            found.insert(key);
            for a in 0..n {
                if !h.contains(&a) {
                    let mut gens: Vec<usize> = h.iter().copied().collect();
                    gens.push(a);
                    frontier.push(self.closure(&gens));
                }
            }
        }
        let mut subgroups: Vec<BTreeSet<usize>> =
            found.into_iter().map(|v| v.into_iter().collect()).collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subgroups
    }

    /// Subgroup generated by `generators`.
    pub fn closure(&self, generators: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut queue: Vec<usize> = vec![self.identity];
        while let Some(a) = queue.pop() {
            for &g in generators {
                let b = self.mul(a, g);
                if set.insert(b) {
                    queue.push(b);
                }
            }
        }
        set
    }
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

pub(crate) fn encode_mixed(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

pub(crate) fn decode_mixed(mut value: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        *slot = value % r;
        value /= r;
    }
    digits
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// First violated group axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("not associative: ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("identity fails for element {element}")]
    Identity { element: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
}

/// Checks associativity (all triples), the two-sided identity and inverses.
pub fn validate_group(g: &FiniteGroup) -> Result<(), GroupViolation> {
    let e = g.identity();
    for a in g.elements() {
        if g.mul(e, a) != a || g.mul(a, e) != a {
            return Err(GroupViolation::Identity { element: a });
        }
    }
    for a in g.elements() {
        if g.inverse(a).is_none() {
            return Err(GroupViolation::NoInverse { element: a });
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            for c in g.elements() {
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                    return Err(GroupViolation::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// A map between finite groups given by a table on element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism<'a> {
    pub source: &'a FiniteGroup,
    pub target: &'a FiniteGroup,
    pub map: &'a [usize],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomomorphismViolation {
    #[error("not multiplicative at ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("identity is not sent to the identity")]
    NotUnital,
}

pub fn validate_homomorphism(h: &GroupHomomorphism<'_>) -> Result<Result<(), HomomorphismViolation>, AlgebraError> {
    check_map_shape(h.source, h.target, h.map)?;
    Ok(check_homomorphism(h.source, h.target, h.map))
}

pub(crate) fn check_map_shape(
    source: &FiniteGroup,
    target: &FiniteGroup,
    map: &[usize],
) -> Result<(), AlgebraError> {
    if map.len() != source.order() {
        return Err(AlgebraError::PartialMap { len: map.len(), order: source.order() });
    }
    if let Some((element, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
        return Err(AlgebraError::MapOutOfRange { element, value });
    }
    Ok(())
}

pub(crate) fn check_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    map: &[usize],
) -> Result<(), HomomorphismViolation> {
    if map[source.identity()] != target.identity() {
        return Err(HomomorphismViolation::NotUnital);
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(HomomorphismViolation::NotMultiplicative { a, b });
            }
        }
    }
    Ok(())
}

/// A finite group acting on a finite set of points.
///
/// The carrier is a sorted list of point ids (global ids when the action is
/// a local action of a global action) and `table[g][i]` is the carrier
/// position of `g` applied to the point at carrier position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    carrier: Vec<usize>,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupActionViolation {
    #[error("identity moves point {point}")]
    Identity { point: usize },
    #[error("g{g}(g{h} x) != (g{g} g{h}) x for x = {point}")]
    Compatibility { g: usize, h: usize, point: usize },
}

impl GroupAction {
    /// Builds an action from a table on carrier positions. The carrier is
    /// sorted here and the table is re-indexed to match.
    pub fn new(
        group: FiniteGroup,
        carrier: Vec<usize>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let size = carrier.len();
        if table.len() != group.order() {
            return Err(AlgebraError::ActionRows { rows: table.len(), order: group.order() });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(AlgebraError::ActionRow { row, len: entries.len(), size });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(AlgebraError::ActionEntry { row, col, value });
            }
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&i| carrier[i]);
        for w in order.windows(2) {
            if carrier[w[0]] == carrier[w[1]] {
                return Err(AlgebraError::DuplicateCarrierPoint { point: carrier[w[0]] });
            }
        }
        // position in the new (sorted) carrier of old position i
        let mut new_pos = vec![0; size];
        for (new, &old) in order.iter().enumerate() {
            new_pos[old] = new;
        }
        let sorted: Vec<usize> = order.iter().map(|&i| carrier[i]).collect();
        let table = table
            .iter()
            .map(|row| order.iter().map(|&old| new_pos[row[old]]).collect())
            .collect();
        Ok(Self { group, carrier: sorted, table })
    }

    /// Builds an action from a function on point ids.
    pub fn from_fn(
        group: FiniteGroup,
        carrier: Vec<usize>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        let mut table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut row = Vec::with_capacity(carrier.len());
            for &x in &carrier {
                let y = act(g, x);
                let pos = carrier
                    .iter()
                    .position(|&c| c == y)
                    .ok_or(AlgebraError::NotInCarrier { point: y })?;
                row.push(pos);
            }
            table.push(row);
        }
        Self::new(group, carrier, table)
    }

    /// The trivial action of the trivial group.
    pub fn trivial(carrier: Vec<usize>) -> Self {
        let n = carrier.len();
        Self::new(FiniteGroup::trivial(), carrier, vec![(0..n).collect()]).expect("well formed")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position(x).is_some()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.carrier.binary_search(&x).ok()
    }

    /// `g x`, or `None` when `x` is not in the carrier.
    pub fn act(&self, g: usize, x: usize) -> Option<usize> {
        self.position(x).map(|i| self.carrier[self.table[g][i]])
    }

    /// `{g x : g in G}`, sorted.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, AlgebraError> {
        let i = self.position(x).ok_or(AlgebraError::NotInCarrier { point: x })?;
        let set: BTreeSet<usize> =
            self.group.elements().map(|g| self.carrier[self.table[g][i]]).collect();
        Ok(set.into_iter().collect())
    }

    /// The orbit partition of the carrier, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.carrier.len()];
        let mut out = Vec::new();
        for i in 0..self.carrier.len() {
            if assigned[i] {
                continue;
            }
            // closure under all group elements, so the result is a partition
            // even for tables that violate the action axioms
            let mut block = BTreeSet::from([i]);
            let mut stack = vec![i];
            assigned[i] = true;
            while let Some(j) = stack.pop() {
                for g in self.group.elements() {
                    let k = self.table[g][j];
                    if !assigned[k] {
                        assigned[k] = true;
                        block.insert(k);
                        stack.push(k);
                    }
                }
            }
            out.push(block.into_iter().map(|j| self.carrier[j]).collect());
        }
        out
    }

    pub fn validate(&self) -> Result<(), GroupActionViolation> {
        let e = self.group.identity();
        for (i, &x) in self.carrier.iter().enumerate() {
            if self.table[e][i] != i {
                return Err(GroupActionViolation::Identity { point: x });
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                for (i, &x) in self.carrier.iter().enumerate() {
                    if self.table[g][self.table[h][i]] != self.table[gh][i] {
                        return Err(GroupActionViolation::Compatibility { g, h, point: x });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&[&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)])
    }

    #[test]
    fn cyclic_three_is_a_group() {
        assert_eq!(validate_group(&FiniteGroup::cyclic(3)), Ok(()));
    }

    #[test]
    fn non_associative_table_names_triple() {
        // a loop of order 5 that is not a group (the smallest non-associative
        // Latin square with identity)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        let g = FiniteGroup::new("L5", labels, t.clone(), 0).unwrap();
        match validate_group(&g) {
            Err(GroupViolation::NotAssociative { a, b, c }) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn klein_four_is_a_group() {
        let k = klein();
        // exhaustive triple check, written out independently of validate_group
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                }
            }
        }
        assert_eq!(validate_group(&k), Ok(()));
        assert!((0..4).all(|a| k.mul(a, a) == k.identity()));
    }

    #[test]
    fn malformed_table_is_rejected() {
        let err = FiniteGroup::new("bad", vec!["a".into(), "b".into()], vec![vec![0, 1]], 0);
        assert!(matches!(err, Err(AlgebraError::TableRows { .. })));
    }

    #[test]
    fn symmetric_three() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(validate_group(&s3), Ok(()));
        assert_eq!(s3.all_subgroups().len(), 6);
    }

    #[test]
    fn orbit_examples() {
        let swap = GroupAction::from_fn(FiniteGroup::cyclic(2), vec![0, 1], |g, x| (g + x) % 2).unwrap();
        assert_eq!(swap.orbit(0).unwrap(), vec![0, 1]);
        assert_eq!(swap.orbits(), vec![vec![0, 1]]);

        let trivial = GroupAction::trivial(vec![0, 1]);
        assert_eq!(trivial.orbit(0).unwrap(), vec![0]);
        assert_eq!(trivial.orbits(), vec![vec![0], vec![1]]);

        let rot = GroupAction::from_fn(FiniteGroup::cyclic(3), vec![0, 1, 2], |g, x| (g + x) % 3).unwrap();
        // apply all three elements to b = 1
        let applied: BTreeSet<usize> = (0..3).map(|g| rot.act(g, 1).unwrap()).collect();
        assert_eq!(applied, BTreeSet::from([0, 1, 2]));
        assert_eq!(rot.orbit(1).unwrap(), vec![0, 1, 2]);

        assert!(matches!(rot.orbit(7), Err(AlgebraError::NotInCarrier { point: 7 })));
    }

    #[test]
    fn trivial_subgroup_acting_by_left_multiplication() {
        let z2 = FiniteGroup::cyclic(2);
        let (sub, inc) = z2.subgroup("1", &BTreeSet::from([0])).unwrap();
        let act = GroupAction::from_fn(sub, vec![0, 1], |g, x| z2.mul(inc[g], x)).unwrap();
        assert_eq!(act.orbits(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn homomorphism_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let one = FiniteGroup::trivial();
        let id = [0, 1, 2];
        let h = GroupHomomorphism { source: &z3, target: &z3, map: &id };
        assert_eq!(validate_homomorphism(&h), Ok(Ok(())));
        let unique = [0];
        let h = GroupHomomorphism { source: &one, target: &z2, map: &unique };
        assert_eq!(validate_homomorphism(&h), Ok(Ok(())));
        // involution to a 3-cycle: 1+1 = 0 but 1+1 = 2 in Z/3
        let bad = [0, 1];
        let h = GroupHomomorphism { source: &z2, target: &z3, map: &bad };
        assert_eq!(
            validate_homomorphism(&h),
            Ok(Err(HomomorphismViolation::NotMultiplicative { a: 1, b: 1 }))
        );
        let partial = [0];
        let h = GroupHomomorphism { source: &z2, target: &z3, map: &partial };
        assert!(validate_homomorphism(&h).is_err());
    }

    #[test]
    fn mixed_radix_round_trip() {
        let radices = [2, 3, 4];
        for v in 0..24 {
            assert_eq!(encode_mixed(&decode_mixed(v, &radices), &radices), v);
        }
        assert_eq!(decode_mixed(5, &radices), vec![0, 1, 1]);
    }
}
