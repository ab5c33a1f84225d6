//! Coset enumeration for finitely presented groups.
//!
//! Relator-based (HLT) strategy with coincidence processing through a
//! union-find forwarding table. Column `2i` is generator `i`, column `2i+1`
//! its inverse.

use std::collections::VecDeque;

use thiserror::Error;

use crate::homotopy::{abelian_invariants, Letter, Pi1Presentation, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("more than {max_cosets} live cosets needed ({defined} defined so far)")]
    CapExceeded { max_cosets: usize, defined: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A complete coset table, numbered breadth-first from the subgroup's own
/// coset 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: usize,
    pub table: Vec<Vec<usize>>,
}

fn column(l: Letter) -> usize {
    2 * l.generator + usize::from(l.inverse)
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.table[coset][column(l)]
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    forward: Vec<usize>,
    live: usize,
    max: usize,
    queue: VecDeque<usize>,
}

impl Enumerator {
    fn find(&mut self, mut c: usize) -> usize {
        while self.forward[c] != c {
            let next = self.forward[c];
            self.forward[c] = self.forward[next];
            c = next;
        }
        c
    }

    fn alive(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize, CosetError> {
        if self.live >= self.max {
            return Err(CosetError::CapExceeded { max_cosets: self.max, defined: self.table.len() });
        }
        let n = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.forward.push(n);
        self.live += 1;
        self.table[c][col] = Some(n);
        self.table[n][col ^ 1] = Some(c);
        Ok(n)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.forward[drop] = keep;
        self.live -= 1;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for col in 0..self.cols {
                let Some(f) = self.table[e][col] else { continue };
                if self.table[f][col ^ 1] == Some(e) {
                    self.table[f][col ^ 1] = None;
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                if let Some(t) = self.table[e1][col] {
                    self.merge(f1, t);
                } else if let Some(t) = self.table[f1][col ^ 1] {
                    self.merge(e1, t);
                } else {
                    self.table[e1][col] = Some(f1);
                    self.table[f1][col ^ 1] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CosetError> {
        if w.is_empty() {
            return Ok(());
        }
        loop {
            let mut f = c;
            let mut i = 0;
            let mut b = c;
            let mut j = w.len() as isize - 1;
            while (i as isize) <= j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.table[b][w[j as usize] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = Some(b);
                self.table[b][w[i] ^ 1] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in
/// `<generators | relations>`, failing once more than `max_cosets` cosets
/// are live at the same time.
pub fn coset_enumeration(
    generators: usize,
    relations: &[Word],
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, CosetError> {
    for w in relations.iter().chain(subgroup) {
        w.check_alphabet(generators)?;
    }
    let cols = 2 * generators;
    let as_cols = |w: &Word| -> Vec<usize> { w.reduced().letters().iter().map(|&l| column(l)).collect() };
    let rels: Vec<Vec<usize>> = relations.iter().map(as_cols).filter(|r| !r.is_empty()).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(as_cols).collect();
    if max_cosets == 0 {
        return Err(CosetError::CapExceeded { max_cosets, defined: 0 });
    }
    let mut e = Enumerator {
        cols,
        table: vec![vec![None; cols]],
        forward: vec![0],
        live: 1,
        max: max_cosets,
        queue: VecDeque::new(),
    };
    for s in &subs {
        e.scan_and_fill(0, s)?;
    }
    let mut c = 0;
    while c < e.table.len() {
        if e.alive(c) {
            for r in &rels {
                e.scan_and_fill(c, r)?;
                if !e.alive(c) {
                    break;
                }
            }
            if e.alive(c) {
                for col in 0..cols {
                    if e.table[c][col].is_none() {
                        e.define(c, col)?;
                    }
                }
            }
        }
        c += 1;
    }
    // renumber live cosets breadth-first from coset 0
    let n = e.table.len();
    let mut order = vec![usize::MAX; n];
    let mut seq = vec![0usize];
    order[0] = 0;
    let mut k = 0;
    while k < seq.len() {
        let cur = seq[k];
        for col in 0..cols {
            let next = e.find(e.table[cur][col].expect("complete"));
            if order[next] == usize::MAX {
                order[next] = seq.len();
                seq.push(next);
            }
        }
        k += 1;
    }
    let mut table = Vec::with_capacity(seq.len());
    for &cur in &seq {
        let row = (0..cols).map(|col| order[e.find(e.table[cur][col].expect("complete"))]).collect();
        table.push(row);
    }
    Ok(CosetTable { generators, table })
}

impl Pi1Presentation {
    /// Cosets of the subgroup generated by `words`.
    pub fn cosets(&self, words: &[Word], max_cosets: usize) -> Result<CosetTable, CosetError> {
        coset_enumeration(self.generator_count(), &self.relations, words, max_cosets)
    }
}

/// Decides equality of two words in the presented group when it can:
/// free reduction when there are no relators, the regular representation
/// when the group is finite within the cap, and otherwise a difference of
/// abelianized images. `None` when none of these settles it.
pub fn words_equal(p: &Pi1Presentation, u: &Word, v: &Word, max_cosets: usize) -> Option<bool> {
    let relators = p.nontrivial_relations();
    if relators.is_empty() {
        return Some(u.reduced() == v.reduced());
    }
    if let Ok(t) = coset_enumeration(p.generator_count(), &relators, &[], max_cosets) {
        return Some(t.act_word(0, u) == t.act_word(0, v));
    }
    let inv = abelian_invariants(p.generator_count(), &relators);
    (inv.image(u) != inv.image(v)).then_some(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: i64) -> Word {
        Word(vec![Letter::new(0, k < 0); k.unsigned_abs() as usize])
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(coset_enumeration(1, &[], &[g(2)], 100).unwrap().len(), 2);
        assert_eq!(coset_enumeration(1, &[g(3)], &[], 100).unwrap().len(), 3);
        assert!(matches!(
            coset_enumeration(1, &[], &[], 100),
            Err(CosetError::CapExceeded { max_cosets: 100, .. })
        ));
        assert_eq!(coset_enumeration(1, &[g(6)], &[g(4)], 100).unwrap().len(), 2);
    }

    #[test]
    fn symmetric_group() {
        // S3 = <a, b | a^2, b^3, (ab)^2>
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        let rels = vec![Word(vec![a, a]), Word(vec![b, b, b]), Word(vec![a, b, a, b])];
        let t = coset_enumeration(2, &rels, &[], 100).unwrap();
        assert_eq!(t.len(), 6);
        for c in 0..6 {
            for r in &rels {
                assert_eq!(t.act_word(c, r), c);
            }
        }
        assert_eq!(coset_enumeration(2, &rels, &[Word(vec![a])], 100).unwrap().len(), 3);
        assert_eq!(coset_enumeration(2, &rels, &[Word(vec![b])], 100).unwrap().len(), 2);
    }
}
