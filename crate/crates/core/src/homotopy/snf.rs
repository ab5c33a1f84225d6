//! Smith normal form of integer relation matrices, used to compute the
//! abelianization of a finite presentation.

use super::word::Word;

/// `Z^n` modulo the row space of the relation matrix, as
/// `Z/d_1 + ... + Z/d_r + Z^(n-r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub generators: usize,
    /// Nonzero diagonal entries, each dividing the next.
    pub diagonal: Vec<i64>,
    /// Column transform: a word with exponent vector `e` has coordinates
    /// `e * transform`.
    pub transform: Vec<Vec<i64>>,
}

impl AbelianInvariants {
    pub fn free_rank(&self) -> usize {
        self.generators - self.diagonal.len()
    }

    /// Diagonal entries above 1.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.torsion().is_empty()
    }

    /// Image of an exponent vector: torsion coordinates reduced, then free
    /// coordinates.
    pub fn image_of_exponents(&self, e: &[i64]) -> Vec<i64> {
        let n = self.generators;
        let y: Vec<i64> = (0..n).map(|j| (0..n).map(|i| e[i] * self.transform[i][j]).sum()).collect();
        let mut out = Vec::new();
        for (i, &v) in y.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(1) => {}
                Some(&d) => out.push(v.rem_euclid(d)),
                None => out.push(v),
            }
        }
        out
    }

    pub fn image(&self, w: &Word) -> Vec<i64> {
        self.image_of_exponents(&w.exponents(self.generators))
    }
}

/// Abelian invariants of `<generators | relations>`.
pub fn abelian_invariants(generators: usize, relations: &[Word]) -> AbelianInvariants {
    let matrix: Vec<Vec<i64>> = relations.iter().map(|r| r.exponents(generators)).collect();
    let (diagonal, transform) = smith(matrix, generators);
    AbelianInvariants { generators, diagonal, transform }
}

/// Returns the nonzero diagonal and the column transform.
fn smith(mut a: Vec<Vec<i64>>, n: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let m = a.len();
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let col_op = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, target: usize, source: usize, q: i64| {
        for row in a.iter_mut() {
            row[target] -= q * row[source];
        }
        for row in v.iter_mut() {
            row[target] -= q * row[source];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (diagonal, v);
            };
            a.swap(t, pi);
            col_swap(&mut a, &mut v, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    col_op(&mut a, &mut v, j, t, q);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    (diagonal, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::word::Letter;

    fn w(exps: &[(usize, i64)]) -> Word {
        let mut letters = Vec::new();
        for &(g, k) in exps {
            for _ in 0..k.abs() {
                letters.push(Letter::new(g, k < 0));
            }
        }
        Word(letters)
    }

    #[test]
    fn cyclic_torsion() {
        let inv = abelian_invariants(1, &[w(&[(0, 3)])]);
        assert_eq!(inv.torsion(), vec![3]);
        assert_eq!(inv.free_rank(), 0);
        assert_eq!(inv.image(&w(&[(0, 4)])), vec![1]);
    }

    #[test]
    fn free_and_trivial() {
        let inv = abelian_invariants(1, &[]);
        assert_eq!((inv.free_rank(), inv.torsion()), (1, vec![]));
        assert_eq!(inv.image(&w(&[(0, -2)])), vec![-2]);
        assert!(abelian_invariants(1, &[w(&[(0, -1)])]).is_trivial());
    }

    #[test]
    fn mixed_relations() {
        // <a, b | a^2 b^2, a^4> : Z/2 + Z/4 after change of basis (det 8)
        let inv = abelian_invariants(2, &[w(&[(0, 2), (1, 2)]), w(&[(0, 4)])]);
        assert_eq!(inv.diagonal.iter().product::<i64>(), 8);
        assert_eq!(inv.diagonal, vec![2, 4]);
        // relators map to zero
        assert_eq!(inv.image(&w(&[(0, 2), (1, 2)])), vec![0, 0]);
        assert_eq!(inv.image(&w(&[(0, 4)])), vec![0, 0]);
        assert_ne!(inv.image(&w(&[(0, 1)])), vec![0, 0]);
    }
}
