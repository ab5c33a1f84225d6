use std::collections::BTreeSet;

use proptest::prelude::*;

use gact::covering::{coset_enumeration, words_equal};
use gact::fixtures::*;
use gact::homotopy::{abelian_invariants, pi1_presentation, Letter, Path, Word};
use gact::io::{emit_action, parse_action};
use gact::morphism::{is_morphism, mor_frame, MorSpace};
use gact::GlobalAction;

fn fixture(i: usize) -> GlobalAction {
    let all = all_fixtures();
    all[i % all.len()].1.clone()
}

/// Frame by brute force: some group carries the first point to each other.
fn frame_by_transitivity(a: &GlobalAction, s: &[usize]) -> bool {
    (0..a.index_count()).any(|al| {
        let act = &a.index(al).action;
        s.iter().all(|&p| act.group().elements().any(|g| act.act(g, s[0]) == Some(p)))
    })
}

fn word_strategy(generators: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..max_len)
        .prop_map(|ls| Word(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn orbit_criterion_matches_subset_oracle(i in 0usize..14, j in 0usize..14, seed in prop::collection::vec(0usize..64, 16)) {
        let (x, y) = (fixture(i), fixture(j));
        let f: Vec<usize> = (0..x.point_count()).map(|p| seed[p % seed.len()] % y.point_count()).collect();
        let fast = is_morphism(&f, &x, &y).unwrap().holds();
        let n = x.point_count();
        let slow = (1usize..1 << n).all(|mask| {
            let s: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
            if !frame_by_transitivity(&x, &s) {
                return true;
            }
            let img: Vec<usize> = s.iter().map(|&p| f[p]).collect::<BTreeSet<_>>().into_iter().collect();
            frame_by_transitivity(&y, &img)
        });
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn frames_are_closed_under_nonempty_subsets(i in 0usize..14, mask in 1usize..64, sub in 1usize..64) {
        let a = fixture(i);
        let n = a.point_count().min(6);
        let s: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        let t: Vec<usize> = s.iter().copied().enumerate().filter(|(k, _)| sub & (1 << k) != 0).map(|(_, p)| p).collect();
        prop_assume!(!s.is_empty() && !t.is_empty());
        if let Some(w) = a.is_frame(&s).unwrap() {
            prop_assert!(a.is_frame_at(w, &t));
        }
    }

    #[test]
    fn stars_validate(i in 0usize..14, x in 0usize..64) {
        let a = fixture(i);
        let star = a.star(x % a.point_count()).unwrap();
        prop_assert!(star.action.validate().holds());
    }

    #[test]
    fn documents_round_trip(i in 0usize..14, j in 0usize..14) {
        let a = fixture(i).product(&fixture(j % 4));
        let text = emit_action(&a);
        prop_assert_eq!(parse_action(&text).unwrap(), a);
    }

    #[test]
    fn path_inverse_and_composition(steps in prop::collection::vec(0usize..2, 0..12), offset in -5i64..5) {
        let c5 = cyclic(5);
        let mut pts = vec![0usize];
        for s in steps {
            let last = *pts.last().unwrap();
            pts.push(if s == 0 { (last + 1) % 5 } else { (last + 4) % 5 });
        }
        let p = Path::new(offset, pts).unwrap();
        prop_assert!(p.validate(&c5).is_ok());
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        let back = p.then(&p.inverse()).unwrap();
        prop_assert!(back.is_loop());
        let pres = pi1_presentation(&c5, p.init()).unwrap();
        prop_assert!(pres.loop_to_word(&c5, &back).unwrap().reduced().is_empty());
    }

    #[test]
    fn loop_words_respect_concatenation(a_steps in prop::collection::vec(0usize..2, 0..8), b_steps in prop::collection::vec(0usize..2, 0..8)) {
        let c4 = cyclic(4);
        let walk = |steps: &[usize]| {
            let mut pts = vec![0usize];
            for &s in steps {
                let last = *pts.last().unwrap();
                pts.push(if s == 0 { (last + 1) % 4 } else { (last + 3) % 4 });
            }
            let mut back: Vec<usize> = pts.iter().rev().skip(1).copied().collect();
            pts.append(&mut back);
            Path::from_points(pts).unwrap()
        };
        let (u, v) = (walk(&a_steps), walk(&b_steps));
        let pres = pi1_presentation(&c4, 0).unwrap();
        let wu = pres.loop_to_word(&c4, &u).unwrap();
        let wv = pres.loop_to_word(&c4, &v).unwrap();
        let uv = pres.loop_to_word(&c4, &u.then(&v).unwrap()).unwrap();
        prop_assert_eq!(uv.reduced(), pres.mul(&wu, &wv).unwrap().reduced());
    }

    #[test]
    fn abelianization_is_additive(u in word_strategy(3, 10), v in word_strategy(3, 10)) {
        // Z/2 x Z/6 x Z on three generators
        let rel = |g: usize, k: usize| Word(vec![Letter::new(g, false); k]);
        let comm = |a: usize, b: usize| Word(vec![Letter::new(a, false), Letter::new(b, false), Letter::new(a, true), Letter::new(b, true)]);
        let inv = abelian_invariants(3, &[rel(0, 2), rel(1, 6), comm(0, 1), comm(0, 2), comm(1, 2)]);
        prop_assert_eq!(inv.free_rank(), 1);
        prop_assert_eq!(inv.torsion(), vec![2, 6]);
        let sum: Vec<i64> = inv.image(&u).iter().zip(inv.image(&v)).map(|(a, b)| a + b).collect();
        let reduced: Vec<i64> = sum.iter().zip(inv.diagonal.iter().filter(|&&d| d > 1).chain(std::iter::repeat(&0))).map(|(&s, &d)| if d > 1 { s.rem_euclid(d) } else { s }).collect();
        prop_assert_eq!(inv.image(&u.concat(&v)), reduced);
    }

    #[test]
    fn cyclic_coset_counts(n in 1usize..20, k in 0usize..40) {
        // <g^k> has index gcd(n, k) in Z/n
        let g = |e: usize| Word(vec![Letter::new(0, false); e]);
        let gcd = |mut a: usize, mut b: usize| { while b != 0 { let t = a % b; a = b; b = t; } a };
        let t = coset_enumeration(1, &[g(n)], &[g(k)], 512).unwrap();
        prop_assert_eq!(t.len(), gcd(n, k));
    }

    #[test]
    fn free_group_equality_is_reduction(u in word_strategy(2, 8), v in word_strategy(2, 8)) {
        let c4 = cyclic(4);
        let pres = pi1_presentation(&c4, 0).unwrap();
        let one = |w: &Word| Word(w.letters().iter().map(|l| Letter::new(0, l.inverse)).collect());
        let (u1, v1) = (one(&u), one(&v));
        prop_assert_eq!(
            words_equal(&pres, &u1, &v1, 64),
            Some(u1.exponents(1) == v1.exponents(1))
        );
    }

    #[test]
    fn mor_frame_agrees_with_materialized_space(picks in prop::collection::vec(0usize..16, 1..4)) {
        let (x, y) = (sd2(), c3_star());
        let space = MorSpace::build(&x, &y, 1 << 16).unwrap();
        let mut ids: Vec<usize> = picks.iter().map(|&p| p % space.morphisms.len()).collect();
        ids.sort();
        ids.dedup();
        let fs: Vec<Vec<usize>> = ids.iter().map(|&i| space.morphisms[i].clone()).collect();
        prop_assert_eq!(mor_frame(&x, &y, &fs).unwrap().is_some(), space.action.is_frame_set(&ids));
    }
}

#[test]
fn product_is_associative_on_frames() {
    let (a, b, c) = (sd2(), cyclic(3), pt());
    let left = a.product(&b).product(&c);
    let right = a.product(&b.product(&c));
    let (nb, nc) = (b.point_count(), c.point_count());
    // ((x,y),z) has id (x*nb+y)*nc+z, and (x,(y,z)) has id x*(nb*nc)+y*nc+z
    let n = left.point_count();
    assert_eq!(n, right.point_count());
    let to_right = |p: usize| {
        let (xy, z) = (p / nc, p % nc);
        let (x, y) = (xy / nb, xy % nb);
        x * nb * nc + y * nc + z
    };
    for mask in 1usize..1 << n {
        let s: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let mut t: Vec<usize> = s.iter().map(|&p| to_right(p)).collect();
        t.sort();
        assert_eq!(left.is_frame_set(&s), right.is_frame_set(&t), "{s:?}");
    }
}
