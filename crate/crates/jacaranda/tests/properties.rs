use jacaranda::jacaranda::{jacaranda_digit_at, jacaranda_prefix};
use jacaranda::measures::invariant_measure;
use jacaranda::preimages::{p_n, preimages_bruteforce};
use jacaranda::systems::OrbitGraph;
use jacaranda::tree::{distance, distinct_subpatches, Interner};
use jacaranda::words::{chi, chi_bbab};
use jacaranda::{Address, Letter, LineWord, Patch, Substitution};
use proptest::prelude::*;

fn patch(max_depth: usize) -> impl Strategy<Value = Patch> {
    (0..=max_depth).prop_flat_map(|d| {
        proptest::collection::vec(0u8..2, (1usize << (d + 1)) - 1).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Patch::from_fn(d, |_, _| it.next().unwrap())
        })
    })
}

fn patch_of_depth(d: usize) -> impl Strategy<Value = Patch> {
    proptest::collection::vec(0u8..2, (1usize << (d + 1)) - 1).prop_map(move |bits| {
        let mut it = bits.into_iter();
        Patch::from_fn(d, |_, _| it.next().unwrap())
    })
}

fn address(max_len: usize) -> impl Strategy<Value = Address> {
    proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 0..=max_len).prop_map(Address)
}

fn word(max_level: usize) -> impl Strategy<Value = LineWord> {
    (0..=max_level).prop_flat_map(|l| proptest::collection::vec(0u8..2, 1usize << l).prop_map(LineWord))
}

fn graph() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (1usize..6).prop_flat_map(|n| {
        (Just(n), proptest::collection::vec(0..n, n), proptest::collection::vec(0..n, n))
    })
}

fn graph_text(n: usize, a: &[usize], b: &[usize], perm: &[usize]) -> String {
    let mut s = String::new();
    for i in 0..n {
        s.push_str(&format!("state s{}\n", perm[i]));
    }
    for i in 0..n {
        s.push_str(&format!("edge s{} a s{}\n", perm[i], perm[a[i]]));
        s.push_str(&format!("edge s{} b s{}\n", perm[i], perm[b[i]]));
    }
    s
}

proptest! {
    #[test]
    fn subtree_composes(p in patch(7), u in address(3), v in address(3)) {
        prop_assume!(u.len() + v.len() <= p.depth());
        let left = p.subtree(&u).unwrap().subtree(&v).unwrap();
        prop_assert_eq!(left, p.subtree(&u.concat(&v)).unwrap());
    }

    #[test]
    fn ultrametric(p in patch_of_depth(4), q in patch_of_depth(4), r in patch_of_depth(4)) {
        let pr = distance(&p, &r).unwrap();
        let bound = distance(&p, &q).unwrap().max(distance(&q, &r).unwrap());
        prop_assert!(pr.le(bound));
        prop_assert_eq!(distance(&p, &q).unwrap(), distance(&q, &p).unwrap());
    }

    #[test]
    fn interned_ids_are_equality(p in patch(4), q in patch(4)) {
        let mut i = Interner::new();
        prop_assert_eq!(i.intern(&p) == i.intern(&q), p == q);
    }

    #[test]
    fn text_round_trips(p in patch(6)) {
        prop_assert_eq!(Patch::parse_text(&p.to_text()).unwrap(), p.clone());
        prop_assert_eq!(Patch::parse_inline(&p.inline()).unwrap(), p);
    }

    #[test]
    fn unsub_inverts_apply(p in patch(4)) {
        for s in [Substitution::bbab(), Substitution::thue_morse(), Substitution::abba()] {
            prop_assert_eq!(s.unsub(&s.apply(&p)).unwrap(), p.clone());
        }
    }

    #[test]
    fn renormalization_on_random_patches(p in patch(4)) {
        prop_assert!(Substitution::bbab().verify_renormalization(&p, 6).passed());
    }

    #[test]
    fn chi_recursion_matches_theta(w in word(5)) {
        prop_assert_eq!(chi_bbab(&w).unwrap(), chi(&Substitution::bbab(), &w).unwrap());
    }

    #[test]
    fn chi_splits(w1 in word(3), w2 in word(3)) {
        prop_assume!(w1.len() == w2.len());
        let c = |w: &LineWord| chi_bbab(w).unwrap().0;
        let mut joined = w1.0.clone();
        joined.extend(&w2.0);
        let want = [c(&w2), c(&w2), c(&w1), c(&w2)].concat();
        prop_assert_eq!(chi_bbab(&LineWord(joined)).unwrap().0, want);
    }

    #[test]
    fn digit_oracle(level in 0usize..=12, idx in any::<u64>()) {
        let j = jacaranda_prefix(12);
        let i = idx % (1u64 << level);
        prop_assert_eq!(jacaranda_digit_at(level, i), j.get_at(level, i));
    }

    #[test]
    fn measure_invariant_under_relabel_and_swap((n, a, b) in graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let id: Vec<usize> = (0..n).collect();
        let base = invariant_measure(&OrbitGraph::parse_text(&graph_text(n, &a, &b, &id)).unwrap()).unwrap();
        let relabeled = invariant_measure(&OrbitGraph::parse_text(&graph_text(n, &a, &b, &perm)).unwrap()).unwrap();
        let swapped = invariant_measure(&OrbitGraph::parse_text(&graph_text(n, &b, &a, &id)).unwrap()).unwrap();
        prop_assert_eq!(base.is_feasible(), relabeled.is_feasible());
        prop_assert_eq!(base.is_feasible(), swapped.is_feasible());
    }
}

#[test]
fn p_n_is_bounded_by_parent_sums() {
    let j = jacaranda_prefix(12);
    for d in 0..=4 {
        for a in distinct_subpatches(&j, d).unwrap().patches {
            let parents = preimages_bruteforce(&a, &j).unwrap();
            for n in 2..=3 {
                let sum: usize = parents
                    .members
                    .iter()
                    .map(|m| p_n(&m.parent(&a).unwrap(), n - 1, &j).unwrap())
                    .sum();
                assert!(p_n(&a, n, &j).unwrap() <= sum, "d={d} n={n} {}", a.inline());
            }
        }
    }
}

#[test]
fn parents_respect_root_sides() {
    let j = jacaranda_prefix(14);
    let odd1 = Patch::parse_inline("1/00").unwrap();
    for m in preimages_bruteforce(&odd1, &j).unwrap().members {
        assert_eq!(m.side, Letter::A);
    }
}
