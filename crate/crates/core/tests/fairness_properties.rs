mod common;

use common::*;
use fairdiv_core::fairness::{check_allocation_all, satisfies};
use fairdiv_core::generators::{gen_instance, GeneratorSpec, UtilityKind};
use fairdiv_core::{check_allocation, Allocation, Criterion, ItemSet, RationalInstance, UtilityFunction};
use proptest::prelude::*;

/// Definitions evaluated literally, with the sign sets computed on the spot.
fn reference_pair(inst: &RationalInstance, a: &Allocation, i: usize, j: usize, c: Criterion) -> bool {
    let u = inst.utility(i);
    let (own, other) = (a.bundle(i), a.bundle(j));
    let (vi, vj) = (u.value(own), u.value(other));
    if vi >= vj {
        return true;
    }
    let sign = |x: ItemSet, s: usize| {
        let d = u.value(x) - u.value(x.without(s));
        if d > r(0) {
            1
        } else if d < r(0) {
            -1
        } else {
            0
        }
    };
    let pick =
        |x: ItemSet, wanted: &[i32]| -> Vec<usize> { x.iter().filter(|&s| wanted.contains(&sign(x, s))).collect() };
    let (envied, mine): (&[i32], &[i32]) = match c {
        Criterion::Ef => return false,
        Criterion::Ef1 => {
            return own.union(other).iter().any(|s| u.value(own.without(s)) >= u.value(other.without(s)));
        }
        Criterion::EfxZeroZero => (&[1, 0], &[-1, 0]),
        Criterion::EfxZeroMinus => (&[1, 0], &[-1]),
        Criterion::EfxPlusZero => (&[1], &[-1, 0]),
        Criterion::EfxPlusMinus => (&[1], &[-1]),
    };
    let e = pick(other, envied);
    let o = pick(own, mine);
    (!e.is_empty() || !o.is_empty())
        && e.iter().all(|&s| vi >= u.value(other.without(s)))
        && o.iter().all(|&s| u.value(own.without(s)) >= vj)
}

fn reference(inst: &RationalInstance, a: &Allocation, c: Criterion) -> bool {
    let n = a.agents();
    (0..n).all(|i| (0..n).all(|j| i == j || reference_pair(inst, a, i, j, c)))
}

fn kind_strategy() -> impl Strategy<Value = UtilityKind> {
    prop::sample::select(UtilityKind::ALL.to_vec())
}

/// A random instance together with a random allocation of its items.
fn case(max_n: usize, max_m: usize) -> impl Strategy<Value = (RationalInstance, Allocation)> {
    (kind_strategy(), 1..=max_n, 0..=max_m, any::<u64>(), any::<bool>()).prop_flat_map(
        |(kind, n, m, seed, identical)| {
            let spec = GeneratorSpec::new(kind, n, m, seed).identical(identical).values(-4, 4);
            let inst: RationalInstance = gen_instance(&spec).unwrap();
            prop::collection::vec(0..n, m)
                .prop_map(move |word| (inst.clone(), Allocation::from_assignment(&word, n).unwrap()))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn checker_matches_definitions((inst, a) in case(3, 5)) {
        for c in Criterion::ALL {
            let expected = reference(&inst, &a, c);
            prop_assert_eq!(satisfies(&inst, a.bundles(), c), expected, "{} on {}", c, a);
            prop_assert_eq!(check_allocation(&inst, &a, c).pass(), expected, "{} on {}", c, a);
        }
    }

    #[test]
    fn implication_lattice((inst, a) in case(4, 6)) {
        for c in Criterion::ALL {
            if satisfies(&inst, a.bundles(), c) {
                for &weaker in c.implies() {
                    prop_assert!(satisfies(&inst, a.bundles(), weaker), "{} holds but {} fails on {}", c, weaker, a);
                }
            }
        }
    }

    #[test]
    fn witnesses_replay((inst, a) in case(3, 5)) {
        for c in Criterion::ALL {
            let v = check_allocation_all(&inst, &a, c);
            for w in &v.violations {
                prop_assert!(w.replay(&inst, &a, c), "{} witness {:?} on {}", c, w, a);
                prop_assert!(!reference_pair(&inst, &a, w.envier, w.envied, c));
            }
            let failing = (0..a.agents())
                .flat_map(|i| (0..a.agents()).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && !reference_pair(&inst, &a, i, j, c))
                .count();
            prop_assert_eq!(v.violations.len(), failing);
        }
    }

    #[test]
    fn relabeling_agents_preserves_verdicts(
        (inst, a) in case(4, 5),
        rot in 0usize..4,
    ) {
        let n = inst.agents();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let mut utilities = vec![inst.utility(0).clone(); n];
        for (i, &p) in perm.iter().enumerate() {
            utilities[p] = inst.utility(i).clone();
        }
        let relabeled = fairdiv_core::Instance::new(utilities).unwrap();
        let b = a.permuted(&perm);
        for c in Criterion::ALL {
            prop_assert_eq!(satisfies(&inst, a.bundles(), c), satisfies(&relabeled, b.bundles(), c));
        }
    }

    #[test]
    fn efx_plus_zero_is_the_star_condition_for_identical_chores(
        n in 2usize..=4,
        m in 0usize..=6,
        seed: u64,
        word_seed: Vec<usize>,
    ) {
        let spec = GeneratorSpec::new(UtilityKind::Chores, n, m, seed).identical(true);
        let inst: RationalInstance = gen_instance(&spec).unwrap();
        let word: Vec<usize> = (0..m).map(|s| word_seed.get(s).copied().unwrap_or(s) % n).collect();
        let a = Allocation::from_assignment(&word, n).unwrap();
        prop_assert_eq!(satisfies(&inst, a.bundles(), Criterion::EfxPlusZero), star_condition(&inst, &a));
    }

    #[test]
    fn sign_sets_partition_bundles(kind in kind_strategy(), m in 0usize..=6, seed: u64, bits: u64) {
        let inst: RationalInstance = gen_instance(&GeneratorSpec::new(kind, 1, m, seed)).unwrap();
        let u = inst.utility(0);
        let x = ItemSet::from_bits(bits & ItemSet::full(m).bits());
        let cls = u.classify_items(x);
        prop_assert_eq!(cls.plus.union(cls.minus).union(cls.zero), x);
        prop_assert!(cls.plus.is_disjoint(cls.minus) && cls.plus.is_disjoint(cls.zero) && cls.minus.is_disjoint(cls.zero));
        for s in x.iter() {
            let d = u.value(x) - u.value(x.without(s));
            prop_assert_eq!(cls.plus.contains(s), d > r(0));
            prop_assert_eq!(cls.minus.contains(s), d < r(0));
        }
    }

    #[test]
    fn compact_forms_agree_with_their_tables(
        m in 0usize..=6,
        value in -3i64..=3,
        size in 0usize..=7,
        of_bits: u64,
        weights in prop::collection::vec(-3i64..=3, 0..=6),
    ) {
        let of = ItemSet::from_bits(of_bits & ItemSet::full(m).bits());
        let mut forms = Vec::new();
        if size >= 1 || value == 0 {
            forms.push(UtilityFunction::threshold(m, r(value), size).unwrap());
        }
        if !of.is_empty() || value == 0 {
            forms.push(UtilityFunction::superset(m, r(value), of).unwrap());
        }
        forms.push(UtilityFunction::additive(weights.iter().map(|&w| r(w)).collect()).unwrap());
        for u in forms {
            let t = u.to_table().unwrap();
            for x in ItemSet::full(u.items()).subsets() {
                prop_assert_eq!(u.value(x), t.value(x));
            }
            prop_assert_eq!(u.classify(), t.classify());
        }
    }
}

#[test]
fn lattice_witness_items() {
    let inst = lattice();
    type Case<'a> = (&'a [&'a [usize]], usize, usize, &'a [usize]);
    let cases: [Case; 4] = [
        (&[&[1, 3], &[2]], 0, 1, &[3]),
        (&[&[2, 3], &[1]], 1, 0, &[3]),
        (&[&[1, 2], &[3]], 1, 0, &[1]),
        (&[&[1, 2, 3], &[]], 1, 0, &[1, 3]),
    ];
    for (bundles, envier, envied, items) in cases {
        let a = alloc(bundles, 3);
        let v = check_allocation(&inst, &a, Criterion::EfxPlusMinus);
        let w = v.first().expect("lattice admits no EFX+- allocation");
        assert_eq!((w.envier, w.envied), (envier, envied), "{a}");
        for item in items {
            assert!(w.violations.iter().any(|x| x.item() == Some(item - 1)), "{a}: {w:?}");
        }
    }
}

#[test]
fn nonemptiness_clause_is_what_fails() {
    let inst = fairdiv_core::Instance::identical(2, table(2, &[0, 2, 2, 1])).unwrap();
    let a = alloc(&[&[], &[1, 2]], 2);
    let v = check_allocation(&inst, &a, Criterion::EfxPlusMinus);
    let w = v.first().unwrap();
    assert_eq!((w.envier, w.envied), (0, 1));
    assert!(w.has_kind("non-emptiness"));
    assert!(!reference(&inst, &a, Criterion::EfxPlusMinus));
}
