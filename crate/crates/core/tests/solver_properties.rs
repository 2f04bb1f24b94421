mod common;

use common::*;
use fairdiv_core::algorithms::{
    minimal_envious_subset, potential_phi, run_generalized_envy_graph, solve_boolean, solve_boolean_with,
    solve_cut_and_choose_chores, solve_ef1_two_agents, solve_efx_chores_identical, solve_negative_boolean_identical,
    EventKind, MinimalSetSearch,
};
use fairdiv_core::fairness::satisfies;
use fairdiv_core::generators::{gen_instance, GeneratorSpec, UtilityKind};
use fairdiv_core::oracle::{search_allocation, SearchMode, SearchOptions};
use fairdiv_core::{Criterion, ItemSet, RationalInstance, UtilityFunction};
use proptest::prelude::*;

fn instance(kind: UtilityKind, n: usize, m: usize, seed: u64, identical: bool) -> RationalInstance {
    gen_instance(&GeneratorSpec::new(kind, n, m, seed).identical(identical)).unwrap()
}

fn shuffled(m: usize, keys: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&s| (keys.get(s).copied().unwrap_or(0), s));
    order
}

fn is_found_by_oracle(inst: &RationalInstance, a: &fairdiv_core::Allocation, c: Criterion) -> bool {
    let res = search_allocation(inst, c, &SearchOptions::mode(SearchMode::All)).unwrap();
    res.all.unwrap().contains(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ef1_two_is_a_split_of_the_order(m in 0usize..=7, seed: u64, keys: Vec<u64>) {
        let inst = instance(UtilityKind::General, 2, m, seed, false);
        let order = shuffled(m, &keys);
        let res = solve_ef1_two_agents(&inst, &order).unwrap();
        let a = &res.allocation;
        prop_assert!(satisfies(&inst, a.bundles(), Criterion::Ef1), "{} {}", a, res.case);
        let split = (0..=m).find(|&j| {
            let prefix = ItemSet::from_items(order[..j].iter().copied());
            let suffix = ItemSet::from_items(order[j..].iter().copied());
            (a.bundle(0) == prefix && a.bundle(1) == suffix) || (a.bundle(0) == suffix && a.bundle(1) == prefix)
        });
        prop_assert!(split.is_some(), "{} is not a split of {:?}", a, order);
    }

    #[test]
    fn chores_rounds_make_progress(n in 2usize..=4, m in 0usize..=6, seed: u64) {
        let inst = instance(UtilityKind::Chores, n, m, seed, true);
        let res = solve_efx_chores_identical(&inst).unwrap();
        prop_assert!(satisfies(&inst, res.allocation.bundles(), Criterion::EfxPlusZero));
        prop_assert!(star_condition(&inst, &res.allocation));
        let longest = res.trace.audit_pool_welfare().map_err(TestCaseError::fail)?;
        prop_assert!(longest <= m);
    }

    #[test]
    fn minimal_envious_subsets_are_inclusion_minimal(m in 1usize..=6, seed: u64, bits: u64, t in -12i64..=0) {
        let inst = instance(UtilityKind::Chores, 1, m, seed, true);
        let u = inst.utility(0);
        let candidate = ItemSet::from_bits(bits & ItemSet::full(m).bits());
        let thresholds = [r(t)];
        prop_assume!(u.value(candidate) < r(t));
        let x = minimal_envious_subset(u, candidate, &thresholds).unwrap();
        prop_assert!(x.is_subset(candidate));
        prop_assert!(u.value(x) < r(t));
        for y in subsets_brute(x) {
            prop_assert!(y == x || u.value(y) >= r(t), "{} has envious proper subset {}", x, y);
        }
    }

    #[test]
    fn cut_and_choose_leaves_the_chooser_envy_free(m in 0usize..=6, seed: u64) {
        let inst = instance(UtilityKind::Chores, 2, m, seed, false);
        let res = solve_cut_and_choose_chores(&inst).unwrap();
        let a = &res.allocation;
        prop_assert!(satisfies(&inst, a.bundles(), Criterion::EfxPlusZero));
        prop_assert!(inst.value(1, a.bundle(1)) >= inst.value(1, a.bundle(0)));
    }

    #[test]
    fn boolean_hands_out_valued_bundles_first(n in 1usize..=4, m in 0usize..=6, seed: u64, identical: bool) {
        let inst = instance(UtilityKind::Boolean, n, m, seed, identical);
        for search in [MinimalSetSearch::Greedy, MinimalSetSearch::Exact] {
            let res = solve_boolean_with(&inst, search).unwrap();
            prop_assert!(satisfies(&inst, res.allocation.bundles(), Criterion::EfxZeroMinus));
            let values: Vec<_> = res
                .trace
                .rounds
                .iter()
                .filter(|r| r.event == EventKind::Assign)
                .map(|r| {
                    let i = r.agent.unwrap();
                    inst.value(i, r.bundles[i])
                })
                .collect();
            prop_assert_eq!(values.len(), n);
            prop_assert!(values.windows(2).all(|w| w[0] >= w[1]), "{:?}", values);
        }
    }

    #[test]
    fn negative_boolean_potential_rises(n in 1usize..=4, m in 0usize..=7, seed: u64) {
        let inst = instance(UtilityKind::NegativeBoolean, n, m, seed, true);
        let res = solve_negative_boolean_identical(&inst).unwrap();
        prop_assert!(satisfies(&inst, res.allocation.bundles(), Criterion::EfxPlusZero));
        let phi = res.trace.phi_values().unwrap();
        prop_assert!(phi.windows(2).all(|w| w[0] < w[1]), "{:?}", phi);
        prop_assert!(res.trace.count(EventKind::Move) <= m * n);
        prop_assert_eq!(*phi.last().unwrap(), potential_phi(&inst, &res.allocation).unwrap());
    }

    #[test]
    fn envy_graph_reference_is_ef1_on_goods(n in 1usize..=4, m in 0usize..=6, seed: u64) {
        let inst = instance(UtilityKind::Goods, n, m, seed, false);
        let order: Vec<usize> = (0..m).collect();
        let res = run_generalized_envy_graph(&inst, &order).unwrap();
        prop_assert!(satisfies(&inst, res.allocation.bundles(), Criterion::Ef1));
    }
}

#[test]
fn solver_outputs_are_among_oracle_solutions() {
    for seed in 0..12u64 {
        let m = 1 + (seed % 5) as usize;
        let inst = instance(UtilityKind::General, 2, m, seed, false);
        let order: Vec<usize> = (0..m).collect();
        let a = solve_ef1_two_agents(&inst, &order).unwrap().allocation;
        assert!(is_found_by_oracle(&inst, &a, Criterion::Ef1));

        let inst = instance(UtilityKind::Chores, 3, m, seed, true);
        let a = solve_efx_chores_identical(&inst).unwrap().allocation;
        assert!(is_found_by_oracle(&inst, &a, Criterion::EfxPlusZero));

        let inst = instance(UtilityKind::Boolean, 3, m, seed, false);
        let a = solve_boolean(&inst).unwrap().allocation;
        assert!(is_found_by_oracle(&inst, &a, Criterion::EfxZeroMinus));

        let inst = instance(UtilityKind::NegativeBoolean, 3, m, seed, true);
        let a = solve_negative_boolean_identical(&inst).unwrap().allocation;
        assert!(is_found_by_oracle(&inst, &a, Criterion::EfxPlusZero));
    }
}

#[test]
fn stronger_criteria_never_count_more() {
    for seed in 0..20u64 {
        let kind = UtilityKind::ALL[(seed % 6) as usize];
        let inst = instance(kind, 2 + (seed % 2) as usize, 4, seed, seed % 3 == 0);
        let count = |c| search_allocation(&inst, c, &SearchOptions::default()).unwrap().count;
        for c in Criterion::ALL {
            for &weaker in c.implies() {
                assert!(count(c) <= count(weaker), "seed {seed}: {c} vs {weaker}");
            }
        }
    }
}

#[test]
fn nonexistence_examples() {
    let count = |inst: &RationalInstance, c| {
        let res = search_allocation(inst, c, &SearchOptions::default()).unwrap();
        (res.count, res.explored)
    };
    assert_eq!(count(&lattice(), Criterion::EfxPlusMinus), (0, 8));

    let goods = fairdiv_core::Instance::identical(2, UtilityFunction::additive(vec![r(1), r(0)]).unwrap()).unwrap();
    assert_eq!(count(&goods, Criterion::EfxZeroZero), (0, 4));

    let boolean = fairdiv_core::Instance::identical(2, UtilityFunction::threshold(3, r(1), 2).unwrap()).unwrap();
    assert_eq!(count(&boolean, Criterion::EfxPlusZero), (0, 8));
    assert!(count(&boolean, Criterion::EfxZeroMinus).0 > 0);

    let negative = fairdiv_core::Instance::identical(2, UtilityFunction::threshold(3, r(-1), 2).unwrap()).unwrap();
    assert_eq!(count(&negative, Criterion::EfxZeroMinus), (0, 8));
    assert!(count(&negative, Criterion::EfxPlusZero).0 > 0);
}

#[test]
fn flaw_instance_separates_the_two_procedures() {
    let inst = flaw();
    let order = [0, 1, 2];
    let reference = run_generalized_envy_graph(&inst, &order).unwrap();
    assert_eq!(reference.allocation.to_string(), "({1,2,3},{})");
    assert!(!satisfies(&inst, reference.allocation.bundles(), Criterion::Ef1));
    let ours = solve_ef1_two_agents(&inst, &order).unwrap();
    assert_eq!(ours.allocation.to_string(), "({1},{2,3})");
    assert!(satisfies(&inst, ours.allocation.bundles(), Criterion::Ef));
}

#[test]
fn float_and_rational_agree_on_small_integers() {
    for seed in 0..10u64 {
        let spec = GeneratorSpec::new(UtilityKind::Chores, 3, 5, seed).identical(true);
        let exact: RationalInstance = gen_instance(&spec).unwrap();
        let float: fairdiv_core::FloatInstance = gen_instance(&spec).unwrap();
        let a = solve_efx_chores_identical(&exact).unwrap().allocation;
        let b = solve_efx_chores_identical(&float).unwrap().allocation;
        assert_eq!(a, b);
    }
}
