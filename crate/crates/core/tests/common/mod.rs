#![allow(dead_code)]

use fairdiv_core::{Allocation, Instance, ItemSet, Rational, RationalInstance, Scalar, UtilityFunction};

pub fn r(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Table from values listed in bitmask order.
pub fn table(m: usize, vals: &[i64]) -> UtilityFunction<Rational> {
    UtilityFunction::table(m, vals.iter().map(|&v| r(v)).collect()).unwrap()
}

/// Two agents, identical non-monotone lattice with no EFX⁺₋ allocation.
pub fn lattice() -> RationalInstance {
    Instance::identical(2, table(3, &[0, 1, 2, 3, 0, 0, 3, 4])).unwrap()
}

/// Two agents on which the generalized envy-graph procedure fails EF1.
pub fn flaw() -> RationalInstance {
    Instance::identical(2, table(3, &[0, 1, -1, 1, -1, 1, 1, 1])).unwrap()
}

/// 1-based item lists.
pub fn alloc(bundles: &[&[usize]], m: usize) -> Allocation {
    let sets = bundles.iter().map(|b| ItemSet::from_items(b.iter().map(|s| s - 1))).collect();
    Allocation::new(sets, m).unwrap()
}

/// `u(π(i) − s) ≥ u(π(j))` for all agents i, j and every s ∈ π(i),
/// written directly from its definition.
pub fn star_condition(inst: &RationalInstance, a: &Allocation) -> bool {
    let u = inst.utility(0);
    let n = a.agents();
    (0..n).all(|i| {
        (0..n).all(|j| i == j || a.bundle(i).iter().all(|s| u.value(a.bundle(i).without(s)) >= u.value(a.bundle(j))))
    })
}

/// All subsets of `x` by brute force over bitmasks.
pub fn subsets_brute(x: ItemSet) -> Vec<ItemSet> {
    let top = 64 - x.bits().leading_zeros();
    (0..1u64 << top).map(ItemSet::from_bits).filter(|y| y.is_subset(x)).collect()
}
