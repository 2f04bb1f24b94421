use std::fmt;

/// Largest ground set an [`ItemSet`] can describe.
pub const MAX_ITEMS: usize = 64;

/// A subset of the items `0..m`, stored as a bitmask (item `k` is bit `k`).
///
/// The set does not know `m`; range checks happen where a set meets a
/// utility function or an instance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ItemSet(u64);

impl ItemSet {
    pub const EMPTY: ItemSet = ItemSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ItemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All of `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_ITEMS, "ground set of {m} items exceeds {MAX_ITEMS}");
        if m == MAX_ITEMS {
            ItemSet(u64::MAX)
        } else {
            ItemSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(item: usize) -> Self {
        assert!(item < MAX_ITEMS);
        ItemSet(1u64 << item)
    }

    pub fn from_items(items: impl IntoIterator<Item = usize>) -> Self {
        items.into_iter().fold(ItemSet::EMPTY, |acc, s| acc.with(s))
    }

    pub fn contains(self, item: usize) -> bool {
        item < MAX_ITEMS && self.0 & (1u64 << item) != 0
    }

    /// `self + item`.
    #[must_use]
    pub fn with(self, item: usize) -> Self {
        ItemSet(self.0 | ItemSet::singleton(item).0)
    }

    /// `self - item`; removing an absent item is the identity.
    #[must_use]
    pub fn without(self, item: usize) -> Self {
        if item >= MAX_ITEMS {
            return self;
        }
        ItemSet(self.0 & !(1u64 << item))
    }

    #[must_use]
    pub fn union(self, other: ItemSet) -> Self {
        ItemSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: ItemSet) -> Self {
        ItemSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: ItemSet) -> Self {
        ItemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ItemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ItemSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Lowest item, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Every bit lies below `m`.
    pub fn fits(self, m: usize) -> bool {
        m >= MAX_ITEMS || self.0 >> m == 0
    }

    /// Items in ascending order.
    pub fn iter(self) -> Items {
        Items(self.0)
    }

    /// Items in descending order.
    pub fn iter_rev(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let top = 63 - bits.leading_zeros() as usize;
            bits &= !(1u64 << top);
            Some(top)
        })
    }

    /// All subsets of `self`, in descending bitmask order (`self` first, `∅` last).
    pub fn subsets(self) -> impl Iterator<Item = ItemSet> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(ItemSet(cur))
        })
    }

    /// 1-based labels, e.g. `{1,3}`.
    pub fn display_one_based(self) -> String {
        let inner: Vec<String> = self.iter().map(|s| (s + 1).to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

pub struct Items(u64);

impl Iterator for Items {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let s = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Items {}

impl IntoIterator for ItemSet {
    type Item = usize;
    type IntoIter = Items;

    fn into_iter(self) -> Items {
        self.iter()
    }
}

impl FromIterator<usize> for ItemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ItemSet::from_items(iter)
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Displays with 1-based item labels.
impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_one_based())
    }
}
