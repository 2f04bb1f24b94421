//! Exhaustive search over all `n^m` allocations.
//!
//! Allocations are item-to-agent assignment words `(a_1, …, a_m)` ordered
//! lexicographically, item 1 being the most significant position; word
//! index `k` is `k` written in base `n`. Empty bundles are allowed.
//!
//! The index space can be split into contiguous ranges searched by
//! independent threads. Counts are summed, `first` takes the smallest hit
//! index and `all` concatenates ranges in order, so results never depend
//! on the number of threads.

use std::thread;

use crate::error::{Error, Result};
use crate::fairness::{satisfies, Criterion};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Lexicographically least satisfying allocation.
    First,
    /// Every satisfying allocation.
    All,
    /// Number of satisfying allocations.
    Count,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(SearchMode::First),
            "all" => Ok(SearchMode::All),
            "count" => Ok(SearchMode::Count),
            _ => Err(Error::Precondition(format!("unknown mode '{s}', expected first, all or count"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub budget: u128,
    pub jobs: usize,
    /// Only visit one allocation per relabeling of bundles (restricted-growth
    /// words). Requires identical utilities; counts then refer to these
    /// representatives.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: SearchMode::Count, budget: DEFAULT_BUDGET, jobs: 1, symmetry: false }
    }
}

impl SearchOptions {
    pub fn mode(mode: SearchMode) -> Self {
        SearchOptions { mode, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub found: Option<Allocation>,
    pub all: Option<Vec<Allocation>>,
    /// Satisfying allocations seen; in `First` mode the search stops at the
    /// first hit, so this is 0 or 1.
    pub count: u64,
    /// Size of the search space, `n^m`.
    pub explored: u64,
}

/// `n^m`, if it fits.
pub fn allocation_count(n: usize, m: usize) -> Option<u128> {
    (n as u128).checked_pow(u32::try_from(m).ok()?)
}

fn checked_total(n: usize, m: usize, budget: u128) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("at least one agent is required".into()));
    }
    let total = allocation_count(n, m).unwrap_or(u128::MAX);
    if total > budget || total > u64::MAX as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("enumerating {n}^{m} allocations"),
            required: total,
            budget,
        });
    }
    Ok(total as u64)
}

/// Every allocation of `m` items to `n` agents, in word order.
pub fn enumerate_allocations(n: usize, m: usize, budget: u128) -> Result<Words> {
    let total = checked_total(n, m, budget)?;
    Ok(Words::range(n, m, 0, total))
}

/// Decodes a word index into its allocation.
pub fn allocation_at(index: u64, n: usize, m: usize) -> Allocation {
    let word = decode(index, n, m);
    Allocation::from_partition(bundles_of(&word, n))
}

fn decode(mut index: u64, n: usize, m: usize) -> Vec<usize> {
    let mut word = vec![0; m];
    for slot in word.iter_mut().rev() {
        *slot = (index % n as u64) as usize;
        index /= n as u64;
    }
    word
}

fn bundles_of(word: &[usize], n: usize) -> Vec<ItemSet> {
    let mut bundles = vec![ItemSet::EMPTY; n];
    for (s, &a) in word.iter().enumerate() {
        bundles[a] = bundles[a].with(s);
    }
    bundles
}

/// Odometer over a contiguous range of word indices.
pub struct Words {
    n: usize,
    word: Vec<usize>,
    started: bool,
    next: u64,
    end: u64,
}

impl Words {
    fn range(n: usize, m: usize, start: u64, end: u64) -> Self {
        Words { n, word: decode(start, n, m), started: false, next: start, end }
    }

    /// Advances and returns `(index, word)` without building bundles.
    fn advance(&mut self) -> Option<(u64, &[usize])> {
        if self.next >= self.end {
            return None;
        }
        if self.started {
            for slot in self.word.iter_mut().rev() {
                *slot += 1;
                if *slot < self.n {
                    break;
                }
                *slot = 0;
            }
        }
        self.started = true;
        let index = self.next;
        self.next += 1;
        Some((index, &self.word))
    }
}

impl Iterator for Words {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        let n = self.n;
        self.advance().map(|(_, w)| Allocation::from_partition(bundles_of(w, n)))
    }
}

/// Restricted-growth words: agent labels appear in first-use order.
fn is_canonical(word: &[usize]) -> bool {
    let mut max_seen = None::<usize>;
    for &a in word {
        match max_seen {
            None if a != 0 => return false,
            Some(mx) if a > mx + 1 => return false,
            _ => {}
        }
        max_seen = Some(max_seen.map_or(a, |mx| mx.max(a)));
    }
    true
}

#[derive(Default)]
struct Partial {
    count: u64,
    hits: Vec<u64>,
}

/// Exact existence/count of allocations satisfying `c`.
pub fn search_allocation<T: Scalar>(inst: &Instance<T>, c: Criterion, opts: &SearchOptions) -> Result<SearchResult> {
    let n = inst.agents();
    let m = inst.items();
    let total = checked_total(n, m, opts.budget)?;
    if opts.symmetry && !inst.flags().identical {
        return Err(Error::Unsupported("symmetry reduction needs identical utilities".into()));
    }
    let jobs = opts.jobs.max(1).min(total.max(1) as usize);
    let chunk = total.div_ceil(jobs as u64);
    let ranges: Vec<(u64, u64)> =
        (0..jobs as u64).map(|j| (j * chunk, ((j + 1) * chunk).min(total))).filter(|(a, b)| a < b).collect();

    let scan = |(start, end): (u64, u64)| -> Partial {
        let mut out = Partial::default();
        let mut words = Words::range(n, m, start, end);
        while let Some((index, word)) = words.advance() {
            if opts.symmetry && !is_canonical(word) {
                continue;
            }
            let bundles = bundles_of(word, n);
            if satisfies(inst, &bundles, c) {
                out.count += 1;
                if opts.mode != SearchMode::Count {
                    out.hits.push(index);
                }
                if opts.mode == SearchMode::First {
                    break;
                }
            }
        }
        out
    };

    let partials: Vec<Partial> = if ranges.len() <= 1 {
        ranges.iter().map(|r| scan(*r)).collect()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges.iter().map(|r| scope.spawn(move || scan(*r))).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };

    let decode_alloc = |i: u64| allocation_at(i, n, m);
    let result = match opts.mode {
        SearchMode::Count => SearchResult {
            mode: opts.mode,
            found: None,
            all: None,
            count: partials.iter().map(|p| p.count).sum(),
            explored: total,
        },
        SearchMode::First => {
            let first = partials.iter().find_map(|p| p.hits.first().copied());
            SearchResult {
                mode: opts.mode,
                found: first.map(decode_alloc),
                all: None,
                count: u64::from(first.is_some()),
                explored: total,
            }
        }
        SearchMode::All => {
            let all: Vec<Allocation> = partials.iter().flat_map(|p| p.hits.iter().copied()).map(decode_alloc).collect();
            SearchResult {
                mode: opts.mode,
                found: all.first().cloned(),
                count: all.len() as u64,
                all: Some(all),
                explored: total,
            }
        }
    };
    Ok(result)
}
