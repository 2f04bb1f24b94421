use std::fmt;

use crate::error::{Error, Result};
use crate::items::{ItemSet, MAX_ITEMS};
use crate::scalar::Scalar;
use crate::utility::{UtilityClass, UtilityFunction};

/// Class flags of a whole instance: a class flag holds when it holds for
/// every agent's utility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InstanceFlags {
    pub identical: bool,
    pub class: UtilityClass,
}

impl InstanceFlags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.identical {
            out.push("identical");
        }
        out.extend(self.class.names());
        out
    }
}

/// `n` agents with one utility function each over the same `m` items.
#[derive(Debug, Clone)]
pub struct Instance<T> {
    m: usize,
    utilities: Vec<UtilityFunction<T>>,
    labels: Option<Vec<String>>,
    agent_classes: Vec<UtilityClass>,
    flags: InstanceFlags,
}

impl<T: Scalar> Instance<T> {
    pub fn new(utilities: Vec<UtilityFunction<T>>) -> Result<Self> {
        let Some(first) = utilities.first() else {
            return Err(Error::InvalidInstance("an instance needs at least one agent".into()));
        };
        let m = first.items();
        if m > MAX_ITEMS {
            return Err(Error::InvalidInstance(format!("{m} items exceed {MAX_ITEMS}")));
        }
        if let Some((i, u)) = utilities.iter().enumerate().find(|(_, u)| u.items() != m) {
            return Err(Error::InvalidInstance(format!(
                "agent {} has a utility over {} items, agent 1 over {m}",
                i + 1,
                u.items()
            )));
        }
        let agent_classes: Vec<UtilityClass> = utilities.iter().map(|u| u.classify()).collect();
        let class = agent_classes.iter().fold(UtilityClass::ALL, |acc, c| acc.meet(*c));
        let identical = utilities.iter().all(|u| u.same_function(first));
        Ok(Instance { m, utilities, labels: None, agent_classes, flags: InstanceFlags { identical, class } })
    }

    /// `n` agents sharing one utility function.
    pub fn identical(n: usize, utility: UtilityFunction<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("an instance needs at least one agent".into()));
        }
        let class = utility.classify();
        let m = utility.items();
        Ok(Instance {
            m,
            utilities: vec![utility; n],
            labels: None,
            agent_classes: vec![class; n],
            flags: InstanceFlags { identical: true, class },
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::InvalidInstance(format!("{} item labels for {} items", labels.len(), self.m)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn agents(&self) -> usize {
        self.utilities.len()
    }

    pub fn items(&self) -> usize {
        self.m
    }

    pub fn ground_set(&self) -> ItemSet {
        ItemSet::full(self.m)
    }

    pub fn utility(&self, agent: usize) -> &UtilityFunction<T> {
        &self.utilities[agent]
    }

    pub fn utilities(&self) -> &[UtilityFunction<T>] {
        &self.utilities
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn flags(&self) -> InstanceFlags {
        self.flags
    }

    pub fn agent_class(&self, agent: usize) -> UtilityClass {
        self.agent_classes[agent]
    }

    /// `u_agent(bundle)`.
    pub fn value(&self, agent: usize, bundle: ItemSet) -> T {
        self.utilities[agent].value(bundle)
    }

    /// Σ_i u_i(π(i)).
    pub fn welfare(&self, bundles: &[ItemSet]) -> T {
        bundles.iter().enumerate().fold(T::zero(), |acc, (i, b)| acc + self.value(i, *b))
    }
}

/// An ordered partition of the items into one (possibly empty) bundle per agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    bundles: Vec<ItemSet>,
}

impl Allocation {
    /// Accepts `bundles` only if they partition `0..m`.
    pub fn new(bundles: Vec<ItemSet>, m: usize) -> Result<Self> {
        if bundles.is_empty() {
            return Err(Error::InvalidAllocation("no bundles".into()));
        }
        if m > MAX_ITEMS {
            return Err(Error::InvalidAllocation(format!("{m} items exceed {MAX_ITEMS}")));
        }
        let mut seen = ItemSet::EMPTY;
        for (i, b) in bundles.iter().enumerate() {
            if !b.fits(m) {
                return Err(Error::InvalidAllocation(format!("bundle of agent {} contains an item beyond {m}", i + 1)));
            }
            let dup = seen.intersection(*b);
            if let Some(s) = dup.first() {
                return Err(Error::InvalidAllocation(format!("item {} is given to more than one agent", s + 1)));
            }
            seen = seen.union(*b);
        }
        if let Some(s) = ItemSet::full(m).difference(seen).first() {
            return Err(Error::InvalidAllocation(format!("item {} is not allocated", s + 1)));
        }
        Ok(Allocation { bundles })
    }

    pub fn for_instance<T: Scalar>(bundles: Vec<ItemSet>, inst: &Instance<T>) -> Result<Self> {
        if bundles.len() != inst.agents() {
            return Err(Error::InvalidAllocation(format!("{} bundles for {} agents", bundles.len(), inst.agents())));
        }
        Self::new(bundles, inst.items())
    }

    /// `assignment[s]` is the agent receiving item `s`.
    pub fn from_assignment(assignment: &[usize], n: usize) -> Result<Self> {
        let mut bundles = vec![ItemSet::EMPTY; n];
        for (s, &a) in assignment.iter().enumerate() {
            if a >= n {
                return Err(Error::InvalidAllocation(format!("item {} assigned to agent {} of {n}", s + 1, a + 1)));
            }
            bundles[a] = bundles[a].with(s);
        }
        Self::new(bundles, assignment.len())
    }

    /// Trusted constructor for bundles already known to partition the items.
    pub(crate) fn from_partition(bundles: Vec<ItemSet>) -> Self {
        Allocation { bundles }
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> ItemSet {
        self.bundles[agent]
    }

    pub fn bundles(&self) -> &[ItemSet] {
        &self.bundles
    }

    pub fn into_bundles(self) -> Vec<ItemSet> {
        self.bundles
    }

    /// Relabels agents: agent `perm[i]` of the result holds bundle `i` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Allocation {
        let mut bundles = vec![ItemSet::EMPTY; self.bundles.len()];
        for (i, &p) in perm.iter().enumerate() {
            bundles[p] = self.bundles[i];
        }
        Allocation { bundles }
    }
}

/// `({1,3},{2})`, 1-based.
impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bundles.iter().map(|b| b.display_one_based()).collect();
        write!(f, "({})", parts.join(","))
    }
}
