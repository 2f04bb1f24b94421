use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

/// Directed graph on agents with an edge `i → j` whenever `u_i(π(i)) < u_i(π(j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    adj: Vec<Vec<bool>>,
}

pub fn envy_graph<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> EnvyGraph {
    EnvyGraph::from_bundles(inst, alloc.bundles())
}

impl EnvyGraph {
    /// Works on partial allocations too.
    pub fn from_bundles<T: Scalar>(inst: &Instance<T>, bundles: &[ItemSet]) -> Self {
        let n = bundles.len();
        let adj = (0..n)
            .map(|i| {
                let own = inst.value(i, bundles[i]);
                (0..n).map(|j| i != j && own < inst.value(i, bundles[j])).collect()
            })
            .collect();
        EnvyGraph { adj }
    }

    pub fn agents(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.agents();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.adj[i][j]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.iter().all(|row| row.iter().all(|e| !e))
    }

    /// Lowest-index member of `among` that no other member of `among` envies.
    pub fn source_among(&self, among: &[usize]) -> Option<usize> {
        among.iter().copied().find(|&v| among.iter().all(|&w| !self.adj[w][v]))
    }

    /// Lowest-index agent that envies nobody.
    pub fn sink(&self) -> Option<usize> {
        (0..self.agents()).find(|&v| self.adj[v].iter().all(|e| !e))
    }

    /// Some directed cycle `c[0] → c[1] → … → c[0]`, found by depth-first
    /// search started from the lowest vertex and visiting successors in
    /// ascending order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let n = self.agents();
        let mut mark = vec![Mark::New; n];
        let mut path = Vec::new();

        fn visit(g: &EnvyGraph, v: usize, mark: &mut [Mark], path: &mut Vec<usize>) -> Option<Vec<usize>> {
            mark[v] = Mark::Open;
            path.push(v);
            for w in 0..g.agents() {
                if !g.adj[v][w] {
                    continue;
                }
                match mark[w] {
                    Mark::Open => {
                        let start = path.iter().position(|&x| x == w).unwrap();
                        return Some(path[start..].to_vec());
                    }
                    Mark::New => {
                        if let Some(c) = visit(g, w, mark, path) {
                            return Some(c);
                        }
                    }
                    Mark::Done => {}
                }
            }
            path.pop();
            mark[v] = Mark::Done;
            None
        }

        for v in 0..n {
            if mark[v] == Mark::New {
                if let Some(c) = visit(self, v, &mut mark, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }
}
