//! Deciding whether a matrix with `v(M) = 1` has a synthesis of `n - 1` gates.
//!
//! Stages: influence graph, acyclicity, transitive reduction, pairwise order
//! constraints between chained reduction arcs, then replay.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::connectivity::vertex_count;
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, CnotGate, Synthesis};

/// Directed graph on `n` nodes stored as out-neighbour bitmasks.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct InfluenceGraph {
    n: usize,
    out: [u32; 32],
}

impl InfluenceGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 32);
        InfluenceGraph { n, out: [0; 32] }
    }

    /// Builds a graph from 0-indexed arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n > 32 {
            return Err(Error::DimensionOutOfRange { n, max: 32 });
        }
        let mut g = Self::empty(n);
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::LabelOutOfRange { label: x + 1, n });
                }
            }
            if u == v {
                return Err(Error::SameControlTarget(u + 1));
            }
            g.out[u] |= 1 << v;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn out_mask(&self, u: usize) -> u32 {
        self.out[u]
    }

    /// Arcs as 0-indexed pairs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for u in 0..self.n {
            let mut bits = self.out[u];
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                arcs.push((u, v));
                bits &= bits - 1;
            }
        }
        arcs
    }

    pub fn arc_count(&self) -> usize {
        self.out[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    /// `reach[u]` holds every node reachable from `u` by a path of length >= 1.
    pub fn reachability(&self) -> Vec<u32> {
        let mut reach: Vec<u32> = self.out[..self.n].to_vec();
        // Warshall over bitsets.
        for k in 0..self.n {
            let rk = reach[k];
            for r in reach.iter_mut() {
                if *r >> k & 1 == 1 {
                    *r |= rk;
                }
            }
        }
        reach
    }

    /// True when the underlying undirected graph is connected.
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = self.out;
        for u in 0..self.n {
            for (v, row) in adj.iter_mut().enumerate().take(self.n) {
                if self.has_arc(u, v) {
                    *row |= 1 << u;
                }
            }
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[u] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.n
    }
}

impl fmt::Debug for InfluenceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .into_iter()
            .map(|(u, v)| format!("{}->{}", u + 1, v + 1))
            .collect();
        write!(f, "InfluenceGraph(n={}, {{{}}})", self.n, arcs.join(", "))
    }
}

/// Arc `i -> j` iff `M[j][i] = 1` and `i != j`.
pub fn influence_graph(m: &BinMatrix) -> InfluenceGraph {
    let n = m.n();
    let mut g = InfluenceGraph::empty(n);
    for j in 0..n {
        let mut bits = m.row(j) & !(1u32 << j);
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            g.out[i] |= 1 << j;
            bits &= bits - 1;
        }
    }
    g
}

pub fn has_cycle(g: &InfluenceGraph) -> bool {
    g.reachability()
        .iter()
        .enumerate()
        .any(|(u, r)| r >> u & 1 == 1)
}

/// Keeps arc `(u, v)` iff no path of length >= 2 leads from `u` to `v`.
pub fn transitive_reduction(g: &InfluenceGraph) -> Result<InfluenceGraph> {
    if has_cycle(g) {
        return Err(Error::CyclicGraph);
    }
    let reach = g.reachability();
    let mut out = InfluenceGraph::empty(g.n);
    for u in 0..g.n {
        let mut via = 0u32;
        let mut bits = g.out[u];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            via |= reach[w];
            bits &= bits - 1;
        }
        out.out[u] = g.out[u] & !via;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NotLinkableReason {
    HasCycle,
    ReductionNotSpanningTree,
    OrderConstraintsInconsistent,
    ReplayMismatch,
}

impl fmt::Display for NotLinkableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotLinkableReason::HasCycle => "influence graph has a cycle",
            NotLinkableReason::ReductionNotSpanningTree => {
                "transitive reduction is not a spanning tree"
            }
            NotLinkableReason::OrderConstraintsInconsistent => {
                "gate order constraints are inconsistent"
            }
            NotLinkableReason::ReplayMismatch => "replayed gates do not reproduce the matrix",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkabilityResult {
    Linkable(Synthesis),
    NotLinkable(NotLinkableReason),
}

impl LinkabilityResult {
    pub fn is_linkable(&self) -> bool {
        matches!(self, LinkabilityResult::Linkable(_))
    }

    pub fn witness(&self) -> Option<&Synthesis> {
        match self {
            LinkabilityResult::Linkable(s) => Some(s),
            LinkabilityResult::NotLinkable(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NotLinkableReason> {
        match self {
            LinkabilityResult::Linkable(_) => None,
            LinkabilityResult::NotLinkable(r) => Some(*r),
        }
    }
}

pub fn decide_linkable(m: &BinMatrix) -> Result<LinkabilityResult> {
    use LinkabilityResult::NotLinkable;
    use NotLinkableReason::*;

    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    let v = vertex_count(m);
    if v != 1 {
        return Err(Error::NotVertexConnected(v));
    }
    let n = m.n();

    let g = influence_graph(m);
    if has_cycle(&g) {
        return Ok(NotLinkable(HasCycle));
    }
    let red = transitive_reduction(&g)?;
    if red.arc_count() != n - 1 || !red.is_weakly_connected() {
        return Ok(NotLinkable(ReductionNotSpanningTree));
    }

    // Constraint graph over reduction arcs: before[a] has bit b if gate a must precede gate b.
    let arcs = red.arcs();
    let k = arcs.len();
    let mut before = vec![0u32; k];
    for (a, &(u, v)) in arcs.iter().enumerate() {
        for (b, &(v2, w)) in arcs.iter().enumerate() {
            if v2 != v || w == u {
                continue;
            }
            if m.get(w, u) {
                before[a] |= 1 << b;
            } else {
                before[b] |= 1 << a;
            }
        }
    }

    // Kahn's algorithm, smallest available arc first.
    let mut indeg = vec![0usize; k];
    for mask in &before {
        for (b, d) in indeg.iter_mut().enumerate() {
            *d += (mask >> b & 1) as usize;
        }
    }
    let mut ready: BTreeSet<usize> = (0..k).filter(|&a| indeg[a] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(a) = ready.pop_first() {
        order.push(a);
        let mut bits = before[a];
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() != k {
        return Ok(NotLinkable(OrderConstraintsInconsistent));
    }

    let gates = order
        .into_iter()
        .map(|a| CnotGate::from_indices(arcs[a].0, arcs[a].1))
        .collect::<Result<Vec<_>>>()?;
    let witness = Synthesis::new(n, gates)?;
    if witness.replay() != *m {
        return Ok(NotLinkable(ReplayMismatch));
    }
    Ok(LinkabilityResult::Linkable(witness))
}
