//! Vertex- and edge-connectivity graphs of a matrix and their component counts.
//!
//! `G_v(M)` joins qubits `i != j` when `M[i][j]` or `M[j][i]` is set; `G_e(M)`
//! is the bipartite row/column graph with an edge per one-entry. Neither graph
//! is materialised: unions are driven directly off the row bits.

use crate::gf2::BinMatrix;

/// Disjoint-set forest whose roots are always the minimum member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> ComponentPartition {
        let reps: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        let count = reps.iter().enumerate().filter(|&(i, &r)| i == r).count();
        ComponentPartition { reps, count }
    }
}

/// Partition of `0..len` with each element mapped to the minimum member of its part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    reps: Vec<usize>,
    count: usize,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn representative(&self, x: usize) -> usize {
        self.reps[x]
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.reps[a] == self.reps[b]
    }

    /// Parts in order of their representative, members ascending.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.reps.len()];
        for (x, &r) in self.reps.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(x);
        }
        groups
    }
}

/// Partition of qubits `0..n` under `G_v(M)`.
pub fn vertex_components(m: &BinMatrix) -> ComponentPartition {
    let mut uf = UnionFind::new(m.n());
    for i in 0..m.n() {
        let mut bits = m.row(i) & !(1 << i);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            uf.union(i, j);
            bits &= bits - 1;
        }
    }
    uf.into_partition()
}

/// Partition of `G_e(M)` nodes: rows `R_i` are `0..n`, columns `C_j` are `n..2n`.
pub fn edge_components(m: &BinMatrix) -> ComponentPartition {
    let n = m.n();
    let mut uf = UnionFind::new(2 * n);
    for i in 0..n {
        let mut bits = m.row(i);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            uf.union(i, n + j);
            bits &= bits - 1;
        }
    }
    uf.into_partition()
}

/// `v(M)` by bitmask flood fill.
pub fn vertex_count(m: &BinMatrix) -> usize {
    let n = m.n();
    let mut adj = [0u32; crate::gf2::MAX_QUBITS];
    for i in 0..n {
        let mut bits = m.row(i) & !(1 << i);
        adj[i] |= bits;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            adj[j] |= 1 << i;
            bits &= bits - 1;
        }
    }
    let mut unvisited = crate::gf2::row_mask(n);
    let mut count = 0;
    while unvisited != 0 {
        let start = unvisited & unvisited.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[i] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        unvisited &= !comp;
        count += 1;
    }
    count
}

/// `e(M)` by bitmask flood fill over rows; zero columns are isolated nodes.
pub fn edge_count(m: &BinMatrix) -> usize {
    let n = m.n();
    let mut unvisited = crate::gf2::row_mask(n);
    let mut covered_cols = 0u32;
    let mut count = 0;
    while unvisited != 0 {
        let start = unvisited.trailing_zeros() as usize;
        unvisited &= !(1 << start);
        let mut cols = m.row(start);
        loop {
            let mut grew = false;
            let mut rest = unvisited;
            while rest != 0 {
                let r = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if m.row(r) & cols != 0 {
                    cols |= m.row(r);
                    unvisited &= !(1 << r);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        covered_cols |= cols;
        count += 1;
    }
    count + (crate::gf2::row_mask(n) & !covered_cols).count_ones() as usize
}
