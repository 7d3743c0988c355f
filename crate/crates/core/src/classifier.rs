//! Link / Middle / Cut classification of CNOT gates.
//!
//! For `N = CNOT(c, t) · M`:
//! * Link: `v(N) < v(M)`
//! * Cut: `e(N) > e(M)`
//! * Middle: the river sets of `M` and `N` differ
//!
//! The three are mutually exclusive, so classification short-circuits in the
//! order Link, Cut, Middle and only pays for the matching test when needed.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::connectivity::{edge_count, vertex_count, UnionFind};
use crate::gf2::{BinMatrix, CnotGate, Synthesis, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GateClass {
    Link,
    Middle,
    Cut,
    Neither,
}

impl GateClass {
    pub const ALL: [GateClass; 4] = [
        GateClass::Link,
        GateClass::Middle,
        GateClass::Cut,
        GateClass::Neither,
    ];

    pub fn letter(self) -> char {
        match self {
            GateClass::Link => 'L',
            GateClass::Middle => 'M',
            GateClass::Cut => 'C',
            GateClass::Neither => 'N',
        }
    }
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GateClass::Link => "link",
            GateClass::Middle => "middle",
            GateClass::Cut => "cut",
            GateClass::Neither => "neither",
        };
        f.write_str(name)
    }
}

/// Whether `gate` changes the river set of `m`.
///
/// A river can only appear or vanish if it routes the target row through a
/// column where the control row is set. So the river set changes iff the
/// support obtained by replacing the target row with the control row admits
/// a perfect matching.
pub fn is_middle_fast(m: &BinMatrix, gate: CnotGate) -> bool {
    let n = m.n();
    let mut allowed = [0u32; MAX_QUBITS];
    allowed[..n].copy_from_slice(m.rows());
    allowed[gate.target_index()] = m.row(gate.control_index());
    has_perfect_matching(&allowed[..n])
}

/// Kuhn's augmenting-path matching of rows onto columns.
fn has_perfect_matching(allowed: &[u32]) -> bool {
    let n = allowed.len();
    let mut col_owner = [usize::MAX; MAX_QUBITS];
    for row in 0..n {
        if allowed[row] == 0 {
            return false;
        }
        let mut visited = 0u32;
        if !augment(row, allowed, &mut col_owner, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    row: usize,
    allowed: &[u32],
    col_owner: &mut [usize; MAX_QUBITS],
    visited: &mut u32,
) -> bool {
    let mut cols = allowed[row] & !*visited;
    while cols != 0 {
        let c = cols.trailing_zeros() as usize;
        cols &= cols - 1;
        if *visited & (1 << c) != 0 {
            continue;
        }
        *visited |= 1 << c;
        if col_owner[c] == usize::MAX || augment(col_owner[c], allowed, col_owner, visited) {
            col_owner[c] = row;
            return true;
        }
    }
    false
}

/// Classifies `gate` applied at state `m`.
pub fn classify_gate(m: &BinMatrix, gate: CnotGate) -> GateClass {
    let mut next = *m;
    next.apply_cnot_in_place(gate);
    if vertex_count(&next) < vertex_count(m) {
        GateClass::Link
    } else if edge_count(&next) > edge_count(m) {
        GateClass::Cut
    } else if is_middle_fast(m, gate) {
        GateClass::Middle
    } else {
        GateClass::Neither
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedStep {
    pub gate: CnotGate,
    pub class: GateClass,
    /// Matrix after this gate.
    pub state: BinMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedSynthesis {
    n: usize,
    steps: Vec<ClassifiedStep>,
}

impl ClassifiedSynthesis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[ClassifiedStep] {
        &self.steps
    }

    pub fn count(&self, class: GateClass) -> usize {
        self.steps.iter().filter(|s| s.class == class).count()
    }

    pub fn links(&self) -> usize {
        self.count(GateClass::Link)
    }

    pub fn middles(&self) -> usize {
        self.count(GateClass::Middle)
    }

    pub fn cuts(&self) -> usize {
        self.count(GateClass::Cut)
    }

    pub fn neithers(&self) -> usize {
        self.count(GateClass::Neither)
    }

    /// One letter per gate, e.g. `"LMCLMC"`.
    pub fn pattern(&self) -> String {
        self.steps.iter().map(|s| s.class.letter()).collect()
    }

    pub fn gate_graph(&self, class: GateClass) -> GateGraph {
        GateGraph::from_gates(
            self.n,
            self.steps
                .iter()
                .filter(|s| s.class == class)
                .map(|s| s.gate),
        )
    }
}

/// Replays `s` from the identity and classifies every gate.
pub fn classify_synthesis(s: &Synthesis) -> ClassifiedSynthesis {
    let mut state = BinMatrix::identity(s.n()).expect("synthesis dimension is valid");
    let steps = s
        .gates()
        .iter()
        .map(|&gate| {
            let class = classify_gate(&state, gate);
            state.apply_cnot_in_place(gate);
            ClassifiedStep { gate, class, state }
        })
        .collect();
    ClassifiedSynthesis { n: s.n(), steps }
}

/// Undirected graph on qubits with one edge per `{control, target}` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GateGraph {
    pub fn from_gates(n: usize, gates: impl IntoIterator<Item = CnotGate>) -> Self {
        let edges = gates
            .into_iter()
            .map(|g| {
                let (a, b) = (g.control_index(), g.target_index());
                (a.min(b), a.max(b))
            })
            .collect();
        Self { n, edges }
    }

    /// Edges as 0-indexed `(lo, hi)` pairs.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_spanning_tree(&self) -> bool {
        if self.edges.len() + 1 != self.n {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }

    pub fn is_star(&self) -> bool {
        if !self.is_spanning_tree() {
            return false;
        }
        self.n <= 2 || self.degrees().iter().any(|&d| d + 1 == self.n)
    }

    pub fn is_path(&self) -> bool {
        self.is_spanning_tree() && self.degrees().iter().all(|&d| d <= 2)
    }

    /// `"star"`, `"path"`, `"star+path"`, `"tree"` or `"other"`.
    pub fn shape(&self) -> &'static str {
        match (self.is_spanning_tree(), self.is_star(), self.is_path()) {
            (true, true, true) => "star+path",
            (true, true, false) => "star",
            (true, false, true) => "path",
            (true, false, false) => "tree",
            _ => "other",
        }
    }
}
