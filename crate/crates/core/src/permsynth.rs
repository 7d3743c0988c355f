//! Syntheses of permutation matrices in `3(n - k)` CNOT gates, `k` being the
//! number of cycles.
//!
//! Each n-cycle construction is written over canonical labels `1..=L` and then
//! relabelled onto the caller's qubits. The relabelling follows the cycle the
//! canonical block actually produces, so the result always sends
//! `cycle_qubits[k]` to `cycle_qubits[k + 1]` regardless of the block's own
//! orientation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{CnotGate, Synthesis};
use crate::perm::Permutation;

/// Shape of a set of `n - 1` gates viewed as an undirected graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Star,
    Path,
}

/// The five n-cycle constructions, in table order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum ConstructionId {
    #[default]
    StarStarStar,
    PathPathPath,
    StarPathStar,
    StarStarPath,
    StarPathPath,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 5] = [
        ConstructionId::StarStarStar,
        ConstructionId::PathPathPath,
        ConstructionId::StarPathStar,
        ConstructionId::StarStarPath,
        ConstructionId::StarPathPath,
    ];

    /// 1-based row in the construction table.
    pub fn row(self) -> usize {
        match self {
            ConstructionId::StarStarStar => 1,
            ConstructionId::PathPathPath => 2,
            ConstructionId::StarPathStar => 3,
            ConstructionId::StarStarPath => 4,
            ConstructionId::StarPathPath => 5,
        }
    }

    /// Published (link, middle, cut) gate-graph shapes.
    pub fn listed_shapes(self) -> [Shape; 3] {
        use Shape::*;
        match self {
            ConstructionId::StarStarStar => [Star, Star, Star],
            ConstructionId::PathPathPath => [Path, Path, Path],
            ConstructionId::StarPathStar => [Star, Path, Star],
            ConstructionId::StarStarPath => [Star, Star, Path],
            ConstructionId::StarPathPath => [Star, Path, Path],
        }
    }

    /// Published link/middle/cut ordering for a cycle of length `len`.
    pub fn listed_pattern(self, len: usize) -> String {
        let k = len.saturating_sub(1);
        match self {
            ConstructionId::StarStarStar | ConstructionId::PathPathPath => "LMC".repeat(k),
            ConstructionId::StarPathStar => {
                format!("{}{}{}", "L".repeat(k), "M".repeat(k), "C".repeat(k))
            }
            ConstructionId::StarStarPath => format!("{}{}", "LM".repeat(k), "C".repeat(k)),
            ConstructionId::StarPathPath => format!("{}{}", "L".repeat(k), "MC".repeat(k)),
        }
    }

    /// The pseudocode block as 1-indexed `(control, target)` pairs on `1..=len`.
    pub fn canonical_gates(self, len: usize) -> Vec<(usize, usize)> {
        let n = len;
        let mut g = Vec::with_capacity(3 * n.saturating_sub(1));
        match self {
            ConstructionId::StarStarStar => {
                for i in 2..=n {
                    g.extend([(1, i), (i, 1), (1, i)]);
                }
            }
            ConstructionId::PathPathPath => {
                for i in 1..n {
                    g.extend([(n - i, n - i + 1), (n - i + 1, n - i), (n - i, n - i + 1)]);
                }
            }
            ConstructionId::StarPathStar => {
                g.extend((1..n).map(|i| (i, i + 1)));
                g.extend((1..n).map(|i| (i + 1, i)));
                g.extend((1..n).map(|i| (i, n)));
            }
            ConstructionId::StarStarPath => {
                for i in 1..n {
                    g.extend([(n - i, n), (n, n - i)]);
                }
                g.push((1, n));
                g.extend((1..n - 1).map(|i| (i + 1, i)));
            }
            ConstructionId::StarPathPath => {
                g.extend((2..=n).map(|i| (1, i)));
                for i in 1..n {
                    g.extend([(i + 1, i), (i, i + 1)]);
                }
            }
        }
        g
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row{}", self.row())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let row = s.strip_prefix("row").unwrap_or(s);
        match row {
            "1" => Ok(ConstructionId::StarStarStar),
            "2" => Ok(ConstructionId::PathPathPath),
            "3" => Ok(ConstructionId::StarPathStar),
            "4" => Ok(ConstructionId::StarStarPath),
            "5" => Ok(ConstructionId::StarPathPath),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown construction {s:?} (expected row1..row5)"),
            }),
        }
    }
}

/// Synthesis of the cycle `cycle_qubits[0] -> cycle_qubits[1] -> ... -> cycle_qubits[0]`
/// (0-indexed qubits) on `n` qubits, using `3(len - 1)` gates.
pub fn synth_cycle(
    n: usize,
    cycle_qubits: &[usize],
    construction: ConstructionId,
) -> Result<Synthesis> {
    let len = cycle_qubits.len();
    if len < 2 {
        return Err(Error::CycleTooShort);
    }
    let mut seen = vec![false; n];
    for &q in cycle_qubits {
        if q >= n {
            return Err(Error::LabelOutOfRange { label: q + 1, n });
        }
        if seen[q] {
            return Err(Error::DuplicateQubit(q + 1));
        }
        seen[q] = true;
    }

    let canonical = Synthesis::from_pairs(len, &construction.canonical_gates(len))?;
    let produced = Permutation::from_matrix(&canonical.replay())
        .expect("construction blocks replay to permutation matrices");
    debug_assert_eq!(produced.cycle_count(), 1);

    // Walk the produced cycle from label 0 and pin its k-th element to cycle_qubits[k].
    let mut relabel = vec![0usize; len];
    let mut x = 0;
    for &q in cycle_qubits {
        relabel[x] = q;
        x = produced.apply(x);
    }

    let gates = canonical
        .gates()
        .iter()
        .map(|g| CnotGate::from_indices(relabel[g.control_index()], relabel[g.target_index()]))
        .collect::<Result<Vec<_>>>()?;
    Synthesis::new(n, gates)
}

/// Synthesis of `P_σ` by running `construction` on every nontrivial cycle.
pub fn synth_permutation(sigma: &Permutation, construction: ConstructionId) -> Result<Synthesis> {
    let n = sigma.n();
    let mut out = Synthesis::empty(n)?;
    for cycle in sigma.cycles().into_iter().filter(|c| c.len() > 1) {
        out.extend(&synth_cycle(n, &cycle, construction)?)?;
    }
    Ok(out)
}

/// Appends a swap of qubits `i` and `j` (0-indexed) as three CNOTs.
///
/// When `s` synthesizes `P_σ` and `i`, `j` lie in different cycles of `σ`, the
/// result synthesizes a permutation with one cycle fewer.
pub fn join_cycles(s: &Synthesis, i: usize, j: usize) -> Result<Synthesis> {
    let a = CnotGate::from_indices(i, j)?;
    let b = CnotGate::from_indices(j, i)?;
    let mut out = s.clone();
    for g in [a, b, a] {
        out.push(g)?;
    }
    Ok(out)
}
