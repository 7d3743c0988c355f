//! Rivers of a matrix and the `c_perfect` bound on middle-gate components.
//!
//! A river of `M` is a permutation `σ` with `M[i][σ(i)] = 1` for every row.
//! Enumerating them is factorial; production code only needs their parity
//! per entry, which is `M ∧ M⁻ᵀ` (the GF(2) cofactor matrix masked by `M`).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BinMatrix;
use crate::perm::Permutation;

/// Largest dimension accepted by the brute-force river enumerator.
pub const MAX_RIVER_QUBITS: usize = 8;

/// The rivers of a matrix in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiverSet {
    n: usize,
    rivers: Vec<Permutation>,
}

impl RiverSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rivers.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.rivers.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.rivers.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.rivers
    }
}

/// Every river of `m` by depth-first search over free columns.
pub fn enumerate_rivers(m: &BinMatrix) -> Result<RiverSet> {
    let n = m.n();
    if n > MAX_RIVER_QUBITS {
        return Err(Error::TooLargeForOracle {
            n,
            max: MAX_RIVER_QUBITS,
        });
    }
    let mut rivers = Vec::new();
    let mut images = vec![0usize; n];
    dfs(m, 0, 0, &mut images, &mut rivers);
    Ok(RiverSet { n, rivers })
}

fn dfs(m: &BinMatrix, row: usize, used: u32, images: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    if row == m.n() {
        out.push(Permutation::from_images(images.clone()).expect("dfs builds bijections"));
        return;
    }
    let mut free = m.row(row) & !used;
    while free != 0 {
        let col = free.trailing_zeros() as usize;
        free &= free - 1;
        images[row] = col;
        dfs(m, row + 1, used | (1 << col), images, out);
    }
}

/// `M ∧ M⁻ᵀ + I`.
pub fn mprime(m: &BinMatrix) -> Result<BinMatrix> {
    let inv_t = m.inverse()?.transpose();
    let masked = m.and(&inv_t)?;
    masked.xor(&BinMatrix::identity(m.n())?)
}

/// Counts all-zero rows and disjoint pairs of equal nonzero rows.
///
/// A value shared by `k` rows contributes `⌊k/2⌋` pairs.
pub fn emp_dup(m: &BinMatrix) -> (usize, usize) {
    let mut rows = [0u32; crate::gf2::MAX_QUBITS];
    let n = m.n();
    rows[..n].copy_from_slice(m.rows());
    let rows = &mut rows[..n];
    rows.sort_unstable();
    let mut emp = 0;
    let mut dup = 0;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && rows[j] == rows[i] {
            j += 1;
        }
        if rows[i] == 0 {
            emp += j - i;
        } else {
            dup += (j - i) / 2;
        }
        i = j;
    }
    (emp, dup)
}

/// How the fractional `c_perfect` turns into an integer middle-gate bound.
///
/// `Floor` uses `n - ⌊c⌋`; `Exact` keeps the rational and takes `⌈n - c⌉`.
/// The two agree for every input, since `n` is an integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MiddleRounding {
    #[default]
    Floor,
    Exact,
}

/// Result of the `c_perfect` computation for one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CperfectReport {
    pub n: usize,
    pub mprime: BinMatrix,
    pub emp: usize,
    pub dup: usize,
    /// `c_perfect` is `thirds / 3`.
    pub thirds: usize,
    /// `⌊c_perfect⌋`.
    pub cperfect: usize,
    /// `n - ⌊c_perfect⌋`.
    pub middle_lower_bound: usize,
    /// Dimension of the left null space of `mprime`. Indicator vectors of
    /// distinct middle-gate components are independent left null vectors, so
    /// this also caps the component count.
    pub nullity: usize,
}

impl CperfectReport {
    pub fn from_mprime(mprime: BinMatrix) -> Self {
        let n = mprime.n();
        let (emp, dup) = emp_dup(&mprime);
        let thirds = n + 2 * emp + dup;
        let cperfect = thirds / 3;
        Self {
            n,
            mprime,
            emp,
            dup,
            thirds,
            cperfect,
            middle_lower_bound: n.saturating_sub(cperfect),
            nullity: n - mprime.rank(),
        }
    }

    pub fn cperfect_f64(&self) -> f64 {
        self.thirds as f64 / 3.0
    }

    /// `c_perfect` as a reduced fraction string, e.g. `"5/3"` or `"1"`.
    pub fn cperfect_fraction(&self) -> String {
        if self.thirds.is_multiple_of(3) {
            (self.thirds / 3).to_string()
        } else {
            format!("{}/3", self.thirds)
        }
    }

    pub fn middle_bound(&self, rounding: MiddleRounding) -> usize {
        middle_bound_from_thirds(self.n, self.thirds, rounding)
    }

    /// `n - min{⌊c_perfect⌋, nullity}`.
    pub fn capped_middle_bound(&self) -> usize {
        self.n - self.cperfect.min(self.nullity)
    }
}

/// Middle-gate lower bound `n - c` from `c = thirds / 3`.
pub fn middle_bound_from_thirds(n: usize, thirds: usize, rounding: MiddleRounding) -> usize {
    match rounding {
        MiddleRounding::Floor => n.saturating_sub(thirds / 3),
        MiddleRounding::Exact => {
            // ⌈(3n - thirds) / 3⌉, clamped at zero
            let diff = (3 * n).saturating_sub(thirds);
            diff.div_ceil(3)
        }
    }
}

impl fmt::Display for CperfectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mprime:")?;
        write!(f, "{}", self.mprime)?;
        writeln!(f, "emp: {}", self.emp)?;
        writeln!(f, "dup: {}", self.dup)?;
        writeln!(
            f,
            "c_perfect: {} ({:.4})",
            self.cperfect_fraction(),
            self.cperfect_f64()
        )?;
        writeln!(f, "c_perfect_floor: {}", self.cperfect)?;
        writeln!(f, "middle_lower_bound: {}", self.middle_lower_bound)?;
        writeln!(f, "nullity: {}", self.nullity)?;
        writeln!(
            f,
            "capped_middle_lower_bound: {}",
            self.capped_middle_bound()
        )
    }
}

pub fn cperfect(m: &BinMatrix) -> Result<CperfectReport> {
    Ok(CperfectReport::from_mprime(mprime(m)?))
}

/// `true` when `M ∧ M⁻ᵀ + I = 0` for a non-identity `M`, which makes the
/// middle-gate bound vacuous.
pub fn glitch_detect(m: &BinMatrix) -> Result<bool> {
    Ok(!m.is_identity() && mprime(m)?.is_zero())
}

/// Whether the rows of `M ∧ M⁻ᵀ + I` indexed by `component` (0-indexed) sum to zero.
pub fn check_component_nullspace(m: &BinMatrix, component: &[usize]) -> Result<bool> {
    let mp = mprime(m)?;
    let mut acc = 0u32;
    for &i in component {
        if i >= m.n() {
            return Err(Error::LabelOutOfRange {
                label: i + 1,
                n: m.n(),
            });
        }
        acc ^= mp.row(i);
    }
    Ok(acc == 0)
}
