//! Bit-packed square matrices over GF(2) and CNOT gates acting on them.
//!
//! Storage is 0-indexed: bit `j` of `rows[i]` holds `M[i][j]`. Qubit labels
//! shown to users (gate display, text formats) are 1-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension; one row fits a `u32`.
pub const MAX_QUBITS: usize = 32;

/// Largest dimension whose matrices have a dense `u32` key.
pub const MAX_KEY_QUBITS: usize = 5;

#[inline]
pub(crate) fn row_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::DimensionOutOfRange { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// An `n x n` matrix over GF(2).
///
/// Most matrices handled by this crate are invertible, but the type does not
/// require it: `M ∧ M⁻ᵀ + I` is frequently singular.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n: usize,
    rows: [u32; MAX_QUBITS],
}

impl BinMatrix {
    pub fn identity(n: usize) -> Result<Self> {
        check_dimension(n)?;
        let mut rows = [0u32; MAX_QUBITS];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        Ok(Self { n, rows })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_dimension(n)?;
        Ok(Self {
            n,
            rows: [0; MAX_QUBITS],
        })
    }

    /// Builds an invertible matrix from packed rows, rejecting singular input.
    pub fn from_rows(n: usize, rows: &[u32]) -> Result<Self> {
        let m = Self::from_raw_rows(n, rows)?;
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    /// Builds a matrix from packed rows without an invertibility check.
    pub fn from_raw_rows(n: usize, rows: &[u32]) -> Result<Self> {
        check_dimension(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        let mask = row_mask(n);
        let mut packed = [0u32; MAX_QUBITS];
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::RowTooWide { row: i + 1, n });
            }
            packed[i] = r;
        }
        Ok(Self { n, rows: packed })
    }

    /// Builds a matrix from strings of `0`/`1`, one per row, column 1 first.
    ///
    /// ```
    /// let m = lmc::BinMatrix::from_strs(&["010", "001", "100"]).unwrap();
    /// assert_eq!(m.diag_zero_count(), 3);
    /// ```
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        check_dimension(n)?;
        let mut packed = Vec::with_capacity(n);
        for (i, s) in rows.iter().enumerate() {
            let bytes = s.as_bytes();
            if bytes.len() != n {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {n} columns, found {}", bytes.len()),
                });
            }
            let mut r = 0u32;
            for (j, b) in bytes.iter().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => r |= 1 << j,
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: format!("invalid character {:?}", *b as char),
                        })
                    }
                }
            }
            packed.push(r);
        }
        Self::from_raw_rows(n, &packed)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "index out of range");
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Column `j` packed as a bitset over rows.
    pub fn column(&self, j: usize) -> u32 {
        self.rows()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    #[inline]
    pub(crate) fn set_row_raw(&mut self, i: usize, row: u32) {
        self.rows[i] = row;
    }

    /// Row `target ^= row control`, 0-indexed, no validation.
    #[inline]
    pub(crate) fn add_row(&mut self, control: usize, target: usize) {
        self.rows[target] ^= self.rows[control];
    }

    pub fn apply_cnot(&self, gate: CnotGate) -> Result<Self> {
        gate.check(self.n)?;
        let mut out = *self;
        out.add_row(gate.control, gate.target);
        Ok(out)
    }

    /// In-place gate application for callers that have already validated `gate`.
    #[inline]
    pub fn apply_cnot_in_place(&mut self, gate: CnotGate) {
        debug_assert!(gate.check(self.n).is_ok());
        self.add_row(gate.control, gate.target);
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = Self {
            n: self.n,
            rows: [0; MAX_QUBITS],
        };
        for i in 0..self.n {
            let mut bits = self.rows[i];
            let mut acc = 0u32;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                acc ^= other.rows[j];
                bits &= bits - 1;
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination on `[M | I]`, packed into one `u64` per row.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut aug = [0u64; MAX_QUBITS];
        for (i, (a, &r)) in aug.iter_mut().zip(&self.rows[..n]).enumerate() {
            *a = r as u64 | (1u64 << (32 + i));
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| (aug[r] >> col) & 1 == 1)
                .ok_or(Error::Singular)?;
            aug.swap(col, pivot);
            let p = aug[col];
            for (r, row) in aug.iter_mut().enumerate().take(n) {
                if r != col && (*row >> col) & 1 == 1 {
                    *row ^= p;
                }
            }
        }
        let mut out = Self {
            n,
            rows: [0; MAX_QUBITS],
        };
        for (o, &a) in out.rows.iter_mut().zip(&aug[..n]) {
            *o = (a >> 32) as u32;
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        let mut rows = self.rows;
        let n = self.n;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                return false;
            };
            rows.swap(col, pivot);
            let p = rows[col];
            for row in rows.iter_mut().take(n).skip(col + 1) {
                if (*row >> col) & 1 == 1 {
                    *row ^= p;
                }
            }
        }
        true
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows = self.rows;
        let n = self.n;
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            let p = rows[rank];
            for row in rows.iter_mut().take(n).skip(rank + 1) {
                if (*row >> col) & 1 == 1 {
                    *row ^= p;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self {
            n: self.n,
            rows: [0; MAX_QUBITS],
        };
        for i in 0..self.n {
            let mut bits = self.rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.rows[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        out
    }

    /// Entrywise sum over GF(2).
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = *self;
        for i in 0..self.n {
            out.rows[i] ^= other.rows[i];
        }
        Ok(out)
    }

    /// Entrywise product.
    pub fn and(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = *self;
        for i in 0..self.n {
            out.rows[i] &= other.rows[i];
        }
        Ok(out)
    }

    /// Number of zeroes on the main diagonal.
    pub fn diag_zero_count(&self) -> usize {
        (0..self.n).filter(|&i| !self.get(i, i)).count()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] == 1 << i)
    }

    pub fn is_zero(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }

    /// Row-major key: bit `i * n + j` holds `M[i][j]`.
    ///
    /// # Panics
    ///
    /// Panics if `n > 5`.
    #[inline]
    pub fn encode(&self) -> u32 {
        assert!(self.n <= MAX_KEY_QUBITS, "dense keys need n <= 5");
        let mut key = 0u32;
        for i in 0..self.n {
            key |= self.rows[i] << (i * self.n);
        }
        key
    }

    /// Inverse of [`BinMatrix::encode`]. No invertibility check.
    ///
    /// # Panics
    ///
    /// Panics if `n` is 0 or greater than 5.
    #[inline]
    pub fn decode(key: u32, n: usize) -> Self {
        assert!(
            (1..=MAX_KEY_QUBITS).contains(&n),
            "dense keys need 1 <= n <= 5"
        );
        let mask = row_mask(n);
        let mut rows = [0u32; MAX_QUBITS];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = (key >> (i * n)) & mask;
        }
        Self { n, rows }
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMatrix[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, " ")?;
            }
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `CNOT(control, target)`: adds the control row to the target row.
///
/// Constructed from 1-indexed labels, stored 0-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CnotGate {
    control: usize,
    target: usize,
}

impl CnotGate {
    /// Gate from 1-indexed labels, as in `CNOT(1, 2)`.
    pub fn new(control: usize, target: usize) -> Result<Self> {
        if control == 0 {
            return Err(Error::LabelOutOfRange { label: 0, n: 0 });
        }
        if target == 0 {
            return Err(Error::LabelOutOfRange { label: 0, n: 0 });
        }
        Self::from_indices(control - 1, target - 1)
    }

    /// Gate from 0-indexed positions.
    pub fn from_indices(control: usize, target: usize) -> Result<Self> {
        if control == target {
            return Err(Error::SameControlTarget(control + 1));
        }
        Ok(Self { control, target })
    }

    /// 1-indexed control label.
    pub fn control(&self) -> usize {
        self.control + 1
    }

    /// 1-indexed target label.
    pub fn target(&self) -> usize {
        self.target + 1
    }

    pub fn control_index(&self) -> usize {
        self.control
    }

    pub fn target_index(&self) -> usize {
        self.target
    }

    pub fn check(&self, n: usize) -> Result<()> {
        for idx in [self.control, self.target] {
            if idx >= n {
                return Err(Error::LabelOutOfRange { label: idx + 1, n });
            }
        }
        Ok(())
    }

    /// Every gate on `n` qubits, ordered by (control, target).
    pub fn all(n: usize) -> impl Iterator<Item = CnotGate> {
        (0..n).flat_map(move |c| {
            (0..n).filter(move |&t| t != c).map(move |t| CnotGate {
                control: c,
                target: t,
            })
        })
    }
}

impl fmt::Display for CnotGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CNOT({}, {})", self.control(), self.target())
    }
}

/// An ordered gate list applied left to right to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis {
    n: usize,
    gates: Vec<CnotGate>,
}

impl Synthesis {
    pub fn new(n: usize, gates: Vec<CnotGate>) -> Result<Self> {
        check_dimension(n)?;
        for g in &gates {
            g.check(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Convenience constructor from 1-indexed `(control, target)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let gates = pairs
            .iter()
            .map(|&(c, t)| CnotGate::new(c, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, gates)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CnotGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: CnotGate) -> Result<()> {
        gate.check(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Synthesis) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Replays the gates on the identity.
    pub fn replay(&self) -> BinMatrix {
        let mut m = BinMatrix::identity(self.n).expect("dimension validated at construction");
        for &g in &self.gates {
            m.add_row(g.control, g.target);
        }
        m
    }

    /// Matrices after each prefix, starting with the identity (`len + 1` entries).
    pub fn states(&self) -> Vec<BinMatrix> {
        let mut m = BinMatrix::identity(self.n).expect("dimension validated at construction");
        let mut out = Vec::with_capacity(self.gates.len() + 1);
        out.push(m);
        for &g in &self.gates {
            m.add_row(g.control, g.target);
            out.push(m);
        }
        out
    }
}
