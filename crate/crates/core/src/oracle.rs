//! Exhaustive breadth-first search over GL(n, 2) for `n <= 5`, and the
//! bound-versus-size census built on top of it.
//!
//! The size table is a dense byte array indexed by the row-major matrix key
//! (`2^(n²)` entries, 32 MiB at `n = 5`). Frontier expansion runs on the
//! rayon pool; each cell is claimed exactly once by a compare-exchange on the
//! sentinel, so the finished table does not depend on scheduling.

use std::io::{Read, Write};
use std::sync::atomic::{AtomicU8, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bound::{lmc_bound_with, BoundOptions};
use crate::error::{Error, Result};
use crate::gf2::{row_mask, BinMatrix, CnotGate, Synthesis, MAX_KEY_QUBITS};

/// Marks non-invertible (unreached) keys.
pub const SENTINEL: u8 = 0xFF;

/// Magic prefix of serialized size tables.
pub const CACHE_MAGIC: &[u8; 4] = b"LMC1";

/// `|GL(n, 2)|` for `n = 0..=5`.
pub const GL_ORDER: [u64; 6] = [1, 1, 6, 168, 20160, 9_999_360];

/// Exact CNOT counts for every invertible `n x n` matrix.
pub struct SizeTable {
    n: usize,
    sizes: Vec<u8>,
    reachable: usize,
}

fn check_oracle_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_KEY_QUBITS {
        return Err(Error::TooLargeForOracle {
            n,
            max: MAX_KEY_QUBITS,
        });
    }
    Ok(())
}

/// Applies `CNOT(control, target)` (0-indexed) directly to a key.
#[inline]
pub fn apply_to_key(key: u32, n: usize, control: usize, target: usize) -> u32 {
    let row = (key >> (control * n)) & row_mask(n);
    key ^ (row << (target * n))
}

impl SizeTable {
    /// Breadth-first search from the identity using every `CNOT(c, t)`.
    pub fn build(n: usize) -> Result<Self> {
        check_oracle_n(n)?;
        let cells: Vec<AtomicU8> = (0..1usize << (n * n))
            .map(|_| AtomicU8::new(SENTINEL))
            .collect();
        let gates: Vec<(usize, usize)> = CnotGate::all(n)
            .map(|g| (g.control_index(), g.target_index()))
            .collect();

        let start = BinMatrix::identity(n)?.encode();
        cells[start as usize].store(0, Ordering::Relaxed);
        let mut frontier = vec![start];
        let mut reachable = 1usize;
        let mut level = 0u8;
        while !frontier.is_empty() {
            let next_level = level + 1;
            let next: Vec<u32> = frontier
                .par_iter()
                .flat_map_iter(|&key| {
                    let cells = &cells;
                    gates.iter().filter_map(move |&(c, t)| {
                        let k = apply_to_key(key, n, c, t);
                        cells[k as usize]
                            .compare_exchange(
                                SENTINEL,
                                next_level,
                                Ordering::Relaxed,
                                Ordering::Relaxed,
                            )
                            .ok()
                            .map(|_| k)
                    })
                })
                .collect();
            reachable += next.len();
            frontier = next;
            level = next_level;
        }
        let sizes = cells.into_iter().map(AtomicU8::into_inner).collect();
        Ok(Self {
            n,
            sizes,
            reachable,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reachable(&self) -> usize {
        self.reachable
    }

    /// Raw table: `sizes()[key]` is `s(M)` or [`SENTINEL`].
    pub fn sizes(&self) -> &[u8] {
        &self.sizes
    }

    pub fn size_of_key(&self, key: u32) -> Option<u8> {
        match self.sizes[key as usize] {
            SENTINEL => None,
            s => Some(s),
        }
    }

    fn check_matrix(&self, m: &BinMatrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::TableMismatch {
                table: self.n,
                matrix: m.n(),
            });
        }
        Ok(())
    }

    /// `s(M)`.
    pub fn exact_size(&self, m: &BinMatrix) -> Result<usize> {
        self.check_matrix(m)?;
        self.size_of_key(m.encode())
            .map(usize::from)
            .ok_or(Error::Singular)
    }

    /// A minimal synthesis of `M`, found by walking down to the identity
    /// through the first (in `(control, target)` order) size-decreasing gate.
    pub fn witness_synthesis(&self, m: &BinMatrix) -> Result<Synthesis> {
        let mut remaining = self.exact_size(m)?;
        let mut key = m.encode();
        let mut gates = Vec::with_capacity(remaining);
        while remaining > 0 {
            let gate = CnotGate::all(self.n)
                .find(|g| {
                    let k = apply_to_key(key, self.n, g.control_index(), g.target_index());
                    self.sizes[k as usize] as usize == remaining - 1
                })
                .expect("every non-identity cell has a smaller neighbour");
            key = apply_to_key(key, self.n, gate.control_index(), gate.target_index());
            gates.push(gate);
            remaining -= 1;
        }
        gates.reverse();
        Synthesis::new(self.n, gates)
    }

    /// Number of matrices of each size, indexed by size.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = Vec::new();
        for &s in &self.sizes {
            if s != SENTINEL {
                let s = s as usize;
                if hist.len() <= s {
                    hist.resize(s + 1, 0);
                }
                hist[s] += 1;
            }
        }
        hist
    }

    /// Invertible keys with their sizes, in key order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != SENTINEL)
            .map(|(k, &s)| (k as u32, s))
    }

    /// Writes `"LMC1"`, `n` as one byte, then the raw table.
    pub fn write_cache<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&[self.n as u8])?;
        w.write_all(&self.sizes)?;
        w.flush()
    }

    pub fn read_cache<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 5];
        r.read_exact(&mut header)
            .map_err(|e| Error::BadCache(e.to_string()))?;
        if &header[..4] != CACHE_MAGIC {
            return Err(Error::BadCache("missing LMC1 magic".into()));
        }
        let n = header[4] as usize;
        check_oracle_n(n).map_err(|e| Error::BadCache(e.to_string()))?;
        let mut sizes = Vec::with_capacity(1 << (n * n));
        r.read_to_end(&mut sizes)
            .map_err(|e| Error::BadCache(e.to_string()))?;
        if sizes.len() != 1 << (n * n) {
            return Err(Error::BadCache(format!(
                "expected {} table bytes, found {}",
                1usize << (n * n),
                sizes.len()
            )));
        }
        let reachable = sizes.iter().filter(|&&s| s != SENTINEL).count();
        if reachable as u64 != GL_ORDER[n] {
            return Err(Error::BadCache(format!(
                "table has {reachable} entries, expected {}",
                GL_ORDER[n]
            )));
        }
        Ok(Self {
            n,
            sizes,
            reachable,
        })
    }
}

/// `counts[bound][size]` over every invertible matrix of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub n: usize,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn from_counts(n: usize, counts: Vec<Vec<u64>>) -> Self {
        Self { n, counts }
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, bound: usize, size: usize) -> u64 {
        self.counts
            .get(bound)
            .and_then(|row| row.get(size))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Cells where the bound exceeds the size (must be empty).
    pub fn unsound_cells(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (b, row) in self.counts.iter().enumerate() {
            for (s, &c) in row.iter().enumerate() {
                if b > s && c > 0 {
                    out.push((b, s, c));
                }
            }
        }
        out
    }

    /// CSV with a header row of sizes and a leading column of bounds.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::from("bound\\size");
        for s in 0..d {
            out.push_str(&format!(",{s}"));
        }
        out.push('\n');
        for b in 0..d {
            out.push_str(&b.to_string());
            for s in 0..d {
                out.push_str(&format!(",{}", self.get(b, s)));
            }
            out.push('\n');
        }
        out
    }

    /// Column-normalised fractions: each size column sums to one.
    pub fn heatmap_csv(&self) -> String {
        let d = self.dim();
        let col_totals: Vec<u64> = (0..d)
            .map(|s| (0..d).map(|b| self.get(b, s)).sum())
            .collect();
        let mut out = String::from("bound\\size");
        for s in 0..d {
            out.push_str(&format!(",{s}"));
        }
        out.push('\n');
        for b in 0..d {
            out.push_str(&b.to_string());
            for (s, &total) in col_totals.iter().enumerate() {
                let frac = if total == 0 {
                    0.0
                } else {
                    self.get(b, s) as f64 / total as f64
                };
                out.push_str(&format!(",{frac:.6}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn metrics(&self) -> Metrics {
        metrics(self)
    }
}

/// Builds the confusion matrix of the LMC bound against exact size.
pub fn confusion(table: &SizeTable, opts: BoundOptions) -> ConfusionMatrix {
    let n = table.n();
    let dim = 3 * (n - 1) + 1;
    let counts = table
        .sizes()
        .par_iter()
        .enumerate()
        .filter(|(_, &s)| s != SENTINEL)
        .fold(
            || vec![vec![0u64; dim]; dim],
            |mut acc, (key, &size)| {
                let m = BinMatrix::decode(key as u32, n);
                let r = lmc_bound_with(&m, opts).expect("table entries are invertible");
                grow(&mut acc, r.bound.max(size as usize) + 1);
                acc[r.bound][size as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; dim]; dim],
            |mut a, b| {
                grow(&mut a, b.len());
                for (ra, rb) in a.iter_mut().zip(&b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    ConfusionMatrix { n, counts }
}

fn grow(counts: &mut Vec<Vec<u64>>, dim: usize) {
    if counts.len() >= dim {
        return;
    }
    for row in counts.iter_mut() {
        row.resize(dim, 0);
    }
    counts.resize(dim, vec![0; dim]);
}

/// Agreement statistics between bound and size; `Δ = size - bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub total: u64,
    /// Fraction of matrices with `Δ = 0`.
    pub exact: f64,
    pub within_1: f64,
    pub within_2: f64,
    /// Root-mean-square of `Δ`, i.e. the spread of the bound around the exact size.
    pub sigma: f64,
    /// Population standard deviation of `Δ` about its own mean.
    pub delta_std: f64,
    /// Mean of `|Δ|`.
    pub mad: f64,
    /// Square of the Pearson correlation.
    pub r_squared: f64,
    /// Pearson correlation between bound and size.
    pub pcc: f64,
}

/// Definitions printed alongside reported metrics.
pub const METRIC_DEFINITIONS: &str = "delta = size - bound; sigma = sqrt(mean delta^2); \
delta_std = population std dev of delta; mad = mean |delta|; pcc = Pearson correlation of (bound, size); r_squared = pcc^2";

pub fn metrics(cm: &ConfusionMatrix) -> Metrics {
    let d = cm.dim();
    let mut total = 0f64;
    let (mut exact, mut w1, mut w2) = (0f64, 0f64, 0f64);
    let (mut sd, mut sdd, mut sad) = (0f64, 0f64, 0f64);
    let (mut sb, mut ss, mut sbb, mut sss, mut sbs) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for b in 0..d {
        for s in 0..d {
            let w = cm.get(b, s) as f64;
            if w == 0.0 {
                continue;
            }
            let (bf, sf) = (b as f64, s as f64);
            let delta = sf - bf;
            total += w;
            if delta == 0.0 {
                exact += w;
            }
            if delta.abs() <= 1.0 {
                w1 += w;
            }
            if delta.abs() <= 2.0 {
                w2 += w;
            }
            sd += w * delta;
            sdd += w * delta * delta;
            sad += w * delta.abs();
            sb += w * bf;
            ss += w * sf;
            sbb += w * bf * bf;
            sss += w * sf * sf;
            sbs += w * bf * sf;
        }
    }
    if total == 0.0 {
        return Metrics {
            total: 0,
            exact: 0.0,
            within_1: 0.0,
            within_2: 0.0,
            sigma: 0.0,
            delta_std: 0.0,
            mad: 0.0,
            r_squared: 0.0,
            pcc: 0.0,
        };
    }
    let mean_d = sd / total;
    let sigma = (sdd / total).sqrt();
    let delta_std = (sdd / total - mean_d * mean_d).max(0.0).sqrt();
    let cov = sbs / total - (sb / total) * (ss / total);
    let var_b = sbb / total - (sb / total).powi(2);
    let var_s = sss / total - (ss / total).powi(2);
    // A degenerate distribution with the bound tracking size exactly is a perfect fit.
    let pcc = if var_b <= 0.0 || var_s <= 0.0 {
        if sdd == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        cov / (var_b.sqrt() * var_s.sqrt())
    };
    Metrics {
        total: total as u64,
        exact: exact / total,
        within_1: w1 / total,
        within_2: w2 / total,
        sigma,
        delta_std,
        mad: sad / total,
        r_squared: pcc * pcc,
        pcc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        for n in 1..=3 {
            let t = SizeTable::build(n).unwrap();
            assert_eq!(t.reachable() as u64, GL_ORDER[n]);
        }
        assert!(SizeTable::build(6).is_err());
        assert!(SizeTable::build(0).is_err());
    }

    #[test]
    fn three_qubit_maximum() {
        let t = SizeTable::build(3).unwrap();
        let hist = t.histogram();
        assert_eq!(hist.len(), 7);
        assert_eq!(hist[6], 2);
        let p = BinMatrix::from_strs(&["010", "001", "100"]).unwrap();
        assert_eq!(t.exact_size(&p), Ok(6));
        let w = t.witness_synthesis(&p).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w.replay(), p);
    }

    #[test]
    fn lookup_errors() {
        let t = SizeTable::build(2).unwrap();
        assert!(t.exact_size(&BinMatrix::identity(3).unwrap()).is_err());
        let singular = BinMatrix::from_strs(&["11", "11"]).unwrap();
        assert_eq!(t.exact_size(&singular), Err(Error::Singular));
    }

    #[test]
    fn cache_round_trip() {
        let t = SizeTable::build(3).unwrap();
        let mut buf = Vec::new();
        t.write_cache(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"LMC1");
        assert_eq!(buf[4], 3);
        assert_eq!(buf.len(), 5 + 512);
        let back = SizeTable::read_cache(&buf[..]).unwrap();
        assert_eq!(back.sizes(), t.sizes());
        assert!(SizeTable::read_cache(&buf[..100]).is_err());
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(SizeTable::read_cache(&bad[..]).is_err());
    }

    #[test]
    fn degenerate_metrics() {
        let cm = ConfusionMatrix::from_counts(2, vec![vec![0, 0], vec![0, 7]]);
        let m = metrics(&cm);
        assert_eq!(m.exact, 1.0);
        assert_eq!(m.sigma, 0.0);
        assert_eq!(m.mad, 0.0);
        assert_eq!(m.pcc, 1.0);
    }

    #[test]
    fn sigma_is_rms_of_delta() {
        // Δ = 1 everywhere: rms 1, std 0.
        let cm = ConfusionMatrix::from_counts(2, vec![vec![0, 3], vec![0, 0]]);
        let m = metrics(&cm);
        assert_eq!((m.sigma, m.delta_std, m.mad), (1.0, 0.0, 1.0));
        // Δ ∈ {0, 2} equally often: rms √2, std 1.
        let cm = ConfusionMatrix::from_counts(3, vec![vec![1, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
        let m = metrics(&cm);
        assert!((m.sigma - 2f64.sqrt()).abs() < 1e-12);
        assert!((m.delta_std - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let cm = ConfusionMatrix::from_counts(2, vec![vec![1, 0], vec![0, 2]]);
        assert_eq!(cm.to_csv(), "bound\\size,0,1\n0,1,0\n1,0,2\n");
        assert_eq!(
            cm.heatmap_csv(),
            "bound\\size,0,1\n0,1.000000,0.000000\n1,0.000000,1.000000\n"
        );
    }
}
