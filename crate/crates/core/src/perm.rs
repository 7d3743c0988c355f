use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BinMatrix;

/// A permutation of `0..n`, stored as its image array.
///
/// The associated matrix `P_σ` has its ones at `(i, σ(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// One-line notation with 1-indexed digits, e.g. `"15342"`.
    pub fn from_one_line(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as usize - 1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    /// Parses cycle notation such as `"(1 3 5)(2 4)"` over `1..=n`.
    ///
    /// Labels may be separated by spaces or commas. When `n` is `None` the
    /// largest label mentioned fixes the dimension.
    pub fn from_cycle_notation(s: &str, n: Option<usize>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| bad(format!("unclosed cycle in {s:?}")))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&x| x >= 1)
                        .ok_or_else(|| bad(format!("invalid label {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let max_label = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = match n {
            Some(n) if n < max_label => {
                return Err(bad(format!("label {max_label} exceeds n = {n}")));
            }
            Some(n) => n,
            None => max_label,
        };
        if n == 0 {
            return Err(bad("empty permutation".into()));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in &cycles {
            for (k, &label) in cycle.iter().enumerate() {
                let x = label - 1;
                if used[x] {
                    return Err(bad(format!("label {label} appears twice")));
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// The permutation with the images at positions `i` and `j` exchanged.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i, j);
        Self { images }
    }

    /// Disjoint cycles including fixed points, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `P_σ`, with row `i` equal to `e_{σ(i)}`.
    pub fn to_matrix(&self) -> Result<BinMatrix> {
        let rows: Vec<u32> = self.images.iter().map(|&x| 1u32 << x).collect();
        BinMatrix::from_raw_rows(self.n(), &rows)
    }

    /// Recovers `σ` from a permutation matrix, if it is one.
    pub fn from_matrix(m: &BinMatrix) -> Option<Self> {
        let images = m
            .rows()
            .iter()
            .map(|&r| (r.count_ones() == 1).then(|| r.trailing_zeros() as usize))
            .collect::<Option<Vec<_>>>()?;
        Self::from_images(images).ok()
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        assert!(n <= 10, "refusing to enumerate {n}! permutations");
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self {
                images: images.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).unwrap();
            images.swap(i - 1, j);
            images[i..].reverse();
        }
        out
    }

    /// Cycle notation over 1-indexed labels, omitting fixed points; `"()"` for the identity.
    pub fn cycle_notation(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let labels: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", labels.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for Permutation {
    /// One-line notation; labels are space separated once `n` exceeds 9.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { " " } else { "" };
        let labels: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "{}", labels.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}
