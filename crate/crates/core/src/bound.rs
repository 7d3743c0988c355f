//! The LMC lower bound on CNOT count, size-preserving transforms, and the
//! depth bound that follows from it.
//!
//! ```text
//! s(M) >= ℓ + max{ m + c, #0(M), #0(M⁻¹) }
//!   ℓ = n - v(M)
//!   c = e(M) - v(M)
//!   m = n - min{ c_perfect(M), c_perfect(Mᵀ) }
//! ```
//!
//! Two knobs sit on the middle term. [`TransposeRule`] picks which of the
//! `M` and `Mᵀ` middle bounds is used; the default keeps the smaller one,
//! which is the variant that reproduces the exhaustive `n = 5` census. The
//! nullity cap replaces `c_perfect` by `min{c_perfect, n - rank(M')}` and is
//! what makes the bound reach `3(n - 1)` on n-cycles past `n = 5`.

use std::fmt;

use serde::Serialize;

use crate::connectivity::{edge_count, vertex_count};
use crate::error::{Error, Result};
use crate::gf2::BinMatrix;
use crate::perm::Permutation;
use crate::rivers::{emp_dup, middle_bound_from_thirds, MiddleRounding};

/// Which of the two middle bounds (from `M'` and from `M'ᵀ`) enters the bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransposeRule {
    /// `m = n - max{c_perfect(M), c_perfect(Mᵀ)}`.
    #[default]
    Weaker,
    /// `m = n - min{c_perfect(M), c_perfect(Mᵀ)}`.
    Stronger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundOptions {
    pub rounding: MiddleRounding,
    pub transpose: TransposeRule,
    /// Cap `c_perfect` by the left nullity of `M'`.
    pub nullity_cap: bool,
    /// Also take the maximum over `M`, `Mᵀ`, `M⁻¹` and `M⁻ᵀ`.
    pub strengthen: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            rounding: MiddleRounding::Floor,
            transpose: TransposeRule::Weaker,
            nullity_cap: true,
            strengthen: false,
        }
    }
}

/// Ingredients and value of the LMC bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LmcReport {
    pub n: usize,
    /// Link gates needed: `n - v(M)`.
    pub ell: usize,
    /// Middle gates needed.
    pub m: usize,
    /// Cut gates needed: `e(M) - v(M)`.
    pub c: usize,
    /// Zeroes on the diagonal of `M`.
    pub z: usize,
    /// Zeroes on the diagonal of `M⁻¹`.
    pub z_inv: usize,
    pub bound: usize,
    /// `⌈bound / ⌊n/2⌋⌉`, absent for `n = 1`.
    pub depth_lb: Option<usize>,
}

impl fmt::Display for LmcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n        {}", self.n)?;
        writeln!(f, "ell      {}", self.ell)?;
        writeln!(f, "m        {}", self.m)?;
        writeln!(f, "c        {}", self.c)?;
        writeln!(f, "z        {}", self.z)?;
        writeln!(f, "z_inv    {}", self.z_inv)?;
        writeln!(f, "bound    {}", self.bound)?;
        match self.depth_lb {
            Some(d) => writeln!(f, "depth_lb {d}"),
            None => writeln!(f, "depth_lb -"),
        }
    }
}

pub fn lmc_bound(m: &BinMatrix) -> Result<LmcReport> {
    lmc_bound_with(m, BoundOptions::default())
}

pub fn lmc_bound_with(m: &BinMatrix, opts: BoundOptions) -> Result<LmcReport> {
    let inv = m.inverse()?;
    let base = report_from_parts(m, &inv, opts);
    if !opts.strengthen {
        return Ok(base);
    }
    let t = m.transpose();
    let inv_t = inv.transpose();
    let forms = [
        report_from_parts(&t, &inv_t, opts),
        report_from_parts(&inv, m, opts),
        report_from_parts(&inv_t, &t, opts),
    ];
    Ok(forms
        .into_iter()
        .fold(base, |best, r| if r.bound > best.bound { r } else { best }))
}

fn report_from_parts(m: &BinMatrix, inv: &BinMatrix, opts: BoundOptions) -> LmcReport {
    let n = m.n();
    let v = vertex_count(m);
    let e = edge_count(m);
    let ell = n - v;
    let c = e.saturating_sub(v);

    // M' = M ∧ M⁻ᵀ + I; for Mᵀ the same construction yields M'ᵀ.
    let mut mp = *m;
    let inv_t = inv.transpose();
    for i in 0..n {
        let row = (m.row(i) & inv_t.row(i)) ^ (1 << i);
        mp.set_row_raw(i, row);
    }
    let floor_by_nullity = if opts.nullity_cap { mp.rank() } else { 0 };
    let side = |x: &BinMatrix| {
        let (emp, dup) = emp_dup(x);
        middle_bound_from_thirds(n, n + 2 * emp + dup, opts.rounding).max(floor_by_nullity)
    };
    let (a, b) = (side(&mp), side(&mp.transpose()));
    let middle = match opts.transpose {
        TransposeRule::Weaker => a.min(b),
        TransposeRule::Stronger => a.max(b),
    };

    let z = m.diag_zero_count();
    let z_inv = inv.diag_zero_count();
    let bound = ell + (middle + c).max(z).max(z_inv);
    LmcReport {
        n,
        ell,
        m: middle,
        c,
        z,
        z_inv,
        bound,
        depth_lb: depth_lower_bound(bound, n).ok(),
    }
}

/// `⌈size_lb / ⌊n/2⌋⌉`: a parallel layer holds at most `⌊n/2⌋` gates.
pub fn depth_lower_bound(size_lb: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewQubits { n, min: 2 });
    }
    Ok(size_lb.div_ceil(n / 2))
}

/// Matrices with the same size as `M`: `M`, `M⁻¹`, `Mᵀ`, `M⁻ᵀ`, then
/// `P⁻¹ M P` for each supplied permutation.
pub fn equivalent_forms(m: &BinMatrix, conjugators: &[Permutation]) -> Result<Vec<BinMatrix>> {
    let inv = m.inverse()?;
    let mut out = vec![*m, inv, m.transpose(), inv.transpose()];
    for p in conjugators {
        out.push(conjugate(m, p)?);
    }
    Ok(out)
}

/// `P⁻¹ M P` with `P = P_σ`.
pub fn conjugate(m: &BinMatrix, sigma: &Permutation) -> Result<BinMatrix> {
    if sigma.n() != m.n() {
        return Err(Error::DimensionMismatch {
            left: m.n(),
            right: sigma.n(),
        });
    }
    let p = sigma.to_matrix()?;
    p.inverse()?.multiply(m)?.multiply(&p)
}
