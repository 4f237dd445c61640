//! Čech cohomology of `A^n \ {0}` with coefficients in `O`, computed one
//! Laurent multidegree at a time for the cover `U_i = {z_i ≠ 0}`.
//!
//! The monomial `z^m` is a section over `U_I` iff every negative exponent
//! sits at a coordinate in `I`, so each slice of the Čech complex has one
//! basis vector per admissible subset `I ⊇ supp₋(m)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, LinearMapMatrix, SparseVec};

/// Exponent vector of a Laurent monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Bitmask of `{i : m_i < 0}`.
    pub fn negative_support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e < 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

impl std::fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// The Čech complex in one multidegree and its cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechSlice {
    pub n: usize,
    pub m: MultiDegree,
    /// `dim C^p` for `p = 0..n`.
    pub cochain_dims: Vec<usize>,
    /// `dim H^p` for `p = 0..n`.
    pub cohomology_dims: Vec<usize>,
}

impl CechSlice {
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.cochain_dims)
    }

    pub fn cohomology_euler_characteristic(&self) -> i64 {
        alternating(&self.cohomology_dims)
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Maximum supported `n`; subsets are bitmasks.
pub const MAX_N: usize = 16;

pub fn cech_slice(n: usize, m: &MultiDegree) -> Result<CechSlice> {
    if n == 0 || n > MAX_N {
        return Err(Error::precondition(
            "cech",
            format!("need 1 <= n <= {MAX_N}, got {n}"),
        ));
    }
    if m.n() != n {
        return Err(Error::LengthMismatch {
            module: "cech",
            expected: n,
            got: m.n(),
        });
    }
    let neg = m.negative_support();
    // admissible subsets grouped by level p = |I| - 1, in increasing mask order
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); n];
    for mask in 1u32..(1 << n) {
        if mask & neg == neg {
            levels[mask.count_ones() as usize - 1].push(mask);
        }
    }
    let index: Vec<BTreeMap<u32, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let cochain_dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    // ranks[p] = rank of d^p : C^p -> C^{p+1}
    let mut ranks = vec![0usize; n];
    for p in 0..n.saturating_sub(1) {
        let mut columns = Vec::with_capacity(levels[p].len());
        for &i_set in &levels[p] {
            let mut col = SparseVec::new();
            for j in 0..n {
                if i_set & (1 << j) != 0 {
                    continue;
                }
                let target = i_set | (1 << j);
                // position of j in sorted I ∪ {j}
                let pos = (target & ((1 << j) - 1)).count_ones();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                col.insert(index[p + 1][&target], rat(sign));
            }
            columns.push(col);
        }
        ranks[p] = LinearMapMatrix::from_columns(levels[p + 1].len(), columns).rank();
    }
    let cohomology_dims = (0..n)
        .map(|p| {
            let incoming = if p == 0 { 0 } else { ranks[p - 1] };
            cochain_dims[p] - ranks[p] - incoming
        })
        .collect();
    Ok(CechSlice {
        n,
        m: m.clone(),
        cochain_dims,
        cohomology_dims,
    })
}

/// Closed form: `H^0` spanned by `m >= 0`, `H^{n-1}` by `m <= -1`, nothing
/// else (for `n = 1` both land in `H^0`, giving all of `C[z, z^{-1}]`).
pub fn closed_form(n: usize, m: &MultiDegree) -> Vec<usize> {
    let mut h = vec![0; n];
    if m.0.iter().all(|&e| e >= 0) {
        h[0] += 1;
    }
    if m.0.iter().all(|&e| e <= -1) {
        h[n - 1] += 1;
    }
    h
}

/// Čech cohomology over all multidegrees in `[-bound, bound]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PuncturedTable {
    pub n: usize,
    pub bound: i64,
    /// Nonzero slices only, in lexicographic multidegree order.
    pub slices: Vec<CechSlice>,
    /// Number of monomials contributing to each `H^i`.
    pub counts: Vec<usize>,
    /// `totals[d][i]`: contributions to `H^i` from total degree `d`.
    pub totals: BTreeMap<i64, Vec<usize>>,
}

impl PuncturedTable {
    /// `multidegree \t i \t dim` lines for every nonzero group.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("multidegree\ti\tdim\n");
        for slice in &self.slices {
            for (i, &h) in slice.cohomology_dims.iter().enumerate() {
                if h > 0 {
                    s.push_str(&format!("{}\t{}\t{}\n", slice.m, i, h));
                }
            }
        }
        s
    }
}

pub fn punctured_affine_table(n: usize, bound: i64) -> Result<PuncturedTable> {
    if bound < 0 {
        return Err(Error::precondition("cech", "box bound must be nonnegative"));
    }
    let mut slices = Vec::new();
    let mut counts = vec![0usize; n.max(1)];
    let mut totals: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let degrees = (0..n).map(|_| -bound..=bound).multi_cartesian_product();
    for m in degrees {
        let m = MultiDegree(m);
        let slice = cech_slice(n, &m)?;
        let expected = closed_form(n, &m);
        if slice.cohomology_dims != expected {
            return Err(Error::integrity(
                "cech",
                format!(
                    "multidegree {m}: computed {:?}, closed form {:?}",
                    slice.cohomology_dims, expected
                ),
            ));
        }
        if slice.cohomology_dims.iter().any(|&h| h > 0) {
            let row = totals.entry(m.total()).or_insert_with(|| vec![0; n]);
            for (i, &h) in slice.cohomology_dims.iter().enumerate() {
                counts[i] += h;
                row[i] += h;
            }
            slices.push(slice);
        }
    }
    Ok(PuncturedTable {
        n,
        bound,
        slices,
        counts,
        totals,
    })
}
