//! Bott's algorithm for line bundles on the full flag variety of `M = C^n`,
//! its specialization to the bundles `S^d(G)(b)` on `P(M)`, and the long
//! exact sequence computing the cohomology of `S^d(G)(1)|_Q` on the quadric.
//!
//! The line bundle attached to `a = (a_1, ..., a_n)` is
//! `(M/M_{n-1})^{a_1} ⊗ ... ⊗ M_1^{a_n}`. Since `O(1) = M_1^*` on `P(M)`,
//! the twist `b` enters the last slot with a minus sign:
//! `S^d(G)(b)` is the pushforward of `O_F(0, ..., 0, -d, -b)`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{weyl_dim, IsotypicSum, Weight};
use crate::young_map;

/// Outcome of Bott's theorem for one line bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BottResult {
    /// `a + ρ` has a repeated entry: no cohomology at all.
    Zero,
    /// `H^degree = Σ^weight(M)`, all other groups vanish.
    Cohomology { degree: usize, weight: Weight },
}

/// `ρ = (n, n-1, ..., 1)`.
pub fn rho(n: usize) -> Vec<i64> {
    (1..=n as i64).rev().collect()
}

pub fn bott_cohomology(a: &Weight) -> BottResult {
    let n = a.n();
    let shifted: Vec<i64> = a.entries().iter().zip(rho(n)).map(|(x, r)| x + r).collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return BottResult::Zero;
    }
    // entries are distinct, so ℓ(w) is the number of inversions
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            if shifted[i] < shifted[j] {
                inversions += 1;
            }
        }
    }
    let weight: Vec<i64> = sorted.iter().zip(rho(n)).map(|(x, r)| x - r).collect();
    BottResult::Cohomology {
        degree: inversions,
        weight: Weight::new(weight),
    }
}

/// One cohomology group: its dimension and, when it is a `GL(M)`-module,
/// its decomposition `⊕ Σ^μ(M*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyPiece {
    pub dim: u64,
    pub decomposition: Option<IsotypicSum>,
}

impl CohomologyPiece {
    pub fn from_sum(sum: IsotypicSum) -> Self {
        let dim = sum.dim().to_u64().expect("dimension fits in u64");
        CohomologyPiece {
            dim,
            decomposition: Some(sum),
        }
    }

    pub fn dimension_only(dim: u64) -> Self {
        CohomologyPiece {
            dim,
            decomposition: None,
        }
    }

    pub fn label(&self) -> String {
        match &self.decomposition {
            Some(s) => s.label(),
            None => format!("dim {}", self.dim),
        }
    }
}

/// Cohomology indexed by degree `i`; absent degrees are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedCohomology {
    pieces: BTreeMap<usize, CohomologyPiece>,
}

impl GradedCohomology {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a piece in degree `i`; zero-dimensional pieces are dropped.
    pub fn insert(&mut self, i: usize, piece: CohomologyPiece) {
        if piece.dim == 0 {
            return;
        }
        match self.pieces.remove(&i) {
            None => {
                self.pieces.insert(i, piece);
            }
            Some(old) => {
                let decomposition = match (old.decomposition, piece.decomposition) {
                    (Some(mut a), Some(b)) => {
                        a.merge(&b);
                        Some(a)
                    }
                    _ => None,
                };
                self.pieces.insert(
                    i,
                    CohomologyPiece {
                        dim: old.dim + piece.dim,
                        decomposition,
                    },
                );
            }
        }
    }

    pub fn get(&self, i: usize) -> Option<&CohomologyPiece> {
        self.pieces.get(&i)
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.pieces.get(&i).map_or(0, |p| p.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.pieces.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CohomologyPiece)> {
        self.pieces.iter().map(|(&i, p)| (i, p))
    }

    /// `Σ (-1)^i dim H^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(&i, p)| {
                if i % 2 == 0 {
                    p.dim as i64
                } else {
                    -(p.dim as i64)
                }
            })
            .sum()
    }

    pub fn dims(&self) -> BTreeMap<usize, u64> {
        self.pieces.iter().map(|(&i, p)| (i, p.dim)).collect()
    }
}

impl Serialize for GradedCohomology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.pieces.len() + 1))?;
        for (i, p) in &self.pieces {
            map.serialize_entry(&i.to_string(), &p.decomposition)?;
        }
        let dims: BTreeMap<String, u64> = self
            .pieces
            .iter()
            .map(|(i, p)| (i.to_string(), p.dim))
            .collect();
        map.serialize_entry("dims", &dims)?;
        map.end()
    }
}

/// Weight of the line bundle on the flag variety pushing forward to
/// `S^d(G)(b)` on `P(M)`.
pub fn sdg_weight(n: usize, d: u32, b: i64) -> Result<Weight> {
    if n < 2 {
        return Err(Error::precondition(
            "bott",
            format!("S^d(G)(b) needs n >= 2, got {n}"),
        ));
    }
    let mut a = vec![0i64; n];
    a[n - 2] = -i64::from(d);
    a[n - 1] = -b;
    Ok(Weight::new(a))
}

/// `H^•(P(M), S^d(G)(b))`, with the decomposition expressed in `Σ^μ(M*)`.
pub fn sdg_cohomology_on_p(n: usize, d: u32, b: i64) -> Result<GradedCohomology> {
    let a = sdg_weight(n, d, b)?;
    let mut out = GradedCohomology::new();
    if let BottResult::Cohomology { degree, weight } = bott_cohomology(&a) {
        // Σ^λ(M) = Σ^{λ*}(M*)
        out.insert(
            degree,
            CohomologyPiece::from_sum(IsotypicSum::single(weight.dualize())),
        );
    }
    Ok(out)
}

/// Long exact sequence of `0 -> A -> B -> C -> 0` where the maps
/// `H^i(A) -> H^i(B)` have the given ranks.
///
/// `H^i(C) = coker(H^i(A) -> H^i(B)) ⊕ ker(H^{i+1}(A) -> H^{i+1}(B))`.
pub fn long_exact_sequence(
    a: &GradedCohomology,
    b: &GradedCohomology,
    rank: impl Fn(usize) -> Result<u64>,
) -> Result<GradedCohomology> {
    let top = a.degrees().chain(b.degrees()).max().unwrap_or(0);
    let mut ranks = Vec::with_capacity(top + 2);
    for i in 0..=top + 1 {
        let r = if a.dim(i) == 0 || b.dim(i) == 0 {
            0
        } else {
            rank(i)?
        };
        if r > a.dim(i).min(b.dim(i)) {
            return Err(Error::integrity(
                "bott",
                format!("connecting rank {r} exceeds dimensions in degree {i}"),
            ));
        }
        ranks.push(r);
    }
    let mut c = GradedCohomology::new();
    for i in 0..=top {
        if let Some(piece) = b.get(i) {
            if ranks[i] == 0 {
                c.insert(i, piece.clone());
            } else {
                c.insert(i, CohomologyPiece::dimension_only(piece.dim - ranks[i]));
            }
        }
        if let Some(piece) = a.get(i + 1) {
            if ranks[i + 1] == 0 {
                c.insert(i, piece.clone());
            } else {
                c.insert(i, CohomologyPiece::dimension_only(piece.dim - ranks[i + 1]));
            }
        }
    }
    Ok(c)
}

/// `H^•(Q, S^d(G)(1)|_Q)` with the connecting map supplied by `rank`.
///
/// `rank(n, m)` must return the rank of `y_{m,q}` on `S^m(M*)`; it is only
/// consulted for `d >= 3`, where it is called with `m = d - 1`.
pub fn les_restriction_to_q_with(
    n: usize,
    d: u32,
    rank: impl Fn(usize, u32) -> Result<usize>,
) -> Result<GradedCohomology> {
    if n < 3 {
        return Err(Error::precondition(
            "bott",
            format!("restriction to the quadric needs n >= 3, got {n}"),
        ));
    }
    let minus = sdg_cohomology_on_p(n, d, -1)?;
    let plus = sdg_cohomology_on_p(n, d, 1)?;
    long_exact_sequence(&minus, &plus, |_| {
        // both sides nonzero only in degree 1 for d >= 3
        let r = rank(n, d - 1)?;
        Ok(r as u64)
    })
}

/// [`les_restriction_to_q_with`] using the exact rank of `y_{d-1,q}` from
/// [`young_map::connecting_rank`].
pub fn les_restriction_to_q(n: usize, d: u32) -> Result<GradedCohomology> {
    les_restriction_to_q_with(n, d, young_map::connecting_rank)
}

/// Dimension of `H^1` on the quadric for `d >= 3` assuming `y_{d-1,q}` is
/// injective: `dim Σ^{d-1,2} - dim S^{d-1}`.
pub fn quadric_h1_formula(n: usize, d: u32) -> Result<u64> {
    if d < 3 {
        return Ok(0);
    }
    let m = i64::from(d - 1);
    let big = weyl_dim(&Weight::padded(&[m, 2], n)?)?;
    let small = weyl_dim(&Weight::symmetric(m, n))?;
    (big - small)
        .to_u64()
        .ok_or_else(|| Error::precondition("bott", "dimension overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn bott_examples() {
        assert_eq!(
            bott_cohomology(&w(&[0, 0, -3, 1])),
            BottResult::Cohomology {
                degree: 1,
                weight: w(&[0, 0, 0, -2])
            }
        );
        for a in [vec![3, 1, 0], vec![0, 0, 0, 0], vec![2, 2, -1, -5]] {
            assert_eq!(
                bott_cohomology(&w(&a)),
                BottResult::Cohomology {
                    degree: 0,
                    weight: w(&a)
                }
            );
        }
        assert_eq!(bott_cohomology(&w(&[0, 0, 1])), BottResult::Zero);
    }

    #[test]
    fn bott_longest_element() {
        // a + ρ = (1, 2, 3) needs the longest permutation
        assert_eq!(
            bott_cohomology(&w(&[-2, 0, 2])),
            BottResult::Cohomology {
                degree: 3,
                weight: w(&[0, 0, 0])
            }
        );
    }

    #[test]
    fn sdg_examples() {
        for n in 3..6 {
            assert!(sdg_cohomology_on_p(n, 2, 1).unwrap().is_zero());
            let m = sdg_cohomology_on_p(n, 5, -1).unwrap();
            assert_eq!(m.degrees().collect::<Vec<_>>(), vec![1]);
            assert_eq!(
                m.get(1).unwrap().decomposition,
                Some(IsotypicSum::single(Weight::symmetric(4, n)))
            );
            let p = sdg_cohomology_on_p(n, 4, 1).unwrap();
            assert_eq!(p.degrees().collect::<Vec<_>>(), vec![1]);
            assert_eq!(
                p.get(1).unwrap().decomposition,
                Some(IsotypicSum::single(Weight::padded(&[3, 2], n).unwrap()))
            );
        }
    }

    #[test]
    fn sdg_needs_two_variables() {
        assert!(sdg_cohomology_on_p(1, 0, 1).is_err());
    }

    #[test]
    fn les_uses_injected_rank() {
        // with a zero connecting map the kernel part survives in H^0
        let c = les_restriction_to_q_with(4, 3, |_, _| Ok(0)).unwrap();
        assert_eq!(c.dim(0), 10);
        assert_eq!(c.dim(1), 20);
        let c = les_restriction_to_q_with(4, 3, |_, _| Ok(10)).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(1, 10)]));
        assert!(les_restriction_to_q_with(4, 3, |_, _| Ok(11)).is_err());
        assert!(les_restriction_to_q_with(2, 3, |_, _| Ok(0)).is_err());
    }

    #[test]
    fn les_low_degrees() {
        let n = 5;
        let c0 = les_restriction_to_q(n, 0).unwrap();
        assert_eq!(c0.dims(), BTreeMap::from([(0, 5)]));
        let c1 = les_restriction_to_q(n, 1).unwrap();
        let mut want = IsotypicSum::single(Weight::zero(n));
        want.add(Weight::exterior(2, n), 1);
        assert_eq!(c1.get(0).unwrap().decomposition, Some(want));
        assert_eq!(c1.dim(0), 1 + 10);
        let c2 = les_restriction_to_q(n, 2).unwrap();
        assert_eq!(c2.dims(), BTreeMap::from([(0, 5)]));
    }

    #[test]
    fn les_n4_d3() {
        let c = les_restriction_to_q(4, 3).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(1, 10)]));
        assert_eq!(quadric_h1_formula(4, 3).unwrap(), 10);
    }

    #[test]
    fn graded_json() {
        let g = sdg_cohomology_on_p(3, 5, -1).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["dims"]["1"], 15);
        assert_eq!(v["1"][0]["weight"], serde_json::json!([4, 0, 0]));
    }
}
