//! Weights of `GL(n)`, Young diagrams and the Weyl dimension formula.
//!
//! A [`Weight`] is a plain integer sequence; dominance is a checked property
//! rather than a type-level guarantee, because Bott's algorithm has to handle
//! arbitrary (non-dominant) weights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer weight `(a_1, ..., a_n)` of `GL(n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The row partition `parts` padded with zeros to length `n`.
    ///
    /// Fails if `parts` is longer than `n`.
    pub fn padded(parts: &[i64], n: usize) -> Result<Self> {
        if parts.len() > n {
            return Err(Error::LengthMismatch {
                module: "weights",
                expected: n,
                got: parts.len(),
            });
        }
        let mut entries = parts.to_vec();
        entries.resize(n, 0);
        Ok(Weight(entries))
    }

    /// `(d, 0, ..., 0)`, the weight of `S^d`.
    pub fn symmetric(d: i64, n: usize) -> Self {
        let mut entries = vec![0; n];
        if n > 0 {
            entries[0] = d;
        }
        Weight(entries)
    }

    /// `1^p = (1, ..., 1, 0, ..., 0)`, the weight of `Λ^p`.
    pub fn exterior(p: usize, n: usize) -> Self {
        Weight((0..n).map(|i| i64::from(i < p)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_young_diagram(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Number of boxes `|λ|`, i.e. the sum of entries.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn ensure_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.0.clone()))
        }
    }

    /// `(a_1, ..., a_n) -> (-a_n, ..., -a_1)`, the highest weight of the dual
    /// representation.
    pub fn dualize(&self) -> Weight {
        Weight(self.0.iter().rev().map(|a| -a).collect())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Weight) -> Result<Weight> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                module: "weights",
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(Weight(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Human readable Schur functor label, dropping trailing zeros:
    /// `Σ^{3,2}`, `C` for the trivial weight.
    pub fn schur_label(&self) -> String {
        let mut parts = self.0.clone();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.is_empty() {
            return "C".to_string();
        }
        let body: Vec<String> = parts.iter().map(|a| a.to_string()).collect();
        format!("Σ^{{{}}}", body.join(","))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// Dimension of the irreducible representation `Σ^λ(C^n)`:
/// `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dim(lambda: &Weight) -> Result<BigUint> {
    lambda.ensure_dominant()?;
    let a = lambda.entries();
    let n = a.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            // dominance makes every factor positive
            let top = (a[i] - a[j]) as u64 + (j - i) as u64;
            num *= top;
            den *= (j - i) as u64;
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// [`weyl_dim`] narrowed to `usize`, for dimensions used as matrix sizes.
pub fn weyl_dim_usize(lambda: &Weight) -> Result<usize> {
    let d = weyl_dim(lambda)?;
    d.to_usize()
        .ok_or_else(|| Error::precondition("weights", format!("dimension of {lambda} overflows")))
}

/// `binomial(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Dimension of `S^d(C^n)`, zero for negative `d`.
pub fn sym_dim(n: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n as u64 + d as u64 - 1, d as u64)
        .to_usize()
        .expect("dimension fits in usize")
}

/// A direct sum of irreducibles `⊕ Σ^μ ^{⊕ m_μ}` with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsotypicSum {
    terms: BTreeMap<Weight, u64>,
}

#[derive(Serialize, Deserialize)]
struct IsotypicTerm {
    weight: Weight,
    multiplicity: u64,
}

impl Serialize for IsotypicSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<IsotypicTerm> = self
            .terms
            .iter()
            .map(|(w, &m)| IsotypicTerm {
                weight: w.clone(),
                multiplicity: m,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IsotypicSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<IsotypicTerm>::deserialize(d)?;
        let mut sum = IsotypicSum::new();
        for t in terms {
            if !t.weight.is_dominant() || t.multiplicity == 0 {
                return Err(serde::de::Error::custom(format!(
                    "invalid isotypic term {} x{}",
                    t.weight, t.multiplicity
                )));
            }
            sum.add(t.weight, t.multiplicity);
        }
        Ok(sum)
    }
}

impl IsotypicSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(weight: Weight) -> Self {
        let mut s = Self::new();
        s.add(weight, 1);
        s
    }

    /// Adds `multiplicity` copies of `weight`. Panics on a non-dominant weight.
    pub fn add(&mut self, weight: Weight, multiplicity: u64) {
        assert!(weight.is_dominant(), "isotypic term {weight} not dominant");
        if multiplicity > 0 {
            *self.terms.entry(weight).or_insert(0) += multiplicity;
        }
    }

    pub fn merge(&mut self, other: &IsotypicSum) {
        for (w, &m) in &other.terms {
            self.add(w.clone(), m);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, weight: &Weight) -> u64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Total dimension `Σ m_μ · dim Σ^μ`.
    pub fn dim(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(w, &m)| weyl_dim(w).expect("terms are dominant") * m)
            .sum()
    }

    pub fn label(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, &m)| {
                if m == 1 {
                    w.schur_label()
                } else {
                    format!("{}^{m}", w.schur_label())
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Pieri rule: `Σ^λ ⊗ S^k = ⊕ Σ^μ` over all `μ` obtained from `λ` by adding
/// `k` boxes, no two in the same column.
pub fn pieri_sym(lambda: &Weight, k: usize) -> Result<IsotypicSum> {
    lambda.ensure_dominant()?;
    if !lambda.is_young_diagram() {
        return Err(Error::NegativeEntries(lambda.entries().to_vec()));
    }
    let lam = lambda.entries();
    let n = lam.len();
    let mut out = IsotypicSum::new();
    let mut mu = vec![0i64; n];
    // μ_1 ≥ λ_1 ≥ μ_2 ≥ λ_2 ≥ ... ≥ μ_n ≥ λ_n (horizontal strip)
    fn rec(i: usize, left: i64, lam: &[i64], mu: &mut Vec<i64>, out: &mut IsotypicSum) {
        let n = lam.len();
        if i == n {
            if left == 0 {
                out.add(Weight::new(mu.clone()), 1);
            }
            return;
        }
        let cap = if i == 0 {
            left
        } else {
            (lam[i - 1] - lam[i]).min(left)
        };
        for extra in 0..=cap {
            mu[i] = lam[i] + extra;
            rec(i + 1, left - extra, lam, mu, out);
        }
    }
    if n == 0 {
        return Ok(out);
    }
    rec(0, k as i64, lam, &mut mu, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn dim(v: &[i64]) -> u64 {
        weyl_dim(&w(v)).unwrap().to_u64().unwrap()
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(dim(&[2, 0, 0]), 6);
        assert_eq!(dim(&[1, 1, 0, 0]), 6);
        assert_eq!(dim(&[2, 2, 0]), 6);
        assert_eq!(dim(&[2, 2, 0, 0]), 20);
        assert_eq!(dim(&[3, 2, 0]), 15);
        assert_eq!(dim(&[0, 0, 0, -2]), 10);
    }

    #[test]
    fn weyl_dim_rejects_non_dominant() {
        assert_eq!(weyl_dim(&w(&[0, 1])), Err(Error::NotDominant(vec![0, 1])));
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(w(&[1, 0, 0]).dualize(), w(&[0, 0, -1]));
        assert_eq!(w(&[0, 0, 0]).dualize(), w(&[0, 0, 0]));
        assert_eq!(w(&[2, 2]).dualize(), w(&[-2, -2]));
    }

    #[test]
    fn pieri_examples() {
        for d in 0..5 {
            let got = pieri_sym(&Weight::symmetric(d, 4), 2).unwrap();
            let mut want = IsotypicSum::new();
            want.add(w(&[d + 2, 0, 0, 0]), 1);
            if d >= 1 {
                want.add(w(&[d + 1, 1, 0, 0]), 1);
            }
            if d >= 2 {
                want.add(w(&[d, 2, 0, 0]), 1);
            }
            // shapes (d+1, 1) and (d, 2) need d >= 1 and d >= 2 respectively
            assert_eq!(got, want, "d = {d}");
        }
        let got = pieri_sym(&Weight::symmetric(3, 3), 1).unwrap();
        let mut want = IsotypicSum::new();
        want.add(w(&[4, 0, 0]), 1);
        want.add(w(&[3, 1, 0]), 1);
        assert_eq!(got, want);
        assert_eq!(
            pieri_sym(&Weight::zero(3), 3).unwrap(),
            IsotypicSum::single(w(&[3, 0, 0]))
        );
    }

    #[test]
    fn pieri_rejects_negative() {
        assert!(matches!(
            pieri_sym(&w(&[1, 0, -1]), 1),
            Err(Error::NegativeEntries(_))
        ));
    }

    #[test]
    fn isotypic_json_shape() {
        let mut s = IsotypicSum::new();
        s.add(w(&[2, 1]), 1);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"weight":[2,1],"multiplicity":1}]"#);
        let back: IsotypicSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(
            serde_json::from_str::<IsotypicSum>(r#"[{"weight":[0,1],"multiplicity":1}]"#).is_err()
        );
    }

    #[test]
    fn labels() {
        assert_eq!(w(&[3, 2, 0, 0]).schur_label(), "Σ^{3,2}");
        assert_eq!(w(&[0, 0]).schur_label(), "C");
    }
}
