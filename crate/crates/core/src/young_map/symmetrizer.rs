//! Young symmetrizers on `V^{⊗k}`: a tensor-level oracle for Schur functor
//! dimensions and for `y_{d,q}`. Only usable at desk scale (`n^k <= 243`).

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, LinearMapMatrix, Rational, SparseVec};
use crate::polyspaces::{MonomialBasis, QuadraticForm};
use crate::weights::Weight;

const MAX_BOXES: usize = 5;
const MAX_N: usize = 3;

/// Row and column position groups of the row-reading tableau of `λ`.
fn tableau(parts: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rows = Vec::new();
    let mut next = 0;
    for &len in parts {
        rows.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let width = parts.first().copied().unwrap_or(0);
    let cols = (0..width)
        .map(|c| rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect())
        .collect();
    (rows, cols)
}

/// All permutations of `k` positions that preserve each group, with signs.
fn group_perms(groups: &[Vec<usize>], k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut acc: Vec<(Vec<usize>, i64)> = vec![((0..k).collect(), 1)];
    for g in groups {
        let mut next = Vec::new();
        for (base, sign) in &acc {
            for image in g.iter().copied().permutations(g.len()) {
                let mut p = base.clone();
                for (&from, &to) in g.iter().zip(&image) {
                    p[from] = to;
                }
                next.push((p, sign * perm_sign(g, &image)));
            }
        }
        acc = next;
    }
    acc
}

fn perm_sign(domain: &[usize], image: &[usize]) -> i64 {
    // sign of the map domain[i] -> image[i], via inversions of positions
    let pos: Vec<usize> = image
        .iter()
        .map(|x| {
            domain
                .iter()
                .position(|y| y == x)
                .expect("image within group")
        })
        .collect();
    let mut inv = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_guard(parts: &[usize], n: usize) -> Result<usize> {
    let k: usize = parts.iter().sum();
    if k > MAX_BOXES || n > MAX_N || n == 0 {
        return Err(Error::precondition(
            "young_map",
            format!("symmetrizer oracle limited to |λ| <= {MAX_BOXES}, 1 <= n <= {MAX_N}; got |λ| = {k}, n = {n}"),
        ));
    }
    Ok(k)
}

fn partition_of(lambda: &Weight) -> Result<Vec<usize>> {
    lambda.ensure_dominant()?;
    if !lambda.is_young_diagram() {
        return Err(Error::NegativeEntries(lambda.entries().to_vec()));
    }
    Ok(lambda
        .entries()
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| a as usize)
        .collect())
}

/// The operator `b_λ a_λ` (row symmetrization, then column antisymmetrization)
/// applied to a tensor in `V^{⊗k}`, tensors indexed in base `n`.
struct Symmetrizer {
    n: usize,
    k: usize,
    terms: Vec<(Vec<usize>, i64)>,
}

impl Symmetrizer {
    fn new(parts: &[usize], n: usize) -> Result<Self> {
        let k = check_guard(parts, n)?;
        let (rows, cols) = tableau(parts);
        let row_perms = group_perms(&rows, k);
        let col_perms = group_perms(&cols, k);
        let mut terms = Vec::with_capacity(row_perms.len() * col_perms.len());
        for (q, sq) in &col_perms {
            for (p, _) in &row_perms {
                // position j goes to q(p(j))
                let comp: Vec<usize> = (0..k).map(|j| q[p[j]]).collect();
                terms.push((comp, *sq));
            }
        }
        Ok(Symmetrizer { n, k, terms })
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut word = vec![0; self.k];
        for slot in word.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        word
    }

    fn encode(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let word = self.decode(idx);
            for (perm, sign) in &self.terms {
                let mut moved = vec![0; self.k];
                for j in 0..self.k {
                    moved[perm[j]] = word[j];
                }
                let key = self.encode(&moved);
                let e = out.entry(key).or_insert_with(Rational::zero);
                *e += c * rat(*sign);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    fn matrix(&self) -> LinearMapMatrix {
        let columns = (0..self.dim())
            .map(|i| self.apply(&SparseVec::from([(i, Rational::one())])))
            .collect();
        LinearMapMatrix::from_columns(self.dim(), columns)
    }
}

/// Rank of the Young symmetrizer of `λ` acting on `(C^n)^{⊗|λ|}`, which is
/// `dim Σ^λ(C^n)`.
pub fn young_symmetrizer_rank(lambda: &Weight, n: usize) -> Result<usize> {
    let parts = partition_of(lambda)?;
    Ok(Symmetrizer::new(&parts, n)?.matrix().rank())
}

/// Matrix of `f ↦ c_{(d,2)}(f ⊗ q)` from the monomial basis of `S^d` into
/// `V^{⊗(d+2)}`, with `f` embedded as a symmetric tensor.
pub fn symmetrizer_y_matrix(d: u32, q: &QuadraticForm) -> Result<LinearMapMatrix> {
    let n = q.n();
    if d < 2 {
        return Err(Error::precondition("young_map", "shape (d,2) needs d >= 2"));
    }
    let sym = Symmetrizer::new(&[d as usize, 2], n)?;
    let basis = MonomialBasis::new(n, d);
    let mut columns = Vec::with_capacity(basis.len());
    for mono in basis.iter() {
        // every word with content `mono`, followed by the two q slots
        let letters: Vec<usize> = mono
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let mut tensor = SparseVec::new();
        for word in letters.iter().copied().permutations(letters.len()).unique() {
            for i in 0..n {
                for j in 0..n {
                    let g = &q.gram()[i][j];
                    if g.is_zero() {
                        continue;
                    }
                    let mut full = word.clone();
                    full.push(i);
                    full.push(j);
                    let e = tensor
                        .entry(sym.encode(&full))
                        .or_insert_with(Rational::zero);
                    *e += g;
                }
            }
        }
        tensor.retain(|_, x| !x.is_zero());
        columns.push(sym.apply(&tensor));
    }
    Ok(LinearMapMatrix::from_columns(sym.dim(), columns))
}

/// Output of the tensor-level oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// Rank of the Young symmetrizer, i.e. `dim Σ^λ`.
    pub rank: usize,
    /// For `λ = (d, 2)`: rank of `f ↦ c_λ(f ⊗ q)` on `S^d`.
    pub y_rank: Option<usize>,
    /// For `λ = (d, 2)`: kernel of that map in the monomial basis of `S^d`.
    #[serde(skip)]
    pub y_kernel: Option<Vec<SparseVec>>,
}

pub fn young_symmetrizer_oracle(
    lambda: &Weight,
    n: usize,
    q: &QuadraticForm,
) -> Result<OracleReport> {
    let parts = partition_of(lambda)?;
    let rank = Symmetrizer::new(&parts, n)?.matrix().rank();
    let (y_rank, y_kernel) = match parts[..] {
        [d, 2] if d >= 2 => {
            let m = symmetrizer_y_matrix(d as u32, q)?;
            (Some(m.rank()), Some(m.kernel()))
        }
        _ => (None, None),
    };
    Ok(OracleReport {
        rank,
        y_rank,
        y_kernel,
    })
}
