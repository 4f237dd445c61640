//! Exact linear algebra over the rationals.
//!
//! Matrices are stored column-sparse: column `j` is the image of the `j`-th
//! source basis vector. Ranks and kernels are computed by sparse
//! leading-term elimination over `BigRational`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Sparse vector keyed by coordinate index, zero entries never stored.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"` or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `v += factor * w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVec, factor: &Rational, w: &SparseVec) {
    for (&k, c) in w {
        let delta = factor * c;
        match v.get_mut(&k) {
            Some(x) => {
                *x += delta;
                if x.is_zero() {
                    v.remove(&k);
                }
            }
            None => {
                if !delta.is_zero() {
                    v.insert(k, delta);
                }
            }
        }
    }
}

/// Incremental row echelon form of a set of vectors.
///
/// Each stored pivot vector has leading coefficient one at a distinct index.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the pivots, returning the residue.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut floor = 0usize;
        loop {
            let lead = v.range(floor..).find(|(k, _)| self.pivots.contains_key(k));
            let (k, c) = match lead {
                Some((&k, c)) => (k, c.clone()),
                None => return v,
            };
            axpy(&mut v, &(-c), &self.pivots[&k]);
            floor = k + 1;
        }
    }

    /// Inserts `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let (lead, c) = match r.iter().next() {
            Some((&k, c)) => (k, c.clone()),
            None => return false,
        };
        let inv = c.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        // keep earlier pivots free of the new leading index
        for p in self.pivots.values_mut() {
            if let Some(f) = p.get(&lead).cloned() {
                axpy(p, &(-f), &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }
}

/// Exact matrix of a linear map between finite-dimensional spaces with
/// chosen bases.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapMatrix {
    nrows: usize,
    ncols: usize,
    columns: Vec<SparseVec>,
}

impl LinearMapMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        LinearMapMatrix {
            nrows,
            ncols,
            columns: vec![SparseVec::new(); ncols],
        }
    }

    pub fn from_columns(nrows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.keys().all(|&k| k < nrows) && c.values().all(|x| !x.is_zero())));
        LinearMapMatrix {
            nrows,
            ncols: columns.len(),
            columns,
        }
    }

    /// Builds from dense rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.columns[j].insert(i, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|i| SparseVec::from([(i, Rational::one())]))
            .collect();
        Self::from_columns(n, columns)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j]
            .get(&i)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.nrows && j < self.ncols);
        if x.is_zero() {
            self.columns[j].remove(&i);
        } else {
            self.columns[j].insert(i, x);
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.columns[j]);
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &LinearMapMatrix) -> LinearMapMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in compose");
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        LinearMapMatrix::from_columns(self.nrows, columns)
    }

    pub fn transpose(&self) -> LinearMapMatrix {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, x) in col {
                t.columns[i].insert(j, x.clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> LinearMapMatrix {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(&k, x)| (k, x * c)).collect())
            .collect();
        Self::from_columns(self.nrows, columns)
    }

    pub fn sub(&self, rhs: &LinearMapMatrix) -> LinearMapMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let minus_one = -Rational::one();
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                axpy(&mut c, &minus_one, b);
                c
            })
            .collect();
        Self::from_columns(self.nrows, columns)
    }

    /// Column echelon form of the image.
    pub fn image_echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for c in &self.columns {
            e.insert(c.clone());
        }
        e
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.image_echelon().rank()
    }

    /// Basis of the kernel as sparse vectors in the source space.
    pub fn kernel(&self) -> Vec<SparseVec> {
        // Pivots carry the combination of source columns that produced them.
        let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = SparseVec::from([(j, Rational::one())]);
            loop {
                let lead = v.iter().next().map(|(&k, c)| (k, c.clone()));
                match lead {
                    None => {
                        kernel.push(combo);
                        break;
                    }
                    Some((k, c)) => match pivots.get(&k) {
                        Some((pv, pc)) => {
                            let f = -c;
                            axpy(&mut v, &f, pv);
                            axpy(&mut combo, &f, pc);
                        }
                        None => {
                            let inv = c.recip();
                            for x in v.values_mut() {
                                *x *= &inv;
                            }
                            for x in combo.values_mut() {
                                *x *= &inv;
                            }
                            pivots.insert(k, (v, combo));
                            break;
                        }
                    },
                }
            }
        }
        kernel
    }

    /// Sparse triplet export: a `rows cols nnz` header followed by one
    /// `row col value` line per nonzero, in column-major order.
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.nrows, self.ncols, self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, x) in col {
                let _ = writeln!(s, "{} {} {}", i, j, format_rational(x));
            }
        }
        s
    }

    pub fn from_triplets(text: &str) -> Option<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<usize> = lines
            .next()?
            .split_whitespace()
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?;
        let [nrows, ncols, nnz] = header[..] else {
            return None;
        };
        let mut m = Self::zeros(nrows, ncols);
        let mut count = 0;
        for line in lines {
            let mut it = line.split_whitespace();
            let i: usize = it.next()?.parse().ok()?;
            let j: usize = it.next()?.parse().ok()?;
            let x = parse_rational(it.next()?)?;
            if i >= nrows || j >= ncols {
                return None;
            }
            m.set(i, j, x);
            count += 1;
        }
        (count == nnz).then_some(m)
    }
}

/// Coordinates `x` with `Σ x_j columns[j] = target`, if `target` lies in the
/// span. When the columns are dependent any solution may be returned.
pub fn solve_in_span(columns: &[SparseVec], target: &SparseVec) -> Option<Vec<Rational>> {
    let nrows = columns
        .iter()
        .chain(std::iter::once(target))
        .filter_map(|c| c.keys().next_back())
        .max()
        .map_or(0, |&k| k + 1);
    let mut cols = columns.to_vec();
    cols.push(target.clone());
    let m = LinearMapMatrix::from_columns(nrows, cols);
    let last = columns.len();
    let v = m.kernel().into_iter().find(|v| v.contains_key(&last))?;
    let scale = -v[&last].recip();
    Some(
        (0..last)
            .map(|j| v.get(&j).map_or_else(Rational::zero, |x| x * &scale))
            .collect(),
    )
}

/// Dimension of the span of a set of sparse vectors.
pub fn span_rank<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// True if the two families span the same subspace.
pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ra = span_rank(a);
    ra == span_rank(b) && ra == span_rank(a.iter().chain(b))
}
