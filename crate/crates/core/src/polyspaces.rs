//! Homogeneous polynomials on `M = C^n` with exact rational coefficients,
//! the quadratic form `q`, multiplication by `q`, the `q`-Laplacian and
//! restriction to 2-planes.
//!
//! Every space `S^d(M*)` carries the canonical monomial basis ordered
//! graded-lexicographically (`z_1^d` first), and all operator matrices are
//! written in these bases.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, rat, LinearMapMatrix, Rational, SparseVec};

pub type Exponent = Vec<u32>;

/// All exponent vectors of length `n` and total degree `d`, in descending
/// lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// Canonical basis of `S^d(C^n)`.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n: usize,
    degree: u32,
    monos: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: u32) -> Self {
        let monos = monomials(n, degree);
        let index = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        MonomialBasis {
            n,
            degree,
            monos,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Exponent {
        &self.monos[i]
    }

    pub fn index_of(&self, e: &Exponent) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Exponent> {
        self.monos.iter()
    }

    pub fn basis_poly(&self, i: usize) -> Poly {
        Poly::monomial(self.monos[i].clone(), Rational::one())
    }

    pub fn to_vector(&self, f: &Poly) -> SparseVec {
        assert_eq!((f.n, f.degree), (self.n, self.degree), "basis mismatch");
        f.coeffs
            .iter()
            .map(|(e, c)| (self.index[e], c.clone()))
            .collect()
    }

    pub fn from_vector(&self, v: &SparseVec) -> Poly {
        let mut f = Poly::zero(self.n, self.degree);
        for (&i, c) in v {
            f.add_term(self.monos[i].clone(), c.clone());
        }
        f
    }
}

/// Homogeneous polynomial of fixed degree in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<Exponent, Rational>,
}

#[derive(Serialize, Deserialize)]
struct PolyTerm {
    exponents: Exponent,
    coeff: String,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<PolyTerm> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| PolyTerm {
                exponents: e.clone(),
                coeff: format_rational(c),
            })
            .collect();
        terms.serialize(s)
    }
}

impl Poly {
    pub fn zero(n: usize, degree: u32) -> Self {
        Poly {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut f = Self::zero(n, 0);
        f.add_term(vec![0; n], c);
        f
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        let degree = e.iter().sum();
        let mut f = Self::zero(e.len(), degree);
        f.add_term(e, c);
        f
    }

    /// The variable `z_i` (zero-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// Linear form `Σ a_i z_i`.
    pub fn linear(a: &[Rational]) -> Self {
        let n = a.len();
        let mut f = Self::zero(n, 1);
        for (i, c) in a.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    /// Parses the JSON term-array form emitted by `serde_json::to_string`.
    pub fn from_json(n: usize, degree: u32, json: &str) -> Result<Self> {
        let terms: Vec<PolyTerm> = serde_json::from_str(json)
            .map_err(|e| Error::precondition("polyspaces", e.to_string()))?;
        let mut f = Self::zero(n, degree);
        for t in terms {
            if t.exponents.len() != n || t.exponents.iter().sum::<u32>() != degree {
                return Err(Error::precondition(
                    "polyspaces",
                    format!(
                        "term {:?} not of degree {degree} in {n} variables",
                        t.exponents
                    ),
                ));
            }
            let c = parse_rational(&t.coeff).ok_or_else(|| {
                Error::precondition("polyspaces", format!("bad coefficient {:?}", t.coeff))
            })?;
            f.add_term(t.exponents, c);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        debug_assert_eq!(e.len(), self.n);
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    fn check_same_space(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                module: "polyspaces",
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_space(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::precondition(
                "polyspaces",
                "adding polynomials of different degrees",
            ));
        }
        let mut out = if self.is_zero() {
            other.clone()
        } else {
            self.clone()
        };
        let rhs = if self.is_zero() {
            Poly::zero(self.n, other.degree)
        } else {
            other.clone()
        };
        for (e, c) in rhs.coeffs {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.n, self.degree);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(e, x)| (e.clone(), x * c))
            .collect();
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_space(other)?;
        let mut out = Poly::zero(self.n, self.degree + other.degree);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// `∂f/∂z_i`; degree drops by one (a constant differentiates to the zero
    /// polynomial of degree 0).
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n, self.degree.saturating_sub(1));
        for (e, c) in &self.coeffs {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * rat(i64::from(e[i])));
        }
        out
    }

    /// Substitutes `z_i = Σ_j a[i][j] w_j`, giving a polynomial in
    /// `m = a[i].len()` variables `w`.
    pub fn substitute(&self, a: &[Vec<Rational>]) -> Result<Poly> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                module: "polyspaces",
                expected: self.n,
                got: a.len(),
            });
        }
        let m = a.first().map_or(0, Vec::len);
        let images: Vec<Poly> = a.iter().map(|row| Poly::linear(row)).collect();
        // powers[i][k] = (image of z_i)^k
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.n);
        for (i, img) in images.iter().enumerate() {
            let top = self.coeffs.keys().map(|e| e[i]).max().unwrap_or(0);
            let mut p = vec![Poly::constant(m, Rational::one())];
            for k in 1..=top as usize {
                let next = p[k - 1].mul(img)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Poly::zero(m, self.degree);
        for (e, c) in &self.coeffs {
            let mut term = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
            }
            for (e2, c2) in term.coeffs {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.coeffs {
            let mut t = c.clone();
            for (x, &k) in z.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

/// Nondegenerate symmetric bilinear form `q(z) = Σ g_ij z_i z_j` with its
/// inverse `q^{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Inverse by Gauss-Jordan elimination, `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl QuadraticForm {
    /// Validates symmetry and invertibility.
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::precondition(
                "polyspaces",
                "quadratic form matrix not square",
            ));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i) {
                if *x != gram[j][i] {
                    return Err(Error::precondition(
                        "polyspaces",
                        "quadratic form matrix not symmetric",
                    ));
                }
            }
        }
        let inverse = invert(&gram)
            .ok_or_else(|| Error::precondition("polyspaces", "degenerate quadratic form"))?;
        Ok(QuadraticForm { gram, inverse })
    }

    /// `Σ z_i²`.
    pub fn standard(n: usize) -> Self {
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
            .collect();
        QuadraticForm {
            inverse: gram.clone(),
            gram,
        }
    }

    pub fn n(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn inverse(&self) -> &[Vec<Rational>] {
        &self.inverse
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(
            self.gram
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        )
    }

    /// `q` as a degree-2 polynomial.
    pub fn as_poly(&self) -> Poly {
        let n = self.n();
        let mut f = Poly::zero(n, 2);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                f.add_term(e, self.gram[i][j].clone());
            }
        }
        f
    }

    /// Bilinear pairing `u^T g v`.
    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (ui, row) in u.iter().zip(&self.gram) {
            for (g, vj) in row.iter().zip(v) {
                acc += ui * g * vj;
            }
        }
        acc
    }
}

fn check_form(f: &Poly, q: &QuadraticForm) -> Result<()> {
    if f.n() != q.n() {
        return Err(Error::LengthMismatch {
            module: "polyspaces",
            expected: q.n(),
            got: f.n(),
        });
    }
    Ok(())
}

pub fn mult_by_q(f: &Poly, q: &QuadraticForm) -> Result<Poly> {
    check_form(f, q)?;
    q.as_poly().mul(f)
}

/// `Δ_q f = Σ q^{ij} ∂_i ∂_j f`; the zero polynomial of degree 0 when
/// `deg f < 2`.
pub fn laplacian_q(f: &Poly, q: &QuadraticForm) -> Result<Poly> {
    check_form(f, q)?;
    let n = f.n();
    if f.degree() < 2 {
        return Ok(Poly::zero(n, 0));
    }
    let mut out = Poly::zero(n, f.degree() - 2);
    for i in 0..n {
        let fi = f.partial(i);
        for j in 0..n {
            let c = &q.inverse()[i][j];
            if c.is_zero() {
                continue;
            }
            for (e, x) in fi.partial(j).coeffs {
                out.add_term(e, x * c);
            }
        }
    }
    Ok(out)
}

/// Matrix of a linear operator `S^d -> S^{d'}` in the monomial bases.
pub fn operator_matrix(
    source: &MonomialBasis,
    target: &MonomialBasis,
    op: impl Fn(&Poly) -> Result<Poly>,
) -> Result<LinearMapMatrix> {
    let mut columns = Vec::with_capacity(source.len());
    for i in 0..source.len() {
        let image = op(&source.basis_poly(i))?;
        if image.is_zero() {
            columns.push(SparseVec::new());
        } else {
            columns.push(target.to_vector(&image));
        }
    }
    Ok(LinearMapMatrix::from_columns(target.len(), columns))
}

pub fn mult_by_q_matrix(d: u32, q: &QuadraticForm) -> Result<LinearMapMatrix> {
    let n = q.n();
    operator_matrix(
        &MonomialBasis::new(n, d),
        &MonomialBasis::new(n, d + 2),
        |f| mult_by_q(f, q),
    )
}

pub fn laplacian_matrix(d: u32, q: &QuadraticForm) -> Result<LinearMapMatrix> {
    let n = q.n();
    if d < 2 {
        return Ok(LinearMapMatrix::zeros(0, MonomialBasis::new(n, d).len()));
    }
    operator_matrix(
        &MonomialBasis::new(n, d),
        &MonomialBasis::new(n, d - 2),
        |f| laplacian_q(f, q),
    )
}

/// Basis of the harmonic polynomials of degree `d`.
pub fn harmonic_basis(d: u32, q: &QuadraticForm) -> Result<Vec<Poly>> {
    let basis = MonomialBasis::new(q.n(), d);
    let lap = laplacian_matrix(d, q)?;
    Ok(lap.kernel().iter().map(|v| basis.from_vector(v)).collect())
}

/// Exact dimension of `ker Δ_q` on `S^d`.
pub fn harmonic_dim(n: usize, d: u32, q: &QuadraticForm) -> Result<usize> {
    if q.n() != n {
        return Err(Error::LengthMismatch {
            module: "polyspaces",
            expected: n,
            got: q.n(),
        });
    }
    let lap = laplacian_matrix(d, q)?;
    Ok(lap.ncols() - lap.rank())
}

/// `f` restricted to the plane spanned by `e1, e2`, as a polynomial in
/// `(s, t)` where `z = s·e1 + t·e2`, together with the Gram matrix `q|_E`.
pub fn restrict_to_plane(
    f: &Poly,
    q: &QuadraticForm,
    e1: &[Rational],
    e2: &[Rational],
) -> Result<(Poly, QuadraticForm)> {
    check_form(f, q)?;
    let n = f.n();
    if e1.len() != n || e2.len() != n {
        return Err(Error::LengthMismatch {
            module: "polyspaces",
            expected: n,
            got: e1.len().min(e2.len()),
        });
    }
    let independent = (0..n).any(|i| (i + 1..n).any(|j| &e1[i] * &e2[j] != &e1[j] * &e2[i]));
    if !independent {
        return Err(Error::precondition(
            "polyspaces",
            "plane basis vectors are dependent",
        ));
    }
    let a: Vec<Vec<Rational>> = (0..n).map(|i| vec![e1[i].clone(), e2[i].clone()]).collect();
    let restricted = f.substitute(&a)?;
    let gram = vec![
        vec![q.pair(e1, e1), q.pair(e1, e2)],
        vec![q.pair(e2, e1), q.pair(e2, e2)],
    ];
    let form = QuadraticForm::new(gram).map_err(|_| {
        Error::precondition("polyspaces", "q restricted to the plane is degenerate")
    })?;
    Ok((restricted, form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::sym_dim;

    fn z(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[1], vec![1, 1, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(monomials(n, d).len(), sym_dim(n, i64::from(d)));
            }
        }
    }

    #[test]
    fn mult_by_q_examples() {
        let q3 = QuadraticForm::standard(3);
        let one = Poly::constant(3, rat(1));
        assert_eq!(mult_by_q(&one, &q3).unwrap(), q3.as_poly());
        let q2 = QuadraticForm::standard(2);
        let got = mult_by_q(&z(2, 0), &q2).unwrap();
        let mut want = Poly::zero(2, 3);
        want.add_term(vec![3, 0], rat(1));
        want.add_term(vec![1, 2], rat(1));
        assert_eq!(got, want);
    }

    #[test]
    fn mult_by_q_rejects_mismatch() {
        assert!(mult_by_q(&z(2, 0), &QuadraticForm::standard(3)).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let q = QuadraticForm::standard(3);
        assert_eq!(
            laplacian_q(&q.as_poly(), &q).unwrap(),
            Poly::constant(3, rat(6))
        );
        let mixed = z(3, 0).mul(&z(3, 1)).unwrap();
        assert!(laplacian_q(&mixed, &q).unwrap().is_zero());
        let diff = z(3, 0)
            .mul(&z(3, 0))
            .unwrap()
            .sub(&z(3, 1).mul(&z(3, 1)).unwrap())
            .unwrap();
        assert!(laplacian_q(&diff, &q).unwrap().is_zero());
    }

    #[test]
    fn harmonic_dim_examples() {
        for d in 1..7 {
            assert_eq!(harmonic_dim(2, d, &QuadraticForm::standard(2)).unwrap(), 2);
        }
        assert_eq!(harmonic_dim(3, 2, &QuadraticForm::standard(3)).unwrap(), 5);
        for n in 1..5 {
            assert_eq!(harmonic_dim(n, 0, &QuadraticForm::standard(n)).unwrap(), 1);
        }
    }

    #[test]
    fn degenerate_forms_rejected() {
        let g = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        assert!(QuadraticForm::new(g).is_err());
        let g = vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]];
        assert!(QuadraticForm::new(g).is_err());
    }

    #[test]
    fn restrict_examples() {
        let q = QuadraticForm::standard(3);
        let e1 = vec![rat(1), rat(0), rat(0)];
        let e2 = vec![rat(0), rat(1), rat(0)];
        let f = z(3, 0).mul(&z(3, 0)).unwrap();
        let (r, g) = restrict_to_plane(&f, &q, &e1, &e2).unwrap();
        assert_eq!(r, Poly::monomial(vec![2, 0], rat(1)));
        assert_eq!(g, QuadraticForm::standard(2));
        let (r, _) = restrict_to_plane(&q.as_poly(), &q, &e1, &e2).unwrap();
        assert_eq!(r, QuadraticForm::standard(2).as_poly());
        let dep = vec![rat(2), rat(0), rat(0)];
        assert!(restrict_to_plane(&f, &q, &e1, &dep).is_err());
    }

    #[test]
    fn json_terms() {
        let mut f = Poly::zero(2, 2);
        f.add_term(vec![2, 0], crate::linalg::ratio(1, 2));
        f.add_term(vec![0, 2], rat(-3));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"[{"exponents":[2,0],"coeff":"1/2"},{"exponents":[0,2],"coeff":"-3"}]"#
        );
        assert_eq!(Poly::from_json(2, 2, &s).unwrap(), f);
        assert!(Poly::from_json(2, 3, &s).is_err());
    }
}
