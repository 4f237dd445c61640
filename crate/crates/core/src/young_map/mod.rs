//! The vertical Young multiplication `y_{d,q}: S^d(M*) -> Σ^{d,2}(M*)`,
//! `f ↦ Π(f(x)·q(y))`, realized on bihomogeneous polynomials of bidegree
//! `(d, 2)` in two vector variables `x`, `y`.
//!
//! `S^d ⊗ S^2 = S^{d+2} ⊕ Σ^{d+1,1} ⊕ Σ^{d,2}` is multiplicity free, so the
//! `Σ^{d,2}` summand is cut out by a polynomial in the quadratic Casimir
//! `Ω = Σ_{i,j} E_ij E_ji`, `E_ij = x_i ∂/∂x_j + y_i ∂/∂y_j`, whose
//! eigenvalue on `Σ^λ` is `c(λ) = Σ_i λ_i (λ_i + n + 1 - 2i)`.

pub mod symmetrizer;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, LinearMapMatrix, Rational, SparseVec};
use crate::polyspaces::{
    laplacian_q, restrict_to_plane, Exponent, MonomialBasis, Poly, QuadraticForm,
};
use crate::weights::{sym_dim, weyl_dim_usize, Weight};

pub use symmetrizer::{young_symmetrizer_oracle, young_symmetrizer_rank, OracleReport};

/// Bihomogeneous polynomial in `x = (x_1..x_n)` and `y = (y_1..y_n)`.
///
/// Stored as a polynomial in `2n` variables `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    n: usize,
    bidegree: (u32, u32),
    poly: Poly,
}

impl BiPoly {
    pub fn zero(n: usize, bidegree: (u32, u32)) -> Self {
        BiPoly {
            n,
            bidegree,
            poly: Poly::zero(2 * n, bidegree.0 + bidegree.1),
        }
    }

    /// `f(x)·g(y)`.
    pub fn tensor(f: &Poly, g: &Poly) -> Result<Self> {
        if f.n() != g.n() {
            return Err(Error::LengthMismatch {
                module: "young_map",
                expected: f.n(),
                got: g.n(),
            });
        }
        let n = f.n();
        let mut out = Self::zero(n, (f.degree(), g.degree()));
        for (ex, cx) in f.terms() {
            for (ey, cy) in g.terms() {
                let mut e = ex.clone();
                e.extend_from_slice(ey);
                out.poly.add_term(e, cx * cy);
            }
        }
        Ok(out)
    }

    /// Builds from `(x-exponent, y-exponent, coefficient)` terms.
    pub fn from_terms(
        n: usize,
        bidegree: (u32, u32),
        terms: impl IntoIterator<Item = (Exponent, Exponent, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n, bidegree);
        for (ex, ey, c) in terms {
            if ex.len() != n
                || ey.len() != n
                || ex.iter().sum::<u32>() != bidegree.0
                || ey.iter().sum::<u32>() != bidegree.1
            {
                return Err(Error::precondition(
                    "young_map",
                    "term does not match bidegree",
                ));
            }
            let mut e = ex;
            e.extend(ey);
            out.poly.add_term(e, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.terms().count()
    }

    /// Terms as `(x-exponent, y-exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &Rational)> {
        let n = self.n;
        self.poly.terms().map(move |(e, c)| (&e[..n], &e[n..], c))
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_same(other)?;
        Ok(BiPoly {
            n: self.n,
            bidegree: self.bidegree,
            poly: self.poly.add(&other.poly)?,
        })
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_same(other)?;
        Ok(BiPoly {
            n: self.n,
            bidegree: self.bidegree,
            poly: self.poly.sub(&other.poly)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly {
            n: self.n,
            bidegree: self.bidegree,
            poly: self.poly.scale(c),
        }
    }

    fn check_same(&self, other: &BiPoly) -> Result<()> {
        if self.n != other.n || self.bidegree != other.bidegree {
            return Err(Error::precondition("young_map", "bidegree mismatch"));
        }
        Ok(())
    }

    /// `F(R x, R y)` for an `n × n` matrix `R`.
    pub fn substitute(&self, r: &[Vec<Rational>]) -> Result<BiPoly> {
        let n = self.n;
        if r.len() != n || r.iter().any(|row| row.len() != n) {
            return Err(Error::precondition(
                "young_map",
                "substitution matrix has wrong shape",
            ));
        }
        let mut block = vec![vec![Rational::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                block[i][j] = r[i][j].clone();
                block[n + i][n + j] = r[i][j].clone();
            }
        }
        Ok(BiPoly {
            n,
            bidegree: self.bidegree,
            poly: self.poly.substitute(&block)?,
        })
    }

    /// `x_i ∂/∂x_j + y_i ∂/∂y_j`.
    pub fn apply_e(&self, i: usize, j: usize) -> BiPoly {
        let n = self.n;
        let mut out = BiPoly::zero(n, self.bidegree);
        for block in [0, n] {
            for (e, c) in self.poly.terms() {
                let k = e[block + j];
                if k == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[block + j] -= 1;
                e2[block + i] += 1;
                out.poly.add_term(e2, c * rat(i64::from(k)));
            }
        }
        out
    }

    /// Polarization `Σ_i x_i ∂/∂y_i`, bidegree `(d, e) -> (d + 1, e - 1)`.
    pub fn polarize_y_to_x(&self) -> BiPoly {
        self.polarize(true)
    }

    /// Polarization `Σ_i y_i ∂/∂x_i`, bidegree `(d, e) -> (d - 1, e + 1)`.
    pub fn polarize_x_to_y(&self) -> BiPoly {
        self.polarize(false)
    }

    fn polarize(&self, y_to_x: bool) -> BiPoly {
        let n = self.n;
        let (d, e) = self.bidegree;
        let (from, to, bidegree) = if y_to_x {
            (n, 0, (d + 1, e.saturating_sub(1)))
        } else {
            (0, n, (d.saturating_sub(1), e + 1))
        };
        let mut out = BiPoly::zero(n, bidegree);
        for (ex, c) in self.poly.terms() {
            for i in 0..n {
                let k = ex[from + i];
                if k == 0 {
                    continue;
                }
                let mut e2 = ex.clone();
                e2[from + i] -= 1;
                e2[to + i] += 1;
                out.poly.add_term(e2, c * rat(i64::from(k)));
            }
        }
        out
    }
}

/// `Ω F = Σ_{i,j} E_ij E_ji F`, straight from the definition.
pub fn casimir_apply(f: &BiPoly) -> BiPoly {
    let n = f.n();
    let mut out = BiPoly::zero(n, f.bidegree());
    for i in 0..n {
        for j in 0..n {
            let t = f.apply_e(j, i).apply_e(i, j);
            out = out.add(&t).expect("same bidegree");
        }
    }
    out
}

/// `Ω F` through the `gl_n`/`gl_2` Capelli identity
/// `Ω = d² + e² + 2 P_{y→x} P_{x→y} - (d - e) + (n - 2)(d + e)`
/// on bidegree `(d, e)`; agrees with [`casimir_apply`] at a fraction of the cost.
pub fn casimir_apply_fast(f: &BiPoly) -> BiPoly {
    let n = f.n() as i64;
    let (d, e) = f.bidegree();
    let (d, e) = (i64::from(d), i64::from(e));
    let scalar = d * d + e * e - (d - e) + (n - 2) * (d + e);
    let mut out = f.scale(&rat(scalar));
    if d > 0 {
        let mixed = f.polarize_x_to_y().polarize_y_to_x().scale(&rat(2));
        out = out.add(&mixed).expect("same bidegree");
    }
    out
}

/// `c(λ) = Σ_i λ_i (λ_i + n + 1 - 2i)`, the eigenvalue of `Ω` on `Σ^λ(C^n)`.
pub fn casimir_eigenvalue(lambda: &Weight) -> i64 {
    let n = lambda.n() as i64;
    lambda
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &l)| l * (l + n + 1 - 2 * (i as i64 + 1)))
        .sum()
}

/// Spectral projector onto the `Σ^λ`-isotypic part, built from `Ω` and the
/// Casimir values of the competing summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicProjector {
    target: Weight,
    target_casimir: i64,
    competitors: Vec<(Weight, i64)>,
}

impl IsotypicProjector {
    pub fn new(target: Weight, competitors: Vec<Weight>) -> Result<Self> {
        let target_casimir = casimir_eigenvalue(&target);
        let competitors: Vec<(Weight, i64)> = competitors
            .into_iter()
            .map(|w| {
                let c = casimir_eigenvalue(&w);
                (w, c)
            })
            .collect();
        let mut all: Vec<i64> = competitors.iter().map(|(_, c)| *c).collect();
        all.push(target_casimir);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::precondition(
                "young_map",
                format!("Casimir values {all:?} are not pairwise distinct"),
            ));
        }
        Ok(IsotypicProjector {
            target,
            target_casimir,
            competitors,
        })
    }

    /// Projector onto `Σ^{d,2}` inside bidegree `(d, 2)`, `d >= 2`.
    pub fn vertical(n: usize, d: u32) -> Result<Self> {
        if d < 2 || n < 2 {
            return Err(Error::precondition(
                "young_map",
                format!("shape (d,2) needs d >= 2 and n >= 2, got d = {d}, n = {n}"),
            ));
        }
        let d = i64::from(d);
        Self::new(
            Weight::padded(&[d, 2], n)?,
            vec![Weight::symmetric(d + 2, n), Weight::padded(&[d + 1, 1], n)?],
        )
    }

    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn casimir_values(&self) -> (i64, Vec<i64>) {
        (
            self.target_casimir,
            self.competitors.iter().map(|(_, c)| *c).collect(),
        )
    }

    /// `∏ (Ω - c(μ)) / (c(λ) - c(μ))`.
    pub fn apply(&self, f: &BiPoly) -> BiPoly {
        let mut acc = f.clone();
        let mut denom = 1i64;
        for (_, c) in &self.competitors {
            let shifted = casimir_apply_fast(&acc)
                .sub(&acc.scale(&rat(*c)))
                .expect("same bidegree");
            acc = shifted;
            denom *= self.target_casimir - c;
        }
        acc.scale(&Rational::new(1.into(), denom.into()))
    }
}

/// Canonical basis of bidegree `(d, e)`: pairs (x-monomial, y-monomial),
/// x-index major.
#[derive(Debug, Clone)]
pub struct BiBasis {
    x: MonomialBasis,
    y: MonomialBasis,
}

impl BiBasis {
    pub fn new(n: usize, bidegree: (u32, u32)) -> Self {
        BiBasis {
            x: MonomialBasis::new(n, bidegree.0),
            y: MonomialBasis::new(n, bidegree.1),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vector(&self, f: &BiPoly) -> SparseVec {
        f.terms()
            .map(|(ex, ey, c)| {
                let i = self.x.index_of(&ex.to_vec()).expect("x-degree matches");
                let j = self.y.index_of(&ey.to_vec()).expect("y-degree matches");
                (i * self.y.len() + j, c.clone())
            })
            .collect()
    }

    pub fn from_vector(&self, v: &SparseVec) -> BiPoly {
        let n = self.x.n();
        let terms = v.iter().map(|(&k, c)| {
            let (i, j) = (k / self.y.len(), k % self.y.len());
            (
                self.x.monomial(i).clone(),
                self.y.monomial(j).clone(),
                c.clone(),
            )
        });
        BiPoly::from_terms(n, (self.x.degree(), self.y.degree()), terms).expect("basis terms")
    }

    pub fn basis_element(&self, k: usize) -> BiPoly {
        self.from_vector(&SparseVec::from([(k, Rational::one())]))
    }
}

fn check_shape(d: u32, q: &QuadraticForm) -> Result<()> {
    if d < 2 {
        return Err(Error::precondition(
            "young_map",
            format!("y_(d,q) needs d >= 2, got d = {d}"),
        ));
    }
    if q.n() < 2 {
        return Err(Error::precondition("young_map", "y_(d,q) needs n >= 2"));
    }
    Ok(())
}

/// `Π` applied to the bidegree `(d, 2)` element `F`.
pub fn project_isotypic(f: &BiPoly) -> Result<BiPoly> {
    let (d, e) = f.bidegree();
    if e != 2 {
        return Err(Error::precondition(
            "young_map",
            "projection expects bidegree (d, 2)",
        ));
    }
    Ok(IsotypicProjector::vertical(f.n(), d)?.apply(f))
}

/// `y_{d,q}(f) = Π(f(x)·q(y))`.
pub fn y_dq(f: &Poly, q: &QuadraticForm) -> Result<BiPoly> {
    check_shape(f.degree(), q)?;
    let projector = IsotypicProjector::vertical(q.n(), f.degree())?;
    Ok(projector.apply(&BiPoly::tensor(f, &q.as_poly())?))
}

/// Matrix of `y_{d,q}` from the monomial basis of `S^d` to [`BiBasis`] of
/// bidegree `(d, 2)`.
pub fn y_matrix(d: u32, q: &QuadraticForm) -> Result<LinearMapMatrix> {
    check_shape(d, q)?;
    let n = q.n();
    let source = MonomialBasis::new(n, d);
    let target = BiBasis::new(n, (d, 2));
    let projector = IsotypicProjector::vertical(n, d)?;
    let qy = q.as_poly();
    let columns = (0..source.len())
        .map(|i| {
            let f = BiPoly::tensor(&source.basis_poly(i), &qy)?;
            Ok(target.to_vector(&projector.apply(&f)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearMapMatrix::from_columns(target.len(), columns))
}

/// Matrix of the projector `Π` on all of bidegree `(d, 2)`.
pub fn projector_matrix(n: usize, d: u32) -> Result<LinearMapMatrix> {
    let projector = IsotypicProjector::vertical(n, d)?;
    let basis = BiBasis::new(n, (d, 2));
    let columns = (0..basis.len())
        .map(|k| basis.to_vector(&projector.apply(&basis.basis_element(k))))
        .collect();
    Ok(LinearMapMatrix::from_columns(basis.len(), columns))
}

/// Kernel and cokernel dimensions of `y_{d,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KerCoker {
    pub ker: usize,
    pub coker: usize,
    pub rank: usize,
}

pub fn kernel_cokernel_dims(n: usize, d: u32, q: &QuadraticForm) -> Result<KerCoker> {
    if q.n() != n {
        return Err(Error::LengthMismatch {
            module: "young_map",
            expected: n,
            got: q.n(),
        });
    }
    let m = y_matrix(d, q)?;
    let rank = m.rank();
    let source = sym_dim(n, i64::from(d));
    let target = weyl_dim_usize(&Weight::padded(&[i64::from(d), 2], n)?)?;
    if rank > target {
        return Err(Error::integrity(
            "young_map",
            format!("rank {rank} of y_({d},q) exceeds dim Σ^({d},2) = {target} for n = {n}"),
        ));
    }
    Ok(KerCoker {
        ker: source - rank,
        coker: target - rank,
        rank,
    })
}

/// Kernel of `y_{d,q}` as polynomials in `S^d`.
pub fn y_kernel(d: u32, q: &QuadraticForm) -> Result<Vec<Poly>> {
    let source = MonomialBasis::new(q.n(), d);
    let m = y_matrix(d, q)?;
    Ok(m.kernel().iter().map(|v| source.from_vector(v)).collect())
}

/// Rank of `y_{d,q}` for the standard form; the connecting map of the
/// sequence on the quadric is proportional to this map.
pub fn connecting_rank(n: usize, d: u32) -> Result<usize> {
    Ok(kernel_cokernel_dims(n, d, &QuadraticForm::standard(n))?.rank)
}

/// Probes whether `f|_E` is `q|_E`-harmonic on `trials` random rational
/// 2-planes `E`. Returns `true` iff every sampled restriction is harmonic.
pub fn plane_harmonicity_test(
    f: &Poly,
    q: &QuadraticForm,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    if f.n() != q.n() {
        return Err(Error::LengthMismatch {
            module: "young_map",
            expected: q.n(),
            got: f.n(),
        });
    }
    let n = f.n();
    if n < 2 {
        return Err(Error::precondition("young_map", "planes need n >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < trials {
        let e1: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let e2: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        // dependent or degenerate samples are redrawn
        let Ok((restricted, form)) = restrict_to_plane(f, q, &e1, &e2) else {
            continue;
        };
        done += 1;
        if !laplacian_q(&restricted, &form)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cayley transform `(I - A)^{-1}(I + A)` of an antisymmetric matrix `A`;
/// orthogonal for the standard form.
pub fn cayley_rotation(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let id = |i: usize, j: usize| {
        if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    let minus: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| id(i, j) - &a[i][j]).collect())
        .collect();
    let inv = crate::polyspaces::invert(&minus)
        .ok_or_else(|| Error::precondition("young_map", "I - A is singular"))?;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| &inv[i][k] * (id(k, j) + &a[k][j]))
                        .fold(Rational::zero(), |acc, x| acc + x)
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspaces::harmonic_basis;
    use crate::weights::weyl_dim_usize;

    fn lin_pow_tensor(n: usize, a: &[i64], d: u32, e: u32) -> BiPoly {
        let a: Vec<Rational> = a.iter().map(|&x| rat(x)).collect();
        let l = Poly::linear(&a);
        let mut px = Poly::constant(n, Rational::one());
        for _ in 0..d {
            px = px.mul(&l).unwrap();
        }
        let mut py = Poly::constant(n, Rational::one());
        for _ in 0..e {
            py = py.mul(&l).unwrap();
        }
        BiPoly::tensor(&px, &py).unwrap()
    }

    #[test]
    fn casimir_calibration() {
        // (a·x)^d (a·y)^2 lies in the S^{d+2} summand
        for n in 2..5 {
            for d in 0..4u32 {
                let v = lin_pow_tensor(n, &[1, 2, -1, 3][..n], d, 2);
                let c = casimir_eigenvalue(&Weight::symmetric(i64::from(d) + 2, n));
                assert_eq!(c, (i64::from(d) + 2) * (i64::from(d) + n as i64 + 1));
                assert_eq!(casimir_apply(&v), v.scale(&rat(c)));
            }
        }
    }

    #[test]
    fn casimir_of_zero() {
        let x = Poly::var(2, 0).mul(&Poly::var(2, 0)).unwrap();
        let y12 = Poly::var(2, 0).mul(&Poly::var(2, 1)).unwrap();
        let f = BiPoly::tensor(&x, &y12).unwrap();
        let zero = f.sub(&f).unwrap();
        assert!(casimir_apply(&zero).is_zero());
    }

    #[test]
    fn fast_casimir_matches_definition() {
        for n in 2..4 {
            for (d, e) in [(0, 2), (2, 2), (3, 2), (2, 1), (1, 3)] {
                let basis = BiBasis::new(n, (d, e));
                for k in 0..basis.len() {
                    let f = basis.basis_element(k);
                    assert_eq!(
                        casimir_apply(&f),
                        casimir_apply_fast(&f),
                        "n={n} ({d},{e}) k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn casimir_eigenspace_dimensions() {
        for n in 2..4usize {
            for d in 2..4u32 {
                let basis = BiBasis::new(n, (d, 2));
                let omega = LinearMapMatrix::from_columns(
                    basis.len(),
                    (0..basis.len())
                        .map(|k| basis.to_vector(&casimir_apply(&basis.basis_element(k))))
                        .collect(),
                );
                let di = i64::from(d);
                let shapes = [vec![di + 2], vec![di + 1, 1], vec![di, 2]];
                let mut total = 0;
                for s in &shapes {
                    let w = Weight::padded(s, n).unwrap();
                    let c = casimir_eigenvalue(&w);
                    let shifted = omega.sub(&LinearMapMatrix::identity(basis.len()).scale(&rat(c)));
                    let eig = basis.len() - shifted.rank();
                    assert_eq!(eig, weyl_dim_usize(&w).unwrap(), "n={n} d={d} {s:?}");
                    total += eig;
                }
                assert_eq!(total, sym_dim(n, di) * sym_dim(n, 2));
            }
        }
    }

    #[test]
    fn projector_is_idempotent_with_expected_rank() {
        for n in 2..5usize {
            for d in 2..6u32 {
                if n == 4 && d > 4 {
                    continue; // covered by the acceptance suite
                }
                let p = projector_matrix(n, d).unwrap();
                assert_eq!(p.compose(&p), p, "n={n} d={d}");
                let want = weyl_dim_usize(&Weight::padded(&[i64::from(d), 2], n).unwrap()).unwrap();
                assert_eq!(p.rank(), want);
            }
        }
    }

    #[test]
    fn projector_kills_symmetric_part() {
        let v = lin_pow_tensor(3, &[1, -2, 1], 3, 2);
        assert!(project_isotypic(&v).unwrap().is_zero());
    }

    #[test]
    fn y_rejects_small_degree() {
        let q = QuadraticForm::standard(3);
        assert!(y_dq(&Poly::var(3, 0), &q).is_err());
        assert!(IsotypicProjector::vertical(3, 1).is_err());
    }

    #[test]
    fn ker_coker_examples() {
        let k = |n: usize, d: u32| {
            let r = kernel_cokernel_dims(n, d, &QuadraticForm::standard(n)).unwrap();
            (r.ker, r.coker)
        };
        assert_eq!(k(3, 2), (0, 0));
        assert_eq!(k(4, 2), (0, 10));
        assert_eq!(k(3, 3), (0, 5));
        for d in 2..7 {
            assert_eq!(k(2, d), (2, 0), "d = {d}");
        }
    }

    #[test]
    fn kernel_in_two_dimensions_is_harmonic() {
        let q = QuadraticForm::standard(2);
        for d in 2..6 {
            let ker: Vec<SparseVec> = {
                let b = MonomialBasis::new(2, d);
                y_kernel(d, &q)
                    .unwrap()
                    .iter()
                    .map(|f| b.to_vector(f))
                    .collect()
            };
            let b = MonomialBasis::new(2, d);
            let harm: Vec<SparseVec> = harmonic_basis(d, &q)
                .unwrap()
                .iter()
                .map(|f| b.to_vector(f))
                .collect();
            assert!(crate::linalg::same_span(&ker, &harm), "d = {d}");
        }
    }

    #[test]
    fn scaling_q_keeps_dims() {
        let q = QuadraticForm::standard(3);
        let q3 = q.scaled(&crate::linalg::ratio(-3, 2)).unwrap();
        for d in 2..4 {
            assert_eq!(
                kernel_cokernel_dims(3, d, &q).unwrap(),
                kernel_cokernel_dims(3, d, &q3).unwrap()
            );
        }
    }

    #[test]
    fn plane_test_examples() {
        let q2 = QuadraticForm::standard(2);
        for f in harmonic_basis(4, &q2).unwrap() {
            assert!(plane_harmonicity_test(&f, &q2, 5, 7).unwrap());
        }
        let q3 = QuadraticForm::standard(3);
        let g = Poly::var(3, 0).mul(&Poly::var(3, 1)).unwrap();
        let qg = crate::polyspaces::mult_by_q(&g, &q3).unwrap();
        assert!(!plane_harmonicity_test(&qg, &q3, 20, 1).unwrap());
    }

    #[test]
    fn cayley_is_orthogonal() {
        let a = vec![
            vec![rat(0), rat(1), crate::linalg::ratio(1, 2)],
            vec![rat(-1), rat(0), rat(2)],
            vec![crate::linalg::ratio(-1, 2), rat(-2), rat(0)],
        ];
        let r = cayley_rotation(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let dot: Rational = (0..3)
                    .map(|k| &r[k][i] * &r[k][j])
                    .fold(Rational::zero(), |s, x| s + x);
                assert_eq!(dot, rat(i64::from(i == j)));
            }
        }
    }
}
