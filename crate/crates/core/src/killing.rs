//! Conformal Killing fields of flat `C^n`.
//!
//! For a constant metric `g` (the Gram matrix of `q`) a vector field `ξ` is
//! conformal Killing iff the traceless symmetrized gradient
//! `∂_i ξ_j + ∂_j ξ_i - (2/n)(div ξ) g_ij` vanishes, where `ξ_j = g_jk ξ^k`.
//!
//! The degree-graded kernel is `M*`, `Λ²(M*) ⊕ C`, `M*` in degrees 0, 1, 2
//! for `n >= 3`. [`so_np2_isomorphism`] identifies it with `so(n+2)` acting on
//! `C ⊕ M ⊕ C` with the split form `B(X, Y) = X_+ Y_- + X_- Y_+ + x·y`,
//! coordinates ordered `(+, x_1, ..., x_n, -)`:
//!
//! * translation `∂_a` ↦ `-T_a`, `T_a e_+ = e_a`, `T_a e_a = -e_-`
//! * rotation `z_i ∂_j - z_j ∂_i` ↦ `-L`, `L` acting on `M` by `z ↦ (Lz)`
//! * dilation `Σ z_k ∂_k` ↦ `diag(1, 0, ..., 0, -1)`
//! * special conformal `K_a = 2 z_a Σ z_k ∂_k - q ∂_a` ↦ `-2 S_a`,
//!   `S_a e_- = e_a`, `S_a e_a = -e_+`

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    format_rational, rat, ratio, solve_in_span, LinearMapMatrix, Rational, SparseVec,
};
use crate::polyspaces::{MonomialBasis, Poly, QuadraticForm};

/// Homogeneous polynomial vector field `Σ ξ^k ∂_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyVectorField {
    n: usize,
    degree: u32,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        let degree = components.first().map_or(0, Poly::degree);
        if components
            .iter()
            .any(|c| c.n() != n || (c.degree() != degree && !c.is_zero()))
        {
            return Err(Error::precondition(
                "killing",
                "components must be homogeneous of one degree in n variables",
            ));
        }
        let components = components
            .into_iter()
            .map(|c| {
                if c.is_zero() {
                    Poly::zero(n, degree)
                } else {
                    c
                }
            })
            .collect();
        Ok(PolyVectorField {
            n,
            degree,
            components,
        })
    }

    pub fn zero(n: usize, degree: u32) -> Self {
        PolyVectorField {
            n,
            degree,
            components: vec![Poly::zero(n, degree); n],
        }
    }

    /// `∂_i`.
    pub fn translation(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n, 0);
        f.components[i] = Poly::constant(n, Rational::one());
        f
    }

    /// `z_i ∂_j - z_j ∂_i`.
    pub fn rotation(n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(n, 1);
        f.components[j] = Poly::var(n, i);
        f.components[i] = Poly::var(n, j).scale(&-Rational::one());
        f
    }

    /// `Σ z_k ∂_k`.
    pub fn dilation(n: usize) -> Self {
        PolyVectorField {
            n,
            degree: 1,
            components: (0..n).map(|k| Poly::var(n, k)).collect(),
        }
    }

    /// `K_i = 2 (g z)_i Σ z_k ∂_k - q(z) ∂_i`.
    pub fn special_conformal(q: &QuadraticForm, i: usize) -> Self {
        let n = q.n();
        let gz_i = Poly::linear(&q.gram()[i]);
        let qz = q.as_poly();
        let components = (0..n)
            .map(|k| {
                let mut c = gz_i.mul(&Poly::var(n, k)).expect("same n").scale(&rat(2));
                if k == i {
                    c = c.sub(&qz).expect("same degree");
                }
                c
            })
            .collect();
        PolyVectorField {
            n,
            degree: 2,
            components,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyVectorField {
            n: self.n,
            degree: self.degree,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::precondition(
                "killing",
                "adding fields of different degree",
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(PolyVectorField {
            n: self.n,
            degree: self.degree,
            components,
        })
    }

    /// `Σ_k ∂_k ξ^k`.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.n, self.degree.saturating_sub(1));
        for (k, c) in self.components.iter().enumerate() {
            out = out.add(&c.partial(k)).expect("same degree");
        }
        out
    }

    /// Coordinates in the basis `(component k, monomial)` of degree-`d` fields.
    pub fn to_vector(&self, basis: &MonomialBasis) -> SparseVec {
        let mut v = SparseVec::new();
        for (k, c) in self.components.iter().enumerate() {
            for (i, x) in basis.to_vector(c) {
                v.insert(k * basis.len() + i, x);
            }
        }
        v
    }

    pub fn from_vector(n: usize, basis: &MonomialBasis, v: &SparseVec) -> Self {
        let mut parts = vec![SparseVec::new(); n];
        for (&idx, x) in v {
            parts[idx / basis.len()].insert(idx % basis.len(), x.clone());
        }
        PolyVectorField {
            n,
            degree: basis.degree(),
            components: parts.iter().map(|p| basis.from_vector(p)).collect(),
        }
    }
}

/// `[ξ, η]^i = Σ_j (ξ^j ∂_j η^i - η^j ∂_j ξ^i)`.
pub fn bracket(xi: &PolyVectorField, eta: &PolyVectorField) -> Result<PolyVectorField> {
    if xi.n != eta.n {
        return Err(Error::LengthMismatch {
            module: "killing",
            expected: xi.n,
            got: eta.n,
        });
    }
    let n = xi.n;
    let degree = (xi.degree + eta.degree).saturating_sub(1);
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = Poly::zero(n, degree);
        for j in 0..n {
            let a = xi.components[j].mul(&eta.components[i].partial(j))?;
            let b = eta.components[j].mul(&xi.components[i].partial(j))?;
            if !a.is_zero() {
                c = c.add(&a)?;
            }
            if !b.is_zero() {
                c = c.sub(&b)?;
            }
        }
        components.push(if c.is_zero() {
            Poly::zero(n, degree)
        } else {
            c
        });
    }
    Ok(PolyVectorField {
        n,
        degree,
        components,
    })
}

/// Symmetric 2-tensor of polynomials, stored for `i <= j` in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymTensor {
    n: usize,
    entries: Vec<Poly>,
}

impl SymTensor {
    fn slot(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[Self::slot(self.n, i, j)]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }
}

/// Traceless symmetrized gradient of `ξ` with respect to `q`.
pub fn ck_operator(xi: &PolyVectorField, q: &QuadraticForm) -> Result<SymTensor> {
    let n = xi.n;
    if q.n() != n {
        return Err(Error::LengthMismatch {
            module: "killing",
            expected: q.n(),
            got: n,
        });
    }
    let g = q.gram();
    let deg = xi.degree.saturating_sub(1);
    // lowered components ξ_j = g_jk ξ^k
    let lowered: Vec<Poly> = (0..n)
        .map(|j| {
            (0..n).fold(Poly::zero(n, xi.degree), |acc, k| {
                acc.add(&xi.components[k].scale(&g[j][k]))
                    .expect("same degree")
            })
        })
        .collect();
    let div = xi.divergence();
    let trace_factor = ratio(2, n as i64);
    let mut entries = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let mut t = Poly::zero(n, deg);
            t = t.add(&lowered[j].partial(i))?;
            t = t.add(&lowered[i].partial(j))?;
            t = t.sub(&div.scale(&(&trace_factor * &g[i][j])))?;
            entries.push(if t.is_zero() { Poly::zero(n, deg) } else { t });
        }
    }
    Ok(SymTensor { n, entries })
}

/// Matrix of [`ck_operator`] on degree-`d` fields.
pub fn ck_matrix(d: u32, q: &QuadraticForm) -> Result<LinearMapMatrix> {
    let n = q.n();
    let source = MonomialBasis::new(n, d);
    let pairs = n * (n + 1) / 2;
    if d == 0 {
        return Ok(LinearMapMatrix::zeros(0, n * source.len()));
    }
    let target = MonomialBasis::new(n, d - 1);
    let mut columns = Vec::with_capacity(n * source.len());
    for k in 0..n {
        for i in 0..source.len() {
            let mut comps = vec![Poly::zero(n, d); n];
            comps[k] = source.basis_poly(i);
            let t = ck_operator(&PolyVectorField::new(comps)?, q)?;
            let mut col = SparseVec::new();
            for (slot, p) in t.entries.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (idx, x) in target.to_vector(p) {
                    col.insert(slot * target.len() + idx, x);
                }
            }
            columns.push(col);
        }
    }
    Ok(LinearMapMatrix::from_columns(pairs * target.len(), columns))
}

/// Basis of the degree-`d` homogeneous conformal Killing fields.
pub fn ck_kernel(n: usize, d: u32, q: &QuadraticForm) -> Result<Vec<PolyVectorField>> {
    if n < 2 || q.n() != n {
        return Err(Error::precondition(
            "killing",
            format!("need n >= 2 and a form on C^n, got n = {n}"),
        ));
    }
    let basis = MonomialBasis::new(n, d);
    Ok(ck_matrix(d, q)?
        .kernel()
        .iter()
        .map(|v| PolyVectorField::from_vector(n, &basis, v))
        .collect())
}

pub fn ck_kernel_dim(n: usize, d: u32) -> Result<usize> {
    let q = QuadraticForm::standard(n);
    if n < 2 {
        return Err(Error::precondition("killing", "need n >= 2"));
    }
    let m = ck_matrix(d, &q)?;
    Ok(m.ncols() - m.rank())
}

/// Closed form of the kernel dimension per degree.
pub fn ck_kernel_dim_formula(n: usize, d: u32) -> usize {
    match (n, d) {
        (2, _) => 2,
        (_, 0) | (_, 2) => n,
        (_, 1) => n * (n - 1) / 2 + 1,
        _ => 0,
    }
}

/// True if `xi` is in the span of `basis` (all of one degree).
pub fn in_span(xi: &PolyVectorField, basis: &[PolyVectorField]) -> bool {
    if xi.is_zero() {
        return true;
    }
    let mono = MonomialBasis::new(xi.n, xi.degree);
    let cols: Vec<SparseVec> = basis
        .iter()
        .filter(|b| b.degree == xi.degree)
        .map(|b| b.to_vector(&mono))
        .collect();
    solve_in_span(&cols, &xi.to_vector(&mono)).is_some()
}

/// Named basis with structure constants `[e_a, e_b] = Σ_c c_ab^c e_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LieAlgebraPresentation {
    pub names: Vec<String>,
    pub basis: Vec<PolyVectorField>,
    #[serde(serialize_with = "serialize_structure")]
    pub structure: Vec<Vec<SparseVec>>,
}

#[derive(Serialize)]
struct StructureEntry {
    a: usize,
    b: usize,
    c: usize,
    coeff: String,
}

fn serialize_structure<S: serde::Serializer>(
    s: &[Vec<SparseVec>],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let entries: Vec<StructureEntry> = s
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter().enumerate().flat_map(move |(b, v)| {
                v.iter().map(move |(&c, x)| StructureEntry {
                    a,
                    b,
                    c,
                    coeff: format_rational(x),
                })
            })
        })
        .collect();
    entries.serialize(ser)
}

impl LieAlgebraPresentation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `[e_a, e_b]`.
    pub fn bracket_coords(&self, a: usize, b: usize) -> &SparseVec {
        &self.structure[a][b]
    }

    fn bracket_vec(&self, x: &SparseVec, b: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&a, c) in x {
            crate::linalg::axpy(&mut out, c, &self.structure[a][b]);
        }
        out
    }

    /// Basis pairs violating antisymmetry.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let mut s = self.structure[a][b].clone();
                crate::linalg::axpy(&mut s, &Rational::one(), &self.structure[b][a]);
                if !s.is_empty() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Basis triples where `[[a,b],c] + [[b,c],a] + [[c,a],b] ≠ 0`.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let dim = self.dim();
        let mut bad = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut s = self.bracket_vec(&self.structure[a][b], c);
                    let t = self.bracket_vec(&self.structure[b][c], a);
                    let u = self.bracket_vec(&self.structure[c][a], b);
                    crate::linalg::axpy(&mut s, &Rational::one(), &t);
                    crate::linalg::axpy(&mut s, &Rational::one(), &u);
                    if !s.is_empty() {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }
}

/// Translations, rotations, dilation and special conformal fields of
/// `(C^n, Σ z_i²)` with their structure constants.
pub fn conformal_algebra(n: usize) -> Result<LieAlgebraPresentation> {
    if n < 2 {
        return Err(Error::precondition("killing", "need n >= 2"));
    }
    let q = QuadraticForm::standard(n);
    let mut names = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        names.push(format!("translation P{}", i + 1));
        basis.push(PolyVectorField::translation(n, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            names.push(format!("rotation M{}{}", i + 1, j + 1));
            basis.push(PolyVectorField::rotation(n, i, j));
        }
    }
    names.push("dilation D".to_string());
    basis.push(PolyVectorField::dilation(n));
    for i in 0..n {
        names.push(format!("special conformal K{}", i + 1));
        basis.push(PolyVectorField::special_conformal(&q, i));
    }
    let mono: Vec<MonomialBasis> = (0..3).map(|d| MonomialBasis::new(n, d)).collect();
    let offsets = [0, n * mono[0].len(), n * (mono[0].len() + mono[1].len())];
    let embed = |f: &PolyVectorField| -> SparseVec {
        let d = f.degree as usize;
        f.to_vector(&mono[d])
            .into_iter()
            .map(|(k, x)| (offsets[d] + k, x))
            .collect()
    };
    let columns: Vec<SparseVec> = basis.iter().map(embed).collect();
    let mut structure = vec![vec![SparseVec::new(); basis.len()]; basis.len()];
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            let br = bracket(&basis[a], &basis[b])?;
            if br.is_zero() {
                continue;
            }
            if br.degree > 2 {
                return Err(Error::integrity(
                    "killing",
                    format!("[{}, {}] leaves degrees 0..=2", names[a], names[b]),
                ));
            }
            let coords = solve_in_span(&columns, &embed(&br)).ok_or_else(|| {
                Error::integrity(
                    "killing",
                    format!(
                        "[{}, {}] is not a conformal Killing field",
                        names[a], names[b]
                    ),
                )
            })?;
            structure[a][b] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
    }
    Ok(LieAlgebraPresentation {
        names,
        basis,
        structure,
    })
}

/// Square matrix over the rationals, dense.
pub type DenseMatrix = Vec<Vec<Rational>>;

fn zero_matrix(k: usize) -> DenseMatrix {
    vec![vec![Rational::zero(); k]; k]
}

pub fn commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let k = a.len();
    let mut out = zero_matrix(k);
    for i in 0..k {
        for j in 0..k {
            let mut s = Rational::zero();
            for l in 0..k {
                s += &a[i][l] * &b[l][j] - &b[i][l] * &a[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let k = a.len();
    let mut out = zero_matrix(k);
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// The split form `B` on `C ⊕ M ⊕ C`, coordinates `(+, x, -)`.
pub fn split_form(n: usize) -> DenseMatrix {
    let k = n + 2;
    let mut b = zero_matrix(k);
    b[0][k - 1] = Rational::one();
    b[k - 1][0] = Rational::one();
    for (i, row) in b.iter_mut().enumerate().take(n + 1).skip(1) {
        row[i] = Rational::one();
    }
    b
}

/// `X^T B + B X = 0`.
pub fn preserves_split_form(x: &DenseMatrix) -> bool {
    let k = x.len();
    let b = split_form(k - 2);
    let xt: DenseMatrix = (0..k)
        .map(|i| (0..k).map(|j| x[j][i].clone()).collect())
        .collect();
    let l = mat_mul(&xt, &b);
    let r = mat_mul(&b, x);
    (0..k).all(|i| (0..k).all(|j| (&l[i][j] + &r[i][j]).is_zero()))
}

/// Image of the named conformal basis in `so(n+2)` (see module docs).
pub fn so_embedding(n: usize) -> Vec<DenseMatrix> {
    let k = n + 2;
    let minus = k - 1;
    let mut out = Vec::new();
    for a in 0..n {
        let mut m = zero_matrix(k);
        m[1 + a][0] = rat(-1);
        m[minus][1 + a] = rat(1);
        out.push(m);
    }
    for i in 0..n {
        for j in i + 1..n {
            // field z_i ∂_j - z_j ∂_i is z ↦ Lz with L_ji = 1, L_ij = -1
            let mut m = zero_matrix(k);
            m[1 + j][1 + i] = rat(-1);
            m[1 + i][1 + j] = rat(1);
            out.push(m);
        }
    }
    let mut d = zero_matrix(k);
    d[0][0] = rat(1);
    d[minus][minus] = rat(-1);
    out.push(d);
    for a in 0..n {
        let mut m = zero_matrix(k);
        m[1 + a][minus] = rat(-2);
        m[0][1 + a] = rat(2);
        out.push(m);
    }
    out
}

/// Vector field on `M` induced by `X ∈ so(n+2)` through the null-cone chart
/// `z ↦ (1, z, -q(z)/2)`: `δz = (AX)_M - z (AX)_+`. This map reverses
/// brackets, so `-induced_field(φ(ξ)) = ξ`.
pub fn induced_field(x: &DenseMatrix) -> Result<PolyVectorField> {
    let k = x.len();
    let n = k - 2;
    let one = Poly::constant(n, Rational::one());
    let q = QuadraticForm::standard(n).as_poly();
    let chart: Vec<(Poly, u32)> = std::iter::once((one, 0))
        .chain((0..n).map(|i| (Poly::var(n, i), 1)))
        .chain(std::iter::once((q.scale(&ratio(-1, 2)), 2)))
        .collect();
    // (AX)_r as a sum of homogeneous pieces, indexed by degree
    let row = |r: usize| -> Vec<Poly> {
        let mut parts: Vec<Poly> = (0..3).map(|d| Poly::zero(n, d)).collect();
        for (c, (p, d)) in chart.iter().enumerate() {
            if !x[r][c].is_zero() {
                parts[*d as usize] = parts[*d as usize]
                    .add(&p.scale(&x[r][c]))
                    .expect("same degree");
            }
        }
        parts
    };
    let plus = row(0);
    // per component, homogeneous pieces of degree 0..=3
    let components = (0..n)
        .map(|i| {
            let zi = Poly::var(n, i);
            let mut parts = row(1 + i);
            parts.push(Poly::zero(n, 3));
            for (d, p) in plus.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                parts[d + 1] = parts[d + 1].sub(&zi.mul(p)?)?;
            }
            Ok(parts)
        })
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    let by_degree: Vec<Vec<Poly>> = (0..4)
        .map(|d| components.iter().map(|c| c[d].clone()).collect())
        .collect();
    let nonzero: Vec<usize> = (0..4)
        .filter(|&d| by_degree[d].iter().any(|p| !p.is_zero()))
        .collect();
    match nonzero[..] {
        [] => Ok(PolyVectorField::zero(n, 0)),
        [d] => PolyVectorField::new(by_degree[d].clone()),
        _ => Err(Error::precondition(
            "killing",
            "induced field is not homogeneous",
        )),
    }
}

/// Result of checking the conformal algebra against `so(n+2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsomorphismReport {
    pub n: usize,
    pub dim: usize,
    pub names: Vec<String>,
    pub jacobi_violations: usize,
    pub antisymmetry_violations: usize,
    pub image_rank: usize,
    pub checked_pairs: usize,
}

/// Builds the conformal algebra and its `so(n+2)` image and checks that the
/// map is a Lie algebra isomorphism by comparing structure constants.
pub fn so_np2_isomorphism(n: usize) -> Result<IsomorphismReport> {
    if n < 3 {
        return Err(Error::precondition(
            "killing",
            format!("need n >= 3, got {n}"),
        ));
    }
    let alg = conformal_algebra(n)?;
    let image = so_embedding(n);
    let dim = alg.dim();
    for (name, m) in alg.names.iter().zip(&image) {
        if !preserves_split_form(m) {
            return Err(Error::integrity(
                "killing",
                format!("image of {name} is not in so(n+2)"),
            ));
        }
    }
    let flat: Vec<SparseVec> = image
        .iter()
        .map(|m| {
            m.iter()
                .flatten()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        })
        .collect();
    let image_rank = crate::linalg::span_rank(&flat);
    let so_dim = (n + 2) * (n + 1) / 2;
    if image_rank != dim || dim != so_dim {
        return Err(Error::integrity(
            "killing",
            format!("image rank {image_rank}, algebra dim {dim}, so(n+2) dim {so_dim}"),
        ));
    }
    let mut checked = 0;
    for a in 0..dim {
        for b in 0..dim {
            let lhs = commutator(&image[a], &image[b]);
            let mut rhs = zero_matrix(n + 2);
            for (&c, x) in alg.bracket_coords(a, b) {
                for i in 0..n + 2 {
                    for j in 0..n + 2 {
                        rhs[i][j] += x * &image[c][i][j];
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::integrity(
                    "killing",
                    format!("bracket mismatch on ({}, {})", alg.names[a], alg.names[b]),
                ));
            }
            checked += 1;
        }
    }
    Ok(IsomorphismReport {
        n,
        dim,
        jacobi_violations: alg.jacobi_violations().len(),
        antisymmetry_violations: alg.antisymmetry_violations().len(),
        names: alg.names,
        image_rank,
        checked_pairs: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ck_operator_examples() {
        let q = QuadraticForm::standard(3);
        assert!(ck_operator(&PolyVectorField::translation(3, 0), &q)
            .unwrap()
            .is_zero());
        assert!(ck_operator(&PolyVectorField::dilation(3), &q)
            .unwrap()
            .is_zero());
        let mut comps = vec![Poly::zero(2, 1); 2];
        comps[1] = Poly::var(2, 0);
        let shear = PolyVectorField::new(comps).unwrap();
        let t = ck_operator(&shear, &QuadraticForm::standard(2)).unwrap();
        assert!(!t.is_zero());
        assert_eq!(t.get(0, 1), &Poly::constant(2, rat(1)));
    }

    #[test]
    fn special_conformal_fields_are_killing() {
        let q = QuadraticForm::standard(4);
        for i in 0..4 {
            let k = PolyVectorField::special_conformal(&q, i);
            assert!(ck_operator(&k, &q).unwrap().is_zero());
        }
        assert_eq!(ck_kernel(4, 2, &q).unwrap().len(), 4);
    }

    #[test]
    fn kernel_dims() {
        let dims: Vec<usize> = (0..5).map(|d| ck_kernel_dim(3, d).unwrap()).collect();
        assert_eq!(dims, vec![3, 4, 3, 0, 0]);
        for d in 0..7 {
            assert_eq!(ck_kernel_dim(2, d).unwrap(), 2);
        }
    }

    #[test]
    fn kernel_with_general_form() {
        let g = vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(1), rat(3), rat(0)],
            vec![rat(0), rat(0), rat(-1)],
        ];
        let q = QuadraticForm::new(g).unwrap();
        let dims: Vec<usize> = (0..4).map(|d| ck_kernel(3, d, &q).unwrap().len()).collect();
        assert_eq!(dims, vec![3, 4, 3, 0]);
        for i in 0..3 {
            let k = PolyVectorField::special_conformal(&q, i);
            assert!(ck_operator(&k, &q).unwrap().is_zero());
        }
    }

    #[test]
    fn bracket_grading_and_dilation() {
        let n = 3;
        let q = QuadraticForm::standard(n);
        let p = PolyVectorField::translation(n, 0);
        let k = PolyVectorField::special_conformal(&q, 0);
        let b = bracket(&p, &k).unwrap();
        assert_eq!(b.degree(), 1);
        // [∂_1, K_1] = 2 D + (rotation part, zero for i = i)
        assert_eq!(b, PolyVectorField::dilation(n).scale(&rat(2)));
        let r = PolyVectorField::rotation(n, 0, 1);
        assert_eq!(bracket(&r, &k).unwrap().degree(), 2);
        assert_eq!(bracket(&p, &r).unwrap().degree(), 0);
    }

    #[test]
    fn kernel_closed_under_bracket() {
        let n = 3;
        let q = QuadraticForm::standard(n);
        let ker: Vec<Vec<PolyVectorField>> = (0..3).map(|d| ck_kernel(n, d, &q).unwrap()).collect();
        for a in ker.iter().flatten() {
            for b in ker.iter().flatten() {
                let c = bracket(a, b).unwrap();
                if c.is_zero() {
                    continue;
                }
                assert!(c.degree() <= 2);
                assert!(in_span(&c, &ker[c.degree() as usize]));
            }
        }
    }

    #[test]
    fn isomorphism_n3() {
        let r = so_np2_isomorphism(3).unwrap();
        assert_eq!(r.dim, 10);
        assert_eq!(r.jacobi_violations, 0);
        assert_eq!(r.antisymmetry_violations, 0);
        assert!(so_np2_isomorphism(2).is_err());
    }

    #[test]
    fn embedding_matches_induced_fields() {
        let n = 3;
        let alg = conformal_algebra(n).unwrap();
        for (f, m) in alg.basis.iter().zip(so_embedding(n)) {
            let induced = induced_field(&m).unwrap();
            assert_eq!(induced.scale(&rat(-1)), *f);
        }
    }

    #[test]
    fn translations_and_special_conformal_are_transpose_dual() {
        let n = 4;
        let img = so_embedding(n);
        let rot = n * (n - 1) / 2;
        for a in 0..n {
            let p = &img[a];
            let k = &img[n + rot + 1 + a];
            let pt: DenseMatrix = (0..n + 2)
                .map(|i| (0..n + 2).map(|j| p[j][i].clone()).collect())
                .collect();
            let half_k: DenseMatrix = k
                .iter()
                .map(|r| r.iter().map(|x| x * ratio(-1, 2)).collect())
                .collect();
            assert_eq!(pt, half_k);
            let cube = mat_mul(&mat_mul(p, p), p);
            assert!(cube.iter().flatten().all(Zero::is_zero));
            let cube = mat_mul(&mat_mul(k, k), k);
            assert!(cube.iter().flatten().all(Zero::is_zero));
        }
    }
}
