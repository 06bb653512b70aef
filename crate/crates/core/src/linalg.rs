//! Dense complex matrix kernel.
//!
//! Row-major storage, LU inversion with partial pivoting, Kronecker products
//! and the site-local tensor kernel used by the TL and braid checks.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar type used everywhere: double-precision complex.
pub type ComplexValue = Complex64;

pub const ZERO: ComplexValue = Complex64::new(0.0, 0.0);
pub const ONE: ComplexValue = Complex64::new(1.0, 0.0);

/// Builds a complex value, rejecting NaN and infinities.
pub fn complex(re: f64, im: f64) -> Result<ComplexValue> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(Error::NonFinite(format!("({re}, {im})")))
    }
}

/// `exp(2πi k / m)`. Quarter turns are returned exactly.
pub fn unit_root(k: i64, m: u64) -> ComplexValue {
    assert!(m >= 1, "unit_root order must be positive");
    let m_i = m as i128;
    let r = (k as i128).rem_euclid(m_i);
    if (4 * r) % m_i == 0 {
        return match (4 * r) / m_i {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = std::f64::consts::TAU * (r as f64) / (m as f64);
    Complex64::from_polar(1.0, theta)
}

/// Numerical tolerances shared by every check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub fixture_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            fixture_tol: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, fixture_tol: f64) -> Result<Self> {
        if !(abs_tol >= 0.0 && fixture_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must be nonnegative, got abs_tol={abs_tol}, fixture_tol={fixture_tol}"
            )));
        }
        Ok(Self {
            abs_tol,
            fixture_tol,
        })
    }

    pub fn with_abs(abs_tol: f64) -> Result<Self> {
        Self::new(abs_tol, Self::default().fixture_tol)
    }
}

/// Result of an entrywise comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub equal: bool,
    pub max_residual: f64,
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexValue>,
}

impl DenseMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<ComplexValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(z) = data.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(format!("matrix entry {z}")));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literals and tests.
    pub fn from_rows<R: AsRef<[ComplexValue]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self::from_vec(r, c, data).expect("valid literal matrix")
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<ComplexValue>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ComplexValue) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diag(values: &[ComplexValue]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn filled(rows: usize, cols: usize, value: ComplexValue) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Matrix unit `e_ab` of size `n` (zero-indexed `a`, `b`).
    pub fn unit(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(a, b)] = ONE;
        m
    }

    /// The flip `Π(v ⊗ v') = v' ⊗ v` on `C^n ⊗ C^n`.
    pub fn flip(n: usize) -> Self {
        let mut m = Self::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                m[(b * n + a, a * n + b)] = ONE;
            }
        }
        m
    }

    /// Permutation matrix with `P[i][perm[i]] = 1`, so `(P·X)` row `i` is row `perm[i]` of `X`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        check_permutation(perm)?;
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m[(i, p)] = ONE;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[ComplexValue] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[ComplexValue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<ComplexValue> {
        (i < self.rows && j < self.cols).then(|| self.data[i * self.cols + j])
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: ComplexValue) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(ComplexValue) -> ComplexValue) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(ComplexValue, ComplexValue) -> ComplexValue) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Maximum entrywise distance to another matrix of the same shape.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    pub fn kron(&self, other: &Self) -> Self {
        kron(self, other)
    }

    pub fn inverse(&self, tol: &Tolerance) -> Result<Self> {
        inverse(self, tol)
    }

    /// Integer power; negative exponents go through `inverse`.
    pub fn pow(&self, k: i64, tol: &Tolerance) -> Result<Self> {
        let n = self.require_square()?;
        let base = if k < 0 { self.inverse(tol)? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = mat_mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// Maximum of `|self - s·I|`.
    pub fn distance_to_scaled_identity(&self, s: ComplexValue) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { s } else { ZERO };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = ComplexValue;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexValue {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexValue {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.checked_add(rhs).expect("shape mismatch in +")
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.checked_sub(rhs).expect("shape mismatch in -")
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        mat_mul(self, rhs).expect("shape mismatch in *")
    }
}

pub(crate) fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = DenseMatrix::zeros(a.rows, b.cols);
    // i-k-j order keeps the inner loop on contiguous rows of b and out.
    for i in 0..a.rows {
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            if aik == ZERO {
                continue;
            }
            let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// Kronecker product: `(a⊗b)[i·p+k, j·q+l] = a[i,j]·b[k,l]` for `b` of shape `p×q`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (p, q) = b.shape();
    let rows = a.rows * p;
    let cols = a.cols * q;
    let mut data = vec![ZERO; rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..p {
                let base = (i * p + k) * cols + j * q;
                for l in 0..q {
                    data[base + l] = aij * b[(k, l)];
                }
            }
        }
    }
    DenseMatrix { rows, cols, data }
}

/// Inverse by LU with partial pivoting on complex magnitude.
///
/// A pivot smaller than `tol.abs_tol × max|a|` is reported as singular.
pub fn inverse(a: &DenseMatrix, tol: &Tolerance) -> Result<DenseMatrix> {
    let n = a.require_square()?;
    let threshold = tol.abs_tol * a.max_abs();
    let mut lu = a.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let (piv_row, piv_mag) = (col..n)
            .map(|r| (r, lu[r * n + col].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_mag == 0.0 || piv_mag < threshold {
            return Err(Error::Singular {
                pivot: piv_mag,
                threshold,
            });
        }
        if piv_row != col {
            for j in 0..n {
                lu.swap(col * n + j, piv_row * n + j);
            }
            perm.swap(col, piv_row);
        }
        let pivot = lu[col * n + col];
        for r in col + 1..n {
            let factor = lu[r * n + col] / pivot;
            lu[r * n + col] = factor;
            if factor == ZERO {
                continue;
            }
            for j in col + 1..n {
                let u = lu[col * n + j];
                lu[r * n + j] -= factor * u;
            }
        }
    }

    // Solve L U x = P e_k column by column.
    let mut inv = DenseMatrix::zeros(n, n);
    let mut x = vec![ZERO; n];
    for k in 0..n {
        for i in 0..n {
            let mut s = if perm[i] == k { ONE } else { ZERO };
            for j in 0..i {
                s -= lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[i * n + j] * x[j];
            }
            x[i] = s / lu[i * n + i];
        }
        for i in 0..n {
            inv[(i, k)] = x[i];
        }
    }
    Ok(inv)
}

/// Entrywise reciprocal.
pub fn hadamard_inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a[(i, j)].norm() == 0.0 {
                return Err(Error::ZeroEntry { row: i, col: j });
            }
        }
    }
    Ok(a.map(|z| z.inv()))
}

pub fn approx_eq(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> Result<Comparison> {
    let max_residual = a.max_diff(b)?;
    Ok(Comparison {
        equal: max_residual <= tol,
        max_residual,
    })
}

/// `I^{⊗(site-1)} ⊗ local ⊗ I^{⊗(sites-site-1)}` as a dense matrix.
///
/// `local` acts on two adjacent sites of local dimension `n`; `site` is 1-based.
pub fn embed_two_site(local: &DenseMatrix, site: usize, sites: usize, n: usize) -> Result<DenseMatrix> {
    check_two_site(local, site, sites, n)?;
    let left = DenseMatrix::identity(n.pow((site - 1) as u32));
    let right = DenseMatrix::identity(n.pow((sites - site - 1) as u32));
    Ok(kron(&kron(&left, local), &right))
}

fn check_two_site(local: &DenseMatrix, site: usize, sites: usize, n: usize) -> Result<()> {
    if local.shape() != (n * n, n * n) {
        return Err(Error::DimensionMismatch(format!(
            "local operator must be {0}x{0}, got {1}x{2}",
            n * n,
            local.rows,
            local.cols
        )));
    }
    if site == 0 || sites < 2 || site > sites - 1 {
        return Err(Error::OutOfRange(format!(
            "site {site} must lie in 1..={} for {sites} sites",
            sites.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Computes `(I ⊗ local ⊗ I)·x` without materializing the embedded operator.
///
/// Cost is `n^N · n² · cols(x)` instead of `n^{2N} · cols(x)`.
pub fn apply_two_site(
    local: &DenseMatrix,
    site: usize,
    sites: usize,
    n: usize,
    x: &DenseMatrix,
) -> Result<DenseMatrix> {
    check_two_site(local, site, sites, n)?;
    let dim = n.pow(sites as u32);
    if x.rows != dim {
        return Err(Error::DimensionMismatch(format!(
            "operand has {} rows, expected {dim}",
            x.rows
        )));
    }
    let right = n.pow((sites - site - 1) as u32);
    let left = n.pow((site - 1) as u32);
    let nn = n * n;
    let cols = x.cols;
    let mut out = DenseMatrix::zeros(dim, cols);
    for l in 0..left {
        for r in 0..right {
            for a in 0..nn {
                let out_row = (l * nn + a) * right + r;
                let dst = &mut out.data[out_row * cols..(out_row + 1) * cols];
                for b in 0..nn {
                    let lab = local.data[a * nn + b];
                    if lab == ZERO {
                        continue;
                    }
                    let src_row = (l * nn + b) * right + r;
                    let src = &x.data[src_row * cols..(src_row + 1) * cols];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d += lab * s;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for DenseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let data = repr
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        DenseMatrix::from_vec(repr.rows, repr.cols, data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    fn f2() -> DenseMatrix {
        DenseMatrix::from_real_rows(&[[1.0, 1.0], [1.0, -1.0]])
    }

    #[test]
    fn mat_mul_units_and_identity() {
        let i2 = DenseMatrix::identity(2);
        assert_eq!(mat_mul(&i2, &i2).unwrap(), i2);
        let e12 = DenseMatrix::unit(2, 0, 1);
        let e21 = DenseMatrix::unit(2, 1, 0);
        assert_eq!(mat_mul(&e12, &e21).unwrap(), DenseMatrix::unit(2, 0, 0));
        // [[1,1],[1,-1]]^2 = 2I by hand
        assert_eq!(mat_mul(&f2(), &f2()).unwrap(), DenseMatrix::identity(2).scale(c(2.0, 0.0)));
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_identity_and_unit_placement() {
        let i6 = kron(&DenseMatrix::identity(2), &DenseMatrix::identity(3));
        assert_eq!(i6, DenseMatrix::identity(6));
        let k = kron(&DenseMatrix::unit(2, 0, 0), &DenseMatrix::unit(2, 1, 1));
        let mut expected = DenseMatrix::zeros(4, 4);
        expected[(1, 1)] = ONE;
        assert_eq!(k, expected);
        let k = kron(&DenseMatrix::unit(2, 0, 1), &DenseMatrix::unit(2, 1, 1));
        assert_eq!(k[(1, 3)], ONE);
        assert_eq!(k.max_abs(), 1.0);
    }

    #[test]
    fn inverse_examples() {
        let tol = Tolerance::default();
        assert_eq!(inverse(&DenseMatrix::identity(3), &tol).unwrap(), DenseMatrix::identity(3));
        let inv = inverse(&f2(), &tol).unwrap();
        assert!(approx_eq(&inv, &f2().scale(c(0.5, 0.0)), 1e-15).unwrap().equal);
        assert!(matches!(
            inverse(&DenseMatrix::zeros(2, 2), &tol),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            inverse(&DenseMatrix::zeros(2, 3), &tol),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn singularity_is_relative() {
        let tol = Tolerance::default();
        let tiny = DenseMatrix::identity(3).scale(c(1e-30, 0.0));
        assert!(inverse(&tiny, &tol).is_ok());
        let rank1 = DenseMatrix::filled(3, 3, c(1e10, 0.0));
        assert!(inverse(&rank1, &tol).is_err());
    }

    #[test]
    fn hadamard_inverse_examples() {
        let ones = DenseMatrix::filled(3, 3, ONE);
        assert_eq!(hadamard_inverse(&ones).unwrap(), ones);
        let mut z = ones.clone();
        z[(1, 2)] = ZERO;
        assert_eq!(hadamard_inverse(&z), Err(Error::ZeroEntry { row: 1, col: 2 }));
    }

    #[test]
    fn approx_eq_examples() {
        let i = DenseMatrix::identity(2);
        let cmp = approx_eq(&f2(), &f2(), 0.0).unwrap();
        assert!(cmp.equal && cmp.max_residual == 0.0);
        let mut j = i.clone();
        j[(0, 0)] += c(1e-6, 0.0);
        let cmp = approx_eq(&i, &j, 1e-9).unwrap();
        assert!(!cmp.equal);
        assert!((cmp.max_residual - 1e-6).abs() < 1e-15);
        let two_i = i.scale(c(2.0, 0.0));
        assert!(approx_eq(&(&f2() * &f2()), &two_i, 1e-12).unwrap().equal);
        assert!(approx_eq(&i, &DenseMatrix::identity(3), 1.0).is_err());
    }

    #[test]
    fn unit_root_examples() {
        assert_eq!(unit_root(0, 7), ONE);
        assert_eq!(unit_root(1, 2), c(-1.0, 0.0));
        assert_eq!(unit_root(-1, 4), c(0.0, -1.0));
        let w = unit_root(1, 3);
        assert!((w * w + w + ONE).norm() < 1e-15);
    }

    #[test]
    fn complex_rejects_non_finite() {
        assert!(complex(f64::NAN, 0.0).is_err());
        assert!(complex(0.0, f64::INFINITY).is_err());
        assert!(complex(1.0, -2.0).is_ok());
        assert!(DenseMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn negative_powers_use_inverse() {
        let tol = Tolerance::default();
        let m = DenseMatrix::from_rows(&[[ZERO, ONE], [c(2.0, 0.0), ZERO]]);
        let p = m.pow(3, &tol).unwrap();
        let q = m.pow(-3, &tol).unwrap();
        assert!((&p * &q).distance_to_scaled_identity(ONE) < 1e-14);
        assert_eq!(m.pow(0, &tol).unwrap(), DenseMatrix::identity(2));
    }

    #[test]
    fn flip_swaps_tensor_factors() {
        let a = DenseMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let b = DenseMatrix::from_real_rows(&[[0.0, 5.0], [6.0, 7.0]]);
        let p = DenseMatrix::flip(2);
        let lhs = &(&p * &kron(&a, &b)) * &p;
        assert_eq!(lhs, kron(&b, &a));
    }

    #[test]
    fn apply_two_site_matches_dense_embedding() {
        let n = 2;
        let local = DenseMatrix::from_fn(4, 4, |i, j| c((i * 4 + j) as f64, (i as f64) - (j as f64)));
        let x = DenseMatrix::from_fn(16, 3, |i, j| c(i as f64 * 0.5, j as f64));
        for site in 1..=3 {
            let dense = embed_two_site(&local, site, 4, n).unwrap();
            let expected = &dense * &x;
            let got = apply_two_site(&local, site, 4, n, &x).unwrap();
            assert!(got.max_diff(&expected).unwrap() < 1e-12, "site {site}");
        }
        assert!(apply_two_site(&local, 4, 4, n, &x).is_err());
        assert!(embed_two_site(&local, 0, 4, n).is_err());
    }

    #[test]
    fn json_rejects_wrong_length() {
        let bad = r#"{"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<DenseMatrix>(bad).is_err());
        let good = r#"{"rows":1,"cols":2,"entries":[[1,0],[0,-1]]}"#;
        let m: DenseMatrix = serde_json::from_str(good).unwrap();
        assert_eq!(m[(0, 1)], c(0.0, -1.0));
    }
}
