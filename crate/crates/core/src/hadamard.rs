//! Complex, generalized and Butson Hadamard matrices.
//!
//! A generalized Hadamard matrix (GHM) is an invertible `n×n` matrix `U` with
//! no zero entries whose entrywise reciprocal equals `n·(U⁻¹)ᵗ`. Complex
//! Hadamard matrices (CHM) are the unimodular GHM.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_permutation, hadamard_inverse, inverse, mat_mul, unit_root, ComplexValue, DenseMatrix,
    Tolerance, ONE,
};

/// Largest root-of-unity order probed when reporting a Butson order.
pub const MAX_BUTSON_ORDER: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GhmFailure {
    NotSquare,
    ZeroEntry { row: usize, col: usize },
    Singular,
    Residual,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadamardVerdict {
    pub is_chm: bool,
    pub is_ghm: bool,
    /// Smallest `q ≤ MAX_BUTSON_ORDER` for which the matrix is Butson of order `q`.
    pub butson_order: Option<u64>,
    /// `max |n·U_ij·(U⁻¹)_ji − 1|`, infinite when `U` cannot be inverted.
    pub max_residual: f64,
    pub failure: Option<GhmFailure>,
}

impl HadamardVerdict {
    fn rejected(failure: GhmFailure) -> Self {
        Self {
            is_chm: false,
            is_ghm: false,
            butson_order: None,
            max_residual: f64::INFINITY,
            failure: Some(failure),
        }
    }
}

/// Classifies `u` against the GHM, CHM and Butson predicates.
pub fn is_ghm(u: &DenseMatrix, tol: &Tolerance) -> HadamardVerdict {
    let Ok(n) = u.require_square() else {
        return HadamardVerdict::rejected(GhmFailure::NotSquare);
    };
    if let Err(Error::ZeroEntry { row, col }) = hadamard_inverse(u) {
        return HadamardVerdict::rejected(GhmFailure::ZeroEntry { row, col });
    }
    let Ok(inv) = inverse(u, tol) else {
        return HadamardVerdict::rejected(GhmFailure::Singular);
    };
    let scale = n as f64;
    let mut max_residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let r = (u[(i, j)] * inv[(j, i)] * scale - ONE).norm();
            max_residual = max_residual.max(r);
        }
    }
    let ghm = max_residual <= tol.abs_tol;
    let chm = ghm && is_chm(u, tol);
    let butson_order = if chm { butson_order(u, tol) } else { None };
    HadamardVerdict {
        is_chm: chm,
        is_ghm: ghm,
        butson_order,
        max_residual,
        failure: (!ghm).then_some(GhmFailure::Residual),
    }
}

/// Unimodular entries and `U·U† = n·I`.
pub fn is_chm(u: &DenseMatrix, tol: &Tolerance) -> bool {
    let Ok(n) = u.require_square() else {
        return false;
    };
    if u.as_slice().iter().any(|z| (z.norm() - 1.0).abs() > tol.abs_tol) {
        return false;
    }
    let gram = mat_mul(u, &u.conj_transpose()).expect("square");
    gram.distance_to_scaled_identity(Complex64::new(n as f64, 0.0)) <= tol.abs_tol * n as f64
}

/// Distance from `z` to the nearest `q`-th root of unity.
pub fn root_snap_residual(z: ComplexValue, q: u64) -> f64 {
    let turns = z.arg() / std::f64::consts::TAU;
    let k = (turns * q as f64).round() as i64;
    (z - unit_root(k, q)).norm()
}

pub fn is_butson(u: &DenseMatrix, q: u64, tol: &Tolerance) -> bool {
    q >= 1 && is_chm(u, tol) && u.as_slice().iter().all(|&z| root_snap_residual(z, q) <= tol.abs_tol)
}

fn butson_order(u: &DenseMatrix, tol: &Tolerance) -> Option<u64> {
    (1..=MAX_BUTSON_ORDER).find(|&q| u.as_slice().iter().all(|&z| root_snap_residual(z, q) <= tol.abs_tol))
}

/// `H' = σ₁·D₁·H·D₂·σ₂`.
///
/// Permutations are stored as index maps: `(σ₁X)` row `i` is row `left_perm[i]`
/// of `X`, and `(Xσ₂)` column `j` is column `right_perm[j]` of `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceMove {
    pub left_perm: Vec<usize>,
    pub left_diag: Vec<ComplexValue>,
    pub right_diag: Vec<ComplexValue>,
    pub right_perm: Vec<usize>,
}

impl EquivalenceMove {
    pub fn identity(n: usize) -> Self {
        Self {
            left_perm: (0..n).collect(),
            left_diag: vec![ONE; n],
            right_diag: vec![ONE; n],
            right_perm: (0..n).collect(),
        }
    }

    pub fn diagonal(left: Vec<ComplexValue>, right: Vec<ComplexValue>) -> Self {
        let n = left.len();
        Self {
            left_perm: (0..n).collect(),
            left_diag: left,
            right_diag: right,
            right_perm: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.left_perm.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if [self.left_diag.len(), self.right_diag.len(), self.right_perm.len()]
            .iter()
            .any(|&l| l != n)
        {
            return Err(Error::DimensionMismatch("equivalence move components differ in size".into()));
        }
        check_permutation(&self.left_perm)?;
        check_permutation(&self.right_perm)?;
        if let Some(i) = self.left_diag.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::ZeroEntry { row: i, col: i });
        }
        if let Some(i) = self.right_diag.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::ZeroEntry { row: i, col: i });
        }
        Ok(())
    }

    /// The move undoing `self`: `apply(apply(u, m), m.inverse()) == u`.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut left_perm = vec![0; n];
        let mut right_perm = vec![0; n];
        for i in 0..n {
            left_perm[self.left_perm[i]] = i;
            right_perm[self.right_perm[i]] = i;
        }
        Self {
            left_diag: (0..n).map(|k| self.left_diag[self.left_perm[k]].inv()).collect(),
            right_diag: (0..n).map(|k| self.right_diag[self.right_perm[k]].inv()).collect(),
            left_perm,
            right_perm,
        }
    }
}

pub fn apply_equivalence(u: &DenseMatrix, m: &EquivalenceMove) -> Result<DenseMatrix> {
    let n = u.require_square()?;
    if m.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "move of size {} applied to {n}x{n} matrix",
            m.dim()
        )));
    }
    m.validate()?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        let a = m.left_perm[i];
        let b = m.right_perm[j];
        m.left_diag[a] * u[(a, b)] * m.right_diag[b]
    }))
}

/// Scales rows and columns so the first row and column become all ones.
///
/// Left factor is `diag(1/U_i1)`, right factor `diag(U_11/U_1j)`.
pub fn dephase(u: &DenseMatrix) -> Result<(DenseMatrix, EquivalenceMove)> {
    let n = u.require_square()?;
    for i in 0..n {
        if u[(i, 0)].norm() == 0.0 {
            return Err(Error::ZeroEntry { row: i, col: 0 });
        }
        if u[(0, i)].norm() == 0.0 {
            return Err(Error::ZeroEntry { row: 0, col: i });
        }
    }
    let u11 = u[(0, 0)];
    let left = (0..n).map(|i| u[(i, 0)].inv()).collect();
    let right = (0..n).map(|j| u11 / u[(0, j)]).collect();
    let mv = EquivalenceMove::diagonal(left, right);
    let mut out = apply_equivalence(u, &mv)?;
    // the first row/column are exactly one by construction; remove rounding
    for k in 0..n {
        out[(k, 0)] = ONE;
        out[(0, k)] = ONE;
    }
    Ok((out, mv))
}

pub fn is_dephased(u: &DenseMatrix, tol: f64) -> bool {
    u.is_square() && (0..u.rows()).all(|k| (u[(k, 0)] - ONE).norm() <= tol && (u[(0, k)] - ONE).norm() <= tol)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

/// Fourier matrix `Ω_ab = ω^{ℓ(a−1)(b−1)}`, `ω = e^{2πi/n}`.
pub fn fourier(n: usize, ell: i64) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("fourier size must be positive".into()));
    }
    if gcd_i64(ell, n as i64) != 1 {
        return Err(Error::InvalidParameter(format!("ℓ = {ell} is not coprime to n = {n}")));
    }
    Ok(DenseMatrix::from_fn(n, n, |a, b| unit_root(ell * (a * b) as i64, n as u64)))
}

fn require_nonzero(name: &str, z: ComplexValue) -> Result<()> {
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        Err(Error::InvalidParameter(format!("{name} must be finite and nonzero, got {z}")))
    } else {
        Ok(())
    }
}

/// The one-parameter family `F4(a)`; CHM for `|a| = 1`, GHM for any `a ≠ 0`.
pub fn f4_family(a: ComplexValue) -> Result<DenseMatrix> {
    require_nonzero("a", a)?;
    let m1 = -ONE;
    Ok(DenseMatrix::from_rows(&[
        [ONE, ONE, ONE, ONE],
        [ONE, m1, ONE, m1],
        [ONE, a, m1, -a],
        [ONE, -a, m1, a],
    ]))
}

/// The two-parameter family `F6(a, b)` with `ω = e^{iπ/3}`.
pub fn f6_family(a: ComplexValue, b: ComplexValue) -> Result<DenseMatrix> {
    require_nonzero("a", a)?;
    require_nonzero("b", b)?;
    let w2 = unit_root(2, 6);
    let w4 = unit_root(4, 6);
    let m1 = -ONE;
    Ok(DenseMatrix::from_rows(&[
        [ONE, ONE, ONE, ONE, ONE, ONE],
        [ONE, w2, w4, ONE, w2, w4],
        [ONE, w4, w2, ONE, w4, w2],
        [ONE, a, b, m1, -a, -b],
        [ONE, a * w2, b * w4, m1, -a * w2, -b * w4],
        [ONE, a * w4, b * w2, m1, -a * w4, -b * w2],
    ]))
}

/// Diţă's block construction: block `(i, j)` of the result is `A_ij · B⁽ⁱ⁾`.
pub fn dita(a: &DenseMatrix, bs: &[DenseMatrix]) -> Result<DenseMatrix> {
    let n = a.require_square()?;
    if bs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} blocks for a {n}x{n} outer matrix, got {}",
            bs.len()
        )));
    }
    let m = bs[0].require_square()?;
    for (k, b) in bs.iter().enumerate() {
        if b.shape() != (m, m) {
            return Err(Error::DimensionMismatch(format!(
                "block {k} is {}x{}, expected {m}x{m}",
                b.rows(),
                b.cols()
            )));
        }
    }
    let mut out = DenseMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let aij = a[(i, j)];
            for k in 0..m {
                for l in 0..m {
                    out[(i * m + k, j * m + l)] = aij * bs[i][(k, l)];
                }
            }
        }
    }
    Ok(out)
}
