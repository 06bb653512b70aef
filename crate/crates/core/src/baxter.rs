//! Hecke braid generators from TL generators, Jones Baxterization, and
//! residual checks of the constant and spectral Yang-Baxter equations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse, kron, mat_mul, ComplexValue, DenseMatrix, Tolerance};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 20;

/// `q` with `q + 1/q = √ν`: `q = (√ν + √(ν − 4))/2`, principal branches.
pub fn q_from_nu(nu: ComplexValue) -> ComplexValue {
    let four = Complex64::new(4.0, 0.0);
    (nu.sqrt() + (nu - four).sqrt()) / 2.0
}

/// `ω(q) = q − 1/q`.
pub fn omega_of_q(q: ComplexValue) -> ComplexValue {
    q - q.inv()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidData {
    pub q: ComplexValue,
    pub nu: ComplexValue,
    pub r_check: DenseMatrix,
}

impl BraidData {
    /// Local dimension `n` with `Ř` of size `n²×n²`.
    pub fn local_dim(&self) -> Result<usize> {
        perfect_square_root(self.r_check.rows())
    }

    /// `max |(Ř − q)(Ř + 1/q)|`.
    pub fn hecke_residual(&self) -> f64 {
        let id = DenseMatrix::identity(self.r_check.rows());
        let a = &self.r_check - &id.scale(self.q);
        let b = &self.r_check + &id.scale(self.q.inv());
        (&a * &b).max_abs()
    }

    /// `max |Ř⁻¹ − (Ř − ω(q))|`, the inverse predicted by the Hecke relation.
    pub fn hecke_inverse_residual(&self, tol: &Tolerance) -> Result<f64> {
        let inv = inverse(&self.r_check, tol)?;
        let id = DenseMatrix::identity(self.r_check.rows());
        let predicted = &self.r_check - &id.scale(omega_of_q(self.q));
        inv.max_diff(&predicted)
    }
}

fn perfect_square_root(d: usize) -> Result<usize> {
    let n = (d as f64).sqrt().round() as usize;
    if n * n == d && n > 0 {
        Ok(n)
    } else {
        Err(Error::DimensionMismatch(format!("{d} is not a perfect square")))
    }
}

/// `Ř = q·I − T/√ν`.
///
/// Requires `T² ≈ ν·T` within `tol.abs_tol` (scaled by `max(1, |T|²)`).
pub fn braid_from_tl(t_local: &DenseMatrix, nu: ComplexValue, tol: &Tolerance) -> Result<BraidData> {
    let d = t_local.require_square()?;
    perfect_square_root(d)?;
    if nu.norm() == 0.0 {
        return Err(Error::InvalidParameter("ν must be nonzero".into()));
    }
    let sq = mat_mul(t_local, t_local)?;
    let loop_residual = sq.max_diff(&t_local.scale(nu))?;
    let scale = t_local.max_abs().powi(2).max(1.0);
    if loop_residual > tol.abs_tol * scale {
        return Err(Error::Precondition(format!(
            "T² ≠ νT (residual {loop_residual:e})"
        )));
    }
    let q = q_from_nu(nu);
    let x = t_local.scale(-nu.sqrt().inv());
    let r_check = &DenseMatrix::identity(d).scale(q) + &x;
    Ok(BraidData { q, nu, r_check })
}

/// `max |Ř₁₂Ř₂₃Ř₁₂ − Ř₂₃Ř₁₂Ř₂₃|` on three sites.
pub fn check_braid(r_check: &DenseMatrix) -> Result<f64> {
    let n = perfect_square_root(r_check.require_square()?)?;
    let id = DenseMatrix::identity(n);
    let r12 = kron(r_check, &id);
    let r23 = kron(&id, r_check);
    let lhs = &(&r12 * &r23) * &r12;
    let rhs = &(&r23 * &r12) * &r23;
    lhs.max_diff(&rhs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baxterized {
    /// `(u − 1/u)Ř + (ω(q)/u)·I`.
    pub matrix: DenseMatrix,
    /// `max |uŘ − Ř⁻¹/u − matrix|`.
    pub formula_gap: f64,
}

/// `Ř(u) = uŘ − u⁻¹Ř⁻¹ = (u − 1/u)Ř + (ω(q)/u)·I`; both forms are evaluated.
pub fn baxterize(b: &BraidData, u: ComplexValue, tol: &Tolerance) -> Result<Baxterized> {
    let matrix = baxterize_closed(b, u)?;
    let inv = inverse(&b.r_check, tol)?;
    let direct = &b.r_check.scale(u) - &inv.scale(u.inv());
    let formula_gap = direct.max_diff(&matrix)?;
    Ok(Baxterized { matrix, formula_gap })
}

fn baxterize_closed(b: &BraidData, u: ComplexValue) -> Result<DenseMatrix> {
    if u.norm() == 0.0 {
        return Err(Error::InvalidParameter("spectral parameter must be nonzero".into()));
    }
    let id = DenseMatrix::identity(b.r_check.rows());
    Ok(&b.r_check.scale(u - u.inv()) + &id.scale(omega_of_q(b.q) / u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSample {
    pub u: ComplexValue,
    pub w: ComplexValue,
    pub residual: f64,
}

/// `(u, w) = (e^{z₁}, e^{z₂})` with `z` uniform in the box `[−1, 1]²`.
pub fn default_samples(seed: u64, count: usize) -> Vec<(ComplexValue, ComplexValue)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        z.exp()
    };
    (0..count).map(|_| (draw(), draw())).collect()
}

/// Residual of `Ř₁₂(u)Ř₂₃(uw)Ř₁₂(w) = Ř₂₃(w)Ř₁₂(uw)Ř₂₃(u)` per sample.
pub fn spectral_ybe_samples(b: &BraidData, samples: &[(ComplexValue, ComplexValue)]) -> Result<Vec<SpectralSample>> {
    let n = b.local_dim()?;
    let id = DenseMatrix::identity(n);
    samples
        .iter()
        .map(|&(u, w)| {
            let ru = baxterize_closed(b, u)?;
            let rw = baxterize_closed(b, w)?;
            let ruw = baxterize_closed(b, u * w)?;
            let lhs = &(&kron(&ru, &id) * &kron(&id, &ruw)) * &kron(&rw, &id);
            let rhs = &(&kron(&id, &rw) * &kron(&ruw, &id)) * &kron(&id, &ru);
            Ok(SpectralSample {
                u,
                w,
                residual: lhs.max_diff(&rhs)?,
            })
        })
        .collect()
}

/// Worst spectral Yang-Baxter residual over the samples.
pub fn check_spectral_ybe(b: &BraidData, samples: &[(ComplexValue, ComplexValue)]) -> Result<f64> {
    Ok(spectral_ybe_samples(b, samples)?
        .iter()
        .map(|s| s.residual)
        .fold(0.0, f64::max))
}

/// `R = Π·Ř`.
pub fn to_plain_r(b: &BraidData) -> Result<DenseMatrix> {
    let n = b.local_dim()?;
    mat_mul(&DenseMatrix::flip(n), &b.r_check)
}

/// `max |R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂|` on three sites; `R₁₃ = Π₂₃R₁₂Π₂₃`.
pub fn check_ybe(r: &DenseMatrix) -> Result<f64> {
    let n = perfect_square_root(r.require_square()?)?;
    let id = DenseMatrix::identity(n);
    let r12 = kron(r, &id);
    let r23 = kron(&id, r);
    let p23 = kron(&id, &DenseMatrix::flip(n));
    let r13 = &(&p23 * &r12) * &p23;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    lhs.max_diff(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use crate::tlrep::{build_local_generator, fixture_u2, u2_ansatz};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    #[test]
    fn q_examples() {
        assert!((q_from_nu(c(4.0, 0.0)) - ONE).norm() < 1e-15);
        let q3 = q_from_nu(c(3.0, 0.0));
        assert!((q3 - c(3f64.sqrt() / 2.0, 0.5)).norm() < 1e-15);
        let q9 = q_from_nu(c(9.0, 0.0));
        assert!((q9 - c((3.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-14);
        for nu in [c(2.0, 0.0), c(5.0, 0.0), c(-1.0, 2.0)] {
            let q = q_from_nu(nu);
            assert!((q + q.inv() - nu.sqrt()).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_generator_gives_scalar_braid() {
        let b = braid_from_tl(&DenseMatrix::zeros(4, 4), c(3.0, 0.0), &tol()).unwrap();
        assert!(b.r_check.max_diff(&DenseMatrix::identity(4).scale(b.q)).unwrap() < 1e-15);
        assert!(b.hecke_residual() < 1e-15);
    }

    #[test]
    fn braid_from_u2() {
        let b = braid_from_tl(&fixture_u2(), c(3.0, 0.0), &tol()).unwrap();
        assert!(b.hecke_residual() <= 1e-10);
        assert!(b.hecke_inverse_residual(&tol()).unwrap() <= 1e-10);
        assert!(check_braid(&b.r_check).unwrap() <= 1e-9);
    }

    #[test]
    fn braid_from_tl_rejects_non_projector() {
        let t = DenseMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64, 0.0));
        assert!(matches!(
            braid_from_tl(&t, c(2.0, 0.0), &tol()),
            Err(Error::Precondition(_))
        ));
        assert!(braid_from_tl(&DenseMatrix::zeros(3, 3), c(2.0, 0.0), &tol()).is_err());
    }

    #[test]
    fn braid_trivial_cases() {
        assert_eq!(check_braid(&DenseMatrix::identity(9)).unwrap(), 0.0);
        assert_eq!(check_braid(&DenseMatrix::flip(3)).unwrap(), 0.0);
        assert!(check_braid(&DenseMatrix::identity(5)).is_err());
    }

    #[test]
    fn baxterize_examples() {
        let b = braid_from_tl(&fixture_u2(), c(3.0, 0.0), &tol()).unwrap();
        let r1 = baxterize(&b, ONE, &tol()).unwrap();
        let expected = DenseMatrix::identity(9).scale(omega_of_q(b.q));
        assert!(r1.matrix.max_diff(&expected).unwrap() < 1e-15);
        let r2 = baxterize(&b, c(2.0, 0.0), &tol()).unwrap();
        assert!(r2.formula_gap <= 1e-10);
        assert!(baxterize(&b, ZERO, &tol()).is_err());

        let t = build_local_generator(&crate::tlrep::TLAnsatz::new(DenseMatrix::identity(2), vec![0, 1], 3).unwrap(), &tol())
            .unwrap();
        // T² = 2T for any M, so ν = 4 gives q = 1 and ω(q) = 0
        let b4 = braid_from_tl(&t.scale(c(2.0, 0.0)), c(4.0, 0.0), &tol()).unwrap();
        let u = c(1.5, 0.5);
        let r = baxterize(&b4, u, &tol()).unwrap();
        assert!(r.matrix.max_diff(&b4.r_check.scale(u - u.inv())).unwrap() < 1e-14);
    }

    #[test]
    fn spectral_ybe_trivial_point() {
        let b = braid_from_tl(&fixture_u2(), c(3.0, 0.0), &tol()).unwrap();
        let samples = spectral_ybe_samples(&b, &[(ONE, ONE)]).unwrap();
        assert!(samples[0].residual < 1e-14);
        let worst = check_spectral_ybe(&b, &default_samples(DEFAULT_SEED, DEFAULT_SAMPLES)).unwrap();
        assert!(worst <= 1e-8, "{worst}");
        assert!(check_spectral_ybe(&b, &[(ZERO, ONE)]).is_err());
    }

    #[test]
    fn samples_are_deterministic() {
        let a = default_samples(42, 5);
        let b = default_samples(42, 5);
        assert_eq!(a, b);
        assert_ne!(a, default_samples(43, 5));
        for (u, w) in a {
            assert!(u.ln().re.abs() <= 1.0 && u.ln().im.abs() <= 1.0 + 1e-12);
            assert!(w.ln().re.abs() <= 1.0);
        }
    }

    #[test]
    fn plain_r_examples() {
        let flip = BraidData {
            q: ONE,
            nu: c(4.0, 0.0),
            r_check: DenseMatrix::flip(2),
        };
        let r = to_plain_r(&flip).unwrap();
        assert_eq!(r, DenseMatrix::identity(4));
        assert_eq!(check_ybe(&r).unwrap(), 0.0);

        let b = braid_from_tl(&build_local_generator(&u2_ansatz(3).unwrap(), &tol()).unwrap(), c(3.0, 0.0), &tol())
            .unwrap();
        let r = to_plain_r(&b).unwrap();
        assert!(check_ybe(&r).unwrap() <= 1e-9);
        assert!((check_ybe(&r).unwrap() - check_braid(&b.r_check).unwrap()).abs() <= 1e-12);
    }
}
