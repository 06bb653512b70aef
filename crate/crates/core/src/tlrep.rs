//! Rank-n Temperley-Lieb generators
//! `T = Σ_{a,b} v_a w_b · e_ab ⊗ M^{n_a − n_b}` and their verification.
//!
//! The generators built here satisfy the positive-sign relations
//! `T² = α·T`, `T_i T_{i±1} T_i = α·T_i` with `α = Σ v_i w_i`; the abstract
//! generator with `X² = −ν X` is `X = −T/√α`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hadamard::{is_ghm, HadamardVerdict};
use crate::linalg::{
    apply_two_site, embed_two_site, hadamard_inverse, inverse, kron, mat_mul, unit_root, ComplexValue,
    DenseMatrix, Tolerance, ONE, ZERO,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnsatzRepr")]
pub struct TLAnsatz {
    m: DenseMatrix,
    exponents: Vec<i64>,
    v: Vec<ComplexValue>,
    w: Vec<ComplexValue>,
    sites: usize,
}

#[derive(Deserialize)]
struct AnsatzRepr {
    m: DenseMatrix,
    exponents: Vec<i64>,
    #[serde(default)]
    v: Option<Vec<ComplexValue>>,
    #[serde(default)]
    w: Option<Vec<ComplexValue>>,
    sites: usize,
}

impl TryFrom<AnsatzRepr> for TLAnsatz {
    type Error = Error;

    fn try_from(r: AnsatzRepr) -> Result<Self> {
        let n = r.m.rows();
        TLAnsatz::weighted(
            r.m,
            r.exponents,
            r.v.unwrap_or_else(|| vec![ONE; n]),
            r.w.unwrap_or_else(|| vec![ONE; n]),
            r.sites,
        )
    }
}

impl TLAnsatz {
    /// Plain ansatz, `v = w = (1, …, 1)`.
    pub fn new(m: DenseMatrix, exponents: Vec<i64>, sites: usize) -> Result<Self> {
        let n = m.rows();
        Self::weighted(m, exponents, vec![ONE; n], vec![ONE; n], sites)
    }

    pub fn weighted(
        m: DenseMatrix,
        exponents: Vec<i64>,
        v: Vec<ComplexValue>,
        w: Vec<ComplexValue>,
        sites: usize,
    ) -> Result<Self> {
        let n = m.require_square()?;
        if exponents.len() != n || v.len() != n || w.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "M is {n}x{n} but got {} exponents, {} v-weights, {} w-weights",
                exponents.len(),
                v.len(),
                w.len()
            )));
        }
        if sites < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 sites, got {sites}")));
        }
        inverse(&m, &Tolerance::default())?;
        let ansatz = Self {
            m,
            exponents,
            v,
            w,
            sites,
        };
        if ansatz.alpha().norm() == 0.0 {
            return Err(Error::InvalidParameter("Σ v_i w_i must be nonzero".into()));
        }
        Ok(ansatz)
    }

    pub fn with_sites(&self, sites: usize) -> Result<Self> {
        Self::weighted(self.m.clone(), self.exponents.clone(), self.v.clone(), self.w.clone(), sites)
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn m(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn v(&self) -> &[ComplexValue] {
        &self.v
    }

    pub fn w(&self) -> &[ComplexValue] {
        &self.w
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// `α = Σ v_i w_i`, the loop value of the generator.
    pub fn alpha(&self) -> ComplexValue {
        self.v.iter().zip(&self.w).map(|(a, b)| a * b).sum()
    }
}

/// Builds the `n²×n²` generator; block `(a, b)` is `v_a w_b M^{n_a − n_b}`.
pub fn build_local_generator(ansatz: &TLAnsatz, tol: &Tolerance) -> Result<DenseMatrix> {
    let n = ansatz.dim();
    let diffs = ansatz
        .exponents
        .iter()
        .flat_map(|&a| ansatz.exponents.iter().map(move |&b| a - b));
    let (lo, hi) = diffs.fold((0i64, 0i64), |(lo, hi), d| (lo.min(d), hi.max(d)));

    // powers[k - lo] = M^k
    let mut powers = vec![DenseMatrix::identity(n); (hi - lo + 1) as usize];
    let at = |k: i64| (k - lo) as usize;
    for k in 1..=hi {
        powers[at(k)] = mat_mul(&powers[at(k - 1)], &ansatz.m)?;
    }
    if lo < 0 {
        let inv = inverse(&ansatz.m, tol)?;
        for k in (lo..0).rev() {
            powers[at(k)] = mat_mul(&powers[at(k + 1)], &inv)?;
        }
    }

    let mut out = DenseMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let coeff = ansatz.v[a] * ansatz.w[b];
            let block = &powers[at(ansatz.exponents[a] - ansatz.exponents[b])];
            for i in 0..n {
                for j in 0..n {
                    out[(a * n + i, b * n + j)] = coeff * block[(i, j)];
                }
            }
        }
    }
    Ok(out)
}

/// `I^{⊗(site−1)} ⊗ local ⊗ I^{⊗(sites−site−1)}`, `site` 1-based.
pub fn embed(local: &DenseMatrix, site: usize, sites: usize, n: usize) -> Result<DenseMatrix> {
    embed_two_site(local, site, sites, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TLReport {
    /// `max_i |T_i² − α T_i|`.
    pub loop_residual: f64,
    /// `max_{|i−j|=1} |T_i T_j T_i − α T_i|`; absent below 3 sites.
    pub braid_residual: Option<f64>,
    /// `max_{|i−j|>1} |[T_i, T_j]|`; absent below 4 sites.
    pub commute_residual: Option<f64>,
    pub nu: ComplexValue,
    pub passed: bool,
}

impl TLReport {
    pub fn worst_residual(&self) -> f64 {
        self.loop_residual
            .max(self.braid_residual.unwrap_or(0.0))
            .max(self.commute_residual.unwrap_or(0.0))
    }
}

/// Checks the TL relations for every generator on `ansatz.sites()` sites.
pub fn verify_tl(ansatz: &TLAnsatz, tol: &Tolerance) -> Result<TLReport> {
    let local = build_local_generator(ansatz, tol)?;
    verify_tl_local(&local, ansatz.dim(), ansatz.sites(), ansatz.alpha(), tol)
}

/// As `verify_tl`, for an already built local generator with loop value `nu`.
pub fn verify_tl_local(
    local: &DenseMatrix,
    n: usize,
    sites: usize,
    nu: ComplexValue,
    tol: &Tolerance,
) -> Result<TLReport> {
    if sites < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 sites, got {sites}")));
    }
    let gens: Vec<DenseMatrix> = (1..sites)
        .map(|i| embed_two_site(local, i, sites, n))
        .collect::<Result<_>>()?;
    let apply = |i: usize, x: &DenseMatrix| apply_two_site(local, i, sites, n, x);

    let mut loop_residual: f64 = 0.0;
    for (idx, t) in gens.iter().enumerate() {
        let sq = apply(idx + 1, t)?;
        loop_residual = loop_residual.max(sq.max_diff(&t.scale(nu))?);
    }

    let braid_residual = if sites >= 3 {
        let mut worst: f64 = 0.0;
        for i in 1..sites {
            for j in [i.wrapping_sub(1), i + 1] {
                if j == 0 || j >= sites {
                    continue;
                }
                let tjti = apply(j, &gens[i - 1])?;
                let titjti = apply(i, &tjti)?;
                worst = worst.max(titjti.max_diff(&gens[i - 1].scale(nu))?);
            }
        }
        Some(worst)
    } else {
        None
    };

    let commute_residual = if sites >= 4 {
        let mut worst: f64 = 0.0;
        for i in 1..sites {
            for j in i + 2..sites {
                let titj = apply(i, &gens[j - 1])?;
                let tjti = apply(j, &gens[i - 1])?;
                worst = worst.max(titj.max_diff(&tjti)?);
            }
        }
        Some(worst)
    } else {
        None
    };

    let mut report = TLReport {
        loop_residual,
        braid_residual,
        commute_residual,
        nu,
        passed: false,
    };
    report.passed = report.worst_residual() <= tol.abs_tol;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Master4Check {
    pub passed: bool,
    pub max_residual: f64,
    /// Zero-based `(i, j, u)` of the largest residual.
    pub worst: (usize, usize, usize),
}

/// Evaluates all `n³` conditions
/// `(Σ_r (λ_j/λ_i)^{n_r})·(Σ_{k,l} P⁻¹_ik P_lj λ_u^{n_k − n_l}) = n·δ_ij` term by term.
pub fn check_master4(
    p: &DenseMatrix,
    lambdas: &[ComplexValue],
    exponents: &[i64],
    tol: &Tolerance,
) -> Result<Master4Check> {
    let n = p.require_square()?;
    if lambdas.len() != n || exponents.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "P is {n}x{n} but got {} eigenvalues and {} exponents",
            lambdas.len(),
            exponents.len()
        )));
    }
    let p_inv = inverse(p, tol)?;
    let powi = |z: ComplexValue, e: i64| -> ComplexValue {
        if e >= 0 {
            z.powu(e as u32)
        } else {
            z.inv().powu(e.unsigned_abs() as u32)
        }
    };
    let mut max_residual: f64 = 0.0;
    let mut worst = (0, 0, 0);
    for i in 0..n {
        for j in 0..n {
            let ratio = lambdas[j] / lambdas[i];
            let poly: ComplexValue = exponents.iter().map(|&e| powi(ratio, e)).sum();
            let target = if i == j { n as f64 } else { 0.0 };
            for (u, &lu) in lambdas.iter().enumerate() {
                let mut s = ZERO;
                for k in 0..n {
                    for l in 0..n {
                        s += p_inv[(i, k)] * p[(l, j)] * powi(lu, exponents[k] - exponents[l]);
                    }
                }
                let r = (poly * s - Complex64::new(target, 0.0)).norm();
                if r > max_residual {
                    max_residual = r;
                    worst = (i, j, u);
                }
            }
        }
    }
    Ok(Master4Check {
        passed: max_residual <= tol.abs_tol,
        max_residual,
        worst,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvectorCheck {
    pub passed: bool,
    /// Verdict for `H = Ω^{-H}·P`.
    pub verdict: HadamardVerdict,
    /// `max |(P⁻¹Ωᵗ)_iu (Ω^{-H}P)_ui − 1|`.
    pub product_residual: f64,
}

/// The eigenvector condition: `Ω^{-H}·P` must be a generalized Hadamard matrix.
pub fn eigenvector_condition(p: &DenseMatrix, omega: &DenseMatrix, tol: &Tolerance) -> Result<EigenvectorCheck> {
    let n = omega.rows();
    let v = vec![ONE; n];
    let (h, product_residual) = twisted_product(p, omega, &v, &v, tol)?;
    let verdict = is_ghm(&h, tol);
    Ok(EigenvectorCheck {
        passed: verdict.is_ghm && product_residual <= tol.abs_tol,
        verdict,
        product_residual,
    })
}

/// Residual of the twisted condition `(P⁻¹VΩᵗ)_iu (Ω^{-H}WP)_ui = 1`.
pub fn weighted_eigenvector_residual(
    p: &DenseMatrix,
    omega: &DenseMatrix,
    v: &[ComplexValue],
    w: &[ComplexValue],
    tol: &Tolerance,
) -> Result<f64> {
    twisted_product(p, omega, v, w, tol).map(|(_, r)| r)
}

fn twisted_product(
    p: &DenseMatrix,
    omega: &DenseMatrix,
    v: &[ComplexValue],
    w: &[ComplexValue],
    tol: &Tolerance,
) -> Result<(DenseMatrix, f64)> {
    let n = omega.require_square()?;
    if p.shape() != (n, n) || v.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch("P, Ω and the weights must share a size".into()));
    }
    let p_inv = inverse(p, tol)?;
    inverse(omega, tol)?;
    let had = hadamard_inverse(omega)?;
    let left = mat_mul(&mat_mul(&p_inv, &DenseMatrix::diag(v))?, &omega.transpose())?;
    let h = mat_mul(&had, p)?;
    let right = mat_mul(&mat_mul(&had, &DenseMatrix::diag(w))?, p)?;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for u in 0..n {
            worst = worst.max((left[(i, u)] * right[(u, i)] - ONE).norm());
        }
    }
    Ok((h, worst))
}

/// `M = P Λ P⁻¹` with `P = (Ω^{-H})⁻¹·H`, so that `H = Ω^{-H}·P` exactly.
///
/// When `Ω` is a GHM, `(Ω^{-H})⁻¹ = Ωᵗ/n` and this is `Ωᵗ H Λ H⁻¹ Ω^{-H} / n`.
pub fn reconstruct_m(
    omega: &DenseMatrix,
    h: &DenseMatrix,
    lambdas: &[ComplexValue],
    tol: &Tolerance,
) -> Result<DenseMatrix> {
    let n = omega.require_square()?;
    if h.shape() != (n, n) || lambdas.len() != n {
        return Err(Error::DimensionMismatch("Ω, H and Λ must share a size".into()));
    }
    let p = eigenvector_matrix(omega, h, tol)?;
    let p_inv = inverse(&p, tol)?;
    mat_mul(&mat_mul(&p, &DenseMatrix::diag(lambdas))?, &p_inv)
}

/// `P = (Ω^{-H})⁻¹·H`.
pub fn eigenvector_matrix(omega: &DenseMatrix, h: &DenseMatrix, tol: &Tolerance) -> Result<DenseMatrix> {
    inverse(h, tol)?;
    let q = inverse(&hadamard_inverse(omega)?, tol)?;
    mat_mul(&q, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedCheck {
    pub passed: bool,
    pub max_residual: f64,
}

/// `Ω^{-H}·V·W = α·(Ω⁻¹)ᵗ`.
pub fn weighted_hadamard_check(
    omega: &DenseMatrix,
    v: &[ComplexValue],
    w: &[ComplexValue],
    alpha: ComplexValue,
    tol: &Tolerance,
) -> Result<WeightedCheck> {
    let n = omega.require_square()?;
    if v.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch("weights must match Ω".into()));
    }
    let rhs = inverse(omega, tol)?.transpose().scale(alpha);
    let vw: Vec<ComplexValue> = v.iter().zip(w).map(|(a, b)| a * b).collect();
    let lhs = mat_mul(&hadamard_inverse(omega)?, &DenseMatrix::diag(&vw))?;
    let max_residual = lhs.max_diff(&rhs)?;
    Ok(WeightedCheck {
        passed: max_residual <= tol.abs_tol,
        max_residual,
    })
}

/// `(g⊗g)·T·(g⊗g)⁻¹`.
pub fn gauge_transform(local: &DenseMatrix, g: &DenseMatrix, tol: &Tolerance) -> Result<DenseMatrix> {
    let n = g.require_square()?;
    if local.shape() != (n * n, n * n) {
        return Err(Error::DimensionMismatch(format!(
            "gauge of size {n} cannot act on a {}x{} operator",
            local.rows(),
            local.cols()
        )));
    }
    let g_inv = inverse(g, tol)?;
    mat_mul(&mat_mul(&kron(g, g), local)?, &kron(&g_inv, &g_inv))
}

fn fixture_from_codes(codes: [[u8; 9]; 9]) -> DenseMatrix {
    // 0 → 0, 1 → 1, 2 → ω, 3 → ω²
    let w = unit_root(1, 3);
    let w2 = unit_root(2, 3);
    DenseMatrix::from_fn(9, 9, |i, j| match codes[i][j] {
        0 => ZERO,
        1 => ONE,
        2 => w,
        _ => w2,
    })
}

/// `U^(I)`, the weighted 9×9 generator with `ω² + ω + 1 = 0`.
pub fn fixture_u1() -> DenseMatrix {
    fixture_from_codes([
        [1, 0, 0, 0, 2, 0, 0, 0, 3],
        [0, 1, 0, 0, 0, 3, 2, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 1, 0],
        [0, 0, 1, 1, 0, 0, 0, 1, 0],
        [3, 0, 0, 0, 1, 0, 0, 0, 2],
        [0, 2, 0, 0, 0, 1, 3, 0, 0],
        [0, 3, 0, 0, 0, 2, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 1, 0],
        [2, 0, 0, 0, 3, 0, 0, 0, 1],
    ])
}

/// `U^(II)`, the plain 9×9 generator with `ω² + ω + 1 = 0`.
pub fn fixture_u2() -> DenseMatrix {
    fixture_from_codes([
        [1, 0, 0, 0, 0, 2, 0, 1, 0],
        [0, 1, 0, 2, 0, 0, 0, 0, 2],
        [0, 0, 1, 0, 1, 0, 1, 0, 0],
        [0, 3, 0, 1, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 1, 0, 0],
        [3, 0, 0, 0, 0, 1, 0, 3, 0],
        [0, 0, 1, 0, 1, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 2, 0, 1, 0],
        [0, 3, 0, 1, 0, 0, 0, 0, 1],
    ])
}

/// `M` and exponents `(2, 0, 1)` reproducing `U^(II)`.
pub fn u2_ansatz(sites: usize) -> Result<TLAnsatz> {
    let w = unit_root(1, 3);
    let m = DenseMatrix::from_rows(&[[ZERO, ONE, ZERO], [ZERO, ZERO, w], [ONE, ZERO, ZERO]]);
    TLAnsatz::new(m, vec![2, 0, 1], sites)
}

/// `M`, exponents `(2, 1, 0)`, `v = (ω, 1, 1)`, `w = (ω², 1, 1)` reproducing `U^(I)`.
pub fn u1_ansatz(sites: usize) -> Result<TLAnsatz> {
    let w = unit_root(1, 3);
    let w2 = unit_root(2, 3);
    let m = DenseMatrix::from_rows(&[[ZERO, ONE, ZERO], [ZERO, ZERO, w], [w2, ZERO, ZERO]]);
    TLAnsatz::weighted(m, vec![2, 1, 0], vec![w, ONE, ONE], vec![w2, ONE, ONE], sites)
}
