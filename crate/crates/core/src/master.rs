//! Master matrices `Ω_ij = λ_i^{n_j}`, master polynomials `p(z) = Σ_a z^{n_a}`,
//! and the constructive and obstructive results about them.
//!
//! A spec `(λ, n)` is admissible for the TL ansatz exactly when every ratio of
//! distinct eigenvalues is a root of `p`, i.e. when `Ω` is a generalized
//! Hadamard matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hadamard::{gcd_i64, is_dephased, root_snap_residual, MAX_BUTSON_ORDER};
use crate::linalg::{hadamard_inverse, mat_mul, unit_root, ComplexValue, DenseMatrix, Tolerance, ONE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MasterSpecRepr")]
pub struct MasterSpec {
    lambdas: Vec<ComplexValue>,
    exponents: Vec<u64>,
}

#[derive(Deserialize)]
struct MasterSpecRepr {
    lambdas: Vec<ComplexValue>,
    exponents: Vec<u64>,
}

impl TryFrom<MasterSpecRepr> for MasterSpec {
    type Error = Error;

    fn try_from(r: MasterSpecRepr) -> Result<Self> {
        MasterSpec::new(r.lambdas, r.exponents)
    }
}

impl MasterSpec {
    /// Validates distinct nonzero eigenvalues and distinct exponents. Order is kept.
    pub fn new(lambdas: Vec<ComplexValue>, exponents: Vec<u64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidParameter("master spec needs at least one eigenvalue".into()));
        }
        if lambdas.len() != exponents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} eigenvalues but {} exponents",
                lambdas.len(),
                exponents.len()
            )));
        }
        for (i, l) in lambdas.iter().enumerate() {
            if !(l.re.is_finite() && l.im.is_finite()) || l.norm() == 0.0 {
                return Err(Error::InvalidParameter(format!("λ_{} = {l} must be finite and nonzero", i + 1)));
            }
        }
        for i in 0..lambdas.len() {
            for j in i + 1..lambdas.len() {
                // relative comparison; eigenvalues may have any scale
                let scale = lambdas[i].norm().max(lambdas[j].norm());
                if (lambdas[i] - lambdas[j]).norm() <= 1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "degenerate spectrum: λ_{} = λ_{}",
                        i + 1,
                        j + 1
                    )));
                }
                if exponents[i] == exponents[j] {
                    return Err(Error::InvalidParameter(format!(
                        "repeated exponent {} at positions {} and {}",
                        exponents[i],
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { lambdas, exponents })
    }

    pub fn size(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[ComplexValue] {
        &self.lambdas
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Shifts exponents so the smallest is zero and sorts them ascending.
    ///
    /// Sorting permutes the columns of `Ω`; eigenvalues are untouched.
    pub fn normalized(&self) -> Self {
        let min = self.exponents.iter().copied().min().unwrap_or(0);
        let mut exponents: Vec<u64> = self.exponents.iter().map(|e| e - min).collect();
        exponents.sort_unstable();
        Self {
            lambdas: self.lambdas.clone(),
            exponents,
        }
    }

    pub fn exponents_i64(&self) -> Vec<i64> {
        self.exponents.iter().map(|&e| e as i64).collect()
    }
}

pub fn master_matrix(spec: &MasterSpec) -> DenseMatrix {
    let n = spec.size();
    DenseMatrix::from_fn(n, n, |i, j| spec.lambdas[i].powu(spec.exponents[j] as u32))
}

pub fn master_polynomial_eval(exponents: &[u64], z: ComplexValue) -> ComplexValue {
    exponents.iter().map(|&e| z.powu(e as u32)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MasterCheck {
    pub passed: bool,
    pub max_residual: f64,
    /// `|Σ_a (λ_i/λ_j)^{n_a} − n·δ_ij|` for every `(i, j)`.
    pub residuals: Vec<Vec<f64>>,
}

/// Evaluates the eigenvalue condition `Σ_a (λ_i/λ_j)^{n_a} = n·δ_ij` in full.
pub fn check_master_condition(spec: &MasterSpec, tol: &Tolerance) -> MasterCheck {
    let n = spec.size();
    let mut residuals = vec![vec![0.0; n]; n];
    let mut max_residual: f64 = 0.0;
    for (i, row) in residuals.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let ratio = spec.lambdas[i] / spec.lambdas[j];
            let target = if i == j { n as f64 } else { 0.0 };
            let r = (master_polynomial_eval(&spec.exponents, ratio) - Complex64::new(target, 0.0)).norm();
            *cell = r;
            max_residual = max_residual.max(r);
        }
    }
    MasterCheck {
        passed: max_residual <= tol.abs_tol,
        max_residual,
        residuals,
    }
}

/// `max |Ω^{-H}·Ωᵗ − n·I|`: the same condition written as a matrix identity.
pub fn ghm_form_residual(spec: &MasterSpec) -> f64 {
    let omega = master_matrix(spec);
    let had = hadamard_inverse(&omega).expect("master matrices have nonzero entries");
    let prod = mat_mul(&had, &omega.transpose()).expect("square");
    prod.distance_to_scaled_identity(Complex64::new(spec.size() as f64, 0.0))
}

/// `λ_a = ω^{ℓ(a−1)}`, `n_b = b − 1`.
pub fn fourier_master(n: usize, ell: i64) -> Result<MasterSpec> {
    fourier_master_lifted(n, ell, &vec![0; n])
}

/// Fourier master spec with exponents `n_b = k_b·n + b − 1`.
pub fn fourier_master_lifted(n: usize, ell: i64, lifts: &[u64]) -> Result<MasterSpec> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if gcd_i64(ell, n as i64) != 1 {
        return Err(Error::InvalidParameter(format!("ℓ = {ell} is not coprime to n = {n}")));
    }
    if lifts.len() != n {
        return Err(Error::DimensionMismatch(format!("expected {n} lifts, got {}", lifts.len())));
    }
    let lambdas = (0..n).map(|a| unit_root(ell * a as i64, n as u64)).collect();
    let exponents = (0..n).map(|b| lifts[b] * n as u64 + b as u64).collect();
    MasterSpec::new(lambdas, exponents)
}

/// `p(z) = (1+z)(1+z^{2k})`, `λ = (1, −1, a, −a)` with `a = e^{iπm/2k}`.
///
/// The master matrix equals `f4_family(a)` row for row.
pub fn f4_master(k: u64, m: i64) -> Result<MasterSpec> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if m % 2 == 0 {
        return Err(Error::InvalidParameter(format!("m = {m} must be odd")));
    }
    let a = f4_parameter(k, m);
    MasterSpec::new(vec![ONE, -ONE, a, -a], vec![0, 1, 2 * k, 2 * k + 1])
}

pub fn f4_parameter(k: u64, m: i64) -> ComplexValue {
    unit_root(m, 4 * k)
}

/// Row permutation taking `master_matrix(f6_master(..))` to `f6_family(a, b)`.
pub const F6_ROW_ORDER: [usize; 6] = [0, 2, 4, 1, 3, 5];

/// `p(z) = (1 + z^{3r+1} + z^{3s+2})(1 + z^{3k})` with eigenvalues
/// `1, μ, ω², ω²μ, ω⁴, ω⁴μ` where `μ = e^{iπ/3k}` and `ω = e^{iπ/3}`.
pub fn f6_master(k: u64, r: u64, s: u64) -> Result<MasterSpec> {
    if !(0 < r && r < k && 0 < s && s < k) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r, s < k, got k={k}, r={r}, s={s}"
        )));
    }
    let order = 6 * k;
    let idx = |e: u64| unit_root(e as i64, order);
    let lambdas = vec![idx(0), idx(1), idx(2 * k), idx(2 * k + 1), idx(4 * k), idx(4 * k + 1)];
    let exponents = vec![0, 3 * r + 1, 3 * s + 2, 3 * k, 3 * k + 3 * r + 1, 3 * k + 3 * s + 2];
    MasterSpec::new(lambdas, exponents)
}

/// `(a, b) = (μ^{3r+1}, μ^{3s+2})` for the F6 master spec.
pub fn f6_parameters(k: u64, r: u64, s: u64) -> (ComplexValue, ComplexValue) {
    let order = 6 * k;
    (unit_root((3 * r + 1) as i64, order), unit_root((3 * s + 2) as i64, order))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingStage {
    pub p: u64,
    pub k: u64,
    pub g: Vec<u64>,
    pub f: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingSpec {
    pub stages: Vec<NestingStage>,
}

impl NestingSpec {
    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::InvalidParameter("nesting needs at least one stage".into()));
        }
        for (idx, st) in self.stages.iter().enumerate() {
            if st.p < 2 || st.k < 1 {
                return Err(Error::InvalidParameter(format!(
                    "stage {idx}: need p ≥ 2 and k ≥ 1, got p={}, k={}",
                    st.p, st.k
                )));
            }
            if st.g.len() as u64 != st.p || st.f.len() as u64 != st.p {
                return Err(Error::DimensionMismatch(format!(
                    "stage {idx}: g and f must have length p = {}",
                    st.p
                )));
            }
        }
        Ok(())
    }

    /// `η_j = Π_{i<j} k_i p_i`, with `η_1 = 1`.
    pub fn etas(&self) -> Vec<u64> {
        let mut etas = Vec::with_capacity(self.stages.len());
        let mut eta = 1;
        for st in &self.stages {
            etas.push(eta);
            eta *= st.k * st.p;
        }
        etas
    }
}

/// Iterated Fourier nesting `F(z) = Π_j F_{p_j}(z^{η_j})`.
///
/// Multi-indices are flattened lexicographically with the first stage most
/// significant.
pub fn nest(spec: &NestingSpec) -> Result<MasterSpec> {
    spec.validate()?;
    let etas = spec.etas();
    let last = spec.stages.len() - 1;
    // every ω_j has order η_j·p_j, which divides the last one
    let order = etas[last] * spec.stages[last].p;
    let n: u64 = spec.stages.iter().map(|s| s.p).product();

    let mut lambdas = Vec::with_capacity(n as usize);
    let mut exponents = Vec::with_capacity(n as usize);
    let mut index = vec![0u64; spec.stages.len()];
    for _ in 0..n {
        let mut root: u64 = 0;
        let mut exponent: u64 = 0;
        for (j, st) in spec.stages.iter().enumerate() {
            let i = index[j] as usize;
            let stage_order = etas[j] * st.p;
            root += (order / stage_order) * (st.f[i] * st.p + i as u64);
            exponent += etas[j] * (st.g[i] * st.p + i as u64);
        }
        lambdas.push(unit_root((root % order) as i64, order));
        exponents.push(exponent);
        for j in (0..index.len()).rev() {
            index[j] += 1;
            if index[j] < spec.stages[j].p {
                break;
            }
            index[j] = 0;
        }
    }
    MasterSpec::new(lambdas, exponents)
}

/// Evidence that a matrix of roots of unity cannot be a master matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PigeonholeReport {
    /// Smallest `m` such that every entry is an `m`-th root of unity.
    pub root_order: u64,
    pub distinct_rows: usize,
}

/// If every entry is an `m`-th root of unity then so is every eigenvalue of a
/// master representation with coprime exponents, leaving room for at most `m`
/// distinct rows.
pub fn pigeonhole_obstruction(u: &DenseMatrix, tol: &Tolerance) -> Option<PigeonholeReport> {
    u.require_square().ok()?;
    let entries = u.as_slice();
    let root_order = (1..=MAX_BUTSON_ORDER)
        .find(|&m| entries.iter().all(|&z| root_snap_residual(z, m) <= tol.abs_tol))?;
    let distinct_rows = count_distinct_rows(u, tol.abs_tol);
    (distinct_rows as u64 > root_order).then_some(PigeonholeReport {
        root_order,
        distinct_rows,
    })
}

fn count_distinct_rows(u: &DenseMatrix, tol: f64) -> usize {
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..u.rows() {
        let dup = reps.iter().any(|&r| {
            u.row(r)
                .iter()
                .zip(u.row(i))
                .all(|(a, b)| (a - b).norm() <= tol)
        });
        if !dup {
            reps.push(i);
        }
    }
    reps.len()
}

/// Root of unity `e^{2πik/q}` with `gcd(k, q) = 1`.
#[derive(Debug, Clone, Copy)]
struct RootCandidate {
    k: i64,
    q: u64,
}

impl RootCandidate {
    fn value(self) -> ComplexValue {
        unit_root(self.k, self.q)
    }

    fn pow(self, e: u64) -> ComplexValue {
        unit_root(((self.k as i128 * e as i128) % self.q as i128) as i64, self.q)
    }
}

fn root_candidates(order_bound: u64) -> Vec<RootCandidate> {
    let mut out = Vec::new();
    for q in 1..=order_bound {
        for k in 0..q as i64 {
            if gcd_i64(k, q as i64) == 1 {
                out.push(RootCandidate { k, q });
            }
        }
    }
    out
}

struct Search<'a> {
    u: &'a DenseMatrix,
    n: usize,
    exponent_bound: u64,
    candidates: Vec<RootCandidate>,
    tol: f64,
    exponents: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, column: usize, alive: Vec<Vec<usize>>) -> Option<MasterSpec> {
        if column == self.n {
            return self.finish(&alive);
        }
        for e in 1..=self.exponent_bound {
            if self.exponents.contains(&e) {
                continue;
            }
            let mut next = Vec::with_capacity(self.n);
            let mut ok = true;
            for (i, row_alive) in alive.iter().enumerate() {
                let target = self.u[(i, column)];
                let kept: Vec<usize> = row_alive
                    .iter()
                    .copied()
                    .filter(|&c| (self.candidates[c].pow(e) - target).norm() <= self.tol)
                    .collect();
                if kept.is_empty() {
                    ok = false;
                    break;
                }
                next.push(kept);
            }
            if !ok {
                continue;
            }
            self.exponents.push(e);
            let found = self.run(column + 1, next);
            self.exponents.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn finish(&self, alive: &[Vec<usize>]) -> Option<MasterSpec> {
        let g = self.exponents.iter().fold(0u64, |acc, &e| gcd_i64(acc as i64, e as i64));
        if self.n > 1 && g != 1 {
            return None;
        }
        let lambdas = alive.iter().map(|c| self.candidates[c[0]].value()).collect();
        let spec = MasterSpec::new(lambdas, self.exponents.clone()).ok()?;
        let diff = master_matrix(&spec).max_diff(self.u).ok()?;
        (diff <= self.tol).then_some(spec)
    }
}

/// Brute-force search for `(λ, n)` with `Ω(λ, n) ≈ u`.
///
/// Exponent tuples have `n_1 = 0`, distinct entries, gcd 1 and maximum at most
/// `exponent_bound`; eigenvalues range over roots of unity of order at most
/// `root_order_bound`. Tuples are explored in lexicographic order and the
/// first hit is returned. `None` is conclusive only within those bounds.
pub fn search_master_representation(
    u: &DenseMatrix,
    exponent_bound: u64,
    root_order_bound: u64,
    tol: &Tolerance,
) -> Result<Option<MasterSpec>> {
    let n = u.require_square()?;
    if exponent_bound == 0 || root_order_bound == 0 {
        return Err(Error::InvalidParameter("search bounds must be positive".into()));
    }
    if !is_dephased(u, tol.abs_tol) {
        return Err(Error::Precondition("matrix must be dephased before searching".into()));
    }
    let candidates = root_candidates(root_order_bound);
    // first column is λ^0 = 1 for every row, which dephasing guarantees
    let alive = vec![(0..candidates.len()).collect::<Vec<_>>(); n];
    let mut search = Search {
        u,
        n,
        exponent_bound,
        candidates,
        tol: tol.abs_tol,
        exponents: vec![0],
    };
    Ok(search.run(1, alive))
}

/// `H₀`: a 6×6 Butson matrix of order 3 that is not a master matrix.
pub fn h0() -> DenseMatrix {
    let j = unit_root(1, 3);
    let j2 = unit_root(2, 3);
    let o = ONE;
    DenseMatrix::from_rows(&[
        [o, o, o, o, o, o],
        [o, o, j, j, j2, j2],
        [o, j, o, j2, j2, j],
        [o, j, j2, o, j, j2],
        [o, j2, j2, j, o, j],
        [o, j2, j, j2, j, o],
    ])
}

/// `H₁(a)`; `ā` is rendered as the complex conjugate of `a`.
pub fn h1(a: ComplexValue) -> Result<DenseMatrix> {
    if a.norm() == 0.0 || !(a.re.is_finite() && a.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("a must be finite and nonzero, got {a}")));
    }
    let o = ONE;
    let i = Complex64::new(0.0, 1.0);
    let ab = a.conj();
    Ok(DenseMatrix::from_rows(&[
        [o, o, o, o, o, o],
        [o, -o, i, -i, -i, i],
        [o, i, -o, a, -a, -i],
        [o, -i, -ab, -o, i, ab],
        [o, -i, ab, i, -o, -ab],
        [o, i, -i, -a, a, -o],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{f4_family, f6_family, fourier, is_chm, is_ghm};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    #[test]
    fn master_matrix_examples() {
        let s = MasterSpec::new(vec![ONE], vec![0]).unwrap();
        assert_eq!(master_matrix(&s), DenseMatrix::identity(1));
        let s = MasterSpec::new(vec![ONE, -ONE], vec![0, 1]).unwrap();
        assert_eq!(master_matrix(&s), fourier(2, 1).unwrap());
        let w = unit_root(1, 3);
        let s = MasterSpec::new(vec![ONE, w, w * w], vec![0, 1, 2]).unwrap();
        assert!(master_matrix(&s).max_diff(&fourier(3, 1).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn degenerate_specs_are_rejected() {
        assert!(MasterSpec::new(vec![ONE, ONE], vec![0, 1]).is_err());
        assert!(MasterSpec::new(vec![ONE, -ONE], vec![1, 1]).is_err());
        assert!(MasterSpec::new(vec![ONE, c(0.0, 0.0)], vec![0, 1]).is_err());
        assert!(MasterSpec::new(vec![ONE], vec![0, 1]).is_err());
        let json = r#"{"lambdas": [[1,0],[1,0]], "exponents": [0,1]}"#;
        assert!(serde_json::from_str::<MasterSpec>(json).is_err());
    }

    #[test]
    fn normalization_shifts_and_sorts() {
        let s = MasterSpec::new(vec![ONE, -ONE, c(0.0, 1.0)], vec![5, 3, 4]).unwrap();
        assert_eq!(s.normalized().exponents(), &[0, 1, 2]);
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(master_polynomial_eval(&[0, 3, 7, 9], ONE), c(4.0, 0.0));
        let z = c(0.3, -1.2);
        let geometric = (z.powu(6) - ONE) / (z - ONE);
        assert!((master_polynomial_eval(&[0, 1, 2, 3, 4, 5], z) - geometric).norm() < 1e-12);
        let r5 = unit_root(1, 5);
        assert!(master_polynomial_eval(&[0, 2, 3, 4, 6], r5).norm() < 1e-12);
    }

    #[test]
    fn master_condition_examples() {
        for n in 2..=8 {
            assert!(check_master_condition(&fourier_master(n, 1).unwrap(), &tol()).passed, "n={n}");
        }
        assert!(check_master_condition(&f4_master(2, 1).unwrap(), &tol()).passed);
        let bad = MasterSpec::new(vec![ONE, c(2.0, 0.0)], vec![0, 1]).unwrap();
        let chk = check_master_condition(&bad, &tol());
        assert!(!chk.passed);
        // p(2) = 1 + 2
        assert!((chk.residuals[1][0] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_master_examples() {
        let s = fourier_master(2, 1).unwrap();
        assert_eq!(s.lambdas(), &[ONE, -ONE]);
        assert_eq!(s.exponents(), &[0, 1]);
        assert!(check_master_condition(&fourier_master(5, 1).unwrap(), &tol()).passed);
        let lifted = fourier_master_lifted(4, 1, &[1, 1, 1, 1]).unwrap();
        assert_eq!(lifted.exponents(), &[4, 5, 6, 7]);
        assert!(check_master_condition(&lifted, &tol()).passed);
        let s = fourier_master(5, 2).unwrap();
        assert!(master_matrix(&s).max_diff(&fourier(5, 2).unwrap()).unwrap() < 1e-14);
        assert!(fourier_master(6, 3).is_err());
    }

    #[test]
    fn f4_master_examples() {
        let s = f4_master(1, 1).unwrap();
        assert_eq!(s.exponents(), &[0, 1, 2, 3]);
        assert!((s.lambdas()[2] - c(0.0, 1.0)).norm() < 1e-15);
        assert!(master_matrix(&s).max_diff(&f4_family(c(0.0, 1.0)).unwrap()).unwrap() < 1e-14);
        assert!(check_master_condition(&f4_master(3, 1).unwrap(), &tol()).passed);
        let s = f4_master(2, 3).unwrap();
        assert!(check_master_condition(&s, &tol()).passed);
        assert!((s.lambdas()[2].norm() - 1.0).abs() < 1e-15);
        assert!(f4_master(2, 2).is_err());
    }

    #[test]
    fn f6_master_examples() {
        let s = f6_master(2, 1, 1).unwrap();
        assert!(check_master_condition(&s, &tol()).passed);
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    let z = s.lambdas()[i] / s.lambdas()[j];
                    assert!(master_polynomial_eval(s.exponents(), z).norm() < 1e-10);
                }
            }
        }
        let omega = master_matrix(&s);
        assert!(is_ghm(&omega, &tol()).is_ghm);

        let (a, b) = f6_parameters(2, 1, 1);
        let reordered = DenseMatrix::from_fn(6, 6, |i, j| omega[(F6_ROW_ORDER[i], j)]);
        assert!(reordered.max_diff(&f6_family(a, b).unwrap()).unwrap() < 1e-12);
        assert!(f6_master(2, 2, 1).is_err());
    }

    #[test]
    fn nest_examples() {
        let single = NestingSpec {
            stages: vec![NestingStage {
                p: 5,
                k: 3,
                g: vec![0; 5],
                f: vec![0; 5],
            }],
        };
        let s = nest(&single).unwrap();
        let f = fourier_master(5, 1).unwrap();
        assert_eq!(s.exponents(), f.exponents());
        assert!(master_matrix(&s).max_diff(&master_matrix(&f)).unwrap() < 1e-14);

        let two = NestingSpec {
            stages: vec![
                NestingStage { p: 2, k: 1, g: vec![0, 0], f: vec![0, 0] },
                NestingStage { p: 3, k: 1, g: vec![0; 3], f: vec![0; 3] },
            ],
        };
        let s = nest(&two).unwrap();
        assert_eq!(s.size(), 6);
        assert!(check_master_condition(&s, &tol()).passed);

        let f4_like = NestingSpec {
            stages: vec![
                NestingStage { p: 2, k: 2, g: vec![0, 0], f: vec![0, 0] },
                NestingStage { p: 2, k: 1, g: vec![0, 0], f: vec![0, 0] },
            ],
        };
        let mut e = nest(&f4_like).unwrap().exponents().to_vec();
        e.sort_unstable();
        let mut expected = f4_master(2, 1).unwrap().exponents().to_vec();
        expected.sort_unstable();
        assert_eq!(e, expected);

        assert!(nest(&NestingSpec { stages: vec![] }).is_err());
    }

    #[test]
    fn pigeonhole_examples() {
        let rep = pigeonhole_obstruction(&h0(), &tol()).unwrap();
        assert_eq!(rep, PigeonholeReport { root_order: 3, distinct_rows: 6 });
        assert!(pigeonhole_obstruction(&fourier(3, 1).unwrap(), &tol()).is_none());
        assert!(pigeonhole_obstruction(&h1(c(2.0, 0.0)).unwrap(), &tol()).is_none());
    }

    #[test]
    fn search_examples() {
        let w = unit_root(1, 3);
        let found = search_master_representation(&fourier(3, 1).unwrap(), 4, 6, &tol())
            .unwrap()
            .unwrap();
        assert_eq!(found.exponents(), &[0, 1, 2]);
        for (got, want) in found.lambdas().iter().zip([ONE, w, w * w]) {
            assert!((got - want).norm() < 1e-12);
        }
        assert!(search_master_representation(&h0(), 12, 12, &tol()).unwrap().is_none());
        assert!(search_master_representation(&h1(c(2.0, 0.0)).unwrap(), 12, 12, &tol())
            .unwrap()
            .is_none());
        assert!(search_master_representation(&h0(), 0, 12, &tol()).is_err());
        let not_dephased = DenseMatrix::identity(2).scale(c(2.0, 0.0));
        assert!(search_master_representation(&not_dephased, 3, 3, &tol()).is_err());
    }

    #[test]
    fn h_matrices() {
        assert!(is_chm(&h0(), &tol()));
        assert!(is_chm(&h1(c(0.0, 1.0)).unwrap(), &tol()));
        assert!(h1(c(0.0, 0.0)).is_err());
    }
}
