//! C ABI over `hadamard-tl`.
//!
//! Every object is an opaque heap handle released with its `*_free`
//! function. Functions return an [`HtlStatus`]; on failure a message is kept
//! per thread and can be read with [`htl_last_error`]. Strings returned by the
//! library must be released with [`htl_string_free`]. Tolerances are absolute.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hadamard_tl::baxter::{self, BraidData};
use hadamard_tl::hadamard;
use hadamard_tl::json;
use hadamard_tl::linalg::{ComplexValue, DenseMatrix, Tolerance};
use hadamard_tl::master::{self, MasterSpec};
use hadamard_tl::tlrep::{self, TLAnsatz};
use hadamard_tl::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtlStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    Singular = 3,
    ZeroEntry = 4,
    Invalid = 5,
    Parse = 6,
    Panic = 7,
}

pub struct HtlMatrix(DenseMatrix);
pub struct HtlMasterSpec(MasterSpec);
pub struct HtlAnsatz(TLAnsatz);
pub struct HtlBraid(BraidData);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HtlHadamardVerdict {
    pub is_chm: bool,
    pub is_ghm: bool,
    /// Smallest Butson order, 0 when the matrix is not of Butson type.
    pub butson_order: u64,
    pub max_residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HtlTlReport {
    pub loop_residual: f64,
    /// NaN below 3 sites.
    pub braid_residual: f64,
    /// NaN below 4 sites.
    pub commute_residual: f64,
    pub nu_re: f64,
    pub nu_im: f64,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap_or_default());
}

fn status_of(e: &Error) -> HtlStatus {
    match e {
        Error::DimensionMismatch(_) | Error::NotSquare { .. } => HtlStatus::Dimension,
        Error::Singular { .. } => HtlStatus::Singular,
        Error::ZeroEntry { .. } => HtlStatus::ZeroEntry,
        Error::Parse(_) => HtlStatus::Parse,
        Error::NonFinite(_) | Error::InvalidParameter(_) | Error::OutOfRange(_) | Error::Precondition(_) => {
            HtlStatus::Invalid
        }
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type FfiResult = Result<(), Fail>;

fn guard(f: impl FnOnce() -> FfiResult) -> HtlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HtlStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            HtlStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            HtlStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> FfiResult {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_boxed<T>(out: *mut *mut T, value: T) -> FfiResult {
    put(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn complexes(re: *const f64, im: *const f64, len: usize) -> Result<Vec<ComplexValue>, Fail> {
    let re = slice(re, len, "re")?;
    let im = slice(im, len, "im")?;
    Ok(re.iter().zip(im).map(|(&a, &b)| ComplexValue::new(a, b)).collect())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null("json"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail::Lib(Error::Parse(format!("invalid UTF-8: {e}"))))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult {
    let c = CString::new(s).map_err(|e| Error::Parse(e.to_string()))?;
    put(out, c.into_raw(), "out")
}

fn tolerance(abs_tol: f64) -> Result<Tolerance, Fail> {
    Ok(Tolerance::with_abs(abs_tol)?)
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn htl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn htl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------- matrices

/// Row-major `rows×cols` matrix from separate real and imaginary arrays.
///
/// # Safety
/// `re` and `im` must hold `rows*cols` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_new(
    rows: usize,
    cols: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut HtlMatrix,
) -> HtlStatus {
    guard(|| {
        let len = rows.checked_mul(cols).ok_or_else(|| Error::OutOfRange("size overflow".into()))?;
        let data = complexes(re, im, len)?;
        put_boxed(out, HtlMatrix(DenseMatrix::from_vec(rows, cols, data)?))
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_free(m: *mut HtlMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m`, `rows` and `cols` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_shape(m: *const HtlMatrix, rows: *mut usize, cols: *mut usize) -> HtlStatus {
    guard(|| {
        let m = get(m, "matrix")?;
        put(rows, m.0.rows(), "rows")?;
        put(cols, m.0.cols(), "cols")
    })
}

/// Entry `(i, j)`, zero-based.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_get(
    m: *const HtlMatrix,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> HtlStatus {
    guard(|| {
        let m = get(m, "matrix")?;
        let z = m
            .0
            .get(i, j)
            .ok_or_else(|| Error::OutOfRange(format!("({i}, {j}) outside {}x{}", m.0.rows(), m.0.cols())))?;
        put(re, z.re, "re")?;
        put(im, z.im, "im")
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_from_json(json_text: *const c_char, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(json::from_str(text(json_text)?)?)))
}

/// # Safety
/// Pointers must be valid; free the result with `htl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_to_json(m: *const HtlMatrix, out: *mut *mut c_char) -> HtlStatus {
    guard(|| put_string(out, json::to_string(&get(m, "matrix")?.0)?))
}

/// `a·b`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_mul(
    a: *const HtlMatrix,
    b: *const HtlMatrix,
    out: *mut *mut HtlMatrix,
) -> HtlStatus {
    guard(|| {
        let a = get(a, "a")?;
        let b = get(b, "b")?;
        put_boxed(out, HtlMatrix(a.0.mul(&b.0)?))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_kron(
    a: *const HtlMatrix,
    b: *const HtlMatrix,
    out: *mut *mut HtlMatrix,
) -> HtlStatus {
    guard(|| {
        let a = get(a, "a")?;
        let b = get(b, "b")?;
        put_boxed(out, HtlMatrix(a.0.kron(&b.0)))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_inverse(m: *const HtlMatrix, abs_tol: f64, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        put_boxed(out, HtlMatrix(get(m, "matrix")?.0.inverse(&tol)?))
    })
}

/// Largest entrywise modulus of `a − b`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_matrix_max_diff(a: *const HtlMatrix, b: *const HtlMatrix, out: *mut f64) -> HtlStatus {
    guard(|| {
        let d = get(a, "a")?.0.max_diff(&get(b, "b")?.0)?;
        put(out, d, "out")
    })
}

// ---------------------------------------------------------------- hadamard

/// Fourier matrix of size `n` with twist `ell`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_fourier(n: usize, ell: i64, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(hadamard::fourier(n, ell)?)))
}

/// Classifies `m`; never fails on non-Hadamard input, which is reported in
/// the verdict.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_is_ghm(m: *const HtlMatrix, abs_tol: f64, out: *mut HtlHadamardVerdict) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let v = hadamard::is_ghm(&get(m, "matrix")?.0, &tol);
        put(
            out,
            HtlHadamardVerdict {
                is_chm: v.is_chm,
                is_ghm: v.is_ghm,
                butson_order: v.butson_order.unwrap_or(0),
                max_residual: v.max_residual,
            },
            "out",
        )
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_is_chm(m: *const HtlMatrix, abs_tol: f64, out: *mut bool) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        put(out, hadamard::is_chm(&get(m, "matrix")?.0, &tol), "out")
    })
}

/// Dephased copy of `m`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_dephase(m: *const HtlMatrix, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(hadamard::dephase(&get(m, "matrix")?.0)?.0)))
}

// ---------------------------------------------------------------- master

/// # Safety
/// `lambda_re`, `lambda_im` and `exponents` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn htl_master_spec_new(
    n: usize,
    lambda_re: *const f64,
    lambda_im: *const f64,
    exponents: *const u64,
    out: *mut *mut HtlMasterSpec,
) -> HtlStatus {
    guard(|| {
        let lambdas = complexes(lambda_re, lambda_im, n)?;
        let exps = slice(exponents, n, "exponents")?.to_vec();
        put_boxed(out, HtlMasterSpec(MasterSpec::new(lambdas, exps)?))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn htl_master_spec_free(s: *mut HtlMasterSpec) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_fourier_master(n: usize, ell: i64, out: *mut *mut HtlMasterSpec) -> HtlStatus {
    guard(|| put_boxed(out, HtlMasterSpec(master::fourier_master(n, ell)?)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_master_spec_size(s: *const HtlMasterSpec, out: *mut usize) -> HtlStatus {
    guard(|| put(out, get(s, "spec")?.0.size(), "out"))
}

/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_master_spec_from_json(json_text: *const c_char, out: *mut *mut HtlMasterSpec) -> HtlStatus {
    guard(|| put_boxed(out, HtlMasterSpec(json::from_str(text(json_text)?)?)))
}

/// # Safety
/// Pointers must be valid; free the result with `htl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn htl_master_spec_to_json(s: *const HtlMasterSpec, out: *mut *mut c_char) -> HtlStatus {
    guard(|| put_string(out, json::to_string(&get(s, "spec")?.0)?))
}

/// `Ω_ij = λ_i^{n_j}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_master_matrix(s: *const HtlMasterSpec, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(master::master_matrix(&get(s, "spec")?.0))))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_check_master(
    s: *const HtlMasterSpec,
    abs_tol: f64,
    passed: *mut bool,
    max_residual: *mut f64,
) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let check = master::check_master_condition(&get(s, "spec")?.0, &tol);
        put(passed, check.passed, "passed")?;
        put(max_residual, check.max_residual, "max_residual")
    })
}

/// `M = PΛP⁻¹` for the master spec and eigenvector Hadamard matrix `h`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_reconstruct_m(
    s: *const HtlMasterSpec,
    h: *const HtlMatrix,
    abs_tol: f64,
    out: *mut *mut HtlMatrix,
) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let spec = &get(s, "spec")?.0;
        let m = tlrep::reconstruct_m(&master::master_matrix(spec), &get(h, "h")?.0, spec.lambdas(), &tol)?;
        put_boxed(out, HtlMatrix(m))
    })
}

// ---------------------------------------------------------------- tl

/// Ansatz from `M`, `n` exponents and optional weights. Pass null for
/// `v_re`/`v_im` or `w_re`/`w_im` to use all-ones weights.
///
/// # Safety
/// Arrays must hold `n` values where non-null.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn htl_ansatz_new(
    m: *const HtlMatrix,
    exponents: *const i64,
    n: usize,
    v_re: *const f64,
    v_im: *const f64,
    w_re: *const f64,
    w_im: *const f64,
    sites: usize,
    out: *mut *mut HtlAnsatz,
) -> HtlStatus {
    guard(|| {
        let m = get(m, "m")?.0.clone();
        let exps = slice(exponents, n, "exponents")?.to_vec();
        let weights = |re: *const f64, im: *const f64| -> Result<Vec<ComplexValue>, Fail> {
            if re.is_null() && im.is_null() {
                Ok(vec![ComplexValue::new(1.0, 0.0); n])
            } else {
                complexes(re, im, n)
            }
        };
        let v = weights(v_re, v_im)?;
        let w = weights(w_re, w_im)?;
        put_boxed(out, HtlAnsatz(TLAnsatz::weighted(m, exps, v, w, sites)?))
    })
}

/// # Safety
/// `a` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn htl_ansatz_free(a: *mut HtlAnsatz) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htl_ansatz_from_json(json_text: *const c_char, out: *mut *mut HtlAnsatz) -> HtlStatus {
    guard(|| put_boxed(out, HtlAnsatz(json::from_str(text(json_text)?)?)))
}

/// # Safety
/// Pointers must be valid; free the result with `htl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn htl_ansatz_to_json(a: *const HtlAnsatz, out: *mut *mut c_char) -> HtlStatus {
    guard(|| put_string(out, json::to_string(&get(a, "ansatz")?.0)?))
}

/// Local two-site generator, `n²×n²`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_build_local(a: *const HtlAnsatz, abs_tol: f64, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        put_boxed(out, HtlMatrix(tlrep::build_local_generator(&get(a, "ansatz")?.0, &tol)?))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_verify_tl(a: *const HtlAnsatz, abs_tol: f64, out: *mut HtlTlReport) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let r = tlrep::verify_tl(&get(a, "ansatz")?.0, &tol)?;
        put(
            out,
            HtlTlReport {
                loop_residual: r.loop_residual,
                braid_residual: r.braid_residual.unwrap_or(f64::NAN),
                commute_residual: r.commute_residual.unwrap_or(f64::NAN),
                nu_re: r.nu.re,
                nu_im: r.nu.im,
                passed: r.passed,
            },
            "out",
        )
    })
}

// ---------------------------------------------------------------- braid

/// `Ř = qI − T/√ν` from a TL generator with loop value `ν`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_from_tl(
    t: *const HtlMatrix,
    nu_re: f64,
    nu_im: f64,
    abs_tol: f64,
    out: *mut *mut HtlBraid,
) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let b = baxter::braid_from_tl(&get(t, "t")?.0, ComplexValue::new(nu_re, nu_im), &tol)?;
        put_boxed(out, HtlBraid(b))
    })
}

/// Braid data for the ansatz's generator and loop value.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_from_ansatz(a: *const HtlAnsatz, abs_tol: f64, out: *mut *mut HtlBraid) -> HtlStatus {
    guard(|| {
        let tol = tolerance(abs_tol)?;
        let a = &get(a, "ansatz")?.0;
        let t = tlrep::build_local_generator(a, &tol)?;
        put_boxed(out, HtlBraid(baxter::braid_from_tl(&t, a.alpha(), &tol)?))
    })
}

/// # Safety
/// `b` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_free(b: *mut HtlBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_q(b: *const HtlBraid, re: *mut f64, im: *mut f64) -> HtlStatus {
    guard(|| {
        let q = get(b, "braid")?.0.q;
        put(re, q.re, "re")?;
        put(im, q.im, "im")
    })
}

/// Copy of `Ř`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_matrix(b: *const HtlBraid, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(get(b, "braid")?.0.r_check.clone())))
}

/// `R = ΠŘ`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_plain_r(b: *const HtlBraid, out: *mut *mut HtlMatrix) -> HtlStatus {
    guard(|| put_boxed(out, HtlMatrix(baxter::to_plain_r(&get(b, "braid")?.0)?)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_braid_hecke_residual(b: *const HtlBraid, out: *mut f64) -> HtlStatus {
    guard(|| put(out, get(b, "braid")?.0.hecke_residual(), "out"))
}

/// Braid relation residual of a raw `Ř` of size `n²×n²`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_check_braid(r_check: *const HtlMatrix, out: *mut f64) -> HtlStatus {
    guard(|| put(out, baxter::check_braid(&get(r_check, "r_check")?.0)?, "out"))
}

/// Yang-Baxter residual of a plain `R`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_check_ybe(r: *const HtlMatrix, out: *mut f64) -> HtlStatus {
    guard(|| put(out, baxter::check_ybe(&get(r, "r")?.0)?, "out"))
}

/// Worst spectral Yang-Baxter residual over `count` seeded samples.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn htl_spectral_ybe(b: *const HtlBraid, seed: u64, count: usize, out: *mut f64) -> HtlStatus {
    guard(|| {
        let b = &get(b, "braid")?.0;
        let worst = baxter::check_spectral_ybe(b, &baxter::default_samples(seed, count))?;
        put(out, worst, "out")
    })
}
