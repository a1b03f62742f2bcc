//! C ABI for `birange`.
//!
//! Matrices and verdicts are opaque handles created by `birange_matrix_from_*`
//! and `birange_check`, and released with the matching `*_free`. Every fallible
//! call returns a [`BirangeStatus`]; on failure a description is available
//! from [`birange_last_error`] on the same thread. No call unwinds across the
//! boundary: panics are caught and reported as [`BirangeStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use birange::cli::input::{MatrixSpec, Resolved};
use birange::criteria::{
    check_general_with, check_special_with, reciprocal_classify_with, solve_b, Ellipse, Kind, Reason, ReciprocalClass,
    Tolerances, Verdict,
};
use birange::linalg::{CMat2, CMat4, Complex};
use birange::nr::boundary_support;
use birange::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirangeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Non-finite number, non-positive reciprocal entry, bad tolerance or count.
    InvalidArgument = 2,
    /// Raw matrix whose diagonal blocks are not scalar; only the boundary oracle applies.
    NotBlockStructured = 3,
    /// `solve_b` with `α = 0`.
    AlphaZero = 4,
    /// The requested quantity does not exist for this verdict (e.g. ellipses of a negative one).
    Unavailable = 5,
    /// Output buffer shorter than required.
    BufferTooSmall = 6,
    /// Numerical failure inside the library.
    Numerical = 7,
    /// Caught panic; always a bug.
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirangeKind {
    BiElliptical = 0,
    NotBiElliptical = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirangeReason {
    /// Positive verdict.
    None = 0,
    BNormal = 1,
    TNonzero = 2,
    NoTheta = 3,
    ProductNormal = 4,
    ZeroMultiple = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirangeReciprocalClass {
    /// The matrix was not given in reciprocal form.
    NotReciprocal = 0,
    Elliptical = 1,
    BiElliptical = 2,
    Neither = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BirangeComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BirangeEllipse {
    pub center: BirangeComplex,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle of the major axis, radians.
    pub tilt: f64,
}

/// Quadratic-factor parameters `(p, x, y, z)` in the reduced frame.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BirangeParams {
    pub p: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BirangeTolerances {
    pub criterion: f64,
    pub normal: f64,
    pub unitary: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BirangeBoundarySample {
    pub theta: f64,
    pub point: BirangeComplex,
    pub support_value: f64,
    pub gap: f64,
}

/// Opaque matrix handle.
pub struct BirangeMatrix {
    inner: Resolved,
}

/// Opaque verdict handle.
pub struct BirangeVerdict {
    verdict: Verdict,
    reciprocal: Option<ReciprocalClass>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BirangeStatus {
    match e {
        Error::NonFinite | Error::NonPositiveEntry { .. } | Error::TooFew { .. } => BirangeStatus::InvalidArgument,
        Error::NotBlockStructured { .. } => BirangeStatus::NotBlockStructured,
        Error::AlphaZero => BirangeStatus::AlphaZero,
        _ => BirangeStatus::Numerical,
    }
}

fn fail(status: BirangeStatus, msg: &str) -> BirangeStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> BirangeStatus {
    fail(status_of(&e), &e.to_string())
}

/// Runs `f` with panics converted to [`BirangeStatus::Internal`].
fn guarded(f: impl FnOnce() -> BirangeStatus) -> BirangeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(BirangeStatus::Internal, &format!("internal error: {msg}"))
        }
    }
}

fn c(z: BirangeComplex) -> Complex {
    Complex::new(z.re, z.im)
}

fn bc(z: Complex) -> BirangeComplex {
    BirangeComplex { re: z.re, im: z.im }
}

fn tolerances(tol: *const BirangeTolerances) -> Result<Tolerances, BirangeStatus> {
    if tol.is_null() {
        return Ok(Tolerances::default());
    }
    // SAFETY: non-null, caller guarantees it points to a valid struct.
    let t = unsafe { *tol };
    if ![t.criterion, t.normal, t.unitary].iter().all(|x| x.is_finite() && *x > 0.0) {
        return Err(fail(BirangeStatus::InvalidArgument, "tolerances must be positive and finite"));
    }
    Ok(Tolerances { criterion: t.criterion, normal: t.normal, unitary: t.unitary })
}

fn new_matrix(spec: MatrixSpec, out: *mut *mut BirangeMatrix) -> BirangeStatus {
    if out.is_null() {
        return fail(BirangeStatus::NullPointer, "out is null");
    }
    match spec.resolve() {
        Ok(inner) => {
            // SAFETY: `out` is non-null and writable per the contract.
            unsafe { *out = Box::into_raw(Box::new(BirangeMatrix { inner })) };
            BirangeStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Message describing the last failure on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn birange_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code; never null.
#[no_mangle]
pub extern "C" fn birange_status_name(status: BirangeStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BirangeStatus::Ok => b"ok\0",
        BirangeStatus::NullPointer => b"null pointer\0",
        BirangeStatus::InvalidArgument => b"invalid argument\0",
        BirangeStatus::NotBlockStructured => b"not block-structured\0",
        BirangeStatus::AlphaZero => b"alpha is zero\0",
        BirangeStatus::Unavailable => b"unavailable\0",
        BirangeStatus::BufferTooSmall => b"buffer too small\0",
        BirangeStatus::Numerical => b"numerical failure\0",
        BirangeStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Default tolerances.
#[no_mangle]
pub extern "C" fn birange_default_tolerances() -> BirangeTolerances {
    let t = Tolerances::default();
    BirangeTolerances { criterion: t.criterion, normal: t.normal, unitary: t.unitary }
}

/// A full 4×4 matrix from 16 row-major entries.
///
/// # Safety
/// `entries` must point to 16 readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_from_raw(
    entries: *const BirangeComplex,
    out: *mut *mut BirangeMatrix,
) -> BirangeStatus {
    guarded(|| {
        if entries.is_null() {
            return fail(BirangeStatus::NullPointer, "entries is null");
        }
        let e = std::slice::from_raw_parts(entries, 16);
        let matrix = CMat4::from_fn(|i, j| c(e[4 * i + j]));
        new_matrix(MatrixSpec::Raw { matrix }, out)
    })
}

/// `[[αI, C], [D, βI]]` with `C`, `D` given as 4 row-major entries each.
///
/// # Safety
/// `c_entries` and `d_entries` must point to 4 readable values each and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_from_block(
    alpha: BirangeComplex,
    beta: BirangeComplex,
    c_entries: *const BirangeComplex,
    d_entries: *const BirangeComplex,
    out: *mut *mut BirangeMatrix,
) -> BirangeStatus {
    guarded(|| {
        if c_entries.is_null() || d_entries.is_null() {
            return fail(BirangeStatus::NullPointer, "block entries are null");
        }
        let m2 = |p: *const BirangeComplex| {
            let e = std::slice::from_raw_parts(p, 4);
            CMat2::from_fn(|i, j| c(e[2 * i + j]))
        };
        new_matrix(MatrixSpec::Block { alpha: c(alpha), beta: c(beta), c: m2(c_entries), d: m2(d_entries) }, out)
    })
}

/// The special form with `α = u + iv`, `B = [[b₁, b], [0, b₂]]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_from_special(
    u: f64,
    v: f64,
    b1: BirangeComplex,
    b2: BirangeComplex,
    b: f64,
    out: *mut *mut BirangeMatrix,
) -> BirangeStatus {
    guarded(|| new_matrix(MatrixSpec::Special { u, v, b1: c(b1), b2: c(b2), b }, out))
}

/// The reciprocal tridiagonal matrix with positive off-diagonal entries `a₁, a₂, a₃`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_from_reciprocal(
    a1: f64,
    a2: f64,
    a3: f64,
    out: *mut *mut BirangeMatrix,
) -> BirangeStatus {
    guarded(|| new_matrix(MatrixSpec::Reciprocal { a1, a2, a3 }, out))
}

/// Releases a matrix handle; null is ignored.
///
/// # Safety
/// `m` must come from a `birange_matrix_from_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_free(m: *mut BirangeMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Whether the matrix has scalar diagonal blocks, i.e. whether `birange_check` applies.
///
/// # Safety
/// `m` must be a live handle or null (which yields false).
#[no_mangle]
pub unsafe extern "C" fn birange_matrix_is_block(m: *const BirangeMatrix) -> bool {
    m.as_ref().is_some_and(|m| m.inner.block.is_some())
}

/// Classifies `m`. `tol` may be null for the defaults.
///
/// # Safety
/// `m` must be a live handle, `tol` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn birange_check(
    m: *const BirangeMatrix,
    tol: *const BirangeTolerances,
    out: *mut *mut BirangeVerdict,
) -> BirangeStatus {
    guarded(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(BirangeStatus::NullPointer, "matrix or out is null");
        };
        let tol = match tolerances(tol) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let res = &m.inner;
        let Some(bf) = res.block else {
            return match &res.block_error {
                Some(e) => from_error(e.clone()),
                None => fail(BirangeStatus::NotBlockStructured, "not block-structured"),
            };
        };
        let verdict = match res.special {
            Some(sf) => check_special_with(&sf, &tol),
            None => match check_general_with(&bf, &tol) {
                Ok(v) => v,
                Err(e) => return from_error(e),
            },
        };
        let reciprocal = match res.reciprocal {
            Some(r) => match reciprocal_classify_with(&r, &tol) {
                Ok(class) => Some(class),
                Err(e) => return from_error(e),
            },
            None => None,
        };
        *out = Box::into_raw(Box::new(BirangeVerdict { verdict, reciprocal }));
        BirangeStatus::Ok
    })
}

/// Releases a verdict handle; null is ignored.
///
/// # Safety
/// `v` must come from `birange_check` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_free(v: *mut BirangeVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_kind(v: *const BirangeVerdict) -> BirangeKind {
    match v.as_ref().map(|v| v.verdict.kind) {
        Some(Kind::BiElliptical) => BirangeKind::BiElliptical,
        _ => BirangeKind::NotBiElliptical,
    }
}

/// # Safety
/// `v` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_reason(v: *const BirangeVerdict) -> BirangeReason {
    match v.as_ref().and_then(|v| v.verdict.reason) {
        None => BirangeReason::None,
        Some(Reason::BNormal) => BirangeReason::BNormal,
        Some(Reason::TNonzero) => BirangeReason::TNonzero,
        Some(Reason::NoTheta) => BirangeReason::NoTheta,
        Some(Reason::ProductNormal) => BirangeReason::ProductNormal,
        Some(Reason::ZeroMultiple) => BirangeReason::ZeroMultiple,
    }
}

/// # Safety
/// `v` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_reciprocal_class(v: *const BirangeVerdict) -> BirangeReciprocalClass {
    match v.as_ref().and_then(|v| v.reciprocal) {
        None => BirangeReciprocalClass::NotReciprocal,
        Some(ReciprocalClass::Elliptical) => BirangeReciprocalClass::Elliptical,
        Some(ReciprocalClass::BiElliptical) => BirangeReciprocalClass::BiElliptical,
        Some(ReciprocalClass::Neither) => BirangeReciprocalClass::Neither,
    }
}

/// The angle at which the unitary condition holds, if one was found.
///
/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_theta(v: *const BirangeVerdict, out: *mut f64) -> BirangeStatus {
    guarded(|| {
        let (Some(v), false) = (v.as_ref(), out.is_null()) else {
            return fail(BirangeStatus::NullPointer, "verdict or out is null");
        };
        match v.verdict.diagnostics.theta {
            Some(t) => {
                *out = t;
                BirangeStatus::Ok
            }
            None => fail(BirangeStatus::Unavailable, "no angle satisfies the unitary condition"),
        }
    })
}

/// Quadratic-factor parameters of a positive verdict.
///
/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_params(v: *const BirangeVerdict, out: *mut BirangeParams) -> BirangeStatus {
    guarded(|| {
        let (Some(v), false) = (v.as_ref(), out.is_null()) else {
            return fail(BirangeStatus::NullPointer, "verdict or out is null");
        };
        match v.verdict.params {
            Some(p) => {
                *out = BirangeParams { p: p.p, x: p.x, y: p.y, z: p.z };
                BirangeStatus::Ok
            }
            None => fail(BirangeStatus::Unavailable, "negative verdict has no ellipse parameters"),
        }
    })
}

fn ellipse(e: &Ellipse) -> BirangeEllipse {
    BirangeEllipse { center: bc(e.center), semi_major: e.semi_major, semi_minor: e.semi_minor, tilt: e.tilt }
}

/// The two ellipses of a positive verdict, in the coordinates of the input matrix.
///
/// # Safety
/// `v` must be a live handle and `out` must have room for 2 ellipses.
#[no_mangle]
pub unsafe extern "C" fn birange_verdict_ellipses(v: *const BirangeVerdict, out: *mut BirangeEllipse) -> BirangeStatus {
    guarded(|| {
        let (Some(v), false) = (v.as_ref(), out.is_null()) else {
            return fail(BirangeStatus::NullPointer, "verdict or out is null");
        };
        match &v.verdict.ellipses {
            Some((a, b)) => {
                *out = ellipse(a);
                *out.add(1) = ellipse(b);
                BirangeStatus::Ok
            }
            None => fail(BirangeStatus::Unavailable, "negative verdict has no ellipses"),
        }
    })
}

/// Samples the boundary of the numerical range at `n ≥ 8` equally spaced
/// outer normals. Works for every matrix, block-structured or not.
///
/// # Safety
/// `m` must be a live handle and `out` must have room for `capacity` samples.
#[no_mangle]
pub unsafe extern "C" fn birange_boundary(
    m: *const BirangeMatrix,
    n: usize,
    out: *mut BirangeBoundarySample,
    capacity: usize,
) -> BirangeStatus {
    guarded(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(BirangeStatus::NullPointer, "matrix or out is null");
        };
        if capacity < n {
            return fail(BirangeStatus::BufferTooSmall, &format!("need {n} samples, capacity {capacity}"));
        }
        match boundary_support(&m.inner.matrix, n) {
            Ok(samples) => {
                let dst = std::slice::from_raw_parts_mut(out, n);
                for (d, s) in dst.iter_mut().zip(samples) {
                    *d = BirangeBoundarySample {
                        theta: s.theta,
                        point: bc(s.point),
                        support_value: s.support_value,
                        gap: s.multiplicity_gap,
                    };
                }
                BirangeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// The unique `b > 0` making the special form bi-elliptical. On success
/// `*found` tells whether it exists and `*b` holds it when it does.
///
/// # Safety
/// `b` and `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn birange_solve_b(
    u: f64,
    v: f64,
    b1: BirangeComplex,
    b2: BirangeComplex,
    b: *mut f64,
    found: *mut bool,
) -> BirangeStatus {
    guarded(|| {
        if b.is_null() || found.is_null() {
            return fail(BirangeStatus::NullPointer, "b or found is null");
        }
        if ![u, v, b1.re, b1.im, b2.re, b2.im].iter().all(|x| x.is_finite()) {
            return fail(BirangeStatus::InvalidArgument, "non-finite input");
        }
        match solve_b(u, v, c(b1), c(b2)) {
            Ok(r) => {
                *found = r.is_some();
                *b = r.unwrap_or(0.0);
                BirangeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
