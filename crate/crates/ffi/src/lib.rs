//! C ABI over the superchar engine.
//!
//! Every call returns an [`ScStatus`]; results come back through out-pointers.
//! Handles are opaque and must be released with the matching `*_free`.
//! Strings returned to the caller are owned by the caller and freed with [`sc_string_free`].
//! On failure, [`sc_last_error_message`] describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superchar::cli::subgroup_index;
use superchar::cli::verify::{run_suite, Suite};
use superchar::ncsym::{star_k_product, Basis, NCSymElem};
use superchar::oracle::Budget;
use superchar::ring::{inner_product, restrict_combo, superinduce_combo, tensor, CharCombo};
use superchar::setpart::{count_sn, LabeledSetPartition, PartitionIndex, TwoBlock};
use superchar::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    Internal = 6,
    Panic = 7,
}

/// A Z[q, q^-1]-combination of supercharacters of a parabolic subgroup.
pub struct ScCombo {
    inner: CharCombo,
}

/// An element of NCSym in the m or p basis.
pub struct ScNcsym {
    inner: NCSymElem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(ScStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let s = match &e {
            Error::Parse(_) => ScStatus::Parse,
            Error::Domain(_) => ScStatus::Domain,
            Error::Budget { .. } => ScStatus::Budget,
            Error::Internal(_) => ScStatus::Internal,
        };
        Fail(s, e.to_string())
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn guard(f: impl FnOnce() -> Res<()>) -> ScStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ScStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Fail(ScStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ScStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| Fail(ScStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(Fail(ScStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(Fail(ScStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(ScStatus::Internal, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn labeled(s: &str, n: u32, p: u32) -> Res<LabeledSetPartition> {
    let t = s.trim();
    let full = if t.starts_with("n=") || t.starts_with("S=") {
        t.to_string()
    } else {
        format!("n={n}; {t}")
    };
    Ok(LabeledSetPartition::parse(&full, p)?)
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `χ^λ` of `U_K`. `subgroup` may be null for `U_n`; otherwise `[j,k]`, `{2,3,5}` or `{1,3|2,4}`.
/// `partition` is an arc list such as `1-5:1, 2-4:2`.
///
/// # Safety
/// Pointers must be valid; `out` receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn sc_combo_chi(
    n: u32,
    p: u32,
    partition: *const c_char,
    subgroup: *const c_char,
    out: *mut *mut ScCombo,
) -> ScStatus {
    guard(|| {
        let lam = labeled(text(partition, "partition")?, n, p)?;
        let k = if subgroup.is_null() {
            PartitionIndex::whole(n)
        } else {
            subgroup_index(text(subgroup, "subgroup")?, n)?
        };
        put(out, ScCombo { inner: CharCombo::chi(lam, k, p)? })
    })
}

/// Parses the text rendering produced by [`sc_combo_to_text`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_combo_parse(s: *const c_char, out: *mut *mut ScCombo) -> ScStatus {
    guard(|| put(out, ScCombo { inner: CharCombo::parse(text(s, "text")?)? }))
}

/// # Safety
/// `c` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_combo_free(c: *mut ScCombo) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of nonzero terms.
///
/// # Safety
/// `c` must be a valid handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sc_combo_len(c: *const ScCombo) -> usize {
    c.as_ref().map_or(0, |c| c.inner.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_combo_to_text(c: *const ScCombo, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, handle(c, "combo")?.inner.to_string()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_combo_to_json(c: *const ScCombo, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, handle(c, "combo")?.inner.to_json().to_string()))
}

/// Restriction to a parabolic subgroup refining the current ambient.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_restrict(c: *const ScCombo, subgroup: *const c_char, out: *mut *mut ScCombo) -> ScStatus {
    guard(|| {
        let c = handle(c, "combo")?;
        let k = subgroup_index(text(subgroup, "subgroup")?, c.inner.n())?;
        put(out, ScCombo { inner: restrict_combo(&c.inner, &k)? })
    })
}

/// Superinduction to `target` (null for `U_n`).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_superinduce(c: *const ScCombo, target: *const c_char, out: *mut *mut ScCombo) -> ScStatus {
    guard(|| {
        let c = handle(c, "combo")?;
        let l = if target.is_null() {
            PartitionIndex::whole(c.inner.n())
        } else {
            subgroup_index(text(target, "target")?, c.inner.n())?
        };
        put(out, ScCombo { inner: superinduce_combo(&c.inner, &l)? })
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_tensor(a: *const ScCombo, b: *const ScCombo, out: *mut *mut ScCombo) -> ScStatus {
    guard(|| {
        let (a, b) = (handle(a, "left")?, handle(b, "right")?);
        put(out, ScCombo { inner: tensor(&a.inner, &b.inner)? })
    })
}

/// `⟨a, b⟩` as a Laurent polynomial in `q`, rendered as text.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_inner_product(a: *const ScCombo, b: *const ScCombo, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let (a, b) = (handle(a, "left")?, handle(b, "right")?);
        put_string(out, inner_product(&a.inner, &b.inner)?.to_string())
    })
}

/// Value at the superclass of `u_μ`, rendered as a cyclotomic number.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_value(c: *const ScCombo, at: *const c_char, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let c = handle(c, "combo")?;
        let mu = labeled(text(at, "class")?, c.inner.n(), c.inner.p())?;
        put_string(out, c.inner.value_at(&mu)?.to_string())
    })
}

/// Number of `F_q`-labeled set partitions of `{1..n}`, in decimal.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_count(n: u32, q: u32, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        if q < 2 {
            return Err(Fail(ScStatus::Domain, format!("field size {q} is below 2")));
        }
        put_string(out, count_sn(n, &q.into()).to_string())
    })
}

/// Parses `p{1|2} - 1/2 m{1,2}` style input of the given degree.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_parse(s: *const c_char, degree: u32, out: *mut *mut ScNcsym) -> ScStatus {
    guard(|| put(out, ScNcsym { inner: NCSymElem::parse(text(s, "text")?, degree)? }))
}

/// # Safety
/// `x` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_free(x: *mut ScNcsym) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Rewrites in basis `'m'` or `'p'`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_to_basis(x: *const ScNcsym, basis: c_char, out: *mut *mut ScNcsym) -> ScStatus {
    guard(|| {
        let x = handle(x, "element")?;
        let b = match basis as u8 {
            b'm' => Basis::M,
            b'p' => Basis::P,
            other => return Err(Fail(ScStatus::Domain, format!("unknown basis {:?}", other as char))),
        };
        put(out, ScNcsym { inner: x.inner.to_basis(b) })
    })
}

/// `x ∗_K y` along a two-block `K` such as `{1,3|2}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_star(
    x: *const ScNcsym,
    y: *const ScNcsym,
    blocks: *const c_char,
    out: *mut *mut ScNcsym,
) -> ScStatus {
    guard(|| {
        let (x, y) = (handle(x, "left")?, handle(y, "right")?);
        let k = TwoBlock::parse(text(blocks, "blocks")?)?;
        put(out, ScNcsym { inner: star_k_product(&x.inner, &y.inner, &k)? })
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_to_text(x: *const ScNcsym, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, handle(x, "element")?.inner.to_string()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ncsym_to_json(x: *const ScNcsym, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, handle(x, "element")?.inner.to_json().to_string()))
}

/// Runs a verification suite. `budget` of 0 keeps the default oracle limit.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(
    suite: *const c_char,
    max_n: u32,
    q: u32,
    budget: u64,
    passed: *mut bool,
) -> ScStatus {
    guard(|| {
        let s: Suite = text(suite, "suite")?.parse()?;
        if passed.is_null() {
            return Err(Fail(ScStatus::NullPointer, "output pointer is null".into()));
        }
        let b = if budget == 0 {
            Budget::default()
        } else {
            Budget::with_group_order(budget as u128)
        };
        let r = run_suite(s, max_n, q, superchar::cli::DEFAULT_SEED, &b)?;
        if !r.passed() {
            set_error(r.to_string());
        }
        *passed = r.passed();
        Ok(())
    })
}
