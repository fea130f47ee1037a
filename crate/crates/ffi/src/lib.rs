//! C ABI over `cdlattice`.
//!
//! Groups and lattices cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free` function. Every
//! fallible call returns a [`CdlStatus`]; on failure a message is
//! available from [`cdl_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters must be released with
//! [`cdl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cdlattice::cd;
use cdlattice::dot::export_dot;
use cdlattice::lattice::{self, LatticeOptions, SubgroupLattice};
use cdlattice::report::{self, VerifyOptions, VerifyReport};
use cdlattice::spec::GroupSpec;
use cdlattice::{Error, Group};

/// Result codes. `CDL_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParameter = 3,
    InvalidAction = 4,
    NotNormal = 5,
    Capacity = 6,
    InvalidTable = 7,
    NotASublattice = 8,
    Internal = 9,
    InvalidSpec = 10,
    Unsupported = 11,
    OutOfRange = 12,
    Panic = 13,
}

/// Opaque group handle.
pub struct CdlGroup(Group);

/// Opaque subgroup-lattice handle. Holds its own copy of the group.
pub struct CdlLattice {
    lattice: SubgroupLattice,
    measures: Vec<cd::MeasureRow>,
    m_star: u64,
    cd_members: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CdlStatus {
    match e {
        Error::InvalidParameter(_) => CdlStatus::InvalidParameter,
        Error::InvalidAction(_) => CdlStatus::InvalidAction,
        Error::NotNormal(_) => CdlStatus::NotNormal,
        Error::Capacity { .. } => CdlStatus::Capacity,
        Error::InvalidTable(_) => CdlStatus::InvalidTable,
        Error::NotASublattice(_) => CdlStatus::NotASublattice,
        Error::InternalInconsistency(_) => CdlStatus::Internal,
        Error::InvalidSpec { .. } => CdlStatus::InvalidSpec,
        Error::Unsupported(_) => CdlStatus::Unsupported,
    }
}

struct Fail(CdlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CdlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CdlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside cdlattice");
            CdlStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(CdlStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CdlStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(CdlStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_id(l: &CdlLattice, id: usize) -> Result<(), Fail> {
    if id < l.lattice.len() {
        Ok(())
    } else {
        Err(Fail(
            CdlStatus::OutOfRange,
            format!(
                "subgroup id {id} out of range ({} subgroups)",
                l.lattice.len()
            ),
        ))
    }
}

fn options(max_subgroups: usize) -> LatticeOptions {
    let mut o = LatticeOptions::default();
    if max_subgroups > 0 {
        o.max_subgroups = max_subgroups;
    }
    o
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cdl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a spec such as `"Q8xC2"` or `"SDP(9,9,4)"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_from_spec(
    spec: *const c_char,
    out: *mut *mut CdlGroup,
) -> CdlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = GroupSpec::parse(str_arg(spec)?)?.build()?;
        *out = Box::into_raw(Box::new(CdlGroup(g)));
        Ok(())
    })
}

/// Builds a group from a row-major `order × order` Cayley table.
///
/// # Safety
/// `label` must be a NUL-terminated string, `table` must point to
/// `order * order` readable values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_from_table(
    label: *const c_char,
    table: *const usize,
    order: usize,
    out: *mut *mut CdlGroup,
) -> CdlStatus {
    guard(|| {
        if out.is_null() || table.is_null() {
            return Err(null());
        }
        let label = str_arg(label)?;
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| Fail(CdlStatus::Capacity, "order too large".into()))?;
        let flat = std::slice::from_raw_parts(table, cells);
        let rows: Vec<Vec<usize>> = flat.chunks(order.max(1)).map(<[usize]>::to_vec).collect();
        let g = Group::from_table(label, &rows)?;
        *out = Box::into_raw(Box::new(CdlGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_free(g: *mut CdlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_order(g: *const CdlGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_label(g: *const CdlGroup, out: *mut *mut c_char) -> CdlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        out_string(out, g.0.label().to_string())
    })
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_element_order(
    g: *const CdlGroup,
    index: usize,
    out: *mut usize,
) -> CdlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = g.0.element_order(index)?;
        Ok(())
    })
}

/// `a · b`.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_group_mul(
    g: *const CdlGroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> CdlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        if a >= g.0.order() || b >= g.0.order() {
            return Err(Fail(
                CdlStatus::OutOfRange,
                "element index out of range".into(),
            ));
        }
        *out = g.0.mul(a, b);
        Ok(())
    })
}

/// Enumerates all subgroups. `max_subgroups = 0` selects the default cap.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_new(
    g: *const CdlGroup,
    max_subgroups: usize,
    out: *mut *mut CdlLattice,
) -> CdlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let lattice = lattice::all_subgroups_with(&g.0, &options(max_subgroups))?;
        let (measures, m_star, cd_members) = cd::measure_table(&lattice);
        *out = Box::into_raw(Box::new(CdlLattice {
            lattice,
            measures,
            m_star,
            cd_members,
        }));
        Ok(())
    })
}

/// # Safety
/// `l` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_free(l: *mut CdlLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of subgroups, or 0 for a NULL handle.
///
/// # Safety
/// `l` must be NULL or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_len(l: *const CdlLattice) -> usize {
    l.as_ref().map_or(0, |l| l.lattice.len())
}

/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_subgroup_size(
    l: *const CdlLattice,
    id: usize,
    out: *mut usize,
) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        check_id(l, id)?;
        *out.as_mut().ok_or_else(null)? = l.lattice.subgroup(id).size();
        Ok(())
    })
}

/// Chermak–Delgado measure `|H|·|C_G(H)|` of subgroup `id`.
///
/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_measure(
    l: *const CdlLattice,
    id: usize,
    out: *mut u64,
) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        check_id(l, id)?;
        *out.as_mut().ok_or_else(null)? = l.measures[id].measure;
        Ok(())
    })
}

/// Maximal measure over all subgroups.
///
/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_m_star(l: *const CdlLattice, out: *mut u64) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = l.m_star;
        Ok(())
    })
}

/// Writes 1 to `out` when subgroup `id` attains the maximal measure.
///
/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_is_cd_member(
    l: *const CdlLattice,
    id: usize,
    out: *mut u8,
) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        check_id(l, id)?;
        *out.as_mut().ok_or_else(null)? = u8::from(l.cd_members.binary_search(&id).is_ok());
        Ok(())
    })
}

/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_meet(
    l: *const CdlLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        check_id(l, a)?;
        check_id(l, b)?;
        *out.as_mut().ok_or_else(null)? = l.lattice.meet(a, b);
        Ok(())
    })
}

/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_join(
    l: *const CdlLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        check_id(l, a)?;
        check_id(l, b)?;
        *out.as_mut().ok_or_else(null)? = l.lattice.join(a, b);
        Ok(())
    })
}

/// Hasse diagram in DOT format.
///
/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_lattice_dot(l: *const CdlLattice, out: *mut *mut c_char) -> CdlStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let r = cd::CdReport {
            label: l.lattice.group().label().to_string(),
            measures: l.measures.clone(),
            m_star: l.m_star,
            cd_members: l.cd_members.clone(),
            properties: Vec::new(),
        };
        out_string(out, export_dot(&l.lattice, &r)?)
    })
}

/// Full verification report as JSON (same schema as `cdlattice verify`).
/// `max_subgroups = 0` selects the default cap.
///
/// # Safety
/// `g` must be a live group handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cdl_verify_json(
    g: *const CdlGroup,
    max_subgroups: usize,
    out_json: *mut *mut c_char,
) -> CdlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        if out_json.is_null() {
            return Err(null());
        }
        let opts = VerifyOptions {
            lattice: options(max_subgroups),
            check_properties: true,
        };
        let a = report::analyze(&g.0, &opts)?;
        let json = serde_json::to_string(&VerifyReport::from_analysis(&a))
            .map_err(|e| Fail(CdlStatus::Internal, e.to_string()))?;
        out_string(out_json, json)
    })
}
