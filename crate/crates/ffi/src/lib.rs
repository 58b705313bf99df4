//! C interface to `topo-tsp`.
//!
//! Every function returns a [`TtStatus`]; on failure a description is
//! available from [`tt_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use topo_tsp::graph::{Instance, Tour, WeightKind};
use topo_tsp::io::{gen_euclidean, parse_tsplib};
use topo_tsp::localsearch::{run, Algorithm, SearchConfig};
use topo_tsp::rtdl::{compute_barcode, edge_penalties, reward_shaping, Barcode};
use topo_tsp::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInstance = 3,
    InvalidTour = 4,
    ParseError = 5,
    SizeOutOfRange = 6,
    IoError = 7,
    Panic = 8,
}

/// Problem instance.
pub struct TtInstance(Instance);

/// Barcode of a tour.
pub struct TtBarcode(Barcode);

/// One bar: an MST edge paired with a tour edge.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TtBar {
    pub mst_u: usize,
    pub mst_v: usize,
    pub birth: f64,
    pub tour_u: usize,
    pub tour_v: usize,
    pub death: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TtSolveStats {
    pub length: f64,
    pub iterations: u64,
    pub trials: u64,
    pub wall_time: f64,
    pub converged: bool,
    pub hit_time_limit: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidInstance(_) | Error::ShapeMismatch { .. } => TtStatus::InvalidInstance,
            Error::InvalidTour(_) => TtStatus::InvalidTour,
            Error::InvalidArgument(_) => TtStatus::InvalidArgument,
            Error::Parse { .. } | Error::Csv(_) | Error::Json(_) => TtStatus::ParseError,
            Error::SizeOutOfRange { .. } => TtStatus::SizeOutOfRange,
            Error::Io(_) => TtStatus::IoError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TtStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TtStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            TtStatus::Panic
        }
    }
}

unsafe fn instance_ref<'a>(inst: *const TtInstance) -> Result<&'a Instance, Failure> {
    inst.as_ref().map(|i| &i.0).ok_or_else(|| null("instance"))
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn tour_from(inst: &Instance, tour: *const usize, len: usize) -> Result<Tour, Failure> {
    Ok(Tour::new(inst, slice(tour, len, "tour")?.to_vec())?)
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an instance from a row-major `n * n` symmetric distance matrix.
///
/// # Safety
/// `dist` must point to `n * n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_from_matrix(n: usize, dist: *const f64, out: *mut *mut TtInstance) -> TtStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure(TtStatus::InvalidArgument, "n too large".into()))?;
        let d = slice(dist, len, "dist")?;
        let inst = Instance::from_flat("matrix", WeightKind::Explicit, n, d.to_vec())?;
        store(out, TtInstance(inst))
    })
}

/// Parses a symmetric TSPLIB file held in memory.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_from_tsplib(data: *const u8, len: usize, out: *mut *mut TtInstance) -> TtStatus {
    guard(|| {
        let bytes = slice(data, len, "data")?;
        store(out, TtInstance(parse_tsplib(bytes)?))
    })
}

/// `n` uniform random points in the unit square with Euclidean distances.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_euclidean(n: usize, seed: u64, out: *mut *mut TtInstance) -> TtStatus {
    guard(|| store(out, TtInstance(gen_euclidean(n, seed)?)))
}

/// # Safety
/// `inst` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_free(inst: *mut TtInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of cities, 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_dimension(inst: *const TtInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// # Safety
/// `inst` must be a live handle, `tour` must point to `len` indices and
/// `out_length` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_tour_length(
    inst: *const TtInstance,
    tour: *const usize,
    len: usize,
    out_length: *mut f64,
) -> TtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let t = tour_from(inst, tour, len)?;
        *out_length.as_mut().ok_or_else(|| null("out_length"))? = t.length();
        Ok(())
    })
}

/// Penalty of the edge leaving each tour position; `out` receives `len`
/// values.
///
/// # Safety
/// `inst` must be a live handle, `tour` must point to `len` indices and
/// `out` to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tt_edge_penalties(
    inst: *const TtInstance,
    tour: *const usize,
    len: usize,
    out: *mut f64,
) -> TtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let t = tour_from(inst, tour, len)?;
        let pen = edge_penalties(inst, &t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let dst = std::slice::from_raw_parts_mut(out, len);
        for (p, d) in dst.iter_mut().enumerate() {
            *d = pen.at(p);
        }
        Ok(())
    })
}

/// Per-edge reward of a closed tour in visit order; `out` receives `len`
/// values.
///
/// # Safety
/// As for [`tt_edge_penalties`].
#[no_mangle]
pub unsafe extern "C" fn tt_reward_shaping(
    inst: *const TtInstance,
    tour: *const usize,
    len: usize,
    out: *mut f64,
) -> TtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let order = slice(tour, len, "tour")?;
        let rewards = reward_shaping(inst, order)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let dst = std::slice::from_raw_parts_mut(out, len);
        for (d, (_, r)) in dst.iter_mut().zip(rewards) {
            *d = r;
        }
        Ok(())
    })
}

/// # Safety
/// `inst` must be a live handle, `tour` must point to `len` indices and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tt_barcode_compute(
    inst: *const TtInstance,
    tour: *const usize,
    len: usize,
    out: *mut *mut TtBarcode,
) -> TtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let t = tour_from(inst, tour, len)?;
        store(out, TtBarcode(compute_barcode(inst, &t)?))
    })
}

/// Number of bars, 0 for NULL.
///
/// # Safety
/// `bc` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tt_barcode_len(bc: *const TtBarcode) -> usize {
    bc.as_ref().map_or(0, |b| b.0.bars.len())
}

/// Bar `k` in ascending order of the MST edge.
///
/// # Safety
/// `bc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tt_barcode_bar(bc: *const TtBarcode, k: usize, out: *mut TtBar) -> TtStatus {
    guard(|| {
        let bc = bc.as_ref().ok_or_else(|| null("barcode"))?;
        let bar = bc.0.bars.get(k).ok_or_else(|| {
            Failure(
                TtStatus::InvalidArgument,
                format!("bar {k} out of range ({} bars)", bc.0.bars.len()),
            )
        })?;
        *out.as_mut().ok_or_else(|| null("out"))? = TtBar {
            mst_u: bar.mst_edge.u,
            mst_v: bar.mst_edge.v,
            birth: bar.birth,
            tour_u: bar.tour_edge.u,
            tour_v: bar.tour_edge.v,
            death: bar.death,
        };
        Ok(())
    })
}

/// # Safety
/// `bc` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_barcode_free(bc: *mut TtBarcode) {
    if !bc.is_null() {
        drop(Box::from_raw(bc));
    }
}

/// Improves `tour` in place with the named algorithm (for example "2opt"
/// or "2opt-rtdl"). `stats` may be NULL.
///
/// # Safety
/// `inst` must be a live handle, `algo` a NUL-terminated string, `tour`
/// must point to `len` writable indices and `stats` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tt_solve(
    inst: *const TtInstance,
    algo: *const c_char,
    tour: *mut usize,
    len: usize,
    time_limit: f64,
    seed: u64,
    stats: *mut TtSolveStats,
) -> TtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if algo.is_null() {
            return Err(null("algo"));
        }
        let name = CStr::from_ptr(algo)
            .to_str()
            .map_err(|_| Failure(TtStatus::InvalidArgument, "algorithm name is not UTF-8".into()))?;
        let algorithm: Algorithm = name.parse()?;
        let start = tour_from(inst, tour, len)?;
        let cfg = SearchConfig {
            algorithm,
            time_limit,
            seed,
            ..SearchConfig::default()
        };
        let (best, st) = run(inst, &start, &cfg)?;
        std::slice::from_raw_parts_mut(tour, len).copy_from_slice(best.order());
        if let Some(out) = stats.as_mut() {
            *out = TtSolveStats {
                length: best.length(),
                iterations: st.iterations as u64,
                trials: st.trials,
                wall_time: st.wall_time,
                converged: st.converged,
                hit_time_limit: st.hit_time_limit,
            };
        }
        Ok(())
    })
}
