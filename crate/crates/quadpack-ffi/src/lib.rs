//! C interface to quadpack.
//!
//! Polygons and results are opaque handles created and freed through this
//! API. Every call returns a [`QpStatus`]; on failure a message is available
//! from [`qp_last_error`] until the next failing call on the same thread.
//! Panics never cross the boundary.

use quadpack::geom::{Point, Polygon};
use quadpack::io::parse_polygon;
use quadpack::pipeline::{execute, ExitStatus, Method, RunOutput, Settings};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status of a call. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    ValidationFailure = 1,
    InputError = 2,
    GuaranteeViolation = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpMethod {
    Voronoi = 0,
    Rightangle = 1,
    Kite = 2,
    Maxangle = 3,
    PackOnly = 4,
}

impl From<QpMethod> for Method {
    fn from(m: QpMethod) -> Method {
        match m {
            QpMethod::Voronoi => Method::Voronoi,
            QpMethod::Rightangle => Method::Rightangle,
            QpMethod::Kite => Method::Kite,
            QpMethod::Maxangle => Method::Maxangle,
            QpMethod::PackOnly => Method::PackOnly,
        }
    }
}

impl From<ExitStatus> for QpStatus {
    fn from(s: ExitStatus) -> QpStatus {
        match s {
            ExitStatus::Success => QpStatus::Ok,
            ExitStatus::ValidationFailure => QpStatus::ValidationFailure,
            ExitStatus::InputError => QpStatus::InputError,
            ExitStatus::GuaranteeViolation => QpStatus::GuaranteeViolation,
        }
    }
}

/// A validated polygonal domain.
pub struct QpPolygon(Polygon);

/// Output of one run: status, report and, for meshing methods, the mesh.
pub struct QpResult(RunOutput);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let c = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: QpStatus, msg: impl ToString) -> QpStatus {
    set_error(msg);
    status
}

/// Run `f`, turning a panic into [`QpStatus::Panic`].
fn guard(f: impl FnOnce() -> QpStatus) -> QpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(QpStatus::Panic, "internal panic"))
}

/// Message of the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn loop_from(xy: *const f64, n: usize) -> Vec<Point> {
    if n == 0 {
        return Vec::new();
    }
    std::slice::from_raw_parts(xy, 2 * n).chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect()
}

/// Build a polygon from interleaved coordinates.
///
/// `outer_xy` holds `outer_len` points as x0, y0, x1, y1, ... Hole `k` has
/// `hole_lens[k]` points, stored one hole after another in `holes_xy`.
/// `holes_xy` and `hole_lens` may be null when `hole_count` is 0.
///
/// # Safety
/// Every pointer must be valid for the lengths given, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_new(
    outer_xy: *const f64,
    outer_len: usize,
    holes_xy: *const f64,
    hole_lens: *const usize,
    hole_count: usize,
    out: *mut *mut QpPolygon,
) -> QpStatus {
    guard(|| {
        if outer_xy.is_null() || out.is_null() || (hole_count > 0 && (holes_xy.is_null() || hole_lens.is_null())) {
            return fail(QpStatus::NullPointer, "null pointer argument");
        }
        *out = ptr::null_mut();
        let outer = loop_from(outer_xy, outer_len);
        let mut holes = Vec::with_capacity(hole_count);
        let mut offset = 0;
        let lens: &[usize] = if hole_count == 0 { &[] } else { std::slice::from_raw_parts(hole_lens, hole_count) };
        for &len in lens {
            holes.push(loop_from(holes_xy.add(2 * offset), len));
            offset += len;
        }
        if outer.iter().chain(holes.iter().flatten()).any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return fail(QpStatus::InputError, "coordinates must be finite");
        }
        match Polygon::new(outer, holes) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(QpPolygon(p)));
                QpStatus::Ok
            }
            Err(e) => fail(QpStatus::InputError, e),
        }
    })
}

/// Build a polygon from polygon JSON,
/// `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_from_json(json: *const c_char, out: *mut *mut QpPolygon) -> QpStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(QpStatus::NullPointer, "null pointer argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(QpStatus::InputError, "polygon JSON is not UTF-8");
        };
        match parse_polygon(text) {
            Ok((p, _)) => {
                *out = Box::into_raw(Box::new(QpPolygon(p)));
                QpStatus::Ok
            }
            Err(e) => fail(QpStatus::InputError, e),
        }
    })
}

/// Number of polygon vertices over all loops; 0 for null.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_vertex_count(poly: *const QpPolygon) -> usize {
    poly.as_ref().map_or(0, |p| p.0.n())
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_free(poly: *mut QpPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Pack and mesh `poly` with default settings.
///
/// A result is stored in `out` whenever the run itself happened, including
/// validation and guarantee failures, so its report can be inspected. The
/// return value is the run's status.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_run(poly: *const QpPolygon, method: QpMethod, out: *mut *mut QpResult) -> QpStatus {
    guard(|| {
        let (Some(p), false) = (poly.as_ref(), out.is_null()) else {
            return fail(QpStatus::NullPointer, "null pointer argument");
        };
        let r = execute(&p.0, method.into(), &Settings::default(), "ffi");
        let status = QpStatus::from(r.status);
        if status != QpStatus::Ok {
            let msg = r.report.diagnostics.iter().map(|d| format!("{}: {}", d.kind, d.message)).collect::<Vec<_>>().join("; ");
            set_error(msg);
        }
        *out = Box::into_raw(Box::new(QpResult(r)));
        status
    })
}

/// # Safety
/// `res` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_result_free(res: *mut QpResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Status the run finished with; [`QpStatus::NullPointer`] for null.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_status(res: *const QpResult) -> QpStatus {
    res.as_ref().map_or(QpStatus::NullPointer, |r| r.0.status.into())
}

/// Mesh vertex count; 0 for null or when no mesh was produced.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_vertex_count(res: *const QpResult) -> usize {
    res.as_ref().and_then(|r| r.0.mesh.as_ref()).map_or(0, |m| m.vertices.len())
}

/// Mesh quad count; 0 for null or when no mesh was produced.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_quad_count(res: *const QpResult) -> usize {
    res.as_ref().and_then(|r| r.0.mesh.as_ref()).map_or(0, |m| m.quads.len())
}

/// Packed circle count; 0 for null or a failed run.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_circle_count(res: *const QpResult) -> usize {
    res.as_ref().and_then(|r| r.0.packing.as_ref()).map_or(0, |p| p.circles.len())
}

/// Copy vertex coordinates as x0, y0, x1, y1, ... into `xy`, which has
/// room for `capacity` doubles.
///
/// # Safety
/// `res` must be a live handle and `xy` valid for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn qp_result_vertices(res: *const QpResult, xy: *mut f64, capacity: usize) -> QpStatus {
    guard(|| {
        let (Some(r), false) = (res.as_ref(), xy.is_null()) else {
            return fail(QpStatus::NullPointer, "null pointer argument");
        };
        let vs = r.0.mesh.as_ref().map_or(&[][..], |m| &m.vertices[..]);
        if capacity < 2 * vs.len() {
            return fail(QpStatus::BufferTooSmall, format!("need {} doubles", 2 * vs.len()));
        }
        let dst = std::slice::from_raw_parts_mut(xy, 2 * vs.len());
        for (d, p) in dst.chunks_exact_mut(2).zip(vs) {
            d[0] = p.x;
            d[1] = p.y;
        }
        QpStatus::Ok
    })
}

/// Copy quad vertex indices, four per quad, counterclockwise, into `idx`,
/// which has room for `capacity` entries.
///
/// # Safety
/// `res` must be a live handle and `idx` valid for `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn qp_result_quads(res: *const QpResult, idx: *mut usize, capacity: usize) -> QpStatus {
    guard(|| {
        let (Some(r), false) = (res.as_ref(), idx.is_null()) else {
            return fail(QpStatus::NullPointer, "null pointer argument");
        };
        let qs = r.0.mesh.as_ref().map_or(&[][..], |m| &m.quads[..]);
        if capacity < 4 * qs.len() {
            return fail(QpStatus::BufferTooSmall, format!("need {} entries", 4 * qs.len()));
        }
        let dst = std::slice::from_raw_parts_mut(idx, 4 * qs.len());
        for (d, q) in dst.chunks_exact_mut(4).zip(qs) {
            d.copy_from_slice(q);
        }
        QpStatus::Ok
    })
}

/// Largest interior angle of the mesh in degrees; NaN without a mesh.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_max_angle(res: *const QpResult) -> f64 {
    res.as_ref().and_then(|r| r.0.report.mesh.as_ref()).map_or(f64::NAN, |m| m.max_angle_deg)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Run report as JSON. Free with [`qp_string_free`]. Null for null input.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_report_json(res: *const QpResult) -> *mut c_char {
    res.as_ref().map_or(ptr::null_mut(), |r| owned_string(r.0.report.to_json()))
}

/// Mesh as JSON. Free with [`qp_string_free`]. Null when there is no mesh.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_result_mesh_json(res: *const QpResult) -> *mut c_char {
    res.as_ref().and_then(|r| r.0.mesh.as_ref()).map_or(ptr::null_mut(), |m| owned_string(m.to_json()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
