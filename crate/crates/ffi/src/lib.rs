//! C ABI over the stable-pieces library.
//!
//! A `SpSession` is an opaque handle bound to one root datum and diagram
//! automorphism. Every fallible call returns an `SpStatus`; on failure the
//! message is available from `sp_last_error` on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! `sp_string_free`. Pieces are named with the `J=1,2;w=121` syntax.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stable_pieces::cells::cellular_report;
use stable_pieces::closure::{hasse_diagram, piece_closure};
use stable_pieces::format::{self, Format};
use stable_pieces::session::Session;
use stable_pieces::{leq_pieces, piece_dimension, CartanDatum, Error, PieceIndex};

/// Opaque session handle.
pub struct SpSession {
    inner: Session,
}

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidCartan = 3,
    NotFiniteType = 4,
    NotDiagramAutomorphism = 5,
    NotMinimal = 6,
    Parse = 7,
    OutOfRange = 8,
    Internal = 9,
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(SpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidCartan(_) => SpStatus::InvalidCartan,
            Error::NotFiniteType { .. } => SpStatus::NotFiniteType,
            Error::NotDiagramAutomorphism(_) => SpStatus::NotDiagramAutomorphism,
            Error::NotMinimal => SpStatus::NotMinimal,
            Error::Parse(_) | Error::InvalidGenerator(_) => SpStatus::Parse,
            _ => SpStatus::Internal,
        };
        Fail(code, e.to_string())
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SpStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SpStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SpStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn session<'a>(s: *const SpSession) -> Result<&'a Session, Fail> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("session"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(SpStatus::Internal, "output contains a nul byte".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn parse_piece(s: &Session, text: &str) -> Result<PieceIndex, Fail> {
    Ok(PieceIndex::parse(text, s.group(), s.delta())?)
}

fn boxed(s: Session, out: *mut *mut SpSession) -> Result<(), Fail> {
    let handle = Box::into_raw(Box::new(SpSession { inner: s }));
    unsafe { write_out(out, handle) }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
}

/// Creates a session from a type string such as `"A2"` or `"A1xA1"` and an
/// automorphism such as `"1:2,2:1"` (NULL or `"id"` for the identity).
///
/// # Safety
/// String arguments must be NUL-terminated or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_session_new_type(
    type_name: *const c_char,
    automorphism: *const c_char,
    out: *mut *mut SpSession,
) -> SpStatus {
    guard(|| {
        let t = text(type_name, "type")?;
        let a = if automorphism.is_null() { "id" } else { text(automorphism, "automorphism")? };
        boxed(Session::new(CartanDatum::parse_type(t)?, a, None)?, out)
    })
}

/// Creates a session from a row-major `rank x rank` Cartan matrix and an
/// optional automorphism given as `rank` 1-based images (NULL for identity).
///
/// # Safety
/// `matrix` must point to `rank * rank` values and `mapping`, if not NULL,
/// to `rank` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_session_new_cartan(
    matrix: *const i32,
    rank: usize,
    mapping: *const u32,
    out: *mut *mut SpSession,
) -> SpStatus {
    guard(|| {
        if matrix.is_null() {
            return Err(null("matrix"));
        }
        if rank == 0 || rank > 64 {
            return Err(Fail(SpStatus::OutOfRange, format!("rank {rank} is outside 1..=64")));
        }
        let flat = std::slice::from_raw_parts(matrix, rank * rank);
        let rows: Vec<Vec<i32>> = flat.chunks(rank).map(<[i32]>::to_vec).collect();
        let spec = if mapping.is_null() {
            "id".to_string()
        } else {
            std::slice::from_raw_parts(mapping, rank)
                .iter()
                .enumerate()
                .map(|(i, m)| format!("{}:{m}", i + 1))
                .collect::<Vec<_>>()
                .join(",")
        };
        boxed(Session::new(CartanDatum::new(rows)?, &spec, None)?, out)
    })
}

/// Releases a session. NULL is ignored.
///
/// # Safety
/// `s` must come from a constructor above and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sp_session_free(s: *mut SpSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Number of pieces.
///
/// # Safety
/// `s` must be a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_piece_count(s: *const SpSession, out: *mut usize) -> SpStatus {
    guard(|| write_out(out, session(s)?.pieces().len()))
}

/// JSON array of all pieces, `[{"J": [..], "w": [..], "dim": n, "j_inf": [..]}, ..]`.
///
/// # Safety
/// `s` must be a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_pieces_json(s: *const SpSession, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        write_string(out, format::pieces(s.group(), s.delta(), s.pieces(), Format::Json)?)
    })
}

/// JSON object for the piece at `index` in canonical order.
///
/// # Safety
/// `s` must be a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_piece_json(s: *const SpSession, index: usize, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let p = s.pieces().get(index).ok_or_else(|| {
            Fail(SpStatus::OutOfRange, format!("index {index} out of range ({} pieces)", s.pieces().len()))
        })?;
        let record = format::PieceRecord::new(s.group(), s.delta(), p);
        write_string(out, serde_json::to_string(&record).expect("plain data serializes"))
    })
}

/// Dimension of a piece.
///
/// # Safety
/// `s` must be a live session, `piece` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_piece_dimension(s: *const SpSession, piece: *const c_char, out: *mut usize) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let p = parse_piece(s, text(piece, "piece")?)?;
        write_out(out, piece_dimension(s.group(), s.delta(), &p))
    })
}

/// Whether piece `a` lies in the closure of piece `b`.
///
/// # Safety
/// `s` must be a live session, `a` and `b` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_leq(s: *const SpSession, a: *const c_char, b: *const c_char, out: *mut bool) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let (pa, pb) = (parse_piece(s, text(a, "a")?)?, parse_piece(s, text(b, "b")?)?);
        write_out(out, leq_pieces(s.group(), s.delta(), &pa, &pb))
    })
}

/// JSON array of the pieces in the closure of `piece`.
///
/// # Safety
/// `s` must be a live session, `piece` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_closure_json(s: *const SpSession, piece: *const c_char, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let p = parse_piece(s, text(piece, "piece")?)?;
        let closure = piece_closure(s.group(), s.delta(), &p);
        write_string(out, format::pieces(s.group(), s.delta(), &closure, Format::Json)?)
    })
}

/// Hasse diagram of all pieces in DOT.
///
/// # Safety
/// `s` must be a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_hasse_dot(s: *const SpSession, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let (nodes, edges) = hasse_diagram(s.group(), s.delta(), s.pieces());
        write_string(out, format::relation(s.group(), &nodes, &edges, Format::Dot)?)
    })
}

/// Cellular report for the closure of `piece` as JSON.
///
/// # Safety
/// `s` must be a live session, `piece` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_cells_json(s: *const SpSession, piece: *const c_char, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = session(s)?;
        let p = parse_piece(s, text(piece, "piece")?)?;
        write_string(out, format::cells(s.group(), &cellular_report(s.group(), s.delta(), &p), Format::Json)?)
    })
}
