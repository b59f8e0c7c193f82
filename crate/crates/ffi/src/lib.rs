//! C ABI over `pbwtidx`.
//!
//! Indexes are opaque handles created by a `*_build` or `*_load` call and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PbwtStatus`]; on failure, [`pbwt_last_error_message`] describes the error
//! for the calling thread. Result buffers are caller-owned: pass a capacity,
//! and on [`PbwtStatus::BufferTooSmall`] the count out-parameter still holds the
//! required length.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use pbwtidx::{
    Alphabet, Error, FmIndex, Index, PositionalIndex, SentinelText, StoragePolicy, Strategy,
    StringCollection,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbwtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownCharacter = 3,
    InvalidAlphabet = 4,
    RaggedCollection = 5,
    EmptyInput = 6,
    IndexOutOfRange = 7,
    PermutationNotStored = 8,
    PatternOverrun = 9,
    InvalidStride = 10,
    ModeMismatch = 11,
    Format = 12,
    Io = 13,
    BufferTooSmall = 14,
    Panic = 15,
}

/// Which permutation columns a positional index keeps.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbwtPolicy {
    Full = 0,
    /// Every `stride`-th column; a stride of 0 picks ceil(lg n).
    Sampled = 1,
    None = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbwtStrategy {
    Binary = 0,
    Backward = 1,
    Rebuild = 2,
}

impl From<PbwtStrategy> for Strategy {
    fn from(s: PbwtStrategy) -> Self {
        match s {
            PbwtStrategy::Binary => Strategy::Binary,
            PbwtStrategy::Backward => Strategy::Backward,
            PbwtStrategy::Rebuild => Strategy::Rebuild,
        }
    }
}

/// Opaque positional index.
pub struct PbwtPositionalIndex(PositionalIndex);

/// Opaque FM-index over a single text.
pub struct PbwtFmIndex(FmIndex);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(PbwtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownCharacter { .. } => PbwtStatus::UnknownCharacter,
            Error::InvalidAlphabet(_) => PbwtStatus::InvalidAlphabet,
            Error::RaggedCollection { .. } => PbwtStatus::RaggedCollection,
            Error::EmptyInput => PbwtStatus::EmptyInput,
            Error::RankOutOfRange { .. } | Error::IndexOutOfRange { .. } => {
                PbwtStatus::IndexOutOfRange
            }
            Error::PermutationNotStored { .. } => PbwtStatus::PermutationNotStored,
            Error::PatternOverrun { .. } => PbwtStatus::PatternOverrun,
            Error::InvalidStride(_) => PbwtStatus::InvalidStride,
            Error::ModeMismatch { .. } => PbwtStatus::ModeMismatch,
            Error::Inconsistent(_) | Error::Format(_) => PbwtStatus::Format,
            Error::Io(_) => PbwtStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PbwtStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PbwtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            PbwtStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside pbwtidx".into());
            PbwtStatus::Panic
        }
    }
}

/// # Safety
/// `data` must be null only when `len` is 0, otherwise valid for `len` reads.
unsafe fn bytes<'a>(data: *const u8, len: usize, what: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(PbwtStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn parse_alphabet(symbols: *const c_char) -> Result<Alphabet, Failure> {
    if symbols.is_null() {
        return Ok(Alphabet::dna());
    }
    Ok(Alphabet::new(c_str(symbols, "alphabet")?.as_bytes())?)
}

unsafe fn to_path(p: *const c_char) -> Result<PathBuf, Failure> {
    Ok(PathBuf::from(c_str(p, "path")?))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null("index handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn fill<T: Copy>(
    values: &[T],
    buf: *mut T,
    cap: usize,
    count: *mut usize,
) -> Result<(), Failure> {
    write_out(count, values.len(), "count")?;
    if values.len() > cap {
        return Err(Failure(
            PbwtStatus::BufferTooSmall,
            format!("need room for {} values, got {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pbwt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a positional index from newline-separated strings of equal length.
/// `alphabet` is a NUL-terminated ordered symbol string, or null for "ACGT".
///
/// # Safety
/// `data` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_build(
    data: *const u8,
    len: usize,
    alphabet: *const c_char,
    policy: PbwtPolicy,
    stride: usize,
    out: *mut *mut PbwtPositionalIndex,
) -> PbwtStatus {
    guard(|| {
        let alpha = parse_alphabet(alphabet)?;
        let collection = StringCollection::parse(bytes(data, len, "data")?, &alpha)?;
        let policy = match (policy, stride) {
            (PbwtPolicy::Full, _) => StoragePolicy::Full,
            (PbwtPolicy::None, _) => StoragePolicy::NoPerms,
            (PbwtPolicy::Sampled, 0) => StoragePolicy::default_for(collection.n_strings()),
            (PbwtPolicy::Sampled, t) => StoragePolicy::sampled(t)?,
        };
        let idx = PositionalIndex::build(collection, policy)?;
        emit(out, PbwtPositionalIndex(idx))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_load(
    path: *const c_char,
    out: *mut *mut PbwtPositionalIndex,
) -> PbwtStatus {
    guard(|| {
        let idx = Index::load(to_path(path)?)?.into_positional()?;
        emit(out, PbwtPositionalIndex(idx))
    })
}

/// Writes the index file; the byte count goes to `written` when it is not null.
///
/// # Safety
/// `index` must come from this library; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_save(
    index: *const PbwtPositionalIndex,
    path: *const c_char,
    written: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = handle(index)?;
        let n = Index::Positional(idx.0.clone()).save(to_path(path)?)?;
        if !written.is_null() {
            written.write(n);
        }
        Ok(())
    })
}

/// # Safety
/// `index` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_free(index: *mut PbwtPositionalIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// # Safety
/// `index` must come from this library; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_shape(
    index: *const PbwtPositionalIndex,
    n_strings: *mut usize,
    string_len: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = &handle(index)?.0;
        write_out(n_strings, idx.n_strings(), "n_strings")?;
        write_out(string_len, idx.string_len(), "string_len")
    })
}

/// Number of strings containing `pattern` at position `k`.
///
/// # Safety
/// `pattern` must be valid for `pattern_len` reads; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_count(
    index: *const PbwtPositionalIndex,
    pattern: *const u8,
    pattern_len: usize,
    k: usize,
    strategy: PbwtStrategy,
    count: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = &handle(index)?.0;
        let interval = idx.search(bytes(pattern, pattern_len, "pattern")?, k, strategy.into())?;
        write_out(count, interval.width(), "count")
    })
}

/// Indexes of the strings containing `pattern` at position `k`, in sorted-suffix order.
///
/// # Safety
/// `pattern` must be valid for `pattern_len` reads, `buf` for `cap` writes, and
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_positional_query(
    index: *const PbwtPositionalIndex,
    pattern: *const u8,
    pattern_len: usize,
    k: usize,
    strategy: PbwtStrategy,
    buf: *mut usize,
    cap: usize,
    count: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = &handle(index)?.0;
        let hits = idx.query(bytes(pattern, pattern_len, "pattern")?, k, strategy.into())?;
        fill(&hits, buf, cap, count)
    })
}

/// Builds an FM-index over `text`, sampling text positions that are multiples
/// of `sa_stride` (0 picks ceil(lg(len + 1))).
///
/// # Safety
/// `text` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_build(
    text: *const u8,
    len: usize,
    alphabet: *const c_char,
    sa_stride: usize,
    out: *mut *mut PbwtFmIndex,
) -> PbwtStatus {
    guard(|| {
        let alpha = parse_alphabet(alphabet)?;
        let text = SentinelText::new(bytes(text, len, "text")?, &alpha)?;
        let stride = match sa_stride {
            0 => StoragePolicy::default_stride(text.len() + 1),
            s => s,
        };
        let idx = FmIndex::build(text, stride)?;
        emit(out, PbwtFmIndex(idx))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_load(
    path: *const c_char,
    out: *mut *mut PbwtFmIndex,
) -> PbwtStatus {
    guard(|| {
        let idx = Index::load(to_path(path)?)?.into_substring()?;
        emit(out, PbwtFmIndex(idx))
    })
}

/// # Safety
/// `index` must come from this library; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_save(
    index: *const PbwtFmIndex,
    path: *const c_char,
    written: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = handle(index)?;
        let n = Index::Substring(idx.0.clone()).save(to_path(path)?)?;
        if !written.is_null() {
            written.write(n);
        }
        Ok(())
    })
}

/// # Safety
/// `index` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_free(index: *mut PbwtFmIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// Number of occurrences of `pattern` in the text.
///
/// # Safety
/// `pattern` must be valid for `pattern_len` reads; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_count(
    index: *const PbwtFmIndex,
    pattern: *const u8,
    pattern_len: usize,
    count: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = &handle(index)?.0;
        let interval = idx.count(bytes(pattern, pattern_len, "pattern")?)?;
        write_out(count, interval.width(), "count")
    })
}

/// Start positions of `pattern` in the text, ascending.
///
/// # Safety
/// `pattern` must be valid for `pattern_len` reads, `buf` for `cap` writes, and
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_locate(
    index: *const PbwtFmIndex,
    pattern: *const u8,
    pattern_len: usize,
    buf: *mut usize,
    cap: usize,
    count: *mut usize,
) -> PbwtStatus {
    guard(|| {
        let idx = &handle(index)?.0;
        let interval = idx.count(bytes(pattern, pattern_len, "pattern")?)?;
        let mut positions = idx.locate(interval);
        positions.sort_unstable();
        fill(&positions, buf, cap, count)
    })
}

/// Copies the BWT (text length + 1 bytes, including the sentinel) into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` writes and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pbwt_fm_bwt(
    index: *const PbwtFmIndex,
    buf: *mut u8,
    cap: usize,
    len: *mut usize,
) -> PbwtStatus {
    guard(|| fill(handle(index)?.0.bwt(), buf, cap, len))
}
