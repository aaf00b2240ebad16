//! C interface to `yf-lattice`.
//!
//! Words, level distributions and magic tables are exposed as opaque
//! handles. Every fallible call returns a [`YfStatus`] and writes its result
//! through an out-pointer. Rationals cross the boundary as `"p/q"` strings
//! allocated here; release them with [`yf_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use yf_lattice::boundary::{level_distribution, mu, LevelDistribution, TailOnesWord};
use yf_lattice::harmonic::f_row;
use yf_lattice::magic::{build_table, MagicTable};
use yf_lattice::pathcount::{d_paths_dp, d_paths_formula};
use yf_lattice::rational::{parse_beta, Rational};
use yf_lattice::word::{parse_word_arg, render_word_arg, Word};
use yf_lattice::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    OutOfRange = 4,
    Panic = 5,
}

impl From<&Error> for YfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::OutOfRange { .. } | Error::RankMismatch { .. } | Error::RankOrder { .. } => YfStatus::OutOfRange,
            _ => YfStatus::InvalidArgument,
        }
    }
}

/// A finite word over {1, 2}.
pub struct YfWord(Word);

/// Masses of a central measure over one level.
pub struct YfDistribution(LevelDistribution);

/// A magic table with exact entries.
pub struct YfMagicTable(MagicTable);

/// Static description of a status code. Never free the result.
#[no_mangle]
pub extern "C" fn yf_status_message(status: YfStatus) -> *const c_char {
    let s: &'static CStr = match status {
        YfStatus::Ok => c"ok",
        YfStatus::NullPointer => c"null pointer argument",
        YfStatus::InvalidUtf8 => c"string argument is not valid UTF-8",
        YfStatus::InvalidArgument => c"invalid argument",
        YfStatus::OutOfRange => c"argument out of range",
        YfStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

fn guard(body: impl FnOnce() -> Result<(), YfStatus>) -> YfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => YfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => YfStatus::Panic,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, YfStatus> {
    if p.is_null() {
        return Err(YfStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| YfStatus::InvalidUtf8)
}

unsafe fn read_ref<'a, T>(p: *const T) -> Result<&'a T, YfStatus> {
    p.as_ref().ok_or(YfStatus::NullPointer)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), YfStatus> {
    if out.is_null() {
        return Err(YfStatus::NullPointer);
    }
    let c = CString::new(s).map_err(|_| YfStatus::Panic)?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), YfStatus> {
    if out.is_null() {
        return Err(YfStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn lift<T>(r: yf_lattice::Result<T>) -> Result<T, YfStatus> {
    r.map_err(|e| YfStatus::from(&e))
}

fn parse_w_beta(core: &str, beta: &str) -> Result<(TailOnesWord, Rational), YfStatus> {
    Ok((lift(TailOnesWord::parse(core))?, lift(parse_beta(beta))?))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word such as `"21221"`; `"eps"` or `""` is the empty word.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yf_word_parse(text: *const c_char, out: *mut *mut YfWord) -> YfStatus {
    guard(|| {
        let w = lift(parse_word_arg(read_str(text)?))?;
        write_handle(out, YfWord(w))
    })
}

/// # Safety
/// `word` must be null or a handle from [`yf_word_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yf_word_free(word: *mut YfWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Digit sum of the word; 0 for a null handle.
///
/// # Safety
/// `word` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yf_word_rank(word: *const YfWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.rank())
}

/// Number of digits; 0 for a null handle.
///
/// # Safety
/// `word` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yf_word_len(word: *const YfWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// Number of 2s; 0 for a null handle.
///
/// # Safety
/// `word` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yf_word_twos(word: *const YfWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.count_twos())
}

/// `f(x, y, z)` as a rational string.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yf_f(x: *const YfWord, y: usize, z: usize, out: *mut *mut c_char) -> YfStatus {
    guard(|| {
        let x = &read_ref(x)?.0;
        if y > x.rank() {
            return Err(YfStatus::OutOfRange);
        }
        let row = lift(f_row::<Rational>(x, z))?;
        write_string(out, row[y].to_string())
    })
}

/// Number of descending paths from `y` down to `x`, as a decimal string.
/// `use_dp` selects level-by-level counting instead of the closed formula.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yf_dcount(
    x: *const YfWord,
    y: *const YfWord,
    use_dp: bool,
    out: *mut *mut c_char,
) -> YfStatus {
    guard(|| {
        let (x, y) = (&read_ref(x)?.0, &read_ref(y)?.0);
        let count = if use_dp {
            d_paths_dp(x, y)
        } else {
            lift(d_paths_formula(x, y))?
        };
        write_string(out, count.to_string())
    })
}

/// `μ_{w,β}(v)` for `w = 1^∞ · core`.
///
/// # Safety
/// `core` and `beta` must be NUL-terminated; `v` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yf_mu(
    core: *const c_char,
    beta: *const c_char,
    v: *const YfWord,
    out: *mut *mut c_char,
) -> YfStatus {
    guard(|| {
        let (w, beta) = parse_w_beta(read_str(core)?, read_str(beta)?)?;
        let m = lift(mu(&w, &beta, &read_ref(v)?.0))?;
        write_string(out, m.to_string())
    })
}

/// Exact masses of `μ_{w,β}` over level `n`.
///
/// # Safety
/// `core` and `beta` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yf_distribution_new(
    core: *const c_char,
    beta: *const c_char,
    n: usize,
    out: *mut *mut YfDistribution,
) -> YfStatus {
    guard(|| {
        let (w, beta) = parse_w_beta(read_str(core)?, read_str(beta)?)?;
        let dist = lift(level_distribution(&w, &beta, n))?;
        write_handle(out, YfDistribution(dist))
    })
}

/// Number of words in the distribution; 0 for a null handle.
///
/// # Safety
/// `dist` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yf_distribution_len(dist: *const YfDistribution) -> usize {
    dist.as_ref().map_or(0, |d| d.0.masses.len())
}

/// Word and mass at position `index` (level order). Either out-pointer may
/// be null to skip it.
///
/// # Safety
/// `dist` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn yf_distribution_get(
    dist: *const YfDistribution,
    index: usize,
    word_out: *mut *mut c_char,
    mass_out: *mut *mut c_char,
) -> YfStatus {
    guard(|| {
        let d = &read_ref(dist)?.0;
        let (v, m) = d.masses.get(index).ok_or(YfStatus::OutOfRange)?;
        if !word_out.is_null() {
            write_string(word_out, render_word_arg(v))?;
        }
        if !mass_out.is_null() {
            write_string(mass_out, m.to_string())?;
        }
        Ok(())
    })
}

/// # Safety
/// `dist` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yf_distribution_free(dist: *mut YfDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// The table `T_{w,β,n}`, rows in level order and columns `y = 0..=n`.
///
/// # Safety
/// `core` and `beta` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yf_magic_new(
    core: *const c_char,
    beta: *const c_char,
    n: usize,
    out: *mut *mut YfMagicTable,
) -> YfStatus {
    guard(|| {
        let (w, beta) = parse_w_beta(read_str(core)?, read_str(beta)?)?;
        let table = lift(build_table(&w, &beta, n))?;
        write_handle(out, YfMagicTable(table))
    })
}

/// Number of rows; 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yf_magic_rows(table: *const YfMagicTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.words.len())
}

/// Entry at (`row`, `y`) as a rational string.
///
/// # Safety
/// `table` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yf_magic_entry(
    table: *const YfMagicTable,
    row: usize,
    y: usize,
    out: *mut *mut c_char,
) -> YfStatus {
    guard(|| {
        let t = &read_ref(table)?.0;
        let e = t
            .entries
            .get(row)
            .and_then(|r| r.get(y))
            .ok_or(YfStatus::OutOfRange)?;
        write_string(out, e.to_string())
    })
}

/// # Safety
/// `table` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yf_magic_free(table: *mut YfMagicTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
