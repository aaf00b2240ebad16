use std::ffi::{c_char, CStr, CString};
use std::ptr;

use yf_lattice_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { yf_string_free(s) };
    out
}

fn word(text: &str) -> *mut YfWord {
    let c = CString::new(text).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { yf_word_parse(c.as_ptr(), &mut w) }, YfStatus::Ok);
    w
}

#[test]
fn word_handles() {
    let w = word("21221");
    unsafe {
        assert_eq!(yf_word_rank(w), 8);
        assert_eq!(yf_word_len(w), 5);
        assert_eq!(yf_word_twos(w), 3);
        yf_word_free(w);
        assert_eq!(yf_word_rank(ptr::null()), 0);
        yf_word_free(ptr::null_mut());
    }
    let e = word("eps");
    assert_eq!(unsafe { yf_word_len(e) }, 0);
    unsafe { yf_word_free(e) };
}

#[test]
fn parse_errors() {
    let bad = CString::new("213").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { yf_word_parse(bad.as_ptr(), &mut w) }, YfStatus::InvalidArgument);
    assert!(w.is_null());
    assert_eq!(unsafe { yf_word_parse(ptr::null(), &mut w) }, YfStatus::NullPointer);
    let ok = CString::new("1").unwrap();
    assert_eq!(unsafe { yf_word_parse(ok.as_ptr(), ptr::null_mut()) }, YfStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { yf_word_parse(invalid.as_ptr() as *const c_char, &mut w) },
        YfStatus::InvalidUtf8
    );
}

#[test]
fn f_values() {
    let x = word("21221");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(yf_f(x, 0, 0, &mut out), YfStatus::Ok);
        assert_eq!(take(out), "1/720");
        assert_eq!(yf_f(x, 5, 0, &mut out), YfStatus::Ok);
        assert_eq!(take(out), "-1/120");
        assert_eq!(yf_f(x, 9, 0, &mut out), YfStatus::OutOfRange);
        assert_eq!(yf_f(x, 0, 6, &mut out), YfStatus::OutOfRange);
        assert_eq!(yf_f(ptr::null(), 0, 0, &mut out), YfStatus::NullPointer);
        yf_word_free(x);
    }
}

#[test]
fn path_counts() {
    let (e, y) = (word("eps"), word("21221"));
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(yf_dcount(e, y, false, &mut out), YfStatus::Ok);
        assert_eq!(take(out), "56");
        assert_eq!(yf_dcount(e, y, true, &mut out), YfStatus::Ok);
        assert_eq!(take(out), "56");
        assert_eq!(yf_dcount(y, e, false, &mut out), YfStatus::OutOfRange);
        yf_word_free(e);
        yf_word_free(y);
    }
}

#[test]
fn distribution_round_trip() {
    let core = CString::new("eps").unwrap();
    let beta = CString::new("1/2").unwrap();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(yf_distribution_new(core.as_ptr(), beta.as_ptr(), 3, &mut d), YfStatus::Ok);
        assert_eq!(yf_distribution_len(d), 3);
        let mut rows = Vec::new();
        for i in 0..3 {
            let (mut w, mut m) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(yf_distribution_get(d, i, &mut w, &mut m), YfStatus::Ok);
            rows.push((take(w), take(m)));
        }
        assert_eq!(
            rows,
            vec![
                ("111".to_string(), "1/3".to_string()),
                ("12".to_string(), "1/12".to_string()),
                ("21".to_string(), "7/12".to_string()),
            ]
        );
        let mut m = ptr::null_mut();
        assert_eq!(yf_distribution_get(d, 3, ptr::null_mut(), &mut m), YfStatus::OutOfRange);

        let v = word("21");
        assert_eq!(yf_mu(core.as_ptr(), beta.as_ptr(), v, &mut m), YfStatus::Ok);
        assert_eq!(take(m), "7/12");
        yf_word_free(v);
        yf_distribution_free(d);
    }
    let zero = CString::new("0").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { yf_distribution_new(core.as_ptr(), zero.as_ptr(), 3, &mut d) },
        YfStatus::InvalidArgument
    );
}

#[test]
fn magic_table() {
    let core = CString::new("eps").unwrap();
    let beta = CString::new("1/2").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(yf_magic_new(core.as_ptr(), beta.as_ptr(), 5, &mut t), YfStatus::Ok);
        assert_eq!(yf_magic_rows(t), 8);
        let mut out = ptr::null_mut();
        assert_eq!(yf_magic_entry(t, 0, 5, &mut out), YfStatus::Ok);
        assert_eq!(take(out), "1/32");
        assert_eq!(yf_magic_entry(t, 0, 6, &mut out), YfStatus::OutOfRange);
        yf_magic_free(t);
    }
}

#[test]
fn status_messages() {
    let msg = unsafe { CStr::from_ptr(yf_status_message(YfStatus::OutOfRange)) };
    assert_eq!(msg.to_str().unwrap(), "argument out of range");
}

#[test]
fn header_lists_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/yf_lattice.h")).unwrap();
    for name in [
        "yf_word_parse",
        "yf_word_free",
        "yf_f",
        "yf_dcount",
        "yf_mu",
        "yf_distribution_new",
        "yf_magic_entry",
        "yf_string_free",
        "YF_STATUS_OUT_OF_RANGE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
