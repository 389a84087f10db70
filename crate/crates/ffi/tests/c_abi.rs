use std::ffi::{c_char, CStr};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hilb3_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hilb3_string_free(s) };
    out
}

#[test]
fn degree_one_through_handle() {
    let mut h = ptr::null_mut();
    let st = unsafe { hilb3_invariant_compute(1, 0, 3, &mut h) };
    assert_eq!(st, Hilb3Status::Ok);
    assert_eq!(take(unsafe { hilb3_invariant_ab(h) }), "-81");
    assert_eq!(take(unsafe { hilb3_invariant_value(h) }), "-27");
    assert_eq!(unsafe { hilb3_invariant_num_points(h) }, 3);
    let (mut w, mut z, mut t) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { hilb3_invariant_point(h, 2, &mut w, &mut z, &mut t) }, Hilb3Status::Ok);
    take(w);
    take(z);
    assert_eq!(take(t), "-81");
    let st = unsafe { hilb3_invariant_point(h, 3, &mut w, &mut z, &mut t) };
    assert_eq!(st, Hilb3Status::InvalidArgument);
    assert!(take(hilb3_last_error()).contains("out of range"));
    unsafe { hilb3_invariant_free(h) };
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { hilb3_invariant_compute(0, 0, 3, &mut h) }, Hilb3Status::InvalidArgument);
    assert!(h.is_null());
    assert!(!hilb3_last_error().is_null());
    assert_eq!(unsafe { hilb3_invariant_compute(1, 0, 0, &mut h) }, Hilb3Status::InvalidArgument);
    assert_eq!(unsafe { hilb3_invariant_compute(1, 0, 3, ptr::null_mut()) }, Hilb3Status::NullPointer);
    assert!(unsafe { hilb3_invariant_ab(ptr::null()) }.is_null());
    assert_eq!(unsafe { hilb3_invariant_num_points(ptr::null()) }, 0);
    unsafe { hilb3_invariant_free(ptr::null_mut()) };
    unsafe { hilb3_string_free(ptr::null_mut()) };
}

#[test]
fn success_clears_last_error() {
    let mut n = 0usize;
    assert_eq!(unsafe { hilb3_graph_count(b'Q' as c_char, 0, 1, 0, 1, &mut n) }, Hilb3Status::InvalidArgument);
    assert!(!hilb3_last_error().is_null());
    assert_eq!(unsafe { hilb3_graph_count(b'S' as c_char, 0, 1, 0, 3, &mut n) }, Hilb3Status::Ok);
    assert_eq!(n, 11);
    assert!(hilb3_last_error().is_null());
}

#[test]
fn graph_counts() {
    let mut n = 0usize;
    for (d, want) in [(1, 0), (2, 1), (3, 7)] {
        assert_eq!(unsafe { hilb3_graph_count(b'T' as c_char, 2, 1, 2, d, &mut n) }, Hilb3Status::Ok);
        assert_eq!(n, want);
    }
    assert_eq!(unsafe { hilb3_graph_count(b'S' as c_char, 1, 1, 0, 1, &mut n) }, Hilb3Status::InvalidArgument);
    assert_eq!(unsafe { hilb3_graph_count(b'T' as c_char, 0, 2, 1, 1, &mut n) }, Hilb3Status::InvalidArgument);
}

#[test]
fn verify_degree_one() {
    let mut passed = -1;
    assert_eq!(unsafe { hilb3_verify(1, 0, &mut passed) }, Hilb3Status::Ok);
    assert_eq!(passed, 1);
    assert_eq!(unsafe { hilb3_verify(5, 0, &mut passed) }, Hilb3Status::InvalidArgument);
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hilb3.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["hilb3_invariant_compute", "hilb3_invariant_free", "hilb3_last_error", "Hilb3Status_NonConstant"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler found, skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
