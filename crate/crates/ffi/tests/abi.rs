use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use milnor_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(milnor_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { milnor_string_free(p) };
    s
}

fn catalog(id: &str, param: u32) -> *mut MilnorCurve {
    let id = CString::new(id).unwrap();
    let mut curve = ptr::null_mut();
    assert_eq!(unsafe { milnor_curve_from_catalog(id.as_ptr(), param, &mut curve) }, MilnorStatus::Ok, "{}", last_error());
    curve
}

#[test]
fn expression_round_trip() {
    let expr = CString::new("(xz-y^2)^3-x^2*y^4").unwrap();
    let mut curve = ptr::null_mut();
    unsafe {
        assert_eq!(milnor_curve_from_expression(expr.as_ptr(), 1, &mut curve), MilnorStatus::Ok);
        let mut d = 0;
        assert_eq!(milnor_curve_degree(curve, &mut d), MilnorStatus::Ok);
        assert_eq!(d, 6);
        let mut tau = 0;
        assert_eq!(milnor_curve_tjurina(curve, &mut tau), MilnorStatus::Ok);
        assert_eq!(tau, 19);
        let mut eps = 0;
        assert_eq!(milnor_curve_epsilon(curve, 5, &mut eps), MilnorStatus::Ok);
        assert_eq!(eps, 1);
        let mut s = ptr::null_mut();
        assert_eq!(milnor_curve_delta1(curve, &mut s), MilnorStatus::Ok);
        assert_eq!(take_string(s), "t^2-t+1");
        milnor_curve_free(curve);
    }
}

#[test]
fn catalog_analysis_json() {
    let curve = catalog("nine-cusp-sextic", 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { milnor_curve_analyze_json(curve, false, &mut s) }, MilnorStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["alexander"]["delta1"], "(t^2-t+1)^3");
    assert_eq!(v["classification"]["kind"], "nearly-free");
    assert_eq!(v["input"]["catalog"], "nine-cusp-sextic");
    unsafe { milnor_curve_free(curve) };
}

#[test]
fn error_codes() {
    let mut curve = ptr::null_mut();
    let cases = [("x^2+", MilnorStatus::ParseError), ("x^2+y", MilnorStatus::ParseError), ("(x^3+y^3+z^3)^2", MilnorStatus::InvalidCurve)];
    for (text, want) in cases {
        let c = CString::new(text).unwrap();
        assert_eq!(unsafe { milnor_curve_from_expression(c.as_ptr(), 0, &mut curve) }, want, "{text}");
        assert!(!last_error().is_empty());
        assert!(curve.is_null());
    }
    let id = CString::new("no-such-curve").unwrap();
    assert_eq!(unsafe { milnor_curve_from_catalog(id.as_ptr(), 0, &mut curve) }, MilnorStatus::UnknownCatalog);
    let id = CString::new("fermat").unwrap();
    assert_eq!(unsafe { milnor_curve_from_catalog(id.as_ptr(), 0, &mut curve) }, MilnorStatus::InvalidArgument);
    assert_eq!(unsafe { milnor_curve_from_expression(ptr::null(), 0, &mut curve) }, MilnorStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { milnor_curve_from_expression(bad.as_ptr().cast(), 0, &mut curve) }, MilnorStatus::InvalidUtf8);
    let mut d = 0;
    assert_eq!(unsafe { milnor_curve_degree(ptr::null(), &mut d) }, MilnorStatus::NullPointer);
}

#[test]
fn uncertified_delta1_reports_interval() {
    let curve = catalog("hessian", 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { milnor_curve_delta1(curve, &mut s) }, MilnorStatus::NotCertified);
    assert!(s.is_null());
    assert!(last_error().contains("^[1,2]"), "{}", last_error());
    let mut eps = 0;
    assert_eq!(unsafe { milnor_curve_epsilon(curve, 0, &mut eps) }, MilnorStatus::InvalidArgument);
    unsafe { milnor_curve_free(curve) };
}

#[test]
fn free_accepts_null() {
    unsafe {
        milnor_curve_free(ptr::null_mut());
        milnor_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(milnor_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/milnor.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "milnor_curve_from_expression",
        "milnor_curve_analyze_json",
        "MILNOR_STATUS_NOT_CERTIFIED",
        "typedef struct MilnorCurve MilnorCurve",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).status() else {
        eprintln!("no C compiler found; skipping syntax check");
        return;
    };
    assert!(status.success());
}

#[test]
fn c_client_links_and_runs() {
    // The cdylib sits next to the deps directory holding this test binary.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    if !lib_dir.join("libmilnor_ffi.so").exists() {
        eprintln!("shared library not found in {}; skipping", lib_dir.display());
        return;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let out = std::env::temp_dir().join(format!("milnor_smoke_{}", std::process::id()));
    let built = Command::new("cc")
        .args([&format!("{dir}/examples/smoke.c"), "-I", &format!("{dir}/include"), "-o"])
        .arg(&out)
        .arg("-L")
        .arg(lib_dir)
        .arg("-lmilnor_ffi")
        .status();
    let Ok(built) = built else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(built.success());
    let run = Command::new(&out).arg("zariski-sextic").env("LD_LIBRARY_PATH", lib_dir).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert_eq!(String::from_utf8_lossy(&run.stdout), "degree 6 tjurina 12 delta1 t^2-t+1\n");
    assert_eq!(run.status.code(), Some(0));
}
