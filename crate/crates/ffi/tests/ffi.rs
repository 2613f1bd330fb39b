//! Exercises the C interface through its Rust symbols.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use cychom_ffi::*;

fn fixture_text(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = cychom_last_error();
    assert!(!p.is_null(), "an error message was expected");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn load(name: &str) -> *mut CychomAlgebra {
    let mut a = ptr::null_mut();
    assert_eq!(cychom_algebra_from_json(fixture_text(name).as_ptr(), 1, 0, &mut a), CYCHOM_OK);
    a
}

unsafe fn engine(a: *const CychomAlgebra, n: usize) -> *mut CychomEngine {
    let mut e = ptr::null_mut();
    assert_eq!(cychom_engine_new(a, n, 0, &mut e), CYCHOM_OK);
    e
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(cychom_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn dual_numbers_end_to_end() {
    unsafe {
        let a = load("dual_numbers.json");
        assert_eq!(cychom_algebra_dim(a), 2);
        let e = engine(a, 4);
        assert_eq!(cychom_engine_max_degree(e), 4);

        let mut hh = [0usize; 5];
        assert_eq!(cychom_hochschild_dims(e, hh.as_mut_ptr(), hh.len()), CYCHOM_OK);
        assert_eq!(hh, [2, 1, 1, 1, 1]);
        let mut hc = [0usize; 5];
        assert_eq!(cychom_cyclic_dims(e, hc.as_mut_ptr(), hc.len()), CYCHOM_OK);
        assert_eq!(hc, [2, 0, 2, 0, 2]);

        let (mut even, mut odd) = (usize::MAX, usize::MAX);
        assert_eq!(cychom_periodic_dims(e, &mut even, &mut odd, ptr::null_mut()), CYCHOM_NOT_ESTABLISHED);
        assert_eq!((even, odd), (usize::MAX, usize::MAX), "outputs untouched on refusal");
        assert!(!last_error().is_empty());

        let mut short = [0usize; 3];
        assert_eq!(cychom_hochschild_dims(e, short.as_mut_ptr(), short.len()), CYCHOM_BUFFER_TOO_SMALL);

        cychom_engine_free(e);
        cychom_algebra_free(a);
    }
}

#[test]
fn periodic_with_certificate() {
    unsafe {
        let a = load("z3.json");
        let e = engine(a, 4);
        let (mut even, mut odd, mut n) = (0, 0, usize::MAX);
        assert_eq!(cychom_periodic_dims(e, &mut even, &mut odd, &mut n), CYCHOM_OK);
        assert_eq!((even, odd, n), (3, 0, 0));
        assert!(cychom_last_error().is_null());
        cychom_engine_free(e);
        cychom_algebra_free(a);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(cychom_algebra_from_json(fixture_text("non_associative.json").as_ptr(), 1, 0, &mut a), CYCHOM_INVALID);
        assert!(a.is_null());
        assert!(last_error().contains("not associative"));
        assert_eq!(cychom_algebra_from_json(fixture_text("dangling_index.json").as_ptr(), 1, 0, &mut a), CYCHOM_INVALID);
        assert_eq!(cychom_algebra_from_json(fixture_text("m2.json").as_ptr(), 1, 2, &mut a), CYCHOM_SIZE_CAP);
        assert_eq!(cychom_algebra_from_json(ptr::null(), 1, 0, &mut a), CYCHOM_NULL_POINTER);
        let text = fixture_text("z2.json");
        assert_eq!(cychom_algebra_from_json(text.as_ptr(), 1, 0, ptr::null_mut()), CYCHOM_NULL_POINTER);

        let a = load("m2.json");
        let mut e = ptr::null_mut();
        assert_eq!(cychom_engine_new(a, 4, 100, &mut e), CYCHOM_SIZE_CAP);
        assert!(e.is_null());
        assert_eq!(cychom_engine_new(ptr::null(), 4, 0, &mut e), CYCHOM_NULL_POINTER);
        assert_eq!(cychom_hochschild_dims(ptr::null(), ptr::null_mut(), 0), CYCHOM_NULL_POINTER);
        cychom_algebra_free(a);
        cychom_algebra_free(ptr::null_mut());
        cychom_engine_free(ptr::null_mut());
    }
}

#[test]
fn run_matches_the_command_line() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/dual_numbers.json");
    let args: Vec<CString> = ["hp", path.to_str().unwrap()].iter().map(|s| CString::new(*s).unwrap()).collect();
    let argv: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let code = unsafe { cychom_run(argv.as_ptr(), argv.len(), &mut report) };
    assert_eq!(code, 3);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { cychom_string_free(report) };
    let direct = cychom::cli::run(["cychom", "hp", path.to_str().unwrap()]);
    assert_eq!(text, direct.stdout);
    assert!(text.contains("NOT_ESTABLISHED"));
}

#[test]
fn header_compiles_as_c_and_cxx() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = std::fs::read_to_string(include.join("cychom.h")).unwrap();
    for f in ["cychom_algebra_from_json", "cychom_engine_new", "cychom_periodic_dims", "cychom_run", "cychom_last_error"] {
        assert!(header.contains(f), "{f} missing from the header");
    }
    let dir = std::env::temp_dir().join(format!("cychom-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"cychom.h\"\nint main(void) { size_t d[5]; CychomEngine *e = 0; \
         return cychom_hochschild_dims(e, d, 5) == CYCHOM_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    for (compiler, extra) in [("cc", &["-std=c99"][..]), ("c++", &["-x", "c++"][..])] {
        let status = std::process::Command::new(compiler)
            .args(extra)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
            .arg(&include)
            .arg(&src)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(e) => eprintln!("skipping {compiler}: {e}"),
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
}
