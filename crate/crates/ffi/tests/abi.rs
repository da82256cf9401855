use std::ffi::{c_char, CStr, CString};
use std::ptr;

use superchar_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    sc_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = sc_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn restriction_through_handles() {
    unsafe {
        let mut chi = ptr::null_mut();
        assert_eq!(sc_combo_chi(7, 2, c("1-5:1").as_ptr(), ptr::null(), &mut chi), ScStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(sc_restrict(chi, c("[2,5]").as_ptr(), &mut r), ScStatus::Ok);
        assert_eq!(sc_combo_len(r), 4);
        let mut s = ptr::null_mut();
        assert_eq!(sc_combo_to_text(r, &mut s), ScStatus::Ok);
        let text = take(s);
        assert!(text.starts_with("ambient={1|2,3,4,5|6|7} p=2\n"), "{text}");

        // text round trip
        let mut back = ptr::null_mut();
        assert_eq!(sc_combo_parse(c(&text).as_ptr(), &mut back), ScStatus::Ok);
        let mut s2 = ptr::null_mut();
        assert_eq!(sc_combo_to_text(back, &mut s2), ScStatus::Ok);
        assert_eq!(take(s2), text);

        let mut j = ptr::null_mut();
        assert_eq!(sc_combo_to_json(r, &mut j), ScStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(j)).unwrap();
        assert!(v.is_object());

        sc_combo_free(back);
        sc_combo_free(r);
        sc_combo_free(chi);
    }
}

#[test]
fn inner_product_and_values() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(sc_combo_chi(4, 3, c("1-3:1, 2-4:2").as_ptr(), ptr::null(), &mut a), ScStatus::Ok);
        let mut ip = ptr::null_mut();
        assert_eq!(sc_inner_product(a, a, &mut ip), ScStatus::Ok);
        assert_eq!(take(ip), "q");

        let mut t = ptr::null_mut();
        assert_eq!(sc_tensor(a, a, &mut t), ScStatus::Ok);
        let (mut va, mut vt) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sc_value(a, c("").as_ptr(), &mut va), ScStatus::Ok);
        assert_eq!(sc_value(t, c("").as_ptr(), &mut vt), ScStatus::Ok);
        // degree q^2 = 9, squared
        assert_eq!(take(va), "9");
        assert_eq!(take(vt), "81");
        sc_combo_free(t);
        sc_combo_free(a);
    }
}

#[test]
fn superinduction_from_a_parabolic() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(sc_combo_chi(4, 2, c("1-2:1").as_ptr(), c("{1,2|3,4}").as_ptr(), &mut x), ScStatus::Ok);
        let mut y = ptr::null_mut();
        assert_eq!(sc_superinduce(x, ptr::null(), &mut y), ScStatus::Ok);
        let mut v = ptr::null_mut();
        assert_eq!(sc_value(y, c("").as_ptr(), &mut v), ScStatus::Ok);
        // index of U_{1,2|3,4} in U_4 at q=2 is 2^4
        assert_eq!(take(v), "16");
        sc_combo_free(y);
        sc_combo_free(x);
    }
}

#[test]
fn count_and_verify() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sc_count(3, 2, &mut s), ScStatus::Ok);
        assert_eq!(take(s), "5");
        let mut ok = false;
        assert_eq!(sc_verify(c("orthogonality").as_ptr(), 3, 2, 0, &mut ok), ScStatus::Ok);
        assert!(ok);
        assert_eq!(sc_verify(c("orthogonality").as_ptr(), 4, 3, 81, &mut ok), ScStatus::Budget);
        assert!(last_error().contains("729"));
    }
}

#[test]
fn ncsym_products() {
    unsafe {
        let (mut x, mut y, mut z) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(sc_ncsym_parse(c("p{1,2}").as_ptr(), 2, &mut x), ScStatus::Ok);
        assert_eq!(sc_ncsym_parse(c("p{1}").as_ptr(), 1, &mut y), ScStatus::Ok);
        assert_eq!(sc_ncsym_star(x, y, c("{1,3|2}").as_ptr(), &mut z), ScStatus::Ok);
        let mut zp = ptr::null_mut();
        assert_eq!(sc_ncsym_to_basis(z, b'p' as c_char, &mut zp), ScStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sc_ncsym_to_text(zp, &mut s), ScStatus::Ok);
        assert_eq!(take(s), "p{1,3|2}");

        let mut m = ptr::null_mut();
        assert_eq!(sc_ncsym_to_basis(x, b'm' as c_char, &mut m), ScStatus::Ok);
        let mut j = ptr::null_mut();
        assert_eq!(sc_ncsym_to_json(m, &mut j), ScStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(j)).unwrap();
        assert_eq!(v["basis"], "m");

        let mut bad = ptr::null_mut();
        assert_eq!(sc_ncsym_to_basis(x, b'e' as c_char, &mut bad), ScStatus::Domain);
        for h in [x, y, z, zp, m] {
            sc_ncsym_free(h);
        }
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sc_combo_chi(3, 2, ptr::null(), ptr::null(), &mut out), ScStatus::NullPointer);
        assert_eq!(sc_combo_chi(3, 2, c("1-9:1").as_ptr(), ptr::null(), &mut out), ScStatus::Parse);
        assert_eq!(sc_combo_chi(3, 4, c("1-2:1").as_ptr(), ptr::null(), &mut out), ScStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(sc_combo_parse(c("garbage").as_ptr(), &mut out), ScStatus::Parse);
        let bytes = [0xffu8, 0];
        assert_eq!(sc_combo_parse(bytes.as_ptr().cast(), &mut out), ScStatus::InvalidUtf8);
        assert_eq!(sc_combo_to_text(ptr::null(), ptr::null_mut()), ScStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(sc_count(3, 2, &mut s), ScStatus::Ok);
        assert!(sc_last_error_message().is_null());
        sc_string_free(s);
        sc_string_free(ptr::null_mut());
        sc_combo_free(ptr::null_mut());
        sc_ncsym_free(ptr::null_mut());
        assert_eq!(CStr::from_ptr(sc_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
