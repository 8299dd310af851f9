use std::ffi::{c_char, CString};
use std::ptr;

use trisect_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { trisect_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&b| b as u8).collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

fn small_potential() -> *mut TrisectPotential {
    let x: Vec<f64> = (0..=400).map(|i| 4.0 * i as f64 / 400.0).collect();
    let q: Vec<f64> = x.iter().map(|x| 0.1 * (-4.0 * x).exp()).collect();
    let mut pot = ptr::null_mut();
    let s = unsafe { trisect_potential_new(x.as_ptr(), q.as_ptr(), x.len(), 200, 3.9, true, &mut pot) };
    assert_eq!(s, TrisectStatus::Ok);
    pot
}

#[test]
fn special_function_at_zero() {
    let mut out = [0.0; 2];
    for (p, want) in [(0, 1.0), (1, 0.0), (2, 0.0)] {
        assert_eq!(unsafe { trisect_special_s(p, 0.0, 0.0, out.as_mut_ptr()) }, TrisectStatus::Ok);
        assert!((out[0] - want).abs() < 1e-15 && out[1].abs() < 1e-15);
    }
    assert_eq!(unsafe { trisect_special_s(3, 0.0, 0.0, out.as_mut_ptr()) }, TrisectStatus::InvalidArgument);
    assert!(last_error().contains("p must be"));
}

#[test]
fn zeros_start_at_origin_for_families_one_and_two() {
    let mut out = [f64::NAN; 3];
    assert_eq!(unsafe { trisect_zeros(1, 3, out.as_mut_ptr()) }, TrisectStatus::Ok);
    assert_eq!(out[0], 0.0);
    assert!(out[1] > 0.0 && out[2] > out[1]);
}

#[test]
fn null_pointers_are_reported() {
    assert_eq!(unsafe { trisect_zeros(0, 3, ptr::null_mut()) }, TrisectStatus::NullPointer);
    let mut pot = ptr::null_mut();
    assert_eq!(unsafe { trisect_potential_new(ptr::null(), ptr::null(), 5, 10, 1.0, true, &mut pot) }, TrisectStatus::NullPointer);
    assert!(pot.is_null());
    assert_eq!(unsafe { trisect_data_validate(ptr::null()) }, TrisectStatus::NullPointer);
    assert_eq!(unsafe { trisect_potential_len(ptr::null()) }, 0);
    unsafe { trisect_potential_free(ptr::null_mut()) };
}

#[test]
fn bad_boundary_data_is_an_invalid_argument() {
    let pot = small_potential();
    let mut out = [0.0; 6];
    let s = unsafe { trisect_scattering_coefficients(pot, 0.5, 0.2, 0.0, 0.0, 0.0, out.as_mut_ptr()) };
    assert_eq!(s, TrisectStatus::InvalidArgument);
    unsafe { trisect_potential_free(pot) };
}

#[test]
fn zero_potential_coefficients() {
    let x = [0.0, 1.0, 2.0];
    let q = [0.0; 3];
    let mut pot = ptr::null_mut();
    assert_eq!(unsafe { trisect_potential_new(x.as_ptr(), q.as_ptr(), 3, 40, 1.0, true, &mut pot) }, TrisectStatus::Ok);
    assert_eq!(unsafe { trisect_potential_len(pot) }, 41);
    let mut out = [0.0; 6];
    assert_eq!(unsafe { trisect_scattering_coefficients(pot, 0.7, 0.3, 1.0, 0.0, 0.0, out.as_mut_ptr()) }, TrisectStatus::Ok);
    // q ≡ 0: s₂ = ζ₃, s₃ = ζ₂.
    let h = 3f64.sqrt() / 2.0;
    assert!((out[0] + 0.5).abs() < 1e-12 && (out[1] + h).abs() < 1e-12);
    assert!((out[2] + 0.5).abs() < 1e-12 && (out[3] - h).abs() < 1e-12);
    unsafe { trisect_potential_free(pot) };
}

#[test]
fn forward_json_round_trip_and_validation() {
    let pot = small_potential();
    let mut data = ptr::null_mut();
    assert_eq!(unsafe { trisect_forward(pot, 1.0, 0.0, 0.0, 3.0, 12, 1.0, &mut data) }, TrisectStatus::Ok);
    assert_eq!(unsafe { trisect_data_bound_states(data) }, 0);
    assert_eq!(unsafe { trisect_data_validate(data) }, TrisectStatus::Ok);

    let mut written = 0usize;
    let mut tiny = [0 as c_char; 4];
    let s = unsafe { trisect_data_to_json(data, tiny.as_mut_ptr(), tiny.len(), &mut written) };
    assert_eq!(s, TrisectStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; written + 1];
    assert_eq!(unsafe { trisect_data_to_json(data, buf.as_mut_ptr(), buf.len(), &mut written) }, TrisectStatus::Ok);

    let mut back = ptr::null_mut();
    assert_eq!(unsafe { trisect_data_from_json(buf.as_ptr(), &mut back) }, TrisectStatus::Ok);
    assert_eq!(unsafe { trisect_data_validate(back) }, TrisectStatus::Ok);

    let bad = CString::new("{\"rays\": 3}").unwrap();
    let mut none = ptr::null_mut();
    assert_eq!(unsafe { trisect_data_from_json(bad.as_ptr(), &mut none) }, TrisectStatus::IoFailed);
    assert!(none.is_null());

    unsafe {
        trisect_data_free(back);
        trisect_data_free(data);
        trisect_potential_free(pot);
    }
}

#[test]
fn inverse_produces_values_on_the_requested_grid() {
    let pot = small_potential();
    let mut data = ptr::null_mut();
    assert_eq!(unsafe { trisect_forward(pot, 1.0, 0.0, 0.0, 4.0, 30, 1.0, &mut data) }, TrisectStatus::Ok);
    let mut rec = ptr::null_mut();
    let s = unsafe { trisect_inverse(data, 1.0, 8, &mut rec) };
    if s == TrisectStatus::Ok {
        let n = unsafe { trisect_recovered_len(rec) };
        assert_eq!(n, 9);
        let mut x = vec![0.0; n];
        assert_eq!(unsafe { trisect_recovered_values(rec, x.as_mut_ptr(), ptr::null_mut(), ptr::null_mut(), n) }, TrisectStatus::Ok);
        assert!((x[8] - 1.0).abs() < 1e-12);
        assert_eq!(unsafe { trisect_recovered_values(rec, x.as_mut_ptr(), ptr::null_mut(), ptr::null_mut(), n - 1) }, TrisectStatus::InvalidArgument);
    } else {
        // The extrapolation check may reject the recovery; it must say so.
        assert_eq!(s, TrisectStatus::SolverFailed);
        assert!(last_error().contains("probe values disagree"), "{}", last_error());
    }
    unsafe {
        trisect_recovered_free(rec);
        trisect_data_free(data);
        trisect_potential_free(pot);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/trisect.h")).unwrap();
    for name in ["trisect_forward", "trisect_inverse", "trisect_last_error", "TrisectPotential", "TRISECT_STATUS_OK"] {
        assert!(header.contains(name), "missing {name}");
    }
}
