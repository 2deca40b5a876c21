use std::ffi::{CStr, CString};
use std::ptr;

use chasles_ffi::*;

fn config(json: &str) -> *mut ChaslesConfig {
    let s = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { chasles_config_from_json(s.as_ptr(), &mut out) }, ChaslesStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(chasles_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn octad_through_handles() {
    let c =
        config(r#"{"d":3,"points":[[0,0,0],[1,0,0],[0,1,0],[0,0,1],[2,0,0],[0,2,0],[0,0,2],[1,1,0],[1,0,1],[0,1,1]]}"#);
    unsafe {
        assert_eq!(chasles_config_len(c), 10);
        assert_eq!(chasles_config_dim(c), 3);
        let mut vol = 0;
        assert_eq!(chasles_config_volume(c, &mut vol), ChaslesStatus::Ok);
        assert_eq!(vol, 8);
        let (mut flag, mut n) = (false, 0);
        assert_eq!(chasles_config_is_chasles(c, &mut flag, &mut n), ChaslesStatus::Ok);
        assert!(flag);
        assert_eq!(n, 7);
        chasles_config_free(c);
    }
}

#[test]
fn mixed_volume_of_quadrangles() {
    let p = config(r#"{"d":2,"points":[[0,0],[0,1],[0,2],[1,1],[1,2],[1,3]]}"#);
    let q = config(r#"{"d":2,"points":[[0,1],[0,2],[0,3],[1,0],[1,1],[1,2]]}"#);
    let handles = [p as *const ChaslesConfig, q as *const ChaslesConfig];
    let mult = [1usize, 1];
    let mut out = 0;
    unsafe {
        assert_eq!(chasles_mixed_volume(handles.as_ptr(), mult.as_ptr(), 2, &mut out), ChaslesStatus::Ok);
        chasles_config_free(p);
        chasles_config_free(q);
    }
    assert_eq!(out, 6);
}

#[test]
fn extra_point_round_trip() {
    let req =
        CString::new(r#"{"structure":{"d":2,"points":[[0,0],[1,1],[2,1],[1,2]]},"points":[["1","2"],["3","1"]]}"#)
            .unwrap();
    for f in [chasles_extra_point_json, chasles_eliminant_point_json] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { f(req.as_ptr(), &mut out) }, ChaslesStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
        assert_eq!(json["point"], serde_json::json!(["8/1", "-3/2"]));
        unsafe { chasles_string_free(out) };
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new(r#"{"d":2,"points":[]}"#).unwrap();
    assert_eq!(unsafe { chasles_config_from_json(bad.as_ptr(), &mut out) }, ChaslesStatus::InputError);
    assert!(out.is_null());
    assert!(last_error().contains("empty"));
    assert_eq!(unsafe { chasles_config_from_json(ptr::null(), &mut out) }, ChaslesStatus::NullPointer);

    let req =
        CString::new(r#"{"structure":{"d":2,"points":[[0,0],[1,1],[2,1],[1,2]]},"points":[["1","2"],["1","2"]]}"#)
            .unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { chasles_extra_point_json(req.as_ptr(), &mut json) }, ChaslesStatus::Degenerate);
    assert!(json.is_null());
    assert!(last_error().contains("rank"));

    let seg = config(r#"{"d":2,"points":[[0,0],[1,0]]}"#);
    let (mut flag, mut n) = (false, 0);
    assert_eq!(unsafe { chasles_config_is_chasles(seg, &mut flag, &mut n) }, ChaslesStatus::Degenerate);
    unsafe { chasles_config_free(seg) };
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/chasles.h")).unwrap();
    for name in [
        "typedef struct ChaslesConfig ChaslesConfig",
        "CHASLES_STATUS_DEGENERATE",
        "chasles_config_from_json",
        "chasles_extra_point_json",
        "chasles_string_free",
        "chasles_last_error_message",
        "chasles_mixed_volume",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
