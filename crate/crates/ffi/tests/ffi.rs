// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

use std::ffi::CStr;
use std::ptr;

use ensemble_swap_ffi::*;

fn last_error() -> String {
    let p = es_last_error_message();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

struct Params(*mut EsParams);

impl Params {
    fn reference(g: f64) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { es_params_new_reference(g, &mut p) }, EsStatus::Ok);
        assert!(!p.is_null());
        Self(p)
    }
}

impl Drop for Params {
    fn drop(&mut self) {
        unsafe { es_params_free(self.0) };
    }
}

#[test]
fn reference_coupling_and_gate_time() {
    let p = Params::reference(1.0);
    let (mut re, mut im, mut t) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(es_effective_coupling(p.0, &mut re, &mut im), EsStatus::Ok);
        assert_eq!(es_gate_time(p.0, &mut t), EsStatus::Ok);
    }
    assert!((re - 10.0).abs() < 1e-12 && im.abs() < 1e-12);
    assert!((t - std::f64::consts::PI / 20.0).abs() < 1e-15);
}

#[test]
fn swap_gate_matches_library() {
    let p = Params::reference(1.0);
    unsafe {
        assert_eq!(es_params_set_decay(p.0, 0.1, 0.1, 0.1, 0.1), EsStatus::Ok);
    }
    let mut s = EsGateSummary::default();
    assert_eq!(
        unsafe { es_run_swap_gate(p.0, EsBackend::Full, true, &mut s) },
        EsStatus::Ok
    );
    let lib = ensemble_swap::run_swap_gate(
        &ensemble_swap::SystemParams::reference(1.0).with_decay(0.1, 0.1),
        ensemble_swap::Backend::Full,
        true,
    )
    .unwrap();
    assert_eq!(s.fidelity, lib.fidelity);
    assert_eq!(s.p_loss, lib.p_loss);
    assert!(s.p_loss > 0.0 && s.fidelity > 0.98);
}

#[test]
fn truth_table_state_access() {
    let p = Params::reference(1.0);
    let mut t = 0.0;
    let mut state = ptr::null_mut();
    unsafe {
        es_gate_time(p.0, &mut t);
        assert_eq!(
            es_truth_table_output(p.0, EsBackend::Effective, 0, 1, t, &mut state),
            EsStatus::Ok
        );
        assert_eq!(es_state_len(state), 15);
        let mut found = false;
        for i in 0..es_state_len(state) {
            let mut l = EsLabel::default();
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(es_state_label(state, i, &mut l), EsStatus::Ok);
            assert_eq!(es_state_amplitude(state, i, &mut re, &mut im), EsStatus::Ok);
            if l == (EsLabel {
                atomic: 0,
                n_a: 1,
                n_b: 0,
            }) {
                assert!(re.abs() < 1e-9 && (im - 1.0).abs() < 1e-9);
                found = true;
            }
        }
        assert!(found);
        let mut n = 0.0;
        assert_eq!(es_state_norm_squared(state, &mut n), EsStatus::Ok);
        assert!((n - 1.0).abs() < 1e-12);

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            es_state_amplitude(state, 15, &mut re, &mut im),
            EsStatus::OutOfRange
        );
        assert!(last_error().contains("15"));
        es_state_free(state);
    }
}

#[test]
fn conversion_efficiency_is_sin_squared() {
    let p = Params::reference(1.0);
    for t in [0.01, 0.05, 0.13] {
        let mut e = 0.0;
        assert_eq!(
            unsafe { es_conversion_efficiency(p.0, EsBackend::Effective, t, &mut e) },
            EsStatus::Ok
        );
        assert!((e - (10.0 * t).sin().powi(2)).abs() < 1e-9);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            es_params_new(100, -1.0, 20.0, &mut out),
            EsStatus::InvalidArgument
        );
        assert!(out.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            es_params_new(0, 1.0, 20.0, &mut out),
            EsStatus::InvalidArgument
        );
        assert_eq!(
            es_params_new_reference(1.0, ptr::null_mut()),
            EsStatus::NullPointer
        );

        let mut t = 0.0;
        assert_eq!(es_gate_time(ptr::null(), &mut t), EsStatus::NullPointer);
        assert!(last_error().contains("params"));

        let p = Params::reference(1.0);
        assert_eq!(
            es_params_set_decay(p.0, -0.1, 0.0, 0.0, 0.0),
            EsStatus::InvalidArgument
        );
        assert!(last_error().contains("kappa"));
        // Rejected updates leave the handle untouched.
        let mut s = EsGateSummary::default();
        assert_eq!(
            es_run_swap_gate(p.0, EsBackend::Full, true, &mut s),
            EsStatus::Ok
        );
        assert!(s.p_loss.abs() < 1e-10);
        assert!(es_last_error_message().is_null());

        assert_eq!(
            es_params_set_drive(p.0, f64::NAN, 0.0),
            EsStatus::InvalidArgument
        );
        let mut state = ptr::null_mut();
        assert_eq!(
            es_truth_table_output(p.0, EsBackend::Full, 2, 0, 1.0, &mut state),
            EsStatus::OutOfRange
        );
        assert_eq!(es_state_len(ptr::null()), 0);
        es_state_free(ptr::null_mut());
        es_params_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/ensemble_swap.h"
    ))
    .unwrap();
    for needle in [
        "typedef struct EsParams EsParams;",
        "typedef struct EsState EsState;",
        "ES_STATUS_OK = 0",
        "ES_STATUS_PANIC",
        "ES_BACKEND_EFFECTIVE",
        "es_params_new(",
        "es_run_swap_gate(",
        "es_truth_table_output(",
        "es_last_error_message(void)",
    ] {
        assert!(header.contains(needle), "header lacks {needle}");
    }
}

/// Compiles and runs a C program against the static library when a C
/// compiler is available.
#[test]
fn c_program_links() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| {
        std::process::Command::new(c)
            .arg("--version")
            .output()
            .is_ok()
    }) else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    // Test binaries live in target/<profile>/deps; the static library sits one level up.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libensemble_swap_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "ensemble_swap.h"
int main(void) {
    EsParams *p = NULL;
    if (es_params_new_reference(1.0, &p) != ES_STATUS_OK) return 1;
    double re = 0, im = 0;
    if (es_effective_coupling(p, &re, &im) != ES_STATUS_OK) return 2;
    EsGateSummary s;
    if (es_run_swap_gate(p, ES_BACKEND_EFFECTIVE, false, &s) != ES_STATUS_OK) return 3;
    es_params_free(p);
    if (es_gate_time(NULL, &re) != ES_STATUS_NULL_POINTER) return 4;
    printf("%.12f\n", s.fidelity);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.path().join("smoke");
    let status = std::process::Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim().ends_with("1.000000000000"), "{text}");
}
