// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `ensemble_swap`.
//!
//! Parameters and states are opaque heap handles created by `es_*_new` (or
//! returned through out-pointers) and released with the matching `_free`.
//! Every fallible function returns an [`EsStatus`]; on failure a message is
//! available from [`es_last_error_message`] on the same thread. Panics are
//! caught at the boundary and reported as `ES_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ensemble_swap::basis::{enumerate_basis, BasisLabel};
use ensemble_swap::gates::{self, Backend};
use ensemble_swap::{effective_coupling, Error, StateVector, SystemParams};
use num_complex::Complex64;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Evolution failed its accuracy check or produced non-finite values.
    Numerical = 3,
    OutOfRange = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsBackend {
    /// Full interaction Hamiltonian including the drive.
    Full = 0,
    /// Time-averaged beam-splitter Hamiltonian.
    Effective = 1,
}

impl From<EsBackend> for Backend {
    fn from(b: EsBackend) -> Self {
        match b {
            EsBackend::Full => Backend::Full,
            EsBackend::Effective => Backend::Effective,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EsGateSummary {
    pub fidelity: f64,
    pub p_loss: f64,
    pub gate_time: f64,
    pub xi_re: f64,
    pub xi_im: f64,
}

/// Basis label. `atomic` is 0 for G and k for Phi_k.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EsLabel {
    pub atomic: u32,
    pub n_a: u32,
    pub n_b: u32,
}

/// Opaque system parameters.
pub struct EsParams(SystemParams);

/// Opaque state vector.
pub struct EsState(StateVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EsStatus {
    match e {
        Error::AccuracyNotReached { .. } | Error::NonFinite(_) => EsStatus::Numerical,
        Error::SweepPoint { source, .. } => status_of(source),
        _ => EsStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (EsStatus, String)>) -> EsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            EsStatus::Panic
        }
    }
}

fn lib<T>(r: ensemble_swap::Result<T>) -> Result<T, (EsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (EsStatus, String) {
    (EsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn params_ref<'a>(p: *const EsParams) -> Result<&'a SystemParams, (EsStatus, String)> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null("params"))
}

unsafe fn params_mut<'a>(p: *mut EsParams) -> Result<&'a mut SystemParams, (EsStatus, String)> {
    p.as_mut().map(|p| &mut p.0).ok_or_else(|| null("params"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (EsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn publish_params(out: *mut *mut EsParams, p: SystemParams) -> Result<(), (EsStatus, String)> {
    lib(p.validate())?;
    unsafe { write_out(out, Box::into_raw(Box::new(EsParams(p)))) }
}

/// Uniform couplings `g`, drive `omega = omega_ratio * sqrt(n_atoms) * g`,
/// no damping.
#[no_mangle]
pub unsafe extern "C" fn es_params_new(
    n_atoms: u64,
    g: f64,
    omega_ratio: f64,
    out: *mut *mut EsParams,
) -> EsStatus {
    guard(|| {
        if !(g.is_finite() && g >= 0.0 && omega_ratio.is_finite() && omega_ratio > 0.0) {
            return Err((
                EsStatus::InvalidArgument,
                "g must be >= 0 and omega_ratio > 0".into(),
            ));
        }
        publish_params(out, SystemParams::uniform(n_atoms, g, omega_ratio))
    })
}

/// `N = 4e4`, `omega = 20 sqrt(N) g`, no damping.
#[no_mangle]
pub unsafe extern "C" fn es_params_new_reference(g: f64, out: *mut *mut EsParams) -> EsStatus {
    guard(|| publish_params(out, SystemParams::reference(g)))
}

/// Releases a handle from `es_params_new*`. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn es_params_free(params: *mut EsParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Complex single-atom couplings. The handle is left unchanged on error.
#[no_mangle]
pub unsafe extern "C" fn es_params_set_couplings(
    params: *mut EsParams,
    g_a_re: f64,
    g_a_im: f64,
    g_b_re: f64,
    g_b_im: f64,
) -> EsStatus {
    guard(|| {
        let p = params_mut(params)?;
        let next = SystemParams {
            g_a: Complex64::new(g_a_re, g_a_im),
            g_b: Complex64::new(g_b_re, g_b_im),
            ..*p
        };
        lib(next.validate())?;
        *p = next;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn es_params_set_drive(
    params: *mut EsParams,
    omega: f64,
    phi: f64,
) -> EsStatus {
    guard(|| {
        let p = params_mut(params)?;
        let next = SystemParams { omega, phi, ..*p };
        lib(next.validate())?;
        *p = next;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn es_params_set_decay(
    params: *mut EsParams,
    kappa_a: f64,
    kappa_b: f64,
    gamma_1: f64,
    gamma_2: f64,
) -> EsStatus {
    guard(|| {
        let p = params_mut(params)?;
        let next = SystemParams {
            kappa_a,
            kappa_b,
            gamma_1,
            gamma_2,
            ..*p
        };
        lib(next.validate())?;
        *p = next;
        Ok(())
    })
}

/// `xi = N conj(g_a) g_b e^{-i phi} / omega`.
#[no_mangle]
pub unsafe extern "C" fn es_effective_coupling(
    params: *const EsParams,
    out_re: *mut f64,
    out_im: *mut f64,
) -> EsStatus {
    guard(|| {
        let xi = lib(effective_coupling(params_ref(params)?))?;
        write_out(out_re, xi.re)?;
        write_out(out_im, xi.im)
    })
}

/// `pi / (2 |xi|)`.
#[no_mangle]
pub unsafe extern "C" fn es_gate_time(params: *const EsParams, out: *mut f64) -> EsStatus {
    guard(|| write_out(out, lib(gates::gate_time(params_ref(params)?))?))
}

/// Swap gate on `(|00> + |01> + |10> + |11>)/2` for one gate time.
#[no_mangle]
pub unsafe extern "C" fn es_run_swap_gate(
    params: *const EsParams,
    backend: EsBackend,
    include_decay: bool,
    out: *mut EsGateSummary,
) -> EsStatus {
    guard(|| {
        let r = lib(gates::run_swap_gate(
            params_ref(params)?,
            backend.into(),
            include_decay,
        ))?;
        write_out(
            out,
            EsGateSummary {
                fidelity: r.fidelity,
                p_loss: r.p_loss,
                gate_time: r.gate_time,
                xi_re: r.xi.re,
                xi_im: r.xi.im,
            },
        )
    })
}

/// Probability of finding the photon in mode b at time `t` after starting
/// in mode a. Damping applies if the parameters carry any.
#[no_mangle]
pub unsafe extern "C" fn es_conversion_efficiency(
    params: *const EsParams,
    backend: EsBackend,
    t: f64,
    out: *mut f64,
) -> EsStatus {
    guard(|| {
        write_out(
            out,
            lib(gates::conversion_efficiency(
                params_ref(params)?,
                backend.into(),
                t,
            ))?,
        )
    })
}

/// Evolves the logical input `|n_a, n_b>` (each 0 or 1) for time `t` and
/// returns the output state. Release it with `es_state_free`.
#[no_mangle]
pub unsafe extern "C" fn es_truth_table_output(
    params: *const EsParams,
    backend: EsBackend,
    n_a: u32,
    n_b: u32,
    t: f64,
    out: *mut *mut EsState,
) -> EsStatus {
    guard(|| {
        if n_a > 1 || n_b > 1 {
            return Err((
                EsStatus::OutOfRange,
                format!("logical input ({n_a}, {n_b}) out of range"),
            ));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let mut table = lib(gates::truth_table(params_ref(params)?, backend.into(), t))?;
        let state = table
            .remove(&(n_a, n_b))
            .expect("all logical inputs present");
        write_out(out, Box::into_raw(Box::new(EsState(state))))
    })
}

/// Basis state `|label>` in the two-excitation basis.
#[no_mangle]
pub unsafe extern "C" fn es_state_new_basis(label: EsLabel, out: *mut *mut EsState) -> EsStatus {
    guard(|| {
        let atomic = ensemble_swap::AtomicLabel::from_code(label.atomic).ok_or_else(|| {
            (
                EsStatus::OutOfRange,
                format!("atomic code {} out of range", label.atomic),
            )
        })?;
        let b = enumerate_basis(2);
        let state = lib(StateVector::basis_state(
            &b,
            BasisLabel::new(atomic, label.n_a, label.n_b),
        ))?;
        write_out(out, Box::into_raw(Box::new(EsState(state))))
    })
}

/// Number of amplitudes, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn es_state_len(state: *const EsState) -> usize {
    state.as_ref().map_or(0, |s| s.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn es_state_amplitude(
    state: *const EsState,
    index: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> EsStatus {
    guard(|| {
        let s = state.as_ref().ok_or_else(|| null("state"))?;
        let z = *s.0.amplitudes().get(index).ok_or_else(|| {
            (
                EsStatus::OutOfRange,
                format!("index {index} >= {}", s.0.dim()),
            )
        })?;
        write_out(out_re, z.re)?;
        write_out(out_im, z.im)
    })
}

#[no_mangle]
pub unsafe extern "C" fn es_state_label(
    state: *const EsState,
    index: usize,
    out: *mut EsLabel,
) -> EsStatus {
    guard(|| {
        let s = state.as_ref().ok_or_else(|| null("state"))?;
        if index >= s.0.dim() {
            return Err((
                EsStatus::OutOfRange,
                format!("index {index} >= {}", s.0.dim()),
            ));
        }
        let l = s.0.basis().label(index);
        write_out(
            out,
            EsLabel {
                atomic: l.atomic.code(),
                n_a: l.n_a,
                n_b: l.n_b,
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn es_state_norm_squared(state: *const EsState, out: *mut f64) -> EsStatus {
    guard(|| {
        let s = state.as_ref().ok_or_else(|| null("state"))?;
        write_out(out, s.0.norm_squared())
    })
}

/// Releases a state handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn es_state_free(state: *mut EsState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Message for the most recent failure on this thread, or null if the last
/// call succeeded. Valid until the next `es_*` call on this thread.
#[no_mangle]
pub extern "C" fn es_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, EsStatus::Panic);
        let msg = unsafe { std::ffi::CStr::from_ptr(es_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("boom"));
        assert_eq!(guard(|| Ok(())), EsStatus::Ok);
        assert!(es_last_error_message().is_null());
    }

    #[test]
    fn error_mapping() {
        let e = Error::AccuracyNotReached {
            estimate: 1.0,
            tolerance: 1e-10,
        };
        assert_eq!(status_of(&e), EsStatus::Numerical);
        assert_eq!(status_of(&Error::ZeroNorm), EsStatus::InvalidArgument);
    }
}
