//! C ABI for `star-solve`.
//!
//! Solver state lives behind an opaque [`StarSolver`] handle. Every fallible
//! call returns a [`StarStatus`]; on failure the handle keeps a message that
//! [`star_solver_last_error`] returns. Handles are not thread-safe; use one
//! per thread.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use star_solve::circuit::{
    solve_general_star_with, solve_symmetric_star_with, LineVoltages, VANISHING_LINE_VOLTAGE, MeasurementError, PhaseToPhaseVoltages,
};
use star_solve::fermat::fermat_distances_closed_form_with;
use star_solve::geometry::{theta_squared_raw, Angle, TriangleEdges};
use star_solve::{GeometryError, Tolerances};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The voltages or edges violate the triangle inequality.
    Inconsistent = 2,
    /// A triangle angle is at least 120 degrees; no balanced star point.
    AngleAtLeast120 = 3,
    /// Phase differences out of range.
    InvalidPhase = 4,
    /// No interior star point matches the input.
    Infeasible = 5,
    /// A numeric argument is out of range (for example a non-positive tolerance).
    InvalidArgument = 6,
    /// Internal error; the message has details.
    Internal = 7,
}

/// Recovered line voltages.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StarLineVoltages {
    pub u1p: f64,
    pub u2p: f64,
    pub u3p: f64,
    /// Direction of each line-voltage phasor in degrees, from the star point
    /// towards terminals 1, 2, 3, in a frame with terminal 3 at the origin and
    /// terminal 2 on the positive real axis. NaN when unavailable.
    pub phases_deg: [f64; 3],
    /// Bit `i` is set when line voltage `i + 1` vanishes (the star point sits
    /// on that terminal).
    pub vanishing: u32,
    /// For `STAR_STATUS_ANGLE_AT_LEAST120`: the 1-based terminal at the wide
    /// angle; zero otherwise.
    pub wide_terminal: u32,
}

/// Opaque solver handle.
pub struct StarSolver {
    tolerances: Tolerances,
    last_error: CString,
}

impl StarSolver {
    fn fail(&mut self, status: StarStatus, message: impl Into<String>) -> StarStatus {
        let text = message.into().replace('\0', " ");
        self.last_error = CString::new(text).expect("interior NULs removed");
        status
    }

    fn succeed(&mut self) -> StarStatus {
        self.last_error = CString::default();
        StarStatus::Ok
    }
}

fn status_of(e: &MeasurementError) -> StarStatus {
    match e {
        MeasurementError::InconsistentMeasurement { .. } => StarStatus::Inconsistent,
        MeasurementError::PhaseDiagnostic { .. } => StarStatus::AngleAtLeast120,
        MeasurementError::InvalidPhase { .. } => StarStatus::InvalidPhase,
        MeasurementError::Infeasible { .. } => StarStatus::Infeasible,
        MeasurementError::InvalidPhasor { .. } => StarStatus::InvalidArgument,
    }
}

fn geometry_status(e: &GeometryError) -> StarStatus {
    match e {
        GeometryError::NotATriangle { .. } | GeometryError::DegenerateTriangle => StarStatus::Inconsistent,
        GeometryError::AngleAtLeast120 { .. } => StarStatus::AngleAtLeast120,
        _ => StarStatus::Internal,
    }
}

fn to_c(u: [f64; 3], lv: &LineVoltages) -> StarLineVoltages {
    let scale = u.iter().copied().fold(0.0, f64::max);
    let vanishing = (0..3)
        .filter(|&i| lv.as_array()[i] < VANISHING_LINE_VOLTAGE * scale)
        .fold(0u32, |bits, i| bits | 1 << i);
    StarLineVoltages {
        u1p: lv.u1p,
        u2p: lv.u2p,
        u3p: lv.u3p,
        phases_deg: lv.phases.map_or([f64::NAN; 3], |p| p.map(Angle::degrees)),
        vanishing,
        wide_terminal: 0,
    }
}

/// Runs `f` on the handle, turning panics into `Internal`.
fn with_solver(solver: *mut StarSolver, f: impl FnOnce(&mut StarSolver) -> StarStatus) -> StarStatus {
    // SAFETY: the caller passes a handle from `star_solver_new` or null.
    let Some(solver) = (unsafe { solver.as_mut() }) else {
        return StarStatus::NullPointer;
    };
    match catch_unwind(AssertUnwindSafe(|| f(&mut *solver))) {
        Ok(status) => status,
        Err(_) => solver.fail(StarStatus::Internal, "internal panic"),
    }
}

/// Creates a solver with default tolerances. Free it with
/// [`star_solver_free`].
#[no_mangle]
pub extern "C" fn star_solver_new() -> *mut StarSolver {
    Box::into_raw(Box::new(StarSolver {
        tolerances: Tolerances::DEFAULT,
        last_error: CString::default(),
    }))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `solver` must come from [`star_solver_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn star_solver_free(solver: *mut StarSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

/// Sets the relative closure tolerance (default `1e-8`).
///
/// # Safety
/// `solver` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn star_solver_set_tolerance(solver: *mut StarSolver, closure: f64) -> StarStatus {
    with_solver(solver, |s| {
        if !(closure > 0.0 && closure.is_finite()) {
            return s.fail(StarStatus::InvalidArgument, format!("tolerance must be positive, got {closure}"));
        }
        s.tolerances.closure = closure;
        s.succeed()
    })
}

/// Message for the last failed call on this handle; empty after a success.
/// The pointer stays valid until the next call on the handle.
///
/// # Safety
/// `solver` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn star_solver_last_error(solver: *const StarSolver) -> *const c_char {
    match solver.as_ref() {
        Some(s) => s.last_error.as_ptr(),
        None => c"null solver handle".as_ptr(),
    }
}

fn solve_into(
    s: &mut StarSolver,
    u: [f64; 3],
    out: *mut StarLineVoltages,
    result: Result<LineVoltages, MeasurementError>,
) -> StarStatus {
    // SAFETY: checked for null by the callers.
    let out = unsafe { &mut *out };
    match result {
        Ok(lv) => {
            *out = to_c(u, &lv);
            s.succeed()
        }
        Err(e) => {
            *out = StarLineVoltages::default();
            if let MeasurementError::PhaseDiagnostic { terminal, clamped, .. } = &e {
                [out.u1p, out.u2p, out.u3p] = *clamped;
                out.phases_deg = [f64::NAN; 3];
                out.wide_terminal = *terminal as u32;
            }
            s.fail(status_of(&e), e.to_string())
        }
    }
}

/// Line voltages for a balanced load (phase differences of 120 degrees).
/// On `STAR_STATUS_ANGLE_AT_LEAST120`, `out` holds the voltages with the star
/// point on the wide terminal.
///
/// # Safety
/// `solver` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn star_solve_symmetric(
    solver: *mut StarSolver,
    u1: f64,
    u2: f64,
    u3: f64,
    out: *mut StarLineVoltages,
) -> StarStatus {
    with_solver(solver, |s| {
        if out.is_null() {
            return s.fail(StarStatus::NullPointer, "null output pointer");
        }
        let tol = s.tolerances;
        let result = PhaseToPhaseVoltages::new(u1, u2, u3).and_then(|u| solve_symmetric_star_with(&u, &tol));
        solve_into(s, [u1, u2, u3], out, result)
    })
}

/// Line voltages for load phase differences `psi1`, `psi2` in degrees; the
/// third is `360 - psi1 - psi2`.
///
/// # Safety
/// `solver` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn star_solve_general(
    solver: *mut StarSolver,
    u1: f64,
    u2: f64,
    u3: f64,
    psi1_deg: f64,
    psi2_deg: f64,
    out: *mut StarLineVoltages,
) -> StarStatus {
    with_solver(solver, |s| {
        if out.is_null() {
            return s.fail(StarStatus::NullPointer, "null output pointer");
        }
        let tol = s.tolerances;
        let result = PhaseToPhaseVoltages::new(u1, u2, u3).and_then(|u| {
            solve_general_star_with(&u, Angle::from_degrees(psi1_deg), Angle::from_degrees(psi2_deg), &tol)
        });
        solve_into(s, [u1, u2, u3], out, result)
    })
}

/// Fermat-point distances `(a', b', c')` of the triangle with edges
/// `(a, b, c)`, written to `out[0..3]`.
///
/// # Safety
/// `solver` must be a live handle; `out` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn star_fermat_distances(
    solver: *mut StarSolver,
    a: f64,
    b: f64,
    c: f64,
    out: *mut f64,
) -> StarStatus {
    with_solver(solver, |s| {
        if out.is_null() {
            return s.fail(StarStatus::NullPointer, "null output pointer");
        }
        let tol = s.tolerances;
        match TriangleEdges::new(a, b, c).and_then(|t| fermat_distances_closed_form_with(&t, &tol)) {
            Ok(sol) => {
                // SAFETY: the caller provides room for three values.
                unsafe { ptr::copy_nonoverlapping(sol.distances.as_ptr(), out, 3) };
                s.succeed()
            }
            Err(e) => s.fail(geometry_status(&e), e.to_string()),
        }
    })
}

/// Heron quantity `sqrt((a+b+c)(-a+b+c)(a-b+c)(a+b-c))`, four times the
/// triangle area. Needs no handle.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn star_theta_squared(a: f64, b: f64, c: f64, out: *mut f64) -> StarStatus {
    if out.is_null() {
        return StarStatus::NullPointer;
    }
    match theta_squared_raw(a, b, c) {
        Ok(v) => {
            *out = v;
            StarStatus::Ok
        }
        Err(e) => geometry_status(&e),
    }
}

/// Static description of a status code; takes the integer value so that
/// unknown codes are safe to pass.
#[no_mangle]
pub extern "C" fn star_status_message(status: i32) -> *const c_char {
    let text: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"inconsistent measurement (triangle inequality violated)",
        3 => c"triangle angle of at least 120 degrees",
        4 => c"invalid phase differences",
        5 => c"no star point consistent with the input",
        6 => c"invalid argument",
        7 => c"internal error",
        _ => c"unknown status",
    };
    text.as_ptr()
}

/// Library version, e.g. `"0.1.0"`.
#[no_mangle]
pub extern "C" fn star_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}
