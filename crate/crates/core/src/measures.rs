//! The measures phi and eta, their closed-form first derivatives, and a
//! central-difference gradient used to cross-check the closed forms.
//!
//! Two independent routes are kept for phi on purpose:
//!
//! * [`phi_x`] works entirely in the rational x-coordinate expressions,
//! * [`phi_y`] starts from boundary lengths and goes through the orthogeodesic
//!   trigonometry (`cosh_m`).
//!
//! They must agree to ~1e-9 relative; the agreement is one of the acceptance
//! checks. The derivative closed forms are transcriptions of the published
//! coefficient tables and are pinned against central finite differences.

use crate::error::{Error, Result};
use crate::pants::{length_to_x, Length, PantsShape, TorusPantsShape, BOUNDARY_MARGIN};
use crate::special::rogers_std;

/// A positive contribution to the 8 pi^2 (g-1) unit-tangent-bundle budget.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeasureValue(f64);

impl MeasureValue {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain {
                name: "measure",
                value,
                expected: "a finite positive real",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Boundary policy for measure evaluation.
///
/// The closed forms degenerate at the cube boundary (0/0 and log
/// singularities). `Strict` rejects coordinates within [`BOUNDARY_MARGIN`] of
/// 0 or 1; `Limit` clamps them to the margin and evaluates, trading a
/// documented O(1e-9)-level approximation for closed-cube statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Strict,
    Limit,
}

fn admit(value: f64, mode: EvalMode) -> Result<f64> {
    match mode {
        EvalMode::Strict => {
            if !(BOUNDARY_MARGIN..=1.0 - BOUNDARY_MARGIN).contains(&value) {
                Err(Error::Domain {
                    name: "coordinate",
                    value,
                    expected: "at least 1e-9 away from 0 and 1 (or use limit mode)",
                })
            } else {
                Ok(value)
            }
        }
        EvalMode::Limit => Ok(value.clamp(BOUNDARY_MARGIN, 1.0 - BOUNDARY_MARGIN)),
    }
}

fn admit3(p: &PantsShape, mode: EvalMode) -> Result<[f64; 3]> {
    let [a, b, c] = p.coords();
    Ok([admit(a, mode)?, admit(b, mode)?, admit(c, mode)?])
}

/// The six ordered assignments {i,j,k} = {1,2,3}; both printed sums
/// (the x-form over ordered triples and the y-form over ordered pairs
/// i != j) run over six terms, which is what makes the leading factor 4.
const ORDERED_TRIPLES: [(usize, usize, usize); 6] = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
];

fn phi_x_inner(x: [f64; 3], sink: &mut dyn FnMut(f64)) -> f64 {
    let big_x = x[0] * x[1] * x[2];
    let mut total = 0.0;
    for &(i, j, k) in ORDERED_TRIPLES.iter() {
        let (xi, xj, xk) = (x[i], x[j], x[k]);
        // Shared factored denominator of the first two arguments.
        let d = xj + xi * xi * xj + xi * xk + xi * xj * xj * xk;
        let a1 = (xi * xk + xj) * (1.0 + big_x) / d;
        let a2 = xj * (1.0 - xk * xk) / d;
        let yj = (xj * xk + xi) * (xj * xi + xk) / ((xi * xk + xj) * (1.0 + big_x));
        let a4 = xi * xi * xj * xj * (1.0 - xk * xk) * (1.0 - xk * xk)
            / ((xk + xi * xj) * (xi + xj * xk) * (xj + xi * xk) * (1.0 + big_x));
        sink(a1);
        sink(a2);
        sink(yj);
        sink(a4);
        total += 2.0 * rogers_std(a1) - 2.0 * rogers_std(a2) - rogers_std(yj) - rogers_std(a4);
    }
    4.0 * total
}

/// phi in the x-form: the six-term sum of four Rogers terms each, evaluated
/// from the factored rational arguments. Symmetric in the three coordinates.
pub fn phi_x(p: &PantsShape, mode: EvalMode) -> Result<MeasureValue> {
    phi_x_instrumented(p, mode, &mut |_| {})
}

/// Same as [`phi_x`] but reports every Rogers argument to `sink`. Used by the
/// dilog-argument-domain checks; the sink is caller state, nothing global.
pub fn phi_x_instrumented(
    p: &PantsShape,
    mode: EvalMode,
    sink: &mut dyn FnMut(f64),
) -> Result<MeasureValue> {
    let x = admit3(p, mode)?;
    MeasureValue::new(phi_x_inner(x, sink))
}

fn eta_inner(x: f64, y: f64, sink: &mut dyn FnMut(f64)) -> f64 {
    let y2 = y * y;
    let shared = (x + y2) * (x * y2 + 1.0);
    let args = [
        (x + 1.0) * (x + 1.0) * y2 / shared,  //  +8  tanh^2(q/2)
        (1.0 - x) * (1.0 - x) * y2 / shared,  //  -8  sech^2(p/2)
        (1.0 - x) / (1.0 + y2),               // -16
        (x * y2 + 1.0) / (1.0 + y2),          // +16
        (x + y2) / (x * y2 + 1.0),            // -16  tanh^2(h/2)
        (1.0 - y2) / (1.0 + x),               // -16
        (x * y2 + 1.0) / (1.0 + x),           // +16
    ];
    for &a in &args {
        sink(a);
    }
    8.0 * rogers_std(args[0]) - 8.0 * rogers_std(args[1]) - 16.0 * rogers_std(args[2])
        + 16.0 * rogers_std(args[3])
        - 16.0 * rogers_std(args[4])
        - 16.0 * rogers_std(args[5])
        + 16.0 * rogers_std(args[6])
}

/// eta in the (x, y) form: the seven-term Rogers combination with
/// coefficients 8, -8, -16, +16, -16, -16, +16.
pub fn eta(s: &TorusPantsShape, mode: EvalMode) -> Result<MeasureValue> {
    eta_instrumented(s, mode, &mut |_| {})
}

/// Instrumented [`eta`]; see [`phi_x_instrumented`].
pub fn eta_instrumented(
    s: &TorusPantsShape,
    mode: EvalMode,
    sink: &mut dyn FnMut(f64),
) -> Result<MeasureValue> {
    let x = admit(s.x.get(), mode)?;
    let y = admit(s.y.get(), mode)?;
    MeasureValue::new(eta_inner(x, y, sink))
}

/// eta evaluated without the boundary-margin guard. Slope sums legitimately
/// reach waist coordinates far below 1e-9 (a long waist is a tiny y); the
/// formula itself is perfectly conditioned there and tends to 0.
pub(crate) fn eta_unguarded(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    eta_inner(x, y, &mut |_| {})
}

/// phi from boundary lengths through the orthogeodesic route: x_i from the
/// lengths, y_j = tanh^2(m_j/2) from `cosh_m`, then the printed four-term
/// bracket over the six ordered pairs i != j.
pub fn phi_y(l1: Length, l2: Length, l3: Length, mode: EvalMode) -> Result<MeasureValue> {
    phi_y_instrumented(l1, l2, l3, mode, &mut |_| {})
}

/// Instrumented [`phi_y`]; see [`phi_x_instrumented`].
pub fn phi_y_instrumented(
    l1: Length,
    l2: Length,
    l3: Length,
    mode: EvalMode,
    sink: &mut dyn FnMut(f64),
) -> Result<MeasureValue> {
    let ls = [l1, l2, l3];
    let mut x = [0.0; 3];
    for (slot, l) in x.iter_mut().zip(ls.iter()) {
        *slot = admit(length_to_x(*l)?.get(), mode)?;
    }
    let mut y = [0.0; 3];
    for (idx, slot) in y.iter_mut().enumerate() {
        let cm = crate::pants::cosh_m(idx + 1, ls[0], ls[1], ls[2])?;
        *slot = (cm - 1.0) / (cm + 1.0);
    }
    let mut total = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let xi2 = x[i] * x[i];
            let yj = y[j];
            let a1 = (1.0 - xi2) / (1.0 - xi2 * yj);
            let a2 = (1.0 - yj) / (1.0 - xi2 * yj);
            let a4 = (1.0 - yj) * (1.0 - yj) * xi2 / ((1.0 - xi2) * (1.0 - xi2) * yj);
            sink(a1);
            sink(a2);
            sink(yj);
            sink(a4);
            total += 2.0 * rogers_std(a1) - 2.0 * rogers_std(a2) - rogers_std(yj) - rogers_std(a4);
        }
    }
    MeasureValue::new(4.0 * total)
}

/// The diagonal lower bound `-24 t^3 log t + 24 t^3`, valid for t in (0, 1]:
/// phi(t, t, t) strictly exceeds it.
pub fn phi_diag_lower_bound(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0 && t <= 1.0) {
        return Err(Error::Domain {
            name: "diagonal coordinate",
            value: t,
            expected: "in the half-open interval (0, 1]",
        });
    }
    let t3 = t * t * t;
    Ok(-24.0 * t3 * t.ln() + 24.0 * t3)
}

/// Closed form of the partial derivative of phi with respect to its first
/// coordinate. Strictly positive on the open cube; symmetric in x2, x3.
///
/// The coefficient table (a_i, b_i, c_i, M) is used exactly as published,
/// including the large factored quotient M.
pub fn dphi_dx1(p: &PantsShape, mode: EvalMode) -> Result<f64> {
    let [x1, x2, x3] = admit3(p, mode)?;
    let big_x = x1 * x2 * x3;
    let one_p = 1.0 + big_x;

    let a1 = -16.0 * (x1 + x2 * x3) / ((1.0 - x1 * x1) * one_p);
    let a23 = -16.0 * x2 * x3 / one_p;
    let b1 = -8.0 * x2 * x3 * (1.0 + x1 * x1 + 2.0 * x1 * x2 * x3)
        / (x1 * (x1 + x2 * x3) * one_p);
    let b2 = 8.0 * x3 * (1.0 - x2 * x2) / ((x2 + x1 * x3) * one_p);
    let b3 = 8.0 * x2 * (1.0 - x3 * x3) / ((x3 + x1 * x2) * one_p);
    let c1 = (16.0 * x1 + 8.0 * x2 * x3 + 8.0 * x1 * x1 * x2 * x3) / ((1.0 - x1 * x1) * one_p);
    let c23 = 8.0 * x2 * x3 / one_p;
    let m = -(16.0 * x1.powi(4) * (x2 * x2 + x3 * x3 + x2 * x2 * x3 * x3)
        + 8.0 * x1.powi(3) * x2 * x3 * (4.0 + x1 * x1 + 3.0 * x2 * x2 + 3.0 * x3 * x3)
        + 8.0 * x2 * x2 * x3 * x3 * (4.0 * x1 * x1 - 2.0)
        - 8.0 * x1 * x2 * x3 * (1.0 + x2 * x2 + x3 * x3))
        / (x1 * (1.0 - x1 * x1) * (x1 + x2 * x3) * (x2 + x1 * x3) * (x3 + x1 * x2));

    Ok(a1 * x1.ln()
        + a23 * x2.ln()
        + a23 * x3.ln()
        + b1 * (1.0 - x1 * x1).ln()
        + b2 * (1.0 - x2 * x2).ln()
        + b3 * (1.0 - x3 * x3).ln()
        + c1 * (x1 + x2 * x3).ln()
        + c23 * (x2 + x1 * x3).ln()
        + c23 * (x3 + x1 * x2).ln()
        + m * one_p.ln())
}

/// Closed form of d(eta)/dx. Strictly positive on the open square.
pub fn deta_dx(s: &TorusPantsShape, mode: EvalMode) -> Result<f64> {
    let x = admit(s.x.get(), mode)?;
    let y = admit(s.y.get(), mode)?;
    let y2 = y * y;
    let a = (1.0 - x) * y2 * (1.0 + x * x + 2.0 * x * y2);
    let b = (1.0 - x) * x * (1.0 - y2 * y2);
    let c = 2.0 * x * y2 * (1.0 - x) * (x + y2);
    let d = (1.0 - x) * (1.0 - x) * (1.0 + x) * y2;
    let e = x * (1.0 + y2) * (x + y2);
    let m = 8.0 / ((1.0 - x) * x * (x + y2) * (1.0 + x * y2));
    Ok(m * (a * (1.0 / (1.0 - x)).ln()
        + b * (1.0 - y2).ln()
        + c * ((1.0 + x * y2) / y).ln()
        + d * (1.0 + x * y2).ln()
        + e * ((x + y2) / (x + x * x * y2)).ln()))
}

/// Closed form of d(eta)/dy. Strictly positive on the open square.
pub fn deta_dy(s: &TorusPantsShape, mode: EvalMode) -> Result<f64> {
    let x = admit(s.x.get(), mode)?;
    let y = admit(s.y.get(), mode)?;
    let y2 = y * y;
    let a = (1.0 - x * x) * y2 * (1.0 - y2);
    let b = x * y2 * (1.0 - y2) * (x + y2);
    let c = (1.0 + x) * y2 * (x + y2);
    let d = x * (1.0 - y2) * (1.0 + 2.0 * x * y2 + y2 * y2);
    let m = 16.0 / (y * (1.0 - y2) * (x + y2) * (1.0 + x * y2));
    Ok(m * (a * (1.0 - x).ln()
        + b * (1.0 / x).ln()
        + c * ((x + y2) / (y2 * (1.0 + x * y2))).ln()
        + d * ((1.0 + x * y2) / (1.0 - y2)).ln()))
}

/// Default central-difference step for coordinate magnitude `x`.
pub fn fd_default_step(x: f64) -> f64 {
    1e-6 * x.abs().max(1e-3)
}

/// Central-difference gradient of `f` over the open unit cube.
///
/// Each coordinate uses step `step` if given, else [`fd_default_step`]. The
/// stencil must stay inside (0, 1); otherwise a margin violation is returned.
pub fn fd_gradient<F>(f: F, point: &[f64], step: Option<f64>) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut grad = Vec::with_capacity(point.len());
    let mut probe = point.to_vec();
    for i in 0..point.len() {
        let h = step.unwrap_or_else(|| fd_default_step(point[i]));
        if point[i] - h <= 0.0 || point[i] + h >= 1.0 {
            return Err(Error::FdMargin {
                value: point[i],
                step: h,
            });
        }
        probe[i] = point[i] + h;
        let plus = f(&probe)?;
        probe[i] = point[i] - h;
        let minus = f(&probe)?;
        probe[i] = point[i];
        grad.push((plus - minus) / (2.0 * h));
    }
    Ok(grad)
}

/// phi as a plain function of three raw coordinates (strict mode); the shape
/// the finite-difference oracle wants.
pub fn phi_x_fn(v: &[f64]) -> Result<f64> {
    let p = PantsShape::from_values(v[0], v[1], v[2])?;
    Ok(phi_x(&p, EvalMode::Strict)?.get())
}

/// eta as a plain function of two raw coordinates (strict mode).
pub fn eta_fn(v: &[f64]) -> Result<f64> {
    let s = TorusPantsShape::from_values(v[0], v[1])?;
    Ok(eta(&s, EvalMode::Strict)?.get())
}

/// The three boundary lengths of a pants shape (`-2 log x_i`).
pub fn lengths_of(p: &PantsShape) -> [Length; 3] {
    [
        crate::pants::x_to_length(p.x1),
        crate::pants::x_to_length(p.x2),
        crate::pants::x_to_length(p.x3),
    ]
}
