//! The dilogarithm Li2, Rogers' dilogarithm L, and the lasso function La on [0, 1].
//!
//! Rogers' function is the building block of every measure in this crate:
//!
//! ```text
//! L(x) = Li2(x) + (1/2) log(x) log(1-x),   L(0) = 0,  L(1) = pi^2/6.
//! ```
//!
//! Standard mode evaluates the raw series only on [0, 1/2] and reaches the
//! upper half of the interval through the reflection identity
//! `L(x) + L(1-x) = pi^2/6`; the naive series converges too slowly near 1.
//! Extended mode sums the series in double-double arithmetic *without*
//! argument reduction, which keeps it independent enough to serve as an
//! oracle for the standard path.

use crate::error::{Error, Result};
use crate::numeric::DoubleDouble;

/// pi^2 / 6, the value of both Li2 and L at 1.
pub const PI2_OVER_6: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Smallest absolute tolerance standard (native f64) mode will promise.
pub const STANDARD_FLOOR: f64 = 1e-15;
/// Smallest absolute tolerance extended (double-double) mode will promise.
pub const EXTENDED_FLOOR: f64 = 1e-30;
/// Default standard-mode target.
pub const STANDARD_ABS_TOL: f64 = 1e-13;

/// Below this, `log(x) * log(1-x)` is replaced by its limit value 0.
const LOG_PRODUCT_X_FLOOR: f64 = 1e-300;
/// `1 - x` below this likewise short-circuits the log product.
const LOG_PRODUCT_1MX_FLOOR: f64 = 1e-16;

/// A dilogarithm argument, pinned to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitArg(f64);

impl UnitArg {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::Domain {
                name: "unit argument",
                value,
                expected: "in [0, 1]",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Precision mode for the special-function evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Standard,
    Extended,
}

impl Mode {
    pub fn floor(self) -> f64 {
        match self {
            Mode::Standard => STANDARD_FLOOR,
            Mode::Extended => EXTENDED_FLOOR,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::Standard => "standard",
            Mode::Extended => "extended",
        }
    }
}

/// Target absolute error plus the mode expected to deliver it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    abs_tol: f64,
    mode: Mode,
}

impl Accuracy {
    pub fn new(abs_tol: f64, mode: Mode) -> Result<Self> {
        if !abs_tol.is_finite() || abs_tol <= 0.0 {
            return Err(Error::Domain {
                name: "abs_tol",
                value: abs_tol,
                expected: "a finite positive tolerance",
            });
        }
        if abs_tol < mode.floor() {
            return Err(Error::AccuracyUnattainable {
                requested: abs_tol,
                floor: mode.floor(),
                mode: mode.name(),
            });
        }
        Ok(Self { abs_tol, mode })
    }

    /// Native floating point targeting 1e-13 absolute error.
    pub fn standard() -> Self {
        Self {
            abs_tol: STANDARD_ABS_TOL,
            mode: Mode::Standard,
        }
    }

    /// Double-double oracle mode targeting 1e-28 absolute error.
    pub fn extended() -> Self {
        Self {
            abs_tol: 1e-28,
            mode: Mode::Extended,
        }
    }

    pub fn abs_tol(self) -> f64 {
        self.abs_tol
    }

    pub fn mode(self) -> Mode {
        self.mode
    }
}

/// Raw series sum_{k>=1} x^k / k^2 for x in [0, 1/2], Kahan-compensated.
fn li2_series_std(x: f64) -> f64 {
    debug_assert!((0.0..=0.5).contains(&x));
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut power = 1.0f64;
    for k in 1..200u32 {
        power *= x;
        let term = power / ((k as f64) * (k as f64));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term < 1e-18 * sum.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

/// Standard-mode Li2 on [0, 1]; reflection for x > 1/2.
pub(crate) fn li2_std(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return PI2_OVER_6;
    }
    if x > 0.5 {
        // Li2(x) + Li2(1-x) = pi^2/6 - log(x) log(1-x)
        let one_minus = 1.0 - x;
        let cross = if one_minus < LOG_PRODUCT_1MX_FLOOR {
            0.0
        } else {
            x.ln() * one_minus.ln()
        };
        return PI2_OVER_6 - cross - li2_series_std(one_minus);
    }
    li2_series_std(x)
}

/// Direct double-double series, no argument reduction; usable on [0, 1).
fn li2_series_dd(x: f64) -> DoubleDouble {
    let mut sum = DoubleDouble::from_f64(0.0);
    let mut power = DoubleDouble::from_f64(1.0);
    // 0.999^k needs ~80000 terms to fall below 1e-35.
    for k in 1..200_000u64 {
        power = power.mul_f64(x);
        let term = power.div_f64((k * k) as f64);
        sum = sum.add(term);
        if term.hi < 1e-35 * sum.hi.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

pub(crate) fn li2_extended(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return PI2_OVER_6;
    }
    li2_series_dd(x).to_f64()
}

/// Standard-mode Rogers L on [0, 1]; the workhorse for the measures.
pub(crate) fn rogers_std(x: f64) -> f64 {
    debug_assert!(
        (-1e-12..=1.0 + 1e-12).contains(&x),
        "rogers argument escaped [0,1]: {x}"
    );
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return PI2_OVER_6;
    }
    if x > 0.5 {
        return PI2_OVER_6 - rogers_std(1.0 - x);
    }
    let cross = if x < LOG_PRODUCT_X_FLOOR {
        0.0
    } else {
        // log1p keeps log(1-x) accurate for x near 0.
        x.ln() * (-x).ln_1p()
    };
    li2_series_std(x) + 0.5 * cross
}

/// Extended-mode Rogers L: dd series for Li2 plus the log cross term
/// assembled in double-double. No reflection, so it is route-independent
/// from the standard path.
pub(crate) fn rogers_extended(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return PI2_OVER_6;
    }
    let cross = if x < LOG_PRODUCT_X_FLOOR || 1.0 - x < LOG_PRODUCT_1MX_FLOOR {
        DoubleDouble::from_f64(0.0)
    } else {
        DoubleDouble::from_f64(x.ln()).mul(DoubleDouble::from_f64((-x).ln_1p()))
    };
    li2_series_dd(x).add(cross.mul_f64(0.5)).to_f64()
}

/// Dilogarithm Li2(x) = sum_{k>=1} x^k/k^2 on [0, 1].
pub fn li2(x: UnitArg, acc: Accuracy) -> f64 {
    match acc.mode {
        Mode::Standard => li2_std(x.get()),
        Mode::Extended => li2_extended(x.get()),
    }
}

/// Rogers' dilogarithm L(x) on [0, 1]; monotone increasing from 0 to pi^2/6.
pub fn rogers_l(x: UnitArg, acc: Accuracy) -> f64 {
    match acc.mode {
        Mode::Standard => rogers_std(x.get()),
        Mode::Extended => rogers_extended(x.get()),
    }
}

/// The lasso combination La(a, b) = L(b) + L((1-b)/(1-ab)) - L((1-a)/(1-ab)),
/// defined for a, b in the open interval (0, 1).
pub fn lasso(a: UnitArg, b: UnitArg, acc: Accuracy) -> Result<f64> {
    let (a, b) = (a.get(), b.get());
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::Domain {
            name: "lasso a",
            value: a,
            expected: "in the open interval (0, 1)",
        });
    }
    if b <= 0.0 || b >= 1.0 {
        return Err(Error::Domain {
            name: "lasso b",
            value: b,
            expected: "in the open interval (0, 1)",
        });
    }
    let eval = |t: f64| match acc.mode {
        Mode::Standard => rogers_std(t),
        Mode::Extended => rogers_extended(t),
    };
    // ab < 1 on the open square, so the shared denominator never vanishes.
    let den = 1.0 - a * b;
    Ok(eval(b) + eval((1.0 - b) / den) - eval((1.0 - a) / den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: f64) -> UnitArg {
        UnitArg::new(v).unwrap()
    }

    #[test]
    fn li2_endpoints() {
        let acc = Accuracy::standard();
        assert_eq!(li2(u(0.0), acc), 0.0);
        assert!((li2(u(1.0), acc) - PI2_OVER_6).abs() < 1e-15);
        assert!((PI2_OVER_6 - 1.644_934_066_848_226_4).abs() < 1e-15);
    }

    #[test]
    fn li2_half_matches_extended_series() {
        // >= 50-term series in double-double; mpmath gives
        // 0.5822405264650125059026563 to 25 digits.
        let frozen = 0.582_240_526_465_012_5;
        assert!((li2_extended(0.5) - frozen).abs() < 1e-16);
        assert!((li2_std(0.5) - frozen).abs() < Accuracy::standard().abs_tol());
    }

    #[test]
    fn rogers_endpoints_and_half() {
        let acc = Accuracy::standard();
        assert_eq!(rogers_l(u(0.0), acc), 0.0);
        assert!((rogers_l(u(1.0), acc) - PI2_OVER_6).abs() < 1e-15);
        // L(1/2) = pi^2/12 by reflection symmetry.
        assert!((rogers_l(u(0.5), acc) - PI2_OVER_6 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rogers_standard_vs_extended_oracle() {
        // Module invariant: standard mode within 1e-12 of the independent
        // extended-precision series on [0.001, 0.999].
        let mut worst: f64 = 0.0;
        for i in 0..=499 {
            let x = 0.001 + 0.998 * (i as f64) / 499.0;
            worst = worst.max((rogers_std(x) - rogers_extended(x)).abs());
        }
        assert!(worst < 1e-12, "worst |std - extended| = {worst:e}");
    }

    #[test]
    fn rogers_reflection_monotonicity_bounds() {
        let mut prev = -1.0;
        for i in 0..10_000 {
            let x = (i as f64 + 0.5) / 10_000.0;
            let l = rogers_std(x);
            let refl = (l + rogers_std(1.0 - x) - PI2_OVER_6).abs();
            assert!(refl <= 10.0 * STANDARD_ABS_TOL, "reflection at {x}: {refl:e}");
            assert!(l > prev, "not strictly increasing at {x}");
            assert!((0.0..=PI2_OVER_6 + 1e-15).contains(&l));
            prev = l;
        }
    }

    #[test]
    fn lasso_cancellations() {
        let acc = Accuracy::standard();
        // La(a, a) = L(a): middle and last terms cancel.
        for a in [0.1, 0.42, 0.9] {
            let la = lasso(u(a), u(a), acc).unwrap();
            assert!((la - rogers_std(a)).abs() < 1e-14);
        }
        // b -> 1-: La -> L(1) + L(0) - L(1) = 0.
        let near_one = 1.0 - 1e-12;
        let la = lasso(u(0.3), u(near_one), acc).unwrap();
        assert!(la.abs() < 1e-9, "La(a, 1-) = {la:e}");
        // Frozen from the extended-precision oracle: La(0.3, 0.7).
        let la = lasso(u(0.3), u(0.7), acc).unwrap();
        assert!((la - 0.362_716_315_581_479_49).abs() < 1e-14);
    }

    #[test]
    fn lasso_rejects_closed_endpoints() {
        let acc = Accuracy::standard();
        assert!(lasso(u(0.0), u(0.5), acc).is_err());
        assert!(lasso(u(0.5), u(1.0), acc).is_err());
    }

    #[test]
    fn accuracy_floors() {
        assert!(Accuracy::new(1e-16, Mode::Standard).is_err());
        assert!(Accuracy::new(1e-31, Mode::Extended).is_err());
        assert!(Accuracy::new(1e-14, Mode::Standard).is_ok());
        assert!(Accuracy::new(-1.0, Mode::Standard).is_err());
    }

    #[test]
    fn unit_arg_domain() {
        assert!(UnitArg::new(-0.1).is_err());
        assert!(UnitArg::new(1.1).is_err());
        assert!(UnitArg::new(f64::NAN).is_err());
        assert!(UnitArg::new(0.0).is_ok());
        assert!(UnitArg::new(1.0).is_ok());
    }
}
