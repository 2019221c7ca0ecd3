//! The pants-counting upper bound and budget accounting against the
//! unit-tangent-bundle volume 8 pi^2 (g - 1).
//!
//! The chain: every pants (embedded or not) of total boundary length L
//! carries measure strictly above `4 (L + 6) e^(-L/2)`, so at most
//! `2 pi^2 (g-1) e^(L/2) / (L + 6)` of them fit in the budget.

use crate::error::{Error, Result};
use crate::measures::MeasureValue;
use crate::numeric::CompensatedSum;
use crate::pants::Length;
use serde::Serialize;

/// Direct evaluation is safe below this; past it `e^(L/2)` alone overflows
/// and the bound is assembled in log space.
const LOG_SPACE_THRESHOLD: f64 = 1200.0;

/// The counting bound `2 pi^2 (genus - 1) e^(L/2) / (L + 6)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountingBound {
    pub genus: u32,
    pub total_length: f64,
    pub bound: f64,
}

/// Upper bound on the number of geodesic pants of total boundary length at
/// most L on a closed surface of the given genus.
pub fn np_upper_bound(genus: u32, total_length: Length) -> Result<CountingBound> {
    if genus < 2 {
        return Err(Error::Domain {
            name: "genus",
            value: genus as f64,
            expected: "an integer >= 2",
        });
    }
    let l = total_length.get();
    let coeff = 2.0 * std::f64::consts::PI.powi(2) * f64::from(genus - 1);
    let bound = if l <= LOG_SPACE_THRESHOLD {
        coeff * (l / 2.0).exp() / (l + 6.0)
    } else {
        // Log space keeps the intermediate finite a while longer; the bound
        // itself saturates to +inf once it genuinely exceeds f64 range.
        (coeff.ln() + l / 2.0 - (l + 6.0).ln()).exp()
    };
    Ok(CountingBound {
        genus,
        total_length: l,
        bound,
    })
}

/// The measure floor `4 (L + 6) e^(-L/2)`: strictly below
/// `phi(e^(-L/6), e^(-L/6), e^(-L/6))` for every L > 0.
pub fn min_measure_floor(total_length: Length) -> f64 {
    let l = total_length.get();
    4.0 * (l + 6.0) * (-l / 2.0).exp()
}

/// Result of totalling measures against the 8 pi^2 (g-1) budget.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BudgetReport {
    pub ok: bool,
    pub total: f64,
    pub budget: f64,
}

/// The unit-tangent-bundle volume 8 pi^2 (genus - 1).
pub fn budget(genus: u32) -> Result<f64> {
    if genus < 2 {
        return Err(Error::Domain {
            name: "genus",
            value: genus as f64,
            expected: "an integer >= 2",
        });
    }
    Ok(8.0 * std::f64::consts::PI.powi(2) * f64::from(genus - 1))
}

/// Compensated total of the given measures checked against the budget
/// (with a 1e-12 relative allowance for summation noise).
pub fn budget_check(measures: &[MeasureValue], genus: u32) -> Result<BudgetReport> {
    let budget = budget(genus)?;
    let total: f64 = measures
        .iter()
        .map(|m| m.get())
        .collect::<CompensatedSum>()
        .value();
    Ok(BudgetReport {
        ok: total <= budget * (1.0 + 1e-12),
        total,
        budget,
    })
}
