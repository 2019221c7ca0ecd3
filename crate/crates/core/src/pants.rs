//! Length/x-coordinate conversions and the auxiliary geometry of pants and
//! one-holed tori.
//!
//! Throughout the crate a boundary geodesic of length `l` is tracked by its
//! x-coordinate `x = exp(-l/2)`, which lives in (0, 1) and decreases as the
//! boundary lengthens. All rational expressions below are evaluated in the
//! factored form in which they are derived; the factors are positive on the
//! open cube, so nothing here cancels catastrophically.

use crate::error::{Error, Result};
use crate::special::UnitArg;

/// Hyperbolic lengths are strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Length(f64);

impl Length {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain {
                name: "length",
                value,
                expected: "a finite positive real",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// How far inside (0, 1) a coordinate must sit before the measures and their
/// derivatives are evaluated (log singularities live at both endpoints).
/// Limit mode clamps to this margin instead of rejecting.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// A boundary-length coordinate `x = exp(-l/2)` in the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct XCoord(f64);

impl XCoord {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain {
                name: "x-coordinate",
                value,
                expected: "in the open interval (0, 1)",
            })
        }
    }

    /// Limit-mode constructor: accepts the closed interval [0, 1] and clamps
    /// into `[BOUNDARY_MARGIN, 1 - BOUNDARY_MARGIN]`. The closed-cube
    /// statements are approached through this clamp; results computed from a
    /// clamped coordinate carry an O(1e-9)-level approximation.
    pub fn clamped(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain {
                name: "x-coordinate (limit mode)",
                value,
                expected: "in the closed interval [0, 1]",
            });
        }
        Ok(Self(value.clamp(BOUNDARY_MARGIN, 1.0 - BOUNDARY_MARGIN)))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// x = exp(-l/2); strictly decreasing in l.
pub fn length_to_x(l: Length) -> Result<XCoord> {
    let x = (-l.get() / 2.0).exp();
    // Underflows to 0 for l beyond ~1490.
    XCoord::new(x)
}

/// l = -2 log x, the inverse of [`length_to_x`].
pub fn x_to_length(x: XCoord) -> Length {
    Length(-2.0 * x.get().ln())
}

/// Unordered triple of boundary coordinates of an embedded pair of pants.
/// Symmetric operations must not depend on the ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsShape {
    pub x1: XCoord,
    pub x2: XCoord,
    pub x3: XCoord,
}

impl PantsShape {
    pub fn new(x1: XCoord, x2: XCoord, x3: XCoord) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn from_values(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        Ok(Self::new(XCoord::new(x1)?, XCoord::new(x2)?, XCoord::new(x3)?))
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x1.get(), self.x2.get(), self.x3.get()]
    }
}

/// (boundary, waist) coordinates of the improperly embedded pants obtained by
/// cutting a one-holed torus along an interior simple closed geodesic.
/// `x` tracks the torus boundary, `y` the waist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPantsShape {
    pub x: XCoord,
    pub y: XCoord,
}

impl TorusPantsShape {
    pub fn new(x: XCoord, y: XCoord) -> Self {
        Self { x, y }
    }

    pub fn from_values(x: f64, y: f64) -> Result<Self> {
        Ok(Self::new(XCoord::new(x)?, XCoord::new(y)?))
    }
}

fn boundary_index(i: usize) -> Result<usize> {
    if (1..=3).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::Domain {
            name: "boundary index",
            value: i as f64,
            expected: "one of 1, 2, 3",
        })
    }
}

/// cosh of the shortest arc between the two boundaries other than `i`
/// (1-based), from the hexagon trigonometry of the pants:
///
/// ```text
/// cosh(m_i) = (cosh(l_i/2) + cosh(l_j/2) cosh(l_k/2)) / (sinh(l_j/2) sinh(l_k/2))
/// ```
pub fn cosh_m(i: usize, l1: Length, l2: Length, l3: Length) -> Result<f64> {
    let i = boundary_index(i)?;
    let half = [l1.get() / 2.0, l2.get() / 2.0, l3.get() / 2.0];
    let mut others = (0..3).filter(|&t| t != i);
    let j = others.next().unwrap();
    let k = others.next().unwrap();
    Ok((half[i].cosh() + half[j].cosh() * half[k].cosh()) / (half[j].sinh() * half[k].sinh()))
}

/// The quantity `y_j = tanh^2(m_j/2)` of a pants, via its closed rational form
///
/// ```text
/// y_j = (x_j x_k + x_i)(x_j x_i + x_k) / ((x_i x_k + x_j)(1 + x_1 x_2 x_3)).
/// ```
///
/// `j` is 1-based. Agrees with the `cosh_m` route through
/// `y = (cosh m - 1)/(cosh m + 1)`.
pub fn y_coord(j: usize, p: &PantsShape) -> Result<UnitArg> {
    let j = boundary_index(j)?;
    let x = p.coords();
    let mut others = (0..3).filter(|&t| t != j);
    let i = others.next().unwrap();
    let k = others.next().unwrap();
    let num = (x[j] * x[k] + x[i]) * (x[j] * x[i] + x[k]);
    let den = (x[i] * x[k] + x[j]) * (1.0 + x[0] * x[1] * x[2]);
    UnitArg::new(num / den)
}

/// `tanh^2(q_alpha / 2)` for the shortest simple orthogeodesic from the waist
/// to itself: `(x+1)^2 y^2 / ((x + y^2)(x y^2 + 1))`, in (0, 1].
pub fn torus_tanh2_q(s: &TorusPantsShape) -> UnitArg {
    let (x, y) = (s.x.get(), s.y.get());
    let y2 = y * y;
    UnitArg::new((x + 1.0) * (x + 1.0) * y2 / ((x + y2) * (x * y2 + 1.0)))
        .expect("tanh^2(q/2) stays in (0, 1] on the open square")
}

/// `tanh^2(h_alpha / 2)` for the shortest simple orthogeodesic from the torus
/// boundary to itself: `(x + y^2) / (x y^2 + 1)`, in (0, 1).
pub fn torus_tanh2_h(s: &TorusPantsShape) -> UnitArg {
    let (x, y) = (s.x.get(), s.y.get());
    let y2 = y * y;
    UnitArg::new((x + y2) / (x * y2 + 1.0)).expect("tanh^2(h/2) stays in (0, 1)")
}

/// `sech^2(p_alpha / 2)` for the pair of shortest simple orthogeodesics from
/// waist to boundary: `(1-x)^2 y^2 / ((x + y^2)(x y^2 + 1))`, in [0, 1).
pub fn torus_sech2_p(s: &TorusPantsShape) -> UnitArg {
    let (x, y) = (s.x.get(), s.y.get());
    let y2 = y * y;
    UnitArg::new((1.0 - x) * (1.0 - x) * y2 / ((x + y2) * (x * y2 + 1.0)))
        .expect("sech^2(p/2) stays in [0, 1)")
}
