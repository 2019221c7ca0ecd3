//! Simple-closed-curve (slope) enumeration on a one-holed torus through
//! trace coordinates, and the partial sums built on top of it.
//!
//! A marking assigns traces (tx, ty, tz) to three simple closed curves of
//! pairwise intersection one; the boundary commutator trace
//! `tx^2 + ty^2 + tz^2 - tx ty tz - 2` is a constant of the torus (-2 for a
//! cusp, -2 cosh(l_beta/2) for geodesic boundary). Slopes are the vertices of
//! the Farey tessellation; walking the tessellation away from the seed
//! triangle visits every slope exactly once, and each step is the vertex
//! relation `z' = x y - z`.
//!
//! The walk covers the whole tessellation: the seed triangle spawns three
//! subtrees (one per edge), including the one through the (1,-1) vertex, so
//! negative slopes are enumerated alongside positive ones. Nothing less
//! closes the McShane identity: partial sums of 1/(1+e^l) converge to 1/2
//! only over the full slope set, and re-rooting at a neighboring triangle is
//! a set identity only for the full tessellation.

use crate::error::{Error, Result};
use crate::measures::eta_unguarded;
use crate::numeric::CompensatedSum;
use crate::pants::{length_to_x, Length};
use serde::Serialize;

/// Hard ceiling on traces the walker will expand past (f64 overflow guard;
/// traces grow doubly exponentially down the tree).
pub const TRACE_OVERFLOW_GUARD: f64 = 1e300;

/// Tolerance on the boundary-trace residual when validating a triple.
const ADMISSIBLE_TOL: f64 = 1e-9;

/// Traces of a marking of a hyperbolic one-holed torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTriple {
    tx: f64,
    ty: f64,
    tz: f64,
}

/// The boundary commutator trace of raw trace values.
fn fricke_of(tx: f64, ty: f64, tz: f64) -> f64 {
    tx * tx + ty * ty + tz * tz - tx * ty * tz - 2.0
}

impl TraceTriple {
    /// Validates tx, ty, tz > 2 and boundary trace <= -2 (up to 1e-9).
    pub fn new(tx: f64, ty: f64, tz: f64) -> Result<Self> {
        for (v, name) in [(tx, "tx"), (ty, "ty"), (tz, "tz")] {
            if !(v.is_finite() && v > 2.0) {
                return Err(Error::Domain {
                    name,
                    value: v,
                    expected: "a finite trace > 2",
                });
            }
        }
        let k = fricke_of(tx, ty, tz);
        if k > -2.0 + ADMISSIBLE_TOL {
            return Err(Error::Domain {
                name: "boundary trace",
                value: k,
                expected: "at most -2 (hyperbolic one-holed torus)",
            });
        }
        Ok(Self { tx, ty, tz })
    }

    pub fn tx(&self) -> f64 {
        self.tx
    }

    pub fn ty(&self) -> f64 {
        self.ty
    }

    pub fn tz(&self) -> f64 {
        self.tz
    }

    /// True when the boundary trace is -2 (a cusp) within 1e-9.
    pub fn is_cusped(&self) -> bool {
        (fricke_boundary_trace(self) + 2.0).abs() <= ADMISSIBLE_TOL
    }

    /// The neighboring marking across the (tx, ty) edge: replaces tz by
    /// `tx ty - tz`. Re-rooting the enumeration here must not change any
    /// slope sum.
    pub fn markov_neighbor(&self) -> TraceTriple {
        TraceTriple::new(self.tx, self.ty, self.tx * self.ty - self.tz)
            .expect("a Markov move preserves admissibility")
    }
}

/// `tx^2 + ty^2 + tz^2 - tx ty tz - 2`; equals -2 cosh(l_beta/2) in
/// geodesic-boundary mode and exactly -2 for a cusp.
pub fn fricke_boundary_trace(t: &TraceTriple) -> f64 {
    fricke_of(t.tx, t.ty, t.tz)
}

/// Relative residual of the trace relation against `target`, scaled by the
/// largest intermediate so it stays meaningful for astronomically large
/// traces (where the raw cancellation noise grows with the squares).
pub fn fricke_residual_rel(tx: f64, ty: f64, tz: f64, target: f64) -> f64 {
    let scale = 1.0f64
        .max(tx * tx)
        .max(ty * ty)
        .max(tz * tz)
        .max((tx * ty * tz).abs());
    (fricke_of(tx, ty, tz) - target).abs() / scale
}

/// Which root of the symmetric-seed quadratic to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Larger root.
    Plus,
    /// Smaller root.
    Minus,
}

/// Boundary data of the torus: a cusp or a geodesic boundary length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TorusBoundary {
    Cusp,
    Geodesic(Length),
}

impl TorusBoundary {
    /// The target boundary commutator trace.
    fn target_trace(&self) -> f64 {
        match self {
            TorusBoundary::Cusp => -2.0,
            TorusBoundary::Geodesic(l) => -2.0 * (l.get() / 2.0).cosh(),
        }
    }
}

/// Builds a marking with the symmetric seed tx = ty = 2 cosh(l_alpha/2) and
/// tz solving `tz^2 - tx ty tz + (tx^2 + ty^2 - 2 - k) = 0`, where k is the
/// boundary commutator trace. `branch` picks the root; the two roots are
/// neighboring markings of the same torus, so every slope sum is independent
/// of the choice.
pub fn torus_from_lengths(
    boundary: TorusBoundary,
    l_alpha: Length,
    branch: Branch,
) -> Result<TraceTriple> {
    let t = 2.0 * (l_alpha.get() / 2.0).cosh();
    let k = boundary.target_trace();
    let c = t * t + t * t - 2.0 - k;
    let disc = (t * t) * (t * t) - 4.0 * c;
    if disc < 0.0 {
        return Err(Error::InadmissibleShape { discriminant: disc });
    }
    let r = disc.sqrt();
    let tz = match branch {
        Branch::Plus => (t * t + r) / 2.0,
        Branch::Minus => (t * t - r) / 2.0,
    };
    TraceTriple::new(t, t, tz)
}

/// An unoriented isotopy class of essential simple closed curve, in the
/// canonical form `q >= 1`, or `(1, 0)` for the infinity slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    fn canonical(p: i64, q: i64) -> Self {
        if q < 0 {
            Slope { p: -p, q: -q }
        } else if q == 0 {
            Slope { p: p.abs(), q: 0 }
        } else {
            Slope { p, q }
        }
    }

    /// The Stern-Brocot height max(|p|, |q|); the quantity the
    /// max-denominator cutoff bounds. Plain q would never terminate the
    /// integer-slope branches, whose q is always 1.
    pub fn denominator(&self) -> i64 {
        self.p.abs().max(self.q.abs())
    }
}

/// One enumerated slope with its trace and geodesic length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRecord {
    pub slope: Slope,
    pub trace: f64,
    pub length: Length,
}

/// Wire format for slope tables (one JSON object per line).
#[derive(Debug, Clone, Serialize)]
pub struct SlopeLine {
    pub p: i64,
    pub q: i64,
    pub trace: f64,
    pub length: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

impl SlopeRecord {
    fn from_trace(p: i64, q: i64, trace: f64) -> Self {
        let half = trace / 2.0;
        // acosh is overflow-safe in std for the trace range the guard admits.
        let length = Length::new(2.0 * half.acosh()).expect("trace > 2 gives positive length");
        SlopeRecord {
            slope: Slope::canonical(p, q),
            trace,
            length,
        }
    }

    /// Waist x-coordinate `exp(-l/2)`; 0.0 when the length underflows it.
    pub fn waist_coordinate(&self) -> f64 {
        (-self.length.get() / 2.0).exp()
    }

    pub fn to_line(&self, eta: Option<f64>) -> SlopeLine {
        SlopeLine {
            p: self.slope.p,
            q: self.slope.q,
            trace: self.trace,
            length: self.length.get(),
            eta,
        }
    }
}

/// Enumeration cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cutoff {
    /// Keep slopes with Stern-Brocot height max(|p|, |q|) at most this.
    MaxDenominator(u32),
    /// Keep slopes of trace at most this. Subtrees are pruned as soon as
    /// their traces are monotone and past the bound.
    MaxTrace(f64),
}

impl Cutoff {
    fn validate(&self) -> Result<()> {
        match *self {
            Cutoff::MaxDenominator(n) => {
                if n == 0 {
                    return Err(Error::InvalidCutoff("max denominator must be >= 1".into()));
                }
            }
            Cutoff::MaxTrace(t) => {
                if !t.is_finite() || t <= 0.0 {
                    return Err(Error::InvalidCutoff(format!(
                        "max trace must be a positive finite real, got {t}"
                    )));
                }
                if t > TRACE_OVERFLOW_GUARD {
                    return Err(Error::InvalidCutoff(format!(
                        "max trace {t:e} exceeds the overflow guard {TRACE_OVERFLOW_GUARD:e}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A tessellation vertex as seen by the walker; the originating triangle is
/// `(edge_traces.0, edge_traces.1, trace)` and `opposite_trace` is the vertex
/// the step moved away from.
#[derive(Debug, Clone, Copy)]
pub struct TreeNode {
    pub p: i64,
    pub q: i64,
    pub trace: f64,
    pub edge_traces: (f64, f64),
    pub opposite_trace: f64,
    pub depth: u32,
}

/// Visitor verdict for a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    /// Recurse into both child edges.
    Descend,
    /// Skip this node's subtree.
    Prune,
    /// Abandon the whole walk.
    Stop,
}

struct Edge {
    // Vertex vectors in Z^2 (unimodular pair); mediant = component sum.
    a: (i64, i64),
    ta: f64,
    b: (i64, i64),
    tb: f64,
    opposite: f64,
    depth: u32,
}

/// Depth-first walk over the tessellation away from the seed triangle
/// (the three seed vertices themselves are not visited). Termination is the
/// visitor's responsibility via `Prune`/`Stop`; nodes past the overflow
/// guard are pruned unconditionally.
pub fn visit_tree<F: FnMut(&TreeNode) -> Visit>(seed: &TraceTriple, mut visitor: F) {
    // Seed triangle: (1,0) carries tx, (0,1) ty, (1,1) tz. The third root
    // edge runs through (0,-1) so its mediant is the (1,-1) vertex.
    let mut stack: Vec<Edge> = vec![
        Edge {
            a: (1, 0),
            ta: seed.tx,
            b: (1, 1),
            tb: seed.tz,
            opposite: seed.ty,
            depth: 0,
        },
        Edge {
            a: (1, 1),
            ta: seed.tz,
            b: (0, 1),
            tb: seed.ty,
            opposite: seed.tx,
            depth: 0,
        },
        Edge {
            a: (1, 0),
            ta: seed.tx,
            b: (0, -1),
            tb: seed.ty,
            opposite: seed.tz,
            depth: 0,
        },
    ];
    while let Some(e) = stack.pop() {
        let p = e.a.0 + e.b.0;
        let q = e.a.1 + e.b.1;
        let trace = e.ta * e.tb - e.opposite;
        if !trace.is_finite() || trace > TRACE_OVERFLOW_GUARD {
            continue;
        }
        let node = TreeNode {
            p,
            q,
            trace,
            edge_traces: (e.ta, e.tb),
            opposite_trace: e.opposite,
            depth: e.depth + 1,
        };
        match visitor(&node) {
            Visit::Stop => return,
            Visit::Prune => continue,
            Visit::Descend => {
                stack.push(Edge {
                    a: e.a,
                    ta: e.ta,
                    b: (p, q),
                    tb: trace,
                    opposite: e.tb,
                    depth: e.depth + 1,
                });
                stack.push(Edge {
                    a: (p, q),
                    ta: trace,
                    b: e.b,
                    tb: e.tb,
                    opposite: e.ta,
                    depth: e.depth + 1,
                });
            }
        }
    }
}

/// Enumerates every slope within the cutoff, each exactly once, sorted by
/// increasing trace (ties broken by slope). Seeds (1,0), (0,1), (1,1) carry
/// tx, ty, tz.
pub fn enumerate_slopes(seed: &TraceTriple, cutoff: Cutoff) -> Result<Vec<SlopeRecord>> {
    cutoff.validate()?;
    let mut out: Vec<SlopeRecord> = Vec::new();
    let keep = |trace: f64, p: i64, q: i64| match cutoff {
        Cutoff::MaxDenominator(n) => Slope::canonical(p, q).denominator() <= n as i64,
        Cutoff::MaxTrace(t) => trace <= t,
    };
    for (p, q, t) in [(1, 0, seed.tx), (0, 1, seed.ty), (1, 1, seed.tz)] {
        if keep(t, p, q) {
            out.push(SlopeRecord::from_trace(p, q, t));
        }
    }
    visit_tree(seed, |node| {
        match cutoff {
            Cutoff::MaxDenominator(n) => {
                // Heights are nondecreasing along every path, so the whole
                // subtree is out as soon as the mediant is.
                if Slope::canonical(node.p, node.q).denominator() > n as i64 {
                    return Visit::Prune;
                }
                out.push(SlopeRecord::from_trace(node.p, node.q, node.trace));
                Visit::Descend
            }
            Cutoff::MaxTrace(t) => {
                if node.trace <= t {
                    out.push(SlopeRecord::from_trace(node.p, node.q, node.trace));
                    Visit::Descend
                } else if node.trace >= node.edge_traces.0 && node.trace >= node.edge_traces.1 {
                    // Monotone regime: every deeper trace in this subtree is
                    // larger still.
                    Visit::Prune
                } else {
                    // Still descending toward the reduced triangle; smaller
                    // traces can appear deeper.
                    Visit::Descend
                }
            }
        }
    });
    out.sort_by(|a, b| {
        a.trace
            .total_cmp(&b.trace)
            .then(a.slope.q.cmp(&b.slope.q))
            .then(a.slope.p.cmp(&b.slope.p))
    });
    Ok(out)
}

/// A compensated partial sum over enumerated slopes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PartialSum {
    pub cutoff: Cutoff,
    pub value: f64,
    pub term_count: usize,
    pub last_term: f64,
}

fn partial_sum_over<F: FnMut(&SlopeRecord) -> f64>(
    records: &[SlopeRecord],
    cutoff: Cutoff,
    mut term: F,
) -> PartialSum {
    let mut sum = CompensatedSum::new();
    let mut last = 0.0;
    for r in records {
        last = term(r);
        sum.add(last);
    }
    PartialSum {
        cutoff,
        value: sum.value(),
        term_count: records.len(),
        last_term: last,
    }
}

/// The eta summand contributed by one slope: `eta(x_boundary, waist)`.
/// Evaluated without the boundary-margin guard, since deep slopes carry
/// legitimately tiny waist coordinates (the term tends to 0 with them).
pub fn eta_term(x_boundary: f64, record: &SlopeRecord) -> f64 {
    eta_unguarded(x_boundary, record.waist_coordinate())
}

/// Sum of eta over the improperly embedded pants cut along each enumerated
/// slope: the summand for slope alpha is `eta(e^(-l_beta/2), e^(-l_alpha/2))`.
/// Terms are accumulated in increasing trace order with compensation.
pub fn eta_partial_sum(seed: &TraceTriple, l_beta: Length, cutoff: Cutoff) -> Result<PartialSum> {
    let want = -2.0 * (l_beta.get() / 2.0).cosh();
    let got = fricke_boundary_trace(seed);
    if (got - want).abs() > 1e-6 * got.abs().max(1.0) {
        return Err(Error::Domain {
            name: "boundary trace",
            value: got,
            expected: "consistent with the stated boundary length",
        });
    }
    let x = length_to_x(l_beta)?.get();
    let records = enumerate_slopes(seed, cutoff)?;
    Ok(partial_sum_over(&records, cutoff, |r| eta_term(x, r)))
}

/// McShane partial sum `sum 1/(1 + e^l)` over enumerated slopes of a cusped
/// torus; strictly increasing in the cutoff and bounded above by 1/2.
pub fn mcshane_partial_sum(seed: &TraceTriple, cutoff: Cutoff) -> Result<PartialSum> {
    if !seed.is_cusped() {
        return Err(Error::NotCusped {
            boundary_trace: fricke_boundary_trace(seed),
        });
    }
    let records = enumerate_slopes(seed, cutoff)?;
    Ok(partial_sum_over(&records, cutoff, |r| {
        1.0 / (1.0 + r.length.get().exp())
    }))
}
