//! Executable verification suites for the monotonicity and convexity claims.
//!
//! Every suite sweeps a grid (or seeded random sample), evaluates one margin
//! per named sub-check per point, and reports the worst margin with a
//! replayable witness for each failure. Margins are uniformly oriented as
//! `lhs - rhs`, positive = pass.
//!
//! Floating-point honesty: strict mathematical inequalities are asserted as
//! `margin > 1e-14`; non-negativity of the printed proof expressions as
//! `margin >= -1e-14`; and inequalities between two full measure evaluations
//! as `margin >= -1e-12`, since each side already carries ~1e-13 of
//! evaluation noise and exact-equality points (x = y = z diagonals) sit in
//! the sweep.

use crate::error::{Error, Result};
use crate::measures::{
    deta_dx, deta_dy, dphi_dx1, eta, eta_fn, phi_diag_lower_bound, phi_x, phi_x_fn, EvalMode,
};
use crate::pants::{PantsShape, TorusPantsShape, BOUNDARY_MARGIN};
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Strict inequalities must clear this.
pub const STRICT_FLOOR: f64 = 1e-14;
/// Non-negative proof expressions (A, B, h0, h1, h2) may dip to this.
pub const EXPR_FLOOR: f64 = -1e-14;
/// Differences of two measure evaluations may dip to this.
pub const MEASURE_FLOOR: f64 = -1e-12;
/// Forward-difference step for the grid monotonicity checks.
pub const FORWARD_STEP: f64 = 1e-3;
/// At most this many failures are materialized per sub-check.
const FAILURE_CAP: usize = 32;

/// Point-generation strategy for a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    Uniform,
    Random { seed: u64 },
}

/// An axis-uniform sweep specification: `count` points per axis on
/// [min, max], either on the regular lattice or sampled uniformly at random.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub sampling: Sampling,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize, sampling: Sampling) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min <= 0.0 || max >= 1.0 || min >= max {
            return Err(Error::InvalidGrid(format!(
                "need 0 < min < max < 1, got [{min}, {max}]"
            )));
        }
        if min < BOUNDARY_MARGIN || max > 1.0 - BOUNDARY_MARGIN {
            return Err(Error::InvalidGrid(format!(
                "grid bounds must respect the evaluation margin {BOUNDARY_MARGIN:e}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("count must be >= 2, got {count}")));
        }
        Ok(Self {
            min,
            max,
            count,
            sampling,
        })
    }

    /// Default sweep for three-coordinate suites: 64 points per axis.
    pub fn default_3d() -> Self {
        Self::new(0.01, 0.99, 64, Sampling::Uniform).unwrap()
    }

    /// Default sweep for two-coordinate suites: 256 points per axis.
    pub fn default_2d() -> Self {
        Self::new(0.01, 0.99, 256, Sampling::Uniform).unwrap()
    }

    /// Default sweep for one-coordinate suites.
    pub fn default_1d() -> Self {
        Self::new(0.01, 0.99, 1024, Sampling::Uniform).unwrap()
    }

    fn axis(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| self.min + (self.max - self.min) * (i as f64) / ((n - 1) as f64))
            .collect()
    }

    /// `count^dims` points; lattice order for Uniform, ChaCha-seeded for
    /// Random (reproducible bit-for-bit for a fixed seed).
    fn points(&self, dims: usize) -> Vec<Vec<f64>> {
        match self.sampling {
            Sampling::Uniform => {
                let axis = self.axis();
                let total = axis.len().pow(dims as u32);
                let mut out = Vec::with_capacity(total);
                let mut idx = vec![0usize; dims];
                for _ in 0..total {
                    out.push(idx.iter().map(|&i| axis[i]).collect());
                    for d in (0..dims).rev() {
                        idx[d] += 1;
                        if idx[d] < axis.len() {
                            break;
                        }
                        idx[d] = 0;
                    }
                }
                out
            }
            Sampling::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let dist = Uniform::new_inclusive(self.min, self.max)
                    .expect("validated grid bounds are a nonempty interval");
                let total = self.count.pow(dims as u32);
                (0..total)
                    .map(|_| (0..dims).map(|_| dist.sample(&mut rng)).collect())
                    .collect()
            }
        }
    }
}

/// A failed point with its replayable witness.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub check: String,
}

/// Aggregate of one named sub-check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub points: usize,
    pub worst_margin: f64,
    pub floor: f64,
    pub strict: bool,
    pub pass: bool,
}

/// Structured result of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub points: usize,
    pub worst_margin: f64,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    pub checks: Vec<CheckSummary>,
    /// True when some coordinate was evaluated through the limit-mode clamp.
    pub limit_mode: bool,
    pub grid: GridSpec,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        crate::jsonfmt::to_string_g17(self)
    }
}

fn build_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("PANTS_NUM_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
    {
        builder = builder.num_threads(n);
    }
    builder.build().expect("failed to build worker pool")
}

struct CheckRun {
    summary: CheckSummary,
    failures: Vec<Failure>,
    failure_count: usize,
}

/// Evaluates `f: point -> (lhs, rhs)` over `points` in parallel and folds the
/// margins sequentially (deterministic regardless of worker count).
fn run_check<F>(
    pool: &rayon::ThreadPool,
    name: &'static str,
    points: &[Vec<f64>],
    floor: f64,
    strict: bool,
    f: F,
) -> CheckRun
where
    F: Fn(&[f64]) -> Result<(f64, f64)> + Sync,
{
    let sides: Vec<Result<(f64, f64)>> =
        pool.install(|| points.par_iter().map(|p| f(p)).collect());
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    let mut failure_count = 0usize;
    for (p, s) in points.iter().zip(sides.into_iter()) {
        let (lhs, rhs, margin) = match s {
            Ok((lhs, rhs)) => (lhs, rhs, lhs - rhs),
            Err(_) => (f64::NAN, f64::NAN, f64::NEG_INFINITY),
        };
        if margin < worst {
            worst = margin;
        }
        let ok = if strict { margin > floor } else { margin >= floor };
        if !ok {
            failure_count += 1;
            if failures.len() < FAILURE_CAP {
                failures.push(Failure {
                    point: p.clone(),
                    lhs,
                    rhs,
                    margin,
                    check: name.to_string(),
                });
            }
        }
    }
    CheckRun {
        summary: CheckSummary {
            check: name.to_string(),
            points: points.len(),
            worst_margin: worst,
            floor,
            strict,
            pass: failure_count == 0,
        },
        failures,
        failure_count,
    }
}

fn assemble(suite: &str, grid: &GridSpec, limit_mode: bool, runs: Vec<CheckRun>) -> VerificationReport {
    let mut failures = Vec::new();
    let mut checks = Vec::new();
    let mut points = 0usize;
    let mut worst = f64::INFINITY;
    let mut pass = true;
    let mut failure_count = 0usize;
    for mut r in runs {
        points += r.summary.points;
        worst = worst.min(r.summary.worst_margin);
        pass &= r.summary.pass;
        failure_count += r.failure_count;
        checks.push(r.summary.clone());
        // Stored witnesses are capped per check; the count is not.
        failures.append(&mut r.failures);
    }
    VerificationReport {
        suite: suite.to_string(),
        pass,
        points,
        worst_margin: worst,
        failure_count,
        failures,
        checks,
        limit_mode,
        grid: grid.clone(),
    }
}

fn pants_of(p: &[f64]) -> Result<PantsShape> {
    PantsShape::from_values(p[0], p[1], p[2])
}

fn torus_of(p: &[f64]) -> Result<TorusPantsShape> {
    TorusPantsShape::from_values(p[0], p[1])
}

/// Lemma-level monotonicity of phi: the closed-form partial is strictly
/// positive, and so is a forward difference of phi itself.
pub fn suite_monotone_phi(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(3);
    let closed = run_check(&pool, "dphi-dx1-positive", &pts, STRICT_FLOOR, true, |p| {
        Ok((dphi_dx1(&pants_of(p)?, EvalMode::Strict)?, 0.0))
    });
    let forward = run_check(&pool, "phi-forward-difference", &pts, STRICT_FLOOR, true, |p| {
        let base = phi_x_fn(p)?;
        let stepped = phi_x_fn(&[p[0] + FORWARD_STEP, p[1], p[2]])?;
        Ok((stepped, base))
    });
    Ok(assemble("monotone-phi", g, false, vec![closed, forward]))
}

/// Monotonicity of eta in both coordinates: closed forms and forward
/// differences.
pub fn suite_monotone_eta(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(2);
    let dx = run_check(&pool, "deta-dx-positive", &pts, STRICT_FLOOR, true, |p| {
        Ok((deta_dx(&torus_of(p)?, EvalMode::Strict)?, 0.0))
    });
    let dy = run_check(&pool, "deta-dy-positive", &pts, STRICT_FLOOR, true, |p| {
        Ok((deta_dy(&torus_of(p)?, EvalMode::Strict)?, 0.0))
    });
    let fx = run_check(&pool, "eta-forward-difference-x", &pts, STRICT_FLOOR, true, |p| {
        Ok((eta_fn(&[p[0] + FORWARD_STEP, p[1]])?, eta_fn(p)?))
    });
    let fy = run_check(&pool, "eta-forward-difference-y", &pts, STRICT_FLOOR, true, |p| {
        Ok((eta_fn(&[p[0], p[1] + FORWARD_STEP])?, eta_fn(p)?))
    });
    Ok(assemble("monotone-eta", g, false, vec![dx, dy, fx, fy]))
}

/// eta dominates phi on equal-waist pants, and the excess grows with x.
pub fn suite_eta_dominates(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(2);
    let dominates = run_check(&pool, "eta-dominates-phi", &pts, MEASURE_FLOOR, false, |p| {
        let e = eta(&torus_of(p)?, EvalMode::Strict)?.get();
        let f = phi_x_fn(&[p[0], p[1], p[1]])?;
        Ok((e, f))
    });
    let grows = run_check(
        &pool,
        "difference-nondecreasing-x",
        &pts,
        MEASURE_FLOOR,
        false,
        |p| {
            let d0 = eta_fn(p)? - phi_x_fn(&[p[0], p[1], p[1]])?;
            let x1 = p[0] + FORWARD_STEP;
            let d1 = eta_fn(&[x1, p[1]])? - phi_x_fn(&[x1, p[1], p[1]])?;
            Ok((d1, d0))
        },
    );
    Ok(assemble("eta-dominates", g, false, vec![dominates, grows]))
}

/// The A-expression of the symmetrization derivative split, printed form.
pub fn symmetrization_a(x: f64, y: f64, z: f64) -> f64 {
    let xyz1 = 1.0 + x * y * z;
    (1.0 - y * y) * z * (1.0 - y * y).ln() / ((y + x * z) * xyz1)
        + y * (1.0 - z * z) * (1.0 - z * z).ln() / ((x * y + z) * xyz1)
        - 2.0 * (1.0 - y * z) * (1.0 - y * z).ln() / ((1.0 + x) * xyz1)
}

/// The B-expression of the symmetrization derivative split, printed form.
pub fn symmetrization_b(x: f64, y: f64, z: f64) -> f64 {
    let xyz1 = 1.0 + x * y * z;
    -y * z * y.ln() / xyz1 - y * z * z.ln() / xyz1 - 2.0 * y * z * (1.0 + x).ln() / xyz1
        + y * z * (x * y + z).ln() / xyz1
        + y * z * (y + x * z).ln() / xyz1
        - (1.0 - x) * (y - z) * (y - z) * xyz1.ln() / ((1.0 + x) * (x * y + z) * (y + x * z))
}

/// The quadratic-in-x coefficients h0, h1, h2 of the A-expression:
/// `A (1+xyz)(xy+z)(xz+y)(1+x) = x^2 h2 + (x - x^2) h1 + (1 - x^2) h0`.
pub fn h_expressions(y: f64, z: f64) -> [f64; 3] {
    let ly = (1.0 - y * y).ln();
    let lz = (1.0 - z * z).ln();
    let lyz = (1.0 - y * z).ln();
    let h0 = z * z * (1.0 - y * y) * ly + y * y * (1.0 - z * z) * lz
        - 2.0 * y * z * (1.0 - y * z) * lyz;
    let h1 = z * (y + z) * (1.0 - y * y) * ly + y * (y + z) * (1.0 - z * z) * lz
        - 2.0 * (y * y + z * z) * (1.0 - y * z) * lyz;
    let h2 = 2.0 * z * (y + z) * (1.0 - y * y) * ly + 2.0 * y * (y + z) * (1.0 - z * z) * lz
        - 2.0 * (y + z) * (y + z) * (1.0 - y * z) * lyz;
    [h0, h1, h2]
}

/// Symmetrizing the last two coordinates never increases phi, with the
/// intermediate A, B and h0..h2 non-negativity claims checked alongside.
pub fn suite_symmetrization(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts3 = g.points(3);
    let main = run_check(&pool, "phi-vs-symmetrized", &pts3, MEASURE_FLOOR, false, |p| {
        let s = (p[1] * p[2]).sqrt();
        Ok((phi_x_fn(p)?, phi_x_fn(&[p[0], s, s])?))
    });
    let a_check = run_check(&pool, "a-expression-nonnegative", &pts3, EXPR_FLOOR, false, |p| {
        Ok((symmetrization_a(p[0], p[1], p[2]), 0.0))
    });
    let b_check = run_check(&pool, "b-expression-nonnegative", &pts3, EXPR_FLOOR, false, |p| {
        Ok((symmetrization_b(p[0], p[1], p[2]), 0.0))
    });
    let pts2 = g.points(2);
    let h_checks: Vec<CheckRun> = [0usize, 1, 2]
        .into_iter()
        .map(|i| {
            let name = ["h0-nonnegative", "h1-nonnegative", "h2-nonnegative"][i];
            run_check(&pool, name, &pts2, EXPR_FLOOR, false, move |p| {
                Ok((h_expressions(p[0], p[1])[i], 0.0))
            })
        })
        .collect();
    let mut runs = vec![main, a_check, b_check];
    runs.extend(h_checks);
    Ok(assemble("symmetrization", g, false, runs))
}

/// One symmetrization step as a self-map of the open cube:
/// `f(x, y, z) = (x^(1/2) (yz)^(1/4), x^(1/2) (yz)^(1/4), (yz)^(1/2))`.
pub fn iterate_f(t: [f64; 3]) -> [f64; 3] {
    let first = t[0].sqrt() * t[1].powf(0.25) * t[2].powf(0.25);
    let third = t[1].sqrt() * t[2].sqrt();
    [first, first, third]
}

/// Closed-form exponents of the n-th iterate:
/// `a_n = 1/3 + (2/3) 4^-n`, `b_n = 1/3 - (1/3) 4^-n`.
pub fn iterate_exponents(n: u32) -> (f64, f64) {
    let pow = 0.25f64.powi(n as i32);
    (1.0 / 3.0 + 2.0 / 3.0 * pow, 1.0 / 3.0 - pow / 3.0)
}

/// The n-th iterate from the closed-form exponents:
/// `(x^a y^b z^b, x^a y^b z^b, x^(2b-a) y^a z^a)`.
pub fn iterate_closed_form(t: [f64; 3], n: u32) -> [f64; 3] {
    let (a, b) = iterate_exponents(n);
    let first = t[0].powf(a) * t[1].powf(b) * t[2].powf(b);
    let third = t[0].powf(2.0 * b - a) * t[1].powf(a) * t[2].powf(a);
    [first, first, third]
}

const ITERATE_DEPTH: u32 = 10;
const ITERATE_SAMPLES: usize = 100;
const ITERATE_TOL: f64 = 1e-12;

/// phi decreases toward the geometric-mean diagonal, stays above the
/// diagonal lower bound there, and the iterate of the symmetrization map
/// matches its closed-form exponents on the way down.
pub fn suite_geometric_mean(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(3);
    let main = run_check(&pool, "phi-vs-geometric-mean", &pts, MEASURE_FLOOR, false, |p| {
        let t = (p[0] * p[1] * p[2]).cbrt();
        Ok((phi_x_fn(p)?, phi_x_fn(&[t, t, t])?))
    });
    let tail = run_check(&pool, "diagonal-above-lower-bound", &pts, STRICT_FLOOR, true, |p| {
        let t = (p[0] * p[1] * p[2]).cbrt();
        Ok((phi_x_fn(&[t, t, t])?, phi_diag_lower_bound(t)?))
    });

    // Iterate checks on a seeded sample (the grid seed when random).
    let seed = match g.sampling {
        Sampling::Random { seed } => seed,
        Sampling::Uniform => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new_inclusive(g.min, g.max).expect("validated bounds");
    let samples: Vec<Vec<f64>> = (0..ITERATE_SAMPLES)
        .map(|_| (0..3).map(|_| dist.sample(&mut rng)).collect())
        .collect();

    let exponents = run_check(
        &pool,
        "iterate-exponent-identity",
        &samples,
        0.0,
        false,
        |p| {
            let start = [p[0], p[1], p[2]];
            let mut direct = start;
            let mut dev: f64 = 0.0;
            for n in 1..=ITERATE_DEPTH {
                direct = iterate_f(direct);
                let closed = iterate_closed_form(start, n);
                for (d, c) in direct.iter().zip(closed.iter()) {
                    dev = dev.max((d - c).abs());
                }
            }
            Ok((ITERATE_TOL, dev))
        },
    );
    let nonincreasing = run_check(
        &pool,
        "iterate-phi-nonincreasing",
        &samples,
        MEASURE_FLOOR,
        false,
        |p| {
            let mut t = [p[0], p[1], p[2]];
            let mut worst = f64::INFINITY;
            let mut prev = phi_x_fn(&t)?;
            for _ in 1..=ITERATE_DEPTH {
                t = iterate_f(t);
                let next = phi_x_fn(&t)?;
                worst = worst.min(prev - next);
                prev = next;
            }
            Ok((worst, 0.0))
        },
    );
    Ok(assemble(
        "geometric-mean",
        g,
        false,
        vec![main, tail, exponents, nonincreasing],
    ))
}

/// The g-function from the diagonal bound proof, printed form.
pub fn diag_g(x: f64) -> f64 {
    let num = x * (2.0 - x + 3.0 * x.powi(2) - 4.0 * x.powi(3) + 9.0 * x.powi(4)
        - 9.0 * x.powi(5)
        + 2.0 * x.powi(6));
    let den = 2.0 * (1.0 + x) * (1.0 - x) * (1.0 - x + x * x);
    num / den + (-x).ln_1p()
}

/// Its derivative, in the manifestly non-negative factored form.
pub fn diag_g_prime(x: f64) -> f64 {
    let num = x
        * x
        * (2.0 * x.powi(8)
            + 10.0 * x.powi(7) * (1.0 - x)
            + (1.0 - x).powi(2)
                * (5.0 - 5.0 * x + 19.0 * x.powi(2) - 3.0 * x.powi(3)
                    + 3.0 * x.powi(4)
                    + 13.0 * x.powi(5)
                    + 5.0 * x.powi(6)));
    let den = (1.0 - x).powi(2) * (1.0 + x).powi(2) * (1.0 - x + x * x).powi(2);
    num / den
}

/// The diagonal of phi strictly dominates `-24 x^3 log x + 24 x^3`, with the
/// proof's g and g' positivity checked alongside.
pub fn suite_diag_lower_bound(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(1);
    let main = run_check(&pool, "phi-diagonal-above-bound", &pts, STRICT_FLOOR, true, |p| {
        Ok((phi_x_fn(&[p[0], p[0], p[0]])?, phi_diag_lower_bound(p[0])?))
    });
    let g_pos = run_check(&pool, "g-positive", &pts, STRICT_FLOOR, true, |p| {
        Ok((diag_g(p[0]), 0.0))
    });
    let gp_pos = run_check(&pool, "g-prime-positive", &pts, STRICT_FLOOR, true, |p| {
        Ok((diag_g_prime(p[0]), 0.0))
    });
    Ok(assemble("diag-bound", g, false, vec![main, g_pos, gp_pos]))
}

/// Degenerating the third boundary to length 0 (coordinate 1, taken in limit
/// mode as 1 - 1e-9) dominates phi(x, y, z), and the excess grows with x.
pub fn suite_degeneration(g: &GridSpec) -> Result<VerificationReport> {
    let pool = build_pool();
    let pts = g.points(3);
    let degenerate = |x: f64, yz: f64| -> Result<f64> {
        let shape = PantsShape::new(
            crate::pants::XCoord::clamped(x)?,
            crate::pants::XCoord::clamped(yz)?,
            crate::pants::XCoord::clamped(1.0)?,
        );
        Ok(phi_x(&shape, EvalMode::Limit)?.get())
    };
    let main = run_check(&pool, "phi-degenerate-dominates", &pts, MEASURE_FLOOR, false, |p| {
        Ok((degenerate(p[0], p[1] * p[2])?, phi_x_fn(p)?))
    });
    let grows = run_check(
        &pool,
        "difference-nondecreasing-x",
        &pts,
        MEASURE_FLOOR,
        false,
        |p| {
            let d0 = degenerate(p[0], p[1] * p[2])? - phi_x_fn(p)?;
            let x1 = p[0] + FORWARD_STEP;
            let d1 = degenerate(x1, p[1] * p[2])? - phi_x_fn(&[x1, p[1], p[2]])?;
            Ok((d1, d0))
        },
    );
    Ok(assemble("degeneration", g, true, vec![main, grows]))
}

/// Every suite in a fixed order. `grid` overrides the per-suite defaults
/// (64^3 for three-coordinate sweeps, 256^2 for two, 1024 for one).
pub fn run_all(grid: Option<&GridSpec>) -> Result<Vec<VerificationReport>> {
    let g3 = grid.cloned().unwrap_or_else(GridSpec::default_3d);
    let g2 = grid.cloned().unwrap_or_else(GridSpec::default_2d);
    let g1 = grid.cloned().unwrap_or_else(GridSpec::default_1d);
    Ok(vec![
        suite_monotone_phi(&g3)?,
        suite_monotone_eta(&g2)?,
        suite_eta_dominates(&g2)?,
        suite_symmetrization(&g3)?,
        suite_geometric_mean(&g3)?,
        suite_diag_lower_bound(&g1)?,
        suite_degeneration(&g3)?,
    ])
}
