//! Periodic polynomial splines of degree 1, 2 and 3 on uniform grids.
//!
//! These are built independently of the Fourier machinery (local polynomial
//! pieces from small banded systems) and serve as reference curves for the
//! trigonometric splines.

use crate::error::{Error, Result};
use crate::grid::{reduce_angle, GridSpec, Indicator};
use crate::spline::Evaluable;
use crate::trig_poly::check_values;

/// Joint continuity tolerance checked at construction.
pub const CONTINUITY_TOLERANCE: f64 = 1e-8;

/// Piecewise polynomial on the aligned knots `2πi/N`, periodic.
///
/// Piece `i` covers `[knot_i, knot_i + h)` and stores coefficients in the local
/// variable `u = t − knot_i`, lowest order first.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicPolySpline {
    degree: usize,
    step: f64,
    knots: Vec<f64>,
    pieces: Vec<[f64; 4]>,
}

impl PeriodicPolySpline {
    fn new(grid: &GridSpec, degree: usize, pieces: Vec<[f64; 4]>) -> Result<Self> {
        let knots = GridSpec::new(grid.len(), Indicator::Aligned)?.nodes();
        let spline = Self {
            degree,
            step: grid.step(),
            knots,
            pieces,
        };
        let jump = spline.max_joint_jump();
        if !(jump <= CONTINUITY_TOLERANCE) {
            return Err(Error::Numeric(format!(
                "degree-{degree} spline pieces do not join smoothly (jump {jump:e})"
            )));
        }
        Ok(spline)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn pieces(&self) -> &[[f64; 4]] {
        &self.pieces
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let t = reduce_angle(t);
        let i = ((t / self.step) as usize).min(self.knots.len() - 1);
        (i, t - self.knots[i])
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (i, u) = self.locate(t);
        piece_derivative(&self.pieces[i], u, 0)
    }

    /// Derivative of order `d ≤ degree − 1` (higher orders jump at the knots).
    pub fn eval_derivative(&self, t: f64, d: usize) -> Result<f64> {
        if d >= self.degree.max(1) {
            return Err(Error::Domain(format!(
                "derivative order {d} is not continuous for a degree-{} spline",
                self.degree
            )));
        }
        let (i, u) = self.locate(t);
        Ok(piece_derivative(&self.pieces[i], u, d))
    }

    /// Largest mismatch of derivatives `0..degree` across all joints, wrap-around included.
    pub fn max_joint_jump(&self) -> f64 {
        let count = self.pieces.len();
        let mut worst = 0.0f64;
        for i in 0..count {
            let left = &self.pieces[(i + count - 1) % count];
            let right = &self.pieces[i];
            for d in 0..self.degree {
                let jump =
                    (piece_derivative(left, self.step, d) - piece_derivative(right, 0.0, d)).abs();
                worst = worst.max(jump);
            }
        }
        worst
    }
}

impl Evaluable for PeriodicPolySpline {
    fn value_at(&self, t: f64) -> f64 {
        self.eval(t)
    }
}

/// `d`-th derivative of `Σ c_p u^p` (Horner).
fn piece_derivative(c: &[f64; 4], u: f64, d: usize) -> f64 {
    let mut acc = 0.0;
    for p in (d..4).rev() {
        let falling: f64 = (p - d + 1..=p).map(|x| x as f64).product();
        acc = acc * u + falling * c[p];
    }
    acc
}

fn require(grid: &GridSpec, indicator: Indicator, what: &str) -> Result<()> {
    if grid.indicator() != indicator {
        return Err(Error::Domain(format!(
            "{what} spline needs grid indicator {indicator}, got {}",
            grid.indicator()
        )));
    }
    Ok(())
}

/// Degree-1 periodic interpolant through `(2πi/N, v_i)`.
pub fn periodic_linear(values: &[f64], grid: &GridSpec) -> Result<PeriodicPolySpline> {
    require(grid, Indicator::Aligned, "linear")?;
    check_values(values, grid)?;
    let n = values.len();
    let h = grid.step();
    let pieces = (0..n)
        .map(|i| {
            let next = values[(i + 1) % n];
            [values[i], (next - values[i]) / h, 0.0, 0.0]
        })
        .collect();
    PeriodicPolySpline::new(grid, 1, pieces)
}

/// C² periodic cubic interpolant on the aligned grid, from the second-derivative
/// ("moment") equations `M_{i−1} + 4M_i + M_{i+1} = 6(f_{i+1} − 2f_i + f_{i−1})/h²`.
pub fn periodic_cubic(values: &[f64], grid: &GridSpec) -> Result<PeriodicPolySpline> {
    require(grid, Indicator::Aligned, "cubic")?;
    check_values(values, grid)?;
    let n = values.len();
    let h = grid.step();
    let f = |i: usize| values[i % n];

    let rhs: Vec<f64> = (0..n)
        .map(|i| 6.0 * (f(i + 1) - 2.0 * f(i) + f(i + n - 1)) / (h * h))
        .collect();
    let moments = solve_cyclic_tridiagonal(
        &vec![1.0; n - 1],
        &vec![4.0; n],
        &vec![1.0; n - 1],
        1.0,
        1.0,
        &rhs,
    )?;

    let pieces = (0..n)
        .map(|i| {
            let (m0, m1) = (moments[i], moments[(i + 1) % n]);
            let slope = (f(i + 1) - f(i)) / h - h * (2.0 * m0 + m1) / 6.0;
            [f(i), slope, 0.5 * m0, (m1 - m0) / (6.0 * h)]
        })
        .collect();
    PeriodicPolySpline::new(grid, 3, pieces)
}

/// C¹ periodic quadratic spline with knots on the aligned grid, interpolating
/// values given at the half-step nodes (interval midpoints).
///
/// Knot values solve `s_{i−1} + 6s_i + s_{i+1} = 4(f_{i−1} + f_i)`, where `f_i`
/// sits in the middle of `[knot_i, knot_{i+1})`.
pub fn periodic_quadratic_midpoint(values: &[f64], grid: &GridSpec) -> Result<PeriodicPolySpline> {
    require(grid, Indicator::HalfStep, "quadratic midpoint")?;
    check_values(values, grid)?;
    let n = values.len();
    let h = grid.step();

    let rhs: Vec<f64> = (0..n)
        .map(|i| 4.0 * (values[(i + n - 1) % n] + values[i]))
        .collect();
    let knot_values = solve_cyclic_tridiagonal(
        &vec![1.0; n - 1],
        &vec![6.0; n],
        &vec![1.0; n - 1],
        1.0,
        1.0,
        &rhs,
    )?;

    let pieces = (0..n)
        .map(|i| {
            let (s0, s1, mid) = (knot_values[i], knot_values[(i + 1) % n], values[i]);
            [
                s0,
                (4.0 * mid - 3.0 * s0 - s1) / h,
                2.0 * (s0 + s1 - 2.0 * mid) / (h * h),
                0.0,
            ]
        })
        .collect();
    PeriodicPolySpline::new(grid, 2, pieces)
}

fn tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut gam = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut bet = diag[0];
    if bet == 0.0 {
        return Err(Error::Numeric("zero pivot in tridiagonal solve".into()));
    }
    x[0] = rhs[0] / bet;
    for j in 1..n {
        gam[j] = sup[j - 1] / bet;
        bet = diag[j] - sub[j - 1] * gam[j];
        if bet == 0.0 {
            return Err(Error::Numeric("zero pivot in tridiagonal solve".into()));
        }
        x[j] = (rhs[j] - sub[j - 1] * x[j - 1]) / bet;
    }
    for j in (0..n - 1).rev() {
        x[j] -= gam[j + 1] * x[j + 1];
    }
    Ok(x)
}

/// Solves a tridiagonal system with periodic corner entries.
///
/// `sub[i] = A[i+1][i]`, `sup[i] = A[i][i+1]`, `top_right = A[0][n−1]`,
/// `bottom_left = A[n−1][0]`. The corners are folded in with a Sherman–Morrison
/// correction over two acyclic solves.
pub fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    top_right: f64,
    bottom_left: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "cyclic system needs dimension ≥ 3, got {n}"
        )));
    }
    for (len, expected) in [(sub.len(), n - 1), (sup.len(), n - 1), (rhs.len(), n)] {
        if len != expected {
            return Err(Error::Dimension {
                expected,
                actual: len,
            });
        }
    }
    let gamma = -diag[0];
    if gamma == 0.0 {
        return Err(Error::Numeric(
            "zero leading diagonal in cyclic solve".into(),
        ));
    }
    let mut modified = diag.to_vec();
    modified[0] = diag[0] - gamma;
    modified[n - 1] = diag[n - 1] - bottom_left * top_right / gamma;

    let mut x = tridiagonal(sub, &modified, sup, rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = bottom_left;
    let z = tridiagonal(sub, &modified, sup, &u)?;

    let denom = 1.0 + z[0] + top_right * z[n - 1] / gamma;
    if denom == 0.0 {
        return Err(Error::Numeric("singular cyclic system".into()));
    }
    let fact = (x[0] + top_right * x[n - 1] / gamma) / denom;
    for (xi, zi) in x.iter_mut().zip(&z) {
        *xi -= fact * zi;
    }
    Ok(x)
}
