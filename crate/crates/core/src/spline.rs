//! Interpolating trigonometric splines
//! `ST(t) = a_0/2 + Σ_{k=1..n} [a_k C_k(t) + b_k S_k(t)] / H_k`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::factors::{FactorKind, SmoothnessOrder};
use crate::grid::{reduce_angle, GridSpec};
use crate::kernel::{KernelTable, Truncation, TruncationPolicy};
use crate::trig_poly::{fit, TrigPolyCoeffs};

/// Anything that can be evaluated on `[0, 2π)`.
pub trait Evaluable {
    fn value_at(&self, t: f64) -> f64;

    fn values_at(&self, ts: &[f64]) -> Vec<f64> {
        ts.iter().map(|&t| self.value_at(t)).collect()
    }
}

impl<F: Fn(f64) -> f64> Evaluable for F {
    fn value_at(&self, t: f64) -> f64 {
        self(t)
    }
}

/// Phase offset (in steps) of the comparison grid used by [`max_deviation`].
///
/// Irrational, so no sample can coincide with a grid node for any `N`.
pub const COMPARISON_PHASE: f64 = 0.381_966_011_250_105_1;

/// Immutable spline built from samples on a uniform grid.
#[derive(Clone, Debug)]
pub struct TrigSpline {
    values: Vec<f64>,
    coeffs: TrigPolyCoeffs,
    kernel: KernelTable,
}

impl TrigSpline {
    pub fn build(
        values: &[f64],
        grid: GridSpec,
        kind: FactorKind,
        order: SmoothnessOrder,
        truncation: Truncation,
    ) -> Result<Self> {
        let coeffs = fit(values, &grid)?;
        let policy = TruncationPolicy::resolve(truncation, kind, order, &grid)?;
        let kernel = KernelTable::new(kind, order, grid, policy)?;
        Ok(Self {
            values: values.to_vec(),
            coeffs,
            kernel,
        })
    }

    /// Spline for new samples over an already computed kernel.
    pub fn with_kernel(values: &[f64], kernel: KernelTable) -> Result<Self> {
        let coeffs = fit(values, kernel.grid())?;
        Ok(Self {
            values: values.to_vec(),
            coeffs,
            kernel,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        self.kernel.grid()
    }

    pub fn kind(&self) -> FactorKind {
        self.kernel.kind()
    }

    pub fn order(&self) -> SmoothnessOrder {
        self.kernel.order()
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.kernel.policy()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coeffs(&self) -> &TrigPolyCoeffs {
        &self.coeffs
    }

    pub fn kernel(&self) -> &KernelTable {
        &self.kernel
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.series(&[t], 0)[0]
    }

    /// Values at many points; bitwise equal to calling [`eval`](Self::eval) on each.
    pub fn eval_many(&self, ts: &[f64]) -> Vec<f64> {
        self.series(ts, 0)
    }

    /// Term-wise derivative of order `d ≤ r − 1`.
    pub fn eval_derivative(&self, t: f64, d: u32) -> Result<f64> {
        Ok(self.eval_derivative_many(&[t], d)?[0])
    }

    pub fn eval_derivative_many(&self, ts: &[f64], d: u32) -> Result<Vec<f64>> {
        let r = self.order().get();
        if d >= r {
            return Err(Error::DerivativeOrder {
                requested: d,
                order: r,
            });
        }
        Ok(self.series(ts, d))
    }

    fn series(&self, ts: &[f64], deriv: u32) -> Vec<f64> {
        let reduced: Vec<f64> = ts.iter().map(|&t| reduce_angle(t)).collect();
        let c = &self.coeffs;
        let constant = if deriv == 0 { 0.5 * c.a(0) } else { 0.0 };
        let mut out = vec![constant; ts.len()];
        for k in 1..=c.harmonics() {
            self.kernel
                .add_mode(k, &reduced, deriv, c.a(k), c.b(k), &mut out);
        }
        out
    }

    /// `count` equally spaced points `2πs/count`, paired with spline values.
    pub fn sample(&self, count: usize) -> Result<Vec<(f64, f64)>> {
        let ts = sample_points(count, 0.0)?;
        let values = self.eval_many(&ts);
        Ok(ts.into_iter().zip(values).collect())
    }
}

impl Evaluable for TrigSpline {
    fn value_at(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn values_at(&self, ts: &[f64]) -> Vec<f64> {
        self.eval_many(ts)
    }
}

/// `count` points `2π(s + phase)/count`, `s = 0..count`.
pub fn sample_points(count: usize, phase: f64) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::Domain(format!(
            "sample count must be at least 2, got {count}"
        )));
    }
    Ok((0..count)
        .map(|s| TAU * (s as f64 + phase) / count as f64)
        .collect())
}

/// `max |f(t) − g(t)|` over `count` points offset from `2πs/count` by [`COMPARISON_PHASE`].
pub fn max_deviation<F, G>(f: &F, g: &G, count: usize) -> Result<f64>
where
    F: Evaluable + ?Sized,
    G: Evaluable + ?Sized,
{
    let ts = sample_points(count, COMPARISON_PHASE)?;
    Ok(f.values_at(&ts)
        .into_iter()
        .zip(g.values_at(&ts))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
