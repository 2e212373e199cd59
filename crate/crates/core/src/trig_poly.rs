//! The interpolating trigonometric polynomial of degree `n` on an `N = 2n+1` grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{reduce_angle, GridSpec};
use crate::spline::Evaluable;

/// Coefficients of `a_0/2 + Σ_{k=1..n} (a_k cos kt + b_k sin kt)`.
///
/// `b` is stored 0-indexed, so `b[k - 1]` holds `b_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPolyCoeffs {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TrigPolyCoeffs {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() + 1 {
            return Err(Error::Input(format!(
                "coefficient lengths must be n+1 and n, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(Error::Input("non-finite coefficient".into()));
        }
        Ok(Self { a, b })
    }

    pub fn zeros(harmonics: usize) -> Self {
        Self {
            a: vec![0.0; harmonics + 1],
            b: vec![0.0; harmonics],
        }
    }

    pub fn harmonics(&self) -> usize {
        self.b.len()
    }

    /// `a_k`, `k = 0..=n`.
    pub fn a(&self, k: usize) -> f64 {
        self.a[k]
    }

    /// `b_k`, `k = 1..=n`.
    pub fn b(&self, k: usize) -> f64 {
        self.b[k - 1]
    }

    pub fn cosine_coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn sine_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = reduce_angle(t);
        let mut sum = 0.5 * self.a[0];
        for k in 1..=self.harmonics() {
            let (s, c) = (k as f64 * t).sin_cos();
            sum += self.a[k] * c + self.b[k - 1] * s;
        }
        sum
    }
}

impl Evaluable for TrigPolyCoeffs {
    fn value_at(&self, t: f64) -> f64 {
        self.eval(t)
    }
}

pub(crate) fn check_values(values: &[f64], grid: &GridSpec) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::Dimension {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Input(format!("value {} is not finite", i + 1)));
    }
    Ok(())
}

/// Discrete Fourier coefficients of the samples, by direct summation over the nodes.
pub fn fit(values: &[f64], grid: &GridSpec) -> Result<TrigPolyCoeffs> {
    check_values(values, grid)?;
    let n = grid.harmonics();
    let scale = 2.0 / grid.len() as f64;
    let nodes = grid.nodes();

    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n);
    for k in 0..=n {
        let (mut ak, mut bk) = (0.0, 0.0);
        for (&f, &t) in values.iter().zip(&nodes) {
            let (s, c) = (k as f64 * t).sin_cos();
            ak += f * c;
            bk += f * s;
        }
        a.push(scale * ak);
        if k > 0 {
            b.push(scale * bk);
        }
    }
    Ok(TrigPolyCoeffs { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Indicator;
    use crate::EXAMPLE_VALUES;
    use proptest::prelude::*;

    fn grid(n: usize, i: u8) -> GridSpec {
        GridSpec::new(n, Indicator::try_from(i).unwrap()).unwrap()
    }

    #[test]
    fn constant_data() {
        let g = grid(9, 1);
        let c = fit(&[1.75; 9], &g).unwrap();
        assert!((c.a(0) - 3.5).abs() < 1e-12);
        for k in 1..=4 {
            assert!(c.a(k).abs() < 1e-12);
            assert!(c.b(k).abs() < 1e-12);
        }
        for t in [0.0, 0.3, 2.0, 6.0] {
            assert!((c.eval(t) - 1.75).abs() < 1e-12);
        }
    }

    #[test]
    fn cosine_data_has_single_coefficient() {
        let g = grid(9, 0);
        let values: Vec<f64> = g.nodes().iter().map(|t| t.cos()).collect();
        let c = fit(&values, &g).unwrap();
        for k in 0..=4 {
            let expected = if k == 1 { 1.0 } else { 0.0 };
            assert!((c.a(k) - expected).abs() < 1e-12, "a_{k} = {}", c.a(k));
        }
        for k in 1..=4 {
            assert!(c.b(k).abs() < 1e-12);
        }
    }

    #[test]
    fn example_data_mean() {
        let c = fit(&EXAMPLE_VALUES, &grid(9, 0)).unwrap();
        assert!((c.a(0) / 2.0 - 20.0 / 9.0).abs() < 1e-14);
        for (i, t) in grid(9, 0).nodes().into_iter().enumerate() {
            assert!((c.eval(t) - EXAMPLE_VALUES[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_coefficients() {
        let z = TrigPolyCoeffs::zeros(4);
        assert_eq!(z.eval(1.234), 0.0);
    }

    #[test]
    fn input_errors() {
        let g = grid(5, 0);
        assert!(matches!(
            fit(&[1.0; 4], &g),
            Err(Error::Dimension {
                expected: 5,
                actual: 4
            })
        ));
        assert!(matches!(
            fit(&[1.0, 2.0, f64::NAN, 0.0, 0.0], &g),
            Err(Error::Input(_))
        ));
    }

    fn grid_and_values() -> impl Strategy<Value = (GridSpec, Vec<f64>)> {
        (1usize..12, 0u8..2).prop_flat_map(|(half, ind)| {
            let g = grid(2 * half + 1, ind);
            (Just(g), prop::collection::vec(-5.0..5.0f64, g.len()))
        })
    }

    proptest! {
        #[test]
        fn interpolates_nodes((g, v) in grid_and_values()) {
            let c = fit(&v, &g).unwrap();
            let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            for (i, t) in g.nodes().into_iter().enumerate() {
                prop_assert!((c.eval(t) - v[i]).abs() <= 1e-10 * scale);
            }
        }

        #[test]
        fn linear_in_data((g, u) in grid_and_values(), alpha in -3.0..3.0f64, beta in -3.0..3.0f64) {
            let w: Vec<f64> = u.iter().rev().copied().collect();
            let mix: Vec<f64> = u.iter().zip(&w).map(|(x, y)| alpha * x + beta * y).collect();
            let (cu, cw, cm) = (fit(&u, &g).unwrap(), fit(&w, &g).unwrap(), fit(&mix, &g).unwrap());
            for k in 0..=g.harmonics() {
                prop_assert!((cm.a(k) - (alpha * cu.a(k) + beta * cw.a(k))).abs() < 1e-12);
            }
            for k in 1..=g.harmonics() {
                prop_assert!((cm.b(k) - (alpha * cu.b(k) + beta * cw.b(k))).abs() < 1e-12);
            }
        }

        #[test]
        fn periodic((g, v) in grid_and_values(), t in 0.0..6.3f64) {
            let c = fit(&v, &g).unwrap();
            prop_assert!((c.eval(t) - c.eval(t + std::f64::consts::TAU)).abs() < 1e-12);
        }
    }
}
