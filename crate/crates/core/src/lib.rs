//! Interpolating trigonometric splines on uniform periodic grids.
//!
//! A spline of order `r` is the Fourier series of the interpolating
//! trigonometric polynomial with every harmonic `j` weighted by a convergence
//! factor of decay `O(j^−(1+r))`, regrouped into alias classes and normalized
//! so that it still passes through the samples. The sum has `r − 1`
//! continuous derivatives.
//!
//! ```
//! use trigspline::{FactorKind, GridSpec, Indicator, SmoothnessOrder, Truncation, TrigSpline};
//!
//! let grid = GridSpec::new(9, Indicator::Aligned)?;
//! let order = SmoothnessOrder::new(3)?;
//! let spline = TrigSpline::build(&trigspline::EXAMPLE_VALUES, grid, FactorKind::V3, order, Truncation::Auto)?;
//! assert!((spline.eval(grid.node(4)) - 4.0).abs() < 1e-9);
//! # Ok::<(), trigspline::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod factors;
pub mod grid;
pub mod io;
pub mod kernel;
pub mod poly;
pub mod spline;
mod sum;
pub mod trig_poly;

pub use error::{Error, Result};
pub use factors::{factor, sinc, FactorKind, SmoothnessOrder};
pub use grid::{GridSpec, Indicator};
pub use kernel::{
    blocks_for_tolerance, eval_c, eval_s, normalizer, tail_bound, KernelTable, ModeBasis,
    Truncation, TruncationPolicy,
};
pub use poly::{
    periodic_cubic, periodic_linear, periodic_quadratic_midpoint, solve_cyclic_tridiagonal,
    PeriodicPolySpline,
};
pub use spline::{max_deviation, sample_points, Evaluable, TrigSpline};
pub use trig_poly::{fit, TrigPolyCoeffs};

/// Nine-sample demonstration data, used by the `paper-example` command.
pub const EXAMPLE_VALUES: [f64; 9] = [2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0];
