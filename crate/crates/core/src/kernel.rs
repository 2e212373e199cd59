//! Aliased kernel sums `C_k`, `S_k` and the interpolation normalizer `H_k`.
//!
//! On an `N`-node grid the frequencies `mN ± k` collapse onto mode `k` at the
//! nodes. Summing the factor-weighted harmonics of each alias class gives the
//! kernels; summing the factors themselves (with the grid's sign pattern) gives
//! the normalizer. Both are truncated after the same number of alias blocks `M`,
//! which keeps node interpolation exact for every `M`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{factor, AliasClass, FactorKind, SmoothnessOrder};
use crate::grid::{reduce_angle, GridSpec};
use crate::sum::CompensatedSum;
use crate::trig_poly::TrigPolyCoeffs;

/// Tolerance used when no truncation is requested.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest number of alias blocks chosen automatically.
pub const MAX_AUTO_BLOCKS: u64 = 2_000_000;

/// A normalizer is degenerate when it is this small relative to the sum of the
/// magnitudes of its terms.
pub const DEGENERATE_RELATIVE: f64 = 1e-12;

// phasors are recomputed directly every this many blocks
const RESYNC_BLOCKS: u64 = 256;

/// How many alias blocks to keep.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Truncation {
    /// Reach [`DEFAULT_TOLERANCE`], capped at [`MAX_AUTO_BLOCKS`].
    #[default]
    Auto,
    Blocks(u64),
    /// Smallest `M` whose tail bound is below the tolerance, capped at [`MAX_AUTO_BLOCKS`].
    Tolerance(f64),
}

/// Resolved truncation: `M` alias blocks plus the bound on what was discarded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub blocks: u64,
    pub tail_bound: f64,
}

impl TruncationPolicy {
    pub fn resolve(
        request: Truncation,
        kind: FactorKind,
        order: SmoothnessOrder,
        grid: &GridSpec,
    ) -> Result<Self> {
        let blocks = match request {
            Truncation::Blocks(0) => {
                return Err(Error::Domain(
                    "truncation needs at least one alias block".into(),
                ))
            }
            Truncation::Blocks(m) => m,
            Truncation::Auto => blocks_for_tolerance(order, grid, DEFAULT_TOLERANCE)?,
            Truncation::Tolerance(tol) => blocks_for_tolerance(order, grid, tol)?,
        };
        Ok(Self {
            blocks,
            tail_bound: tail_bound(kind, order, grid.len(), grid.harmonics(), blocks),
        })
    }
}

/// Integral-comparison bound on `Σ_{m>M} |v_{mN+k}| + |v_{mN−k}|`, valid for all `k ≤ n`.
///
/// `Σ_{m>M} 2(mN − n)^−(1+r) ≤ 2(MN − n)^−r / (rN)`; the sinc families carry the
/// extra envelope factor `(N/π)^(1+r)`.
pub fn tail_bound(
    kind: FactorKind,
    order: SmoothnessOrder,
    nodes: usize,
    harmonics: usize,
    blocks: u64,
) -> f64 {
    let r = order.get() as f64;
    let n = nodes as f64;
    let base = blocks as f64 * n - harmonics as f64;
    let power_law = 2.0 * base.powf(-r) / (r * n);
    match kind {
        FactorKind::V3 => power_law,
        FactorKind::V1 | FactorKind::V2 => power_law * (n / PI).powi(order.exponent()),
    }
}

/// Smallest `M` for which every family's tail bound is at most `tolerance`, capped at
/// [`MAX_AUTO_BLOCKS`].
///
/// The sinc envelope dominates the power law, so one `M` serves all three families
/// and builds that differ only in the family share their truncation.
pub fn blocks_for_tolerance(
    order: SmoothnessOrder,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<u64> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Domain(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    let bound = |m| tail_bound(FactorKind::V2, order, grid.len(), grid.harmonics(), m);
    let r = order.get() as f64;
    let n = grid.len() as f64;
    let envelope = (n / PI).powi(order.exponent());
    let target = grid.harmonics() as f64 + (2.0 * envelope / (r * n * tolerance)).powf(1.0 / r);
    let guess = (target / n).ceil();
    let mut m = if guess.is_finite() && guess < MAX_AUTO_BLOCKS as f64 {
        (guess as u64).max(1)
    } else {
        MAX_AUTO_BLOCKS
    };
    while m < MAX_AUTO_BLOCKS && bound(m) > tolerance {
        m += 1;
    }
    while m > 1 && bound(m - 1) <= tolerance {
        m -= 1;
    }
    Ok(m)
}

fn check_mode(grid: &GridSpec, k: usize) -> Result<()> {
    if k == 0 || k > grid.harmonics() {
        return Err(Error::Domain(format!(
            "mode k must lie in 1..={}, got {k}",
            grid.harmonics()
        )));
    }
    Ok(())
}

/// `H_k = v_k + Σ_{m=1..M} (−1)^(m·I) [v_{mN+k} + v_{mN−k}]`.
///
/// `blocks = 0` keeps only `v_k`.
pub fn normalizer(
    kind: FactorKind,
    order: SmoothnessOrder,
    grid: &GridSpec,
    k: usize,
    blocks: u64,
) -> Result<f64> {
    check_mode(grid, k)?;
    let head = factor(kind, order, grid.len(), k as u64)?;
    let class = AliasClass::new(kind, order, grid.len(), k);
    let (value, magnitude) = normalizer_sum(&class, head, grid, k, blocks);
    if value.abs() <= DEGENERATE_RELATIVE * magnitude || !value.is_finite() {
        return Err(Error::DegenerateNormalizer { k, value });
    }
    Ok(value)
}

fn normalizer_sum(
    class: &AliasClass,
    head: f64,
    grid: &GridSpec,
    k: usize,
    blocks: u64,
) -> (f64, f64) {
    let indicator = grid.indicator();
    let nodes = grid.len() as u64;
    let mut sum = CompensatedSum::new(head);
    let mut magnitude = CompensatedSum::new(head.abs());
    for m in 1..=blocks {
        let (jp, jm) = ((m * nodes + k as u64) as f64, (m * nodes - k as u64) as f64);
        let q = 1.0 / (jp * jm);
        let e = class.exponent as u32;
        let (vp, vm) = (
            class.scale * pow_int(jm * q, e),
            class.scale * pow_int(jp * q, e),
        );
        let (sp, sm) = class.signs(m);
        sum += indicator.alias_sign(m) * (sp * vp + sm * vm);
        magnitude += vp + vm;
    }
    (sum.value(), magnitude.value())
}

/// `cos(x + dπ/2)`, `sin(x + dπ/2)` from `cos x`, `sin x`.
#[inline]
fn quarter_turns(c: f64, s: f64, d: u32) -> (f64, f64) {
    match d % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// `x^e` for `e ≥ 0` by repeated squaring; odd exponents keep the sign of `x`.
#[inline(always)]
pub(crate) fn pow_int(mut x: f64, mut e: u32) -> f64 {
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= x;
        }
        x *= x;
        e >>= 1;
    }
    acc
}

// points processed together; keeps the per-point phasor state in L1
const POINT_CHUNK: usize = 64;

/// Weighted alias series for mode `k` at each of `ts` (already reduced),
/// differentiated `deriv` times term by term:
///
/// `Σ_j v_j j^d [cw·cos(jt + dπ/2) + sw·σ_j·sin(jt + dπ/2)]`
///
/// over `j = k` and `j = mN ± k`, `m = 1..M`, where `σ_j = −1` on `mN − k`.
/// With `(cw, sw) = (1, 0)` this is `C_k`, with `(0, 1)` it is `S_k`.
///
/// Factor weights depend only on `m`, so each is computed once and applied to
/// every point. Per-point arithmetic does not depend on how many points share
/// the call, so a batch gives bitwise the same values as single evaluations.
#[allow(clippy::too_many_arguments)]
pub(crate) fn alias_series(
    class: &AliasClass,
    head: f64,
    nodes: usize,
    k: usize,
    blocks: u64,
    ts: &[f64],
    deriv: u32,
    cos_weight: f64,
    sin_weight: f64,
) -> Vec<f64> {
    let n = nodes as u64;
    let k64 = k as u64;
    let exponent = (class.exponent - deriv as i32) as u32;
    let head_weight = head * pow_int(k as f64, deriv);

    // fold the phase advance into per-branch weights on cos x and sin x
    let (cc, sc) = quarter_turns(1.0, 0.0, deriv);
    let (cs, ss) = quarter_turns(0.0, 1.0, deriv);
    let (plus_cos, plus_sin) = (
        cos_weight * cc + sin_weight * sc,
        cos_weight * cs + sin_weight * ss,
    );
    let (minus_cos, minus_sin) = (
        cos_weight * cc - sin_weight * sc,
        cos_weight * cs - sin_weight * ss,
    );

    let mut out = Vec::with_capacity(ts.len());
    for chunk in ts.chunks(POINT_CHUNK) {
        let len = chunk.len();
        let mut totals: Vec<CompensatedSum> = chunk
            .iter()
            .map(|&t| {
                let (s, c) = (k as f64 * t).sin_cos();
                let (c, s) = quarter_turns(c, s, deriv);
                CompensatedSum::new(head_weight * (cos_weight * c + sin_weight * s))
            })
            .collect();
        let steps: Vec<(f64, f64)> = chunk.iter().map(|&t| (n as f64 * t).sin_cos()).collect();
        let (step_s, step_c): (Vec<f64>, Vec<f64>) = steps.into_iter().unzip();

        let mut cp = vec![0.0; len];
        let mut sp = vec![0.0; len];
        let mut cm = vec![0.0; len];
        let mut sm = vec![0.0; len];
        let mut acc = vec![0.0; len];

        let mut start = 1u64;
        while start <= blocks {
            let end = blocks.min(start + RESYNC_BLOCKS - 1);
            let (jp0, jm0) = ((start * n + k64) as f64, (start * n - k64) as f64);
            for (p, &t) in chunk.iter().enumerate() {
                (sp[p], cp[p]) = (jp0 * t).sin_cos();
                (sm[p], cm[p]) = (jm0 * t).sin_cos();
                acc[p] = 0.0;
            }
            // terms of one block decrease monotonically in magnitude; a plain
            // partial sum is accurate there and the compensated sum joins blocks
            for m in start..=end {
                let (jp, jm) = ((m * n + k64) as f64, (m * n - k64) as f64);
                let q = 1.0 / (jp * jm);
                let (sign_p, sign_m) = class.signs(m);
                let wp = sign_p * pow_int(jm * q, exponent);
                let wm = sign_m * pow_int(jp * q, exponent);
                let (pc, ps, mc, ms) =
                    (wp * plus_cos, wp * plus_sin, wm * minus_cos, wm * minus_sin);
                for p in 0..len {
                    acc[p] += (pc * cp[p] + ps * sp[p]) + (mc * cm[p] + ms * sm[p]);
                    let (c, s) = (step_c[p], step_s[p]);
                    let next_cp = cp[p] * c - sp[p] * s;
                    sp[p] = sp[p] * c + cp[p] * s;
                    cp[p] = next_cp;
                    let next_cm = cm[p] * c - sm[p] * s;
                    sm[p] = sm[p] * c + cm[p] * s;
                    cm[p] = next_cm;
                }
            }
            for p in 0..len {
                totals[p] += class.scale * acc[p];
            }
            start = end + 1;
        }
        out.extend(totals.iter().map(CompensatedSum::value));
    }
    out
}

fn kernel_value(
    kind: FactorKind,
    order: SmoothnessOrder,
    grid: &GridSpec,
    k: usize,
    blocks: u64,
    t: f64,
    weights: (f64, f64),
) -> Result<f64> {
    check_mode(grid, k)?;
    if !t.is_finite() {
        return Err(Error::Input("evaluation point is not finite".into()));
    }
    let head = factor(kind, order, grid.len(), k as u64)?;
    let class = AliasClass::new(kind, order, grid.len(), k);
    Ok(alias_series(
        &class,
        head,
        grid.len(),
        k,
        blocks,
        &[reduce_angle(t)],
        0,
        weights.0,
        weights.1,
    )[0])
}

/// `C_k(t) = v_k cos kt + Σ_{m=1..M} [v_{mN+k} cos((mN+k)t) + v_{mN−k} cos((mN−k)t)]`.
pub fn eval_c(
    kind: FactorKind,
    order: SmoothnessOrder,
    grid: &GridSpec,
    k: usize,
    blocks: u64,
    t: f64,
) -> Result<f64> {
    kernel_value(kind, order, grid, k, blocks, t, (1.0, 0.0))
}

/// `S_k(t) = v_k sin kt + Σ_{m=1..M} [v_{mN+k} sin((mN+k)t) − v_{mN−k} sin((mN−k)t)]`.
pub fn eval_s(
    kind: FactorKind,
    order: SmoothnessOrder,
    grid: &GridSpec,
    k: usize,
    blocks: u64,
    t: f64,
) -> Result<f64> {
    kernel_value(kind, order, grid, k, blocks, t, (0.0, 1.0))
}

/// Normalizers `H_1..H_n` for one (family, order, grid, truncation).
#[derive(Clone, Debug)]
pub struct KernelTable {
    grid: GridSpec,
    kind: FactorKind,
    order: SmoothnessOrder,
    policy: TruncationPolicy,
    normalizers: Vec<f64>,
    heads: Vec<f64>,
    classes: Vec<AliasClass>,
}

impl KernelTable {
    pub fn new(
        kind: FactorKind,
        order: SmoothnessOrder,
        grid: GridSpec,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        if policy.blocks == 0 {
            return Err(Error::Domain(
                "truncation needs at least one alias block".into(),
            ));
        }
        if !(policy.tail_bound >= 0.0 && policy.tail_bound.is_finite()) {
            return Err(Error::Domain(
                "tail bound must be finite and nonnegative".into(),
            ));
        }
        let n = grid.harmonics();
        let mut normalizers = Vec::with_capacity(n);
        let mut heads = Vec::with_capacity(n);
        let mut classes = Vec::with_capacity(n);
        for k in 1..=n {
            normalizers.push(normalizer(kind, order, &grid, k, policy.blocks)?);
            heads.push(factor(kind, order, grid.len(), k as u64)?);
            classes.push(AliasClass::new(kind, order, grid.len(), k));
        }
        Ok(Self {
            grid,
            kind,
            order,
            policy,
            normalizers,
            heads,
            classes,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn order(&self) -> SmoothnessOrder {
        self.order
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    /// `H_k`, `k = 1..=n`.
    pub fn normalizer(&self, k: usize) -> f64 {
        self.normalizers[k - 1]
    }

    pub fn normalizers(&self) -> &[f64] {
        &self.normalizers
    }

    /// Normalized mode values at `ts`, reusable for any data on this grid.
    ///
    /// Evaluation is linear in the coefficients, so one basis serves every
    /// sample vector; this is the cheap path when many data sets share a kernel.
    pub fn mode_basis(&self, ts: &[f64], deriv: u32) -> Result<ModeBasis> {
        let r = self.order.get();
        if deriv >= r {
            return Err(Error::DerivativeOrder {
                requested: deriv,
                order: r,
            });
        }
        let reduced: Vec<f64> = ts.iter().map(|&t| reduce_angle(t)).collect();
        let n = self.grid.harmonics();
        let mut cos = vec![0.0; n * ts.len()];
        let mut sin = vec![0.0; n * ts.len()];
        for k in 1..=n {
            let row = (k - 1) * ts.len()..k * ts.len();
            self.add_mode(k, &reduced, deriv, 1.0, 0.0, &mut cos[row.clone()]);
            self.add_mode(k, &reduced, deriv, 0.0, 1.0, &mut sin[row]);
        }
        Ok(ModeBasis {
            points: ts.len(),
            harmonics: n,
            constant: if deriv == 0 { 0.5 } else { 0.0 },
            cos,
            sin,
        })
    }

    /// Adds `[a·C_k^(d)(t) + b·S_k^(d)(t)] / H_k` into `out` for each already reduced `t`.
    pub(crate) fn add_mode(
        &self,
        k: usize,
        ts: &[f64],
        deriv: u32,
        a: f64,
        b: f64,
        out: &mut [f64],
    ) {
        let i = k - 1;
        let series = alias_series(
            &self.classes[i],
            self.heads[i],
            self.grid.len(),
            k,
            self.policy.blocks,
            ts,
            deriv,
            a,
            b,
        );
        for (o, v) in out.iter_mut().zip(series) {
            *o += v / self.normalizers[i];
        }
    }
}

/// `C_k/H_k` and `S_k/H_k` tabulated at a fixed point set.
#[derive(Clone, Debug)]
pub struct ModeBasis {
    points: usize,
    harmonics: usize,
    constant: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl ModeBasis {
    pub fn points(&self) -> usize {
        self.points
    }

    /// Spline values for the given trigonometric coefficients.
    pub fn combine(&self, coeffs: &TrigPolyCoeffs) -> Result<Vec<f64>> {
        if coeffs.harmonics() != self.harmonics {
            return Err(Error::Dimension {
                expected: self.harmonics,
                actual: coeffs.harmonics(),
            });
        }
        let mut out = vec![self.constant * coeffs.a(0); self.points];
        for k in 1..=self.harmonics {
            let row = (k - 1) * self.points..k * self.points;
            let (a, b) = (coeffs.a(k), coeffs.b(k));
            for ((o, c), s) in out
                .iter_mut()
                .zip(&self.cos[row.clone()])
                .zip(&self.sin[row])
            {
                *o += a * c + b * s;
            }
        }
        Ok(out)
    }
}
