//! Convergence factors `v_j(r)` with decay order `O(j^−(1+r))`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three factor families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// `[sinc(πj/N)]^(1+r)`, sign kept.
    V1,
    /// `|sinc(πj/N)|^(1+r)`.
    V2,
    /// `(1/j)^(1+r)`.
    V3,
}

impl FactorKind {
    pub const ALL: [FactorKind; 3] = [FactorKind::V1, FactorKind::V2, FactorKind::V3];

    pub fn tag(self) -> &'static str {
        match self {
            FactorKind::V1 => "v1",
            FactorKind::V2 => "v2",
            FactorKind::V3 => "v3",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FactorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(FactorKind::V1),
            "v2" => Ok(FactorKind::V2),
            "v3" => Ok(FactorKind::V3),
            other => Err(Error::Domain(format!(
                "unknown factor kind {other:?}, expected v1, v2 or v3"
            ))),
        }
    }
}

/// Smoothness order `r ≥ 1`; the spline has `r − 1` continuous derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SmoothnessOrder(u32);

impl SmoothnessOrder {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain(
                "smoothness order r must be at least 1".into(),
            ));
        }
        Ok(Self(r))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Decay exponent `1 + r`.
    pub fn exponent(self) -> i32 {
        self.0 as i32 + 1
    }
}

impl TryFrom<u32> for SmoothnessOrder {
    type Error = Error;

    fn try_from(r: u32) -> Result<Self> {
        Self::new(r)
    }
}

impl From<SmoothnessOrder> for u32 {
    fn from(r: SmoothnessOrder) -> u32 {
        r.0
    }
}

impl fmt::Display for SmoothnessOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sin(x)/x`, with the series `1 − x²/6` near zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `v_j(r)` for the given family on an `N`-node grid.
pub fn factor(kind: FactorKind, order: SmoothnessOrder, nodes: usize, j: u64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("factor index starts at 1".into()));
    }
    if nodes < 3 || nodes.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "node count must be odd and at least 3, got {nodes}"
        )));
    }
    let e = order.exponent();
    let v = match kind {
        FactorKind::V1 => sinc_at(nodes, j).powi(e),
        FactorKind::V2 => sinc_at(nodes, j).abs().powi(e),
        FactorKind::V3 => (1.0 / j as f64).powi(e),
    };
    Ok(v)
}

fn sinc_at(nodes: usize, j: u64) -> f64 {
    if j.is_multiple_of(nodes as u64) {
        // sin(mπ) is exactly zero; the float argument would leave ~1e-16 behind
        return 0.0;
    }
    sinc(PI * j as f64 / nodes as f64)
}

/// Alias-class form of a factor family for mode `k`.
///
/// For `j = mN ± k` the sinc families reduce to
/// `±(N·sin(πk/N)/π)^(1+r) · j^−(1+r)` because `|sin(πj/N)| = sin(πk/N)`.
/// This avoids evaluating `sin` at huge arguments inside the alias sums.
#[derive(Clone, Copy, Debug)]
pub(crate) struct AliasClass {
    /// Common magnitude scale applied to `j^−(1+r)`.
    pub scale: f64,
    /// Whether the signs alternate as in the signed sinc family with odd `1 + r`.
    pub alternating: bool,
    pub exponent: i32,
}

impl AliasClass {
    pub fn new(kind: FactorKind, order: SmoothnessOrder, nodes: usize, k: usize) -> Self {
        let exponent = order.exponent();
        let n = nodes as f64;
        let sinc_scale = || (n * (PI * k as f64 / n).sin() / PI).powi(exponent);
        match kind {
            FactorKind::V3 => Self {
                scale: 1.0,
                alternating: false,
                exponent,
            },
            FactorKind::V2 => Self {
                scale: sinc_scale(),
                alternating: false,
                exponent,
            },
            FactorKind::V1 => Self {
                scale: sinc_scale(),
                alternating: exponent % 2 == 1,
                exponent,
            },
        }
    }

    /// Signs of `v_{mN+k}` and `v_{mN−k}` for block `m ≥ 1`.
    #[inline]
    pub fn signs(&self, m: u64) -> (f64, f64) {
        if !self.alternating {
            (1.0, 1.0)
        } else if m.is_multiple_of(2) {
            (1.0, -1.0)
        } else {
            (-1.0, 1.0)
        }
    }
}
