//! Uniform periodic grids on `[0, 2π)`.
//!
//! Two node families exist for an odd node count `N = 2n + 1`:
//! the aligned grid with nodes `2π(i−1)/N` and the half-step grid with nodes
//! `π(2i−1)/N`, `i = 1..N`. Nodes are stored 0-indexed.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid indicator `I`: which of the two node families is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Indicator {
    /// `I = 0`, first node at 0.
    Aligned,
    /// `I = 1`, every node shifted by half a step.
    HalfStep,
}

impl Indicator {
    pub fn as_u8(self) -> u8 {
        match self {
            Indicator::Aligned => 0,
            Indicator::HalfStep => 1,
        }
    }

    /// `(−1)^(m·I)`.
    #[inline]
    pub fn alias_sign(self, m: u64) -> f64 {
        match self {
            Indicator::HalfStep if m % 2 == 1 => -1.0,
            _ => 1.0,
        }
    }
}

impl TryFrom<u8> for Indicator {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Indicator::Aligned),
            1 => Ok(Indicator::HalfStep),
            other => Err(Error::Domain(format!(
                "grid indicator must be 0 or 1, got {other}"
            ))),
        }
    }
}

impl From<Indicator> for u8 {
    fn from(value: Indicator) -> u8 {
        value.as_u8()
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A validated uniform periodic grid: odd `N ≥ 3` plus an indicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    nodes: usize,
    indicator: Indicator,
}

impl GridSpec {
    pub fn new(nodes: usize, indicator: Indicator) -> Result<Self> {
        if nodes < 3 || nodes.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "node count must be odd and at least 3, got {nodes}"
            )));
        }
        Ok(Self { nodes, indicator })
    }

    /// Node count `N`.
    pub fn len(&self) -> usize {
        self.nodes
    }

    /// Always false; a grid has at least three nodes.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Harmonic count `n = (N − 1) / 2`.
    pub fn harmonics(&self) -> usize {
        (self.nodes - 1) / 2
    }

    pub fn indicator(&self) -> Indicator {
        self.indicator
    }

    /// Distance between consecutive nodes, `2π/N`.
    pub fn step(&self) -> f64 {
        TAU / self.nodes as f64
    }

    /// Node `i` (0-indexed), computed directly rather than by accumulation.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.nodes);
        let n = self.nodes as f64;
        match self.indicator {
            Indicator::Aligned => TAU * i as f64 / n,
            Indicator::HalfStep => PI * (2 * i + 1) as f64 / n,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.nodes).map(|i| self.node(i)).collect()
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}
