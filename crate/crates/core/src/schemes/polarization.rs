use serde::Serialize;

use crate::error::{Error, Result};

/// `H = d·L` on `P^n`, with `C` the complete intersection of `n - 1`
/// general members of `|H|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Polarization {
    pub n: usize,
    pub d: u32,
    pub genus: i64,
}

impl Polarization {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("polarization multiplier must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::Input("ambient dimension must be at least 2".into()));
        }
        Ok(Self {
            n,
            d,
            genus: curve_genus(n, d),
        })
    }

    /// `deg C = d^(n-1)` as a curve in `P^n`.
    pub fn curve_degree(&self) -> i64 {
        (self.d as i64).pow(self.n as u32 - 1)
    }

    /// `H^n = d^n` points.
    pub fn top_degree(&self) -> i64 {
        (self.d as i64).pow(self.n as u32)
    }

    /// Set when `g(C) < 1`; the curve-side arguments then run in warning mode.
    pub fn low_genus(&self) -> bool {
        self.genus < 1
    }

    /// `h^0(C, L)` for a line bundle of degree `deg` on `C` by Riemann–Roch,
    /// provided `deg > 2g - 2`.
    pub fn riemann_roch(&self, deg: i64, rank: i64) -> Result<i64> {
        let bound = 2 * self.genus - 2;
        if deg <= bound * rank {
            return Err(Error::Speciality {
                degree: deg,
                bound: bound * rank,
            });
        }
        Ok(deg + rank * (1 - self.genus))
    }

    /// `h^0(C, O_C(mH))`.
    pub fn curve_sections(&self, m: i64) -> Result<i64> {
        if m < 1 {
            return Err(Error::Input("twist m must be at least 1".into()));
        }
        self.riemann_roch(m * self.top_degree(), 1)
    }
}

/// Genus of a complete intersection of `n - 1` hypersurfaces of degree `d`
/// in `P^n`: `2g - 2 = d^(n-1) ((n-1) d - n - 1)`.
pub fn curve_genus(n: usize, d: u32) -> i64 {
    let d = d as i64;
    let n = n as i64;
    d.pow(n as u32 - 1) * ((n - 1) * d - n - 1) / 2 + 1
}
