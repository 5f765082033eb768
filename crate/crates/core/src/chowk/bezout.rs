use serde::Serialize;

use crate::chowk::classes::extended_gcd;
use crate::error::{Error, Result};

/// Coefficients with `a(m1²-1) + b(m2²-1) = 1`. Since
/// `c2(M_{Z',m}) = (m²-1)·H²` for a single point `Z'`, they express `H²` as
/// an integral combination of second Chern classes of two kernel bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BezoutCertificate {
    pub m1: i64,
    pub m2: i64,
    pub a: i64,
    pub b: i64,
}

impl BezoutCertificate {
    pub fn holds(&self) -> bool {
        self.a * (self.m1 * self.m1 - 1) + self.b * (self.m2 * self.m2 - 1) == 1
    }
}

pub fn bezout_h2(m1: i64, m2: i64) -> Result<BezoutCertificate> {
    if m1 < 2 || m2 < 2 {
        return Err(Error::Input(format!("twists must be at least 2, got ({m1}, {m2})")));
    }
    let (x, y) = (
        m1.checked_mul(m1)
            .ok_or_else(|| Error::Input("twist too large".into()))?
            - 1,
        m2.checked_mul(m2)
            .ok_or_else(|| Error::Input("twist too large".into()))?
            - 1,
    );
    let (g, a, b) = extended_gcd(x, y);
    if g != 1 {
        return Err(Error::Coprimality { gcd: g });
    }
    let cert = BezoutCertificate { m1, m2, a, b };
    assert!(cert.holds());
    Ok(cert)
}
