use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector; positions past the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            debug_assert!(m.exps[i] >= other.exps[i]);
            m.exps[i] -= other.exps[i];
        }
        m
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.divides(self).then(|| self.div(other))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].min(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut m = *self;
        m.exps.swap(i, j);
        m
    }

    pub fn fmt_with(&self, nvars: usize) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{}", self.fmt_with(last))
    }
}

/// Monomial order. Both refine total degree only in the graded case; lex
/// is pure lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..nvars).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// All monomials of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.exps[i] = left as u16;
            out.push(*cur);
            cur.exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur.exps[i] = e as u16;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur.exps[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(nvars, 0, d, &mut Monomial::one(), &mut out);
    out
}

/// Binomial coefficient as u64 (panics on overflow).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}
