use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::field::format_rational;
use crate::groebner::HilbertPolynomial;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binom_q(n: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (n - q(i as i64)) / q(i as i64 + 1);
    }
    acc
}

/// Element of `CH*(P^n)_Q = Q[L]/(L^(n+1))`, coefficients in powers of the
/// hyperplane class `L`. `d` records the polarization `H = d·L` for display.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowClass {
    n: usize,
    d: u32,
    coeffs: Vec<BigRational>,
}

impl ChowClass {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            d: 1,
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = BigRational::one();
        c
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Self {
        let mut c = Self::zero(n);
        for (i, v) in coeffs.iter().enumerate().take(n + 1) {
            c.coeffs[i] = q(*v);
        }
        c
    }

    pub fn from_rationals(n: usize, coeffs: Vec<BigRational>) -> Self {
        let mut c = Self::zero(n);
        for (i, v) in coeffs.into_iter().enumerate().take(n + 1) {
            c.coeffs[i] = v;
        }
        c
    }

    /// `k·L` in degree one.
    pub fn line(n: usize, k: i64) -> Self {
        let mut c = Self::zero(n);
        if n >= 1 {
            c.coeffs[1] = q(k);
        }
        c
    }

    /// `e^(t L)`.
    pub fn exp_line(n: usize, t: i64) -> Self {
        let mut c = Self::zero(n);
        for k in 0..=n {
            c.coeffs[k] =
                BigRational::from_integer(BigInt::from(t).pow(k as u32)) / BigRational::from_integer(factorial(k));
        }
        c
    }

    pub fn with_polarization(mut self, d: u32) -> Self {
        self.d = d;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polarization(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients; fails on a fractional entry.
    pub fn to_ints(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if !c.is_integer() {
                    return Err(Error::Input(format!(
                        "non-integral class coefficient {}",
                        format_rational(c)
                    )));
                }
                c.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Input("class coefficient overflows i64".into()))
            })
            .collect()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "classes on different projective spaces");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&q(s))
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    /// Product truncated above degree `n`.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Self::zero(self.n);
        out.d = self.d;
        for i in 0..=self.n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        acc.d = self.d;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::Input("class with zero constant term is not invertible".into()));
        }
        let mut inv = Self::zero(self.n);
        inv.d = self.d;
        inv.coeffs[0] = a0.recip();
        for k in 1..=self.n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &inv.coeffs[k - i];
            }
            inv.coeffs[k] = -s / &a0;
        }
        Ok(inv)
    }

    /// Degree of the top-dimensional part, `∫ α` with `∫ L^n = 1`.
    pub fn integrate(&self) -> BigRational {
        self.coeffs[self.n].clone()
    }

    /// Degree-`k` part only.
    pub fn part(&self, k: usize) -> Self {
        let mut c = Self::zero(self.n);
        c.d = self.d;
        c.coeffs[k] = self.coeffs[k].clone();
        c
    }
}

/// Classes print as `a0 + a1*L + a2*L^2`, with ` (H = dL)` appended when
/// the polarization is not `L` itself.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = format_rational(&c.abs());
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{k}"),
            };
            match (abs.as_str(), var.is_empty()) {
                (a, true) => s.push_str(a),
                ("1", false) => s.push_str(&var),
                (a, false) => {
                    s.push_str(a);
                    s.push('*');
                    s.push_str(&var);
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.d != 1 {
            s.push_str(&format!(" (H = {}L)", self.d));
        }
        write!(f, "{s}")
    }
}

impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(ser)
    }
}

/// Rank and total Chern class of a coherent sheaf on `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernVector {
    pub rank: i64,
    pub total: ChowClass,
}

impl ChernVector {
    pub fn new(rank: i64, total: ChowClass) -> Result<Self> {
        if !total.is_integral() || total.coeff(0) != &BigRational::one() {
            return Err(Error::Input(format!(
                "total Chern class must be integral with c0 = 1, got {total}"
            )));
        }
        Ok(Self { rank, total })
    }

    pub fn trivial(n: usize, rank: i64) -> Self {
        Self {
            rank,
            total: ChowClass::one(n),
        }
    }

    /// `O(k)` in `L` units.
    pub fn line_bundle(n: usize, k: i64) -> Self {
        Self {
            rank: 1,
            total: ChowClass::one(n).add(&ChowClass::line(n, k)),
        }
    }

    pub fn n(&self) -> usize {
        self.total.n()
    }

    pub fn c(&self, k: usize) -> BigInt {
        self.total.coeff(k).to_integer()
    }

    pub fn c_i64(&self, k: usize) -> i64 {
        self.c(k).to_i64().expect("Chern class overflow")
    }

    pub fn with_polarization(mut self, d: u32) -> Self {
        self.total = self.total.with_polarization(d);
        self
    }

    /// Whitney product: the class of an extension of `o` by `self`.
    pub fn whitney(&self, o: &Self) -> Self {
        Self {
            rank: self.rank + o.rank,
            total: self.total.mul(&o.total),
        }
    }

    /// The class `c` with `c · c(sub) = c(self)`, i.e. the quotient of an
    /// exact sequence `0 → sub → self → quotient → 0`.
    pub fn quotient_by(&self, sub: &Self) -> Self {
        Self {
            rank: self.rank - sub.rank,
            total: self.total.mul(&sub.total.inverse().expect("c0 = 1")),
        }
    }

    /// Twist by `O(t)` (`t` in `L` units) via Chern roots:
    /// `c_k(E(t)) = sum_i binom(r - i, k - i) c_i t^(k-i)`.
    pub fn twist(&self, t: i64) -> Self {
        let n = self.n();
        let r = q(self.rank);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            for i in 0..=k {
                let b = binom_q(&(&r - q(i as i64)), k - i);
                *slot += b * self.total.coeff(i) * q(t).pow((k - i) as i32);
            }
        }
        Self {
            rank: self.rank,
            total: ChowClass::from_rationals(n, coeffs).with_polarization(self.total.polarization()),
        }
    }

    pub fn dual(&self) -> Self {
        let n = self.n();
        let coeffs = (0..=n)
            .map(|k| {
                if k % 2 == 1 {
                    -self.total.coeff(k)
                } else {
                    self.total.coeff(k).clone()
                }
            })
            .collect();
        Self {
            rank: self.rank,
            total: ChowClass::from_rationals(n, coeffs).with_polarization(self.total.polarization()),
        }
    }

    /// Slope `c1·H^(n-1) / rank` with `H = d·L`.
    pub fn slope(&self, d: u32) -> Option<BigRational> {
        if self.rank == 0 {
            return None;
        }
        let deg = self.total.coeff(1) * q((d as i64).pow(self.n() as u32 - 1));
        Some(deg / q(self.rank))
    }

    /// Chern character by Newton's identities.
    pub fn ch(&self) -> ChowClass {
        ch_from_c(self)
    }

    pub fn format(&self) -> String {
        format!("rank {}, c = {}", self.rank, self.total)
    }
}

impl Serialize for ChernVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.total.coeffs().iter().map(format_rational).collect();
        v.serialize(ser)
    }
}

/// `ch = rank + sum_k p_k / k!`, with power sums `p_k` from the Chern classes
/// through `p_k = sum_{i<k} (-1)^(i-1) c_i p_(k-i) + (-1)^(k-1) k c_k`.
pub fn ch_from_c(c: &ChernVector) -> ChowClass {
    let n = c.n();
    let e: Vec<BigRational> = (0..=n).map(|k| c.total.coeff(k).clone()).collect();
    let mut p = vec![BigRational::zero(); n + 1];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..k {
            let term = &e[i] * &p[k - i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        let last = q(k as i64) * &e[k];
        if k % 2 == 1 {
            s += last;
        } else {
            s -= last;
        }
        p[k] = s;
    }
    let mut coeffs = vec![q(c.rank)];
    for (k, pk) in p.iter().enumerate().skip(1) {
        coeffs.push(pk / BigRational::from_integer(factorial(k)));
    }
    ChowClass::from_rationals(n, coeffs).with_polarization(c.total.polarization())
}

/// Inverse of [`ch_from_c`]: `c_k = (1/k) sum_{i=1..k} (-1)^(i-1) c_(k-i) p_i`
/// with `p_i = i! ch_i`. Recovered classes must be integral.
pub fn c_from_ch(ch: &ChowClass) -> Result<ChernVector> {
    let n = ch.n();
    let rank = ch.coeff(0);
    if !rank.is_integer() {
        return Err(Error::Input(format!(
            "rank {} is not an integer",
            format_rational(rank)
        )));
    }
    let p: Vec<BigRational> = (0..=n)
        .map(|k| ch.coeff(k) * BigRational::from_integer(factorial(k)))
        .collect();
    let mut e = vec![BigRational::zero(); n + 1];
    e[0] = BigRational::one();
    for k in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e[k] = s / q(k as i64);
    }
    let total = ChowClass::from_rationals(n, e).with_polarization(ch.polarization());
    if !total.is_integral() {
        return Err(Error::Input(format!(
            "Chern classes recovered from ch are not integral: {total}"
        )));
    }
    Ok(ChernVector {
        rank: rank.to_integer().to_i64().expect("rank overflow"),
        total,
    })
}

/// `Td(P^n) = (L / (1 - e^(-L)))^(n+1)`.
pub fn todd_class(n: usize) -> ChowClass {
    // (1 - e^(-L)) / L = sum_k (-1)^k L^k / (k+1)!
    let coeffs: Vec<BigRational> = (0..=n)
        .map(|k| {
            let v = BigRational::from_integer(BigInt::one()) / BigRational::from_integer(factorial(k + 1));
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let series = ChowClass::from_rationals(n, coeffs);
    series.inverse().expect("unit constant term").pow(n as u32 + 1)
}

/// `χ(F) = ∫ ch(F)·Td(P^n)`.
pub fn euler_characteristic(ch: &ChowClass) -> BigRational {
    ch.mul(&todd_class(ch.n())).integrate()
}

/// `χ(F(t))`.
pub fn hilbert_value(ch: &ChowClass, t: i64) -> BigRational {
    euler_characteristic(&ch.mul(&ChowClass::exp_line(ch.n(), t)))
}

/// Class in `K(P^n)` as Hilbert-polynomial coefficients in the basis
/// `binom(t+i, i)`, `i = 0..=n`; `binom(t+i, i)` is the Hilbert polynomial
/// of a linear `P^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KClass {
    pub coeffs: Vec<i64>,
}

impl KClass {
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_hilbert_polynomial(hp: &HilbertPolynomial) -> Self {
        Self {
            coeffs: hp.binomial_coefficients(),
        }
    }

    /// Reads `a_i = (∇^i P)(-1)` from values of `P(t) = χ(F(t))`.
    pub fn from_values(n: usize, p: impl Fn(i64) -> BigRational) -> Result<Self> {
        let mut cur: Vec<BigRational> = (0..=n as i64).map(|j| p(-1 - j)).collect();
        let mut out = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let a = &cur[0];
            if !a.is_integer() {
                return Err(Error::Input(format!(
                    "non-integral K-class coefficient {}",
                    format_rational(a)
                )));
            }
            out.push(a.to_integer().to_i64().expect("K-class overflow"));
            cur = cur.windows(2).map(|w| &w[0] - &w[1]).collect();
        }
        Ok(Self { coeffs: out })
    }

    /// By Hirzebruch–Riemann–Roch.
    pub fn from_ch(ch: &ChowClass) -> Result<Self> {
        Self::from_values(ch.n(), |t| hilbert_value(ch, t))
    }

    /// `O(k)`: Hilbert polynomial `binom(t + k + n, n)`.
    pub fn line_bundle(n: usize, k: i64) -> Self {
        Self::from_values(n, |t| binom_q(&q(t + k + n as i64), n)).expect("integral")
    }

    /// `ch = sum_i a_i (1 - e^(-L))^(n-i)`.
    pub fn ch(&self) -> ChowClass {
        let n = self.n();
        let base = ChowClass::one(n).sub(&ChowClass::exp_line(n, -1));
        let mut acc = ChowClass::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = acc.add(&base.pow((n - i) as u32).scale_int(*a));
        }
        acc
    }

    /// `P(t) = sum a_i binom(t+i, i)`.
    pub fn eval(&self, t: i64) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| q(*a) * binom_q(&q(t + i as i64), i))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| *a == 0)
    }

    /// Degree of the Hilbert polynomial, i.e. the dimension of the support.
    pub fn support_dim(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|a| *a != 0)
    }
}

/// Extended Euclid: `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let (qt, r) = r0.div_mod_floor(&r1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}
