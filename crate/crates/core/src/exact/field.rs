use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::ExactScalar;

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl std::str::FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldDescriptor::Rational);
        }
        let digits = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix("f_"))
            .or_else(|| t.strip_prefix("ZZ/"))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Input(format!("unrecognised field `{s}`")))?;
        check_prime(p)?;
        Ok(FieldDescriptor::Prime(p))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts odd primes below 2^31 so that products fit in a u64.
pub fn check_prime(p: u64) -> Result<()> {
    if p <= 2 || p >= (1 << 31) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// An exact coefficient field.
///
/// Implementations are cheap to clone and carry whatever runtime data the
/// arithmetic needs (the modulus, for prime fields).
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn to_scalar(&self, a: &Self::Elem) -> ExactScalar;
    fn from_scalar(&self, s: &ExactScalar) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// In-place reduction of `rows` to reduced row echelon form.
    /// Returns the pivot column of each nonzero row, in order.
    fn rref(&self, rows: &mut Vec<Vec<Self::Elem>>, cols: usize) -> Vec<usize> {
        gauss_rref(self, rows, cols)
    }

    /// Rank without back substitution.
    fn rank_of(&self, rows: &mut Vec<Vec<Self::Elem>>, cols: usize) -> usize {
        gauss_forward(self, rows, cols)
    }
}

fn gauss_forward<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for k in c..cols {
                if !f.is_zero(&prow[k]) {
                    row[k] = f.sub(&row[k], &f.mul(&factor, &prow[k]));
                }
            }
        }
        r += 1;
    }
    r
}

fn gauss_rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]);
        for x in &mut rows[r][c..cols] {
            *x = f.mul(x, &inv);
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for k in c..cols {
                if !f.is_zero(&prow[k]) {
                    row[k] = f.sub(&row[k], &f.mul(&factor, &prow[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// The rational numbers, with fraction-free elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_scalar(&self, a: &BigRational) -> ExactScalar {
        ExactScalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &ExactScalar) -> Result<BigRational> {
        match s {
            ExactScalar::Rational(q) => Ok(q.clone()),
            ExactScalar::ModP { p, .. } => Err(Error::VariantMismatch(format!(
                "expected a rational, found an element of F_{p}"
            ))),
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn rref(&self, rows: &mut Vec<Vec<BigRational>>, cols: usize) -> Vec<usize> {
        let mut ints = integral_rows(rows);
        let pivots = bareiss(&mut ints, cols);
        // Back substitution on the integral echelon form; only this last
        // step introduces denominators.
        let r = pivots.len();
        let mut out: Vec<Vec<BigRational>> = ints
            .into_iter()
            .take(r)
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for i in (0..r).rev() {
            let c = pivots[i];
            let inv = out[i][c].recip();
            for x in out[i][c..cols].iter_mut().filter(|x| !x.is_zero()) {
                *x = &*x * &inv;
            }
            let prow = out[i].clone();
            for row in out.iter_mut().take(i) {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for k in c..cols {
                    if !prow[k].is_zero() {
                        row[k] = &row[k] - &factor * &prow[k];
                    }
                }
            }
        }
        *rows = out;
        pivots
    }

    fn rank_of(&self, rows: &mut Vec<Vec<BigRational>>, cols: usize) -> usize {
        let mut ints = integral_rows(rows);
        bareiss(&mut ints, cols).len()
    }
}

/// Clears denominators row by row.
fn integral_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination over the integers.
///
/// Every division performed is exact, so all intermediate entries stay
/// integral. Returns pivot columns; rows are left in echelon form with the
/// nonzero rows first.
pub fn bareiss(rows: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let p = prow[c].clone();
        for row in tail.iter_mut() {
            let a = row[c].clone();
            for k in c..cols {
                let v = &p * &row[k] - &a * &prow[k];
                row[k] = if prev.is_one() { v } else { v / &prev };
            }
        }
        // Columns left of c in the remaining rows are zero already; earlier
        // columns of later rows were eliminated in previous steps.
        prev = p;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The prime field F_p for an odd prime p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: 32003 }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_scalar(&self, a: &u64) -> ExactScalar {
        ExactScalar::ModP { value: *a, p: self.p }
    }
    fn from_scalar(&self, s: &ExactScalar) -> Result<u64> {
        match s {
            ExactScalar::ModP { value, p } if *p == self.p => Ok(*value),
            ExactScalar::ModP { p, .. } => Err(Error::VariantMismatch(format!(
                "expected an element of F_{}, found F_{p}",
                self.p
            ))),
            ExactScalar::Rational(_) => Err(Error::VariantMismatch(format!(
                "expected an element of F_{}, found a rational",
                self.p
            ))),
        }
    }
    fn format_elem(&self, a: &u64) -> String {
        // Symmetric representative reads better in printed polynomials.
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
}

/// Integer part of a rational, when it is one.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// `|q|` as a string with sign, e.g. "-9/8".
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", q.numer().abs(), q.denom())
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// Plain Gaussian elimination with field division, independent of the
    /// fraction-free path.
    pub fn naive_rank<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], cols: usize) -> usize {
        gauss_forward(f, rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.format_elem(&6), "-1");
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn parses_descriptors() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rational);
        assert_eq!(
            "F_32003".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Prime(32003)
        );
        assert_eq!("101".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(101));
        assert!("F_100".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn bareiss_keeps_entries_integral() {
        let mut rows = vec![
            vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)],
            vec![BigInt::from(4), BigInt::from(1), BigInt::from(5)],
            vec![BigInt::from(6), BigInt::from(4), BigInt::from(6)],
        ];
        let piv = bareiss(&mut rows, 3);
        // third row is the sum of the first two
        assert_eq!(piv, vec![0, 1]);
        // last pivot of a full-rank Bareiss run is the determinant
        let mut m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(bareiss(&mut m, 3), vec![0, 1, 2]);
        assert_eq!(m[2][2], BigInt::from(6));
    }
}
