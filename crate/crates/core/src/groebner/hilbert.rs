use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::Field;
use crate::groebner::buchberger::GroebnerBasis;
use crate::poly::{monomials_of_degree, Monomial};

/// Hilbert series `N(t) / (1-t)^nvars` of a graded quotient module, with the
/// numerator kept as a Laurent polynomial `sum coeffs[k] t^(low + k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub low: i64,
    pub coeffs: Vec<i64>,
}

/// Hilbert polynomial of a graded module, evaluated exactly from the series.
/// Equality compares polynomials, not the series they came from.
#[derive(Debug, Clone)]
pub struct HilbertPolynomial {
    series: HilbertSeries,
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens.iter() {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(*m);
        }
    }
    *gens = out;
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn shift(a: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; k];
    out.extend_from_slice(a);
    trim(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Numerator `N` of `HS(R/J) = N(t)/(1-t)^n` for a monomial ideal `J`,
/// by pivoting on a variable power taken from a mixed generator.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let mut gens = gens.to_vec();
    minimalize(&mut gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1];
        for m in &gens {
            let mut f = vec![0; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // a generator involving two or more variables exists, else the pure
    // powers would be coprime
    let counts: Vec<usize> = (0..nvars)
        .map(|x| gens.iter().filter(|m| m.exp(x) > 0).count())
        .collect();
    let (var, m) = gens
        .iter()
        .filter(|m| (0..nvars).filter(|&x| m.exp(x) > 0).count() >= 2)
        .flat_map(|m| (0..nvars).filter(move |&x| m.exp(x) > 0).map(move |x| (x, *m)))
        .max_by_key(|(x, m)| (counts[*x], std::cmp::Reverse(m.exp(*x))))
        .expect("mixed generator");
    let e = m.exp(var);
    let mut pe = Monomial::one();
    for _ in 0..e {
        pe = pe.mul(&Monomial::var(var));
    }
    let mut plus = gens.clone();
    plus.push(pe);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&g.gcd(&pe))).collect();
    let a = monomial_numerator(&plus, nvars);
    let b = monomial_numerator(&colon, nvars);
    poly_add(&a, &shift(&b, e as usize))
}

/// Number of degree-`k` monomials outside the monomial ideal `leads`.
pub fn staircase_count(leads: &[Monomial], nvars: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    monomials_of_degree(nvars, k as u32)
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// `binom(x, r)` as a polynomial in `x`, valid for negative `x`.
fn binom_poly(x: i64, r: usize) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..r as i128 {
        num *= x as i128 - i;
        den *= i + 1;
    }
    num / den
}

impl HilbertSeries {
    /// Series of `F / N` where `gb` is a Gröbner basis of `N` inside `F`.
    pub fn of_quotient<F: Field>(gb: &GroebnerBasis<F>) -> Self {
        let module = gb.module();
        let nvars = module.ring.nvars();
        let low = module.shifts.iter().copied().min().unwrap_or(0);
        let mut coeffs: Vec<i64> = Vec::new();
        for (pos, s) in module.shifts.iter().enumerate() {
            let n = monomial_numerator(&gb.leading_monomials_at(pos), nvars);
            let off = (s - low) as usize;
            if coeffs.len() < off + n.len() {
                coeffs.resize(off + n.len(), 0);
            }
            for (i, c) in n.iter().enumerate() {
                coeffs[off + i] += c;
            }
        }
        Self {
            nvars,
            low,
            coeffs: trim(coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Hilbert function value in degree `k`.
    pub fn function(&self, k: i64) -> i64 {
        let r = self.nvars - 1;
        let mut acc: i128 = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i64;
            if k - e >= 0 {
                acc += *c as i128 * binom_poly(k - e + r as i64, r);
            }
        }
        acc as i64
    }

    /// Order of the pole at `t = 1` and the reduced numerator `Q(1)`.
    fn pole(&self) -> (usize, i64) {
        let mut q = self.coeffs.clone();
        let mut a = 0;
        loop {
            let val: i64 = q.iter().sum();
            if val != 0 || q.is_empty() {
                return (a, val);
            }
            // divide by (1 - t): q = (1-t) * s, s_k = sum_{j<=k} q_j
            let mut s = Vec::with_capacity(q.len());
            let mut run = 0;
            for c in &q[..q.len() - 1] {
                run += c;
                s.push(run);
            }
            q = trim(s);
            a += 1;
        }
    }

    /// Krull dimension of the module; `None` for the zero module.
    pub fn krull_dim(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.nvars - self.pole().0)
    }

    /// Multiplicity (degree) of the module.
    pub fn multiplicity(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.pole().1
        }
    }

    /// Smallest `k0` with `HF(k) = HP(k)` for every `k >= k0`.
    pub fn regularity_index(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.low + self.coeffs.len() as i64 - 1 - (self.nvars as i64 - 1)
    }

    pub fn polynomial(&self) -> HilbertPolynomial {
        HilbertPolynomial { series: self.clone() }
    }
}

impl PartialEq for HilbertPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.series.nvars == other.series.nvars && self.binomial_coefficients() == other.binomial_coefficients()
    }
}

impl Eq for HilbertPolynomial {}

impl HilbertPolynomial {
    pub fn eval(&self, k: i64) -> i128 {
        let r = self.series.nvars - 1;
        let mut acc: i128 = 0;
        for (i, c) in self.series.coeffs.iter().enumerate() {
            let e = self.series.low + i as i64;
            acc += *c as i128 * binom_poly(k - e + r as i64, r);
        }
        acc
    }

    /// Degree in `k`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.series.krull_dim().and_then(|d| d.checked_sub(1))
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficients `a_i` with `P(t) = sum_i a_i binom(t + i, i)`, read off as
    /// `a_i = (nabla^i P)(-1)`; length `nvars`.
    pub fn binomial_coefficients(&self) -> Vec<i64> {
        let n = self.series.nvars;
        // values at -1 - j for j = 0..n
        let vals: Vec<i128> = (0..n as i64).map(|j| self.eval(-1 - j)).collect();
        let mut out = Vec::with_capacity(n);
        let mut cur = vals;
        for _ in 0..n {
            out.push(cur[0] as i64);
            cur = cur.windows(2).map(|w| w[0] - w[1]).collect();
        }
        out
    }

    /// Coefficients in powers of `k`, lowest first.
    pub fn power_coefficients(&self) -> Vec<BigRational> {
        // interpolate through k = 0..nvars-1
        let n = self.series.nvars;
        let xs: Vec<BigRational> = (0..n).map(|k| BigRational::from_integer(BigInt::from(k))).collect();
        let ys: Vec<BigRational> = (0..n)
            .map(|k| BigRational::from_integer(BigInt::from(self.eval(k as i64))))
            .collect();
        let mut coeffs = vec![BigRational::zero(); n];
        for i in 0..n {
            // Lagrange basis polynomial for node i
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * &xs[j];
                }
                basis = next;
                denom *= &xs[i] - &xs[j];
            }
            for (k, b) in basis.iter().enumerate() {
                coeffs[k] += b * &ys[i] / &denom;
            }
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        coeffs
    }

    pub fn format(&self) -> String {
        let cs = self.power_coefficients();
        let mut parts = Vec::new();
        for (i, c) in cs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = crate::exact::field::format_rational(c);
            parts.push(match i {
                0 => s,
                1 => format!("{s}*t"),
                _ => format!("{s}*t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_quotient(self)
    }

    /// `dim_k (F/N)_k` by counting standard monomials.
    pub fn hilbert_function(&self, k: i64) -> u64 {
        let module = self.module();
        let nvars = module.ring.nvars();
        module
            .shifts
            .iter()
            .enumerate()
            .map(|(pos, s)| staircase_count(&self.leading_monomials_at(pos), nvars, k - s))
            .sum()
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.hilbert_series().polynomial()
    }

    /// Krull dimension of the quotient; `None` when it is zero.
    pub fn krull_dim(&self) -> Option<usize> {
        self.hilbert_series().krull_dim()
    }
}
