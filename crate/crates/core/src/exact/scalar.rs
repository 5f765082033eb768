use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::field::{check_prime, format_rational, Field, FieldDescriptor, PrimeField};

/// A field element tagged with the field it lives in.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// invariant `BigRational` maintains); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    ModP { value: u64, p: u64 },
}

impl ExactScalar {
    pub fn rational(num: i64, den: i64) -> Self {
        ExactScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(v: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn mod_p(v: i64, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(ExactScalar::ModP {
            value: v.rem_euclid(p as i64) as u64,
            p,
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            ExactScalar::Rational(_) => FieldDescriptor::Rational,
            ExactScalar::ModP { p, .. } => FieldDescriptor::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(q) => q.is_zero(),
            ExactScalar::ModP { value, .. } => *value == 0,
        }
    }

    fn binary(
        &self,
        other: &Self,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        m: impl Fn(&PrimeField, &u64, &u64) -> u64,
    ) -> Result<Self> {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => Ok(ExactScalar::Rational(q(a, b))),
            (ExactScalar::ModP { value: a, p }, ExactScalar::ModP { value: b, p: p2 }) if p == p2 => {
                let f = PrimeField::new(*p)?;
                Ok(ExactScalar::ModP {
                    value: m(&f, a, b),
                    p: *p,
                })
            }
            _ => Err(Error::VariantMismatch(format!(
                "cannot combine {} and {}",
                self.field(),
                other.field()
            ))),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(a, b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b, |f, a, b| f.sub(a, b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(a, b))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Input("division by zero".into()));
        }
        self.binary(other, |a, b| a / b, |f, a, b| f.div(a, b))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{}", format_rational(q)),
            ExactScalar::ModP { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}

/// Converts a slice of scalars into elements of `field`, failing on any
/// variant mismatch.
pub fn lift_all<F: Field>(field: &F, xs: &[ExactScalar]) -> Result<Vec<F::Elem>> {
    xs.iter().map(|s| field.from_scalar(s)).collect()
}

/// Field shared by all scalars, or a mismatch error.
pub fn common_field(xs: &[ExactScalar]) -> Result<Option<FieldDescriptor>> {
    let mut seen: Option<FieldDescriptor> = None;
    for s in xs {
        let d = s.field();
        match seen {
            None => seen = Some(d),
            Some(prev) if prev != d => return Err(Error::VariantMismatch(format!("mixed {prev} and {d} entries"))),
            _ => {}
        }
    }
    Ok(seen)
}
