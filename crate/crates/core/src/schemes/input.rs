//! Subscheme input files.
//!
//! ```text
//! # comment
//! ambient: 2
//! field: F_32003          (or Q, or a bare prime)
//! polarization: 3         (optional)
//! points:                 (one point per line)
//! 1 0 0
//! (0:1:0)
//! 1/2, 3, 1
//! ```
//!
//! or `ideal:` followed by one polynomial per line. Coordinates are integers
//! or fractions separated by whitespace, commas or colons; surrounding
//! parentheses are optional.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, FieldDescriptor};
use crate::poly::{parse_poly, MonomialOrder, PolyRing};
use crate::schemes::subscheme::SubschemeData;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputBody {
    Points(Vec<Vec<String>>),
    Ideal(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubschemeInput {
    pub ambient: usize,
    pub field: Option<FieldDescriptor>,
    pub polarization: Option<u32>,
    pub body: InputBody,
    /// File line of each data row.
    #[serde(skip)]
    pub lines: Vec<usize>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rational(s: &str, line: usize) -> Result<BigRational> {
    let bad = || perr(line, format!("bad coordinate '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
    let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(perr(line, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses the text of an input file.
pub fn parse_input(text: &str) -> Result<SubschemeInput> {
    let mut ambient = None;
    let mut field = None;
    let mut polarization = None;
    let mut body: Option<InputBody> = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            let is_header = matches!(key.as_str(), "ambient" | "field" | "polarization" | "points" | "ideal");
            if is_header {
                if body.is_some() && key != "points" && key != "ideal" {
                    return Err(perr(line, format!("header '{key}' after the data section")));
                }
                match key.as_str() {
                    "ambient" => {
                        let n: usize = value.parse().map_err(|_| perr(line, "ambient must be an integer"))?;
                        if !(2..=7).contains(&n) {
                            return Err(perr(line, "ambient dimension must lie in 2..=7"));
                        }
                        ambient = Some(n);
                    }
                    "field" => field = Some(FieldDescriptor::from_str(value).map_err(|e| perr(line, e.to_string()))?),
                    "polarization" => {
                        polarization = Some(
                            value
                                .parse()
                                .map_err(|_| perr(line, "polarization must be a positive integer"))?,
                        )
                    }
                    "points" | "ideal" => {
                        if body.is_some() {
                            return Err(perr(line, "only one data section is allowed"));
                        }
                        if !value.is_empty() {
                            return Err(perr(line, "data starts on the next line"));
                        }
                        body = Some(if key == "points" {
                            InputBody::Points(Vec::new())
                        } else {
                            InputBody::Ideal(Vec::new())
                        });
                    }
                    _ => unreachable!(),
                }
                continue;
            }
        }
        if body.is_some() {
            lines.push(line);
        }
        match body.as_mut() {
            None => return Err(perr(line, format!("unexpected line '{content}'"))),
            Some(InputBody::Ideal(v)) => v.push(content.to_string()),
            Some(InputBody::Points(v)) => {
                let inner = content.trim_start_matches('(').trim_end_matches(')');
                let coords: Vec<String> = inner
                    .split(|c: char| c.is_whitespace() || c == ',' || c == ':')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.to_string())
                    .collect();
                for c in &coords {
                    parse_rational(c, line)?;
                }
                v.push(coords);
            }
        }
    }
    let ambient = ambient.ok_or_else(|| perr(0, "missing 'ambient:' header"))?;
    let body = body.ok_or_else(|| perr(0, "missing 'points:' or 'ideal:' section"))?;
    if let InputBody::Points(pts) = &body {
        for (i, p) in pts.iter().enumerate() {
            if p.len() != ambient + 1 {
                return Err(perr(
                    lines[i],
                    format!("point {} has {} coordinates, expected {}", i + 1, p.len(), ambient + 1),
                ));
            }
        }
    }
    Ok(SubschemeInput {
        ambient,
        field,
        polarization,
        body,
        lines,
    })
}

impl SubschemeInput {
    /// Builds the subscheme over `field`, which must match a declared field.
    pub fn build<F: Field>(&self, field: F, label: &str) -> Result<SubschemeData<F>> {
        if let Some(decl) = self.field {
            if decl != field.descriptor() {
                return Err(Error::VariantMismatch(format!(
                    "input declares {decl}, run uses {}",
                    field.descriptor()
                )));
            }
        }
        let ring = PolyRing::new(field.clone(), self.ambient + 1, MonomialOrder::GrevLex)?;
        match &self.body {
            InputBody::Ideal(lines) => {
                let gens = lines
                    .iter()
                    .zip(&self.lines)
                    .map(|(l, &at)| {
                        parse_poly(&ring, l).map_err(|e| match e {
                            Error::Parse { message, .. } => perr(at, message),
                            e => e,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                SubschemeData::from_ideal(&ring, &gens, label)
            }
            InputBody::Points(rows) => {
                let mut pts = Vec::with_capacity(rows.len());
                for row in rows {
                    let mut p = Vec::with_capacity(row.len());
                    for c in row {
                        let q = parse_rational(c, 0)?;
                        let den = field.from_bigint(q.denom());
                        if field.is_zero(&den) {
                            return Err(Error::Input(format!("coordinate {c} has a denominator divisible by p")));
                        }
                        p.push(field.div(&field.from_bigint(q.numer()), &den));
                    }
                    pts.push(p);
                }
                SubschemeData::from_points(&ring, &pts, label)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;

    #[test]
    fn points_file() {
        let text = "# three points\nambient: 2\nfield: F_32003\npolarization: 3\npoints:\n1 0 0\n(0:1:0)\n0, 0, 1\n";
        let inp = parse_input(text).unwrap();
        assert_eq!(inp.ambient, 2);
        assert_eq!(inp.polarization, Some(3));
        let z = inp.build(PrimeField::default(), "file").unwrap();
        assert_eq!(z.degree(), 3);
    }

    #[test]
    fn ideal_file() {
        let text = "ambient: 3\nideal:\nx0\nx1\n";
        let z = parse_input(text).unwrap().build(PrimeField::default(), "line").unwrap();
        assert_eq!(z.dim(), Some(1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_input("ambient: 2\npoints:\n1 0 zz\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                message: "bad coordinate 'zz'".into()
            }
        );
        assert!(parse_input("points:\n1 0 0\n").is_err());
        assert!(matches!(
            parse_input("ambient: 2\npoints:\n\n1 0 0\n1 0\n").unwrap_err(),
            Error::Parse { line: 5, .. }
        ));
        let bad_gen = parse_input("ambient: 2\n# c\nideal:\nx0^2\n2x0x1\n").unwrap();
        assert!(matches!(
            bad_gen.build(PrimeField::default(), "x").unwrap_err(),
            Error::Parse { line: 5, .. }
        ));
        let mismatch = parse_input("ambient: 2\nfield: Q\nideal:\nx0\nx1\n").unwrap();
        assert_eq!(
            mismatch.build(PrimeField::default(), "x").unwrap_err().code(),
            "VARIANT_MISMATCH"
        );
    }
}
