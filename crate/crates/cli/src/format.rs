//! Text serialization of exact rationals and Miller bases.
//!
//! A basis file is a header line `weight k, dimension d, precision N`
//! followed by `d` lines of `N` rationals written as `p/q` (denominator
//! always explicit, fraction in lowest terms) and separated by single spaces.
//! Every line ends with `\n`.

use std::fmt::Write as _;

use num_traits::Signed;
use spcycles_core::qseries::{MillerBasis, QSeries};
use spcycles_core::ExactRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing or malformed header")]
    Header,
    #[error("line {line}: {reason}")]
    Row { line: usize, reason: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("rational {0:?} is not in canonical p/q form")]
    Rational(String),
    #[error("inconsistent basis: {0}")]
    Basis(#[from] spcycles_core::Error),
}

/// `p/q` with `q > 0` and `gcd(p, q) = 1`; integers keep the `/1`.
pub fn rational_to_string(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Inverse of [`rational_to_string`]. Only the canonical spelling is accepted,
/// so that parsing and printing are mutually inverse.
pub fn parse_rational(s: &str) -> Result<ExactRational, FormatError> {
    let bad = || FormatError::Rational(s.to_owned());
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: num_bigint::BigInt = p.parse().map_err(|_| bad())?;
    let q: num_bigint::BigInt = q.parse().map_err(|_| bad())?;
    if !q.is_positive() {
        return Err(bad());
    }
    let x = ExactRational::new(p.clone(), q.clone());
    if x.numer() != &p || x.denom() != &q || rational_to_string(&x) != s {
        return Err(bad());
    }
    Ok(x)
}

pub fn basis_to_string(basis: &MillerBasis) -> String {
    let mut out = format!(
        "weight {}, dimension {}, precision {}\n",
        basis.weight(),
        basis.dimension(),
        basis.precision()
    );
    for f in basis.basis() {
        for (i, c) in f.coefficients().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}/{}", c.numer(), c.denom());
        }
        out.push('\n');
    }
    out
}

fn parse_header(line: &str) -> Option<(u32, usize, usize)> {
    let rest = line.strip_prefix("weight ")?;
    let (k, rest) = rest.split_once(", dimension ")?;
    let (d, n) = rest.split_once(", precision ")?;
    let canonical = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    if !(canonical(k) && canonical(d) && canonical(n)) {
        return None;
    }
    Some((k.parse().ok()?, d.parse().ok()?, n.parse().ok()?))
}

/// Parses a basis file, rejecting anything [`basis_to_string`] would not
/// have produced (including a missing final newline).
pub fn parse_basis(text: &str) -> Result<MillerBasis, FormatError> {
    let body = text.strip_suffix('\n').ok_or(FormatError::Header)?;
    let mut lines = body.split('\n');
    let (k, d, n) = lines.next().and_then(parse_header).ok_or(FormatError::Header)?;
    let rows: Vec<&str> = lines.collect();
    if rows.len() != d {
        return Err(FormatError::RowCount {
            expected: d,
            found: rows.len(),
        });
    }
    let mut series = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        let tokens: Vec<&str> = row.split(' ').collect();
        if tokens.len() != n {
            return Err(FormatError::Row {
                line: i + 2,
                reason: format!("expected {n} coefficients, found {}", tokens.len()),
            });
        }
        let coeffs = tokens
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>, _>>()?;
        series.push(QSeries::new(k, coeffs)?);
    }
    Ok(MillerBasis::from_parts(k, n, series)?)
}
