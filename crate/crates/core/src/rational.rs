//! Rational helpers: construction shorthands, canonical text form, scaling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{QMat, Rat};

pub fn q(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn qf(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn qmat(rows: &[&[i64]]) -> QMat {
    QMat::from_rows(&rows.iter().map(|r| qvec(r)).collect::<Vec<_>>())
}

/// Parses `"p"`, `"-p"` or `"p/q"`. Decimal points are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical text: lowest terms, `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

/// Positive rescaling to a primitive integer vector. The zero vector is returned unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rat::from_integer(x / g.abs())).collect()
}

pub fn to_bigints(v: &[Rat]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|x| {
            if x.denom().is_one() {
                Ok(x.numer().clone())
            } else {
                Err(Error::NotIntegral(fmt_rat(x)))
            }
        })
        .collect()
}
