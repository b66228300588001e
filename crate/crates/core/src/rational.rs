//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational; every coefficient in the crate is one of these.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `num/den` in lowest terms, `/1` elided.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n` or `n/d` (optional leading sign).
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// `m^j` as an exact rational.
pub fn q_pow(base: i64, exp: usize) -> Q {
    let mut acc = Q::one();
    let b = q(base);
    for _ in 0..exp {
        acc *= &b;
    }
    acc
}

pub(crate) fn is_negative(x: &Q) -> bool {
    x.is_negative()
}
