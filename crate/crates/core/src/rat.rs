//! Arbitrary-precision rational scalars.
//!
//! `Rat` is `num::BigRational`, which already maintains the canonical form we
//! rely on everywhere (gcd-reduced, positive denominator). This module adds
//! the constructors and the exact `"p/q"` string codec used by every file
//! format in the crate.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

pub type Rat = num::BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rational with zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Double factorial `(2k+1)!! = 1 * 3 * ... * (2k+1)`.
pub fn odd_double_factorial(k: u64) -> Rat {
    let mut acc = BigInt::one();
    let mut f = BigInt::one();
    for _ in 0..k {
        f += 2;
        acc *= f.clone();
    }
    Rat::from_integer(acc)
}

pub fn pow_i(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base.clone();
    }
    acc
}

/// Renders in the exact `"p/q"` form; integers render without the `/q` part.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`. Whitespace is not accepted: the codec is used in
/// file formats that require bit-exact round-trips.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("bad integer `{t}` in rational literal `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Truncated integer square root of a nonnegative BigInt (used for root bounds).
pub fn bigint_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x = BigInt::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let y = (&x + n / &x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}
