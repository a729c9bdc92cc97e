//! Arbitrary-precision rational scalars, polynomials, certified root
//! isolation, and interval arithmetic.

mod interval;
mod poly;
mod roots;

pub use interval::RatInterval;
pub use poly::Poly;
pub use roots::{isolate_real_roots, rational_roots, refine_interval, IsolatingInterval};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. `num_rational` keeps values reduced with a
/// positive denominator, which is the canonical form used everywhere here.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("valuation undefined for A = 0")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

/// True when the rational is an integer (denominator 1 in canonical form).
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Parse `p/q`, an integer, or a finite decimal as an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(num, den);
        let int_part = Rat::from_integer(int);
        return Ok(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(p))
}

/// Render a rational as `p` or `p/q`.
pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Deterministic Miller-Rabin for u64 (the witness set below is exact for
/// all 64-bit inputs).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest power of the prime `p` dividing the nonzero integer `a`.
pub fn p_adic_valuation(p: &BigInt, a: &BigInt) -> Result<u64, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ValuationOfZero);
    }
    let prime_ok = match u64::try_from(p) {
        Ok(v) => is_prime_u64(v),
        Err(_) => false, // primes beyond u64 never occur here
    };
    if !prime_ok {
        return Err(ExactError::NotPrime(p.clone()));
    }
    let mut v = 0u64;
    let mut a = a.abs();
    loop {
        let (q, r) = num_integer::div_rem(a.clone(), p.clone());
        if !r.is_zero() {
            return Ok(v);
        }
        a = q;
        v += 1;
    }
}
