//! Closed intervals with rational endpoints. Arithmetic is outward-exact:
//! endpoints are computed exactly, so enclosures are never widened.

use super::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, rhs: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    /// Division; panics if the divisor contains zero.
    pub fn div(&self, rhs: &RatInterval) -> RatInterval {
        assert!(
            rhs.lo.is_positive() || rhs.hi.is_negative(),
            "interval division by an interval containing zero"
        );
        let inv = RatInterval::new(Rat::from_integer(BigInt::from(1)) / &rhs.hi,
                                   Rat::from_integer(BigInt::from(1)) / &rhs.lo);
        self.mul(&inv)
    }

    /// Whether the interval definitely excludes zero.
    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    /// The integers contained in the interval, if at most `cap` of them.
    pub fn integers_within(&self, cap: usize) -> Option<Vec<BigInt>> {
        let first = self.lo.ceil().to_integer();
        let last = self.hi.floor().to_integer();
        if first > last {
            return Some(Vec::new());
        }
        let count = &last - &first + 1;
        if count > BigInt::from(cap) {
            return None;
        }
        let mut out = Vec::new();
        let mut k = first;
        while k <= last {
            out.push(k.clone());
            k += 1;
        }
        Some(out)
    }

    /// True when no nonnegative integer lies in the interval.
    pub fn excludes_nonnegative_integers(&self) -> bool {
        if self.hi.is_negative() {
            return true;
        }
        let first = self.lo.ceil().to_integer();
        let last = self.hi.floor().to_integer();
        let first = if first.is_negative() { BigInt::zero() } else { first };
        first > last
    }
}
