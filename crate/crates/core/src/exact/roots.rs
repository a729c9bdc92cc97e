//! Certified real-root isolation via Sturm sequences with bisection
//! refinement. All sign computations are exact, so an isolating interval is
//! a proof that exactly one real root lies inside it.

use super::{Poly, Rat, RatInterval};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// An interval certified to contain exactly one real root of `poly`
/// (the square-free primitive part of the polynomial it was built from).
/// Exact roots are represented as degenerate `[r, r]` intervals.
#[derive(Clone, Debug)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    poly: Arc<Poly>,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact root when the interval is degenerate.
    pub fn exact_root(&self) -> Option<Rat> {
        self.is_exact().then(|| self.lo.clone())
    }

    pub fn polynomial(&self) -> &Poly {
        &self.poly
    }

    pub fn as_interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }
}

struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    fn new(square_free: &Poly) -> Self {
        let mut chain = vec![square_free.clone(), square_free.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive());
        }
        SturmChain { chain }
    }

    /// Sign variations of the chain at `x`, skipping zeros. For a chain of
    /// a square-free polynomial this equals the variation count at `x+`,
    /// so `variations(a) - variations(b)` counts roots in `(a, b]` even
    /// when an endpoint is itself a root.
    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Isolate every distinct real root of `p` inside `[lo, hi]`. Returned
/// intervals are sorted ascending with disjoint interiors (a non-degenerate
/// interval certifies one root in the half-open `(lo, hi]`, so it may share
/// its left endpoint with a preceding exact root); exact rational roots come
/// back as degenerate `[r, r]` intervals.
pub fn isolate_real_roots(p: &Poly, lo: &Rat, hi: &Rat) -> Vec<IsolatingInterval> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    assert!(lo <= hi);
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let sf = Arc::new(p.square_free());
    let chain = SturmChain::new(&sf);
    let mut out = Vec::new();

    if sf.eval(lo).is_zero() {
        out.push(IsolatingInterval { lo: lo.clone(), hi: lo.clone(), poly: sf.clone() });
    }
    if lo == hi {
        return out;
    }
    let n_roots = chain.count(lo, hi);
    let mut stack = vec![(lo.clone(), hi.clone(), n_roots)];
    while let Some((a, b, k)) = stack.pop() {
        match k {
            0 => {}
            1 => {
                if sf.eval(&b).is_zero() {
                    out.push(IsolatingInterval { lo: b.clone(), hi: b, poly: sf.clone() });
                } else {
                    out.push(IsolatingInterval { lo: a, hi: b, poly: sf.clone() });
                }
            }
            _ => {
                let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
                let left = chain.count(&a, &mid);
                stack.push((a, mid.clone(), left));
                stack.push((mid, b, k - left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo).then_with(|| x.hi.cmp(&y.hi)));
    out
}

/// Shrink an isolating interval to width at most `width_bound` by exact
/// bisection. The root never escapes; an exact hit collapses the interval.
pub fn refine_interval(iv: &IsolatingInterval, width_bound: &Rat) -> IsolatingInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let p = iv.poly.clone();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let mut sign_lo = sign(&p.eval(&lo));
    if sign_lo == 0 {
        // lo can be a root of a *different* interval's boundary only when
        // degenerate; isolation guarantees this does not happen here
        sign_lo = -sign(&p.eval(&hi));
    }
    while &(&hi - &lo) > width_bound {
        let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
        let sm = sign(&p.eval(&mid));
        if sm == 0 {
            return IsolatingInterval { lo: mid.clone(), hi: mid, poly: p };
        }
        if sm == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval { lo, hi, poly: p }
}

/// All distinct rational roots of `p`, sorted ascending.
///
/// The rational-root theorem bounds any root `p/q` of the primitive integer
/// form by `p | constant term` and `q | leading coefficient`. Rather than
/// enumerating divisor pairs, each isolating interval is refined below
/// `1 / (2 q_max^2)`; the simplest rational in the interval is then the only
/// possible rational root there, and one exact evaluation settles it.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    assert!(!p.is_zero());
    let mut prim = Poly::from_bigint(p.primitive_integer());
    let mut out = Vec::new();
    // strip roots at zero
    while !prim.is_zero() && prim.coeff(0).is_zero() {
        out.push(Rat::zero());
        let coeffs = prim.coeffs()[1..].to_vec();
        prim = Poly::new(coeffs);
    }
    out.dedup();
    if prim.degree().map_or(true, |d| d == 0) {
        out.sort();
        return out;
    }
    let sf = prim.square_free();
    let q_max = sf.leading().unwrap().numer().abs();
    // width < 1/(2 q_max^2): two distinct rationals with denominators
    // <= q_max cannot both fit, so the simplest one is the only candidate
    let bound = Rat::new(BigInt::one(), BigInt::from(2) * &q_max * &q_max);
    let radius = sf.root_bound();
    for iv in isolate_real_roots(&sf, &(-radius.clone()), &radius) {
        if let Some(r) = iv.exact_root() {
            if !r.is_zero() {
                out.push(r);
            }
            continue;
        }
        let tight = refine_interval(&iv, &bound);
        if let Some(r) = tight.exact_root() {
            if !r.is_zero() {
                out.push(r);
            }
            continue;
        }
        let cand = simplest_rational_in(&tight.lo, &tight.hi);
        if sf.eval(&cand).is_zero() && !cand.is_zero() {
            out.push(cand);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken toward smaller numerator), via the Stern-Brocot
/// recursion.
pub fn simplest_rational_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if lo.is_negative() && !hi.is_negative() {
        return Rat::zero();
    }
    if lo.is_positive() || lo.is_zero() {
        simplest_nonneg(lo, hi)
    } else {
        -simplest_nonneg(&-hi.clone(), &-lo.clone())
    }
}

fn simplest_nonneg(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    let ceil_lo = lo.ceil();
    if &ceil_lo <= hi {
        return ceil_lo;
    }
    // fl < lo <= hi < fl + 1
    let one = Rat::one();
    let inv_hi = &one / &(hi - &fl);
    let inv_lo = &one / &(lo - &fl);
    fl + one / simplest_nonneg(&inv_hi, &inv_lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly_roots(p: &Poly, lo: i64, hi: i64) -> Vec<IsolatingInterval> {
        isolate_real_roots(p, &rat(lo, 1), &rat(hi, 1))
    }

    #[test]
    fn isolates_three_rational_roots() {
        // 9t^3 + 9t^2 - t - 1 = (t+1)(9t^2-1), roots {-1, -1/3, 1/3}
        let p = Poly::from_i64(&[-1, -1, 9, 9]);
        let ivs = poly_roots(&p, -1, 1);
        assert_eq!(ivs.len(), 3);
        let expected = [rat(-1, 1), rat(-1, 3), rat(1, 3)];
        for (iv, r) in ivs.iter().zip(expected.iter()) {
            assert!(&iv.lo <= r && r <= &iv.hi, "{:?} should contain {}", iv, r);
        }
    }

    #[test]
    fn no_real_roots() {
        let p = Poly::from_i64(&[1, 0, 1]); // t^2 + 1
        assert!(poly_roots(&p, -1, 1).is_empty());
    }

    #[test]
    fn paper_triple_341() {
        // roots {-1/7, -1/35, 1/14}: (7t+1)(35t+1)(14t-1)
        let p = &(&Poly::from_i64(&[1, 7]) * &Poly::from_i64(&[1, 35])) * &Poly::from_i64(&[-1, 14]);
        let ivs = poly_roots(&p, -1, 1);
        assert_eq!(ivs.len(), 3);
        for (iv, r) in ivs.iter().zip([rat(-1, 7), rat(-1, 35), rat(1, 14)].iter()) {
            assert!(&iv.lo <= r && r <= &iv.hi);
        }
    }

    #[test]
    fn refinement_contains_sqrt2() {
        let p = Poly::from_i64(&[-2, 0, 1]);
        let ivs = poly_roots(&p, 1, 2);
        assert_eq!(ivs.len(), 1);
        let tight = refine_interval(&ivs[0], &rat(1, 1000));
        assert!(tight.width() <= rat(1, 1000));
        // 1.414213 < sqrt(2) < 1.414214
        assert!(tight.lo < rat(1_414_214, 1_000_000));
        assert!(tight.hi > rat(1_414_213, 1_000_000));
        // degenerate interval is returned unchanged
        let again = refine_interval(&tight, &rat(1, 10));
        assert!(again.width() <= rat(1, 1000));
    }

    #[test]
    fn rational_roots_examples() {
        // 245 t^2 + 42 t + 1, roots {-1/7, -1/35}
        let p = Poly::from_i64(&[1, 42, 245]);
        assert_eq!(rational_roots(&p), vec![rat(-1, 7), rat(-1, 35)]);
        // t^3 - 2 has no rational roots
        assert!(rational_roots(&Poly::from_i64(&[-2, 0, 0, 1])).is_empty());
        // 9t^3 + 9t^2 - t - 1
        let q = Poly::from_i64(&[-1, -1, 9, 9]);
        assert_eq!(rational_roots(&q), vec![rat(-1, 1), rat(-1, 3), rat(1, 3)]);
        // roots at zero
        let z = Poly::from_i64(&[0, 0, -1, 1]); // t^2(t-1)
        assert_eq!(rational_roots(&z), vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_rational_in(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_rational_in(&rat(-1, 2), &rat(1, 5)), rat(0, 1));
        assert_eq!(simplest_rational_in(&rat(3, 7), &rat(4, 9)), rat(3, 7));
        assert_eq!(simplest_rational_in(&rat(15, 11), &rat(18, 13)), rat(11, 8));
    }

    #[test]
    fn root_at_zero_contained() {
        let p = Poly::from_i64(&[0, 1]); // t
        let ivs = poly_roots(&p, -1, 1);
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].lo <= rat(0, 1) && rat(0, 1) <= ivs[0].hi);
    }

    #[test]
    fn endpoint_roots() {
        let p = Poly::from_i64(&[-1, 0, 1]); // roots -1, 1
        let ivs = poly_roots(&p, -1, 1);
        assert_eq!(ivs.len(), 2);
        assert_eq!(ivs[0].exact_root(), Some(rat(-1, 1)));
        assert_eq!(ivs[1].exact_root(), Some(rat(1, 1)));
    }
}
