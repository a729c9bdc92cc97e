//! Exact Jacobi and Gegenbauer polynomials (normalized to 1 at t = 1),
//! Gegenbauer expansion coefficients, the degree-k node polynomial built
//! from consecutive Jacobi polynomials, the L_5 cardinality bound, and the
//! four-node quadrature weights.

use crate::exact::{rat, rat_int, Poly, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrthoError {
    #[error("bound undefined at s (zero denominator)")]
    BoundUndefined,
    #[error("nodes are not Levenshtein nodes for (n, M): moment t^{0} off by {1}")]
    MomentMismatch(usize, String),
    #[error("nonpositive quadrature weight rho_{0}")]
    NonpositiveWeight(usize),
    #[error("quadrature nodes must be distinct and lie in [-1, 1)")]
    BadNodes,
}

/// Gegenbauer expansion f(t) = sum_i f_i P_i^{(n)}(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GegenbauerCoefficients {
    pub dimension: u32,
    pub coeffs: Vec<Rat>,
}

impl GegenbauerCoefficients {
    pub fn f0(&self) -> Rat {
        self.coeffs.first().cloned().unwrap_or_else(Rat::zero)
    }

    /// Reconstruct the expanded polynomial (used as a self-check in tests).
    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::zero();
        for (i, f) in self.coeffs.iter().enumerate() {
            acc = &acc + &gegenbauer_polynomial(i as u32, self.dimension).scale(f);
        }
        acc
    }
}

/// Quadrature rule exact on polynomials of degree at most 5:
/// f_0 = f(1)/M + sum_i rho_i f(alpha_i).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub dimension: u32,
    pub cardinality: Rat,
    pub nodes: [Rat; 3],
    pub weights: [Rat; 3],
}

/// Jacobi polynomial with (alpha, beta) = ((n-1)/2, (n-3)/2), normalized so
/// the value at 1 is exactly 1.
pub fn jacobi_polynomial(i: u32, n: u32) -> Poly {
    assert!(n >= 2);
    let alpha = rat(n as i64 - 1, 2);
    let beta = rat(n as i64 - 3, 2);
    normalized_jacobi(i, &alpha, &beta)
}

/// Gegenbauer polynomial P_k^{(n)}: Jacobi with alpha = beta = (n-3)/2,
/// normalized at 1. For n = 2 this is the Chebyshev case alpha = -1/2.
pub fn gegenbauer_polynomial(k: u32, n: u32) -> Poly {
    assert!(n >= 2);
    let ab = rat(n as i64 - 3, 2);
    normalized_jacobi(k, &ab, &ab)
}

/// Jacobi three-term recurrence with rational parameters, then division by
/// the closed-form value at 1 = binom(i + alpha, i); everything stays exact.
fn normalized_jacobi(i: u32, alpha: &Rat, beta: &Rat) -> Poly {
    let p = raw_jacobi(i, alpha, beta);
    let at_one = p.eval(&Rat::one());
    debug_assert!(!at_one.is_zero());
    p.scale(&(Rat::one() / at_one))
}

fn raw_jacobi(i: u32, alpha: &Rat, beta: &Rat) -> Poly {
    let one = Rat::one();
    let two = rat(2, 1);
    let mut p_prev = Poly::constant(one.clone());
    if i == 0 {
        return p_prev;
    }
    // P_1 = (alpha + 1) + (alpha + beta + 2)(t - 1)/2
    let mut p_cur = &Poly::constant(alpha + &one)
        + &Poly::new(vec![-(alpha + beta + &two) / &two, (alpha + beta + &two) / &two]);
    for m in 2..=i {
        let m_r = rat_int(m as i64);
        let a = &m_r + alpha + beta; // m + alpha + beta
        let b = &two * &m_r + alpha + beta; // 2m + alpha + beta
        let c1 = &two * &m_r * &a * (&b - &two);
        let c2 = (&b - &one) * (alpha * alpha - beta * beta);
        let c3 = (&b - &one) * &b * (&b - &two);
        let c4 = &two * (&m_r + alpha - &one) * (&m_r + beta - &one) * &b;
        // c1 P_m = (c2 + c3 t) P_{m-1} - c4 P_{m-2}
        let lin = Poly::new(vec![c2, c3]);
        let next = &(&lin * &p_cur) - &p_prev.scale(&c4);
        p_prev = p_cur;
        p_cur = next.scale(&(Rat::one() / c1));
    }
    p_cur
}

/// Exact Gegenbauer expansion of `f` in dimension `n`, by back-substitution
/// from the top degree down.
pub fn gegenbauer_expand(f: &Poly, n: u32) -> GegenbauerCoefficients {
    assert!(n >= 2);
    let deg = f.degree().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); deg + 1];
    let mut rem = f.clone();
    for k in (0..=deg).rev() {
        let pk = gegenbauer_polynomial(k as u32, n);
        let lead = rem.coeff(k);
        if lead.is_zero() {
            continue;
        }
        let fk = lead / pk.coeff(k);
        rem = &rem - &pk.scale(&fk);
        coeffs[k] = fk;
    }
    debug_assert!(rem.is_zero());
    GegenbauerCoefficients { dimension: n, coeffs }
}

/// P_k(t) P_{k-1}(s) - P_k(s) P_{k-1}(t) with the Jacobi normalization
/// above; its roots are the admissible inner products, and s is always one
/// of them.
pub fn levenshtein_polynomial(k: u32, n: u32, s: &Rat) -> Poly {
    assert!(k >= 1 && n >= 2);
    let pk = jacobi_polynomial(k, n);
    let pk1 = jacobi_polynomial(k - 1, n);
    &pk.scale(&pk1.eval(s)) - &pk1.scale(&pk.eval(s))
}

/// The L_5(n, s) cardinality bound:
/// M = n((n+2)(n+3)s^2 + 4(n+2)s - n + 1)(1 - s) / (2s(3 - (n+2)s^2)).
pub fn levenshtein_bound_l5(n: u32, s: &Rat) -> Result<Rat, OrthoError> {
    let n_r = rat_int(n as i64);
    let np2 = &n_r + rat(2, 1);
    let np3 = &n_r + rat(3, 1);
    let den = rat(2, 1) * s * (rat(3, 1) - &np2 * s * s);
    if den.is_zero() {
        return Err(OrthoError::BoundUndefined);
    }
    let num = &n_r * (&np2 * &np3 * s * s + rat(4, 1) * &np2 * s - &n_r + Rat::one())
        * (Rat::one() - s);
    Ok(num / den)
}

/// Solve the i = 0..2 moment equations for the weights, then require
/// exactness on t^3..t^5 and positivity. The moment targets are the
/// Gegenbauer f_0 of t^i in dimension n: 1, 0, 1/n, 0, 3/(n(n+2)), 0.
pub fn quadrature_weights(n: u32, m: &Rat, nodes: &[Rat; 3]) -> Result<QuadratureRule, OrthoError> {
    let [a, b, c] = nodes;
    let neg_one = rat(-1, 1);
    let one = Rat::one();
    if a == b || b == c || a == c || a < &neg_one || c >= &one {
        return Err(OrthoError::BadNodes);
    }
    let f = moment_targets(n);
    // rhs_i = f_i - 1/M
    let inv_m = Rat::one() / m;
    let rhs: Vec<Rat> = (0..3).map(|i| &f[i] - &inv_m).collect();
    let weights = solve_vandermonde3(a, b, c, &rhs);
    for i in 3..=5 {
        let got = &weights[0] * pow(a, i) + &weights[1] * pow(b, i) + &weights[2] * pow(c, i)
            + &inv_m;
        if got != f[i] {
            return Err(OrthoError::MomentMismatch(i, crate::exact::format_rat(&(got - &f[i]))));
        }
    }
    for (i, w) in weights.iter().enumerate() {
        if !w.is_positive() {
            return Err(OrthoError::NonpositiveWeight(i));
        }
    }
    Ok(QuadratureRule {
        dimension: n,
        cardinality: m.clone(),
        nodes: nodes.clone(),
        weights: [weights[0].clone(), weights[1].clone(), weights[2].clone()],
    })
}

/// f_0 of t^i in dimension n for i = 0..=5.
pub fn moment_targets(n: u32) -> [Rat; 6] {
    let n_i = n as i64;
    [
        Rat::one(),
        Rat::zero(),
        rat(1, n_i),
        Rat::zero(),
        Rat::new(BigInt::from(3), BigInt::from(n_i) * BigInt::from(n_i + 2)),
        Rat::zero(),
    ]
}

fn pow(x: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}

/// Cramer solve of [1 1 1; a b c; a^2 b^2 c^2] w = rhs for distinct nodes.
pub fn solve_vandermonde3(a: &Rat, b: &Rat, c: &Rat, rhs: &[Rat]) -> Vec<Rat> {
    let det = (b - a) * &(c - a) * &(c - b);
    let wa = (&rhs[0] * b * c - &rhs[1] * &(b + c) + &rhs[2]) * (c - b);
    let wb = -((&rhs[0] * a * c - &rhs[1] * &(a + c) + &rhs[2]) * (c - a));
    let wc = (&rhs[0] * a * b - &rhs[1] * &(a + b) + &rhs[2]) * (b - a);
    vec![wa / &det, wb / &det, wc / &det]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn normalization_at_one() {
        for n in [2u32, 3, 7, 22, 341] {
            for k in 0..=5 {
                assert_eq!(jacobi_polynomial(k, n).eval(&rat(1, 1)), rat(1, 1), "jacobi {k} {n}");
                assert_eq!(
                    gegenbauer_polynomial(k, n).eval(&rat(1, 1)),
                    rat(1, 1),
                    "gegenbauer {k} {n}"
                );
            }
        }
    }

    #[test]
    fn gegenbauer_low_degree() {
        for n in [3u32, 7, 22] {
            assert_eq!(gegenbauer_polynomial(0, n), Poly::from_i64(&[1]));
            assert_eq!(gegenbauer_polynomial(1, n), Poly::t());
        }
        // expansion of t^2 in dimension 7 has f_0 = 1/7
        let e = gegenbauer_expand(&Poly::from_i64(&[0, 0, 1]), 7);
        assert_eq!(e.f0(), rat(1, 7));
    }

    #[test]
    fn expansion_constants() {
        for n in [2u32, 3, 7, 22, 341] {
            let n_i = n as i64;
            let t = Poly::t();
            assert_eq!(gegenbauer_expand(&t, n).f0(), rat(0, 1));
            let t2 = &t * &t;
            assert_eq!(gegenbauer_expand(&t2, n).f0(), rat(1, n_i));
            let t4 = &t2 * &t2;
            assert_eq!(gegenbauer_expand(&t4, n).f0(), rat(3, n_i * (n_i + 2)));
            let t3 = &t2 * &t;
            assert_eq!(gegenbauer_expand(&t3, n).f0(), rat(0, 1));
            let t5 = &t4 * &t;
            assert_eq!(gegenbauer_expand(&t5, n).f0(), rat(0, 1));
        }
    }

    #[test]
    fn expansion_reconstructs_and_is_diagonal() {
        for n in [3u32, 7, 22] {
            for k in 0..=5u32 {
                let pk = gegenbauer_polynomial(k, n);
                let e = gegenbauer_expand(&pk, n);
                assert_eq!(e.reconstruct(), pk);
                for (i, f) in e.coeffs.iter().enumerate() {
                    let expect = if i == k as usize { rat(1, 1) } else { rat(0, 1) };
                    assert_eq!(*f, expect, "n={n} k={k} i={i}");
                }
            }
            // a generic polynomial reconstructs too
            let f = Poly::from_i64(&[3, -1, 0, 2, 5, -4]);
            assert_eq!(gegenbauer_expand(&f, n).reconstruct(), f);
        }
    }

    #[test]
    fn levenshtein_roots_341() {
        let p = levenshtein_polynomial(3, 341, &rat(1, 14));
        assert_eq!(p.degree(), Some(3));
        for r in [rat(-1, 7), rat(-1, 35), rat(1, 14)] {
            assert!(p.eval(&r).is_zero(), "root {r}");
        }
    }

    #[test]
    fn levenshtein_roots_case3_m3() {
        let p = levenshtein_polynomial(3, 22, &rat(1, 4));
        for r in [rat(-1, 2), rat(-1, 8), rat(1, 4)] {
            assert!(p.eval(&r).is_zero(), "root {r}");
        }
    }

    #[test]
    fn s_is_always_a_root() {
        for (k, n, s) in [(1u32, 5u32, rat(1, 3)), (2, 8, rat(-2, 7)), (3, 4, rat(3, 5)), (4, 9, rat(1, 6))] {
            let p = levenshtein_polynomial(k, n, &s);
            assert!(p.eval(&s).is_zero());
        }
    }

    #[test]
    fn l5_values() {
        assert_eq!(levenshtein_bound_l5(7, &rat(1, 3)).unwrap(), rat(56, 1));
        assert_eq!(levenshtein_bound_l5(22, &rat(1, 4)).unwrap(), rat(891, 1));
        assert_eq!(levenshtein_bound_l5(341, &rat(1, 14)).unwrap(), rat(638352, 1));
        assert_eq!(levenshtein_bound_l5(7, &rat(0, 1)), Err(OrthoError::BoundUndefined));
    }

    #[test]
    fn quadrature_7_56() {
        let rule = quadrature_weights(7, &rat(56, 1), &[rat(-1, 1), rat(-1, 3), rat(1, 3)]).unwrap();
        assert_eq!(rule.weights, [rat(1, 56), rat(27, 56), rat(27, 56)]);
        let total: Rat = rule.weights.iter().sum::<Rat>() + rat(1, 56);
        assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn quadrature_rejects_wrong_nodes() {
        let err = quadrature_weights(7, &rat(56, 1), &[rat(-1, 1), rat(-1, 3), rat(1, 4)]);
        assert!(matches!(err, Err(OrthoError::MomentMismatch(_, _))));
        let err = quadrature_weights(7, &rat(56, 1), &[rat(-1, 1), rat(-1, 3), rat(1, 1)]);
        assert_eq!(err.unwrap_err(), OrthoError::BadNodes);
    }

    #[test]
    fn quadrature_341() {
        let nodes = [rat(-1, 7), rat(-1, 35), rat(1, 14)];
        let rule = quadrature_weights(341, &rat(638352, 1), &nodes).unwrap();
        for w in &rule.weights {
            assert!(w.is_positive());
        }
        assert_eq!(&rule.weights[0] * &rat(638352, 1), rat(23205, 1));
    }
}
