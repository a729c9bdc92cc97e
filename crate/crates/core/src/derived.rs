//! Derived-code analysis. For a survivor with rational inner products
//! (a, b, c) and distribution (X, Y, Z), the code derived at inner product
//! u lives one dimension down and has inner products u/(1+u) and
//! (v - u^2)/(1 - u^2) for the other two values v. Its distribution must
//! again consist of nonnegative integers; a failure refutes the survivor.

use crate::exact::{is_integer, rat_int, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedTag {
    A,
    B,
    C,
}

impl DerivedTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DerivedTag::A => "a",
            DerivedTag::B => "b",
            DerivedTag::C => "c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedVerdict {
    Pass,
    ContradictionNonInteger,
    ContradictionNegative,
    InconsistentMoment3,
    Skipped(String),
}

impl DerivedVerdict {
    pub fn is_contradiction(&self) -> bool {
        matches!(
            self,
            DerivedVerdict::ContradictionNonInteger
                | DerivedVerdict::ContradictionNegative
                | DerivedVerdict::InconsistentMoment3
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedCodeReport {
    pub which: DerivedTag,
    /// Cardinality of the derived code: X, Y, or Z.
    pub cardinality: Rat,
    /// Derived inner products landing in [-1, 1), ascending, deduplicated.
    pub products: Vec<Rat>,
    /// Solved distribution values, aligned with `products`.
    pub values: Vec<Rat>,
    pub verdict: DerivedVerdict,
}

/// Inner products of the code derived at `u`, with `others` the two
/// remaining base inner products. Values outside [-1, 1) are dropped
/// (they cannot occur between unit vectors; c = 1 never arises and a
/// derived product of 1 would mean coinciding points).
pub fn derived_inner_products(u: &Rat, others: &[&Rat; 2]) -> Vec<Rat> {
    let one = Rat::one();
    debug_assert!(u.abs() != one);
    let u2 = u * u;
    let mut vals = vec![u / (&one + u)];
    for v in others {
        vals.push((*v - &u2) / (&one - &u2));
    }
    vals.retain(|t| *t >= -one.clone() && *t < one);
    vals.sort();
    vals.dedup();
    vals
}

/// Solve the derived moment system in dimension n - 1: with k distinct
/// products u_j and counts N_j, the equations are
/// sum_j u_j^i N_j = f_i * card - 1 for i = 0..=3, where
/// f_0 = 1, f_1 = 0, f_2 = 1/(n-1), f_3 = 0. The first k equations are
/// solved; the rest must hold for a genuine derived design.
pub fn derived_distribution(
    n: u32,
    cardinality: &Rat,
    products: &[Rat],
) -> (Vec<Rat>, DerivedVerdict) {
    assert!(n >= 3 && products.len() <= 3);
    let rhs: Vec<Rat> = (0..=3)
        .map(|i| {
            let f_i = match i {
                0 => Rat::one(),
                2 => Rat::one() / rat_int(n as i64 - 1),
                _ => Rat::zero(),
            };
            f_i * cardinality - Rat::one()
        })
        .collect();
    let k = products.len();
    let values = solve_vandermonde(products, &rhs[..k]);
    for i in k..=3 {
        let lhs: Rat = products
            .iter()
            .zip(&values)
            .map(|(u, v)| pow(u, i) * v)
            .sum();
        if lhs != rhs[i] {
            return (values, DerivedVerdict::InconsistentMoment3);
        }
    }
    if values.iter().any(|v| !is_integer(v)) {
        return (values, DerivedVerdict::ContradictionNonInteger);
    }
    if values.iter().any(|v| v.is_negative()) {
        return (values, DerivedVerdict::ContradictionNegative);
    }
    (values, DerivedVerdict::Pass)
}

/// One report per base inner product. Any single contradiction verdict
/// refutes the candidate. The antipodal case u = -1 derives a single
/// point and is skipped.
pub fn derived_analysis(n: u32, products: &[Rat; 3], dist: &[Rat; 3]) -> Vec<DerivedCodeReport> {
    let tags = [DerivedTag::A, DerivedTag::B, DerivedTag::C];
    let mut out = Vec::with_capacity(3);
    for (i, tag) in tags.iter().enumerate() {
        let u = &products[i];
        let card = dist[i].clone();
        if *u == -Rat::one() {
            out.push(DerivedCodeReport {
                which: *tag,
                cardinality: card,
                products: Vec::new(),
                values: Vec::new(),
                verdict: DerivedVerdict::Skipped("antipodal derived code is a single point".into()),
            });
            continue;
        }
        let others = [&products[(i + 1) % 3], &products[(i + 2) % 3]];
        let dprods = derived_inner_products(u, &others);
        let (values, verdict) = derived_distribution(n, &card, &dprods);
        out.push(DerivedCodeReport {
            which: *tag,
            cardinality: card,
            products: dprods,
            values,
            verdict,
        });
    }
    out
}

/// Solve the k x k Vandermonde system sum_j u_j^i N_j = rhs_i, i < k,
/// by Lagrange interpolation weights (nodes are distinct).
fn solve_vandermonde(nodes: &[Rat], rhs: &[Rat]) -> Vec<Rat> {
    let k = nodes.len();
    debug_assert_eq!(rhs.len(), k);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // ell_j(t): the Lagrange basis polynomial; N_j = sum_i c_i rhs_i
        // where ell_j(t) = sum_i c_i t^i.
        let mut coeffs = vec![Rat::one()];
        let mut denom = Rat::one();
        for (m, u) in nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            // multiply by (t - u_m)
            let mut next = vec![Rat::zero(); coeffs.len() + 1];
            for (d, c) in coeffs.iter().enumerate() {
                next[d] = &next[d] - &(c * u);
                next[d + 1] = &next[d + 1] + c;
            }
            coeffs = next;
            denom = denom * (&nodes[j] - u);
        }
        let nj: Rat = coeffs.iter().zip(rhs).map(|(c, r)| c * r).sum::<Rat>() / denom;
        out.push(nj);
    }
    out
}

fn pow(x: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}
