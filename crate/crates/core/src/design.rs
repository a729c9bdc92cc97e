//! Ground-truth verification on explicit codes: Gram-matrix instances,
//! design strength by Gegenbauer moment sums, per-point spectra, and the
//! fixtures of the known families (hexagon, heptagon, icosahedron, and the
//! 56-point code derived from the E8 root system).

use crate::exact::{format_rat, parse_rat, rat, rat_int, Rat};
use crate::feasibility::{distance_distribution, InnerProductTriple, RootValue};
use crate::ortho::{gegenbauer_polynomial, jacobi_polynomial, levenshtein_bound_l5};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("malformed design file: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

#[derive(Debug, Clone)]
pub enum Gram {
    Exact(Vec<Vec<Rat>>),
    Numeric(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct DesignInstance {
    pub dimension: u32,
    pub size: usize,
    pub gram: Gram,
}

impl DesignInstance {
    pub fn is_exact(&self) -> bool {
        matches!(self.gram, Gram::Exact(_))
    }
}

/// Distinct off-diagonal inner products (ascending) and the count of each
/// per point. Numeric spectra cluster values closer than 1e-6.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub exact_values: Option<Vec<Rat>>,
    pub numeric_values: Vec<f64>,
    /// counts[x][j] = multiplicity of value j as seen from point x
    pub counts: Vec<Vec<usize>>,
}

impl SpectrumReport {
    pub fn distinct_count(&self) -> usize {
        self.numeric_values.len()
    }

    pub fn point_independent(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

/// Parse the text format: header `design <coords|gram> dim=<n> size=<M>
/// [exact|numeric]`, then M data rows (n tokens for coords, M for gram),
/// tokens being decimals or p/q rationals; `#` starts a comment line.
pub fn load_design_str(text: &str) -> Result<DesignInstance, DesignError> {
    let bad = |msg: &str| DesignError::Parse(msg.to_string());
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("design") {
        return Err(bad("header must start with `design`"));
    }
    let form = toks.next().ok_or_else(|| bad("missing representation"))?;
    if form != "coords" && form != "gram" {
        return Err(bad("representation must be `coords` or `gram`"));
    }
    let mut dim = None;
    let mut size = None;
    let mut exact = true;
    for t in toks {
        if let Some(v) = t.strip_prefix("dim=") {
            dim = Some(v.parse::<u32>().map_err(|_| bad("bad dim="))?);
        } else if let Some(v) = t.strip_prefix("size=") {
            size = Some(v.parse::<usize>().map_err(|_| bad("bad size="))?);
        } else if t == "exact" {
            exact = true;
        } else if t == "numeric" {
            exact = false;
        } else {
            return Err(bad(&format!("unexpected header token `{t}`")));
        }
    }
    let dim = dim.ok_or_else(|| bad("missing dim="))?;
    let size = size.ok_or_else(|| bad("missing size="))?;
    if dim < 2 || size < 2 {
        return Err(bad("dim and size must each be at least 2"));
    }
    let want = if form == "coords" { dim as usize } else { size };
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(size);
    for line in lines {
        let row: Result<Vec<Rat>, _> = line.split_whitespace().map(parse_rat).collect();
        let row = row.map_err(|e| bad(&e.to_string()))?;
        if row.len() != want {
            return Err(bad(&format!("expected {want} tokens per row, got {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != size {
        return Err(bad(&format!("expected {size} rows, got {}", rows.len())));
    }
    let gram_exact: Vec<Vec<Rat>> = if form == "coords" {
        for (i, r) in rows.iter().enumerate() {
            let norm: Rat = r.iter().map(|x| x * x).sum();
            if exact && !norm.is_one() {
                return Err(DesignError::Validation(format!(
                    "row {i} is not a unit vector (|x|^2 = {})",
                    format_rat(&norm)
                )));
            }
            if !exact && (rat_to_f64(&norm) - 1.0).abs() > NUMERIC_TOLERANCE {
                return Err(DesignError::Validation(format!("row {i} is not a unit vector")));
            }
        }
        (0..size)
            .map(|i| (0..size).map(|j| dot(&rows[i], &rows[j])).collect())
            .collect()
    } else {
        for i in 0..size {
            if !rows[i][i].is_one() {
                return Err(DesignError::Validation(format!("gram diagonal entry {i} is not 1")));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(DesignError::Validation(format!(
                        "gram is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        rows
    };
    let instance = if exact {
        DesignInstance { dimension: dim, size, gram: Gram::Exact(gram_exact) }
    } else {
        let g = gram_exact
            .iter()
            .map(|r| r.iter().map(rat_to_f64).collect())
            .collect();
        DesignInstance { dimension: dim, size, gram: Gram::Numeric(g) }
    };
    if form == "gram" && instance.is_exact() {
        validate_psd(&instance)?;
    }
    Ok(instance)
}

pub fn load_design(path: &std::path::Path) -> Result<DesignInstance, DesignError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DesignError::Parse(format!("{}: {e}", path.display())))?;
    load_design_str(&text)
}

/// Positive-semidefiniteness and rank <= n, by exact symmetric elimination.
pub fn validate_psd(instance: &DesignInstance) -> Result<(), DesignError> {
    let g = match &instance.gram {
        Gram::Exact(g) => g,
        Gram::Numeric(_) => return Ok(()), // tolerance-mode instances skip this
    };
    let m = instance.size;
    let mut a: Vec<Vec<Rat>> = g.clone();
    let mut rank = 0usize;
    for k in 0..m {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return Err(DesignError::Validation(format!("gram is not PSD (pivot {k} < 0)")));
        }
        if pivot.is_zero() {
            if a[k].iter().any(|x| !x.is_zero()) || a.iter().any(|r| !r[k].is_zero()) {
                return Err(DesignError::Validation(format!(
                    "gram is not PSD (zero pivot {k} with nonzero row)"
                )));
            }
            continue;
        }
        rank += 1;
        for i in k + 1..m {
            let f = &a[i][k] / &pivot;
            for j in k..m {
                a[i][j] = &a[i][j] - &(&f * &a[k][j]);
            }
        }
        // zero the pivot row/column so later zero-pivot checks see the
        // already-eliminated state
        for i in k + 1..m {
            a[k][i] = Rat::zero();
        }
        for r in a.iter_mut().skip(k + 1) {
            r[k] = Rat::zero();
        }
    }
    if rank > instance.dimension as usize {
        return Err(DesignError::Validation(format!(
            "gram has rank {rank} > dimension {}",
            instance.dimension
        )));
    }
    Ok(())
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The scaled E8 root system: 240 integer vectors of squared norm 8
/// (112 of shape (+-2, +-2, 0^6) and 128 of shape (+-1)^8 with an even
/// number of minus signs); inner products are 8t for t in {0, +-1/2, +-1}.
pub fn e8_roots() -> Vec<[i32; 8]> {
    let mut out = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = [0i32; 8];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [1i32; 8];
            for (i, x) in v.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *x = -1;
                }
            }
            out.push(v);
        }
    }
    debug_assert_eq!(out.len(), 240);
    out
}

/// The normalized 240-point E8 root code as an exact Gram instance.
pub fn e8_base_design() -> DesignInstance {
    let roots = e8_roots();
    let gram = roots
        .iter()
        .map(|u| {
            roots
                .iter()
                .map(|v| {
                    let d: i32 = u.iter().zip(v).map(|(a, b)| a * b).sum();
                    rat(d as i64, 8)
                })
                .collect()
        })
        .collect();
    DesignInstance { dimension: 8, size: 240, gram: Gram::Exact(gram) }
}

pub fn fixture(name: &str) -> Result<DesignInstance, DesignError> {
    match name {
        "hexagon" => {
            let vals = [rat(1, 1), rat(1, 2), rat(-1, 2), rat(-1, 1), rat(-1, 2), rat(1, 2)];
            let gram = (0..6)
                .map(|i| (0..6).map(|j| vals[(6 + i - j) % 6].clone()).collect())
                .collect();
            Ok(DesignInstance { dimension: 2, size: 6, gram: Gram::Exact(gram) })
        }
        "heptagon" => {
            let gram = (0..7)
                .map(|i: i64| {
                    (0..7)
                        .map(|j: i64| (std::f64::consts::TAU * ((i - j) as f64) / 7.0).cos())
                        .collect()
                })
                .collect();
            Ok(DesignInstance { dimension: 2, size: 7, gram: Gram::Numeric(gram) })
        }
        "icosahedron" => {
            let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
            let norm = (1.0 + phi * phi).sqrt();
            let mut pts: Vec<[f64; 3]> = Vec::new();
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    pts.push([0.0, s1 / norm, s2 * phi / norm]);
                    pts.push([s1 / norm, s2 * phi / norm, 0.0]);
                    pts.push([s2 * phi / norm, 0.0, s1 / norm]);
                }
            }
            let gram = pts
                .iter()
                .map(|u| pts.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
                .collect();
            Ok(DesignInstance { dimension: 3, size: 12, gram: Gram::Numeric(gram) })
        }
        "e8_derived_56" => Ok(e8_derived_56()),
        other => Err(DesignError::UnknownFixture(other.to_string())),
    }
}

/// The 56 neighbors (inner product 1/2) of a fixed E8 root, rescaled to a
/// unit sphere in dimension 7 by t -> (t - 1/4)/(3/4); the Gram entries
/// are exactly {1, 1/3, -1/3, -1}.
fn e8_derived_56() -> DesignInstance {
    let roots = e8_roots();
    let base = [2, 2, 0, 0, 0, 0, 0, 0];
    let neighbors: Vec<&[i32; 8]> = roots
        .iter()
        .filter(|v| v.iter().zip(&base).map(|(a, b)| a * b).sum::<i32>() == 4)
        .collect();
    assert_eq!(neighbors.len(), 56);
    let gram = neighbors
        .iter()
        .map(|u| {
            neighbors
                .iter()
                .map(|v| {
                    let d: i32 = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                    // t = d/8; (t - 1/4)/(3/4) = (d/2 - 1)/3 = (d - 2)/6
                    rat(d as i64 - 2, 6)
                })
                .collect()
        })
        .collect();
    DesignInstance { dimension: 7, size: 56, gram: Gram::Exact(gram) }
}

/// Multiset of Gram entries (including the diagonal), exact instances only.
fn exact_entry_counts(g: &[Vec<Rat>]) -> BTreeMap<Rat, u64> {
    let mut counts = BTreeMap::new();
    for row in g {
        for v in row {
            *counts.entry(v.clone()).or_insert(0u64) += 1;
        }
    }
    counts
}

/// Largest tau <= tau_max with sum_{x,y} P_k(<x,y>) = 0 for all k <= tau.
pub fn design_strength(instance: &DesignInstance, tau_max: u32) -> u32 {
    let n = instance.dimension;
    match &instance.gram {
        Gram::Exact(g) => {
            let counts = exact_entry_counts(g);
            for k in 1..=tau_max {
                let p = gegenbauer_polynomial(k, n);
                let s: Rat = counts
                    .iter()
                    .map(|(v, c)| p.eval(v) * rat_int(*c as i64))
                    .sum();
                if !s.is_zero() {
                    return k - 1;
                }
            }
            tau_max
        }
        Gram::Numeric(g) => {
            let tol = NUMERIC_TOLERANCE * (instance.size * instance.size) as f64;
            for k in 1..=tau_max {
                let p = gegenbauer_polynomial(k, n);
                let s: f64 = g.iter().flatten().map(|&v| p.eval_f64(v)).sum();
                if s.abs() > tol {
                    return k - 1;
                }
            }
            tau_max
        }
    }
}

/// Per-point spectrum of off-diagonal inner products.
pub fn spectrum(instance: &DesignInstance) -> SpectrumReport {
    match &instance.gram {
        Gram::Exact(g) => {
            let mut values: Vec<Rat> = Vec::new();
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i != j && !values.contains(v) {
                        values.push(v.clone());
                    }
                }
            }
            values.sort();
            let counts = g
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    values
                        .iter()
                        .map(|v| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, x)| *j != i && *x == v)
                                .count()
                        })
                        .collect()
                })
                .collect();
            SpectrumReport {
                numeric_values: values.iter().map(rat_to_f64).collect(),
                exact_values: Some(values),
                counts,
            }
        }
        Gram::Numeric(g) => {
            let mut vals: Vec<f64> = Vec::new();
            for (i, row) in g.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if i != j && !vals.iter().any(|&w| (w - v).abs() < 1e-6) {
                        vals.push(v);
                    }
                }
            }
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let counts = g
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    vals.iter()
                        .map(|&v| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, x)| *j != i && (*x - v).abs() < 1e-6)
                                .count()
                        })
                        .collect()
                })
                .collect();
            SpectrumReport { exact_values: None, numeric_values: vals, counts }
        }
    }
}

#[derive(Debug, Clone)]
pub struct WitnessCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub checks: Vec<WitnessCheck>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The five structural checks tying an explicit 3-distance code to the
/// parameter theory: strength >= 5, point-independent distribution,
/// agreement with the moment-system distribution, spectrum = roots of the
/// degree-3 node polynomial at s = largest inner product, and M = L_5(n,s).
pub fn verify_conjecture_witness(instance: &DesignInstance) -> WitnessReport {
    let mut checks = Vec::new();
    let spec = spectrum(instance);
    if spec.distinct_count() != 3 {
        return WitnessReport {
            checks: vec![WitnessCheck {
                name: "three-distance precondition",
                pass: false,
                detail: format!("{} distinct inner products, need 3", spec.distinct_count()),
            }],
        };
    }
    let n = instance.dimension;
    let m = instance.size;

    let strength = design_strength(instance, 6);
    checks.push(WitnessCheck {
        name: "strength >= 5",
        pass: strength >= 5,
        detail: format!("strength {strength}"),
    });

    let constant = spec.point_independent();
    checks.push(WitnessCheck {
        name: "distribution constant across points",
        pass: constant,
        detail: format!("{:?}", spec.counts[0]),
    });

    match (&spec.exact_values, constant) {
        (Some(vals), true) => {
            let triple = InnerProductTriple {
                a: RootValue::Exact(vals[0].clone()),
                b: RootValue::Exact(vals[1].clone()),
                c: RootValue::Exact(vals[2].clone()),
            };
            let expected = distance_distribution(n, &BigInt::from(m), &triple)
                .ok()
                .and_then(|d| d.exact_values());
            let got: Vec<Rat> = spec.counts[0].iter().map(|&c| rat_int(c as i64)).collect();
            let pass = expected
                .as_ref()
                .map_or(false, |e| e.iter().zip(&got).all(|(x, y)| x == y));
            checks.push(WitnessCheck {
                name: "distribution matches moment solve",
                pass,
                detail: format!("counts {:?}", spec.counts[0]),
            });
            let s = &vals[2];
            let lev = crate::ortho::levenshtein_polynomial(3, n, s);
            let roots = crate::exact::rational_roots(&lev);
            checks.push(WitnessCheck {
                name: "spectrum = node polynomial roots",
                pass: roots == *vals,
                detail: format!(
                    "roots [{}]",
                    roots.iter().map(format_rat).collect::<Vec<_>>().join(", ")
                ),
            });
            let bound = levenshtein_bound_l5(n, s);
            let pass = bound.as_ref().map_or(false, |b| *b == rat_int(m as i64));
            checks.push(WitnessCheck {
                name: "M attains the L_5 bound",
                pass,
                detail: format!("M = {m}"),
            });
        }
        _ => {
            let vals = &spec.numeric_values;
            let counts: Vec<f64> = spec.counts[0].iter().map(|&c| c as f64).collect();
            // moment residuals of the i = 0..2 system
            let f = crate::ortho::moment_targets(n);
            let mut ok = true;
            for i in 0..3 {
                let lhs: f64 = vals.iter().zip(&counts).map(|(v, c)| v.powi(i as i32) * c).sum();
                let rhs = rat_to_f64(&f[i]) * m as f64 - 1.0;
                if (lhs - rhs).abs() > NUMERIC_TOLERANCE * m as f64 {
                    ok = false;
                }
            }
            checks.push(WitnessCheck {
                name: "distribution matches moment solve",
                pass: ok && constant,
                detail: format!("counts {:?}", spec.counts[0]),
            });
            let s = vals[2];
            let pk = jacobi_polynomial(3, n);
            let pk1 = jacobi_polynomial(2, n);
            let lev = |t: f64| pk.eval_f64(t) * pk1.eval_f64(s) - pk.eval_f64(s) * pk1.eval_f64(t);
            let pass = vals.iter().all(|&v| lev(v).abs() < 1e-7);
            checks.push(WitnessCheck {
                name: "spectrum = node polynomial roots",
                pass,
                detail: format!("values {:?}", vals),
            });
            let n_f = n as f64;
            let den = 2.0 * s * (3.0 - (n_f + 2.0) * s * s);
            let l5 = n_f * ((n_f + 2.0) * (n_f + 3.0) * s * s + 4.0 * (n_f + 2.0) * s - n_f + 1.0)
                * (1.0 - s)
                / den;
            checks.push(WitnessCheck {
                name: "M attains the L_5 bound",
                pass: (l5 - m as f64).abs() < 1e-6 * m as f64,
                detail: format!("L_5 = {l5:.9}, M = {m}"),
            });
        }
    }
    WitnessReport { checks }
}
