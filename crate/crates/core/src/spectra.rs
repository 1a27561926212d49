//! Spectral radius and matching energy from matching-polynomial roots, and
//! the exact adjacency characteristic polynomial of ordinary forests.
//!
//! Both quantities go through the reduced polynomial `q` with
//! `φ(x) = x^z q(x^r)`: every nonzero root `μ` of `q` gives `r` roots of `φ`
//! of modulus `|μ|^{1/r}`, so `ρ = y*^{1/r}` for the largest real root `y*`
//! and `ME = r Σ |μ|^{1/r}`.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::matching::{matching_polynomial, reduce, ReducedPolynomial};
use crate::poly::SparsePolynomial;

pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 2000;
const REFINE_SWEEPS: usize = 100;

/// `HG_TOL` when set to a positive number, else [`DEFAULT_TOL`].
pub fn default_tol() -> f64 {
    std::env::var("HG_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

/// All complex roots of `p`, repeated by multiplicity.
///
/// Zero roots are split off exactly, the rest is factored square-free and
/// each factor is solved by Aberth–Ehrlich iteration with a Newton polish.
pub fn roots(p: &SparsePolynomial, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_constant() {
        return Err(Error::InvalidParameter(
            "root finding needs a nonconstant polynomial".into(),
        ));
    }
    let (zeros, rest) = p.strip_zero_roots();
    let mut out = vec![Complex64::zero(); zeros];
    for (factor, mult) in rest.squarefree_decomposition() {
        let mut found = aberth(&factor.to_f64_dense(), tol)?;
        refine(&factor, &mut found, tol)?;
        for mut z in found {
            if z.im.abs() <= 1e-12 * z.norm().max(1.0) {
                z.im = 0.0;
            }
            out.extend(std::iter::repeat_n(z, mult));
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous iteration on a square-free polynomial with ascending
/// coefficients.
fn aberth(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if d == 1 {
        return Ok(vec![Complex64::new(-monic[0], 0.0)]);
    }
    // Fujiwara bound on root moduli
    let radius = (1..=d)
        .map(|i| {
            let c = monic[d - i].abs();
            if i == d {
                (c / 2.0).powf(1.0 / i as f64)
            } else {
                c.powf(1.0 / i as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let center = -monic[d - 1] / d as f64;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = TAU * k as f64 / d as f64 + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(radius.max(1e-3), angle)
        })
        .collect();

    let target = (tol * 1e-4).max(4.0 * f64::EPSILON);
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.abs()).collect();
    let mut done = vec![false; d];
    let mut iterations = 0;
    while done.iter().any(|&f| !f) {
        if iterations >= MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                iterations,
                partial: z,
            });
        }
        iterations += 1;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&monic, z[i]);
            // residual at the rounding floor: no further step can help
            let floor = abs_coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, &c| acc * z[i].norm() + c);
            if p.norm() <= 8.0 * d as f64 * f64::EPSILON * floor {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                done[i] = w.norm() <= target * z[i].norm().max(1.0);
            }
        }
    }

    Ok(z)
}

/// Further Aberth sweeps with exactly evaluated `p` and `p'`, so
/// cancellation in `f64` Horner does not limit the final accuracy.
fn refine(factor: &SparsePolynomial, z: &mut [Complex64], tol: f64) -> Result<()> {
    let derivative = factor.derivative();
    let d = z.len();
    let mut worst = f64::INFINITY;
    for _ in 0..REFINE_SWEEPS {
        worst = 0.0;
        for i in 0..d {
            let p = factor.evaluate_complex_exact(z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / derivative.evaluate_complex_exact(z[i]);
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if worst <= 8.0 * f64::EPSILON {
            return Ok(());
        }
    }
    if worst <= tol {
        Ok(())
    } else {
        Err(Error::NoConvergence {
            iterations: REFINE_SWEEPS,
            partial: z.to_vec(),
        })
    }
}

/// Sturm sequence of a square-free polynomial.
fn sturm_chain(p: &SparsePolynomial) -> Vec<SparsePolynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_constant() {
            break;
        }
        let (rem, steps) = chain[n - 2].pseudo_rem(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        let lc_negative = chain[n - 1]
            .leading_coefficient()
            .is_some_and(Signed::is_negative);
        let flip = lc_negative && steps % 2 == 1;
        let next = if flip { rem } else { -&rem };
        let content = SparsePolynomial::monomial(next.content(), 0);
        chain.push(next.div_exact(&content).expect("content divides"));
    }
    chain
}

fn sign_variations(chain: &[SparsePolynomial], x: f64) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in chain.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct roots in `(a, b]`.
fn roots_between(chain: &[SparsePolynomial], a: f64, b: f64) -> usize {
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// Largest real root of `q` in `[0, 1 + max|coef|/|lead|]`, isolated with a
/// Sturm sequence and refined with exact-sign bisection and Newton steps.
pub fn largest_real_root(q: &SparsePolynomial, tol: f64) -> Result<f64> {
    let p = q.squarefree_part();
    let lead = p.leading_coefficient().map(to_f64).unwrap_or(0.0).abs();
    let max_coef = p
        .terms()
        .rev()
        .skip(1)
        .map(|(_, c)| to_f64(c).abs())
        .fold(0.0, f64::max);
    let bound = (1.0 + max_coef / lead) * (1.0 + 1e-12) + 1.0;
    if p.is_constant() || !bound.is_finite() {
        return Err(Error::NoRealRoot { bound });
    }
    let chain = sturm_chain(&p);
    let (mut lo, mut hi) = (0.0_f64, bound);
    if roots_between(&chain, lo, hi) == 0 {
        return if p.sign_at(0.0) == 0 {
            Ok(0.0)
        } else {
            Err(Error::NoRealRoot { bound })
        };
    }
    // isolate: shrink until (lo, hi] holds exactly the largest root
    while roots_between(&chain, lo, hi) > 1 {
        let mid = 0.5 * (lo + hi);
        if roots_between(&chain, mid, hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if p.sign_at(hi) == 0 {
        return Ok(hi);
    }
    let s_hi = p.sign_at(hi);
    let width_goal = (tol * 1e-3).max(f64::EPSILON * hi.max(1.0));
    let dp = p.derivative();
    let mut x = 0.5 * (lo + hi);
    while hi - lo > width_goal {
        let newton = x - p.evaluate_f64(x) / dp.evaluate_f64(x);
        let candidate = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let mid = 0.5 * (lo + hi);
        if candidate <= lo || candidate >= hi || mid <= lo || mid >= hi {
            break;
        }
        // probe the Newton point and a bisection point so the bracket always
        // at least halves
        for probe in [candidate, mid] {
            if probe <= lo || probe >= hi {
                continue;
            }
            match p.sign_at(probe) {
                0 => return Ok(probe),
                s if s == s_hi => hi = probe,
                _ => lo = probe,
            }
        }
        x = candidate.clamp(lo, hi);
    }
    Ok(0.5 * (lo + hi))
}

/// Reduced form of `φ(H)`.
pub fn reduced_polynomial(h: &UniformHypergraph) -> Result<ReducedPolynomial> {
    reduce(&matching_polynomial(h), h.r(), h.n())
}

/// `ρ(H)`: the `r`-th root of the largest real root of `q`. Zero for an
/// edgeless hypergraph.
pub fn spectral_radius(h: &UniformHypergraph, tol: f64) -> Result<f64> {
    if !h.has_edges() {
        return Ok(0.0);
    }
    spectral_radius_from_reduced(&reduced_polynomial(h)?, tol)
}

pub fn spectral_radius_from_reduced(red: &ReducedPolynomial, tol: f64) -> Result<f64> {
    if red.q.is_constant() {
        return Ok(0.0);
    }
    let y = largest_real_root(&red.q, tol)?;
    Ok(y.powf(1.0 / red.r as f64))
}

fn energy_from_q_roots(q_roots: &[Complex64], r: usize) -> f64 {
    r as f64
        * q_roots
            .iter()
            .filter(|mu| !mu.is_zero())
            .map(|mu| mu.norm().powf(1.0 / r as f64))
            .sum::<f64>()
}

/// `ME(H) = r Σ_{μ ≠ 0} |μ|^{1/r}` over the roots of `q`.
pub fn matching_energy(h: &UniformHypergraph, tol: f64) -> Result<f64> {
    if !h.has_edges() {
        return Ok(0.0);
    }
    let red = reduced_polynomial(h)?;
    Ok(energy_from_q_roots(&roots(&red.q, tol)?, red.r))
}

/// Sum of the moduli of all roots of `φ`, found directly.
pub fn matching_energy_from_phi(phi: &SparsePolynomial, tol: f64) -> Result<f64> {
    let (_, rest) = phi.strip_zero_roots();
    if rest.is_constant() {
        return Ok(0.0);
    }
    Ok(roots(&rest, tol)?.iter().map(|z| z.norm()).sum())
}

pub(crate) fn round_sig<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round15(*x))
}

fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// One root in JSON form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    #[serde(serialize_with = "round_sig")]
    pub re: f64,
    #[serde(serialize_with = "round_sig")]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    #[serde(serialize_with = "round_sig")]
    pub rho: f64,
    #[serde(serialize_with = "round_sig")]
    pub me: f64,
    #[serde(serialize_with = "round_sig")]
    pub tol: f64,
    pub q_roots: Vec<RootJson>,
}

impl SpectralSummary {
    pub fn compute(h: &UniformHypergraph, tol: f64) -> Result<Self> {
        if !h.has_edges() {
            return Ok(SpectralSummary {
                rho: 0.0,
                me: 0.0,
                tol,
                q_roots: Vec::new(),
            });
        }
        let red = reduced_polynomial(h)?;
        let q_roots = roots(&red.q, tol)?;
        Ok(SpectralSummary {
            rho: spectral_radius_from_reduced(&red, tol)?,
            me: energy_from_q_roots(&q_roots, red.r),
            tol,
            q_roots: q_roots
                .iter()
                .map(|z| RootJson { re: z.re, im: z.im })
                .collect(),
        })
    }
}

/// `det(xI − A)` for an ordinary forest, by fraction-free elimination over
/// `Z[x]`. Independent of the matching code.
pub fn tree_char_poly(g: &UniformHypergraph) -> Result<SparsePolynomial> {
    if g.r() != 2 && g.has_edges() {
        return Err(Error::NotForest(format!("edges have {} vertices", g.r())));
    }
    if !g.is_superforest() {
        return Err(Error::NotForest("graph contains a cycle".into()));
    }
    let n = g.n();
    let x = SparsePolynomial::x_pow(1);
    let minus_one = SparsePolynomial::monomial(-1, 0);
    let mut m = vec![vec![SparsePolynomial::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = x.clone();
    }
    for e in g.edges() {
        m[e[0]][e[1]] = minus_one.clone();
        m[e[1]][e[0]] = minus_one.clone();
    }
    // Bareiss: after step k every pivot is the leading principal minor of
    // xI − A, which is monic, so each division is exact.
    let mut prev = SparsePolynomial::one();
    for k in 0..n.saturating_sub(1) {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 {
        SparsePolynomial::one()
    } else {
        m[n - 1][n - 1].clone()
    })
}
