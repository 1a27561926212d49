//! k-matching counts and matching polynomials.
//!
//! `φ(H, x) = Σ_k (−1)^k m(H, k) x^{n − kr}`. Two independent routes:
//! [`matching_polynomial_oracle`] counts matchings by brute force, while
//! [`MatchingEngine`] uses the vertex-deletion recurrence
//! `φ(G) = x φ(G − u) − Σ_{e ∋ u} φ(G − V(e))` with multiplicativity over
//! components and a memo keyed by component canonical forms.

use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::iso::tree_canonical_form;
use crate::poly::SparsePolynomial;

/// `m(H, 0..=ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingTable {
    pub counts: Vec<BigUint>,
}

impl MatchingTable {
    /// Enumerates every matching by backtracking over edges in sorted order.
    pub fn enumerate(h: &UniformHypergraph) -> Self {
        let edges: Vec<&[usize]> = h.edges().collect();
        let mut counts = vec![BigUint::zero(); edges.len() + 1];
        let mut used = vec![false; h.n()];
        enumerate_from(&edges, 0, 0, &mut used, &mut counts);
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        MatchingTable { counts }
    }

    /// Matching number `ν(H)`.
    pub fn matching_number(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    /// `Σ_k (−1)^k m_k x^{n − kr}`.
    pub fn to_polynomial(&self, r: usize, n: usize) -> SparsePolynomial {
        SparsePolynomial::from_terms(self.counts.iter().enumerate().map(|(k, c)| {
            let c = BigInt::from(c.clone());
            (n - k * r, if k % 2 == 0 { c } else { -c })
        }))
    }
}

fn enumerate_from(
    edges: &[&[usize]],
    start: usize,
    size: usize,
    used: &mut [bool],
    counts: &mut [BigUint],
) {
    counts[size] += 1u32;
    for i in start..edges.len() {
        let e = edges[i];
        if e.iter().any(|&v| used[v]) {
            continue;
        }
        for &v in e {
            used[v] = true;
        }
        enumerate_from(edges, i + 1, size + 1, used, counts);
        for &v in e {
            used[v] = false;
        }
    }
}

/// Number of `k`-sets of pairwise vertex-disjoint edges.
pub fn count_matchings(h: &UniformHypergraph, k: usize) -> BigUint {
    MatchingTable::enumerate(h).count(k)
}

/// `φ(H, x)` straight from the definition, by enumerating matchings.
pub fn matching_polynomial_oracle(h: &UniformHypergraph) -> SparsePolynomial {
    MatchingTable::enumerate(h).to_polynomial(h.r(), h.n())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum MemoKey {
    /// Supertree component, identified up to isomorphism.
    Tree { r: usize, m: usize, form: Vec<u8> },
    /// Any other connected component, identified by its labeled edge set.
    Labeled {
        r: usize,
        n: usize,
        edges: Vec<Vec<usize>>,
    },
}

impl MemoKey {
    fn of(h: &UniformHypergraph) -> Self {
        if h.is_supertree() {
            if let Some(form) = tree_canonical_form(h) {
                return MemoKey::Tree {
                    r: h.r(),
                    m: h.edge_count(),
                    form,
                };
            }
        }
        MemoKey::Labeled {
            r: h.r(),
            n: h.n(),
            edges: h.edges().map(<[usize]>::to_vec).collect(),
        }
    }
}

/// Recurrence-based matching-polynomial evaluator with a shared memo.
///
/// The memo is a concurrent map, so one engine can serve many threads.
#[derive(Default)]
pub struct MatchingEngine {
    memo: DashMap<MemoKey, SparsePolynomial>,
}

impl fmt::Debug for MatchingEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatchingEngine")
            .field("memo_entries", &self.memo.len())
            .finish()
    }
}

impl MatchingEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    pub fn matching_polynomial(&self, h: &UniformHypergraph) -> SparsePolynomial {
        if !h.has_edges() {
            return SparsePolynomial::x_pow(h.n());
        }
        let mut isolated = 0;
        let mut acc = SparsePolynomial::one();
        for comp in h.components() {
            if comp.has_edges() {
                acc = &acc * &self.connected(&comp);
            } else {
                isolated += comp.n();
            }
        }
        acc.multiply_by_power(isolated)
    }

    fn connected(&self, h: &UniformHypergraph) -> SparsePolynomial {
        let key = MemoKey::of(h);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let u = pivot(h);
        let mut phi = self
            .matching_polynomial(&h.delete_vertex(u).expect("pivot is a vertex"))
            .multiply_by_power(1);
        for e in h.incident_edges(u) {
            let rest = h.delete_vertices(e).expect("edge vertices exist");
            phi = &phi - &self.matching_polynomial(&rest);
        }
        self.memo.insert(key, phi.clone());
        phi
    }
}

/// Lowest-numbered vertex of maximum degree.
fn pivot(h: &UniformHypergraph) -> usize {
    let degrees = h.degrees();
    let mut best = 0;
    for (v, &d) in degrees.iter().enumerate() {
        if d > degrees[best] {
            best = v;
        }
    }
    best
}

fn shared_engine() -> &'static MatchingEngine {
    static ENGINE: OnceLock<MatchingEngine> = OnceLock::new();
    ENGINE.get_or_init(MatchingEngine::new)
}

/// `φ(H, x)` via the deletion recurrence, using a process-wide memo.
pub fn matching_polynomial(h: &UniformHypergraph) -> SparsePolynomial {
    shared_engine().matching_polynomial(h)
}

/// `φ = x^z · q(x^r)` with `z = n − rν` and `q(y) = Σ_k (−1)^k m_k y^{ν−k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedPolynomial {
    pub z: usize,
    pub r: usize,
    pub q: SparsePolynomial,
}

impl ReducedPolynomial {
    /// `ν(H)`, the degree of `q`.
    pub fn matching_number(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }

    /// Rebuilds `x^z · q(x^r)`.
    pub fn expand(&self) -> SparsePolynomial {
        self.q.compose_power(self.r).multiply_by_power(self.z)
    }
}

/// Splits a matching polynomial of an `r`-uniform hypergraph on `n` vertices
/// into its reduced form.
pub fn reduce(phi: &SparsePolynomial, r: usize, n: usize) -> Result<ReducedPolynomial> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    let Some(low) = phi.lowest_exponent() else {
        return Err(Error::Shape("zero polynomial".into()));
    };
    for (e, _) in phi.terms() {
        if e > n {
            return Err(Error::Shape(format!("exponent {e} exceeds n = {n}")));
        }
        if !(n - e).is_multiple_of(r) {
            return Err(Error::Shape(format!(
                "exponent {e} is not congruent to n = {n} modulo r = {r}"
            )));
        }
    }
    let q = SparsePolynomial::from_terms(phi.terms().map(|(e, c)| ((e - low) / r, c.clone())));
    Ok(ReducedPolynomial { z: low, r, q })
}

/// Whether `φ` has degree `n`, is monic, and only uses exponents `n − kr`.
pub fn has_matching_shape(phi: &SparsePolynomial, r: usize, n: usize) -> bool {
    phi.degree() == Some(n)
        && phi.leading_coefficient().is_some_and(One::is_one)
        && phi.terms().all(|(e, _)| (n - e).is_multiple_of(r))
}
