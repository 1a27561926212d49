//! Uniform hypergraphs with the deletion and union operations used by the
//! matching-polynomial recurrences.
//!
//! Vertices are `0..n`. Edges are stored as sorted vertex lists inside a
//! sorted set, so iteration order (and therefore every derived result) is
//! deterministic. Deleting vertices renumbers the survivors in order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `r`-uniform hypergraph on the vertex set `0..n`.
///
/// Isolated vertices are allowed; `N_k` is simply `edgeless(r, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphFile", into = "HypergraphFile")]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: BTreeSet<Vec<usize>>,
}

/// On-disk form: `{"r": 3, "n": 5, "edges": [[0,1,2],[2,3,4]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphFile> for UniformHypergraph {
    type Error = Error;

    fn try_from(file: HypergraphFile) -> Result<Self> {
        UniformHypergraph::new(file.r, file.n, file.edges)
    }
}

impl From<UniformHypergraph> for HypergraphFile {
    fn from(h: UniformHypergraph) -> Self {
        HypergraphFile {
            r: h.r,
            n: h.n,
            edges: h.edges.into_iter().collect(),
        }
    }
}

impl UniformHypergraph {
    /// Builds and validates a hypergraph. Edge vertex lists may be given in
    /// any order; they are sorted on the way in.
    pub fn new<I>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if r < 2 {
            return Err(Error::InvalidRank(r));
        }
        let mut set = BTreeSet::new();
        for edge in edges {
            let sorted = validate_edge(r, n, edge)?;
            if !set.insert(sorted.clone()) {
                return Err(Error::DuplicateEdge(sorted));
            }
        }
        Ok(UniformHypergraph { r, n, edges: set })
    }

    /// `n` isolated vertices.
    ///
    /// # Panics
    ///
    /// Panics if `r < 2`.
    pub fn edgeless(r: usize, n: usize) -> Self {
        assert!(r >= 2, "edge size must be at least 2");
        UniformHypergraph {
            r,
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Skips validation. Every edge must already be sorted, of size `r`,
    /// and in range.
    pub(crate) fn from_parts(r: usize, n: usize, edges: BTreeSet<Vec<usize>>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.len() == r && e.windows(2).all(|w| w[0] < w[1]) && e[r - 1] < n));
        UniformHypergraph { r, n, edges }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges.iter().map(Vec::as_slice)
    }

    pub(crate) fn edge_set(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.contains(&sorted)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// `d_H(v)`, the number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// `E_H(v)`, in sorted order.
    pub fn incident_edges(&self, v: usize) -> Vec<&[usize]> {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .map(Vec::as_slice)
            .collect()
    }

    /// Removes every vertex flagged in `remove` and every edge touching one,
    /// renumbering the survivors in order.
    fn without_vertices(&self, remove: &[bool]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !remove[v] {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !remove[v]))
            .map(|e| e.iter().map(|&v| map[v]).collect())
            .collect();
        UniformHypergraph::from_parts(self.r, next, edges)
    }

    /// `H - v`: deletes `v` and every edge containing it.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let mut remove = vec![false; self.n];
        remove[v] = true;
        Ok(self.without_vertices(&remove))
    }

    /// Deletes a set of vertices (duplicates are ignored).
    pub fn delete_vertices(&self, vertices: &[usize]) -> Result<Self> {
        let mut remove = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            remove[v] = true;
        }
        Ok(self.without_vertices(&remove))
    }

    /// `H - V(e)`: deletes all `r` vertices of the edge `e`.
    pub fn delete_closed_edge(&self, edge: &[usize]) -> Result<Self> {
        if !self.contains_edge(edge) {
            return Err(Error::EdgeNotFound(edge.to_vec()));
        }
        self.delete_vertices(edge)
    }

    /// `H \ E'`: drops the listed edges and keeps every vertex.
    pub fn delete_edges(&self, edges: &[Vec<usize>]) -> Result<Self> {
        let mut kept = self.edges.clone();
        for e in edges {
            let mut sorted = e.clone();
            sorted.sort_unstable();
            if !self.edges.contains(&sorted) {
                return Err(Error::EdgeNotFound(e.clone()));
            }
            kept.remove(&sorted);
        }
        Ok(UniformHypergraph::from_parts(self.r, self.n, kept))
    }

    /// `G ∪ H` with `H`'s vertices shifted by `n_G`. An edgeless side adopts
    /// the other side's `r`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let r = match (self.has_edges(), other.has_edges()) {
            (true, true) if self.r != other.r => {
                return Err(Error::RankMismatch {
                    left: self.r,
                    right: other.r,
                })
            }
            (false, true) => other.r,
            _ => self.r,
        };
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Ok(UniformHypergraph::from_parts(r, self.n + other.n, edges))
    }

    /// Adds edges, validating each one.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut edges = self.edges.clone();
        for e in extra {
            let sorted = validate_edge(self.r, self.n, e)?;
            if !edges.insert(sorted.clone()) {
                return Err(Error::DuplicateEdge(sorted));
            }
        }
        Ok(UniformHypergraph::from_parts(self.r, self.n, edges))
    }

    /// Appends `k` isolated vertices.
    pub fn with_isolated(&self, k: usize) -> Self {
        UniformHypergraph::from_parts(self.r, self.n + k, self.edges.clone())
    }

    /// Relabels vertices by `perm` (old id -> new id), which must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {} but n = {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        Ok(UniformHypergraph::from_parts(self.r, self.n, edges))
    }

    /// Component label per vertex (labels are dense, in order of first
    /// appearance) together with the component count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut dsu = Dsu::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut root_label = vec![usize::MAX; self.n];
        let mut count = 0;
        for (v, slot) in label.iter_mut().enumerate() {
            let root = dsu.find(v);
            if root_label[root] == usize::MAX {
                root_label[root] = count;
                count += 1;
            }
            *slot = root_label[root];
        }
        (label, count)
    }

    /// Connected components as standalone hypergraphs, each renumbered in
    /// order, listed by smallest original vertex.
    pub fn components(&self) -> Vec<UniformHypergraph> {
        let (label, count) = self.component_labels();
        let mut local = vec![0; self.n];
        let mut sizes = vec![0; count];
        for v in 0..self.n {
            local[v] = sizes[label[v]];
            sizes[label[v]] += 1;
        }
        let mut edge_sets = vec![BTreeSet::new(); count];
        for e in &self.edges {
            let c = label[e[0]];
            edge_sets[c].insert(e.iter().map(|&v| local[v]).collect::<Vec<_>>());
        }
        edge_sets
            .into_iter()
            .zip(sizes)
            .map(|(edges, n)| UniformHypergraph::from_parts(self.r, n, edges))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_labels().1 == 1
    }

    /// Connected and Berge-acyclic: the vertex/edge incidence graph is a tree,
    /// which for a connected hypergraph means `n = m(r - 1) + 1`.
    pub fn is_supertree(&self) -> bool {
        self.is_connected() && self.n == self.edges.len() * (self.r - 1) + 1
    }

    /// Every component is a supertree (isolated vertices count as trivial
    /// supertrees).
    pub fn is_superforest(&self) -> bool {
        let (_, c) = self.component_labels();
        self.n == self.edges.len() * (self.r - 1) + c
    }
}

fn validate_edge(r: usize, n: usize, mut edge: Vec<usize>) -> Result<Vec<usize>> {
    if edge.len() != r {
        return Err(Error::InvalidEdge {
            reason: format!("expected {} vertices, found {}", r, edge.len()),
            edge,
        });
    }
    if let Some(&v) = edge.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidEdge {
            reason: format!("vertex {v} is out of range for n = {n}"),
            edge,
        });
    }
    let original = edge.clone();
    edge.sort_unstable();
    if edge.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidEdge {
            edge: original,
            reason: "repeated vertex".into(),
        });
    }
    Ok(edge)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
