//! Isomorphism testing for small uniform hypergraphs.
//!
//! Superforests get an exact canonical form: the vertex/edge incidence graph
//! of each component is a tree, which is encoded AHU-style from its center.
//! Everything else goes through a backtracking search over color-refined
//! candidate sets with codegree pruning. The search is exponential in the
//! worst case and intended for `n` up to roughly 20.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::hypergraph::UniformHypergraph;

/// Canonical encoding of a connected supertree. Two connected supertrees
/// with the same `r` are isomorphic iff their encodings are equal.
///
/// Returns `None` when `h` is not a connected supertree.
pub fn tree_canonical_form(h: &UniformHypergraph) -> Option<Vec<u8>> {
    if !h.is_supertree() {
        return None;
    }
    let n = h.n();
    let edges: Vec<&[usize]> = h.edges().collect();
    let total = n + edges.len();
    let mut adj = vec![Vec::new(); total];
    for (i, e) in edges.iter().enumerate() {
        for &v in e.iter() {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }
    let centers = tree_centers(&adj);
    centers
        .iter()
        .map(|&c| encode(&adj, n, c, usize::MAX))
        .min()
}

/// Canonical form of a superforest: sorted multiset of component forms.
pub fn forest_canonical_form(h: &UniformHypergraph) -> Option<Vec<Vec<u8>>> {
    if !h.is_superforest() {
        return None;
    }
    let mut forms: Vec<Vec<u8>> = h
        .components()
        .iter()
        .map(|c| tree_canonical_form(c).expect("component of a superforest is a supertree"))
        .collect();
    forms.sort();
    Some(forms)
}

fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let total = adj.len();
    if total <= 2 {
        return (0..total).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..total).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = total;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

fn encode(adj: &[Vec<usize>], n: usize, node: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = adj[node]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| encode(adj, n, c, node))
        .collect();
    children.sort();
    let mut out = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>() + 1);
    out.push(b'(');
    out.push(if node < n { b'v' } else { b'e' });
    for c in children {
        out.extend(c);
    }
    out.push(b')');
    out
}

/// True iff an edge-preserving vertex bijection exists.
pub fn are_isomorphic(g: &UniformHypergraph, h: &UniformHypergraph) -> bool {
    if !cheap_invariants_match(g, h) {
        return false;
    }
    if let (Some(a), Some(b)) = (forest_canonical_form(g), forest_canonical_form(h)) {
        return a == b;
    }
    search(g, h)
}

/// Backtracking search only, bypassing the superforest canonical form.
pub fn are_isomorphic_by_search(g: &UniformHypergraph, h: &UniformHypergraph) -> bool {
    cheap_invariants_match(g, h) && search(g, h)
}

fn cheap_invariants_match(g: &UniformHypergraph, h: &UniformHypergraph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    if g.has_edges() && g.r() != h.r() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh
}

/// 1-dimensional color refinement run jointly on both hypergraphs so the
/// colors are comparable.
fn refine_colors(g: &UniformHypergraph, h: &UniformHypergraph) -> (Vec<usize>, Vec<usize>) {
    let mut cg = g.degrees();
    let mut ch = h.degrees();
    let mut classes = count_classes(&cg, &ch);
    loop {
        let mut palette: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
        let sg = signatures(g, &cg);
        let sh = signatures(h, &ch);
        for s in sg.iter().chain(sh.iter()) {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        // BTreeMap order makes the relabeling independent of insertion order
        let rank: BTreeMap<&(usize, Vec<Vec<usize>>), usize> =
            palette.keys().enumerate().map(|(i, k)| (k, i)).collect();
        let ng: Vec<usize> = sg.iter().map(|s| rank[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| rank[s]).collect();
        let next_classes = count_classes(&ng, &nh);
        cg = ng;
        ch = nh;
        if next_classes == classes {
            return (cg, ch);
        }
        classes = next_classes;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).collect::<BTreeSet<_>>().len()
}

fn signatures(h: &UniformHypergraph, color: &[usize]) -> Vec<(usize, Vec<Vec<usize>>)> {
    let mut sig: Vec<(usize, Vec<Vec<usize>>)> = color.iter().map(|&c| (c, Vec::new())).collect();
    for e in h.edges() {
        for &v in e {
            let mut others: Vec<usize> = e.iter().filter(|&&w| w != v).map(|&w| color[w]).collect();
            others.sort_unstable();
            sig[v].1.push(others);
        }
    }
    for s in &mut sig {
        s.1.sort();
    }
    sig
}

fn codegree_matrix(h: &UniformHypergraph) -> Vec<u32> {
    let n = h.n();
    let mut m = vec![0u32; n * n];
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                m[a * n + b] += 1;
                m[b * n + a] += 1;
            }
        }
    }
    m
}

struct Search<'a> {
    n: usize,
    order: Vec<usize>,
    color_g: Vec<usize>,
    color_h: Vec<usize>,
    codeg_g: Vec<u32>,
    codeg_h: Vec<u32>,
    // edges of g grouped by the position (in `order`) of their last vertex
    closing: Vec<Vec<&'a [usize]>>,
    h_edges: &'a BTreeSet<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

fn search(g: &UniformHypergraph, h: &UniformHypergraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let (color_g, color_h) = refine_colors(g, h);
    let hist = |c: &[usize]| {
        let mut m = BTreeMap::new();
        for &x in c {
            *m.entry(x).or_insert(0usize) += 1;
        }
        m
    };
    let hist_g = hist(&color_g);
    if hist_g != hist(&color_h) {
        return false;
    }

    // BFS order over g, each component seeded at its rarest-colored vertex
    let mut nbrs = vec![BTreeSet::new(); n];
    for e in g.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
    }
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&v| (hist_g[&color_g[v]], v));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in seeds {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing = vec![Vec::new(); n];
    for e in g.edges() {
        let last = e.iter().map(|&v| pos[v]).max().unwrap();
        closing[last].push(e);
    }

    let mut s = Search {
        n,
        order,
        color_g,
        color_h,
        codeg_g: codegree_matrix(g),
        codeg_h: codegree_matrix(h),
        closing,
        h_edges: h.edge_set(),
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    s.extend(0)
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.n {
            if self.used[y] || self.color_h[y] != self.color_g[x] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&w| self.codeg_g[x * self.n + w] == self.codeg_h[y * self.n + self.map[w]]);
            if !consistent {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            let edges_ok = self.closing[depth].iter().all(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| self.map[v]).collect();
                img.sort_unstable();
                self.h_edges.contains(&img)
            });
            if edges_ok && self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(r: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::new(r, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn reflexive_and_relabeled() {
        let h = hg(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[2, 5, 6]]);
        assert!(are_isomorphic(&h, &h));
        let perm = [6, 5, 4, 3, 2, 1, 0];
        let p = h.relabel(&perm).unwrap();
        assert!(are_isomorphic(&h, &p));
        assert!(are_isomorphic_by_search(&h, &p));
    }

    #[test]
    fn star_vs_path() {
        let star = hg(3, 7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        let path = hg(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        assert!(!are_isomorphic(&star, &path));
        assert!(!are_isomorphic_by_search(&star, &path));
    }

    #[test]
    fn same_degrees_different_structure() {
        // two 6-cycles vs one 12-cycle... smaller: C6 vs 2*C3 (r = 2)
        let c6 = hg(
            2,
            6,
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
        );
        let two_c3 = hg(
            2,
            6,
            &[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5]],
        );
        assert!(!are_isomorphic(&c6, &two_c3));
        let c6b = c6.relabel(&[3, 0, 4, 1, 5, 2]).unwrap();
        assert!(are_isomorphic(&c6, &c6b));
    }

    #[test]
    fn non_forest_hypergraphs() {
        let a = hg(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let b = hg(3, 5, &[&[2, 3, 4], &[1, 3, 4], &[0, 1, 3]]);
        assert!(are_isomorphic(&a, &b));
        let c = hg(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[0, 3, 4]]);
        assert!(!are_isomorphic(&a, &c));
    }

    #[test]
    fn forest_forms_match_search() {
        let a = hg(
            2,
            8,
            &[&[0, 1], &[1, 2], &[1, 3], &[4, 5], &[5, 6], &[6, 7]],
        );
        let b = hg(
            2,
            8,
            &[&[0, 1], &[1, 2], &[2, 3], &[4, 5], &[4, 6], &[4, 7]],
        );
        assert_eq!(are_isomorphic(&a, &b), are_isomorphic_by_search(&a, &b));
        assert!(are_isomorphic(&a, &b));
        let c = hg(
            2,
            8,
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[5, 6], &[6, 7]],
        );
        assert!(!are_isomorphic(&a, &c));
        assert!(!are_isomorphic_by_search(&a, &c));
    }

    #[test]
    fn edgeless() {
        let a = UniformHypergraph::edgeless(3, 4);
        let b = UniformHypergraph::edgeless(2, 4);
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &UniformHypergraph::edgeless(3, 5)));
        assert!(are_isomorphic(
            &UniformHypergraph::edgeless(3, 0),
            &UniformHypergraph::edgeless(3, 0)
        ));
    }

    #[test]
    fn canonical_form_distinguishes_vertex_and_edge_nodes() {
        let single = hg(3, 3, &[&[0, 1, 2]]);
        assert_eq!(
            tree_canonical_form(&single).unwrap(),
            b"(e(v)(v)(v))".to_vec()
        );
        assert_eq!(
            tree_canonical_form(&UniformHypergraph::edgeless(3, 1)).unwrap(),
            b"(v)".to_vec()
        );
        assert!(tree_canonical_form(&UniformHypergraph::edgeless(3, 2)).is_none());
    }
}
