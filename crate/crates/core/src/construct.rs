//! Named supertree families and gluing operations.
//!
//! Every constructor returns a [`Construction`]: the hypergraph plus a map of
//! named anchor vertices. Fresh vertices always take the next free indices,
//! left operand first, so outputs and anchors are reproducible.
//!
//! Anchor names:
//! * loose paths and the T/Q/R/W/Z families: `v1 .. v{t+1}` along the path,
//!   and `p{i}` for the pendant tip of the pendant edge attached at `v{i}`
//!   (the lowest fresh index of that edge; every choice of tip is equivalent
//!   up to automorphism);
//! * `tip` from [`attach_pendant`];
//! * `merged` from [`coalesce`] and [`coalesce_power`];
//! * `u`, and `v_1 .. v_m` for the images of `v` in each copy, from [`bridge`].

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    #[serde(flatten)]
    pub graph: UniformHypergraph,
    pub anchors: BTreeMap<String, usize>,
}

impl Construction {
    pub fn new(graph: UniformHypergraph) -> Self {
        Construction {
            graph,
            anchors: BTreeMap::new(),
        }
    }

    pub fn anchor(&self, name: &str) -> Result<usize> {
        self.anchors
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAnchor(name.to_string()))
    }

    /// Path vertex `v_i` (1-based, as in `v1 .. v{t+1}`).
    pub fn path_vertex(&self, i: usize) -> Result<usize> {
        self.anchor(&format!("v{i}"))
    }

    /// Pendant tip of the pendant edge attached at `v_i`.
    pub fn pendant_tip(&self, i: usize) -> Result<usize> {
        self.anchor(&format!("p{i}"))
    }
}

impl From<Construction> for UniformHypergraph {
    fn from(c: Construction) -> Self {
        c.graph
    }
}

fn check_rank(r: usize) -> Result<()> {
    if r < 2 {
        Err(Error::InvalidRank(r))
    } else {
        Ok(())
    }
}

fn check_vertex(h: &UniformHypergraph, v: usize) -> Result<()> {
    if h.contains_vertex(v) {
        Ok(())
    } else {
        Err(Error::UnknownVertex {
            vertex: v,
            n: h.n(),
        })
    }
}

fn same_rank(g: &UniformHypergraph, h: &UniformHypergraph) -> Result<()> {
    if g.r() != h.r() {
        Err(Error::RankMismatch {
            left: g.r(),
            right: h.r(),
        })
    } else {
        Ok(())
    }
}

/// `P_t^r = v_1 e_1 v_2 ... e_t v_{t+1}`. Vertices are numbered along the
/// path, so `v_i = (i - 1)(r - 1)`. `t = 0` gives a single vertex.
pub fn loose_path(r: usize, t: usize) -> Result<Construction> {
    check_rank(r)?;
    let edges: BTreeSet<Vec<usize>> = (0..t)
        .map(|i| (i * (r - 1)..=(i + 1) * (r - 1)).collect())
        .collect();
    let graph = UniformHypergraph::from_parts(r, t * (r - 1) + 1, edges);
    let anchors = (1..=t + 1)
        .map(|i| (format!("v{i}"), (i - 1) * (r - 1)))
        .collect();
    Ok(Construction { graph, anchors })
}

/// The `r`-th power of a simple graph: every 2-edge gains `r - 2` fresh
/// vertices. Original vertices keep their ids `0..n0`, where `n0` is one more
/// than the largest endpoint (or `0` for no edges).
pub fn power(graph_edges: &[[usize; 2]], r: usize) -> Result<UniformHypergraph> {
    check_rank(r)?;
    let n0 = graph_edges
        .iter()
        .flat_map(|e| e.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let base = UniformHypergraph::new(2, n0, graph_edges.iter().map(|e| e.to_vec()))?;
    if r == 2 {
        return Ok(base);
    }
    let mut next = n0;
    let mut edges = BTreeSet::new();
    for &[a, b] in graph_edges {
        let mut e = vec![a, b];
        e.extend(next..next + r - 2);
        next += r - 2;
        e.sort_unstable();
        edges.insert(e);
    }
    Ok(UniformHypergraph::from_parts(r, next, edges))
}

/// Appends the edge `{v} ∪ {r - 1 fresh vertices}`.
pub fn attach_pendant(h: &UniformHypergraph, v: usize) -> Result<Construction> {
    check_vertex(h, v)?;
    let (graph, tip) = attach_raw(h, v);
    Ok(Construction {
        graph,
        anchors: BTreeMap::from([("tip".to_string(), tip)]),
    })
}

fn attach_raw(h: &UniformHypergraph, v: usize) -> (UniformHypergraph, usize) {
    let r = h.r();
    let first = h.n();
    let mut e = vec![v];
    e.extend(first..first + r - 1);
    let mut edges = h.edge_set().clone();
    edges.insert(e);
    (
        UniformHypergraph::from_parts(r, first + r - 1, edges),
        first,
    )
}

/// Loose path of length `len` with one pendant edge at each listed
/// (1-based) path vertex.
fn caterpillar(r: usize, len: usize, attach_at: &[usize]) -> Result<Construction> {
    let mut c = loose_path(r, len)?;
    for &i in attach_at {
        let v = c.path_vertex(i)?;
        let (graph, tip) = attach_raw(&c.graph, v);
        c.graph = graph;
        c.anchors.insert(format!("p{i}"), tip);
    }
    Ok(c)
}

fn require_positive(name: &str, values: &[usize]) -> Result<()> {
    if values.contains(&0) {
        Err(Error::InvalidParameter(format!(
            "{name} parameters must all be at least 1, got {values:?}"
        )))
    } else {
        Ok(())
    }
}

/// `T(a, b)`: `P^r_{a+b}` with a pendant edge at `v_{a+1}`.
pub fn t_family(r: usize, a: usize, b: usize) -> Result<Construction> {
    require_positive("T", &[a, b])?;
    caterpillar(r, a + b, &[a + 1])
}

/// `Q(a, b, c)`: `P^r_{a+b+c}` with pendant edges at `v_{a+1}` and `v_{a+b+1}`.
pub fn q_family(r: usize, a: usize, b: usize, c: usize) -> Result<Construction> {
    require_positive("Q", &[a, b, c])?;
    caterpillar(r, a + b + c, &[a + 1, a + b + 1])
}

/// `R(a, b, c, d)`: `P^r_{a+b+c+d}` with pendant edges at `v_{a+1}`,
/// `v_{a+b+1}` and `v_{a+b+c+1}`.
pub fn r_family(r: usize, a: usize, b: usize, c: usize, d: usize) -> Result<Construction> {
    require_positive("R", &[a, b, c, d])?;
    caterpillar(r, a + b + c + d, &[a + 1, a + b + 1, a + b + c + 1])
}

/// `W_n = Q(1, n - 4, 1)`, `n ≥ 5`.
pub fn w_family(r: usize, n: usize) -> Result<Construction> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "W_n needs n >= 5, got {n}"
        )));
    }
    q_family(r, 1, n - 4, 1)
}

/// `Z_n = T(1, n - 2)`, `n ≥ 2`. `Z_2 = T(1, 0)` is the loose path of length 2.
pub fn z_family(r: usize, n: usize) -> Result<Construction> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Z_n needs n >= 2, got {n}"
        )));
    }
    caterpillar(r, n - 1, &[2])
}

/// Coalesces `h` into `g` identifying `v ∈ h` with `u ∈ g`. Returns the
/// result and the image of every vertex of `h`.
fn coalesce_raw(
    g: &UniformHypergraph,
    u: usize,
    h: &UniformHypergraph,
    v: usize,
) -> (UniformHypergraph, Vec<usize>) {
    let mut map = vec![0; h.n()];
    let mut next = g.n();
    for (w, slot) in map.iter_mut().enumerate() {
        if w == v {
            *slot = u;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = g.edge_set().clone();
    for e in h.edges() {
        let mut img: Vec<usize> = e.iter().map(|&w| map[w]).collect();
        img.sort_unstable();
        edges.insert(img);
    }
    let r = if g.has_edges() { g.r() } else { h.r() };
    (UniformHypergraph::from_parts(r, next, edges), map)
}

/// `G(u, v)H`: identifies `u ∈ G` with `v ∈ H`. `G` keeps its vertex ids and
/// the merged vertex is `u`.
pub fn coalesce(
    g: &UniformHypergraph,
    u: usize,
    h: &UniformHypergraph,
    v: usize,
) -> Result<Construction> {
    if g.has_edges() && h.has_edges() {
        same_rank(g, h)?;
    }
    check_vertex(g, u)?;
    check_vertex(h, v)?;
    let (graph, _) = coalesce_raw(g, u, h, v);
    Ok(Construction {
        graph,
        anchors: BTreeMap::from([("merged".to_string(), u)]),
    })
}

/// `G_u^m`: `m` copies of `G` sharing the vertex `u`. The shared vertex keeps
/// id `u`.
pub fn coalesce_power(g: &UniformHypergraph, u: usize, m: usize) -> Result<Construction> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "coalesce power needs m >= 1".into(),
        ));
    }
    check_vertex(g, u)?;
    let mut acc = g.clone();
    for _ in 1..m {
        acc = coalesce_raw(&acc, u, g, u).0;
    }
    Ok(Construction {
        graph: acc,
        anchors: BTreeMap::from([("merged".to_string(), u)]),
    })
}

/// `H_v^a · G_u^b`: `a` copies of `H` and `b` copies of `G`, all sharing one
/// vertex (`v` in each `H`, `u` in each `G`). Needs `a + b ≥ 1`.
pub fn mixed_coalesce_power(
    h: &UniformHypergraph,
    v: usize,
    a: usize,
    g: &UniformHypergraph,
    u: usize,
    b: usize,
) -> Result<Construction> {
    match (a, b) {
        (0, 0) => Err(Error::InvalidParameter(
            "mixed coalesce power needs at least one copy".into(),
        )),
        (0, b) => coalesce_power(g, u, b),
        (a, 0) => coalesce_power(h, v, a),
        (a, b) => {
            let left = coalesce_power(h, v, a)?;
            let right = coalesce_power(g, u, b)?;
            coalesce(&left.graph, v, &right.graph, u)
        }
    }
}

/// `G_u · mH_v`: `G`, `m` disjoint copies of `H`, and `m` new edges, the
/// `i`-th containing `u`, the copy-`i` image of `v`, and `r - 2` fresh
/// vertices. Layout: `G`'s vertices, then one block of `n_H` per copy, then
/// the bridge-internal vertices edge by edge.
pub fn bridge(
    g: &UniformHypergraph,
    u: usize,
    h: &UniformHypergraph,
    v: usize,
    m: usize,
) -> Result<Construction> {
    if m < 1 {
        return Err(Error::InvalidParameter("bridge needs m >= 1".into()));
    }
    same_rank(g, h)?;
    check_vertex(g, u)?;
    check_vertex(h, v)?;
    let r = g.r();
    let (ng, nh) = (g.n(), h.n());
    let mut edges = g.edge_set().clone();
    let mut anchors = BTreeMap::from([("u".to_string(), u)]);
    for i in 0..m {
        let offset = ng + i * nh;
        edges.extend(
            h.edges()
                .map(|e| e.iter().map(|&w| w + offset).collect::<Vec<_>>()),
        );
        anchors.insert(format!("v_{}", i + 1), offset + v);
    }
    let mut next = ng + m * nh;
    for i in 0..m {
        let mut e = vec![u, ng + i * nh + v];
        e.extend(next..next + r - 2);
        next += r - 2;
        e.sort_unstable();
        edges.insert(e);
    }
    let n = next;
    assert_eq!(n, ng + m * (nh + r - 2));
    Ok(Construction {
        graph: UniformHypergraph::from_parts(r, n, edges),
        anchors,
    })
}

/// Disjoint union of all parts, left to right.
pub fn union_all<'a, I>(parts: I) -> Result<UniformHypergraph>
where
    I: IntoIterator<Item = &'a UniformHypergraph>,
{
    let mut iter = parts.into_iter();
    let Some(first) = iter.next() else {
        return Err(Error::InvalidParameter("union of nothing".into()));
    };
    iter.try_fold(first.clone(), |acc, h| acc.disjoint_union(h))
}

/// `k` disjoint copies of `h` (`k = 0` gives the empty hypergraph).
pub fn copies(h: &UniformHypergraph, k: usize) -> UniformHypergraph {
    let mut acc = UniformHypergraph::edgeless(h.r(), 0);
    for _ in 0..k {
        acc = acc.disjoint_union(h).expect("same rank");
    }
    acc
}

/// Random supertree with `edges ≥ 1` edges: start from a single edge and
/// repeatedly attach a pendant edge at a uniformly random existing vertex.
pub fn random_supertree<R: Rng + ?Sized>(
    r: usize,
    edges: usize,
    rng: &mut R,
) -> Result<UniformHypergraph> {
    if edges < 1 {
        return Err(Error::InvalidParameter(
            "random supertree needs >= 1 edge".into(),
        ));
    }
    let mut h = loose_path(r, 1)?.graph;
    for _ in 1..edges {
        let v = rng.gen_range(0..h.n());
        h = attach_raw(&h, v).0;
    }
    Ok(h)
}

/// Family tag of a [`ConstructionSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    LoosePath,
    Power,
    PendantAttach,
    T,
    Q,
    R,
    W,
    Z,
    Coalesce,
    CoalescePower,
    Bridge,
    Union,
}

impl Family {
    fn arity(self) -> usize {
        match self {
            Family::T => 2,
            Family::Q => 3,
            Family::R => 4,
            Family::W | Family::Z | Family::LoosePath | Family::CoalescePower | Family::Bridge => 1,
            Family::Power | Family::PendantAttach | Family::Coalesce | Family::Union => 0,
        }
    }

    fn operand_count(self) -> Option<usize> {
        match self {
            Family::PendantAttach | Family::CoalescePower => Some(1),
            Family::Coalesce | Family::Bridge => Some(2),
            Family::Union => None,
            _ => Some(0),
        }
    }

    fn anchor_count(self) -> usize {
        match self {
            Family::PendantAttach | Family::CoalescePower => 1,
            Family::Coalesce | Family::Bridge => 2,
            _ => 0,
        }
    }
}

/// A vertex given either by id or by the anchor name of the operand it
/// belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnchorRef {
    Id(usize),
    Name(String),
}

impl AnchorRef {
    fn resolve(&self, c: &Construction) -> Result<usize> {
        match self {
            AnchorRef::Id(v) => {
                check_vertex(&c.graph, *v)?;
                Ok(*v)
            }
            AnchorRef::Name(name) => c.anchor(name),
        }
    }
}

/// Declarative construction, e.g. `{"family":"R","r":3,"params":[1,1,2,4]}`.
///
/// Gluing families take their inputs from `operands` and their vertices
/// from `anchors` (one per operand, in order); `Power` reads `graph_edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionSpec {
    pub family: Family,
    pub r: usize,
    #[serde(default)]
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<Vec<AnchorRef>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<ConstructionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_edges: Option<Vec<[usize; 2]>>,
}

impl ConstructionSpec {
    pub fn simple(family: Family, r: usize, params: Vec<usize>) -> Self {
        ConstructionSpec {
            family,
            r,
            params,
            anchors: None,
            operands: Vec::new(),
            graph_edges: None,
        }
    }

    pub fn build(&self) -> Result<Construction> {
        family(self)
    }
}

/// Builds the hypergraph described by `spec`.
pub fn family(spec: &ConstructionSpec) -> Result<Construction> {
    let f = spec.family;
    let r = spec.r;
    check_rank(r)?;
    if spec.params.len() != f.arity() {
        return Err(Error::InvalidParameter(format!(
            "{f:?} takes {} parameter(s), got {}",
            f.arity(),
            spec.params.len()
        )));
    }
    if let Some(k) = f.operand_count() {
        if spec.operands.len() != k {
            return Err(Error::InvalidParameter(format!(
                "{f:?} takes {k} operand(s), got {}",
                spec.operands.len()
            )));
        }
    } else if spec.operands.is_empty() {
        return Err(Error::InvalidParameter(
            "Union needs at least one operand".into(),
        ));
    }
    let anchor_refs = spec.anchors.as_deref().unwrap_or(&[]);
    if anchor_refs.len() != f.anchor_count() {
        return Err(Error::InvalidParameter(format!(
            "{f:?} takes {} anchor(s), got {}",
            f.anchor_count(),
            anchor_refs.len()
        )));
    }
    let operands = spec
        .operands
        .iter()
        .map(|o| {
            let c = family(o)?;
            if c.graph.r() != r && c.graph.has_edges() {
                return Err(Error::RankMismatch {
                    left: r,
                    right: c.graph.r(),
                });
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let anchor = |i: usize| anchor_refs[i].resolve(&operands[i]);
    let p = &spec.params;
    match f {
        Family::LoosePath => loose_path(r, p[0]),
        Family::Power => {
            let edges = spec
                .graph_edges
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("Power needs graph_edges".into()))?;
            Ok(Construction::new(power(edges, r)?))
        }
        Family::PendantAttach => attach_pendant(&operands[0].graph, anchor(0)?),
        Family::T => t_family(r, p[0], p[1]),
        Family::Q => q_family(r, p[0], p[1], p[2]),
        Family::R => r_family(r, p[0], p[1], p[2], p[3]),
        Family::W => w_family(r, p[0]),
        Family::Z => z_family(r, p[0]),
        Family::Coalesce => coalesce(
            &operands[0].graph,
            anchor(0)?,
            &operands[1].graph,
            anchor(1)?,
        ),
        Family::CoalescePower => coalesce_power(&operands[0].graph, anchor(0)?, p[0]),
        Family::Bridge => bridge(
            &operands[0].graph,
            anchor(0)?,
            &operands[1].graph,
            anchor(1)?,
            p[0],
        ),
        Family::Union => Ok(Construction::new(union_all(
            operands.iter().map(|c| &c.graph),
        )?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn loose_path_examples() {
        let p3 = loose_path(2, 3).unwrap();
        assert_eq!(p3.graph.n(), 4);
        assert_eq!(p3.graph.edge_count(), 3);
        let p = loose_path(3, 2).unwrap().graph;
        assert_eq!(
            p.edges().collect::<Vec<_>>(),
            vec![&[0, 1, 2][..], &[2, 3, 4]]
        );
        let p0 = loose_path(4, 0).unwrap();
        assert_eq!(p0.graph, UniformHypergraph::edgeless(4, 1));
        assert_eq!(p0.path_vertex(1).unwrap(), 0);
    }

    #[test]
    fn loose_path_vertex_counts() {
        for r in 2..=6 {
            for t in 0..=12 {
                let c = loose_path(r, t).unwrap();
                assert_eq!(c.graph.n(), t * (r - 1) + 1);
                assert_eq!(c.path_vertex(t + 1).unwrap(), t * (r - 1));
            }
        }
    }

    #[test]
    fn power_examples() {
        for r in 2..=5 {
            for t in 1..5 {
                let path: Vec<[usize; 2]> = (0..t).map(|i| [i, i + 1]).collect();
                let pw = power(&path, r).unwrap();
                assert!(are_isomorphic(&pw, &loose_path(r, t).unwrap().graph));
            }
        }
        let single = power(&[[0, 1]], 5).unwrap();
        assert_eq!(single, loose_path(5, 1).unwrap().graph);
        let star = power(&[[0, 1], [0, 2], [0, 3]], 3).unwrap();
        assert_eq!(star.n(), 7);
        assert!(star.is_supertree());
        assert_eq!(star.degree(0), 3);
        assert!(power(&[[0, 0]], 3).is_err());
        assert!(power(&[[0, 1], [1, 0]], 3).is_err());
    }

    #[test]
    fn attach_pendant_examples() {
        for r in 2..=5 {
            let n1 = UniformHypergraph::edgeless(r, 1);
            let c = attach_pendant(&n1, 0).unwrap();
            assert_eq!(c.graph, loose_path(r, 1).unwrap().graph);
            assert_eq!(c.anchor("tip").unwrap(), 1);
        }
        let (a, b) = (2, 3);
        let path = loose_path(3, a + b).unwrap();
        let t = attach_pendant(&path.graph, path.path_vertex(a + 1).unwrap()).unwrap();
        assert!(are_isomorphic(&t.graph, &t_family(3, a, b).unwrap().graph));
        assert_eq!(t.graph.edge_count(), path.graph.edge_count() + 1);
        assert_eq!(t.graph.n(), path.graph.n() + 2);
        assert!(attach_pendant(&path.graph, 99).is_err());
    }

    #[test]
    fn family_counts() {
        let w5 = w_family(3, 5).unwrap();
        assert_eq!(w5.graph.edge_count(), 5);
        assert_eq!(w5.graph.n(), 11);
        for r in 2..=5 {
            for n in 2..10 {
                let z = z_family(r, n).unwrap().graph;
                assert_eq!(z.edge_count(), n);
                assert!(z.is_supertree());
            }
        }
        let rr = r_family(3, 1, 1, 2, 4).unwrap();
        assert_eq!(rr.graph.edge_count(), 11);
        assert_eq!(rr.graph.n(), 23);
        assert!(rr.graph.is_supertree());
        assert_eq!(rr.pendant_tip(3).unwrap(), 19);
    }

    #[test]
    fn family_parameter_errors() {
        assert!(t_family(3, 0, 1).is_err());
        assert!(q_family(3, 1, 0, 1).is_err());
        assert!(r_family(3, 1, 1, 1, 0).is_err());
        assert!(w_family(3, 4).is_err());
        assert!(z_family(3, 1).is_err());
        let bad = ConstructionSpec::simple(Family::T, 3, vec![1]);
        assert!(family(&bad).is_err());
    }

    #[test]
    fn w_and_z_match_their_definitions() {
        for r in 2..=4 {
            for n in 5..10 {
                let w = w_family(r, n).unwrap().graph;
                let q = q_family(r, 1, n - 4, 1).unwrap().graph;
                assert!(are_isomorphic(&w, &q));
            }
            for n in 3..10 {
                let z = z_family(r, n).unwrap().graph;
                let t = t_family(r, 1, n - 2).unwrap().graph;
                assert!(are_isomorphic(&z, &t));
            }
            // Z_2 = T(1, 0) is the loose path of length 2
            assert!(are_isomorphic(
                &z_family(r, 2).unwrap().graph,
                &loose_path(r, 2).unwrap().graph
            ));
        }
    }

    #[test]
    fn coalesce_examples() {
        let g = r_family(3, 1, 1, 2, 4).unwrap().graph;
        let n1 = UniformHypergraph::edgeless(3, 1);
        assert_eq!(coalesce(&g, 5, &n1, 0).unwrap().graph, g);

        for r in 2..=4 {
            let p1 = loose_path(r, 1).unwrap().graph;
            let c = coalesce(&p1, r - 1, &p1, 0).unwrap();
            assert!(are_isomorphic(&c.graph, &loose_path(r, 2).unwrap().graph));
            assert_eq!(c.graph.n(), 2 * r - 1);
        }
        let p2 = loose_path(2, 2).unwrap().graph;
        assert!(coalesce(&loose_path(3, 1).unwrap().graph, 0, &p2, 0).is_err());
    }

    #[test]
    fn coalesce_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let r = rng.gen_range(2..5);
            let g = random_supertree(r, rng.gen_range(1..5), &mut rng).unwrap();
            let h = random_supertree(r, rng.gen_range(1..5), &mut rng).unwrap();
            let u = rng.gen_range(0..g.n());
            let v = rng.gen_range(0..h.n());
            let a = coalesce(&g, u, &h, v).unwrap().graph;
            let b = coalesce(&h, v, &g, u).unwrap().graph;
            assert!(a.is_supertree());
            assert!(are_isomorphic(&a, &b));
        }
    }

    #[test]
    fn coalesce_power_examples() {
        let g = t_family(3, 1, 2).unwrap().graph;
        assert_eq!(coalesce_power(&g, 3, 1).unwrap().graph, g);
        for r in 2..=4 {
            let p1 = loose_path(r, 1).unwrap().graph;
            let two = coalesce_power(&p1, r - 1, 2).unwrap().graph;
            assert!(are_isomorphic(&two, &loose_path(r, 2).unwrap().graph));
        }
        for m in 1..5 {
            let c = coalesce_power(&g, 4, m).unwrap().graph;
            assert_eq!(c.n(), m * (g.n() - 1) + 1);
            assert!(c.is_supertree());
        }
        assert!(coalesce_power(&g, 0, 0).is_err());
    }

    #[test]
    fn bridge_examples() {
        for r in 2..=5 {
            let n1 = UniformHypergraph::edgeless(r, 1);
            let b = bridge(&n1, 0, &n1, 0, 1).unwrap().graph;
            assert_eq!(b, loose_path(r, 1).unwrap().graph);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let r = rng.gen_range(2..5);
            let g = random_supertree(r, rng.gen_range(1..4), &mut rng).unwrap();
            let h = random_supertree(r, rng.gen_range(1..4), &mut rng).unwrap();
            let u = rng.gen_range(0..g.n());
            let v = rng.gen_range(0..h.n());
            let m = rng.gen_range(1..4);
            let c = bridge(&g, u, &h, v, m).unwrap();
            assert_eq!(
                c.graph.edge_count(),
                g.edge_count() + m * h.edge_count() + m
            );
            assert_eq!(c.graph.n(), g.n() + m * (h.n() + r - 2));
            assert!(c.graph.is_supertree());
            // m pairwise isomorphic H-branches hang off u
            let without_u = c.graph.delete_vertex(u).unwrap();
            let h_branches = without_u
                .components()
                .into_iter()
                .filter(|comp| are_isomorphic(comp, &h))
                .count();
            assert!(h_branches >= m);
            if m == 1 {
                let left = c.graph;
                let right = bridge(&h, v, &g, u, 1).unwrap().graph;
                assert!(are_isomorphic(&left, &right));
            }
        }
        let n1 = UniformHypergraph::edgeless(3, 1);
        assert!(bridge(&n1, 0, &n1, 0, 0).is_err());
        assert!(bridge(&n1, 0, &UniformHypergraph::edgeless(2, 1), 0, 1).is_err());
    }

    #[test]
    fn mixed_powers() {
        let g = t_family(3, 1, 1).unwrap().graph;
        let h = loose_path(3, 3).unwrap().graph;
        let c = mixed_coalesce_power(&h, 2, 2, &g, 0, 1).unwrap().graph;
        assert_eq!(c.edge_count(), 2 * h.edge_count() + g.edge_count());
        assert!(c.is_supertree());
        assert!(mixed_coalesce_power(&h, 2, 0, &g, 0, 0).is_err());
    }

    #[test]
    fn union_is_associative_up_to_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let parts: Vec<_> = (0..3)
                .map(|_| random_supertree(3, rng.gen_range(1..4), &mut rng).unwrap())
                .collect();
            let left = parts[0]
                .disjoint_union(&parts[1])
                .unwrap()
                .disjoint_union(&parts[2])
                .unwrap();
            let right = parts[0]
                .disjoint_union(&parts[1].disjoint_union(&parts[2]).unwrap())
                .unwrap();
            assert!(are_isomorphic(&left, &right));
        }
    }

    #[test]
    fn random_supertrees_are_supertrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in 2..=5 {
            for m in 1..8 {
                let h = random_supertree(r, m, &mut rng).unwrap();
                assert!(h.is_supertree());
                assert_eq!(h.edge_count(), m);
            }
        }
    }

    #[test]
    fn spec_json_builds_nested() {
        let text = r#"{"family":"R","r":3,"params":[1,1,2,4]}"#;
        let spec: ConstructionSpec = serde_json::from_str(text).unwrap();
        let c = spec.build().unwrap();
        assert_eq!(c.graph.edge_count(), 11);

        let gamma = r#"{"family":"Coalesce","r":3,"anchors":["p3","v1"],
            "operands":[{"family":"R","r":3,"params":[1,1,2,4]},
                        {"family":"LoosePath","r":3,"params":[3]}]}"#;
        let spec: ConstructionSpec = serde_json::from_str(gamma).unwrap();
        let c = spec.build().unwrap();
        assert_eq!(c.graph.edge_count(), 14);
        assert!(c.graph.is_supertree());

        let pw = r#"{"family":"Power","r":4,"graph_edges":[[0,1],[1,2]]}"#;
        let c = serde_json::from_str::<ConstructionSpec>(pw)
            .unwrap()
            .build()
            .unwrap();
        assert!(are_isomorphic(&c.graph, &loose_path(4, 2).unwrap().graph));

        let bad = r#"{"family":"W","r":3,"params":[6],"extra":1}"#;
        assert!(serde_json::from_str::<ConstructionSpec>(bad).is_err());
    }

    #[test]
    fn construction_json_has_anchors() {
        let c = w_family(3, 6).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["r"], 3);
        assert_eq!(v["n"], 13);
        assert_eq!(
            v["anchors"]["p2"],
            serde_json::json!(c.pendant_tip(2).unwrap())
        );
    }
}
