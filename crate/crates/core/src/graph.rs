//! Labeled simple graphs and bipartite graphs on at most 64 vertices per part,
//! the lex/colex/lex-bipartite constructions, and threshold predicates.
//!
//! Vertices are 1-indexed everywhere in the public API. Internally each
//! vertex `v` owns bit `v - 1` of a `u64` neighbor mask.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count (per part, for bipartite graphs) a mask can hold.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << (v - 1)
}

/// Iterates the 1-indexed vertices set in `mask`, smallest first.
pub(crate) fn members(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize + 1;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of unordered pairs from `n` items.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A labeled simple graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        let edges: Vec<_> = repr.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(repr.n, &edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-indexed edges. Endpoint order is irrelevant;
    /// loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 1..=n {
            g.adj[v - 1] = full_mask(n) & !bit(v);
        }
        Ok(g)
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The cycle `1 - 2 - ... - n - 1`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        if n >= 3 {
            edges.push((1, n));
        }
        Graph::from_edges(n, &edges)
    }

    /// The star with center 1 and leaves `2..=n`.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (2..=n).map(|v| (1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1] & bit(v) != 0
    }

    /// Neighbor set of `v` as a mask (bit `w - 1` for neighbor `w`).
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v - 1]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        members(self.adj[v - 1])
    }

    /// Edges as `(u, v)` with `u < v`, in lex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n {
            for v in members(self.adj[u - 1] >> u) {
                out.push((u, u + v));
            }
        }
        out
    }

    /// Returns the graph with vertex `v` renamed to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Parse(format!(
                "permutation has {} entries, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= bit(p);
        }
        if seen != full_mask(self.n) {
            return Err(Error::Parse("relabeling is not a permutation".into()));
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u - 1], perm[v - 1]))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Subgraph induced on the vertices of `mask` keeps the labels; it is
    /// only used for emptiness/completeness checks.
    pub(crate) fn is_clique(&self, mask: u64) -> bool {
        members(mask).all(|v| (mask & !bit(v)) & !self.adj[v - 1] == 0)
    }

    pub(crate) fn is_independent(&self, mask: u64) -> bool {
        members(mask).all(|v| self.adj[v - 1] & mask == 0)
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u - 1] |= bit(v);
        self.adj[v - 1] |= bit(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u - 1] &= !bit(v);
        self.adj[v - 1] &= !bit(u);
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{}{v}", if self.n >= 10 { "-" } else { "" })?;
        }
        write!(f, "])")
    }
}

/// A bipartite graph with left part `x_1..x_l` and right part `y_1..y_r`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BipartiteRepr", into = "BipartiteRepr")]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct BipartiteRepr {
    l: usize,
    r: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<BipartiteRepr> for BipartiteGraph {
    type Error = Error;

    fn try_from(repr: BipartiteRepr) -> Result<Self> {
        let edges: Vec<_> = repr.edges.iter().map(|&[i, j]| (i, j)).collect();
        BipartiteGraph::from_edges(repr.l, repr.r, &edges)
    }
}

impl From<BipartiteGraph> for BipartiteRepr {
    fn from(b: BipartiteGraph) -> Self {
        BipartiteRepr {
            l: b.left,
            r: b.right,
            edges: b.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// A vertex of a bipartite graph, tagged with its side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Result<Self> {
        for n in [left, right] {
            if n > MAX_VERTICES {
                return Err(Error::TooManyVertices {
                    n,
                    max: MAX_VERTICES,
                });
            }
        }
        Ok(BipartiteGraph {
            left,
            right,
            adj: vec![0; left],
        })
    }

    /// Edges are `(i, j)` meaning `x_i ~ y_j`.
    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = BipartiteGraph::empty(left, right)?;
        for &(i, j) in edges {
            if i == 0 || i > left {
                return Err(Error::VertexOutOfRange { vertex: i, n: left });
            }
            if j == 0 || j > right {
                return Err(Error::VertexOutOfRange {
                    vertex: j,
                    n: right,
                });
            }
            if b.adj[i - 1] & bit(j) != 0 {
                return Err(Error::DuplicateEdge(i, j));
            }
            b.adj[i - 1] |= bit(j);
        }
        Ok(b)
    }

    /// Builds from per-left-vertex neighbor masks over the right part.
    pub fn from_masks(left: usize, right: usize, masks: Vec<u64>) -> Result<Self> {
        let mut b = BipartiteGraph::empty(left, right)?;
        if masks.len() != left || masks.iter().any(|&m| m & !full_mask(right) != 0) {
            return Err(Error::Parse("neighbor masks do not fit the frame".into()));
        }
        b.adj = masks;
        Ok(b)
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i - 1] & bit(j) != 0
    }

    /// Right-neighbor mask of left vertex `x_i`.
    pub fn left_mask(&self, i: usize) -> u64 {
        self.adj[i - 1]
    }

    /// Left-neighbor mask of right vertex `y_j`.
    pub fn right_mask(&self, j: usize) -> u64 {
        (1..=self.left)
            .filter(|&i| self.has_edge(i, j))
            .fold(0, |m, i| m | bit(i))
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|m| m.count_ones() as usize).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        (1..=self.right)
            .map(|j| self.right_mask(j).count_ones() as usize)
            .collect()
    }

    /// Edges `(i, j)` in lex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.left)
            .flat_map(|i| members(self.adj[i - 1]).map(move |j| (i, j)))
            .collect()
    }

    /// Sum of squared degrees over both parts.
    pub fn d2(&self) -> u64 {
        let sq = |d: usize| (d * d) as u64;
        self.left_degrees().into_iter().map(sq).sum::<u64>()
            + self.right_degrees().into_iter().map(sq).sum::<u64>()
    }

    /// The same graph on `1..=l+r`, with `x_i -> i` and `y_j -> l + j`.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.left + self.right)?;
        for (i, j) in self.edges() {
            g.add_edge(i, self.left + j);
        }
        Ok(g)
    }

    /// Swaps the roles of the two parts.
    pub fn transposed(&self) -> BipartiteGraph {
        BipartiteGraph {
            left: self.right,
            right: self.left,
            adj: (1..=self.right).map(|j| self.right_mask(j)).collect(),
        }
    }

    pub(crate) fn set_left_mask(&mut self, i: usize, mask: u64) {
        self.adj[i - 1] = mask;
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bipartite({}x{}, edges={:?})",
            self.left,
            self.right,
            self.edges()
        )
    }
}

/// A partition of `V(G)` into a clique `K` and an independent set `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSplit {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

impl CliqueSplit {
    pub fn new(clique: Vec<usize>, independent: Vec<usize>) -> Self {
        let mut clique = clique;
        let mut independent = independent;
        clique.sort_unstable();
        independent.sort_unstable();
        CliqueSplit {
            clique,
            independent,
        }
    }

    fn mask(vs: &[usize]) -> u64 {
        vs.iter().fold(0, |m, &v| m | bit(v))
    }

    /// Checks that the split partitions `V(G)`, `K` is a clique and `I` is
    /// independent.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in self.clique.iter().chain(&self.independent) {
            g.check_vertex(v)?;
        }
        let k = Self::mask(&self.clique);
        let i = Self::mask(&self.independent);
        if k & i != 0
            || (k | i) != g.vertex_mask()
            || self.clique.len() + self.independent.len() != g.n()
        {
            return Err(Error::InvalidSplit(
                "K and I must partition the vertex set".into(),
            ));
        }
        if !g.is_clique(k) {
            return Err(Error::InvalidSplit("K does not induce a clique".into()));
        }
        if !g.is_independent(i) {
            return Err(Error::InvalidSplit(
                "I does not induce an independent set".into(),
            ));
        }
        Ok(())
    }

    /// The bipartite graph of cross edges with `K` on the left, vertices
    /// numbered in increasing label order within each side.
    pub fn cross_graph(&self, g: &Graph) -> Result<BipartiteGraph> {
        let mut b = BipartiteGraph::empty(self.clique.len(), self.independent.len())?;
        for (a, &k) in self.clique.iter().enumerate() {
            let mut m = 0;
            for (c, &v) in self.independent.iter().enumerate() {
                if g.has_edge(k, v) {
                    m |= bit(c + 1);
                }
            }
            b.set_left_mask(a + 1, m);
        }
        Ok(b)
    }
}

/// The first `e` pairs of `{1..n}` in lex order.
pub fn lex_graph(n: usize, e: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    check_edge_count(e, pairs(n))?;
    let mut left = e;
    'outer: for u in 1..=n {
        for v in u + 1..=n {
            if left == 0 {
                break 'outer;
            }
            g.add_edge(u, v);
            left -= 1;
        }
    }
    Ok(g)
}

/// The first `e` pairs of `{1..n}` in colex order.
pub fn colex_graph(n: usize, e: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    check_edge_count(e, pairs(n))?;
    let mut left = e;
    'outer: for v in 2..=n {
        for u in 1..v {
            if left == 0 {
                break 'outer;
            }
            g.add_edge(u, v);
            left -= 1;
        }
    }
    Ok(g)
}

/// `L_{l,r}(e)`: with `e = q r + c`, left vertices `1..=q` are complete to
/// the right part and `x_{q+1}` sees `y_1..y_c`.
pub fn lex_bipartite(left: usize, right: usize, e: usize) -> Result<BipartiteGraph> {
    if left > right {
        return Err(Error::LeftLargerThanRight { left, right });
    }
    lex_bipartite_unchecked(left, right, e)
}

/// Lex-ordered first `e` cells of `L x R` without the `l <= r` requirement.
pub(crate) fn lex_bipartite_unchecked(
    left: usize,
    right: usize,
    e: usize,
) -> Result<BipartiteGraph> {
    let mut b = BipartiteGraph::empty(left, right)?;
    check_edge_count(e, left * right)?;
    if e == 0 {
        return Ok(b);
    }
    let (q, c) = (e / right, e % right);
    for i in 1..=q {
        b.adj[i - 1] = full_mask(right);
    }
    if c > 0 {
        b.adj[q] = full_mask(c);
    }
    Ok(b)
}

fn check_edge_count(e: usize, max: usize) -> Result<()> {
    if e > max {
        Err(Error::EdgeCountOutOfRange { e, max })
    } else {
        Ok(())
    }
}

/// Sum of squared degrees.
pub fn d2(g: &Graph) -> u64 {
    g.degrees().into_iter().map(|d| (d * d) as u64).sum()
}

/// `N(x) \ {y}` and `N(y) \ {x}` are comparable under inclusion.
pub fn vicinal_comparable(g: &Graph, x: usize, y: usize) -> bool {
    let nx = g.neighbor_mask(x) & !bit(y);
    let ny = g.neighbor_mask(y) & !bit(x);
    nx & !ny == 0 || ny & !nx == 0
}

/// Threshold test via totality of the vicinal preorder.
pub fn is_threshold(g: &Graph) -> bool {
    (1..=g.n()).all(|x| (x + 1..=g.n()).all(|y| vicinal_comparable(g, x, y)))
}

/// Left neighborhoods form a chain under inclusion.
pub fn is_bipartite_threshold(b: &BipartiteGraph) -> bool {
    let mut masks: Vec<u64> = (1..=b.left()).map(|i| b.left_mask(i)).collect();
    masks.sort_by_key(|m| m.count_ones());
    masks.windows(2).all(|w| w[0] & !w[1] == 0)
}

/// Clique/independent split of a threshold graph.
///
/// Vertices are ordered by degree (descending, ties by label) and the
/// longest clique prefix is taken as `K`. If that `K` has fewer than `n/2`
/// vertices, trailing members of `K` with no neighbor in `I` are moved to
/// `I`, giving the smallest clique of this shape.
pub fn clique_split(g: &Graph) -> Result<CliqueSplit> {
    if !is_threshold(g) {
        return Err(Error::NotThreshold);
    }
    let mut order: Vec<usize> = (1..=g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut k = 0u64;
    let mut size = 0;
    for &v in &order {
        if g.neighbor_mask(v) & k != k {
            break;
        }
        k |= bit(v);
        size += 1;
    }
    if 2 * size < g.n() {
        while size > 0 {
            let last = order[size - 1];
            let rest = g.vertex_mask() & !k;
            if g.neighbor_mask(last) & rest != 0 {
                break;
            }
            k &= !bit(last);
            size -= 1;
        }
    }

    let split = CliqueSplit::new(order[..size].to_vec(), order[size..].to_vec());
    split.validate(g)?;
    Ok(split)
}

/// Whether the cross edges of `split` form a lex bipartite graph, with the
/// smaller of `K`, `I` on the left (`I` on ties).
pub fn is_lex_across(g: &Graph, split: &CliqueSplit) -> Result<bool> {
    split.validate(g)?;
    let cross = split.cross_graph(g)?;
    let (small, large) = if split.clique.len() < split.independent.len() {
        (cross.left_degrees(), split.independent.len())
    } else {
        (cross.right_degrees(), split.clique.len())
    };
    Ok(is_lex_degree_pattern(&small, large))
}

/// Sorted degrees equal `(r, ..., r, c, 0, ..., 0)` with `c < r`.
fn is_lex_degree_pattern(degrees: &[usize], r: usize) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let full = d.iter().take_while(|&&x| x == r).count();
    let rest = &d[full..];
    match rest.split_first() {
        None => true,
        Some((_, tail)) => tail.iter().all(|&x| x == 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
    }

    #[test]
    fn lex_7_8() {
        let g = lex_graph(7, 8).unwrap();
        assert_eq!(
            edge_set(&g),
            vec![
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (1, 6),
                (1, 7),
                (2, 3),
                (2, 4)
            ]
        );
    }

    #[test]
    fn colex_7_8() {
        let g = colex_graph(7, 8).unwrap();
        let mut want = vec![
            (1, 2),
            (1, 3),
            (2, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (1, 5),
            (2, 5),
        ];
        want.sort();
        assert_eq!(edge_set(&g), want);
    }

    #[test]
    fn full_edge_count_is_complete() {
        assert_eq!(lex_graph(4, 6).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(colex_graph(4, 6).unwrap(), Graph::complete(4).unwrap());
        assert!(matches!(
            lex_graph(4, 7),
            Err(Error::EdgeCountOutOfRange { .. })
        ));
        assert!(colex_graph(4, 7).is_err());
    }

    #[test]
    fn lex_18_87_degrees() {
        let g = lex_graph(18, 87).unwrap();
        let mut d = g.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        let mut want = vec![17; 6];
        want.extend(vec![6; 12]);
        assert_eq!(d, want);
        assert_eq!(d.iter().sum::<usize>(), 174);
        assert_eq!(d2(&g), 2166);
    }

    #[test]
    fn colex_18_87_shape() {
        let g = colex_graph(18, 87).unwrap();
        let k13 = (1..=13).fold(0u64, |m, v| m | bit(v));
        assert!(g.is_clique(k13));
        assert_eq!(
            g.neighbors(14).collect::<Vec<_>>(),
            (1..=9).collect::<Vec<_>>()
        );
        assert!((15..=18).all(|v| g.degree(v) == 0));
        assert_eq!(g.degrees().iter().sum::<usize>(), 174);
    }

    #[test]
    fn lex_bipartite_examples() {
        assert_eq!(
            lex_bipartite(4, 6, 14).unwrap().left_degrees(),
            vec![6, 6, 2, 0]
        );
        assert_eq!(lex_bipartite(2, 4, 5).unwrap().left_degrees(), vec![4, 1]);
        let full = lex_bipartite(3, 5, 15).unwrap();
        assert_eq!(full.edge_count(), 15);
        assert!(matches!(
            lex_bipartite(5, 3, 2),
            Err(Error::LeftLargerThanRight { .. })
        ));
        assert!(lex_bipartite(2, 3, 7).is_err());
        assert_eq!(lex_bipartite(0, 0, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn d2_small() {
        assert_eq!(d2(&Graph::complete(3).unwrap()), 12);
        assert_eq!(d2(&Graph::cycle(4).unwrap()), 16);
    }

    #[test]
    fn threshold_examples() {
        assert!(is_threshold(&lex_graph(7, 8).unwrap()));
        assert!(is_threshold(&Graph::star(4).unwrap()));
        assert!(!is_threshold(&Graph::cycle(4).unwrap()));
        // paw: triangle 2-3-4 with pendant 1 at 2
        let paw = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(is_threshold(&paw));
    }

    /// A graph is threshold iff some clique/independent split has nested
    /// independent-side neighborhoods; checked by brute force over splits.
    fn threshold_by_splits(g: &Graph) -> bool {
        let all = g.vertex_mask();
        (0..=all).any(|k| {
            let i = all & !k;
            if !g.is_clique(k) || !g.is_independent(i) {
                return false;
            }
            let mut ns: Vec<u64> = members(i).map(|v| g.neighbor_mask(v)).collect();
            ns.sort_by_key(|m| m.count_ones());
            ns.windows(2).all(|w| w[0] & !w[1] == 0)
        })
    }

    #[test]
    fn vicinal_test_matches_split_characterization() {
        for n in 1..=5 {
            let all: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << all.len()) {
                let edges: Vec<_> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                assert_eq!(is_threshold(&g), threshold_by_splits(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn bipartite_threshold_examples() {
        assert!(is_bipartite_threshold(&lex_bipartite(2, 4, 5).unwrap()));
        let pm = BipartiteGraph::from_edges(2, 2, &[(1, 1), (2, 2)]).unwrap();
        assert!(!is_bipartite_threshold(&pm));
        let one = BipartiteGraph::from_edges(3, 3, &[(2, 1), (2, 3)]).unwrap();
        assert!(is_bipartite_threshold(&one));
    }

    #[test]
    fn clique_split_examples() {
        let s = clique_split(&lex_graph(7, 8).unwrap()).unwrap();
        assert_eq!(s.clique, vec![1, 2]);
        assert_eq!(s.independent, vec![3, 4, 5, 6, 7]);

        let s = clique_split(&Graph::complete(5).unwrap()).unwrap();
        assert_eq!(s.clique, vec![1, 2, 3, 4, 5]);
        assert!(s.independent.is_empty());

        let s = clique_split(&colex_graph(18, 87).unwrap()).unwrap();
        assert_eq!(s.clique, (1..=13).collect::<Vec<_>>());
        assert_eq!(s.independent, (14..=18).collect::<Vec<_>>());

        assert_eq!(
            clique_split(&Graph::cycle(4).unwrap()),
            Err(Error::NotThreshold)
        );
        assert!(clique_split(&Graph::empty(0).unwrap()).is_ok());
    }

    #[test]
    fn lex_across_examples() {
        let lex = lex_graph(7, 8).unwrap();
        let split = CliqueSplit::new(vec![1, 2], vec![3, 4, 5, 6, 7]);
        assert!(is_lex_across(&lex, &split).unwrap());

        let colex = colex_graph(18, 87).unwrap();
        let split = CliqueSplit::new((1..=13).collect(), (14..=18).collect());
        assert!(is_lex_across(&colex, &split).unwrap());

        let star = Graph::star(4).unwrap();
        let split = CliqueSplit::new(vec![1, 2], vec![3, 4]);
        assert!(!is_lex_across(&star, &split).unwrap());

        let bad = CliqueSplit::new(vec![3, 4], vec![1, 2]);
        assert!(matches!(
            is_lex_across(&star, &bad),
            Err(Error::InvalidSplit(_))
        ));
    }

    #[test]
    fn parsing_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(1, 2))
        );
        assert!(matches!(
            Graph::from_edges(3, &[(1, 4)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn json_mirror() {
        let g = lex_graph(4, 3).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[1,3],[1,4]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let b = lex_bipartite(2, 4, 5).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(
            s,
            r#"{"l":2,"r":4,"edges":[[1,1],[1,2],[1,3],[1,4],[2,1]]}"#
        );
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=9)
            .prop_flat_map(|n| {
                let m = pairs(n);
                (Just(n), proptest::collection::vec(any::<bool>(), m))
            })
            .prop_map(|(n, picks)| {
                let all: Vec<(usize, usize)> = (1..=n)
                    .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                    .collect();
                let edges: Vec<_> = all
                    .into_iter()
                    .zip(picks)
                    .filter(|(_, p)| *p)
                    .map(|(e, _)| e)
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn lex_and_colex_are_threshold_and_nested(n in 0usize..12, frac in 0.0f64..1.0) {
            let e = (frac * pairs(n) as f64) as usize;
            let lex = lex_graph(n, e).unwrap();
            let colex = colex_graph(n, e).unwrap();
            prop_assert!(is_threshold(&lex));
            prop_assert!(is_threshold(&colex));
            prop_assert_eq!(lex.edge_count(), e);
            if e < pairs(n) {
                let next = lex_graph(n, e + 1).unwrap().edges();
                prop_assert_eq!(&next[..e].iter().copied().collect::<std::collections::BTreeSet<_>>(),
                    &lex.edges().into_iter().collect());
                let nextc = colex_graph(n, e + 1).unwrap();
                prop_assert!(colex.edges().iter().all(|&(u, v)| nextc.has_edge(u, v)));
            }
        }

        #[test]
        fn lex_bipartite_is_chain(l in 0usize..7, extra in 0usize..5, frac in 0.0f64..=1.0) {
            let r = l + extra;
            let e = (frac * (l * r) as f64) as usize;
            let b = lex_bipartite(l, r, e).unwrap();
            prop_assert!(is_bipartite_threshold(&b));
            prop_assert_eq!(b.edge_count(), e);
        }

        #[test]
        fn d2_is_relabel_invariant(g in arb_graph(), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (1..=n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.relabel(&perm).unwrap();
            prop_assert_eq!(d2(&g), d2(&h));
            prop_assert_eq!(is_threshold(&g), is_threshold(&h));
        }

        #[test]
        fn clique_split_is_valid_when_threshold(g in arb_graph()) {
            match clique_split(&g) {
                Ok(s) => prop_assert!(s.validate(&g).is_ok()),
                Err(e) => {
                    prop_assert_eq!(e, Error::NotThreshold);
                    prop_assert!(!is_threshold(&g));
                }
            }
        }
    }
}
