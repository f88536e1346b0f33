//! The compression `G_{x->y}`: every neighbor of `x` that `y` lacks (other
//! than `y` itself) is handed from `x` to `y`. Edge count is preserved and no
//! `m_k` increases, so repeated compression drives any graph to a threshold
//! graph without gaining matchings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    bit, d2, is_bipartite_threshold, is_threshold, members, vicinal_comparable, BipartiteGraph,
    Graph, Side,
};

/// One applied compression. For bipartite graphs `x`, `y` and `moved` are
/// numbered within their own parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionStep {
    pub x: usize,
    pub y: usize,
    pub moved: Vec<usize>,
}

/// `N_G(x, ȳ) = { v ≠ x, y : v ~ x, v ≁ y }`.
pub fn exclusive_neighborhood(g: &Graph, x: usize, y: usize) -> Result<Vec<usize>> {
    Ok(members(exclusive_mask(g, x, y)?).collect())
}

fn exclusive_mask(g: &Graph, x: usize, y: usize) -> Result<u64> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(g.neighbor_mask(x) & !g.neighbor_mask(y) & !bit(y))
}

pub fn compress(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    compress_step(g, x, y).map(|(h, _)| h)
}

/// Compresses and reports the moved vertices.
pub fn compress_step(g: &Graph, x: usize, y: usize) -> Result<(Graph, CompressionStep)> {
    let moved = exclusive_mask(g, x, y)?;
    let mut h = g.clone();
    for v in members(moved) {
        h.remove_edge(x, v);
        h.add_edge(y, v);
    }
    Ok((
        h,
        CompressionStep {
            x,
            y,
            moved: members(moved).collect(),
        },
    ))
}

/// Source and target for an incomparable pair: from the lower degree to
/// the higher degree, toward the smaller label on ties.
fn orient(da: usize, db: usize, a: usize, b: usize) -> (usize, usize) {
    if da < db {
        (a, b)
    } else {
        (b, a)
    }
}

/// Compresses until the graph is threshold. Pairs are scanned in lex order
/// each round; `d2` strictly increases at every step.
pub fn compress_to_threshold(g: &Graph) -> (Graph, Vec<CompressionStep>) {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    'rounds: loop {
        for a in 1..=cur.n() {
            for b in a + 1..=cur.n() {
                if vicinal_comparable(&cur, a, b) {
                    continue;
                }
                let (x, y) = orient(cur.degree(a), cur.degree(b), a, b);
                let before = d2(&cur);
                let (next, step) = compress_step(&cur, x, y).expect("distinct in-range vertices");
                debug_assert!(d2(&next) > before);
                cur = next;
                trace.push(step);
                continue 'rounds;
            }
        }
        break;
    }
    debug_assert!(is_threshold(&cur));
    (cur, trace)
}

/// `B_{u->v}` for two vertices on the same side.
pub fn bipartite_compress(
    b: &BipartiteGraph,
    u: (Side, usize),
    v: (Side, usize),
) -> Result<BipartiteGraph> {
    bipartite_compress_step(b, u, v).map(|(h, _)| h)
}

pub fn bipartite_compress_step(
    b: &BipartiteGraph,
    u: (Side, usize),
    v: (Side, usize),
) -> Result<(BipartiteGraph, CompressionStep)> {
    if u.0 != v.0 {
        return Err(Error::DifferentParts);
    }
    match u.0 {
        Side::Left => compress_left(b, u.1, v.1),
        Side::Right => {
            let (h, step) = compress_left(&b.transposed(), u.1, v.1)?;
            Ok((h.transposed(), step))
        }
    }
}

fn compress_left(
    b: &BipartiteGraph,
    u: usize,
    v: usize,
) -> Result<(BipartiteGraph, CompressionStep)> {
    for w in [u, v] {
        if w == 0 || w > b.left() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                n: b.left(),
            });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let (nu, nv) = (b.left_mask(u), b.left_mask(v));
    let moved = nu & !nv;
    let mut h = b.clone();
    h.set_left_mask(u, nu & !moved);
    h.set_left_mask(v, nv | moved);
    Ok((
        h,
        CompressionStep {
            x: u,
            y: v,
            moved: members(moved).collect(),
        },
    ))
}

/// Compresses left-part pairs until the left neighborhoods form a chain.
pub fn compress_to_bipartite_threshold(
    b: &BipartiteGraph,
) -> (BipartiteGraph, Vec<CompressionStep>) {
    let mut cur = b.clone();
    let mut trace = Vec::new();
    'rounds: loop {
        for a in 1..=cur.left() {
            for c in a + 1..=cur.left() {
                let (na, nc) = (cur.left_mask(a), cur.left_mask(c));
                if na & !nc == 0 || nc & !na == 0 {
                    continue;
                }
                let (x, y) = orient(na.count_ones() as usize, nc.count_ones() as usize, a, c);
                let (next, step) = compress_left(&cur, x, y).expect("distinct in-range vertices");
                debug_assert!(next.d2() > cur.d2());
                cur = next;
                trace.push(step);
                continue 'rounds;
            }
        }
        break;
    }
    debug_assert!(is_bipartite_threshold(&cur));
    (cur, trace)
}
