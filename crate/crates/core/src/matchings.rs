//! Exact matching counts.
//!
//! [`matching_vector`] runs a dynamic program over vertex subsets: the set
//! `S` of still-unmatched vertices always loses its lowest vertex `v`, which
//! is either left unmatched or matched to some `u` in `N(v) ∩ S`. Processing
//! vertices in label order means only the states reachable from the full
//! vertex set are ever materialized, and only one layer is alive at a time.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bit, members, BipartiteGraph, CliqueSplit, Graph};

/// Vertex limit for [`matching_vector`]. Dense 32-vertex graphs peak at a
/// few million live states; counts cannot overflow the 128-bit
/// accumulator below this size.
pub const MAX_DP_VERTICES: usize = 32;

/// Edge limit for [`matching_vector_bruteforce`].
pub const MAX_BRUTEFORCE_EDGES: usize = 24;

/// Exact counts `(m_0, m_1, ..., m_t)` with `t = floor(n / 2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MatchingVector(Vec<BigUint>);

impl MatchingVector {
    pub fn new(coefficients: Vec<BigUint>) -> Self {
        MatchingVector(coefficients)
    }

    /// Vector of length `floor(vertices / 2) + 1` from machine-sized counts.
    pub fn from_u128(vertices: usize, counts: &[u128]) -> Self {
        let mut v: Vec<BigUint> = counts.iter().map(|&c| BigUint::from(c)).collect();
        v.resize(vertices / 2 + 1, BigUint::zero());
        MatchingVector(v)
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_k`, zero past the end.
    pub fn get(&self, k: usize) -> BigUint {
        self.0.get(k).cloned().unwrap_or_default()
    }

    /// `m(G)`, the number of matchings of all sizes.
    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Size of a maximum matching.
    pub fn max_matching_size(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Entrywise `self <= other`, padding the shorter vector with zeros.
    pub fn pointwise_le(&self, other: &MatchingVector) -> bool {
        (0..self.len().max(other.len())).all(|k| self.get(k) <= other.get(k))
    }

    /// Exact value of `sum_k m_k lambda^k`.
    pub fn eval(&self, lambda: &BigRational) -> BigRational {
        // Horner
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * lambda + BigRational::from_integer(c.clone().into())
        })
    }
}

impl fmt::Debug for MatchingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MatchingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MatchingVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for MatchingVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| BigUint::from_str(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(MatchingVector)
    }
}

/// Flat storage for one DP layer: `index[mask]` points at `width` counts.
struct Layer {
    index: FxHashMap<u64, usize>,
    counts: Vec<u128>,
    width: usize,
}

impl Layer {
    fn new(width: usize) -> Self {
        Layer {
            index: FxHashMap::default(),
            counts: Vec::new(),
            width,
        }
    }

    fn slot(&mut self, mask: u64) -> usize {
        let width = self.width;
        let counts = &mut self.counts;
        *self.index.entry(mask).or_insert_with(|| {
            let at = counts.len();
            counts.resize(at + width, 0);
            at
        })
    }

    /// Adds `src` into the counts at `mask`, shifted up by `shift` sizes.
    fn add(&mut self, mask: u64, src: &[u128], shift: usize) -> Result<()> {
        let at = self.slot(mask);
        for (k, &c) in src.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let dst = self.counts.get_mut(at + k + shift).ok_or(Error::Overflow)?;
            *dst = dst.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

/// Raw DP returning `floor(n/2) + 1` machine-word counts.
fn matching_counts(g: &Graph) -> Result<Vec<u128>> {
    let n = g.n();
    if n > MAX_DP_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_DP_VERTICES,
        });
    }
    let width = n / 2 + 1;
    // Layer i maps "vertices >= i already matched" to counts by size.
    let mut layer = Layer::new(width);
    let mut start = vec![0u128; width];
    start[0] = 1;
    layer.add(0, &start, 0)?;

    for v in 1..=n {
        let here = bit(v);
        let above = !((here << 1).wrapping_sub(1));
        let mut next = Layer::new(width);
        for (&mask, &at) in &layer.index {
            let counts = &layer.counts[at..at + width];
            if mask & here != 0 {
                next.add(mask & !here, counts, 0)?;
                continue;
            }
            next.add(mask, counts, 0)?;
            for u in members(g.neighbor_mask(v) & above & !mask) {
                // the last slot can never be the source of a shift
                next.add(mask | bit(u), &counts[..width - 1], 1)?;
            }
        }
        layer = next;
    }
    let at = layer.index.get(&0).copied().unwrap_or(0);
    Ok(layer.counts[at..at + width].to_vec())
}

/// Exact `m_k(G)` for every `k`.
pub fn matching_vector(g: &Graph) -> Result<MatchingVector> {
    let counts = matching_counts(g)?;
    Ok(MatchingVector::from_u128(g.n(), &counts))
}

/// Independent oracle: tries every edge subset and keeps the matchings.
pub fn matching_vector_bruteforce(g: &Graph) -> Result<MatchingVector> {
    let edges = g.edges();
    if edges.len() > MAX_BRUTEFORCE_EDGES {
        return Err(Error::TooManyEdges {
            count: edges.len(),
            max: MAX_BRUTEFORCE_EDGES,
        });
    }
    let ends: Vec<u64> = edges.iter().map(|&(u, v)| bit(u) | bit(v)).collect();
    let mut counts = vec![0u128; g.n() / 2 + 1];
    'subsets: for subset in 0u32..(1u32 << edges.len()) {
        let mut covered = 0u64;
        for (i, &e) in ends.iter().enumerate() {
            if subset & (1 << i) != 0 {
                if covered & e != 0 {
                    continue 'subsets;
                }
                covered |= e;
            }
        }
        counts[subset.count_ones() as usize] += 1;
    }
    Ok(MatchingVector::from_u128(g.n(), &counts))
}

/// Exact `m_k(B)` for a bipartite graph, by scanning left vertices and
/// tracking which right vertices are taken. The vector has the length a
/// graph on `l + r` vertices would have.
pub fn bipartite_matching_vector(b: &BipartiteGraph) -> Result<MatchingVector> {
    let width = (b.left() + b.right()) / 2 + 1;
    let mut layer: FxHashMap<u64, Vec<BigUint>> = FxHashMap::default();
    let mut start = vec![BigUint::zero(); width];
    start[0] = BigUint::one();
    layer.insert(0, start);
    for i in 1..=b.left() {
        let mut next: FxHashMap<u64, Vec<BigUint>> = FxHashMap::default();
        for (mask, counts) in layer {
            for j in members(b.left_mask(i) & !mask) {
                let slot = next
                    .entry(mask | bit(j))
                    .or_insert_with(|| vec![BigUint::zero(); width]);
                for k in 0..width - 1 {
                    slot[k + 1] += &counts[k];
                }
            }
            let slot = next
                .entry(mask)
                .or_insert_with(|| vec![BigUint::zero(); width]);
            for k in 0..width {
                slot[k] += &counts[k];
            }
        }
        layer = next;
    }
    let mut total = vec![BigUint::zero(); width];
    for counts in layer.into_values() {
        for k in 0..width {
            total[k] += &counts[k];
        }
    }
    Ok(MatchingVector(total))
}

/// `T(n) = m(K_n)` for `n = 0..=nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelephoneTable(Vec<BigUint>);

impl TelephoneTable {
    pub fn values(&self) -> &[BigUint] {
        &self.0
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.0[n]
    }
}

pub fn telephone(nmax: usize) -> TelephoneTable {
    let mut t: Vec<BigUint> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = if n < 2 {
            BigUint::one()
        } else {
            &t[n - 1] + &t[n - 2] * BigUint::from(n - 1)
        };
        t.push(v);
    }
    TelephoneTable(t)
}

/// Evaluates the matching polynomial at a non-negative rational.
pub fn eval_matching_polynomial(mv: &MatchingVector, lambda: &BigRational) -> BigRational {
    mv.eval(lambda)
}

/// Parses `"3"`, `"3/2"` or `"0.75"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = num_bigint::BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    BigRational::from_str(s).map_err(|_| bad())
}

/// `m_2 = C(e, 2) - sum_v C(d(v), 2)`: pairs of edges minus incident pairs.
pub fn m2_closed_form(g: &Graph) -> u64 {
    let c2 = |x: u64| x * x.saturating_sub(1) / 2;
    let incident: u64 = g.degrees().into_iter().map(|d| c2(d as u64)).sum();
    c2(g.edge_count() as u64) - incident
}

/// `m(G) = sum_k m_k(B) * T(s - k)` for a threshold graph split as
/// `K ∪ I` with `|K| = s` and `B` the cross graph.
pub fn threshold_matching_total(g: &Graph, split: &CliqueSplit) -> Result<BigUint> {
    split.validate(g)?;
    let cross = split.cross_graph(g)?;
    let mb = bipartite_matching_vector(&cross)?;
    let s = split.clique.len();
    let t = telephone(s);
    Ok((0..=s.min(mb.len().saturating_sub(1)))
        .map(|k| mb.get(k) * t.get(s - k))
        .sum())
}
