//! Exhaustive checks of the lex/colex minimality statements over small
//! labeled universes, plus the targeted 18-vertex table and the
//! matching-polynomial frontier over lex-across graphs.

mod report;

use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    colex_graph, is_threshold, lex_bipartite, lex_bipartite_unchecked, lex_graph, pairs,
    BipartiteGraph, CliqueSplit, Graph,
};
use crate::matchings::{bipartite_matching_vector, matching_vector, MatchingVector};

pub use report::{Counterexample, Instance, Quantity, ReportRow, VerificationReport, Witness};

pub const DEFAULT_MAX_INSTANCES: u64 = 10_000_000;

const CHUNK: usize = 1 << 14;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_instances: u64,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    /// Restrict the general universe to threshold graphs.
    pub threshold_only: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_instances: DEFAULT_MAX_INSTANCES,
            jobs: 0,
            threshold_only: false,
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn check_budget(count: BigUint, budget: u64) -> Result<u64> {
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded {
            requested: count.to_string(),
            budget,
        }),
    }
}

/// All labeled graphs on `[n]` with `e` edges, as `e`-subsets of the
/// lex-ordered pair list, in lexicographic subset order.
pub fn enumerate_graphs(
    n: usize,
    e: usize,
    max_instances: u64,
) -> Result<impl Iterator<Item = Graph>> {
    Graph::empty(n)?;
    check_budget(binomial(pairs(n) as u64, e as u64), max_instances)?;
    let all = lex_graph(n, pairs(n))?.edges();
    Ok(all
        .clone()
        .into_iter()
        .combinations(e)
        .map(move |edges| Graph::from_edges(n, &edges).expect("distinct pairs in range")))
}

/// All bipartite graphs with parts `l`, `r` and `e` edges, as `e`-subsets of
/// the lex-ordered cells of `L x R`.
pub fn enumerate_bipartite(
    l: usize,
    r: usize,
    e: usize,
    max_instances: u64,
) -> Result<impl Iterator<Item = BipartiteGraph>> {
    BipartiteGraph::empty(l, r)?;
    check_budget(binomial((l * r) as u64, e as u64), max_instances)?;
    let cells: Vec<(usize, usize)> = (1..=l).flat_map(|i| (1..=r).map(move |j| (i, j))).collect();
    Ok(cells.into_iter().combinations(e).map(move |edges| {
        BipartiteGraph::from_edges(l, r, &edges).expect("distinct cells in range")
    }))
}

/// Running minimum of one quantity with the first witness index.
struct Tracker {
    quantity: Quantity,
    min: Option<BigUint>,
    witness: u64,
    count: u64,
}

impl Tracker {
    fn offer(&mut self, id: u64, value: BigUint) {
        match &self.min {
            Some(m) if *m < value => {}
            Some(m) if *m == value => self.count += 1,
            _ => {
                self.min = Some(value);
                self.witness = id;
                self.count = 1;
            }
        }
    }
}

/// Trackers, instances seen, retained witnesses, and whether any coefficient
/// past `width` was nonzero.
type SweepState<T> = (Vec<Tracker>, u64, Vec<(u64, T)>, bool);

/// Folds `(id, vector)` pairs through the per-quantity trackers.
fn sweep<T, F>(
    items: impl Iterator<Item = T>,
    width: usize,
    opts: &SweepOptions,
    keep: impl Fn(&T) -> bool + Sync,
    eval: F,
) -> Result<SweepState<T>>
where
    T: Send + Sync + Clone,
    F: Fn(&T) -> Result<MatchingVector> + Sync,
{
    let mut trackers: Vec<Tracker> = (0..width)
        .map(Quantity::K)
        .chain([Quantity::Total])
        .map(|quantity| Tracker {
            quantity,
            min: None,
            witness: 0,
            count: 0,
        })
        .collect();
    let mut seen = 0u64;
    let mut next_id = 0u64;
    let mut candidates: Vec<(u64, T)> = Vec::new();
    let mut above_width = false;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;

    for chunk in &items.chunks(CHUNK) {
        let batch: Vec<(u64, T)> = chunk
            .map(|t| {
                let id = next_id;
                next_id += 1;
                (id, t)
            })
            .filter(|(_, t)| keep(t))
            .collect();
        let vectors: Vec<Result<MatchingVector>> =
            pool.install(|| batch.par_iter().map(|(_, t)| eval(t)).collect());
        for ((id, t), mv) in batch.into_iter().zip(vectors) {
            let mv = mv?;
            seen += 1;
            above_width |= mv.coefficients().iter().skip(width).any(|c| c.bits() > 0);
            for tr in &mut trackers {
                let value = tr.quantity.of(&mv);
                tr.offer(id, value);
            }
            if trackers.iter().any(|tr| tr.witness == id) {
                candidates.push((id, t));
            }
        }
        // only current witnesses need to be kept
        let live: Vec<u64> = trackers.iter().map(|t| t.witness).collect();
        candidates.retain(|(id, _)| live.contains(id));
    }
    Ok((trackers, seen, candidates, above_width))
}

fn build_report(
    universe: String,
    trackers: Vec<Tracker>,
    seen: u64,
    kept: Vec<(u64, Instance)>,
    lex: &MatchingVector,
    colex: Option<&MatchingVector>,
    started: Instant,
) -> VerificationReport {
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for tr in trackers {
        let Some(true_min) = tr.min else { continue };
        let row = ReportRow {
            quantity: tr.quantity,
            true_min,
            lex_value: tr.quantity.of(lex),
            colex_value: colex.map(|c| tr.quantity.of(c)),
            witness_id: tr.witness,
            minimizers: tr.count,
        };
        if row.is_counterexample() {
            let witness = kept
                .iter()
                .find(|(id, _)| *id == row.witness_id)
                .map(|(_, g)| g.clone())
                .expect("witness retained");
            counterexamples.push(Counterexample {
                quantity: row.quantity,
                value: row.true_min.clone(),
                bound: row.bound(),
                witness,
            });
        }
        rows.push(row);
    }
    let witnesses = kept
        .into_iter()
        .filter(|(id, _)| rows.iter().any(|r| r.witness_id == *id))
        .map(|(id, instance)| Witness { id, instance })
        .collect();
    VerificationReport {
        universe,
        instances: seen,
        rows,
        witnesses,
        counterexamples,
        nonzero_above_left: None,
        wall_time_secs: started.elapsed().as_secs_f64(),
    }
}

/// Checks that no graph on `[n]` with `e` edges has fewer `k`-matchings (or
/// fewer matchings) than the better of the lex and colex graphs.
pub fn verify_general(n: usize, e: usize, opts: &SweepOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let graphs = enumerate_graphs(n, e, opts.max_instances)?;
    let lex = matching_vector(&lex_graph(n, e)?)?;
    let colex = matching_vector(&colex_graph(n, e)?)?;
    let threshold_only = opts.threshold_only;
    let (trackers, seen, kept, _) = sweep(
        graphs,
        n / 2 + 1,
        opts,
        |g| !threshold_only || is_threshold(g),
        matching_vector,
    )?;
    let universe = format!(
        "G(n={n}, e={e}){}",
        if threshold_only {
            " threshold only"
        } else {
            ""
        }
    );
    let kept = kept
        .into_iter()
        .map(|(id, g)| (id, Instance::Graph(g)))
        .collect();
    Ok(build_report(
        universe,
        trackers,
        seen,
        kept,
        &lex,
        Some(&colex),
        started,
    ))
}

/// Checks that no bipartite graph with parts `l <= r` and `e` edges has
/// fewer `k`-matchings than `L_{l,r}(e)`.
pub fn verify_bipartite(
    l: usize,
    r: usize,
    e: usize,
    opts: &SweepOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let lex = bipartite_matching_vector(&lex_bipartite(l, r, e)?)?;
    let graphs = enumerate_bipartite(l, r, e, opts.max_instances)?;
    let (trackers, seen, kept, above) =
        sweep(graphs, l + 1, opts, |_| true, bipartite_matching_vector)?;
    let kept = kept
        .into_iter()
        .map(|(id, b)| (id, Instance::Bipartite(b)))
        .collect();
    let mut report = build_report(
        format!("B(l={l}, r={r}, e={e})"),
        trackers,
        seen,
        kept,
        &lex,
        None,
        started,
    );
    report.nonzero_above_left = Some(above);
    Ok(report)
}

/// Published values for `L(18,87)` and `C(18,87)`: `(m_2, m_7)`.
pub const PUBLISHED_LEX: (u64, u64) = (2745, 0);
pub const PUBLISHED_COLEX: (u64, u64) = (2739, 93555);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub graph: String,
    #[serde(with = "report::decimal")]
    pub m2: BigUint,
    #[serde(with = "report::decimal")]
    pub m7: BigUint,
    pub max_matching: usize,
    pub vector: MatchingVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table18 {
    pub lex: TableEntry,
    pub colex: TableEntry,
    /// All four numbers equal the published ones.
    pub matches_published: bool,
}

/// `m_2` and `m_7` of the lex and colex graphs on 18 vertices, 87 edges.
pub fn table18() -> Result<Table18> {
    let entry = |name: &str, g: Graph| -> Result<TableEntry> {
        let vector = matching_vector(&g)?;
        Ok(TableEntry {
            graph: name.into(),
            m2: vector.get(2),
            m7: vector.get(7),
            max_matching: vector.max_matching_size(),
            vector,
        })
    };
    let lex = entry("L(18,87)", lex_graph(18, 87)?)?;
    let colex = entry("C(18,87)", colex_graph(18, 87)?)?;
    let same = |t: &TableEntry, (m2, m7): (u64, u64)| t.m2 == m2.into() && t.m7 == m7.into();
    let matches_published = same(&lex, PUBLISHED_LEX) && same(&colex, PUBLISHED_COLEX);
    Ok(Table18 {
        lex,
        colex,
        matches_published,
    })
}

/// Threshold graphs `K_s` plus lex-bipartite cross edges, one per clique
/// size `s` with `C(s,2) <= e < C(s,2) + s(n - s)`, plus `s = n` for the
/// complete graph. Different sizes may give the same graph. The smaller side is the left part of the cross pattern,
/// the independent side on ties.
pub fn lex_across_candidates(n: usize, e: usize) -> Result<Vec<(Graph, CliqueSplit)>> {
    Graph::empty(n)?;
    if e > pairs(n) {
        return Err(Error::EdgeCountOutOfRange { e, max: pairs(n) });
    }
    let mut out = Vec::new();
    for s in 0..=n {
        let base = pairs(s);
        let room = s * (n - s);
        let feasible = base <= e && (e - base < room || (room == 0 && e == base));
        if !feasible {
            continue;
        }
        let cross = e - base;
        let clique: Vec<usize> = (1..=s).collect();
        let independent: Vec<usize> = (s + 1..=n).collect();
        let mut edges: Vec<(usize, usize)> = (1..=s)
            .flat_map(|u| (u + 1..=s).map(move |v| (u, v)))
            .collect();
        if s < n - s {
            let b = lex_bipartite_unchecked(s, n - s, cross)?;
            edges.extend(
                b.edges()
                    .into_iter()
                    .map(|(i, j)| (clique[i - 1], independent[j - 1])),
            );
        } else {
            let b = lex_bipartite_unchecked(n - s, s, cross)?;
            edges.extend(
                b.edges()
                    .into_iter()
                    .map(|(i, j)| (clique[j - 1], independent[i - 1])),
            );
        }
        let g = Graph::from_edges(n, &edges)?;
        out.push((g, CliqueSplit::new(clique, independent)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierRow {
    pub lambda: String,
    pub min_value: String,
    /// Clique sizes of the minimizing candidates.
    pub minimizers: Vec<usize>,
    pub lex_value: String,
    pub colex_value: String,
    /// At `lambda = 1`: the minimum equals `min(m(lex), m(colex))`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub consistent_at_one: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierTable {
    pub n: usize,
    pub e: usize,
    pub candidates: Vec<usize>,
    pub rows: Vec<FrontierRow>,
}

impl FrontierTable {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.consistent_at_one != Some(false))
    }
}

/// Minimizers of the matching polynomial over the lex-across candidates
/// at each `lambda`.
pub fn lambda_frontier(n: usize, e: usize, lambdas: &[BigRational]) -> Result<FrontierTable> {
    let candidates = lex_across_candidates(n, e)?;
    let vectors: Vec<MatchingVector> = candidates
        .iter()
        .map(|(g, _)| matching_vector(g))
        .collect::<Result<_>>()?;
    let lex = matching_vector(&lex_graph(n, e)?)?;
    let colex = matching_vector(&colex_graph(n, e)?)?;
    let sizes: Vec<usize> = candidates.iter().map(|(_, s)| s.clique.len()).collect();

    let rows = lambdas
        .iter()
        .map(|lambda| {
            let values: Vec<BigRational> = vectors.iter().map(|v| v.eval(lambda)).collect();
            let min = values
                .iter()
                .min()
                .cloned()
                .unwrap_or_else(BigRational::one);
            let minimizers = sizes
                .iter()
                .zip(&values)
                .filter(|(_, v)| **v == min)
                .map(|(s, _)| *s)
                .collect();
            let (lv, cv) = (lex.eval(lambda), colex.eval(lambda));
            let consistent_at_one = lambda.is_one().then(|| min == lv.clone().min(cv.clone()));
            FrontierRow {
                lambda: lambda.to_string(),
                min_value: min.to_string(),
                minimizers,
                lex_value: lv.to_string(),
                colex_value: cv.to_string(),
                consistent_at_one,
            }
        })
        .collect();
    Ok(FrontierTable {
        n,
        e,
        candidates: sizes,
        rows,
    })
}

/// Every threshold graph on `[n]` built by adding vertex `v = 2..=n` either
/// isolated or dominating `1..v`; `2^(n-1)` creation sequences.
pub fn threshold_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for seq in 0u64..(1u64 << (n - 1)) {
        let mut edges = Vec::new();
        for v in 2..=n {
            if seq & (1 << (v - 2)) != 0 {
                edges.extend((1..v).map(|u| (u, v)));
            }
        }
        out.push(Graph::from_edges(n, &edges)?);
    }
    Ok(out)
}
