//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p lexmatch --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lexmatch::compression::compress;
use lexmatch::graph::pairs;
use lexmatch::verify::{
    lex_across_candidates, threshold_graphs, verify_bipartite, verify_general, SweepOptions,
};
use lexmatch::young::{
    bipartite_from_diagram, in_corners, out_block_move, out_corners, transpose_at,
};
use lexmatch::{
    bipartite_matching_vector, clique_split, colex_graph, d2, lex_graph, m2_closed_form,
    matching_vector, matching_vector_bruteforce, minimize_to_lex, rook_vector, telephone,
    threshold_matching_total, vicinal_comparable, Cell, Graph, MatchingVector, YoungDiagram,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Graph {
    let p: f64 = rng.gen_range(0.05..0.95);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if edges.len() < max_edges && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Matchings enumerated one by one: match the smallest free vertex to each
/// free neighbor, or leave it unmatched.
fn enumerate_matchings(g: &Graph) -> Vec<u64> {
    fn go(g: &Graph, free: &mut Vec<bool>, size: usize, counts: &mut Vec<u64>) {
        let Some(u) = (1..=g.n()).find(|&u| free[u]) else {
            counts[size] += 1;
            return;
        };
        free[u] = false;
        go(g, free, size, counts);
        for v in u + 1..=g.n() {
            if free[v] && g.has_edge(u, v) {
                free[v] = false;
                go(g, free, size + 1, counts);
                free[v] = true;
            }
        }
        free[u] = true;
    }
    let mut counts = vec![0; g.n() / 2 + 1];
    go(g, &mut vec![true; g.n() + 1], 0, &mut counts);
    counts
}

fn frames(max_rows: usize, max_cols: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_rows).flat_map(move |r| (1..=max_cols).map(move |c| (r, c)))
}

fn published_table() -> Outcome {
    let lex = matching_vector(&lex_graph(18, 87).map_err(err)?).map_err(err)?;
    let colex = matching_vector(&colex_graph(18, 87).map_err(err)?).map_err(err)?;
    let got = [lex.get(2), lex.get(7), colex.get(2), colex.get(7)];
    let want: [BigUint; 4] = [2745u32.into(), 0u32.into(), 2739u32.into(), 93555u32.into()];
    ensure(got == want, || format!("got {got:?}"))?;
    // no 7 disjoint edges: every lex edge meets {1..6}
    let g = lex_graph(18, 87).map_err(err)?;
    ensure(g.edges().iter().all(|&(u, _)| u <= 6), || {
        "lex edge avoids {1..6}".into()
    })?;
    Ok("m2(L)=2745 m7(L)=0 m2(C)=2739 m7(C)=93555".into())
}

fn m2_cross_check() -> Outcome {
    let mut graphs = vec![
        lex_graph(18, 87).map_err(err)?,
        colex_graph(18, 87).map_err(err)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d32);
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        graphs.push(random_graph(&mut rng, n, pairs(n)));
    }
    for g in &graphs {
        let mv = matching_vector(g).map_err(err)?;
        let closed = BigUint::from(m2_closed_form(g));
        ensure(mv.get(2) == closed, || {
            format!("{g:?}: {} vs {closed}", mv.get(2))
        })?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn general_sweep() -> Outcome {
    let opts = SweepOptions::default();
    let mut universes: Vec<(usize, usize)> = (0..=6)
        .flat_map(|n| (0..=pairs(n)).map(move |e| (n, e)))
        .collect();
    universes.extend((0..=12).map(|e| (7, e)));
    let mut instances = 0u64;
    for (n, e) in universes.iter().copied() {
        let r = verify_general(n, e, &opts).map_err(err)?;
        instances += r.instances;
        ensure(r.verified(), || {
            format!("n={n} e={e}: {:?}", r.counterexamples)
        })?;
        ensure(r.recheck().map_err(err)?, || {
            format!("n={n} e={e}: witnesses do not recheck")
        })?;
        // independent recount of lex/colex values
        for (g, label) in [
            (lex_graph(n, e).map_err(err)?, "lex"),
            (colex_graph(n, e).map_err(err)?, "colex"),
        ] {
            let brute = enumerate_matchings(&g);
            for row in &r.rows {
                let v = match row.quantity {
                    lexmatch::verify::Quantity::K(k) => BigUint::from(brute[k]),
                    lexmatch::verify::Quantity::Total => BigUint::from(brute.iter().sum::<u64>()),
                };
                let claimed = if label == "lex" {
                    &row.lex_value
                } else {
                    row.colex_value.as_ref().unwrap()
                };
                ensure(&v == claimed, || {
                    format!("n={n} e={e} {label} value mismatch")
                })?;
            }
        }
        // the minimum total is attained among lex-across candidates
        if n <= 6 {
            let cand_min = lex_across_candidates(n, e)
                .map_err(err)?
                .iter()
                .map(|(g, _)| matching_vector(g).map(|m| m.total()))
                .collect::<lexmatch::Result<Vec<_>>>()
                .map_err(err)?
                .into_iter()
                .min()
                .unwrap();
            let total = &r.rows.last().unwrap().true_min;
            ensure(&cand_min == total, || {
                format!("n={n} e={e}: candidates {cand_min} vs {total}")
            })?;
        }
    }
    Ok(format!(
        "{} universes, {instances} graphs, 0 counterexamples",
        universes.len()
    ))
}

fn bipartite_sweep() -> Outcome {
    let opts = SweepOptions::default();
    let mut count = 0;
    let mut instances = 0;
    let mut above = false;
    for l in 1..=4 {
        for r in l..=4 {
            for e in 0..=l * r {
                let rep = verify_bipartite(l, r, e, &opts).map_err(err)?;
                ensure(rep.verified(), || {
                    format!("l={l} r={r} e={e}: {:?}", rep.counterexamples)
                })?;
                ensure(rep.recheck().map_err(err)?, || {
                    format!("l={l} r={r} e={e}: recheck")
                })?;
                above |= rep.nonzero_above_left == Some(true);
                count += 1;
                instances += rep.instances;
            }
        }
    }
    ensure(!above, || "some m_k with k > l was nonzero".into())?;
    Ok(format!(
        "{count} universes, {instances} graphs, 0 counterexamples"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e0e);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(&mut rng, n, 20);
        let dp = matching_vector(&g).map_err(err)?;
        let brute = matching_vector_bruteforce(&g).map_err(err)?;
        ensure(dp == brute, || format!("{g:?}: {dp} vs {brute}"))?;
    }
    let mut diagrams = 0;
    for (rows, cols) in frames(5, 5) {
        for d in YoungDiagram::all_in_frame(rows, cols) {
            let rv = rook_vector(&d);
            let mv = bipartite_matching_vector(&bipartite_from_diagram(&d)).map_err(err)?;
            ensure(rv == mv, || format!("{d}: {rv} vs {mv}"))?;
            diagrams += 1;
        }
    }
    Ok(format!("200 random graphs, {diagrams} diagrams"))
}

fn compression_monotone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let mut incomparable = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, pairs(n));
        let x = rng.gen_range(1..=n);
        let mut y = rng.gen_range(1..=n - 1);
        if y >= x {
            y += 1;
        }
        let before = matching_vector(&g).map_err(err)?;
        let h = compress(&g, x, y).map_err(err)?;
        ensure(h.edge_count() == g.edge_count(), || {
            format!("{g:?} {x}->{y}: edge count")
        })?;
        let after = matching_vector(&h).map_err(err)?;
        ensure(after.pointwise_le(&before), || {
            format!("{g:?} {x}->{y}: {after} > {before}")
        })?;

        if !vicinal_comparable(&g, x, y) {
            incomparable += 1;
            let (s, t) = if g.degree(x) <= g.degree(y) {
                (x, y)
            } else {
                (y, x)
            };
            let h = compress(&g, s, t).map_err(err)?;
            ensure(d2(&h) > d2(&g), || {
                format!("{g:?} {s}->{t}: d2 {} -> {}", d2(&g), d2(&h))
            })?;
        }
    }
    Ok(format!("500 triples, {incomparable} incomparable pairs"))
}

fn graph_rooks(d: &YoungDiagram) -> Result<MatchingVector, String> {
    bipartite_matching_vector(&bipartite_from_diagram(d)).map_err(err)
}

fn transpose_invariance() -> Outcome {
    let mut checked = 0;
    for (rows, cols) in frames(4, 5) {
        for d in YoungDiagram::all_in_frame(rows, cols) {
            let base = graph_rooks(&d)?;
            for i in 1..=rows {
                for j in 1..=cols {
                    if let Ok(t) = transpose_at(&d, Cell::new(i, j)) {
                        let rv = graph_rooks(&t)?;
                        ensure(rv == base, || format!("{d} at ({i},{j}): {base} -> {rv}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} legal transposes"))
}

fn out_block_monotone() -> Outcome {
    let mut checked = 0;
    for (rows, cols) in frames(4, 5) {
        for d in YoungDiagram::all_in_frame(rows, cols) {
            let base = graph_rooks(&d)?;
            for p in out_corners(&d) {
                for p2 in in_corners(&d) {
                    let Ok(moved) = out_block_move(&d, p, p2) else {
                        continue;
                    };
                    ensure(p.sum() < p2.sum(), || format!("{d}: accepted {p}->{p2}"))?;
                    let rv = graph_rooks(&moved)?;
                    ensure(rv.pointwise_le(&base) && rv.total() < base.total(), || {
                        format!("{d} {p}->{p2}: {base} -> {rv}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 0, || "no moves checked".into())?;
    Ok(format!("{checked} out-block moves"))
}

fn minimize_driver() -> Outcome {
    let mut count = 0;
    let mut steps = 0;
    for (rows, cols) in frames(5, 5) {
        for d in YoungDiagram::all_in_frame(rows, cols) {
            let (end, trace) = minimize_to_lex(&d).map_err(|e| format!("{d}: {e}"))?;
            let want = YoungDiagram::lex(rows.min(cols), rows.max(cols), d.size()).map_err(err)?;
            ensure(end == want, || format!("{d}: ended at {end}"))?;
            ensure(trace.replay(&d).map_err(err)? == end, || {
                format!("{d}: replay differs")
            })?;
            ensure(rook_vector(&end).pointwise_le(&rook_vector(&d)), || {
                format!("{d}: rooks grew")
            })?;
            steps += trace.steps.len();
            count += 1;
        }
    }
    Ok(format!("{count} diagrams, {steps} moves, no theory gap"))
}

fn threshold_identity() -> Outcome {
    let mut count = 0;
    for n in 1..=8 {
        for g in threshold_graphs(n).map_err(err)? {
            let split = clique_split(&g).map_err(err)?;
            let lhs = threshold_matching_total(&g, &split).map_err(err)?;
            let rhs = BigUint::from(enumerate_matchings(&g).iter().sum::<u64>());
            ensure(lhs == rhs, || format!("{g:?}: {lhs} vs {rhs}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} threshold graphs"))
}

fn telephone_numbers() -> Outcome {
    let t = telephone(8);
    for n in 0..=8 {
        let brute: u64 = enumerate_matchings(&Graph::complete(n).map_err(err)?)
            .iter()
            .sum();
        ensure(*t.get(n) == BigUint::from(brute), || {
            format!("T({n}) = {} vs {brute}", t.get(n))
        })?;
    }
    ensure(t.get(0).is_one() && !t.get(8).is_zero(), || {
        "bad endpoints".into()
    })?;
    Ok(format!(
        "T(0..=8) = {:?}",
        t.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("18-vertex table exact", published_table),
        ("m_2 closed form", m2_cross_check),
        (
            "lex/colex minimality, all graphs n<=6 and n=7 e<=12",
            general_sweep,
        ),
        ("lex-bipartite minimality, l<=r<=4", bipartite_sweep),
        ("counting oracles agree", oracle_equivalence),
        ("compression monotonicity", compression_monotone),
        ("transpose preserves rook numbers", transpose_invariance),
        ("out-block moves decrease rook numbers", out_block_monotone),
        ("minimize driver reaches lex", minimize_driver),
        ("threshold matching identity", threshold_identity),
        ("telephone numbers", telephone_numbers),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
