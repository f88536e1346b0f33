use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lexmatch::compression::{compress, compress_to_bipartite_threshold, compress_to_threshold};
use lexmatch::graph::{d2, pairs};
use lexmatch::io::{parse_any, GraphInput};
use lexmatch::matchings::parse_rational;
use lexmatch::verify::{self, SweepOptions, VerificationReport};
use lexmatch::young::{find_out_block_move, in_corners, out_block_move, out_corners, transpose_at};
use lexmatch::{
    bipartite_matching_vector, colex_graph, lex_bipartite, lex_graph, m2_closed_form,
    matching_vector, matching_vector_bruteforce, minimize_to_lex, rook_vector, Cell, Error, Graph,
    MatchingVector, Result, YoungDiagram,
};

use crate::{Cli, Command, ConstructKind, DiagramOp, Format, ReportPaths, Status, VerifyMode};

/// What a command produced: a JSON payload plus its plain-text rendering.
struct Outcome {
    payload: Value,
    text: String,
    status: Status,
}

impl Outcome {
    fn ok(payload: Value, text: String) -> Self {
        Outcome {
            payload,
            text,
            status: Status::Ok,
        }
    }
}

#[derive(Serialize)]
struct CommandResult<'a> {
    command: &'a [String],
    input_digest: String,
    payload: &'a Value,
    wall_time_secs: f64,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payloads serialize")
}

fn io_err(path: &str, e: std::io::Error) -> Error {
    Error::Parse(format!("{path}: {e}"))
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_err(path, e))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    }
    Ok(s)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| io_err(&path.display().to_string(), e))
}

/// Accepts graph files and also the JSON envelope printed by `construct`.
fn load_graph(src: &str) -> Result<GraphInput> {
    if src.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(g) = v.get("payload").and_then(|p| p.get("graph")) {
            return parse_any(&g.to_string());
        }
    }
    parse_any(src)
}

fn vector_of(g: &GraphInput) -> Result<MatchingVector> {
    match g {
        GraphInput::Graph(g) => matching_vector(g),
        GraphInput::Bipartite(b) => bipartite_matching_vector(b),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cells(cs: &[Cell]) -> String {
    cs.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: &Cli) -> Result<Status> {
    let started = Instant::now();
    let args: Vec<String> = std::env::args().collect();
    let mut hasher = Sha256::new();
    for a in &args[1..] {
        hasher.update(a.as_bytes());
        hasher.update([0]);
    }

    let outcome = match &cli.command {
        Command::Construct { kind, output } => construct(cli, kind, output.as_deref())?,
        Command::Count { input, poly } => {
            let src = read_input(input)?;
            hasher.update(src.as_bytes());
            count(&src, poly.as_deref())?
        }
        Command::Compress { input } => {
            let src = read_input(input)?;
            hasher.update(src.as_bytes());
            compress_cmd(&src)?
        }
        Command::Diagram { op } => diagram(op)?,
        Command::Verify {
            mode: VerifyMode::File { input },
            out,
        } => {
            let src = read_input(input)?;
            hasher.update(src.as_bytes());
            verify_file(cli, &src, out)?
        }
        Command::Verify { mode, out } => verify_cmd(cli, mode, out)?,
        Command::Check { cases } => check(cli.seed, *cases)?,
    };

    match cli.format {
        Format::Json => {
            let result = CommandResult {
                command: &args,
                input_digest: format!("{:x}", hasher.finalize()),
                payload: &outcome.payload,
                wall_time_secs: started.elapsed().as_secs_f64(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&result).expect("envelope serializes")
            );
        }
        Format::Text => print!("{}", outcome.text),
    }
    Ok(outcome.status)
}

fn construct(cli: &Cli, kind: &ConstructKind, output: Option<&Path>) -> Result<Outcome> {
    let g = match *kind {
        ConstructKind::Lex { n, e } => GraphInput::Graph(lex_graph(n, e)?),
        ConstructKind::Colex { n, e } => GraphInput::Graph(colex_graph(n, e)?),
        ConstructKind::Lexbip { l, r, e } => GraphInput::Bipartite(lex_bipartite(l, r, e)?),
    };
    let (edges, degrees) = match &g {
        GraphInput::Graph(g) => (g.edge_count(), json!(g.degrees())),
        GraphInput::Bipartite(b) => (
            b.edge_count(),
            json!({"left": b.left_degrees(), "right": b.right_degrees()}),
        ),
    };
    let summary = match &g {
        GraphInput::Graph(g) => format!("edges: {edges}\ndegrees: {}\n", join(&g.degrees())),
        GraphInput::Bipartite(b) => format!(
            "edges: {edges}\nleft degrees: {}\nright degrees: {}\n",
            join(&b.left_degrees()),
            join(&b.right_degrees())
        ),
    };
    let graph_json: Value = serde_json::from_str(&g.to_json()).expect("graph json");
    let payload = json!({"graph": graph_json, "edges": edges, "degrees": degrees});

    let file_body = match cli.format {
        Format::Text => g.to_text(),
        Format::Json => g.to_json() + "\n",
    };
    let text = match output {
        Some(path) => {
            write_file(path, &file_body)?;
            summary
        }
        None => {
            if !cli.quiet {
                eprint!("{summary}");
            }
            file_body
        }
    };
    Ok(Outcome::ok(payload, text))
}

fn count(src: &str, poly: Option<&str>) -> Result<Outcome> {
    let g = load_graph(src)?;
    let mv = vector_of(&g)?;
    let mut text = format!(
        "vector: {mv}\ntotal: {}\nmax matching: {}\n",
        mv.total(),
        mv.max_matching_size()
    );
    let mut payload = json!({
        "vector": mv,
        "total": mv.total().to_string(),
        "max_matching": mv.max_matching_size(),
    });
    if let Some(lambda) = poly {
        let lambda: BigRational = parse_rational(lambda)?;
        let value = mv.eval(&lambda);
        writeln!(text, "m({lambda}) = {value}").unwrap();
        payload["poly"] = json!({"lambda": lambda.to_string(), "value": value.to_string()});
    }
    Ok(Outcome::ok(payload, text))
}

fn compress_cmd(src: &str) -> Result<Outcome> {
    let g = load_graph(src)?;
    let before = vector_of(&g)?;
    let (out, steps, d2s) = match &g {
        GraphInput::Graph(g) => {
            let (h, steps) = compress_to_threshold(g);
            let d = (d2(g), d2(&h));
            (GraphInput::Graph(h), steps, d)
        }
        GraphInput::Bipartite(b) => {
            let (h, steps) = compress_to_bipartite_threshold(b);
            let d = (b.d2(), h.d2());
            (GraphInput::Bipartite(h), steps, d)
        }
    };
    let after = vector_of(&out)?;
    let mut text = String::new();
    for s in &steps {
        writeln!(text, "{} -> {}: moved {}", s.x, s.y, join(&s.moved)).unwrap();
    }
    writeln!(text, "d2: {} -> {}", d2s.0, d2s.1).unwrap();
    writeln!(text, "vector: {before} -> {after}").unwrap();
    text.push_str(&out.to_text());
    let graph_json: Value = serde_json::from_str(&out.to_json()).expect("graph json");
    let payload = json!({
        "graph": graph_json,
        "steps": steps,
        "d2_before": d2s.0,
        "d2_after": d2s.1,
        "vector_before": before,
        "vector_after": after,
    });
    Ok(Outcome::ok(payload, text))
}

fn parse_diagram(s: &str) -> Result<YoungDiagram> {
    s.parse()
}

fn diagram(op: &DiagramOp) -> Result<Outcome> {
    match op {
        DiagramOp::Corners { diagram } => {
            let d = parse_diagram(diagram)?;
            let (outs, ins) = (out_corners(&d), in_corners(&d));
            let text = format!(
                "diagram: {d}\nout-corners: {}\nin-corners: {}\n",
                cells(&outs),
                cells(&ins)
            );
            Ok(Outcome::ok(
                json!({"diagram": d, "out_corners": outs, "in_corners": ins}),
                text,
            ))
        }
        DiagramOp::Move { diagram, cells: cs } => {
            let d = parse_diagram(diagram)?;
            let (p, p2) = match cs.as_slice() {
                [i, j, i2, j2] => (Cell::new(*i, *j), Cell::new(*i2, *j2)),
                _ => find_out_block_move(&d)
                    .ok_or_else(|| Error::InvalidDiagram(format!("{d} has no out-block move")))?,
            };
            let after = out_block_move(&d, p, p2)?;
            let (rb, ra) = (rook_vector(&d), rook_vector(&after));
            let text = format!("move {p} -> {p2}\n{d} -> {after}\nrook: {rb} -> {ra}\n");
            Ok(Outcome::ok(
                json!({"before": d, "after": after, "P": p, "P2": p2, "rook_before": rb, "rook_after": ra}),
                text,
            ))
        }
        DiagramOp::Transpose { diagram, i, j } => {
            let d = parse_diagram(diagram)?;
            let at = Cell::new(*i, *j);
            let after = transpose_at(&d, at)?;
            let (rb, ra) = (rook_vector(&d), rook_vector(&after));
            let text = format!("transpose at {at}\n{d} -> {after}\nrook: {rb} -> {ra}\n");
            Ok(Outcome::ok(
                json!({"before": d, "after": after, "P": at, "rook_before": rb, "rook_after": ra}),
                text,
            ))
        }
        DiagramOp::Minimize { diagram } => {
            let d = parse_diagram(diagram)?;
            let (end, trace) = minimize_to_lex(&d)?;
            let replay_ok = trace.replay(&d)? == end;
            let (rb, ra) = (rook_vector(&d), rook_vector(&end));
            let mut text = format!("start: {d}\n");
            for step in &trace.steps {
                writeln!(
                    text,
                    "{}",
                    serde_json::to_string(step).expect("move serializes")
                )
                .unwrap();
            }
            writeln!(
                text,
                "end: {end}\nrook: {rb} -> {ra}\nreplay: {}",
                if replay_ok { "ok" } else { "MISMATCH" }
            )
            .unwrap();
            Ok(Outcome::ok(
                json!({
                    "start": d, "end": end, "trace": trace,
                    "rook_start": rb, "rook_end": ra, "replay_ok": replay_ok,
                }),
                text,
            ))
        }
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut t = format!("universe: {}\ninstances: {}\n", r.universe, r.instances);
    writeln!(
        t,
        "{:>6} {:>12} {:>12} {:>12} {:>10} {:>10}",
        "k", "true_min", "lex", "colex", "witness", "ties"
    )
    .unwrap();
    for row in &r.rows {
        writeln!(
            t,
            "{:>6} {:>12} {:>12} {:>12} {:>10} {:>10}",
            row.quantity.label(),
            row.true_min,
            row.lex_value,
            row.colex_value
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into()),
            row.witness_id,
            row.minimizers
        )
        .unwrap();
    }
    if let Some(above) = r.nonzero_above_left {
        writeln!(t, "nonzero m_k above left part size: {above}").unwrap();
    }
    writeln!(
        t,
        "result: {} ({} counterexamples) in {:.3} s",
        if r.verified() {
            "verified"
        } else {
            "COUNTEREXAMPLE"
        },
        r.counterexamples.len(),
        r.wall_time_secs
    )
    .unwrap();
    t
}

fn write_reports(out: &ReportPaths, payload: &Value, csv: Option<String>) -> Result<()> {
    if let Some(path) = &out.json {
        write_file(
            path,
            &(serde_json::to_string_pretty(payload).expect("json") + "\n"),
        )?;
    }
    if let (Some(path), Some(csv)) = (&out.csv, csv) {
        write_file(path, &csv)?;
    }
    Ok(())
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn verify_cmd(cli: &Cli, mode: &VerifyMode, out: &ReportPaths) -> Result<Outcome> {
    let opts = SweepOptions {
        max_instances: cli.max_instances,
        jobs: cli.jobs,
        threshold_only: false,
    };
    let progress = |what: String| {
        if !cli.quiet {
            eprintln!("{what}");
        }
    };
    match mode {
        VerifyMode::General {
            n,
            e,
            threshold_only,
        } => {
            progress(format!("sweeping labeled graphs n={n} e={e}"));
            let r = verify::verify_general(
                *n,
                *e,
                &SweepOptions {
                    threshold_only: *threshold_only,
                    ..opts
                },
            )?;
            sweep_outcome(r, out)
        }
        VerifyMode::Bipartite { l, r, e } => {
            progress(format!("sweeping bipartite graphs l={l} r={r} e={e}"));
            let rep = verify::verify_bipartite(*l, *r, *e, &opts)?;
            sweep_outcome(rep, out)
        }
        VerifyMode::File { .. } => unreachable!("handled with its input"),
        VerifyMode::Table18 => {
            let t = verify::table18()?;
            let payload = to_value(&t);
            let rows = [&t.lex, &t.colex]
                .iter()
                .map(|e| vec![e.graph.clone(), e.m2.to_string(), e.m7.to_string()])
                .collect();
            write_reports(out, &payload, Some(csv_rows(&["graph", "m2", "m7"], rows)?))?;
            let mut text = format!("{:<10} {:>8} {:>8}\n", "graph", "m_2", "m_7");
            for e in [&t.lex, &t.colex] {
                writeln!(text, "{:<10} {:>8} {:>8}", e.graph, e.m2, e.m7).unwrap();
            }
            writeln!(
                text,
                "published values: {}",
                if t.matches_published {
                    "match"
                } else {
                    "MISMATCH"
                }
            )
            .unwrap();
            let status = if t.matches_published {
                Status::Ok
            } else {
                Status::Counterexample
            };
            Ok(Outcome {
                payload,
                text,
                status,
            })
        }
        VerifyMode::Frontier { n, e, lambda } => {
            let lambdas = lambda
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            let t = verify::lambda_frontier(*n, *e, &lambdas)?;
            let payload = to_value(&t);
            let rows = t
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.lambda.clone(),
                        r.min_value.clone(),
                        r.minimizers
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        r.lex_value.clone(),
                        r.colex_value.clone(),
                    ]
                })
                .collect();
            let header = [
                "lambda",
                "min_value",
                "clique_sizes",
                "lex_value",
                "colex_value",
            ];
            write_reports(out, &payload, Some(csv_rows(&header, rows)?))?;
            let mut text = format!("n={n} e={e} clique sizes: {}\n", join(&t.candidates));
            for r in &t.rows {
                writeln!(
                    text,
                    "lambda={} min={} at s={} lex={} colex={}",
                    r.lambda,
                    r.min_value,
                    join(&r.minimizers),
                    r.lex_value,
                    r.colex_value
                )
                .unwrap();
            }
            let status = if t.consistent() {
                Status::Ok
            } else {
                Status::Counterexample
            };
            Ok(Outcome {
                payload,
                text,
                status,
            })
        }
    }
}

/// Sweeps `G(n, e)` or `B(l, r, e)` for the parameters of the given graph.
fn verify_file(cli: &Cli, src: &str, out: &ReportPaths) -> Result<Outcome> {
    let mode = match load_graph(src)? {
        GraphInput::Graph(g) => VerifyMode::General {
            n: g.n(),
            e: g.edge_count(),
            threshold_only: false,
        },
        GraphInput::Bipartite(b) => VerifyMode::Bipartite {
            l: b.left().min(b.right()),
            r: b.left().max(b.right()),
            e: b.edge_count(),
        },
    };
    verify_cmd(cli, &mode, out)
}

fn sweep_outcome(r: VerificationReport, out: &ReportPaths) -> Result<Outcome> {
    let payload = to_value(&r);
    write_reports(out, &payload, Some(r.to_csv()?))?;
    let status = if r.verified() {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok(Outcome {
        payload,
        text: report_text(&r),
        status,
    })
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if edges.len() < max_edges && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("random edges are valid")
}

fn check(seed: u64, cases: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(2..=10);
        let g = random_graph(&mut rng, n, 20.min(pairs(n)));
        let mv = matching_vector(&g)?;
        if mv != matching_vector_bruteforce(&g)? {
            failures.push(json!({"case": case, "check": "bruteforce", "graph": g}));
        }
        if mv.get(2) != m2_closed_form(&g).into() {
            failures.push(json!({"case": case, "check": "m2", "graph": g}));
        }
        let x = rng.gen_range(1..=n);
        let y = (x % n) + 1;
        let h = compress(&g, x, y)?;
        if h.edge_count() != g.edge_count() || !matching_vector(&h)?.pointwise_le(&mv) {
            failures
                .push(json!({"case": case, "check": "compression", "graph": g, "x": x, "y": y}));
        }
    }
    let text = format!("seed {seed}: {cases} cases, {} failures\n", failures.len());
    let status = if failures.is_empty() {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok(Outcome {
        payload: json!({"seed": seed, "cases": cases, "failures": failures}),
        text,
        status,
    })
}
