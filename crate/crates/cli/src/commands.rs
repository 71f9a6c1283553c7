use std::time::Duration;

use qgraph::catalog::{
    catalog_entry, catalog_names, classify_with, run_search, ClassifyOptions, CodeJson, SearchBounds, SearchMode, SearchReport,
};
use qgraph::codesearch::{check_conditions, CodingClique};
use qgraph::gf2::Gf2Matrix;
use qgraph::graphstate::{
    certified_distance, code_invariants, format_rational, frequency_series, is_pure, kl_verify, weight_signature, Verdict,
};
use qgraph::stabilizer::{stabilizer_to_graph, standard_form};
use serde_json::{json, Value};

use crate::input::{parse_code, parse_graph, parse_stabilizer, RawCode};
use crate::{Command, Failure, Output};

pub fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::SearchClique { graph, d, mode, max_results, time_budget } => {
            let mode: SearchMode = mode.parse()?;
            if matches!(mode, SearchMode::Group(_)) {
                return Err(Failure::Input("use search-group for coding groups".into()));
            }
            search(&graph, d, mode, max_results, time_budget)
        }
        Command::SearchGroup { graph, d, k, max_results, time_budget } => {
            search(&graph, d, SearchMode::Group(k), max_results, time_budget)
        }
        Command::Verify { code, d } => verify(&code, d),
        Command::Weights { code } => weights(&code),
        Command::Freq { code, d } => freq(&code, d),
        Command::Lc { code, vertex } => lc(&code, vertex),
        Command::StandardForm { stabilizer } => standard(&stabilizer),
        Command::ToGraph { stabilizer } => to_graph(&stabilizer),
        Command::Catalog { name } => catalog(name.as_deref()),
        Command::Classify { n, k, d, include_decomposable, no_witness } => {
            let c = classify_with(n, k, d, ClassifyOptions { include_decomposable, witnesses: !no_witness })?;
            Ok(Output { table: c.to_table(), json: serde_json::to_value(&c).expect("serializable"), exit: 0 })
        }
    }
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| Failure::Input(format!("bad time budget {s}")))).transpose()
}

fn search(
    graph: &str,
    d: usize,
    mode: SearchMode,
    max_results: Option<usize>,
    time_budget: Option<f64>,
) -> Result<Output, Failure> {
    let g = parse_graph(graph)?;
    let bounds = SearchBounds { time_budget: budget(time_budget)?, max_results };
    let SearchReport { codes, log } = run_search(&g, d, mode, bounds)?;
    let jsons: Vec<CodeJson> =
        codes.iter().enumerate().map(|(i, c)| CodeJson::from_clique(&format!("result_{}", i + 1), c)).collect();
    let mut table = format!(
        "graph {} (n={}) d={} mode={}\nsuper graph: {} vertices, {} edges\nresults: {}{}\n",
        log.graph6,
        log.n,
        log.d,
        log.mode,
        log.super_graph_vertices,
        log.super_graph_edges,
        log.results,
        if log.complete { "" } else { " (incomplete)" }
    );
    for (i, c) in codes.iter().enumerate() {
        table.push_str(&format!("  #{} K={}: {}\n", i + 1, c.size(), member_text(&c.members)));
    }
    let exit = if log.complete { 0 } else { 3 };
    Ok(Output { json: json!({ "log": log, "codes": jsons }), table, exit })
}

fn member_text(members: &[qgraph::VertexSet]) -> String {
    members.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Accepted => json!({ "accepted": true }),
        Verdict::Violation(x) => json!({
            "accepted": false,
            "error": x.error.to_string(),
            "i": x.i,
            "j": x.j,
            "kind": format!("{:?}", x.kind),
        }),
    }
}

fn verify(src: &str, d_override: Option<usize>) -> Result<Output, Failure> {
    let code = parse_code(src)?;
    let d = d_override.unwrap_or(code.d);
    let conditions = check_conditions(&code.graph, d, &code.members)?;
    let group_ok = match &code.generators {
        None => true,
        Some(gens) => {
            let mut span = qgraph::gf2::span(gens, code.graph.n());
            let mut listed = code.members.clone();
            span.sort();
            listed.sort();
            span == listed
        }
    };
    let verdict = kl_verify(&code.graph, &code.members, d)?;
    let distance = certified_distance(&code.graph, &code.members)?;
    let pure = is_pure(&code.graph, &code.members, d)?;
    let ok = conditions.is_ok() && verdict.is_accepted() && group_ok;
    let json = json!({
        "name": code.name,
        "n": code.graph.n(),
        "K": code.members.len(),
        "d": d,
        "conditions": match conditions { Ok(()) => "satisfied".to_string(), Err(f) => f.to_string() },
        "generators_span_clique": group_ok,
        "knill_laflamme": verdict_json(&verdict),
        "distance": distance,
        "pure": pure,
        "verified": ok,
    });
    let table = format!(
        "{}: (({}, {}, {})) conditions={} knill_laflamme={} distance={} pure={}\n",
        code.name,
        code.graph.n(),
        code.members.len(),
        d,
        if conditions.is_ok() { "ok" } else { "FAILED" },
        if verdict.is_accepted() { "ok" } else { "FAILED" },
        distance.map_or("-".to_string(), |x| x.to_string()),
        pure
    );
    Ok(Output { json, table, exit: if ok { 0 } else { 1 } })
}

fn weights(src: &str) -> Result<Output, Failure> {
    let code = parse_code(src)?;
    let inv = code_invariants(&code.graph, &code.members)?;
    let sum = inv.weights.iter().fold(qgraph::graphstate::Rational::from_integer(0), |a, b| a + b);
    let signature = weight_signature(&inv.weights);
    let weights: Vec<String> = inv.weights.iter().map(format_rational).collect();
    let table = format!(
        "{}\n{}\nsum = {}\n",
        signature,
        weights.iter().enumerate().map(|(d, a)| format!("A_{d} = {a}")).collect::<Vec<_>>().join("\n"),
        format_rational(&sum)
    );
    Ok(Output {
        json: json!({ "name": code.name, "weights": weights, "signature": signature, "sum": format_rational(&sum) }),
        table,
        exit: 0,
    })
}

fn freq(src: &str, d: Option<usize>) -> Result<Output, Failure> {
    let code = parse_code(src)?;
    let n = code.graph.n();
    let ds: Vec<usize> = match d {
        Some(d) if d > n => return Err(Failure::Input(format!("d = {d} exceeds n = {n}"))),
        Some(d) => vec![d],
        None => (0..=n).collect(),
    };
    let mut series = Vec::new();
    let mut table = String::new();
    for d in ds {
        let f = frequency_series(&code.graph, &code.members, d)?;
        let text: Vec<Vec<String>> = f.iter().map(|l| l.iter().map(format_rational).collect()).collect();
        for (s, l) in text.iter().enumerate() {
            table.push_str(&format!("d={d} |S|={s}: {}\n", l.join(" ")));
        }
        series.push(json!({ "d": d, "by_support_size": text }));
    }
    Ok(Output { json: json!({ "name": code.name, "freq": series }), table, exit: 0 })
}

fn into_clique(code: RawCode) -> Result<CodingClique, Failure> {
    Ok(match code.generators {
        Some(gens) => CodingClique::from_generators(code.graph, code.d, gens)?,
        None => CodingClique::new(code.graph, code.d, code.members)?,
    })
}

fn lc(src: &str, vertex: usize) -> Result<Output, Failure> {
    let code = parse_code(src)?;
    let n = code.graph.n();
    if vertex == 0 || vertex > n {
        return Err(Failure::Input(format!("vertex {vertex} out of range 1..={n}")));
    }
    let name = code.name.clone();
    let clique = into_clique(code)?;
    let moved = clique.lc_transport(vertex - 1)?;
    let check = moved.revalidate()?;
    let out = CodeJson::from_clique(&format!("{name}_lc{vertex}"), &moved);
    let table = format!(
        "{} on the graph complemented at {}: {}\nconditions: {}\n",
        out.name,
        vertex,
        member_text(&moved.members),
        if check.is_ok() { "ok" } else { "FAILED" }
    );
    let exit = if check.is_ok() { 0 } else { 1 };
    Ok(Output { json: serde_json::to_value(&out).expect("serializable"), table, exit })
}

fn table_rows(m: &Gf2Matrix) -> Vec<String> {
    m.to_table().iter().map(|r| r.iter().map(|b| b.to_string()).collect()).collect()
}

fn standard(src: &str) -> Result<Output, Failure> {
    let cm = parse_stabilizer(src)?;
    let sf = standard_form(&cm)?;
    let rows: Vec<String> = sf.rows.iter().map(|p| p.to_string()).collect();
    let json = json!({
        "n": sf.n,
        "r": sf.r,
        "k": sf.k,
        "A": table_rows(&sf.a),
        "D": table_rows(&sf.d),
        "E": table_rows(&sf.e),
        "rows": rows,
        "transforms": sf.transforms,
    });
    let table = format!(
        "n={} r={} k={}\n{}\nA: {}\nD: {}\nE: {}\n",
        sf.n,
        sf.r,
        sf.k,
        rows.join("\n"),
        table_rows(&sf.a).join(" "),
        table_rows(&sf.d).join(" "),
        table_rows(&sf.e).join(" ")
    );
    Ok(Output { json, table, exit: 0 })
}

fn to_graph(src: &str) -> Result<Output, Failure> {
    let cm = parse_stabilizer(src)?;
    let code = stabilizer_to_graph(&cm)?;
    let out = CodeJson::from_clique("graph_form", &code.group);
    let table =
        format!("graph edges: {:?}\ngroup: {}\nd = {}\n", out.graph.edges, member_text(&code.group.members), code.group.d);
    Ok(Output { json: json!({ "code": out, "transforms": code.transforms }), table, exit: 0 })
}

fn catalog(name: Option<&str>) -> Result<Output, Failure> {
    let Some(name) = name else {
        let names = catalog_names();
        return Ok(Output { table: names.join("\n") + "\n", json: json!({ "entries": names }), exit: 0 });
    };
    let e = catalog_entry(name)?;
    let table = format!(
        "{}: (({}, {}, {})) {:?}\n{}\nedges: {:?}\n",
        e.name,
        e.n,
        e.dimension,
        e.d,
        e.kind,
        e.provenance,
        e.to_json().graph.edges
    );
    let json = json!({
        "name": e.name,
        "n": e.n,
        "K": e.dimension,
        "d": e.d,
        "kind": e.kind,
        "provenance": e.provenance,
        "verified": true,
        "code": e.to_json(),
    });
    Ok(Output { json, table, exit: 0 })
}
