use std::fs;
use std::io::Read;
use std::path::Path;

use qgraph::catalog::{catalog_entry, edges_to_graph, CodeJson};
use qgraph::graph::{from_graph6, EdgeList, Family, Graph};
use qgraph::stabilizer::{CheckMatrix, SymplecticRow};
use qgraph::VertexSet;
use serde::Deserialize;

use crate::Failure;

fn read_source(src: &str) -> Result<String, Failure> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(src).map_err(|e| Failure::Input(format!("{src}: {e}")))
}

/// `g6:<graph6>`, `family:<loop|star|complete|empty>:<n>`, or a JSON file holding an
/// edge list `{"n", "edges"}` or a code.
pub fn parse_graph(src: &str) -> Result<Graph, Failure> {
    if let Some(g6) = src.strip_prefix("g6:") {
        return Ok(from_graph6(g6)?);
    }
    if let Some(rest) = src.strip_prefix("family:") {
        let (kind, n) = rest.split_once(':').ok_or_else(|| Failure::Input(format!("expected family:<kind>:<n>, got {src:?}")))?;
        let kind: Family = kind.parse()?;
        let n: usize = n.parse().map_err(|_| Failure::Input(format!("bad vertex count {n:?}")))?;
        return Ok(Graph::family(kind, n)?);
    }
    let text = read_source(src)?;
    if let Ok(list) = serde_json::from_str::<EdgeList>(&text) {
        return Ok(Graph::try_from(&list)?);
    }
    let code: CodeJson = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{src}: {e}")))?;
    Ok(edges_to_graph(code.n, &code.graph)?)
}

/// A code as raw parts, not yet validated against the conditions.
pub struct RawCode {
    pub name: String,
    pub graph: Graph,
    pub d: usize,
    pub members: Vec<VertexSet>,
    pub generators: Option<Vec<VertexSet>>,
}

/// `catalog:<name>`, a JSON code file, or `-` for stdin.
pub fn parse_code(src: &str) -> Result<RawCode, Failure> {
    let json = match src.strip_prefix("catalog:") {
        Some(name) => catalog_entry(name)?.to_json(),
        None => {
            let text = read_source(src)?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{src}: {e}")))?
        }
    };
    let graph = edges_to_graph(json.n, &json.graph)?;
    let sets = |lists: &[Vec<usize>]| lists.iter().map(|l| VertexSet::from_labels(json.n, l)).collect::<qgraph::Result<Vec<_>>>();
    let members = sets(&json.clique)?;
    let generators = json.generators.as_deref().map(sets).transpose()?;
    Ok(RawCode { name: json.name, graph, d: json.d, members, generators })
}

#[derive(Deserialize)]
struct StabilizerJson {
    n: usize,
    rows: Vec<SymplecticRow>,
}

/// Generators as text (`XZZXI,IXZZX,...` or one per line), a text file, or a JSON file
/// `{"n", "rows": [{"sign", "x", "z"}]}`.
pub fn parse_stabilizer(src: &str) -> Result<CheckMatrix, Failure> {
    let text = if src == "-" || Path::new(src).is_file() { read_source(src)? } else { src.to_string() };
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let s: StabilizerJson = serde_json::from_str(trimmed).map_err(|e| Failure::Input(format!("{src}: {e}")))?;
        return Ok(CheckMatrix::from_json_rows(s.n, &s.rows)?);
    }
    Ok(CheckMatrix::parse_text(&text)?)
}
