//! Summaries and DOT, JSON and CSV renderings of a [`PachnerGraph`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::explorer::{ClassifiedNode, PachnerGraph};
use crate::volume::{format_volume, round_volume};

/// Class label used in every output format.
pub fn class_label(node: &ClassifiedNode) -> String {
    node.classification
        .map_or_else(|| "degenerate".to_string(), |c| c.to_string())
}

/// Node counts keyed by (tetrahedra, class label).
pub fn summary_counts(graph: &PachnerGraph) -> BTreeMap<(usize, String), usize> {
    let mut out = BTreeMap::new();
    for node in &graph.nodes {
        *out.entry((node.tet_count, class_label(node))).or_default() += 1;
    }
    out
}

/// Plain-text table of [`summary_counts`].
pub fn summary_table(graph: &PachnerGraph) -> String {
    let mut s = format!("{:>5}  {:<20}  {:>5}\n", "tets", "class", "count");
    for ((tets, class), count) in summary_counts(graph) {
        let _ = writeln!(s, "{tets:>5}  {class:<20}  {count:>5}");
    }
    let _ = writeln!(
        s,
        "nodes: {}  arcs: {}",
        graph.nodes.len(),
        graph.edges.values().sum::<usize>()
    );
    if !graph.shape_conflicts.is_empty() {
        let _ = writeln!(s, "shape conflicts: {}", graph.shape_conflicts.len());
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph with one line per arc, so multiplicities show as parallel arcs.
pub fn to_dot(graph: &PachnerGraph) -> String {
    let mut s = String::from("digraph pachner {\n  node [shape=box];\n");
    for (i, node) in graph.nodes.iter().enumerate() {
        let style = match node.letter() {
            'G' => "solid",
            'N' => "dashed",
            'F' => "dotted",
            _ => "bold",
        };
        let _ = writeln!(
            s,
            "  n{i} [label=\"{}\\n{}\\nn={}\", style={style}];",
            dot_escape(&node.name),
            class_label(node),
            node.tet_count
        );
    }
    for (&(src, tgt, kind), &m) in &graph.edges {
        for _ in 0..m {
            let _ = writeln!(s, "  n{src} -> n{tgt} [label=\"{}\"];", kind.as_str());
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonNode<'a> {
    name: &'a str,
    signature: String,
    tets: usize,
    classification: String,
    depth: usize,
    expanded: bool,
    shape_multiset: Vec<String>,
    volume: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonEdge<'a> {
    from: String,
    to: String,
    from_name: &'a str,
    to_name: &'a str,
    kind: &'static str,
    multiplicity: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonGraph<'a> {
    nodes: Vec<JsonNode<'a>>,
    edges: Vec<JsonEdge<'a>>,
    seed_volume: Option<f64>,
}

/// `{ "nodes": [...], "edges": [...], "seedVolume": ... }`, pretty-printed.
pub fn to_json(graph: &PachnerGraph) -> String {
    let nodes = graph
        .nodes
        .iter()
        .map(|n| JsonNode {
            name: &n.name,
            signature: n.signature.to_base36(),
            tets: n.tet_count,
            classification: class_label(n),
            depth: n.depth,
            expanded: n.expanded,
            shape_multiset: n.shape_multiset.iter().map(ToString::to_string).collect(),
            volume: n.volume.map(round_volume),
        })
        .collect();
    let edges = graph
        .edges
        .iter()
        .map(|(&(s, t, kind), &m)| JsonEdge {
            from: graph.nodes[s].signature.to_base36(),
            to: graph.nodes[t].signature.to_base36(),
            from_name: &graph.nodes[s].name,
            to_name: &graph.nodes[t].name,
            kind: kind.as_str(),
            multiplicity: m,
        })
        .collect();
    let doc = JsonGraph {
        nodes,
        edges,
        seed_volume: graph.seed().and_then(|n| n.volume).map(round_volume),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// One row per node: name, signature, tets, class, depth, volume.
pub fn to_csv(graph: &PachnerGraph) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "name",
        "signature",
        "tets",
        "classification",
        "depth",
        "volume",
    ];
    w.write_record(header).expect("in-memory write");
    for n in &graph.nodes {
        w.write_record([
            n.name.clone(),
            n.signature.to_base36(),
            n.tet_count.to_string(),
            class_label(n),
            n.depth.to_string(),
            n.volume.map(format_volume).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
