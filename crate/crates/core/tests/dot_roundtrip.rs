mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use towerlab::correspondence::Correspondence;
use towerlab::fields::FieldSpec;
use towerlab::graph::{build_graph, census, export_dot};

#[derive(Debug, Default)]
struct Parsed {
    nodes: Vec<String>,
    clustered: BTreeSet<String>,
    edges: BTreeMap<(String, String), (bool, bool)>,
}

fn unquote(s: &str) -> String {
    s.trim().trim_matches('"').to_string()
}

fn parse(dot: &str) -> Parsed {
    let mut out = Parsed::default();
    let mut in_cluster = false;
    for line in dot.lines().map(str::trim) {
        if line.starts_with("subgraph cluster_singular_") {
            in_cluster = true;
        } else if line == "}" {
            in_cluster = false;
        } else if let Some((lhs, rhs)) = line.split_once(" -> ") {
            let (dst, attrs) = rhs.trim_end_matches(';').split_once(" [").unwrap_or((rhs.trim_end_matches(';'), ""));
            let dashed = attrs.contains("style=dashed");
            let red = attrs.contains("color=red");
            out.edges.insert((unquote(lhs), unquote(dst)), (dashed, red));
        } else if line.starts_with('"') {
            let name = unquote(line.trim_end_matches(';'));
            if in_cluster {
                out.clustered.insert(name.clone());
            }
            out.nodes.push(name);
        }
    }
    out
}

fn round_trip(corr: &Correspondence, r: u32, ambient: &FieldSpec, d: usize) {
    let g = build_graph(corr, r, ambient).unwrap();
    let c = census(&g, d);
    let dot = export_dot(&g, &c);
    let parsed = parse(&dot);
    let mut nodes = parsed.nodes.clone();
    nodes.sort();
    let mut expected: Vec<String> = (0..g.vertex_count()).map(|v| g.label(v)).collect();
    expected.sort();
    assert_eq!(nodes, expected);
    let singular: BTreeSet<String> = c.singular_vertices.iter().map(|&v| g.label(v)).collect();
    assert_eq!(parsed.clustered, singular);
    assert_eq!(parsed.edges.len(), g.edges().len());
    for e in g.edges() {
        let key = (g.label(e.src), g.label(e.dst));
        assert_eq!(parsed.edges[&key], (!e.flags.etale_pi2, !e.flags.etale_pi1));
    }
}

#[test]
fn bundled_towers_round_trip() {
    round_trip(&f5_tower(), 1, &field(5, 1), 2);
    round_trip(&f5_tower(), 2, &field(5, 2), 2);
    round_trip(&bgs(), 3, &field(3, 3), 3);
}
