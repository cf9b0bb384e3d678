use std::fmt::Write;

use super::{ComponentCensus, TowerGraph};

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz rendering. Edges not étale for the second projection are dashed,
/// edges not étale for the first are red; components of the singular part are
/// drawn as clusters.
pub fn export_dot(g: &TowerGraph, census: &ComponentCensus) -> String {
    let mut out = String::new();
    writeln!(out, "digraph G{} {{", g.level()).unwrap();
    if g.vertex_count() > 0 {
        writeln!(out, "  node [shape=circle];").unwrap();
    }
    let mut clustered = vec![false; g.vertex_count()];
    for (k, comp) in census.components.iter().filter(|c| c.singular).enumerate() {
        writeln!(out, "  subgraph cluster_singular_{k} {{").unwrap();
        writeln!(out, "    style=dotted;").unwrap();
        for &v in &comp.vertices {
            clustered[v] = true;
            writeln!(out, "    {};", quoted(&g.label(v))).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for v in (0..g.vertex_count()).filter(|&v| !clustered[v]) {
        writeln!(out, "  {};", quoted(&g.label(v))).unwrap();
    }
    for e in g.edges() {
        let mut attrs = Vec::new();
        if !e.flags.etale_pi2 {
            attrs.push("style=dashed");
        }
        if !e.flags.etale_pi1 {
            attrs.push("color=red");
        }
        let suffix = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        writeln!(
            out,
            "  {} -> {}{};",
            quoted(&g.label(e.src)),
            quoted(&g.label(e.dst)),
            suffix
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
