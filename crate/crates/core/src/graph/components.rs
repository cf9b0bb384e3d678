use std::collections::{BTreeMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use num_integer::Integer;

use super::TowerGraph;

fn as_petgraph(g: &TowerGraph) -> DiGraph<(), ()> {
    let mut pg = DiGraph::with_capacity(g.vertex_count(), g.edges().len());
    for _ in 0..g.vertex_count() {
        pg.add_node(());
    }
    pg.extend_with_edges(g.edges().iter().map(|e| (e.src as u32, e.dst as u32)));
    pg
}

/// Sorts each component and orders them by smallest vertex.
fn canonical(mut comps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Weak components, each sorted, ordered by smallest vertex.
pub fn weak_components(g: &TowerGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        uf.union(e.src, e.dst);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_root.entry(uf.find(v)).or_default().push(v);
    }
    canonical(by_root.into_values().collect())
}

/// Strongly connected components, each sorted, ordered by smallest vertex.
pub fn strong_components(g: &TowerGraph) -> Vec<Vec<usize>> {
    canonical(
        tarjan_scc(&as_petgraph(g))
            .into_iter()
            .map(|c| c.into_iter().map(|v| v.index()).collect())
            .collect(),
    )
}

/// Period (gcd of cycle lengths) of a strongly connected vertex set, from BFS
/// levels: the gcd of `level(u) + 1 - level(v)` over internal edges `u -> v`.
/// `None` when the set carries no edge.
pub fn period(g: &TowerGraph, comp: &[usize]) -> Option<u64> {
    let inside = |v: usize| comp.binary_search(&v).is_ok();
    let mut level = vec![None::<i64>; g.vertex_count()];
    let start = *comp.first()?;
    level[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    let mut gcd = 0i64;
    let mut any_edge = false;
    while let Some(u) = queue.pop_front() {
        let lu = level[u].expect("visited");
        for &v in g.out_neighbors(u) {
            if !inside(v) {
                continue;
            }
            any_edge = true;
            match level[v] {
                None => {
                    level[v] = Some(lu + 1);
                    queue.push_back(v);
                }
                Some(lv) => gcd = gcd.gcd(&(lu + 1 - lv)),
            }
        }
    }
    any_edge.then_some(gcd.unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::build_graph;
    use super::*;

    #[test]
    fn f5_components() {
        let g = build_graph(&f5_tower(), 2, &field(5, 2)).unwrap();
        let mut sizes: Vec<usize> = weak_components(&g).iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![8, 6, 4, 4, 1, 1, 1, 1]);
        let sccs = strong_components(&g);
        assert_eq!(sccs.iter().map(Vec::len).sum::<usize>(), 26);
        assert_eq!(sccs.iter().map(Vec::len).max(), Some(8));
    }

    #[test]
    fn periods() {
        let g = build_graph(&f5_tower(), 2, &field(5, 2)).unwrap();
        let big = strong_components(&g).into_iter().find(|c| c.len() == 8).unwrap();
        assert_eq!(period(&g, &big), Some(1));
        let f7 = field(7, 1);
        let d = crate::correspondence::Correspondence::diagonal(&f7);
        let gd = build_graph(&d, 1, &f7).unwrap();
        assert_eq!(period(&gd, &[3]), Some(1));
    }
}
