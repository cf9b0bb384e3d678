use serde::Serialize;
use serde_json::{json, Value};

use super::components::{period, strong_components, weak_components};
use super::count::spectral_radius;
use super::{GraphError, TowerGraph};
use crate::fields::ProjPoint;

/// Below this many vertices the pruning result is cross-checked against the
/// spectral radii of the strong components.
const PERRON_CHECK_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    /// Sorted vertex indices of the weak component.
    pub vertices: Vec<usize>,
    pub strongly_connected: bool,
    /// Contains an edge that is not étale for one of the projections.
    pub singular: bool,
    /// Every vertex has in- and out-degree exactly `d`.
    pub d_regular: bool,
    /// Period one; `None` unless the component is strongly connected with an edge.
    pub primitive: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCensus {
    pub level: u32,
    pub d: usize,
    pub vertex_count: usize,
    pub components: Vec<ComponentRecord>,
    /// Every d-regular strongly connected component found; more than one is a
    /// counterexample to uniqueness and is kept as evidence.
    pub regular_cores: Vec<Vec<usize>>,
    pub singular_vertices: Vec<usize>,
    /// Agreement of the pruning and spectral routes, on small graphs.
    pub perron_agrees: Option<bool>,
}

impl ComponentCensus {
    /// The regular core, when it exists and is unique.
    pub fn regular_core(&self) -> Option<&[usize]> {
        match self.regular_cores.as_slice() {
            [core] => Some(core),
            _ => None,
        }
    }

    pub fn uniqueness_violated(&self) -> bool {
        self.regular_cores.len() > 1
    }

    pub fn to_json(&self, g: &TowerGraph) -> Value {
        let labels = |vs: &[usize]| vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>();
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "size": c.vertices.len(),
                    "strongly_connected": c.strongly_connected,
                    "d_regular": c.d_regular,
                    "primitive": c.primitive,
                    "singular": c.singular,
                })
            })
            .collect();
        let core = self
            .regular_core()
            .map(|c| json!({"size": c.len(), "vertices": labels(c)}));
        let mut out = json!({
            "level": self.level,
            "vertex_count": self.vertex_count,
            "components": components,
            "regular_core": core,
            "singular_vertices": labels(&self.singular_vertices),
        });
        if self.uniqueness_violated() {
            out["uniqueness_violation"] = json!(self
                .regular_cores
                .iter()
                .map(|c| labels(c))
                .collect::<Vec<_>>());
        }
        out
    }
}

fn degree_regular(g: &TowerGraph, vs: &[usize], d: usize) -> bool {
    vs.iter()
        .all(|&v| g.out_neighbors(v).len() == d && g.in_neighbors(v).len() == d)
}

/// Strong components that are `d`-regular, found by deleting vertices of in- or
/// out-degree below `d` until none remain and splitting the survivors.
fn pruned_cores(g: &TowerGraph, d: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut outd: Vec<usize> = (0..n).map(|v| g.out_neighbors(v).len()).collect();
    let mut ind: Vec<usize> = (0..n).map(|v| g.in_neighbors(v).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| outd[v] < d || ind[v] < d).collect();
    for &v in &queue {
        alive[v] = false;
    }
    while let Some(v) = queue.pop() {
        for &w in g.out_neighbors(v) {
            ind[w] -= 1;
            if alive[w] && ind[w] < d {
                alive[w] = false;
                queue.push(w);
            }
        }
        for &u in g.in_neighbors(v) {
            outd[u] -= 1;
            if alive[u] && outd[u] < d {
                alive[u] = false;
                queue.push(u);
            }
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if survivors.is_empty() {
        return Vec::new();
    }
    let sub = g.induced(&survivors);
    strong_components(&sub)
        .into_iter()
        .filter(|c| {
            c.iter().all(|&v| {
                let inside = |w: &usize| c.binary_search(w).is_ok();
                sub.out_neighbors(v).iter().filter(|w| inside(w)).count() == d
                    && sub.in_neighbors(v).iter().filter(|w| inside(w)).count() == d
            })
        })
        .map(|c| c.into_iter().map(|v| survivors[v]).collect())
        .collect()
}

/// Strong components whose adjacency matrix has spectral radius `d`, by power
/// iteration. With all degrees at most `d` these are exactly the `d`-regular ones.
pub fn perron_regular_components(g: &TowerGraph, d: usize) -> Vec<Vec<usize>> {
    strong_components(g)
        .into_iter()
        .filter(|c| {
            let sub = g.induced(c);
            !sub.edges().is_empty() && (spectral_radius(&sub) - d as f64).abs() < 1e-6
        })
        .collect()
}

/// Every `d`-regular strongly connected component, without the rest of the census.
pub fn regular_cores(g: &TowerGraph, d: usize) -> Vec<Vec<usize>> {
    pruned_cores(g, d)
}

/// Vertices of the weak components that carry a non-étale edge.
pub fn singular_vertices(g: &TowerGraph) -> Vec<usize> {
    let mut out: Vec<usize> = weak_components(g)
        .into_iter()
        .filter(|vs| {
            vs.iter().any(|&v| {
                g.out_neighbors(v)
                    .iter()
                    .any(|&w| !g.edge(v, w).expect("adjacent").flags.is_etale())
            })
        })
        .flatten()
        .collect();
    out.sort_unstable();
    out
}

/// The unique `d`-regular strongly connected component, if any.
pub fn regular_core(g: &TowerGraph, d: usize) -> Result<Option<Vec<usize>>, GraphError> {
    let mut cores = pruned_cores(g, d);
    match cores.len() {
        0 => Ok(None),
        1 => Ok(cores.pop()),
        _ => Err(GraphError::MultipleRegularCores(
            cores
                .iter()
                .map(|c| c.iter().map(|&v| g.label(v)).collect())
                .collect(),
        )),
    }
}

pub fn census(g: &TowerGraph, d: usize) -> ComponentCensus {
    let sccs = strong_components(g);
    let mut scc_of = vec![0usize; g.vertex_count()];
    for (k, c) in sccs.iter().enumerate() {
        for &v in c {
            scc_of[v] = k;
        }
    }
    let mut singular_vertices = Vec::new();
    let components: Vec<ComponentRecord> = weak_components(g)
        .into_iter()
        .map(|vs| {
            let strongly_connected = vs.iter().all(|&v| scc_of[v] == scc_of[vs[0]]);
            let singular = vs.iter().any(|&v| {
                g.out_neighbors(v)
                    .iter()
                    .any(|&w| !g.edge(v, w).expect("adjacent").flags.is_etale())
            });
            if singular {
                singular_vertices.extend_from_slice(&vs);
            }
            let primitive = if strongly_connected {
                period(g, &vs).map(|p| p == 1)
            } else {
                None
            };
            ComponentRecord {
                d_regular: degree_regular(g, &vs, d),
                vertices: vs,
                strongly_connected,
                singular,
                primitive,
            }
        })
        .collect();
    singular_vertices.sort_unstable();
    let regular_cores = pruned_cores(g, d);
    let perron_agrees = (g.vertex_count() < PERRON_CHECK_LIMIT)
        .then(|| perron_regular_components(g, d) == regular_cores);
    ComponentCensus {
        level: g.level(),
        d,
        vertex_count: g.vertex_count(),
        components,
        regular_cores,
        singular_vertices,
        perron_agrees,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub forward: bool,
    pub backward: bool,
    pub complete: bool,
}

/// Whether `s` contains all geometric out-neighbors (forward) and in-neighbors
/// (backward) of its points. Fibers are computed in the graph's ambient field and
/// must split there.
pub fn completeness(g: &TowerGraph, s: &[ProjPoint]) -> Result<Completeness, GraphError> {
    let corr = g.correspondence();
    let f = g.ambient();
    let (d1, d2) = corr.bidegree();
    let mut set = s.to_vec();
    set.sort_unstable();
    let contains = |p: &ProjPoint| set.binary_search(p).is_ok();
    let mut forward = true;
    let mut backward = true;
    for &p in &set {
        let outs = corr.fiber_over(p).roots(f);
        if outs.iter().map(|&(_, m)| m as usize).sum::<usize>() != d2 {
            return Err(GraphError::AmbientTooSmall(p.label(f)));
        }
        forward &= outs.iter().all(|(q, _)| contains(q));
        let ins = corr.fiber_under(p).roots(f);
        if ins.iter().map(|&(_, m)| m as usize).sum::<usize>() != d1 {
            return Err(GraphError::AmbientTooSmall(p.label(f)));
        }
        backward &= ins.iter().all(|(q, _)| contains(q));
    }
    Ok(Completeness {
        forward,
        backward,
        complete: forward && backward,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    /// Certified by the loop at this vertex.
    Irreducible(usize),
    Unknown,
}

/// Looks for a vertex of the singular part whose whole geometric fiber is a
/// single loop that is étale for the second projection.
pub fn irreducibility_heuristic(g: &TowerGraph, census: &ComponentCensus) -> Irreducibility {
    irreducibility_from_singular(g, &census.singular_vertices)
}

/// The heuristic on an explicit list of singular vertices.
pub fn irreducibility_from_singular(g: &TowerGraph, singular: &[usize]) -> Irreducibility {
    let corr = g.correspondence();
    let f = g.ambient();
    let (_, d2) = corr.bidegree();
    let candidates: Vec<_> = g.vertices().iter().filter_map(|v| v.finite()).collect();
    for &v in singular {
        let p = g.vertices()[v];
        // A fiber with a single geometric point is defined over the field of `p`,
        // so scanning the level's points suffices.
        let fiber = corr.fiber_over(p).roots_among(f, &candidates);
        if let [(q, m)] = fiber.as_slice() {
            if *q == p && *m as usize == d2 {
                if let Some(e) = g.edge(v, v) {
                    if e.flags.etale_pi2 {
                        return Irreducibility::Irreducible(v);
                    }
                }
            }
        }
    }
    Irreducibility::Unknown
}
