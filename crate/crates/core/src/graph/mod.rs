//! Arithmetic graphs: vertices are the points of `P^1(F_{q^r})`, with an edge
//! `P -> Q` whenever `(P, Q)` lies on the correspondence.

mod census;
mod components;
mod count;
mod dot;
mod singular;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::correspondence::{Correspondence, CorrespondenceError, EdgeFlags};
use crate::fields::{enumerate_projective_line, FieldError, FieldSpec, ProjPoint};

pub use census::{
    census, completeness, irreducibility_from_singular, irreducibility_heuristic,
    perron_regular_components, regular_core, regular_cores, singular_vertices, Completeness, ComponentCensus, ComponentRecord, Irreducibility,
};
pub use components::{period, strong_components, weak_components};
pub use count::{
    closed_walks, count_cycles, count_paths, paths_of_length, spectral_radius,
};
pub use dot::export_dot;
pub use singular::{
    classify_path, cycle_multiplicity_ge2, jacobian_oracle, MultiplicityVerdict, PointKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("not a path on the correspondence: {0}")]
    InvalidPath(String),
    #[error("path of {0} points exceeds the oracle limit of 6")]
    PathTooLong(usize),
    #[error("fiber over {0} does not split in the ambient field")]
    AmbientTooSmall(String),
    #[error("found {} d-regular strongly connected components", .0.len())]
    MultipleRegularCores(Vec<Vec<String>>),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub flags: EdgeFlags,
}

/// The level-`r` arithmetic graph, living inside an ambient field that contains
/// `F_{q^r}` (`q` is the order of the correspondence's coefficient field).
#[derive(Debug, Clone)]
pub struct TowerGraph {
    level: u32,
    q: u64,
    ambient: FieldSpec,
    corr: Correspondence,
    vertices: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

pub fn build_graph(
    corr: &Correspondence,
    r: u32,
    ambient: &FieldSpec,
) -> Result<TowerGraph, GraphError> {
    let q = corr.field().order();
    let vertices = enumerate_projective_line(ambient, q, r)?;
    let local = corr.over(ambient)?.into_owned();
    let finite: Vec<_> = vertices.iter().filter_map(|v| v.finite()).collect();
    let index: HashMap<ProjPoint, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let per_vertex: Vec<Vec<Edge>> = vertices
        .par_iter()
        .enumerate()
        .map(|(src, &p)| {
            local
                .fiber_over(p)
                .roots_among(ambient, &finite)
                .into_iter()
                .map(|(qpt, mult)| Edge {
                    src,
                    dst: index[&qpt],
                    flags: EdgeFlags {
                        etale_pi1: mult == 1,
                        etale_pi2: local.fiber_under(qpt).multiplicity_at(ambient, p) == 1,
                    },
                })
                .collect()
        })
        .collect();
    let mut edges: Vec<Edge> = per_vertex.into_iter().flatten().collect();
    edges.sort_by_key(|e| (e.src, e.dst));
    Ok(TowerGraph::assemble(r, q, ambient.clone(), local, vertices, edges))
}

impl TowerGraph {
    fn assemble(
        level: u32,
        q: u64,
        ambient: FieldSpec,
        corr: Correspondence,
        vertices: Vec<ProjPoint>,
        edges: Vec<Edge>,
    ) -> Self {
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for e in &edges {
            out_adj[e.src].push(e.dst);
            in_adj[e.dst].push(e.src);
        }
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        TowerGraph {
            level,
            q,
            ambient,
            corr,
            vertices,
            index,
            edges,
            out_adj,
            in_adj,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Order of the field of definition of the correspondence.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ambient(&self) -> &FieldSpec {
        &self.ambient
    }

    /// The correspondence, with coefficients in the ambient field.
    pub fn correspondence(&self) -> &Correspondence {
        &self.corr
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, p: ProjPoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn edge(&self, src: usize, dst: usize) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&(src, dst), |e| (e.src, e.dst))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn label(&self, v: usize) -> String {
        self.vertices[v].label(&self.ambient)
    }

    /// Subgraph on `keep` (vertex indices), with indices renumbered in order.
    pub fn induced(&self, keep: &[usize]) -> TowerGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let renum: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    src: *renum.get(&e.src)?,
                    dst: *renum.get(&e.dst)?,
                    flags: e.flags,
                })
            })
            .collect();
        TowerGraph::assemble(
            self.level,
            self.q,
            self.ambient.clone(),
            self.corr.clone(),
            keep.iter().map(|&v| self.vertices[v]).collect(),
            edges,
        )
    }
}
