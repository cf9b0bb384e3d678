use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::components::strong_components;
use super::TowerGraph;

const POWER_TOL: f64 = 1e-9;
const POWER_MAX_ITER: usize = 10_000;

/// `A v` for the adjacency matrix `A`.
fn apply(g: &TowerGraph, v: &[BigUint]) -> Vec<BigUint> {
    (0..g.vertex_count())
        .map(|u| {
            g.out_neighbors(u)
                .iter()
                .fold(BigUint::zero(), |acc, &w| acc + &v[w])
        })
        .collect()
}

/// Sum of the entries of `A^n`: the number of paths with `n` edges.
pub fn count_paths(g: &TowerGraph, n: usize) -> BigUint {
    let mut v = vec![BigUint::one(); g.vertex_count()];
    for _ in 0..n {
        v = apply(g, &v);
    }
    v.into_iter().sum()
}

/// Trace of `A^n`: the number of closed walks of length `n` with a marked start.
pub fn count_cycles(g: &TowerGraph, n: usize) -> BigUint {
    assert!(n >= 1, "cycles have at least one edge");
    let mut total = BigUint::zero();
    // Closed walks stay inside one strong component.
    for comp in strong_components(g) {
        let sub = g.induced(&comp);
        if sub.edges().is_empty() {
            continue;
        }
        let k = sub.vertex_count();
        for start in 0..k {
            let mut v = vec![BigUint::zero(); k];
            v[start] = BigUint::one();
            for _ in 0..n {
                v = apply(&sub, &v);
            }
            total += &v[start];
        }
    }
    total
}

/// Power-iteration estimate of the spectral radius, run on `A + I` so that
/// periodic components converge. Advisory only.
pub fn spectral_radius(g: &TowerGraph) -> f64 {
    let n = g.vertex_count();
    if n == 0 || g.edges().is_empty() {
        return 0.0;
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut estimate = 0.0;
    for _ in 0..POWER_MAX_ITER {
        let y: Vec<f64> = (0..n)
            .map(|u| x[u] + g.out_neighbors(u).iter().map(|&w| x[w]).sum::<f64>())
            .collect();
        let norm: f64 = y.iter().sum();
        let next = norm - 1.0;
        x = y.into_iter().map(|v| v / norm).collect();
        let done = (next - estimate).abs() <= POWER_TOL * next.abs().max(1.0);
        estimate = next;
        if done {
            break;
        }
    }
    estimate.max(0.0)
}

/// All paths with `len` edges, as vertex sequences, in lexicographic order.
pub fn paths_of_length(g: &TowerGraph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).rev().map(|v| vec![v]).collect();
    while let Some(path) = stack.pop() {
        if path.len() == len + 1 {
            out.push(path);
            continue;
        }
        let last = *path.last().expect("nonempty path");
        for &w in g.out_neighbors(last).iter().rev() {
            let mut next = path.clone();
            next.push(w);
            stack.push(next);
        }
    }
    out
}

/// Closed walks of length `n`, one per rotation class, as `v_0 .. v_{n-1}` with
/// `v_{n-1} -> v_0`; each is listed in its lexicographically least rotation.
pub fn closed_walks(g: &TowerGraph, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for comp in strong_components(g) {
        let inside = |v: usize| comp.binary_search(&v).is_ok();
        for &start in &comp {
            let mut stack = vec![vec![start]];
            while let Some(walk) = stack.pop() {
                let last = *walk.last().expect("nonempty walk");
                if walk.len() == n {
                    if g.edge(last, start).is_some() && is_least_rotation(&walk) {
                        out.push(walk);
                    }
                    continue;
                }
                for &w in g.out_neighbors(last) {
                    // the start is the minimum of a least rotation
                    if inside(w) && w >= start {
                        let mut next = walk.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn is_least_rotation(w: &[usize]) -> bool {
    (1..w.len()).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}
