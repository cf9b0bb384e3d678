//! Path and cycle counts against enumeration over an adjacency relation
//! computed by direct evaluation of the form at every pair of points.

mod common;

use common::*;
use num_bigint::BigUint;
use towerlab::correspondence::Correspondence;
use towerlab::fields::{enumerate_projective_line, FieldSpec, ProjPoint};
use towerlab::graph::{build_graph, count_cycles, count_paths, TowerGraph};

fn eval_adjacency(corr: &Correspondence, r: u32, ambient: &FieldSpec) -> Vec<Vec<bool>> {
    let local = corr.embed(ambient).unwrap();
    let pts: Vec<ProjPoint> = enumerate_projective_line(ambient, corr.field().order(), r).unwrap();
    pts.iter()
        .map(|&p| pts.iter().map(|&q| local.eval(p, q) == ambient.zero()).collect())
        .collect()
}

fn enumerate(adj: &[Vec<bool>], n: usize, closed: bool) -> u64 {
    fn go(adj: &[Vec<bool>], start: usize, v: usize, left: usize, closed: bool) -> u64 {
        if left == 0 {
            return u64::from(!closed || v == start);
        }
        (0..adj.len())
            .filter(|&w| adj[v][w])
            .map(|w| go(adj, start, w, left - 1, closed))
            .sum()
    }
    (0..adj.len()).map(|s| go(adj, s, s, n, closed)).sum()
}

fn check(corr: &Correspondence, r: u32, ambient: &FieldSpec) {
    let g: TowerGraph = build_graph(corr, r, ambient).unwrap();
    let adj = eval_adjacency(corr, r, ambient);
    let edges = adj.iter().flatten().filter(|&&b| b).count();
    assert_eq!(edges, g.edges().len());
    for e in g.edges() {
        assert!(adj[e.src][e.dst]);
    }
    for n in 0..=4 {
        assert_eq!(count_paths(&g, n), BigUint::from(enumerate(&adj, n, false)), "paths n={n}");
        if n >= 1 {
            assert_eq!(count_cycles(&g, n), BigUint::from(enumerate(&adj, n, true)), "cycles n={n}");
        }
    }
}

#[test]
fn bgs_levels_up_to_27() {
    check(&bgs(), 1, &field(3, 1));
    check(&bgs(), 2, &field(3, 2));
    check(&bgs(), 3, &field(3, 3));
}

#[test]
fn f5_levels() {
    check(&f5_tower(), 1, &field(5, 1));
    // level 1 read inside a larger ambient field
    check(&f5_tower(), 1, &field(5, 2));
}

#[test]
fn small_separated_towers() {
    let f = field(3, 1);
    for (fnum, fden, gnum, gden) in [
        (&[0, 0, 1][..], &[1][..], &[1, 0, 1][..], &[0, 1][..]),
        (&[1, 1, 1], &[0, 1], &[2, 0, 1], &[1, 1]),
        (&[0, 1, 1], &[1], &[0, 0, 1], &[1, 0, 1]),
    ] {
        let a = towerlab::correspondence::RationalMap::from_ints(&f, fnum, fden).unwrap();
        let b = towerlab::correspondence::RationalMap::from_ints(&f, gnum, gden).unwrap();
        let c = Correspondence::from_separated(&f, &a, &b).unwrap();
        check(&c, 1, &f);
        check(&c, 2, &field(3, 2));
        check(&c, 3, &field(3, 3));
    }
}
