//! Smooth and singular points of the curves `C_n`, which correspond to paths
//! `(P_1, ..., P_n)` in the geometric graph.

use serde::Serialize;

use super::{GraphError, TowerGraph};
use crate::correspondence::{flags_local, Correspondence, EdgeFlags};
use crate::fields::{FieldElement, FieldSpec, ProjPoint};

const ORACLE_MAX_POINTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Smooth,
    Singular,
}

fn path_flags(corr: &Correspondence, path: &[ProjPoint]) -> Result<Vec<EdgeFlags>, GraphError> {
    if path.is_empty() {
        return Err(GraphError::InvalidPath("empty".into()));
    }
    path.windows(2)
        .map(|w| {
            flags_local(corr, w[0], w[1]).map_err(|_| {
                let f = corr.field();
                GraphError::InvalidPath(format!("{} -> {}", w[0].label(f), w[1].label(f)))
            })
        })
        .collect()
}

/// Singular iff some edge `i` is not étale for the second projection and some
/// later-or-equal edge `j >= i` is not étale for the first.
pub fn classify_path(g: &TowerGraph, path: &[ProjPoint]) -> Result<PointKind, GraphError> {
    let flags = path_flags(g.correspondence(), path)?;
    let mut seen_ramified_pi2 = false;
    for fl in flags {
        seen_ramified_pi2 |= !fl.etale_pi2;
        if seen_ramified_pi2 && !fl.etale_pi1 {
            return Ok(PointKind::Singular);
        }
    }
    Ok(PointKind::Smooth)
}

/// Rank of a dense matrix over the field, by Gaussian elimination.
fn rank(field: &FieldSpec, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != field.zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for i in 0..rows.len() {
            if i == r || rows[i][col] == field.zero() {
                continue;
            }
            let factor = field.mul(rows[i][col], inv);
            for k in col..ncols {
                let t = field.mul(factor, rows[r][k]);
                rows[i][k] = field.sub(rows[i][k], t);
            }
        }
        r += 1;
    }
    r
}

/// Jacobian criterion: the `(n-1) x n` matrix of chart-local partials of the
/// equations `F(x_i, x_{i+1}) = 0` has rank `n - 1` exactly at smooth points.
pub fn jacobian_oracle(
    corr: &Correspondence,
    path: &[ProjPoint],
    ambient: &FieldSpec,
) -> Result<PointKind, GraphError> {
    if path.len() > ORACLE_MAX_POINTS {
        return Err(GraphError::PathTooLong(path.len()));
    }
    let local = corr.over(ambient)?;
    path_flags(&local, path)?;
    let n = path.len();
    let rows: Vec<Vec<FieldElement>> = (0..n.saturating_sub(1))
        .map(|i| {
            let (a, b) = local.local_partials(path[i], path[i + 1]);
            let mut row = vec![ambient.zero(); n];
            row[i] = a;
            row[i + 1] = b;
            row
        })
        .collect();
    Ok(if rank(ambient, rows) < n - 1 {
        PointKind::Singular
    } else {
        PointKind::Smooth
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityVerdict {
    /// The cycle is a singular point of `C_n`; multiplicity is at least two.
    SingularPoint,
    /// `(-1)^l prod a_i = prod b_i` holds.
    IdentityHolds,
    IdentityFails,
}

impl MultiplicityVerdict {
    pub fn ge2(self) -> bool {
        !matches!(self, MultiplicityVerdict::IdentityFails)
    }
}

/// For a closed path `P_1 -> ... -> P_l -> P_1` (given with the first point
/// repeated at the end), tests whether the corresponding point meets the
/// diagonal with multiplicity at least two, via the product of chart-local
/// partials `a_i = dF/dx`, `b_i = dF/dy` along the cycle.
pub fn cycle_multiplicity_ge2(
    corr: &Correspondence,
    cycle: &[ProjPoint],
    ambient: &FieldSpec,
) -> Result<MultiplicityVerdict, GraphError> {
    if cycle.len() < 2 || cycle.first() != cycle.last() {
        return Err(GraphError::InvalidPath("cycle must be closed".into()));
    }
    let local = corr.over(ambient)?;
    let flags = path_flags(&local, cycle)?;
    let mut pending_pi2 = false;
    for fl in &flags {
        pending_pi2 |= !fl.etale_pi2;
        if pending_pi2 && !fl.etale_pi1 {
            return Ok(MultiplicityVerdict::SingularPoint);
        }
    }
    let f = ambient;
    let (mut lhs, mut rhs) = (f.one(), f.one());
    for w in cycle.windows(2) {
        let (a, b) = local.local_partials(w[0], w[1]);
        lhs = f.mul(lhs, a);
        rhs = f.mul(rhs, b);
    }
    if flags.len() % 2 == 1 {
        lhs = f.neg(lhs);
    }
    Ok(if lhs == rhs {
        MultiplicityVerdict::IdentityHolds
    } else {
        MultiplicityVerdict::IdentityFails
    })
}
