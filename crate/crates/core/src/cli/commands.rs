use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{failed, CliError, Outcome, RunReport, Status, Tower};
use crate::fields::ProjPoint;
use crate::graph::{
    build_graph, census, closed_walks, completeness, count_cycles, cycle_multiplicity_ge2,
    export_dot, irreducibility_heuristic, ComponentCensus, Irreducibility, TowerGraph,
};
use crate::invariants::{
    cycle_count_upper_bound, deficiency, format_rational, genus_table, geometric_genus,
    lambda_beta_from_core, sing_or_etale_flag, zeta_from_betas, GenusInputs, InvariantError,
};

const DEFAULT_LEVELS: [u32; 3] = [1, 2, 3];
const DEFAULT_GENUS_ROWS: usize = 6;
const CYCLE_EXAMPLES: usize = 10;

const UNEQUAL_NOTE: &str = "bidegree (d1,d2) with d1 != d2: lambda_r = 0 for every r";

fn tower_inputs(t: &Tower, spec: Value) -> Value {
    let f = &t.field;
    let (d1, d2) = t.corr.bidegree();
    let maps = t.maps.as_ref().map(|(mf, mg)| {
        json!({"f": mf.to_string(f), "g": mg.to_string(f)})
    });
    json!({
        "spec": spec,
        "field": {"p": f.p(), "m": f.m(), "modulus": f.modulus()},
        "bidegree": [d1, d2],
        "correspondence": t.corr.to_string(),
        "maps": maps,
    })
}

fn base_notes(t: &Tower) -> Vec<String> {
    let (d1, d2) = t.corr.bidegree();
    if d1 != d2 {
        vec![UNEQUAL_NOTE.to_string()]
    } else {
        Vec::new()
    }
}

fn type_degree(t: &Tower) -> usize {
    let (d1, d2) = t.corr.bidegree();
    d1.max(d2)
}

fn graph_for(t: &Tower, r: u32) -> Result<TowerGraph, CliError> {
    let ambient = t.ambient_for(r)?;
    build_graph(&t.corr, r, &ambient).map_err(failed)
}

fn labels(g: &TowerGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v)).collect()
}

fn violation_message(g: &TowerGraph, c: &ComponentCensus) -> String {
    format!(
        "level {}: {} regular strongly connected components {:?}",
        g.level(),
        c.regular_cores.len(),
        c.regular_cores.iter().map(|k| labels(g, k)).collect::<Vec<_>>()
    )
}

pub struct CensusArtifacts {
    pub dot: String,
}

pub fn cmd_census(t: &Tower, r: u32, spec: Value) -> Result<(Outcome, CensusArtifacts), CliError> {
    let g = graph_for(t, r)?;
    let d = type_degree(t);
    let c = census(&g, d);
    let mut inputs = tower_inputs(t, spec);
    inputs["level"] = json!(r);
    let mut report = RunReport::new("census", inputs);
    report.notes = base_notes(t);

    let core_completeness = c.regular_core().map(|core| {
        let pts: Vec<ProjPoint> = core.iter().map(|&v| g.vertices()[v]).collect();
        match completeness(&g, &pts) {
            Ok(x) => json!(x),
            Err(e) => json!({"error": e.to_string()}),
        }
    });
    let irreducibility = irreducibility_heuristic(&g, &c);
    let (irreducible, certificate) = match irreducibility {
        Irreducibility::Irreducible(v) => (true, Some(g.label(v))),
        Irreducibility::Unknown => {
            report
                .notes
                .push("no single-loop fiber in the singular part; irreducibility assumed".into());
            (false, None)
        }
    };
    if c.perron_agrees == Some(false) {
        report
            .notes
            .push("spectral cross-check disagrees with degree pruning".into());
    }
    report.results = json!({
        "census": c.to_json(&g),
        "d": d,
        "edge_count": g.edges().len(),
        "core_size": c.regular_core().map(<[usize]>::len),
        "core_completeness": core_completeness,
        "irreducible": irreducible,
        "irreducibility": {
            "status": if irreducible { "irreducible" } else { "assumed" },
            "certificate": certificate,
        },
        "perron_agrees": c.perron_agrees,
        "flags": {"sing_or_etale": sing_or_etale_flag(&c, &t.corr)},
    });
    let status = if c.uniqueness_violated() {
        Status::TheoremViolation(violation_message(&g, &c))
    } else {
        Status::Ok
    };
    let dot = export_dot(&g, &c);
    Ok((Outcome { report, status }, CensusArtifacts { dot }))
}

/// Smallest `k >= 1` such that rotating `w` by `k` gives `w` back.
fn rotation_period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&k| n % k == 0 && w[k % n..].iter().chain(&w[..k % n]).eq(w.iter()))
        .unwrap_or(n)
}

/// Returns the outcome and the CSV table.
pub fn cmd_cycles(t: &Tower, r: u32, n_max: usize, spec: Value) -> Result<(Outcome, String), CliError> {
    let g = graph_for(t, r)?;
    let d = type_degree(t) as u32;
    let mut inputs = tower_inputs(t, spec);
    inputs["level"] = json!(r);
    inputs["nmax"] = json!(n_max);
    let mut report = RunReport::new("cycles", inputs);
    report.notes = base_notes(t);

    let rows: Vec<Result<(Value, Option<String>), CliError>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let count = count_cycles(&g, n);
            let bound = cycle_count_upper_bound(d, n as u32);
            let mut flagged = 0usize;
            let mut examples = Vec::new();
            for w in closed_walks(&g, n) {
                let mut pts: Vec<ProjPoint> = w.iter().map(|&v| g.vertices()[v]).collect();
                pts.push(pts[0]);
                let verdict =
                    cycle_multiplicity_ge2(g.correspondence(), &pts, g.ambient()).map_err(failed)?;
                if verdict.ge2() {
                    flagged += rotation_period(&w);
                    if examples.len() < CYCLE_EXAMPLES {
                        examples.push(json!({"cycle": labels(&g, &w), "reason": verdict}));
                    }
                }
            }
            let within = count <= bound;
            let slack = within.then(|| (&bound - &count).to_string());
            let violation = (!within).then(|| format!("n = {n}: {count} cycles exceed {bound}"));
            Ok((
                json!({
                    "n": n,
                    "count_cycles": count.to_string(),
                    "bound": bound.to_string(),
                    "slack": slack,
                    "within_bound": within,
                    "flagged": flagged,
                    "flagged_examples": examples,
                }),
                violation,
            ))
        })
        .collect();

    let mut table = Vec::new();
    let mut violations = Vec::new();
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["n", "count_cycles", "bound", "slack", "flagged"])
        .map_err(failed)?;
    for row in rows {
        let (row, violation) = row?;
        let field = |k: &str| match &row[k] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        csv.write_record([
            field("n"),
            field("count_cycles"),
            field("bound"),
            field("slack"),
            field("flagged"),
        ])
        .map_err(failed)?;
        table.push(row);
        violations.extend(violation);
    }
    let csv = String::from_utf8(csv.into_inner().map_err(failed)?).map_err(failed)?;
    report.results = json!({"level": r, "d": d, "rows": table});
    if n_max > 0 {
        report.notes.push(
            "flagged counts closed walks meeting the diagonal with multiplicity at least 2; each such walk uses up bound slack".into(),
        );
    }
    let status = if violations.is_empty() {
        Status::Ok
    } else {
        Status::TheoremViolation(violations.join("; "))
    };
    Ok((Outcome { report, status }, csv))
}

fn genus_inputs(t: &Tower, rows_wanted: usize, notes: &mut Vec<String>) -> GenusInputs {
    let d = type_degree(t) as u32;
    let gamma2 = t.corr.arithmetic_genus();
    let deltas = match &t.options.deltas {
        Some(ds) => ds.clone(),
        None => {
            notes.push("deltas not supplied; assumed zero".into());
            vec![0; rows_wanted.saturating_sub(1)]
        }
    };
    GenusInputs::new(gamma2, 0, d, &deltas)
}

fn genus_section(inputs: &GenusInputs, n_max: usize, notes: &mut Vec<String>) -> Result<Value, CliError> {
    let rows = genus_table(inputs, n_max);
    if rows.len() < n_max {
        notes.push(format!(
            "deltas cover n <= {} only; table truncated",
            rows.len()
        ));
    }
    let mut agrees = true;
    for row in &rows {
        let closed = geometric_genus(inputs, row.n).map_err(failed)?;
        agrees &= closed.to_string() == row.g;
    }
    Ok(json!({
        "gamma2": inputs.gamma2.to_string(),
        "g1": inputs.g1.to_string(),
        "d": inputs.d,
        "deltas": inputs.deltas.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "genus": rows,
        "closed_form_agrees": agrees,
    }))
}

pub fn cmd_genus(t: &Tower, n_max: usize, spec: Value) -> Result<Outcome, CliError> {
    let mut inputs = tower_inputs(t, spec);
    inputs["nmax"] = json!(n_max);
    let mut report = RunReport::new("genus", inputs);
    report.notes = base_notes(t);
    let gi = genus_inputs(t, n_max, &mut report.notes);
    report.results = genus_section(&gi, n_max, &mut report.notes)?;
    Ok(Outcome::ok(report))
}

fn rational_map(m: &BTreeMap<u32, BigRational>) -> Value {
    json!(m
        .iter()
        .map(|(r, x)| (r.to_string(), format_rational(x)))
        .collect::<BTreeMap<_, _>>())
}

/// Least common multiple of the degrees of the core points over the base field.
fn core_field_level(g: &TowerGraph, core: &[usize]) -> Result<u32, CliError> {
    core.iter().try_fold(1u32, |acc, &v| {
        let deg = g.vertices()[v].degree(g.ambient(), g.q()).map_err(failed)?;
        Ok(acc.lcm(&deg))
    })
}

pub fn cmd_invariants(t: &Tower, ell: Option<(i64, i64)>, spec: Value) -> Result<Outcome, CliError> {
    let mut levels = t.options.levels.clone().unwrap_or_else(|| DEFAULT_LEVELS.to_vec());
    levels.sort_unstable();
    levels.dedup();
    let ell = ell.or(t.options.ell);

    let mut inputs = tower_inputs(t, spec);
    inputs["levels"] = json!(levels);
    inputs["ell"] = json!(ell.map(|(n, d)| format!("{n}/{d}")));
    let mut report = RunReport::new("invariants", inputs);
    report.notes = base_notes(t);
    let d = type_degree(t);

    let censuses: Vec<Result<(TowerGraph, ComponentCensus), CliError>> = levels
        .par_iter()
        .map(|&r| {
            let g = graph_for(t, r)?;
            let c = census(&g, d);
            Ok((g, c))
        })
        .collect();
    let mut violations = Vec::new();
    let mut core = None;
    let mut last_census = None;
    for item in censuses {
        let (g, c) = item?;
        if c.uniqueness_violated() {
            violations.push(violation_message(&g, &c));
        }
        if core.is_none() {
            if let Some(k) = c.regular_core() {
                core = Some((core_field_level(&g, k)?, k.len() as u64, g.level()));
            }
        }
        last_census = Some(c);
    }

    let mut results = serde_json::Map::new();
    let rows_wanted = t
        .options
        .deltas
        .as_ref()
        .map_or(DEFAULT_GENUS_ROWS, |ds| ds.len() + 1);
    let gi = genus_inputs(t, rows_wanted, &mut report.notes);
    let genus = genus_section(&gi, rows_wanted, &mut report.notes)?;
    results.insert("genus".into(), genus["genus"].clone());
    results.insert("genus_inputs".into(), {
        let mut g = genus.clone();
        g.as_object_mut().expect("object").remove("genus");
        g
    });
    results.insert(
        "core".into(),
        json!(core.map(|(r0, size, found)| json!({"r0": r0, "size": size, "found_at_level": found}))),
    );
    if let Some(c) = &last_census {
        results.insert(
            "flags".into(),
            json!({"sing_or_etale": sing_or_etale_flag(c, &t.corr)}),
        );
    }

    let (d1, d2) = t.corr.bidegree();
    match (core, ell) {
        _ if d1 != d2 => {}
        (None, _) => report
            .notes
            .push("no regular core at the listed levels; lambda and beta omitted".into()),
        (_, None) => report
            .notes
            .push("ell not supplied; lambda and beta omitted".into()),
        (Some((r0, size, _)), Some((n, den))) => {
            let ell = BigRational::new(n.into(), den.into());
            let r_max = levels.last().copied().unwrap_or(r0).max(r0);
            let inv = lambda_beta_from_core(size, r0, &ell, r_max);
            results.insert("ell".into(), json!(format_rational(&ell)));
            results.insert("lambda".into(), rational_map(&inv.lambda));
            results.insert("beta".into(), rational_map(&inv.beta));
            results.insert("consistent".into(), json!(inv.is_consistent()));
            match deficiency(&inv.beta, t.field.order()) {
                Ok(delta) => {
                    results.insert("deficiency".into(), json!(delta));
                }
                Err(InvariantError::NegativeDeficiency(x)) => {
                    results.insert("deficiency".into(), json!(x));
                    violations.push(format!("deficiency {x} is negative"));
                }
                Err(e) => return Err(failed(e)),
            }
            match zeta_from_betas(&inv.beta) {
                Ok(z) => {
                    results.insert("zeta".into(), json!(z));
                }
                Err(e) => report.notes.push(format!("zeta omitted: {e}")),
            }
        }
    }
    report.results = Value::Object(results);
    let status = if violations.is_empty() {
        Status::Ok
    } else {
        Status::TheoremViolation(violations.join("; "))
    };
    Ok(Outcome { report, status })
}
