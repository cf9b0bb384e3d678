//! Exhaustive sweeps over separated towers `f(x) = g(y)` of a fixed degree.
//!
//! Pairs are taken up to `(f, g) ~ (tau o f o sigma, tau o g o sigma)` with
//! `sigma`, `tau` affine over the base field. Both substitutions relabel the
//! graph at every level, so cores and their sizes are orbit invariants. Each
//! orbit is represented by its least pair in the ordering of [`RationalMap::key`].

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{failed, write_file, CliError, Outcome, RunReport, Status};
use crate::correspondence::{Correspondence, RationalMap};
use crate::fields::{make_field, FieldElement, FieldSpec, Polynomial};
use crate::graph::{build_graph, irreducibility_from_singular, regular_cores, singular_vertices, Irreducibility};

/// Without a budget only spaces this small are swept.
const FREE_ORDER: u64 = 9;
const FREE_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeOptions {
    pub p: u64,
    pub m: u32,
    pub degree: usize,
    pub rmax: u32,
    pub budget: Option<u64>,
}

fn poly_from_digits(field: &FieldSpec, mut idx: u64, len: usize) -> Polynomial {
    let q = field.order();
    let coeffs = (0..len)
        .map(|_| {
            let c = field.from_index(idx % q).expect("digit below the order");
            idx /= q;
            c
        })
        .collect();
    Polynomial::new(coeffs)
}

/// All rational maps of exact degree `d`, sorted by key.
pub fn maps_of_degree(field: &FieldSpec, d: usize) -> Vec<RationalMap> {
    let q = field.order();
    let mut out = Vec::new();
    for k in 0..=d {
        for den_idx in 0..q.pow(k as u32) {
            let mut den = poly_from_digits(field, den_idx, k).coeffs().to_vec();
            den.resize(k, field.zero());
            den.push(field.one());
            let den = Polynomial::new(den);
            for num_idx in 0..q.pow(d as u32 + 1) {
                let num = poly_from_digits(field, num_idx, d + 1);
                let Some(nd) = num.degree() else { continue };
                if nd.max(k) != d || num.gcd(field, &den).degree() != Some(0) {
                    continue;
                }
                let map = RationalMap::new(field, num, den.clone()).expect("coprime, nonconstant");
                out.push(map);
            }
        }
    }
    out.sort_by_key(RationalMap::key);
    out.dedup();
    out
}

fn affine_maps(field: &FieldSpec) -> Vec<(FieldElement, FieldElement)> {
    field
        .elements()
        .filter(|&a| a != field.zero())
        .flat_map(|a| field.elements().map(move |b| (a, b)))
        .collect()
}

struct Orbits<'a> {
    field: &'a FieldSpec,
    maps: &'a [RationalMap],
    ids: HashMap<(Vec<u32>, Vec<u32>), usize>,
    group: Vec<((FieldElement, FieldElement), (FieldElement, FieldElement))>,
    images: Vec<Option<Vec<usize>>>,
}

impl<'a> Orbits<'a> {
    fn new(field: &'a FieldSpec, maps: &'a [RationalMap]) -> Self {
        let affine = affine_maps(field);
        let group = affine
            .iter()
            .flat_map(|&s| affine.iter().map(move |&t| (s, t)))
            .collect();
        Orbits {
            field,
            maps,
            ids: maps.iter().enumerate().map(|(i, m)| (m.key(), i)).collect(),
            group,
            images: vec![None; maps.len()],
        }
    }

    /// Index of the image of map `i` under every group element, in group order.
    fn images(&mut self, i: usize) -> &[usize] {
        if self.images[i].is_none() {
            let row = self
                .group
                .iter()
                .map(|&(s, t)| {
                    let img = self.maps[i]
                        .conjugate_affine(self.field, s, t)
                        .expect("conjugates stay nonconstant");
                    self.ids[&img.key()]
                })
                .collect();
            self.images[i] = Some(row);
        }
        self.images[i].as_deref().expect("filled above")
    }
}

/// Orbit representatives `(i, j)` in increasing order, stopping after `limit`.
/// The flag reports whether the enumeration finished.
pub fn canonical_pairs(field: &FieldSpec, maps: &[RationalMap], limit: Option<usize>) -> (Vec<(usize, usize)>, bool) {
    let mut orbits = Orbits::new(field, maps);
    let mut out = Vec::new();
    for i in 0..maps.len() {
        let row = orbits.images(i).to_vec();
        if row.iter().any(|&k| k < i) {
            continue;
        }
        let stabilizer: Vec<usize> = (0..row.len()).filter(|&t| row[t] == i).collect();
        for j in 0..maps.len() {
            let imgs = orbits.images(j);
            if stabilizer.iter().all(|&t| imgs[t] >= j) {
                if limit.is_some_and(|l| out.len() == l) {
                    return (out, false);
                }
                out.push((i, j));
            }
        }
    }
    (out, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub r: u32,
    pub core_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub f: String,
    pub g: String,
    pub levels: Vec<LevelResult>,
    /// First level at which the single-loop certificate was found.
    pub irreducible_at: Option<u32>,
    /// Levels with more than one regular core, listed by vertex labels.
    pub violations: BTreeMap<u32, Vec<Vec<String>>>,
    pub skipped: Option<String>,
}

impl CandidateResult {
    pub fn has_core(&self) -> bool {
        self.levels.iter().any(|l| !l.core_sizes.is_empty())
    }
}

/// Builds the graphs of `f(x) = g(y)` at levels `1..=ambients.len()`, where
/// `ambients[r-1]` has degree `r` over the base.
pub fn evaluate_candidate(
    base: &FieldSpec,
    ambients: &[FieldSpec],
    f: &RationalMap,
    g: &RationalMap,
) -> Result<CandidateResult, CliError> {
    let mut res = CandidateResult {
        f: f.to_string(base),
        g: g.to_string(base),
        levels: Vec::new(),
        irreducible_at: None,
        violations: BTreeMap::new(),
        skipped: None,
    };
    let corr = match Correspondence::from_separated(base, f, g) {
        Ok(c) => c,
        Err(e) => {
            res.skipped = Some(e.to_string());
            return Ok(res);
        }
    };
    let d = f.degree().max(g.degree());
    for (k, ambient) in ambients.iter().enumerate() {
        let r = k as u32 + 1;
        let graph = build_graph(&corr, r, ambient).map_err(failed)?;
        let cores = regular_cores(&graph, d);
        if res.irreducible_at.is_none() {
            let sing = singular_vertices(&graph);
            if let Irreducibility::Irreducible(_) = irreducibility_from_singular(&graph, &sing) {
                res.irreducible_at = Some(r);
            }
        }
        if cores.len() > 1 {
            res.violations.insert(
                r,
                cores
                    .iter()
                    .map(|c| c.iter().map(|&v| graph.label(v)).collect())
                    .collect(),
            );
        }
        res.levels.push(LevelResult {
            r,
            core_sizes: cores.iter().map(Vec::len).collect(),
        });
    }
    Ok(res)
}

pub fn cmd_probe(opts: &ProbeOptions, out_dir: Option<&Path>) -> Result<Outcome, CliError> {
    if opts.degree < 2 {
        return Err(CliError::Hypothesis(format!(
            "degree {} is below 2",
            opts.degree
        )));
    }
    let base = make_field(opts.p, opts.m, None).map_err(|e| CliError::Argument(e.to_string()))?;
    if opts.budget.is_none() && (base.order() > FREE_ORDER || opts.degree > FREE_DEGREE) {
        return Err(CliError::Argument(format!(
            "search space over F_{} in degree {} needs --budget",
            base.order(),
            opts.degree
        )));
    }
    let inputs = json!({
        "p": opts.p,
        "m": opts.m,
        "degree": opts.degree,
        "rmax": opts.rmax,
        "budget": opts.budget,
        "normalization": "(f,g) ~ (tau o f o sigma, tau o g o sigma), sigma and tau affine over the base field",
    });
    let mut report = RunReport::new("probe", inputs);

    let (maps, pairs, complete) = if opts.budget == Some(0) {
        report.notes.push("budget 0: no candidates evaluated".into());
        (Vec::new(), Vec::new(), false)
    } else {
        let maps = maps_of_degree(&base, opts.degree);
        let limit = opts.budget.map(|b| usize::try_from(b).unwrap_or(usize::MAX));
        let (pairs, complete) = canonical_pairs(&base, &maps, limit);
        (maps, pairs, complete)
    };

    let ambients: Vec<FieldSpec> = (1..=opts.rmax)
        .map(|r| make_field(opts.p, opts.m * r, None))
        .collect::<Result<_, _>>()
        .map_err(failed)?;
    let results: Vec<CandidateResult> = pairs
        .par_iter()
        .map(|&(i, j)| evaluate_candidate(&base, &ambients, &maps[i], &maps[j]))
        .collect::<Result<_, _>>()?;

    let mut with_core = Vec::new();
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut irreducible_with_core = 0usize;
    for c in &results {
        if let Some(reason) = &c.skipped {
            skipped.push(json!({"f": c.f, "g": c.g, "reason": reason}));
            continue;
        }
        if !c.violations.is_empty() {
            violations.push(c);
        }
        if c.has_core() {
            for s in c.levels.iter().flat_map(|l| &l.core_sizes) {
                *histogram.entry(*s).or_default() += 1;
            }
            if c.irreducible_at.is_some() {
                irreducible_with_core += 1;
            }
            with_core.push(c);
        }
    }
    let certified_violations = violations.iter().filter(|c| c.irreducible_at.is_some()).count();
    report.results = json!({
        "field_order": base.order(),
        "maps_of_degree": maps.len(),
        "evaluated": results.len(),
        "complete": complete,
        "summary": {
            "with_core": with_core.len(),
            "with_core_irreducible": irreducible_with_core,
            "violations": violations.len(),
            "violations_irreducible": certified_violations,
            "core_size_histogram": histogram
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<_, _>>(),
        },
        "with_core": with_core,
        "violations": violations,
        "skipped": skipped,
    });
    if !violations.is_empty() && certified_violations == 0 {
        report.notes.push(
            "all candidates with several regular cores lack an irreducibility certificate".into(),
        );
    }

    let status = if certified_violations > 0 {
        Status::TheoremViolation(format!(
            "{certified_violations} certified candidates have several regular cores"
        ))
    } else if !complete && opts.budget != Some(0) {
        Status::BudgetExceeded(format!(
            "stopped after {} candidates; report is partial",
            results.len()
        ))
    } else {
        Status::Ok
    };
    let outcome = Outcome { report, status };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io {
            path: dir.to_path_buf(),
            message: e.to_string(),
        })?;
        write_file(&dir.join("probe.json"), &outcome.report.to_json())?;
    }
    Ok(outcome)
}
