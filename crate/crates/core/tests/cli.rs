mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::example;
use serde_json::Value;

fn towerlab(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_towerlab"));
    cmd.args(args).env_remove("TOWERLAB_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn spec(name: &str) -> String {
    example(name).display().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn census_of_bundled_towers() {
    let out = towerlab(&["census", "--spec", &spec("f5_tame.tower"), "--level", "2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let mut sizes: Vec<u64> = r["results"]["census"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(sizes, vec![8, 6, 4, 4, 1, 1, 1, 1]);
    assert_eq!(r["results"]["core_size"], 8);

    let out = towerlab(&["census", "--spec", &spec("bgs_q3.tower"), "--level", "3"], &[]);
    let r = json_of(&out);
    assert_eq!(r["results"]["core_size"], 12);
    assert_eq!(r["results"]["irreducible"], true);
    assert_eq!(r["results"]["irreducibility"]["certificate"], "0");
    assert_eq!(r["results"]["core_completeness"]["complete"], true);

    let out = towerlab(&["census", "--spec", &spec("bgs_q3.tower"), "--level", "1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["core_size"], Value::Null);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["census", "--spec", &spec("bgs_q3.tower"), "--level", "3"];
    let a = towerlab(&args, &[]);
    let b = towerlab(&args, &[("TOWERLAB_THREADS", "1")]);
    let c = towerlab(&args, &[("TOWERLAB_THREADS", "3")]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let args = ["invariants", "--spec", &spec("bgs_q3.tower")];
    assert_eq!(towerlab(&args, &[]).stdout, towerlab(&args, &[]).stdout);
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let json = dir.path().join("r.json");
    let out = towerlab(
        &[
            "census", "--spec", &spec("f5_tame.tower"), "--level", "2",
            "--dot", dot.to_str().unwrap(), "--json", json.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph G2 {\n"));
    assert_eq!(fs::read(&json).unwrap(), out.stdout);

    let csv = dir.path().join("c.csv");
    let out = towerlab(
        &["cycles", "--spec", &spec("f5_tame.tower"), "--level", "2", "--nmax", "6", "--csv", csv.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        vec!["n", "count_cycles", "bound", "slack", "flagged"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        let count: u64 = row[1].parse().unwrap();
        let bound: u64 = row[2].parse().unwrap();
        assert!(count <= bound);
        assert_eq!(row[3].parse::<u64>().unwrap(), bound - count);
    }

    let out = towerlab(
        &["cycles", "--spec", &spec("f5_tame.tower"), "--level", "1", "--nmax", "0", "--csv", csv.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&csv).unwrap(), "n,count_cycles,bound,slack,flagged\n");
    assert_eq!(json_of(&out)["results"]["rows"], Value::Array(vec![]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.tower", "");
    let out = towerlab(&["census", "--spec", &empty, "--level", "1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:1"));

    let reducible = write(
        dir.path(),
        "reducible.tower",
        "[field]\np = 5\nm = 2\nmodulus = [1,0,1]\n[tower]\ntype = separated\nf_num = [0,0,1]\nf_den = [1]\ng_num = [0,0,1]\ng_den = [0,1]\n",
    );
    assert_eq!(towerlab(&["genus", "--spec", &reducible, "--nmax", "3"], &[]).status.code(), Some(2));

    let diag = spec("diagonal.tower");
    assert_eq!(towerlab(&["census", "--spec", &diag, "--level", "1"], &[]).status.code(), Some(3));
    assert_eq!(towerlab(&["cycles", "--spec", &diag, "--level", "1", "--nmax", "3"], &[]).status.code(), Some(3));

    let unequal = "[field]\np = 3\n[tower]\ntype = separated\nf_num = [0,0,1]\nf_den = [1]\ng_num = [1,0,0,1]\ng_den = [0,1]\n";
    let plain = write(dir.path(), "unequal.tower", unequal);
    assert_eq!(towerlab(&["census", "--spec", &plain, "--level", "2"], &[]).status.code(), Some(3));
    let flagged = write(
        dir.path(),
        "unequal_ok.tower",
        &format!("{unequal}[options]\nallow_unequal_bidegree = true\n"),
    );
    let out = towerlab(&["census", "--spec", &flagged, "--level", "2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["notes"][0].as_str().unwrap().contains("lambda_r = 0"));

    let missing = dir.path().join("nope.tower");
    assert_eq!(towerlab(&["genus", "--spec", missing.to_str().unwrap(), "--nmax", "2"], &[]).status.code(), Some(1));
    assert_eq!(towerlab(&["census", "--level", "1"], &[]).status.code(), Some(2));
    assert_eq!(
        towerlab(&["invariants", "--spec", &spec("bgs_q3.tower"), "--ell", "x/y"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        towerlab(&["genus", "--spec", &spec("f5_tame.tower"), "--nmax", "2"], &[("TOWERLAB_THREADS", "zero")]).status.code(),
        Some(2)
    );
}

#[test]
fn invariants_and_genus() {
    let out = towerlab(&["invariants", "--spec", &spec("bgs_q3.tower"), "--ell", "4/15"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_of(&out)["results"];
    assert_eq!(r["beta"]["3"], "16/15");
    assert_eq!(r["lambda"]["3"], "16/5");
    assert_eq!(r["zeta"], "(1-T)^(-16/15)");
    assert_eq!(r["core"]["r0"], 3);
    assert_eq!(r["flags"]["sing_or_etale"], "must_be_singular");

    let out = towerlab(&["invariants", "--spec", &spec("f5_tame.tower")], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert!(r["results"].get("lambda").is_none());
    assert!(r["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("ell not supplied")));

    let dir = tempfile::tempdir().unwrap();
    let toy = write(
        dir.path(),
        "toy.tower",
        "[field]\np = 5\n[tower]\ntype = separated\nf_num = [1,0,1]\nf_den = [0,2]\ng_num = [0,0,1]\ng_den = [1]\n[options]\ndeltas = 0, 0, 0, 0\n",
    );
    let out = towerlab(&["genus", "--spec", &toy, "--nmax", "5"], &[]);
    let r = &json_of(&out)["results"];
    assert_eq!(r["closed_form_agrees"], true);
    let g: Vec<&str> = r["genus"].as_array().unwrap().iter().map(|x| x["g"].as_str().unwrap()).collect();
    // type (2,2) on P^1 x P^1 without singularities: g_n = (n-2) 2^(n-1) + 1
    assert_eq!(g, vec!["0", "1", "5", "17", "49"]);
}

#[test]
fn probe_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("p0");
    let out = towerlab(
        &["probe", "--p", "3", "--degree", "2", "--rmax", "2", "--budget", "0", "--out", out_dir.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(out_dir.join("probe.json")).unwrap(), out.stdout);

    let out_dir = dir.path().join("p5");
    let out = towerlab(
        &["probe", "--p", "3", "--degree", "2", "--rmax", "2", "--budget", "5", "--out", out_dir.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let saved: Value = serde_json::from_slice(&fs::read(out_dir.join("probe.json")).unwrap()).unwrap();
    assert_eq!(saved["results"]["evaluated"], 5);
}
