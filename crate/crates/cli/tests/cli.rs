use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sheafgraph::gluecat::{curve_to_json, CurveObject, Step};
use sheafgraph::graph::fixtures::{theta_area, theta_unit};
use sheafgraph::graph::graph_to_json;
use sheafgraph::ncingest::standard::mobius;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sheafgraph")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn cycle12() -> CurveObject {
    CurveObject::closed(vec![Step::through("v1", "h12", "h11"), Step::through("v2", "h21", "h22")])
}

#[test]
fn genus_of_theta_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.json", &graph_to_json(&theta_unit()));
    let o = bin(&["genus", "--graph", g.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["genus"], 2);
}

#[test]
fn hom_of_an_embedded_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.json", &graph_to_json(&theta_area()));
    let c = write(dir.path(), "c.json", &curve_to_json(&cycle12()));
    let (g, c) = (g.to_str().unwrap(), c.to_str().unwrap());
    let o = bin(&["hom", "--graph", g, "--curve", c, "--curve2", c, "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["command"], "hom");
    assert_eq!(v["window"], 6);
    assert_eq!(v["inputs"].as_object().unwrap().len(), 2);
    assert_eq!(v["result"]["stable_totals"], serde_json::json!([1, 1]));
    let e = bin(&["euler", "--graph", g, "--curve", c]);
    assert_eq!(stdout_json(&e)["euler"], 0);
}

#[test]
fn loop_graph_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"vertices":[{"id":"v","valency":3,"half_edges":["h1","h2","h3"]}],
        "edges":[{"id":"l","half_edges":["h1","h2"],"compact":true,"orientation":"head=h2"},
                 {"id":"e","half_edges":["h3"],"compact":false,"orientation":"out"}],
        "cyclic_orders":{"v":["h1","h2","h3"]}}"#;
    let g = write(dir.path(), "loop.json", text);
    let o = bin(&["validate", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["kind"] == "loop"));
}

#[test]
fn missing_file_is_an_io_error() {
    let o = bin(&["genus", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cover_window_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.json", &graph_to_json(&theta_unit()));
    let o = bin(&["cover", "--graph", g.to_str().unwrap(), "--tree", "t2", "--radius", "1"]);
    assert!(o.status.success());
    let w = write(dir.path(), "window.json", &String::from_utf8(o.stdout).unwrap());
    let again = bin(&["validate", "--graph", w.to_str().unwrap()]);
    assert!(again.status.success());
    let c = write(dir.path(), "c.json", &curve_to_json(&cycle12()));
    let l = bin(&["lift", "--graph", g.to_str().unwrap(), "--curve", c.to_str().unwrap(), "--tree", "t2"]);
    assert_eq!(stdout_json(&l).as_array().unwrap().len(), 3);
}

#[test]
fn mobius_is_not_orientable() {
    let dir = tempfile::tempdir().unwrap();
    let nc = write(dir.path(), "m.json", &mobius().to_json());
    let o = bin(&["orient", "--nc", nc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout_json(&o)["cycle"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.json", &graph_to_json(&theta_area()));
    let a = bin(&["gauge-fix", "--graph", g.to_str().unwrap()]);
    let b = bin(&["gauge-fix", "--graph", g.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let fixed = write(dir.path(), "fixed.json", &stdout_json(&a)["graph"].to_string());
    let t1 = bin(&["total-weight", "--graph", g.to_str().unwrap()]);
    let t2 = bin(&["total-weight", "--graph", fixed.to_str().unwrap()]);
    assert_eq!(stdout_json(&t1), stdout_json(&t2));
}
