//! The `quadpack` binary: subcommands, output files and exit codes.

use quadpack::io::polygon_to_json;
use quadpack::mesh::QuadMesh;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const SQUARE: &str = r#"{"outer":[[0,0],[1,0],[1,1],[0,1]],"holes":[]}"#;
const BOWTIE: &str = r#"{"outer":[[0,0],[1,1],[1,0],[0,1]],"holes":[]}"#;

fn quadpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadpack")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).display().to_string()
    }
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn report(p: &str) -> serde_json::Value {
    serde_json::from_str(&read(p)).unwrap()
}

#[test]
fn kite_mesh_of_the_square_succeeds_and_writes_every_output() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    let (mesh, off, rep, svg, pk) = (d.path("m.json"), d.path("m.off"), d.path("r.json"), d.path("m.svg"), d.path("p.json"));
    let o = quadpack(&["mesh", &input, "--method", "kite", "--out", &mesh, "--off", &off, "--report", &rep, "--svg", &svg, "--packing", &pk]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ok"));
    let m = QuadMesh::from_json(&read(&mesh)).unwrap();
    assert!(!m.quads.is_empty());
    assert!(read(&off).starts_with(&format!("OFF\n{} {} 0\n", m.vertices.len(), m.quads.len())));
    let r = report(&rep);
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["mesh"]["kite_fraction"], 1.0);
    assert_eq!(read(&svg).matches("<path ").count(), m.quads.len());
    let packing: serde_json::Value = serde_json::from_str(&read(&pk)).unwrap();
    assert!(!packing["circles"].as_array().unwrap().is_empty());
}

#[test]
fn every_method_meshes_the_square() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    for method in ["voronoi", "rightangle", "kite", "maxangle"] {
        let rep = d.path(&format!("{method}.json"));
        let o = quadpack(&["mesh", &input, "--method", method, "--report", &rep]);
        assert_eq!(code(&o), 0, "{method}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(report(&rep)["guarantee"]["passed"], true, "{method}");
    }
}

#[test]
fn max_angle_report_respects_the_bound() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    let rep = d.path("r.json");
    assert_eq!(code(&quadpack(&["mesh", &input, "--method", "maxangle", "--report", &rep])), 0);
    let a = report(&rep)["mesh"]["max_angle_deg"].as_f64().unwrap();
    assert!(a <= 120.0 + 1e-6f64.to_degrees(), "{a}");
}

#[test]
fn bowtie_is_an_input_error_with_a_diagnostic() {
    let d = Dir::new();
    let input = d.file("bowtie.json", BOWTIE);
    let rep = d.path("r.json");
    let o = quadpack(&["mesh", &input, "--report", &rep]);
    assert_eq!(code(&o), 2);
    let r = report(&rep);
    assert_eq!(r["exit_code"], 2);
    assert!(r["diagnostics"].as_array().unwrap().iter().any(|x| x["kind"] == "InvalidPolygon"), "{r}");
}

#[test]
fn unreadable_and_malformed_inputs_exit_with_two() {
    let d = Dir::new();
    assert_eq!(code(&quadpack(&["mesh", &d.path("missing.json")])), 2);
    let junk = d.file("junk.json", "{\"outer\": 7}");
    assert_eq!(code(&quadpack(&["pack", &junk])), 2);
}

#[test]
fn bad_option_values_are_input_errors() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    assert_eq!(code(&quadpack(&["mesh", &input, "--eps-sep", "-1"])), 2);
    assert_eq!(code(&quadpack(&["mesh", &input, "--tol", "0"])), 2);
}

#[test]
fn clockwise_input_is_accepted_with_a_warning() {
    let d = Dir::new();
    let input = d.file("cw.json", r#"{"outer":[[0,0],[0,1],[1,1],[1,0]]}"#);
    let o = quadpack(&["mesh", &input]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn validate_checks_conformity_and_the_requested_guarantee() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    let mesh = d.path("m.json");
    assert_eq!(code(&quadpack(&["mesh", &input, "--method", "kite", "--out", &mesh])), 0);
    assert_eq!(code(&quadpack(&["validate", &input, "--mesh", &mesh])), 0);
    assert_eq!(code(&quadpack(&["validate", &input, "--mesh", &mesh, "--method", "kite"])), 0);
    // Kites of a square have 135 degree corners, so the 120 degree promise fails.
    assert_eq!(code(&quadpack(&["validate", &input, "--mesh", &mesh, "--method", "maxangle"])), 3);

    let mut m = QuadMesh::from_json(&read(&mesh)).unwrap();
    m.quads.pop();
    let holed = d.file("holed.json", &m.to_json());
    let rep = d.path("r.json");
    assert_eq!(code(&quadpack(&["validate", &input, "--mesh", &holed, "--report", &rep])), 1);
    assert_eq!(report(&rep)["exit_code"], 1);
}

#[test]
fn pack_writes_a_packing_in_either_mode() {
    let d = Dir::new();
    let input = d.file("l.json", &polygon_to_json(&quadpack::fixtures::l_shape()));
    for extra in [&[][..], &["--tangent"][..]] {
        let out = d.path("p.json");
        let mut args = vec!["pack", input.as_str(), "--out", out.as_str()];
        args.extend_from_slice(extra);
        assert_eq!(code(&quadpack(&args)), 0);
        let v: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
        let mode = if extra.is_empty() { "BoundaryCentered" } else { "BoundaryTangent" };
        assert_eq!(v["mode"], mode);
    }
}

#[test]
fn render_draws_a_packing_or_a_given_mesh() {
    let d = Dir::new();
    let input = d.file("square.json", SQUARE);
    let svg = d.path("p.svg");
    assert_eq!(code(&quadpack(&["render", &input, "--svg", &svg])), 0);
    let doc = read(&svg);
    assert!(doc.contains("<circle ") && !doc.contains("<path "));

    let mesh = d.path("m.json");
    assert_eq!(code(&quadpack(&["mesh", &input, "--out", &mesh])), 0);
    let quads = QuadMesh::from_json(&read(&mesh)).unwrap().quads.len();
    let svg2 = d.path("m.svg");
    assert_eq!(code(&quadpack(&["render", &input, "--mesh", &mesh, "--svg", &svg2])), 0);
    assert_eq!(read(&svg2).matches("<path ").count(), quads);

    assert_eq!(code(&quadpack(&["render", &input])), 2, "render without --svg");
}

#[test]
fn repeated_runs_write_identical_meshes() {
    let d = Dir::new();
    let input = d.file("star.json", &polygon_to_json(&quadpack::fixtures::star8()));
    let outs: Vec<PathBuf> = (0..2).map(|k| PathBuf::from(d.path(&format!("m{k}.json")))).collect();
    for o in &outs {
        assert_eq!(code(&quadpack(&["mesh", &input, "--method", "voronoi", "--out", o.to_str().unwrap()])), 0);
    }
    assert_eq!(std::fs::read(&outs[0]).unwrap(), std::fs::read(&outs[1]).unwrap());
}
