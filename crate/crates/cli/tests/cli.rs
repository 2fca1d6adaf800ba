use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    dir.join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orthosurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthosurf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&run(&["check", &fixture("no_lattice_4d"), "--rigid"])), 0);
    let o = run(&["check", &fixture("non_rigid_3d"), "--rigid"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(2,2,2) < (3,3,2)"));
    assert_eq!(code(&run(&["check", &fixture("weakly_degenerate_4d"), "--degenerate"])), 0);
    assert_eq!(code(&run(&["check", &fixture("no_lattice_4d"), "--degenerate"])), 1);
    assert_eq!(code(&run(&["check", &fixture("strong_degenerate_3d"), "--strong-degeneracy"])), 0);
    assert_eq!(code(&run(&["check", &fixture("simplex_3d"), "--generic", "--suspended"])), 0);
    assert_eq!(code(&run(&["check", &fixture("non_characteristic_3d"), "--suspended"])), 1);
    assert_eq!(code(&run(&["check", &fixture("triangle_3d")])), 0);
}

#[test]
fn antichain_is_checked_on_raw_input() {
    let path = scratch("chain.json");
    std::fs::write(&path, r#"{"dim":2,"format":"orthosurf/surface","version":1,"vertices":[[1,1],[2,2]]}"#).unwrap();
    let o = run(&["check", path.to_str().unwrap(), "--antichain"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("vertices 1 and 2"));
    assert_eq!(code(&run(&["check", path.to_str().unwrap()])), 2);
}

#[test]
fn cpoints_reports_the_non_syzygy_point() {
    let json = scratch("cpoints.json");
    let o = run(&["cpoints", &fixture("non_syzygy_4d"), "--syzygies", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(2,2,2,2) rank 1 D={1,2,3} T=[{1,2} {1,3} {2,4}] not-syzygy"));
    let records: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let last = records.as_array().unwrap().last().unwrap();
    assert_eq!(last["point"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(last["syzygy"], serde_json::json!(false));
    assert_eq!(code(&run(&["cpoints", &fixture("simplex_3d"), "--syzygies"])), 0);
}

#[test]
fn cporder_witnesses() {
    let o = run(&["cporder", &fixture("no_lattice_4d"), "--lattice"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("lattice: no"));
    let o = run(&["cporder", &fixture("no_diamond_4d"), "--diamond"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[(3,3,3,3), (5,5,5,3)]"));
    let dot = scratch("simplex.dot");
    let o = run(&["cporder", &fixture("simplex_3d"), "--lattice", "--diamond", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("label=").count(), 15);
}

#[test]
fn schnyder_round_trip() {
    let surface = scratch("oct_surface.json");
    let o = run(&["schnyder", "embed", &fixture("octahedron_graph"), "-o", surface.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = run(&["schnyder", "extract", surface.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // 12 edges, three of them bioriented on the outer face
    assert_eq!(doc["arcs"].as_array().unwrap().len(), 15);
    assert_eq!(doc["graph"]["n"], 6);
    assert_eq!(doc["graph"]["faces"].as_array().unwrap().len(), 7);
    assert_eq!(code(&run(&["schnyder", "dual", surface.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["schnyder", "dual", &fixture("non_rigid_3d")])), 2);
}

#[test]
fn realize_commands() {
    let o = run(&["realize", "check", &fixture("cyclic_4_7")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[5,7]"));
    assert_eq!(code(&run(&["realize", "search", &fixture("cyclic_4_7")])), 1);
    assert_eq!(code(&run(&["realize", "search", &fixture("cyclic_4_7"), "--budget", "3"])), 1);
    let one = run(&["realize", "search", &fixture("octahedron"), "--jobs", "1"]);
    let four = run(&["realize", "search", &fixture("octahedron"), "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn construct_commands() {
    let stacked = scratch("stacked.json");
    let o = run(&["construct", "stack", &fixture("simplex_3d"), "--max", "1", "-o", stacked.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["check", stacked.to_str().unwrap(), "--generic", "--rigid"])), 0);
    assert_eq!(code(&run(&["construct", "stack", &fixture("simplex_3d"), "--max", "9"])), 2);
    assert_eq!(code(&run(&["construct", "stack", &fixture("simplex_3d"), "--max", "2,1,1"])), 2);
    assert_eq!(code(&run(&["construct", "prism", &fixture("square_host_3d"), "--max", "1,2,2"])), 0);
    assert_eq!(code(&run(&["construct", "product", &fixture("triangle_3d"), "-k", "3"])), 0);
    assert_eq!(code(&run(&["construct", "pyramid", &fixture("simplex_3d")])), 0);
    let o = run(&["construct", "simplex", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"dim\": 4"));
}

#[test]
fn render_and_errors() {
    let svg = scratch("simplex.svg");
    assert_eq!(code(&run(&["render3d", &fixture("simplex_3d"), "--svg", svg.to_str().unwrap()])), 0);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    assert_eq!(code(&run(&["render3d", &fixture("no_lattice_4d"), "--svg", "/dev/null"])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent.json"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"dim\": 3,\n \"format\": 1}").unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
