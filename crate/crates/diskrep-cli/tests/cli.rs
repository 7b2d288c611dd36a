use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diskrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fx(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

#[test]
fn adjacent_degree_five_is_rejected() {
    let o = run(&["recognize-caterpillar", &fx("adjacent-deg5.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("answer: No"));
    assert!(s.contains("reason: adjacent-degree-5-backbone-pair (u=0, v=1)"), "{s}");
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let layout = dir.path().join("out.layout");
    let svg = dir.path().join("out.svg");
    let l = layout.to_str().unwrap();
    let o = run(&["construct-caterpillar", &fx("delta4.txt"), "-o", l, "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
    let o = run(&["verify", "--model", "udr", &fx("delta4.txt"), l]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: ok"));
    // dropping an edge from the graph makes the same layout fail
    let broken = dir.path().join("broken.txt");
    let text = std::fs::read_to_string(fixtures().join("delta4.txt")).unwrap().replace("\n0 1\n", "\n");
    std::fs::write(&broken, format!("{text}0 13\n")).unwrap();
    let o = run(&["verify", "--model", "udr", broken.to_str().unwrap(), l]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation: "));
}

#[test]
fn construct_refuses_no_instances() {
    let o = run(&["construct-caterpillar", &fx("adjacent-deg5.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_mirrors_text() {
    let text = stdout(&run(&["classify", &fx("lobster-b.txt")]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["--json", "classify", &fx("lobster-b.txt")]))).unwrap();
    let obj = json.as_object().unwrap();
    let lines: Vec<String> = obj
        .iter()
        .map(|(k, v)| format!("{k}: {}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
        .collect();
    assert_eq!(text.lines().collect::<Vec<_>>(), lines);
    assert_eq!(obj["class"], "lobster");
}

#[test]
fn lobster_recognition_writes_grid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.grid");
    let o = run(&["recognize-lobster", &fx("lobster-a.txt"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--model", "wudc-grid", &fx("lobster-a.txt"), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = run(&["export-svg", &fx("lobster-a.txt"), out.to_str().unwrap(), "--model", "wudc-grid"]);
    assert_eq!(svg.status.code(), Some(0));
    assert_eq!(stdout(&svg).matches("<circle").count(), 12);
}

#[test]
fn enumerate_reports_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["lobster-a", "lobster-b", "lobster-c"] {
        let out = dir.path().join(format!("{name}.report"));
        let o = run(&["enumerate", &fx(&format!("{name}.txt")), "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let frozen = std::fs::read(fixtures().join(format!("{name}.report"))).unwrap();
        assert_eq!(std::fs::read(&out).unwrap(), frozen, "{name}");
    }
}

#[test]
fn gadget_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("rh");
    let o = run(&["gadget", "--kind", "rhombus", "--k", "7", "--variant", "tree", "-o", prefix.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let h: f64 = s.lines().find_map(|l| l.strip_prefix("hausdorff: ")).unwrap().parse().unwrap();
    assert!(h > 0.0 && h <= 7.0);
    let p = |ext: &str| format!("{}.{ext}", prefix.display());
    let o = run(&["verify", "--model", "udr", &p("graph"), &p("layout")]);
    assert_eq!(o.status.code(), Some(0));
    let ports = std::fs::read_to_string(p("ports")).unwrap();
    assert!(ports.lines().any(|l| l.starts_with("port hub1 ")));
    assert_eq!(run(&["gadget", "--kind", "hexagon", "--k", "11"]).status.code(), Some(2));
    assert_eq!(run(&["gadget", "--kind", "ladder", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--model", "sphere", &fx("delta4.txt"), "x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n0 0\n").unwrap();
    let o = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn induction_report_lists_its_verdict() {
    let o = run(&["induction-report", "--jobs", "1"]);
    let s = stdout(&o);
    let n: usize = s.lines().find_map(|l| l.strip_prefix("counterexamples: ")).unwrap().parse().unwrap();
    assert_eq!(o.status.code(), Some(if n == 0 { 0 } else { 1 }));
    assert!(s.contains("reachable signatures: "));
}
