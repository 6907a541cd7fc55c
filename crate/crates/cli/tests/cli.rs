use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_politrigon"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("politrigon-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const ASSETS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/assets");

#[test]
fn construct_then_verify() {
    let out = scratch("hex.scene");
    let o = run(&["construct", "--family", "hexagram", "--n", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--kv", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict=simple"));
    assert!(text.contains("sides=12"));
}

#[test]
fn families_reach_their_counts() {
    for (family, n, sides) in [("9n6", "4", 30), ("11n11", "4", 33), ("11n9", "9", 90)] {
        let out = scratch(&format!("{family}-{n}.scene"));
        let o = run(&["construct", "--family", family, "--n", n, "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{family}");
        let o = run(&["verify", "--kv", out.to_str().unwrap()]);
        assert!(stdout(&o).contains(&format!("sides={sides}\n")), "{family}");
    }
}

#[test]
fn rejected_scene_exits_2() {
    let path = scratch("apart.scene");
    fs::write(&path, "politrigon-scene 1\n2\n0 0 1 0 0 1\n5 5 6 5 5 6\n").unwrap();
    let o = run(&["verify", "--kv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("verdict=rejected"));
    assert!(text.contains("reason="));
}

#[test]
fn malformed_input_exits_1() {
    let path = scratch("bad.scene");
    fs::write(&path, "politrigon-scene 1\n1\n0 0 1 0 zero 1\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["verify", "/nonexistent/x.scene"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["construct", "--family", "hexagram", "--n", "3", "-o", "x"]).status.code(), Some(1));
}

#[test]
fn bound_prints_both_sides() {
    let o = run(&["bound", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("upper_bound=56\n"), "{text}");
    assert!(text.contains("lower_bound=56\n"), "{text}");
}

#[test]
fn bound_matches_shipped_scenes() {
    for (n, file) in [(5, "inscribed-5-45.scene"), (6, "inscribed-6-56.scene"), (8, "inscribed-8-80.scene")] {
        let text = stdout(&run(&["bound", "--n", &n.to_string()]));
        let lb = text.lines().find_map(|l| l.strip_prefix("lower_bound=")).unwrap().to_string();
        let o = run(&["verify", "--kv", &format!("{ASSETS}/{file}")]);
        assert!(stdout(&o).contains(&format!("sides={lb}\n")), "{file}");
    }
}

#[test]
fn closed_stdout_is_not_an_error() {
    use std::process::Stdio;
    let mut child = bin().args(["bound", "--n", "9"]).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    drop(child.stdout.take());
    let o = child.wait_with_output().unwrap();
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
}

#[test]
fn refute_exit_codes() {
    let log = scratch("refute.log");
    let o = run(&["refute", "--n", "3", "--target", "23", "--log", log.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&log).unwrap().contains("result=refuted"));
    let o = run(&["refute", "--n", "4", "--target", "34", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["refute", "--n", "2", "--target", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_then_canon() {
    let out = scratch("search.outcome");
    let o = run(&["--threads", "1", "search", "--n", "2", "--budget", "3000", "--seed", "5", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sides=12"));
    let canon = scratch("canon.outcome");
    let o = run(&["canon", "--in", out.to_str().unwrap(), "--budget", "50", "-o", canon.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&canon).unwrap().contains("sides=12"));
}

#[test]
fn search_accepts_a_template() {
    let template = scratch("gaps.txt");
    fs::write(&template, "1, 1.2 0.8\n").unwrap();
    let out = scratch("templated.outcome");
    let o = run(&["search", "--n", "3", "--budget", "4000", "--template", template.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(&template, "1 -2\n").unwrap();
    let o = run(&["search", "--n", "3", "--template", template.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_writes_svg() {
    let out = scratch("five.svg");
    let scene = format!("{ASSETS}/inscribed-5-45.scene");
    let o = run(&["render", &scene, "-o", out.to_str().unwrap(), "--label-vertices"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("class=\"triangle\"").count(), 5);
    assert!(svg.contains("class=\"boundary\""));
}
