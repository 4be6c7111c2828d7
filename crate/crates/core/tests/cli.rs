use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_vtangle");

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no {key} in\n{text}")).trim()
}

#[test]
fn compute_clasp() {
    let o = run(&["compute", "-i", &data("clasp.tangle"), "--a", "1", "--b", "2"], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "psc:"), "0");
    assert_eq!(line(&out, "plk:"), "3 t1 t2");
    assert_eq!(line(&out, "plkL:"), "1 t1 t2^-1 + 2 t1^-1 t2");
}

#[test]
fn compute_virtual_trefoil_from_stdin() {
    let text = std::fs::read_to_string(data("virtual_trefoil.tangle")).unwrap();
    let o = run(&["compute"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "psc:"), "-2 + 2 t1");
}

#[test]
fn compute_json() {
    let o = run(&["compute", "-i", &data("clasp.tangle"), "--a", "2/3", "--b", "-1/5", "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["plk"]["text"], "7/15 t1 t2");
    assert_eq!(v["vlk"][0][1], 1);
    assert!(v["vlk"][0][0].is_null());
}

#[test]
fn compute_rejects_singular_input() {
    let o = run(&["compute", "-i", &data("singular_trefoil.tangle")], "");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_and_missing_files() {
    let o = run(&["compute"], "tangle 0 0\ncomponent K closed\nO1+ U2+\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dangling chord"));
    assert_eq!(run(&["compute", "-i", "/no/such/file"], "").status.code(), Some(2));
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "-i", &data("clasp.tangle"), "--trials", "5", "--steps", "40", "--seed", "11"];
    let (x, y) = (run(&args, ""), run(&args, ""));
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(line(&stdout(&x), "result:"), "PASS");
    assert_eq!(line(&stdout(&x), "moves:"), "200");
}

#[test]
fn sum_of_clasps_is_additive() {
    let c = data("clasp.tangle");
    let o = run(&["sum", "-i", &c, "-i", &c], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("relations: t1=u1 t2=u2"));
    assert_eq!(line(&out, "additivity:"), "PASS");
}

#[test]
fn sum_with_mismatched_counts() {
    let o = run(&["sum", "-i", &data("clasp.tangle"), "-i", &data("virtual_trefoil.tangle")], "");
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn derivatives() {
    let o = run(&["derivative", "-i", &data("singular_trefoil.tangle")], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "psc:"), "-2 + 2 t1");
    let o = run(&["derivative", "-i", &data("two_double_points.tangle"), "--a", "3", "--b", "-7/2"], "");
    let out = stdout(&o);
    assert_eq!(line(&out, "double points:"), "2");
    for key in ["psc:", "plk:", "plkL:"] {
        assert_eq!(line(&out, key), "0");
    }
}

#[test]
fn generator_feeds_compute() {
    let g = run(&["gen", "3", "2"], "");
    assert_eq!(g.status.code(), Some(0));
    let o = run(&["compute", "--format", "json"], &stdout(&g));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vlk"][0][1], 3);
    assert_eq!(v["vlk"][1][0], -2);
    assert_eq!(v["wriggle"][0][1], 5);
    assert_eq!(v["psc"]["text"], "0");

    let g = run(&["gen", "2", "1"], "");
    let out = stdout(&run(&["compute", "--a", "1", "--b", "2"], &stdout(&g)));
    assert_eq!(line(&out, "plk:"), "0");
    assert_eq!(line(&out, "plkL:"), "2 t1 t2^-1 - 2 t1^-1 t2");

    assert_eq!(run(&["gen", "-1", "2"], "").status.code(), Some(2));
}

#[test]
fn trivial_cases() {
    let id = data("identity2.tangle");
    let out = stdout(&run(&["compute", "-i", &id], ""));
    for key in ["psc:", "plk:", "plkL:"] {
        assert_eq!(line(&out, key), "0");
    }

    let o = run(&["fuzz", "-i", &data("virtual_trefoil.tangle"), "--steps", "0"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "result:"), "PASS");

    let o = run(&["sum", "-i", &data("clasp.tangle"), "-i", &id, "--a", "1", "--b", "2"], "");
    let out = stdout(&o);
    assert_eq!(out.matches("plk: 3 t1 t2").count(), 2);
    assert_eq!(line(&out, "additivity:"), "PASS");

    let t = data("virtual_trefoil.tangle");
    let d = stdout(&run(&["derivative", "-i", &t], ""));
    let c = stdout(&run(&["compute", "-i", &t], ""));
    for key in ["psc:", "plk:", "plkL:"] {
        assert_eq!(line(&d, key), line(&c, key));
    }

    let o = run(&["gen", "0", "0"], "");
    assert!(stdout(&o).starts_with("tangle 0 0\n"));
}
