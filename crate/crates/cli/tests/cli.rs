use std::process::{Command, Output};

use linkdiag::{parse_module, Mode};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn diag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diag"))
        .args(args)
        .env_remove("DIAG_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_prints_one_judgement_per_def() {
    let o = diag(&["check", &fixture("fg.diag")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.contains("fg2_link : - | - |- 2 -> 2"), "{out}");
}

#[test]
fn check_rejects_the_cycle() {
    let o = diag(&["check", &fixture("cycle.diag")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error[AnchorCycle]"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn eq_exit_status() {
    let sym = fixture("symmetry.diag");
    assert_eq!(
        diag(&["eq", &sym, "nominal", "combinators"]).status.code(),
        Some(0)
    );
    assert_eq!(
        diag(&["eq", &sym, "nominal", "identity"]).status.code(),
        Some(1)
    );
    let o = diag(&["eq", &sym, "nominal", "missing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[UnknownDefinition]"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(diag(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(diag(&["eval", &fixture("fg.diag")]).status.code(), Some(2));
    assert_eq!(diag(&["gen", "--mode", "sideways"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_are_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.diag");
    std::fs::write(&p, "mode uniflow\ndef a = (1 ; )\n").unwrap();
    let o = diag(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error[SyntaxError]: 2:14"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn eval_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("fg.dot");
    let o = diag(&[
        "eval",
        &fixture("fg.diag"),
        "--def",
        "fg",
        "--dot",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("boxes: 2"));
    let dot = std::fs::read_to_string(&p).unwrap();
    assert!(dot.starts_with("digraph diagram {"));
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn netlists_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("a.net");
    let o = diag(&["to-netlist", &fixture("adder.diag"), "--def", "rca_probe"]);
    assert!(o.status.success(), "{}", stderr(&o));
    std::fs::write(&net, o.stdout).unwrap();
    let o = diag(&["from-netlist", net.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let back = parse_module(&stdout(&o)).unwrap();
    assert_eq!(back.mode, Mode::Spider);
    let orig = parse_module(&std::fs::read_to_string(fixture("adder.diag")).unwrap()).unwrap();
    let a = orig
        .context()
        .interpret(orig.def("rca_probe").unwrap())
        .unwrap();
    let b = back
        .context()
        .interpret(back.def("rca_probe").unwrap())
        .unwrap();
    assert!(a.equivalent(&b));
}

#[test]
fn bad_netlists_report_their_code() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("a.net");
    std::fs::write(
        &net,
        "module m(input u; output v)\nbegin\nwire u, v;\nwire u, v;\nend\n",
    )
    .unwrap();
    let o = diag(&["from-netlist", net.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error["), "{}", stderr(&o));
}

#[test]
fn transforms_print_terms_that_parse_back() {
    for cmd in ["flatten", "delink"] {
        let o = diag(&[cmd, &fixture("fg.diag"), "--def", "fg2_link"]);
        assert!(o.status.success());
        let text = format!(
            "mode uniflow\nconst f : 1 -> 3\nconst g : 3 -> 1\ndef t = {}",
            stdout(&o)
        );
        let m = parse_module(&text).unwrap();
        let orig = parse_module(&std::fs::read_to_string(fixture("fg.diag")).unwrap()).unwrap();
        let ctx = orig.context();
        assert!(ctx
            .equivalent(m.def("t").unwrap(), orig.def("fg2_chain").unwrap())
            .unwrap());
    }
}

#[test]
fn laws_report_passes() {
    let o = diag(&[
        "laws",
        "--mode",
        "comonoid",
        "--instances",
        "20",
        "--seed",
        "3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.lines()
            .all(|l| !l.starts_with("SCHEMA") || l.ends_with("fail 0")),
        "{out}"
    );
    assert!(out.ends_with("0 failing\n"));
}

#[test]
fn seed_comes_from_the_environment_unless_given() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_diag"));
        c.args(["gen", "--mode", "biflow", "--size", "15"])
            .args(args)
            .env_remove("DIAG_SEED");
        if let Some(v) = env {
            c.env("DIAG_SEED", v);
        }
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("9"), &[]), run(None, &["--seed", "9"]));
    assert_eq!(
        run(Some("9"), &["--seed", "4"]),
        run(None, &["--seed", "4"])
    );
    assert_eq!(run(None, &[]), run(None, &["--seed", "0"]));
}
