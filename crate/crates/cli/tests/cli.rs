use std::fs;
use std::process::{Command, Output};

fn ratchip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratchip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ratchip(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out).trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn stabilize_555() {
    assert_eq!(
        ok(&[
            "stabilize",
            "--a",
            "5",
            "--b",
            "3",
            "--k",
            "0",
            "--config",
            "5,5,5"
        ]),
        "3,3,3"
    );
    assert_eq!(
        ok(&[
            "stabilize",
            "--a",
            "5",
            "--b",
            "3",
            "--k",
            "2",
            "--config",
            "5,5,5"
        ]),
        "0,0,0"
    );
}

#[test]
fn skeletal_00355() {
    assert_eq!(
        ok(&[
            "skeletal",
            "--a",
            "7",
            "--b",
            "5",
            "--k",
            "2",
            "--config",
            "0,0,3,5,5"
        ]),
        "4,4,0,2,2"
    );
    assert_eq!(
        ok(&[
            "skeletal",
            "--a",
            "7",
            "--b",
            "5",
            "--k",
            "2",
            "--config",
            "2,2,5,0,0",
            "--check"
        ]),
        "false"
    );
    assert_eq!(
        ok(&["skeletal", "--a", "4", "--b", "3", "--k", "0", "--config", "2,0,2", "--check"]),
        "true"
    );
}

#[test]
fn orbit_count_both_ways() {
    assert_eq!(
        ok(&["count", "--a", "7", "--b", "5", "--what", "orbits"]),
        "66"
    );
    for k in ["0", "2", "4"] {
        let listed = ok(&[
            "enumerate",
            "--a",
            "7",
            "--b",
            "5",
            "--what",
            "orbits",
            "--k",
            k,
        ]);
        assert_eq!(listed.lines().count(), 66);
    }
    assert_eq!(
        ok(&["enumerate", "--a", "7", "--b", "5", "--what", "dyck"])
            .lines()
            .count(),
        66
    );
}

#[test]
fn counts_match_listings() {
    for what in [
        "skeletal-configs",
        "skeletal-paths",
        "superstable",
        "classes",
        "paths",
    ] {
        let n: usize = ok(&["count", "--a", "5", "--b", "3", "--what", what, "--k", "1"])
            .parse()
            .unwrap();
        let listed = ok(&[
            "enumerate",
            "--a",
            "5",
            "--b",
            "3",
            "--what",
            what,
            "--k",
            "1",
        ]);
        assert_eq!(listed.lines().count(), n, "{what}");
    }
}

#[test]
fn strategy_is_echoed() {
    let out = ratchip(&[
        "stabilize",
        "--a",
        "7",
        "--b",
        "5",
        "--k",
        "2",
        "--config",
        "0,0,3,5,5",
        "--strategy",
        "lex-min",
        "--trace",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2,2,5,0,0\nfire {4,5}\n");
    assert!(stderr(&out).contains("strategy: lex-min"));

    let v = json(&[
        "stabilize",
        "--a",
        "7",
        "--b",
        "5",
        "--k",
        "2",
        "--config",
        "0,0,3,5,5",
    ]);
    assert_eq!(v["strategy"], "greedy-max");
    assert_eq!(v["config"], serde_json::json!([4, 4, 0, 2, 2]));
    assert_eq!(v["trace"], serde_json::json!([[3, 4, 5]]));

    let seeded = [
        "stabilize",
        "--a",
        "5",
        "--b",
        "3",
        "--k",
        "1",
        "--config",
        "9,9,9",
        "--strategy",
        "random:7",
    ];
    assert_eq!(ok(&seeded), ok(&seeded));
}

#[test]
fn all_stabilizations() {
    assert_eq!(
        ok(&[
            "stabilize",
            "--a",
            "7",
            "--b",
            "5",
            "--k",
            "2",
            "--config",
            "0,0,3,5,5",
            "--all"
        ]),
        "2,2,5,0,0\n4,4,0,2,2"
    );
}

#[test]
fn general_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    fs::write(&file, "6\n1 3\n1 5\n2 5\n3 5\n3 6\n4 5\n").unwrap();
    let g = file.to_str().unwrap();
    let all = ok(&[
        "stabilize",
        "--a",
        "2",
        "--b",
        "5",
        "--graph",
        g,
        "--k",
        "5",
        "--config",
        "1,1,2,1,0,0",
        "--all",
    ]);
    assert!(all.lines().any(|l| l == "0,0,0,0,0,0"));
    assert!(all.lines().any(|l| l == "0,0,0,0,1,0"));
    assert_eq!(
        ok(&[
            "fire",
            "--a",
            "2",
            "--b",
            "5",
            "--graph",
            g,
            "--config",
            "0,0,0,0,2,0",
            "--set",
            "5"
        ]),
        "0,0,0,0,0,0"
    );
    assert_eq!(
        ok(&[
            "stabilize",
            "--a",
            "2",
            "--b",
            "5",
            "--graph",
            g,
            "--k",
            "0",
            "--config",
            "1,1,1,1,1,1",
            "--c",
            "2"
        ])
        .split(',')
        .count(),
        6
    );
}

#[test]
fn moves() {
    assert_eq!(
        ok(&["fire", "--a", "5", "--b", "3", "--config", "5,5,5", "--set", "1,2"]),
        "3,3,8"
    );
    assert_eq!(
        ok(&["borrow", "--a", "5", "--b", "3", "--config", "3,3,8", "--set", "{1,2}"]),
        "5,5,5"
    );
    let out = ratchip(&[
        "fire", "--a", "5", "--b", "3", "--config", "0,0,0", "--set", "1",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("not legal"));
    let v = json(&[
        "fire", "--a", "5", "--b", "3", "--config", "0,0,0", "--set", "1",
    ]);
    assert_eq!(v["legal"], false);
}

#[test]
fn superstabilize_and_dual() {
    assert_eq!(
        ok(&[
            "superstabilize",
            "--a",
            "5",
            "--b",
            "3",
            "--config",
            "5,5,5"
        ]),
        "0,0,0"
    );
    assert_eq!(
        ok(&[
            "superstabilize",
            "--a",
            "5",
            "--b",
            "3",
            "--config",
            "-1,-6,4"
        ]),
        "0,0,0"
    );
    assert_eq!(
        ok(&["dual", "--a", "7", "--b", "5", "--config", "0,0,0,0,0"]),
        "5,5,5,5,5"
    );
    assert_eq!(
        ratchip(&["dual", "--a", "7", "--b", "5", "--config", "6,0,0,0,0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn group_commands() {
    assert_eq!(
        ok(&["group", "canon", "--a", "3", "--b", "2", "--config", "1,2"]),
        "2,0"
    );
    assert_eq!(
        ok(&["group", "add", "--a", "3", "--b", "2", "--x", "1,0", "--y", "1,0"]),
        "2,0"
    );
    assert_eq!(
        ok(&[
            "group",
            "equiv",
            "--a",
            "7",
            "--b",
            "5",
            "--x",
            "2,2,5,0,0",
            "--y",
            "4,4,0,2,2"
        ]),
        "true"
    );
    assert_eq!(
        ok(&[
            "group",
            "equiv",
            "--a",
            "7",
            "--b",
            "5",
            "--x",
            "0,0,0,0,0",
            "--y",
            "1,0,0,0,0"
        ]),
        "false"
    );
    let trace = ok(&[
        "group", "trace", "--a", "5", "--b", "3", "--x", "5,5,5", "--y", "3,3,3",
    ]);
    assert!(trace
        .lines()
        .all(|l| l.starts_with("fire {") || l.starts_with("borrow {")));
    let v = json(&[
        "group", "trace", "--a", "5", "--b", "3", "--x", "5,5,5", "--y", "3,3,3",
    ]);
    assert_eq!(v["moves"].as_array().unwrap().len(), trace.lines().count());
    let bad = ratchip(&[
        "group", "trace", "--a", "5", "--b", "3", "--x", "0,0,0", "--y", "1,0,0",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn render_outputs() {
    let ascii = ok(&[
        "render", "--a", "4", "--b", "3", "--config", "2,0,2", "--labels",
    ]);
    assert_eq!(ascii.lines().count(), 7);
    assert!(ascii.contains("|2"));
    let levels = ok(&["render", "--path", "NENEENNEENEEE", "--levels"]);
    assert!(levels.contains("(3,4)=17"));
    let labeled = ok(&[
        "render",
        "--a",
        "4",
        "--b",
        "3",
        "--path",
        "N(2)EEN(1)N(3)EE",
        "--labels",
    ]);
    assert_eq!(labeled, ascii);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.svg");
    let f = file.to_str().unwrap();
    ok(&[
        "render", "--path", "NNEEE", "--format", "svg", "--output", f,
    ]);
    let doc = fs::read_to_string(&file).unwrap();
    assert!(doc.starts_with("<?xml") && doc.contains("<svg") && doc.trim_end().ends_with("</svg>"));
}

#[test]
fn verify_small() {
    let out = ok(&["verify", "--a", "5", "--b", "3"]);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.ends_with("ok")));
    assert_eq!(json(&["verify", "--a", "3", "--b", "2"])["passed"], true);
}

#[test]
fn printed_values_reparse() {
    let d = ok(&[
        "skeletal",
        "--a",
        "7",
        "--b",
        "5",
        "--k",
        "1",
        "--config",
        "9,-3,4,4,0",
    ]);
    assert_eq!(
        ok(&["skeletal", "--a", "7", "--b", "5", "--k", "1", "--config", &d, "--check"]),
        "true"
    );
    for q in ok(&[
        "enumerate",
        "--a",
        "5",
        "--b",
        "3",
        "--what",
        "skeletal-paths",
        "--k",
        "1",
    ])
    .lines()
    {
        ok(&["render", "--a", "5", "--b", "3", "--path", q]);
    }
}

#[test]
fn exit_codes() {
    let parse = ratchip(&[
        "stabilize",
        "--a",
        "5",
        "--b",
        "3",
        "--k",
        "0",
        "--config",
        "5,x,5",
    ]);
    assert_eq!(parse.status.code(), Some(2));
    let usage = ratchip(&["stabilize", "--a", "5"]);
    assert_eq!(usage.status.code(), Some(2));
    let gcd = ratchip(&[
        "skeletal", "--a", "6", "--b", "3", "--k", "0", "--config", "1,1,1",
    ]);
    assert_eq!(gcd.status.code(), Some(1));
    assert!(stderr(&gcd).contains("gcd"));
    let k = ratchip(&[
        "skeletal", "--a", "5", "--b", "3", "--k", "3", "--config", "1,1,1",
    ]);
    assert_eq!(k.status.code(), Some(1));
    let len = ratchip(&["superstabilize", "--a", "5", "--b", "3", "--config", "1,1"]);
    assert_eq!(len.status.code(), Some(1));
}
