//! End-to-end tests of the binary: golden output lines, document pipelines
//! through temporary files, JSON flags, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn plmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = plmap(args);
    assert!(
        out.status.success(),
        "plmap {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn verify_lines_are_stable_for_all_named_maps() {
    let expected = [
        ("alpha", "period=3 rotation=1/3 orientation=preserving pieces=1"),
        ("beta", "period=4 rotation=1/4 orientation=preserving pieces=1"),
        ("gamma", "period=6 rotation=1/6 orientation=preserving pieces=1"),
        ("mu", "period=none(bound) rotation=- orientation=preserving pieces=1"),
        ("nu", "period=none(growth) rotation=- orientation=preserving pieces=1"),
        ("H", "period=9 rotation=2/9 orientation=preserving pieces=2"),
        ("G", "period=5 rotation=1/5 orientation=preserving pieces=2"),
        ("F", "period=7 rotation=2/7 orientation=preserving pieces=2"),
        ("E", "period=8 rotation=3/8 orientation=preserving pieces=2"),
        ("D", "period=12 rotation=5/12 orientation=preserving pieces=2"),
        ("phi(2)", "period=4 rotation=1/4 orientation=preserving pieces=4"),
        ("reflect2(5)", "period=2 rotation=- orientation=reversing pieces=2"),
    ];
    for (name, line) in expected {
        assert_eq!(stdout_of(&["verify", name]), format!("{line}\n"), "verify {name}");
    }
}

#[test]
fn classification_table_matches_the_golden_file() {
    let got = stdout_of(&["classify", "--a", "-6:1", "--b", "-6:1", "--max-period", "120"]);
    let golden = include_str!("golden/classify_-6_1.tsv");
    assert_eq!(got, golden);
}

#[test]
fn classification_json_parses_back() {
    let got = stdout_of(&["classify", "--a", "-2:1", "--b", "-2:1", "--json"]);
    let doc = plmap::document::parse(got.trim()).unwrap();
    match doc {
        plmap::Document::Classification { rows, max_period, .. } => {
            assert_eq!(rows.len(), 16);
            assert_eq!(max_period, 120);
            assert!(rows.iter().any(|r| r.a == 1 && r.b == -1 && r.period == Some(9)));
        }
        other => panic!("expected a classification document, got {}", other.kind()),
    }
}

#[test]
fn enumerate_outputs_and_json() {
    assert_eq!(stdout_of(&["enumerate", "--order", "3", "--max-entry", "1"]), "-1,-1,-1\n");
    let quads = stdout_of(&["enumerate", "--order", "4", "--max-entry", "2"]);
    assert_eq!(quads.lines().count(), 3);

    let json = stdout_of(&["enumerate", "--order", "5", "--max-entry", "2", "--json"]);
    for line in json.lines() {
        let doc = plmap::document::parse(line).unwrap();
        let seq = doc.to_sequence().unwrap();
        assert_eq!(seq.sum(), 3);
        assert_eq!(seq.len(), 5);
    }
}

#[test]
fn orbit_trace_of_the_order_nine_map() {
    let got = stdout_of(&["orbit", "--map", "H", "--point", "1,0", "--steps", "9"]);
    let expected = "0\t1\t0\n1\t1\t1\n2\t0\t1\n3\t-1\t0\n4\t1\t-1\n5\t2\t1\n6\t1\t2\n7\t-1\t1\n8\t0\t-1\n9\t1\t0\n";
    assert_eq!(got, expected);
}

#[test]
fn recurrence_runs() {
    let got = stdout_of(&["recur", "--kind", "H", "--seed", "1,0", "--steps", "12"]);
    assert_eq!(got, "1,0,-1,1,2,1,-1,0,1,1,0,-1,1\nperiod=9\n");
    let got = stdout_of(&["recur", "--kind", "G", "--seed", "0,0", "--steps", "4"]);
    assert_eq!(got, "0,0,0,0,0\nperiod=1\n");
}

#[test]
fn polygon_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("square.json");
    let bigger = dir.path().join("pentagon.json");

    stdout_to_file(&["polygon", "from-sequence", "--m", "0,0,0,0"], &poly);
    assert_eq!(
        std::fs::read_to_string(&poly).unwrap(),
        "{\"kind\":\"polygon\",\"format_version\":1,\"vertices\":[[1,0],[0,1],[-1,0],[0,-1]]}\n"
    );

    let insert = stdout_of(&["polygon", "insert", "--file", poly.to_str().unwrap(), "--index", "0"]);
    std::fs::write(&bigger, &insert).unwrap();
    let removed =
        stdout_of(&["polygon", "remove", "--file", bigger.to_str().unwrap(), "--index", "1"]);
    assert_eq!(removed, std::fs::read_to_string(&poly).unwrap());

    // removal at a vertex that is not a mediant of its neighbours fails
    let out = plmap(&["polygon", "remove", "--file", poly.to_str().unwrap(), "--index", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not removable"));
}

#[test]
fn tree_pipeline_reaches_a_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("h_polygon.json");
    let code = dir.path().join("h_code.json");
    let canon = dir.path().join("h_canonical.json");
    let code2 = dir.path().join("h_code2.json");

    stdout_to_file(&["polygon", "of-map", "--map", "H"], &poly);
    stdout_to_file(&["tree", "encode", "--file", poly.to_str().unwrap()], &code);
    stdout_to_file(&["tree", "decode", "--file", code.to_str().unwrap()], &canon);
    stdout_to_file(&["tree", "encode", "--file", canon.to_str().unwrap()], &code2);
    assert_eq!(
        std::fs::read_to_string(&code).unwrap(),
        std::fs::read_to_string(&code2).unwrap()
    );

    // the canonical-frame polygon still carries the order-9 map
    let line = stdout_of(&["verify", canon.to_str().unwrap()]);
    assert!(line.starts_with("period=9 rotation=1/9"), "got {line}");
}

#[test]
fn render_is_deterministic_and_counts_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("h_a.svg");
    let b = dir.path().join("h_b.svg");
    for out in [&a, &b] {
        let res = plmap(&[
            "render",
            "H",
            "-o",
            out.to_str().unwrap(),
            "--scale",
            "50",
            "--label-regions",
        ]);
        assert!(res.status.success());
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<?xml version=\"1.0\""));
    assert_eq!(svg.matches("<circle").count(), 9);
    assert_eq!(svg.matches("<line").count(), 9);
}

#[test]
fn verify_accepts_every_document_kind() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("c.json");
    std::fs::write(&seq, "{\"kind\":\"sequence\",\"format_version\":1,\"m\":[1,2,1,2,1,2,1,2]}\n")
        .unwrap();
    let line = stdout_of(&["verify", seq.to_str().unwrap()]);
    assert!(line.starts_with("period=8 rotation=1/8"), "got {line}");

    let code = dir.path().join("square_code.json");
    std::fs::write(
        &code,
        "{\"kind\":\"code\",\"format_version\":1,\"upper\":null,\"lower\":null,\"shear\":0}\n",
    )
    .unwrap();
    assert_eq!(
        stdout_of(&["verify", code.to_str().unwrap()]),
        "period=4 rotation=1/4 orientation=preserving pieces=1\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(plmap(&["verify", "H"]).status.code(), Some(0));
    // domain errors exit 1
    assert_eq!(plmap(&["verify", "nosuchmap"]).status.code(), Some(1));
    assert_eq!(
        plmap(&["polygon", "from-sequence", "--m", "1,1,1"]).status.code(),
        Some(1)
    );
    // usage errors exit 2
    assert_eq!(plmap(&["bogus"]).status.code(), Some(2));
    assert_eq!(plmap(&["classify", "--a", "0:1"]).status.code(), Some(2));
}

fn stdout_to_file(args: &[&str], path: &Path) {
    let text = stdout_of(args);
    std::fs::write(path, text).unwrap();
}
