use std::path::{Path, PathBuf};
use std::process::Output;

use stoneworks_cli::corpus::fixture_manifests;
use stoneworks_cli::manifest::emit_manifest;
use stoneworks_cli::{emit_table1, parse, parse_str, run, CliError, Command, Options, Outcome, Structure};
use stoneworks_core::fixtures;

fn fixture(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(file)
}

fn stoneworks(args: &[&str], manifest: &Path, out: &Path) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_stoneworks"))
        .args(args)
        .arg("--in")
        .arg(manifest)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn report_of(out: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

#[test]
fn checked_in_fixtures_match_the_corpus() {
    for (file, entries) in fixture_manifests() {
        let text = std::fs::read_to_string(fixture(&file)).unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(text, emit_manifest(&entries), "{file} is stale; rerun the export_fixtures example");
    }
}

#[test]
fn every_fixture_file_round_trips() {
    for (file, _) in fixture_manifests() {
        let m = parse(&fixture(&file)).unwrap_or_else(|e| panic!("{file}: {e}"));
        let text = emit_manifest(&m.entries);
        let again = parse_str(&text).unwrap();
        assert_eq!(emit_manifest(&again.entries), text, "{file}");
        assert_eq!(std::fs::read_to_string(fixture(&file)).unwrap(), text, "{file}");
    }
}

#[test]
fn matrix2_file_is_matrix2() {
    let m = parse(&fixture("matrix2.json")).unwrap();
    let Structure::System(ts) = &m.entries[0].structure else { panic!("not a system") };
    let expected = fixtures::matrix2();
    assert_eq!(ts.names(), expected.names());
    assert_eq!(ts.tensor_table(), expected.tensor_table());
    assert_eq!(ts.sum_table(), expected.sum_table());
    assert_eq!(ts.rules(), expected.rules());
    assert_eq!((ts.zero(), ts.unit()), (expected.zero(), expected.unit()));
    assert!(ts.validate().unwrap().additive);
}

#[test]
fn structures_survive_emit_and_parse() {
    let m = parse(&fixture("corpus.json")).unwrap();
    for e in &m.entries {
        match &e.structure {
            Structure::Lattice(l) => {
                let (name, orig) = fixtures::distributive_lattices()
                    .into_iter()
                    .chain([("m3", fixtures::m3()), ("n5", fixtures::n5())])
                    .find(|(n, _)| *n == e.name)
                    .map(|(n, l)| (n.to_string(), l))
                    .unwrap_or_else(|| (e.name.clone(), l.clone()));
                assert_eq!(l.names(), orig.names(), "{name}");
                assert_eq!(l.poset().covers(), orig.poset().covers(), "{name}");
            }
            Structure::Space(x) => {
                if let Some((_, orig)) = fixtures::spaces().into_iter().find(|(n, _)| *n == e.name) {
                    assert_eq!(*x, orig, "{}", e.name);
                }
            }
            _ => {}
        }
    }
}

#[test]
fn missing_cell_is_a_parse_error() {
    let text = std::fs::read_to_string(fixture("matrix2.json")).unwrap();
    let broken = text.replacen(r#"["0","e1","0","e1"]"#, r#"["0","e1","0"]"#, 1);
    match parse_str(&broken) {
        Err(CliError::Parse { line, message, .. }) => {
            assert_eq!(line, 1);
            assert!(message.contains("has 3 cells, expected 4"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_rule_element_is_a_reference_error() {
    let text = std::fs::read_to_string(fixture("freepair.json")).unwrap();
    let broken = text.replacen(r#""rules":[[[],"0"]]"#, r#""rules":[[["c"],"0"]]"#, 1);
    assert_ne!(broken, text);
    match parse_str(&broken) {
        Err(CliError::Reference { line, what, name }) => assert_eq!((line, what.as_str(), name.as_str()), (1, "element", "c")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn datum_must_reference_earlier_structures() {
    let line = r#"{"kind":"datum","name":"d","lattice":"nowhere","space":"x","sigma":{}}"#;
    assert!(matches!(parse_str(line), Err(CliError::Reference { ref what, .. }) if what == "lattice"));
}

#[test]
fn empty_manifest_reports_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("empty.json");
    std::fs::write(&manifest, "").unwrap();
    let out = dir.path().join("out");
    let o = stoneworks(&["report", "--assert"], &manifest, &out);
    assert_eq!(o.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r["records"].as_array().unwrap().len(), 0);
    assert_eq!(r["exit_status"], 0);
}

#[test]
fn matrix2_theorem_b_is_all_true() {
    let dir = tempfile::tempdir().unwrap();
    let o = stoneworks(&["theorem-b", "--assert"], &fixture("matrix2.json"), dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report_of(dir.path());
    let d = &r["records"][0]["details"];
    for k in ["clause1", "clause2", "clause3", "principal_closure", "compact_detection"] {
        assert_eq!(d[k], true, "{k}");
    }
    assert_eq!(d["thomason_table"].as_array().unwrap().len(), 4);
}

#[test]
fn freepair_classify_names_the_failing_clause() {
    let m = {
        let mut m = parse(&fixture("freepair.json")).unwrap();
        m.commands = vec![Command::Classify];
        m
    };
    let r = run(&m, &Options::default());
    match &r.records[0].outcome {
        Outcome::Precondition(why) => assert!(why.contains("compact detection"), "{why}"),
        other => panic!("{other:?}"),
    }
    assert_eq!(r.exit_status(), 0);
    let dir = tempfile::tempdir().unwrap();
    let o = stoneworks(&["classify", "--assert"], &fixture("freepair.json"), dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn freepair_theorem_b_witness_open() {
    let mut m = parse(&fixture("freepair.json")).unwrap();
    m.commands = vec![Command::TheoremB];
    let r = run(&m, &Options::default());
    let rec = &r.records[0];
    assert_eq!(rec.outcome, Outcome::Fails);
    assert_eq!(rec.details["witness_open"], "{{0,a,b}}");
    let complements: Vec<&str> = rec.details["support_complements"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(!complements.contains(&"{{0,a,b}}"));
}

#[test]
fn broken_systems_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = stoneworks(&["validate"], &fixture("broken.json"), dir.path());
    assert_eq!(o.status.code(), Some(2));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.contains(": invalid: ")).count(), 3, "{stdout}");
}

#[test]
fn parse_errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("bad.json");
    std::fs::write(&manifest, "{\"kind\":\"lattice\",\n  \"name\": 3}").unwrap();
    let o = stoneworks(&["validate"], &manifest, &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stoneworks: 1:1: invalid type"));
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = stoneworks(&["spectrum", "--dot"], &fixture("corpus.json"), dir.path());
    assert_eq!(o.status.code(), Some(0));
    let c3 = std::fs::read_to_string(dir.path().join("c3.dot")).unwrap();
    assert_eq!(c3.matches("->").count(), 2);
    let spc = std::fs::read_to_string(dir.path().join("freepair.dot")).unwrap();
    assert_eq!(spc.matches("[label=").count(), 3);
}

fn table_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip(2)
        .map(|l| {
            let cells: Vec<&str> = l.split(" | ").map(str::trim).collect();
            (cells[1].to_string(), cells[3].to_string())
        })
        .collect()
}

#[test]
fn translation_tables() {
    for ts in [fixtures::matrix2(), fixtures::comm3()] {
        let t = emit_table1(&ts).unwrap();
        for (l, g) in table_values(&t) {
            for v in [l, g] {
                assert!(v.is_empty() || v == "yes" || v.split('/').collect::<Vec<_>>().windows(2).all(|w| w[0] == w[1]), "{t}");
            }
        }
    }
    let t = emit_table1(&fixtures::freepair()).unwrap();
    let row = |label: &str| t.lines().find(|l| l.starts_with(label)).unwrap_or_else(|| panic!("{label}"));
    assert!(row("t_s(K) = T_s(K)^c").contains("| no "));
    assert!(row("t_s(K) is a sublattice").ends_with("| yes"));
    assert!(row("t_s(K) is a sublattice").contains("| no "));
}

#[test]
fn reports_are_deterministic() {
    let mut m = parse(&fixture("corpus.json")).unwrap();
    m.commands = vec![Command::Report];
    let opts = Options { assert: false, dot: true };
    let (a, b) = (run(&m, &opts), run(&m, &opts));
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.artifacts, b.artifacts);
}
