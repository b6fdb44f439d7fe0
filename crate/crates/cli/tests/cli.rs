use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_primcycle"));
    cmd.env_remove("PRIMCYCLE_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let load = |f: &str| -> Value {
        serde_json::from_str(&std::fs::read_to_string(dir.join(f)).unwrap()).unwrap()
    };
    let descriptor = load("descriptor.schema.json");
    jsonschema::options()
        .with_resource(
            "https://primcycle.example/schemas/descriptor.schema.json",
            jsonschema::Resource::from_contents(descriptor).unwrap(),
        )
        .build(&load(name))
        .unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, value: &Value) {
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{value:#}");
}

#[test]
fn classify_lists_the_cases_for_eleven_points() {
    let out = run(&["--format", "json", "classify", "--degree", "11", "--fixed", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let list: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&schema("caselist.schema.json"), &list);
    let tags: Vec<&str> = list["cases"].as_array().unwrap().iter().map(|c| c["tag"].as_str().unwrap()).collect();
    assert_eq!(tags, ["1a", "1c", "1c"]);
    assert_eq!(list["unconditional"], serde_json::json!(["A_11", "S_11"]));

    let text = stdout(&run(&["classify", "--degree", "11", "--fixed", "0"]));
    assert!(text.contains("degree 11, 0 fixed points"));
    assert!(text.contains("M11"));
}

#[test]
fn every_case_list_up_to_degree_25_matches_the_schema() {
    let validator = schema("caselist.schema.json");
    for n in [5, 6, 7, 8, 9, 10, 12, 13, 16, 17, 21, 24, 25] {
        for k in 0..=2 {
            let out = run(&["--format", "json", "classify", "--degree", &n.to_string(), "--fixed", &k.to_string()]);
            assert_eq!(out.status.code(), Some(0));
            assert_valid(&validator, &serde_json::from_str(&stdout(&out)).unwrap());
        }
    }
}

#[test]
fn classify_rejects_out_of_range_parameters() {
    assert_eq!(run(&["classify", "--degree", "7", "--fixed", "6"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--degree", "1", "--fixed", "0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--degree", "seven"]).status.code(), Some(2));
}

#[test]
fn construct_then_analyze_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec_schema = schema("groupspec.schema.json");
    let analysis_schema = schema("analysis.schema.json");
    let cases: [(&[&str], u128, Option<&str>); 6] = [
        (&["--family", "sporadic", "--name", "M12"], 95_040, Some("2c")),
        (&["--family", "projective", "--q", "7", "--d", "2"], 336, Some("1b")),
        (&["--family", "affine-line", "--p", "11", "--m", "5"], 55, Some("1a")),
        (&["--family", "pgl2", "--p", "7"], 336, Some("2b")),
        (&["--family", "line", "--q", "9", "--subgroup", "pgammal"], 1440, Some("3")),
        (&["--family", "wreath", "--m", "2", "--blocks", "3"], 48, None),
    ];
    for (i, (args, order, case)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("g{i}.json"));
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        full.extend(["--out", path.to_str().unwrap()]);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let spec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&spec_schema, &spec);

        let out = run(&["--format", "json", "analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&analysis_schema, &report);
        assert_eq!(report["order"].as_u64().unwrap() as u128, *order);
        match case {
            Some(tag) => {
                assert_eq!(report["identification"]["verdict"], "matched", "{args:?}");
                let tags: Vec<&str> = report["identification"]["descriptors"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|d| d["case"].as_str().unwrap())
                    .collect();
                assert!(tags.contains(tag), "{args:?}: {tags:?}");
            }
            None => {
                assert_eq!(report["primitive"], false);
                assert_eq!(report["identification"]["verdict"], "inapplicable");
            }
        }
    }
}

#[test]
fn construct_writes_to_stdout_without_out() {
    let out = run(&["construct", "--family", "psl2", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let spec: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&schema("groupspec.schema.json"), &spec);
    assert_eq!(spec["degree"], 6);
}

#[test]
fn construct_refuses_bad_parameters() {
    for args in [
        &["construct", "--family", "projective", "--q", "6", "--d", "2"][..],
        &["construct", "--family", "affine", "--q", "1048576", "--d", "2"],
        &["construct", "--family", "sporadic", "--name", "M99"],
        &["construct", "--family", "projective", "--q", "9"],
        &["construct", "--family", "wreath", "--m", "3"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn analyze_refuses_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let bad = [
        write("base.json", r#"{"degree":3,"point_base":0,"generators":["(1 2)"]}"#),
        write("trunc.json", r#"{"degree":3,"#),
        write("range.json", r#"{"degree":3,"point_base":1,"generators":["(1 4)"]}"#),
        write("extra.json", r#"{"degree":3,"point_base":1,"generators":["(1 2)"],"colour":1}"#),
        dir.path().join("missing.json"),
    ];
    for p in bad {
        let out = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{}", p.display());
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["analyze", write("trunc2.json", "{\n  \"degree\": 3,\n").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn analyze_hand_written_groups() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.json");
    // PSL_3(2) acting on the seven points of the Fano plane
    std::fs::write(
        &path,
        r#"{"label":"fano","degree":7,"point_base":1,"generators":["(1 2 3 4 5 6 7)","(2 3 5)(4 7 6)","(2 3)(4 7)"]}"#,
    )
    .unwrap();
    let out = run(&["--format", "json", "analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["order"], 168);
    assert_eq!(report["transitivity_degree"], 2);
    assert_eq!(report["smallest_cycle"]["k"], 0);
    assert_eq!(report["identification"]["verdict"], "matched");

    let text = stdout(&run(&["analyze", path.to_str().unwrap()]));
    assert!(text.contains("order 168"));
    assert!(text.contains("primitive true"));

    let sym = dir.path().join("sym.json");
    std::fs::write(&sym, r#"{"degree":6,"point_base":1,"generators":["(1 2 3 4 5 6)","(1 2)"]}"#).unwrap();
    let report: Value =
        serde_json::from_str(&stdout(&run(&["--format", "json", "analyze", sym.to_str().unwrap()]))).unwrap();
    assert_eq!(report["identification"]["verdict"], "contains_alternating");
}

fn verdict_of_text_line(line: &str) -> &str {
    line.split_whitespace().next().unwrap()
}

#[test]
fn text_and_json_verdicts_agree() {
    let validator = schema("check-report.schema.json");
    for suite in ["gamma", "residues", "mathieu", "comments"] {
        let json = run(&["--format", "json", "verify", "--suite", suite]);
        let text = run(&["verify", "--suite", suite]);
        assert_eq!(json.status.code(), Some(0), "{suite}");
        assert_eq!(json.status.code(), text.status.code());
        let json_lines: Vec<Value> = stdout(&json).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let text_out = stdout(&text);
        let text_lines: Vec<&str> = text_out.lines().collect();
        assert_eq!(json_lines.len(), text_lines.len());
        for (j, t) in json_lines.iter().zip(&text_lines) {
            assert_valid(&validator, j);
            assert_eq!(j["verdict"].as_str().unwrap().to_uppercase(), verdict_of_text_line(t));
            assert!(t.contains(j["check"].as_str().unwrap()));
            assert!(j["seconds"].is_null());
        }
    }
}

#[test]
fn timings_are_opt_in() {
    let out = run(&["--format", "json", "verify", "--suite", "residues", "--timings"]);
    let first: Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert!(first["seconds"].as_f64().is_some());
}

#[test]
fn verify_exit_codes() {
    // an expired budget cannot certify anything
    let out = run(&["verify", "--suite", "converse", "--max-degree", "7", "--time-budget", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("INCONCLUSIVE"));
    assert_eq!(run(&["verify", "--suite", "converse", "--max-degree", "11"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "converse", "--max-degree", "6"]).status.code(), Some(0));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("primcycle.toml");
    std::fs::write(&path, "format = \"json\"\nconverse_bound = 6\n").unwrap();
    let out = bin().env("PRIMCYCLE_CONFIG", &path).args(["classify", "--degree", "9", "--fixed", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let list: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(list["n"], 9);
    // the lowered bound applies, and the flag still overrides the file format
    let out = bin()
        .env("PRIMCYCLE_CONFIG", &path)
        .args(["verify", "--suite", "converse", "--max-degree", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .env("PRIMCYCLE_CONFIG", &path)
        .args(["--format", "text", "classify", "--degree", "9", "--fixed", "1"])
        .output()
        .unwrap();
    assert!(stdout(&out).starts_with("degree 9"));

    std::fs::write(&path, "colour = 3\n").unwrap();
    let out = bin().env("PRIMCYCLE_CONFIG", &path).args(["classify", "--degree", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
