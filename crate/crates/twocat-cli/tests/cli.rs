use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use twocat::corpus;
use twocat_cli::format::{CategorySpec, ManifestFile};
use twocat_cli::resolve::category_spec;
use twocat_cli::{parse, parse_text, run_args, serialize, Outcome, Status};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_file(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

fn run(args: &[&str]) -> Outcome {
    run_args(args.iter().map(|s| s.to_string()))
}

fn mutant_paths() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir().join("mutants"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
}

#[test]
fn bundled_corpus_matches_the_generator() {
    for (name, text) in twocat_cli::corpus::files() {
        let on_disk = fs::read_to_string(corpus_dir().join(&name)).unwrap();
        assert_eq!(
            on_disk, text,
            "{name} is stale; regenerate with `twocat corpus --out corpus`"
        );
    }
}

#[test]
fn corpus_files_round_trip_byte_for_byte() {
    for (name, text) in twocat_cli::corpus::files() {
        let spec: ManifestFile = serde_json::from_str(&text).unwrap();
        assert_eq!(serialize(&spec), text, "{name}");
    }
}

#[test]
fn parse_serialize_parse_is_stable() {
    let mut paths = vec![corpus_dir().join("corpus.manifest.json")];
    paths.extend(mutant_paths());
    for path in paths {
        let first = parse(&path).unwrap_or_else(|e| panic!("{}: {e:?}", path.display()));
        let text = first.to_json();
        let second = parse_text(&text, &path).unwrap();
        assert_eq!(first, second, "{}", path.display());
        assert_eq!(second.to_json(), text, "{}", path.display());
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = corpus_file("corpus.manifest.json");
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("report{i}.json"));
        let o = run(&[
            "verify",
            &manifest,
            "--suite",
            "iso112",
            "--out",
            &out.display().to_string(),
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        texts.push(fs::read_to_string(out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let v: serde_json::Value = serde_json::from_str(&texts[0]).unwrap();
    assert_eq!(v["suite"], "iso112");
    assert_eq!(v["truncation"], 3);
    let check = &v["checks"][0];
    for key in ["name", "status", "detail"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_twocat");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(
        status(&["validate", &corpus_file("corpus.manifest.json")]),
        Some(0)
    );
    let mutant = mutant_paths()[0].display().to_string();
    assert_eq!(status(&["verify", &mutant]), Some(1));
    assert_eq!(status(&["validate", "/nonexistent.2cat"]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
}

#[test]
fn unknown_suite_is_an_input_error() {
    let o = run(&["verify", &corpus_file("corpus.manifest.json"), "everything"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("everything"), "{}", o.stderr);
}

#[test]
fn budget_overrun_aborts_with_input_error() {
    let o = run(&[
        "verify",
        &corpus_file("corpus.manifest.json"),
        "iso112",
        "--budget",
        "5",
    ]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("budget"), "{}", o.stderr);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.2cat",
        "{\n  \"categories\": [\n    {\"name\": \"x\", \"objects\": [1]}\n  ]\n}\n",
    );
    let o = run(&["validate", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("bad.2cat:3:"), "{}", o.stderr);

    let path = write(dir.path(), "typo.2cat", "{\n  \"categoriez\": []\n}\n");
    let o = run(&["validate", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("typo.2cat:2:"), "{}", o.stderr);
}

#[test]
fn resolution_errors_point_at_the_offending_name() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus_dir().join("wa.2cat"), dir.path().join("wa.2cat")).unwrap();
    let text = "{\n  \"include\": [\"wa.2cat\"],\n  \"functors\": [\n    {\n      \"name\": \"G\",\n      \"source\": \"wa\",\n      \"target\": \"wa\",\n      \"objects\": {\"0\": \"0\"},\n      \"one_cells\": {\"1_0\": \"1_0\"},\n      \"two_cells\": {\"1_1_0\": \"1_1_0\"}\n    }\n  ]\n}\n";
    let path = write(dir.path(), "partial.manifest.json", text);
    let o = run(&["validate", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("non-total map"), "{}", o.stderr);
    assert!(o.stderr.contains("partial.manifest.json:"), "{}", o.stderr);
}

#[test]
fn includes_report_missing_files_and_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write(dir.path(), "m.2diag", "{\"include\": [\"nowhere.2cat\"]}\n");
    let o = run(&["validate", &missing]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("nowhere.2cat"), "{}", o.stderr);

    write(dir.path(), "a.2diag", "{\"include\": [\"b.2diag\"]}\n");
    let b = write(dir.path(), "b.2diag", "{\"include\": [\"a.2diag\"]}\n");
    let o = run(&["validate", &b]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("include cycle"), "{}", o.stderr);
}

#[test]
fn duplicate_names_across_includes_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus_dir().join("wa.2cat"), dir.path().join("wa.2cat")).unwrap();
    let wa = fs::read_to_string(corpus_dir().join("wa.2cat")).unwrap();
    let text = wa.replacen('{', "{\n  \"include\": [\"wa.2cat\"],", 1);
    let path = write(dir.path(), "twice.2cat", &text);
    let o = run(&["validate", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("duplicate category `wa`"), "{}", o.stderr);
}

#[test]
fn homology_of_a_slice() {
    let m = corpus_file("corpus.manifest.json");
    let o = run(&[
        "homology",
        &m,
        "--category",
        "wtc",
        "--slice",
        "b",
        "--degree",
        "1",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout.contains("H1 = 0 (rank 0, torsion none)"),
        "{}",
        o.stdout
    );

    let o = run(&["homology", &m, "--category", "wtc", "--degree", "0"]);
    assert!(o.stdout.contains("rank 1, torsion none"), "{}", o.stdout);

    let o = run(&["homology", &m, "--category", "wtc", "--degree", "4"]);
    assert_eq!(o.code, 2);
}

#[test]
fn construction_commands_report_level_sizes() {
    let m = corpus_file("corpus.manifest.json");
    let o = run(&["wbar", &m, "--category", "wtc", "--trunc", "4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout.contains("wbar/wtc/level 2: 7 simplices"),
        "{}",
        o.stdout
    );
    assert!(
        o.stdout.contains("PASS wbar/wtc/repackaging"),
        "{}",
        o.stdout
    );

    let o = run(&["nerve", &m, "--category", "wtc"]);
    assert_eq!(o.code, 2, "nerve needs a locally discrete input");

    for cmd in ["groth", "hocolim"] {
        let o = run(&[cmd, &m, "--diagram", "fibre"]);
        assert_eq!(o.code, 0, "{cmd}: {}", o.stderr);
    }
    let o = run(&["comma", &m, "--functor", "F", "--side", "under"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.report.unwrap().checks.len(), 2);
}

#[test]
fn commands_reject_invalid_inputs() {
    let mutant = mutant_paths()[0].display().to_string();
    let o = run(&["diag", &mutant]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("validate/category/wtc"), "{}", o.stderr);
}

#[test]
fn validate_reports_every_item() {
    let o = run(&["validate", &corpus_file("corpus.manifest.json")]);
    assert_eq!(o.code, 0);
    let r = o.report.unwrap();
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    assert!(r
        .checks
        .iter()
        .any(|c| c.name == "validate/morphism/representable-relabel"));
}

fn rename(spec: &CategorySpec, names: &HashMap<String, String>) -> CategorySpec {
    let r = |s: &String| names.get(s).cloned().unwrap_or_else(|| s.clone());
    let triple = |rows: &[(String, String, String)]| {
        rows.iter().map(|(a, b, c)| (r(a), r(b), r(c))).collect()
    };
    let pair = |rows: &[(String, String)]| rows.iter().map(|(a, b)| (r(a), r(b))).collect();
    CategorySpec {
        name: r(&spec.name),
        objects: spec.objects.iter().map(r).collect(),
        one_cells: triple(&spec.one_cells),
        two_cells: triple(&spec.two_cells),
        id1: pair(&spec.id1),
        id2: pair(&spec.id2),
        hcomp1: triple(&spec.hcomp1),
        vcomp2: triple(&spec.vcomp2),
        hcomp2: triple(&spec.hcomp2),
    }
}

proptest! {
    #[test]
    fn renamed_categories_round_trip(
        names in prop::collection::hash_set("[a-z0-9_\"\\\\ é∘→{}\\[\\],:]{1,6}", 12),
    ) {
        let spec = category_spec("wtc", &corpus::walking_two_cell());
        let mut old: Vec<String> = vec![spec.name.clone()];
        old.extend(spec.objects.iter().cloned());
        old.extend(spec.one_cells.iter().map(|c| c.0.clone()));
        old.extend(spec.two_cells.iter().map(|c| c.0.clone()));
        let map: HashMap<String, String> = old.into_iter().zip(names).collect();
        let file = ManifestFile { categories: vec![rename(&spec, &map)], ..ManifestFile::default() };
        let text = serialize(&file);
        let m = parse_text(&text, Path::new("renamed.2cat")).unwrap();
        prop_assert_eq!(&m.spec, &file);
        prop_assert_eq!(m.to_json(), text);
        let original = corpus::walking_two_cell();
        prop_assert_eq!(m.categories[0].value.counts(), original.counts());
    }
}
