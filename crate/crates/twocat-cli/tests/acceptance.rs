//! End-to-end acceptance run over the bundled corpus and its mutants.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits non-zero when any
//! criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use twocat::corpus;
use twocat::nerves::{wbar_double_nerve, wbar_repackaging};
use twocat::simplicial::{verify_iso, Truncation};
use twocat_cli::{run_args, Outcome, Report, Status};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn manifest() -> String {
    corpus_dir()
        .join("corpus.manifest.json")
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Outcome {
    run_args(args.iter().map(|s| s.to_string()))
}

fn verify(suite: &str, trunc: Option<&str>) -> Result<Report, String> {
    let m = manifest();
    let mut args = vec!["verify", m.as_str(), suite];
    if let Some(n) = trunc {
        args.extend(["--trunc", n]);
    }
    let out = run(&args);
    let report = out
        .report
        .ok_or_else(|| format!("no report: {}", out.stderr.trim()))?;
    if out.code != 0 {
        let first = report
            .failures()
            .next()
            .map(|c| format!("{}: {}", c.name, c.detail));
        return Err(format!("exit {}: {}", out.code, first.unwrap_or_default()));
    }
    Ok(report)
}

/// The detail of a passing check, or why it is missing.
fn passed<'a>(r: &'a Report, name: &str) -> Result<&'a str, String> {
    match r.checks.iter().find(|c| c.name == name) {
        Some(c) if c.status == Status::Pass => Ok(&c.detail),
        Some(c) => Err(format!("{name} did not pass: {}", c.detail)),
        None => Err(format!("{name} was not run")),
    }
}

fn all_passed(r: &Report, names: &[String]) -> Result<(), String> {
    names.iter().try_for_each(|n| passed(r, n).map(drop))
}

fn identity_suite() -> Result<String, String> {
    let start = Instant::now();
    let r = verify("identities", None)?;
    let elapsed = start.elapsed();
    let mut names = Vec::new();
    for c in ["pt", "wa", "wtc"] {
        names.push(format!("identities/validate/category/{c}"));
        for x in ["double_nerve", "diag_nerve", "wbar", "wbar_double_nerve"] {
            names.push(format!("identities/{x}/{c}"));
        }
    }
    for d in ["fibre", "representable"] {
        for x in ["grothendieck", "hocolim", "e", "hocolim_nerve"] {
            names.push(format!("identities/{x}/{d}"));
        }
    }
    all_passed(&r, &names)?;
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} checks in {:.2?}", r.checks.len(), elapsed))
}

fn repackaging() -> Result<String, String> {
    let r = verify("identities", Some("4"))?;
    if r.truncation != 4 {
        return Err(format!("ran at N = {}", r.truncation));
    }
    for c in ["pt", "wa", "wtc"] {
        passed(&r, &format!("identities/repackaging/{c}"))?;
    }
    let t = Truncation::new(4);
    let wtc = corpus::walking_two_cell();
    let f = wbar_repackaging(&wtc, t).map_err(|e| e.to_string())?;
    if !verify_iso(&f) {
        return Err("library repackaging map is not bijective".into());
    }
    let level2 = wbar_double_nerve(&wtc, t)
        .map_err(|e| e.to_string())?
        .len(2);
    if level2 != 7 {
        return Err(format!("WTC level 2 has {level2} simplices"));
    }
    Ok("bijective at N = 4, WTC level 2 has 7 simplices".into())
}

fn alexander_whitney() -> Result<String, String> {
    let r = verify("invariance", None)?;
    let names = [
        "aw/wtc",
        "aw/grothendieck/fibre",
        "aw/grothendieck/representable",
    ];
    all_passed(&r, &names.map(|n| format!("invariance/{n}")))?;
    Ok(names.join(", "))
}

fn iso_suites() -> Result<String, String> {
    for s in ["iso112", "iso114"] {
        let r = verify(s, Some("3"))?;
        all_passed(
            &r,
            &["fibre", "representable"].map(|d| format!("{s}/{s}/{d}")),
        )?;
    }
    Ok("both maps bijective on both diagrams at N = 3".into())
}

fn constant_levels() -> Result<String, String> {
    let r = verify("identities", None)?;
    passed(&r, "identities/constant_levels/wtc-over-wa").map(str::to_string)
}

fn retractions_and_oplax() -> Result<String, String> {
    let mut names: Vec<String> = [
        "projection/F/over",
        "projection/F/under",
        "section/F/representable",
    ]
    .map(String::from)
    .into();
    for m in [
        "fibre-collapse",
        "representable-collapse",
        "fibre-relabel",
        "representable-relabel",
    ] {
        names.push(format!("retraction/{m}"));
    }
    for s in ["retractions", "oplax"] {
        let r = verify(s, None)?;
        all_passed(
            &r,
            &names.iter().map(|n| format!("{s}/{n}")).collect::<Vec<_>>(),
        )?;
    }
    Ok(format!("{} identities and witnesses", names.len()))
}

fn slices() -> Result<String, String> {
    let r = verify("contractibility", None)?;
    let mut n = 0;
    for obj in ["a", "b"] {
        for side in ["over", "under"] {
            let detail = passed(&r, &format!("contractibility/slice/wtc/{obj}/{side}"))?;
            if detail != "H0 = Z, H1 = 0, H2 = 0" {
                return Err(format!("{obj}/{side}: {detail}"));
            }
            n += 1;
        }
    }
    let m = manifest();
    let out = run(&[
        "homology",
        &m,
        "--category",
        "wtc",
        "--slice",
        "a",
        "--side",
        "under",
        "--degree",
        "1",
    ]);
    if out.code != 0 || !out.stdout.contains("rank 0, torsion none") {
        return Err(format!("homology command: {}{}", out.stdout, out.stderr));
    }
    Ok(format!("{n} slices with the homology of a point"))
}

fn projection_invariance() -> Result<String, String> {
    let r = verify("invariance", None)?;
    all_passed(
        &r,
        &["over", "under"].map(|s| format!("invariance/projection/F/{s}")),
    )?;
    Ok("both sides".into())
}

fn morphism_invariance() -> Result<String, String> {
    let r = verify("invariance", None)?;
    all_passed(
        &r,
        &["fibre-relabel", "representable-relabel"].map(|m| format!("invariance/equivalence/{m}")),
    )?;
    Ok("both relabellings".into())
}

const MUTANTS: [(&str, &str); 10] = [
    ("01-hcomp1-unit", "identities/validate/category/wtc"),
    ("02-hcomp1-missing", "identities/validate/category/wtc"),
    ("03-hcomp2-wrong", "contractibility/validate/category/wtc"),
    ("04-vcomp2-malformed", "identities/validate/category/wtc"),
    ("05-functor-two-cell", "retractions/validate/functor/F"),
    (
        "06-diagram-functoriality",
        "iso114/validate/diagram/representable",
    ),
    (
        "07-morphism-naturality",
        "invariance/validate/morphism/fibre-relabel",
    ),
    ("08-wbar-face", "identities/wbar_double_nerve/wtc"),
    ("09-projection-witness", "oplax/projection/F/over"),
    (
        "10-diagram-two-cell",
        "iso112/validate/diagram/representable",
    ),
];

fn mutants() -> Result<String, String> {
    for (file, check) in MUTANTS {
        let path = corpus_dir()
            .join("mutants")
            .join(format!("{file}.manifest.json"));
        let out = run(&["verify", &path.display().to_string()]);
        if out.code == 0 {
            return Err(format!("{file} was not detected"));
        }
        let report = out.report.ok_or_else(|| format!("{file}: no report"))?;
        if !report.failures().any(|c| c.name == check) {
            return Err(format!("{file}: {check} did not fail"));
        }
        if !out.stdout.contains(&format!("first failure: {check}")) {
            return Err(format!("{file}: {check} is not named as the first failure"));
        }
    }
    Ok(format!("{} of {} detected", MUTANTS.len(), MUTANTS.len()))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("identity suite", identity_suite),
        ("double nerve repackaging", repackaging),
        ("Alexander-Whitney homology isomorphism", alexander_whitney),
        ("hocolim isomorphisms", iso_suites),
        ("constant diagram levels", constant_levels),
        ("retractions and oplax witnesses", retractions_and_oplax),
        ("slices are acyclic", slices),
        ("projection from the homotopy fibres", projection_invariance),
        ("invariance under equivalences", morphism_invariance),
        ("mutants detected", mutants),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
