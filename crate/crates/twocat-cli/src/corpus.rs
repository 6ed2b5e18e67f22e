//! The bundled corpus, written out as manifest files.

use twocat::category::{TwoDiagram, Variance};
use twocat::corpus;

use crate::format::{ManifestFile, SectionSpec, VerifySpec};
use crate::resolve::{category_spec, diagram_spec, functor_spec, morphism_spec, serialize};

fn only_categories(list: &[(&str, &twocat::category::TwoCategory)]) -> ManifestFile {
    ManifestFile {
        categories: list.iter().map(|(n, c)| category_spec(n, c)).collect(),
        ..ManifestFile::default()
    }
}

fn includes(files: &[&str]) -> Vec<String> {
    files.iter().map(|s| s.to_string()).collect()
}

/// `(file name, contents)` for every bundled corpus file.
pub fn files() -> Vec<(String, String)> {
    let pt = corpus::pt();
    let wa = corpus::walking_arrow();
    let wtc = corpus::walking_two_cell();
    let f = corpus::arrow_to_two_cell();
    let fibre = corpus::covariant_diagram();
    let representable = corpus::contravariant_diagram();
    let hom_names = ["wtc(a,b)", "wtc(b,b)"];

    let fibre_doc = ManifestFile {
        include: includes(&["wa.2cat", "wtc.2cat"]),
        diagrams: vec![diagram_spec("fibre", &fibre, "wa", &["wa", "wtc"])],
        ..ManifestFile::default()
    };
    let mut representable_doc = only_categories(&[
        (hom_names[0], &*representable.fibres[0]),
        (hom_names[1], &*representable.fibres[1]),
    ]);
    representable_doc.include = includes(&["wtc.2cat"]);
    representable_doc.diagrams = vec![diagram_spec(
        "representable",
        &representable,
        "wtc",
        &hom_names,
    )];

    let constant = corpus::constant_diagram(&wa, &wtc, Variance::Covariant);
    let mut main = ManifestFile {
        include: includes(&[
            "pt.2cat",
            "wa.2cat",
            "wtc.2cat",
            "fibre-diagram.2diag",
            "representable.2diag",
        ]),
        suites: vec!["all".to_string()],
        functors: vec![functor_spec("F", "wa", "wtc", &f)],
        ..ManifestFile::default()
    };
    main.diagrams.push(diagram_spec(
        "wtc-over-wa",
        &constant,
        "wa",
        &["wtc", "wtc"],
    ));
    let entries: [(&str, &str, &std::sync::Arc<TwoDiagram>, [&str; 2]); 2] = [
        ("fibre", "wa", &fibre, ["wa", "wtc"]),
        ("representable", "wtc", &representable, hom_names),
    ];
    for (name, base, d, fibre_names) in entries {
        let collapse = corpus::collapse(d);
        let collapsed = format!("{name}-collapsed");
        main.diagrams.push(diagram_spec(
            &collapsed,
            &collapse.target,
            base,
            &["pt", "pt"],
        ));
        main.morphisms.push(morphism_spec(
            &format!("{name}-collapse"),
            name,
            &collapsed,
            &collapse,
        ));

        let relabel = corpus::relabelled(d);
        let copies: Vec<String> = fibre_names.iter().map(|n| format!("{n}'")).collect();
        for (copy, cat) in copies.iter().zip(&relabel.target.fibres) {
            if !main.categories.iter().any(|c| &c.name == copy) {
                main.categories.push(category_spec(copy, cat));
            }
        }
        let relabelled = format!("{name}-relabelled");
        let copy_refs: Vec<&str> = copies.iter().map(String::as_str).collect();
        main.diagrams
            .push(diagram_spec(&relabelled, &relabel.target, base, &copy_refs));
        main.morphisms.push(morphism_spec(
            &format!("{name}-relabel"),
            name,
            &relabelled,
            &relabel,
        ));
    }
    main.verify = VerifySpec {
        categories: includes(&["pt", "wa", "wtc"]),
        diagrams: includes(&["fibre", "representable"]),
        functors: includes(&["F"]),
        sections: vec![SectionSpec {
            functor: "F".to_string(),
            diagram: "representable".to_string(),
        }],
        retractions: includes(&[
            "fibre-collapse",
            "representable-collapse",
            "fibre-relabel",
            "representable-relabel",
        ]),
        equivalences: includes(&["fibre-relabel", "representable-relabel"]),
        constant: includes(&["wtc-over-wa"]),
    };

    vec![
        (
            "pt.2cat".to_string(),
            serialize(&only_categories(&[("pt", &*pt)])),
        ),
        (
            "wa.2cat".to_string(),
            serialize(&only_categories(&[("wa", &*wa)])),
        ),
        (
            "wtc.2cat".to_string(),
            serialize(&only_categories(&[("wtc", &*wtc)])),
        ),
        ("fibre-diagram.2diag".to_string(), serialize(&fibre_doc)),
        (
            "representable.2diag".to_string(),
            serialize(&representable_doc),
        ),
        ("corpus.manifest.json".to_string(), serialize(&main)),
    ]
}

/// Writes the corpus into `dir`, returning the paths written.
pub fn export(dir: &std::path::Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, text) in files() {
        let path = dir.join(name);
        std::fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}
