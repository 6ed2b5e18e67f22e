//! The on-disk manifest format.
//!
//! Every file, whatever its extension (`.2cat`, `.2diag`, `.manifest.json`),
//! is one JSON document with the shape of [`ManifestFile`]. Maps use
//! `BTreeMap` so that serialization is canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

fn is_default<T: Default + PartialEq>(x: &T) -> bool {
    *x == T::default()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestFile {
    /// Paths of further manifests, relative to the including file.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub include: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Suites run by `verify` when none is named on the command line.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategorySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<DiagramSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub verify: VerifySpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faults: Vec<FaultSpec>,
}

/// A 2-category as cell lists and composition tables.
///
/// Composition rows are `[later, earlier, composite]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub name: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub one_cells: Vec<(String, String, String)>,
    #[serde(default)]
    pub two_cells: Vec<(String, String, String)>,
    #[serde(default)]
    pub id1: Vec<(String, String)>,
    #[serde(default)]
    pub id2: Vec<(String, String)>,
    #[serde(default)]
    pub hcomp1: Vec<(String, String, String)>,
    #[serde(default)]
    pub vcomp2: Vec<(String, String, String)>,
    #[serde(default)]
    pub hcomp2: Vec<(String, String, String)>,
}

/// The action of a 2-functor on cells, by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellMapSpec {
    #[serde(default)]
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub one_cells: BTreeMap<String, String>,
    #[serde(default)]
    pub two_cells: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub one_cells: BTreeMap<String, String>,
    #[serde(default)]
    pub two_cells: BTreeMap<String, String>,
}

impl FunctorSpec {
    pub fn cells(&self) -> CellMapSpec {
        CellMapSpec {
            objects: self.objects.clone(),
            one_cells: self.one_cells.clone(),
            two_cells: self.two_cells.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceSpec {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Over,
    Under,
}

/// A 2-diagram over a named base.
///
/// `fibres` names a 2-category per base object, `on_one` gives the transport
/// functor of every base 1-cell and `on_two` the components of the
/// transformation of every base 2-cell, keyed by objects of its source fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub name: String,
    pub base: String,
    pub variance: VarianceSpec,
    pub fibres: BTreeMap<String, String>,
    #[serde(default)]
    pub on_one: BTreeMap<String, CellMapSpec>,
    #[serde(default)]
    pub on_two: BTreeMap<String, BTreeMap<String, String>>,
}

/// A morphism of diagrams with one component 2-functor per base object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, CellMapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionSpec {
    pub functor: String,
    pub diagram: String,
}

/// What the verification suites run on. Empty `categories`, `diagrams` and
/// `functors` lists mean every item of that kind in the manifest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub retractions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalences: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constant: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Nerve,
    DoubleNerve,
    DiagNerve,
    Wbar,
    WbarDoubleNerve,
    E,
    HocolimNerve,
}

impl Construction {
    pub fn label(self) -> &'static str {
        match self {
            Construction::Nerve => "nerve",
            Construction::DoubleNerve => "double_nerve",
            Construction::DiagNerve => "diag_nerve",
            Construction::Wbar => "wbar",
            Construction::WbarDoubleNerve => "wbar_double_nerve",
            Construction::E => "e",
            Construction::HocolimNerve => "hocolim_nerve",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Projection,
    Retraction,
    Section,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessPart {
    Component,
    Naturality,
}

/// A deliberate corruption of computed data, used to exercise the checks.
///
/// Without `value` the entry is moved to the next index (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FaultSpec {
    Face {
        construction: Construction,
        target: String,
        level: Vec<usize>,
        #[serde(default)]
        direction: usize,
        face: usize,
        simplex: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<usize>,
    },
    Witness {
        witness: WitnessKind,
        source: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side: Option<SideSpec>,
        part: WitnessPart,
        index: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<usize>,
    },
}
