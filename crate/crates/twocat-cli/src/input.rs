//! Reading manifests from disk, following includes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use crate::format::ManifestFile;

/// A problem with the input files, located as precisely as the format allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub file: PathBuf,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(file: &Path, message: impl Into<String>) -> Self {
        Self {
            file: file.to_path_buf(),
            line: None,
            column: None,
            message: message.into(),
        }
    }

    pub fn at(mut self, position: Option<(usize, usize)>) -> Self {
        if let Some((line, column)) = position {
            self.line = Some(line);
            self.column = Some(column);
        }
        self
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file.display())?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Where each named item was defined, and the text of every file read.
#[derive(Clone, Debug, Default)]
pub struct Origins {
    items: BTreeMap<(&'static str, String), PathBuf>,
    texts: BTreeMap<PathBuf, String>,
}

impl Origins {
    pub fn file_of(&self, kind: &'static str, name: &str) -> Option<&Path> {
        self.items
            .get(&(kind, name.to_string()))
            .map(PathBuf::as_path)
    }

    /// Line and column of the first quoted occurrence of `needle` after the
    /// definition of `item` in `file`.
    pub fn locate(&self, file: &Path, item: &str, needle: &str) -> Option<(usize, usize)> {
        let text = self.texts.get(file)?;
        let start = text.find(&format!("\"{item}\"")).unwrap_or(0);
        position(text, start, needle)
    }

    /// An error about `item` of the given kind, pointing at `needle`.
    pub fn error(
        &self,
        kind: &'static str,
        item: &str,
        needle: &str,
        message: String,
    ) -> InputError {
        let file = self.file_of(kind, item).unwrap_or(Path::new("<manifest>"));
        InputError::new(file, message).at(self.locate(file, item, needle))
    }
}

/// A manifest with every include merged in, plus where each item came from.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: ManifestFile,
    pub origins: Origins,
}

pub fn load(path: &Path) -> Result<Loaded, Vec<InputError>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| vec![InputError::new(path, format!("cannot read: {e}"))])?;
    load_text(&text, path)
}

/// Parses `text` as if it were the contents of `path`; includes are resolved
/// relative to `path`.
pub fn load_text(text: &str, path: &Path) -> Result<Loaded, Vec<InputError>> {
    let mut loader = Loader::default();
    let top = parse(text, path).map_err(|e| vec![e])?;
    let (truncation, suites) = (top.truncation, top.suites.clone());
    loader.visit(path.to_path_buf(), text.to_string(), top, &mut Vec::new());
    if !loader.errors.is_empty() {
        return Err(loader.errors);
    }
    let mut spec = loader.merged;
    spec.truncation = truncation;
    spec.suites = suites;
    Ok(Loaded {
        spec,
        origins: loader.origins,
    })
}

/// Line and column of the first quoted `needle` at or after byte `start`.
fn position(text: &str, start: usize, needle: &str) -> Option<(usize, usize)> {
    let offset = text[start..].find(&format!("\"{needle}\""))? + start;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

fn parse(text: &str, path: &Path) -> Result<ManifestFile, InputError> {
    serde_json::from_str(text).map_err(|e| {
        InputError::new(path, format!("parse error: {e}")).at(Some((e.line(), e.column())))
    })
}

#[derive(Default)]
struct Loader {
    merged: ManifestFile,
    origins: Origins,
    visited: HashSet<PathBuf>,
    errors: Vec<InputError>,
}

impl Loader {
    fn visit(&mut self, path: PathBuf, text: String, file: ManifestFile, stack: &mut Vec<PathBuf>) {
        let key = std::fs::canonicalize(&path).unwrap_or_else(|_| path.clone());
        if !self.visited.insert(key.clone()) {
            return;
        }
        stack.push(key);
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        for inc in &file.include {
            let child = dir.join(inc);
            let child_key = std::fs::canonicalize(&child).unwrap_or_else(|_| child.clone());
            if stack.contains(&child_key) {
                let e = InputError::new(&path, format!("include cycle through `{inc}`"));
                self.errors.push(e.at(position(&text, 0, inc)));
                continue;
            }
            match std::fs::read_to_string(&child) {
                Ok(t) => match parse(&t, &child) {
                    Ok(f) => self.visit(child, t, f, stack),
                    Err(e) => self.errors.push(e),
                },
                Err(e) => {
                    let err = InputError::new(&path, format!("cannot read include `{inc}`: {e}"));
                    self.errors.push(err.at(position(&text, 0, inc)));
                }
            }
        }
        stack.pop();
        self.origins.texts.insert(path.clone(), text);
        self.absorb(&path, file);
    }

    fn claim(&mut self, kind: &'static str, name: &str, path: &Path) {
        let key = (kind, name.to_string());
        if let Some(previous) = self.origins.items.get(&key) {
            let e = InputError::new(
                path,
                format!(
                    "duplicate {kind} `{name}`, already defined in {}",
                    previous.display()
                ),
            );
            let pos = self.origins.locate(path, name, name);
            self.errors.push(e.at(pos));
        } else {
            self.origins.items.insert(key, path.to_path_buf());
        }
    }

    fn absorb(&mut self, path: &Path, file: ManifestFile) {
        for c in &file.categories {
            self.claim("category", &c.name, path);
        }
        for f in &file.functors {
            self.claim("functor", &f.name, path);
        }
        for d in &file.diagrams {
            self.claim("diagram", &d.name, path);
        }
        for m in &file.morphisms {
            self.claim("morphism", &m.name, path);
        }
        let m = &mut self.merged;
        m.categories.extend(file.categories);
        m.functors.extend(file.functors);
        m.diagrams.extend(file.diagrams);
        m.morphisms.extend(file.morphisms);
        m.faults.extend(file.faults);
        let v = &mut m.verify;
        append_new(&mut v.categories, file.verify.categories);
        append_new(&mut v.diagrams, file.verify.diagrams);
        append_new(&mut v.functors, file.verify.functors);
        append_new(&mut v.sections, file.verify.sections);
        append_new(&mut v.retractions, file.verify.retractions);
        append_new(&mut v.equivalences, file.verify.equivalences);
        append_new(&mut v.constant, file.verify.constant);
    }
}

fn append_new<T: PartialEq>(into: &mut Vec<T>, items: Vec<T>) {
    for x in items {
        if !into.contains(&x) {
            into.push(x);
        }
    }
}
