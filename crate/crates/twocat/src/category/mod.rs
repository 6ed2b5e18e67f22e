//! Finite strict 2-categories given by complete composition tables, together
//! with 2-functors, transformations, modifications and 2-diagrams.

mod build;
mod constructions;
mod diagram;
mod maps;
mod validate;

use std::collections::HashMap;

use thiserror::Error;

pub use build::{assemble, Assembly, BuildError, CellKeys};
pub use constructions::{hom_category, opposite, product, relabel, terminal, HomCategory, Product};
pub use diagram::{
    check_diagram, check_diagram_modification, check_diagram_morphism, DiagramModification,
    DiagramMorphism, TwoDiagram, Variance,
};
pub use maps::{
    check_cell_map, check_modification, check_oplax, check_two_functor, check_two_natural, CellMap,
    Direction, Modification, OplaxTransformation, TwoFunctor, TwoNaturalTransformation,
};
pub use validate::validate;

/// Index of an object, 1-cell or 2-cell inside its [`TwoCategory`].
pub type CellId = usize;

/// A 1-cell or 2-cell with its boundary, expressed as indices one level down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub name: String,
    pub source: CellId,
    pub target: CellId,
}

/// Name-level description of a 2-category, the form used for input and output.
///
/// Composition entries are `(later, earlier, composite)`, so `(g, f, h)` in
/// `hcomp1` states `g ∘ f = h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tables {
    pub objects: Vec<String>,
    pub one_cells: Vec<(String, String, String)>,
    pub two_cells: Vec<(String, String, String)>,
    pub id1: Vec<(String, String)>,
    pub id2: Vec<(String, String)>,
    pub hcomp1: Vec<(String, String, String)>,
    pub vcomp2: Vec<(String, String, String)>,
    pub hcomp2: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("unknown identifier `{name}` in {table}")]
    Unknown { table: &'static str, name: String },
    #[error("conflicting entries in {table} for ({left}, {right})")]
    Conflict {
        table: &'static str,
        left: String,
        right: String,
    },
}

/// A finite strict 2-category.
///
/// Cells are addressed by dense indices; names are kept for display and for
/// serialization. Composition tables are keyed `(later, earlier)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCategory {
    objects: Vec<String>,
    one_cells: Vec<Cell>,
    two_cells: Vec<Cell>,
    id1: Vec<Option<CellId>>,
    id2: Vec<Option<CellId>>,
    hcomp1: HashMap<(CellId, CellId), CellId>,
    vcomp2: HashMap<(CellId, CellId), CellId>,
    hcomp2: HashMap<(CellId, CellId), CellId>,
    object_index: HashMap<String, CellId>,
    one_index: HashMap<String, CellId>,
    two_index: HashMap<String, CellId>,
    one_from: Vec<Vec<CellId>>,
    two_from: Vec<Vec<CellId>>,
}

fn index_names<'a>(
    names: impl Iterator<Item = &'a String>,
) -> Result<HashMap<String, CellId>, TableError> {
    let mut index = HashMap::new();
    for (i, n) in names.enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(TableError::Duplicate(n.clone()));
        }
    }
    Ok(index)
}

impl TwoCategory {
    /// Assembles a 2-category from raw index data. Table entries are taken as
    /// given; [`validate`] reports any that are ill-typed.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        objects: Vec<String>,
        one_cells: Vec<Cell>,
        two_cells: Vec<Cell>,
        id1: Vec<Option<CellId>>,
        id2: Vec<Option<CellId>>,
        hcomp1: HashMap<(CellId, CellId), CellId>,
        vcomp2: HashMap<(CellId, CellId), CellId>,
        hcomp2: HashMap<(CellId, CellId), CellId>,
    ) -> Result<Self, TableError> {
        let object_index = index_names(objects.iter())?;
        let one_index = index_names(one_cells.iter().map(|c| &c.name))?;
        let two_index = index_names(two_cells.iter().map(|c| &c.name))?;
        if let Some(n) = one_cells
            .iter()
            .map(|c| &c.name)
            .find(|n| object_index.contains_key(*n))
        {
            return Err(TableError::Duplicate(n.clone()));
        }
        if let Some(n) = two_cells
            .iter()
            .map(|c| &c.name)
            .find(|n| object_index.contains_key(*n) || one_index.contains_key(*n))
        {
            return Err(TableError::Duplicate(n.clone()));
        }
        let mut one_from = vec![Vec::new(); objects.len()];
        for (i, c) in one_cells.iter().enumerate() {
            one_from[c.source].push(i);
        }
        let mut two_from = vec![Vec::new(); one_cells.len()];
        for (i, c) in two_cells.iter().enumerate() {
            two_from[c.source].push(i);
        }
        Ok(Self {
            objects,
            one_cells,
            two_cells,
            id1,
            id2,
            hcomp1,
            vcomp2,
            hcomp2,
            object_index,
            one_index,
            two_index,
            one_from,
            two_from,
        })
    }

    /// Builds a 2-category from name-level tables.
    pub fn from_tables(t: &Tables) -> Result<Self, TableError> {
        let object_index = index_names(t.objects.iter())?;
        let obj = |table, n: &String| {
            object_index
                .get(n)
                .copied()
                .ok_or_else(|| TableError::Unknown {
                    table,
                    name: n.clone(),
                })
        };
        let mut one_cells = Vec::new();
        for (n, s, d) in &t.one_cells {
            one_cells.push(Cell {
                name: n.clone(),
                source: obj("one_cells", s)?,
                target: obj("one_cells", d)?,
            });
        }
        let one_index = index_names(one_cells.iter().map(|c| &c.name))?;
        let one = |table, n: &String| {
            one_index
                .get(n)
                .copied()
                .ok_or_else(|| TableError::Unknown {
                    table,
                    name: n.clone(),
                })
        };
        let mut two_cells = Vec::new();
        for (n, s, d) in &t.two_cells {
            two_cells.push(Cell {
                name: n.clone(),
                source: one("two_cells", s)?,
                target: one("two_cells", d)?,
            });
        }
        let two_index = index_names(two_cells.iter().map(|c| &c.name))?;
        let two = |table, n: &String| {
            two_index
                .get(n)
                .copied()
                .ok_or_else(|| TableError::Unknown {
                    table,
                    name: n.clone(),
                })
        };
        let mut id1 = vec![None; t.objects.len()];
        for (o, f) in &t.id1 {
            let slot = &mut id1[obj("id1", o)?];
            let v = one("id1", f)?;
            if slot.is_some_and(|w| w != v) {
                return Err(TableError::Conflict {
                    table: "id1",
                    left: o.clone(),
                    right: String::new(),
                });
            }
            *slot = Some(v);
        }
        let mut id2 = vec![None; one_cells.len()];
        for (f, a) in &t.id2 {
            let slot = &mut id2[one("id2", f)?];
            let v = two("id2", a)?;
            if slot.is_some_and(|w| w != v) {
                return Err(TableError::Conflict {
                    table: "id2",
                    left: f.clone(),
                    right: String::new(),
                });
            }
            *slot = Some(v);
        }
        fn fill(
            table: &'static str,
            rows: &[(String, String, String)],
            look: &dyn Fn(&'static str, &String) -> Result<CellId, TableError>,
        ) -> Result<HashMap<(CellId, CellId), CellId>, TableError> {
            let mut map = HashMap::new();
            for (l, r, v) in rows {
                let key = (look(table, l)?, look(table, r)?);
                let val = look(table, v)?;
                if map.insert(key, val).is_some_and(|w| w != val) {
                    return Err(TableError::Conflict {
                        table,
                        left: l.clone(),
                        right: r.clone(),
                    });
                }
            }
            Ok(map)
        }
        let hcomp1 = fill("hcomp1", &t.hcomp1, &one)?;
        let vcomp2 = fill("vcomp2", &t.vcomp2, &two)?;
        let hcomp2 = fill("hcomp2", &t.hcomp2, &two)?;
        Self::from_parts(
            t.objects.clone(),
            one_cells,
            two_cells,
            id1,
            id2,
            hcomp1,
            vcomp2,
            hcomp2,
        )
    }

    /// Builds a 2-category in which every composite is forced by the unit
    /// laws: identities are named `1_x` and no two non-identity cells compose.
    ///
    /// Fails if two non-identity cells turn out to be composable.
    pub fn unit_closed(
        objects: &[&str],
        one_cells: &[(&str, &str, &str)],
        two_cells: &[(&str, &str, &str)],
    ) -> Result<Self, TableError> {
        let mut t = Tables {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            ..Tables::default()
        };
        let mut ones: Vec<(String, String, String)> = Vec::new();
        for o in objects {
            let n = format!("1_{o}");
            t.id1.push((o.to_string(), n.clone()));
            ones.push((n, o.to_string(), o.to_string()));
        }
        ones.extend(
            one_cells
                .iter()
                .map(|(n, s, d)| (n.to_string(), s.to_string(), d.to_string())),
        );
        let mut twos: Vec<(String, String, String)> = Vec::new();
        for (n, _, _) in &ones {
            let i = format!("1_{n}");
            t.id2.push((n.clone(), i.clone()));
            twos.push((i, n.clone(), n.clone()));
        }
        twos.extend(
            two_cells
                .iter()
                .map(|(n, s, d)| (n.to_string(), s.to_string(), d.to_string())),
        );
        let n_ids = objects.len();
        let unit_of = |o: &str| format!("1_{o}");
        for (gi, (g, gs, _)) in ones.iter().enumerate() {
            for (fi, (f, _, ft)) in ones.iter().enumerate() {
                if ft != gs {
                    continue;
                }
                let h = if gi < n_ids {
                    f.clone()
                } else if fi < n_ids {
                    g.clone()
                } else {
                    return Err(TableError::Conflict {
                        table: "hcomp1",
                        left: g.clone(),
                        right: f.clone(),
                    });
                };
                t.hcomp1.push((g.clone(), f.clone(), h));
            }
        }
        let one_of = |n: &str| ones.iter().find(|(m, _, _)| m == n).cloned().unwrap();
        let is_id2 = |n: &str| t.id2.iter().any(|(_, i)| i == n);
        let unit2 = |o: &str| format!("1_{}", unit_of(o));
        for (b, bs, _) in &twos {
            for (a, as_, at) in &twos {
                if at == bs {
                    let h = if is_id2(b) {
                        a.clone()
                    } else if is_id2(a) {
                        b.clone()
                    } else {
                        return Err(TableError::Conflict {
                            table: "vcomp2",
                            left: b.clone(),
                            right: a.clone(),
                        });
                    };
                    t.vcomp2.push((b.clone(), a.clone(), h));
                }
                let (_, x, y) = one_of(as_);
                let (_, y2, _) = one_of(bs);
                if y == y2 {
                    let h = if *b == unit2(&y) {
                        a.clone()
                    } else if *a == unit2(&x) {
                        b.clone()
                    } else {
                        return Err(TableError::Conflict {
                            table: "hcomp2",
                            left: b.clone(),
                            right: a.clone(),
                        });
                    };
                    t.hcomp2.push((b.clone(), a.clone(), h));
                }
            }
        }
        t.one_cells = ones;
        t.two_cells = twos;
        Self::from_tables(&t)
    }

    /// Name-level tables in a canonical order (cells by index, entries sorted).
    pub fn tables(&self) -> Tables {
        let sorted = |m: &HashMap<(CellId, CellId), CellId>, names: &dyn Fn(CellId) -> String| {
            let mut rows: Vec<_> = m.iter().map(|(&(l, r), &v)| (l, r, v)).collect();
            rows.sort();
            rows.into_iter()
                .map(|(l, r, v)| (names(l), names(r), names(v)))
                .collect()
        };
        let one_name = |i: CellId| self.one_cells[i].name.clone();
        let two_name = |i: CellId| self.two_cells[i].name.clone();
        Tables {
            objects: self.objects.clone(),
            one_cells: self
                .one_cells
                .iter()
                .map(|c| {
                    (
                        c.name.clone(),
                        self.objects[c.source].clone(),
                        self.objects[c.target].clone(),
                    )
                })
                .collect(),
            two_cells: self
                .two_cells
                .iter()
                .map(|c| (c.name.clone(), one_name(c.source), one_name(c.target)))
                .collect(),
            id1: self
                .id1
                .iter()
                .enumerate()
                .filter_map(|(o, f)| f.map(|f| (self.objects[o].clone(), one_name(f))))
                .collect(),
            id2: self
                .id2
                .iter()
                .enumerate()
                .filter_map(|(f, a)| a.map(|a| (one_name(f), two_name(a))))
                .collect(),
            hcomp1: sorted(&self.hcomp1, &one_name),
            vcomp2: sorted(&self.vcomp2, &two_name),
            hcomp2: sorted(&self.hcomp2, &two_name),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn one_cell_count(&self) -> usize {
        self.one_cells.len()
    }

    pub fn two_cell_count(&self) -> usize {
        self.two_cells.len()
    }

    /// `(objects, 1-cells, 2-cells)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.objects.len(),
            self.one_cells.len(),
            self.two_cells.len(),
        )
    }

    pub fn object_name(&self, o: CellId) -> &str {
        &self.objects[o]
    }

    pub fn one_cell(&self, f: CellId) -> &Cell {
        &self.one_cells[f]
    }

    pub fn two_cell(&self, a: CellId) -> &Cell {
        &self.two_cells[a]
    }

    pub fn one_cells(&self) -> &[Cell] {
        &self.one_cells
    }

    pub fn two_cells(&self) -> &[Cell] {
        &self.two_cells
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_by_name(&self, n: &str) -> Option<CellId> {
        self.object_index.get(n).copied()
    }

    pub fn one_cell_by_name(&self, n: &str) -> Option<CellId> {
        self.one_index.get(n).copied()
    }

    pub fn two_cell_by_name(&self, n: &str) -> Option<CellId> {
        self.two_index.get(n).copied()
    }

    pub fn src1(&self, f: CellId) -> CellId {
        self.one_cells[f].source
    }

    pub fn tgt1(&self, f: CellId) -> CellId {
        self.one_cells[f].target
    }

    pub fn src2(&self, a: CellId) -> CellId {
        self.two_cells[a].source
    }

    pub fn tgt2(&self, a: CellId) -> CellId {
        self.two_cells[a].target
    }

    /// 1-cells with the given source object.
    pub fn one_cells_from(&self, o: CellId) -> &[CellId] {
        &self.one_from[o]
    }

    /// 2-cells with the given source 1-cell.
    pub fn two_cells_from(&self, f: CellId) -> &[CellId] {
        &self.two_from[f]
    }

    /// 1-cells `a → b`, in index order.
    pub fn hom(&self, a: CellId, b: CellId) -> Vec<CellId> {
        self.one_from[a]
            .iter()
            .copied()
            .filter(|&f| self.tgt1(f) == b)
            .collect()
    }

    /// 2-cells between 1-cells `a → b`, in index order.
    pub fn hom2(&self, a: CellId, b: CellId) -> Vec<CellId> {
        self.hom(a, b)
            .into_iter()
            .flat_map(|f| self.two_from[f].iter().copied())
            .collect()
    }

    pub fn try_id1(&self, o: CellId) -> Option<CellId> {
        self.id1[o]
    }

    pub fn try_id2(&self, f: CellId) -> Option<CellId> {
        self.id2[f]
    }

    pub fn try_comp1(&self, g: CellId, f: CellId) -> Option<CellId> {
        self.hcomp1.get(&(g, f)).copied()
    }

    pub fn try_vcomp(&self, b: CellId, a: CellId) -> Option<CellId> {
        self.vcomp2.get(&(b, a)).copied()
    }

    pub fn try_hcomp(&self, b: CellId, a: CellId) -> Option<CellId> {
        self.hcomp2.get(&(b, a)).copied()
    }

    /// Identity 1-cell. Panics on a category that does not pass [`validate`].
    pub fn id1(&self, o: CellId) -> CellId {
        self.id1[o].unwrap_or_else(|| panic!("no identity 1-cell on `{}`", self.objects[o]))
    }

    pub fn id2(&self, f: CellId) -> CellId {
        self.id2[f].unwrap_or_else(|| panic!("no identity 2-cell on `{}`", self.one_cells[f].name))
    }

    /// `g ∘ f`.
    pub fn comp1(&self, g: CellId, f: CellId) -> CellId {
        self.try_comp1(g, f).unwrap_or_else(|| {
            panic!(
                "no composite {} ∘ {}",
                self.one_cells[g].name, self.one_cells[f].name
            )
        })
    }

    /// `β · α`.
    pub fn vcomp(&self, b: CellId, a: CellId) -> CellId {
        self.try_vcomp(b, a).unwrap_or_else(|| {
            panic!(
                "no vertical composite {} · {}",
                self.two_cells[b].name, self.two_cells[a].name
            )
        })
    }

    /// `β ∘ α`.
    pub fn hcomp(&self, b: CellId, a: CellId) -> CellId {
        self.try_hcomp(b, a).unwrap_or_else(|| {
            panic!(
                "no horizontal composite {} ∘ {}",
                self.two_cells[b].name, self.two_cells[a].name
            )
        })
    }

    /// `1_g ∘ α`.
    pub fn whisker_left(&self, g: CellId, a: CellId) -> CellId {
        self.hcomp(self.id2(g), a)
    }

    /// `β ∘ 1_f`.
    pub fn whisker_right(&self, b: CellId, f: CellId) -> CellId {
        self.hcomp(b, self.id2(f))
    }

    /// Identity 2-cell on the identity 1-cell of `o`.
    pub fn id2_of_object(&self, o: CellId) -> CellId {
        self.id2(self.id1(o))
    }

    pub fn is_identity_two_cell(&self, a: CellId) -> bool {
        self.id2[self.src2(a)] == Some(a)
    }

    /// True when every 2-cell is an identity, so the 2-category is a category.
    pub fn is_locally_discrete(&self) -> bool {
        (0..self.two_cells.len()).all(|a| self.is_identity_two_cell(a))
    }

    pub(crate) fn hcomp1_table(&self) -> &HashMap<(CellId, CellId), CellId> {
        &self.hcomp1
    }

    pub(crate) fn vcomp2_table(&self) -> &HashMap<(CellId, CellId), CellId> {
        &self.vcomp2
    }

    pub(crate) fn hcomp2_table(&self) -> &HashMap<(CellId, CellId), CellId> {
        &self.hcomp2
    }

    /// Overwrites one table entry, bypassing every check. Meant for fault
    /// injection in tests and mutant fixtures.
    pub fn corrupt_hcomp1(&mut self, g: CellId, f: CellId, value: CellId) {
        self.hcomp1.insert((g, f), value);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_closed_builds_walking_two_cell() {
        let c = TwoCategory::unit_closed(
            &["a", "b"],
            &[("f", "a", "b"), ("g", "a", "b")],
            &[("phi", "f", "g")],
        )
        .unwrap();
        assert_eq!(c.counts(), (2, 4, 5));
        assert!(validate(&c).is_empty(), "{}", validate(&c));
    }

    #[test]
    fn tables_round_trip() {
        let c = TwoCategory::unit_closed(&["0", "1"], &[("e", "0", "1")], &[]).unwrap();
        let again = TwoCategory::from_tables(&c.tables()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let t = Tables {
            objects: vec!["x".into(), "x".into()],
            ..Tables::default()
        };
        assert_eq!(
            TwoCategory::from_tables(&t),
            Err(TableError::Duplicate("x".into()))
        );
    }
}
