//! Assembly of derived 2-categories from structured cell keys.
//!
//! Products, hom categories, Grothendieck constructions, comma 2-categories
//! and the levels of a homotopy colimit all describe their cells as tuples of
//! cells of simpler 2-categories. [`assemble`] enumerates such keys into a
//! [`TwoCategory`] and keeps the key/index correspondence.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use thiserror::Error;

use super::{Cell, CellId, TwoCategory};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("{0} produced a cell outside the enumeration")]
    Missing(String),
    #[error("duplicate cell key for {0}")]
    DuplicateKey(String),
}

/// Describes the cells of a derived 2-category by keys and how keys compose.
///
/// Keys must determine their cell, including its boundary.
pub trait CellKeys {
    type Obj: Clone + Eq + Hash;
    type One: Clone + Eq + Hash;
    type Two: Clone + Eq + Hash;

    fn one_boundary(&self, f: &Self::One) -> (Self::Obj, Self::Obj);
    fn two_boundary(&self, a: &Self::Two) -> (Self::One, Self::One);
    fn id1(&self, x: &Self::Obj) -> Self::One;
    fn id2(&self, f: &Self::One) -> Self::Two;
    /// `g ∘ f`.
    fn comp1(&self, g: &Self::One, f: &Self::One) -> Self::One;
    /// `β · α`.
    fn vcomp(&self, b: &Self::Two, a: &Self::Two) -> Self::Two;
    /// `β ∘ α`.
    fn hcomp(&self, b: &Self::Two, a: &Self::Two) -> Self::Two;
    fn object_name(&self, x: &Self::Obj) -> String;
    fn one_name(&self, f: &Self::One) -> String;
    fn two_name(&self, a: &Self::Two) -> String;
}

/// A derived 2-category together with the key of every cell.
#[derive(Clone, Debug)]
pub struct Assembly<O, A, T> {
    pub category: TwoCategory,
    pub objects: Vec<O>,
    pub one_cells: Vec<A>,
    pub two_cells: Vec<T>,
    object_index: HashMap<O, CellId>,
    one_index: HashMap<A, CellId>,
    two_index: HashMap<T, CellId>,
}

impl<O: Eq + Hash, A: Eq + Hash, T: Eq + Hash> Assembly<O, A, T> {
    pub fn object(&self, k: &O) -> Option<CellId> {
        self.object_index.get(k).copied()
    }

    pub fn one_cell(&self, k: &A) -> Option<CellId> {
        self.one_index.get(k).copied()
    }

    pub fn two_cell(&self, k: &T) -> Option<CellId> {
        self.two_index.get(k).copied()
    }
}

fn dedupe(names: Vec<String>, taken: &mut HashSet<String>) -> Vec<String> {
    let mut count: HashMap<String, usize> = HashMap::new();
    for n in &names {
        *count.entry(n.clone()).or_default() += 1;
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    names
        .into_iter()
        .map(|n| {
            let clash = count[&n] > 1 || taken.contains(&n);
            let out = if clash {
                loop {
                    let k = seen.entry(n.clone()).or_default();
                    *k += 1;
                    let cand = format!("{n}#{k}");
                    if !taken.contains(&cand) && !count.contains_key(&cand) {
                        break cand;
                    }
                }
            } else {
                n
            };
            taken.insert(out.clone());
            out
        })
        .collect()
}

fn index<K: Clone + Eq + Hash>(keys: &[K], what: &str) -> Result<HashMap<K, CellId>, BuildError> {
    let mut m = HashMap::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        if m.insert(k.clone(), i).is_some() {
            return Err(BuildError::DuplicateKey(format!("{what} {i}")));
        }
    }
    Ok(m)
}

type KeyedAssembly<S> = Assembly<<S as CellKeys>::Obj, <S as CellKeys>::One, <S as CellKeys>::Two>;

/// Enumerates the given keys into a 2-category, computing every identity and
/// composite through `spec`. Composites must land on enumerated keys.
pub fn assemble<S: CellKeys>(
    spec: &S,
    objects: Vec<S::Obj>,
    one_cells: Vec<S::One>,
    two_cells: Vec<S::Two>,
) -> Result<KeyedAssembly<S>, BuildError> {
    let object_index = index(&objects, "object")?;
    let one_index = index(&one_cells, "1-cell")?;
    let two_index = index(&two_cells, "2-cell")?;
    let obj_id = |k: &S::Obj, ctx: &str| {
        object_index
            .get(k)
            .copied()
            .ok_or_else(|| BuildError::Missing(ctx.to_string()))
    };
    let one_id = |k: &S::One, ctx: &str| {
        one_index
            .get(k)
            .copied()
            .ok_or_else(|| BuildError::Missing(ctx.to_string()))
    };
    let two_id = |k: &S::Two, ctx: &str| {
        two_index
            .get(k)
            .copied()
            .ok_or_else(|| BuildError::Missing(ctx.to_string()))
    };

    let mut taken = HashSet::new();
    let object_names = dedupe(
        objects.iter().map(|k| spec.object_name(k)).collect(),
        &mut taken,
    );
    let one_names = dedupe(
        one_cells.iter().map(|k| spec.one_name(k)).collect(),
        &mut taken,
    );
    let two_names = dedupe(
        two_cells.iter().map(|k| spec.two_name(k)).collect(),
        &mut taken,
    );

    let mut ones = Vec::with_capacity(one_cells.len());
    for (k, name) in one_cells.iter().zip(one_names) {
        let (s, t) = spec.one_boundary(k);
        ones.push(Cell {
            source: obj_id(&s, &format!("boundary of 1-cell {name}"))?,
            target: obj_id(&t, &format!("boundary of 1-cell {name}"))?,
            name,
        });
    }
    let mut twos = Vec::with_capacity(two_cells.len());
    for (k, name) in two_cells.iter().zip(two_names) {
        let (s, t) = spec.two_boundary(k);
        twos.push(Cell {
            source: one_id(&s, &format!("boundary of 2-cell {name}"))?,
            target: one_id(&t, &format!("boundary of 2-cell {name}"))?,
            name,
        });
    }
    let mut id1 = Vec::with_capacity(objects.len());
    for (i, k) in objects.iter().enumerate() {
        id1.push(Some(one_id(
            &spec.id1(k),
            &format!("identity on object {}", object_names[i]),
        )?));
    }
    let mut id2 = Vec::with_capacity(one_cells.len());
    for (i, k) in one_cells.iter().enumerate() {
        id2.push(Some(two_id(
            &spec.id2(k),
            &format!("identity on 1-cell {}", ones[i].name),
        )?));
    }

    let mut ones_from = vec![Vec::new(); objects.len()];
    for (i, c) in ones.iter().enumerate() {
        ones_from[c.source].push(i);
    }
    let mut twos_from = vec![Vec::new(); one_cells.len()];
    for (i, c) in twos.iter().enumerate() {
        twos_from[c.source].push(i);
    }

    let mut hcomp1 = HashMap::new();
    for f in 0..ones.len() {
        for &g in &ones_from[ones[f].target] {
            let k = spec.comp1(&one_cells[g], &one_cells[f]);
            let v = one_id(
                &k,
                &format!("composite {} ∘ {}", ones[g].name, ones[f].name),
            )?;
            hcomp1.insert((g, f), v);
        }
    }
    let mut vcomp2 = HashMap::new();
    let mut hcomp2 = HashMap::new();
    for a in 0..twos.len() {
        for &b in &twos_from[twos[a].target] {
            let k = spec.vcomp(&two_cells[b], &two_cells[a]);
            let v = two_id(
                &k,
                &format!("vertical composite {} · {}", twos[b].name, twos[a].name),
            )?;
            vcomp2.insert((b, a), v);
        }
        let y = ones[twos[a].source].target;
        for &f2 in &ones_from[y] {
            for &b in &twos_from[f2] {
                let k = spec.hcomp(&two_cells[b], &two_cells[a]);
                let v = two_id(
                    &k,
                    &format!("horizontal composite {} ∘ {}", twos[b].name, twos[a].name),
                )?;
                hcomp2.insert((b, a), v);
            }
        }
    }
    let category =
        TwoCategory::from_parts(object_names, ones, twos, id1, id2, hcomp1, vcomp2, hcomp2)
            .map_err(|e| BuildError::DuplicateKey(e.to_string()))?;
    Ok(Assembly {
        category,
        objects,
        one_cells,
        two_cells,
        object_index,
        one_index,
        two_index,
    })
}
