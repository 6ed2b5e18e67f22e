//! Levelwise-finite multi-simplicial sets over an explicit window of levels.

use std::collections::{BTreeMap, HashMap};

use super::{Simplex, SimplicialError};
use crate::report::ValidationReport;

/// One multi-degree of a multi-simplicial set, with its outgoing structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub(crate) simplices: Vec<Simplex>,
    pub(crate) index: HashMap<Simplex, usize>,
    /// `faces[dir][i][k]`: index of `d_i` in direction `dir` of simplex `k`.
    pub(crate) faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[dir][j][k]`; empty for a direction whose next level is
    /// outside the window.
    pub(crate) degeneracies: Vec<Vec<Vec<usize>>>,
}

impl Level {
    pub(crate) fn new(simplices: Vec<Simplex>, dims: usize) -> Self {
        let index = simplices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Self {
            simplices,
            index,
            faces: vec![Vec::new(); dims],
            degeneracies: vec![Vec::new(); dims],
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }
}

/// A multi-simplicial set truncated to a downward-closed window of
/// multi-degrees. Simplices are canonical tuples; structure maps are stored
/// as index tables so every application is a lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSimplicialSet {
    dims: usize,
    levels: BTreeMap<Vec<usize>, Level>,
}

fn shifted(idx: &[usize], dir: usize, up: bool) -> Option<Vec<usize>> {
    let mut v = idx.to_vec();
    if up {
        v[dir] += 1;
    } else {
        v[dir] = v[dir].checked_sub(1)?;
    }
    Some(v)
}

impl MultiSimplicialSet {
    /// Builds the set on `window` from an enumeration of each level and
    /// closures computing faces and degeneracies on simplex tuples.
    ///
    /// `face(level, dir, i, simplex)` and `degeneracy(level, dir, j, simplex)`
    /// must return simplices of the neighbouring level; anything else is an
    /// error naming the map.
    pub fn build<E, F, D>(
        dims: usize,
        window: impl IntoIterator<Item = Vec<usize>>,
        budget: usize,
        mut enumerate: E,
        face: F,
        degeneracy: D,
    ) -> Result<Self, SimplicialError>
    where
        E: FnMut(&[usize]) -> Result<Vec<Simplex>, SimplicialError>,
        F: Fn(&[usize], usize, usize, &Simplex) -> Simplex,
        D: Fn(&[usize], usize, usize, &Simplex) -> Simplex,
    {
        let mut levels = BTreeMap::new();
        for idx in window {
            assert_eq!(idx.len(), dims, "window entry of the wrong dimension");
            let simplices = enumerate(&idx)?;
            if simplices.len() > budget {
                return Err(SimplicialError::BudgetExceeded {
                    level: idx,
                    size: simplices.len(),
                    budget,
                });
            }
            levels.insert(idx, Level::new(simplices, dims));
        }
        let mut set = Self { dims, levels };
        set.check_window()?;
        let keys: Vec<Vec<usize>> = set.levels.keys().cloned().collect();
        for idx in &keys {
            for dir in 0..dims {
                let k = idx[dir];
                let mut faces = Vec::new();
                if k > 0 {
                    let lower = shifted(idx, dir, false).unwrap();
                    for i in 0..=k {
                        let table = set.map_level(
                            idx,
                            &lower,
                            |s| face(idx, dir, i, s),
                            || format!("face d_{i} in direction {dir} at level {idx:?}"),
                        )?;
                        faces.push(table);
                    }
                }
                let mut degens = Vec::new();
                let upper = shifted(idx, dir, true).unwrap();
                if set.levels.contains_key(&upper) {
                    for j in 0..=k {
                        let table = set.map_level(
                            idx,
                            &upper,
                            |s| degeneracy(idx, dir, j, s),
                            || format!("degeneracy s_{j} in direction {dir} at level {idx:?}"),
                        )?;
                        degens.push(table);
                    }
                }
                let level = set.levels.get_mut(idx).unwrap();
                level.faces[dir] = faces;
                level.degeneracies[dir] = degens;
            }
        }
        Ok(set)
    }

    /// Assembles a set from levels whose structure tables are already filled.
    pub(crate) fn from_levels(
        dims: usize,
        levels: BTreeMap<Vec<usize>, Level>,
    ) -> Result<Self, SimplicialError> {
        let set = Self { dims, levels };
        set.check_window()?;
        Ok(set)
    }

    fn check_window(&self) -> Result<(), SimplicialError> {
        for idx in self.levels.keys() {
            for dir in 0..self.dims {
                if let Some(lower) = shifted(idx, dir, false) {
                    if !self.levels.contains_key(&lower) {
                        return Err(SimplicialError::InsufficientWindow(lower));
                    }
                }
            }
        }
        Ok(())
    }

    fn map_level(
        &self,
        from: &[usize],
        to: &[usize],
        f: impl Fn(&Simplex) -> Simplex,
        what: impl Fn() -> String,
    ) -> Result<Vec<usize>, SimplicialError> {
        let target = &self.levels[to];
        self.levels[from]
            .simplices
            .iter()
            .map(|s| {
                let image = f(s);
                target
                    .index
                    .get(&image)
                    .copied()
                    .ok_or_else(|| SimplicialError::MissingSimplex {
                        map: what(),
                        simplex: format!("{s:?} ↦ {image:?}"),
                    })
            })
            .collect()
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn levels(&self) -> impl Iterator<Item = (&Vec<usize>, &Level)> {
        self.levels.iter()
    }

    pub fn has_level(&self, idx: &[usize]) -> bool {
        self.levels.contains_key(idx)
    }

    pub fn level(&self, idx: &[usize]) -> Option<&Level> {
        self.levels.get(idx)
    }

    /// Number of simplices at `idx`, zero outside the window.
    pub fn size(&self, idx: &[usize]) -> usize {
        self.levels.get(idx).map_or(0, Level::len)
    }

    pub fn simplex(&self, idx: &[usize], k: usize) -> &Simplex {
        &self.levels[idx].simplices[k]
    }

    pub fn find(&self, idx: &[usize], s: &Simplex) -> Option<usize> {
        self.levels.get(idx)?.index.get(s).copied()
    }

    pub fn face(&self, idx: &[usize], dir: usize, i: usize, k: usize) -> usize {
        self.levels[idx].faces[dir][i][k]
    }

    pub fn degeneracy(&self, idx: &[usize], dir: usize, j: usize, k: usize) -> usize {
        self.levels[idx].degeneracies[dir][j][k]
    }

    /// Overwrites one face entry. Meant for fault-injection tests.
    pub fn set_face(&mut self, idx: &[usize], dir: usize, i: usize, k: usize, value: usize) {
        self.levels.get_mut(idx).expect("level in window").faces[dir][i][k] = value;
    }

    /// Whether `k` at `idx` is the image of a degeneracy in some direction.
    pub fn is_degenerate(&self, idx: &[usize], k: usize) -> bool {
        (0..self.dims).any(|dir| {
            let Some(lower) = shifted(idx, dir, false) else {
                return false;
            };
            let l = &self.levels[&lower];
            l.degeneracies[dir].iter().any(|t| t.contains(&k))
        })
    }
}

/// Checks every simplicial identity whose maps lie inside the window:
/// the face, face/degeneracy and degeneracy identities in each direction, and
/// commutation of structure maps across directions.
pub fn check_identities(x: &MultiSimplicialSet) -> ValidationReport {
    let mut r = ValidationReport::new();
    let d = |idx: &[usize], dir, i, k| x.face(idx, dir, i, k);
    let s = |idx: &[usize], dir, j, k| x.degeneracy(idx, dir, j, k);
    for (idx, level) in x.levels() {
        let n = level.len();
        for dir in 0..x.dims {
            let k = idx[dir];
            let lower = shifted(idx, dir, false);
            let upper = shifted(idx, dir, true).unwrap();
            let has_up = x.has_level(&upper);
            if level.faces[dir].len() != if k > 0 { k + 1 } else { 0 } {
                r.push(
                    "face table out of range",
                    format!("direction {dir} level {idx:?}"),
                );
                continue;
            }
            if k >= 2 {
                let lower = lower.clone().unwrap();
                for j in 1..=k {
                    for i in 0..j {
                        for t in 0..n {
                            let lhs = d(&lower, dir, i, d(idx, dir, j, t));
                            let rhs = d(&lower, dir, j - 1, d(idx, dir, i, t));
                            r.require(lhs == rhs, "d_i d_j = d_{j-1} d_i", || {
                                format!("direction {dir} level {idx:?} i={i} j={j} simplex {t}")
                            });
                        }
                    }
                }
            }
            if has_up {
                for j in 0..=k {
                    for t in 0..n {
                        let st = s(idx, dir, j, t);
                        for i in 0..=k + 1 {
                            let lhs = d(&upper, dir, i, st);
                            let (rule, rhs) = if i < j {
                                let lower = lower.clone().unwrap();
                                (
                                    "d_i s_j = s_{j-1} d_i",
                                    s(&lower, dir, j - 1, d(idx, dir, i, t)),
                                )
                            } else if i == j || i == j + 1 {
                                ("d_i s_j = id", t)
                            } else {
                                let lower = lower.clone().unwrap();
                                (
                                    "d_i s_j = s_j d_{i-1}",
                                    s(&lower, dir, j, d(idx, dir, i - 1, t)),
                                )
                            };
                            r.require(lhs == rhs, rule, || {
                                format!("direction {dir} level {idx:?} i={i} j={j} simplex {t}")
                            });
                        }
                    }
                }
                let upper2 = shifted(&upper, dir, true).unwrap();
                if x.has_level(&upper2) {
                    for j in 0..=k {
                        for i in 0..=j {
                            for t in 0..n {
                                let lhs = s(&upper, dir, i, s(idx, dir, j, t));
                                let rhs = s(&upper, dir, j + 1, s(idx, dir, i, t));
                                r.require(lhs == rhs, "s_i s_j = s_{j+1} s_i", || {
                                    format!("direction {dir} level {idx:?} i={i} j={j} simplex {t}")
                                });
                            }
                        }
                    }
                }
            }
        }
        for a in 0..x.dims {
            for b in 0..x.dims {
                if a == b {
                    continue;
                }
                let ka = idx[a];
                let kb = idx[b];
                let mixed = |r: &mut ValidationReport,
                             rule: &str,
                             i: usize,
                             j: usize,
                             t: usize,
                             ok: bool| {
                    r.require(ok, rule, || {
                        format!("directions {a},{b} level {idx:?} i={i} j={j} simplex {t}")
                    });
                };
                // Faces in different directions commute (check each unordered pair once).
                if a < b && ka > 0 && kb > 0 {
                    let la = shifted(idx, a, false).unwrap();
                    let lb = shifted(idx, b, false).unwrap();
                    for i in 0..=ka {
                        for j in 0..=kb {
                            for t in 0..n {
                                let lhs = d(&lb, a, i, d(idx, b, j, t));
                                let rhs = d(&la, b, j, d(idx, a, i, t));
                                mixed(
                                    &mut r,
                                    "faces commute across directions",
                                    i,
                                    j,
                                    t,
                                    lhs == rhs,
                                );
                            }
                        }
                    }
                }
                // d^a_i s^b_j = s^b_j d^a_i.
                let ub = shifted(idx, b, true).unwrap();
                if ka > 0 && x.has_level(&ub) {
                    let la = shifted(idx, a, false).unwrap();
                    for i in 0..=ka {
                        for j in 0..=kb {
                            for t in 0..n {
                                let lhs = d(&ub, a, i, s(idx, b, j, t));
                                let rhs = s(&la, b, j, d(idx, a, i, t));
                                mixed(
                                    &mut r,
                                    "faces commute with degeneracies across directions",
                                    i,
                                    j,
                                    t,
                                    lhs == rhs,
                                );
                            }
                        }
                    }
                }
                // s^a_i s^b_j = s^b_j s^a_i.
                let ua = shifted(idx, a, true).unwrap();
                let uab = shifted(&ua, b, true).unwrap();
                if a < b && x.has_level(&ua) && x.has_level(&ub) && x.has_level(&uab) {
                    for i in 0..=ka {
                        for j in 0..=kb {
                            for t in 0..n {
                                let lhs = s(&ua, b, j, s(idx, a, i, t));
                                let rhs = s(&ub, a, i, s(idx, b, j, t));
                                mixed(
                                    &mut r,
                                    "degeneracies commute across directions",
                                    i,
                                    j,
                                    t,
                                    lhs == rhs,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    r
}
