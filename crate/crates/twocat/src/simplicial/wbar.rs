//! Diagonal, codiagonal and the Alexander–Whitney comparison.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::multi::Level;
use super::{
    BisimplicialSet, MultiSimplicialSet, Simplex, SimplicialError, SimplicialMap, SimplicialSet,
    TrisimplicialSet, Truncation,
};

fn require(x: &MultiSimplicialSet, idx: Vec<usize>) -> Result<(), SimplicialError> {
    if x.has_level(&idx) {
        Ok(())
    } else {
        Err(SimplicialError::InsufficientWindow(idx))
    }
}

/// Diagonal of a multi-simplicial set: level `n` is level `(n, …, n)` and the
/// structure maps act in all directions at once.
fn diagonal(x: &MultiSimplicialSet, n: usize) -> Result<SimplicialSet, SimplicialError> {
    let dims = x.dims();
    for k in 0..=n {
        require(x, vec![k; dims])?;
        if k < n {
            for j in 1..=dims {
                let mut idx = vec![k; dims];
                for e in idx.iter_mut().skip(dims - j) {
                    *e += 1;
                }
                require(x, idx)?;
            }
        }
    }
    let mut levels = BTreeMap::new();
    for k in 0..=n {
        let top = vec![k; dims];
        let mut level = Level::new(x.level(&top).unwrap().simplices().to_vec(), 1);
        if k > 0 {
            let mut faces = Vec::new();
            for i in 0..=k {
                let table = (0..level.len())
                    .map(|mut t| {
                        let mut idx = top.clone();
                        for dir in (0..dims).rev() {
                            t = x.face(&idx, dir, i, t);
                            idx[dir] -= 1;
                        }
                        t
                    })
                    .collect();
                faces.push(table);
            }
            level.faces[0] = faces;
        }
        if k < n {
            let mut degens = Vec::new();
            for j in 0..=k {
                let table = (0..level.len())
                    .map(|mut t| {
                        let mut idx = top.clone();
                        for dir in (0..dims).rev() {
                            t = x.degeneracy(&idx, dir, j, t);
                            idx[dir] += 1;
                        }
                        t
                    })
                    .collect();
                degens.push(table);
            }
            level.degeneracies[0] = degens;
        }
        levels.insert(vec![k], level);
    }
    MultiSimplicialSet::from_levels(1, levels).map(SimplicialSet::new)
}

/// `Diag B`, levels `0..=n`.
pub fn diag(b: &BisimplicialSet, n: usize) -> Result<SimplicialSet, SimplicialError> {
    diagonal(b, n)
}

/// Diagonal of a trisimplicial set, levels `0..=n`.
pub fn diag3(t: &TrisimplicialSet, n: usize) -> Result<SimplicialSet, SimplicialError> {
    diagonal(t, n)
}

/// The Artin–Mazur codiagonal `W̄B`.
///
/// An `n`-simplex is a tuple `(t_{n,0}, …, t_{0,n})` with `t_{p,q} ∈ B_{p,q}`
/// and `d^h_0 t_{p,q} = d^v_{q+1} t_{p-1,q+1}`; it is encoded as the list of
/// indices of its entries.
pub fn wbar(
    b: &BisimplicialSet,
    t: impl Into<Truncation>,
) -> Result<SimplicialSet, SimplicialError> {
    let t = t.into();
    let n_max = t.bound;
    for p in 0..=n_max {
        for q in 0..=n_max - p {
            require(b, vec![p, q])?;
        }
    }
    // preimages[(p, q)][target] = sources of d^v_q at (p, q).
    let mut preimages: HashMap<(usize, usize), HashMap<usize, Vec<usize>>> = HashMap::new();
    for p in 0..=n_max {
        for q in 1..=n_max - p {
            let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
            for k in 0..b.len(p, q) {
                m.entry(b.dv(p, q, q, k)).or_default().push(k);
            }
            preimages.insert((p, q), m);
        }
    }
    let enumerate = |n: usize| -> Result<Vec<Simplex>, SimplicialError> {
        let mut out = Vec::new();
        let mut stack: Vec<Simplex> = (0..b.len(n, 0)).rev().map(|k| vec![k]).collect();
        while let Some(partial) = stack.pop() {
            let j = partial.len() - 1;
            if j == n {
                out.push(partial);
                if out.len() > t.budget {
                    return Err(SimplicialError::BudgetExceeded {
                        level: vec![n],
                        size: out.len(),
                        budget: t.budget,
                    });
                }
                continue;
            }
            let last = partial[j];
            let edge = b.dh(n - j, j, 0, last);
            if let Some(next) = preimages[&(n - j - 1, j + 1)].get(&edge) {
                for &k in next.iter().rev() {
                    let mut v = partial.clone();
                    v.push(k);
                    stack.push(v);
                }
            }
        }
        Ok(out)
    };
    let face = |n: usize, i: usize, s: &Simplex| -> Simplex {
        let mut out = Vec::with_capacity(n);
        for (j, &e) in s.iter().enumerate() {
            if j < i {
                out.push(b.dh(n - j, j, i - j, e));
            } else if j > i {
                out.push(b.dv(n - j, j, i, e));
            }
        }
        out
    };
    let degeneracy = |n: usize, i: usize, s: &Simplex| -> Simplex {
        let mut out = Vec::with_capacity(n + 2);
        for (j, &e) in s.iter().enumerate() {
            if j < i {
                out.push(b.sh(n - j, j, i - j, e));
            } else if j == i {
                out.push(b.sh(n - j, j, 0, e));
                out.push(b.sv(n - j, j, i, e));
            } else {
                out.push(b.sv(n - j, j, i, e));
            }
        }
        out
    };
    SimplicialSet::build(n_max, t.budget, enumerate, face, degeneracy)
}

/// The Alexander–Whitney map `Diag B → W̄B`,
/// `t ↦ ((d^v_1)^n t, …, (d^v_{p+1})^{n-p} (d^h_0)^p t, …, (d^h_0)^n t)`.
pub fn aw_map(b: &BisimplicialSet, n: usize) -> Result<SimplicialMap, SimplicialError> {
    let d = Arc::new(diag(b, n)?);
    let w = Arc::new(wbar(b, n)?);
    let mut levels = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut table = Vec::with_capacity(d.len(m));
        for k in 0..d.len(m) {
            let tuple: Simplex = (0..=m)
                .map(|p| {
                    let mut t = k;
                    for h in 0..p {
                        t = b.dh(m - h, m, 0, t);
                    }
                    for q in (p + 1..=m).rev() {
                        t = b.dv(m - p, q, p + 1, t);
                    }
                    t
                })
                .collect();
            let image = w
                .find(&[m], &tuple)
                .ok_or_else(|| SimplicialError::MissingSimplex {
                    map: format!("Alexander–Whitney map at level {m}"),
                    simplex: format!("{k} ↦ {tuple:?}"),
                })?;
            table.push(image);
        }
        levels.push(table);
    }
    Ok(SimplicialMap {
        source: d,
        target: w,
        levels,
    })
}

/// A map of bisimplicial sets as index tables per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialMap {
    pub levels: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl BisimplicialMap {
    pub fn apply(&self, p: usize, q: usize, k: usize) -> usize {
        self.levels[&vec![p, q]][k]
    }

    /// Image of a codiagonal tuple `(t_{n,0}, …, t_{0,n})`.
    pub fn apply_tuple(&self, s: &Simplex) -> Simplex {
        let n = s.len() - 1;
        s.iter()
            .enumerate()
            .map(|(j, &e)| self.apply(n - j, j, e))
            .collect()
    }
}

/// The map induced on codiagonals by a bisimplicial map.
pub fn wbar_map(
    f: &BisimplicialMap,
    source: &Arc<SimplicialSet>,
    target: &Arc<SimplicialSet>,
) -> Result<SimplicialMap, SimplicialError> {
    SimplicialMap::from_fn(source, target, |_, s| Ok(f.apply_tuple(s)))
}
