use std::sync::Arc;

use super::{Simplex, SimplicialError, SimplicialSet};
use crate::report::ValidationReport;

/// A levelwise map of truncated simplicial sets, stored as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    /// `levels[n][k]` is the image of simplex `k` at level `n`.
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &Arc<SimplicialSet>) -> Self {
        Self {
            source: x.clone(),
            target: x.clone(),
            levels: (0..=x.bound()).map(|n| (0..x.len(n)).collect()).collect(),
        }
    }

    /// Builds a map from a function on simplex tuples.
    pub fn from_fn(
        source: &Arc<SimplicialSet>,
        target: &Arc<SimplicialSet>,
        f: impl Fn(usize, &Simplex) -> Result<Simplex, SimplicialError>,
    ) -> Result<Self, SimplicialError> {
        let bound = source.bound().min(target.bound());
        let mut levels = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let mut table = Vec::with_capacity(source.len(n));
            for k in 0..source.len(n) {
                let s = source.simplex_at(n, k);
                let image = f(n, s)?;
                let j =
                    target
                        .find(&[n], &image)
                        .ok_or_else(|| SimplicialError::MissingSimplex {
                            map: format!("simplicial map at level {n}"),
                            simplex: format!("{s:?} ↦ {image:?}"),
                        })?;
                table.push(j);
            }
            levels.push(table);
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            levels,
        })
    }

    pub fn bound(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn apply(&self, n: usize, k: usize) -> usize {
        self.levels[n][k]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> SimplicialMap {
        let bound = self.bound().min(next.bound());
        SimplicialMap {
            source: self.source.clone(),
            target: next.target.clone(),
            levels: (0..=bound)
                .map(|n| self.levels[n].iter().map(|&k| next.apply(n, k)).collect())
                .collect(),
        }
    }

    /// Checks that the map commutes with every face and degeneracy in range.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let (x, y) = (&*self.source, &*self.target);
        for n in 0..=self.bound() {
            if self.levels[n].len() != x.len(n) || self.levels[n].iter().any(|&k| k >= y.len(n)) {
                r.push("simplicial map shape", format!("level {n}"));
                return r;
            }
        }
        for n in 0..=self.bound() {
            for k in 0..x.len(n) {
                let fk = self.apply(n, k);
                if n > 0 {
                    for i in 0..=n {
                        r.require(
                            self.apply(n - 1, x.d(n, i, k)) == y.d(n, i, fk),
                            "map commutes with faces",
                            || format!("level {n} d_{i} simplex {k}"),
                        );
                    }
                }
                if n < self.bound() {
                    for j in 0..=n {
                        r.require(
                            self.apply(n + 1, x.s(n, j, k)) == y.s(n, j, fk),
                            "map commutes with degeneracies",
                            || format!("level {n} s_{j} simplex {k}"),
                        );
                    }
                }
            }
        }
        r
    }
}

/// True iff `f` is a bijection at every level up to its bound.
pub fn verify_iso(f: &SimplicialMap) -> bool {
    (0..=f.bound()).all(|n| {
        let size = f.target.len(n);
        if f.levels[n].len() != size {
            return false;
        }
        let mut hit = vec![false; size];
        f.levels[n]
            .iter()
            .all(|&k| k < size && !std::mem::replace(&mut hit[k], true))
    })
}
