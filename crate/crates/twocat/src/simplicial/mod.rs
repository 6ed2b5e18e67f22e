//! Truncated simplicial, bisimplicial and trisimplicial sets, the diagonal,
//! the Artin–Mazur codiagonal and the Alexander–Whitney comparison map.

mod map;
mod multi;
mod wbar;

use std::ops::Deref;

use thiserror::Error;

pub use map::{verify_iso, SimplicialMap};
pub use multi::{check_identities, Level, MultiSimplicialSet};
pub use wbar::{aw_map, diag, diag3, wbar, wbar_map, BisimplicialMap};

/// Canonical tuple encoding of a simplex; equality is structural.
pub type Simplex = Vec<usize>;

/// Default cap on the number of simplices in a single level.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Truncation bound together with the per-level simplex budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub bound: usize,
    pub budget: usize,
}

impl Truncation {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(self, budget: usize) -> Self {
        Self { budget, ..self }
    }

    /// Same budget, different bound.
    pub fn at(self, bound: usize) -> Self {
        Self { bound, ..self }
    }
}

impl From<usize> for Truncation {
    fn from(bound: usize) -> Self {
        Self::new(bound)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("level {level:?} has {size} simplices, over the budget of {budget}")]
    BudgetExceeded {
        level: Vec<usize>,
        size: usize,
        budget: usize,
    },
    #[error("window too shallow: level {0:?} is required")]
    InsufficientWindow(Vec<usize>),
    #[error("{map} sends {simplex} outside the next level")]
    MissingSimplex { map: String, simplex: String },
    #[error("{0}")]
    Unsupported(String),
}

/// Checks the simplicial identities of any multi-simplicial set.
pub fn check_simplicial_identities(x: &MultiSimplicialSet) -> crate::ValidationReport {
    check_identities(x)
}

macro_rules! wrapper {
    ($name:ident, $dims:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name(MultiSimplicialSet);

        impl $name {
            pub const DIMS: usize = $dims;

            pub fn new(inner: MultiSimplicialSet) -> Self {
                assert_eq!(inner.dims(), $dims, "wrong number of simplicial directions");
                Self(inner)
            }

            pub fn into_inner(self) -> MultiSimplicialSet {
                self.0
            }

            pub fn inner_mut(&mut self) -> &mut MultiSimplicialSet {
                &mut self.0
            }
        }

        impl Deref for $name {
            type Target = MultiSimplicialSet;

            fn deref(&self) -> &MultiSimplicialSet {
                &self.0
            }
        }
    };
}

wrapper!(
    SimplicialSet,
    1,
    "A simplicial set truncated at a bound `N`."
);
wrapper!(
    BisimplicialSet,
    2,
    "A bisimplicial set; direction 0 is horizontal, direction 1 vertical."
);
wrapper!(
    TrisimplicialSet,
    3,
    "A trisimplicial set on an explicit window of levels."
);

impl SimplicialSet {
    /// The highest level present.
    pub fn bound(&self) -> usize {
        self.levels().map(|(k, _)| k[0]).max().unwrap_or(0)
    }

    pub fn len(&self, n: usize) -> usize {
        self.size(&[n])
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..=self.bound()).map(|n| self.len(n)).collect()
    }

    pub fn simplex_at(&self, n: usize, k: usize) -> &Simplex {
        self.simplex(&[n], k)
    }

    pub fn d(&self, n: usize, i: usize, k: usize) -> usize {
        self.face(&[n], 0, i, k)
    }

    pub fn s(&self, n: usize, j: usize, k: usize) -> usize {
        self.degeneracy(&[n], 0, j, k)
    }

    /// Builds levels `0..=bound` from closures on simplex tuples.
    pub fn build<E, F, D>(
        bound: usize,
        budget: usize,
        enumerate: E,
        face: F,
        degeneracy: D,
    ) -> Result<Self, SimplicialError>
    where
        E: FnMut(usize) -> Result<Vec<Simplex>, SimplicialError>,
        F: Fn(usize, usize, &Simplex) -> Simplex,
        D: Fn(usize, usize, &Simplex) -> Simplex,
    {
        let mut enumerate = enumerate;
        MultiSimplicialSet::build(
            1,
            (0..=bound).map(|n| vec![n]),
            budget,
            |idx| enumerate(idx[0]),
            |idx, _, i, s| face(idx[0], i, s),
            |idx, _, j, s| degeneracy(idx[0], j, s),
        )
        .map(Self)
    }
}

impl BisimplicialSet {
    pub fn len(&self, p: usize, q: usize) -> usize {
        self.size(&[p, q])
    }

    pub fn dh(&self, p: usize, q: usize, i: usize, k: usize) -> usize {
        self.face(&[p, q], 0, i, k)
    }

    pub fn dv(&self, p: usize, q: usize, i: usize, k: usize) -> usize {
        self.face(&[p, q], 1, i, k)
    }

    pub fn sh(&self, p: usize, q: usize, j: usize, k: usize) -> usize {
        self.degeneracy(&[p, q], 0, j, k)
    }

    pub fn sv(&self, p: usize, q: usize, j: usize, k: usize) -> usize {
        self.degeneracy(&[p, q], 1, j, k)
    }

    /// The same data with the two directions exchanged.
    pub fn transpose(&self) -> BisimplicialSet {
        let levels = self
            .levels()
            .map(|(idx, l)| {
                let mut l = l.clone();
                l.faces.swap(0, 1);
                l.degeneracies.swap(0, 1);
                (vec![idx[1], idx[0]], l)
            })
            .collect();
        Self(MultiSimplicialSet::from_levels(2, levels).expect("transpose keeps the window closed"))
    }
}

/// Levels `(p, q)` with `p, q ≤ n`.
pub fn square_window(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .flat_map(|p| (0..=n).map(move |q| vec![p, q]))
        .collect()
}

/// Levels `(p, q)` with `p + q ≤ n`.
pub fn triangle_window(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .flat_map(|p| (0..=n - p).map(move |q| vec![p, q]))
        .collect()
}

/// Levels `(p, n, q)` with every index at most `n`.
pub fn cube_window(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .flat_map(|p| (0..=n).flat_map(move |a| (0..=n).map(move |b| vec![p, a, b])))
        .collect()
}
