use std::sync::Arc;

use crate::category::{check_two_functor, validate, TwoCategory, TwoFunctor};
use crate::report::ValidationReport;

/// A simplicial object in 2-categories truncated at a bound: levels `0..=N`
/// with face and degeneracy 2-functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialTwoCategory {
    pub levels: Vec<Arc<TwoCategory>>,
    /// `faces[p][i] : S_p → S_{p-1}`; empty at `p = 0`.
    pub faces: Vec<Vec<TwoFunctor>>,
    /// `degeneracies[p][j] : S_p → S_{p+1}`; empty at the top level.
    pub degeneracies: Vec<Vec<TwoFunctor>>,
}

impl SimplicialTwoCategory {
    /// The constant simplicial 2-category at `c`.
    pub fn constant(c: &Arc<TwoCategory>, bound: usize) -> Self {
        let id = TwoFunctor::identity(c);
        Self {
            levels: vec![c.clone(); bound + 1],
            faces: (0..=bound)
                .map(|p| vec![id.clone(); if p == 0 { 0 } else { p + 1 }])
                .collect(),
            degeneracies: (0..=bound)
                .map(|p| vec![id.clone(); if p == bound { 0 } else { p + 1 }])
                .collect(),
        }
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn face(&self, p: usize, i: usize) -> &TwoFunctor {
        &self.faces[p][i]
    }

    pub fn degeneracy(&self, p: usize, j: usize) -> &TwoFunctor {
        &self.degeneracies[p][j]
    }

    /// Validates every level and structure 2-functor, then checks the
    /// simplicial identities as equalities of 2-functors.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let n = self.bound();
        for (p, c) in self.levels.iter().enumerate() {
            r.merge(validate(c).within(&format!("level {p}")));
        }
        for p in 0..=n {
            let expect_faces = if p == 0 { 0 } else { p + 1 };
            let expect_degens = if p == n { 0 } else { p + 1 };
            if self.faces[p].len() != expect_faces || self.degeneracies[p].len() != expect_degens {
                r.push("simplicial 2-category shape", format!("level {p}"));
                return r;
            }
            for (i, f) in self.faces[p].iter().enumerate() {
                r.require(
                    *f.source == *self.levels[p] && *f.target == *self.levels[p - 1],
                    "face endpoints",
                    || format!("d_{i} at level {p}"),
                );
                r.merge(check_two_functor(f).within(&format!("d_{i} at level {p}")));
            }
            for (j, s) in self.degeneracies[p].iter().enumerate() {
                r.require(
                    *s.source == *self.levels[p] && *s.target == *self.levels[p + 1],
                    "degeneracy endpoints",
                    || format!("s_{j} at level {p}"),
                );
                r.merge(check_two_functor(s).within(&format!("s_{j} at level {p}")));
            }
        }
        if !r.is_empty() {
            return r;
        }
        let d = |p: usize, i: usize| &self.faces[p][i];
        let s = |p: usize, j: usize| &self.degeneracies[p][j];
        let id = |p: usize| TwoFunctor::identity(&self.levels[p]);
        for p in 2..=n {
            for j in 1..=p {
                for i in 0..j {
                    r.require(
                        d(p, j)
                            .then(d(p - 1, i))
                            .same_cells(&d(p, i).then(d(p - 1, j - 1))),
                        "d_i d_j = d_{j-1} d_i",
                        || format!("level {p} i={i} j={j}"),
                    );
                }
            }
        }
        for p in 0..n {
            for j in 0..=p {
                for i in 0..=p + 1 {
                    let lhs = s(p, j).then(d(p + 1, i));
                    let (rule, rhs) = if i < j {
                        ("d_i s_j = s_{j-1} d_i", d(p, i).then(s(p - 1, j - 1)))
                    } else if i == j || i == j + 1 {
                        ("d_i s_j = id", id(p))
                    } else {
                        ("d_i s_j = s_j d_{i-1}", d(p, i - 1).then(s(p - 1, j)))
                    };
                    r.require(lhs.same_cells(&rhs), rule, || {
                        format!("level {p} i={i} j={j}")
                    });
                }
                if p + 1 < n {
                    for i in 0..=j {
                        r.require(
                            s(p, j)
                                .then(s(p + 1, i))
                                .same_cells(&s(p, i).then(s(p + 1, j + 1))),
                            "s_i s_j = s_{j+1} s_i",
                            || format!("level {p} i={i} j={j}"),
                        );
                    }
                }
            }
        }
        r
    }
}
