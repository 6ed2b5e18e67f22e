//! The trisimplicial set `E` of a 2-diagram and the bisimplicial sets cut out
//! of it at a fixed outer degree.

use crate::category::{CellId, TwoCategory, TwoDiagram, Variance};
use crate::nerves::{Column, Columns, Grid};
use crate::simplicial::{
    BisimplicialSet, MultiSimplicialSet, Simplex, SimplicialError, TrisimplicialSet, Truncation,
};

/// A `(p, n, q)`-simplex of `E`: a `(p, q)`-simplex of the double nerve of
/// the base, one fibre object `x_m` per base object, and one column of
/// height `n` of fibre cells per step `m = 1 … p`.
///
/// Covariantly the column of step `m` lives over `c_m` and runs
/// `f^q_{m*} x_{m-1} → x_m`, using the top 1-cell of the base column.
/// Contravariantly it lives over `c_{m-1}` and runs `x_{m-1} → f^{0*}_m x_m`,
/// using the bottom one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ESimplex {
    pub grid: Grid,
    pub xs: Vec<CellId>,
    pub us: Vec<Column>,
}

impl ESimplex {
    pub fn encode(&self) -> Simplex {
        let mut out = self.grid.encode();
        out.extend(&self.xs);
        for col in &self.us {
            out.extend(&col.ones);
            out.extend(&col.twos);
        }
        out
    }

    pub fn decode(p: usize, n: usize, q: usize, s: &[usize]) -> ESimplex {
        let grid_len = p + 1 + p * (2 * q + 1);
        let grid = Grid::decode(p, q, &s[..grid_len]);
        let xs = s[grid_len..grid_len + p + 1].to_vec();
        let mut at = grid_len + p + 1;
        let us = (0..p)
            .map(|_| {
                let col = Column {
                    ones: s[at..at + n + 1].to_vec(),
                    twos: s[at + n + 1..at + 2 * n + 1].to_vec(),
                };
                at += 2 * n + 1;
                col
            })
            .collect();
        ESimplex { grid, xs, us }
    }
}

struct Rules<'a> {
    d: &'a TwoDiagram,
}

impl Rules<'_> {
    fn covariant(&self) -> bool {
        self.d.variance == Variance::Covariant
    }

    /// Index of the fibre holding the column of step `m`.
    fn step_fibre(&self, g: &Grid, m: usize) -> CellId {
        if self.covariant() {
            g.objects[m]
        } else {
            g.objects[m - 1]
        }
    }

    /// The base 1-cell that transports along step `m`.
    fn step_arrow(&self, g: &Grid, m: usize) -> CellId {
        let col = &g.columns[m - 1];
        if self.covariant() {
            *col.ones.last().unwrap()
        } else {
            col.ones[0]
        }
    }

    fn fibre(&self, c: CellId) -> &TwoCategory {
        &self.d.fibres[c]
    }

    fn enumerate(
        &self,
        base: &Columns,
        fibres: &[Columns],
        p: usize,
        n: usize,
        q: usize,
    ) -> Vec<Simplex> {
        let mut out = Vec::new();
        for grid in base.staircases(p, |_| q) {
            let c0 = grid.objects[0];
            let mut partial: Vec<(Vec<CellId>, Vec<Column>)> = (0..self.fibre(c0).object_count())
                .map(|x| (vec![x], Vec::new()))
                .collect();
            for m in 1..=p {
                let t = &self.d.on_one[self.step_arrow(&grid, m)];
                let home = self.step_fibre(&grid, m);
                let mut next = Vec::new();
                for (xs, us) in &partial {
                    let prev = xs[m - 1];
                    for y in 0..self.fibre(grid.objects[m]).object_count() {
                        let (from, to) = if self.covariant() {
                            (t.obj(prev), y)
                        } else {
                            (prev, t.obj(y))
                        };
                        for col in fibres[home].get(from, to, n).iter() {
                            let mut xs = xs.clone();
                            xs.push(y);
                            let mut us = us.clone();
                            us.push(col.clone());
                            next.push((xs, us));
                        }
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(xs, us)| {
                ESimplex {
                    grid: grid.clone(),
                    xs,
                    us,
                }
                .encode()
            }));
        }
        out
    }

    fn face(&self, idx: &[usize], dir: usize, i: usize, s: &ESimplex) -> ESimplex {
        let c = &*self.d.base;
        let (p, q) = (idx[0], idx[2]);
        match dir {
            0 => {
                let mut xs = s.xs.clone();
                xs.remove(i);
                let mut us = s.us.clone();
                if i == 0 {
                    us.remove(0);
                } else if i == p {
                    us.pop();
                } else {
                    let (earlier, later) = (&s.us[i - 1], &s.us[i]);
                    let merged = if self.covariant() {
                        let g = &self.d.on_one[self.step_arrow(&s.grid, i + 1)];
                        let fib = self.fibre(self.step_fibre(&s.grid, i + 1));
                        Column {
                            ones: (0..earlier.ones.len())
                                .map(|k| fib.comp1(later.ones[k], g.one(earlier.ones[k])))
                                .collect(),
                            twos: (0..earlier.twos.len())
                                .map(|k| fib.hcomp(later.twos[k], g.two(earlier.twos[k])))
                                .collect(),
                        }
                    } else {
                        let f = &self.d.on_one[self.step_arrow(&s.grid, i)];
                        let fib = self.fibre(self.step_fibre(&s.grid, i));
                        Column {
                            ones: (0..earlier.ones.len())
                                .map(|k| fib.comp1(f.one(later.ones[k]), earlier.ones[k]))
                                .collect(),
                            twos: (0..earlier.twos.len())
                                .map(|k| fib.hcomp(f.two(later.twos[k]), earlier.twos[k]))
                                .collect(),
                        }
                    };
                    us.splice(i - 1..=i, [merged]);
                }
                ESimplex {
                    grid: s.grid.hface(c, i),
                    xs,
                    us,
                }
            }
            1 => ESimplex {
                grid: s.grid.clone(),
                xs: s.xs.clone(),
                us: (1..=p)
                    .map(|m| s.us[m - 1].face(self.fibre(self.step_fibre(&s.grid, m)), i))
                    .collect(),
            },
            _ => {
                let whiskered = if self.covariant() { i == q } else { i == 0 };
                let us = if whiskered {
                    (1..=p).map(|m| self.whisker(s, m)).collect()
                } else {
                    s.us.clone()
                };
                ESimplex {
                    grid: s.grid.vface(c, i),
                    xs: s.xs.clone(),
                    us,
                }
            }
        }
    }

    /// The column of step `m` after the base column loses its transporting
    /// 1-cell: precomposed with `α^q_{m*} x_{m-1}` covariantly, postcomposed
    /// with `α^{1*}_m x_m` contravariantly.
    fn whisker(&self, s: &ESimplex, m: usize) -> Column {
        let col = &s.us[m - 1];
        let base_col = &s.grid.columns[m - 1];
        let fib = self.fibre(self.step_fibre(&s.grid, m));
        if self.covariant() {
            let alpha = *base_col.twos.last().unwrap();
            let w = self.d.on_two[alpha].component(s.xs[m - 1]);
            Column {
                ones: col.ones.iter().map(|&u| fib.comp1(u, w)).collect(),
                twos: col
                    .twos
                    .iter()
                    .map(|&phi| fib.hcomp(phi, fib.id2(w)))
                    .collect(),
            }
        } else {
            let alpha = base_col.twos[0];
            let w = self.d.on_two[alpha].component(s.xs[m]);
            Column {
                ones: col.ones.iter().map(|&u| fib.comp1(w, u)).collect(),
                twos: col
                    .twos
                    .iter()
                    .map(|&phi| fib.hcomp(fib.id2(w), phi))
                    .collect(),
            }
        }
    }

    fn degeneracy(&self, idx: &[usize], dir: usize, j: usize, s: &ESimplex) -> ESimplex {
        let c = &*self.d.base;
        let (p, n, q) = (idx[0], idx[1], idx[2]);
        match dir {
            0 => {
                let grid = s.grid.hdegeneracy(c, j, q);
                let mut xs = s.xs.clone();
                xs.insert(j, xs[j]);
                let mut us = s.us.clone();
                us.insert(
                    j,
                    Column::identity(self.fibre(s.grid.objects[j]), s.xs[j], n),
                );
                ESimplex { grid, xs, us }
            }
            1 => ESimplex {
                grid: s.grid.clone(),
                xs: s.xs.clone(),
                us: (1..=p)
                    .map(|m| s.us[m - 1].degeneracy(self.fibre(self.step_fibre(&s.grid, m)), j))
                    .collect(),
            },
            _ => ESimplex {
                grid: s.grid.vdegeneracy(c, j),
                xs: s.xs.clone(),
                us: s.us.clone(),
            },
        }
    }
}

/// The window `p + max(n, q) ≤ N` on which `E` is built.
pub fn e_window(bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in 0..=bound {
        for n in 0..=bound - p {
            for q in 0..=bound - p {
                out.push(vec![p, n, q]);
            }
        }
    }
    out
}

/// The trisimplicial set `E` of `d` on the window `p + max(n, q) ≤ N`, with
/// directions `(p, n, q)` in that order.
pub fn build_e(
    d: &TwoDiagram,
    t: impl Into<Truncation>,
) -> Result<TrisimplicialSet, SimplicialError> {
    let t = t.into();
    let rules = Rules { d };
    let base = Columns::new(&d.base);
    let fibres: Vec<Columns> = d.fibres.iter().map(|f| Columns::new(f)).collect();
    MultiSimplicialSet::build(
        3,
        e_window(t.bound),
        t.budget,
        |idx| Ok(rules.enumerate(&base, &fibres, idx[0], idx[1], idx[2])),
        |idx, dir, i, s| {
            rules
                .face(idx, dir, i, &ESimplex::decode(idx[0], idx[1], idx[2], s))
                .encode()
        },
        |idx, dir, j, s| {
            rules
                .degeneracy(idx, dir, j, &ESimplex::decode(idx[0], idx[1], idx[2], s))
                .encode()
        },
    )
    .map(TrisimplicialSet::new)
}

/// Directions of `E` read as the horizontal and vertical directions of
/// `E_{p,•,•}`: `(n, q)` covariantly and `(q, n)` contravariantly.
pub fn slice_directions(variance: Variance) -> (usize, usize) {
    match variance {
        Variance::Covariant => (1, 2),
        Variance::Contravariant => (2, 1),
    }
}

/// The level of `E` holding bidegree `(a, b)` of `E_{p,•,•}`.
pub fn slice_level(p: usize, a: usize, b: usize, variance: Variance) -> Vec<usize> {
    let (h, v) = slice_directions(variance);
    let mut idx = vec![p, 0, 0];
    idx[h] = a;
    idx[v] = b;
    idx
}

fn lookup_face(
    e: &MultiSimplicialSet,
    idx: &[usize],
    dir: usize,
    i: usize,
    s: &Simplex,
) -> (Vec<usize>, usize) {
    let k = e.find(idx, s).expect("simplex of the level");
    let mut lower = idx.to_vec();
    lower[dir] -= 1;
    (lower, e.face(idx, dir, i, k))
}

fn lookup_degeneracy(
    e: &MultiSimplicialSet,
    idx: &[usize],
    dir: usize,
    j: usize,
    s: &Simplex,
) -> (Vec<usize>, usize) {
    let k = e.find(idx, s).expect("simplex of the level");
    let mut upper = idx.to_vec();
    upper[dir] += 1;
    (upper, e.degeneracy(idx, dir, j, k))
}

fn level_simplices(e: &MultiSimplicialSet, idx: &[usize]) -> Result<Vec<Simplex>, SimplicialError> {
    e.level(idx)
        .map(|l| l.simplices().to_vec())
        .ok_or_else(|| SimplicialError::InsufficientWindow(idx.to_vec()))
}

/// `E_{p,•,•}` as a bisimplicial set on the triangle `a + b ≤ bound`, oriented
/// by [`slice_directions`]. Simplices keep their indices in `E`.
pub fn e_slice(
    e: &TrisimplicialSet,
    p: usize,
    variance: Variance,
    bound: usize,
    budget: usize,
) -> Result<BisimplicialSet, SimplicialError> {
    let (h, v) = slice_directions(variance);
    let edir = |dir: usize| if dir == 0 { h } else { v };
    MultiSimplicialSet::build(
        2,
        crate::simplicial::triangle_window(bound),
        budget,
        |idx| level_simplices(e, &slice_level(p, idx[0], idx[1], variance)),
        |idx, dir, i, s| {
            let (lower, k) = lookup_face(
                e,
                &slice_level(p, idx[0], idx[1], variance),
                edir(dir),
                i,
                s,
            );
            e.simplex(&lower, k).clone()
        },
        |idx, dir, j, s| {
            let (upper, k) = lookup_degeneracy(
                e,
                &slice_level(p, idx[0], idx[1], variance),
                edir(dir),
                j,
                s,
            );
            e.simplex(&upper, k).clone()
        },
    )
    .map(BisimplicialSet::new)
}

/// The bisimplicial set `(p, r) ↦ E_{p,r,r}` on the triangle `p + r ≤ bound`:
/// direction 0 is the outer one, direction 1 acts diagonally on `n` and `q`.
pub fn e_diagonal_slices(
    e: &TrisimplicialSet,
    bound: usize,
    budget: usize,
) -> Result<BisimplicialSet, SimplicialError> {
    MultiSimplicialSet::build(
        2,
        crate::simplicial::triangle_window(bound),
        budget,
        |idx| level_simplices(e, &[idx[0], idx[1], idx[1]]),
        |idx, dir, i, s| {
            let at = [idx[0], idx[1], idx[1]];
            if dir == 0 {
                let (lower, k) = lookup_face(e, &at, 0, i, s);
                return e.simplex(&lower, k).clone();
            }
            let (mid, k) = lookup_face(e, &at, 1, i, s);
            let lower = [idx[0], idx[1] - 1, idx[1] - 1];
            e.simplex(&lower, e.face(&mid, 2, i, k)).clone()
        },
        |idx, dir, j, s| {
            let at = [idx[0], idx[1], idx[1]];
            if dir == 0 {
                let (upper, k) = lookup_degeneracy(e, &at, 0, j, s);
                return e.simplex(&upper, k).clone();
            }
            let (mid, k) = lookup_degeneracy(e, &at, 1, j, s);
            let upper = [idx[0], idx[1] + 1, idx[1] + 1];
            e.simplex(&upper, e.degeneracy(&mid, 2, j, k)).clone()
        },
    )
    .map(BisimplicialSet::new)
}
