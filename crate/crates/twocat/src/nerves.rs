//! Nerves of categories, double nerves of 2-categories, the explicit form of
//! the codiagonal of a double nerve, and nerves of simplicial 2-categories.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::category::{CellId, TwoCategory, TwoFunctor};
use crate::hocolim::SimplicialTwoCategory;
use crate::simplicial::{
    diag, square_window, wbar, BisimplicialMap, BisimplicialSet, MultiSimplicialSet, Simplex,
    SimplicialError, SimplicialMap, SimplicialSet, TrisimplicialSet, Truncation,
};

/// A vertical chain `f^0 ⇒ f^1 ⇒ … ⇒ f^q` of 2-cells in one hom category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    /// `f^0, …, f^q`.
    pub ones: Vec<CellId>,
    /// `α^1, …, α^q` with `α^k : f^{k-1} ⇒ f^k`.
    pub twos: Vec<CellId>,
}

impl Column {
    pub fn height(&self) -> usize {
        self.twos.len()
    }

    /// The column of identities on the identity of `x`, of height `q`.
    pub fn identity(c: &TwoCategory, x: CellId, q: usize) -> Self {
        let one = c.id1(x);
        Self {
            ones: vec![one; q + 1],
            twos: vec![c.id2(one); q],
        }
    }

    /// Horizontal composite `later ∘ self`, entry by entry.
    pub fn then(&self, c: &TwoCategory, later: &Column) -> Column {
        Column {
            ones: self
                .ones
                .iter()
                .zip(&later.ones)
                .map(|(&f, &g)| c.comp1(g, f))
                .collect(),
            twos: self
                .twos
                .iter()
                .zip(&later.twos)
                .map(|(&a, &b)| c.hcomp(b, a))
                .collect(),
        }
    }

    /// Vertical face `d_j`: drop `f^j`, composing the 2-cells around it.
    pub fn face(&self, c: &TwoCategory, j: usize) -> Column {
        let q = self.height();
        let mut ones = self.ones.clone();
        let mut twos = self.twos.clone();
        ones.remove(j);
        if j == 0 {
            twos.remove(0);
        } else if j == q {
            twos.pop();
        } else {
            let merged = c.vcomp(twos[j], twos[j - 1]);
            twos.splice(j - 1..=j, [merged]);
        }
        Column { ones, twos }
    }

    /// Vertical degeneracy `s_j`: repeat `f^j` and insert its identity.
    pub fn degeneracy(&self, c: &TwoCategory, j: usize) -> Column {
        let mut ones = self.ones.clone();
        let mut twos = self.twos.clone();
        ones.insert(j, ones[j]);
        twos.insert(j, c.id2(self.ones[j]));
        Column { ones, twos }
    }

    pub fn map(&self, f: &TwoFunctor) -> Column {
        Column {
            ones: self.ones.iter().map(|&g| f.one(g)).collect(),
            twos: self.twos.iter().map(|&a| f.two(a)).collect(),
        }
    }

    fn push_to(&self, out: &mut Vec<usize>) {
        out.extend(&self.ones);
        out.extend(&self.twos);
    }
}

/// A `(p, q)`-simplex of the double nerve: objects `c_0 … c_p` and one
/// column of height `q` per consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub objects: Vec<CellId>,
    pub columns: Vec<Column>,
}

impl Grid {
    pub fn encode(&self) -> Simplex {
        let mut out = self.objects.clone();
        for col in &self.columns {
            col.push_to(&mut out);
        }
        out
    }

    pub fn decode(p: usize, q: usize, s: &[usize]) -> Grid {
        let objects = s[..=p].to_vec();
        let width = 2 * q + 1;
        let columns = (0..p)
            .map(|m| {
                let base = p + 1 + m * width;
                Column {
                    ones: s[base..base + q + 1].to_vec(),
                    twos: s[base + q + 1..base + width].to_vec(),
                }
            })
            .collect();
        Grid { objects, columns }
    }

    /// Horizontal face `d_i`.
    pub fn hface(&self, c: &TwoCategory, i: usize) -> Grid {
        let p = self.columns.len();
        let mut g = self.clone();
        g.objects.remove(i);
        if i == 0 {
            g.columns.remove(0);
        } else if i == p {
            g.columns.pop();
        } else {
            let merged = g.columns[i - 1].then(c, &g.columns[i]);
            g.columns.splice(i - 1..=i, [merged]);
        }
        g
    }

    /// Horizontal degeneracy `s_i`: repeat `c_i` with an identity column.
    pub fn hdegeneracy(&self, c: &TwoCategory, i: usize, q: usize) -> Grid {
        let mut g = self.clone();
        let x = g.objects[i];
        g.objects.insert(i, x);
        g.columns.insert(i, Column::identity(c, x, q));
        g
    }

    pub fn vface(&self, c: &TwoCategory, j: usize) -> Grid {
        Grid {
            objects: self.objects.clone(),
            columns: self.columns.iter().map(|col| col.face(c, j)).collect(),
        }
    }

    pub fn vdegeneracy(&self, c: &TwoCategory, j: usize) -> Grid {
        Grid {
            objects: self.objects.clone(),
            columns: self
                .columns
                .iter()
                .map(|col| col.degeneracy(c, j))
                .collect(),
        }
    }

    pub fn map(&self, f: &TwoFunctor) -> Grid {
        Grid {
            objects: self.objects.iter().map(|&x| f.obj(x)).collect(),
            columns: self.columns.iter().map(|col| col.map(f)).collect(),
        }
    }
}

/// A hom category `(source, target)` and a chain length.
type HomKey = (CellId, CellId, usize);

/// Vertical chains per hom category, computed on demand.
pub struct Columns<'a> {
    c: &'a TwoCategory,
    cache: Mutex<HashMap<HomKey, std::sync::Arc<Vec<Column>>>>,
}

impl<'a> Columns<'a> {
    pub fn new(c: &'a TwoCategory) -> Self {
        Self {
            c,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// All columns of height `q` in the hom category from `a` to `b`.
    pub fn get(&self, a: CellId, b: CellId, q: usize) -> std::sync::Arc<Vec<Column>> {
        if let Some(v) = self.cache.lock().unwrap().get(&(a, b, q)) {
            return v.clone();
        }
        let v: Vec<Column> = if q == 0 {
            self.c
                .hom(a, b)
                .into_iter()
                .map(|f| Column {
                    ones: vec![f],
                    twos: Vec::new(),
                })
                .collect()
        } else {
            let shorter = self.get(a, b, q - 1);
            let mut out = Vec::new();
            for col in shorter.iter() {
                let top = *col.ones.last().unwrap();
                for &al in self.c.two_cells_from(top) {
                    let mut next = col.clone();
                    next.ones.push(self.c.tgt2(al));
                    next.twos.push(al);
                    out.push(next);
                }
            }
            out
        };
        let v = std::sync::Arc::new(v);
        self.cache.lock().unwrap().insert((a, b, q), v.clone());
        v
    }

    /// Every object sequence `c_0 … c_p` with one column of the given
    /// heights per step, depth first in index order.
    pub fn staircases(&self, p: usize, height: impl Fn(usize) -> usize) -> Vec<Grid> {
        let mut out = Vec::new();
        let mut stack: Vec<Grid> = (0..self.c.object_count())
            .rev()
            .map(|x| Grid {
                objects: vec![x],
                columns: Vec::new(),
            })
            .collect();
        while let Some(g) = stack.pop() {
            let m = g.columns.len();
            if m == p {
                out.push(g);
                continue;
            }
            let a = *g.objects.last().unwrap();
            let mut children = Vec::new();
            for b in 0..self.c.object_count() {
                for col in self.get(a, b, height(m + 1)).iter() {
                    let mut next = g.clone();
                    next.objects.push(b);
                    next.columns.push(col.clone());
                    children.push(next);
                }
            }
            stack.extend(children.into_iter().rev());
        }
        out
    }
}

/// Nerve of a category: level `p` is the set of composable `p`-chains.
///
/// The input must have only identity 2-cells.
pub fn nerve_category(
    a: &TwoCategory,
    t: impl Into<Truncation>,
) -> Result<SimplicialSet, SimplicialError> {
    let t = t.into();
    if !a.is_locally_discrete() {
        return Err(SimplicialError::Unsupported(
            "nerve_category needs a category: found a non-identity 2-cell".into(),
        ));
    }
    let cols = Columns::new(a);
    SimplicialSet::build(
        t.bound,
        t.budget,
        |p| Ok(cols.staircases(p, |_| 0).iter().map(Grid::encode).collect()),
        |p, i, s| Grid::decode(p, 0, s).hface(a, i).encode(),
        |p, i, s| Grid::decode(p, 0, s).hdegeneracy(a, i, 0).encode(),
    )
}

/// Double nerve on the square window `p, q ≤ N`; direction 0 composes 1-cells
/// horizontally, direction 1 composes 2-cells vertically.
pub fn double_nerve(
    c: &TwoCategory,
    t: impl Into<Truncation>,
) -> Result<BisimplicialSet, SimplicialError> {
    let t = t.into();
    double_nerve_on(c, square_window(t.bound), t.budget)
}

/// Double nerve on an explicit window.
pub fn double_nerve_on(
    c: &TwoCategory,
    window: Vec<Vec<usize>>,
    budget: usize,
) -> Result<BisimplicialSet, SimplicialError> {
    let cols = Columns::new(c);
    MultiSimplicialSet::build(
        2,
        window,
        budget,
        |idx| {
            Ok(cols
                .staircases(idx[0], |_| idx[1])
                .iter()
                .map(Grid::encode)
                .collect())
        },
        |idx, dir, i, s| {
            let g = Grid::decode(idx[0], idx[1], s);
            if dir == 0 {
                g.hface(c, i)
            } else {
                g.vface(c, i)
            }
            .encode()
        },
        |idx, dir, i, s| {
            let g = Grid::decode(idx[0], idx[1], s);
            if dir == 0 {
                g.hdegeneracy(c, i, idx[1])
            } else {
                g.vdegeneracy(c, i)
            }
            .encode()
        },
    )
    .map(BisimplicialSet::new)
}

/// The bisimplicial map induced by a 2-functor on double nerves.
pub fn double_nerve_map(
    f: &TwoFunctor,
    source: &BisimplicialSet,
    target: &BisimplicialSet,
) -> Result<BisimplicialMap, SimplicialError> {
    let mut levels = std::collections::BTreeMap::new();
    for (idx, level) in source.levels() {
        let table = level
            .simplices()
            .iter()
            .map(|s| {
                let image = Grid::decode(idx[0], idx[1], s).map(f).encode();
                target
                    .find(idx, &image)
                    .ok_or_else(|| SimplicialError::MissingSimplex {
                        map: format!("double nerve of a 2-functor at {idx:?}"),
                        simplex: format!("{s:?}"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        levels.insert(idx.clone(), table);
    }
    Ok(BisimplicialMap { levels })
}

/// `Diag nn C` up to level `N`.
pub fn diag_nerve(
    c: &TwoCategory,
    t: impl Into<Truncation>,
) -> Result<SimplicialSet, SimplicialError> {
    let t = t.into();
    diag(&double_nerve(c, t)?, t.bound)
}

/// The map `Diag nn F` induced by a 2-functor.
pub fn diag_nerve_map(
    f: &TwoFunctor,
    source: &std::sync::Arc<SimplicialSet>,
    target: &std::sync::Arc<SimplicialSet>,
) -> Result<SimplicialMap, SimplicialError> {
    SimplicialMap::from_fn(source, target, |n, s| {
        Ok(Grid::decode(n, n, s).map(f).encode())
    })
}

/// An `n`-simplex of `W̄ nn C` in explicit form: objects `c_0 … c_n` and, for
/// each `m`, a column of height `m - 1` in the hom from `c_{m-1}` to `c_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    pub objects: Vec<CellId>,
    pub columns: Vec<Column>,
}

impl Staircase {
    pub fn encode(&self) -> Simplex {
        let mut out = self.objects.clone();
        for col in &self.columns {
            col.push_to(&mut out);
        }
        out
    }

    pub fn decode(n: usize, s: &[usize]) -> Staircase {
        let objects = s[..=n].to_vec();
        let mut columns = Vec::with_capacity(n);
        let mut at = n + 1;
        for m in 1..=n {
            columns.push(Column {
                ones: s[at..at + m].to_vec(),
                twos: s[at + m..at + 2 * m - 1].to_vec(),
            });
            at += 2 * m - 1;
        }
        Staircase { objects, columns }
    }

    /// Face `d_i`: delete `c_i`, composing the columns on either side of it.
    pub fn face(&self, c: &TwoCategory, i: usize) -> Staircase {
        let n = self.columns.len();
        let mut objects = self.objects.clone();
        objects.remove(i);
        let mut columns = Vec::with_capacity(n - 1);
        for m in 1..=n {
            let col = &self.columns[m - 1];
            if m < i {
                columns.push(col.clone());
            } else if m == i {
                if i < n {
                    let later = &self.columns[i];
                    let mut merged = Column {
                        ones: later.ones[..i].to_vec(),
                        twos: later.twos[..i - 1].to_vec(),
                    };
                    merged = col.then(c, &merged);
                    columns.push(merged);
                }
            } else if m == i + 1 {
                // Already merged into column i, or removed with c_0.
            } else {
                columns.push(col.face(c, i));
            }
        }
        Staircase { objects, columns }
    }

    /// Degeneracy `s_i`: repeat `c_i` with identity cells in the new column.
    pub fn degeneracy(&self, c: &TwoCategory, i: usize) -> Staircase {
        let mut objects = self.objects.clone();
        let x = objects[i];
        objects.insert(i, x);
        let mut columns = Vec::with_capacity(self.columns.len() + 1);
        for (m0, col) in self.columns.iter().enumerate() {
            let m = m0 + 1;
            if m == i + 1 {
                columns.push(Column::identity(c, x, i));
            }
            if m <= i {
                columns.push(col.clone());
            } else {
                columns.push(col.degeneracy(c, i));
            }
        }
        if self.columns.len() == i {
            columns.push(Column::identity(c, x, i));
        }
        Staircase { objects, columns }
    }

    pub fn map(&self, f: &TwoFunctor) -> Staircase {
        Staircase {
            objects: self.objects.iter().map(|&x| f.obj(x)).collect(),
            columns: self.columns.iter().map(|col| col.map(f)).collect(),
        }
    }
}

/// `W̄ nn C` in the explicit form of [`Staircase`].
pub fn wbar_double_nerve(
    c: &TwoCategory,
    t: impl Into<Truncation>,
) -> Result<SimplicialSet, SimplicialError> {
    let t = t.into();
    let cols = Columns::new(c);
    SimplicialSet::build(
        t.bound,
        t.budget,
        |n| {
            Ok(cols
                .staircases(n, |m| m - 1)
                .into_iter()
                .map(|g| {
                    Staircase {
                        objects: g.objects,
                        columns: g.columns,
                    }
                    .encode()
                })
                .collect())
        },
        |n, i, s| Staircase::decode(n, s).face(c, i).encode(),
        |n, i, s| Staircase::decode(n, s).degeneracy(c, i).encode(),
    )
}

/// Rewrites a codiagonal tuple of double-nerve simplices in explicit form:
/// `c_m` is the first object of `t_{n-m,m}` and column `m` is the first
/// column of `t_{n-m+1,m-1}`.
pub fn repackage(grids: &[Grid]) -> Staircase {
    let n = grids.len() - 1;
    let objects = (0..=n).map(|m| grids[m].objects[0]).collect();
    let columns = (1..=n).map(|m| grids[m - 1].columns[0].clone()).collect();
    Staircase { objects, columns }
}

/// The canonical map `W̄(nn C) → wbar_double_nerve(C)`.
pub fn repackaging_map(
    nn: &BisimplicialSet,
    source: &std::sync::Arc<SimplicialSet>,
    target: &std::sync::Arc<SimplicialSet>,
) -> Result<SimplicialMap, SimplicialError> {
    SimplicialMap::from_fn(source, target, |n, s| {
        let grids: Vec<Grid> = s
            .iter()
            .enumerate()
            .map(|(j, &k)| Grid::decode(n - j, j, nn.simplex(&[n - j, j], k)))
            .collect();
        Ok(repackage(&grids).encode())
    })
}

/// Builds `W̄ nn C` both ways together with the repackaging map between them.
pub fn wbar_repackaging(
    c: &TwoCategory,
    t: impl Into<Truncation>,
) -> Result<SimplicialMap, SimplicialError> {
    let t = t.into();
    let nn = double_nerve(c, t)?;
    let w = std::sync::Arc::new(wbar(&nn, t)?);
    let explicit = std::sync::Arc::new(wbar_double_nerve(c, t)?);
    repackaging_map(&nn, &w, &explicit)
}

/// The trisimplicial set `(p, n, q) ↦ nn_{n,q} S_p` on the given window;
/// direction 0 applies the structure 2-functors of `S` cellwise.
pub fn nerve_simplicial_twocat(
    s: &SimplicialTwoCategory,
    window: Vec<Vec<usize>>,
    budget: usize,
) -> Result<TrisimplicialSet, SimplicialError> {
    let columns: Vec<Columns> = s.levels.iter().map(|c| Columns::new(c)).collect();
    for idx in &window {
        if idx[0] > s.bound() {
            return Err(SimplicialError::InsufficientWindow(idx.clone()));
        }
    }
    MultiSimplicialSet::build(
        3,
        window,
        budget,
        |idx| {
            Ok(columns[idx[0]]
                .staircases(idx[1], |_| idx[2])
                .iter()
                .map(Grid::encode)
                .collect())
        },
        |idx, dir, i, x| {
            let (p, n, q) = (idx[0], idx[1], idx[2]);
            let g = Grid::decode(n, q, x);
            match dir {
                0 => g.map(s.face(p, i)),
                1 => g.hface(&s.levels[p], i),
                _ => g.vface(&s.levels[p], i),
            }
            .encode()
        },
        |idx, dir, i, x| {
            let (p, n, q) = (idx[0], idx[1], idx[2]);
            let g = Grid::decode(n, q, x);
            match dir {
                0 => g.map(s.degeneracy(p, i)),
                1 => g.hdegeneracy(&s.levels[p], i, q),
                _ => g.vdegeneracy(&s.levels[p], i),
            }
            .encode()
        },
    )
    .map(TrisimplicialSet::new)
}

/// `Diag nn S` for a simplicial 2-category, levels `0..=N`: the `n`-simplices
/// are the `(n, n)`-grids of `S_n`.
pub fn diag_nerve_simplicial(
    s: &SimplicialTwoCategory,
    t: impl Into<Truncation>,
) -> Result<SimplicialSet, SimplicialError> {
    let t = t.into();
    if t.bound > s.bound() {
        return Err(SimplicialError::InsufficientWindow(vec![t.bound]));
    }
    SimplicialSet::build(
        t.bound,
        t.budget,
        |n| {
            Ok(Columns::new(&s.levels[n])
                .staircases(n, |_| n)
                .iter()
                .map(Grid::encode)
                .collect())
        },
        |n, i, x| {
            let below = &s.levels[n - 1];
            Grid::decode(n, n, x)
                .map(s.face(n, i))
                .hface(below, i)
                .vface(below, i)
                .encode()
        },
        |n, j, x| {
            let above = &s.levels[n + 1];
            Grid::decode(n, n, x)
                .map(s.degeneracy(n, j))
                .hdegeneracy(above, j, n)
                .vdegeneracy(above, j)
                .encode()
        },
    )
}

/// The map on `Diag nn` induced by a levelwise family of 2-functors.
pub fn diag_nerve_simplicial_map(
    family: &[TwoFunctor],
    source: &std::sync::Arc<SimplicialSet>,
    target: &std::sync::Arc<SimplicialSet>,
) -> Result<SimplicialMap, SimplicialError> {
    SimplicialMap::from_fn(source, target, |n, x| {
        let f = family
            .get(n)
            .ok_or_else(|| SimplicialError::InsufficientWindow(vec![n]))?;
        Ok(Grid::decode(n, n, x).map(f).encode())
    })
}
