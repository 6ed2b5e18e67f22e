//! Cell maps between 2-categories and their axiom checks.

use std::sync::Arc;

use super::{CellId, TwoCategory};
use crate::report::ValidationReport;

/// A strict 2-functor, stored as its action on each level of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFunctor {
    pub source: Arc<TwoCategory>,
    pub target: Arc<TwoCategory>,
    pub objects: Vec<CellId>,
    pub one_cells: Vec<CellId>,
    pub two_cells: Vec<CellId>,
}

impl TwoFunctor {
    pub fn identity(c: &Arc<TwoCategory>) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.object_count()).collect(),
            one_cells: (0..c.one_cell_count()).collect(),
            two_cells: (0..c.two_cell_count()).collect(),
        }
    }

    /// The functor collapsing `c` onto a 2-category with one cell at each level.
    pub fn to_terminal(c: &Arc<TwoCategory>, terminal: &Arc<TwoCategory>) -> Self {
        Self {
            source: c.clone(),
            target: terminal.clone(),
            objects: vec![0; c.object_count()],
            one_cells: vec![0; c.one_cell_count()],
            two_cells: vec![0; c.two_cell_count()],
        }
    }

    pub fn obj(&self, x: CellId) -> CellId {
        self.objects[x]
    }

    pub fn one(&self, f: CellId) -> CellId {
        self.one_cells[f]
    }

    pub fn two(&self, a: CellId) -> CellId {
        self.two_cells[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &TwoFunctor) -> TwoFunctor {
        TwoFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&x| next.obj(x)).collect(),
            one_cells: self.one_cells.iter().map(|&f| next.one(f)).collect(),
            two_cells: self.two_cells.iter().map(|&a| next.two(a)).collect(),
        }
    }

    /// Equality of the underlying cell maps, ignoring how the endpoints are shared.
    pub fn same_cells(&self, other: &TwoFunctor) -> bool {
        self.objects == other.objects
            && self.one_cells == other.one_cells
            && self.two_cells == other.two_cells
    }

    /// Whether the functor is a bijection on objects, 1-cells and 2-cells.
    pub fn is_bijective(&self) -> bool {
        let onto = |map: &[CellId], size: usize| {
            let mut hit = vec![false; size];
            map.len() == size
                && map
                    .iter()
                    .all(|&k| k < size && !std::mem::replace(&mut hit[k], true))
        };
        let t = &*self.target;
        onto(&self.objects, t.object_count())
            && onto(&self.one_cells, t.one_cell_count())
            && onto(&self.two_cells, t.two_cell_count())
    }
}

/// A strict 2-natural transformation `F ⇒ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoNaturalTransformation {
    pub source: TwoFunctor,
    pub target: TwoFunctor,
    pub components: Vec<CellId>,
}

impl TwoNaturalTransformation {
    pub fn identity(f: &TwoFunctor) -> Self {
        Self {
            source: f.clone(),
            target: f.clone(),
            components: f.objects.iter().map(|&x| f.target.id1(x)).collect(),
        }
    }

    pub fn component(&self, x: CellId) -> CellId {
        self.components[x]
    }
}

/// Orientation of the naturality 2-cells of an [`OplaxTransformation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `η_f : η_b ∘ Ff ⇒ Gf ∘ η_a`.
    Forward,
    /// `η_f : Gf ∘ η_a ⇒ η_b ∘ Ff`.
    Backward,
}

/// A transformation whose naturality squares are filled by coherent 2-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OplaxTransformation {
    pub source: TwoFunctor,
    pub target: TwoFunctor,
    pub components: Vec<CellId>,
    /// Indexed by the 1-cells of the common source 2-category.
    pub naturality: Vec<CellId>,
    pub direction: Direction,
}

/// A modification `Γ ⇛ Γ'` between parallel 2-natural transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modification {
    pub source: TwoNaturalTransformation,
    pub target: TwoNaturalTransformation,
    pub components: Vec<CellId>,
}

/// The kinds of cell map accepted by [`check_cell_map`].
#[derive(Clone, Copy, Debug)]
pub enum CellMap<'a> {
    TwoFunctor(&'a TwoFunctor),
    TwoNatural(&'a TwoNaturalTransformation),
    Oplax(&'a OplaxTransformation),
    Modification(&'a Modification),
}

pub fn check_cell_map(map: CellMap<'_>) -> ValidationReport {
    match map {
        CellMap::TwoFunctor(f) => check_two_functor(f),
        CellMap::TwoNatural(t) => check_two_natural(t),
        CellMap::Oplax(t) => check_oplax(t),
        CellMap::Modification(m) => check_modification(m),
    }
}

pub fn check_two_functor(f: &TwoFunctor) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (a, c) = (&*f.source, &*f.target);
    if f.objects.len() != a.object_count()
        || f.one_cells.len() != a.one_cell_count()
        || f.two_cells.len() != a.two_cell_count()
    {
        r.push("2-functor shape", "cell maps do not cover the source");
        return r;
    }
    let (no, n1, n2) = (c.object_count(), c.one_cell_count(), c.two_cell_count());
    if f.objects.iter().any(|&x| x >= no)
        || f.one_cells.iter().any(|&x| x >= n1)
        || f.two_cells.iter().any(|&x| x >= n2)
    {
        r.push("2-functor shape", "image cell outside the target");
        return r;
    }
    let name1 = |g: CellId| a.one_cell(g).name.clone();
    let name2 = |g: CellId| a.two_cell(g).name.clone();
    for g in 0..a.one_cell_count() {
        let fg = f.one(g);
        r.require(
            c.src1(fg) == f.obj(a.src1(g)) && c.tgt1(fg) == f.obj(a.tgt1(g)),
            "2-functor preserves 1-cell boundary",
            || name1(g),
        );
    }
    for al in 0..a.two_cell_count() {
        let fa = f.two(al);
        r.require(
            c.src2(fa) == f.one(a.src2(al)) && c.tgt2(fa) == f.one(a.tgt2(al)),
            "2-functor preserves 2-cell boundary",
            || format!("{} sent to {}", name2(al), c.two_cell(fa).name),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for x in 0..a.object_count() {
        r.require(
            c.try_id1(f.obj(x)) == Some(f.one(a.id1(x))),
            "2-functor preserves id1",
            || a.object_name(x).to_string(),
        );
    }
    for g in 0..a.one_cell_count() {
        r.require(
            c.try_id2(f.one(g)) == Some(f.two(a.id2(g))),
            "2-functor preserves id2",
            || name1(g),
        );
    }
    for (&(g, h), &v) in a.hcomp1_table() {
        r.require(
            c.try_comp1(f.one(g), f.one(h)) == Some(f.one(v)),
            "2-functor preserves hcomp1",
            || format!("{} ∘ {}", name1(g), name1(h)),
        );
    }
    for (&(b, al), &v) in a.vcomp2_table() {
        r.require(
            c.try_vcomp(f.two(b), f.two(al)) == Some(f.two(v)),
            "2-functor preserves vcomp2",
            || format!("{} · {}", name2(b), name2(al)),
        );
    }
    for (&(b, al), &v) in a.hcomp2_table() {
        r.require(
            c.try_hcomp(f.two(b), f.two(al)) == Some(f.two(v)),
            "2-functor preserves hcomp2",
            || format!("{} ∘ {}", name2(b), name2(al)),
        );
    }
    r
}

fn parallel(f: &TwoFunctor, g: &TwoFunctor) -> bool {
    f.source == g.source && f.target == g.target
}

pub fn check_two_natural(t: &TwoNaturalTransformation) -> ValidationReport {
    let mut r = ValidationReport::new();
    if !parallel(&t.source, &t.target) {
        r.push(
            "2-natural transformation shape",
            "functors are not parallel",
        );
        return r;
    }
    r.merge(check_two_functor(&t.source).within("source functor"));
    r.merge(check_two_functor(&t.target).within("target functor"));
    if !r.is_empty() {
        return r;
    }
    let (f, g) = (&t.source, &t.target);
    let (a, c) = (&*f.source, &*f.target);
    if t.components.len() != a.object_count()
        || t.components.iter().any(|&e| e >= c.one_cell_count())
    {
        r.push(
            "2-natural transformation shape",
            "components do not cover the source objects",
        );
        return r;
    }
    for x in 0..a.object_count() {
        let e = t.component(x);
        r.require(
            c.src1(e) == f.obj(x) && c.tgt1(e) == g.obj(x),
            "component boundary",
            || a.object_name(x).to_string(),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for h in 0..a.one_cell_count() {
        let (x, y) = (a.src1(h), a.tgt1(h));
        r.require(
            c.comp1(g.one(h), t.component(x)) == c.comp1(t.component(y), f.one(h)),
            "1-cell naturality",
            || a.one_cell(h).name.clone(),
        );
    }
    for al in 0..a.two_cell_count() {
        let h = a.src2(al);
        let (x, y) = (a.src1(h), a.tgt1(h));
        r.require(
            c.whisker_right(g.two(al), t.component(x)) == c.whisker_left(t.component(y), f.two(al)),
            "2-cell naturality",
            || a.two_cell(al).name.clone(),
        );
    }
    r
}

pub fn check_oplax(t: &OplaxTransformation) -> ValidationReport {
    let mut r = ValidationReport::new();
    if !parallel(&t.source, &t.target) {
        r.push("oplax shape", "functors are not parallel");
        return r;
    }
    r.merge(check_two_functor(&t.source).within("source functor"));
    r.merge(check_two_functor(&t.target).within("target functor"));
    if !r.is_empty() {
        return r;
    }
    let (f, g) = (&t.source, &t.target);
    let (a, c) = (&*f.source, &*f.target);
    if t.components.len() != a.object_count()
        || t.naturality.len() != a.one_cell_count()
        || t.components.iter().any(|&e| e >= c.one_cell_count())
        || t.naturality.iter().any(|&e| e >= c.two_cell_count())
    {
        r.push("oplax shape", "components do not cover the source");
        return r;
    }
    let eta = |x: CellId| t.components[x];
    for x in 0..a.object_count() {
        let e = eta(x);
        r.require(
            c.src1(e) == f.obj(x) && c.tgt1(e) == g.obj(x),
            "oplax component boundary",
            || a.object_name(x).to_string(),
        );
    }
    if !r.is_empty() {
        return r;
    }
    let name1 = |h: CellId| a.one_cell(h).name.clone();
    // The two sides of each naturality square, in the recorded direction.
    let upper = |h: CellId| c.comp1(eta(a.tgt1(h)), f.one(h));
    let lower = |h: CellId| c.comp1(g.one(h), eta(a.src1(h)));
    let (from, to): (&dyn Fn(CellId) -> CellId, &dyn Fn(CellId) -> CellId) = match t.direction {
        Direction::Forward => (&upper, &lower),
        Direction::Backward => (&lower, &upper),
    };
    for h in 0..a.one_cell_count() {
        let n = t.naturality[h];
        r.require(
            c.src2(n) == from(h) && c.tgt2(n) == to(h),
            "oplax naturality boundary",
            || name1(h),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for x in 0..a.object_count() {
        r.require(
            t.naturality[a.id1(x)] == c.id2(eta(x)),
            "oplax unit axiom",
            || a.object_name(x).to_string(),
        );
    }
    for (&(k, h), &kh) in a.hcomp1_table() {
        let (nk, nh) = (t.naturality[k], t.naturality[h]);
        let expected = match t.direction {
            // η_{k∘h} = (1_{Gk} ∘ η_h) · (η_k ∘ 1_{Fh})
            Direction::Forward => {
                c.vcomp(c.whisker_left(g.one(k), nh), c.whisker_right(nk, f.one(h)))
            }
            // η_{k∘h} = (η_k ∘ 1_{Fh}) · (1_{Gk} ∘ η_h)
            Direction::Backward => {
                c.vcomp(c.whisker_right(nk, f.one(h)), c.whisker_left(g.one(k), nh))
            }
        };
        r.require(
            t.naturality[kh] == expected,
            "oplax composition axiom",
            || format!("{} ∘ {}", name1(k), name1(h)),
        );
    }
    for al in 0..a.two_cell_count() {
        let (h, k) = (a.src2(al), a.tgt2(al));
        let (x, y) = (a.src1(h), a.tgt1(h));
        let (lhs, rhs) = match t.direction {
            Direction::Forward => (
                c.vcomp(c.whisker_right(g.two(al), eta(x)), t.naturality[h]),
                c.vcomp(t.naturality[k], c.whisker_left(eta(y), f.two(al))),
            ),
            Direction::Backward => (
                c.vcomp(c.whisker_left(eta(y), f.two(al)), t.naturality[h]),
                c.vcomp(t.naturality[k], c.whisker_right(g.two(al), eta(x))),
            ),
        };
        r.require(lhs == rhs, "oplax 2-cell compatibility", || {
            a.two_cell(al).name.clone()
        });
    }
    r
}

pub fn check_modification(m: &Modification) -> ValidationReport {
    let mut r = ValidationReport::new();
    if m.source.source != m.target.source || m.source.target != m.target.target {
        r.push("modification shape", "transformations are not parallel");
        return r;
    }
    r.merge(check_two_natural(&m.source).within("source transformation"));
    r.merge(check_two_natural(&m.target).within("target transformation"));
    if !r.is_empty() {
        return r;
    }
    let (f, g) = (&m.source.source, &m.source.target);
    let (a, c) = (&*f.source, &*f.target);
    if m.components.len() != a.object_count()
        || m.components.iter().any(|&e| e >= c.two_cell_count())
    {
        r.push(
            "modification shape",
            "components do not cover the source objects",
        );
        return r;
    }
    for x in 0..a.object_count() {
        let e = m.components[x];
        r.require(
            c.src2(e) == m.source.component(x) && c.tgt2(e) == m.target.component(x),
            "modification component boundary",
            || a.object_name(x).to_string(),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for al in 0..a.two_cell_count() {
        let h = a.src2(al);
        let (x, y) = (a.src1(h), a.tgt1(h));
        r.require(
            c.hcomp(m.components[y], f.two(al)) == c.hcomp(g.two(al), m.components[x]),
            "modification axiom",
            || a.two_cell(al).name.clone(),
        );
    }
    r
}
