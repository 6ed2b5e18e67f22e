//! The levels of the homotopy colimit of a 2-diagram and its structure maps.

use std::sync::Arc;

use crate::category::{
    assemble, check_two_functor, Assembly, CellId, CellKeys, DiagramModification, DiagramMorphism,
    TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation, Variance,
};
use crate::report::ValidationReport;

use super::SimplicialTwoCategory;

/// Object of a level: a chain `c_0 → … → c_p` of base 1-cells and an object
/// of the fibre at the free end (`c_0` covariantly, `c_p` contravariantly).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainObject {
    pub chain: Vec<CellId>,
    pub arrows: Vec<CellId>,
    pub x: CellId,
}

/// 1-cell of a level: a base 2-cell per step and a fibre 1-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainOne {
    pub chain: Vec<CellId>,
    pub twos: Vec<CellId>,
    pub u: CellId,
}

/// 2-cell of a level: identities on the base 2-cells and a fibre 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainTwo {
    pub chain: Vec<CellId>,
    pub twos: Vec<CellId>,
    pub phi: CellId,
}

pub type HocolimLevel = Assembly<ChainObject, ChainOne, ChainTwo>;

/// The homotopy colimit together with the key of every cell at every level.
#[derive(Clone, Debug)]
pub struct Hocolim {
    pub diagram: Arc<TwoDiagram>,
    pub simplicial: SimplicialTwoCategory,
    pub levels: Vec<HocolimLevel>,
}

struct LevelKeys<'a> {
    d: &'a TwoDiagram,
}

impl LevelKeys<'_> {
    fn fibre(&self, chain: &[CellId]) -> &TwoCategory {
        let c = match self.d.variance {
            Variance::Covariant => chain[0],
            Variance::Contravariant => *chain.last().unwrap(),
        };
        &self.d.fibres[c]
    }
}

impl CellKeys for LevelKeys<'_> {
    type Obj = ChainObject;
    type One = ChainOne;
    type Two = ChainTwo;

    fn one_boundary(&self, f: &ChainOne) -> (ChainObject, ChainObject) {
        let (b, fib) = (&*self.d.base, self.fibre(&f.chain));
        (
            ChainObject {
                chain: f.chain.clone(),
                arrows: f.twos.iter().map(|&a| b.src2(a)).collect(),
                x: fib.src1(f.u),
            },
            ChainObject {
                chain: f.chain.clone(),
                arrows: f.twos.iter().map(|&a| b.tgt2(a)).collect(),
                x: fib.tgt1(f.u),
            },
        )
    }
    fn two_boundary(&self, a: &ChainTwo) -> (ChainOne, ChainOne) {
        let fib = self.fibre(&a.chain);
        let side = |u| ChainOne {
            chain: a.chain.clone(),
            twos: a.twos.clone(),
            u,
        };
        (side(fib.src2(a.phi)), side(fib.tgt2(a.phi)))
    }
    fn id1(&self, x: &ChainObject) -> ChainOne {
        ChainOne {
            chain: x.chain.clone(),
            twos: x.arrows.iter().map(|&f| self.d.base.id2(f)).collect(),
            u: self.fibre(&x.chain).id1(x.x),
        }
    }
    fn id2(&self, f: &ChainOne) -> ChainTwo {
        ChainTwo {
            chain: f.chain.clone(),
            twos: f.twos.clone(),
            phi: self.fibre(&f.chain).id2(f.u),
        }
    }
    fn comp1(&self, g: &ChainOne, f: &ChainOne) -> ChainOne {
        let b = &*self.d.base;
        ChainOne {
            chain: f.chain.clone(),
            twos: g
                .twos
                .iter()
                .zip(&f.twos)
                .map(|(&y, &x)| b.vcomp(y, x))
                .collect(),
            u: self.fibre(&f.chain).comp1(g.u, f.u),
        }
    }
    fn vcomp(&self, b: &ChainTwo, a: &ChainTwo) -> ChainTwo {
        ChainTwo {
            chain: a.chain.clone(),
            twos: a.twos.clone(),
            phi: self.fibre(&a.chain).vcomp(b.phi, a.phi),
        }
    }
    fn hcomp(&self, b: &ChainTwo, a: &ChainTwo) -> ChainTwo {
        let base = &*self.d.base;
        ChainTwo {
            chain: a.chain.clone(),
            twos: b
                .twos
                .iter()
                .zip(&a.twos)
                .map(|(&y, &x)| base.vcomp(y, x))
                .collect(),
            phi: self.fibre(&a.chain).hcomp(b.phi, a.phi),
        }
    }
    fn object_name(&self, x: &ChainObject) -> String {
        let b = &*self.d.base;
        let tail: Vec<&str> = if x.arrows.is_empty() {
            vec![b.object_name(x.chain[0])]
        } else {
            x.arrows
                .iter()
                .map(|&f| b.one_cell(f).name.as_str())
                .collect()
        };
        format!(
            "{}|{}",
            self.fibre(&x.chain).object_name(x.x),
            tail.join(",")
        )
    }
    fn one_name(&self, f: &ChainOne) -> String {
        let b = &*self.d.base;
        let tail: Vec<&str> = f
            .twos
            .iter()
            .map(|&a| b.two_cell(a).name.as_str())
            .collect();
        format!(
            "{}|{}",
            self.fibre(&f.chain).one_cell(f.u).name,
            tail.join(",")
        )
    }
    fn two_name(&self, a: &ChainTwo) -> String {
        let b = &*self.d.base;
        let tail: Vec<&str> = a
            .twos
            .iter()
            .map(|&x| b.two_cell(x).name.as_str())
            .collect();
        format!(
            "{}|{}",
            self.fibre(&a.chain).two_cell(a.phi).name,
            tail.join(",")
        )
    }
}

/// Every object chain `c_0 … c_p` with one choice from `step(c_{i-1}, c_i)` per step.
fn chains(
    b: &TwoCategory,
    p: usize,
    step: &dyn Fn(CellId, CellId) -> Vec<CellId>,
) -> Vec<(Vec<CellId>, Vec<CellId>)> {
    let mut out: Vec<(Vec<CellId>, Vec<CellId>)> = (0..b.object_count())
        .map(|x| (vec![x], Vec::new()))
        .collect();
    for _ in 0..p {
        let mut next = Vec::new();
        for (chain, picks) in &out {
            let a = *chain.last().unwrap();
            for c in 0..b.object_count() {
                for pick in step(a, c) {
                    let mut ch = chain.clone();
                    ch.push(c);
                    let mut pk = picks.clone();
                    pk.push(pick);
                    next.push((ch, pk));
                }
            }
        }
        out = next;
    }
    out
}

fn build_level(d: &TwoDiagram, p: usize) -> HocolimLevel {
    let keys = LevelKeys { d };
    let b = &*d.base;
    let mut objects = Vec::new();
    for (chain, arrows) in chains(b, p, &|x, y| b.hom(x, y)) {
        for x in 0..keys.fibre(&chain).object_count() {
            objects.push(ChainObject {
                chain: chain.clone(),
                arrows: arrows.clone(),
                x,
            });
        }
    }
    let mut ones = Vec::new();
    let mut twos = Vec::new();
    for (chain, cells) in chains(b, p, &|x, y| b.hom2(x, y)) {
        let fib = keys.fibre(&chain);
        for u in 0..fib.one_cell_count() {
            ones.push(ChainOne {
                chain: chain.clone(),
                twos: cells.clone(),
                u,
            });
        }
        for phi in 0..fib.two_cell_count() {
            twos.push(ChainTwo {
                chain: chain.clone(),
                twos: cells.clone(),
                phi,
            });
        }
    }
    assemble(&keys, objects, ones, twos).expect("hocolim levels are closed under composition")
}

/// Builds a 2-functor between levels from its action on keys.
pub(crate) fn level_functor<O, A, T, O2, A2, T2>(
    source: &Assembly<O, A, T>,
    target: &Assembly<O2, A2, T2>,
    source_arc: &Arc<TwoCategory>,
    target_arc: &Arc<TwoCategory>,
    on_obj: impl Fn(&O) -> O2,
    on_one: impl Fn(&A) -> A2,
    on_two: impl Fn(&T) -> T2,
) -> TwoFunctor
where
    O: Eq + std::hash::Hash,
    A: Eq + std::hash::Hash,
    T: Eq + std::hash::Hash,
    O2: Eq + std::hash::Hash + std::fmt::Debug,
    A2: Eq + std::hash::Hash + std::fmt::Debug,
    T2: Eq + std::hash::Hash + std::fmt::Debug,
{
    let find = |what: &str, k: Option<CellId>, key: &dyn std::fmt::Debug| {
        k.unwrap_or_else(|| panic!("{what} image {key:?} is not a cell of the target"))
    };
    TwoFunctor {
        source: source_arc.clone(),
        target: target_arc.clone(),
        objects: source
            .objects
            .iter()
            .map(|k| {
                let i = on_obj(k);
                find("object", target.object(&i), &i)
            })
            .collect(),
        one_cells: source
            .one_cells
            .iter()
            .map(|k| {
                let i = on_one(k);
                find("1-cell", target.one_cell(&i), &i)
            })
            .collect(),
        two_cells: source
            .two_cells
            .iter()
            .map(|k| {
                let i = on_two(k);
                find("2-cell", target.two_cell(&i), &i)
            })
            .collect(),
    }
}

fn remove<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    let mut w = v.to_vec();
    w.remove(i);
    w
}

fn merge(v: &[CellId], i: usize, f: impl Fn(CellId, CellId) -> CellId) -> Vec<CellId> {
    // Entries are 1-based steps; steps i and i+1 become one.
    let mut w = v.to_vec();
    let m = f(w[i], w[i - 1]);
    w.splice(i - 1..=i, [m]);
    w
}

fn insert<T: Clone>(v: &[T], i: usize, x: T) -> Vec<T> {
    let mut w = v.to_vec();
    w.insert(i, x);
    w
}

/// Face `d_i` of the homotopy colimit on keys.
fn face_keys(
    d: &TwoDiagram,
    p: usize,
    i: usize,
) -> (
    impl Fn(&ChainObject) -> ChainObject + '_,
    impl Fn(&ChainOne) -> ChainOne + '_,
    impl Fn(&ChainTwo) -> ChainTwo + '_,
) {
    let b = &*d.base;
    let contra = d.variance == Variance::Contravariant;
    // The end at which the fibre sits transports; the other end drops.
    let transport_end = if contra { p } else { 0 };
    let obj = move |o: &ChainObject| {
        if i == transport_end {
            let (f, chain, arrows) = if contra {
                (
                    o.arrows[p - 1],
                    remove(&o.chain, p),
                    remove(&o.arrows, p - 1),
                )
            } else {
                (o.arrows[0], remove(&o.chain, 0), remove(&o.arrows, 0))
            };
            ChainObject {
                chain,
                arrows,
                x: d.on_one[f].obj(o.x),
            }
        } else if i == 0 || i == p {
            let step = if i == 0 { 0 } else { p - 1 };
            ChainObject {
                chain: remove(&o.chain, i),
                arrows: remove(&o.arrows, step),
                x: o.x,
            }
        } else {
            ChainObject {
                chain: remove(&o.chain, i),
                arrows: merge(&o.arrows, i, |g, f| b.comp1(g, f)),
                x: o.x,
            }
        }
    };
    let one = move |f: &ChainOne| {
        if i == transport_end {
            let step = if contra { p - 1 } else { 0 };
            let al = f.twos[step];
            let fib_src = &d.fibres[if contra { f.chain[p] } else { f.chain[0] }];
            let target_fibre = &d.fibres[if contra { f.chain[p - 1] } else { f.chain[1] }];
            let g = b.tgt2(al);
            let x = fib_src.src1(f.u);
            let u = target_fibre.comp1(d.on_one[g].one(f.u), d.on_two[al].component(x));
            ChainOne {
                chain: remove(&f.chain, i),
                twos: remove(&f.twos, step),
                u,
            }
        } else if i == 0 || i == p {
            let step = if i == 0 { 0 } else { p - 1 };
            ChainOne {
                chain: remove(&f.chain, i),
                twos: remove(&f.twos, step),
                u: f.u,
            }
        } else {
            ChainOne {
                chain: remove(&f.chain, i),
                twos: merge(&f.twos, i, |y, x| b.hcomp(y, x)),
                u: f.u,
            }
        }
    };
    let two = move |a: &ChainTwo| {
        if i == transport_end {
            let step = if contra { p - 1 } else { 0 };
            let al = a.twos[step];
            let fib_src = &d.fibres[if contra { a.chain[p] } else { a.chain[0] }];
            let target_fibre = &d.fibres[if contra { a.chain[p - 1] } else { a.chain[1] }];
            let g = b.tgt2(al);
            let x = fib_src.src1(fib_src.src2(a.phi));
            let whisker = target_fibre.id2(d.on_two[al].component(x));
            ChainTwo {
                chain: remove(&a.chain, i),
                twos: remove(&a.twos, step),
                phi: target_fibre.hcomp(d.on_one[g].two(a.phi), whisker),
            }
        } else if i == 0 || i == p {
            let step = if i == 0 { 0 } else { p - 1 };
            ChainTwo {
                chain: remove(&a.chain, i),
                twos: remove(&a.twos, step),
                phi: a.phi,
            }
        } else {
            ChainTwo {
                chain: remove(&a.chain, i),
                twos: merge(&a.twos, i, |y, x| b.hcomp(y, x)),
                phi: a.phi,
            }
        }
    };
    (obj, one, two)
}

/// The homotopy colimit of `d` up to level `bound`.
///
/// Level `p` is the coproduct over chains `c_0 → … → c_p` of the fibre at the
/// free end times the hom categories of the chain. Covariantly `d_0`
/// transports along the first 1-cell; contravariantly `d_p` transports along
/// the last one. Other faces compose or drop, degeneracies insert identities.
pub fn hocolim(d: &Arc<TwoDiagram>, bound: usize) -> Hocolim {
    let levels: Vec<HocolimLevel> = (0..=bound).map(|p| build_level(d, p)).collect();
    let arcs: Vec<Arc<TwoCategory>> = levels
        .iter()
        .map(|l| Arc::new(l.category.clone()))
        .collect();
    let b = &*d.base;
    let mut faces = Vec::with_capacity(bound + 1);
    let mut degeneracies = Vec::with_capacity(bound + 1);
    for p in 0..=bound {
        let mut fs = Vec::new();
        if p > 0 {
            for i in 0..=p {
                let (o, a, t) = face_keys(d, p, i);
                fs.push(level_functor(
                    &levels[p],
                    &levels[p - 1],
                    &arcs[p],
                    &arcs[p - 1],
                    o,
                    a,
                    t,
                ));
            }
        }
        faces.push(fs);
        let mut ss = Vec::new();
        if p < bound {
            for j in 0..=p {
                let obj = |o: &ChainObject| {
                    let c = o.chain[j];
                    ChainObject {
                        chain: insert(&o.chain, j, c),
                        arrows: insert(&o.arrows, j, b.id1(c)),
                        x: o.x,
                    }
                };
                let one = |f: &ChainOne| {
                    let c = f.chain[j];
                    ChainOne {
                        chain: insert(&f.chain, j, c),
                        twos: insert(&f.twos, j, b.id2_of_object(c)),
                        u: f.u,
                    }
                };
                let two = |a: &ChainTwo| {
                    let c = a.chain[j];
                    ChainTwo {
                        chain: insert(&a.chain, j, c),
                        twos: insert(&a.twos, j, b.id2_of_object(c)),
                        phi: a.phi,
                    }
                };
                ss.push(level_functor(
                    &levels[p],
                    &levels[p + 1],
                    &arcs[p],
                    &arcs[p + 1],
                    obj,
                    one,
                    two,
                ));
            }
        }
        degeneracies.push(ss);
    }
    Hocolim {
        diagram: d.clone(),
        simplicial: SimplicialTwoCategory {
            levels: arcs,
            faces,
            degeneracies,
        },
        levels,
    }
}

impl Hocolim {
    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    /// Fibre index of a chain.
    pub fn fibre_of(&self, chain: &[CellId]) -> CellId {
        match self.diagram.variance {
            Variance::Covariant => chain[0],
            Variance::Contravariant => *chain.last().unwrap(),
        }
    }
}

/// The levelwise 2-functors induced by a morphism of diagrams.
pub fn hocolim_map(g: &DiagramMorphism, source: &Hocolim, target: &Hocolim) -> Vec<TwoFunctor> {
    (0..=source.bound().min(target.bound()))
        .map(|p| {
            let (s, t) = (&source.levels[p], &target.levels[p]);
            let comp = |chain: &[CellId]| &g.components[source.fibre_of(chain)];
            level_functor(
                s,
                t,
                &source.simplicial.levels[p],
                &target.simplicial.levels[p],
                |o| ChainObject {
                    x: comp(&o.chain).obj(o.x),
                    ..o.clone()
                },
                |f| ChainOne {
                    u: comp(&f.chain).one(f.u),
                    ..f.clone()
                },
                |a| ChainTwo {
                    phi: comp(&a.chain).two(a.phi),
                    ..a.clone()
                },
            )
        })
        .collect()
}

/// The levelwise transformations induced by a modification of diagram morphisms.
pub fn hocolim_modification(
    m: &DiagramModification,
    source: &Hocolim,
    target: &Hocolim,
) -> Vec<TwoNaturalTransformation> {
    let from = hocolim_map(&m.source, source, target);
    let to = hocolim_map(&m.target, source, target);
    let b = &*source.diagram.base;
    from.into_iter()
        .zip(to)
        .enumerate()
        .map(|(p, (f, g))| {
            let components = source.levels[p]
                .objects
                .iter()
                .map(|o| {
                    let key = ChainOne {
                        chain: o.chain.clone(),
                        twos: o.arrows.iter().map(|&a| b.id2(a)).collect(),
                        u: m.components[source.fibre_of(&o.chain)].component(o.x),
                    };
                    target.levels[p]
                        .one_cell(&key)
                        .expect("modification component is a cell")
                })
                .collect();
            TwoNaturalTransformation {
                source: f,
                target: g,
                components,
            }
        })
        .collect()
}

/// Checks a levelwise family of 2-functors against the structure maps.
pub fn check_simplicial_functor(
    family: &[TwoFunctor],
    source: &SimplicialTwoCategory,
    target: &SimplicialTwoCategory,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    for (p, f) in family.iter().enumerate() {
        r.merge(check_two_functor(f).within(&format!("level {p}")));
    }
    if !r.is_empty() {
        return r;
    }
    for p in 0..family.len() {
        if p > 0 {
            for i in 0..=p {
                let lhs = source.face(p, i).then(&family[p - 1]);
                let rhs = family[p].then(target.face(p, i));
                r.require(lhs.same_cells(&rhs), "commutes with faces", || {
                    format!("level {p} d_{i}")
                });
            }
        }
        if p + 1 < family.len() {
            for j in 0..=p {
                let lhs = source.degeneracy(p, j).then(&family[p + 1]);
                let rhs = family[p].then(target.degeneracy(p, j));
                r.require(lhs.same_cells(&rhs), "commutes with degeneracies", || {
                    format!("level {p} s_{j}")
                });
            }
        }
    }
    r
}
