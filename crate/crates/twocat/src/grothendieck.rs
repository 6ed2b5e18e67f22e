//! The Grothendieck construction of a 2-diagram, for either variance, and the
//! 2-functors it induces.

use std::sync::Arc;

use crate::category::{
    assemble, check_two_functor, Assembly, CellId, CellKeys, DiagramModification, DiagramMorphism,
    TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation, Variance,
};
use crate::report::ValidationReport;

/// An object `(a, x)` with `x` in the fibre over `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothObject {
    pub base: CellId,
    pub x: CellId,
}

/// A 1-cell `(f, u) : (a, x) → (b, y)`.
///
/// Covariantly `u : f_*x → y` lives over `b`; contravariantly `u : x → f^*y`
/// lives over `a`. The fibre endpoints are stored because transports need not
/// be injective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothOne {
    pub f: CellId,
    pub x: CellId,
    pub y: CellId,
    pub u: CellId,
}

/// A 2-cell `(α, φ) : (f, u) ⇒ (g, v)`.
///
/// Covariantly `φ : u ⇒ v ∘ α_*x`; contravariantly `φ : α^*y ∘ u ⇒ v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothTwo {
    pub alpha: CellId,
    pub phi: CellId,
    pub x: CellId,
    pub y: CellId,
    pub u: CellId,
    pub v: CellId,
}

impl GrothTwo {
    pub fn source(&self, base: &TwoCategory) -> GrothOne {
        GrothOne {
            f: base.src2(self.alpha),
            x: self.x,
            y: self.y,
            u: self.u,
        }
    }

    pub fn target(&self, base: &TwoCategory) -> GrothOne {
        GrothOne {
            f: base.tgt2(self.alpha),
            x: self.x,
            y: self.y,
            u: self.v,
        }
    }
}

/// `∫_C D` with the key of every cell.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub diagram: Arc<TwoDiagram>,
    pub category: Arc<TwoCategory>,
    pub cells: Assembly<GrothObject, GrothOne, GrothTwo>,
}

impl Grothendieck {
    pub fn object(&self, base: CellId, x: CellId) -> Option<CellId> {
        self.cells.object(&GrothObject { base, x })
    }

    pub fn one_cell(&self, k: &GrothOne) -> Option<CellId> {
        self.cells.one_cell(k)
    }

    pub fn two_cell(&self, k: &GrothTwo) -> Option<CellId> {
        self.cells.two_cell(k)
    }

    pub fn object_key(&self, o: CellId) -> GrothObject {
        self.cells.objects[o]
    }

    pub fn one_key(&self, f: CellId) -> GrothOne {
        self.cells.one_cells[f]
    }

    pub fn two_key(&self, a: CellId) -> GrothTwo {
        self.cells.two_cells[a]
    }
}

struct GrothKeys<'a> {
    d: &'a TwoDiagram,
}

impl GrothKeys<'_> {
    fn covariant(&self) -> bool {
        self.d.variance == Variance::Covariant
    }

    /// The fibre holding the 1-cell part of a 1-cell over `f`.
    fn home(&self, f: CellId) -> &TwoCategory {
        let b = &*self.d.base;
        &self.d.fibres[if self.covariant() {
            b.tgt1(f)
        } else {
            b.src1(f)
        }]
    }
}

impl CellKeys for GrothKeys<'_> {
    type Obj = GrothObject;
    type One = GrothOne;
    type Two = GrothTwo;

    fn one_boundary(&self, k: &GrothOne) -> (GrothObject, GrothObject) {
        let b = &*self.d.base;
        (
            GrothObject {
                base: b.src1(k.f),
                x: k.x,
            },
            GrothObject {
                base: b.tgt1(k.f),
                x: k.y,
            },
        )
    }

    fn two_boundary(&self, k: &GrothTwo) -> (GrothOne, GrothOne) {
        (k.source(&self.d.base), k.target(&self.d.base))
    }

    fn id1(&self, o: &GrothObject) -> GrothOne {
        GrothOne {
            f: self.d.base.id1(o.base),
            x: o.x,
            y: o.x,
            u: self.d.fibres[o.base].id1(o.x),
        }
    }

    fn id2(&self, k: &GrothOne) -> GrothTwo {
        GrothTwo {
            alpha: self.d.base.id2(k.f),
            phi: self.home(k.f).id2(k.u),
            x: k.x,
            y: k.y,
            u: k.u,
            v: k.u,
        }
    }

    fn comp1(&self, g: &GrothOne, f: &GrothOne) -> GrothOne {
        let b = &*self.d.base;
        let u = if self.covariant() {
            // (g, u') ∘ (f, u) = (g ∘ f, u' ∘ g_*u)
            self.home(g.f).comp1(g.u, self.d.on_one[g.f].one(f.u))
        } else {
            // (g, u') ∘ (f, u) = (g ∘ f, f^*u' ∘ u)
            self.home(f.f).comp1(self.d.on_one[f.f].one(g.u), f.u)
        };
        GrothOne {
            f: b.comp1(g.f, f.f),
            x: f.x,
            y: g.y,
            u,
        }
    }

    fn vcomp(&self, b: &GrothTwo, a: &GrothTwo) -> GrothTwo {
        let base = &*self.d.base;
        let fib = self.home(base.src2(a.alpha));
        let phi = if self.covariant() {
            // (ψ ∘ 1_{α_*x}) · φ
            let ax = self.d.on_two[a.alpha].component(a.x);
            fib.vcomp(fib.hcomp(b.phi, fib.id2(ax)), a.phi)
        } else {
            // ψ · (1_{β^*y} ∘ φ)
            let by = self.d.on_two[b.alpha].component(a.y);
            fib.vcomp(b.phi, fib.hcomp(fib.id2(by), a.phi))
        };
        GrothTwo {
            alpha: base.vcomp(b.alpha, a.alpha),
            phi,
            x: a.x,
            y: a.y,
            u: a.u,
            v: b.v,
        }
    }

    fn hcomp(&self, b: &GrothTwo, a: &GrothTwo) -> GrothTwo {
        let base = &*self.d.base;
        let (f, g) = (base.src2(a.alpha), base.tgt2(a.alpha));
        let (f2, g2) = (base.src2(b.alpha), base.tgt2(b.alpha));
        let phi = if self.covariant() {
            // φ' ∘ f'_*φ
            let fib = self.home(f2);
            fib.hcomp(b.phi, self.d.on_one[f2].two(a.phi))
        } else {
            // (1_{g^*v'} ∘ φ) · (1_{α^*(g'^*z)} ∘ f^*φ' ∘ 1_u)
            let fib = self.home(f);
            let z = b.y;
            let alpha_at = self.d.on_two[a.alpha].component(self.d.on_one[g2].obj(z));
            let lower = fib.hcomp(
                fib.hcomp(fib.id2(alpha_at), self.d.on_one[f].two(b.phi)),
                fib.id2(a.u),
            );
            let upper = fib.hcomp(fib.id2(self.d.on_one[g].one(b.v)), a.phi);
            fib.vcomp(upper, lower)
        };
        let s = self.comp1(&b.source(base), &a.source(base));
        let t = self.comp1(&b.target(base), &a.target(base));
        GrothTwo {
            alpha: base.hcomp(b.alpha, a.alpha),
            phi,
            x: a.x,
            y: b.y,
            u: s.u,
            v: t.u,
        }
    }

    fn object_name(&self, o: &GrothObject) -> String {
        format!(
            "({},{})",
            self.d.base.object_name(o.base),
            self.d.fibres[o.base].object_name(o.x)
        )
    }

    fn one_name(&self, k: &GrothOne) -> String {
        format!(
            "({},{})",
            self.d.base.one_cell(k.f).name,
            self.home(k.f).one_cell(k.u).name
        )
    }

    fn two_name(&self, k: &GrothTwo) -> String {
        let f = self.d.base.src2(k.alpha);
        format!(
            "({},{})",
            self.d.base.two_cell(k.alpha).name,
            self.home(f).two_cell(k.phi).name
        )
    }
}

/// The Grothendieck construction `∫_C D`.
pub fn grothendieck(d: &Arc<TwoDiagram>) -> Grothendieck {
    let keys = GrothKeys { d };
    let b = &*d.base;
    let cov = d.variance == Variance::Covariant;
    let mut objects = Vec::new();
    for a in 0..b.object_count() {
        for x in 0..d.fibres[a].object_count() {
            objects.push(GrothObject { base: a, x });
        }
    }
    let mut ones = Vec::new();
    for f in 0..b.one_cell_count() {
        let t = &d.on_one[f];
        let home = keys.home(f);
        if cov {
            for x in 0..d.fibres[b.src1(f)].object_count() {
                for &u in home.one_cells_from(t.obj(x)) {
                    ones.push(GrothOne {
                        f,
                        x,
                        y: home.tgt1(u),
                        u,
                    });
                }
            }
        } else {
            for y in 0..d.fibres[b.tgt1(f)].object_count() {
                let fy = t.obj(y);
                for u in (0..home.one_cell_count()).filter(|&u| home.tgt1(u) == fy) {
                    ones.push(GrothOne {
                        f,
                        x: home.src1(u),
                        y,
                        u,
                    });
                }
            }
        }
    }
    let mut twos = Vec::new();
    for k in &ones {
        let home = keys.home(k.f);
        for &alpha in b.two_cells_from(k.f) {
            let g = b.tgt2(alpha);
            let at = &d.on_two[alpha];
            if cov {
                let ax = at.component(k.x);
                for &v in home.one_cells_from(d.on_one[g].obj(k.x)) {
                    if home.tgt1(v) != k.y {
                        continue;
                    }
                    let target = home.comp1(v, ax);
                    for &phi in home.two_cells_from(k.u) {
                        if home.tgt2(phi) == target {
                            twos.push(GrothTwo {
                                alpha,
                                phi,
                                x: k.x,
                                y: k.y,
                                u: k.u,
                                v,
                            });
                        }
                    }
                }
            } else {
                let start = home.comp1(at.component(k.y), k.u);
                for &phi in home.two_cells_from(start) {
                    twos.push(GrothTwo {
                        alpha,
                        phi,
                        x: k.x,
                        y: k.y,
                        u: k.u,
                        v: home.tgt2(phi),
                    });
                }
            }
        }
    }
    let cells =
        assemble(&keys, objects, ones, twos).expect("Grothendieck constructions are closed");
    Grothendieck {
        diagram: d.clone(),
        category: Arc::new(cells.category.clone()),
        cells,
    }
}

/// The projection `∫_C D → C`.
pub fn projection(g: &Grothendieck) -> TwoFunctor {
    let b = &g.diagram.base;
    TwoFunctor {
        source: g.category.clone(),
        target: b.clone(),
        objects: g.cells.objects.iter().map(|o| o.base).collect(),
        one_cells: g.cells.one_cells.iter().map(|k| k.f).collect(),
        two_cells: g.cells.two_cells.iter().map(|k| k.alpha).collect(),
    }
}

/// `∫Γ : ∫D → ∫E` for a morphism of diagrams `Γ : D ⇒ E`.
pub fn grothendieck_transformation(
    m: &DiagramMorphism,
    source: &Grothendieck,
    target: &Grothendieck,
) -> TwoFunctor {
    let b = &*m.source.base;
    let cov = m.source.variance == Variance::Covariant;
    let home = |f: CellId| if cov { b.tgt1(f) } else { b.src1(f) };
    let map_one = |k: &GrothOne| GrothOne {
        f: k.f,
        x: m.components[b.src1(k.f)].obj(k.x),
        y: m.components[b.tgt1(k.f)].obj(k.y),
        u: m.components[home(k.f)].one(k.u),
    };
    TwoFunctor {
        source: source.category.clone(),
        target: target.category.clone(),
        objects: source
            .cells
            .objects
            .iter()
            .map(|o| {
                target
                    .object(o.base, m.components[o.base].obj(o.x))
                    .expect("∫Γ on objects")
            })
            .collect(),
        one_cells: source
            .cells
            .one_cells
            .iter()
            .map(|k| target.one_cell(&map_one(k)).expect("∫Γ on 1-cells"))
            .collect(),
        two_cells: source
            .cells
            .two_cells
            .iter()
            .map(|k| {
                let f = b.src2(k.alpha);
                let c = &m.components[home(f)];
                let image = GrothTwo {
                    alpha: k.alpha,
                    phi: c.two(k.phi),
                    x: m.components[b.src1(f)].obj(k.x),
                    y: m.components[b.tgt1(f)].obj(k.y),
                    u: c.one(k.u),
                    v: c.one(k.v),
                };
                target.two_cell(&image).expect("∫Γ on 2-cells")
            })
            .collect(),
    }
}

/// `∫m : ∫Γ ⇒ ∫Γ'` with components `(1_a, m_a x)`.
pub fn grothendieck_modification(
    m: &DiagramModification,
    source: &Grothendieck,
    target: &Grothendieck,
) -> TwoNaturalTransformation {
    let b = &*m.source.source.base;
    let components = source
        .cells
        .objects
        .iter()
        .map(|o| {
            let k = GrothOne {
                f: b.id1(o.base),
                x: m.source.components[o.base].obj(o.x),
                y: m.target.components[o.base].obj(o.x),
                u: m.components[o.base].component(o.x),
            };
            target.one_cell(&k).expect("∫m component")
        })
        .collect();
    TwoNaturalTransformation {
        source: grothendieck_transformation(&m.source, source, target),
        target: grothendieck_transformation(&m.target, source, target),
        components,
    }
}

/// The embedding `c̄ : D_c → ∫D`, `x ↦ (c, x)`, `u ↦ (1_c, u)`, `φ ↦ (1_{1_c}, φ)`.
pub fn fibre_embedding(g: &Grothendieck, c: CellId) -> TwoFunctor {
    let d = &*g.diagram;
    let fib = &d.fibres[c];
    let one = |u: CellId| GrothOne {
        f: d.base.id1(c),
        x: fib.src1(u),
        y: fib.tgt1(u),
        u,
    };
    TwoFunctor {
        source: fib.clone(),
        target: g.category.clone(),
        objects: (0..fib.object_count())
            .map(|x| g.object(c, x).unwrap())
            .collect(),
        one_cells: (0..fib.one_cell_count())
            .map(|u| g.one_cell(&one(u)).unwrap())
            .collect(),
        two_cells: (0..fib.two_cell_count())
            .map(|phi| {
                let (u, v) = (fib.src2(phi), fib.tgt2(phi));
                let k = GrothTwo {
                    alpha: d.base.id2_of_object(c),
                    phi,
                    x: fib.src1(u),
                    y: fib.tgt1(u),
                    u,
                    v,
                };
                g.two_cell(&k).unwrap()
            })
            .collect(),
    }
}

/// The restriction `F^*D` of a diagram along a 2-functor into its base.
pub fn restrict(d: &TwoDiagram, f: &TwoFunctor) -> TwoDiagram {
    let a = &*f.source;
    TwoDiagram {
        base: f.source.clone(),
        variance: d.variance,
        fibres: (0..a.object_count())
            .map(|x| d.fibres[f.obj(x)].clone())
            .collect(),
        on_one: (0..a.one_cell_count())
            .map(|u| d.on_one[f.one(u)].clone())
            .collect(),
        on_two: (0..a.two_cell_count())
            .map(|x| d.on_two[f.two(x)].clone())
            .collect(),
    }
}

/// Base change along `F : A → C`: the restricted construction `∫F^*D`
/// together with `F̄ : ∫F^*D → ∫D`, `(a,x) ↦ (Fa,x)`, `(f,u) ↦ (Ff,u)`,
/// `(α,φ) ↦ (Fα,φ)`.
pub fn base_change(
    f: &TwoFunctor,
    d: &Arc<TwoDiagram>,
    whole: &Grothendieck,
) -> (Grothendieck, TwoFunctor) {
    let pulled = Arc::new(restrict(d, f));
    let g = grothendieck(&pulled);
    let bar = TwoFunctor {
        source: g.category.clone(),
        target: whole.category.clone(),
        objects: g
            .cells
            .objects
            .iter()
            .map(|o| whole.object(f.obj(o.base), o.x).unwrap())
            .collect(),
        one_cells: g
            .cells
            .one_cells
            .iter()
            .map(|k| {
                whole
                    .one_cell(&GrothOne {
                        f: f.one(k.f),
                        ..*k
                    })
                    .unwrap()
            })
            .collect(),
        two_cells: g
            .cells
            .two_cells
            .iter()
            .map(|k| {
                whole
                    .two_cell(&GrothTwo {
                        alpha: f.two(k.alpha),
                        ..*k
                    })
                    .unwrap()
            })
            .collect(),
    };
    (g, bar)
}

/// Checks that `∫F^*D` is the strict pullback of `∫D → C ← A`: the square
/// commutes and every compatible pair of cells has exactly one preimage.
pub fn check_pullback(
    f: &TwoFunctor,
    restricted: &Grothendieck,
    bar: &TwoFunctor,
    whole: &Grothendieck,
) -> ValidationReport {
    let mut r = check_two_functor(bar).within("base change functor");
    if !r.is_empty() {
        return r;
    }
    let left = projection(restricted).then(f);
    let right = bar.then(&projection(whole));
    r.require(
        left.same_cells(&right),
        "base change square commutes",
        String::new,
    );
    let pi = projection(whole);
    let fibre_product =
        |na: usize, nw: usize, fa: &dyn Fn(CellId) -> CellId, pw: &dyn Fn(CellId) -> CellId| {
            let mut out = Vec::new();
            for a in 0..na {
                for w in 0..nw {
                    if fa(a) == pw(w) {
                        out.push((a, w));
                    }
                }
            }
            out
        };
    let (rc, wc, a) = (&*restricted.category, &*whole.category, &*f.source);
    let comparisons = [
        (
            "objects",
            (0..rc.object_count())
                .map(|k| (restricted.object_key(k).base, bar.obj(k)))
                .collect::<Vec<_>>(),
            fibre_product(a.object_count(), wc.object_count(), &|x| f.obj(x), &|x| {
                pi.obj(x)
            }),
        ),
        (
            "1-cells",
            (0..rc.one_cell_count())
                .map(|k| (restricted.one_key(k).f, bar.one(k)))
                .collect(),
            fibre_product(
                a.one_cell_count(),
                wc.one_cell_count(),
                &|x| f.one(x),
                &|x| pi.one(x),
            ),
        ),
        (
            "2-cells",
            (0..rc.two_cell_count())
                .map(|k| (restricted.two_key(k).alpha, bar.two(k)))
                .collect(),
            fibre_product(
                a.two_cell_count(),
                wc.two_cell_count(),
                &|x| f.two(x),
                &|x| pi.two(x),
            ),
        ),
    ];
    for (what, mut got, expected) in comparisons {
        got.sort_unstable();
        let injective = got.windows(2).all(|p| p[0] != p[1]);
        r.require(injective, "pullback comparison injective", || {
            what.to_string()
        });
        got.dedup();
        r.require(got == expected, "pullback comparison surjective", || {
            what.to_string()
        });
    }
    r
}
