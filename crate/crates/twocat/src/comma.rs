//! Homotopy-fibre 2-categories `F↓c` and `c↓F`, the fibre diagrams they form,
//! and the comparison 2-functors between them together with their witnesses.
//!
//! A homotopy fibre is built as the Grothendieck construction of a
//! representable diagram restricted along `F`, so its cells carry
//! [`GrothObject`]/[`GrothOne`]/[`GrothTwo`] keys whose fibre parts index hom
//! categories. [`Comma`] translates between those keys and the unfolded
//! description `(a, p)`, `(u, φ)`, `α`.

use std::sync::Arc;

use thiserror::Error;

use crate::category::{
    hom_category, CellId, DiagramMorphism, Direction, HomCategory, OplaxTransformation,
    TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation, Variance,
};
use crate::grothendieck::{
    base_change, grothendieck, grothendieck_transformation, projection, restrict, GrothOne,
    GrothTwo, Grothendieck,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `F↓c`: objects `(a, p : Fa → c)`.
    Over,
    /// `c↓F`: objects `(a, p : c → Fa)`.
    Under,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CommaError {
    #[error("{0} is not an object")]
    NotAnObject(String),
    #[error("a {variance:?} diagram has no {side:?} construction")]
    SideMismatch { variance: Variance, side: Side },
    #[error("the square of 2-functors does not commute")]
    NonCommutingSquare,
}

/// The representable diagram `C(−, c)` (contravariant) or `C(c, −)` (covariant).
#[derive(Clone, Debug)]
pub struct Representable {
    pub diagram: Arc<TwoDiagram>,
    /// The hom category attached to each object of `C`.
    pub homs: Vec<HomCategory>,
    pub object: CellId,
    pub side: Side,
}

/// `C(−, c) : C^op → 2Cat`, with `f^*p = p ∘ f` and `(α^*)_p = 1_p ∘ α`.
pub fn representable_into(c: &Arc<TwoCategory>, object: CellId) -> Representable {
    representable(c, object, Side::Over)
}

/// `C(c, −) : C → 2Cat`, with `f_*p = f ∘ p` and `(α_*)_p = α ∘ 1_p`.
pub fn representable_from(c: &Arc<TwoCategory>, object: CellId) -> Representable {
    representable(c, object, Side::Under)
}

fn representable(c: &Arc<TwoCategory>, object: CellId, side: Side) -> Representable {
    let homs: Vec<HomCategory> = (0..c.object_count())
        .map(|x| match side {
            Side::Over => hom_category(c, x, object),
            Side::Under => hom_category(c, object, x),
        })
        .collect();
    let transport = |from: &HomCategory,
                     to: &HomCategory,
                     on1: &dyn Fn(CellId) -> CellId,
                     on2: &dyn Fn(CellId) -> CellId| {
        let ones: Vec<CellId> = from
            .arrows
            .iter()
            .map(|&t| to.arrow_of(on2(t)).unwrap())
            .collect();
        TwoFunctor {
            source: from.category.clone(),
            target: to.category.clone(),
            objects: from
                .objects
                .iter()
                .map(|&p| to.object_of(on1(p)).unwrap())
                .collect(),
            two_cells: ones.clone(),
            one_cells: ones,
        }
    };
    let on_one: Vec<TwoFunctor> = (0..c.one_cell_count())
        .map(|f| {
            let (x, y) = (c.src1(f), c.tgt1(f));
            match side {
                Side::Over => transport(&homs[y], &homs[x], &|p| c.comp1(p, f), &|t| {
                    c.whisker_right(t, f)
                }),
                Side::Under => transport(&homs[x], &homs[y], &|p| c.comp1(f, p), &|t| {
                    c.whisker_left(f, t)
                }),
            }
        })
        .collect();
    let on_two = (0..c.two_cell_count())
        .map(|a| {
            let (f, g) = (c.src2(a), c.tgt2(a));
            let (source, target) = (on_one[f].clone(), on_one[g].clone());
            let components = match side {
                Side::Over => {
                    let (from, to) = (&homs[c.tgt1(f)], &homs[c.src1(f)]);
                    from.objects
                        .iter()
                        .map(|&p| to.arrow_of(c.whisker_left(p, a)).unwrap())
                        .collect()
                }
                Side::Under => {
                    let (from, to) = (&homs[c.src1(f)], &homs[c.tgt1(f)]);
                    from.objects
                        .iter()
                        .map(|&p| to.arrow_of(c.whisker_right(a, p)).unwrap())
                        .collect()
                }
            };
            TwoNaturalTransformation {
                source,
                target,
                components,
            }
        })
        .collect();
    let diagram = TwoDiagram {
        base: c.clone(),
        variance: match side {
            Side::Over => Variance::Contravariant,
            Side::Under => Variance::Covariant,
        },
        fibres: homs.iter().map(|h| h.category.clone()).collect(),
        on_one,
        on_two,
    };
    Representable {
        diagram: Arc::new(diagram),
        homs,
        object,
        side,
    }
}

/// The unfolded data of a comma 1-cell `(u, φ) : (a, p) → (a', p')`.
///
/// Over `c`, `φ : p ⇒ p' ∘ Fu`; under `c`, `φ : Fu ∘ p ⇒ p'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CommaOne {
    pub u: CellId,
    pub p: CellId,
    pub p2: CellId,
    pub phi: CellId,
}

/// A homotopy-fibre 2-category `F↓c` or `c↓F`.
#[derive(Clone, Debug)]
pub struct Comma {
    pub functor: TwoFunctor,
    pub object: CellId,
    pub side: Side,
    pub representable: Representable,
    pub groth: Grothendieck,
}

/// `F↓c = ∫_A F^*C(−, c)` or `c↓F = ∫_A F^*C(c, −)`.
pub fn comma(f: &TwoFunctor, object: CellId, side: Side) -> Comma {
    let representable = representable(&f.target, object, side);
    let restricted = Arc::new(restrict(&representable.diagram, f));
    Comma {
        functor: f.clone(),
        object,
        side,
        groth: grothendieck(&restricted),
        representable,
    }
}

impl Comma {
    pub fn category(&self) -> &Arc<TwoCategory> {
        &self.groth.category
    }

    fn hom(&self, a: CellId) -> &HomCategory {
        &self.representable.homs[self.functor.obj(a)]
    }

    /// Object of `A` holding the hom part of a 1-cell over `u`.
    fn home(&self, u: CellId) -> CellId {
        let a = &*self.functor.source;
        match self.side {
            Side::Over => a.src1(u),
            Side::Under => a.tgt1(u),
        }
    }

    pub fn object(&self, a: CellId, p: CellId) -> Option<CellId> {
        self.groth.object(a, self.hom(a).object_of(p)?)
    }

    pub fn object_parts(&self, o: CellId) -> (CellId, CellId) {
        let k = self.groth.object_key(o);
        (k.base, self.hom(k.base).objects[k.x])
    }

    pub fn one_cell(&self, k: &CommaOne) -> Option<CellId> {
        let a = &*self.functor.source;
        let key = GrothOne {
            f: k.u,
            x: self.hom(a.src1(k.u)).object_of(k.p)?,
            y: self.hom(a.tgt1(k.u)).object_of(k.p2)?,
            u: self.hom(self.home(k.u)).arrow_of(k.phi)?,
        };
        self.groth.one_cell(&key)
    }

    pub fn one_parts(&self, f: CellId) -> CommaOne {
        let a = &*self.functor.source;
        let k = self.groth.one_key(f);
        CommaOne {
            u: k.f,
            p: self.hom(a.src1(k.f)).objects[k.x],
            p2: self.hom(a.tgt1(k.f)).objects[k.y],
            phi: self.hom(self.home(k.f)).arrows[k.u],
        }
    }

    /// The 2-cell over `alpha` between two comma 1-cells, when the comma
    /// condition holds.
    pub fn two_cell(&self, alpha: CellId, source: CellId, target: CellId) -> Option<CellId> {
        let (s, t) = (self.groth.one_key(source), self.groth.one_key(target));
        let a = &*self.functor.source;
        if (s.x, s.y) != (t.x, t.y) || a.src2(alpha) != s.f || a.tgt2(alpha) != t.f {
            return None;
        }
        let fibre = &self.hom(self.home(s.f)).category;
        let phi = match self.side {
            Side::Over => fibre.id2(t.u),
            Side::Under => fibre.id2(s.u),
        };
        self.groth.two_cell(&GrothTwo {
            alpha,
            phi,
            x: s.x,
            y: s.y,
            u: s.u,
            v: t.u,
        })
    }

    /// The 2-cell of `A` underlying a comma 2-cell.
    pub fn two_parts(&self, a: CellId) -> CellId {
        self.groth.two_key(a).alpha
    }

    /// `π : F↓c → A`.
    pub fn projection(&self) -> TwoFunctor {
        projection(&self.groth)
    }

    /// Builds the 2-functor into `target` sending `(a, p) ↦ (a, on_p(p))`,
    /// `(u, φ) ↦ (u, on_phi(φ))` and `α ↦ α`.
    fn reindex(
        &self,
        target: &Comma,
        on_p: impl Fn(CellId) -> CellId,
        on_phi: impl Fn(CellId) -> CellId,
    ) -> TwoFunctor {
        let c = self.category();
        let one = |f: CellId| {
            let k = self.one_parts(f);
            target
                .one_cell(&CommaOne {
                    u: k.u,
                    p: on_p(k.p),
                    p2: on_p(k.p2),
                    phi: on_phi(k.phi),
                })
                .expect("reindexed comma 1-cell")
        };
        let one_cells: Vec<CellId> = (0..c.one_cell_count()).map(one).collect();
        TwoFunctor {
            source: c.clone(),
            target: target.category().clone(),
            objects: (0..c.object_count())
                .map(|o| {
                    let (a, p) = self.object_parts(o);
                    target.object(a, on_p(p)).expect("reindexed comma object")
                })
                .collect(),
            two_cells: (0..c.two_cell_count())
                .map(|x| {
                    let (s, t) = (one_cells[c.src2(x)], one_cells[c.tgt2(x)]);
                    target
                        .two_cell(self.two_parts(x), s, t)
                        .expect("reindexed comma 2-cell")
                })
                .collect(),
            one_cells,
        }
    }
}

/// The unique 2-cell `s ⇒ t` accepted by `pick`.
fn fill(
    c: &TwoCategory,
    s: CellId,
    t: CellId,
    what: &str,
    pick: impl Fn(CellId) -> bool,
) -> CellId {
    let mut found = c
        .two_cells_from(s)
        .iter()
        .copied()
        .filter(|&x| c.tgt2(x) == t && pick(x));
    let x = found.next().unwrap_or_else(|| panic!("no {what}"));
    assert!(found.next().is_none(), "{what} is not unique");
    x
}

/// An oplax transformation `source ⇒ target` with naturality cells
/// `η_h : target(h) ∘ η_a ⇒ η_b ∘ source(h)` chosen by `pick`.
fn backward_witness(
    source: TwoFunctor,
    target: TwoFunctor,
    components: Vec<CellId>,
    what: &str,
    pick: impl Fn(CellId, CellId) -> bool,
) -> OplaxTransformation {
    let a = source.source.clone();
    let c = source.target.clone();
    let naturality = (0..a.one_cell_count())
        .map(|h| {
            let s = c.comp1(target.one(h), components[a.src1(h)]);
            let t = c.comp1(components[a.tgt1(h)], source.one(h));
            fill(&c, s, t, what, |x| pick(h, x))
        })
        .collect();
    OplaxTransformation {
        source,
        target,
        components,
        naturality,
        direction: Direction::Backward,
    }
}

/// `h_*` on homotopy fibres. Over `c` it runs `F↓c → F↓c'` by
/// postcomposition with `h : c → c'`; under `c` it runs `c'↓F → c↓F` by
/// precomposition. `source` and `target` are the fibres in that order.
pub fn induced_fibre_functor(source: &Comma, target: &Comma, h: CellId) -> TwoFunctor {
    let c = &*source.functor.target;
    match source.side {
        Side::Over => source.reindex(target, |p| c.comp1(h, p), |phi| c.whisker_left(h, phi)),
        Side::Under => source.reindex(target, |p| c.comp1(p, h), |phi| c.whisker_right(phi, h)),
    }
}

/// `ψ_* : h_* ⇒ h'_*` for `ψ : h ⇒ h'`, with components `(1_a, ψ ∘ 1_p)`
/// over `c` and `(1_a, 1_p ∘ ψ)` under `c`.
pub fn induced_fibre_transformation(
    source: &Comma,
    target: &Comma,
    psi: CellId,
) -> TwoNaturalTransformation {
    let c = &*source.functor.target;
    let a = &*source.functor.source;
    let (h, h2) = (c.src2(psi), c.tgt2(psi));
    let components = (0..source.category().object_count())
        .map(|o| {
            let (x, p) = source.object_parts(o);
            let k = match source.side {
                Side::Over => CommaOne {
                    u: a.id1(x),
                    p: c.comp1(h, p),
                    p2: c.comp1(h2, p),
                    phi: c.whisker_right(psi, p),
                },
                Side::Under => CommaOne {
                    u: a.id1(x),
                    p: c.comp1(p, h),
                    p2: c.comp1(p, h2),
                    phi: c.whisker_left(p, psi),
                },
            };
            target.one_cell(&k).expect("ψ_* component")
        })
        .collect();
    TwoNaturalTransformation {
        source: induced_fibre_functor(source, target, h),
        target: induced_fibre_functor(source, target, h2),
        components,
    }
}

/// The homotopy-fibre diagram `F↓− : C → 2Cat` or `−↓F : C^op → 2Cat`.
#[derive(Clone, Debug)]
pub struct FibreDiagram {
    pub diagram: Arc<TwoDiagram>,
    pub commas: Vec<Comma>,
    pub side: Side,
}

pub fn fibre_diagram(f: &TwoFunctor, side: Side) -> FibreDiagram {
    let c = &f.target;
    let commas: Vec<Comma> = (0..c.object_count()).map(|x| comma(f, x, side)).collect();
    // Index of the fibre a 1-cell transports out of, then into.
    let ends = |h: CellId| match side {
        Side::Over => (c.src1(h), c.tgt1(h)),
        Side::Under => (c.tgt1(h), c.src1(h)),
    };
    let on_one = (0..c.one_cell_count())
        .map(|h| {
            let (s, t) = ends(h);
            induced_fibre_functor(&commas[s], &commas[t], h)
        })
        .collect();
    let on_two = (0..c.two_cell_count())
        .map(|psi| {
            let (s, t) = ends(c.src2(psi));
            induced_fibre_transformation(&commas[s], &commas[t], psi)
        })
        .collect();
    let diagram = TwoDiagram {
        base: c.clone(),
        variance: match side {
            Side::Over => Variance::Covariant,
            Side::Under => Variance::Contravariant,
        },
        fibres: commas.iter().map(|m| m.category().clone()).collect(),
        on_one,
        on_two,
    };
    FibreDiagram {
        diagram: Arc::new(diagram),
        commas,
        side,
    }
}

/// `Π : ∫_C(F↓−) → A` with its section `ι` and the witness relating `ιΠ` to
/// the identity.
#[derive(Clone, Debug)]
pub struct Projections {
    pub fibres: FibreDiagram,
    pub total: Grothendieck,
    /// `π : F↓c → A` for each object `c`.
    pub fibre_projections: Vec<TwoFunctor>,
    pub big_pi: TwoFunctor,
    pub iota: TwoFunctor,
    /// `ιΠ ⇒ 1` over `c`, `1 ⇒ ιΠ` under `c`.
    pub witness: OplaxTransformation,
}

pub fn projections(f: &TwoFunctor, side: Side) -> Projections {
    let fibres = fibre_diagram(f, side);
    let total = grothendieck(&fibres.diagram);
    let (a, c) = (&*f.source, &*f.target);
    let commas = &fibres.commas;
    let g = &*total.category;
    // The fibre holding the comma part of a total 1-cell over `h`.
    let home = |h: CellId| match side {
        Side::Over => c.tgt1(h),
        Side::Under => c.src1(h),
    };
    let big_pi = TwoFunctor {
        source: total.category.clone(),
        target: f.source.clone(),
        objects: total
            .cells
            .objects
            .iter()
            .map(|o| commas[o.base].object_parts(o.x).0)
            .collect(),
        one_cells: total
            .cells
            .one_cells
            .iter()
            .map(|k| commas[home(k.f)].one_parts(k.u).u)
            .collect(),
        two_cells: total
            .cells
            .two_cells
            .iter()
            .map(|k| commas[home(c.src2(k.alpha))].two_parts(k.phi))
            .collect(),
    };
    let unit = |x: CellId| {
        let fx = f.obj(x);
        commas[fx].object(x, c.id1(fx)).unwrap()
    };
    let iota_one = |u: CellId| {
        let fu = f.one(u);
        let (x, y) = (a.src1(u), a.tgt1(u));
        let (fx, fy) = (f.obj(x), f.obj(y));
        let (k, at) = match side {
            Side::Over => (
                CommaOne {
                    u,
                    p: fu,
                    p2: c.id1(fy),
                    phi: c.id2(fu),
                },
                fy,
            ),
            Side::Under => (
                CommaOne {
                    u,
                    p: c.id1(fx),
                    p2: fu,
                    phi: c.id2(fu),
                },
                fx,
            ),
        };
        let key = GrothOne {
            f: fu,
            x: unit(x),
            y: unit(y),
            u: commas[at].one_cell(&k).expect("ι on 1-cells"),
        };
        total.one_cell(&key).unwrap()
    };
    let iota_ones: Vec<CellId> = (0..a.one_cell_count()).map(iota_one).collect();
    let iota = TwoFunctor {
        source: f.source.clone(),
        target: total.category.clone(),
        objects: (0..a.object_count())
            .map(|x| total.object(f.obj(x), unit(x)).unwrap())
            .collect(),
        two_cells: (0..a.two_cell_count())
            .map(|al| {
                let (s, t) = (iota_ones[a.src2(al)], iota_ones[a.tgt2(al)]);
                fill(g, s, t, "ι on 2-cells", |x| {
                    let k = total.two_key(x);
                    k.alpha == f.two(al) && commas[home(c.src2(k.alpha))].two_parts(k.phi) == al
                })
            })
            .collect(),
        one_cells: iota_ones,
    };
    let components: Vec<CellId> = (0..g.object_count())
        .map(|o| {
            let ko = total.object_key(o);
            let (x, p) = commas[ko.base].object_parts(ko.x);
            let w = commas[ko.base]
                .one_cell(&CommaOne {
                    u: a.id1(x),
                    p,
                    p2: p,
                    phi: c.id2(p),
                })
                .expect("witness component");
            let key = match side {
                Side::Over => GrothOne {
                    f: p,
                    x: unit(x),
                    y: ko.x,
                    u: w,
                },
                Side::Under => GrothOne {
                    f: p,
                    x: ko.x,
                    y: unit(x),
                    u: w,
                },
            };
            total.one_cell(&key).unwrap()
        })
        .collect();
    let round = big_pi.then(&iota);
    let identity = TwoFunctor::identity(&total.category);
    let (source, target) = match side {
        Side::Over => (round, identity),
        Side::Under => (identity, round),
    };
    let witness = backward_witness(
        source,
        target,
        components,
        "ιΠ witness naturality",
        |h, x| {
            let kh = total.one_key(h);
            let m = &commas[home(kh.f)];
            let k = total.two_key(x);
            let inner = m.one_parts(kh.u);
            k.alpha == inner.phi && m.two_parts(k.phi) == a.id2(inner.u)
        },
    );
    Projections {
        fibre_projections: fibres.commas.iter().map(Comma::projection).collect(),
        fibres,
        total,
        big_pi,
        iota,
        witness,
    }
}

fn side_of(variance: Variance, covariant_side: Side, side: Side) -> Result<(), CommaError> {
    let expected = match variance {
        Variance::Covariant => covariant_side,
        Variance::Contravariant => match covariant_side {
            Side::Over => Side::Under,
            Side::Under => Side::Over,
        },
    };
    if expected == side {
        Ok(())
    } else {
        Err(CommaError::SideMismatch { variance, side })
    }
}

/// `R : ∫Γ↓(c,y) → Γ_c↓y` for covariant diagrams, or
/// `R : (c,y)↓∫Γ → y↓Γ_c` for contravariant ones, with the section `c̄`.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub domain: Grothendieck,
    pub codomain: Grothendieck,
    pub source: Comma,
    pub target: Comma,
    pub retraction: TwoFunctor,
    pub section: TwoFunctor,
    /// `1 ⇒ c̄R` for covariant diagrams, `c̄R ⇒ 1` for contravariant ones.
    pub witness: OplaxTransformation,
}

pub fn retraction_r(
    gamma: &DiagramMorphism,
    c: CellId,
    y: CellId,
    side: Side,
) -> Result<Retraction, CommaError> {
    let d = &*gamma.source;
    side_of(d.variance, Side::Over, side)?;
    let base = &*d.base;
    if c >= base.object_count() {
        return Err(CommaError::NotAnObject(format!("base object {c}")));
    }
    if y >= gamma.target.fibres[c].object_count() {
        return Err(CommaError::NotAnObject(format!("fibre object {y}")));
    }
    let gd = grothendieck(&gamma.source);
    let ge = grothendieck(&gamma.target);
    let big = grothendieck_transformation(gamma, &gd, &ge);
    let cy = ge.object(c, y).unwrap();
    let source = comma(&big, cy, side);
    let target = comma(&gamma.components[c], y, side);
    let (dc, ec) = (&*d.fibres[c], &*gamma.target.fibres[c]);
    let gc = &gamma.components[c];
    let cov = side == Side::Over;
    let sc = &**source.category();

    // R
    let r_obj = |o: CellId| {
        let (xo, po) = source.object_parts(o);
        let (x, p) = (gd.object_key(xo), ge.one_key(po));
        target
            .object(d.on_one[p.f].obj(x.x), p.u)
            .expect("R on objects")
    };
    let r_one = |k: CellId| {
        let s = source.one_parts(k);
        let u = gd.one_key(s.u);
        let (p, p2) = (ge.one_key(s.p), ge.one_key(s.p2));
        let phi = ge.two_key(s.phi);
        let u2 = if cov {
            // p'_*u ∘ α_*x
            dc.comp1(d.on_one[p2.f].one(u.u), d.on_two[phi.alpha].component(u.x))
        } else {
            // α^*x' ∘ p^*u
            dc.comp1(d.on_two[phi.alpha].component(u.y), d.on_one[p.f].one(u.u))
        };
        target
            .one_cell(&CommaOne {
                u: u2,
                p: p.u,
                p2: p2.u,
                phi: phi.phi,
            })
            .expect("R on 1-cells")
    };
    let r_ones: Vec<CellId> = (0..sc.one_cell_count()).map(r_one).collect();
    let r_two = |k: CellId| {
        let (from, to) = (sc.src2(k), sc.tgt2(k));
        let inner = gd.two_key(source.two_parts(k));
        let cell = if cov {
            // p'_*φ ∘ 1_{α_*x}
            let s = source.one_parts(from);
            let (u, p2) = (gd.one_key(s.u), ge.one_key(s.p2));
            let alpha = ge.two_key(s.phi).alpha;
            dc.hcomp(
                d.on_one[p2.f].two(inner.phi),
                dc.id2(d.on_two[alpha].component(u.x)),
            )
        } else {
            // 1_{α'^*x'} ∘ p^*φ
            let t = source.one_parts(to);
            let (u, p) = (gd.one_key(t.u), ge.one_key(t.p));
            let alpha = ge.two_key(t.phi).alpha;
            dc.hcomp(
                dc.id2(d.on_two[alpha].component(u.y)),
                d.on_one[p.f].two(inner.phi),
            )
        };
        target
            .two_cell(cell, r_ones[from], r_ones[to])
            .expect("R on 2-cells")
    };
    let retraction = TwoFunctor {
        source: source.category().clone(),
        target: target.category().clone(),
        objects: (0..sc.object_count()).map(r_obj).collect(),
        two_cells: (0..sc.two_cell_count()).map(r_two).collect(),
        one_cells: r_ones,
    };

    // c̄
    let lift = |v: CellId| {
        let key = if cov {
            GrothOne {
                f: base.id1(c),
                x: gc.obj(ec.src1(v)),
                y,
                u: v,
            }
        } else {
            GrothOne {
                f: base.id1(c),
                x: y,
                y: gc.obj(ec.tgt1(v)),
                u: v,
            }
        };
        ge.one_cell(&key).unwrap()
    };
    let fibre_one = |u: CellId| {
        gd.one_cell(&GrothOne {
            f: base.id1(c),
            x: dc.src1(u),
            y: dc.tgt1(u),
            u,
        })
        .unwrap()
    };
    let tc = &**target.category();
    let geo = &*ge.category;
    let big_one = |u: CellId| big.one(fibre_one(u));
    let section_ones: Vec<CellId> = (0..tc.one_cell_count())
        .map(|k| {
            let t = target.one_parts(k);
            let (p, p2) = (lift(t.p), lift(t.p2));
            let (from, to) = if cov {
                (p, geo.comp1(p2, big_one(t.u)))
            } else {
                (geo.comp1(big_one(t.u), p), p2)
            };
            let phi = fill(geo, from, to, "c̄ on 1-cells", |x| {
                let k = ge.two_key(x);
                k.alpha == base.id2_of_object(c) && k.phi == t.phi
            });
            source
                .one_cell(&CommaOne {
                    u: fibre_one(t.u),
                    p,
                    p2,
                    phi,
                })
                .expect("c̄ on 1-cells")
        })
        .collect();
    let gdo = &*gd.category;
    let section = TwoFunctor {
        source: target.category().clone(),
        target: source.category().clone(),
        objects: (0..tc.object_count())
            .map(|o| {
                let (x, v) = target.object_parts(o);
                source
                    .object(gd.object(c, x).unwrap(), lift(v))
                    .expect("c̄ on objects")
            })
            .collect(),
        two_cells: (0..tc.two_cell_count())
            .map(|k| {
                let phi = target.two_parts(k);
                let (s, t) = (section_ones[tc.src2(k)], section_ones[tc.tgt2(k)]);
                let (us, ut) = (fibre_one(dc.src2(phi)), fibre_one(dc.tgt2(phi)));
                let cell = fill(gdo, us, ut, "c̄ on 2-cells", |x| {
                    let k = gd.two_key(x);
                    k.alpha == base.id2_of_object(c) && k.phi == phi
                });
                source.two_cell(cell, s, t).expect("c̄ on 2-cells")
            })
            .collect(),
        one_cells: section_ones,
    };

    // The witness, with components ((p, 1_{p_*x}), (1_p, 1_v)).
    let components = (0..sc.object_count())
        .map(|o| {
            let (xo, po) = source.object_parts(o);
            let (x, p) = (gd.object_key(xo), ge.one_key(po));
            let px = d.on_one[p.f].obj(x.x);
            let (u, from, to) = if cov {
                let u = GrothOne {
                    f: p.f,
                    x: x.x,
                    y: px,
                    u: dc.id1(px),
                };
                (u, po, lift(p.u))
            } else {
                let u = GrothOne {
                    f: p.f,
                    x: px,
                    y: x.x,
                    u: dc.id1(px),
                };
                (u, lift(p.u), po)
            };
            source
                .one_cell(&CommaOne {
                    u: gd.one_cell(&u).unwrap(),
                    p: from,
                    p2: to,
                    phi: geo.id2(po),
                })
                .expect("c̄R witness component")
        })
        .collect();
    let round = retraction.then(&section);
    let identity = TwoFunctor::identity(source.category());
    let (from, to) = if cov {
        (identity, round)
    } else {
        (round, identity)
    };
    let witness = backward_witness(from, to, components, "c̄R witness naturality", |h, x| {
        let alpha = ge.two_key(source.one_parts(h).phi).alpha;
        let k = gd.two_key(source.two_parts(x));
        let f = base.src2(k.alpha);
        k.alpha == alpha && d.fibres[d.transport_target(f)].is_identity_two_cell(k.phi)
    });
    Ok(Retraction {
        domain: gd,
        codomain: ge,
        source,
        target,
        retraction,
        section,
        witness,
    })
}

/// The comparison between `F̄↓(c,z)` and `F↓c` for a contravariant diagram, or
/// between `(c,z)↓F̄` and `c↓F` for a covariant one, where
/// `F̄ : ∫_A F^*D → ∫_C D` is the base change of `D` along `F`.
#[derive(Clone, Debug)]
pub struct FibreSection {
    pub whole: Grothendieck,
    pub restricted: Grothendieck,
    pub bar: TwoFunctor,
    pub source: Comma,
    pub target: Comma,
    /// `π̄`
    pub retraction: TwoFunctor,
    /// `i_z`
    pub section: TwoFunctor,
    /// `j_z = π i_z`
    pub inclusion: TwoFunctor,
    /// `1 ⇒ i_z π̄` for a contravariant diagram, `i_z π̄ ⇒ 1` for a covariant one.
    pub witness: OplaxTransformation,
}

pub fn section_jz_iz(
    f: &TwoFunctor,
    d: &Arc<TwoDiagram>,
    c: CellId,
    z: CellId,
) -> Result<FibreSection, CommaError> {
    let base = &*d.base;
    if c >= base.object_count() {
        return Err(CommaError::NotAnObject(format!("base object {c}")));
    }
    if z >= d.fibres[c].object_count() {
        return Err(CommaError::NotAnObject(format!("fibre object {z}")));
    }
    let side = match d.variance {
        Variance::Contravariant => Side::Over,
        Variance::Covariant => Side::Under,
    };
    let over = side == Side::Over;
    let whole = grothendieck(d);
    let (restricted, bar) = base_change(f, d, &whole);
    let cz = whole.object(c, z).unwrap();
    let source = comma(&bar, cz, side);
    let target = comma(f, c, side);
    let a = &*f.source;
    let (sc, tc) = (&**source.category(), &**target.category());
    let (wo, ro) = (&*whole.category, &*restricted.category);

    let retraction = {
        let ones: Vec<CellId> = (0..sc.one_cell_count())
            .map(|k| {
                let s = source.one_parts(k);
                let key = CommaOne {
                    u: restricted.one_key(s.u).f,
                    p: whole.one_key(s.p).f,
                    p2: whole.one_key(s.p2).f,
                    phi: whole.two_key(s.phi).alpha,
                };
                target.one_cell(&key).expect("π̄ on 1-cells")
            })
            .collect();
        TwoFunctor {
            source: source.category().clone(),
            target: target.category().clone(),
            objects: (0..sc.object_count())
                .map(|o| {
                    let (xo, po) = source.object_parts(o);
                    target
                        .object(restricted.object_key(xo).base, whole.one_key(po).f)
                        .expect("π̄ on objects")
                })
                .collect(),
            two_cells: (0..sc.two_cell_count())
                .map(|k| {
                    let alpha = restricted.two_key(source.two_parts(k)).alpha;
                    target
                        .two_cell(alpha, ones[sc.src2(k)], ones[sc.tgt2(k)])
                        .expect("π̄ on 2-cells")
                })
                .collect(),
            one_cells: ones,
        }
    };

    // i_z(a, p) = ((a, p^*z), (p, 1)) over c, ((a, p_*z), (p, 1)) under c.
    let lift = |p: CellId| {
        let pz = d.on_one[p].obj(z);
        let fa = if over { base.src1(p) } else { base.tgt1(p) };
        let key = if over {
            GrothOne {
                f: p,
                x: pz,
                y: z,
                u: d.fibres[fa].id1(pz),
            }
        } else {
            GrothOne {
                f: p,
                x: z,
                y: pz,
                u: d.fibres[fa].id1(pz),
            }
        };
        whole.one_cell(&key).unwrap()
    };
    let section_ones: Vec<CellId> = (0..tc.one_cell_count())
        .map(|k| {
            let t = target.one_parts(k);
            let u = GrothOne {
                f: t.u,
                x: d.on_one[t.p].obj(z),
                y: d.on_one[t.p2].obj(z),
                u: d.on_two[t.phi].component(z),
            };
            let u = restricted.one_cell(&u).expect("i_z on 1-cells");
            let (p, p2) = (lift(t.p), lift(t.p2));
            let (from, to) = if over {
                (p, wo.comp1(p2, bar.one(u)))
            } else {
                (wo.comp1(bar.one(u), p), p2)
            };
            let phi = fill(wo, from, to, "i_z on 1-cells", |x| {
                let k = whole.two_key(x);
                k.alpha == t.phi
                    && d.fibres[d.transport_target(base.src2(k.alpha))].is_identity_two_cell(k.phi)
            });
            source
                .one_cell(&CommaOne { u, p, p2, phi })
                .expect("i_z on 1-cells")
        })
        .collect();
    let section = TwoFunctor {
        source: target.category().clone(),
        target: source.category().clone(),
        objects: (0..tc.object_count())
            .map(|o| {
                let (x, p) = target.object_parts(o);
                let xo = restricted.object(x, d.on_one[p].obj(z)).unwrap();
                source.object(xo, lift(p)).expect("i_z on objects")
            })
            .collect(),
        two_cells: (0..tc.two_cell_count())
            .map(|k| {
                let al = target.two_parts(k);
                let (s, t) = (section_ones[tc.src2(k)], section_ones[tc.tgt2(k)]);
                let (us, ut) = (source.one_parts(s).u, source.one_parts(t).u);
                let cell = fill(ro, us, ut, "i_z on 2-cells", |x| {
                    let k = restricted.two_key(x);
                    let home = &restricted.diagram.fibres
                        [restricted.diagram.transport_target(a.src2(k.alpha))];
                    k.alpha == al && home.is_identity_two_cell(k.phi)
                });
                source.two_cell(cell, s, t).expect("i_z on 2-cells")
            })
            .collect(),
        one_cells: section_ones,
    };

    // Components ((1_a, v), (1_p, 1_v)).
    let components = (0..sc.object_count())
        .map(|o| {
            let (xo, po) = source.object_parts(o);
            let x = restricted.object_key(xo);
            let p = whole.one_key(po);
            let pz = d.on_one[p.f].obj(z);
            let (u, from, to) = if over {
                (
                    GrothOne {
                        f: a.id1(x.base),
                        x: x.x,
                        y: pz,
                        u: p.u,
                    },
                    po,
                    lift(p.f),
                )
            } else {
                (
                    GrothOne {
                        f: a.id1(x.base),
                        x: pz,
                        y: x.x,
                        u: p.u,
                    },
                    lift(p.f),
                    po,
                )
            };
            let u = restricted.one_cell(&u).unwrap();
            source
                .one_cell(&CommaOne {
                    u,
                    p: from,
                    p2: to,
                    phi: wo.id2(po),
                })
                .expect("i_z π̄ witness component")
        })
        .collect();
    let round = retraction.then(&section);
    let identity = TwoFunctor::identity(source.category());
    let (from, to) = if over {
        (identity, round)
    } else {
        (round, identity)
    };
    let witness = backward_witness(
        from,
        to,
        components,
        "i_z π̄ witness naturality",
        |h, x| {
            let s = source.one_parts(h);
            let beta = whole.two_key(s.phi).phi;
            let k = restricted.two_key(source.two_parts(x));
            k.alpha == a.id2(restricted.one_key(s.u).f) && k.phi == beta
        },
    );
    let inclusion = section.then(&source.projection());
    Ok(FibreSection {
        whole,
        restricted,
        bar,
        source,
        target,
        retraction,
        section,
        inclusion,
        witness,
    })
}

/// The functor `F̄ : G↓d → H↓Td` (or `d↓G → Td↓H`) induced by a commuting
/// square `H F = T G`, acting by `(a, p) ↦ (Fa, Tp)`, `(u, φ) ↦ (Fu, Tφ)`,
/// `α ↦ Fα`.
#[derive(Clone, Debug)]
pub struct CommaMap {
    pub source: Comma,
    pub target: Comma,
    pub functor: TwoFunctor,
}

pub fn comma_base_change(
    g: &TwoFunctor,
    h: &TwoFunctor,
    t: &TwoFunctor,
    f: &TwoFunctor,
    d: CellId,
    side: Side,
) -> Result<CommaMap, CommaError> {
    let ends_match = *g.target == *t.source
        && *f.source == *g.source
        && *f.target == *h.source
        && *h.target == *t.target;
    if !ends_match || !g.then(t).same_cells(&f.then(h)) {
        return Err(CommaError::NonCommutingSquare);
    }
    if d >= g.target.object_count() {
        return Err(CommaError::NotAnObject(format!("object {d}")));
    }
    let source = comma(g, d, side);
    let target = comma(h, t.obj(d), side);
    let sc = &**source.category();
    let ones: Vec<CellId> = (0..sc.one_cell_count())
        .map(|k| {
            let s = source.one_parts(k);
            let key = CommaOne {
                u: f.one(s.u),
                p: t.one(s.p),
                p2: t.one(s.p2),
                phi: t.two(s.phi),
            };
            target.one_cell(&key).expect("F̄ on 1-cells")
        })
        .collect();
    let functor = TwoFunctor {
        source: source.category().clone(),
        target: target.category().clone(),
        objects: (0..sc.object_count())
            .map(|o| {
                let (a, p) = source.object_parts(o);
                target.object(f.obj(a), t.one(p)).expect("F̄ on objects")
            })
            .collect(),
        two_cells: (0..sc.two_cell_count())
            .map(|k| {
                target
                    .two_cell(
                        f.two(source.two_parts(k)),
                        ones[sc.src2(k)],
                        ones[sc.tgt2(k)],
                    )
                    .expect("F̄ on 2-cells")
            })
            .collect(),
        one_cells: ones,
    };
    Ok(CommaMap {
        source,
        target,
        functor,
    })
}
