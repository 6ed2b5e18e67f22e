//! The isomorphisms relating codiagonals built from `E` to codiagonals of
//! double nerves, and the product form of a homotopy colimit of a constant
//! diagram.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{
    product, CellId, TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation, Variance,
};
use crate::grothendieck::{grothendieck, GrothOne, GrothTwo};
use crate::nerves::{double_nerve, repackage, wbar_double_nerve, Column, Grid, Staircase};
use crate::simplicial::{
    triangle_window, wbar, BisimplicialSet, MultiSimplicialSet, Simplex, SimplicialError,
    SimplicialMap, SimplicialSet, Truncation,
};

use super::e::{build_e, e_diagonal_slices, e_slice, slice_level, ESimplex};
use super::levels::{hocolim, Hocolim};

/// The data both sides of the isomorphisms reduce to: a staircase in the
/// base, a fibre object over each of its objects, and for each step `m` a
/// column of height `m - 1` of fibre cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FibredStaircase {
    base: Staircase,
    xs: Vec<CellId>,
    us: Vec<Column>,
}

/// Reads a fibred staircase off a codiagonal tuple `t_0, …, t_n` whose entry
/// `t_j` has outer degree `n - j` and columns of height `j`.
fn from_codiagonal(ts: &[ESimplex]) -> FibredStaircase {
    let n = ts.len() - 1;
    FibredStaircase {
        base: Staircase {
            objects: ts.iter().map(|t| t.grid.objects[0]).collect(),
            columns: (1..=n).map(|j| ts[j - 1].grid.columns[0].clone()).collect(),
        },
        xs: ts.iter().map(|t| t.xs[0]).collect(),
        us: (1..=n).map(|j| ts[j - 1].us[0].clone()).collect(),
    }
}

/// The bisimplicial set `(p, r) ↦ inner[p]_r` on the triangle `p + r ≤ N`,
/// where `inner[p]` is truncated at `N - p`. Direction 0 applies the given
/// outer maps `(p, r, i, simplex)`, direction 1 the structure of `inner[p]`.
fn stack(
    inner: &[Arc<SimplicialSet>],
    budget: usize,
    outer_face: impl Fn(usize, usize, usize, &Simplex) -> Simplex,
    outer_degeneracy: impl Fn(usize, usize, usize, &Simplex) -> Simplex,
) -> Result<BisimplicialSet, SimplicialError> {
    let bound = inner.len() - 1;
    let locate = |p: usize, r: usize, s: &Simplex| {
        inner[p].find(&[r], s).expect("simplex of the inner level")
    };
    MultiSimplicialSet::build(
        2,
        triangle_window(bound),
        budget,
        |idx| {
            Ok((0..inner[idx[0]].len(idx[1]))
                .map(|k| inner[idx[0]].simplex_at(idx[1], k).clone())
                .collect())
        },
        |idx, dir, i, s| {
            let (p, r) = (idx[0], idx[1]);
            if dir == 0 {
                return outer_face(p, r, i, s);
            }
            inner[p]
                .simplex_at(r - 1, inner[p].d(r, i, locate(p, r, s)))
                .clone()
        },
        |idx, dir, j, s| {
            let (p, r) = (idx[0], idx[1]);
            if dir == 0 {
                return outer_degeneracy(p, r, j, s);
            }
            inner[p]
                .simplex_at(r + 1, inner[p].s(r, j, locate(p, r, s)))
                .clone()
        },
    )
    .map(BisimplicialSet::new)
}

fn missing(map: &str, s: &Simplex) -> SimplicialError {
    SimplicialError::MissingSimplex {
        map: map.to_string(),
        simplex: format!("{s:?}"),
    }
}

/// `W̄([p] ↦ Diag E_p) → W̄([p] ↦ W̄ nn hocolim_p)` up to level `N`.
///
/// Both sides are read as fibred staircases and matched. A contravariant
/// diagram is handled through its mirror on the opposite base, with the
/// structure maps of its homotopy colimit read in reverse order.
pub fn iso_112(
    d: &Arc<TwoDiagram>,
    t: impl Into<Truncation>,
) -> Result<SimplicialMap, SimplicialError> {
    let t = t.into();
    let n = t.bound;
    let reversed = d.variance == Variance::Contravariant;
    let covariant = if reversed {
        Arc::new(d.mirrored())
    } else {
        d.clone()
    };

    let e = build_e(&covariant, t)?;
    let diagonal = e_diagonal_slices(&e, n, t.budget)?;
    let lhs = Arc::new(wbar(&diagonal, t)?);

    let h = hocolim(d, n);
    let nns: Vec<BisimplicialSet> = (0..=n)
        .map(|p| double_nerve(&h.simplicial.levels[p], t.at(n - p)))
        .collect::<Result<_, _>>()?;
    let inner: Vec<Arc<SimplicialSet>> = nns
        .iter()
        .enumerate()
        .map(|(p, nn)| wbar(nn, t.at(n - p)).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let position = |p: usize, i: usize| if reversed { p - i } else { i };
    let apply = |f: &TwoFunctor,
                 from: &BisimplicialSet,
                 to: &BisimplicialSet,
                 r: usize,
                 s: &Simplex|
     -> Simplex {
        s.iter()
            .enumerate()
            .map(|(j, &k)| {
                let image = Grid::decode(r - j, j, from.simplex(&[r - j, j], k))
                    .map(f)
                    .encode();
                to.find(&[r - j, j], &image)
                    .expect("structure 2-functors act on double nerves")
            })
            .collect()
    };
    let outer = stack(
        &inner,
        t.budget,
        |p, r, i, s| {
            apply(
                h.simplicial.face(p, position(p, i)),
                &nns[p],
                &nns[p - 1],
                r,
                s,
            )
        },
        |p, r, j, s| {
            apply(
                h.simplicial.degeneracy(p, position(p, j)),
                &nns[p],
                &nns[p + 1],
                r,
                s,
            )
        },
    )?;
    let rhs = Arc::new(wbar(&outer, t)?);

    let first = |v: &[CellId]| if reversed { *v.last().unwrap() } else { v[0] };
    let staircase = |p: usize, r: usize, k: usize| -> Staircase {
        let grids: Vec<Grid> = inner[p]
            .simplex_at(r, k)
            .iter()
            .enumerate()
            .map(|(j, &g)| Grid::decode(r - j, j, nns[p].simplex(&[r - j, j], g)))
            .collect();
        repackage(&grids)
    };
    let rhs_key = |m: usize, s: &Simplex| -> FibredStaircase {
        let sts: Vec<Staircase> = s
            .iter()
            .enumerate()
            .map(|(j, &k)| staircase(m - j, j, k))
            .collect();
        let level = |j: usize| &h.levels[m - j];
        let base_column = |j: usize| {
            let (prev, l) = (&sts[j - 1], level(j - 1));
            Column {
                ones: (0..j)
                    .map(|i| first(&l.objects[prev.objects[i]].arrows))
                    .collect(),
                twos: (1..j)
                    .map(|c| first(&l.one_cells[prev.columns[c - 1].ones[0]].twos))
                    .collect(),
            }
        };
        let fibre_column = |j: usize| {
            let (col, l) = (&sts[j].columns[j - 1], level(j));
            Column {
                ones: col.ones.iter().map(|&o| l.one_cells[o].u).collect(),
                twos: col.twos.iter().map(|&a| l.two_cells[a].phi).collect(),
            }
        };
        FibredStaircase {
            base: Staircase {
                objects: (0..=m)
                    .map(|j| first(&level(j).objects[sts[j].objects[0]].chain))
                    .collect(),
                columns: (1..=m).map(base_column).collect(),
            },
            xs: (0..=m)
                .map(|j| level(j).objects[sts[j].objects[j]].x)
                .collect(),
            us: (1..=m).map(fibre_column).collect(),
        }
    };
    let lhs_key = |m: usize, s: &Simplex| -> FibredStaircase {
        let ts: Vec<ESimplex> = s
            .iter()
            .enumerate()
            .map(|(j, &k)| ESimplex::decode(m - j, j, j, e.simplex(&[m - j, j, j], k)))
            .collect();
        from_codiagonal(&ts)
    };

    let mut table: Vec<HashMap<FibredStaircase, Simplex>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut level = HashMap::with_capacity(rhs.len(m));
        for k in 0..rhs.len(m) {
            let s = rhs.simplex_at(m, k);
            level.insert(rhs_key(m, s), s.clone());
        }
        table.push(level);
    }
    SimplicialMap::from_fn(&lhs, &rhs, |m, s| {
        table[m]
            .get(&lhs_key(m, s))
            .cloned()
            .ok_or_else(|| missing("the comparison of E with hocolim", s))
    })
}

/// `W̄([p] ↦ W̄ E_p) → W̄ nn ∫D` up to level `N`, sending the data
/// `((c, f, α), (x, u, φ))` to the staircase `((c, x), (f, u), (α, φ))`.
pub fn iso_114(
    d: &Arc<TwoDiagram>,
    t: impl Into<Truncation>,
) -> Result<SimplicialMap, SimplicialError> {
    let t = t.into();
    let n = t.bound;
    let variance = d.variance;
    let e = build_e(d, t)?;
    let slices: Vec<BisimplicialSet> = (0..=n)
        .map(|p| e_slice(&e, p, variance, n - p, t.budget))
        .collect::<Result<_, _>>()?;
    let inner: Vec<Arc<SimplicialSet>> = slices
        .iter()
        .enumerate()
        .map(|(p, b)| wbar(b, t.at(n - p)).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let outer = stack(
        &inner,
        t.budget,
        |p, r, i, s| {
            s.iter()
                .enumerate()
                .map(|(j, &k)| e.face(&slice_level(p, r - j, j, variance), 0, i, k))
                .collect()
        },
        |p, r, i, s| {
            s.iter()
                .enumerate()
                .map(|(j, &k)| e.degeneracy(&slice_level(p, r - j, j, variance), 0, i, k))
                .collect()
        },
    )?;
    let lhs = Arc::new(wbar(&outer, t)?);
    let g = grothendieck(d);
    let rhs = Arc::new(wbar_double_nerve(&g.category, t)?);

    // A simplex of W̄ E_p at level r as one ESimplex with columns of height r.
    let collapse = |p: usize, r: usize, s: &Simplex| -> ESimplex {
        let es: Vec<ESimplex> = (0..=r)
            .map(|i| {
                let idx = slice_level(p, r - i, i, variance);
                ESimplex::decode(idx[0], idx[1], idx[2], e.simplex(&idx, s[i]))
            })
            .collect();
        let covariant = variance == Variance::Covariant;
        let full = if covariant { &es[r] } else { &es[0] };
        let us = (0..p)
            .map(|m| {
                if covariant {
                    Column {
                        ones: (0..=r).map(|k| es[k].us[m].ones[0]).collect(),
                        twos: (1..=r).map(|k| es[k - 1].us[m].twos[0]).collect(),
                    }
                } else {
                    Column {
                        ones: (0..=r).map(|k| es[k].us[m].ones[k]).collect(),
                        twos: (1..=r).map(|k| es[k].us[m].twos[k - 1]).collect(),
                    }
                }
            })
            .collect();
        ESimplex {
            grid: full.grid.clone(),
            xs: full.xs.clone(),
            us,
        }
    };
    let pair = |key: &FibredStaircase| -> Option<Simplex> {
        let b = &key.base;
        let objects = (0..b.objects.len())
            .map(|j| g.object(b.objects[j], key.xs[j]))
            .collect::<Option<Vec<_>>>()?;
        let columns = (1..b.objects.len())
            .map(|j| {
                let (bc, uc) = (&b.columns[j - 1], &key.us[j - 1]);
                let (x, y) = (key.xs[j - 1], key.xs[j]);
                let ones = (0..j)
                    .map(|k| {
                        g.one_cell(&GrothOne {
                            f: bc.ones[k],
                            x,
                            y,
                            u: uc.ones[k],
                        })
                    })
                    .collect::<Option<Vec<_>>>()?;
                let twos = (1..j)
                    .map(|k| {
                        g.two_cell(&GrothTwo {
                            alpha: bc.twos[k - 1],
                            phi: uc.twos[k - 1],
                            x,
                            y,
                            u: uc.ones[k - 1],
                            v: uc.ones[k],
                        })
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(Column { ones, twos })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Staircase { objects, columns }.encode())
    };
    SimplicialMap::from_fn(&lhs, &rhs, |m, s| {
        let ts: Vec<ESimplex> = s
            .iter()
            .enumerate()
            .map(|(j, &k)| collapse(m - j, j, inner[m - j].simplex_at(j, k)))
            .collect();
        pair(&from_codiagonal(&ts))
            .ok_or_else(|| missing("the pairing into the Grothendieck construction", s))
    })
}

/// Level `p` of the homotopy colimit of a constant diagram over a locally
/// discrete base, compared with the product of the fibre and the discrete
/// 2-category on the `p`-chains of the base.
#[derive(Clone, Debug)]
pub struct ConstantLevel {
    pub product: Arc<TwoCategory>,
    /// The chains `(objects, arrows)` in the order of the discrete factor.
    pub chains: Vec<(Vec<CellId>, Vec<CellId>)>,
    pub functor: TwoFunctor,
}

/// Builds the comparison 2-functor for level `p`. Fails unless the diagram
/// is constant and the base is locally discrete.
pub fn constant_level(h: &Hocolim, p: usize) -> Result<ConstantLevel, SimplicialError> {
    let d = &*h.diagram;
    let base = &*d.base;
    let fibre = d.fibres[0].clone();
    let id = TwoFunctor::identity(&fibre);
    let constant = d.fibres.iter().all(|x| **x == *fibre)
        && d.on_one.iter().all(|f| f.same_cells(&id))
        && d.on_two
            .iter()
            .all(|a| a.components == TwoNaturalTransformation::identity(&id).components);
    if !constant || !base.is_locally_discrete() {
        return Err(SimplicialError::Unsupported(
            "the product form needs a constant diagram over a locally discrete base".into(),
        ));
    }
    let level = &h.levels[p];
    let mut chains: Vec<(Vec<CellId>, Vec<CellId>)> = Vec::new();
    let mut chain_index = HashMap::new();
    for o in &level.objects {
        let key = (o.chain.clone(), o.arrows.clone());
        chain_index.entry(key.clone()).or_insert_with(|| {
            chains.push(key);
            chains.len() - 1
        });
    }
    let names: Vec<String> = chains
        .iter()
        .map(|(objs, arrows)| {
            let mut s = base.object_name(objs[0]).to_string();
            for (f, &c) in arrows.iter().zip(&objs[1..]) {
                s.push_str(&format!(
                    " -{}-> {}",
                    base.one_cell(*f).name,
                    base.object_name(c)
                ));
            }
            s
        })
        .collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let discrete = TwoCategory::unit_closed(&name_refs, &[], &[])
        .map_err(|e| SimplicialError::Unsupported(format!("discrete chains: {e}")))?;
    let discrete = Arc::new(discrete);
    let prod = product(&[fibre.clone(), discrete.clone()]);
    let arrows_of = |twos: &[CellId]| twos.iter().map(|&a| base.src2(a)).collect::<Vec<_>>();
    let objects = level
        .objects
        .iter()
        .map(|o| {
            prod.object(&vec![
                o.x,
                chain_index[&(o.chain.clone(), o.arrows.clone())],
            ])
            .unwrap()
        })
        .collect();
    let one_cells = level
        .one_cells
        .iter()
        .map(|f| {
            let k = chain_index[&(f.chain.clone(), arrows_of(&f.twos))];
            prod.one_cell(&vec![f.u, discrete.id1(k)]).unwrap()
        })
        .collect();
    let two_cells = level
        .two_cells
        .iter()
        .map(|a| {
            let k = chain_index[&(a.chain.clone(), arrows_of(&a.twos))];
            prod.two_cell(&vec![a.phi, discrete.id2(discrete.id1(k))])
                .unwrap()
        })
        .collect();
    let product = Arc::new(prod.category);
    Ok(ConstantLevel {
        functor: TwoFunctor {
            source: h.simplicial.levels[p].clone(),
            target: product.clone(),
            objects,
            one_cells,
            two_cells,
        },
        product,
        chains,
    })
}
