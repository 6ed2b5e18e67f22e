//! Basic constructors: terminal, opposite, products, hom categories.

use std::collections::HashMap;
use std::sync::Arc;

use super::build::{assemble, Assembly, CellKeys};
use super::{Cell, CellId, TwoCategory, TwoFunctor};

/// The 2-category with one object, one 1-cell and one 2-cell.
pub fn terminal() -> TwoCategory {
    TwoCategory::unit_closed(&["*"], &[], &[]).expect("terminal 2-category")
}

/// Reverses 1-cells and keeps 2-cells pointing the same way, so that the hom
/// category from `b` to `a` in the result is the hom category from `a` to `b`.
/// Cell names and indices are unchanged.
pub fn opposite(c: &TwoCategory) -> TwoCategory {
    let ones = c
        .one_cells()
        .iter()
        .map(|x| Cell {
            name: x.name.clone(),
            source: x.target,
            target: x.source,
        })
        .collect();
    let swap =
        |m: &HashMap<(CellId, CellId), CellId>| m.iter().map(|(&(l, r), &v)| ((r, l), v)).collect();
    TwoCategory::from_parts(
        c.object_names().to_vec(),
        ones,
        c.two_cells().to_vec(),
        (0..c.object_count()).map(|x| c.try_id1(x)).collect(),
        (0..c.one_cell_count()).map(|f| c.try_id2(f)).collect(),
        swap(c.hcomp1_table()),
        c.vcomp2_table().clone(),
        swap(c.hcomp2_table()),
    )
    .expect("opposite keeps names distinct")
}

/// Copy of `c` with `suffix` appended to every name, and the isomorphism onto it.
pub fn relabel(c: &Arc<TwoCategory>, suffix: &str) -> (Arc<TwoCategory>, TwoFunctor) {
    let rename = |x: &Cell| Cell {
        name: format!("{}{suffix}", x.name),
        ..x.clone()
    };
    let copy = TwoCategory::from_parts(
        c.object_names()
            .iter()
            .map(|n| format!("{n}{suffix}"))
            .collect(),
        c.one_cells().iter().map(rename).collect(),
        c.two_cells().iter().map(rename).collect(),
        (0..c.object_count()).map(|x| c.try_id1(x)).collect(),
        (0..c.one_cell_count()).map(|f| c.try_id2(f)).collect(),
        c.hcomp1_table().clone(),
        c.vcomp2_table().clone(),
        c.hcomp2_table().clone(),
    )
    .expect("suffixing keeps names distinct");
    let copy = Arc::new(copy);
    let mut iso = TwoFunctor::identity(c);
    iso.target = copy.clone();
    (copy, iso)
}

struct ProductKeys<'a> {
    factors: &'a [Arc<TwoCategory>],
}

fn tuple_name(parts: Vec<&str>) -> String {
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("({})", parts.join(","))
    }
}

impl CellKeys for ProductKeys<'_> {
    type Obj = Vec<CellId>;
    type One = Vec<CellId>;
    type Two = Vec<CellId>;

    fn one_boundary(&self, f: &Vec<CellId>) -> (Vec<CellId>, Vec<CellId>) {
        let z = self.factors.iter().zip(f);
        (
            z.clone().map(|(c, &g)| c.src1(g)).collect(),
            z.map(|(c, &g)| c.tgt1(g)).collect(),
        )
    }
    fn two_boundary(&self, a: &Vec<CellId>) -> (Vec<CellId>, Vec<CellId>) {
        let z = self.factors.iter().zip(a);
        (
            z.clone().map(|(c, &g)| c.src2(g)).collect(),
            z.map(|(c, &g)| c.tgt2(g)).collect(),
        )
    }
    fn id1(&self, x: &Vec<CellId>) -> Vec<CellId> {
        self.factors.iter().zip(x).map(|(c, &y)| c.id1(y)).collect()
    }
    fn id2(&self, f: &Vec<CellId>) -> Vec<CellId> {
        self.factors.iter().zip(f).map(|(c, &g)| c.id2(g)).collect()
    }
    fn comp1(&self, g: &Vec<CellId>, f: &Vec<CellId>) -> Vec<CellId> {
        (0..self.factors.len())
            .map(|i| self.factors[i].comp1(g[i], f[i]))
            .collect()
    }
    fn vcomp(&self, b: &Vec<CellId>, a: &Vec<CellId>) -> Vec<CellId> {
        (0..self.factors.len())
            .map(|i| self.factors[i].vcomp(b[i], a[i]))
            .collect()
    }
    fn hcomp(&self, b: &Vec<CellId>, a: &Vec<CellId>) -> Vec<CellId> {
        (0..self.factors.len())
            .map(|i| self.factors[i].hcomp(b[i], a[i]))
            .collect()
    }
    fn object_name(&self, x: &Vec<CellId>) -> String {
        tuple_name(
            self.factors
                .iter()
                .zip(x)
                .map(|(c, &y)| c.object_name(y))
                .collect(),
        )
    }
    fn one_name(&self, f: &Vec<CellId>) -> String {
        tuple_name(
            self.factors
                .iter()
                .zip(f)
                .map(|(c, &y)| c.one_cell(y).name.as_str())
                .collect(),
        )
    }
    fn two_name(&self, a: &Vec<CellId>) -> String {
        tuple_name(
            self.factors
                .iter()
                .zip(a)
                .map(|(c, &y)| c.two_cell(y).name.as_str())
                .collect(),
        )
    }
}

/// All tuples with one entry from each range, in lexicographic order.
pub(crate) fn tuples(sizes: &[usize]) -> Vec<Vec<CellId>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// A product 2-category with the factor index of each cell.
pub type Product = Assembly<Vec<CellId>, Vec<CellId>, Vec<CellId>>;

/// Cartesian product; cells are tuples of cells, composed componentwise.
///
/// # Panics
///
/// Panics on an empty list.
pub fn product(factors: &[Arc<TwoCategory>]) -> Product {
    assert!(!factors.is_empty(), "product of an empty list");
    let keys = ProductKeys { factors };
    let objs = tuples(&factors.iter().map(|c| c.object_count()).collect::<Vec<_>>());
    let ones = tuples(
        &factors
            .iter()
            .map(|c| c.one_cell_count())
            .collect::<Vec<_>>(),
    );
    let twos = tuples(
        &factors
            .iter()
            .map(|c| c.two_cell_count())
            .collect::<Vec<_>>(),
    );
    assemble(&keys, objs, ones, twos).expect("products of valid 2-categories are closed")
}

/// A hom category `C(a, b)` promoted to a 2-category with identity 2-cells.
#[derive(Clone, Debug)]
pub struct HomCategory {
    pub category: Arc<TwoCategory>,
    pub parent: Arc<TwoCategory>,
    pub source: CellId,
    pub target: CellId,
    /// Parent 1-cell of each object.
    pub objects: Vec<CellId>,
    /// Parent 2-cell of each 1-cell; 2-cell `i` is the identity on 1-cell `i`.
    pub arrows: Vec<CellId>,
    object_of: HashMap<CellId, CellId>,
    arrow_of: HashMap<CellId, CellId>,
}

impl HomCategory {
    /// Object standing for the parent 1-cell `f`.
    pub fn object_of(&self, f: CellId) -> Option<CellId> {
        self.object_of.get(&f).copied()
    }

    /// 1-cell standing for the parent 2-cell `a`.
    pub fn arrow_of(&self, a: CellId) -> Option<CellId> {
        self.arrow_of.get(&a).copied()
    }
}

struct HomKeys<'a> {
    c: &'a TwoCategory,
}

impl CellKeys for HomKeys<'_> {
    type Obj = CellId;
    type One = CellId;
    type Two = CellId;

    fn one_boundary(&self, a: &CellId) -> (CellId, CellId) {
        (self.c.src2(*a), self.c.tgt2(*a))
    }
    fn two_boundary(&self, a: &CellId) -> (CellId, CellId) {
        (*a, *a)
    }
    fn id1(&self, f: &CellId) -> CellId {
        self.c.id2(*f)
    }
    fn id2(&self, a: &CellId) -> CellId {
        *a
    }
    fn comp1(&self, b: &CellId, a: &CellId) -> CellId {
        self.c.vcomp(*b, *a)
    }
    fn vcomp(&self, _b: &CellId, a: &CellId) -> CellId {
        *a
    }
    fn hcomp(&self, b: &CellId, a: &CellId) -> CellId {
        self.c.vcomp(*b, *a)
    }
    fn object_name(&self, f: &CellId) -> String {
        self.c.one_cell(*f).name.clone()
    }
    fn one_name(&self, a: &CellId) -> String {
        self.c.two_cell(*a).name.clone()
    }
    fn two_name(&self, a: &CellId) -> String {
        format!("id[{}]", self.c.two_cell(*a).name)
    }
}

/// The hom category `C(a, b)`: objects are 1-cells `a → b`, 1-cells are the
/// 2-cells between them, and every 2-cell is an identity.
pub fn hom_category(c: &Arc<TwoCategory>, a: CellId, b: CellId) -> HomCategory {
    let objects = c.hom(a, b);
    let arrows = c.hom2(a, b);
    let asm = assemble(
        &HomKeys { c },
        objects.clone(),
        arrows.clone(),
        arrows.clone(),
    )
    .expect("hom categories of valid 2-categories are closed");
    HomCategory {
        category: Arc::new(asm.category),
        parent: c.clone(),
        source: a,
        target: b,
        object_of: objects.iter().enumerate().map(|(i, &f)| (f, i)).collect(),
        arrow_of: arrows.iter().enumerate().map(|(i, &x)| (x, i)).collect(),
        objects,
        arrows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate;

    fn wa() -> Arc<TwoCategory> {
        Arc::new(TwoCategory::unit_closed(&["0", "1"], &[("e", "0", "1")], &[]).unwrap())
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = wa();
        assert_eq!(opposite(&opposite(&c)), *c);
        let op = opposite(&c);
        let e = op.one_cell_by_name("e").unwrap();
        assert_eq!(op.object_name(op.src1(e)), "1");
        assert!(validate(&op).is_empty());
    }

    #[test]
    fn product_counts_multiply() {
        let p = product(&[wa(), wa()]);
        assert_eq!(p.category.counts(), (4, 9, 9));
        assert!(validate(&p.category).is_empty());
        let single = product(&[wa()]);
        assert_eq!(single.category, *wa());
    }

    #[test]
    fn relabel_gives_an_isomorphism() {
        let (copy, iso) = relabel(&wa(), "'");
        assert_eq!(copy.object_name(0), "0'");
        assert!(crate::category::check_two_functor(&iso).is_empty());
    }
}
