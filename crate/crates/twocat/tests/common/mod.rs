#![allow(dead_code)]

pub mod oracles;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{Tables, TwoCategory};

/// The cyclic group of order `n` as a one-object 2-category with identity
/// 2-cells only. Its nerve is a model of the classifying space of the group.
pub fn cyclic_group(n: usize) -> Arc<TwoCategory> {
    let r = |i: usize| format!("r{}", i % n);
    let mut t = Tables {
        objects: vec!["*".into()],
        ..Tables::default()
    };
    t.id1.push(("*".into(), r(0)));
    for i in 0..n {
        t.one_cells.push((r(i), "*".into(), "*".into()));
        t.two_cells.push((format!("1_{}", r(i)), r(i), r(i)));
        t.id2.push((r(i), format!("1_{}", r(i))));
        t.vcomp2.push((
            format!("1_{}", r(i)),
            format!("1_{}", r(i)),
            format!("1_{}", r(i)),
        ));
        for j in 0..n {
            t.hcomp1.push((r(i), r(j), r(i + j)));
            t.hcomp2.push((
                format!("1_{}", r(i)),
                format!("1_{}", r(j)),
                format!("1_{}", r(i + j)),
            ));
        }
    }
    Arc::new(TwoCategory::from_tables(&t).unwrap())
}

/// Shape of a small random 2-category: `sources` objects with arrows into
/// `sinks` objects, so no two non-identity 1-cells compose.
#[derive(Clone, Debug)]
pub struct Shape {
    pub sources: usize,
    pub sinks: usize,
    /// For each (source, sink) pair, the number of parallel 1-cells.
    pub parallel: Vec<usize>,
    /// For each (source, sink) pair and each 1-cell after the first, whether a
    /// 2-cell runs from the first 1-cell to it.
    pub two_cells: Vec<Vec<bool>>,
}

impl Shape {
    pub fn objects(&self) -> usize {
        self.sources + self.sinks
    }

    pub fn build(&self) -> Arc<TwoCategory> {
        let objects: Vec<String> = (0..self.sources)
            .map(|i| format!("s{i}"))
            .chain((0..self.sinks).map(|j| format!("t{j}")))
            .collect();
        let mut ones = Vec::new();
        let mut twos = Vec::new();
        for s in 0..self.sources {
            for t in 0..self.sinks {
                let k = s * self.sinks + t;
                for m in 0..self.parallel[k] {
                    ones.push((format!("f{s}{t}_{m}"), format!("s{s}"), format!("t{t}")));
                }
                for (m, &present) in self.two_cells[k]
                    .iter()
                    .enumerate()
                    .take(self.parallel[k].saturating_sub(1))
                {
                    if present {
                        twos.push((
                            format!("a{s}{t}_{}", m + 1),
                            format!("f{s}{t}_0"),
                            format!("f{s}{t}_{}", m + 1),
                        ));
                    }
                }
            }
        }
        let o: Vec<&str> = objects.iter().map(String::as_str).collect();
        let one: Vec<(&str, &str, &str)> = ones
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let two: Vec<(&str, &str, &str)> = twos
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        Arc::new(TwoCategory::unit_closed(&o, &one, &two).unwrap())
    }

    /// Connected components of the hom category between a source and a sink:
    /// the 1-cells joined by the 2-cells present.
    pub fn hom_components(&self, k: usize) -> usize {
        let n = self.parallel[k];
        if n == 0 {
            return 0;
        }
        let joined = self.two_cells[k].iter().take(n - 1).filter(|&&b| b).count();
        n - joined
    }

    /// Betti numbers `(b0, b1)` of the graph with one vertex per object and
    /// one edge per component of each hom category.
    pub fn graph_betti(&self) -> (usize, usize) {
        let v = self.objects();
        let mut parent: Vec<usize> = (0..v).collect();
        fn root(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut edges = 0;
        for s in 0..self.sources {
            for t in 0..self.sinks {
                let e = self.hom_components(s * self.sinks + t);
                edges += e;
                if e > 0 {
                    let (a, b) = (root(&mut parent, s), root(&mut parent, self.sources + t));
                    parent[a] = b;
                }
            }
        }
        let comps = (0..v).filter(|&x| root(&mut parent, x) == x).count();
        (comps, edges + comps - v)
    }
}

pub fn shapes() -> impl Strategy<Value = Shape> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(sources, sinks)| {
        let pairs = sources * sinks;
        (
            Just(sources),
            Just(sinks),
            prop::collection::vec(0usize..=3, pairs),
            prop::collection::vec(prop::collection::vec(any::<bool>(), 2), pairs),
        )
            .prop_map(|(sources, sinks, parallel, two_cells)| Shape {
                sources,
                sinks,
                parallel,
                two_cells,
            })
    })
}
