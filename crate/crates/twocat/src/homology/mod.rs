//! Truncated integral homology of simplicial sets and the maps induced by
//! simplicial maps.
//!
//! Homology is computed on the normalized chain complex, whose basis in each
//! degree is the set of nondegenerate simplices. A simplicial set truncated
//! at `N` only determines homology in degrees `0..=N-1`; anything higher is
//! refused.

mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::report::ValidationReport;
use crate::simplicial::{SimplicialMap, SimplicialSet};

pub use smith::{smith, Matrix, Smith};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {degree} is outside the valid range 0..={valid} for truncation {bound}")]
    DegreeOutOfRange {
        degree: usize,
        valid: usize,
        bound: usize,
    },
    #[error("truncation 0 determines no homology")]
    TooShallow,
}

/// The normalized chain complex of a truncated simplicial set.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `basis[n]` lists the nondegenerate `n`-simplices by index.
    pub basis: Vec<Vec<usize>>,
    /// `boundaries[n] : C_n → C_{n-1}`; `boundaries[0]` has no rows.
    pub boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn bound(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    /// Checks `∂_{n-1} ∂_n = 0` in every degree.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        for n in 2..=self.bound() {
            r.require(
                self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero(),
                "boundary squares to zero",
                || format!("degree {n}"),
            );
        }
        r
    }

    fn valid(&self, degree: usize) -> Result<(), HomologyError> {
        let bound = self.bound();
        if bound == 0 {
            return Err(HomologyError::TooShallow);
        }
        if degree > bound - 1 {
            return Err(HomologyError::DegreeOutOfRange {
                degree,
                valid: bound - 1,
                bound,
            });
        }
        Ok(())
    }
}

fn nondegenerate(x: &SimplicialSet, n: usize) -> Vec<usize> {
    (0..x.len(n))
        .filter(|&k| !x.is_degenerate(&[n], k))
        .collect()
}

pub fn normalized_chain_complex(x: &SimplicialSet) -> ChainComplex {
    normalized_chain_complex_upto(x, x.bound())
}

/// The normalized complex in degrees `0..=bound` only.
pub fn normalized_chain_complex_upto(x: &SimplicialSet, bound: usize) -> ChainComplex {
    let bound = bound.min(x.bound());
    let basis: Vec<Vec<usize>> = (0..=bound).map(|n| nondegenerate(x, n)).collect();
    let mut boundaries = vec![Matrix::zeros(0, basis[0].len())];
    for n in 1..=bound {
        let position: std::collections::HashMap<usize, usize> = basis[n - 1]
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i))
            .collect();
        let mut m = Matrix::zeros(basis[n - 1].len(), basis[n].len());
        for (col, &k) in basis[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = position.get(&x.d(n, i, k)) {
                    let sign = if i % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    m.data[row][col] += sign;
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { basis, boundaries }
}

/// `H_i ≅ ℤ^betti ⊕ ⨁ ℤ/t` for the listed torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub degree: usize,
    pub betti: usize,
    /// Torsion coefficients, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Highest degree the truncation determines.
    pub valid_through: usize,
}

impl HomologyResult {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Whether the group is `ℤ`.
    pub fn is_integers(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }

    pub fn same_group(&self, other: &HomologyResult) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_i` of the complex, by Smith normal form of the boundaries.
pub fn homology(cc: &ChainComplex, i: usize) -> Result<HomologyResult, HomologyError> {
    cc.valid(i)?;
    let outgoing = smith(&cc.boundaries[i]).rank();
    let incoming = smith(&cc.boundaries[i + 1]);
    Ok(HomologyResult {
        degree: i,
        betti: cc.rank(i) - outgoing - incoming.rank(),
        torsion: incoming
            .invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
        valid_through: cc.bound() - 1,
    })
}

/// Generators of `H_i` and the coordinates of cycles with respect to them.
struct HomologyBasis {
    result: HomologyResult,
    /// Kernel basis of `∂_i`, as chains, one per column.
    cycles: Matrix,
    /// Rank of `∂_i`, the number of leading coordinates that vanish on cycles.
    skip: usize,
    /// Inverse of the column transform of `∂_i`.
    to_cycle_coords: Matrix,
    /// Row transform taking cycle coordinates to generator coordinates.
    to_generators: Matrix,
    to_generators_inv: Matrix,
    /// Order of each generator coordinate: `1` is dropped, `0` is free.
    orders: Vec<BigInt>,
}

impl HomologyBasis {
    fn new(cc: &ChainComplex, i: usize) -> Result<Self, HomologyError> {
        let result = homology(cc, i)?;
        let s = smith(&cc.boundaries[i]);
        let skip = s.rank();
        let n = cc.rank(i);
        let mut cycles = Matrix::zeros(n, n - skip);
        for r in 0..n {
            for c in skip..n {
                cycles.data[r][c - skip] = s.right.data[r][c].clone();
            }
        }
        let incoming = &cc.boundaries[i + 1];
        let coords = s.right_inv.mul(incoming);
        let mut m = Matrix::zeros(n - skip, incoming.cols);
        for r in skip..n {
            m.data[r - skip] = coords.data[r].clone();
        }
        let t = smith(&m);
        let mut orders = vec![BigInt::zero(); n - skip];
        for (j, d) in t.invariants.iter().enumerate() {
            orders[j] = d.clone();
        }
        Ok(Self {
            result,
            cycles,
            skip,
            to_cycle_coords: s.right_inv,
            to_generators: t.left,
            to_generators_inv: t.left_inv,
            orders,
        })
    }

    /// Indices of the generator coordinates that survive: free ones first,
    /// then torsion ones in order.
    fn kept(&self) -> Vec<usize> {
        let torsion = (0..self.orders.len())
            .filter(|&j| !self.orders[j].is_zero() && !self.orders[j].is_one());
        let free = (0..self.orders.len()).filter(|&j| self.orders[j].is_zero());
        free.chain(torsion).collect()
    }

    /// The cycle representing generator `j`.
    fn generator(&self, j: usize) -> Vec<BigInt> {
        self.cycles.apply(&self.to_generators_inv.column(j))
    }

    /// Coordinates of a cycle in the kept generators, torsion parts reduced.
    fn coordinates(&self, z: &[BigInt]) -> Vec<BigInt> {
        let all = self.to_cycle_coords.apply(z);
        let y = self.to_generators.apply(&all[self.skip..]);
        self.kept()
            .into_iter()
            .map(|j| {
                if self.orders[j].is_zero() {
                    y[j].clone()
                } else {
                    y[j].mod_floor(&self.orders[j])
                }
            })
            .collect()
    }
}

/// The normalized chain map of a simplicial map in degree `n`: columns are
/// source basis elements, degenerate images go to zero.
pub fn chain_map(
    f: &SimplicialMap,
    source: &ChainComplex,
    target: &ChainComplex,
    n: usize,
) -> Matrix {
    let position: std::collections::HashMap<usize, usize> = target.basis[n]
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i))
        .collect();
    let mut m = Matrix::zeros(target.rank(n), source.rank(n));
    for (col, &k) in source.basis[n].iter().enumerate() {
        if let Some(&row) = position.get(&f.apply(n, k)) {
            m.data[row][col] = BigInt::one();
        }
    }
    m
}

/// The map induced on `H_i`, as a matrix from the generators of the source
/// to those of the target (free generators first, then torsion generators,
/// whose rows are reduced modulo their orders).
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyResult,
    pub target: HomologyResult,
    pub matrix: Matrix,
}

pub fn induced_homology_map(f: &SimplicialMap, i: usize) -> Result<InducedMap, HomologyError> {
    let source = normalized_chain_complex_upto(&f.source, f.bound());
    let target = normalized_chain_complex_upto(&f.target, f.bound());
    let from = HomologyBasis::new(&source, i)?;
    let to = HomologyBasis::new(&target, i)?;
    let map = chain_map(f, &source, &target, i);
    let kept_from = from.kept();
    let kept_to = to.kept().len();
    let mut matrix = Matrix::zeros(kept_to, kept_from.len());
    for (col, &j) in kept_from.iter().enumerate() {
        let image = map.apply(&from.generator(j));
        for (row, v) in to.coordinates(&image).into_iter().enumerate() {
            matrix.data[row][col] = v;
        }
    }
    Ok(InducedMap {
        source: from.result,
        target: to.result,
        matrix,
    })
}

/// The mapping cone of a chain map `f : C → D`: `Cone_n = C_{n-1} ⊕ D_n` with
/// `∂(c, d) = (-∂c, f c + ∂d)`, up to degree `N`.
fn mapping_cone(f: &SimplicialMap, source: &ChainComplex, target: &ChainComplex) -> ChainComplex {
    let bound = source.bound().min(target.bound());
    let size = |n: usize| {
        if n == 0 {
            target.rank(0)
        } else {
            source.rank(n - 1) + target.rank(n)
        }
    };
    let basis = (0..=bound).map(|n| (0..size(n)).collect()).collect();
    let mut boundaries = vec![Matrix::zeros(0, size(0))];
    for n in 1..=bound {
        let mut m = Matrix::zeros(size(n - 1), size(n));
        let c_lo = if n >= 2 { source.rank(n - 2) } else { 0 };
        let c_hi = source.rank(n - 1);
        if n >= 2 {
            let dc = &source.boundaries[n - 1];
            for r in 0..dc.rows {
                for c in 0..dc.cols {
                    m.data[r][c] = -dc.data[r][c].clone();
                }
            }
        }
        let fc = chain_map(f, source, target, n - 1);
        for r in 0..fc.rows {
            for c in 0..fc.cols {
                m.data[c_lo + r][c] = fc.data[r][c].clone();
            }
        }
        let dd = &target.boundaries[n];
        for r in 0..dd.rows {
            for c in 0..dd.cols {
                m.data[c_lo + r][c_hi + c] = dd.data[r][c].clone();
            }
        }
        boundaries.push(m);
    }
    ChainComplex { basis, boundaries }
}

/// Whether `f` induces isomorphisms on `H_0, …, H_k`.
///
/// The cone of `f` has vanishing homology through degree `k` exactly when
/// `f` is an isomorphism below `k` and onto in degree `k`; a surjection
/// between isomorphic finitely generated abelian groups is an isomorphism, so
/// comparing the groups in degree `k` settles the last degree.
pub fn is_homology_iso_upto(f: &SimplicialMap, k: usize) -> Result<bool, HomologyError> {
    let source = normalized_chain_complex_upto(&f.source, f.bound());
    let target = normalized_chain_complex_upto(&f.target, f.bound());
    let cone = mapping_cone(f, &source, &target);
    for n in 0..=k {
        if !homology(&cone, n)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(homology(&source, k)?.same_group(&homology(&target, k)?))
}
