//! Brute-force counts used as oracles for the nerve constructions.

use twocat::category::{CellId, TwoCategory};

/// Number of vertical chains `f^0 ⇒ … ⇒ f^q` in the hom category from `a` to `b`,
/// found by extending sequences of 2-cells one at a time.
pub fn vertical_chains(c: &TwoCategory, a: CellId, b: CellId, q: usize) -> usize {
    let ones = c.hom(a, b);
    if q == 0 {
        return ones.len();
    }
    let twos = c.hom2(a, b);
    let mut frontier: Vec<CellId> = twos.clone();
    for _ in 1..q {
        frontier = frontier
            .iter()
            .flat_map(|&last| {
                twos.iter()
                    .filter(move |&&x| c.src2(x) == c.tgt2(last))
                    .copied()
            })
            .collect();
    }
    frontier.len()
}

/// Every sequence of `len` objects.
pub fn object_tuples(c: &TwoCategory, len: usize) -> Vec<Vec<CellId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..c.object_count()).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Size of the `(p, q)` level of the double nerve.
pub fn grid_count(c: &TwoCategory, p: usize, q: usize) -> usize {
    object_tuples(c, p + 1)
        .iter()
        .map(|t| {
            t.windows(2)
                .map(|w| vertical_chains(c, w[0], w[1], q))
                .product::<usize>()
        })
        .sum()
}

/// Size of level `n` of the explicit codiagonal: column `m` is a vertical
/// chain of length `m - 1`.
pub fn staircase_count(c: &TwoCategory, n: usize) -> usize {
    object_tuples(c, n + 1)
        .iter()
        .map(|t| {
            t.windows(2)
                .enumerate()
                .map(|(m, w)| vertical_chains(c, w[0], w[1], m))
                .product::<usize>()
        })
        .sum()
}

/// Number of composable `p`-chains of 1-cells, by scanning all `p`-tuples.
pub fn composable_chains(c: &TwoCategory, p: usize) -> usize {
    if p == 0 {
        return c.object_count();
    }
    let n = c.one_cell_count();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let mut idx = vec![0usize; p];
    loop {
        if idx.windows(2).all(|w| c.tgt1(w[0]) == c.src1(w[1])) {
            count += 1;
        }
        let mut k = 0;
        while k < p {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == p {
            return count;
        }
    }
}
