#![allow(dead_code)]

use depthposet::complex::{Filter, LefschetzComplex};
use depthposet::oracle::{random_filtered_complex, sweep_instance, InstanceShape};
use depthposet::OrderedBoundaryMatrix;

/// Rank over GF(2) by plain Gaussian elimination on a dense copy.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the lower-left minor: rows `s..n`, columns `0..=t`.
pub fn dense_minor_rank(m: &OrderedBoundaryMatrix, s: usize, t: usize) -> usize {
    let n = m.size();
    if s >= n {
        return 0;
    }
    let rows = (s..n).map(|i| (0..=t).map(|j| m.get(i, j)).collect()).collect();
    dense_rank(rows)
}

/// Birth-death test straight from the four minor ranks.
pub fn dense_is_pair(m: &OrderedBoundaryMatrix, s: usize, t: usize) -> bool {
    let r = |a: usize, b: Option<usize>| b.map_or(0, |b| dense_minor_rank(m, a, b));
    let value = r(s, Some(t)) as i64 - r(s, t.checked_sub(1)) as i64 - r(s + 1, Some(t)) as i64
        + r(s + 1, t.checked_sub(1)) as i64;
    value > 0
}

/// Mod-2 boundary of a set of cells, as a sorted list.
pub fn boundary(complex: &LefschetzComplex, cells: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut parity = vec![false; complex.len()];
    for c in cells {
        for &f in complex.facets(c) {
            parity[f] ^= true;
        }
    }
    (0..complex.len()).filter(|&i| parity[i]).collect()
}

/// A random instance of moderate size; mixes flag complexes with quotients.
pub fn instance(seed: u64, max_bd: usize) -> (LefschetzComplex, Filter) {
    sweep_instance(seed, max_bd, InstanceShape::default())
}

/// A random flag complex with at most `max_cells` cells.
pub fn small_complex(seed: u64, max_cells: usize) -> (LefschetzComplex, Filter) {
    let mut s = seed;
    loop {
        let n = 3 + (s % 4) as usize;
        let dim = 1 + (s / 4 % 2) as usize;
        let density = 0.4 + 0.1 * (s / 8 % 6) as f64;
        let (c, f) = random_filtered_complex(s, n, dim, density).expect("valid parameters");
        if c.len() <= max_cells {
            return (c, f);
        }
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    }
}

/// Some solution of `sum λ_j columns[j] = target` over GF(2), if any.
pub fn dense_solve(columns: &[Vec<bool>], target: &[bool]) -> Option<Vec<bool>> {
    let k = columns.len();
    let n = target.len();
    // Augmented rows: n equations over k unknowns plus the right-hand side.
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|i| columns.iter().map(|c| c[i]).chain(std::iter::once(target[i])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..n {
            if i != r && rows[i][col] {
                let pivot = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[k]) {
        return None;
    }
    let mut solution = vec![false; k];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rows[i][k];
    }
    Some(solution)
}
