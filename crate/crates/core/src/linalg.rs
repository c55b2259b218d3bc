//! Exact linear algebra over an [`ExactField`] and over the integers.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::ExactField;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn row_reduce<F: ExactField>(mut rows: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let delta = factor.clone() * rows[r][j].clone();
                    rows[i][j] = rows[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: ExactField>(rows: &[Vec<F>]) -> usize {
    row_reduce(rows.to_vec()).1.len()
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace<F: ExactField>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (reduced, pivots) = row_reduce(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `sum_j coeff_j * columns[j] = target`. Returns `None` when the
/// system is inconsistent. Columns must be linearly independent for the
/// solution to be unique.
pub fn solve_columns<F: ExactField>(columns: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let k = columns.len();
    let rows: Vec<Vec<F>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<F> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = row_reduce(rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![F::zero(); k];
    for (row, &p) in reduced.iter().zip(&pivots) {
        out[p] = row[k].clone();
    }
    Some(out)
}

pub fn determinant<F: ExactField>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone() / pivot.clone();
            for j in c..n {
                let delta = factor.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
    }
    det
}

pub fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Nonzero invariant factors of an integer matrix (Smith normal form
/// diagonal), in divisibility order.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// True when the integer vectors generate `Z^n` as a group.
pub fn generates_full_lattice(vectors: &[Vec<i64>], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let m: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if m.is_empty() {
        return false;
    }
    let inv = smith_invariants(&m);
    inv.len() == n && inv.iter().all(|d| *d == BigInt::from(1))
}
