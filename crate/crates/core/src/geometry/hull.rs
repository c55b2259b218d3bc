//! Facet enumeration by the double description method.
//!
//! For points `p_i` spanning `R^n`, the facets of their convex hull are the
//! extreme rays of the cone `{(a, b) : b - a.p_i >= 0}` in `R^(n+1)`.

use crate::field::ExactField;
use crate::linalg::{dot, rank, solve_columns};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray<F> {
    coords: Vec<F>,
    zeros: Bits,
}

/// Scales a nonzero vector so its first nonzero entry is `+1` or `-1`.
fn normalize<F: ExactField>(v: Vec<F>) -> Vec<F> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return v;
    };
    let scale = if lead < F::zero() { -lead } else { lead };
    v.into_iter().map(|x| x / scale.clone()).collect()
}

/// Facet inequalities `(a, b)` with `a.x <= b` of the hull of `points`, which
/// must affinely span `R^n` and be pairwise distinct.
pub(crate) fn facets_full_dimensional<F: ExactField>(points: &[Vec<F>]) -> Vec<(Vec<F>, F)> {
    let n = points[0].len();
    let d = n + 1;
    let constraint = |p: &Vec<F>| -> Vec<F> {
        let mut row: Vec<F> = p.iter().map(|x| -x.clone()).collect();
        row.push(F::one());
        row
    };
    let rows: Vec<Vec<F>> = points.iter().map(constraint).collect();

    // initial simplex: greedily pick d rows of full rank
    let mut initial: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<F>> = initial.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial) == trial.len() {
            initial.push(i);
            if initial.len() == d {
                break;
            }
        }
    }
    assert_eq!(initial.len(), d, "points do not span the ambient space");

    let columns: Vec<Vec<F>> = (0..d)
        .map(|k| initial.iter().map(|&i| rows[i][k].clone()).collect())
        .collect();
    let mut rays: Vec<Ray<F>> = (0..d)
        .map(|j| {
            let mut unit = vec![F::zero(); d];
            unit[j] = F::one();
            let coords = solve_columns(&columns, &unit).expect("invertible initial block");
            let mut zeros = Bits::new(rows.len());
            for (k, &i) in initial.iter().enumerate() {
                if k != j {
                    zeros.set(i);
                }
            }
            Ray {
                coords: normalize(coords),
                zeros,
            }
        })
        .collect();

    for i in (0..rows.len()).filter(|i| !initial.contains(i)) {
        let values: Vec<F> = rays.iter().map(|r| dot(&rows[i], &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k] > F::zero()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k] < F::zero()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let common = rays[p].zeros.and(&rays[m].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != m && common.is_subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let coords: Vec<F> = rays[m]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(rm, rp)| values[p].clone() * rm.clone() - values[m].clone() * rp.clone())
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                created.push(Ray {
                    coords: normalize(coords),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray<F>> = Vec::new();
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k] < F::zero() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
    }

    rays.into_iter()
        .map(|r| {
            let mut a = r.coords;
            let b = a.pop().expect("ray has n+1 coordinates");
            (a, b)
        })
        .collect()
}
