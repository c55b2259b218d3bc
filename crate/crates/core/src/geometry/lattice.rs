//! Lattice point enumeration in polytopes and half-open parallelepipeds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::Polytope;
use crate::error::{Error, Result};
use crate::field::{big_int, ExactField, Rational};
use crate::linalg::{dot, row_reduce, solve_columns};

/// `base + sum_i [0, extent_i) * vector_i` with linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenRegion<F> {
    base: Vec<F>,
    generators: Vec<(Vec<F>, F)>,
    /// coordinates on which the generator matrix is invertible
    pivots: Vec<usize>,
    /// inverse of the generator matrix restricted to `pivots`
    inverse: Vec<Vec<F>>,
}

impl<F: ExactField> HalfOpenRegion<F> {
    pub fn new(base: Vec<F>, generators: Vec<(Vec<F>, F)>) -> Result<Self> {
        let n = base.len();
        if generators.iter().any(|(v, _)| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: generators
                    .iter()
                    .map(|(v, _)| v.len())
                    .find(|&l| l != n)
                    .unwrap_or(0),
            });
        }
        let vectors: Vec<Vec<F>> = generators.iter().map(|(v, _)| v.clone()).collect();
        let (_, pivots) = row_reduce(vectors.clone());
        if pivots.len() != vectors.len() {
            return Err(Error::InvalidInput(
                "region generators are linearly dependent".into(),
            ));
        }
        let k = vectors.len();
        let columns: Vec<Vec<F>> = vectors
            .iter()
            .map(|v| pivots.iter().map(|&c| v[c].clone()).collect())
            .collect();
        let inverse_columns: Vec<Vec<F>> = (0..k)
            .map(|j| {
                let mut e = vec![F::zero(); k];
                e[j] = F::one();
                solve_columns(&columns, &e).expect("pivot block is invertible")
            })
            .collect();
        let inverse = (0..k)
            .map(|i| inverse_columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(Self {
            base,
            generators,
            pivots,
            inverse,
        })
    }

    pub fn base(&self) -> &[F] {
        &self.base
    }

    pub fn generators(&self) -> &[(Vec<F>, F)] {
        &self.generators
    }

    /// Coefficients `lambda` with `y = base + sum lambda_i v_i`, if `y` lies
    /// in the affine span.
    pub fn coefficients(&self, y: &[F]) -> Option<Vec<F>> {
        let rel: Vec<F> = y
            .iter()
            .zip(&self.base)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let target: Vec<F> = self.pivots.iter().map(|&c| rel[c].clone()).collect();
        let lambda: Vec<F> = self.inverse.iter().map(|row| dot(row, &target)).collect();
        for (j, r) in rel.iter().enumerate() {
            let mut s = F::zero();
            for (l, (v, _)) in lambda.iter().zip(&self.generators) {
                s = s + l.clone() * v[j].clone();
            }
            if s != *r {
                return None;
            }
        }
        Some(lambda)
    }

    pub fn contains(&self, y: &[F]) -> bool {
        match self.coefficients(y) {
            Some(lambda) => lambda
                .iter()
                .zip(&self.generators)
                .all(|(l, (_, ext))| *l >= F::zero() && l < ext),
            None => false,
        }
    }

    /// Integer points `z` with `z - shift` in the region, lexicographically.
    pub fn lattice_points(&self, shift: &[F], cap: usize) -> Result<Vec<Vec<i64>>> {
        let n = self.base.len();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for j in 0..n {
            let mut a = self.base[j].clone() + shift[j].clone();
            let mut b = a.clone();
            for (v, ext) in &self.generators {
                let step = v[j].clone() * ext.clone();
                if step < F::zero() {
                    a = a + step;
                } else {
                    b = b + step;
                }
            }
            lo.push(to_i64(a.ceil_int())?);
            hi.push(to_i64(b.floor_int())?);
        }
        let mut out = Vec::new();
        scan_box(&lo, &hi, cap, |z| {
            let y: Vec<F> = z
                .iter()
                .zip(shift)
                .map(|(&zi, s)| F::from_int(zi) - s.clone())
                .collect();
            if self.contains(&y) {
                out.push(z.to_vec());
            }
        })?;
        Ok(out)
    }
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidInput("coordinate out of range".into()))
}

/// Calls `visit` on every integer point of the box `[lo, hi]` in
/// lexicographic order.
fn scan_box(lo: &[i64], hi: &[i64], cap: usize, mut visit: impl FnMut(&[i64])) -> Result<()> {
    let mut size: u128 = 1;
    for (a, b) in lo.iter().zip(hi) {
        if b < a {
            return Ok(());
        }
        size = size.saturating_mul((b - a + 1) as u128);
    }
    if size > cap as u128 {
        return Err(Error::ResourceLimit {
            what: "lattice box points",
            cap,
        });
    }
    let mut z = lo.to_vec();
    loop {
        visit(&z);
        let mut j = z.len();
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            if z[j] < hi[j] {
                z[j] += 1;
                z[j + 1..].copy_from_slice(&lo[j + 1..]);
                break;
            }
        }
    }
}

pub(super) fn polytope_points<F: ExactField>(
    p: &Polytope<F>,
    t: &F,
    shift: &[F],
    interior: bool,
    cap: usize,
) -> Result<Vec<Vec<i64>>> {
    let n = p.ambient;
    if *t < F::zero() {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let (lo, hi) = bounding_box(p, t, shift)?;
    if let Some(rows) = integer_rows(p, t, shift) {
        let mut out = Vec::new();
        integer_runs(&rows, &lo, &hi, interior, cap, |head, a, b| {
            for k in a..=b {
                let mut z = head.to_vec();
                z.push(k);
                out.push(z);
            }
        })?;
        return Ok(out);
    }
    exact_points(p, t, shift, interior, cap, &lo, &hi)
}

/// Scan in the field itself, for irrational data.
fn exact_points<F: ExactField>(
    p: &Polytope<F>,
    t: &F,
    shift: &[F],
    interior: bool,
    cap: usize,
    lo: &[i64],
    hi: &[i64],
) -> Result<Vec<Vec<i64>>> {
    // constraints on y = z - shift: normal . y <= t * rhs (strict in the interior)
    let last = p.ambient - 1;
    let mut out = Vec::new();
    let head_lo = &lo[..last];
    let head_hi = &hi[..last];
    let mut failure = None;
    scan_box(head_lo, head_hi, cap, |head| {
        if failure.is_some() {
            return;
        }
        // interval for the last coordinate
        let mut lower: Option<F> = None;
        let mut lower_strict = false;
        let mut upper: Option<F> = None;
        let mut upper_strict = false;
        let mut fixed: Option<F> = None;
        let partial = |normal: &[F]| -> F {
            let mut s = F::zero();
            for j in 0..last {
                s = s + normal[j].clone() * (F::from_int(head[j]) - shift[j].clone());
            }
            s
        };
        for e in &p.equations {
            let r = e.rhs.clone() * t.clone() - partial(&e.normal);
            let c = e.normal[last].clone();
            if c.is_zero() {
                if !r.is_zero() {
                    return;
                }
            } else {
                let v = r / c + shift[last].clone();
                match &fixed {
                    Some(f) if *f != v => return,
                    _ => fixed = Some(v),
                }
            }
        }
        for f in &p.facets {
            let r = f.rhs.clone() * t.clone() - partial(&f.normal);
            let c = f.normal[last].clone();
            if c.is_zero() {
                if r < F::zero() || (interior && r.is_zero()) {
                    return;
                }
                continue;
            }
            let bound = r / c.clone() + shift[last].clone();
            if c > F::zero() {
                if upper
                    .as_ref()
                    .is_none_or(|u| bound < *u || (bound == *u && interior))
                {
                    upper = Some(bound);
                    upper_strict = interior;
                }
            } else if lower
                .as_ref()
                .is_none_or(|l| bound > *l || (bound == *l && interior))
            {
                lower = Some(bound);
                lower_strict = interior;
            }
        }
        let ok = |x: &F| {
            lower
                .as_ref()
                .is_none_or(|l| if lower_strict { x > l } else { x >= l })
                && upper
                    .as_ref()
                    .is_none_or(|u| if upper_strict { x < u } else { x <= u })
        };
        let mut push = |k: i64| {
            let mut z = head.to_vec();
            z.push(k);
            out.push(z);
        };
        if let Some(v) = fixed {
            let k = v.floor_int();
            if F::from(big_int(&k)) == v && ok(&v) {
                match k.to_i64() {
                    Some(k) if k >= lo[last] && k <= hi[last] => push(k),
                    Some(_) => {}
                    None => failure = Some(Error::InvalidInput("coordinate out of range".into())),
                }
            }
            return;
        }
        let mut a = lo[last];
        let mut b = hi[last];
        if let Some(l) = &lower {
            let c = l.ceil_int().to_i64().unwrap_or(i64::MAX);
            a = a.max(if lower_strict && F::from_int(c) == *l {
                c + 1
            } else {
                c
            });
        }
        if let Some(u) = &upper {
            let c = u.floor_int().to_i64().unwrap_or(i64::MIN);
            b = b.min(if upper_strict && F::from_int(c) == *u {
                c - 1
            } else {
                c
            });
        }
        for k in a..=b {
            push(k);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(out)
}

/// `a . z <= b` (or `a . z = b` for equations) with integer data.
struct IntRow {
    a: Vec<i128>,
    b: i128,
    equation: bool,
}

/// Constraints `normal . (z - shift) <= rhs * t` cleared of denominators, when
/// everything is rational and fits in `i128`.
fn integer_rows<F: ExactField>(p: &Polytope<F>, t: &F, shift: &[F]) -> Option<Vec<IntRow>> {
    let t = t.as_rational()?;
    let shift: Vec<Rational> = shift.iter().map(F::as_rational).collect::<Option<_>>()?;
    let rows = p
        .equations
        .iter()
        .map(|e| (&e.normal, &e.rhs, true))
        .chain(p.facets.iter().map(|f| (&f.normal, &f.rhs, false)));
    let mut out = Vec::new();
    for (normal, rhs, equation) in rows {
        let a: Vec<Rational> = normal.iter().map(F::as_rational).collect::<Option<_>>()?;
        let mut c = rhs.as_rational()? * &t;
        for (aj, sj) in a.iter().zip(&shift) {
            c += aj * sj;
        }
        let l = a
            .iter()
            .chain(std::iter::once(&c))
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = |x: &Rational| {
            (x * Rational::from_integer(l.clone()))
                .to_integer()
                .to_i128()
        };
        out.push(IntRow {
            a: a.iter().map(scale).collect::<Option<_>>()?,
            b: scale(&c)?,
            equation,
        });
    }
    Some(out)
}

/// Calls `visit(head, a, b)` for every nonempty run `head x [a, b]` of
/// lattice points.
fn integer_runs(
    rows: &[IntRow],
    lo: &[i64],
    hi: &[i64],
    interior: bool,
    cap: usize,
    mut visit: impl FnMut(&[i64], i64, i64),
) -> Result<()> {
    let last = lo.len() - 1;
    let mut overflow = false;
    scan_box(&lo[..last], &hi[..last], cap, |head| {
        let mut a = lo[last] as i128;
        let mut b = hi[last] as i128;
        for row in rows {
            let mut partial: i128 = 0;
            for (x, &h) in row.a.iter().zip(head) {
                match x
                    .checked_mul(h as i128)
                    .and_then(|v| partial.checked_add(v))
                {
                    Some(v) => partial = v,
                    None => {
                        overflow = true;
                        return;
                    }
                }
            }
            let Some(r) = row.b.checked_sub(partial) else {
                overflow = true;
                return;
            };
            let c = row.a[last];
            // c * z_last <= r, < r in the interior, = r for equations
            if row.equation {
                if c == 0 {
                    if r != 0 {
                        return;
                    }
                } else {
                    if r % c != 0 {
                        return;
                    }
                    a = a.max(r / c);
                    b = b.min(r / c);
                }
                continue;
            }
            let r = if interior { r - 1 } else { r };
            match c.signum() {
                0 if r < 0 => return,
                0 => {}
                1 => b = b.min(Integer::div_floor(&r, &c)),
                _ => a = a.max(Integer::div_ceil(&r, &c)),
            }
        }
        if a <= b {
            visit(head, a as i64, b as i64);
        }
    })?;
    if overflow {
        return Err(Error::InvalidInput("lattice scan overflowed".into()));
    }
    Ok(())
}

fn bounding_box<F: ExactField>(
    p: &Polytope<F>,
    t: &F,
    shift: &[F],
) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut lo = Vec::with_capacity(p.ambient);
    let mut hi = Vec::with_capacity(p.ambient);
    for j in 0..p.ambient {
        let coords = p
            .vertices
            .iter()
            .map(|v| v[j].clone() * t.clone() + shift[j].clone());
        let min = coords.clone().min().expect("nonempty polytope");
        let max = coords.max().expect("nonempty polytope");
        lo.push(to_i64(min.ceil_int())?);
        hi.push(to_i64(max.floor_int())?);
    }
    Ok((lo, hi))
}

/// Number of points [`polytope_points`] would return.
pub(super) fn polytope_point_count<F: ExactField>(
    p: &Polytope<F>,
    t: &F,
    shift: &[F],
    interior: bool,
    cap: usize,
) -> Result<u64> {
    if *t < F::zero() {
        return Ok(0);
    }
    if p.ambient == 0 {
        return Ok(1);
    }
    if let Some(rows) = integer_rows(p, t, shift) {
        let (lo, hi) = bounding_box(p, t, shift)?;
        let mut count = 0u64;
        integer_runs(&rows, &lo, &hi, interior, cap, |_, a, b| {
            count += (b - a + 1) as u64;
        })?;
        return Ok(count);
    }
    Ok(polytope_points(p, t, shift, interior, cap)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat, Rational};
    use crate::geometry::convex_hull;

    #[test]
    fn integer_scan_matches_exact_scan() {
        let pts = |v: &[[i64; 3]]| -> Vec<Vec<Rational>> {
            v.iter()
                .map(|p| vec![rat(p[0], 3), rat(p[1], 2), int(p[2])])
                .collect()
        };
        let polytopes = [
            convex_hull(
                &pts(&[[-7, 3, 0], [5, -4, 1], [2, 5, -2], [0, 0, 3]]),
                false,
            )
            .unwrap(),
            // a triangle inside the plane z = 1
            convex_hull(&pts(&[[-6, -3, 1], [9, 0, 1], [0, 5, 1]]), false).unwrap(),
        ];
        let shifts = [
            vec![int(0), int(0), int(0)],
            vec![rat(1, 2), rat(-1, 3), int(0)],
        ];
        for p in &polytopes {
            for shift in &shifts {
                for t in [int(0), rat(1, 2), int(1), rat(7, 3), int(4)] {
                    let (lo, hi) = bounding_box(p, &t, shift).unwrap();
                    for interior in [false, true] {
                        let fast = polytope_points(p, &t, shift, interior, 1 << 20).unwrap();
                        let exact =
                            exact_points(p, &t, shift, interior, 1 << 20, &lo, &hi).unwrap();
                        assert_eq!(fast, exact);
                        let count = polytope_point_count(p, &t, shift, interior, 1 << 20).unwrap();
                        assert_eq!(count, fast.len() as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn half_open_box() {
        let r = HalfOpenRegion::new(
            vec![int(0), int(0)],
            vec![
                (vec![int(1), int(0)], int(2)),
                (vec![int(0), int(1)], int(2)),
            ],
        )
        .unwrap();
        let pts = r.lattice_points(&[int(0), int(0)], 1000).unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn region_in_a_line() {
        // [0, 4) * (1/2, 1/2) inside R^2: points (0,0) and (1,1)
        let r = HalfOpenRegion::new(
            vec![int(0), int(0)],
            vec![(vec![rat(1, 2), rat(1, 2)], int(4))],
        )
        .unwrap();
        assert!(r.contains(&[rat(3, 2), rat(3, 2)]));
        assert!(!r.contains(&[int(2), int(2)]));
        assert!(!r.contains(&[int(1), int(0)]));
        let pts = r.lattice_points(&[int(0), int(0)], 1000).unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 1]]);
        let shifted = r.lattice_points(&[rat(1, 2), rat(1, 2)], 1000).unwrap();
        assert_eq!(shifted, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn dependent_generators_rejected() {
        let r: Result<HalfOpenRegion<Rational>> = HalfOpenRegion::new(
            vec![int(0), int(0)],
            vec![
                (vec![int(1), int(1)], int(1)),
                (vec![int(2), int(2)], int(1)),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn segment_in_the_plane() {
        let seg = convex_hull(&[vec![int(0), int(0)], vec![int(2), int(1)]], false).unwrap();
        let zero = [int(0), int(0)];
        assert_eq!(
            seg.lattice_points(&int(2), &zero, false, 1000).unwrap(),
            vec![vec![0, 0], vec![2, 1], vec![4, 2]]
        );
        assert_eq!(
            seg.lattice_points(&int(2), &zero, true, 1000).unwrap(),
            vec![vec![2, 1]]
        );
        assert!(seg
            .lattice_points(&int(-1), &zero, false, 1000)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn dilation_zero_is_the_shift() {
        let sq = convex_hull(
            &[
                vec![int(-1), int(-1)],
                vec![int(1), int(1)],
                vec![int(-1), int(1)],
                vec![int(1), int(-1)],
            ],
            false,
        )
        .unwrap();
        assert_eq!(
            sq.lattice_points(&int(0), &[int(1), int(2)], false, 100)
                .unwrap(),
            vec![vec![1, 2]]
        );
        assert!(sq
            .lattice_points(&int(0), &[int(0), int(0)], true, 100)
            .unwrap()
            .is_empty());
        assert!(sq
            .lattice_points(&int(0), &[rat(1, 2), int(0)], false, 100)
            .unwrap()
            .is_empty());
    }
}
