//! Exact rational linear-programming feasibility, used as the independent
//! oracle for extreme-point computations and for cone membership tests.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Phase-1 simplex with Bland's rule over exact rationals: decide whether
/// `{x ≥ 0 : A x = b}` is nonempty.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = b.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    // Tableau with artificial variables; minimize their sum.
    // Columns: 0..n original, n..n+m artificial, last = rhs.
    let cols = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<BigRational> = Vec::with_capacity(cols);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for j in 0..m {
            row.push(if i == j { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective row: sum of artificial rows (we minimize Σ artificials, so
    // the reduced objective is -Σ rows expressed in the basis)
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols];
    for row in t.iter() {
        for (j, v) in row.iter().enumerate() {
            obj[j] -= v;
        }
    }
    for j in n..n + m {
        obj[j] = BigRational::zero();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering = lowest-index column with negative reduced cost.
        let entering = (0..n + m).find(|&j| obj[j].is_negative());
        let Some(e) = entering else { break };
        // ratio test, Bland ties by lowest row basis index
        let mut pivot: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for (i, row) in t.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[cols - 1] / &row[e];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[pivot.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    pivot = Some(i);
                }
            }
        }
        let Some(p) = pivot else {
            // unbounded below: cannot happen for a phase-1 objective ≥ -Σb
            break;
        };
        // pivot on (p, e)
        let pv = t[p][e].clone();
        for v in t[p].iter_mut() {
            *v /= &pv;
        }
        for i in 0..m {
            if i != p && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..cols {
                    let v = &t[i][j] - &f * &t[p][j];
                    t[i][j] = v;
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..cols {
                let v = &obj[j] - &f * &t[p][j];
                obj[j] = v;
            }
        }
        basis[p] = e;
    }
    // feasible iff the artificial objective reaches 0
    obj[cols - 1].is_zero()
}

/// Is `point` in the convex hull of `points`? Exact.
pub fn in_convex_hull(points: &[Vec<BigRational>], point: &[BigRational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = point.len();
    // Σ λ_i p_i = point, Σ λ_i = 1, λ ≥ 0
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        a.push(points.iter().map(|p| p[coord].clone()).collect());
    }
    a.push(vec![BigRational::one(); points.len()]);
    let mut b: Vec<BigRational> = point.to_vec();
    b.push(BigRational::one());
    feasible(&a, &b)
}

/// Is `v` in the cone generated by `gens` (nonnegative combinations)? Exact.
pub fn in_cone_hull(gens: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let d = v.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(d);
    for coord in 0..d {
        a.push(
            gens.iter()
                .map(|g| BigRational::from_integer(BigInt::from(g[coord])))
                .collect(),
        );
    }
    let b: Vec<BigRational> =
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn hull_membership() {
        let square = vec![rp(&[0, 0]), rp(&[2, 0]), rp(&[0, 2]), rp(&[2, 2])];
        assert!(in_convex_hull(&square, &rp(&[1, 1])));
        assert!(in_convex_hull(&square, &rp(&[2, 2])));
        assert!(!in_convex_hull(&square, &rp(&[3, 1])));
        assert!(!in_convex_hull(&square, &rp(&[-1, 0])));
    }

    #[test]
    fn cone_membership() {
        let quadrant = vec![vec![1, 0], vec![0, 1]];
        assert!(in_cone_hull(&quadrant, &[3, 5]));
        assert!(in_cone_hull(&quadrant, &[0, 0]));
        assert!(in_cone_hull(&quadrant, &[1, 0]));
        assert!(!in_cone_hull(&quadrant, &[-1, 2]));
        let ray = vec![vec![1, 1]];
        assert!(in_cone_hull(&ray, &[2, 2]));
        assert!(!in_cone_hull(&ray, &[2, 1]));
    }
}
