//! Integer vectors in `Z^d` and small helpers used throughout the crate.

use alloc::vec::Vec;

/// A point of `Z^d`. Points are ordered lexicographically, which gives every
/// set of points a canonical enumeration order.
pub type Point = Vec<i64>;

pub fn add(a: &[i64], b: &[i64]) -> Point {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn zero(d: usize) -> Point {
    alloc::vec![0; d]
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Squared Euclidean norm as an exact integer.
pub fn norm_sq(a: &[i64]) -> i128 {
    dot(a, a)
}

/// Reduce a nonzero integer vector to its primitive representative (divide by
/// the gcd of the entries, keeping orientation).
pub fn primitive(a: &[i64]) -> Point {
    let mut g: i64 = 0;
    for &x in a {
        g = gcd(g, x.abs());
    }
    if g <= 1 {
        return a.to_vec();
    }
    a.iter().map(|x| x / g).collect()
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All points of `B(0, r) ∩ Z^d` for the Euclidean ball of (squared) radius
/// `r_sq`, in lexicographic order.
pub fn ball(d: usize, r_sq: i128) -> Vec<Point> {
    let r = isqrt(r_sq.max(0)) as i64;
    let mut out = Vec::new();
    let mut cur = alloc::vec![-r; d];
    loop {
        if norm_sq(&cur) <= r_sq {
            out.push(cur.clone());
        }
        // odometer-style increment over the box [-r, r]^d
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -r;
                }
                break;
            }
        }
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Minkowski sum of two point sets, deduplicated and sorted.
pub fn minkowski(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut set = alloc::collections::BTreeSet::new();
    for p in a {
        for q in b {
            set.insert(add(p, q));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ball_radius_one() {
        let b = ball(2, 1);
        assert_eq!(b.len(), 5); // origin and the four unit vectors
        assert!(b.contains(&vec![0, 0]));
        assert!(b.contains(&vec![-1, 0]));
    }

    #[test]
    fn primitive_reduces_gcd() {
        assert_eq!(primitive(&[4, -6]), vec![2, -3]);
        assert_eq!(primitive(&[0, 5]), vec![0, 1]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000i128 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
