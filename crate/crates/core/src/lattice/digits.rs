use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::matrix::IntMatrix;
use crate::point::{sub, Point};

/// The unique expression `n = L·quotient + F[digit]` of a point over a
/// fundamental domain `F` of `L(Z^d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitDecomposition {
    pub quotient: Point,
    pub digit: usize,
}

/// Canonical representatives of `Z^d / L(Z^d)`: the integer points of the
/// half-open box `L([0,1)^d)`, in lexicographic order.
pub fn coset_representatives(l: &IntMatrix) -> Result<Vec<Point>> {
    let det = l.det();
    if det == 0 {
        return Err(Error::invalid("coset enumeration requires a nonsingular matrix"));
    }
    let d = l.dim();
    let adj = adjugate(l)?;
    // Bounding box of the zonotope L([0,1]^d) from its corners.
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for mask in 0..(1u32 << d) {
        let corner: Point = (0..d)
            .map(|i| (0..d).filter(|&j| mask >> j & 1 == 1).map(|j| l.at(i, j)).sum())
            .collect();
        for i in 0..d {
            lo[i] = lo[i].min(corner[i]);
            hi[i] = hi[i].max(corner[i]);
        }
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'scan: loop {
        // t = L^{-1} cur = adj·cur / det must lie in [0,1)^d
        let inside = (0..d).all(|i| {
            let t: i128 = (0..d).map(|k| adj.at(i, k) as i128 * cur[k] as i128).sum();
            in_unit_interval(t, det)
        });
        if inside {
            out.push(cur.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                break 'scan;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for k in i + 1..d {
                    cur[k] = lo[k];
                }
                break;
            }
        }
    }
    if out.len() as i128 != det.abs() {
        return Err(Error::internal("coset representative count does not match |det|"));
    }
    Ok(out)
}

/// `0 ≤ t/det < 1` for exact integers.
fn in_unit_interval(t: i128, det: i128) -> bool {
    if det > 0 {
        0 <= t && t < det
    } else {
        det < t && t <= 0
    }
}

/// `det · L^{-1}` as an integer matrix.
fn adjugate(l: &IntMatrix) -> Result<IntMatrix> {
    let inv = l.inverse().ok_or_else(|| Error::invalid("singular matrix"))?;
    let det = l.det();
    let d = l.dim();
    let mut e = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let v = inv.at(i, j) * num_rational::BigRational::from_integer(det.into());
            debug_assert!(v.is_integer());
            e.push(
                i64::try_from(v.to_integer())
                    .map_err(|_| Error::invalid("adjugate entry overflow"))?,
            );
        }
    }
    IntMatrix::new(d, e)
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a % b;
    if r != 0 && ((r < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// True iff `F` is a fundamental domain of `L(Z^d)` containing the origin:
/// `|F| = |det L|`, residues pairwise distinct, `0 ∈ F`.
pub fn is_fundamental_domain(f: &[Point], l: &IntMatrix) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::invalid("empty candidate fundamental domain"));
    }
    let det = l.det();
    if det == 0 {
        return Err(Error::invalid("singular matrix"));
    }
    if f.len() as i128 != det.abs() {
        return Ok(false);
    }
    if !f.iter().any(|p| p.iter().all(|&x| x == 0)) {
        return Ok(false);
    }
    let adj = adjugate(l)?;
    let det_i64 = i64::try_from(det).map_err(|_| Error::invalid("determinant overflow"))?;
    let mut seen = alloc::collections::BTreeSet::new();
    for p in f {
        if !seen.insert(residue_of(l, &adj, det_i64, p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical residue representative of `n` modulo `L(Z^d)`:
/// `n - L·floor(L^{-1} n)`.
fn residue_of(l: &IntMatrix, adj: &IntMatrix, det: i64, n: &[i64]) -> Point {
    let d = l.dim();
    let q: Point = (0..d)
        .map(|i| {
            let t: i128 = (0..d).map(|k| adj.at(i, k) as i128 * n[k] as i128).sum();
            i64::try_from(floor_div(t, det as i128)).expect("quotient overflow")
        })
        .collect();
    sub(n, &l.mul_vec(&q))
}

/// Precomputed digit system for a substitution support: decomposes any point
/// of `Z^d` as `L·q + F[digit]` in pure integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSystem {
    l: IntMatrix,
    adj: IntMatrix,
    det: i64,
    support: Vec<Point>,
    digit_of_residue: BTreeMap<Point, usize>,
}

impl DigitSystem {
    pub fn new(l: &IntMatrix, support: &[Point]) -> Result<Self> {
        if !is_fundamental_domain(support, l)? {
            return Err(Error::invalid("support is not a fundamental domain containing 0"));
        }
        let adj = adjugate(l)?;
        let det = i64::try_from(l.det()).map_err(|_| Error::invalid("determinant overflow"))?;
        let mut digit_of_residue = BTreeMap::new();
        for (i, p) in support.iter().enumerate() {
            digit_of_residue.insert(residue_of(l, &adj, det, p), i);
        }
        Ok(DigitSystem { l: l.clone(), adj, det, support: support.to_vec(), digit_of_residue })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.l
    }

    pub fn support(&self) -> &[Point] {
        &self.support
    }

    pub fn decompose(&self, n: &[i64]) -> DigitDecomposition {
        let res = residue_of(&self.l, &self.adj, self.det, n);
        let digit = *self
            .digit_of_residue
            .get(&res)
            .expect("fundamental domain covers every residue");
        let f = &self.support[digit];
        let d = self.l.dim();
        let quotient: Point = (0..d)
            .map(|i| {
                let t: i128 =
                    (0..d).map(|k| self.adj.at(i, k) as i128 * (n[k] - f[k]) as i128).sum();
                debug_assert_eq!(t % self.det as i128, 0);
                i64::try_from(t / self.det as i128).expect("quotient overflow")
            })
            .collect();
        DigitDecomposition { quotient, digit }
    }

    /// The digit map `n ↦ quotient(n)`.
    pub fn quotient(&self, n: &[i64]) -> Point {
        self.decompose(n).quotient
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::add;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
        IntMatrix::new(2, vec![a, b, c, d]).unwrap()
    }

    #[test]
    fn cosets_of_doubling() {
        let reps = coset_representatives(&m2(2, 0, 0, 2)).unwrap();
        assert_eq!(reps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn cosets_of_twin_dragon() {
        let reps = coset_representatives(&m2(1, -1, 1, 1)).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps.contains(&vec![0, 0]));
    }

    #[test]
    fn cosets_of_non_triangular() {
        let reps = coset_representatives(&m2(2, 0, -1, 3)).unwrap();
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn cosets_of_negative_det() {
        let m = m2(0, 1, 1, 0); // det -1
        let reps = coset_representatives(&m).unwrap();
        assert_eq!(reps, vec![vec![0, 0]]);
    }

    #[test]
    fn fundamental_domain_checks() {
        let l = m2(2, 0, 0, 2);
        let unit_box = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert!(is_fundamental_domain(&unit_box, &l).unwrap());
        // (0,0) ≡ (2,0) mod 2Z².
        let bad = vec![vec![0, 0], vec![2, 0], vec![0, 1], vec![1, 1]];
        assert!(!is_fundamental_domain(&bad, &l).unwrap());
        // Missing the origin.
        let shifted = vec![vec![1, 0], vec![2, 0], vec![1, 1], vec![2, 1]];
        assert!(!is_fundamental_domain(&shifted, &l).unwrap());
        assert!(is_fundamental_domain(&[], &l).is_err());
    }

    #[test]
    fn nonpolytope_example_domain() {
        let l = m2(2, 0, 0, 3);
        let f = vec![
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![1, 0],
            vec![1, 2],
            vec![1, -2],
        ];
        assert!(is_fundamental_domain(&f, &l).unwrap());
    }

    #[test]
    fn decompose_roundtrip() {
        let l = m2(1, -1, 1, 1);
        let f = vec![vec![0, 0], vec![1, 0]];
        let sys = DigitSystem::new(&l, &f).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                let n = vec![x, y];
                let dd = sys.decompose(&n);
                let rec = add(&l.mul_vec(&dd.quotient), &f[dd.digit]);
                assert_eq!(rec, n);
            }
        }
    }

    #[test]
    fn decompose_negative_box() {
        let l = m2(2, 0, 0, 2);
        let f = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let sys = DigitSystem::new(&l, &f).unwrap();
        let dd = sys.decompose(&[-1, -1]);
        assert_eq!(dd.quotient, vec![-1, -1]);
        assert_eq!(f[dd.digit], vec![1, 1]);
    }

    #[test]
    fn one_dimensional_decompose() {
        let l = IntMatrix::new(1, vec![2]).unwrap();
        let f = vec![vec![0], vec![1]];
        let sys = DigitSystem::new(&l, &f).unwrap();
        let dd = sys.decompose(&[5]);
        assert_eq!(dd.quotient, vec![2]);
        assert_eq!(dd.digit, 1);
    }
}
