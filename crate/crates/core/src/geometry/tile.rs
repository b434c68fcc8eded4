use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::hull::{convex_hull, extreme_count_2d, extreme_points, int_to_rat_point, Polytope, RatPoint};
use crate::lattice::numeric::integer_eigenvalues;
use crate::lattice::IntMatrix;
use crate::point::{primitive, Point};
use crate::substitution::Substitution;

/// Outcome of the polytope stabilization test: the convex hull of the digit
/// tile is a polytope iff `|Ext(conv F_n)| = |Ext(conv F_{n+1})|` for some
/// `n`; failure to stabilize within the budget is inconclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeStatus {
    /// Stabilized at `level` (the least `n` with equal counts), with the
    /// stable number of extreme points.
    Polytope { level: u32, extreme_count: usize },
    /// No stabilization within the budget; the counts per level are reported.
    Unknown { counts: Vec<usize> },
}

/// Extreme-point counts of `conv(F_n)` for `n = 1..=n_max` (2-D fast path;
/// exact feasibility oracle otherwise).
pub fn extreme_counts(sub: &Substitution, n_max: u32, cell_cap: u64) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let f_n = sub.support_level(n, cell_cap)?;
        let count = if sub.dim() == 2 {
            extreme_count_2d(&f_n)
        } else {
            extreme_points(&f_n).len()
        };
        out.push(count);
    }
    Ok(out)
}

/// The stabilization test. For `L = λ·Id` the criterion holds without
/// iterating, at level 1.
pub fn polytope_test(sub: &Substitution, n_max: u32, cell_cap: u64) -> Result<PolytopeStatus> {
    if n_max < 2 {
        return Err(Error::invalid("polytope test needs n_max ≥ 2"));
    }
    if is_positive_scalar(sub.matrix()) {
        let count = extreme_points(sub.support()).len();
        return Ok(PolytopeStatus::Polytope { level: 1, extreme_count: count });
    }
    let counts = extreme_counts(sub, n_max, cell_cap)?;
    for n in 1..counts.len() {
        if counts[n] == counts[n - 1] {
            return Ok(PolytopeStatus::Polytope {
                level: n as u32,
                extreme_count: counts[n],
            });
        }
    }
    Ok(PolytopeStatus::Unknown { counts })
}

fn is_positive_scalar(l: &IntMatrix) -> bool {
    let d = l.dim();
    let lambda = l.at(0, 0);
    if lambda <= 1 {
        return false;
    }
    (0..d).all(|i| (0..d).all(|j| l.at(i, j) == if i == j { lambda } else { 0 }))
}

/// The convex hull of the digit tile, `conv(T) = (L^m - id)^{-1} conv(F_m)`
/// at `m = level + 1`, with exact rational vertices.
pub fn digit_tile_hull(sub: &Substitution, level: u32, cell_cap: u64) -> Result<Polytope> {
    let m = level + 1;
    let f_m = sub.support_level(m, cell_cap)?;
    let ext: Vec<Point> = extreme_points(&f_m).into_iter().collect();
    let lm = sub.matrix().pow(m);
    let id = IntMatrix::identity(sub.dim());
    let shifted = lm.sub(&id);
    let inv = shifted
        .inverse()
        .ok_or_else(|| Error::internal("L^m - id singular for an expansion"))?;
    let verts: Vec<RatPoint> = ext.iter().map(|p| inv.mul_int_vec(p)).collect();
    convex_hull(&verts)
}

/// The level-`n` approximation of the digit tile: the exact rational point
/// cloud `L^{-n}(F_n)`.
#[derive(Debug, Clone)]
pub struct TileApproximation {
    pub level: u32,
    pub points: Vec<RatPoint>,
}

pub fn tile_points(sub: &Substitution, n: u32, cell_cap: u64) -> Result<TileApproximation> {
    if n == 0 {
        return Ok(TileApproximation {
            level: 0,
            points: vec![int_to_rat_point(&crate::point::zero(sub.dim()))],
        });
    }
    let f_n = sub.support_level(n, cell_cap)?;
    let inv = sub
        .matrix()
        .pow(n)
        .inverse()
        .ok_or_else(|| Error::internal("expansion matrix is invertible"))?;
    let points: Vec<RatPoint> = f_n.iter().map(|p| inv.mul_int_vec(p)).collect();
    Ok(TileApproximation { level: n, points })
}

/// Per-facet eigenvector check on `conv(F₁)`: for each primitive inward
/// facet normal `u`, the least `k ≤ k_max` with `(L^T)^k u ∥ u`, plus the
/// integer eigenvalues of `L` (rational-root extraction from the
/// characteristic polynomial).
#[derive(Debug, Clone)]
pub struct FacetEigenReport {
    /// (facet normal, least stabilizing power if any)
    pub facets: Vec<(Point, Option<u32>)>,
    pub integer_eigenvalues: Vec<i64>,
    pub all_stabilize: bool,
}

pub fn facet_normal_eigencheck(sub: &Substitution, k_max: u32) -> Result<FacetEigenReport> {
    let pts: Vec<RatPoint> = sub.support().iter().map(|p| int_to_rat_point(p)).collect();
    let hull = convex_hull(&pts)?;
    if hull.affine_dim != sub.dim() {
        return Err(Error::invalid(
            "conv(F₁) is degenerate; replace the substitution by a power",
        ));
    }
    let lt = sub.matrix().transpose();
    let mut facets = Vec::new();
    let mut all = true;
    for f in hull.facets() {
        let u = f.normal.clone().expect("full-dim facets carry normals");
        let mut found = None;
        let mut v = u.clone();
        for k in 1..=k_max {
            v = lt.mul_vec(&v);
            if primitive(&v) == u || primitive(&crate::point::neg(&v)) == u {
                found = Some(k);
                break;
            }
        }
        if found.is_none() {
            all = false;
        }
        facets.push((u, found));
    }
    Ok(FacetEigenReport {
        facets,
        integer_eigenvalues: integer_eigenvalues(sub.matrix()),
        all_stabilize: all,
    })
}

pub fn vertex_set(p: &Polytope) -> Vec<RatPoint> {
    let mut v = p.vertices.clone();
    v.sort();
    v
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::test_subs::*;

    const CAP: u64 = 1 << 24;

    #[test]
    fn scalar_expansion_short_circuits() {
        let s = tm2d();
        match polytope_test(&s, 4, CAP).unwrap() {
            PolytopeStatus::Polytope { level, extreme_count } => {
                assert_eq!(level, 1);
                assert_eq!(extreme_count, 4);
            }
            other => panic!("expected polytope, got {other:?}"),
        }
    }

    #[test]
    fn nonpolytope_example_counts_grow() {
        // |Ext(conv F_n)| = n + 3 for the L = diag(2,3) example.
        let s = nonpoly_example();
        let counts = extreme_counts(&s, 6, CAP).unwrap();
        assert_eq!(counts, vec![4, 5, 6, 7, 8, 9]);
        match polytope_test(&s, 6, CAP).unwrap() {
            PolytopeStatus::Unknown { counts } => {
                assert_eq!(counts, vec![4, 5, 6, 7, 8, 9]);
            }
            other => panic!("expected unknown, got {other:?}"),
        }
    }

    #[test]
    fn non_self_similar_example_stabilizes() {
        let s = nonselfsim_example();
        match polytope_test(&s, 6, CAP).unwrap() {
            PolytopeStatus::Polytope { level, extreme_count } => {
                assert_eq!(level, 1);
                assert_eq!(extreme_count, 4);
            }
            other => panic!("expected polytope, got {other:?}"),
        }
        let hull = digit_tile_hull(&s, 1, CAP).unwrap();
        let mut got = vertex_set(&hull);
        got.sort();
        let mut expect: Vec<RatPoint> = vec![
            vec![rat(1, 1), rat(1, 2)],
            vec![rat(1, 1), rat(3, 2)],
            vec![rat(-2, 1), rat(-3, 2)],
            vec![rat(-2, 1), rat(-5, 2)],
        ];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn gasket_hull_is_triangle() {
        // L = 2·Id with the gasket support: conv(T) = (2-1)^{-1} conv(F₁).
        let s = gasket_example();
        match polytope_test(&s, 4, CAP).unwrap() {
            PolytopeStatus::Polytope { level, .. } => {
                let hull = digit_tile_hull(&s, level, CAP).unwrap();
                let mut got = vertex_set(&hull);
                got.sort();
                let mut expect: Vec<RatPoint> = vec![
                    vec![rat(1, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1)],
                    vec![rat(-1, 1), rat(-1, 1)],
                ];
                expect.sort();
                assert_eq!(got, expect);
            }
            other => panic!("expected polytope, got {other:?}"),
        }
    }

    #[test]
    fn tile_cloud_recurrence() {
        // cloud_{n+1} = L^{-1}(cloud_n + F₁) exactly.
        let s = twin_dragon();
        let t2 = tile_points(&s, 2, CAP).unwrap();
        let t3 = tile_points(&s, 3, CAP).unwrap();
        let inv = s.matrix().inverse().unwrap();
        let mut grown: Vec<RatPoint> = Vec::new();
        for p in &t2.points {
            for f in s.support() {
                let shifted: RatPoint = p
                    .iter()
                    .zip(f)
                    .map(|(x, &k)| x + BigRational::from_integer(BigInt::from(k)))
                    .collect();
                grown.push(inv.mul_rat_vec(&shifted));
            }
        }
        grown.sort();
        let mut t3s = t3.points.clone();
        t3s.sort();
        assert_eq!(grown, t3s);
        assert_eq!(t3.points.len(), 8);
    }

    #[test]
    fn tile_level_zero_is_origin() {
        let s = twin_dragon();
        let t = tile_points(&s, 0, CAP).unwrap();
        assert_eq!(t.points.len(), 1);
        assert!(t.points[0].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn facet_normals_of_non_self_similar_are_eigenvectors() {
        let s = nonselfsim_example();
        let rep = facet_normal_eigencheck(&s, 4).unwrap();
        assert!(rep.all_stabilize);
        assert_eq!(rep.integer_eigenvalues, vec![2, 3]);
        // normals proportional to (-1,1) and (1,0) are eigenvectors of L^T
        for (u, k) in &rep.facets {
            assert!(k.is_some(), "facet normal {u:?} must stabilize");
        }
        let normals: Vec<Point> = rep.facets.iter().map(|(u, _)| u.clone()).collect();
        assert!(normals.contains(&vec![1, 0]) || normals.contains(&vec![-1, 0]));
        assert!(normals.contains(&vec![1, -1]) || normals.contains(&vec![-1, 1]));
    }

    #[test]
    fn scalar_matrix_stabilizes_every_normal_at_one() {
        let s = tm2d();
        let rep = facet_normal_eigencheck(&s, 3).unwrap();
        assert!(rep.all_stabilize);
        assert!(rep.facets.iter().all(|(_, k)| *k == Some(1)));
        assert_eq!(rep.integer_eigenvalues, vec![2]);
    }

    #[test]
    fn nonpolytope_normals_never_stabilize_fully() {
        // Some facet normal of conv(F_n) is not an eigenvector of any power
        // (L^T)^k, k ≤ 8: check on the level-2 support of the nonpolytope
        // example by building a power substitution.
        let s = nonpoly_example().power(2, CAP).unwrap();
        let rep = facet_normal_eigencheck(&s, 8).unwrap();
        assert!(!rep.all_stabilize);
    }

    #[cfg(test)]
    pub fn nonpoly_example() -> Substitution {
        let l = IntMatrix::new(2, vec![2, 0, 0, 3]).unwrap();
        let f = vec![
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![1, 0],
            vec![1, 2],
            vec![1, -2],
        ];
        Substitution::new(
            vec!["a".into()],
            l,
            f,
            vec![vec![0, 0, 0, 0, 0, 0]],
            false,
        )
        .unwrap()
    }

    #[cfg(test)]
    pub fn nonselfsim_example() -> Substitution {
        let l = IntMatrix::new(2, vec![2, 0, -1, 3]).unwrap();
        let f = vec![
            vec![0, 0],
            vec![1, 2],
            vec![-2, -1],
            vec![-2, -3],
            vec![1, 0],
            vec![-1, -1],
        ];
        Substitution::new(
            vec!["a".into()],
            l,
            f,
            vec![vec![0, 0, 0, 0, 0, 0]],
            false,
        )
        .unwrap()
    }

    #[cfg(test)]
    pub fn gasket_example() -> Substitution {
        let l = IntMatrix::new(2, vec![2, 0, 0, 2]).unwrap();
        let f = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]];
        Substitution::new(vec!["a".into()], l, f, vec![vec![0, 0, 0, 0]], false).unwrap()
    }
}
