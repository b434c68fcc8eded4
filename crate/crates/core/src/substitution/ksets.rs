use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::numeric::{opnorm_upper, support_norm_upper};
use crate::point::{add, ball, minkowski, Point};
use crate::substitution::Substitution;

const ORBIT_CAP: usize = 1_000_000;

/// The filling set `K_ζ`: the periodic points of the digit map
/// `n ↦ quotient(n)`. All of them lie in the ball of radius
/// `‖F₁‖·‖(id - L)^{-1}‖`; the search walks the digit map from every lattice
/// point of that ball and keeps the points on cycles.
pub fn k_set(sub: &Substitution) -> Result<Vec<Point>> {
    let l = sub.matrix();
    let id = crate::lattice::IntMatrix::identity(l.dim());
    let id_minus_l = id.sub(l);
    let inv = id_minus_l
        .inverse()
        .ok_or_else(|| Error::internal("id - L singular for an expansion matrix"))?;
    let radius = support_norm_upper(sub.support()) * opnorm_upper(&inv);
    let r_sq_rat = &radius * &radius;
    let r_sq: i128 = rat_ceil_i128(&r_sq_rat);
    let start_points = ball(sub.dim(), r_sq);

    // Functional-graph cycle detection over the digit map.
    // status: true = on a cycle, false = leads into a known structure.
    let mut status: BTreeMap<Point, bool> = BTreeMap::new();
    for start in start_points {
        if status.contains_key(&start) {
            continue;
        }
        let mut path: Vec<Point> = Vec::new();
        let mut index: BTreeMap<Point, usize> = BTreeMap::new();
        let mut cur = start.clone();
        loop {
            if let Some(&known) = status.get(&cur) {
                let _ = known;
                for p in path {
                    status.insert(p, false);
                }
                break;
            }
            if let Some(&at) = index.get(&cur) {
                // Found a new cycle: suffix of the path from `at`.
                for (i, p) in path.into_iter().enumerate() {
                    status.insert(p, i >= at);
                }
                break;
            }
            index.insert(cur.clone(), path.len());
            path.push(cur.clone());
            if path.len() > ORBIT_CAP {
                return Err(Error::internal("digit-map orbit did not close"));
            }
            cur = sub.digits().quotient(&cur);
        }
    }
    Ok(status.into_iter().filter_map(|(p, on)| on.then_some(p)).collect())
}

pub fn rat_ceil_i128(x: &BigRational) -> i128 {
    let c = x.ceil().to_integer();
    i128::try_from(c).expect("ceil overflow")
}

pub fn rat_ceil_i64(x: &BigRational) -> i64 {
    let c = x.ceil().to_integer();
    i64::try_from(c).expect("ceil overflow")
}

/// The cover set `C` for finite sets `A` and `F ⊇ F₁`: the smallest union of
/// the digit-quotient iterates with `B ⊆ C` and `C + F + A ⊆ L(C) + F₁`,
/// where `B = {quotient(n) : n ∈ F + A}`.
pub fn cover_set(sub: &Substitution, a_set: &[Point], f_set: &[Point]) -> Result<Vec<Point>> {
    if !sub.support().iter().all(|f| f_set.contains(f)) {
        return Err(Error::invalid("cover set requires F ⊇ F₁"));
    }
    let mut acc: BTreeSet<Point> = BTreeSet::new();
    let mut frontier: BTreeSet<Point> = f_set
        .iter()
        .flat_map(|f| a_set.iter().map(move |a| add(f, a)))
        .map(|n| sub.digits().quotient(&n))
        .collect();
    while !frontier.is_empty() {
        acc.extend(frontier.iter().cloned());
        if acc.len() > ORBIT_CAP {
            return Err(Error::internal("cover-set iteration diverged"));
        }
        let mut next = BTreeSet::new();
        for b in &frontier {
            for f in f_set {
                for a in a_set {
                    let q = sub.digits().quotient(&add(&add(b, f), a));
                    if !acc.contains(&q) {
                        next.insert(q);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(acc.into_iter().collect())
}

/// `K̄_ζ = K_ζ + C` with `C = cover_set(ζ, {0}, F₁+F₁)`, the margin set used
/// by the language closure, recognizability and the H1/H2 certifiers.
pub fn k_bar(sub: &Substitution) -> Result<Vec<Point>> {
    let k = k_set(sub)?;
    let c = cover_set(
        sub,
        &[crate::point::zero(sub.dim())],
        &minkowski(sub.support(), sub.support()),
    )?;
    Ok(minkowski(&k, &c))
}

/// Norm bound of the cover-set proposition, as a certified rational upper
/// bound: `‖B‖ + ‖L^{-1}‖(‖A‖+‖F‖+‖F₁‖)/(1-‖L^{-1}‖)`.
pub fn cover_set_norm_bound(
    sub: &Substitution,
    a_set: &[Point],
    f_set: &[Point],
) -> Result<BigRational> {
    let linv = crate::lattice::numeric::opnorm_inv_upper(sub.matrix())?;
    let one = BigRational::from_integer(BigInt::from(1));
    if linv >= one {
        return Err(Error::invalid(
            "norm bound needs ‖L^{-1}‖ < 1; replace the substitution by a power",
        ));
    }
    let b: Vec<Point> = f_set
        .iter()
        .flat_map(|f| a_set.iter().map(move |a| add(f, a)))
        .map(|n| sub.digits().quotient(&n))
        .collect();
    let norm_b = support_norm_upper(&b);
    let norm_a = support_norm_upper(a_set);
    let norm_f = support_norm_upper(f_set);
    let norm_f1 = support_norm_upper(sub.support());
    Ok(norm_b + &linv * (norm_a + norm_f + norm_f1) / (one - &linv))
}

/// Exact membership check `x ∈ L^n(S) + F_n`, by decomposing `x` digit by
/// digit for `n` steps and testing the final quotient against `S`.
pub fn in_level_set(sub: &Substitution, s: &BTreeSet<Point>, x: &[i64], n: u32) -> bool {
    let mut cur = x.to_vec();
    for _ in 0..n {
        cur = sub.digits().quotient(&cur);
    }
    s.contains(&cur)
}

/// Largest `r` with `B(0,r) ∩ Z^d ⊆ T` is not needed; this instead finds the
/// smallest level `n ≤ cap` with `shape ⊆ L^n(K) + F_n`.
pub fn level_covering_shape(
    sub: &Substitution,
    k: &BTreeSet<Point>,
    shape: &[Point],
    cap: u32,
) -> Result<u32> {
    for n in 0..=cap {
        if shape.iter().all(|p| in_level_set(sub, k, p, n)) {
            return Ok(n);
        }
    }
    Err(Error::resource("covering level for shape", cap as u64))
}

/// A certified upper bound on `√(max ‖p‖²)` rounded up to an integer radius.
pub fn support_radius_ceil(points: &[Point]) -> i64 {
    rat_ceil_i64(&support_norm_upper(points))
}

/// Upper bound on `‖L‖`, ceiled.
pub fn opnorm_ceil(m: &crate::lattice::IntMatrix) -> i64 {
    rat_ceil_i64(&crate::lattice::numeric::opnorm_int_upper(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::test_subs::*;

    #[test]
    fn k_set_of_1d_constant_length() {
        // Every 1-D constant-length substitution has K = {-1, 0}.
        for s in [tm1d(), doubling1d(), height2_len3(), height3_len4()] {
            assert_eq!(k_set(&s).unwrap(), vec![vec![-1], vec![0]]);
        }
    }

    #[test]
    fn k_set_of_tm2d_is_box() {
        let k = k_set(&tm2d()).unwrap();
        let expect: Vec<Point> =
            vec![vec![-1, -1], vec![-1, 0], vec![0, -1], vec![0, 0]];
        assert_eq!(k, expect);
    }

    #[test]
    fn k_set_of_table_is_box() {
        let k = k_set(&table()).unwrap();
        assert_eq!(k.len(), 4);
        assert!(k.contains(&vec![-1, -1]) && k.contains(&vec![0, 0]));
    }

    #[test]
    fn k_set_closed_under_digit_map() {
        for s in [tm2d(), sigma_nonlinear(), twin_dragon(), heights_product()] {
            let k = k_set(&s).unwrap();
            let kset: BTreeSet<Point> = k.iter().cloned().collect();
            for p in &k {
                assert!(kset.contains(&s.digits().quotient(p)));
            }
            assert!(kset.contains(&crate::point::zero(s.dim())));
        }
    }

    #[test]
    fn k_set_twin_dragon() {
        let k = k_set(&twin_dragon()).unwrap();
        assert_eq!(k, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn cover_set_properties() {
        for s in [tm2d(), table(), sigma_nonlinear()] {
            let f = minkowski(s.support(), s.support());
            let a = vec![crate::point::zero(s.dim())];
            let c = cover_set(&s, &a, &f).unwrap();
            let cset: BTreeSet<Point> = c.iter().cloned().collect();
            assert!(cset.contains(&crate::point::zero(s.dim())));
            // C + F + A ⊆ L(C) + F₁ via digit decomposition
            for cp in &c {
                for fp in &f {
                    for ap in &a {
                        let n = add(&add(cp, fp), ap);
                        assert!(in_level_set(&s, &cset, &n, 1));
                    }
                }
            }
            // norm bound of the proposition
            let bound = cover_set_norm_bound(&s, &a, &f).unwrap();
            let bound_sq = &bound * &bound;
            for cp in &c {
                let nsq = BigRational::from_integer(BigInt::from(crate::point::norm_sq(cp)));
                assert!(nsq <= bound_sq, "cover point outside norm bound");
            }
        }
    }

    #[test]
    fn tm2d_cover_set_is_unit_box() {
        let s = tm2d();
        let f = minkowski(s.support(), s.support());
        let c = cover_set(&s, &[vec![0, 0]], &f).unwrap();
        assert_eq!(c, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let kb = k_bar(&s).unwrap();
        assert_eq!(kb.len(), 9); // [-1,1]²
    }

    #[test]
    fn cover_requires_f_superset() {
        let s = tm2d();
        assert!(cover_set(&s, &[vec![0, 0]], &[vec![0, 0]]).is_err());
    }

    #[test]
    fn f_n_plus_f_n_covered() {
        // F_n + F_n ⊆ L^n(C) + F_n for n ≤ 4 (checked via digit quotients).
        let s = tm2d();
        let f = minkowski(s.support(), s.support());
        let c = cover_set(&s, &[vec![0, 0]], &f).unwrap();
        let cset: BTreeSet<Point> = c.into_iter().collect();
        for n in 1..=4u32 {
            let fn_pts = s.support_level(n, 1 << 22).unwrap();
            let sums = minkowski(&fn_pts, &fn_pts);
            for p in &sums {
                assert!(in_level_set(&s, &cset, p, n));
            }
        }
    }
}
