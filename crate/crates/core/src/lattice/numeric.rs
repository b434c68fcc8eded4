//! Certified rational bounds for the few real quantities the analyses need:
//! operator 2-norms and largest eigenvalues. Everything here returns exact
//! rationals that are guaranteed upper bounds; no floating point is involved.

use alloc::vec::Vec;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::matrix::{rat_abs, IntMatrix, RatMatrix};
use crate::point::Point;

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Upper bound for `√x`, exact whenever `x` is the square of a rational.
/// Otherwise a Newton iteration from above, rounded up to a dyadic with
/// ~2^-48 relative slack.
pub fn sqrt_upper(x: &BigRational) -> BigRational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return BigRational::zero();
    }
    // √(p/q) = √(pq)/q; exact when pq is a perfect square.
    let p = x.numer().clone();
    let q = x.denom().clone();
    let pq = &p * &q;
    let r = pq.sqrt();
    if &r * &r == pq {
        return BigRational::new(r, q);
    }
    let mut s = (x + BigRational::one()) / rat(2); // (x+1)/2 ≥ √x
    for _ in 0..64 {
        let next = (&s + x / &s) / rat(2);
        let done = {
            let err = &s - &next;
            &err * rat(1i64 << 48) < s
        };
        s = next;
        if done {
            break;
        }
    }
    // Round up to a dyadic so the result stays small.
    let scale = BigInt::from(1i64 << 52);
    let scaled = (&s * BigRational::from_integer(scale.clone())).ceil().to_integer()
        + BigInt::one();
    BigRational::new(scaled, scale)
}

/// Coefficients `c_0..c_d` (constant to leading, monic) of `det(λI - M)`,
/// by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &RatMatrix) -> Vec<BigRational> {
    let d = m.nrows();
    assert_eq!(d, m.ncols());
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let mut acc = RatMatrix::identity(d);
    for k in 1..=d {
        acc = m.mul(&acc);
        let c = -(acc.trace() / BigRational::from_integer(BigInt::from(k as i64)));
        coeffs[d - k] = c.clone();
        // acc += c * I
        for i in 0..d {
            let v = acc.at(i, i) + &c;
            acc.set(i, i, v);
        }
    }
    coeffs
}

/// Integer characteristic polynomial of an integer matrix.
pub fn char_poly_int(m: &IntMatrix) -> Vec<BigInt> {
    char_poly(&m.to_rat())
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as i64)))
        .collect()
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Remainder of polynomial division.
fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let f = r[dr].clone() / &lead;
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &bb[i];
            r[dr - db + i] = v;
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    r
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = Vec::new();
    let mut p0 = p.to_vec();
    poly_trim(&mut p0);
    let mut p1 = poly_derivative(&p0);
    poly_trim(&mut p1);
    chain.push(p0.clone());
    if p1.len() == 1 && p1[0].is_zero() {
        return chain;
    }
    chain.push(p1.clone());
    loop {
        let r = poly_rem(&p0, &p1);
        if r.len() == 1 && r[0].is_zero() {
            return chain;
        }
        let neg: Vec<BigRational> = r.iter().map(|c| -c.clone()).collect();
        chain.push(neg.clone());
        p0 = p1;
        p1 = neg;
    }
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for p in chain {
        let v = poly_eval(p, x);
        let s: i8 = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_roots(p: &[BigRational], a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, a) - sign_variations(&chain, b)
}

/// Rational upper bound for the largest real eigenvalue of a symmetric
/// matrix, tight to ~2^-40 relative. Exact for diagonal matrices.
pub fn eig_max_upper(sym: &RatMatrix) -> BigRational {
    assert_eq!(sym.nrows(), sym.ncols());
    let d = sym.nrows();
    if sym.is_diagonal() {
        let mut best = sym.at(0, 0).clone();
        for i in 1..d {
            if sym.at(i, i) > &best {
                best = sym.at(i, i).clone();
            }
        }
        return best;
    }
    let p = char_poly(sym);
    // Cauchy bound: |λ| ≤ 1 + max |c_i| for monic p.
    let mut bound = BigRational::one();
    for c in &p[..d] {
        let a = rat_abs(c);
        if a > bound {
            bound = a;
        }
    }
    bound += BigRational::one();
    let mut lo = -bound.clone();
    let mut hi = bound.clone();
    let chain = sturm_chain(&p);
    let tol_shift = 40u8;
    for _ in 0..200 {
        let width = &hi - &lo;
        let limit = rat_abs(&hi) + BigRational::one();
        if &width * BigRational::from_integer(BigInt::one() << (tol_shift as usize)) < limit {
            break;
        }
        let mid = (&lo + &hi) / rat(2);
        let roots_above = sign_variations(&chain, &mid) - sign_variations(&chain, &bound);
        if roots_above > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Upper bound for the operator 2-norm of a rational matrix.
pub fn opnorm_upper(m: &RatMatrix) -> BigRational {
    let sym = m.transpose().mul(m);
    sqrt_upper(&eig_max_upper(&sym))
}

/// Upper bound for the operator 2-norm of an integer matrix.
pub fn opnorm_int_upper(m: &IntMatrix) -> BigRational {
    opnorm_upper(&m.to_rat())
}

/// Upper bound for `‖M^{-1}‖₂`; error when singular.
pub fn opnorm_inv_upper(m: &IntMatrix) -> Result<BigRational> {
    let inv = m.inverse().ok_or_else(|| Error::invalid("singular matrix"))?;
    Ok(opnorm_upper(&inv))
}

/// Upper bound for `max_{f ∈ F} ‖f‖₂` over a finite point set.
pub fn support_norm_upper(points: &[Point]) -> BigRational {
    let mut max_sq: i128 = 0;
    for p in points {
        max_sq = max_sq.max(crate::point::norm_sq(p));
    }
    sqrt_upper(&BigRational::from_integer(BigInt::from(max_sq)))
}

/// Integer roots of the (monic, integer) characteristic polynomial of `m`:
/// candidates are divisors of the constant term.
pub fn integer_eigenvalues(m: &IntMatrix) -> Vec<i64> {
    let p = char_poly_int(m);
    let c0 = &p[0];
    let mut roots = Vec::new();
    if c0.is_zero() {
        roots.push(0);
    }
    let c0_abs: BigInt = c0.abs();
    let limit = i64::try_from(c0_abs.clone()).unwrap_or(i64::MAX);
    let mut divisors: Vec<i64> = Vec::new();
    let mut k: i64 = 1;
    while (k as i128) * (k as i128) <= limit as i128 {
        if !c0.is_zero() && (&c0_abs % BigInt::from(k)).is_zero() {
            divisors.push(k);
            divisors.push(limit / k);
        }
        k += 1;
    }
    divisors.sort_unstable();
    divisors.dedup();
    for dv in divisors {
        for cand in [dv, -dv] {
            let x = BigRational::from_integer(BigInt::from(cand));
            let pr: Vec<BigRational> =
                p.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            if poly_eval(&pr, &x).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact_for_squares() {
        assert_eq!(sqrt_upper(&rat(4)), rat(2));
        assert_eq!(sqrt_upper(&BigRational::new(1.into(), 4.into())), BigRational::new(1.into(), 2.into()));
        assert_eq!(sqrt_upper(&rat(0)), rat(0));
    }

    #[test]
    fn sqrt_upper_bounds_sqrt2() {
        let s = sqrt_upper(&rat(2));
        assert!(&s * &s > rat(2));
        let slack = &s * &s - rat(2);
        assert!(slack < BigRational::new(1.into(), 1_000_000.into()));
    }

    #[test]
    fn char_poly_of_companion_case() {
        // [[1,-1],[1,1]] has char poly λ² - 2λ + 2.
        let m = IntMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        let p = char_poly_int(&m);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-2), BigInt::from(1)]);
    }

    #[test]
    fn eig_bound_diagonal_exact() {
        let m = IntMatrix::new(2, vec![3, 0, 0, 7]).unwrap();
        assert_eq!(eig_max_upper(&m.to_rat()), rat(7));
    }

    #[test]
    fn opnorm_of_rotation_scaling() {
        // [[1,-1],[1,1]] is √2 times a rotation; LᵀL = 2I so the norm is
        // exactly √2 ≤ bound < √2 + ε.
        let m = IntMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        let b = opnorm_int_upper(&m);
        assert!(&b * &b >= rat(2));
        assert!(&b * &b < rat(2) + BigRational::new(1.into(), 1000.into()));
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6
        let p: Vec<BigRational> = [-6i64, 11, -6, 1].iter().map(|&c| rat(c)).collect();
        assert_eq!(count_roots(&p, &rat(0), &rat(4)), 3);
        assert_eq!(count_roots(&p, &rat(1), &rat(4)), 2); // (1,4] excludes root 1
        assert_eq!(count_roots(&p, &rat(2), &rat(2)), 0);
    }

    #[test]
    fn integer_eigs() {
        let m = IntMatrix::new(2, vec![2, 0, -1, 3]).unwrap();
        assert_eq!(integer_eigenvalues(&m), vec![2, 3]);
        let rot = IntMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        assert!(integer_eigenvalues(&rot).is_empty());
    }
}
