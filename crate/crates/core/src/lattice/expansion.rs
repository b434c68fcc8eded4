use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::matrix::IntMatrix;
use crate::lattice::numeric::char_poly_int;

/// Decide, exactly, whether every complex eigenvalue of `L` has modulus
/// strictly greater than 1.
///
/// The eigenvalues of `L` all lie outside the closed unit disk iff the
/// reversed characteristic polynomial has all of its roots strictly inside
/// the open unit disk, which the Schur–Cohn recursion decides over the
/// integers.
pub fn is_expansion(l: &IntMatrix) -> Result<bool> {
    if l.det() == 0 {
        return Err(Error::invalid("expansion test requires a nonsingular matrix"));
    }
    let chi = char_poly_int(l);
    // r(z) = z^d · χ(1/z): coefficient of z^j is χ_{d-j}.
    let reversed: Vec<BigInt> = chi.iter().rev().cloned().collect();
    Ok(schur_stable(&reversed))
}

/// All roots of `p` (coefficients constant..leading) strictly inside the open
/// unit disk. Schur–Cohn: stable iff |a_0| < |a_n| and the Schur transform
/// `(a_n p(z) - a_0 p*(z)) / z` is stable, where `p*` reverses coefficients.
fn schur_stable(p: &[BigInt]) -> bool {
    let mut q: Vec<BigInt> = p.to_vec();
    while q.len() > 1 && q.last().map(|c| c.is_zero()).unwrap_or(false) {
        // A zero leading coefficient just lowers the degree.
        q.pop();
    }
    loop {
        let n = q.len() - 1;
        if n == 0 {
            return true;
        }
        let a0 = q[0].clone();
        let an = q[n].clone();
        if a0.abs() >= an.abs() {
            return false;
        }
        let next: Vec<BigInt> =
            (1..=n).map(|j| &an * &q[j] - &a0 * &q[n - j]).collect();
        // Leading coefficient of the transform is a_n² - a_0² > 0.
        q = next;
    }
}
