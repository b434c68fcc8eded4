use alloc::vec::Vec;



use crate::error::{Error, Result};
use crate::lattice::matrix::IntMatrix;
use crate::point::{gcd, Point};

/// A full-rank sublattice of `Z^d`, stored as the unique column-style Hermite
/// canonical basis: lower triangular, positive diagonal, and every entry left
/// of the diagonal reduced modulo the diagonal entry of its row. Structural
/// equality therefore decides lattice equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    basis: IntMatrix,
}

impl Lattice {
    /// The full lattice `Z^d`.
    pub fn zd(d: usize) -> Self {
        Lattice { basis: IntMatrix::identity(d) }
    }

    /// Smallest lattice containing the given vectors. Fails when they do not
    /// span a full-rank sublattice.
    pub fn from_generators(gens: &[Point]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::invalid("no generators"));
        }
        let d = gens[0].len();
        if gens.iter().any(|g| g.len() != d) {
            return Err(Error::invalid("generator dimensions differ"));
        }
        let cols: Vec<Vec<i128>> =
            gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        let h = column_hnf(d, cols)?;
        Ok(Lattice { basis: h })
    }

    /// The lattice `M(Z^d)` spanned by the columns of `M`.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        Self::from_generators(&m.cols())
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_cols(&self) -> Vec<Point> {
        self.basis.cols()
    }

    /// Index of the lattice in `Z^d`, i.e. `|Z^d / Λ|`.
    pub fn index(&self) -> i64 {
        let det = self.basis.det();
        i64::try_from(det.abs()).expect("lattice index overflows i64")
    }

    /// Solve `B x = p` over the integers (basis is lower triangular).
    pub fn coefficients_of(&self, p: &[i64]) -> Option<Point> {
        let d = self.dim();
        debug_assert_eq!(p.len(), d);
        let mut x = vec![0i64; d];
        for i in 0..d {
            let mut rem: i128 = p[i] as i128;
            for j in 0..i {
                rem -= self.basis.at(i, j) as i128 * x[j] as i128;
            }
            let diag = self.basis.at(i, i) as i128;
            if rem % diag != 0 {
                return None;
            }
            x[i] = i64::try_from(rem / diag).ok()?;
        }
        Some(x)
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        self.coefficients_of(p).is_some()
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.basis_cols().iter().all(|c| self.contains_point(c))
    }

    /// Smallest lattice containing both.
    pub fn join(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis_cols();
        gens.extend(other.basis_cols());
        Lattice::from_generators(&gens).expect("join of full-rank lattices is full rank")
    }

    /// The image lattice `M(Λ)`; `M` must be nonsingular.
    pub fn transform(&self, m: &IntMatrix) -> Result<Lattice> {
        if m.is_singular() {
            return Err(Error::invalid("singular transform"));
        }
        let gens: Vec<Point> = self.basis_cols().iter().map(|c| m.mul_vec(c)).collect();
        Lattice::from_generators(&gens)
    }

    /// Intersection, computed as the dual of the join of the duals.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let j = self.dual().join(&other.dual());
        let d = j.dual();
        d.to_integer().expect("intersection of integer lattices is integral")
    }

    /// Dual lattice `{x : <x, n> ∈ Z for all n ∈ Λ}`, with rational basis.
    pub fn dual(&self) -> RatLattice {
        RatLattice { num: self.clone(), den: 1 }.dual()
    }

    pub fn is_zd(&self) -> bool {
        self.basis == IntMatrix::identity(self.dim())
    }
}

/// A lattice of the form `(1/den) · Λ` with `Λ ⊆ Z^d` in canonical form and
/// `den` coprime to the content of the basis. Canonical, so equality is
/// structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatLattice {
    num: Lattice,
    den: i64,
}

impl RatLattice {
    pub fn new(num: Lattice, den: i64) -> Self {
        assert!(den > 0);
        let mut g: i64 = den;
        for c in num.basis().entries() {
            g = gcd(g, *c);
        }
        if g > 1 {
            let d = num.dim();
            let cols: Vec<Point> =
                num.basis_cols().iter().map(|c| c.iter().map(|x| x / g).collect()).collect();
            let m = IntMatrix::from_cols(&cols).expect("square");
            let _ = d;
            RatLattice {
                num: Lattice::from_matrix(&m).expect("full rank preserved"),
                den: den / g,
            }
        } else {
            RatLattice { num, den }
        }
    }

    pub fn from_integer(l: Lattice) -> Self {
        RatLattice { num: l, den: 1 }
    }

    pub fn to_integer(&self) -> Option<Lattice> {
        (self.den == 1).then(|| self.num.clone())
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn join(&self, other: &RatLattice) -> RatLattice {
        let l = (self.den / gcd(self.den, other.den)) * other.den;
        let s1 = l / self.den;
        let s2 = l / other.den;
        let mut gens: Vec<Point> = self
            .num
            .basis_cols()
            .iter()
            .map(|c| c.iter().map(|x| x * s1).collect())
            .collect();
        gens.extend(
            other.num.basis_cols().iter().map(|c| c.iter().map(|x| x * s2).collect::<Point>()),
        );
        let num = Lattice::from_generators(&gens).expect("full rank");
        RatLattice::new(num, l)
    }

    /// Dual lattice: for basis `B/den`, the dual has basis `den · (B^T)^{-1}`.
    pub fn dual(&self) -> RatLattice {
        let bt = self.num.basis().transpose();
        let inv = bt.inverse().expect("full-rank lattice basis");
        // den * inv is rational; clear denominators.
        let d = self.dim();
        let mut den_lcm: i64 = 1;
        let mut entries: Vec<(i64, i64)> = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = inv.at(i, j) * num_rational::BigRational::from_integer(self.den.into());
                let n = i64::try_from(v.numer().clone()).expect("dual entry overflow");
                let q = i64::try_from(v.denom().clone()).expect("dual entry overflow");
                entries.push((n, q));
                den_lcm = den_lcm / gcd(den_lcm, q) * q;
            }
        }
        let cols: Vec<Point> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        let (n, q) = entries[i * d + j];
                        n * (den_lcm / q)
                    })
                    .collect()
            })
            .collect();
        let num = Lattice::from_generators(&cols).expect("dual is full rank");
        RatLattice::new(num, den_lcm)
    }
}

/// Column-style Hermite normal form of a `d × k` integer matrix whose columns
/// generate a full-rank lattice. Returns the lower-triangular canonical basis.
fn column_hnf(d: usize, mut cols: Vec<Vec<i128>>) -> Result<IntMatrix> {
    let k = cols.len();
    if k < d {
        return Err(Error::invalid("rank-deficient generators"));
    }
    for row in 0..d {
        // Eliminate row entries across columns row..k by Euclidean steps.
        loop {
            let mut nonzero: Vec<usize> =
                (row..k).filter(|&j| cols[j][row] != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::invalid("rank-deficient generators"));
            }
            if nonzero.len() == 1 {
                let j = nonzero[0];
                cols.swap(row, j);
                break;
            }
            nonzero.sort_by_key(|&j| cols[j][row].abs());
            let a = nonzero[0];
            for &b in &nonzero[1..] {
                let q = div_round(cols[b][row], cols[a][row]);
                for i in 0..d {
                    let s = q * cols[a][i];
                    cols[b][i] -= s;
                }
            }
        }
        if cols[row][row] < 0 {
            for i in 0..d {
                cols[row][i] = -cols[row][i];
            }
        }
        // Reduce earlier columns in this row into [0, diag).
        let diag = cols[row][row];
        for j in 0..row {
            let q = num_integer::Integer::div_floor(&cols[j][row], &diag);
            if q != 0 {
                for i in 0..d {
                    let s = q * cols[row][i];
                    cols[j][i] -= s;
                }
            }
        }
    }
    let mut e = vec![0i64; d * d];
    for j in 0..d {
        for i in 0..d {
            e[i * d + j] =
                i64::try_from(cols[j][i]).map_err(|_| Error::invalid("HNF entry overflow"))?;
        }
    }
    // Columns beyond d must have been zeroed out by full-rank elimination.
    for col in cols.iter().skip(d) {
        if col.iter().any(|&x| x != 0) {
            return Err(Error::internal("nonzero residual column in HNF"));
        }
    }
    IntMatrix::new(d, e)
}

fn div_round(a: i128, b: i128) -> i128 {
    // Round a/b to nearest, halves toward even-ish; any rounding that shrinks
    // the remainder works for the Euclidean descent.
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

/// Smallest lattice `H ⊇ <G>` with `H ∩ L(Z^d) ⊆ L(H)`, computed by repeatedly
/// adjoining `L^{-1}h` for basis vectors `h` of `H ∩ L(Z^d)` not yet mapped
/// inside. Terminates because the index of `H` in `Z^d` strictly decreases.
pub fn saturate_height(gens: &[Point], l: &IntMatrix) -> Result<Lattice> {
    let mut h = Lattice::from_generators(gens)?;
    let l_lattice = Lattice::from_matrix(l)?;
    let l_inv = l.inverse().ok_or_else(|| Error::invalid("singular expansion matrix"))?;
    loop {
        let inter = h.intersect(&l_lattice);
        let mut new_gens: Vec<Point> = Vec::new();
        for c in inter.basis_cols() {
            let pre = l_inv.mul_int_vec(&c);
            let pre: Point = pre
                .iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("saturation preimage overflow")
                })
                .collect();
            if !h.contains_point(&pre) {
                new_gens.push(pre);
            }
        }
        if new_gens.is_empty() {
            return Ok(h);
        }
        new_gens.extend(h.basis_cols());
        h = Lattice::from_generators(&new_gens)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[i64]) -> Lattice {
        let d = entries.len();
        let mut e = vec![0; d * d];
        for i in 0..d {
            e[i * d + i] = entries[i];
        }
        Lattice::from_matrix(&IntMatrix::new(d, e).unwrap()).unwrap()
    }

    #[test]
    fn join_of_coprime_scalings_is_zd() {
        let a = diag(&[2, 2]);
        let b = diag(&[3, 3]);
        assert_eq!(a.join(&b), Lattice::zd(2));
    }

    #[test]
    fn index_of_diag() {
        assert_eq!(diag(&[2, 3]).index(), 6);
        assert_eq!(Lattice::zd(3).index(), 1);
    }

    #[test]
    fn containment() {
        let a = diag(&[2, 2]);
        assert!(Lattice::zd(2).contains(&a));
        assert!(!a.contains(&Lattice::zd(2)));
        assert!(a.contains_point(&[4, -2]));
        assert!(!a.contains_point(&[1, 0]));
    }

    #[test]
    fn canonical_form_is_unique() {
        // Same lattice from different generators.
        let a = Lattice::from_generators(&[vec![2, 0], vec![0, 3], vec![2, 3]]).unwrap();
        let b = diag(&[2, 3]);
        assert_eq!(a, b);
        let c = Lattice::from_generators(&[vec![2, 1], vec![0, 5]]).unwrap();
        let d = Lattice::from_generators(&[vec![2, -4], vec![-2, -1]]).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn intersect_diagonals() {
        let a = diag(&[2, 3]);
        let b = diag(&[3, 2]);
        assert_eq!(a.intersect(&b), diag(&[6, 6]));
    }

    #[test]
    fn dual_of_dual_is_identity() {
        for l in [diag(&[2, 3]), Lattice::from_generators(&[vec![1, -1], vec![1, 1]]).unwrap()] {
            let dd = l.dual().dual().to_integer().unwrap();
            assert_eq!(dd, l);
        }
    }

    #[test]
    fn dual_of_matrix_lattice() {
        // dual(M Z^d) = (M^T)^{-1} Z^d; for M = diag(2,3) this is (1/6) diag(3,2).
        let l = diag(&[2, 3]);
        let dual = l.dual();
        let expected = RatLattice::new(diag(&[3, 2]), 6);
        assert_eq!(dual, expected);
    }

    #[test]
    fn saturation_examples() {
        // Already saturated.
        let l = IntMatrix::new(2, vec![3, 0, 0, 4]).unwrap();
        let h = saturate_height(&[vec![2, 0], vec![0, 3]], &l).unwrap();
        assert_eq!(h, diag(&[2, 3]));

        // Adjoins (2,0) then (1,0).
        let l = IntMatrix::new(2, vec![2, 0, 0, 2]).unwrap();
        let h = saturate_height(&[vec![4, 0], vec![0, 1]], &l).unwrap();
        assert_eq!(h, Lattice::zd(2));

        // Z^d is a fixed point.
        let h = saturate_height(&[vec![1, 0], vec![0, 1]], &l).unwrap();
        assert_eq!(h, Lattice::zd(2));
    }
}
