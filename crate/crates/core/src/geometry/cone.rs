use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::hull::{Face, Polytope};
use crate::geometry::lp::in_cone_hull;
use crate::point::{add, Point};

/// A polyhedral cone with primitive integer generators, minimal and sorted
/// (canonical, so equality is structural).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    generators: Vec<Point>,
    dim: usize,
}

impl Cone {
    /// Canonicalize a generator list: primitive representatives, redundancy
    /// removed (a generator inside the cone of the others is dropped), sorted.
    pub fn new(generators: Vec<Point>) -> Cone {
        let mut gens: BTreeSet<Point> = generators
            .iter()
            .filter(|g| !crate::point::is_zero(g))
            .map(|g| crate::point::primitive(g))
            .collect();
        // remove redundant generators
        loop {
            let list: Vec<Point> = gens.iter().cloned().collect();
            let mut removed = false;
            for g in &list {
                let others: Vec<Point> =
                    list.iter().filter(|h| *h != g).cloned().collect();
                if !others.is_empty() && in_cone_hull(&others, g) {
                    gens.remove(g);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        let generators: Vec<Point> = gens.into_iter().collect();
        let dim = rank(&generators);
        Cone { generators, dim }
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        in_cone_hull(&self.generators, v)
    }

    /// A representative direction in the relative interior: the sum of the
    /// generators, reduced to a primitive vector.
    pub fn interior_sample(&self) -> Point {
        let d = self.generators.first().map(|g| g.len()).unwrap_or(0);
        let mut acc = crate::point::zero(d);
        for g in &self.generators {
            acc = add(&acc, g);
        }
        crate::point::primitive(&acc)
    }

    /// Image cone under an integer matrix (generators mapped and
    /// re-canonicalized).
    pub fn transform(&self, m: &crate::lattice::IntMatrix) -> Cone {
        Cone::new(self.generators.iter().map(|g| m.mul_vec(g)).collect())
    }
}

fn rank(vs: &[Point]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let d = vs[0].len();
    let mut basis: Vec<Vec<num_rational::BigRational>> = Vec::new();
    for v in vs {
        let mut w: Vec<num_rational::BigRational> = v
            .iter()
            .map(|&x| num_rational::BigRational::from_integer(x.into()))
            .collect();
        for b in &basis {
            use num_traits::Zero;
            let pivot = b.iter().position(|x| !x.is_zero()).unwrap();
            if !w[pivot].is_zero() {
                let f = &w[pivot] / &b[pivot];
                for i in 0..d {
                    let val = &w[i] - &f * &b[i];
                    w[i] = val;
                }
            }
        }
        use num_traits::Zero;
        if w.iter().any(|x| !x.is_zero()) {
            basis.push(w);
        }
    }
    basis.len()
}

/// The opposite normal cone of a face `F` of a full-dimensional polytope:
/// the directions whose minimum over the polytope is attained on all of `F`,
/// i.e. the cone spanned by the inward normals of the facets containing `F`.
pub fn opposite_normal_cone(p: &Polytope, face: &Face) -> Result<Cone> {
    if p.affine_dim != p.dim_ambient {
        return Err(Error::invalid("normal cones require a full-dimensional polytope"));
    }
    if p.affine_dim == 0 {
        return Err(Error::invalid("a point has no proper faces"));
    }
    let face_set: BTreeSet<usize> = face.vertices.iter().copied().collect();
    let mut gens: Vec<Point> = Vec::new();
    for facet in p.facets() {
        let facet_set: BTreeSet<usize> = facet.vertices.iter().copied().collect();
        if face_set.is_subset(&facet_set) {
            gens.push(facet.normal.clone().expect("full-dim facets carry normals"));
        }
    }
    if gens.is_empty() {
        return Err(Error::invalid("face is not contained in any facet"));
    }
    Ok(Cone::new(gens))
}

/// The opposite normal fan: one cone per proper face, deduplicated and
/// sorted. Together the cones cover `R^d`.
pub fn normal_fan(p: &Polytope) -> Result<Vec<Cone>> {
    let mut out: BTreeSet<Cone> = BTreeSet::new();
    for face in &p.faces {
        out.insert(opposite_normal_cone(p, face)?);
    }
    Ok(out.into_iter().collect())
}
