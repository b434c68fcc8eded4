use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::lp::in_convex_hull;
use crate::point::{primitive, Point};

pub type RatPoint = Vec<BigRational>;

/// A face of a polytope, identified by the indices of the vertices it
/// contains. `normal` is the primitive integer inward normal, present for
/// facets of full-dimensional polytopes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub normal: Option<Point>,
}

/// An exact convex polytope: extreme points only, plus the face lattice
/// (complete for affine dimension ≤ 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub dim_ambient: usize,
    pub affine_dim: usize,
    pub vertices: Vec<RatPoint>,
    /// Proper faces, sorted by (dim, vertex indices).
    pub faces: Vec<Face>,
}

impl Polytope {
    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        let top = self.affine_dim.saturating_sub(1);
        self.faces.iter().filter(move |f| f.dim == top)
    }

    pub fn vertex_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.dim == 0)
    }

    /// Exact membership via the supporting facet inequalities when the
    /// polytope is full-dimensional; falls back to the LP oracle otherwise.
    pub fn contains(&self, p: &[BigRational]) -> bool {
        if self.affine_dim == self.dim_ambient && self.affine_dim >= 1 {
            self.facets().all(|f| {
                let n = f.normal.as_ref().expect("full-dim facets carry normals");
                let base = &self.vertices[f.vertices[0]];
                dot_rat_int(p, n) >= dot_rat_int(base, n)
            })
        } else {
            in_convex_hull(&self.vertices, p)
        }
    }

    /// Facets whose supporting hyperplane passes through `p` (empty when `p`
    /// is interior; `None` when `p` is outside).
    pub fn tight_facets(&self, p: &[BigRational]) -> Option<Vec<usize>> {
        if self.affine_dim != self.dim_ambient {
            return None;
        }
        let mut tight = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if f.dim + 1 != self.affine_dim {
                continue;
            }
            let n = f.normal.as_ref().unwrap();
            let base = &self.vertices[f.vertices[0]];
            let delta = dot_rat_int(p, n) - dot_rat_int(base, n);
            if delta.is_negative() {
                return None;
            }
            if delta.is_zero() {
                tight.push(i);
            }
        }
        Some(tight)
    }
}

fn dot_rat_int(p: &[BigRational], n: &[i64]) -> BigRational {
    p.iter()
        .zip(n)
        .map(|(x, &k)| x * BigRational::from_integer(BigInt::from(k)))
        .fold(BigRational::zero(), |acc, v| acc + v)
}

pub fn int_to_rat_point(p: &[i64]) -> RatPoint {
    p.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Extreme points of a finite integer point set (as a set). Fast paths for
/// d ≤ 2; the exact LP feasibility oracle for higher dimensions.
pub fn extreme_points(points: &[Point]) -> BTreeSet<Point> {
    let dedup: BTreeSet<Point> = points.iter().cloned().collect();
    let pts: Vec<Point> = dedup.into_iter().collect();
    if pts.is_empty() {
        return BTreeSet::new();
    }
    let d = pts[0].len();
    match d {
        1 => {
            let mut out = BTreeSet::new();
            out.insert(pts.iter().min().unwrap().clone());
            out.insert(pts.iter().max().unwrap().clone());
            out
        }
        2 => hull2d(&pts).into_iter().collect(),
        _ => {
            let rats: Vec<RatPoint> = pts.iter().map(|p| int_to_rat_point(p)).collect();
            pts.iter()
                .enumerate()
                .filter(|(i, _)| {
                    let others: Vec<RatPoint> = rats
                        .iter()
                        .enumerate()
                        .filter_map(|(j, q)| (j != *i).then(|| q.clone()))
                        .collect();
                    !in_convex_hull(&others, &rats[*i])
                })
                .map(|(_, p)| p.clone())
                .collect()
        }
    }
}

/// Extreme points of a rational point set via the LP feasibility oracle:
/// a point is extreme iff it is not in the hull of the others.
pub fn extreme_points_rat(points: &[RatPoint]) -> Vec<RatPoint> {
    let mut dedup: Vec<RatPoint> = Vec::new();
    for p in points {
        if !dedup.contains(p) {
            dedup.push(p.clone());
        }
    }
    dedup
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<RatPoint> = dedup
                .iter()
                .enumerate()
                .filter_map(|(j, q)| (j != *i).then(|| q.clone()))
                .collect();
            !in_convex_hull(&others, p)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let ax = (a[0] - o[0]) as i128;
    let ay = (a[1] - o[1]) as i128;
    let bx = (b[0] - o[0]) as i128;
    let by = (b[1] - o[1]) as i128;
    ax * by - ay * bx
}

/// Monotone-chain hull of 2-D integer points; counter-clockwise vertex order,
/// collinear points dropped (vertices are exactly the extreme points).
pub fn hull2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    if upper.len() == lower.len() && lower.len() == 1 {
        // all points collinear handled above; defensive
        return lower;
    }
    lower.extend(upper);
    lower
}

/// Number of extreme points of a 2-D integer point set (fast path used by
/// the polytope stabilization test).
pub fn extreme_count_2d(points: &[Point]) -> usize {
    hull2d(points).len()
}

/// Exact convex hull with face lattice (complete for affine dimension ≤ 3;
/// for higher-dimensional full-rank inputs only the vertices are provided).
pub fn convex_hull(points: &[RatPoint]) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::invalid("convex hull of an empty set"));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::invalid("mixed point dimensions"));
    }
    // scale to integer points (positive common denominator)
    let mut denom = BigInt::from(1);
    for p in points {
        for x in p {
            denom = lcm_big(&denom, x.denom());
        }
    }
    let scaled: Vec<Point> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    let v = (x * BigRational::from_integer(denom.clone())).to_integer();
                    i64::try_from(v).map_err(|_| Error::invalid("hull coordinate overflow"))
                })
                .collect::<Result<Point>>()
        })
        .collect::<Result<Vec<Point>>>()?;
    let mut dedup: Vec<Point> = scaled.clone();
    dedup.sort();
    dedup.dedup();

    // affine basis over the rationals (exact rank via integer arithmetic)
    let origin = dedup[0].clone();
    let dirs: Vec<Point> =
        dedup.iter().skip(1).map(|p| crate::point::sub(p, &origin)).collect();
    let basis = independent_subset(&dirs, d);
    let affine_dim = basis.len();

    let denom_rat = BigRational::from_integer(denom.clone());
    let unscale = |p: &Point| -> RatPoint {
        p.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)) / &denom_rat)
            .collect()
    };

    if affine_dim == 0 {
        return Ok(Polytope {
            dim_ambient: d,
            affine_dim: 0,
            vertices: vec![unscale(&origin)],
            faces: Vec::new(),
        });
    }

    // coordinates of every point in the affine basis (exact rationals)
    let coords: Vec<RatPoint> = dedup
        .iter()
        .map(|p| affine_coordinates(&origin, &basis, p))
        .collect::<Result<Vec<RatPoint>>>()?;
    // clear denominators once more to land in Z^{affine_dim}
    let mut cdenom = BigInt::from(1);
    for c in &coords {
        for x in c {
            cdenom = lcm_big(&cdenom, x.denom());
        }
    }
    let icoords: Vec<Point> = coords
        .iter()
        .map(|c| {
            c.iter()
                .map(|x| {
                    let v = (x * BigRational::from_integer(cdenom.clone())).to_integer();
                    i64::try_from(v).map_err(|_| Error::invalid("hull coordinate overflow"))
                })
                .collect::<Result<Point>>()
        })
        .collect::<Result<Vec<Point>>>()?;

    let full_dim = affine_dim == d;
    let (vertex_ids, faces) = match affine_dim {
        1 => hull_structure_1d(&icoords),
        2 => hull_structure_2d(&icoords),
        3 => hull_structure_3d(&icoords)?,
        _ => hull_structure_nd(&icoords, affine_dim)?,
    };
    let vertices: Vec<RatPoint> = vertex_ids.iter().map(|&i| unscale(&dedup[i])).collect();
    // faces refer to positions within vertex_ids already.
    let mut faces = faces;
    if full_dim {
        // Re-derive normals in ambient coordinates: the face structure was
        // built in affine-basis coordinates, whose orientation is arbitrary.
        recompute_normals_in_ambient(&mut faces, &vertices, d)?;
    } else {
        // Faces are relative to the affine hull; ambient normals undefined.
        for f in faces.iter_mut() {
            f.normal = None;
        }
    }
    faces.sort();
    Ok(Polytope { dim_ambient: d, affine_dim, vertices, faces })
}

/// Exact inward primitive normals recomputed from the ambient-coordinate
/// vertices of each facet (d ≤ 3).
fn recompute_normals_in_ambient(
    faces: &mut [Face],
    vertices: &[RatPoint],
    d: usize,
) -> Result<()> {
    for f in faces.iter_mut() {
        if f.dim + 1 != d {
            f.normal = None;
            continue;
        }
        // facet spanned by its vertices; normal orthogonal to the span
        let base = &vertices[f.vertices[0]];
        let dirs: Vec<RatPoint> = f.vertices[1..]
            .iter()
            .map(|&i| {
                vertices[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect::<RatPoint>()
            })
            .collect();
        let normal = rational_normal(&dirs, d)?;
        // orient inward: some vertex must be strictly on the positive side
        let offset = dot_rat(&normal, base);
        let mut oriented = normal;
        for v in vertices.iter() {
            let s = dot_rat(&oriented, v) - &offset;
            if s.is_positive() {
                break;
            }
            if s.is_negative() {
                for x in oriented.iter_mut() {
                    *x = -x.clone();
                }
                break;
            }
        }
        // primitive integer representative
        let mut denom = BigInt::from(1);
        for x in &oriented {
            denom = lcm_big(&denom, x.denom());
        }
        let ints: Point = oriented
            .iter()
            .map(|x| {
                let v = (x * BigRational::from_integer(denom.clone())).to_integer();
                i64::try_from(v).map_err(|_| Error::invalid("normal overflow"))
            })
            .collect::<Result<Point>>()?;
        f.normal = Some(primitive(&ints));
    }
    Ok(())
}

fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(BigRational::zero(), |acc, v| acc + v)
}

/// A vector orthogonal to a set of directions spanning a hyperplane of
/// `R^d`: the one-dimensional rational nullspace of the direction matrix.
fn rational_normal(dirs: &[RatPoint], d: usize) -> Result<RatPoint> {
    // Row-reduce the (|dirs| × d) matrix and read off a kernel vector.
    let m = dirs.len();
    let mut mat: Vec<BigRational> = Vec::with_capacity(m * d);
    for v in dirs {
        mat.extend(v.iter().cloned());
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0usize;
    for col in 0..d {
        let p = (row..m).find(|&r| !mat[r * d + col].is_zero());
        let Some(pr) = p else { continue };
        if pr != row {
            for c in 0..d {
                mat.swap(pr * d + c, row * d + c);
            }
        }
        let pv = mat[row * d + col].clone();
        for c in 0..d {
            let v = &mat[row * d + c] / &pv;
            mat[row * d + c] = v;
        }
        for r in 0..m {
            if r != row && !mat[r * d + col].is_zero() {
                let f = mat[r * d + col].clone();
                for c in 0..d {
                    let v = &mat[r * d + c] - &f * &mat[row * d + c];
                    mat[r * d + c] = v;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if pivots.len() + 1 != d {
        return Err(Error::internal("facet directions do not span a hyperplane"));
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..d).find(|c| !pivot_cols.contains(c)).expect("one free column");
    let mut normal = vec![BigRational::zero(); d];
    normal[free] = BigRational::from_integer(BigInt::from(1));
    for &(r, c) in &pivots {
        normal[c] = -mat[r * d + free].clone();
    }
    Ok(normal)
}

fn hull_structure_1d(coords: &[Point]) -> (Vec<usize>, Vec<Face>) {
    let mut lo = 0usize;
    let mut hi = 0usize;
    for (i, c) in coords.iter().enumerate() {
        if c[0] < coords[lo][0] {
            lo = i;
        }
        if c[0] > coords[hi][0] {
            hi = i;
        }
    }
    if lo == hi {
        return (vec![lo], Vec::new());
    }
    let ids = vec![lo, hi];
    let faces = vec![
        Face { dim: 0, vertices: vec![0], normal: Some(vec![1]) },
        Face { dim: 0, vertices: vec![1], normal: Some(vec![-1]) },
    ];
    (ids, faces)
}

fn hull_structure_2d(coords: &[Point]) -> (Vec<usize>, Vec<Face>) {
    let hull = hull2d(coords);
    let ids: Vec<usize> = hull
        .iter()
        .map(|h| coords.iter().position(|c| c == h).expect("hull vertex from input"))
        .collect();
    let m = hull.len();
    let mut faces = Vec::new();
    for i in 0..m {
        faces.push(Face { dim: 0, vertices: vec![i], normal: None });
    }
    if m >= 2 {
        for i in 0..m {
            let j = (i + 1) % m;
            if m == 2 && i == 1 {
                break; // a segment has one edge
            }
            let dir = crate::point::sub(&hull[j], &hull[i]);
            // CCW order: interior on the left; inward normal (-dy, dx)
            let normal = primitive(&[-dir[1], dir[0]]);
            let mut vs = vec![i, j];
            vs.sort_unstable();
            faces.push(Face { dim: 1, vertices: vs, normal: Some(normal) });
        }
    }
    (ids, faces)
}

fn hull_structure_3d(coords: &[Point]) -> Result<(Vec<usize>, Vec<Face>)> {
    // Extreme points via the LP oracle.
    let rats: Vec<RatPoint> = coords.iter().map(|p| int_to_rat_point(p)).collect();
    let ids: Vec<usize> = (0..coords.len())
        .filter(|&i| {
            let others: Vec<RatPoint> = rats
                .iter()
                .enumerate()
                .filter_map(|(j, q)| (j != i).then(|| q.clone()))
                .collect();
            !in_convex_hull(&others, &rats[i])
        })
        .collect();
    let verts: Vec<Point> = ids.iter().map(|&i| coords[i].clone()).collect();
    let n = verts.len();
    // Candidate facet planes from vertex triples; keep supporting ones.
    let mut planes: BTreeSet<(Point, i128)> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let u = crate::point::sub(&verts[j], &verts[i]);
                let v = crate::point::sub(&verts[k], &verts[i]);
                let nx = u[1] as i128 * v[2] as i128 - u[2] as i128 * v[1] as i128;
                let ny = u[2] as i128 * v[0] as i128 - u[0] as i128 * v[2] as i128;
                let nz = u[0] as i128 * v[1] as i128 - u[1] as i128 * v[0] as i128;
                if nx == 0 && ny == 0 && nz == 0 {
                    continue;
                }
                let nvec = primitive(&[
                    i64::try_from(nx).map_err(|_| Error::invalid("normal overflow"))?,
                    i64::try_from(ny).map_err(|_| Error::invalid("normal overflow"))?,
                    i64::try_from(nz).map_err(|_| Error::invalid("normal overflow"))?,
                ]);
                for cand in [nvec.clone(), crate::point::neg(&nvec)] {
                    let off = crate::point::dot(&cand, &verts[i]);
                    // supporting with inward normal: all vertices on ≥ side
                    if verts.iter().all(|w| crate::point::dot(&cand, w) >= off) {
                        planes.insert((cand.clone(), off));
                    }
                }
            }
        }
    }
    let mut faces: Vec<Face> = Vec::new();
    for i in 0..n {
        faces.push(Face { dim: 0, vertices: vec![i], normal: None });
    }
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (normal, off) in &planes {
        let members: Vec<usize> = (0..n)
            .filter(|&i| crate::point::dot(normal, &verts[i]) == *off)
            .collect();
        if members.len() < 3 {
            continue; // touches an edge or vertex only, not a facet
        }
        // Order the facet polygon: project to the two coordinates spanning it.
        let ring = order_facet_ring(&verts, &members, normal);
        for w in 0..ring.len() {
            let mut e = vec![ring[w], ring[(w + 1) % ring.len()]];
            e.sort_unstable();
            edges.insert(e);
        }
        let mut vs = members.clone();
        vs.sort_unstable();
        faces.push(Face { dim: 2, vertices: vs, normal: Some(normal.clone()) });
    }
    for e in edges {
        faces.push(Face { dim: 1, vertices: e, normal: None });
    }
    Ok((ids, faces))
}

/// Cyclic order of a facet's vertices around its centroid (exact: sort by
/// angle via cross-product comparisons in the facet plane).
fn order_facet_ring(verts: &[Point], members: &[usize], normal: &Point) -> Vec<usize> {
    // pick two axes spanning the plane: drop the coordinate with the largest
    // |normal| component
    let drop = (0..3).max_by_key(|&i| normal[i].abs()).unwrap();
    let axes: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj = |i: usize| -> (i128, i128) {
        (verts[i][axes[0]] as i128, verts[i][axes[1]] as i128)
    };
    // centroid times |members| to stay integral
    let m = members.len() as i128;
    let (mut cx, mut cy) = (0i128, 0i128);
    for &i in members {
        let (x, y) = proj(i);
        cx += x;
        cy += y;
    }
    let mut ring = members.to_vec();
    ring.sort_by(|&a, &b| {
        let (ax, ay) = proj(a);
        let (bx, by) = proj(b);
        let (ax, ay) = (ax * m - cx, ay * m - cy);
        let (bx, by) = (bx * m - cx, by * m - cy);
        let half = |x: i128, y: i128| y < 0 || (y == 0 && x < 0);
        let (ha, hb) = (half(ax, ay), half(bx, by));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let cross = ax * by - ay * bx;
        cross.cmp(&0).reverse()
    });
    ring
}

/// Vertices plus facets (only) for full-rank inputs of dimension ≥ 4:
/// candidate hyperplanes from vertex d-subsets, kept when supporting.
fn hull_structure_nd(coords: &[Point], dim: usize) -> Result<(Vec<usize>, Vec<Face>)> {
    let rats: Vec<RatPoint> = coords.iter().map(|p| int_to_rat_point(p)).collect();
    let ids: Vec<usize> = (0..coords.len())
        .filter(|&i| {
            let others: Vec<RatPoint> = rats
                .iter()
                .enumerate()
                .filter_map(|(j, q)| (j != i).then(|| q.clone()))
                .collect();
            !in_convex_hull(&others, &rats[i])
        })
        .collect();
    let verts: Vec<Point> = ids.iter().map(|&i| coords[i].clone()).collect();
    let n = verts.len();
    let mut faces: Vec<Face> = Vec::new();
    for i in 0..n {
        faces.push(Face { dim: 0, vertices: vec![i], normal: None });
    }
    let mut seen: BTreeSet<(Point, i128)> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    if n < dim {
        return Ok((ids, faces));
    }
    loop {
        let base = &verts[subset[0]];
        let dirs: Vec<RatPoint> = subset[1..]
            .iter()
            .map(|&i| int_to_rat_point(&crate::point::sub(&verts[i], base)))
            .collect();
        if let Ok(normal) = rational_normal(&dirs, dim) {
            let mut denom = BigInt::from(1);
            for x in &normal {
                denom = lcm_big(&denom, x.denom());
            }
            let ints: Point = normal
                .iter()
                .map(|x| {
                    let v = (x * BigRational::from_integer(denom.clone())).to_integer();
                    i64::try_from(v).map_err(|_| Error::invalid("normal overflow"))
                })
                .collect::<Result<Point>>()?;
            let nvec = primitive(&ints);
            for cand in [nvec.clone(), crate::point::neg(&nvec)] {
                let off = crate::point::dot(&cand, base);
                if verts.iter().all(|w| crate::point::dot(&cand, w) >= off)
                    && seen.insert((cand.clone(), off))
                {
                    let members: Vec<usize> = (0..n)
                        .filter(|&i| crate::point::dot(&cand, &verts[i]) == off)
                        .collect();
                    if members.len() >= dim {
                        faces.push(Face {
                            dim: dim - 1,
                            vertices: members,
                            normal: Some(cand),
                        });
                    }
                }
            }
        }
        // next d-subset in lexicographic order
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok((ids, faces));
            }
            i -= 1;
            if subset[i] < n - (dim - i) {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact rank computation: a maximal independent subset of integer vectors.
fn independent_subset(dirs: &[Point], d: usize) -> Vec<Point> {
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut picked: Vec<Point> = Vec::new();
    for v in dirs {
        if picked.len() == d {
            break;
        }
        let mut w: Vec<BigRational> = int_to_rat_point(v);
        // reduce against current basis (each basis vector has a pivot column)
        for b in &basis {
            let pivot = b.iter().position(|x| !x.is_zero()).unwrap();
            if !w[pivot].is_zero() {
                let f = &w[pivot] / &b[pivot];
                for i in 0..d {
                    let val = &w[i] - &f * &b[i];
                    w[i] = val;
                }
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            basis.push(w);
            picked.push(v.clone());
        }
    }
    picked
}

/// Coordinates of `p` in the affine frame (origin, basis). Exact solve.
fn affine_coordinates(origin: &Point, basis: &[Point], p: &Point) -> Result<RatPoint> {
    let d = origin.len();
    let k = basis.len();
    let rhs = crate::point::sub(p, origin);
    // solve basisᵀ · x = rhs in the least-squares-free exact sense: the
    // system is consistent because p lies in the affine hull.
    let mut mat: Vec<BigRational> = Vec::with_capacity(d * k);
    for i in 0..d {
        for b in basis {
            mat.push(BigRational::from_integer(BigInt::from(b[i])));
        }
    }
    let mut rhs_rat: Vec<BigRational> =
        rhs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    // Gaussian elimination on the d×k system
    let mut row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..k {
        let pivot = (row..d).find(|&r| !mat[r * k + col].is_zero());
        let Some(pr) = pivot else { continue };
        if pr != row {
            for c in 0..k {
                mat.swap(pr * k + c, row * k + c);
            }
            rhs_rat.swap(pr, row);
        }
        let pv = mat[row * k + col].clone();
        for c in 0..k {
            let v = &mat[row * k + c] / &pv;
            mat[row * k + c] = v;
        }
        let v = &rhs_rat[row] / &pv;
        rhs_rat[row] = v;
        for r in 0..d {
            if r != row && !mat[r * k + col].is_zero() {
                let f = mat[r * k + col].clone();
                for c in 0..k {
                    let v = &mat[r * k + c] - &f * &mat[row * k + c];
                    mat[r * k + c] = v;
                }
                let v = &rhs_rat[r] - &f * &rhs_rat[row];
                rhs_rat[r] = v;
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == d {
            break;
        }
    }
    let mut x = vec![BigRational::zero(); k];
    for &(r, c) in &pivots {
        x[c] = rhs_rat[r].clone();
    }
    Ok(x)
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(points: &[[i64; 2]]) -> Vec<Point> {
        points.iter().map(|p| p.to_vec()).collect()
    }

    fn rp(points: &[[i64; 2]]) -> Vec<RatPoint> {
        points.iter().map(|p| int_to_rat_point(&p.to_vec())).collect()
    }

    #[test]
    fn unit_square_hull() {
        let pts = rp(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.affine_dim, 2);
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.vertex_faces().count(), 4);
        assert_eq!(h.facets().count(), 4);
        // bottom edge inward normal is (0,1)
        let normals: BTreeSet<Point> =
            h.facets().map(|f| f.normal.clone().unwrap()).collect();
        let expect: BTreeSet<Point> =
            [vec![0, 1], vec![0, -1], vec![1, 0], vec![-1, 0]].into_iter().collect();
        assert_eq!(normals, expect);
    }

    #[test]
    fn interior_points_are_dropped() {
        let pts = rp(&[[0, 0], [4, 0], [0, 4], [4, 4], [2, 2], [1, 1], [2, 0]]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
    }

    #[test]
    fn collinear_points_make_a_segment() {
        let pts = rp(&[[0, 0], [1, 0], [2, 0]]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices.len(), 2);
    }

    #[test]
    fn nonpolytope_example_level_one() {
        let pts = ip(&[[0, 0], [0, 1], [0, 2], [1, 0], [1, 2], [1, -2]]);
        let ext = extreme_points(&pts);
        let expect: BTreeSet<Point> =
            [vec![0, 0], vec![0, 2], vec![1, 2], vec![1, -2]].into_iter().collect();
        assert_eq!(ext, expect);
    }

    #[test]
    fn extreme_points_match_lp_oracle() {
        // deterministic pseudo-random point clouds, d = 2
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 17) as i64 - 8
        };
        for _ in 0..12 {
            let pts: Vec<Point> = (0..14).map(|_| vec![rnd(), rnd()]).collect();
            let fast = extreme_points(&pts);
            let rats: Vec<RatPoint> = {
                let dedup: BTreeSet<Point> = pts.iter().cloned().collect();
                dedup.iter().map(|p| int_to_rat_point(p)).collect()
            };
            let oracle: BTreeSet<Point> = extreme_points_rat(&rats)
                .into_iter()
                .map(|p| {
                    p.iter()
                        .map(|x| i64::try_from(x.to_integer()).unwrap())
                        .collect::<Point>()
                })
                .collect();
            assert_eq!(fast, oracle);
        }
    }

    #[test]
    fn cube_face_lattice() {
        let mut pts = Vec::new();
        for x in [0i64, 2] {
            for y in [0i64, 2] {
                for z in [0i64, 2] {
                    pts.push(int_to_rat_point(&vec![x, y, z]));
                }
            }
        }
        pts.push(int_to_rat_point(&vec![1, 1, 1])); // interior
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.affine_dim, 3);
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets().count(), 6);
        assert_eq!(h.faces.iter().filter(|f| f.dim == 1).count(), 12);
        assert_eq!(h.vertex_faces().count(), 8);
        for f in h.facets() {
            assert_eq!(f.vertices.len(), 4);
        }
    }

    #[test]
    fn tetrahedron_face_lattice() {
        let pts: Vec<RatPoint> = [[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]]
            .iter()
            .map(|p| int_to_rat_point(&p.to_vec()))
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets().count(), 4);
        assert_eq!(h.faces.iter().filter(|f| f.dim == 1).count(), 6);
    }

    #[test]
    fn containment_via_facets() {
        let pts = rp(&[[0, 0], [2, 0], [0, 2], [2, 2]]);
        let h = convex_hull(&pts).unwrap();
        assert!(h.contains(&int_to_rat_point(&vec![1, 1])));
        assert!(h.contains(&int_to_rat_point(&vec![0, 2])));
        assert!(!h.contains(&int_to_rat_point(&vec![3, 0])));
        // tight facets at a corner: two of them
        assert_eq!(h.tight_facets(&int_to_rat_point(&vec![0, 0])).unwrap().len(), 2);
        assert_eq!(h.tight_facets(&int_to_rat_point(&vec![1, 0])).unwrap().len(), 1);
        assert_eq!(h.tight_facets(&int_to_rat_point(&vec![1, 1])).unwrap().len(), 0);
        assert!(h.tight_facets(&int_to_rat_point(&vec![5, 5])).is_none());
    }
}
