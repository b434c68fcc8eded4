//! The substitution model: rules and iteration, classification predicates,
//! filling and cover sets, products, reduction, the pair graph, recoding and
//! invariant orbits.

mod ksets;
mod orbits;
mod pairs;
mod recode;
mod reduce;

pub use ksets::{
    cover_set, cover_set_norm_bound, in_level_set, k_bar, k_set, level_covering_shape,
    opnorm_ceil, rat_ceil_i128, rat_ceil_i64, support_radius_ceil,
};
pub use orbits::{fixed_points, invariant_orbits, InvariantOrbits};
pub use pairs::{
    asymptotic_disjoint_pairs, indistinguishable, pair_graph, periodic_pairs, PairGraph,
    PeriodicPairs,
};
pub use recode::{recode, Recoding};
pub use reduce::{pair_distance, reduce, reducedness, solve_linear, Reducedness};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{is_expansion, DigitSystem, IntMatrix};
use crate::point::{add, Point};

/// Index into the alphabet of a substitution.
pub type Letter = usize;

/// A multidimensional constant-shape substitution: an expansive integer
/// matrix `L`, a fundamental domain `F₁` of `L(Z^d)` containing the origin,
/// and one letter of the alphabet per letter and support position.
///
/// Rule arrays are indexed by the ordered support list, so there is no
/// row/column orientation ambiguity anywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Vec<String>,
    digits: DigitSystem,
    rules: Vec<Vec<Letter>>,
    declared_aperiodic: bool,
}

impl Substitution {
    pub fn new(
        alphabet: Vec<String>,
        l: IntMatrix,
        support: Vec<Point>,
        rules: Vec<Vec<Letter>>,
        declared_aperiodic: bool,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::invalid("empty alphabet"));
        }
        {
            let mut names = alphabet.clone();
            names.sort();
            names.dedup();
            if names.len() != alphabet.len() {
                return Err(Error::invalid("duplicate letter names"));
            }
        }
        if !is_expansion(&l)? {
            return Err(Error::invalid(
                "matrix is not an expansion (an eigenvalue has modulus ≤ 1)",
            ));
        }
        let digits = DigitSystem::new(&l, &support)?;
        if rules.len() != alphabet.len() {
            return Err(Error::invalid("need exactly one rule per letter"));
        }
        for (a, rule) in rules.iter().enumerate() {
            if rule.len() != support.len() {
                return Err(Error::invalid(format!(
                    "rule for letter {} must list {} letters (one per support position)",
                    alphabet[a],
                    support.len()
                )));
            }
            if rule.iter().any(|&b| b >= alphabet.len()) {
                return Err(Error::invalid("rule letter out of range"));
            }
        }
        Ok(Substitution { alphabet, digits, rules, declared_aperiodic })
    }

    pub fn dim(&self) -> usize {
        self.matrix().dim()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.digits.matrix()
    }

    pub fn support(&self) -> &[Point] {
        self.digits.support()
    }

    pub fn rules(&self) -> &[Vec<Letter>] {
        &self.rules
    }

    pub fn rule(&self, a: Letter) -> &[Letter] {
        &self.rules[a]
    }

    pub fn digits(&self) -> &DigitSystem {
        &self.digits
    }

    pub fn declared_aperiodic(&self) -> bool {
        self.declared_aperiodic
    }

    /// The position map `p_f : a ↦ ζ(a)_f` for the f-th support position.
    pub fn position_map(&self, f_index: usize) -> Vec<Letter> {
        self.rules.iter().map(|r| r[f_index]).collect()
    }

    pub fn det_abs(&self) -> u64 {
        u64::try_from(self.matrix().det().unsigned_abs()).expect("determinant overflow")
    }

    /// Support `F_n` of the n-th iterate, in the canonical enumeration order
    /// (`F_n = F₁ + L(F_{n-1})`, outer index over `F_{n-1}`).
    pub fn support_level(&self, n: u32, cell_cap: u64) -> Result<Vec<Point>> {
        self.check_cells(n, cell_cap)?;
        let mut cur: Vec<Point> = vec![crate::point::zero(self.dim())];
        for _ in 0..n {
            cur = self.expand_support(&cur);
        }
        Ok(cur)
    }

    fn expand_support(&self, prev: &[Point]) -> Vec<Point> {
        let l = self.matrix();
        let mut next = Vec::with_capacity(prev.len() * self.support().len());
        for j in prev {
            let lj = l.mul_vec(j);
            for k in self.support() {
                next.push(add(&lj, k));
            }
        }
        next
    }

    fn check_cells(&self, n: u32, cell_cap: u64) -> Result<()> {
        let mut cells: u64 = 1;
        for _ in 0..n {
            cells = cells
                .checked_mul(self.det_abs())
                .ok_or_else(|| Error::resource("iteration cell count", cell_cap))?;
            if cells > cell_cap {
                return Err(Error::resource("iteration cell count", cell_cap));
            }
        }
        Ok(())
    }

    /// The n-th iterate of every letter, laid out on `F_n`.
    pub fn iterate(&self, n: u32, cell_cap: u64) -> Result<Iteration> {
        if n == 0 {
            return Err(Error::invalid("iteration level must be positive"));
        }
        self.check_cells(n, cell_cap)?;
        let mut support: Vec<Point> = self.support().to_vec();
        let mut images: Vec<Vec<Letter>> = self.rules.clone();
        for _ in 1..n {
            support = self.expand_support(&support);
            images = images.iter().map(|img| self.expand_image(img)).collect();
        }
        Ok(Iteration { level: n, support, images })
    }

    fn expand_image(&self, prev: &[Letter]) -> Vec<Letter> {
        let mut next = Vec::with_capacity(prev.len() * self.support().len());
        for &b in prev {
            next.extend_from_slice(&self.rules[b]);
        }
        next
    }

    /// Apply the substitution once to an arbitrary finite configuration.
    pub fn substitute_cells(&self, cells: &BTreeMap<Point, Letter>) -> BTreeMap<Point, Letter> {
        let l = self.matrix();
        let mut out = BTreeMap::new();
        for (pos, &a) in cells {
            let base = l.mul_vec(pos);
            for (i, f) in self.support().iter().enumerate() {
                let prev = out.insert(add(&base, f), self.rules[a][i]);
                debug_assert!(prev.is_none(), "fundamental domain collision");
            }
        }
        out
    }

    /// Primitivity via boolean incidence-matrix powers up to the Wielandt
    /// bound `m² - 2m + 2`; returns the least witnessing power.
    pub fn is_primitive(&self) -> (bool, Option<u32>) {
        let m = self.letter_count();
        if m == 1 {
            return (true, Some(1));
        }
        let mut occ = vec![false; m * m];
        for (a, rule) in self.rules.iter().enumerate() {
            for &b in rule {
                occ[a * m + b] = true;
            }
        }
        let bound = (m * m - 2 * m + 2) as u32;
        let mut power = occ.clone();
        for n in 1..=bound {
            if power.iter().all(|&x| x) {
                return (true, Some(n));
            }
            let mut next = vec![false; m * m];
            for a in 0..m {
                for b in 0..m {
                    if power[a * m + b] {
                        for c in 0..m {
                            if occ[b * m + c] {
                                next[a * m + c] = true;
                            }
                        }
                    }
                }
            }
            power = next;
        }
        (power.iter().all(|&x| x), None)
    }

    /// Every position map is a bijection of the alphabet.
    pub fn is_bijective(&self) -> bool {
        (0..self.support().len()).all(|i| is_permutation(&self.position_map(i)))
    }

    /// Position maps at the extreme points of `conv(F₁)` are bijections.
    pub fn is_bijective_on_extremities(&self) -> bool {
        let ext = crate::geometry::extreme_points(self.support());
        self.support()
            .iter()
            .enumerate()
            .filter(|(_, f)| ext.contains(*f))
            .all(|(i, _)| is_permutation(&self.position_map(i)))
    }

    /// The substitution `ζ^n` as a constant-shape substitution on `F_n`.
    pub fn power(&self, n: u32, cell_cap: u64) -> Result<Substitution> {
        let it = self.iterate(n, cell_cap)?;
        Substitution::new(
            self.alphabet.clone(),
            self.matrix().pow(n),
            it.support,
            it.images,
            self.declared_aperiodic,
        )
    }

    /// Try to exhibit `other` as this substitution with letters renamed
    /// (same matrix and support order required).
    pub fn isomorphic_to(&self, other: &Substitution) -> Option<Vec<Letter>> {
        if self.letter_count() != other.letter_count()
            || self.matrix() != other.matrix()
            || self.support() != other.support()
        {
            return None;
        }
        let m = self.letter_count();
        let mut perm: Vec<Option<Letter>> = vec![None; m];
        let mut used = vec![false; m];
        fn assign(
            a: usize,
            sub: &Substitution,
            other: &Substitution,
            perm: &mut Vec<Option<Letter>>,
            used: &mut Vec<bool>,
        ) -> bool {
            let m = sub.letter_count();
            if a == m {
                return (0..m).all(|x| {
                    let y = perm[x].unwrap();
                    sub.rules[x]
                        .iter()
                        .zip(&other.rules[y])
                        .all(|(&p, &q)| perm[p] == Some(q))
                });
            }
            for b in 0..m {
                if !used[b] {
                    perm[a] = Some(b);
                    used[b] = true;
                    if assign(a + 1, sub, other, perm, used) {
                        return true;
                    }
                    used[b] = false;
                    perm[a] = None;
                }
            }
            false
        }
        if assign(0, self, other, &mut perm, &mut used) {
            Some(perm.into_iter().map(|x| x.unwrap()).collect())
        } else {
            None
        }
    }
}

fn is_permutation(map: &[Letter]) -> bool {
    let mut seen = vec![false; map.len()];
    for &b in map {
        if b >= map.len() || seen[b] {
            return false;
        }
        seen[b] = true;
    }
    true
}

/// The n-th iterate of every letter on the support `F_n`.
#[derive(Debug, Clone)]
pub struct Iteration {
    pub level: u32,
    pub support: Vec<Point>,
    pub images: Vec<Vec<Letter>>,
}

impl Iteration {
    /// The image of one letter as a finite configuration.
    pub fn patch(&self, a: Letter) -> BTreeMap<Point, Letter> {
        self.support
            .iter()
            .cloned()
            .zip(self.images[a].iter().copied())
            .collect()
    }
}

/// The product of one-dimensional constant-length substitutions: alphabet is
/// the cartesian product, the expansion matrix is diagonal in the lengths,
/// the support is the box, and rules act componentwise.
pub fn product_substitution(factors: &[Substitution]) -> Result<Substitution> {
    if factors.is_empty() {
        return Err(Error::invalid("empty product"));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let d = factors.len();
    let mut lengths = Vec::with_capacity(d);
    for f in factors {
        if f.dim() != 1 {
            return Err(Error::invalid("product factors must be one-dimensional"));
        }
        let q = f.support().len() as i64;
        let expected: Vec<Point> = (0..q).map(|i| vec![i]).collect();
        if f.support() != expected.as_slice() {
            return Err(Error::invalid("factor support must be the interval [0, q-1]"));
        }
        lengths.push(q);
    }
    // Alphabet: tuples in lexicographic order, names concatenated.
    let mut letters: Vec<Vec<Letter>> = vec![vec![]];
    for f in factors {
        let mut next = Vec::new();
        for t in &letters {
            for a in 0..f.letter_count() {
                let mut t2 = t.clone();
                t2.push(a);
                next.push(t2);
            }
        }
        letters = next;
    }
    let names: Vec<String> = letters
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .map(|(i, &a)| factors[i].alphabet()[a].clone())
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    let index_of = |t: &[Letter]| -> Letter {
        let mut idx = 0usize;
        for (i, &a) in t.iter().enumerate() {
            idx = idx * factors[i].letter_count() + a;
        }
        idx
    };
    // Support: box in lexicographic order.
    let mut support: Vec<Point> = vec![vec![]];
    for &q in &lengths {
        let mut next = Vec::new();
        for p in &support {
            for i in 0..q {
                let mut p2 = p.clone();
                p2.push(i);
                next.push(p2);
            }
        }
        support = next;
    }
    let mut e = vec![0i64; d * d];
    for i in 0..d {
        e[i * d + i] = lengths[i];
    }
    let l = IntMatrix::new(d, e)?;
    let mut rules = Vec::with_capacity(letters.len());
    for t in &letters {
        let mut rule = Vec::with_capacity(support.len());
        for pos in &support {
            let img: Vec<Letter> = t
                .iter()
                .enumerate()
                .map(|(i, &a)| factors[i].rules[a][pos[i] as usize])
                .collect();
            rule.push(index_of(&img));
        }
        rules.push(rule);
    }
    let aperiodic = factors.iter().all(|f| f.declared_aperiodic());
    Substitution::new(names, l, support, rules, aperiodic)
}
