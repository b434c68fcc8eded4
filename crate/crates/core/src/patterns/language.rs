use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::patterns::{canonical_shape, Patch, Pattern};
use crate::point::{add, ball, minkowski, sub, Point};
use crate::substitution::{cover_set, k_set, Substitution};

/// Budgets for language generation and patch growth.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of cells in any generated patch.
    pub cell_cap: u64,
    /// Maximum number of distinct patterns per shape.
    pub pattern_cap: u64,
    /// Maximum substitution level explored.
    pub level_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cell_cap: 10_000_000, pattern_cap: 1_000_000, level_cap: 24 }
    }
}

/// Language generator for a primitive substitution.
///
/// The engine computes the language of shape `K̄ = K + C` once, as the
/// fixpoint of the pattern-set operator `W ↦ W ∪ {K̄-subpatterns of ζ(w)}`
/// seeded from the iterates of the letters; the cover property
/// `C + F_n + F_n ⊆ L^n(C) + F_n` guarantees every `K̄`-window of the subshift
/// arises this way. Languages on arbitrary finite shapes are then extracted
/// from `ζ^n` of the base patterns, at the smallest level `n` with
/// `shape ⊆ L^n(K) + F_n`.
pub struct LanguageEngine<'a> {
    sub: &'a Substitution,
    limits: Limits,
    c_set: Vec<Point>,
    k_points: Vec<Point>,
    k_lookup: BTreeSet<Point>,
    k_bar_shape: Vec<Point>,
    base: Vec<Pattern>,
    cache: BTreeMap<Vec<Point>, Vec<Pattern>>,
}

impl<'a> LanguageEngine<'a> {
    pub fn new(sub: &'a Substitution, limits: Limits) -> Result<Self> {
        let (primitive, _) = sub.is_primitive();
        if !primitive {
            return Err(Error::invalid("language generation requires a primitive substitution"));
        }
        let c_set = cover_set(
            sub,
            &[crate::point::zero(sub.dim())],
            &minkowski(sub.support(), sub.support()),
        )?;
        let k_points = k_set(sub)?;
        let k_lookup: BTreeSet<Point> = k_points.iter().cloned().collect();
        let k_bar_shape = minkowski(&k_points, &c_set);
        let mut engine = LanguageEngine {
            sub,
            limits,
            c_set,
            k_points,
            k_lookup,
            k_bar_shape,
            base: Vec::new(),
            cache: BTreeMap::new(),
        };
        engine.base = engine.compute_base()?;
        Ok(engine)
    }

    pub fn substitution(&self) -> &'a Substitution {
        self.sub
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn cover(&self) -> &[Point] {
        &self.c_set
    }

    pub fn k_set(&self) -> &[Point] {
        &self.k_points
    }

    pub fn k_bar(&self) -> &[Point] {
        &self.k_bar_shape
    }

    /// Language of the base shape `K̄`.
    pub fn base_language(&self) -> &[Pattern] {
        &self.base
    }

    fn compute_base(&mut self) -> Result<Vec<Pattern>> {
        let sub = self.sub;
        let shape = self.k_bar_shape.clone();
        // Seed level: smallest N with a translate of K̄ inside F_N.
        let mut seeds: BTreeSet<Pattern> = BTreeSet::new();
        let mut level = 0u32;
        let mut found = false;
        for n in 1..=self.limits.level_cap {
            if (sub.det_abs() as u128).pow(n) > self.limits.cell_cap as u128 {
                break;
            }
            let fn_pts = sub.support_level(n, self.limits.cell_cap)?;
            let fn_set: BTreeSet<Point> = fn_pts.iter().cloned().collect();
            let offsets = offsets_within(&fn_set, &shape);
            if !offsets.is_empty() {
                let it = sub.iterate(n, self.limits.cell_cap)?;
                for a in 0..sub.letter_count() {
                    let patch = it.patch(a);
                    for o in &offsets {
                        seeds.insert(Pattern::extract(&patch, &shape, o).expect("offset checked"));
                    }
                }
                level = n;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::resource(
                "no iterate contains a full base window (is the support Følner?)",
                self.limits.level_cap as u64,
            ));
        }
        let _ = level;
        // Close under taking K̄-subpatterns of ζ(w).
        let target: BTreeSet<Point> = {
            let l = sub.matrix();
            let mut t = BTreeSet::new();
            for p in &shape {
                let lp = l.mul_vec(p);
                for f in sub.support() {
                    t.insert(add(&lp, f));
                }
            }
            t
        };
        let offsets = offsets_within(&target, &shape);
        let mut known: BTreeSet<Pattern> = seeds.clone();
        let mut queue: Vec<Pattern> = seeds.into_iter().collect();
        while let Some(w) = queue.pop() {
            let patch = sub.substitute_cells(&w.to_patch());
            for o in &offsets {
                let p = Pattern::extract(&patch, &shape, o).expect("offset checked");
                if known.insert(p.clone()) {
                    if known.len() as u64 > self.limits.pattern_cap {
                        return Err(Error::resource("base language size", self.limits.pattern_cap));
                    }
                    queue.push(p);
                }
            }
        }
        Ok(known.into_iter().collect())
    }

    /// Smallest level `n` with `shape ⊆ L^n(K) + F_n`.
    pub fn covering_level(&self, shape: &[Point]) -> Result<u32> {
        for n in 0..=self.limits.level_cap {
            let ok = shape.iter().all(|p| {
                let mut cur = p.clone();
                for _ in 0..n {
                    cur = self.sub.digits().quotient(&cur);
                }
                self.k_lookup.contains(&cur)
            });
            if ok {
                return Ok(n);
            }
        }
        Err(Error::resource("covering level for shape", self.limits.level_cap as u64))
    }

    /// The language `L_shape(X_ζ)`, canonical support order, sorted.
    pub fn language(&mut self, shape: &[Point]) -> Result<Vec<Pattern>> {
        let shape = canonical_shape(shape);
        if let Some(hit) = self.cache.get(&shape) {
            return Ok(hit.clone());
        }
        let n = self.covering_level(&shape)?;
        let mut out: BTreeSet<Pattern> = BTreeSet::new();
        if n == 0 {
            // shape ⊆ K ⊆ K̄: restrict the base patterns directly.
            for w in &self.base {
                out.insert(w.restrict(&shape).expect("K ⊆ K̄"));
            }
        } else {
            let cells = (self.k_bar_shape.len() as u128) * (self.sub.det_abs() as u128).pow(n);
            if cells > self.limits.cell_cap as u128 {
                return Err(Error::resource("language patch cells", self.limits.cell_cap));
            }
            // target region L^n(K̄) + F_n and admissible offsets
            let f_n = self.sub.support_level(n, self.limits.cell_cap)?;
            let ln = self.sub.matrix().pow(n);
            let mut target: BTreeSet<Point> = BTreeSet::new();
            for p in &self.k_bar_shape {
                let lp = ln.mul_vec(p);
                for f in &f_n {
                    target.insert(add(&lp, f));
                }
            }
            let offsets = offsets_within(&target, &shape);
            for w in &self.base {
                let mut patch = w.to_patch();
                for _ in 0..n {
                    patch = self.sub.substitute_cells(&patch);
                }
                for o in &offsets {
                    out.insert(Pattern::extract(&patch, &shape, o).expect("offset checked"));
                    if out.len() as u64 > self.limits.pattern_cap {
                        return Err(Error::resource("language size", self.limits.pattern_cap));
                    }
                }
            }
        }
        let result: Vec<Pattern> = out.into_iter().collect();
        self.cache.insert(shape, result.clone());
        Ok(result)
    }

    /// Membership test against the generated language.
    pub fn contains(&mut self, pattern: &Pattern) -> Result<bool> {
        let lang = self.language(pattern.support())?;
        Ok(lang.binary_search(pattern).is_ok())
    }

    /// A legal patch `ζ^n(w₀)` whose support contains `B(0, radius)`, for the
    /// lexicographically first base pattern `w₀`. Returns the patch and the
    /// level used.
    pub fn master_patch(&mut self, radius: i64) -> Result<(Patch, u32)> {
        let ball_pts = ball(self.sub.dim(), (radius as i128) * (radius as i128));
        let n = self.covering_level(&ball_pts)?;
        let cells = (self.k_bar_shape.len() as u128) * (self.sub.det_abs() as u128).pow(n);
        if cells > self.limits.cell_cap as u128 {
            return Err(Error::resource("master patch cells", self.limits.cell_cap));
        }
        let w0 = self.base.first().ok_or_else(|| Error::internal("empty base language"))?;
        let mut patch = w0.to_patch();
        for _ in 0..n {
            patch = self.sub.substitute_cells(&patch);
        }
        Ok((patch, n))
    }

    /// The language on the ball `B(0, r) ∩ Z^d`.
    pub fn ball_language(&mut self, radius: i64) -> Result<Vec<Pattern>> {
        let shape = ball(self.sub.dim(), (radius as i128) * (radius as i128));
        self.language(&shape)
    }
}

/// All offsets `o` with `o + shape ⊆ region`.
pub fn offsets_within(region: &BTreeSet<Point>, shape: &[Point]) -> Vec<Point> {
    if shape.is_empty() {
        return Vec::new();
    }
    let anchor = &shape[0];
    let mut out = Vec::new();
    for q in region {
        let o = sub(q, anchor);
        if shape.iter().all(|p| region.contains(&add(p, &o))) {
            out.push(o);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::test_subs::*;

    #[test]
    fn tm2d_k_language_matches_known_blocks() {
        // The eight 2×2 blocks of the 2-D Thue–Morse language are exactly
        // the even-parity assignments.
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let k = eng.k_set().to_vec();
        let lang = eng.language(&k).unwrap();
        assert_eq!(lang.len(), 8);
        for p in &lang {
            let parity: usize = p.letters().iter().sum();
            assert_eq!(parity % 2, 0, "TM 2×2 windows have even parity");
        }
    }

    #[test]
    fn singleton_shape_gives_alphabet() {
        let s = table();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let lang = eng.language(&[vec![0, 0]]).unwrap();
        assert_eq!(lang.len(), s.letter_count());
    }

    #[test]
    fn language_closed_under_subshapes() {
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let big = canonical_shape(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let small = canonical_shape(&[vec![0, 0], vec![1, 0]]);
        let lang_big = eng.language(&big).unwrap();
        let lang_small = eng.language(&small).unwrap();
        let projected: BTreeSet<Pattern> =
            lang_big.iter().map(|p| p.restrict(&small).unwrap()).collect();
        let small_set: BTreeSet<Pattern> = lang_small.into_iter().collect();
        assert_eq!(projected, small_set);
    }

    #[test]
    fn iterate_windows_are_in_language() {
        // Soundness against direct generation: every shape-window of ζⁿ(a)
        // is in the computed language.
        let s = sigma_nonlinear();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let shape = canonical_shape(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let lang: BTreeSet<Pattern> = eng.language(&shape).unwrap().into_iter().collect();
        let it = s.iterate(3, 1 << 22).unwrap();
        for a in 0..s.letter_count() {
            let patch = it.patch(a);
            let keys: BTreeSet<Point> = patch.keys().cloned().collect();
            for o in offsets_within(&keys, &shape) {
                let w = Pattern::extract(&patch, &shape, &o).unwrap();
                assert!(lang.contains(&w), "window of iterate missing from language");
            }
        }
    }

    #[test]
    fn shifted_shapes_give_translated_languages() {
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let k = eng.k_set().to_vec(); // [-1,0]²
        let box_shape =
            canonical_shape(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let a: BTreeSet<Pattern> = eng.language(&k).unwrap().into_iter().collect();
        let b: BTreeSet<Pattern> = eng
            .language(&box_shape)
            .unwrap()
            .into_iter()
            .map(|p| p.translate(&[-1, -1]))
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn master_patch_contains_ball() {
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let (patch, _) = eng.master_patch(6).unwrap();
        for p in ball(2, 36) {
            assert!(patch.contains_key(&p));
        }
    }
}
