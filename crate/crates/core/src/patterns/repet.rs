use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::patterns::{LanguageEngine, Patch, Pattern};
use crate::point::{add, ball, isqrt, norm_sq, sub, Point};

/// Empirical repetitivity measurements: for each requested radius `R`, the
/// largest (over sampled centers) distance from a center to the nearest
/// occurrence of some `B(0,R)`-pattern inside one master patch.
#[derive(Debug, Clone)]
pub struct Repetitivity {
    pub radii: Vec<i64>,
    /// Empirical `M(R)` values (ceiled Euclidean distances).
    pub values: Vec<i64>,
    /// Level of the master patch used.
    pub patch_level: u32,
    /// Number of sampled centers.
    pub centers: usize,
}

/// Measure `M(R)` for each `R` in `radii` on a shared master patch, with a
/// deterministic center subsample. The patch is widened automatically until
/// every pattern of every requested radius occurs in it.
pub fn repetitivity(
    eng: &mut LanguageEngine<'_>,
    radii: &[i64],
    seed: u64,
    max_centers: usize,
) -> Result<Repetitivity> {
    if radii.is_empty() {
        return Err(Error::invalid("no radii requested"));
    }
    let r_max = *radii.iter().max().unwrap();
    let d = eng.substitution().dim();
    // Grow the master patch until all patterns occur (cap via engine limits).
    let mut grow = 4 * r_max.max(1);
    let (mut patch, mut level) = eng.master_patch(grow)?;
    'grow: loop {
        for &r in radii {
            let shape = ball(d, (r as i128) * (r as i128));
            let lang = eng.language(&shape)?;
            let buckets = occurrence_buckets(&patch, &shape, &lang);
            if buckets.iter().any(|b| b.is_empty()) {
                grow *= 2;
                let (p, l) = eng.master_patch(grow)?;
                patch = p;
                level = l;
                continue 'grow;
            }
        }
        break;
    }
    // Sample interior centers deterministically.
    let margin = r_max + 1;
    let margin_ball = ball(d, (margin as i128) * (margin as i128));
    let interior: Vec<Point> = patch
        .keys()
        .filter(|p| margin_ball.iter().all(|b| patch.contains_key(&add(p, b))))
        .cloned()
        .collect();
    let centers = sample(&interior, seed, max_centers);
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let shape = ball(d, (r as i128) * (r as i128));
        let lang = eng.language(&shape)?;
        let buckets = occurrence_buckets(&patch, &shape, &lang);
        let mut worst_sq: i128 = 0;
        for c in &centers {
            for b in &buckets {
                let best = b
                    .iter()
                    .map(|o| norm_sq(&sub(o, c)))
                    .min()
                    .expect("patch was widened until every pattern occurs");
                worst_sq = worst_sq.max(best);
            }
        }
        let mut v = isqrt(worst_sq);
        if v * v < worst_sq {
            v += 1;
        }
        values.push(i64::try_from(v).expect("distance overflow"));
    }
    Ok(Repetitivity { radii: radii.to_vec(), values, patch_level: level, centers: centers.len() })
}

/// Positions of each pattern's occurrences in the patch, computed with one
/// scan: every position whose window is complete is bucketed by pattern.
fn occurrence_buckets(patch: &Patch, shape: &[Point], lang: &[Pattern]) -> Vec<Vec<Point>> {
    let index: BTreeMap<&Pattern, usize> = lang.iter().zip(0..).collect();
    let mut buckets: Vec<Vec<Point>> = vec![Vec::new(); lang.len()];
    for pos in patch.keys() {
        if let Some(w) = Pattern::extract(patch, shape, pos) {
            if let Some(&i) = index.get(&w) {
                buckets[i].push(pos.clone());
            }
        }
    }
    buckets
}

fn sample(points: &[Point], seed: u64, max: usize) -> Vec<Point> {
    if points.len() <= max {
        return points.to_vec();
    }
    let mut state = seed | 1;
    let mut picked: alloc::collections::BTreeSet<usize> = Default::default();
    while picked.len() < max {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        picked.insert((state % points.len() as u64) as usize);
    }
    picked.into_iter().map(|i| points[i].clone()).collect()
}

/// Search the patch for a center `c` such that the ball `B(c, num/den)` lies
/// inside the patch and contains no occurrence of `pattern` (the occurrence's
/// whole support inside the ball). Returns the first such center.
pub fn scan_ball_without_occurrence(
    patch: &Patch,
    pattern: &Pattern,
    num: i64,
    den: i64,
) -> Option<Point> {
    assert!(den > 0 && num >= 0);
    let d = patch.keys().next()?.len();
    // offsets v with ‖v‖ ≤ num/den, exactly: den²‖v‖² ≤ num²
    let n2 = (num as i128) * (num as i128);
    let d2 = (den as i128) * (den as i128);
    let offsets: Vec<Point> = ball(d, n2 / d2 + 1)
        .into_iter()
        .filter(|v| d2 * norm_sq(v) <= n2)
        .collect();
    let occ = crate::patterns::occurrences(patch, pattern);
    'centers: for c in patch.keys() {
        for v in &offsets {
            if !patch.contains_key(&add(c, v)) {
                continue 'centers;
            }
        }
        let ball_contains = |p: &Point| d2 * norm_sq(&sub(p, c)) <= n2;
        let has_occurrence = occ.iter().any(|o| {
            pattern.support().iter().all(|s| ball_contains(&add(o, s)))
        });
        if !has_occurrence {
            return Some(c.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::Limits;
    use crate::substitution::test_subs::*;

    #[test]
    fn m_is_nondecreasing() {
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let rep = repetitivity(&mut eng, &[1, 2, 3], 42, 40).unwrap();
        assert!(rep.values[0] <= rep.values[1]);
        assert!(rep.values[1] <= rep.values[2]);
        assert!(rep.values[0] >= 1);
    }

    #[test]
    fn nonlinear_example_has_empty_balls() {
        // σ^p(w_p) contains a ball of radius 3^p/2 with no occurrence of
        // w_p, for p = 2 (the p = 3 case runs in the acceptance suite).
        let s = sigma_nonlinear();
        let p = 2u32;
        let it = s.iterate(p, 1 << 22).unwrap();
        let sigma_p_a = it.patch(0);
        // w_p = σ^p(a) restricted to the bottom row segment [0, 2^{p-1}] × {0}
        let shape: Vec<Point> = (0..=(1i64 << (p - 1))).map(|x| vec![x, 0]).collect();
        let w_p = Pattern::extract(&sigma_p_a, &shape, &[0, 0]).unwrap();
        // σ^p(w_p)
        let mut patch = w_p.to_patch();
        for _ in 0..p {
            patch = s.substitute_cells(&patch);
        }
        let c = scan_ball_without_occurrence(&patch, &w_p, 3i64.pow(p), 2);
        assert!(c.is_some(), "expected a ball of radius 3^p/2 with no occurrence");
    }

    #[test]
    fn full_patch_has_no_pattern_free_ball_for_single_cells() {
        // Sanity: a single-letter pattern that occurs densely leaves no
        // pattern-free ball of radius 2 in a TM master patch.
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let (patch, _) = eng.master_patch(8).unwrap();
        let zero_cell = Pattern::new(vec![vec![0, 0]], vec![0]);
        assert!(scan_ball_without_occurrence(&patch, &zero_cell, 2, 1).is_none());
    }
}
