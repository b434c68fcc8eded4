//! Patterns over finite supports, language generation, difference sets,
//! recognizability and period searches, and repetitivity measurements.

mod diffs;
mod language;
mod periods;
mod recog;
mod repet;

pub use diffs::{difference_sets, DifferenceSet};
pub use language::{LanguageEngine, Limits};
pub use periods::period_search;
pub use recog::{recognizability_radius, PhaseTable};
pub use repet::{repetitivity, scan_ball_without_occurrence, Repetitivity};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::point::{add, sub, Point};
use crate::substitution::Letter;

/// A finite configuration: letters on an arbitrary finite set of positions.
pub type Patch = BTreeMap<Point, Letter>;

/// A pattern: a total letter assignment on a canonical (sorted) support.
/// Supports compare as sets, so patterns order and hash consistently.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    support: Vec<Point>,
    letters: Vec<Letter>,
}

impl Pattern {
    /// Build from parallel position/letter lists (sorted internally).
    pub fn new(support: Vec<Point>, letters: Vec<Letter>) -> Self {
        assert_eq!(support.len(), letters.len());
        let mut pairs: Vec<(Point, Letter)> = support.into_iter().zip(letters).collect();
        pairs.sort();
        pairs.dedup_by(|a, b| {
            assert!(a.0 != b.0 || a.1 == b.1, "conflicting letters at one position");
            a.0 == b.0
        });
        let (support, letters) = pairs.into_iter().unzip();
        Pattern { support, letters }
    }

    pub fn from_patch(patch: &Patch) -> Self {
        Pattern {
            support: patch.keys().cloned().collect(),
            letters: patch.values().copied().collect(),
        }
    }

    /// Extract the sub-pattern on `shape` shifted by `offset`; `None` when
    /// the shifted shape is not contained in the patch.
    pub fn extract(patch: &Patch, shape: &[Point], offset: &[i64]) -> Option<Pattern> {
        let letters: Option<Vec<Letter>> =
            shape.iter().map(|p| patch.get(&add(p, offset)).copied()).collect();
        Some(Pattern { support: shape.to_vec(), letters: letters? })
    }

    pub fn support(&self) -> &[Point] {
        &self.support
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, p: &[i64]) -> Option<Letter> {
        self.support
            .binary_search_by(|q| q.as_slice().cmp(p))
            .ok()
            .map(|i| self.letters[i])
    }

    pub fn to_patch(&self) -> Patch {
        self.support.iter().cloned().zip(self.letters.iter().copied()).collect()
    }

    /// Restriction to a sub-shape (must be contained in the support).
    pub fn restrict(&self, shape: &[Point]) -> Option<Pattern> {
        let letters: Option<Vec<Letter>> = shape.iter().map(|p| self.get(p)).collect();
        Some(Pattern { support: shape.to_vec(), letters: letters? })
    }

    /// The same pattern with support translated by `t`.
    pub fn translate(&self, t: &[i64]) -> Pattern {
        Pattern {
            support: self.support.iter().map(|p| add(p, t)).collect(),
            letters: self.letters.clone(),
        }
    }
}

/// All positions `o` such that the pattern occurs in the patch at `o`
/// (i.e. `patch[o + p] = pattern[p]` on the whole support).
pub fn occurrences(patch: &Patch, pattern: &Pattern) -> Vec<Point> {
    if pattern.is_empty() || patch.is_empty() {
        return Vec::new();
    }
    let anchor = &pattern.support()[0];
    let mut out = Vec::new();
    for (pos, &letter) in patch.iter() {
        if letter != pattern.letters()[0] {
            continue;
        }
        let o = sub(pos, anchor);
        let ok = pattern
            .support()
            .iter()
            .zip(pattern.letters())
            .all(|(p, &l)| patch.get(&add(p, &o)) == Some(&l));
        if ok {
            out.push(o);
        }
    }
    out
}

/// Sort a shape into the canonical order used for pattern supports.
pub fn canonical_shape(shape: &[Point]) -> Vec<Point> {
    let mut s: Vec<Point> = shape.to_vec();
    s.sort();
    s.dedup();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extraction_and_occurrences() {
        let mut patch: Patch = Patch::new();
        // checkerboard on [0,3]²
        for x in 0..4i64 {
            for y in 0..4i64 {
                patch.insert(vec![x, y], ((x + y) % 2) as usize);
            }
        }
        let shape = canonical_shape(&[vec![0, 0], vec![1, 0]]);
        let p = Pattern::extract(&patch, &shape, &[0, 0]).unwrap();
        assert_eq!(p.letters(), &[0, 1]);
        let occ = occurrences(&patch, &p);
        // occurs wherever x+y even and x ≤ 2
        assert_eq!(occ.len(), 6);
        assert!(Pattern::extract(&patch, &shape, &[3, 0]).is_none());
    }

    #[test]
    fn pattern_canonical_order() {
        let a = Pattern::new(vec![vec![1, 0], vec![0, 0]], vec![7, 3]);
        let b = Pattern::new(vec![vec![0, 0], vec![1, 0]], vec![3, 7]);
        assert_eq!(a, b);
        assert_eq!(a.get(&[1, 0]), Some(7));
        assert_eq!(a.get(&[2, 0]), None);
    }
}
