use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::patterns::{LanguageEngine, Pattern};
use crate::point::Point;

/// A set of differences: a nonempty `W ⊆ K_ζ` realized as the exact
/// disagreement set of two admissible `K_ζ`-patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    /// The positions of disagreement, sorted.
    pub positions: Vec<Point>,
    /// One witnessing pair: equal off `positions`, different on them.
    pub witnesses: (Pattern, Pattern),
}

/// All distinct nonempty difference sets over `K_ζ`, each with one witness
/// pair, ordered by (cardinality, lexicographic positions) — smallest first.
pub fn difference_sets(eng: &mut LanguageEngine<'_>) -> Result<Vec<DifferenceSet>> {
    let k = eng.k_set().to_vec();
    let lang = eng.language(&k)?;
    let mut found: BTreeMap<Vec<Point>, (Pattern, Pattern)> = BTreeMap::new();
    for (i, w1) in lang.iter().enumerate() {
        for w2 in lang.iter().skip(i + 1) {
            let diff: Vec<Point> = k
                .iter()
                .filter(|p| w1.get(p) != w2.get(p))
                .cloned()
                .collect();
            if diff.is_empty() {
                continue;
            }
            found.entry(diff).or_insert_with(|| (w1.clone(), w2.clone()));
        }
    }
    let mut out: Vec<DifferenceSet> = found
        .into_iter()
        .map(|(positions, witnesses)| DifferenceSet { positions, witnesses })
        .collect();
    out.sort_by(|a, b| {
        (a.positions.len(), &a.positions).cmp(&(b.positions.len(), &b.positions))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::Limits;
    use crate::substitution::test_subs::*;

    fn positions(sets: &[DifferenceSet]) -> Vec<Vec<Point>> {
        sets.iter().map(|s| s.positions.clone()).collect()
    }

    #[test]
    fn witnesses_verify_exactly() {
        let s = table();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let k = eng.k_set().to_vec();
        let sets = difference_sets(&mut eng).unwrap();
        for ds in &sets {
            let (w1, w2) = &ds.witnesses;
            for p in &k {
                let differs = w1.get(p) != w2.get(p);
                assert_eq!(differs, ds.positions.contains(p));
            }
            assert!(eng.contains(w1).unwrap());
            assert!(eng.contains(w2).unwrap());
            assert!(!ds.positions.is_empty());
        }
    }

    #[test]
    fn tm2d_difference_sets() {
        // The eight even-parity 2×2 windows realize every even-cardinality
        // subset of K: the six pairs and the full set.
        let s = tm2d();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let sets = difference_sets(&mut eng).unwrap();
        assert_eq!(sets.len(), 7);
        assert!(sets.iter().all(|d| d.positions.len() % 2 == 0));
        // the five sets singled out in the classical discussion are present
        let expect: Vec<Vec<Point>> = vec![
            vec![vec![-1, -1], vec![-1, 0]],
            vec![vec![-1, -1], vec![0, 0]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![-1, 0], vec![0, 0]],
            vec![vec![0, -1], vec![0, 0]],
        ];
        let have = positions(&sets);
        for e in expect {
            assert!(have.contains(&e), "missing difference set {e:?}");
        }
    }

    #[test]
    fn table_difference_sets_are_all_but_four() {
        // P(K) minus the empty set, the full set and the two diagonals.
        let s = table();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        let sets = difference_sets(&mut eng).unwrap();
        let have = positions(&sets);
        assert_eq!(have.len(), 12);
        let k = eng.k_set().to_vec();
        let full: Vec<Point> = k.clone();
        let diag: Vec<Point> = vec![vec![-1, -1], vec![0, 0]];
        let antidiag: Vec<Point> = vec![vec![-1, 0], vec![0, -1]];
        assert!(!have.contains(&full));
        assert!(!have.contains(&diag));
        assert!(!have.contains(&antidiag));
        // singletons and triples all realized
        for p in &k {
            assert!(have.contains(&vec![p.clone()]));
            let triple: Vec<Point> = k.iter().filter(|q| q != &p).cloned().collect();
            assert!(have.contains(&triple));
        }
    }

    #[test]
    fn single_letter_alphabet_has_none() {
        use crate::lattice::IntMatrix;
        use crate::substitution::Substitution;
        let l = IntMatrix::new(2, vec![2, 0, 0, 2]).unwrap();
        let s = Substitution::new(
            vec!["a".into()],
            l,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 0, 0, 0]],
            false,
        )
        .unwrap();
        let mut eng = LanguageEngine::new(&s, Limits::default()).unwrap();
        assert!(difference_sets(&mut eng).unwrap().is_empty());
    }
}
