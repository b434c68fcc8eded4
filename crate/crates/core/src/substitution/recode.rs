use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::patterns::{LanguageEngine, Patch, Pattern};
use crate::point::{add, ball, Point};
use crate::substitution::{cover_set, Letter, Substitution};

/// A conjugate substitution on window patterns, together with the two sliding
/// block codes realizing the conjugacy: the `D`-block code `ψ₁` (a point maps
/// to the letter recording its `D`-window) and the 0-block code `ψ₂` (a
/// recoded letter maps to the letter its window carries at the origin).
#[derive(Debug, Clone)]
pub struct Recoding {
    /// The recoded substitution `ζ^(D)`, same expansion map and support.
    pub substitution: Substitution,
    /// The window shape `D = L(C) + F₁`.
    pub window: Vec<Point>,
    /// Letter `i` of the recoded substitution stands for this `D`-pattern.
    pub letter_patterns: Vec<Pattern>,
    /// Radius the recoding absorbs: block maps of this radius on the original
    /// subshift become 0-block maps on the recoded one.
    pub radius: i64,
}

impl Recoding {
    /// The 0-block inverse code: a recoded letter's letter at the origin.
    pub fn decode_letter(&self, a: Letter) -> Letter {
        self.letter_patterns[a]
            .get(&crate::point::zero(self.substitution.dim()))
            .expect("0 ∈ D")
    }

    /// Apply the `D`-block code to a patch of the original subshift: every
    /// position whose `D`-window is complete receives the window's letter.
    pub fn encode_patch(&self, patch: &Patch) -> Patch {
        let mut out = Patch::new();
        for pos in patch.keys() {
            if let Some(p) = Pattern::extract(patch, &self.window, pos) {
                if let Ok(idx) = self.letter_patterns.binary_search(&p) {
                    out.insert(pos.clone(), idx);
                }
            }
        }
        out
    }

    /// Apply the 0-block code to a recoded patch.
    pub fn decode_patch(&self, patch: &Patch) -> Patch {
        patch.iter().map(|(p, &a)| (p.clone(), self.decode_letter(a))).collect()
    }
}

/// Recode the substitution over `D`-window letters, where
/// `D = L(C) + F₁` and `C` covers `B(0,r) ∩ Z^d` together with the digit
/// quotients of `F₁ + F₁` (the latter make `j + D ⊆ L(D) + F₁` provable for
/// every `j ∈ F₁`, so the recoded rules are total).
pub fn recode(eng: &mut LanguageEngine<'_>, radius: i64) -> Result<Recoding> {
    if radius < 0 {
        return Err(Error::invalid("recoding radius must be nonnegative"));
    }
    let sub = eng.substitution();
    let mut a_set: BTreeSet<Point> = ball(sub.dim(), (radius as i128) * (radius as i128))
        .into_iter()
        .collect();
    for f in sub.support() {
        for g in sub.support() {
            a_set.insert(sub.digits().quotient(&add(f, g)));
        }
    }
    let a_vec: Vec<Point> = a_set.into_iter().collect();
    let c = cover_set(sub, &a_vec, sub.support())?;
    // D = L(C) + F₁
    let mut window: BTreeSet<Point> = BTreeSet::new();
    for cp in &c {
        let lc = sub.matrix().mul_vec(cp);
        for f in sub.support() {
            window.insert(add(&lc, f));
        }
    }
    let window: Vec<Point> = window.into_iter().collect();
    debug_assert!(window.contains(&crate::point::zero(sub.dim())));
    let letter_patterns = eng.language(&window)?;
    let names: Vec<String> = (0..letter_patterns.len()).map(|i| format!("q{i}")).collect();
    let mut rules: Vec<Vec<Letter>> = Vec::with_capacity(letter_patterns.len());
    for p in &letter_patterns {
        let patch = sub.substitute_cells(&p.to_patch());
        let mut rule = Vec::with_capacity(sub.support().len());
        for j in sub.support() {
            let w = Pattern::extract(&patch, &window, j).ok_or_else(|| {
                Error::internal("recoded rule window escapes the substituted patch")
            })?;
            let idx = letter_patterns
                .binary_search(&w)
                .map_err(|_| Error::internal("recoded window not in language"))?;
            rule.push(idx);
        }
        rules.push(rule);
    }
    let substitution = Substitution::new(
        names,
        sub.matrix().clone(),
        sub.support().to_vec(),
        rules,
        sub.declared_aperiodic(),
    )?;
    Ok(Recoding { substitution, window, letter_patterns, radius })
}
