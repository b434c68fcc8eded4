use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::patterns::{LanguageEngine, Pattern};
use crate::point::{add, ball, Point};

/// The phase-deduction table of a recognizability radius: every language
/// pattern on `B(0,R) ∩ Z^d` occurring in `ζ(X)` at phase `f` determines `f`.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    pub radius: i64,
    pub shape: Vec<Point>,
    /// window pattern (re-centered at the phase position) → digit index of
    /// the phase `f ∈ F₁`.
    pub table: BTreeMap<Pattern, usize>,
}

/// Bounded search for a recognizability radius: the least `R ≤ r_max` such
/// that the level-1 annotated window → phase relation is a function. Returns
/// `None` when no radius up to the bound works (which includes genuinely
/// periodic inputs, where no radius ever works).
pub fn recognizability_radius(
    eng: &mut LanguageEngine<'_>,
    r_max: i64,
) -> Result<Option<PhaseTable>> {
    for r in 1..=r_max.max(0) {
        if let Some(table) = phase_table_at(eng, r)? {
            return Ok(Some(table));
        }
    }
    Ok(None)
}

/// Try one radius: collect `(window at phase f, f)` pairs from `ζ` applied to
/// all source windows that can surround a phase position, and require the
/// relation to be single-valued.
pub fn phase_table_at(eng: &mut LanguageEngine<'_>, r: i64) -> Result<Option<PhaseTable>> {
    let sub = eng.substitution();
    let shape = ball(sub.dim(), (r as i128) * (r as i128));
    // Source shape: digit quotients of F₁ + B(0,r), so that every point of
    // f + B(0,r) of ζ(y) is determined by y on the source shape.
    let mut source: BTreeSet<Point> = BTreeSet::new();
    for f in sub.support() {
        for b in &shape {
            source.insert(sub.digits().quotient(&add(f, b)));
        }
    }
    let source: Vec<Point> = source.into_iter().collect();
    let lang = eng.language(&source)?;
    let mut table: BTreeMap<Pattern, usize> = BTreeMap::new();
    for w in &lang {
        let patch = sub.substitute_cells(&w.to_patch());
        for (digit, f) in sub.support().iter().enumerate() {
            let window = Pattern::extract(&patch, &shape, f).ok_or_else(|| {
                Error::internal("phase window escapes the substituted source patch")
            })?;
            match table.get(&window) {
                Some(&prev) if prev != digit => return Ok(None),
                Some(_) => {}
                None => {
                    table.insert(window, digit);
                }
            }
        }
    }
    Ok(Some(PhaseTable { radius: r, shape, table }))
}

impl PhaseTable {
    /// Deduce the phase of the origin of a patch, reading its `B(0,R)`
    /// window. `None` when the window is incomplete or unknown.
    pub fn phase_at(&self, patch: &crate::patterns::Patch, pos: &[i64]) -> Option<usize> {
        let window = Pattern::extract(patch, &self.shape, pos)?;
        self.table.get(&window).copied()
    }
}
