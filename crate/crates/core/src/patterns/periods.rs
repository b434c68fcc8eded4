use alloc::vec::Vec;

use crate::error::Result;
use crate::patterns::LanguageEngine;
use crate::point::{ball, is_zero, neg, Point};

/// All nontrivial periods `p` with `‖p‖ ≤ n_bound` of the subshift, up to
/// sign (the lexicographically positive representative is reported).
///
/// `p` is a period iff every language pattern on the two-point shape
/// `{0, p}` is constant; the language computation is complete for primitive
/// substitutions, so this decides the bounded period question exactly.
pub fn period_search(eng: &mut LanguageEngine<'_>, n_bound: i64) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    if n_bound <= 0 {
        return Ok(out);
    }
    let candidates = ball(eng.substitution().dim(), (n_bound as i128) * (n_bound as i128));
    for p in candidates {
        if is_zero(&p) || p < neg(&p) {
            continue; // keep the lexicographically positive representative
        }
        let shape = vec![crate::point::zero(eng.substitution().dim()), p.clone()];
        let lang = eng.language(&shape)?;
        let periodic = lang.iter().all(|w| {
            let a = w.get(&shape[0]).unwrap();
            let b = w.get(&shape[1]).unwrap();
            a == b
        });
        if periodic {
            out.push(p);
        }
    }
    Ok(out)
}
