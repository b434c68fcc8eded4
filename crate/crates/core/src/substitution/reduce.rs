use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::substitution::{Letter, Substitution};

/// Exact reducedness data. The pair graph with uniform weight `1/|F₁|` per
/// edge is an absorbing chain with the diagonal absorbing; the limit of the
/// normalized Hamming distances `d_n(ζⁿa, ζⁿb)` is the survival probability
/// (non-absorption) of the pair walk, computed exactly by a rational linear
/// solve on the transient block.
#[derive(Debug, Clone)]
pub struct Reducedness {
    pub reduced: bool,
    /// Minimal survival probability over off-diagonal pairs (1 when the
    /// alphabet has a single letter).
    pub eta: BigRational,
    /// Letter partition: `a ~ b` iff `lim d_n(ζⁿa, ζⁿb) = 0`.
    pub classes: Vec<Vec<Letter>>,
    /// Survival probability per ordered off-diagonal pair.
    pub survival: BTreeMap<(Letter, Letter), BigRational>,
}

pub fn reducedness(sub: &Substitution) -> Reducedness {
    let m = sub.letter_count();
    let fcount = sub.support().len();
    let mut states: Vec<(Letter, Letter)> = Vec::new();
    let mut index: BTreeMap<(Letter, Letter), usize> = BTreeMap::new();
    for a in 0..m {
        for b in 0..m {
            if a != b {
                index.insert((a, b), states.len());
                states.push((a, b));
            }
        }
    }
    if states.is_empty() {
        return Reducedness {
            reduced: true,
            eta: BigRational::one(),
            classes: vec![vec![0]],
            survival: BTreeMap::new(),
        };
    }
    // One-step structure: count transitions to each off-diagonal state and
    // the direct absorption mass.
    let mut trans: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); states.len()];
    let mut absorb_now: Vec<u64> = vec![0; states.len()];
    for (s, &(a, b)) in states.iter().enumerate() {
        for i in 0..fcount {
            let ta = sub.rule(a)[i];
            let tb = sub.rule(b)[i];
            if ta == tb {
                absorb_now[s] += 1;
            } else {
                *trans[s].entry(index[&(ta, tb)]).or_insert(0) += 1;
            }
        }
    }
    // States from which the diagonal is reachable.
    let mut can_reach = vec![false; states.len()];
    {
        let mut stack: Vec<usize> = (0..states.len()).filter(|&s| absorb_now[s] > 0).collect();
        for &s in &stack {
            can_reach[s] = true;
        }
        // reverse edges
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
        for (s, tmap) in trans.iter().enumerate() {
            for (&t, _) in tmap {
                rev[t].push(s);
            }
        }
        while let Some(t) = stack.pop() {
            for &s in &rev[t] {
                if !can_reach[s] {
                    can_reach[s] = true;
                    stack.push(s);
                }
            }
        }
    }
    // Absorption probabilities: zero off the reachable part; on it, solve
    // (I - Q) a = r where Q keeps only transitions inside the reachable part.
    let reach: Vec<usize> = (0..states.len()).filter(|&s| can_reach[s]).collect();
    let pos_of: BTreeMap<usize, usize> = reach.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let n = reach.len();
    let fr = BigRational::from_integer(BigInt::from(fcount as i64));
    let mut absorption: Vec<BigRational> = vec![BigRational::zero(); states.len()];
    if n > 0 {
        let mut mat = vec![BigRational::zero(); n * n];
        let mut rhs = vec![BigRational::zero(); n];
        for (i, &s) in reach.iter().enumerate() {
            mat[i * n + i] = BigRational::one();
            for (&t, &count) in &trans[s] {
                if let Some(&j) = pos_of.get(&t) {
                    let w = BigRational::from_integer(BigInt::from(count as i64)) / &fr;
                    mat[i * n + j] -= w;
                }
            }
            rhs[i] = BigRational::from_integer(BigInt::from(absorb_now[s] as i64)) / &fr;
        }
        let sol = solve_linear(n, mat, rhs).expect("transient block is invertible");
        for (i, &s) in reach.iter().enumerate() {
            absorption[s] = sol[i].clone();
        }
    }
    let mut survival = BTreeMap::new();
    let mut eta = BigRational::one();
    for (s, &(a, b)) in states.iter().enumerate() {
        let surv = BigRational::one() - &absorption[s];
        if surv < eta {
            eta = surv.clone();
        }
        survival.insert((a, b), surv);
    }
    let reduced = !eta.is_zero();
    // Equivalence classes: a ~ b iff survival(a,b) = 0.
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<Vec<Letter>> = Vec::new();
    for a in 0..m {
        if class_of[a] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut class = vec![a];
        class_of[a] = idx;
        for b in a + 1..m {
            if class_of[b] == usize::MAX && survival[&(a, b)].is_zero() {
                class_of[b] = idx;
                class.push(b);
            }
        }
        classes.push(class);
    }
    Reducedness { reduced, eta, classes, survival }
}

/// Exact dense linear solve over the rationals (partial pivoting on the first
/// nonzero entry).
pub fn solve_linear(
    n: usize,
    mut mat: Vec<BigRational>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r * n + col].is_zero())?;
        if pivot != col {
            for c in 0..n {
                mat.swap(pivot * n + c, col * n + c);
            }
            rhs.swap(pivot, col);
        }
        let p = mat[col * n + col].clone();
        for c in col..n {
            let v = &mat[col * n + c] / &p;
            mat[col * n + c] = v;
        }
        let v = &rhs[col] / &p;
        rhs[col] = v;
        for r in 0..n {
            if r == col || mat[r * n + col].is_zero() {
                continue;
            }
            let f = mat[r * n + col].clone();
            for c in col..n {
                let v = &mat[r * n + c] - &f * &mat[col * n + c];
                mat[r * n + c] = v;
            }
            let v = &rhs[r] - &f * &rhs[col];
            rhs[r] = v;
        }
    }
    Some(rhs)
}

/// Exact normalized Hamming distance `d_n(ζⁿa, ζⁿb)`, computed by counting
/// differing positions through the pair walk rather than materializing the
/// iterates.
pub fn pair_distance(sub: &Substitution, a: Letter, b: Letter, n: u32) -> BigRational {
    let m = sub.letter_count();
    let fcount = sub.support().len() as u64;
    // diff[v] = number of positions of F_k where the iterated pair differs
    let mut diff: Vec<BigInt> = (0..m * m)
        .map(|v| if v / m == v % m { BigInt::zero() } else { BigInt::one() })
        .collect();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); m * m];
        for x in 0..m {
            for y in 0..m {
                let mut acc = BigInt::zero();
                for i in 0..sub.support().len() {
                    let tx = sub.rule(x)[i];
                    let ty = sub.rule(y)[i];
                    acc += &diff[tx * m + ty];
                }
                next[x * m + y] = acc;
            }
        }
        diff = next;
    }
    let total = BigInt::from(fcount).pow(n);
    BigRational::new(diff[a * m + b].clone(), total)
}

/// The reduced substitution on the letter classes, together with the letter
/// quotient map. Well-definedness (equivalent letters have positionwise
/// equivalent images) is a theorem; it is re-checked and a violation reports
/// an internal error.
pub fn reduce(sub: &Substitution) -> Result<(Substitution, Vec<usize>)> {
    let red = reducedness(sub);
    let mut class_of = vec![0usize; sub.letter_count()];
    for (idx, class) in red.classes.iter().enumerate() {
        for &a in class {
            class_of[a] = idx;
        }
    }
    let names: Vec<String> = red
        .classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&a| sub.alphabet()[a].clone())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let mut rules: Vec<Vec<Letter>> = Vec::with_capacity(red.classes.len());
    for class in &red.classes {
        let rep = class[0];
        let rule: Vec<Letter> = sub.rule(rep).iter().map(|&t| class_of[t]).collect();
        for &other in &class[1..] {
            let also: Vec<Letter> = sub.rule(other).iter().map(|&t| class_of[t]).collect();
            if also != rule {
                return Err(Error::internal(
                    "reduction is not well defined: equivalent letters map to inequivalent images",
                ));
            }
        }
        rules.push(rule);
    }
    let quotient = Substitution::new(
        names,
        sub.matrix().clone(),
        sub.support().to_vec(),
        rules,
        sub.declared_aperiodic(),
    )?;
    Ok((quotient, class_of))
}
