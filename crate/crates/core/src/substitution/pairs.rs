use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::substitution::{Letter, Substitution};

/// The labeled pair graph `G_ζ`: vertices are ordered letter pairs (diagonal
/// included), with an edge `(a,b) → (ζ(a)_f, ζ(b)_f)` labeled by each support
/// position `f`. The diagonal is forward-closed and every vertex has
/// out-degree `|F₁|`.
#[derive(Debug, Clone)]
pub struct PairGraph {
    letters: usize,
    /// edges[v] = (target vertex, digit label), |F₁| entries per vertex.
    edges: Vec<Vec<(usize, usize)>>,
}

impl PairGraph {
    pub fn vertex(&self, a: Letter, b: Letter) -> usize {
        a * self.letters + b
    }

    pub fn pair(&self, v: usize) -> (Letter, Letter) {
        (v / self.letters, v % self.letters)
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn edges(&self, v: usize) -> &[(usize, usize)] {
        &self.edges[v]
    }

    pub fn is_diagonal(&self, v: usize) -> bool {
        let (a, b) = self.pair(v);
        a == b
    }

    fn off_diagonal_vertices(&self) -> Vec<usize> {
        (0..self.letters * self.letters)
            .filter(|&v| !self.is_diagonal(v))
            .collect()
    }
}

pub fn pair_graph(sub: &Substitution) -> PairGraph {
    let m = sub.letter_count();
    let fcount = sub.support().len();
    let mut edges = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let mut out = Vec::with_capacity(fcount);
            for i in 0..fcount {
                let ta = sub.rule(a)[i];
                let tb = sub.rule(b)[i];
                out.push((ta * m + tb, i));
            }
            edges.push(out);
        }
    }
    PairGraph { letters: m, edges }
}

/// Periodic pairs (off-diagonal vertices lying on a cycle) together with the
/// pair period `n(ζ)`, the lcm of the minimal cycle lengths. The substitution
/// is pair-aperiodic iff `n(ζ) = 1`.
#[derive(Debug, Clone)]
pub struct PeriodicPairs {
    pub pairs: Vec<(Letter, Letter)>,
    pub n_zeta: u64,
}

pub fn periodic_pairs(sub: &Substitution) -> PeriodicPairs {
    let g = pair_graph(sub);
    let mut pairs = Vec::new();
    let mut n_zeta: u64 = 1;
    for v in g.off_diagonal_vertices() {
        if let Some(len) = shortest_cycle_through(&g, v) {
            pairs.push(g.pair(v));
            n_zeta = lcm(n_zeta, len as u64);
        }
    }
    PeriodicPairs { pairs, n_zeta }
}

/// BFS for the shortest cycle through `v`. Cycles through an off-diagonal
/// vertex never touch the diagonal (it is forward-closed), so the search can
/// stay off-diagonal.
fn shortest_cycle_through(g: &PairGraph, v: usize) -> Option<usize> {
    let total = g.letters * g.letters;
    let mut dist = vec![usize::MAX; total];
    let mut queue: alloc::collections::VecDeque<usize> = Default::default();
    for &(t, _) in g.edges(v) {
        if g.is_diagonal(t) {
            continue;
        }
        if t == v {
            return Some(1);
        }
        if dist[t] == usize::MAX {
            dist[t] = 1;
            queue.push_back(t);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &(t, _) in g.edges(u) {
            if g.is_diagonal(t) {
                continue;
            }
            if t == v {
                return Some(dist[u] + 1);
            }
            if dist[t] == usize::MAX {
                dist[t] = dist[u] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pairs admitting arbitrarily long off-diagonal paths, i.e. pairs from which
/// an off-diagonal cycle is reachable without touching the diagonal.
pub fn asymptotic_disjoint_pairs(sub: &Substitution) -> Vec<(Letter, Letter)> {
    let g = pair_graph(sub);
    let on_cycle: BTreeSet<usize> = g
        .off_diagonal_vertices()
        .into_iter()
        .filter(|&v| shortest_cycle_through(&g, v).is_some())
        .collect();
    let mut out = Vec::new();
    for v in g.off_diagonal_vertices() {
        // reachability (including v itself) within the off-diagonal subgraph
        let mut seen = BTreeSet::new();
        let mut stack = vec![v];
        let mut hit = false;
        while let Some(u) = stack.pop() {
            if on_cycle.contains(&u) {
                hit = true;
                break;
            }
            for &(t, _) in g.edges(u) {
                if !g.is_diagonal(t) && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        if hit {
            out.push(g.pair(v));
        }
    }
    out
}

/// Indistinguishability classes under a letter map `τ`: letters `a, b` are
/// indistinguishable iff `τ(ζⁿ(a)) = τ(ζⁿ(b))` for all `n ≥ 0`, decided by
/// reachability in the pair graph: no pair with `τ(c) ≠ τ(d)` may be
/// reachable from `(a, b)`.
pub fn indistinguishable(sub: &Substitution, tau: &[usize]) -> Vec<Vec<Letter>> {
    assert_eq!(tau.len(), sub.letter_count());
    let g = pair_graph(sub);
    let m = sub.letter_count();
    let mut indist = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            let start = g.vertex(a, b);
            let mut seen = BTreeSet::new();
            seen.insert(start);
            let mut stack = vec![start];
            let mut distinguishable = false;
            while let Some(u) = stack.pop() {
                let (c, d) = g.pair(u);
                if tau[c] != tau[d] {
                    distinguishable = true;
                    break;
                }
                for &(t, _) in g.edges(u) {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
            indist[a][b] = !distinguishable;
        }
    }
    // indistinguishability is an equivalence relation; partition the alphabet
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
            if class_of[b] == usize::MAX && indist[a][b] {
                debug_assert!(indist[b][a]);
                class_of[b] = idx;
                class.push(b);
            }
        }
        classes.push(class);
    }
    classes
}
