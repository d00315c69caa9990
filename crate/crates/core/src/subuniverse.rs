//! Enumeration of subuniverses, either exhaustively (by adding one
//! generator at a time to every subuniverse found so far) or as the
//! closures of all small generator sets.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use crate::algebra::FiniteAlgebra;
use crate::closure::close_vectors;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every subuniverse.
    Exhaustive,
    /// Closures of generator sets of at most this size.
    Generators(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub visited: usize,
    /// False when the cap or the visitor stopped the search, or when
    /// only generator sets were tried.
    pub complete: bool,
    pub stopped_by_visitor: bool,
}

fn close(alg: &FiniteAlgebra, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let c = close_vectors(alg, 1, gens.into_iter().map(|g| vec![g]), usize::MAX);
    let mut u: Vec<usize> = c.elems.into_iter().map(|v| v[0]).collect();
    u.sort_unstable();
    u
}

/// Calls `visit` on each distinct nonempty subuniverse (ascending element
/// lists) in a deterministic order, at most `cap` times.
pub fn for_each_subuniverse<F>(alg: &FiniteAlgebra, mode: Enumeration, cap: usize, mut visit: F) -> SearchStats
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = alg.size();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stats = SearchStats {
        visited: 0,
        complete: true,
        stopped_by_visitor: false,
    };
    let mut emit = |u: Vec<usize>, stats: &mut SearchStats, seen: &mut HashSet<Vec<usize>>| -> Option<Vec<usize>> {
        if u.is_empty() || seen.contains(&u) {
            return None;
        }
        if stats.visited >= cap {
            stats.complete = false;
            return None;
        }
        seen.insert(u.clone());
        stats.visited += 1;
        if visit(&u).is_break() {
            stats.stopped_by_visitor = true;
            stats.complete = false;
        }
        Some(u)
    };
    match mode {
        Enumeration::Exhaustive => {
            let mut queue = VecDeque::new();
            let seeds: Vec<Vec<usize>> = if alg.has_constants() {
                vec![close(alg, [])]
            } else {
                (0..n).map(|x| close(alg, [x])).collect()
            };
            for u in seeds {
                if let Some(u) = emit(u, &mut stats, &mut seen) {
                    queue.push_back(u);
                }
                if stats.stopped_by_visitor || !stats.complete {
                    return stats;
                }
            }
            while let Some(u) = queue.pop_front() {
                for x in 0..n {
                    if u.binary_search(&x).is_ok() {
                        continue;
                    }
                    let bigger = close(alg, u.iter().copied().chain([x]));
                    if let Some(b) = emit(bigger, &mut stats, &mut seen) {
                        queue.push_back(b);
                    }
                    if stats.stopped_by_visitor || !stats.complete {
                        return stats;
                    }
                }
            }
        }
        Enumeration::Generators(k) => {
            stats.complete = false;
            if alg.has_constants() {
                emit(close(alg, []), &mut stats, &mut seen);
            }
            let mut gens: Vec<usize> = Vec::new();
            for size in 1..=k.min(n) {
                gens.clear();
                gens.extend(0..size);
                loop {
                    emit(close(alg, gens.iter().copied()), &mut stats, &mut seen);
                    if stats.stopped_by_visitor || stats.visited >= cap {
                        return stats;
                    }
                    // Next combination in lexicographic order.
                    let mut i = size;
                    while i > 0 && gens[i - 1] == n - size + i - 1 {
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                    gens[i - 1] += 1;
                    for j in i..size {
                        gens[j] = gens[j - 1] + 1;
                    }
                }
            }
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn collect(alg: &FiniteAlgebra, mode: Enumeration) -> (Vec<Vec<usize>>, SearchStats) {
        let mut out = Vec::new();
        let stats = for_each_subuniverse(alg, mode, 10_000, |u| {
            out.push(u.to_vec());
            ControlFlow::Continue(())
        });
        out.sort();
        (out, stats)
    }

    #[test]
    fn subgroups_of_z4() {
        let (subs, stats) = collect(&corpus::cyclic_group(4), Enumeration::Exhaustive);
        assert_eq!(subs, vec![vec![0], vec![0, 1, 2, 3], vec![0, 2]]);
        assert!(stats.complete);
    }

    #[test]
    fn every_nonempty_subset_of_a_set() {
        let (subs, _) = collect(&corpus::no_ops(4), Enumeration::Exhaustive);
        assert_eq!(subs.len(), 15);
        let (small, stats) = collect(&corpus::no_ops(4), Enumeration::Generators(2));
        assert_eq!(small.len(), 10);
        assert!(!stats.complete);
    }

    #[test]
    fn cap_and_early_stop() {
        let stats = for_each_subuniverse(&corpus::no_ops(5), Enumeration::Exhaustive, 7, |_| ControlFlow::Continue(()));
        assert_eq!(stats.visited, 7);
        assert!(!stats.complete);
        let stats = for_each_subuniverse(&corpus::no_ops(5), Enumeration::Exhaustive, 100, |u| {
            if u.len() == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(stats.stopped_by_visitor);
    }
}
