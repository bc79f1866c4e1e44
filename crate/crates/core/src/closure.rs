//! Enumeration of the fixed points of a closure operator on `{0, .., n-1}`.
//!
//! Every closed set `C` is reached from `cl(∅)` by adding the members of `C`
//! one at a time, so a breadth-first search over single-element extensions
//! visits each closed set exactly once. The cost is proportional to the
//! number of closed sets, not to `2^n`.

use std::collections::HashSet;

use crate::bits::{canonicalize, Set};

/// All closed sets of `close`, canonically ordered.
///
/// `close` must be extensive, monotone and idempotent; this is not checked.
pub fn closed_sets<F>(n: usize, mut close: F) -> Vec<Set>
where
    F: FnMut(Set) -> Set,
{
    let start = close(Set::EMPTY);
    let mut seen: HashSet<Set> = HashSet::from([start]);
    let mut queue = vec![start];
    while let Some(cur) = queue.pop() {
        for x in cur.complement(n).iter() {
            let next = close(cur.with(x));
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Set> = seen.into_iter().collect();
    canonicalize(&mut out);
    out
}

/// Least fixpoint of a set of Horn rules `premises → conclusion` above `seed`.
pub fn forward_chain(seed: Set, rules: &[(Set, usize)]) -> Set {
    let mut cur = seed;
    loop {
        let mut next = cur;
        for &(premises, conclusion) in rules {
            if premises.is_subset(next) {
                next.insert(conclusion);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_sets_of_a_chain() {
        // closure = downward closure in 0 < 1 < 2
        let close = |s: Set| match s.iter().max() {
            None => Set::EMPTY,
            Some(m) => Set::full(m + 1),
        };
        let sets = closed_sets(3, close);
        assert_eq!(sets.len(), 4);
    }

    #[test]
    fn forward_chaining_reaches_fixpoint() {
        let rules = vec![(Set::EMPTY, 0), (Set::singleton(0), 1), ([1, 2].into_iter().collect(), 3)];
        assert_eq!(forward_chain(Set::EMPTY, &rules), [0, 1].into_iter().collect());
        assert_eq!(
            forward_chain(Set::singleton(2), &rules),
            [0, 1, 2, 3].into_iter().collect()
        );
    }
}
