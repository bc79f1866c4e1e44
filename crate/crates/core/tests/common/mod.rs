//! Brute-force oracles. Everything here is computed straight from the
//! definitions by subset enumeration and shares no code with the library's
//! decision procedures beyond table lookups.

#![allow(dead_code)]

use stoneworks_core::bits::canonicalize;
use stoneworks_core::tensys::TensorSystem;
use stoneworks_core::{FinLattice, FinSpace, Set};

pub fn subsets(n: usize) -> impl Iterator<Item = Set> {
    (0u128..1 << n).map(Set::from_bits)
}

pub fn lattice_ideals(l: &FinLattice) -> Vec<Set> {
    let mut v: Vec<Set> = subsets(l.len())
        .filter(|&s| {
            !s.is_empty()
                && s.iter().all(|x| (0..l.len()).all(|y| !l.leq(y, x) || s.contains(y)))
                && s.iter().all(|x| s.iter().all(|y| s.contains(l.join(x, y))))
        })
        .collect();
    canonicalize(&mut v);
    v
}

pub fn lattice_filters(l: &FinLattice) -> Vec<Set> {
    subsets(l.len())
        .filter(|&s| {
            !s.is_empty()
                && s.iter().all(|x| (0..l.len()).all(|y| !l.leq(x, y) || s.contains(y)))
                && s.iter().all(|x| s.iter().all(|y| s.contains(l.meet(x, y))))
        })
        .collect()
}

/// Proper ideal with `x ∧ y ∈ P ⇒ x ∈ P ∨ y ∈ P`.
pub fn is_prime_ideal(l: &FinLattice, p: Set) -> bool {
    p != l.all() && (0..l.len()).all(|x| (0..l.len()).all(|y| !p.contains(l.meet(x, y)) || p.contains(x) || p.contains(y)))
}

/// Does `l` contain a five-element sublattice shaped like `M3` or `N5`?
pub fn has_m3_or_n5(l: &FinLattice) -> bool {
    let n = l.len();
    for bot in 0..n {
        for top in 0..n {
            if bot == top || !l.leq(bot, top) {
                continue;
            }
            let mid: Vec<usize> = (0..n).filter(|&x| x != bot && x != top && l.leq(bot, x) && l.leq(x, top)).collect();
            for &a in &mid {
                for &b in &mid {
                    for &c in &mid {
                        let pairwise = |x: usize, y: usize| l.meet(x, y) == bot && l.join(x, y) == top;
                        // M3: three pairwise complementary elements
                        if a < b && b < c && pairwise(a, b) && pairwise(b, c) && pairwise(a, c) {
                            return true;
                        }
                        // N5: a < b both complementary to c
                        if a != b && l.leq(a, b) && pairwise(a, c) && pairwise(b, c) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Is `map` an order isomorphism between the inclusion orders of two families?
pub fn families_isomorphic(a: &[Set], b: &[Set], map: impl Fn(Set) -> Set) -> bool {
    let image: Vec<Set> = a.iter().map(|&s| map(s)).collect();
    let mut sorted = image.clone();
    canonicalize(&mut sorted);
    sorted.dedup();
    let mut target = b.to_vec();
    canonicalize(&mut target);
    sorted == target
        && a.iter()
            .zip(&image)
            .all(|(&s, &u)| a.iter().zip(&image).all(|(&t, &v)| s.is_subset(t) == u.is_subset(v)))
}

/// Subsets `S` with `q ∈ cl{p}`, `p ∈ S ⇒ q ∈ S`.
pub fn specialization_closed(x: &FinSpace) -> Vec<Set> {
    let n = x.len();
    let closure = |p: usize| {
        x.opens()
            .iter()
            .map(|u| u.complement(n))
            .filter(|c| c.contains(p))
            .fold(Set::full(n), |a, c| a.intersect(c))
    };
    let mut v: Vec<Set> = subsets(n).filter(|&s| s.iter().all(|p| closure(p).is_subset(s))).collect();
    canonicalize(&mut v);
    v
}

pub fn all_topologies(n: usize) -> Vec<Vec<Set>> {
    let full = Set::full(n);
    let inner: Vec<Set> = subsets(n).filter(|&s| !s.is_empty() && s != full).collect();
    subsets(inner.len())
        .filter_map(|pick| {
            let mut opens: Vec<Set> = pick.iter().map(|i| inner[i]).collect();
            opens.push(Set::EMPTY);
            if n > 0 {
                opens.push(full);
            }
            let closed = opens.iter().all(|&u| {
                opens
                    .iter()
                    .all(|&v| opens.contains(&u.union(v)) && opens.contains(&u.intersect(v)))
            });
            closed.then_some(opens)
        })
        .collect()
}

/// All subsets closed under the rules and under tensoring on both sides.
pub fn ts_ideals(ts: &TensorSystem) -> Vec<Set> {
    let n = ts.len();
    let mut v: Vec<Set> = subsets(n)
        .filter(|&s| {
            ts.rules().iter().all(|&(p, c)| !p.is_subset(s) || s.contains(c))
                && s.iter().all(|x| (0..n).all(|a| s.contains(ts.tensor(a, x)) && s.contains(ts.tensor(x, a))))
        })
        .collect();
    canonicalize(&mut v);
    v
}

pub fn products(ts: &TensorSystem, a: Set, b: Set) -> Set {
    a.iter().flat_map(|x| b.iter().map(move |y| ts.tensor(x, y))).collect()
}

/// `x ⊗ E ⊗ y`
pub fn sandwich(ts: &TensorSystem, x: usize, y: usize) -> Set {
    (0..ts.len()).map(|a| ts.tensor(ts.tensor(x, a), y)).collect()
}

pub fn is_semiprime(ts: &TensorSystem, s: Set) -> bool {
    (0..ts.len()).all(|x| s.contains(x) || !sandwich(ts, x, x).is_subset(s))
}

pub fn semiprimes(ts: &TensorSystem) -> Vec<Set> {
    ts_ideals(ts).into_iter().filter(|&s| is_semiprime(ts, s)).collect()
}

fn pair_prime(ts: &TensorSystem, family: &[Set], p: Set) -> bool {
    family
        .iter()
        .all(|&i| family.iter().all(|&j| !products(ts, i, j).is_subset(p) || i.is_subset(p) || j.is_subset(p)))
}

/// `p` meet-prime in the inclusion order of an `∩`-closed `family`.
fn meet_prime_in(family: &[Set], p: Set) -> bool {
    let top = family.iter().fold(Set::EMPTY, |a, &c| a.union(c));
    family.contains(&p)
        && p != top
        && family.iter().all(|&a| {
            family.iter().all(|&b| {
                assert!(family.contains(&a.intersect(b)));
                !a.intersect(b).is_subset(p) || a.is_subset(p) || b.is_subset(p)
            })
        })
}

/// The five clauses of primality for a proper ideal, in the library's order.
pub fn prime_clauses(ts: &TensorSystem, p: Set) -> [bool; 5] {
    let n = ts.len();
    let ideals = ts_ideals(ts);
    let semis = semiprimes(ts);
    [
        pair_prime(ts, &ideals, p),
        meet_prime_in(&ideals, p),
        (0..n).all(|x| (0..n).all(|y| !sandwich(ts, x, y).is_subset(p) || p.contains(x) || p.contains(y))),
        pair_prime(ts, &semis, p),
        meet_prime_in(&semis, p),
    ]
}

pub fn primes(ts: &TensorSystem) -> Vec<Set> {
    let all = Set::full(ts.len());
    let ideals = ts_ideals(ts);
    ideals.iter().copied().filter(|&p| p != all && pair_prime(ts, &ideals, p)).collect()
}

/// Intersection of the primes containing `s`.
pub fn hull(ts: &TensorSystem, s: Set) -> Set {
    primes(ts)
        .into_iter()
        .filter(|p| s.is_subset(*p))
        .fold(Set::full(ts.len()), |a, p| a.intersect(p))
}

/// Down-sets of the poset on `k` points whose strict order is the transitive
/// closure of the `i < j` pairs selected by `edges`, ordered by inclusion.
pub fn downset_lattice(k: usize, edges: u16) -> FinLattice {
    let mut below: Vec<Set> = (0..k).map(Set::singleton).collect();
    let mut bit = 0;
    for j in 0..k {
        for i in 0..j {
            if edges >> bit & 1 == 1 {
                below[j].insert(i);
            }
            bit += 1;
        }
    }
    for j in 0..k {
        for i in 0..j {
            if below[j].contains(i) {
                below[j] = below[j].union(below[i]);
            }
        }
    }
    let mut fam: Vec<Set> = subsets(k).filter(|&s| s.iter().all(|x| below[x].is_subset(s))).collect();
    canonicalize(&mut fam);
    let names = fam.iter().map(|&s| stoneworks_core::set_name(s, |i| i.to_string())).collect();
    FinLattice::from_family(names, &fam).unwrap()
}
