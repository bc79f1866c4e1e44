//! Finite posets and bounded lattices.
//!
//! Elements are identified by opaque string names and addressed internally by
//! their index in declaration order. Structures are immutable once built.

use std::collections::HashMap;

use crate::bits::{Set, CAPACITY};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[i] = { j : i ≤ j }`
    up: Vec<Set>,
    /// `down[i] = { j : j ≤ i }`
    down: Vec<Set>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.len() > CAPACITY {
        return Err(Error::TooLarge(names.len()));
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl FinPoset {
    /// Poset whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let n = names.len();
        let mut up: Vec<Set> = (0..n).map(Set::singleton).collect();
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo)?, lookup(hi)?);
            up[lo].insert(hi);
        }
        // Warshall over bit rows
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Self::from_up_sets(names, index, up)
    }

    /// Poset on `names` ordered by an explicit relation; the relation is
    /// checked to be a partial order.
    pub fn from_relation<F>(names: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_names(&names)?;
        let n = names.len();
        let up: Vec<Set> = (0..n).map(|i| (0..n).filter(|&j| leq(i, j)).collect()).collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotALattice(format!("relation is not reflexive at `{}`", names[i])));
            }
            for j in up[i].iter() {
                if !up[j].is_subset(up[i]) {
                    return Err(Error::NotALattice(format!(
                        "relation is not transitive through `{}`",
                        names[j]
                    )));
                }
            }
        }
        Self::from_up_sets(names, index, up)
    }

    fn from_up_sets(names: Vec<String>, index: HashMap<String, usize>, up: Vec<Set>) -> Result<Self> {
        let n = names.len();
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        let down = (0..n).map(|j| (0..n).filter(|&i| up[i].contains(j)).collect()).collect();
        Ok(FinPoset { names, index, up, down })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up(&self, i: usize) -> Set {
        self.up[i]
    }

    pub fn down(&self, i: usize) -> Set {
        self.down[i]
    }

    pub fn all(&self) -> Set {
        Set::full(self.len())
    }

    /// Down-closure of a subset.
    pub fn down_closure(&self, s: Set) -> Set {
        s.iter().fold(Set::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    /// Up-closure of a subset.
    pub fn up_closure(&self, s: Set) -> Set {
        s.iter().fold(Set::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    /// Covering pairs `(lo, hi)` of the Hasse diagram, in canonical order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for lo in 0..n {
            for hi in self.up[lo].iter() {
                if hi == lo {
                    continue;
                }
                let between = self.up[lo].intersect(self.down[hi]);
                if between.len() == 2 {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    pub fn minimal(&self) -> Set {
        (0..self.len()).filter(|&i| self.down[i].len() == 1).collect()
    }

    pub fn maximal(&self) -> Set {
        (0..self.len()).filter(|&i| self.up[i].len() == 1).collect()
    }

    /// The opposite order on the same elements.
    pub fn dual(&self) -> FinPoset {
        FinPoset {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Least upper bound of `i` and `j`, if it exists.
    fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let ub = self.up[i].intersect(self.up[j]);
        ub.iter().find(|&z| ub.is_subset(self.up[z]))
    }

    fn glb(&self, i: usize, j: usize) -> Option<usize> {
        let lb = self.down[i].intersect(self.down[j]);
        lb.iter().find(|&z| lb.is_subset(self.down[z]))
    }

    /// Materialize meet and join tables; fails unless this is a bounded lattice.
    pub fn to_lattice(&self) -> Result<FinLattice> {
        let n = self.len();
        if n == 0 {
            return Err(Error::NotALattice("empty poset has no bottom or top".into()));
        }
        let all = self.all();
        let bottom = (0..n)
            .find(|&i| self.up[i] == all)
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        let top = (0..n)
            .find(|&i| self.down[i] == all)
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                join[i * n + j] = self.lub(i, j).ok_or_else(|| {
                    Error::NotALattice(format!("`{}` and `{}` have no join", self.names[i], self.names[j]))
                })?;
                meet[i * n + j] = self.glb(i, j).ok_or_else(|| {
                    Error::NotALattice(format!("`{}` and `{}` have no meet", self.names[i], self.names[j]))
                })?;
            }
        }
        Ok(FinLattice {
            poset: self.clone(),
            meet,
            join,
            bottom,
            top,
        })
    }
}

/// A finite bounded lattice with materialized operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    poset: FinPoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FinLattice {
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        FinPoset::from_covers(elements, covers)?.to_lattice()
    }

    /// Lattice of a family of sets ordered by inclusion. Meets and joins are
    /// whatever the inclusion order dictates; they need not be `∩` and `∪`.
    pub fn from_family(names: Vec<String>, family: &[Set]) -> Result<Self> {
        FinPoset::from_relation(names, |i, j| family[i].is_subset(family[j]))?.to_lattice()
    }

    /// The chain `0 < 1 < ... < n-1` with elements named by their rank.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FinPoset::from_relation(names, |i, j| i <= j)
            .and_then(|p| p.to_lattice())
            .expect("chains are lattices")
    }

    /// The Boolean lattice on `k` atoms, elements named by their atom sets.
    pub fn boolean(k: usize) -> Self {
        let sets: Vec<Set> = Set::all_subsets(k).collect();
        let names = sets.iter().map(|s| crate::set_name(*s, |i| format!("a{i}"))).collect();
        FinLattice::from_family(names, &sets).expect("power sets are lattices")
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.poset.index(name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn all(&self) -> Set {
        self.poset.all()
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all(&self, s: Set) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all(&self, s: Set) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// First triple `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub(crate) fn require_distributive(&self) -> Result<()> {
        match self.distributivity_witness() {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::NotDistributive(format!(
                "{} ∧ ({} ∨ {}) differs from ({0} ∧ {1}) ∨ ({0} ∧ {2})",
                self.name(x),
                self.name(y),
                self.name(z)
            ))),
        }
    }

    pub(crate) fn require_frame(&self) -> Result<()> {
        self.require_distributive()
            .map_err(|e| Error::NotAFrame(e.to_string()))
    }

    /// Finite lattices are complete, so a frame is exactly a distributive lattice.
    pub fn is_frame(&self) -> bool {
        self.is_distributive()
    }

    /// `p` is meet-prime when `x ∧ y ≤ p` forces `x ≤ p` or `y ≤ p`. The top
    /// element is never meet-prime.
    pub fn is_meet_prime(&self, p: usize) -> bool {
        if p == self.top {
            return false;
        }
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| !self.leq(self.meet(x, y), p) || self.leq(x, p) || self.leq(y, p))
        })
    }

    pub fn meet_primes(&self) -> Set {
        (0..self.len()).filter(|&p| self.is_meet_prime(p)).collect()
    }

    /// Dual notion: `p ≤ x ∨ y` forces `p ≤ x` or `p ≤ y`; the bottom is excluded.
    pub fn join_primes(&self) -> Set {
        let n = self.len();
        (0..n)
            .filter(|&p| {
                p != self.bottom
                    && (0..n).all(|x| {
                        (0..n).all(|y| !self.leq(p, self.join(x, y)) || self.leq(p, x) || self.leq(p, y))
                    })
            })
            .collect()
    }

    /// The opposite lattice on the same element names.
    pub fn dual(&self) -> FinLattice {
        FinLattice {
            poset: self.poset.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Is `s` a bounded sublattice (contains 0 and 1, closed under ∧ and ∨)?
    pub fn is_bounded_sublattice(&self, s: Set) -> bool {
        s.contains(self.bottom)
            && s.contains(self.top)
            && s.iter().all(|x| s.iter().all(|y| s.contains(self.meet(x, y)) && s.contains(self.join(x, y))))
    }
}

/// Does `map` define an order isomorphism `a → b`?
pub fn is_order_isomorphism(a: &FinPoset, b: &FinPoset, map: &[usize]) -> bool {
    if a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let image: Set = map.iter().copied().collect();
    if image.len() != b.len() {
        return false;
    }
    (0..a.len()).all(|i| (0..a.len()).all(|j| a.leq(i, j) == b.leq(map[i], map[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FinLattice {
        FinLattice::from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    fn b2() -> FinLattice {
        FinLattice::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
    }

    fn m3() -> FinLattice {
        FinLattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    fn n5() -> FinLattice {
        FinLattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn from_covers_examples() {
        let one = FinPoset::from_covers(&["a"], &[]).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.leq(0, 0));

        let c = FinPoset::from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        assert!(c.leq(0, 2), "transitivity added");
        assert!(!c.leq(2, 0));

        let err = FinPoset::from_covers(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));

        let err = FinPoset::from_covers(&["x"], &[("x", "z")]).unwrap_err();
        assert_eq!(err, Error::UnknownElement("z".into()));
    }

    #[test]
    fn to_lattice_examples() {
        let l = c3();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.meet(i, j), i.min(j));
                assert_eq!(l.join(i, j), i.max(j));
            }
        }
        let vee = FinPoset::from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
        assert!(matches!(vee.to_lattice(), Err(Error::NotALattice(_))));

        let b = b2();
        let (a, bb) = (b.index("a").unwrap(), b.index("b").unwrap());
        assert_eq!(b.name(b.meet(a, bb)), "0");
        assert_eq!(b.name(b.join(a, bb)), "1");
    }

    #[test]
    fn distributivity_examples() {
        assert!(b2().is_distributive());
        assert!(!m3().is_distributive());
        assert!(!n5().is_distributive());
        assert!(c3().is_frame());
        assert!(!m3().is_frame());
    }

    #[test]
    fn meet_prime_examples() {
        let l = c3();
        assert_eq!(l.meet_primes(), [0, 1].into_iter().collect());
        let b = b2();
        let names: Vec<&str> = b.meet_primes().iter().map(|i| b.name(i)).collect();
        assert_eq!(names, ["a", "b"]);
        let one = FinLattice::chain(1);
        assert!(one.meet_primes().is_empty());
    }

    #[test]
    fn dual_examples() {
        let c = c3().poset().dual();
        assert!(c.leq(2, 0));
        let iso = [2, 1, 0];
        assert!(is_order_isomorphism(c3().poset(), &c, &iso));

        let b = b2();
        let swap = [3, 1, 2, 0];
        assert!(is_order_isomorphism(b.poset(), b.poset().dual().to_lattice().unwrap().poset(), &swap));

        let vee = FinPoset::from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
        let wedge = vee.dual();
        assert_eq!(vee.minimal(), wedge.maximal());
        assert_eq!(vee.maximal(), wedge.minimal());
    }

    #[test]
    fn covers_of_boolean_square() {
        assert_eq!(b2().poset().covers().len(), 4);
        assert_eq!(FinLattice::boolean(3).poset().covers().len(), 12);
    }
}
