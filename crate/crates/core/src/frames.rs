//! Ideals and filters of finite lattices, the ideal lattice `Id(L)`, compact
//! elements, prime ideals, prime lifting, quotient frames and the
//! Barthel/Cohen verdicts.

use crate::bits::Set;
use crate::closure::closed_sets;
use crate::error::{Error, Result};
use crate::order::{FinLattice, FinPoset};
use crate::set_name;
use crate::topo;

/// An ideal: non-empty, downward closed, closed under binary joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ideal(Set);

/// A filter: non-empty, upward closed, closed under binary meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Filter(Set);

pub fn is_ideal(l: &FinLattice, s: Set) -> bool {
    !s.is_empty()
        && l.poset().down_closure(s) == s
        && s.iter().all(|x| s.iter().all(|y| s.contains(l.join(x, y))))
}

pub fn is_filter(l: &FinLattice, s: Set) -> bool {
    !s.is_empty()
        && l.poset().up_closure(s) == s
        && s.iter().all(|x| s.iter().all(|y| s.contains(l.meet(x, y))))
}

/// Smallest ideal containing `s` (the ideal `{0}` when `s` is empty).
pub fn ideal_closure(l: &FinLattice, s: Set) -> Set {
    let mut cur = l.poset().down_closure(s.with(l.bottom()));
    loop {
        let mut next = cur;
        for x in cur.iter() {
            for y in cur.iter() {
                next.insert(l.join(x, y));
            }
        }
        let next = l.poset().down_closure(next);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

impl Ideal {
    pub fn new(l: &FinLattice, members: Set) -> Result<Self> {
        if is_ideal(l, members) {
            Ok(Ideal(members))
        } else {
            Err(Error::NotAnIdeal(set_name(members, |i| l.name(i).to_string())))
        }
    }

    pub fn members(self) -> Set {
        self.0
    }
}

impl Filter {
    pub fn new(l: &FinLattice, members: Set) -> Result<Self> {
        if is_filter(l, members) {
            Ok(Filter(members))
        } else {
            Err(Error::NotAFilter(set_name(members, |i| l.name(i).to_string())))
        }
    }

    /// `↑x`
    pub fn principal(l: &FinLattice, x: usize) -> Self {
        Filter(l.poset().up(x))
    }

    pub fn members(self) -> Set {
        self.0
    }
}

/// A lattice of subsets of a carrier ordered by inclusion: `Id(L)`, or the
/// ideal lattices of a tensor system.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ideals: Vec<Set>,
    lattice: FinLattice,
}

impl IdealLattice {
    /// A family of sets ordered by inclusion, assumed to form a lattice.
    pub(crate) fn from_sets<F: Fn(usize) -> String>(sets: Vec<Set>, name: F) -> Result<Self> {
        let names = sets.iter().map(|&s| set_name(s, &name)).collect();
        let lattice = FinLattice::from_family(names, &sets)?;
        Ok(IdealLattice { ideals: sets, lattice })
    }

    /// Members of each ideal, indexed like the elements of [`Self::lattice`].
    pub fn ideals(&self) -> &[Set] {
        &self.ideals
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn index_of(&self, members: Set) -> Option<usize> {
        self.ideals.iter().position(|&s| s == members)
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

/// Enumerate `Id(l)` as a closure system. Meets are intersections and joins
/// the ideal generated by the union.
pub fn all_ideals(l: &FinLattice) -> IdealLattice {
    let ideals = closed_sets(l.len(), |s| ideal_closure(l, s));
    let names = ideals.iter().map(|&s| set_name(s, |i| l.name(i).to_string())).collect();
    let lattice = FinLattice::from_family(names, &ideals).expect("ideals of a finite lattice form a lattice");
    debug_assert!((0..ideals.len()).all(|i| (0..ideals.len()).all(|j| {
        ideals[lattice.meet(i, j)] == ideals[i].intersect(ideals[j])
            && ideals[lattice.join(i, j)] == ideal_closure(l, ideals[i].union(ideals[j]))
    })));
    IdealLattice { ideals, lattice }
}

/// `↓x`
pub fn principal_ideal(l: &FinLattice, x: usize) -> Result<Ideal> {
    if x >= l.len() {
        return Err(Error::UnknownElement(format!("#{x}")));
    }
    Ok(Ideal(l.poset().down(x)))
}

/// `x` is compact when every directed family whose join lies above `x`
/// already has a member above `x`. Directed down-sets of a lattice are its
/// ideals, so the check ranges over `Id(f)`.
fn is_compact_in(f: &FinLattice, ideals: &[Set], x: usize) -> bool {
    ideals
        .iter()
        .all(|&i| !f.leq(x, f.join_all(i)) || i.contains(x))
}

pub fn is_compact(f: &FinLattice, x: usize) -> Result<bool> {
    f.require_frame()?;
    let ideals = closed_sets(f.len(), |s| ideal_closure(f, s));
    Ok(is_compact_in(f, &ideals, x))
}

pub fn compact_elements(f: &FinLattice) -> Result<Set> {
    f.require_frame()?;
    let ideals = closed_sets(f.len(), |s| ideal_closure(f, s));
    let compacts: Set = (0..f.len()).filter(|&x| is_compact_in(f, &ideals, x)).collect();
    // finite lattices: every element is compact
    assert_eq!(compacts, f.all(), "a finite frame has a non-compact element");
    Ok(compacts)
}

/// Compact elements form a bounded sublattice and join-generate.
pub fn is_coherent(f: &FinLattice) -> Result<bool> {
    let compacts = compact_elements(f)?;
    let sublattice = f.is_bounded_sublattice(compacts);
    let generate = (0..f.len()).all(|x| f.join_all(compacts.intersect(f.poset().down(x))) == x);
    Ok(sublattice && generate)
}

/// Elementwise primality: proper, and `x ∧ y ∈ P` forces `x ∈ P` or `y ∈ P`.
pub fn is_prime_elementwise(l: &FinLattice, p: Set) -> bool {
    is_ideal(l, p)
        && !p.contains(l.top())
        && (0..l.len()).all(|x| (0..l.len()).all(|y| !p.contains(l.meet(x, y)) || p.contains(x) || p.contains(y)))
}

/// Proper ideals that are meet-prime in `Id(l)`, cross-checked against the
/// elementwise characterization.
pub fn prime_ideals(l: &FinLattice) -> Result<Vec<Set>> {
    l.require_distributive()?;
    let id = all_ideals(l);
    let ideals = id.ideals();
    let full = l.all();
    let primes: Vec<Set> = ideals
        .iter()
        .copied()
        .filter(|&p| {
            p != full
                && ideals.iter().all(|&i| {
                    ideals
                        .iter()
                        .all(|&j| !i.intersect(j).is_subset(p) || i.is_subset(p) || j.is_subset(p))
                })
        })
        .collect();
    for &p in ideals {
        if primes.contains(&p) != is_prime_elementwise(l, p) {
            return Err(Error::violation(
                "ideal-pair primality vs elementwise primality",
                set_name(p, |i| l.name(i).to_string()),
            ));
        }
    }
    Ok(primes)
}

/// Enlarge `ideal` greedily, in element order, to an ideal maximal among
/// those disjoint from `filter`. Such an ideal is prime.
pub fn prime_lift(l: &FinLattice, ideal: Ideal, filter: Filter) -> Result<Ideal> {
    if let Some(x) = ideal.0.intersect(filter.0).first() {
        return Err(Error::NotDisjoint(l.name(x).to_string()));
    }
    let mut cur = ideal.0;
    for x in 0..l.len() {
        if cur.contains(x) {
            continue;
        }
        let grown = ideal_closure(l, cur.with(x));
        if grown.is_disjoint(filter.0) {
            cur = grown;
        }
    }
    Ok(Ideal(cur))
}

/// Every element is a meet of meet-prime elements (top being the empty meet).
pub fn is_spatial(f: &FinLattice) -> Result<bool> {
    f.require_frame()?;
    let primes = f.meet_primes();
    Ok((0..f.len()).all(|x| f.meet_all(primes.intersect(f.poset().up(x))) == x))
}

/// Quotient `f / ↓i` together with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: FinLattice,
    /// `projection[a]` is the class of `a`, an element index of `lattice`.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn zero_class(&self) -> usize {
        self.lattice.bottom()
    }
}

/// `a ≡ b` iff `a ∨ i' = b ∨ j'` for some `i', j' ≤ i`.
pub fn quotient_frame(f: &FinLattice, i: usize) -> Result<Quotient> {
    f.require_frame()?;
    let n = f.len();
    let below = f.poset().down(i);
    let related = |a: usize, b: usize| {
        below
            .iter()
            .any(|i1| below.iter().any(|j1| f.join(a, i1) == f.join(b, j1)))
    };
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        for b in a..n {
            if class_of[b] == usize::MAX && related(a, b) {
                class_of[b] = c;
            }
        }
        reps.push(a);
    }
    let classes: Vec<Set> = (0..reps.len())
        .map(|c| (0..n).filter(|&a| class_of[a] == c).collect())
        .collect();
    for (c, &members) in classes.iter().enumerate() {
        // transitivity of the relation as defined
        if members.iter().any(|a| members.iter().any(|b| !related(a, b))) {
            return Err(Error::violation("quotient congruence", format!("class {c} is not an equivalence class")));
        }
    }
    let names: Vec<String> = classes
        .iter()
        .map(|&s| {
            let top = f.join_all(s);
            format!("[{}]", f.name(top))
        })
        .collect();
    let poset = FinPoset::from_relation(names, |c, d| class_of[f.join(reps[c], reps[d])] == d)?;
    let lattice = poset.to_lattice()?;
    let q = Quotient {
        lattice,
        projection: class_of,
    };
    for a in 0..n {
        for b in 0..n {
            let (pa, pb) = (q.projection[a], q.projection[b]);
            if q.projection[f.meet(a, b)] != q.lattice.meet(pa, pb)
                || q.projection[f.join(a, b)] != q.lattice.join(pa, pb)
            {
                return Err(Error::violation(
                    "quotient projection is a lattice map",
                    format!("{} and {}", f.name(a), f.name(b)),
                ));
            }
        }
    }
    Ok(q)
}

/// Flags of the lattice-level Cohen theorem together with its checked
/// equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarthelVerdict {
    pub all_ideals_principal: bool,
    pub all_primes_principal: bool,
    pub spc_dual_weakly_noetherian: bool,
    pub spc_dual_finite: bool,
    pub spc_noetherian: bool,
}

pub fn barthel_verdict(l: &FinLattice) -> Result<BarthelVerdict> {
    l.require_distributive()?;
    let principal = |s: Set| (0..l.len()).any(|x| l.poset().down(x) == s);
    let all_ideals_principal = all_ideals(l).ideals().iter().all(|&s| principal(s));
    let spc = topo::spc_of_lattice(l)?;
    let all_primes_principal = spc.primes().iter().all(|&s| principal(s));
    let dual = spc.space().hochster_dual()?;
    let v = BarthelVerdict {
        all_ideals_principal,
        all_primes_principal,
        spc_dual_weakly_noetherian: dual.is_weakly_noetherian()?,
        spc_dual_finite: dual.is_finite(),
        spc_noetherian: spc.space().is_noetherian()?,
    };
    if !(v.all_ideals_principal == v.all_primes_principal && v.all_primes_principal == v.spc_noetherian) {
        return Err(Error::violation("ideals principal ⇔ primes principal ⇔ Spc Noetherian", format!("{v:?}")));
    }
    let finite = v.spc_dual_finite;
    if (v.spc_dual_weakly_noetherian && v.all_ideals_principal) != finite
        || (v.spc_dual_weakly_noetherian && v.all_primes_principal) != finite
    {
        return Err(Error::violation("weakly Noetherian ∧ principal ⇔ finite", format!("{v:?}")));
    }
    Ok(v)
}
