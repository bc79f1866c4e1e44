//! Finite topological spaces, Hochster duality, Thomason subsets and the
//! spectrum of a bounded distributive lattice.
//!
//! A space is stored as its canonically ordered family of open sets. On a
//! finite space every open is quasi-compact and specialization-closed subsets
//! coincide with Thomason subsets; the checks below are still carried out
//! definitionally.

use std::collections::{HashMap, HashSet};

use crate::bits::{canonicalize, Set, CAPACITY};
use crate::closure::closed_sets;
use crate::error::{Error, Result};
use crate::frames;
use crate::order::{FinLattice, FinPoset};
use crate::set_name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSpace {
    names: Vec<String>,
    opens: Vec<Set>,
}

/// Close a family under a commutative binary operation.
fn close_family(mut fam: Vec<Set>, op: impl Fn(Set, Set) -> Set) -> Vec<Set> {
    let mut seen: HashSet<Set> = fam.iter().copied().collect();
    fam = seen.iter().copied().collect();
    canonicalize(&mut fam);
    let mut i = 0;
    while i < fam.len() {
        for j in 0..=i {
            let c = op(fam[i], fam[j]);
            if seen.insert(c) {
                fam.push(c);
            }
        }
        i += 1;
    }
    canonicalize(&mut fam);
    fam
}

fn check_names(names: &[String]) -> Result<()> {
    if names.len() > CAPACITY {
        return Err(Error::TooLarge(names.len()));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(())
}

impl FinSpace {
    /// A space from its complete family of opens, which must be a topology.
    pub fn new(names: Vec<String>, opens: Vec<Set>) -> Result<Self> {
        check_names(&names)?;
        let full = Set::full(names.len());
        let mut opens = opens;
        canonicalize(&mut opens);
        let space = FinSpace { names, opens };
        let show = |s: Set| space.show(s);
        if let Some(&u) = space.opens.iter().find(|u| !u.is_subset(full)) {
            return Err(Error::NotATopology(format!("{u:?} is not a set of points")));
        }
        if !space.is_open(Set::EMPTY) || !space.is_open(full) {
            return Err(Error::NotATopology("∅ and the whole space must be open".into()));
        }
        for &u in &space.opens {
            for &v in &space.opens {
                if !space.is_open(u.union(v)) || !space.is_open(u.intersect(v)) {
                    return Err(Error::NotATopology(format!(
                        "opens {} and {} are not closed under ∪ and ∩",
                        show(u),
                        show(v)
                    )));
                }
            }
        }
        Ok(space)
    }

    /// Opens are all unions of finite intersections of `basis` members.
    pub fn from_open_basis(names: Vec<String>, basis: &[Set]) -> Result<Self> {
        check_names(&names)?;
        let full = Set::full(names.len());
        if let Some(b) = basis.iter().find(|b| !b.is_subset(full)) {
            return Err(Error::NotATopology(format!("{b:?} is not a set of points")));
        }
        let mut seed = basis.to_vec();
        seed.push(full);
        let meets = close_family(seed, Set::intersect);
        let mut joins = meets;
        joins.push(Set::EMPTY);
        let opens = close_family(joins, Set::union);
        Ok(FinSpace { names, opens })
    }

    /// Closed sets are all intersections of finite unions of `basis` members.
    pub fn from_closed_basis(names: Vec<String>, basis: &[Set]) -> Result<Self> {
        let n = names.len();
        let open: Vec<Set> = basis.iter().map(|b| b.complement(n)).collect();
        if let Some(b) = basis.iter().find(|b| !b.is_subset(Set::full(n))) {
            return Err(Error::NotATopology(format!("{b:?} is not a set of points")));
        }
        Self::from_open_basis(names, &open)
    }

    pub fn discrete(names: Vec<String>) -> Result<Self> {
        let basis: Vec<Set> = (0..names.len()).map(Set::singleton).collect();
        Self::from_open_basis(names, &basis)
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

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn points(&self) -> Set {
        Set::full(self.len())
    }

    /// Every space here has an explicitly enumerated point set.
    pub fn is_finite(&self) -> bool {
        self.len() <= CAPACITY
    }

    /// Canonically ordered opens.
    pub fn opens(&self) -> &[Set] {
        &self.opens
    }

    pub fn is_open(&self, s: Set) -> bool {
        self.opens.binary_search_by(|u| u.canonical_cmp(&s)).is_ok()
    }

    pub fn is_closed(&self, s: Set) -> bool {
        self.is_open(s.complement(self.len()))
    }

    pub fn closed_sets(&self) -> Vec<Set> {
        let mut c: Vec<Set> = self.opens.iter().map(|u| u.complement(self.len())).collect();
        canonicalize(&mut c);
        c
    }

    /// Smallest closed superset.
    pub fn closure(&self, s: Set) -> Set {
        let n = self.len();
        self.opens
            .iter()
            .filter(|u| u.is_disjoint(s))
            .fold(Set::full(n), |acc, u| acc.minus(*u))
    }

    /// Largest open subset.
    pub fn interior(&self, s: Set) -> Set {
        self.opens
            .iter()
            .filter(|u| u.is_subset(s))
            .fold(Set::EMPTY, |acc, u| acc.union(*u))
    }

    pub fn show(&self, s: Set) -> String {
        set_name(s, |p| self.names[p].clone())
    }

    fn indistinguishable_pair(&self) -> Option<(usize, usize)> {
        let cls: Vec<Set> = (0..self.len()).map(|p| self.closure(Set::singleton(p))).collect();
        for p in 0..self.len() {
            for q in p + 1..self.len() {
                if cls[p] == cls[q] {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.indistinguishable_pair().is_none()
    }

    /// `p ≤ q` iff `p ∈ cl{q}`.
    pub fn specialization_order(&self) -> Result<FinPoset> {
        if let Some((p, q)) = self.indistinguishable_pair() {
            return Err(Error::NotT0(self.names[p].clone(), self.names[q].clone()));
        }
        let cls: Vec<Set> = (0..self.len()).map(|p| self.closure(Set::singleton(p))).collect();
        FinPoset::from_relation(self.names.clone(), |p, q| cls[q].contains(p))
    }

    /// A non-empty closed set that is not the union of two proper closed subsets.
    pub fn is_irreducible_closed(&self, c: Set) -> bool {
        if c.is_empty() || !self.is_closed(c) {
            return false;
        }
        let inside: Vec<Set> = self
            .closed_sets()
            .into_iter()
            .filter(|&d| d.is_subset(c) && d != c)
            .collect();
        !inside.iter().any(|a| inside.iter().any(|b| a.union(*b) == c))
    }

    /// Every non-empty irreducible closed subset has a unique generic point.
    pub fn is_sober(&self) -> bool {
        self.closed_sets().into_iter().filter(|&c| self.is_irreducible_closed(c)).all(|c| {
            c.iter().filter(|&p| self.closure(Set::singleton(p)) == c).count() == 1
        })
    }

    /// `Ω(X)` as a lattice; elements are named by their point sets.
    pub fn omega(&self) -> Result<FinLattice> {
        if self.opens.len() > CAPACITY {
            return Err(Error::TooLarge(self.opens.len()));
        }
        let names = self.opens.iter().map(|&u| self.show(u)).collect();
        FinLattice::from_family(names, &self.opens)
    }

    /// Opens `U` such that every directed family of opens covering `U` contains
    /// a member covering `U`. Directed families of opens are ideals of `Ω(X)`.
    pub fn quasi_compact_opens(&self) -> Result<Vec<Set>> {
        let omega = self.omega()?;
        let ideals = closed_sets(omega.len(), |s| frames::ideal_closure(&omega, s));
        let qc: Vec<Set> = (0..omega.len())
            .filter(|&u| {
                ideals.iter().all(|&fam| {
                    let cover = fam.iter().fold(Set::EMPTY, |acc, v| acc.union(self.opens[v]));
                    !self.opens[u].is_subset(cover) || fam.iter().any(|v| self.opens[u].is_subset(self.opens[v]))
                })
            })
            .map(|u| self.opens[u])
            .collect();
        Ok(qc)
    }

    /// Quasi-compact, T0, sober, with quasi-compact opens forming a basis
    /// closed under finite intersections.
    pub fn spectral_failure(&self) -> Result<Option<String>> {
        if let Some((p, q)) = self.indistinguishable_pair() {
            return Ok(Some(format!("not T0: {} and {}", self.names[p], self.names[q])));
        }
        let qc = self.quasi_compact_opens()?;
        let full = self.points();
        if !qc.contains(&full) {
            return Ok(Some("not quasi-compact".into()));
        }
        for &u in &qc {
            for &v in &qc {
                if !qc.contains(&u.intersect(v)) {
                    return Ok(Some(format!(
                        "quasi-compact opens {} and {} meet in a non-quasi-compact open",
                        self.show(u),
                        self.show(v)
                    )));
                }
            }
        }
        for &u in &self.opens {
            let covered = qc.iter().filter(|v| v.is_subset(u)).fold(Set::EMPTY, |acc, v| acc.union(*v));
            if covered != u {
                return Ok(Some(format!("open {} is not a union of quasi-compact opens", self.show(u))));
            }
        }
        if !self.is_sober() {
            return Ok(Some("not sober".into()));
        }
        Ok(None)
    }

    pub fn is_spectral(&self) -> Result<bool> {
        Ok(self.spectral_failure()?.is_none())
    }

    fn require_spectral(&self) -> Result<()> {
        match self.spectral_failure()? {
            None => Ok(()),
            Some(why) => Err(Error::NotSpectral(why)),
        }
    }

    fn dual_unchecked(&self) -> Result<FinSpace> {
        let n = self.len();
        let basis: Vec<Set> = self.quasi_compact_opens()?.iter().map(|u| u.complement(n)).collect();
        FinSpace::from_open_basis(self.names.clone(), &basis)
    }

    /// `X^∨`: same points, open basis the closed sets with quasi-compact complement.
    pub fn hochster_dual(&self) -> Result<FinSpace> {
        self.require_spectral()?;
        let dual = self.dual_unchecked()?;
        dual.require_spectral()?;
        if dual.dual_unchecked()? != *self {
            return Err(Error::violation("Hochster involution", "double dual differs from the space"));
        }
        Ok(dual)
    }

    /// Unions of complements of quasi-compact opens.
    pub fn thomason_subsets(&self) -> Result<Vec<Set>> {
        self.require_spectral()?;
        let n = self.len();
        let mut fam: Vec<Set> = self.quasi_compact_opens()?.iter().map(|u| u.complement(n)).collect();
        fam.push(Set::EMPTY);
        Ok(close_family(fam, Set::union))
    }

    /// Ascending chain condition on opens, which amounts to every open being
    /// quasi-compact.
    pub fn is_noetherian(&self) -> Result<bool> {
        self.require_spectral()?;
        Ok(self.quasi_compact_opens()?.len() == self.opens.len())
    }

    /// `{p} = T₁ ∩ (X ∖ T₂)` for Thomason subsets `T₁`, `T₂`.
    pub fn weakly_visible(&self, p: usize) -> Result<bool> {
        let thomason = self.thomason_subsets()?;
        let n = self.len();
        let target = Set::singleton(p);
        Ok(thomason
            .iter()
            .any(|t1| thomason.iter().any(|t2| t1.intersect(t2.complement(n)) == target)))
    }

    pub fn is_weakly_noetherian(&self) -> Result<bool> {
        for p in 0..self.len() {
            if !self.weakly_visible(p)? {
                return Ok(false);
            }
        }
        self.require_spectral()?;
        Ok(true)
    }

    /// Points `p` with `cl{p} = {p}`.
    pub fn closed_points(&self) -> Set {
        (0..self.len())
            .filter(|&p| self.closure(Set::singleton(p)) == Set::singleton(p))
            .collect()
    }

    /// Subspace topology on `keep`, points reindexed in increasing order.
    pub fn subspace(&self, keep: Set) -> FinSpace {
        let kept: Vec<usize> = keep.iter().collect();
        let restrict = |u: Set| -> Set { (0..kept.len()).filter(|&i| u.contains(kept[i])).collect() };
        let opens: Vec<Set> = self.opens.iter().map(|&u| restrict(u)).collect();
        let mut uniq: Vec<Set> = opens.into_iter().collect::<HashSet<_>>().into_iter().collect();
        canonicalize(&mut uniq);
        FinSpace {
            names: kept.iter().map(|&p| self.names[p].clone()).collect(),
            opens: uniq,
        }
    }

    /// `{ p : map[p] ∈ s }`
    pub fn preimage(map: &[usize], s: Set) -> Set {
        (0..map.len()).filter(|&p| s.contains(map[p])).collect()
    }
}

/// Is `map: a → b` continuous?
pub fn is_continuous(a: &FinSpace, b: &FinSpace, map: &[usize]) -> bool {
    map.len() == a.len()
        && map.iter().all(|&q| q < b.len())
        && b.opens().iter().all(|&v| a.is_open(FinSpace::preimage(map, v)))
}

/// Is `map: a → b` a homeomorphism?
pub fn is_homeomorphism(a: &FinSpace, b: &FinSpace, map: &[usize]) -> bool {
    if a.len() != b.len() || !is_continuous(a, b, map) {
        return false;
    }
    let image: Set = map.iter().copied().collect();
    if image.len() != a.len() {
        return false;
    }
    a.opens().iter().all(|&u| {
        let img: Set = u.iter().map(|p| map[p]).collect();
        b.is_open(img)
    })
}

/// `Spc(L)`: prime ideals with the supports `supp(x) = {P : x ∉ P}` as an
/// open basis.
#[derive(Clone, Debug)]
pub struct LatticeSpectrum {
    space: FinSpace,
    primes: Vec<Set>,
    supp: Vec<Set>,
}

impl LatticeSpectrum {
    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    /// Members of the prime ideal at each point.
    pub fn primes(&self) -> &[Set] {
        &self.primes
    }

    pub fn supp(&self, x: usize) -> Set {
        self.supp[x]
    }

    pub fn supports(&self) -> &[Set] {
        &self.supp
    }

    pub fn point_of(&self, prime: Set) -> Option<usize> {
        self.primes.iter().position(|&p| p == prime)
    }
}

pub fn spc_of_lattice(l: &FinLattice) -> Result<LatticeSpectrum> {
    let primes = frames::prime_ideals(l)?;
    let names: Vec<String> = primes
        .iter()
        .map(|&p| set_name(p, |i| l.name(i).to_string()))
        .collect();
    let supp: Vec<Set> = (0..l.len())
        .map(|x| (0..primes.len()).filter(|&p| !primes[p].contains(x)).collect())
        .collect();
    let space = FinSpace::from_open_basis(names, &supp)?;
    debug_assert!(supp.iter().all(|&s| space.is_open(s)));
    Ok(LatticeSpectrum { space, primes, supp })
}

/// `K°(Spc L)` is exactly the supports and `K°(Spc(L)^∨)` exactly their
/// complements.
pub fn quasicompact_supports_check(l: &FinLattice) -> Result<bool> {
    let spc = spc_of_lattice(l)?;
    let n = spc.space.len();
    let mut supports: Vec<Set> = spc.supp.clone();
    supports = supports.into_iter().collect::<HashSet<_>>().into_iter().collect();
    canonicalize(&mut supports);
    if spc.space.quasi_compact_opens()? != supports {
        return Err(Error::violation("K°(Spc L) = supports", "quasi-compact opens differ"));
    }
    let mut complements: Vec<Set> = supports.iter().map(|s| s.complement(n)).collect();
    canonicalize(&mut complements);
    if spc.space.hochster_dual()?.quasi_compact_opens()? != complements {
        return Err(Error::violation("K°(Spc(L)^∨) = support complements", "quasi-compact opens differ"));
    }
    Ok(true)
}

/// Build a point-index map from name correspondences.
pub fn map_by_names(a: &FinSpace, b: &FinSpace) -> Option<Vec<usize>> {
    let idx: HashMap<&str, usize> = b.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    a.names().iter().map(|n| idx.get(n.as_str()).copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fam(space: &FinSpace, sets: &[&[&str]]) -> Vec<Set> {
        let mut v: Vec<Set> = sets
            .iter()
            .map(|s| s.iter().map(|n| space.index(n).unwrap()).collect())
            .collect();
        canonicalize(&mut v);
        v
    }

    #[test]
    fn bases() {
        let s = fixtures::sierpinski();
        assert_eq!(s.opens().len(), 3);
        let ind = FinSpace::from_open_basis(vec!["p".into(), "q".into()], &[]).unwrap();
        assert_eq!(ind.opens().len(), 2);
        let d = FinSpace::discrete(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(d.opens().len(), 8);
        let c = FinSpace::from_closed_basis(vec!["p".into(), "q".into()], &[Set::singleton(1)]).unwrap();
        assert_eq!(c, s);
        assert!(matches!(
            FinSpace::new(vec!["p".into(), "q".into()], vec![Set::EMPTY, Set::singleton(0)]),
            Err(Error::NotATopology(_))
        ));
    }

    #[test]
    fn specialization() {
        let s = fixtures::sierpinski();
        let order = s.specialization_order().unwrap();
        let (p, q) = (s.index("p").unwrap(), s.index("q").unwrap());
        assert!(order.leq(q, p) && !order.leq(p, q));
        let d = FinSpace::discrete(vec!["a".into(), "b".into()]).unwrap();
        assert!(d.specialization_order().unwrap().covers().is_empty());
        let ind = fixtures::indiscrete2();
        assert_eq!(ind.specialization_order().unwrap_err(), Error::NotT0("p".into(), "q".into()));
    }

    #[test]
    fn sobriety() {
        assert!(fixtures::sierpinski().is_sober());
        assert!(!fixtures::indiscrete2().is_sober());
        assert!(FinSpace::discrete(vec!["a".into(), "b".into()]).unwrap().is_sober());
    }

    #[test]
    fn spectral_and_quasi_compact() {
        let s = fixtures::sierpinski();
        assert!(s.is_spectral().unwrap());
        assert_eq!(s.quasi_compact_opens().unwrap(), fam(&s, &[&[], &["p"], &["p", "q"]]));
        assert!(!fixtures::indiscrete2().is_spectral().unwrap());
        for (_, x) in fixtures::spaces() {
            if x.is_t0() {
                assert!(x.is_spectral().unwrap());
                assert_eq!(x.quasi_compact_opens().unwrap(), x.opens());
            }
        }
    }

    #[test]
    fn hochster() {
        let s = fixtures::sierpinski();
        let d = s.hochster_dual().unwrap();
        assert_eq!(d.opens(), fam(&s, &[&[], &["q"], &["p", "q"]]).as_slice());
        let disc = FinSpace::discrete(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(disc.hochster_dual().unwrap(), disc);
        let spc = spc_of_lattice(&fixtures::c3()).unwrap();
        let dual = spc.space().hochster_dual().unwrap();
        assert_eq!(dual.hochster_dual().unwrap(), *spc.space());
        assert!(matches!(fixtures::indiscrete2().hochster_dual(), Err(Error::NotSpectral(_))));
    }

    #[test]
    fn thomason() {
        let d = FinSpace::discrete(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(d.thomason_subsets().unwrap().len(), 8);
        let s = fixtures::sierpinski();
        assert_eq!(s.thomason_subsets().unwrap(), fam(&s, &[&[], &["q"], &["p", "q"]]));
        let b2 = spc_of_lattice(&fixtures::b2()).unwrap();
        assert_eq!(b2.space().thomason_subsets().unwrap().len(), 4);
    }

    #[test]
    fn thomason_equals_specialization_closed_on_finite_spaces() {
        for (_, x) in fixtures::spaces().into_iter().filter(|(_, x)| x.is_t0()) {
            let order = x.specialization_order().unwrap();
            let mut spec_closed: Vec<Set> =
                Set::all_subsets(x.len()).filter(|&s| order.down_closure(s) == s).collect();
            canonicalize(&mut spec_closed);
            assert_eq!(x.thomason_subsets().unwrap(), spec_closed);
        }
    }

    #[test]
    fn spectrum_of_lattices() {
        let c3 = fixtures::c3();
        let spc = spc_of_lattice(&c3).unwrap();
        assert_eq!(spc.space().names(), ["{0}", "{0,m}"]);
        let m = c3.index("m").unwrap();
        assert_eq!(spc.supp(m), Set::singleton(spc.space().index("{0}").unwrap()));

        let b2 = fixtures::b2();
        let spc = spc_of_lattice(&b2).unwrap();
        assert_eq!(spc.space().names(), ["{0,a}", "{0,b}"]);
        assert_eq!(spc.supp(b2.index("a").unwrap()), Set::singleton(1));
        assert_eq!(spc.supp(b2.index("b").unwrap()), Set::singleton(0));
        assert_eq!(spc.space().opens().len(), 4);

        let two = FinLattice::chain(2);
        let spc = spc_of_lattice(&two).unwrap();
        assert_eq!(spc.space().len(), 1);
        assert_eq!(spc.supp(1), Set::singleton(0));
        assert!(matches!(spc_of_lattice(&fixtures::m3()), Err(Error::NotDistributive(_))));
    }

    #[test]
    fn quasicompact_supports() {
        for l in [fixtures::c3(), fixtures::b2(), FinLattice::chain(2)] {
            assert!(quasicompact_supports_check(&l).unwrap());
        }
    }

    #[test]
    fn noetherian_flags() {
        let s = fixtures::sierpinski();
        assert!(s.is_noetherian().unwrap());
        assert!(s.is_weakly_noetherian().unwrap());
        assert!(s.weakly_visible(s.index("q").unwrap()).unwrap());
        let d = FinSpace::discrete(vec!["a".into(), "b".into()]).unwrap();
        assert!(d.weakly_visible(0).unwrap() && d.weakly_visible(1).unwrap());
        assert!(matches!(fixtures::indiscrete2().is_noetherian(), Err(Error::NotSpectral(_))));
    }

    #[test]
    fn omega_examples() {
        let s = fixtures::sierpinski();
        assert_eq!(s.omega().unwrap().len(), 3);
        assert!(s.omega().unwrap().poset().covers().len() == 2);
        let b = FinSpace::discrete(vec!["a".into(), "b".into()]).unwrap().omega().unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.meet_primes().len(), 2);
        let one = FinSpace::discrete(vec!["a".into()]).unwrap().omega().unwrap();
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn closed_points_and_subspaces() {
        let s = fixtures::sierpinski();
        assert_eq!(s.closed_points(), Set::singleton(s.index("q").unwrap()));
        let sub = s.subspace(Set::singleton(0));
        assert_eq!(sub.len(), 1);
        assert_eq!(sub.opens().len(), 2);
        let id: Vec<usize> = (0..s.len()).collect();
        assert!(is_homeomorphism(&s, &s, &id));
        assert!(!is_homeomorphism(&s, &s, &[1, 0]));
        assert!(is_continuous(&s, &s, &[0, 0]));
    }
}
