//! Finite rule-based models of monoidal-triangulated categories.
//!
//! A [`TensorSystem`] is a finite set of objects with a tensor table, a zero
//! and a unit, and Horn rules standing in for the triangulated operations
//! (cones, summands, sums). Thick ⊗-ideals are the subsets closed under the
//! rules and under tensoring on either side. Sums, when present, form a
//! join-semilattice over which the tensor distributes.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::bits::{canonicalize, Set, CAPACITY};
use crate::closure::{closed_sets, forward_chain};
use crate::error::{Error, Result};
use crate::frames::{self, IdealLattice};
use crate::set_name;
use crate::topo::FinSpace;

/// `premises → conclusion`
pub type Rule = (Set, usize);

#[derive(Clone, Debug)]
pub struct TensorSystem {
    names: Vec<String>,
    zero: usize,
    unit: usize,
    tensor: Vec<usize>,
    rules: Vec<Rule>,
    sum: Option<Vec<usize>>,
    /// `absorb[x] = { a⊗x, x⊗a : a ∈ E }`
    absorb: Vec<Set>,
    ideals: OnceLock<Vec<Set>>,
    primes: OnceLock<Vec<Set>>,
}

/// Outcome of [`TensorSystem::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validity {
    pub additive: bool,
}

fn invalid(invariant: &str, witness: String) -> Error {
    Error::InvalidSystem {
        invariant: invariant.to_string(),
        witness,
    }
}

impl TensorSystem {
    /// Build and validate a system from index tables. `tensor` and `sum` are
    /// row-major `n × n` tables.
    pub fn new(
        names: Vec<String>,
        zero: usize,
        unit: usize,
        tensor: Vec<usize>,
        rules: Vec<Rule>,
        sum: Option<Vec<usize>>,
    ) -> Result<Self> {
        let ts = Self::unchecked(names, zero, unit, tensor, rules, sum)?;
        ts.validate()?;
        Ok(ts)
    }

    /// Structural checks only; the algebraic invariants are left to
    /// [`Self::validate`].
    pub fn unchecked(
        names: Vec<String>,
        zero: usize,
        unit: usize,
        tensor: Vec<usize>,
        rules: Vec<Rule>,
        sum: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        if n > CAPACITY {
            return Err(Error::TooLarge(n));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        if zero >= n || unit >= n {
            return Err(invalid("designated elements", "zero or unit out of range".into()));
        }
        if tensor.len() != n * n || tensor.iter().any(|&v| v >= n) {
            return Err(invalid("table shape", "tensor table must be a total n×n table".into()));
        }
        if let Some(s) = &sum {
            if s.len() != n * n || s.iter().any(|&v| v >= n) {
                return Err(invalid("table shape", "sum table must be a total n×n table".into()));
            }
        }
        let full = Set::full(n);
        if let Some(r) = rules.iter().find(|(p, c)| !p.is_subset(full) || *c >= n) {
            return Err(invalid("rule shape", format!("rule {:?} → #{} uses unknown elements", r.0, r.1)));
        }
        let absorb = (0..n)
            .map(|x| (0..n).flat_map(|a| [tensor[a * n + x], tensor[x * n + a]]).collect())
            .collect();
        Ok(TensorSystem {
            names,
            zero,
            unit,
            tensor,
            rules,
            sum,
            absorb,
            ideals: OnceLock::new(),
            primes: OnceLock::new(),
        })
    }

    /// Build from element names; tables are given row by row.
    pub fn from_named<S: AsRef<str>>(
        elements: &[S],
        zero: &str,
        unit: &str,
        tensor: &[Vec<S>],
        rules: &[(Vec<S>, S)],
        sum: Option<&[Vec<S>]>,
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|m| m == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let n = names.len();
        let table = |rows: &[Vec<S>], what: &str| -> Result<Vec<usize>> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(invalid("table shape", format!("{what} table must have {n} rows of {n} cells")));
            }
            rows.iter().flatten().map(|c| idx(c.as_ref())).collect()
        };
        let tensor = table(tensor, "tensor")?;
        let sum = sum.map(|s| table(s, "sum")).transpose()?;
        let rules = rules
            .iter()
            .map(|(p, c)| {
                let premises = p.iter().map(|x| idx(x.as_ref())).collect::<Result<Set>>()?;
                Ok((premises, idx(c.as_ref())?))
            })
            .collect::<Result<Vec<Rule>>>()?;
        Self::new(names.clone(), idx(zero)?, idx(unit)?, tensor, rules, sum)
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Set of elements by name.
    pub fn set_of(&self, names: &[&str]) -> Result<Set> {
        names.iter().map(|n| self.index(n)).collect()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn all(&self) -> Set {
        Set::full(self.len())
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.tensor[x * self.len() + y]
    }

    pub fn tensor_table(&self) -> &[usize] {
        &self.tensor
    }

    pub fn sum_table(&self) -> Option<&[usize]> {
        self.sum.as_deref()
    }

    pub fn sum(&self, x: usize, y: usize) -> Option<usize> {
        self.sum.as_ref().map(|s| s[x * self.len() + y])
    }

    pub fn is_additive(&self) -> bool {
        self.sum.is_some()
    }

    pub fn show(&self, s: Set) -> String {
        set_name(s, |x| self.names[x].clone())
    }

    /// `A ⊗ B = { a⊗b }`
    pub fn tensor_sets(&self, a: Set, b: Set) -> Set {
        a.iter().flat_map(|x| b.iter().map(move |y| self.tensor(x, y))).collect()
    }

    /// `x ⊗ E ⊗ y`
    pub fn sandwich(&self, x: usize, y: usize) -> Set {
        (0..self.len()).map(|a| self.tensor(self.tensor(x, a), y)).collect()
    }

    /// Closure under the rules alone (the thick subcategory generated).
    pub fn thick_closure(&self, s: Set) -> Set {
        forward_chain(s, &self.rules)
    }

    /// Least ideal containing `s`: forward chaining interleaved with
    /// two-sided absorption.
    pub fn ideal_generated(&self, s: Set) -> Set {
        let mut cur = s;
        loop {
            let mut next = forward_chain(cur, &self.rules);
            for x in next.iter() {
                next = next.union(self.absorb[x]);
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_ideal(&self, s: Set) -> bool {
        self.ideal_generated(s) == s
    }

    fn require_ideal(&self, s: Set) -> Result<()> {
        if self.is_ideal(s) {
            Ok(())
        } else {
            Err(Error::NotAnIdeal(self.show(s)))
        }
    }

    /// Check every invariant exhaustively.
    pub fn validate(&self) -> Result<Validity> {
        let n = self.len();
        let e = 0..n;
        for x in e.clone() {
            for y in e.clone() {
                for z in e.clone() {
                    if self.tensor(self.tensor(x, y), z) != self.tensor(x, self.tensor(y, z)) {
                        return Err(invalid(
                            "associativity",
                            format!("({0}⊗{1})⊗{2} ≠ {0}⊗({1}⊗{2})", self.names[x], self.names[y], self.names[z]),
                        ));
                    }
                }
            }
        }
        for x in e.clone() {
            if self.tensor(self.unit, x) != x || self.tensor(x, self.unit) != x {
                return Err(invalid("unit", format!("{} is not fixed by the unit", self.names[x])));
            }
        }
        if !self.rules.contains(&(Set::EMPTY, self.zero)) {
            return Err(invalid("zero rule", format!("rule ∅ → {} is missing", self.names[self.zero])));
        }
        // The zero class (everything forced with no premises) absorbs.
        let zeros = self.thick_closure(Set::EMPTY);
        for z in zeros.iter() {
            for x in e.clone() {
                if !zeros.contains(self.tensor(z, x)) || !zeros.contains(self.tensor(x, z)) {
                    return Err(invalid(
                        "zero absorber",
                        format!("{}⊗{} leaves the zero class", self.names[z], self.names[x]),
                    ));
                }
            }
        }
        let mut memo: HashMap<Set, Set> = HashMap::new();
        let mut close = |s: Set| *memo.entry(s).or_insert_with(|| self.ideal_generated(s));
        for &(premises, c) in &self.rules {
            for t in e.clone() {
                let right = premises.iter().map(|p| self.tensor(p, t)).collect();
                let left = premises.iter().map(|p| self.tensor(t, p)).collect();
                let side = if !close(right).contains(self.tensor(c, t)) {
                    Some(format!("{}⊗{}", self.names[c], self.names[t]))
                } else if !close(left).contains(self.tensor(t, c)) {
                    Some(format!("{}⊗{}", self.names[t], self.names[c]))
                } else {
                    None
                };
                if let Some(side) = side {
                    return Err(invalid(
                        "tensor-stability",
                        format!("rule {} → {} tensored with {}: {side} is not derivable", self.show(premises), self.names[c], self.names[t]),
                    ));
                }
            }
        }
        let Some(_) = &self.sum else {
            return Ok(Validity { additive: false });
        };
        let sum = |x, y| self.sum(x, y).expect("additive");
        for x in e.clone() {
            if sum(x, x) != x {
                return Err(invalid("sum idempotent", format!("{0}⊕{0} ≠ {0}", self.names[x])));
            }
            for y in e.clone() {
                if sum(x, y) != sum(y, x) {
                    return Err(invalid("sum commutative", format!("{}⊕{}", self.names[x], self.names[y])));
                }
                for z in e.clone() {
                    if sum(sum(x, y), z) != sum(x, sum(y, z)) {
                        return Err(invalid(
                            "sum associative",
                            format!("{}, {}, {}", self.names[x], self.names[y], self.names[z]),
                        ));
                    }
                    if self.tensor(x, sum(y, z)) != sum(self.tensor(x, y), self.tensor(x, z))
                        || self.tensor(sum(y, z), x) != sum(self.tensor(y, x), self.tensor(z, x))
                    {
                        return Err(invalid(
                            "tensor distributes over sum",
                            format!("{} with {}⊕{}", self.names[x], self.names[y], self.names[z]),
                        ));
                    }
                }
            }
        }
        for x in e.clone() {
            for y in e.clone() {
                let s = sum(x, y);
                let pair = Set::singleton(x).with(y);
                if !close(pair).contains(s) {
                    return Err(invalid(
                        "sum rules derivable",
                        format!("{{{},{}}} → {} is not derivable", self.names[x], self.names[y], self.names[s]),
                    ));
                }
                if !pair.is_subset(close(Set::singleton(s))) {
                    return Err(invalid(
                        "sum rules derivable",
                        format!("{} → {} and {} is not derivable", self.names[s], self.names[x], self.names[y]),
                    ));
                }
            }
        }
        Ok(Validity { additive: true })
    }

    /// `T(K)`, canonically ordered.
    pub fn all_ideals(&self) -> &[Set] {
        self.ideals
            .get_or_init(|| closed_sets(self.len(), |s| self.ideal_generated(s)))
    }

    pub fn ideal_lattice(&self) -> Result<IdealLattice> {
        IdealLattice::from_sets(self.all_ideals().to_vec(), |x| self.names[x].clone())
    }

    /// Proper, and `x ⊗ E ⊗ y ⊆ P` forces `x ∈ P` or `y ∈ P`.
    pub fn is_prime(&self, p: Set) -> Result<bool> {
        self.require_ideal(p)?;
        Ok(self.prime_unchecked(p))
    }

    fn prime_unchecked(&self, p: Set) -> bool {
        let n = self.len();
        p != self.all()
            && (0..n).all(|x| {
                p.contains(x) || (0..n).all(|y| p.contains(y) || !self.sandwich(x, y).is_subset(p))
            })
    }

    /// Proper, and `x ⊗ y ∈ P` forces `x ∈ P` or `y ∈ P`.
    pub fn is_completely_prime(&self, p: Set) -> Result<bool> {
        self.require_ideal(p)?;
        let n = self.len();
        Ok(p != self.all()
            && (0..n).all(|x| (0..n).all(|y| !p.contains(self.tensor(x, y)) || p.contains(x) || p.contains(y))))
    }

    /// `x ⊗ E ⊗ x ⊆ I` forces `x ∈ I`.
    pub fn is_semiprime(&self, s: Set) -> Result<bool> {
        self.require_ideal(s)?;
        Ok((0..self.len()).all(|x| s.contains(x) || !self.sandwich(x, x).is_subset(s)))
    }

    /// Tensor powers of `x` in orbit order, stopping at the first repeat.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut orbit = vec![x];
        let mut seen = Set::singleton(x);
        let mut cur = x;
        loop {
            cur = self.tensor(cur, x);
            if seen.contains(cur) {
                return orbit;
            }
            seen.insert(cur);
            orbit.push(cur);
        }
    }

    /// `x^{⊗n} ∈ I` forces `x ∈ I`.
    pub fn is_radical(&self, s: Set) -> Result<bool> {
        self.require_ideal(s)?;
        Ok((0..self.len()).all(|x| s.contains(x) || self.powers(x).iter().all(|&p| !s.contains(p))))
    }

    pub fn prime_ideals(&self) -> &[Set] {
        self.primes.get_or_init(|| {
            self.all_ideals()
                .iter()
                .copied()
                .filter(|&p| self.prime_unchecked(p))
                .collect()
        })
    }

    pub fn completely_prime_ideals(&self) -> Vec<Set> {
        self.all_ideals()
            .iter()
            .copied()
            .filter(|&p| self.is_completely_prime(p).unwrap_or(false))
            .collect()
    }

    /// Intersection of the primes containing `s`; `E` when there are none.
    pub fn semiprime_hull(&self, s: Set) -> Set {
        let gen = self.ideal_generated(s);
        self.prime_ideals()
            .iter()
            .filter(|p| gen.is_subset(**p))
            .fold(self.all(), |acc, p| acc.intersect(*p))
    }

    /// Intersection of the completely primes containing `s`; `E` when there
    /// are none.
    pub fn radical_hull(&self, s: Set) -> Set {
        let gen = self.ideal_generated(s);
        self.completely_prime_ideals()
            .into_iter()
            .filter(|p| gen.is_subset(*p))
            .fold(self.all(), |acc, p| acc.intersect(p))
    }

    /// `⟨x⟩_s`
    pub fn principal(&self, x: usize) -> Set {
        self.semiprime_hull(Set::singleton(x))
    }

    pub fn semiprime_ideals(&self) -> Vec<Set> {
        self.all_ideals()
            .iter()
            .copied()
            .filter(|&s| self.is_semiprime(s).unwrap_or(false))
            .collect()
    }

    /// `T_s(K)` with meet `∩` and join the semiprime hull of the union. Also
    /// checks that semiprimes are the intersections of primes, that the result
    /// is a spatial frame, and that `I ∧ J = ⟨I ⊗ J⟩_s`.
    pub fn ts_lattice(&self) -> Result<IdealLattice> {
        let semis = self.semiprime_ideals();
        for &s in self.all_ideals() {
            if semis.contains(&s) != (self.semiprime_hull(s) == s) {
                return Err(Error::violation("semiprime ⇔ intersection of primes", self.show(s)));
            }
        }
        let ts = IdealLattice::from_sets(semis.clone(), |x| self.names[x].clone())?;
        let l = ts.lattice();
        for i in 0..semis.len() {
            for j in 0..semis.len() {
                let (a, b) = (semis[i], semis[j]);
                if semis[l.meet(i, j)] != a.intersect(b) {
                    return Err(Error::violation("T_s meet is intersection", format!("{} and {}", self.show(a), self.show(b))));
                }
                if semis[l.join(i, j)] != self.semiprime_hull(a.union(b)) {
                    return Err(Error::violation("T_s join is hull of union", format!("{} and {}", self.show(a), self.show(b))));
                }
                if a.intersect(b) != self.semiprime_hull(self.tensor_sets(a, b)) {
                    return Err(Error::violation("I ∧ J = ⟨I⊗J⟩_s", format!("{} and {}", self.show(a), self.show(b))));
                }
            }
        }
        if !l.is_frame() || !frames::is_spatial(l)? {
            return Err(Error::violation("T_s is a spatial frame", "distributivity or spatiality fails"));
        }
        Ok(ts)
    }

    /// Every `m' ⊗ n'` with `m' ∈ ⟨M⟩_s`, `n' ∈ ⟨N⟩_s` lies in `⟨M ⊗ E ⊗ N⟩_s`.
    pub fn hull_inclusion_check(&self, m: Set, n: Set) -> Result<bool> {
        let mid = self.tensor_sets(self.tensor_sets(m, self.all()), n);
        let target = self.semiprime_hull(mid);
        let lhs = self.tensor_sets(self.semiprime_hull(m), self.semiprime_hull(n));
        if !lhs.is_subset(target) {
            let bad = lhs.minus(target).first().expect("non-empty difference");
            return Err(Error::violation(
                "semiprime hull inclusion",
                format!("{} ∈ ⟨{}⟩_s ⊗ ⟨{}⟩_s lies outside ⟨M⊗E⊗N⟩_s", self.names[bad], self.show(m), self.show(n)),
            ));
        }
        Ok(true)
    }

    /// The five characterizations of primality, evaluated independently.
    pub fn prime_clauses(&self, p: Set) -> Result<PrimeClauses> {
        self.require_ideal(p)?;
        if p == self.all() {
            return Err(Error::PreconditionUnmet("the improper ideal is excluded".into()));
        }
        let pair_prime = |family: &[Set]| {
            family.iter().all(|&i| {
                family
                    .iter()
                    .all(|&j| !self.tensor_sets(i, j).is_subset(p) || i.is_subset(p) || j.is_subset(p))
            })
        };
        let t = self.ideal_lattice()?;
        let semis = self.semiprime_ideals();
        let ts = IdealLattice::from_sets(semis.clone(), |x| self.names[x].clone())?;
        Ok(PrimeClauses {
            ideal_pairs: pair_prime(self.all_ideals()),
            meet_prime_in_t: t.index_of(p).is_some_and(|i| t.lattice().is_meet_prime(i)),
            elementwise: self.prime_unchecked(p),
            semiprime_pairs: pair_prime(&semis),
            meet_prime_in_ts: ts.index_of(p).is_some_and(|i| ts.lattice().is_meet_prime(i)),
        })
    }

    /// [`Self::prime_clauses`], asserting that all five agree.
    pub fn prime_equivalences(&self, p: Set) -> Result<PrimeClauses> {
        let c = self.prime_clauses(p)?;
        if !c.agree() {
            return Err(Error::violation("five-way prime equivalence", format!("{}: {c:?}", self.show(p))));
        }
        Ok(c)
    }

    pub fn spectrum(&self) -> Result<TensorSpectrum> {
        let primes = self.prime_ideals().to_vec();
        let names: Vec<String> = primes.iter().map(|&p| self.show(p)).collect();
        let supp: Vec<Set> = (0..self.len())
            .map(|x| (0..primes.len()).filter(|&i| !primes[i].contains(x)).collect())
            .collect();
        let closed = FinSpace::from_closed_basis(names.clone(), &supp)?;
        let nu = FinSpace::from_open_basis(names, &supp)?;
        Ok(TensorSpectrum {
            primes,
            supp,
            closed,
            nu,
        })
    }

    /// `Spc(K)^ν`: the primes with supports as an open basis.
    pub fn spc_nu(&self) -> Result<FinSpace> {
        Ok(self.spectrum()?.nu)
    }

    /// `I ↦ ⋃_{x∈I} supp(x)` is an order isomorphism `T_s(K) → Ω(Spc^ν)`.
    /// Returns the pairs `(I, open)`.
    pub fn theorem_a_check(&self) -> Result<Vec<(Set, Set)>> {
        let ts = self.ts_lattice()?;
        let spc = self.spectrum()?;
        let pairs: Vec<(Set, Set)> = ts.ideals().iter().map(|&i| (i, spc.support_of(i))).collect();
        let opens = spc.nu.opens();
        for (a, &(i, u)) in pairs.iter().enumerate() {
            if !spc.nu.is_open(u) {
                return Err(Error::violation("Theorem A map lands in opens", self.show(i)));
            }
            for &(j, v) in &pairs[..a] {
                if u == v || (i.is_subset(j) != u.is_subset(v)) || (j.is_subset(i) != v.is_subset(u)) {
                    return Err(Error::violation(
                        "Theorem A map is an order embedding",
                        format!("{} and {}", self.show(i), self.show(j)),
                    ));
                }
            }
        }
        if let Some(&u) = opens.iter().find(|u| !pairs.iter().any(|&(_, v)| v == **u)) {
            return Err(Error::violation("Theorem A map is onto", format!("open {} is not hit", spc.nu.show(u))));
        }
        Ok(pairs)
    }

    /// `t_s(K)`: the principal semiprimes `⟨x⟩_s`.
    pub fn principal_part(&self) -> Result<PrincipalPart> {
        let generated: Vec<Set> = (0..self.len()).map(|x| self.principal(x)).collect();
        let mut principals = generated.clone();
        canonicalize(&mut principals);
        let ts = self.ts_lattice()?;
        let l = ts.lattice();
        let idx: Vec<usize> = principals.iter().map(|&s| ts.index_of(s).expect("principals are semiprime")).collect();
        let in_part = |i: usize| idx.contains(&i);
        let sublattice = idx.iter().all(|&a| idx.iter().all(|&b| in_part(l.meet(a, b)) && in_part(l.join(a, b))))
            && in_part(l.bottom())
            && in_part(l.top());
        let compacts = frames::compact_elements(l)?;
        let mut compact_sets: Vec<Set> = compacts.iter().map(|i| ts.ideals()[i]).collect();
        canonicalize(&mut compact_sets);
        let non_principal = ts.ideals().iter().copied().filter(|s| !principals.contains(s)).collect();
        Ok(PrincipalPart {
            equals_compacts_of_ts: compact_sets == principals,
            is_sublattice_of_ts: sublattice,
            generated,
            principals,
            non_principal,
        })
    }

    /// `t_s(K)` materialized as a lattice (fails if the poset is not one).
    pub fn principal_lattice(&self) -> Result<IdealLattice> {
        let (part, names) = (self.principal_part()?, |x: usize| self.names[x].clone());
        IdealLattice::from_sets(part.principals, names)
    }

    /// For all `x, y` some `z` has `⟨x⟩_s ∩ ⟨y⟩_s = ⟨z⟩_s`; on failure the
    /// first offending pair.
    pub fn principal_closure_witness(&self) -> Option<(usize, usize)> {
        let gen: Vec<Set> = (0..self.len()).map(|x| self.principal(x)).collect();
        for x in 0..self.len() {
            for y in 0..self.len() {
                let meet = gen[x].intersect(gen[y]);
                if !gen.contains(&meet) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_principally_closed(&self) -> bool {
        self.principal_closure_witness().is_none()
    }

    pub fn compact_detection(&self) -> Result<CompactDetection> {
        let n = self.len();
        let witnesses: Vec<Option<usize>> = (0..n)
            .map(|x| {
                let target = self.principal(x);
                (0..n).find(|&s| self.principal(self.tensor(self.tensor(x, s), x)) == target)
            })
            .collect();
        let witness_sets: Vec<bool> = (0..n)
            .map(|x| self.semiprime_hull(self.sandwich(x, x)) == self.principal(x))
            .collect();
        let part = self.principal_part()?;
        let cd = CompactDetection {
            element_level: witnesses.iter().all(Option::is_some),
            witness_set_level: witness_sets.iter().all(|&b| b),
            lattice_level: part.equals_compacts_of_ts,
            witnesses,
            witness_sets,
            additive: self.is_additive(),
        };
        if cd.additive && cd.element_level != cd.lattice_level {
            return Err(Error::violation(
                "compact detection ⇔ compacts are principal",
                format!("element level {}, lattice level {}", cd.element_level, cd.lattice_level),
            ));
        }
        Ok(cd)
    }

    pub fn theorem_b_check(&self) -> Result<TheoremB> {
        let pc_witness = self.principal_closure_witness();
        let cd = self.compact_detection()?;
        let part = self.principal_part()?;
        let ts = self.ts_lattice()?;
        let clause1 = pc_witness.is_none() && cd.lattice_level;
        let coherent = frames::is_coherent(ts.lattice())?;
        let clause2 = coherent && part.equals_compacts_of_ts;
        let spc = self.spectrum()?;
        let spectral = spc.closed.is_spectral()?;
        let k = spc.closed.len();
        let complements: Vec<Set> = spc.supp.iter().map(|s| s.complement(k)).collect();
        let qc = spc.closed.quasi_compact_opens()?;
        let witness_open = qc.iter().copied().find(|u| !complements.contains(u));
        let missing = complements.iter().copied().find(|u| !qc.contains(u));
        let clause3 = spectral && witness_open.is_none() && missing.is_none();
        let b = TheoremB {
            principal_closure: pc_witness.is_none(),
            lattice_compact_detection: cd.lattice_level,
            clause1,
            clause2,
            clause3,
            pc_witness,
            non_principal_compact: part.non_principal.first().copied().filter(|_| !part.equals_compacts_of_ts),
            witness_open,
        };
        if !(clause1 == clause2 && clause2 == clause3) {
            return Err(Error::violation("Theorem B three-way equivalence", format!("{b:?}")));
        }
        Ok(b)
    }

    /// The bijection between `T_s(K)` and the Thomason subsets of `Spc(K)`,
    /// checked to compose to identities on both sides.
    pub fn classify(&self) -> Result<Vec<(Set, Set)>> {
        let b = self.theorem_b_check()?;
        if !b.clause1 {
            let why = if !b.principal_closure {
                "principal closure fails"
            } else {
                "compact detection fails (compacts of T_s are not the principals)"
            };
            return Err(Error::PreconditionUnmet(why.into()));
        }
        let ts = self.ts_lattice()?;
        let spc = self.spectrum()?;
        let thomason = spc.closed.thomason_subsets()?;
        let back = |z: Set| -> Set { (0..self.len()).filter(|&x| spc.supp[x].is_subset(z)).collect() };
        let rows: Vec<(Set, Set)> = ts.ideals().iter().map(|&i| (i, spc.support_of(i))).collect();
        for &(i, z) in &rows {
            if !thomason.contains(&z) || back(z) != i {
                return Err(Error::violation("classification composes to identity", self.show(i)));
            }
        }
        for &z in &thomason {
            let i = back(z);
            if !ts.ideals().contains(&i) || spc.support_of(i) != z {
                return Err(Error::violation("classification composes to identity", spc.closed.show(z)));
            }
        }
        Ok(rows)
    }

    fn require_additive(&self) -> Result<()> {
        if self.is_additive() {
            Ok(())
        } else {
            Err(Error::PreconditionUnmet("the system is not additive".into()))
        }
    }

    pub fn lemma_principal_joins_check(&self) -> Result<PrincipalJoins> {
        self.require_additive()?;
        let n = self.len();
        let sum = |x, y| self.sum(x, y).expect("additive");
        let mut equality = true;
        for x in 0..n {
            for y in 0..n {
                let (px, py) = (self.principal(x), self.principal(y));
                if self.principal(sum(x, y)) != self.semiprime_hull(px.union(py)) {
                    return Err(Error::violation(
                        "⟨x⊕y⟩_s = ⟨x⟩_s ∨ ⟨y⟩_s",
                        format!("{}, {}", self.names[x], self.names[y]),
                    ));
                }
                let lower = self.principal(sum(self.tensor(x, y), self.tensor(y, x)));
                if !lower.is_subset(px.intersect(py)) {
                    return Err(Error::violation(
                        "⟨(x⊗y)⊕(y⊗x)⟩_s ≤ ⟨x⟩_s ∧ ⟨y⟩_s",
                        format!("{}, {}", self.names[x], self.names[y]),
                    ));
                }
                equality &= lower == px.intersect(py);
            }
        }
        let mut radical = true;
        for s in self.semiprime_ideals() {
            radical &= self.is_radical(s)?;
        }
        let mut completely = true;
        for &p in self.prime_ideals() {
            completely &= self.is_completely_prime(p)?;
        }
        let r = PrincipalJoins {
            equality_everywhere: equality,
            semiprimes_radical: radical,
            primes_completely_prime: completely,
        };
        if !(equality == radical && radical == completely) {
            return Err(Error::violation("equality ⇔ semiprimes radical ⇔ primes completely prime", format!("{r:?}")));
        }
        Ok(r)
    }

    /// Does `x` commute with every member of `with`?
    pub fn centralizes(&self, x: usize, with: Set) -> bool {
        with.iter().all(|y| self.tensor(x, y) == self.tensor(y, x))
    }

    pub fn central_elements(&self) -> Set {
        (0..self.len()).filter(|&x| self.centralizes(x, self.all())).collect()
    }

    /// The weak central generation hypothesis for `centralizing`: it thickly
    /// generates `E`, and every ideal is generated by the elements in it that
    /// centralize the set.
    pub fn weak_central_generation_check(&self, centralizing: Set) -> WeakCentralGeneration {
        let thickly_generates = self.thick_closure(centralizing) == self.all();
        let central: Set = (0..self.len()).filter(|&x| self.centralizes(x, centralizing)).collect();
        let witness = self
            .all_ideals()
            .iter()
            .copied()
            .find(|&i| self.ideal_generated(i.intersect(central)) != i);
        WeakCentralGeneration {
            thickly_generates,
            ideals_centrally_generated: witness.is_none(),
            witness_ideal: witness,
        }
    }

    /// Under weak central generation and compact detection, every principal
    /// semiprime has a generator centralizing the set, and principal closure
    /// holds.
    pub fn central_implies_pc_check(&self, centralizing: Set) -> Result<bool> {
        self.require_additive()?;
        let w = self.weak_central_generation_check(centralizing);
        if !w.thickly_generates || !w.ideals_centrally_generated {
            return Err(Error::PreconditionUnmet("weak central generation fails for the given set".into()));
        }
        if !self.compact_detection()?.element_level {
            return Err(Error::PreconditionUnmet("compact detection fails".into()));
        }
        let central: Vec<usize> = (0..self.len()).filter(|&x| self.centralizes(x, centralizing)).collect();
        for x in 0..self.len() {
            if !central.iter().any(|&c| self.principal(c) == self.principal(x)) {
                return Err(Error::violation("principal semiprimes have centralizing generators", self.names[x].clone()));
            }
        }
        for &x in &central {
            for &y in &central {
                if self.principal(x).intersect(self.principal(y)) != self.principal(self.tensor(x, y)) {
                    return Err(Error::violation(
                        "⟨x'⟩_s ∩ ⟨y'⟩_s = ⟨x'⊗y'⟩_s",
                        format!("{}, {}", self.names[x], self.names[y]),
                    ));
                }
            }
        }
        if let Some((x, y)) = self.principal_closure_witness() {
            return Err(Error::violation("principal closure", format!("{}, {}", self.names[x], self.names[y])));
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeClauses {
    pub ideal_pairs: bool,
    pub meet_prime_in_t: bool,
    pub elementwise: bool,
    pub semiprime_pairs: bool,
    pub meet_prime_in_ts: bool,
}

impl PrimeClauses {
    pub fn as_array(&self) -> [bool; 5] {
        [
            self.ideal_pairs,
            self.meet_prime_in_t,
            self.elementwise,
            self.semiprime_pairs,
            self.meet_prime_in_ts,
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&b| b == a[0])
    }
}

/// The primes of a system with the two topologies their supports generate.
#[derive(Clone, Debug)]
pub struct TensorSpectrum {
    pub primes: Vec<Set>,
    /// `supp[x]` as a set of point indices.
    pub supp: Vec<Set>,
    /// `Spc(K)`: supports form a closed basis.
    pub closed: FinSpace,
    /// `Spc(K)^ν`: supports form an open basis.
    pub nu: FinSpace,
}

impl TensorSpectrum {
    /// `⋃_{x∈I} supp(x)`
    pub fn support_of(&self, i: Set) -> Set {
        i.iter().fold(Set::EMPTY, |acc, x| acc.union(self.supp[x]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPart {
    /// `⟨x⟩_s` for every element `x`.
    pub generated: Vec<Set>,
    /// The distinct principal semiprimes, canonically ordered.
    pub principals: Vec<Set>,
    pub non_principal: Vec<Set>,
    pub is_sublattice_of_ts: bool,
    pub equals_compacts_of_ts: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactDetection {
    /// First `s` with `⟨x⟩_s = ⟨x⊗s⊗x⟩_s`, per element.
    pub witnesses: Vec<Option<usize>>,
    /// `⟨x⟩_s = ⟨x⊗E⊗x⟩_s`, per element.
    pub witness_sets: Vec<bool>,
    pub element_level: bool,
    pub witness_set_level: bool,
    pub lattice_level: bool,
    pub additive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremB {
    pub principal_closure: bool,
    pub lattice_compact_detection: bool,
    /// Principal closure and compact detection.
    pub clause1: bool,
    /// `T_s` coherent with compact part `t_s`.
    pub clause2: bool,
    /// `Spc` spectral with quasi-compact opens the support complements.
    pub clause3: bool,
    pub pc_witness: Option<(usize, usize)>,
    pub non_principal_compact: Option<Set>,
    /// A quasi-compact open of `Spc` that is no support complement.
    pub witness_open: Option<Set>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrincipalJoins {
    pub equality_everywhere: bool,
    pub semiprimes_radical: bool,
    pub primes_completely_prime: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeakCentralGeneration {
    pub thickly_generates: bool,
    pub ideals_centrally_generated: bool,
    pub witness_ideal: Option<Set>,
}
