//! Open and closed support data on bounded distributive lattices.
//!
//! An open support datum `(X, σ)` sends each lattice element to an open of a
//! finite sober space, preserving the bounds, finite joins and finite meets.
//! A closed support datum does the same with closed subsets. The frame-level
//! picture is the induced map `Id(L) → Ω(X)`, `𝓘 ↦ ∪_{x∈𝓘} σ(x)`, exposed
//! through [`OpenSupportDatum::ideal_map`].

use crate::bits::{canonicalize, Set};
use crate::error::{Error, Result};
use crate::frames;
use crate::order::FinLattice;
use crate::tensys::TensorSystem;
use crate::topo::{self, spc_of_lattice, FinSpace};

fn axiom(clause: &str, witness: String) -> Error {
    Error::AxiomViolation {
        clause: clause.to_string(),
        witness,
    }
}

/// Definitional property flags shared by open and closed data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportProperties {
    pub injective: bool,
    /// `σ(x) = ∅` forces `x = 0`.
    pub faithful: bool,
    pub order_reflecting: bool,
    pub realizing: bool,
    /// `σ` is surjective onto the opens (or the closed sets).
    pub noetherian_realizing: bool,
}

/// Outcome of [`OpenSupportDatum::is_classifying`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classifying {
    Classifying,
    /// Two distinct ideals with the same image.
    Collision(Set, Set),
    /// An open outside the image.
    Unhit(Set),
    /// `φ(𝓘) ⊆ φ(𝓙)` although `𝓘 ⊄ 𝓙`.
    Unreflected(Set, Set),
}

impl Classifying {
    pub fn holds(&self) -> bool {
        matches!(self, Classifying::Classifying)
    }
}

fn check_lattice_axioms(base: &FinLattice, target: &FinSpace, sigma: &[Set]) -> Result<()> {
    let show = |x: usize| base.name(x).to_string();
    if !sigma[base.bottom()].is_empty() {
        return Err(axiom("a", format!("σ({}) = {} is not empty", show(base.bottom()), target.show(sigma[base.bottom()]))));
    }
    if sigma[base.top()] != target.points() {
        return Err(axiom("b", format!("σ({}) = {} is not the whole space", show(base.top()), target.show(sigma[base.top()]))));
    }
    for x in 0..base.len() {
        for y in 0..base.len() {
            if sigma[base.join(x, y)] != sigma[x].union(sigma[y]) {
                return Err(axiom("c", format!("σ({} ∨ {}) ≠ σ({0}) ∪ σ({1})", show(x), show(y))));
            }
            if sigma[base.meet(x, y)] != sigma[x].intersect(sigma[y]) {
                return Err(axiom("c", format!("σ({} ∧ {}) ≠ σ({0}) ∩ σ({1})", show(x), show(y))));
            }
        }
    }
    Ok(())
}

fn check_shape(base: &FinLattice, target: &FinSpace, sigma: &[Set]) -> Result<()> {
    base.require_distributive()?;
    if !target.is_sober() {
        return Err(Error::NotSpectral("the target space is not sober".into()));
    }
    if sigma.len() != base.len() {
        return Err(axiom("shape", format!("{} values for {} elements", sigma.len(), base.len())));
    }
    if let Some(x) = (0..base.len()).find(|&x| !sigma[x].is_subset(target.points())) {
        return Err(axiom("shape", format!("σ({}) names unknown points", base.name(x))));
    }
    Ok(())
}

fn properties_of(base: &FinLattice, sigma: &[Set], realized: &[Set], all: &[Set]) -> Result<SupportProperties> {
    let n = base.len();
    let mut image: Vec<Set> = sigma.to_vec();
    canonicalize(&mut image);
    image.dedup();
    let p = SupportProperties {
        injective: image.len() == n,
        faithful: (0..n).all(|x| !sigma[x].is_empty() || x == base.bottom()),
        order_reflecting: (0..n).all(|x| (0..n).all(|y| !sigma[x].is_subset(sigma[y]) || base.leq(x, y))),
        realizing: realized.iter().all(|u| image.contains(u)),
        noetherian_realizing: all.iter().all(|u| image.contains(u)),
    };
    if p.injective != p.order_reflecting {
        return Err(Error::violation("injective ⇔ order-reflecting", format!("{p:?}")));
    }
    if p.injective && !p.faithful {
        return Err(Error::violation("injective ⇒ faithful", format!("{p:?}")));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSupportDatum {
    base: FinLattice,
    target: FinSpace,
    sigma: Vec<Set>,
}

impl OpenSupportDatum {
    pub fn new(base: FinLattice, target: FinSpace, sigma: Vec<Set>) -> Result<Self> {
        check_shape(&base, &target, &sigma)?;
        if let Some(x) = (0..base.len()).find(|&x| !target.is_open(sigma[x])) {
            return Err(axiom("open values", format!("σ({}) = {} is not open", base.name(x), target.show(sigma[x]))));
        }
        check_lattice_axioms(&base, &target, &sigma)?;
        Ok(OpenSupportDatum { base, target, sigma })
    }

    /// `(Spc(L), supp)`
    pub fn spectrum(base: &FinLattice) -> Result<Self> {
        let spc = spc_of_lattice(base)?;
        Self::new(base.clone(), spc.space().clone(), spc.supports().to_vec())
    }

    pub fn base(&self) -> &FinLattice {
        &self.base
    }

    pub fn target(&self) -> &FinSpace {
        &self.target
    }

    pub fn sigma(&self, x: usize) -> Set {
        self.sigma[x]
    }

    pub fn values(&self) -> &[Set] {
        &self.sigma
    }

    pub fn properties(&self) -> Result<SupportProperties> {
        let qc = self.target.quasi_compact_opens()?;
        properties_of(&self.base, &self.sigma, &qc, self.target.opens())
    }

    /// `𝓘 ↦ ∪_{x∈𝓘} σ(x)` on every ideal, in canonical ideal order.
    pub fn ideal_map(&self) -> Vec<(Set, Set)> {
        frames::all_ideals(&self.base)
            .ideals()
            .iter()
            .map(|&i| (i, i.iter().fold(Set::EMPTY, |acc, x| acc.union(self.sigma[x]))))
            .collect()
    }

    /// Is the ideal map an order bijection `Id(L) → Ω(X)`? Monotonicity is
    /// automatic; the witnesses are a colliding pair, an unhit open or an
    /// unreflected comparison.
    pub fn is_classifying(&self) -> Classifying {
        let map = self.ideal_map();
        for (k, &(i, u)) in map.iter().enumerate() {
            if let Some(&(j, _)) = map[k + 1..].iter().find(|(_, v)| *v == u) {
                return Classifying::Collision(i, j);
            }
        }
        if let Some(&u) = self.target.opens().iter().find(|u| !map.iter().any(|(_, v)| v == *u)) {
            return Classifying::Unhit(u);
        }
        for &(i, u) in &map {
            for &(j, v) in &map {
                if u.is_subset(v) && !i.is_subset(j) {
                    return Classifying::Unreflected(i, j);
                }
            }
        }
        Classifying::Classifying
    }

    /// Classifying exactly when injective and realizing.
    pub fn classifying_iff_check(&self) -> Result<bool> {
        let lhs = self.is_classifying().holds();
        let p = self.properties()?;
        if lhs != (p.injective && p.realizing) {
            return Err(Error::violation(
                "classifying ⇔ injective ∧ realizing",
                format!("classifying = {lhs}, {p:?}"),
            ));
        }
        Ok(lhs)
    }

    /// The morphism into `(Spc(L), supp)`: `t ↦ {a : t ∉ σ(a)}`.
    pub fn universal_map(&self) -> Result<Vec<usize>> {
        let spc = spc_of_lattice(&self.base)?;
        let map = self
            .target
            .points()
            .iter()
            .map(|t| {
                let f: Set = (0..self.base.len()).filter(|&a| !self.sigma[a].contains(t)).collect();
                spc.point_of(f).ok_or_else(|| {
                    Error::violation(
                        "universal map lands in primes",
                        format!("{} ↦ {:?}", self.target.name(t), f),
                    )
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        if let Some(a) = (0..self.base.len()).find(|&a| FinSpace::preimage(&map, spc.supp(a)) != self.sigma[a]) {
            return Err(Error::violation("σ = f⁻¹ ∘ supp", self.base.name(a).to_string()));
        }
        debug_assert!(topo::is_continuous(&self.target, spc.space(), &map));
        Ok(map)
    }

    /// Injective and surjective onto the opens: the target is Noetherian and
    /// the datum classifies.
    pub fn noetherian_realizing_check(&self) -> Result<bool> {
        let p = self.properties()?;
        if !p.injective || !p.noetherian_realizing {
            return Err(Error::PreconditionUnmet(format!("needs injective and Noetherian-realizing, got {p:?}")));
        }
        if !self.target.is_noetherian()? {
            return Err(Error::violation("Noetherian realization ⇒ Noetherian", "target has a non-quasi-compact open"));
        }
        if !self.is_classifying().holds() {
            return Err(Error::violation("Noetherian realization ⇒ classifying", format!("{:?}", self.is_classifying())));
        }
        Ok(true)
    }
}

/// Supports restricted to the minimal primes of `Spc(L)`, which are the
/// closed points once supports are read as closed sets.
pub fn closed_points_datum(l: &FinLattice) -> Result<OpenSupportDatum> {
    let spc = spc_of_lattice(l)?;
    let primes = spc.primes();
    let minimal: Set = (0..primes.len())
        .filter(|&p| !primes.iter().any(|&q| q != primes[p] && q.is_subset(primes[p])))
        .collect();
    let kept: Vec<usize> = minimal.iter().collect();
    let target = spc.space().subspace(minimal);
    let sigma = (0..l.len())
        .map(|x| (0..kept.len()).filter(|&i| spc.supp(x).contains(kept[i])).collect())
        .collect();
    OpenSupportDatum::new(l.clone(), target, sigma)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSupportDatum {
    base: FinLattice,
    target: FinSpace,
    sigma: Vec<Set>,
}

impl ClosedSupportDatum {
    pub fn new(base: FinLattice, target: FinSpace, sigma: Vec<Set>) -> Result<Self> {
        check_shape(&base, &target, &sigma)?;
        if let Some(x) = (0..base.len()).find(|&x| !target.is_closed(sigma[x])) {
            return Err(axiom("closed values", format!("σ({}) = {} is not closed", base.name(x), target.show(sigma[x]))));
        }
        check_lattice_axioms(&base, &target, &sigma)?;
        Ok(ClosedSupportDatum { base, target, sigma })
    }

    pub fn base(&self) -> &FinLattice {
        &self.base
    }

    pub fn target(&self) -> &FinSpace {
        &self.target
    }

    pub fn sigma(&self, x: usize) -> Set {
        self.sigma[x]
    }

    /// Realization asks for the Thomason closed sets, the complements of
    /// quasi-compact opens.
    pub fn properties(&self) -> Result<SupportProperties> {
        let n = self.target.len();
        let thomason: Vec<Set> = self.target.quasi_compact_opens()?.iter().map(|u| u.complement(n)).collect();
        properties_of(&self.base, &self.sigma, &thomason, &self.target.closed_sets())
    }
}

/// `τ(x) = X ∖ σ(x)` over the opposite lattice.
pub fn closed_to_open(d: &ClosedSupportDatum) -> Result<OpenSupportDatum> {
    let n = d.target.len();
    let tau = d.sigma.iter().map(|s| s.complement(n)).collect();
    let open = OpenSupportDatum::new(d.base.dual(), d.target.clone(), tau)?;
    let (p, q) = (d.properties()?, open.properties()?);
    if (p.injective, p.realizing, p.noetherian_realizing) != (q.injective, q.realizing, q.noetherian_realizing) {
        return Err(Error::violation("closed → open keeps the property flags", format!("{p:?} vs {q:?}")));
    }
    Ok(open)
}

/// `(Spc(K), supp)` on the principal part: `σ(⟨x⟩_s) = supp(x)`.
pub fn spc_closed_datum(ts: &TensorSystem) -> Result<ClosedSupportDatum> {
    let principals = ts.principal_lattice()?;
    let spc = ts.spectrum()?;
    let sigma = principals
        .ideals()
        .iter()
        .map(|&j| {
            let x = (0..ts.len()).find(|&x| ts.principal(x) == j).expect("principal semiprimes have generators");
            spc.supp[x]
        })
        .collect();
    ClosedSupportDatum::new(principals.lattice().clone(), spc.closed.clone(), sigma)
}

/// Outcome of [`theorem_c1_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Verdict {
    pub injective_and_realizing: bool,
    /// Target point `t` goes to the prime `{x : t ∉ σ(⟨x⟩_s)}`, by index in
    /// the spectrum; set only when the hypotheses of the theorem hold.
    pub map: Option<Vec<usize>>,
}

/// On a principally closed system with compact detection, an injective and
/// realizing closed datum on `t_s(K)` is homeomorphic to `Spc(K)` via the
/// universal map.
pub fn theorem_c1_check(ts: &TensorSystem, d: &ClosedSupportDatum) -> Result<C1Verdict> {
    if let Some((x, y)) = ts.principal_closure_witness() {
        return Err(Error::PreconditionUnmet(format!(
            "principal closure fails at ({}, {})",
            ts.name(x),
            ts.name(y)
        )));
    }
    if !ts.compact_detection()?.lattice_level {
        return Err(Error::PreconditionUnmet("compact detection fails".into()));
    }
    let principals = ts.principal_lattice()?;
    if d.base.names() != principals.lattice().names() || d.base.len() != principals.len() {
        return Err(Error::PreconditionUnmet("the datum is not on the principal part of the system".into()));
    }
    let p = d.properties()?;
    if !(p.injective && p.realizing) {
        return Ok(C1Verdict {
            injective_and_realizing: false,
            map: None,
        });
    }
    let open = closed_to_open(d)?;
    if !open.is_classifying().holds() {
        return Err(Error::violation("injective ∧ realizing ⇒ classifying", format!("{:?}", open.is_classifying())));
    }
    let spc = ts.spectrum()?;
    let sigma_of = |x: usize| d.sigma[principals.index_of(ts.principal(x)).expect("principal")];
    let map = d
        .target
        .points()
        .iter()
        .map(|t| {
            let f: Set = (0..ts.len()).filter(|&x| !sigma_of(x).contains(t)).collect();
            spc.primes.iter().position(|&q| q == f).ok_or_else(|| {
                Error::violation("universal map lands in primes", format!("{} ↦ {}", d.target.name(t), ts.show(f)))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    if !topo::is_homeomorphism(&d.target, &spc.closed, &map) {
        return Err(Error::violation("X ≅ Spc(K)", "the universal map is not a homeomorphism"));
    }
    Ok(C1Verdict {
        injective_and_realizing: true,
        map: Some(map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// `𝟑 → 𝟐`, `0 ↦ 0` and `1, 2 ↦ 2`, realized on the one-point space.
    fn three_datum() -> OpenSupportDatum {
        let target = FinSpace::discrete(vec!["*".into()]).unwrap();
        let s = Set::singleton(0);
        OpenSupportDatum::new(FinLattice::chain(3), target, vec![Set::EMPTY, s, s]).unwrap()
    }

    #[test]
    fn validation() {
        let b2 = fixtures::b2();
        assert!(OpenSupportDatum::spectrum(&b2).is_ok());
        let spc = spc_of_lattice(&b2).unwrap();
        let mut bad = spc.supports().to_vec();
        bad[0] = Set::singleton(0);
        let err = OpenSupportDatum::new(b2.clone(), spc.space().clone(), bad).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref clause, .. } if clause == "a"));
        let empty = vec![Set::EMPTY; 4];
        let err = OpenSupportDatum::new(b2, spc.space().clone(), empty).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref clause, .. } if clause == "b"));
        let c3 = fixtures::c3();
        let x = spc_of_lattice(&c3).unwrap().space().clone();
        let full = x.points();
        assert!(OpenSupportDatum::new(c3, x, vec![Set::EMPTY, full, full]).is_ok());
    }

    #[test]
    fn three_element_chain_is_faithful_not_injective() {
        let d = three_datum();
        let p = d.properties().unwrap();
        assert!(p.faithful && !p.injective && p.realizing);
        let ideals = frames::all_ideals(d.base());
        assert_eq!(d.is_classifying(), Classifying::Collision(ideals.ideals()[1], ideals.ideals()[2]));
        assert!(!d.classifying_iff_check().unwrap());
        assert!(matches!(d.noetherian_realizing_check(), Err(Error::PreconditionUnmet(_))));
    }

    #[test]
    fn spectrum_datum_is_classifying() {
        for (_, l) in fixtures::distributive_lattices().into_iter().take(8) {
            let d = OpenSupportDatum::spectrum(&l).unwrap();
            let p = d.properties().unwrap();
            assert!(p.injective && p.faithful && p.order_reflecting && p.realizing);
            assert!(d.classifying_iff_check().unwrap());
            let map = d.universal_map().unwrap();
            assert!(map.iter().enumerate().all(|(i, &j)| i == j));
        }
        let one = FinLattice::chain(1);
        assert!(OpenSupportDatum::spectrum(&one).unwrap().is_classifying().holds());
    }

    #[test]
    fn closed_points() {
        let d = closed_points_datum(&fixtures::c3()).unwrap();
        let p = d.properties().unwrap();
        assert!(p.faithful && p.realizing && !p.injective);
        assert!(!d.is_classifying().holds());
        assert_eq!(d.target().names(), ["{0}"]);
        assert_eq!(d.universal_map().unwrap(), vec![0]);
        let b2 = closed_points_datum(&fixtures::b2()).unwrap();
        assert_eq!(b2, OpenSupportDatum::spectrum(&fixtures::b2()).unwrap());
        assert!(closed_points_datum(&FinLattice::chain(2)).unwrap().is_classifying().holds());
    }

    #[test]
    fn noetherian_realization() {
        assert!(OpenSupportDatum::spectrum(&fixtures::b2()).unwrap().noetherian_realizing_check().unwrap());
        let c3 = OpenSupportDatum::spectrum(&fixtures::c3()).unwrap();
        assert!(c3.noetherian_realizing_check().unwrap());
    }

    #[test]
    fn closed_data() {
        let m = fixtures::matrix2();
        let d = spc_closed_datum(&m).unwrap();
        let open = closed_to_open(&d).unwrap();
        assert!(open.is_classifying().holds());
        let b2 = fixtures::b2();
        let spc = spc_of_lattice(&b2).unwrap();
        let dual = spc.space().hochster_dual().unwrap();
        let closed = ClosedSupportDatum::new(b2.clone(), dual.clone(), spc.supports().to_vec()).unwrap();
        let open = closed_to_open(&closed).unwrap();
        let n = dual.len();
        assert!((0..b2.len()).all(|x| open.sigma(x) == spc.supp(x).complement(n)));
    }

    #[test]
    fn theorem_c1() {
        for ts in [fixtures::matrix2(), fixtures::comm3()] {
            let d = spc_closed_datum(&ts).unwrap();
            let v = theorem_c1_check(&ts, &d).unwrap();
            assert!(v.injective_and_realizing);
            let map = v.map.unwrap();
            assert!(map.iter().enumerate().all(|(i, &j)| i == j));
        }
        // supp(a) ∪ supp(b) misses {0,a,b}, so supports do not even form a datum
        let f = fixtures::freepair();
        assert!(matches!(spc_closed_datum(&f), Err(Error::AxiomViolation { .. })));
        let d = spc_closed_datum(&fixtures::matrix2()).unwrap();
        assert!(matches!(theorem_c1_check(&f, &d), Err(Error::PreconditionUnmet(_))));
    }
}
