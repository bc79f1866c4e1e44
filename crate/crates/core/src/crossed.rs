//! Finite group actions on tensor systems and their crossed products.
//!
//! Two models are built. The pure model has carrier `E × G` with
//! `(x⊠g)⊗(y⊠h) = (x⊗g(y))⊠gh` and no sums. The full model has carrier the
//! `G`-indexed tuples over an additive base, with componentwise sums and the
//! bilinear extension of the same product.

use std::collections::HashSet;

use crate::bits::{Set, CAPACITY};
use crate::error::{Error, Result};
use crate::tensys::{Rule, TensorSystem};
use crate::topo::{self, FinSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// A group from its row-major multiplication table.
    pub fn new(names: Vec<String>, mul: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group has at least one element".into()));
        }
        if mul.len() != n * n || mul.iter().any(|&v| v >= n) {
            return Err(Error::InvalidGroup("multiplication table must be a total n×n table".into()));
        }
        let m = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("`{}` has no inverse", names[a])))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(FiniteGroup {
            names,
            mul,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` with elements `e, g, g2, ...`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::new(names, mul).expect("cyclic groups are groups")
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

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.len() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// `G` acting on a tensor system by automorphisms; `act[g][x] = g(x)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    system: TensorSystem,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, system: TensorSystem, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = system.len();
        if act.len() != group.len() {
            return Err(Error::InvalidAction("one permutation per group element is required".into()));
        }
        for (g, p) in act.iter().enumerate() {
            let gname = group.name(g);
            let image: Set = p.iter().copied().filter(|&y| y < n).collect();
            if p.len() != n || image.len() != n {
                return Err(Error::InvalidAction(format!("`{gname}` does not act by a permutation")));
            }
            if p[system.zero()] != system.zero() || p[system.unit()] != system.unit() {
                return Err(Error::InvalidAction(format!("`{gname}` moves the zero or the unit")));
            }
            for x in 0..n {
                for y in 0..n {
                    if p[system.tensor(x, y)] != system.tensor(p[x], p[y]) {
                        return Err(Error::InvalidAction(format!(
                            "`{gname}` does not preserve {}⊗{}",
                            system.name(x),
                            system.name(y)
                        )));
                    }
                    if system.is_additive() && system.sum(x, y).map(|s| p[s]) != system.sum(p[x], p[y]) {
                        return Err(Error::InvalidAction(format!(
                            "`{gname}` does not preserve {}⊕{}",
                            system.name(x),
                            system.name(y)
                        )));
                    }
                }
            }
            for &(premises, c) in system.rules() {
                let moved: Set = premises.iter().map(|x| p[x]).collect();
                if !system.thick_closure(moved).contains(p[c]) {
                    return Err(Error::InvalidAction(format!(
                        "`{gname}` sends the rule {} → {} to an underivable rule",
                        system.show(premises),
                        system.name(c)
                    )));
                }
            }
        }
        if act[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidAction("the identity does not act trivially".into()));
        }
        for g in 0..group.len() {
            for h in 0..group.len() {
                let gh = group.mul(g, h);
                if (0..n).any(|x| act[gh][x] != act[g][act[h][x]]) {
                    return Err(Error::InvalidAction(format!(
                        "action of `{}{}` is not the composite",
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(GroupAction { group, system, act })
    }

    /// Extend the permutations given for some group elements to the whole
    /// group by composition, then validate.
    pub fn from_generators(group: FiniteGroup, system: TensorSystem, gens: &[(usize, Vec<usize>)]) -> Result<Self> {
        let n = system.len();
        let mut act: Vec<Option<Vec<usize>>> = vec![None; group.len()];
        act[group.identity()] = Some((0..n).collect());
        for (g, p) in gens {
            if *g >= group.len() || p.len() != n {
                return Err(Error::InvalidAction("generator permutation has the wrong shape".into()));
            }
            if act[*g].as_ref().is_some_and(|q| q != p) {
                return Err(Error::InvalidAction(format!("conflicting permutations for `{}`", group.name(*g))));
            }
            act[*g] = Some(p.clone());
        }
        loop {
            let mut grew = false;
            for g in 0..group.len() {
                for (h, p) in gens {
                    let Some(ag) = act[g].clone() else { continue };
                    let gh = group.mul(g, *h);
                    if p.iter().any(|&y| y >= n) {
                        return Err(Error::InvalidAction("permutation entry out of range".into()));
                    }
                    let comp: Vec<usize> = (0..n).map(|x| ag[p[x]]).collect();
                    match &act[gh] {
                        None => {
                            act[gh] = Some(comp);
                            grew = true;
                        }
                        Some(q) if *q != comp => {
                            return Err(Error::InvalidAction(format!(
                                "generators give two actions of `{}`",
                                group.name(gh)
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let act = act
            .into_iter()
            .enumerate()
            .map(|(g, p)| p.ok_or_else(|| Error::InvalidAction(format!("generators do not reach `{}`", group.name(g)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, system, act)
    }

    pub fn trivial(system: TensorSystem) -> Self {
        let id = (0..system.len()).collect();
        Self::new(FiniteGroup::trivial(), system, vec![id]).expect("the trivial action is valid")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn system(&self) -> &TensorSystem {
        &self.system
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.act
    }

    fn image(&self, g: usize, s: Set) -> Set {
        s.iter().map(|x| self.act[g][x]).collect()
    }

    pub fn is_stable(&self, s: Set) -> bool {
        (0..self.group.len()).all(|g| self.image(g, s) == s)
    }

    /// Index of `x⊠g` in the pure model.
    pub fn pure_index(&self, x: usize, g: usize) -> usize {
        x * self.group.len() + g
    }

    /// `I ⋊ G = { i⊠g }` inside the pure model.
    pub fn pure_lift(&self, i: Set) -> Set {
        i.iter()
            .flat_map(|x| (0..self.group.len()).map(move |g| self.pure_index(x, g)))
            .collect()
    }
}

/// The pure crossed product on `E × G`.
pub fn crossed_product_pure(a: &GroupAction) -> Result<TensorSystem> {
    let (base, group) = (&a.system, &a.group);
    let (n, m) = (base.len(), group.len());
    if n * m > CAPACITY {
        return Err(Error::TooLarge(n * m));
    }
    let names: Vec<String> = (0..n * m)
        .map(|i| format!("{}⊠{}", base.name(i / m), group.name(i % m)))
        .collect();
    let mut tensor = vec![0; n * m * n * m];
    for i in 0..n * m {
        let (x, g) = (i / m, i % m);
        for j in 0..n * m {
            let (y, h) = (j / m, j % m);
            tensor[i * n * m + j] = a.pure_index(base.tensor(x, a.act(g, y)), group.mul(g, h));
        }
    }
    let mut rules: Vec<Rule> = Vec::new();
    for g in 0..m {
        rules.push((Set::EMPTY, a.pure_index(base.zero(), g)));
        for &(premises, c) in base.rules() {
            let lifted = premises.iter().map(|p| a.pure_index(p, g)).collect();
            rules.push((lifted, a.pure_index(c, g)));
        }
    }
    dedup_rules(&mut rules);
    let e = group.identity();
    TensorSystem::new(
        names,
        a.pure_index(base.zero(), e),
        a.pure_index(base.unit(), e),
        tensor,
        rules,
        None,
    )
}

fn dedup_rules(rules: &mut Vec<Rule>) {
    let mut seen = HashSet::new();
    rules.retain(|r| !r.0.contains(r.1) && seen.insert(*r));
}

/// Encoding of `G`-tuples over `E` as mixed-radix integers.
#[derive(Clone, Copy, Debug)]
pub struct TupleCode {
    pub base_len: usize,
    pub group_len: usize,
}

impl TupleCode {
    pub fn len(&self) -> usize {
        self.base_len.pow(self.group_len as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, comps: &[usize]) -> usize {
        comps.iter().rev().fold(0, |acc, &c| acc * self.base_len + c)
    }

    pub fn decode(&self, mut t: usize) -> Vec<usize> {
        (0..self.group_len)
            .map(|_| {
                let c = t % self.base_len;
                t /= self.base_len;
                c
            })
            .collect()
    }

    /// `x⊠g`: `x` at position `g`, zero elsewhere.
    pub fn pure(&self, zero: usize, x: usize, g: usize) -> usize {
        let mut comps = vec![zero; self.group_len];
        comps[g] = x;
        self.encode(&comps)
    }
}

pub fn tuple_code(a: &GroupAction) -> TupleCode {
    TupleCode {
        base_len: a.system.len(),
        group_len: a.group.len(),
    }
}

/// The full crossed product on `G`-tuples; needs an additive base.
pub fn crossed_product_full(a: &GroupAction) -> Result<TensorSystem> {
    let (base, group) = (&a.system, &a.group);
    if !base.is_additive() {
        return Err(Error::NotAdditive);
    }
    let code = tuple_code(a);
    let (n, m) = (base.len(), group.len());
    let size = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > CAPACITY as u128 {
        return Err(Error::TooLarge(usize::try_from(size).unwrap_or(usize::MAX)));
    }
    let size = code.len();
    let add = |x: usize, y: usize| base.sum(x, y).expect("additive");
    let tuples: Vec<Vec<usize>> = (0..size).map(|t| code.decode(t)).collect();
    let names: Vec<String> = tuples
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&x| base.name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut tensor = vec![0; size * size];
    let mut sum = vec![0; size * size];
    for (i, x) in tuples.iter().enumerate() {
        for (j, y) in tuples.iter().enumerate() {
            let comps: Vec<usize> = (0..m)
                .map(|k| {
                    (0..m)
                        .map(|g| {
                            let h = group.mul(group.inv(g), k);
                            base.tensor(x[g], a.act(g, y[h]))
                        })
                        .reduce(add)
                        .expect("the group is non-empty")
                })
                .collect();
            tensor[i * size + j] = code.encode(&comps);
            let s: Vec<usize> = (0..m).map(|g| add(x[g], y[g])).collect();
            sum[i * size + j] = code.encode(&s);
        }
    }
    let zero = code.encode(&vec![base.zero(); m]);
    let unit = code.pure(base.zero(), base.unit(), group.identity());
    let mut rules: Vec<Rule> = vec![(Set::EMPTY, zero)];
    for x in 0..size {
        for y in 0..size {
            let s = sum[x * size + y];
            let pair = Set::singleton(x).with(y);
            rules.push((pair, s));
            rules.push((Set::singleton(s), x));
            rules.push((Set::singleton(s), y));
        }
    }
    for g in 0..m {
        for &(premises, c) in base.rules() {
            let lifted = premises.iter().map(|p| code.pure(base.zero(), p, g)).collect();
            rules.push((lifted, code.pure(base.zero(), c, g)));
        }
    }
    dedup_rules(&mut rules);
    TensorSystem::new(names, zero, unit, tensor, rules, Some(sum))
}

/// Ideals of the base stable under the action, canonically ordered.
pub fn g_ideals(a: &GroupAction) -> Vec<Set> {
    a.system.all_ideals().iter().copied().filter(|&i| a.is_stable(i)).collect()
}

/// Proper `G`-ideals prime with respect to products of `G`-ideals.
pub fn g_primes(a: &GroupAction) -> Vec<Set> {
    let ideals = g_ideals(a);
    let ts = &a.system;
    ideals
        .iter()
        .copied()
        .filter(|&p| {
            p != ts.all()
                && ideals.iter().all(|&i| {
                    ideals
                        .iter()
                        .all(|&j| !ts.tensor_sets(i, j).is_subset(p) || i.is_subset(p) || j.is_subset(p))
                })
        })
        .collect()
}

/// `G-Spc(K)`: the `G`-primes with supports as a closed basis.
pub fn g_spectrum(a: &GroupAction) -> Result<FinSpace> {
    let primes = g_primes(a);
    let names: Vec<String> = primes.iter().map(|&p| a.system.show(p)).collect();
    let supp: Vec<Set> = (0..a.system.len())
        .map(|x| (0..primes.len()).filter(|&i| !primes[i].contains(x)).collect())
        .collect();
    FinSpace::from_closed_basis(names, &supp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HvBijection {
    /// `(I, I ⋊ G)` for every `G`-ideal `I`.
    pub ideals: Vec<(Set, Set)>,
    /// `(P, P ⋊ G)` for every `G`-prime `P`.
    pub points: Vec<(Set, Set)>,
}

/// `I ↦ I ⋊ G` is an order bijection from `G`-ideals onto the ideals of the
/// pure model and restricts to a homeomorphism `G-Spc(K) ≅ Spc(K ⋊ G)`.
pub fn hv_bijection_check(a: &GroupAction) -> Result<HvBijection> {
    let pure = crossed_product_pure(a)?;
    let ideals: Vec<(Set, Set)> = g_ideals(a).into_iter().map(|i| (i, a.pure_lift(i))).collect();
    let mut images: Vec<Set> = ideals.iter().map(|p| p.1).collect();
    crate::bits::canonicalize(&mut images);
    if images != pure.all_ideals() {
        let witness = pure
            .all_ideals()
            .iter()
            .find(|j| !images.contains(j))
            .map(|&j| format!("ideal {} of the crossed product is not hit", pure.show(j)))
            .or_else(|| {
                images
                    .iter()
                    .find(|j| !pure.is_ideal(**j))
                    .map(|&j| format!("{} is not an ideal", pure.show(j)))
            })
            .unwrap_or_else(|| "lifts are not distinct".into());
        return Err(Error::violation("G-ideals ↔ ideals of K⋊G", witness));
    }
    for &(i, li) in &ideals {
        for &(j, lj) in &ideals {
            if i.is_subset(j) != li.is_subset(lj) {
                return Err(Error::violation("G-ideals ↔ ideals of K⋊G preserves order", a.system.show(i)));
            }
        }
    }
    let gp = g_primes(a);
    let points: Vec<(Set, Set)> = gp.iter().map(|&p| (p, a.pure_lift(p))).collect();
    let spc = pure.spectrum()?;
    let map = points
        .iter()
        .map(|&(p, lp)| {
            spc.primes
                .iter()
                .position(|&q| q == lp)
                .ok_or_else(|| Error::violation("G-primes ↔ primes of K⋊G", a.system.show(p)))
        })
        .collect::<Result<Vec<usize>>>()?;
    let gspc = g_spectrum(a)?;
    if map.len() != spc.primes.len() || !topo::is_homeomorphism(&gspc, &spc.closed, &map) {
        return Err(Error::violation("G-Spc(K) ≅ Spc(K⋊G)", "the lift of G-primes is not a homeomorphism"));
    }
    Ok(HvBijection { ideals, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RespSemiprime {
    pub g_primes_semiprime: bool,
    pub restricts_to_semiprimes: bool,
}

/// Every `G`-prime is semiprime iff `I ↦ I ⋊ G` matches semiprime `G`-ideals
/// with semiprime ideals of the pure model.
pub fn resp_semiprime_check(a: &GroupAction) -> Result<RespSemiprime> {
    let base = &a.system;
    let mut lhs = true;
    for p in g_primes(a) {
        lhs &= base.is_semiprime(p)?;
    }
    let pure = crossed_product_pure(a)?;
    let mut lifted = Vec::new();
    for i in g_ideals(a) {
        if base.is_semiprime(i)? {
            let li = a.pure_lift(i);
            if !pure.is_semiprime(li)? {
                return Err(Error::violation("semiprime G-ideals lift to semiprimes", base.show(i)));
            }
            lifted.push(li);
        }
    }
    crate::bits::canonicalize(&mut lifted);
    let r = RespSemiprime {
        g_primes_semiprime: lhs,
        restricts_to_semiprimes: lifted == pure.semiprime_ideals(),
    };
    if r.g_primes_semiprime != r.restricts_to_semiprimes {
        return Err(Error::violation("G-primes semiprime ⇔ bijection restricts to semiprimes", format!("{r:?}")));
    }
    Ok(r)
}

fn require_g_primes_semiprime(a: &GroupAction) -> Result<()> {
    for p in g_primes(a) {
        if !a.system.is_semiprime(p)? {
            return Err(Error::PreconditionUnmet(format!("G-prime {} is not semiprime", a.system.show(p))));
        }
    }
    Ok(())
}

/// Compact detection passes to the pure model through the witnesses
/// `s_{x⊠g} = g⁻¹(s_x)⊠g⁻¹`.
pub fn cd_inheritance_check(a: &GroupAction) -> Result<bool> {
    require_g_primes_semiprime(a)?;
    let base = &a.system;
    let cd = base.compact_detection()?;
    if !cd.element_level {
        return Err(Error::PreconditionUnmet("the base lacks compact detection".into()));
    }
    let pure = crossed_product_pure(a)?;
    let group = &a.group;
    for x in 0..base.len() {
        let s = cd.witnesses[x].expect("element-level compact detection");
        for g in 0..group.len() {
            let xg = a.pure_index(x, g);
            let gi = group.inv(g);
            let w = a.pure_index(a.act(gi, s), gi);
            let prod = pure.tensor(pure.tensor(xg, w), xg);
            let expected = a.pure_index(base.tensor(base.tensor(x, s), x), g);
            if prod != expected || pure.principal(prod) != pure.principal(xg) {
                return Err(Error::violation("transported compact-detection witness", pure.name(xg).to_string()));
            }
        }
    }
    Ok(true)
}

/// For finite `G`, principal closure passes to the full model; each principal
/// semiprime `⟨⊕ x_g⊠g⟩_s` restricts to `⟨⊕_g ⊕_h h(x_g)⟩_s` in the base.
pub fn pc_finite_g_check(a: &GroupAction) -> Result<bool> {
    let base = &a.system;
    if !base.is_additive() {
        return Err(Error::PreconditionUnmet("the full model needs an additive base".into()));
    }
    require_g_primes_semiprime(a)?;
    if let Some((x, y)) = base.principal_closure_witness() {
        return Err(Error::PreconditionUnmet(format!(
            "the base is not principally closed at ({}, {})",
            base.name(x),
            base.name(y)
        )));
    }
    let full = crossed_product_full(a)?;
    let code = tuple_code(a);
    let group = &a.group;
    let add = |x: usize, y: usize| base.sum(x, y).expect("additive");
    let e = group.identity();
    for t in 0..full.len() {
        let j = full.principal(t);
        let restricted: Set = (0..base.len()).filter(|&x| j.contains(code.pure(base.zero(), x, e))).collect();
        let comps = code.decode(t);
        let transported = comps
            .iter()
            .flat_map(|&c| (0..group.len()).map(move |h| a.act(h, c)))
            .reduce(add)
            .expect("the group is non-empty");
        if base.principal(transported) != restricted || !a.is_stable(restricted) {
            return Err(Error::violation("generator transport", full.name(t).to_string()));
        }
    }
    if let Some((x, y)) = full.principal_closure_witness() {
        return Err(Error::violation(
            "principal closure of the crossed product",
            format!("{}, {}", full.name(x), full.name(y)),
        ));
    }
    Ok(true)
}
