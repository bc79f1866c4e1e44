//! The named fixture corpus: small lattices, spaces, tensor systems and group
//! actions used across the tests and by the CLI.

use std::collections::HashSet;

use crate::bits::Set;
use crate::crossed::{FiniteGroup, GroupAction};
use crate::error::Result;
use crate::order::{FinLattice, FinPoset};
use crate::support::OpenSupportDatum;
use crate::tensys::{Rule, TensorSystem};
use crate::topo::{spc_of_lattice, FinSpace};

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `0 < m < 1`
pub fn c3() -> FinLattice {
    FinLattice::from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
}

/// The four-element Boolean lattice on atoms `a`, `b`.
pub fn b2() -> FinLattice {
    FinLattice::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
}

pub fn m3() -> FinLattice {
    FinLattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .unwrap()
}

pub fn n5() -> FinLattice {
    FinLattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .unwrap()
}

/// `B2` with a new top adjoined above `1`.
pub fn b2_with_top() -> FinLattice {
    FinLattice::from_covers(
        &["0", "a", "b", "1", "t"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("1", "t")],
    )
    .unwrap()
}

/// `B2` with a new bottom adjoined below `0`.
pub fn b2_with_bottom() -> FinLattice {
    FinLattice::from_covers(
        &["z", "0", "a", "b", "1"],
        &[("z", "0"), ("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .unwrap()
}

/// Componentwise product, elements named `(x,y)`.
pub fn product(l: &FinLattice, r: &FinLattice) -> FinLattice {
    let n = r.len();
    let names = (0..l.len() * n)
        .map(|i| format!("({},{})", l.name(i / n), r.name(i % n)))
        .collect();
    FinPoset::from_relation(names, |i, j| l.leq(i / n, j / n) && r.leq(i % n, j % n))
        .and_then(|p| p.to_lattice())
        .expect("products of lattices are lattices")
}

/// At least ten finite distributive lattices of assorted shapes.
pub fn distributive_lattices() -> Vec<(&'static str, FinLattice)> {
    let two = FinLattice::chain(2);
    vec![
        ("one", FinLattice::chain(1)),
        ("two", two.clone()),
        ("c3", c3()),
        ("chain4", FinLattice::chain(4)),
        ("chain5", FinLattice::chain(5)),
        ("b2", b2()),
        ("b2_with_top", b2_with_top()),
        ("b2_with_bottom", b2_with_bottom()),
        ("boolean3", FinLattice::boolean(3)),
        ("c3_x_two", product(&c3(), &two)),
        ("c3_x_c3", product(&c3(), &c3())),
        ("boolean4", FinLattice::boolean(4)),
    ]
}

/// Points `p`, `q` with opens `∅ ⊂ {p} ⊂ {p,q}`.
pub fn sierpinski() -> FinSpace {
    FinSpace::new(strings(&["p", "q"]), vec![Set::EMPTY, Set::singleton(0), Set::full(2)]).unwrap()
}

pub fn indiscrete2() -> FinSpace {
    FinSpace::new(strings(&["p", "q"]), vec![Set::EMPTY, Set::full(2)]).unwrap()
}

fn discrete(n: usize) -> FinSpace {
    FinSpace::discrete((0..n).map(|i| format!("p{i}")).collect()).unwrap()
}

/// Opens `∅ ⊂ {a} ⊂ {a,b} ⊂ {a,b,c}`.
pub fn chain_space() -> FinSpace {
    let basis = [Set::singleton(0), Set::full(2), Set::full(3)];
    FinSpace::from_open_basis(strings(&["a", "b", "c"]), &basis).unwrap()
}

/// Two open points `x`, `y` under a common generization `z`.
pub fn vee_space() -> FinSpace {
    let basis = [Set::singleton(0), Set::singleton(1), Set::full(3)];
    FinSpace::from_open_basis(strings(&["x", "y", "z"]), &basis).unwrap()
}

pub fn spaces() -> Vec<(&'static str, FinSpace)> {
    vec![
        ("sierpinski", sierpinski()),
        ("discrete1", discrete(1)),
        ("discrete2", discrete(2)),
        ("discrete3", discrete(3)),
        ("indiscrete2", indiscrete2()),
        ("chain3", chain_space()),
        ("vee", vee_space()),
        ("spc_c3", spc_of_lattice(&c3()).unwrap().space().clone()),
        ("spc_b2", spc_of_lattice(&b2()).unwrap().space().clone()),
        ("spc_c3_x_two", spc_of_lattice(&product(&c3(), &FinLattice::chain(2))).unwrap().space().clone()),
    ]
}

/// Every T0 topology on the points `p0, ..., p{n-1}`, labelled, in canonical
/// order of their open families.
pub fn t0_spaces(n: usize) -> Vec<FinSpace> {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let full = Set::full(n);
    let inner: Vec<Set> = Set::all_subsets(n).filter(|&s| !s.is_empty() && s != full).collect();
    let mut out = Vec::new();
    for pick in Set::all_subsets(inner.len()) {
        let mut opens: Vec<Set> = pick.iter().map(|i| inner[i]).collect();
        opens.push(Set::EMPTY);
        if n > 0 {
            opens.push(full);
        }
        if let Ok(x) = FinSpace::new(names.clone(), opens) {
            if x.is_t0() {
                out.push(x);
            }
        }
    }
    out
}

/// The distributive lattices with at most five elements, up to isomorphism.
pub fn small_distributive_lattices() -> Vec<(&'static str, FinLattice)> {
    vec![
        ("one", FinLattice::chain(1)),
        ("two", FinLattice::chain(2)),
        ("c3", c3()),
        ("chain4", FinLattice::chain(4)),
        ("b2", b2()),
        ("chain5", FinLattice::chain(5)),
        ("b2_with_top", b2_with_top()),
        ("b2_with_bottom", b2_with_bottom()),
    ]
}

/// Every valid open support datum from a lattice with at most five elements
/// to a T0 space with at most three points.
pub fn support_corpus() -> Vec<OpenSupportDatum> {
    let spaces: Vec<FinSpace> = (0..=3).flat_map(t0_spaces).collect();
    let mut out = Vec::new();
    for (_, l) in small_distributive_lattices() {
        let inner: Vec<usize> = (0..l.len()).filter(|&x| x != l.bottom() && x != l.top()).collect();
        for x in &spaces {
            let opens = x.opens();
            let choices = opens.len().pow(inner.len() as u32);
            for code in 0..choices {
                let mut sigma = vec![Set::EMPTY; l.len()];
                sigma[l.top()] = x.points();
                let mut c = code;
                for &e in &inner {
                    sigma[e] = opens[c % opens.len()];
                    c /= opens.len();
                }
                if let Ok(d) = OpenSupportDatum::new(l.clone(), x.clone(), sigma) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// `∅ → 0` together with `{x,y} → x⊕y`, `{x⊕y} → x` and `{x⊕y} → y`.
pub fn sum_rules(n: usize, zero: usize, sum: &[usize]) -> Vec<Rule> {
    let mut rules = vec![(Set::EMPTY, zero)];
    for x in 0..n {
        for y in 0..n {
            let s = sum[x * n + y];
            rules.push((Set::singleton(x).with(y), s));
            rules.push((Set::singleton(s), x));
            rules.push((Set::singleton(s), y));
        }
    }
    let mut seen = HashSet::new();
    rules.retain(|r| !r.0.contains(r.1) && seen.insert(*r));
    rules
}

/// Tables from closures over indices; sums from a join table if given.
fn build(
    names: &[&str],
    tensor: impl Fn(usize, usize) -> usize,
    sum: Option<&dyn Fn(usize, usize) -> usize>,
    extra: &[(&[&str], &str)],
) -> Result<TensorSystem> {
    let n = names.len();
    let tensor: Vec<usize> = (0..n * n).map(|i| tensor(i / n, i % n)).collect();
    let sum: Option<Vec<usize>> = sum.map(|f| (0..n * n).map(|i| f(i / n, i % n)).collect());
    let mut rules = match &sum {
        Some(s) => sum_rules(n, 0, s),
        None => vec![(Set::EMPTY, 0)],
    };
    let idx = |s: &str| names.iter().position(|m| *m == s).expect("fixture element");
    for (premises, c) in extra {
        rules.push((premises.iter().map(|p| idx(p)).collect(), idx(c)));
    }
    TensorSystem::new(strings(names), 0, n - 1, tensor, rules, sum)
}

fn chain_max(x: usize, y: usize) -> usize {
    x.max(y)
}

/// `E = {0, x, 1}` with `x⊗x = x`; sums are maxima on the chain.
pub fn comm3() -> TensorSystem {
    build(&["0", "x", "1"], |a, b| a.min(b), Some(&chain_max), &[]).unwrap()
}

/// `E = {0, a, 1}` with `a⊗a = 0`.
pub fn nilp3() -> TensorSystem {
    let t = |a: usize, b: usize| match (a, b) {
        (2, y) => y,
        (x, 2) => x,
        _ => 0,
    };
    build(&["0", "a", "1"], t, Some(&chain_max), &[]).unwrap()
}

/// Orthogonal idempotents `x ↦ x`, `e1⊗e2 = 0`; the tensor and sum are
/// meet and join in `B2`, so `0, e1, e2, 1` are encoded as bit masks.
fn matrix2_with(extra: &[(&[&str], &str)], drop_pair_rule: bool) -> Result<TensorSystem> {
    let names = ["0", "e1", "e2", "1"];
    let n = names.len();
    let tensor = |a: usize, b: usize| a & b;
    let sum: Vec<usize> = (0..n * n).map(|i| (i / n) | (i % n)).collect();
    let mut rules = sum_rules(n, 0, &sum);
    if drop_pair_rule {
        rules.retain(|&(p, c)| !(p == Set::singleton(1).with(2) && c == 3));
    }
    let idx = |s: &str| names.iter().position(|m| *m == s).unwrap();
    for (premises, c) in extra {
        rules.push((premises.iter().map(|p| idx(p)).collect(), idx(c)));
    }
    let tensor = (0..n * n).map(|i| tensor(i / n, i % n)).collect();
    TensorSystem::new(strings(&names), 0, 3, tensor, rules, Some(sum))
}

pub fn matrix2() -> TensorSystem {
    matrix2_with(&[], false).unwrap()
}

/// MATRIX2 without the rule `{e1,e2} → 1`.
pub fn matrix2_missing_sum_rule() -> Result<TensorSystem> {
    matrix2_with(&[], true)
}

/// MATRIX2 with the extra rule `{e1} → e2`, which tensoring by `e2` breaks.
pub fn matrix2_unstable() -> Result<TensorSystem> {
    matrix2_with(&[(&["e1"], "e2")], false)
}

fn freepair_with(extra: &[(&[&str], &str)]) -> Result<TensorSystem> {
    build(&["0", "a", "b", "1"], |x, y| if x == 3 { y } else if y == 3 { x } else if x == y { x } else { 0 }, None, extra)
}

/// `E = {0, a, b, 1}`, `a`, `b` orthogonal idempotents and no sums.
pub fn freepair() -> TensorSystem {
    freepair_with(&[]).unwrap()
}

/// FREEPAIR with the extra rule `{a} → b`.
pub fn freepair_unstable() -> Result<TensorSystem> {
    freepair_with(&[(&["a"], "b")])
}

/// The zero system: one object which is both zero and unit.
pub fn one_object() -> TensorSystem {
    TensorSystem::new(strings(&["0"]), 0, 0, vec![0], vec![(Set::EMPTY, 0)], None).unwrap()
}

pub fn systems() -> Vec<(&'static str, TensorSystem)> {
    vec![
        ("comm3", comm3()),
        ("matrix2", matrix2()),
        ("nilp3", nilp3()),
        ("freepair", freepair()),
        ("one", one_object()),
    ]
}

/// `C2` exchanging `e1` and `e2`.
pub fn c2_swap_matrix2() -> GroupAction {
    GroupAction::from_generators(FiniteGroup::cyclic(2), matrix2(), &[(1, vec![0, 2, 1, 3])]).unwrap()
}

fn c2_identity(ts: TensorSystem) -> GroupAction {
    let id = (0..ts.len()).collect();
    GroupAction::from_generators(FiniteGroup::cyclic(2), ts, &[(1, id)]).unwrap()
}

pub fn c2_identity_comm3() -> GroupAction {
    c2_identity(comm3())
}

pub fn c2_identity_nilp3() -> GroupAction {
    c2_identity(nilp3())
}

pub fn actions() -> Vec<(&'static str, GroupAction)> {
    vec![
        ("trivial_matrix2", GroupAction::trivial(matrix2())),
        ("trivial_comm3", GroupAction::trivial(comm3())),
        ("trivial_freepair", GroupAction::trivial(freepair())),
        ("c2_swap_matrix2", c2_swap_matrix2()),
        ("c2_identity_comm3", c2_identity_comm3()),
        ("c2_identity_nilp3", c2_identity_nilp3()),
    ]
}
