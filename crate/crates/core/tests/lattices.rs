mod common;

use proptest::prelude::*;
use stoneworks_core::fixtures;
use stoneworks_core::{FinLattice, Set};

/// A random closure system on four points: the given sets, the full set and
/// all intersections. Such families are lattices but rarely distributive.
fn closure_system() -> impl Strategy<Value = FinLattice> {
    proptest::collection::vec(0u8..16, 0..7).prop_map(|raw| {
        let mut fam: Vec<Set> = raw.into_iter().map(|b| Set::from_bits(b as u128)).collect();
        fam.push(Set::full(4));
        loop {
            let mut grew = false;
            for i in 0..fam.len() {
                for j in 0..fam.len() {
                    let m = fam[i].intersect(fam[j]);
                    if !fam.contains(&m) {
                        fam.push(m);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        stoneworks_core::bits::canonicalize(&mut fam);
        let names = fam.iter().map(|s| format!("{:x}", s.bits())).collect();
        FinLattice::from_family(names, &fam).unwrap()
    })
}

fn check_laws(l: &FinLattice) {
    for x in 0..l.len() {
        for y in 0..l.len() {
            assert!(l.leq(l.meet(x, y), x) && l.leq(l.meet(x, y), y));
            assert!(l.leq(x, l.join(x, y)) && l.leq(y, l.join(x, y)));
            assert_eq!(l.join(x, l.meet(x, y)), x);
            assert_eq!(l.meet(x, l.join(x, y)), x);
        }
    }
}

#[test]
fn fixture_lattices_obey_the_lattice_laws() {
    for (_, l) in fixtures::distributive_lattices() {
        check_laws(&l);
    }
    check_laws(&fixtures::m3());
    check_laws(&fixtures::n5());
}

#[test]
fn distributivity_matches_forbidden_sublattices_on_fixtures() {
    for (name, l) in fixtures::distributive_lattices() {
        assert!(l.is_distributive(), "{name}");
        assert!(!common::has_m3_or_n5(&l), "{name}");
    }
    for l in [fixtures::m3(), fixtures::n5()] {
        assert!(!l.is_distributive());
        assert!(common::has_m3_or_n5(&l));
    }
}

#[test]
fn dual_meet_primes_are_join_primes() {
    for (_, l) in fixtures::distributive_lattices() {
        assert_eq!(l.dual().meet_primes(), l.join_primes());
    }
}

#[test]
fn birkhoff_join_primes_count_matches_spectrum() {
    // a finite distributive lattice is the down-sets of its join-primes
    for (_, l) in fixtures::distributive_lattices() {
        let jp = l.join_primes();
        let downsets = common::subsets(l.len())
            .filter(|&s| s.is_subset(jp) && s.iter().all(|x| jp.iter().all(|y| !l.leq(y, x) || s.contains(y))))
            .count();
        assert_eq!(downsets, l.len());
    }
}

proptest! {
    #[test]
    fn closure_systems_obey_the_laws(l in closure_system()) {
        check_laws(&l);
    }

    #[test]
    fn distributivity_matches_forbidden_sublattices(l in closure_system()) {
        prop_assert_eq!(l.is_distributive(), !common::has_m3_or_n5(&l));
    }

    #[test]
    fn meet_primes_of_the_dual(l in closure_system()) {
        prop_assert_eq!(l.dual().meet_primes(), l.join_primes());
    }
}
