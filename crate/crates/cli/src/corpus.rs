//! The fixture corpus as manifests, as checked in under `fixtures/`.

use stoneworks_core::fixtures;
use stoneworks_core::support::{self, closed_points_datum, OpenSupportDatum};
use stoneworks_core::tensys::{Rule, TensorSystem};
use stoneworks_core::{FinLattice, FinSpace, Set};

use crate::manifest::{Entry, Structure, SupportDatum};

fn tweak(ts: &TensorSystem, edit: impl FnOnce(&mut Vec<Rule>)) -> TensorSystem {
    let mut rules = ts.rules().to_vec();
    edit(&mut rules);
    let sum = ts.sum_table().map(<[usize]>::to_vec);
    TensorSystem::unchecked(ts.names().to_vec(), ts.zero(), ts.unit(), ts.tensor_table().to_vec(), rules, sum)
        .expect("fixture tables are well formed")
}

/// The deliberately broken systems, kept unvalidated.
pub fn broken_systems() -> Vec<(&'static str, TensorSystem)> {
    let m = fixtures::matrix2();
    let f = fixtures::freepair();
    let (e1, e2, one) = (1, 2, 3);
    vec![
        ("matrix2_missing_sum_rule", tweak(&m, |r| r.retain(|&(p, c)| !(p == Set::singleton(e1).with(e2) && c == one)))),
        ("matrix2_unstable", tweak(&m, |r| r.push((Set::singleton(e1), e2)))),
        ("freepair_unstable", tweak(&f, |r| r.push((Set::singleton(1), 2)))),
    ]
}

fn system_name(name: &str) -> String {
    if name == "one" { "one_object" } else { name }.to_string()
}

fn lattices() -> Vec<Entry> {
    let mut v: Vec<Entry> = fixtures::distributive_lattices()
        .into_iter()
        .map(|(n, l)| Entry::new(n, Structure::Lattice(l)))
        .collect();
    v.push(Entry::new("m3", Structure::Lattice(fixtures::m3())));
    v.push(Entry::new("n5", Structure::Lattice(fixtures::n5())));
    v
}

fn spaces() -> Vec<Entry> {
    fixtures::spaces().into_iter().map(|(n, x)| Entry::new(n, Structure::Space(x))).collect()
}

fn systems() -> Vec<Entry> {
    fixtures::systems()
        .into_iter()
        .map(|(n, ts)| Entry::new(system_name(n), Structure::System(ts)))
        .collect()
}

fn datum_entries(name: &str, lattice: (&str, FinLattice), space: (&str, FinSpace), datum: SupportDatum) -> Vec<Entry> {
    vec![
        Entry::new(lattice.0, Structure::Lattice(lattice.1)),
        Entry::new(space.0, Structure::Space(space.1)),
        Entry::new(
            name,
            Structure::Datum {
                lattice: lattice.0.to_string(),
                space: space.0.to_string(),
                datum,
            },
        ),
    ]
}

fn data() -> Vec<Entry> {
    let c3 = fixtures::c3();
    let point = FinSpace::discrete(vec!["p0".into()]).expect("one point");
    let p = Set::singleton(0);
    let three = OpenSupportDatum::new(c3.clone(), point.clone(), vec![Set::EMPTY, p, p]).expect("valid datum");
    let closed_points = closed_points_datum(&c3).expect("valid datum");
    let b2 = fixtures::b2();
    let spectrum = OpenSupportDatum::spectrum(&b2).expect("valid datum");
    let m = fixtures::matrix2();
    let supports = support::spc_closed_datum(&m).expect("valid datum");
    let mut v = datum_entries("three", ("c3", c3.clone()), ("discrete1", point), SupportDatum::Open(three));
    let cp_space = closed_points.target().clone();
    v.extend(datum_entries("c3_closed_points", ("c3", c3), ("c3_minimal_primes", cp_space), SupportDatum::Open(closed_points)));
    let b2_space = spectrum.target().clone();
    v.extend(datum_entries("b2_spectrum", ("b2", b2), ("spc_b2", b2_space), SupportDatum::Open(spectrum)));
    let (base, target) = (supports.base().clone(), supports.target().clone());
    v.extend(datum_entries(
        "matrix2_supports",
        ("matrix2_principal", base),
        ("spc_matrix2", target),
        SupportDatum::Closed(supports),
    ));
    dedup(v)
}

fn actions() -> Vec<Entry> {
    let mut v: Vec<Entry> = ["matrix2", "comm3", "freepair", "nilp3"]
        .iter()
        .map(|&n| {
            let ts = fixtures::systems().into_iter().find(|(m, _)| *m == n).expect("fixture system").1;
            Entry::new(n, Structure::System(ts))
        })
        .collect();
    for (n, a) in fixtures::actions() {
        let base = ["matrix2", "comm3", "freepair", "nilp3"]
            .into_iter()
            .find(|b| n.ends_with(b))
            .expect("actions are named after their base");
        v.push(Entry::new(
            n,
            Structure::Action {
                system: base.to_string(),
                action: a,
            },
        ));
    }
    v
}

/// First entry of each name wins.
fn dedup(entries: Vec<Entry>) -> Vec<Entry> {
    let mut out: Vec<Entry> = Vec::new();
    for e in entries {
        if !out.iter().any(|o| o.name == e.name) {
            out.push(e);
        }
    }
    out
}

/// File name and entries of every fixture manifest.
pub fn fixture_manifests() -> Vec<(String, Vec<Entry>)> {
    let mut files = vec![
        ("lattices.json".to_string(), lattices()),
        ("spaces.json".to_string(), spaces()),
        ("systems.json".to_string(), systems()),
    ];
    for e in systems() {
        if e.name != "one_object" {
            files.push((format!("{}.json", e.name), vec![e]));
        }
    }
    let broken = broken_systems().into_iter().map(|(n, ts)| Entry::new(n, Structure::System(ts))).collect();
    files.push(("broken.json".into(), broken));
    files.push(("data.json".into(), data()));
    files.push(("actions.json".into(), actions()));
    let everything = [lattices(), spaces(), systems(), data(), actions()].concat();
    files.push(("corpus.json".into(), dedup(everything)));
    files
}
