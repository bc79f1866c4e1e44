//! DOT diagrams and the lattice/geometry translation table.

use std::fmt::Write;

use stoneworks_core::frames;
use stoneworks_core::tensys::TensorSystem;
use stoneworks_core::{Error, FinPoset};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of `order`: one node per element in index order and one
/// edge per cover, drawn bottom to top.
pub fn emit_dot(name: &str, order: &FinPoset) -> String {
    let mut out = format!("digraph {} {{\n    rankdir=BT;\n", quote(name));
    for i in 0..order.len() {
        writeln!(out, "    n{i} [label={}];", quote(order.name(i))).unwrap();
    }
    for (a, b) in order.covers() {
        writeln!(out, "    n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// The translation table between properties of `T_s(K)` and of the spectrum,
/// both sides evaluated on `ts`.
pub fn emit_table1(ts: &TensorSystem) -> Result<String, Error> {
    let lattice = ts.ts_lattice()?;
    let l = lattice.lattice();
    let spc = ts.spectrum()?;
    let spectral = spc.closed.is_spectral()?;
    let dual = if spectral { Some(spc.closed.hochster_dual()?) } else { None };
    let dual_spectral = match &dual {
        Some(d) => d.is_spectral()?,
        None => false,
    };
    let compacts = frames::compact_elements(l)?;
    let qc = spc.nu.quasi_compact_opens()?;
    let qc_supports = lattice.ideals().iter().filter(|&&i| qc.contains(&spc.support_of(i))).count();
    let part = ts.principal_part()?;
    let cd = ts.compact_detection()?;
    let n = lattice.len();
    let rows = [
        ("T_s(K) is coherent", yes(frames::is_coherent(l)?), "Spc(K)^∨ and Spc(K) are spectral", yes(spectral && dual_spectral)),
        ("T_s(K) is spatial", yes(frames::is_spatial(l)?), "Spc(K)^ν is sober", yes(spc.nu.is_sober())),
        (
            "I ∈ T_s(K) is compact",
            format!("{}/{n}", compacts.len()),
            "supp(I) ⊆ Spc(K)^ν is quasi-compact",
            format!("{qc_supports}/{n}"),
        ),
        ("t_s(K) = T_s(K)^c", yes(part.equals_compacts_of_ts), "K has compact detection", yes(cd.element_level)),
        (
            "t_s(K) is a sublattice of T_s(K)",
            yes(part.is_sublattice_of_ts),
            "K has principal closure",
            yes(ts.is_principally_closed()),
        ),
        ("all elements of T_s(K) are compact", yes(compacts.len() == n), "all ideals of K are principal", yes(part.non_principal.is_empty())),
        (
            "",
            String::new(),
            "Spc(K)^∨ is Noetherian",
            match &dual {
                Some(d) => yes(d.is_noetherian()?),
                None => "undefined".to_string(),
            },
        ),
    ];
    let w = |f: fn(&(&str, String, &str, String)) -> usize| rows.iter().map(f).max().unwrap_or(0);
    let (w0, w1, w2) = (
        w(|r| r.0.chars().count()).max("lattice".len()),
        w(|r| r.1.chars().count()).max("value".len()),
        w(|r| r.2.chars().count()).max("geometry".len()),
    );
    let mut out = String::new();
    writeln!(out, "{:<w0$} | {:<w1$} | {:<w2$} | value", "lattice", "value", "geometry").unwrap();
    writeln!(out, "{}-+-{}-+-{}-+------", "-".repeat(w0), "-".repeat(w1), "-".repeat(w2)).unwrap();
    for (a, b, c, d) in &rows {
        writeln!(out, "{a:<w0$} | {b:<w1$} | {c:<w2$} | {d}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stoneworks_core::topo::FinSpace;
    use stoneworks_core::fixtures;

    #[test]
    fn chain_of_three_has_two_edges() {
        let dot = emit_dot("c3", fixtures::c3().poset());
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
    }

    #[test]
    fn empty_space_is_an_empty_graph() {
        let x = FinSpace::new(vec![], vec![stoneworks_core::Set::EMPTY]).unwrap();
        let dot = emit_dot("empty", &x.specialization_order().unwrap());
        assert_eq!(dot, "digraph \"empty\" {\n    rankdir=BT;\n}\n");
    }

    #[test]
    fn labels_are_escaped() {
        let p = FinPoset::from_relation(vec!["a\"b".into()], |_, _| true).unwrap();
        assert!(emit_dot("q", &p).contains(r#"label="a\"b""#));
    }
}
