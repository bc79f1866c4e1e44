//! The manifest format.
//!
//! A manifest is a sequence of JSON objects, written one per line by
//! [`emit_manifest`] though any whitespace between objects is accepted. Each
//! object carries a `kind` and a `name`:
//!
//! ```text
//! {"kind":"lattice","name":"c3","elements":["0","m","1"],"covers":[["0","m"],["m","1"]]}
//! {"kind":"space","name":"pt","points":["p"],"basis":[["p"]]}
//! {"kind":"system","name":"s","elements":[..],"zero":"0","unit":"1","tensor":[[..],..],"sum":[[..],..],"sum_rules":true,"rules":[[["a"],"b"]]}
//! {"kind":"datum","name":"d","lattice":"c3","space":"pt","sigma":{"0":[],"m":["p"],"1":["p"]}}
//! {"kind":"action","name":"g","system":"s","group":["e","g"],"table":[["e","g"],["g","e"]],"generators":{"g":[..]}}
//! ```
//!
//! Tables are row-major with one row per element. `sum_rules` prepends the
//! rules generated from the sum table. A datum with `"closed":true` takes
//! closed values. Data and actions refer to structures defined earlier.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use stoneworks_core::crossed::{FiniteGroup, GroupAction};
use stoneworks_core::fixtures::sum_rules;
use stoneworks_core::support::{ClosedSupportDatum, OpenSupportDatum};
use stoneworks_core::tensys::{Rule, TensorSystem};
use stoneworks_core::{Error, FinLattice, FinSpace, Set};

use crate::run::Command;
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Raw {
    Lattice(RawLattice),
    Space(RawSpace),
    System(RawSystem),
    Datum(RawDatum),
    Action(RawAction),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    name: String,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    name: String,
    points: Vec<String>,
    basis: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    name: String,
    elements: Vec<String>,
    zero: String,
    unit: String,
    tensor: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sum: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "is_false")]
    sum_rules: bool,
    #[serde(default)]
    rules: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    name: String,
    lattice: String,
    space: String,
    #[serde(default, skip_serializing_if = "is_false")]
    closed: bool,
    sigma: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    name: String,
    system: String,
    group: Vec<String>,
    table: Vec<Vec<String>>,
    generators: BTreeMap<String, Vec<String>>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug)]
pub enum SupportDatum {
    Open(OpenSupportDatum),
    Closed(ClosedSupportDatum),
}

impl SupportDatum {
    pub fn base(&self) -> &FinLattice {
        match self {
            SupportDatum::Open(d) => d.base(),
            SupportDatum::Closed(d) => d.base(),
        }
    }

    pub fn target(&self) -> &FinSpace {
        match self {
            SupportDatum::Open(d) => d.target(),
            SupportDatum::Closed(d) => d.target(),
        }
    }

    pub fn sigma(&self, x: usize) -> Set {
        match self {
            SupportDatum::Open(d) => d.sigma(x),
            SupportDatum::Closed(d) => d.sigma(x),
        }
    }
}

/// Systems are kept unvalidated so that `validate` can report the failing
/// invariant; everything else is checked on parsing.
#[derive(Clone, Debug)]
pub enum Structure {
    Lattice(FinLattice),
    Space(FinSpace),
    System(TensorSystem),
    Datum {
        lattice: String,
        space: String,
        datum: SupportDatum,
    },
    Action {
        system: String,
        action: GroupAction,
    },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Lattice(_) => "lattice",
            Structure::Space(_) => "space",
            Structure::System(_) => "system",
            Structure::Datum { .. } => "datum",
            Structure::Action { .. } => "action",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    /// Line of the opening brace, 1-based; 0 for entries built in code.
    pub line: usize,
    pub structure: Structure,
}

impl Entry {
    pub fn new(name: impl Into<String>, structure: Structure) -> Self {
        Entry {
            name: name.into(),
            line: 0,
            structure,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    /// Where the manifest came from, echoed into reports.
    pub source: String,
    pub entries: Vec<Entry>,
    pub commands: Vec<Command>,
}

impl Manifest {
    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

pub fn parse(path: &Path) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut m = parse_str(&text)?;
    m.source = path.display().to_string();
    Ok(m)
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_str(text: &str) -> Result<Manifest, CliError> {
    let mut stream = serde_json::Deserializer::from_str(text).into_iter::<Raw>();
    let mut m = Manifest::default();
    loop {
        let start = stream.byte_offset();
        let start = start + text[start..].len() - text[start..].trim_start().len();
        let Some(next) = stream.next() else { break };
        let (line, column) = position(text, start);
        // errors inside a buffered object carry no position of their own
        let raw = next.map_err(|e| CliError::Parse {
            line: if e.line() == 0 { line } else { e.line() },
            column: if e.line() == 0 { column } else { e.column() },
            message: e.to_string(),
        })?;
        let at = Loc { line, column };
        let (name, structure) = build(&m, raw, at)?;
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') || name.is_empty() {
            return Err(at.parse(format!("name `{name}` must be non-empty and use only letters, digits, `_` and `-`")));
        }
        if m.get(&name).is_some() {
            return Err(at.parse(format!("duplicate name `{name}`")));
        }
        m.entries.push(Entry { name, line, structure });
    }
    Ok(m)
}

#[derive(Clone, Copy)]
struct Loc {
    line: usize,
    column: usize,
}

impl Loc {
    fn parse(self, message: String) -> CliError {
        CliError::Parse {
            line: self.line,
            column: self.column,
            message,
        }
    }

    fn unknown(self, what: &str, name: &str) -> CliError {
        CliError::Reference {
            line: self.line,
            what: what.to_string(),
            name: name.to_string(),
        }
    }

    fn invalid(self, name: &str, source: Error) -> CliError {
        match source {
            Error::UnknownElement(e) => self.unknown("element", &e),
            source => CliError::Invalid {
                line: self.line,
                name: name.to_string(),
                source,
            },
        }
    }
}

fn lookup(names: &[String], name: &str, what: &str, at: Loc) -> Result<usize, CliError> {
    names.iter().position(|n| n == name).ok_or_else(|| at.unknown(what, name))
}

fn subset(names: &[String], members: &[String], what: &str, at: Loc) -> Result<Set, CliError> {
    members.iter().map(|m| lookup(names, m, what, at)).collect()
}

fn table(names: &[String], rows: &[Vec<String>], what: &str, at: Loc) -> Result<Vec<usize>, CliError> {
    let n = names.len();
    if rows.len() != n {
        return Err(at.parse(format!("{what} table has {} rows, expected {n}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(at.parse(format!("{what} table row `{}` has {} cells, expected {n}", names[i], r.len())));
    }
    rows.iter().flatten().map(|c| lookup(names, c, "element", at)).collect()
}

fn build(m: &Manifest, raw: Raw, at: Loc) -> Result<(String, Structure), CliError> {
    match raw {
        Raw::Lattice(r) => {
            let l = FinLattice::from_covers(&r.elements, &r.covers).map_err(|e| at.invalid(&r.name, e))?;
            Ok((r.name, Structure::Lattice(l)))
        }
        Raw::Space(r) => {
            let basis = r
                .basis
                .iter()
                .map(|b| subset(&r.points, b, "point", at))
                .collect::<Result<Vec<Set>, _>>()?;
            let x = FinSpace::from_open_basis(r.points.clone(), &basis).map_err(|e| at.invalid(&r.name, e))?;
            Ok((r.name, Structure::Space(x)))
        }
        Raw::System(r) => {
            let names = &r.elements;
            let tensor = table(names, &r.tensor, "tensor", at)?;
            let sum = r.sum.as_ref().map(|s| table(names, s, "sum", at)).transpose()?;
            let zero = lookup(names, &r.zero, "element", at)?;
            let unit = lookup(names, &r.unit, "element", at)?;
            let mut rules: Vec<Rule> = match (&sum, r.sum_rules) {
                (Some(s), true) => sum_rules(names.len(), zero, s),
                (None, true) => return Err(at.parse("`sum_rules` needs a sum table".into())),
                (_, false) => Vec::new(),
            };
            for (premises, conclusion) in &r.rules {
                rules.push((subset(names, premises, "element", at)?, lookup(names, conclusion, "element", at)?));
            }
            let ts = TensorSystem::unchecked(names.clone(), zero, unit, tensor, rules, sum)
                .map_err(|e| at.invalid(&r.name, e))?;
            Ok((r.name, Structure::System(ts)))
        }
        Raw::Datum(r) => {
            let l = match m.get(&r.lattice).map(|e| &e.structure) {
                Some(Structure::Lattice(l)) => l.clone(),
                _ => return Err(at.unknown("lattice", &r.lattice)),
            };
            let x = match m.get(&r.space).map(|e| &e.structure) {
                Some(Structure::Space(x)) => x.clone(),
                _ => return Err(at.unknown("space", &r.space)),
            };
            if let Some(k) = r.sigma.keys().find(|k| !l.names().contains(k)) {
                return Err(at.unknown("element", k));
            }
            let sigma = l
                .names()
                .iter()
                .map(|e| match r.sigma.get(e) {
                    Some(points) => subset(x.names(), points, "point", at),
                    None => Err(at.parse(format!("sigma has no value for `{e}`"))),
                })
                .collect::<Result<Vec<Set>, _>>()?;
            let datum = if r.closed {
                SupportDatum::Closed(ClosedSupportDatum::new(l, x, sigma).map_err(|e| at.invalid(&r.name, e))?)
            } else {
                SupportDatum::Open(OpenSupportDatum::new(l, x, sigma).map_err(|e| at.invalid(&r.name, e))?)
            };
            let s = Structure::Datum {
                lattice: r.lattice,
                space: r.space,
                datum,
            };
            Ok((r.name, s))
        }
        Raw::Action(r) => {
            let ts = match m.get(&r.system).map(|e| &e.structure) {
                Some(Structure::System(ts)) => ts.clone(),
                _ => return Err(at.unknown("system", &r.system)),
            };
            let mul = table(&r.group, &r.table, "group", at)?;
            let group = FiniteGroup::new(r.group.clone(), mul).map_err(|e| at.invalid(&r.name, e))?;
            let mut gens = Vec::new();
            for (g, images) in &r.generators {
                let g = lookup(&r.group, g, "group element", at)?;
                if images.len() != ts.len() {
                    return Err(at.parse(format!("generator `{}` lists {} images, expected {}", r.group[g], images.len(), ts.len())));
                }
                let perm = images
                    .iter()
                    .map(|y| lookup(ts.names(), y, "element", at))
                    .collect::<Result<Vec<usize>, _>>()?;
                gens.push((g, perm));
            }
            let action = GroupAction::from_generators(group, ts, &gens).map_err(|e| at.invalid(&r.name, e))?;
            Ok((r.name, Structure::Action { system: r.system, action }))
        }
    }
}

fn names_of(names: &[String], s: Set) -> Vec<String> {
    s.iter().map(|i| names[i].clone()).collect()
}

fn rows(names: &[String], cells: &[usize]) -> Vec<Vec<String>> {
    cells.chunks(names.len().max(1)).map(|r| r.iter().map(|&c| names[c].clone()).collect()).collect()
}

fn raw_of(e: &Entry) -> Raw {
    let name = e.name.clone();
    match &e.structure {
        Structure::Lattice(l) => Raw::Lattice(RawLattice {
            name,
            elements: l.names().to_vec(),
            covers: l
                .poset()
                .covers()
                .into_iter()
                .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
                .collect(),
        }),
        Structure::Space(x) => Raw::Space(RawSpace {
            name,
            points: x.names().to_vec(),
            basis: x.opens().iter().filter(|u| !u.is_empty()).map(|&u| names_of(x.names(), u)).collect(),
        }),
        Structure::System(ts) => {
            let names = ts.names();
            let generated = ts.sum_table().map(|s| sum_rules(ts.len(), ts.zero(), s));
            let prefixed = generated.as_ref().filter(|g| ts.rules().starts_with(g));
            let extra = &ts.rules()[prefixed.map_or(0, |g| g.len())..];
            Raw::System(RawSystem {
                name,
                elements: names.to_vec(),
                zero: ts.name(ts.zero()).to_string(),
                unit: ts.name(ts.unit()).to_string(),
                tensor: rows(names, ts.tensor_table()),
                sum: ts.sum_table().map(|s| rows(names, s)),
                sum_rules: prefixed.is_some(),
                rules: extra.iter().map(|&(p, c)| (names_of(names, p), names[c].clone())).collect(),
            })
        }
        Structure::Datum { lattice, space, datum } => {
            let l = datum.base();
            let points = datum.target().names();
            Raw::Datum(RawDatum {
                name,
                lattice: lattice.clone(),
                space: space.clone(),
                closed: matches!(datum, SupportDatum::Closed(_)),
                sigma: (0..l.len()).map(|x| (l.name(x).to_string(), names_of(points, datum.sigma(x)))).collect(),
            })
        }
        Structure::Action { system, action } => {
            let g = action.group();
            let ts = action.system();
            let names = g.names();
            let table = (0..g.len()).map(|a| (0..g.len()).map(|b| names[g.mul(a, b)].clone()).collect()).collect();
            let generators = (0..g.len())
                .filter(|&a| a != g.identity())
                .map(|a| (names[a].clone(), (0..ts.len()).map(|x| ts.name(action.act(a, x)).to_string()).collect()))
                .collect();
            Raw::Action(RawAction {
                name,
                system: system.clone(),
                group: names.to_vec(),
                table,
                generators,
            })
        }
    }
}

/// One JSON line.
pub fn emit_entry(e: &Entry) -> String {
    serde_json::to_string(&raw_of(e)).expect("manifest entries serialize")
}

pub fn emit_manifest(entries: &[Entry]) -> String {
    entries.iter().map(|e| emit_entry(e) + "\n").collect()
}
