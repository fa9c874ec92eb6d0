//! Commands over a loaded [`Workspace`] and their JSON reports.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use twocat::codescent::{kleisli, strictify, verify_codescent_universal, QuotientStatus, DEFAULT_BUDGET};
use twocat::descent::{descent, lax_descent, DescentCategory};
use twocat::fincat::{FinCat, Fun};
use twocat::freegen::{normalize_2cell, preorder_leq, LeqAnswer, DEFAULT_LEQ_BUDGET};
use twocat::laxalg::{
    build_tzy, check_lax_algebra, check_lax_morphism, check_pseudomonad, enumerate_hom_category, verify_prop_descent,
    MorphismClass,
};

use crate::workspace::{Algebra, Workspace};

pub const COMMANDS: &[&str] = &[
    "validate",
    "check-pseudomonad",
    "check-algebra",
    "check-morphism",
    "hom",
    "descent",
    "lax-descent",
    "verify-prop-descent",
    "build-tzy",
    "normalize-2cell",
    "preorder-leq",
    "kleisli",
    "strictify",
    "verify-codescent",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CommandError {
    #[error("unknown command \"{0}\"")]
    UnknownCommand(String),
    #[error("{command} expects {expected} argument(s), got {got}")]
    Arity { command: String, expected: String, got: usize },
    #[error("no {kind} named \"{name}\"")]
    UnknownName { kind: &'static str, name: String },
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub data: Value,
    pub trace: Value,
}

impl Report {
    fn new(command: &str, status: Status) -> Report {
        Report { command: command.to_string(), status, witnesses: Vec::new(), data: json!({}), trace: json!({}) }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub budget: Option<usize>,
    pub probes: Vec<String>,
}

/// Category dump with objects, morphisms and the composition table sorted.
pub fn dump_category(c: &FinCat) -> Value {
    let mut objects: Vec<&str> = c.objects().iter().map(String::as_str).collect();
    objects.sort_unstable();
    let mut morphisms: Vec<(&str, &str, &str)> = c
        .morphisms()
        .iter()
        .map(|m| (m.name.as_str(), c.object_name(m.dom), c.object_name(m.cod)))
        .collect();
    morphisms.sort_unstable();
    let mut compose = Vec::new();
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if let Some(h) = c.compose(g, f) {
                if !c.is_identity(f) && !c.is_identity(g) {
                    compose.push((c.morphism_name(g), c.morphism_name(f), c.morphism_name(h)));
                }
            }
        }
    }
    compose.sort_unstable();
    json!({
        "objects": objects,
        "morphisms": morphisms.iter().map(|(n, d, c)| json!({"name": n, "dom": d, "cod": c})).collect::<Vec<_>>(),
        "compose": compose,
    })
}

fn dump_functor(f: &Fun) -> Value {
    let (s, t) = (f.src(), f.tgt());
    let mut objects: Vec<(&str, &str)> = (0..s.num_objects()).map(|x| (s.object_name(x), t.object_name(f.obj(x)))).collect();
    objects.sort_unstable();
    json!(objects.into_iter().collect::<std::collections::BTreeMap<_, _>>())
}

fn dump_descent(dc: &DescentCategory) -> Value {
    let mut v = dump_category(dc.carrier());
    v["data"] = json!(dc.data().len());
    v
}

fn arity(command: &str, args: &[String], n: usize) -> Result<(), CommandError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(CommandError::Arity { command: command.into(), expected: n.to_string(), got: args.len() })
    }
}

fn algebra<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Algebra, CommandError> {
    ws.algebras.get(name).ok_or_else(|| CommandError::UnknownName { kind: "algebra", name: name.into() })
}

fn pair<'a>(ws: &'a Workspace, y: &str, z: &str) -> Result<(&'a Algebra, &'a Algebra), CommandError> {
    let (a, b) = (algebra(ws, y)?, algebra(ws, z)?);
    if a.universe != b.universe {
        return Err(CommandError::Unsupported(format!("\"{y}\" and \"{z}\" live in different universes")));
    }
    Ok((a, b))
}

fn fail_with(command: &str, e: impl std::fmt::Display) -> Report {
    let mut r = Report::new(command, Status::Fail);
    r.witnesses.push(json!(e.to_string()));
    r
}

/// Runs one command; reports carry the pass/fail/undecided outcome, errors
/// are reserved for malformed invocations.
pub fn run(ws: &Workspace, command: &str, args: &[String], opts: &Options) -> Result<Report, CommandError> {
    match command {
        "validate" => {
            arity(command, args, 0)?;
            let mut r = Report::new(command, Status::Pass);
            r.data = json!({
                "categories": ws.categories.keys().collect::<Vec<_>>(),
                "monoids": ws.monoids.keys().collect::<Vec<_>>(),
                "universes": ws.universes.keys().collect::<Vec<_>>(),
                "algebras": ws.algebras.keys().collect::<Vec<_>>(),
                "morphisms": ws.morphisms.keys().collect::<Vec<_>>(),
                "diagrams": ws.diagrams.keys().collect::<Vec<_>>(),
                "words": ws.words.keys().collect::<Vec<_>>(),
                "paths": ws.paths.keys().collect::<Vec<_>>(),
            });
            Ok(r)
        }
        "check-pseudomonad" => {
            arity(command, args, 1)?;
            let u = ws.universes.get(&args[0]).ok_or_else(|| CommandError::UnknownName { kind: "universe", name: args[0].clone() })?;
            let mut r = match check_pseudomonad(u) {
                Ok(()) => Report::new(command, Status::Pass),
                Err(e) => fail_with(command, e),
            };
            r.data = json!({
                "monoid_order": u.monoid_order(),
                "members": u.members().iter().map(|c| json!([c.num_objects(), c.num_morphisms()])).collect::<Vec<_>>(),
            });
            Ok(r)
        }
        "check-algebra" => {
            arity(command, args, 1)?;
            let y = algebra(ws, &args[0])?;
            let u = &ws.universes[&y.universe];
            let mut r = match check_lax_algebra(u, &y.algebra) {
                Ok(()) => Report::new(command, Status::Pass),
                Err(e) => fail_with(command, e),
            };
            r.data = json!({"strict": y.algebra.is_strict(), "pseudo": y.algebra.is_pseudo()});
            Ok(r)
        }
        "check-morphism" => {
            arity(command, args, 1)?;
            let m = ws.morphisms.get(&args[0]).ok_or_else(|| CommandError::UnknownName { kind: "morphism", name: args[0].clone() })?;
            let (y, z) = pair(ws, &m.from, &m.to)?;
            let u = &ws.universes[&y.universe];
            Ok(match check_lax_morphism(u, &y.algebra, &z.algebra, &m.morphism) {
                Ok(class) => {
                    let mut r = Report::new(command, Status::Pass);
                    r.data = json!({"class": class.to_string()});
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "hom" => {
            if args.len() != 2 && args.len() != 3 {
                return Err(CommandError::Arity { command: command.into(), expected: "2 or 3".into(), got: args.len() });
            }
            let (y, z) = pair(ws, &args[0], &args[1])?;
            let class = match args.get(2).map(String::as_str).unwrap_or("lax") {
                "lax" => MorphismClass::Lax,
                "pseudo" => MorphismClass::Pseudo,
                "strict" => MorphismClass::Strict,
                other => return Err(CommandError::Unsupported(format!("unknown class \"{other}\""))),
            };
            let u = &ws.universes[&y.universe];
            Ok(match enumerate_hom_category(u, &y.algebra, &z.algebra, class) {
                Ok(h) => {
                    let mut r = Report::new(command, Status::Pass);
                    r.data = json!({"class": class.to_string(), "category": dump_category(&h.cat)});
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "descent" | "lax-descent" => {
            arity(command, args, 1)?;
            let d = ws.diagrams.get(&args[0]).ok_or_else(|| CommandError::UnknownName { kind: "diagram", name: args[0].clone() })?;
            let dc = if command == "descent" { descent(d) } else { lax_descent(d) };
            let mut r = Report::new(command, Status::Pass);
            r.data = dump_descent(&dc);
            Ok(r)
        }
        "verify-prop-descent" => {
            arity(command, args, 2)?;
            let (y, z) = pair(ws, &args[0], &args[1])?;
            let u = &ws.universes[&y.universe];
            Ok(match verify_prop_descent(u, &y.algebra, &z.algebra) {
                Ok(rep) => {
                    let mut r = Report::new(command, if rep.passed() { Status::Pass } else { Status::Fail });
                    for (kind, pairs) in [("lax", &rep.lax_witness), ("pseudo", &rep.pseudo_witness)] {
                        for (h, d) in pairs {
                            r.witnesses.push(json!({"class": kind, "hom": h, "descent": d}));
                        }
                    }
                    if let Some(c) = &rep.counterexample {
                        r.witnesses.push(json!({"counterexample": c}));
                    }
                    r.data = json!({
                        "lax": {"objects": rep.lax_objects, "morphisms": rep.lax_morphisms, "isomorphic": rep.lax_iso},
                        "pseudo": {"objects": rep.pseudo_objects, "morphisms": rep.pseudo_morphisms, "isomorphic": rep.pseudo_iso},
                        "data_bijection": rep.data_bijection,
                    });
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "build-tzy" => {
            arity(command, args, 2)?;
            let (y, z) = pair(ws, &args[0], &args[1])?;
            let u = &ws.universes[&y.universe];
            Ok(match build_tzy(u, &y.algebra, &z.algebra) {
                Ok(t) => {
                    let p = t.diagram.parts();
                    let size = |c: &Arc<FinCat>| json!([c.num_objects(), c.num_morphisms()]);
                    let mut r = Report::new(command, Status::Pass);
                    r.data = json!({
                        "c1": size(&p.c1),
                        "c2": size(&p.c2),
                        "c3": size(&p.c3),
                        "d0": dump_functor(&p.d0),
                        "d1": dump_functor(&p.d1),
                        "s0": dump_functor(&p.s0),
                    });
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "normalize-2cell" => {
            arity(command, args, 1)?;
            let w = ws.words.get(&args[0]).ok_or_else(|| CommandError::UnknownName { kind: "word", name: args[0].clone() })?;
            Ok(match normalize_2cell(&w.computad, &w.word) {
                Ok(nf) => {
                    let mut r = Report::new(command, Status::Pass);
                    let c = &w.computad;
                    let slots = |s: Vec<(usize, usize)>| {
                        s.into_iter().map(|(p, k)| json!([p, c.cells()[k].name])).collect::<Vec<_>>()
                    };
                    r.data = json!({
                        "input": w.word.display(c),
                        "normal_form": nf.display(c),
                        "slots": slots(nf.slots()),
                        "source": nf.source().display(c.base()),
                        "target": nf.target().display(c.base()),
                    });
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "preorder-leq" => {
            arity(command, args, 2)?;
            let get = |n: &String| ws.paths.get(n).ok_or_else(|| CommandError::UnknownName { kind: "path", name: n.clone() });
            let (f, g) = (get(&args[0])?, get(&args[1])?);
            if f.computad_name != g.computad_name {
                return Err(CommandError::Unsupported("paths live in different computads".into()));
            }
            let c = &f.computad;
            let budget = opts.budget.unwrap_or(DEFAULT_LEQ_BUDGET);
            let mut r = match preorder_leq(c, &f.path, &g.path, budget) {
                Ok(LeqAnswer::Yes(w)) => {
                    let mut r = Report::new(command, Status::Pass);
                    r.witnesses.push(json!(w.display(c)));
                    r
                }
                Ok(LeqAnswer::NoWithinBudget) => Report::new(command, Status::Undecided),
                Err(e) => fail_with(command, e),
            };
            r.data = json!({"lhs": f.path.display(c.base()), "rhs": g.path.display(c.base())});
            r.trace = json!({"budget": budget});
            Ok(r)
        }
        "kleisli" => {
            arity(command, args, 1)?;
            let y = algebra(ws, &args[0])?;
            let (t, mu, eta) = y
                .monad
                .as_ref()
                .ok_or_else(|| CommandError::Unsupported(format!("\"{}\" is not declared as a monad", args[0])))?;
            Ok(match kleisli(&y.algebra.carrier, t, mu, eta) {
                Ok(k) => {
                    let mut r = Report::new(command, Status::Pass);
                    r.data = json!({"category": dump_category(&k)});
                    r
                }
                Err(e) => fail_with(command, e),
            })
        }
        "strictify" | "verify-codescent" => {
            arity(command, args, 1)?;
            let y = algebra(ws, &args[0])?;
            let u = &ws.universes[&y.universe];
            let budget = opts.budget.unwrap_or(DEFAULT_BUDGET);
            let (a, q) = match strictify(u, &y.algebra, budget) {
                Ok(x) => x,
                Err(e) => return Ok(fail_with(command, e)),
            };
            let trace = json!({"budget": budget, "rules": q.rules, "steps": q.steps, "flags": a.flags});
            let cat = match &q.status {
                QuotientStatus::Finite { cat, .. } => cat.clone(),
                QuotientStatus::Undecided { reason } => {
                    let mut r = Report::new(command, Status::Undecided);
                    r.witnesses.push(json!(reason));
                    r.trace = trace;
                    return Ok(r);
                }
            };
            let mut r = Report::new(command, Status::Pass);
            r.trace = trace;
            if command == "strictify" {
                r.data = json!({"category": dump_category(&cat)});
                return Ok(r);
            }
            let probes = if opts.probes.is_empty() {
                vec![("1".to_string(), Arc::new(FinCat::terminal())), ("2".to_string(), Arc::new(FinCat::walking_arrow()))]
            } else {
                opts.probes
                    .iter()
                    .map(|p| {
                        ws.categories
                            .get(p)
                            .cloned()
                            .map(|c| (p.clone(), c))
                            .ok_or_else(|| CommandError::UnknownName { kind: "category", name: p.clone() })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let cats: Vec<Arc<FinCat>> = probes.iter().map(|(_, c)| c.clone()).collect();
            match verify_codescent_universal(&a, &cat, &cats) {
                Ok(checks) => {
                    let mut per = serde_json::Map::new();
                    for ((name, _), c) in probes.iter().zip(&checks) {
                        per.insert(
                            name.clone(),
                            json!({"hom": c.hom_size, "lax_descent": c.descent_size, "isomorphic": c.isomorphic}),
                        );
                        if !c.isomorphic {
                            r.status = Status::Fail;
                            r.witnesses.push(json!({"probe": name}));
                        }
                    }
                    r.data = json!({"probes": per});
                    Ok(r)
                }
                Err(e) => Ok(fail_with(command, e)),
            }
        }
        other => Err(CommandError::UnknownCommand(other.to_string())),
    }
}
