//! JSON workspaces: named categories, monoids, universes, algebras,
//! morphisms, diagrams, pasting words and paths.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use thiserror::Error;

use twocat::deltadiag::{make_delta_diagram, DeltaDiagram, DiagramParts};
use twocat::fincat::{make_fun, make_nat, FinCat, Fun, NatT};
use twocat::freegen::{builtin_computad, Builtin, Computad, Path, PastingWord};
use twocat::laxalg::{build_tzy, identity_two_monad, monoid_two_monad, LaxAlgebra, LaxMorphism, Monoid, MonadUniverse};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("undefined reference \"{0}\"")]
    Reference(String),
    #[error("invalid definition of \"{name}\": {detail}")]
    Invalid { name: String, detail: String },
}

pub type Result<T> = std::result::Result<T, LoadError>;

// Maps deserialized in document order, rejecting repeated keys.
#[derive(Debug)]
struct Named<T>(Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Named(Vec::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Named<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of named definitions")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(serde::de::Error::custom(format!("duplicate definition \"{k}\"")));
                    }
                    out.push((k, v));
                }
                Ok(Named(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    categories: Named<CategorySpec>,
    #[serde(default)]
    monoids: Named<MonoidSpec>,
    #[serde(default)]
    universes: Named<UniverseSpec>,
    #[serde(default)]
    algebras: Named<AlgebraSpec>,
    #[serde(default)]
    morphisms: Named<MorphismSpec>,
    #[serde(default)]
    diagrams: Named<DiagramSpec>,
    #[serde(default)]
    words: Named<WordSpec>,
    #[serde(default)]
    paths: Named<PathSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategorySpec {
    builtin: Option<String>,
    chain: Option<usize>,
    discrete: Option<Vec<String>>,
    /// One-object category of a declared monoid.
    monoid: Option<String>,
    objects: Option<Vec<String>>,
    #[serde(default)]
    morphisms: Vec<(String, String, String)>,
    /// `(g, f, h)` meaning `g∘f = h`; composites with identities are implicit.
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidSpec {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    unit: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UniverseSpec {
    /// Absent for the identity 2-monad.
    monoid: Option<String>,
    seeds: Vec<String>,
    #[serde(default = "default_depth")]
    depth: usize,
}

fn default_depth() -> usize {
    3
}

/// Object and non-identity morphism assignments by name.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorSpec {
    objects: BTreeMap<String, String>,
    #[serde(default)]
    morphisms: BTreeMap<String, String>,
}

/// Components by object name.
type NatSpec = BTreeMap<String, String>;

#[derive(Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum AlgebraKind {
    Monad,
    Strict,
    Lax,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    universe: String,
    carrier: String,
    kind: AlgebraKind,
    t: Option<FunctorSpec>,
    mu: Option<NatSpec>,
    eta: Option<NatSpec>,
    action: Option<FunctorSpec>,
    assoc: Option<NatSpec>,
    unit: Option<NatSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismSpec {
    from: String,
    to: String,
    f: FunctorSpec,
    fbar: NatSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramSpec {
    /// `[y, z]`: the hom-diagram of lax morphisms `y → z`.
    tzy: Option<(String, String)>,
    c1: Option<String>,
    c2: Option<String>,
    c3: Option<String>,
    d0: Option<FunctorSpec>,
    d1: Option<FunctorSpec>,
    s0: Option<FunctorSpec>,
    del0: Option<FunctorSpec>,
    del1: Option<FunctorSpec>,
    del2: Option<FunctorSpec>,
    sigma00: Option<NatSpec>,
    sigma20: Option<NatSpec>,
    sigma21: Option<NatSpec>,
    n0: Option<NatSpec>,
    n1: Option<NatSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordSpec {
    computad: String,
    start: String,
    source: Vec<String>,
    /// `(position, cell)` in application order.
    slots: Vec<(usize, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathSpec {
    computad: String,
    start: String,
    edges: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Algebra {
    pub universe: String,
    pub algebra: LaxAlgebra,
    /// `(t, mu, eta)` when declared as a monad.
    pub monad: Option<(Fun, NatT, NatT)>,
}

#[derive(Debug, Clone)]
pub struct Morphism {
    pub from: String,
    pub to: String,
    pub morphism: LaxMorphism,
}

#[derive(Debug, Clone)]
pub struct Word {
    pub computad: Computad,
    pub word: PastingWord,
}

#[derive(Debug, Clone)]
pub struct PathDef {
    pub computad_name: String,
    pub computad: Computad,
    pub path: Path,
}

#[derive(Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCat>>,
    pub monoids: BTreeMap<String, Monoid>,
    pub universes: BTreeMap<String, MonadUniverse>,
    pub algebras: BTreeMap<String, Algebra>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub diagrams: BTreeMap<String, DeltaDiagram>,
    pub words: BTreeMap<String, Word>,
    pub paths: BTreeMap<String, PathDef>,
}

fn invalid(name: &str, detail: impl fmt::Display) -> LoadError {
    LoadError::Invalid { name: name.to_string(), detail: detail.to_string() }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| LoadError::Reference(name.to_string()))
}

pub fn load(path: &FsPath) -> Result<Workspace> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Workspace> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| LoadError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut ws = Workspace::default();
    for (name, spec) in doc.monoids.0 {
        let m = monoid(&name, &spec)?;
        ws.monoids.insert(name, m);
    }
    for (name, spec) in doc.categories.0 {
        let c = category(&ws, &name, &spec)?;
        ws.categories.insert(name, Arc::new(c));
    }
    for (name, spec) in doc.universes.0 {
        let seeds = spec
            .seeds
            .iter()
            .map(|s| lookup(&ws.categories, s).cloned())
            .collect::<Result<Vec<_>>>()?;
        let u = match &spec.monoid {
            None => identity_two_monad(seeds),
            Some(m) => {
                if spec.depth < 2 {
                    return Err(invalid(&name, "depth must be at least 2"));
                }
                monoid_two_monad(lookup(&ws.monoids, m)?, seeds, spec.depth)
            }
        };
        ws.universes.insert(name, u);
    }
    for (name, spec) in doc.algebras.0 {
        let a = algebra(&ws, &name, &spec)?;
        ws.algebras.insert(name, a);
    }
    for (name, spec) in doc.morphisms.0 {
        let y = lookup(&ws.algebras, &spec.from)?;
        let z = lookup(&ws.algebras, &spec.to)?;
        if y.universe != z.universe {
            return Err(invalid(&name, "endpoints live in different universes"));
        }
        let u = &ws.universes[&y.universe];
        let (yc, zc) = (&y.algebra.carrier, &z.algebra.carrier);
        let f = functor(&name, yc, zc, &spec.f)?;
        let src = f.after(&y.algebra.action).map_err(|e| invalid(&name, e))?;
        let tgt = z.algebra.action.after(&u.t_fun(&f).map_err(|e| invalid(&name, e))?).map_err(|e| invalid(&name, e))?;
        let fbar = nat(&name, src, tgt, &spec.fbar)?;
        ws.morphisms.insert(name, Morphism { from: spec.from, to: spec.to, morphism: LaxMorphism { f, fbar } });
    }
    for (name, spec) in doc.diagrams.0 {
        let d = diagram(&ws, &name, &spec)?;
        ws.diagrams.insert(name, d);
    }
    for (name, spec) in doc.words.0 {
        let c = computad(&name, &spec.computad)?;
        let source = c.base().path(&spec.start, &refs(&spec.source)).map_err(|e| invalid(&name, e))?;
        let slots = spec
            .slots
            .iter()
            .map(|(p, cell)| Ok((*p, c.cell_id(cell).map_err(|e| invalid(&name, e))?)))
            .collect::<Result<Vec<_>>>()?;
        let word = PastingWord::from_slots(&c, source, &slots).map_err(|e| invalid(&name, e))?;
        ws.words.insert(name, Word { computad: c, word });
    }
    for (name, spec) in doc.paths.0 {
        let c = computad(&name, &spec.computad)?;
        let path = c.base().path(&spec.start, &refs(&spec.edges)).map_err(|e| invalid(&name, e))?;
        ws.paths.insert(name, PathDef { computad_name: spec.computad, computad: c, path });
    }
    Ok(ws)
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn computad(name: &str, which: &str) -> Result<Computad> {
    let b = match which {
        "delta_dot_lax" => Builtin::DeltaDotLax,
        "delta_lax" => Builtin::DeltaLax,
        "delta_dot" => Builtin::DeltaDot,
        other => return Err(invalid(name, format!("unknown computad \"{other}\""))),
    };
    Ok(builtin_computad(b))
}

fn monoid(name: &str, spec: &MonoidSpec) -> Result<Monoid> {
    let idx = |e: &str| {
        spec.elements
            .iter()
            .position(|x| x == e)
            .ok_or_else(|| invalid(name, format!("unknown element \"{e}\"")))
    };
    let table = spec
        .table
        .iter()
        .map(|row| row.iter().map(|e| idx(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Monoid::new(&spec.elements, table, idx(&spec.unit)?).map_err(|e| invalid(name, e))
}

fn category(ws: &Workspace, name: &str, spec: &CategorySpec) -> Result<FinCat> {
    let forms = [
        spec.builtin.is_some(),
        spec.chain.is_some(),
        spec.discrete.is_some(),
        spec.monoid.is_some(),
        spec.objects.is_some(),
    ];
    if forms.iter().filter(|&&b| b).count() != 1 {
        return Err(invalid(name, "give exactly one of builtin, chain, discrete, monoid, objects"));
    }
    if let Some(b) = &spec.builtin {
        return match b.as_str() {
            "terminal" => Ok(FinCat::terminal()),
            "walking_arrow" => Ok(FinCat::walking_arrow()),
            other => Err(invalid(name, format!("unknown builtin \"{other}\""))),
        };
    }
    if let Some(n) = spec.chain {
        return Ok(FinCat::chain(n));
    }
    if let Some(names) = &spec.discrete {
        return Ok(FinCat::discrete(names));
    }
    if let Some(m) = &spec.monoid {
        let m = lookup(&ws.monoids, m)?;
        return FinCat::one_object(m.names(), m.table(), m.unit()).map_err(|e| invalid(name, e));
    }
    let mut b = FinCat::builder();
    for o in spec.objects.as_deref().unwrap_or_default() {
        b = b.object(o);
    }
    for (m, d, c) in &spec.morphisms {
        b = b.morphism(m, d, c);
    }
    for (g, f, h) in &spec.compose {
        b = b.composite(g, f, h);
    }
    b.build().map_err(|e| invalid(name, e))
}

fn functor(name: &str, src: &Arc<FinCat>, tgt: &Arc<FinCat>, spec: &FunctorSpec) -> Result<Fun> {
    let obj = |o: &str| src.object_id(o).ok_or_else(|| invalid(name, format!("unknown source object \"{o}\"")));
    let mut on_obj = vec![None; src.num_objects()];
    for (a, b) in &spec.objects {
        let y = tgt.object_id(b).ok_or_else(|| invalid(name, format!("unknown target object \"{b}\"")))?;
        on_obj[obj(a)?] = Some(y);
    }
    let on_obj = on_obj
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| invalid(name, format!("object \"{}\" is not assigned", src.object_name(x)))))
        .collect::<Result<Vec<_>>>()?;
    let mut on_mor = vec![None; src.num_morphisms()];
    for (a, b) in &spec.morphisms {
        let f = src.morphism_id(a).ok_or_else(|| invalid(name, format!("unknown source morphism \"{a}\"")))?;
        let g = tgt.morphism_id(b).ok_or_else(|| invalid(name, format!("unknown target morphism \"{b}\"")))?;
        on_mor[f] = Some(g);
    }
    let mut mors = Vec::with_capacity(on_mor.len());
    for (f, g) in on_mor.into_iter().enumerate() {
        match g {
            Some(g) => mors.push(g),
            None if src.is_identity(f) => mors.push(tgt.identity(on_obj[src.dom(f)])),
            None => {
                // a unique candidate in the target hom is taken as forced
                let hom = tgt.hom(on_obj[src.dom(f)], on_obj[src.cod(f)]);
                match hom {
                    [only] => mors.push(*only),
                    _ => return Err(invalid(name, format!("morphism \"{}\" is not assigned", src.morphism_name(f)))),
                }
            }
        }
    }
    make_fun(src.clone(), tgt.clone(), on_obj, mors).map_err(|e| invalid(name, e))
}

fn nat(name: &str, src: Fun, tgt: Fun, spec: &NatSpec) -> Result<NatT> {
    let (c, d) = (src.src().clone(), src.tgt().clone());
    let mut comps = vec![None; c.num_objects()];
    for (a, m) in spec {
        let x = c.object_id(a).ok_or_else(|| invalid(name, format!("unknown object \"{a}\"")))?;
        let f = d.morphism_id(m).ok_or_else(|| invalid(name, format!("unknown morphism \"{m}\"")))?;
        comps[x] = Some(f);
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(x, f)| match f {
            Some(f) => Ok(f),
            None => match d.hom(src.obj(x), tgt.obj(x)) {
                [only] => Ok(*only),
                _ => Err(invalid(name, format!("component at \"{}\" is not given", c.object_name(x)))),
            },
        })
        .collect::<Result<Vec<_>>>()?;
    make_nat(src, tgt, comps).map_err(|e| invalid(name, e))
}

fn algebra(ws: &Workspace, name: &str, spec: &AlgebraSpec) -> Result<Algebra> {
    let u = lookup(&ws.universes, &spec.universe)?;
    let z = lookup(&ws.categories, &spec.carrier)?.clone();
    if u.index_of(&z).is_none() {
        return Err(invalid(name, "carrier is not in the universe"));
    }
    let need = |what: &str, o: bool| if o { Ok(()) } else { Err(invalid(name, format!("missing field \"{what}\""))) };
    let err = |e: twocat::laxalg::LaxAlgError| invalid(name, e);
    let tz = u.t_cat(&z).map_err(err)?;
    match spec.kind {
        AlgebraKind::Monad => {
            need("t", spec.t.is_some())?;
            need("mu", spec.mu.is_some())?;
            need("eta", spec.eta.is_some())?;
            let t = functor(name, &z, &z, spec.t.as_ref().expect("checked"))?;
            let tt = t.after(&t).map_err(|e| invalid(name, e))?;
            let mu = nat(name, tt, t.clone(), spec.mu.as_ref().expect("checked"))?;
            let eta = nat(name, Fun::identity(&z), t.clone(), spec.eta.as_ref().expect("checked"))?;
            let algebra = LaxAlgebra::from_monad(u, z, &t, &mu, &eta).map_err(err)?;
            Ok(Algebra { universe: spec.universe.clone(), algebra, monad: Some((t, mu, eta)) })
        }
        AlgebraKind::Strict => {
            need("action", spec.action.is_some())?;
            let a = functor(name, &tz, &z, spec.action.as_ref().expect("checked"))?;
            let algebra = LaxAlgebra::strict(u, z, a).map_err(err)?;
            Ok(Algebra { universe: spec.universe.clone(), algebra, monad: None })
        }
        AlgebraKind::Lax => {
            need("action", spec.action.is_some())?;
            need("assoc", spec.assoc.is_some())?;
            need("unit", spec.unit.is_some())?;
            let a = functor(name, &tz, &z, spec.action.as_ref().expect("checked"))?;
            let ta = u.t_fun(&a).map_err(err)?;
            let a_ta = a.after(&ta).map_err(|e| invalid(name, e))?;
            let a_m = a.after(&u.mult(&z).map_err(err)?).map_err(|e| invalid(name, e))?;
            let a_eta = a.after(&u.unit(&z).map_err(err)?).map_err(|e| invalid(name, e))?;
            let assoc = nat(name, a_ta, a_m, spec.assoc.as_ref().expect("checked"))?;
            let unit = nat(name, Fun::identity(&z), a_eta, spec.unit.as_ref().expect("checked"))?;
            let algebra = LaxAlgebra::new(u, z, a, assoc, unit).map_err(err)?;
            Ok(Algebra { universe: spec.universe.clone(), algebra, monad: None })
        }
    }
}

fn diagram(ws: &Workspace, name: &str, spec: &DiagramSpec) -> Result<DeltaDiagram> {
    if let Some((y, z)) = &spec.tzy {
        let ya = lookup(&ws.algebras, y)?;
        let za = lookup(&ws.algebras, z)?;
        if ya.universe != za.universe {
            return Err(invalid(name, "algebras live in different universes"));
        }
        let u = &ws.universes[&ya.universe];
        return build_tzy(u, &ya.algebra, &za.algebra).map(|t| t.diagram).map_err(|e| invalid(name, e));
    }
    let cat = |field: &Option<String>, what: &str| -> Result<Arc<FinCat>> {
        let n = field.as_ref().ok_or_else(|| invalid(name, format!("missing field \"{what}\"")))?;
        lookup(&ws.categories, n).cloned()
    };
    let (c1, c2, c3) = (cat(&spec.c1, "c1")?, cat(&spec.c2, "c2")?, cat(&spec.c3, "c3")?);
    let fun = |field: &Option<FunctorSpec>, what: &str, s: &Arc<FinCat>, t: &Arc<FinCat>| {
        functor(name, s, t, field.as_ref().ok_or_else(|| invalid(name, format!("missing field \"{what}\"")))?)
    };
    let d0 = fun(&spec.d0, "d0", &c1, &c2)?;
    let d1 = fun(&spec.d1, "d1", &c1, &c2)?;
    let s0 = fun(&spec.s0, "s0", &c2, &c1)?;
    let del0 = fun(&spec.del0, "del0", &c2, &c3)?;
    let del1 = fun(&spec.del1, "del1", &c2, &c3)?;
    let del2 = fun(&spec.del2, "del2", &c2, &c3)?;
    let comp = |a: &Fun, b: &Fun| a.after(b).map_err(|e| invalid(name, e));
    let cell = |field: &Option<NatSpec>, what: &str, s: Fun, t: Fun| {
        nat(name, s, t, field.as_ref().ok_or_else(|| invalid(name, format!("missing field \"{what}\"")))?)
    };
    let sigma00 = cell(&spec.sigma00, "sigma00", comp(&del0, &d0)?, comp(&del1, &d0)?)?;
    let sigma20 = cell(&spec.sigma20, "sigma20", comp(&del2, &d0)?, comp(&del0, &d1)?)?;
    let sigma21 = cell(&spec.sigma21, "sigma21", comp(&del2, &d1)?, comp(&del1, &d1)?)?;
    let n0 = cell(&spec.n0, "n0", Fun::identity(&c1), comp(&s0, &d0)?)?;
    let n1 = cell(&spec.n1, "n1", Fun::identity(&c1), comp(&s0, &d1)?)?;
    make_delta_diagram(DiagramParts { c1, c2, c3, d0, d1, s0, del0, del1, del2, sigma00, sigma20, sigma21, n0, n1 })
        .map_err(|e| invalid(name, e))
}
