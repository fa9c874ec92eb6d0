//! Finite categories, functors and natural transformations.
//!
//! Every category is stored with an explicit composition table and is
//! validated once at construction. Functors and natural transformations
//! are index maps into their target category. The pasting calculus
//! (vertical composition, Godement product, whiskering) lives in
//! [`paste`] and the helpers around it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type ObjId = usize;
pub type MorId = usize;

/// Category law reported by [`FinCatError::AxiomViolation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Typing,
    Totality,
    LeftIdentity,
    RightIdentity,
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Typing => "typing",
            Law::Totality => "totality",
            Law::LeftIdentity => "left identity",
            Law::RightIdentity => "right identity",
            Law::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("duplicate identifier {0:?}")]
    Duplicate(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("{law} violated: {witness}")]
    AxiomViolation { law: Law, witness: String },
    #[error("functoriality violated: {0}")]
    FunctorialityViolation(String),
    #[error("naturality violated at morphism {0:?}")]
    NaturalityViolation(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
}

pub type Result<T> = std::result::Result<T, FinCatError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A validated finite category.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    // (g, f) -> g∘f, defined exactly on composable pairs
    compose: HashMap<(MorId, MorId), MorId>,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut idx = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if idx.insert(n.clone(), i).is_some() {
            return Err(FinCatError::Duplicate(n.clone()));
        }
    }
    Ok(idx)
}

/// Builds and validates a category from identifier-level data.
///
/// `morphisms` are `(name, dom, cod)`, `identity` maps each object to its
/// identity morphism, and `compose` lists `(g, f, g∘f)` triples.
pub fn make_fincat(
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identity: Vec<(String, String)>,
    compose: Vec<(String, String, String)>,
) -> Result<FinCat> {
    let obj_index = index_names(&objects)?;
    let obj = |n: &str| {
        obj_index
            .get(n)
            .copied()
            .ok_or_else(|| FinCatError::UnknownObject(n.to_string()))
    };
    let mut mors = Vec::with_capacity(morphisms.len());
    for (name, d, c) in &morphisms {
        mors.push(Morphism { name: name.clone(), dom: obj(d)?, cod: obj(c)? });
    }
    let names: Vec<String> = mors.iter().map(|m| m.name.clone()).collect();
    let mor_index = index_names(&names)?;
    let mor = |n: &str| {
        mor_index
            .get(n)
            .copied()
            .ok_or_else(|| FinCatError::UnknownMorphism(n.to_string()))
    };
    let mut ids = vec![None; objects.len()];
    for (o, m) in &identity {
        ids[obj(o)?] = Some(mor(m)?);
    }
    let mut identities = Vec::with_capacity(objects.len());
    for (i, id) in ids.into_iter().enumerate() {
        identities.push(id.ok_or_else(|| FinCatError::AxiomViolation {
            law: Law::Totality,
            witness: format!("object {:?} has no identity", objects[i]),
        })?);
    }
    let mut table = HashMap::with_capacity(compose.len());
    for (g, f, h) in &compose {
        if table.insert((mor(g)?, mor(f)?), mor(h)?).is_some() {
            return Err(FinCatError::Duplicate(format!("composite {g}∘{f}")));
        }
    }
    FinCat::from_parts(objects, mors, identities, table)
}

impl FinCat {
    /// Index-level constructor; runs the full law scan.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: HashMap<(MorId, MorId), MorId>,
    ) -> Result<FinCat> {
        let obj_index = index_names(&objects)?;
        let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
        let mor_index = index_names(&names)?;
        let cat = Self::assemble(objects, morphisms, identities, compose, obj_index, mor_index);
        cat.check_laws()?;
        Ok(cat)
    }

    /// Constructor for data that is a category by construction (products,
    /// functor categories, quotients). Skips the law scan.
    pub(crate) fn from_parts_trusted(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: HashMap<(MorId, MorId), MorId>,
    ) -> FinCat {
        let obj_index = objects.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mor_index = morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
        Self::assemble(objects, morphisms, identities, compose, obj_index, mor_index)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: HashMap<(MorId, MorId), MorId>,
        obj_index: HashMap<String, ObjId>,
        mor_index: HashMap<String, MorId>,
    ) -> FinCat {
        let mut homs: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.dom, m.cod)).or_default().push(i);
        }
        FinCat { objects, morphisms, identities, compose, homs, obj_index, mor_index }
    }

    fn violation(law: Law, witness: String) -> FinCatError {
        FinCatError::AxiomViolation { law, witness }
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.morphisms.len();
        for (x, &i) in self.identities.iter().enumerate() {
            let m = self.morphisms.get(i).ok_or_else(|| {
                Self::violation(Law::Typing, format!("identity of {:?} out of range", self.objects[x]))
            })?;
            if m.dom != x || m.cod != x {
                return Err(Self::violation(
                    Law::Typing,
                    format!("identity {:?} is not an endomorphism of {:?}", m.name, self.objects[x]),
                ));
            }
        }
        for m in &self.morphisms {
            if m.dom >= self.objects.len() || m.cod >= self.objects.len() {
                return Err(Self::violation(Law::Typing, format!("{:?} has an unknown endpoint", m.name)));
            }
        }
        for (&(g, f), &h) in &self.compose {
            if g >= n || f >= n || h >= n {
                return Err(Self::violation(Law::Typing, "composite index out of range".into()));
            }
            let (mg, mf, mh) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[h]);
            if mf.cod != mg.dom {
                return Err(Self::violation(
                    Law::Typing,
                    format!("{}∘{} given but not composable", mg.name, mf.name),
                ));
            }
            if mh.dom != mf.dom || mh.cod != mg.cod {
                return Err(Self::violation(
                    Law::Typing,
                    format!("{}∘{} = {} has the wrong boundary", mg.name, mf.name, mh.name),
                ));
            }
        }
        for f in 0..n {
            for &g in self.out_of(self.morphisms[f].cod) {
                if !self.compose.contains_key(&(g, f)) {
                    return Err(Self::violation(
                        Law::Totality,
                        format!("{}∘{} undefined", self.morphisms[g].name, self.morphisms[f].name),
                    ));
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose[&(self.identities[m.cod], f)] != f {
                return Err(Self::violation(Law::LeftIdentity, format!("at {}", m.name)));
            }
            if self.compose[&(f, self.identities[m.dom])] != f {
                return Err(Self::violation(Law::RightIdentity, format!("at {}", m.name)));
            }
        }
        for f in 0..n {
            for &g in self.out_of(self.morphisms[f].cod) {
                let gf = self.compose[&(g, f)];
                for &h in self.out_of(self.morphisms[g].cod) {
                    let lhs = self.compose[&(h, gf)];
                    let rhs = self.compose[&(self.compose[&(h, g)], f)];
                    if lhs != rhs {
                        return Err(Self::violation(
                            Law::Associativity,
                            format!(
                                "({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})",
                                h = self.morphisms[h].name,
                                g = self.morphisms[g].name,
                                f = self.morphisms[f].name
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    // Morphisms whose domain is `x`. Computed by scanning homs; fine at desk scale.
    fn out_of(&self, x: ObjId) -> impl Iterator<Item = &MorId> + '_ {
        (0..self.objects.len()).flat_map(move |y| self.hom(x, y).iter())
    }

    pub fn builder() -> CatBuilder {
        CatBuilder::default()
    }

    pub fn terminal() -> FinCat {
        CatBuilder::default().object("*").build().expect("terminal category")
    }

    /// The walking arrow `0 → 1` with non-identity morphism `f`.
    pub fn walking_arrow() -> FinCat {
        CatBuilder::default()
            .object("0")
            .object("1")
            .morphism("f", "0", "1")
            .build()
            .expect("walking arrow")
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
        let mut b = CatBuilder::default();
        for n in names {
            b = b.object(n.as_ref());
        }
        b.build().expect("discrete category")
    }

    /// Preorder on `names` generated by `leq` (reflexive-transitive closure).
    /// The morphism `a → b` is named `a<=b`.
    pub fn preorder<S: AsRef<str>>(names: &[S], leq: &[(S, S)]) -> Result<FinCat> {
        let n = names.len();
        let idx = index_names(&names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>())?;
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in leq {
            let a = *idx.get(a.as_ref()).ok_or_else(|| FinCatError::UnknownObject(a.as_ref().into()))?;
            let b = *idx.get(b.as_ref()).ok_or_else(|| FinCatError::UnknownObject(b.as_ref().into()))?;
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut morphisms = Vec::new();
        let mut id_of = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    let name = if i == j {
                        format!("id_{}", objects[i])
                    } else {
                        format!("{}<={}", objects[i], objects[j])
                    };
                    id_of.insert((i, j), morphisms.len());
                    morphisms.push(Morphism { name, dom: i, cod: j });
                }
            }
        }
        let identities = (0..n).map(|i| id_of[&(i, i)]).collect();
        let mut compose = HashMap::new();
        for (&(i, j), &f) in &id_of {
            for k in 0..n {
                if let Some(&g) = id_of.get(&(j, k)) {
                    compose.insert((g, f), id_of[&(i, k)]);
                }
            }
        }
        FinCat::from_parts(objects, morphisms, identities, compose)
    }

    /// Linear order `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> FinCat {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let leq: Vec<(String, String)> =
            (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
        FinCat::preorder(&names, &leq).expect("chain")
    }

    /// One-object category whose morphisms are the elements of a monoid
    /// given by its multiplication table (`table[a][b] = a·b`, read as `a∘b`).
    pub fn one_object<S: AsRef<str>>(elements: &[S], table: &[Vec<usize>], unit: usize) -> Result<FinCat> {
        let morphisms = elements
            .iter()
            .map(|e| Morphism { name: e.as_ref().to_string(), dom: 0, cod: 0 })
            .collect();
        let mut compose = HashMap::new();
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                compose.insert((a, b), c);
            }
        }
        FinCat::from_parts(vec!["*".into()], morphisms, vec![unit], compose)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.morphisms[f].dom] == f
    }

    /// `g∘f`, or `None` when `cod f ≠ dom g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    /// Composite of a list given in application order: `chain[0]` is applied first.
    pub fn compose_path(&self, chain: &[MorId]) -> Option<MorId> {
        let (&first, rest) = chain.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let m = &self.morphisms[f];
        self.hom(m.cod, m.dom).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identities[m.dom])
                && self.compose(f, g) == Some(self.identities[m.cod])
        })
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Full subcategory on the given objects (kept in the given order),
    /// together with the inclusion functor.
    pub fn full_subcategory(self: &Arc<Self>, objs: &[ObjId]) -> (Arc<FinCat>, Fun) {
        let mut new_obj = HashMap::new();
        for (i, &x) in objs.iter().enumerate() {
            new_obj.insert(x, i);
        }
        let objects = objs.iter().map(|&x| self.objects[x].clone()).collect();
        let mut morphisms = Vec::new();
        let mut on_mor = Vec::new();
        let mut new_mor = HashMap::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if let (Some(&d), Some(&c)) = (new_obj.get(&m.dom), new_obj.get(&m.cod)) {
                new_mor.insert(f, morphisms.len());
                morphisms.push(Morphism { name: m.name.clone(), dom: d, cod: c });
                on_mor.push(f);
            }
        }
        let identities = objs.iter().map(|&x| new_mor[&self.identities[x]]).collect();
        let mut compose = HashMap::new();
        for (&(g, f), &h) in &self.compose {
            if let (Some(&g2), Some(&f2)) = (new_mor.get(&g), new_mor.get(&f)) {
                compose.insert((g2, f2), new_mor[&h]);
            }
        }
        let sub = Arc::new(FinCat::from_parts_trusted(objects, morphisms, identities, compose));
        let inc = Fun { src: sub.clone(), tgt: self.clone(), on_obj: objs.to_vec(), on_mor };
        (sub, inc)
    }
}

impl FinCat {
    /// Isomorphic copy with objects and morphisms moved to new indices and
    /// renamed with `tag` appended. `obj_perm[i]` and `mor_perm[f]` are the new
    /// indices. Returns the copy with the isomorphisms to and from it.
    pub fn relabeled(self: &Arc<Self>, obj_perm: &[usize], mor_perm: &[usize], tag: &str) -> (Arc<FinCat>, Fun, Fun) {
        let mut objects = vec![String::new(); self.num_objects()];
        for (i, name) in self.objects.iter().enumerate() {
            objects[obj_perm[i]] = format!("{name}{tag}");
        }
        let mut morphisms = vec![Morphism { name: String::new(), dom: 0, cod: 0 }; self.num_morphisms()];
        for (f, m) in self.morphisms.iter().enumerate() {
            morphisms[mor_perm[f]] = Morphism { name: format!("{}{tag}", m.name), dom: obj_perm[m.dom], cod: obj_perm[m.cod] };
        }
        let mut identities = vec![0; self.num_objects()];
        for (x, &i) in self.identities.iter().enumerate() {
            identities[obj_perm[x]] = mor_perm[i];
        }
        let compose = self.compose.iter().map(|(&(g, f), &h)| ((mor_perm[g], mor_perm[f]), mor_perm[h])).collect();
        let copy = Arc::new(FinCat::from_parts_trusted(objects, morphisms, identities, compose));
        let mut inv_obj = vec![0; obj_perm.len()];
        for (i, &j) in obj_perm.iter().enumerate() {
            inv_obj[j] = i;
        }
        let mut inv_mor = vec![0; mor_perm.len()];
        for (i, &j) in mor_perm.iter().enumerate() {
            inv_mor[j] = i;
        }
        let to = Fun { src: self.clone(), tgt: copy.clone(), on_obj: obj_perm.to_vec(), on_mor: mor_perm.to_vec() };
        let from = Fun { src: copy.clone(), tgt: self.clone(), on_obj: inv_obj, on_mor: inv_mor };
        (copy, to, from)
    }
}

/// Incremental construction of small categories. Identities `id_<obj>`
/// and all composites with identities are filled in automatically;
/// composites of non-identity morphisms must be listed.
#[derive(Debug, Default, Clone)]
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    compose: Vec<(String, String, String)>,
}

impl CatBuilder {
    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push((name.into(), dom.into(), cod.into()));
        self
    }

    /// Records `g∘f = h`.
    pub fn composite(mut self, g: &str, f: &str, h: &str) -> Self {
        self.compose.push((g.into(), f.into(), h.into()));
        self
    }

    pub fn build(self) -> Result<FinCat> {
        let ids: Vec<(String, String)> =
            self.objects.iter().map(|o| (o.clone(), format!("id_{o}"))).collect();
        let mut morphisms: Vec<(String, String, String)> =
            ids.iter().map(|(o, i)| (i.clone(), o.clone(), o.clone())).collect();
        morphisms.extend(self.morphisms.iter().cloned());
        let mut compose = self.compose.clone();
        for (name, d, c) in &morphisms {
            let id_d = format!("id_{d}");
            let id_c = format!("id_{c}");
            compose.push((name.clone(), id_d.clone(), name.clone()));
            if *name != id_c || c != d {
                compose.push((id_c, name.clone(), name.clone()));
            }
        }
        compose.sort();
        compose.dedup();
        make_fincat(self.objects, morphisms, ids, compose)
    }
}

/// A validated functor.
#[derive(Clone)]
pub struct Fun {
    src: Arc<FinCat>,
    tgt: Arc<FinCat>,
    on_obj: Vec<ObjId>,
    on_mor: Vec<MorId>,
}

fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Fun {
    fn eq(&self, other: &Self) -> bool {
        self.on_obj == other.on_obj
            && self.on_mor == other.on_mor
            && same_cat(&self.src, &other.src)
            && same_cat(&self.tgt, &other.tgt)
    }
}

impl Eq for Fun {}

impl fmt::Debug for Fun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fun{}", self.encode())
    }
}

/// Validates a functor given by index maps.
pub fn make_fun(src: Arc<FinCat>, tgt: Arc<FinCat>, on_obj: Vec<ObjId>, on_mor: Vec<MorId>) -> Result<Fun> {
    let bad = |s: String| FinCatError::FunctorialityViolation(s);
    if on_obj.len() != src.num_objects() || on_mor.len() != src.num_morphisms() {
        return Err(bad("maps are not total".into()));
    }
    if on_obj.iter().any(|&y| y >= tgt.num_objects()) || on_mor.iter().any(|&g| g >= tgt.num_morphisms()) {
        return Err(bad("image out of range".into()));
    }
    for (f, m) in src.morphisms().iter().enumerate() {
        let g = on_mor[f];
        if tgt.dom(g) != on_obj[m.dom] || tgt.cod(g) != on_obj[m.cod] {
            return Err(bad(format!("{} is sent to {} with the wrong boundary", m.name, tgt.morphism_name(g))));
        }
    }
    for x in 0..src.num_objects() {
        if on_mor[src.identity(x)] != tgt.identity(on_obj[x]) {
            return Err(bad(format!("identity of {} not preserved", src.object_name(x))));
        }
    }
    for (&(g, f), &h) in &src.compose {
        if tgt.compose(on_mor[g], on_mor[f]) != Some(on_mor[h]) {
            return Err(bad(format!(
                "F({}∘{}) ≠ F({})∘F({})",
                src.morphism_name(g),
                src.morphism_name(f),
                src.morphism_name(g),
                src.morphism_name(f)
            )));
        }
    }
    Ok(Fun { src, tgt, on_obj, on_mor })
}

impl Fun {
    pub(crate) fn trusted(src: Arc<FinCat>, tgt: Arc<FinCat>, on_obj: Vec<ObjId>, on_mor: Vec<MorId>) -> Fun {
        debug_assert!(make_fun(src.clone(), tgt.clone(), on_obj.clone(), on_mor.clone()).is_ok());
        Fun { src, tgt, on_obj, on_mor }
    }

    pub fn identity(c: &Arc<FinCat>) -> Fun {
        Fun {
            src: c.clone(),
            tgt: c.clone(),
            on_obj: (0..c.num_objects()).collect(),
            on_mor: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn constant(src: &Arc<FinCat>, tgt: &Arc<FinCat>, y: ObjId) -> Fun {
        Fun {
            src: src.clone(),
            tgt: tgt.clone(),
            on_obj: vec![y; src.num_objects()],
            on_mor: vec![tgt.identity(y); src.num_morphisms()],
        }
    }

    pub fn src(&self) -> &Arc<FinCat> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<FinCat> {
        &self.tgt
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.on_obj[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.on_mor[f]
    }

    pub fn on_obj(&self) -> &[ObjId] {
        &self.on_obj
    }

    pub fn on_mor(&self) -> &[MorId] {
        &self.on_mor
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Fun) -> Result<Fun> {
        if !same_cat(&first.tgt, &self.src) {
            return Err(FinCatError::BoundaryMismatch("functor composite: codomain ≠ domain".into()));
        }
        Ok(Fun {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            on_obj: first.on_obj.iter().map(|&x| self.on_obj[x]).collect(),
            on_mor: first.on_mor.iter().map(|&f| self.on_mor[f]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.src, &self.tgt)
            && self.on_obj.iter().enumerate().all(|(i, &x)| i == x)
            && self.on_mor.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Identifier-level encoding `<x0,x1|f1,…>`: object images, then images of
    /// the non-identity morphisms of the source, all in source order.
    pub fn encode(&self) -> String {
        let objs: Vec<&str> = self.on_obj.iter().map(|&y| self.tgt.object_name(y)).collect();
        let mors: Vec<&str> = (0..self.src.num_morphisms())
            .filter(|&f| !self.src.is_identity(f))
            .map(|f| self.tgt.morphism_name(self.on_mor[f]))
            .collect();
        format!("<{}|{}>", objs.join(","), mors.join(","))
    }
}

/// A validated natural transformation `src ⇒ tgt`.
#[derive(Clone, PartialEq, Eq)]
pub struct NatT {
    src: Fun,
    tgt: Fun,
    components: Vec<MorId>,
}

impl fmt::Debug for NatT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatT({})", self.encode())
    }
}

fn parallel(f: &Fun, g: &Fun) -> bool {
    same_cat(&f.src, &g.src) && same_cat(&f.tgt, &g.tgt)
}

/// Validates a natural transformation `f ⇒ g` from its components.
pub fn make_nat(f: Fun, g: Fun, components: Vec<MorId>) -> Result<NatT> {
    if !parallel(&f, &g) {
        return Err(FinCatError::BoundaryMismatch("functors are not parallel".into()));
    }
    let (c, d) = (f.src.clone(), f.tgt.clone());
    if components.len() != c.num_objects() {
        return Err(FinCatError::BoundaryMismatch("one component per object required".into()));
    }
    for (x, &a) in components.iter().enumerate() {
        if a >= d.num_morphisms() || d.dom(a) != f.obj(x) || d.cod(a) != g.obj(x) {
            return Err(FinCatError::BoundaryMismatch(format!(
                "component at {} is not F{} → G{}",
                c.object_name(x),
                c.object_name(x),
                c.object_name(x)
            )));
        }
    }
    for (h, m) in c.morphisms().iter().enumerate() {
        let lhs = d.compose(g.mor(h), components[m.dom]);
        let rhs = d.compose(components[m.cod], f.mor(h));
        if lhs != rhs {
            return Err(FinCatError::NaturalityViolation(m.name.clone()));
        }
    }
    Ok(NatT { src: f, tgt: g, components })
}

impl NatT {
    pub(crate) fn trusted(src: Fun, tgt: Fun, components: Vec<MorId>) -> NatT {
        debug_assert!(make_nat(src.clone(), tgt.clone(), components.clone()).is_ok());
        NatT { src, tgt, components }
    }

    pub fn identity(f: &Fun) -> NatT {
        let components = f.on_obj.iter().map(|&y| f.tgt.identity(y)).collect();
        NatT { src: f.clone(), tgt: f.clone(), components }
    }

    pub fn src(&self) -> &Fun {
        &self.src
    }

    pub fn tgt(&self) -> &Fun {
        &self.tgt
    }

    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt
            && self.components.iter().enumerate().all(|(x, &a)| a == self.tgt.tgt.identity(self.src.obj(x)))
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&a| self.src.tgt.is_iso(a))
    }

    pub fn encode(&self) -> String {
        let comps: Vec<&str> = self.components.iter().map(|&a| self.src.tgt.morphism_name(a)).collect();
        format!("{}=[{}]=>{}", self.src.encode(), comps.join(","), self.tgt.encode())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PasteKind {
    Vertical,
    Horizontal,
}

/// Vertical composite `β·α` or horizontal (Godement) composite `β∗α`.
pub fn paste(kind: PasteKind, beta: &NatT, alpha: &NatT) -> Result<NatT> {
    match kind {
        PasteKind::Vertical => {
            if beta.src != alpha.tgt {
                return Err(FinCatError::BoundaryMismatch("vertical: src(β) ≠ tgt(α)".into()));
            }
            let d = &alpha.src.tgt;
            let components = (0..alpha.components.len())
                .map(|x| d.compose(beta.components[x], alpha.components[x]).expect("composable components"))
                .collect();
            Ok(NatT { src: alpha.src.clone(), tgt: beta.tgt.clone(), components })
        }
        PasteKind::Horizontal => {
            if !same_cat(&alpha.src.tgt, &beta.src.src) {
                return Err(FinCatError::BoundaryMismatch("horizontal: boundaries not composable".into()));
            }
            let e = &beta.src.tgt;
            let g = &beta.src;
            let components = (0..alpha.components.len())
                .map(|x| {
                    let b = beta.components[alpha.tgt.obj(x)];
                    e.compose(b, g.mor(alpha.components[x])).expect("composable components")
                })
                .collect();
            Ok(NatT {
                src: beta.src.after(&alpha.src)?,
                tgt: beta.tgt.after(&alpha.tgt)?,
                components,
            })
        }
    }
}

pub fn vertical(beta: &NatT, alpha: &NatT) -> Result<NatT> {
    paste(PasteKind::Vertical, beta, alpha)
}

/// `G ∗ α` (post-whiskering by a functor).
pub fn whisker_left(g: &Fun, alpha: &NatT) -> Result<NatT> {
    paste(PasteKind::Horizontal, &NatT::identity(g), alpha)
}

/// `β ∗ F` (pre-whiskering by a functor).
pub fn whisker_right(beta: &NatT, f: &Fun) -> Result<NatT> {
    paste(PasteKind::Horizontal, beta, &NatT::identity(f))
}

/// Product category with its two projections.
#[derive(Debug, Clone)]
pub struct ProductCat {
    pub cat: Arc<FinCat>,
    pub left: Fun,
    pub right: Fun,
}

/// `C × D`. Object `(c, d)` has index `c·|D₀| + d`; morphism `(f, g)` has
/// index `f·|D₁| + g`.
pub fn product_cat(c: &Arc<FinCat>, d: &Arc<FinCat>) -> ProductCat {
    let (no, nm) = (d.num_objects(), d.num_morphisms());
    let mut objects = Vec::with_capacity(c.num_objects() * no);
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::with_capacity(c.num_morphisms() * nm);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                dom: f.dom * no + g.dom,
                cod: f.cod * no + g.cod,
            });
        }
    }
    let identities = (0..c.num_objects())
        .flat_map(|a| (0..no).map(move |b| (a, b)))
        .map(|(a, b)| c.identity(a) * nm + d.identity(b))
        .collect();
    let mut compose = HashMap::new();
    for (&(g1, f1), &h1) in &c.compose {
        for (&(g2, f2), &h2) in &d.compose {
            compose.insert((g1 * nm + g2, f1 * nm + f2), h1 * nm + h2);
        }
    }
    let cat = Arc::new(FinCat::from_parts_trusted(objects, morphisms, identities, compose));
    let left = Fun {
        src: cat.clone(),
        tgt: c.clone(),
        on_obj: (0..cat.num_objects()).map(|i| i / no).collect(),
        on_mor: (0..cat.num_morphisms()).map(|i| i / nm).collect(),
    };
    let right = Fun {
        src: cat.clone(),
        tgt: d.clone(),
        on_obj: (0..cat.num_objects()).map(|i| i % no).collect(),
        on_mor: (0..cat.num_morphisms()).map(|i| i % nm).collect(),
    };
    ProductCat { cat, left, right }
}

/// Morphism triples `(g, f, g∘f)` grouped by the largest index among them,
/// so a sequential assignment can check each composite as soon as it is complete.
fn triples_by_max(c: &FinCat) -> Vec<Vec<(MorId, MorId, MorId)>> {
    let mut by_max = vec![Vec::new(); c.num_morphisms()];
    for (&(g, f), &h) in &c.compose {
        by_max[g.max(f).max(h)].push((g, f, h));
    }
    for v in &mut by_max {
        v.sort_unstable();
    }
    by_max
}

/// All functors `C → D`, in lexicographic order of their object and morphism maps.
pub fn all_functors(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Vec<Fun> {
    let triples = triples_by_max(c);
    // morphisms whose endpoints are both assigned once object k is assigned
    let mut mors_by_obj = vec![Vec::new(); c.num_objects()];
    for (f, m) in c.morphisms().iter().enumerate() {
        mors_by_obj[m.dom.max(m.cod)].push(f);
    }
    let mut out = Vec::new();
    let mut on_obj = Vec::with_capacity(c.num_objects());
    functor_objects(c, d, &mors_by_obj, &triples, &mut on_obj, &mut out);
    out
}

fn functor_objects(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    mors_by_obj: &[Vec<MorId>],
    triples: &[Vec<(MorId, MorId, MorId)>],
    on_obj: &mut Vec<ObjId>,
    out: &mut Vec<Fun>,
) {
    let k = on_obj.len();
    if k == c.num_objects() {
        let mut on_mor = Vec::with_capacity(c.num_morphisms());
        functor_morphisms(c, d, on_obj, triples, &mut on_mor, out);
        return;
    }
    for y in 0..d.num_objects() {
        on_obj.push(y);
        let ok = mors_by_obj[k].iter().all(|&f| {
            let m = &c.morphisms()[f];
            !d.hom(on_obj[m.dom], on_obj[m.cod]).is_empty()
        });
        if ok {
            functor_objects(c, d, mors_by_obj, triples, on_obj, out);
        }
        on_obj.pop();
    }
}

fn functor_morphisms(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    on_obj: &[ObjId],
    triples: &[Vec<(MorId, MorId, MorId)>],
    on_mor: &mut Vec<MorId>,
    out: &mut Vec<Fun>,
) {
    let k = on_mor.len();
    if k == c.num_morphisms() {
        out.push(Fun { src: c.clone(), tgt: d.clone(), on_obj: on_obj.to_vec(), on_mor: on_mor.clone() });
        return;
    }
    let m = &c.morphisms()[k];
    let candidates: Vec<MorId> = if c.is_identity(k) {
        vec![d.identity(on_obj[m.dom])]
    } else {
        d.hom(on_obj[m.dom], on_obj[m.cod]).to_vec()
    };
    for g in candidates {
        on_mor.push(g);
        let ok = triples[k].iter().all(|&(a, b, h)| d.compose(on_mor[a], on_mor[b]) == Some(on_mor[h]));
        if ok {
            functor_morphisms(c, d, on_obj, triples, on_mor, out);
        }
        on_mor.pop();
    }
}

/// All natural transformations `f ⇒ g`, in lexicographic order of components.
pub fn all_nats(f: &Fun, g: &Fun) -> Vec<NatT> {
    let c = f.src.clone();
    let mut checks = vec![Vec::new(); c.num_objects()];
    for (h, m) in c.morphisms().iter().enumerate() {
        checks[m.dom.max(m.cod)].push(h);
    }
    let mut out = Vec::new();
    let mut comps = Vec::with_capacity(c.num_objects());
    nat_components(f, g, &checks, &mut comps, &mut out);
    out
}

fn nat_components(f: &Fun, g: &Fun, checks: &[Vec<MorId>], comps: &mut Vec<MorId>, out: &mut Vec<NatT>) {
    let c = &f.src;
    let d = &f.tgt;
    let k = comps.len();
    if k == c.num_objects() {
        out.push(NatT { src: f.clone(), tgt: g.clone(), components: comps.clone() });
        return;
    }
    for &a in d.hom(f.obj(k), g.obj(k)) {
        comps.push(a);
        let ok = checks[k].iter().all(|&h| {
            let m = &c.morphisms()[h];
            d.compose(g.mor(h), comps[m.dom]) == d.compose(comps[m.cod], f.mor(h))
        });
        if ok {
            nat_components(f, g, checks, comps, out);
        }
        comps.pop();
    }
}

/// The functor category `[C, D]` with the functors and transformations its
/// objects and morphisms stand for.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: Arc<FinCat>,
    functors: Vec<Fun>,
    nats: Vec<NatT>,
    functor_index: HashMap<(Vec<ObjId>, Vec<MorId>), ObjId>,
    nat_index: HashMap<(ObjId, ObjId, Vec<MorId>), MorId>,
}

/// Category of all functors `C → D` and natural transformations between them.
pub fn hom_cat(c: &Arc<FinCat>, d: &Arc<FinCat>) -> FunctorCategory {
    let functors = all_functors(c, d);
    let mut functor_index = HashMap::with_capacity(functors.len());
    let mut objects = Vec::with_capacity(functors.len());
    for (i, f) in functors.iter().enumerate() {
        functor_index.insert((f.on_obj.clone(), f.on_mor.clone()), i);
        objects.push(f.encode());
    }
    let mut nats = Vec::new();
    let mut morphisms = Vec::new();
    let mut nat_index = HashMap::new();
    let mut identities = vec![0; functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for n in all_nats(f, g) {
                let idx = nats.len();
                if i == j && n.is_identity() {
                    identities[i] = idx;
                }
                nat_index.insert((i, j, n.components.clone()), idx);
                morphisms.push(Morphism { name: n.encode(), dom: i, cod: j });
                nats.push(n);
            }
        }
    }
    let mut by_dom: HashMap<ObjId, Vec<MorId>> = HashMap::new();
    for (a, m) in morphisms.iter().enumerate() {
        by_dom.entry(m.dom).or_default().push(a);
    }
    let mut compose = HashMap::new();
    for (a, m) in morphisms.iter().enumerate() {
        for &b in by_dom.get(&m.cod).map(Vec::as_slice).unwrap_or(&[]) {
            let ba = vertical(&nats[b], &nats[a]).expect("composable");
            let key = (m.dom, morphisms[b].cod, ba.components.clone());
            compose.insert((b, a), nat_index[&key]);
        }
    }
    let cat = Arc::new(FinCat::from_parts_trusted(objects, morphisms, identities, compose));
    FunctorCategory { cat, functors, nats, functor_index, nat_index }
}

impl FunctorCategory {
    pub fn functor(&self, x: ObjId) -> &Fun {
        &self.functors[x]
    }

    pub fn nat(&self, a: MorId) -> &NatT {
        &self.nats[a]
    }

    pub fn functors(&self) -> &[Fun] {
        &self.functors
    }

    pub fn object_of(&self, f: &Fun) -> Option<ObjId> {
        self.functor_index.get(&(f.on_obj.clone(), f.on_mor.clone())).copied()
    }

    pub fn morphism_of(&self, n: &NatT) -> Option<MorId> {
        let i = self.object_of(&n.src)?;
        let j = self.object_of(&n.tgt)?;
        self.nat_index.get(&(i, j, n.components.clone())).copied()
    }

    /// Functor `self.cat → target.cat` induced by maps on functors and on
    /// transformations (pre/post-composition, whiskering).
    pub fn induced<F, N>(&self, target: &FunctorCategory, on_functor: F, on_nat: N) -> Result<Fun>
    where
        F: Fn(&Fun) -> Result<Fun>,
        N: Fn(&NatT) -> Result<NatT>,
    {
        let miss = || FinCatError::BoundaryMismatch("image outside the target functor category".into());
        let on_obj = self
            .functors
            .iter()
            .map(|f| target.object_of(&on_functor(f)?).ok_or_else(miss))
            .collect::<Result<Vec<_>>>()?;
        let on_mor = self
            .nats
            .iter()
            .map(|n| target.morphism_of(&on_nat(n)?).ok_or_else(miss))
            .collect::<Result<Vec<_>>>()?;
        make_fun(self.cat.clone(), target.cat.clone(), on_obj, on_mor)
    }

    /// Natural transformation between two functors into `target.cat` whose
    /// component at each functor `f` is given as a transformation.
    pub fn induced_nat<C>(&self, target: &FunctorCategory, src: Fun, tgt: Fun, component: C) -> Result<NatT>
    where
        C: Fn(&Fun) -> Result<NatT>,
    {
        let miss = || FinCatError::BoundaryMismatch("component outside the target functor category".into());
        let comps = self
            .functors
            .iter()
            .map(|f| target.morphism_of(&component(f)?).ok_or_else(miss))
            .collect::<Result<Vec<_>>>()?;
        make_nat(src, tgt, comps)
    }
}

/// Mutually inverse functors `C ⇄ D`, or `None` when the categories are not isomorphic.
///
/// Backtracks over object bijections (pruned by hom-set sizes) and then over
/// morphism bijections hom-set by hom-set. The search order is fixed, so the
/// witness is deterministic.
pub fn iso_categories(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Option<(Fun, Fun)> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return None;
    }
    let sig = |k: &FinCat, x: ObjId| {
        let mut outs: Vec<usize> = (0..k.num_objects()).map(|y| k.hom(x, y).len()).collect();
        let mut ins: Vec<usize> = (0..k.num_objects()).map(|y| k.hom(y, x).len()).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        (k.hom(x, x).len(), outs, ins)
    };
    let csig: Vec<_> = (0..c.num_objects()).map(|x| sig(c, x)).collect();
    let dsig: Vec<_> = (0..d.num_objects()).map(|x| sig(d, x)).collect();
    let triples = triples_by_max(c);
    let mut state = IsoSearch {
        c,
        d,
        csig: &csig,
        dsig: &dsig,
        triples: &triples,
        on_obj: Vec::new(),
        used_obj: vec![false; d.num_objects()],
    };
    let (on_obj, on_mor) = state.objects()?;
    let fwd = Fun { src: c.clone(), tgt: d.clone(), on_obj, on_mor };
    let mut inv_obj = vec![0; d.num_objects()];
    for (x, &y) in fwd.on_obj.iter().enumerate() {
        inv_obj[y] = x;
    }
    let mut inv_mor = vec![0; d.num_morphisms()];
    for (f, &g) in fwd.on_mor.iter().enumerate() {
        inv_mor[g] = f;
    }
    let back = Fun { src: d.clone(), tgt: c.clone(), on_obj: inv_obj, on_mor: inv_mor };
    Some((fwd, back))
}

type ObjSig = (usize, Vec<usize>, Vec<usize>);

struct IsoSearch<'a> {
    c: &'a Arc<FinCat>,
    d: &'a Arc<FinCat>,
    csig: &'a [ObjSig],
    dsig: &'a [ObjSig],
    triples: &'a [Vec<(MorId, MorId, MorId)>],
    on_obj: Vec<ObjId>,
    used_obj: Vec<bool>,
}

impl IsoSearch<'_> {
    fn objects(&mut self) -> Option<(Vec<ObjId>, Vec<MorId>)> {
        let k = self.on_obj.len();
        if k == self.c.num_objects() {
            let mut on_mor = Vec::with_capacity(self.c.num_morphisms());
            let mut used = vec![false; self.d.num_morphisms()];
            if self.morphisms(&mut on_mor, &mut used) {
                return Some((self.on_obj.clone(), on_mor));
            }
            return None;
        }
        for y in 0..self.d.num_objects() {
            if self.used_obj[y] || self.csig[k] != self.dsig[y] {
                continue;
            }
            let consistent = (0..k).all(|x| {
                let y2 = self.on_obj[x];
                self.c.hom(k, x).len() == self.d.hom(y, y2).len()
                    && self.c.hom(x, k).len() == self.d.hom(y2, y).len()
            });
            if !consistent {
                continue;
            }
            self.on_obj.push(y);
            self.used_obj[y] = true;
            if let Some(found) = self.objects() {
                return Some(found);
            }
            self.used_obj[y] = false;
            self.on_obj.pop();
        }
        None
    }

    fn morphisms(&self, on_mor: &mut Vec<MorId>, used: &mut [bool]) -> bool {
        let k = on_mor.len();
        if k == self.c.num_morphisms() {
            return true;
        }
        let m = &self.c.morphisms()[k];
        let (y1, y2) = (self.on_obj[m.dom], self.on_obj[m.cod]);
        let is_id = self.c.is_identity(k);
        for &g in self.d.hom(y1, y2) {
            if used[g] || self.d.is_identity(g) != is_id {
                continue;
            }
            on_mor.push(g);
            used[g] = true;
            let ok = self.triples[k]
                .iter()
                .all(|&(a, b, h)| self.d.compose(on_mor[a], on_mor[b]) == Some(on_mor[h]));
            if ok && self.morphisms(on_mor, used) {
                return true;
            }
            used[g] = false;
            on_mor.pop();
        }
        false
    }
}
