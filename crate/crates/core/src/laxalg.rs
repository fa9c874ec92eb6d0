//! Strict 2-monads on finite universes, lax algebras and their morphisms.
//!
//! The 2-monad is either the identity or `TX = M × X` for a finite monoid
//! `M` (seen as a discrete category). Everything is strict: `T` preserves
//! composition on the nose and the structure cells of the monad are
//! identities, so the pasting equations below are written without
//! comparison cells.
//!
//! A lax morphism `(f, fbar)` from `y` to `z` carries `fbar: f∘a_y ⇒ a_z∘T(f)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::deltadiag::{make_delta_diagram, DeltaDiagram, DiagramError, DiagramParts};
use crate::descent::{descent_with_inclusion, DescentCategory};
use crate::fincat::{
    all_functors, all_nats, hom_cat, make_fun, product_cat, vertical, whisker_left, whisker_right, FinCat,
    FinCatError, Fun, FunctorCategory, MorId, Morphism, NatT, ObjId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaxAlgError {
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("category outside the universe: {0}")]
    OutsideUniverse(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("coherence violated: {0}")]
    CoherenceViolation(String),
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T> = std::result::Result<T, LaxAlgError>;

/// A finite monoid by multiplication table: `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl Monoid {
    pub fn new<S: AsRef<str>>(names: &[S], table: Vec<Vec<usize>>, unit: usize) -> Result<Monoid> {
        let m = Monoid::from_table_unchecked(names, table, unit);
        let n = m.names.len();
        if n == 0 || m.table.len() != n || m.table.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) {
            return Err(LaxAlgError::InvalidMonoid("table is not a total binary operation".into()));
        }
        if unit >= n || (0..n).any(|a| m.table[unit][a] != a || m.table[a][unit] != a) {
            return Err(LaxAlgError::InvalidMonoid("unit law fails".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.table[m.table[a][b]][c] != m.table[a][m.table[b][c]] {
                        return Err(LaxAlgError::InvalidMonoid(format!(
                            "({}{})({}) ≠ ({})({}{})",
                            m.names[a], m.names[b], m.names[c], m.names[a], m.names[b], m.names[c]
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Skips validation; for probing the coherence checker with broken tables.
    pub fn from_table_unchecked<S: AsRef<str>>(names: &[S], table: Vec<Vec<usize>>, unit: usize) -> Monoid {
        Monoid { names: names.iter().map(|s| s.as_ref().to_string()).collect(), table, unit }
    }

    pub fn trivial() -> Monoid {
        Monoid::new(&["e"], vec![vec![0]], 0).expect("trivial monoid")
    }

    /// Cyclic group of order `n`, elements `0..n`.
    pub fn cyclic(n: usize) -> Monoid {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::new(&names, table, 0).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonadKind {
    Identity,
    Product(Monoid),
}

/// A finite family of categories closed under `T` up to a fixed depth.
#[derive(Debug, Clone)]
pub struct MonadUniverse {
    kind: MonadKind,
    members: Vec<Arc<FinCat>>,
    // index of T(members[i]), if within depth
    t_index: Vec<Option<usize>>,
    // for members of the form T X: the projection T X → X
    projection: Vec<Option<Fun>>,
}

/// Identity 2-monad on the given categories.
pub fn identity_two_monad(seeds: Vec<Arc<FinCat>>) -> MonadUniverse {
    let n = seeds.len();
    MonadUniverse { kind: MonadKind::Identity, members: seeds, t_index: (0..n).map(Some).collect(), projection: vec![None; n] }
}

/// `TX = M × X` on the seeds and their images under `T` up to `depth`
/// applications.
pub fn monoid_two_monad(m: &Monoid, seeds: Vec<Arc<FinCat>>, depth: usize) -> MonadUniverse {
    let disc = Arc::new(FinCat::discrete(m.names()));
    let mut members = Vec::new();
    let mut t_index = Vec::new();
    let mut projection = Vec::new();
    for seed in seeds {
        let mut prev = members.len();
        members.push(seed);
        t_index.push(None);
        projection.push(None);
        for _ in 0..depth {
            let p = product_cat(&disc, &members[prev]);
            let idx = members.len();
            members.push(p.cat);
            t_index.push(None);
            projection.push(Some(p.right));
            t_index[prev] = Some(idx);
            prev = idx;
        }
    }
    MonadUniverse { kind: MonadKind::Product(m.clone()), members, t_index, projection }
}

impl MonadUniverse {
    pub fn kind(&self) -> &MonadKind {
        &self.kind
    }

    pub fn members(&self) -> &[Arc<FinCat>] {
        &self.members
    }

    /// Monoid order; 1 for the identity monad.
    pub fn monoid_order(&self) -> usize {
        match &self.kind {
            MonadKind::Identity => 1,
            MonadKind::Product(m) => m.order(),
        }
    }

    pub fn index_of(&self, c: &Arc<FinCat>) -> Option<usize> {
        self.members
            .iter()
            .position(|m| Arc::ptr_eq(m, c))
            .or_else(|| self.members.iter().position(|m| **m == **c))
    }

    fn require(&self, c: &Arc<FinCat>) -> Result<usize> {
        self.index_of(c).ok_or_else(|| LaxAlgError::OutsideUniverse(format!("{c:?}")))
    }

    fn t_idx(&self, c: &Arc<FinCat>) -> Result<usize> {
        let i = self.require(c)?;
        self.t_index[i].ok_or_else(|| LaxAlgError::OutsideUniverse(format!("T applied beyond depth to {c:?}")))
    }

    pub fn t_cat(&self, c: &Arc<FinCat>) -> Result<Arc<FinCat>> {
        Ok(self.members[self.t_idx(c)?].clone())
    }

    /// `T` on a functor between members.
    pub fn t_fun(&self, f: &Fun) -> Result<Fun> {
        let (tx, ty) = (self.t_cat(f.src())?, self.t_cat(f.tgt())?);
        match &self.kind {
            MonadKind::Identity => Ok(f.clone()),
            MonadKind::Product(m) => {
                let (xo, xm) = (f.src().num_objects(), f.src().num_morphisms());
                let (yo, ym) = (f.tgt().num_objects(), f.tgt().num_morphisms());
                let mut on_obj = Vec::with_capacity(m.order() * xo);
                let mut on_mor = Vec::with_capacity(m.order() * xm);
                for g in 0..m.order() {
                    on_obj.extend(f.on_obj().iter().map(|&y| g * yo + y));
                }
                for g in 0..m.order() {
                    on_mor.extend(f.on_mor().iter().map(|&h| g * ym + h));
                }
                Ok(Fun::trusted(tx, ty, on_obj, on_mor))
            }
        }
    }

    /// `T` on a transformation between functors between members.
    pub fn t_nat(&self, a: &NatT) -> Result<NatT> {
        let src = self.t_fun(a.src())?;
        let tgt = self.t_fun(a.tgt())?;
        match &self.kind {
            MonadKind::Identity => Ok(a.clone()),
            MonadKind::Product(m) => {
                let ym = a.src().tgt().num_morphisms();
                let mut comps = Vec::new();
                for g in 0..m.order() {
                    comps.extend(a.components().iter().map(|&c| g * ym + c));
                }
                Ok(NatT::trusted(src, tgt, comps))
            }
        }
    }

    /// Multiplication `m_X: T²X → TX`.
    pub fn mult(&self, x: &Arc<FinCat>) -> Result<Fun> {
        let tx = self.t_cat(x)?;
        let ttx = self.t_cat(&tx)?;
        match &self.kind {
            MonadKind::Identity => Ok(Fun::identity(x)),
            MonadKind::Product(m) => {
                let n = m.order();
                let (xo, xm) = (x.num_objects(), x.num_morphisms());
                let mut on_obj = Vec::with_capacity(n * n * xo);
                let mut on_mor = Vec::with_capacity(n * n * xm);
                for g in 0..n {
                    for h in 0..n {
                        on_obj.extend((0..xo).map(|o| m.mul(g, h) * xo + o));
                    }
                }
                for g in 0..n {
                    for h in 0..n {
                        on_mor.extend((0..xm).map(|f| m.mul(g, h) * xm + f));
                    }
                }
                // trusted only when the table is a monoid; validate otherwise
                Ok(make_fun(ttx, tx, on_obj, on_mor)?)
            }
        }
    }

    /// Unit `η_X: X → TX`.
    pub fn unit(&self, x: &Arc<FinCat>) -> Result<Fun> {
        let tx = self.t_cat(x)?;
        match &self.kind {
            MonadKind::Identity => Ok(Fun::identity(x)),
            MonadKind::Product(m) => {
                let e = m.unit();
                let on_obj = (0..x.num_objects()).map(|o| e * x.num_objects() + o).collect();
                let on_mor = (0..x.num_morphisms()).map(|f| e * x.num_morphisms() + f).collect();
                Ok(make_fun(x.clone(), tx, on_obj, on_mor)?)
            }
        }
    }

    /// Projection `TX → X` when `M` is trivial (or `T` is the identity).
    pub fn trivial_projection(&self, x: &Arc<FinCat>) -> Result<Fun> {
        match &self.kind {
            MonadKind::Identity => Ok(Fun::identity(x)),
            MonadKind::Product(m) if m.order() == 1 => {
                let tx = self.t_idx(x)?;
                Ok(self.projection[tx].clone().expect("T-images carry a projection"))
            }
            MonadKind::Product(_) => Err(LaxAlgError::BoundaryMismatch("monoid is not trivial".into())),
        }
    }
}

fn violation(what: impl Into<String>) -> LaxAlgError {
    LaxAlgError::CoherenceViolation(what.into())
}

/// Checks the strict 2-monad laws on every member deep enough to state
/// them: associativity and unit laws of `m`, `η` (the boundaries of `μ`,
/// `ι`, `τ`, which are identities), 2-naturality of `m` and `η` along the
/// structure functors, and the two coherence pastings where `T⁴X` exists.
pub fn check_pseudomonad(u: &MonadUniverse) -> Result<()> {
    for x in &u.members {
        let Ok(tx) = u.t_cat(x) else { continue };
        let name = |law: &str| format!("{law} at member with {} objects", x.num_objects());
        let eta = u.unit(x)?;
        let Ok(ttx) = u.t_cat(&tx) else { continue };
        let eta_t = u.unit(&tx)?;
        let m = u.mult(x)?;
        // ι, τ: m∘η_T = id = m∘T(η)
        if m.after(&eta_t)? != Fun::identity(&tx) {
            return Err(violation(name("left unit")));
        }
        if m.after(&u.t_fun(&eta)?)? != Fun::identity(&tx) {
            return Err(violation(name("right unit")));
        }
        // η natural along η: T(η)∘η = η_T∘η
        if u.t_fun(&eta)?.after(&eta)? != eta_t.after(&eta)? {
            return Err(violation(name("naturality of the unit")));
        }
        let Ok(_) = u.t_cat(&ttx) else { continue };
        let m_t = u.mult(&tx)?;
        let tm = u.t_fun(&m)?;
        // μ: m∘T(m) = m∘m_T
        if m.after(&tm)? != m.after(&m_t)? {
            return Err(violation(name("associativity")));
        }
        let eta_tt = u.unit(&ttx)?;
        if m_t.after(&eta_tt)? != Fun::identity(&ttx) {
            return Err(violation(name("left unit one level up")));
        }
        if u.t_fun(&eta)?.after(&m)? != m_t.after(&u.t_fun(&u.t_fun(&eta)?)?)? {
            return Err(violation(name("naturality of the multiplication")));
        }
        // coherence pastings of μ, ι, τ: with identity cells these reduce to
        // equalities of the bounding functors one level up
        if u.t_cat(&ttx).and_then(|c| u.t_cat(&c)).is_ok() {
            let m_tt = u.mult(&ttx)?;
            let lhs = m.after(&tm)?.after(&u.t_fun(&tm)?)?;
            let rhs = m.after(&m_t)?.after(&m_tt)?;
            if lhs != rhs {
                return Err(violation(name("associativity pasting")));
            }
        }
        // identity pasting: T(m)∘T(η_T) = id through T²X
        let t_eta_t = u.t_fun(&eta_t)?;
        if tm.after(&t_eta_t)? != Fun::identity(&ttx) {
            return Err(violation(name("identity pasting")));
        }
    }
    Ok(())
}

/// `(Z, a, zbar, zbar0)` with `zbar: a∘T(a) ⇒ a∘m_Z` and `zbar0: id ⇒ a∘η_Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxAlgebra {
    pub carrier: Arc<FinCat>,
    pub action: Fun,
    pub assoc: NatT,
    pub unit: NatT,
}

impl LaxAlgebra {
    /// Checks the typing of the structure; the coherence equations are left to
    /// [`check_lax_algebra`].
    pub fn new(u: &MonadUniverse, carrier: Arc<FinCat>, action: Fun, assoc: NatT, unit: NatT) -> Result<LaxAlgebra> {
        let tz = u.t_cat(&carrier)?;
        if !same(action.src(), &tz) || !same(action.tgt(), &carrier) {
            return Err(LaxAlgError::BoundaryMismatch("action is not TZ → Z".into()));
        }
        let a_ta = action.after(&u.t_fun(&action)?)?;
        let a_m = action.after(&u.mult(&carrier)?)?;
        if assoc.src() != &a_ta || assoc.tgt() != &a_m {
            return Err(LaxAlgError::BoundaryMismatch("associativity cell is not a∘T(a) ⇒ a∘m".into()));
        }
        let a_eta = action.after(&u.unit(&carrier)?)?;
        if unit.src() != &Fun::identity(&carrier) || unit.tgt() != &a_eta {
            return Err(LaxAlgError::BoundaryMismatch("unit cell is not id ⇒ a∘η".into()));
        }
        Ok(LaxAlgebra { carrier, action, assoc, unit })
    }

    /// Strict algebra: both structure cells identities.
    pub fn strict(u: &MonadUniverse, carrier: Arc<FinCat>, action: Fun) -> Result<LaxAlgebra> {
        let a_ta = action.after(&u.t_fun(&action)?)?;
        let id = Fun::identity(&carrier);
        LaxAlgebra::new(u, carrier, action, NatT::identity(&a_ta), NatT::identity(&id))
    }

    /// The lax algebra of a monad `(t, mu, eta)` on `Z` over a trivial 2-monad.
    pub fn from_monad(u: &MonadUniverse, carrier: Arc<FinCat>, t: &Fun, mu: &NatT, eta: &NatT) -> Result<LaxAlgebra> {
        let p = u.trivial_projection(&carrier)?;
        let action = t.after(&p)?;
        let pp = p.after(&u.t_fun(&p)?)?;
        let assoc = whisker_right(mu, &pp)?;
        LaxAlgebra::new(u, carrier, action, assoc, eta.clone())
    }

    pub fn is_strict(&self) -> bool {
        self.assoc.is_identity() && self.unit.is_identity()
    }

    pub fn is_pseudo(&self) -> bool {
        self.assoc.is_invertible() && self.unit.is_invertible()
    }
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

// Vertical composite that reports a typing failure as a coherence failure.
fn vcomp(beta: &NatT, alpha: &NatT, what: &str) -> Result<NatT> {
    vertical(beta, alpha).map_err(|_| violation(format!("{what}: pasting is not composable")))
}

/// Evaluates the associativity pasting and the two unit pastings.
pub fn check_lax_algebra(u: &MonadUniverse, z: &LaxAlgebra) -> Result<()> {
    let a = &z.action;
    let zc = &z.carrier;
    let tz = u.t_cat(zc)?;
    let m_z = u.mult(zc)?;
    let m_tz = u.mult(&tz)?;
    let eta_z = u.unit(zc)?;
    let eta_tz = u.unit(&tz)?;
    let ta = u.t_fun(a)?;
    let tta = u.t_fun(&ta)?;
    // (zbar ∗ T m)·(a ∗ T zbar) = (zbar ∗ m_T)·(zbar ∗ T²a)
    let lhs = vcomp(&whisker_right(&z.assoc, &u.t_fun(&m_z)?)?, &whisker_left(a, &u.t_nat(&z.assoc)?)?, "associativity")?;
    let rhs = vcomp(&whisker_right(&z.assoc, &m_tz)?, &whisker_right(&z.assoc, &tta)?, "associativity")?;
    if lhs != rhs {
        return Err(violation("associativity"));
    }
    // (zbar ∗ η_T)·(zbar0 ∗ a) = id_a
    let left = vcomp(&whisker_right(&z.assoc, &eta_tz)?, &whisker_right(&z.unit, a)?, "left unit")?;
    if left != NatT::identity(a) {
        return Err(violation("left unit"));
    }
    // (zbar ∗ T η)·(a ∗ T zbar0) = id_a
    let right = vcomp(&whisker_right(&z.assoc, &u.t_fun(&eta_z)?)?, &whisker_left(a, &u.t_nat(&z.unit)?)?, "right unit")?;
    if right != NatT::identity(a) {
        return Err(violation("right unit"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorphismClass {
    Strict,
    Pseudo,
    Lax,
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismClass::Strict => "strict",
            MorphismClass::Pseudo => "pseudo",
            MorphismClass::Lax => "lax",
        })
    }
}

/// `(f, fbar)` with `fbar: f∘a_y ⇒ a_z∘T(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxMorphism {
    pub f: Fun,
    pub fbar: NatT,
}

impl LaxMorphism {
    pub fn identity(z: &LaxAlgebra) -> LaxMorphism {
        LaxMorphism { f: Fun::identity(&z.carrier), fbar: NatT::identity(&z.action) }
    }

    pub fn class(&self) -> MorphismClass {
        if self.fbar.is_identity() {
            MorphismClass::Strict
        } else if self.fbar.is_invertible() {
            MorphismClass::Pseudo
        } else {
            MorphismClass::Lax
        }
    }
}

fn check_morphism_typing(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra, phi: &LaxMorphism) -> Result<()> {
    if !same(phi.f.src(), &y.carrier) || !same(phi.f.tgt(), &z.carrier) {
        return Err(LaxAlgError::BoundaryMismatch("underlying functor is not Y → Z".into()));
    }
    let src = phi.f.after(&y.action)?;
    let tgt = z.action.after(&u.t_fun(&phi.f)?)?;
    if phi.fbar.src() != &src || phi.fbar.tgt() != &tgt {
        return Err(LaxAlgError::BoundaryMismatch("fbar is not f∘a_y ⇒ a_z∘T(f)".into()));
    }
    Ok(())
}

/// The two pastings a lax morphism must satisfy; typing is assumed.
fn morphism_equations(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra, phi: &LaxMorphism) -> Result<()> {
    let f = &phi.f;
    let m_y = u.mult(&y.carrier)?;
    let eta_y = u.unit(&y.carrier)?;
    let ttf = u.t_fun(&u.t_fun(f)?)?;
    let t_ay = u.t_fun(&y.action)?;
    // (zbar ∗ T²f)·(a_z ∗ T fbar)·(fbar ∗ T a_y) = (fbar ∗ m_Y)·(f ∗ ybar)
    let lhs = vcomp(
        &whisker_right(&z.assoc, &ttf)?,
        &vcomp(&whisker_left(&z.action, &u.t_nat(&phi.fbar)?)?, &whisker_right(&phi.fbar, &t_ay)?, "multiplication")?,
        "multiplication",
    )?;
    let rhs = vcomp(&whisker_right(&phi.fbar, &m_y)?, &whisker_left(f, &y.assoc)?, "multiplication")?;
    if lhs != rhs {
        return Err(violation("multiplication equation of the morphism"));
    }
    // (fbar ∗ η_Y)·(f ∗ ybar0) = zbar0 ∗ f
    let lhs = vcomp(&whisker_right(&phi.fbar, &eta_y)?, &whisker_left(f, &y.unit)?, "unit")?;
    if lhs != whisker_right(&z.unit, f)? {
        return Err(violation("unit equation of the morphism"));
    }
    Ok(())
}

/// Validates a lax morphism and returns its finest class.
pub fn check_lax_morphism(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra, phi: &LaxMorphism) -> Result<MorphismClass> {
    check_morphism_typing(u, y, z, phi)?;
    morphism_equations(u, y, z, phi)?;
    Ok(phi.class())
}

/// Whether `m: f ⇒ h` satisfies `(a_z ∗ T m)·fbar = hbar·(m ∗ a_y)`.
pub fn check_transformation(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra, phi: &LaxMorphism, psi: &LaxMorphism, m: &NatT) -> bool {
    if m.src() != &phi.f || m.tgt() != &psi.f {
        return false;
    }
    let Ok(tm) = u.t_nat(m) else { return false };
    let (Ok(left), Ok(right)) = (whisker_left(&z.action, &tm), whisker_right(m, &y.action)) else { return false };
    match (vertical(&left, &phi.fbar), vertical(&psi.fbar, &right)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Brute-force hom-category of lax algebras.
#[derive(Debug, Clone)]
pub struct HomCategory {
    pub cat: Arc<FinCat>,
    pub morphisms: Vec<LaxMorphism>,
    pub transformations: Vec<NatT>,
}

/// All `(f, fbar)` of at least the given class from `y` to `z`, and all
/// T-transformations between them.
pub fn enumerate_hom_category(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra, class: MorphismClass) -> Result<HomCategory> {
    let mut objs = Vec::new();
    for f in all_functors(&y.carrier, &z.carrier) {
        let src = f.after(&y.action)?;
        let tgt = z.action.after(&u.t_fun(&f)?)?;
        for fbar in all_nats(&src, &tgt) {
            let phi = LaxMorphism { f: f.clone(), fbar };
            if phi.class() <= class && morphism_equations(u, y, z, &phi).is_ok() {
                objs.push(phi);
            }
        }
    }
    let names: Vec<String> = objs.iter().map(|p| format!("({}|{})", p.f.encode(), p.fbar.encode())).collect();
    let mut morphisms = Vec::new();
    let mut transformations = Vec::new();
    let mut index = HashMap::new();
    for (i, phi) in objs.iter().enumerate() {
        for (j, psi) in objs.iter().enumerate() {
            for m in all_nats(&phi.f, &psi.f) {
                if check_transformation(u, y, z, phi, psi, &m) {
                    index.insert((i, j, m.components().to_vec()), morphisms.len());
                    let comps: Vec<&str> = m.components().iter().map(|&c| z.carrier.morphism_name(c)).collect();
                    morphisms.push(Morphism { name: format!("[{}]:{}->{}", comps.join(","), names[i], names[j]), dom: i, cod: j });
                    transformations.push(m);
                }
            }
        }
    }
    let identities: Vec<MorId> = objs
        .iter()
        .enumerate()
        .map(|(i, phi)| index[&(i, i, NatT::identity(&phi.f).components().to_vec())])
        .collect();
    let mut compose = HashMap::new();
    for (a, ma) in morphisms.iter().enumerate() {
        for (b, mb) in morphisms.iter().enumerate() {
            if ma.cod == mb.dom {
                let ba = vertical(&transformations[b], &transformations[a])?;
                compose.insert((b, a), index[&(ma.dom, mb.cod, ba.components().to_vec())]);
            }
        }
    }
    let cat = Arc::new(FinCat::from_parts(names, morphisms, identities, compose)?);
    Ok(HomCategory { cat, morphisms: objs, transformations })
}

/// The diagram whose strict lax descent object is the hom-category of lax
/// morphisms `y → z`, together with the functor categories it lives on.
#[derive(Debug, Clone)]
pub struct Tzy {
    pub diagram: DeltaDiagram,
    pub homs: [FunctorCategory; 3],
}

pub fn build_tzy(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra) -> Result<Tzy> {
    let yc = &y.carrier;
    let zc = &z.carrier;
    let ty = u.t_cat(yc)?;
    let tty = u.t_cat(&ty)?;
    let h1 = hom_cat(yc, zc);
    let h2 = hom_cat(&ty, zc);
    let h3 = hom_cat(&tty, zc);
    let a_y = &y.action;
    let a_z = &z.action;
    let m_y = u.mult(yc)?;
    let eta_y = u.unit(yc)?;
    let t_ay = u.t_fun(a_y)?;
    let lift = |e: LaxAlgError| match e {
        LaxAlgError::Cat(c) => c,
        other => FinCatError::BoundaryMismatch(other.to_string()),
    };
    let post = |from: &FunctorCategory, to: &FunctorCategory| {
        from.induced(
            to,
            |g| a_z.after(&u.t_fun(g).map_err(lift)?),
            |n| whisker_left(a_z, &u.t_nat(n).map_err(lift)?),
        )
    };
    let pre = |from: &FunctorCategory, to: &FunctorCategory, k: &Fun| {
        from.induced(to, |g| g.after(k), |n| whisker_right(n, k))
    };
    let d0 = post(&h1, &h2)?;
    let d1 = pre(&h1, &h2, a_y)?;
    let s0 = pre(&h2, &h1, &eta_y)?;
    let del0 = post(&h2, &h3)?;
    let del1 = pre(&h2, &h3, &m_y)?;
    let del2 = pre(&h2, &h3, &t_ay)?;
    let id1 = Fun::identity(&h1.cat);
    let sigma00 = h1.induced_nat(&h3, del0.after(&d0)?, del1.after(&d0)?, |f| {
        whisker_right(&z.assoc, &u.t_fun(&u.t_fun(f).map_err(lift)?).map_err(lift)?)
    })?;
    let sigma20 = NatT::identity(&del2.after(&d0)?);
    if sigma20.tgt() != &del0.after(&d1)? {
        return Err(LaxAlgError::BoundaryMismatch("T(a_z∘T f) differs from T a_z∘T² f".into()));
    }
    let sigma21 = h1.induced_nat(&h3, del2.after(&d1)?, del1.after(&d1)?, |f| whisker_left(f, &y.assoc))?;
    let n0 = h1.induced_nat(&h1, id1.clone(), s0.after(&d0)?, |f| whisker_right(&z.unit, f))?;
    let n1 = h1.induced_nat(&h1, id1, s0.after(&d1)?, |f| whisker_left(f, &y.unit))?;
    let diagram = make_delta_diagram(DiagramParts {
        c1: h1.cat.clone(),
        c2: h2.cat.clone(),
        c3: h3.cat.clone(),
        d0,
        d1,
        s0,
        del0,
        del1,
        del2,
        sigma00,
        sigma20,
        sigma21,
        n0,
        n1,
    })?;
    Ok(Tzy { diagram, homs: [h1, h2, h3] })
}

/// Outcome of comparing the descent route with direct enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropDescentReport {
    pub lax_objects: usize,
    pub lax_morphisms: usize,
    pub pseudo_objects: usize,
    pub pseudo_morphisms: usize,
    /// Accepted lax morphisms and descent data coincide as sets of pairs.
    pub data_bijection: bool,
    /// The identity-on-data correspondence is an isomorphism of categories.
    pub lax_iso: bool,
    pub pseudo_iso: bool,
    /// First discrepancy found, if any.
    pub counterexample: Option<String>,
    /// Object correspondences `(hom object, descent object)` when isomorphic.
    pub lax_witness: Vec<(String, String)>,
    pub pseudo_witness: Vec<(String, String)>,
}

impl PropDescentReport {
    pub fn passed(&self) -> bool {
        self.data_bijection && self.lax_iso && self.pseudo_iso
    }
}

/// Compares the descent objects of the `T_z^y` diagram with the brute-force
/// hom-categories of lax and pseudo morphisms, through the correspondence
/// `(f, fbar) ↦ (f, fbar)`.
pub fn verify_prop_descent(u: &MonadUniverse, y: &LaxAlgebra, z: &LaxAlgebra) -> Result<PropDescentReport> {
    let tzy = build_tzy(u, y, z)?;
    let (strict_d, lax_d, _) = descent_with_inclusion(&tzy.diagram);
    let lax_h = enumerate_hom_category(u, y, z, MorphismClass::Lax)?;
    let pseudo_h = enumerate_hom_category(u, y, z, MorphismClass::Pseudo)?;
    let mut counterexample = None;
    let lax_witness = compare(&tzy, &lax_h, &lax_d, &mut counterexample);
    let pseudo_witness = compare(&tzy, &pseudo_h, &strict_d, &mut counterexample);
    let (lax_iso, pseudo_iso) = (lax_witness.is_some(), pseudo_witness.is_some());
    let data_bijection = lax_iso || same_data(&tzy, &lax_h, &lax_d);
    Ok(PropDescentReport {
        lax_objects: lax_h.cat.num_objects(),
        lax_morphisms: lax_h.cat.num_morphisms(),
        pseudo_objects: pseudo_h.cat.num_objects(),
        pseudo_morphisms: pseudo_h.cat.num_morphisms(),
        data_bijection,
        lax_iso,
        pseudo_iso,
        counterexample,
        lax_witness: lax_witness.unwrap_or_default(),
        pseudo_witness: pseudo_witness.unwrap_or_default(),
    })
}

fn datum_of(tzy: &Tzy, phi: &LaxMorphism) -> Option<(ObjId, MorId)> {
    Some((tzy.homs[0].object_of(&phi.f)?, tzy.homs[1].morphism_of(&phi.fbar)?))
}

fn same_data(tzy: &Tzy, hom: &HomCategory, dc: &DescentCategory) -> bool {
    let mut a: Vec<(ObjId, MorId)> = match hom.morphisms.iter().map(|p| datum_of(tzy, p)).collect() {
        Some(v) => v,
        None => return false,
    };
    let mut b: Vec<(ObjId, MorId)> = dc.data().iter().map(|d| (d.f, d.fbar)).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

fn compare(tzy: &Tzy, hom: &HomCategory, dc: &DescentCategory, witness: &mut Option<String>) -> Option<Vec<(String, String)>> {
    let mut note = |s: String| {
        if witness.is_none() {
            *witness = Some(s);
        }
        None
    };
    let carrier = dc.carrier();
    if hom.cat.num_objects() != carrier.num_objects() || hom.cat.num_morphisms() != carrier.num_morphisms() {
        return note(format!(
            "sizes differ: enumeration {}/{} vs descent {}/{}",
            hom.cat.num_objects(),
            hom.cat.num_morphisms(),
            carrier.num_objects(),
            carrier.num_morphisms()
        ));
    }
    let mut on_obj = Vec::with_capacity(hom.morphisms.len());
    for phi in &hom.morphisms {
        let found = datum_of(tzy, phi)
            .and_then(|(f, fbar)| dc.object_of(crate::descent::DescentDatum { f, fbar }));
        match found {
            Some(x) => on_obj.push(x),
            None => return note(format!("lax morphism {} is not a descent datum", phi.f.encode())),
        }
    }
    let proj = crate::descent::descent_projection(dc);
    let mut by_ends: HashMap<(ObjId, ObjId, MorId), MorId> = HashMap::new();
    for (k, m) in carrier.morphisms().iter().enumerate() {
        by_ends.insert((m.dom, m.cod, proj.mor(k)), k);
    }
    let mut on_mor = Vec::with_capacity(hom.transformations.len());
    for (k, m) in hom.transformations.iter().enumerate() {
        let mm = &hom.cat.morphisms()[k];
        let key = tzy.homs[0]
            .morphism_of(m)
            .map(|d1m| (on_obj[mm.dom], on_obj[mm.cod], d1m));
        match key.and_then(|key| by_ends.get(&key).copied()) {
            Some(x) => on_mor.push(x),
            None => return note(format!("transformation {} is not a descent morphism", m.encode())),
        }
    }
    let bijective = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    };
    if !bijective(&on_obj, carrier.num_objects()) || !bijective(&on_mor, carrier.num_morphisms()) {
        return note("correspondence is not bijective".into());
    }
    let pairs = on_obj
        .iter()
        .enumerate()
        .map(|(i, &x)| (hom.cat.object_name(i).to_string(), carrier.object_name(x).to_string()))
        .collect();
    match make_fun(hom.cat.clone(), carrier.clone(), on_obj, on_mor) {
        Ok(_) => Some(pairs),
        Err(e) => note(format!("correspondence is not a functor: {e}")),
    }
}
