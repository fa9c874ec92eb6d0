//! Strict lax codescent objects computed from finite presentations.
//!
//! A [`PresentedCategory`] is completed with Knuth–Bendix over typed
//! generator strings (shortlex order, generators ordered by declaration).
//! When completion converges and the irreducible words are finite in number
//! the quotient is returned as a [`FinCat`]; otherwise the answer is
//! [`QuotientStatus::Undecided`].
//!
//! The lax codescent presentation of [`CodescentData`] has the objects and
//! morphisms of `A1`, one arrow `<w>: A(d¹)w → A(d⁰)w` per object `w` of `A2`,
//! and relations for composition in `A1`, naturality of `<−>`, the cocycle
//! condition over `A3` and the unit condition over `A1`.
//! [`verify_codescent_universal`] checks the result against lax descent of
//! the hom-diagrams it should represent.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::deltadiag::{make_delta_diagram, DiagramError, DiagramParts};
use crate::descent::lax_descent;
use crate::fincat::{
    hom_cat, iso_categories, whisker_left, whisker_right, FinCat, FinCatError, Fun, FunctorCategory, MorId, Morphism, NatT,
    ObjId,
};
use crate::laxalg::{LaxAlgError, LaxAlgebra, MonadUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodescentError {
    #[error("malformed presentation: {0}")]
    Presentation(String),
    #[error("boundary mismatch in codescent data: {0}")]
    BoundaryMismatch(String),
    #[error("monad law violated: {0}")]
    MonadLawViolation(String),
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    LaxAlg(#[from] LaxAlgError),
}

pub type Result<T> = std::result::Result<T, CodescentError>;

/// Default number of rewrite applications for completion.
pub const DEFAULT_BUDGET: usize = 50_000;

// Completion gives up past these sizes even with budget left.
const MAX_RULES: usize = 4_000;
const MAX_NORMAL_FORMS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A word of generators read first-to-last, starting at `start` (needed for
/// empty words).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub start: ObjId,
    pub letters: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedCategory {
    objects: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<(Word, Word)>,
}

impl PresentedCategory {
    /// Validates that every relation relates two parallel composable words.
    pub fn new(objects: Vec<String>, generators: Vec<Generator>, relations: Vec<(Word, Word)>) -> Result<PresentedCategory> {
        let p = PresentedCategory { objects, generators, relations };
        for g in &p.generators {
            if g.dom >= p.objects.len() || g.cod >= p.objects.len() {
                return Err(CodescentError::Presentation(format!("generator {} has unknown endpoint", g.name)));
            }
        }
        for (l, r) in &p.relations {
            let (a, b) = (p.end(l), p.end(r));
            if a.is_none() || b.is_none() || l.start != r.start || a != b {
                return Err(CodescentError::Presentation(format!(
                    "relation {} = {} is not between parallel words",
                    p.render(l),
                    p.render(r)
                )));
            }
        }
        Ok(p)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// Endpoint of a word, `None` when it is not composable.
    pub fn end(&self, w: &Word) -> Option<ObjId> {
        if w.start >= self.objects.len() {
            return None;
        }
        let mut at = w.start;
        for &l in &w.letters {
            let g = self.generators.get(l)?;
            if g.dom != at {
                return None;
            }
            at = g.cod;
        }
        Some(at)
    }

    /// Compositional-order rendering, `id_x` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return format!("id_{}", self.objects.get(w.start).map(String::as_str).unwrap_or("?"));
        }
        let names: Vec<&str> = w.letters.iter().rev().map(|&l| self.generators[l].name.as_str()).collect();
        names.join("∘")
    }
}

#[derive(Debug, Clone)]
pub enum QuotientStatus {
    Finite {
        cat: Arc<FinCat>,
        /// Image of each generator.
        generator_image: Vec<MorId>,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub status: QuotientStatus,
    /// Rules of the final (or last attempted) system.
    pub rules: usize,
    /// Rewrite applications spent.
    pub steps: usize,
}

impl QuotientResult {
    pub fn finite(&self) -> Option<&Arc<FinCat>> {
        match &self.status {
            QuotientStatus::Finite { cat, .. } => Some(cat),
            QuotientStatus::Undecided { .. } => None,
        }
    }
}

struct OutOfBudget;

type Letters = Vec<usize>;

fn shortlex_greater(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a > b)
}

struct Rewriter {
    rules: Vec<(Letters, Letters)>,
    steps: usize,
    budget: usize,
}

impl Rewriter {
    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    // leftmost-first rewriting to normal form
    fn reduce(&mut self, w: &[usize]) -> std::result::Result<Letters, OutOfBudget> {
        let mut cur = w.to_vec();
        'outer: loop {
            for i in 0..cur.len() {
                for (l, r) in &self.rules {
                    if cur[i..].starts_with(l) {
                        let mut next = cur[..i].to_vec();
                        next.extend_from_slice(r);
                        next.extend_from_slice(&cur[i + l.len()..]);
                        cur = next;
                        self.tick()?;
                        continue 'outer;
                    }
                }
            }
            return Ok(cur);
        }
    }

    fn reducible(&self, w: &[usize]) -> bool {
        self.rules.iter().any(|(l, _)| w.windows(l.len()).any(|s| s == l.as_slice()))
    }

    fn critical_pairs(&self, i: usize, j: usize) -> Vec<(Letters, Letters)> {
        let (l1, r1) = &self.rules[i];
        let (l2, r2) = &self.rules[j];
        let mut out = Vec::new();
        // suffix of l1 = prefix of l2
        for k in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - k..] == l2[..k] {
                let mut a = r1.clone();
                a.extend_from_slice(&l2[k..]);
                let mut b = l1[..l1.len() - k].to_vec();
                b.extend_from_slice(r2);
                out.push((a, b));
            }
        }
        // l2 inside l1
        if i != j && l2.len() <= l1.len() {
            for p in 0..=l1.len() - l2.len() {
                if l1[p..p + l2.len()] == l2[..] {
                    let mut b = l1[..p].to_vec();
                    b.extend_from_slice(r2);
                    b.extend_from_slice(&l1[p + l2.len()..]);
                    out.push((r1.clone(), b));
                }
            }
        }
        out
    }

    /// Adds the equation as an oriented rule if it does not already follow.
    fn add(&mut self, a: &[usize], b: &[usize], pending: &mut VecDeque<(Letters, Letters)>) -> std::result::Result<bool, OutOfBudget> {
        let a = self.reduce(a)?;
        let b = self.reduce(b)?;
        if a == b {
            return Ok(false);
        }
        let (l, r) = if shortlex_greater(&a, &b) { (a, b) } else { (b, a) };
        // interreduce: rules whose left side contains l are retired and re-queued
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for (ol, or) in std::mem::take(&mut self.rules) {
            if ol.windows(l.len()).any(|s| s == l.as_slice()) {
                pending.push_back((ol, or));
            } else {
                kept.push((ol, or));
            }
        }
        self.rules = kept;
        self.rules.push((l, r));
        let n = self.rules.len();
        for k in 0..n - 1 {
            let rhs = self.rules[k].1.clone();
            self.rules[k].1 = self.reduce(&rhs)?;
        }
        Ok(true)
    }
}

fn complete(p: &PresentedCategory, rw: &mut Rewriter) -> std::result::Result<bool, OutOfBudget> {
    let mut pending: VecDeque<(Letters, Letters)> = p.relations.iter().map(|(l, r)| (l.letters.clone(), r.letters.clone())).collect();
    loop {
        while let Some((a, b)) = pending.pop_front() {
            rw.add(&a, &b, &mut pending)?;
            if rw.rules.len() > MAX_RULES {
                return Ok(false);
            }
        }
        // all critical pairs of the current system
        let mut found = false;
        let n = rw.rules.len();
        'scan: for i in 0..n {
            for j in 0..n {
                for (a, b) in rw.critical_pairs(i, j) {
                    if rw.reduce(&a)? != rw.reduce(&b)? {
                        pending.push_back((a, b));
                        found = true;
                        break 'scan;
                    }
                }
            }
        }
        if !found {
            return Ok(true);
        }
    }
}

/// Completes the presentation and, if it converges to finitely many normal
/// forms within `budget` rewrite applications, returns the quotient category.
pub fn quotient_category(p: &PresentedCategory, budget: usize) -> QuotientResult {
    let mut rw = Rewriter { rules: Vec::new(), steps: 0, budget };
    let undecided = |rw: &Rewriter, reason: &str| QuotientResult {
        status: QuotientStatus::Undecided { reason: reason.into() },
        rules: rw.rules.len(),
        steps: rw.steps.min(budget),
    };
    match complete(p, &mut rw) {
        Err(OutOfBudget) => return undecided(&rw, "rewrite budget exhausted during completion"),
        Ok(false) => return undecided(&rw, "rule set grew past the completion limit"),
        Ok(true) => {}
    }
    // irreducible words grow by one letter at a time: prefixes of normal forms are normal
    let mut forms: Vec<Word> = Vec::new();
    let mut queue: VecDeque<Word> = (0..p.objects.len()).map(|x| Word { start: x, letters: Vec::new() }).collect();
    while let Some(w) = queue.pop_front() {
        let end = p.end(&w).expect("normal forms are composable");
        for (g, gen) in p.generators.iter().enumerate() {
            if gen.dom != end {
                continue;
            }
            if rw.tick().is_err() {
                return undecided(&rw, "rewrite budget exhausted while enumerating normal forms");
            }
            let mut letters = w.letters.clone();
            letters.push(g);
            if !rw.reducible(&letters) {
                queue.push_back(Word { start: w.start, letters });
            }
        }
        forms.push(w);
        if forms.len() > MAX_NORMAL_FORMS {
            return undecided(&rw, "too many normal forms");
        }
    }
    forms.sort_by(|a, b| (a.start, a.letters.len(), &a.letters).cmp(&(b.start, b.letters.len(), &b.letters)));
    let index: HashMap<&Word, MorId> = forms.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let morphisms: Vec<Morphism> = forms
        .iter()
        .map(|w| Morphism { name: p.render(w), dom: w.start, cod: p.end(w).expect("composable") })
        .collect();
    let identities: Vec<MorId> = (0..p.objects.len()).map(|x| index[&Word { start: x, letters: Vec::new() }]).collect();
    let mut by_dom: HashMap<ObjId, Vec<MorId>> = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        by_dom.entry(m.dom).or_default().push(i);
    }
    let mut compose = HashMap::new();
    for (f, mf) in morphisms.iter().enumerate() {
        for &g in by_dom.get(&mf.cod).map(Vec::as_slice).unwrap_or(&[]) {
            let mut letters = forms[f].letters.clone();
            letters.extend_from_slice(&forms[g].letters);
            let Ok(nf) = rw.reduce(&letters) else {
                return undecided(&rw, "rewrite budget exhausted while composing");
            };
            compose.insert((g, f), index[&Word { start: mf.dom, letters: nf }]);
        }
    }
    let mut generator_image = Vec::with_capacity(p.generators.len());
    for (g, gen) in p.generators.iter().enumerate() {
        let Ok(nf) = rw.reduce(&[g]) else {
            return undecided(&rw, "rewrite budget exhausted on generators");
        };
        generator_image.push(index[&Word { start: gen.dom, letters: nf }]);
    }
    // substitution check of every defining relation
    for (l, r) in &p.relations {
        let (Ok(a), Ok(b)) = (rw.reduce(&l.letters), rw.reduce(&r.letters)) else {
            return undecided(&rw, "rewrite budget exhausted re-checking relations");
        };
        assert_eq!(a, b, "completed system must identify the sides of {}", p.render(l));
    }
    let cat = FinCat::from_parts(p.objects.clone(), morphisms, identities, compose)
        .expect("a convergent system presents a category");
    QuotientResult {
        status: QuotientStatus::Finite { cat: Arc::new(cat), generator_image },
        rules: rw.rules.len(),
        steps: rw.steps,
    }
}

/// Images of a three-level diagram under a 2-functor out of the opposite of
/// the descent shape. Functors are contravariant in the face maps:
/// `d0, d1: A2 → A1`, `s0: A1 → A2`, `del0, del1, del2: A3 → A2`.
///
/// `sigma00: d0∘del0 ⇒ d0∘del1`, `sigma20: d0∘del2 ⇒ d1∘del0`,
/// `sigma21: d1∘del2 ⇒ d1∘del1`, `n0: id ⇒ d0∘s0`, `n1: id ⇒ d1∘s0`.
#[derive(Debug, Clone)]
pub struct CodescentParts {
    pub a1: Arc<FinCat>,
    pub a2: Arc<FinCat>,
    pub a3: Arc<FinCat>,
    pub d0: Fun,
    pub d1: Fun,
    pub s0: Fun,
    pub del0: Fun,
    pub del1: Fun,
    pub del2: Fun,
    pub sigma00: NatT,
    pub sigma20: NatT,
    pub sigma21: NatT,
    pub n0: NatT,
    pub n1: NatT,
}

#[derive(Debug, Clone)]
pub struct CodescentData {
    parts: CodescentParts,
    /// Notes for manual inspection attached by the builder.
    pub flags: Vec<String>,
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn make_codescent_data(parts: CodescentParts) -> Result<CodescentData> {
    let p = &parts;
    let arrow = |name: &str, f: &Fun, s: &Arc<FinCat>, t: &Arc<FinCat>| {
        if same(f.src(), s) && same(f.tgt(), t) {
            Ok(())
        } else {
            Err(CodescentError::BoundaryMismatch(format!("{name} has the wrong endpoints")))
        }
    };
    arrow("d0", &p.d0, &p.a2, &p.a1)?;
    arrow("d1", &p.d1, &p.a2, &p.a1)?;
    arrow("s0", &p.s0, &p.a1, &p.a2)?;
    arrow("del0", &p.del0, &p.a3, &p.a2)?;
    arrow("del1", &p.del1, &p.a3, &p.a2)?;
    arrow("del2", &p.del2, &p.a3, &p.a2)?;
    let cell = |name: &str, n: &NatT, s: Fun, t: Fun| {
        if n.src() == &s && n.tgt() == &t {
            Ok(())
        } else {
            Err(CodescentError::BoundaryMismatch(format!("{name} is not typed as required")))
        }
    };
    cell("sigma00", &p.sigma00, p.d0.after(&p.del0)?, p.d0.after(&p.del1)?)?;
    cell("sigma20", &p.sigma20, p.d0.after(&p.del2)?, p.d1.after(&p.del0)?)?;
    cell("sigma21", &p.sigma21, p.d1.after(&p.del2)?, p.d1.after(&p.del1)?)?;
    cell("n0", &p.n0, Fun::identity(&p.a1), p.d0.after(&p.s0)?)?;
    cell("n1", &p.n1, Fun::identity(&p.a1), p.d1.after(&p.s0)?)?;
    Ok(CodescentData { parts, flags: Vec::new() })
}

impl CodescentData {
    pub fn parts(&self) -> &CodescentParts {
        &self.parts
    }

    /// The lax codescent presentation; generators are the non-identity
    /// morphisms of `A1` followed by one `<w>` per object of `A2`.
    pub fn presentation(&self) -> PresentedCategory {
        let p = &self.parts;
        let a1 = &p.a1;
        let mut gen_of: HashMap<MorId, usize> = HashMap::new();
        let mut generators = Vec::new();
        for (i, m) in a1.morphisms().iter().enumerate() {
            if !a1.is_identity(i) {
                gen_of.insert(i, generators.len());
                generators.push(Generator { name: m.name.clone(), dom: m.dom, cod: m.cod });
            }
        }
        let bracket_base = generators.len();
        for w in 0..p.a2.num_objects() {
            generators.push(Generator {
                name: format!("<{}>", p.a2.object_name(w)),
                dom: p.d1.obj(w),
                cod: p.d0.obj(w),
            });
        }
        let bracket = |w: ObjId| bracket_base + w;
        let word = |m: MorId| -> Vec<usize> { gen_of.get(&m).map(|&g| vec![g]).unwrap_or_default() };
        let mut relations = Vec::new();
        let mut rel = |start: ObjId, l: Vec<usize>, r: Vec<usize>| {
            if l != r {
                relations.push((Word { start, letters: l }, Word { start, letters: r }));
            }
        };
        for (f, mf) in a1.morphisms().iter().enumerate() {
            if a1.is_identity(f) {
                continue;
            }
            for y in 0..a1.num_objects() {
                for &g in a1.hom(mf.cod, y) {
                    if a1.is_identity(g) {
                        continue;
                    }
                    let gf = a1.compose(g, f).expect("composable");
                    rel(mf.dom, vec![gen_of[&f], gen_of[&g]], word(gf));
                }
            }
        }
        for (u, mu) in p.a2.morphisms().iter().enumerate() {
            if p.a2.is_identity(u) {
                continue;
            }
            // d0(u)∘<w> = <w'>∘d1(u)
            let mut l = vec![bracket(mu.dom)];
            l.extend(word(p.d0.mor(u)));
            let mut r = word(p.d1.mor(u));
            r.push(bracket(mu.cod));
            rel(p.d1.obj(mu.dom), l, r);
        }
        for v in 0..p.a3.num_objects() {
            // sigma00∘<del0 v>∘sigma20∘<del2 v> = <del1 v>∘sigma21
            let mut l = vec![bracket(p.del2.obj(v))];
            l.extend(word(p.sigma20.component(v)));
            l.push(bracket(p.del0.obj(v)));
            l.extend(word(p.sigma00.component(v)));
            let mut r = word(p.sigma21.component(v));
            r.push(bracket(p.del1.obj(v)));
            rel(p.d1.obj(p.del2.obj(v)), l, r);
        }
        for x in 0..a1.num_objects() {
            // <s0 x>∘n1 = n0
            let mut l = word(p.n1.component(x));
            l.push(bracket(p.s0.obj(x)));
            rel(x, l, word(p.n0.component(x)));
        }
        PresentedCategory::new(a1.objects().to_vec(), generators, relations).expect("codescent presentation is well typed")
    }

    /// The diagram `hom(A−, X)` whose lax descent object should be `hom(Q, X)`.
    pub fn hom_diagram(&self, x: &Arc<FinCat>) -> Result<crate::deltadiag::DeltaDiagram> {
        let p = &self.parts;
        let h1 = hom_cat(&p.a1, x);
        let h2 = hom_cat(&p.a2, x);
        let h3 = hom_cat(&p.a3, x);
        let pre = |from: &FunctorCategory, to: &FunctorCategory, k: &Fun| {
            from.induced(to, |g| g.after(k), |n| whisker_right(n, k))
        };
        let cell = |to: &FunctorCategory, s: Fun, t: Fun, c: &NatT| h1.induced_nat(to, s, t, |q| whisker_left(q, c));
        let d0 = pre(&h1, &h2, &p.d0)?;
        let d1 = pre(&h1, &h2, &p.d1)?;
        let s0 = pre(&h2, &h1, &p.s0)?;
        let del0 = pre(&h2, &h3, &p.del0)?;
        let del1 = pre(&h2, &h3, &p.del1)?;
        let del2 = pre(&h2, &h3, &p.del2)?;
        let id1 = Fun::identity(&h1.cat);
        let sigma00 = cell(&h3, del0.after(&d0)?, del1.after(&d0)?, &p.sigma00)?;
        let sigma20 = cell(&h3, del2.after(&d0)?, del0.after(&d1)?, &p.sigma20)?;
        let sigma21 = cell(&h3, del2.after(&d1)?, del1.after(&d1)?, &p.sigma21)?;
        let n0 = cell(&h1, id1.clone(), s0.after(&d0)?, &p.n0)?;
        let n1 = cell(&h1, id1, s0.after(&d1)?, &p.n1)?;
        Ok(make_delta_diagram(DiagramParts {
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
        })?)
    }
}

pub fn lax_codescent(a: &CodescentData, budget: usize) -> QuotientResult {
    quotient_category(&a.presentation(), budget)
}

/// Per-probe outcome of the universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCheck {
    pub probe_objects: usize,
    pub hom_size: (usize, usize),
    pub descent_size: (usize, usize),
    pub isomorphic: bool,
}

/// For each probe `X`, compares `hom(Q, X)` with the lax descent object of
/// `hom(A−, X)` up to isomorphism.
pub fn verify_codescent_universal(a: &CodescentData, q: &Arc<FinCat>, probes: &[Arc<FinCat>]) -> Result<Vec<UniversalCheck>> {
    let mut out = Vec::with_capacity(probes.len());
    for x in probes {
        let hq = hom_cat(q, x);
        let ld = lax_descent(&a.hom_diagram(x)?);
        let lc = ld.carrier();
        out.push(UniversalCheck {
            probe_objects: x.num_objects(),
            hom_size: (hq.cat.num_objects(), hq.cat.num_morphisms()),
            descent_size: (lc.num_objects(), lc.num_morphisms()),
            isomorphic: iso_categories(&hq.cat, lc).is_some(),
        });
    }
    Ok(out)
}

/// Kleisli category of a monad on a finite category, after checking the
/// monad laws. Morphisms `x → y` are the morphisms `x → t y`.
pub fn kleisli(z: &Arc<FinCat>, t: &Fun, mu: &NatT, eta: &NatT) -> Result<FinCat> {
    let law = |s: &str| CodescentError::MonadLawViolation(s.into());
    if !same(t.src(), z) || !same(t.tgt(), z) {
        return Err(law("t is not an endofunctor"));
    }
    if mu.src() != &t.after(t)? || mu.tgt() != t {
        return Err(law("mu is not t∘t ⇒ t"));
    }
    if eta.src() != &Fun::identity(z) || eta.tgt() != t {
        return Err(law("eta is not id ⇒ t"));
    }
    for x in 0..z.num_objects() {
        let m = mu.component(x);
        let c = |g, f| z.compose(g, f).expect("typed");
        if c(m, t.mor(m)) != c(m, mu.component(t.obj(x))) {
            return Err(law(&format!("associativity fails at {}", z.object_name(x))));
        }
        if c(m, eta.component(t.obj(x))) != z.identity(t.obj(x)) {
            return Err(law(&format!("left unit fails at {}", z.object_name(x))));
        }
        if c(m, t.mor(eta.component(x))) != z.identity(t.obj(x)) {
            return Err(law(&format!("right unit fails at {}", z.object_name(x))));
        }
    }
    let n = z.num_objects();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for &f in z.hom(x, t.obj(y)) {
                index.insert((x, y, f), morphisms.len());
                morphisms.push((Morphism { name: format!("{}:{}~>{}", z.morphism_name(f), z.object_name(x), z.object_name(y)), dom: x, cod: y }, f));
            }
        }
    }
    let identities = (0..n).map(|x| index[&(x, x, eta.component(x))]).collect();
    let mut compose = HashMap::new();
    for (a, (ma, f)) in morphisms.iter().enumerate() {
        for (b, (mb, g)) in morphisms.iter().enumerate() {
            if ma.cod != mb.dom {
                continue;
            }
            // mu_w ∘ t(g) ∘ f
            let tg = t.mor(*g);
            let h = z.compose(mu.component(mb.cod), z.compose(tg, *f).expect("typed")).expect("typed");
            compose.insert((b, a), index[&(ma.dom, mb.cod, h)]);
        }
    }
    Ok(FinCat::from_parts(z.objects().to_vec(), morphisms.into_iter().map(|(m, _)| m).collect(), identities, compose)?)
}

/// The codescent diagram of a lax algebra `y` in the strict setting:
/// levels `TY`, `T²Y`, `T³Y`, faces `m_Y, T(a_y)`, degeneracy `T(η_Y)`,
/// `m_{TY}, T(m_Y), T²(a_y)`, and 2-cells `T(ȳ)` on `sigma21`, `T(ȳ₀)` on
/// `n1`, identities elsewhere.
pub fn build_ay_strict(u: &MonadUniverse, y: &LaxAlgebra) -> Result<CodescentData> {
    let yc = &y.carrier;
    let a1 = u.t_cat(yc)?;
    let a2 = u.t_cat(&a1)?;
    let a3 = u.t_cat(&a2)?;
    let m_y = u.mult(yc)?;
    let d0 = m_y.clone();
    let d1 = u.t_fun(&y.action)?;
    let s0 = u.t_fun(&u.unit(yc)?)?;
    let del0 = u.mult(&a1)?;
    let del1 = u.t_fun(&m_y)?;
    let del2 = u.t_fun(&d1)?;
    let sigma00 = NatT::identity(&d0.after(&del0)?);
    let sigma20 = NatT::identity(&d0.after(&del2)?);
    let sigma21 = u.t_nat(&y.assoc)?;
    let n0 = NatT::identity(&Fun::identity(&a1));
    let n1 = u.t_nat(&y.unit)?;
    let mut data = make_codescent_data(CodescentParts {
        a1,
        a2,
        a3,
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
    if !y.is_strict() {
        data.flags.push("sigma00 taken as the identity for a non-strict algebra".into());
    }
    Ok(data)
}

/// Lax codescent object of [`build_ay_strict`].
pub fn strictify(u: &MonadUniverse, y: &LaxAlgebra, budget: usize) -> Result<(CodescentData, QuotientResult)> {
    let a = build_ay_strict(u, y)?;
    let q = lax_codescent(&a, budget);
    Ok((a, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_orients_longer_first() {
        assert!(shortlex_greater(&[0, 0], &[1]));
        assert!(shortlex_greater(&[1, 0], &[0, 1]));
        assert!(!shortlex_greater(&[0], &[0]));
    }

    #[test]
    fn overlap_pairs_resolve() {
        // xy = yx and xx = 1 on one object: completion closes, normal forms y^k x^{0,1} are infinite
        let g = |n: &str| Generator { name: n.into(), dom: 0, cod: 0 };
        let w = |l: &[usize]| Word { start: 0, letters: l.to_vec() };
        let p = PresentedCategory::new(vec!["a".into()], vec![g("x"), g("y")], vec![(w(&[1, 0]), w(&[0, 1])), (w(&[0, 0]), w(&[]))]).unwrap();
        assert!(matches!(quotient_category(&p, 2_000).status, QuotientStatus::Undecided { .. }));
        // adding yy = 1 makes it the Klein four-group
        let p = PresentedCategory::new(
            vec!["a".into()],
            vec![g("x"), g("y")],
            vec![(w(&[1, 0]), w(&[0, 1])), (w(&[0, 0]), w(&[])), (w(&[1, 1]), w(&[]))],
        )
        .unwrap();
        let q = quotient_category(&p, 2_000);
        assert_eq!(q.finite().unwrap().num_morphisms(), 4);
    }
}
