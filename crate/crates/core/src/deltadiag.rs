//! Strict 2-functors out of the descent computad, valued in finite categories.
//!
//! A [`DeltaDiagram`] is the image of the generators of the `DeltaLax`
//! computad: three categories, six functors and five transformations. A
//! [`DotExtension`] adds the image of node 0, of `d` and of `theta`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{FinCat, FinCatError, Fun, MorId, NatT, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("boundary mismatch at generator {generator}: {detail}")]
    BoundaryMismatch { generator: &'static str, detail: String },
    #[error(transparent)]
    Cat(#[from] FinCatError),
}

pub type Result<T> = std::result::Result<T, DiagramError>;

/// Unvalidated images of the generators.
#[derive(Debug, Clone)]
pub struct DiagramParts {
    pub c1: Arc<FinCat>,
    pub c2: Arc<FinCat>,
    pub c3: Arc<FinCat>,
    pub d0: Fun,
    pub d1: Fun,
    pub s0: Fun,
    pub del0: Fun,
    pub del1: Fun,
    pub del2: Fun,
    /// `del0∘d0 ⇒ del1∘d0`
    pub sigma00: NatT,
    /// `del2∘d0 ⇒ del0∘d1`
    pub sigma20: NatT,
    /// `del2∘d1 ⇒ del1∘d1`
    pub sigma21: NatT,
    /// `id ⇒ s0∘d0`
    pub n0: NatT,
    /// `id ⇒ s0∘d1`
    pub n1: NatT,
}

/// A validated diagram; see [`DiagramParts`] for the typing of each field.
#[derive(Debug, Clone)]
pub struct DeltaDiagram {
    parts: DiagramParts,
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_fun(generator: &'static str, f: &Fun, src: &Arc<FinCat>, tgt: &Arc<FinCat>) -> Result<()> {
    if same(f.src(), src) && same(f.tgt(), tgt) {
        Ok(())
    } else {
        Err(DiagramError::BoundaryMismatch { generator, detail: "functor between the wrong categories".into() })
    }
}

fn check_nat(generator: &'static str, n: &NatT, src: &Fun, tgt: &Fun) -> Result<()> {
    if n.src() != src {
        return Err(DiagramError::BoundaryMismatch { generator, detail: "source functor differs".into() });
    }
    if n.tgt() != tgt {
        return Err(DiagramError::BoundaryMismatch { generator, detail: "target functor differs".into() });
    }
    Ok(())
}

pub fn make_delta_diagram(parts: DiagramParts) -> Result<DeltaDiagram> {
    let p = &parts;
    check_fun("d0", &p.d0, &p.c1, &p.c2)?;
    check_fun("d1", &p.d1, &p.c1, &p.c2)?;
    check_fun("s0", &p.s0, &p.c2, &p.c1)?;
    check_fun("del0", &p.del0, &p.c2, &p.c3)?;
    check_fun("del1", &p.del1, &p.c2, &p.c3)?;
    check_fun("del2", &p.del2, &p.c2, &p.c3)?;
    let id1 = Fun::identity(&p.c1);
    check_nat("sigma00", &p.sigma00, &p.del0.after(&p.d0)?, &p.del1.after(&p.d0)?)?;
    check_nat("sigma20", &p.sigma20, &p.del2.after(&p.d0)?, &p.del0.after(&p.d1)?)?;
    check_nat("sigma21", &p.sigma21, &p.del2.after(&p.d1)?, &p.del1.after(&p.d1)?)?;
    check_nat("n0", &p.n0, &id1, &p.s0.after(&p.d0)?)?;
    check_nat("n1", &p.n1, &id1, &p.s0.after(&p.d1)?)?;
    Ok(DeltaDiagram { parts })
}

/// Which of the two descent equations failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Associativity,
    Identity,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Associativity => "associativity",
            Equation::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{equation} equation fails at {object}")]
pub struct EquationFailure {
    pub equation: Equation,
    pub object: String,
}

impl DeltaDiagram {
    pub fn parts(&self) -> &DiagramParts {
        &self.parts
    }

    pub fn c1(&self) -> &Arc<FinCat> {
        &self.parts.c1
    }

    pub fn c2(&self) -> &Arc<FinCat> {
        &self.parts.c2
    }

    pub fn c3(&self) -> &Arc<FinCat> {
        &self.parts.c3
    }

    /// Checks both descent equations for an object `f` of `c1` and a morphism
    /// `fbar: d1(f) → d0(f)` of `c2`.
    pub fn datum_equations(&self, f: ObjId, fbar: MorId) -> std::result::Result<(), Equation> {
        let p = &self.parts;
        let c3 = &p.c3;
        let lhs = c3.compose_path(&[
            p.del2.mor(fbar),
            p.sigma20.component(f),
            p.del0.mor(fbar),
            p.sigma00.component(f),
        ]);
        let rhs = c3.compose_path(&[p.sigma21.component(f), p.del1.mor(fbar)]);
        if lhs.is_none() || lhs != rhs {
            return Err(Equation::Associativity);
        }
        let lhs = p.c1.compose(p.s0.mor(fbar), p.n1.component(f));
        if lhs != Some(p.n0.component(f)) {
            return Err(Equation::Identity);
        }
        Ok(())
    }

    /// Whether a morphism `m: f → h` of `c1` is compatible with `fbar` and `hbar`.
    pub fn compatible(&self, m: MorId, fbar: MorId, hbar: MorId) -> bool {
        let p = &self.parts;
        let c2 = &p.c2;
        let lhs = c2.compose(p.d0.mor(m), fbar);
        lhs.is_some() && lhs == c2.compose(hbar, p.d1.mor(m))
    }
}

/// Extension of a diagram to node 0: a category `c0`, a functor `d: c0 → c1`
/// and `theta: d1∘d ⇒ d0∘d`.
#[derive(Debug, Clone)]
pub struct DotExtension {
    base: DeltaDiagram,
    c0: Arc<FinCat>,
    d: Fun,
    theta: NatT,
}

pub fn make_dot_extension(base: DeltaDiagram, c0: Arc<FinCat>, d: Fun, theta: NatT) -> Result<DotExtension> {
    check_fun("d", &d, &c0, base.c1())?;
    let p = base.parts();
    check_nat("theta", &theta, &p.d1.after(&d)?, &p.d0.after(&d)?)?;
    Ok(DotExtension { base, c0, d, theta })
}

impl DotExtension {
    /// Extension by a single object of `c1` and a morphism `fbar: d1(f) → d0(f)`,
    /// with node 0 sent to the terminal category.
    pub fn from_datum(base: DeltaDiagram, f: ObjId, fbar: MorId) -> Result<DotExtension> {
        let one = Arc::new(FinCat::terminal());
        let p = base.parts();
        let d = Fun::constant(&one, &p.c1, f);
        let theta = crate::fincat::make_nat(p.d1.after(&d)?, p.d0.after(&d)?, vec![fbar])?;
        make_dot_extension(base, one, d, theta)
    }

    pub fn base(&self) -> &DeltaDiagram {
        &self.base
    }

    pub fn c0(&self) -> &Arc<FinCat> {
        &self.c0
    }

    pub fn d(&self) -> &Fun {
        &self.d
    }

    pub fn theta(&self) -> &NatT {
        &self.theta
    }
}

/// Evaluates the associativity and identity pastings at every object of `c0`.
pub fn check_dot_extension(ext: &DotExtension) -> std::result::Result<(), EquationFailure> {
    for x in 0..ext.c0.num_objects() {
        if let Err(equation) = ext.base.datum_equations(ext.d.obj(x), ext.theta.component(x)) {
            return Err(EquationFailure { equation, object: ext.c0.object_name(x).to_string() });
        }
    }
    Ok(())
}

/// Whether the extension comes from a diagram on the invertible computad.
pub fn theta_invertible(ext: &DotExtension) -> bool {
    ext.theta.is_invertible()
}
