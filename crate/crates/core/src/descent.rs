//! Strict lax descent objects and strict descent objects of a [`DeltaDiagram`].
//!
//! Objects are descent data `(f, fbar)` with `fbar: d1(f) → d0(f)` satisfying
//! the associativity and identity equations; morphisms are morphisms `m` of
//! `c1` with `d0(m)∘fbar = hbar∘d1(m)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::deltadiag::DeltaDiagram;
use crate::fincat::{FinCat, Fun, MorId, Morphism, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentDatum {
    /// Object of `c1`.
    pub f: ObjId,
    /// Morphism `d1(f) → d0(f)` of `c2`.
    pub fbar: MorId,
}

#[derive(Debug, Clone)]
pub struct DescentCategory {
    carrier: Arc<FinCat>,
    data: Vec<DescentDatum>,
    projection: Fun,
}

impl DescentCategory {
    pub fn carrier(&self) -> &Arc<FinCat> {
        &self.carrier
    }

    pub fn data(&self) -> &[DescentDatum] {
        &self.data
    }

    pub fn datum(&self, x: ObjId) -> DescentDatum {
        self.data[x]
    }

    pub fn object_of(&self, datum: DescentDatum) -> Option<ObjId> {
        self.data.binary_search(&datum).ok()
    }
}

/// The forgetful functor `(f, fbar) ↦ f`.
pub fn descent_projection(dc: &DescentCategory) -> Fun {
    dc.projection.clone()
}

/// All descent data of `diagram`, in order of `(f, fbar)` indices.
pub fn descent_data(diagram: &DeltaDiagram) -> Vec<DescentDatum> {
    let p = diagram.parts();
    let mut out = Vec::new();
    for f in 0..p.c1.num_objects() {
        for &fbar in p.c2.hom(p.d1.obj(f), p.d0.obj(f)) {
            if diagram.datum_equations(f, fbar).is_ok() {
                out.push(DescentDatum { f, fbar });
            }
        }
    }
    out
}

fn build(diagram: &DeltaDiagram, data: Vec<DescentDatum>) -> DescentCategory {
    let c1 = diagram.c1();
    let c2 = diagram.c2();
    let name = |d: &DescentDatum| format!("({}|{})", c1.object_name(d.f), c2.morphism_name(d.fbar));
    let objects: Vec<String> = data.iter().map(name).collect();
    let mut morphisms = Vec::new();
    let mut on_mor = Vec::new();
    let mut index = HashMap::new();
    for (i, a) in data.iter().enumerate() {
        for (j, b) in data.iter().enumerate() {
            for &m in c1.hom(a.f, b.f) {
                if diagram.compatible(m, a.fbar, b.fbar) {
                    index.insert((i, j, m), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}:{}->{}", c1.morphism_name(m), objects[i], objects[j]),
                        dom: i,
                        cod: j,
                    });
                    on_mor.push(m);
                }
            }
        }
    }
    let identities: Vec<MorId> = data.iter().enumerate().map(|(i, a)| index[&(i, i, c1.identity(a.f))]).collect();
    let mut compose = HashMap::new();
    for (u, mu) in morphisms.iter().enumerate() {
        for (v, mv) in morphisms.iter().enumerate() {
            if mu.cod == mv.dom {
                let vu = c1.compose(on_mor[v], on_mor[u]).expect("composable in c1");
                compose.insert((v, u), index[&(mu.dom, mv.cod, vu)]);
            }
        }
    }
    let carrier = Arc::new(FinCat::from_parts_trusted(objects, morphisms, identities, compose));
    let on_obj = data.iter().map(|d| d.f).collect();
    let projection = Fun::trusted(carrier.clone(), c1.clone(), on_obj, on_mor);
    DescentCategory { carrier, data, projection }
}

/// Strict lax descent object of `diagram`.
pub fn lax_descent(diagram: &DeltaDiagram) -> DescentCategory {
    build(diagram, descent_data(diagram))
}

/// Strict descent object: the full subcategory of [`lax_descent`] on data
/// with invertible `fbar`.
pub fn descent(diagram: &DeltaDiagram) -> DescentCategory {
    descent_with_inclusion(diagram).0
}

/// Strict descent object together with the lax one and the full inclusion.
pub fn descent_with_inclusion(diagram: &DeltaDiagram) -> (DescentCategory, DescentCategory, Fun) {
    let lax = lax_descent(diagram);
    let c2 = diagram.c2();
    let keep: Vec<ObjId> = (0..lax.data.len()).filter(|&x| c2.is_iso(lax.data[x].fbar)).collect();
    let (carrier, inclusion) = lax.carrier.full_subcategory(&keep);
    let data = keep.iter().map(|&x| lax.data[x]).collect();
    let projection = lax.projection.after(&inclusion).expect("inclusion lands in the lax carrier");
    (DescentCategory { carrier, data, projection }, lax, inclusion)
}
