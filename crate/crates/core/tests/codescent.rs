use std::sync::Arc;

use proptest::prelude::*;
use twocat::codescent::*;
use twocat::fincat::*;
use twocat::laxalg::*;

fn gen(name: &str, dom: usize, cod: usize) -> Generator {
    Generator { name: name.into(), dom, cod }
}

fn w(start: usize, letters: &[usize]) -> Word {
    Word { start, letters: letters.to_vec() }
}

#[test]
fn free_acyclic_category() {
    let p = PresentedCategory::new(vec!["a".into(), "b".into(), "c".into()], vec![gen("f", 0, 1), gen("g", 1, 2)], vec![]).unwrap();
    let q = quotient_category(&p, DEFAULT_BUDGET);
    let cat = q.finite().expect("finite");
    // three identities, f, g, g∘f
    assert_eq!(cat.num_morphisms(), 6);
}

#[test]
fn idempotent_loop() {
    let p = PresentedCategory::new(vec!["a".into()], vec![gen("e", 0, 0)], vec![(w(0, &[0, 0]), w(0, &[0]))]).unwrap();
    let cat = quotient_category(&p, DEFAULT_BUDGET).finite().cloned().expect("finite");
    assert_eq!(cat.num_morphisms(), 2);
}

#[test]
fn free_loop_is_undecided() {
    let p = PresentedCategory::new(vec!["a".into()], vec![gen("e", 0, 0)], vec![]).unwrap();
    assert!(matches!(quotient_category(&p, 500).status, QuotientStatus::Undecided { .. }));
}

#[test]
fn ill_typed_relation_rejected() {
    let r = PresentedCategory::new(vec!["a".into(), "b".into()], vec![gen("f", 0, 1)], vec![(w(0, &[0]), w(0, &[]))]);
    assert!(matches!(r, Err(CodescentError::Presentation(_))));
}

struct Monad {
    z: Arc<FinCat>,
    t: Fun,
    mu: NatT,
    eta: NatT,
}

fn identity_monad(z: Arc<FinCat>) -> Monad {
    let t = Fun::identity(&z);
    let n = NatT::identity(&t);
    Monad { z, t, mu: n.clone(), eta: n }
}

fn const_one() -> Monad {
    let z = Arc::new(FinCat::walking_arrow());
    let t = Fun::constant(&z, &z, 1);
    let eta = make_nat(Fun::identity(&z), t.clone(), vec![2, 1]).unwrap();
    Monad { mu: NatT::identity(&t), eta, t, z }
}

fn involution() -> Monad {
    let z = Arc::new(FinCat::one_object(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap());
    let t = Fun::identity(&z);
    let s = make_nat(t.clone(), t.clone(), vec![1]).unwrap();
    Monad { z, t, mu: s.clone(), eta: s }
}

/// Closure operator on the chain 0 ≤ 1 ≤ 2 sending 0, 1 to 1 and 2 to 2.
fn chain_closure() -> Monad {
    let z = Arc::new(FinCat::chain(3));
    let up = |a: usize, b: usize| z.hom(a, b)[0];
    let on_obj = vec![1, 1, 2];
    let on_mor = (0..z.num_morphisms())
        .map(|m| up(on_obj[z.dom(m)], on_obj[z.cod(m)]))
        .collect();
    let t = make_fun(z.clone(), z.clone(), on_obj, on_mor).unwrap();
    let mu = NatT::identity(&t);
    let eta = make_nat(Fun::identity(&z), t.clone(), vec![up(0, 1), up(1, 1), up(2, 2)]).unwrap();
    Monad { z, t, mu, eta }
}

fn strictified(m: &Monad) -> (CodescentData, Arc<FinCat>) {
    let u = identity_two_monad(vec![m.z.clone()]);
    let y = LaxAlgebra::from_monad(&u, m.z.clone(), &m.t, &m.mu, &m.eta).unwrap();
    check_lax_algebra(&u, &y).unwrap();
    let (a, q) = strictify(&u, &y, DEFAULT_BUDGET).unwrap();
    let cat = q.finite().cloned().unwrap_or_else(|| panic!("undecided: {:?}", q.status));
    (a, cat)
}

fn probes() -> Vec<Arc<FinCat>> {
    vec![Arc::new(FinCat::terminal()), Arc::new(FinCat::walking_arrow())]
}

#[test]
fn kleisli_shapes() {
    let m = const_one();
    let k = kleisli(&m.z, &m.t, &m.mu, &m.eta).unwrap();
    assert_eq!(k.num_objects(), 2);
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(k.hom(x, y).len(), 1);
        }
    }
    let id = identity_monad(Arc::new(FinCat::chain(3)));
    let k = Arc::new(kleisli(&id.z, &id.t, &id.mu, &id.eta).unwrap());
    assert!(iso_categories(&k, &id.z).is_some());
    let one = identity_monad(Arc::new(FinCat::terminal()));
    assert_eq!(kleisli(&one.z, &one.t, &one.mu, &one.eta).unwrap().num_morphisms(), 1);
}

#[test]
fn kleisli_rejects_broken_unit() {
    let m = involution();
    let bad = kleisli(&m.z, &m.t, &NatT::identity(&m.t), &m.eta);
    assert!(matches!(bad, Err(CodescentError::MonadLawViolation(_))));
}

#[test]
fn strictification_is_kleisli() {
    for m in [identity_monad(Arc::new(FinCat::walking_arrow())), const_one(), involution(), chain_closure()] {
        let (a, q) = strictified(&m);
        let k = Arc::new(kleisli(&m.z, &m.t, &m.mu, &m.eta).unwrap());
        assert!(iso_categories(&q, &k).is_some(), "{q:?} vs {k:?}");
        let checks = verify_codescent_universal(&a, &q, &probes()).unwrap();
        assert!(checks.iter().all(|c| c.isomorphic), "{checks:?}");
    }
}

#[test]
fn wrong_candidate_fails_universality() {
    let m = const_one();
    let (a, q) = strictified(&m);
    let a1 = a.parts().a1.clone();
    assert!(iso_categories(&q, &a1).is_none());
    let checks = verify_codescent_universal(&a, &a1, &probes()).unwrap();
    assert!(checks.iter().any(|c| !c.isomorphic));
}

#[test]
fn strict_algebras_strictify_to_their_carrier() {
    let z = Arc::new(FinCat::chain(3));
    let u = identity_two_monad(vec![z.clone()]);
    let y = LaxAlgebra::strict(&u, z.clone(), Fun::identity(&z)).unwrap();
    let (a, q) = strictify(&u, &y, DEFAULT_BUDGET).unwrap();
    assert!(a.flags.is_empty());
    let q = q.finite().cloned().unwrap();
    assert!(iso_categories(&q, &z).is_some());
    // a free orbit under Z/2 acting strictly
    let disc = Arc::new(FinCat::discrete(&["p", "q"]));
    let u = monoid_two_monad(&Monoid::cyclic(2), vec![disc.clone()], 3);
    let tz = u.t_cat(&disc).unwrap();
    let act = make_fun(tz, disc.clone(), vec![0, 1, 1, 0], vec![0, 1, 1, 0]).unwrap();
    let y = LaxAlgebra::strict(&u, disc.clone(), act).unwrap();
    let (a, q) = strictify(&u, &y, DEFAULT_BUDGET).unwrap();
    let q = q.finite().cloned().unwrap();
    // objects are those of TY; each is uniquely isomorphic to one other, so Q ≃ disc
    assert_eq!(q.num_objects(), 4);
    assert_eq!(q.num_morphisms(), 8);
    assert!((0..q.num_morphisms()).all(|m| q.is_iso(m)));
    // probe 2 would enumerate functors out of T³Y, which has 16 objects
    let one = vec![Arc::new(FinCat::terminal())];
    assert!(verify_codescent_universal(&a, &q, &one).unwrap()[0].isomorphic);
}

#[test]
fn terminal_strictifies_to_terminal() {
    let (a, q) = strictified(&identity_monad(Arc::new(FinCat::terminal())));
    assert_eq!((q.num_objects(), q.num_morphisms()), (1, 1));
    assert!(verify_codescent_universal(&a, &q, &probes()).unwrap().iter().all(|c| c.isomorphic));
}

#[test]
fn non_strict_algebra_is_flagged() {
    let m = const_one();
    let u = identity_two_monad(vec![m.z.clone()]);
    let y = LaxAlgebra::from_monad(&u, m.z.clone(), &m.t, &m.mu, &m.eta).unwrap();
    assert_eq!(build_ay_strict(&u, &y).unwrap().flags.len(), 1);
}

fn arb_relations() -> impl Strategy<Value = Vec<(Vec<usize>, Vec<usize>)>> {
    // words over two loops on one object
    let word = prop::collection::vec(0usize..2, 0..4);
    prop::collection::vec((word.clone(), word), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_quotients_satisfy_their_relations(rels in arb_relations()) {
        let relations: Vec<(Word, Word)> = rels.iter().map(|(l, r)| (w(0, l), w(0, r))).collect();
        let p = PresentedCategory::new(vec!["a".into()], vec![gen("x", 0, 0), gen("y", 0, 0)], relations).unwrap();
        if let QuotientStatus::Finite { cat, generator_image } = quotient_category(&p, 5_000).status {
            let eval = |ws: &[usize]| ws.iter().fold(cat.identity(0), |acc, &g| cat.compose(generator_image[g], acc).unwrap());
            for (l, r) in &rels {
                prop_assert_eq!(eval(l), eval(r));
            }
        }
    }

    #[test]
    fn kleisli_is_a_category_for_closure_operators(top in 0usize..3) {
        // t sends every object to max(x, top) on the chain of length 3
        let z = Arc::new(FinCat::chain(3));
        let on_obj: Vec<usize> = (0..3).map(|x| x.max(top)).collect();
        let up = |a: usize, b: usize| z.hom(a, b)[0];
        let on_mor = (0..z.num_morphisms()).map(|m| up(on_obj[z.dom(m)], on_obj[z.cod(m)])).collect();
        let t = make_fun(z.clone(), z.clone(), on_obj.clone(), on_mor).unwrap();
        let eta = make_nat(Fun::identity(&z), t.clone(), (0..3).map(|x| up(x, on_obj[x])).collect()).unwrap();
        let k = kleisli(&z, &t, &NatT::identity(&t), &eta);
        prop_assert!(k.is_ok());
    }
}
