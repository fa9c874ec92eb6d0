//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use twocat::codescent::{kleisli, strictify, verify_codescent_universal, DEFAULT_BUDGET};
use twocat::deltadiag::{check_dot_extension, make_delta_diagram, make_dot_extension, DiagramParts, DotExtension};
use twocat::descent::lax_descent;
use twocat::fincat::{iso_categories, make_nat, FinCat, NatT};
use twocat::freegen::*;
use twocat::laxalg::{check_pseudomonad, monoid_two_monad, verify_prop_descent, Monoid};
use twocat_cli::{load, Workspace};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn workspace(name: &str) -> Workspace {
    load(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let took = t.elapsed();
    if took > limit {
        o.pass = false;
        o.detail.push_str(&format!("; over time limit {limit:?}"));
    }
    o.detail.push_str(&format!(" ({:.2}s)", took.as_secs_f64()));
    o
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (file, y) in [("identity_on_two.json", "y"), ("const_one.json", "y"), ("z2_action.json", "swap")] {
        let o = timed(Duration::from_secs(10), || {
            let ws = workspace(file);
            let a = &ws.algebras[y];
            let r = verify_prop_descent(&ws.universes[&a.universe], &a.algebra, &a.algebra).expect("report");
            let ok = r.lax_iso && r.pseudo_iso && r.data_bijection;
            Outcome { pass: ok, detail: format!("{file}: lax {}/{} pseudo {}/{}", r.lax_objects, r.lax_morphisms, r.pseudo_objects, r.pseudo_morphisms) }
        });
        pass &= o.pass;
        notes.push(o.detail);
    }
    Outcome { pass, detail: notes.join(", ") }
}

/// One node, loops x and y, generators al: x ⇒ y and nu: 1 ⇒ x.
fn two_generator_computad() -> Computad {
    let g = Graph::new(&["a"], &[("x", "a", "a"), ("y", "a", "a")]).unwrap();
    let p = |es: &[&str]| g.path("a", es).unwrap();
    let cells = vec![
        TwoCell { name: "al".into(), src: p(&["x"]), tgt: p(&["y"]) },
        TwoCell { name: "nu".into(), src: p(&[]), tgt: p(&["x"]) },
    ];
    validate_computad(g, cells).unwrap()
}

fn all_words(c: &Computad, source: &Path, max_steps: usize) -> Vec<PastingWord> {
    fn go(c: &Computad, source: &Path, len: usize, left: usize, slots: &mut Vec<(usize, usize)>, out: &mut Vec<PastingWord>) {
        out.push(PastingWord::from_slots(c, source.clone(), slots).unwrap());
        if left == 0 {
            return;
        }
        for pos in 0..=len {
            for cell in 0..c.cells().len() {
                slots.push((pos, cell));
                if let Ok(w) = PastingWord::from_slots(c, source.clone(), slots) {
                    go(c, source, w.target().len(), left - 1, slots, out);
                }
                slots.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(c, source, source.len(), max_steps, &mut Vec::new(), &mut out);
    out
}

/// Closure of a slot sequence under swapping adjacent steps that act on
/// disjoint segments.
fn closure(c: &Computad, slots: &[(usize, usize)]) -> HashSet<Vec<(usize, usize)>> {
    let size = |k: usize| (c.cells()[k].src.len(), c.cells()[k].tgt.len());
    let mut seen = HashSet::from([slots.to_vec()]);
    let mut queue = VecDeque::from([slots.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let ((p1, c1), (p2, c2)) = (w[i], w[i + 1]);
            let ((s1, t1), (s2, t2)) = (size(c1), size(c2));
            let mut swaps = Vec::new();
            if p2 + s2 <= p1 {
                swaps.push([(p2, c2), (p1 + t2 - s2, c1)]);
            }
            if p2 >= p1 + t1 {
                swaps.push([(p2 + s1 - t1, c2), (p1, c1)]);
            }
            for s in swaps {
                let mut v = w.clone();
                v[i] = s[0];
                v[i + 1] = s[1];
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(30), || {
        let c = two_generator_computad();
        let g = c.base();
        let sources: Vec<Path> =
            [&[][..], &["x"], &["y"], &["x", "y"], &["y", "x"]].iter().map(|es| g.path("a", es).unwrap()).collect();
        let (mut pairs, mut disagreements) = (0usize, 0usize);
        for src in &sources {
            let mut by_target: BTreeMap<Vec<usize>, Vec<PastingWord>> = BTreeMap::new();
            for w in all_words(&c, src, 4) {
                by_target.entry(w.target().edges.clone()).or_default().push(w);
            }
            for words in by_target.values() {
                let mut class: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
                for w in words {
                    if !class.contains_key(&w.slots()) {
                        let id = class.len();
                        for s in closure(&c, &w.slots()) {
                            class.insert(s, id);
                        }
                    }
                }
                for a in words {
                    for b in words {
                        pairs += 1;
                        let oracle = class[&a.slots()] == class[&b.slots()];
                        if two_cells_equal(&c, a, b) != oracle {
                            disagreements += 1;
                        }
                    }
                }
            }
        }
        Outcome { pass: disagreements == 0 && pairs > 0, detail: format!("{pairs} pairs, {disagreements} disagreements") }
    })
}

/// Every component swapped for every other morphism of the target category:
/// the well-typed mutants, and how many were ill-typed (rejected by `make_nat`).
fn mutations(n: &NatT) -> (Vec<NatT>, usize) {
    let (src, tgt) = (n.src().clone(), n.tgt().clone());
    let d = src.tgt().clone();
    let (mut typed, mut untyped) = (Vec::new(), 0);
    for x in 0..n.components().len() {
        for m in 0..d.num_morphisms() {
            if m == n.component(x) {
                continue;
            }
            let mut comps = n.components().to_vec();
            comps[x] = m;
            match make_nat(src.clone(), tgt.clone(), comps) {
                Ok(bad) => typed.push(bad),
                Err(_) => untyped += 1,
            }
        }
    }
    (typed, untyped)
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(30), || {
        let ws = workspace("identity_on_two.json");
        let diagram = ws.diagrams["t_yy"].clone();
        let data = lax_descent(&diagram).data().to_vec();
        let mut accepted = 0;
        for d in &data {
            let ext = DotExtension::from_datum(diagram.clone(), d.f, d.fbar).expect("datum extends");
            if check_dot_extension(&ext).is_ok() {
                accepted += 1;
            }
        }
        let (mut total, mut rejected) = (0usize, 0usize);
        let p = diagram.parts().clone();
        for which in ["n0", "n1"] {
            let target = if which == "n0" { &p.n0 } else { &p.n1 };
            let (typed, untyped) = mutations(target);
            total += untyped;
            rejected += untyped;
            for bad in typed {
                total += 1;
                let mut q: DiagramParts = p.clone();
                if which == "n0" {
                    q.n0 = bad;
                } else {
                    q.n1 = bad;
                }
                let ok = make_delta_diagram(q)
                    .ok()
                    .and_then(|dg| data.first().and_then(|d| DotExtension::from_datum(dg, d.f, d.fbar).ok()))
                    .is_some_and(|ext| check_dot_extension(&ext).is_ok());
                if !ok {
                    rejected += 1;
                }
            }
        }
        for d in &data {
            let ext = DotExtension::from_datum(diagram.clone(), d.f, d.fbar).unwrap();
            let (typed, untyped) = mutations(ext.theta());
            total += untyped;
            rejected += untyped;
            for bad in typed {
                total += 1;
                let ok = make_dot_extension(diagram.clone(), ext.c0().clone(), ext.d().clone(), bad)
                    .is_ok_and(|e| check_dot_extension(&e).is_ok());
                if !ok {
                    rejected += 1;
                }
            }
        }
        let pass = !data.is_empty() && accepted == data.len() && total >= 20 && rejected == total;
        Outcome {
            pass,
            detail: format!("{accepted}/{} data accepted, {rejected}/{total} mutations rejected", data.len()),
        }
    })
}

fn associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

fn unit_of(t: &[Vec<usize>]) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|a| t[e][a] == a && t[a][e] == a))
}

fn tables(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    (0..n.pow((n * n) as u32)).map(move |mut code| {
        let mut t = vec![vec![0; n]; n];
        for row in t.iter_mut() {
            for v in row.iter_mut() {
                *v = code % n;
                code /= n;
            }
        }
        t
    })
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(60), || {
        let one = Arc::new(FinCat::terminal());
        let (mut valid, mut valid_pass, mut broken, mut broken_fail) = (0, 0, 0, 0);
        for n in 1..=3 {
            let names: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
            for t in tables(n) {
                let Some(e) = unit_of(&t) else { continue };
                if !associative(&t) {
                    continue;
                }
                valid += 1;
                let m = Monoid::new(&names, t.clone(), e).expect("valid monoid");
                if check_pseudomonad(&monoid_two_monad(&m, vec![one.clone()], 3)).is_ok() {
                    valid_pass += 1;
                }
                for a in 0..n {
                    for b in 0..n {
                        for v in 0..n {
                            let mut bad = t.clone();
                            bad[a][b] = v;
                            if associative(&bad) {
                                continue;
                            }
                            broken += 1;
                            let m = Monoid::from_table_unchecked(&names, bad, e);
                            if check_pseudomonad(&monoid_two_monad(&m, vec![one.clone()], 3)).is_err() {
                                broken_fail += 1;
                            }
                        }
                    }
                }
            }
        }
        Outcome {
            pass: valid > 0 && valid == valid_pass && broken > 0 && broken == broken_fail,
            detail: format!("{valid_pass}/{valid} monoids pass, {broken_fail}/{broken} non-associative mutations fail"),
        }
    })
}

fn criterion_5() -> Outcome {
    let ws = workspace("monads.json");
    let probes = vec![Arc::new(FinCat::terminal()), Arc::new(FinCat::walking_arrow())];
    let mut notes = Vec::new();
    let mut pass = true;
    let mut count = 0;
    for (name, y) in &ws.algebras {
        let Some((t, mu, eta)) = &y.monad else { continue };
        if y.algebra.carrier.num_objects() > 3 {
            continue;
        }
        count += 1;
        let o = timed(Duration::from_secs(30), || {
            let u = &ws.universes[&y.universe];
            let (a, q) = strictify(u, &y.algebra, DEFAULT_BUDGET).expect("strictify");
            let Some(cat) = q.finite().cloned() else {
                return Outcome { pass: false, detail: format!("{name}: undecided") };
            };
            let k = Arc::new(kleisli(&y.algebra.carrier, t, mu, eta).expect("kleisli"));
            let iso = iso_categories(&cat, &k).is_some();
            let universal = verify_codescent_universal(&a, &cat, &probes).expect("probes").iter().all(|c| c.isomorphic);
            Outcome { pass: iso && universal, detail: format!("{name}: iso {iso}, universal {universal}") }
        });
        pass &= o.pass;
        notes.push(o.detail);
    }
    Outcome { pass: pass && count >= 3, detail: notes.join(", ") }
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(5), || {
        let ws = workspace("identity_on_two.json");
        let c = builtin_computad(Builtin::DeltaDotLax);
        let path = |n: &str| ws.paths[n].path.clone();
        let (d, via0, via1) = (path("d"), path("s0_d0_d"), path("s0_d1_d"));
        let q = |f: &Path, g: &Path| preorder_leq(&c, f, g, DEFAULT_LEQ_BUDGET).expect("well-typed query");
        let forward = q(&d, &via0).is_yes() && q(&d, &via1).is_yes();
        let backward = [q(&via0, &d), q(&via1, &d)].iter().all(|a| matches!(a, LeqAnswer::NoWithinBudget));
        Outcome { pass: forward && backward, detail: format!("forward certified {forward}, reversed undecided {backward}") }
    })
}

fn invocations(ws: &Workspace) -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = vec![s(&["validate"])];
    for u in ws.universes.keys() {
        out.push(s(&["check-pseudomonad", u]));
    }
    for (y, a) in &ws.algebras {
        out.push(s(&["check-algebra", y]));
        out.push(s(&["strictify", y]));
        out.push(s(&["verify-codescent", y, "--probes", "one"]));
        if a.monad.is_some() {
            out.push(s(&["kleisli", y]));
        }
        for (z, b) in &ws.algebras {
            if a.universe == b.universe {
                out.push(s(&["hom", y, z]));
                out.push(s(&["verify-prop-descent", y, z]));
                out.push(s(&["build-tzy", y, z]));
            }
        }
    }
    for m in ws.morphisms.keys() {
        out.push(s(&["check-morphism", m]));
    }
    for d in ws.diagrams.keys() {
        out.push(s(&["descent", d]));
        out.push(s(&["lax-descent", d]));
    }
    for w in ws.words.keys() {
        out.push(s(&["normalize-2cell", w]));
    }
    for p in ws.paths.keys() {
        for q in ws.paths.keys() {
            out.push(s(&["preorder-leq", p, q]));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    timed(Duration::from_secs(600), || {
        let bin = env!("CARGO_BIN_EXE_twocat");
        let (mut runs, mut differ) = (0, Vec::new());
        for file in ["identity_on_two.json", "const_one.json", "z2_action.json", "monads.json"] {
            let ws = workspace(file);
            let path = fixture(file);
            for args in invocations(&ws) {
                let once = || Command::new(bin).args(&args).arg("--input").arg(&path).output().expect("spawn");
                let (a, b) = (once(), once());
                runs += 1;
                if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
                    differ.push(format!("{file}: {}", args.join(" ")));
                }
            }
        }
        Outcome { pass: differ.is_empty(), detail: format!("{runs} invocations run twice, differing: {differ:?}") }
    })
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("descent theorem on three fixtures", criterion_1),
        ("interchange word problem against closure oracle", criterion_2),
        ("dot-extension validator and perturbations", criterion_3),
        ("pseudomonad coherence on small monoids", criterion_4),
        ("strictification matches Kleisli", criterion_5),
        ("locally preordered homs of the lax dot computad", criterion_6),
        ("deterministic reports", criterion_7),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} {}: {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
