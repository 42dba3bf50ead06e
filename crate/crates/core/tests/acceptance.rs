//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use pspan::action::GroupAction;
use pspan::cardinality::{matrix_by_components, matrix_of_span, odd_involution_pairing};
use pspan::determinant::{classical_det, det_cardinality, det_fiber_at, fiber_table, leibniz_scalar, top_degree};
use pspan::document::Document;
use pspan::exterior::{exterior_power_components, ExteriorPower, DEFAULT_BUDGET};
use pspan::group::FiniteGroup;
use pspan::groupoid::{Groupoid, ParityGroupoid};
use pspan::random::Generator;
use pspan::rational::{self, frac, int};
use pspan::scalar::SignedGroupoid;
use pspan::span::PSpan;
use pspan::{Permutation, Sign};

use common::{composable_pair, det_corpus, fixture};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let doc = Document::load(fixture("split_idempotent.json")).map_err(|e| e.to_string())?;
    let sp = doc.span("A").map_err(|e| e.to_string())?;
    let m = matrix_of_span(sp);
    ensure(m.entries_text() == "[[1,1],[1,2]]", || format!("matrix {}", m.entries_text()))?;
    let classical = classical_det(&m).map_err(|e| e.to_string())?;
    ensure(classical == int(1), || format!("classical det {classical}"))?;
    let det = det_cardinality(sp, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(det == int(1), || format!("det_cardinality {det}"))?;
    let l2 = ExteriorPower::build(sp.left(), 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?.groupoid;
    let comps = l2.pi0();
    let orientable = comps.iter().filter(|c| c.orientable).count();
    ensure(l2.object_count() == 4 && comps.len() == 3 && orientable == 1, || {
        format!("Λ²X has {} objects, {} components, {} orientable", l2.object_count(), comps.len(), orientable)
    })?;
    let table = fiber_table(sp, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let cell = table.cell("(x,y)", "(x,y)").ok_or("missing cell (x,y),(x,y)")?;
    let mut listed: Vec<(String, String, Sign)> =
        cell.elements.iter().map(|e| (e.element.clone(), e.permutation.cycle_word(), e.sign)).collect();
    listed.sort();
    let expected = vec![
        ("s·p".to_string(), "(1 2)".to_string(), Sign::Minus),
        ("x·e".to_string(), "id".to_string(), Sign::Plus),
        ("x·y".to_string(), "id".to_string(), Sign::Plus),
    ];
    ensure(cell.material && listed == expected, || format!("material cell lists {listed:?}"))?;
    let immaterial: Vec<_> = table.cells.iter().filter(|c| !c.material).collect();
    ensure(immaterial.len() == 8, || format!("{} immaterial cells", immaterial.len()))?;
    for c in &immaterial {
        ensure(c.net == rational::zero(), || format!("immaterial cell ({}, {}) nets {}", c.row, c.col, c.net))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("matrix [[1,1],[1,2]], det 1, 9 cells, {elapsed:.2?}"))
}

fn functoriality() -> Outcome {
    let start = Instant::now();
    let trials = 200;
    let mut odd_feet = 0;
    for seed in 0..trials {
        let (a, b) = composable_pair(seed);
        if !a.right().is_orientable() {
            odd_feet += 1;
        }
        let c = a.compose(&b).map_err(|e| e.to_string())?;
        ensure(c.validate().is_valid(), || format!("seed {seed}: composite invalid: {}", c.validate()))?;
        let composite = matrix_of_span(&c);
        let product = &matrix_by_components(&a) * &matrix_by_components(&b);
        ensure(composite == product, || format!("seed {seed}: composite {composite} vs product {product}"))?;
    }
    ensure(odd_feet > 0, || "no pair had a middle foot with odd automorphisms".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{trials} pairs, {odd_feet} with odd middle feet, {elapsed:.2?}"))
}

fn determinant_identity(corpus: &[PSpan]) -> Outcome {
    let start = Instant::now();
    let mut degrees = [0usize; 4];
    for (idx, sp) in corpus.iter().enumerate() {
        let n = top_degree(sp.left());
        ensure((1..=3).contains(&n), || format!("span {idx} has top degree {n}"))?;
        degrees[n] += 1;
        let classical = classical_det(&matrix_by_components(sp)).map_err(|e| format!("span {idx}: {e}"))?;
        let det = det_cardinality(sp, DEFAULT_BUDGET).map_err(|e| format!("span {idx}: {e}"))?;
        ensure(det == classical, || format!("span {idx}: det_cardinality {det} vs classical {classical}"))?;
    }
    ensure(corpus.len() >= 100, || format!("corpus has only {} spans", corpus.len()))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} spans (n=1: {}, n=2: {}, n=3: {}), {elapsed:.2?}",
        corpus.len(),
        degrees[1],
        degrees[2],
        degrees[3]
    ))
}

fn objective_leibniz(corpus: &[PSpan]) -> Outcome {
    let start = Instant::now();
    let mut components = 0;
    for (idx, sp) in corpus.iter().enumerate() {
        let (_, fiber) =
            det_fiber_at(sp, &sp.left().basepoints(), DEFAULT_BUDGET).map_err(|e| format!("span {idx}: {e}"))?;
        let leibniz = leibniz_scalar(sp).map_err(|e| format!("span {idx}: {e}"))?;
        let (a, b) = (fiber.scalar.fingerprint(), leibniz.fingerprint());
        ensure(a == b, || format!("span {idx}: determinant fiber {a} vs Leibniz {b}"))?;
        components += a.0.len();
    }
    Ok(format!("{} spans, {components} components matched, {:.2?}", corpus.len(), start.elapsed()))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn binomial_dimension() -> Outcome {
    let mut cases = 0;
    for n in 0..=5usize {
        let x = ParityGroupoid::discrete((0..n).map(|i| format!("x{i}"))).unwrap();
        for k in 0..=n {
            let comps = exterior_power_components(&x, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let orientable: Vec<_> = comps.iter().filter(|c| c.orientable).collect();
            ensure(orientable.len() as u64 == binomial(n as u64, k as u64), || {
                format!("n={n} k={k}: {} orientable components", orientable.len())
            })?;
            ensure(orientable.iter().all(|c| c.aut_order == 1), || format!("n={n} k={k}: nontrivial Aut"))?;
            // the explicit construction must agree where it fits
            if n.pow(k as u32) * (1..=k).product::<usize>() <= 20_000 {
                let explicit = ExteriorPower::build(&x, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?.groupoid;
                let mut a: Vec<(usize, bool)> = explicit.pi0().iter().map(|c| (c.aut_order, c.orientable)).collect();
                let mut b: Vec<(usize, bool)> = comps.iter().map(|c| (c.aut_order, c.orientable)).collect();
                a.sort();
                b.sort();
                ensure(a == b, || format!("n={n} k={k}: explicit and walked components differ"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) cases"))
}

fn cancellation() -> Outcome {
    let mut fibers = 0;
    for seed in 0..200 {
        let (a, b) = composable_pair(seed);
        for sp in [&a, &b] {
            let t = sp.right();
            for j in 0..t.object_count() {
                if t.automorphisms(j).all(|g| t.parity(g) == Sign::Plus) {
                    continue;
                }
                for i in 0..sp.left().object_count() {
                    let card = sp.two_sided_fiber(i, j).scalar.cardinality();
                    ensure(card == rational::zero(), || format!("seed {seed}: fiber ({i},{j}) has cardinality {card}"))?;
                    match odd_involution_pairing(sp, i, j) {
                        Some(Ok(_)) => {}
                        Some(Err(e)) => return Err(format!("seed {seed}: fiber ({i},{j}): {e}")),
                        None => return Err(format!("seed {seed}: no odd automorphism found at {j}")),
                    }
                    fibers += 1;
                }
            }
        }
    }
    ensure(fibers > 0, || "no fiber over an odd object was generated".into())?;
    Ok(format!("{fibers} fibers over odd objects"))
}

fn quotient_scalar(action: &GroupAction, signs: &[Sign]) -> Result<(SignedGroupoid, SignedGroupoid), String> {
    let s = SignedGroupoid::new(action.target.groupoid().clone(), signs.to_vec()).map_err(|e| e.to_string())?;
    let q = action.weak_quotient().map_err(|r| r.to_string())?;
    let qs = SignedGroupoid::new(q.groupoid().clone(), signs.to_vec()).map_err(|e| e.to_string())?;
    Ok((s, qs))
}

fn cardinality_homomorphism() -> Outcome {
    let mut checks = 0;
    for seed in 0..100 {
        let mut gen = Generator::new(5000 + seed);
        let (s, t) = (gen.scalar(3, 2, 6), gen.scalar(3, 2, 6));
        ensure(s.sum(&t).cardinality() == s.cardinality() + t.cardinality(), || format!("seed {seed}: additivity"))?;
        ensure(s.multiply(&t).cardinality() == s.cardinality() * t.cardinality(), || {
            format!("seed {seed}: multiplicativity")
        })?;
        let (x, y) = (gen.parity_groupoid("x", 2, 2, 6), gen.parity_groupoid("y", 2, 2, 6));
        let star = x.star_product(&y);
        ensure(star.homotopy_cardinality() == x.homotopy_cardinality() * y.homotopy_cardinality(), || {
            format!("seed {seed}: ∗-multiplicativity")
        })?;

        // sign-preserving action on a set: orbit-constant signs, trivial 2-cells
        let mut action = gen.action(3);
        for row in action.theta.iter_mut() {
            row.iter_mut().for_each(|s| *s = Sign::Plus);
        }
        let n = action.target.object_count();
        let mut signs = vec![None; n];
        for x in 0..n {
            if signs[x].is_none() {
                let s = gen.sign();
                for g in 0..action.group.order() {
                    signs[action.on_objects[g][x]] = Some(s);
                }
            }
        }
        let signs: Vec<Sign> = signs.into_iter().map(Option::unwrap).collect();
        let (s_set, q_set) = quotient_scalar(&action, &signs)?;
        let order = rational::int(action.group.order() as i64);
        ensure(q_set.cardinality() == s_set.cardinality() / &order, || format!("seed {seed}: set quotient rule"))?;

        // trivial action of a catalog group on a scalar with automorphisms
        let (group, _) = gen.group(6);
        let sc = gen.scalar(3, 2, 6);
        let target = ParityGroupoid::even(sc.groupoid().clone());
        let plus = vec![Sign::Plus; group.order()];
        let trivial = GroupAction::trivial(group.clone(), target, &plus);
        let (s_trivial, q_trivial) = quotient_scalar(&trivial, sc.signs())?;
        let order = rational::int(group.order() as i64);
        ensure(q_trivial.cardinality() == s_trivial.cardinality() / &order, || {
            format!("seed {seed}: trivial-action quotient rule")
        })?;
        checks += 5;
    }
    let catalog = [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)];
    for g in &catalog {
        let bg = Groupoid::classifying(g, "*");
        ensure(bg.homotopy_cardinality() == frac(1, g.order() as i64), || format!("‖BG‖ for |G| = {}", g.order()))?;
        for parity in g.parity_homomorphisms() {
            let pbg = Arc::new(ParityGroupoid::classifying(g, &parity, "*"));
            let odd = parity.contains(&Sign::Minus);
            let basis = pbg.basepoints().len();
            ensure(basis == usize::from(!odd), || format!("BG basis size {basis} for |G| = {}", g.order()))?;
            let m = matrix_of_span(&PSpan::identity(pbg));
            ensure(m.row_count() == basis, || "identity matrix on BG has the wrong size".into())?;
            checks += 1;
        }
    }
    Ok(format!("{checks} checks"))
}

fn brahmagupta() -> Outcome {
    for seed in 0..200 {
        let mut gen = Generator::new(9000 + seed);
        let (s, t) = (gen.scalar(3, 2, 6), gen.scalar(3, 2, 6));
        let (sp, sn) = s.sign_split();
        let (tp, tn) = t.sign_split();
        let (pos, neg) = s.multiply(&t).sign_split();
        let want_pos = sp.product(&tp).sum(&sn.product(&tn));
        let want_neg = sp.product(&tn).sum(&sn.product(&tp));
        let shape = |g: &Groupoid| {
            let mut auts: Vec<(usize, usize)> = g.components().iter().map(|c| (c.aut_order, c.members.len())).collect();
            auts.sort();
            (g.object_count(), g.morphism_count(), auts, g.homotopy_cardinality())
        };
        ensure(shape(&pos) == shape(&want_pos), || format!("seed {seed}: positive part differs"))?;
        ensure(shape(&neg) == shape(&want_neg), || format!("seed {seed}: negative part differs"))?;
    }
    Ok("200 scalar pairs".into())
}

fn alternating_arrows() -> Result<usize, String> {
    let mut arrows = 0;
    for seed in 0..30 {
        let mut gen = Generator::new(7000 + seed);
        let x = gen.parity_groupoid("x", 2, 2, 3);
        for k in 0..=2 {
            let ext = ExteriorPower::build(&x, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            for y in 0..ext.groupoid.object_count() {
                for sigma in Permutation::all(k) {
                    let f = ext
                        .alternating_arrow(&x, y, &sigma)
                        .ok_or_else(|| format!("seed {seed}: no arrow for {sigma} at {y}"))?;
                    ensure(ext.groupoid.parity(f) == sigma.sign(), || format!("seed {seed}: arrow parity"))?;
                    arrows += 1;
                }
            }
        }
    }
    Ok(arrows)
}

fn main() {
    let corpus = det_corpus(120);
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 worked example", worked_example()),
        ("2 functoriality", functoriality()),
        ("3 determinant identity", determinant_identity(&corpus)),
        ("4 objective Leibniz", objective_leibniz(&corpus)),
        ("5 binomial dimension", binomial_dimension()),
        ("6 cancellation", cancellation()),
        ("7 cardinality homomorphism", cardinality_homomorphism()),
        ("8 Brahmagupta rule", brahmagupta()),
    ];
    let upstream = results[1..4].iter().all(|(_, r)| r.is_ok());
    let ninth = match (upstream, alternating_arrows()) {
        (true, Ok(n)) => Ok(format!("criteria 2-4 pass, {n} alternating arrows checked")),
        (false, _) => Err("one of criteria 2-4 failed".to_string()),
        (_, Err(e)) => Err(e),
    };
    results.push(("9 property-based replacements", ninth));
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}
