//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! All comparisons are exact; there are no numeric tolerances.

mod common;

use std::time::{Duration, Instant};

use freesem::consequence::{check_extension_compatibility, kleisli, SatisfactionRelation};
use freesem::dayconv::{
    check_closed, check_unit_laws, check_yoneda_monoidality, day_left_exponent, day_tensor,
    indexed_convolution_check, promonoidal_from_monoidal, transpose_left, MonoidalCat,
};
use freesem::fincat::{
    all_functors, coend, end, find_functor_iso, functor_transformations, nat_transformations,
    ExponentialBifunctor, FinCat, Functor, Presheaf,
};
use freesem::frames::{check_kripke_equivalence, check_residuation, KripkeFrame, TernaryFrame, Valuation};
use freesem::gen::{poset_category, random_bifunctor, random_presheaf, small_categories};
use freesem::kan::{adjoint_oracle, check_yoneda_triangle, YonedaTriangleData};
use freesem::Subset;
use freesem::syntax::{fold, formulas_up_to_depth, parse, print, Algebra, Connective, Dialect, Formula};
use freesem::{Caps, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: details on success, the first counterexample
/// on failure.
type Outcome = std::result::Result<String, String>;

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("residuation", Duration::from_secs(30), residuation),
        ("kripke equivalence", Duration::from_secs(60), kripke_equivalence),
        ("day convolution", Duration::from_secs(120), day_convolution),
        ("indexed convolution", Duration::from_secs(60), indexed_convolution),
        ("yoneda triangles", Duration::from_secs(120), yoneda_triangles),
        ("coend and end oracles", Duration::from_secs(30), coend_end_oracles),
        ("consequence", Duration::from_secs(10), consequence),
        ("syntax round trip", Duration::from_secs(10), syntax_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        let over = if elapsed > *budget {
            format!(", over the {}s budget", budget.as_secs())
        } else {
            String::new()
        };
        println!(
            "criterion {} {status} {name}: {detail} [{:.2}s{over}]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn fail(e: freesem::Error) -> String {
    format!("error: {e}")
}

fn residuation() -> Outcome {
    let caps = Caps::default();
    let mut frames = 0;
    for size in 0..=2usize {
        let bits = size * size * size;
        for mask in 0..1u128 << bits {
            let fr = TernaryFrame::from_mask(size, mask);
            let report = check_residuation(&fr, &caps).map_err(fail)?;
            if let Some(v) = report.first() {
                return Err(format!("R = {:?}: {v}", fr.triples()));
            }
            frames += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let fr = TernaryFrame::from_mask(3, rng.gen_range(0..1u128 << 27));
        let report = check_residuation(&fr, &caps).map_err(fail)?;
        if let Some(v) = report.first() {
            return Err(format!("R = {:?}: {v}", fr.triples()));
        }
    }
    Ok(format!("{frames} frames exhaustively for |X| <= 2, 500 random frames at |X| = 3"))
}

fn kripke_equivalence() -> Outcome {
    let formulas = formulas_up_to_depth(&["A"], 3, Dialect::Prop);
    let mut checks = 0usize;
    for size in 0..=3 {
        for fr in KripkeFrame::all(size) {
            for up in fr.up_sets() {
                let mut v = Valuation::new();
                v.set("A", up);
                for phi in &formulas {
                    let report = check_kripke_equivalence(&fr, &v, phi).map_err(fail)?;
                    if let Some(bad) = report.first() {
                        return Err(format!("order {:?}, phi = {phi}: {bad}", fr.pairs()));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} (frame, valuation, formula) cases, {} formulas of depth <= 3, both residuals",
        formulas.len()
    ))
}

fn bases() -> Vec<(&'static str, MonoidalCat)> {
    vec![
        ("terminal", MonoidalCat::terminal()),
        ("Z/2", MonoidalCat::z2()),
        ("3-chain with min", MonoidalCat::chain_min(3)),
    ]
}

fn representables(c: &FinCat) -> Vec<Presheaf> {
    c.objects().map(|x| Presheaf::representable(c, x)).collect()
}

fn day_convolution() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut closed_checks = 0;
    let mut transformations = 0;
    for (name, m) in bases() {
        let p = promonoidal_from_monoidal(&m);
        let a = &m.base;
        let mut unit_inputs = representables(a);
        unit_inputs.extend((0..20).map(|_| random_presheaf(a, 3, &mut rng)));
        for f in &unit_inputs {
            let report = check_unit_laws(&p, f, &caps).map_err(fail)?;
            if let Some(v) = report.first() {
                return Err(format!("{name}: F = {:?}: {v}", f.sizes));
            }
        }
        let report = check_yoneda_monoidality(&m, &caps).map_err(fail)?;
        if let Some(v) = report.first() {
            return Err(format!("{name}: {v}"));
        }
        let reps = representables(a);
        let mut triples = Vec::new();
        for h in &reps {
            for f in &reps {
                for g in &reps {
                    triples.push((h.clone(), f.clone(), g.clone()));
                }
            }
        }
        // value sizes <= 2 keep both Nat sets enumerable
        for _ in 0..20 {
            triples.push((
                random_presheaf(a, 2, &mut rng),
                random_presheaf(a, 2, &mut rng),
                random_presheaf(a, 2, &mut rng),
            ));
        }
        for (h, f, g) in &triples {
            let report = check_closed(&p, h, f, g, &caps).map_err(fail)?;
            if let Some(v) = report.first() {
                return Err(format!(
                    "{name}: H = {:?}, F = {:?}, G = {:?}: {v}",
                    h.sizes, f.sizes, g.sizes
                ));
            }
            // the single-call transposition agrees with the bijection count
            let tensor = day_tensor(&p, h, f, &caps).map_err(fail)?;
            let lhs = nat_transformations(&tensor.presheaf, g, &caps).map_err(fail)?;
            let exponent = day_left_exponent(&p, f, g, &caps).map_err(fail)?;
            let rhs = nat_transformations(h, &exponent.presheaf, &caps).map_err(fail)?;
            if lhs.len() != rhs.len() {
                return Err(format!("{name}: |Nat(H⊗F, G)| = {} but |Nat(H, F⊸G)| = {}", lhs.len(), rhs.len()));
            }
            if let Some(alpha) = lhs.first() {
                transpose_left(&p, h, f, g, alpha, &caps).map_err(fail)?;
            }
            transformations += lhs.len();
            closed_checks += 1;
        }
    }
    Ok(format!(
        "unit laws, Yoneda monoidality, and {closed_checks} residuation triples ({transformations} transposed transformations) on 3 bases"
    ))
}

fn indexed_convolution() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checks = 0;
    for (name, m) in bases() {
        let a = &m.base;
        for k in 0..=2usize {
            let mut inputs: Vec<(Vec<Presheaf>, Vec<Presheaf>)> = Vec::new();
            let reps = representables(a);
            inputs.push((
                (0..k).map(|i| reps[i % reps.len()].clone()).collect(),
                (0..k).map(|i| reps[(i + 1) % reps.len()].clone()).collect(),
            ));
            for _ in 0..5 {
                inputs.push((
                    (0..k).map(|_| random_presheaf(a, 3, &mut rng)).collect(),
                    (0..k).map(|_| random_presheaf(a, 3, &mut rng)).collect(),
                ));
            }
            for (f, g) in &inputs {
                let report = indexed_convolution_check(&m, f, g, &caps).map_err(fail)?;
                if let Some(v) = report.first() {
                    return Err(format!("{name}, |K| = {k}: {v}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} indexed families over |K| in {{0, 1, 2}} on 3 bases"))
}

/// First `(g, η)` making `⟨Id, f, g, η⟩` a Yoneda triangle.
fn triangle_search(f: &Functor, caps: &Caps) -> Result<Option<Functor>> {
    let (a, b) = (&f.source, &f.target);
    for g in all_functors(b, a, caps)? {
        for eta in functor_transformations(&Functor::identity(a), &f.then(&g), caps)? {
            let t = YonedaTriangleData::new(Functor::identity(a), f.clone(), g.clone(), eta)?;
            if check_yoneda_triangle(&t, caps)?.is_ok() {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

fn yoneda_triangles() -> Outcome {
    let caps = Caps::default();
    let posets: Vec<FinCat> = (0..=3)
        .flat_map(KripkeFrame::all)
        .map(|fr| poset_category(&fr))
        .collect();
    let (mut functors, mut adjoints) = (0, 0);
    for a in &posets {
        for b in &posets {
            for f in all_functors(a, b, &caps).map_err(fail)? {
                let oracle = adjoint_oracle(&f, &caps).map_err(fail)?;
                let triangle = triangle_search(&f, &caps).map_err(fail)?;
                match (&oracle, &triangle) {
                    (Some(d), Some(g)) => {
                        if find_functor_iso(&d.g, g, &caps).map_err(fail)?.is_none() {
                            return Err(format!("f = {:?}: adjoints {:?} and {:?} are not isomorphic", f.objects, d.g.objects, g.objects));
                        }
                        adjoints += 1;
                    }
                    (None, None) => {}
                    _ => {
                        return Err(format!(
                            "f = {:?} from {} to {} objects: oracle {} but triangle search {}",
                            f.objects,
                            a.object_count(),
                            b.object_count(),
                            oracle.is_some(),
                            triangle.is_some()
                        ))
                    }
                }
                functors += 1;
            }
        }
    }
    Ok(format!(
        "{functors} functors between {} labelled posets of size <= 3, {adjoints} with right adjoints",
        posets.len()
    ))
}

fn coend_end_oracles() -> Outcome {
    let caps = Caps::default();
    let pool = small_categories();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let c = &pool[rng.gen_range(0..pool.len())];
        let t = random_bifunctor(c, 3, &mut rng);
        let fast = coend(&t, &caps).map_err(fail)?;
        let (classes, injections) = common::naive_coend(&t);
        if fast.classes != classes || fast.injections != injections {
            return Err(format!("sample {i}: union-find and closure coends differ"));
        }
        let f = random_presheaf(c, 3, &mut rng);
        let g = random_presheaf(c, 3, &mut rng);
        let ends = end(&ExponentialBifunctor::new(&f, &g), &caps).map_err(fail)?;
        let nats = nat_transformations(&f, &g, &caps).map_err(fail)?;
        if ends.families.len() != nats.len() {
            return Err(format!(
                "sample {i}: end has {} families but there are {} transformations",
                ends.families.len(),
                nats.len()
            ));
        }
    }
    Ok("200 random bifunctors and 200 presheaf pairs over bases with <= 6 morphisms".into())
}

fn check_relation(rel: &SatisfactionRelation) -> std::result::Result<(), String> {
    let n = rel.sentences().len();
    let order = kleisli(rel).map_err(fail)?;
    for i in 0..n {
        if !order.relation[i][i] {
            return Err(format!("not reflexive at {i}"));
        }
        for j in 0..n {
            for k in 0..n {
                if order.relation[i][j] && order.relation[j][k] && !order.relation[i][k] {
                    return Err(format!("not transitive at {i}, {j}, {k}"));
                }
            }
        }
    }
    let subsets: Vec<Subset> = Subset::all(n).collect();
    for gamma in &subsets {
        let cn = rel.closure(gamma);
        if !gamma.is_subset(&cn) || rel.closure(&cn) != cn {
            return Err(format!("closure fails at {gamma}"));
        }
        for larger in subsets.iter().filter(|s| gamma.is_subset(s)) {
            if !cn.is_subset(&rel.closure(larger)) {
                return Err(format!("monotonicity fails at {gamma} ⊆ {larger}"));
            }
        }
    }
    if let Some(v) = check_extension_compatibility(rel).map_err(fail)?.first() {
        return Err(v.to_string());
    }
    Ok(())
}

fn consequence() -> Outcome {
    let mut count = 0;
    for models in 0..=3usize {
        for sentences in 0..=3usize {
            for mask in 0..1u32 << (models * sentences) {
                let matrix = (0..models)
                    .map(|i| (0..sentences).map(|j| mask >> (i * sentences + j) & 1 == 1).collect())
                    .collect();
                let rel = SatisfactionRelation::new(
                    (0..models).map(|i| format!("M{i}")).collect(),
                    (0..sentences).map(|j| format!("s{j}")).collect(),
                    matrix,
                )
                .map_err(fail)?;
                check_relation(&rel).map_err(|e| format!("{models}x{sentences} mask {mask}: {e}"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let matrix = (0..5).map(|_| (0..5).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let rel = SatisfactionRelation::from_matrix(matrix).map_err(fail)?;
        check_relation(&rel).map_err(|e| format!("random sample {i}: {e}"))?;
    }
    Ok(format!("{count} matrices up to 3x3 exhaustively, 200 random 5x5"))
}

struct Arith;

impl Algebra for Arith {
    type Value = u64;

    fn var(&self, name: &str) -> Result<u64> {
        Ok(common::arith_var(name))
    }

    fn top(&self) -> Result<u64> {
        Ok(1)
    }

    fn bot(&self) -> Result<u64> {
        Ok(0)
    }

    fn binary(&self, c: Connective, l: u64, r: u64) -> Result<u64> {
        Ok(common::arith_binary(c, l, r))
    }
}

fn check_formula(f: &Formula) -> std::result::Result<(), String> {
    let text = print(f);
    let back = parse(&text, Dialect::Full).map_err(|e| format!("`{text}` does not parse: {e}"))?;
    if &back != f || print(&back) != text {
        return Err(format!("`{text}` does not round trip"));
    }
    let recursive = fold(f, &Arith).map_err(fail)?;
    let iterative = common::iterative_eval(f, &common::arith_var, &1, &0, &common::arith_binary);
    if recursive != iterative {
        return Err(format!("folds disagree on `{text}`"));
    }
    Ok(())
}

fn syntax_round_trip() -> Outcome {
    let vars = ["a", "b", "c"];
    let exhaustive = formulas_up_to_depth(&vars, 3, Dialect::Full);
    for f in &exhaustive {
        check_formula(f)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples = 20_000;
    for depth in [4, 5] {
        for _ in 0..samples {
            check_formula(&common::random_formula_exact(&mut rng, depth, &vars))?;
        }
    }
    Ok(format!(
        "all {} formulas of depth <= 3 over 3 variables exhaustively; depths 4 and 5 sampled ({samples} seeded formulas each), full enumeration there is about 10^11 formulas",
        exhaustive.len()
    ))
}
