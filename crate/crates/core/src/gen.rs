//! Test-input generators: small categories, random presheaves and random
//! bifunctors.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fincat::{opposite, product_uncapped, FinCat, Presheaf, TabulatedBifunctor};
use crate::frames::KripkeFrame;

/// Objects 0, 1; morphisms id0, id1, `a: 0 → 1`, `e: 1 → 1` with `e∘e = id1`,
/// and `e∘a`.
pub fn arrow_with_loop() -> FinCat {
    let (id0, id1, a, e, ea) = (0, 1, 2, 3, 4);
    let morphisms = [(0, 0), (1, 1), (0, 1), (1, 1), (0, 1)];
    let mut compose = vec![vec![None; 5]; 5];
    let mut set = |g: usize, f: usize, h: usize| compose[g][f] = Some(h);
    set(id0, id0, id0);
    for f in [id1, e] {
        set(f, id1, f);
        set(id1, f, f);
    }
    for f in [a, ea] {
        set(f, id0, f);
        set(id1, f, f);
    }
    set(e, e, id1);
    set(e, a, ea);
    set(e, ea, a);
    FinCat::from_tables(2, &morphisms, &[id0, id1], &compose).expect("tables are well formed")
}

/// Two parallel arrows `0 ⇉ 1`.
pub fn parallel_pair() -> FinCat {
    let morphisms = [(0, 0), (1, 1), (0, 1), (0, 1)];
    let mut compose = vec![vec![None; 4]; 4];
    compose[0][0] = Some(0);
    compose[1][1] = Some(1);
    for f in [2, 3] {
        compose[f][0] = Some(f);
        compose[1][f] = Some(f);
    }
    FinCat::from_tables(2, &morphisms, &[0, 1], &compose).expect("tables are well formed")
}

/// The monoid `{1, e}` with `e∘e = e`.
pub fn idempotent() -> FinCat {
    FinCat::from_monoid(&[vec![0, 1], vec![1, 1]], 0).expect("tables are well formed")
}

/// The thin category of a partial order.
pub fn poset_category(fr: &KripkeFrame) -> FinCat {
    FinCat::from_preorder(fr.size(), |a, b| fr.leq(a, b))
}

/// A fixed pool of categories with at most six morphisms: every poset on at
/// most three points, the cyclic groups of order 2 to 6, and a few
/// non-thin shapes.
pub fn small_categories() -> Vec<FinCat> {
    let mut out: Vec<FinCat> = (0..=3)
        .flat_map(KripkeFrame::all)
        .map(|fr| poset_category(&fr))
        .collect();
    out.extend((2..=6).map(FinCat::cyclic_group));
    out.extend([arrow_with_loop(), parallel_pair(), idempotent()]);
    out
}

/// A random presheaf with every value set of size at most `max_size`.
///
/// Sizes are drawn uniformly and the actions found by randomized
/// backtracking; sizes that admit no action are redrawn.
pub fn random_presheaf(base: &FinCat, max_size: usize, rng: &mut impl Rng) -> Presheaf {
    loop {
        let sizes: Vec<usize> = base.objects().map(|_| rng.gen_range(0..=max_size)).collect();
        if let Some(actions) = random_actions(base, &sizes, rng) {
            return Presheaf {
                base: base.clone(),
                sizes,
                actions,
            };
        }
    }
}

const NODE_BUDGET: usize = 20_000;

fn random_actions(c: &FinCat, sizes: &[usize], rng: &mut impl Rng) -> Option<Vec<Vec<usize>>> {
    let mut actions: Vec<Vec<Option<usize>>> = c
        .morphisms()
        .map(|u| {
            let n = sizes[c.cod(u)];
            if c.is_identity(u) {
                (0..n).map(Some).collect()
            } else {
                vec![None; n]
            }
        })
        .collect();
    let vars: Vec<(usize, usize)> = c
        .morphisms()
        .filter(|&u| !c.is_identity(u))
        .flat_map(|u| (0..sizes[c.cod(u)]).map(move |s| (u, s)))
        .collect();
    // composable pairs (g, f) touching each morphism
    let mut touching: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.morphism_count()];
    for g in c.morphisms() {
        for f in c.hom_into_dom(g) {
            let gf = c.compose(g, f);
            for u in [g, f, gf] {
                if !touching[u].contains(&(g, f)) {
                    touching[u].push((g, f));
                }
            }
        }
    }
    let mut nodes = 0;
    let ok = assign(c, sizes, &vars, 0, &mut actions, &touching, &mut nodes, rng);
    ok.then(|| {
        actions
            .into_iter()
            .map(|a| a.into_iter().map(|v| v.expect("all assigned")).collect())
            .collect()
    })
}

#[allow(clippy::too_many_arguments)]
fn assign(
    c: &FinCat,
    sizes: &[usize],
    vars: &[(usize, usize)],
    k: usize,
    actions: &mut Vec<Vec<Option<usize>>>,
    touching: &[Vec<(usize, usize)>],
    nodes: &mut usize,
    rng: &mut impl Rng,
) -> bool {
    let Some(&(u, s)) = vars.get(k) else {
        return true;
    };
    let mut values: Vec<usize> = (0..sizes[c.dom(u)]).collect();
    values.shuffle(rng);
    for v in values {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return false;
        }
        actions[u][s] = Some(v);
        if consistent(c, sizes, actions, &touching[u])
            && assign(c, sizes, vars, k + 1, actions, touching, nodes, rng)
        {
            return true;
        }
    }
    actions[u][s] = None;
    false
}

/// `F(g∘f)(s) = F(f)(F(g)(s))` wherever both sides are already determined.
fn consistent(
    c: &FinCat,
    sizes: &[usize],
    actions: &[Vec<Option<usize>>],
    pairs: &[(usize, usize)],
) -> bool {
    pairs.iter().all(|&(g, f)| {
        let gf = c.compose(g, f);
        (0..sizes[c.cod(g)]).all(|s| {
            let lhs = actions[gf][s];
            let rhs = actions[g][s].and_then(|t| actions[f][t]);
            match (lhs, rhs) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
        })
    })
}

/// A random bifunctor on `base`, drawn as a random presheaf on
/// `base × base^op`.
pub fn random_bifunctor(base: &FinCat, max_size: usize, rng: &mut impl Rng) -> TabulatedBifunctor {
    let twisted = product_uncapped(base, &opposite(base));
    let p = random_presheaf(&twisted, max_size, rng);
    TabulatedBifunctor::from_presheaf_on_twisted(base, &p).expect("presheaf lives on the product")
}
