//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use freesem::fincat::Bifunctor;
use freesem::syntax::{Connective, Formula};
use rand::Rng;

/// Coend classes by reachability closure of the generating relation on the
/// disjoint union, numbered by least member. Returns `injections[d][t]`.
pub fn naive_coend(t: &impl Bifunctor) -> (usize, Vec<Vec<usize>>) {
    let c = t.base();
    let mut offsets = Vec::new();
    let mut total = 0;
    for d in c.objects() {
        offsets.push(total);
        total += t.size(d, d);
    }
    let mut reach = vec![vec![false; total]; total];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for p in c.morphisms() {
        let (d, d1) = (c.dom(p), c.cod(p));
        for x in 0..t.size(d1, d) {
            let a = offsets[d] + t.act_contra(p, d, x);
            let b = offsets[d1] + t.act_co(d1, p, x);
            reach[a][b] = true;
            reach[b][a] = true;
        }
    }
    for k in 0..total {
        for i in 0..total {
            if reach[i][k] {
                let row = reach[k].clone();
                for (j, r) in row.into_iter().enumerate() {
                    if r {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let least: Vec<usize> = (0..total)
        .map(|i| (0..total).find(|&j| reach[i][j]).unwrap())
        .collect();
    let mut label = vec![usize::MAX; total];
    let mut classes = 0;
    for i in 0..total {
        if least[i] == i {
            label[i] = classes;
            classes += 1;
        }
    }
    let injections = c
        .objects()
        .map(|d| {
            (0..t.size(d, d))
                .map(|x| label[least[offsets[d] + x]])
                .collect()
        })
        .collect();
    (classes, injections)
}

/// Post-order evaluation with an explicit stack.
pub fn iterative_eval<V: Clone>(
    f: &Formula,
    var: &impl Fn(&str) -> V,
    top: &V,
    bot: &V,
    binary: &impl Fn(Connective, V, V) -> V,
) -> V {
    enum Step<'a> {
        Visit(&'a Formula),
        Combine(Connective),
    }
    let mut work = vec![Step::Visit(f)];
    let mut values: Vec<V> = Vec::new();
    while let Some(step) = work.pop() {
        match step {
            Step::Visit(Formula::Var(name)) => values.push(var(name)),
            Step::Visit(Formula::Top) => values.push(top.clone()),
            Step::Visit(Formula::Bot) => values.push(bot.clone()),
            Step::Visit(Formula::Binary(c, l, r)) => {
                work.push(Step::Combine(*c));
                work.push(Step::Visit(r));
                work.push(Step::Visit(l));
            }
            Step::Combine(c) => {
                let r = values.pop().unwrap();
                let l = values.pop().unwrap();
                values.push(binary(c, l, r));
            }
        }
    }
    values.pop().unwrap()
}

pub const MODULUS: u64 = 1_000_003;

/// A non-commutative arithmetic interpretation that tells connectives apart.
pub fn arith_var(name: &str) -> u64 {
    name.bytes().fold(7, |h, b| (h * 131 + u64::from(b)) % MODULUS)
}

pub fn arith_binary(c: Connective, l: u64, r: u64) -> u64 {
    let tag = Connective::ALL.iter().position(|&d| d == c).unwrap() as u64 + 2;
    (l * 31 + r * 17 + l * r % MODULUS * tag + tag * 7) % MODULUS
}

/// A uniformly shaped random formula of depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Formula {
    if depth <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..vars.len() + 2) {
            0 => Formula::Top,
            1 => Formula::Bot,
            k => Formula::var(vars[k - 2]),
        };
    }
    let c = Connective::ALL[rng.gen_range(0..Connective::ALL.len())];
    let l = random_formula(rng, depth - 1, vars);
    let r = random_formula(rng, depth - 1, vars);
    Formula::binary(c, l, r)
}

/// A random formula of exactly the given depth.
pub fn random_formula_exact(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Formula {
    if depth <= 1 {
        return random_formula(rng, 1, vars);
    }
    let c = Connective::ALL[rng.gen_range(0..Connective::ALL.len())];
    let deep = random_formula_exact(rng, depth - 1, vars);
    let other = random_formula(rng, depth - 1, vars);
    if rng.gen_bool(0.5) {
        Formula::binary(c, deep, other)
    } else {
        Formula::binary(c, other, deep)
    }
}
