use std::fmt;

use serde::Serialize;

use super::category::FinCat;
use super::search::Search;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::Report;

/// A finite-set-valued presheaf.
///
/// `sizes[x]` is `|F(x)|`, with elements `0..sizes[x]`. For a morphism
/// `u: x' → x`, `actions[u]` is the function `F(x) → F(x')`, stored as the
/// image of each element of `F(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub base: FinCat,
    pub sizes: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum PresheafViolation {
    Shape { message: String },
    Identity { object: usize },
    Composition { g: usize, f: usize },
}

impl fmt::Display for PresheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresheafViolation::Shape { message } => write!(f, "{message}"),
            PresheafViolation::Identity { object } => {
                write!(f, "identity at object {object} does not act trivially")
            }
            PresheafViolation::Composition { g, f: ff } => {
                write!(f, "F({g}∘{ff}) ≠ F({ff})∘F({g})")
            }
        }
    }
}

impl Presheaf {
    /// Builds and validates a presheaf.
    pub fn new(base: FinCat, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Presheaf> {
        let p = Presheaf {
            base,
            sizes,
            actions,
        };
        if let Some(v) = p.validate().first() {
            return Err(Error::InvalidInput(format!("not a presheaf: {v}")));
        }
        Ok(p)
    }

    /// The presheaf that is empty everywhere.
    pub fn empty(base: &FinCat) -> Presheaf {
        Presheaf {
            base: base.clone(),
            sizes: vec![0; base.object_count()],
            actions: vec![Vec::new(); base.morphism_count()],
        }
    }

    /// The constant presheaf with `n` elements and trivial action.
    pub fn constant(base: &FinCat, n: usize) -> Presheaf {
        Presheaf {
            base: base.clone(),
            sizes: vec![n; base.object_count()],
            actions: vec![(0..n).collect(); base.morphism_count()],
        }
    }

    /// `hom(−, x)`; the element `k` of `hom(a, x)` is the `k`-th morphism of
    /// that hom-set.
    pub fn representable(base: &FinCat, x: usize) -> Presheaf {
        let sizes = base.objects().map(|a| base.hom(a, x).len()).collect();
        let actions = base
            .morphisms()
            .map(|u| {
                // u: a' → a acts on hom(a, x) by precomposition
                base.hom(base.cod(u), x)
                    .iter()
                    .map(|&k| base.hom_position(base.compose(k, u)))
                    .collect()
            })
            .collect();
        Presheaf {
            base: base.clone(),
            sizes,
            actions,
        }
    }

    pub fn size(&self, x: usize) -> usize {
        self.sizes[x]
    }

    /// `F(u)(s)` for `u: x' → x` and `s ∈ F(x)`.
    pub fn act(&self, u: usize, s: usize) -> usize {
        self.actions[u][s]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn validate(&self) -> Report<PresheafViolation> {
        let c = &self.base;
        let mut report = Report::ok();
        let shape = |message: String| PresheafViolation::Shape { message };
        if self.sizes.len() != c.object_count() || self.actions.len() != c.morphism_count() {
            report.push(shape("size or action table has the wrong length".into()));
            return report;
        }
        for u in c.morphisms() {
            let act = &self.actions[u];
            let (from, to) = (self.sizes[c.cod(u)], self.sizes[c.dom(u)]);
            if act.len() != from || act.iter().any(|&s| s >= to) {
                report.push(shape(format!("action of morphism {u} is not a function F({}) → F({})", c.cod(u), c.dom(u))));
            }
        }
        if !report.is_ok() {
            return report;
        }
        for x in c.objects() {
            let act = &self.actions[c.id(x)];
            if act.iter().enumerate().any(|(s, &t)| s != t) {
                report.push(PresheafViolation::Identity { object: x });
            }
        }
        for g in c.morphisms() {
            for f in c.hom_into_dom(g) {
                let gf = c.compose(g, f);
                // F(g∘f) = F(f) ∘ F(g)
                let ok = (0..self.sizes[c.cod(g)])
                    .all(|s| self.actions[gf][s] == self.actions[f][self.actions[g][s]]);
                if !ok {
                    report.push(PresheafViolation::Composition { g, f });
                }
            }
        }
        report
    }
}

/// A natural transformation between presheaves on the same base: one
/// function `F(x) → G(x)` per object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NatTransformation {
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum NaturalityViolation {
    Shape { object: usize },
    Square { morphism: usize, element: usize },
}

impl fmt::Display for NaturalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaturalityViolation::Shape { object } => {
                write!(f, "component at {object} is not a function of the right type")
            }
            NaturalityViolation::Square { morphism, element } => {
                write!(f, "naturality square at morphism {morphism} fails on element {element}")
            }
        }
    }
}

impl NatTransformation {
    pub fn identity(f: &Presheaf) -> NatTransformation {
        NatTransformation {
            components: f.sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    pub fn validate(&self, from: &Presheaf, to: &Presheaf) -> Report<NaturalityViolation> {
        let c = &from.base;
        let mut report = Report::ok();
        for x in c.objects() {
            let ok = self.components.get(x).is_some_and(|comp| {
                comp.len() == from.sizes[x] && comp.iter().all(|&t| t < to.sizes[x])
            });
            if !ok {
                report.push(NaturalityViolation::Shape { object: x });
            }
        }
        if self.components.len() != c.object_count() || !report.is_ok() {
            if report.is_ok() {
                report.push(NaturalityViolation::Shape {
                    object: c.object_count(),
                });
            }
            return report;
        }
        for u in c.morphisms() {
            let (x1, x) = (c.dom(u), c.cod(u));
            for s in 0..from.sizes[x] {
                // G(u)(α_x(s)) = α_x'(F(u)(s))
                if to.act(u, self.components[x][s]) != self.components[x1][from.act(u, s)] {
                    report.push(NaturalityViolation::Square {
                        morphism: u,
                        element: s,
                    });
                }
            }
        }
        report
    }

    pub fn is_invertible(&self, from: &Presheaf, to: &Presheaf) -> bool {
        self.components.iter().enumerate().all(|(x, comp)| {
            let mut seen = vec![false; to.sizes[x]];
            comp.len() == to.sizes[x]
                && comp.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
        }) && from.sizes.len() == to.sizes.len()
    }

    /// Componentwise inverse of an invertible transformation.
    pub fn inverse(&self) -> NatTransformation {
        NatTransformation {
            components: self
                .components
                .iter()
                .map(|comp| {
                    let mut inv = vec![0; comp.len()];
                    for (s, &t) in comp.iter().enumerate() {
                        inv[t] = s;
                    }
                    inv
                })
                .collect(),
        }
    }

    /// Vertical composite `other · self`.
    pub fn then(&self, other: &NatTransformation) -> NatTransformation {
        NatTransformation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().map(|&s| b[s]).collect())
                .collect(),
        }
    }
}

/// Variables are the elements `(x, s)` of `F`, in lexicographic order.
fn naturality_search(from: &Presheaf, to: &Presheaf) -> (Search, Vec<usize>) {
    let c = &from.base;
    let mut offsets = Vec::with_capacity(c.object_count());
    let mut domains = Vec::new();
    for x in c.objects() {
        offsets.push(domains.len());
        domains.extend(std::iter::repeat_n(to.sizes[x], from.sizes[x]));
    }
    let mut search = Search::new(domains);
    for u in c.morphisms() {
        let (x1, x) = (c.dom(u), c.cod(u));
        if c.is_identity(u) {
            continue;
        }
        for s in 0..from.sizes[x] {
            // α_x'(F(u)(s)) = G(u)(α_x(s))
            search.constrain_fn(
                offsets[x] + s,
                to.actions[u].clone(),
                offsets[x1] + from.act(u, s),
            );
        }
    }
    (search, offsets)
}

fn unflatten(from: &Presheaf, offsets: &[usize], sol: &[usize]) -> NatTransformation {
    NatTransformation {
        components: offsets
            .iter()
            .zip(&from.sizes)
            .map(|(&o, &n)| sol[o..o + n].to_vec())
            .collect(),
    }
}

/// Every natural transformation `from ⇒ to`, in lexicographic order of the
/// flattened component tables.
pub fn nat_transformations(
    from: &Presheaf,
    to: &Presheaf,
    caps: &Caps,
) -> Result<Vec<NatTransformation>> {
    assert_eq!(from.base, to.base, "presheaves over different bases");
    let (search, offsets) = naturality_search(from, to);
    Ok(search
        .solve_all(caps.max_enum, "natural transformations")?
        .iter()
        .map(|sol| unflatten(from, &offsets, sol))
        .collect())
}

/// First invertible natural transformation `from ⇒ to`, if any.
///
/// The search visits at most `caps.max_enum` partial assignments.
pub fn find_natural_iso(
    from: &Presheaf,
    to: &Presheaf,
    caps: &Caps,
) -> Result<Option<NatTransformation>> {
    assert_eq!(from.base, to.base, "presheaves over different bases");
    if from.sizes != to.sizes {
        return Ok(None);
    }
    let (mut search, offsets) = naturality_search(from, to);
    for (x, &o) in offsets.iter().enumerate() {
        for v in o..o + from.sizes[x] {
            search.set_group(v, x);
        }
    }
    Ok(search
        .first(caps.max_enum, "natural isomorphisms")?
        .map(|sol| unflatten(from, &offsets, &sol)))
}
