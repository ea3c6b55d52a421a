use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, PartialEq, Eq)]
struct CatData {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identities: Vec<usize>,
    /// `compose[g * m + f]` is `g ∘ f`.
    compose: Vec<Option<usize>>,
    /// `homs[a * objects + b]` lists hom(a, b) in increasing index order.
    homs: Vec<Vec<usize>>,
    /// Position of each morphism inside its hom-set.
    hom_pos: Vec<usize>,
}

/// A finite category given by explicit tables.
///
/// Morphisms are globally indexed and equality is index equality. Cloning is
/// cheap: the tables are shared.
///
/// A `FinCat` is only structurally well formed on construction (all indices
/// in range); use [`validate_category`] to check the category laws.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat(Arc<CatData>);

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.0.objects)
            .field("morphisms", &self.0.dom.len())
            .finish()
    }
}

impl FinCat {
    /// Builds a category from its tables.
    ///
    /// `morphisms[k] = (dom, cod)`, `identities[x]` is the identity at `x` and
    /// `compose[g][f]` is `g ∘ f`.
    pub fn from_tables(
        objects: usize,
        morphisms: &[(usize, usize)],
        identities: &[usize],
        compose: &[Vec<Option<usize>>],
    ) -> Result<FinCat> {
        let m = morphisms.len();
        for (k, &(d, c)) in morphisms.iter().enumerate() {
            if d >= objects || c >= objects {
                return Err(Error::MalformedTable(format!(
                    "morphism {k} has endpoint out of range ({d} -> {c}, {objects} objects)"
                )));
            }
        }
        if identities.len() != objects {
            return Err(Error::MalformedTable(format!(
                "expected {objects} identities, got {}",
                identities.len()
            )));
        }
        if let Some(&bad) = identities.iter().find(|&&i| i >= m) {
            return Err(Error::MalformedTable(format!(
                "identity index {bad} out of range"
            )));
        }
        if compose.len() != m || compose.iter().any(|row| row.len() != m) {
            return Err(Error::MalformedTable(format!(
                "composition table must be {m} x {m}"
            )));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (g, row) in compose.iter().enumerate() {
            for (f, entry) in row.iter().enumerate() {
                if let Some(h) = *entry {
                    if h >= m {
                        return Err(Error::MalformedTable(format!(
                            "composite {g}∘{f} = {h} out of range"
                        )));
                    }
                }
                flat.push(*entry);
            }
        }
        Ok(FinCat::build(
            objects,
            morphisms.iter().map(|p| p.0).collect(),
            morphisms.iter().map(|p| p.1).collect(),
            identities.to_vec(),
            flat,
        ))
    }

    fn build(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identities: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> FinCat {
        let mut homs = vec![Vec::new(); objects * objects];
        let mut hom_pos = vec![0; dom.len()];
        for k in 0..dom.len() {
            let hom = &mut homs[dom[k] * objects + cod[k]];
            hom_pos[k] = hom.len();
            hom.push(k);
        }
        FinCat(Arc::new(CatData {
            objects,
            dom,
            cod,
            identities,
            compose,
            homs,
            hom_pos,
        }))
    }

    /// The category with no objects.
    pub fn empty() -> FinCat {
        FinCat::build(0, vec![], vec![], vec![], vec![])
    }

    /// One object, one (identity) morphism.
    pub fn terminal() -> FinCat {
        FinCat::discrete(1)
    }

    /// `n` objects and only identities; morphism `k` is the identity at `k`.
    pub fn discrete(n: usize) -> FinCat {
        FinCat::from_preorder(n, |a, b| a == b)
    }

    /// The chain `0 ≤ 1 ≤ .. ≤ n-1` as a thin category.
    pub fn chain(n: usize) -> FinCat {
        FinCat::from_preorder(n, |a, b| a <= b)
    }

    /// The thin category of a preorder; the relation must be reflexive and
    /// transitive. Morphisms are numbered in lexicographic `(dom, cod)` order.
    pub fn from_preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> FinCat {
        let mut index = vec![None; n * n];
        let (mut dom, mut cod) = (Vec::new(), Vec::new());
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index[a * n + b] = Some(dom.len());
                    dom.push(a);
                    cod.push(b);
                }
            }
        }
        let m = dom.len();
        let identities = (0..n)
            .map(|a| index[a * n + a].expect("preorder must be reflexive"))
            .collect();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if cod[f] == dom[g] {
                    compose[g * m + f] = Some(
                        index[dom[f] * n + cod[g]].expect("preorder must be transitive"),
                    );
                }
            }
        }
        FinCat::build(n, dom, cod, identities, compose)
    }

    /// One-object category of a monoid given by its multiplication table
    /// (`table[g][f] = g·f`) with neutral element `unit`.
    pub fn from_monoid(table: &[Vec<usize>], unit: usize) -> Result<FinCat> {
        let m = table.len();
        let compose: Vec<Vec<Option<usize>>> = table
            .iter()
            .map(|row| row.iter().map(|&h| Some(h)).collect())
            .collect();
        FinCat::from_tables(1, &vec![(0, 0); m], &[unit], &compose)
    }

    /// The cyclic group of order `n` as a one-object category; morphism `k`
    /// is rotation by `k`.
    pub fn cyclic_group(n: usize) -> FinCat {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|g| (0..n).map(|f| (g + f) % n).collect())
            .collect();
        FinCat::from_monoid(&table, 0).expect("cyclic table is well formed")
    }

    pub fn object_count(&self) -> usize {
        self.0.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.0.dom.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.0.objects
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.0.dom.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.0.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.0.cod[f]
    }

    pub fn id(&self, x: usize) -> usize {
        self.0.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.0.identities[self.dom(f)] == f
    }

    /// Table entry for `g ∘ f`, if present.
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.0.compose[g * self.morphism_count() + f]
    }

    /// `g ∘ f` for composable morphisms of a valid category.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.0.homs[a * self.0.objects + b]
    }

    /// Position of `f` inside `hom(dom f, cod f)`.
    pub fn hom_position(&self, f: usize) -> usize {
        self.0.hom_pos[f]
    }

    /// The domain/codomain pairs, for serialization.
    pub fn morphism_endpoints(&self) -> Vec<(usize, usize)> {
        self.morphisms().map(|f| (self.dom(f), self.cod(f))).collect()
    }

    pub fn identities(&self) -> &[usize] {
        &self.0.identities
    }

    /// The composition table as rows `compose[g][f] = g ∘ f`.
    pub fn composition_rows(&self) -> Vec<Vec<Option<usize>>> {
        let m = self.morphism_count();
        (0..m)
            .map(|g| (0..m).map(|f| self.try_compose(g, f)).collect())
            .collect()
    }

    /// Whether every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.0.homs.iter().all(|h| h.len() <= 1)
    }

    /// Whether `f` has a two-sided inverse.
    pub fn is_iso(&self, f: usize) -> bool {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).iter().any(|&g| {
            self.try_compose(g, f) == Some(self.id(a)) && self.try_compose(f, g) == Some(self.id(b))
        })
    }

    /// An initial object, if one exists (the least index is returned).
    pub fn initial_object(&self) -> Option<usize> {
        self.objects()
            .find(|&a| self.objects().all(|b| self.hom(a, b).len() == 1))
    }
}

/// A failed category law, naming the offending morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum CategoryViolation {
    /// Entry `(g, f)` is present for a non-composable pair or missing for a
    /// composable one.
    CompositionDefinedness { g: usize, f: usize },
    /// `g ∘ f` has the wrong domain or codomain.
    CompositionEndpoints { g: usize, f: usize, composite: usize },
    /// The identity at `object` has the wrong endpoints.
    IdentityEndpoints { object: usize, identity: usize },
    /// `id ∘ f ≠ f` or `f ∘ id ≠ f`.
    Unit { identity: usize, f: usize },
    /// `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)`.
    Associativity {
        h: usize,
        g: usize,
        f: usize,
        left: usize,
        right: usize,
    },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::CompositionDefinedness { g, f } => {
                write!(fmt, "composition entry ({g},{f}) is defined iff not composable")
            }
            CategoryViolation::CompositionEndpoints { g, f, composite } => {
                write!(fmt, "{g}∘{f} = {composite} has wrong endpoints")
            }
            CategoryViolation::IdentityEndpoints { object, identity } => {
                write!(fmt, "identity {identity} of object {object} is not an endomorphism of it")
            }
            CategoryViolation::Unit { identity, f } => {
                write!(fmt, "unit law fails for identity {identity} and morphism {f}")
            }
            CategoryViolation::Associativity { h, g, f, left, right } => write!(
                fmt,
                "({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}"
            ),
        }
    }
}

/// Checks unit laws, associativity and table shape by exhaustive scan.
///
/// Associativity is only scanned once the table is well shaped, since
/// otherwise composites may not exist. Violations are listed in lexicographic
/// order of the morphisms involved.
pub fn validate_category(c: &FinCat) -> Report<CategoryViolation> {
    let mut report = Report::ok();
    for x in c.objects() {
        let i = c.id(x);
        if c.dom(i) != x || c.cod(i) != x {
            report.push(CategoryViolation::IdentityEndpoints {
                object: x,
                identity: i,
            });
        }
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            let composable = c.cod(f) == c.dom(g);
            match c.try_compose(g, f) {
                Some(h) if composable => {
                    if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                        report.push(CategoryViolation::CompositionEndpoints {
                            g,
                            f,
                            composite: h,
                        });
                    }
                }
                None if !composable => {}
                _ => report.push(CategoryViolation::CompositionDefinedness { g, f }),
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        if c.compose(c.id(b), f) != f {
            report.push(CategoryViolation::Unit {
                identity: c.id(b),
                f,
            });
        }
        if c.compose(f, c.id(a)) != f {
            report.push(CategoryViolation::Unit {
                identity: c.id(a),
                f,
            });
        }
    }
    for h in c.morphisms() {
        for g in c.hom_into_dom(h) {
            for f in c.hom_into_dom(g) {
                let left = c.compose(c.compose(h, g), f);
                let right = c.compose(h, c.compose(g, f));
                if left != right {
                    report.push(CategoryViolation::Associativity {
                        h,
                        g,
                        f,
                        left,
                        right,
                    });
                }
            }
        }
    }
    report
}

impl FinCat {
    /// Morphisms whose codomain is the domain of `g`, in index order.
    pub fn hom_into_dom(&self, g: usize) -> Vec<usize> {
        let x = self.dom(g);
        self.morphisms().filter(|&f| self.cod(f) == x).collect()
    }
}

/// The opposite category: endpoints swapped, composition reversed.
pub fn opposite(c: &FinCat) -> FinCat {
    let m = c.morphism_count();
    let mut compose = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            // g ∘op f = f ∘ g
            compose[g * m + f] = c.try_compose(f, g);
        }
    }
    FinCat::build(
        c.object_count(),
        c.0.cod.clone(),
        c.0.dom.clone(),
        c.0.identities.clone(),
        compose,
    )
}

/// Product category with the cap on its morphism count.
pub fn product(c: &FinCat, d: &FinCat, caps: &Caps) -> Result<FinCat> {
    let needed = c.morphism_count() * d.morphism_count();
    if needed > caps.max_morphisms {
        return Err(Error::CapacityExceeded {
            what: "product morphisms",
            needed,
            cap: caps.max_morphisms,
        });
    }
    Ok(product_uncapped(c, d))
}

/// Product category. Object `(x, y)` has index `x * |D₀| + y` and morphism
/// `(f, g)` has index `f * |D₁| + g`.
pub(crate) fn product_uncapped(c: &FinCat, d: &FinCat) -> FinCat {
    let (nd, md) = (d.object_count(), d.morphism_count());
    let m = c.morphism_count() * md;
    let mut dom = Vec::with_capacity(m);
    let mut cod = Vec::with_capacity(m);
    for f in c.morphisms() {
        for g in d.morphisms() {
            dom.push(c.dom(f) * nd + d.dom(g));
            cod.push(c.cod(f) * nd + d.cod(g));
        }
    }
    let identities = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.id(x) * md + d.id(y))
        .collect();
    let mut compose = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            let (g1, g2) = (g / md, g % md);
            let (f1, f2) = (f / md, f % md);
            if let (Some(h1), Some(h2)) = (c.try_compose(g1, f1), d.try_compose(g2, f2)) {
                compose[g * m + f] = Some(h1 * md + h2);
            }
        }
    }
    FinCat::build(c.object_count() * nd, dom, cod, identities, compose)
}
