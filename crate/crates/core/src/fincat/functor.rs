use std::fmt;

use serde::Serialize;

use super::category::FinCat;
use super::search::{Search, Side};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::Report;

/// A functor between finite categories, as object and morphism index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCat,
    pub target: FinCat,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    Shape { message: String },
    Endpoints { morphism: usize },
    Identity { object: usize },
    Composition { g: usize, f: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Shape { message } => write!(f, "{message}"),
            FunctorViolation::Endpoints { morphism } => {
                write!(f, "image of morphism {morphism} has wrong endpoints")
            }
            FunctorViolation::Identity { object } => {
                write!(f, "identity at object {object} is not preserved")
            }
            FunctorViolation::Composition { g, f: ff } => {
                write!(f, "composite {g}∘{ff} is not preserved")
            }
        }
    }
}

impl Functor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Functor> {
        let f = Functor {
            source,
            target,
            objects,
            morphisms,
        };
        let report = f.validate();
        if let Some(v) = report.first() {
            return Err(Error::InvalidInput(format!("not a functor: {v}")));
        }
        Ok(f)
    }

    pub fn identity(c: &FinCat) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            objects: c.objects().collect(),
            morphisms: c.morphisms().collect(),
        }
    }

    /// The functor from `c` to the terminal category.
    pub fn to_terminal(c: &FinCat) -> Functor {
        Functor {
            source: c.clone(),
            target: FinCat::terminal(),
            objects: vec![0; c.object_count()],
            morphisms: vec![0; c.morphism_count()],
        }
    }

    /// The functor from the terminal category picking object `x`.
    pub fn pick(c: &FinCat, x: usize) -> Functor {
        Functor {
            source: FinCat::terminal(),
            target: c.clone(),
            objects: vec![x],
            morphisms: vec![c.id(x)],
        }
    }

    /// The functor sending everything to the identity at `x`.
    pub fn constant(source: &FinCat, target: &FinCat, x: usize) -> Functor {
        Functor {
            source: source.clone(),
            target: target.clone(),
            objects: vec![x; source.object_count()],
            morphisms: vec![target.id(x); source.morphism_count()],
        }
    }

    /// The functor between thin categories induced by an object map; `None`
    /// if the map is not monotone.
    pub fn between_thin(source: &FinCat, target: &FinCat, objects: Vec<usize>) -> Option<Functor> {
        let morphisms = source
            .morphisms()
            .map(|f| {
                target
                    .hom(objects[source.dom(f)], objects[source.cod(f)])
                    .first()
                    .copied()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Functor {
            source: source.clone(),
            target: target.clone(),
            objects,
            morphisms,
        })
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        assert_eq!(self.target, other.source, "functors are not composable");
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }

    pub fn validate(&self) -> Report<FunctorViolation> {
        let (s, t) = (&self.source, &self.target);
        let mut report = Report::ok();
        if self.objects.len() != s.object_count()
            || self.morphisms.len() != s.morphism_count()
            || self.objects.iter().any(|&x| x >= t.object_count())
            || self.morphisms.iter().any(|&f| f >= t.morphism_count())
        {
            report.push(FunctorViolation::Shape {
                message: "functor maps have wrong length or out-of-range entries".into(),
            });
            return report;
        }
        for f in s.morphisms() {
            let g = self.morphisms[f];
            if t.dom(g) != self.objects[s.dom(f)] || t.cod(g) != self.objects[s.cod(f)] {
                report.push(FunctorViolation::Endpoints { morphism: f });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for x in s.objects() {
            if self.morphisms[s.id(x)] != t.id(self.objects[x]) {
                report.push(FunctorViolation::Identity { object: x });
            }
        }
        for g in s.morphisms() {
            for f in s.hom_into_dom(g) {
                let lhs = self.morphisms[s.compose(g, f)];
                let rhs = t.compose(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    report.push(FunctorViolation::Composition { g, f });
                }
            }
        }
        report
    }
}

/// Every functor `source → target`, lexicographic over object maps and then
/// morphism maps.
pub fn all_functors(source: &FinCat, target: &FinCat, caps: &Caps) -> Result<Vec<Functor>> {
    let (n, m) = (source.object_count(), source.morphism_count());
    let nt = target.object_count();
    let mut out = Vec::new();
    if n > 0 && nt == 0 {
        return Ok(out);
    }
    // composition triples (g, f, g∘f), checked when the largest index is set
    let mut triples: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); m];
    for g in source.morphisms() {
        for f in source.hom_into_dom(g) {
            let h = source.compose(g, f);
            triples[g.max(f).max(h)].push((g, f, h));
        }
    }
    let mut objects = vec![0; n];
    let mut total = 0usize;
    loop {
        // for this object map, enumerate morphism assignments
        let mut morphisms = vec![0; m];
        enumerate_morphisms(source, target, &objects, &triples, 0, &mut morphisms, &mut |mm| {
            total += 1;
            if total > caps.max_enum {
                return false;
            }
            out.push(Functor {
                source: source.clone(),
                target: target.clone(),
                objects: objects.clone(),
                morphisms: mm.to_vec(),
            });
            true
        });
        if total > caps.max_enum {
            return Err(Error::EnumerationCapExceeded {
                what: "functors",
                cap: caps.max_enum,
            });
        }
        // next object map in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            objects[i] += 1;
            if objects[i] < nt {
                break;
            }
            objects[i] = 0;
        }
    }
}

fn enumerate_morphisms(
    s: &FinCat,
    t: &FinCat,
    objects: &[usize],
    triples: &[Vec<(usize, usize, usize)>],
    k: usize,
    morphisms: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == s.morphism_count() {
        return visit(morphisms);
    }
    let candidates: Vec<usize> = if s.is_identity(k) {
        vec![t.id(objects[s.dom(k)])]
    } else {
        t.hom(objects[s.dom(k)], objects[s.cod(k)]).to_vec()
    };
    for c in candidates {
        morphisms[k] = c;
        let ok = triples[k]
            .iter()
            .all(|&(g, f, h)| morphisms[h] == t.compose(morphisms[g], morphisms[f]));
        if ok && !enumerate_morphisms(s, t, objects, triples, k + 1, morphisms, visit) {
            return false;
        }
    }
    true
}

/// A natural transformation between parallel functors: one target morphism
/// per source object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FunctorTransformation {
    pub components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum TransformationViolation {
    Shape,
    Component { object: usize },
    Naturality { morphism: usize },
}

impl fmt::Display for TransformationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformationViolation::Shape => write!(f, "wrong number of components"),
            TransformationViolation::Component { object } => {
                write!(f, "component at object {object} has wrong type")
            }
            TransformationViolation::Naturality { morphism } => {
                write!(f, "naturality square fails at morphism {morphism}")
            }
        }
    }
}

impl FunctorTransformation {
    pub fn identity(f: &Functor) -> Self {
        FunctorTransformation {
            components: f.objects.iter().map(|&x| f.target.id(x)).collect(),
        }
    }

    /// Checks component types and every naturality square.
    pub fn validate(&self, from: &Functor, to: &Functor) -> Report<TransformationViolation> {
        let (s, t) = (&from.source, &from.target);
        let mut report = Report::ok();
        if self.components.len() != s.object_count()
            || self.components.iter().any(|&c| c >= t.morphism_count())
        {
            report.push(TransformationViolation::Shape);
            return report;
        }
        for a in s.objects() {
            let c = self.components[a];
            if t.dom(c) != from.objects[a] || t.cod(c) != to.objects[a] {
                report.push(TransformationViolation::Component { object: a });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for m in s.morphisms() {
            let (a, b) = (s.dom(m), s.cod(m));
            let lhs = t.compose(to.morphisms[m], self.components[a]);
            let rhs = t.compose(self.components[b], from.morphisms[m]);
            if lhs != rhs {
                report.push(TransformationViolation::Naturality { morphism: m });
            }
        }
        report
    }

    /// Vertical composite `other · self`.
    pub fn then(&self, other: &FunctorTransformation, target: &FinCat) -> FunctorTransformation {
        FunctorTransformation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| target.compose(b, a))
                .collect(),
        }
    }
}

fn transformation_search(from: &Functor, to: &Functor) -> Search {
    let (s, t) = (&from.source, &from.target);
    let domains = s
        .objects()
        .map(|a| t.hom(from.objects[a], to.objects[a]).len())
        .collect();
    let mut search = Search::new(domains);
    for m in s.morphisms() {
        let (a, b) = (s.dom(m), s.cod(m));
        let hom_a = t.hom(from.objects[a], to.objects[a]);
        let hom_b = t.hom(from.objects[b], to.objects[b]);
        // to(m) ∘ η_a == η_b ∘ from(m), compared by index in hom(from a, to b)
        let left: Vec<usize> = hom_a
            .iter()
            .map(|&c| t.compose(to.morphisms[m], c))
            .collect();
        let right: Vec<usize> = hom_b
            .iter()
            .map(|&c| t.compose(c, from.morphisms[m]))
            .collect();
        search.constrain(a, Side::Map(left), b, Side::Map(right));
    }
    search
}

fn components_from(from: &Functor, to: &Functor, sol: &[usize]) -> FunctorTransformation {
    let t = &from.target;
    FunctorTransformation {
        components: sol
            .iter()
            .enumerate()
            .map(|(a, &k)| t.hom(from.objects[a], to.objects[a])[k])
            .collect(),
    }
}

/// Every natural transformation `from ⇒ to`, in lexicographic order of
/// component indices.
pub fn functor_transformations(
    from: &Functor,
    to: &Functor,
    caps: &Caps,
) -> Result<Vec<FunctorTransformation>> {
    Ok(transformation_search(from, to)
        .solve_all(caps.max_enum, "natural transformations")?
        .iter()
        .map(|sol| components_from(from, to, sol))
        .collect())
}

/// First natural transformation `from ⇒ to` all of whose components are
/// isomorphisms.
pub fn find_functor_iso(
    from: &Functor,
    to: &Functor,
    caps: &Caps,
) -> Result<Option<FunctorTransformation>> {
    let t = &from.target;
    let mut search = transformation_search(from, to);
    // restrict each domain to isomorphisms by forcing a non-iso value to clash
    for a in from.source.objects() {
        let hom = t.hom(from.objects[a], to.objects[a]);
        let marks: Vec<usize> = hom.iter().map(|&c| usize::from(t.is_iso(c))).collect();
        search.constrain(a, Side::Map(marks), a, Side::Map(vec![1; hom.len()]));
    }
    Ok(search
        .first(caps.max_enum, "natural isomorphisms")?
        .map(|sol| components_from(from, to, &sol)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thin_functors() {
        let c = FinCat::chain(2);
        let t = FinCat::terminal();
        let all = all_functors(&c, &t, &Caps::default()).unwrap();
        assert_eq!(all.len(), 1);
        let back = all_functors(&t, &c, &Caps::default()).unwrap();
        assert_eq!(back.len(), 2);
        // monotone maps chain(2) → chain(2): 00, 01, 11
        assert_eq!(all_functors(&c, &c, &Caps::default()).unwrap().len(), 3);
        for f in all_functors(&c, &c, &Caps::default()).unwrap() {
            assert!(f.validate().is_ok());
        }
    }

    #[test]
    fn group_endomorphisms() {
        // endomorphisms of Z3 as one-object category: 3
        let g = FinCat::cyclic_group(3);
        assert_eq!(all_functors(&g, &g, &Caps::default()).unwrap().len(), 3);
    }

    #[test]
    fn bad_functor_is_rejected() {
        let c = FinCat::chain(2);
        assert!(Functor::new(c.clone(), c.clone(), vec![1, 0], vec![2, 1, 0]).is_err());
        assert!(Functor::new(c.clone(), c.clone(), vec![0], vec![]).is_err());
    }

    #[test]
    fn transformations_between_points() {
        let c = FinCat::chain(2);
        let p0 = Functor::pick(&c, 0);
        let p1 = Functor::pick(&c, 1);
        let caps = Caps::default();
        assert_eq!(functor_transformations(&p0, &p1, &caps).unwrap().len(), 1);
        assert_eq!(functor_transformations(&p1, &p0, &caps).unwrap().len(), 0);
        assert!(find_functor_iso(&p0, &p1, &caps).unwrap().is_none());
        assert!(find_functor_iso(&p0, &p0, &caps).unwrap().is_some());
    }

    #[test]
    fn transformation_validation() {
        let c = FinCat::chain(2);
        let id = Functor::identity(&c);
        let top = Functor::constant(&c, &c, 1);
        // η_a : a → 1
        let eta = FunctorTransformation {
            components: vec![c.hom(0, 1)[0], c.id(1)],
        };
        assert!(eta.validate(&id, &top).is_ok());
        let bad = FunctorTransformation {
            components: vec![c.id(0), c.id(1)],
        };
        assert!(!bad.validate(&id, &top).is_ok());
    }
}
