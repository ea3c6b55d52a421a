use std::fmt;

use serde::Serialize;

use super::category::FinCat;
use super::functor::Functor;
use super::search::{Search, Side};
use crate::caps::Caps;
use crate::error::Result;
use crate::report::Report;

/// The comma category `F ↓ b` with its projection to the source of `F`.
#[derive(Debug, Clone)]
pub struct Comma {
    pub category: FinCat,
    pub projection: Functor,
    /// `labels[i] = (a, k)` with `k: F a → b`.
    pub labels: Vec<(usize, usize)>,
}

/// Objects are pairs `(a, k: F a → b)` in lexicographic order; morphisms
/// `(a, k) → (a', k')` are the `m: a → a'` with `k' ∘ F(m) = k`.
pub fn comma_category(f: &Functor, b: usize) -> Comma {
    let (a_cat, b_cat) = (&f.source, &f.target);
    let mut labels = Vec::new();
    for a in a_cat.objects() {
        for &k in b_cat.hom(f.object(a), b) {
            labels.push((a, k));
        }
    }
    let n = labels.len();
    let mut endpoints = Vec::new();
    let mut underlying = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, &(a, k)) in labels.iter().enumerate() {
        for (j, &(a1, k1)) in labels.iter().enumerate() {
            for &m in a_cat.hom(a, a1) {
                if b_cat.compose(k1, f.morphism(m)) == k {
                    index.insert((i, m), endpoints.len());
                    endpoints.push((i, j));
                    underlying.push(m);
                }
            }
        }
    }
    let identities: Vec<usize> = (0..n)
        .map(|i| index[&(i, a_cat.id(labels[i].0))])
        .collect();
    let count = endpoints.len();
    let compose: Vec<Vec<Option<usize>>> = (0..count)
        .map(|g| {
            (0..count)
                .map(|h| {
                    (endpoints[h].1 == endpoints[g].0).then(|| {
                        index[&(endpoints[h].0, a_cat.compose(underlying[g], underlying[h]))]
                    })
                })
                .collect()
        })
        .collect();
    let category = FinCat::from_tables(n, &endpoints, &identities, &compose)
        .expect("comma category tables are well formed");
    let projection = Functor {
        source: category.clone(),
        target: a_cat.clone(),
        objects: labels.iter().map(|&(a, _)| a).collect(),
        morphisms: underlying,
    };
    Comma {
        category,
        projection,
        labels,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum CoconeViolation {
    /// The leg at `object` is not a morphism `D(object) → apex`.
    LegType { object: usize },
    /// `leg(cod u) ∘ D(u) ≠ leg(dom u)`.
    Commutation { morphism: usize },
    /// The cocone `legs` into `target` has `mediators` factorizations
    /// through the apex instead of exactly one.
    Mediators {
        target: usize,
        legs: Vec<usize>,
        mediators: usize,
    },
}

impl fmt::Display for CoconeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoconeViolation::LegType { object } => {
                write!(f, "leg at diagram object {object} has the wrong type")
            }
            CoconeViolation::Commutation { morphism } => {
                write!(f, "legs do not commute with diagram morphism {morphism}")
            }
            CoconeViolation::Mediators {
                target,
                legs,
                mediators,
            } => write!(
                f,
                "cocone {legs:?} into object {target} has {mediators} mediating morphisms"
            ),
        }
    }
}

/// Checks that `legs[j]: D(j) → apex` is a colimiting cocone over `diagram`.
pub fn is_universal_cocone(
    diagram: &Functor,
    apex: usize,
    legs: &[usize],
    caps: &Caps,
) -> Result<Report<CoconeViolation>> {
    let (j_cat, c) = (&diagram.source, &diagram.target);
    let mut report = Report::ok();
    for j in j_cat.objects() {
        let ok = legs
            .get(j)
            .is_some_and(|&l| l < c.morphism_count() && c.dom(l) == diagram.object(j) && c.cod(l) == apex);
        if !ok {
            report.push(CoconeViolation::LegType { object: j });
        }
    }
    if legs.len() != j_cat.object_count() || !report.is_ok() {
        return Ok(report);
    }
    for u in j_cat.morphisms() {
        if c.compose(legs[j_cat.cod(u)], diagram.morphism(u)) != legs[j_cat.dom(u)] {
            report.push(CoconeViolation::Commutation { morphism: u });
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    for target in c.objects() {
        for cocone in cocones(diagram, target, caps)? {
            let mediators = c
                .hom(apex, target)
                .iter()
                .filter(|&&h| {
                    j_cat
                        .objects()
                        .all(|j| c.compose(h, legs[j]) == cocone[j])
                })
                .count();
            if mediators != 1 {
                report.push(CoconeViolation::Mediators {
                    target,
                    legs: cocone,
                    mediators,
                });
            }
        }
    }
    Ok(report)
}

/// All cocones over `diagram` with vertex `target`, as leg morphisms.
fn cocones(diagram: &Functor, target: usize, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let (j_cat, c) = (&diagram.source, &diagram.target);
    let homs: Vec<&[usize]> = j_cat
        .objects()
        .map(|j| c.hom(diagram.object(j), target))
        .collect();
    let mut search = Search::new(homs.iter().map(|h| h.len()).collect());
    for u in j_cat.morphisms() {
        if j_cat.is_identity(u) {
            continue;
        }
        let (j, j1) = (j_cat.dom(u), j_cat.cod(u));
        let pull: Vec<usize> = homs[j1]
            .iter()
            .map(|&k| c.hom_position(c.compose(k, diagram.morphism(u))))
            .collect();
        search.constrain(j1, Side::Map(pull), j, Side::Value);
    }
    Ok(search
        .solve_all(caps.max_enum, "cocones")?
        .into_iter()
        .map(|sol| sol.iter().enumerate().map(|(j, &k)| homs[j][k]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comma_over_point_is_discrete() {
        let g = FinCat::cyclic_group(3);
        let x = Functor::pick(&g, 0);
        let comma = comma_category(&x, 0);
        assert_eq!(comma.category.object_count(), 3);
        assert_eq!(comma.category.morphism_count(), 3);
    }

    #[test]
    fn comma_of_identity_over_top_is_whole_chain() {
        let c = FinCat::chain(2);
        let comma = comma_category(&Functor::identity(&c), 1);
        assert_eq!(comma.category.object_count(), 2);
        assert_eq!(comma.category.morphism_count(), 3);
        assert_eq!(comma.projection.objects, vec![0, 1]);
        assert!(comma.projection.validate().is_ok());
        let below = comma_category(&Functor::identity(&c), 0);
        assert_eq!(below.category.object_count(), 1);
    }

    #[test]
    fn empty_comma() {
        let c = FinCat::chain(2);
        let top = Functor::pick(&c, 1);
        let comma = comma_category(&top, 0);
        assert_eq!(comma.category.object_count(), 0);
    }

    #[test]
    fn cocone_examples() {
        let caps = Caps::default();
        let c = FinCat::chain(2);
        let p0 = Functor::pick(&c, 0);
        assert!(is_universal_cocone(&p0, 0, &[c.id(0)], &caps).unwrap().is_ok());
        let up = c.hom(0, 1)[0];
        let report = is_universal_cocone(&p0, 1, &[up], &caps).unwrap();
        assert_eq!(
            report.first(),
            Some(&CoconeViolation::Mediators {
                target: 0,
                legs: vec![c.id(0)],
                mediators: 0
            })
        );
        let empty = Functor {
            source: FinCat::empty(),
            target: c.clone(),
            objects: vec![],
            morphisms: vec![],
        };
        assert!(is_universal_cocone(&empty, 0, &[], &caps).unwrap().is_ok());
        assert!(!is_universal_cocone(&empty, 1, &[], &caps).unwrap().is_ok());
    }

    #[test]
    fn top_of_chain_is_colimit_of_chain() {
        let c = FinCat::chain(3);
        let legs: Vec<usize> = (0..3).map(|a| c.hom(a, 2)[0]).collect();
        let report = is_universal_cocone(&Functor::identity(&c), 2, &legs, &Caps::default()).unwrap();
        assert!(report.is_ok());
    }
}
