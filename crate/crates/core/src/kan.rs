//! Yoneda triangles: absolute left Kan liftings, pointwise left Kan
//! extensions, and adjunctions.

use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fincat::{
    all_functors, comma_category, functor_transformations, is_universal_cocone, CoconeViolation,
    FinCat, Functor, FunctorTransformation, TransformationViolation,
};
use crate::report::Report;

/// `Y: A → Ā`, `F: A → B`, `G: B → Ā` and `η: Y ⇒ G∘F`.
///
/// The components of `η` are morphisms of `Ā`; they are not required to be
/// well typed, since the checks below report ill-typed components.
#[derive(Debug, Clone)]
pub struct YonedaTriangleData {
    pub y: Functor,
    pub f: Functor,
    pub g: Functor,
    pub eta: FunctorTransformation,
}

impl YonedaTriangleData {
    /// Checks that the three functors fit together and `η` has one
    /// in-range component per object of `A`.
    pub fn new(y: Functor, f: Functor, g: Functor, eta: FunctorTransformation) -> Result<Self> {
        if f.source != y.source || g.source != f.target || g.target != y.target {
            return Err(Error::InvalidInput(
                "functors do not form a triangle A → B → Ā".into(),
            ));
        }
        if eta.components.len() != y.source.object_count()
            || eta.components.iter().any(|&c| c >= y.target.morphism_count())
        {
            return Err(Error::InvalidInput("eta has the wrong shape".into()));
        }
        Ok(YonedaTriangleData { y, f, g, eta })
    }

    fn gf(&self) -> Functor {
        self.f.then(&self.g)
    }

    fn eta_typed(&self, a: usize) -> bool {
        let bar = &self.y.target;
        let c = self.eta.components[a];
        bar.dom(c) == self.y.object(a) && bar.cod(c) == self.g.object(self.f.object(a))
    }

    /// The triangle restricted along `k: K → A`.
    pub fn restrict(&self, k: &Functor) -> Result<YonedaTriangleData> {
        if k.target != self.y.source {
            return Err(Error::InvalidInput("restriction functor does not land in A".into()));
        }
        YonedaTriangleData::new(
            k.then(&self.y),
            k.then(&self.f),
            self.g.clone(),
            FunctorTransformation {
                components: k.objects.iter().map(|&a| self.eta.components[a]).collect(),
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LiftingViolation {
    /// `η_a` is not a morphism `Y a → G F a`.
    EtaComponent { object: usize },
    /// `η` fails naturality at this morphism of `A`.
    EtaNaturality { morphism: usize },
    /// `|hom_B(F a, b)| ≠ |hom_Ā(Y a, G b)|`.
    HomCardinality {
        a: usize,
        b: usize,
        lifted: usize,
        target: usize,
    },
    /// `α ↦ G(α)∘η_a` sends two morphisms to the same one.
    NotInjective { a: usize, b: usize },
    /// The square for `m: a' → a` fails at `α: F a → b`.
    SquareInA { morphism: usize, alpha: usize },
    /// The square for `β: b → b'` fails at `α: F a → b`.
    SquareInB { morphism: usize, alpha: usize },
}

impl fmt::Display for LiftingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftingViolation::EtaComponent { object } => {
                write!(f, "eta at object {object} is not a morphism Y a → G F a")
            }
            LiftingViolation::EtaNaturality { morphism } => {
                write!(f, "eta is not natural at morphism {morphism}")
            }
            LiftingViolation::HomCardinality {
                a,
                b,
                lifted,
                target,
            } => write!(
                f,
                "hom(F {a}, {b}) has {lifted} elements but hom(Y {a}, G {b}) has {target}"
            ),
            LiftingViolation::NotInjective { a, b } => {
                write!(f, "transposition hom(F {a}, {b}) → hom(Y {a}, G {b}) is not injective")
            }
            LiftingViolation::SquareInA { morphism, alpha } => {
                write!(f, "transposition is not natural in a at morphism {morphism} (alpha {alpha})")
            }
            LiftingViolation::SquareInB { morphism, alpha } => {
                write!(f, "transposition is not natural in b at morphism {morphism} (alpha {alpha})")
            }
        }
    }
}

/// Checks that `α ↦ G(α)∘η_a` is a bijection `hom_B(F a, b) → hom_Ā(Y a, G b)`
/// natural in `a` and `b`.
pub fn check_absolute_lifting(t: &YonedaTriangleData) -> Report<LiftingViolation> {
    let (a_cat, b_cat, bar) = (&t.y.source, &t.f.target, &t.y.target);
    let mut report = Report::ok();
    for a in a_cat.objects() {
        if !t.eta_typed(a) {
            report.push(LiftingViolation::EtaComponent { object: a });
        }
    }
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            let lifted = b_cat.hom(t.f.object(a), b).len();
            let target = bar.hom(t.y.object(a), t.g.object(b)).len();
            if lifted != target {
                report.push(LiftingViolation::HomCardinality {
                    a,
                    b,
                    lifted,
                    target,
                });
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    let transpose = |a: usize, alpha: usize| bar.compose(t.g.morphism(alpha), t.eta.components[a]);
    if let Some(TransformationViolation::Naturality { morphism }) =
        t.eta.validate(&t.y, &t.gf()).first().cloned()
    {
        report.push(LiftingViolation::EtaNaturality { morphism });
    }
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            let mut seen: Vec<usize> = b_cat
                .hom(t.f.object(a), b)
                .iter()
                .map(|&alpha| transpose(a, alpha))
                .collect();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != b_cat.hom(t.f.object(a), b).len() {
                report.push(LiftingViolation::NotInjective { a, b });
            }
        }
    }
    for m in a_cat.morphisms() {
        let (a1, a) = (a_cat.dom(m), a_cat.cod(m));
        for b in b_cat.objects() {
            for &alpha in b_cat.hom(t.f.object(a), b) {
                let left = transpose(a1, b_cat.compose(alpha, t.f.morphism(m)));
                let right = bar.compose(transpose(a, alpha), t.y.morphism(m));
                if left != right {
                    report.push(LiftingViolation::SquareInA { morphism: m, alpha });
                }
            }
        }
    }
    for beta in b_cat.morphisms() {
        for a in a_cat.objects() {
            for &alpha in b_cat.hom(t.f.object(a), b_cat.dom(beta)) {
                let left = transpose(a, b_cat.compose(beta, alpha));
                let right = bar.compose(t.g.morphism(beta), transpose(a, alpha));
                if left != right {
                    report.push(LiftingViolation::SquareInB {
                        morphism: beta,
                        alpha,
                    });
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ExtensionViolation {
    /// The leg `G(k)∘η_a` at comma object `(a, k)` over `b` is undefined
    /// because `η_a` is ill typed.
    LegUndefined { b: usize, a: usize, k: usize },
    /// The legs over `b` fail the universal property.
    Cocone { b: usize, violation: CoconeViolation },
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionViolation::LegUndefined { b, a, k } => {
                write!(f, "over {b}: leg at ({a}, {k}) is undefined (eta at {a} is ill typed)")
            }
            ExtensionViolation::Cocone { b, violation } => write!(f, "over {b}: {violation}"),
        }
    }
}

/// Checks that each `G b` is the colimit of `Y∘π` over `F ↓ b` with legs
/// `G(k)∘η_a`.
pub fn check_pointwise_extension(
    t: &YonedaTriangleData,
    caps: &Caps,
) -> Result<Report<ExtensionViolation>> {
    let bar = &t.y.target;
    let mut report = Report::ok();
    for b in t.f.target.objects() {
        let comma = comma_category(&t.f, b);
        let diagram = comma.projection.then(&t.y);
        let mut legs = Vec::with_capacity(comma.labels.len());
        for &(a, k) in &comma.labels {
            if t.eta_typed(a) {
                legs.push(bar.compose(t.g.morphism(k), t.eta.components[a]));
            } else {
                report.push(ExtensionViolation::LegUndefined { b, a, k });
            }
        }
        if legs.len() != comma.labels.len() {
            continue;
        }
        let cocone = is_universal_cocone(&diagram, t.g.object(b), &legs, caps)?;
        report.extend(cocone.map(|violation| ExtensionViolation::Cocone { b, violation }));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "half", rename_all = "snake_case")]
pub enum TriangleViolation {
    AbsoluteLifting { violation: LiftingViolation },
    PointwiseExtension { violation: ExtensionViolation },
}

impl fmt::Display for TriangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleViolation::AbsoluteLifting { violation } => {
                write!(f, "absolute lifting: {violation}")
            }
            TriangleViolation::PointwiseExtension { violation } => {
                write!(f, "pointwise extension: {violation}")
            }
        }
    }
}

/// Both halves of the Yoneda-triangle condition.
pub fn check_yoneda_triangle(
    t: &YonedaTriangleData,
    caps: &Caps,
) -> Result<Report<TriangleViolation>> {
    let mut report =
        check_absolute_lifting(t).map(|violation| TriangleViolation::AbsoluteLifting { violation });
    report.extend(
        check_pointwise_extension(t, caps)?
            .map(|violation| TriangleViolation::PointwiseExtension { violation }),
    );
    Ok(report)
}

/// `f ⊣ g` with unit `η_a: a → g f a` and counit `ε_b: f g b → b`.
#[derive(Debug, Clone)]
pub struct AdjunctionData {
    pub f: Functor,
    pub g: Functor,
    pub unit: FunctorTransformation,
    pub counit: FunctorTransformation,
}

impl AdjunctionData {
    pub fn new(
        f: Functor,
        g: Functor,
        unit: FunctorTransformation,
        counit: FunctorTransformation,
    ) -> Result<Self> {
        if g.source != f.target || g.target != f.source {
            return Err(Error::InvalidInput("functors are not opposed".into()));
        }
        let in_range = |t: &FunctorTransformation, n: usize, c: &FinCat| {
            t.components.len() == n && t.components.iter().all(|&k| k < c.morphism_count())
        };
        if !in_range(&unit, f.source.object_count(), &f.source)
            || !in_range(&counit, f.target.object_count(), &f.target)
        {
            return Err(Error::InvalidInput("unit or counit has the wrong shape".into()));
        }
        Ok(AdjunctionData { f, g, unit, counit })
    }

    pub fn identity(c: &FinCat) -> Self {
        let id = Functor::identity(c);
        let unit = FunctorTransformation::identity(&id);
        AdjunctionData {
            f: id.clone(),
            g: id,
            unit: unit.clone(),
            counit: unit,
        }
    }

    /// The triangle `⟨Id, f, g, η⟩`.
    pub fn triangle(&self) -> YonedaTriangleData {
        YonedaTriangleData {
            y: Functor::identity(&self.f.source),
            f: self.f.clone(),
            g: self.g.clone(),
            eta: self.unit.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum AdjunctionViolation {
    Unit { violation: TransformationViolation },
    Counit { violation: TransformationViolation },
    /// `ε_{f a} ∘ f(η_a) ≠ id_{f a}`.
    LeftTriangle { object: usize },
    /// `g(ε_b) ∘ η_{g b} ≠ id_{g b}`.
    RightTriangle { object: usize },
}

impl fmt::Display for AdjunctionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjunctionViolation::Unit { violation } => write!(f, "unit: {violation}"),
            AdjunctionViolation::Counit { violation } => write!(f, "counit: {violation}"),
            AdjunctionViolation::LeftTriangle { object } => {
                write!(f, "triangle identity for f fails at object {object}")
            }
            AdjunctionViolation::RightTriangle { object } => {
                write!(f, "triangle identity for g fails at object {object}")
            }
        }
    }
}

/// Naturality of unit and counit and both triangle identities.
pub fn check_adjunction(d: &AdjunctionData) -> Report<AdjunctionViolation> {
    let (a_cat, b_cat) = (&d.f.source, &d.f.target);
    let gf = d.f.then(&d.g);
    let fg = d.g.then(&d.f);
    let mut report = d
        .unit
        .validate(&Functor::identity(a_cat), &gf)
        .map(|violation| AdjunctionViolation::Unit { violation });
    report.extend(
        d.counit
            .validate(&fg, &Functor::identity(b_cat))
            .map(|violation| AdjunctionViolation::Counit { violation }),
    );
    if !report.is_ok() {
        return report;
    }
    for a in a_cat.objects() {
        let composite = b_cat.compose(
            d.counit.components[d.f.object(a)],
            d.f.morphism(d.unit.components[a]),
        );
        if composite != b_cat.id(d.f.object(a)) {
            report.push(AdjunctionViolation::LeftTriangle { object: a });
        }
    }
    for b in b_cat.objects() {
        let composite = a_cat.compose(
            d.g.morphism(d.counit.components[b]),
            d.unit.components[d.g.object(b)],
        );
        if composite != a_cat.id(d.g.object(b)) {
            report.push(AdjunctionViolation::RightTriangle { object: b });
        }
    }
    report
}

/// The first right adjoint of `f` in lexicographic order of functors, with
/// the first verified unit and counit.
pub fn adjoint_oracle(f: &Functor, caps: &Caps) -> Result<Option<AdjunctionData>> {
    let (a_cat, b_cat) = (&f.source, &f.target);
    for g in all_functors(b_cat, a_cat, caps)? {
        let gf = f.then(&g);
        let fg = g.then(f);
        let units = functor_transformations(&Functor::identity(a_cat), &gf, caps)?;
        if units.is_empty() {
            continue;
        }
        let counits = functor_transformations(&fg, &Functor::identity(b_cat), caps)?;
        for unit in &units {
            for counit in &counits {
                let d = AdjunctionData {
                    f: f.clone(),
                    g: g.clone(),
                    unit: unit.clone(),
                    counit: counit.clone(),
                };
                if check_adjunction(&d).is_ok() {
                    return Ok(Some(d));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_to_terminal(top: usize) -> YonedaTriangleData {
        let c = FinCat::chain(2);
        let eta = FunctorTransformation {
            components: (0..2)
                .map(|a| c.hom(a, top).first().copied().unwrap_or(c.id(a)))
                .collect(),
        };
        YonedaTriangleData::new(
            Functor::identity(&c),
            Functor::to_terminal(&c),
            Functor::pick(&c, top),
            eta,
        )
        .unwrap()
    }

    fn identity_triangle(c: &FinCat) -> YonedaTriangleData {
        AdjunctionData::identity(c).triangle()
    }

    #[test]
    fn absolute_lifting_examples() {
        assert!(check_absolute_lifting(&identity_triangle(&FinCat::terminal())).is_ok());
        assert!(check_absolute_lifting(&chain_to_terminal(1)).is_ok());
        let d = FinCat::discrete(2);
        let t = YonedaTriangleData::new(
            Functor::identity(&d),
            Functor::to_terminal(&d),
            Functor::pick(&d, 0),
            FunctorTransformation {
                components: vec![d.id(0), d.id(1)],
            },
        )
        .unwrap();
        let report = check_absolute_lifting(&t);
        assert!(report.violations.contains(&LiftingViolation::HomCardinality {
            a: 1,
            b: 0,
            lifted: 1,
            target: 0
        }));
        let full = check_yoneda_triangle(&t, &Caps::default()).unwrap();
        assert!(matches!(
            full.first(),
            Some(TriangleViolation::AbsoluteLifting { .. })
        ));
    }

    #[test]
    fn pointwise_extension_examples() {
        let caps = Caps::default();
        assert!(check_pointwise_extension(&identity_triangle(&FinCat::terminal()), &caps)
            .unwrap()
            .is_ok());
        assert!(check_pointwise_extension(&chain_to_terminal(1), &caps).unwrap().is_ok());
        assert!(!check_pointwise_extension(&chain_to_terminal(0), &caps).unwrap().is_ok());
        assert!(check_yoneda_triangle(&chain_to_terminal(1), &caps).unwrap().is_ok());
    }

    #[test]
    fn adjunction_examples() {
        let c = FinCat::chain(3);
        assert!(check_adjunction(&AdjunctionData::identity(&c)).is_ok());
        let caps = Caps::default();
        let two = FinCat::chain(2);
        let bang = Functor::to_terminal(&two);
        let found = adjoint_oracle(&bang, &caps).unwrap().unwrap();
        assert_eq!(found.g.objects, vec![1]);
        assert!(check_absolute_lifting(&found.triangle()).is_ok());
        // g = bottom admits no unit at all
        let bottom = Functor::pick(&two, 0);
        assert!(functor_transformations(&Functor::identity(&two), &bang.then(&bottom), &caps)
            .unwrap()
            .is_empty());
        let d = AdjunctionData::new(
            bang.clone(),
            bottom,
            FunctorTransformation {
                components: vec![two.id(0), two.id(1)],
            },
            FunctorTransformation {
                components: vec![0],
            },
        )
        .unwrap();
        assert!(!check_adjunction(&d).is_ok());
        let disc = FinCat::discrete(2);
        assert!(adjoint_oracle(&Functor::to_terminal(&disc), &caps).unwrap().is_none());
        let id = adjoint_oracle(&Functor::identity(&c), &caps).unwrap().unwrap();
        assert_eq!(id.g, Functor::identity(&c));
    }

    #[test]
    fn restriction_preserves_lifting() {
        let t = chain_to_terminal(1);
        let c = FinCat::chain(2);
        for k in all_functors(&FinCat::chain(2), &c, &Caps::default()).unwrap() {
            assert!(check_absolute_lifting(&t.restrict(&k).unwrap()).is_ok());
        }
    }
}
