use std::fmt;

use serde::Serialize;

use super::category::{opposite, product_uncapped, FinCat};
use super::presheaf::Presheaf;
use super::search::{Search, Side};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::Report;

/// A functor `T: D^op × D → FinSet`, contravariant in the first argument and
/// covariant in the second. Elements of `T(d', d)` are `0..size(d', d)`.
pub trait Bifunctor {
    fn base(&self) -> &FinCat;

    fn size(&self, contra: usize, co: usize) -> usize;

    /// `T(p, id_e): T(cod p, e) → T(dom p, e)`.
    fn act_contra(&self, p: usize, e: usize, t: usize) -> usize;

    /// `T(id_d, q): T(d, dom q) → T(d, cod q)`.
    fn act_co(&self, d: usize, q: usize, t: usize) -> usize;
}

/// A bifunctor stored as explicit tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedBifunctor {
    base: FinCat,
    sizes: Vec<usize>,
    contra: Vec<Vec<usize>>,
    co: Vec<Vec<usize>>,
}

impl TabulatedBifunctor {
    /// `sizes[d'][d]`, `contra[p][e]` for `T(p, id_e)`, `co[d][q]` for
    /// `T(id_d, q)`.
    pub fn new(
        base: FinCat,
        sizes: Vec<Vec<usize>>,
        contra: Vec<Vec<Vec<usize>>>,
        co: Vec<Vec<Vec<usize>>>,
    ) -> Result<TabulatedBifunctor> {
        let (n, m) = (base.object_count(), base.morphism_count());
        if sizes.len() != n
            || sizes.iter().any(|r| r.len() != n)
            || contra.len() != m
            || contra.iter().any(|r| r.len() != n)
            || co.len() != n
            || co.iter().any(|r| r.len() != m)
        {
            return Err(Error::InvalidInput("bifunctor tables have the wrong shape".into()));
        }
        let t = TabulatedBifunctor {
            base,
            sizes: sizes.into_iter().flatten().collect(),
            contra: contra.into_iter().flatten().collect(),
            co: co.into_iter().flatten().collect(),
        };
        if let Some(v) = validate_bifunctor(&t).first() {
            return Err(Error::InvalidInput(format!("not a bifunctor: {v}")));
        }
        Ok(t)
    }

    /// Materializes any bifunctor.
    pub fn tabulate(t: &impl Bifunctor) -> TabulatedBifunctor {
        let c = t.base();
        let (n, m) = (c.object_count(), c.morphism_count());
        let mut sizes = Vec::with_capacity(n * n);
        for d1 in 0..n {
            for d in 0..n {
                sizes.push(t.size(d1, d));
            }
        }
        let mut contra = Vec::with_capacity(m * n);
        for p in 0..m {
            for e in 0..n {
                contra.push((0..t.size(c.cod(p), e)).map(|x| t.act_contra(p, e, x)).collect());
            }
        }
        let mut co = Vec::with_capacity(n * m);
        for d in 0..n {
            for q in 0..m {
                co.push((0..t.size(d, c.dom(q))).map(|x| t.act_co(d, q, x)).collect());
            }
        }
        TabulatedBifunctor {
            base: c.clone(),
            sizes,
            contra,
            co,
        }
    }

    /// `hom(−, −)`.
    pub fn hom(c: &FinCat) -> TabulatedBifunctor {
        TabulatedBifunctor::tabulate(&HomBifunctor(c.clone()))
    }

    /// `T(d', d) = P(d') × Q(d)` for a presheaf `P` on `C` and a presheaf `Q`
    /// on `C^op` (a covariant functor on `C`); the pair `(x, y)` has index
    /// `x * |Q(d)| + y`.
    pub fn external_product(p: &Presheaf, q: &Presheaf) -> TabulatedBifunctor {
        TabulatedBifunctor::tabulate(&ExternalProduct { p, q })
    }

    /// Reads a presheaf on `C × C^op` as a bifunctor on `C`; the object
    /// `(d', d)` of the product has index `d' * |C₀| + d`.
    pub fn from_presheaf_on_twisted(c: &FinCat, p: &Presheaf) -> Result<TabulatedBifunctor> {
        let twisted = product_uncapped(c, &opposite(c));
        if p.base != twisted {
            return Err(Error::InvalidInput(
                "presheaf is not defined on C × C^op".into(),
            ));
        }
        let (n, m) = (c.object_count(), c.morphism_count());
        let mut contra = Vec::with_capacity(m * n);
        for pm in 0..m {
            for e in 0..n {
                contra.push(p.actions[pm * m + c.id(e)].clone());
            }
        }
        let mut co = Vec::with_capacity(n * m);
        for d in 0..n {
            for q in 0..m {
                co.push(p.actions[c.id(d) * m + q].clone());
            }
        }
        Ok(TabulatedBifunctor {
            base: c.clone(),
            sizes: p.sizes.clone(),
            contra,
            co,
        })
    }
}

impl Bifunctor for TabulatedBifunctor {
    fn base(&self) -> &FinCat {
        &self.base
    }

    fn size(&self, contra: usize, co: usize) -> usize {
        self.sizes[contra * self.base.object_count() + co]
    }

    fn act_contra(&self, p: usize, e: usize, t: usize) -> usize {
        self.contra[p * self.base.object_count() + e][t]
    }

    fn act_co(&self, d: usize, q: usize, t: usize) -> usize {
        self.co[d * self.base.morphism_count() + q][t]
    }
}

struct HomBifunctor(FinCat);

impl Bifunctor for HomBifunctor {
    fn base(&self) -> &FinCat {
        &self.0
    }

    fn size(&self, a: usize, b: usize) -> usize {
        self.0.hom(a, b).len()
    }

    fn act_contra(&self, p: usize, e: usize, t: usize) -> usize {
        let c = &self.0;
        let k = c.hom(c.cod(p), e)[t];
        c.hom_position(c.compose(k, p))
    }

    fn act_co(&self, d: usize, q: usize, t: usize) -> usize {
        let c = &self.0;
        let k = c.hom(d, c.dom(q))[t];
        c.hom_position(c.compose(q, k))
    }
}

struct ExternalProduct<'a> {
    p: &'a Presheaf,
    q: &'a Presheaf,
}

impl Bifunctor for ExternalProduct<'_> {
    fn base(&self) -> &FinCat {
        &self.p.base
    }

    fn size(&self, d1: usize, d: usize) -> usize {
        self.p.size(d1) * self.q.size(d)
    }

    fn act_contra(&self, pm: usize, e: usize, t: usize) -> usize {
        let qs = self.q.size(e);
        let (x, y) = (t / qs, t % qs);
        self.p.act(pm, x) * qs + y
    }

    fn act_co(&self, d: usize, q: usize, t: usize) -> usize {
        let c = self.base();
        let (from, to) = (self.q.size(c.dom(q)), self.q.size(c.cod(q)));
        let _ = d;
        let (x, y) = (t / from, t % from);
        // Q is a presheaf on C^op, so q: a → b in C acts Q(a) → Q(b)
        x * to + self.q.act(q, y)
    }
}

/// `T(a', a) = G(a')^{F(a)}`: functions `F(a) → G(a')`, encoded in mixed
/// radix with the image of element 0 as the most significant digit.
pub struct ExponentialBifunctor<'a> {
    f: &'a Presheaf,
    g: &'a Presheaf,
}

impl<'a> ExponentialBifunctor<'a> {
    pub fn new(f: &'a Presheaf, g: &'a Presheaf) -> Self {
        assert_eq!(f.base, g.base, "presheaves over different bases");
        ExponentialBifunctor { f, g }
    }

    pub fn decode(&self, a1: usize, a: usize, mut t: usize) -> Vec<usize> {
        let (n, radix) = (self.f.size(a), self.g.size(a1));
        let mut digits = vec![0; n];
        for d in digits.iter_mut().rev() {
            *d = t % radix;
            t /= radix;
        }
        digits
    }

    pub fn encode(&self, a1: usize, digits: &[usize]) -> usize {
        let radix = self.g.size(a1);
        digits.iter().fold(0, |acc, &d| acc * radix + d)
    }
}

impl Bifunctor for ExponentialBifunctor<'_> {
    fn base(&self) -> &FinCat {
        &self.f.base
    }

    fn size(&self, a1: usize, a: usize) -> usize {
        self.g.size(a1).pow(self.f.size(a) as u32)
    }

    fn act_contra(&self, p: usize, e: usize, t: usize) -> usize {
        // φ ↦ G(p) ∘ φ
        let c = self.base();
        let phi = self.decode(c.cod(p), e, t);
        let out: Vec<usize> = phi.iter().map(|&v| self.g.act(p, v)).collect();
        self.encode(c.dom(p), &out)
    }

    fn act_co(&self, d: usize, q: usize, t: usize) -> usize {
        // φ ↦ φ ∘ F(q)
        let c = self.base();
        let phi = self.decode(d, c.dom(q), t);
        let out: Vec<usize> = (0..self.f.size(c.cod(q)))
            .map(|s| phi[self.f.act(q, s)])
            .collect();
        self.encode(d, &out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum BifunctorViolation {
    ContraIdentity { object: usize, other: usize },
    CoIdentity { object: usize, other: usize },
    ContraComposition { g: usize, f: usize, other: usize },
    CoComposition { g: usize, f: usize, other: usize },
    Interchange { p: usize, q: usize },
    Range { message: String },
}

impl fmt::Display for BifunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BifunctorViolation::ContraIdentity { object, other } => {
                write!(f, "T(id_{object}, {other}) is not the identity")
            }
            BifunctorViolation::CoIdentity { object, other } => {
                write!(f, "T({other}, id_{object}) is not the identity")
            }
            BifunctorViolation::ContraComposition { g, f: ff, other } => {
                write!(f, "first-argument action of {g}∘{ff} at {other} is not functorial")
            }
            BifunctorViolation::CoComposition { g, f: ff, other } => {
                write!(f, "second-argument action of {g}∘{ff} at {other} is not functorial")
            }
            BifunctorViolation::Interchange { p, q } => {
                write!(f, "actions of {p} and {q} do not commute")
            }
            BifunctorViolation::Range { message } => write!(f, "{message}"),
        }
    }
}

/// Functoriality in each argument and the interchange law.
pub fn validate_bifunctor(t: &impl Bifunctor) -> Report<BifunctorViolation> {
    let c = t.base();
    let mut report = Report::ok();
    for p in c.morphisms() {
        for e in c.objects() {
            let (from, to) = (t.size(c.cod(p), e), t.size(c.dom(p), e));
            if (0..from).any(|x| t.act_contra(p, e, x) >= to) {
                report.push(BifunctorViolation::Range {
                    message: format!("first-argument action of {p} at {e} leaves its codomain"),
                });
            }
            let (from, to) = (t.size(e, c.dom(p)), t.size(e, c.cod(p)));
            if (0..from).any(|x| t.act_co(e, p, x) >= to) {
                report.push(BifunctorViolation::Range {
                    message: format!("second-argument action of {p} at {e} leaves its codomain"),
                });
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    for x in c.objects() {
        for e in c.objects() {
            if (0..t.size(x, e)).any(|s| t.act_contra(c.id(x), e, s) != s) {
                report.push(BifunctorViolation::ContraIdentity { object: x, other: e });
            }
            if (0..t.size(e, x)).any(|s| t.act_co(e, c.id(x), s) != s) {
                report.push(BifunctorViolation::CoIdentity { object: x, other: e });
            }
        }
    }
    for g in c.morphisms() {
        for f in c.hom_into_dom(g) {
            let gf = c.compose(g, f);
            for e in c.objects() {
                // contravariant: T(g∘f) = T(f) ∘ T(g)
                let ok = (0..t.size(c.cod(g), e))
                    .all(|s| t.act_contra(gf, e, s) == t.act_contra(f, e, t.act_contra(g, e, s)));
                if !ok {
                    report.push(BifunctorViolation::ContraComposition { g, f, other: e });
                }
                let ok = (0..t.size(e, c.dom(f)))
                    .all(|s| t.act_co(e, gf, s) == t.act_co(e, g, t.act_co(e, f, s)));
                if !ok {
                    report.push(BifunctorViolation::CoComposition { g, f, other: e });
                }
            }
        }
    }
    for p in c.morphisms() {
        for q in c.morphisms() {
            // on T(cod p, dom q): T(p, id)∘T(id, q) = T(id, q)∘T(p, id)
            let (d1, d2, e1) = (c.dom(p), c.cod(p), c.dom(q));
            let ok = (0..t.size(d2, e1)).all(|s| {
                t.act_contra(p, c.cod(q), t.act_co(d2, q, s))
                    == t.act_co(d1, q, t.act_contra(p, e1, s))
            });
            if !ok {
                report.push(BifunctorViolation::Interchange { p, q });
            }
        }
    }
    report
}

/// The quotient `∫^d T(d, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coend {
    /// Number of classes.
    pub classes: usize,
    /// `injections[d][t]` is the class of `t ∈ T(d, d)`.
    pub injections: Vec<Vec<usize>>,
    /// Least member `(d, t)` of each class.
    pub representatives: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the two classes, keeping the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Quotient of `Σ_d T(d, d)` by `T(p, id)(t) ~ T(id, p)(t)` for every
/// `p: d → d'` and `t ∈ T(d', d)`. Classes are numbered by their least member
/// in the disjoint-union order.
pub fn coend(t: &impl Bifunctor, caps: &Caps) -> Result<Coend> {
    let c = t.base();
    let mut offsets = Vec::with_capacity(c.object_count());
    let mut total = 0usize;
    for d in c.objects() {
        offsets.push(total);
        total += t.size(d, d);
    }
    if total > caps.max_enum {
        return Err(Error::CapacityExceeded {
            what: "coend disjoint union",
            needed: total,
            cap: caps.max_enum,
        });
    }
    let mut uf = UnionFind::new(total);
    for p in c.morphisms() {
        if c.is_identity(p) {
            continue;
        }
        let (d, d1) = (c.dom(p), c.cod(p));
        for x in 0..t.size(d1, d) {
            let left = offsets[d] + t.act_contra(p, d, x);
            let right = offsets[d1] + t.act_co(d1, p, x);
            uf.union(left, right);
        }
    }
    // roots are least members, so numbering roots in order of appearance
    // numbers classes by least member
    let mut class_of_root = vec![usize::MAX; total];
    let mut representatives = Vec::new();
    let mut injections = Vec::with_capacity(c.object_count());
    for d in c.objects() {
        let mut inj = Vec::with_capacity(t.size(d, d));
        for x in 0..t.size(d, d) {
            let root = uf.find(offsets[d] + x);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = representatives.len();
                representatives.push((d, x));
            }
            inj.push(class_of_root[root]);
        }
        injections.push(inj);
    }
    Ok(Coend {
        classes: representatives.len(),
        injections,
        representatives,
    })
}

/// The families of `∫_d T(d, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct End {
    /// Each family lists `x_d ∈ T(d, d)` per object; the projection to `d` is
    /// `families[i][d]`.
    pub families: Vec<Vec<usize>>,
}

/// All families `(x_d)` with `T(id, p)(x_d) = T(p, id)(x_{d'})` for every
/// `p: d → d'`, in lexicographic order.
pub fn end(t: &impl Bifunctor, caps: &Caps) -> Result<End> {
    let c = t.base();
    let mut search = Search::new(c.objects().map(|d| t.size(d, d)).collect());
    for p in c.morphisms() {
        if c.is_identity(p) {
            continue;
        }
        let (d, d1) = (c.dom(p), c.cod(p));
        let left = (0..t.size(d, d)).map(|x| t.act_co(d, p, x)).collect();
        let right = (0..t.size(d1, d1)).map(|x| t.act_contra(p, d1, x)).collect();
        search.constrain(d, Side::Map(left), d1, Side::Map(right));
    }
    Ok(End {
        families: search.solve_all(caps.max_enum, "end families")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presheaf::nat_transformations;

    #[test]
    fn hom_is_valid() {
        for c in [FinCat::chain(3), FinCat::cyclic_group(3), FinCat::discrete(2)] {
            assert!(validate_bifunctor(&TabulatedBifunctor::hom(&c)).is_ok());
        }
    }

    #[test]
    fn coend_over_discrete_is_disjoint_union() {
        let c = FinCat::discrete(3);
        let one = Presheaf::constant(&c, 1);
        let t = TabulatedBifunctor::external_product(&one, &one);
        let co = coend(&t, &Caps::default()).unwrap();
        assert_eq!(co.classes, 3);
        assert_eq!(co.representatives, vec![(0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn coend_over_empty_base() {
        let t = TabulatedBifunctor::hom(&FinCat::empty());
        let co = coend(&t, &Caps::default()).unwrap();
        assert_eq!(co.classes, 0);
        assert!(end(&t, &Caps::default()).unwrap().families.len() == 1);
    }

    #[test]
    fn co_yoneda_on_walking_arrow() {
        let c = FinCat::chain(2);
        let f = Presheaf::new(c.clone(), vec![1, 2], vec![vec![0], vec![0, 0], vec![0, 1]]).unwrap();
        // hom(X, −) is the representable at X in C^op
        for (x, expected) in [(0, 1), (1, 2)] {
            let hx = Presheaf::representable(&opposite(&c), x);
            let hx = Presheaf { base: c.clone(), ..hx };
            let t = TabulatedBifunctor::external_product(&f, &hx);
            assert!(validate_bifunctor(&t).is_ok());
            assert_eq!(coend(&t, &Caps::default()).unwrap().classes, expected);
        }
    }

    #[test]
    fn end_examples() {
        let caps = Caps::default();
        let hom = TabulatedBifunctor::hom(&FinCat::chain(2));
        assert_eq!(end(&hom, &caps).unwrap().families, vec![vec![0, 0]]);
        let d = FinCat::discrete(2);
        let p = Presheaf::new(d.clone(), vec![2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let one = Presheaf::constant(&d, 1);
        let t = TabulatedBifunctor::external_product(&p, &one);
        assert_eq!(end(&t, &caps).unwrap().families.len(), 6);
        let empty = Presheaf::new(d.clone(), vec![2, 0], vec![vec![0, 1], vec![]]).unwrap();
        let t = TabulatedBifunctor::external_product(&empty, &one);
        assert!(end(&t, &caps).unwrap().families.is_empty());
    }

    #[test]
    fn end_of_exponential_counts_transformations() {
        let c = FinCat::chain(2);
        let f = Presheaf::new(c.clone(), vec![1, 2], vec![vec![0], vec![0, 0], vec![0, 1]]).unwrap();
        let g = Presheaf::representable(&c, 1);
        let caps = Caps::default();
        for (a, b) in [(&f, &g), (&g, &f), (&f, &f)] {
            let t = ExponentialBifunctor::new(a, b);
            assert!(validate_bifunctor(&t).is_ok());
            assert_eq!(
                end(&t, &caps).unwrap().families.len(),
                nat_transformations(a, b, &caps).unwrap().len()
            );
        }
    }

    #[test]
    fn coend_cap() {
        let c = FinCat::terminal();
        let big = Presheaf::constant(&c, 20);
        let t = TabulatedBifunctor::external_product(&big, &big);
        let caps = Caps {
            max_enum: 100,
            ..Caps::default()
        };
        assert!(matches!(coend(&t, &caps), Err(Error::CapacityExceeded { .. })));
    }
}
