//! Promonoidal categories, Day convolution of presheaves and its two
//! exponents.
//!
//! `M(X, B, C)` is contravariant in the output `X` and covariant in the
//! inputs `B` and `C`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fincat::{
    coend, find_natural_iso, nat_transformations, product_uncapped, Bifunctor, Coend, FinCat,
    Functor, NatTransformation, Presheaf,
};
use crate::fincat::search::{Search, Side};
use crate::report::Report;

/// A category with a tensor functor `A × A → A` and a unit object.
///
/// Associativity and unit coherence are not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalCat {
    pub base: FinCat,
    /// Source is `A × A`, with the pair `(b, c)` at index `b * |A₀| + c`.
    pub tensor: Functor,
    pub unit: usize,
}

impl MonoidalCat {
    pub fn new(base: FinCat, tensor: Functor, unit: usize) -> Result<MonoidalCat> {
        if tensor.source != product_uncapped(&base, &base) || tensor.target != base {
            return Err(Error::InvalidInput("tensor must be a functor A × A → A".into()));
        }
        if let Some(v) = tensor.validate().first() {
            return Err(Error::InvalidInput(format!("tensor is not a functor: {v}")));
        }
        if unit >= base.object_count() {
            return Err(Error::InvalidInput(format!("unit object {unit} out of range")));
        }
        Ok(MonoidalCat { base, tensor, unit })
    }

    pub fn terminal() -> MonoidalCat {
        let base = FinCat::terminal();
        let pairs = product_uncapped(&base, &base);
        MonoidalCat {
            tensor: Functor::to_terminal(&pairs),
            base,
            unit: 0,
        }
    }

    /// The group `Z/2` as a one-object category, tensored by multiplication.
    pub fn z2() -> MonoidalCat {
        let base = FinCat::cyclic_group(2);
        let pairs = product_uncapped(&base, &base);
        let tensor = Functor {
            morphisms: pairs.morphisms().map(|k| (k / 2 + k % 2) % 2).collect(),
            objects: vec![0],
            source: pairs,
            target: base.clone(),
        };
        MonoidalCat {
            base,
            tensor,
            unit: 0,
        }
    }

    /// The chain `0 ≤ … ≤ n-1` with `⊗ = min` and unit `n-1`.
    pub fn chain_min(n: usize) -> MonoidalCat {
        assert!(n > 0, "chain_min needs at least one object");
        let base = FinCat::chain(n);
        let pairs = product_uncapped(&base, &base);
        let objects = (0..n * n).map(|k| (k / n).min(k % n)).collect();
        let tensor = Functor::between_thin(&pairs, &base, objects).expect("min is monotone");
        MonoidalCat {
            base,
            tensor,
            unit: n - 1,
        }
    }

    pub fn tensor_object(&self, b: usize, c: usize) -> usize {
        self.tensor.object(b * self.base.object_count() + c)
    }

    pub fn tensor_morphism(&self, q1: usize, q2: usize) -> usize {
        self.tensor.morphism(q1 * self.base.morphism_count() + q2)
    }
}

/// `M: A^op × A × A → FinSet` with unit presheaf `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Promonoidal {
    base: FinCat,
    sizes: Vec<usize>,
    out: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    unit: Presheaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum PromonoidalViolation {
    Shape { message: String },
    /// An identity of `argument` (0 output, 1 left input, 2 right input)
    /// acts nontrivially.
    Identity { argument: usize, object: usize },
    Composition { argument: usize, g: usize, f: usize },
    /// Actions on `arguments` fail to commute for morphisms `p` and `q`.
    Interchange {
        arguments: (usize, usize),
        p: usize,
        q: usize,
    },
    Unit { message: String },
}

impl fmt::Display for PromonoidalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PromonoidalViolation::Shape { message } | PromonoidalViolation::Unit { message } => {
                write!(f, "{message}")
            }
            PromonoidalViolation::Identity { argument, object } => {
                write!(f, "identity at {object} acts nontrivially in argument {argument}")
            }
            PromonoidalViolation::Composition { argument, g, f: ff } => {
                write!(f, "argument {argument} is not functorial at {g}∘{ff}")
            }
            PromonoidalViolation::Interchange { arguments, p, q } => write!(
                f,
                "actions in arguments {} and {} do not commute at {p}, {q}",
                arguments.0, arguments.1
            ),
        }
    }
}

type Size<'a> = &'a dyn Fn(usize, usize, usize) -> usize;
type Act<'a> = &'a dyn Fn(usize, usize, usize, usize) -> usize;

impl Promonoidal {
    /// Builds and validates a promonoidal structure from explicit tables:
    /// `sizes[x][b][c]`, `out[u][b][c]` for `M(u, b, c)`, `left[q][x][c]` for
    /// `M(x, q, c)` and `right[q][x][b]` for `M(x, b, q)`.
    pub fn new(
        base: FinCat,
        sizes: Vec<Vec<Vec<usize>>>,
        out: Vec<Vec<Vec<Vec<usize>>>>,
        left: Vec<Vec<Vec<Vec<usize>>>>,
        right: Vec<Vec<Vec<Vec<usize>>>>,
        unit: Presheaf,
    ) -> Result<Promonoidal> {
        let (n, m) = (base.object_count(), base.morphism_count());
        let cube = |t: &Vec<Vec<Vec<usize>>>, outer: usize| {
            t.len() == outer && t.iter().all(|r| r.len() == n && r.iter().all(|s| s.len() == n))
        };
        let cube4 = |t: &Vec<Vec<Vec<Vec<usize>>>>| {
            t.len() == m && t.iter().all(|r| r.len() == n && r.iter().all(|s| s.len() == n))
        };
        if !cube(&sizes, n) || !cube4(&out) || !cube4(&left) || !cube4(&right) {
            return Err(Error::InvalidInput("promonoidal tables have the wrong shape".into()));
        }
        let flat4 = |t: Vec<Vec<Vec<Vec<usize>>>>| t.into_iter().flatten().flatten().collect();
        let p = Promonoidal {
            base,
            sizes: sizes.into_iter().flatten().flatten().collect(),
            out: flat4(out),
            left: flat4(left),
            right: flat4(right),
            unit,
        };
        if let Some(v) = p.validate().first() {
            return Err(Error::InvalidInput(format!("not a promonoidal structure: {v}")));
        }
        Ok(p)
    }

    /// Tabulates `M` from its size and three action functions:
    /// `out(u, b, c, m)`, `left(x, q, c, m)` and `right(x, b, q, m)`.
    pub(crate) fn tabulate(
        base: &FinCat,
        unit: Presheaf,
        size: Size<'_>,
        out: Act<'_>,
        left: Act<'_>,
        right: Act<'_>,
    ) -> Promonoidal {
        let (n, mc) = (base.object_count(), base.morphism_count());
        let mut sizes = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for b in 0..n {
                for c in 0..n {
                    sizes.push(size(x, b, c));
                }
            }
        }
        let (mut o, mut l, mut r) = (Vec::new(), Vec::new(), Vec::new());
        for q in 0..mc {
            for i in 0..n {
                for j in 0..n {
                    o.push((0..size(base.cod(q), i, j)).map(|t| out(q, i, j, t)).collect());
                    l.push((0..size(i, base.dom(q), j)).map(|t| left(i, q, j, t)).collect());
                    r.push((0..size(i, j, base.dom(q))).map(|t| right(i, j, q, t)).collect());
                }
            }
        }
        Promonoidal {
            base: base.clone(),
            sizes,
            out: o,
            left: l,
            right: r,
            unit,
        }
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn unit(&self) -> &Presheaf {
        &self.unit
    }

    /// Replaces the unit presheaf.
    pub fn with_unit(&self, unit: Presheaf) -> Result<Promonoidal> {
        if unit.base != self.base {
            return Err(Error::InvalidInput("unit lives on a different base".into()));
        }
        Ok(Promonoidal {
            unit,
            ..self.clone()
        })
    }

    fn n(&self) -> usize {
        self.base.object_count()
    }

    pub fn size(&self, x: usize, b: usize, c: usize) -> usize {
        let n = self.n();
        self.sizes[(x * n + b) * n + c]
    }

    /// `M(u, id, id): M(cod u, b, c) → M(dom u, b, c)`.
    pub fn act_out(&self, u: usize, b: usize, c: usize, m: usize) -> usize {
        let n = self.n();
        self.out[(u * n + b) * n + c][m]
    }

    /// `M(id, q, id): M(x, dom q, c) → M(x, cod q, c)`.
    pub fn act_left(&self, x: usize, q: usize, c: usize, m: usize) -> usize {
        let n = self.n();
        self.left[(q * n + x) * n + c][m]
    }

    /// `M(id, id, q): M(x, b, dom q) → M(x, b, cod q)`.
    pub fn act_right(&self, x: usize, b: usize, q: usize, m: usize) -> usize {
        let n = self.n();
        self.right[(q * n + x) * n + b][m]
    }

    pub fn validate(&self) -> Report<PromonoidalViolation> {
        let a = &self.base;
        let n = self.n();
        let mut report = Report::ok();
        for q in a.morphisms() {
            for i in 0..n {
                for j in 0..n {
                    let checks = [
                        (self.size(a.cod(q), i, j), self.size(a.dom(q), i, j), &self.out, "output"),
                        (self.size(i, a.dom(q), j), self.size(i, a.cod(q), j), &self.left, "left"),
                        (self.size(i, j, a.dom(q)), self.size(i, j, a.cod(q)), &self.right, "right"),
                    ];
                    for (from, to, table, name) in checks {
                        let row = &table[(q * n + i) * n + j];
                        if row.len() != from || row.iter().any(|&t| t >= to) {
                            report.push(PromonoidalViolation::Shape {
                                message: format!("{name} action of morphism {q} has the wrong type"),
                            });
                        }
                    }
                }
            }
        }
        if self.unit.base != self.base {
            report.push(PromonoidalViolation::Unit {
                message: "unit presheaf lives on a different base".into(),
            });
        } else if let Some(v) = self.unit.validate().first() {
            report.push(PromonoidalViolation::Unit {
                message: format!("unit is not a presheaf: {v}"),
            });
        }
        if !report.is_ok() {
            return report;
        }
        let triples = || {
            (0..n).flat_map(move |x| (0..n).flat_map(move |b| (0..n).map(move |c| (x, b, c))))
        };
        for o in a.objects() {
            let id = a.id(o);
            for (x, b, c) in triples() {
                let elements = 0..self.size(x, b, c);
                if x == o && elements.clone().any(|m| self.act_out(id, b, c, m) != m) {
                    report.push(PromonoidalViolation::Identity { argument: 0, object: o });
                }
                if b == o && elements.clone().any(|m| self.act_left(x, id, c, m) != m) {
                    report.push(PromonoidalViolation::Identity { argument: 1, object: o });
                }
                if c == o && elements.clone().any(|m| self.act_right(x, b, id, m) != m) {
                    report.push(PromonoidalViolation::Identity { argument: 2, object: o });
                }
            }
        }
        for g in a.morphisms() {
            for f in a.hom_into_dom(g) {
                let gf = a.compose(g, f);
                for i in 0..n {
                    for j in 0..n {
                        let ok = (0..self.size(a.cod(g), i, j)).all(|m| {
                            self.act_out(gf, i, j, m)
                                == self.act_out(f, i, j, self.act_out(g, i, j, m))
                        });
                        if !ok {
                            report.push(PromonoidalViolation::Composition { argument: 0, g, f });
                        }
                        let ok = (0..self.size(i, a.dom(f), j)).all(|m| {
                            self.act_left(i, gf, j, m)
                                == self.act_left(i, g, j, self.act_left(i, f, j, m))
                        });
                        if !ok {
                            report.push(PromonoidalViolation::Composition { argument: 1, g, f });
                        }
                        let ok = (0..self.size(i, j, a.dom(f))).all(|m| {
                            self.act_right(i, j, gf, m)
                                == self.act_right(i, j, g, self.act_right(i, j, f, m))
                        });
                        if !ok {
                            report.push(PromonoidalViolation::Composition { argument: 2, g, f });
                        }
                    }
                }
            }
        }
        for p in a.morphisms() {
            for q in a.morphisms() {
                let (x1, x) = (a.dom(p), a.cod(p));
                let (b, b1) = (a.dom(q), a.cod(q));
                for o in a.objects() {
                    // output p with left q, on M(x, b, o)
                    let ok = (0..self.size(x, b, o)).all(|m| {
                        self.act_out(p, b1, o, self.act_left(x, q, o, m))
                            == self.act_left(x1, q, o, self.act_out(p, b, o, m))
                    });
                    if !ok {
                        report.push(PromonoidalViolation::Interchange { arguments: (0, 1), p, q });
                    }
                    // output p with right q, on M(x, o, b)
                    let ok = (0..self.size(x, o, b)).all(|m| {
                        self.act_out(p, o, b1, self.act_right(x, o, q, m))
                            == self.act_right(x1, o, q, self.act_out(p, o, b, m))
                    });
                    if !ok {
                        report.push(PromonoidalViolation::Interchange { arguments: (0, 2), p, q });
                    }
                }
                // left p with right q, on M(o, dom p, dom q)
                let (c, c1) = (a.dom(p), a.cod(p));
                for o in a.objects() {
                    let ok = (0..self.size(o, c, b)).all(|m| {
                        self.act_right(o, c1, q, self.act_left(o, p, b, m))
                            == self.act_left(o, p, b1, self.act_right(o, c, q, m))
                    });
                    if !ok {
                        report.push(PromonoidalViolation::Interchange { arguments: (1, 2), p, q });
                    }
                }
            }
        }
        report
    }
}

/// `M(X, B, C) = hom(X, B ⊗ C)` and `J = hom(−, I)`.
pub fn promonoidal_from_monoidal(m: &MonoidalCat) -> Promonoidal {
    let a = &m.base;
    let hom = |x: usize, b: usize, c: usize| a.hom(x, m.tensor_object(b, c));
    let size = |x, b, c| hom(x, b, c).len();
    let out = |u, b, c, t| a.hom_position(a.compose(hom(a.cod(u), b, c)[t], u));
    let left = |x, q, c, t| {
        let k = hom(x, a.dom(q), c)[t];
        a.hom_position(a.compose(m.tensor_morphism(q, a.id(c)), k))
    };
    let right = |x, b, q, t| {
        let k = hom(x, b, a.dom(q))[t];
        a.hom_position(a.compose(m.tensor_morphism(a.id(b), q), k))
    };
    Promonoidal::tabulate(
        a,
        Presheaf::representable(a, m.unit),
        &size,
        &out,
        &left,
        &right,
    )
}

/// The integrand `F(B') × G(C') × M(X, B, C)` over `A × A`.
struct TensorIntegrand<'a> {
    pairs: &'a FinCat,
    p: &'a Promonoidal,
    f: &'a Presheaf,
    g: &'a Presheaf,
    x: usize,
}

impl TensorIntegrand<'_> {
    fn split(&self, d: usize) -> (usize, usize) {
        let n = self.p.n();
        (d / n, d % n)
    }

    fn split_morphism(&self, q: usize) -> (usize, usize) {
        let m = self.p.base.morphism_count();
        (q / m, q % m)
    }
}

impl Bifunctor for TensorIntegrand<'_> {
    fn base(&self) -> &FinCat {
        self.pairs
    }

    fn size(&self, contra: usize, co: usize) -> usize {
        let ((b1, c1), (b, c)) = (self.split(contra), self.split(co));
        self.f.size(b1) * self.g.size(c1) * self.p.size(self.x, b, c)
    }

    fn act_contra(&self, q: usize, e: usize, t: usize) -> usize {
        let (q1, q2) = self.split_morphism(q);
        let a = &self.p.base;
        let (b, c) = self.split(e);
        let mm = self.p.size(self.x, b, c);
        let (gs, m) = (t / mm, t % mm);
        let (s, r) = (gs / self.g.size(a.cod(q2)), gs % self.g.size(a.cod(q2)));
        let (s, r) = (self.f.act(q1, s), self.g.act(q2, r));
        (s * self.g.size(a.dom(q2)) + r) * mm + m
    }

    fn act_co(&self, d: usize, q: usize, t: usize) -> usize {
        let (q1, q2) = self.split_morphism(q);
        let a = &self.p.base;
        let _ = d;
        let (b, c) = (a.dom(q1), a.dom(q2));
        let (b1, c1) = (a.cod(q1), a.cod(q2));
        let (from, to) = (self.p.size(self.x, b, c), self.p.size(self.x, b1, c1));
        let (fg, m) = (t / from, t % from);
        let m = self.p.act_left(self.x, q1, c, m);
        let m = self.p.act_right(self.x, b1, q2, m);
        fg * to + m
    }
}

/// `F ⊗ G` together with the coends that define it.
#[derive(Debug, Clone)]
pub struct DayTensor {
    pub presheaf: Presheaf,
    /// `coends[x]` is `(F ⊗ G)(x)` before relabelling; the class number is
    /// the element of `(F ⊗ G)(x)`.
    pub coends: Vec<Coend>,
    f_sizes: Vec<usize>,
    g_sizes: Vec<usize>,
    m: Promonoidal,
}

impl DayTensor {
    /// The element of `(F ⊗ G)(x)` represented by `(s, r, m)` with
    /// `s ∈ F(b)`, `r ∈ G(c)`, `m ∈ M(x, b, c)`.
    pub fn class(&self, x: usize, b: usize, c: usize, s: usize, r: usize, m: usize) -> usize {
        let n = self.f_sizes.len();
        let t = (s * self.g_sizes[c] + r) * self.m.size(x, b, c) + m;
        self.coends[x].injections[b * n + c][t]
    }

    /// The least representative `(b, c, s, r, m)` of an element of
    /// `(F ⊗ G)(x)`.
    pub fn representative(&self, x: usize, k: usize) -> (usize, usize, usize, usize, usize) {
        let n = self.f_sizes.len();
        let (d, t) = self.coends[x].representatives[k];
        let (b, c) = (d / n, d % n);
        let mm = self.m.size(x, b, c);
        let (sr, m) = (t / mm, t % mm);
        (b, c, sr / self.g_sizes[c], sr % self.g_sizes[c], m)
    }
}

/// `(F ⊗ G)(X) = ∫^{B,C} F(B) × G(C) × M(X, B, C)`.
pub fn day_tensor(p: &Promonoidal, f: &Presheaf, g: &Presheaf, caps: &Caps) -> Result<DayTensor> {
    same_base(p, &[f, g])?;
    let a = &p.base;
    let pairs = product_uncapped(a, a);
    let mut coends = Vec::with_capacity(a.object_count());
    for x in a.objects() {
        let integrand = TensorIntegrand {
            pairs: &pairs,
            p,
            f,
            g,
            x,
        };
        coends.push(coend(&integrand, caps)?);
    }
    let mut tensor = DayTensor {
        presheaf: Presheaf::empty(a),
        coends,
        f_sizes: f.sizes.clone(),
        g_sizes: g.sizes.clone(),
        m: p.clone(),
    };
    let sizes: Vec<usize> = tensor.coends.iter().map(|c| c.classes).collect();
    let actions = a
        .morphisms()
        .map(|u| {
            let (x1, x) = (a.dom(u), a.cod(u));
            (0..sizes[x])
                .map(|k| {
                    let (b, c, s, r, m) = tensor.representative(x, k);
                    tensor.class(x1, b, c, s, r, p.act_out(u, b, c, m))
                })
                .collect()
        })
        .collect();
    tensor.presheaf = Presheaf::new(a.clone(), sizes, actions)
        .map_err(|e| Error::InternalLawViolation(format!("convolution is not a presheaf: {e}")))?;
    Ok(tensor)
}

/// Which residual of the convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Residual {
    /// `(F ⊸ G)(B) = ∫_{A,C} G(A)^{F(C) × M(A, B, C)}`, right adjoint to `− ⊗ F`.
    Left,
    /// `(F ⊸ G)(C) = ∫_{A,B} G(A)^{F(B) × M(A, B, C)}`, right adjoint to `F ⊗ −`.
    Right,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Residual::Left => "left",
            Residual::Right => "right",
        })
    }
}

impl Promonoidal {
    /// `M` with the exponent's own argument `fixed` and the argument `v` that
    /// `F` is evaluated at, placed according to the residual.
    fn size_r(&self, side: Residual, a: usize, fixed: usize, v: usize) -> usize {
        match side {
            Residual::Left => self.size(a, fixed, v),
            Residual::Right => self.size(a, v, fixed),
        }
    }

    fn out_r(&self, side: Residual, p: usize, fixed: usize, v: usize, m: usize) -> usize {
        match side {
            Residual::Left => self.act_out(p, fixed, v, m),
            Residual::Right => self.act_out(p, v, fixed, m),
        }
    }

    fn var_r(&self, side: Residual, a: usize, fixed: usize, q: usize, m: usize) -> usize {
        match side {
            Residual::Left => self.act_right(a, fixed, q, m),
            Residual::Right => self.act_left(a, q, fixed, m),
        }
    }

    fn fixed_r(&self, side: Residual, a: usize, q: usize, v: usize, m: usize) -> usize {
        match side {
            Residual::Left => self.act_left(a, q, v, m),
            Residual::Right => self.act_right(a, v, q, m),
        }
    }
}

/// `F ⊸ G` as a presheaf, with its elements as explicit families.
#[derive(Debug, Clone)]
pub struct DayExponent {
    pub residual: Residual,
    pub presheaf: Presheaf,
    /// `families[b][i]` is element `i` of the exponent at `b`, flattened as
    /// described by [`DayExponent::value`].
    pub families: Vec<Vec<Vec<usize>>>,
    offsets: Vec<Vec<usize>>,
    m: Promonoidal,
}

impl DayExponent {
    /// `φ_{a,v}(x, m) ∈ G(a)` for element `i` at `fixed`.
    pub fn value(&self, fixed: usize, i: usize, a: usize, v: usize, x: usize, m: usize) -> usize {
        let n = self.m.n();
        let mm = self.m.size_r(self.residual, a, fixed, v);
        self.families[fixed][i][self.offsets[fixed][a * n + v] + x * mm + m]
    }

    fn index_of(&self, fixed: usize, family: &[usize]) -> Option<usize> {
        self.families[fixed].iter().position(|f| f == family)
    }
}

/// The residual `F ⊸ G` on the given side.
pub fn day_exponent(
    p: &Promonoidal,
    side: Residual,
    f: &Presheaf,
    g: &Presheaf,
    caps: &Caps,
) -> Result<DayExponent> {
    same_base(p, &[f, g])?;
    let a_cat = &p.base;
    let n = a_cat.object_count();
    let mut families = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for fixed in a_cat.objects() {
        let mut offs = Vec::with_capacity(n * n);
        let mut domains = Vec::new();
        for a in a_cat.objects() {
            for v in a_cat.objects() {
                offs.push(domains.len());
                let count = f.size(v) * p.size_r(side, a, fixed, v);
                domains.extend(std::iter::repeat_n(g.size(a), count));
            }
        }
        let var = |a: usize, v: usize, x: usize, m: usize| {
            offs[a * n + v] + x * p.size_r(side, a, fixed, v) + m
        };
        let mut search = Search::new(domains.clone());
        for pm in a_cat.morphisms() {
            if a_cat.is_identity(pm) {
                continue;
            }
            // G(p) ∘ φ_{a',v}(x, m) = φ_{a,v}(x, M(p)(m)) for p: a → a'
            let (a, a1) = (a_cat.dom(pm), a_cat.cod(pm));
            for v in a_cat.objects() {
                for x in 0..f.size(v) {
                    for m in 0..p.size_r(side, a1, fixed, v) {
                        search.constrain_fn(
                            var(a1, v, x, m),
                            g.actions[pm].clone(),
                            var(a, v, x, p.out_r(side, pm, fixed, v, m)),
                        );
                    }
                }
            }
            // φ_{a,v}(F(q)(x'), m) = φ_{a,v'}(x', M(q)(m)) for q: v → v'
            let (v, v1) = (a_cat.dom(pm), a_cat.cod(pm));
            for a in a_cat.objects() {
                for x1 in 0..f.size(v1) {
                    for m in 0..p.size_r(side, a, fixed, v) {
                        search.constrain(
                            var(a, v, f.act(pm, x1), m),
                            Side::Value,
                            var(a, v1, x1, p.var_r(side, a, fixed, pm, m)),
                            Side::Value,
                        );
                    }
                }
            }
        }
        families.push(search.solve_all(caps.max_enum, "exponent families")?);
        offsets.push(offs);
    }
    let mut exp = DayExponent {
        residual: side,
        presheaf: Presheaf::empty(a_cat),
        families,
        offsets,
        m: p.clone(),
    };
    let lookup: Vec<HashMap<&[usize], usize>> = exp
        .families
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
        .collect();
    let mut actions = Vec::with_capacity(a_cat.morphism_count());
    for q in a_cat.morphisms() {
        // q: b' → b sends φ at b to φ' at b' with φ'(x, m') = φ(x, M(q)(m'))
        let (b1, b) = (a_cat.dom(q), a_cat.cod(q));
        let mut action = Vec::with_capacity(exp.families[b].len());
        for i in 0..exp.families[b].len() {
            let mut image = vec![0; exp.families[b1].first().map_or(0, Vec::len)];
            for a in a_cat.objects() {
                for v in a_cat.objects() {
                    let mm = p.size_r(side, a, b1, v);
                    for x in 0..f.size(v) {
                        for m in 0..mm {
                            image[exp.offsets[b1][a * n + v] + x * mm + m] =
                                exp.value(b, i, a, v, x, p.fixed_r(side, a, q, v, m));
                        }
                    }
                }
            }
            let j = lookup[b1].get(image.as_slice()).copied().ok_or_else(|| {
                Error::InternalLawViolation("exponent action leaves the end".into())
            })?;
            action.push(j);
        }
        actions.push(action);
    }
    let sizes = exp.families.iter().map(Vec::len).collect();
    exp.presheaf = Presheaf::new(a_cat.clone(), sizes, actions)
        .map_err(|e| Error::InternalLawViolation(format!("exponent is not a presheaf: {e}")))?;
    Ok(exp)
}

pub fn day_left_exponent(
    p: &Promonoidal,
    f: &Presheaf,
    g: &Presheaf,
    caps: &Caps,
) -> Result<DayExponent> {
    day_exponent(p, Residual::Left, f, g, caps)
}

pub fn day_right_exponent(
    p: &Promonoidal,
    f: &Presheaf,
    g: &Presheaf,
    caps: &Caps,
) -> Result<DayExponent> {
    day_exponent(p, Residual::Right, f, g, caps)
}

/// Sends `α: H ⊗ F ⇒ G` (left) or `α: F ⊗ H ⇒ G` (right) to its transpose
/// `H ⇒ F ⊸ G`. `tensor` must be that convolution and `exponent` the
/// matching residual of `F` and `G`.
pub fn transpose(
    tensor: &DayTensor,
    exponent: &DayExponent,
    h: &Presheaf,
    alpha: &NatTransformation,
) -> Result<NatTransformation> {
    let p = &exponent.m;
    let a_cat = &p.base;
    let n = a_cat.object_count();
    let side = exponent.residual;
    let mut components = Vec::with_capacity(n);
    for fixed in a_cat.objects() {
        let mut comp = Vec::with_capacity(h.size(fixed));
        let len = exponent.families[fixed].first().map_or_else(
            || {
                a_cat
                    .objects()
                    .flat_map(|a| a_cat.objects().map(move |v| (a, v)))
                    .map(|(a, v)| {
                        let fs = match side {
                            Residual::Left => tensor.g_sizes[v],
                            Residual::Right => tensor.f_sizes[v],
                        };
                        fs * p.size_r(side, a, fixed, v)
                    })
                    .sum()
            },
            Vec::len,
        );
        for hx in 0..h.size(fixed) {
            let mut family = vec![0; len];
            for a in a_cat.objects() {
                for v in a_cat.objects() {
                    let mm = p.size_r(side, a, fixed, v);
                    let f_size = match side {
                        Residual::Left => tensor.g_sizes[v],
                        Residual::Right => tensor.f_sizes[v],
                    };
                    for x in 0..f_size {
                        for m in 0..mm {
                            let k = match side {
                                Residual::Left => tensor.class(a, fixed, v, hx, x, m),
                                Residual::Right => tensor.class(a, v, fixed, x, hx, m),
                            };
                            family[exponent.offsets[fixed][a * n + v] + x * mm + m] =
                                alpha.components[a][k];
                        }
                    }
                }
            }
            let i = exponent.index_of(fixed, &family).ok_or_else(|| {
                Error::InternalLawViolation(format!(
                    "transpose at {fixed} of element {hx} is not in the end"
                ))
            })?;
            comp.push(i);
        }
        components.push(comp);
    }
    let beta = NatTransformation { components };
    if let Some(v) = beta.validate(h, &exponent.presheaf).first() {
        return Err(Error::InternalLawViolation(format!("transpose is not natural: {v}")));
    }
    Ok(beta)
}

/// Inverse of [`transpose`], evaluating at coend representatives.
pub fn transpose_inverse(
    tensor: &DayTensor,
    exponent: &DayExponent,
    beta: &NatTransformation,
) -> NatTransformation {
    let components = tensor
        .coends
        .iter()
        .enumerate()
        .map(|(a, co)| {
            (0..co.classes)
                .map(|k| {
                    let (b, c, s, r, m) = tensor.representative(a, k);
                    match exponent.residual {
                        Residual::Left => exponent.value(b, beta.components[b][s], a, c, r, m),
                        Residual::Right => exponent.value(c, beta.components[c][r], a, b, s, m),
                    }
                })
                .collect()
        })
        .collect();
    NatTransformation { components }
}

/// Transposition along the left residual, computing both sides.
pub fn transpose_left(
    p: &Promonoidal,
    h: &Presheaf,
    f: &Presheaf,
    g: &Presheaf,
    alpha: &NatTransformation,
    caps: &Caps,
) -> Result<NatTransformation> {
    let tensor = day_tensor(p, h, f, caps)?;
    let exponent = day_left_exponent(p, f, g, caps)?;
    transpose(&tensor, &exponent, h, alpha)
}

/// Transposition along the right residual, computing both sides.
pub fn transpose_right(
    p: &Promonoidal,
    h: &Presheaf,
    f: &Presheaf,
    g: &Presheaf,
    alpha: &NatTransformation,
    caps: &Caps,
) -> Result<NatTransformation> {
    let tensor = day_tensor(p, f, h, caps)?;
    let exponent = day_right_exponent(p, f, g, caps)?;
    transpose(&tensor, &exponent, h, alpha)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ClosedViolation {
    /// `|Nat(tensor, G)| ≠ |Nat(H, exponent)|`.
    Cardinality {
        residual: Residual,
        tensor_side: usize,
        exponent_side: usize,
    },
    /// Transposing the `index`-th transformation failed.
    Transpose {
        residual: Residual,
        index: usize,
        message: String,
    },
    /// Two transformations have the same transpose.
    NotInjective { residual: Residual, first: usize, second: usize },
    /// The inverse does not recover the `index`-th transformation.
    RoundTrip { residual: Residual, index: usize },
}

impl fmt::Display for ClosedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedViolation::Cardinality {
                residual,
                tensor_side,
                exponent_side,
            } => write!(
                f,
                "{residual}: {tensor_side} transformations out of the tensor but {exponent_side} into the exponent"
            ),
            ClosedViolation::Transpose {
                residual,
                index,
                message,
            } => write!(f, "{residual}: transpose of transformation {index} failed: {message}"),
            ClosedViolation::NotInjective {
                residual,
                first,
                second,
            } => write!(f, "{residual}: transformations {first} and {second} have equal transposes"),
            ClosedViolation::RoundTrip { residual, index } => {
                write!(f, "{residual}: transformation {index} is not recovered from its transpose")
            }
        }
    }
}

/// Residuation for both sides: transposition is a bijection
/// `Nat(H ⊗ F, G) ≅ Nat(H, F ⊸ G)` and `Nat(F ⊗ H, G) ≅ Nat(H, F ⊸ G)`.
pub fn check_closed(
    p: &Promonoidal,
    h: &Presheaf,
    f: &Presheaf,
    g: &Presheaf,
    caps: &Caps,
) -> Result<Report<ClosedViolation>> {
    let mut report = Report::ok();
    for residual in [Residual::Left, Residual::Right] {
        let tensor = match residual {
            Residual::Left => day_tensor(p, h, f, caps)?,
            Residual::Right => day_tensor(p, f, h, caps)?,
        };
        let exponent = day_exponent(p, residual, f, g, caps)?;
        let lhs = nat_transformations(&tensor.presheaf, g, caps)?;
        let rhs = nat_transformations(h, &exponent.presheaf, caps)?;
        if lhs.len() != rhs.len() {
            report.push(ClosedViolation::Cardinality {
                residual,
                tensor_side: lhs.len(),
                exponent_side: rhs.len(),
            });
        }
        let mut seen: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
        for (index, alpha) in lhs.iter().enumerate() {
            let beta = match transpose(&tensor, &exponent, h, alpha) {
                Ok(beta) => beta,
                Err(e) => {
                    report.push(ClosedViolation::Transpose {
                        residual,
                        index,
                        message: e.to_string(),
                    });
                    continue;
                }
            };
            if transpose_inverse(&tensor, &exponent, &beta) != *alpha {
                report.push(ClosedViolation::RoundTrip { residual, index });
            }
            if let Some(&first) = seen.get(&beta.components) {
                report.push(ClosedViolation::NotInjective {
                    residual,
                    first,
                    second: index,
                });
            }
            seen.insert(beta.components, index);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum UnitViolation {
    /// No natural isomorphism `F ⊗ J ≅ F`.
    Right,
    /// No natural isomorphism `J ⊗ F ≅ F`.
    Left,
}

impl fmt::Display for UnitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitViolation::Right => write!(f, "F ⊗ J is not isomorphic to F"),
            UnitViolation::Left => write!(f, "J ⊗ F is not isomorphic to F"),
        }
    }
}

pub fn check_unit_laws(p: &Promonoidal, f: &Presheaf, caps: &Caps) -> Result<Report<UnitViolation>> {
    let mut report = Report::ok();
    let right = day_tensor(p, f, &p.unit, caps)?;
    if find_natural_iso(&right.presheaf, f, caps)?.is_none() {
        report.push(UnitViolation::Right);
    }
    let left = day_tensor(p, &p.unit, f, caps)?;
    if find_natural_iso(&left.presheaf, f, caps)?.is_none() {
        report.push(UnitViolation::Left);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidalityViolation {
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for MonoidalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hom(−, {}) ⊗ hom(−, {}) is not isomorphic to hom(−, {} ⊗ {})",
            self.x, self.y, self.x, self.y
        )
    }
}

/// `hom(−, X) ⊗ hom(−, Y) ≅ hom(−, X ⊗ Y)` for all objects.
pub fn check_yoneda_monoidality(
    m: &MonoidalCat,
    caps: &Caps,
) -> Result<Report<MonoidalityViolation>> {
    let p = promonoidal_from_monoidal(m);
    let a = &m.base;
    let mut report = Report::ok();
    for x in a.objects() {
        for y in a.objects() {
            let conv = day_tensor(
                &p,
                &Presheaf::representable(a, x),
                &Presheaf::representable(a, y),
                caps,
            )?;
            let target = Presheaf::representable(a, m.tensor_object(x, y));
            if find_natural_iso(&conv.presheaf, &target, caps)?.is_none() {
                report.push(MonoidalityViolation { x, y });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedViolation {
    pub index: usize,
    pub pointwise_sizes: Vec<usize>,
    pub diagonal_sizes: Vec<usize>,
}

impl fmt::Display for IndexedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at index {}: pointwise convolution {:?} is not isomorphic to the diagonal one {:?}",
            self.index, self.pointwise_sizes, self.diagonal_sizes
        )
    }
}

/// Presheaves `F_k` on `A` assembled into one presheaf on `K × A`.
fn assemble(ka: &FinCat, a: &FinCat, family: &[&Presheaf]) -> Presheaf {
    let (n, m) = (a.object_count(), a.morphism_count());
    Presheaf {
        base: ka.clone(),
        sizes: ka.objects().map(|o| family[o / n].size(o % n)).collect(),
        actions: ka
            .morphisms()
            .map(|w| family[w / m].actions[w % m].clone())
            .collect(),
    }
}

/// The restriction of a presheaf on `K × A` to `{k} × A`.
fn component(ka_presheaf: &Presheaf, a: &FinCat, k: usize) -> Presheaf {
    let (n, m) = (a.object_count(), a.morphism_count());
    Presheaf {
        base: a.clone(),
        sizes: ka_presheaf.sizes[k * n..(k + 1) * n].to_vec(),
        actions: ka_presheaf.actions[k * m..(k + 1) * m].to_vec(),
    }
}

/// The structure `M'((k,X), (β,B), (γ,C)) = [k=β][k=γ] hom(X, B ⊗ C)` on
/// `K × A`, with unit `J'(k, X) = hom(X, I)`.
pub fn indexed_promonoidal(m: &MonoidalCat, k_count: usize) -> Promonoidal {
    let a = &m.base;
    let ka = product_uncapped(&FinCat::discrete(k_count), a);
    let (n, mc) = (a.object_count(), a.morphism_count());
    let base = promonoidal_from_monoidal(m);
    let size = |x: usize, b: usize, c: usize| {
        if x / n == b / n && x / n == c / n {
            base.size(x % n, b % n, c % n)
        } else {
            0
        }
    };
    let out = |w: usize, b: usize, c: usize, t| base.act_out(w % mc, b % n, c % n, t);
    let left = |x: usize, w: usize, c: usize, t| base.act_left(x % n, w % mc, c % n, t);
    let right = |x: usize, b: usize, w: usize, t| base.act_right(x % n, b % n, w % mc, t);
    let unit = Presheaf::representable(a, m.unit);
    let units: Vec<&Presheaf> = vec![&unit; k_count];
    let j = assemble(&ka, a, &units);
    Promonoidal::tabulate(&ka, j, &size, &out, &left, &right)
}

/// Compares the pointwise convolution `F_k ⊗ G_k` with the convolution over
/// the indexed structure on `K × A`, restricted to each `k`.
pub fn indexed_convolution_check(
    m: &MonoidalCat,
    f: &[Presheaf],
    g: &[Presheaf],
    caps: &Caps,
) -> Result<Report<IndexedViolation>> {
    if f.len() != g.len() {
        return Err(Error::InvalidInput("index families have different lengths".into()));
    }
    let a = &m.base;
    let k_count = f.len();
    let p = promonoidal_from_monoidal(m);
    let indexed = indexed_promonoidal(m, k_count);
    let ka = indexed.base.clone();
    let fs: Vec<&Presheaf> = f.iter().collect();
    let gs: Vec<&Presheaf> = g.iter().collect();
    let diagonal = day_tensor(&indexed, &assemble(&ka, a, &fs), &assemble(&ka, a, &gs), caps)?;
    let mut report = Report::ok();
    for k in 0..k_count {
        let pointwise = day_tensor(&p, &f[k], &g[k], caps)?.presheaf;
        let restricted = component(&diagonal.presheaf, a, k);
        if find_natural_iso(&restricted, &pointwise, caps)?.is_none() {
            report.push(IndexedViolation {
                index: k,
                pointwise_sizes: pointwise.sizes,
                diagonal_sizes: restricted.sizes,
            });
        }
    }
    Ok(report)
}

fn same_base(p: &Promonoidal, presheaves: &[&Presheaf]) -> Result<()> {
    if presheaves.iter().any(|q| q.base != p.base) {
        return Err(Error::InvalidInput(
            "presheaves must live on the promonoidal base".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn monoidal_builders_are_valid() {
        for m in [MonoidalCat::terminal(), MonoidalCat::z2(), MonoidalCat::chain_min(3)] {
            let again = MonoidalCat::new(m.base.clone(), m.tensor.clone(), m.unit).unwrap();
            assert_eq!(again, m);
            assert!(promonoidal_from_monoidal(&m).validate().is_ok());
        }
    }

    #[test]
    fn promonoidal_examples() {
        let t = promonoidal_from_monoidal(&MonoidalCat::terminal());
        assert_eq!(t.size(0, 0, 0), 1);
        let z = promonoidal_from_monoidal(&MonoidalCat::z2());
        assert_eq!(z.size(0, 0, 0), 2);
        let c = promonoidal_from_monoidal(&MonoidalCat::chain_min(2));
        for x in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    assert_eq!(c.size(x, b, cc), usize::from(x <= b.min(cc)));
                }
            }
        }
    }

    #[test]
    fn tensor_on_terminal_is_product() {
        let m = MonoidalCat::terminal();
        let p = promonoidal_from_monoidal(&m);
        let f = Presheaf::constant(&m.base, 2);
        let g = Presheaf::constant(&m.base, 3);
        assert_eq!(day_tensor(&p, &f, &g, &caps()).unwrap().presheaf.sizes, vec![6]);
        let e = Presheaf::empty(&m.base);
        assert_eq!(day_tensor(&p, &e, &g, &caps()).unwrap().presheaf.sizes, vec![0]);
        assert_eq!(day_left_exponent(&p, &f, &g, &caps()).unwrap().presheaf.sizes, vec![9]);
        assert_eq!(day_right_exponent(&p, &g, &f, &caps()).unwrap().presheaf.sizes, vec![8]);
        assert_eq!(day_left_exponent(&p, &e, &g, &caps()).unwrap().presheaf.sizes, vec![1]);
    }

    #[test]
    fn group_examples() {
        let m = MonoidalCat::z2();
        let p = promonoidal_from_monoidal(&m);
        let y = Presheaf::representable(&m.base, 0);
        assert_eq!(day_tensor(&p, &y, &y, &caps()).unwrap().presheaf.sizes, vec![2]);
        assert_eq!(day_left_exponent(&p, &y, &y, &caps()).unwrap().presheaf.sizes, vec![2]);
        assert!(check_closed(&p, &y, &y, &y, &caps()).unwrap().is_ok());
        assert!(check_unit_laws(&p, &y, &caps()).unwrap().is_ok());
        let lhs = nat_transformations(&day_tensor(&p, &y, &y, &caps()).unwrap().presheaf, &y, &caps())
            .unwrap();
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn empty_unit_breaks_unit_laws() {
        let m = MonoidalCat::z2();
        let p = promonoidal_from_monoidal(&m)
            .with_unit(Presheaf::empty(&m.base))
            .unwrap();
        let y = Presheaf::representable(&m.base, 0);
        let report = check_unit_laws(&p, &y, &caps()).unwrap();
        assert_eq!(report.violations, vec![UnitViolation::Right, UnitViolation::Left]);
    }

    #[test]
    fn yoneda_monoidality() {
        for m in [MonoidalCat::terminal(), MonoidalCat::z2(), MonoidalCat::chain_min(3)] {
            assert!(check_yoneda_monoidality(&m, &caps()).unwrap().is_ok());
        }
    }

    #[test]
    fn empty_h_transposes_uniquely() {
        let m = MonoidalCat::chain_min(2);
        let p = promonoidal_from_monoidal(&m);
        let h = Presheaf::empty(&m.base);
        let f = Presheaf::representable(&m.base, 1);
        assert!(check_closed(&p, &h, &f, &f, &caps()).unwrap().is_ok());
    }

    #[test]
    fn indexed_examples() {
        let t = MonoidalCat::terminal();
        let f = vec![Presheaf::constant(&t.base, 2), Presheaf::constant(&t.base, 1)];
        let g = vec![Presheaf::constant(&t.base, 1), Presheaf::constant(&t.base, 3)];
        assert!(indexed_convolution_check(&t, &f, &g, &caps()).unwrap().is_ok());
        assert!(indexed_convolution_check(&t, &[], &[], &caps()).unwrap().is_ok());
        let c = MonoidalCat::chain_min(2);
        let y = Presheaf::representable(&c.base, 1);
        let z = Presheaf::representable(&c.base, 0);
        assert!(indexed_convolution_check(&c, &[y.clone(), z.clone()], &[z, y], &caps())
            .unwrap()
            .is_ok());
    }
}
