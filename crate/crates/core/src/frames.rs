//! Ternary frames, Kripke frames, and their powerset semantics.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::dayconv::Residual;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::subset::Subset;
use crate::syntax::{fold, Algebra, Connective, Dialect, Formula};

/// A carrier `{0, .., size - 1}` with a ternary relation `R(x, a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryFrame {
    size: usize,
    rel: Vec<bool>,
}

impl TernaryFrame {
    pub fn new(size: usize, triples: &[(usize, usize, usize)]) -> Result<TernaryFrame> {
        let mut rel = vec![false; size * size * size];
        for &(x, a, b) in triples {
            if x >= size || a >= size || b >= size {
                return Err(Error::InvalidInput(format!(
                    "triple ({x}, {a}, {b}) out of range for a frame of size {size}"
                )));
            }
            rel[(x * size + a) * size + b] = true;
        }
        Ok(TernaryFrame { size, rel })
    }

    /// The frame whose relation is the bits of `mask`, triple `(x, a, b)` at
    /// bit `(x * size + a) * size + b`.
    pub fn from_mask(size: usize, mask: u128) -> TernaryFrame {
        assert!(size * size * size <= 128, "frame too large for a mask");
        TernaryFrame {
            size,
            rel: (0..size * size * size).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn related(&self, x: usize, a: usize, b: usize) -> bool {
        self.rel[(x * self.size + a) * self.size + b]
    }

    /// The triples in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size;
        (0..n * n * n)
            .filter(|&i| self.rel[i])
            .map(|i| (i / (n * n), i / n % n, i % n))
            .collect()
    }

    /// `{x : ∃a, b. f(a) ∧ g(b) ∧ R(x, a, b)}`.
    pub fn conv(&self, f: &Subset, g: &Subset) -> Subset {
        let mut out = Subset::empty(self.size);
        for (x, a, b) in self.triples() {
            if f.contains(a) && g.contains(b) {
                out.insert(x);
            }
        }
        out
    }

    /// `{a : ∀x, b. f(b) ∧ R(x, a, b) ⇒ g(x)}`.
    pub fn left_residual(&self, f: &Subset, g: &Subset) -> Subset {
        let mut bad = Subset::empty(self.size);
        for (x, a, b) in self.triples() {
            if f.contains(b) && !g.contains(x) {
                bad.insert(a);
            }
        }
        bad.complement()
    }

    /// `{b : ∀x, a. f(a) ∧ R(x, a, b) ⇒ g(x)}`.
    pub fn right_residual(&self, f: &Subset, g: &Subset) -> Subset {
        let mut bad = Subset::empty(self.size);
        for (x, a, b) in self.triples() {
            if f.contains(a) && !g.contains(x) {
                bad.insert(b);
            }
        }
        bad.complement()
    }

    pub fn residual(&self, side: Residual, f: &Subset, g: &Subset) -> Subset {
        match side {
            Residual::Left => self.left_residual(f, g),
            Residual::Right => self.right_residual(f, g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResiduationViolation {
    pub residual: Residual,
    pub h: Vec<usize>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl fmt::Display for ResiduationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let product = match self.residual {
            Residual::Left => "h ⊗ f",
            Residual::Right => "f ⊗ h",
        };
        write!(
            f,
            "{} residuation fails: h = {:?}, f = {:?}, g = {:?} ({product} ≤ g disagrees with h ≤ f ⊸ g)",
            self.residual, self.h, self.f, self.g
        )
    }
}

/// Both residuation equivalences over all triples of subsets.
pub fn check_residuation(fr: &TernaryFrame, caps: &Caps) -> Result<Report<ResiduationViolation>> {
    if fr.size > caps.max_frame_exhaustive {
        return Err(Error::CapacityExceeded {
            what: "carrier for exhaustive residuation",
            needed: fr.size,
            cap: caps.max_frame_exhaustive,
        });
    }
    let subsets: Vec<Subset> = Subset::all(fr.size).collect();
    let k = subsets.len();
    let mut conv = Vec::with_capacity(k * k);
    let mut left = Vec::with_capacity(k * k);
    let mut right = Vec::with_capacity(k * k);
    for f in &subsets {
        for g in &subsets {
            conv.push(fr.conv(f, g));
            left.push(fr.left_residual(f, g));
            right.push(fr.right_residual(f, g));
        }
    }
    let mut report = Report::ok();
    for (hi, h) in subsets.iter().enumerate() {
        for (fi, f) in subsets.iter().enumerate() {
            for (gi, g) in subsets.iter().enumerate() {
                let cases = [
                    (Residual::Left, &conv[hi * k + fi], &left[fi * k + gi]),
                    (Residual::Right, &conv[fi * k + hi], &right[fi * k + gi]),
                ];
                for (residual, product, exponent) in cases {
                    if product.is_subset(g) != h.is_subset(exponent) {
                        report.push(ResiduationViolation {
                            residual,
                            h: h.indices(),
                            f: f.indices(),
                            g: g.indices(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum OrderViolation {
    OutOfRange { p: usize, q: usize },
    Reflexivity { p: usize },
    Antisymmetry { p: usize, q: usize },
    Transitivity { p: usize, q: usize, r: usize },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::OutOfRange { p, q } => write!(f, "pair ({p}, {q}) is out of range"),
            OrderViolation::Reflexivity { p } => write!(f, "order is not reflexive at {p}"),
            OrderViolation::Antisymmetry { p, q } => {
                write!(f, "order is not antisymmetric at ({p}, {q})")
            }
            OrderViolation::Transitivity { p, q, r } => {
                write!(f, "order is not transitive at ({p}, {q}, {r})")
            }
        }
    }
}

/// The partial-order laws for a relation given by its pairs. Out-of-range
/// pairs are reported and the remaining laws are checked without them.
pub fn check_order(size: usize, pairs: &[(usize, usize)]) -> Report<OrderViolation> {
    let mut report = Report::ok();
    let mut leq = vec![false; size * size];
    for &(p, q) in pairs {
        if p < size && q < size {
            leq[p * size + q] = true;
        } else {
            report.push(OrderViolation::OutOfRange { p, q });
        }
    }
    let at = |p: usize, q: usize| leq[p * size + q];
    for p in 0..size {
        if !at(p, p) {
            report.push(OrderViolation::Reflexivity { p });
        }
        for q in 0..size {
            if p < q && at(p, q) && at(q, p) {
                report.push(OrderViolation::Antisymmetry { p, q });
            }
            for r in 0..size {
                if at(p, q) && at(q, r) && !at(p, r) {
                    report.push(OrderViolation::Transitivity { p, q, r });
                }
            }
        }
    }
    report
}

/// A finite partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    size: usize,
    leq: Vec<bool>,
}

impl KripkeFrame {
    /// The order must be given in full: reflexive, antisymmetric and
    /// transitive.
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<KripkeFrame> {
        if let Some(v) = check_order(size, pairs).first() {
            return Err(Error::InvalidInput(v.to_string()));
        }
        let mut leq = vec![false; size * size];
        for &(p, q) in pairs {
            leq[p * size + q] = true;
        }
        Ok(KripkeFrame { size, leq })
    }

    /// Reflexive-transitive closure of `pairs`; out-of-range pairs are kept
    /// so that validation reports them.
    pub fn close(size: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut leq = vec![false; size * size];
        let mut extra = Vec::new();
        for &(p, q) in pairs {
            if p < size && q < size {
                leq[p * size + q] = true;
            } else {
                extra.push((p, q));
            }
        }
        for p in 0..size {
            leq[p * size + p] = true;
        }
        for k in 0..size {
            for p in 0..size {
                for q in 0..size {
                    if leq[p * size + k] && leq[k * size + q] {
                        leq[p * size + q] = true;
                    }
                }
            }
        }
        let mut out: Vec<(usize, usize)> = (0..size * size)
            .filter(|&i| leq[i])
            .map(|i| (i / size, i % size))
            .collect();
        out.extend(extra);
        out
    }

    /// Every partial order on `{0, .., size - 1}`.
    pub fn all(size: usize) -> Vec<KripkeFrame> {
        let off: Vec<(usize, usize)> = (0..size)
            .flat_map(|p| (0..size).filter(move |&q| q != p).map(move |q| (p, q)))
            .collect();
        assert!(off.len() < 32, "too many posets to enumerate");
        let mut out = Vec::new();
        for mask in 0..1u32 << off.len() {
            let mut pairs: Vec<(usize, usize)> = (0..size).map(|p| (p, p)).collect();
            pairs.extend(off.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &pq)| pq));
            if let Ok(fr) = KripkeFrame::new(size, &pairs) {
                out.push(fr);
            }
        }
        out
    }

    pub fn chain(size: usize) -> KripkeFrame {
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|p| (p..size).map(move |q| (p, q)))
            .collect();
        KripkeFrame::new(size, &pairs).expect("chains are partial orders")
    }

    pub fn discrete(size: usize) -> KripkeFrame {
        let pairs: Vec<(usize, usize)> = (0..size).map(|p| (p, p)).collect();
        KripkeFrame::new(size, &pairs).expect("discrete orders are partial orders")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p * self.size + q]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size * self.size)
            .filter(|&i| self.leq[i])
            .map(|i| (i / self.size, i % self.size))
            .collect()
    }

    /// A pair `(p, q)` with `p ≤ q`, `p ∈ s` and `q ∉ s`, if any.
    pub fn up_closure_failure(&self, s: &Subset) -> Option<(usize, usize)> {
        self.pairs()
            .into_iter()
            .find(|&(p, q)| s.contains(p) && !s.contains(q))
    }

    pub fn is_up_closed(&self, s: &Subset) -> bool {
        self.up_closure_failure(s).is_none()
    }

    /// Every up-closed subset, in increasing mask order.
    pub fn up_sets(&self) -> Vec<Subset> {
        Subset::all(self.size).filter(|s| self.is_up_closed(s)).collect()
    }
}

/// Truth sets for variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    sets: BTreeMap<String, Subset>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    /// Builds a valuation over a carrier of `size` points from member lists.
    pub fn from_indices<'a>(
        size: usize,
        entries: impl IntoIterator<Item = (&'a str, &'a [usize])>,
    ) -> Result<Valuation> {
        let mut v = Valuation::new();
        for (name, indices) in entries {
            let s = Subset::from_indices(size, indices).ok_or_else(|| {
                Error::InvalidInput(format!("valuation of `{name}` has an out-of-range point"))
            })?;
            v.set(name, s);
        }
        Ok(v)
    }

    pub fn set(&mut self, name: &str, s: Subset) {
        self.sets.insert(name.to_string(), s);
    }

    pub fn get(&self, name: &str) -> Result<&Subset> {
        self.sets
            .get(name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Subset)> {
        self.sets.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn check_size(&self, size: usize) -> Result<()> {
        match self.sets.iter().find(|(_, s)| s.len() != size) {
            Some((name, _)) => Err(Error::InvalidInput(format!(
                "valuation of `{name}` is over a carrier of the wrong size"
            ))),
            None => Ok(()),
        }
    }
}

struct KripkeAlgebra<'a> {
    fr: &'a KripkeFrame,
    v: &'a Valuation,
}

impl Algebra for KripkeAlgebra<'_> {
    type Value = Subset;

    fn var(&self, name: &str) -> Result<Subset> {
        self.v.get(name).cloned()
    }

    fn top(&self) -> Result<Subset> {
        Ok(Subset::full(self.fr.size))
    }

    fn bot(&self) -> Result<Subset> {
        Ok(Subset::empty(self.fr.size))
    }

    fn binary(&self, c: Connective, l: Subset, r: Subset) -> Result<Subset> {
        let fr = self.fr;
        match c {
            Connective::And => Ok(l.intersection(&r)),
            Connective::Or => Ok(l.union(&r)),
            // p forces l ⇒ r iff every q ≥ p forcing l forces r
            Connective::Imp => Ok(Subset::from_fn(fr.size, |p| {
                (0..fr.size).all(|q| !fr.leq(p, q) || !l.contains(q) || r.contains(q))
            })),
            other => Err(Error::Dialect {
                connective: other.symbol(),
                dialect: Dialect::Prop.name(),
            }),
        }
    }
}

/// The set of points forcing `phi`.
pub fn kripke_force(fr: &KripkeFrame, v: &Valuation, phi: &Formula) -> Result<Subset> {
    v.check_size(fr.size)?;
    for (name, s) in v.iter() {
        if let Some((lower, upper)) = fr.up_closure_failure(s) {
            return Err(Error::ValuationNotUpClosed {
                variable: name.to_string(),
                lower,
                upper,
            });
        }
    }
    Dialect::Prop.check(phi)?;
    fold(phi, &KripkeAlgebra { fr, v })
}

struct TernaryAlgebra<'a> {
    fr: &'a TernaryFrame,
    v: &'a Valuation,
}

impl Algebra for TernaryAlgebra<'_> {
    type Value = Subset;

    fn var(&self, name: &str) -> Result<Subset> {
        self.v.get(name).cloned()
    }

    fn top(&self) -> Result<Subset> {
        Ok(Subset::full(self.fr.size))
    }

    fn bot(&self) -> Result<Subset> {
        Ok(Subset::empty(self.fr.size))
    }

    fn binary(&self, c: Connective, l: Subset, r: Subset) -> Result<Subset> {
        match c {
            Connective::Or => Ok(l.union(&r)),
            Connective::Tensor => Ok(self.fr.conv(&l, &r)),
            Connective::LImp => Ok(self.fr.left_residual(&l, &r)),
            Connective::RImp => Ok(self.fr.right_residual(&l, &r)),
            other => Err(Error::Dialect {
                connective: other.symbol(),
                dialect: Dialect::Lambek.name(),
            }),
        }
    }
}

/// Powerset semantics over a ternary frame: `⊗` is convolution, the
/// implications are its residuals, `∨` is union, `⊥` is empty and `⊤` is the
/// whole carrier.
pub fn eval_lambek(fr: &TernaryFrame, v: &Valuation, phi: &Formula) -> Result<Subset> {
    v.check_size(fr.size)?;
    fold(phi, &TernaryAlgebra { fr, v })
}

/// `R(x, a, b)` iff `a ≤ x` and `b ≤ x`.
pub fn kripke_to_ternary(fr: &KripkeFrame) -> TernaryFrame {
    let n = fr.size;
    TernaryFrame {
        size: n,
        rel: (0..n * n * n)
            .map(|i| {
                let (x, a, b) = (i / (n * n), i / n % n, i % n);
                fr.leq(a, x) && fr.leq(b, x)
            })
            .collect(),
    }
}

/// Sends `∧` to `⊗` and `⇒` to the chosen residual.
pub fn translate(phi: &Formula, residual: Residual) -> Formula {
    phi.map_connectives(&|c| match c {
        Connective::And => Connective::Tensor,
        Connective::Imp => match residual {
            Residual::Left => Connective::LImp,
            Residual::Right => Connective::RImp,
        },
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KripkeEquivalenceViolation {
    pub residual: Residual,
    pub kripke: Vec<usize>,
    pub ternary: Vec<usize>,
}

impl fmt::Display for KripkeEquivalenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} translation: forcing gives {:?} but the ternary frame gives {:?}",
            self.residual, self.kripke, self.ternary
        )
    }
}

/// Compares forcing with the ternary semantics of both translations.
pub fn check_kripke_equivalence(
    fr: &KripkeFrame,
    v: &Valuation,
    phi: &Formula,
) -> Result<Report<KripkeEquivalenceViolation>> {
    let forced = kripke_force(fr, v, phi)?;
    let ternary = kripke_to_ternary(fr);
    let mut report = Report::ok();
    for residual in [Residual::Left, Residual::Right] {
        let other = eval_lambek(&ternary, v, &translate(phi, residual))?;
        if other != forced {
            report.push(KripkeEquivalenceViolation {
                residual,
                kripke: forced.indices(),
                ternary: other.indices(),
            });
        }
    }
    Ok(report)
}
