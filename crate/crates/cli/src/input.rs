//! JSON input schemas and their conversion into library values.

use std::fs;
use std::path::Path;

use freesem::consequence::SatisfactionRelation;
use freesem::dayconv::{MonoidalCat, Promonoidal};
use freesem::fincat::{
    validate_category, FinCat, Functor, FunctorTransformation, Presheaf, TabulatedBifunctor,
};
use freesem::frames::{KripkeFrame, TernaryFrame, Valuation};
use freesem::{Caps, Error, Subset};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeMap;

use crate::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesJson {
    pub objects: usize,
    pub morphisms: Vec<MorphismJson>,
    pub identities: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
}

/// A category given by its tables, or by name: `terminal`, `empty`,
/// `chain:N`, `discrete:N`, `cyclic:N`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CategoryJson {
    Named(String),
    Tables(TablesJson),
}

impl CategoryJson {
    /// Builds the category without checking the category laws.
    pub fn build_unchecked(&self, caps: &Caps) -> Result<FinCat, CliError> {
        let c = match self {
            CategoryJson::Named(name) => named_category(name)?,
            CategoryJson::Tables(t) => {
                let morphisms: Vec<(usize, usize)> =
                    t.morphisms.iter().map(|m| (m.dom, m.cod)).collect();
                FinCat::from_tables(t.objects, &morphisms, &t.identities, &t.compose)?
            }
        };
        if c.morphism_count() > caps.max_morphisms {
            return Err(Error::CapacityExceeded {
                what: "category morphisms",
                needed: c.morphism_count(),
                cap: caps.max_morphisms,
            }
            .into());
        }
        Ok(c)
    }

    pub fn build(&self, caps: &Caps) -> Result<FinCat, CliError> {
        let c = self.build_unchecked(caps)?;
        if let Some(v) = validate_category(&c).first() {
            return Err(CliError::Input(format!("not a category: {v}")));
        }
        Ok(c)
    }
}

fn named_category(name: &str) -> Result<FinCat, CliError> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| CliError::Input(format!("bad size in category `{name}`")))?;
            (k, Some(n))
        }
        None => (name, None),
    };
    match (kind, arg) {
        ("terminal", None) => Ok(FinCat::terminal()),
        ("empty", None) => Ok(FinCat::empty()),
        ("chain", Some(n)) => Ok(FinCat::chain(n)),
        ("discrete", Some(n)) => Ok(FinCat::discrete(n)),
        ("cyclic", Some(n)) if n > 0 => Ok(FinCat::cyclic_group(n)),
        _ => Err(CliError::Input(format!("unknown category `{name}`"))),
    }
}

/// Object and morphism index maps. `morphisms` may be omitted when the
/// target is thin.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub objects: Vec<usize>,
    #[serde(default)]
    pub morphisms: Option<Vec<usize>>,
}

impl FunctorJson {
    pub fn build(&self, source: &FinCat, target: &FinCat) -> Result<Functor, CliError> {
        match &self.morphisms {
            Some(m) => Ok(Functor::new(
                source.clone(),
                target.clone(),
                self.objects.clone(),
                m.clone(),
            )?),
            None if target.is_thin() => {
                if self.objects.len() != source.object_count()
                    || self.objects.iter().any(|&o| o >= target.object_count())
                {
                    return Err(CliError::Input("functor object map has the wrong shape".into()));
                }
                Functor::between_thin(source, target, self.objects.clone()).ok_or_else(|| {
                    CliError::Input("object map does not extend to a functor".into())
                })
            }
            None => Err(CliError::Input(
                "functor needs a morphism map unless its target is thin".into(),
            )),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafJson {
    pub sizes: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

impl PresheafJson {
    pub fn build(&self, base: &FinCat) -> Result<Presheaf, CliError> {
        Ok(Presheaf::new(base.clone(), self.sizes.clone(), self.actions.clone())?)
    }
}

pub fn load_presheaf(path: &Path, base: &FinCat) -> Result<Presheaf, CliError> {
    read_json::<PresheafJson>(path)?.build(base)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BifunctorJson {
    pub category: CategoryJson,
    pub sizes: Vec<Vec<usize>>,
    pub contra: Vec<Vec<Vec<usize>>>,
    pub co: Vec<Vec<Vec<usize>>>,
}

pub fn load_bifunctor(path: &Path, caps: &Caps) -> Result<TabulatedBifunctor, CliError> {
    let b: BifunctorJson = read_json(path)?;
    let c = b.category.build(caps)?;
    Ok(TabulatedBifunctor::new(c, b.sizes, b.contra, b.co)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KripkeFrameJson {
    pub size: usize,
    pub leq: Vec<(usize, usize)>,
}

impl KripkeFrameJson {
    /// The pairs to validate, closed first if asked.
    pub fn pairs(&self, close: bool) -> Vec<(usize, usize)> {
        if close {
            KripkeFrame::close(self.size, &self.leq)
        } else {
            self.leq.clone()
        }
    }
}

pub fn load_kripke(path: &Path, close: bool) -> Result<KripkeFrame, CliError> {
    let k: KripkeFrameJson = read_json(path)?;
    Ok(KripkeFrame::new(k.size, &k.pairs(close))?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TernaryFrameJson {
    pub size: usize,
    pub triples: Vec<(usize, usize, usize)>,
}

pub fn load_ternary(path: &Path) -> Result<TernaryFrame, CliError> {
    let t: TernaryFrameJson = read_json(path)?;
    Ok(TernaryFrame::new(t.size, &t.triples)?)
}

pub fn load_valuation(path: &Path, size: usize) -> Result<Valuation, CliError> {
    let v: BTreeMap<String, Vec<usize>> = read_json(path)?;
    Ok(Valuation::from_indices(
        size,
        v.iter().map(|(k, s)| (k.as_str(), s.as_slice())),
    )?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub models: Vec<String>,
    pub sentences: Vec<String>,
    pub matrix: Vec<Vec<bool>>,
}

pub fn load_relation(path: &Path) -> Result<SatisfactionRelation, CliError> {
    let r: RelationJson = read_json(path)?;
    Ok(SatisfactionRelation::new(r.models, r.sentences, r.matrix)?)
}

pub fn premises(rel: &SatisfactionRelation, names: &[String]) -> Result<Subset, CliError> {
    let indices = names
        .iter()
        .map(|n| rel.sentence_index(n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subset::from_indices(rel.sentences().len(), &indices).expect("indices are in range"))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalJson {
    pub category: CategoryJson,
    pub tensor: FunctorJson,
    pub unit: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PromonoidalJson {
    pub category: CategoryJson,
    pub sizes: Vec<Vec<Vec<usize>>>,
    pub out: Vec<Vec<Vec<Vec<usize>>>>,
    pub left: Vec<Vec<Vec<Vec<usize>>>>,
    pub right: Vec<Vec<Vec<Vec<usize>>>>,
    pub unit: PresheafJson,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BaseJson {
    Monoidal(MonoidalJson),
    Promonoidal(PromonoidalJson),
}

/// The structure a Day convolution runs over.
pub enum Base {
    Monoidal(MonoidalCat),
    Promonoidal(Promonoidal),
}

impl Base {
    pub fn promonoidal(&self) -> Promonoidal {
        match self {
            Base::Monoidal(m) => freesem::dayconv::promonoidal_from_monoidal(m),
            Base::Promonoidal(p) => p.clone(),
        }
    }

    pub fn category(&self) -> FinCat {
        match self {
            Base::Monoidal(m) => m.base.clone(),
            Base::Promonoidal(p) => p.base().clone(),
        }
    }

    pub fn monoidal(&self) -> Result<&MonoidalCat, CliError> {
        match self {
            Base::Monoidal(m) => Ok(m),
            Base::Promonoidal(_) => Err(CliError::Input(
                "this check needs a monoidal base, not a promonoidal one".into(),
            )),
        }
    }
}

/// `terminal`, `z2`, `chain-min:N`, or a path to a monoidal or promonoidal
/// JSON file.
pub fn load_base(spec: &str, caps: &Caps) -> Result<Base, CliError> {
    match spec {
        "terminal" => return Ok(Base::Monoidal(MonoidalCat::terminal())),
        "z2" => return Ok(Base::Monoidal(MonoidalCat::z2())),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("chain-min:") {
        let n: usize = n
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Input(format!("bad chain length in `{spec}`")))?;
        return Ok(Base::Monoidal(MonoidalCat::chain_min(n)));
    }
    match read_json::<BaseJson>(Path::new(spec))? {
        BaseJson::Monoidal(m) => {
            let c = m.category.build(caps)?;
            // A × A is internal and not subject to the morphism cap
            let pairs = freesem::fincat::product(&c, &c, &Caps {
                max_morphisms: usize::MAX,
                ..*caps
            })?;
            let tensor = m.tensor.build(&pairs, &c)?;
            Ok(Base::Monoidal(MonoidalCat::new(c, tensor, m.unit)?))
        }
        BaseJson::Promonoidal(p) => {
            let c = p.category.build(caps)?;
            let unit = p.unit.build(&c)?;
            Ok(Base::Promonoidal(Promonoidal::new(
                c, p.sizes, p.out, p.left, p.right, unit,
            )?))
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleJson {
    pub a: CategoryJson,
    pub b: CategoryJson,
    pub abar: CategoryJson,
    pub y: FunctorJson,
    pub f: FunctorJson,
    pub g: FunctorJson,
    pub eta: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionJson {
    pub c: CategoryJson,
    pub d: CategoryJson,
    pub f: FunctorJson,
    pub g: FunctorJson,
    pub unit: Vec<usize>,
    pub counit: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FindAdjointJson {
    pub source: CategoryJson,
    pub target: CategoryJson,
    pub functor: FunctorJson,
}

pub fn transformation(components: &[usize]) -> FunctorTransformation {
    FunctorTransformation {
        components: components.to_vec(),
    }
}
