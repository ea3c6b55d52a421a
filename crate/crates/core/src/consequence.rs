//! Semantic consequence over a finite satisfaction relation.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::subset::Subset;

/// A boolean matrix `models × sentences`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionRelation {
    models: Vec<String>,
    sentences: Vec<String>,
    matrix: Vec<Vec<bool>>,
}

impl SatisfactionRelation {
    pub fn new(
        models: Vec<String>,
        sentences: Vec<String>,
        matrix: Vec<Vec<bool>>,
    ) -> Result<SatisfactionRelation> {
        unique(&models, "model")?;
        unique(&sentences, "sentence")?;
        if matrix.len() != models.len() || matrix.iter().any(|r| r.len() != sentences.len()) {
            return Err(Error::InvalidInput(format!(
                "matrix must have {} rows of {} entries",
                models.len(),
                sentences.len()
            )));
        }
        Ok(SatisfactionRelation {
            models,
            sentences,
            matrix,
        })
    }

    /// Unnamed relation; models are `M0, M1, ..` and sentences `s0, s1, ..`.
    pub fn from_matrix(matrix: Vec<Vec<bool>>) -> Result<SatisfactionRelation> {
        let cols = matrix.first().map_or(0, Vec::len);
        SatisfactionRelation::new(
            (0..matrix.len()).map(|i| format!("M{i}")).collect(),
            (0..cols).map(|j| format!("s{j}")).collect(),
            matrix,
        )
    }

    pub fn models(&self) -> &[String] {
        &self.models
    }

    pub fn sentences(&self) -> &[String] {
        &self.sentences
    }

    pub fn satisfies(&self, model: usize, sentence: usize) -> bool {
        self.matrix[model][sentence]
    }

    pub fn model_index(&self, name: &str) -> Result<usize> {
        position(&self.models, name)
    }

    pub fn sentence_index(&self, name: &str) -> Result<usize> {
        position(&self.sentences, name)
    }

    /// The sentences satisfied by `model`.
    pub fn theory_of(&self, model: usize) -> Subset {
        Subset::from_fn(self.sentences.len(), |j| self.matrix[model][j])
    }

    pub fn theory(&self, model: &str) -> Result<Subset> {
        Ok(self.theory_of(self.model_index(model)?))
    }

    /// Every model satisfying all of `gamma` satisfies `psi`.
    pub fn consequence(&self, gamma: &Subset, psi: usize) -> bool {
        (0..self.models.len()).all(|m| {
            let theory = self.theory_of(m);
            !gamma.is_subset(&theory) || theory.contains(psi)
        })
    }

    pub fn consequence_by_name(&self, gamma: &[&str], psi: &str) -> Result<bool> {
        let indices = gamma
            .iter()
            .map(|s| self.sentence_index(s))
            .collect::<Result<Vec<_>>>()?;
        let gamma = Subset::from_indices(self.sentences.len(), &indices)
            .expect("indices come from the relation");
        Ok(self.consequence(&gamma, self.sentence_index(psi)?))
    }

    /// `Cn(Γ) = {ψ : Γ ⊨ ψ}`.
    pub fn closure(&self, gamma: &Subset) -> Subset {
        Subset::from_fn(self.sentences.len(), |psi| self.consequence(gamma, psi))
    }
}

fn unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    match names.iter().find(|n| !seen.insert(n.as_str())) {
        Some(dup) => Err(Error::InvalidInput(format!("duplicate {what} name `{dup}`"))),
        None => Ok(()),
    }
}

fn position(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Sentences preordered by single-premise consequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KleisliPreorder {
    pub sentences: Vec<String>,
    /// `relation[i][j]` iff sentence `i` entails sentence `j`.
    pub relation: Vec<Vec<bool>>,
}

/// The consequence preorder; reflexivity and transitivity are verified.
pub fn kleisli(rel: &SatisfactionRelation) -> Result<KleisliPreorder> {
    let n = rel.sentences.len();
    let relation: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let single = Subset::from_fn(n, |k| k == i);
            (0..n).map(|j| rel.consequence(&single, j)).collect()
        })
        .collect();
    for i in 0..n {
        if !relation[i][i] {
            return Err(Error::InternalLawViolation(format!(
                "consequence is not reflexive at `{}`",
                rel.sentences[i]
            )));
        }
        for j in 0..n {
            for k in 0..n {
                if relation[i][j] && relation[j][k] && !relation[i][k] {
                    return Err(Error::InternalLawViolation(format!(
                        "consequence is not transitive at `{}`, `{}`, `{}`",
                        rel.sentences[i], rel.sentences[j], rel.sentences[k]
                    )));
                }
            }
        }
    }
    Ok(KleisliPreorder {
        sentences: rel.sentences.clone(),
        relation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityViolation {
    pub model: String,
    pub premise: String,
    pub conclusion: String,
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} satisfies {} which entails {}, but not {}",
            self.model, self.premise, self.conclusion, self.conclusion
        )
    }
}

/// `M ⊨ φ` and `φ ⊨ ψ` imply `M ⊨ ψ`.
pub fn check_extension_compatibility(
    rel: &SatisfactionRelation,
) -> Result<Report<CompatibilityViolation>> {
    let order = kleisli(rel)?;
    let mut report = Report::ok();
    for m in 0..rel.models.len() {
        for (i, row) in order.relation.iter().enumerate() {
            for (j, &entails) in row.iter().enumerate() {
                if rel.satisfies(m, i) && entails && !rel.satisfies(m, j) {
                    report.push(CompatibilityViolation {
                        model: rel.models[m].clone(),
                        premise: rel.sentences[i].clone(),
                        conclusion: rel.sentences[j].clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}
