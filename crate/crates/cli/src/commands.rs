//! One function per subcommand; each fills in the run report.

use std::fmt;
use std::path::{Path, PathBuf};

use freesem::consequence::{check_extension_compatibility, kleisli};
use freesem::dayconv::{
    check_closed, check_unit_laws, check_yoneda_monoidality, day_exponent, day_tensor,
    indexed_convolution_check, Residual,
};
use freesem::fincat::{coend, end, validate_category, Functor, Presheaf};
use freesem::frames::{
    check_kripke_equivalence, check_order, check_residuation, eval_lambek, kripke_force,
    KripkeFrame,
};
use freesem::kan::{
    adjoint_oracle, check_adjunction, check_yoneda_triangle, AdjunctionData, YonedaTriangleData,
};
use freesem::syntax::{parse, print, Dialect};
use freesem::{Caps, Subset};
use serde::Serialize;
use serde_json::json;

use crate::input;
use crate::report::RunReport;
use crate::{
    CatCommand, CliError, Command, DayCommand, KanCommand, KripkeArgs, LawsCommand, SideArg,
};

type Outcome = Result<(), CliError>;

pub fn run(command: &Command, caps: &Caps, report: &mut RunReport) -> Outcome {
    match command {
        Command::Parse { formula, dialect } => {
            let f = parse(formula, (*dialect).into())?;
            let text = print(&f);
            let dialect: Dialect = (*dialect).into();
            report.result(
                json!({ "formula": text, "depth": f.depth(), "dialect": dialect.name() }),
                vec![text.clone()],
            );
            Ok(())
        }
        Command::EvalKripke {
            frame,
            valuation,
            formula,
        } => {
            let fr = input::load_kripke(&frame.frame, frame.close)?;
            let v = input::load_valuation(valuation, fr.size())?;
            let phi = parse(formula, Dialect::Prop)?;
            points(report, &kripke_force(&fr, &v, &phi)?);
            Ok(())
        }
        Command::EvalTernary {
            frame,
            valuation,
            formula,
        } => {
            let fr = input::load_ternary(frame)?;
            let v = input::load_valuation(valuation, fr.size())?;
            let phi = parse(formula, Dialect::Full)?;
            points(report, &eval_lambek(&fr, &v, &phi)?);
            Ok(())
        }
        Command::CheckFrame { frame, valuation } => check_frame(frame, valuation.as_ref(), report),
        Command::Laws(LawsCommand::Residuation { frame }) => {
            let fr = input::load_ternary(frame)?;
            report.check("residuation", &check_residuation(&fr, caps)?.violations);
            Ok(())
        }
        Command::KripkeEquivalence {
            frame,
            valuation,
            formula,
        } => {
            let fr = input::load_kripke(&frame.frame, frame.close)?;
            let v = input::load_valuation(valuation, fr.size())?;
            let phi = parse(formula, Dialect::Prop)?;
            let forced = kripke_force(&fr, &v, &phi)?;
            report.check(
                "kripke_equivalence",
                &check_kripke_equivalence(&fr, &v, &phi)?.violations,
            );
            report.result(json!({ "points": forced }), vec![forced.to_string()]);
            Ok(())
        }
        Command::Consequence {
            relation,
            premises,
            goal,
        } => consequence(relation, premises, goal.as_deref(), report),
        Command::Kleisli { relation } => {
            let rel = input::load_relation(relation)?;
            let order = kleisli(&rel)?;
            let mut lines = Vec::new();
            for (i, row) in order.relation.iter().enumerate() {
                let above: Vec<&str> = row
                    .iter()
                    .enumerate()
                    .filter(|&(j, &b)| b && j != i)
                    .map(|(j, _)| order.sentences[j].as_str())
                    .collect();
                lines.push(format!("{} entails [{}]", order.sentences[i], above.join(", ")));
            }
            report.check(
                "extension_compatibility",
                &check_extension_compatibility(&rel)?.violations,
            );
            report.result(&order, lines);
            Ok(())
        }
        Command::Day(day) => run_day(day, caps, report),
        Command::Kan(kan) => run_kan(kan, caps, report),
        Command::Cat(cat) => run_cat(cat, caps, report),
    }
}

fn points(report: &mut RunReport, s: &Subset) {
    report.result(json!({ "points": s }), vec![s.to_string()]);
}

#[derive(Debug, Serialize)]
struct UpClosureViolation {
    variable: String,
    lower: usize,
    upper: usize,
}

impl fmt::Display for UpClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` holds at {} but not at {} although {} ≤ {}",
            self.variable, self.lower, self.upper, self.lower, self.upper
        )
    }
}

fn check_frame(frame: &KripkeArgs, valuation: Option<&PathBuf>, report: &mut RunReport) -> Outcome {
    let raw: input::KripkeFrameJson = input::read_json(&frame.frame)?;
    let pairs = raw.pairs(frame.close);
    let order = check_order(raw.size, &pairs);
    report.check("order", &order.violations);
    if !order.is_ok() {
        return Ok(());
    }
    let fr = KripkeFrame::new(raw.size, &pairs)?;
    if let Some(path) = valuation {
        let v = input::load_valuation(path, fr.size())?;
        let failures: Vec<UpClosureViolation> = v
            .iter()
            .filter_map(|(name, s)| {
                fr.up_closure_failure(s).map(|(lower, upper)| UpClosureViolation {
                    variable: name.to_string(),
                    lower,
                    upper,
                })
            })
            .collect();
        report.check("up_closure", &failures);
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct Countermodel {
    model: String,
    premises: Vec<String>,
    goal: String,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} satisfies [{}] but not {}",
            self.model,
            self.premises.join(", "),
            self.goal
        )
    }
}

fn consequence(
    relation: &Path,
    premises: &[String],
    goal: Option<&str>,
    report: &mut RunReport,
) -> Outcome {
    let rel = input::load_relation(relation)?;
    let gamma = input::premises(&rel, premises)?;
    match goal {
        Some(goal) => {
            let psi = rel.sentence_index(goal)?;
            let counter: Vec<Countermodel> = (0..rel.models().len())
                .filter(|&m| {
                    let t = rel.theory_of(m);
                    gamma.is_subset(&t) && !t.contains(psi)
                })
                .map(|m| Countermodel {
                    model: rel.models()[m].clone(),
                    premises: premises.to_vec(),
                    goal: goal.to_string(),
                })
                .collect();
            debug_assert_eq!(counter.is_empty(), rel.consequence(&gamma, psi));
            report.check("consequence", &counter);
        }
        None => {
            let closure: Vec<&str> = rel
                .closure(&gamma)
                .iter()
                .map(|j| rel.sentences()[j].as_str())
                .collect();
            let text = format!("[{}]", closure.join(", "));
            report.result(json!({ "closure": closure }), vec![text]);
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct PresheafOut<'a> {
    sizes: &'a [usize],
    actions: &'a [Vec<usize>],
}

fn presheaf_out(p: &Presheaf) -> PresheafOut<'_> {
    PresheafOut {
        sizes: &p.sizes,
        actions: &p.actions,
    }
}

fn presheaf_lines(label: &str, p: &Presheaf) -> Vec<String> {
    let mut lines = vec![format!("{label} sizes: {:?}", p.sizes)];
    for (u, a) in p.actions.iter().enumerate() {
        lines.push(format!("  morphism {u}: {a:?}"));
    }
    lines
}

fn load_all(paths: &[PathBuf], base: &freesem::fincat::FinCat) -> Result<Vec<Presheaf>, CliError> {
    paths.iter().map(|p| input::load_presheaf(p, base)).collect()
}

fn run_day(command: &DayCommand, caps: &Caps, report: &mut RunReport) -> Outcome {
    match command {
        DayCommand::Tensor { base, f, g } => {
            let base = input::load_base(&base.base, caps)?;
            let c = base.category();
            let (f, g) = (input::load_presheaf(f, &c)?, input::load_presheaf(g, &c)?);
            let t = day_tensor(&base.promonoidal(), &f, &g, caps)?;
            let elements: Vec<Vec<_>> = c
                .objects()
                .map(|x| {
                    (0..t.presheaf.size(x))
                        .map(|k| {
                            let (b, c, s, r, m) = t.representative(x, k);
                            json!({ "b": b, "c": c, "s": s, "r": r, "m": m })
                        })
                        .collect()
                })
                .collect();
            report.result(
                json!({ "presheaf": presheaf_out(&t.presheaf), "representatives": elements }),
                presheaf_lines("F ⊗ G", &t.presheaf),
            );
            Ok(())
        }
        DayCommand::Exponent { base, side, f, g } => {
            let base = input::load_base(&base.base, caps)?;
            let c = base.category();
            let (f, g) = (input::load_presheaf(f, &c)?, input::load_presheaf(g, &c)?);
            let side = match side {
                SideArg::Left => Residual::Left,
                SideArg::Right => Residual::Right,
            };
            let e = day_exponent(&base.promonoidal(), side, &f, &g, caps)?;
            report.result(
                json!({ "residual": side, "presheaf": presheaf_out(&e.presheaf), "families": e.families }),
                presheaf_lines(&format!("F ⊸ G ({side})"), &e.presheaf),
            );
            Ok(())
        }
        DayCommand::CheckUnits { base, f } => {
            let base = input::load_base(&base.base, caps)?;
            let f = input::load_presheaf(f, &base.category())?;
            report.check("unit_laws", &check_unit_laws(&base.promonoidal(), &f, caps)?.violations);
            Ok(())
        }
        DayCommand::CheckYoneda { base } => {
            let base = input::load_base(&base.base, caps)?;
            let m = base.monoidal()?;
            report.check("yoneda_monoidality", &check_yoneda_monoidality(m, caps)?.violations);
            Ok(())
        }
        DayCommand::CheckClosed { base, h, f, g } => {
            let base = input::load_base(&base.base, caps)?;
            let c = base.category();
            let h = input::load_presheaf(h, &c)?;
            let f = input::load_presheaf(f, &c)?;
            let g = input::load_presheaf(g, &c)?;
            report.check("closed", &check_closed(&base.promonoidal(), &h, &f, &g, caps)?.violations);
            Ok(())
        }
        DayCommand::IndexedCheck { base, f, g } => {
            let base = input::load_base(&base.base, caps)?;
            let m = base.monoidal()?;
            let (f, g) = (load_all(f, &m.base)?, load_all(g, &m.base)?);
            report.check(
                "indexed_convolution",
                &indexed_convolution_check(m, &f, &g, caps)?.violations,
            );
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct FunctorOut<'a> {
    objects: &'a [usize],
    morphisms: &'a [usize],
}

fn functor_out(f: &Functor) -> FunctorOut<'_> {
    FunctorOut {
        objects: &f.objects,
        morphisms: &f.morphisms,
    }
}

fn run_kan(command: &KanCommand, caps: &Caps, report: &mut RunReport) -> Outcome {
    match command {
        KanCommand::CheckTriangle { input: path } => {
            let t: input::TriangleJson = input::read_json(path)?;
            let a = t.a.build(caps)?;
            let b = t.b.build(caps)?;
            let abar = t.abar.build(caps)?;
            let data = YonedaTriangleData::new(
                t.y.build(&a, &abar)?,
                t.f.build(&a, &b)?,
                t.g.build(&b, &abar)?,
                input::transformation(&t.eta),
            )?;
            report.check("yoneda_triangle", &check_yoneda_triangle(&data, caps)?.violations);
            Ok(())
        }
        KanCommand::CheckAdjunction { input: path } => {
            let j: input::AdjunctionJson = input::read_json(path)?;
            let c = j.c.build(caps)?;
            let d = j.d.build(caps)?;
            let data = AdjunctionData::new(
                j.f.build(&c, &d)?,
                j.g.build(&d, &c)?,
                input::transformation(&j.unit),
                input::transformation(&j.counit),
            )?;
            report.check("adjunction", &check_adjunction(&data).violations);
            Ok(())
        }
        KanCommand::FindAdjoint { input: path } => {
            let j: input::FindAdjointJson = input::read_json(path)?;
            let source = j.source.build(caps)?;
            let target = j.target.build(caps)?;
            let f = j.functor.build(&source, &target)?;
            match adjoint_oracle(&f, caps)? {
                Some(d) => {
                    let lines = vec![
                        format!("right adjoint objects: {:?}", d.g.objects),
                        format!("right adjoint morphisms: {:?}", d.g.morphisms),
                        format!("unit: {:?}", d.unit.components),
                        format!("counit: {:?}", d.counit.components),
                    ];
                    report.result(
                        json!({
                            "found": true,
                            "g": functor_out(&d.g),
                            "unit": d.unit.components,
                            "counit": d.counit.components,
                        }),
                        lines,
                    );
                }
                None => report.result(json!({ "found": false }), vec!["no right adjoint".into()]),
            }
            Ok(())
        }
    }
}

fn run_cat(command: &CatCommand, caps: &Caps, report: &mut RunReport) -> Outcome {
    match command {
        CatCommand::Validate { category } => {
            let j: input::CategoryJson = input::read_json(category)?;
            let c = j.build_unchecked(caps)?;
            report.check("category", &validate_category(&c).violations);
            Ok(())
        }
        CatCommand::Coend { bifunctor } => {
            let t = input::load_bifunctor(bifunctor, caps)?;
            let q = coend(&t, caps)?;
            let mut lines = vec![format!("classes: {}", q.classes)];
            for (d, inj) in q.injections.iter().enumerate() {
                lines.push(format!("  T({d}, {d}) -> {inj:?}"));
            }
            report.result(&q, lines);
            Ok(())
        }
        CatCommand::End { bifunctor } => {
            let t = input::load_bifunctor(bifunctor, caps)?;
            let e = end(&t, caps)?;
            let mut lines = vec![format!("families: {}", e.families.len())];
            lines.extend(e.families.iter().map(|f| format!("  {f:?}")));
            report.result(&e, lines);
            Ok(())
        }
    }
}
