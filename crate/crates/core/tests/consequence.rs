use freesem::consequence::{check_extension_compatibility, kleisli, SatisfactionRelation};
use freesem::{Error, Subset};
use proptest::prelude::*;

fn relation() -> impl Strategy<Value = SatisfactionRelation> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(m, s)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), s), m)
            .prop_map(move |rows| {
                SatisfactionRelation::new(
                    (0..m).map(|i| format!("M{i}")).collect(),
                    (0..s).map(|j| format!("s{j}")).collect(),
                    rows,
                )
                .unwrap()
            })
    })
}

/// `Γ ⊨ ψ` by searching for a countermodel.
fn countermodel(rel: &SatisfactionRelation, gamma: &Subset, psi: usize) -> bool {
    for m in 0..rel.models().len() {
        let mut all = true;
        for g in gamma.iter() {
            all &= rel.satisfies(m, g);
        }
        if all && !rel.satisfies(m, psi) {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn consequence_matches_countermodel_search(rel in relation()) {
        let n = rel.sentences().len();
        for gamma in Subset::all(n) {
            for psi in 0..n {
                prop_assert_eq!(rel.consequence(&gamma, psi), !countermodel(&rel, &gamma, psi));
            }
        }
    }

    #[test]
    fn closure_operator(rel in relation()) {
        let n = rel.sentences().len();
        let subsets: Vec<Subset> = Subset::all(n).collect();
        for gamma in &subsets {
            let cn = rel.closure(gamma);
            prop_assert!(gamma.is_subset(&cn));
            prop_assert_eq!(&rel.closure(&cn), &cn);
            for delta in subsets.iter().filter(|d| gamma.is_subset(d)) {
                prop_assert!(cn.is_subset(&rel.closure(delta)));
            }
        }
    }

    #[test]
    fn theories_are_closed(rel in relation()) {
        for m in 0..rel.models().len() {
            let t = rel.theory_of(m);
            prop_assert_eq!(rel.closure(&t), t);
        }
        prop_assert!(check_extension_compatibility(&rel).unwrap().is_ok());
    }

    #[test]
    fn kleisli_is_single_premise_consequence(rel in relation()) {
        let order = kleisli(&rel).unwrap();
        let n = rel.sentences().len();
        for i in 0..n {
            for j in 0..n {
                let single = Subset::from_indices(n, &[i]).unwrap();
                prop_assert_eq!(order.relation[i][j], !countermodel(&rel, &single, j));
            }
        }
    }
}

#[test]
fn no_models_entails_everything() {
    let rel = SatisfactionRelation::new(vec![], vec!["p".into(), "q".into()], vec![]).unwrap();
    assert_eq!(rel.closure(&Subset::empty(2)), Subset::full(2));
}

#[test]
fn unknown_names() {
    let rel = SatisfactionRelation::from_matrix(vec![vec![true]]).unwrap();
    assert!(matches!(rel.theory("nobody"), Err(Error::UnknownName(_))));
    assert!(matches!(rel.consequence_by_name(&["s0"], "s7"), Err(Error::UnknownName(_))));
}
