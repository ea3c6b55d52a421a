use freesem::fincat::{all_functors, FinCat, Functor, FunctorTransformation};
use freesem::frames::KripkeFrame;
use freesem::gen::poset_category;
use freesem::kan::{
    adjoint_oracle, check_absolute_lifting, check_adjunction, check_yoneda_triangle,
    AdjunctionData, YonedaTriangleData,
};
use freesem::Caps;

fn posets(max: usize) -> Vec<FinCat> {
    (0..=max).flat_map(KripkeFrame::all).map(|fr| poset_category(&fr)).collect()
}

#[test]
fn oracle_adjunctions_satisfy_the_triangle_identities() {
    let caps = Caps::default();
    for a in posets(2) {
        for b in posets(3) {
            for f in all_functors(&a, &b, &caps).unwrap() {
                if let Some(d) = adjoint_oracle(&f, &caps).unwrap() {
                    assert!(check_adjunction(&d).is_ok());
                    assert!(check_yoneda_triangle(&d.triangle(), &caps).unwrap().is_ok());
                }
            }
        }
    }
}

#[test]
fn absolute_liftings_survive_restriction() {
    let caps = Caps::default();
    let ks = posets(2);
    for a in posets(3) {
        for b in posets(2) {
            for f in all_functors(&a, &b, &caps).unwrap() {
                let Some(d) = adjoint_oracle(&f, &caps).unwrap() else {
                    continue;
                };
                let t = d.triangle();
                for k_cat in &ks {
                    for k in all_functors(k_cat, &a, &caps).unwrap() {
                        let r = t.restrict(&k).unwrap();
                        assert!(check_absolute_lifting(&r).is_ok());
                    }
                }
            }
        }
    }
}

#[test]
fn identity_adjunction() {
    for c in posets(3) {
        let d = AdjunctionData::identity(&c);
        assert!(check_adjunction(&d).is_ok());
    }
}

#[test]
fn no_right_adjoint_without_top() {
    // C → 1 has a right adjoint iff C has a terminal object
    let caps = Caps::default();
    let discrete = FinCat::discrete(2);
    let f = Functor::to_terminal(&discrete);
    assert!(adjoint_oracle(&f, &caps).unwrap().is_none());
    let chain = FinCat::chain(2);
    assert!(adjoint_oracle(&Functor::to_terminal(&chain), &caps).unwrap().is_some());
}

#[test]
fn ill_typed_eta_is_reported() {
    let c = FinCat::chain(2);
    let id = Functor::identity(&c);
    // component at 1 is the arrow 0 ≤ 1 instead of an endomorphism of 1
    let bad = FunctorTransformation {
        components: vec![c.id(0), c.hom(0, 1)[0]],
    };
    let t = YonedaTriangleData::new(id.clone(), id.clone(), id, bad).unwrap();
    assert!(!check_absolute_lifting(&t).is_ok());
    assert!(!check_yoneda_triangle(&t, &Caps::default()).unwrap().is_ok());
}
