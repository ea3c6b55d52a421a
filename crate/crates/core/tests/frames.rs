use freesem::dayconv::Residual;
use freesem::frames::{
    check_residuation, eval_lambek, kripke_force, kripke_to_ternary, KripkeFrame, TernaryFrame,
    Valuation,
};
use freesem::syntax::{formulas_up_to_depth, parse, Connective, Dialect, Formula};
use freesem::{Caps, Error, Subset};
use proptest::prelude::*;

/// A ternary frame on at most three points plus three subsets of it.
fn frame_and_sets() -> impl Strategy<Value = (TernaryFrame, Subset, Subset, Subset)> {
    (0usize..=3).prop_flat_map(|n| {
        let rel = 0..1u128 << (n * n * n);
        let set = 0..1u64 << n;
        (rel, set.clone(), set.clone(), set).prop_map(move |(r, f, g, h)| {
            (
                TernaryFrame::from_mask(n, r),
                Subset::from_mask(n, f),
                Subset::from_mask(n, g),
                Subset::from_mask(n, h),
            )
        })
    })
}

fn kripke_frames() -> Vec<KripkeFrame> {
    (0..=3).flat_map(KripkeFrame::all).collect()
}

fn boolean(phi: &Formula, a: bool) -> bool {
    match phi {
        Formula::Var(_) => a,
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Binary(c, l, r) => {
            let (l, r) = (boolean(l, a), boolean(r, a));
            match c {
                Connective::And => l && r,
                Connective::Or => l || r,
                Connective::Imp => !l || r,
                _ => unreachable!("prop formulas only"),
            }
        }
    }
}

proptest! {
    #[test]
    fn residuation_on_random_frames((fr, _, _, _) in frame_and_sets()) {
        prop_assert!(check_residuation(&fr, &Caps::default()).unwrap().is_ok());
    }

    #[test]
    fn conv_is_monotone((fr, f, g, h) in frame_and_sets()) {
        let fh = f.union(&h);
        prop_assert!(fr.conv(&f, &g).is_subset(&fr.conv(&fh, &g)));
        prop_assert!(fr.conv(&g, &f).is_subset(&fr.conv(&g, &fh)));
    }

    #[test]
    fn residuals_are_antitone_then_monotone((fr, f, g, h) in frame_and_sets()) {
        let fh = f.union(&h);
        let gh = g.union(&h);
        for side in [Residual::Left, Residual::Right] {
            prop_assert!(fr.residual(side, &fh, &g).is_subset(&fr.residual(side, &f, &g)));
            prop_assert!(fr.residual(side, &f, &g).is_subset(&fr.residual(side, &f, &gh)));
        }
    }

    #[test]
    fn symmetric_frames_have_one_residual((fr, f, g, _) in frame_and_sets()) {
        let n = fr.size();
        let sym: Vec<_> = fr.triples().into_iter().flat_map(|(x, a, b)| [(x, a, b), (x, b, a)]).collect();
        let sym = TernaryFrame::new(n, &sym).unwrap();
        prop_assert_eq!(sym.conv(&f, &g), sym.conv(&g, &f));
        prop_assert_eq!(sym.left_residual(&f, &g), sym.right_residual(&f, &g));
    }
}

#[test]
fn kripke_conv_is_intersection_on_up_sets() {
    for fr in kripke_frames() {
        let t = kripke_to_ternary(&fr);
        let ups = fr.up_sets();
        for f in &ups {
            for g in &ups {
                assert_eq!(t.conv(f, g), f.intersection(g));
                for side in [Residual::Left, Residual::Right] {
                    assert!(fr.is_up_closed(&t.residual(side, f, g)));
                }
            }
        }
    }
}

#[test]
fn forcing_is_up_closed() {
    let formulas = formulas_up_to_depth(&["A", "B"], 2, Dialect::Prop);
    for fr in kripke_frames() {
        let ups = fr.up_sets();
        for a in &ups {
            for b in &ups {
                let mut v = Valuation::new();
                v.set("A", a.clone());
                v.set("B", b.clone());
                for phi in &formulas {
                    assert!(fr.is_up_closed(&kripke_force(&fr, &v, phi).unwrap()));
                }
            }
        }
    }
}

#[test]
fn discrete_frames_are_boolean() {
    let formulas = formulas_up_to_depth(&["A"], 3, Dialect::Prop);
    for n in 0..=3 {
        let fr = KripkeFrame::discrete(n);
        for a in Subset::all(n) {
            let mut v = Valuation::new();
            v.set("A", a.clone());
            for phi in &formulas {
                let forced = kripke_force(&fr, &v, phi).unwrap();
                for p in 0..n {
                    assert_eq!(forced.contains(p), boolean(phi, a.contains(p)));
                }
            }
        }
    }
}

#[test]
fn excluded_middle_fails_on_a_chain() {
    let fr = KripkeFrame::chain(2);
    let v = Valuation::from_indices(2, [("A", &[1usize][..])]).unwrap();
    let phi = parse("A | (A -> bot)", Dialect::Prop).unwrap();
    assert_eq!(kripke_force(&fr, &v, &phi).unwrap().indices(), vec![1]);
}

#[test]
fn input_errors() {
    let fr = KripkeFrame::chain(2);
    let down = Valuation::from_indices(2, [("A", &[0usize][..])]).unwrap();
    let a = Formula::var("A");
    assert!(matches!(
        kripke_force(&fr, &down, &a),
        Err(Error::ValuationNotUpClosed { .. })
    ));
    assert!(matches!(
        kripke_force(&fr, &Valuation::new(), &a),
        Err(Error::UnboundVariable(_))
    ));
    let t = kripke_to_ternary(&fr);
    assert!(matches!(
        eval_lambek(&t, &down, &Formula::and(a.clone(), a)),
        Err(Error::Dialect { .. })
    ));
    assert!(KripkeFrame::new(2, &[(0, 1), (1, 0)]).is_err());
}
