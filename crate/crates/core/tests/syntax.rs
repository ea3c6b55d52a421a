mod common;

use freesem::syntax::{fold, formulas_up_to_depth, parse, print, Algebra, Connective, Dialect, Formula};
use freesem::{Error, Result};
use proptest::prelude::*;

fn connective() -> impl Strategy<Value = Connective> {
    proptest::sample::select(Connective::ALL.to_vec())
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        proptest::sample::select(vec!["a", "b", "c", "x1", "long_name"]).prop_map(Formula::var),
        Just(Formula::Top),
        Just(Formula::Bot),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        (connective(), inner.clone(), inner).prop_map(|(c, l, r)| Formula::binary(c, l, r))
    })
}

/// Counts nodes; a second algebra with a different carrier.
struct Size;

impl Algebra for Size {
    type Value = usize;

    fn var(&self, _: &str) -> Result<usize> {
        Ok(1)
    }

    fn top(&self) -> Result<usize> {
        Ok(1)
    }

    fn bot(&self) -> Result<usize> {
        Ok(1)
    }

    fn binary(&self, _: Connective, l: usize, r: usize) -> Result<usize> {
        Ok(l + r + 1)
    }
}

struct Arith;

impl Algebra for Arith {
    type Value = u64;

    fn var(&self, name: &str) -> Result<u64> {
        Ok(common::arith_var(name))
    }

    fn top(&self) -> Result<u64> {
        Ok(1)
    }

    fn bot(&self) -> Result<u64> {
        Ok(0)
    }

    fn binary(&self, c: Connective, l: u64, r: u64) -> Result<u64> {
        Ok(common::arith_binary(c, l, r))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        let text = print(&f);
        let back = parse(&text, Dialect::Full).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(print(&back), text);
    }

    #[test]
    fn folds_agree(f in formula()) {
        let iterative = common::iterative_eval(&f, &common::arith_var, &1, &0, &common::arith_binary);
        prop_assert_eq!(fold(&f, &Arith).unwrap(), iterative);
        let size = common::iterative_eval(&f, &|_| 1usize, &1, &1, &|_, l, r| l + r + 1);
        prop_assert_eq!(fold(&f, &Size).unwrap(), size);
    }
}

#[test]
fn enumeration_counts() {
    assert_eq!(formulas_up_to_depth(&["A"], 1, Dialect::Prop).len(), 3);
    assert_eq!(formulas_up_to_depth(&["A"], 2, Dialect::Prop).len(), 30);
    assert_eq!(formulas_up_to_depth(&["a", "b", "c"], 2, Dialect::Full).len(), 155);
    // Lambek has no constants: n atoms, then n + 3 n²
    assert_eq!(formulas_up_to_depth(&["a"], 2, Dialect::Lambek).len(), 4);
    for f in formulas_up_to_depth(&["a", "b"], 3, Dialect::Lambek) {
        assert!(Dialect::Lambek.check(&f).is_ok());
    }
}

#[test]
fn precedence_and_associativity() {
    let p = |s| parse(s, Dialect::Full).unwrap();
    let (a, b, c) = (Formula::var("a"), Formula::var("b"), Formula::var("c"));
    assert_eq!(p("a -> b -> c"), Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone())));
    assert_eq!(p("a & b | c"), Formula::or(Formula::and(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("a * b * c"), Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("a \\ b | c"), Formula::limp(a.clone(), Formula::or(b.clone(), c.clone())));
    assert_eq!(p("c / a"), Formula::rimp(a, c));
}

#[test]
fn errors_carry_positions() {
    for (text, position) in [("a \\ b \\ c", 6), ("(a", 2), ("a &", 3), ("", 0), ("a ? b", 2)] {
        match parse(text, Dialect::Full) {
            Err(Error::Syntax { position: p, .. }) => assert_eq!(p, position, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(matches!(parse("a * b", Dialect::Prop), Err(Error::Dialect { .. })));
    assert!(matches!(parse("top", Dialect::Lambek), Err(Error::Dialect { .. })));
    assert!(matches!(parse("a | b", Dialect::Lambek), Err(Error::Dialect { .. })));
}
