use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::arith::{is_fundamental_discriminant, kronecker, FundamentalDiscriminant};
use crate::curves::{minimal_model, TwoAdicPattern, WeierstrassModel};
use crate::localred::Kodaira;
use crate::{Error, SetupViolation};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn curve(a: [i64; 5]) -> WeierstrassModel {
    WeierstrassModel::from_i64s(a).unwrap()
}

fn e11() -> WeierstrassModel {
    curve([0, -1, 1, -10, -20])
}

fn e14() -> WeierstrassModel {
    curve([1, 0, 1, 4, -6])
}

fn fd(d: i64) -> FundamentalDiscriminant {
    FundamentalDiscriminant::from_i64(d).unwrap()
}

fn violations(r: crate::Result<TwistSetup>) -> Vec<SetupViolation> {
    match r {
        Err(Error::InvalidSetup(v)) => v,
        other => panic!("expected an invalid setup, got {other:?}"),
    }
}

#[test]
fn valid_setups() {
    let s = validate_setup(&e14(), &b(2), &b(7), &[b(17)]).unwrap();
    assert_eq!(*s.conductor(), b(14));
    assert!(!s.is_pair());
    let s = validate_setup(&e11(), &b(1), &b(11), &[b(13)]).unwrap();
    assert_eq!(s.n_minus_primes(), vec![b(11)]);
    let (np, nm) = canonical_split(&e11(), &[b(13)]).unwrap();
    assert_eq!((np, nm), (b(1), b(11)));
}

#[test]
fn invalid_setups_report_every_clause() {
    let e = e11();
    assert_eq!(
        violations(validate_setup(&e, &b(1), &b(11), &[b(14)])),
        vec![SetupViolation::NotFundamental(b(14))]
    );
    assert_eq!(
        violations(validate_setup(&e, &b(11), &b(1), &[b(13)])),
        vec![SetupViolation::NotSplit(b(11))]
    );
    assert_eq!(
        violations(validate_setup(&e, &b(1), &b(11), &[b(5)])),
        vec![SetupViolation::NotInert(b(11))]
    );
    assert_eq!(
        violations(validate_setup(&e, &b(1), &b(11), &[b(33)])),
        vec![SetupViolation::DiscriminantNotCoprimeToConductor(b(33))]
    );
    assert_eq!(
        violations(validate_setup(&e, &b(1), &b(7), &[b(13)])),
        vec![
            SetupViolation::ConductorMismatch {
                conductor: b(11),
                product: b(7)
            },
            SetupViolation::NMinusNotMultiplicative(b(7)),
        ]
    );

    // 27a1 has additive reduction at 3.
    let e27 = curve([0, 0, 1, 0, -7]);
    let v = violations(validate_setup(&e27, &b(1), &b(27), &[b(5)]));
    assert!(v.contains(&SetupViolation::NMinusNotSquarefree));
    assert!(v.contains(&SetupViolation::NMinusNotMultiplicative(b(3))));

    let blown_up = curve([0, -4, 8, -160, -1280]);
    assert!(
        violations(validate_setup(&blown_up, &b(1), &b(11), &[b(13)]))
            .contains(&SetupViolation::CurveNotMinimal)
    );

    assert_eq!(
        violations(validate_setup(&e, &b(11), &b(1), &[b(1), b(1)])),
        vec![SetupViolation::BothTrivial]
    );
    assert!(violations(validate_setup(&e, &b(11), &b(1), &[b(5), b(5)]))
        .contains(&SetupViolation::DiscriminantsNotCoprime));
    assert!(matches!(
        validate_setup(&e, &b(1), &b(11), &[]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn condition_star() {
    // 20a1: N = 4 * 5 and 2 is inert for both 5 and 13.
    let e20 = curve([0, 1, 0, 4, 4]);
    let v = violations(validate_setup(&e20, &b(20), &b(1), &[b(5), b(13)]));
    assert!(v.contains(&SetupViolation::ConditionStar(b(2))));
}

#[test]
fn decomposition_examples() {
    let s = canonical_setup(&e14(), &[b(17), b(5)]).unwrap();
    assert_eq!((s.n_plus().clone(), s.n_minus().clone()), (b(7), b(2)));
    let d = decompose(&s).unwrap();
    let one = b(1);
    assert_eq!(
        d.first,
        DecompositionSide {
            plus_i: one.clone(),
            minus_i: b(7),
            plus_ii: b(2),
            minus_ii: one.clone()
        }
    );
    assert_eq!(
        d.second,
        DecompositionSide {
            plus_i: one.clone(),
            minus_i: b(7),
            plus_ii: one.clone(),
            minus_ii: b(2)
        }
    );
    assert_eq!((d.first.plus(), d.first.minus()), (b(2), b(7)));
    assert_eq!((d.second.plus(), d.second.minus()), (b(1), b(14)));

    let swapped = decompose(&canonical_setup(&e14(), &[b(5), b(17)]).unwrap()).unwrap();
    assert_eq!((swapped.first, swapped.second), (d.second, d.first));

    let s = validate_setup(&e11(), &b(1), &b(11), &[b(1), b(13)]).unwrap();
    let d = decompose(&s).unwrap();
    assert_eq!(d.first.minus(), b(1));
    assert_eq!(d.first.plus_ii, b(11));
    assert_eq!(d.second.minus(), b(11));

    let single = validate_setup(&e11(), &b(1), &b(11), &[b(13)]).unwrap();
    assert!(matches!(decompose(&single), Err(Error::Precondition(_))));
}

#[test]
fn u_examples() {
    assert_eq!(u_of_discriminant(&e11(), &fd(13)), Ok(1));
    assert_eq!(u_of_discriminant(&e11(), &fd(8)), Ok(2));
    assert_eq!(u_of_discriminant(&e11(), &fd(12)), Ok(1));
    assert_eq!(u_of_discriminant(&e11(), &fd(5)), Ok(1));
    assert!(matches!(u_of_discriminant(&e14(), &fd(5)), Ok(1)));
    assert!(matches!(
        u_of_discriminant(&e14(), &fd(8)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn single_quantity_examples() {
    let s = validate_setup(&e11(), &b(1), &b(11), &[b(13)]).unwrap();
    let v = theorem13_quantity(&s).unwrap();
    assert_eq!(v.quantity, BigRational::from_integer(b(1)));
    assert_eq!(v.exponent, Some(0));
    assert!(v.is_even_exponent);
    assert_eq!(v.terms.twist_tamagawa, vec![(b(13), b(13), 2)]);
    assert_eq!(v.terms.c_hat, vec![(b(11), 1)]);
    assert_eq!(v.terms.omega_n_minus, 1);

    // Even D with the Case 2 shape at 2.
    let s = validate_setup(&e11(), &b(1), &b(11), &[b(8)]).unwrap();
    let v = theorem13_quantity(&s).unwrap();
    assert_eq!(v.terms.u, vec![(b(8), BigRational::from_integer(b(2)))]);
    assert!(v.is_even_exponent);

    // N- = 1 and an odd D with trivial local factors.
    let e = curve([0, 0, 1, -1, 0]); // 37a1
    let s = canonical_setup(&e, &[b(21)]).unwrap();
    assert_eq!(*s.n_minus(), b(1));
    let v = theorem13_quantity(&s).unwrap();
    assert!(v.is_even_exponent);

    let pair = validate_setup(&e11(), &b(1), &b(11), &[b(1), b(13)]).unwrap();
    assert!(matches!(
        theorem13_quantity(&pair),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn pair_quantity_examples() {
    let s = canonical_setup(&e11(), &[b(13), b(5)]).unwrap();
    let v = theorem31_quantity(&s).unwrap();
    assert!(v.holds(), "{v:?}");
    let t = theorem31_quantity(&canonical_setup(&e11(), &[b(5), b(13)]).unwrap()).unwrap();
    assert_eq!(t.verdict.quantity, v.verdict.quantity);

    let s = validate_setup(&e11(), &b(1), &b(11), &[b(1), b(13)]).unwrap();
    let v = theorem31_quantity(&s).unwrap();
    let single =
        theorem13_quantity(&validate_setup(&e11(), &b(1), &b(11), &[b(13)]).unwrap()).unwrap();
    assert_eq!(v.verdict.quantity, single.quantity);
    assert_eq!(v.partials[1].quantity, single.quantity);
    assert!(v.holds());
}

#[test]
fn inert_identity_examples() {
    let s = validate_setup(&e11(), &b(1), &b(11), &[b(1), b(13)]).unwrap();
    let c = lemma32_check(&s, &b(11)).unwrap();
    assert_eq!((c.lhs.clone(), c.rhs.clone()), (b(5), b(5)));
    assert!(c.holds);
    assert!(matches!(
        lemma32_check(&s, &b(13)),
        Err(Error::Precondition(_))
    ));

    // 14a1 is nonsplit at 2 with v_2 = 6.
    let s = canonical_setup(&e14(), &[b(17), b(5)]).unwrap();
    let c = lemma32_check(&s, &b(2)).unwrap();
    assert_eq!(c.lhs, b(12));
    assert!(c.holds);

    let l = lemma33_check(&validate_setup(&e11(), &b(1), &b(11), &[b(1), b(13)]).unwrap()).unwrap();
    assert_eq!((l.lhs, l.rhs, l.holds), (b(5), b(5), true));
    let l = lemma33_check(&s).unwrap();
    assert!(l.holds && l.n_plus_mismatches.is_empty());
}

#[test]
fn quadrec_examples() {
    let disc = b(-161051);
    assert_eq!(quadrec_symbol(&disc, &fd(13), 5), Ok(-1));
    assert_eq!(quadrec_symbol(&b(3), &fd(12), 2), Ok(-1));
    assert_eq!(quadrec_symbol(&b(7), &fd(40), 0), Ok(1));
    assert_eq!(quadrec_symbol(&b(7), &fd(24), 0), Ok(-1));
    assert_eq!(quadrec_symbol(&b(5), &fd(8), 0), Ok(-1));
    assert!(quadrec_symbol(&b(6), &fd(8), 0).is_err());
    assert_eq!(kronecker(&disc, &b(13)), Ok(-1));
}

#[test]
fn tamrecrel_examples() {
    let c = tamrecrel_check(&e11(), &fd(13)).unwrap();
    assert_eq!((c.product.clone(), c.symbol), (b(2), -1));
    assert!(c.holds);
    let c = tamrecrel_check(&e11(), &fd(8)).unwrap();
    assert_eq!((c.product.clone(), c.symbol, c.is_square), (b(1), 1, true));
    // (Δ/37) = 1 and (Δ/53) = 1 for 11a1 with c = 1 and 4; 13 has symbol -1.
    let c = tamrecrel_check(&e11(), &fd(13 * 37)).unwrap();
    assert_eq!((c.product.clone(), c.symbol), (b(2), -1));
    assert!(c.holds);
}

#[test]
fn two_adic_cases() {
    let e = e11();
    let check = |d: i64| {
        let t = TwistData::compute(&e, &fd(d), &[b(11)]).unwrap();
        two_adic_case_check(&e, &t).unwrap()
    };
    assert_eq!(check(13), None);
    let c = check(8).unwrap();
    assert_eq!(
        (c.case, c.pattern),
        (TwoAdicCase::Two, TwoAdicPattern::EvenA1)
    );
    assert_eq!((c.kodaira, c.tamagawa), (Kodaira::II, 1));
    assert!(c.holds);
    let c = check(12).unwrap();
    assert_eq!(
        (c.case, c.kodaira, c.tamagawa),
        (TwoAdicCase::One, Kodaira::IIStar, 1)
    );

    // 37a1 = [0,0,1,-1,0] has odd a1 after the strongly minimal search.
    let e = curve([0, 0, 1, -1, 0]);
    for d in [8i64, 12, 24, 28, 40, 56] {
        let t = TwistData::compute(&e, &fd(d), &[b(37)]).unwrap();
        let c = two_adic_case_check(&e, &t).unwrap().unwrap();
        assert!(c.holds, "{d}: {c:?}");
    }
}

#[test]
fn case3_enumeration_matches() {
    let r = case3_enumeration();
    assert_eq!(r.tau_range, BTreeSet::from([0, 16]));
    assert_eq!(r.c2_profile, BTreeSet::from(C2_PROFILE));
    assert_eq!(r.c4_profile, BTreeSet::from(C4_PROFILE));
    assert!(r.matches_expected());
}

#[test]
fn auxiliary_search() {
    let s = validate_setup(&e11(), &b(11), &b(1), &[b(1)]).unwrap();
    assert_eq!(
        find_auxiliary_discriminant(&s, &b(11), DEFAULT_SEARCH_BOUND),
        Ok(fd(8))
    );
    assert_eq!(
        find_auxiliary_discriminant(&s, &b(11), 1),
        Err(Error::SearchExhausted(b(1)))
    );
    assert_eq!(
        find_auxiliary_discriminant(&s, &b(3), 100),
        Err(Error::NotMultiplicative(b(3)))
    );

    let s = validate_setup(&e14(), &b(2), &b(7), &[b(17)]).unwrap();
    let d3 = find_auxiliary_discriminant(&s, &b(7), DEFAULT_SEARCH_BOUND).unwrap();
    assert_eq!(d3, fd(57));
    assert_eq!(d3.chi(&b(2)), 1);
    assert_eq!(d3.chi(&b(7)), 1);

    assert!(SignPattern::new([(b(7), 1), (b(7), -1)]).is_err());
    assert!(SignPattern::new([(b(7), 0)]).is_err());
}

fn models() -> impl Strategy<Value = WeierstrassModel> {
    let c = -25i64..=25;
    [c.clone(), c.clone(), c.clone(), c.clone(), c]
        .prop_filter_map("singular", |a| WeierstrassModel::from_i64s(a).ok())
        .prop_map(|e| minimal_model(&e).unwrap().minimal)
}

fn fundamentals(max: i64) -> Vec<BigInt> {
    (2..max)
        .map(b)
        .filter(is_fundamental_discriminant)
        .collect()
}

/// The first valid single setup for `e` scanning the discriminants from `start`.
fn first_valid(e: &WeierstrassModel, start: usize) -> Option<TwistSetup> {
    let ds = fundamentals(300);
    let n = ds.len();
    (0..n)
        .map(|i| &ds[(start + i) % n])
        .find_map(|d| canonical_setup(e, core::slice::from_ref(d)).ok())
}

fn first_valid_pair(e: &WeierstrassModel, start: usize) -> Option<TwistSetup> {
    let ds: Vec<BigInt> = core::iter::once(b(1)).chain(fundamentals(80)).collect();
    let n = ds.len();
    (0..n * n)
        .map(|k| (start + k) % (n * n))
        .filter(|k| k / n < k % n)
        .find_map(|k| canonical_setup(e, &[ds[k / n].clone(), ds[k % n].clone()]).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn single_discriminant_laws(e in models(), start in 0usize..200) {
        let Some(s) = first_valid(&e, start) else { return Ok(()) };
        let t = &s.twists().unwrap()[0];
        let v = theorem13_quantity(&s).unwrap();
        prop_assert!(v.is_even_exponent, "{} D={}: {:?}", e, t.discriminant, v);

        let d = &t.discriminant;
        let b_exp = quadrec_exponent(&s);
        prop_assert_eq!(quadrec_symbol(e.discriminant(), d, b_exp).unwrap(), kronecker(e.discriminant(), d.odd_part()).unwrap());

        let trr = tamrecrel_check_with(&e, t).unwrap();
        prop_assert!(trr.holds, "{:?}", trr);

        let u = u_of_discriminant(&e, d).unwrap();
        prop_assert_eq!(BigRational::from_integer(u.into()), t.u());

        if let Some(c) = two_adic_case_check(&e, t).unwrap() {
            prop_assert!(c.holds, "{} D={}: {:?}", e, d, c);
        }
    }

    #[test]
    fn pair_laws(e in models(), start in 0usize..2000) {
        let Some(s) = first_valid_pair(&e, start) else { return Ok(()) };
        let v = theorem31_quantity(&s).unwrap();
        prop_assert!(v.holds(), "{} {:?}: {:?}", e, s.discriminants(), v);
        for q in s.n_minus_primes() {
            prop_assert!(lemma32_check(&s, &q).unwrap().holds);
        }
        let l = lemma33_check(&s).unwrap();
        prop_assert!(l.holds && l.n_plus_mismatches.is_empty(), "{:?}", l);

        let d = decompose(&s).unwrap();
        let ds = s.discriminants();
        let swapped = validate_setup(&e, s.n_plus(), s.n_minus(), &[ds[1].value().clone(), ds[0].value().clone()]).unwrap();
        let d2 = decompose(&swapped).unwrap();
        prop_assert_eq!((d.first, d.second), (d2.second, d2.first));
        prop_assert_eq!(theorem31_quantity(&swapped).unwrap().verdict.quantity, v.verdict.quantity);
    }
}
