use std::sync::OnceLock;

use cylschur::cylindric::{count_cssyt, enumerate_cssyt, CylindricDiagram};
use cylschur::flagged::{
    contingency_count, enumerate_flagged_ssyt, flagged_kostka, flagged_schur, flagged_schur_jt, h_product,
    ContingencySpec, FlagPair, SkewShape,
};
use cylschur::gt::GtPattern;
use cylschur::polyring::Rational;
use cylschur::qsym_poset::{chain_congruence_closure, OrientedPoset};
use cylschur::saturation::{fit_sequence, FitKind};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn shapes() -> &'static [SkewShape] {
    static S: OnceLock<Vec<SkewShape>> = OnceLock::new();
    S.get_or_init(|| SkewShape::all_up_to(7, 4))
}

fn flag_lists() -> &'static [Vec<FlagPair>] {
    static F: OnceLock<Vec<Vec<FlagPair>>> = OnceLock::new();
    F.get_or_init(|| (0..=4).map(|r| FlagPair::all(r, 4)).collect())
}

fn diagrams() -> &'static [CylindricDiagram] {
    static D: OnceLock<Vec<CylindricDiagram>> = OnceLock::new();
    D.get_or_init(|| CylindricDiagram::all_up_to(6, 6, false))
}

fn posets() -> &'static [OrientedPoset] {
    static P: OnceLock<Vec<OrientedPoset>> = OnceLock::new();
    P.get_or_init(|| OrientedPoset::all_up_to(5))
}

/// A shape from the corpus and one of its flag pairs with b <= 4.
fn shape_and_flags() -> impl Strategy<Value = (SkewShape, FlagPair)> {
    (any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(i, j)| {
        let s = i.get(shapes()).clone();
        let f = j.get(&flag_lists()[s.rows()]).clone();
        (s, f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi_trudi_matches_tableaux((s, f) in shape_and_flags()) {
        prop_assert_eq!(flagged_schur_jt(&s, &f, 4).unwrap(), flagged_schur(&s, &f, 4).unwrap());
    }

    #[test]
    fn kostka_is_a_coefficient((s, f) in shape_and_flags(), w in prop::collection::vec(0u32..4, 4)) {
        let poly = flagged_schur(&s, &f, 4).unwrap();
        let k = flagged_kostka(&s, &w, &f).unwrap();
        prop_assert_eq!(poly.coefficient(&w), Rational::from_integer((k as i64).into()));
        let listed = enumerate_flagged_ssyt(&s, &f, 4, Some(&w)).unwrap().len() as u128;
        prop_assert_eq!(listed, k);
    }

    #[test]
    fn h_product_coefficients_count_tables(
        alpha in prop::collection::vec(0i64..4, 1..4),
        seed in any::<prop::sample::Index>(),
        beta in prop::collection::vec(0u32..5, 3),
    ) {
        let flags = seed.get(&FlagPair::all(alpha.len(), 3)).clone();
        let poly = h_product(&alpha, &flags, 3).unwrap();
        let spec = ContingencySpec::new(alpha.clone(), beta.iter().map(|&b| b as i64).collect(), flags).unwrap();
        let count = contingency_count(&spec);
        prop_assert_eq!(poly.coefficient(&beta), Rational::from_integer((count as i64).into()));
    }

    #[test]
    fn closure_is_idempotent(i in any::<prop::sample::Index>(), picks in prop::collection::vec(any::<bool>(), 12)) {
        let p = i.get(posets());
        let seed: Vec<(usize, usize)> = p.covers().iter().zip(picks.iter().cycle()).filter(|(_, &b)| b).map(|(e, _)| *e).collect();
        let closed = chain_congruence_closure(p, &seed).unwrap();
        let edges = closed.edges(p);
        for e in &seed {
            prop_assert!(edges.contains(e));
        }
        let again = chain_congruence_closure(p, &edges).unwrap();
        prop_assert_eq!(again.edges(p), edges);
    }

    #[test]
    fn cylindric_count_matches_listing(i in any::<prop::sample::Index>(), w in prop::collection::vec(0u32..4, 3)) {
        let d = i.get(diagrams());
        let listed = enumerate_cssyt(d, 3, Some(&w)).unwrap().len() as u128;
        prop_assert_eq!(count_cssyt(d, &w), listed);
    }

    #[test]
    fn polynomial_sequences_fit_exactly(coeffs in prop::collection::vec(-5i64..6, 1..4), start in 0i64..3) {
        let values: Vec<i128> = (0..8i64)
            .map(|j| {
                let k = start + j;
                coeffs.iter().rev().fold(0i64, |acc, c| acc * k + c) as i128
            })
            .collect();
        let fit = fit_sequence(start, &values, 3).unwrap();
        prop_assert_eq!(fit.kind, FitKind::Polynomial);
        prop_assert!(fit.residual.is_zero());
        for (j, v) in values.iter().enumerate() {
            prop_assert_eq!(fit.eval(start + j as i64), Some(Rational::from_integer((*v as i64).into())));
        }
    }
}

/// Every flagged tableau of a few hundred (shape, flags) pairs survives the
/// trip through its interlacing pattern.
#[test]
fn flagged_gt_round_trip() {
    let mut trips = 0;
    for (idx, s) in shapes().iter().enumerate().step_by(7) {
        let fs = &flag_lists()[s.rows()];
        let f = &fs[(idx * 31) % fs.len()];
        for t in enumerate_flagged_ssyt(s, f, 4, None).unwrap() {
            let g = GtPattern::from_flagged_tableau(s, &t, 4).unwrap();
            assert_eq!(g.to_flagged_tableau(Some(f)).unwrap(), t, "shape {s} flags {f}");
            trips += 1;
        }
    }
    assert!(trips >= 500, "only {trips} round trips");
}

/// Stretching by one is the identity and the zero stretch is empty.
#[test]
fn trivial_stretches() {
    for s in shapes().iter().take(50) {
        assert_eq!(&s.stretched(1), s);
        let zero = s.stretched(0);
        assert_eq!(zero.size(), 0);
        let f = FlagPair::all(zero.rows(), 2).pop().unwrap();
        let p = flagged_schur(&zero, &f, 2).unwrap();
        assert_eq!(p.coefficient(&[0, 0]), Rational::one());
    }
}
