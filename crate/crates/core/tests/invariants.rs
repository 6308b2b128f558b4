//! Library measures against the naive oracle, plus the cross-module identities.

mod common;

use proptest::prelude::*;

use bsens_core::families::{disjoint_or_compose, explicit_or_expand};
use bsens_core::lowsens::{one_set_components, reconstruct_majority};
use bsens_core::measures::bs_capped;
use bsens_core::{
    block_sensitivity_report, is_monotone, normalize, xor_tt, BallValues, Limits, TruthTable,
};

const L: Limits = Limits::DEFAULT;

fn table(max_arity: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_arity).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n)
            .prop_map(|v| TruthTable::from_values(&v).unwrap())
    })
}

fn oracle(f: &TruthTable) -> impl Fn(u64) -> bool + '_ {
    move |x| f.get(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measures_match_the_oracle(f in table(6)) {
        let n = f.arity();
        let r = block_sensitivity_report(&f, &L).unwrap();
        let (s0, s1) = common::sensitivity_sides(&oracle(&f), n);
        let (b0, b1) = common::block_sensitivity_sides(&oracle(&f), n, n);
        prop_assert_eq!((r.s0, r.s1), (s0, s1));
        if let Some(b) = &r.block {
            prop_assert_eq!((b.bs0, b.bs1), (b0, b1));
        }
        prop_assert!(r.s() <= r.bs().unwrap_or(0));
    }

    #[test]
    fn capped_block_sensitivity(f in table(6)) {
        let n = f.arity();
        let r = block_sensitivity_report(&f, &L).unwrap();
        prop_assume!(r.block.is_some());
        let caps: Vec<usize> = (1..=n).map(|l| bs_capped(&f, l, &L).unwrap()).collect();
        prop_assert_eq!(caps[0], r.s());
        prop_assert_eq!(caps[n - 1], r.bs().unwrap());
        prop_assert!(caps.windows(2).all(|w| w[0] <= w[1]));
        for (l, &b) in caps.iter().enumerate() {
            let (b0, b1) = common::block_sensitivity_sides(&oracle(&f), n, l + 1);
            prop_assert_eq!(b, b0.max(b1));
        }
    }

    #[test]
    fn composition_matches_the_expanded_function(g in table(3), m in 1usize..=3) {
        prop_assume!(g.constant_value().is_none());
        let inner = normalize(&g, &L).unwrap();
        let g = &inner.table;
        let expanded = explicit_or_expand(&inner.dnf, m, &L).unwrap();
        let f = expanded.to_truth_table(&L).unwrap();
        let predicted = disjoint_or_compose(&block_sensitivity_report(g, &L).unwrap(), m).unwrap();
        let n = f.arity();
        let (s0, s1) = common::sensitivity_sides(&oracle(&f), n);
        let (b0, b1) = common::block_sensitivity_sides(&oracle(&f), n, n);
        prop_assert_eq!((predicted.s0, predicted.s1), (s0, s1));
        prop_assert_eq!((predicted.bs0(), predicted.bs1()), (Some(b0), Some(b1)));
    }

    #[test]
    fn xor_is_subadditive(f in table(5), g in table(5)) {
        prop_assume!(f.arity() == g.arity());
        let n = f.arity();
        let h = xor_tt(&f, &g).unwrap();
        let (sf, bf) = common::s_bs(&oracle(&f), n);
        let (sg, bg) = common::s_bs(&oracle(&g), n);
        let (sh, bh) = common::s_bs(&oracle(&h), n);
        prop_assert!(sh <= sf + sg);
        prop_assert!(bh <= bf + bg);
    }

    #[test]
    fn monotone_functions_have_bs_equal_s(minterms in prop::collection::vec(1u64..64, 1..5)) {
        let f = TruthTable::from_fn(6, |x| minterms.iter().any(|&m| x & m == m));
        prop_assert!(is_monotone(&f, &L).unwrap());
        let (s, bs) = common::s_bs(&oracle(&f), 6);
        prop_assert_eq!(s, bs);
    }

    #[test]
    fn majority_reconstruction_is_exact(f in table(7), center in any::<u64>()) {
        let n = f.arity();
        let center = center & ((1 << n) - 1);
        let (s, _) = common::s_bs(&oracle(&f), n);
        let ball = BallValues::from_table(&f, center, (2 * s).min(n)).unwrap();
        prop_assert_eq!(reconstruct_majority(&ball, s, &L).unwrap(), f);
    }

    #[test]
    fn uniqueness_from_agreement(f in table(5), g in table(5), center in any::<u64>()) {
        prop_assume!(f.arity() == g.arity());
        let n = f.arity();
        let center = center & ((1 << n) - 1);
        let (sf, _) = common::s_bs(&oracle(&f), n);
        let (sg, _) = common::s_bs(&oracle(&g), n);
        let r = common::agreement_radius(&oracle(&f), &oracle(&g), n, center);
        if r.is_some_and(|r| r >= sf + sg) {
            prop_assert_eq!(f, g);
        }
    }

    #[test]
    fn s0_one_components_are_far_subcubes(f in table(6)) {
        let n = f.arity();
        let (s0, _) = common::sensitivity_sides(&oracle(&f), n);
        prop_assume!(s0 == 1 && f.constant_value().is_none());
        let report = one_set_components(&f, &L).unwrap();
        prop_assert!(report.hypothesis);
        prop_assert_eq!(report.claim_holds, Some(true));
        let covered: u64 = report.components.iter().map(|c| 1u64 << c.dimension()).sum();
        prop_assert_eq!(covered, f.count_ones());
    }
}
