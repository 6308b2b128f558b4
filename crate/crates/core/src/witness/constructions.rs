use crate::bits::{all_vars, positions, Input};
use crate::dnf::{term_components, Dnf};
use crate::error::{Error, Result};
use crate::witness::gates::{check_mode, check_zero_at_origin, greedy_independent_gates, GateMode};
use crate::witness::{Procedure, Side, WitnessResult};

/// `ceil(size / (2 width - 1))`.
pub fn zero_bound(size: usize, width: usize) -> usize {
    if size == 0 {
        return 0;
    }
    size.div_ceil(2 * width.max(1) - 1)
}

/// `ceil(width / 2)`.
pub fn ones_bound(width: usize) -> usize {
    width.div_ceil(2)
}

/// `ceil(size / (3 t width - 2t - width + 1))`.
pub fn tblock_bound(size: usize, width: usize, t: usize) -> usize {
    if size == 0 {
        return 0;
    }
    let (w, t) = (width.max(1), t.max(1));
    size.div_ceil(3 * t * w + 1 - 2 * t - w)
}

fn finish(
    d: &Dnf,
    input: Input,
    side: Side,
    guaranteed_bound: usize,
    procedure: Procedure,
) -> Result<WitnessResult> {
    if d.eval(input) != side.value() {
        return Err(Error::Internal(format!(
            "{procedure} produced an input on the wrong side"
        )));
    }
    let r = WitnessResult {
        arity: d.arity(),
        input,
        side,
        guaranteed_bound,
        measured: d.sensitivity_at(input),
        procedure,
    };
    if !r.meets_bound() {
        return Err(Error::Internal(format!(
            "{procedure}: measured {} below guaranteed {}",
            r.measured, r.guaranteed_bound
        )));
    }
    Ok(r)
}

/// A 0-input sensitive on one coordinate of every greedily selected term.
///
/// Each selected term contributes all of its positive variables but the
/// highest-indexed one.
pub fn zero_witness_block(d: &Dnf) -> Result<WitnessResult> {
    check_zero_at_origin(d)?;
    let chosen = greedy_independent_gates(d, GateMode::Block)?;
    let input = chosen.iter().fold(0, |acc, &i| {
        let pos = d.terms()[i].pos();
        acc | (pos & !(1u64 << (63 - pos.leading_zeros())))
    });
    finish(d, input, Side::Zero, chosen.len(), Procedure::BlockGreedy)
}

/// Either the indicator of a widest term's positive set (1-sensitive), or that
/// point with one positive variable cleared (0-sensitive).
pub fn witness_onesbound(d: &Dnf) -> Result<WitnessResult> {
    check_zero_at_origin(d)?;
    check_mode(d, GateMode::Block)?;
    let terms = d.terms();
    let width = d.width();
    let Some(star) = terms.iter().position(|t| t.width() == width) else {
        return finish(d, 0, Side::Zero, 0, Procedure::Onesbound);
    };
    let a = terms[star].pos();
    let enough = (1 + width).div_ceil(2);
    if d.sensitivity_at(a) >= enough {
        return finish(d, a, Side::One, enough, Procedure::Onesbound);
    }
    let flips_to_one = positions(terms[star].neg())
        .filter(|&p| d.eval(a ^ (1 << p)))
        .count();
    let low = a.trailing_zeros();
    finish(
        d,
        a ^ (1 << low),
        Side::Zero,
        flips_to_one + 1,
        Procedure::Onesbound,
    )
}

/// A locally maximal 0-input supported on the positive variables of the
/// greedily selected terms.
pub fn zero_witness_tblock(d: &Dnf, t: usize) -> Result<WitnessResult> {
    check_zero_at_origin(d)?;
    let chosen = greedy_independent_gates(d, GateMode::TBlock(t))?;
    let support = chosen.iter().fold(0, |acc, &i| acc | d.terms()[i].pos());
    let mut a: Input = 0;
    loop {
        let before = a;
        for p in positions(support & !a) {
            if !d.eval(a | (1 << p)) {
                a |= 1 << p;
            }
        }
        if a == before {
            break;
        }
    }
    finish(d, a, Side::Zero, chosen.len(), Procedure::TBlock)
}

/// Componentwise 0-input for formulas with block, transitive and 2-mixing properties.
///
/// A component whose terms pairwise conflict on at least 3 variables (or a
/// single term) contributes one sensitive coordinate; a component with a pair
/// conflicting on exactly 2 variables contributes both of them.
pub fn witness_2mixing_components(d: &Dnf) -> Result<WitnessResult> {
    check_zero_at_origin(d)?;
    check_mode(d, GateMode::Block)?;
    let stats = crate::dnf::stats(d);
    if !stats.transitive {
        return Err(Error::PropertyViolation(
            "sharing a variable is not transitive between terms".into(),
        ));
    }
    let terms = d.terms();
    let mut input: Input = 0;
    let mut bound = 0;
    for comp in term_components(d) {
        if comp.mixing < 2 {
            return Err(Error::PropertyViolation(format!(
                "terms in the component of term {} conflict on only {} variable(s)",
                comp.terms[0] + 1,
                comp.mixing
            )));
        }
        if comp.mixing >= 3 {
            let pos = terms[comp.terms[0]].pos();
            input |= pos & !(1u64 << (63 - pos.leading_zeros()));
            bound += 1;
            continue;
        }
        let (j1, j2) = comp
            .terms
            .iter()
            .enumerate()
            .flat_map(|(k, &i)| comp.terms[k + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| terms[i].conflicts(&terms[j]) == 2)
            .expect("component mixing is attained by a pair");
        let (a, b) = (terms[j1], terms[j2]);
        let conflict = (a.pos() & b.neg()) | (b.pos() & a.neg());
        let p = conflict.trailing_zeros();
        let q = 63 - conflict.leading_zeros();
        let mut part = (a.pos() | b.pos()) & !conflict;
        // flipping p satisfies the first term, flipping q the second
        if a.neg() >> p & 1 == 1 {
            part |= 1 << p;
        }
        if a.pos() >> q & 1 == 1 {
            part |= 1 << q;
        }
        input |= part & all_vars(d.arity());
        bound += 2;
    }
    finish(d, input, Side::Zero, bound, Procedure::MixingComponents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::fixtures::*;
    use crate::dnf::Term;
    use crate::limits::Limits;
    use crate::measures::sensitivity_report;
    use proptest::prelude::*;

    #[test]
    fn bounds_arithmetic() {
        assert_eq!(zero_bound(3, 1), 3);
        assert_eq!(zero_bound(3, 5), 1);
        assert_eq!(zero_bound(15, 5), 2);
        assert_eq!(ones_bound(5), 3);
        assert_eq!(tblock_bound(2, 2, 2), 1);
        assert_eq!(tblock_bound(3, 1, 1), 3);
        for (v, w) in [(7, 3), (20, 4), (9, 1)] {
            assert_eq!(tblock_bound(v, w, 1), zero_bound(v, w));
        }
    }

    #[test]
    fn block_witness_examples() {
        let r = zero_witness_block(&or3()).unwrap();
        assert_eq!((r.input, r.measured, r.guaranteed_bound), (0, 3, 3));
        let r = zero_witness_block(&rubinstein2()).unwrap();
        assert_eq!(r.side, Side::Zero);
        assert!(r.measured >= 1);
    }

    #[test]
    fn onesbound_examples() {
        let r = witness_onesbound(&or3()).unwrap();
        assert_eq!((r.input, r.side, r.measured), (0b001, Side::One, 1));
        let r = witness_onesbound(&ambainis_sun1()).unwrap();
        assert_eq!((r.input, r.measured), (0b001100, 5));
        let tight = dnf(5, &[(&[2], &[]), (&[4], &[]), (&[1, 3, 5], &[2, 4])]);
        let r = witness_onesbound(&tight).unwrap();
        assert_eq!(r.measured, 3);
    }

    #[test]
    fn onesbound_zero_branch() {
        // s at 1000 is 2 < 3; flipping x2 or x3 there stays inside f
        let d = dnf(4, &[(&[1], &[2, 3, 4]), (&[2], &[]), (&[3], &[])]);
        let r = witness_onesbound(&d).unwrap();
        assert_eq!(r.side, Side::Zero);
        assert_eq!(r.input, 0);
        assert_eq!((r.guaranteed_bound, r.measured), (3, 3));
    }

    #[test]
    fn tblock_examples() {
        let r = zero_witness_tblock(&or3(), 1).unwrap();
        assert_eq!((r.input, r.guaranteed_bound, r.measured), (0, 3, 3));
        let d = dnf(3, &[(&[1, 2], &[]), (&[2, 3], &[])]);
        let r = zero_witness_tblock(&d, 2).unwrap();
        assert!(!d.eval(r.input));
        assert!(r.measured >= 1);
        assert!(zero_witness_tblock(&d, 1).is_err());
    }

    #[test]
    fn mixing_component_examples() {
        let r = witness_2mixing_components(&or3()).unwrap();
        assert_eq!((r.input, r.guaranteed_bound, r.measured), (0, 3, 3));
        let r = witness_2mixing_components(&ambainis_sun1()).unwrap();
        assert_eq!(r.input, 0b000100);
        assert_eq!(r.guaranteed_bound, 1);
        let one_conflict = dnf(2, &[(&[1], &[2]), (&[2], &[])]);
        assert!(matches!(
            witness_2mixing_components(&one_conflict),
            Err(Error::PropertyViolation(_))
        ));
        // two copies of a pair conflicting on exactly {x1, x2}
        let d = dnf(
            8,
            &[
                (&[1, 3], &[2]),
                (&[2, 4], &[1]),
                (&[5, 7], &[6]),
                (&[6, 8], &[5]),
            ],
        );
        let r = witness_2mixing_components(&d).unwrap();
        assert_eq!(r.guaranteed_bound, 4);
        assert!(r.measured >= 4);
        let full = sensitivity_report(&d.to_truth_table(&Limits::DEFAULT).unwrap(), &Limits::DEFAULT)
            .unwrap();
        assert!(full.s0 >= 4);
    }

    #[test]
    fn empty_positive_set_is_rejected() {
        let d = dnf(2, &[(&[], &[1])]);
        assert!(matches!(zero_witness_block(&d), Err(Error::CompactForm(_))));
    }

    /// Block-property formulas with non-empty positive sets.
    pub(crate) fn arb_block_dnf() -> impl Strategy<Value = Dnf> {
        (2usize..=10).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..4, n),
                proptest::collection::vec(any::<u64>(), 4),
            )
                .prop_map(|(n, owner, negs)| {
                    let mut terms = Vec::new();
                    for k in 0..4 {
                        let pos = (0..n).filter(|&p| owner[p] == k).fold(0u64, |a, p| a | 1 << p);
                        if pos != 0 {
                            let neg = negs[k] & all_vars(n) & !pos;
                            terms.push(Term::new(pos, neg).unwrap());
                        }
                    }
                    Dnf::new(n, terms).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn witnesses_meet_bounds(d in arb_block_dnf()) {
            let z = zero_witness_block(&d).unwrap();
            prop_assert!(z.guaranteed_bound >= zero_bound(d.size(), d.width()));
            let o = witness_onesbound(&d).unwrap();
            prop_assert!(o.guaranteed_bound >= ones_bound(d.width()));
            let t = zero_witness_tblock(&d, 1).unwrap();
            prop_assert!(t.guaranteed_bound >= zero_bound(d.size(), d.width()));
        }
    }
}
