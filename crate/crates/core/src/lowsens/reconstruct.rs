use crate::bits::{format_bits, positions, Input};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lowsens::{sphere, BallValues};
use crate::measures::{sensitivity_at, sensitivity_report};
use crate::table::{is_monotone, TruthTable};

fn violation(bound: usize, input: Input, distance: usize, detail: String) -> Error {
    Error::SensitivityBoundViolated {
        bound,
        input,
        distance,
        detail,
    }
}

/// Extends ball values to the whole cube assuming `s(f) <= s_bound`.
///
/// Layers beyond the radius are filled outward: a point at distance `d` has
/// `d` neighbours one step closer, at most `s_bound < d / 2` of which can
/// disagree with it, so it takes their strict majority. Ball points whose
/// neighbourhood lies inside the ball, minority counts, and the finished
/// table are all checked against the bound.
pub fn reconstruct_majority(
    ball: &BallValues,
    s_bound: usize,
    limits: &Limits,
) -> Result<TruthTable> {
    let n = ball.arity();
    limits.check_table("reconstruct_majority", n)?;
    // a ball covering the whole cube needs no completion
    let required = (2 * s_bound).min(n);
    if ball.radius() < required {
        return Err(Error::InsufficientRadius {
            radius: ball.radius(),
            required,
        });
    }
    let center = ball.center();
    let mut f = TruthTable::constant(n, false);
    for d in 0..=ball.radius() {
        for x in sphere(n, center, d) {
            f.set(x, ball.get(x).expect("ball covers its radius"));
        }
    }
    for d in 0..ball.radius() {
        for x in sphere(n, center, d) {
            let s = sensitivity_at(&f, x);
            if s > s_bound {
                return Err(violation(
                    s_bound,
                    x,
                    d,
                    format!("ball point {} has sensitivity {s}", format_bits(x, n)),
                ));
            }
        }
    }
    for d in ball.radius() + 1..=n {
        for x in sphere(n, center, d) {
            let ones = positions(x ^ center)
                .filter(|&p| f.get(x ^ (1 << p)))
                .count();
            let zeros = d - ones;
            if ones == zeros {
                return Err(violation(
                    s_bound,
                    x,
                    d,
                    format!("{ones}-{zeros} tie among the closer neighbours"),
                ));
            }
            if ones.min(zeros) > s_bound {
                return Err(violation(
                    s_bound,
                    x,
                    d,
                    format!("{} closer neighbours outvoted", ones.min(zeros)),
                ));
            }
            f.set(x, ones > zeros);
        }
    }
    let report = sensitivity_report(&f, limits)?;
    if report.s() > s_bound {
        let x = report.witness_s().expect("non-empty cube");
        return Err(violation(
            s_bound,
            x,
            (x ^ center).count_ones() as usize,
            format!("completed function has sensitivity {}", report.s()),
        ));
    }
    Ok(f)
}

/// Extends values on the ball around `0^n` of a monotone function with `s(f) <= s_bound`.
///
/// Above the radius a point is 1 iff one of its lower neighbours is 1.
pub fn reconstruct_monotone(
    ball: &BallValues,
    s_bound: usize,
    limits: &Limits,
) -> Result<TruthTable> {
    let n = ball.arity();
    limits.check_table("reconstruct_monotone", n)?;
    if ball.center() != 0 {
        return Err(Error::OutOfRange(
            "monotone reconstruction needs the ball centred at 0^n".into(),
        ));
    }
    if ball.radius() < s_bound {
        return Err(Error::InsufficientRadius {
            radius: ball.radius(),
            required: s_bound,
        });
    }
    let mut f = TruthTable::constant(n, false);
    for d in 0..=n {
        for x in sphere(n, 0, d) {
            let value = match ball.get(x) {
                Some(v) => v,
                None => positions(x).any(|p| f.get(x ^ (1 << p))),
            };
            f.set(x, value);
        }
    }
    if !is_monotone(&f, limits)? {
        return Err(Error::Inconsistent(
            "completion is not monotone; ball values contradict the hypothesis".into(),
        ));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const L: Limits = Limits::DEFAULT;

    #[test]
    fn padded_and_round_trips() {
        let f = TruthTable::from_fn(6, |x| x & 0b11 == 0b11);
        let ball = BallValues::from_table(&f, 0, 4).unwrap();
        assert_eq!(reconstruct_majority(&ball, 2, &L).unwrap(), f);
    }

    #[test]
    fn constant_from_a_point() {
        let f = TruthTable::constant(3, false);
        let ball = BallValues::from_table(&f, 0b101, 0).unwrap();
        assert_eq!(reconstruct_majority(&ball, 0, &L).unwrap(), f);
        let ball = BallValues::from_table(&f, 0, 0).unwrap();
        assert_eq!(reconstruct_monotone(&ball, 0, &L).unwrap(), f);
    }

    #[test]
    fn xor_violates_the_bound() {
        let xor = TruthTable::from_fn(4, |x| x.count_ones() % 2 == 1);
        let ball = BallValues::from_table(&xor, 0, 2).unwrap();
        let err = reconstruct_majority(&ball, 1, &L).unwrap_err();
        assert!(matches!(err, Error::SensitivityBoundViolated { bound: 1, .. }), "{err}");
    }

    #[test]
    fn ties_are_reported() {
        // values on the radius-2 ball of x1 XOR x2 in 4 variables, claimed s <= 1
        let f = TruthTable::from_fn(4, |x| (x ^ (x >> 1)) & 1 == 1);
        let ball = BallValues::from_table(&f, 0, 2).unwrap();
        assert!(matches!(
            reconstruct_majority(&ball, 1, &L),
            Err(Error::SensitivityBoundViolated { .. })
        ));
    }

    #[test]
    fn radius_must_cover_twice_the_bound() {
        let f = TruthTable::constant(3, false);
        let ball = BallValues::from_table(&f, 0, 1).unwrap();
        assert_eq!(
            reconstruct_majority(&ball, 1, &L).unwrap_err(),
            Error::InsufficientRadius {
                radius: 1,
                required: 2
            }
        );
        let parity = TruthTable::from_fn(3, |x| x.count_ones() % 2 == 1);
        let whole = BallValues::from_table(&parity, 0b101, 3).unwrap();
        assert_eq!(reconstruct_majority(&whole, 3, &L).unwrap(), parity);
    }

    #[test]
    fn monotone_examples() {
        let maj = TruthTable::from_fn(3, |x| x.count_ones() >= 2);
        let ball = BallValues::from_table(&maj, 0, 2).unwrap();
        assert_eq!(reconstruct_monotone(&ball, 2, &L).unwrap(), maj);
        let or3 = TruthTable::from_fn(3, |x| x != 0);
        let ball = BallValues::from_table(&or3, 0, 1).unwrap();
        assert_eq!(reconstruct_monotone(&ball, 1, &L).unwrap(), or3);
        let not_mono = TruthTable::from_fn(2, |x| x == 0);
        let ball = BallValues::from_table(&not_mono, 0, 1).unwrap();
        assert!(matches!(
            reconstruct_monotone(&ball, 1, &L),
            Err(Error::Inconsistent(_))
        ));
    }

    proptest! {
        #[test]
        fn any_centre_recovers_the_function(
            n in 4usize..=9,
            vars in proptest::collection::vec(0usize..9, 1..=2),
            bits in any::<u16>(),
            c in any::<u64>(),
        ) {
            // a junta on at most two variables, padded with dummies
            let f = TruthTable::from_fn(n, |x| {
                let idx = vars.iter().enumerate().fold(0, |acc, (k, &v)| acc | (((x >> (v % n)) & 1) << k));
                (bits >> idx) & 1 == 1
            });
            let s = sensitivity_report(&f, &L).unwrap().s();
            let center = c & crate::bits::all_vars(n);
            let ball = BallValues::from_table(&f, center, 2 * s).unwrap();
            prop_assert_eq!(reconstruct_majority(&ball, s, &L).unwrap(), f);
        }
    }
}
