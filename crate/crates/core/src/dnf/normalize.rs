use serde::Serialize;

use crate::bits::Input;
use crate::dnf::{check_compact_form, CompactFormReport, Dnf, Term};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::block_sensitivity_report;
use crate::table::TruthTable;

/// `f'(x) = f(a) ^ f(x ^ a)` for an input `a` attaining `bs(f)`, with a compact DNF.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationResult {
    pub shift: Input,
    pub polarity: bool,
    #[serde(skip)]
    pub table: TruthTable,
    pub dnf: Dnf,
    pub report: CompactFormReport,
}

/// Prime implicants of `f` as `(care, value)` cubes, sorted by literal count then numerically.
///
/// Implicant status is tabulated over all `3^n` cubes: a cube with a free
/// variable is an implicant iff both of its halves along that variable are.
pub fn prime_implicants(f: &TruthTable) -> Vec<(u64, u64)> {
    let n = f.arity();
    let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
    let total = pow3[n];
    let mut imp = vec![false; total];
    let mut digits = vec![0u8; n];
    for idx in 0..total {
        if idx > 0 {
            // increment the base-3 counter
            let mut p = 0;
            while digits[p] == 2 {
                digits[p] = 0;
                p += 1;
            }
            digits[p] += 1;
        }
        imp[idx] = match digits.iter().position(|&d| d == 2) {
            Some(b) => imp[idx - 2 * pow3[b]] && imp[idx - pow3[b]],
            None => {
                let x = digits
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (p, &d)| acc | ((d as u64) << p));
                f.get(x)
            }
        };
    }
    let mut primes = Vec::new();
    digits.iter_mut().for_each(|d| *d = 0);
    for idx in 0..total {
        if idx > 0 {
            let mut p = 0;
            while digits[p] == 2 {
                digits[p] = 0;
                p += 1;
            }
            digits[p] += 1;
        }
        if !imp[idx] {
            continue;
        }
        let expandable = digits
            .iter()
            .enumerate()
            .any(|(b, &d)| d != 2 && imp[idx + (2 - d as usize) * pow3[b]]);
        if expandable {
            continue;
        }
        let (mut care, mut value) = (0u64, 0u64);
        for (p, &d) in digits.iter().enumerate() {
            if d != 2 {
                care |= 1 << p;
                value |= (d as u64) << p;
            }
        }
        primes.push((care, value));
    }
    primes.sort_by_key(|&(care, value)| (care.count_ones(), care, value));
    primes
}

fn cube_points(care: u64, value: u64, arity: usize) -> impl Iterator<Item = Input> {
    let free = crate::bits::all_vars(arity) & !care;
    let mut sub = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let x = value | sub;
        sub = sub.wrapping_sub(free) & free;
        done = sub == 0;
        Some(x)
    })
}

/// An irredundant cover of `f` by prime implicants.
///
/// Essential primes first, then greedy by newly covered points, then a
/// pruning pass removing any prime whose points are all covered twice.
pub(crate) fn irredundant_prime_cover(f: &TruthTable) -> Vec<Term> {
    let n = f.arity();
    let primes = prime_implicants(f);
    let mut count = vec![0u32; f.len() as usize];
    for &(c, v) in &primes {
        for x in cube_points(c, v, n) {
            count[x as usize] += 1;
        }
    }
    let mut chosen = vec![false; primes.len()];
    let mut covered = vec![false; f.len() as usize];
    let mut order = Vec::new();
    let mut take = |k: usize, chosen: &mut Vec<bool>, covered: &mut Vec<bool>| {
        chosen[k] = true;
        order.push(k);
        for x in cube_points(primes[k].0, primes[k].1, n) {
            covered[x as usize] = true;
        }
    };
    for k in 0..primes.len() {
        let (c, v) = primes[k];
        if !chosen[k] && cube_points(c, v, n).any(|x| count[x as usize] == 1) {
            take(k, &mut chosen, &mut covered);
        }
    }
    loop {
        let best = (0..primes.len())
            .filter(|&k| !chosen[k])
            .map(|k| {
                let gain = cube_points(primes[k].0, primes[k].1, n)
                    .filter(|&x| !covered[x as usize])
                    .count();
                (gain, k)
            })
            .filter(|&(gain, _)| gain > 0)
            // most new points; earlier (fewer literals) wins ties
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((_, k)) => take(k, &mut chosen, &mut covered),
            None => break,
        }
    }
    let mut cover_count = vec![0u32; f.len() as usize];
    for &k in &order {
        for x in cube_points(primes[k].0, primes[k].1, n) {
            cover_count[x as usize] += 1;
        }
    }
    // widest cubes first: prefer keeping short terms
    let mut prune_order = order.clone();
    prune_order.sort_by_key(|&k| std::cmp::Reverse((primes[k].0.count_ones(), k)));
    let mut kept = chosen;
    for k in prune_order {
        let (c, v) = primes[k];
        if cube_points(c, v, n).all(|x| cover_count[x as usize] >= 2) {
            kept[k] = false;
            for x in cube_points(c, v, n) {
                cover_count[x as usize] -= 1;
            }
        }
    }
    (0..primes.len())
        .filter(|&k| kept[k])
        .map(|k| {
            let (c, v) = primes[k];
            Term::new(v & c, c & !v).expect("cube literals are consistent")
        })
        .collect()
}

/// Moves the block-sensitivity maximum to `0^n` with `f'(0^n) = 0` and builds a compact DNF.
pub fn normalize(f: &TruthTable, limits: &Limits) -> Result<NormalizationResult> {
    if let Some(v) = f.constant_value() {
        return Err(Error::Degenerate(format!(
            "constant-{} function cannot be normalized",
            v as u8
        )));
    }
    let report = block_sensitivity_report(f, limits)?;
    let shift = report
        .witness_bs()
        .map(|w| w.input)
        .ok_or_else(|| Error::Internal("non-constant function without bs witness".into()))?;
    let polarity = f.get(shift);
    let shifted = f.shifted(shift);
    let table = if polarity {
        shifted.complement()
    } else {
        shifted
    };
    let dnf = Dnf::new(f.arity(), irredundant_prime_cover(&table))?;
    let report = check_compact_form(&dnf, limits)?;
    Ok(NormalizationResult {
        shift,
        polarity,
        table,
        dnf,
        report,
    })
}
