//! Hilbert functions and dimensions read off the leading terms of a Groebner basis.
//!
//! For a submodule `U` of a graded free module `F`, `F/U` and `F/in(U)` have the same
//! Hilbert function, and `F/in(U)` splits as a sum of `S/in_j(-s_j)` over components.

use crate::groebner::GroebnerBasis;
use crate::monomial::{monomials_of_degree, Monomial};

/// Leading monomials per component.
fn initial_ideals(gb: &GroebnerBasis) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); gb.order().rank()];
    for (c, m) in gb.leading_monomials() {
        out[c].push(m);
    }
    out
}

/// Size of the smallest set of variables meeting every support in `masks`.
fn min_hitting_set(masks: &[u64], budget: u32) -> Option<u32> {
    let Some(&first) = masks.first() else { return Some(0) };
    if budget == 0 {
        return None;
    }
    let mut best: Option<u32> = None;
    let mut bits = first;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        bits ^= v;
        let rest: Vec<u64> = masks.iter().copied().filter(|m| m & v == 0).collect();
        let cap = best.map_or(budget - 1, |b| b.saturating_sub(2).min(budget - 1));
        if let Some(k) = min_hitting_set(&rest, cap) {
            if best.is_none_or(|b| k + 1 < b) {
                best = Some(k + 1);
            }
        }
        if best == Some(1) {
            break;
        }
    }
    best
}

/// `dim S/I` for a monomial ideal `I`, or `None` when `I` is the unit ideal.
pub fn monomial_ideal_dim(gens: &[Monomial], nvars: usize) -> Option<usize> {
    let mut masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    if masks.contains(&0) {
        return None;
    }
    masks.sort_unstable_by_key(|m| m.count_ones());
    masks.dedup();
    let h = min_hitting_set(&masks, nvars as u32).expect("all variables always hit");
    Some(nvars - h as usize)
}

/// Krull dimension of `F/U`; `-1` for the zero module.
pub fn krull_dim(gb: &GroebnerBasis, nvars: usize) -> i64 {
    initial_ideals(gb)
        .iter()
        .filter_map(|gens| monomial_ideal_dim(gens, nvars))
        .map(|d| d as i64)
        .max()
        .unwrap_or(-1)
}

fn standard_count(gens: &[Monomial], nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    monomials_of_degree(nvars, d as u32)
        .iter()
        .filter(|m| !gens.iter().any(|g| g.divides(m)))
        .count()
}

/// `dim_k (F/U)_d`.
pub fn hilbert_value(gb: &GroebnerBasis, nvars: usize, d: i64) -> usize {
    let shifts = gb.order().shifts();
    initial_ideals(gb)
        .iter()
        .zip(shifts)
        .map(|(gens, &s)| standard_count(gens, nvars, d - s as i64))
        .sum()
}

/// `l(F/U)` if it is finite.
pub fn finite_length(gb: &GroebnerBasis, nvars: usize) -> Option<usize> {
    let ideals = initial_ideals(gb);
    let pure = |gens: &[Monomial], i: usize| {
        gens.iter().any(|g| g.exponents()[i] == g.degree())
    };
    let mut total = 0;
    for gens in &ideals {
        if gens.iter().any(Monomial::is_one) {
            continue;
        }
        if !(0..nvars).all(|i| pure(gens, i)) {
            return None;
        }
        // standard monomials form an order ideal: the first empty degree ends them
        let mut d = 0;
        loop {
            let c = standard_count(gens, nvars, d);
            if c == 0 {
                break;
            }
            total += c;
            d += 1;
        }
    }
    Some(total)
}

/// Degrees outside of which `F/U` vanishes, if it has finite length.
pub fn support_bounds(gb: &GroebnerBasis, nvars: usize) -> Option<(i64, i64)> {
    finite_length(gb, nvars)?;
    let ideals = initial_ideals(gb);
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (gens, &s) in ideals.iter().zip(gb.order().shifts()) {
        if gens.iter().any(Monomial::is_one) {
            continue;
        }
        let mut d = 0;
        while standard_count(gens, nvars, d) > 0 {
            d += 1;
        }
        lo = lo.min(s as i64);
        hi = hi.max(s as i64 + d - 1);
    }
    Some(if lo > hi { (0, -1) } else { (lo, hi) })
}
