//! Fraction-free Gauss(-Jordan) elimination on dense integer rows.
//!
//! Rows are combined as `row <- row * a - pivot * b` with `a, b` the cofactors
//! of the two leading entries, then divided by their content. Pivots are
//! chosen as the leftmost nonzero column, then the smallest remaining row
//! index; remaining rows keep their relative order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::ring::ElimInt;
use super::Rat;

/// Rows at or above this size are updated in parallel.
const PAR_WORK: usize = 1 << 14;

pub(crate) struct Echelon<R> {
    /// The first `pivots.len()` rows are the pivot rows, in pivot order.
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
}

fn make_primitive<R: ElimInt>(row: &mut [R], from: usize) {
    let mut g = R::nil();
    for v in &row[from..] {
        if !v.is_nil() {
            g = g.gcd(v);
            if g.is_unit() {
                return;
            }
        }
    }
    if g.is_nil() || g.is_unit() {
        return;
    }
    for v in &mut row[from..] {
        if !v.is_nil() {
            *v = v.div_exact(&g);
        }
    }
}

/// Clears `target[col]` using `pivot`. Entries of `target` before `from` are
/// only scaled; `pivot` must vanish there.
fn combine<R: ElimInt>(target: &mut [R], pivot: &[R], col: usize, from: usize) -> Option<()> {
    if target[col].is_nil() {
        return Some(());
    }
    let g = pivot[col].gcd(&target[col]);
    let a = pivot[col].div_exact(&g);
    let b = target[col].div_exact(&g);
    for k in from..target.len() {
        if target[k].is_nil() && pivot[k].is_nil() {
            continue;
        }
        target[k] = target[k].mul_sub(&a, &pivot[k], &b)?;
    }
    make_primitive(target, from);
    Some(())
}

/// Eliminates `rows` (each of length `ncols`). With `jordan` set, pivot
/// columns are also cleared above each pivot (reduced form up to row scaling).
/// Returns `None` if the entry type overflowed.
pub(crate) fn echelon<R: ElimInt>(mut rows: Vec<Vec<R>>, ncols: usize, jordan: bool) -> Option<Echelon<R>> {
    for row in rows.iter_mut() {
        make_primitive(row, 0);
    }
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| !rows[i][c].is_nil()) else {
            continue;
        };
        rows[r..=found].rotate_right(1);
        let pivot = rows[r].clone();
        let par = (nrows - r) * (ncols - c) >= PAR_WORK;
        let (above, rest) = rows.split_at_mut(r);
        let below = &mut rest[1..];
        let ok = if par {
            below.par_iter_mut().try_for_each(|row| combine(row, &pivot, c, c)).is_some()
                && (!jordan || above.par_iter_mut().try_for_each(|row| combine(row, &pivot, c, 0)).is_some())
        } else {
            below.iter_mut().try_for_each(|row| combine(row, &pivot, c, c)).is_some()
                && (!jordan || above.iter_mut().try_for_each(|row| combine(row, &pivot, c, 0)).is_some())
        };
        if !ok {
            return None;
        }
        pivots.push(c);
        r += 1;
    }
    Some(Echelon { rows, pivots })
}

/// Integer rows with machine-word entries when they fit.
pub(crate) enum IntRows {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

/// Scales each rational row by the lcm of its denominators.
pub(crate) fn integer_rows(rows: &[Vec<Rat>]) -> IntRows {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().filter(|v| !v.is_zero()).fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
            row.iter().map(|v| if v.is_zero() { BigInt::zero() } else { v.numer() * (&lcm / v.denom()) }).collect()
        })
        .collect();
    let small: Option<Vec<Vec<i128>>> = big.iter().map(|row| row.iter().map(|v| i128::try_from(v).ok()).collect()).collect();
    match small {
        Some(s) => IntRows::Small(s),
        None => IntRows::Big(big),
    }
}

/// Elimination with an `i128` fast path and a `BigInt` fallback.
pub(crate) fn echelon_exact(rows: &[Vec<Rat>], ncols: usize, jordan: bool) -> Echelon<BigInt> {
    let to_big =
        |e: Echelon<i128>| Echelon { rows: e.rows.iter().map(|r| r.iter().map(ElimInt::to_bigint).collect()).collect(), pivots: e.pivots };
    match integer_rows(rows) {
        IntRows::Small(small) => {
            let fallback: Vec<Vec<BigInt>> = small.iter().map(|r| r.iter().map(ElimInt::to_bigint).collect()).collect();
            match echelon(small, ncols, jordan) {
                Some(e) => to_big(e),
                None => echelon(fallback, ncols, jordan).expect("bigint elimination cannot overflow"),
            }
        }
        IntRows::Big(big) => echelon(big, ncols, jordan).expect("bigint elimination cannot overflow"),
    }
}

/// Rank only; skips the conversion of the reduced rows back to `BigInt`.
pub(crate) fn rank_exact(rows: &[Vec<Rat>], ncols: usize) -> usize {
    match integer_rows(rows) {
        IntRows::Small(small) => {
            let fallback: Vec<Vec<BigInt>> = small.iter().map(|r| r.iter().map(ElimInt::to_bigint).collect()).collect();
            match echelon(small, ncols, false) {
                Some(e) => e.pivots.len(),
                None => echelon(fallback, ncols, false).expect("bigint elimination").pivots.len(),
            }
        }
        IntRows::Big(big) => echelon(big, ncols, false).expect("bigint elimination").pivots.len(),
    }
}
