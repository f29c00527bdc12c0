//! Rank modulo word-size primes.
//!
//! For an integer matrix the rank modulo any prime is a lower bound for the
//! rational rank, so the maximum over several primes is a certified lower
//! bound and equals the true rank unless every prime divides some maximal
//! minor.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::sync::OnceLock;

/// Number of primes tried per rank computation.
pub const PRIMES_PER_RANK: usize = 2;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest primes below 2^62, in decreasing order.
pub fn word_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while out.len() < 8 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Rank of an integer matrix modulo `p`; also returns the pivot columns and
/// the original indices of the pivot rows.
pub fn rank_mod_p(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> (usize, Vec<usize>, Vec<usize>) {
    let mut m: Vec<(usize, Vec<u64>)> = rows.iter().enumerate().map(|(i, row)| (i, row.iter().map(|v| reduce(v, p)).collect())).collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| m[i].1[c] != 0) else {
            continue;
        };
        m[r..=found].rotate_right(1);
        let inv = pow_mod(m[r].1[c], p - 2, p);
        let pivot: Vec<u64> = m[r].1.iter().map(|&v| mul_mod(v, inv, p)).collect();
        for (_, row) in m[r + 1..].iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for k in c..ncols {
                if pivot[k] != 0 {
                    let sub = mul_mod(factor, pivot[k], p);
                    row[k] = if row[k] >= sub { row[k] - sub } else { row[k] + p - sub };
                }
            }
        }
        pivots.push(c);
        pivot_rows.push(m[r].0);
        r += 1;
    }
    (r, pivots, pivot_rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_below_bound() {
        let ps = word_primes();
        assert_eq!(ps.len(), 8);
        assert_eq!(ps[0], (1u64 << 62) - 57);
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn multiple_of_p_drops_rank() {
        let p = word_primes()[0];
        let rows = vec![vec![BigInt::from(p), BigInt::zero()], vec![BigInt::zero(), BigInt::from(3)]];
        assert_eq!(rank_mod_p(&rows, 2, p).0, 1);
        assert_eq!(rank_mod_p(&rows, 2, word_primes()[1]).0, 2);
    }
}
