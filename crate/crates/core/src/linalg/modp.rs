use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{inv_mod_prime, is_prime, mul_mod, pow_mod};

/// Determinant of a square matrix over `F_ell` by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn det_mod(mut a: Vec<Vec<u64>>, ell: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (ell - det) % ell;
        }
        let pv = a[col][col];
        det = mul_mod(det, pv, ell);
        let inv = inv_mod_prime(pv, ell);
        for r in col + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let factor = mul_mod(a[r][col], inv, ell);
            for c in col..n {
                let sub = mul_mod(factor, a[col][c], ell);
                a[r][c] = (a[r][c] + ell - sub) % ell;
            }
        }
    }
    det
}

/// Solves `a x = b` over `F_ell` for nonsingular `a`.
#[allow(clippy::needless_range_loop)]
pub fn solve_mod(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, ell: u64) -> Option<Vec<u64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(piv, col);
        b.swap(piv, col);
        let inv = inv_mod_prime(a[col][col], ell);
        for c in col..n {
            a[col][c] = mul_mod(a[col][c], inv, ell);
        }
        b[col] = mul_mod(b[col], inv, ell);
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            for c in col..n {
                let sub = mul_mod(factor, a[col][c], ell);
                a[r][c] = (a[r][c] + ell - sub) % ell;
            }
            let sub = mul_mod(factor, b[col], ell);
            b[r] = (b[r] + ell - sub) % ell;
        }
    }
    Some(b)
}

const PRIME_CEILING: u64 = 1 << 62;

// p -> (ell, root of order p) pairs found so far
type PrimeCache = Mutex<HashMap<u64, Vec<(u64, u64)>>>;

fn cache() -> &'static PrimeCache {
    static CACHE: OnceLock<PrimeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The first `count` primes `ell = 1 (mod p)` below `2^62`, descending, each
/// paired with a primitive `p`-th root of unity modulo `ell`.
pub fn residue_primes(p: u64, count: usize) -> Vec<(u64, u64)> {
    let mut guard = cache().lock().expect("prime cache poisoned");
    let list = guard.entry(p).or_default();
    let step = if p == 2 { 2 } else { 2 * p };
    let mut cand = match list.last() {
        Some(&(ell, _)) => ell - step,
        None => {
            let top = PRIME_CEILING - 1;
            top - (top - 1) % step
        }
    };
    while list.len() < count {
        if is_prime(cand) {
            let root = (2..)
                .map(|g| pow_mod(g, (cand - 1) / p, cand))
                .find(|&w| w != 1)
                .expect("a nonresidue exists");
            list.push((cand, root));
        }
        cand -= step;
    }
    list[..count].to_vec()
}
