//! Exact determinants over `Z[zeta_p]` by multi-modular reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::modp::{det_mod, residue_primes, solve_mod};
use crate::arith::{big_mod_u64, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::rings::CycInt;

/// Canonical coefficients of `det(m)` modulo `ell`, where `w` has order `p`.
fn det_coeffs_mod(m: &[Vec<CycInt>], p: u64, ell: u64, w: u64) -> Vec<u64> {
    let d = (p - 1) as usize;
    let reduced: Vec<Vec<Vec<u64>>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.coeffs().iter().map(|c| big_mod_u64(c, ell)).collect())
                .collect()
        })
        .collect();
    let mut values = Vec::with_capacity(d);
    let mut vander = Vec::with_capacity(d);
    for t in 1..p {
        let wt = pow_mod(w, t, ell);
        let powers: Vec<u64> = (0..d as u64).map(|i| pow_mod(wt, i, ell)).collect();
        let mat: Vec<Vec<u64>> = reduced
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cs| {
                        cs.iter()
                            .zip(&powers)
                            .fold(0u64, |acc, (&c, &pw)| (acc + mul_mod(c, pw, ell)) % ell)
                    })
                    .collect()
            })
            .collect();
        values.push(det_mod(mat, ell));
        vander.push(powers);
    }
    solve_mod(vander, values, ell).expect("distinct roots give a nonsingular system")
}

/// Coefficient bound from Hadamard's inequality applied to every embedding.
fn coefficient_bound(m: &[Vec<CycInt>], p: u64) -> BigInt {
    let h2: BigInt = m
        .iter()
        .map(|row| row.iter().map(|e| {
            let n = e.norm1();
            &n * &n
        }).sum::<BigInt>())
        .product();
    BigInt::from(p) * (h2.sqrt() + BigInt::one())
}

/// Determinant of a square matrix over `Z[zeta_p]`.
///
/// Residues modulo enough primes `ell = 1 (mod p)` are combined by CRT and
/// checked against one extra prime before being returned.
pub fn det_cyc(m: &[Vec<CycInt>], p: u64) -> Result<CycInt> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch);
    }
    if let Some(e) = m.iter().flatten().find(|e| e.p() != p) {
        return Err(Error::PrimeMismatch(p, e.p()));
    }
    if n == 0 {
        return Ok(CycInt::one(p));
    }
    let bound = coefficient_bound(m, p);
    let need = (2u64 * bound.bits() + 2).div_ceil(61) as usize + 1;
    let primes = residue_primes(p, need + 1);
    let (used, held_out) = primes.split_at(need);

    let residues: Vec<Vec<u64>> = used
        .par_iter()
        .map(|&(ell, w)| det_coeffs_mod(m, p, ell, w))
        .collect();

    let d = (p - 1) as usize;
    let mut coeffs = vec![BigInt::zero(); d];
    let mut modulus = BigInt::one();
    for (&(ell, _), res) in used.iter().zip(&residues) {
        let ell_big = BigInt::from(ell);
        let inv = BigInt::from(crate::arith::inv_mod_prime(big_mod_u64(&modulus, ell), ell));
        for (c, &r) in coeffs.iter_mut().zip(res) {
            let delta = ((BigInt::from(r) - &*c) * &inv).mod_floor(&ell_big);
            *c += &modulus * delta;
        }
        modulus *= ell_big;
    }
    if modulus <= &bound * 2 {
        return Err(Error::ReconstructionFailed);
    }
    let half = &modulus >> 1;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }

    let (ell, w) = held_out[0];
    let check = det_coeffs_mod(m, p, ell, w);
    if coeffs.iter().zip(&check).any(|(c, &r)| big_mod_u64(c, ell) != r) {
        return Err(Error::ReconstructionFailed);
    }
    Ok(CycInt::from_coeffs(p, coeffs))
}
