use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{big_mod_u64, mul_mod};
use crate::error::{Error, Result};

/// An element of `Z[zeta_p]`, stored in the power basis `1, zeta, ..., zeta^{p-2}`.
///
/// The representation is canonical: `zeta^{p-1}` is always rewritten as
/// `-1 - zeta - ... - zeta^{p-2}`, so equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u64) -> Self {
        CycInt { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, BigInt::one())
    }

    pub fn from_int(p: u64, c: BigInt) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = c;
        out
    }

    /// `zeta^e`.
    pub fn monomial(p: u64, e: u64) -> Self {
        let mut ex = vec![BigInt::zero(); p as usize];
        ex[(e % p) as usize] = BigInt::one();
        Self::from_exponent_form(p, ex)
    }

    /// Builds `sum_e b_e zeta^e` from a length-`p` exponent vector.
    pub fn from_exponent_form(p: u64, mut buckets: Vec<BigInt>) -> Self {
        assert_eq!(buckets.len(), p as usize);
        let top = buckets.pop().unwrap();
        if !top.is_zero() {
            for b in buckets.iter_mut() {
                *b -= &top;
            }
        }
        CycInt { p, coeffs: buckets }
    }

    /// Canonical coefficients `(c_0, ..., c_{p-2})`.
    pub fn from_coeffs(p: u64, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize);
        CycInt { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The integer value when the element lies in `Z`.
    pub fn is_rational(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Sum of absolute values of the coefficients; bounds `|sigma(x)|` for every embedding.
    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    fn exponent_form(&self) -> Vec<BigInt> {
        let mut ex = self.coeffs.clone();
        ex.push(BigInt::zero());
        ex
    }

    /// `zeta^e * self`, a rotation in exponent form.
    pub fn mul_monomial(&self, e: u64) -> Self {
        let p = self.p as usize;
        let ex = self.exponent_form();
        let shift = (e % self.p) as usize;
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in ex.into_iter().enumerate() {
            out[(i + shift) % p] = c;
        }
        Self::from_exponent_form(self.p, out)
    }

    /// Image under `zeta -> w` in `F_ell`, where `w` is a `p`-th root of unity mod `ell`.
    pub fn eval_mod(&self, w: u64, ell: u64) -> u64 {
        let mut acc = 0u64;
        let mut wp = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = (acc + mul_mod(big_mod_u64(c, ell), wp, ell)) % ell;
            }
            wp = mul_mod(wp, w, ell);
        }
        acc
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p as usize;
        let mut ex = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                ex[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_exponent_form(self.p, ex))
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }
}

pub fn cyc_add(x: &CycInt, y: &CycInt) -> Result<CycInt> {
    x.try_add(y)
}

pub fn cyc_mul(x: &CycInt, y: &CycInt) -> Result<CycInt> {
    x.try_mul(y)
}

pub fn cyc_monomial(p: u64, e: u64) -> CycInt {
    CycInt::monomial(p, e)
}

pub fn cyc_is_rational(x: &CycInt) -> Option<BigInt> {
    x.is_rational()
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("same prime")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("same prime")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("same prime")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if wrote { "+" } else { "" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "ζ^{i}")?,
                _ => write!(f, "{mag}ζ^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u64, v: &[i64]) -> CycInt {
        CycInt::from_coeffs(p, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn zeta_squared_mod_phi3() {
        let z = c(3, &[0, 1]);
        assert_eq!(&z * &z, c(3, &[-1, -1]));
    }

    #[test]
    fn phi_vanishes() {
        let sum = (0..3).fold(CycInt::zero(3), |acc, e| &acc + &CycInt::monomial(3, e));
        assert!(sum.is_zero());
        assert_eq!(cyc_is_rational(&sum), Some(BigInt::zero()));
        for p in [2u64, 3, 5, 7, 11] {
            let s = (0..p).fold(CycInt::zero(p), |acc, e| &acc + &CycInt::monomial(p, e));
            assert_eq!(s.is_rational(), Some(BigInt::zero()), "p = {p}");
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(&CycInt::monomial(5, 2) * &CycInt::monomial(5, 3), CycInt::one(5));
        assert_eq!(cyc_monomial(3, 0), CycInt::one(3));
        assert_eq!(cyc_monomial(3, 2), c(3, &[-1, -1]));
        assert_eq!(cyc_monomial(5, 4), c(5, &[-1, -1, -1, -1]));
        assert_eq!(cyc_monomial(2, 1), c(2, &[-1]));
    }

    #[test]
    fn rationality() {
        assert_eq!(c(3, &[7, 0]).is_rational(), Some(BigInt::from(7)));
        assert_eq!(c(3, &[0, 1]).is_rational(), None);
    }

    #[test]
    fn prime_mismatch() {
        assert_eq!(
            cyc_add(&CycInt::one(3), &CycInt::one(5)),
            Err(Error::PrimeMismatch(3, 5))
        );
        assert!(cyc_mul(&CycInt::one(3), &CycInt::one(5)).is_err());
    }

    #[test]
    fn monomial_shift_agrees_with_product() {
        let x = c(5, &[3, -1, 4, 2]);
        for e in 0..5 {
            assert_eq!(x.mul_monomial(e), &x * &CycInt::monomial(5, e));
        }
    }

    #[test]
    fn residue_map_is_a_homomorphism() {
        // ell = 31 = 1 + 3 * 10; w = 5 has order 3 mod 31
        let (ell, w) = (31u64, 5u64);
        assert_eq!(crate::arith::pow_mod(w, 3, ell), 1);
        let x = c(3, &[4, -7]);
        let y = c(3, &[-2, 9]);
        let prod = &x * &y;
        assert_eq!(prod.eval_mod(w, ell), mul_mod(x.eval_mod(w, ell), y.eval_mod(w, ell), ell));
    }

    #[test]
    fn display() {
        assert_eq!(c(3, &[-1, -1]).to_string(), "-1 - ζ^1");
        assert_eq!(CycInt::zero(5).to_string(), "0");
    }
}
