use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycInt;
use super::notation::{default_names, parse_polynomial, render_terms};
use crate::error::{Error, Result};
use crate::field::{exponent_index, exponent_vector};

/// An element of `Z[y_0, ..., y_{k-1}] / <y_i^p - 1>`.
///
/// Dense over the `p^k` exponent tuples; tuple `(i_0, ..., i_{k-1})` lives at
/// index `sum i_t p^t` (first variable least significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AbRingRepr", into = "AbRingRepr")]
pub struct AbRingElement {
    p: u64,
    k: u32,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct AbRingRepr {
    p: u64,
    k: u32,
    #[serde(with = "crate::bigjson::vec_number")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<AbRingRepr> for AbRingElement {
    type Error = Error;
    fn try_from(raw: AbRingRepr) -> Result<Self> {
        AbRingElement::from_coeffs(raw.p, raw.k, raw.coeffs)
    }
}

impl From<AbRingElement> for AbRingRepr {
    fn from(x: AbRingElement) -> Self {
        AbRingRepr { p: x.p, k: x.k, coeffs: x.coeffs }
    }
}

impl AbRingElement {
    pub fn zero(p: u64, k: u32) -> Self {
        AbRingElement { p, k, coeffs: vec![BigInt::zero(); p.pow(k) as usize] }
    }

    pub fn constant(p: u64, k: u32, c: BigInt) -> Self {
        let mut out = Self::zero(p, k);
        out.coeffs[0] = c;
        out
    }

    pub fn one(p: u64, k: u32) -> Self {
        Self::constant(p, k, BigInt::one())
    }

    /// `y^exps`, exponents reduced mod `p`.
    pub fn monomial(p: u64, k: u32, exps: &[u64]) -> Self {
        let mut out = Self::zero(p, k);
        out.coeffs[exponent_index(p, exps)] = BigInt::one();
        out
    }

    pub fn from_coeffs(p: u64, k: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() as u64 != p.pow(k) {
            return Err(Error::ShapeMismatch);
        }
        Ok(AbRingElement { p, k, coeffs })
    }

    /// Parses hand-written notation; variables are `y, z, w` for `k <= 3`, else `y0, y1, ...`.
    pub fn parse(p: u64, k: u32, src: &str) -> Result<Self> {
        let names = default_names(k as usize);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let sparse = parse_polynomial(src, &refs)?;
        let mut out = Self::zero(p, k);
        for (exps, c) in sparse {
            let e: Vec<u64> = exps.iter().map(|&x| x as u64 % p).collect();
            out.coeffs[exponent_index(p, &e)] += c;
        }
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u64]) -> &BigInt {
        &self.coeffs[exponent_index(self.p, exps)]
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `(exponent tuple, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u64>, &BigInt)> + '_ {
        let (p, k) = (self.p, self.k as usize);
        self.coeffs.iter().enumerate().map(move |(i, c)| (exponent_vector(p, k, i), c))
    }

    /// Value at `y = (1, ..., 1)`: the sum of the coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// gcd of all coefficients (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        AbRingElement { p: self.p, k: self.k, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The substitution `y_i -> y_i^{-1}`.
    pub fn invert_exponents(&self) -> Self {
        let mut out = Self::zero(self.p, self.k);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[neg_index(self.p, self.k, i)] = c.clone();
        }
        out
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.p == other.p && self.k == other.k {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(AbRingElement {
            p: self.p,
            k: self.k,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(AbRingElement {
            p: self.p,
            k: self.k,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = Self::zero(self.p, self.k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[add_index(self.p, self.k, i, j)] += a * b;
            }
        }
        Ok(out)
    }

    /// Substitutes `y_i = zeta^{s_i}`: `sum_u a(u) zeta^{<s, u>}`.
    pub fn evaluate(&self, s: &[u64]) -> CycInt {
        let p = self.p;
        let mut buckets = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let u = exponent_vector(p, self.k as usize, i);
            let e = u.iter().zip(s).map(|(a, b)| a * b).sum::<u64>() % p;
            buckets[e as usize] += c;
        }
        CycInt::from_exponent_form(p, buckets)
    }

    /// Inverse character transform: the unique element whose value at each
    /// tuple `s` (indexed like the coefficients) is `values[s]`.
    pub fn from_character_values(p: u64, k: u32, values: &[CycInt]) -> Result<Self> {
        let size = p.pow(k) as usize;
        if values.len() != size {
            return Err(Error::ShapeMismatch);
        }
        if let Some(v) = values.iter().find(|v| v.p() != p) {
            return Err(Error::PrimeMismatch(p, v.p()));
        }
        let q = BigInt::from(size);
        let svecs: Vec<Vec<u64>> = (0..size).map(|s| exponent_vector(p, k as usize, s)).collect();
        let mut coeffs = Vec::with_capacity(size);
        for u in &svecs {
            let mut acc = vec![BigInt::zero(); p as usize];
            for (s, val) in svecs.iter().zip(values) {
                // multiply by zeta^{-<s,u>}: rotate the exponent form
                let dot = s.iter().zip(u).map(|(a, b)| a * b).sum::<u64>() % p;
                let shift = ((p - dot) % p) as usize;
                for (e, c) in val.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc[(e + shift) % p as usize] += c;
                    }
                }
            }
            let total = CycInt::from_exponent_form(p, acc);
            let rational = total.is_rational().ok_or(Error::NotIntegral)?;
            let (quot, rem) = rational.div_rem(&q);
            if !rem.is_zero() {
                return Err(Error::NotIntegral);
            }
            coeffs.push(quot);
        }
        Ok(AbRingElement { p, k, coeffs })
    }

    /// Returns `(S, a_0)` where `S` is the sum of the element's values over
    /// all nontrivial tuples: `S = p^k a_0 - g(1, ..., 1)`.
    pub fn sum_over_nontrivial(&self) -> (BigInt, BigInt) {
        let a0 = self.constant_term().clone();
        let s = &a0 * BigInt::from(self.coeffs.len()) - self.evaluate_at_one();
        (s, a0)
    }

    pub fn to_notation(&self) -> String {
        let names = default_names(self.k as usize);
        render_terms(self.terms().map(|(e, c)| (e, c.clone())), &names)
    }
}

/// Index of `u + v` (digit-wise mod `p`).
pub(crate) fn add_index(p: u64, k: u32, mut a: usize, mut b: usize) -> usize {
    let p = p as usize;
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Index of `-u`.
pub(crate) fn neg_index(p: u64, k: u32, mut a: usize) -> usize {
    let p = p as usize;
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

pub fn ab_add(x: &AbRingElement, y: &AbRingElement) -> Result<AbRingElement> {
    x.try_add(y)
}

pub fn ab_mul(x: &AbRingElement, y: &AbRingElement) -> Result<AbRingElement> {
    x.try_mul(y)
}

pub fn ab_evaluate(x: &AbRingElement, s: &[u64]) -> CycInt {
    x.evaluate(s)
}

pub fn ab_from_character_values(p: u64, k: u32, values: &[CycInt]) -> Result<AbRingElement> {
    AbRingElement::from_character_values(p, k, values)
}

pub fn ab_sum_over_nontrivial(x: &AbRingElement) -> (BigInt, BigInt) {
    x.sum_over_nontrivial()
}

impl Add for &AbRingElement {
    type Output = AbRingElement;
    fn add(self, rhs: &AbRingElement) -> AbRingElement {
        self.try_add(rhs).expect("same shape")
    }
}

impl Sub for &AbRingElement {
    type Output = AbRingElement;
    fn sub(self, rhs: &AbRingElement) -> AbRingElement {
        self.try_sub(rhs).expect("same shape")
    }
}

impl Mul for &AbRingElement {
    type Output = AbRingElement;
    fn mul(self, rhs: &AbRingElement) -> AbRingElement {
        self.try_mul(rhs).expect("same shape")
    }
}

impl Neg for &AbRingElement {
    type Output = AbRingElement;
    fn neg(self) -> AbRingElement {
        AbRingElement { p: self.p, k: self.k, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for AbRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}
