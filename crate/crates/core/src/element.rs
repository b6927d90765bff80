//! Group ring elements `F(X, Y_0, ..., Y_{k-1}) = sum_j f_j(Y) X^j` of GA(1, q).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{exponent_index, exponent_vector, orbit, FieldSpec, Orbit};
use crate::rings::notation::{default_names, parse_polynomial, render_terms};
use crate::rings::AbRingElement;

/// Dense coefficient table: `X^j Y^u` is stored at `j * p^k + index(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct GroupRingElement {
    spec: FieldSpec,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    spec: FieldSpec,
    #[serde(with = "crate::bigjson::vec_number")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<ElementRepr> for GroupRingElement {
    type Error = Error;
    fn try_from(raw: ElementRepr) -> Result<Self> {
        GroupRingElement::from_coeffs(raw.spec, raw.coeffs)
    }
}

impl From<GroupRingElement> for ElementRepr {
    fn from(e: GroupRingElement) -> Self {
        ElementRepr { spec: e.spec, coeffs: e.coeffs }
    }
}

impl GroupRingElement {
    pub fn zero(spec: &FieldSpec) -> Self {
        let len = spec.n() * spec.y_count();
        GroupRingElement { spec: spec.clone(), coeffs: vec![BigInt::zero(); len] }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[0] = BigInt::one();
        e
    }

    /// `Y^u X^j`.
    pub fn monomial(spec: &FieldSpec, j: u64, u: &[u64]) -> Self {
        let mut e = Self::zero(spec);
        e.add_term(j, u, &BigInt::one());
        e
    }

    pub fn from_coeffs(spec: FieldSpec, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != spec.n() * spec.y_count() {
            return Err(Error::ShapeMismatch);
        }
        Ok(GroupRingElement { spec, coeffs })
    }

    /// Assembles `sum_j f_j X^j` from its X-coefficients.
    pub fn from_parts(spec: &FieldSpec, parts: &[AbRingElement]) -> Result<Self> {
        if parts.len() != spec.n() {
            return Err(Error::ShapeMismatch);
        }
        let mut e = Self::zero(spec);
        for (j, f) in parts.iter().enumerate() {
            e.check_shape(f)?;
            let base = j * spec.y_count();
            e.coeffs[base..base + spec.y_count()].clone_from_slice(f.coeffs());
        }
        Ok(e)
    }

    /// Parses notation in `x` and the Y-variables (`y, z, w` for `k <= 3`,
    /// else `y0, y1, ...`). Exponents of `x` are reduced mod `q - 1`, the
    /// others mod `p`.
    pub fn parse(spec: &FieldSpec, src: &str) -> Result<Self> {
        let mut names = vec!["x".to_string()];
        names.extend(default_names(spec.k() as usize));
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let sparse = parse_polynomial(src, &refs)?;
        let mut e = Self::zero(spec);
        for (exps, c) in sparse {
            let u: Vec<u64> = exps[1..].iter().map(|&v| v as u64).collect();
            e.add_term(exps[0] as u64, &u, &c);
        }
        Ok(e)
    }

    /// Uniform coefficients in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(spec: &FieldSpec, bound: i64, rng: &mut R) -> Self {
        let mut e = Self::zero(spec);
        for c in e.coeffs.iter_mut() {
            *c = BigInt::from(rng.gen_range(-bound..=bound));
        }
        e
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: u64, u: &[u64]) -> &BigInt {
        &self.coeffs[self.index(j, u)]
    }

    pub fn add_term(&mut self, j: u64, u: &[u64], c: &BigInt) {
        let i = self.index(j, u);
        self.coeffs[i] += c;
    }

    fn index(&self, j: u64, u: &[u64]) -> usize {
        let j = (j % self.spec.n() as u64) as usize;
        j * self.spec.y_count() + exponent_index(self.spec.p(), u)
    }

    fn check_shape(&self, f: &AbRingElement) -> Result<()> {
        if f.p() == self.spec.p() && f.k() == self.spec.k() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    /// The coefficient `f_j(Y)` of `X^j`.
    pub fn x_coefficient(&self, j: usize) -> AbRingElement {
        let base = j * self.spec.y_count();
        AbRingElement::from_coeffs(
            self.spec.p(),
            self.spec.k(),
            self.coeffs[base..base + self.spec.y_count()].to_vec(),
        )
        .expect("slice has p^k entries")
    }

    pub fn x_coefficients(&self) -> Vec<AbRingElement> {
        (0..self.spec.n()).map(|j| self.x_coefficient(j)).collect()
    }

    /// `F(x, 1, ..., 1)` as a length-`(q-1)` coefficient list.
    pub fn at_trivial_y(&self) -> Vec<BigInt> {
        self.coeffs
            .chunks(self.spec.y_count())
            .map(|chunk| chunk.iter().sum())
            .collect()
    }

    /// `self + h(Y) * (1 + X + ... + X^{q-2})`.
    pub fn plus_times_all_ones(&self, h: &AbRingElement) -> Result<Self> {
        self.check_shape(h)?;
        let mut out = self.clone();
        for chunk in out.coeffs.chunks_mut(self.spec.y_count()) {
            for (c, d) in chunk.iter_mut().zip(h.coeffs()) {
                *c += d;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::ShapeMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingElement { spec: self.spec.clone(), coeffs })
    }

    /// Group ring product, using `X^j Y^u = Y^{M^j u} X^j`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::ShapeMismatch);
        }
        let orb = orbit(&self.spec)?;
        Ok(self.mul_with(other, &orb))
    }

    pub fn mul_with(&self, other: &Self, orb: &Orbit) -> Self {
        let spec = &self.spec;
        let (p, k, n, ny) = (spec.p(), spec.k() as usize, spec.n(), spec.y_count());
        // conj[j][u] = index of M^j u
        let conj: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..ny)
                    .map(|u| exponent_index(p, &orb.apply(j, &exponent_vector(p, k, u))))
                    .collect()
            })
            .collect();
        let mut out = Self::zero(spec);
        for (i1, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (j1, u1) = (i1 / ny, exponent_vector(p, k, i1 % ny));
            for (i2, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (j2, u2) = (i2 / ny, conj[j1][i2 % ny]);
                let v = exponent_vector(p, k, u2);
                let sum: Vec<u64> = u1.iter().zip(&v).map(|(x, y)| (x + y) % p).collect();
                let idx = ((j1 + j2) % n) * ny + exponent_index(p, &sum);
                out.coeffs[idx] += a * b;
            }
        }
        out
    }

    pub fn to_notation(&self) -> String {
        let k = self.spec.k() as usize;
        let mut names = vec!["x".to_string()];
        names.extend(default_names(k));
        let ny = self.spec.y_count();
        let p = self.spec.p();
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| {
            let mut exps = vec![(i / ny) as u64];
            exps.extend(exponent_vector(p, k, i % ny));
            // print the Y-part first, then x
            let mut reordered = exps[1..].to_vec();
            reordered.push(exps[0]);
            (reordered, c.clone())
        });
        let mut reordered_names = names[1..].to_vec();
        reordered_names.push(names[0].clone());
        render_terms(terms, &reordered_names)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}
