//! The factors `A` and `B` of the group determinant `D = A * B^{q-1}`.
//!
//! `A` is the `Z_{q-1}` circulant determinant of `F(x, 1, ..., 1)`. `B` is the
//! determinant of the `(q-1) x (q-1)` matrix whose `(i, j)` entry is
//! `f_{(j-i) mod (q-1)}` evaluated at `y_l = zeta^{<s, M^i e_l>}`. The same
//! matrix evaluated at `s = 0` is the circulant for `A`, and as a function of
//! `s` it is a polynomial in `Z[y] / <y_i^p - 1>` recovered by the inverse
//! character transform.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::GroupRingElement;
use crate::error::{Error, Result};
use crate::field::{exponent_vector, orbit, Orbit};
use crate::linalg::{circulant, det_bareiss, det_cyc, det_division_free};
use crate::oracle::brute_force_d_with_cap;
use crate::rings::{AbRingElement, CycInt};

/// Determinant algorithm over `Z[zeta_p]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Residue,
    DivisionFree,
}

/// Size limits for the expensive paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order `q(q-1)` for the brute-force oracle.
    pub oracle: u64,
    /// Largest `q` for symbolic (all-character) determinants.
    pub symbolic_q: u64,
}

pub const DEFAULT_ORACLE_CAP: u64 = 128;
pub const DEFAULT_SYMBOLIC_CAP: u64 = 32;

impl Default for Caps {
    fn default() -> Self {
        Caps { oracle: DEFAULT_ORACLE_CAP, symbolic_q: DEFAULT_SYMBOLIC_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetReport {
    #[serde(rename = "A", with = "crate::bigjson::string")]
    pub a: BigInt,
    #[serde(rename = "B", with = "crate::bigjson::string")]
    pub b: BigInt,
    #[serde(rename = "D", with = "crate::bigjson::string")]
    pub d: BigInt,
    pub congruence_ok: bool,
    pub avg_identity_ok: bool,
    #[serde(rename = "oracle_D", with = "crate::bigjson::opt_string")]
    pub oracle_d: Option<BigInt>,
}

impl DetReport {
    /// Congruence and identity hold, and the oracle (if run) agrees.
    pub fn all_ok(&self) -> bool {
        self.congruence_ok
            && self.avg_identity_ok
            && self.oracle_d.as_ref().is_none_or(|d| *d == self.d)
    }
}

pub fn compute_a(elem: &GroupRingElement) -> BigInt {
    det_bareiss(&circulant(&elem.at_trivial_y()))
}

/// The matrix for `B` at character tuple `s`, optionally with its first row
/// replaced by ones.
pub fn b_matrix(elem: &GroupRingElement, orb: &Orbit, s: &[u64], ones_first_row: bool) -> Vec<Vec<CycInt>> {
    let spec = elem.spec();
    let (p, k, n) = (spec.p(), spec.k() as usize, spec.n());
    let exps: Vec<Vec<u64>> = (0..spec.y_count()).map(|u| exponent_vector(p, k, u)).collect();
    let parts = elem.x_coefficients();
    (0..n)
        .map(|i| {
            if i == 0 && ones_first_row {
                return vec![CycInt::one(p); n];
            }
            let t = orb.apply_transpose(i, s);
            let dots: Vec<usize> = exps
                .iter()
                .map(|u| (u.iter().zip(&t).map(|(a, b)| a * b).sum::<u64>() % p) as usize)
                .collect();
            let values: Vec<CycInt> = parts
                .iter()
                .map(|f| {
                    let mut buckets = vec![BigInt::zero(); p as usize];
                    for (c, &e) in f.coeffs().iter().zip(&dots) {
                        if !c.is_zero() {
                            buckets[e] += c;
                        }
                    }
                    CycInt::from_exponent_form(p, buckets)
                })
                .collect();
            (0..n).map(|j| values[(j + n - i) % n].clone()).collect()
        })
        .collect()
}

fn det_with(m: &[Vec<CycInt>], p: u64, method: Method) -> Result<CycInt> {
    match method {
        Method::Residue => det_cyc(m, p),
        Method::DivisionFree => Ok(det_division_free(m, &CycInt::one(p))),
    }
}

fn check_start(elem: &GroupRingElement, s: &[u64]) -> Result<()> {
    let spec = elem.spec();
    if s.len() != spec.k() as usize || s.iter().any(|&x| x >= spec.p()) {
        return Err(Error::InvalidStart(format!("{s:?} is not a vector in F_{}^{}", spec.p(), spec.k())));
    }
    if s.iter().all(|&x| x == 0) {
        return Err(Error::InvalidStart("start tuple must be nonzero".into()));
    }
    Ok(())
}

fn e1(k: usize) -> Vec<u64> {
    let mut s = vec![0; k];
    s[0] = 1;
    s
}

/// `B` at the default start tuple `e_1`.
pub fn compute_b(elem: &GroupRingElement) -> Result<BigInt> {
    compute_b_with(elem, None, Method::Residue)
}

pub fn compute_b_with(elem: &GroupRingElement, start: Option<&[u64]>, method: Method) -> Result<BigInt> {
    let spec = elem.spec();
    let s = match start {
        Some(s) => {
            check_start(elem, s)?;
            s.to_vec()
        }
        None => e1(spec.k() as usize),
    };
    let orb = orbit(spec)?;
    let m = b_matrix(elem, &orb, &s, false);
    det_with(&m, spec.p(), method)?.is_rational().ok_or(Error::NonRationalDeterminant)
}

/// `B` computed from every nonzero start tuple in `starts` (all of them when
/// `None`); true iff they agree.
pub fn check_start_independence(elem: &GroupRingElement, starts: Option<&[Vec<u64>]>) -> Result<bool> {
    let spec = elem.spec();
    let all: Vec<Vec<u64>>;
    let starts = match starts {
        Some(s) => s,
        None => {
            all = (1..spec.y_count())
                .map(|i| exponent_vector(spec.p(), spec.k() as usize, i))
                .collect();
            &all
        }
    };
    let base = compute_b(elem)?;
    let values: Vec<BigInt> = starts
        .par_iter()
        .map(|s| compute_b_with(elem, Some(s), Method::Residue))
        .collect::<Result<_>>()?;
    Ok(values.iter().all(|v| *v == base))
}

fn symbolic(elem: &GroupRingElement, caps: &Caps, ones_first_row: bool) -> Result<AbRingElement> {
    let spec = elem.spec();
    if spec.q() > caps.symbolic_q {
        return Err(Error::CapExceeded { what: "symbolic determinant q", size: spec.q(), cap: caps.symbolic_q });
    }
    let (p, k) = (spec.p(), spec.k());
    let orb = orbit(spec)?;
    let values: Vec<CycInt> = (0..spec.y_count())
        .into_par_iter()
        .map(|i| {
            let s = exponent_vector(p, k as usize, i);
            det_cyc(&b_matrix(elem, &orb, &s, ones_first_row), p)
        })
        .collect::<Result<_>>()?;
    AbRingElement::from_character_values(p, k, &values)
}

/// The `B` determinant as a polynomial in `y`: its value at `0` is `A` and at
/// every nonzero tuple is `B`.
pub fn symbolic_b_polynomial(elem: &GroupRingElement) -> Result<AbRingElement> {
    symbolic(elem, &Caps::default(), false)
}

pub fn symbolic_b_polynomial_with(elem: &GroupRingElement, caps: &Caps) -> Result<AbRingElement> {
    symbolic(elem, caps, false)
}

/// The coefficient `alpha(y)` of `h` in `B(F + h (1 + X + ... + X^{q-2}))`:
/// the `B` determinant with its first row replaced by ones.
pub fn group_ring_det_with_first_row_ones(elem: &GroupRingElement) -> Result<AbRingElement> {
    symbolic(elem, &Caps::default(), true)
}

pub fn group_ring_det_with_first_row_ones_with(elem: &GroupRingElement, caps: &Caps) -> Result<AbRingElement> {
    symbolic(elem, caps, true)
}

pub fn compute_report(elem: &GroupRingElement, with_oracle: bool) -> Result<DetReport> {
    compute_report_with(elem, with_oracle, &Caps::default())
}

pub fn compute_report_with(elem: &GroupRingElement, with_oracle: bool, caps: &Caps) -> Result<DetReport> {
    let spec = elem.spec();
    let q = spec.q();
    let a = compute_a(elem);
    let b = compute_b(elem)?;
    let d = &a * Pow::pow(&b, (q - 1) as u32);
    let qb = BigInt::from(q);
    let congruence_ok = ((&b - &a) % &qb).is_zero();
    let avg_identity_ok = if q <= caps.symbolic_q {
        let g = symbolic_b_polynomial_with(elem, caps)?;
        let at_zero = g.evaluate_at_one();
        let nontrivial_ok = (1..spec.y_count()).all(|i| {
            g.evaluate(&exponent_vector(spec.p(), spec.k() as usize, i)).is_rational().as_ref() == Some(&b)
        });
        at_zero == a && nontrivial_ok && &a + (&qb - BigInt::one()) * &b == &qb * g.constant_term()
    } else {
        // without the polynomial, check the integrality the identity implies
        ((&a + (&qb - BigInt::one()) * &b) % &qb).is_zero()
    };
    let oracle_d = if with_oracle { Some(brute_force_d_with_cap(elem, caps.oracle)?) } else { None };
    Ok(DetReport { a, b, d, congruence_ok, avg_identity_ok, oracle_d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::find_field_spec;

    #[test]
    fn q9_base_element() {
        let spec = find_field_spec(3, 2, None).unwrap();
        let g = GroupRingElement::parse(&spec, "1 + y x^2 + x^3 + x^4").unwrap();
        assert_eq!(compute_a(&g), BigInt::from(32));
        assert_eq!(compute_b(&g).unwrap(), BigInt::from(5));
        let poly = symbolic_b_polynomial(&g).unwrap();
        assert_eq!(poly.constant_term(), &BigInt::from(8));
        let alpha = group_ring_det_with_first_row_ones(&g).unwrap();
        assert_eq!(alpha, AbRingElement::parse(3, 2, "3 - y^2 + y^2z^2 - y^2z + yz^2 + 2yz + 3z^2").unwrap());
    }

    #[test]
    fn displayed_rows() {
        // row 2 of the q = 9 display: 0 1 0 z 1 1 0 0
        let spec = find_field_spec(3, 2, None).unwrap();
        let g = GroupRingElement::parse(&spec, "1 + y x^2 + x^3 + x^4").unwrap();
        let orb = orbit(&spec).unwrap();
        let m = b_matrix(&g, &orb, &[1, 0], false);
        let z = CycInt::one(3);
        assert_eq!(m[1][3], z); // z = zeta^0 at s = e_1
        assert_eq!(m[0][2], CycInt::monomial(3, 1));
        assert_eq!(m[6][0], CycInt::monomial(3, 2)); // y^2 z
    }

    #[test]
    fn identity_and_degenerate() {
        for (p, k) in [(2u64, 2u32), (3, 2), (2, 3)] {
            let spec = find_field_spec(p, k, None).unwrap();
            let r = compute_report(&GroupRingElement::one(&spec), false).unwrap();
            assert_eq!((r.a, r.b, r.d), (BigInt::one(), BigInt::one(), BigInt::one()));
            let src = (0..p).map(|e| format!("y^{e}")).collect::<Vec<_>>().join(" + ");
            let phi = GroupRingElement::parse(&spec, &src).unwrap();
            let r = compute_report(&phi, false).unwrap();
            assert_eq!(r.a, BigInt::from(p).pow((spec.q() - 1) as u32));
            assert!(r.b.is_zero() && r.congruence_ok && r.avg_identity_ok);
        }
    }

    #[test]
    fn methods_agree() {
        let spec = find_field_spec(3, 2, None).unwrap();
        let g = GroupRingElement::parse(&spec, "1 + (y - z) x + 2 x^3 - y z x^5").unwrap();
        let r = compute_b_with(&g, None, Method::Residue).unwrap();
        let d = compute_b_with(&g, None, Method::DivisionFree).unwrap();
        assert_eq!(r, d);
        assert!(check_start_independence(&g, None).unwrap());
        assert!(compute_b_with(&g, Some(&[0, 0]), Method::Residue).is_err());
        assert!(compute_b_with(&g, Some(&[3, 0]), Method::Residue).is_err());
    }

    #[test]
    fn report_json() {
        let spec = find_field_spec(3, 2, None).unwrap();
        let g = GroupRingElement::parse(&spec, "1 + y x^2 + x^3 + x^4").unwrap();
        let r = compute_report(&g, false).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["A"], "32");
        assert_eq!(v["B"], "5");
        assert_eq!(v["D"], (BigInt::from(32) * BigInt::from(5).pow(8u32)).to_string());
        assert_eq!(v["oracle_D"], serde_json::Value::Null);
    }
}
