//! Explicit elements realizing target pairs `(A, B)`, achievability of `A`
//! as a `Z_{q-1}` determinant, and membership deciders for the classified `q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{integer_root_floor, is_prime};
use crate::detengine::{compute_a, compute_b};
use crate::element::GroupRingElement;
use crate::error::{Error, Result};
use crate::field::{exponent_index, exponent_vector, orbit, FieldSpec};
use crate::oracle::divisibility_holds;
use crate::reference::reference_data;
use crate::rings::AbRingElement;
use crate::search::{q27_spec, q9_spec, Q27Case};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetPair {
    #[serde(rename = "A", with = "crate::bigjson::string")]
    pub a: BigInt,
    #[serde(rename = "B", with = "crate::bigjson::string")]
    pub b: BigInt,
    pub q: u64,
}

impl TargetPair {
    pub fn new(a: BigInt, b: BigInt, q: u64) -> Self {
        TargetPair { a, b, q }
    }

    pub fn congruent(&self) -> bool {
        (&self.b - &self.a).is_multiple_of(&BigInt::from(self.q))
    }

    /// `A * B^{q-1}`.
    pub fn d(&self) -> BigInt {
        &self.a * Pow::pow(&self.b, (self.q - 1) as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Coprime,
    Square,
    Q9Special,
    Q27Special,
    /// `X` times an inner witness, negating both `A` and `B`.
    MonomialSign,
    /// `1 + Y_0 + ... + Y_0^{p-1}`, for `D = 0`.
    Cyclotomic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub construction: Construction,
    pub params: BTreeMap<String, Value>,
    pub element: GroupRingElement,
    pub claimed: TargetPair,
}

impl Witness {
    /// Recomputes `A` and `B` from the element.
    pub fn verify(&self) -> Result<()> {
        let a = compute_a(&self.element);
        let b = compute_b(&self.element)?;
        if a != self.claimed.a || b != self.claimed.b {
            return Err(Error::VerificationFailed(format!(
                "{:?} claims (A, B) = ({}, {}) but computes ({a}, {b})",
                self.construction, self.claimed.a, self.claimed.b
            )));
        }
        Ok(())
    }

    fn build(
        construction: Construction,
        params: &[(&str, Value)],
        element: GroupRingElement,
        a: BigInt,
        b: BigInt,
    ) -> Result<Self> {
        let q = element.spec().q();
        let w = Witness {
            construction,
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            element,
            claimed: TargetPair::new(a, b, q),
        };
        w.verify()?;
        Ok(w)
    }
}

fn big_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn ones_prefix(spec: &FieldSpec, len: usize) -> GroupRingElement {
    let zero = vec![0u64; spec.k() as usize];
    let mut e = GroupRingElement::zero(spec);
    for j in 0..len {
        e.add_term(j as u64, &zero, &BigInt::one());
    }
    e
}

fn y0_minus(spec: &FieldSpec, c: &BigInt, m: &BigInt) -> AbRingElement {
    // c + m (1 - y_0)
    let (p, k) = (spec.p(), spec.k());
    let mut e = vec![0u64; k as usize];
    e[0] = 1;
    let one_minus_y = &AbRingElement::one(p, k) - &AbRingElement::monomial(p, k, &e);
    &AbRingElement::constant(p, k, c.clone()) + &one_minus_y.scale(m)
}

/// `F = (1 + x + ... + x^{l-1}) + (lambda + m (1 - y_0)) (1 + x + ... + x^{q-2})`
/// with `A = l + lambda (q-1)`, `1 <= l <= q-1`, and `m = (B - A) / q`.
pub fn achieve_coprime(spec: &FieldSpec, a: &BigInt, b: &BigInt) -> Result<Witness> {
    let n = BigInt::from(spec.n());
    let q = BigInt::from(spec.q());
    if !a.gcd(&n).is_one() {
        return Err(Error::NotCoprime(a.clone()));
    }
    if !(b - a).is_multiple_of(&q) {
        return Err(Error::CongruenceViolation { a: a.clone(), b: b.clone(), q: spec.q() });
    }
    let l: BigInt = (a - BigInt::one()).mod_floor(&n) + 1;
    let lambda = (a - &l) / &n;
    let m = (b - a) / &q;
    let base = ones_prefix(spec, l.to_usize().expect("l < q"));
    let elem = base.plus_times_all_ones(&y0_minus(spec, &lambda, &m))?;
    Witness::build(
        Construction::Coprime,
        &[("l", big_value(&l)), ("lambda", big_value(&lambda)), ("m", big_value(&m))],
        elem,
        a.clone(),
        b.clone(),
    )
}

/// The exponent `U` of the monomial missing from `1 + C_{q-1} + C_{q-1} C_{q-2}
/// + ... + C_{q-1} ... C_2`, where `C_j = y^{M^{j-1} e_1}`.
pub fn square_missing_monomial(spec: &FieldSpec) -> Result<Vec<u64>> {
    let orb = orbit(spec)?;
    let (p, k) = (spec.p(), spec.k() as usize);
    let cols = orb.first_columns();
    let mut seen = vec![false; spec.y_count()];
    let mut acc = vec![0u64; k];
    seen[0] = true;
    for col in cols[1..].iter().rev() {
        for (a, c) in acc.iter_mut().zip(col) {
            *a = (*a + c) % p;
        }
        seen[exponent_index(p, &acc)] = true;
    }
    let missing: Vec<usize> = (0..seen.len()).filter(|&i| !seen[i]).collect();
    match missing.as_slice() {
        [u] => Ok(exponent_vector(p, k, *u)),
        _ => Err(Error::MissingMonomialNotUnique),
    }
}

/// `F = (1 - Y_0 X) + (c + l (1 - y^{-U})) (1 + X + ... + X^{q-2})` with
/// `A = c (q-1)^2`, `B = c + l q`.
pub fn achieve_square(spec: &FieldSpec, c: &BigInt, l: &BigInt) -> Result<Witness> {
    let (p, k) = (spec.p(), spec.k());
    let u = square_missing_monomial(spec)?;
    let mut y0 = vec![0u64; k as usize];
    y0[0] = 1;
    let mut base = GroupRingElement::one(spec);
    base.add_term(1, &y0, &-BigInt::one());
    let inv_u: Vec<u64> = u.iter().map(|&e| (p - e) % p).collect();
    let dir = &AbRingElement::one(p, k) - &AbRingElement::monomial(p, k, &inv_u);
    let h = &AbRingElement::constant(p, k, c.clone()) + &dir.scale(l);
    let elem = base.plus_times_all_ones(&h)?;
    let n = BigInt::from(spec.n());
    let a = c * &n * &n;
    let b = c + l * BigInt::from(spec.q());
    Witness::build(
        Construction::Square,
        &[("c", big_value(c)), ("l", big_value(l)), ("missing", serde_json::json!(u))],
        elem,
        a,
        b,
    )
}

/// `1 + Y X^2 + X^3 + X^4 + (c + b (1 - Y^2 Z^2)) (1 + X + ... + X^7)` over
/// `q = 9`, with `A = 32 (1 + 2c)`, `B = 5 + 19 c + 9 b`.
pub fn q9_special_witness(c: &BigInt, b: &BigInt) -> Result<Witness> {
    let data = &reference_data().q9;
    let spec = q9_spec();
    let g = GroupRingElement::parse(&spec, &data.g)?;
    let t = AbRingElement::parse(3, 2, &data.t)?;
    let h = &AbRingElement::constant(3, 2, c.clone()) + &t.scale(b);
    let elem = g.plus_times_all_ones(&h)?;
    let a = &data.a0 * (BigInt::one() + 2 * c);
    let bb = &data.b0 + &data.b1 * c + &data.b_step * b;
    Witness::build(
        Construction::Q9Special,
        &[("c", big_value(c)), ("b", big_value(b))],
        elem,
        a,
        bb,
    )
}

/// `G + (lambda + m t) (1 + x + ... + x^{25})` from the tabulated `(G, t)` of
/// `case`, with `A = A0 + step * lambda` and `B = B0 + B1 lambda + 27 m`.
pub fn q27_special_witness(case: Q27Case, lambda: &BigInt, m: &BigInt) -> Result<Witness> {
    let data = case.reference();
    let spec = q27_spec();
    let g = GroupRingElement::parse(&spec, &data.g)?;
    let t = AbRingElement::parse(3, 3, &data.t)?;
    let h = &AbRingElement::constant(3, 3, lambda.clone()) + &t.scale(m);
    let elem = g.plus_times_all_ones(&h)?;
    let a = case.a0() + case.a_step() * lambda;
    let b = &data.b0 + &data.b1 * lambda + BigInt::from(27) * m;
    Witness::build(
        Construction::Q27Special,
        &[
            ("case", Value::String(case.label())),
            ("lambda", big_value(lambda)),
            ("m", big_value(m)),
        ],
        elem,
        a,
        b,
    )
}

/// `X * inner`, realizing `(-A, -B)`: `X` has `A = -1`, `B = -1` whenever `q` is odd.
pub fn monomial_sign(inner: &Witness) -> Result<Witness> {
    let spec = inner.element.spec();
    if !spec.n().is_multiple_of(2) {
        return Err(Error::UnsupportedCase("X has determinant 1 when q - 1 is odd".into()));
    }
    let x = GroupRingElement::monomial(spec, 1, &vec![0; spec.k() as usize]);
    let elem = x.try_mul(&inner.element)?;
    let mut params = vec![("inner", serde_json::to_value(inner.construction).expect("tag"))];
    params.extend(inner.params.iter().map(|(k, v)| (k.as_str(), v.clone())));
    Witness::build(Construction::MonomialSign, &params, elem, -&inner.claimed.a, -&inner.claimed.b)
}

/// `1 + Y_0 + ... + Y_0^{p-1}`: `A = p^{q-1}`, `B = 0`.
pub fn cyclotomic_witness(spec: &FieldSpec) -> Result<Witness> {
    let mut elem = GroupRingElement::zero(spec);
    let mut e = vec![0u64; spec.k() as usize];
    for i in 0..spec.p() {
        e[0] = i;
        elem.add_term(0, &e, &BigInt::one());
    }
    let a = Pow::pow(BigInt::from(spec.p()), spec.n() as u32);
    Witness::build(Construction::Cyclotomic, &[], elem, a, BigInt::zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Achievability {
    Yes,
    No,
    Unknown,
}

fn is_mersenne_modulus(m: u64) -> bool {
    is_prime(m) && (m + 1).is_power_of_two()
}

/// Whether `A` is a `Z_m` integer group determinant, where known.
pub fn zq1_achievable(m: u64, a: &BigInt) -> Achievability {
    assert!(m >= 1, "modulus must be positive");
    let mb = BigInt::from(m);
    if a.gcd(&mb).is_one() || a.is_multiple_of(&(&mb * &mb)) {
        return Achievability::Yes;
    }
    let yes_no = |b: bool| if b { Achievability::Yes } else { Achievability::No };
    match m {
        8 => yes_no(a.is_odd() || a.is_multiple_of(&BigInt::from(32))),
        26 => yes_no(
            (!a.is_multiple_of(&BigInt::from(2)) || a.is_multiple_of(&BigInt::from(4)))
                && (!a.is_multiple_of(&BigInt::from(13)) || a.is_multiple_of(&BigInt::from(169))),
        ),
        _ if is_prime(m) || (m.is_multiple_of(2) && is_prime(m / 2)) => yes_no(divisibility_holds(m, a)),
        _ if !divisibility_holds(m, a) => Achievability::No,
        _ => Achievability::Unknown,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    #[serde(rename = "D", with = "crate::bigjson::string")]
    pub d: BigInt,
    #[serde(rename = "A", with = "crate::bigjson::opt_string")]
    pub a: Option<BigInt>,
    #[serde(rename = "B", with = "crate::bigjson::opt_string")]
    pub b: Option<BigInt>,
    pub witness: Option<Witness>,
}

/// `q` values whose integer group determinants are fully classified here.
pub fn is_classified(q: u64) -> bool {
    q == 9 || q == 27 || (q.is_power_of_two() && is_mersenne_modulus(q - 1))
}

fn check_classified(spec: &FieldSpec) -> Result<()> {
    if is_classified(spec.q()) {
        Ok(())
    } else {
        Err(Error::UnsupportedQ(spec.q()))
    }
}

/// Builds a witness for an admissible pair `(A, B)` on a classified `q`.
pub fn achieve(spec: &FieldSpec, a: &BigInt, b: &BigInt) -> Result<Witness> {
    let q = spec.q();
    let qb = BigInt::from(q);
    let n = BigInt::from(spec.n());
    if !(b - a).is_multiple_of(&qb) {
        return Err(Error::CongruenceViolation { a: a.clone(), b: b.clone(), q });
    }
    if a.gcd(&n).is_one() {
        return achieve_coprime(spec, a, b);
    }
    if a.is_multiple_of(&(&n * &n)) {
        let c = a / (&n * &n);
        let l = (b - &c) / &qb;
        return achieve_square(spec, &c, &l);
    }
    match q {
        9 if spec == &q9_spec() => {
            let thirty_two = BigInt::from(32);
            if a.is_multiple_of(&thirty_two) && (a / &thirty_two).is_odd() {
                let c = (a / &thirty_two - 1) / 2;
                let data = &reference_data().q9;
                let bb = (b - &data.b0 - &data.b1 * &c) / &data.b_step;
                return q9_special_witness(&c, &bb);
            }
        }
        27 if spec == &q27_spec() => {
            let (four, thirteen) = (BigInt::from(4), BigInt::from(13));
            if a.is_multiple_of(&four) && !a.is_multiple_of(&thirteen) {
                let kk = a / &four;
                let r = kk.mod_floor(&thirteen).to_u8().expect("residue");
                if r > 6 {
                    let inner = achieve(spec, &-a, &-b)?;
                    return monomial_sign(&inner);
                }
                let lambda = (&kk - r) / &thirteen;
                return q27_with_m(Q27Case::Four(r), &lambda, b);
            }
            let ts = BigInt::from(169);
            if a.is_odd() && a.is_multiple_of(&ts) {
                let lambda = (a / &ts - 1) / 2;
                return q27_with_m(Q27Case::ThirteenSquared, &lambda, b);
            }
        }
        _ => {}
    }
    Err(Error::UnsupportedCase(format!("no construction for (A, B) = ({a}, {b}) at q = {q}")))
}

fn q27_with_m(case: Q27Case, lambda: &BigInt, b: &BigInt) -> Result<Witness> {
    let data = case.reference();
    let rest = b - &data.b0 - &data.b1 * lambda;
    let m = rest / BigInt::from(27);
    q27_special_witness(case, lambda, &m)
}

/// Decides whether `D` is an integer group determinant of GA(1, q).
///
/// Candidates `b` are tried in order of increasing `|b|`, positive first; the
/// first `b` with `b^{q-1} | D`, `b = D / b^{q-1} (mod q)` and an achievable
/// `A = D / b^{q-1}` wins, and its witness is verified against `D`.
pub fn decide_membership(spec: &FieldSpec, d: &BigInt) -> Result<Decision> {
    check_classified(spec)?;
    if d.is_zero() {
        let w = cyclotomic_witness(spec)?;
        return Ok(Decision {
            verdict: Verdict::Yes,
            d: d.clone(),
            a: Some(w.claimed.a.clone()),
            b: Some(BigInt::zero()),
            witness: Some(w),
        });
    }
    let n = spec.n() as u32;
    let qb = BigInt::from(spec.q());
    let limit = integer_root_floor(d, n);
    let mut mag = BigInt::one();
    while mag <= limit {
        for b in [mag.clone(), -&mag] {
            let bp = Pow::pow(&b, n);
            if !d.is_multiple_of(&bp) {
                continue;
            }
            let a = d / &bp;
            if !(&b - &a).is_multiple_of(&qb) || zq1_achievable(spec.n() as u64, &a) != Achievability::Yes {
                continue;
            }
            let w = achieve(spec, &a, &b)?;
            if w.claimed.d() != *d {
                return Err(Error::VerificationFailed(format!("witness gives D = {}", w.claimed.d())));
            }
            return Ok(Decision { verdict: Verdict::Yes, d: d.clone(), a: Some(a), b: Some(b), witness: Some(w) });
        }
        mag += 1;
    }
    Ok(Decision { verdict: Verdict::No, d: d.clone(), a: None, b: None, witness: None })
}

/// Direct form of the classification for `q = 2^k` with `q - 1 = r` prime:
/// `D = A B^r` with `B = A (mod q)` and `gcd(A, r) = 1` or `r^2 | A`.
pub fn mersenne_condition(q: u64, d: &BigInt) -> bool {
    let r = q - 1;
    if d.is_zero() {
        return true;
    }
    let rb = BigInt::from(r);
    let limit = integer_root_floor(d, r as u32);
    let mut b = -limit.clone();
    while b <= limit {
        if !b.is_zero() {
            let bp = Pow::pow(&b, r as u32);
            if d.is_multiple_of(&bp) {
                let a = d / &bp;
                let cong = (&b - &a).is_multiple_of(&BigInt::from(q));
                if cong && (a.gcd(&rb).is_one() || a.is_multiple_of(&(&rb * &rb))) {
                    return true;
                }
            }
        }
        b += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::find_field_spec;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn coprime_examples() {
        let spec9 = q9_spec();
        let w = achieve_coprime(&spec9, &big(1), &big(1)).unwrap();
        assert_eq!(w.element, GroupRingElement::one(&spec9));
        achieve_coprime(&spec9, &big(5), &big(14)).unwrap();
        achieve_coprime(&spec9, &big(-7), &big(2)).unwrap();
        assert!(matches!(achieve_coprime(&spec9, &big(4), &big(4)), Err(Error::NotCoprime(_))));
        assert!(matches!(
            achieve_coprime(&spec9, &big(5), &big(6)),
            Err(Error::CongruenceViolation { .. })
        ));
        let spec8 = find_field_spec(2, 3, None).unwrap();
        let w = achieve_coprime(&spec8, &big(3), &big(3)).unwrap();
        assert_eq!(w.claimed.d(), big(3).pow(8u32));
        let spec2 = find_field_spec(2, 1, None).unwrap();
        achieve_coprime(&spec2, &big(-4), &big(-2)).unwrap();
    }

    #[test]
    fn square_examples() {
        let spec9 = q9_spec();
        let w = achieve_square(&spec9, &big(0), &big(0)).unwrap();
        assert_eq!((w.claimed.a.clone(), w.claimed.b.clone()), (big(0), big(0)));
        let w = achieve_square(&spec9, &big(1), &big(0)).unwrap();
        assert_eq!((w.claimed.a.clone(), w.claimed.b.clone()), (big(64), big(1)));
        let spec4 = find_field_spec(2, 2, None).unwrap();
        let w = achieve_square(&spec4, &big(1), &big(1)).unwrap();
        assert_eq!((w.claimed.a.clone(), w.claimed.b.clone()), (big(9), big(5)));
    }

    #[test]
    fn special_examples() {
        for (c, b, a, bb) in [(0, 0, 32, 5), (1, 0, 96, 24), (0, 1, 32, 14)] {
            let w = q9_special_witness(&big(c), &big(b)).unwrap();
            assert_eq!((w.claimed.a, w.claimed.b), (big(a), big(bb)));
        }
        let w = q27_special_witness(Q27Case::Four(1), &big(0), &big(0)).unwrap();
        assert_eq!((w.claimed.a, w.claimed.b), (big(4), big(-1670)));
        let w = q27_special_witness(Q27Case::Four(2), &big(1), &big(0)).unwrap();
        assert_eq!((w.claimed.a, w.claimed.b), (big(60), big(-19 - 1622)));
        let w = q27_special_witness(Q27Case::ThirteenSquared, &big(0), &big(1)).unwrap();
        assert_eq!((w.claimed.a, w.claimed.b), (big(169), big(3436 + 27)));
    }

    #[test]
    fn sign_flip_for_large_residues() {
        // A = 4 * 7: residue 7 is reached through X * F(-A, -B)
        let spec = q27_spec();
        let w = achieve(&spec, &big(28), &big(1)).unwrap();
        assert_eq!(w.construction, Construction::MonomialSign);
        assert_eq!((w.claimed.a, w.claimed.b), (big(28), big(1)));
    }

    #[test]
    fn achievability_rules() {
        use Achievability::*;
        assert_eq!(zq1_achievable(8, &big(32)), Yes);
        assert_eq!(zq1_achievable(8, &big(2)), No);
        assert_eq!(zq1_achievable(26, &big(26)), No);
        assert_eq!(zq1_achievable(26, &big(4 * 169)), Yes);
        assert_eq!(zq1_achievable(5, &big(10)), No);
        assert_eq!(zq1_achievable(5, &big(25)), Yes);
        assert_eq!(zq1_achievable(15, &big(4)), Yes);
        assert_eq!(zq1_achievable(15, &big(3)), No);
        assert_eq!(zq1_achievable(15, &big(45)), No);
        assert_eq!(zq1_achievable(15, &big(9)), Unknown);
        assert_eq!(zq1_achievable(1, &big(0)), Yes);
    }

    #[test]
    fn decisions() {
        let spec8 = find_field_spec(2, 3, None).unwrap();
        let r = decide_membership(&spec8, &big(6561)).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        // smallest |b| first: b = 1 already works
        assert_eq!((r.a, r.b), (Some(big(6561)), Some(big(1))));
        let r = decide_membership(&spec8, &(big(3) * big(-5).pow(7u32))).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        let r = decide_membership(&spec8, &big(0)).unwrap();
        assert_eq!(r.witness.unwrap().construction, Construction::Cyclotomic);
        let spec9 = q9_spec();
        // 64 = 64 * 1^8 with 64 = 1 (mod 9) and 8^2 | 64
        let r = decide_membership(&spec9, &big(64)).unwrap();
        assert_eq!(r.witness.unwrap().construction, Construction::Square);
        assert_eq!(decide_membership(&spec9, &big(2)).unwrap().verdict, Verdict::No);
        let d = big(32) * big(5).pow(8u32);
        let r = decide_membership(&spec9, &d).unwrap();
        assert_eq!(r.witness.unwrap().construction, Construction::Q9Special);
        let spec16 = find_field_spec(2, 4, None).unwrap();
        assert_eq!(decide_membership(&spec16, &big(1)).unwrap_err(), Error::UnsupportedQ(16));
        let spec25 = find_field_spec(5, 2, None).unwrap();
        assert!(decide_membership(&spec25, &big(1)).is_err());
    }
}
