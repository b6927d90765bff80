//! Finite-field setup for GA(1, q).
//!
//! A [`FieldSpec`] fixes `q = p^k` together with the minimal polynomial
//! `f(x) = x^k - a_{k-1} x^{k-1} - ... - a_0` of a generator `r` of `F_q*`.
//! Everything downstream works with the companion matrix `M` of `f` and the
//! orbit `M^0, M^1, ..., M^{q-2}`: column `l` of `M^{j}` holds the exponents
//! of the monomial that sits in row `j + 1` of the diagonal of `rho(Y_l)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Default upper bound on `q` for which the full orbit is materialised.
pub const DEFAULT_ORBIT_CAP: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    a: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u64,
    k: u32,
    a: Vec<u64>,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(raw: FieldSpecRepr) -> Result<Self> {
        find_field_spec(raw.p, raw.k, Some(&raw.a))
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(spec: FieldSpec) -> Self {
        FieldSpecRepr { p: spec.p, k: spec.k, a: spec.a }
    }
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the cyclic group `F_q*`, i.e. the size of the B matrix.
    pub fn n(&self) -> usize {
        (self.q - 1) as usize
    }

    /// The coefficients `(a_0, ..., a_{k-1})` in least nonnegative form.
    pub fn coefficients(&self) -> &[u64] {
        &self.a
    }

    /// Number of Y-monomials, `p^k`.
    pub fn y_count(&self) -> usize {
        self.q as usize
    }

    /// Low-order coefficients of the monic polynomial `f`, i.e. `f = x^k + sum c_i x^i`.
    fn monic_low(&self) -> Vec<u64> {
        self.a.iter().map(|&ai| (self.p - ai) % self.p).collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}^{}, f(x) = {}", self.p, self.k, poly_string(self.p, &self.monic_low()))
    }
}

fn poly_string(p: u64, low: &[u64]) -> String {
    let k = low.len();
    let mut s = if k == 1 { "x".to_string() } else { format!("x^{k}") };
    for i in (0..k).rev() {
        let c = low[i] % p;
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if c == 1 && i > 0 {
            s.push_str(&format!(" + {mono}"));
        } else {
            s.push_str(&format!(" + {c}{mono}"));
        }
    }
    s
}

/// Splits a prime power `q` and returns its default field specification.
pub fn field_spec_for_q(q: u64) -> Result<FieldSpec> {
    let factors = crate::arith::prime_factors(q);
    let [p] = factors[..] else {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    };
    let k = q.ilog(p);
    find_field_spec(p, k, None)
}

/// Returns a validated field specification for `q = p^k`.
///
/// With no override the known polynomials `x^2 - 2x - 1` (q = 9) and
/// `x^3 - x + 1` (q = 27) are used; every other `(p, k)` gets the
/// lexicographically smallest `(a_0, ..., a_{k-1})` whose polynomial is
/// primitive.
pub fn find_field_spec(p: u64, k: u32, override_a: Option<&[u64]>) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidField("degree k must be at least 1".into()));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{k} is too large")))?;

    if let Some(a) = override_a {
        if a.len() != k as usize {
            return Err(Error::InvalidField(format!(
                "expected {k} coefficients, got {}",
                a.len()
            )));
        }
        if let Some(bad) = a.iter().find(|&&ai| ai >= p) {
            return Err(Error::InvalidField(format!("coefficient {bad} is not in [0, {p})")));
        }
        let spec = FieldSpec { p, k, q, a: a.to_vec() };
        validate(&spec)?;
        return Ok(spec);
    }

    let builtin: Option<&[u64]> = match (p, k) {
        (3, 2) => Some(&[1, 2]),
        (3, 3) => Some(&[2, 1, 0]),
        _ => None,
    };
    if let Some(a) = builtin {
        return find_field_spec(p, k, Some(a));
    }

    // a_0 is the most significant digit of the lexicographic order.
    for code in 0..q {
        let mut a = vec![0u64; k as usize];
        let mut rest = code;
        for slot in a.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        let spec = FieldSpec { p, k, q, a };
        if validate(&spec).is_ok() {
            return Ok(spec);
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

fn validate(spec: &FieldSpec) -> Result<()> {
    let p = spec.p;
    let f = spec.monic_low();
    let shown = poly_string(p, &f);
    if !is_irreducible(p, &f) {
        return Err(Error::NotIrreducible(shown));
    }
    if !generates_unit_group(p, spec.q, &f) {
        return Err(Error::NotPrimitive(shown));
    }
    // f(1) = 1 + sum c_i; for q = 2 the generator is 1 itself and the check is vacuous.
    let f_at_one = (1 + f.iter().sum::<u64>()) % p;
    if spec.q > 2 && f_at_one == 0 {
        return Err(Error::NotPrimitive(shown));
    }
    Ok(())
}

// Arithmetic in F_p[x] / f with f monic of degree k given by its low coefficients.

fn mul_mod_f(p: u64, f: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let k = f.len();
    let mut prod = vec![0u64; 2 * k];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // x^k = -sum c_i x^i
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &fi) in f.iter().enumerate() {
            prod[d - k + i] = (prod[d - k + i] + (p - fi) % p * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn pow_mod_f(p: u64, f: &[u64], base: &[u64], mut e: u64) -> Vec<u64> {
    let k = f.len();
    let mut acc = vec![0u64; k];
    acc[0] = 1 % p;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_f(p, f, &acc, &b);
        }
        b = mul_mod_f(p, f, &b, &b);
        e >>= 1;
    }
    acc
}

/// The residue class of `x` in `F_p[x]/f`.
fn x_class(p: u64, f: &[u64]) -> Vec<u64> {
    let k = f.len();
    let mut x = vec![0u64; k];
    if k == 1 {
        x[0] = (p - f[0]) % p;
    } else {
        x[1] = 1;
    }
    x
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead_inv = crate::arith::inv_mod_prime(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * lead_inv % p;
            for (i, &bi) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + p - c * bi % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin's test: `f | x^{p^k} - x` and `gcd(x^{p^{k/d}} - x, f) = 1` for primes `d | k`.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let k = f.len() as u64;
    if k == 1 {
        return true;
    }
    let x = x_class(p, f);
    let frob_iter = |times: u64| {
        let mut h = x.clone();
        for _ in 0..times {
            h = pow_mod_f(p, f, &h, p);
        }
        h
    };
    if frob_iter(k) != x {
        return false;
    }
    let mut monic = f.to_vec();
    monic.push(1);
    for d in prime_factors(k) {
        let mut h = frob_iter(k / d);
        h[1] = (h[1] + p - 1) % p;
        if poly_gcd(p, &h, &monic).len() != 1 {
            return false;
        }
    }
    true
}

fn generates_unit_group(p: u64, q: u64, f: &[u64]) -> bool {
    let x = x_class(p, f);
    let k = f.len();
    let mut one = vec![0u64; k];
    one[0] = 1 % p;
    if x.iter().all(|&c| c == 0) {
        return false;
    }
    if pow_mod_f(p, f, &x, q - 1) != one {
        return false;
    }
    prime_factors(q - 1)
        .into_iter()
        .all(|l| pow_mod_f(p, f, &x, (q - 1) / l) != one)
}

/// A `k x k` matrix over `F_p`, stored row-major with least nonnegative residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    p: u64,
    k: usize,
    entries: Vec<u64>,
}

impl CompanionMatrix {
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.k + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    pub fn dim(&self) -> usize {
        self.k
    }
}

/// Ones on the subdiagonal and `(a_0, ..., a_{k-1})` down the last column.
pub fn companion_matrix(spec: &FieldSpec) -> CompanionMatrix {
    let k = spec.k as usize;
    let mut entries = vec![0u64; k * k];
    for i in 1..k {
        entries[i * k + (i - 1)] = 1;
    }
    for (i, &ai) in spec.a.iter().enumerate() {
        entries[i * k + (k - 1)] = ai;
    }
    CompanionMatrix { p: spec.p, k, entries }
}

fn mat_mul(p: u64, k: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; k * k];
    for i in 0..k {
        for l in 0..k {
            let ail = a[i * k + l];
            if ail == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] = (out[i * k + j] + ail * b[l * k + j]) % p;
            }
        }
    }
    out
}

fn identity(k: usize) -> Vec<u64> {
    let mut id = vec![0u64; k * k];
    for i in 0..k {
        id[i * k + i] = 1;
    }
    id
}

/// Rank of a `k x k` matrix over `F_p`.
fn rank_mod_p(p: u64, k: usize, m: &[u64]) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..k).find(|&r| a[r * k + col] != 0) else {
            continue;
        };
        for j in 0..k {
            a.swap(piv * k + j, rank * k + j);
        }
        let inv = crate::arith::inv_mod_prime(a[rank * k + col], p);
        for r in 0..k {
            if r == rank || a[r * k + col] == 0 {
                continue;
            }
            let c = a[r * k + col] * inv % p;
            for j in 0..k {
                a[r * k + j] = (a[r * k + j] + p - c * a[rank * k + j] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// All `q - 1` powers of the companion matrix.
#[derive(Clone, Debug)]
pub struct Orbit {
    spec: FieldSpec,
    powers: Vec<Vec<u64>>,
}

impl Orbit {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    /// `M^j` for `0 <= j < q - 1`, row-major.
    pub fn power(&self, j: usize) -> &[u64] {
        &self.powers[j]
    }

    /// Column `col` of `M^j`.
    pub fn column(&self, j: usize, col: usize) -> Vec<u64> {
        let k = self.spec.k as usize;
        (0..k).map(|r| self.powers[j][r * k + col]).collect()
    }

    /// `M^j u mod p`.
    pub fn apply(&self, j: usize, u: &[u64]) -> Vec<u64> {
        let k = self.spec.k as usize;
        let p = self.spec.p;
        let m = &self.powers[j % self.powers.len()];
        (0..k)
            .map(|r| (0..k).map(|c| m[r * k + c] * u[c]).sum::<u64>() % p)
            .collect()
    }

    /// `(M^j)^T s mod p`; `<s, M^j u> = <(M^j)^T s, u>`.
    pub fn apply_transpose(&self, j: usize, s: &[u64]) -> Vec<u64> {
        let k = self.spec.k as usize;
        let p = self.spec.p;
        let m = &self.powers[j % self.powers.len()];
        (0..k)
            .map(|c| (0..k).map(|r| m[r * k + c] * s[r]).sum::<u64>() % p)
            .collect()
    }

    /// The monomial sequence `M^{j} e_1`, `j = 0, ..., q - 2`.
    pub fn first_columns(&self) -> Vec<Vec<u64>> {
        (0..self.len()).map(|j| self.column(j, 0)).collect()
    }
}

pub fn orbit(spec: &FieldSpec) -> Result<Orbit> {
    orbit_with_cap(spec, DEFAULT_ORBIT_CAP)
}

pub fn orbit_with_cap(spec: &FieldSpec, cap: u64) -> Result<Orbit> {
    if spec.q > cap {
        return Err(Error::CapExceeded { what: "orbit", size: spec.q, cap });
    }
    let k = spec.k as usize;
    let p = spec.p;
    let m = companion_matrix(spec).entries;
    let n = spec.n();
    let mut powers = Vec::with_capacity(n);
    let mut cur = identity(k);
    for _ in 0..n {
        let next = mat_mul(p, k, &cur, &m);
        powers.push(cur);
        cur = next;
    }
    if cur != identity(k) {
        return Err(Error::OrbitDegenerate("M^(q-1) != I".into()));
    }
    let orb = Orbit { spec: spec.clone(), powers };
    check_orbit(&orb)?;
    Ok(orb)
}

fn check_orbit(orb: &Orbit) -> Result<()> {
    let spec = &orb.spec;
    let k = spec.k as usize;
    let p = spec.p;
    let mut seen = vec![false; spec.y_count()];
    for col in orb.first_columns() {
        let idx = exponent_index(p, &col);
        if idx == 0 {
            return Err(Error::OrbitDegenerate("orbit hits the zero vector".into()));
        }
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::OrbitDegenerate("orbit repeats a vector".into()));
        }
    }
    // I + M + ... + M^{t-1} must be invertible for 1 <= t < q - 1.
    let mut partial = vec![0u64; k * k];
    for t in 1..orb.len() {
        for (acc, &e) in partial.iter_mut().zip(orb.power(t - 1)) {
            *acc = (*acc + e) % p;
        }
        if rank_mod_p(p, k, &partial) != k {
            return Err(Error::OrbitDegenerate(format!(
                "partial power sum of length {t} is singular"
            )));
        }
    }
    Ok(())
}

/// Column `var` of `M^{row-1}`: the exponents of the monomial in row `row`
/// (1-based) of the diagonal of `rho(Y_var)`.
pub fn row_monomial_exponents(orb: &Orbit, row: usize, var: usize) -> Vec<u64> {
    assert!(row >= 1 && row <= orb.len(), "row {row} out of range");
    assert!(var < orb.spec.k as usize, "variable {var} out of range");
    orb.column(row - 1, var)
}

/// Index of an exponent vector with the first variable least significant.
pub fn exponent_index(p: u64, exps: &[u64]) -> usize {
    exps.iter().rev().fold(0usize, |acc, &e| acc * p as usize + (e % p) as usize)
}

/// Inverse of [`exponent_index`].
pub fn exponent_vector(p: u64, k: usize, mut index: usize) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for slot in out.iter_mut() {
        *slot = (index % p as usize) as u64;
        index /= p as usize;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_primitive_quadratics_mod2() -> Vec<Vec<u64>> {
        // Enumerate x^2 - a1 x - a0 over F_2 and keep those whose root has order 3,
        // by searching F_4 = F_2[t]/(t^2+t+1) for roots of each polynomial.
        let f4_mul = |a: (u64, u64), b: (u64, u64)| {
            // (a0 + a1 t)(b0 + b1 t), t^2 = t + 1
            let c0 = a.0 * b.0 + a.1 * b.1;
            let c1 = a.0 * b.1 + a.1 * b.0 + a.1 * b.1;
            (c0 % 2, c1 % 2)
        };
        let mut out = Vec::new();
        for a0 in 0..2 {
            for a1 in 0..2 {
                let mut ok = false;
                for r in [(0u64, 1u64), (1, 1)] {
                    let r2 = f4_mul(r, r);
                    let val = ((r2.0 + a1 * r.0 + a0) % 2, (r2.1 + a1 * r.1) % 2);
                    if val == (0, 0) {
                        ok = true;
                    }
                }
                if ok {
                    out.push(vec![a0, a1]);
                }
            }
        }
        out
    }

    #[test]
    fn known_specs() {
        assert_eq!(find_field_spec(3, 2, None).unwrap().coefficients(), &[1, 2]);
        assert_eq!(find_field_spec(3, 3, None).unwrap().coefficients(), &[2, 1, 0]);
        assert_eq!(find_field_spec(2, 1, None).unwrap().coefficients(), &[1]);
        let q4 = find_field_spec(2, 2, None).unwrap();
        assert_eq!(brute_primitive_quadratics_mod2(), vec![vec![1, 1]]);
        assert_eq!(q4.coefficients(), &[1, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(find_field_spec(4, 1, None), Err(Error::NotPrime(4)));
        // x^2 + 1 over F_3 is irreducible, root i has order 4 not 8
        assert!(matches!(
            find_field_spec(3, 2, Some(&[2, 0])),
            Err(Error::NotPrimitive(_))
        ));
        // x^2 - 1 = (x-1)(x+1)
        assert!(matches!(
            find_field_spec(3, 2, Some(&[1, 0])),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(
            find_field_spec(3, 2, Some(&[1])),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            find_field_spec(3, 2, Some(&[1, 3])),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn companion_shapes() {
        let m9 = companion_matrix(&find_field_spec(3, 2, None).unwrap());
        assert_eq!(m9.rows(), vec![vec![0, 1], vec![1, 2]]);
        let m27 = companion_matrix(&find_field_spec(3, 3, None).unwrap());
        assert_eq!(m27.rows(), vec![vec![0, 0, 2], vec![1, 0, 1], vec![0, 1, 0]]);
        let m7 = companion_matrix(&find_field_spec(7, 1, Some(&[3])).unwrap());
        assert_eq!(m7.rows(), vec![vec![3]]);
    }

    #[test]
    fn orbit_q9_and_q4() {
        let orb = orbit(&find_field_spec(3, 2, None).unwrap()).unwrap();
        let expected: Vec<Vec<u64>> = [(1, 0), (0, 1), (1, 2), (2, 2), (2, 0), (0, 2), (2, 1), (1, 1)]
            .iter()
            .map(|&(a, b)| vec![a, b])
            .collect();
        assert_eq!(orb.first_columns(), expected);
        assert_eq!(row_monomial_exponents(&orb, 2, 0), vec![0, 1]);
        assert_eq!(row_monomial_exponents(&orb, 2, 1), vec![1, 2]);
        assert_eq!(row_monomial_exponents(&orb, 1, 1), vec![0, 1]);

        let orb4 = orbit(&find_field_spec(2, 2, None).unwrap()).unwrap();
        assert_eq!(orb4.first_columns(), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn q2_orbit_is_trivial() {
        let orb = orbit(&find_field_spec(2, 1, None).unwrap()).unwrap();
        assert_eq!(orb.len(), 1);
        assert_eq!(orb.power(0), &[1]);
    }

    #[test]
    fn orbit_cap() {
        let spec = find_field_spec(3, 3, None).unwrap();
        assert!(matches!(orbit_with_cap(&spec, 10), Err(Error::CapExceeded { .. })));
    }

    fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    fn poly_add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect()
    }

    /// Cofactor expansion of a matrix with entries in F_p[x].
    fn poly_det(p: u64, m: &[Vec<Vec<u64>>]) -> Vec<u64> {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = vec![0u64];
        for col in 0..n {
            let minor: Vec<Vec<Vec<u64>>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let mut term = poly_mul(p, &m[0][col], &poly_det(p, &minor));
            if col % 2 == 1 {
                term = term.iter().map(|&c| (p - c) % p).collect();
            }
            acc = poly_add(p, &acc, &term);
        }
        acc
    }

    #[test]
    fn characteristic_polynomial_is_f() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (2, 4), (7, 1), (3, 4)] {
            let spec = find_field_spec(p, k, None).unwrap();
            let m = companion_matrix(&spec);
            let kk = k as usize;
            let x_minus_m: Vec<Vec<Vec<u64>>> = (0..kk)
                .map(|i| {
                    (0..kk)
                        .map(|j| {
                            let c = (p - m.get(i, j)) % p;
                            if i == j { vec![c, 1] } else { vec![c] }
                        })
                        .collect()
                })
                .collect();
            let mut charpoly = poly_det(p, &x_minus_m);
            charpoly.resize(kk + 1, 0);
            let mut f = spec.monic_low();
            f.push(1);
            assert_eq!(charpoly, f, "{spec}");
        }
    }

    #[test]
    fn exhaustive_bijection_small_fields() {
        for p in [2u64, 3, 5, 7, 11] {
            for k in 1..=7u32 {
                let Some(q) = p.checked_pow(k).filter(|&q| q <= 128) else { continue };
                let spec = find_field_spec(p, k, None).unwrap();
                let orb = orbit(&spec).unwrap();
                let mut idx: Vec<usize> =
                    orb.first_columns().iter().map(|c| exponent_index(p, c)).collect();
                idx.sort_unstable();
                assert_eq!(idx, (1..q as usize).collect::<Vec<_>>(), "q = {q}");
            }
        }
    }

    #[test]
    fn variable_shift_property() {
        for k in [2u32, 3] {
            let orb = orbit(&find_field_spec(3, k, None).unwrap()).unwrap();
            let n = orb.len();
            for var in 0..k as usize {
                for row in 1..=n {
                    let shifted = (row - 1 + var) % n + 1;
                    assert_eq!(
                        row_monomial_exponents(&orb, row, var),
                        row_monomial_exponents(&orb, shifted, 0)
                    );
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        for idx in 0..27 {
            assert_eq!(exponent_index(3, &exponent_vector(3, 3, idx)), idx);
        }
        assert_eq!(exponent_index(3, &[2, 1]), 5);
    }

    #[test]
    fn serde_roundtrip_validates() {
        let spec = find_field_spec(3, 3, None).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"p":3,"k":3,"a":[2,1,0]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":3,"k":2,"a":[2,0]}"#).is_err());
    }

    #[test]
    fn spec_from_prime_power() {
        let s = field_spec_for_q(27).unwrap();
        assert_eq!((s.p(), s.k()), (3, 3));
        assert_eq!(field_spec_for_q(8).unwrap().k(), 3);
        assert!(field_spec_for_q(12).is_err());
        assert!(field_spec_for_q(1).is_err());
    }
}
