//! Brute-force ground truth: the full group determinant `det(a_{g_i g_j^{-1}})`
//! of GA(1, q), built from an explicit multiplication table, and cyclic
//! (circulant) determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::prime_factors;
use crate::element::GroupRingElement;
use crate::error::{Error, Result};
use crate::field::{exponent_index, exponent_vector, FieldSpec};
use crate::linalg::{circulant, det_bareiss};

pub use crate::detengine::DEFAULT_ORACLE_CAP;

/// Multiplication table of GA(1, q) on the pairs `(l, b)` standing for
/// `x -> r^l x + b`, ordered `l` major, `b` minor; the identity is index 0.
#[derive(Clone, Debug)]
pub struct GroupTable {
    q: u64,
    elements: Vec<(u64, Vec<u64>)>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl GroupTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> (u64, &[u64]) {
        let (l, b) = &self.elements[i];
        (*l, b)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Order of element `i` in the group.
    pub fn element_order(&self, i: usize) -> usize {
        let mut cur = i;
        let mut n = 1;
        while cur != 0 {
            cur = self.mul[cur][i];
            n += 1;
        }
        n
    }
}

/// `F_q` as polynomials mod `f`, coefficient vectors of length `k`.
struct FieldArith {
    p: u64,
    a: Vec<u64>,
}

impl FieldArith {
    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(s, t)| (s + t) % self.p).collect()
    }

    fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().map(|s| (self.p - s) % self.p).collect()
    }

    /// `x * r`, using `r^k = a_0 + a_1 r + ... + a_{k-1} r^{k-1}`.
    fn times_root(&self, x: &[u64]) -> Vec<u64> {
        let k = x.len();
        let top = x[k - 1];
        let mut out = vec![0u64; k];
        for i in 0..k {
            let shifted = if i == 0 { 0 } else { x[i - 1] };
            out[i] = (shifted + top * self.a[i]) % self.p;
        }
        out
    }
}

pub fn build_group_table(spec: &FieldSpec) -> Result<GroupTable> {
    build_group_table_with_cap(spec, DEFAULT_ORACLE_CAP)
}

pub fn build_group_table_with_cap(spec: &FieldSpec, cap: u64) -> Result<GroupTable> {
    let (p, k, q) = (spec.p(), spec.k() as usize, spec.q());
    let order = q * (q - 1);
    if order > cap {
        return Err(Error::CapExceeded { what: "group order", size: order, cap });
    }
    let n = (q - 1) as usize;
    let fa = FieldArith { p, a: spec.coefficients().to_vec() };

    // powers of r and the discrete log table
    let mut pow = Vec::with_capacity(n);
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    let mut log = vec![usize::MAX; q as usize];
    for l in 0..n {
        log[exponent_index(p, &cur)] = l;
        pow.push(cur.clone());
        cur = fa.times_root(&cur);
    }
    if log[1..].contains(&usize::MAX) {
        return Err(Error::NotPrimitive(spec.to_string()));
    }
    let field_mul = |l: usize, b: &[u64]| -> Vec<u64> {
        let bi = exponent_index(p, b);
        if bi == 0 {
            vec![0; k]
        } else {
            pow[(l + log[bi]) % n].clone()
        }
    };

    let qs = q as usize;
    let elements: Vec<(u64, Vec<u64>)> = (0..n * qs)
        .map(|i| ((i / qs) as u64, exponent_vector(p, k, i % qs)))
        .collect();
    let index = |l: usize, b: &[u64]| (l % n) * qs + exponent_index(p, b);
    let mul: Vec<Vec<usize>> = elements
        .iter()
        .map(|(l1, b1)| {
            elements
                .iter()
                .map(|(l2, b2)| {
                    let b = fa.add(&field_mul(*l1 as usize, b2), b1);
                    index(*l1 as usize + *l2 as usize, &b)
                })
                .collect()
        })
        .collect();
    let inv: Vec<usize> = elements
        .iter()
        .map(|(l, b)| {
            let li = (n - *l as usize) % n;
            index(li, &fa.neg(&field_mul(li, b)))
        })
        .collect();
    Ok(GroupTable { q, elements, mul, inv })
}

pub fn brute_force_d(elem: &GroupRingElement) -> Result<BigInt> {
    brute_force_d_with_cap(elem, DEFAULT_ORACLE_CAP)
}

/// `det(a_{g_i g_j^{-1}})`. Coefficient `a_g` for `g = Y^b X^l` is read from
/// index `l * p^k + index(b)`, which is also the table index of `g`.
pub fn brute_force_d_with_cap(elem: &GroupRingElement, cap: u64) -> Result<BigInt> {
    let table = build_group_table_with_cap(elem.spec(), cap)?;
    let size = table.order();
    let c = elem.coeffs();
    let m: Vec<Vec<BigInt>> = (0..size)
        .map(|i| (0..size).map(|j| c[table.mul(i, table.inv(j))].clone()).collect())
        .collect();
    Ok(det_bareiss(&m))
}

/// Determinant of the `m x m` circulant with first row `g` (reduced mod `x^m - 1`).
pub fn cyclic_det(m: usize, g: &[BigInt]) -> BigInt {
    assert!(m >= 1, "modulus must be positive");
    let mut row = vec![BigInt::zero(); m];
    for (i, c) in g.iter().enumerate() {
        row[i % m] += c;
    }
    det_bareiss(&circulant(&row))
}

/// The restriction on `Z_m` determinants: if `r^a || m` and `r | D` then `r^{a+1} | D`.
pub fn divisibility_holds(m: u64, d: &BigInt) -> bool {
    prime_factors(m).into_iter().all(|r| {
        let mut a = 0u32;
        let mut mm = m;
        while mm.is_multiple_of(r) {
            mm /= r;
            a += 1;
        }
        let rb = BigInt::from(r);
        !d.is_multiple_of(&rb) || d.is_multiple_of(&rb.pow(a + 1))
    })
}

pub fn cyclic_divisibility_check(m: usize, g: &[BigInt]) -> bool {
    divisibility_holds(m as u64, &cyclic_det(m, g))
}
