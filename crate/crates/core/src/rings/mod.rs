//! Exact arithmetic in `Z[zeta_p]` and in the abelian group ring
//! `Z[y_0, ..., y_{k-1}] / <y_i^p - 1>`, plus the character transform between
//! coefficient and evaluation views.

mod abelian;
mod cyclotomic;
pub mod notation;

pub use abelian::{
    ab_add, ab_evaluate, ab_from_character_values, ab_mul, ab_sum_over_nontrivial, AbRingElement,
};
pub use cyclotomic::{cyc_add, cyc_is_rational, cyc_monomial, cyc_mul, CycInt};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The commutative-ring operations the division-free determinant needs.
pub trait RingOps: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl RingOps for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl RingOps for CycInt {
    fn zero_like(&self) -> Self {
        CycInt::zero(self.p())
    }
    fn one_like(&self) -> Self {
        CycInt::one(self.p())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl RingOps for AbRingElement {
    fn zero_like(&self) -> Self {
        AbRingElement::zero(self.p(), self.k())
    }
    fn one_like(&self) -> Self {
        AbRingElement::one(self.p(), self.k())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
