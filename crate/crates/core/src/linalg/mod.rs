//! Exact determinants: fraction-free elimination over `Z`, a division-free
//! routine for arbitrary commutative rings, and a multi-modular routine over
//! `Z[zeta_p]`.

mod bareiss;
mod berkowitz;
mod modp;
mod residue;

pub use bareiss::{circulant, det_bareiss};
pub use berkowitz::det_division_free;
pub use modp::{det_mod, residue_primes, solve_mod};
pub use residue::det_cyc;
