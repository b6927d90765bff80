use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
pub fn det_bareiss(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, piv);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The `m x m` circulant with first row `g`: entry `(i, j) = g[(j - i) mod m]`.
pub fn circulant(g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = g.len();
    (0..m)
        .map(|i| (0..m).map(|j| g[(j + m - i) % m].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Leibniz expansion over all permutations, for cross-checking.
    fn leibniz(a: &[Vec<BigInt>]) -> BigInt {
        fn rec(a: &[Vec<BigInt>], row: usize, used: &mut [bool]) -> BigInt {
            if row == a.len() {
                return BigInt::one();
            }
            let mut acc = BigInt::zero();
            for col in 0..a.len() {
                if used[col] {
                    continue;
                }
                // choosing `col` passes over this many still-free columns
                let before = (0..col).filter(|&c| !used[c]).count();
                used[col] = true;
                let term = &a[row][col] * rec(a, row + 1, used);
                used[col] = false;
                if before % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        rec(a, 0, &mut vec![false; a.len()])
    }

    #[test]
    fn small_cases() {
        assert_eq!(det_bareiss(&[]), BigInt::one());
        assert_eq!(det_bareiss(&m(&[&[7]])), BigInt::from(7));
        assert_eq!(det_bareiss(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_bareiss(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det_bareiss(&m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])),
            BigInt::from(-6)
        );
    }

    #[test]
    fn matches_leibniz() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for n in 1..=6 {
            for _ in 0..20 {
                let a: Vec<Vec<BigInt>> =
                    (0..n).map(|_| (0..n).map(|_| BigInt::from(next())).collect()).collect();
                assert_eq!(det_bareiss(&a), leibniz(&a));
            }
        }
    }

    #[test]
    fn circulant_layout() {
        let c = circulant(&[1, 2, 3].map(BigInt::from));
        assert_eq!(c, m(&[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]));
        // prod over cube roots of 1 + 2x + 3x^2 = 6^... : det = 1 + 8 + 27 - 18 = 18
        assert_eq!(det_bareiss(&c), BigInt::from(18));
    }
}
