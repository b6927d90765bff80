use crate::rings::RingOps;

/// Berkowitz's division-free determinant; valid over any commutative ring,
/// including ones with zero divisors. `one` supplies the ring's identity for
/// the empty matrix.
pub fn det_division_free<T: RingOps>(m: &[Vec<T>], one: &T) -> T {
    let n = m.len();
    if n == 0 {
        return one.one_like();
    }
    let one = one.one_like();
    // characteristic polynomial of the leading 1x1 block, highest degree first
    let mut poly = vec![one.clone(), m[0][0].neg_ref()];
    for r in 1..n {
        let row = &m[r][..r];
        let mut col: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(one.clone());
        toeplitz.push(m[r][r].neg_ref());
        for step in 0..r {
            // -row . A_r^step . col
            let dot = row
                .iter()
                .zip(&col)
                .fold(one.zero_like(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)));
            toeplitz.push(dot.neg_ref());
            if step + 1 < r {
                col = (0..r)
                    .map(|i| {
                        (0..r).fold(one.zero_like(), |acc, j| {
                            if m[i][j].is_zero_elem() || col[j].is_zero_elem() {
                                acc
                            } else {
                                acc.add_ref(&m[i][j].mul_ref(&col[j]))
                            }
                        })
                    })
                    .collect();
            }
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(one.zero_like(), |acc, j| {
                    let t = &toeplitz[i - j];
                    if t.is_zero_elem() || poly[j].is_zero_elem() {
                        acc
                    } else {
                        acc.add_ref(&t.mul_ref(&poly[j]))
                    }
                })
            })
            .collect();
        poly = next;
    }
    let last = poly.pop().expect("nonempty");
    if n.is_multiple_of(2) {
        last
    } else {
        last.neg_ref()
    }
}
