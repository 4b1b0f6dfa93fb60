//! Dense exact linear algebra used as an independent oracle for the
//! combinatorial engines.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Graph, Rational};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RationalMatrix = Vec<Vec<Rational>>;

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact; the pivot is the first nonzero entry in the current column.
pub fn bareiss_determinant(mut m: IntMatrix) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

pub fn int_adjacency(g: &Graph) -> IntMatrix {
    g.adjacency_matrix().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect()
}

pub fn rational_adjacency(g: &Graph) -> RationalMatrix {
    g.adjacency_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::from_integer(x.into())).collect())
        .collect()
}

/// Inverse by Gauss-Jordan elimination over the rationals, `None` when
/// singular.
pub fn rational_inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.len();
    let mut a: RationalMatrix = m.clone();
    let mut inv: RationalMatrix =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let (da, di) = (&factor * &a[col][j], &factor * &inv[col][j]);
                a[r][j] -= da;
                inv[r][j] -= di;
            }
        }
    }
    Some(inv)
}

pub fn multiply(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(
                        Rational::zero(),
                        |acc, k| {
                            if a[i][k].is_zero() {
                                acc
                            } else {
                                acc + &a[i][k] * &b[k][j]
                            }
                        },
                    )
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &RationalMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len() && row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// `A(G)^{-1}` by elimination, `None` when `G` is singular.
pub fn inverse_oracle(g: &Graph) -> Option<RationalMatrix> {
    rational_inverse(&rational_adjacency(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn det(g: &Graph) -> BigInt {
        bareiss_determinant(int_adjacency(g))
    }

    fn int(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&Graph::empty(0)), BigInt::one());
        assert_eq!(det(&families::path(2)), BigInt::from(-1));
        assert_eq!(det(&families::path(4)), BigInt::from(1));
        assert_eq!(bareiss_determinant(int(&[&[2, 3], &[1, 4]])), BigInt::from(5));
        // needs a row swap at the first step
        assert_eq!(bareiss_determinant(int(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]])), BigInt::from(-4));
    }

    #[test]
    fn inverse_of_p4() {
        let inv = inverse_oracle(&families::path(4)).unwrap();
        let expect = [[0, 1, 0, -1], [1, 0, 0, 0], [0, 0, 0, 1], [-1, 0, 1, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(inv[i][j], Rational::from_integer(expect[i][j].into()));
            }
        }
        assert!(is_identity(&multiply(&rational_adjacency(&families::path(4)), &inv)));
        assert!(inverse_oracle(&families::cycle(4)).is_none());
    }
}
