//! Fraction-free (Bareiss) elimination with full pivoting.
//!
//! Rows are cleared to integers first; every intermediate entry is then a
//! minor of the input, so growth stays polynomial and nothing is rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{common_denominator, from_bigint, Scalar};

/// Upper-triangular result of elimination in permuted column order.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    pub ncols: usize,
    rows: Vec<Vec<BigInt>>,
    /// `col_perm[j]` is the original column sitting at position `j`.
    col_perm: Vec<usize>,
    /// Product of the row scalings and row-swap signs applied before elimination.
    det_factor: Scalar,
}

fn integer_rows(rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<BigInt>>, Scalar) {
    let mut factor = Scalar::one();
    let out = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let den = common_denominator(r.iter());
            factor *= from_bigint(den.clone());
            r.iter()
                .map(|s| s.numer() * (&den / s.denom()))
                .collect()
        })
        .collect();
    (out, factor)
}

pub fn eliminate(rows: &[Vec<Scalar>], ncols: usize) -> Echelon {
    let (mut m, mut factor) = integer_rows(rows, ncols);
    let nrows = m.len();
    let mut perm: Vec<usize> = (0..ncols).collect();
    let mut prev = BigInt::one();
    let mut k = 0;
    while k < nrows.min(ncols) {
        // smallest nonzero entry in the trailing block keeps the growth down
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if !e.is_zero() {
                    let b = e.bits();
                    if best.is_none_or(|(bb, _, _)| b < bb) {
                        best = Some((b, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        if pi != k {
            m.swap(pi, k);
            factor = -factor;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            perm.swap(pj, k);
            factor = -factor;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = pivot_row[k].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..ncols {
                let v = &p * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = p;
        k += 1;
    }
    m.truncate(k);
    Echelon {
        rank: k,
        ncols,
        rows: m,
        col_perm: perm,
        det_factor: factor,
    }
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    eliminate(rows, ncols).rank
}

/// Primitive integer basis of `{v : rows * v = 0}`, one vector per free column.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let e = eliminate(rows, ncols);
    let r = e.rank;
    // scaling the free coordinate by the leading r x r minor makes every
    // back-substituted coordinate an integer (Cramer), so divisions are exact
    let scale = if r == 0 { BigInt::one() } else { e.rows[r - 1][r - 1].clone() };
    let mut basis = Vec::with_capacity(ncols - r);
    for free in r..ncols {
        let mut x = vec![BigInt::zero(); ncols];
        x[free] = scale.clone();
        for i in (0..r).rev() {
            let mut s = &e.rows[i][free] * &x[free];
            for j in i + 1..r {
                if !e.rows[i][j].is_zero() && !x[j].is_zero() {
                    s += &e.rows[i][j] * &x[j];
                }
            }
            let (q, rem) = (-s).div_rem(&e.rows[i][i]);
            debug_assert!(rem.is_zero(), "inexact back-substitution");
            x[i] = q;
        }
        let mut v = vec![Scalar::zero(); ncols];
        for (pos, val) in x.into_iter().enumerate() {
            v[e.col_perm[pos]] = from_bigint(val);
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Scale to coprime integers with a positive leading entry.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    let den = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|s| s.numer() * (&den / s.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|n| !n.is_zero()) {
        Some(n) if n.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|n| from_bigint(n / &g * &sign))
        .collect()
}

pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    let e = eliminate(rows, n);
    if e.rank < n {
        return Scalar::zero();
    }
    from_bigint(e.rows[n - 1][n - 1].clone()) / e.det_factor
}

/// Determinant of an integer matrix.
pub fn int_determinant(rows: Vec<Vec<BigInt>>) -> BigInt {
    let scalars: Vec<Vec<Scalar>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(from_bigint).collect())
        .collect();
    determinant(&scalars).to_integer()
}

pub fn mat_vec(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    rows.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};
    use proptest::prelude::*;

    /// Plain rational row reduction, independent of the Bareiss path.
    fn naive_rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
        let mut m = rows.to_vec();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..ncols {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn naive_det(m: &[Vec<Scalar>]) -> Scalar {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, s)| s.clone()).collect())
                    .collect();
                let s = &m[0][j] * naive_det(&minor);
                if j % 2 == 0 { s } else { -s }
            })
            .sum()
    }

    fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = (Vec<Vec<Scalar>>, usize)> {
        (1..=max_c).prop_flat_map(move |c| {
            (
                prop::collection::vec(
                    prop::collection::vec((-4i64..5, 1i64..4).prop_map(|(n, d)| ratio(n, d)), c),
                    0..=max_r,
                ),
                Just(c),
            )
        })
    }

    #[test]
    fn small_examples() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        assert_eq!(rank(&m, 3), 1);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&m, v).iter().all(|s| s.is_zero()));
        }
        let sq = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(determinant(&sq), int(5));
    }

    proptest! {
        #[test]
        fn rank_nullity((m, c) in matrix(5, 6)) {
            let r = rank(&m, c);
            prop_assert_eq!(r, naive_rank(&m, c));
            let ns = nullspace(&m, c);
            prop_assert_eq!(r + ns.len(), c);
            for v in &ns {
                prop_assert!(mat_vec(&m, v).iter().all(|s| s.is_zero()));
            }
            prop_assert_eq!(rank(&ns, c), ns.len());
        }

        #[test]
        fn determinant_matches_cofactor_expansion(
            n in 1usize..5,
            seed in prop::collection::vec((-5i64..6, 1i64..3), 16),
        ) {
            let m: Vec<Vec<Scalar>> = (0..n)
                .map(|i| (0..n).map(|j| ratio(seed[i * 4 + j].0, seed[i * 4 + j].1)).collect())
                .collect();
            prop_assert_eq!(determinant(&m), naive_det(&m));
        }
    }
}
