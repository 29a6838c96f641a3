//! Exact kernels and signatures over the rationals, and the float
//! eigenvalue path.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::Matrix;
use crate::scalar::Rational;

/// `(n₊, n₋, n₀)` of a symmetric bilinear form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub const fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature {
            positive,
            negative,
            zero,
        }
    }

    pub fn is_psd_nonzero(&self) -> bool {
        self.negative == 0 && self.positive > 0
    }

    pub fn is_nsd_nonzero(&self) -> bool {
        self.positive == 0 && self.negative > 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Row-echelon data from fraction-free elimination: the integer matrix and
/// its pivot columns.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

/// Bareiss elimination; every intermediate entry is an integer minor.
fn bareiss(m: &Matrix<Rational>) -> Echelon {
    let mut a = integer_rows(m);
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    bareiss(m).pivots.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column with that
/// coordinate equal to 1 and the other free coordinates 0.
pub fn kernel(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let Echelon { rows, pivots } = bareiss(m);
    let ncols = m.cols();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in (p + 1)..ncols {
                    if !rows[r][j].is_zero() {
                        acc += Rational::from_integer(rows[r][j].clone()) * &x[j];
                    }
                }
                x[p] = -acc / Rational::from_integer(rows[r][p].clone());
            }
            x
        })
        .collect()
}

/// Exact signature by symmetric congruence elimination.
///
/// Panics if `m` is not symmetric.
pub fn signature(m: &Matrix<Rational>) -> Signature {
    assert!(m.is_symmetric(), "signature needs a symmetric matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap_sym(&mut a, k, p);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[(i, j)].is_zero())
        {
            // Diagonal is zero on the block: e_i += e_j makes a_ii = 2 a_ij.
            add_sym(&mut a, i, j);
            swap_sym(&mut a, k, i);
        } else {
            diag.extend((k..n).map(|_| Rational::zero()));
            break;
        }
        let p = a[(k, k)].clone();
        for i in (k + 1)..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone() / &p;
            for j in k..n {
                let v = a[(i, j)].clone() - &f * &a[(k, j)];
                a[(i, j)] = v;
            }
            for j in k..n {
                let v = a[(j, i)].clone() - &f * &a[(j, k)];
                a[(j, i)] = v;
            }
        }
        diag.push(p);
        k += 1;
    }
    let positive = diag.iter().filter(|x| x.is_positive()).count();
    let negative = diag.iter().filter(|x| x.is_negative()).count();
    Signature::new(positive, negative, n - positive - negative)
}

fn swap_sym(a: &mut Matrix<Rational>, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    let n = a.rows();
    for r in 0..n {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
}

/// Row `i += row j` then column `i += column j`.
fn add_sym(a: &mut Matrix<Rational>, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a[(i, c)].clone() + &a[(j, c)];
        a[(i, c)] = v;
    }
    for r in 0..n {
        let v = a[(r, i)].clone() + &a[(r, j)];
        a[(r, i)] = v;
    }
}

/// Eigenvalues of a symmetric float matrix, ascending.
pub fn eigenvalues_f64(m: &Matrix<f64>) -> Vec<f64> {
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let mut values: Vec<f64> = SymmetricEigen::new(dm).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Signs of eigenvalues, with `|λ| ≤ tol` counted as zero.
pub fn signature_f64(m: &Matrix<f64>, tol: f64) -> Signature {
    let values = eigenvalues_f64(m);
    let positive = values.iter().filter(|&&x| x > tol).count();
    let negative = values.iter().filter(|&&x| x < -tol).count();
    Signature::new(positive, negative, values.len() - positive - negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Rank by plain rational Gauss-Jordan.
    fn naive_rank(m: &Matrix<Rational>) -> usize {
        let mut a = m.clone();
        let mut r = 0;
        for c in 0..a.cols() {
            let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in 0..a.rows() {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone() / a[(r, c)].clone();
                    for j in 0..a.cols() {
                        let v = a[(i, j)].clone() - &f * &a[(r, j)];
                        a[(i, j)] = v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn kernel_of_small_matrices() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(kernel(&Matrix::identity(3)).len(), 0);
        assert_eq!(kernel(&Matrix::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn signatures() {
        let d = Matrix::diagonal(vec![int(-3), int(-1), int(-1), int(1)]);
        assert_eq!(signature(&d), Signature::new(1, 3, 0));
        assert_eq!(signature(&Matrix::zeros(4, 4)), Signature::new(0, 0, 4));
        // Hyperbolic plane: zero diagonal.
        assert_eq!(signature(&m(&[&[0, 1], &[1, 0]])), Signature::new(1, 1, 0));
        let t = rat(1, 2);
        let t2 = &t * &t;
        let t4 = &t2 * &t2;
        let half = rat(1, 2);
        let ric = Matrix::diagonal(vec![
            -&half * &t2 - &half * &t4,
            -&half * &t2,
            &half * &t4,
            &half * &t2 - &half * &t4,
        ]);
        assert_eq!(signature(&ric), Signature::new(2, 2, 0));
        assert_eq!(Signature::new(1, 3, 0).to_string(), "(1,3,0)");
    }

    #[test]
    fn float_signature_matches() {
        let a = m(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -1]]);
        assert_eq!(signature_f64(&a.to_f64(), 1e-9), signature(&a));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
        prop::collection::vec((-3i64..=3, 1i64..=3), rows * cols).prop_map(move |v| {
            Matrix::from_fn(rows, cols, |i, j| {
                let (p, q) = v[i * cols + j];
                rat(p, q)
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_dimension_matches_naive_rank(a in small_matrix(4, 6)) {
            let k = kernel(&a);
            prop_assert_eq!(k.len(), 6 - naive_rank(&a));
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn signature_is_congruence_invariant(a in small_matrix(4, 4), g in small_matrix(4, 4)) {
            prop_assume!(!g.determinant().is_zero());
            let s = a.add(&a.transpose());
            let moved = g.transpose().mul(&s).mul(&g);
            prop_assert_eq!(signature(&moved), signature(&s));
        }
    }
}
