//! Elements of `Sp(2n)` and `GL(2n)` as matrices, and seeded samplers for
//! random rational elements.

use num_traits::Zero;
use rand::Rng;

use crate::matrix::Matrix;
use crate::scalar::{rat, FieldScalar, Rational, Scalar};

/// A `2n × 2n` matrix; column `j` is the image of `e_j`.
pub type GroupElement<S> = Matrix<S>;

/// `gᵀ J g - J`.
pub fn symplectic_residual<S: Scalar>(g: &Matrix<S>) -> Matrix<S> {
    let j = Matrix::canonical_j(g.rows());
    g.transpose().mul(&j).mul(g).sub(&j)
}

/// Exact test `gᵀ J g = J`; in the [`ExpPoly`](crate::exppoly::ExpPoly)
/// domain this is a term-wise identity in `t`.
pub fn is_symplectic<S: Scalar>(g: &Matrix<S>) -> bool {
    g.is_square() && g.rows() % 2 == 0 && symplectic_residual(g).is_zero()
}

/// Float test `max |gᵀ J g - J| < tol`.
pub fn is_symplectic_within(g: &Matrix<f64>, tol: f64) -> bool {
    g.is_square() && g.rows() % 2 == 0 && symplectic_residual(g).max_abs() < tol
}

/// Matrix of `v ↦ v + c·ω(v, u)·u` for the canonical `ω`.
pub fn transvection<S: Scalar>(u: &[S], c: &S) -> Matrix<S> {
    let dim = u.len();
    let ju = Matrix::<S>::canonical_j(dim).mul_vec(u);
    Matrix::from_fn(dim, dim, |i, j| {
        let base = if i == j { S::one() } else { S::zero() };
        base + c.clone() * u[i].clone() * ju[j].clone()
    })
}

/// `diag(t_1, …, t_n, 1/t_1, …, 1/t_n)`.
pub fn symplectic_diagonal<S: FieldScalar>(t: &[S]) -> Matrix<S> {
    let mut entries: Vec<S> = t.to_vec();
    entries.extend(t.iter().map(|x| S::one() / x.clone()));
    Matrix::diagonal(entries)
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-3..=3);
        let q: i64 = rng.gen_range(1..=3);
        if !nonzero || p != 0 {
            return rat(p, q);
        }
    }
}

/// Product of 6 to 12 transvections with small random rational data.
/// Exactly symplectic by construction.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Matrix<Rational> {
    let factors = rng.gen_range(6..=12);
    let mut g = Matrix::identity(dim);
    for _ in 0..factors {
        let u: Vec<Rational> = loop {
            let u: Vec<Rational> = (0..dim).map(|_| small_rational(rng, false)).collect();
            if u.iter().any(|x| !x.is_zero()) {
                break u;
            }
        };
        let c = small_rational(rng, true);
        g = g.mul(&transvection(&u, &c));
    }
    g
}

/// Random invertible matrix with small rational entries.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Matrix<Rational> {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| small_rational(rng, false)).collect())
            .collect();
        let g = Matrix::from_rows(rows);
        if !g.determinant().is_zero() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::symplectic_inverse;
    use crate::exppoly::ExpPoly;
    use crate::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn block_scaling_is_symplectic() {
        let g = symplectic_diagonal(&[rat(3, 2), int(-5)]);
        assert!(is_symplectic(&g));
        assert!(!is_symplectic(&Matrix::diagonal(vec![int(2), int(1), int(1), int(1)])));
        assert!(!is_symplectic(&Matrix::<Rational>::identity(3)));
    }

    #[test]
    fn exppoly_curve_is_symplectic_identity() {
        let e = |c: i64, r: i64| ExpPoly::term(int(c), int(r));
        let z = ExpPoly::zero;
        // e1 -> -e^t e1, e3 -> -e^{-t} e3, e2 -> e^{2t} e2 ...
        let g = Matrix::from_rows(vec![
            vec![e(-1, 1), z(), z(), z()],
            vec![z(), e(1, 2), z(), z()],
            vec![z(), z(), e(-1, -1), z()],
            vec![z(), z(), z(), e(1, -2)],
        ]);
        assert!(is_symplectic(&g));
        let bad = Matrix::diagonal(vec![e(1, 1), e(1, 1), e(1, 1), e(1, 1)]);
        assert!(!is_symplectic(&bad));
    }

    #[test]
    fn transvections_and_random_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = transvection(&[int(1), int(2), int(0), int(-1)], &rat(1, 3));
        assert!(is_symplectic(&t));
        for _ in 0..10 {
            let g = random_symplectic(&mut rng, 4);
            assert!(is_symplectic(&g));
            assert_eq!(g.mul(&symplectic_inverse(&g)), Matrix::identity(4));
            assert!(!random_invertible(&mut rng, 4).determinant().is_zero());
        }
    }

    #[test]
    fn float_tolerance() {
        let g = symplectic_diagonal(&[0.1_f64, 3.0]);
        assert!(is_symplectic_within(&g, 1e-12));
        let mut h = g.clone();
        h[(0, 0)] += 1e-6;
        assert!(!is_symplectic_within(&h, 1e-9));
    }
}
