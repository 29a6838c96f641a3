//! `Sp(4) = K·A·N` and parametrized Borel orbits `(g·h)⁻¹·μ`, with the
//! linear subspaces those orbits are confined to.

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::bracket::{symplectic_inverse, Bracket};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{format_rational, int, rat, Rational};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AParams {
    #[serde(serialize_with = "ser_rational")]
    pub t1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub t2: Rational,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct NParams {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub y: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub z: Rational,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn ser_rationals<S: serde::Serializer>(x: &[Rational; 6], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(format_rational))
}

impl AParams {
    pub fn identity() -> Self {
        AParams { t1: int(1), t2: int(1) }
    }
}

impl NParams {
    pub fn identity() -> Self {
        NParams {
            a: int(0),
            x: int(0),
            y: int(0),
            z: int(0),
        }
    }
}

/// `diag(t1, t2, 1/t1, 1/t2)`.
pub fn a_element(p: &AParams) -> Result<Matrix<Rational>> {
    if !p.t1.is_positive() || !p.t2.is_positive() {
        return Err(Error::Iwasawa(format!("t1 = {}, t2 = {} must be positive", p.t1, p.t2)));
    }
    Ok(Matrix::diagonal(vec![p.t1.clone(), p.t2.clone(), p.t1.recip(), p.t2.recip()]))
}

/// `[[(A⁻¹)ᵀ, 0], [B, A]]` with `A = [[1,0],[a,1]]` and
/// `B = [[x, y], [ax+y, ay+z]]`.
pub fn n_element(p: &NParams) -> Matrix<Rational> {
    let NParams { a, x, y, z } = p;
    let o = int(0);
    let l = int(1);
    Matrix::from_rows(vec![
        vec![l.clone(), -a.clone(), o.clone(), o.clone()],
        vec![o.clone(), l.clone(), o.clone(), o.clone()],
        vec![x.clone(), y.clone(), l.clone(), o.clone()],
        vec![a * x + y, a * y + z, a.clone(), l],
    ])
}

/// `[[A, -B], [B, A]]` for `A + iB` unitary within `tol`.
pub fn k_element_f64(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> Result<Matrix<f64>> {
    let n = a.rows();
    let re = a.mul(&a.transpose()).add(&b.mul(&b.transpose())).sub(&Matrix::identity(n));
    let im = b.mul(&a.transpose()).sub(&a.mul(&b.transpose()));
    if re.max_abs() > tol || im.max_abs() > tol {
        return Err(Error::Iwasawa("A + iB is not unitary".into()));
    }
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => -b[(i, j - n)],
        (false, true) => b[(i - n, j)],
        (false, false) => a[(i - n, j - n)],
    }))
}

/// `(g·h)⁻¹·μ` with `g ∈ A`, `h ∈ N`.
pub fn b_orbit_element(mu: &Bracket<Rational>, a: &AParams, n: &NParams) -> Result<Bracket<Rational>> {
    let gh = a_element(a)?.mul(&n_element(n));
    Ok(mu.act_symplectic(&symplectic_inverse(&gh)))
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=5), rng.gen_range(1..=5))
}

pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> (AParams, NParams) {
    (
        AParams {
            t1: positive_rational(rng),
            t2: positive_rational(rng),
        },
        NParams {
            a: small_rational(rng),
            x: small_rational(rng),
            y: small_rational(rng),
            z: small_rational(rng),
        },
    )
}

/// Linear subspace of brackets: each listed entry `(i, j, k)` (1-based) is
/// `Σ c·b_v`, every other entry is zero.
pub struct Pattern {
    pub name: &'static str,
    pub vars: usize,
    pub entries: &'static [((usize, usize, usize), &'static [(usize, i64)])],
}

impl Pattern {
    /// Bracket with coordinates `b` (indexed from 0).
    pub fn build(&self, b: &[Rational]) -> Bracket<Rational> {
        let mut mu = Bracket::zero(4);
        for &((i, j, k), terms) in self.entries {
            let v = terms.iter().fold(Rational::zero(), |acc, &(var, c)| acc + int(c) * &b[var]);
            mu.set(i - 1, j - 1, k - 1, v);
        }
        mu
    }

    /// Coordinates of `xi`, read off the single-variable entries and then
    /// checked by rebuilding.
    pub fn coordinates(&self, xi: &Bracket<Rational>) -> Result<Vec<Rational>> {
        let mut b: Vec<Option<Rational>> = vec![None; self.vars];
        for &((i, j, k), terms) in self.entries {
            if let [(var, c)] = terms {
                if b[*var].is_none() {
                    b[*var] = Some(xi.get(i - 1, j - 1, k - 1) / int(*c));
                }
            }
        }
        let b: Vec<Rational> = b.into_iter().map(Option::unwrap_or_default).collect();
        if &self.build(&b) != xi {
            return Err(Error::NotInSubspace(self.name.to_string()));
        }
        Ok(b)
    }
}

/// Confines the Borel orbit of `r2r2` at every `λ`.
pub const W: Pattern = Pattern {
    name: "W",
    vars: 6,
    entries: &[
        ((1, 2, 3), &[(0, 1)]),
        ((1, 2, 4), &[(1, 1)]),
        ((1, 3, 3), &[(2, 1)]),
        ((1, 3, 4), &[(3, 1)]),
        ((2, 3, 3), &[(3, 1)]),
        ((2, 3, 4), &[(4, 1)]),
        ((2, 4, 4), &[(5, 1)]),
    ],
};

/// Confines the Borel orbit of `r2p`.
pub const W_TILDE: Pattern = Pattern {
    name: "W~",
    vars: 4,
    entries: &[
        ((1, 2, 4), &[(0, 1)]),
        ((1, 3, 3), &[(1, 1)]),
        ((1, 4, 4), &[(1, 1)]),
        ((2, 3, 4), &[(2, 1)]),
        ((2, 4, 3), &[(1, 1)]),
        ((2, 4, 4), &[(3, 1)]),
    ],
};

/// Confines the Borel orbit of `d4_2:w2`.
pub const W_D42W2: Pattern = Pattern {
    name: "W(d4_2:w2)",
    vars: 5,
    entries: &[
        ((1, 2, 1), &[(0, 1)]),
        ((1, 2, 2), &[(1, 1)]),
        ((1, 2, 3), &[(2, 1)]),
        ((1, 2, 4), &[(3, 1)]),
        ((1, 3, 3), &[(1, -2)]),
        ((1, 3, 4), &[(0, 1)]),
        ((1, 4, 4), &[(1, -1)]),
        ((2, 3, 3), &[(0, 2)]),
        ((2, 3, 4), &[(4, 1)]),
        ((2, 4, 4), &[(0, 1)]),
    ],
};

/// `b₁..b₆` of a bracket in `W`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WCoordinates {
    #[serde(serialize_with = "ser_rationals")]
    pub b: [Rational; 6],
}

pub fn w_coordinates(xi: &Bracket<Rational>) -> Result<WCoordinates> {
    let b = W.coordinates(xi)?;
    Ok(WCoordinates {
        b: b.try_into().expect("six coordinates"),
    })
}

/// `b₁b₅ - b₂b₄ - λ b₃b₄b₆²`.
pub fn w_residual(xi: &Bracket<Rational>, lambda: &Rational) -> Result<Rational> {
    let [b1, b2, b3, b4, b5, b6] = w_coordinates(xi)?.b;
    Ok(&b1 * &b5 - &b2 * &b4 - lambda * &b3 * &b4 * &b6 * &b6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bracket, ClassId};
    use crate::group::is_symplectic;

    fn mu5(lambda: Rational) -> Bracket<Rational> {
        bracket(&ClassId::R2r2 { lambda }).unwrap()
    }

    #[test]
    fn group_elements_are_symplectic() {
        let a = a_element(&AParams { t1: rat(2, 3), t2: int(5) }).unwrap();
        assert!(is_symplectic(&a));
        let n = n_element(&NParams {
            a: int(2),
            x: rat(-1, 2),
            y: int(3),
            z: rat(1, 3),
        });
        assert!(is_symplectic(&n));
        assert!(a_element(&AParams { t1: int(0), t2: int(1) }).is_err());
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let rot = Matrix::from_rows(vec![vec![c, 0.0], vec![0.0, 1.0]]);
        let sh = Matrix::from_rows(vec![vec![c, 0.0], vec![0.0, 0.0]]);
        let k = k_element_f64(&rot, &sh, 1e-12).unwrap();
        assert!(crate::group::is_symplectic_within(&k, 1e-12));
        assert!(k_element_f64(&sh, &sh, 1e-12).is_err());
    }

    #[test]
    fn trivial_parameters_fix_the_bracket() {
        let mu = mu5(int(1));
        assert_eq!(b_orbit_element(&mu, &AParams::identity(), &NParams::identity()).unwrap(), mu);
    }

    /// The printed parametrization of `(g·h)⁻¹·μ5(λ)`.
    fn printed_xi(l: &Rational, a: &AParams, n: &NParams) -> Bracket<Rational> {
        let (t1, t2) = (&a.t1, &a.t2);
        let NParams { a, x, y, z: _ } = n;
        let b1 = (a * x + y - t2 * t1 * l) * t1;
        let b2 = -(a * x) * t2 - y * t2 - t1 * a * a * x - t1 * a * y + t1 * t1 * a * t2 * l;
        let b = [b1, b2, t1.clone(), -(t1 * a), a * (t2 + t1 * a), t2.clone()];
        W.build(&b)
    }

    #[test]
    fn matches_printed_parametrization() {
        let a = AParams { t1: rat(3, 2), t2: int(2) };
        let n = NParams {
            a: rat(-1, 3),
            x: int(2),
            y: rat(1, 2),
            z: int(-1),
        };
        for l in [int(0), int(1), rat(7, 3)] {
            let xi = b_orbit_element(&mu5(l.clone()), &a, &n).unwrap();
            assert_eq!(xi, printed_xi(&l, &a, &n));
            assert_eq!(xi.get(1, 3, 3), int(2));
            assert!(w_residual(&xi, &l).unwrap().is_zero());
        }
    }

    #[test]
    fn extraction() {
        let n4 = bracket(&ClassId::N4).unwrap();
        assert_eq!(w_coordinates(&n4), Err(Error::NotInSubspace("W".into())));
        let handmade = W.build(&[int(1), int(0), int(0), int(0), int(1), int(0)]);
        assert_eq!(w_residual(&handmade, &int(1)).unwrap(), int(1));
        let mu6 = bracket(&ClassId::R2p).unwrap();
        assert!(W_TILDE.coordinates(&mu6).is_ok());
        assert!(W_D42W2.coordinates(&bracket(&ClassId::D42W2).unwrap()).is_ok());
    }
}
