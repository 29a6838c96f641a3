//! Skew-symmetric brackets on `R^{2n}` and the bilinear forms they are
//! paired with.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::matrix::Matrix;
use crate::multilinear::VectorMap;
use num_traits::Zero;

use crate::scalar::{format_rational, parse_rational, FieldScalar, Rational, Scalar};

/// Structure constants `c_{ij}^k` for `i < j`; `[e_j, e_i] = -[e_i, e_j]`
/// is implied and every unstored constant is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Bracket<S> {
    dim: usize,
    coeffs: Vec<S>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 || dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    Ok(())
}

/// The three basis triples `a < b < c` of `R^dim`.
pub fn basis_triples(dim: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            for c in (b + 1)..dim {
                out.push([a, b, c]);
            }
        }
    }
    out
}

const PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

impl<S: Scalar> Bracket<S> {
    /// Panics on odd or zero dimension; use [`Bracket::from_entries`] for
    /// validated construction.
    pub fn zero(dim: usize) -> Self {
        check_dim(dim).expect("bracket dimension");
        Bracket {
            dim,
            coeffs: vec![S::zero(); dim * (dim - 1) / 2 * dim],
        }
    }

    /// Builds a bracket from 1-based entries `(i, j, k, c)` meaning
    /// `[e_i, e_j]` has `c` as its `e_k` component. Entries with `i > j`
    /// are stored negated; repeated entries accumulate.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, S)]) -> Result<Self> {
        check_dim(dim)?;
        let mut out = Self::zero(dim);
        for (i, j, k, c) in entries {
            for &index in [i, j, k] {
                if index == 0 || index > dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if i == j {
                continue;
            }
            let current = out.get(i - 1, j - 1, k - 1);
            out.set(i - 1, j - 1, k - 1, current + c.clone());
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_k` component of `[e_i, e_j]` (0-based).
    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(self.dim, i, j) * self.dim + k].clone(),
            std::cmp::Ordering::Greater => -self.coeffs[pair_index(self.dim, j, i) * self.dim + k].clone(),
            std::cmp::Ordering::Equal => S::zero(),
        }
    }

    /// Sets the `e_k` component of `[e_i, e_j]` (0-based, `i != j`).
    pub fn set(&mut self, i: usize, j: usize, k: usize, x: S) {
        assert_ne!(i, j, "diagonal of a skew bracket is fixed at zero");
        if i < j {
            self.coeffs[pair_index(self.dim, i, j) * self.dim + k] = x;
        } else {
            self.coeffs[pair_index(self.dim, j, i) * self.dim + k] = -x;
        }
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn value(&self, i: usize, j: usize) -> Vec<S> {
        (0..self.dim).map(|k| self.get(i, j, k)).collect()
    }

    pub fn apply(&self, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let coeff = u[i].clone() * v[j].clone();
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = slot.clone() + coeff.clone() * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Stored constants `(i, j, k, c)` with `i < j`, 0-based, in order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        let dim = self.dim;
        (0..dim).flat_map(move |i| {
            ((i + 1)..dim).flat_map(move |j| {
                (0..dim).map(move |k| (i, j, k, &self.coeffs[pair_index(dim, i, j) * dim + k]))
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Bracket<T> {
        Bracket {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_map(&self) -> VectorMap<S> {
        VectorMap::from_fn(self.dim, 2, |a| self.value(a[0], a[1]))
    }

    /// `None` unless the product is skew-symmetric on basis pairs.
    pub fn from_map(map: &VectorMap<S>) -> Option<Self> {
        if map.arity() != 2 || check_dim(map.dim()).is_err() {
            return None;
        }
        let dim = map.dim();
        let mut out = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let x = map.get(&[i, j], k).clone();
                    let y = map.get(&[j, i], k).clone();
                    if x.clone() + y != S::zero() {
                        return None;
                    }
                    if i < j {
                        out.set(i, j, k, x);
                    }
                }
            }
        }
        Some(out)
    }

    /// `Jac(μ)(e_a, e_b, e_c)` for every `a < b < c`, as the signed sum of
    /// `μ(μ(v_σ1, v_σ2), v_σ3)` over the symmetric group.
    pub fn jacobiator(&self) -> Vec<([usize; 3], Vec<S>)> {
        basis_triples(self.dim)
            .into_iter()
            .map(|triple| {
                let mut acc = vec![S::zero(); self.dim];
                for (perm, sign) in PERMUTATIONS {
                    let [x, y, z] = perm.map(|p| triple[p]);
                    let inner = self.value(x, y);
                    let e_z = unit::<S>(self.dim, z);
                    let term = self.apply(&inner, &e_z);
                    for (a, t) in acc.iter_mut().zip(term) {
                        *a = if sign > 0 { a.clone() + t } else { a.clone() - t };
                    }
                }
                (triple, acc)
            })
            .collect()
    }

    pub fn is_lie(&self) -> bool {
        self.jacobiator()
            .iter()
            .all(|(_, v)| v.iter().all(|x| x.is_zero()))
    }

    /// `d_μ ω(e_a, e_b, e_c)` for every `a < b < c`.
    pub fn d_omega(&self, omega: &TwoForm<S>) -> Result<Vec<([usize; 3], S)>> {
        if omega.dim() != self.dim {
            return Err(Error::DimMismatch(self.dim, omega.dim()));
        }
        Ok(basis_triples(self.dim)
            .into_iter()
            .map(|triple| {
                let value = PERMUTATIONS.iter().fold(S::zero(), |acc, (perm, sign)| {
                    let [x, y, z] = perm.map(|p| triple[p]);
                    let term = omega.eval(&self.value(x, y), &unit(self.dim, z));
                    if *sign > 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                });
                (triple, value)
            })
            .collect())
    }

    pub fn is_closed(&self, omega: &TwoForm<S>) -> bool {
        self.d_omega(omega)
            .map(|v| v.iter().all(|(_, x)| x.is_zero()))
            .unwrap_or(false)
    }

    /// `g·μ = g μ(g⁻¹·, g⁻¹·)` with the inverse supplied by the caller.
    pub fn act_with_inverse(&self, g: &Matrix<S>, g_inv: &Matrix<S>) -> Self {
        let dim = self.dim;
        let columns: Vec<Vec<S>> = (0..dim).map(|j| g_inv.column(j)).collect();
        let mut out = Self::zero(dim);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let value = g.mul_vec(&self.apply(&columns[i], &columns[j]));
                for (k, x) in value.into_iter().enumerate() {
                    out.set(i, j, k, x);
                }
            }
        }
        out
    }

    /// Action of a symplectic `g`, inverting it as `-J gᵀ J`. The caller
    /// is responsible for `g` actually being symplectic.
    pub fn act_symplectic(&self, g: &Matrix<S>) -> Self {
        self.act_with_inverse(g, &symplectic_inverse(g))
    }
}

impl<S: FieldScalar> Bracket<S> {
    /// Action of an arbitrary invertible `g`.
    pub fn act(&self, g: &Matrix<S>) -> Result<Self> {
        if g.rows() != self.dim || !g.is_square() {
            return Err(Error::DimMismatch(self.dim, g.rows()));
        }
        let inv = g.inverse()?;
        Ok(self.act_with_inverse(g, &inv))
    }

    /// Largest absolute structure constant.
    pub fn max_abs(&self) -> S {
        self.coeffs
            .iter()
            .map(FieldScalar::abs_value)
            .fold(S::zero(), |acc, x| if x.to_f64() > acc.to_f64() { x } else { acc })
    }
}

impl Bracket<Rational> {
    pub fn to_f64(&self) -> Bracket<f64> {
        self.map(FieldScalar::to_f64)
    }
}

pub(crate) fn unit<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

/// `-J gᵀ J` for the canonical `J`; equals `g⁻¹` iff `g` is symplectic.
pub fn symplectic_inverse<S: Scalar>(g: &Matrix<S>) -> Matrix<S> {
    let j = Matrix::<S>::canonical_j(g.rows());
    j.mul(&g.transpose()).mul(&j).neg()
}

/// `max_{i<j,k} |a_{ij}^k - b_{ij}^k|`.
pub fn bracket_distance<S: FieldScalar>(a: &Bracket<S>, b: &Bracket<S>) -> Result<S> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch(a.dim, b.dim));
    }
    Ok(a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| (x.clone() - y.clone()).abs_value())
        .fold(S::zero(), |acc, d| if d.to_f64() > acc.to_f64() { d } else { acc }))
}

/// Positions `(i, j, k)` (1-based, `i < j`) where two brackets differ.
pub fn differing_entries<S: Scalar>(a: &Bracket<S>, b: &Bracket<S>) -> Vec<(usize, usize, usize)> {
    a.entries()
        .zip(b.entries())
        .filter(|((_, _, _, x), (_, _, _, y))| x != y)
        .map(|((i, j, k, _), _)| (i + 1, j + 1, k + 1))
        .collect()
}

/// Antisymmetric bilinear form.
#[derive(Clone, PartialEq, Debug)]
pub struct TwoForm<S> {
    m: Matrix<S>,
}

impl<S: Scalar> TwoForm<S> {
    /// `ω_cn = Σ e_i* ∧ e_{n+i}*`.
    pub fn canonical(dim: usize) -> Self {
        TwoForm {
            m: Matrix::canonical_j(dim),
        }
    }

    pub fn from_matrix(m: Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimMismatch(m.rows(), m.cols()));
        }
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if m[(i, j)].clone() + m[(j, i)].clone() != S::zero() {
                    return Err(Error::Asymmetric(i, j));
                }
            }
        }
        Ok(TwoForm { m })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn eval(&self, u: &[S], v: &[S]) -> S {
        let mv = self.m.mul_vec(v);
        u.iter()
            .zip(mv)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn is_canonical(&self) -> bool {
        self.m == Matrix::canonical_j(self.dim())
    }
}

impl<S: FieldScalar> TwoForm<S> {
    pub fn is_nondegenerate(&self) -> bool {
        !self.m.determinant().is_zero()
    }
}

/// Symmetric bilinear form used as a metric.
#[derive(Clone, PartialEq, Debug)]
pub struct InnerProduct<S> {
    m: Matrix<S>,
}

impl<S: Scalar> InnerProduct<S> {
    /// The standard dot product.
    pub fn canonical(dim: usize) -> Self {
        InnerProduct {
            m: Matrix::identity(dim),
        }
    }

    pub fn from_matrix(m: Matrix<S>) -> Result<Self> {
        if let Some((i, j)) = m.first_asymmetry() {
            return Err(Error::Asymmetric(i, j));
        }
        Ok(InnerProduct { m })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn eval(&self, u: &[S], v: &[S]) -> S {
        let mv = self.m.mul_vec(v);
        u.iter()
            .zip(mv)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }
}

/// On-disk bracket: `{"dim": 4, "scalars": "rational",
/// "bracket": {"1,2": {"3": "1"}}, "omega": "canonical"}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BracketFile {
    pub dim: usize,
    pub scalars: String,
    pub bracket: BTreeMap<String, BTreeMap<String, String>>,
    pub omega: String,
}

impl BracketFile {
    pub fn from_bracket(mu: &Bracket<Rational>) -> Self {
        let mut bracket: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (i, j, k, c) in mu.entries() {
            if c.is_zero() {
                continue;
            }
            bracket
                .entry(format!("{},{}", i + 1, j + 1))
                .or_default()
                .insert((k + 1).to_string(), format_rational(c));
        }
        BracketFile {
            dim: mu.dim(),
            scalars: "rational".into(),
            bracket,
            omega: "canonical".into(),
        }
    }

    pub fn to_bracket(&self) -> Result<(Bracket<Rational>, TwoForm<Rational>)> {
        let bad = |msg: String| Error::Parse(ParseError::BracketFile(msg));
        if self.scalars != "rational" {
            return Err(bad(format!("unsupported scalars `{}`", self.scalars)));
        }
        if self.omega != "canonical" {
            return Err(bad(format!("unsupported omega `{}`", self.omega)));
        }
        check_dim(self.dim)?;
        let mut entries = Vec::new();
        for (pair, components) in &self.bracket {
            let (i, j) = pair
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| bad(format!("pair key `{pair}` is not `i,j`")))?;
            if i >= j {
                return Err(bad(format!("pair key `{pair}` must have i < j")));
            }
            for (k, c) in components {
                let k: usize = k
                    .parse()
                    .map_err(|_| bad(format!("component key `{k}` is not an index")))?;
                entries.push((i, j, k, parse_rational(c)?));
            }
        }
        let mu = Bracket::from_entries(self.dim, &entries)?;
        Ok((mu, TwoForm::canonical(self.dim)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bracket file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(ParseError::BracketFile(e.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn mu18() -> Bracket<Rational> {
        Bracket::from_entries(
            4,
            &[(1, 2, 2, int(-1)), (1, 3, 3, int(2)), (1, 4, 4, int(1)), (2, 3, 4, int(1))],
        )
        .unwrap()
    }

    #[test]
    fn antisymmetry_by_construction() {
        let mu = mu18();
        assert_eq!(mu.get(1, 0, 1), int(1));
        assert_eq!(mu.get(2, 2, 0), int(0));
        let swapped = Bracket::from_entries(4, &[(2, 1, 2, int(1))]).unwrap();
        assert_eq!(swapped.get(0, 1, 1), int(-1));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(Bracket::<Rational>::from_entries(3, &[]), Err(Error::OddDimension(3)));
        assert_eq!(
            Bracket::from_entries(4, &[(1, 5, 1, int(1))]),
            Err(Error::IndexOutOfRange { index: 5, dim: 4 })
        );
    }

    #[test]
    fn jacobi_detects_a_flipped_sign() {
        assert!(Bracket::<Rational>::zero(4).is_lie());
        assert!(mu18().is_lie());
        let mut broken = mu18();
        broken.set(0, 1, 1, int(1));
        let jac = broken.jacobiator();
        // cyclic sum on (e1, e2, e3) is 2·e4; the S3 sum doubles it.
        let (_, v) = jac.iter().find(|(t, _)| *t == [0, 1, 2]).unwrap();
        assert_eq!(v, &vec![int(0), int(0), int(0), int(4)]);
        assert!(!broken.is_lie());
    }

    #[test]
    fn closedness() {
        let omega = TwoForm::canonical(4);
        let mu7 = Bracket::from_entries(4, &[(1, 2, 4, int(1)), (1, 4, 3, int(1))]).unwrap();
        assert!(mu7.is_closed(&omega));
        assert!(Bracket::<Rational>::zero(4).is_closed(&omega));
        let single = Bracket::from_entries(4, &[(1, 2, 1, int(1))]).unwrap();
        let d = single.d_omega(&omega).unwrap();
        // 2·ω([e1,e2], e3) = 2·ω(e1, e3) = 2
        assert_eq!(d[0], ([0, 1, 2], int(2)));
        assert!(!single.is_closed(&omega));
    }

    #[test]
    fn identity_acts_trivially_and_diagonal_scales() {
        let mu = mu18();
        assert_eq!(mu.act_symplectic(&Matrix::identity(4)), mu);
        let g = Matrix::diagonal(vec![int(1), int(2), int(1), rat(1, 2)]);
        let moved = mu.act_symplectic(&g);
        // [e2,e3] = e4 picks up 1/4.
        assert_eq!(moved.get(1, 2, 3), rat(1, 4));
        assert_eq!(moved.get(0, 1, 1), int(-1));
    }

    #[test]
    fn distances() {
        let zero = Bracket::<Rational>::zero(4);
        let mu1 = Bracket::from_entries(4, &[(1, 2, 3, int(1))]).unwrap();
        assert_eq!(bracket_distance(&mu1, &mu1).unwrap(), int(0));
        assert_eq!(bracket_distance(&zero, &mu1).unwrap(), int(1));
        assert_eq!(differing_entries(&zero, &mu1), vec![(1, 2, 3)]);
        assert!(bracket_distance(&zero, &Bracket::zero(6)).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let text = r#"{"dim":4,"scalars":"rational","bracket":{"1,2":{"2":"-1"},"1,3":{"3":"2"},"1,4":{"4":"1"},"2,3":{"4":"7/3"}},"omega":"canonical"}"#;
        let file = BracketFile::from_json(text).unwrap();
        let (mu, omega) = file.to_bracket().unwrap();
        assert!(omega.is_canonical());
        assert_eq!(mu.get(1, 2, 3), rat(7, 3));
        assert_eq!(BracketFile::from_bracket(&mu).to_json(), text);
    }

    #[test]
    fn json_rejects_malformed_input() {
        let reversed = r#"{"dim":4,"scalars":"rational","bracket":{"2,1":{"3":"1"}},"omega":"canonical"}"#;
        assert!(BracketFile::from_json(reversed).unwrap().to_bracket().is_err());
        let float = r#"{"dim":4,"scalars":"float","bracket":{},"omega":"canonical"}"#;
        assert!(BracketFile::from_json(float).unwrap().to_bracket().is_err());
        assert!(BracketFile::from_json("{").is_err());
    }
}
