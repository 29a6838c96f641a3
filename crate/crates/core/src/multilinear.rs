//! Multilinear maps on `R^m` in a fixed basis, and the operations that move
//! between vector-valued maps and scalar forms.
//!
//! Slots are numbered from 1, matching the way arguments are written
//! `θ(v_1, …, v_k)`. Basis indices are 0-based internally.

use crate::bracket::TwoForm;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldScalar, Scalar};

/// A `k`-linear map `(R^m)^k → R^m`.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorMap<S> {
    dim: usize,
    arity: usize,
    /// `data[offset(args) * dim + component]`
    data: Vec<S>,
}

/// A `k`-linear form `(R^m)^k → R`.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<S> {
    dim: usize,
    arity: usize,
    data: Vec<S>,
}

/// Bilinear vector-valued map, not necessarily antisymmetric.
pub type Product<S> = VectorMap<S>;

fn offset(dim: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * dim + a)
}

/// All multi-indices of length `arity` in lexicographic order.
pub(crate) fn multi_indices(dim: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(arity as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; arity];
        for slot in (0..arity).rev() {
            idx[slot] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

fn check_slot(slot: usize, arity: usize) -> Result<()> {
    if slot == 0 || slot > arity {
        return Err(Error::SlotOutOfRange { slot, arity });
    }
    Ok(())
}

fn insert_at(args: &[usize], slot: usize, value: usize) -> Vec<usize> {
    let mut full = Vec::with_capacity(args.len() + 1);
    full.extend_from_slice(&args[..slot - 1]);
    full.push(value);
    full.extend_from_slice(&args[slot - 1..]);
    full
}

impl<S: Scalar> VectorMap<S> {
    pub fn zero(dim: usize, arity: usize) -> Self {
        VectorMap {
            dim,
            arity,
            data: vec![S::zero(); dim.pow(arity as u32) * dim],
        }
    }

    pub fn from_fn(dim: usize, arity: usize, f: impl Fn(&[usize]) -> Vec<S>) -> Self {
        let mut out = Self::zero(dim, arity);
        for args in multi_indices(dim, arity) {
            let value = f(&args);
            assert_eq!(value.len(), dim);
            out.set_value(&args, value);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Value on basis vectors `e_{args[0]}, …`.
    pub fn value(&self, args: &[usize]) -> &[S] {
        debug_assert_eq!(args.len(), self.arity);
        let base = offset(self.dim, args) * self.dim;
        &self.data[base..base + self.dim]
    }

    pub fn get(&self, args: &[usize], component: usize) -> &S {
        &self.value(args)[component]
    }

    pub fn set(&mut self, args: &[usize], component: usize, x: S) {
        let base = offset(self.dim, args) * self.dim;
        self.data[base + component] = x;
    }

    pub fn set_value(&mut self, args: &[usize], value: Vec<S>) {
        let base = offset(self.dim, args) * self.dim;
        for (c, x) in value.into_iter().enumerate() {
            self.data[base + c] = x;
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, vectors: &[&[S]]) -> Vec<S> {
        assert_eq!(vectors.len(), self.arity);
        let mut out = vec![S::zero(); self.dim];
        for args in multi_indices(self.dim, self.arity) {
            let mut coeff = S::one();
            for (slot, &a) in args.iter().enumerate() {
                coeff = coeff * vectors[slot][a].clone();
            }
            if coeff.is_zero() {
                continue;
            }
            for (c, x) in self.value(&args).iter().enumerate() {
                out[c] = out[c].clone() + coeff.clone() * x.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VectorMap<T> {
        VectorMap {
            dim: self.dim,
            arity: self.arity,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Change of basis `g·θ = g θ(g⁻¹·, …, g⁻¹·)`.
    pub fn act(&self, g: &Matrix<S>, g_inv: &Matrix<S>) -> Self {
        let columns: Vec<Vec<S>> = (0..self.dim).map(|j| g_inv.column(j)).collect();
        VectorMap::from_fn(self.dim, self.arity, |args| {
            let vecs: Vec<&[S]> = args.iter().map(|&a| columns[a].as_slice()).collect();
            g.mul_vec(&self.eval(&vecs))
        })
    }
}

impl<S: Scalar> Form<S> {
    pub fn zero(dim: usize, arity: usize) -> Self {
        Form {
            dim,
            arity,
            data: vec![S::zero(); dim.pow(arity as u32)],
        }
    }

    pub fn from_fn(dim: usize, arity: usize, f: impl Fn(&[usize]) -> S) -> Self {
        let data = multi_indices(dim, arity).map(|args| f(&args)).collect();
        Form { dim, arity, data }
    }

    pub fn from_matrix(m: &Matrix<S>) -> Self {
        Form::from_fn(m.rows(), 2, |a| m[(a[0], a[1])].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, args: &[usize]) -> &S {
        &self.data[offset(self.dim, args)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Bilinear forms only.
    pub fn to_matrix(&self) -> Matrix<S> {
        assert_eq!(self.arity, 2, "only bilinear forms have a matrix");
        Matrix::from_fn(self.dim, self.dim, |i, j| self.get(&[i, j]).clone())
    }

    /// Linear forms only.
    pub fn to_vector(&self) -> Vec<S> {
        assert_eq!(self.arity, 1, "only linear forms are vectors");
        self.data.clone()
    }

    /// Change of basis `g·α = α(g⁻¹·, …)`.
    pub fn act(&self, g_inv: &Matrix<S>) -> Self {
        let columns: Vec<Vec<S>> = (0..self.dim).map(|j| g_inv.column(j)).collect();
        Form::from_fn(self.dim, self.arity, |args| {
            multi_indices(self.dim, self.arity).fold(S::zero(), |acc, inner| {
                let mut coeff = S::one();
                for (slot, &a) in inner.iter().enumerate() {
                    coeff = coeff * columns[args[slot]][a].clone();
                }
                if coeff.is_zero() {
                    acc
                } else {
                    acc + coeff * self.get(&inner).clone()
                }
            })
        })
    }
}

/// `θ^♭_i(v_1, …, v_{k+1}) = ω(θ(v_1, …, v̂_i, …, v_{k+1}), v_i)`.
pub fn flat<S: Scalar>(map: &VectorMap<S>, slot: usize, omega: &TwoForm<S>) -> Result<Form<S>> {
    if map.dim() != omega.dim() {
        return Err(Error::DimMismatch(map.dim(), omega.dim()));
    }
    check_slot(slot, map.arity() + 1)?;
    let dim = map.dim();
    Ok(Form::from_fn(dim, map.arity() + 1, |args| {
        let mut rest = args.to_vec();
        let free = rest.remove(slot - 1);
        let value = map.value(&rest);
        (0..dim).fold(S::zero(), |acc, a| {
            acc + value[a].clone() * omega.matrix()[(a, free)].clone()
        })
    }))
}

/// Inverse of [`flat`]: the unique `θ^♯_i` with
/// `θ(v_1, …, v_{k+1}) = ω(θ^♯_i(v_1, …, v̂_i, …), v_i)`.
pub fn sharp<S: FieldScalar>(form: &Form<S>, slot: usize, omega: &TwoForm<S>) -> Result<VectorMap<S>> {
    if form.dim() != omega.dim() {
        return Err(Error::DimMismatch(form.dim(), omega.dim()));
    }
    if form.arity() == 0 {
        return Err(Error::SlotOutOfRange { slot, arity: 0 });
    }
    check_slot(slot, form.arity())?;
    // ω(x, e_m) = (Ωᵀ x)_m, so x = (Ωᵀ)⁻¹ b.
    let solve = omega
        .matrix()
        .transpose()
        .inverse()
        .map_err(|_| Error::DegenerateForm)?;
    let dim = form.dim();
    Ok(VectorMap::from_fn(dim, form.arity() - 1, |rest| {
        let b: Vec<S> = (0..dim)
            .map(|m| form.get(&insert_at(rest, slot, m)).clone())
            .collect();
        solve.mul_vec(&b)
    }))
}

/// `(tr_i θ)(v_1, …, v_k) = tr(x ↦ θ(v_1, …, x, …, v_k))` with `x` in slot `i`.
pub fn trace_slot<S: Scalar>(map: &VectorMap<S>, slot: usize) -> Result<Form<S>> {
    check_slot(slot, map.arity())?;
    let dim = map.dim();
    Ok(Form::from_fn(dim, map.arity() - 1, |rest| {
        (0..dim).fold(S::zero(), |acc, m| {
            acc + map.get(&insert_at(rest, slot, m), m).clone()
        })
    }))
}
