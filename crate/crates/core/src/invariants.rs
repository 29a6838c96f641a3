//! Orbit invariants: derivation algebras, equivariant products and trace
//! forms, and the structural predicates that survive orbit closure.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bracket::{Bracket, TwoForm};
use crate::catalog::{make, ClassId};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, signature, Signature};
use crate::matrix::Matrix;
use crate::multilinear::{flat, sharp, trace_slot, Form, Product, VectorMap};
use crate::scalar::{FieldScalar, Rational, Scalar};

/// Basis of a space of linear maps `D`, with `D[(a, b)]` the `e_a`
/// component of `D e_b`.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivationAlgebra {
    pub basis: Vec<Matrix<Rational>>,
}

impl DerivationAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn unknown(dim: usize, a: usize, b: usize) -> usize {
    a * dim + b
}

/// Rows of `D[e_i,e_j] - [De_i,e_j] - [e_i,De_j] = 0` for `i < j`, one per
/// output component, in the `dim²` unknowns `D_ab`.
pub fn derivation_system(mu: &Bracket<Rational>) -> Matrix<Rational> {
    let n = mu.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for m in 0..n {
                    row[unknown(n, k, m)] += mu.get(i, j, m);
                }
                for a in 0..n {
                    row[unknown(n, a, i)] -= mu.get(a, j, k);
                    row[unknown(n, a, j)] -= mu.get(i, a, k);
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows)
}

/// Rows of `ω(De_i, e_j) + ω(e_i, De_j) = 0` for `i < j`.
pub fn skew_adjoint_system(omega: &TwoForm<Rational>) -> Matrix<Rational> {
    let n = omega.dim();
    let w = omega.matrix();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row = vec![Rational::zero(); n * n];
            for a in 0..n {
                row[unknown(n, a, i)] += w[(a, j)].clone();
                row[unknown(n, a, j)] += w[(i, a)].clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows)
}

fn stack(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let rows = (0..a.rows())
        .map(|i| a.row(i).to_vec())
        .chain((0..b.rows()).map(|i| b.row(i).to_vec()))
        .collect();
    Matrix::from_rows(rows)
}

fn unflatten(n: usize, v: &[Rational]) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |a, b| v[unknown(n, a, b)].clone())
}

/// `D μ(x, y) = μ(Dx, y) + μ(x, Dy)` on all basis pairs.
pub fn is_derivation(mu: &Bracket<Rational>, d: &Matrix<Rational>) -> bool {
    let n = mu.dim();
    (0..n).all(|i| {
        ((i + 1)..n).all(|j| {
            let lhs = d.mul_vec(&mu.value(i, j));
            let r1 = mu.apply(&d.column(i), &crate::bracket::unit(n, j));
            let r2 = mu.apply(&crate::bracket::unit(n, i), &d.column(j));
            lhs.into_iter()
                .zip(r1.into_iter().zip(r2))
                .all(|(l, (a, b))| l == a + b)
        })
    })
}

pub fn derivations(mu: &Bracket<Rational>) -> Result<DerivationAlgebra> {
    if !mu.is_lie() {
        return Err(Error::NotLie);
    }
    let n = mu.dim();
    let basis = kernel(&derivation_system(mu)).iter().map(|v| unflatten(n, v)).collect();
    Ok(DerivationAlgebra { basis })
}

/// Derivations that are also in `𝔰𝔭(ω)`.
pub fn symplectic_derivations(mu: &Bracket<Rational>, omega: &TwoForm<Rational>) -> Result<DerivationAlgebra> {
    if omega.dim() != mu.dim() {
        return Err(Error::DimMismatch(mu.dim(), omega.dim()));
    }
    if !mu.is_lie() {
        return Err(Error::NotLie);
    }
    if !mu.is_closed(omega) {
        return Err(Error::NotClosed);
    }
    let n = mu.dim();
    let system = stack(&derivation_system(mu), &skew_adjoint_system(omega));
    let basis = kernel(&system).iter().map(|v| unflatten(n, v)).collect();
    Ok(DerivationAlgebra { basis })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Symplectic,
    GeneralLinear,
}

/// `dim G - dim 𝔤_μ`, where the stabilizer algebra is `Der_ω` or `Der`.
pub fn orbit_dim(mu: &Bracket<Rational>, omega: &TwoForm<Rational>, group: GroupKind) -> Result<usize> {
    let n = mu.dim();
    match group {
        GroupKind::Symplectic => Ok(n * (n + 1) / 2 - symplectic_derivations(mu, omega)?.dim()),
        GroupKind::GeneralLinear => Ok(n * n - derivations(mu)?.dim()),
    }
}

/// The six-term expression defining `ω(φ_c μ(v1, v2), v3)`, with
/// `τ = tr₂ μ`.
pub fn phi_form<S: FieldScalar>(mu: &Bracket<S>, c: &[S; 6], omega: &TwoForm<S>) -> Result<Form<S>> {
    let map = mu.to_map();
    let base = flat(&map, 3, omega)?;
    let tau = trace_slot(&map, 2)?.to_vector();
    let w = omega.matrix();
    Ok(Form::from_fn(mu.dim(), 3, |v| {
        let (a, b, d) = (v[0], v[1], v[2]);
        let mut acc = S::zero();
        let terms = [
            base.get(&[a, b, d]).clone(),
            base.get(&[b, d, a]).clone(),
            base.get(&[d, a, b]).clone(),
            w[(a, b)].clone() * tau[d].clone(),
            w[(b, d)].clone() * tau[a].clone(),
            w[(d, a)].clone() * tau[b].clone(),
        ];
        for (ci, term) in c.iter().zip(terms) {
            if !ci.is_zero() {
                acc = acc + ci.clone() * term;
            }
        }
        acc
    }))
}

/// `φ_c μ`, recovered from [`phi_form`] by `♯₃`.
pub fn phi<S: FieldScalar>(mu: &Bracket<S>, c: &[S; 6], omega: &TwoForm<S>) -> Result<Product<S>> {
    if !mu.is_closed(omega) {
        return Err(Error::NotClosed);
    }
    sharp(&phi_form(mu, c, omega)?, 3, omega)
}

/// `∇_{v1} v2 = φ_{(0,0,-1,0,0,0)} μ (v1, v2)`.
pub fn chu_connection<S: FieldScalar>(mu: &Bracket<S>, omega: &TwoForm<S>) -> Result<Product<S>> {
    let c = [S::zero(), S::zero(), -S::one(), S::zero(), S::zero(), S::zero()];
    phi(mu, &c, omega)
}

/// Symmetric bilinear form.
#[derive(Clone, PartialEq, Debug)]
pub struct SymForm<S> {
    m: Matrix<S>,
}

impl<S: Scalar> SymForm<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        if let Some((i, j)) = m.first_asymmetry() {
            return Err(Error::Asymmetric(i, j));
        }
        Ok(SymForm { m })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.m
    }

    /// `g·β = β(g⁻¹·, g⁻¹·)`.
    pub fn act(&self, g_inv: &Matrix<S>) -> Self {
        SymForm {
            m: g_inv.transpose().mul(&self.m).mul(g_inv),
        }
    }
}

impl SymForm<Rational> {
    pub fn signature(&self) -> Signature {
        signature(&self.m)
    }
}

/// `(𝒞ϑ)(X, Y) = tr(Z ↦ ϑ(X, ϑ(Y, Z)))`, unsymmetrized.
pub fn cmap_matrix<S: Scalar>(theta: &VectorMap<S>) -> Matrix<S> {
    let n = theta.dim();
    Matrix::from_fn(n, n, |x, y| {
        (0..n).fold(S::zero(), |acc, z| {
            let inner = theta.value(&[y, z]).to_vec();
            let outer = (0..n).fold(S::zero(), |s, m| {
                s + inner[m].clone() * theta.get(&[x, m], z).clone()
            });
            acc + outer
        })
    })
}

/// [`cmap_matrix`], failing if the result is not symmetric.
pub fn cmap<S: Scalar>(theta: &VectorMap<S>) -> Result<SymForm<S>> {
    SymForm::new(cmap_matrix(theta))
}

/// `𝒫(μ)(v1, v2, v3) = μ(v1, μ(v2, v3))`.
pub fn p_map<S: Scalar>(mu: &Bracket<S>) -> VectorMap<S> {
    let n = mu.dim();
    VectorMap::from_fn(n, 3, |a| mu.apply(&crate::bracket::unit(n, a[0]), &mu.value(a[1], a[2])))
}

/// `tr₃ ∘ 𝒫`, the Cartan-Killing form.
pub fn killing<S: Scalar>(mu: &Bracket<S>) -> Result<SymForm<S>> {
    SymForm::new(trace_slot(&p_map(mu), 3)?.to_matrix())
}

/// `tr₁ ∘ 𝒫`, identically zero on Lie brackets.
pub fn tr1_p<S: Scalar>(mu: &Bracket<S>) -> Result<Form<S>> {
    trace_slot(&p_map(mu), 1)
}

/// `tr₃∘𝒫 + c (tr₂μ) ⊗ (tr₂μ)`.
pub fn modified_killing<S: Scalar>(mu: &Bracket<S>, c: &S) -> Result<SymForm<S>> {
    let k = killing(mu)?;
    let tau = trace_slot(&mu.to_map(), 2)?.to_vector();
    let n = mu.dim();
    let extra = Matrix::from_fn(n, n, |i, j| c.clone() * tau[i].clone() * tau[j].clone());
    SymForm::new(k.matrix().add(&extra))
}

/// `tr ad_v = 0` for every `v`.
pub fn unimodular<S: Scalar>(mu: &Bracket<S>) -> bool {
    trace_slot(&mu.to_map(), 2).map(|f| f.is_zero()).unwrap_or(false)
}

fn span_dim(vectors: Vec<Vec<Rational>>) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vectors))
}

/// Independent subset spanning the same space as `vectors`.
fn span_basis(vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v);
        if span_dim(trial.clone()) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// `dim span{μ(e_i, e_j)}`.
pub fn derived_dim(mu: &Bracket<Rational>) -> usize {
    let n = mu.dim();
    let values = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| mu.value(i, j))
        .collect();
    span_dim(values)
}

/// Dimensions of `C¹ = 𝔤 ⊇ C² = [𝔤,𝔤] ⊇ …` until they stabilize.
pub fn lower_central_series(mu: &Bracket<Rational>) -> Vec<usize> {
    let n = mu.dim();
    let mut current: Vec<Vec<Rational>> = (0..n).map(|i| crate::bracket::unit(n, i)).collect();
    let mut dims = vec![n];
    loop {
        let next: Vec<Vec<Rational>> = (0..n)
            .flat_map(|i| current.iter().map(move |v| (i, v)))
            .map(|(i, v)| mu.apply(&crate::bracket::unit(n, i), v))
            .collect();
        let next = span_basis(next);
        let d = next.len();
        if d == *dims.last().expect("nonempty") {
            return dims;
        }
        dims.push(d);
        if d == 0 {
            return dims;
        }
        current = next;
    }
}

pub fn nilpotent(mu: &Bracket<Rational>) -> bool {
    lower_central_series(mu).last() == Some(&0)
}

/// One necessary condition for `source → target`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ObstructionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub source_value: Value,
    pub target_value: Value,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ObstructionReport {
    pub source: String,
    pub target: String,
    pub checks: Vec<ObstructionCheck>,
}

impl ObstructionReport {
    /// Failed checks; each one rules the degeneration out.
    pub fn violations(&self) -> Vec<&ObstructionCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn obstructed(&self) -> bool {
        self.checks.iter().any(|c| !c.passed)
    }
}

/// Runs the battery on two closed Lie brackets.
pub fn obstruction_checks(
    source: &Bracket<Rational>,
    target: &Bracket<Rational>,
    omega: &TwoForm<Rational>,
) -> Result<Vec<ObstructionCheck>> {
    let (sw, tw) = (symplectic_derivations(source, omega)?.dim(), symplectic_derivations(target, omega)?.dim());
    let (sd, td) = (derivations(source)?.dim(), derivations(target)?.dim());
    let (su, tu) = (unimodular(source), unimodular(target));
    let (sr, tr) = (derived_dim(source), derived_dim(target));
    Ok(vec![
        ObstructionCheck {
            name: "dim_der_omega_increases",
            passed: sw < tw,
            source_value: json!(sw),
            target_value: json!(tw),
        },
        ObstructionCheck {
            name: "dim_der_nondecreasing",
            passed: sd <= td,
            source_value: json!(sd),
            target_value: json!(td),
        },
        ObstructionCheck {
            name: "unimodularity_preserved",
            passed: !su || tu,
            source_value: json!(su),
            target_value: json!(tu),
        },
        ObstructionCheck {
            name: "derived_dim_nonincreasing",
            passed: tr <= sr,
            source_value: json!(sr),
            target_value: json!(tr),
        },
    ])
}

pub fn obstruction_report(source: &ClassId, target: &ClassId) -> Result<ObstructionReport> {
    let (s, omega) = make(source)?;
    let (t, _) = make(target)?;
    Ok(ObstructionReport {
        source: source.to_string(),
        target: target.to_string(),
        checks: obstruction_checks(&s, &t, &omega)?,
    })
}
