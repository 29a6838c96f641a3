//! Curvature of `(ℝⁿ, μ, ⟨,⟩_cn)`: Levi-Civita product, Riemann and Ricci
//! tensors, the nilpotent reduced formula, and the degenerate-Ricci search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bracket::Bracket;
use crate::error::{Error, Result};
use crate::invariants::{nilpotent, SymForm};
use crate::linalg::{signature, signature_f64, Signature};
use crate::matrix::Matrix;
use crate::multilinear::{trace_slot, VectorMap};
use crate::scalar::{rational_to_f64, FieldScalar, Rational};

/// Input slot of `𝓡` contracted against the output to form `Ric`.
///
/// Slot 1 agrees with the nilpotent reduced formula on every nilpotent
/// catalog law and gives `diag(-3,-1,-1,1)` on `r4_m1m1`; slot 2 gives the
/// negatives of both.
pub const RICCI_TRACE_SLOT: usize = 1;

/// `2⟨μ^LC(a,b), c⟩ = ⟨μ(a,b),c⟩ - ⟨μ(b,c),a⟩ + ⟨μ(c,a),b⟩`.
pub fn levi_civita<S: FieldScalar>(mu: &Bracket<S>) -> VectorMap<S> {
    let two = S::from_i64(2);
    VectorMap::from_fn(mu.dim(), 2, |ab| {
        let (a, b) = (ab[0], ab[1]);
        (0..mu.dim())
            .map(|c| (mu.get(a, b, c) - mu.get(b, c, a) + mu.get(c, a, b)) / two.clone())
            .collect()
    })
}

/// `𝓡(v1,v2,v3) = ∇_{v1}∇_{v2}v3 - ∇_{v2}∇_{v1}v3 - ∇_{μ(v1,v2)}v3`.
pub fn riemann<S: FieldScalar>(mu: &Bracket<S>) -> VectorMap<S> {
    let n = mu.dim();
    let lc = levi_civita(mu);
    // gamma[a][b][c] = ⟨∇_{e_a} e_b, e_c⟩
    let gamma: Vec<Vec<Vec<S>>> = (0..n).map(|a| (0..n).map(|b| lc.value(&[a, b]).to_vec()).collect()).collect();
    VectorMap::from_fn(n, 3, |abc| {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        (0..n)
            .map(|d| {
                let mut acc = S::from_i64(0);
                for e in 0..n {
                    acc = acc + gamma[b][c][e].clone() * gamma[a][e][d].clone()
                        - gamma[a][c][e].clone() * gamma[b][e][d].clone()
                        - mu.get(a, b, e) * gamma[e][c][d].clone();
                }
                acc
            })
            .collect()
    })
}

#[derive(Clone, PartialEq, Debug)]
pub struct CurvatureTensors<S> {
    pub riemann: VectorMap<S>,
    pub ricci: SymForm<S>,
    pub scalar_curv: S,
}

/// `Ric = tr_slot ∘ 𝓡`; the result need not be symmetric off-convention.
pub fn ricci_with_slot<S: FieldScalar>(mu: &Bracket<S>, slot: usize) -> Result<Matrix<S>> {
    Ok(trace_slot(&riemann(mu), slot)?.to_matrix())
}

pub fn ricci<S: FieldScalar>(mu: &Bracket<S>) -> Result<CurvatureTensors<S>> {
    if !mu.is_lie() {
        return Err(Error::NotLie);
    }
    let r = riemann(mu);
    let ricci = SymForm::new(trace_slot(&r, RICCI_TRACE_SLOT)?.to_matrix())?;
    let scalar_curv = ricci.matrix().trace();
    Ok(CurvatureTensors {
        riemann: r,
        ricci,
        scalar_curv,
    })
}

/// Ricci matrix alone.
pub fn ricci_matrix<S: FieldScalar>(mu: &Bracket<S>) -> Result<Matrix<S>> {
    Ok(ricci(mu)?.ricci.into_matrix())
}

/// `Ric` over ℚ in integer arithmetic: with `D` clearing the denominators
/// of `μ`, `4D²·Ric` has integer entries built from `2D·∇` and `D·μ`.
pub fn ricci_exact(mu: &Bracket<Rational>) -> Result<Matrix<Rational>> {
    if !mu.is_lie() {
        return Err(Error::NotLie);
    }
    let n = mu.dim();
    let d = mu
        .entries()
        .fold(BigInt::one(), |acc, (_, _, _, c)| acc.lcm(c.denom()));
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut m = vec![BigInt::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let x = mu.get(a, b, c) * Rational::from_integer(d.clone());
                m[idx(a, b, c)] = x.to_integer();
            }
        }
    }
    let mut g = vec![BigInt::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                g[idx(a, b, c)] = &m[idx(a, b, c)] - &m[idx(b, c, a)] + &m[idx(c, a, b)];
            }
        }
    }
    // r[(a,b,c),e'] = 4D²·⟨𝓡(e_a,e_b,e_c), e_e'⟩
    let r = |a: usize, b: usize, c: usize, out: usize| -> BigInt {
        let mut acc = BigInt::zero();
        for e in 0..n {
            acc += &g[idx(b, c, e)] * &g[idx(a, e, out)];
            acc -= &g[idx(a, c, e)] * &g[idx(b, e, out)];
            acc -= BigInt::from(2) * &m[idx(a, b, e)] * &g[idx(e, c, out)];
        }
        acc
    };
    let scale = Rational::from_integer(BigInt::from(4) * &d * &d);
    let mut ric = Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let mut acc = BigInt::zero();
            for t in 0..n {
                acc += match RICCI_TRACE_SLOT {
                    1 => r(t, x, y, t),
                    2 => r(x, t, y, t),
                    _ => r(x, y, t, t),
                };
            }
            ric[(x, y)] = Rational::from_integer(acc) / &scale;
        }
    }
    Ok(ric)
}

/// Polarization of `Ric(v,v) = -½ Σ_{i,j} ⟨μ(v,e_i),e_j⟩² + ½ Σ_{i<j} ⟨μ(e_i,e_j),v⟩²`.
pub fn ricci_nilpotent(mu: &Bracket<Rational>) -> Result<SymForm<Rational>> {
    if !mu.is_lie() {
        return Err(Error::NotLie);
    }
    if !nilpotent(mu) {
        return Err(Error::NotNilpotent);
    }
    let n = mu.dim();
    let half = Rational::new(1.into(), 2.into());
    let m = Matrix::from_fn(n, n, |u, v| {
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc -= mu.get(u, i, j) * mu.get(v, i, j);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                acc += mu.get(i, j, u) * mu.get(i, j, v);
            }
        }
        acc * &half
    });
    SymForm::new(m)
}

/// `c` with `Ric = c⟨,⟩_cn`, if any.
pub fn einstein_check(mu: &Bracket<Rational>) -> Result<Option<Rational>> {
    let ric = ricci_matrix(mu)?;
    let c = ric[(0, 0)].clone();
    Ok((ric == Matrix::identity(mu.dim()).scale(&c)).then_some(c))
}

/// Exact Ricci signature.
pub fn ricci_signature(mu: &Bracket<Rational>) -> Result<Signature> {
    Ok(signature(&ricci_exact(mu)?))
}

/// Float signature after scaling to unit max-abs, with the smallest
/// normalized `|eigenvalue|`. Jacobi is not rechecked; round-off asymmetry
/// is averaged out.
pub fn ricci_signature_f64(mu: &Bracket<f64>, tol: f64) -> Result<(Signature, f64)> {
    let raw = ricci_with_slot(mu, RICCI_TRACE_SLOT)?;
    let ric = raw.add(&raw.transpose()).map(|x| x / 2.0);
    let scale = ric.max_abs();
    if scale == 0.0 {
        return Ok((Signature::new(0, 0, mu.dim()), 0.0));
    }
    let normalized = ric.map(|x| x / scale);
    let eig = crate::linalg::eigenvalues_f64(&normalized);
    let min = eig.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    Ok((signature_f64(&normalized, tol), min))
}

/// Outcome of the bisection for a zero of `t ↦ det Ric(family(t))`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DegenerateRicci {
    #[serde(serialize_with = "ser_rational")]
    pub t_hat: Rational,
    pub t_hat_f64: f64,
    #[serde(serialize_with = "ser_pair")]
    pub bracket: (Rational, Rational),
    pub det_at_t_hat: f64,
    /// Float signature at `t̂`, eigenvalues below `1e-9` of the max counted zero.
    pub signature_at_t_hat: Signature,
    pub signature_below: Signature,
    pub signature_above: Signature,
    /// Grid subintervals on which `det Ric` changes sign.
    #[serde(serialize_with = "ser_pairs")]
    pub sign_changes: Vec<(Rational, Rational)>,
}

fn ser_rational<Se: serde::Serializer>(x: &Rational, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    s.serialize_str(&crate::scalar::format_rational(x))
}

fn ser_pair<Se: serde::Serializer>(p: &(Rational, Rational), s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&crate::scalar::format_rational(&p.0))?;
    t.serialize_element(&crate::scalar::format_rational(&p.1))?;
    t.end()
}

fn ser_pairs<Se: serde::Serializer>(v: &[(Rational, Rational)], s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (a, b) in v {
        seq.serialize_element(&[crate::scalar::format_rational(a), crate::scalar::format_rational(b)])?;
    }
    seq.end()
}

pub const GRID_SUBINTERVALS: usize = 120;
pub const DET_TOLERANCE: f64 = 1e-12;

/// Scans `[lo, hi]` on a uniform grid for sign changes of `det Ric`, then
/// bisects the first one until `|det| < DET_TOLERANCE`. Endpoints of the
/// final bracket are dyadic rationals whose signatures are exact.
pub fn find_degenerate_ricci(
    family: impl Fn(&Rational) -> Bracket<Rational>,
    lo: &Rational,
    hi: &Rational,
) -> Result<DegenerateRicci> {
    find_degenerate_ricci_within(family, lo, hi, DET_TOLERANCE)
}

/// As `find_degenerate_ricci`, stopping once `|det| < tol`; `tol` must be
/// positive and finite.
pub fn find_degenerate_ricci_within(
    family: impl Fn(&Rational) -> Bracket<Rational>,
    lo: &Rational,
    hi: &Rational,
    tol: f64,
) -> Result<DegenerateRicci> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain {
            class: "det tolerance".into(),
            constraint: format!("{tol} must be positive and finite"),
        });
    }
    let det = |t: &Rational| -> Result<Rational> { Ok(ricci_exact(&family(t))?.determinant()) };
    let steps = Rational::from_integer(GRID_SUBINTERVALS.into());
    let grid: Vec<Rational> = (0..=GRID_SUBINTERVALS)
        .map(|k| lo + (hi - lo) * Rational::from_integer(k.into()) / &steps)
        .collect();
    let values = grid.iter().map(&det).collect::<Result<Vec<_>>>()?;
    let sign_changes: Vec<(Rational, Rational)> = (0..GRID_SUBINTERVALS)
        .filter(|&k| {
            let (a, b) = (&values[k], &values[k + 1]);
            a.is_zero() || (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive())
        })
        .map(|k| (grid[k].clone(), grid[k + 1].clone()))
        .collect();
    let Some((mut a, mut b)) = sign_changes.first().cloned() else {
        return Err(Error::NoSignChange {
            lo: rational_to_f64(lo),
            hi: rational_to_f64(hi),
        });
    };
    let mut da = det(&a)?;
    let two = Rational::from_integer(2.into());
    let mut t_hat = a.clone();
    let mut d_hat = da.clone();
    while rational_to_f64(&d_hat).abs() >= tol {
        let mid = (&a + &b) / &two;
        let dm = det(&mid)?;
        t_hat = mid.clone();
        d_hat = dm.clone();
        if dm.is_zero() {
            break;
        }
        if dm.is_positive() == da.is_positive() {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    let (below, above) = (a, b);
    let ric_hat = ricci_exact(&family(&t_hat))?.to_f64();
    let scale = ric_hat.max_abs();
    let signature_at_t_hat = signature_f64(&ric_hat.map(|x| x / scale), 1e-9);
    Ok(DegenerateRicci {
        t_hat_f64: rational_to_f64(&t_hat),
        det_at_t_hat: rational_to_f64(&d_hat),
        signature_at_t_hat,
        signature_below: ricci_signature(&family(&below))?,
        signature_above: ricci_signature(&family(&above))?,
        t_hat,
        bracket: (below, above),
        sign_changes,
    })
}
