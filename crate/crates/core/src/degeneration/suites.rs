//! The three non-degeneration arguments as machine checks.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::iwasawa::{b_orbit_element, random_params, w_residual, Pattern, W, W_TILDE};
use crate::bracket::{Bracket, TwoForm};
use crate::catalog::{bracket, lambda_samples_r2r2, ClassId};
use crate::error::Result;
use crate::invariants::{cmap, derived_dim, phi, unimodular};
use crate::linalg::kernel;
use crate::matrix::Matrix;
use crate::multilinear::trace_slot;
use crate::scalar::{format_rational, int, rat, Rational};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct NonDegenerationCheck {
    pub name: &'static str,
    pub source: String,
    pub target: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct NonDegenerationReport {
    pub checks: Vec<NonDegenerationCheck>,
}

impl NonDegenerationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const PHI_COEFFICIENTS: [i64; 6] = [0, 1, 0, -1, 0, -1];

/// `𝒞(φμ)` for `d4_2:w1` must be psd and nonzero, for `d4_2:w2` nsd and
/// nonzero; no form of one kind lies in the closure of the other's orbit.
pub fn signature_check() -> Result<NonDegenerationCheck> {
    let omega = TwoForm::canonical(4);
    let c = PHI_COEFFICIENTS.map(int);
    let target = phi(&bracket(&ClassId::D42W1)?, &c, &omega)?;
    let source = phi(&bracket(&ClassId::D42W2)?, &c, &omega)?;
    let (st, ss) = (cmap(&target)?.signature(), cmap(&source)?.signature());
    Ok(NonDegenerationCheck {
        name: "phi_cmap_signature",
        source: ClassId::D42W2.to_string(),
        target: ClassId::D42W1.to_string(),
        passed: st.is_psd_nonzero() && ss.is_nsd_nonzero(),
        detail: json!({"target_signature": st, "source_signature": ss}),
    })
}

/// Basis-coordinate matrix of `b ↦ tr₂(pattern(b))`; its kernel is the
/// unimodular part of the subspace.
fn trace_map(p: &Pattern) -> Matrix<Rational> {
    let columns: Vec<Vec<Rational>> = (0..p.vars)
        .map(|v| {
            let b: Vec<Rational> = (0..p.vars).map(|w| if w == v { int(1) } else { int(0) }).collect();
            trace_slot(&p.build(&b).to_map(), 2).expect("slot 2 of a product").to_vector()
        })
        .collect();
    Matrix::from_fn(4, p.vars, |i, j| columns[j][i].clone())
}

fn combine(basis: &[Vec<Rational>], weights: &[Rational]) -> Vec<Rational> {
    let mut b = vec![Rational::zero(); basis[0].len()];
    for (v, w) in basis.iter().zip(weights) {
        for (x, y) in b.iter_mut().zip(v) {
            *x += w * y;
        }
    }
    b
}

/// Flattened Jacobiator of `p.build(b)`.
fn jacobi_components(p: &Pattern, b: &[Rational]) -> Vec<Rational> {
    p.build(b).jacobiator().into_iter().flat_map(|(_, v)| v).collect()
}

/// Each Jacobi component as a quadratic form in the kernel coordinates,
/// recovered exactly by polarization.
fn jacobi_quadrics(p: &Pattern, basis: &[Vec<Rational>]) -> Vec<Matrix<Rational>> {
    let n = basis.len();
    let unit = |i: usize| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect::<Vec<_>>();
    let q = |w: &[Rational]| jacobi_components(p, &combine(basis, w));
    let diag: Vec<Vec<Rational>> = (0..n).map(|i| q(&unit(i))).collect();
    let comps = if n == 0 { 0 } else { diag[0].len() };
    let mut forms = vec![Matrix::from_fn(n, n, |_, _| Rational::zero()); comps];
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                diag[i].clone()
            } else {
                let w: Vec<Rational> = (0..n).map(|k| if k == i || k == j { int(1) } else { int(0) }).collect();
                q(&w).iter().zip(&diag[i]).zip(&diag[j]).map(|((a, b), c)| (a - b - c) / int(2)).collect()
            };
            for (f, x) in forms.iter_mut().zip(v) {
                f[(i, j)] = x.clone();
                f[(j, i)] = x;
            }
        }
    }
    forms
}

/// Coordinates left free on the unimodular Lie laws of the subspace: the
/// trace kernel, cut down by Jacobi components of the form `c·s²` (which
/// force `s = 0`). `None` unless the result is a coordinate subspace.
fn unimodular_free_coordinates(p: &Pattern) -> Option<Vec<usize>> {
    let mut basis = kernel(&trace_map(p));
    loop {
        if basis.is_empty() {
            break;
        }
        let forced = jacobi_quadrics(p, &basis).into_iter().find_map(|f| {
            let nonzero: Vec<(usize, usize)> = (0..basis.len())
                .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !f[(i, j)].is_zero())
                .collect();
            match nonzero[..] {
                [(i, j)] if i == j => Some(i),
                _ => None,
            }
        });
        match forced {
            Some(m) => {
                basis.remove(m);
            }
            None => break,
        }
    }
    let mut free = Vec::new();
    for v in &basis {
        let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        free.push(nonzero[0]);
    }
    free.sort_unstable();
    Some(free)
}

fn small<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Residual of `Z(λ)` on random Borel-orbit samples of `r2r2`, and the
/// unimodular reduction against `n4`.
pub fn z_lambda_check(samples: usize, seed: u64) -> Result<NonDegenerationCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = TwoForm::canonical(4);
    let mut nonzero_residuals = 0usize;
    let mut not_symplectic_lie = 0usize;
    let lambdas = lambda_samples_r2r2();
    for lambda in &lambdas {
        let mu = bracket(&ClassId::R2r2 { lambda: lambda.clone() })?;
        for _ in 0..samples {
            let (a, n) = random_params(&mut rng);
            let xi = b_orbit_element(&mu, &a, &n)?;
            if !xi.is_lie() || !xi.is_closed(&omega) {
                not_symplectic_lie += 1;
            }
            if !w_residual(&xi, lambda)?.is_zero() {
                nonzero_residuals += 1;
            }
        }
    }
    // Unimodular Lie laws of W keep only b1, b2, b5; on Z(λ) that forces
    // b1 b5 = 0, so ξ(e1,e2) and ξ(e2,e3) are dependent.
    let free = unimodular_free_coordinates(&W);
    let reduction_ok = free.as_deref() == Some(&[0, 1, 4][..]);
    let target_dim = derived_dim(&bracket(&ClassId::N4)?);
    let mut max_dim = 0;
    for k in 0..samples {
        let mut b = vec![int(0); 6];
        b[1] = small(&mut rng);
        if k % 2 == 0 {
            b[0] = small(&mut rng);
        } else {
            b[4] = small(&mut rng);
        }
        let eta: Bracket<Rational> = W.build(&b);
        debug_assert!(unimodular(&eta));
        max_dim = max_dim.max(derived_dim(&eta));
    }
    Ok(NonDegenerationCheck {
        name: "borel_orbit_z_lambda",
        source: "r2r2".into(),
        target: ClassId::N4.to_string(),
        passed: nonzero_residuals == 0
            && not_symplectic_lie == 0
            && reduction_ok
            && max_dim < target_dim,
        detail: json!({
            "lambdas": lambdas.iter().map(format_rational).collect::<Vec<_>>(),
            "samples_per_lambda": samples,
            "nonzero_residuals": nonzero_residuals,
            "outside_symplectic_lie": not_symplectic_lie,
            "unimodular_free_coordinates": free.map(|f| f.iter().map(|i| format!("b{}", i + 1)).collect::<Vec<_>>()),
            "max_derived_dim_on_unimodular_slice": max_dim,
            "target_derived_dim": target_dim,
        }),
    })
}

/// Borel-orbit samples of `r2p` stay in `W̃`, whose unimodular elements have
/// derived dimension at most 1.
pub fn w_tilde_check(samples: usize, seed: u64) -> Result<NonDegenerationCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = bracket(&ClassId::R2p)?;
    let mut outside = 0usize;
    for _ in 0..samples {
        let (a, n) = random_params(&mut rng);
        if W_TILDE.coordinates(&b_orbit_element(&mu, &a, &n)?).is_err() {
            outside += 1;
        }
    }
    let free = unimodular_free_coordinates(&W_TILDE);
    let reduction_ok = free.as_deref() == Some(&[0, 2][..]);
    let target_dim = derived_dim(&bracket(&ClassId::N4)?);
    let mut max_dim = 0;
    for _ in 0..samples {
        let b = vec![small(&mut rng), int(0), small(&mut rng), int(0)];
        max_dim = max_dim.max(derived_dim(&W_TILDE.build(&b)));
    }
    Ok(NonDegenerationCheck {
        name: "borel_orbit_w_tilde",
        source: ClassId::R2p.to_string(),
        target: ClassId::N4.to_string(),
        passed: outside == 0 && reduction_ok && max_dim <= 1 && 1 < target_dim,
        detail: json!({
            "samples": samples,
            "outside_w_tilde": outside,
            "unimodular_free_coordinates": free.map(|f| f.iter().map(|i| format!("b{}", i + 1)).collect::<Vec<_>>()),
            "max_derived_dim_on_unimodular_slice": max_dim,
            "target_derived_dim": target_dim,
        }),
    })
}

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn non_degeneration_suite(samples: usize, seed: u64) -> Result<NonDegenerationReport> {
    Ok(NonDegenerationReport {
        checks: vec![
            signature_check()?,
            z_lambda_check(samples, seed)?,
            w_tilde_check(samples, seed.wrapping_add(1))?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_a_small_sample() {
        let r = non_degeneration_suite(40, 7).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{} {}", c.name, c.detail);
        }
    }

    #[test]
    fn unimodular_slices() {
        assert_eq!(unimodular_free_coordinates(&W), Some(vec![0, 1, 4]));
        assert_eq!(unimodular_free_coordinates(&W_TILDE), Some(vec![0, 2]));
    }
}
