//! Symplectic witnesses `s` with `Ric(s·μ)` of signature `(1,3,0)`, and the
//! random check that the three exceptional classes never get one.

use std::collections::VecDeque;

use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::evaluate_at_base;
use crate::catalog::{bracket, curves, lemma_g, lemma_h, ClassId, CurveSpec};
use crate::curvature::{ricci_exact, ricci_signature};
use crate::error::Result;
use crate::group::{is_symplectic, random_symplectic};
use crate::linalg::Signature;
use crate::matrix::Matrix;
use crate::scalar::{format_rational, int, Rational};

pub const TARGET_SIGNATURE: Signature = Signature::new(1, 3, 0);
pub const T_MAX: f64 = 25.0;
pub const NEGATIVE_SAMPLES: usize = 500;
pub const MAX_PATH_LENGTH: usize = 3;

/// Classes whose every compatible metric has degenerate Ricci form.
pub fn exceptional_classes() -> [ClassId; 3] {
    [ClassId::A4, ClassId::Rh3, ClassId::Rr30]
}

/// The four laws with an explicit nondegenerate Ricci form, as
/// `(class, s)` with `s·μ_class` the representative.
pub fn lemma_representatives() -> Vec<(ClassId, Matrix<Rational>)> {
    vec![
        (ClassId::N4, lemma_g(&int(2))),
        (ClassId::d4half(), lemma_h(&int(12))),
        (ClassId::D41W1, lemma_h(&int(2))),
        (ClassId::r4m1m1(), Matrix::identity(4)),
    ]
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Witness {
    pub class: String,
    /// Curves applied, first to last.
    pub path: Vec<String>,
    pub lemma_class: String,
    /// `e^{t/d}` for each curve, exact.
    pub bases: Vec<String>,
    pub times: Vec<f64>,
    pub s: Vec<Vec<String>>,
    pub symplectic: bool,
    pub signature: Signature,
    pub exact: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClassOutcome {
    Witness(Witness),
    Degenerate { class: String, samples: usize, nonzero_determinants: usize },
    Exhausted { class: String, tried_paths: usize },
}

impl ClassOutcome {
    pub fn passed(&self) -> bool {
        match self {
            ClassOutcome::Witness(w) => w.symplectic && w.signature == TARGET_SIGNATURE,
            ClassOutcome::Degenerate { nonzero_determinants, .. } => *nonzero_determinants == 0,
            ClassOutcome::Exhausted { .. } => false,
        }
    }
}

/// Curve paths from `class` to a representative with known Ricci form, shortest first.
fn paths_to_lemma(class: &ClassId, all: &[CurveSpec], reps: &[ClassId]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut queue: VecDeque<(ClassId, Vec<usize>)> = VecDeque::from([(class.clone(), vec![])]);
    while let Some((at, path)) = queue.pop_front() {
        if path.len() >= MAX_PATH_LENGTH {
            continue;
        }
        for (i, c) in all.iter().enumerate() {
            if c.source != at || !c.id.starts_with("appendix:") {
                continue;
            }
            let mut next = path.clone();
            next.push(i);
            if reps.contains(&c.target) {
                out.push(next.clone());
            }
            queue.push_back((c.target.clone(), next));
        }
    }
    out
}

/// Exponent `k` grids per curve: base `2^k` with `d·k·ln 2 ≤ t_max`.
fn base_exponents(d: &num_bigint::BigInt, t_max: f64) -> Vec<u32> {
    let d = d.to_f64().unwrap_or(1.0);
    (1..).take_while(|&k| d * k as f64 * std::f64::consts::LN_2 <= t_max).collect()
}

fn index_tuples(ranges: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut tuples: Vec<Vec<u32>> = vec![vec![]];
    for r in ranges {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                r.iter().map(move |&k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    // Later curves must be pushed less far than earlier ones have settled.
    tuples.retain(|t| t.windows(2).all(|w| w[1] <= w[0]));
    tuples.sort_by_key(|t| (t.iter().sum::<u32>(), t.clone()));
    tuples
}

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect()
}

fn finish(class: &ClassId, path: Vec<String>, lemma: &ClassId, bases: Vec<Rational>, times: Vec<f64>, s: Matrix<Rational>, signature: Signature) -> ClassOutcome {
    ClassOutcome::Witness(Witness {
        class: class.to_string(),
        path,
        lemma_class: lemma.to_string(),
        bases: bases.iter().map(format_rational).collect(),
        times,
        symplectic: is_symplectic(&s),
        s: matrix_strings(&s),
        signature,
        exact: true,
    })
}

/// Searches for `s` with `signature(Ric(s·μ)) = (1,3,0)`.
pub fn witness_for(class: &ClassId, t_max: f64) -> Result<ClassOutcome> {
    let mu = bracket(class)?;
    let reps = lemma_representatives();
    if let Some((_, s)) = reps.iter().find(|(c, _)| c == class) {
        let sig = ricci_signature(&mu.act_symplectic(s))?;
        return Ok(finish(class, vec![], class, vec![], vec![], s.clone(), sig));
    }
    let all = curves();
    let rep_classes: Vec<ClassId> = reps.iter().map(|(c, _)| c.clone()).collect();
    let paths = paths_to_lemma(class, &all, &rep_classes);
    for path in &paths {
        let specs: Vec<&CurveSpec> = path.iter().map(|&i| &all[i]).collect();
        let lemma = &specs.last().expect("nonempty path").target;
        let l = &reps.iter().find(|(c, _)| c == lemma).expect("path ends at a representative").1;
        let matrices: Vec<_> = specs.iter().map(|c| c.corrected_matrix()).collect();
        let denominators: Vec<_> = matrices.iter().map(|g| evaluate_at_base(g, &int(1)).1).collect();
        let ranges: Vec<Vec<u32>> = denominators.iter().map(|d| base_exponents(d, t_max)).collect();
        for ks in index_tuples(&ranges) {
            let mut s = Matrix::identity(4);
            let mut bases = Vec::new();
            let mut times = Vec::new();
            for ((g, d), &k) in matrices.iter().zip(&denominators).zip(&ks) {
                let base = Rational::from_integer(num_bigint::BigInt::from(2u32).pow(k));
                let (m, _) = evaluate_at_base(g, &base);
                s = m.mul(&s);
                times.push(d.to_f64().unwrap_or(f64::NAN) * k as f64 * std::f64::consts::LN_2);
                bases.push(base);
            }
            let s = l.mul(&s);
            let sig = ricci_signature(&mu.act_symplectic(&s))?;
            if sig == TARGET_SIGNATURE {
                let ids = specs.iter().map(|c| c.id.clone()).collect();
                return Ok(finish(class, ids, lemma, bases, times, s, sig));
            }
        }
    }
    Ok(ClassOutcome::Exhausted {
        class: class.to_string(),
        tried_paths: paths.len(),
    })
}

/// `det Ric(g·μ)` over random transvection products.
pub fn degenerate_everywhere(class: &ClassId, samples: usize, seed: u64) -> Result<ClassOutcome> {
    let mu = bracket(class)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    for _ in 0..samples {
        let g = random_symplectic(&mut rng, 4);
        if !ricci_exact(&mu.act_symplectic(&g))?.determinant().is_zero() {
            nonzero += 1;
        }
    }
    Ok(ClassOutcome::Degenerate {
        class: class.to_string(),
        samples,
        nonzero_determinants: nonzero,
    })
}

/// One outcome per sampled class, sorted by class id.
pub fn theorem_b_search(samples: usize, seed: u64, t_max: f64) -> Result<Vec<ClassOutcome>> {
    let exceptional = exceptional_classes();
    let mut classes = ClassId::samples();
    classes.sort_by_key(|c| c.to_string());
    classes
        .iter()
        .map(|c| {
            if exceptional.contains(c) {
                degenerate_everywhere(c, samples, seed)
            } else {
                witness_for(c, t_max)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_classes_are_their_own_witnesses() {
        match witness_for(&ClassId::N4, T_MAX).unwrap() {
            ClassOutcome::Witness(w) => {
                assert!(w.path.is_empty());
                assert_eq!(w.signature, TARGET_SIGNATURE);
                assert_eq!(w.s[0][0], "1/2");
            }
            other => panic!("{other:?}"),
        }
        match witness_for(&ClassId::r4m1m1(), T_MAX).unwrap() {
            ClassOutcome::Witness(w) => assert_eq!(w.s, matrix_strings(&Matrix::identity(4))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_step_witness() {
        let outcome = witness_for(&ClassId::D41W2, T_MAX).unwrap();
        assert!(outcome.passed(), "{outcome:?}");
    }

    #[test]
    fn composite_witness() {
        let outcome = witness_for(&ClassId::D42W2, T_MAX).unwrap();
        match &outcome {
            ClassOutcome::Witness(w) => assert_eq!(w.path.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(outcome.passed());
    }

    #[test]
    fn abelian_is_flat() {
        let outcome = degenerate_everywhere(&ClassId::A4, 5, 1).unwrap();
        assert!(outcome.passed());
    }
}
