use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symplie_core::bracket::Bracket;
use symplie_core::catalog::curves::{lemma_g, rho, varrho, xi};
use symplie_core::catalog::{bracket, ClassId};
use symplie_core::curvature::{
    einstein_check, ricci, ricci_matrix, ricci_nilpotent, ricci_signature, ricci_signature_f64,
};
use symplie_core::group::{is_symplectic_within, random_symplectic, transvection};
use symplie_core::invariants::nilpotent;
use symplie_core::linalg::Signature;
use symplie_core::matrix::Matrix;
use symplie_core::scalar::{int, rat, Rational};

fn printed_xi_diagonal(t: &Rational) -> Matrix<Rational> {
    let half = rat(1, 2);
    let t2 = t * t;
    let t4 = &t2 * &t2;
    Matrix::diagonal(vec![
        -&half * &t2 - &half * &t4,
        -&half * &t2,
        &half * &t4,
        &half * &t2 - &half * &t4,
    ])
}

#[test]
fn xi_ricci_matches_printed_diagonal() {
    for t in [rat(1, 2), int(2), int(3)] {
        assert_eq!(ricci_matrix(&xi(&t)).unwrap(), printed_xi_diagonal(&t), "t = {t}");
    }
    let at_two = ricci_nilpotent(&xi(&int(2))).unwrap();
    assert_eq!(*at_two.matrix(), Matrix::diagonal(vec![int(-10), int(-2), int(8), int(-6)]));
}

#[test]
fn xi_is_the_lemma_shear_of_n4() {
    let n4 = bracket(&ClassId::N4).unwrap();
    for t in [rat(1, 3), int(2), rat(-5, 2)] {
        assert_eq!(n4.act(&lemma_g(&t)).unwrap(), xi(&t));
    }
}

#[test]
fn xi_signatures_switch_at_one() {
    for t in [rat(1, 2), rat(-1, 3), rat(9, 10)] {
        assert_eq!(ricci_signature(&xi(&t)).unwrap(), Signature::new(2, 2, 0), "t = {t}");
    }
    for t in [rat(11, 10), int(2), int(-3)] {
        assert_eq!(ricci_signature(&xi(&t)).unwrap(), Signature::new(1, 3, 0), "t = {t}");
    }
}

#[test]
fn lemma_representatives() {
    let r4 = bracket(&ClassId::r4m1m1()).unwrap();
    assert_eq!(ricci_matrix(&r4).unwrap(), Matrix::diagonal(vec![int(-3), int(-1), int(-1), int(1)]));
    assert_eq!(ricci_signature(&rho(&int(12))).unwrap(), Signature::new(1, 3, 0));
    assert_eq!(ricci_signature(&varrho(&int(2))).unwrap(), Signature::new(1, 3, 0));
    let c = einstein_check(&rho(&int(0))).unwrap().expect("einstein");
    assert!(c < Rational::zero());
    assert_eq!(ricci_signature(&rho(&int(0))).unwrap(), Signature::new(0, 4, 0));
}

#[test]
fn rho_determinant_closed_form() {
    // det Ric(ρ_t) = -(t² + 18)(t⁴ + 25t² - 144)/512, expanded by hand.
    for t in [int(0), int(1), rat(7, 3), int(12)] {
        let t2 = &t * &t;
        let expected = -(&t2 + int(18)) * (&t2 * &t2 + int(25) * &t2 - int(144)) / int(512);
        assert_eq!(ricci_matrix(&rho(&t)).unwrap().determinant(), expected, "t = {t}");
    }
}

#[test]
fn nilpotent_catalog_entries_agree_with_reduced_formula() {
    let mut checked = 0;
    for id in ClassId::samples() {
        let mu = bracket(&id).unwrap();
        if !nilpotent(&mu) {
            assert!(ricci_nilpotent(&mu).is_err());
            continue;
        }
        assert_eq!(ricci(&mu).unwrap().ricci, ricci_nilpotent(&mu).unwrap(), "{id}");
        checked += 1;
    }
    assert_eq!(checked, 3);
}

#[test]
fn scalar_curvature_is_the_trace() {
    let r4 = bracket(&ClassId::r4m1m1()).unwrap();
    assert_eq!(ricci(&r4).unwrap().scalar_curv, int(-4));
}

fn sample_class() -> impl Strategy<Value = ClassId> {
    let all = ClassId::samples();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn curvature_identities_on_orbits(id in sample_class(), seed in any::<u64>()) {
        let g = random_symplectic(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let mu = bracket(&id).unwrap().act_symplectic(&g);
        let c = ricci(&mu).unwrap();
        prop_assert!(c.ricci.matrix().is_symmetric());
        for a in 0..4 {
            for b in 0..4 {
                for k in 0..4 {
                    let s: Vec<Rational> = c.riemann.value(&[a, b, k]).iter()
                        .zip(c.riemann.value(&[b, a, k])).map(|(x, y)| x + y).collect();
                    prop_assert!(s.iter().all(Zero::is_zero));
                }
            }
        }
        if nilpotent(&mu) {
            prop_assert_eq!(c.ricci, ricci_nilpotent(&mu).unwrap());
        }
    }

    #[test]
    fn nondegenerate_signature_is_locally_constant(
        which in 0usize..4,
        u in prop::array::uniform4(-1.0f64..1.0),
        c in -1e-4f64..1e-4,
    ) {
        let base: Bracket<Rational> = match which {
            0 => xi(&int(2)),
            1 => rho(&int(12)),
            2 => varrho(&int(2)),
            _ => bracket(&ClassId::r4m1m1()).unwrap(),
        };
        let exact = ricci_signature(&base).unwrap();
        let s = transvection(&u, &c);
        prop_assert!(is_symplectic_within(&s, 1e-12));
        let (sig, min) = ricci_signature_f64(&base.to_f64().act_symplectic(&s), 1e-6).unwrap();
        prop_assert_eq!(sig, exact);
        prop_assert!(min > 1e-6);
    }
}
