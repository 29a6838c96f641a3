//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symplie_core::bracket::{symplectic_inverse, Bracket, TwoForm};
use symplie_core::catalog::curves::{lemma_g, rho, varrho, xi};
use symplie_core::catalog::{bracket, curve, curves, expected_for, make, tau6, ClassId};
use symplie_core::curvature::{einstein_check, ricci_matrix, ricci_signature};
use symplie_core::degeneration::hasse::{hasse, theorem_a_edges, EdgeStatus};
use symplie_core::degeneration::iwasawa::{b_orbit_element, random_params, w_residual};
use symplie_core::degeneration::suites::{non_degeneration_suite, w_tilde_check, z_lambda_check};
use symplie_core::degeneration::theorem_b::{theorem_b_search, ClassOutcome, NEGATIVE_SAMPLES, T_MAX};
use symplie_core::degeneration::{curve_tensor, verify_curve, FINAL_DISTANCE};
use symplie_core::exppoly::ExpPoly;
use symplie_core::group::{random_invertible, random_symplectic};
use symplie_core::invariants::{cmap, derivations, derived_dim, obstruction_checks, phi, symplectic_derivations};
use symplie_core::linalg::Signature;
use symplie_core::matrix::Matrix;
use symplie_core::multilinear::VectorMap;
use symplie_core::report::remark_report;
use symplie_core::scalar::{int, rat, Rational};

use symplie_suite::{check, run_all, Criterion, Outcome};

fn table_reproduction() -> Outcome {
    let ids = ClassId::samples();
    let mut bad = Vec::new();
    for id in &ids {
        let (mu, omega) = make(id).map_err(|e| e.to_string())?;
        let got = (
            symplectic_derivations(&mu, &omega).map_err(|e| e.to_string())?.dim(),
            derivations(&mu).map_err(|e| e.to_string())?.dim(),
        );
        let e = expected_for(id);
        if got != (e.dim_der_omega, e.dim_der) {
            bad.push(format!("{id}: {got:?} vs ({}, {})", e.dim_der_omega, e.dim_der));
        }
    }
    check(bad.is_empty(), format!("{} sampled classes match", ids.len()), bad.join("; "))
}

fn catalog_soundness() -> Outcome {
    let mut bad = Vec::new();
    let ids = ClassId::samples();
    for id in &ids {
        let (mu, omega) = make(id).map_err(|e| e.to_string())?;
        if !(mu.is_lie() && mu.is_closed(&omega) && omega.is_canonical()) {
            bad.push(id.to_string());
        }
    }
    let (tau, w6) = tau6();
    if !(tau.is_lie() && tau.is_closed(&w6)) {
        bad.push("tau6".into());
    }
    check(bad.is_empty(), format!("{} classes and the 6-dimensional fixture", ids.len()), bad.join(", "))
}

fn appendix_verification() -> Outcome {
    let reports: Vec<_> = curves().iter().map(verify_curve).collect();
    let exact_bad: Vec<String> = reports.iter().filter(|r| !r.verified()).map(|r| format!("{} at {}", r.curve, r.source)).collect();
    let float_bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.float_ok())
        .map(|r| format!("{} at {} d(25)={:.2e}", r.curve, r.source, r.final_distance.unwrap_or(f64::NAN)))
        .collect();
    let summary = format!(
        "{} curves: exact {}/{}, float grid (d(25) < {FINAL_DISTANCE:e}) {}/{}",
        reports.len(),
        reports.len() - exact_bad.len(),
        reports.len(),
        reports.len() - float_bad.len(),
        reports.len()
    );
    check(
        exact_bad.is_empty() && float_bad.is_empty(),
        summary.clone(),
        format!("{summary}; exact failures [{}]; float failures [{}]", exact_bad.join(", "), float_bad.join(", ")),
    )
}

fn example_two() -> Outcome {
    let c = curve("ex2:xi_u", None).map_err(|e| e.to_string())?;
    let tensor = curve_tensor(&c.matrix, &c.source_bracket());
    let k = ExpPoly::constant;
    let printed = Bracket::from_entries(
        4,
        &[(1, 2, 2, k(int(-1))), (1, 3, 3, k(int(2))), (1, 4, 4, k(int(1))), (2, 3, 4, ExpPoly::exp(int(-2)))],
    )
    .map_err(|e| e.to_string())?;
    let r = verify_curve(&c);
    check(
        tensor == printed && r.verified() && c.target == ClassId::R4Alpha { alpha: rat(-1, 2) },
        "g(u)·mu18 has the printed form and tends to r4(-1/2)".into(),
        format!("tensor {:?}, verdict {:?}", r.tensor, r.verdict),
    )
}

fn product(entries: &[(usize, usize, usize, i64)]) -> VectorMap<Rational> {
    let mut p = VectorMap::<Rational>::zero(4, 2);
    for &(i, j, k, c) in entries {
        let old = p.get(&[i - 1, j - 1], k - 1).clone();
        p.set(&[i - 1, j - 1], k - 1, old + int(c));
    }
    p
}

fn example_one() -> Outcome {
    let c = [0, 1, 0, -1, 0, -1].map(int);
    let omega = TwoForm::canonical(4);
    let l1 = phi(&bracket(&ClassId::D42W1).map_err(|e| e.to_string())?, &c, &omega).map_err(|e| e.to_string())?;
    let l2 = phi(&bracket(&ClassId::D42W2).map_err(|e| e.to_string())?, &c, &omega).map_err(|e| e.to_string())?;
    let p1 = product(&[(1, 1, 1, 1), (1, 2, 2, -1), (1, 3, 3, 1), (1, 4, 4, -1), (2, 1, 2, 3), (2, 4, 3, 3)]);
    let p2 = product(&[(2, 1, 2, 1), (2, 2, 1, -1), (2, 3, 4, -1), (2, 4, 3, 1), (4, 1, 4, 3), (4, 2, 3, -3)]);
    let s1 = cmap(&l1).map_err(|e| e.to_string())?.signature();
    let s2 = cmap(&l2).map_err(|e| e.to_string())?.signature();
    check(
        l1 == p1 && l2 == p2 && s1.is_psd_nonzero() && s2.is_nsd_nonzero(),
        format!("products match; C(lambda1) {s1}, C(lambda2) {s2}"),
        format!("lambda1 match {}, lambda2 match {}, signatures {s1} {s2}", l1 == p1, l2 == p2),
    )
}

fn example_three() -> Outcome {
    let z = z_lambda_check(1000, 0x5eed).map_err(|e| e.to_string())?;
    let w = w_tilde_check(1000, 0x5eee).map_err(|e| e.to_string())?;
    // Independent recount of the residual on fresh samples.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nonzero = 0;
    for lambda in [int(0), int(1), rat(7, 3)] {
        let mu = bracket(&ClassId::R2r2 { lambda: lambda.clone() }).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let (a, n) = random_params(&mut rng);
            let x = b_orbit_element(&mu, &a, &n).map_err(|e| e.to_string())?;
            if !w_residual(&x, &lambda).map_err(|e| e.to_string())?.is_zero() {
                nonzero += 1;
            }
        }
    }
    let n4 = derived_dim(&bracket(&ClassId::N4).map_err(|e| e.to_string())?);
    check(
        z.passed && w.passed && nonzero == 0 && n4 == 2,
        format!("Z(lambda) residual 0 on 3x1000 samples; W~ unimodular derived dim <= 1 < {n4}"),
        format!("{} {} ; {} {}; fresh nonzero residuals {nonzero}", z.name, z.detail, w.name, w.detail),
    )
}

fn lemma() -> Outcome {
    let mut bad = Vec::new();
    let h = rat(1, 2);
    for t in [rat(1, 2), int(2), int(3)] {
        let t2 = &t * &t;
        let t4 = &t2 * &t2;
        let printed = Matrix::diagonal(vec![-&h * &t2 - &h * &t4, -&h * &t2, &h * &t4, &h * &t2 - &h * &t4]);
        if ricci_matrix(&xi(&t)).map_err(|e| e.to_string())? != printed {
            bad.push(format!("Ric(xi_{t})"));
        }
    }
    for t in [rat(1, 3), rat(-1, 2), rat(9, 10), int(2), int(-3), rat(5, 4)] {
        let want = if t.abs() < int(1) { Signature::new(2, 2, 0) } else { Signature::new(1, 3, 0) };
        let n4 = bracket(&ClassId::N4).map_err(|e| e.to_string())?;
        if ricci_signature(&n4.act_symplectic(&lemma_g(&t))).map_err(|e| e.to_string())? != want {
            bad.push(format!("signature at t = {t}"));
        }
    }
    let r4 = ricci_matrix(&bracket(&ClassId::r4m1m1()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if r4 != Matrix::diagonal(vec![int(-3), int(-1), int(-1), int(1)]) {
        bad.push("Ric(mu11(-1))".into());
    }
    for (name, mu) in [("rho_12", rho(&int(12))), ("varrho_2", varrho(&int(2)))] {
        if ricci_signature(&mu).map_err(|e| e.to_string())? != Signature::new(1, 3, 0) {
            bad.push(name.into());
        }
    }
    let c = einstein_check(&rho(&int(0))).map_err(|e| e.to_string())?;
    if !c.as_ref().is_some_and(|c| c.is_negative()) {
        bad.push("rho_0 Einstein constant".into());
    }
    check(bad.is_empty(), "Ricci diagonal, signatures, and Einstein rho_0 exact".into(), bad.join(", "))
}

fn remark() -> Outcome {
    let r = remark_report(1e-12).map_err(|e| e.to_string())?;
    let d = &r.degenerate;
    let zero = Rational::zero();
    let inside = d.t_hat > zero && d.t_hat < int(12);
    check(
        r.passed() && inside && d.det_at_t_hat.abs() < 1e-12,
        format!("t_hat = {:.6}, |det| = {:.2e}, {} below, {} above", d.t_hat_f64, d.det_at_t_hat.abs(), d.signature_below, d.signature_above),
        format!("{r:?}"),
    )
}

fn theorem_b() -> Outcome {
    let outcomes = theorem_b_search(NEGATIVE_SAMPLES, 0x5eed, T_MAX).map_err(|e| e.to_string())?;
    let bad: Vec<String> = outcomes.iter().filter(|o| !o.passed()).map(|o| format!("{o:?}")).collect();
    let witnesses = outcomes.iter().filter(|o| matches!(o, ClassOutcome::Witness(_))).count();
    let degenerate = outcomes.iter().filter(|o| matches!(o, ClassOutcome::Degenerate { .. })).count();
    check(
        bad.is_empty() && degenerate == 3,
        format!("{witnesses} exact (1,3,0) witnesses; {degenerate} classes with det Ric = 0 on {NEGATIVE_SAMPLES} samples each"),
        bad.join("; "),
    )
}

fn obstruction_consistency() -> Outcome {
    let report = hasse(&theorem_a_edges()).map_err(|e| e.to_string())?;
    let mut bad: Vec<String> = report
        .edges
        .iter()
        .filter(|e| e.status != EdgeStatus::Verified || !e.der_omega_increases)
        .map(|e| format!("{} -> {}", e.source, e.target))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut trials = 0;
    for c in curves().iter().filter(|c| c.id.starts_with("appendix:")) {
        let omega = TwoForm::canonical(4);
        for _ in 0..3 {
            let mu = c.source_bracket().act_symplectic(&random_symplectic(&mut rng, 4));
            let lambda = c.target_bracket().act_symplectic(&random_symplectic(&mut rng, 4));
            trials += 1;
            if obstruction_checks(&mu, &lambda, &omega).map_err(|e| e.to_string())?.iter().any(|k| !k.passed) {
                bad.push(format!("{} on random orbit points", c.id));
            }
        }
    }
    if !report.transitivity_consistent {
        bad.push("closure contradicts the battery".into());
    }
    let suite = non_degeneration_suite(200, 1).map_err(|e| e.to_string())?;
    if !suite.passed() {
        bad.push("non-degeneration suite".into());
    }
    check(
        bad.is_empty(),
        format!("{} edges increase Der_omega; battery silent on {trials} random orbit pairs", report.edges.len()),
        bad.join(", "),
    )
}

fn equivariance() -> Outcome {
    let ids = ClassId::samples();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let omega = TwoForm::canonical(4);
    let mut bad = Vec::new();
    for k in 0..25 {
        let id = &ids[(k * 7) % ids.len()];
        let mu = bracket(id).map_err(|e| e.to_string())?;
        let c = [k as i64 % 3 - 1, 1, -2, k as i64 % 2, 3, -1].map(int);
        let g = random_symplectic(&mut rng, 4);
        let g_inv = symplectic_inverse(&g);
        let lhs = phi(&mu.act_symplectic(&g), &c, &omega).map_err(|e| e.to_string())?;
        if lhs != phi(&mu, &c, &omega).map_err(|e| e.to_string())?.act(&g, &g_inv) {
            bad.push(format!("phi at {id}"));
        }
        let h = random_invertible(&mut rng, 4);
        let h_inv = h.inverse().map_err(|e| e.to_string())?;
        let moved = mu.act_with_inverse(&h, &h_inv);
        if cmap(&moved.to_map()).map_err(|e| e.to_string())? != cmap(&mu.to_map()).map_err(|e| e.to_string())?.act(&h_inv) {
            bad.push(format!("C at {id}"));
        }
    }
    check(bad.is_empty(), "phi Sp-equivariant and C GL-equivariant on 25 samples each".into(), bad.join(", "))
}

fn main() {
    let criteria = [
        Criterion { name: "derivation dimensions", run: table_reproduction },
        Criterion { name: "catalog soundness", run: catalog_soundness },
        Criterion { name: "curve verification", run: appendix_verification },
        Criterion { name: "squeeze to r4(-1/2)", run: example_two },
        Criterion { name: "phi products and C signatures", run: example_one },
        Criterion { name: "Borel-orbit obstructions", run: example_three },
        Criterion { name: "Ricci of the representatives", run: lemma },
        Criterion { name: "degenerate Ricci on rho_t", run: remark },
        Criterion { name: "nondegenerate Ricci witnesses", run: theorem_b },
        Criterion { name: "obstruction consistency", run: obstruction_consistency },
        Criterion { name: "equivariance", run: equivariance },
    ];
    let failed = run_all(&criteria, &mut std::io::stdout()).expect("stdout");
    if failed > 0 {
        std::process::exit(1);
    }
}
