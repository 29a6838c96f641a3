//! Serializable reports assembled from the engine, one per front-end verb.

use serde::Serialize;

use crate::bracket::{Bracket, BracketFile, TwoForm};
use crate::catalog::{curve, curves, expected_for, make, rho, ClassId};
use crate::curvature::{einstein_check, find_degenerate_ricci_within, ricci, DegenerateRicci};
use crate::degeneration::hasse::{hasse, pair_statuses, theorem_a_edges, EdgeReport, HasseReport, PairStatus};
use crate::degeneration::suites::{non_degeneration_suite, NonDegenerationCheck};
use crate::degeneration::theorem_b::{theorem_b_search, ClassOutcome};
use crate::degeneration::{verify_curve, CurveReport};
use crate::error::Result;
use crate::invariants::{
    derivations, derived_dim, lower_central_series, nilpotent, orbit_dim, symplectic_derivations, unimodular,
    GroupKind,
};
use crate::linalg::Signature;
use crate::matrix::Matrix;
use crate::scalar::{format_rational, int, Rational};

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect()
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CatalogEntry {
    pub class: String,
    pub mu_index: usize,
    pub family: String,
    pub node: String,
    pub bracket: BracketFile,
}

/// Every sampled class, sorted by id.
pub fn catalog_entries() -> Result<Vec<CatalogEntry>> {
    let mut ids = ClassId::samples();
    ids.sort_by_key(|c| c.to_string());
    ids.iter()
        .map(|id| {
            let (mu, _) = make(id)?;
            Ok(CatalogEntry {
                class: id.to_string(),
                mu_index: id.mu_index(),
                family: id.family().to_string(),
                node: id.hasse_node(),
                bracket: BracketFile::from_bracket(&mu),
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Validation {
    pub subject: String,
    pub jacobi: bool,
    pub closed: bool,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.jacobi && self.closed
    }

    /// `Jacobi: OK, dω=0: OK` style summary.
    pub fn summary(&self) -> String {
        let ok = |b: bool| if b { "OK" } else { "FAIL" };
        format!("Jacobi: {}, dω=0: {}", ok(self.jacobi), ok(self.closed))
    }
}

pub fn validate(subject: &str, mu: &Bracket<Rational>, omega: &TwoForm<Rational>) -> Validation {
    Validation {
        subject: subject.to_string(),
        jacobi: mu.is_lie(),
        closed: mu.is_closed(omega),
    }
}

pub fn validate_class(id: &ClassId) -> Result<Validation> {
    let (mu, omega) = make(id)?;
    Ok(validate(&id.to_string(), &mu, &omega))
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct InvariantsReport {
    pub class: String,
    pub dim_der_omega: usize,
    pub dim_der: usize,
    pub tabulated: (usize, usize),
    pub matches_table: bool,
    pub sp_orbit_dim: usize,
    pub gl_orbit_dim: usize,
    pub unimodular: bool,
    pub nilpotent: bool,
    pub derived_dim: usize,
    pub lower_central_series: Vec<usize>,
}

pub fn invariants_report(id: &ClassId) -> Result<InvariantsReport> {
    let (mu, omega) = make(id)?;
    let dim_der_omega = symplectic_derivations(&mu, &omega)?.dim();
    let dim_der = derivations(&mu)?.dim();
    let e = expected_for(id);
    Ok(InvariantsReport {
        class: id.to_string(),
        dim_der_omega,
        dim_der,
        tabulated: (e.dim_der_omega, e.dim_der),
        matches_table: (dim_der_omega, dim_der) == (e.dim_der_omega, e.dim_der),
        sp_orbit_dim: orbit_dim(&mu, &omega, GroupKind::Symplectic)?,
        gl_orbit_dim: orbit_dim(&mu, &omega, GroupKind::GeneralLinear)?,
        unimodular: unimodular(&mu),
        nilpotent: nilpotent(&mu),
        derived_dim: derived_dim(&mu),
        lower_central_series: lower_central_series(&mu),
    })
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RicciReport {
    pub class: String,
    pub ricci_matrix: Vec<Vec<String>>,
    pub signature: Signature,
    pub scalar_curvature: String,
    pub einstein: Option<String>,
}

pub fn ricci_report(subject: &str, mu: &Bracket<Rational>) -> Result<RicciReport> {
    let t = ricci(mu)?;
    Ok(RicciReport {
        class: subject.to_string(),
        ricci_matrix: matrix_strings(t.ricci.matrix()),
        signature: t.ricci.signature(),
        scalar_curvature: format_rational(&t.scalar_curv),
        einstein: einstein_check(mu)?.as_ref().map(format_rational),
    })
}

pub fn ricci_report_for(id: &ClassId) -> Result<RicciReport> {
    ricci_report(&id.to_string(), &make(id)?.0)
}

/// Curve reports: one id (at one parameter) or the whole catalog.
pub fn degenerate_report(id: Option<&str>, param: Option<&Rational>) -> Result<Vec<CurveReport>> {
    match id {
        Some(id) => Ok(vec![verify_curve(&curve(id, param)?)]),
        None => {
            let mut all: Vec<CurveReport> = curves().iter().map(verify_curve).collect();
            all.sort_by(|a, b| (&a.curve, &a.source).cmp(&(&b.curve, &b.source)));
            Ok(all)
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct HasseSummary {
    #[serde(flatten)]
    pub report: HasseReport,
    pub pairs: Vec<PairStatus>,
}

pub fn hasse_summary() -> Result<HasseSummary> {
    let report = hasse(&theorem_a_edges())?;
    let pairs = pair_statuses(&report)?;
    Ok(HasseSummary { report, pairs })
}

/// `{edges, non_degenerations, theorem_b}`; each verb fills its own part.
#[derive(Clone, PartialEq, Debug, Serialize, Default)]
pub struct SuiteReport {
    pub edges: Vec<EdgeReport>,
    pub non_degenerations: Vec<NonDegenerationCheck>,
    pub theorem_b: Vec<ClassOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.edges.iter().all(|e| e.failure.is_none() && e.der_omega_increases)
            && self.non_degenerations.iter().all(|c| c.passed)
            && self.theorem_b.iter().all(ClassOutcome::passed)
    }
}

pub fn theorem_a_report(samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut edges = hasse(&theorem_a_edges())?.edges;
    edges.sort_by(|a, b| (&a.witness, &a.source).cmp(&(&b.witness, &b.source)));
    Ok(SuiteReport {
        edges,
        non_degenerations: non_degeneration_suite(samples, seed)?.checks,
        theorem_b: vec![],
    })
}

pub fn theorem_b_report(samples: usize, seed: u64, t_max: f64) -> Result<SuiteReport> {
    Ok(SuiteReport {
        theorem_b: theorem_b_search(samples, seed, t_max)?,
        ..SuiteReport::default()
    })
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RemarkReport {
    pub rho0: RicciReport,
    pub degenerate: DegenerateRicci,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.rho0.signature == Signature::new(0, 4, 0)
            && self.degenerate.signature_below == Signature::new(0, 4, 0)
            && self.degenerate.signature_above == Signature::new(1, 3, 0)
    }
}

/// `Ric(ρ₀)` and the first degenerate `Ric(ρ_t)` on `(0, 12)`.
pub fn remark_report(tol: f64) -> Result<RemarkReport> {
    Ok(RemarkReport {
        rho0: ricci_report("rho_0", &rho(&int(0)))?,
        degenerate: find_degenerate_ricci_within(rho, &int(0), &int(12), tol)?,
    })
}
