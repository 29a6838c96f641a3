//! Degeneration curves `t ↦ g_t ∈ Sp(4)` with exponential-polynomial
//! entries, and the rational one-parameter families used for curvature.

use serde::Serialize;

use super::{
    alpha_samples, beta_samples, bracket, delta_samples, lambda_samples_d4, lambda_samples_r2r2, ClassId,
    Sign,
};
use crate::bracket::{symplectic_inverse, Bracket};
use crate::error::{Error, ParseError, Result};
use crate::exppoly::ExpPoly;
use crate::matrix::Matrix;
use crate::scalar::{int, rat, Rational};

/// How a printed matrix must be read to give a working curve.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Erratum {
    /// The curve is the transpose of the printed matrix.
    Transposed,
    /// The printed matrix is `g_t⁻¹`.
    Inverted,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    None,
    Lambda,
    Beta,
    Alpha,
    Delta,
}

impl ParamKind {
    fn samples(self, id: &str) -> Vec<Option<Rational>> {
        let wrap = |v: Vec<Rational>| v.into_iter().map(Some).collect();
        match self {
            ParamKind::None => vec![None],
            ParamKind::Lambda if id.contains("r2r2") => wrap(lambda_samples_r2r2()),
            ParamKind::Lambda => wrap(lambda_samples_d4()),
            ParamKind::Beta => wrap(beta_samples()),
            ParamKind::Alpha => wrap(alpha_samples()),
            ParamKind::Delta => wrap(delta_samples()),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CurveSpec {
    pub id: String,
    pub source: ClassId,
    pub target: ClassId,
    /// As printed, rows first; column `j` is `g_t e_j`.
    pub matrix: Matrix<ExpPoly>,
    pub erratum: Option<Erratum>,
    pub note: Option<&'static str>,
}

impl CurveSpec {
    /// The matrix the degeneration actually uses.
    pub fn corrected_matrix(&self) -> Matrix<ExpPoly> {
        match self.erratum {
            None => self.matrix.clone(),
            Some(Erratum::Transposed) => self.matrix.transpose(),
            Some(Erratum::Inverted) => symplectic_inverse(&self.matrix),
        }
    }

    pub fn source_bracket(&self) -> Bracket<Rational> {
        bracket(&self.source).expect("curve sources are validated on construction")
    }

    pub fn target_bracket(&self) -> Bracket<Rational> {
        bracket(&self.target).expect("curve targets are validated on construction")
    }
}

type Term = (Rational, Rational);

fn z() -> Term {
    (int(0), int(0))
}

fn k(c: Rational) -> Term {
    (c, int(0))
}

/// `c · e^{r t}`.
fn x(c: Rational, r: Rational) -> Term {
    (c, r)
}

/// `e^{r t}`.
fn e(r: Rational) -> Term {
    (int(1), r)
}

fn grid(rows: [[Term; 4]; 4]) -> Matrix<ExpPoly> {
    Matrix::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(|(c, r)| ExpPoly::term(c, r)).collect())
            .collect(),
    )
}

/// `diag(1, e^{r t}, 1, e^{-r t})`.
fn squeeze(r: Rational) -> Matrix<ExpPoly> {
    grid([
        [k(int(1)), z(), z(), z()],
        [z(), e(r.clone()), z(), z()],
        [z(), z(), k(int(1)), z()],
        [z(), z(), z(), e(-r)],
    ])
}

struct Template {
    id: &'static str,
    param: ParamKind,
    erratum: Option<Erratum>,
    note: Option<&'static str>,
    build: fn(Option<&Rational>) -> Result<(ClassId, ClassId, Matrix<ExpPoly>)>,
}

fn need(p: Option<&Rational>) -> Rational {
    p.cloned().expect("parametrized template called with a parameter")
}

fn out_of_domain(class: &ClassId, constraint: &str) -> Error {
    Error::Domain {
        class: class.to_string(),
        constraint: constraint.to_string(),
    }
}

fn d4_lambda(l: &Rational) -> Matrix<ExpPoly> {
    let one = int(1);
    let m1 = l - &one;
    grid([
        [z(), k(int(-1)), z(), z()],
        [x(m1.clone(), int(2)), e(int(1)), z(), z()],
        [
            x(-(&m1 * &m1) / l, int(4)),
            x(&m1 * &m1 / (l * (int(2) * l - &one)), int(3)),
            x(m1.recip(), int(-1)),
            k(int(-1)),
        ],
        [z(), x(&m1 / l, int(2)), x(m1.recip(), int(-2)), z()],
    ])
}

fn d4_prime(sign: Sign, d: &Rational) -> Matrix<ExpPoly> {
    let q = int(4) + d * d;
    let s = sign.unit();
    grid([
        [x(-&q / int(4), rat(1, 2)), z(), z(), z()],
        [z(), e(rat(-1, 4)), z(), z()],
        [z(), x(-&q / int(4), rat(3, 4)), x(int(-4) / &q, rat(-1, 2)), z()],
        [x(&q * &q / int(16), rat(3, 2)), x(s * d / int(2), rat(1, 4)), z(), e(rat(1, 4))],
    ])
}

fn r4_beta(b: &Rational) -> Matrix<ExpPoly> {
    let bm = b - int(1);
    let bp = b + int(1);
    let half = rat(1, 2);
    grid([
        [z(), k(int(-1)), z(), z()],
        [x(bm.clone(), int(2)), e(int(1)), z(), z()],
        [
            x(&half * &bm * &bm * &bm / &bp, int(4)),
            x(&half * &bm * &bm / &bp, int(3)),
            x(bm.recip(), int(-1)),
            k(int(-1)),
        ],
        [
            x(&half * &bm * &bm * (b - int(3)) / &bp, int(3)),
            x(-&bm / &bp, int(2)),
            x(bm.recip(), int(-2)),
            z(),
        ],
    ])
}

fn r4_alpha(a: &Rational) -> Matrix<ExpPoly> {
    let ap = a + int(1);
    let am = a - int(1);
    let half = rat(1, 2);
    grid([
        [z(), k(int(-1)), z(), z()],
        [x(-&ap / a, int(2)), e(int(1)), z(), z()],
        [
            x(-&half * &ap * &ap * &ap / (a * a * &am), int(4)),
            x(&half * &ap * &ap / (a * &am), int(3)),
            x(-a / &ap, int(-1)),
            k(int(-1)),
        ],
        [
            x(-&half * &ap * &ap * (int(1) + int(3) * a) / (a * a * &am), int(3)),
            x(&ap / &am, int(2)),
            x(-a / &ap, int(-2)),
            z(),
        ],
    ])
}

fn r4_prime(sign: Sign, d: &Rational) -> Matrix<ExpPoly> {
    let p = d * d + int(1);
    let s = sign.unit();
    grid([
        [x(-&s * &p / d, rat(1, 2)), z(), z(), z()],
        [z(), e(rat(-1, 4)), z(), z()],
        [z(), x(-&p / (d * d), rat(3, 4)), x(-&s * d / &p, rat(-1, 2)), z()],
        [x(&s * &p * &p / (d * d * d), rat(3, 2)), x(-&s / d, rat(1, 4)), z(), e(rat(1, 4))],
    ])
}

fn h4_to_n4(sign: Sign) -> Matrix<ExpPoly> {
    let s = sign.unit();
    grid([
        [x(-&s * rat(1, 4), int(2)), z(), z(), z()],
        [z(), e(int(-1)), z(), z()],
        [z(), x(rat(-1, 4), int(3)), x(-&s * int(4), int(-2)), z()],
        [x(&s * rat(1, 16), int(6)), x(&s * rat(1, 2), int(1)), z(), e(int(1))],
    ])
}

fn r40_to_n4(sign: Sign) -> Matrix<ExpPoly> {
    let s = sign.unit();
    grid([
        [x(-s.clone(), int(2)), z(), z(), z()],
        [z(), e(int(-1)), z(), z()],
        [z(), x(int(-1), int(3)), x(-s.clone(), int(-2)), z()],
        [x(s.clone(), int(6)), x(-s, int(1)), z(), e(int(1))],
    ])
}

const TEMPLATES: &[Template] = &[
    Template {
        id: "appendix:d42w2->r4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::D42W2, ClassId::R4Alpha { alpha: rat(-1, 2) }, squeeze(rat(1, 2)))),
    },
    Template {
        id: "appendix:d42w3->r4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::D42W3, ClassId::R4Alpha { alpha: rat(-1, 2) }, squeeze(rat(1, 2)))),
    },
    Template {
        id: "appendix:d42w3->d42w1",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [z(), k(int(1)), z(), z()],
                [z(), z(), x(int(-1), int(-1)), z()],
                [z(), z(), k(int(1)), k(int(1))],
                [e(int(1)), x(int(-1), int(1)), z(), z()],
            ]);
            Ok((ClassId::D42W3, ClassId::D42W1, g))
        },
    },
    Template {
        id: "appendix:r2r2->d41w1",
        param: ParamKind::Lambda,
        erratum: None,
        note: None,
        build: |p| {
            let g = grid([
                [z(), k(int(1)), z(), z()],
                [z(), z(), e(int(-1)), z()],
                [z(), z(), k(int(1)), k(int(1))],
                [x(int(-1), int(1)), e(int(1)), z(), z()],
            ]);
            Ok((ClassId::R2r2 { lambda: need(p) }, ClassId::D41W1, g))
        },
    },
    Template {
        id: "appendix:r2r2->rr30",
        param: ParamKind::Lambda,
        erratum: None,
        note: None,
        build: |p| Ok((ClassId::R2r2 { lambda: need(p) }, ClassId::Rr30, squeeze(int(1)))),
    },
    Template {
        id: "appendix:r2p->d41w1",
        param: ParamKind::None,
        erratum: Some(Erratum::Transposed),
        note: Some("as printed, g_t . mu diverges in the (3,4;2) entry like -e^t; the transpose converges"),
        build: |_| {
            let g = grid([
                [k(int(1)), z(), z(), z()],
                [z(), z(), z(), e(rat(1, 2))],
                [z(), z(), k(int(1)), z()],
                [z(), x(int(-1), rat(-1, 2)), z(), z()],
            ]);
            Ok((ClassId::R2p, ClassId::D41W1, g))
        },
    },
    Template {
        id: "appendix:d41w2->d41w1",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::D41W2, ClassId::D41W1, squeeze(int(-1)))),
    },
    Template {
        id: "appendix:d41w2->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [e(int(1)), z(), z(), z()],
                [z(), e(int(2)), z(), z()],
                [z(), e(int(4)), e(int(-1)), z()],
                [e(int(3)), e(int(3)), z(), e(int(-2))],
            ]);
            Ok((ClassId::D41W2, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:d41w1->rh3",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [x(int(-1), int(1)), z(), z(), z()],
                [z(), k(int(1)), z(), z()],
                [z(), x(int(-1), int(1)), x(int(-1), int(-1)), z()],
                [e(int(2)), z(), z(), k(int(1))],
            ]);
            Ok((ClassId::D41W1, ClassId::Rh3, g))
        },
    },
    Template {
        id: "appendix:rr30->rh3",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [e(int(1)), z(), z(), z()],
                [z(), k(int(1)), z(), z()],
                [z(), x(int(-1), int(1)), e(int(-1)), z()],
                [x(int(-1), int(2)), z(), z(), k(int(1))],
            ]);
            Ok((ClassId::Rr30, ClassId::Rh3, g))
        },
    },
    Template {
        id: "appendix:h4p->d4half",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::H4(Sign::Plus), ClassId::d4half(), squeeze(rat(-1, 2)))),
    },
    Template {
        id: "appendix:h4p->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::H4(Sign::Plus), ClassId::N4, h4_to_n4(Sign::Plus))),
    },
    Template {
        id: "appendix:h4m->d4half",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::H4(Sign::Minus), ClassId::d4half(), squeeze(rat(-1, 2)))),
    },
    Template {
        id: "appendix:h4m->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::H4(Sign::Minus), ClassId::N4, h4_to_n4(Sign::Minus))),
    },
    Template {
        id: "appendix:r40p->rr30",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::R40(Sign::Plus), ClassId::Rr30, squeeze(rat(-1, 2)))),
    },
    Template {
        id: "appendix:r40p->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::R40(Sign::Plus), ClassId::N4, r40_to_n4(Sign::Plus))),
    },
    Template {
        id: "appendix:r40m->rr30",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::R40(Sign::Minus), ClassId::Rr30, squeeze(rat(-1, 2)))),
    },
    Template {
        id: "appendix:r40m->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::R40(Sign::Minus), ClassId::N4, r40_to_n4(Sign::Minus))),
    },
    Template {
        id: "appendix:d42w1->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [z(), k(int(-1)), z(), z()],
                [e(int(2)), e(int(1)), z(), z()],
                [z(), x(rat(1, 6), int(3)), e(int(-1)), k(int(-1))],
                [x(rat(1, 2), int(3)), x(rat(1, 2), int(2)), e(int(-2)), z()],
            ]);
            Ok((ClassId::D42W1, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:r4m1->r4m1m1",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [k(int(1)), z(), z(), z()],
                [z(), z(), z(), x(int(-1), int(1))],
                [z(), z(), k(int(1)), z()],
                [z(), e(int(-1)), z(), z()],
            ]);
            Ok((ClassId::R4M1, ClassId::r4m1m1(), g))
        },
    },
    Template {
        id: "appendix:r4m1->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [x(int(-2), int(1)), z(), z(), z()],
                [z(), x(int(-4), int(2)), z(), z()],
                [z(), x(int(-4), int(4)), x(rat(-1, 2), int(-1)), z()],
                [x(int(-2), int(3)), x(int(4), int(3)), z(), x(rat(-1, 4), int(-2))],
            ]);
            Ok((ClassId::R4M1, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:d4half->rh3",
        param: ParamKind::None,
        erratum: Some(Erratum::Inverted),
        note: Some("the printed matrix is the inverse of a working curve; as printed, entries diverge"),
        build: |_| {
            let g = grid([
                [e(int(-1)), z(), z(), z()],
                [z(), k(int(1)), z(), z()],
                [z(), x(int(-2), int(2)), e(int(1)), z()],
                [x(int(-2), int(1)), z(), z(), k(int(1))],
            ]);
            Ok((ClassId::d4half(), ClassId::Rh3, g))
        },
    },
    Template {
        id: "appendix:r4m1m1->rh3",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [z(), k(int(1)), z(), z()],
                [x(int(-2), int(1)), z(), z(), z()],
                [z(), x(int(-1), int(1)), z(), k(int(1))],
                [z(), z(), x(rat(-1, 2), int(-1)), z()],
            ]);
            Ok((ClassId::r4m1m1(), ClassId::Rh3, g))
        },
    },
    Template {
        id: "appendix:n4->rh3",
        param: ParamKind::None,
        erratum: None,
        note: Some("target label is printed without its index; read as rh3"),
        build: |_| {
            let g = grid([
                [e(int(1)), z(), z(), z()],
                [z(), e(int(1)), z(), z()],
                [z(), z(), e(int(-1)), z()],
                [z(), x(int(-1), int(2)), z(), e(int(-1))],
            ]);
            Ok((ClassId::N4, ClassId::Rh3, g))
        },
    },
    Template {
        id: "appendix:rh3->a4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| Ok((ClassId::Rh3, ClassId::A4, squeeze(int(1)))),
    },
    Template {
        id: "appendix:d4->n4",
        param: ParamKind::Lambda,
        erratum: None,
        note: None,
        build: |p| {
            let lambda = need(p);
            let source = ClassId::D4 { lambda: lambda.clone() };
            if lambda == rat(1, 2) {
                return Err(out_of_domain(&source, "lambda != 1/2 for this curve"));
            }
            let g = d4_lambda(&lambda);
            Ok((source, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:d4pp->n4",
        param: ParamKind::Delta,
        erratum: None,
        note: None,
        build: |p| {
            let delta = need(p);
            let g = d4_prime(Sign::Plus, &delta);
            Ok((ClassId::D4p { delta, sign: Sign::Plus }, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:d4pm->n4",
        param: ParamKind::Delta,
        erratum: None,
        note: None,
        build: |p| {
            let delta = need(p);
            let g = d4_prime(Sign::Minus, &delta);
            Ok((ClassId::D4p { delta, sign: Sign::Minus }, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:r4beta->n4",
        param: ParamKind::Beta,
        erratum: None,
        note: None,
        build: |p| {
            let beta = need(p);
            let source = ClassId::R4M1Beta { beta: beta.clone() };
            if beta == int(-1) {
                return Err(out_of_domain(&source, "beta != -1 for this curve"));
            }
            let g = r4_beta(&beta);
            Ok((source, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:r4alpha->n4",
        param: ParamKind::Alpha,
        erratum: None,
        note: None,
        build: |p| {
            let alpha = need(p);
            let g = r4_alpha(&alpha);
            Ok((ClassId::R4Alpha { alpha }, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:r4p0p->n4",
        param: ParamKind::Delta,
        erratum: None,
        note: None,
        build: |p| {
            let delta = need(p);
            let g = r4_prime(Sign::Plus, &delta);
            Ok((ClassId::R4p0 { delta, sign: Sign::Plus }, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:r4p0m->n4",
        param: ParamKind::Delta,
        erratum: None,
        note: None,
        build: |p| {
            let delta = need(p);
            let g = r4_prime(Sign::Minus, &delta);
            Ok((ClassId::R4p0 { delta, sign: Sign::Minus }, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:rr3m1->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [z(), k(int(-1)), z(), z()],
                [x(int(-1), int(2)), e(int(1)), z(), z()],
                [z(), x(rat(1, 2), int(3)), x(int(-1), int(-1)), k(int(-1))],
                [x(int(-1), int(3)), e(int(2)), x(int(-1), int(-2)), z()],
            ]);
            Ok((ClassId::Rr3M1, ClassId::N4, g))
        },
    },
    Template {
        id: "appendix:rr3p0->n4",
        param: ParamKind::None,
        erratum: None,
        note: None,
        build: |_| {
            let g = grid([
                [e(rat(1, 2)), z(), z(), z()],
                [z(), e(rat(-1, 4)), z(), z()],
                [z(), x(int(-1), rat(3, 4)), e(rat(-1, 2)), z()],
                [x(int(-1), rat(3, 2)), z(), z(), e(rat(1, 4))],
            ]);
            Ok((ClassId::Rr3p0, ClassId::N4, g))
        },
    },
    Template {
        id: "ex2:xi_u",
        param: ParamKind::None,
        erratum: None,
        note: Some("the curve variable is u; g(u) . mu18 has a single u-dependent entry e^{-2u} e4"),
        build: |_| Ok((ClassId::D42W2, ClassId::R4Alpha { alpha: rat(-1, 2) }, squeeze(int(1)))),
    },
];

/// Every curve id and the kind of parameter it takes.
pub fn curve_ids() -> Vec<(&'static str, ParamKind)> {
    TEMPLATES.iter().map(|t| (t.id, t.param)).collect()
}

/// Instantiates a curve; `param` is required exactly for parametrized ids.
/// `->` may be written `→`.
pub fn curve(id: &str, param: Option<&Rational>) -> Result<CurveSpec> {
    let normalized = id.replace('→', "->");
    let template = TEMPLATES
        .iter()
        .find(|t| t.id == normalized)
        .ok_or_else(|| Error::Parse(ParseError::CurveId(id.to_string())))?;
    let param = match (template.param, param) {
        (ParamKind::None, None) => None,
        (ParamKind::None, Some(_)) => {
            return Err(Error::Domain {
                class: id.to_string(),
                constraint: "curve takes no parameter".into(),
            })
        }
        (_, None) => {
            return Err(Error::Domain {
                class: id.to_string(),
                constraint: "curve needs a parameter".into(),
            })
        }
        (_, Some(p)) => Some(p),
    };
    if let Some(p) = param {
        // Validate through the source class before any division by p.
        let probe = match template.param {
            ParamKind::Lambda if template.id.contains("r2r2") => ClassId::R2r2 { lambda: p.clone() },
            ParamKind::Lambda => ClassId::D4 { lambda: p.clone() },
            ParamKind::Beta => ClassId::R4M1Beta { beta: p.clone() },
            ParamKind::Alpha => ClassId::R4Alpha { alpha: p.clone() },
            ParamKind::Delta => ClassId::D4p {
                delta: p.clone(),
                sign: Sign::Plus,
            },
            ParamKind::None => unreachable!("checked above"),
        };
        probe.validate()?;
    }
    let (source, target, matrix) = (template.build)(param)?;
    Ok(CurveSpec {
        id: template.id.to_string(),
        source,
        target,
        matrix,
        erratum: template.erratum,
        note: template.note,
    })
}

/// Every curve, parametrized ones at each sample value.
pub fn curves() -> Vec<CurveSpec> {
    TEMPLATES
        .iter()
        .flat_map(|t| {
            t.param
                .samples(t.id)
                .into_iter()
                .map(move |p| curve(t.id, p.as_ref()).expect("samples lie in the domain"))
        })
        .collect()
}

/// `diag(1/t, 1, t, 1)`; panics at `t = 0`.
pub fn lemma_g(t: &Rational) -> Matrix<Rational> {
    Matrix::diagonal(vec![t.recip(), int(1), t.clone(), int(1)])
}

/// `e1 ↦ e1 - t e4`, `e2 ↦ e2 - t e3`, fixing `e3` and `e4`.
pub fn lemma_h(t: &Rational) -> Matrix<Rational> {
    let mut h = Matrix::identity(4);
    h[(3, 0)] = -t.clone();
    h[(2, 1)] = -t.clone();
    h
}

/// `ξ_t = g(t)·μ7`.
pub fn xi(t: &Rational) -> Bracket<Rational> {
    bracket(&ClassId::N4).expect("n4").act_symplectic(&lemma_g(t))
}

/// `ρ_t = h(t)·μ20(1/2)`.
pub fn rho(t: &Rational) -> Bracket<Rational> {
    bracket(&ClassId::d4half()).expect("d4 at 1/2").act_symplectic(&lemma_h(t))
}

/// `ϱ_t = h(t)·μ15`.
pub fn varrho(t: &Rational) -> Bracket<Rational> {
    bracket(&ClassId::D41W1).expect("d4_1:w1").act_symplectic(&lemma_h(t))
}
