//! The classification of 4-dimensional symplectic Lie algebras up to
//! symplectomorphism, as constructors for `(μ, ω_cn)` on `R^4`.

pub mod curves;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::bracket::{Bracket, TwoForm};
use crate::error::{Error, ParseError, Result};
use crate::scalar::{format_rational, int, parse_rational, rat, Rational};

pub use curves::{
    curve, curve_ids, curves, lemma_g, lemma_h, rho, varrho, xi, CurveSpec, Erratum, ParamKind,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }

    /// `+1` or `-1`.
    pub fn unit(self) -> Rational {
        match self {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        }
    }
}

/// One orbit class `(𝔤, ω)`, with its parameter where the class is a
/// family.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ClassId {
    A4,
    Rh3,
    Rr30,
    Rr3M1,
    Rr3p0,
    R2r2 { lambda: Rational },
    R2p,
    N4,
    R40(Sign),
    R4M1,
    R4M1Beta { beta: Rational },
    R4Alpha { alpha: Rational },
    R4p0 { delta: Rational, sign: Sign },
    D41W1,
    D41W2,
    D42W1,
    D42W2,
    D42W3,
    D4 { lambda: Rational },
    D4p { delta: Rational, sign: Sign },
    H4(Sign),
}

/// Sample parameters used wherever a family must be checked exhaustively.
pub fn lambda_samples_r2r2() -> Vec<Rational> {
    vec![int(0), int(1), rat(7, 3)]
}

/// `λ = 0, 1` lie outside the `d4` domain, so its samples differ from
/// those of `r2r2`.
pub fn lambda_samples_d4() -> Vec<Rational> {
    vec![rat(3, 4), int(3), rat(7, 3)]
}

pub fn beta_samples() -> Vec<Rational> {
    vec![rat(-1, 2), int(0), rat(1, 2)]
}

pub fn alpha_samples() -> Vec<Rational> {
    vec![rat(-1, 4), rat(-1, 2), rat(-3, 4)]
}

pub fn delta_samples() -> Vec<Rational> {
    vec![int(1), int(2), rat(5, 2)]
}

impl ClassId {
    /// `r4_m1_beta` at `β = -1`, whose orbit has a larger stabilizer.
    pub fn r4m1m1() -> Self {
        ClassId::R4M1Beta { beta: int(-1) }
    }

    /// `d4` at `λ = 1/2`.
    pub fn d4half() -> Self {
        ClassId::D4 { lambda: rat(1, 2) }
    }

    /// Index `i` of the law `μ_i`.
    pub fn mu_index(&self) -> usize {
        match self {
            ClassId::A4 => 0,
            ClassId::Rh3 => 1,
            ClassId::Rr30 => 2,
            ClassId::Rr3M1 => 3,
            ClassId::Rr3p0 => 4,
            ClassId::R2r2 { .. } => 5,
            ClassId::R2p => 6,
            ClassId::N4 => 7,
            ClassId::R40(Sign::Plus) => 8,
            ClassId::R40(Sign::Minus) => 9,
            ClassId::R4M1 => 10,
            ClassId::R4M1Beta { .. } => 11,
            ClassId::R4Alpha { .. } => 12,
            ClassId::R4p0 { sign: Sign::Plus, .. } => 13,
            ClassId::R4p0 { sign: Sign::Minus, .. } => 14,
            ClassId::D41W1 => 15,
            ClassId::D41W2 => 16,
            ClassId::D42W1 => 17,
            ClassId::D42W2 => 18,
            ClassId::D42W3 => 19,
            ClassId::D4 { .. } => 20,
            ClassId::D4p { sign: Sign::Plus, .. } => 21,
            ClassId::D4p { sign: Sign::Minus, .. } => 22,
            ClassId::H4(Sign::Plus) => 23,
            ClassId::H4(Sign::Minus) => 24,
        }
    }

    /// Family name without parameters, the first token of the string form.
    pub fn family(&self) -> &'static str {
        match self {
            ClassId::A4 => "a4",
            ClassId::Rh3 => "rh3",
            ClassId::Rr30 => "rr3_0",
            ClassId::Rr3M1 => "rr3_m1",
            ClassId::Rr3p0 => "rr3p_0",
            ClassId::R2r2 { .. } => "r2r2",
            ClassId::R2p => "r2p",
            ClassId::N4 => "n4",
            ClassId::R40(_) => "r4_0",
            ClassId::R4M1 => "r4_m1",
            ClassId::R4M1Beta { .. } => "r4_m1_beta",
            ClassId::R4Alpha { .. } => "r4_alpha",
            ClassId::R4p0 { .. } => "r4p_0",
            ClassId::D41W1 | ClassId::D41W2 => "d4_1",
            ClassId::D42W1 | ClassId::D42W2 | ClassId::D42W3 => "d4_2",
            ClassId::D4 { .. } => "d4",
            ClassId::D4p { .. } => "d4p",
            ClassId::H4(_) => "h4",
        }
    }

    /// The family parameter, if any.
    pub fn parameter(&self) -> Option<(&'static str, &Rational)> {
        match self {
            ClassId::R2r2 { lambda } | ClassId::D4 { lambda } => Some(("lambda", lambda)),
            ClassId::R4M1Beta { beta } => Some(("beta", beta)),
            ClassId::R4Alpha { alpha } => Some(("alpha", alpha)),
            ClassId::R4p0 { delta, .. } | ClassId::D4p { delta, .. } => Some(("delta", delta)),
            _ => None,
        }
    }

    /// Node name in the orbit-closure diagram. Families collapse to one
    /// node except at the parameter values that behave differently.
    pub fn hasse_node(&self) -> String {
        let special = match self {
            ClassId::R4M1Beta { beta } => *beta == int(-1),
            ClassId::R4Alpha { alpha } => *alpha == rat(-1, 2),
            ClassId::D4 { lambda } => *lambda == rat(1, 2),
            _ => false,
        };
        if special || self.parameter().is_none() {
            return self.to_string();
        }
        let mut out = self.family().to_string();
        if let Some((key, _)) = self.parameter() {
            out.push(':');
            out.push_str(key);
        }
        match self {
            ClassId::R4p0 { sign, .. } | ClassId::D4p { sign, .. } => {
                out.push(':');
                out.push_str(sign.as_str());
            }
            _ => {}
        }
        out
    }

    /// Checks the parameter against the family's domain.
    pub fn validate(&self) -> Result<()> {
        let fail = |constraint: &str| {
            Err(Error::Domain {
                class: self.to_string(),
                constraint: constraint.to_string(),
            })
        };
        match self {
            ClassId::R2r2 { lambda } if *lambda < Rational::zero() => fail("lambda >= 0"),
            ClassId::R4M1Beta { beta } if *beta < int(-1) || *beta >= int(1) => fail("-1 <= beta < 1"),
            ClassId::R4Alpha { alpha } if *alpha <= int(-1) || *alpha >= Rational::zero() => {
                fail("-1 < alpha < 0")
            }
            ClassId::R4p0 { delta, .. } | ClassId::D4p { delta, .. } if *delta <= Rational::zero() => {
                fail("delta > 0")
            }
            ClassId::D4 { lambda } if *lambda < rat(1, 2) => fail("lambda >= 1/2"),
            ClassId::D4 { lambda } if *lambda == int(1) || *lambda == int(2) => fail("lambda != 1, 2"),
            _ => Ok(()),
        }
    }

    /// Every class, with each family at its sample parameters and the
    /// distinguished parameter values as separate entries.
    pub fn samples() -> Vec<ClassId> {
        let mut out = vec![ClassId::A4, ClassId::Rh3, ClassId::Rr30, ClassId::Rr3M1, ClassId::Rr3p0];
        out.extend(lambda_samples_r2r2().into_iter().map(|lambda| ClassId::R2r2 { lambda }));
        out.extend([ClassId::R2p, ClassId::N4, ClassId::R40(Sign::Plus), ClassId::R40(Sign::Minus), ClassId::R4M1]);
        out.extend(beta_samples().into_iter().map(|beta| ClassId::R4M1Beta { beta }));
        out.push(ClassId::r4m1m1());
        out.extend(alpha_samples().into_iter().map(|alpha| ClassId::R4Alpha { alpha }));
        for sign in [Sign::Plus, Sign::Minus] {
            out.extend(delta_samples().into_iter().map(|delta| ClassId::R4p0 { delta, sign }));
        }
        out.extend([ClassId::D41W1, ClassId::D41W2, ClassId::D42W1, ClassId::D42W2, ClassId::D42W3]);
        out.extend(lambda_samples_d4().into_iter().map(|lambda| ClassId::D4 { lambda }));
        out.push(ClassId::d4half());
        for sign in [Sign::Plus, Sign::Minus] {
            out.extend(delta_samples().into_iter().map(|delta| ClassId::D4p { delta, sign }));
        }
        out.extend([ClassId::H4(Sign::Plus), ClassId::H4(Sign::Minus)]);
        out
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        match self {
            ClassId::D41W1 | ClassId::D42W1 => write!(f, ":w1")?,
            ClassId::D41W2 | ClassId::D42W2 => write!(f, ":w2")?,
            ClassId::D42W3 => write!(f, ":w3")?,
            _ => {}
        }
        if let Some((key, value)) = self.parameter() {
            write!(f, ":{key}={}", format_rational(value))?;
        }
        match self {
            ClassId::R40(sign) | ClassId::H4(sign) => write!(f, ":{}", sign.as_str())?,
            ClassId::R4p0 { sign, .. } | ClassId::D4p { sign, .. } => write!(f, ":{}", sign.as_str())?,
            _ => {}
        }
        Ok(())
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `muN` aliases, expanded to the canonical family plus fixed tags.
const MU_ALIASES: [&str; 25] = [
    "a4", "rh3", "rr3_0", "rr3_m1", "rr3p_0", "r2r2", "r2p", "n4", "r4_0:plus", "r4_0:minus",
    "r4_m1", "r4_m1_beta", "r4_alpha", "r4p_0:plus", "r4p_0:minus", "d4_1:w1", "d4_1:w2",
    "d4_2:w1", "d4_2:w2", "d4_2:w3", "d4", "d4p:plus", "d4p:minus", "h4:plus", "h4:minus",
];

impl FromStr for ClassId {
    type Err = ParseError;

    /// Grammar: `family(:tag|:key=p/q)*`, tags and keys in any order;
    /// `muN` may replace the family. `r4_m1m1` and `d4_half` name the
    /// distinguished members of their families.
    fn from_str(input: &str) -> std::result::Result<Self, ParseError> {
        let bad = |why: &str| ParseError::ClassId(input.to_string(), why.to_string());
        let mut tokens = input.trim().split(':');
        let head = tokens.next().unwrap_or_default();
        let mut expanded: Vec<String> = Vec::new();
        if let Some(n) = head.strip_prefix("mu").and_then(|n| n.parse::<usize>().ok()) {
            let alias = MU_ALIASES.get(n).ok_or_else(|| bad("no such law index"))?;
            expanded.extend(alias.split(':').map(str::to_string));
        } else {
            match head {
                "r4_m1m1" => expanded.extend(["r4_m1_beta".into(), "beta=-1".into()]),
                "d4_half" => expanded.extend(["d4".into(), "lambda=1/2".into()]),
                _ => expanded.push(head.to_string()),
            }
        }
        expanded.extend(tokens.map(str::to_string));

        let family = expanded[0].as_str();
        let mut sign = None;
        let mut w = None;
        let mut param: Option<(String, Rational)> = None;
        for token in &expanded[1..] {
            match token.as_str() {
                "plus" | "+" => sign = Some(Sign::Plus),
                "minus" | "-" => sign = Some(Sign::Minus),
                "w1" => w = Some(1),
                "w2" => w = Some(2),
                "w3" => w = Some(3),
                other => {
                    let (key, value) = other.split_once('=').ok_or_else(|| bad("unrecognized token"))?;
                    if param.is_some() {
                        return Err(bad("more than one parameter"));
                    }
                    let value = parse_rational(value).map_err(|_| bad("parameter is not a rational"))?;
                    param = Some((key.to_string(), value));
                }
            }
        }
        let take = |key: &str| -> std::result::Result<Rational, ParseError> {
            match &param {
                Some((k, v)) if k == key => Ok(v.clone()),
                Some((k, _)) => Err(bad(&format!("expected `{key}=`, found `{k}=`"))),
                None => Err(bad(&format!("missing `{key}=`"))),
            }
        };
        let need_sign = || sign.ok_or_else(|| bad("missing `plus` or `minus`"));
        let no_extras = |id: ClassId, sign_ok: bool, w_ok: bool| {
            if (!sign_ok && sign.is_some()) || (!w_ok && w.is_some()) {
                return Err(bad("unexpected tag"));
            }
            if id.parameter().is_none() && param.is_some() {
                return Err(bad("family takes no parameter"));
            }
            Ok(id)
        };
        match family {
            "a4" => no_extras(ClassId::A4, false, false),
            "rh3" => no_extras(ClassId::Rh3, false, false),
            "rr3_0" => no_extras(ClassId::Rr30, false, false),
            "rr3_m1" => no_extras(ClassId::Rr3M1, false, false),
            "rr3p_0" => no_extras(ClassId::Rr3p0, false, false),
            "r2r2" => no_extras(ClassId::R2r2 { lambda: take("lambda")? }, false, false),
            "r2p" => no_extras(ClassId::R2p, false, false),
            "n4" => no_extras(ClassId::N4, false, false),
            "r4_0" => no_extras(ClassId::R40(need_sign()?), true, false),
            "r4_m1" => no_extras(ClassId::R4M1, false, false),
            "r4_m1_beta" => no_extras(ClassId::R4M1Beta { beta: take("beta")? }, false, false),
            "r4_alpha" => no_extras(ClassId::R4Alpha { alpha: take("alpha")? }, false, false),
            "r4p_0" => no_extras(
                ClassId::R4p0 {
                    delta: take("delta")?,
                    sign: need_sign()?,
                },
                true,
                false,
            ),
            "d4_1" => match w {
                Some(1) => no_extras(ClassId::D41W1, false, true),
                Some(2) => no_extras(ClassId::D41W2, false, true),
                _ => Err(bad("d4_1 needs `w1` or `w2`")),
            },
            "d4_2" => match w {
                Some(1) => no_extras(ClassId::D42W1, false, true),
                Some(2) => no_extras(ClassId::D42W2, false, true),
                Some(3) => no_extras(ClassId::D42W3, false, true),
                _ => Err(bad("d4_2 needs `w1`, `w2` or `w3`")),
            },
            "d4" => no_extras(ClassId::D4 { lambda: take("lambda")? }, false, false),
            "d4p" => no_extras(
                ClassId::D4p {
                    delta: take("delta")?,
                    sign: need_sign()?,
                },
                true,
                false,
            ),
            "h4" => no_extras(ClassId::H4(need_sign()?), true, false),
            _ => Err(bad("unknown family")),
        }
    }
}

type Entry = (usize, usize, usize, Rational);

fn entries_of(id: &ClassId) -> Vec<Entry> {
    let one = || int(1);
    let half = || rat(1, 2);
    match id {
        ClassId::A4 => vec![],
        ClassId::Rh3 => vec![(1, 2, 3, one())],
        ClassId::Rr30 => vec![(1, 3, 3, one())],
        ClassId::Rr3M1 => vec![(1, 2, 2, int(-1)), (1, 4, 4, one())],
        ClassId::Rr3p0 => vec![(1, 2, 4, one()), (1, 4, 2, int(-1))],
        ClassId::R2r2 { lambda } => vec![(1, 2, 3, -lambda.clone()), (1, 3, 3, one()), (2, 4, 4, one())],
        ClassId::R2p => vec![(1, 3, 3, one()), (1, 4, 4, one()), (2, 3, 4, int(-1)), (2, 4, 3, one())],
        ClassId::N4 => vec![(1, 2, 4, one()), (1, 4, 3, one())],
        ClassId::R40(sign) => vec![(1, 3, 3, one()), (1, 4, 2, sign.unit())],
        ClassId::R4M1 => vec![(1, 2, 2, one()), (1, 3, 3, int(-1)), (1, 4, 3, int(-1)), (1, 4, 4, int(-1))],
        ClassId::R4M1Beta { beta } => vec![(1, 2, 2, int(-1)), (1, 3, 3, beta.clone()), (1, 4, 4, one())],
        ClassId::R4Alpha { alpha } => vec![(1, 2, 2, int(-1)), (1, 3, 3, -alpha.recip()), (1, 4, 4, one())],
        ClassId::R4p0 { delta, sign } => {
            let s = sign.unit();
            vec![(1, 2, 4, -&s * delta), (1, 3, 3, one()), (1, 4, 2, &s * delta)]
        }
        ClassId::D41W1 => vec![(1, 2, 2, one()), (1, 3, 3, one()), (2, 4, 3, one())],
        ClassId::D41W2 => vec![(1, 2, 2, one()), (1, 3, 3, one()), (1, 4, 3, one()), (2, 4, 3, one())],
        ClassId::D42W1 => vec![(1, 2, 2, int(2)), (1, 3, 3, one()), (1, 4, 4, int(-1)), (2, 4, 3, one())],
        ClassId::D42W2 | ClassId::D42W3 => {
            let c = if *id == ClassId::D42W2 { one() } else { int(-1) };
            vec![(1, 2, 2, int(-1)), (1, 3, 3, int(2)), (1, 4, 4, one()), (2, 3, 4, c)]
        }
        ClassId::D4 { lambda } => vec![
            (1, 2, 2, lambda.clone()),
            (1, 3, 3, one()),
            (1, 4, 4, Rational::one() - lambda),
            (2, 4, 3, one()),
        ],
        ClassId::D4p { delta, sign } => {
            let d = sign.unit() * delta;
            vec![
                (1, 2, 2, &d * half()),
                (1, 2, 4, int(-1)),
                (1, 3, 3, d.clone()),
                (1, 4, 2, one()),
                (1, 4, 4, &d * half()),
                (2, 4, 3, d),
            ]
        }
        ClassId::H4(sign) => vec![
            (1, 2, 2, half()),
            (1, 3, 3, one()),
            (1, 4, 2, sign.unit()),
            (1, 4, 4, half()),
            (2, 4, 3, one()),
        ],
    }
}

/// The law `μ_i` of the class with the canonical form. Fails on a
/// parameter outside the family's domain.
pub fn make(id: &ClassId) -> Result<(Bracket<Rational>, TwoForm<Rational>)> {
    id.validate()?;
    let mu = Bracket::from_entries(4, &entries_of(id))?;
    Ok((mu, TwoForm::canonical(4)))
}

/// Shorthand for `make(id)?.0`.
pub fn bracket(id: &ClassId) -> Result<Bracket<Rational>> {
    make(id).map(|(mu, _)| mu)
}

/// `(dim Der_ω, dim Der)` as tabulated for the class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExpectedInvariants {
    pub class: ClassId,
    pub dim_der_omega: usize,
    pub dim_der: usize,
}

pub fn expected_for(id: &ClassId) -> ExpectedInvariants {
    let (dim_der_omega, dim_der) = match id {
        ClassId::D42W2 | ClassId::D42W3 => (1, 5),
        ClassId::R2r2 { .. } | ClassId::R2p => (2, 4),
        ClassId::D4 { lambda } if *lambda == rat(1, 2) => (4, 7),
        ClassId::D4 { .. } | ClassId::D4p { .. } | ClassId::D42W1 | ClassId::H4(_) | ClassId::D41W2 => (2, 5),
        ClassId::R4M1Beta { beta } if *beta == int(-1) => (3, 8),
        ClassId::R4M1Beta { .. }
        | ClassId::R4Alpha { .. }
        | ClassId::R4p0 { .. }
        | ClassId::R40(_)
        | ClassId::R4M1
        | ClassId::Rr3M1
        | ClassId::Rr3p0 => (2, 6),
        ClassId::D41W1 => (3, 5),
        ClassId::N4 => (3, 7),
        ClassId::Rr30 => (4, 8),
        ClassId::Rh3 => (5, 10),
        ClassId::A4 => (10, 16),
    };
    ExpectedInvariants {
        class: id.clone(),
        dim_der_omega,
        dim_der,
    }
}

/// Expected invariants for every sampled class.
pub fn expected_invariants() -> Vec<ExpectedInvariants> {
    ClassId::samples().iter().map(expected_for).collect()
}

/// A closed symplectic law on `R^6`: `[e1,e3]=e3, [e1,e6]=-e6,
/// [e2,e4]=e5, [e4,e5]=e2`.
pub fn tau6() -> (Bracket<Rational>, TwoForm<Rational>) {
    let mu = Bracket::from_entries(
        6,
        &[(1, 3, 3, int(1)), (1, 6, 6, int(-1)), (2, 4, 5, int(1)), (4, 5, 2, int(1))],
    )
    .expect("valid indices");
    (mu, TwoForm::canonical(6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_and_abelian() {
        let (mu, _) = make(&ClassId::N4).unwrap();
        assert_eq!(mu.value(0, 1), vec![int(0), int(0), int(0), int(1)]);
        assert_eq!(mu.value(0, 3), vec![int(0), int(0), int(1), int(0)]);
        assert!(bracket(&ClassId::A4).unwrap().is_zero());
    }

    #[test]
    fn domain_errors_name_the_constraint() {
        let err = make(&ClassId::D4 { lambda: int(1) }).unwrap_err();
        assert!(matches!(err, Error::Domain { ref constraint, .. } if constraint == "lambda != 1, 2"));
        assert!(make(&ClassId::D4 { lambda: rat(1, 4) }).is_err());
        assert!(make(&ClassId::R4Alpha { alpha: int(-1) }).is_err());
        assert!(make(&ClassId::R4M1Beta { beta: int(1) }).is_err());
        assert!(make(&ClassId::R4M1Beta { beta: int(-1) }).is_ok());
        assert!(make(&ClassId::R2r2 { lambda: rat(-1, 3) }).is_err());
        assert!(make(&ClassId::D4p { delta: int(0), sign: Sign::Plus }).is_err());
    }

    #[test]
    fn every_sample_is_a_closed_lie_bracket() {
        for id in ClassId::samples() {
            let (mu, omega) = make(&id).unwrap();
            assert!(mu.is_lie(), "{id}");
            assert!(mu.is_closed(&omega), "{id}");
        }
        let (tau, omega6) = tau6();
        assert!(tau.is_lie() && tau.is_closed(&omega6));
        assert_eq!(tau.value(3, 4), vec![int(0), int(1), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn samples_are_pairwise_distinct_except_beta_zero() {
        // r4_m1_beta at beta = 0 is the law of rr3_m1 verbatim.
        let samples = ClassId::samples();
        let mut equal = Vec::new();
        for (a, x) in samples.iter().enumerate() {
            for y in &samples[a + 1..] {
                if bracket(x).unwrap() == bracket(y).unwrap() {
                    equal.push((x.to_string(), y.to_string()));
                }
            }
        }
        assert_eq!(equal, vec![("rr3_m1".to_string(), "r4_m1_beta:beta=0".to_string())]);
        assert_eq!(
            samples.iter().map(ClassId::mu_index).collect::<std::collections::BTreeSet<_>>().len(),
            25
        );
    }

    #[test]
    fn class_ids_round_trip() {
        for id in ClassId::samples() {
            let text = id.to_string();
            assert_eq!(text.parse::<ClassId>().unwrap(), id, "{text}");
        }
        assert_eq!("mu18".parse::<ClassId>().unwrap(), ClassId::D42W2);
        assert_eq!("mu13:delta=2".parse::<ClassId>().unwrap(), ClassId::R4p0 { delta: int(2), sign: Sign::Plus });
        assert_eq!("d4p:plus:delta=5/2".parse::<ClassId>().unwrap().to_string(), "d4p:delta=5/2:plus");
        assert_eq!("r4_m1m1".parse::<ClassId>().unwrap(), ClassId::r4m1m1());
        assert_eq!("d4_half".parse::<ClassId>().unwrap(), ClassId::d4half());
        for bad in ["", "x9", "mu25", "d4_2", "r2r2", "r2r2:beta=1", "n4:plus", "h4", "d4:lambda=1/0", "a4:lambda=1"] {
            assert!(bad.parse::<ClassId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn table_lookups() {
        assert_eq!(expected_for(&ClassId::D42W2).dim_der, 5);
        assert_eq!(expected_for(&ClassId::D42W2).dim_der_omega, 1);
        assert_eq!((expected_for(&ClassId::A4).dim_der_omega, expected_for(&ClassId::A4).dim_der), (10, 16));
        assert_eq!((expected_for(&ClassId::Rr30).dim_der_omega, expected_for(&ClassId::Rr30).dim_der), (4, 8));
        assert_eq!(expected_invariants().len(), ClassId::samples().len());
    }

    #[test]
    fn hasse_nodes_collapse_families() {
        assert_eq!(ClassId::D4 { lambda: int(3) }.hasse_node(), "d4:lambda");
        assert_eq!(ClassId::d4half().hasse_node(), "d4:lambda=1/2");
        assert_eq!(ClassId::D4p { delta: int(2), sign: Sign::Minus }.hasse_node(), "d4p:delta:minus");
        assert_eq!(ClassId::N4.hasse_node(), "n4");
    }
}
