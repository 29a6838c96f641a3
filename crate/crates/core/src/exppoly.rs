//! Exponential polynomials `Σ c_r e^{r t}` with rational exponents and
//! coefficients.
//!
//! Entries of every degeneration curve `g_t` live here. Products add
//! exponents, so `g_t · μ` stays inside the domain as long as the inverse is
//! taken symplectically (no division needed).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    /// exponent -> coefficient; never stores a zero coefficient.
    terms: BTreeMap<Rational, Rational>,
}

impl ExpPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(c, Rational::zero())
    }

    /// `c · e^{r t}`.
    pub fn term(c: Rational, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        ExpPoly { terms }
    }

    /// `e^{r t}`.
    pub fn exp(r: Rational) -> Self {
        Self::term(Rational::one(), r)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Exponents strictly greater than zero, i.e. the divergent part.
    pub fn divergent_exponents(&self) -> Vec<Rational> {
        self.terms
            .keys()
            .filter(|r| r.is_positive())
            .cloned()
            .collect()
    }

    /// Exact `t → +∞` limit: `None` if some exponent is positive, otherwise
    /// the constant coefficient (zero if absent).
    pub fn limit(&self) -> Option<Rational> {
        if self.terms.keys().any(|r| r.is_positive()) {
            return None;
        }
        Some(
            self.terms
                .get(&Rational::zero())
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Rational::zero())
                .cloned(),
            _ => None,
        }
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * (r.to_f64().unwrap_or(f64::NAN) * t).exp())
            .sum()
    }

    /// Largest `|e^{r t}|` among the stored terms.
    pub fn max_growth_f64(&self, t: f64) -> f64 {
        self.terms
            .keys()
            .map(|r| (r.to_f64().unwrap_or(f64::NAN) * t).exp())
            .fold(0.0, f64::max)
    }

    /// Least common denominator of the exponents.
    pub fn exponent_denominator(&self) -> BigInt {
        self.terms
            .keys()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }

    /// Evaluates exactly at the point where `e^{t/d} = base`.
    ///
    /// Returns `None` if some exponent times `d` is not an integer.
    pub fn eval_at_base(&self, base: &Rational, d: &BigInt) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (r, c) in &self.terms {
            let scaled = r * Rational::from_integer(d.clone());
            if !scaled.is_integer() {
                return None;
            }
            let power = scaled.to_integer().to_i32()?;
            acc += c * pow_rational(base, power);
        }
        Some(acc)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let mut out = ExpPoly::zero();
        for (r, c) in &self.terms {
            out.add_term(r.clone(), f(c));
        }
        out
    }

    fn add_term(&mut self, r: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(r) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }
}

fn pow_rational(base: &Rational, power: i32) -> Rational {
    if power >= 0 {
        num_traits::pow(base.clone(), power as usize)
    } else {
        num_traits::pow(base.recip(), (-power) as usize)
    }
}

impl Zero for ExpPoly {
    fn zero() -> Self {
        ExpPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExpPoly {
    fn one() -> Self {
        ExpPoly::constant(Rational::one())
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;

    fn add(mut self, rhs: ExpPoly) -> ExpPoly {
        for (r, c) in rhs.terms {
            self.add_term(r, c);
        }
        self
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;

    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        self + (-rhs)
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;

    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}

impl Mul for ExpPoly {
    type Output = ExpPoly;

    fn mul(self, rhs: ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                out.add_term(r1 + r2, c1 * c2);
            }
        }
        out
    }
}

impl Scalar for ExpPoly {
    fn from_rational(q: &Rational) -> Self {
        ExpPoly::constant(q.clone())
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponent first, the order in which divergence is read.
        for (n, (r, c)) in self.terms.iter().rev().enumerate() {
            let coeff = format_rational(c);
            if n > 0 {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let magnitude = coeff.trim_start_matches('-');
            if r.is_zero() {
                write!(f, "{magnitude}")?;
            } else {
                if magnitude != "1" {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "e^({} t)", format_rational(r))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn e(r: Rational) -> ExpPoly {
        ExpPoly::exp(r)
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let p = e(int(1)) * e(int(-1));
        assert_eq!(p, ExpPoly::one());
        let q = (e(rat(1, 2)) + ExpPoly::one()) * (e(rat(1, 2)) - ExpPoly::one());
        assert_eq!(q, e(int(1)) - ExpPoly::one());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = e(int(2)) - e(int(2));
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn limits() {
        assert_eq!(e(int(-2)).limit(), Some(int(0)));
        assert_eq!((e(int(-2)) + ExpPoly::constant(int(3))).limit(), Some(int(3)));
        assert_eq!(e(rat(1, 4)).limit(), None);
        assert_eq!(ExpPoly::zero().limit(), Some(int(0)));
    }

    #[test]
    fn exact_evaluation_at_a_base() {
        // e^{t/4} = 2  =>  e^{3t/4} - e^{-t/2} = 8 - 1/4
        let p = e(rat(3, 4)) - e(rat(-1, 2));
        let d = p.exponent_denominator();
        assert_eq!(d, BigInt::from(4));
        assert_eq!(p.eval_at_base(&int(2), &d), Some(rat(31, 4)));
        assert_eq!(p.eval_at_base(&int(2), &BigInt::from(2)), None);
    }

    #[test]
    fn display() {
        let p = ExpPoly::term(int(-2), int(3)) + ExpPoly::constant(rat(1, 2));
        assert_eq!(p.to_string(), "-2*e^(3 t) + 1/2");
        assert_eq!(e(rat(-1, 2)).to_string(), "e^(-1/2 t)");
    }
}
