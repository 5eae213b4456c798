//! Exact Laurent polynomials in `q` with integer coefficients.
//!
//! The canonical text form lists terms by ascending exponent, eliding unit
//! coefficients and the exponents 0 and 1: `q^-3 - q^-1 - q + q^3`,
//! `1 - q^-2`, `2 q^-1`, `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// A finite map exponent → nonzero coefficient. The zero polynomial is the
/// empty map, so equality of values is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c·q^e`; the zero monomial collapses to the zero polynomial.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (exp, coeff) in pairs {
            out.add_term(coeff, exp);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(c, e);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let c = c1.checked_mul(c2).expect("Laurent coefficient overflow");
                let e = e1.checked_add(e2).expect("Laurent exponent overflow");
                out.add_term(c, e);
            }
        }
        out
    }

    /// Multiplication by `c·q^e`.
    pub fn scale_by_monomial(&self, coeff: i64, exp: i64) -> LaurentPoly {
        self.mul(&LaurentPoly::monomial(coeff, exp))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&exp, &coeff) in &self.terms {
            if first {
                if coeff < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if coeff < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = coeff.unsigned_abs();
            match (mag, exp) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "q")?,
                (1, e) => write!(f, "q^{e}")?,
                (_, 1) => write!(f, "{mag} q")?,
                (_, e) => write!(f, "{mag} q^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("malformed polynomial near `{0}`")]
pub struct ParsePolyError(pub String);

/// One parsed summand: optional embedded sign, optional coefficient,
/// optional `q` power.
fn parse_term(tok: &str) -> Result<(Option<i64>, Option<i64>, Option<i64>), ParsePolyError> {
    let err = || ParsePolyError(tok.to_string());
    let mut rest = tok;
    let sign = match rest.as_bytes().first() {
        Some(b'+') => {
            rest = &rest[1..];
            Some(1)
        }
        Some(b'-') => {
            rest = &rest[1..];
            Some(-1)
        }
        _ => None,
    };
    let digits_end = rest
        .bytes()
        .position(|b| !b.is_ascii_digit())
        .unwrap_or(rest.len());
    let coeff = if digits_end > 0 {
        Some(rest[..digits_end].parse::<i64>().map_err(|_| err())?)
    } else {
        None
    };
    rest = &rest[digits_end..];
    let exp = if rest.is_empty() {
        None
    } else {
        let power = rest.strip_prefix('q').ok_or_else(err)?;
        if power.is_empty() {
            Some(1)
        } else {
            let digits = power.strip_prefix('^').ok_or_else(err)?;
            Some(digits.parse::<i64>().map_err(|_| err())?)
        }
    };
    if coeff.is_none() && exp.is_none() {
        return Err(err());
    }
    Ok((sign, coeff, exp))
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.is_empty() {
            return Err(ParsePolyError(text.trim().to_string()));
        }
        let mut out = LaurentPoly::zero();
        let mut pending_sign: Option<i64> = None;
        let mut k = 0;
        while k < toks.len() {
            let tok = toks[k];
            k += 1;
            if tok == "+" || tok == "-" {
                if pending_sign.is_some() {
                    return Err(ParsePolyError(tok.to_string()));
                }
                pending_sign = Some(if tok == "+" { 1 } else { -1 });
                continue;
            }
            let (embedded, coeff, exp) = parse_term(tok)?;
            let sign = match (pending_sign.take(), embedded) {
                (Some(_), Some(_)) => return Err(ParsePolyError(tok.to_string())),
                (Some(s), None) | (None, Some(s)) => s,
                (None, None) => 1,
            };
            match (coeff, exp) {
                (Some(c), Some(e)) => out.add_term(sign * c, e),
                (None, Some(e)) => out.add_term(sign, e),
                (Some(c), None) => {
                    // a bare number may be the coefficient of the next token
                    if k < toks.len() && toks[k] != "+" && toks[k] != "-" {
                        let (emb2, c2, e2) = parse_term(toks[k])?;
                        match (emb2, c2, e2) {
                            (None, None, Some(e)) => {
                                out.add_term(sign * c, e);
                                k += 1;
                            }
                            _ => return Err(ParsePolyError(toks[k].to_string())),
                        }
                    } else {
                        out.add_term(sign * c, 0);
                    }
                }
                (None, None) => unreachable!(),
            }
        }
        if pending_sign.is_some() {
            return Err(ParsePolyError(text.trim().to_string()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn square_of_unknot_value() {
        let u = p("q^-1 + q");
        assert_eq!(u.mul(&u), p("q^-2 + 2 + q^2"));
    }

    #[test]
    fn additive_inverse_gives_zero() {
        let a = p("q^-3 - q^-1 - q + q^3");
        assert!(a.add(&a.negate()).is_zero());
        assert_eq!(a.add(&a.negate()).to_string(), "0");
    }

    #[test]
    fn display_examples() {
        assert_eq!(p("1 - q^-2").to_string(), "-q^-2 + 1");
        assert_eq!(
            LaurentPoly::from_terms([(-7, 1), (-5, -1), (-3, -1), (-1, 2), (1, 1)]).to_string(),
            "q^-7 - q^-5 - q^-3 + 2 q^-1 + q"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(-1, 0).to_string(), "-1");
        assert_eq!(LaurentPoly::monomial(-3, 2).to_string(), "-3 q^2");
    }

    #[test]
    fn parse_variants() {
        assert_eq!(p("0"), LaurentPoly::zero());
        assert_eq!(p("-1 + q^2"), LaurentPoly::from_terms([(0, -1), (2, 1)]));
        assert_eq!(p("2 q^-1"), LaurentPoly::monomial(2, -1));
        assert_eq!(p("2q^-1"), LaurentPoly::monomial(2, -1));
        assert_eq!(p("-q"), LaurentPoly::monomial(-1, 1));
        assert_eq!(p("1 + q^-6 - 2 q^-4"), p("q^-6 - 2 q^-4 + 1"));
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("+ - q".parse::<LaurentPoly>().is_err());
        assert!("2 +".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    proptest! {
        #[test]
        fn parse_format_round_trip(terms in proptest::collection::btree_map(-9i64..9, -5i64..5, 0..6)) {
            let poly = LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, c)));
            let round: LaurentPoly = poly.to_string().parse().unwrap();
            prop_assert_eq!(round, poly);
        }

        #[test]
        fn ring_laws(a in proptest::collection::btree_map(-4i64..4, -3i64..3, 0..4),
                     b in proptest::collection::btree_map(-4i64..4, -3i64..3, 0..4)) {
            let a = LaurentPoly::from_terms(a);
            let b = LaurentPoly::from_terms(b);
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
        }
    }
}
