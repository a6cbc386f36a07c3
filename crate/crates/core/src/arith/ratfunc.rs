use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ArithError, Param, Poly, Rational};

/// Element of the fraction field ℚ(c, h, lambda), kept in lowest terms.
///
/// Invariants: the denominator is nonzero and monic (leading coefficient 1
/// in lexicographic term order), and `gcd(num, den) = 1`. Rationals embed
/// with denominator 1, so equality of canonical forms is exact equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_rational(Rational::one())
    }

    pub fn from_int(i: i64) -> RatFunc {
        RatFunc::from_rational(Rational::from_integer(i.into()))
    }

    pub fn from_rational(r: Rational) -> RatFunc {
        RatFunc { num: Poly::constant(r), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn param(p: Param) -> RatFunc {
        RatFunc::from_poly(Poly::var(p))
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RatFunc::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(d) = den.as_constant() {
            return RatFunc { num: num.scale(&d.recip()), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// `Some(r)` if this is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|&p| self.num.mentions(p) || self.den.mentions(p))
            .collect()
    }

    /// Combined term count, used as a size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn scale(&self, r: &Rational) -> RatFunc {
        if r.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc, ArithError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes values for parameters. Fails if the denominator vanishes.
    pub fn substitute(&self, values: &[(Param, Rational)]) -> Result<RatFunc, ArithError> {
        let num = self.num.substitute(values);
        let den = self.den.substitute(values);
        RatFunc::new(num, den)
    }

    /// Evaluates to a rational; every mentioned parameter must be assigned.
    pub fn evaluate(&self, values: &[(Param, Rational)]) -> Result<Rational, ArithError> {
        let r = self.substitute(values)?;
        r.as_rational().ok_or_else(|| ArithError::UnassignedParameter(r.params()[0].name().to_string()))
    }

    pub fn add_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.add(&other.num), den: Poly::one() };
        }
        if self.den == other.den {
            return RatFunc::normalized(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = other.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        RatFunc::normalized(self.num.mul(&a).add(&other.num.mul(&b)), self.den.mul(&a))
    }

    pub fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: Poly::one() };
        }
        // Cross-cancel before multiplying to keep sizes down.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            if den.is_constant() {
                RatFunc { num: num.scale(&inv), den: Poly::one() }
            } else {
                RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
            }
        }
    }

    pub fn neg_ref(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &RatFunc) -> RatFunc {
        self.add_ref(&other.neg_ref())
    }

    /// Re-normalizes from scratch; the identity on canonical values.
    pub fn renormalize(&self) -> RatFunc {
        RatFunc::normalized(self.num.clone(), self.den.clone())
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        RatFunc::from_rational(r)
    }
}

impl From<i64> for RatFunc {
    fn from(i: i64) -> Self {
        RatFunc::from_int(i)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                self.$imp(rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl fmt::Display for RatFunc {
    /// `p` for polynomials, `(p)/(q)` otherwise; parses back with the scalar grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> RatFunc {
        RatFunc::param(Param::C)
    }
    fn k(i: i64) -> RatFunc {
        RatFunc::from_int(i)
    }
    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn halves_sum_to_whole() {
        let half = c().scale(&q(1, 2));
        assert_eq!(&half + &half, c());
    }

    #[test]
    fn cancels_common_factor() {
        let num = &(&c() * &c()) - &k(1);
        let den = &c() - &k(1);
        let f = &num / &den;
        assert_eq!(f, &c() + &k(1));
        assert_eq!(f.substitute(&[(Param::C, q(1, 1))]).unwrap(), k(2));
    }

    #[test]
    fn distributes() {
        let lhs = &(&c() - &k(1)) * &(&c() + &k(1));
        assert_eq!(lhs, &(&c() * &c()) - &k(1));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = &k(1) / &(&c().scale(&q(2, 1)) + &k(4));
        assert_eq!(f.den().to_string(), "c+2");
        assert_eq!(f.num().to_string(), "1/2");
        assert_eq!(f.to_string(), "(1/2)/(c+2)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(k(1).checked_div(&k(0)), Err(ArithError::DivisionByZero));
        let f = &k(1) / &c();
        assert!(f.substitute(&[(Param::C, q(0, 1))]).is_err());
    }
}
