use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Generalized binomial coefficient `p(p-1)...(p-q+1)/q!`.
///
/// Defined for every integer `p` (including negative ones) and every integer
/// `q`; it vanishes for `q < 0`. For negative `p` this agrees with the
/// reflection `binom(p, q) = (-1)^q binom(q - p - 1, q)`.
pub fn binom(p: i64, q: i64) -> Rational {
    Rational::from_integer(binom_int(p, q))
}

/// Integer-valued form of [`binom`].
pub fn binom_int(p: i64, q: i64) -> BigInt {
    if q < 0 {
        return BigInt::zero();
    }
    if let Some(v) = binom_small(p, q) {
        return BigInt::from(v);
    }
    // p(p-1)...(p-q+1)/q!, accumulated so every partial quotient is exact.
    let mut acc = BigInt::one();
    for i in 0..q {
        acc *= BigInt::from(p - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Machine-integer fast path; `None` on overflow.
pub fn binom_small(p: i64, q: i64) -> Option<i128> {
    if q < 0 {
        return Some(0);
    }
    if p >= 0 && q > p {
        return Some(0);
    }
    if p < 0 {
        let v = binom_small(q - p - 1, q)?;
        return Some(if q % 2 == 0 { v } else { -v });
    }
    let q = q.min(p - q);
    let mut acc: i128 = 1;
    for i in 0..q {
        // acc * (p - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul((p - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling(p: i64, q: i64) -> Rational {
        if q < 0 {
            return Rational::zero();
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..q {
            num *= BigInt::from(p - i);
            den *= BigInt::from(i + 1);
        }
        Rational::new(num, den)
    }

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2), Rational::from_integer(10.into()));
        assert_eq!(binom(-1, 3), Rational::from_integer((-1).into()));
        assert_eq!(binom(-3, 2), Rational::from_integer(6.into()));
        assert_eq!(binom(3, 7), Rational::zero());
        assert_eq!(binom(3, -1), Rational::zero());
        assert_eq!(binom(0, 0), Rational::one());
        assert_eq!(binom(-5, 0), Rational::one());
    }

    #[test]
    fn agrees_with_falling_factorial() {
        for p in -15..=15 {
            for q in -3..=12 {
                assert_eq!(binom(p, q), falling(p, q), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn large_arguments_take_the_bigint_path() {
        assert_eq!(binom_small(200, 100), None);
        let b = binom_int(200, 100);
        assert_eq!(b.to_string(), "90548514656103281165404177077484163874504589675413336841320");
        assert_eq!(binom_int(-200, 3), -binom_int(202, 3));
    }
}
