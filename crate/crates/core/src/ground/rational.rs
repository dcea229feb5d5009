//! Rational numbers with an inline fast path.
//!
//! Almost every structure constant that shows up in a window sweep fits in a
//! machine word, so `Q` keeps `i64` numerator/denominator pairs inline and
//! only promotes to `BigRational` when an intermediate overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Q {
    /// Reduced, denominator strictly positive.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

impl Q {
    pub const ZERO: Q = Q::Small(0, 1);
    pub const ONE: Q = Q::Small(1, 1);

    pub fn from_int(n: i64) -> Q {
        if n == i64::MIN {
            return Q::from_i128(n as i128, 1);
        }
        Q::Small(n, 1)
    }

    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Q {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        // BigRational::new and the arithmetic ops keep values reduced.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Q::Small(n, d);
            }
        }
        Q::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(b) => b.denom().clone(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(b) => Q::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, other: &Q) -> Q {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if b == d {
                    Q::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Q::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Q) -> Q {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Q) -> Q {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * other.to_big()),
        }
    }

    /// Panics on a zero divisor; callers check first.
    pub fn div(&self, other: &Q) -> Q {
        assert!(!other.is_zero(), "rational division by zero");
        self.mul(&other.recip())
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Q::from_i128(*d as i128, *n as i128)
            }
            Q::Big(b) => Q::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: i32) -> Q {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut acc = Q::ONE;
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q::from_big(r)
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            // Canonical: a Big never holds a value representable as Small.
            (Q::Big(x), Q::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Q::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::ZERO
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Q::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseQError;

impl fmt::Display for ParseQError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid rational literal")
    }
}

impl FromStr for Q {
    type Err = ParseQError;

    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| ParseQError)?;
        let d: BigInt = d.parse().map_err(|_| ParseQError)?;
        if d.is_zero() {
            return Err(ParseQError);
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let a = Q::new(1, 2);
        let b = Q::new(1, 3);
        assert_eq!(a.add(&b), Q::new(5, 6));
        assert_eq!(a.mul(&b), Q::new(1, 6));
        assert_eq!(a.div(&b), Q::new(3, 2));
        assert_eq!(Q::new(2, -4), Q::new(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(..)));
    }

    #[test]
    fn parse_and_print() {
        let q: Q = "-6/8".parse().unwrap();
        assert_eq!(q.to_string(), "-3/4");
        assert!("1/0".parse::<Q>().is_err());
        assert_eq!(Q::new(2, 1).pow(-3), Q::new(1, 8));
    }
}
