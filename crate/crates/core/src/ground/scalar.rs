use std::fmt;

use super::poly::{default_names, Poly, MAX_VARS};
use super::rational::Q;
use crate::error::{Error, Result};

/// An element of `Q(g1, ..., gr)` in canonical form.
///
/// `num / den` with `gcd(num, den) = 1` and `den` monic under lex order.
/// Equal values have identical representations, so derived equality and
/// hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_q(Q::ONE)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_q(Q::from_int(n))
    }

    pub fn from_q(q: Q) -> Scalar {
        Scalar {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_q(Q::new(n, d))
    }

    /// The generator symbol with index `v` (0-based).
    pub fn var(v: usize) -> Scalar {
        Scalar {
            num: Poly::var(v),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The rational value if the scalar involves no generator symbols.
    pub fn as_rational(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Whether the printed form would start with a minus sign.
    pub fn is_negative_leading(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.add(&other.num),
                den: Poly::one(),
            };
        }
        if self.den == other.den {
            return Scalar::normalize(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Scalar::normalize(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        if let Some(c) = other.as_rational() {
            return Scalar {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        if let Some(c) = self.as_rational() {
            return Scalar {
                num: other.num.scale(&c),
                den: other.den.clone(),
            };
        }
        Scalar::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_int(&self, k: i64) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(&Q::from_int(k)),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = other.as_rational() {
            return Ok(Scalar {
                num: self.num.scale(&c.recip()),
                den: self.den.clone(),
            });
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Substitutes rational values for the generator symbols that have one.
    /// A ring homomorphism wherever the denominator stays nonzero.
    pub fn specialize(&self, values: &[Option<Q>]) -> Result<Scalar> {
        let num = self.num.substitute(values);
        let den = self.den.substitute(values);
        Scalar::from_fraction(num, den)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay {
            scalar: self,
            names,
        }
    }

    /// Printed form suitable as a factor in front of a basis symbol:
    /// rationals print bare, anything symbolic is parenthesised.
    pub fn fmt_factor(&self, names: &[String]) -> String {
        if self.is_rational() {
            self.display(names).to_string()
        } else {
            format!("({})", self.display(names))
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Scalar {
        Scalar::from_q(q)
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a Scalar,
    names: &'a [String],
}

struct PolyDisplay<'a>(&'a Poly, &'a [String]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(self.1, f)
    }
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scalar;
        let num = PolyDisplay(&s.num, self.names);
        if s.den.is_one() {
            return write!(f, "{num}");
        }
        let den = PolyDisplay(&s.den, self.names);
        if s.num.num_terms() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        // a single power of one variable needs no parentheses
        let bare_den = s.den.num_terms() == 1
            && s.den.leading_coeff().is_one()
            && s.den
                .leading()
                .is_some_and(|(m, _)| (0..MAX_VARS).filter(|&v| m.exp(v) > 0).count() == 1);
        if bare_den {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&default_names()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
