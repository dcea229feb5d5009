//! Sparse multivariate polynomials over `Q`.
//!
//! Monomials are packed into a `u64`: one byte of exponent per variable,
//! variable 0 in the most significant byte. Integer comparison of the packed
//! word is therefore lexicographic order with `x0 > x1 > ...`, which is the
//! fixed monomial order used for canonical forms.

use std::fmt;

use super::rational::Q;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u64);

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: usize) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Monomial {
        assert!(
            v < MAX_VARS,
            "at most {MAX_VARS} generator symbols are supported"
        );
        assert!(e < 256, "exponent {e} exceeds the supported range");
        Monomial((e as u64) << (8 * (MAX_VARS - 1 - v)))
    }

    pub fn exp(self, v: usize) -> u32 {
        ((self.0 >> (8 * (MAX_VARS - 1 - v))) & 0xff) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn total_degree(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exp(v)).sum()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        if (self.0 | other.0) & HIGH_BITS == 0 {
            return Monomial(self.0 + other.0);
        }
        let mut out = 0u64;
        for v in 0..MAX_VARS {
            let e = self.exp(v) + other.exp(v);
            assert!(e < 256, "monomial exponent overflow");
            out |= (e as u64) << (8 * (MAX_VARS - 1 - v));
        }
        Monomial(out)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|v| self.exp(v) <= other.exp(v))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    /// Drops variable `v` from the monomial.
    pub fn without(self, v: usize) -> Monomial {
        Monomial(self.0 & !(0xffu64 << (8 * (MAX_VARS - 1 - v))))
    }
}

/// Terms sorted by monomial, largest first; coefficients never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn one() -> Poly {
        Poly::constant(Q::ONE)
    }

    pub fn var(v: usize) -> Poly {
        Poly {
            terms: vec![(Monomial::var(v), Q::ONE)],
        }
    }

    pub fn monomial(m: Monomial, c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(mut raw: Vec<(Monomial, Q)>) -> Poly {
        raw.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut terms: Vec<(Monomial, Q)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(Q::ZERO)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn lowest_var(&self) -> Option<usize> {
        (0..MAX_VARS).find(|&v| self.uses_var(v))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Poly::from_terms(raw)
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Substitutes rational values for some variables.
    pub fn substitute(&self, values: &[Option<Q>]) -> Poly {
        if values.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mono = *m;
            let mut coeff = c.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(val) = val {
                    let e = m.exp(v);
                    if e > 0 {
                        coeff = coeff.mul(&val.pow(e as i32));
                        mono = mono.without(v);
                    }
                }
            }
            raw.push((mono, coeff));
        }
        Poly::from_terms(raw)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficient of `x_v^k`, as a polynomial free of `x_v`.
    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let raw = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == k)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        Poly::from_terms(raw)
    }

    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v);
        (0..=d).map(|k| self.coeff_in(v, k)).collect()
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_monomial(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.monic();
        }
        let v = match (a.lowest_var(), b.lowest_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return Poly::one(),
        };
        if !a.uses_var(v) {
            return Poly::gcd(a, &b.content_in(v));
        }
        if !b.uses_var(v) {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let content = Poly::gcd(&ca, &cb);
        let mut f = a.div_exact(&ca).expect("content divides");
        let mut g = b.div_exact(&cb).expect("content divides");
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.degree_in(v) == 0 {
                f = Poly::one();
                break;
            }
            let r = f.pseudo_rem(&g, v);
            f = g;
            g = r.primitive_in(v);
        }
        f.primitive_in(v).mul(&content).monic()
    }

    /// Gcd of the coefficients with respect to `x_v`.
    pub fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_in(&self, v: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    fn pseudo_rem(&self, g: &Poly, v: usize) -> Poly {
        let n = g.degree_in(v);
        let lc = g.coeff_in(v, n);
        debug_assert!(n > 0);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let d = r.degree_in(v);
            let lr = r.coeff_in(v, d);
            let shift = lr.mul_monomial(Monomial::var_pow(v, d - n), &Q::ONE);
            r = r.mul(&lc).sub(&shift.mul(g));
        }
        r
    }

    pub fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for v in 0..MAX_VARS {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                let name = names.get(v).map(String::as_str).unwrap_or("?");
                if e == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

pub(crate) fn default_names() -> Vec<String> {
    (1..=MAX_VARS).map(|k| format!("g{k}")).collect()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&default_names(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(v)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(Q::from_int(n))
    }

    #[test]
    fn lex_leading_term() {
        // x1^3 + x0 : x0 is the larger variable, so it leads.
        let p = x(1).pow(3).add(&x(0));
        assert_eq!(p.leading().unwrap().0, Monomial::var(0));
    }

    #[test]
    fn exact_division() {
        let a = x(0).sub(&x(1));
        let b = x(0).add(&x(1));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&x(0)).is_none());
    }

    #[test]
    fn gcd_univariate_and_bivariate() {
        let a = x(0).sub(&c(1));
        let b = x(0).add(&c(2));
        let g = Poly::gcd(&a.mul(&b), &a.mul(&a));
        assert_eq!(g, a);

        let p = x(0).add(&x(1));
        let q = x(0).sub(&x(1).scale(&Q::from_int(2)));
        let r = x(1).add(&c(3));
        let g = Poly::gcd(&p.mul(&q), &p.mul(&r).scale(&Q::new(3, 2)));
        assert_eq!(g, p);
        assert!(Poly::gcd(&q, &r).is_one());
    }

    #[test]
    fn gcd_with_content() {
        // (x1) * (x0 + 1) and (x1^2) * (x0 - 1): gcd x1.
        let a = x(1).mul(&x(0).add(&c(1)));
        let b = x(1).pow(2).mul(&x(0).sub(&c(1)));
        assert_eq!(Poly::gcd(&a, &b), x(1));
    }

    #[test]
    fn substitution() {
        let p = x(0).mul(&x(1)).add(&x(0));
        let s = p.substitute(&[Some(Q::from_int(2)), None]);
        assert_eq!(s, x(1).scale(&Q::from_int(2)).add(&c(2)));
    }
}
