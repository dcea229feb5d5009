use std::collections::BTreeMap;

use super::element::{BasisIndex, Element};
use crate::ground::{Gamma, GroupElement, Scalar};

/// How far a per-degree series is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Validity {
    /// Coefficients are known up to and including this level.
    UpTo(u32),
    /// Every coefficient beyond the stored ones is zero.
    Exact,
}

impl Validity {
    pub fn order(&self) -> Option<u32> {
        match self {
            Validity::UpTo(n) => Some(*n),
            Validity::Exact => None,
        }
    }

    pub fn covers(&self, level: u32) -> bool {
        match self {
            Validity::UpTo(n) => level <= *n,
            Validity::Exact => true,
        }
    }
}

/// Coefficients `c_0, c_1, …` of one degree.
///
/// Truncated series store exactly `N + 1` coefficients; exact series store
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Scalar>,
    validity: Validity,
}

impl Series {
    pub fn exact(mut coeffs: Vec<Scalar>) -> Series {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Series {
            coeffs,
            validity: Validity::Exact,
        }
    }

    pub fn truncated(mut coeffs: Vec<Scalar>, order: u32) -> Series {
        coeffs.resize(order as usize + 1, Scalar::zero());
        Series {
            coeffs,
            validity: Validity::UpTo(order),
        }
    }

    fn with_validity(coeffs: Vec<Scalar>, validity: Validity) -> Series {
        match validity {
            Validity::Exact => Series::exact(coeffs),
            Validity::UpTo(n) => Series::truncated(coeffs, n),
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    pub fn is_exact(&self) -> bool {
        self.validity == Validity::Exact
    }

    /// Coefficient at `level`, or `None` when it lies beyond the known range.
    pub fn coeff(&self, level: u32) -> Option<Scalar> {
        if !self.validity.covers(level) {
            return None;
        }
        Some(self.coeffs.get(level as usize).cloned().unwrap_or_default())
    }

    /// The highest level with a stored coefficient: `N` when truncated,
    /// last nonzero level when exact.
    pub fn valid_order(&self) -> u32 {
        match self.validity {
            Validity::UpTo(n) => n,
            Validity::Exact => self.coeffs.len().saturating_sub(1) as u32,
        }
    }

    fn is_trivial(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    fn combine(&self, other: &Series, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Series {
        let validity = self.validity.min(other.validity);
        let len = match validity {
            Validity::UpTo(n) => n as usize + 1,
            Validity::Exact => self.coeffs.len().max(other.coeffs.len()),
        };
        let zero = Scalar::zero();
        let coeffs = (0..len)
            .map(|k| {
                f(
                    self.coeffs.get(k).unwrap_or(&zero),
                    other.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect();
        Series::with_validity(coeffs, validity)
    }
}

/// An element of the completion: finitely many degrees, each carrying a
/// possibly truncated level series.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CompletionElement {
    degrees: BTreeMap<GroupElement, Series>,
}

impl CompletionElement {
    pub fn zero() -> CompletionElement {
        CompletionElement::default()
    }

    /// The exact image of a finite element; a central term is ignored.
    pub fn from_element(x: &Element) -> CompletionElement {
        let mut per: BTreeMap<GroupElement, Vec<Scalar>> = BTreeMap::new();
        for (idx, c) in x.terms() {
            if let BasisIndex::Basic { degree, level } = idx {
                let v = per.entry(*degree).or_default();
                if v.len() <= *level as usize {
                    v.resize(*level as usize + 1, Scalar::zero());
                }
                v[*level as usize] = c.clone();
            }
        }
        let degrees = per
            .into_iter()
            .map(|(d, v)| (d, Series::exact(v)))
            .collect();
        CompletionElement { degrees }
    }

    pub fn from_series<I: IntoIterator<Item = (GroupElement, Series)>>(
        items: I,
    ) -> CompletionElement {
        let mut out = CompletionElement::zero();
        for (d, s) in items {
            out.insert(d, s);
        }
        out
    }

    /// Sets the series at `d`, replacing any previous one.
    pub fn insert(&mut self, d: GroupElement, s: Series) {
        if s.is_trivial() {
            self.degrees.remove(&d);
        } else {
            self.degrees.insert(d, s);
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&GroupElement, &Series)> {
        self.degrees.iter()
    }

    pub fn series(&self, d: &GroupElement) -> Option<&Series> {
        self.degrees.get(d)
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Coefficient of `L(d, level)`; `None` if not known to that order.
    pub fn coeff(&self, d: &GroupElement, level: u32) -> Option<Scalar> {
        match self.degrees.get(d) {
            Some(s) => s.coeff(level),
            None => Some(Scalar::zero()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.degrees.values().all(Series::is_exact)
    }

    /// Smallest truncation order over all degrees (`None` if exact).
    pub fn min_valid_order(&self) -> Option<u32> {
        self.degrees
            .values()
            .filter_map(|s| s.validity.order())
            .min()
    }

    pub fn to_element(&self) -> Option<Element> {
        if !self.is_exact() {
            return None;
        }
        Some(self.truncated_element(u32::MAX))
    }

    /// The finite element formed by the known coefficients up to `level`.
    pub fn truncated_element(&self, level: u32) -> Element {
        let mut out = Element::zero();
        for (d, s) in &self.degrees {
            for (k, c) in s.coeffs.iter().enumerate() {
                if k as u32 > level {
                    break;
                }
                out.add_term(BasisIndex::new(*d, k as u32), c.clone());
            }
        }
        out
    }

    /// Forgets everything above `order` in every degree.
    pub fn truncate(&self, order: u32) -> CompletionElement {
        let mut out = CompletionElement::zero();
        for (d, s) in &self.degrees {
            let validity = s.validity.min(Validity::UpTo(order));
            let mut coeffs = s.coeffs.clone();
            coeffs.truncate(order as usize + 1);
            out.insert(*d, Series::with_validity(coeffs, validity));
        }
        out
    }

    fn zip(
        &self,
        other: &CompletionElement,
        f: impl Fn(&Scalar, &Scalar) -> Scalar + Copy,
    ) -> CompletionElement {
        let empty = Series::exact(Vec::new());
        let mut out = CompletionElement::zero();
        let keys: std::collections::BTreeSet<&GroupElement> =
            self.degrees.keys().chain(other.degrees.keys()).collect();
        for d in keys {
            let a = self.degrees.get(d).unwrap_or(&empty);
            let b = other.degrees.get(d).unwrap_or(&empty);
            out.insert(*d, a.combine(b, f));
        }
        out
    }

    pub fn add(&self, other: &CompletionElement) -> CompletionElement {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &CompletionElement) -> CompletionElement {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> CompletionElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, k: &Scalar) -> CompletionElement {
        let mut out = CompletionElement::zero();
        for (d, s) in &self.degrees {
            let coeffs = s.coeffs.iter().map(|c| c.mul(k)).collect();
            out.insert(*d, Series::with_validity(coeffs, s.validity));
        }
        out
    }

    /// Every known coefficient is zero.
    pub fn vanishes(&self) -> bool {
        self.degrees
            .values()
            .all(|s| s.coeffs.iter().all(Scalar::is_zero))
    }

    /// Equality on every coefficient known in both operands.
    pub fn agrees_with(&self, other: &CompletionElement) -> bool {
        self.sub(other).vanishes()
    }
}

/// The completion bracket. The coefficient at `(γ, m)` only involves operand
/// coefficients of order ≤ m, so each result degree is valid up to the
/// smallest validity among its contributing degree pairs.
pub fn completion_bracket(
    gamma: &Gamma,
    x: &CompletionElement,
    y: &CompletionElement,
) -> CompletionElement {
    let mut acc: BTreeMap<GroupElement, (Validity, Vec<Scalar>)> = BTreeMap::new();
    for (a, sa) in &x.degrees {
        let ea = gamma.embed(a);
        for (b, sb) in &y.degrees {
            let eb = gamma.embed(b);
            let d = a.add(b);
            let validity = sa.validity.min(sb.validity);
            let entry = acc.entry(d).or_insert((Validity::Exact, Vec::new()));
            entry.0 = entry.0.min(validity);
            let diff = eb.sub(&ea);
            for (i, ci) in sa.coeffs.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, cj) in sb.coeffs.iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    if !validity.covers((i + j) as u32) {
                        break;
                    }
                    let k = ci.mul(cj);
                    add_at(&mut entry.1, i + j, k.mul(&diff));
                    if i != j && validity.covers((i + j + 1) as u32) {
                        add_at(&mut entry.1, i + j + 1, k.mul_int(j as i64 - i as i64));
                    }
                }
            }
        }
    }
    let mut out = CompletionElement::zero();
    for (d, (validity, mut coeffs)) in acc {
        if let Validity::UpTo(n) = validity {
            coeffs.truncate(n as usize + 1);
        }
        out.insert(d, Series::with_validity(coeffs, validity));
    }
    out
}

fn add_at(v: &mut Vec<Scalar>, k: usize, s: Scalar) {
    if v.len() <= k {
        v.resize(k + 1, Scalar::zero());
    }
    v[k] = v[k].add(&s);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{bracket, BracketRule};

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    #[test]
    fn exact_matches_bracket() {
        let z = Gamma::integers();
        let x = l(1, 2).add(&l(-2, 0).scale(&Scalar::from_int(3)));
        let y = l(3, 1).sub(&l(0, 4));
        let want = bracket(&z, &x, &y, BracketRule::WGamma).unwrap();
        let got = completion_bracket(
            &z,
            &CompletionElement::from_element(&x),
            &CompletionElement::from_element(&y),
        );
        assert_eq!(got.to_element().unwrap(), want);
    }

    #[test]
    fn truncated_series_against_l00() {
        // x = Σ_j L(1,j) up to order 5; [x, L(0,0)] = Σ_j (−1 L(1,j) − j L(1,j+1)).
        let z = Gamma::integers();
        let one = GroupElement::int(1);
        let x =
            CompletionElement::from_series([(one, Series::truncated(vec![Scalar::one(); 6], 5))]);
        let y = CompletionElement::from_element(&l(0, 0));
        let r = completion_bracket(&z, &x, &y);
        let s = r.series(&one).unwrap();
        assert_eq!(s.validity(), Validity::UpTo(5));
        for m in 0..=5u32 {
            let want = Scalar::from_int(-1 - (m as i64 - 1).max(0));
            assert_eq!(s.coeff(m).unwrap(), want, "order {m}");
        }
        assert_eq!(s.coeff(6), None);
    }

    #[test]
    fn validity_is_min() {
        let z = Gamma::integers();
        let a = CompletionElement::from_series([(
            GroupElement::int(1),
            Series::truncated(vec![Scalar::one()], 3),
        )]);
        let b = CompletionElement::from_series([(
            GroupElement::int(2),
            Series::truncated(vec![Scalar::one()], 7),
        )]);
        let r = completion_bracket(&z, &a, &b);
        assert_eq!(
            r.series(&GroupElement::int(3)).unwrap().validity(),
            Validity::UpTo(3)
        );
    }
}
