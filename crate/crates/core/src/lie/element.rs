use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::ground::{Gamma, GroupElement, Scalar};

/// A basis vector `L(α, i)` or the central element `C`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BasisIndex {
    Basic { degree: GroupElement, level: u32 },
    Central,
}

impl BasisIndex {
    pub fn new(degree: GroupElement, level: u32) -> BasisIndex {
        BasisIndex::Basic { degree, level }
    }

    pub fn degree(&self) -> Option<GroupElement> {
        match self {
            BasisIndex::Basic { degree, .. } => Some(*degree),
            BasisIndex::Central => None,
        }
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            BasisIndex::Basic { level, .. } => Some(*level),
            BasisIndex::Central => None,
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, BasisIndex::Central)
    }

    pub fn format(&self, gamma: &Gamma) -> String {
        match self {
            BasisIndex::Basic { degree, level } => {
                format!("L({},{})", gamma.format_degree(degree), level)
            }
            BasisIndex::Central => "C".to_string(),
        }
    }
}

/// Finite linear combination of basis indices. Zero coefficients are never
/// stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(degree: GroupElement, level: u32) -> Element {
        Element::term(BasisIndex::new(degree, level), Scalar::one())
    }

    pub fn central() -> Element {
        Element::term(BasisIndex::Central, Scalar::one())
    }

    pub fn term(index: BasisIndex, coeff: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisIndex, Scalar)>>(terms: I) -> Element {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    /// Adds `coeff · index` in place.
    pub fn add_term(&mut self, index: BasisIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, k: &Scalar) {
        if k.is_zero() {
            return;
        }
        for (i, c) in &other.terms {
            self.add_term(*i, c.mul(k));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<BasisIndex, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, index: &BasisIndex) -> Scalar {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn has_central(&self) -> bool {
        self.terms.contains_key(&BasisIndex::Central)
    }

    pub fn central_coeff(&self) -> Scalar {
        self.coeff(&BasisIndex::Central)
    }

    pub fn without_central(&self) -> Element {
        let mut e = self.clone();
        e.terms.remove(&BasisIndex::Central);
        e
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(i, c)| (*i, c.mul(k))).collect(),
        }
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter<F: Fn(&BasisIndex) -> bool>(&self, keep: F) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| keep(i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().filter_map(BasisIndex::level)
    }

    pub fn max_level(&self) -> Option<u32> {
        self.levels().max()
    }

    pub fn min_level(&self) -> Option<u32> {
        self.levels().min()
    }

    /// Largest |coordinate| over all degrees present.
    pub fn max_degree_norm(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(BasisIndex::degree)
            .map(|d| d.norm())
            .max()
            .unwrap_or(0)
    }

    /// Canonical text: terms ordered by (degree under the group order, level),
    /// central term last.
    pub fn format(&self, gamma: &Gamma) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&BasisIndex> = self.terms.keys().collect();
        keys.sort_by(|a, b| compare_indices(gamma, a, b));
        let mut out = String::new();
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let (negative, magnitude) = if c.is_negative_leading() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.fmt_factor(gamma.names()));
                out.push('*');
            }
            out.push_str(&key.format(gamma));
        }
        out
    }
}

/// Printing order of basis indices.
pub fn compare_indices(gamma: &Gamma, a: &BasisIndex, b: &BasisIndex) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (BasisIndex::Central, BasisIndex::Central) => Ordering::Equal,
        (BasisIndex::Central, _) => Ordering::Greater,
        (_, BasisIndex::Central) => Ordering::Less,
        (
            BasisIndex::Basic {
                degree: da,
                level: la,
            },
            BasisIndex::Basic {
                degree: db,
                level: lb,
            },
        ) => gamma.compare(da, db).then(la.cmp(lb)),
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                BasisIndex::Basic { degree, level } => write!(f, "({c:?})L({degree:?},{level})")?,
                BasisIndex::Central => write!(f, "({c:?})C")?,
            }
        }
        Ok(())
    }
}
