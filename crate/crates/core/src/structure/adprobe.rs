use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{bracket, views, BasisIndex, BracketRule, Element};
use crate::linalg::Echelon;

/// The highest term of `ad_x^k(y)` as predicted by the product formula,
/// next to the computed coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestTerm {
    pub step: usize,
    pub degree: GroupElement,
    pub level: u32,
    pub predicted: Scalar,
    pub computed: Scalar,
    /// No term of the computed element sits above the predicted one.
    pub is_top: bool,
}

impl HighestTerm {
    pub fn holds(&self) -> bool {
        self.predicted == self.computed && (self.predicted.is_zero() || self.is_top)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdProbe {
    /// `ranks[k]` is the dimension of `span{ad_x^0 y, …, ad_x^k y}`.
    pub ranks: Vec<usize>,
    pub elements: Vec<Element>,
    /// Filled only for homogeneous `x`, basis-element `y` and the W(Γ) rule.
    pub highest_terms: Vec<HighestTerm>,
}

impl AdProbe {
    pub fn strictly_increasing(&self) -> bool {
        self.ranks.windows(2).all(|w| w[1] > w[0])
    }

    pub fn prediction_holds(&self) -> Option<bool> {
        if self.highest_terms.is_empty() {
            None
        } else {
            Some(self.highest_terms.iter().all(HighestTerm::holds))
        }
    }
}

/// Iterates `ad_x` on `y` for `steps` steps, tracking the rank of the span.
pub fn ad_probe(
    gamma: &Gamma,
    x: &Element,
    y: &Element,
    steps: usize,
    rule: BracketRule,
) -> Result<AdProbe> {
    if steps == 0 {
        return Err(Error::InvalidWindow(
            "ad probe needs at least one step".into(),
        ));
    }
    let mut ech: Echelon<BasisIndex> = Echelon::new();
    let mut ranks = Vec::with_capacity(steps + 1);
    let mut elements = Vec::with_capacity(steps + 1);
    let mut cur = y.clone();
    for k in 0..=steps {
        if k > 0 {
            cur = bracket(gamma, x, &cur, rule)?;
        }
        ech.insert(cur.term_map().clone());
        ranks.push(ech.rank());
        elements.push(cur.clone());
    }
    let highest_terms = predict(gamma, x, y, &elements, rule);
    Ok(AdProbe {
        ranks,
        elements,
        highest_terms,
    })
}

fn predict(
    gamma: &Gamma,
    x: &Element,
    y: &Element,
    elements: &[Element],
    rule: BracketRule,
) -> Vec<HighestTerm> {
    if rule != BracketRule::WGamma || x.is_zero() || !views::is_homogeneous(x) || y.len() != 1 {
        return Vec::new();
    }
    let (yi, yc) = y.terms().next().expect("one term");
    let (Some(beta), Some(j)) = (yi.degree(), yi.level()) else {
        return Vec::new();
    };
    let alpha0 = views::support(gamma, x)[0];
    let (i0, a) = views::last_term(gamma, x, &alpha0).expect("nonzero component");

    let mut out = Vec::new();
    let mut coeff = yc.clone();
    for (k, e) in elements.iter().enumerate() {
        if k > 0 {
            let p = (k - 1) as i64;
            let factor = j as i64 - i0 as i64 + p * (i0 as i64 + 1);
            coeff = coeff.mul_int(factor).mul(&a);
        }
        let degree = beta.add(&alpha0.scale(k as i64));
        let level = j + k as u32 * (i0 + 1);
        let computed = e.coeff(&BasisIndex::new(degree, level));
        let is_top = e
            .terms()
            .all(|(idx, _)| idx.degree() == Some(degree) && idx.level().unwrap_or(0) <= level);
        out.push(HighestTerm {
            step: k,
            degree,
            level,
            predicted: coeff.clone(),
            computed,
            is_top,
        });
    }
    out
}

/// Whether `ad_x^k L(β,1)`, `k = 0..=steps`, are linearly independent.
pub fn grading_independence_witness(
    gamma: &Gamma,
    x: &Element,
    beta: &GroupElement,
    steps: usize,
) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if views::support(gamma, x).contains(beta) {
        return Err(Error::BetaInSupport(gamma.format_degree(beta)));
    }
    let y = Element::basis(*beta, 1);
    if steps == 0 {
        return Ok(true);
    }
    let probe = ad_probe(gamma, x, &y, steps, BracketRule::WGamma)?;
    Ok(probe.ranks[steps] == steps + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    #[test]
    fn factorial_growth() {
        let z = Gamma::integers();
        let p = ad_probe(&z, &l(1, 0), &l(0, 1), 5, BracketRule::WGamma).unwrap();
        assert_eq!(p.ranks, vec![1, 2, 3, 4, 5, 6]);
        let mut fact = 1i64;
        for (k, h) in p.highest_terms.iter().enumerate() {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(h.predicted, Scalar::from_int(fact));
            assert!(h.holds());
        }
    }

    #[test]
    fn witt_contrast() {
        let z = Gamma::integers();
        let p = ad_probe(&z, &l(0, 0), &l(1, 3), 10, BracketRule::WittType).unwrap();
        assert!(p.ranks.iter().all(|&r| r <= 4));
    }

    #[test]
    fn zero_x() {
        let z = Gamma::integers();
        let p = ad_probe(&z, &Element::zero(), &l(2, 2), 3, BracketRule::WGamma).unwrap();
        assert_eq!(p.ranks, vec![1, 1, 1, 1]);
    }

    #[test]
    fn independence() {
        let z = Gamma::integers();
        assert!(grading_independence_witness(&z, &l(1, 0), &GroupElement::int(5), 6).unwrap());
        let x = l(1, 0).add(&l(2, 3).scale(&Scalar::from_int(2)));
        assert!(grading_independence_witness(&z, &x, &GroupElement::int(7), 4).unwrap());
        assert!(matches!(
            grading_independence_witness(&z, &x, &GroupElement::int(2), 4),
            Err(Error::BetaInSupport(_))
        ));
    }
}
