use super::element::{BasisIndex, Element};
use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};

/// Degrees with a nonzero homogeneous component, in group order.
pub fn support(gamma: &Gamma, x: &Element) -> Vec<GroupElement> {
    let mut degrees: Vec<GroupElement> = x.terms().filter_map(|(i, _)| i.degree()).collect();
    degrees.sort_by(|a, b| gamma.compare(a, b));
    degrees.dedup();
    degrees
}

/// Number of degrees in the support.
pub fn depth(gamma: &Gamma, x: &Element) -> usize {
    support(gamma, x).len()
}

/// The degree-`d` part of `x` (central term excluded).
pub fn homogeneous_component(x: &Element, d: &GroupElement) -> Element {
    x.filter(|i| i.degree().as_ref() == Some(d))
}

fn nonempty(gamma: &Gamma, x: &Element, d: &GroupElement) -> Result<Element> {
    let c = homogeneous_component(x, d);
    if c.is_zero() {
        Err(Error::EmptyComponent(gamma.format_degree(d)))
    } else {
        Ok(c)
    }
}

/// Last level minus first level plus one, within degree `d`.
pub fn length(gamma: &Gamma, x: &Element, d: &GroupElement) -> Result<u32> {
    let c = nonempty(gamma, x, d)?;
    Ok(c.max_level().unwrap() - c.min_level().unwrap() + 1)
}

/// Lowest-level term `(level, coefficient)` of the degree-`d` component.
pub fn first_term(gamma: &Gamma, x: &Element, d: &GroupElement) -> Result<(u32, Scalar)> {
    let c = nonempty(gamma, x, d)?;
    let level = c.min_level().unwrap();
    Ok((level, c.coeff(&BasisIndex::new(*d, level))))
}

/// Highest-level term `(level, coefficient)` of the degree-`d` component.
pub fn last_term(gamma: &Gamma, x: &Element, d: &GroupElement) -> Result<(u32, Scalar)> {
    let c = nonempty(gamma, x, d)?;
    let level = c.max_level().unwrap();
    Ok((level, c.coeff(&BasisIndex::new(*d, level))))
}

/// Whether `x` lives in a single degree.
pub fn is_homogeneous(x: &Element) -> bool {
    let mut degrees = x.terms().filter_map(|(i, _)| i.degree());
    match degrees.next() {
        None => true,
        Some(d) => degrees.all(|e| e == d),
    }
}
