use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{bracket, views, BasisIndex, BracketRule, Element};
use crate::linalg::{Echelon, Insert};
use crate::window::Window;

const W: BracketRule = BracketRule::WGamma;

/// The largest `n` with `x ∈ W^n`: the minimum level present.
pub fn filtration_level(x: &Element) -> Result<u32> {
    if x.has_central() {
        return Err(Error::CentralTerm("wgamma"));
    }
    x.min_level().ok_or(Error::ZeroElement)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// `y = [x_α, x]` for a homogeneous component `x_α`.
    Depth,
    /// `y = [L(α,j), x]` with `j` the last level of a homogeneous `x`.
    Length,
}

/// One bracket in a reduction chain: `result = [operator, previous]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub operator: Element,
    pub result: Element,
}

/// Outcome of a window closure check for an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCheck {
    pub window: Window,
    pub working_window: Window,
    pub span_dimension: usize,
    /// Bracket results thrown away because they left the working window.
    pub discarded: usize,
    /// Window basis elements at level ≥ j₀ that were not reached.
    pub missing: Vec<(GroupElement, u32)>,
    /// Window basis elements below level j₀ that were reached.
    pub spurious: Vec<(GroupElement, u32)>,
}

impl WindowCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.spurious.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub generator: Element,
    pub witness_chain: Vec<ReductionStep>,
    /// The basis element the chain ends on, with its coefficient.
    pub basis_element: (GroupElement, u32, Scalar),
    pub minimal_level: u32,
    pub classified_as: String,
    pub window_check: Option<WindowCheck>,
}

impl IdealReport {
    /// Re-executes every step of the chain through the bracket.
    pub fn replay(&self, gamma: &Gamma) -> Result<bool> {
        let mut cur = self.generator.clone();
        for step in &self.witness_chain {
            let next = bracket(gamma, &step.operator, &cur, W)?;
            if next != step.result {
                return Ok(false);
            }
            cur = next;
        }
        let (d, i, c) = &self.basis_element;
        Ok(cur == Element::term(BasisIndex::new(*d, *i), c.clone()))
    }
}

fn check_input(x: &Element) -> Result<()> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.has_central() {
        return Err(Error::CentralTerm("wgamma"));
    }
    Ok(())
}

fn single_term(x: &Element) -> Option<(GroupElement, u32, Scalar)> {
    if x.len() != 1 {
        return None;
    }
    let (idx, c) = x.terms().next()?;
    Some((idx.degree()?, idx.level()?, c.clone()))
}

/// Brackets `x` down to a multiple of one basis element: first by depth,
/// then by length.
pub fn reduce_to_basis(gamma: &Gamma, x: &Element) -> Result<IdealReport> {
    check_input(x)?;
    let mut chain = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(basis_element) = single_term(&cur) {
            let minimal_level = basis_element.1;
            return Ok(IdealReport {
                generator: x.clone(),
                witness_chain: chain,
                basis_element,
                minimal_level,
                classified_as: format!("W^{minimal_level}"),
                window_check: None,
            });
        }
        let support = views::support(gamma, &cur);
        let (kind, operator) = if support.len() > 1 {
            (
                StepKind::Depth,
                views::homogeneous_component(&cur, &support[0]),
            )
        } else {
            let (last, _) = views::last_term(gamma, &cur, &support[0])?;
            (StepKind::Length, Element::basis(support[0], last))
        };
        let result = bracket(gamma, &operator, &cur, W)?;
        debug_assert!(!result.is_zero());
        chain.push(ReductionStep {
            kind,
            operator,
            result: result.clone(),
        });
        cur = result;
    }
}

/// `ad_{L(β−γ,0)} ad_{L(γ,0)} − 2 ad_{L(β,0)} ad_{L(0,0)} + ad_{L(β+γ,0)} ad_{L(−γ,0)}`.
pub fn theta_apply(
    gamma: &Gamma,
    beta: &GroupElement,
    g: &GroupElement,
    x: &Element,
) -> Result<Element> {
    if g.is_zero() {
        return Err(Error::ZeroGamma);
    }
    let ad2 = |a: GroupElement, b: GroupElement| -> Result<Element> {
        let inner = bracket(gamma, &Element::basis(b, 0), x, W)?;
        bracket(gamma, &Element::basis(a, 0), &inner, W)
    };
    let zero = gamma.zero();
    let t1 = ad2(beta.sub(g), *g)?;
    let t2 = ad2(*beta, zero)?.scale(&Scalar::from_int(-2));
    let t3 = ad2(beta.add(g), g.neg())?;
    Ok(t1.add(&t2).add(&t3))
}

/// Extra room around the target window used while closing the ideal, so
/// that elements near the window's edge can still be reached.
pub const CLOSURE_SLACK: (u32, u32) = (2, 2);

/// Classifies the ideal generated by `x` and certifies the classification on
/// the window: the span of the ideal inside the window must contain exactly
/// the basis elements at level ≥ j₀.
pub fn ideal_generated(gamma: &Gamma, x: &Element, window: Window) -> Result<IdealReport> {
    let mut report = reduce_to_basis(gamma, x)?;
    let j0 = filtration_level(x)?;
    let work = window.widen(CLOSURE_SLACK.0, CLOSURE_SLACK.1);
    let basis: Vec<Element> = work
        .basis(gamma)
        .into_iter()
        .map(|(d, i)| Element::basis(d, i))
        .collect();

    let mut span: Echelon<BasisIndex> = Echelon::new();
    let mut queue: VecDeque<Element> = VecDeque::new();
    let mut discarded = 0usize;
    let mut seed = |e: Element, span: &mut Echelon<BasisIndex>, queue: &mut VecDeque<Element>| {
        if e.is_zero() {
            return;
        }
        if !work.contains_element(&e) {
            discarded += 1;
            return;
        }
        if span.insert(e.term_map().clone()) == Insert::Pivot {
            queue.push_back(e);
        }
    };

    seed(x.clone(), &mut span, &mut queue);
    for step in &report.witness_chain {
        seed(step.result.clone(), &mut span, &mut queue);
    }
    let (b0, l0, _) = report.basis_element;
    let g = gamma.unit_vector(0);
    for beta in work.degrees(gamma) {
        let th = theta_apply(gamma, &beta, &g, &Element::basis(b0, l0))?;
        seed(th, &mut span, &mut queue);
    }
    while let Some(e) = queue.pop_front() {
        for b in &basis {
            let z = bracket(gamma, b, &e, W)?;
            seed(z, &mut span, &mut queue);
        }
    }

    let mut missing = Vec::new();
    let mut spurious = Vec::new();
    for (d, i) in window.basis(gamma) {
        let mut v = std::collections::BTreeMap::new();
        v.insert(BasisIndex::new(d, i), Scalar::one());
        let inside = span.contains(&v);
        if i >= j0 && !inside {
            missing.push((d, i));
        }
        if i < j0 && inside {
            spurious.push((d, i));
        }
    }
    report.minimal_level = j0;
    report.classified_as = format!("W^{j0}");
    report.window_check = Some(WindowCheck {
        window,
        working_window: work,
        span_dimension: span.rank(),
        discarded,
        missing,
        spurious,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    #[test]
    fn filtration_levels() {
        assert_eq!(filtration_level(&l(3, 2).add(&l(1, 5))), Ok(2));
        assert_eq!(filtration_level(&l(2, 0)), Ok(0));
        assert_eq!(
            filtration_level(&l(0, 4).scale(&Scalar::from_int(7))),
            Ok(4)
        );
        assert_eq!(filtration_level(&Element::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn reductions() {
        let z = Gamma::integers();
        let r = reduce_to_basis(&z, &l(1, 0)).unwrap();
        assert!(r.witness_chain.is_empty());
        assert_eq!(r.minimal_level, 0);

        let r = reduce_to_basis(&z, &l(1, 0).add(&l(2, 0))).unwrap();
        assert_eq!(r.witness_chain.len(), 1);
        assert_eq!(r.witness_chain[0].kind, StepKind::Depth);
        assert_eq!(r.witness_chain[0].result, l(3, 0));
        assert!(r.replay(&z).unwrap());

        let r = reduce_to_basis(&z, &l(1, 0).add(&l(1, 1))).unwrap();
        assert_eq!(r.witness_chain.len(), 1);
        assert_eq!(r.witness_chain[0].kind, StepKind::Length);
        assert_eq!(r.witness_chain[0].result, l(2, 2).neg());
        assert!(r.replay(&z).unwrap());
    }

    #[test]
    fn theta_examples() {
        let z = Gamma::integers();
        let one = GroupElement::int(1);
        let got = theta_apply(&z, &GroupElement::int(2), &one, &l(0, 0)).unwrap();
        assert_eq!(got, l(2, 0).scale(&Scalar::from_int(-4)));
        let got = theta_apply(&z, &GroupElement::int(0), &one, &l(5, 3)).unwrap();
        assert_eq!(got, l(5, 3).scale(&Scalar::from_int(-4)));
        assert_eq!(
            theta_apply(&z, &one, &GroupElement::int(0), &l(0, 0)),
            Err(Error::ZeroGamma)
        );
    }

    #[test]
    fn ideal_classification() {
        let z = Gamma::integers();
        let w = Window::new(2, 3).unwrap();
        for (x, j) in [(l(0, 0), 0), (l(1, 3), 3), (l(1, 1).add(&l(2, 2)), 1)] {
            let r = ideal_generated(&z, &x, w).unwrap();
            assert_eq!(r.minimal_level, j);
            assert_eq!(r.classified_as, format!("W^{j}"));
            let check = r.window_check.as_ref().unwrap();
            assert!(check.passed(), "{check:?}");
            assert!(r.replay(&z).unwrap());
        }
    }
}
