//! Derivations of W: scalar derivations, inner derivations by completion
//! elements, Leibniz checks and the decomposition `ad_y + D_φ`.

mod decompose;

use std::collections::{BTreeMap, HashMap};

pub use decompose::{decompose_derivation, direct_sum_check, DecompositionResult, DirectSumReport};

use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{completion_bracket, BasisIndex, CompletionElement, Element};
use crate::residual::ResidualSummary;
use crate::window::Window;

/// A group homomorphism `Γ → field`, given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveMap {
    values: Vec<Scalar>,
}

impl AdditiveMap {
    pub fn new(values: Vec<Scalar>) -> AdditiveMap {
        AdditiveMap { values }
    }

    pub fn zero(rank: usize) -> AdditiveMap {
        AdditiveMap {
            values: vec![Scalar::zero(); rank],
        }
    }

    /// `φ₀: α ↦ α`.
    pub fn canonical(gamma: &Gamma) -> AdditiveMap {
        AdditiveMap {
            values: (0..gamma.rank())
                .map(|k| gamma.generator_value(k).clone())
                .collect(),
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval(&self, a: &GroupElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (v, &n) in self.values.iter().zip(a.coords()) {
            if n != 0 {
                acc = acc.add(&v.mul_int(n as i64));
            }
        }
        acc
    }

    pub fn add(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> AdditiveMap {
        AdditiveMap {
            values: self.values.iter().map(|v| v.mul(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

/// `D_φ(L(α,i)) = φ(α) L(α,i)`.
pub fn apply_d_phi(phi: &AdditiveMap, x: &Element) -> Element {
    let mut out = Element::zero();
    for (idx, c) in x.terms() {
        if let Some(d) = idx.degree() {
            out.add_term(*idx, c.mul(&phi.eval(&d)));
        }
    }
    out
}

/// `ad_y(x) = [y, x]` in the completion.
pub fn apply_ad(gamma: &Gamma, y: &CompletionElement, x: &Element) -> CompletionElement {
    completion_bracket(gamma, y, &CompletionElement::from_element(x))
}

/// A derivation, either as `ad_y + D_φ` or by its values on the generators
/// `L(α,0)`, `L(α,1)` of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationSpec {
    Symbolic {
        y: CompletionElement,
        phi: AdditiveMap,
    },
    Table {
        images: BTreeMap<(GroupElement, u32), CompletionElement>,
    },
}

impl DerivationSpec {
    /// Tabulates `self` on the generators of `window`.
    pub fn tabulate(&self, gamma: &Gamma, window: Window) -> Result<DerivationSpec> {
        let mut ev = Evaluator::new(gamma, self);
        let mut images = BTreeMap::new();
        for (d, i) in window.generators(gamma) {
            images.insert((d, i), ev.basis(d, i)?);
        }
        Ok(DerivationSpec::Table { images })
    }
}

/// Evaluates a derivation on basis elements, extending a table to higher
/// levels through `[L(0,0), L(α,i)] = αL(α,i) + iL(α,i+1)`.
pub struct Evaluator<'a> {
    gamma: &'a Gamma,
    spec: &'a DerivationSpec,
    cache: HashMap<(GroupElement, u32), CompletionElement>,
}

impl<'a> Evaluator<'a> {
    pub fn new(gamma: &'a Gamma, spec: &'a DerivationSpec) -> Evaluator<'a> {
        Evaluator {
            gamma,
            spec,
            cache: HashMap::new(),
        }
    }

    pub fn basis(&mut self, d: GroupElement, i: u32) -> Result<CompletionElement> {
        if let Some(v) = self.cache.get(&(d, i)) {
            return Ok(v.clone());
        }
        let value = match self.spec {
            DerivationSpec::Symbolic { y, phi } => {
                let b = Element::basis(d, i);
                apply_ad(self.gamma, y, &b)
                    .add(&CompletionElement::from_element(&apply_d_phi(phi, &b)))
            }
            DerivationSpec::Table { images } => {
                if i <= 1 {
                    images.get(&(d, i)).cloned().ok_or_else(|| {
                        Error::MissingImage(format!("L({},{i})", self.gamma.format_degree(&d)))
                    })?
                } else {
                    // i·D L(α,i) = [D L00, L(α,i−1)] + [L00, D L(α,i−1)] − α D L(α,i−1)
                    let k = i - 1;
                    let d00 = self.basis(self.gamma.zero(), 0)?;
                    let dk = self.basis(d, k)?;
                    let l00 =
                        CompletionElement::from_element(&Element::basis(self.gamma.zero(), 0));
                    let lk = CompletionElement::from_element(&Element::basis(d, k));
                    let sum = completion_bracket(self.gamma, &d00, &lk)
                        .add(&completion_bracket(self.gamma, &l00, &dk))
                        .sub(&dk.scale(&self.gamma.embed(&d)));
                    sum.scale(&Scalar::ratio(1, k as i64))
                }
            }
        };
        self.cache.insert((d, i), value.clone());
        Ok(value)
    }

    pub fn apply(&mut self, x: &Element) -> Result<CompletionElement> {
        let mut acc = CompletionElement::zero();
        for (idx, c) in x.terms() {
            match idx {
                BasisIndex::Basic { degree, level } => {
                    acc = acc.add(&self.basis(*degree, *level)?.scale(c))
                }
                BasisIndex::Central => return Err(Error::CentralTerm("wgamma")),
            }
        }
        Ok(acc)
    }
}

/// Sweeps `D([a,b]) − [Da,b] − [a,Db]` over generator pairs of the window
/// whose bracket stays inside the window.
pub fn leibniz_check(
    gamma: &Gamma,
    spec: &DerivationSpec,
    window: Window,
) -> Result<ResidualSummary> {
    let gens = window.generators(gamma);
    let mut ev = Evaluator::new(gamma, spec);
    let mut summary = ResidualSummary::default();
    for (n, &(a, i)) in gens.iter().enumerate() {
        for &(b, j) in &gens[n + 1..] {
            if !window.contains_degree(&a.add(&b)) {
                continue;
            }
            let la = Element::basis(a, i);
            let lb = Element::basis(b, j);
            let ab = crate::lie::bracket(gamma, &la, &lb, crate::lie::BracketRule::WGamma)?;
            let lhs = ev.apply(&ab)?;
            let da = ev.basis(a, i)?;
            let db = ev.basis(b, j)?;
            let rhs = completion_bracket(gamma, &da, &CompletionElement::from_element(&lb)).add(
                &completion_bracket(gamma, &CompletionElement::from_element(&la), &db),
            );
            let res = lhs.sub(&rhs);
            if res.vanishes() {
                summary.pass();
            } else {
                let at = format!("({}, {})", la.format(gamma), lb.format(gamma));
                summary.fail(at, res.truncated_element(u32::MAX).format(gamma));
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    #[test]
    fn d_phi_examples() {
        let phi = AdditiveMap::new(vec![Scalar::from_int(5)]);
        assert_eq!(
            apply_d_phi(&phi, &l(3, 2)),
            l(3, 2).scale(&Scalar::from_int(15))
        );
        assert!(apply_d_phi(&phi, &l(0, 4)).is_zero());
        let g = Gamma::symbolic(1);
        let phi0 = AdditiveMap::canonical(&g);
        let a = g.element(&[2]);
        let x = Element::basis(a, 1);
        assert_eq!(apply_d_phi(&phi0, &x), x.scale(&g.embed(&a)));
    }

    #[test]
    fn ad_l00() {
        let z = Gamma::integers();
        let y = CompletionElement::from_element(&l(0, 0));
        let got = apply_ad(&z, &y, &l(3, 2)).to_element().unwrap();
        assert_eq!(
            got,
            l(3, 2)
                .scale(&Scalar::from_int(3))
                .add(&l(3, 3).scale(&Scalar::from_int(2)))
        );
    }

    #[test]
    fn leibniz_sweeps() {
        let z = Gamma::integers();
        let w = Window::new(2, 2).unwrap();
        let inner = DerivationSpec::Symbolic {
            y: CompletionElement::from_element(&l(1, 0)),
            phi: AdditiveMap::zero(1),
        };
        assert!(leibniz_check(&z, &inner, w).unwrap().is_zero());
        let scalar = DerivationSpec::Symbolic {
            y: CompletionElement::zero(),
            phi: AdditiveMap::new(vec![Scalar::from_int(3)]),
        };
        assert!(leibniz_check(&z, &scalar, w).unwrap().is_zero());

        let DerivationSpec::Table { mut images } = inner.tabulate(&z, w).unwrap() else {
            unreachable!()
        };
        let key = (GroupElement::int(1), 1);
        let bad = images[&key].add(&CompletionElement::from_element(&l(0, 0)));
        images.insert(key, bad);
        let corrupted = DerivationSpec::Table { images };
        let summary = leibniz_check(&z, &corrupted, w).unwrap();
        assert!(!summary.is_zero());
    }
}
