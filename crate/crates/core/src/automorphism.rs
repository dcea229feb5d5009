//! The automorphisms `φ_{τ,c}: L(α,i) ↦ τ(α) c^{−i−1} L(cα,i)` and their group law.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar, ScaleMap};
use crate::lie::{bracket, BasisIndex, BracketRule, Element};
use crate::residual::ResidualSummary;
use crate::window::Window;

/// A character `τ: Γ → field*`, given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Result<Character> {
        if values.iter().any(Scalar::is_zero) {
            return Err(Error::DivisionByZero);
        }
        Ok(Character { values })
    }

    pub fn trivial(rank: usize) -> Character {
        Character {
            values: vec![Scalar::one(); rank],
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// `τ(α) = Π τ(g_k)^{n_k}`.
    pub fn eval(&self, a: &GroupElement) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &n) in self.values.iter().zip(a.coords()) {
            if n != 0 {
                acc = acc.mul(&v.pow(n).expect("character values are nonzero"));
            }
        }
        acc
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutElement {
    pub tau: Character,
    pub c: ScaleMap,
}

impl AutElement {
    pub fn new(tau: Character, c: ScaleMap) -> AutElement {
        AutElement { tau, c }
    }

    pub fn identity(gamma: &Gamma) -> AutElement {
        AutElement {
            tau: Character::trivial(gamma.rank()),
            c: ScaleMap::identity(gamma),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_identity() && self.tau.values.iter().all(Scalar::is_one)
    }

    /// Image of `L(α,i)` as `(degree, level, coefficient)`.
    pub fn apply_basis(&self, a: &GroupElement, i: u32) -> (GroupElement, u32, Scalar) {
        let c_pow = self
            .c
            .value()
            .pow(-(i as i32) - 1)
            .expect("scale value is nonzero");
        (self.c.apply(a), i, self.tau.eval(a).mul(&c_pow))
    }
}

pub fn aut_apply(a: &AutElement, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (idx, coeff) in x.terms() {
        match idx {
            BasisIndex::Basic { degree, level } => {
                let (d, i, k) = a.apply_basis(degree, *level);
                out.add_term(BasisIndex::new(d, i), k.mul(coeff));
            }
            BasisIndex::Central => return Err(Error::CentralTermPresent),
        }
    }
    Ok(out)
}

/// `(τ₁,c₁)·(τ₂,c₂) = (α ↦ τ₁(c₂α)τ₂(α), c₁c₂)`.
pub fn aut_compose(gamma: &Gamma, a1: &AutElement, a2: &AutElement) -> AutElement {
    let values = (0..gamma.rank())
        .map(|k| {
            let e = gamma.unit_vector(k);
            a1.tau.eval(&a2.c.apply(&e)).mul(&a2.tau.values[k])
        })
        .collect();
    AutElement {
        tau: Character { values },
        c: a1.c.compose(&a2.c),
    }
}

/// `τ′(α) = τ(c⁻¹α)⁻¹` together with `c⁻¹`.
pub fn aut_invert(gamma: &Gamma, a: &AutElement) -> AutElement {
    let c = a.c.inverse();
    let values = (0..gamma.rank())
        .map(|k| {
            let e = gamma.unit_vector(k);
            a.tau
                .eval(&c.apply(&e))
                .inv()
                .expect("character values are nonzero")
        })
        .collect();
    AutElement {
        tau: Character { values },
        c,
    }
}

/// Checks `a([x,y]) = [a(x), a(y)]` on every pair of window basis elements.
pub fn aut_verify(gamma: &Gamma, a: &AutElement, window: Window) -> Result<ResidualSummary> {
    let basis: Vec<Element> = window
        .basis(gamma)
        .into_iter()
        .map(|(d, i)| Element::basis(d, i))
        .collect();
    let images: Vec<Element> = basis
        .iter()
        .map(|b| aut_apply(a, b))
        .collect::<Result<_>>()?;
    let mut summary = ResidualSummary::default();
    for n in 0..basis.len() {
        for m in n + 1..basis.len() {
            let lhs = aut_apply(
                a,
                &bracket(gamma, &basis[n], &basis[m], BracketRule::WGamma)?,
            )?;
            let rhs = bracket(gamma, &images[n], &images[m], BracketRule::WGamma)?;
            let r = lhs.sub(&rhs);
            if r.is_zero() {
                summary.pass();
            } else {
                summary.fail(
                    format!("({}, {})", basis[n].format(gamma), basis[m].format(gamma)),
                    r.format(gamma),
                );
            }
        }
    }
    Ok(summary)
}

/// Extends a bracket-preserving map given on `L(α,0)`, `L(α,1)` to every
/// window level via `σ(L(α,i+1)) = ([σL(0,0), σL(α,i)] − α σL(α,i)) / i`.
pub fn extend_from_generators(
    gamma: &Gamma,
    generators: &BTreeMap<(GroupElement, u32), Element>,
    window: Window,
) -> Result<BTreeMap<(GroupElement, u32), Element>> {
    let missing = |d: &GroupElement, i: u32| {
        Error::MissingImage(format!("L({},{i})", gamma.format_degree(d)))
    };
    let zero = gamma.zero();
    let s00 = generators
        .get(&(zero, 0))
        .ok_or_else(|| missing(&zero, 0))?
        .clone();
    let mut out = BTreeMap::new();
    for d in window.degrees(gamma) {
        let mut prev = generators
            .get(&(d, 0))
            .ok_or_else(|| missing(&d, 0))?
            .clone();
        out.insert((d, 0), prev.clone());
        if window.level_bound == 0 {
            continue;
        }
        prev = generators
            .get(&(d, 1))
            .ok_or_else(|| missing(&d, 1))?
            .clone();
        out.insert((d, 1), prev.clone());
        for i in 1..window.level_bound {
            let next = bracket(gamma, &s00, &prev, BracketRule::WGamma)?
                .sub(&prev.scale(&gamma.embed(&d)))
                .scale(&Scalar::ratio(1, i as i64));
            out.insert((d, i + 1), next.clone());
            prev = next;
        }
    }
    Ok(out)
}

/// Rigidity on the window: the map determined by the generator images of
/// `a` agrees with `a` everywhere, and a map fixing the generators is the
/// identity.
pub fn rigidity_check(gamma: &Gamma, a: &AutElement, window: Window) -> Result<bool> {
    let tabulate = |f: &dyn Fn(&Element) -> Result<Element>| -> Result<BTreeMap<(GroupElement, u32), Element>> {
        window.generators(gamma).into_iter().map(|(d, i)| Ok(((d, i), f(&Element::basis(d, i))?))).collect()
    };
    let from_a = extend_from_generators(gamma, &tabulate(&|x| aut_apply(a, x))?, window)?;
    for ((d, i), img) in &from_a {
        if *img != aut_apply(a, &Element::basis(*d, *i))? {
            return Ok(false);
        }
    }
    let fixed = extend_from_generators(gamma, &tabulate(&|x| Ok(x.clone()))?, window)?;
    Ok(fixed
        .iter()
        .all(|((d, i), img)| *img == Element::basis(*d, *i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::filtration_level;

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    fn neg(z: &Gamma, q: Scalar) -> AutElement {
        AutElement::new(Character::new(vec![q]).unwrap(), ScaleMap::negation(z))
    }

    #[test]
    fn apply_examples() {
        let z = Gamma::integers();
        let q = Scalar::ratio(3, 7);
        let a = neg(&z, q.clone());
        assert_eq!(aut_apply(&a, &l(1, 2)).unwrap(), l(-1, 2).scale(&q.neg()));
        assert_eq!(aut_apply(&a, &l(0, 0)).unwrap(), l(0, 0).neg());
        let id = AutElement::identity(&z);
        let x = l(2, 1).add(&l(-1, 3));
        assert_eq!(aut_apply(&id, &x).unwrap(), x);
        assert_eq!(
            aut_apply(&a, &Element::central()),
            Err(Error::CentralTermPresent)
        );
    }

    #[test]
    fn compose_example() {
        let z = Gamma::integers();
        let p = Scalar::from_int(2);
        let q = Scalar::from_int(5);
        let c = aut_compose(&z, &neg(&z, p.clone()), &neg(&z, q.clone()));
        assert!(c.c.is_identity());
        assert_eq!(c.tau.values()[0], q.div(&p).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let z = Gamma::integers();
        let a = neg(&z, Scalar::ratio(-2, 3));
        let inv = aut_invert(&z, &a);
        assert!(aut_compose(&z, &a, &inv).is_identity());
        assert!(aut_compose(&z, &inv, &a).is_identity());
        assert_eq!(aut_invert(&z, &inv), a);
    }

    #[test]
    fn verify_and_fault() {
        let z = Gamma::integers();
        let w = Window::new(2, 2).unwrap();
        let a = neg(&z, Scalar::from_int(3));
        assert!(aut_verify(&z, &a, w).unwrap().is_zero());
        assert!(rigidity_check(&z, &a, w).unwrap());
        // filtration levels are preserved
        let x = l(1, 2).add(&l(-2, 3));
        assert_eq!(
            filtration_level(&aut_apply(&a, &x).unwrap()),
            filtration_level(&x)
        );
    }
}
