//! 2-cocycles on W: evaluation, the cyclic identity, normalization against
//! the canonical cocycle and coboundary fitting.

mod fit;
mod normalize;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{bracket, bracket_basis, BasisIndex, BracketRule, Element};
use crate::residual::ResidualSummary;
use crate::window::Window;

pub use fit::{coboundary_fit, CertificateEquation, FitResult};
pub use normalize::{
    build_f, c_estimates, extract_c, ladder_check, normalize_cocycle, required_window,
    NormalizationResult,
};

pub type Index = (GroupElement, u32);

/// A linear functional on W, zero outside its stored support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearFunctional {
    pub values: BTreeMap<Index, Scalar>,
}

impl LinearFunctional {
    pub fn zero() -> LinearFunctional {
        LinearFunctional::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = (Index, Scalar)>) -> LinearFunctional {
        LinearFunctional {
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn get(&self, d: &GroupElement, i: u32) -> Scalar {
        self.values.get(&(*d, i)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, d: GroupElement, i: u32, v: Scalar) {
        if v.is_zero() {
            self.values.remove(&(d, i));
        } else {
            self.values.insert((d, i), v);
        }
    }

    pub fn eval(&self, x: &Element) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (idx, c) in x.terms() {
            let BasisIndex::Basic { degree, level } = idx else {
                return Err(Error::CentralTermPresent);
            };
            acc = acc.add(&self.get(degree, *level).mul(c));
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &LinearFunctional) -> LinearFunctional {
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.set(k.0, k.1, out.get(&k.0, k.1).sub(v));
        }
        out
    }
}

/// Cocycle values on ordered basis pairs `a < b` of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub window: Window,
    values: BTreeMap<(Index, Index), Scalar>,
}

impl CocycleTable {
    pub fn new(window: Window) -> CocycleTable {
        CocycleTable {
            window,
            values: BTreeMap::new(),
        }
    }

    /// Tabulates `psi` on every basis pair of `window`.
    pub fn tabulate(gamma: &Gamma, psi: &Cocycle, window: Window) -> Result<CocycleTable> {
        let basis = window.basis(gamma);
        let mut table = CocycleTable::new(window);
        for (n, a) in basis.iter().enumerate() {
            for b in &basis[n + 1..] {
                table.set(*a, *b, eval_basis(gamma, psi, *a, *b)?);
            }
        }
        Ok(table)
    }

    /// Stores `ψ(a,b) = v`, and with it `ψ(b,a) = −v`.
    pub fn set(&mut self, a: Index, b: Index, v: Scalar) {
        let (key, v) = if a < b {
            ((a, b), v)
        } else {
            ((b, a), v.neg())
        };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn get(&self, a: Index, b: Index) -> Scalar {
        if a == b {
            return Scalar::zero();
        }
        if a < b {
            self.values.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.values
                .get(&(b, a))
                .map(Scalar::neg)
                .unwrap_or_default()
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Index, Index), &Scalar)> {
        self.values.iter()
    }

    fn covers(&self, a: &Index) -> bool {
        self.window.contains_degree(&a.0) && a.1 <= self.window.level_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    /// `φ₀(L(α,i), L(β,j)) = δ_{α+β,0} δ_{i+j,0} (α³ − α)/12`.
    Canonical,
    /// `ψ_f(x,y) = f([x,y])`.
    Coboundary(LinearFunctional),
    Table(CocycleTable),
    LinearCombo(Vec<(Scalar, Cocycle)>),
}

impl Cocycle {
    pub fn zero() -> Cocycle {
        Cocycle::LinearCombo(Vec::new())
    }

    pub fn scale(self, k: Scalar) -> Cocycle {
        Cocycle::LinearCombo(vec![(k, self)])
    }

    pub fn plus(self, other: Cocycle) -> Cocycle {
        Cocycle::LinearCombo(vec![(Scalar::one(), self), (Scalar::one(), other)])
    }

    pub fn minus(self, other: Cocycle) -> Cocycle {
        Cocycle::LinearCombo(vec![(Scalar::one(), self), (Scalar::from_int(-1), other)])
    }
}

fn out_of_window(gamma: &Gamma, a: &Index) -> Error {
    Error::OutOfWindow(BasisIndex::new(a.0, a.1).format(gamma))
}

/// `ψ(L(a), L(b))`.
pub fn eval_basis(gamma: &Gamma, psi: &Cocycle, a: Index, b: Index) -> Result<Scalar> {
    match psi {
        Cocycle::Canonical => {
            if a.1 == 0 && b.1 == 0 && a.0.add(&b.0).is_zero() {
                let x = gamma.embed(&a.0);
                Ok(x.mul(&x).mul(&x).sub(&x).mul(&Scalar::ratio(1, 12)))
            } else {
                Ok(Scalar::zero())
            }
        }
        Cocycle::Coboundary(f) => f.eval(&bracket_basis(gamma, a, b, BracketRule::WGamma)?),
        Cocycle::Table(t) => {
            for x in [&a, &b] {
                if !t.covers(x) {
                    return Err(out_of_window(gamma, x));
                }
            }
            Ok(t.get(a, b))
        }
        Cocycle::LinearCombo(terms) => {
            let mut acc = Scalar::zero();
            for (k, c) in terms {
                acc = acc.add(&k.mul(&eval_basis(gamma, c, a, b)?));
            }
            Ok(acc)
        }
    }
}

/// Bilinear evaluation `ψ(x, y)`.
pub fn cocycle_eval(gamma: &Gamma, psi: &Cocycle, x: &Element, y: &Element) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (ix, cx) in x.terms() {
        let BasisIndex::Basic {
            degree: a,
            level: i,
        } = ix
        else {
            return Err(Error::CentralTermPresent);
        };
        for (iy, cy) in y.terms() {
            let BasisIndex::Basic {
                degree: b,
                level: j,
            } = iy
            else {
                return Err(Error::CentralTermPresent);
            };
            let v = eval_basis(gamma, psi, (*a, *i), (*b, *j))?;
            if !v.is_zero() {
                acc = acc.add(&v.mul(cx).mul(cy));
            }
        }
    }
    Ok(acc)
}

/// `ψ(x,[y,z]) + ψ(y,[z,x]) + ψ(z,[x,y])` on every triple of distinct
/// window basis elements.
pub fn cocycle_condition_check(
    gamma: &Gamma,
    psi: &Cocycle,
    window: Window,
) -> Result<ResidualSummary> {
    let basis: Vec<Element> = window
        .basis(gamma)
        .into_iter()
        .map(|(d, i)| Element::basis(d, i))
        .collect();
    let n = basis.len();
    let per_first: Vec<ResidualSummary> = (0..n)
        .into_par_iter()
        .map(|p| -> Result<ResidualSummary> {
            let mut s = ResidualSummary::default();
            let x = &basis[p];
            for q in p + 1..n {
                let y = &basis[q];
                let xy = bracket(gamma, x, y, BracketRule::WGamma)?;
                for z in &basis[q + 1..] {
                    let yz = bracket(gamma, y, z, BracketRule::WGamma)?;
                    let zx = bracket(gamma, z, x, BracketRule::WGamma)?;
                    let r = cocycle_eval(gamma, psi, x, &yz)?
                        .add(&cocycle_eval(gamma, psi, y, &zx)?)
                        .add(&cocycle_eval(gamma, psi, z, &xy)?);
                    if r.is_zero() {
                        s.pass();
                    } else {
                        s.fail(
                            format!(
                                "({}, {}, {})",
                                x.format(gamma),
                                y.format(gamma),
                                z.format(gamma)
                            ),
                            gamma.display_scalar(&r),
                        );
                    }
                }
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(per_first
        .into_iter()
        .fold(ResidualSummary::default(), ResidualSummary::merge))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(n: i64, i: u32) -> Index {
        (GroupElement::int(n), i)
    }

    #[test]
    fn canonical_values() {
        let z = Gamma::integers();
        let c = Cocycle::Canonical;
        assert_eq!(
            eval_basis(&z, &c, ix(2, 0), ix(-2, 0)).unwrap(),
            Scalar::ratio(1, 2)
        );
        assert_eq!(
            eval_basis(&z, &c, ix(-2, 0), ix(2, 0)).unwrap(),
            Scalar::ratio(-1, 2)
        );
        assert_eq!(
            eval_basis(&z, &c, ix(1, 0), ix(-1, 0)).unwrap(),
            Scalar::zero()
        );
        assert_eq!(
            eval_basis(&z, &c, ix(3, 0), ix(-3, 0)).unwrap(),
            Scalar::from_int(2)
        );
        assert_eq!(
            eval_basis(&z, &c, ix(3, 1), ix(-3, 0)).unwrap(),
            Scalar::zero()
        );
    }

    #[test]
    fn coboundary_value() {
        // ψ_f(L(α,0), L(−α,0)) = −2α f(L(0,0))
        let z = Gamma::integers();
        let f = LinearFunctional::from_values([(ix(0, 0), Scalar::from_int(5))]);
        let psi = Cocycle::Coboundary(f);
        assert_eq!(
            eval_basis(&z, &psi, ix(3, 0), ix(-3, 0)).unwrap(),
            Scalar::from_int(-30)
        );
    }

    #[test]
    fn cyclic_identity() {
        let z = Gamma::integers();
        let w = Window::new(3, 2).unwrap();
        assert!(cocycle_condition_check(&z, &Cocycle::Canonical, w)
            .unwrap()
            .is_zero());
        let f = LinearFunctional::from_values([
            (ix(1, 1), Scalar::from_int(2)),
            (ix(0, 0), Scalar::one()),
        ]);
        assert!(cocycle_condition_check(&z, &Cocycle::Coboundary(f), w)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn perturbed_table_fails_locally() {
        let z = Gamma::integers();
        let w = Window::new(2, 1).unwrap();
        let closure = required_window(w);
        let mut t = CocycleTable::tabulate(&z, &Cocycle::Canonical, closure).unwrap();
        t.set(ix(1, 1), ix(-1, 0), Scalar::one());
        let s = cocycle_condition_check(&z, &Cocycle::Table(t), w).unwrap();
        assert!(!s.is_zero());
        for (at, _) in &s.failures {
            assert!(at.contains("L(1,1)") || at.contains("L(-1,0)"), "{at}");
        }
    }

    #[test]
    fn table_out_of_window() {
        let z = Gamma::integers();
        let t =
            CocycleTable::tabulate(&z, &Cocycle::Canonical, Window::new(1, 1).unwrap()).unwrap();
        assert!(matches!(
            eval_basis(&z, &Cocycle::Table(t), ix(2, 0), ix(-2, 0)),
            Err(Error::OutOfWindow(_))
        ));
    }
}
