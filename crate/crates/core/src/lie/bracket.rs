use std::fmt;
use std::str::FromStr;

use super::element::{BasisIndex, Element};
use crate::error::{Error, Result};
use rayon::prelude::*;

use crate::ground::{Gamma, GroupElement, Scalar};
use crate::residual::ResidualSummary;
use crate::window::Window;

/// Which Lie structure the bracket realises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketRule {
    /// W(Γ).
    WGamma,
    /// The central extension Ŵ(Γ).
    WGammaHat,
    /// `(α−β)L(α+β,i+j) + (j−i)L(α+β,i+j−1)`.
    WittType,
    /// `W^m / W^{n+1}`.
    Subquotient(u32, u32),
}

impl BracketRule {
    pub fn subquotient(m: u32, n: u32) -> Result<BracketRule> {
        if m > n {
            return Err(Error::InvalidWindow(format!(
                "subquotient needs m <= n, got {m} > {n}"
            )));
        }
        Ok(BracketRule::Subquotient(m, n))
    }

    fn name(&self) -> &'static str {
        match self {
            BracketRule::WGamma => "wgamma",
            BracketRule::WGammaHat => "wgamma-hat",
            BracketRule::WittType => "witt",
            BracketRule::Subquotient(..) => "subquotient",
        }
    }

    pub fn allows_central(&self) -> bool {
        matches!(self, BracketRule::WGammaHat)
    }

    /// Rejects central terms the rule forbids and levels outside a subquotient.
    pub fn check_input(&self, x: &Element) -> Result<()> {
        if x.has_central() && !self.allows_central() {
            return Err(Error::CentralTerm(self.name()));
        }
        if let BracketRule::Subquotient(m, n) = *self {
            if let Some(level) = x.levels().find(|l| *l < m || *l > n) {
                return Err(Error::LevelOutOfRange { level, m, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BracketRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketRule::Subquotient(m, n) => write!(f, "sub:{m}:{n}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for BracketRule {
    type Err = Error;

    /// Accepts `wgamma`, `wgamma-hat` (or `hat`), `witt`, and `sub:M:N`.
    fn from_str(s: &str) -> Result<BracketRule> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wgamma" | "w" => Ok(BracketRule::WGamma),
            "wgamma-hat" | "wgammahat" | "hat" => Ok(BracketRule::WGammaHat),
            "witt" | "witt-type" | "witttype" => Ok(BracketRule::WittType),
            other => {
                let parts: Vec<&str> = other.split(':').collect();
                if parts.len() == 3 && (parts[0] == "sub" || parts[0] == "subquotient") {
                    let parse = |p: &str| {
                        p.parse::<u32>()
                            .map_err(|_| Error::InvalidWindow(format!("bad level {p:?}")))
                    };
                    BracketRule::subquotient(parse(parts[1])?, parse(parts[2])?)
                } else {
                    Err(Error::InvalidWindow(format!("unknown bracket rule {s:?}")))
                }
            }
        }
    }
}

/// `[L(α,i), L(β,j)]` accumulated into `out` with weight `k`.
fn basic_bracket_into(
    out: &mut Element,
    rule: BracketRule,
    (a, i): (GroupElement, u32),
    (b, j): (GroupElement, u32),
    ea: &Scalar,
    eb: &Scalar,
    k: &Scalar,
) {
    let d = a.add(&b);
    let dj = j as i64 - i as i64;
    match rule {
        BracketRule::WGamma | BracketRule::WGammaHat | BracketRule::Subquotient(..) => {
            let top = match rule {
                BracketRule::Subquotient(_, n) => n,
                _ => u32::MAX,
            };
            if i + j <= top {
                out.add_term(BasisIndex::new(d, i + j), eb.sub(ea).mul(k));
            }
            if dj != 0 && i + j < top {
                out.add_term(BasisIndex::new(d, i + j + 1), k.mul_int(dj));
            }
            if rule == BracketRule::WGammaHat && i + j == 0 && d.is_zero() {
                // (α³ − α)/12
                let cube = ea.mul(ea).mul(ea);
                let value = cube.sub(ea).mul(&Scalar::ratio(1, 12)).mul(k);
                out.add_term(BasisIndex::Central, value);
            }
        }
        BracketRule::WittType => {
            out.add_term(BasisIndex::new(d, i + j), ea.sub(eb).mul(k));
            if dj != 0 && i + j >= 1 {
                out.add_term(BasisIndex::new(d, i + j - 1), k.mul_int(dj));
            }
        }
    }
}

/// The Lie bracket of two elements under `rule`.
pub fn bracket(gamma: &Gamma, x: &Element, y: &Element, rule: BracketRule) -> Result<Element> {
    rule.check_input(x)?;
    rule.check_input(y)?;
    let mut out = Element::zero();
    let ys: Vec<(GroupElement, u32, Scalar, &Scalar)> = y
        .terms()
        .filter_map(|(idx, c)| match idx {
            BasisIndex::Basic { degree, level } => Some((*degree, *level, gamma.embed(degree), c)),
            BasisIndex::Central => None,
        })
        .collect();
    for (idx, cx) in x.terms() {
        let BasisIndex::Basic {
            degree: a,
            level: i,
        } = *idx
        else {
            continue;
        };
        let ea = gamma.embed(&a);
        for (b, j, eb, cy) in &ys {
            let k = cx.mul(cy);
            basic_bracket_into(&mut out, rule, (a, i), (*b, *j), &ea, eb, &k);
        }
    }
    Ok(out)
}

/// Bracket of two basis elements.
pub fn bracket_basis(
    gamma: &Gamma,
    a: (GroupElement, u32),
    b: (GroupElement, u32),
    rule: BracketRule,
) -> Result<Element> {
    bracket(
        gamma,
        &Element::basis(a.0, a.1),
        &Element::basis(b.0, b.1),
        rule,
    )
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobi_residual(
    gamma: &Gamma,
    x: &Element,
    y: &Element,
    z: &Element,
    rule: BracketRule,
) -> Result<Element> {
    let mut acc = bracket(gamma, x, &bracket(gamma, y, z, rule)?, rule)?;
    acc = acc.add(&bracket(gamma, y, &bracket(gamma, z, x, rule)?, rule)?);
    acc = acc.add(&bracket(gamma, z, &bracket(gamma, x, y, rule)?, rule)?);
    Ok(acc)
}

/// Jacobi residuals on every triple of distinct window basis elements whose
/// levels the rule accepts.
pub fn jacobi_sweep(gamma: &Gamma, window: Window, rule: BracketRule) -> Result<ResidualSummary> {
    let (lo, hi) = match rule {
        BracketRule::Subquotient(m, n) => (m, n.min(window.level_bound)),
        _ => (0, window.level_bound),
    };
    let basis: Vec<Element> = window
        .basis_levels(gamma, lo, hi)
        .into_iter()
        .map(|(d, i)| Element::basis(d, i))
        .collect();
    let n = basis.len();
    // pair[p][q] = [b_p, b_q] for p < q
    let pair: Vec<Vec<Element>> = (0..n)
        .into_par_iter()
        .map(|p| {
            (p + 1..n)
                .map(|q| bracket(gamma, &basis[p], &basis[q], rule))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let get = |p: usize, q: usize| &pair[p][q - p - 1];
    let parts: Vec<ResidualSummary> = (0..n)
        .into_par_iter()
        .map(|p| -> Result<ResidualSummary> {
            let mut s = ResidualSummary::default();
            for q in p + 1..n {
                for r in q + 1..n {
                    // [x,[y,z]] + [y,[z,x]] + [z,[x,y]] with [z,x] = −[x,z]
                    let mut res = bracket(gamma, &basis[p], get(q, r), rule)?;
                    res = res.sub(&bracket(gamma, &basis[q], get(p, r), rule)?);
                    res = res.add(&bracket(gamma, &basis[r], get(p, q), rule)?);
                    if res.is_zero() {
                        s.pass();
                    } else {
                        let at = format!(
                            "({}, {}, {})",
                            basis[p].format(gamma),
                            basis[q].format(gamma),
                            basis[r].format(gamma)
                        );
                        s.fail(at, res.format(gamma));
                    }
                }
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(parts
        .into_iter()
        .fold(ResidualSummary::default(), ResidualSummary::merge))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64, i: u32) -> Element {
        Element::basis(GroupElement::int(n), i)
    }

    #[test]
    fn wgamma_example() {
        let z = Gamma::integers();
        let got = bracket(&z, &l(1, 2), &l(3, 1), BracketRule::WGamma).unwrap();
        let want = l(4, 3).scale(&Scalar::from_int(2)).sub(&l(4, 4));
        assert_eq!(got, want);
    }

    #[test]
    fn hat_central_terms() {
        let z = Gamma::integers();
        let got = bracket(&z, &l(2, 0), &l(-2, 0), BracketRule::WGammaHat).unwrap();
        let want = l(0, 0)
            .scale(&Scalar::from_int(-4))
            .add(&Element::central().scale(&Scalar::ratio(1, 2)));
        assert_eq!(got, want);
        let got = bracket(&z, &l(1, 0), &l(-1, 0), BracketRule::WGammaHat).unwrap();
        assert_eq!(got, l(0, 0).scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn central_rejected_outside_hat() {
        let z = Gamma::integers();
        let err = bracket(&z, &Element::central(), &l(1, 0), BracketRule::WGamma);
        assert!(matches!(err, Err(Error::CentralTerm(_))));
        let c = bracket(&z, &Element::central(), &l(1, 0), BracketRule::WGammaHat).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn subquotient_truncates_and_checks_levels() {
        let z = Gamma::integers();
        let rule = BracketRule::Subquotient(0, 1);
        let got = bracket(&z, &l(1, 0), &l(2, 1), rule).unwrap();
        assert_eq!(got, l(3, 1));
        let err = bracket(&z, &l(1, 2), &l(2, 1), rule);
        assert_eq!(
            err,
            Err(Error::LevelOutOfRange {
                level: 2,
                m: 0,
                n: 1
            })
        );
    }

    #[test]
    fn witt_lowers_level() {
        let z = Gamma::integers();
        let got = bracket(&z, &l(0, 0), &l(1, 3), BracketRule::WittType).unwrap();
        let want = l(1, 3)
            .scale(&Scalar::from_int(-1))
            .add(&l(1, 2).scale(&Scalar::from_int(3)));
        assert_eq!(got, want);
    }

    #[test]
    fn hat_jacobi_includes_central() {
        let z = Gamma::integers();
        let r = jacobi_residual(&z, &l(1, 0), &l(2, 0), &l(-3, 0), BracketRule::WGammaHat).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn rule_parsing() {
        assert_eq!(
            "wgamma".parse::<BracketRule>().unwrap(),
            BracketRule::WGamma
        );
        assert_eq!(
            "sub:0:2".parse::<BracketRule>().unwrap(),
            BracketRule::Subquotient(0, 2)
        );
        assert!("sub:3:2".parse::<BracketRule>().is_err());
        assert_eq!(
            BracketRule::Subquotient(1, 4)
                .to_string()
                .parse::<BracketRule>()
                .unwrap(),
            BracketRule::Subquotient(1, 4)
        );
    }
}
