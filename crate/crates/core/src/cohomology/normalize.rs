use rayon::prelude::*;

use super::{cocycle_condition_check, eval_basis, Cocycle, Index, LinearFunctional};
use crate::error::{Error, Result};
use crate::ground::{Gamma, Scalar};
use crate::lie::{bracket_basis, BracketRule};
use crate::residual::ResidualSummary;
use crate::window::Window;

/// Degree pairs `(k·1, −k·1)` used to read off the central charge.
pub const C_PAIRS: [i64; 2] = [2, 3];

/// The window a cocycle must be known on so that `f` can be built for every
/// bracket image of a pair in `window`.
pub fn required_window(window: Window) -> Window {
    window.widen(window.degree_bound, window.level_bound + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub c: Scalar,
    pub f: LinearFunctional,
    /// Where `f` was built and the cocycle was read.
    pub required_window: Window,
    /// Largest window `(a, I)` with `a ≤ A` on which the residual vanished.
    pub residual_max_window: Option<Window>,
    pub residual: ResidualSummary,
}

impl NormalizationResult {
    pub fn success(&self) -> bool {
        self.residual.is_zero()
    }

    /// `ψ − c·φ₀ − ψ_f`.
    pub fn normalized(&self, psi: &Cocycle) -> Cocycle {
        Cocycle::LinearCombo(vec![
            (Scalar::one(), psi.clone()),
            (self.c.neg(), Cocycle::Canonical),
            (Scalar::from_int(-1), Cocycle::Coboundary(self.f.clone())),
        ])
    }
}

/// The functional `f` on the window defined by induction on the level so
/// that `ψ − ψ_f` vanishes on the pairs `(L(0,0), L(α,i))`, `(L(0,1), L(α,0))`
/// and `(L(1,0), L(−1,1))`.
pub fn build_f(gamma: &Gamma, psi: &Cocycle, window: Window) -> Result<LinearFunctional> {
    let unit = gamma.unit().ok_or(Error::MissingUnit)?;
    let zero = gamma.zero();
    let half = Scalar::ratio(1, 2);
    let psi_at = |a: Index, b: Index| eval_basis(gamma, psi, a, b);
    let mut f = LinearFunctional::zero();
    for d in window.degrees(gamma) {
        let alpha = gamma.embed(&d);
        let mut prev = Scalar::zero();
        for i in window.levels() {
            let v = match (d.is_zero(), i) {
                (true, 0) => psi_at((unit.neg(), 0), (unit, 0))?.mul(&half),
                (false, 0) => psi_at((zero, 0), (d, 0))?.div(&alpha)?,
                (true, 1) => psi_at((zero, 0), (zero, 1))?
                    .add(&psi_at((unit.neg(), 1), (unit, 0))?)
                    .mul(&half),
                (false, 1) => psi_at((zero, 0), (d, 1))?
                    .add(&psi_at((zero, 1), (d, 0))?)
                    .div(&alpha.mul_int(2))?,
                (_, 2) => psi_at((zero, 0), (d, 1))?
                    .sub(&psi_at((zero, 1), (d, 0))?)
                    .mul(&half),
                _ => psi_at((zero, 0), (d, i - 1))?
                    .sub(&alpha.mul(&prev))
                    .mul(&Scalar::ratio(1, i as i64 - 1)),
            };
            f.set(d, i, v.clone());
            prev = v;
        }
    }
    Ok(f)
}

/// Estimates of `c` from each pair `(k·1, −k·1)` inside the window, using
/// `φ₀(L(k,0), L(−k,0)) = (k³ − k)/12`.
pub fn c_estimates(
    gamma: &Gamma,
    phi: &Cocycle,
    window: Window,
    pairs: &[i64],
) -> Result<Vec<(i64, Scalar)>> {
    let unit = gamma.unit().ok_or(Error::MissingUnit)?;
    let mut out = Vec::new();
    for &k in pairs {
        let d = unit.scale(k);
        if !window.contains_degree(&d) {
            continue;
        }
        let value = eval_basis(gamma, phi, (d, 0), (d.neg(), 0))?;
        out.push((k, value.div(&Scalar::ratio(k * k * k - k, 12))?));
    }
    Ok(out)
}

/// Reads `c` from the `(2,−2)` pair of `φ = ψ − ψ_f` and demands agreement
/// with the `(3,−3)` pair when it lies in the window.
pub fn extract_c(gamma: &Gamma, phi: &Cocycle, window: Window) -> Result<Scalar> {
    let estimates = c_estimates(gamma, phi, window, &C_PAIRS)?;
    let Some((_, c)) = estimates.first().filter(|(k, _)| *k == C_PAIRS[0]) else {
        let unit = gamma.unit().ok_or(Error::MissingUnit)?;
        return Err(Error::OutOfWindow(
            gamma.format_degree(&unit.scale(C_PAIRS[0])),
        ));
    };
    for (_, other) in &estimates[1..] {
        if other != c {
            return Err(Error::InconsistentC {
                from_two: gamma.display_scalar(c),
                from_three: gamma.display_scalar(other),
            });
        }
    }
    Ok(c.clone())
}

fn residual_sweep(
    gamma: &Gamma,
    phi: &Cocycle,
    window: Window,
) -> Result<(ResidualSummary, Option<Window>)> {
    let basis = window.basis(gamma);
    let rows: Vec<(ResidualSummary, Option<u32>)> = (0..basis.len())
        .into_par_iter()
        .map(|p| -> Result<(ResidualSummary, Option<u32>)> {
            let a = basis[p];
            let mut s = ResidualSummary::default();
            let mut worst: Option<u32> = None;
            for b in &basis[p + 1..] {
                let r = eval_basis(gamma, phi, a, *b)?;
                if r.is_zero() {
                    s.pass();
                } else {
                    let need = a.0.norm().max(b.0.norm());
                    worst = Some(worst.map_or(need, |w| w.min(need)));
                    s.fail(pair_label(gamma, a, *b), gamma.display_scalar(&r));
                }
            }
            Ok((s, worst))
        })
        .collect::<Result<_>>()?;
    let mut summary = ResidualSummary::default();
    let mut first_bad: Option<u32> = None;
    for (s, w) in rows {
        summary = summary.merge(s);
        if let Some(w) = w {
            first_bad = Some(first_bad.map_or(w, |f| f.min(w)));
        }
    }
    let clean = match first_bad {
        None => Some(window),
        Some(0 | 1) => None,
        Some(n) => Some(Window {
            degree_bound: n - 1,
            level_bound: window.level_bound,
        }),
    };
    Ok((summary, clean))
}

pub(crate) fn pair_label(gamma: &Gamma, a: Index, b: Index) -> String {
    let fmt = |x: Index| crate::lie::BasisIndex::new(x.0, x.1).format(gamma);
    format!("({}, {})", fmt(a), fmt(b))
}

/// Writes `ψ = c·φ₀ + ψ_f + φ` with `f` from [`build_f`] and `c` from
/// [`extract_c`], and sweeps the remainder `φ` over every window pair.
pub fn normalize_cocycle(
    gamma: &Gamma,
    psi: &Cocycle,
    window: Window,
) -> Result<NormalizationResult> {
    let closure = required_window(window);
    let f = build_f(gamma, psi, closure)?;
    let without_f = psi.clone().minus(Cocycle::Coboundary(f.clone()));
    let c = extract_c(gamma, &without_f, closure)?;
    let mut result = NormalizationResult {
        c,
        f,
        required_window: closure,
        residual_max_window: None,
        residual: ResidualSummary::default(),
    };
    let (residual, clean) = residual_sweep(gamma, &result.normalized(psi), window)?;
    if !residual.is_zero() {
        let check = cocycle_condition_check(gamma, psi, window)?;
        if let Some((at, r)) = check.failures.first() {
            return Err(Error::NotACocycle(format!("cyclic sum at {at} is {r}")));
        }
    }
    result.residual = residual;
    result.residual_max_window = clean;
    Ok(result)
}

/// Identities a normalized cocycle `φ` must satisfy on the window:
/// `(α+β)φ(L(α,0),L(β,i−1)) + (i−1)φ(L(α,0),L(β,i)) = 0` for `i ≥ 1`, and
/// `φ(L(α,i), L(β,j)) = 0` whenever `i + j ≤ max_sum`.
pub fn ladder_check(
    gamma: &Gamma,
    phi: &Cocycle,
    window: Window,
    max_sum: u32,
) -> Result<ResidualSummary> {
    let degrees = window.degrees(gamma);
    let mut s = ResidualSummary::default();
    for a in &degrees {
        for b in &degrees {
            let ab = gamma.embed(&a.add(b));
            for i in 1..=window.level_bound {
                let r = ab
                    .mul(&eval_basis(gamma, phi, (*a, 0), (*b, i - 1))?)
                    .add(&eval_basis(gamma, phi, (*a, 0), (*b, i))?.mul_int(i as i64 - 1));
                record(&mut s, gamma, "level relation", (*a, 0), (*b, i), r);
            }
            for i in window.levels() {
                for j in window.levels().filter(|j| i + j <= max_sum) {
                    let r = eval_basis(gamma, phi, (*a, i), (*b, j))?;
                    record(&mut s, gamma, "vanishing", (*a, i), (*b, j), r);
                }
            }
        }
    }
    Ok(s)
}

fn record(s: &mut ResidualSummary, gamma: &Gamma, what: &str, a: Index, b: Index, r: Scalar) {
    if r.is_zero() {
        s.pass();
    } else {
        s.fail(
            format!("{what} {}", pair_label(gamma, a, b)),
            gamma.display_scalar(&r),
        );
    }
}

/// `f([L(a), L(b)])` as a sparse row over the values of `f`.
pub(crate) fn coboundary_row(
    gamma: &Gamma,
    a: Index,
    b: Index,
) -> Result<crate::linalg::SparseVec<Index>> {
    Ok(bracket_basis(gamma, a, b, BracketRule::WGamma)?
        .terms()
        .filter_map(|(idx, c)| Some(((idx.degree()?, idx.level()?), c.clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroupElement;

    fn ix(n: i64, i: u32) -> Index {
        (GroupElement::int(n), i)
    }

    fn sample_f() -> LinearFunctional {
        LinearFunctional::from_values([
            (ix(0, 0), Scalar::from_int(3)),
            (ix(1, 0), Scalar::ratio(-1, 2)),
            (ix(-2, 1), Scalar::from_int(4)),
            (ix(0, 2), Scalar::from_int(7)),
            (ix(2, 2), Scalar::ratio(5, 3)),
        ])
    }

    #[test]
    fn canonical_f_vanishes() {
        let z = Gamma::integers();
        let f = build_f(&z, &Cocycle::Canonical, Window::new(3, 3).unwrap()).unwrap();
        assert_eq!(f, LinearFunctional::zero());
    }

    #[test]
    fn coboundary_is_recovered_exactly() {
        let z = Gamma::integers();
        let g = sample_f();
        let w = Window::new(3, 3).unwrap();
        let f = build_f(&z, &Cocycle::Coboundary(g.clone()), w).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn extract_examples() {
        let z = Gamma::integers();
        let w = Window::new(3, 1).unwrap();
        let three = Cocycle::Canonical.scale(Scalar::from_int(3));
        assert_eq!(extract_c(&z, &three, w).unwrap(), Scalar::from_int(3));
        let bad = Cocycle::Canonical.plus(Cocycle::Coboundary(sample_f()));
        assert!(matches!(
            extract_c(&z, &bad, w),
            Err(Error::InconsistentC { .. })
        ));
    }

    #[test]
    fn normalize_round_trip() {
        let z = Gamma::integers();
        let w = Window::new(3, 3).unwrap();
        let psi = Cocycle::Canonical
            .scale(Scalar::from_int(3))
            .plus(Cocycle::Coboundary(sample_f()));
        let res = normalize_cocycle(&z, &psi, w).unwrap();
        assert_eq!(res.c, Scalar::from_int(3));
        assert!(res.success());
        assert_eq!(res.residual_max_window, Some(w));
        assert!(ladder_check(&z, &res.normalized(&psi), w, 5)
            .unwrap()
            .is_zero());
        let zero = normalize_cocycle(&z, &Cocycle::zero(), w).unwrap();
        assert!(zero.c.is_zero() && zero.f == LinearFunctional::zero());
    }

    #[test]
    fn symbolic_unit() {
        let g = Gamma::symbolic_with_unit(2);
        let w = Window::new(2, 2).unwrap();
        let mut f = LinearFunctional::zero();
        f.set(g.element(&[1, 1]), 1, Scalar::var(1));
        f.set(g.zero(), 0, Scalar::one());
        let psi = Cocycle::Canonical
            .scale(Scalar::ratio(-1, 5))
            .plus(Cocycle::Coboundary(f));
        let res = normalize_cocycle(&g, &psi, w).unwrap();
        assert_eq!(res.c, Scalar::ratio(-1, 5));
        assert!(res.success());
        assert_eq!(
            build_f(&Gamma::symbolic(1), &psi, w),
            Err(Error::MissingUnit)
        );
    }

    #[test]
    fn non_cocycle_rejected() {
        let z = Gamma::integers();
        let w = Window::new(3, 1).unwrap();
        let mut t =
            super::super::CocycleTable::tabulate(&z, &Cocycle::Canonical, required_window(w))
                .unwrap();
        t.set(ix(1, 1), ix(2, 0), Scalar::one());
        let r = normalize_cocycle(&z, &Cocycle::Table(t), w);
        assert!(matches!(r, Err(Error::NotACocycle(_))), "{r:?}");
    }
}
