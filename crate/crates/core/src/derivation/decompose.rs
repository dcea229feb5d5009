use std::collections::{BTreeMap, HashMap};

use super::{apply_ad, apply_d_phi, leibniz_check, AdditiveMap, DerivationSpec, Evaluator};
use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{bracket, BasisIndex, BracketRule, CompletionElement, Element, Series, Validity};
use crate::linalg::{Echelon, SparseVec};
use crate::residual::ResidualSummary;
use crate::window::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub y: CompletionElement,
    pub phi: AdditiveMap,
    /// Coefficient of the `ad_{L(0,0)} − D₀` part found in the last step.
    pub c: Scalar,
    /// `D − ad_y − D_φ` on the window generators.
    pub residual: ResidualSummary,
    pub y_in_w: bool,
}

/// The element `y₁ = Σ b_{α,j} L(α,j)` with `D(L00) − ad_{y₁}(L00)`
/// supported on `L(0,0), L(0,1)`.
fn solve_b(gamma: &Gamma, a: &CompletionElement, order: u32) -> Result<CompletionElement> {
    let mut out = CompletionElement::zero();
    for (alpha, s) in a.degrees() {
        let coeffs = s.coeffs();
        let at = |j: usize| coeffs.get(j).cloned().unwrap_or_default();
        if alpha.is_zero() {
            // b_{0,0} = 0, b_{0,j} = −a_{0,j+1}/j
            let (top, validity) = match s.validity() {
                Validity::Exact => (coeffs.len().saturating_sub(2), Validity::Exact),
                Validity::UpTo(m) => {
                    if m < order + 1 {
                        return Err(Error::TruncationTooShallow {
                            needed: order + 1,
                            available: m,
                        });
                    }
                    ((m - 1) as usize, Validity::UpTo(m - 1))
                }
            };
            let mut b = vec![Scalar::zero(); top + 1];
            for (j, slot) in b.iter_mut().enumerate().skip(1) {
                *slot = at(j + 1).neg().mul(&Scalar::ratio(1, j as i64));
            }
            out.insert(*alpha, series(b, validity));
            continue;
        }
        // b_{α,j} = (−a_{α,j} − (j−1) b_{α,j−1}) / α
        let inv = gamma.embed(alpha).inv()?;
        let next = |j: usize, prev: &Scalar| at(j).neg().sub(&prev.mul_int(j as i64 - 1)).mul(&inv);
        match s.validity() {
            Validity::Exact => {
                let last = coeffs.len().saturating_sub(1);
                let mut b = Vec::with_capacity(last + 1);
                let mut prev = Scalar::zero();
                for j in 0..=last {
                    prev = next(j, &prev);
                    b.push(prev.clone());
                }
                // past the last a-level, b_{j} = −(j−1) b_{j−1} / α
                if last == 0 || b[last].is_zero() {
                    out.insert(*alpha, Series::exact(b));
                } else {
                    let top = (order as usize).max(last);
                    for j in last + 1..=top {
                        prev = next(j, &prev);
                        b.push(prev.clone());
                    }
                    out.insert(*alpha, Series::truncated(b, top as u32));
                }
            }
            Validity::UpTo(m) => {
                if m < order {
                    return Err(Error::TruncationTooShallow {
                        needed: order,
                        available: m,
                    });
                }
                let mut b = Vec::with_capacity(m as usize + 1);
                let mut prev = Scalar::zero();
                for j in 0..=m as usize {
                    prev = next(j, &prev);
                    b.push(prev.clone());
                }
                out.insert(*alpha, Series::truncated(b, m));
            }
        }
    }
    Ok(out)
}

fn series(coeffs: Vec<Scalar>, validity: Validity) -> Series {
    match validity {
        Validity::Exact => Series::exact(coeffs),
        Validity::UpTo(n) => Series::truncated(coeffs, n),
    }
}

fn describe(gamma: &Gamma, x: &CompletionElement) -> String {
    x.truncated_element(u32::MAX).format(gamma)
}

fn residual_on_generators(
    gamma: &Gamma,
    ev: &mut Evaluator<'_>,
    window: Window,
    y: &CompletionElement,
    phi: &AdditiveMap,
) -> Result<ResidualSummary> {
    let mut summary = ResidualSummary::default();
    for (d, i) in window.generators(gamma) {
        let b = Element::basis(d, i);
        let r = ev
            .basis(d, i)?
            .sub(&apply_ad(gamma, y, &b))
            .sub(&CompletionElement::from_element(&apply_d_phi(phi, &b)));
        if r.vanishes() {
            summary.pass();
        } else {
            summary.fail(b.format(gamma), describe(gamma, &r));
        }
    }
    Ok(summary)
}

/// Writes a derivation as `ad_y + D_φ` by running the constructive steps:
/// solve for `y₁` from `D(L(0,0))`, read `φ` off `D − ad_{y₁}` on `L(α,0)`,
/// then remove the remaining multiple of `ad_{L(0,0)} − D₀`.
pub fn decompose_derivation(
    gamma: &Gamma,
    spec: &DerivationSpec,
    window: Window,
    order: u32,
) -> Result<DecompositionResult> {
    if order < 2 {
        return Err(Error::TruncationTooShallow {
            needed: 2,
            available: order,
        });
    }
    let leibniz = leibniz_check(gamma, spec, window)?;
    if !leibniz.is_zero() {
        let (at, res) = leibniz.failures.first().cloned().unwrap_or_default();
        return Err(Error::NotADerivation(format!(
            "Leibniz residual at {at}: {res}"
        )));
    }
    let zero = gamma.zero();
    let l00 = Element::basis(zero, 0);
    let mut ev = Evaluator::new(gamma, spec);

    // (1) y₁ from D(L(0,0))
    let a = ev.basis(zero, 0)?;
    let y1 = solve_b(gamma, &a, order)?;

    // (2) D′(L(0,0)) = a₀L(0,0) + a₁L(0,1) with a₀ = a₁ = 0
    let d00 = a.sub(&apply_ad(gamma, &y1, &l00));
    if !d00.vanishes() {
        return Err(Error::NotADerivation(format!(
            "D - ad_y1 on L(0,0) leaves {}",
            describe(gamma, &d00)
        )));
    }

    // (3) D′(L(α,0)) = b_α L(α,0), b additive
    let mut b: HashMap<GroupElement, Scalar> = HashMap::new();
    for alpha in window.degrees(gamma) {
        let la = Element::basis(alpha, 0);
        let r = ev.basis(alpha, 0)?.sub(&apply_ad(gamma, &y1, &la));
        let ba = r.coeff(&alpha, 0).unwrap_or_default();
        let rest = r.sub(&CompletionElement::from_element(&la.scale(&ba)));
        if !rest.vanishes() {
            return Err(Error::NotADerivation(format!(
                "D - ad_y1 on {} is not diagonal: {}",
                la.format(gamma),
                describe(gamma, &r)
            )));
        }
        b.insert(alpha, ba);
    }
    if !b[&zero].is_zero() {
        return Err(Error::InconsistentAdditivity(format!(
            "b_0 = {}",
            gamma.display_scalar(&b[&zero])
        )));
    }
    for (alpha, ba) in &b {
        for (g, bg) in &b {
            if let Some(bs) = b.get(&alpha.add(g)) {
                if *bs != ba.add(bg) {
                    return Err(Error::InconsistentAdditivity(format!(
                        "b at {} + {} differs from the sum",
                        gamma.format_degree(alpha),
                        gamma.format_degree(g)
                    )));
                }
            }
        }
    }
    let phi1 = AdditiveMap::new(
        (0..gamma.rank())
            .map(|k| b[&gamma.unit_vector(k)].clone())
            .collect(),
    );

    // (4) c from D″(L(0,1)) = c L(0,2)
    let l01 = Element::basis(zero, 1);
    let d01 = ev
        .basis(zero, 1)?
        .sub(&apply_ad(gamma, &y1, &l01))
        .sub(&CompletionElement::from_element(&apply_d_phi(&phi1, &l01)));
    let c = d01.coeff(&zero, 2).unwrap_or_default();

    // (5) final replacement; the sign is the one with zero residual
    let phi0 = AdditiveMap::canonical(gamma);
    let l00c = CompletionElement::from_element(&l00);
    let mut best: Option<(CompletionElement, AdditiveMap, ResidualSummary)> = None;
    for sign in [1i64, -1] {
        let s = c.mul_int(sign);
        let y = y1.add(&l00c.scale(&s));
        let phi = phi1.add(&phi0.scale(&s.neg()));
        let residual = residual_on_generators(gamma, &mut ev, window, &y, &phi)?;
        let done = residual.is_zero();
        if best.is_none() || done {
            best = Some((y, phi, residual));
        }
        if done || c.is_zero() {
            break;
        }
    }
    let (y, phi, residual) = best.expect("at least one candidate");
    let y_in_w = y.is_exact();
    Ok(DecompositionResult {
        y,
        phi,
        c,
        residual,
        y_in_w,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Unknown {
    Phi(usize),
    Y(GroupElement, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumReport {
    pub unknowns: usize,
    pub nullity: usize,
    /// Every solution of `ad_y + D_φ = 0` on the generators has `φ = 0`.
    pub phi_forced_zero: bool,
    /// Every solution has `y = 0` (no central elements seen in `y_window`).
    pub y_forced_zero: bool,
}

/// Solves `ad_y + D_φ = 0` on the generators of `window`, with `y` ranging
/// over `y_window` and `φ` over all additive maps.
pub fn direct_sum_check(
    gamma: &Gamma,
    window: Window,
    y_window: Window,
) -> Result<DirectSumReport> {
    let mut rows: BTreeMap<((GroupElement, u32), BasisIndex), SparseVec<Unknown>> = BTreeMap::new();
    let ys = y_window.basis(gamma);
    for (d, i) in window.generators(gamma) {
        let g = Element::basis(d, i);
        for &(b, l) in &ys {
            let z = bracket(gamma, &Element::basis(b, l), &g, BracketRule::WGamma)?;
            for (idx, c) in z.terms() {
                let e = rows
                    .entry(((d, i), *idx))
                    .or_default()
                    .entry(Unknown::Y(b, l))
                    .or_default();
                *e = e.add(c);
            }
        }
        for (k, &n) in d.coords().iter().enumerate() {
            if n != 0 {
                let e = rows
                    .entry(((d, i), BasisIndex::new(d, i)))
                    .or_default()
                    .entry(Unknown::Phi(k))
                    .or_default();
                *e = e.add(&Scalar::from_int(n as i64));
            }
        }
    }
    let mut ech: Echelon<Unknown> = Echelon::new();
    for (_, mut row) in rows {
        row.retain(|_, c| !c.is_zero());
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    let mut unknowns: Vec<Unknown> = (0..gamma.rank()).map(Unknown::Phi).collect();
    unknowns.extend(ys.iter().map(|&(b, l)| Unknown::Y(b, l)));
    let null = ech.nullspace(&unknowns);
    let phi_forced_zero = null
        .iter()
        .all(|v| v.keys().all(|k| !matches!(k, Unknown::Phi(_))));
    let y_forced_zero = null
        .iter()
        .all(|v| v.keys().all(|k| !matches!(k, Unknown::Y(..))));
    Ok(DirectSumReport {
        unknowns: unknowns.len(),
        nullity: null.len(),
        phi_forced_zero,
        y_forced_zero,
    })
}
