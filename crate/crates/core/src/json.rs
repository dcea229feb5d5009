//! JSON wire formats. Scalars travel as strings in the expression syntax
//! (`"3/2"`, `"(g1 + 1)/g2"`); plain integers are accepted on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automorphism::{AutElement, Character};
use crate::cohomology::{
    Cocycle, CocycleTable, FitResult, Index, LinearFunctional, NormalizationResult,
};
use crate::derivation::{AdditiveMap, DecompositionResult, DerivationSpec, DirectSumReport};
use crate::dsl::parse_scalar;
use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar, ScaleMap};
use crate::lie::{BasisIndex, CompletionElement, Element, Series};
use crate::residual::ResidualSummary;
use crate::structure::{AdProbe, IdealReport, StepKind};
use crate::window::Window;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum WScalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum WTerm {
    Basic {
        degree: Vec<i64>,
        level: u32,
        coeff: WScalar,
    },
    Central {
        central: WScalar,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WSeries {
    degree: Vec<i64>,
    exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valid_order: Option<u32>,
    /// Coefficients of levels 0, 1, 2, …
    coeffs: Vec<WScalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WImage {
    alpha: Vec<i64>,
    i: u32,
    image: Vec<WSeries>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WDerivation {
    Symbolic {
        y: Vec<WSeries>,
        phi: BTreeMap<String, WScalar>,
    },
    Table {
        images: Vec<WImage>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WScale {
    value: WScalar,
    matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WAut {
    tau: BTreeMap<String, WScalar>,
    c: WScale,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WIndex {
    alpha: Vec<i64>,
    i: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WValue {
    alpha: Vec<i64>,
    i: u32,
    value: WScalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WEntry {
    a: WIndex,
    b: WIndex,
    value: WScalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WCocycle {
    Canonical,
    Coboundary {
        f: Vec<WValue>,
    },
    Table {
        window: [u32; 2],
        entries: Vec<WEntry>,
    },
    Combo {
        terms: Vec<(WScalar, WCocycle)>,
    },
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))
}

fn encode<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("wire types serialise")
}

pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn scalar_in(gamma: &Gamma, s: &WScalar) -> Result<Scalar> {
    match s {
        WScalar::Int(n) => Ok(Scalar::from_int(*n)),
        WScalar::Text(t) => parse_scalar(gamma, t),
    }
}

fn scalar_out(gamma: &Gamma, s: &Scalar) -> WScalar {
    WScalar::Text(gamma.display_scalar(s))
}

pub fn scalar_json(gamma: &Gamma, s: &Scalar) -> Value {
    Value::String(gamma.display_scalar(s))
}

fn degree_in(gamma: &Gamma, coords: &[i64]) -> Result<GroupElement> {
    if coords.len() != gamma.rank() {
        return Err(Error::Json(format!(
            "degree {coords:?} has {} coordinates, rank is {}",
            coords.len(),
            gamma.rank()
        )));
    }
    Ok(gamma.element(coords))
}

fn degree_out(d: &GroupElement) -> Vec<i64> {
    d.coords().iter().map(|&c| c as i64).collect()
}

fn window_json(w: &Window) -> Value {
    json!([w.degree_bound, w.level_bound])
}

// ---- elements ----

pub fn element_to_json(gamma: &Gamma, x: &Element) -> Value {
    let mut keys: Vec<&BasisIndex> = x.term_map().keys().collect();
    keys.sort_by(|a, b| crate::lie::compare_indices(gamma, a, b));
    let terms: Vec<WTerm> = keys
        .into_iter()
        .map(|k| {
            let coeff = scalar_out(gamma, &x.coeff(k));
            match k {
                BasisIndex::Basic { degree, level } => WTerm::Basic {
                    degree: degree_out(degree),
                    level: *level,
                    coeff,
                },
                BasisIndex::Central => WTerm::Central { central: coeff },
            }
        })
        .collect();
    encode(&terms)
}

pub fn element_from_json(gamma: &Gamma, v: &Value) -> Result<Element> {
    let terms: Vec<WTerm> = decode(v)?;
    let mut out = Element::zero();
    for t in &terms {
        match t {
            WTerm::Basic {
                degree,
                level,
                coeff,
            } => out.add_term(
                BasisIndex::new(degree_in(gamma, degree)?, *level),
                scalar_in(gamma, coeff)?,
            ),
            WTerm::Central { central } => {
                out.add_term(BasisIndex::Central, scalar_in(gamma, central)?)
            }
        }
    }
    Ok(out)
}

fn series_out(gamma: &Gamma, x: &CompletionElement) -> Vec<WSeries> {
    let mut degrees: Vec<(&GroupElement, &Series)> = x.degrees().collect();
    degrees.sort_by(|a, b| gamma.compare(a.0, b.0));
    degrees
        .into_iter()
        .map(|(d, s)| WSeries {
            degree: degree_out(d),
            exact: s.is_exact(),
            valid_order: s.validity().order(),
            coeffs: s.coeffs().iter().map(|c| scalar_out(gamma, c)).collect(),
        })
        .collect()
}

fn series_in(gamma: &Gamma, items: &[WSeries]) -> Result<CompletionElement> {
    let mut out = CompletionElement::zero();
    for s in items {
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| scalar_in(gamma, c))
            .collect::<Result<Vec<_>>>()?;
        let series = match (s.exact, s.valid_order) {
            (true, _) => Series::exact(coeffs),
            (false, Some(n)) => {
                if coeffs.len() > n as usize + 1 {
                    return Err(Error::Json(format!(
                        "more coefficients than valid_order {n} allows"
                    )));
                }
                Series::truncated(coeffs, n)
            }
            (false, None) => {
                return Err(Error::Json("a truncated series needs valid_order".into()))
            }
        };
        out.insert(degree_in(gamma, &s.degree)?, series);
    }
    Ok(out)
}

pub fn completion_to_json(gamma: &Gamma, x: &CompletionElement) -> Value {
    encode(&series_out(gamma, x))
}

pub fn completion_from_json(gamma: &Gamma, v: &Value) -> Result<CompletionElement> {
    series_in(gamma, &decode::<Vec<WSeries>>(v)?)
}

// ---- derivations ----

fn additive_out(gamma: &Gamma, phi: &AdditiveMap) -> BTreeMap<String, WScalar> {
    gamma
        .names()
        .iter()
        .cloned()
        .zip(phi.values().iter().map(|v| scalar_out(gamma, v)))
        .collect()
}

fn per_generator(
    gamma: &Gamma,
    map: &BTreeMap<String, WScalar>,
    default: Scalar,
) -> Result<Vec<Scalar>> {
    for name in map.keys() {
        if gamma.generator_index(name).is_none() {
            return Err(Error::UnknownGenerator(name.clone()));
        }
    }
    gamma
        .names()
        .iter()
        .map(|n| {
            map.get(n)
                .map_or(Ok(default.clone()), |s| scalar_in(gamma, s))
        })
        .collect()
}

pub fn additive_map_to_json(gamma: &Gamma, phi: &AdditiveMap) -> Value {
    encode(&additive_out(gamma, phi))
}

pub fn derivation_to_json(gamma: &Gamma, d: &DerivationSpec) -> Value {
    let w = match d {
        DerivationSpec::Symbolic { y, phi } => WDerivation::Symbolic {
            y: series_out(gamma, y),
            phi: additive_out(gamma, phi),
        },
        DerivationSpec::Table { images } => WDerivation::Table {
            images: images
                .iter()
                .map(|((a, i), img)| WImage {
                    alpha: degree_out(a),
                    i: *i,
                    image: series_out(gamma, img),
                })
                .collect(),
        },
    };
    encode(&w)
}

pub fn derivation_from_json(gamma: &Gamma, v: &Value) -> Result<DerivationSpec> {
    match decode::<WDerivation>(v)? {
        WDerivation::Symbolic { y, phi } => Ok(DerivationSpec::Symbolic {
            y: series_in(gamma, &y)?,
            phi: AdditiveMap::new(per_generator(gamma, &phi, Scalar::zero())?),
        }),
        WDerivation::Table { images } => {
            let mut out = BTreeMap::new();
            for img in &images {
                if img.i > 1 {
                    return Err(Error::Json(format!(
                        "table images are given on levels 0 and 1, not {}",
                        img.i
                    )));
                }
                out.insert(
                    (degree_in(gamma, &img.alpha)?, img.i),
                    series_in(gamma, &img.image)?,
                );
            }
            Ok(DerivationSpec::Table { images: out })
        }
    }
}

pub fn decomposition_to_json(gamma: &Gamma, r: &DecompositionResult) -> Value {
    json!({
        "y": completion_to_json(gamma, &r.y),
        "phi": additive_map_to_json(gamma, &r.phi),
        "c": scalar_json(gamma, &r.c),
        "residual": residual_to_json(&r.residual),
        "y_in_w": r.y_in_w,
    })
}

pub fn direct_sum_to_json(r: &DirectSumReport) -> Value {
    json!({
        "unknowns": r.unknowns,
        "nullity": r.nullity,
        "phi_forced_zero": r.phi_forced_zero,
        "y_forced_zero": r.y_forced_zero,
    })
}

// ---- automorphisms ----

pub fn aut_to_json(gamma: &Gamma, a: &AutElement) -> Value {
    encode(&WAut {
        tau: gamma
            .names()
            .iter()
            .cloned()
            .zip(a.tau.values().iter().map(|v| scalar_out(gamma, v)))
            .collect(),
        c: WScale {
            value: scalar_out(gamma, a.c.value()),
            matrix: a.c.matrix().to_vec(),
        },
    })
}

pub fn aut_from_json(gamma: &Gamma, v: &Value) -> Result<AutElement> {
    let w: WAut = decode(v)?;
    let tau = Character::new(per_generator(gamma, &w.tau, Scalar::one())?)?;
    let c = ScaleMap::new(gamma, scalar_in(gamma, &w.c.value)?, w.c.matrix)?;
    Ok(AutElement::new(tau, c))
}

// ---- cocycles ----

fn index_out(ix: &Index) -> WIndex {
    WIndex {
        alpha: degree_out(&ix.0),
        i: ix.1,
    }
}

fn index_in(gamma: &Gamma, w: &WIndex) -> Result<Index> {
    Ok((degree_in(gamma, &w.alpha)?, w.i))
}

fn functional_out(gamma: &Gamma, f: &LinearFunctional) -> Vec<WValue> {
    f.values
        .iter()
        .map(|(k, v)| WValue {
            alpha: degree_out(&k.0),
            i: k.1,
            value: scalar_out(gamma, v),
        })
        .collect()
}

pub fn functional_to_json(gamma: &Gamma, f: &LinearFunctional) -> Value {
    encode(&functional_out(gamma, f))
}

fn cocycle_out(gamma: &Gamma, c: &Cocycle) -> WCocycle {
    match c {
        Cocycle::Canonical => WCocycle::Canonical,
        Cocycle::Coboundary(f) => WCocycle::Coboundary {
            f: functional_out(gamma, f),
        },
        Cocycle::Table(t) => WCocycle::Table {
            window: [t.window.degree_bound, t.window.level_bound],
            entries: t
                .entries()
                .map(|((a, b), v)| WEntry {
                    a: index_out(a),
                    b: index_out(b),
                    value: scalar_out(gamma, v),
                })
                .collect(),
        },
        Cocycle::LinearCombo(terms) => WCocycle::Combo {
            terms: terms
                .iter()
                .map(|(k, c)| (scalar_out(gamma, k), cocycle_out(gamma, c)))
                .collect(),
        },
    }
}

fn cocycle_in(gamma: &Gamma, w: &WCocycle) -> Result<Cocycle> {
    Ok(match w {
        WCocycle::Canonical => Cocycle::Canonical,
        WCocycle::Coboundary { f } => Cocycle::Coboundary(LinearFunctional::from_values(
            f.iter()
                .map(|v| {
                    Ok((
                        (degree_in(gamma, &v.alpha)?, v.i),
                        scalar_in(gamma, &v.value)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        )),
        WCocycle::Table { window, entries } => {
            let window = Window::new(window[0], window[1])?;
            let mut t = CocycleTable::new(window);
            for e in entries {
                let (a, b) = (index_in(gamma, &e.a)?, index_in(gamma, &e.b)?);
                for x in [&a, &b] {
                    if !window.contains_degree(&x.0) || x.1 > window.level_bound {
                        return Err(Error::OutOfWindow(BasisIndex::new(x.0, x.1).format(gamma)));
                    }
                }
                if a == b {
                    return Err(Error::Json(
                        "a cocycle table entry pairs an element with itself".into(),
                    ));
                }
                t.set(a, b, scalar_in(gamma, &e.value)?);
            }
            Cocycle::Table(t)
        }
        WCocycle::Combo { terms } => Cocycle::LinearCombo(
            terms
                .iter()
                .map(|(k, c)| Ok((scalar_in(gamma, k)?, cocycle_in(gamma, c)?)))
                .collect::<Result<_>>()?,
        ),
    })
}

pub fn cocycle_to_json(gamma: &Gamma, c: &Cocycle) -> Value {
    encode(&cocycle_out(gamma, c))
}

pub fn cocycle_from_json(gamma: &Gamma, v: &Value) -> Result<Cocycle> {
    cocycle_in(gamma, &decode(v)?)
}

pub fn normalization_to_json(gamma: &Gamma, r: &NormalizationResult) -> Value {
    json!({
        "c": scalar_json(gamma, &r.c),
        "f": functional_to_json(gamma, &r.f),
        "required_window": window_json(&r.required_window),
        "residual_max_window": r.residual_max_window.as_ref().map(window_json),
        "residual": residual_to_json(&r.residual),
        "success": r.success(),
    })
}

pub fn fit_to_json(gamma: &Gamma, r: &FitResult) -> Value {
    json!({
        "feasible": r.feasible,
        "f": r.f.as_ref().map(|f| functional_to_json(gamma, f)),
        "certificate": r.certificate.iter().map(|e| json!({
            "a": encode(&index_out(&e.pair.0)),
            "b": encode(&index_out(&e.pair.1)),
            "equation": e.format(gamma),
            "rhs": scalar_json(gamma, &e.rhs),
        })).collect::<Vec<_>>(),
    })
}

// ---- structure and sweeps ----

pub fn residual_to_json(r: &ResidualSummary) -> Value {
    json!({
        "checked": r.checked,
        "nonzero": r.nonzero,
        "failures": r.failures.iter().map(|(at, v)| json!({"at": at, "residual": v})).collect::<Vec<_>>(),
    })
}

pub fn ideal_report_to_json(gamma: &Gamma, r: &IdealReport) -> Value {
    let (d, i, c) = &r.basis_element;
    json!({
        "generator": r.generator.format(gamma),
        "witness_chain": r.witness_chain.iter().map(|s| json!({
            "kind": match s.kind { StepKind::Depth => "depth", StepKind::Length => "length" },
            "operator": s.operator.format(gamma),
            "result": s.result.format(gamma),
        })).collect::<Vec<_>>(),
        "basis_element": Element::term(BasisIndex::new(*d, *i), c.clone()).format(gamma),
        "minimal_level": r.minimal_level,
        "classified_as": r.classified_as,
        "window_check": r.window_check.as_ref().map(|w| json!({
            "window": window_json(&w.window),
            "working_window": window_json(&w.working_window),
            "span_dimension": w.span_dimension,
            "discarded": w.discarded,
            "missing": w.missing.iter().map(|(d, i)| BasisIndex::new(*d, *i).format(gamma)).collect::<Vec<_>>(),
            "spurious": w.spurious.iter().map(|(d, i)| BasisIndex::new(*d, *i).format(gamma)).collect::<Vec<_>>(),
            "passed": w.passed(),
        })),
    })
}

pub fn adprobe_to_json(gamma: &Gamma, p: &AdProbe) -> Value {
    json!({
        "ranks": p.ranks,
        "strictly_increasing": p.strictly_increasing(),
        "elements": p.elements.iter().map(|e| e.format(gamma)).collect::<Vec<_>>(),
        "highest_terms": p.highest_terms.iter().map(|h| json!({
            "step": h.step,
            "term": BasisIndex::new(h.degree, h.level).format(gamma),
            "predicted": scalar_json(gamma, &h.predicted),
            "computed": scalar_json(gamma, &h.computed),
            "is_top": h.is_top,
        })).collect::<Vec<_>>(),
        "prediction_holds": p.prediction_holds(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Validity;

    #[test]
    fn element_round_trip() {
        let g = Gamma::symbolic(2);
        let x = Element::basis(g.element(&[1, -2]), 3)
            .scale(&Scalar::var(0).div(&Scalar::var(1)).unwrap())
            .add(&Element::central().scale(&Scalar::ratio(1, 2)));
        let v = element_to_json(&g, &x);
        assert_eq!(v[1]["central"], "1/2");
        assert_eq!(element_from_json(&g, &v).unwrap(), x);
        let bad = json!([{"degree": [1], "level": 0, "coeff": "1"}]);
        assert!(matches!(element_from_json(&g, &bad), Err(Error::Json(_))));
    }

    #[test]
    fn completion_round_trip() {
        let z = Gamma::integers();
        let y = CompletionElement::from_series([
            (
                GroupElement::int(0),
                Series::truncated(vec![Scalar::one(), Scalar::ratio(-1, 2)], 4),
            ),
            (
                GroupElement::int(2),
                Series::exact(vec![Scalar::zero(), Scalar::from_int(3)]),
            ),
        ]);
        let v = completion_to_json(&z, &y);
        let back = completion_from_json(&z, &v).unwrap();
        assert_eq!(back, y);
        assert_eq!(
            back.series(&GroupElement::int(0)).unwrap().validity(),
            Validity::UpTo(4)
        );
    }

    #[test]
    fn aut_and_derivation_round_trip() {
        let z = Gamma::integers();
        let a = AutElement::new(
            Character::new(vec![Scalar::ratio(2, 3)]).unwrap(),
            ScaleMap::negation(&z),
        );
        assert_eq!(aut_from_json(&z, &aut_to_json(&z, &a)).unwrap(), a);
        let d = DerivationSpec::Symbolic {
            y: CompletionElement::from_element(&Element::basis(GroupElement::int(1), 2)),
            phi: AdditiveMap::new(vec![Scalar::from_int(5)]),
        };
        assert_eq!(
            derivation_from_json(&z, &derivation_to_json(&z, &d)).unwrap(),
            d
        );
        let t = d.tabulate(&z, Window::new(1, 1).unwrap()).unwrap();
        assert_eq!(
            derivation_from_json(&z, &derivation_to_json(&z, &t)).unwrap(),
            t
        );
    }

    #[test]
    fn cocycle_round_trip() {
        let z = Gamma::integers();
        let f = LinearFunctional::from_values([((GroupElement::int(0), 0), Scalar::from_int(2))]);
        let c = Cocycle::LinearCombo(vec![
            (Scalar::from_int(3), Cocycle::Canonical),
            (Scalar::one(), Cocycle::Coboundary(f)),
            (
                Scalar::one(),
                Cocycle::Table(
                    CocycleTable::tabulate(&z, &Cocycle::Canonical, Window::new(2, 1).unwrap())
                        .unwrap(),
                ),
            ),
        ]);
        let v = cocycle_to_json(&z, &c);
        assert_eq!(v["terms"][0][1]["kind"], "canonical");
        assert_eq!(cocycle_from_json(&z, &v).unwrap(), c);
        assert_eq!(
            cocycle_from_json(&z, &json!({"kind": "canonical"})).unwrap(),
            Cocycle::Canonical
        );
    }
}
