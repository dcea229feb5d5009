use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::group::{GroupElement, GroupOrder, MAX_RANK};
use super::rational::Q;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Injectivity of a specialization is checked on this box at construction.
pub const DEFAULT_INJECTIVITY_BOUND: u32 = 12;

/// On-disk description of Γ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaConfig {
    pub rank: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specialization: Option<BTreeMap<String, RationalLiteral>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderConfig>,
}

/// Accepts `1`, `-2`, or `"3/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLiteral {
    Int(i64),
    Text(String),
}

impl RationalLiteral {
    fn value(&self) -> Result<Q> {
        match self {
            RationalLiteral::Int(n) => Ok(Q::from_int(*n)),
            RationalLiteral::Text(s) => s
                .parse()
                .map_err(|_| Error::InvalidGamma(format!("bad rational value {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderConfig {
    /// 1-based generator indices, most significant first.
    pub priority: Vec<usize>,
    pub signs: Vec<SignLiteral>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignLiteral {
    Int(i8),
    Text(String),
}

impl SignLiteral {
    fn value(&self) -> Result<i8> {
        match self {
            SignLiteral::Int(s @ (1 | -1)) => Ok(*s),
            SignLiteral::Text(t) if t == "+" => Ok(1),
            SignLiteral::Text(t) if t == "-" => Ok(-1),
            other => Err(Error::InvalidGamma(format!("bad order sign {other:?}"))),
        }
    }
}

/// A validated Γ ≅ ℤ^r with its embedding into the scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma {
    names: Vec<String>,
    specialization: Vec<Option<Q>>,
    generator_values: Vec<Scalar>,
    unit: Option<GroupElement>,
    order: GroupOrder,
    config: GammaConfig,
}

impl Gamma {
    pub fn from_config(config: GammaConfig) -> Result<Gamma> {
        let r = config.rank;
        if r == 0 || r > MAX_RANK {
            return Err(Error::InvalidGamma(format!(
                "rank must be in 1..={MAX_RANK}"
            )));
        }
        if config.generators.len() != r {
            return Err(Error::InvalidGamma(
                "need exactly `rank` generator names".into(),
            ));
        }
        let mut seen = HashSet::new();
        for name in &config.generators {
            if !is_identifier(name) || name == "L" || name == "C" {
                return Err(Error::InvalidGamma(format!("bad generator name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGamma(format!("duplicate generator {name:?}")));
            }
        }
        let mut specialization = vec![None; r];
        if let Some(map) = &config.specialization {
            for (name, lit) in map {
                let k = config
                    .generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| Error::InvalidGamma(format!("unknown generator {name:?}")))?;
                let v = lit.value()?;
                if v.is_zero() {
                    return Err(Error::InvalidGamma(format!("{name} specialised to zero")));
                }
                specialization[k] = Some(v);
            }
        }
        let order = match &config.order {
            None => GroupOrder::standard(r),
            Some(oc) => {
                let priority = oc
                    .priority
                    .iter()
                    .map(|&p| {
                        p.checked_sub(1)
                            .ok_or_else(|| Error::InvalidGamma("priority is 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let signs = oc
                    .signs
                    .iter()
                    .map(SignLiteral::value)
                    .collect::<Result<Vec<_>>>()?;
                GroupOrder::new(priority, signs)?
            }
        };
        let generator_values = (0..r)
            .map(|k| match &specialization[k] {
                Some(v) => Scalar::from_q(v.clone()),
                None => Scalar::var(k),
            })
            .collect();
        let mut gamma = Gamma {
            names: config.generators.clone(),
            specialization,
            generator_values,
            unit: None,
            order,
            config: config.clone(),
        };
        gamma.ensure_injective(DEFAULT_INJECTIVITY_BOUND)?;
        if let Some(u) = &config.unit {
            if u.len() != r {
                return Err(Error::InvalidGamma(
                    "unit must have `rank` coordinates".into(),
                ));
            }
            let u = GroupElement::new(u);
            if !gamma.embed(&u).is_one() {
                return Err(Error::InvalidGamma(format!(
                    "unit {:?} evaluates to {}, not 1",
                    u.coords(),
                    gamma.display_scalar(&gamma.embed(&u))
                )));
            }
            gamma.unit = Some(u);
        }
        Ok(gamma)
    }

    pub fn from_json(text: &str) -> Result<Gamma> {
        let config: GammaConfig =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Gamma::from_config(config)
    }

    pub fn load(path: &Path) -> Result<Gamma> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Gamma::from_json(&text)
    }

    /// Γ = ℤ: one generator `g1` specialised to 1, unit 1.
    pub fn integers() -> Gamma {
        Gamma::from_config(GammaConfig {
            rank: 1,
            generators: vec!["g1".into()],
            specialization: Some(BTreeMap::from([("g1".into(), RationalLiteral::Int(1))])),
            unit: Some(vec![1]),
            order: None,
        })
        .expect("valid")
    }

    /// Γ = ℤg1 ⊕ … ⊕ ℤgr with every generator symbolic.
    pub fn symbolic(rank: usize) -> Gamma {
        Gamma::from_config(GammaConfig {
            rank,
            generators: (1..=rank).map(|k| format!("g{k}")).collect(),
            specialization: None,
            unit: None,
            order: None,
        })
        .expect("valid")
    }

    /// Γ = ℤ ⊕ ℤg2 ⊕ …: first generator specialised to 1 (the unit), the
    /// rest symbolic.
    pub fn symbolic_with_unit(rank: usize) -> Gamma {
        let mut unit = vec![0; rank];
        unit[0] = 1;
        Gamma::from_config(GammaConfig {
            rank,
            generators: (1..=rank).map(|k| format!("g{k}")).collect(),
            specialization: Some(BTreeMap::from([("g1".into(), RationalLiteral::Int(1))])),
            unit: Some(unit),
            order: None,
        })
        .expect("valid")
    }

    pub fn config(&self) -> &GammaConfig {
        &self.config
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The scalar a generator symbol stands for (its specialised value, if any).
    pub fn generator_value(&self, k: usize) -> &Scalar {
        &self.generator_values[k]
    }

    pub fn specialization(&self) -> &[Option<Q>] {
        &self.specialization
    }

    pub fn unit(&self) -> Option<GroupElement> {
        self.unit
    }

    pub fn order(&self) -> &GroupOrder {
        &self.order
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.rank())
    }

    pub fn element(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(
            coords.len(),
            self.rank(),
            "coordinate count must match rank"
        );
        GroupElement::new(coords)
    }

    pub fn unit_vector(&self, k: usize) -> GroupElement {
        GroupElement::unit_vector(self.rank(), k)
    }

    /// Σ n_k g_k as a scalar.
    pub fn embed(&self, a: &GroupElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, &n) in a.coords().iter().enumerate() {
            if n != 0 {
                acc = acc.add(&self.generator_values[k].mul_int(n as i64));
            }
        }
        acc
    }

    pub fn compare(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        self.order.compare(a, b)
    }

    /// The box of degrees with every |coordinate| ≤ bound.
    pub fn degree_box(&self, bound: u32) -> Vec<GroupElement> {
        GroupElement::box_elements(self.rank(), bound)
    }

    /// Checks that distinct degrees in the box embed to distinct scalars.
    /// Symbolic generators are independent, so only the specialised ones can
    /// collide.
    pub fn ensure_injective(&self, bound: u32) -> Result<()> {
        let fixed: Vec<(usize, Q)> = self
            .specialization
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect();
        if fixed.len() <= 1 {
            return Ok(());
        }
        let b = bound as i64;
        let mut values: Vec<Q> = vec![Q::ZERO];
        for (_, v) in &fixed {
            let mut next = Vec::with_capacity(values.len() * (2 * bound as usize + 1));
            for acc in &values {
                for n in -b..=b {
                    next.push(acc.add(&v.mul(&Q::from_int(n))));
                }
            }
            values = next;
        }
        let total = values.len();
        let distinct: HashSet<Q> = values.into_iter().collect();
        if distinct.len() != total {
            return Err(Error::InvalidGamma(format!(
                "specialization is not injective on the degree box of radius {bound}"
            )));
        }
        Ok(())
    }

    pub fn display_scalar(&self, s: &Scalar) -> String {
        s.display(&self.names).to_string()
    }

    /// Stable fingerprint of the configuration (sha256 of its canonical JSON).
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.config).expect("serialisable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// Group element as it appears inside `L(…)`: a plain integer for rank 1,
    /// otherwise an integer combination of generator names.
    pub fn format_degree(&self, a: &GroupElement) -> String {
        if self.rank() == 1 {
            return a.coords()[0].to_string();
        }
        let mut out = String::new();
        for (k, &n) in a.coords().iter().enumerate() {
            if n == 0 {
                continue;
            }
            let name = &self.names[k];
            if out.is_empty() {
                if n < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if n < 0 { "-" } else { "+" });
            }
            let m = n.unsigned_abs();
            if m != 1 {
                out.push_str(&m.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_examples() {
        let z = Gamma::integers();
        assert_eq!(z.embed(&GroupElement::int(3)), Scalar::from_int(3));
        assert!(z.embed(&GroupElement::int(0)).is_zero());

        let s1 = Gamma::symbolic(1);
        assert_eq!(s1.embed(&GroupElement::int(3)), Scalar::var(0).mul_int(3));

        let s2 = Gamma::symbolic(2);
        let a = s2.element(&[2, -1]);
        assert_eq!(s2.embed(&a), Scalar::var(0).mul_int(2).sub(&Scalar::var(1)));
    }

    #[test]
    fn config_validation() {
        let bad = r#"{"rank":2,"generators":["a","a"]}"#;
        assert!(matches!(Gamma::from_json(bad), Err(Error::InvalidGamma(_))));
        let collide = r#"{"rank":2,"generators":["a","b"],"specialization":{"a":1,"b":"1/2"}}"#;
        assert!(matches!(
            Gamma::from_json(collide),
            Err(Error::InvalidGamma(_))
        ));
        let bad_unit = r#"{"rank":1,"generators":["a"],"specialization":{"a":2},"unit":[1]}"#;
        assert!(matches!(
            Gamma::from_json(bad_unit),
            Err(Error::InvalidGamma(_))
        ));
        let ok = r#"{"rank":2,"generators":["a","b"],"specialization":{"a":1},"unit":[1,0],
                    "order":{"priority":[2,1],"signs":["+",-1]}}"#;
        let g = Gamma::from_json(ok).unwrap();
        assert_eq!(g.unit(), Some(g.element(&[1, 0])));
        assert_eq!(g.order().priority(), &[1, 0]);
    }

    #[test]
    fn degree_formatting() {
        let g = Gamma::symbolic(2);
        assert_eq!(g.format_degree(&g.element(&[2, -3])), "2g1-3g2");
        assert_eq!(g.format_degree(&g.element(&[0, 1])), "g2");
        assert_eq!(g.format_degree(&g.zero()), "0");
        assert_eq!(
            Gamma::integers().format_degree(&GroupElement::int(-4)),
            "-4"
        );
    }
}
