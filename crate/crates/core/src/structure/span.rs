use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::linalg::{Echelon, Insert, SparseVec};
use crate::window::Window;

/// Per-degree spans of homogeneous elements, with levels as coordinates.
type Layer = HashMap<GroupElement, Vec<SparseVec<u32>>>;

/// `[L(a,p), v]` for `v` homogeneous of degree `d`, dropping levels > `top`.
fn bracket_level_vec(
    ea: &Scalar,
    ed: &Scalar,
    p: u32,
    v: &SparseVec<u32>,
    top: u32,
) -> SparseVec<u32> {
    let mut out: SparseVec<u32> = BTreeMap::new();
    let diff = ed.sub(ea);
    let mut push = |lvl: u32, c: Scalar| {
        if lvl > top || c.is_zero() {
            return;
        }
        let e = out.entry(lvl).or_default();
        *e = e.add(&c);
    };
    for (&l, c) in v {
        push(p + l, c.mul(&diff));
        if l != p {
            push(p + l + 1, c.mul_int(l as i64 - p as i64));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Checks that `m`-fold nested brackets `[W¹,[W¹,…,[W¹,W^{n−m}]…]]` of window
/// elements span every `L(β,j)` with `|β| ≤ A` and `n ≤ j ≤ I`.
///
/// The computation takes place in `W / W^{I+1}`, so levels above the window
/// are dropped. Intermediate degrees may leave the window by as much as the
/// remaining bracket steps can bring back.
pub fn nested_bracket_span_check(gamma: &Gamma, n: u32, m: u32, window: Window) -> Result<bool> {
    if m > n {
        return Err(Error::InvalidWindow(format!(
            "need m <= n, got m = {m}, n = {n}"
        )));
    }
    let a = window.degree_bound;
    let top = window.level_bound;
    let mut embed_cache: HashMap<GroupElement, Scalar> = HashMap::new();
    let mut embed = |d: &GroupElement| {
        embed_cache
            .entry(*d)
            .or_insert_with(|| gamma.embed(d))
            .clone()
    };

    let mut layer: Layer = HashMap::new();
    for d in gamma.degree_box(a + m * a) {
        let vecs = (n - m..=top)
            .map(|l| {
                let mut v = BTreeMap::new();
                v.insert(l, Scalar::one());
                v
            })
            .collect();
        layer.insert(d, vecs);
    }
    let w1: Vec<(GroupElement, u32)> = window.basis_levels(gamma, 1, top);
    for k in 1..=m {
        let bound = a + (m - k) * a;
        let mut next: HashMap<GroupElement, Echelon<u32>> = HashMap::new();
        let mut kept: Layer = HashMap::new();
        for (d, vecs) in &layer {
            let ed = embed(d);
            for (g, p) in &w1 {
                let target = d.add(g);
                if target.norm() > bound {
                    continue;
                }
                let eg = embed(g);
                for v in vecs {
                    let z = bracket_level_vec(&eg, &ed, *p, v, top);
                    if z.is_empty() {
                        continue;
                    }
                    let ech = next.entry(target).or_default();
                    if ech.insert(z.clone()) == Insert::Pivot {
                        kept.entry(target).or_default().push(z);
                    }
                }
            }
        }
        layer = kept;
    }

    for d in gamma.degree_box(a) {
        let mut ech: Echelon<u32> = Echelon::new();
        for v in layer.get(&d).into_iter().flatten() {
            ech.insert(v.clone());
        }
        for j in n..=top {
            let mut t = BTreeMap::new();
            t.insert(j, Scalar::one());
            if !ech.contains(&t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let z = Gamma::integers();
        let w = Window::new(2, 4).unwrap();
        assert!(nested_bracket_span_check(&z, 0, 0, w).unwrap());
        assert!(nested_bracket_span_check(&z, 1, 1, w).unwrap());
        assert!(nested_bracket_span_check(&z, 2, 1, w).unwrap());
        assert!(nested_bracket_span_check(&z, 1, 2, w).is_err());
    }
}
