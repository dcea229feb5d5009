use std::cmp::Ordering;

use super::normalize::{coboundary_row, pair_label};
use super::{eval_basis, Cocycle, Index, LinearFunctional};
use crate::error::Result;
use crate::ground::{Gamma, Scalar};
use crate::lie::BasisIndex;
use crate::linalg::{minimal_inconsistent_subset, Echelon, Insert, SparseVec};
use crate::window::Window;

/// One equation `f([x, y]) = ψ(x, y)` of a coboundary fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEquation {
    pub pair: (Index, Index),
    pub lhs: SparseVec<Index>,
    pub rhs: Scalar,
}

impl CertificateEquation {
    pub fn format(&self, gamma: &Gamma) -> String {
        let mut lhs = String::new();
        for (n, (k, c)) in self.lhs.iter().enumerate() {
            let f = format!("f({})", BasisIndex::new(k.0, k.1).format(gamma));
            let neg = c.is_negative_leading();
            let mag = if neg { c.neg() } else { c.clone() };
            let sign = match (n, neg) {
                (0, true) => "-".to_string(),
                (0, false) => String::new(),
                (_, true) => " - ".to_string(),
                (_, false) => " + ".to_string(),
            };
            let coeff = if mag.is_one() {
                String::new()
            } else {
                format!("{}*", mag.fmt_factor(gamma.names()))
            };
            lhs.push_str(&format!("{sign}{coeff}{f}"));
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!(
            "{lhs} = {}  from {}",
            gamma.display_scalar(&self.rhs),
            pair_label(gamma, self.pair.0, self.pair.1)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    pub feasible: bool,
    /// A solution when feasible.
    pub f: Option<LinearFunctional>,
    /// A minimal inconsistent subsystem when infeasible.
    pub certificate: Vec<CertificateEquation>,
}

/// Window basis pairs `(a, b)` with `a` above `b`, ordered by how far out
/// they reach so that small degrees are constrained first.
fn ordered_pairs(gamma: &Gamma, window: Window) -> Vec<(Index, Index)> {
    let basis = window.basis(gamma);
    let above = |a: &Index, b: &Index| gamma.compare(&a.0, &b.0).then(a.1.cmp(&b.1));
    let mut pairs = Vec::new();
    for (n, a) in basis.iter().enumerate() {
        for b in &basis[n + 1..] {
            if above(a, b) == Ordering::Greater {
                pairs.push((*a, *b));
            } else {
                pairs.push((*b, *a));
            }
        }
    }
    let key = |p: &(Index, Index)| (p.0 .0.norm().max(p.1 .0.norm()), p.0 .1.max(p.1 .1));
    pairs.sort_by(|p, q| {
        key(p)
            .cmp(&key(q))
            .then_with(|| above(&q.0, &p.0))
            .then_with(|| above(&q.1, &p.1))
    });
    pairs
}

/// Solves `f([x,y]) = ψ(x,y)` over all window pairs by exact elimination.
/// Stops at the first contradiction and shrinks it to a minimal subsystem.
pub fn coboundary_fit(gamma: &Gamma, psi: &Cocycle, window: Window) -> Result<FitResult> {
    let mut echelon: Echelon<Index> = Echelon::tracking();
    let mut rows: Vec<(SparseVec<Index>, Scalar)> = Vec::new();
    let mut pairs = Vec::new();
    for (a, b) in ordered_pairs(gamma, window) {
        let lhs = coboundary_row(gamma, a, b)?;
        let rhs = eval_basis(gamma, psi, a, b)?;
        rows.push((lhs.clone(), rhs.clone()));
        pairs.push((a, b));
        if let Insert::Inconsistent { combo } = echelon.insert_equation(lhs, rhs) {
            let start: Vec<usize> = combo.keys().copied().collect();
            let certificate = minimal_inconsistent_subset(&rows, &start)
                .into_iter()
                .map(|k| CertificateEquation {
                    pair: pairs[k],
                    lhs: rows[k].0.clone(),
                    rhs: rows[k].1.clone(),
                })
                .collect();
            return Ok(FitResult {
                feasible: false,
                f: None,
                certificate,
            });
        }
    }
    let f = LinearFunctional::from_values(echelon.solution());
    Ok(FitResult {
        feasible: true,
        f: Some(f),
        certificate: Vec::new(),
    })
}
