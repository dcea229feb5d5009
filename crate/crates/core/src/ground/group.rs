use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported rank of Γ (one packed exponent byte per generator).
pub const MAX_RANK: usize = super::poly::MAX_VARS;

/// A degree α ∈ Γ ≅ ℤ^r, stored as integer coordinates over the generators.
///
/// The derived `Ord` is only a storage order; the group order used for
/// printing and for "highest term" arguments lives in [`GroupOrder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rank: u8,
    coords: [i32; MAX_RANK],
}

impl GroupElement {
    pub fn zero(rank: usize) -> GroupElement {
        assert!(
            (1..=MAX_RANK).contains(&rank),
            "rank must be in 1..={MAX_RANK}"
        );
        GroupElement {
            rank: rank as u8,
            coords: [0; MAX_RANK],
        }
    }

    pub fn new(coords: &[i64]) -> GroupElement {
        let mut g = GroupElement::zero(coords.len());
        for (slot, &c) in g.coords.iter_mut().zip(coords) {
            *slot = i32::try_from(c).expect("degree coordinate out of range");
        }
        g
    }

    /// Rank-1 shorthand.
    pub fn int(n: i64) -> GroupElement {
        GroupElement::new(&[n])
    }

    pub fn unit_vector(rank: usize, k: usize) -> GroupElement {
        let mut g = GroupElement::zero(rank);
        g.coords[k] = 1;
        g
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    pub fn coords_i64(&self) -> Vec<i64> {
        self.coords().iter().map(|&c| c as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = *self;
        for k in 0..MAX_RANK {
            out.coords[k] = self.coords[k] + other.coords[k];
        }
        out
    }

    pub fn neg(&self) -> GroupElement {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c = i32::try_from(*c as i64 * k).expect("degree coordinate out of range");
        }
        out
    }

    /// Max |coordinate|.
    pub fn norm(&self) -> u32 {
        self.coords()
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Every element with all |coordinates| ≤ bound, in storage order.
    pub fn box_elements(rank: usize, bound: u32) -> Vec<GroupElement> {
        let b = bound as i64;
        let mut out = vec![GroupElement::zero(rank)];
        for k in 0..rank {
            let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
            for g in &out {
                for c in -b..=b {
                    let mut h = *g;
                    h.coords[k] = c as i32;
                    next.push(h);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "{:?}", self.coords())
        }
    }
}

/// Signed lexicographic order: compare `sign_k * coord_k` for generators in
/// `priority` order. Compatible with addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrder {
    priority: Vec<usize>,
    signs: Vec<i8>,
}

impl GroupOrder {
    pub fn standard(rank: usize) -> GroupOrder {
        GroupOrder {
            priority: (0..rank).collect(),
            signs: vec![1; rank],
        }
    }

    /// `priority` is 0-based; `signs[k]` belongs to generator `k`.
    pub fn new(priority: Vec<usize>, signs: Vec<i8>) -> Result<GroupOrder> {
        let r = priority.len();
        let mut seen = vec![false; r];
        for &p in &priority {
            if p >= r || seen[p] {
                return Err(Error::InvalidGamma(
                    "order priority must be a permutation".into(),
                ));
            }
            seen[p] = true;
        }
        if signs.len() != r || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidGamma(
                "order signs must be ±1, one per generator".into(),
            ));
        }
        Ok(GroupOrder { priority, signs })
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn compare(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        for &k in &self.priority {
            let s = self.signs[k] as i64;
            let ord = (s * a.coords[k] as i64).cmp(&(s * b.coords[k] as i64));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    pub fn is_positive(&self, a: &GroupElement) -> bool {
        self.compare(a, &GroupElement::zero(a.rank())) == Ordering::Greater
    }
}
