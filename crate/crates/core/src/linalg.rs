//! Exact sparse elimination over the scalar field.

use std::collections::BTreeMap;

use crate::ground::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, k: &Scalar, w: &SparseVec<K>) {
    for (key, c) in w {
        let add = c.mul(k);
        match v.get_mut(key) {
            Some(slot) => {
                let s = slot.add(&add);
                if s.is_zero() {
                    v.remove(key);
                } else {
                    *slot = s;
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(key.clone(), add);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    rhs: Scalar,
    combo: SparseVec<usize>,
}

/// What happened to a vector fed to [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// Independent of the rows so far; it became a new pivot row.
    Pivot,
    /// Reduced to `0 = 0`.
    Dependent,
    /// Reduced to `0 = r` with `r ≠ 0`; `combo` gives the input rows whose
    /// combination produces the contradiction.
    Inconsistent { combo: SparseVec<usize> },
}

/// Row echelon form built incrementally. Each row is normalised so that the
/// coefficient of its pivot (its smallest key) is 1. Optionally tracks, for
/// every row, which combination of inserted rows produced it.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    track: bool,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Echelon<K> {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    /// Records row provenance, needed for inconsistency certificates.
    pub fn tracking() -> Echelon<K> {
        Echelon {
            track: true,
            ..Echelon::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    fn reduce_row(&self, row: &mut Row<K>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => row
                    .vec
                    .keys()
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
                Some(c) => row
                    .vec
                    .range((
                        std::ops::Bound::Excluded(c.clone()),
                        std::ops::Bound::Unbounded,
                    ))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(key) = next else { break };
            let pivot_row = &self.rows[self.pivots[&key]];
            let factor = row.vec[&key].neg();
            axpy(&mut row.vec, &factor, &pivot_row.vec);
            row.rhs = row.rhs.add(&pivot_row.rhs.mul(&factor));
            if self.track {
                axpy(&mut row.combo, &factor, &pivot_row.combo);
            }
            cursor = Some(key);
        }
    }

    /// Reduces `v` against the current rows without inserting it.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut row = Row {
            vec: v.clone(),
            rhs: Scalar::zero(),
            combo: SparseVec::new(),
        };
        self.reduce_row(&mut row);
        row.vec
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a homogeneous row.
    pub fn insert(&mut self, v: SparseVec<K>) -> Insert {
        self.insert_equation(v, Scalar::zero())
    }

    /// Inserts the equation `v · x = rhs`.
    pub fn insert_equation(&mut self, v: SparseVec<K>, rhs: Scalar) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(id, Scalar::one());
        }
        let mut row = Row { vec: v, rhs, combo };
        self.reduce_row(&mut row);
        let Some((key, lead)) = row.vec.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return if row.rhs.is_zero() {
                Insert::Dependent
            } else {
                Insert::Inconsistent { combo: row.combo }
            };
        };
        if !lead.is_one() {
            let inv = lead.inv().expect("leading coefficient is nonzero");
            for c in row.vec.values_mut() {
                *c = c.mul(&inv);
            }
            row.rhs = row.rhs.mul(&inv);
            for c in row.combo.values_mut() {
                *c = c.mul(&inv);
            }
        }
        self.pivots.insert(key, self.rows.len());
        self.rows.push(row);
        Insert::Pivot
    }

    /// A particular solution with every free unknown set to zero. Only
    /// meaningful when no inserted equation was inconsistent.
    pub fn solution(&self) -> SparseVec<K> {
        self.back_substitute(SparseVec::new(), false)
    }

    fn back_substitute(&self, free: SparseVec<K>, homogeneous: bool) -> SparseVec<K> {
        let mut x: SparseVec<K> = free;
        for (key, &idx) in self.pivots.iter().rev() {
            let row = &self.rows[idx];
            let mut val = if homogeneous {
                Scalar::zero()
            } else {
                row.rhs.clone()
            };
            for (k, c) in row.vec.range(key.clone()..).skip(1) {
                if let Some(xk) = x.get(k) {
                    val = val.sub(&c.mul(xk));
                }
            }
            if !val.is_zero() {
                x.insert(key.clone(), val);
            }
        }
        x
    }

    /// Basis of the homogeneous solution space over the given unknowns.
    pub fn nullspace(&self, unknowns: &[K]) -> Vec<SparseVec<K>> {
        unknowns
            .iter()
            .filter(|k| !self.pivots.contains_key(*k))
            .map(|k| {
                let mut free = SparseVec::new();
                free.insert(k.clone(), Scalar::one());
                self.back_substitute(free, true)
            })
            .collect()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Whether the equations `rows[i] · x = rhs[i]` are jointly inconsistent.
pub fn is_inconsistent<K: Ord + Clone>(rows: &[(SparseVec<K>, Scalar)]) -> bool {
    let mut e = Echelon::new();
    rows.iter().any(|(v, r)| {
        matches!(
            e.insert_equation(v.clone(), r.clone()),
            Insert::Inconsistent { .. }
        )
    })
}

/// Shrinks an inconsistent set of equations to a minimal inconsistent subset
/// by trying to drop each equation in turn. Returns indices into `rows`.
pub fn minimal_inconsistent_subset<K: Ord + Clone>(
    rows: &[(SparseVec<K>, Scalar)],
    start: &[usize],
) -> Vec<usize> {
    let mut keep: Vec<usize> = start.to_vec();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<(SparseVec<K>, Scalar)> = keep
            .iter()
            .enumerate()
            .filter(|(n, _)| *n != i)
            .map(|(_, &k)| rows[k].clone())
            .collect();
        if is_inconsistent(&trial) {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}
