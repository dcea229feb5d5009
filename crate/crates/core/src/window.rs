use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement};
use crate::lie::{BasisIndex, Element};

/// The finite verification domain `{|degree coordinates| ≤ A, level ≤ I}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub degree_bound: u32,
    pub level_bound: u32,
}

impl Window {
    pub fn new(degree_bound: u32, level_bound: u32) -> Result<Window> {
        if degree_bound == 0 {
            return Err(Error::InvalidWindow("degree bound must be positive".into()));
        }
        Ok(Window {
            degree_bound,
            level_bound,
        })
    }

    /// The same window widened by the given slack in each direction.
    pub fn widen(&self, degree: u32, level: u32) -> Window {
        Window {
            degree_bound: self.degree_bound + degree,
            level_bound: self.level_bound + level,
        }
    }

    pub fn degrees(&self, gamma: &Gamma) -> Vec<GroupElement> {
        gamma.degree_box(self.degree_bound)
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<u32> {
        0..=self.level_bound
    }

    /// Every `(α, i)` in the window, degree-major.
    pub fn basis(&self, gamma: &Gamma) -> Vec<(GroupElement, u32)> {
        let mut out = Vec::new();
        for d in self.degrees(gamma) {
            for i in self.levels() {
                out.push((d, i));
            }
        }
        out
    }

    /// Window basis elements with level in `lo..=hi`.
    pub fn basis_levels(&self, gamma: &Gamma, lo: u32, hi: u32) -> Vec<(GroupElement, u32)> {
        self.basis(gamma)
            .into_iter()
            .filter(|(_, i)| *i >= lo && *i <= hi)
            .collect()
    }

    /// The generating set `{L(α,0), L(α,1)}` restricted to the window.
    pub fn generators(&self, gamma: &Gamma) -> Vec<(GroupElement, u32)> {
        let mut out = Vec::new();
        for d in self.degrees(gamma) {
            out.push((d, 0));
            out.push((d, 1));
        }
        out
    }

    pub fn contains_degree(&self, d: &GroupElement) -> bool {
        d.norm() <= self.degree_bound
    }

    pub fn contains(&self, idx: &BasisIndex) -> bool {
        match idx {
            BasisIndex::Basic { degree, level } => {
                self.contains_degree(degree) && *level <= self.level_bound
            }
            BasisIndex::Central => true,
        }
    }

    pub fn contains_element(&self, x: &Element) -> bool {
        x.terms().all(|(i, _)| self.contains(i))
    }
}
