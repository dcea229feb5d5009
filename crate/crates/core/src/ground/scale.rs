use super::gamma::Gamma;
use super::group::GroupElement;
use super::rational::Q;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A scalar `c` with `cΓ = Γ`, carried together with its lattice action.
///
/// `matrix[row][col]`; column `k` is the coordinate vector of `c·g_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaleMap {
    value: Scalar,
    matrix: Vec<Vec<i64>>,
}

impl ScaleMap {
    pub fn new(gamma: &Gamma, value: Scalar, matrix: Vec<Vec<i64>>) -> Result<ScaleMap> {
        let r = gamma.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidScaleMap(format!("matrix must be {r}x{r}")));
        }
        if value.is_zero() {
            return Err(Error::InvalidScaleMap("scale value must be nonzero".into()));
        }
        let det = determinant(&matrix);
        if det != Q::ONE && det != Q::from_int(-1) {
            return Err(Error::InvalidScaleMap(format!(
                "determinant {det} is not ±1"
            )));
        }
        let map = ScaleMap { value, matrix };
        for k in 0..r {
            let e = gamma.unit_vector(k);
            let lhs = map.value.mul(&gamma.embed(&e));
            let rhs = gamma.embed(&map.apply(&e));
            if lhs != rhs {
                return Err(Error::InvalidScaleMap(format!(
                    "c·g{} = {} but the matrix column gives {}",
                    k + 1,
                    gamma.display_scalar(&lhs),
                    gamma.display_scalar(&rhs)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(gamma: &Gamma) -> ScaleMap {
        let r = gamma.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| (i == j) as i64).collect())
            .collect();
        ScaleMap {
            value: Scalar::one(),
            matrix,
        }
    }

    /// c = -1, M = -I.
    pub fn negation(gamma: &Gamma) -> ScaleMap {
        let r = gamma.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| -((i == j) as i64)).collect())
            .collect();
        ScaleMap {
            value: Scalar::from_int(-1),
            matrix,
        }
    }

    /// Skips validation; only for fault-injection tests.
    pub fn new_unchecked(value: Scalar, matrix: Vec<Vec<i64>>) -> ScaleMap {
        ScaleMap { value, matrix }
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// M·α.
    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let coords = a.coords();
        let out: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(coords).map(|(m, &x)| m * x as i64).sum())
            .collect();
        GroupElement::new(&out)
    }

    /// `self ∘ other`: value `c1·c2`, matrix `M1·M2`.
    pub fn compose(&self, other: &ScaleMap) -> ScaleMap {
        let r = self.matrix.len();
        let matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        ScaleMap {
            value: self.value.mul(&other.value),
            matrix,
        }
    }

    pub fn inverse(&self) -> ScaleMap {
        let inv =
            integer_inverse(&self.matrix).expect("unimodular matrices have integral inverses");
        ScaleMap {
            value: self.value.inv().expect("nonzero"),
            matrix: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.value.is_one()
            && self
                .matrix
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &m)| m == (i == j) as i64))
    }
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Q::from_int(x)).collect())
        .collect()
}

pub fn determinant(m: &[Vec<i64>]) -> Q {
    let mut a = to_q(m);
    let n = a.len();
    let mut det = Q::ONE;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::ZERO;
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let pivot = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&pivot);
            let (top, rest) = a.split_at_mut(r);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.sub(&f.mul(p));
            }
        }
    }
    det
}

/// Inverse over ℚ, returned only if every entry is an integer.
pub fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a = to_q(m);
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::ONE } else { Q::ZERO })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let piv = a[col][col].recip();
        for c in 0..n {
            a[col][c] = a[col][c].mul(&piv);
            inv[col][c] = inv[col][c].mul(&piv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                inv[r][c] = inv[r][c].sub(&f.mul(&inv[col][c]));
            }
        }
    }
    inv.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|q| match q {
                    Q::Small(n, 1) => Some(n),
                    _ => None,
                })
                .collect()
        })
        .collect()
}
