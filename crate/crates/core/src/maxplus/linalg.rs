use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use super::MaxPlusScalar;
use crate::error::{check_dim, Result};

// Below this many entries the rayon split costs more than it saves.
const PAR_THRESHOLD: usize = 1 << 14;
const COL_CHUNK: usize = 256;

/// Fixed-length vector over the completed max-plus semiring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaxPlusVector(Vec<MaxPlusScalar>);

impl MaxPlusVector {
    pub fn new(entries: Vec<MaxPlusScalar>) -> Self {
        Self(entries)
    }

    pub fn from_f64(values: &[f64]) -> Self {
        Self(values.iter().copied().map(MaxPlusScalar::new).collect())
    }

    pub fn constant(len: usize, value: MaxPlusScalar) -> Self {
        Self(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[MaxPlusScalar] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MaxPlusScalar> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<MaxPlusScalar> {
        self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|v| v.to_f64()).collect()
    }

    /// Entrywise `≤` in the extended-real order.
    pub fn le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Scalar action `λ ⊗ self`.
    pub fn shift(&self, by: MaxPlusScalar) -> Self {
        Self(self.0.iter().map(|v| v.otimes(by)).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|&v| -v).collect())
    }

    pub fn oplus(&self, other: &Self) -> Result<Self> {
        check_dim("vector oplus", self.len(), other.len())?;
        Ok(Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.oplus(*b))
                .collect(),
        ))
    }
}

impl Index<usize> for MaxPlusVector {
    type Output = MaxPlusScalar;

    fn index(&self, i: usize) -> &MaxPlusScalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for MaxPlusVector {
    fn index_mut(&mut self, i: usize) -> &mut MaxPlusScalar {
        &mut self.0[i]
    }
}

impl FromIterator<MaxPlusScalar> for MaxPlusVector {
    fn from_iter<I: IntoIterator<Item = MaxPlusScalar>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MaxPlusVector {
    type Item = &'a MaxPlusScalar;
    type IntoIter = std::slice::Iter<'a, MaxPlusScalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Dense row-major max-plus matrix (the kernel of a max-plus linear map).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPlusMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MaxPlusScalar>,
}

impl MaxPlusMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<MaxPlusScalar>) -> Result<Self> {
        check_dim("matrix construction", rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> MaxPlusScalar + Sync,
    {
        let data = if rows * cols >= PAR_THRESHOLD {
            (0..rows * cols)
                .into_par_iter()
                .map(|k| f(k / cols, k % cols))
                .collect()
        } else {
            (0..rows * cols).map(|k| f(k / cols, k % cols)).collect()
        };
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows of IEEE values (`±inf` allowed).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            check_dim("matrix row length", cols, row.len())?;
            data.extend(row.iter().copied().map(MaxPlusScalar::new));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Tropical identity: `0` on the diagonal, `-∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                MaxPlusScalar::UNIT
            } else {
                MaxPlusScalar::NEG_INF
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> MaxPlusScalar {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[MaxPlusScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[MaxPlusScalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(MaxPlusScalar) -> MaxPlusScalar,
    {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    /// `(Aλ)_j = max_i (A_ji ⊗ λ_i)`.
    pub fn mat_vec(&self, x: &MaxPlusVector) -> Result<MaxPlusVector> {
        check_dim("mat_vec", self.cols, x.len())?;
        let xs = x.as_slice();
        let row_max = |r: usize| {
            self.row(r)
                .iter()
                .zip(xs)
                .fold(MaxPlusScalar::NEG_INF, |acc, (a, v)| {
                    acc.oplus(a.otimes(*v))
                })
        };
        let out = if self.data.len() >= PAR_THRESHOLD {
            MaxPlusVector::new(
                (0..self.rows)
                    .into_par_iter()
                    .map(row_max)
                    .collect::<Vec<_>>(),
            )
        } else {
            (0..self.rows).map(row_max).collect()
        };
        Ok(out)
    }

    /// Residuation `A \ v`: the greatest `λ` with `Aλ ≤ v`,
    /// `(A\v)_i = min_j (A_ji \ v_j)`.
    pub fn residual_solve(&self, v: &MaxPlusVector) -> Result<MaxPlusVector> {
        check_dim("residual_solve", self.rows, v.len())?;
        let vs = v.as_slice();
        let mut out = vec![MaxPlusScalar::POS_INF; self.cols];
        // Column chunks keep the row-major walk cache friendly.
        let fill = |(chunk_idx, chunk): (usize, &mut [MaxPlusScalar])| {
            let start = chunk_idx * COL_CHUNK;
            for (j, vj) in vs.iter().enumerate() {
                let row = &self.row(j)[start..start + chunk.len()];
                for (acc, a) in chunk.iter_mut().zip(row) {
                    *acc = acc.meet(a.residual(*vj));
                }
            }
        };
        if self.data.len() >= PAR_THRESHOLD {
            out.par_chunks_mut(COL_CHUNK).enumerate().for_each(fill);
        } else {
            out.chunks_mut(COL_CHUNK).enumerate().for_each(fill);
        }
        Ok(MaxPlusVector::new(out))
    }

    /// Tropical product `self ⊗ rhs`.
    pub fn mat_mul(&self, rhs: &MaxPlusMatrix) -> Result<MaxPlusMatrix> {
        check_dim("mat_mul", self.cols, rhs.rows)?;
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            self.row(r)
                .iter()
                .enumerate()
                .fold(MaxPlusScalar::NEG_INF, |acc, (k, a)| {
                    acc.oplus(a.otimes(rhs.get(k, c)))
                })
        }))
    }
}
