use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// A dense matrix over a finite field, row-major.
#[derive(Clone)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}]", self)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|&x| self.field.format(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

/// Reduced row-echelon form plus the pivot columns.
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Arc<Field>, n: usize, a: Fe) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    pub fn from_data(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.size()) {
            return Err(Error::Precondition(format!("entry {bad} is not an element of {field}")));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    /// Square matrix from integer rows, reduced through the prime subfield.
    pub fn from_ints(field: &Arc<Field>, rows: &[&[i64]]) -> Result<Mat> {
        let n = rows.len();
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_int(x))).collect();
        Mat::from_data(field, n, cols, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(i, &x)| {
                let diag = i / self.cols == i % self.cols;
                x == u32::from(diag)
            })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let f = &*self.field;
        let mut out = vec![0; n * m];
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for t in 0..k {
                    let a = self.data[i * k + t] as u64;
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[t * m..(t + 1) * m];
                    for (slot, &b) in acc.iter_mut().zip(brow) {
                        *slot += a * b as u64;
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    out[i * m + j] = (a % p) as Fe;
                }
            }
        } else {
            for i in 0..n {
                for t in 0..k {
                    let a = self.data[i * k + t];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let idx = i * m + j;
                        out[idx] = f.add(out[idx], f.mul(a, other.data[t * m + j]));
                    }
                }
            }
        }
        Mat { field: self.field.clone(), rows: n, cols: m, data: out }
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        let f = &*self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, a: Fe) -> Mat {
        let f = &*self.field;
        let data = self.data.iter().map(|&x| f.mul(a, x)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn echelon(&self) -> Echelon {
        let f = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let f = &*self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Fe> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &*self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return Ok(0);
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[c * n + j]));
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Mat::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Places `block` at block position (`bi`, `bj`) of this matrix.
    pub fn put_block(&mut self, bi: usize, bj: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(bi * block.rows + i, bj * block.cols + j, block.get(i, j));
            }
        }
    }
}

/// The fixed-point space `ker(g - I)` of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSpace {
    pub dimension: usize,
    /// Canonical (reduced echelon) basis.
    pub basis: Vec<Vec<Fe>>,
}

pub fn fixed_space(g: &Mat) -> Result<FixedSpace> {
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows, cols: g.cols });
    }
    if g.rank() < g.rows {
        return Err(Error::Singular);
    }
    Ok(fixed_space_unchecked(g))
}

/// As [`fixed_space`] but assumes `g` is square and invertible. The basis is
/// returned in reduced echelon form, so equal subspaces get equal bases.
pub(crate) fn fixed_space_unchecked(g: &Mat) -> FixedSpace {
    let id = Mat::identity(&g.field, g.rows);
    let ker = g.sub(&id).kernel();
    let dimension = ker.len();
    if dimension == 0 {
        return FixedSpace { dimension, basis: ker };
    }
    let spanned = Mat {
        field: g.field.clone(),
        rows: dimension,
        cols: g.cols,
        data: ker.into_iter().flatten().collect(),
    };
    let reduced = spanned.echelon().reduced;
    let basis = (0..dimension).map(|r| reduced.row(r).to_vec()).collect();
    FixedSpace { dimension, basis }
}

/// Dimension of `ker(g - I)` without building a basis.
pub(crate) fn fixed_dim(g: &Mat) -> usize {
    let id = Mat::identity(&g.field, g.rows);
    g.cols - g.sub(&id).rank()
}

/// Least `n >= 1` with `g^n = I`, failing once `n` would exceed `cap`.
pub fn element_order(g: &Mat, cap: u64) -> Result<u64> {
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows, cols: g.cols });
    }
    let mut x = g.clone();
    let mut n = 1;
    while !x.is_identity() {
        if n >= cap {
            return Err(Error::OrderCap(cap));
        }
        x = x.mul(g);
        n += 1;
    }
    Ok(n)
}
