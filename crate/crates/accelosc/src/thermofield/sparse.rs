//! Column-compressed complex sparse matrices sized for truncated Fock-space
//! operators, with the exponential-map kernels the thermofield module needs:
//! exp(A) by scaling-and-squaring and exp(A)·v by substepped series, both
//! with convergence-based term cutoffs.

use num_complex::Complex64;

/// Sparse operator stored column-wise; each column holds (row, value) pairs
/// sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            cols: (0..dim).map(|j| vec![(j, Complex64::ONE)]).collect(),
        }
    }

    /// Builds from (row, col, value) triples; duplicates are summed, exact
    /// zeros dropped.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (row, col, value) in entries {
            assert!(row < dim && col < dim, "entry ({row}, {col}) out of bounds");
            cols[col].push((row, value));
        }
        for col in &mut cols {
            col.sort_by_key(|&(row, _)| row);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(col.len());
            for &(row, value) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == row => last.1 += value,
                    _ => merged.push((row, value)),
                }
            }
            merged.retain(|&(_, v)| v != Complex64::ZERO);
            *col = merged;
        }
        Self { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.cols[col][i].1)
            .unwrap_or(Complex64::ZERO)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::ZERO; self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            let vj = v[j];
            if vj != Complex64::ZERO {
                for &(row, value) in col {
                    out[row] += value * vj;
                }
            }
        }
        out
    }

    /// self · rhs, built column by column through a dense scratch vector.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut cols = Vec::with_capacity(self.dim);
        let mut scratch = vec![Complex64::ZERO; self.dim];
        for rhs_col in &rhs.cols {
            for &(k, rhs_value) in rhs_col {
                for &(row, value) in &self.cols[k] {
                    scratch[row] += value * rhs_value;
                }
            }
            let mut col = Vec::new();
            for (row, slot) in scratch.iter_mut().enumerate() {
                if *slot != Complex64::ZERO {
                    col.push((row, *slot));
                    *slot = Complex64::ZERO;
                }
            }
            cols.push(col);
        }
        Self {
            dim: self.dim,
            cols,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(row, value) in col {
                cols[row].push((j, value.conj()));
            }
        }
        Self {
            dim: self.dim,
            cols,
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|&(row, v)| (row, k * v)).collect())
            .collect();
        Self {
            dim: self.dim,
            cols,
        }
    }

    /// self + k·rhs with exact-zero results dropped.
    pub fn add_scaled(&self, rhs: &Self, k: Complex64) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut cols = Vec::with_capacity(self.dim);
        for (a, b) in self.cols.iter().zip(&rhs.cols) {
            let mut col = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let merged = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                    let e = a[i];
                    i += 1;
                    e
                } else if i >= a.len() || b[j].0 < a[i].0 {
                    let e = (b[j].0, k * b[j].1);
                    j += 1;
                    e
                } else {
                    let e = (a[i].0, a[i].1 + k * b[j].1);
                    i += 1;
                    j += 1;
                    e
                };
                if merged.1 != Complex64::ZERO {
                    col.push(merged);
                }
            }
            cols.push(col);
        }
        Self {
            dim: self.dim,
            cols,
        }
    }

    /// [self, rhs] = self·rhs − rhs·self.
    pub fn commutator_with(&self, rhs: &Self) -> Self {
        self.matmul(rhs).add_scaled(&rhs.matmul(self), -Complex64::ONE)
    }

    /// Maximum column sum of absolute values.
    pub fn one_norm(&self) -> f64 {
        self.cols
            .iter()
            .map(|col| col.iter().map(|(_, v)| v.norm()).sum())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm of the submatrix where both row and column are inside
    /// the mask.
    pub fn frobenius_norm_on(&self, mask: &[bool]) -> f64 {
        assert_eq!(mask.len(), self.dim);
        let mut sum = 0.0;
        for (j, col) in self.cols.iter().enumerate() {
            if mask[j] {
                for &(row, value) in col {
                    if mask[row] {
                        sum += value.norm_sqr();
                    }
                }
            }
        }
        sum.sqrt()
    }

    /// Frobenius distance ‖self − rhs‖ restricted to the masked block.
    pub fn frobenius_distance_on(&self, rhs: &Self, mask: &[bool]) -> f64 {
        self.add_scaled(rhs, -Complex64::ONE).frobenius_norm_on(mask)
    }
}

const SERIES_MAX_TERMS: usize = 80;
const SERIES_EPS: f64 = 1e-16;

fn scaling_steps(norm: f64) -> u32 {
    if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    }
}

/// exp(A) by scaling-and-squaring with a convergence-cut Taylor kernel.
pub fn expm(a: &SparseOp) -> SparseOp {
    let steps = scaling_steps(a.one_norm());
    let scaled = a.scale(Complex64::new(0.5f64.powi(steps as i32), 0.0));
    let mut sum = SparseOp::identity(a.dim());
    let mut term = SparseOp::identity(a.dim());
    for k in 1..=SERIES_MAX_TERMS {
        term = scaled.matmul(&term).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add_scaled(&term, Complex64::ONE);
        if term.one_norm() <= SERIES_EPS * sum.one_norm() {
            break;
        }
    }
    for _ in 0..steps {
        sum = sum.matmul(&sum);
    }
    sum
}

/// exp(A)·v without forming exp(A): the scaled series applied 2^steps times.
pub fn expm_mul(a: &SparseOp, v: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(v.len(), a.dim());
    let steps = scaling_steps(a.one_norm());
    let substeps = 1u64 << steps;
    let inv = 1.0 / substeps as f64;
    let mut y = v.to_vec();
    for _ in 0..substeps {
        let mut acc = y.clone();
        let mut term = y;
        for k in 1..=SERIES_MAX_TERMS {
            term = a.mul_vec(&term);
            let factor = inv / k as f64;
            let mut term_norm_sqr = 0.0;
            for t in &mut term {
                *t *= factor;
                term_norm_sqr += t.norm_sqr();
            }
            let mut acc_norm_sqr = 0.0;
            for (s, t) in acc.iter_mut().zip(&term) {
                *s += t;
                acc_norm_sqr += s.norm_sqr();
            }
            if term_norm_sqr.sqrt() <= SERIES_EPS * acc_norm_sqr.sqrt() {
                break;
            }
        }
        y = acc;
    }
    y
}
