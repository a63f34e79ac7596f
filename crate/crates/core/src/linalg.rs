//! Small dense complex matrices: arithmetic, the matrix exponential and a
//! complex Schur decomposition. Everything here is sized for n ≤ 8.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(n, m, rows.concat())
    }

    pub fn from_real_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let data = rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_vec(rows.len(), N, data).expect("non-empty literal")
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, &e) in entries.iter().enumerate() {
            m[(k, k)] = e;
        }
        m
    }

    /// `column * row`
    pub fn outer(column: &[Complex64], row: &[Complex64]) -> Self {
        let mut m = Self::zeros(column.len(), row.len());
        for (r, &c) in column.iter().enumerate() {
            for (s, &w) in row.iter().enumerate() {
                m[(r, s)] = c * w;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dims(), other.dims(), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `w * self` for a row vector.
    pub fn apply_left(&self, w: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.rows, w.len(), "vector length differs from row count");
        (0..self.cols).map(|c| (0..self.rows).map(|r| w[r] * self[(r, c)]).sum()).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.sub(&self.adjoint()).max_abs() <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Bilinear product `Σ a_k b_k` (no conjugation).
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Hermitian product `Σ conj(a_k) b_k`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(&x, &y)| x.conj() * y).sum()
}

pub fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by `2^-s` until its 1-norm is at most 1/2, the
/// series is summed until the next term no longer changes the sum, and the
/// result is squared `s` times.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows, cols: a.cols });
    }
    let norm = a.norm_one();
    if !norm.is_finite() {
        return Err(Error::Domain("matrix exponential of a non-finite matrix".into()));
    }
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    let n = a.rows;
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=40 {
        term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.max_abs() <= f64::EPSILON * 1e-3 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// Complex Schur form `A = Q T Q†` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

/// Givens rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

fn rotate_rows(m: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = m[(i, j)];
        let b = m[(i + 1, j)];
        m[(i, j)] = a * c + s * b;
        m[(i + 1, j)] = -s.conj() * a + b * c;
    }
}

/// Right-multiplies columns `i, i+1` by the adjoint rotation.
fn rotate_cols(m: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for r in rows {
        let u = m[(r, i)];
        let v = m[(r, i + 1)];
        m[(r, i)] = u * c + v * s.conj();
        m[(r, i + 1)] = -u * s + v * c;
    }
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// transformation in `q`.
fn hessenberg(a: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = a.rows;
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|r| a[(r, k)]).collect();
        let xnorm = norm2(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = norm2(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);
        // a <- P a P with P = I - 2 v v† acting on indices k+1..n
        for j in 0..n {
            let proj: Complex64 = (0..v.len()).map(|i| v[i].conj() * a[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                a[(k + 1 + i, j)] -= v[i] * proj * 2.0;
            }
        }
        for m in [&mut *a, &mut *q] {
            for r in 0..n {
                let proj: Complex64 = (0..v.len()).map(|i| m[(r, k + 1 + i)] * v[i]).sum();
                for i in 0..v.len() {
                    m[(r, k + 1 + i)] -= proj * v[i].conj() * 2.0;
                }
            }
        }
        for r in k + 2..n {
            a[(r, k)] = ZERO;
        }
    }
}

/// Shifted QR iteration on the Hessenberg form with Wilkinson shifts and
/// occasional exceptional shifts.
pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    let mut t = a.clone();
    let mut q = ComplexMatrix::identity(n);
    hessenberg(&mut t, &mut q);

    let max_iter = 60 * n;
    let mut total_iter = 0usize;
    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    while hi > 0 {
        // locate the top of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let scale = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            let scale = if scale == 0.0 { t.max_abs() } else { scale };
            if t[(lo, lo - 1)].norm() <= f64::EPSILON * scale {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total_iter += 1;
        since_deflation += 1;
        if total_iter > max_iter {
            return Err(Error::NoConvergence(total_iter));
        }

        let mu = if since_deflation % 11 == 10 {
            t[(hi, hi)] + t[(hi, hi - 1)].norm() * Complex64::new(0.75, 0.5)
        } else {
            let a11 = t[(hi - 1, hi - 1)];
            let a12 = t[(hi - 1, hi)];
            let a21 = t[(hi, hi - 1)];
            let a22 = t[(hi, hi)];
            let half = (a11 - a22) * 0.5;
            let disc = (half * half + a12 * a21).sqrt();
            let m1 = (a11 + a22) * 0.5 + disc;
            let m2 = (a11 + a22) * 0.5 - disc;
            if (m1 - a22).norm() <= (m2 - a22).norm() { m1 } else { m2 }
        };

        for k in lo..=hi {
            t[(k, k)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(t[(k, k)], t[(k + 1, k)]);
            rotate_rows(&mut t, k, c, s, k..n);
            t[(k + 1, k)] = ZERO;
            rotations.push((k, c, s));
        }
        for &(k, c, s) in &rotations {
            rotate_cols(&mut t, k, c, s, 0..(k + 2).min(hi + 1));
            rotate_cols(&mut q, k, c, s, 0..n);
        }
        for k in lo..=hi {
            t[(k, k)] += mu;
        }
    }
    for r in 1..n {
        for c in 0..r {
            t[(r, c)] = ZERO;
        }
    }
    Ok(Schur { q, t })
}
