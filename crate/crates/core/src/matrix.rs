//! Dense matrices over an exact field, row-major storage.
//!
//! Vectors are rows acting from the left: a linear map is `x -> x * M`, so the
//! kernel of a map is the left kernel of its matrix and the image is the row
//! space. Everything here keeps that convention.

use crate::field::Field;
use std::fmt::Debug;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> Mat<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), &f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| f.add(self.at(i, j), other.at(i, j)))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| f.sub(self.at(i, j), other.at(i, j)))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| f.neg(self.at(i, j)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| f.mul(self.at(i, j), c))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat::new(self.rows + other.rows, self.cols, data)
    }
}

/// Row echelon form with the transformation tracked: `transform * input = echelon`.
/// Echelon rows below `rank` are zero; pivot columns are strictly increasing and
/// fully reduced (pivot entries are 1, zeros above and below).
pub struct Echelon<E> {
    pub echelon: Mat<E>,
    pub transform: Mat<E>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Debug> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Express `b` in the row space of the original matrix: coefficients `c`
    /// with `c * input = b`, or None when `b` is outside the row space.
    pub fn express<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.echelon.cols);
        let mut resid: Vec<E> = b.to_vec();
        let mut coeffs = vec![f.zero(); self.echelon.rows];
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = resid[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..resid.len() {
                resid[j] = f.sub(&resid[j], &f.mul(&c, self.echelon.at(r, j)));
            }
            coeffs[r] = c;
        }
        if resid.iter().any(|e| !f.is_zero(e)) {
            return None;
        }
        // coeffs are w.r.t. echelon rows; pull back through the transform.
        let c = Mat::new(1, coeffs.len(), coeffs);
        Some(c.mul(f, &self.transform).data)
    }
}

pub fn echelonize<F: Field>(f: &F, m: &Mat<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut t = Mat::identity(f, m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let piv = (r..a.rows).find(|&i| !f.is_zero(a.at(i, col)));
        let Some(piv) = piv else { continue };
        for j in 0..a.cols {
            a.data.swap(r * a.cols + j, piv * a.cols + j);
        }
        for j in 0..t.cols {
            t.data.swap(r * t.cols + j, piv * t.cols + j);
        }
        let inv = f.inv(a.at(r, col));
        for j in 0..a.cols {
            let v = f.mul(a.at(r, j), &inv);
            a.set(r, j, v);
        }
        for j in 0..t.cols {
            let v = f.mul(t.at(r, j), &inv);
            t.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || f.is_zero(a.at(i, col)) {
                continue;
            }
            let c = a.at(i, col).clone();
            for j in 0..a.cols {
                let v = f.sub(a.at(i, j), &f.mul(&c, a.at(r, j)));
                a.set(i, j, v);
            }
            for j in 0..t.cols {
                let v = f.sub(t.at(i, j), &f.mul(&c, t.at(r, j)));
                t.set(i, j, v);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Echelon { echelon: a, transform: t, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    echelonize(f, m).rank()
}

/// Basis of the left kernel: rows `v` with `v * m = 0`.
pub fn left_kernel<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let e = echelonize(f, m);
    (e.rank()..m.rows).map(|i| e.transform.row(i).to_vec()).collect()
}

/// Determinant by elimination; exact over any field.
pub fn det<F: Field>(f: &F, m: &Mat<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let mut a = m.clone();
    let n = a.rows;
    let mut acc = f.one();
    for col in 0..n {
        let piv = (col..n).find(|&i| !f.is_zero(a.at(i, col)));
        let Some(piv) = piv else { return f.zero() };
        if piv != col {
            for j in 0..n {
                a.data.swap(col * n + j, piv * n + j);
            }
            acc = f.neg(&acc);
        }
        let d = a.at(col, col).clone();
        acc = f.mul(&acc, &d);
        let inv = f.inv(&d);
        for i in col + 1..n {
            if f.is_zero(a.at(i, col)) {
                continue;
            }
            let c = f.mul(a.at(i, col), &inv);
            for j in col..n {
                let v = f.sub(a.at(i, j), &f.mul(&c, a.at(col, j)));
                a.set(i, j, v);
            }
        }
    }
    acc
}

/// Inverse of a square matrix, or None when singular.
pub fn invert<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    assert_eq!(m.rows, m.cols);
    let e = echelonize(f, m);
    if e.rank() < m.rows {
        return None;
    }
    Some(e.transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_mat(f: &PrimeField, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat<u64> {
        Mat::from_fn(r, c, |_, _| f.random(rng))
    }

    #[test]
    fn invert_roundtrip() {
        let f = PrimeField::new(crate::DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..6 {
            let m = random_mat(&f, &mut rng, n, n);
            let inv = invert(&f, &m).expect("random matrix should be invertible");
            assert_eq!(m.mul(&f, &inv), Mat::identity(&f, n));
            assert_eq!(inv.mul(&f, &m), Mat::identity(&f, n));
        }
    }

    #[test]
    fn left_kernel_annihilates() {
        let f = PrimeField::new(crate::DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_mat(&f, &mut rng, 6, 3);
        let ker = left_kernel(&f, &m);
        assert_eq!(ker.len(), 3);
        for v in ker {
            let vm = Mat::new(1, 6, v).mul(&f, &m);
            assert!(vm.is_zero(&f));
        }
    }

    #[test]
    fn express_in_row_space() {
        let f = PrimeField::new(crate::DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_mat(&f, &mut rng, 3, 5);
        let e = echelonize(&f, &m);
        let c = Mat::new(1, 3, vec![2, 3, 5]);
        let b = c.mul(&f, &m);
        let got = e.express(&f, b.row(0)).expect("in row space");
        assert_eq!(Mat::new(1, 3, got).mul(&f, &m), b);
    }

    #[test]
    fn det_multiplicative() {
        let f = PrimeField::new(crate::DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_mat(&f, &mut rng, 4, 4);
        let b = random_mat(&f, &mut rng, 4, 4);
        let lhs = det(&f, &a.mul(&f, &b));
        let rhs = f.mul(&det(&f, &a), &det(&f, &b));
        assert_eq!(lhs, rhs);
    }
}
