//! Small dense complex matrices, column-major.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let n = cols.len();
        let data = cols.iter().flat_map(|c| {
            assert_eq!(c.len(), n);
            c.iter().copied()
        });
        Self { n, data: data.collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        self.map_transpose(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        self.map_transpose(|z| z)
    }

    fn map_transpose(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = f(self[(i, j)]);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for j in 0..self.n {
            for l in 0..self.n {
                let b = other[(l, j)];
                for i in 0..self.n {
                    out[(i, j)] += self[(i, l)] * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let piv = (c..n)
                .max_by(|&x, &y| a[(x, c)].norm().total_cmp(&a[(y, c)].norm()))
                .unwrap();
            if a[(piv, c)].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != c {
                for j in 0..n {
                    let t = a[(piv, j)];
                    a[(piv, j)] = a[(c, j)];
                    a[(c, j)] = t;
                }
                det = -det;
            }
            det *= a[(c, c)];
            for r in c + 1..n {
                let factor = a[(r, c)] / a[(c, c)];
                for j in c..n {
                    let t = factor * a[(c, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        det
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[j * self.n + i]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.n + i]
    }
}
