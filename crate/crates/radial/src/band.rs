//! Pentadiagonal matrices and their direct solution.

/// Row-major pentadiagonal matrix: `rows[i][k]` multiplies `x[i + k - 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Band5 {
    rows: Vec<[f64; 5]>,
}

impl Band5 {
    pub fn zeros(n: usize) -> Self {
        Self { rows: vec![[0.0; 5]; n] }
    }

    pub fn from_rows(rows: Vec<[f64; 5]>) -> Self {
        Self { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[[f64; 5]] {
        &self.rows
    }

    pub fn add_diagonal(&mut self, d: &[f64]) {
        for (row, v) in self.rows.iter_mut().zip(d) {
            row[2] += v;
        }
    }

    /// Multiply every row `i` by `s[i]`.
    pub fn scale_rows(&mut self, s: &[f64]) {
        for (row, v) in self.rows.iter_mut().zip(s) {
            row.iter_mut().for_each(|a| *a *= v);
        }
    }

    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        let n = self.rows.len();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0.0;
            for (k, a) in row.iter().enumerate() {
                let j = i as isize + k as isize - 2;
                if j >= 0 && (j as usize) < n {
                    acc += a * x[j as usize];
                }
            }
            out[i] = acc;
        }
    }

    /// LU factorisation without pivoting. Intended for matrices that are
    /// symmetric positive definite after a diagonal similarity, which is the
    /// case for every shifted Laplacian built in this workspace.
    pub fn factor(&self) -> Option<Band5Lu> {
        let n = self.rows.len();
        // Dense band storage: upper part u[i][0..3] = U(i, i..i+2), lower l[i][0..2] = L(i, i-2..i).
        let mut lo = vec![[0.0f64; 2]; n];
        let mut up = vec![[0.0f64; 3]; n];
        for i in 0..n {
            let a = self.rows[i];
            // L(i,i-2)
            let l2 = if i >= 2 { a[0] / up[i - 2][0] } else { 0.0 };
            // L(i,i-1)
            let l1 = if i >= 1 {
                let mut v = a[1];
                if i >= 2 {
                    v -= l2 * up[i - 2][1];
                }
                v / up[i - 1][0]
            } else {
                0.0
            };
            let mut d = a[2];
            if i >= 2 {
                d -= l2 * up[i - 2][2];
            }
            if i >= 1 {
                d -= l1 * up[i - 1][1];
            }
            let mut e1 = a[3];
            if i >= 1 {
                e1 -= l1 * up[i - 1][2];
            }
            let e2 = a[4];
            if !(d.is_finite() && d != 0.0) {
                return None;
            }
            lo[i] = [l2, l1];
            up[i] = [d, e1, e2];
        }
        Some(Band5Lu { lo, up })
    }
}

/// Factors produced by [`Band5::factor`].
#[derive(Debug, Clone)]
pub struct Band5Lu {
    lo: Vec<[f64; 2]>,
    up: Vec<[f64; 3]>,
}

impl Band5Lu {
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.up.len();
        for i in 0..n {
            let mut v = x[i];
            if i >= 1 {
                v -= self.lo[i][1] * x[i - 1];
            }
            if i >= 2 {
                v -= self.lo[i][0] * x[i - 2];
            }
            x[i] = v;
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            if i + 1 < n {
                v -= self.up[i][1] * x[i + 1];
            }
            if i + 2 < n {
                v -= self.up[i][2] * x[i + 2];
            }
            x[i] = v / self.up[i][0];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_diagonally_dominant_system() {
        let n = 12;
        let rows = (0..n).map(|i| [0.3, -1.0 - 0.1 * i as f64, 6.0, -0.7, 0.2]).collect();
        let m = Band5::from_rows(rows);
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut b = vec![0.0; n];
        m.apply(&x, &mut b);
        let y = m.factor().unwrap().solve(&b);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
