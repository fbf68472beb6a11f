//! Dense linear algebra over a prime field `F_p`, row-vector convention.

/// Arithmetic in `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        assert!(p >= 2 && p < 1 << 32, "field characteristic out of range");
        Fp { p }
    }

    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverting zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// `dst -= c * src`
    #[inline]
    pub fn axpy_neg(self, dst: &mut [u64], c: u64, src: &[u64]) {
        if c == 0 {
            return;
        }
        let m = self.p - c;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = (*d + m * s) % self.p;
            }
        }
    }

    pub fn scale(self, v: &mut [u64], c: u64) {
        for x in v {
            *x = *x * c % self.p;
        }
    }
}

/// A dense matrix over `F_p`, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: Fp,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { field, cols, rows: vec![vec![0; cols]; rows] }
    }

    pub fn identity(field: Fp, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = 1 % field.p();
        }
        m
    }

    pub fn from_rows(field: Fp, cols: usize, rows: Vec<Vec<u64>>) -> FpMatrix {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        FpMatrix { field, cols, rows }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u64>> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.rows[i][j] = x;
    }

    pub fn push_row(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                t.rows[j][i] = x;
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.nrows());
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.nrows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            let dst = &mut out.rows[i];
            for (k, &x) in r.iter().enumerate() {
                if x != 0 {
                    for (d, &y) in dst.iter_mut().zip(&other.rows[k]) {
                        *d = (*d + x * y) % f.p();
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.nrows());
        let f = self.field;
        let mut out = vec![0; self.cols];
        for (k, &x) in v.iter().enumerate() {
            if x != 0 {
                for (d, &y) in out.iter_mut().zip(&self.rows[k]) {
                    *d = (*d + x * y) % f.p();
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % f.p()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(k) = (r..self.rows.len()).find(|&k| self.rows[k][c] != 0) else { continue };
            self.rows.swap(r, k);
            let inv = f.inv(self.rows[r][c]);
            f.scale(&mut self.rows[r], inv);
            let pivot_row = std::mem::take(&mut self.rows[r]);
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let coef = row[c];
                    f.axpy_neg(row, coef, &pivot_row);
                }
            }
            self.rows[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r.max(pivots.len()));
        self.rows.retain(|row| row.iter().any(|&x| x != 0));
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn right_kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (row, &pc) in m.rows.iter().zip(&pivots) {
                    v[pc] = f.neg(row[free]);
                }
                v
            })
            .collect()
    }

    /// Basis of `{x : x M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<u64>> {
        self.transpose().right_kernel()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> u64 {
        assert_eq!(self.nrows(), self.cols);
        let f = self.field;
        let mut m = self.rows.clone();
        let n = self.cols;
        let mut det = 1 % f.p();
        for c in 0..n {
            let Some(k) = (c..n).find(|&k| m[k][c] != 0) else { return 0 };
            if k != c {
                m.swap(k, c);
                det = f.neg(det);
            }
            det = f.mul(det, m[c][c]);
            let inv = f.inv(m[c][c]);
            let (top, bottom) = m.split_at_mut(c + 1);
            let pivot = &top[c];
            for row in bottom {
                if row[c] != 0 {
                    let coef = f.mul(row[c], inv);
                    f.axpy_neg(row, coef, pivot);
                }
            }
        }
        det
    }
}

/// A subspace of `F_p^n` kept as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Fp,
    dim_ambient: usize,
    /// (pivot column, row) with row[pivot] = 1 and zeros at every other pivot column
    basis: Vec<(usize, Vec<u64>)>,
}

impl Subspace {
    pub fn new(field: Fp, dim_ambient: usize) -> Subspace {
        Subspace { field, dim_ambient, basis: Vec::new() }
    }

    pub fn spanned_by(field: Fp, dim_ambient: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> Subspace {
        let mut s = Subspace::new(field, dim_ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.basis.iter().map(|(_, r)| r.as_slice())
    }

    pub fn basis_vecs(&self) -> Vec<Vec<u64>> {
        let mut b: Vec<_> = self.basis.clone();
        b.sort_by_key(|(c, _)| *c);
        b.into_iter().map(|(_, r)| r).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.basis.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &mut [u64]) {
        for (c, row) in &self.basis {
            let coef = v[*c];
            if coef != 0 {
                self.field.axpy_neg(v, coef, row);
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim_ambient);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let f = self.field;
        let inv = f.inv(v[c]);
        f.scale(&mut v, inv);
        for (_, row) in &mut self.basis {
            let coef = row[c];
            if coef != 0 {
                f.axpy_neg(row, coef, &v);
            }
        }
        self.basis.push((c, v));
        true
    }

    /// Coordinates of `v` in terms of `basis_vecs()`, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut sorted: Vec<&(usize, Vec<u64>)> = self.basis.iter().collect();
        sorted.sort_by_key(|(c, _)| *c);
        let coords: Vec<u64> = sorted.iter().map(|(c, _)| v[*c]).collect();
        let mut w = v.to_vec();
        for ((_, row), &k) in sorted.iter().zip(&coords) {
            self.field.axpy_neg(&mut w, k, row);
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_and_rank() {
        let f = Fp::new(5);
        let m = FpMatrix::from_rows(f, 3, vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]]);
        let k = m.left_kernel();
        assert_eq!(m.rank() + k.len(), 3);
        for v in &k {
            assert!(m.apply_row(v).iter().all(|&x| x == 0));
        }
        for v in m.right_kernel() {
            assert!(m.apply_col(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let f = Fp::new(7);
        let m = FpMatrix::from_rows(f, 3, vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det(), 0);
        let m = FpMatrix::from_rows(f, 2, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det(), f.reduce(-2));
    }

    #[test]
    fn subspace_coordinates() {
        let f = Fp::new(3);
        let s = Subspace::spanned_by(f, 3, [vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        assert_eq!(s.dim(), 2);
        let v = vec![2, 0, 1];
        let c = s.coordinates(&v).unwrap();
        let b = s.basis_vecs();
        let mut w = vec![0; 3];
        for (k, row) in c.iter().zip(&b) {
            for (x, y) in w.iter_mut().zip(row) {
                *x = (*x + k * y) % 3;
            }
        }
        assert_eq!(w, v);
        assert!(s.coordinates(&[1, 0, 0]).is_none());
    }
}
