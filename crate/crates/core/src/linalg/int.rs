//! Exact integer linear algebra: echelon lattices, integer kernels, Smith invariants.
//!
//! Everything runs on arbitrary-precision integers; there is no floating point anywhere.

use dashu_int::IBig;

pub type Int = IBig;

#[inline]
pub fn int(x: i64) -> Int {
    IBig::from(x)
}

#[inline]
fn is_zero(x: &Int) -> bool {
    *x == IBig::ZERO
}

#[inline]
fn is_neg(x: &Int) -> bool {
    *x < IBig::ZERO
}

fn abs(x: &Int) -> Int {
    if is_neg(x) {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Floor division.
fn div_floor(a: &Int, b: &Int) -> Int {
    let q = a / b;
    let r = a - &q * b;
    if !is_zero(&r) && (is_neg(&r) != is_neg(b)) {
        q - IBig::ONE
    } else {
        q
    }
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let (mut a, mut b) = (abs(a), abs(b));
    while !is_zero(&b) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Returns `(g, s, t)` with `s a + t b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (IBig::ONE, IBig::ZERO);
    let (mut t0, mut t1) = (IBig::ZERO, IBig::ONE);
    while !is_zero(&r1) {
        let q = div_floor(&r0, &r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if is_neg(&r0) {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `dst -= c * src`
fn sub_scaled(dst: &mut [Int], c: &Int, src: &[Int]) {
    if is_zero(c) {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !is_zero(s) {
            *d -= c * s;
        }
    }
}

fn first_nonzero(v: &[Int]) -> Option<usize> {
    v.iter().position(|x| !is_zero(x))
}

/// A sublattice of `Z^n` kept in row echelon form with positive pivots.
#[derive(Clone, Debug, Default)]
pub struct Lattice {
    dim_ambient: usize,
    /// rows sorted by strictly increasing pivot column
    rows: Vec<(usize, Vec<Int>)>,
}

impl Lattice {
    pub fn new(dim_ambient: usize) -> Lattice {
        Lattice { dim_ambient, rows: Vec::new() }
    }

    pub fn spanned_by(dim_ambient: usize, vectors: impl IntoIterator<Item = Vec<Int>>) -> Lattice {
        let mut l = Lattice::new(dim_ambient);
        for v in vectors {
            l.insert(v);
        }
        l.reduce_above_pivots();
        l
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> Vec<Vec<Int>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Adds `v` to the generating set; returns whether the lattice changed.
    pub fn insert(&mut self, mut v: Vec<Int>) -> bool {
        debug_assert_eq!(v.len(), self.dim_ambient);
        let mut changed = false;
        let mut i = 0;
        loop {
            let Some(lead) = first_nonzero(&v) else { return changed };
            if i == self.rows.len() || lead < self.rows[i].0 {
                if is_neg(&v[lead]) {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(i, (lead, v));
                return true;
            }
            let pc = self.rows[i].0;
            if lead > pc {
                i += 1;
                continue;
            }
            let row = &mut self.rows[i].1;
            let (a, b) = (row[pc].clone(), v[pc].clone());
            if is_zero(&(&b % &a)) {
                sub_scaled(&mut v, &(&b / &a), row);
            } else {
                let (g, s, t) = ext_gcd(&a, &b);
                let (ag, bg) = (&a / &g, &b / &g);
                let new_row: Vec<Int> = row.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                let new_v: Vec<Int> = row.iter().zip(&v).map(|(x, y)| &ag * y - &bg * x).collect();
                *row = new_row;
                v = new_v;
                changed = true;
            }
            i += 1;
        }
    }

    /// Whether `v` lies in the lattice.
    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` with respect to `basis()`.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (pc, row) in &self.rows {
            if let Some(lead) = first_nonzero(&w) {
                if lead < *pc {
                    return None;
                }
            }
            let a = &row[*pc];
            if !is_zero(&(&w[*pc] % a)) {
                return None;
            }
            let q = &w[*pc] / a;
            sub_scaled(&mut w, &q, row);
            coords.push(q);
        }
        first_nonzero(&w).is_none().then_some(coords)
    }

    /// Brings entries above each pivot into `[0, pivot)`.
    pub fn reduce_above_pivots(&mut self) {
        for i in 0..self.rows.len() {
            let (pc, pivot_row) = {
                let (c, r) = &self.rows[i];
                (*c, r.clone())
            };
            for (_, row) in self.rows[..i].iter_mut() {
                let q = div_floor(&row[pc], &pivot_row[pc]);
                sub_scaled(row, &q, &pivot_row);
            }
        }
    }

    /// Index of the lattice inside `Z^n` when it has full rank.
    pub fn index_in_ambient(&self) -> Option<Int> {
        (self.rank() == self.dim_ambient).then(|| self.rows.iter().fold(IBig::ONE, |acc, (c, r)| acc * &r[*c]))
    }
}

/// Basis of the integer left kernel `{x ∈ Z^m : x M = 0}` of an `m × n` matrix given by rows.
///
/// The returned lattice is saturated (it is the full kernel, not a finite-index sublattice).
pub fn left_kernel(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let m = rows.len();
    // Each working row carries its image part (length ncols) followed by its transform part (length m).
    let mut work: Vec<Vec<Int>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut w = r.clone();
            w.extend((0..m).map(|j| if i == j { IBig::ONE } else { IBig::ZERO }));
            w
        })
        .collect();
    let mut done = 0;
    for c in 0..ncols {
        loop {
            // smallest non-zero |entry| in column c among the unfinished rows
            let mut best: Option<usize> = None;
            for k in done..work.len() {
                if !is_zero(&work[k][c]) && best.map_or(true, |b| abs(&work[k][c]) < abs(&work[b][c])) {
                    best = Some(k);
                }
            }
            let Some(b) = best else { break };
            work.swap(done, b);
            let (head, tail) = work.split_at_mut(done + 1);
            let pivot = &head[done];
            let mut others = false;
            for row in tail.iter_mut() {
                if !is_zero(&row[c]) {
                    let q = div_floor(&row[c], &pivot[c]);
                    sub_scaled(row, &q, pivot);
                    others |= !is_zero(&row[c]);
                }
            }
            if !others {
                done += 1;
                break;
            }
        }
    }
    let kernel: Vec<Vec<Int>> = work[done..].iter().map(|w| w[ncols..].to_vec()).collect();
    // Echelonize for smaller, reproducible entries.
    Lattice::spanned_by(m, kernel).basis()
}

/// Invariant factors `d_1 | d_2 | ...` (non-zero only) of an integer matrix.
pub fn smith_invariants(rows: &[Vec<Int>], ncols: usize) -> Vec<Int> {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: smallest non-zero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !is_zero(&a[i][j]) && best.map_or(true, |(bi, bj)| abs(&a[i][j]) < abs(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            let p = a[t][t].clone();
            for i in t + 1..nrows {
                if !is_zero(&a[i][t]) {
                    let q = div_floor(&a[i][t], &p);
                    let (head, tail) = a.split_at_mut(i);
                    sub_scaled(&mut tail[0], &q, &head[t]);
                    dirty |= !is_zero(&a[i][t]);
                }
            }
            for j in t + 1..ncols {
                if !is_zero(&a[t][j]) {
                    let q = div_floor(&a[t][j], &p);
                    for row in a.iter_mut() {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    dirty |= !is_zero(&a[t][j]);
                }
            }
            if !dirty {
                // enforce divisibility of the remaining block by the pivot
                let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !is_zero(&(&a[i][j] % &p))));
                match bad {
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        let src = tail[0].clone();
                        for (d, s) in head[t].iter_mut().zip(&src) {
                            *d += s;
                        }
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t onto the diagonal
            let mut best = (t, t);
            for i in t..nrows {
                if !is_zero(&a[i][t]) && abs(&a[i][t]) < abs(&a[best.0][best.1]) {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !is_zero(&a[t][j]) && abs(&a[t][j]) < abs(&a[best.0][best.1]) {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(abs(&a[t][t]));
        t += 1;
    }
    diag.sort();
    diag
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(rows: &[Vec<Int>]) -> Int {
    let n = rows.len();
    if n == 0 {
        return IBig::ONE;
    }
    let mut a = rows.to_vec();
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..n - 1 {
        if is_zero(&a[k][k]) {
            let Some(s) = (k + 1..n).find(|&i| !is_zero(&a[i][k])) else { return IBig::ZERO };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn to_ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x).ok()
}

/// Reduction of an integer into `[0, p)`.
pub fn mod_u64(x: &Int, p: u64) -> u64 {
    let r = x % &IBig::from(p);
    let r = if is_neg(&r) { r + IBig::from(p) } else { r };
    u64::try_from(&r).expect("residue fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| to_ints(r)).collect()
    }

    #[test]
    fn gcd_basics() {
        let (g, s, t) = ext_gcd(&int(240), &int(46));
        assert_eq!(g, int(2));
        assert_eq!(s * int(240) + t * int(46), int(2));
        let (g, s, t) = ext_gcd(&int(-6), &int(4));
        assert_eq!(g, int(2));
        assert_eq!(s * int(-6) + t * int(4), int(2));
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::spanned_by(2, m(&[&[2, 0], &[0, 3], &[1, 1]]));
        assert_eq!(l.rank(), 2);
        assert_eq!(l.index_in_ambient(), Some(int(1)));
        let l = Lattice::spanned_by(3, m(&[&[2, 4, 0], &[0, 6, 3]]));
        assert!(l.contains(&to_ints(&[2, 10, 3])));
        assert!(!l.contains(&to_ints(&[1, 2, 0])));
        assert!(!l.contains(&to_ints(&[0, 0, 1])));
        let c = l.coordinates(&to_ints(&[4, 2, -3])).unwrap();
        let b = l.basis();
        let rebuilt: Vec<Int> = (0..3).map(|j| &c[0] * &b[0][j] + &c[1] * &b[1][j]).collect();
        assert_eq!(rebuilt, to_ints(&[4, 2, -3]));
    }

    #[test]
    fn kernel_is_saturated() {
        // x (2, 4) = 0 has kernel spanned by (2, -1), not 2*(2, -1)
        let k = left_kernel(&m(&[&[2], &[4]]), 1);
        assert_eq!(k.len(), 1);
        assert!(k[0] == to_ints(&[2, -1]) || k[0] == to_ints(&[-2, 1]));
        let rows = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[2, 4, 6]]);
        let k = left_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for j in 0..3 {
                let s = (0..4).fold(int(0), |acc, i| acc + &v[i] * &rows[i][j]);
                assert_eq!(s, int(0));
            }
        }
    }

    #[test]
    fn smith_and_det() {
        assert_eq!(smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3), to_ints(&[2, 6, 12]));
        assert_eq!(smith_invariants(&m(&[&[2, 0], &[0, 3]]), 2), to_ints(&[1, 6]));
        assert_eq!(smith_invariants(&m(&[&[0, 0]]), 2), Vec::<Int>::new());
        assert_eq!(det(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), int(-144));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(det(&m(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 4]])), int(0));
        assert_eq!(mod_u64(&int(-3), 5), 2);
    }
}
