//! Finite-rank algebras given by structure constants, and bilinear forms on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{consistency_err, input_err, Result};
use crate::grpcore::is_prime;
use crate::linalg::int::{self, Int};
use crate::linalg::{Fp, FpMatrix, Subspace};

/// Coefficients for algebras and forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
    IntegersModN(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<CoefficientRing> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(input_err!("{p} is not prime"))
        }
    }

    /// `Z` for `None`, `F_p` otherwise.
    pub fn from_modulus(p: Option<u64>) -> Result<CoefficientRing> {
        p.map_or(Ok(CoefficientRing::Integers), CoefficientRing::prime_field)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::PrimeField(p) | CoefficientRing::IntegersModN(p) => p,
        }
    }

    pub fn field(self) -> Option<Fp> {
        match self {
            CoefficientRing::PrimeField(p) => Some(Fp::new(p)),
            _ => None,
        }
    }

    #[inline]
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            CoefficientRing::Integers => x,
            CoefficientRing::PrimeField(p) | CoefficientRing::IntegersModN(p) => x.rem_euclid(p as i64),
        }
    }

    pub fn is_unit(self, x: &Int) -> bool {
        match self {
            CoefficientRing::Integers => *x == int::int(1) || *x == int::int(-1),
            CoefficientRing::PrimeField(p) => int::mod_u64(x, p) != 0,
            CoefficientRing::IntegersModN(n) => int::gcd(&int::int(int::mod_u64(x, n) as i64), &int::int(n as i64)) == int::int(1),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "F_{p}"),
            CoefficientRing::IntegersModN(n) => write!(f, "Z/{n}"),
        }
    }
}

/// A sparse vector of (basis index, coefficient) pairs, sorted by index, no zero coefficients.
pub type SparseVec = Vec<(usize, i64)>;

/// A free algebra of finite rank over a [`CoefficientRing`], given by a labelled basis
/// and the products of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuredAlgebra {
    ring: CoefficientRing,
    labels: Vec<String>,
    unit: Vec<i64>,
    /// `products[i * n + j]` is `b_i · b_j`
    products: Vec<SparseVec>,
    /// Basis elements that are orthogonal idempotents summing to the unit, when known.
    idempotents: Vec<usize>,
}

impl StructuredAlgebra {
    /// Builds an algebra and checks the unit law and associativity on all basis triples.
    pub fn new(
        ring: CoefficientRing,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        unit: Vec<i64>,
    ) -> Result<StructuredAlgebra> {
        let alg = StructuredAlgebra::new_unchecked(ring, labels, products, unit)?;
        alg.verify()?;
        Ok(alg)
    }

    /// Builds an algebra, checking only the shape of the data.
    pub fn new_unchecked(
        ring: CoefficientRing,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        unit: Vec<i64>,
    ) -> Result<StructuredAlgebra> {
        let n = labels.len();
        if products.len() != n * n || unit.len() != n {
            return Err(input_err!("structure constants do not match a basis of size {n}"));
        }
        let products = products.into_iter().map(|v| normalize(ring, v)).collect::<Vec<_>>();
        if products.iter().flatten().any(|&(k, _)| k >= n) {
            return Err(input_err!("structure constant refers to a basis index out of range"));
        }
        let unit = unit.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(StructuredAlgebra { ring, labels, unit, products, idempotents: Vec::new() })
    }

    pub fn with_idempotents(mut self, idempotents: Vec<usize>) -> StructuredAlgebra {
        self.idempotents = idempotents;
        self
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    /// `x · y` for arbitrary elements given in coordinates.
    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut acc = vec![0i128; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for &(k, c) in self.product(i, j) {
                    acc[k] += a as i128 * b as i128 * c as i128;
                }
            }
        }
        acc.into_iter()
            .map(|v| match self.ring {
                CoefficientRing::Integers => i64::try_from(v).expect("integer algebra coefficient overflow"),
                r => v.rem_euclid(r.characteristic() as i128) as i64,
            })
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| self.ring.reduce(a + b)).collect()
    }

    pub fn scale(&self, c: i64, x: &[i64]) -> Vec<i64> {
        x.iter().map(|a| self.ring.reduce(c * a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Checks the two-sided unit law and associativity on every basis triple.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(consistency_err!("unit is not neutral on basis element {}", self.labels[i]));
            }
        }
        if let Some((i, j, k)) = self.associativity_failure() {
            return Err(consistency_err!(
                "associativity fails on ({}, {}, {})",
                self.labels[i],
                self.labels[j],
                self.labels[k]
            ));
        }
        Ok(())
    }

    /// First basis triple `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let jk = self.product(j, k);
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    let mut left = vec![0i64; n];
                    for &(m, c) in ij {
                        for &(t, d) in self.product(m, k) {
                            left[t] += c * d;
                        }
                    }
                    let mut right = vec![0i64; n];
                    for &(m, c) in jk {
                        for &(t, d) in self.product(i, m) {
                            right[t] += c * d;
                        }
                    }
                    if left.iter().zip(&right).any(|(&a, &b)| self.ring.reduce(a - b) != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Base change to `F_p` (or `Z/n`): same basis, structure constants reduced.
    pub fn reduce_mod(&self, ring: CoefficientRing) -> StructuredAlgebra {
        let mut out = StructuredAlgebra::new_unchecked(ring, self.labels.clone(), self.products.clone(), self.unit.clone())
            .expect("same shape");
        out.idempotents = self.idempotents.clone();
        out
    }

    /// Matrix of left multiplication by `x` over `F_p`, acting on column vectors:
    /// entry `(k, j)` is the coefficient of `b_k` in `x · b_j`.
    pub fn left_mult_matrix(&self, x: &[i64]) -> FpMatrix {
        let f = self.ring.field().expect("left_mult_matrix needs a prime field");
        let n = self.dim();
        let mut m = FpMatrix::zeros(f, n, n);
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..n {
                for &(k, c) in self.product(i, j) {
                    let v = f.add(m.get(k, j), f.mul(f.reduce(a), f.reduce(c)));
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    /// Coordinates of `x` as field elements.
    pub fn to_fp(&self, x: &[i64]) -> Vec<u64> {
        let f = self.ring.field().expect("prime field");
        x.iter().map(|&a| f.reduce(a)).collect()
    }

    pub fn from_fp(&self, x: &[u64]) -> Vec<i64> {
        x.iter().map(|&a| a as i64).collect()
    }

    /// Product of two subspaces as a subspace: span of all `u · v`.
    pub fn subspace_product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let f = self.ring.field().expect("prime field");
        let mut out = Subspace::new(f, self.dim());
        for u in a.basis() {
            let u = self.from_fp(u);
            for v in b.basis() {
                out.insert(self.to_fp(&self.mul(&u, &self.from_fp(v))));
            }
        }
        out
    }

    /// Whether a subspace is a two-sided ideal.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_vector(i);
            s.basis().all(|v| {
                let v = self.from_fp(v);
                s.contains(&self.to_fp(&self.mul(&b, &v))) && s.contains(&self.to_fp(&self.mul(&v, &b)))
            })
        })
    }

    /// Quotient by a two-sided ideal over `F_p`.
    ///
    /// The quotient basis consists of the images of the standard basis vectors at the
    /// non-pivot positions of the ideal's echelon basis.
    pub fn quotient(&self, ideal: &Subspace) -> StructuredAlgebra {
        let pivots = ideal.pivots();
        let keep: Vec<usize> = (0..self.dim()).filter(|c| pivots.binary_search(c).is_err()).collect();
        let project = |v: Vec<i64>| -> Vec<i64> {
            let mut w = self.to_fp(&v);
            ideal.reduce(&mut w);
            keep.iter().map(|&c| w[c] as i64).collect()
        };
        let mut products = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                let v = project(self.mul(&self.basis_vector(i), &self.basis_vector(j)));
                products.push(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect());
            }
        }
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        StructuredAlgebra::new_unchecked(self.ring, labels, products, project(self.unit.clone())).expect("same shape")
    }
}

fn normalize(ring: CoefficientRing, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|&(k, _)| k);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((k0, c0)) if *k0 == k => *c0 += c,
            _ => out.push((k, c)),
        }
    }
    out.into_iter().map(|(k, c)| (k, ring.reduce(c))).filter(|&(_, c)| c != 0).collect()
}

/// A bilinear form recorded by its Gram matrix in the basis of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramForm {
    ring: CoefficientRing,
    gram: Vec<Vec<i64>>,
}

/// Which of the three properties a form has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormCertificate {
    pub symmetric: bool,
    pub associative: bool,
    pub nondegenerate: bool,
}

impl FormCertificate {
    pub fn all(&self) -> bool {
        self.symmetric && self.associative && self.nondegenerate
    }
}

impl GramForm {
    pub fn new(ring: CoefficientRing, gram: Vec<Vec<i64>>) -> Result<GramForm> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(input_err!("Gram matrix must be square"));
        }
        let gram = gram.into_iter().map(|r| r.into_iter().map(|x| ring.reduce(x)).collect()).collect();
        Ok(GramForm { ring, gram })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn eval(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                acc += a as i128 * self.gram[i][j] as i128 * b as i128;
            }
        }
        match self.ring {
            CoefficientRing::Integers => i64::try_from(acc).expect("form value overflow"),
            r => acc.rem_euclid(r.characteristic() as i128) as i64,
        }
    }

    pub fn reduce_mod(&self, ring: CoefficientRing) -> GramForm {
        GramForm::new(ring, self.gram.clone()).expect("square")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    /// `β(b_i, b_j b_k) = β(b_i b_j, b_k)` on every basis triple.
    pub fn is_associative(&self, alg: &StructuredAlgebra) -> bool {
        let n = self.dim();
        if alg.dim() != n {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let lhs: i64 = alg.product(j, k).iter().map(|&(m, c)| c * self.gram[i][m]).sum();
                    let rhs: i64 = alg.product(i, j).iter().map(|&(m, c)| c * self.gram[m][k]).sum();
                    self.ring.reduce(lhs - rhs) == 0
                })
            })
        })
    }

    pub fn determinant(&self) -> Int {
        let rows: Vec<Vec<Int>> = self.gram.iter().map(|r| int::to_ints(r)).collect();
        let d = int::det(&rows);
        match self.ring {
            CoefficientRing::Integers => d,
            r => int::int(int::mod_u64(&d, r.characteristic()) as i64),
        }
    }

    /// Nondegenerate means the determinant is a unit of the coefficient ring
    /// (±1 over `Z`, non-zero over `F_p`).
    pub fn is_nondegenerate(&self) -> bool {
        self.ring.is_unit(&self.determinant())
    }

    pub fn certificate(&self, alg: &StructuredAlgebra) -> FormCertificate {
        FormCertificate {
            symmetric: self.is_symmetric(),
            associative: self.is_associative(alg),
            nondegenerate: self.is_nondegenerate(),
        }
    }
}
