use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{CoefficientRing, GramForm, StructuredAlgebra};
use crate::error::{input_err, resource_err, Result};
use crate::linalg::int::{self, Int};
use crate::linalg::{Fp, FpMatrix, Subspace};

/// Largest algebra dimension for which the form space is solved.
pub const FORM_SPACE_DIM_CAP: usize = 24;
/// Largest number of candidate forms tried exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIES: usize = 4096;
const CERTIFYING_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Outcome of a search that may not be able to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

/// Symmetric associative bilinear forms on an algebra, and whether one is nondegenerate.
#[derive(Clone, Debug, Serialize)]
pub struct FormSpace {
    pub ring: CoefficientRing,
    /// Gram matrices spanning the solutions (a lattice basis over `Z`)
    pub basis: Vec<Vec<Vec<i64>>>,
    pub exists_nondegenerate: Decision,
    pub witness: Option<GramForm>,
    /// how the decision was reached
    pub method: String,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether a Gram matrix is a solution (lies in the span or lattice).
    pub fn contains(&self, gram: &[Vec<i64>]) -> bool {
        let n = gram.len();
        let flat = |g: &[Vec<i64>]| -> Vec<i64> { (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| g[i][j]).collect() };
        match self.ring.field() {
            Some(f) => {
                let s = Subspace::spanned_by(f, n * (n + 1) / 2, self.basis.iter().map(|b| reduce(f, &flat(b))));
                s.contains(&reduce(f, &flat(gram)))
            }
            None => {
                let l = int::Lattice::spanned_by(n * (n + 1) / 2, self.basis.iter().map(|b| int::to_ints(&flat(b))));
                l.contains(&int::to_ints(&flat(gram)))
            }
        }
    }
}

fn reduce(f: Fp, v: &[i64]) -> Vec<u64> {
    v.iter().map(|&x| f.reduce(x)).collect()
}

/// Unknown index of the symmetric Gram entry `(i, j)`.
fn slot(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

fn gram_from_slots(n: usize, v: &[i64]) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| v[slot(n, i, j)]).collect()).collect()
}

/// Linear equations `β(b_i b_j, b_k) = β(b_i, b_j b_k)` on the symmetric unknowns, deduplicated.
fn equations(alg: &StructuredAlgebra) -> Vec<Vec<i64>> {
    let n = alg.dim();
    let m = n * (n + 1) / 2;
    let mut out = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![0i64; m];
                for &(t, c) in alg.product(i, j) {
                    row[slot(n, t, k)] += c;
                }
                for &(t, c) in alg.product(j, k) {
                    row[slot(n, i, t)] -= c;
                }
                if row.iter().any(|&x| alg.ring().reduce(x) != 0) {
                    out.insert(row);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Solves for all symmetric associative forms and searches the solutions for a nondegenerate one.
///
/// Over `F_p` the search is exhaustive when the solution space has at most `2^16` elements and
/// randomized (seeded) otherwise. Over `Z` a unimodular witness is sought among forms
/// `λ(xy)` for small functionals `λ` and among small combinations of the lattice basis;
/// nonexistence is certified when the reduction of the lattice mod some small prime has no
/// nondegenerate member. Anything else is reported as inconclusive.
pub fn symmetric_form_space(alg: &StructuredAlgebra) -> Result<FormSpace> {
    let n = alg.dim();
    if n > FORM_SPACE_DIM_CAP {
        return Err(resource_err!("form space of a {n}-dimensional algebra exceeds the cap {FORM_SPACE_DIM_CAP}"));
    }
    let m = n * (n + 1) / 2;
    let eqs = equations(alg);
    match alg.ring() {
        CoefficientRing::PrimeField(p) => {
            let f = Fp::new(p);
            let rows: Vec<Vec<u64>> = eqs.iter().map(|r| reduce(f, r)).collect();
            let kernel = if rows.is_empty() {
                (0..m).map(|i| unit_u(m, i)).collect()
            } else {
                FpMatrix::from_rows(f, m, rows).right_kernel()
            };
            let basis: Vec<Vec<i64>> = kernel.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
            let (decision, witness, method) = search_fp(f, n, &basis);
            Ok(FormSpace {
                ring: alg.ring(),
                basis: basis.iter().map(|v| gram_from_slots(n, v)).collect(),
                exists_nondegenerate: decision,
                witness: witness.map(|w| GramForm::new(alg.ring(), gram_from_slots(n, &w)).expect("square")),
                method,
            })
        }
        CoefficientRing::Integers => {
            // x with E x = 0 is the left kernel of E^T
            let transposed: Vec<Vec<Int>> = (0..m).map(|c| eqs.iter().map(|r| int::int(r[c])).collect()).collect();
            let lattice: Vec<Vec<i64>> = if eqs.is_empty() {
                (0..m).map(|i| unit_i(m, i)).collect()
            } else {
                int::left_kernel(&transposed, eqs.len())
                    .iter()
                    .map(|v| v.iter().map(|x| int::to_i64(x).ok_or_else(|| resource_err!("form lattice entry overflow"))).collect())
                    .collect::<Result<_>>()?
            };
            let grams: Vec<Vec<Vec<i64>>> = lattice.iter().map(|v| gram_from_slots(n, v)).collect();
            let mut space = FormSpace {
                ring: alg.ring(),
                basis: grams,
                exists_nondegenerate: Decision::Inconclusive,
                witness: None,
                method: "no unimodular witness found and no small prime certifies absence".into(),
            };
            if let Some(w) = search_z(alg, &space, &lattice) {
                space.exists_nondegenerate = Decision::Yes;
                space.witness = Some(w.0);
                space.method = w.1;
            } else if let Some(p) = certify_absence(n, &lattice) {
                space.exists_nondegenerate = Decision::No;
                space.method = format!("no nondegenerate form in the reduction mod {p}");
            }
            Ok(space)
        }
        CoefficientRing::IntegersModN(k) => Err(input_err!("forms over Z/{k} are not supported")),
    }
}

fn unit_u(m: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn unit_i(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64], m: usize) -> Vec<i64> {
    let mut v = vec![0i64; m];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
    }
    v
}

fn fp_det(f: Fp, n: usize, v: &[i64]) -> u64 {
    let g = gram_from_slots(n, v);
    FpMatrix::from_rows(f, n, g.iter().map(|r| reduce(f, r)).collect()).det()
}

fn search_fp(f: Fp, n: usize, basis: &[Vec<i64>]) -> (Decision, Option<Vec<i64>>, String) {
    let p = f.p();
    let d = basis.len();
    let m = n * (n + 1) / 2;
    if d == 0 {
        return (Decision::No, None, "only the zero form".into());
    }
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total <= EXHAUSTIVE_LIMIT as u128 {
        let mut coeffs = vec![0i64; d];
        for _ in 1..total as u64 {
            // next tuple in base p
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c == p as i64 {
                    *c = 0;
                } else {
                    break;
                }
            }
            let v: Vec<i64> = combine(basis, &coeffs, m).iter().map(|&x| f.reduce(x) as i64).collect();
            if fp_det(f, n, &v) != 0 {
                return (Decision::Yes, Some(v), "exhaustive search".into());
            }
        }
        return (Decision::No, None, format!("exhaustive search over all {total} forms"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p) as i64).collect();
        let v: Vec<i64> = combine(basis, &coeffs, m).iter().map(|&x| f.reduce(x) as i64).collect();
        if fp_det(f, n, &v) != 0 {
            return (Decision::Yes, Some(v), "seeded random search".into());
        }
    }
    (Decision::Inconclusive, None, format!("no nondegenerate form among {RANDOM_TRIES} random samples"))
}

fn is_unimodular(gram: &[Vec<i64>]) -> bool {
    let d = int::det(&gram.iter().map(|r| int::to_ints(r)).collect::<Vec<_>>());
    d == int::int(1) || d == int::int(-1)
}

/// `λ(xy)` as a Gram matrix.
fn functional_form(alg: &StructuredAlgebra, lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = alg.dim();
    (0..n).map(|i| (0..n).map(|j| alg.product(i, j).iter().map(|&(k, c)| c * lambda[k]).sum()).collect()).collect()
}

fn search_z(alg: &StructuredAlgebra, space: &FormSpace, lattice: &[Vec<i64>]) -> Option<(GramForm, String)> {
    let n = alg.dim();
    let m = n * (n + 1) / 2;
    let ring = CoefficientRing::Integers;
    // functionals with support of size one or two and entries ±1
    let mut lambdas: Vec<Vec<i64>> = Vec::new();
    for a in 0..n {
        lambdas.push(unit_i(n, a));
        for b in a + 1..n {
            for s in [1, -1] {
                let mut l = unit_i(n, a);
                l[b] = s;
                lambdas.push(l);
            }
        }
    }
    for l in &lambdas {
        let g = functional_form(alg, l);
        if is_unimodular(&g) && space.contains(&g) {
            return Some((GramForm::new(ring, g).expect("square"), format!("unimodular form λ(xy) with λ = {l:?}")));
        }
    }
    let d = lattice.len();
    let total = 3u64.checked_pow(d as u32).unwrap_or(u64::MAX);
    if total <= EXHAUSTIVE_LIMIT {
        let mut coeffs = vec![-1i64; d];
        for _ in 0..total {
            let v = combine(lattice, &coeffs, m);
            let g = gram_from_slots(n, &v);
            if is_unimodular(&g) {
                return Some((GramForm::new(ring, g).expect("square"), "unimodular lattice combination".into()));
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c == 2 {
                    *c = -1;
                } else {
                    break;
                }
            }
        }
    }
    None
}

/// A small prime modulo which no member of the lattice is nondegenerate, if one exists.
fn certify_absence(n: usize, lattice: &[Vec<i64>]) -> Option<u64> {
    let m = n * (n + 1) / 2;
    CERTIFYING_PRIMES.into_iter().find(|&p| {
        let f = Fp::new(p);
        let image = Subspace::spanned_by(f, m, lattice.iter().map(|v| reduce(f, v)));
        let basis: Vec<Vec<i64>> = image.basis_vecs().iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        let total = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
        total <= EXHAUSTIVE_LIMIT as u128 && search_fp(f, n, &basis).0 == Decision::No
    })
}

/// Whether the unit map `R → A` has an `R`-linear retraction: the unit's coordinates have content 1.
pub fn unit_retraction_exists(alg: &StructuredAlgebra) -> bool {
    let content = alg.unit().iter().fold(int::int(0), |g, &x| int::gcd(&g, &int::int(x)));
    alg.ring().is_unit(&content)
}

/// Whether `x ↦ β(-, x)` is a bimodule map `A → A*`: `β(y, a x b) = β(b y a, x)` on basis elements.
pub fn sigma_is_bimodule_map(alg: &StructuredAlgebra, form: &GramForm) -> bool {
    let n = alg.dim();
    let ring = alg.ring();
    (0..n).all(|a| {
        (0..n).all(|x| {
            (0..n).all(|b| {
                let axb = alg.mul(&alg.mul(&alg.basis_vector(a), &alg.basis_vector(x)), &alg.basis_vector(b));
                (0..n).all(|y| {
                    let bya = alg.mul(&alg.mul(&alg.basis_vector(b), &alg.basis_vector(y)), &alg.basis_vector(a));
                    ring.reduce(form.eval(&alg.basis_vector(y), &axb) - form.eval(&bya, &alg.basis_vector(x))) == 0
                })
            })
        })
    })
}
