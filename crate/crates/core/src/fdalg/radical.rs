use crate::algebra::StructuredAlgebra;
use crate::error::{consistency_err, input_err, Result};
use crate::linalg::{Fp, FpMatrix, Subspace};

/// The Jacobson radical of a finite-dimensional algebra over `F_p`.
///
/// Uses the iterated trace-form method for positive characteristic on the left regular
/// representation: with `I_{-1} = A`,
/// `I_i = {x ∈ I_{i-1} : g_i(x b) = 0 for all b}` where `g_i(a) = Tr(ã^{p^i}) / p^i mod p`
/// for an integer lift `ã` of the matrix of `a`. The chain stops at `i = ⌊log_p n⌋`.
/// The result is checked to be a nilpotent ideal with radical-free quotient.
pub fn radical(alg: &StructuredAlgebra) -> Result<Subspace> {
    let j = radical_unchecked(alg)?;
    if !alg.is_ideal(&j) {
        return Err(consistency_err!("computed radical is not a two-sided ideal"));
    }
    if nilpotency_index(alg, &j).is_none() {
        return Err(consistency_err!("computed radical is not nilpotent"));
    }
    if j.dim() < alg.dim() && radical_unchecked(&alg.quotient(&j))?.dim() != 0 {
        return Err(consistency_err!("quotient by the computed radical is not semisimple"));
    }
    Ok(j)
}

fn field_of(alg: &StructuredAlgebra) -> Result<Fp> {
    alg.ring().field().ok_or_else(|| input_err!("radical needs an algebra over a prime field, got {}", alg.ring()))
}

pub(crate) fn radical_unchecked(alg: &StructuredAlgebra) -> Result<Subspace> {
    let f = field_of(alg)?;
    let p = f.p();
    let n = alg.dim();
    let mut ideal = Subspace::spanned_by(f, n, (0..n).map(|i| unit_vec(n, i)));
    let mut pi: u64 = 1;
    while pi <= n as u64 && ideal.dim() > 0 {
        let modulus = pi * p;
        let basis = ideal.basis_vecs();
        // g_i on a basis of I_{i-1}; it is linear there
        let values: Vec<u64> = basis
            .iter()
            .map(|w| {
                let m = alg.left_mult_matrix(&alg.from_fp(w));
                let t = trace_of_power(&m, pi, modulus);
                if t % pi != 0 {
                    Err(consistency_err!("trace of a {pi}-th power is not divisible by {pi}"))
                } else {
                    Ok((t / pi) % p)
                }
            })
            .collect::<Result<_>>()?;
        // unknown coefficients c_k of x = Σ c_k w_k; one equation per algebra basis element b
        let d = basis.len();
        let mut rows = vec![vec![0u64; d]; n];
        for (k, w) in basis.iter().enumerate() {
            for jb in 0..n {
                let prod = alg.to_fp(&alg.mul(&alg.from_fp(w), &alg.basis_vector(jb)));
                let coords = ideal.coordinates(&prod).ok_or_else(|| consistency_err!("trace chain left its ideal"))?;
                rows[jb][k] = coords.iter().zip(&values).fold(0, |acc, (&c, &g)| f.add(acc, f.mul(c, g)));
            }
        }
        let kernel = FpMatrix::from_rows(f, d, rows).right_kernel();
        let next = kernel.iter().map(|c| {
            let mut v = vec![0u64; n];
            for (k, w) in basis.iter().enumerate() {
                f.axpy_neg(&mut v, f.neg(c[k]), w);
            }
            v
        });
        ideal = Subspace::spanned_by(f, n, next);
        pi *= p;
    }
    Ok(ideal)
}

/// `Tr(M^e) mod modulus` for the integer lift of `m` with entries in `[0, p)`.
fn trace_of_power(m: &FpMatrix, e: u64, modulus: u64) -> u64 {
    let n = m.nrows();
    let lift: Vec<u64> = m.rows().iter().flatten().map(|&x| x % modulus).collect();
    let mut result: Option<Vec<u64>> = None;
    let mut base = lift;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mat_mul_mod(&r, &base, n, modulus),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, n, modulus);
        }
    }
    let r = result.expect("exponent is positive");
    (0..n).fold(0, |acc, i| (acc + r[i * n + i]) % modulus)
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            for (o, &y) in row.iter_mut().zip(brow) {
                *o = (*o + x * y) % modulus;
            }
        }
    }
    out
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Smallest `k` with `J^k = 0`, if any.
pub fn nilpotency_index(alg: &StructuredAlgebra, j: &Subspace) -> Option<usize> {
    let mut power = j.clone();
    let mut k = 1;
    while power.dim() > 0 {
        if k > alg.dim() {
            return None;
        }
        power = alg.subspace_product(&power, j);
        k += 1;
    }
    Some(k)
}

/// `{x : J x = 0}` for the radical `J`.
pub fn socle_left(alg: &StructuredAlgebra) -> Result<Subspace> {
    let j = radical(alg)?;
    Ok(left_annihilated_by(alg, &j))
}

/// `{x : r x = 0 for all r ∈ s}`.
pub fn left_annihilated_by(alg: &StructuredAlgebra, s: &Subspace) -> Subspace {
    let f = s.field();
    let n = alg.dim();
    let mut rows = Vec::new();
    for r in s.basis() {
        rows.extend(alg.left_mult_matrix(&alg.from_fp(r)).into_rows());
    }
    if rows.is_empty() {
        return Subspace::spanned_by(f, n, (0..n).map(|i| unit_vec(n, i)));
    }
    Subspace::spanned_by(f, n, FpMatrix::from_rows(f, n, rows).right_kernel())
}

pub fn is_semisimple(alg: &StructuredAlgebra) -> Result<bool> {
    Ok(radical(alg)?.dim() == 0)
}
