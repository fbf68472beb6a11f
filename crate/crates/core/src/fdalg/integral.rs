//! Ext over algebras that are free of finite rank over `Z`, for modules killed by a prime.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{CoefficientRing, StructuredAlgebra};
use crate::error::{input_err, precondition_err, resource_err, Result};
use crate::linalg::int::{self, Int, Lattice};
use crate::linalg::{FpMatrix, Subspace};

use super::ext::{ext_dim, DEFAULT_RESOLUTION_CAP};
use super::module::LeftModule;
use super::split::{Layout, Splitting};

/// Largest `Z`-rank of a projective module in an integral resolution.
pub const INTEGRAL_RANK_CAP: usize = 4_000;

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtGroup {
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<Int>,
    pub free_rank: usize,
}

fn as_strings<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl ExtGroup {
    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// `dim_{F_p} (E ⊗ F_p)`.
    pub fn dim_mod(&self, p: u64) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| int::mod_u64(d, p) == 0).count()
    }
}

impl fmt::Display for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A projective resolution over `S` of an `S/pS`-module `N`, with all kernels computed exactly.
#[derive(Clone, Debug)]
pub struct IntegralResolution {
    split: Splitting,
    layouts: Vec<Layout>,
    /// `maps[k]` lists the images in `P_k` of the generators of `P_{k+1}`
    maps: Vec<Vec<Vec<Int>>>,
}

impl IntegralResolution {
    /// Builds `P_0, …, P_len`.
    pub fn new(alg: &StructuredAlgebra, n: &LeftModule, len: usize) -> Result<IntegralResolution> {
        if alg.ring() != CoefficientRing::Integers {
            return Err(input_err!("integral resolutions need an algebra over Z, got {}", alg.ring()));
        }
        if n.actions().len() != alg.dim() {
            return Err(input_err!("module has {} action matrices for an algebra of rank {}", n.actions().len(), alg.dim()));
        }
        let f = n.field();
        let split = Splitting::of(alg);

        // P_0 → N, generated like the F_p resolution
        let idem: Vec<FpMatrix> = split.elems.iter().map(|e| n.element_matrix(e)).collect();
        let mut span = Subspace::new(f, n.dim());
        let (mut summands, mut images) = (Vec::new(), Vec::new());
        for i in 0..n.dim() {
            let mut v = vec![0u64; n.dim()];
            v[i] = 1;
            for t in 0..split.len() {
                let w = idem[t].apply_col(&v);
                if span.contains(&w) {
                    continue;
                }
                for &a in &split.right[t] {
                    span.insert(n.act(a, &w));
                }
                summands.push(t);
                images.push(w);
            }
        }
        let layout = Layout::new(&split, summands);
        let eps: Vec<Vec<u64>> = layout.coordinates(&split).map(|(j, a, _)| n.act(a, &images[j])).collect();
        let lifts = FpMatrix::from_rows(f, n.dim(), eps).left_kernel();
        let p = int::int(f.p() as i64);
        let mut kernel = Lattice::spanned_by(
            layout.dim,
            lifts
                .into_iter()
                .map(|v| v.into_iter().map(|x| int::int(x as i64)).collect())
                .chain((0..layout.dim).map(|i| {
                    let mut v = vec![int::int(0); layout.dim];
                    v[i] = p.clone();
                    v
                })),
        )
        .basis();

        let mut res = IntegralResolution { split, layouts: vec![layout], maps: Vec::new() };
        for k in 0..len {
            if k > 0 {
                let rows = res.differential_rows(alg, k);
                kernel = int::left_kernel(&rows, res.layouts[k - 1].dim);
            }
            let dim = res.layouts[k].dim;
            if dim > INTEGRAL_RANK_CAP {
                return Err(resource_err!("projective module of rank {dim} in degree {k} exceeds the size cap"));
            }
            let (split, layout) = (&res.split, &res.layouts[k]);
            let mut span = Lattice::new(dim);
            let (mut summands, mut gens) = (Vec::new(), Vec::new());
            for v in kernel.iter() {
                if span.contains(v) {
                    continue;
                }
                for t in 0..split.len() {
                    let w = if split.len() == 1 { v.clone() } else { act_element(alg, split, layout, &split.elems[t], v) };
                    if span.contains(&w) {
                        continue;
                    }
                    for &a in &split.right[t] {
                        span.insert(act_basis(alg, split, layout, a, &w));
                    }
                    summands.push(t);
                    gens.push(w);
                }
            }
            let next = Layout::new(split, summands);
            res.layouts.push(next);
            res.maps.push(gens);
        }
        Ok(res)
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Z`-rank of `P_k`.
    pub fn module_rank(&self, k: usize) -> usize {
        self.layouts[k].dim
    }

    /// Rows of `P_k → P_{k-1}` for `k ≥ 1`, one per coordinate of `P_k`.
    fn differential_rows(&self, alg: &StructuredAlgebra, k: usize) -> Vec<Vec<Int>> {
        let below = &self.layouts[k - 1];
        self.layouts[k]
            .coordinates(&self.split)
            .map(|(j, a, _)| act_basis(alg, &self.split, below, a, &self.maps[k - 1][j]))
            .collect()
    }

    /// Columns of `Hom(P_{k-1}, S) → Hom(P_k, S)`, with `Hom(S e, S) ≅ e S`.
    fn cochain_columns(&self, alg: &StructuredAlgebra, k: usize) -> (Vec<Vec<Int>>, usize) {
        let split = &self.split;
        let (below, above) = (&self.layouts[k - 1], &self.layouts[k]);
        let mut dst_off = Vec::with_capacity(above.rank());
        let mut dst_dim = 0;
        for &t in &above.summands {
            dst_off.push(dst_dim);
            dst_dim += split.left[t].len();
        }
        let mut cols = Vec::new();
        for (i, &ti) in below.summands.iter().enumerate() {
            for &c in &split.left[ti] {
                let mut col = vec![int::int(0); dst_dim];
                for (j, w) in self.maps[k - 1].iter().enumerate() {
                    let tj = above.summands[j];
                    for (l, &a) in split.right[ti].iter().enumerate() {
                        let x = &w[below.offsets[i] + l];
                        if *x == int::int(0) {
                            continue;
                        }
                        for &(e, s) in alg.product(a, c) {
                            let r = split.left_pos[tj][e].expect("image lies in e S");
                            col[dst_off[j] + r] += x * int::int(s);
                        }
                    }
                }
                cols.push(col);
            }
        }
        (cols, dst_dim)
    }

    /// `Ext^k_S(N, S)`; needs `len() > k`.
    pub fn ext_group(&self, alg: &StructuredAlgebra, k: usize) -> Result<ExtGroup> {
        if self.len() <= k {
            return Err(input_err!("resolution of length {} is too short for degree {k}", self.len()));
        }
        let (next, dst_dim) = self.cochain_columns(alg, k + 1);
        let cocycles = Lattice::spanned_by(next.len(), int::left_kernel(&next, dst_dim));
        let rank = cocycles.rank();
        if k == 0 {
            return Ok(ExtGroup { torsion: Vec::new(), free_rank: rank });
        }
        let (bounds, _) = self.cochain_columns(alg, k);
        let coords: Vec<Vec<Int>> = bounds
            .iter()
            .map(|b| cocycles.coordinates(b).expect("coboundaries are cocycles"))
            .collect();
        let invariants = int::smith_invariants(&coords, rank);
        let free_rank = rank - invariants.len();
        let torsion = invariants.into_iter().filter(|d| *d != int::int(1)).collect();
        Ok(ExtGroup { torsion, free_rank })
    }
}

fn act_basis(alg: &StructuredAlgebra, split: &Splitting, layout: &Layout, c: usize, x: &[Int]) -> Vec<Int> {
    let mut out = vec![int::int(0); x.len()];
    for (j, a, coord) in layout.coordinates(split) {
        let v = &x[coord];
        if *v == int::int(0) {
            continue;
        }
        let t = layout.summands[j];
        for &(k, s) in alg.product(c, a) {
            let pos = split.right_pos[t][k].expect("S e is closed under left multiplication");
            out[layout.offsets[j] + pos] += v * int::int(s);
        }
    }
    out
}

fn act_element(alg: &StructuredAlgebra, split: &Splitting, layout: &Layout, e: &[i64], x: &[Int]) -> Vec<Int> {
    let mut out = vec![int::int(0); x.len()];
    for (c, &coef) in e.iter().enumerate() {
        if coef != 0 {
            for (o, y) in out.iter_mut().zip(act_basis(alg, split, layout, c, x)) {
                *o += y * int::int(coef);
            }
        }
    }
    out
}

/// `Ext^k_S(N, S)` for an `S/pS`-module `N`.
pub fn integral_ext(alg: &StructuredAlgebra, n: &LeftModule, k: usize) -> Result<ExtGroup> {
    if k > DEFAULT_RESOLUTION_CAP {
        return Err(resource_err!("integral Ext in degree {k} exceeds the resolution cap {DEFAULT_RESOLUTION_CAP}"));
    }
    IntegralResolution::new(alg, n, k + 1)?.ext_group(alg, k)
}

/// Both sides of the change-of-rings isomorphism `Ext^{i+1}_S(N, S) ≅ Ext^i_{S/pS}(N, S/pS)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesCheck {
    pub p: u64,
    pub degree: usize,
    pub lhs: ExtGroup,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
}

/// Computes `Ext^{i+1}_S(N, S)` by an integral resolution and `Ext^i_{S/pS}(N, S/pS)` by the
/// `F_p` engine, and compares their `F_p`-dimensions. `N` is given over `S/pS`.
pub fn rees_reduction_check(alg: &StructuredAlgebra, n: &LeftModule, i: usize) -> Result<ReesCheck> {
    if i == 0 {
        return Err(precondition_err!("the change-of-rings comparison needs degree i ≥ 1"));
    }
    let p = n.field().p();
    let reduced = alg.reduce_mod(CoefficientRing::PrimeField(p));
    let lhs = integral_ext(alg, n, i + 1)?;
    let regular = LeftModule::regular(&reduced)?;
    let rhs_dim = ext_dim(&reduced, n, &regular, i)?;
    let lhs_dim = lhs.dim_mod(p);
    Ok(ReesCheck { p, degree: i, lhs, lhs_dim, rhs_dim, equal: lhs_dim == rhs_dim })
}

