use crate::algebra::StructuredAlgebra;
use crate::error::{input_err, resource_err, Result};
use crate::linalg::{Fp, FpMatrix, Subspace};

use super::module::{semisimple_top, LeftModule};
use super::split::{Layout, Splitting};

/// Longest resolution built by default.
pub const DEFAULT_RESOLUTION_CAP: usize = 5;
/// Largest `F_p`-dimension of a projective module in a resolution.
pub const FREE_DIM_CAP: usize = 40_000;

/// Order in which kernel basis vectors are offered as generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeneratorOrder {
    #[default]
    Forward,
    Reverse,
}

/// A projective resolution `… → P_1 → P_0 → M → 0`, not necessarily minimal.
///
/// Each `P_k` is a sum `⊕_j A e_{t_j}` over the distinguished idempotents of the algebra,
/// or a free module when there are none. An element of `P_k` is stored by its coordinates
/// in the basis elements spanning each summand.
#[derive(Clone, Debug)]
pub struct Resolution {
    field: Fp,
    split: Splitting,
    layouts: Vec<Layout>,
    /// images in `M` of the generators of `P_0`
    augmentation: Vec<Vec<u64>>,
    /// `maps[k]` lists the images in `P_k` of the generators of `P_{k+1}`
    maps: Vec<Vec<Vec<u64>>>,
}

impl Resolution {
    /// Builds `P_0, …, P_len` and the maps between them.
    pub fn new(alg: &StructuredAlgebra, m: &LeftModule, len: usize, order: GeneratorOrder) -> Result<Resolution> {
        let f = alg.ring().field().ok_or_else(|| input_err!("resolutions need an algebra over a prime field"))?;
        if m.field() != f {
            return Err(input_err!("module and algebra live over different fields"));
        }
        let split = Splitting::of(alg);
        let idem: Vec<FpMatrix> = split.elems.iter().map(|e| m.element_matrix(e)).collect();
        let mut candidates: Vec<Vec<u64>> = (0..m.dim()).map(|i| unit(m.dim(), i)).collect();
        if order == GeneratorOrder::Reverse {
            candidates.reverse();
        }
        let (summands, augmentation) = choose_generators(
            f,
            m.dim(),
            candidates,
            |t, v| idem[t].apply_col(v),
            |t, v| split.right[t].iter().map(|&a| m.act(a, v)).collect(),
            split.len(),
        );
        let layout = Layout::new(&split, summands);
        let mut res = Resolution { field: f, split, layouts: vec![layout], augmentation, maps: Vec::new() };
        for k in 0..len {
            let dim = res.layouts[k].dim;
            if dim > FREE_DIM_CAP {
                return Err(resource_err!("projective module of dimension {dim} in degree {k} exceeds the size cap"));
            }
            let mut kernel = res.differential_matrix(alg, m, k).left_kernel();
            if order == GeneratorOrder::Reverse {
                kernel.reverse();
            }
            let (split, layout) = (&res.split, &res.layouts[k]);
            let (summands, gens) = choose_generators(
                f,
                dim,
                kernel,
                |t, v| act_element(alg, f, split, layout, &split.elems[t], v),
                |t, v| split.right[t].iter().map(|&a| act_basis(alg, f, split, layout, a, v)).collect(),
                split.len(),
            );
            res.layouts.push(Layout::new(split, summands));
            res.maps.push(gens);
        }
        Ok(res)
    }

    /// Number of indecomposable-idempotent summands of `P_k`.
    pub fn rank(&self, k: usize) -> usize {
        self.layouts[k].rank()
    }

    /// `F_p`-dimension of `P_k`.
    pub fn module_dim(&self, k: usize) -> usize {
        self.layouts[k].dim
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Matrix of `P_k → P_{k-1}` (or `P_0 → M`); one row per coordinate of `P_k`.
    fn differential_matrix(&self, alg: &StructuredAlgebra, m: &LeftModule, k: usize) -> FpMatrix {
        let layout = &self.layouts[k];
        if k == 0 {
            let rows = layout.coordinates(&self.split).map(|(j, a, _)| m.act(a, &self.augmentation[j])).collect();
            FpMatrix::from_rows(self.field, m.dim(), rows)
        } else {
            let below = &self.layouts[k - 1];
            let rows = layout
                .coordinates(&self.split)
                .map(|(j, a, _)| act_basis(alg, self.field, &self.split, below, a, &self.maps[k - 1][j]))
                .collect();
            FpMatrix::from_rows(self.field, below.dim, rows)
        }
    }

    /// Checks `im(d_{k+1}) = ker(d_k)` at every built stage, and surjectivity onto `M`.
    pub fn is_exact(&self, alg: &StructuredAlgebra, m: &LeftModule) -> bool {
        if self.differential_matrix(alg, m, 0).rank() != m.dim() {
            return false;
        }
        (0..self.len()).all(|k| {
            let d = self.differential_matrix(alg, m, k);
            let kernel_dim = d.nrows() - d.rank();
            let next = self.differential_matrix(alg, m, k + 1);
            next.mul(&d).is_zero() && next.rank() == kernel_dim
        })
    }

    /// `Hom(P_{k-1}, N) → Hom(P_k, N)` acting on columns, with `Hom(A e, N) ≅ e N`.
    fn cochain_matrix(&self, target: &LeftModule, spaces: &[Subspace], k: usize) -> FpMatrix {
        let f = self.field;
        let (below, above) = (&self.layouts[k - 1], &self.layouts[k]);
        let offsets = |l: &Layout| -> (Vec<usize>, usize) {
            let mut out = Vec::with_capacity(l.rank());
            let mut total = 0;
            for &t in &l.summands {
                out.push(total);
                total += spaces[t].dim();
            }
            (out, total)
        };
        let ((src_off, src_dim), (dst_off, dst_dim)) = (offsets(below), offsets(above));
        let mut d = FpMatrix::zeros(f, dst_dim, src_dim);
        for (i, &ti) in below.summands.iter().enumerate() {
            for (s, y) in spaces[ti].basis().enumerate() {
                // b_a y for each basis element spanning the summand A e_{t_i}
                let moved: Vec<Vec<u64>> = self.split.right[ti].iter().map(|&a| target.act(a, y)).collect();
                for (j, w) in self.maps[k - 1].iter().enumerate() {
                    let mut z = vec![0u64; target.dim()];
                    for (l, v) in moved.iter().enumerate() {
                        let c = w[below.offsets[i] + l];
                        if c != 0 {
                            f.axpy_neg(&mut z, f.neg(c), v);
                        }
                    }
                    let tj = above.summands[j];
                    let coords = spaces[tj].coordinates(&z).expect("image lies in e N");
                    for (r, &x) in coords.iter().enumerate() {
                        d.set(dst_off[j] + r, src_off[i] + s, x);
                    }
                }
            }
        }
        d
    }

    /// `dim Ext^i(M, N)` from this resolution; needs `len() > i`.
    pub fn ext_dim(&self, target: &LeftModule, i: usize) -> Result<usize> {
        if self.len() <= i {
            return Err(input_err!("resolution of length {} is too short for degree {i}", self.len()));
        }
        let spaces: Vec<Subspace> = self
            .split
            .elems
            .iter()
            .map(|e| {
                let m = target.element_matrix(e);
                Subspace::spanned_by(self.field, target.dim(), m.transpose().into_rows())
            })
            .collect();
        let next = self.cochain_matrix(target, &spaces, i + 1);
        let cocycles = next.ncols() - next.rank();
        let boundaries = if i == 0 { 0 } else { self.cochain_matrix(target, &spaces, i).rank() };
        Ok(cocycles - boundaries)
    }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `b_c · x` for `x` in the projective module with the given layout.
fn act_basis(alg: &StructuredAlgebra, f: Fp, split: &Splitting, layout: &Layout, c: usize, x: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; x.len()];
    for (j, a, coord) in layout.coordinates(split) {
        let v = x[coord];
        if v == 0 {
            continue;
        }
        let t = layout.summands[j];
        for &(k, s) in alg.product(c, a) {
            let pos = split.right_pos[t][k].expect("A e is closed under left multiplication");
            let o = &mut out[layout.offsets[j] + pos];
            *o = f.add(*o, f.mul(v, f.reduce(s)));
        }
    }
    out
}

fn act_element(alg: &StructuredAlgebra, f: Fp, split: &Splitting, layout: &Layout, e: &[i64], x: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; x.len()];
    for (c, &coef) in e.iter().enumerate() {
        let coef = f.reduce(coef);
        if coef != 0 {
            f.axpy_neg(&mut out, f.neg(coef), &act_basis(alg, f, split, layout, c, x));
        }
    }
    out
}

/// Greedy generators: split each candidate into its idempotent components `e_t v` and keep
/// each component not yet in the submodule generated so far.
///
/// `orbit(t, v)` must span `A v` for `v = e_t v`.
fn choose_generators(
    field: Fp,
    dim: usize,
    candidates: Vec<Vec<u64>>,
    component: impl Fn(usize, &[u64]) -> Vec<u64>,
    orbit: impl Fn(usize, &[u64]) -> Vec<Vec<u64>>,
    idempotents: usize,
) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut span = Subspace::new(field, dim);
    let (mut summands, mut gens) = (Vec::new(), Vec::new());
    for v in candidates {
        if span.contains(&v) {
            continue;
        }
        for t in 0..idempotents {
            let w = if idempotents == 1 { v.clone() } else { component(t, &v) };
            if span.contains(&w) {
                continue;
            }
            for x in orbit(t, &w) {
                span.insert(x);
            }
            summands.push(t);
            gens.push(w);
        }
    }
    (summands, gens)
}

/// `dim Ext^i_A(M, N)` from a projective resolution of `M`.
pub fn ext_dim(alg: &StructuredAlgebra, m: &LeftModule, n: &LeftModule, i: usize) -> Result<usize> {
    ext_dim_with(alg, m, n, i, DEFAULT_RESOLUTION_CAP, GeneratorOrder::Forward)
}

pub fn ext_dim_with(
    alg: &StructuredAlgebra,
    m: &LeftModule,
    n: &LeftModule,
    i: usize,
    cap: usize,
    order: GeneratorOrder,
) -> Result<usize> {
    if i > cap {
        return Err(resource_err!("Ext in degree {i} needs a resolution longer than the cap {cap}"));
    }
    if n.field() != m.field() {
        return Err(input_err!("modules live over different fields"));
    }
    Resolution::new(alg, m, i + 1, order)?.ext_dim(n, i)
}

/// Whether `A` is injective as a left module over itself, tested by `Ext^1(A / rad A, A) = 0`.
pub fn is_self_injective(alg: &StructuredAlgebra) -> Result<bool> {
    let top = semisimple_top(alg)?;
    let regular = LeftModule::regular(alg)?;
    Ok(ext_dim(alg, &top, &regular, 1)? == 0)
}
