use crate::algebra::StructuredAlgebra;
use crate::error::{input_err, Result};
use crate::linalg::{Fp, FpMatrix, Subspace};

/// A finite-dimensional left module over an algebra over `F_p`.
///
/// `actions[a]` is the matrix of the basis element `b_a` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    field: Fp,
    dim: usize,
    actions: Vec<FpMatrix>,
}

impl LeftModule {
    /// Checks that the unit acts as the identity and that `b_a b_b` acts as the product.
    pub fn new(alg: &StructuredAlgebra, dim: usize, actions: Vec<FpMatrix>) -> Result<LeftModule> {
        let m = LeftModule::new_unchecked(alg, dim, actions)?;
        m.verify(alg)?;
        Ok(m)
    }

    fn new_unchecked(alg: &StructuredAlgebra, dim: usize, actions: Vec<FpMatrix>) -> Result<LeftModule> {
        let field = alg.ring().field().ok_or_else(|| input_err!("modules are only supported over prime fields"))?;
        if actions.len() != alg.dim() || actions.iter().any(|a| a.nrows() != dim || a.ncols() != dim) {
            return Err(input_err!("need one {dim}x{dim} action matrix per algebra basis element"));
        }
        Ok(LeftModule { field, dim, actions })
    }

    fn verify(&self, alg: &StructuredAlgebra) -> Result<()> {
        let f = self.field;
        if self.element_matrix(alg.unit()) != FpMatrix::identity(f, self.dim) {
            return Err(input_err!("the unit does not act as the identity"));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = self.actions[a].mul(&self.actions[b]);
                let prod = alg.mul(&alg.basis_vector(a), &alg.basis_vector(b));
                if lhs != self.element_matrix(&prod) {
                    return Err(input_err!("action is not multiplicative on basis pair ({a}, {b})"));
                }
            }
        }
        Ok(())
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(alg: &StructuredAlgebra) -> Result<LeftModule> {
        let actions = (0..alg.dim()).map(|a| alg.left_mult_matrix(&alg.basis_vector(a))).collect();
        LeftModule::new_unchecked(alg, alg.dim(), actions)
    }

    /// The one-dimensional module on which `b_index` acts as 1 and every other basis element as 0.
    pub fn residue(alg: &StructuredAlgebra, index: usize) -> Result<LeftModule> {
        let f = alg.ring().field().ok_or_else(|| input_err!("modules are only supported over prime fields"))?;
        if index >= alg.dim() {
            return Err(input_err!("basis index {index} out of range"));
        }
        let actions = (0..alg.dim()).map(|a| FpMatrix::from_rows(f, 1, vec![vec![u64::from(a == index)]])).collect();
        LeftModule::new(alg, 1, actions)
    }

    /// The quotient `A / I` by a left ideal `I`.
    pub fn quotient_of_regular(alg: &StructuredAlgebra, ideal: &Subspace) -> Result<LeftModule> {
        LeftModule::regular(alg)?.quotient(ideal)
    }

    /// The left ideal `A · e` for an element `e`.
    pub fn cyclic_left_ideal(alg: &StructuredAlgebra, e: &[i64]) -> Result<LeftModule> {
        let f = alg.ring().field().ok_or_else(|| input_err!("modules are only supported over prime fields"))?;
        let span = Subspace::spanned_by(
            f,
            alg.dim(),
            (0..alg.dim()).map(|a| alg.to_fp(&alg.mul(&alg.basis_vector(a), e))),
        );
        LeftModule::regular(alg)?.submodule(&span)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: usize) -> &FpMatrix {
        &self.actions[a]
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    /// Matrix of an algebra element given by integer coordinates.
    pub fn element_matrix(&self, x: &[i64]) -> FpMatrix {
        let f = self.field;
        let mut m = FpMatrix::zeros(f, self.dim, self.dim);
        for (a, &c) in x.iter().enumerate() {
            let c = f.reduce(c);
            if c == 0 {
                continue;
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let v = self.actions[a].get(i, j);
                    if v != 0 {
                        m.set(i, j, f.add(m.get(i, j), f.mul(c, v)));
                    }
                }
            }
        }
        m
    }

    /// `b_a · v`
    pub fn act(&self, a: usize, v: &[u64]) -> Vec<u64> {
        self.actions[a].apply_col(v)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis().all(|v| self.actions.iter().all(|m| s.contains(&m.apply_col(v))))
    }

    /// The submodule generated by the given vectors.
    pub fn generated(&self, gens: impl IntoIterator<Item = Vec<u64>>) -> Subspace {
        let mut s = Subspace::new(self.field, self.dim);
        for g in gens {
            self.absorb(&mut s, g);
        }
        s
    }

    /// Adds the submodule generated by `v` to `s`; returns whether `s` grew.
    pub(crate) fn absorb(&self, s: &mut Subspace, v: Vec<u64>) -> bool {
        if s.contains(&v) {
            return false;
        }
        let mut queue = vec![v];
        while let Some(w) = queue.pop() {
            if s.insert(w.clone()) {
                for m in &self.actions {
                    let x = m.apply_col(&w);
                    if !s.contains(&x) {
                        queue.push(x);
                    }
                }
            }
        }
        true
    }

    /// The module structure on an invariant subspace, in the coordinates of its echelon basis.
    pub fn submodule(&self, s: &Subspace) -> Result<LeftModule> {
        if !self.is_submodule(s) {
            return Err(input_err!("subspace is not a submodule"));
        }
        let basis = s.basis_vecs();
        let d = basis.len();
        let actions = self
            .actions
            .iter()
            .map(|m| {
                let mut out = FpMatrix::zeros(self.field, d, d);
                for (j, v) in basis.iter().enumerate() {
                    let c = s.coordinates(&m.apply_col(v)).expect("submodule is invariant");
                    for (i, &x) in c.iter().enumerate() {
                        out.set(i, j, x);
                    }
                }
                out
            })
            .collect();
        Ok(LeftModule { field: self.field, dim: d, actions })
    }

    /// The quotient module `M / s`, with basis the images of the non-pivot coordinates.
    pub fn quotient(&self, s: &Subspace) -> Result<LeftModule> {
        if !self.is_submodule(s) {
            return Err(input_err!("subspace is not a submodule"));
        }
        let pivots = s.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|c| pivots.binary_search(c).is_err()).collect();
        let d = keep.len();
        let actions = self
            .actions
            .iter()
            .map(|m| {
                let mut out = FpMatrix::zeros(self.field, d, d);
                for (j, &c) in keep.iter().enumerate() {
                    let mut e = vec![0; self.dim];
                    e[c] = 1;
                    let mut img = m.apply_col(&e);
                    s.reduce(&mut img);
                    for (i, &k) in keep.iter().enumerate() {
                        out.set(i, j, img[k]);
                    }
                }
                out
            })
            .collect();
        Ok(LeftModule { field: self.field, dim: d, actions })
    }

    pub fn direct_sum(&self, other: &LeftModule) -> LeftModule {
        let d = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = FpMatrix::zeros(self.field, d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        LeftModule { field: self.field, dim: d, actions }
    }
}

/// The semisimple top `A / rad A` as a left module.
pub fn semisimple_top(alg: &StructuredAlgebra) -> Result<LeftModule> {
    let j = super::radical(alg)?;
    LeftModule::quotient_of_regular(alg, &j)
}

/// The projective `A e` for the basis element `e = b_index`.
pub fn corner_projective(alg: &StructuredAlgebra, index: usize) -> Result<LeftModule> {
    if index >= alg.dim() {
        return Err(input_err!("basis index {index} out of range"));
    }
    LeftModule::cyclic_left_ideal(alg, &alg.basis_vector(index))
}

/// `dim Hom_A(M, N)`, by solving `φ M_a = N_a φ` for every basis element directly.
pub fn hom_dim(alg: &StructuredAlgebra, m: &LeftModule, n: &LeftModule) -> usize {
    let f = m.field;
    let (dm, dn) = (m.dim, n.dim);
    // unknown φ[i][j] at index i * dm + j
    let mut eqs = Subspace::new(f, dn * dm);
    for a in 0..alg.dim() {
        let (ma, na) = (&m.actions[a], &n.actions[a]);
        for i in 0..dn {
            for j in 0..dm {
                // (φ M_a)[i][j] - (N_a φ)[i][j]
                let mut row = vec![0u64; dn * dm];
                for k in 0..dm {
                    let c = ma.get(k, j);
                    if c != 0 {
                        row[i * dm + k] = f.add(row[i * dm + k], c);
                    }
                }
                for k in 0..dn {
                    let c = na.get(i, k);
                    if c != 0 {
                        row[k * dm + j] = f.sub(row[k * dm + j], c);
                    }
                }
                eqs.insert(row);
            }
        }
    }
    dn * dm - eqs.dim()
}
