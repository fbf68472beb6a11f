//! Projective modules `⊕_j A e_{t_j}` over an algebra whose distinguished idempotents are
//! basis elements compatible with the basis (`b_a e = b_a` or `0`, and `e b_a = b_a` or `0`).
//! Then `A e` and `e A` are spanned by subsets of the basis, and resolutions by such
//! projectives are much smaller than free ones. Without such idempotents the single
//! idempotent `1` is used and everything is free.

use crate::algebra::StructuredAlgebra;

#[derive(Clone, Debug)]
pub(crate) struct Splitting {
    /// coordinates of each idempotent `e_t`
    pub elems: Vec<Vec<i64>>,
    /// basis of `A e_t`
    pub right: Vec<Vec<usize>>,
    /// basis of `e_t A`
    pub left: Vec<Vec<usize>>,
    /// position of `a` in `right[t]`
    pub right_pos: Vec<Vec<Option<usize>>>,
    pub left_pos: Vec<Vec<Option<usize>>>,
}

impl Splitting {
    pub fn of(alg: &StructuredAlgebra) -> Splitting {
        let n = alg.dim();
        let ids = alg.idempotents();
        let compatible = !ids.is_empty()
            && ids.iter().all(|&e| {
                (0..n).all(|a| {
                    let ok = |p: &[(usize, i64)]| p.is_empty() || p == [(a, 1)];
                    ok(alg.product(a, e)) && ok(alg.product(e, a))
                })
            });
        let partition = |parts: &[Vec<usize>]| {
            let mut seen = vec![0; n];
            parts.iter().flatten().for_each(|&a| seen[a] += 1);
            seen.iter().all(|&c| c == 1)
        };
        if compatible {
            let right: Vec<Vec<usize>> = ids.iter().map(|&e| (0..n).filter(|&a| !alg.product(a, e).is_empty()).collect()).collect();
            let left: Vec<Vec<usize>> = ids.iter().map(|&e| (0..n).filter(|&a| !alg.product(e, a).is_empty()).collect()).collect();
            if partition(&right) && partition(&left) {
                let elems = ids.iter().map(|&e| alg.basis_vector(e)).collect();
                return Splitting::build(n, elems, right, left);
            }
        }
        let all: Vec<usize> = (0..n).collect();
        Splitting::build(n, vec![alg.unit().to_vec()], vec![all.clone()], vec![all])
    }

    fn build(n: usize, elems: Vec<Vec<i64>>, right: Vec<Vec<usize>>, left: Vec<Vec<usize>>) -> Splitting {
        let positions = |parts: &[Vec<usize>]| -> Vec<Vec<Option<usize>>> {
            parts
                .iter()
                .map(|p| {
                    let mut pos = vec![None; n];
                    for (i, &a) in p.iter().enumerate() {
                        pos[a] = Some(i);
                    }
                    pos
                })
                .collect()
        };
        let (right_pos, left_pos) = (positions(&right), positions(&left));
        Splitting { elems, right, left, right_pos, left_pos }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }
}

/// Layout of `⊕_j A e_{t_j}`: summand `j` occupies `offsets[j] .. offsets[j] + |right[t_j]|`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Layout {
    pub summands: Vec<usize>,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl Layout {
    pub fn new(split: &Splitting, summands: Vec<usize>) -> Layout {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut dim = 0;
        for &t in &summands {
            offsets.push(dim);
            dim += split.right[t].len();
        }
        Layout { summands, offsets, dim }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Calls `visit(j, a, coordinate)` for every coordinate.
    pub fn coordinates<'a>(&'a self, split: &'a Splitting) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        self.summands.iter().enumerate().flat_map(move |(j, &t)| {
            split.right[t].iter().enumerate().map(move |(l, &a)| (j, a, self.offsets[j] + l))
        })
    }
}
