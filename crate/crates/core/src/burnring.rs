//! The Burnside ring `RB(G)` with the basis `[G/H]` over subgroup classes.

use serde::Serialize;

use crate::algebra::{CoefficientRing, FormCertificate, GramForm, StructuredAlgebra};
use crate::error::{consistency_err, precondition_err, Result};
use crate::grpcore::{prime_power_base, SubgroupClassTable};
use crate::gset::{induce, product, GSetSum};
use crate::linalg::{Fp, FpMatrix, Subspace};

/// Basis labels `[G/H]` in class order.
pub fn basis_labels(table: &SubgroupClassTable) -> Vec<String> {
    (0..table.len()).map(|c| format!("[G/{}]", table.label(c))).collect()
}

/// `RB(G)` with structure constants from products of coset spaces, reduced into `R`.
pub fn burnside_algebra(table: &SubgroupClassTable, ring: CoefficientRing) -> StructuredAlgebra {
    let n = table.len();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = product(table, &GSetSum::basis(table, i), &GSetSum::basis(table, j)).expect("same group");
            products.push(x.multiplicities().iter().enumerate().filter(|(_, &m)| m > 0).map(|(k, &m)| (k, m as i64)).collect());
        }
    }
    let mut unit = vec![0; n];
    unit[table.whole_class()] = 1;
    StructuredAlgebra::new(ring, basis_labels(table), products, unit).expect("Burnside rings are unital and associative")
}

/// The coefficient of `[G/1]`.
pub fn unit_coset_functional(table: &SubgroupClassTable, x: &[i64]) -> i64 {
    x[table.trivial_class()]
}

/// `β(x, y) = [G/1]*(x · y)`.
pub fn gustafson_form(table: &SubgroupClassTable, ring: CoefficientRing) -> GramForm {
    let alg = burnside_algebra(table, ring);
    let n = alg.dim();
    let gram = (0..n)
        .map(|i| (0..n).map(|j| unit_coset_functional(table, &alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)))).collect())
        .collect();
    GramForm::new(ring, gram).expect("square Gram matrix")
}

pub fn form_certificate(alg: &StructuredAlgebra, form: &GramForm) -> FormCertificate {
    form.certificate(alg)
}

/// Checks `β_G(1, ind_H^G x) = β_H(1, x)` for every subgroup class `H` and basis element `x` of `RB(H)`.
pub fn rognerud_compatibility(table: &SubgroupClassTable, ring: CoefficientRing) -> bool {
    let beta_g = gustafson_form(table, ring);
    let mut one_g = vec![0; table.len()];
    one_g[table.whole_class()] = 1;
    (0..table.len()).all(|c| {
        let h = table.representative(c);
        let (hg, _) = table.group().subgroup_as_group(h);
        let ht = SubgroupClassTable::new(&hg);
        let beta_h = gustafson_form(&ht, ring);
        let mut one_h = vec![0; ht.len()];
        one_h[ht.whole_class()] = 1;
        (0..ht.len()).all(|b| {
            let ind = induce(table, h, &ht, &GSetSum::basis(&ht, b)).expect("tables match");
            let ind: Vec<i64> = ind.multiplicities().iter().map(|&m| m as i64).collect();
            let mut x = vec![0; ht.len()];
            x[b] = 1;
            ring.reduce(beta_g.eval(&one_g, &ind)) == ring.reduce(beta_h.eval(&one_h, &x))
        })
    })
}

/// The socle of `F_p B(G)` for a `p`-group, with the radical it was computed from.
#[derive(Clone, Debug)]
pub struct BurnsideSocle {
    pub p: u64,
    pub radical: Subspace,
    pub socle: Subspace,
}

impl BurnsideSocle {
    pub fn dim(&self) -> usize {
        self.socle.dim()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let f = self.socle.field();
        self.socle.contains(&x.iter().map(|&a| f.reduce(a)).collect::<Vec<_>>())
    }
}

/// The annihilator of the radical of `F_p B(G)` when `G` is a `p`-group.
///
/// The radical is the span of the non-unit basis elements; this is checked to be a
/// nilpotent ideal with quotient `F_p` before it is used.
pub fn modp_burnside_socle(table: &SubgroupClassTable, p: u64) -> Result<BurnsideSocle> {
    let order = table.group().order() as u64;
    if order == 1 || prime_power_base(order) != Some(p) {
        return Err(precondition_err!("socle computation needs a {p}-group, got order {order}"));
    }
    let ring = CoefficientRing::prime_field(p)?;
    let alg = burnside_algebra(table, ring);
    let f = Fp::new(p);
    let n = alg.dim();
    let top = table.whole_class();
    let radical = Subspace::spanned_by(f, n, (0..n).filter(|&c| c != top).map(|c| unit_vec(n, c)));
    if !alg.is_ideal(&radical) {
        return Err(consistency_err!("non-unit span of F_{p}B(G) is not an ideal"));
    }
    let mut power = radical.clone();
    let mut steps = 0;
    while power.dim() > 0 {
        power = alg.subspace_product(&power, &radical);
        steps += 1;
        if steps > n {
            return Err(consistency_err!("non-unit span of F_{p}B(G) is not nilpotent"));
        }
    }
    // x is in the socle iff r · x = 0 for each radical basis element r
    let mut rows = Vec::new();
    for r in radical.basis_vecs() {
        rows.extend(alg.left_mult_matrix(&alg.from_fp(&r)).into_rows());
    }
    let socle = Subspace::spanned_by(f, n, FpMatrix::from_rows(f, n, rows).right_kernel());
    Ok(BurnsideSocle { p, radical, socle })
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Sum of `[G/H]` over all subgroups of order `p`, so each class counts with its size.
pub fn order_p_sum(table: &SubgroupClassTable, p: u64) -> Vec<i64> {
    table.classes().iter().map(|c| if c.order() as u64 == p { c.size() as i64 } else { 0 }).collect()
}

/// Short letters for basis elements: `g` for `[G/1]`, `1` for `[G/G]`, then `h, k, ℓ, ...`.
pub fn letters(table: &SubgroupClassTable) -> Vec<String> {
    const NAMES: [&str; 12] = ["h", "k", "ℓ", "m", "n", "q", "r", "t", "u", "v", "w", "z"];
    let mut next = 0;
    (0..table.len())
        .map(|c| {
            if c == table.whole_class() {
                "1".to_string()
            } else if c == table.trivial_class() {
                "g".to_string()
            } else {
                next += 1;
                NAMES.get(next - 1).map_or_else(|| format!("x{next}"), |s| s.to_string())
            }
        })
        .collect()
}

/// One multiplication rule `xy = Σ c z` among non-unit letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub lhs: String,
    pub rhs: String,
}

/// All products of pairs of non-unit basis elements, written in letters.
///
/// Over `Z` for `C4` this gives `g^2 = 4g, gh = 2g, h^2 = 2h`.
pub fn relations(table: &SubgroupClassTable, alg: &StructuredAlgebra) -> Vec<Relation> {
    let names = letters(table);
    let top = table.whole_class();
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            if i == top || j == top {
                continue;
            }
            let lhs = if i == j { format!("{}^2", names[i]) } else { format!("{}{}", names[i], names[j]) };
            out.push(Relation { lhs, rhs: render_combination(&names, alg.product(i, j)) });
        }
    }
    out
}

pub fn render_combination(names: &[String], v: &[(usize, i64)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, &(k, c)) in v.iter().enumerate() {
        if n > 0 {
            s.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            s.push('-');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&names[k]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcore::Group;
    use crate::gset::table_of_marks;
    use crate::linalg::int::int;

    fn table(spec: &str) -> SubgroupClassTable {
        SubgroupClassTable::new(&Group::parse(spec).unwrap())
    }

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn c4_relations() {
        let t = table("cyclic:4");
        let text: Vec<String> =
            relations(&t, &burnside_algebra(&t, Z)).iter().map(|r| format!("{} = {}", r.lhs, r.rhs)).collect();
        assert_eq!(text, ["g^2 = 4g", "gh = 2g", "h^2 = 2h"]);
        let f2 = CoefficientRing::prime_field(2).unwrap();
        assert!(relations(&t, &burnside_algebra(&t, f2)).iter().all(|r| r.rhs == "0"));
    }

    #[test]
    fn klein_relations() {
        let t = table("klein");
        let rels = relations(&t, &burnside_algebra(&t, Z));
        let find = |l: &str| rels.iter().find(|r| r.lhs == l).unwrap().rhs.clone();
        for l in ["hk", "hℓ", "kℓ"] {
            assert_eq!(find(l), "g");
        }
        for l in ["gh", "gk", "gℓ"] {
            assert_eq!(find(l), "2g");
        }
        assert_eq!(find("h^2"), "2h");
        assert_eq!(find("g^2"), "4g");
    }

    #[test]
    fn marks_are_ring_homomorphisms() {
        // each row of the table of marks is a character of B(G)
        for spec in ["cyclic:4", "klein", "sym:3", "cyclic:6", "dihedral:4", "dihedral:6", "sym:4"] {
            let t = table(spec);
            let m = table_of_marks(&t);
            let alg = burnside_algebra(&t, Z);
            for i in 0..t.len() {
                for j in 0..t.len() {
                    let prod = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
                    for k in 0..t.len() {
                        let lhs: i64 = prod.iter().enumerate().map(|(c, &a)| a * m.mark(k, c)).sum();
                        assert_eq!(lhs, m.mark(k, i) * m.mark(k, j), "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn functional() {
        let t = table("cyclic:4");
        assert_eq!(unit_coset_functional(&t, &[1, 0, 0]), 1);
        assert_eq!(unit_coset_functional(&t, &[0, 0, 1]), 0);
        assert_eq!(unit_coset_functional(&t, &[3, 5, 0]), 3);
    }

    #[test]
    fn gustafson_c4() {
        let t = table("cyclic:4");
        let form = gustafson_form(&t, Z);
        assert_eq!(form.gram(), &[vec![4, 2, 1], vec![2, 0, 0], vec![1, 0, 0]]);
        let c = form_certificate(&burnside_algebra(&t, Z), &form);
        assert!(c.symmetric && c.associative && !c.nondegenerate);
        assert_eq!(form.determinant(), int(0));
    }

    #[test]
    fn gustafson_square_free() {
        for spec in ["cyclic:2", "cyclic:3", "cyclic:6", "sym:3", "cyclic:15", "dihedral:5"] {
            let t = table(spec);
            let form = gustafson_form(&t, Z);
            assert!(form_certificate(&burnside_algebra(&t, Z), &form).all(), "{spec}");
            let det = form.determinant();
            assert!(det == int(1) || det == int(-1));
        }
        for spec in ["klein", "cyclic:8", "dihedral:4"] {
            let t = table(spec);
            let form = gustafson_form(&t, Z);
            assert!(!form.is_nondegenerate(), "{spec}");
            assert!(form.is_symmetric() && form.is_associative(&burnside_algebra(&t, Z)));
        }
    }

    #[test]
    fn reduction_is_entrywise() {
        for spec in ["cyclic:6", "klein", "sym:3"] {
            let t = table(spec);
            for p in [2, 3, 5] {
                let fp = CoefficientRing::prime_field(p).unwrap();
                assert_eq!(gustafson_form(&t, fp), gustafson_form(&t, Z).reduce_mod(fp));
            }
        }
    }

    #[test]
    fn induction_compatibility() {
        for spec in ["cyclic:6", "sym:3", "cyclic:4", "klein"] {
            assert!(rognerud_compatibility(&table(spec), Z), "{spec}");
        }
    }

    #[test]
    fn socles() {
        let t = table("cyclic:4");
        let s = modp_burnside_socle(&t, 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 0]) && s.contains(&[0, 1, 0]) && !s.contains(&[0, 0, 1]));

        let t = table("klein");
        let s = modp_burnside_socle(&t, 2).unwrap();
        assert_eq!(s.dim(), 2);
        let alg = burnside_algebra(&t, Z);
        let hk = alg.mul(&alg.basis_vector(1), &alg.basis_vector(2));
        assert_eq!(order_p_sum(&t, 2), vec![0, 1, 1, 1, 0]);
        assert!(s.contains(&order_p_sum(&t, 2)) && s.contains(&hk));

        assert_eq!(modp_burnside_socle(&table("cyclic:2"), 2).unwrap().dim(), 1);
        assert!(modp_burnside_socle(&table("sym:3"), 2).is_err());
        assert!(modp_burnside_socle(&table("cyclic:9"), 2).is_err());
        assert!(modp_burnside_socle(&table("cyclic:9"), 3).is_ok());
    }
}
