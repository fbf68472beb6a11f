use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::spec::GroupSpec;
use super::subgroup::Subgroup;
use crate::error::{input_err, resource_err, Result};

/// Largest group order accepted unless the caller raises it.
pub const DEFAULT_ORDER_CAP: usize = 24;

/// A finite group stored as its full multiplication table.
///
/// Elements are the indices `0..order`. The identity is always element `0`:
/// tables supplied with the identity elsewhere are relabelled on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Group {
    name: String,
    order: usize,
    #[serde(skip)]
    table: Vec<usize>,
    #[serde(skip)]
    inverses: Vec<usize>,
}

impl Group {
    /// Builds a group from a specification, refusing orders above `cap`.
    pub fn build(spec: &GroupSpec, cap: usize) -> Result<Group> {
        let check = |order: usize| -> Result<()> {
            if order > cap {
                Err(resource_err!("group order {order} exceeds the configured cap {cap}"))
            } else {
                Ok(())
            }
        };
        match spec {
            GroupSpec::Cyclic(n) => {
                check(*n)?;
                Group::cyclic(*n)
            }
            GroupSpec::Klein => Group::klein(),
            GroupSpec::Symmetric(n) => {
                let order = (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k));
                check(order.unwrap_or(usize::MAX))?;
                Group::symmetric(*n)
            }
            GroupSpec::Dihedral(n) => {
                check(n.saturating_mul(2))?;
                Group::dihedral(*n)
            }
            GroupSpec::Permutations(gens) => Group::from_permutations(&spec.to_string(), gens, cap),
            GroupSpec::Table(rows) => {
                check(rows.len())?;
                Group::from_table(&spec.to_string(), rows)
            }
        }
    }

    /// Parses and builds with [`DEFAULT_ORDER_CAP`].
    pub fn parse(text: &str) -> Result<Group> {
        Group::build(&GroupSpec::parse(text)?, DEFAULT_ORDER_CAP)
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(input_err!("cyclic group of order 0"));
        }
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect::<Vec<Vec<_>>>();
        Group::from_table(&format!("C{n}"), &rows)
    }

    pub fn klein() -> Result<Group> {
        let rows = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect::<Vec<Vec<_>>>();
        Group::from_table("C2xC2", &rows)
    }

    /// All permutations of `n` points, elements in lexicographic order of their image lists.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(input_err!("symmetric group on 0 points"));
        }
        let mut gens = vec![(0..n).collect::<Vec<_>>()];
        if n > 1 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        let mut g = Group::from_permutations("", &gens, usize::MAX)?;
        g.name = format!("S{n}");
        Ok(g)
    }

    /// Symmetries of the regular `n`-gon (order `2n`), element `f*n + k` standing for `s^f r^k`.
    pub fn dihedral(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(input_err!("dihedral group of a 0-gon"));
        }
        let idx = |k: usize, f: usize| f * n + k;
        let mut rows = vec![vec![0; 2 * n]; 2 * n];
        for f in 0..2 {
            for a in 0..n {
                for g in 0..2 {
                    for b in 0..n {
                        // (s^f r^a)(s^g r^b) = s^(f+g) r^(b + (-1)^g a)
                        let k = if g == 0 { (a + b) % n } else { (b + n - a) % n };
                        rows[idx(a, f)][idx(b, g)] = idx(k, (f + g) % 2);
                    }
                }
            }
        }
        Group::from_table(&format!("D{}", 2 * n), &rows)
    }

    /// Closes a set of permutations under composition.
    ///
    /// Elements are ordered lexicographically by image list, which puts the identity first.
    /// The product `a*b` is the permutation "apply `b`, then `a`".
    pub fn from_permutations(name: &str, gens: &[Vec<usize>], cap: usize) -> Result<Group> {
        let degree = gens.first().map_or(0, Vec::len);
        if degree == 0 {
            return Err(input_err!("need at least one non-empty permutation"));
        }
        for (i, p) in gens.iter().enumerate() {
            if p.len() != degree {
                return Err(input_err!("permutation {i} has {} points, expected {degree}", p.len()));
            }
            let distinct: BTreeSet<_> = p.iter().copied().collect();
            if distinct.len() != degree || p.iter().any(|&x| x >= degree) {
                return Err(input_err!("entry {i} is not a permutation of 0..{degree}"));
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(resource_err!(
                            "permutation group has more than {cap} elements (the configured cap)"
                        ));
                    }
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&[usize], usize> =
            elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let rows = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[compose(a, b).as_slice()]).collect())
            .collect::<Vec<Vec<_>>>();
        Group::from_table(name, &rows)
    }

    /// Validates a multiplication table (rows indexed by the left factor).
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(input_err!("empty multiplication table"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(input_err!("row {i} has length {}, expected {n}", row.len()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(input_err!("row {i} contains out-of-range entry {bad}"));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| input_err!("table has no two-sided identity"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(input_err!("table is not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        // Relabel so that the identity is element 0, keeping the order of the rest.
        let mut relabel: Vec<usize> = Vec::with_capacity(n);
        relabel.push(e);
        relabel.extend((0..n).filter(|&x| x != e));
        let mut position = vec![0; n];
        for (new, &old) in relabel.iter().enumerate() {
            position[old] = new;
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = position[rows[relabel[a]][relabel[b]]];
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(input_err!("element {} has no inverse", relabel[a])),
            }
        }
        Ok(Group { name: name.to_string(), order: n, table, inverses })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// A stable hash of the multiplication table, used to detect mixing objects from different groups.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.table.hash(&mut h);
        h.finish()
    }

    /// The subgroup `h` as a group in its own right, with the embedding of its elements.
    ///
    /// Element `i` of the result is `embedding[i]` in `self`; the embedding is increasing.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let embedding = h.elements().to_vec();
        let local: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let rows: Vec<Vec<usize>> = embedding
            .iter()
            .map(|&a| embedding.iter().map(|&b| local[&self.mul(a, b)]).collect())
            .collect();
        let g = Group::from_table(&format!("{}<{}>", self.name, h.order()), &rows)
            .expect("a subgroup's table is a group table");
        (g, embedding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(g: &Group) -> Vec<usize> {
        let mut v: Vec<_> = g.elements().map(|a| g.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn named_families() {
        let c4 = Group::parse("cyclic:4").unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(orders(&c4).iter().filter(|&&o| o == 4).count(), 2);
        assert!(c4.elements().any(|a| c4.element_order(a) == 4));

        let v4 = Group::parse("klein").unwrap();
        assert_eq!(orders(&v4), vec![1, 2, 2, 2]);

        let s3 = Group::parse("sym:3").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());

        let d8 = Group::parse("dihedral:4").unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(orders(&d8), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        assert_eq!(Group::parse("dihedral:1").unwrap().order(), 2);
        assert_eq!(Group::parse("sym:4").unwrap().order(), 24);
    }

    #[test]
    fn caps_and_bad_tables() {
        assert!(matches!(Group::parse("cyclic:25"), Err(crate::Error::Resource(_))));
        assert!(matches!(Group::parse("sym:5"), Err(crate::Error::Resource(_))));
        assert!(Group::build(&GroupSpec::Cyclic(30), 30).is_ok());
        // no identity
        assert!(matches!(Group::from_table("x", &[vec![1, 0], vec![0, 0]]), Err(crate::Error::Input(_))));
        // identity but not associative: a loop of order 5 that is not a group
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_table("loop", &loop5).is_err());
        let perm = GroupSpec::Permutations(vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]]);
        assert!(matches!(Group::build(&perm, 24), Err(crate::Error::Resource(_))));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with the identity written as element 1
        let g = Group::from_table("c2", &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn axioms_hold_for_battery() {
        for spec in ["cyclic:1", "cyclic:6", "klein", "sym:3", "dihedral:4", "dihedral:6", "sym:4"] {
            let g = Group::parse(spec).unwrap();
            for a in g.elements() {
                assert_eq!(g.mul(a, g.inv(a)), 0);
                assert_eq!(g.mul(g.inv(a), a), 0);
                for b in g.elements() {
                    for c in g.elements() {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }
}
