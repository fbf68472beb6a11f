//! Finite G-sets: raw actions, transitive coset spaces `G/H`, equivariant maps,
//! products and pullbacks computed on explicit point sets, and the table of marks.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{input_err, Result};
use crate::grpcore::{Group, Subgroup, SubgroupClassTable};
use crate::linalg::int;

/// A finite set with a verified left action of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    points: usize,
    /// `action[g * points + x] = g · x`
    action: Vec<usize>,
}

impl GSet {
    /// Checks that `action[g][x]` defines a left action.
    pub fn new(group: &Group, action: Vec<Vec<usize>>) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(input_err!("action table has {} rows for a group of order {}", action.len(), group.order()));
        }
        let points = action[0].len();
        if action.iter().any(|r| r.len() != points || r.iter().any(|&x| x >= points)) {
            return Err(input_err!("action rows must be maps of a {points}-point set into itself"));
        }
        let set = GSet { points, action: action.concat() };
        set.check_axioms(group)?;
        Ok(set)
    }

    fn from_flat(points: usize, action: Vec<usize>) -> GSet {
        GSet { points, action }
    }

    fn check_axioms(&self, group: &Group) -> Result<()> {
        for x in 0..self.points {
            if self.act(0, x) != x {
                return Err(input_err!("identity moves point {x}"));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                for x in 0..self.points {
                    if self.act(g, self.act(h, x)) != self.act(group.mul(g, h), x) {
                        return Err(input_err!("action law fails for g={g}, h={h}, x={x}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: &Group, points: usize) -> GSet {
        GSet::from_flat(points, group.elements().flat_map(|_| 0..points).collect())
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: &Group) -> GSet {
        let n = group.order();
        GSet::from_flat(n, group.elements().flat_map(|g| (0..n).map(move |x| (g, x))).map(|(g, x)| group.mul(g, x)).collect())
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.points + x]
    }

    fn group_order(&self) -> usize {
        if self.points == 0 {
            0
        } else {
            self.action.len() / self.points
        }
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let (n, m) = (self.points, other.points);
        let order = self.group_order().max(other.group_order());
        let mut action = Vec::with_capacity(order * (n + m));
        for g in 0..order {
            action.extend((0..n).map(|x| self.act(g, x)));
            action.extend((0..m).map(|y| n + other.act(g, y)));
        }
        GSet::from_flat(n + m, action)
    }

    /// Diagonal action on pairs; point `(x, y)` has index `x * other.len() + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let (n, m) = (self.points, other.points);
        let order = self.group_order().max(other.group_order());
        let mut action = Vec::with_capacity(order * n * m);
        for g in 0..order {
            for x in 0..n {
                let gx = self.act(g, x);
                action.extend((0..m).map(|y| gx * m + other.act(g, y)));
            }
        }
        GSet::from_flat(n * m, action)
    }

    pub fn stabilizer(&self, group: &Group, x: usize) -> Subgroup {
        Subgroup::from_elements(group, group.elements().filter(|&g| self.act(g, x) == x))
            .expect("stabilizers are subgroups")
    }
}

/// One orbit of a G-set with its stabilizer matched to a subgroup class.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: usize,
    pub points: Vec<usize>,
    pub stabilizer: Subgroup,
    pub class: usize,
    /// `t` with `stabilizer = t · rep(class) · t⁻¹`
    pub conjugator: usize,
}

/// Orbits in order of their least points.
pub fn orbits(table: &SubgroupClassTable, x: &GSet) -> Vec<Orbit> {
    let group = table.group();
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for p in 0..x.len() {
        if seen[p] {
            continue;
        }
        let mut pts: Vec<usize> = group.elements().map(|g| x.act(g, p)).collect();
        pts.sort_unstable();
        pts.dedup();
        for &q in &pts {
            seen[q] = true;
        }
        let stabilizer = x.stabilizer(group, p);
        let (class, conjugator) = table.locate(&stabilizer).expect("stabilizer is a subgroup of the group");
        out.push(Orbit { representative: p, points: pts, stabilizer, class, conjugator });
    }
    out
}

/// A formal sum of transitive G-sets `Σ n_H [G/H]`, indexed by subgroup classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GSetSum {
    #[serde(skip)]
    group: u64,
    multiplicities: Vec<u64>,
}

impl GSetSum {
    pub fn zero(table: &SubgroupClassTable) -> GSetSum {
        GSetSum { group: table.group().fingerprint(), multiplicities: vec![0; table.len()] }
    }

    /// `[G/H]` for the class `class`.
    pub fn basis(table: &SubgroupClassTable, class: usize) -> GSetSum {
        let mut s = GSetSum::zero(table);
        s.multiplicities[class] = 1;
        s
    }

    pub fn from_multiplicities(table: &SubgroupClassTable, multiplicities: Vec<u64>) -> Result<GSetSum> {
        if multiplicities.len() != table.len() {
            return Err(input_err!("{} multiplicities for {} subgroup classes", multiplicities.len(), table.len()));
        }
        Ok(GSetSum { group: table.group().fingerprint(), multiplicities })
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn multiplicity(&self, class: usize) -> u64 {
        self.multiplicities[class]
    }

    pub fn total_orbits(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    fn check_same_group(&self, other: &GSetSum) -> Result<()> {
        if self.group != other.group || self.multiplicities.len() != other.multiplicities.len() {
            Err(input_err!("G-set sums belong to different groups"))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &GSetSum) -> Result<GSetSum> {
        self.check_same_group(other)?;
        let multiplicities = self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect();
        Ok(GSetSum { group: self.group, multiplicities })
    }

    /// A concrete G-set realising the sum, as a disjoint union of standard coset spaces.
    pub fn realize(&self, table: &SubgroupClassTable) -> GSet {
        let mut out = GSet::trivial(table.group(), 0);
        for (c, &m) in self.multiplicities.iter().enumerate() {
            let piece = TransitiveGSet::standard(table, c);
            for _ in 0..m {
                out = out.disjoint_union(piece.as_gset());
            }
        }
        out
    }
}

/// Isomorphism type of a finite G-set.
pub fn orbit_decompose(table: &SubgroupClassTable, x: &GSet) -> GSetSum {
    let mut s = GSetSum::zero(table);
    for o in orbits(table, x) {
        s.multiplicities[o.class] += 1;
    }
    s
}

/// The product `X × Y` with the diagonal action, decomposed into orbits.
pub fn product(table: &SubgroupClassTable, x: &GSetSum, y: &GSetSum) -> Result<GSetSum> {
    x.check_same_group(y)?;
    if x.group != table.group().fingerprint() {
        return Err(input_err!("G-set sum does not belong to this group"));
    }
    Ok(orbit_decompose(table, &x.realize(table).product(&y.realize(table))))
}

/// The coset space `G/L` for an explicit subgroup `L`.
///
/// Points are the left cosets ordered by least element; point 0 is the base point `1·L`.
#[derive(Clone, Debug)]
pub struct TransitiveGSet {
    subgroup: Subgroup,
    class: usize,
    coset_mins: Vec<usize>,
    /// element g ↦ index of the coset gL
    coset_of: Vec<usize>,
    set: GSet,
}

impl TransitiveGSet {
    pub fn of_subgroup(table: &SubgroupClassTable, subgroup: &Subgroup) -> Arc<TransitiveGSet> {
        let group = table.group();
        let cosets = subgroup.left_cosets(group);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &g in c {
                coset_of[g] = i;
            }
        }
        let coset_mins: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let points = cosets.len();
        let mut action = Vec::with_capacity(group.order() * points);
        for g in group.elements() {
            action.extend(coset_mins.iter().map(|&m| coset_of[group.mul(g, m)]));
        }
        Arc::new(TransitiveGSet {
            subgroup: subgroup.clone(),
            class: table.class_of(subgroup),
            coset_mins,
            coset_of,
            set: GSet::from_flat(points, action),
        })
    }

    /// `G/H` for the representative `H` of a class.
    pub fn standard(table: &SubgroupClassTable, class: usize) -> Arc<TransitiveGSet> {
        TransitiveGSet::of_subgroup(table, table.representative(class))
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_gset(&self) -> &GSet {
        &self.set
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.set.act(g, x)
    }

    /// The point `gL`.
    #[inline]
    pub fn point_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Least element of the coset at point `x`.
    #[inline]
    pub fn coset_min(&self, x: usize) -> usize {
        self.coset_mins[x]
    }

    fn same_as(&self, other: &TransitiveGSet) -> bool {
        self.subgroup == other.subgroup
    }
}

/// An equivariant map between transitive G-sets.
#[derive(Clone, Debug)]
pub struct GMap {
    source: Arc<TransitiveGSet>,
    target: Arc<TransitiveGSet>,
    images: Vec<usize>,
}

impl GMap {
    /// The map `gL ↦ g · point`; needs `L ⊆ Stab(point)`.
    pub fn from_base_image(
        source: &Arc<TransitiveGSet>,
        target: &Arc<TransitiveGSet>,
        point: usize,
    ) -> Result<GMap> {
        if source.subgroup.elements().iter().any(|&l| target.act(l, point) != point) {
            return Err(input_err!("base point of G/L cannot map to a point not fixed by L"));
        }
        let images = (0..source.len()).map(|x| target.act(source.coset_min(x), point)).collect();
        Ok(GMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(x: &Arc<TransitiveGSet>) -> GMap {
        GMap { source: x.clone(), target: x.clone(), images: (0..x.len()).collect() }
    }

    pub fn source(&self) -> &Arc<TransitiveGSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TransitiveGSet> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn base_image(&self) -> usize {
        self.images[0]
    }

    pub fn is_equivariant(&self, group: &Group) -> bool {
        group
            .elements()
            .all(|g| (0..self.source.len()).all(|x| self.apply(self.source.act(g, x)) == self.target.act(g, self.apply(x))))
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if !first.target.same_as(&self.source) {
            return Err(input_err!("maps are not composable"));
        }
        Ok(GMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|&y| self.images[y]).collect(),
        })
    }
}

/// One orbit of a fibre product, realised as `G/H` for a class representative `H`,
/// with its two projections.
#[derive(Clone, Debug)]
pub struct PullbackOrbit {
    pub class: usize,
    pub left: GMap,
    pub right: GMap,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub sum: GSetSum,
    pub orbits: Vec<PullbackOrbit>,
}

/// The fibre product `{(x, y) : f(x) = g(y)}` of `f: X → Z` and `g: Y → Z`, split into orbits.
pub fn pullback(table: &SubgroupClassTable, f: &GMap, g: &GMap) -> Result<Pullback> {
    if !f.target.same_as(&g.target) {
        return Err(input_err!("pullback needs maps with a common target"));
    }
    let group = table.group();
    let (x, y) = (&f.source, &g.source);
    let pairs: Vec<(usize, usize)> =
        (0..x.len()).flat_map(|a| (0..y.len()).map(move |b| (a, b))).filter(|&(a, b)| f.apply(a) == g.apply(b)).collect();
    let index = |a: usize, b: usize| pairs.binary_search(&(a, b)).expect("fibre is G-stable");
    let mut action = Vec::with_capacity(group.order() * pairs.len());
    for e in group.elements() {
        action.extend(pairs.iter().map(|&(a, b)| index(x.act(e, a), y.act(e, b))));
    }
    let fibre = GSet::from_flat(pairs.len(), action);

    let mut sum = GSetSum::zero(table);
    let mut out = Vec::new();
    for o in orbits(table, &fibre) {
        sum.multiplicities[o.class] += 1;
        // move the orbit representative to a point whose stabilizer is exactly the class representative
        let moved = fibre.act(group.inv(o.conjugator), o.representative);
        let (a, b) = pairs[moved];
        let middle = TransitiveGSet::standard(table, o.class);
        out.push(PullbackOrbit {
            class: o.class,
            left: GMap::from_base_image(&middle, x, a)?,
            right: GMap::from_base_image(&middle, y, b)?,
        });
    }
    Ok(Pullback { sum, orbits: out })
}

/// Induction `ind_H^G` of a sum of transitive `H`-sets.
///
/// `h_table` must be the class table of `h` viewed as a group via [`Group::subgroup_as_group`].
pub fn induce(table: &SubgroupClassTable, h: &Subgroup, h_table: &SubgroupClassTable, x: &GSetSum) -> Result<GSetSum> {
    let (h_group, embedding) = table.group().subgroup_as_group(h);
    if h_group.fingerprint() != h_table.group().fingerprint() {
        return Err(input_err!("class table does not belong to the given subgroup"));
    }
    if x.group != h_group.fingerprint() || x.multiplicities.len() != h_table.len() {
        return Err(input_err!("G-set sum is not a sum of H-sets"));
    }
    let mut out = GSetSum::zero(table);
    for (c, &m) in x.multiplicities.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let local = h_table.representative(c);
        let global = Subgroup::from_elements(table.group(), local.elements().iter().map(|&i| embedding[i]))
            .expect("image of a subgroup");
        out.multiplicities[table.class_of(&global)] += m;
    }
    Ok(out)
}

/// Fixed-point counts `|(G/H)^K|`, rows `K` and columns `H`, both in class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarksMatrix {
    entries: Vec<Vec<i64>>,
}

impl MarksMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn mark(&self, k: usize, h: usize) -> i64 {
        self.entries[k][h]
    }

    /// Mark vector `(|X^K|)_K` of a sum of transitive G-sets.
    pub fn marks_of(&self, x: &GSetSum) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x.multiplicities()).map(|(&m, &n)| m * n as i64).sum())
            .collect()
    }

    /// The same matrix with classes listed by decreasing subgroup order.
    pub fn in_decreasing_order(&self) -> Vec<Vec<i64>> {
        let n = self.entries.len();
        (0..n).rev().map(|k| (0..n).rev().map(|h| self.entries[k][h]).collect()).collect()
    }

    pub fn is_lower_triangular_decreasing(&self) -> bool {
        let m = self.in_decreasing_order();
        m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| j <= i || x == 0))
            && (0..m.len()).all(|i| m[i][i] > 0)
    }

    pub fn determinant(&self) -> int::Int {
        int::det(&self.entries.iter().map(|r| int::to_ints(r)).collect::<Vec<_>>())
    }
}

pub fn table_of_marks(table: &SubgroupClassTable) -> MarksMatrix {
    let n = table.len();
    let spaces: Vec<_> = (0..n).map(|c| TransitiveGSet::standard(table, c)).collect();
    let entries = (0..n)
        .map(|k| {
            let kk = table.representative(k);
            spaces
                .iter()
                .map(|x| (0..x.len()).filter(|&p| kk.elements().iter().all(|&g| x.act(g, p) == p)).count() as i64)
                .collect()
        })
        .collect();
    MarksMatrix { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcore::double_cosets;

    fn table(spec: &str) -> SubgroupClassTable {
        SubgroupClassTable::new(&Group::parse(spec).unwrap())
    }

    #[test]
    fn decompositions() {
        let t = table("cyclic:4");
        let g = t.group();
        assert_eq!(orbit_decompose(&t, &GSet::regular(g)), GSetSum::basis(&t, 0));
        assert_eq!(orbit_decompose(&t, &GSet::trivial(g, 1)), GSetSum::basis(&t, 2));
        let v = table("klein");
        let h = TransitiveGSet::standard(&v, 1);
        let k = TransitiveGSet::standard(&v, 2);
        assert_eq!(orbit_decompose(&v, &h.as_gset().product(k.as_gset())), GSetSum::basis(&v, 0));
    }

    #[test]
    fn rejects_bad_actions() {
        let g = Group::parse("cyclic:2").unwrap();
        assert!(GSet::new(&g, vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(GSet::new(&g, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(GSet::new(&g, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn products_from_examples() {
        let t = table("cyclic:4");
        let (g, h) = (GSetSum::basis(&t, 0), GSetSum::basis(&t, 1));
        assert_eq!(product(&t, &h, &h).unwrap().multiplicities(), &[0, 2, 0]);
        assert_eq!(product(&t, &g, &h).unwrap().multiplicities(), &[2, 0, 0]);
        let v = table("klein");
        let p = product(&v, &GSetSum::basis(&v, 1), &GSetSum::basis(&v, 2)).unwrap();
        assert_eq!(p, GSetSum::basis(&v, 0));
        let other = table("cyclic:2");
        assert!(product(&t, &h, &GSetSum::basis(&other, 0)).is_err());
    }

    #[test]
    fn product_agrees_with_double_coset_formula() {
        // [G/H][G/K] = Σ_{HgK} [G/(H ∩ gKg⁻¹)]
        for spec in ["sym:3", "dihedral:4", "cyclic:6", "klein"] {
            let t = table(spec);
            let g = t.group();
            for a in 0..t.len() {
                for b in 0..t.len() {
                    let (h, k) = (t.representative(a), t.representative(b));
                    let mut expect = vec![0; t.len()];
                    for d in double_cosets(g, h, k) {
                        expect[t.class_of(&h.intersection(&k.conjugate_by(g, d)))] += 1;
                    }
                    let got = product(&t, &GSetSum::basis(&t, a), &GSetSum::basis(&t, b)).unwrap();
                    assert_eq!(got.multiplicities(), expect.as_slice(), "{spec} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn pullbacks() {
        let t = table("cyclic:4");
        let g = t.group();
        let free = TransitiveGSet::standard(&t, 0);
        let half = TransitiveGSet::standard(&t, 1);
        let point = TransitiveGSet::standard(&t, 2);
        let proj = GMap::from_base_image(&free, &half, 0).unwrap();
        let pb = pullback(&t, &proj, &proj).unwrap();
        assert_eq!(pb.sum.multiplicities(), &[2, 0, 0]);
        for o in &pb.orbits {
            assert!(o.left.is_equivariant(g) && o.right.is_equivariant(g));
            assert_eq!(proj.after(&o.left).unwrap().images, proj.after(&o.right).unwrap().images);
        }
        let id = GMap::identity(&half);
        let pb = pullback(&t, &id, &id).unwrap();
        assert_eq!(pb.sum, GSetSum::basis(&t, 1));
        // over a point the pullback is the product
        for a in 0..3 {
            for b in 0..3 {
                let x = TransitiveGSet::standard(&t, a);
                let y = TransitiveGSet::standard(&t, b);
                let fx = GMap::from_base_image(&x, &point, 0).unwrap();
                let fy = GMap::from_base_image(&y, &point, 0).unwrap();
                let pb = pullback(&t, &fx, &fy).unwrap();
                assert_eq!(pb.sum, product(&t, &GSetSum::basis(&t, a), &GSetSum::basis(&t, b)).unwrap());
            }
        }
        assert!(pullback(&t, &proj, &GMap::identity(&free)).is_err());
    }

    #[test]
    fn maps_need_fixed_base_image() {
        let t = table("cyclic:4");
        let half = TransitiveGSet::standard(&t, 1);
        let free = TransitiveGSet::standard(&t, 0);
        assert!(GMap::from_base_image(&half, &free, 0).is_err());
    }

    #[test]
    fn induction() {
        let t = table("cyclic:4");
        let h = t.representative(1).clone();
        let (hg, _) = t.group().subgroup_as_group(&h);
        let ht = SubgroupClassTable::new(&hg);
        let top = GSetSum::basis(&ht, 1);
        let free = GSetSum::basis(&ht, 0);
        assert_eq!(induce(&t, &h, &ht, &top).unwrap(), GSetSum::basis(&t, 1));
        assert_eq!(induce(&t, &h, &ht, &free).unwrap(), GSetSum::basis(&t, 0));
        let both = top.add(&free).unwrap();
        assert_eq!(induce(&t, &h, &ht, &both).unwrap().multiplicities(), &[1, 1, 0]);
    }

    #[test]
    fn marks() {
        let t = table("cyclic:4");
        let m = table_of_marks(&t);
        assert_eq!(m.in_decreasing_order(), vec![vec![1, 0, 0], vec![1, 2, 0], vec![1, 2, 4]]);
        assert!(m.is_lower_triangular_decreasing());
        for spec in ["sym:3", "klein", "dihedral:4", "sym:4"] {
            let t = table(spec);
            let m = table_of_marks(&t);
            let n = t.len();
            assert!(m.is_lower_triangular_decreasing(), "{spec}");
            assert_ne!(m.determinant(), int::int(0));
            for k in 0..n {
                assert_eq!(m.mark(k, n - 1), 1);
                assert_eq!(m.mark(k, 0), if k == 0 { t.group().order() as i64 } else { 0 });
            }
        }
    }
}
