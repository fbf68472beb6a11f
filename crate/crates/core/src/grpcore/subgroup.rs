use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::group::Group;

/// A subgroup, stored as the sorted list of its element indices.
///
/// The derived ordering is lexicographic on that list; span canonical forms depend on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated_by(group: &Group, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup(set.into_iter().collect())
    }

    pub fn trivial() -> Subgroup {
        Subgroup(vec![0])
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup(group.elements().collect())
    }

    /// Wraps a list of elements after checking the subgroup axioms.
    pub fn from_elements(group: &Group, elements: impl IntoIterator<Item = usize>) -> Option<Subgroup> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if !set.contains(&0) || set.iter().any(|&x| x >= group.order()) {
            return None;
        }
        let closed = set.iter().all(|&a| set.contains(&group.inv(a)) && set.iter().all(|&b| set.contains(&group.mul(a, b))));
        closed.then(|| Subgroup(set.into_iter().collect()))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// `g H g⁻¹`
    pub fn conjugate_by(&self, group: &Group, g: usize) -> Subgroup {
        let mut v: Vec<usize> = self.0.iter().map(|&x| group.conjugate(g, x)).collect();
        v.sort_unstable();
        Subgroup(v)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn normalizer(&self, group: &Group) -> Subgroup {
        Subgroup(group.elements().filter(|&g| &self.conjugate_by(group, g) == self).collect())
    }

    /// Least element of the left coset `g H`.
    pub fn left_coset_min(&self, group: &Group, g: usize) -> usize {
        self.0.iter().map(|&h| group.mul(g, h)).min().expect("subgroups are non-empty")
    }

    /// Left cosets `gH` in order of their least elements; coset 0 is `H` itself.
    pub fn left_cosets(&self, group: &Group) -> Vec<Vec<usize>> {
        let mut seen = vec![false; group.order()];
        let mut cosets = Vec::with_capacity(group.order() / self.order());
        for g in group.elements() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = self.0.iter().map(|&h| group.mul(g, h)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            cosets.push(c);
        }
        cosets
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    /// The lexicographically least member.
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    /// Normalizer of the representative.
    pub normalizer: Subgroup,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All subgroups of a group, grouped into conjugacy classes.
///
/// Classes are sorted by (subgroup order, least member), so class 0 is the trivial
/// subgroup and the last class is the whole group.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClassTable {
    group: Group,
    classes: Vec<SubgroupClass>,
    /// subgroup -> (class index, t) with subgroup = t · representative · t⁻¹
    #[serde(skip)]
    lookup: HashMap<Subgroup, (usize, usize)>,
}

impl SubgroupClassTable {
    /// Enumerates subgroups as closures of ≤2-generated subgroups followed by iterated joins.
    pub fn new(group: &Group) -> SubgroupClassTable {
        let mut all: BTreeSet<Subgroup> = BTreeSet::new();
        for a in group.elements() {
            for b in a..group.order() {
                all.insert(Subgroup::generated_by(group, &[a, b]));
            }
        }
        loop {
            let current: Vec<Subgroup> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, h) in current.iter().enumerate() {
                for k in &current[i + 1..] {
                    if h.is_subgroup_of(k) || k.is_subgroup_of(h) {
                        continue;
                    }
                    let gens: Vec<usize> = h.elements().iter().chain(k.elements()).copied().collect();
                    grew |= all.insert(Subgroup::generated_by(group, &gens));
                }
            }
            if !grew {
                break;
            }
        }

        let mut assigned: HashMap<Subgroup, usize> = HashMap::new();
        let mut raw: Vec<Vec<Subgroup>> = Vec::new();
        for h in &all {
            if assigned.contains_key(h) {
                continue;
            }
            let members: BTreeSet<Subgroup> = group.elements().map(|g| h.conjugate_by(group, g)).collect();
            for m in &members {
                assigned.insert(m.clone(), raw.len());
            }
            raw.push(members.into_iter().collect());
        }
        raw.sort_by(|a, b| (a[0].order(), &a[0]).cmp(&(b[0].order(), &b[0])));

        let mut lookup = HashMap::new();
        let classes: Vec<SubgroupClass> = raw
            .into_iter()
            .enumerate()
            .map(|(idx, members)| {
                let rep = members[0].clone();
                for g in group.elements() {
                    lookup.entry(rep.conjugate_by(group, g)).or_insert((idx, g));
                }
                SubgroupClass { normalizer: rep.normalizer(group), representative: rep, members }
            })
            .collect();
        SubgroupClassTable { group: group.clone(), classes, lookup }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn representative(&self, i: usize) -> &Subgroup {
        &self.classes[i].representative
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class of an arbitrary subgroup, with `t` such that `h = t · rep · t⁻¹`.
    pub fn locate(&self, h: &Subgroup) -> Option<(usize, usize)> {
        self.lookup.get(h).copied()
    }

    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.locate(h).expect("subgroup of this group").0
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(SubgroupClass::size).sum()
    }

    /// Short label for a class: `1`, `G`, or `H<i>` for everything in between.
    pub fn label(&self, i: usize) -> String {
        if i == 0 {
            "1".into()
        } else if i == self.whole_class() {
            "G".into()
        } else {
            format!("H{i}")
        }
    }

    /// True iff for every divisor `d` of `|G|` there is exactly one class of subgroups of order `d`.
    pub fn unique_class_per_divisor(&self) -> bool {
        let n = self.group.order();
        (1..=n).filter(|d| n % d == 0).all(|d| self.classes.iter().filter(|c| c.order() == d).count() == 1)
    }
}

/// One representative (the least element) of every double coset `HgK`, in increasing order.
pub fn double_cosets(group: &Group, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if seen[g] {
            continue;
        }
        reps.push(g);
        for &a in h.elements() {
            let ag = group.mul(a, g);
            for &b in k.elements() {
                seen[group.mul(ag, b)] = true;
            }
        }
    }
    reps
}

pub fn is_square_free(n: u64) -> bool {
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Returns `Some(p)` if `n` is a positive power of the prime `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}
