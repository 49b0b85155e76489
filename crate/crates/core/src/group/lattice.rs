//! Subgroups, the subgroup lattice and conjugacy classes of subgroups.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::FiniteGroup;

/// A subgroup, stored as the sorted list of its element indices.
///
/// The parent group is not referenced; callers pass it alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a sorted, deduplicated member list. No closure check is made.
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Subgroup {
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub(crate) fn mask(&self, order: usize) -> Vec<bool> {
        let mut m = vec![false; order];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    /// `g⁻¹ S g`.
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&x| group.conjugate(x, g)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    /// True iff `self` is a subgroup of `group` (identity, closure).
    pub fn is_valid_in(&self, group: &FiniteGroup) -> bool {
        self.members.iter().all(|&x| x < group.order()) && group.is_subgroup(&self.members)
    }
}

/// A conjugacy class of subgroups, represented by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// All subgroups of a group together with their conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    classes: Vec<SubgroupClass>,
    class_of: HashMap<Subgroup, usize>,
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Self {
        let subgroups = enumerate_subgroups(group);
        let mut class_of: HashMap<Subgroup, usize> = HashMap::new();
        let mut raw: Vec<(Subgroup, Vec<Subgroup>)> = Vec::new();
        for s in &subgroups {
            if class_of.contains_key(s) {
                continue;
            }
            let conjugates: HashSet<Subgroup> =
                group.elements().map(|g| s.conjugate_by(group, g)).collect();
            let mut conjugates: Vec<Subgroup> = conjugates.into_iter().collect();
            conjugates.sort();
            let idx = raw.len();
            for c in &conjugates {
                class_of.insert(c.clone(), idx);
            }
            raw.push((conjugates[0].clone(), conjugates));
        }
        // Subgroups are visited in (order, members) order and the least conjugate has
        // the same order, so classes are already sorted by (order, representative)
        // except within an order where a later subgroup may have a smaller
        // representative. Sort and renumber to make that exact.
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = &raw[a].0;
            let rb = &raw[b].0;
            (ra.order(), ra).cmp(&(rb.order(), rb))
        });
        let mut renumber = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        for v in class_of.values_mut() {
            *v = renumber[*v];
        }
        let classes = order
            .iter()
            .map(|&old| SubgroupClass {
                representative: raw[old].0.clone(),
                class_size: raw[old].1.len(),
            })
            .collect();
        SubgroupLattice {
            subgroups,
            classes,
            class_of,
        }
    }

    /// Every subgroup, sorted by order then member list.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Conjugacy classes sorted by order then representative.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Index into [`SubgroupLattice::classes`] of the class containing `s`.
    pub fn class_index(&self, s: &Subgroup) -> Option<usize> {
        self.class_of.get(s).copied()
    }

    pub fn class_of(&self, s: &Subgroup) -> Option<&SubgroupClass> {
        self.class_index(s).map(|i| &self.classes[i])
    }
}

/// Every subgroup of `group` exactly once, sorted by (order, members).
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    enumerate_subgroups(group)
}

pub fn subgroup_classes(group: &FiniteGroup) -> Vec<SubgroupClass> {
    SubgroupLattice::new(group).classes
}

/// Cyclic subgroups first, then repeated joins with cyclic subgroups until no new
/// subgroup appears. Every subgroup is a join of cyclic subgroups, so this is complete.
fn enumerate_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let n = group.order();
    // (subgroup, generating set)
    let mut cyclic: Vec<(Subgroup, usize)> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for x in group.elements() {
        let c = group.closure(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((c, x));
        }
    }
    let mut all: Vec<(Subgroup, Vec<usize>)> =
        cyclic.iter().map(|(c, x)| (c.clone(), vec![*x])).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            let mask = all[i].0.mask(n);
            for (c, x) in &cyclic {
                if mask[*x] || c.order() == 1 {
                    continue;
                }
                let mut gens = all[i].1.clone();
                gens.push(*x);
                let j = group.closure(&gens);
                if seen.insert(j.clone()) {
                    all.push((j, gens));
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = all.into_iter().map(|(s, _)| s).collect();
    subs.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    subs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn trivial_group_has_one_subgroup() {
        let g = make_group("cyclic:1").unwrap();
        assert_eq!(all_subgroups(&g), vec![g.trivial()]);
    }

    #[test]
    fn sym3_lattice() {
        let g = make_group("sym:3").unwrap();
        let subs = all_subgroups(&g);
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let classes = subgroup_classes(&g);
        let sizes: Vec<usize> = classes.iter().map(|c| c.class_size).collect();
        assert_eq!(sizes, vec![1, 3, 1, 1]);
    }

    #[test]
    fn cyclic12_has_one_subgroup_per_divisor() {
        let g = make_group("cyclic:12").unwrap();
        let orders: Vec<usize> = all_subgroups(&g).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn dihedral8_has_eight_classes() {
        let g = make_group("dihedral:4").unwrap();
        assert_eq!(all_subgroups(&g).len(), 10);
        assert_eq!(subgroup_classes(&g).len(), 8);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = make_group("product(cyclic:4,cyclic:2)").unwrap();
        assert!(subgroup_classes(&g).iter().all(|c| c.class_size == 1));
    }

    #[test]
    fn class_sizes_are_normalizer_indices() {
        let g = make_group("sym:4").unwrap();
        let lattice = SubgroupLattice::new(&g);
        assert_eq!(lattice.subgroups().len(), 30);
        assert_eq!(lattice.classes().len(), 11);
        for c in lattice.classes() {
            assert_eq!(c.class_size, g.order() / g.normalizer(&c.representative).order());
        }
        let total: usize = lattice.classes().iter().map(|c| c.class_size).sum();
        assert_eq!(total, lattice.subgroups().len());
    }

    #[test]
    fn representatives_are_least_conjugates() {
        let g = make_group("sym:4").unwrap();
        let lattice = SubgroupLattice::new(&g);
        for s in lattice.subgroups() {
            let class = lattice.class_of(s).unwrap();
            assert!(class.representative <= *s);
            assert_eq!(lattice.class_of(&s.conjugate_by(&g, 5)), Some(class));
        }
    }
}
