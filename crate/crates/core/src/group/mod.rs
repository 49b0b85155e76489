//! Finite groups as explicit multiplication tables over indexed element sets.
//!
//! Every group handled by this crate is small (a few hundred elements at most), so
//! we trade generality for the ability to iterate exhaustively: a [`FiniteGroup`]
//! stores its full Cayley table, inverse table and a generating set. Subgroups are
//! sorted index sets ([`Subgroup`]); homomorphisms are total index maps
//! ([`GroupHom`]).

mod build;
mod hom;
mod lattice;
mod spec;

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use build::{dihedral, homomorphisms_to_units, quaternion8, semidirect_cyclic, symmetric};
pub use hom::{quotient, GroupHom};
pub use lattice::{all_subgroups, subgroup_classes, Subgroup, SubgroupClass, SubgroupLattice};
pub use spec::{make_group, make_group_with_cap};

/// Default bound on the order of constructed groups.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order()`. The table is row-major:
/// `compose(a, b)` is the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a raw table, validating closure, identity and inverses.
    ///
    /// Associativity is not checked here (it costs `O(n³)`); see [`FiniteGroup::check_axioms`].
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        names: Vec<String>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        if order == 0 || table.len() != order * order || names.len() != order {
            return Err(Error::InvalidArgument("table shape does not match order".into()));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidArgument("table is not closed".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidArgument("no two-sided identity".into()))?;
        let mut inverses = vec![0u32; order];
        for (x, inv) in inverses.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::InvalidArgument(format!("element {x} has no inverse")))?;
            if table[y * order + x] as usize != identity {
                return Err(Error::InvalidArgument(format!("inverse of {x} is one-sided")));
            }
            *inv = y as u32;
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidArgument("generator out of range".into()));
        }
        Ok(FiniteGroup {
            label: label.into(),
            order,
            table,
            inverses,
            identity,
            generators,
            names,
        })
    }

    /// Generates the group spanned by `gens` under `mul`, breadth first from `identity`.
    ///
    /// Element 0 is the identity and elements are numbered in discovery order, so the
    /// result is deterministic for a fixed generator list.
    pub fn generate<T, F, N>(
        label: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        name: N,
        cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        N: Fn(&T) -> String,
    {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for s in gens {
                let y = mul(&x, s);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = mul(a, b);
                let k = *index
                    .get(&c)
                    .ok_or_else(|| Error::Internal("generated set not closed".into()))?;
                table[i * n + j] = k as u32;
            }
        }
        let mut generators: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        generators.dedup();
        let names = elems.iter().map(name).collect();
        FiniteGroup::from_table(label, n, table, names, generators)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `a` raised to an integer power (negative powers allowed).
    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inverse(a) } else { a };
        let mut e = exp.unsigned_abs() % self.element_order(a) as u64;
        let mut acc = self.identity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(acc, b);
            }
            b = self.compose(b, b);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.compose(self.compose(self.inverse(g), x), g)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.compose(a, b) == self.compose(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    /// Exhaustive check of the group axioms: associativity on all triples, identity,
    /// inverses. Cubic in the order.
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.compose(self.identity, a) != a || self.compose(a, self.identity) != a {
                return false;
            }
            if self.compose(self.inverse(a), a) != self.identity {
                return false;
            }
            for b in 0..n {
                let ab = self.compose(a, b);
                for c in 0..n {
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut queue = vec![self.identity];
        seen[self.identity] = true;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.compose(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        Subgroup::from_mask(&seen)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements().collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity])
    }

    /// True iff `members` contains the identity and is closed under products.
    /// Closure under products suffices for finite sets.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &m in members {
            mask[m] = true;
        }
        mask[self.identity]
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| mask[self.compose(a, b)]))
    }

    /// `{g : gx = xg for all x in s}`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| s.members().iter().all(|&x| self.commutes(g, x)))
            .collect();
        Subgroup::from_sorted(members)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| s.members().iter().all(|&x| s.contains(self.conjugate(x, g))))
            .collect();
        Subgroup::from_sorted(members)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.elements()
            .all(|g| s.members().iter().all(|&x| s.contains(self.conjugate(x, g))))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let c = self.compose(
                    self.compose(self.inverse(a), self.inverse(b)),
                    self.compose(a, b),
                );
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// Order of `G / [G, G]`.
    pub fn abelianization_order(&self) -> usize {
        self.order / self.derived_subgroup().order()
    }

    /// The subgroup `s` as a group in its own right, with the embedding into `self`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (FiniteGroup, GroupHom) {
        let members = s.members();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let n = members.len();
        let mut table = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * n + j] = pos[&self.compose(a, b)] as u32;
            }
        }
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        let gens: Vec<usize> = (0..n).filter(|&i| members[i] != self.identity).collect();
        let group = FiniteGroup::from_table(format!("sub({})", self.label), n, table, names, gens)
            .expect("restriction of a group table to a subgroup is a group table");
        let embedding = GroupHom::new(members.to_vec());
        (group, embedding)
    }

    /// Renumbers the elements by `perm` (element `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.order;
        let mut inv = vec![0; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = perm[self.compose(inv[a], inv[b])] as u32;
            }
        }
        let names = (0..n).map(|y| self.names[inv[y]].clone()).collect();
        let gens = self.generators.iter().map(|&g| perm[g]).collect();
        FiniteGroup::from_table(self.label.clone(), n, table, names, gens)
            .expect("relabeling preserves the group axioms")
    }

    /// Direct product with the element `(a, b)` numbered `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
        let n = self.order * other.order;
        if n > cap {
            return Err(Error::CapExceeded { cap });
        }
        let m = other.order;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.compose(x / m, y / m);
                let b = other.compose(x % m, y % m);
                table[x * n + y] = (a * m + b) as u32;
            }
        }
        let names = (0..n)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        let mut gens: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| g * m + other.identity)
            .collect();
        gens.extend(other.generators.iter().map(|&h| self.identity * m + h));
        FiniteGroup::from_table(
            format!("product({},{})", self.label, other.label),
            n,
            table,
            names,
            gens,
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_subgroups() {
        let s3 = make_group("sym:3").unwrap();
        assert_eq!(s3.abelianization_order(), 2);
        let a4 = make_group("perm(4;(1 2 3);(1 2)(3 4))").unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.derived_subgroup().order(), 4);
        assert_eq!(a4.abelianization_order(), 3);
        let c12 = make_group("cyclic:12").unwrap();
        assert_eq!(c12.abelianization_order(), 12);
    }

    #[test]
    fn centralizers() {
        let s3 = make_group("sym:3").unwrap();
        assert_eq!(s3.centralizer(&s3.trivial()), s3.whole());
        let c3 = s3.closure(&[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
        assert_eq!(s3.centralizer(&c3), c3);
        let c6 = make_group("cyclic:6").unwrap();
        let sub = c6.closure(&[2]);
        assert_eq!(c6.centralizer(&sub), c6.whole());
    }

    #[test]
    fn powers_and_orders() {
        let c12 = make_group("cyclic:12").unwrap();
        assert_eq!(c12.element_order(4), 3);
        assert_eq!(c12.pow(5, 3), 3);
        assert_eq!(c12.pow(5, -1), 7);
        assert_eq!(c12.pow(0, 7), 0);
    }

    #[test]
    fn relabel_preserves_axioms() {
        let d4 = make_group("dihedral:4").unwrap();
        let perm: Vec<usize> = (0..8).rev().collect();
        let r = d4.relabel(&perm);
        assert!(r.check_axioms());
        assert_eq!(r.identity(), 7);
        assert_eq!(r.center().order(), 2);
    }

    #[test]
    fn from_table_rejects_non_groups() {
        // {0,1} with 1·1 = 1 has no inverse for 1
        let err = FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1], vec!["e".into(), "x".into()], vec![]);
        assert!(err.is_err());
    }
}
