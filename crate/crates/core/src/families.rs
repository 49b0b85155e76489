//! `p`-subgroups, `p`-elementary and `p`-hyperelementary subgroups.
//!
//! A group is `p`-hyperelementary when it is an extension `1 → C → H → P → 1` with
//! `C` cyclic of order prime to `p` and `P` a `p`-group, and `p`-elementary when the
//! extension is a direct product. In `C ⋊ P` every element mapping to a nontrivial
//! element of `P` has order divisible by `p`, so `C` is exactly the set of `p′`-order
//! elements. The detectors below therefore only look at that set: it must be a
//! cyclic normal subgroup of `p`-power index (hyperelementary), and additionally
//! central (elementary). [`oracle`] carries the structure-search definitions the
//! detectors are checked against.

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_power_of, is_prime};
use crate::error::{Error, Result};
use crate::group::{
    self, semidirect_cyclic, FiniteGroup, Subgroup, SubgroupClass, SubgroupLattice,
};

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Facts about the set of `p′`-order elements of a subgroup.
struct PPrimePart {
    elements: Vec<usize>,
    is_subgroup: bool,
    cyclic: bool,
    normal: bool,
    central: bool,
    p_power_index: bool,
}

fn p_prime_part(g: &FiniteGroup, h: &[usize], p: u64) -> PPrimePart {
    let elements: Vec<usize> = h
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) as u64 % p != 0)
        .collect();
    let is_subgroup = g.is_subgroup(&elements);
    let s = Subgroup::from_sorted(elements.clone());
    let cyclic = is_subgroup && elements.iter().any(|&x| g.element_order(x) == elements.len());
    let normal = is_subgroup
        && h.iter()
            .all(|&y| elements.iter().all(|&x| s.contains(g.conjugate(x, y))));
    let central = is_subgroup && h.iter().all(|&y| elements.iter().all(|&x| g.commutes(x, y)));
    let p_power_index = h.len() % elements.len() == 0 && is_power_of((h.len() / elements.len()) as u64, p);
    PPrimePart {
        elements,
        is_subgroup,
        cyclic,
        normal,
        central,
        p_power_index,
    }
}

pub fn is_p_group(g: &FiniteGroup, p: u64) -> Result<bool> {
    check_prime(p)?;
    Ok(is_power_of(g.order() as u64, p))
}

pub fn is_p_elementary(g: &FiniteGroup, p: u64) -> Result<bool> {
    is_p_elementary_in(g, &g.whole(), p)
}

pub fn is_p_hyperelementary(g: &FiniteGroup, p: u64) -> Result<bool> {
    is_p_hyperelementary_in(g, &g.whole(), p)
}

/// `p`-elementary test for a subgroup `h` of `g`.
pub fn is_p_elementary_in(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<bool> {
    check_prime(p)?;
    let part = p_prime_part(g, h.members(), p);
    Ok(part.is_subgroup && part.cyclic && part.central && part.p_power_index)
}

/// `p`-hyperelementary test for a subgroup `h` of `g`.
pub fn is_p_hyperelementary_in(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<bool> {
    check_prime(p)?;
    let part = p_prime_part(g, h.members(), p);
    Ok(part.is_subgroup && part.cyclic && part.normal && part.p_power_index)
}

/// The normal cyclic `p′`-subgroup `C` of a `p`-hyperelementary subgroup.
pub fn hyperelementary_kernel(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Subgroup> {
    if !is_p_hyperelementary_in(g, h, p)? {
        return Err(Error::NotHyperelementary(p));
    }
    Ok(Subgroup::from_sorted(p_prime_part(g, h.members(), p).elements))
}

/// The three nested families of subgroup classes for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub prime: u64,
    pub p_subgroup_classes: Vec<SubgroupClass>,
    pub p_elementary_classes: Vec<SubgroupClass>,
    pub p_hyperelementary_classes: Vec<SubgroupClass>,
}

pub fn family_report(g: &FiniteGroup, p: u64) -> Result<FamilyReport> {
    family_report_with(g, &SubgroupLattice::new(g), p)
}

pub fn family_report_with(g: &FiniteGroup, lattice: &SubgroupLattice, p: u64) -> Result<FamilyReport> {
    check_prime(p)?;
    let mut report = FamilyReport {
        prime: p,
        p_subgroup_classes: Vec::new(),
        p_elementary_classes: Vec::new(),
        p_hyperelementary_classes: Vec::new(),
    };
    for class in lattice.classes() {
        let h = &class.representative;
        if is_power_of(h.order() as u64, p) {
            report.p_subgroup_classes.push(class.clone());
        }
        if is_p_elementary_in(g, h, p)? {
            report.p_elementary_classes.push(class.clone());
        }
        if is_p_hyperelementary_in(g, h, p)? {
            report.p_hyperelementary_classes.push(class.clone());
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PerpElement {
    pub element: usize,
    pub order: usize,
}

/// `C_G^⊥(P)`: elements commuting with all of `P` whose order is prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PerpSet {
    pub base: Subgroup,
    pub elements: Vec<PerpElement>,
}

pub fn c_perp(g: &FiniteGroup, base: &Subgroup, p: u64) -> Result<PerpSet> {
    check_prime(p)?;
    if !is_power_of(base.order() as u64, p) {
        return Err(Error::NotPGroup(p));
    }
    let elements = g
        .centralizer(base)
        .members()
        .iter()
        .map(|&x| PerpElement {
            element: x,
            order: g.element_order(x),
        })
        .filter(|e| e.order as u64 % p != 0)
        .collect();
    Ok(PerpSet {
        base: base.clone(),
        elements,
    })
}

/// `k ∈ I(g)`: every prime factor of `k` divides the order of `g`.
pub fn in_i(k: u64, element_order: u64) -> bool {
    arith::prime_divisors(k)
        .into_iter()
        .all(|q| element_order % q == 0)
}

/// All `k ≤ bound` in `I(g)` for an element of the given order, ascending.
pub fn i_set(element_order: u64, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&k| in_i(k, element_order)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclicQuotientOutcome {
    /// Every prime `q ≠ p` dividing `|G|` divides `|G^ab|`.
    pub hypothesis_holds: bool,
    /// `G` is `p`-elementary.
    pub conclusion_holds: bool,
}

/// Checks "hyperelementary with cyclic `q`-quotients for all `q ≠ p` implies
/// elementary" on one group. A hypothesis without conclusion is reported as
/// [`Error::Internal`].
pub fn cyclic_quotient_check(g: &FiniteGroup, p: u64) -> Result<CyclicQuotientOutcome> {
    if !is_p_hyperelementary(g, p)? {
        return Err(Error::NotHyperelementary(p));
    }
    let ab = g.abelianization_order() as u64;
    let hypothesis_holds = arith::prime_divisors(g.order() as u64)
        .into_iter()
        .filter(|&q| q != p)
        .all(|q| ab % q == 0);
    let conclusion_holds = is_p_elementary(g, p)?;
    if hypothesis_holds && !conclusion_holds {
        return Err(Error::Internal(format!(
            "{} is {p}-hyperelementary with all cyclic quotients but not {p}-elementary",
            g.label()
        )));
    }
    Ok(CyclicQuotientOutcome {
        hypothesis_holds,
        conclusion_holds,
    })
}

/// A Sylow `p`-subgroup (the least one in lattice order).
pub fn sylow_subgroup(lattice: &SubgroupLattice, order: usize, p: u64) -> Subgroup {
    let target = arith::primary_part(order as u64, p) as usize;
    lattice
        .subgroups()
        .iter()
        .find(|s| s.order() == target)
        .cloned()
        .expect("Sylow subgroups exist")
}

/// The Sylow `p`-subgroup is normal and `C_G(P) ⊆ P` for each nontrivial subgroup
/// `P` of it. When this holds (over a regular coefficient ring), induction from the
/// Sylow subgroup identifies `NK_n(RG)_(p)` with the `G/G_p`-invariants of
/// `NK_n(RG_p)`.
pub fn sylow_centralizer_condition(g: &FiniteGroup, p: u64) -> Result<bool> {
    check_prime(p)?;
    if g.order() as u64 % p != 0 {
        return Err(Error::PrimeDoesNotDivide {
            prime: p,
            order: g.order(),
        });
    }
    let lattice = SubgroupLattice::new(g);
    let sylow = sylow_subgroup(&lattice, g.order(), p);
    if !g.is_normal(&sylow) {
        return Ok(false);
    }
    Ok(lattice
        .subgroups()
        .iter()
        .filter(|s| s.order() > 1 && s.is_subset_of(&sylow))
        .all(|s| g.centralizer(s).is_subset_of(s)))
}

/// The built-in `p`-groups of order at most `bound`: cyclic `p`-groups (including
/// the trivial group), `C_p × C_p`, and for `p = 2` also `D_8` and `Q_8`.
pub fn corpus_p_groups(p: u64, bound: usize) -> Vec<FiniteGroup> {
    let cap = bound.max(1);
    let mut out = Vec::new();
    let mut q = 1u64;
    while q as usize <= bound {
        out.push(group::make_group_with_cap(&format!("cyclic:{q}"), cap).expect("cyclic p-group"));
        q *= p;
    }
    if (p * p) as usize <= bound {
        let spec = format!("product(cyclic:{p},cyclic:{p})");
        out.push(group::make_group_with_cap(&spec, cap).expect("elementary abelian"));
    }
    if p == 2 && bound >= 8 {
        out.push(group::make_group_with_cap("dihedral:4", cap).expect("D8"));
        out.push(group::quaternion8());
    }
    out
}

/// All `C ⋊_α P` with `C` cyclic of order prime to `p`, `P` from
/// [`corpus_p_groups`], `α` any homomorphism `P → Aut(C)` and `|C|·|P| ≤ bound`.
///
/// Isomorphic groups may appear more than once. Sorted by order, then label.
pub fn hyperelementary_corpus(p: u64, bound: usize) -> Result<Vec<FiniteGroup>> {
    check_prime(p)?;
    let mut out = Vec::new();
    for pg in corpus_p_groups(p, bound) {
        let max_c = bound / pg.order();
        for c in (1..=max_c as u64).filter(|c| c % p != 0) {
            for action in group::homomorphisms_to_units(&pg, c) {
                out.push(semidirect_cyclic(c, &pg, &action, bound.max(1))?);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), a.label()).cmp(&(b.order(), b.label())));
    Ok(out)
}

/// Definition-unfolding versions of the detectors: explicit searches for the
/// subgroups `C` and `P` realizing the extension. Independent of the `p′`-element
/// shortcut used by the detectors, and much slower.
pub mod oracle {
    use super::*;
    use crate::group::all_subgroups;

    /// There is a cyclic subgroup `C` of order prime to `p` and a `p`-subgroup `P`,
    /// commuting elementwise, with `|C|·|P| = |H|`.
    pub fn is_p_elementary(g: &FiniteGroup, h: &Subgroup, p: u64) -> bool {
        let (hg, _) = g.subgroup_as_group(h);
        let subs = all_subgroups(&hg);
        let cyclic: Vec<&Subgroup> = subs
            .iter()
            .filter(|c| c.order() as u64 % p != 0 && c.members().iter().any(|&x| hg.element_order(x) == c.order()))
            .collect();
        let pgroups: Vec<&Subgroup> = subs
            .iter()
            .filter(|s| is_power_of(s.order() as u64, p))
            .collect();
        cyclic.iter().any(|c| {
            pgroups.iter().any(|q| {
                c.order() * q.order() == hg.order()
                    && c.members()
                        .iter()
                        .all(|&x| q.members().iter().all(|&y| hg.commutes(x, y)))
            })
        })
    }

    /// There is a cyclic normal subgroup `C` of order prime to `p` with `p`-power index.
    pub fn is_p_hyperelementary(g: &FiniteGroup, h: &Subgroup, p: u64) -> bool {
        let (hg, _) = g.subgroup_as_group(h);
        all_subgroups(&hg).iter().any(|c| {
            c.order() as u64 % p != 0
                && c.members().iter().any(|&x| hg.element_order(x) == c.order())
                && is_power_of((hg.order() / c.order()) as u64, p)
                && hg.is_normal(c)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn class_orders(classes: &[SubgroupClass]) -> Vec<usize> {
        classes.iter().map(SubgroupClass::order).collect()
    }

    #[test]
    fn p_group_detection() {
        assert!(is_p_group(&make_group("cyclic:1").unwrap(), 5).unwrap());
        assert!(is_p_group(&make_group("dihedral:4").unwrap(), 2).unwrap());
        assert!(!is_p_group(&make_group("sym:3").unwrap(), 2).unwrap());
        assert_eq!(is_p_group(&make_group("sym:3").unwrap(), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn elementary_and_hyperelementary() {
        let s3 = make_group("sym:3").unwrap();
        let c6 = make_group("cyclic:6").unwrap();
        let a4 = make_group("perm(4;(1 2 3);(1 2)(3 4))").unwrap();
        assert!(is_p_elementary(&c6, 2).unwrap());
        assert!(!is_p_elementary(&s3, 2).unwrap());
        assert!(is_p_elementary(&make_group("dihedral:4").unwrap(), 2).unwrap());
        assert!(is_p_hyperelementary(&s3, 2).unwrap());
        assert!(!is_p_hyperelementary(&s3, 3).unwrap());
        assert!(!is_p_hyperelementary(&a4, 2).unwrap());
        // A4 = V4 ⋊ C3 is not 3-hyperelementary either: V4 is not cyclic
        assert!(!is_p_hyperelementary(&a4, 3).unwrap());
    }

    #[test]
    fn sym3_family_report() {
        let s3 = make_group("sym:3").unwrap();
        let r = family_report(&s3, 2).unwrap();
        assert_eq!(class_orders(&r.p_subgroup_classes), vec![1, 2]);
        assert_eq!(class_orders(&r.p_elementary_classes), vec![1, 2, 3]);
        assert_eq!(class_orders(&r.p_hyperelementary_classes), vec![1, 2, 3, 6]);
    }

    #[test]
    fn p_group_family_report_is_everything() {
        let d8 = make_group("dihedral:4").unwrap();
        let r = family_report(&d8, 2).unwrap();
        let all = subgroup_classes_of(&d8);
        assert_eq!(r.p_subgroup_classes, all);
        assert_eq!(r.p_elementary_classes, all);
        assert_eq!(r.p_hyperelementary_classes, all);
        let c6 = make_group("cyclic:6").unwrap();
        let r = family_report(&c6, 2).unwrap();
        assert_eq!(r.p_elementary_classes.len(), 4);
        assert_eq!(r.p_hyperelementary_classes, r.p_elementary_classes);
    }

    fn subgroup_classes_of(g: &FiniteGroup) -> Vec<SubgroupClass> {
        crate::group::subgroup_classes(g)
    }

    #[test]
    fn c_perp_examples() {
        let s3 = make_group("sym:3").unwrap();
        let perp = c_perp(&s3, &s3.trivial(), 2).unwrap();
        let orders: Vec<usize> = perp.elements.iter().map(|e| e.order).collect();
        assert_eq!(orders.len(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let perp = c_perp(&s3, &s3.closure(&[t]), 2).unwrap();
        assert_eq!(perp.elements, vec![PerpElement { element: s3.identity(), order: 1 }]);
        let d8 = make_group("dihedral:4").unwrap();
        for s in crate::group::all_subgroups(&d8) {
            assert_eq!(c_perp(&d8, &s, 2).unwrap().elements.len(), 1);
        }
        let c3 = s3.closure(&[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
        assert_eq!(c_perp(&s3, &c3, 2), Err(Error::NotPGroup(2)));
    }

    #[test]
    fn i_sets() {
        assert!(in_i(1, 1));
        assert!(in_i(1, 7));
        assert_eq!(i_set(3, 30), vec![1, 3, 9, 27]);
        assert_eq!(i_set(6, 20), vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
    }

    #[test]
    fn cyclic_quotient_examples() {
        let s3 = make_group("sym:3").unwrap();
        assert_eq!(
            cyclic_quotient_check(&s3, 2).unwrap(),
            CyclicQuotientOutcome { hypothesis_holds: false, conclusion_holds: false }
        );
        let c6 = make_group("cyclic:6").unwrap();
        assert_eq!(
            cyclic_quotient_check(&c6, 2).unwrap(),
            CyclicQuotientOutcome { hypothesis_holds: true, conclusion_holds: true }
        );
        let c9 = make_group("cyclic:9").unwrap();
        assert_eq!(
            cyclic_quotient_check(&c9, 3).unwrap(),
            CyclicQuotientOutcome { hypothesis_holds: true, conclusion_holds: true }
        );
        assert_eq!(cyclic_quotient_check(&s3, 3), Err(Error::NotHyperelementary(3)));
    }

    #[test]
    fn sylow_centralizer_examples() {
        assert!(sylow_centralizer_condition(&make_group("sym:3").unwrap(), 3).unwrap());
        assert!(!sylow_centralizer_condition(&make_group("cyclic:6").unwrap(), 3).unwrap());
        assert!(!sylow_centralizer_condition(&make_group("sym:3").unwrap(), 2).unwrap());
        assert!(matches!(
            sylow_centralizer_condition(&make_group("sym:3").unwrap(), 5),
            Err(Error::PrimeDoesNotDivide { .. })
        ));
        // C7 ⋊ C3 with faithful action: Sylow-7 normal and self-centralizing
        let f21 = make_group("semidirect(c:7,p:cyclic:3,action:[2])").unwrap();
        assert!(sylow_centralizer_condition(&f21, 7).unwrap());
    }

    #[test]
    fn corpus_examples() {
        let small = hyperelementary_corpus(2, 6).unwrap();
        let s3_like = small.iter().filter(|g| g.order() == 6 && !g.is_abelian()).count();
        let c6_like = small.iter().filter(|g| g.order() == 6 && g.is_abelian()).count();
        assert_eq!((s3_like, c6_like), (1, 1));
        let tiny = hyperelementary_corpus(2, 2).unwrap();
        let orders: Vec<usize> = tiny.iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![1, 2]);
        let three = hyperelementary_corpus(3, 24).unwrap();
        let sixes: Vec<&FiniteGroup> = three.iter().filter(|g| g.order() == 6).collect();
        assert_eq!(sixes.len(), 1);
        assert!(sixes[0].is_abelian());
        for g in &three {
            assert!(is_p_hyperelementary(g, 3).unwrap(), "{}", g.label());
        }
    }
}
