//! Subgroups of `G × Z/N` via Goursat's lemma.
//!
//! A subgroup `H ⊆ G × Z/N` is determined by its first projection `A`, the kernel
//! side `B = {a : (a, 0) ∈ H}`, the cyclic subgroups `C2 ⊆ C1 ⊆ Z/N` (orders `d2`
//! and `d1`) and an isomorphism `A/B → C1/C2`. Since `Z/N` is cyclic, the data
//! reduce to a pair of subgroups with cyclic quotient, a divisor pair and a unit
//! modulo `ℓ = d1/d2`. The product group is never built; membership is decided
//! arithmetically.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::families;
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

/// Default cap on the order of product subgroups that are materialized as groups.
pub const MATERIALIZE_CAP: usize = 500;

/// The isomorphism `A/B → C1/C2 ≅ Z/ℓ`.
///
/// `A/B` is cyclic with generator coset `generator·B`; every `a ∈ A` lies in
/// `generator^e·B` for a unique `e mod ℓ`, and is sent to `unit·e mod ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientIso {
    pub generator: usize,
    pub unit: u64,
    pub ell: u64,
    exponent: Vec<u32>,
}

const OUTSIDE: u32 = u32::MAX;

impl QuotientIso {
    /// The residue mod `ℓ` that `a·B` maps to, or `None` for `a ∉ A`.
    pub fn image(&self, a: usize) -> Option<u64> {
        match self.exponent[a] {
            OUTSIDE => None,
            e => Some((e as u64 * self.unit) % self.ell.max(1)),
        }
    }
}

/// One subgroup of `G × Z/N` in Goursat coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoursatRecord {
    pub a: Subgroup,
    pub b: Subgroup,
    /// Order of `C1`, the second projection.
    pub d1: u64,
    /// Order of `C2 = {r : (e, r) ∈ H}`.
    pub d2: u64,
    pub iso: QuotientIso,
}

impl GoursatRecord {
    pub fn ell(&self) -> u64 {
        self.d1 / self.d2
    }

    /// `|B|·d1`.
    pub fn order(&self) -> usize {
        self.b.order() * self.d1 as usize
    }
}

/// A Goursat record together with its ambient modulus: the subgroup `H ⊆ G × Z/N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSubgroup {
    pub record: GoursatRecord,
    pub modulus: u64,
}

impl ProductSubgroup {
    pub fn new(record: GoursatRecord, modulus: u64) -> Self {
        debug_assert_eq!(modulus % record.d1, 0);
        ProductSubgroup { record, modulus }
    }

    /// `N / d1`, the generator of `C1` inside `Z/N`.
    pub fn c1_step(&self) -> u64 {
        self.modulus / self.record.d1
    }

    /// Membership of `(g, r mod N)`.
    pub fn contains(&self, g: usize, r: u64) -> bool {
        let r = r % self.modulus;
        let step = self.c1_step();
        if r % step != 0 {
            return false;
        }
        match self.record.iso.image(g) {
            None => false,
            Some(phase) => (r / step) % self.record.ell() == phase,
        }
    }

    pub fn order(&self) -> usize {
        self.record.order()
    }

    /// The residues `r` with `(a, r) ∈ H`, for `a ∈ A`.
    pub fn fiber(&self, a: usize) -> Vec<u64> {
        let Some(phase) = self.record.iso.image(a) else {
            return Vec::new();
        };
        let step = self.c1_step();
        let ell = self.record.ell();
        (0..self.record.d2)
            .map(|j| (step * (phase + ell * j)) % self.modulus)
            .collect()
    }

    /// All elements `(g, r)`, ordered by `g` then `r`.
    pub fn elements(&self) -> Vec<(usize, u64)> {
        let mut out = Vec::with_capacity(self.order());
        for &a in self.record.a.members() {
            let mut rs = self.fiber(a);
            rs.sort_unstable();
            out.extend(rs.into_iter().map(|r| (a, r)));
        }
        out
    }

    /// `H` as a group of pairs, with element `i` equal to `self.elements()[i]`
    /// only up to renumbering. Errors when `|H| > cap`.
    pub fn materialize(&self, g: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
        if self.order() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let n = self.modulus;
        let mut gens: Vec<(usize, u64)> = self
            .record
            .a
            .members()
            .iter()
            .map(|&a| (a, self.fiber(a)[0]))
            .collect();
        gens.push((g.identity(), (self.c1_step() * self.record.ell()) % n));
        FiniteGroup::generate(
            format!("H⊆{}×Z/{n}", g.label()),
            (g.identity(), 0u64),
            &gens,
            |x, y| (g.compose(x.0, y.0), (x.1 + y.1) % n),
            |x| format!("({},{})", g.name(x.0), x.1),
            cap,
        )
    }
}

/// The pullback data of `H`: projections and kernels on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectionData {
    /// Image of `H` in `G`.
    pub g_prime: Subgroup,
    /// `{g : (g, 0) ∈ H}`.
    pub g_double_prime: Subgroup,
    /// Order of the image of `H` in `Z/N`.
    pub n_prime: u64,
    /// Order of `H ∩ (1 × Z/N)`.
    pub n_double_prime: u64,
    /// The common cyclic quotient order `n_prime / n_double_prime = [g_prime : g_double_prime]`.
    pub ell: u64,
}

pub fn project_data(rec: &GoursatRecord) -> ProjectionData {
    let g_double_prime = Subgroup::from_sorted(
        rec.a
            .members()
            .iter()
            .copied()
            .filter(|&a| rec.iso.image(a) == Some(0))
            .collect(),
    );
    ProjectionData {
        g_prime: rec.a.clone(),
        g_double_prime,
        n_prime: rec.d1,
        n_double_prime: rec.d2,
        ell: rec.ell(),
    }
}

/// If `B ◁ A` with `A/B` cyclic, a generator of `A/B` (least index) and the
/// exponent table; otherwise `None`.
fn cyclic_quotient(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Option<(usize, Vec<u32>)> {
    if a.order() % b.order() != 0 || !b.is_subset_of(a) {
        return None;
    }
    let normal = a
        .members()
        .iter()
        .all(|&x| b.members().iter().all(|&y| b.contains(g.conjugate(y, x))));
    if !normal {
        return None;
    }
    let ell = a.order() / b.order();
    let bmask = b.mask(g.order());
    let generator = a.members().iter().copied().find(|&x| {
        let mut y = x;
        let mut e = 1;
        while !bmask[y] {
            y = g.compose(y, x);
            e += 1;
        }
        e == ell
    })?;
    let mut exponent = vec![OUTSIDE; g.order()];
    let mut power = g.identity();
    for e in 0..ell {
        for &y in b.members() {
            exponent[g.compose(power, y)] = e as u32;
        }
        power = g.compose(power, generator);
    }
    Some((generator, exponent))
}

/// Every subgroup of `G × Z/N` exactly once.
///
/// Ordered by `A`, then `B` (lattice order), then `d1`, then the unit.
pub fn goursat_enumerate(g: &FiniteGroup, n: u64) -> Vec<GoursatRecord> {
    goursat_enumerate_with(g, &SubgroupLattice::new(g), n)
}

pub fn goursat_enumerate_with(g: &FiniteGroup, lattice: &SubgroupLattice, n: u64) -> Vec<GoursatRecord> {
    assert!(n >= 1, "modulus must be positive");
    let divisors = arith::divisors(n);
    let mut out = Vec::new();
    for a in lattice.subgroups() {
        for b in lattice.subgroups() {
            if b.order() > a.order() {
                break;
            }
            let Some((generator, exponent)) = cyclic_quotient(g, a, b) else {
                continue;
            };
            let ell = (a.order() / b.order()) as u64;
            for &d1 in divisors.iter().filter(|&&d| d % ell == 0) {
                for unit in arith::units(ell) {
                    out.push(GoursatRecord {
                        a: a.clone(),
                        b: b.clone(),
                        d1,
                        d2: d1 / ell,
                        iso: QuotientIso {
                            generator,
                            unit: if ell == 1 { 0 } else { unit },
                            ell,
                            exponent: exponent.clone(),
                        },
                    });
                }
            }
        }
    }
    out
}

/// Structural hyperelementary test on `H`, without building it.
///
/// With `S_A` the `p′`-order elements of `A`, the `p′`-order elements of `H` are
/// `S = {(a, r) ∈ H : a ∈ S_A}` (every `r` has order prime to `p` since `p ∤ N`).
/// `S` is a normal subgroup of `p`-power index iff `S_A` is one in `A`; `S` is
/// cyclic iff it has an element of order `|S_A|·d2`; and `S` is central iff `S_A` is.
///
/// Returns `None` when `p | N`, where this description of `S` fails.
pub fn structural_type(h: &ProductSubgroup, g: &FiniteGroup, p: u64) -> Option<HyperType> {
    if h.modulus % p == 0 {
        return None;
    }
    let a = &h.record.a;
    let s_a: Vec<usize> = a
        .members()
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) as u64 % p != 0)
        .collect();
    let s_sub = Subgroup::from_sorted(s_a.clone());
    let closed = g.is_subgroup(&s_a);
    let normal = closed
        && a.members()
            .iter()
            .all(|&y| s_a.iter().all(|&x| s_sub.contains(g.conjugate(x, y))));
    let index_ok = arith::is_power_of((a.order() / s_a.len()) as u64, p);
    let target = s_a.len() as u64 * h.record.d2;
    let n = h.modulus;
    let cyclic = closed
        && s_a.iter().any(|&x| {
            let ox = g.element_order(x) as u64;
            h.fiber(x)
                .into_iter()
                .any(|r| ox.lcm(&(n / r.gcd(&n))) == target)
        });
    let hyper = closed && normal && index_ok && cyclic;
    let central = a
        .members()
        .iter()
        .all(|&y| s_a.iter().all(|&x| g.commutes(x, y)));
    Some(HyperType {
        hyperelementary: hyper,
        elementary: hyper && central,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HyperType {
    pub hyperelementary: bool,
    pub elementary: bool,
}

/// Whether `H ⊆ G × Z/N` is `p`-hyperelementary. Builds `H` and applies the group
/// detector when `|H| ≤ cap`, and decides structurally otherwise. The structural
/// route needs `p ∤ N`; without it an oversized `H` is a [`Error::CapExceeded`].
pub fn is_p_hyperelementary_product(
    h: &ProductSubgroup,
    g: &FiniteGroup,
    p: u64,
    cap: usize,
) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if h.order() <= cap {
        let hg = h.materialize(g, cap)?;
        families::is_p_hyperelementary(&hg, p)
    } else {
        structural_type(h, g, p)
            .map(|t| t.hyperelementary)
            .ok_or(Error::CapExceeded { cap })
    }
}

/// Brute-force enumeration in the materialized product, for cross-checking.
pub mod oracle {
    use super::*;
    use crate::group::all_subgroups;

    /// Every subgroup of `G × Z/N` computed in the explicit product group, as sorted
    /// lists of pairs `(g, r)`.
    pub fn product_subgroups(g: &FiniteGroup, n: u64, cap: usize) -> Result<Vec<Vec<(usize, u64)>>> {
        let cyc = crate::group::make_group_with_cap(&format!("cyclic:{n}"), cap)?;
        let prod = g.direct_product(&cyc, cap)?;
        // cyclic:N numbers residues in order, and the product numbers (a, b) as a·N + b
        debug_assert!(cyc.elements().all(|x| cyc.name(x) == x.to_string()));
        let mut out: Vec<Vec<(usize, u64)>> = all_subgroups(&prod)
            .into_iter()
            .map(|s| {
                let mut v: Vec<(usize, u64)> = s
                    .members()
                    .iter()
                    .map(|&x| (x / n as usize, (x % n as usize) as u64))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn as_sets(g: &FiniteGroup, n: u64) -> Vec<Vec<(usize, u64)>> {
        let mut v: Vec<Vec<(usize, u64)>> = goursat_enumerate(g, n)
            .into_iter()
            .map(|r| ProductSubgroup::new(r, n).elements())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn modulus_one_matches_subgroups_of_g() {
        let g = make_group("sym:3").unwrap();
        let recs = goursat_enumerate(&g, 1);
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.a == r.b && r.d1 == 1));
    }

    #[test]
    fn c2_times_z4_has_eight_subgroups() {
        let g = make_group("cyclic:2").unwrap();
        assert_eq!(goursat_enumerate(&g, 4).len(), 8);
        assert_eq!(as_sets(&g, 4), oracle::product_subgroups(&g, 4, 500).unwrap());
    }

    #[test]
    fn sym3_times_z2_matches_brute_force() {
        let g = make_group("sym:3").unwrap();
        let sets = as_sets(&g, 2);
        assert_eq!(sets, oracle::product_subgroups(&g, 2, 500).unwrap());
    }

    #[test]
    fn record_orders_match_membership() {
        let g = make_group("dihedral:4").unwrap();
        for rec in goursat_enumerate(&g, 6) {
            let h = ProductSubgroup::new(rec, 6);
            let count = g
                .elements()
                .flat_map(|x| (0..6).map(move |r| (x, r)))
                .filter(|&(x, r)| h.contains(x, r))
                .count();
            assert_eq!(count, h.order());
            let pd = project_data(&h.record);
            assert_eq!(h.order(), pd.g_double_prime.order() * pd.n_prime as usize);
            assert_eq!(pd.g_prime.order(), pd.g_double_prime.order() * pd.ell as usize);
            assert_eq!(pd.g_double_prime, h.record.b);
        }
    }

    #[test]
    fn projection_examples() {
        let g = make_group("sym:3").unwrap();
        let recs = goursat_enumerate(&g, 2);
        let full = recs
            .iter()
            .find(|r| r.a.order() == 6 && r.b.order() == 6 && r.d1 == 2)
            .unwrap();
        let pd = project_data(full);
        assert_eq!((pd.g_prime.order(), pd.g_double_prime.order(), pd.n_prime, pd.ell), (6, 6, 2, 1));
        // graph of the sign character
        let graph = recs
            .iter()
            .find(|r| r.a.order() == 6 && r.b.order() == 3 && r.d1 == 2)
            .unwrap();
        let pd = project_data(graph);
        assert_eq!((pd.g_prime.order(), pd.g_double_prime.order(), pd.n_prime, pd.ell), (6, 3, 2, 2));
        let h = ProductSubgroup::new(graph.clone(), 2);
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert!(h.contains(t, 1) && !h.contains(t, 0));
        // rectangle with trivial iso
        let rect = recs
            .iter()
            .find(|r| r.a.order() == 2 && r.b.order() == 2 && r.d1 == 2)
            .unwrap();
        let pd = project_data(rect);
        assert_eq!(pd.g_prime, pd.g_double_prime);
        assert_eq!(pd.ell, 1);
    }

    #[test]
    fn hyperelementary_products() {
        let g = make_group("sym:3").unwrap();
        let recs = goursat_enumerate(&g, 27);
        let c2_z27 = recs
            .iter()
            .find(|r| r.a.order() == 2 && r.b.order() == 2 && r.d1 == 27)
            .unwrap();
        let h = ProductSubgroup::new(c2_z27.clone(), 27);
        assert!(is_p_hyperelementary_product(&h, &g, 2, MATERIALIZE_CAP).unwrap());
        let s3_0 = recs
            .iter()
            .find(|r| r.a.order() == 6 && r.b.order() == 6 && r.d1 == 1)
            .unwrap();
        let h = ProductSubgroup::new(s3_0.clone(), 27);
        assert!(is_p_hyperelementary_product(&h, &g, 2, MATERIALIZE_CAP).unwrap());
        let a4 = make_group("perm(4;(1 2 3);(1 2)(3 4))").unwrap();
        let whole = goursat_enumerate(&a4, 1).into_iter().find(|r| r.a.order() == 12).unwrap();
        let h = ProductSubgroup::new(whole, 1);
        assert!(!is_p_hyperelementary_product(&h, &a4, 2, MATERIALIZE_CAP).unwrap());
    }

    #[test]
    fn structural_and_materialized_detectors_agree() {
        for spec in ["sym:3", "cyclic:6", "dihedral:4", "perm(4;(1 2 3);(1 2)(3 4))"] {
            let g = make_group(spec).unwrap();
            for n in [1, 4, 9, 5, 25] {
                for rec in goursat_enumerate(&g, n) {
                    let h = ProductSubgroup::new(rec, n);
                    let hg = h.materialize(&g, MATERIALIZE_CAP).unwrap();
                    for p in [2, 3, 5] {
                        let Some(st) = structural_type(&h, &g, p) else {
                            assert_eq!(n % p, 0);
                            continue;
                        };
                        assert_eq!(st.hyperelementary, families::is_p_hyperelementary(&hg, p).unwrap());
                        assert_eq!(st.elementary, families::is_p_elementary(&hg, p).unwrap());
                    }
                }
            }
        }
    }
}
