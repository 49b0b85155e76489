//! Generation data for Nil groups of group rings, the Verschiebung splitting
//! arithmetic, exponent bounds and the vanishing report.
//!
//! For a `p`-subgroup `P` and an element `g` of order prime to `p` commuting with
//! `P`, the subgroup `E = ⟨g⟩ × P` is `p`-elementary. The pairs `(P, g)` index the
//! maps whose images, composed with Verschiebung operators `V_k` for `k ∈ I(g)`,
//! generate the `p`-localized Nil groups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, mod_inverse, prime_divisors, primary_part, valuation};
use crate::families::{c_perp, check_prime, family_report_with, is_p_elementary_in};
use crate::group::{FiniteGroup, Subgroup, SubgroupClass, SubgroupLattice};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationDatum {
    /// Class of the `p`-subgroup `P`.
    pub p_class: SubgroupClass,
    pub element: usize,
    pub element_name: String,
    pub element_order: usize,
    /// `k ∈ I(g)` exactly when every prime factor of `k` is listed here.
    pub allowed_primes: Vec<u64>,
    /// `E = ⟨g⟩ × P`.
    pub target: Subgroup,
    pub target_class: SubgroupClass,
    /// `g = e`: the datum is an ordinary induction from `P`.
    pub plain_induction: bool,
}

/// One datum for every `p`-subgroup class `P` and every `g` in `C_G^⊥(P)`.
pub fn generation_data(g: &FiniteGroup, p: u64) -> Result<Vec<GenerationDatum>> {
    generation_data_with(g, &SubgroupLattice::new(g), p)
}

pub fn generation_data_with(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    p: u64,
) -> Result<Vec<GenerationDatum>> {
    check_prime(p)?;
    let report = family_report_with(g, lattice, p)?;
    let mut data = Vec::new();
    for class in report.p_subgroup_classes {
        let base = &class.representative;
        for perp in c_perp(g, base, p)?.elements {
            let mut gens = base.members().to_vec();
            gens.push(perp.element);
            let target = g.closure(&gens);
            if target.order() != perp.order * base.order() || !is_p_elementary_in(g, &target, p)? {
                return Err(Error::Internal(format!(
                    "<{}> x P is not a p-elementary direct product",
                    g.name(perp.element)
                )));
            }
            let target_class = lattice
                .class_of(&target)
                .ok_or_else(|| Error::Internal("target subgroup missing from lattice".into()))?
                .clone();
            data.push(GenerationDatum {
                p_class: class.clone(),
                element: perp.element,
                element_name: g.name(perp.element).to_string(),
                element_order: perp.order,
                allowed_primes: prime_divisors(perp.order as u64),
                target,
                target_class,
                plain_induction: perp.element == g.identity(),
            });
        }
    }
    Ok(data)
}

/// Keeps the first datum for each `(P class, E class, |g|)` triple.
pub fn dedupe(data: &[GenerationDatum]) -> Vec<GenerationDatum> {
    let mut seen = BTreeSet::new();
    data.iter()
        .filter(|d| {
            seen.insert((
                d.p_class.representative.clone(),
                d.target_class.representative.clone(),
                d.element_order,
            ))
        })
        .cloned()
        .collect()
}

/// Distinct classes of the targets `E`, in lattice order.
pub fn elementary_cover(g: &FiniteGroup, p: u64) -> Result<Vec<SubgroupClass>> {
    let lattice = SubgroupLattice::new(g);
    let data = generation_data_with(g, &lattice, p)?;
    let targets: BTreeSet<usize> = data
        .iter()
        .filter_map(|d| lattice.class_index(&d.target_class.representative))
        .collect();
    Ok(targets
        .into_iter()
        .map(|i| lattice.classes()[i].clone())
        .collect())
}

/// `k = k0·k1` with `k1` the part of `k` supported on primes dividing `m`,
/// and `l0` the inverse of `k0` modulo `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerschiebungSplit {
    pub k0: u64,
    pub k1: u64,
    pub l0: u64,
}

pub fn split_verschiebung(k: u64, m: u64) -> Result<VerschiebungSplit> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidArgument("k and m must be positive".into()));
    }
    let k1: u64 = prime_divisors(m)
        .into_iter()
        .map(|q| primary_part(k, q))
        .product();
    let k0 = k / k1;
    // modulo 1 every residue inverts k0; report 1 as the representative
    let l0 = if m == 1 {
        1
    } else {
        mod_inverse(k0 % m, m)
            .ok_or_else(|| Error::Internal(format!("{k0} is not a unit mod {m}")))?
    };
    Ok(VerschiebungSplit { k0, k1, l0 })
}

/// The scalar `k·x` that `F_k ∘ V_k` multiplies by.
pub fn frobenius_verschiebung_identity(k: u64, x: i64) -> i64 {
    k as i64 * x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeBound {
    pub prime: u64,
    /// Exponent of `prime` in `n`.
    pub multiplicity: u32,
    pub l: u32,
    /// `prime^l`.
    pub bound: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentReport {
    pub n: u64,
    pub slack: u32,
    pub per_prime: Vec<PrimeBound>,
    pub c: u128,
    pub d: u128,
    /// Product of `c(n_p)` over primes with `p² | n`.
    #[serde(rename = "refinedNK0")]
    pub refined_nk0: u128,
    /// Primes `p | n` with `p² ∤ n`.
    pub vanishing_primes: Vec<u64>,
}

fn overflow(n: u64) -> Error {
    Error::InvalidArgument(format!("exponent bound for {n} exceeds 128 bits"))
}

/// `q^l` with `l = slack + min{ l : q^l ≥ m·n }`.
fn prime_bound(q: u64, m: u32, n: u64, slack: u32) -> Result<PrimeBound> {
    let target = m as u128 * n as u128;
    let (mut l, mut power) = (0u32, 1u128);
    while power < target {
        power = power.checked_mul(q as u128).ok_or_else(|| overflow(n))?;
        l += 1;
    }
    for _ in 0..slack {
        power = power.checked_mul(q as u128).ok_or_else(|| overflow(n))?;
        l += 1;
    }
    Ok(PrimeBound {
        prime: q,
        multiplicity: m,
        l,
        bound: power,
    })
}

/// `c_q(q^m)`, the bound attached to a prime-power order.
fn local_bound(q: u64, m: u32, slack: u32) -> Result<u128> {
    let n = q.checked_pow(m).ok_or_else(|| overflow(q))?;
    Ok(prime_bound(q, m, n, slack)?.bound)
}

fn product(mut values: impl Iterator<Item = Result<u128>>, n: u64) -> Result<u128> {
    values.try_fold(1u128, |acc, x| acc.checked_mul(x?).ok_or_else(|| overflow(n)))
}

pub fn exponent_report(n: u64) -> Result<ExponentReport> {
    exponent_report_with_slack(n, 0)
}

/// As [`exponent_report`] with every `l` raised by `slack` above the minimum.
pub fn exponent_report_with_slack(n: u64, slack: u32) -> Result<ExponentReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let factors = factorize(n);
    let per_prime = factors
        .iter()
        .map(|&(q, m)| prime_bound(q, m, n, slack))
        .collect::<Result<Vec<_>>>()?;
    let c = product(per_prime.iter().map(|b| Ok(b.bound)), n)?;
    let d = product(factors.iter().map(|&(q, m)| local_bound(q, m, slack)), n)?;
    let refined_nk0 = product(
        factors
            .iter()
            .filter(|&&(_, m)| m >= 2)
            .map(|&(q, m)| local_bound(q, m, slack)),
        n,
    )?;
    let vanishing_primes = factors
        .iter()
        .filter(|&&(_, m)| m == 1)
        .map(|&(q, _)| q)
        .collect();
    Ok(ExponentReport {
        n,
        slack,
        per_prime,
        c,
        d,
        refined_nk0,
        vanishing_primes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VanishingReport {
    pub order: u64,
    pub squarefree: bool,
    /// Primes `p` with `NK_n(ZG)_(p) = 0` for `n ≤ 1`.
    pub zero_localizations: Vec<u64>,
    pub statement: String,
}

pub fn vanishing_report(g: &FiniteGroup) -> VanishingReport {
    vanishing_report_for_order(g.order() as u64)
}

pub fn vanishing_report_for_order(order: u64) -> VanishingReport {
    let primes = prime_divisors(order);
    let zero_localizations: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| valuation(order, p) == 1)
        .collect();
    let squarefree = zero_localizations.len() == primes.len();
    let list = zero_localizations
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let statement = if squarefree {
        format!("|G| = {order} is square-free, so NK_n(ZG) = 0 for n <= 1")
    } else if zero_localizations.is_empty() {
        format!("every prime dividing |G| = {order} divides it at least twice; no localization is forced to vanish")
    } else {
        format!(
            "NK_n(ZG)_(p) = 0 for n <= 1 at p in {{{list}}}: these primes divide |G| = {order} exactly once"
        )
    };
    VanishingReport {
        order,
        squarefree,
        zero_localizations,
        statement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn sym3_data() {
        let g = make_group("sym:3").unwrap();
        let data = generation_data(&g, 2).unwrap();
        let shape: Vec<(usize, usize, usize)> = data
            .iter()
            .map(|d| (d.p_class.order(), d.element_order, d.target.order()))
            .collect();
        assert_eq!(shape, vec![(1, 1, 1), (1, 3, 3), (1, 3, 3), (2, 1, 2)]);
        assert!(data[0].plain_induction && data[3].plain_induction);
        assert_eq!(data[1].allowed_primes, vec![3]);
        let cover: Vec<usize> = elementary_cover(&g, 2).unwrap().iter().map(|c| c.order()).collect();
        assert_eq!(cover, vec![1, 2, 3]);
        assert_eq!(dedupe(&data).len(), 3);
    }

    #[test]
    fn cyclic6_reaches_itself() {
        let g = make_group("cyclic:6").unwrap();
        let data = generation_data(&g, 2).unwrap();
        assert!(data
            .iter()
            .any(|d| d.p_class.order() == 2 && d.element_order == 3 && d.target.order() == 6));
        assert!(elementary_cover(&g, 2).unwrap().iter().any(|c| c.order() == 6));
    }

    #[test]
    fn p_groups_only_plain_induction() {
        for spec in ["dihedral:4", "cyclic:8", "product(cyclic:2,cyclic:4)"] {
            let g = make_group(spec).unwrap();
            let data = generation_data(&g, 2).unwrap();
            assert!(data.iter().all(|d| d.plain_induction));
            let lattice = SubgroupLattice::new(&g);
            assert_eq!(elementary_cover(&g, 2).unwrap(), lattice.classes().to_vec());
        }
    }

    #[test]
    fn split_examples() {
        let s = |k, m| split_verschiebung(k, m).unwrap();
        assert_eq!(s(6, 3), VerschiebungSplit { k0: 2, k1: 3, l0: 2 });
        assert_eq!(s(1, 7), VerschiebungSplit { k0: 1, k1: 1, l0: 1 });
        assert_eq!(s(1, 1), VerschiebungSplit { k0: 1, k1: 1, l0: 1 });
        assert_eq!(s(12, 6), VerschiebungSplit { k0: 1, k1: 12, l0: 1 });
        assert!(split_verschiebung(3, 0).is_err());
        assert_eq!(frobenius_verschiebung_identity(3, 4), 12);
        assert_eq!(frobenius_verschiebung_identity(5, 0), 0);
    }

    #[test]
    fn exponents_of_60() {
        let r = exponent_report(60).unwrap();
        let bounds: Vec<(u64, u128)> = r.per_prime.iter().map(|b| (b.prime, b.bound)).collect();
        assert_eq!(bounds, vec![(2, 128), (3, 81), (5, 125)]);
        assert_eq!(r.c, 1_296_000);
        assert_eq!(r.d, 120);
        assert_eq!(r.refined_nk0, 8);
        assert_eq!(r.vanishing_primes, vec![3, 5]);
        let r = exponent_report(7).unwrap();
        assert_eq!((r.c, r.d, r.refined_nk0), (7, 7, 1));
        assert_eq!(r.vanishing_primes, vec![7]);
        let r = exponent_report_with_slack(60, 1).unwrap();
        assert_eq!(r.per_prime[0].bound, 256);
    }

    #[test]
    fn d_divides_c_up_to_10000() {
        for n in 1..=10_000u64 {
            let r = exponent_report(n).unwrap();
            assert_eq!(r.c % r.d, 0, "n = {n}");
            assert_eq!(r.d % r.refined_nk0, 0, "n = {n}");
            for b in &r.per_prime {
                let nq = b.prime.pow(b.multiplicity) as u128;
                assert!(b.bound >= nq);
                assert!(b.bound < b.prime as u128 * b.multiplicity as u128 * n as u128);
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        let r = vanishing_report_for_order(30);
        assert!(r.squarefree);
        assert_eq!(r.zero_localizations, vec![2, 3, 5]);
        assert!(r.statement.contains("square-free"));
        assert!(vanishing_report_for_order(4).zero_localizations.is_empty());
        assert_eq!(vanishing_report_for_order(12).zero_localizations, vec![3]);
    }

    proptest! {
        #[test]
        fn split_laws(k in 1u64..5000, m in 1u64..5000) {
            let s = split_verschiebung(k, m).unwrap();
            prop_assert_eq!(s.k0 * s.k1, k);
            prop_assert!(prime_divisors(s.k1).iter().all(|q| m % q == 0));
            prop_assert_eq!(s.k0.gcd(&m), 1);
            prop_assert_eq!((s.l0 * s.k0) % m, 1 % m);
        }
    }
}
