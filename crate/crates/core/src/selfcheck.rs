//! The property suite behind `hyperind verify`.
//!
//! Each check sweeps a fixed corpus and reports how many cases it examined and
//! which ones failed. Failures are collected, not raised.

use serde::{Deserialize, Serialize};

use crate::arith::{prime_divisors, valuation};
use crate::dress::{dress_certificate_with, verify_certificate};
use crate::families::{
    family_report_with, hyperelementary_corpus, in_i, is_p_elementary_in, is_p_hyperelementary_in,
    cyclic_quotient_check, oracle as family_oracle,
};
use crate::gamma::{audit_sweep, classify_all, Case};
use crate::generation::{exponent_report, split_verschiebung};
use crate::goursat::{goursat_enumerate_with, oracle as goursat_oracle, ProductSubgroup};
use crate::group::{make_group, quaternion8, FiniteGroup, SubgroupLattice};
use crate::snf::is_p_integral;
use crate::Result;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, cases: usize, failures: Vec<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: failures.is_empty(),
            cases,
            failures,
        }
    }

    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} {}: {} cases, {} failures",
            self.name,
            self.cases,
            self.failures.len()
        )
    }
}

/// One representative of every isomorphism type of order at most 12.
pub const SMALL_GROUPS: &[&str] = &[
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "product(cyclic:2,cyclic:2)",
    "cyclic:5",
    "cyclic:6",
    "sym:3",
    "cyclic:7",
    "cyclic:8",
    "product(cyclic:2,cyclic:4)",
    "product(cyclic:2,product(cyclic:2,cyclic:2))",
    "dihedral:4",
    "quaternion",
    "cyclic:9",
    "product(cyclic:3,cyclic:3)",
    "cyclic:10",
    "dihedral:5",
    "cyclic:11",
    "cyclic:12",
    "product(cyclic:2,cyclic:6)",
    "dihedral:6",
    "perm(4;(1 2 3);(1 2)(3 4))",
    "semidirect(c:3,p:cyclic:4,action:[2])",
];

/// Further named groups used by the heavier sweeps.
pub const NAMED_GROUPS: &[&str] = &[
    "sym:4",
    "product(sym:3,cyclic:2)",
    "product(sym:3,cyclic:3)",
    "product(sym:3,sym:3)",
    "product(perm(4;(1 2 3);(1 2)(3 4)),cyclic:2)",
    "product(perm(4;(1 2 3);(1 2)(3 4)),cyclic:4)",
    "product(sym:4,cyclic:2)",
    "semidirect(c:7,p:cyclic:3,action:[2])",
    "semidirect(c:5,p:cyclic:4,action:[2])",
    "dihedral:12",
    "dihedral:10",
    "product(dihedral:4,cyclic:3)",
    "product(quaternion,cyclic:3)",
];

/// The groups and parameters of the dichotomy sweep.
pub const DICHOTOMY_GROUPS: &[&str] = &[
    "sym:3",
    "cyclic:6",
    "dihedral:4",
    "perm(4;(1 2 3);(1 2)(3 4))",
    "product(sym:3,cyclic:2)",
];

/// Builds a group from a spec, accepting `quaternion` for `Q_8`.
pub fn corpus_group(spec: &str) -> FiniteGroup {
    if spec == "quaternion" {
        return quaternion8();
    }
    if let Some(inner) = spec
        .strip_prefix("product(quaternion,")
        .and_then(|s| s.strip_suffix(')'))
    {
        let other = make_group(inner).expect("corpus spec parses");
        return quaternion8()
            .direct_product(&other, crate::group::DEFAULT_ORDER_CAP)
            .expect("corpus product fits")
            .with_label(spec);
    }
    make_group(spec).expect("corpus spec parses")
}

/// Small and named groups plus the hyperelementary corpora for 2, 3 and 5, all of
/// order at most `bound`.
pub fn standard_corpus(bound: usize) -> Result<Vec<FiniteGroup>> {
    let mut out: Vec<FiniteGroup> = SMALL_GROUPS
        .iter()
        .chain(NAMED_GROUPS)
        .map(|s| corpus_group(s))
        .filter(|g| g.order() <= bound)
        .collect();
    for p in [2, 3, 5] {
        out.extend(hyperelementary_corpus(p, bound)?);
    }
    Ok(out)
}

/// Detectors agree with the structure-search definitions on every subgroup class.
pub fn check_families(groups: &[FiniteGroup], primes: &[u64]) -> Result<CheckResult> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in groups {
        let lattice = SubgroupLattice::new(g);
        for &p in primes {
            for class in lattice.classes() {
                let h = &class.representative;
                cases += 1;
                let fast = (is_p_elementary_in(g, h, p)?, is_p_hyperelementary_in(g, h, p)?);
                let slow = (
                    family_oracle::is_p_elementary(g, h, p),
                    family_oracle::is_p_hyperelementary(g, h, p),
                );
                if fast != slow {
                    failures.push(format!("{} p={p} H={:?}", g.label(), h.members()));
                }
            }
        }
    }
    Ok(CheckResult::new("families agree with brute force", cases, failures))
}

/// Hyperelementary groups with all cyclic `q`-quotients are elementary.
pub fn check_cyclic_quotients(primes: &[u64], bound: usize) -> Result<CheckResult> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for &p in primes {
        for g in hyperelementary_corpus(p, bound)? {
            cases += 1;
            match cyclic_quotient_check(&g, p) {
                Ok(o) if !o.hypothesis_holds || o.conclusion_holds => {}
                Ok(_) => failures.push(format!("{} p={p}", g.label())),
                Err(e) => failures.push(format!("{} p={p}: {e}", g.label())),
            }
        }
    }
    Ok(CheckResult::new(
        "hyperelementary with cyclic quotients is elementary",
        cases,
        failures,
    ))
}

/// Every `p`-hyperelementary subgroup of `G × Z/N` is deep or elementary, and
/// every record survives [`audit_sweep`] with window `3N`.
pub fn check_dichotomy(groups: &[FiniteGroup], primes: &[u64], ms: &[u64]) -> CheckResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in groups {
        for &p in primes {
            for &big_m in ms {
                match classify_all(g, p, big_m) {
                    Ok(sweep) => {
                        cases += sweep.records.len();
                        let window = 3 * sweep.modulus as i64;
                        for i in audit_sweep(&sweep, g, window) {
                            let kind = match sweep.records[i].case {
                                Case::Deep { .. } => "deep",
                                Case::Elementary(_) => "elementary",
                            };
                            failures.push(format!(
                                "{} p={p} M={big_m} record {i} ({kind})",
                                g.label()
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{} p={p} M={big_m}: {e}", g.label())),
                }
            }
        }
    }
    CheckResult::new("deep or elementary dichotomy", cases, failures)
}

/// Certificates exist for every prime dividing the order and pass verification.
pub fn check_dress(groups: &[FiniteGroup]) -> CheckResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in groups {
        let lattice = SubgroupLattice::new(g);
        for p in prime_divisors(g.order() as u64) {
            cases += 1;
            match dress_certificate_with(g, &lattice, p) {
                Ok(cert) => {
                    let integral = cert.entries.iter().all(|e| is_p_integral(&e.coefficient, p));
                    if !integral || !verify_certificate(g, &cert) {
                        failures.push(format!("{} p={p}: certificate rejected", g.label()));
                    }
                }
                Err(e) => failures.push(format!("{} p={p}: {e}", g.label())),
            }
        }
    }
    CheckResult::new("induction certificates verify", cases, failures)
}

/// Parametrized subgroups of `G × Z/N` coincide with those of the materialized product.
pub fn check_goursat(groups: &[FiniteGroup], max_n: u64) -> Result<CheckResult> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in groups {
        let lattice = SubgroupLattice::new(g);
        for n in 1..=max_n {
            cases += 1;
            let mut fast: Vec<Vec<(usize, u64)>> = goursat_enumerate_with(g, &lattice, n)
                .into_iter()
                .map(|r| ProductSubgroup::new(r, n).elements())
                .collect();
            fast.sort();
            let slow = goursat_oracle::product_subgroups(g, n, g.order() * n as usize)?;
            if fast != slow {
                let mut a: Vec<usize> = fast.iter().map(Vec::len).collect();
                let mut b: Vec<usize> = slow.iter().map(Vec::len).collect();
                a.sort_unstable();
                b.sort_unstable();
                failures.push(format!(
                    "{} N={n}: {} vs {} subgroups, orders match: {}",
                    g.label(),
                    fast.len(),
                    slow.len(),
                    a == b
                ));
            }
        }
    }
    Ok(CheckResult::new("parametrized product subgroups", cases, failures))
}

/// The splitting laws for `1 ≤ k, m ≤ bound` and multiplicativity of `I(g)`.
pub fn check_split_laws(bound: u64) -> CheckResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for k in 1..=bound {
        for m in 1..=bound {
            cases += 1;
            let ok = match split_verschiebung(k, m) {
                Ok(s) => {
                    s.k0 * s.k1 == k
                        && prime_divisors(s.k1).iter().all(|q| m % q == 0)
                        && num_integer::gcd(s.k0, m) == 1
                        && (s.l0 * s.k0) % m == 1 % m
                }
                Err(_) => false,
            };
            // I(g) is closed under products and under taking factors
            let mult = (1..=bound / k).step_by(7).all(|j| {
                in_i(k * j, m) == (in_i(k, m) && in_i(j, m))
            });
            if !ok || !mult {
                failures.push(format!("k={k} m={m}"));
            }
        }
    }
    CheckResult::new("Verschiebung splitting laws", cases, failures)
}

/// `d(n) | c(n)` and the refined bound divides `d(n)`, for `n ≤ bound`.
pub fn check_exponents(bound: u64) -> Result<CheckResult> {
    let mut failures = Vec::new();
    for n in 1..=bound {
        let r = exponent_report(n)?;
        let sharp = r.per_prime.iter().all(|b| {
            let nq = b.prime.pow(valuation(n, b.prime)) as u128;
            b.bound >= nq && b.bound < b.prime as u128 * b.multiplicity as u128 * n as u128
        });
        if r.c % r.d != 0 || r.d % r.refined_nk0 != 0 || !sharp {
            failures.push(format!("n={n}"));
        }
    }
    Ok(CheckResult::new("exponent bounds divide", bound as usize, failures))
}

/// Every family report is nested: `p`-subgroups ⊆ elementary ⊆ hyperelementary.
pub fn check_family_nesting(groups: &[FiniteGroup]) -> Result<CheckResult> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in groups {
        let lattice = SubgroupLattice::new(g);
        for p in prime_divisors(g.order() as u64) {
            cases += 1;
            let r = family_report_with(g, &lattice, p)?;
            let nested = r.p_subgroup_classes.iter().all(|c| r.p_elementary_classes.contains(c))
                && r.p_elementary_classes
                    .iter()
                    .all(|c| r.p_hyperelementary_classes.contains(c));
            if !nested {
                failures.push(format!("{} p={p}", g.label()));
            }
        }
    }
    Ok(CheckResult::new("family nesting", cases, failures))
}

/// The full suite at the sizes used by `hyperind verify`.
pub fn run_all() -> Result<Vec<CheckResult>> {
    let small: Vec<FiniteGroup> = SMALL_GROUPS.iter().map(|s| corpus_group(s)).collect();
    let dichotomy: Vec<FiniteGroup> = DICHOTOMY_GROUPS.iter().map(|s| corpus_group(s)).collect();
    let corpus = standard_corpus(48)?;
    Ok(vec![
        check_families(&corpus, &[2, 3, 5])?,
        check_family_nesting(&corpus)?,
        check_cyclic_quotients(&[2, 3, 5], 100)?,
        check_dichotomy(&dichotomy, &[2, 3], &[2, 3]),
        check_dress(&corpus),
        check_goursat(&small, 8)?,
        check_split_laws(200),
        check_exponents(10_000)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_are_distinct_and_small() {
        let groups: Vec<FiniteGroup> = SMALL_GROUPS.iter().map(|s| corpus_group(s)).collect();
        assert!(groups.iter().all(|g| g.order() <= 12 && g.check_axioms()));
        // number of isomorphism types of each order 1..=12
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(groups.iter().filter(|g| g.order() == n + 1).count(), count, "order {}", n + 1);
        }
        let q8 = corpus_group("product(quaternion,cyclic:3)");
        assert_eq!(q8.order(), 24);
    }

    #[test]
    fn quick_checks_pass() {
        let small: Vec<FiniteGroup> = SMALL_GROUPS.iter().take(8).map(|s| corpus_group(s)).collect();
        assert!(check_families(&small, &[2, 3]).unwrap().passed);
        assert!(check_dress(&small).passed);
        assert!(check_goursat(&small, 4).unwrap().passed);
        assert!(check_split_laws(30).passed);
        assert!(check_exponents(500).unwrap().passed);
        assert!(check_family_nesting(&small).unwrap().passed);
    }
}
