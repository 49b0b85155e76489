//! Hyperelementary subgroups of `G × Z/N` and their preimages in `G × Z`.
//!
//! For a subgroup `H ⊆ G × Z/N` let `Γ_H` be its preimage under `G × Z → G × Z/N`.
//! With `N = N(M, |G|, p)` chosen by [`choose_n`], every `p`-hyperelementary `H` is
//! either *deep* (`Γ_H ⊆ G × mZ` with `m = N/N′ ≥ M`) or `p`-elementary, and in the
//! elementary case `Γ_H ≅ P × Z` for the `p`-group `P = G″`, compatibly with an
//! embedding `j : P × Z/ℓ → G`. [`classify`] produces the witnesses and the
//! `verify_*` functions re-check them against the membership oracle alone.
//!
//! `Γ_H` is infinite but `N`-periodic, so all checks in the `Z` direction run on
//! explicit windows of integers.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::goursat::{
    goursat_enumerate_with, is_p_hyperelementary_product, project_data, structural_type,
    ProductSubgroup, MATERIALIZE_CAP,
};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

/// The least `N` with `p ∤ N`, `q | N ⇔ q | n` for primes `q ≠ p`, and
/// `q^k ≥ M·n` for every `q^k ‖ N`.
pub fn choose_n(big_m: u64, n: u64, p: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if big_m == 0 || n == 0 {
        return Err(Error::InvalidArgument("M and n must be positive".into()));
    }
    let floor = big_m as u128 * n as u128;
    let mut result: u128 = 1;
    for q in arith::prime_divisors(n).into_iter().filter(|&q| q != p) {
        let mut power = q as u128;
        while power < floor {
            power *= q as u128;
        }
        result *= power;
    }
    u64::try_from(result).map_err(|_| Error::InvalidArgument("N(M, n, p) overflows u64".into()))
}

/// Membership in `Γ_H ⊆ G × Z`.
#[derive(Clone, Copy, Debug)]
pub struct GammaSubgroup<'a> {
    h: &'a ProductSubgroup,
}

impl<'a> GammaSubgroup<'a> {
    pub fn new(h: &'a ProductSubgroup) -> Self {
        GammaSubgroup { h }
    }

    pub fn contains(&self, g: usize, n: i64) -> bool {
        self.h.contains(g, n.rem_euclid(self.h.modulus as i64) as u64)
    }

    /// The positive generator of `pr_Z(Γ_H)`, found on the window `1..=2N`.
    pub fn z_projection_generator(&self, g: &FiniteGroup) -> u64 {
        let n = self.h.modulus as i64;
        (1..=2 * n)
            .find(|&z| g.elements().any(|x| self.contains(x, z)))
            .expect("Γ_H contains (e, N)") as u64
    }
}

/// Elementary-case witnesses for one `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ElementaryData {
    /// `P = G″ = {g : (g, 0) ∈ H}`, a `p`-group.
    pub p_subgroup: Subgroup,
    /// `ℓ = [G′ : P]`, prime to `p`.
    pub ell: u64,
    /// Generator of `Z/ℓ` corresponding to the residue `k` in the image of `H`.
    pub u: u64,
    /// `g₀ = s(u)`, with `(g₀, k) ∈ Γ_H`.
    pub g0: usize,
    /// `k = N/N′`, the generator of `pr_Z(Γ_H)`.
    pub k: u64,
    /// The splitting `s : Z/ℓ → G′`, as the list `s(0), …, s(ℓ-1)`.
    pub splitting: Vec<usize>,
}

impl ElementaryData {
    /// `j(g, v) = g·s(v)` for `g ∈ P`, `v ∈ Z/ℓ`.
    pub fn j(&self, g: &FiniteGroup, x: usize, v: u64) -> usize {
        g.compose(x, self.splitting[(v % self.ell) as usize])
    }

    /// `α(g, n) = (g·g₀ⁿ, n·k)`, in ambient `Z` coordinates.
    pub fn alpha(&self, g: &FiniteGroup, x: usize, n: i64) -> (usize, i64) {
        (g.compose(x, g.pow(self.g0, n)), n * self.k as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum Case {
    Deep { m: u64 },
    Elementary(ElementaryData),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationRecord {
    pub subgroup: ProductSubgroup,
    pub order: usize,
    /// `N/N′`; `Γ_H ⊆ G × mZ`.
    pub m: u64,
    /// Whether `H` is `p`-elementary, recorded in both cases.
    pub elementary: bool,
    pub case: Case,
}

impl ClassificationRecord {
    pub fn is_deep(&self) -> bool {
        matches!(self.case, Case::Deep { .. })
    }

    pub fn elementary_data(&self) -> Option<&ElementaryData> {
        match &self.case {
            Case::Elementary(d) => Some(d),
            Case::Deep { .. } => None,
        }
    }
}

/// Classifies a `p`-hyperelementary `H ⊆ G × Z/N`.
///
/// When `m ≥ M` the record is deep even if `H` is also elementary. Otherwise the
/// elementary witnesses are computed and checked; any failure there is an
/// [`Error::Internal`].
pub fn classify(h: &ProductSubgroup, g: &FiniteGroup, big_m: u64, p: u64) -> Result<ClassificationRecord> {
    if !is_p_hyperelementary_product(h, g, p, MATERIALIZE_CAP)? {
        return Err(Error::NotHyperelementary(p));
    }
    let kind = structural_type(h, g, p).ok_or_else(|| {
        Error::InvalidArgument(format!("modulus {} is divisible by {p}", h.modulus))
    })?;
    let pd = project_data(&h.record);
    let m = h.modulus / pd.n_prime;
    let mut record = ClassificationRecord {
        subgroup: h.clone(),
        order: h.order(),
        m,
        elementary: kind.elementary,
        case: Case::Deep { m },
    };
    if m >= big_m {
        return Ok(record);
    }
    let bug = |what: &str| Error::Internal(format!("H of order {} with m = {m} < M = {big_m}: {what}", h.order()));
    let p_subgroup = pd.g_double_prime;
    if !arith::is_power_of(p_subgroup.order() as u64, p) {
        return Err(bug("G'' is not a p-group"));
    }
    if !kind.elementary {
        return Err(bug("H is not p-elementary"));
    }
    let ell = pd.ell;
    if ell % p == 0 {
        return Err(bug("p divides ell"));
    }
    let u = 1 % ell;
    let iso = &h.record.iso;
    let g0 = pd
        .g_prime
        .members()
        .iter()
        .copied()
        .find(|&x| {
            iso.image(x) == Some(u)
                && g.pow(x, ell as i64) == g.identity()
                && p_subgroup.members().iter().all(|&y| g.commutes(x, y))
        })
        .ok_or_else(|| bug("no splitting of G' -> Z/ell"))?;
    let splitting = (0..ell as i64).map(|v| g.pow(g0, v)).collect();
    let data = ElementaryData {
        p_subgroup,
        ell,
        u,
        g0,
        k: m,
        splitting,
    };
    if !verify_embedding(&data, g) {
        return Err(bug("j is not an injective homomorphism"));
    }
    record.case = Case::Elementary(data);
    Ok(record)
}

/// `j : P × Z/ℓ → G` is an injective homomorphism. Exhaustive.
pub fn verify_embedding(d: &ElementaryData, g: &FiniteGroup) -> bool {
    let pairs: Vec<(usize, u64)> = d
        .p_subgroup
        .members()
        .iter()
        .flat_map(|&x| (0..d.ell).map(move |v| (x, v)))
        .collect();
    let mut seen = HashSet::new();
    if !pairs.iter().all(|&(x, v)| seen.insert(d.j(g, x, v))) {
        return false;
    }
    pairs.iter().all(|&(x, v)| {
        pairs.iter().all(|&(y, w)| {
            d.j(g, g.compose(x, y), v + w) == g.compose(d.j(g, x, v), d.j(g, y, w))
        })
    })
}

/// First failure found by [`verify_alpha`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaViolation {
    /// `α(g, n)` is not in `Γ_H`.
    OutsideGamma { g: usize, n: i64 },
    /// Two points of `P × Z` share an image.
    NotInjective { g: usize, n: i64 },
    /// `(h, z) ∈ Γ_H` in the window is not of the form `α(g, n)`.
    Missed { h: usize, z: i64 },
}

/// Checks that `α : P × Z → Γ_H` is a bijection on the window `n ∈ [-window, window]`.
pub fn verify_alpha(
    rec: &ClassificationRecord,
    g: &FiniteGroup,
    window: i64,
) -> std::result::Result<(), AlphaViolation> {
    let d = rec
        .elementary_data()
        .expect("verify_alpha needs an elementary record");
    let gamma = GammaSubgroup::new(&rec.subgroup);
    let mut images = HashSet::new();
    for n in -window..=window {
        for &x in d.p_subgroup.members() {
            let (y, z) = d.alpha(g, x, n);
            if !gamma.contains(y, z) {
                return Err(AlphaViolation::OutsideGamma { g: x, n });
            }
            if !images.insert((y, z)) {
                return Err(AlphaViolation::NotInjective { g: x, n });
            }
        }
    }
    let k = d.k as i64;
    for z in -window * k..=window * k {
        for h in g.elements() {
            if gamma.contains(h, z) && !images.contains(&(h, z)) {
                return Err(AlphaViolation::Missed { h, z });
            }
        }
    }
    Ok(())
}

/// A minimal-ish generating set: members that are not in the closure of the previous ones.
fn generating_set(g: &FiniteGroup, s: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial();
    for &x in s.members() {
        if !span.contains(x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Checks `(j × k·id) ∘ (id_P × β) = i ∘ α` on the generators `(g, 0)` of `P × Z`
/// and on `(e, 1)`, where `β(n) = (n·u, n)`.
pub fn verify_diagram(rec: &ClassificationRecord, g: &FiniteGroup) -> bool {
    let Some(d) = rec.elementary_data() else {
        return false;
    };
    let lower = |x: usize, n: i64| {
        let v = (n * d.u as i64).rem_euclid(d.ell as i64) as u64;
        (d.j(g, x, v), n * d.k as i64)
    };
    let mut points: Vec<(usize, i64)> = generating_set(g, &d.p_subgroup)
        .into_iter()
        .map(|x| (x, 0))
        .collect();
    points.push((g.identity(), 1));
    points
        .into_iter()
        .all(|(x, n)| lower(x, n) == d.alpha(g, x, n))
}

/// Deep records: every `(g, n) ∈ Γ_H` with `|n| ≤ window` has `m | n`.
pub fn verify_deep(rec: &ClassificationRecord, g: &FiniteGroup, window: i64) -> bool {
    let gamma = GammaSubgroup::new(&rec.subgroup);
    let m = rec.m as i64;
    (-window..=window).all(|n| n % m == 0 || g.elements().all(|x| !gamma.contains(x, n)))
}

/// All `p`-hyperelementary subgroups of `G × Z/N(M, |G|, p)`, classified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationSweep {
    pub prime: u64,
    pub big_m: u64,
    pub modulus: u64,
    pub records: Vec<ClassificationRecord>,
}

impl ClassificationSweep {
    /// Records with `m < M`; all of them are elementary.
    pub fn not_deep(&self) -> impl Iterator<Item = &ClassificationRecord> {
        self.records.iter().filter(|r| r.m < self.big_m)
    }
}

pub fn classify_all(g: &FiniteGroup, p: u64, big_m: u64) -> Result<ClassificationSweep> {
    let modulus = choose_n(big_m, g.order() as u64, p)?;
    let lattice = SubgroupLattice::new(g);
    let mut records = Vec::new();
    for rec in goursat_enumerate_with(g, &lattice, modulus) {
        let h = ProductSubgroup::new(rec, modulus);
        let hyper = structural_type(&h, g, p)
            .expect("p does not divide N(M, n, p)")
            .hyperelementary;
        if hyper {
            records.push(classify(&h, g, big_m, p)?);
        }
    }
    Ok(ClassificationSweep {
        prime: p,
        big_m,
        modulus,
        records,
    })
}

/// Re-checks every record of a sweep: deep soundness on `[-2N, 2N]`, and for
/// elementary records [`verify_alpha`] on `window`, [`verify_diagram`] and
/// [`verify_embedding`]. Returns the indices of failing records.
pub fn audit_sweep(sweep: &ClassificationSweep, g: &FiniteGroup, window: i64) -> Vec<usize> {
    let deep_window = 2 * sweep.modulus as i64;
    sweep
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| match &r.case {
            Case::Deep { m } => !(*m >= sweep.big_m && verify_deep(r, g, deep_window)),
            Case::Elementary(d) => {
                r.m >= sweep.big_m
                    || !arith::is_power_of(d.p_subgroup.order() as u64, sweep.prime)
                    || d.ell.gcd(&sweep.prime) != 1
                    || r.order != d.p_subgroup.order() * r.subgroup.record.d1 as usize
                    || verify_alpha(r, g, window).is_err()
                    || !verify_diagram(r, g)
                    || !verify_embedding(d, g)
            }
        })
        .map(|(i, _)| i)
        .collect()
}
