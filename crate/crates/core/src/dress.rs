//! Induction certificates in the rationalized Swan ring.
//!
//! A permutation module `Z[G/H]` is determined rationally by its marks on
//! cyclic subgroups. A certificate is a family of coefficients `a_H`, one per
//! `p`-hyperelementary class, with `Σ a_H · m_C([G/H]) = 1` for every cyclic `C`
//! and every `a_H` in `Z_(p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::families::{check_prime, family_report_with};
use crate::group::{FiniteGroup, Subgroup, SubgroupClass, SubgroupLattice};
use crate::snf::{is_p_integral, solve_p_local, Matrix};
use crate::{Error, Result};

/// Number of cosets `gH` fixed by the cyclic subgroup generated by `c`.
pub fn mark(g: &FiniteGroup, h: &Subgroup, c: usize) -> u64 {
    let fixing = g
        .elements()
        .filter(|&x| h.contains(g.conjugate(c, x)))
        .count();
    (fixing / h.order()) as u64
}

fn is_cyclic(g: &FiniteGroup, s: &Subgroup) -> bool {
    s.members().iter().any(|&x| g.element_order(x) == s.order())
}

fn cyclic_generator(g: &FiniteGroup, s: &Subgroup) -> usize {
    *s.members()
        .iter()
        .find(|&&x| g.element_order(x) == s.order())
        .expect("cyclic subgroup has a generator")
}

/// Conjugacy classes of cyclic subgroups, ordered as in the lattice.
pub fn cyclic_classes(lattice: &SubgroupLattice, g: &FiniteGroup) -> Vec<SubgroupClass> {
    lattice
        .classes()
        .iter()
        .filter(|c| is_cyclic(g, &c.representative))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MarksMatrix {
    pub rows: Vec<SubgroupClass>,
    pub columns: Vec<SubgroupClass>,
    /// `entries[i][j]` is the mark of column `j` on `G/rows[i]`.
    pub entries: Vec<Vec<u64>>,
}

fn marks_for(g: &FiniteGroup, rows: &[SubgroupClass], columns: &[SubgroupClass]) -> Vec<Vec<u64>> {
    let gens: Vec<usize> = columns
        .iter()
        .map(|c| cyclic_generator(g, &c.representative))
        .collect();
    rows.iter()
        .map(|r| gens.iter().map(|&c| mark(g, &r.representative, c)).collect())
        .collect()
}

/// Marks of the `p`-hyperelementary coset spaces on the cyclic subgroup classes.
pub fn marks_matrix(g: &FiniteGroup, p: u64) -> Result<MarksMatrix> {
    marks_matrix_with(g, &SubgroupLattice::new(g), p)
}

pub fn marks_matrix_with(g: &FiniteGroup, lattice: &SubgroupLattice, p: u64) -> Result<MarksMatrix> {
    let rows = family_report_with(g, lattice, p)?.p_hyperelementary_classes;
    let columns = cyclic_classes(lattice, g);
    let entries = marks_for(g, &rows, &columns);
    Ok(MarksMatrix {
        rows,
        columns,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub class: SubgroupClass,
    pub coefficient: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DressCertificate {
    pub prime: u64,
    pub entries: Vec<CertificateEntry>,
}

impl DressCertificate {
    pub fn coefficient_of(&self, s: &Subgroup) -> Option<&BigRational> {
        self.entries
            .iter()
            .find(|e| &e.class.representative == s)
            .map(|e| &e.coefficient)
    }

    pub fn to_document(&self) -> Result<CertificateDocument> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let fits = |x: &BigInt| {
                    x.to_i64()
                        .ok_or_else(|| Error::Internal(format!("coefficient part {x} exceeds i64")))
                };
                Ok(DocumentEntry {
                    subgroup: e.class.representative.members().to_vec(),
                    numerator: fits(e.coefficient.numer())?,
                    denominator: fits(e.coefficient.denom())?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CertificateDocument {
            prime: self.prime,
            entries,
        })
    }

    /// Rebuilds a certificate from its serialized form, recovering class sizes from `g`.
    pub fn from_document(doc: &CertificateDocument, g: &FiniteGroup) -> Result<Self> {
        let mut entries = Vec::with_capacity(doc.entries.len());
        for e in &doc.entries {
            let mut members = e.subgroup.clone();
            members.sort_unstable();
            members.dedup();
            if members.iter().any(|&x| x >= g.order()) || !g.is_subgroup(&members) {
                return Err(Error::InvalidArgument(format!(
                    "{:?} is not a subgroup of {}",
                    e.subgroup,
                    g.label()
                )));
            }
            if e.denominator == 0 {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            let representative = Subgroup::from_sorted(members);
            let class_size = g.order() / g.normalizer(&representative).order();
            entries.push(CertificateEntry {
                class: SubgroupClass {
                    representative,
                    class_size,
                },
                coefficient: BigRational::new(e.numerator.into(), e.denominator.into()),
            });
        }
        Ok(DressCertificate {
            prime: doc.prime,
            entries,
        })
    }
}

/// Serialized certificate: `{prime, entries: [{subgroup, numerator, denominator}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateDocument {
    pub prime: u64,
    pub entries: Vec<DocumentEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DocumentEntry {
    pub subgroup: Vec<usize>,
    pub numerator: i64,
    pub denominator: i64,
}

/// Solves `Σ a_H m_C(G/H) = 1` over `Z_(p)` using only the rows in `active`.
fn solve_rows(marks: &MarksMatrix, active: &[usize], p: u64) -> Option<Vec<BigRational>> {
    if active.is_empty() {
        return None;
    }
    // one equation per cyclic column, one unknown per active row
    let a: Matrix = (0..marks.columns.len())
        .map(|j| active.iter().map(|&i| BigInt::from(marks.entries[i][j])).collect())
        .collect();
    let b = vec![BigInt::one(); marks.columns.len()];
    solve_p_local(&a, &b, p)
}

/// A certificate over the `p`-hyperelementary classes of `g`.
///
/// Rows are dropped greedily, smallest subgroups first, while the system stays
/// solvable; entries with zero coefficient are omitted.
pub fn dress_certificate(g: &FiniteGroup, p: u64) -> Result<DressCertificate> {
    dress_certificate_with(g, &SubgroupLattice::new(g), p)
}

pub fn dress_certificate_with(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    p: u64,
) -> Result<DressCertificate> {
    check_prime(p)?;
    let marks = marks_matrix_with(g, lattice, p)?;
    let mut active: Vec<usize> = (0..marks.rows.len()).collect();
    let mut solution = solve_rows(&marks, &active, p).ok_or(Error::NoSolution { prime: p })?;
    for i in 0..marks.rows.len() {
        let trial: Vec<usize> = active.iter().copied().filter(|&r| r != i).collect();
        if let Some(s) = solve_rows(&marks, &trial, p) {
            active = trial;
            solution = s;
        }
    }
    let entries = active
        .iter()
        .zip(solution)
        .filter(|(_, a)| !a.is_zero())
        .map(|(&i, coefficient)| CertificateEntry {
            class: marks.rows[i].clone(),
            coefficient,
        })
        .collect();
    Ok(DressCertificate { prime: p, entries })
}

/// Exact check of the marks identity on every cyclic class and of `p`-integrality.
pub fn verify_certificate(g: &FiniteGroup, cert: &DressCertificate) -> bool {
    if !cert
        .entries
        .iter()
        .all(|e| g.is_subgroup(e.class.representative.members()))
    {
        return false;
    }
    if !cert.entries.iter().all(|e| is_p_integral(&e.coefficient, cert.prime)) {
        return false;
    }
    let lattice = SubgroupLattice::new(g);
    let columns = cyclic_classes(&lattice, g);
    let rows: Vec<SubgroupClass> = cert.entries.iter().map(|e| e.class.clone()).collect();
    let entries = marks_for(g, &rows, &columns);
    (0..columns.len()).all(|j| {
        let total: BigRational = cert
            .entries
            .iter()
            .zip(&entries)
            .map(|(e, row)| &e.coefficient * BigRational::from_integer(row[j].into()))
            .sum();
        total.is_one()
    })
}
