use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A map of element indices, meant to be a homomorphism between two groups.
///
/// The groups themselves are not stored; [`GroupHom::is_homomorphism`] checks the
/// map against a given source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image_of: Vec<usize>,
}

impl GroupHom {
    pub fn new(image_of: Vec<usize>) -> Self {
        GroupHom { image_of }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image_of
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.image_of.len() != source.order() {
            return false;
        }
        if self.image_of.iter().any(|&y| y >= target.order()) {
            return false;
        }
        if self.apply(source.identity()) != target.identity() {
            return false;
        }
        source.elements().all(|a| {
            source.elements().all(|b| {
                self.apply(source.compose(a, b)) == target.compose(self.apply(a), self.apply(b))
            })
        })
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(
            source
                .elements()
                .filter(|&x| self.apply(x) == target.identity())
                .collect(),
        )
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        let mut hit = vec![false; target.order()];
        for &y in &self.image_of {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.image_of.iter().all(|y| seen.insert(*y))
    }
}

/// The quotient `G/N` and the projection `G → G/N`.
///
/// Cosets are numbered by their least element, so the coset of the identity is
/// not necessarily number 0 unless the identity is element 0.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset_of[g.compose(x, m)] = idx;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = coset_of[g.compose(a, b)] as u32;
        }
    }
    let names = reps.iter().map(|&r| format!("{}N", g.name(r))).collect();
    let mut gens: Vec<usize> = g.generators().iter().map(|&x| coset_of[x]).collect();
    gens.sort_unstable();
    gens.dedup();
    let q = FiniteGroup::from_table(format!("{}/N", g.label()), k, table, names, gens)?;
    Ok((q, GroupHom::new(coset_of)))
}
