//! Lazily built quotient groups `G/N` and their lattices, one per normal `N`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{Quotient, Subgroup};
use crate::lattice::{SubId, SubgroupLattice};

#[derive(Debug)]
pub struct QuotientView {
    pub quotient: Quotient,
    pub lattice: SubgroupLattice,
}

impl QuotientView {
    /// Image of a lattice subgroup of `G` as a lattice id of `G/N`.
    pub fn image_id(&self, parent: &SubgroupLattice, x: SubId) -> SubId {
        self.lattice
            .id_of(&self.quotient.image(parent.subgroup(x)))
            .expect("image of a subgroup is a subgroup")
    }

    pub fn image(&self, sub: &Subgroup) -> Subgroup {
        self.quotient.image(sub)
    }
}

#[derive(Debug)]
pub struct QuotientCache<'a> {
    lat: &'a SubgroupLattice,
    max_subgroups: usize,
    views: Vec<OnceLock<std::result::Result<Arc<QuotientView>, Error>>>,
}

impl<'a> QuotientCache<'a> {
    pub fn new(lat: &'a SubgroupLattice, max_subgroups: usize) -> Self {
        QuotientCache {
            lat,
            max_subgroups,
            views: (0..lat.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn get(&self, n: SubId) -> Result<Arc<QuotientView>> {
        self.views[n]
            .get_or_init(|| {
                let quotient = self.lat.group().quotient(self.lat.subgroup(n))?;
                let lattice = SubgroupLattice::build(quotient.group.clone(), self.max_subgroups)?;
                Ok(Arc::new(QuotientView { quotient, lattice }))
            })
            .clone()
    }
}
