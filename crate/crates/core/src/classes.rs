//! The σ-classes of groups: σ-primary, σ-nilpotent, σ-soluble, D_π,
//! σ-full of Sylow type, complete Hall σ-sets and `O_{σᵢ}`, `O^{σᵢ}`.
//!
//! Functions suffixed `_in` take an ambient subgroup `r` of the lattice's
//! group and answer the question for `r` as a group in its own right.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::group::Group;
use crate::lattice::{SubId, SubgroupLattice};
use crate::sigma::{BlockId, SigmaPartition, SigmaSignature};

/// One Hall `σᵢ`-subgroup per block of `σ(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteHallSigmaSet {
    pub entries: BTreeMap<BlockId, SubId>,
}

pub fn sigma_of(sigma: &SigmaPartition, n: u64) -> SigmaSignature {
    sigma.signature(n)
}

pub fn sigma_of_subgroup(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> SigmaSignature {
    sigma.signature(lat.order(r) as u64)
}

pub fn is_sigma_primary(g: &Group, sigma: &SigmaPartition) -> bool {
    sigma.is_primary_number(g.order() as u64)
}

/// `x` is a `σ_b`-group.
pub fn is_block_group(lat: &SubgroupLattice, sigma: &SigmaPartition, x: SubId, b: BlockId) -> bool {
    sigma.is_block_number(lat.order(x) as u64, b)
}

pub fn hall_sigma_subgroups_in(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    r: SubId,
    b: BlockId,
) -> Vec<SubId> {
    lat.hall_subgroups_in(r, |p| sigma.block_of(p) == b)
}

/// Per block of `σ(r)`, all Hall `σᵢ`-subgroups of `r`.
pub fn hall_subgroups_by_block(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    r: SubId,
) -> Vec<(BlockId, Vec<SubId>)> {
    sigma_of_subgroup(lat, sigma, r)
        .iter()
        .map(|b| (b, hall_sigma_subgroups_in(lat, sigma, r, b)))
        .collect()
}

pub fn has_complete_hall_set(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> bool {
    hall_subgroups_by_block(lat, sigma, r)
        .iter()
        .all(|(_, hs)| !hs.is_empty())
}

/// Every choice of one Hall subgroup per block; empty when a block has none.
pub fn complete_hall_sigma_sets(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    r: SubId,
) -> Vec<CompleteHallSigmaSet> {
    let per_block = hall_subgroups_by_block(lat, sigma, r);
    let mut out = vec![BTreeMap::new()];
    for (b, hs) in per_block {
        out = out
            .into_iter()
            .flat_map(|partial: BTreeMap<BlockId, SubId>| {
                hs.iter().map(move |&h| {
                    let mut next = partial.clone();
                    next.insert(b, h);
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|entries| CompleteHallSigmaSet { entries })
        .collect()
}

/// Every block of `σ(r)` has a normal Hall subgroup in `r`.
pub fn is_sigma_nilpotent_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> bool {
    is_sigma_nilpotent_section(lat, sigma, r, lat.trivial())
}

pub fn is_sigma_nilpotent(lat: &SubgroupLattice, sigma: &SigmaPartition) -> bool {
    is_sigma_nilpotent_in(lat, sigma, lat.top())
}

/// `r/n` is σ-nilpotent, for `n ⊴ r`: normal subgroups of `r/n` are the
/// normal subgroups of `r` above `n`.
pub fn is_sigma_nilpotent_section(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    r: SubId,
    n: SubId,
) -> bool {
    let index = (lat.order(r) / lat.order(n)) as u64;
    let above = lat.between(n, r);
    sigma.signature(index).iter().all(|b| {
        let target = sigma.part(index, b) as usize * lat.order(n);
        above
            .iter()
            .any(|&x| lat.order(x) == target && lat.is_normal_in(x, r))
    })
}

/// Every chief factor of `r` has σ-primary order.
pub fn is_sigma_soluble_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> Result<bool> {
    let series = lat.chief_series_in(r, None, |_| 0)?;
    let soluble = series
        .factors()
        .all(|(k, h)| sigma.is_primary_number((lat.order(h) / lat.order(k)) as u64));
    Ok(soluble)
}

pub fn is_sigma_soluble(lat: &SubgroupLattice, sigma: &SigmaPartition) -> bool {
    is_sigma_soluble_in(lat, sigma, lat.top()).expect("the whole group is normal")
}

/// `r` has a Hall π-subgroup `E` and every π-subgroup of `r` lies in an
/// `r`-conjugate of `E`.
pub fn is_d_pi_in(lat: &SubgroupLattice, r: SubId, keep: impl Fn(u64) -> bool + Copy) -> bool {
    let halls = lat.hall_subgroups_in(r, keep);
    let Some(&e) = halls.first() else {
        return false;
    };
    let conjugates = lat.conjugates_in(e, r);
    lat.below(r)
        .filter(|&y| crate::primes::prime_divisors(lat.order(y) as u64).into_iter().all(keep))
        .all(|y| conjugates.iter().any(|&c| lat.le(y, c)))
}

pub fn is_d_pi(lat: &SubgroupLattice, pi: &[u64]) -> bool {
    is_d_pi_in(lat, lat.top(), |p| pi.contains(&p))
}

/// Every subgroup `E ≤ r` is a `D_{σᵢ}`-group for every `σᵢ ∈ σ(E)`.
pub fn is_sigma_full_sylow_type_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> bool {
    lat.below(r).all(|e| {
        sigma_of_subgroup(lat, sigma, e)
            .iter()
            .all(|b| is_d_pi_in(lat, e, |p| sigma.block_of(p) == b))
    })
}

pub fn is_sigma_full_sylow_type(lat: &SubgroupLattice, sigma: &SigmaPartition) -> bool {
    is_sigma_full_sylow_type_in(lat, sigma, lat.top())
}

/// `O_{σ_b}(r)`: the join of all normal `σ_b`-subgroups of `r`.
pub fn o_sigma_lower_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId, b: BlockId) -> SubId {
    lat.normal_subgroups_in(r)
        .into_iter()
        .filter(|&x| is_block_group(lat, sigma, x, b))
        .fold(lat.trivial(), |acc, x| lat.join(acc, x))
}

pub fn o_sigma_lower(lat: &SubgroupLattice, sigma: &SigmaPartition, b: BlockId) -> SubId {
    o_sigma_lower_in(lat, sigma, lat.top(), b)
}

/// `O^{σ_b}(r)`: the intersection of all normal `N` with `r/N` a `σ_b`-group.
pub fn o_sigma_upper_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId, b: BlockId) -> SubId {
    lat.normal_subgroups_in(r)
        .into_iter()
        .filter(|&n| sigma.is_block_number((lat.order(r) / lat.order(n)) as u64, b))
        .fold(r, |acc, n| lat.meet(acc, n))
}

pub fn o_sigma_upper(lat: &SubgroupLattice, sigma: &SigmaPartition, b: BlockId) -> SubId {
    o_sigma_upper_in(lat, sigma, lat.top(), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders;
    use crate::lattice::DEFAULT_MAX_SUBGROUPS;
    use crate::sigma::RestPolicy;

    fn lat(g: Group) -> SubgroupLattice {
        SubgroupLattice::build(g, DEFAULT_MAX_SUBGROUPS).unwrap()
    }

    fn s23() -> SigmaPartition {
        SigmaPartition::new(vec![vec![2, 3]], RestPolicy::Singletons).unwrap()
    }

    #[test]
    fn primary() {
        let s0 = SigmaPartition::sigma0();
        assert!(is_sigma_primary(&builders::sl_2_3(), &s23()));
        assert!(!is_sigma_primary(&builders::symmetric(3).unwrap(), &s0));
        assert!(is_sigma_primary(&builders::cyclic(1).unwrap(), &s0));
    }

    #[test]
    fn nilpotent() {
        let s0 = SigmaPartition::sigma0();
        assert!(is_sigma_nilpotent(&lat(builders::cyclic(6).unwrap()), &s0));
        let s3 = lat(builders::symmetric(3).unwrap());
        assert!(!is_sigma_nilpotent(&s3, &s0));
        assert!(is_sigma_nilpotent(&s3, &s23()));
    }

    #[test]
    fn soluble() {
        let s0 = SigmaPartition::sigma0();
        assert!(is_sigma_soluble(&lat(builders::symmetric(4).unwrap()), &s0));
        let a5 = lat(builders::alternating(5).unwrap());
        assert!(!is_sigma_soluble(&a5, &s0));
        let one = SigmaPartition::new(vec![vec![2, 3, 5]], RestPolicy::Singletons).unwrap();
        assert!(is_sigma_soluble(&a5, &one));
    }

    #[test]
    fn d_pi_and_full() {
        let s4 = lat(builders::symmetric(4).unwrap());
        for pi in [&[2u64][..], &[3], &[2, 3], &[5]] {
            assert!(is_d_pi(&s4, pi));
        }
        let a5 = lat(builders::alternating(5).unwrap());
        assert!(!is_d_pi(&a5, &[2, 5]));
        assert!(is_d_pi(&a5, &[2]));
        assert!(!is_d_pi(&a5, &[2, 3]), "A4 and S3 are maximal {{2,3}}-subgroups");
        let d4 = lat(builders::dihedral(4).unwrap());
        assert!(is_sigma_full_sylow_type(&d4, &SigmaPartition::sigma0()));
        let p25 = SigmaPartition::pi(&[2, 5]).unwrap();
        assert!(!is_sigma_full_sylow_type(&a5, &p25));
    }

    #[test]
    fn hall_sets() {
        let s0 = SigmaPartition::sigma0();
        let s3 = lat(builders::symmetric(3).unwrap());
        assert_eq!(complete_hall_sigma_sets(&s3, &s0, s3.top()).len(), 3);
        let c6 = lat(builders::cyclic(6).unwrap());
        assert_eq!(complete_hall_sigma_sets(&c6, &s0, c6.top()).len(), 1);
        let a5 = lat(builders::alternating(5).unwrap());
        let p25 = SigmaPartition::pi(&[2, 5]).unwrap();
        assert!(complete_hall_sigma_sets(&a5, &p25, a5.top()).is_empty());
        assert!(!has_complete_hall_set(&a5, &p25, a5.top()));
    }

    #[test]
    fn o_sigma() {
        let s0 = SigmaPartition::sigma0();
        let s4 = lat(builders::symmetric(4).unwrap());
        assert_eq!(s4.order(o_sigma_lower(&s4, &s0, BlockId::Prime(2))), 4);
        assert_eq!(s4.order(o_sigma_upper(&s4, &s0, BlockId::Prime(2))), 12);
        let c6 = lat(builders::cyclic(6).unwrap());
        assert_eq!(c6.order(o_sigma_lower(&c6, &s0, BlockId::Prime(3))), 3);
        assert_eq!(c6.order(o_sigma_upper(&c6, &s0, BlockId::Prime(3))), 2);
        let q8 = lat(builders::quaternion());
        assert_eq!(o_sigma_lower(&q8, &s0, BlockId::Prime(2)), q8.top());
        assert_eq!(o_sigma_upper(&q8, &s0, BlockId::Prime(2)), 0);
    }
}
